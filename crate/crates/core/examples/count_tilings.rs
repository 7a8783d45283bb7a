// Weighted tiling counts of the 2x2xn board from all three backends.

use cubetile::bipoly::rat;
use cubetile::geometry::{Board, Enumerator};
use cubetile::layerdp::LayerDp;
use cubetile::recurrences::reference_recurrence_r;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let dp = LayerDp::default().sequence(6);
    let rec = reference_recurrence_r().sequence(6)?;
    let enumerator = Enumerator::default();

    for n in 0..=6 {
        assert_eq!(dp[n], rec[n]);
        let exhaustive = match enumerator.count_exhaustive(&Board::full(n)) {
            Ok(p) => {
                assert_eq!(p, dp[n]);
                "checked"
            }
            Err(_) => "too large",
        };
        println!(
            "R_{n} = {}  (at a=b=1: {}, exhaustive: {exhaustive})",
            dp[n],
            dp[n].eval(&rat(1), &rat(1))
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
