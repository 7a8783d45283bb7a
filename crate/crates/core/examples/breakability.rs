// Breakable and unbreakable tilings, and recovering the unbreakable counts
// from the full ones.

use cubetile::bipoly::rat;
use cubetile::geometry::{Board, Enumerator};
use cubetile::identities::unbreakable_sequence_from_breakable;
use cubetile::layerdp::LayerDp;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let tilings = Enumerator::default().enumerate_tilings(&Board::full(3))?;
    let unbreakable = tilings.iter().filter(|t| t.is_unbreakable()).count();
    let split_at_1 = tilings.iter().filter(|t| t.is_breakable_at(1)).count();
    println!(
        "B_3: {} tilings, {unbreakable} unbreakable, {split_at_1} split after layer 1",
        tilings.len()
    );

    let dp = LayerDp::default();
    let inverted = unbreakable_sequence_from_breakable(&dp.sequence(8));
    let direct = dp.unbreakable_sequence(8);
    assert_eq!(inverted, direct);
    let one = rat(1);
    for (n, p) in direct.iter().enumerate() {
        println!("unbreakable R~_{n} at a=b=1: {}", p.eval(&one, &one));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
