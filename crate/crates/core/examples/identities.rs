// Checks the combinatorial identities symbolically and at a point.

use cubetile::identities::{run_all_identities, Mode};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for mode in [Mode::Symbolic, Mode::specialized(2, -3)] {
        println!("{mode:?}");
        for report in run_all_identities(8, &mode) {
            println!(
                "  identity {}: {:?} over {} cases ({})",
                report.identity_id, report.status, report.checked, report.params
            );
            assert!(report.passed());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
