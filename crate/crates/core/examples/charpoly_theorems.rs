// Characteristic polynomials of the transfer systems and the recurrences
// read off from them.

use cubetile::recurrences::{
    charpoly, derived_recurrence_bricks, derived_recurrence_r, derived_recurrence_unbreakable,
    matrix_bricks, matrix_m, matrix_u, reference_recurrence_bricks, reference_recurrence_r,
    reference_recurrence_unbreakable,
};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (name, m) in [
        ("M", matrix_m()),
        ("U", matrix_u()),
        ("bricks", matrix_bricks()),
    ] {
        println!("det(xI - {name}):");
        print!("{}", charpoly(&m)?);
    }

    let r = derived_recurrence_r()?;
    assert_eq!(r, reference_recurrence_r());
    for (i, c) in r.coeffs.iter().enumerate() {
        println!("alpha_{} = {c}", i + 1);
    }
    assert_eq!(derived_recurrence_bricks()?, reference_recurrence_bricks());
    assert_eq!(
        derived_recurrence_unbreakable()?,
        reference_recurrence_unbreakable()
    );
    println!("all derived recurrences match the hardcoded ones");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
