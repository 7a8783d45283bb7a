// Counts on the defect boards J1..J5 and the linear system they satisfy.

use cubetile::geometry::{Board, Defect, Enumerator};
use cubetile::layerdp::LayerDp;
use cubetile::recurrences::{iterate_system, matrix_m, system_m_initial};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let dp = LayerDp::default();
    let enumerator = Enumerator::default();
    for j in 1..=5u8 {
        let defect = Defect::from_family(j, 0)?;
        let board = Board::with_defect(2, defect)?;
        println!(
            "J{j}: {} cells, multiplicity {}, R_{{{j},2}} = {}",
            board.num_cells(),
            defect.multiplicity(),
            dp.count_defect(j, 2)?
        );
        assert_eq!(
            enumerator.count_defect_exhaustive(j, 2)?,
            dp.count_defect(j, 2)?
        );
    }

    let v = iterate_system(&matrix_m(), &system_m_initial(), 4)?;
    for (j, p) in v.iter().enumerate() {
        let expected = if j == 0 {
            dp.count(4)
        } else {
            dp.count_defect(j as u8, 4)?
        };
        assert_eq!(p, &expected);
    }
    println!("system at n=4 matches the DP on every component");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
