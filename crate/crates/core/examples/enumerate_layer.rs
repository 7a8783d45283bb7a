// Lists every tiling of a single layer with its weight, and the layer
// transfer entries out of the empty interface.

use cubetile::geometry::{Board, Enumerator};
use cubetile::layerdp::{InterfaceMask, LayerTransfer};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let tilings = Enumerator::default().enumerate_tilings(&Board::full(1))?;
    for (i, t) in tilings.iter().enumerate() {
        println!("tiling {i} (weight {}):", t.weight());
        print!("{t}");
    }

    let transfer = LayerTransfer::build();
    for to in InterfaceMask::all() {
        let e = transfer.entry(InterfaceMask::EMPTY, to);
        println!("T[0000 -> {:04b}] = {e}", to.bits());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
