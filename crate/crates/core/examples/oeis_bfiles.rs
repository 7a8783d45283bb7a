// Writes b-files for the vendored sequences.

use std::fmt::Write;

use cubetile::cli::{oeis_terms, SequenceId};

pub fn bfile(id: SequenceId, count: usize) -> String {
    let mut out = String::new();
    for (n, v) in oeis_terms(id, count).iter().enumerate() {
        writeln!(out, "{n} {v}").unwrap();
    }
    out
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for id in [
        SequenceId::A000045,
        SequenceId::A030186,
        SequenceId::A033516,
        SequenceId::A006253,
        SequenceId::Unbreakable,
    ] {
        println!("# {id:?}");
        print!("{}", bfile(id, 8));
    }
    assert!(bfile(SequenceId::A033516, 3).ends_with("2 108\n"));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
