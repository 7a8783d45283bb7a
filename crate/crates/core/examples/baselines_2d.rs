// The planar baselines: 1xn strips, 2xn boards, and 2xn boards in {4,q}.

use cubetile::bipoly::rat;
use cubetile::recurrences::{baseline_2xn, baseline_4q, baseline_u};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let one = rat(1);
    let strip: Vec<String> = (0..10)
        .map(|n| baseline_u(n).map(|p| p.eval(&one, &one).to_string()))
        .collect::<Result<_, _>>()?;
    println!("1xn at a=b=1: {}", strip.join(", "));

    let two = baseline_2xn().sequence(6)?;
    println!("2xn: R_2 = {}", two[2]);
    let at_one: Vec<String> = two.iter().map(|p| p.eval(&one, &one).to_string()).collect();
    println!("2xn at a=b=1: {}", at_one.join(", "));

    assert_eq!(baseline_4q(4)?.sequence(8)?, baseline_2xn().sequence(8)?);
    for q in 5..=6 {
        let seq = baseline_4q(q)?.sequence(6)?;
        let vals: Vec<String> = seq.iter().map(|p| p.eval(&one, &one).to_string()).collect();
        println!("{{4,{q}}} at a=b=1: {}", vals.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
