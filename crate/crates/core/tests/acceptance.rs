use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cubetile::bipoly::{rat, Poly2};
use cubetile::geometry::{Board, Enumerator};
use cubetile::identities::{
    unbreakable_sequence_from_breakable, IdentityChecker, IdentityConfig, Mode,
};
use cubetile::layerdp::{InterfaceMask, LayerDp, LayerTransfer};
use cubetile::recurrences::{
    baseline_2xn, baseline_4q, baseline_u, charpoly, matrix_bricks, matrix_m, matrix_u,
    recurrence_from_charpoly, reference_recurrence_bricks, reference_recurrence_r,
    reference_recurrence_unbreakable,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(s: &str) -> Poly2 {
    s.parse().expect("valid polynomial literal")
}

fn ints(xs: &[i64]) -> Vec<BigRational> {
    xs.iter().map(|&x| rat(x)).collect()
}

fn at_one(ps: &[Poly2]) -> Vec<BigRational> {
    ps.iter().map(|q| q.eval(&rat(1), &rat(1))).collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn seq_eq(name: &str, got: &[BigRational], want: &[BigRational]) -> Result<(), String> {
    check(got == want, || {
        let show = |v: &[BigRational]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("{name}: got [{}], expected [{}]", show(got), show(want))
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let want = ints(&[1, 7, 108, 1511, 21497, 305184, 4334009]);
    let dp = at_one(&LayerDp::default().sequence(6));
    seq_eq("dp", &dp, &want)?;
    let rec = at_one(
        &reference_recurrence_r()
            .sequence(6)
            .map_err(|e| e.to_string())?,
    );
    seq_eq("recurrence", &rec, &want)?;
    let e = Enumerator::default();
    let ex: Vec<Poly2> = (0..=5)
        .map(|n| e.count_exhaustive(&Board::full(n)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    seq_eq("exhaustive", &at_one(&ex), &want[..6])?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("three backends agree on n <= 6 in {:.2?}", elapsed))
}

fn criterion_2() -> Outcome {
    let want = ints(&[1, 2, 9, 32, 121, 450, 1681, 6272, 23409]);
    let dp = LayerDp::new(&Poly2::zero(), &Poly2::one()).sequence(8);
    seq_eq("dp", &at_one(&dp), &want)?;
    let bricks = reference_recurrence_bricks()
        .sequence(8)
        .map_err(|e| e.to_string())?;
    seq_eq("bricks recurrence", &at_one(&bricks), &want)?;
    let zero = rat(0);
    let sub = reference_recurrence_r()
        .substitute(Some(&zero), Some(&rat(1)))
        .sequence(8)
        .map_err(|e| e.to_string())?;
    seq_eq("full recurrence at a=0", &at_one(&sub), &want)?;
    Ok("dp, bricks recurrence and a=0 specialization agree on n <= 8".into())
}

fn criterion_3() -> Outcome {
    let want = ints(&[1, 7, 59, 342, 2154, 13542, 85210]);
    let dp = LayerDp::default();
    let restricted = dp.unbreakable_sequence(20);
    seq_eq("restricted dp", &at_one(&restricted[..=6]), &want)?;
    let e = Enumerator::default();
    let ex: Vec<Poly2> = (0..=5)
        .map(|n| e.count_unbreakable_exhaustive(&Board::full(n)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    seq_eq("exhaustive", &at_one(&ex), &want[..6])?;
    let inverted = unbreakable_sequence_from_breakable(&dp.sequence(6));
    seq_eq("inversion", &at_one(&inverted), &want)?;
    let rec = reference_recurrence_unbreakable()
        .sequence(20)
        .map_err(|e| e.to_string())?;
    for n in 7..=20 {
        check(rec[n] == restricted[n], || {
            format!("n={n}: recurrence {} != dp {}", rec[n], restricted[n])
        })?;
    }
    Ok("restricted dp, exhaustive and inversion agree on n <= 6; recurrence = dp symbolically for 7..20".into())
}

fn criterion_4() -> Outcome {
    let spec = reference_recurrence_unbreakable();
    let one = rat(1);
    let numeric = spec.substitute(Some(&one), Some(&one));
    let combo = numeric
        .combination(&numeric.initial, 6)
        .as_integer()
        .ok_or("non-integer")?;
    let actual = numeric.initial[6].as_integer().ok_or("non-integer")?;
    check(actual == BigInt::from(85210), || format!("R~_6 = {actual}"))?;
    check(combo != actual, || {
        "relation unexpectedly holds at n = 6".into()
    })?;
    check(combo == BigInt::from(85211), || {
        format!("combination = {combo}")
    })?;
    check(&combo - &actual == BigInt::from(1), || {
        "difference is not 1".into()
    })?;
    let symbolic = &spec.combination(&spec.initial, 6) - &spec.initial[6];
    Ok(format!(
        "combination at n=6 gives {combo} != {actual}, difference 1 (symbolically {symbolic})"
    ))
}

fn criterion_5() -> Outcome {
    let cm = charpoly(&matrix_m()).map_err(|e| e.to_string())?;
    let sextic = [
        "b^12",
        "-a^4*b^8 + a^2*b^9 - 2*b^10",
        "-a^6*b^5 - 2*a^4*b^6 - 6*a^2*b^7 - 9*b^8",
        "2*a^6*b^3 + 10*a^4*b^4 + 26*a^2*b^5 + 8*b^6",
        "-a^6*b - 6*a^4*b^2 - 6*a^2*b^3 + 7*b^4",
        "-a^4 - 7*a^2*b - 6*b^2",
        "1",
    ];
    check(cm.coeffs == sextic.map(p), || {
        format!("charpoly(M) =\n{cm}")
    })?;

    let alphas = [
        p("a^4 + 7*a^2*b + 6*b^2"),
        &p("b") * &p("a^6 + 6*a^4*b + 6*a^2*b^2 - 7*b^3"),
        &p("-2*b^3") * &p("a^6 + 5*a^4*b + 13*a^2*b^2 + 4*b^3"),
        &p("b^5") * &p("a^6 + 2*a^4*b + 6*a^2*b^2 + 9*b^3"),
        &p("b^8") * &p("a^4 - a^2*b + 2*b^2"),
        p("-b^12"),
    ];
    let derived = recurrence_from_charpoly(&cm, reference_recurrence_r().initial, 6)
        .map_err(|e| e.to_string())?;
    check(derived.coeffs == alphas, || {
        "alpha_1..alpha_6 differ".into()
    })?;

    let cu = charpoly(&matrix_u()).map_err(|e| e.to_string())?;
    // x * (x^4 - (3a^2b + 4b^2)x^3 + 4b^4 x^2 + 3a^2b^5 x - b^8)
    let quintic = ["0", "-b^8", "3*a^2*b^5", "4*b^4", "-3*a^2*b - 4*b^2", "1"];
    check(cu.coeffs == quintic.map(p), || {
        format!("charpoly(U) =\n{cu}")
    })?;

    let cb = charpoly(&matrix_bricks()).map_err(|e| e.to_string())?;
    let bricks = recurrence_from_charpoly(&cb, reference_recurrence_bricks().initial, 3)
        .map_err(|e| e.to_string())?;
    check(bricks.coeffs == [p("3*b^2"), p("3*b^4"), p("-b^6")], || {
        format!("bricks coefficients {:?}", bricks.coeffs)
    })?;
    Ok("charpoly(M), alphas, charpoly(U) and bricks coefficients match exactly".into())
}

fn criterion_6() -> Outcome {
    let r = [
        "1",
        "a^4 + 4*a^2*b + 2*b^2",
        "a^8 + 12*a^6*b + 42*a^4*b^2 + 44*a^2*b^3 + 9*b^4",
        "a^12 + 20*a^10*b + 142*a^8*b^2 + 440*a^6*b^3 + 588*a^4*b^4 + 288*a^2*b^5 + 32*b^6",
        "a^16 + 28*a^14*b + 306*a^12*b^2 + 1672*a^10*b^3 + 4863*a^8*b^4 + 7416*a^6*b^5 + 5470*a^4*b^6 + 1620*a^2*b^7 + 121*b^8",
        "a^20 + 36*a^18*b + 534*a^16*b^2 + 4248*a^14*b^3 + 19774*a^12*b^4 + 55200*a^10*b^5 + 91200*a^8*b^6 + 84984*a^6*b^7 + 40553*a^4*b^8 + 8204*a^2*b^9 + 450*b^10",
    ];
    let dp = LayerDp::default();
    let full = dp.sequence(5);
    for (n, want) in r.iter().enumerate() {
        check(full[n] == p(want), || format!("R_{n} = {}", full[n]))?;
    }
    let rt = [
        "1",
        "a^4 + 4*a^2*b + 2*b^2",
        "4*a^6*b + 22*a^4*b^2 + 28*a^2*b^3 + 5*b^4",
        "12*a^8*b^2 + 80*a^6*b^3 + 158*a^4*b^4 + 88*a^2*b^5 + 4*b^6",
        "36*a^10*b^3 + 288*a^8*b^4 + 776*a^6*b^5 + 798*a^4*b^6 + 252*a^2*b^7 + 4*b^8",
        "108*a^12*b^4 + 1008*a^10*b^5 + 3420*a^8*b^6 + 5112*a^6*b^7 + 3234*a^4*b^8 + 656*a^2*b^9 + 4*b^10",
        "324*a^14*b^5 + 3456*a^12*b^6 + 14112*a^10*b^7 + 27624*a^8*b^8 + 26576*a^6*b^9 + 11470*a^4*b^10 + 1644*a^2*b^11 + 4*b^12",
    ];
    let unb = dp.unbreakable_sequence(6);
    for (n, want) in rt.iter().enumerate() {
        check(unb[n] == p(want), || format!("R~_{n} = {}", unb[n]))?;
    }
    let bricks = LayerDp::new(&Poly2::zero(), &Poly2::b()).unbreakable_sequence(20);
    check(bricks[1] == p("2*b^2") && bricks[2] == p("5*b^4"), || {
        "bricks R~_1, R~_2".into()
    })?;
    for (n, v) in bricks.iter().enumerate().skip(3) {
        check(*v == Poly2::monomial(4, 0, 2 * n as u32), || {
            format!("bricks R~_{n} = {v}")
        })?;
    }
    Ok("R_0..R_5, R~_0..R~_6 and bricks-only unbreakable closed form match".into())
}

fn run_identities(mode: &Mode, label: &str) -> Result<usize, String> {
    let mut checker = IdentityChecker::new(IdentityConfig::new(12), mode);
    let mut cases = 0;
    for r in checker.check_all() {
        cases += r.checked;
        if let Some(f) = &r.first_failure {
            return Err(format!(
                "identity {} ({label}) at {:?}: {} != {}",
                r.identity_id, f.params, f.lhs, f.rhs
            ));
        }
    }
    Ok(cases)
}

fn criterion_7() -> Outcome {
    let mut total = run_identities(&Mode::Symbolic, "symbolic")?;
    let mut rng = StdRng::seed_from_u64(0x2d2d_6e00);
    let mut points = Vec::new();
    while points.len() < 5 {
        let (a, b) = (rng.gen_range(-10..=10), rng.gen_range(-10..=10));
        if b != 0 {
            points.push((a, b));
        }
    }
    for &(a, b) in &points {
        total += run_identities(&Mode::specialized(a, b), &format!("a={a}, b={b}"))?;
    }
    Ok(format!(
        "identities 1..7 pass symbolically and at {points:?} ({total} cases)"
    ))
}

fn criterion_8() -> Outcome {
    let one = rat(1);
    let mut fib = vec![BigInt::from(0), BigInt::from(1)];
    while fib.len() < 28 {
        let k = fib.len();
        fib.push(&fib[k - 1] + &fib[k - 2]);
    }
    for n in 0..=25 {
        let u = baseline_u(n).map_err(|e| e.to_string())?.eval(&one, &one);
        check(
            u == BigRational::from_integer(fib[n as usize + 1].clone()),
            || format!("u_{n} = {u}"),
        )?;
    }

    let mut a030186: Vec<i64> = vec![1, 2, 7];
    while a030186.len() <= 15 {
        let k = a030186.len();
        a030186.push(3 * a030186[k - 1] + a030186[k - 2] - a030186[k - 3]);
    }
    let two = baseline_2xn().sequence(15).map_err(|e| e.to_string())?;
    seq_eq("2xn", &at_one(&two), &ints(&a030186))?;

    let q4 = baseline_4q(4)
        .and_then(|s| s.sequence(15))
        .map_err(|e| e.to_string())?;
    check(q4 == two, || "{4,4} differs from 2xn".into())?;

    for q in [5, 6] {
        let seq = baseline_4q(q)
            .and_then(|s| s.sequence(15))
            .map_err(|e| e.to_string())?;
        for (n, v) in seq.iter().enumerate() {
            check(v.is_integer_poly(), || format!("q={q}, n={n}: {v}"))?;
            let x = v.eval(&one, &one);
            check(x > rat(0), || format!("q={q}, n={n}: value {x}"))?;
        }
    }
    Ok("Fibonacci n <= 25, A030186 n <= 15, q=4 symbolic, q=5,6 smoke".into())
}

fn small_poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec((-20i64..=20, 0u32..4, 0u32..4), 0..6)
        .prop_map(|terms| Poly2::from_int_terms(&terms))
}

fn criterion_9() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (
        small_poly(),
        small_poly(),
        small_poly(),
        -5i64..=5,
        -5i64..=5,
    );
    runner
        .run(&strategy, |(p, q, r, x, y)| {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p + &Poly2::zero(), p.clone());
            prop_assert_eq!(&p * &Poly2::one(), p.clone());
            prop_assert!((&p + &(-&p)).is_zero());
            let (x, y) = (rat(x), rat(y));
            prop_assert_eq!((&p + &q).eval(&x, &y), p.eval(&x, &y) + q.eval(&x, &y));
            prop_assert_eq!((&p * &q).eval(&x, &y), p.eval(&x, &y) * q.eval(&x, &y));
            Ok(())
        })
        .map_err(|e| format!("ring axioms: {e}"))?;

    let t = LayerTransfer::build();
    let mut entries = 0;
    for s in InterfaceMask::all() {
        for u in InterfaceMask::all() {
            entries += 1;
            let overlap = s.bits() & u.bits() != 0;
            check(t.entry(s, u).is_zero() == overlap, || {
                format!("entry {s:?} -> {u:?}")
            })?;
        }
    }

    let e = Enumerator::default();
    let dp = LayerDp::default();
    for j in 1..=5 {
        for n in 1..=3 {
            let ex = e.count_defect_exhaustive(j, n).map_err(|e| e.to_string())?;
            let d = dp.count_defect(j, n).map_err(|e| e.to_string())?;
            check(ex == d, || {
                format!("J{j}, n={n}: exhaustive {ex} != dp {d}")
            })?;
        }
    }
    Ok(format!(
        "1000 ring/eval cases, {entries} transfer entries, defect boards J1..J5 at n <= 3"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("full-board sequence", criterion_1),
        ("bricks-only sequence", criterion_2),
        ("unbreakable sequence", criterion_3),
        ("unbreakable validity boundary", criterion_4),
        ("symbolic characteristic polynomials", criterion_5),
        ("symbolic initial values", criterion_6),
        ("identity suite", criterion_7),
        ("planar baselines", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f() {
            Ok(detail) => println!(
                "criterion {} PASS  {name}: {detail} [{:.2?}]",
                i + 1,
                start.elapsed()
            ),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
