//! Verification suites: cross-backend oracle agreement, re-derivation of the
//! reference recurrences, and the identity engine.

use serde::Serialize;

use crate::bipoly::{rat, Poly2};
use crate::geometry::{Board, Enumerator};
use crate::identities::{IdentityChecker, IdentityConfig, Mode};
use crate::layerdp::LayerDp;
use crate::recurrences::{
    charpoly, derived_recurrence_bricks, derived_recurrence_r, derived_recurrence_unbreakable,
    iterate_system, matrix_bricks, matrix_m, matrix_u, reference_charpoly_m, reference_charpoly_u,
    reference_recurrence_bricks, reference_recurrence_r, reference_recurrence_unbreakable,
    system_m_initial,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Empty on success; the first mismatch otherwise.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub scope: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(scope: &str) -> Self {
        SuiteReport {
            scope: scope.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, outcome: Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    /// One `PASS`/`FAIL` line per check, then a summary line.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.passed {
                out.push_str(&format!("PASS  {}\n", c.name));
            } else {
                out.push_str(&format!("FAIL  {}: {}\n", c.name, c.detail));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.scope,
            self.checks.len(),
            failed
        ));
        out
    }
}

/// Compares values from several backends index by index.
fn agree(columns: &[(&str, &[Poly2])], first_index: usize) -> Result<(), String> {
    let Some(((ref_name, reference), rest)) = columns.split_first() else {
        return Ok(());
    };
    for (name, values) in rest {
        for (k, (x, y)) in reference.iter().zip(values.iter()).enumerate() {
            if x != y {
                return Err(format!(
                    "n={}: {ref_name} = {x}, {name} = {y}",
                    k + first_index
                ));
            }
        }
    }
    Ok(())
}

fn equal<T: PartialEq + std::fmt::Debug>(got: &T, want: &T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

/// Exhaustive enumeration, profile DP and recurrences agree on every family
/// for `n <= n_max` (exhaustive only where the board fits the limit).
pub fn verify_oracle(n_max: usize, enumerator: &Enumerator) -> SuiteReport {
    let mut report = SuiteReport::new("oracle");
    let dp = LayerDp::default();
    let bricks_dp = LayerDp::new(&Poly2::zero(), &Poly2::b());
    let n = n_max as i64;
    let exhaustive_max = (0..=n_max)
        .take_while(|&k| Board::full(k).num_cells() <= enumerator.max_cells)
        .last()
        .unwrap_or(0);
    let exhaustive =
        |f: &dyn Fn(usize) -> Poly2| -> Vec<Poly2> { (0..=exhaustive_max).map(f).collect() };

    let full_dp = dp.sequence(n_max);
    let full_rec = reference_recurrence_r().sequence(n).expect("n >= 0");
    let full_ex = exhaustive(&|k| {
        enumerator
            .count_exhaustive(&Board::full(k))
            .expect("within limit")
    });
    report.push(
        format!("full boards: exhaustive (n <= {exhaustive_max}) = dp = recurrence (n <= {n_max})"),
        agree(
            &[
                ("dp", &full_dp),
                ("recurrence", &full_rec),
                ("exhaustive", &full_ex),
            ],
            0,
        ),
    );

    let unb_dp = dp.unbreakable_sequence(n_max);
    let unb_rec = reference_recurrence_unbreakable()
        .sequence(n)
        .expect("n >= 0");
    let unb_inv = crate::identities::unbreakable_sequence_from_breakable(&full_dp);
    let unb_ex = exhaustive(&|k| {
        enumerator
            .count_unbreakable_exhaustive(&Board::full(k))
            .expect("within limit")
    });
    report.push(
        "unbreakable: exhaustive = dp = recurrence = inversion",
        agree(
            &[
                ("dp", &unb_dp),
                ("recurrence", &unb_rec),
                ("inversion", &unb_inv),
                ("exhaustive", &unb_ex),
            ],
            0,
        ),
    );

    let zero = rat(0);
    let br_dp = bricks_dp.sequence(n_max);
    let br_rec = reference_recurrence_bricks().sequence(n).expect("n >= 0");
    let br_sub = reference_recurrence_r()
        .substitute(Some(&zero), None)
        .sequence(n)
        .expect("n >= 0");
    let br_ex: Vec<Poly2> = full_ex
        .iter()
        .map(|p| p.substitute(Some(&zero), None))
        .collect();
    report.push(
        "bricks only: exhaustive = dp = bricks recurrence = full recurrence at a=0",
        agree(
            &[
                ("dp", &br_dp),
                ("bricks recurrence", &br_rec),
                ("a=0 recurrence", &br_sub),
                ("exhaustive", &br_ex),
            ],
            0,
        ),
    );

    for j in 1..=5u8 {
        let dp_vals: Vec<Poly2> = (1..=n_max)
            .map(|k| dp.count_defect(j, k).expect("valid defect"))
            .collect();
        let sys_vals: Vec<Poly2> = (1..=n_max)
            .map(|k| {
                iterate_system(&matrix_m(), &system_m_initial(), k).expect("n >= 1")[j as usize]
                    .clone()
            })
            .collect();
        let ex_vals: Vec<Poly2> = (1..=n_max)
            .map_while(|k| enumerator.count_defect_exhaustive(j, k).ok())
            .collect();
        report.push(
            format!("defect board J{j}: exhaustive = dp = system"),
            agree(
                &[
                    ("dp", &dp_vals),
                    ("system", &sys_vals),
                    ("exhaustive", &ex_vals),
                ],
                1,
            ),
        );
    }
    report
}

/// Re-derives every reference recurrence from its matrix and compares
/// coefficients and initial values with the hardcoded data.
pub fn verify_theorems() -> SuiteReport {
    let mut report = SuiteReport::new("theorems");
    let cm = charpoly(&matrix_m());
    report.push(
        "charpoly(M) equals the reference sextic",
        cm.as_ref()
            .map_err(|e| e.to_string())
            .and_then(|c| equal(c, &reference_charpoly_m())),
    );
    report.push(
        "sixth-order recurrence: derived coefficients and R_0..R_5 match",
        derived_recurrence_r()
            .map_err(|e| e.to_string())
            .and_then(|d| equal(&d, &reference_recurrence_r())),
    );
    let dp = LayerDp::default();
    report.push("sixth-order relation already holds at n = 6", {
        let spec = reference_recurrence_r();
        let seq = dp.sequence(6);
        equal(&spec.combination(&seq, 6), &seq[6])
    });

    let cb = charpoly(&matrix_bricks());
    report.push(
        "bricks-only recurrence: derived coefficients and R_0..R_2 match",
        cb.map_err(|e| e.to_string())
            .and_then(|_| derived_recurrence_bricks().map_err(|e| e.to_string()))
            .and_then(|d| equal(&d, &reference_recurrence_bricks())),
    );

    let cu = charpoly(&matrix_u());
    report.push(
        "charpoly(U) equals the reference quintic",
        cu.as_ref()
            .map_err(|e| e.to_string())
            .and_then(|c| equal(c, &reference_charpoly_u())),
    );
    report.push(
        "unbreakable recurrence: derived coefficients and R~_0..R~_6 match",
        derived_recurrence_unbreakable()
            .map_err(|e| e.to_string())
            .and_then(|d| equal(&d, &reference_recurrence_unbreakable())),
    );
    report.push("unbreakable relation fails at n = 6", {
        let spec = reference_recurrence_unbreakable();
        let combo = spec.combination(&spec.initial, 6);
        if combo == spec.initial[6] {
            Err("relation unexpectedly holds at n = 6".to_string())
        } else {
            equal(&(&combo - &spec.initial[6]), &Poly2::monomial(1, 0, 12))
        }
    });
    report
}

/// All identities symbolically plus at `a = b = 1`, and the structural
/// degenerations between them.
pub fn verify_identities(n_max: usize) -> SuiteReport {
    let mut report = SuiteReport::new("identities");
    for (label, mode) in [
        ("symbolic", Mode::Symbolic),
        ("a=1,b=1", Mode::specialized(1, 1)),
    ] {
        let mut checker = IdentityChecker::new(IdentityConfig::new(n_max), &mode);
        for r in checker.check_all() {
            let outcome = match &r.first_failure {
                None => Ok(()),
                Some(f) => Err(format!(
                    "at {:?}: lhs = {}, rhs = {}",
                    f.params, f.lhs, f.rhs
                )),
            };
            report.push(
                format!(
                    "identity {} ({label}, {}, {} cases)",
                    r.identity_id, r.params, r.checked
                ),
                outcome,
            );
        }
        if mode == Mode::Symbolic {
            report.push(
                "m = 1 split equals the one-step sum",
                checker
                    .split_sum_degenerates_at_m1()
                    .then_some(())
                    .ok_or_else(|| "mismatch".to_string()),
            );
            report.push(
                "k = 0 centered split equals the n = m split",
                checker
                    .centered_split_matches_at_k0()
                    .then_some(())
                    .ok_or_else(|| "mismatch".to_string()),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorems_suite_passes() {
        let r = verify_theorems();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn oracle_suite_passes_small() {
        let r = verify_oracle(3, &Enumerator::default());
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.checks.len(), 8);
    }

    #[test]
    fn agree_reports_first_mismatch() {
        let a = [Poly2::one(), Poly2::from_int(7)];
        let b = [Poly2::one(), Poly2::from_int(8)];
        let err = agree(&[("x", &a), ("y", &b)], 0).unwrap_err();
        assert_eq!(err, "n=1: x = 7, y = 8");
    }

    #[test]
    fn summary_format() {
        let mut r = SuiteReport::new("demo");
        r.push("ok", Ok(()));
        r.push("bad", Err("boom".into()));
        assert_eq!(
            r.summary(),
            "PASS  ok\nFAIL  bad: boom\ndemo: 2 checks, 1 failed\n"
        );
        assert_eq!(r.first_failure().unwrap().name, "bad");
    }
}
