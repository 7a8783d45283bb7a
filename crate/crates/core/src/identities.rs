//! Exact checks of the breakability identities linking `R_n` (all tilings)
//! and `R̃_n` (unbreakable tilings).
//!
//! Every identity is verified as an equality of [`Poly2`] values, either
//! symbolically or after substituting integers for `a` and `b`. A failed
//! check is reported as data, never as an error.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::bipoly::{rat, Poly2};
use crate::layerdp::LayerDp;
use crate::recurrences::{reference_recurrence_r, reference_recurrence_unbreakable};

/// Where the `R` and `R̃` sequences come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Recurrence,
    Dp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Specialized(BigRational, BigRational),
}

impl Mode {
    pub fn specialized(a: i64, b: i64) -> Self {
        Mode::Specialized(rat(a), rat(b))
    }
}

/// Precomputed `R_0 ..= R_N` and `R̃_0 ..= R̃_N`.
#[derive(Clone, Debug)]
pub struct Sequences {
    full: Vec<Poly2>,
    unbreakable: Vec<Poly2>,
}

impl Sequences {
    pub fn build(backend: Backend, mode: &Mode, max_index: usize) -> Self {
        let n = max_index as i64;
        let (full, unbreakable) = match (backend, mode) {
            (Backend::Recurrence, Mode::Symbolic) => (
                reference_recurrence_r().sequence(n),
                reference_recurrence_unbreakable().sequence(n),
            ),
            (Backend::Recurrence, Mode::Specialized(x, y)) => (
                reference_recurrence_r()
                    .substitute(Some(x), Some(y))
                    .sequence(n),
                reference_recurrence_unbreakable()
                    .substitute(Some(x), Some(y))
                    .sequence(n),
            ),
            (Backend::Dp, mode) => {
                let dp = match mode {
                    Mode::Symbolic => LayerDp::default(),
                    Mode::Specialized(x, y) => {
                        LayerDp::new(&Poly2::constant(x.clone()), &Poly2::constant(y.clone()))
                    }
                };
                return Sequences {
                    full: dp.sequence(max_index),
                    unbreakable: dp.unbreakable_sequence(max_index),
                };
            }
        };
        Sequences {
            full: full.expect("index 0 and above"),
            unbreakable: unbreakable.expect("index 0 and above"),
        }
    }

    pub fn from_parts(full: Vec<Poly2>, unbreakable: Vec<Poly2>) -> Self {
        Sequences { full, unbreakable }
    }

    pub fn max_index(&self) -> usize {
        self.full.len().min(self.unbreakable.len()) - 1
    }

    pub fn r(&self, n: usize) -> &Poly2 {
        &self.full[n]
    }

    pub fn r_tilde(&self, n: usize) -> &Poly2 {
        &self.unbreakable[n]
    }
}

/// `R̃_1 ..= R̃_n` recovered from `R_0 ..= R_n` by inverting
/// `R_n = Σ_{i=0}^{n-1} R_i R̃_{n-i}`; index 0 holds `R̃_0 = 1`.
pub fn unbreakable_sequence_from_breakable(full: &[Poly2]) -> Vec<Poly2> {
    let mut out: Vec<Poly2> = vec![Poly2::one()];
    for n in 1..full.len() {
        let mut value = full[n].clone();
        for i in 1..n {
            value -= &(&full[i] * &out[n - i]);
        }
        out.push(value);
    }
    out
}

/// `R̃_n` from `R_0 ..= R_n` (at least `n + 1` values).
pub fn unbreakable_from_breakable(full: &[Poly2], n: usize) -> Poly2 {
    unbreakable_sequence_from_breakable(&full[..=n]).swap_remove(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: Vec<(String, i64)>,
    pub lhs: Poly2,
    pub rhs: Poly2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_id: u8,
    /// Human-readable description of the parameter range.
    pub params: String,
    pub checked: usize,
    pub status: Status,
    pub first_failure: Option<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Parameters, left side, right side.
type Case = (Vec<(String, i64)>, Poly2, Poly2);

#[derive(Clone, Debug)]
pub struct IdentityConfig {
    pub n_max: usize,
    pub backend: Backend,
    /// Largest multiplier `k` for the `R_{kn}` identity.
    pub k_max: usize,
    /// Largest index `kn` for the `R_{kn}` identity.
    pub kn_cap: usize,
}

impl IdentityConfig {
    pub fn new(n_max: usize) -> Self {
        IdentityConfig {
            n_max,
            backend: Backend::Recurrence,
            k_max: 4,
            kn_cap: 24,
        }
    }

    /// Largest sequence index any check touches.
    fn max_index(&self) -> usize {
        let largest_kn = (2..=self.k_max)
            .map(|k| k * self.n_max.min(self.kn_cap / k))
            .max()
            .unwrap_or(0);
        (2 * self.n_max).max(largest_kn)
    }
}

/// Identity checks over one set of precomputed sequences.
pub struct IdentityChecker {
    config: IdentityConfig,
    seqs: Sequences,
    // Σ_{j=1}^{m} R_{m-j} R̃_{i+j}, keyed by (m, i)
    inner: HashMap<(usize, usize), Poly2>,
}

impl IdentityChecker {
    pub fn new(config: IdentityConfig, mode: &Mode) -> Self {
        let seqs = Sequences::build(config.backend, mode, config.max_index());
        Self::with_sequences(config, seqs)
    }

    pub fn with_sequences(config: IdentityConfig, seqs: Sequences) -> Self {
        assert!(
            seqs.max_index() >= config.max_index(),
            "sequences too short for config"
        );
        IdentityChecker {
            config,
            seqs,
            inner: HashMap::new(),
        }
    }

    pub fn sequences(&self) -> &Sequences {
        &self.seqs
    }

    fn r(&self, n: usize) -> &Poly2 {
        self.seqs.r(n)
    }

    fn rt(&self, n: usize) -> &Poly2 {
        self.seqs.r_tilde(n)
    }

    /// `Σ_{i=lo}^{hi} R_{f(i)} R̃_{g(i)}`.
    fn convolution(
        &self,
        lo: usize,
        hi: usize,
        f: impl Fn(usize) -> usize,
        g: impl Fn(usize) -> usize,
    ) -> Poly2 {
        (lo..=hi).map(|i| self.r(f(i)) * self.rt(g(i))).sum()
    }

    /// `R_n R_m + Σ_{i=1}^{n} Σ_{j=1}^{m} R_{n-i} R_{m-j} R̃_{i+j}`.
    pub fn split_sum(&mut self, n: usize, m: usize) -> Poly2 {
        let mut total = self.r(n) * self.r(m);
        for i in 1..=n {
            let inner = match self.inner.get(&(m, i)) {
                Some(v) => v.clone(),
                None => {
                    let v = self.convolution(1, m, |j| m - j, |j| i + j);
                    self.inner.insert((m, i), v.clone());
                    v
                }
            };
            total += &(self.r(n - i) * &inner);
        }
        total
    }

    /// `R_n R_1 + Σ_{i=1}^{n} R_{n-i} R̃_{i+1}`.
    pub fn one_step_sum(&self, n: usize) -> Poly2 {
        &(self.r(n) * self.r(1)) + &self.convolution(1, n, |i| n - i, |i| i + 1)
    }

    pub fn check(&mut self, identity_id: u8) -> IdentityReport {
        let n_max = self.config.n_max;
        let mut cases: Vec<Case> = Vec::new();
        let params;
        match identity_id {
            1 => {
                params = format!("1 <= n <= {n_max}");
                for n in 1..=n_max {
                    let rhs = self.convolution(0, n - 1, |i| i, |i| n - i);
                    cases.push((vec![p("n", n)], self.r(n).clone(), rhs));
                }
            }
            2 => {
                params = format!("1 <= n <= {n_max}, formulas 1..=3");
                let half = BigRational::new(1.into(), 2.into());
                for n in 1..=n_max {
                    let forms = [
                        self.convolution(1, n, |i| n - i, |i| i),
                        self.convolution(0, n, |i| i, |i| n - i).scale(&half),
                        self.convolution(0, n, |i| n - i, |i| i).scale(&half),
                    ];
                    for (f, rhs) in forms.into_iter().enumerate() {
                        cases.push((vec![p("n", n), p("formula", f + 1)], self.r(n).clone(), rhs));
                    }
                }
            }
            3 => {
                params = format!("1 <= n, m <= {n_max}");
                for n in 1..=n_max {
                    for m in 1..=n_max {
                        let rhs = self.split_sum(n, m);
                        cases.push((vec![p("n", n), p("m", m)], self.r(n + m).clone(), rhs));
                    }
                }
            }
            4 => {
                params = format!("1 <= n <= {n_max}");
                for n in 1..=n_max {
                    cases.push((vec![p("n", n)], self.r(n + 1).clone(), self.one_step_sum(n)));
                }
            }
            5 => {
                let (k_max, cap) = (self.config.k_max, self.config.kn_cap);
                params = format!("1 <= n <= {n_max}, 2 <= k <= {k_max}, kn <= {cap}");
                for k in 2..=k_max {
                    for n in (1..=n_max).take_while(|n| k * n <= cap) {
                        let rhs = self.split_sum(n, (k - 1) * n);
                        cases.push((vec![p("n", n), p("k", k)], self.r(k * n).clone(), rhs));
                    }
                }
            }
            6 => {
                params = format!("0 <= k < n <= {n_max}");
                for n in 1..=n_max {
                    for k in 0..n {
                        let rhs = self.split_sum(n - k, n + k);
                        cases.push((vec![p("n", n), p("k", k)], self.r(2 * n).clone(), rhs));
                    }
                }
            }
            7 => {
                params = format!("1 <= n <= {n_max}");
                for n in 1..=n_max {
                    let lhs: Poly2 = (1..=n).map(|i| self.r(i)).sum();
                    let rhs = (1..=n)
                        .map(|i| {
                            let prefix: Poly2 = (0..=n - i).map(|j| self.r(j)).sum();
                            self.rt(i) * &prefix
                        })
                        .sum();
                    cases.push((vec![p("n", n)], lhs, rhs));
                }
            }
            _ => panic!("identity id {identity_id} outside 1..=7"),
        }
        let checked = cases.len();
        let first_failure = cases
            .into_iter()
            .find(|(_, lhs, rhs)| lhs != rhs)
            .map(|(params, lhs, rhs)| Counterexample { params, lhs, rhs });
        IdentityReport {
            identity_id,
            params,
            checked,
            status: if first_failure.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            first_failure,
        }
    }

    pub fn check_all(&mut self) -> Vec<IdentityReport> {
        (1..=7).map(|id| self.check(id)).collect()
    }

    /// The `m = 1` case of [`split_sum`](Self::split_sum) coincides with
    /// [`one_step_sum`](Self::one_step_sum) for every `n`.
    pub fn split_sum_degenerates_at_m1(&mut self) -> bool {
        (1..=self.config.n_max).all(|n| self.split_sum(n, 1) == self.one_step_sum(n))
    }

    /// `k = 0` of the `R_{2n}` identity is the `n = m` split.
    pub fn centered_split_matches_at_k0(&mut self) -> bool {
        let k = 0;
        (1..=self.config.n_max).all(|n| {
            let centered = self.split_sum(n - k, n + k);
            centered == self.split_sum(n, n) && &centered == self.r(2 * n)
        })
    }
}

fn p(name: &str, value: usize) -> (String, i64) {
    (name.to_string(), value as i64)
}

pub fn check_identity(identity_id: u8, n_max: usize, mode: &Mode) -> IdentityReport {
    IdentityChecker::new(IdentityConfig::new(n_max), mode).check(identity_id)
}

pub fn run_all_identities(n_max: usize, mode: &Mode) -> Vec<IdentityReport> {
    IdentityChecker::new(IdentityConfig::new(n_max), mode).check_all()
}
