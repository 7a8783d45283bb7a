//! Transfer matrices between defect boards, characteristic polynomials, and
//! linear recurrences over [`Poly2`].
//!
//! Also holds the two-dimensional baseline recurrences (generalized
//! Fibonacci, colored `2×n`, and the `{4,q}` mosaic family) used as
//! cross-checks.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;

use crate::bipoly::{rat, Poly2};
use crate::error::{Error, Result};

fn p(text: &str) -> Poly2 {
    text.parse().expect("hardcoded polynomial literal")
}

/// Square matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<Vec<Poly2>>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<Poly2>>) -> Result<Self> {
        let size = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(Error::DimensionMismatch {
                expected: size,
                got: bad.len(),
            });
        }
        Ok(PolyMatrix {
            size,
            entries: rows,
        })
    }

    pub fn identity(size: usize) -> Self {
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == j { Poly2::one() } else { Poly2::zero() })
                    .collect()
            })
            .collect();
        PolyMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &Poly2 {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Poly2>] {
        &self.entries
    }

    pub fn mul_vec(&self, v: &[Poly2]) -> Result<Vec<Poly2>> {
        if v.len() != self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                got: v.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect())
    }

    pub fn substitute(&self, a_val: Option<&BigRational>, b_val: Option<&BigRational>) -> Self {
        PolyMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.substitute(a_val, b_val)).collect())
                .collect(),
        }
    }
}

/// The 6×6 matrix linking `(R_{j,n})` to `(R_{k,n-1})` for the full board
/// (`j = 0`) and the five defect boards.
///
/// Entry `(3, 3)` is `b^2`: two z-bricks filling both cells of a diagonal
/// defect layer.
pub fn matrix_m() -> PolyMatrix {
    let z = Poly2::zero;
    let rows = vec![
        vec![
            p("a^4 + 4*a^2*b + 2*b^2"),
            p("a^3*b + 2*a*b^2"),
            p("a^2*b^2 + b^3"),
            p("a^2*b^2"),
            p("a*b^3"),
            p("1/4*b^3"),
        ],
        vec![
            p("4*a^3 + 8*a*b"),
            p("3*a^2*b + 2*b^2"),
            p("2*a*b^2"),
            p("2*a*b^2"),
            p("b^3"),
            z(),
        ],
        vec![p("4*a^2 + 4*b"), p("2*a*b"), p("b^2"), z(), z(), z()],
        vec![p("2*a^2"), p("a*b"), z(), p("b^2"), z(), z()],
        vec![p("4*a"), p("b"), z(), z(), z(), z()],
        vec![p("4*b"), z(), z(), z(), z(), z()],
    ];
    PolyMatrix::from_rows(rows).expect("square")
}

/// The 5×5 matrix of the unbreakable system (`R_{5,n}` omitted, column 0
/// zeroed).
pub fn matrix_u() -> PolyMatrix {
    let z = Poly2::zero;
    let rows = vec![
        vec![
            z(),
            p("a^3*b + 2*a*b^2"),
            p("a^2*b^2 + b^3"),
            p("a^2*b^2"),
            p("a*b^3"),
        ],
        vec![
            z(),
            p("3*a^2*b + 2*b^2"),
            p("2*a*b^2"),
            p("2*a*b^2"),
            p("b^3"),
        ],
        vec![z(), p("2*a*b"), p("b^2"), z(), z()],
        vec![z(), p("a*b"), z(), p("b^2"), z()],
        vec![z(), p("b"), z(), z(), z()],
    ];
    PolyMatrix::from_rows(rows).expect("square")
}

/// The 3×3 bricks-only matrix over boards `R_0`, `R_2`, `R_5`.
pub fn matrix_bricks() -> PolyMatrix {
    let rows = vec![
        vec![p("2*b^2"), p("b^3"), p("1/4*b^3")],
        vec![p("4*b"), p("b^2"), Poly2::zero()],
        vec![p("4*b"), Poly2::zero(), Poly2::zero()],
    ];
    PolyMatrix::from_rows(rows).expect("square")
}

/// Values of the M-system at `n = 1`: `(R_1, R_{1,1}, …, R_{5,1})`.
pub fn system_m_initial() -> Vec<Poly2> {
    vec![
        p("a^4 + 4*a^2*b + 2*b^2"),
        p("4*a^3 + 8*a*b"),
        p("4*a^2 + 4*b"),
        p("2*a^2"),
        p("4*a"),
        p("4*b"),
    ]
}

/// Values of the U-system at `n = 1`.
pub fn system_u_initial() -> Vec<Poly2> {
    let mut v = system_m_initial();
    v.truncate(5);
    v
}

/// Values of the bricks-only system at `n = 1`: `(R_1, R_{2,1}, R_{5,1})`
/// with `a = 0`.
pub fn system_bricks_initial() -> Vec<Poly2> {
    vec![p("2*b^2"), p("4*b"), p("4*b")]
}

/// Polynomial in a formal `x` with [`Poly2`] coefficients, lowest degree
/// first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct XPoly(Vec<Poly2>);

impl XPoly {
    fn constant(c: Poly2) -> Self {
        XPoly(vec![c]).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Poly2::is_zero) {
            self.0.pop();
        }
        self
    }

    fn add(&self, other: &XPoly) -> XPoly {
        let len = self.0.len().max(other.0.len());
        let zero = Poly2::zero();
        XPoly(
            (0..len)
                .map(|k| self.0.get(k).unwrap_or(&zero) + other.0.get(k).unwrap_or(&zero))
                .collect(),
        )
        .trimmed()
    }

    fn mul(&self, other: &XPoly) -> XPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return XPoly::default();
        }
        let mut out = vec![Poly2::zero(); self.0.len() + other.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in other.0.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        XPoly(out).trimmed()
    }

    fn neg(&self) -> XPoly {
        XPoly(self.0.iter().map(|c| -c).collect())
    }
}

/// Monic characteristic polynomial `det(xI - M)`; `coeffs[k]` multiplies
/// `x^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub coeffs: Vec<Poly2>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Poly2 {
        &self.coeffs[k]
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (0..self.coeffs.len()).rev() {
            writeln!(f, "x^{k}: {}", self.coeffs[k])?;
        }
        Ok(())
    }
}

pub const MAX_CHARPOLY_SIZE: usize = 8;

/// Characteristic polynomial by cofactor expansion of `det(xI - M)`.
///
/// Fails with [`Error::NonIntegralCharPoly`] if any coefficient has a
/// non-integer rational coefficient.
pub fn charpoly(m: &PolyMatrix) -> Result<CharPoly> {
    let n = m.size();
    if n > MAX_CHARPOLY_SIZE {
        return Err(Error::MatrixTooLarge(n));
    }
    let cells: Vec<Vec<XPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = XPoly::constant(-m.get(i, j));
                    if i == j {
                        e = e.add(&XPoly(vec![Poly2::zero(), Poly2::one()]));
                    }
                    e
                })
                .collect()
        })
        .collect();
    let mut memo = HashMap::new();
    let det = minor(&cells, 0, (1u16 << n) - 1, &mut memo);
    let mut coeffs = det.0;
    coeffs.resize(n + 1, Poly2::zero());
    for (degree, c) in coeffs.iter().enumerate() {
        if !c.is_integer_poly() {
            return Err(Error::NonIntegralCharPoly {
                degree,
                coeff: c.to_string(),
            });
        }
    }
    debug_assert!(coeffs[n].is_one());
    Ok(CharPoly { coeffs })
}

/// Determinant of rows `row..` restricted to the columns in `cols`,
/// expanding along the first remaining row.
fn minor(cells: &[Vec<XPoly>], row: usize, cols: u16, memo: &mut HashMap<u16, XPoly>) -> XPoly {
    if cols == 0 {
        return XPoly::constant(Poly2::one());
    }
    if let Some(hit) = memo.get(&cols) {
        return hit.clone();
    }
    let mut total = XPoly::default();
    let mut sign_negative = false;
    for col in 0..cells.len() {
        if cols >> col & 1 == 0 {
            continue;
        }
        let entry = &cells[row][col];
        if !entry.0.is_empty() {
            let term = entry.mul(&minor(cells, row + 1, cols & !(1 << col), memo));
            total = total.add(&if sign_negative { term.neg() } else { term });
        }
        sign_negative = !sign_negative;
    }
    memo.insert(cols, total.clone());
    total
}

/// Linear recurrence `X_n = Σ_{i=1}^{order} coeffs[i-1] · X_{n-i}` for
/// `n >= valid_from`, seeded by `initial` at indices `first_index ..`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub order: usize,
    pub coeffs: Vec<Poly2>,
    pub initial: Vec<Poly2>,
    pub first_index: i64,
    pub valid_from: i64,
}

impl RecurrenceSpec {
    pub fn new(
        coeffs: Vec<Poly2>,
        initial: Vec<Poly2>,
        first_index: i64,
        valid_from: i64,
    ) -> Result<Self> {
        let order = coeffs.len();
        let needed = (valid_from - first_index).max(order as i64) as usize;
        if initial.len() < needed || valid_from - (order as i64) < first_index {
            return Err(Error::DimensionMismatch {
                expected: needed,
                got: initial.len(),
            });
        }
        Ok(RecurrenceSpec {
            order,
            coeffs,
            initial,
            first_index,
            valid_from,
        })
    }

    /// Drops trailing zero coefficients (a factor `x` of the characteristic
    /// polynomial does not change the relation).
    pub fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Poly2::is_zero) {
            self.coeffs.pop();
        }
        self.order = self.coeffs.len();
        self
    }

    pub fn substitute(&self, a_val: Option<&BigRational>, b_val: Option<&BigRational>) -> Self {
        let sub = |v: &[Poly2]| v.iter().map(|x| x.substitute(a_val, b_val)).collect();
        RecurrenceSpec {
            order: self.order,
            coeffs: sub(&self.coeffs),
            initial: sub(&self.initial),
            first_index: self.first_index,
            valid_from: self.valid_from,
        }
    }

    /// Values at indices `first_index ..= n`.
    pub fn sequence(&self, n: i64) -> Result<Vec<Poly2>> {
        if n < self.first_index {
            return Err(Error::IndexBelowRange {
                n,
                first: self.first_index,
            });
        }
        let len = (n - self.first_index + 1) as usize;
        let mut seq: Vec<Poly2> = Vec::with_capacity(len);
        for k in 0..len {
            let index = self.first_index + k as i64;
            let value = if index < self.valid_from {
                self.initial[k].clone()
            } else {
                self.combination(&seq, index)
            };
            seq.push(value);
        }
        Ok(seq)
    }

    /// The right-hand side `Σ α_i X_{n-i}` evaluated on `values`, which
    /// are indexed from `first_index`. Applies the relation even below
    /// `valid_from`.
    pub fn combination(&self, values: &[Poly2], n: i64) -> Poly2 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, alpha)| {
                let k = (n - 1 - i as i64 - self.first_index) as usize;
                alpha * &values[k]
            })
            .sum()
    }
}

/// `α_i = -coeffs[order - i]`.
pub fn recurrence_from_charpoly(
    c: &CharPoly,
    initial: Vec<Poly2>,
    valid_from: i64,
) -> Result<RecurrenceSpec> {
    let order = c.degree();
    let coeffs = (1..=order).map(|i| -c.coeff(order - i)).collect();
    RecurrenceSpec::new(coeffs, initial, 0, valid_from)
}

/// `m^(n-1) · v0`, the system vector at index `n` given its value at 1.
pub fn iterate_system(m: &PolyMatrix, v0: &[Poly2], n: usize) -> Result<Vec<Poly2>> {
    if n == 0 {
        return Err(Error::IndexBelowRange { n: 0, first: 1 });
    }
    let mut v = v0.to_vec();
    if v.len() != m.size() {
        return Err(Error::DimensionMismatch {
            expected: m.size(),
            got: v.len(),
        });
    }
    for _ in 1..n {
        v = m.mul_vec(&v)?;
    }
    Ok(v)
}

pub fn eval_recurrence(spec: &RecurrenceSpec, n: i64) -> Result<Poly2> {
    Ok(spec.sequence(n)?.pop().expect("non-empty"))
}

/// The reference characteristic polynomial of [`matrix_m`], lowest degree
/// first.
pub fn reference_charpoly_m() -> CharPoly {
    CharPoly {
        coeffs: vec![
            p("b^12"),
            p("-a^4*b^8 + a^2*b^9 - 2*b^10"),
            p("-a^6*b^5 - 2*a^4*b^6 - 6*a^2*b^7 - 9*b^8"),
            p("2*a^6*b^3 + 10*a^4*b^4 + 26*a^2*b^5 + 8*b^6"),
            p("-a^6*b - 6*a^4*b^2 - 6*a^2*b^3 + 7*b^4"),
            p("-a^4 - 7*a^2*b - 6*b^2"),
            p("1"),
        ],
    }
}

/// `x (x^4 - (3a^2 b + 4b^2) x^3 + 4b^4 x^2 + 3a^2 b^5 x - b^8)`.
pub fn reference_charpoly_u() -> CharPoly {
    CharPoly {
        coeffs: vec![
            Poly2::zero(),
            p("-b^8"),
            p("3*a^2*b^5"),
            p("4*b^4"),
            p("-3*a^2*b - 4*b^2"),
            p("1"),
        ],
    }
}

/// Sixth-order recurrence for full-board counts, with `R_0 .. R_5`.
pub fn reference_recurrence_r() -> RecurrenceSpec {
    let coeffs = vec![
        p("a^4 + 7*a^2*b + 6*b^2"),
        p("a^6*b + 6*a^4*b^2 + 6*a^2*b^3 - 7*b^4"),
        p("-2*a^6*b^3 - 10*a^4*b^4 - 26*a^2*b^5 - 8*b^6"),
        p("a^6*b^5 + 2*a^4*b^6 + 6*a^2*b^7 + 9*b^8"),
        p("a^4*b^8 - a^2*b^9 + 2*b^10"),
        p("-b^12"),
    ];
    let initial =
        vec![
        p("1"),
        p("a^4 + 4*a^2*b + 2*b^2"),
        p("a^8 + 12*a^6*b + 42*a^4*b^2 + 44*a^2*b^3 + 9*b^4"),
        p("a^12 + 20*a^10*b + 142*a^8*b^2 + 440*a^6*b^3 + 588*a^4*b^4 + 288*a^2*b^5 + 32*b^6"),
        p("a^16 + 28*a^14*b + 306*a^12*b^2 + 1672*a^10*b^3 + 4863*a^8*b^4 + 7416*a^6*b^5 \
           + 5470*a^4*b^6 + 1620*a^2*b^7 + 121*b^8"),
        p("a^20 + 36*a^18*b + 534*a^16*b^2 + 4248*a^14*b^3 + 19774*a^12*b^4 + 55200*a^10*b^5 \
           + 91200*a^8*b^6 + 84984*a^6*b^7 + 40553*a^4*b^8 + 8204*a^2*b^9 + 450*b^10"),
    ];
    RecurrenceSpec::new(coeffs, initial, 0, 6).expect("well-formed")
}

/// Third-order recurrence for bricks-only counts (`a = 0`).
pub fn reference_recurrence_bricks() -> RecurrenceSpec {
    let coeffs = vec![p("3*b^2"), p("3*b^4"), p("-b^6")];
    let initial = vec![p("1"), p("2*b^2"), p("9*b^4")];
    RecurrenceSpec::new(coeffs, initial, 0, 3).expect("well-formed")
}

/// Fourth-order recurrence for unbreakable counts, holding from `n = 7`,
/// with `R̃_0 .. R̃_6`.
pub fn reference_recurrence_unbreakable() -> RecurrenceSpec {
    let coeffs = vec![p("3*a^2*b + 4*b^2"), p("-4*b^4"), p("-3*a^2*b^5"), p("b^8")];
    let initial = vec![
        p("1"),
        p("a^4 + 4*a^2*b + 2*b^2"),
        p("4*a^6*b + 22*a^4*b^2 + 28*a^2*b^3 + 5*b^4"),
        p("12*a^8*b^2 + 80*a^6*b^3 + 158*a^4*b^4 + 88*a^2*b^5 + 4*b^6"),
        p("36*a^10*b^3 + 288*a^8*b^4 + 776*a^6*b^5 + 798*a^4*b^6 + 252*a^2*b^7 + 4*b^8"),
        p(
            "108*a^12*b^4 + 1008*a^10*b^5 + 3420*a^8*b^6 + 5112*a^6*b^7 + 3234*a^4*b^8 \
           + 656*a^2*b^9 + 4*b^10",
        ),
        p(
            "324*a^14*b^5 + 3456*a^12*b^6 + 14112*a^10*b^7 + 27624*a^8*b^8 + 26576*a^6*b^9 \
           + 11470*a^4*b^10 + 1644*a^2*b^11 + 4*b^12",
        ),
    ];
    RecurrenceSpec::new(coeffs, initial, 0, 7).expect("well-formed")
}

/// The sixth-order recurrence re-derived from [`matrix_m`]: coefficients
/// from its characteristic polynomial, initial values from the system.
pub fn derived_recurrence_r() -> Result<RecurrenceSpec> {
    let mut initial = vec![Poly2::one()];
    for n in 1..=5 {
        initial.push(iterate_system(&matrix_m(), &system_m_initial(), n)?.swap_remove(0));
    }
    recurrence_from_charpoly(&charpoly(&matrix_m())?, initial, 6)
}

pub fn derived_recurrence_bricks() -> Result<RecurrenceSpec> {
    let mut initial = vec![Poly2::one()];
    for n in 1..=2 {
        initial.push(iterate_system(&matrix_bricks(), &system_bricks_initial(), n)?.swap_remove(0));
    }
    recurrence_from_charpoly(&charpoly(&matrix_bricks())?, initial, 3)
}

/// The unbreakable recurrence re-derived from [`matrix_u`]. The U-system
/// misses the four-z-brick tiling of `B_2`, so `b^4` is added back at
/// `n = 2`.
pub fn derived_recurrence_unbreakable() -> Result<RecurrenceSpec> {
    let mut initial = vec![Poly2::one()];
    for n in 1..=6 {
        initial.push(iterate_system(&matrix_u(), &system_u_initial(), n)?.swap_remove(0));
    }
    initial[2] += &Poly2::monomial(1, 0, 4);
    Ok(recurrence_from_charpoly(&charpoly(&matrix_u())?, initial, 7)?.trimmed())
}

/// Generalized Fibonacci `u_n = a u_{n-1} + b u_{n-2}`, `u_0 = 1`,
/// `u_1 = a`, extended by `u_{-1} = 0`.
pub fn baseline_u(n: i64) -> Result<Poly2> {
    Ok(baseline_u_sequence(n)?.pop().expect("non-empty"))
}

/// `u_{-1} ..= u_n`.
fn baseline_u_sequence(n: i64) -> Result<Vec<Poly2>> {
    if n < -1 {
        return Err(Error::IndexBelowRange { n, first: -1 });
    }
    let (a, b) = (Poly2::a(), Poly2::b());
    let mut seq = vec![Poly2::zero(), Poly2::one()];
    while (seq.len() as i64) - 2 < n {
        let k = seq.len();
        let next = &(&a * &seq[k - 1]) + &(&b * &seq[k - 2]);
        seq.push(next);
    }
    seq.truncate((n + 2) as usize);
    Ok(seq)
}

/// Colored `2×n` recurrence `R_n = (a^2+2b)R_{n-1} + a^2 b R_{n-2} - b^3 R_{n-3}`.
pub fn baseline_2xn() -> RecurrenceSpec {
    RecurrenceSpec::new(
        vec![p("a^2 + 2*b"), p("a^2*b"), p("-b^3")],
        vec![p("1"), p("a^2 + b"), p("a^4 + 4*a^2*b + 2*b^2")],
        0,
        3,
    )
    .expect("well-formed")
}

/// Fourth-order recurrence for `2×n` boards of the `{4,q}` mosaic.
pub fn baseline_4q(q: u32) -> Result<RecurrenceSpec> {
    if q < 4 {
        return Err(Error::InvalidQ(q));
    }
    let (a, b) = (Poly2::a(), Poly2::b());
    let a2b = p("a^2 + b");
    let b3 = b.pow(3);

    // each sequence is indexed from q = 4
    let mut alpha = vec![a2b.clone(), p("a^3 + 3*a*b")];
    let mut beta = vec![
        p("2*a^2*b + 2*b^2"),
        &(&b * &a2b) * &p("a^2 + 2*b"),
        &b * &p("a^6 + 6*a^4*b + 10*a^2*b^2 + 2*b^3"),
    ];
    let mut gamma = vec![&b.pow(2) * &p("a^2 - b"), &p("-a*b^3") * &a2b];
    let k = (q - 4) as usize;
    while alpha.len() <= k {
        let j = alpha.len();
        alpha.push(&(&a * &alpha[j - 1]) + &(&b * &alpha[j - 2]));
    }
    while beta.len() <= k {
        let j = beta.len();
        let next =
            &(&(&a2b * &beta[j - 1]) + &(&(&b * &a2b) * &beta[j - 2])) - &(&b3 * &beta[j - 3]);
        beta.push(next);
    }
    while gamma.len() <= k {
        let j = gamma.len();
        gamma.push(&(&p("-a*b") * &gamma[j - 1]) + &(&b3 * &gamma[j - 2]));
    }

    let us = baseline_u_sequence(q as i64 - 2)?;
    // us[0] is u_{-1}
    let u = |i: i64| &us[(i + 1) as usize];
    let qi = q as i64;
    let (u2, u3, u4, u5) = (u(qi - 2), u(qi - 3), u(qi - 4), u(qi - 5));
    let ab = &a * &b;
    let b2 = b.pow(2);

    let r1 = u2.clone();
    let r2 = &(&(&u2.pow(2) + &(&(&ab * u4) * u3)) + &(&b * &u3.pow(2))) + &(&b2 * &u4.pow(2));
    let r3 = {
        let first = &(&(&(&u2.pow(2) + &(&(&ab * u4) * u3).scale(&rat(2)))
            + &(&b * &u3.pow(2)).scale(&rat(2)))
            + &(&b2 * &u4.pow(2)).scale(&rat(2)))
            * u2;
        let inner = &(&(u3 * u4) + &(&(&a2b * u4) * u5)) + &(&a * &u4.pow(2));
        let second = &(&b2 * &inner) * u3;
        let third = &(&(&ab * &b2) * &u4.pow(2)) * u5;
        &(&first + &second) + &third
    };

    let coeffs = vec![
        alpha[k].clone(),
        beta[k].clone(),
        gamma[k].clone(),
        -b.pow(2 * (q - 2)),
    ];
    RecurrenceSpec::new(coeffs, vec![Poly2::one(), r1, r2, r3], 0, 4)
}
