//! Layer-by-layer profile dynamic program over 4-bit interface masks.
//!
//! The state between layers `i` and `i + 1` is the set of cells of layer
//! `i + 1` already occupied by z-bricks started in layer `i`. A zero mask
//! means the tiling is breakable at that interface.

use crate::bipoly::{rat, Poly2};
use crate::error::Result;
use crate::geometry::{face_adjacent, Board, Defect, FULL_LAYER};

pub const NUM_MASKS: usize = 16;

/// Cell visiting order used by [`LayerTransfer::build`].
pub const DEFAULT_ORDER: [u8; 4] = [0, 1, 2, 3];

/// 4-bit set of pre-occupied layer cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InterfaceMask(u8);

impl InterfaceMask {
    pub const EMPTY: InterfaceMask = InterfaceMask(0);

    pub fn new(bits: u8) -> Option<Self> {
        (bits <= FULL_LAYER).then_some(InterfaceMask(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn is_breakable(self) -> bool {
        self.0 == 0
    }

    pub fn all() -> impl Iterator<Item = InterfaceMask> {
        (0..NUM_MASKS as u8).map(InterfaceMask)
    }
}

/// Weighted number of ways to complete one layer.
///
/// `present` are the cells of the layer on the board, `incoming` the cells
/// already filled from below, `outgoing` the cells that start a z-brick
/// upward. Free cells not in `outgoing` are covered by cubes and in-layer
/// bricks. Each z-brick is weighted once, here at its start layer.
pub fn fill_layer(
    present: u8,
    incoming: u8,
    outgoing: u8,
    cube: &Poly2,
    brick: &Poly2,
    order: &[u8; 4],
) -> Poly2 {
    if incoming & !present != 0 || outgoing & !(present & !incoming) != 0 {
        return Poly2::zero();
    }
    let remaining = present & !incoming & !outgoing;
    let lifted = brick.pow(outgoing.count_ones());
    if lifted.is_zero() {
        return lifted;
    }
    &lifted * &cover_in_layer(remaining, cube, brick, order)
}

fn cover_in_layer(remaining: u8, cube: &Poly2, brick: &Poly2, order: &[u8; 4]) -> Poly2 {
    let Some(&first) = order.iter().find(|&&c| remaining >> c & 1 == 1) else {
        return Poly2::one();
    };
    let rest = remaining & !(1 << first);
    let mut total = cube * &cover_in_layer(rest, cube, brick, order);
    for partner in 0..4u8 {
        if rest >> partner & 1 == 1 && face_adjacent(first, partner) {
            total += brick * &cover_in_layer(rest & !(1 << partner), cube, brick, order);
        }
    }
    total
}

/// The 16×16 transfer matrix between interface masks of full layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerTransfer {
    entries: Vec<Vec<Poly2>>,
}

impl LayerTransfer {
    /// Transfer with cube weight `a` and brick weight `b`.
    pub fn build() -> Self {
        Self::with_weights(&Poly2::a(), &Poly2::b())
    }

    pub fn with_weights(cube: &Poly2, brick: &Poly2) -> Self {
        Self::with_weights_and_order(cube, brick, &DEFAULT_ORDER)
    }

    pub fn with_weights_and_order(cube: &Poly2, brick: &Poly2, order: &[u8; 4]) -> Self {
        let entries = (0..NUM_MASKS as u8)
            .map(|s| {
                (0..NUM_MASKS as u8)
                    .map(|t| fill_layer(FULL_LAYER, s, t, cube, brick, order))
                    .collect()
            })
            .collect();
        LayerTransfer { entries }
    }

    pub fn entry(&self, from: InterfaceMask, to: InterfaceMask) -> &Poly2 {
        &self.entries[from.0 as usize][to.0 as usize]
    }

    fn step(&self, v: &[Poly2]) -> Vec<Poly2> {
        let mut next = vec![Poly2::zero(); NUM_MASKS];
        for (s, vs) in v.iter().enumerate() {
            if vs.is_zero() {
                continue;
            }
            for (t, out) in next.iter_mut().enumerate() {
                let e = &self.entries[s][t];
                if !e.is_zero() {
                    *out += &(vs * e);
                }
            }
        }
        next
    }
}

/// Profile DP bound to a fixed choice of piece weights.
#[derive(Clone, Debug)]
pub struct LayerDp {
    cube: Poly2,
    brick: Poly2,
    transfer: LayerTransfer,
}

impl Default for LayerDp {
    fn default() -> Self {
        Self::new(&Poly2::a(), &Poly2::b())
    }
}

impl LayerDp {
    pub fn new(cube: &Poly2, brick: &Poly2) -> Self {
        LayerDp {
            cube: cube.clone(),
            brick: brick.clone(),
            transfer: LayerTransfer::with_weights(cube, brick),
        }
    }

    pub fn transfer(&self) -> &LayerTransfer {
        &self.transfer
    }

    /// `(T^n)[0][0]`: weighted count of all tilings of `B_n`.
    pub fn count(&self, n: usize) -> Poly2 {
        self.sequence(n).pop().expect("non-empty")
    }

    /// Counts of `B_0 ..= B_n`.
    pub fn sequence(&self, n: usize) -> Vec<Poly2> {
        let mut v = unit_vector();
        let mut out = Vec::with_capacity(n + 1);
        out.push(v[0].clone());
        for _ in 0..n {
            v = self.transfer.step(&v);
            out.push(v[0].clone());
        }
        out
    }

    /// Weighted count of tilings of `B_n` breakable at no interior position:
    /// mask paths `0 → t_1 → … → t_{n-1} → 0` with every `t_i ≠ 0`.
    pub fn count_unbreakable(&self, n: usize) -> Poly2 {
        self.unbreakable_sequence(n).pop().expect("non-empty")
    }

    /// Unbreakable counts for `0 ..= n`.
    pub fn unbreakable_sequence(&self, n: usize) -> Vec<Poly2> {
        let mut out = vec![Poly2::one()];
        let mut v = unit_vector();
        for _ in 1..=n {
            v = self.transfer.step(&v);
            out.push(std::mem::take(&mut v[0]));
        }
        out
    }

    /// Weighted count of one specific (possibly defect) board. On `J5`
    /// boards the appended cell is always reached by a z-brick.
    pub fn count_board(&self, board: &Board) -> Poly2 {
        let layers = board.layers();
        let forced = match board.defect {
            Defect::J5(c) => Some(1u8 << c),
            _ => None,
        };
        let mut v = unit_vector();
        for (k, &present) in layers.iter().enumerate() {
            let next_present = layers.get(k + 1).copied().unwrap_or(0);
            let mut next = vec![Poly2::zero(); NUM_MASKS];
            for (s, vs) in v.iter().enumerate() {
                if vs.is_zero() {
                    continue;
                }
                for t in 0..NUM_MASKS as u8 {
                    if t & !next_present != 0 {
                        continue;
                    }
                    if forced.is_some() && k + 1 == board.n && Some(t) != forced {
                        continue;
                    }
                    let w =
                        fill_layer(present, s as u8, t, &self.cube, &self.brick, &DEFAULT_ORDER);
                    if !w.is_zero() {
                        next[t as usize] += &(vs * &w);
                    }
                }
            }
            v = next;
        }
        std::mem::take(&mut v[0])
    }

    /// Aggregated defect count `R_{j,n}` (representative times multiplicity).
    pub fn count_defect(&self, j: u8, n: usize) -> Result<Poly2> {
        let defect = Defect::from_family(j, 0)?;
        let board = Board::with_defect(n, defect)?;
        Ok(self
            .count_board(&board)
            .scale(&rat(defect.multiplicity() as i64)))
    }
}

fn unit_vector() -> Vec<Poly2> {
    let mut v = vec![Poly2::zero(); NUM_MASKS];
    v[0] = Poly2::one();
    v
}

pub fn build_layer_transfer() -> LayerTransfer {
    LayerTransfer::build()
}

pub fn count_dp(n: usize) -> Poly2 {
    LayerDp::default().count(n)
}

pub fn count_unbreakable_dp(n: usize) -> Poly2 {
    LayerDp::default().count_unbreakable(n)
}

/// `count_dp` with the transfer rebuilt under the given piece weights.
pub fn count_with_piece_weights(n: usize, cube_weight: &Poly2, brick_weight: &Poly2) -> Poly2 {
    LayerDp::new(cube_weight, brick_weight).count(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(bits: u8) -> InterfaceMask {
        InterfaceMask::new(bits).unwrap()
    }

    fn r1() -> Poly2 {
        Poly2::from_int_terms(&[(1, 4, 0), (4, 2, 1), (2, 0, 2)])
    }

    #[test]
    fn transfer_examples() {
        let t = build_layer_transfer();
        assert_eq!(t.entry(mask(0), mask(0)), &r1());
        assert_eq!(t.entry(mask(0), mask(15)), &Poly2::monomial(1, 0, 4));
        assert_eq!(t.entry(mask(15), mask(0)), &Poly2::one());
        for to in 1..16 {
            assert!(t.entry(mask(15), mask(to)).is_zero());
        }
        // one lifted cell leaves three cells: a^3 + 2ab
        assert_eq!(
            t.entry(mask(0), mask(1)),
            &Poly2::from_int_terms(&[(1, 3, 1), (2, 1, 2)])
        );
    }

    #[test]
    fn mask_bounds() {
        assert!(InterfaceMask::new(16).is_none());
        assert!(InterfaceMask::EMPTY.is_breakable());
        assert_eq!(InterfaceMask::all().count(), 16);
    }

    #[test]
    fn dp_small_values() {
        assert_eq!(count_dp(0), Poly2::one());
        assert_eq!(count_dp(1), r1());
        assert_eq!(count_dp(3).eval(&rat(1), &rat(1)), rat(1511));
        assert_eq!(count_unbreakable_dp(0), Poly2::one());
        assert_eq!(count_unbreakable_dp(1), r1());
        assert_eq!(
            count_unbreakable_dp(2),
            Poly2::from_int_terms(&[(4, 6, 1), (22, 4, 2), (28, 2, 3), (5, 0, 4)])
        );
        assert_eq!(count_unbreakable_dp(6).eval(&rat(1), &rat(1)), rat(85210));
    }

    #[test]
    fn piece_weights() {
        assert_eq!(
            count_with_piece_weights(2, &Poly2::zero(), &Poly2::b()),
            Poly2::monomial(9, 0, 4)
        );
        assert_eq!(
            count_with_piece_weights(4, &Poly2::zero(), &Poly2::one()),
            Poly2::from_int(121)
        );
        assert_eq!(
            count_with_piece_weights(1, &Poly2::a(), &Poly2::b()),
            count_dp(1)
        );
    }

    #[test]
    fn count_board_on_full_board_matches_count() {
        let dp = LayerDp::default();
        for n in 0..=4 {
            assert_eq!(dp.count_board(&Board::full(n)), dp.count(n));
        }
    }

    #[test]
    fn defect_values_at_one_layer() {
        let dp = LayerDp::default();
        assert_eq!(dp.count_defect(5, 1).unwrap(), Poly2::monomial(4, 0, 1));
        assert_eq!(dp.count_defect(3, 1).unwrap(), Poly2::monomial(2, 2, 0));
        assert_eq!(dp.count_defect(4, 1).unwrap(), Poly2::monomial(4, 1, 0));
    }

    #[test]
    fn fill_layer_rejects_inconsistent_masks() {
        let (a, b) = (Poly2::a(), Poly2::b());
        assert!(fill_layer(FULL_LAYER, 0b0011, 0b0001, &a, &b, &DEFAULT_ORDER).is_zero());
        assert!(fill_layer(0b0001, 0b0010, 0, &a, &b, &DEFAULT_ORDER).is_zero());
        assert_eq!(fill_layer(0, 0, 0, &a, &b, &DEFAULT_ORDER), Poly2::one());
    }
}
