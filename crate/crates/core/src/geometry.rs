//! Explicit board, piece and tiling model for `2×2×n` boards, with
//! exhaustive enumeration as the ground truth for small `n`.
//!
//! Cells of one layer are indexed `x + 2y`; layer `z` (1-based) occupies
//! global indices `4(z-1) .. 4(z-1)+3`.

use std::collections::HashMap;
use std::fmt;

use crate::bipoly::Poly2;
use crate::error::{Error, Result};

/// Default cap on the number of board cells for exhaustive enumeration.
pub const DEFAULT_MAX_CELLS: usize = 20;

/// All-cells mask of one layer.
pub const FULL_LAYER: u8 = 0b1111;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: u8,
    pub y: u8,
    /// Layer index, starting at 1.
    pub z: u32,
}

impl Cell {
    pub fn new(x: u8, y: u8, z: u32) -> Self {
        debug_assert!(x < 2 && y < 2 && z >= 1);
        Cell { x, y, z }
    }

    /// Index within the layer, `x + 2y`.
    pub fn layer_index(&self) -> u8 {
        self.x + 2 * self.y
    }

    fn from_global(g: u32) -> Self {
        let idx = (g % 4) as u8;
        Cell::new(idx & 1, idx >> 1, g / 4 + 1)
    }

    fn global(&self) -> u32 {
        4 * (self.z - 1) + self.layer_index() as u32
    }
}

/// Coordinates of a layer cell index.
pub fn layer_coords(idx: u8) -> (u8, u8) {
    (idx & 1, idx >> 1)
}

/// Whether two layer cells share a face (differ in exactly one coordinate).
pub fn face_adjacent(i: u8, j: u8) -> bool {
    let (xi, yi) = layer_coords(i);
    let (xj, yj) = layer_coords(j);
    (xi != xj) as u8 + (yi != yj) as u8 == 1
}

/// Unordered pairs of layer cells, either face-adjacent or diagonal,
/// in lexicographic order.
pub fn layer_pairs(adjacent: bool) -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            if face_adjacent(i, j) == adjacent {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    Cube,
    BrickX,
    BrickY,
    BrickZ,
}

impl PieceKind {
    pub fn is_brick(self) -> bool {
        self != PieceKind::Cube
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PieceKind::Cube => "cube",
            PieceKind::BrickX => "brick_x",
            PieceKind::BrickY => "brick_y",
            PieceKind::BrickZ => "brick_z",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub kind: PieceKind,
    pub anchor: Cell,
}

impl Piece {
    pub fn cells(&self) -> Vec<Cell> {
        let a = self.anchor;
        match self.kind {
            PieceKind::Cube => vec![a],
            PieceKind::BrickX => vec![a, Cell::new(a.x + 1, a.y, a.z)],
            PieceKind::BrickY => vec![a, Cell::new(a.x, a.y + 1, a.z)],
            PieceKind::BrickZ => vec![a, Cell::new(a.x, a.y, a.z + 1)],
        }
    }
}

/// Cells removed from (or, for `J5`, appended above) the last layer.
///
/// Positions: `J1(c)` removes cell `c`; `J2(k)` removes the `k`-th
/// face-adjacent pair; `J3(k)` removes the `k`-th diagonal pair; `J4(c)` and
/// `J5(c)` keep only cell `c` of layer `n`, and `J5` appends the cell above it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Defect {
    None,
    J1(u8),
    J2(u8),
    J3(u8),
    J4(u8),
    J5(u8),
}

impl Defect {
    /// Defect family `j` (0 for none) at the given position.
    pub fn from_family(j: u8, pos: u8) -> Result<Self> {
        let d = match j {
            0 => Defect::None,
            1 => Defect::J1(pos),
            2 => Defect::J2(pos),
            3 => Defect::J3(pos),
            4 => Defect::J4(pos),
            5 => Defect::J5(pos),
            _ => {
                return Err(Error::InvalidBoard(format!(
                    "defect family {j} outside 0..=5"
                )))
            }
        };
        if pos >= d.multiplicity() {
            return Err(Error::InvalidBoard(format!(
                "defect J{j} has {} positions, got {pos}",
                d.multiplicity()
            )));
        }
        Ok(d)
    }

    pub fn family(&self) -> u8 {
        match self {
            Defect::None => 0,
            Defect::J1(_) => 1,
            Defect::J2(_) => 2,
            Defect::J3(_) => 3,
            Defect::J4(_) => 4,
            Defect::J5(_) => 5,
        }
    }

    /// Number of distinct positions of this defect within a layer.
    pub fn multiplicity(&self) -> u8 {
        match self {
            Defect::None => 1,
            Defect::J3(_) => 2,
            _ => 4,
        }
    }

    /// Cells of layer `n` that remain on the board.
    fn last_layer(&self) -> u8 {
        match *self {
            Defect::None => FULL_LAYER,
            Defect::J1(c) => FULL_LAYER ^ (1 << c),
            Defect::J2(k) => {
                let (i, j) = layer_pairs(true)[k as usize];
                FULL_LAYER ^ (1 << i) ^ (1 << j)
            }
            Defect::J3(k) => {
                let (i, j) = layer_pairs(false)[k as usize];
                FULL_LAYER ^ (1 << i) ^ (1 << j)
            }
            Defect::J4(c) | Defect::J5(c) => 1 << c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Board {
    pub n: usize,
    pub defect: Defect,
}

impl Board {
    /// The full board `B_n`.
    pub fn full(n: usize) -> Self {
        Board {
            n,
            defect: Defect::None,
        }
    }

    pub fn with_defect(n: usize, defect: Defect) -> Result<Self> {
        if defect != Defect::None && n == 0 {
            return Err(Error::InvalidBoard(
                "a defect needs at least one layer".into(),
            ));
        }
        Defect::from_family(defect.family(), defect_pos(defect))?;
        Ok(Board { n, defect })
    }

    /// Present cells of each layer, bottom first. `J5` boards have `n + 1`
    /// layers, the last holding the single appended cell.
    pub fn layers(&self) -> Vec<u8> {
        let mut layers = vec![FULL_LAYER; self.n];
        if let Some(last) = layers.last_mut() {
            *last = self.defect.last_layer();
        }
        if let Defect::J5(c) = self.defect {
            layers.push(1 << c);
        }
        layers
    }

    pub fn num_cells(&self) -> usize {
        self.layers().iter().map(|m| m.count_ones() as usize).sum()
    }

    fn cell_mask(&self) -> u64 {
        self.layers()
            .iter()
            .enumerate()
            .take(16)
            .fold(0u64, |acc, (k, &m)| acc | (m as u64) << (4 * k))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.x < 2 && cell.y < 2 && cell.z >= 1 && {
            let g = cell.global();
            g < 64 && self.cell_mask() >> g & 1 == 1
        }
    }
}

fn defect_pos(d: Defect) -> u8 {
    match d {
        Defect::None => 0,
        Defect::J1(p) | Defect::J2(p) | Defect::J3(p) | Defect::J4(p) | Defect::J5(p) => p,
    }
}

/// A set of pieces covering every cell of `board` exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub board: Board,
    pub pieces: Vec<Piece>,
}

impl Tiling {
    pub fn num_cubes(&self) -> u32 {
        self.pieces
            .iter()
            .filter(|p| p.kind == PieceKind::Cube)
            .count() as u32
    }

    pub fn num_bricks(&self) -> u32 {
        self.pieces.len() as u32 - self.num_cubes()
    }

    /// `a^(#cubes) * b^(#bricks)`.
    pub fn weight(&self) -> Poly2 {
        Poly2::monomial(1, self.num_cubes(), self.num_bricks())
    }

    /// Whether the tiling splits between layers `i` and `i + 1`. Positions
    /// `0` and `n` are unbreakable by convention.
    pub fn is_breakable_at(&self, i: usize) -> bool {
        if i == 0 || i >= self.board.n {
            return false;
        }
        !self
            .pieces
            .iter()
            .any(|p| p.kind == PieceKind::BrickZ && p.anchor.z as usize == i)
    }

    pub fn is_unbreakable(&self) -> bool {
        (1..self.board.n).all(|i| !self.is_breakable_at(i))
    }

    /// Checks the partition property against the board.
    pub fn is_partition(&self) -> bool {
        let mut covered = 0u64;
        for p in &self.pieces {
            for c in p.cells() {
                if !self.board.contains(c) {
                    return false;
                }
                let bit = 1u64 << c.global();
                if covered & bit != 0 {
                    return false;
                }
                covered |= bit;
            }
        }
        covered == self.board.cell_mask()
    }
}

/// One piece per line, `kind x y z`.
impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pieces {
            writeln!(f, "{} {} {} {}", p.kind, p.anchor.x, p.anchor.y, p.anchor.z)?;
        }
        Ok(())
    }
}

/// Exhaustive tiling enumerator with a cell-count limit.
#[derive(Clone, Copy, Debug)]
pub struct Enumerator {
    pub max_cells: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

impl Enumerator {
    pub fn with_limit(max_cells: usize) -> Self {
        Enumerator {
            max_cells: max_cells.min(64),
        }
    }

    /// Calls `visit` once per tiling, filling the lowest free cell first and
    /// trying cube, x-brick, y-brick, z-brick in that order.
    ///
    /// On `J5` boards the appended cell is always covered by a z-brick from
    /// the surviving cell below it.
    pub fn visit<F: FnMut(&[Piece])>(&self, board: &Board, mut visit: F) -> Result<()> {
        let cells = board.num_cells();
        if cells > self.max_cells || board.layers().len() > 16 {
            return Err(Error::LimitExceeded {
                cells,
                limit: self.max_cells,
            });
        }
        let mut free = board.cell_mask();
        let mut pieces = Vec::with_capacity(cells);
        if let Defect::J5(c) = board.defect {
            let anchor = Cell::from_global(4 * (board.n as u32 - 1) + c as u32);
            free &= !(1 << anchor.global() | 1 << (anchor.global() + 4));
            pieces.push(Piece {
                kind: PieceKind::BrickZ,
                anchor,
            });
        }
        fill(free, &mut pieces, &mut visit);
        Ok(())
    }

    pub fn enumerate_tilings(&self, board: &Board) -> Result<Vec<Tiling>> {
        let mut out = Vec::new();
        self.visit(board, |pieces| {
            out.push(Tiling {
                board: *board,
                pieces: pieces.to_vec(),
            })
        })?;
        Ok(out)
    }

    /// Sum of tiling weights.
    pub fn count_exhaustive(&self, board: &Board) -> Result<Poly2> {
        self.count_filtered(board, |_| true)
    }

    /// Sum of weights of tilings breakable at no interior position.
    pub fn count_unbreakable_exhaustive(&self, board: &Board) -> Result<Poly2> {
        if board.defect != Defect::None {
            return Err(Error::InvalidBoard(
                "unbreakable counts are defined on full boards".into(),
            ));
        }
        let n = board.n;
        // bit i set: some z-brick crosses interface i
        let all_interfaces: u64 = if n < 2 {
            0
        } else {
            ((1u64 << (n - 1)) - 1) << 1
        };
        self.count_filtered(board, |pieces| {
            let crossed = pieces
                .iter()
                .filter(|p| p.kind == PieceKind::BrickZ)
                .fold(0u64, |acc, p| acc | 1 << p.anchor.z);
            crossed & all_interfaces == all_interfaces
        })
    }

    /// Aggregated count of defect board `R_{j,n}`: one representative
    /// position times the defect multiplicity.
    pub fn count_defect_exhaustive(&self, j: u8, n: usize) -> Result<Poly2> {
        let defect = Defect::from_family(j, 0)?;
        let board = Board::with_defect(n, defect)?;
        let rep = self.count_exhaustive(&board)?;
        Ok(rep.scale(&crate::bipoly::rat(defect.multiplicity() as i64)))
    }

    fn count_filtered<P: Fn(&[Piece]) -> bool>(&self, board: &Board, keep: P) -> Result<Poly2> {
        let mut histogram: HashMap<(u32, u32), i64> = HashMap::new();
        self.visit(board, |pieces| {
            if keep(pieces) {
                let cubes = pieces.iter().filter(|p| p.kind == PieceKind::Cube).count() as u32;
                let bricks = pieces.len() as u32 - cubes;
                *histogram.entry((cubes, bricks)).or_default() += 1;
            }
        })?;
        Ok(histogram
            .into_iter()
            .map(|((c, b), k)| Poly2::monomial(k, c, b))
            .sum())
    }
}

fn fill<F: FnMut(&[Piece])>(free: u64, pieces: &mut Vec<Piece>, visit: &mut F) {
    if free == 0 {
        visit(pieces);
        return;
    }
    let g = free.trailing_zeros();
    let anchor = Cell::from_global(g);
    let rest = free & !(1 << g);
    let mut place = |kind: PieceKind, other: Option<u32>, pieces: &mut Vec<Piece>| {
        let next = match other {
            Some(o) if o < 64 && rest >> o & 1 == 1 => rest & !(1 << o),
            Some(_) => return,
            None => rest,
        };
        pieces.push(Piece { kind, anchor });
        fill(next, pieces, visit);
        pieces.pop();
    };
    place(PieceKind::Cube, None, pieces);
    if anchor.x == 0 {
        place(PieceKind::BrickX, Some(g + 1), pieces);
    }
    if anchor.y == 0 {
        place(PieceKind::BrickY, Some(g + 2), pieces);
    }
    place(PieceKind::BrickZ, Some(g + 4), pieces);
}

/// Convenience wrappers using the default limit.
pub fn enumerate_tilings(board: &Board) -> Result<Vec<Tiling>> {
    Enumerator::default().enumerate_tilings(board)
}

pub fn count_exhaustive(board: &Board) -> Result<Poly2> {
    Enumerator::default().count_exhaustive(board)
}

pub fn count_unbreakable_exhaustive(board: &Board) -> Result<Poly2> {
    Enumerator::default().count_unbreakable_exhaustive(board)
}

pub fn count_defect_exhaustive(j: u8, n: usize) -> Result<Poly2> {
    Enumerator::default().count_defect_exhaustive(j, n)
}
