//! The 56 Robinson tiles, their matching rules, supertiles and the fully
//! aligned tiling `rho`.
//!
//! Patch coordinates are `(y, z)` with `y` pointing right (east) and `z`
//! pointing up (north).
//!
//! Every tile edge carries a black arrow end at its midpoint and two lateral
//! slots. A slot holds either the end of a side arrow or a parity digit. On
//! north and south edges slot 0 is the western one; on east and west edges
//! slot 0 is the southern one.

use alloc::vec::Vec;

use thiserror::Error;

use crate::group::nu2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Head,
    Tail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Digit(u8),
    Arrow(Mark),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub black: Mark,
    pub slots: [Slot; 2],
}

impl Edge {
    fn reversed(self) -> Edge {
        Edge {
            black: self.black,
            slots: [self.slots[1], self.slots[0]],
        }
    }

    fn side_arrow(&self, slot: usize) -> Option<Mark> {
        match self.slots[slot] {
            Slot::Arrow(m) => Some(m),
            Slot::Digit(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    N,
    E,
    S,
    W,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::N, Dir::E, Dir::S, Dir::W];

    fn index(self) -> usize {
        self as usize
    }

    fn opposite(self) -> Dir {
        Dir::ALL[(self.index() + 2) % 4]
    }

    /// Unit step `(dy, dz)`.
    pub fn step(self) -> (i64, i64) {
        match self {
            Dir::N => (0, 1),
            Dir::E => (1, 0),
            Dir::S => (0, -1),
            Dir::W => (-1, 0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TileKind {
    Cross,
    Arm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Adjacency {
    /// The second tile sits east of the first.
    EOf,
    /// The second tile sits north of the first.
    NOf,
}

/// Base tile `1..=14` (row-major, upper row first) turned `rot` quarter turns
/// counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RobTile {
    base: u8,
    rot: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RobinsonError {
    #[error("base id {0} outside 1..=14")]
    BadBase(u8),
    #[error("rotation {0} outside 0..=3")]
    BadRotation(u8),
    #[error("supertile level must be at least 1")]
    BadLevel,
    #[error("assembled patch has {count} mismatched edges, first at ({y},{z})")]
    Assembly { count: usize, y: i64, z: i64 },
}

/// Side arrows drawn on the upper-row copy of each base, at rotation 0.
/// Entries are `(edge, slot, mark)`.
const SIDE_ARROWS: [&[(Dir, usize, Mark)]; 7] = [
    &[(Dir::N, 0, Mark::Head), (Dir::E, 0, Mark::Head)],
    &[(Dir::N, 0, Mark::Tail), (Dir::S, 0, Mark::Head)],
    &[(Dir::N, 1, Mark::Tail), (Dir::S, 1, Mark::Head)],
    &[
        (Dir::N, 0, Mark::Tail),
        (Dir::S, 0, Mark::Head),
        (Dir::W, 0, Mark::Tail),
        (Dir::E, 0, Mark::Tail),
    ],
    &[
        (Dir::N, 1, Mark::Tail),
        (Dir::S, 1, Mark::Head),
        (Dir::W, 0, Mark::Tail),
        (Dir::E, 0, Mark::Tail),
    ],
    &[(Dir::W, 0, Mark::Tail), (Dir::E, 0, Mark::Tail)],
    &[],
];

fn base_edges(base: u8) -> [Edge; 4] {
    let col = usize::from((base - 1) % 7);
    let upper = base <= 7;
    let cross = col == 0;
    let (ns, we) = match (upper, cross) {
        (true, _) => (0, 0),
        (false, true) => (1, 1),
        (false, false) => (2, 1),
    };
    let black = |d: Dir| match (cross, d) {
        (true, _) | (false, Dir::S) => Mark::Head,
        _ => Mark::Tail,
    };
    let mut edges = Dir::ALL.map(|d| {
        let digit = match d {
            Dir::N | Dir::S => ns,
            Dir::E | Dir::W => we,
        };
        Edge {
            black: black(d),
            slots: [Slot::Digit(digit); 2],
        }
    });
    for &(d, slot, mark) in SIDE_ARROWS[col] {
        edges[d.index()].slots[slot] = Slot::Arrow(mark);
    }
    edges
}

fn rotate_once(e: [Edge; 4]) -> [Edge; 4] {
    let [n, east, s, w] = e;
    [east.reversed(), s, w.reversed(), n]
}

impl RobTile {
    pub fn new(base: u8, rot: u8) -> Result<Self, RobinsonError> {
        if !(1..=14).contains(&base) {
            return Err(RobinsonError::BadBase(base));
        }
        if rot > 3 {
            return Err(RobinsonError::BadRotation(rot));
        }
        Ok(RobTile { base, rot })
    }

    pub fn base(self) -> u8 {
        self.base
    }

    pub fn rot(self) -> u8 {
        self.rot
    }

    pub fn kind(self) -> TileKind {
        if self.base == 1 || self.base == 8 {
            TileKind::Cross
        } else {
            TileKind::Arm
        }
    }

    pub fn is_cross(self) -> bool {
        self.kind() == TileKind::Cross
    }

    /// Upper-row bases carry parity digit 0 everywhere.
    pub fn is_lower_row(self) -> bool {
        self.base >= 8
    }

    pub fn rotate(self, quarter_turns: u8) -> RobTile {
        RobTile {
            base: self.base,
            rot: (self.rot + quarter_turns) % 4,
        }
    }

    /// Edge descriptors in the order N, E, S, W.
    pub fn edges(self) -> [Edge; 4] {
        let mut e = base_edges(self.base);
        for _ in 0..self.rot {
            e = rotate_once(e);
        }
        e
    }

    pub fn edge(self, d: Dir) -> Edge {
        self.edges()[d.index()]
    }

    /// Directions of the outgoing side arrows of a cross, with their slots.
    pub fn cross_emissions(self) -> Vec<(Dir, usize)> {
        let edges = self.edges();
        let mut out = Vec::new();
        for d in Dir::ALL {
            for slot in 0..2 {
                if edges[d.index()].side_arrow(slot) == Some(Mark::Head) {
                    out.push((d, slot));
                }
            }
        }
        out
    }
}

fn edges_match(a: Edge, b: Edge) -> bool {
    if a.black == b.black {
        return false;
    }
    a.slots.iter().zip(b.slots.iter()).all(|(p, q)| match (p, q) {
        (Slot::Digit(d), Slot::Digit(e)) => d + e == 2,
        (Slot::Arrow(m), Slot::Arrow(n)) => m != n,
        _ => false,
    })
}

/// Whether `b` may sit east of (resp. north of) `a`.
pub fn matches(a: RobTile, b: RobTile, dir: Adjacency) -> bool {
    match dir {
        Adjacency::EOf => edges_match(a.edge(Dir::E), b.edge(Dir::W)),
        Adjacency::NOf => edges_match(a.edge(Dir::N), b.edge(Dir::S)),
    }
}

/// All 56 tiles, ordered by base then rotation.
pub fn build_tileset() -> Vec<RobTile> {
    let tiles: Vec<RobTile> = (1..=14u8)
        .flat_map(|base| (0..4u8).map(move |rot| RobTile { base, rot }))
        .collect();
    debug_assert!(tileset_is_sound(&tiles));
    tiles
}

fn tileset_is_sound(tiles: &[RobTile]) -> bool {
    let mut descriptors: Vec<[Edge; 4]> = tiles.iter().map(|t| t.edges()).collect();
    descriptors.sort();
    descriptors.dedup();
    descriptors.len() == 56
        && tiles.iter().filter(|t| t.is_cross()).count() == 8
        && tiles.iter().all(|t| t.rotate(4) == *t)
        && tiles.iter().all(|&t| side_arrows_converge_toward_tip(t))
}

/// For arms, a pair of incoming side arrows on the two lateral edges meets on
/// the half of the tile the main arrow points to.
pub fn side_arrows_converge_toward_tip(t: RobTile) -> bool {
    if t.is_cross() {
        return true;
    }
    let edges = t.edges();
    let Some(tip) = Dir::ALL
        .into_iter()
        .find(|d| edges[d.index()].black == Mark::Head)
    else {
        return false;
    };
    let (left, right) = match tip {
        Dir::N | Dir::S => (Dir::W, Dir::E),
        Dir::E | Dir::W => (Dir::S, Dir::N),
    };
    let toward_tip = match tip {
        Dir::N | Dir::E => 1,
        Dir::S | Dir::W => 0,
    };
    (0..2).all(|slot| {
        let converging = edges[left.index()].side_arrow(slot) == Some(Mark::Tail)
            && edges[right.index()].side_arrow(slot) == Some(Mark::Tail);
        !converging || slot == toward_tip
    })
}

/// A rectangular block of tiles; `origin` is the south-west cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub origin: (i64, i64),
    pub width: usize,
    pub height: usize,
    tiles: Vec<RobTile>,
}

impl Patch {
    pub fn from_fn(
        origin: (i64, i64),
        width: usize,
        height: usize,
        mut f: impl FnMut(i64, i64) -> RobTile,
    ) -> Patch {
        let mut tiles = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                tiles.push(f(origin.0 + col as i64, origin.1 + row as i64));
            }
        }
        Patch {
            origin,
            width,
            height,
            tiles,
        }
    }

    pub fn get(&self, y: i64, z: i64) -> Option<RobTile> {
        let col = usize::try_from(y - self.origin.0).ok()?;
        let row = usize::try_from(z - self.origin.1).ok()?;
        if col >= self.width || row >= self.height {
            return None;
        }
        Some(self.tiles[row * self.width + col])
    }

    /// Coordinates of every cross, sorted.
    pub fn crosses(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (i, t) in self.tiles.iter().enumerate() {
            if t.is_cross() {
                let y = self.origin.0 + (i % self.width) as i64;
                let z = self.origin.1 + (i / self.width) as i64;
                out.push((y, z));
            }
        }
        out.sort();
        out
    }

    /// Every internal edge whose two tiles do not match, as the south-west
    /// cell of the offending pair.
    pub fn mismatches(&self) -> Vec<((i64, i64), Adjacency)> {
        let mut out = Vec::new();
        for row in 0..self.height {
            for col in 0..self.width {
                let y = self.origin.0 + col as i64;
                let z = self.origin.1 + row as i64;
                let t = self.tiles[row * self.width + col];
                if col + 1 < self.width && !matches(t, self.tiles[row * self.width + col + 1], Adjacency::EOf)
                {
                    out.push(((y, z), Adjacency::EOf));
                }
                if row + 1 < self.height
                    && !matches(t, self.tiles[(row + 1) * self.width + col], Adjacency::NOf)
                {
                    out.push(((y, z), Adjacency::NOf));
                }
            }
        }
        out
    }
}

/// Desired side-arrow marks per edge, used to pick a tile by its decoration.
type SideMarks = [[Option<Mark>; 2]; 4];

fn find_tile(lower: bool, black: [Mark; 4], side: &SideMarks) -> RobTile {
    for base in if lower { 8..=14u8 } else { 1..=7u8 } {
        for rot in 0..4u8 {
            let t = RobTile { base, rot };
            let edges = t.edges();
            let fits = (0..4).all(|d| {
                edges[d].black == black[d] && (0..2).all(|s| edges[d].side_arrow(s) == side[d][s])
            });
            if fits {
                return t;
            }
        }
    }
    panic!("no Robinson tile carries the requested decoration");
}

fn arm_black(main: Dir) -> [Mark; 4] {
    let mut black = [Mark::Tail; 4];
    black[main.index()] = Mark::Head;
    black
}

/// Put a side arrow running through a cell in direction `d` at `slot`.
fn pass_through(side: &mut SideMarks, d: Dir, slot: usize) {
    side[d.opposite().index()][slot] = Some(Mark::Tail);
    side[d.index()][slot] = Some(Mark::Head);
}

/// Put two side arrows converging on a cell from both sides perpendicular to
/// `axis_dir`, at `slot`.
fn converge(side: &mut SideMarks, across: [Dir; 2], slot: usize) {
    for d in across {
        side[d.index()][slot] = Some(Mark::Tail);
    }
}

fn cross_tile(lower: bool, rot: u8) -> RobTile {
    RobTile {
        base: if lower { 8 } else { 1 },
        rot,
    }
}

/// The level-`i` supertile centered at `(0,0)` whose central cross has
/// rotation `orientation`, built from four level-`(i-1)` quadrants.
pub fn supertile(i: u32, orientation: u8) -> Result<Patch, RobinsonError> {
    if i == 0 || i > 20 {
        return Err(RobinsonError::BadLevel);
    }
    if orientation > 3 {
        return Err(RobinsonError::BadRotation(orientation));
    }
    let cells = supertile_cells(i, orientation);
    let r = (1i64 << i) - 1;
    let n = (2 * r + 1) as usize;
    let patch = Patch {
        origin: (-r, -r),
        width: n,
        height: n,
        tiles: cells,
    };
    let bad = patch.mismatches();
    if let Some(&((y, z), _)) = bad.first() {
        return Err(RobinsonError::Assembly {
            count: bad.len(),
            y,
            z,
        });
    }
    Ok(patch)
}

/// Quadrant placement: sign of the quadrant center and the rotation that
/// turns its central cross toward the parent center.
const QUADRANTS: [((i64, i64), u8); 4] = [((-1, -1), 0), ((1, -1), 1), ((1, 1), 2), ((-1, 1), 3)];

fn supertile_cells(i: u32, orientation: u8) -> Vec<RobTile> {
    if i == 0 {
        return alloc::vec![cross_tile(true, orientation)];
    }
    let r = (1i64 << i) - 1;
    let n = (2 * r + 1) as usize;
    let idx = |u: i64, v: i64| ((v + r) as usize) * n + (u + r) as usize;
    let mut cells = alloc::vec![cross_tile(false, orientation); n * n];

    let half = 1i64 << (i - 1);
    let sub_r = half - 1;
    let sub_n = (2 * sub_r + 1) as usize;
    for ((su, sv), rot) in QUADRANTS {
        let sub = supertile_cells(i - 1, rot);
        for (k, t) in sub.into_iter().enumerate() {
            let u = (k % sub_n) as i64 - sub_r + su * half;
            let v = (k / sub_n) as i64 - sub_r + sv * half;
            cells[idx(u, v)] = t;
        }
    }

    let center = cross_tile(false, orientation);
    let emissions = center.cross_emissions();
    for d in Dir::ALL {
        let (du, dv) = d.step();
        let across = match d {
            Dir::N | Dir::S => [Dir::W, Dir::E],
            Dir::E | Dir::W => [Dir::S, Dir::N],
        };
        let toward_tip = match d {
            Dir::N | Dir::E => 1,
            Dir::S | Dir::W => 0,
        };
        for t in 1..=r {
            let mut side: SideMarks = [[None; 2]; 4];
            if t == half {
                converge(&mut side, across, toward_tip);
            }
            if let Some(&(_, slot)) = emissions.iter().find(|(e, _)| *e == d) {
                pass_through(&mut side, d, slot);
            }
            cells[idx(du * t, dv * t)] = find_tile(t % 2 == 1, arm_black(d), &side);
        }
    }
    cells
}

fn nu2_128(n: i128) -> Option<u32> {
    if n == 0 {
        None
    } else {
        Some(n.trailing_zeros())
    }
}

/// `a < b` where `None` stands for infinity.
fn val_lt(a: Option<u32>, b: Option<u32>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a < b,
        (Some(_), None) => true,
        (None, _) => false,
    }
}

/// Membership in C = {(0,0)} ∪ ⋃_i (2^{i-1}+2^iℤ)².
pub fn in_c(y: i64, z: i64) -> bool {
    nu2(y) == nu2(z)
}

/// Membership in B = {(0,0)} ∪ ⋃_i (2^{i-1}+2^iℤ)×2^iℤ.
pub fn in_b(y: i64, z: i64) -> bool {
    match (nu2(y), nu2(z)) {
        (None, None) => true,
        (None, Some(_)) => false,
        (Some(_), None) => true,
        (Some(vy), Some(vz)) => vz > vy,
    }
}

/// For `v` strictly between two consecutive multiples of `2^a`, the one with
/// odd (`want_odd`) or even quotient.
fn adjacent_multiple(v: i128, a: u32, want_odd: bool) -> i128 {
    let h = 1i128 << a;
    let m = v.div_euclid(h);
    if (m.rem_euclid(2) == 1) == want_odd {
        m * h
    } else {
        (m + 1) * h
    }
}

/// Rotation of the cross at `(y,z) ∈ C`: it is the corner of the next-level
/// square, and turns toward that square's center.
fn rho_cross_rotation(y: i128, z: i128) -> u8 {
    let Some(a) = nu2_128(y) else {
        return 0;
    };
    let h = 1i128 << a;
    let east = nu2_128(y + h) == Some(a + 1);
    let north = nu2_128(z + h) == Some(a + 1);
    match (east, north) {
        (true, true) => 0,
        (false, true) => 1,
        (false, false) => 2,
        (true, false) => 3,
    }
}

fn rho_main_dir(y: i128, z: i128) -> Dir {
    let (vy, vz) = (nu2_128(y), nu2_128(z));
    if val_lt(vy, vz) {
        match vz {
            None => {
                if y > 0 {
                    Dir::E
                } else {
                    Dir::W
                }
            }
            Some(a) => {
                if y > adjacent_multiple(y, a, true) {
                    Dir::E
                } else {
                    Dir::W
                }
            }
        }
    } else {
        match vy {
            None => {
                if z > 0 {
                    Dir::N
                } else {
                    Dir::S
                }
            }
            Some(b) => {
                if z > adjacent_multiple(z, b, true) {
                    Dir::N
                } else {
                    Dir::S
                }
            }
        }
    }
}

/// Side arrows on an arm cell of `rho`: sides of the squares of every level,
/// plus the two half-lines leaving the cross at the origin.
fn rho_side_marks(y: i128, z: i128) -> SideMarks {
    let mut side: SideMarks = [[None; 2]; 4];
    let (vy, vz) = (nu2_128(y), nu2_128(z));

    // Horizontal sides lie on rows with ν₂(z) = a, belonging to squares of
    // level a+1.
    if let Some(a) = vz {
        let h = 1i128 << a;
        let slot = if nu2_128(z + h) == Some(a + 1) { 0 } else { 1 };
        if val_lt(vy, Some(a)) {
            let c = adjacent_multiple(y, a, false);
            if nu2_128(c) == Some(a + 1) {
                pass_through(&mut side, if y < c { Dir::E } else { Dir::W }, slot);
            }
        } else if vy == Some(a + 1) {
            converge(&mut side, [Dir::W, Dir::E], slot);
        }
    }
    if let Some(b) = vy {
        let h = 1i128 << b;
        let slot = if nu2_128(y + h) == Some(b + 1) { 0 } else { 1 };
        if val_lt(vz, Some(b)) {
            let c = adjacent_multiple(z, b, false);
            if nu2_128(c) == Some(b + 1) {
                pass_through(&mut side, if z < c { Dir::N } else { Dir::S }, slot);
            }
        } else if vz == Some(b + 1) {
            converge(&mut side, [Dir::S, Dir::N], slot);
        }
    }

    // Fault lines: the origin cross has rotation 0 and emits along the
    // positive half-axes.
    if z == 0 && y > 0 {
        pass_through(&mut side, Dir::E, 0);
    }
    if y == 0 && z > 0 {
        pass_through(&mut side, Dir::N, 0);
    }
    side
}

/// The tile of the fully aligned tiling whose level-`i` supertiles are
/// centered on `(2^i + 2^{i+1}ℤ)²`.
pub fn rho(y: i64, z: i64) -> RobTile {
    let (y, z) = (i128::from(y), i128::from(z));
    let lower = y.rem_euclid(2) == 1 || z.rem_euclid(2) == 1;
    if nu2_128(y) == nu2_128(z) {
        return cross_tile(lower, rho_cross_rotation(y, z));
    }
    let main = rho_main_dir(y, z);
    find_tile(lower, arm_black(main), &rho_side_marks(y, z))
}

/// `rho` on the square `[cy-r, cy+r] × [cz-r, cz+r]`.
pub fn rho_patch(cy: i64, cz: i64, r: i64) -> Patch {
    let n = (2 * r + 1) as usize;
    Patch::from_fn((cy - r, cz - r), n, n, rho)
}

/// Cross positions of a level-`i` supertile centered at the origin:
/// ⋃_{j≤i} {2^j(2k+1) − 2^i : 0 ≤ k < 2^{i−j}}².
pub fn cross_set_ci(i: u32) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let p = 1i64 << i;
    for j in 0..=i {
        let count = 1i64 << (i - j);
        let coords: Vec<i64> = (0..count).map(|k| (1i64 << j) * (2 * k + 1) - p).collect();
        for &y in &coords {
            for &z in &coords {
                out.push((y, z));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tileset_invariants() {
        let tiles = build_tileset();
        assert_eq!(tiles.len(), 56);
        assert!(tileset_is_sound(&tiles));
        assert_eq!(tiles.iter().filter(|t| t.is_cross()).count(), 8);
    }

    #[test]
    fn crosses_never_sit_side_by_side() {
        let tiles = build_tileset();
        for &a in tiles.iter().filter(|t| t.is_cross()) {
            for &b in tiles.iter().filter(|t| t.is_cross()) {
                assert!(!matches(a, b, Adjacency::EOf));
                assert!(!matches(a, b, Adjacency::NOf));
            }
        }
    }

    #[test]
    fn plain_arm_rejects_itself_to_the_east() {
        let t = RobTile::new(14, 0).unwrap();
        assert!(!matches(t, t, Adjacency::EOf));
    }

    #[test]
    fn base_cross_emits_north_and_east() {
        let c = RobTile::new(1, 0).unwrap();
        assert_eq!(c.cross_emissions(), alloc::vec![(Dir::N, 0), (Dir::E, 0)]);
        let c = RobTile::new(8, 1).unwrap();
        assert_eq!(c.cross_emissions(), alloc::vec![(Dir::N, 1), (Dir::W, 0)]);
    }

    #[test]
    fn rejects_bad_ids() {
        assert_eq!(RobTile::new(0, 0), Err(RobinsonError::BadBase(0)));
        assert_eq!(RobTile::new(15, 0), Err(RobinsonError::BadBase(15)));
        assert_eq!(RobTile::new(3, 4), Err(RobinsonError::BadRotation(4)));
        assert_eq!(supertile(0, 0), Err(RobinsonError::BadLevel));
    }

    #[test]
    fn level_one_supertile() {
        let p = supertile(1, 0).unwrap();
        assert_eq!((p.width, p.height), (3, 3));
        assert_eq!(
            p.crosses(),
            alloc::vec![(-1, -1), (-1, 1), (0, 0), (1, -1), (1, 1)]
        );
    }

    #[test]
    fn supertile_crosses_follow_the_closed_form() {
        let counts = [5, 21, 85, 341];
        for i in 1..=4u32 {
            let p = supertile(i, 0).unwrap();
            let n = (1usize << (i + 1)) - 1;
            assert_eq!((p.width, p.height), (n, n));
            assert_eq!(p.crosses(), cross_set_ci(i));
            assert_eq!(p.crosses().len(), counts[i as usize - 1]);
        }
    }

    #[test]
    fn every_orientation_assembles() {
        for o in 0..4 {
            let p = supertile(3, o).unwrap();
            assert_eq!(p.get(0, 0), Some(RobTile::new(1, o).unwrap()));
        }
    }

    #[test]
    fn rho_is_consistent_on_a_large_square() {
        let p = rho_patch(0, 0, 33);
        assert!(p.mismatches().is_empty());
        for (y, z) in p.crosses() {
            assert!(in_c(y, z));
        }
    }

    #[test]
    fn rho_contains_the_supertiles() {
        for i in 1..=4u32 {
            let c = 1i64 << i;
            let s = supertile(i, 0).unwrap();
            let r = c - 1;
            for dy in -r..=r {
                for dz in -r..=r {
                    assert_eq!(Some(rho(c + dy, c + dz)), s.get(dy, dz), "level {i} at ({dy},{dz})");
                }
            }
        }
    }

    #[test]
    fn rho_far_from_origin() {
        let p = rho_patch(1 << 40, -(3 << 38), 20);
        assert!(p.mismatches().is_empty());
        let p = rho_patch(i64::MAX - 20, i64::MIN + 20, 20);
        assert!(p.mismatches().is_empty());
    }

    #[test]
    fn east_matching_pairs() {
        let tiles = build_tileset();
        let mut east = 0;
        let mut north = 0;
        for &a in &tiles {
            for &b in &tiles {
                east += usize::from(matches(a, b, Adjacency::EOf));
                north += usize::from(matches(a, b, Adjacency::NOf));
            }
        }
        assert_eq!(east, 148);
        assert_eq!(north, 148);
    }

    #[test]
    fn membership_examples() {
        assert!(in_c(0, 0) && in_b(0, 0));
        assert!(in_c(1, 1) && !in_c(1, 0));
        assert!(!in_b(0, 5));
        assert!(in_b(4, 8));
        assert!(rho(0, 0).is_cross());
        assert!(rho(1, 1).is_cross());
        assert!(!rho(1, 0).is_cross());
    }
}
