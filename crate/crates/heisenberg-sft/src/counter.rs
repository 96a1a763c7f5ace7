//! Counter symbols, the carry table, and the overflow arithmetic of the
//! synchronized counters.
//!
//! Inside a counter strip the bold digit is the most significant bit and
//! significance decreases in the `+z` direction, so a carry travels toward
//! `-z`.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Segment tile carried by a counter symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Seg {
    Blank,
    Diag,
    Fwd,
    Both,
    /// The overflow-coordination tile. It keeps both line segments of
    /// [`Seg::Both`] and adds a horizontal one.
    Coord,
}

impl Seg {
    pub const ALL: [Seg; 5] = [Seg::Blank, Seg::Diag, Seg::Fwd, Seg::Both, Seg::Coord];

    pub fn has_diag(self) -> bool {
        matches!(self, Seg::Diag | Seg::Both | Seg::Coord)
    }

    pub fn has_fwd(self) -> bool {
        matches!(self, Seg::Fwd | Seg::Both | Seg::Coord)
    }

    pub fn code(self) -> char {
        match self {
            Seg::Blank => '_',
            Seg::Diag => 'd',
            Seg::Fwd => 'f',
            Seg::Both => 'b',
            Seg::Coord => 'c',
        }
    }

    pub fn from_code(c: char) -> Option<Seg> {
        Seg::ALL.into_iter().find(|s| s.code() == c)
    }

    fn from_parts(diag: bool, fwd: bool) -> Seg {
        match (diag, fwd) {
            (false, false) => Seg::Blank,
            (true, false) => Seg::Diag,
            (false, true) => Seg::Fwd,
            (true, true) => Seg::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    /// The synchronized-counter shift.
    Omega,
    /// The shift with overflow coordination.
    OmegaTilde,
    /// Image of the sofic factor map; carries letters instead of tiles.
    Sofic,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Omega => "omega",
            Variant::OmegaTilde => "tilde",
            Variant::Sofic => "sofic",
        }
    }

    pub fn from_name(s: &str) -> Option<Variant> {
        [Variant::Omega, Variant::OmegaTilde, Variant::Sofic]
            .into_iter()
            .find(|v| v.name() == s)
    }
}

/// A binary digit together with its boldness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bit {
    pub digit: u8,
    pub bold: bool,
}

impl Bit {
    pub const fn new(digit: u8, bold: bool) -> Bit {
        Bit { digit, bold }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bold {
            write!(f, "B{}", self.digit)
        } else {
            write!(f, "{}", self.digit)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CounterSym {
    pub digit: u8,
    pub bold: bool,
    pub seg: Seg,
}

impl CounterSym {
    pub const fn new(digit: u8, bold: bool, seg: Seg) -> CounterSym {
        CounterSym { digit, bold, seg }
    }

    pub fn bit(self) -> Bit {
        Bit::new(self.digit, self.bold)
    }
}

pub fn symbol_allowed(s: CounterSym, variant: Variant) -> bool {
    if s.digit > 1 {
        return false;
    }
    match (s.bold, s.seg) {
        (_, Seg::Coord) => variant == Variant::OmegaTilde && s.bold && s.digit == 1,
        (true, Seg::Blank) => true,
        (true, Seg::Both) => s.digit == 1,
        (true, _) => false,
        (false, seg) => s.digit == 1 || matches!(seg, Seg::Blank | Seg::Diag),
    }
}

/// Every allowed counter symbol of `variant`, in a fixed order.
pub fn alphabet(variant: Variant) -> Vec<CounterSym> {
    let mut out = Vec::new();
    for bold in [false, true] {
        for digit in 0..2 {
            for seg in Seg::ALL {
                let s = CounterSym::new(digit, bold, seg);
                if symbol_allowed(s, variant) {
                    out.push(s);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum CounterError {
    #[error("the upper-neighbor digit {0} is bold; the carry table does not apply")]
    BoldUpperNeighbor(Bit),
    #[error("boldness differs between {0} and its successor {1}")]
    BoldMismatch(Bit, Bit),
    #[error("digit out of range")]
    BadDigit,
    #[error("value does not fit in a counter of width 2^{0}")]
    ValueOutOfRange(u32),
    #[error("offset {offset} outside a counter of width 2^{width_exp}")]
    OffsetOutOfRange { width_exp: u32, offset: u64 },
}

const fn b(digit: u8) -> Bit {
    Bit::new(digit, false)
}

const fn bb(digit: u8) -> Bit {
    Bit::new(digit, true)
}

/// The 16 admissible quadruples `(b_x2h, b_x2zh, b_h, b_zh)`: the upper row
/// is the next counter value.
pub const ADDITION_PATTERNS: [[Bit; 4]; 16] = [
    [b(0), b(0), b(0), b(0)],
    [b(0), b(1), b(0), b(0)],
    [b(1), b(0), b(1), b(0)],
    [b(1), b(1), b(1), b(0)],
    [b(0), b(1), b(0), b(1)],
    [b(1), b(0), b(0), b(1)],
    [b(0), b(0), b(1), b(1)],
    [b(1), b(1), b(1), b(1)],
    [bb(0), b(0), bb(0), b(0)],
    [bb(0), b(1), bb(0), b(0)],
    [bb(1), b(0), bb(1), b(0)],
    [bb(1), b(1), bb(1), b(0)],
    [bb(0), b(1), bb(0), b(1)],
    [bb(1), b(0), bb(0), b(1)],
    [bb(0), b(0), bb(1), b(1)],
    [bb(1), b(1), bb(1), b(1)],
];

/// Whether the quadruple is an admissible counter step. `b_zh` is the digit
/// one step less significant than `b_h`; `b_x2h` and `b_x2zh` are their
/// values one counter layer later.
pub fn addition_allowed(b_h: Bit, b_zh: Bit, b_x2h: Bit, b_x2zh: Bit) -> Result<bool, CounterError> {
    if [b_h, b_zh, b_x2h, b_x2zh].iter().any(|x| x.digit > 1) {
        return Err(CounterError::BadDigit);
    }
    if b_zh.bold {
        return Err(CounterError::BoldUpperNeighbor(b_zh));
    }
    if b_h.bold != b_x2h.bold {
        return Err(CounterError::BoldMismatch(b_h, b_x2h));
    }
    Ok(ADDITION_PATTERNS.contains(&[b_x2h, b_x2zh, b_h, b_zh]))
}

/// Digit at offset `d` (measured in `+z` from the bold column) of a width
/// `2^i` counter holding `v`.
pub fn digit_of_value(i: u32, v: u128, d: u64) -> Result<u8, CounterError> {
    if i == 0 || i > 7 {
        return Err(CounterError::ValueOutOfRange(i));
    }
    let width = 1u64 << i;
    if width < 128 && v >> width != 0 {
        return Err(CounterError::ValueOutOfRange(i));
    }
    if d >= width {
        return Err(CounterError::OffsetOutOfRange {
            width_exp: i,
            offset: d,
        });
    }
    let s = width - 1 - d;
    Ok(((v >> s) & 1) as u8)
}

/// Bit `s` of the two's-complement expansion of `k`.
pub fn twos_complement_bit(k: i64, s: u64) -> u8 {
    if s >= 63 {
        u8::from(k < 0)
    } else {
        ((k >> s) & 1) as u8
    }
}

/// 2-adic valuation of `k + 1`; `None` when `k = -1`.
pub fn steps_valuation(k: i64) -> Option<u32> {
    let n = i128::from(k) + 1;
    if n == 0 {
        None
    } else {
        Some(n.trailing_zeros())
    }
}

/// Whether the digit of significance `s` drops from 1 to 0 when a counter of
/// width `2^i` steps from value `k` to `k+1`.
pub fn digit_overflows(i: u32, k: i64, s: u64) -> bool {
    debug_assert!(i >= 64 || s < (1u64 << i));
    match steps_valuation(k) {
        None => true,
        Some(v) => s < u64::from(v),
    }
}

/// Largest `i ≥ 1` such that every width-`2^i` counter overflows totally
/// between layer values `k` and `k+1`. `Some(0)` means none does; `None`
/// means every width does.
pub fn overflow_level(k: i64) -> Option<u32> {
    let v = steps_valuation(k)?;
    Some(if v < 2 { 0 } else { v.ilog2() })
}

/// `a < I` where `I = None` stands for infinity.
pub(crate) fn below_level(a: u32, level: Option<u32>) -> bool {
    level.is_none_or(|l| a < l)
}

/// Segment tile of a non-bold cell at `(y,z)` on the counter layer whose
/// counters hold the value `k`.
pub fn decoration_omega(k: i64, y: i64, z: i64) -> Seg {
    let level = overflow_level(k);
    let fwd = match y {
        0 => level.is_none(),
        _ => below_level(y.trailing_zeros(), level),
    };
    let diag = match i128::from(y) + i128::from(z) {
        0 => level.is_none(),
        s => below_level(s.trailing_zeros(), level),
    };
    Seg::from_parts(diag, fwd)
}

/// Every row of one width-`2^i` strip (digits listed from the bold MSB) that
/// the LSB rule and the carry table allow above `row`.
pub fn consistent_successors(row: &[u8]) -> Vec<Vec<u8>> {
    let w = row.len();
    assert!(w > 0 && w <= 16, "strip width out of range");
    let bit = |digits: &[u8], d: usize| Bit::new(digits[d], d == 0);
    let mut out = Vec::new();
    for code in 0u32..(1 << w) {
        let next: Vec<u8> = (0..w).map(|d| ((code >> (w - 1 - d)) & 1) as u8).collect();
        if next[w - 1] == row[w - 1] {
            continue;
        }
        let ok = (0..w - 1).all(|d| {
            addition_allowed(bit(row, d), bit(row, d + 1), bit(&next, d), bit(&next, d + 1))
                == Ok(true)
        });
        if ok {
            out.push(next);
        }
    }
    out
}

/// Digits of `v` in a strip of width `2^i`, MSB first.
pub fn value_row(i: u32, v: u128) -> Result<Vec<u8>, CounterError> {
    (0..1u64 << i).map(|d| digit_of_value(i, v, d)).collect()
}

/// Inverse of [`value_row`].
pub fn row_value(row: &[u8]) -> u128 {
    row.iter().fold(0, |acc, &d| (acc << 1) | u128::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_sizes() {
        assert_eq!(alphabet(Variant::Omega).len(), 9);
        assert_eq!(alphabet(Variant::OmegaTilde).len(), 10);
        assert!(!symbol_allowed(CounterSym::new(0, false, Seg::Fwd), Variant::Omega));
        let coord = CounterSym::new(1, true, Seg::Coord);
        assert!(!symbol_allowed(coord, Variant::Omega));
        assert!(symbol_allowed(coord, Variant::OmegaTilde));
    }

    #[test]
    fn figure_examples() {
        assert_eq!(addition_allowed(b(0), b(0), b(0), b(0)), Ok(true));
        assert_eq!(addition_allowed(b(0), b(1), b(0), b(0)), Ok(false));
        assert_eq!(addition_allowed(bb(1), b(1), bb(0), b(0)), Ok(true));
        assert_eq!(
            addition_allowed(b(0), bb(1), b(0), b(0)),
            Err(CounterError::BoldUpperNeighbor(bb(1)))
        );
        assert!(matches!(
            addition_allowed(bb(0), b(1), b(0), b(0)),
            Err(CounterError::BoldMismatch(..))
        ));
    }

    #[test]
    fn erasing_boldness_maps_bold_block_onto_plain_block() {
        let plain: Vec<_> = ADDITION_PATTERNS[..8].to_vec();
        for p in &ADDITION_PATTERNS[8..] {
            let erased = p.map(|x| b(x.digit));
            assert!(plain.contains(&erased));
        }
    }

    #[test]
    fn table_is_carry_correct() {
        for p in ADDITION_PATTERNS {
            let [up, up_z, low, low_z] = p.map(|x| x.digit);
            let carry = low_z == 1 && up_z == 0;
            assert_eq!(up, low ^ u8::from(carry));
        }
    }

    #[test]
    fn digits() {
        let row: Vec<u8> = (0..4).map(|d| digit_of_value(2, 9, d).unwrap()).collect();
        assert_eq!(row, [1, 0, 0, 1]);
        assert_eq!(value_row(1, 2).unwrap(), [1, 0]);
        assert_eq!(value_row(3, 0).unwrap(), [0; 8]);
        assert_eq!(digit_of_value(1, 4, 0), Err(CounterError::ValueOutOfRange(1)));
        assert!(digit_of_value(1, 1, 2).is_err());
        assert_eq!(twos_complement_bit(-1, 200), 1);
        assert_eq!(twos_complement_bit(5, 2), 1);
        assert_eq!(twos_complement_bit(5, 1), 0);
    }

    #[test]
    fn overflow_examples() {
        assert!(digit_overflows(1, 3, 0) && digit_overflows(1, 3, 1));
        assert!((0..4).all(|s| !digit_overflows(2, 6, s)));
        let k7: Vec<bool> = (0..4).map(|s| digit_overflows(2, 7, s)).collect();
        assert_eq!(k7, [true, true, true, false]);
    }

    #[test]
    fn overflow_matches_increment_simulation() {
        for i in 1..=3u32 {
            let w = 1u64 << i;
            let modulus = 1u128 << w;
            for k in -40i64..200 {
                let v = (k as i128).rem_euclid(modulus as i128) as u128;
                let next = (v + 1) % modulus;
                for s in 0..w {
                    let flips = (v >> s) & 1 == 1 && (next >> s) & 1 == 0;
                    assert_eq!(digit_overflows(i, k, s), flips, "i={i} k={k} s={s}");
                }
                let total = (0..w).all(|s| digit_overflows(i, k, s));
                assert_eq!(total, next == 0);
            }
        }
    }

    #[test]
    fn overflow_levels() {
        assert_eq!(overflow_level(-1), None);
        assert_eq!(overflow_level(0), Some(0));
        assert_eq!(overflow_level(3), Some(1));
        assert_eq!(overflow_level(15), Some(2));
        assert_eq!(overflow_level(255), Some(3));
        assert_eq!(overflow_level(7), Some(1));
    }

    #[test]
    fn decorations() {
        for (y, z) in [(0, 0), (3, -3), (5, 17), (0, 9)] {
            assert_eq!(decoration_omega(-1, y, z), Seg::Both);
            assert_eq!(decoration_omega(0, y, z), Seg::Blank);
        }
        assert_eq!(decoration_omega(3, 1, 4), Seg::Both);
        assert_eq!(decoration_omega(3, 2, 4), Seg::Blank);
        assert_eq!(decoration_omega(3, 2, 3), Seg::Diag);
    }

    #[test]
    fn successor_rows_count_up() {
        for i in 1..=3u32 {
            let w = 1u64 << i;
            for v in 0u128..(1 << w) {
                let succ = consistent_successors(&value_row(i, v).unwrap());
                assert_eq!(succ.len(), 1, "i={i} v={v}");
                assert_eq!(row_value(&succ[0]), (v + 1) % (1 << w));
            }
        }
    }
}
