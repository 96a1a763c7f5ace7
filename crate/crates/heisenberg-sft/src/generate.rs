//! Closed-form valid windows.
//!
//! Robinson layers carry `rho`. Counter layer `k` holds the value
//! `p = k - K - 1` in every finite counter, where `K` is the layer on which
//! all counters overflow together (`K = -1` by default). The `y = 0` row is
//! split by its single bold cell: the left half holds `p` in two's
//! complement, the right half is all ones up to layer `K` and all zeros
//! afterwards, or constant zero when no overflow layer is requested.

use alloc::format;
use alloc::vec::Vec;

use thiserror::Error;

use crate::counter::{below_level, overflow_level, CounterSym, Seg, Variant};
use crate::group::Site;
use crate::robinson::{in_b, rho};
use crate::sft::{Parity, SftError, SiteBox, Symbol, Window};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("an exceptional overflow layer is already set ({0})")]
    SecondOverflowLayer(i64),
    #[error("generator expects variant {expected}, got {got}")]
    WrongVariant {
        expected: &'static str,
        got: &'static str,
    },
    #[error("overflow coordination forces the coordination tile on a quiet digit at {0}")]
    Fixpoint(Site),
    #[error(transparent)]
    Sft(#[from] SftError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub bbox: SiteBox,
    pub variant: Variant,
    pub parity: Parity,
    exceptional: Option<i64>,
}

impl GenParams {
    pub fn new(bbox: SiteBox, variant: Variant) -> GenParams {
        GenParams {
            bbox,
            variant,
            parity: Parity::Even,
            exceptional: None,
        }
    }

    pub fn with_parity(mut self, parity: Parity) -> GenParams {
        self.parity = parity;
        self
    }

    /// Requests the single overflow of the right-half counter between counter
    /// layers `k` and `k+1`.
    pub fn with_exceptional_overflow(mut self, k: i64) -> Result<GenParams, GenError> {
        if let Some(old) = self.exceptional {
            return Err(GenError::SecondOverflowLayer(old));
        }
        self.exceptional = Some(k);
        Ok(self)
    }

    pub fn exceptional_overflow_layer(&self) -> Option<i64> {
        self.exceptional
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RightHalf {
    OverflowAt(i128),
    Constant,
}

/// Closed-form counter symbols of the Ω configuration.
#[derive(Clone, Copy, Debug)]
struct Layers {
    parity: Parity,
    right: RightHalf,
}

/// Bit `s` of the two's-complement expansion of `p`.
fn bit(p: i128, s: u128) -> u8 {
    if s >= 127 {
        u8::from(p < 0)
    } else {
        ((p >> s) & 1) as u8
    }
}

impl Layers {
    /// Counter layer index of `x`, if `x` holds counters.
    fn layer(&self, x: i64) -> Option<i128> {
        if self.parity.is_robinson_layer(x) {
            return None;
        }
        let shift = match self.parity {
            Parity::Even => 1,
            Parity::Odd => 2,
        };
        Some((i128::from(x) - shift).div_euclid(2))
    }

    fn phase(&self, k: i128) -> i128 {
        match self.right {
            RightHalf::OverflowAt(big_k) => k - big_k - 1,
            RightHalf::Constant => k,
        }
    }

    fn right_digit(&self, k: i128) -> u8 {
        match self.right {
            RightHalf::OverflowAt(big_k) => u8::from(k <= big_k),
            RightHalf::Constant => 0,
        }
    }

    fn right_overflows(&self, k: i128) -> bool {
        self.right == RightHalf::OverflowAt(k)
    }

    fn digit(&self, k: i128, y: i64, z: i64) -> u8 {
        let p = self.phase(k);
        if y == 0 {
            return if z < 0 {
                bit(p, (-1 - i128::from(z)) as u128)
            } else {
                self.right_digit(k)
            };
        }
        let w = 1u128 << (y.trailing_zeros() + 1);
        let d = i128::from(z).rem_euclid(w as i128) as u128;
        bit(p, w - 1 - d)
    }

    fn overflows(&self, k: i128, y: i64, z: i64) -> bool {
        self.digit(k, y, z) == 1 && self.digit(k + 1, y, z) == 0
    }

    /// Ω symbol at `(y,z)` of counter layer `k`.
    fn omega(&self, k: i128, y: i64, z: i64) -> CounterSym {
        let digit = self.digit(k, y, z);
        if in_b(y, z) {
            let seg = if self.overflows(k, y, z) { Seg::Both } else { Seg::Blank };
            return CounterSym::new(digit, true, seg);
        }
        let level = level_of(self.phase(k));
        let fwd = match y {
            0 => self.right_overflows(k),
            _ => below_level(y.trailing_zeros(), level),
        };
        let diag = match i128::from(y) + i128::from(z) {
            0 => self.right_overflows(k),
            s => below_level(s.trailing_zeros(), level),
        };
        let seg = match (diag, fwd) {
            (false, false) => Seg::Blank,
            (true, false) => Seg::Diag,
            (false, true) => Seg::Fwd,
            (true, true) => Seg::Both,
        };
        CounterSym::new(digit, false, seg)
    }

    fn symbol(&self, h: Site) -> Symbol {
        match self.layer(h.x) {
            None => Symbol::Rob(rho(h.y, h.z)),
            Some(k) => Symbol::Count(self.omega(k, h.y, h.z)),
        }
    }
}

/// As [`overflow_level`] for phases beyond `i64`.
fn level_of(p: i128) -> Option<u32> {
    match i64::try_from(p) {
        Ok(p) => overflow_level(p),
        Err(_) => {
            let v = (p + 1).trailing_zeros();
            Some(if v < 2 { 0 } else { v.ilog2() })
        }
    }
}

fn provenance(p: &GenParams, right: RightHalf) -> alloc::string::String {
    let right = match right {
        RightHalf::OverflowAt(k) => format!("overflow@{k}"),
        RightHalf::Constant => "constant".into(),
    };
    format!(
        "gen variant={} parity={} right-half={}",
        p.variant.name(),
        p.parity.name(),
        right
    )
}

fn build(p: &GenParams, right: RightHalf) -> Result<Window, GenError> {
    let layers = Layers {
        parity: p.parity,
        right,
    };
    let mut w = match p.variant {
        Variant::Omega => Window::from_fn(Variant::Omega, p.bbox, |h| layers.symbol(h))?,
        Variant::OmegaTilde => coordinate(&layers, p.bbox)?,
        Variant::Sofic => {
            return Err(GenError::WrongVariant {
                expected: "omega or tilde",
                got: "sofic",
            })
        }
    };
    w.parity = p.parity;
    w.provenance = provenance(p, right);
    Ok(w)
}

fn expect(p: &GenParams, v: Variant) -> Result<(), GenError> {
    if p.variant != v {
        return Err(GenError::WrongVariant {
            expected: v.name(),
            got: p.variant.name(),
        });
    }
    Ok(())
}

/// The explicit configuration in which every counter overflows on counter
/// layer `K` (default `-1`).
pub fn gen_omega(p: &GenParams) -> Result<Window, GenError> {
    expect(p, Variant::Omega)?;
    build(p, RightHalf::OverflowAt(i128::from(p.exceptional.unwrap_or(-1))))
}

/// As [`gen_omega`], with the coordination tiles placed by propagating the
/// coordination rules to a fixpoint.
pub fn gen_omega_tilde(p: &GenParams) -> Result<Window, GenError> {
    expect(p, Variant::OmegaTilde)?;
    build(p, RightHalf::OverflowAt(i128::from(p.exceptional.unwrap_or(-1))))
}

/// The exceptional-coset family: without an overflow layer the right-half
/// counter is constant zero.
pub fn gen_exceptional(p: &GenParams) -> Result<Window, GenError> {
    let right = match p.exceptional {
        Some(k) => RightHalf::OverflowAt(i128::from(k)),
        None => RightHalf::Constant,
    };
    build(p, right)
}

/// Ω̃ window: Ω symbols, then per counter layer and `z`-row a worklist
/// closure of the coordination rules over the row extended beyond the box.
fn coordinate(layers: &Layers, bbox: SiteBox) -> Result<Window, GenError> {
    let mut w = Window::from_fn(Variant::OmegaTilde, bbox, |h| layers.symbol(h))?;
    for x in bbox.x0..=bbox.x1 {
        let Some(k) = layers.layer(x) else {
            continue;
        };
        for z in bbox.z0..=bbox.z1 {
            for y in coordinated_row(layers, k, z, bbox.y0, bbox.y1)
                .map_err(|y| GenError::Fixpoint(Site::new(x, y, z)))?
            {
                let h = Site::new(x, y, z);
                w.set(h, Symbol::Count(CounterSym::new(1, true, Seg::Coord)))?;
            }
        }
    }
    Ok(w)
}

/// Cells of row `z` in `[y0, y1]` that carry the coordination tile; `Err`
/// names a cell the rules force although it does not overflow.
fn coordinated_row(layers: &Layers, k: i128, z: i64, y0: i64, y1: i64) -> Result<Vec<i64>, i64> {
    if z == 0 {
        return Ok(Vec::new());
    }
    let reach = 1i64 << (z.trailing_zeros() + 1).min(40);
    let lo = y0.saturating_sub(reach);
    let hi = y1.saturating_add(reach);
    let n = (hi - lo + 1) as usize;
    let bold: Vec<bool> = (lo..=hi).map(|y| in_b(y, z)).collect();
    let over: Vec<bool> = (lo..=hi).map(|y| layers.overflows(k, y, z)).collect();
    let mut coord = alloc::vec![false; n];
    let mut work: Vec<usize> = Vec::new();
    for i in 0..n {
        if !bold[i] && over[i] {
            work.extend([i.wrapping_sub(1), i + 1].into_iter().filter(|&j| j < n && bold[j]));
        }
    }
    while let Some(i) = work.pop() {
        if coord[i] {
            continue;
        }
        if !over[i] {
            return Err(lo + i as i64);
        }
        coord[i] = true;
        for (j, beyond) in [(i.wrapping_sub(1), i.wrapping_sub(2)), (i + 1, i + 2)] {
            if j >= n {
                continue;
            }
            if bold[j] {
                work.push(j);
            } else if !over[j] && beyond < n && bold[beyond] {
                work.push(beyond);
            }
        }
    }
    Ok((lo..=hi)
        .zip(coord)
        .filter(|&(y, c)| c && (y0..=y1).contains(&y))
        .map(|(y, _)| y)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::check_window;

    fn params(a: i64, b: i64, v: Variant) -> GenParams {
        GenParams::new(SiteBox::symmetric(a, b).unwrap(), v)
    }

    #[test]
    fn small_windows_are_valid() {
        for v in [Variant::Omega, Variant::OmegaTilde] {
            for parity in [Parity::Even, Parity::Odd] {
                let p = params(4, 12, v).with_parity(parity);
                let w = gen_exceptional(&p.with_exceptional_overflow(-1).unwrap()).unwrap();
                let bad = check_window(&w);
                assert!(bad.is_empty(), "{v:?} {parity:?}: {:?}", &bad[..bad.len().min(3)]);
            }
        }
    }

    #[test]
    fn layer_minus_one_overflows_everywhere() {
        let w = gen_omega(&params(2, 6, Variant::Omega)).unwrap();
        for (h, s) in w.iter().filter(|(h, _)| h.x == -1) {
            let c = s.as_count().unwrap();
            assert_eq!((c.digit, c.seg), (1, Seg::Both), "{h}");
            assert_eq!(c.bold, in_b(h.y, h.z));
        }
        for (_, s) in w.iter().filter(|(h, _)| h.x == 1) {
            let c = s.as_count().unwrap();
            assert_eq!((c.digit, c.seg), (0, Seg::Blank));
        }
    }

    #[test]
    fn worked_example_site() {
        let p = GenParams::new(SiteBox::new((7, 9), (1, 1), (0, 2)).unwrap(), Variant::Omega);
        let w = gen_omega(&p).unwrap();
        let c = w.get(Site::new(7, 1, 0)).unwrap().as_count().unwrap();
        assert_eq!(c, CounterSym::new(1, true, Seg::Both));
        let next = w.get(Site::new(9, 1, 2)).unwrap().as_count().unwrap();
        assert_eq!((next.digit, next.bold), (0, true));
    }

    #[test]
    fn coordination_matches_closed_form() {
        let p = params(9, 20, Variant::OmegaTilde);
        let w = gen_omega_tilde(&p).unwrap();
        for (h, s) in w.iter() {
            let Some(c) = s.as_count() else { continue };
            let k = i64::try_from((i128::from(h.x) - 1).div_euclid(2)).unwrap();
            let expect = c.bold
                && h.z != 0
                && crate::counter::below_level(h.z.trailing_zeros(), overflow_level(k).map(|l| l + 1));
            assert_eq!(c.seg == Seg::Coord, expect, "{h}");
        }
    }

    #[test]
    fn second_overflow_layer_is_rejected() {
        let p = params(1, 1, Variant::Omega).with_exceptional_overflow(3).unwrap();
        assert_eq!(p.with_exceptional_overflow(4), Err(GenError::SecondOverflowLayer(3)));
    }

    #[test]
    fn wrong_variant_is_rejected() {
        assert!(gen_omega(&params(1, 1, Variant::OmegaTilde)).is_err());
        assert!(gen_omega_tilde(&params(1, 1, Variant::Omega)).is_err());
    }
}
