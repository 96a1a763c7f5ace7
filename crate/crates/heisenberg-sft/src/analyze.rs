//! Structural analyzers, the period scan, and the two symbol-wise factor
//! maps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use thiserror::Error;

use crate::counter::{CounterSym, Seg, Variant};
use crate::group::Site;
use crate::sft::{Letter, RuleId, SftError, Symbol, Violation, Window};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("layer x={0} does not consist of counter symbols")]
    NotCounterLayer(i64),
    #[error("layer x={0} lies outside the box")]
    LayerOutsideBox(i64),
    #[error("expected a window of variant {expected}, got {got}")]
    WrongVariant {
        expected: &'static str,
        got: &'static str,
    },
    #[error(transparent)]
    Sft(#[from] SftError),
}

/// The group element `(a,(b,c))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodCandidate {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Right translate `h·p`.
fn translate(h: Site, p: PeriodCandidate) -> Option<Site> {
    Some(Site::new(
        h.x.checked_add(p.a)?,
        h.y.checked_add(p.b)?,
        h.z.checked_add(p.c)?.checked_add(h.x.checked_mul(p.b)?)?,
    ))
}

/// Every non-identity `p` with entries in `[-n, n]` that the window does not
/// refute: wherever `h` and `h·p` both lie in the box they carry the same
/// symbol.
pub fn scan_periods(w: &Window, n: i64) -> Vec<PeriodCandidate> {
    let mut out = Vec::new();
    for a in -n..=n {
        for b in -n..=n {
            for c in -n..=n {
                if (a, b, c) == (0, 0, 0) {
                    continue;
                }
                let p = PeriodCandidate { a, b, c };
                let refuted = w.iter().any(|(h, s)| {
                    translate(h, p)
                        .and_then(|g| w.get(g))
                        .is_some_and(|t| t != s)
                });
                if !refuted {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StripWidth {
    /// Bold cells repeat with period `2^i`.
    Finite(u32),
    /// At most one bold cell is visible.
    Infinite,
    /// Bold cells are visible but not evenly spaced by a power of two.
    Irregular,
}

fn counter_layer(w: &Window, x: i64) -> Result<(), AnalyzeError> {
    let b = w.bbox();
    if !(b.x0..=b.x1).contains(&x) {
        return Err(AnalyzeError::LayerOutsideBox(x));
    }
    let all_counters = (b.y0..=b.y1)
        .flat_map(|y| (b.z0..=b.z1).map(move |z| Site::new(x, y, z)))
        .all(|h| w.get(h).and_then(Symbol::as_count).is_some());
    if all_counters {
        Ok(())
    } else {
        Err(AnalyzeError::NotCounterLayer(x))
    }
}

fn is_counter_layer(w: &Window, x: i64) -> bool {
    counter_layer(w, x).is_ok()
}

fn row(w: &Window, x: i64, y: i64) -> Vec<(i64, CounterSym)> {
    let b = w.bbox();
    (b.z0..=b.z1)
        .filter_map(|z| Some((z, w.get(Site::new(x, y, z))?.as_count()?)))
        .collect()
}

fn row_width(cells: &[(i64, CounterSym)]) -> StripWidth {
    let bold: Vec<i64> = cells.iter().filter(|(_, c)| c.bold).map(|&(z, _)| z).collect();
    if bold.len() <= 1 {
        return StripWidth::Infinite;
    }
    let gap = bold[1] - bold[0];
    let regular = gap >= 2 && (gap as u64).is_power_of_two() && bold.windows(2).all(|p| p[1] - p[0] == gap);
    if regular {
        StripWidth::Finite(gap.trailing_zeros())
    } else {
        StripWidth::Irregular
    }
}

/// Strip width of every `y`-row of counter layer `x`.
pub fn strip_widths(w: &Window, x: i64) -> Result<BTreeMap<i64, StripWidth>, AnalyzeError> {
    counter_layer(w, x)?;
    let b = w.bbox();
    Ok((b.y0..=b.y1).map(|y| (y, row_width(&row(w, x, y)))).collect())
}

/// A counter whose whole strip, and its image one counter layer later, lie
/// in the box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VisibleCounter {
    pub msb: Site,
    pub width_exp: u32,
    pub value: u128,
    pub next_value: u128,
}

impl VisibleCounter {
    pub fn total_overflow(&self) -> bool {
        let ones = if self.width_exp >= 7 {
            u128::MAX
        } else {
            (1u128 << (1u32 << self.width_exp)) - 1
        };
        self.value == ones && self.next_value == 0
    }
}

/// Value of the width-`2^i` counter whose bold digit sits at `msb`.
pub fn counter_value(w: &Window, msb: Site, i: u32) -> Option<u128> {
    if i > 7 {
        return None;
    }
    let mut v = 0u128;
    for d in 0..(1i64 << i) {
        let c = w.get(Site::new(msb.x, msb.y, msb.z.checked_add(d)?))?.as_count()?;
        if c.bold != (d == 0) {
            return None;
        }
        v = (v << 1) | u128::from(c.digit);
    }
    Some(v)
}

/// Counters of layer `x` that are visible together with their successors.
pub fn visible_counters(w: &Window, x: i64) -> Vec<VisibleCounter> {
    let b = w.bbox();
    let mut out = Vec::new();
    if !is_counter_layer(w, x) {
        return out;
    }
    for y in b.y0..=b.y1 {
        let cells = row(w, x, y);
        let StripWidth::Finite(i) = row_width(&cells) else {
            continue;
        };
        for &(z, c) in &cells {
            if !c.bold {
                continue;
            }
            let msb = Site::new(x, y, z);
            let Some(value) = counter_value(w, msb, i) else {
                continue;
            };
            let Some(next) = x
                .checked_add(2)
                .and_then(|x2| Some(Site::new(x2, y, z.checked_add(y.checked_mul(2)?)?)))
            else {
                continue;
            };
            let Some(next_value) = counter_value(w, next, i) else {
                continue;
            };
            out.push(VisibleCounter {
                msb,
                width_exp: i,
                value,
                next_value,
            });
        }
    }
    out
}

fn counters_by_width(w: &Window, x: i64) -> BTreeMap<u32, Vec<VisibleCounter>> {
    let mut by_width: BTreeMap<u32, Vec<VisibleCounter>> = BTreeMap::new();
    for c in visible_counters(w, x) {
        by_width.entry(c.width_exp).or_default().push(c);
    }
    by_width
}

fn sorted(mut v: Vec<Violation>) -> Vec<Violation> {
    v.sort_by(|a, b| (a.rule, &a.sites).cmp(&(b.rule, &b.sites)));
    v
}

/// Per counter layer and width, either every visible counter overflows
/// totally or none does.
pub fn check_sync(w: &Window) -> Vec<Violation> {
    let b = w.bbox();
    let mut out = Vec::new();
    for x in b.x0..=b.x1 {
        for (i, counters) in counters_by_width(w, x) {
            let over = counters.iter().filter(|c| c.total_overflow()).count();
            if over != 0 && over != counters.len() {
                out.push(Violation {
                    rule: RuleId::Sync,
                    sites: counters.iter().map(|c| c.msb).collect(),
                    detail: format!(
                        "{over} of {} width-{} counters overflow on layer {x}",
                        counters.len(),
                        1u64 << i
                    ),
                });
            }
        }
    }
    sorted(out)
}

/// On every layer where some width overflows totally, all visible narrower
/// counters overflow too.
pub fn check_coordination(w: &Window) -> Vec<Violation> {
    let b = w.bbox();
    let mut out = Vec::new();
    for x in b.x0..=b.x1 {
        let by_width = counters_by_width(w, x);
        let Some(widest) = by_width
            .iter()
            .filter(|(_, cs)| cs.iter().any(|c| c.total_overflow()))
            .map(|(&i, _)| i)
            .max()
        else {
            continue;
        };
        for (&i, cs) in by_width.range(..widest) {
            for c in cs.iter().filter(|c| !c.total_overflow()) {
                out.push(Violation {
                    rule: RuleId::Coord,
                    sites: alloc::vec![c.msb],
                    detail: format!(
                        "width-{} counter quiet while width-{} counters overflow on layer {x}",
                        1u64 << i,
                        1u64 << widest
                    ),
                });
            }
        }
    }
    sorted(out)
}

const BOLD_BOTH: CounterSym = CounterSym::new(1, true, Seg::Both);
const BOLD_COORD: CounterSym = CounterSym::new(1, true, Seg::Coord);

/// No `y`-row holds both an overflowing bold digit with both segments and
/// one with the coordination tile.
pub fn check_row_uniformity(w: &Window) -> Vec<Violation> {
    let b = w.bbox();
    let mut out = Vec::new();
    for x in b.x0..=b.x1 {
        for z in b.z0..=b.z1 {
            let find = |target: CounterSym| {
                (b.y0..=b.y1)
                    .map(|y| Site::new(x, y, z))
                    .find(|&h| w.get(h).and_then(Symbol::as_count) == Some(target))
            };
            if let (Some(p), Some(q)) = (find(BOLD_BOTH), find(BOLD_COORD)) {
                out.push(Violation {
                    rule: RuleId::RowUniform,
                    sites: alloc::vec![p, q],
                    detail: "row mixes both-tiles and coordination tiles".into(),
                });
            }
        }
    }
    sorted(out)
}

/// Two overflowing bold digits on one anti-diagonal of a layer sit in rows
/// of equal strip width, where both widths are determined.
pub fn check_equal_width(w: &Window) -> Vec<Violation> {
    let b = w.bbox();
    let mut out = Vec::new();
    for x in (b.x0..=b.x1).filter(|&x| is_counter_layer(w, x)) {
        let widths: BTreeMap<i64, StripWidth> =
            (b.y0..=b.y1).map(|y| (y, row_width(&row(w, x, y)))).collect();
        let mut first_on_diag: BTreeMap<i128, (Site, u32)> = BTreeMap::new();
        for y in b.y0..=b.y1 {
            let StripWidth::Finite(i) = widths[&y] else {
                continue;
            };
            for z in b.z0..=b.z1 {
                let h = Site::new(x, y, z);
                if w.get(h).and_then(Symbol::as_count) != Some(BOLD_BOTH) {
                    continue;
                }
                let diag = i128::from(y) + i128::from(z);
                match first_on_diag.get(&diag) {
                    None => {
                        first_on_diag.insert(diag, (h, i));
                    }
                    Some(&(g, j)) if j != i => out.push(Violation {
                        rule: RuleId::EqualWidth,
                        sites: alloc::vec![g, h],
                        detail: format!("strip widths {} and {} differ", 1u64 << j, 1u64 << i),
                    }),
                    Some(_) => {}
                }
            }
        }
    }
    sorted(out)
}

fn is_cross(w: &Window, h: Site) -> Option<bool> {
    match w.get(h)? {
        Symbol::Rob(t) => Some(t.is_cross()),
        Symbol::Letter(Letter::C) => Some(true),
        Symbol::Letter(Letter::A) => Some(false),
        _ => None,
    }
}

/// Whether the cross at `h` is the center of a level-`i` supertile: crosses
/// at every diagonal distance `2^j`, `j < i`, and not at all four diagonal
/// points at distance `2^i`. `None` if the box does not show enough.
fn exact_center(w: &Window, h: Site, i: u32) -> Option<bool> {
    if !is_cross(w, h)? {
        return Some(false);
    }
    let diagonal = |d: i64| {
        [(1, 1), (1, -1), (-1, 1), (-1, -1)].map(|(sy, sz): (i64, i64)| {
            is_cross(w, Site::new(h.x, h.y.checked_add(sy * d)?, h.z.checked_add(sz * d)?))
        })
    };
    for j in 0..i {
        for c in diagonal(1i64 << j) {
            if !c? {
                return Some(false);
            }
        }
    }
    let mut all = true;
    for c in diagonal(1i64 << i) {
        all &= c?;
    }
    Some(!all)
}

/// Level-`i` supertile centers on Robinson layers lie on one lattice
/// `⋃_k ⟨y^{2^{i+1}}, z^{2^{i+1}}⟩ (x0+2k, y0, z0+2k·y0)`.
pub fn check_alignment(w: &Window) -> Vec<Violation> {
    let b = w.bbox();
    let span = (b.y1 - b.y0).min(b.z1 - b.z0);
    let mut out = Vec::new();
    let mut i = 1u32;
    while i < 40 && (1i64 << (i + 1)) <= span {
        let mut first: Option<Site> = None;
        for h in b.sites() {
            if exact_center(w, h, i) != Some(true) {
                continue;
            }
            let Some(f) = first else {
                first = Some(h);
                continue;
            };
            let m = 1i128 << (i + 1);
            let dx = i128::from(h.x) - i128::from(f.x);
            let k = dx.div_euclid(2);
            let aligned = dx.rem_euclid(2) == 0
                && (i128::from(h.y) - i128::from(f.y)).rem_euclid(m) == 0
                && (i128::from(h.z) - i128::from(f.z) - 2 * k * i128::from(f.y)).rem_euclid(m) == 0;
            if !aligned {
                out.push(Violation {
                    rule: RuleId::Align,
                    sites: alloc::vec![f, h],
                    detail: format!("level-{i} supertile centers are not aligned"),
                });
            }
        }
        i += 1;
    }
    sorted(out)
}

/// The block code sending the coordination tile back to the both-tile.
pub fn factor_phi(w: &Window) -> Result<Window, AnalyzeError> {
    if w.variant() != Variant::OmegaTilde {
        return Err(AnalyzeError::WrongVariant {
            expected: Variant::OmegaTilde.name(),
            got: w.variant().name(),
        });
    }
    let symbols = w
        .symbols()
        .iter()
        .map(|&s| match s {
            Symbol::Count(c) if c == BOLD_COORD => Symbol::Count(BOLD_BOTH),
            s => s,
        })
        .collect();
    let mut out = Window::new(Variant::Omega, w.bbox(), symbols)?;
    out.parity = w.parity;
    out.provenance = w.provenance.clone();
    Ok(out)
}

/// Crosses to `C`, arms to `A`, counter symbols to their digit.
pub fn factor_sofic(w: &Window) -> Window {
    let symbols = w
        .symbols()
        .iter()
        .map(|&s| {
            Symbol::Letter(match s {
                Symbol::Rob(t) if t.is_cross() => Letter::C,
                Symbol::Rob(_) => Letter::A,
                Symbol::Count(c) => Letter::Digit(c.bit()),
                Symbol::Letter(l) => l,
            })
        })
        .collect();
    let mut out = Window::new(Variant::Sofic, w.bbox(), symbols).expect("letters fit the sofic variant");
    out.parity = w.parity;
    out.provenance = w.provenance.clone();
    out
}
