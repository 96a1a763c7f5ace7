//! Windows, the local rules, and the checker.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::counter::{addition_allowed, symbol_allowed, Bit, CounterError, CounterSym, Seg, Variant};
use crate::group::{neighbor, Generator, Sign, Site};
use crate::robinson::{matches, Adjacency, RobTile};

/// Letters of the sofic image: `A` for arms, `C` for crosses, and the bare
/// digits of counter symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    C,
    Digit(Bit),
}

impl Letter {
    pub fn code(self) -> &'static str {
        match self {
            Letter::A => "A",
            Letter::C => "C",
            Letter::Digit(Bit { digit: 0, bold: false }) => "0",
            Letter::Digit(Bit { digit: _, bold: false }) => "1",
            Letter::Digit(Bit { digit: 0, bold: true }) => "B0",
            Letter::Digit(Bit { digit: _, bold: true }) => "B1",
        }
    }

    pub fn from_code(s: &str) -> Option<Letter> {
        Some(match s {
            "A" => Letter::A,
            "C" => Letter::C,
            "0" => Letter::Digit(Bit::new(0, false)),
            "1" => Letter::Digit(Bit::new(1, false)),
            "B0" => Letter::Digit(Bit::new(0, true)),
            "B1" => Letter::Digit(Bit::new(1, true)),
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Rob(RobTile),
    Count(CounterSym),
    Letter(Letter),
}

impl Symbol {
    pub fn as_rob(self) -> Option<RobTile> {
        match self {
            Symbol::Rob(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_count(self) -> Option<CounterSym> {
        match self {
            Symbol::Count(c) => Some(c),
            _ => None,
        }
    }

    /// Robinson-side symbols (tiles and the letters `A`, `C`) versus
    /// counter-side symbols.
    pub fn is_robinson_side(self) -> bool {
        matches!(self, Symbol::Rob(_) | Symbol::Letter(Letter::A | Letter::C))
    }
}

/// Which parity of `x` carries the Robinson layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    pub fn from_name(s: &str) -> Option<Parity> {
        match s {
            "even" => Some(Parity::Even),
            "odd" => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn is_robinson_layer(self, x: i64) -> bool {
        (x.rem_euclid(2) == 0) == (self == Parity::Even)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SftError {
    #[error("empty box")]
    EmptyBox,
    #[error("malformed box `{0}`, expected x0:x1,y0:y1,z0:z1")]
    BadBox(String),
    #[error("box too large")]
    BoxTooLarge,
    #[error("site {0} lies outside the box")]
    OutsideBox(Site),
    #[error("window is not total: box holds {expected} sites, got {got} symbols")]
    NotTotal { expected: usize, got: usize },
    #[error("symbol at {site} is not allowed in variant {variant}")]
    SymbolNotAllowed { site: Site, variant: &'static str },
    #[error("{0} is reported by an analyzer and has no local support")]
    NotALocalRule(RuleId),
    #[error("support of {0} at {1} leaves the coordinate range")]
    Overflow(RuleId, Site),
}

/// Inclusive coordinate box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SiteBox {
    pub x0: i64,
    pub x1: i64,
    pub y0: i64,
    pub y1: i64,
    pub z0: i64,
    pub z1: i64,
}

impl SiteBox {
    pub fn new(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> Result<SiteBox, SftError> {
        if x.0 > x.1 || y.0 > y.1 || z.0 > z.1 {
            return Err(SftError::EmptyBox);
        }
        let b = SiteBox {
            x0: x.0,
            x1: x.1,
            y0: y.0,
            y1: y.1,
            z0: z.0,
            z1: z.1,
        };
        b.checked_volume().ok_or(SftError::BoxTooLarge)?;
        Ok(b)
    }

    /// Box `[-a,a] × [-b,b] × [-b,b]`.
    pub fn symmetric(a: i64, b: i64) -> Result<SiteBox, SftError> {
        SiteBox::new((-a, a), (-b, b), (-b, b))
    }

    fn dims(&self) -> (usize, usize, usize) {
        let d = |lo: i64, hi: i64| (hi as i128 - lo as i128 + 1) as usize;
        (d(self.x0, self.x1), d(self.y0, self.y1), d(self.z0, self.z1))
    }

    fn checked_volume(&self) -> Option<usize> {
        let d = |lo: i64, hi: i64| usize::try_from(hi as i128 - lo as i128 + 1).ok();
        let v = d(self.x0, self.x1)?
            .checked_mul(d(self.y0, self.y1)?)?
            .checked_mul(d(self.z0, self.z1)?)?;
        (v <= 1 << 32).then_some(v)
    }

    pub fn volume(&self) -> usize {
        let (a, b, c) = self.dims();
        a * b * c
    }

    pub fn contains(&self, h: Site) -> bool {
        (self.x0..=self.x1).contains(&h.x)
            && (self.y0..=self.y1).contains(&h.y)
            && (self.z0..=self.z1).contains(&h.z)
    }

    pub fn index(&self, h: Site) -> Option<usize> {
        if !self.contains(h) {
            return None;
        }
        let (_, ny, nz) = self.dims();
        let (dx, dy, dz) = ((h.x - self.x0) as usize, (h.y - self.y0) as usize, (h.z - self.z0) as usize);
        Some((dx * ny + dy) * nz + dz)
    }

    pub fn site(&self, index: usize) -> Site {
        let (_, ny, nz) = self.dims();
        let dz = index % nz;
        let dy = (index / nz) % ny;
        let dx = index / (nz * ny);
        Site::new(self.x0 + dx as i64, self.y0 + dy as i64, self.z0 + dz as i64)
    }

    /// All sites in x, then y, then z order.
    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.volume()).map(|i| self.site(i))
    }
}

impl fmt::Display for SiteBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{},{}:{},{}:{}",
            self.x0, self.x1, self.y0, self.y1, self.z0, self.z1
        )
    }
}

impl FromStr for SiteBox {
    type Err = SftError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SftError::BadBox(s.into());
        let mut ranges = [(0i64, 0i64); 3];
        let mut parts = s.trim().split(',');
        for r in ranges.iter_mut() {
            let part = parts.next().ok_or_else(bad)?;
            let (lo, hi) = part.split_once(':').ok_or_else(bad)?;
            let lo = lo.trim().parse().map_err(|_| bad())?;
            let hi = hi.trim().parse().map_err(|_| bad())?;
            *r = (lo, hi);
        }
        if parts.next().is_some() {
            return Err(bad());
        }
        SiteBox::new(ranges[0], ranges[1], ranges[2])
    }
}

/// A total symbol assignment on a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    variant: Variant,
    bbox: SiteBox,
    symbols: Vec<Symbol>,
    pub parity: Parity,
    pub provenance: String,
}

fn symbol_fits(s: Symbol, variant: Variant) -> bool {
    match (s, variant) {
        (Symbol::Letter(_), v) => v == Variant::Sofic,
        (_, Variant::Sofic) => false,
        (Symbol::Rob(_), _) => true,
        (Symbol::Count(c), v) => symbol_allowed(c, v),
    }
}

impl Window {
    pub fn new(variant: Variant, bbox: SiteBox, symbols: Vec<Symbol>) -> Result<Window, SftError> {
        if symbols.len() != bbox.volume() {
            return Err(SftError::NotTotal {
                expected: bbox.volume(),
                got: symbols.len(),
            });
        }
        if let Some(i) = symbols.iter().position(|&s| !symbol_fits(s, variant)) {
            return Err(SftError::SymbolNotAllowed {
                site: bbox.site(i),
                variant: variant.name(),
            });
        }
        Ok(Window {
            variant,
            bbox,
            symbols,
            parity: Parity::Even,
            provenance: String::new(),
        })
    }

    pub fn from_fn(variant: Variant, bbox: SiteBox, mut f: impl FnMut(Site) -> Symbol) -> Result<Window, SftError> {
        let symbols = bbox.sites().map(&mut f).collect();
        Window::new(variant, bbox, symbols)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn bbox(&self) -> SiteBox {
        self.bbox
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn get(&self, h: Site) -> Option<Symbol> {
        self.bbox.index(h).map(|i| self.symbols[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Site, Symbol)> + '_ {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, &s)| (self.bbox.site(i), s))
    }

    /// Replaces one symbol.
    pub fn set(&mut self, h: Site, s: Symbol) -> Result<(), SftError> {
        if !symbol_fits(s, self.variant) {
            return Err(SftError::SymbolNotAllowed {
                site: h,
                variant: self.variant.name(),
            });
        }
        let i = self.bbox.index(h).ok_or(SftError::OutsideBox(h))?;
        self.symbols[i] = s;
        Ok(())
    }

    /// The same contents under another variant tag.
    pub fn with_variant(mut self, variant: Variant) -> Result<Window, SftError> {
        if let Some(i) = self.symbols.iter().position(|&s| !symbol_fits(s, variant)) {
            return Err(SftError::SymbolNotAllowed {
                site: self.bbox.site(i),
                variant: variant.name(),
            });
        }
        self.variant = variant;
        Ok(self)
    }

    /// Restriction to a sub-box.
    pub fn restrict(&self, sub: SiteBox) -> Result<Window, SftError> {
        for corner in [Site::new(sub.x0, sub.y0, sub.z0), Site::new(sub.x1, sub.y1, sub.z1)] {
            if !self.bbox.contains(corner) {
                return Err(SftError::OutsideBox(corner));
            }
        }
        let symbols = sub.sites().filter_map(|h| self.get(h)).collect();
        let mut w = Window::new(self.variant, sub, symbols)?;
        w.parity = self.parity;
        w.provenance = self.provenance.clone();
        Ok(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Coset,
    AltX,
    RobE,
    RobN,
    SegDiag,
    SegFwd,
    CrossProp,
    Lsb,
    Add,
    MsbDecor,
    Oc1,
    Oc2,
    SoficAlt,
    Sync,
    Align,
    Coord,
    RowUniform,
    EqualWidth,
}

impl RuleId {
    pub const ALL: [RuleId; 18] = [
        RuleId::Coset,
        RuleId::AltX,
        RuleId::RobE,
        RuleId::RobN,
        RuleId::SegDiag,
        RuleId::SegFwd,
        RuleId::CrossProp,
        RuleId::Lsb,
        RuleId::Add,
        RuleId::MsbDecor,
        RuleId::Oc1,
        RuleId::Oc2,
        RuleId::SoficAlt,
        RuleId::Sync,
        RuleId::Align,
        RuleId::Coord,
        RuleId::RowUniform,
        RuleId::EqualWidth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Coset => "R-COSET",
            RuleId::AltX => "R-ALT-X",
            RuleId::RobE => "R-ROB-E",
            RuleId::RobN => "R-ROB-N",
            RuleId::SegDiag => "R-SEG-DIAG",
            RuleId::SegFwd => "R-SEG-FWD",
            RuleId::CrossProp => "R-CROSS-PROP",
            RuleId::Lsb => "R-LSB",
            RuleId::Add => "R-ADD",
            RuleId::MsbDecor => "R-MSB-DECOR",
            RuleId::Oc1 => "R-OC1",
            RuleId::Oc2 => "R-OC2",
            RuleId::SoficAlt => "R-SOFIC-ALT",
            RuleId::Sync => "A-SYNC",
            RuleId::Align => "A-ALIGN",
            RuleId::Coord => "A-COORD",
            RuleId::RowUniform => "A-ROW-UNIFORM",
            RuleId::EqualWidth => "A-EQUAL-WIDTH",
        }
    }

    pub fn is_local(self) -> bool {
        self <= RuleId::SoficAlt
    }

    /// The local rules enforced in windows of `variant`.
    pub fn applies_to(self, variant: Variant) -> bool {
        match (self, variant) {
            (RuleId::SoficAlt, v) => v == Variant::Sofic,
            (_, Variant::Sofic) => false,
            (RuleId::Oc1 | RuleId::Oc2, v) => v == Variant::OmegaTilde,
            (r, _) => r.is_local(),
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL.into_iter().find(|r| r.name() == s).ok_or(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub rule: RuleId,
    pub sites: Vec<Site>,
    pub detail: String,
}

fn step(h: Site, g: Generator, sign: Sign) -> Option<Site> {
    neighbor(h, g, sign).ok()
}

fn steps(h: Site, path: &[(Generator, Sign)]) -> Option<Site> {
    path.iter().try_fold(h, |acc, &(g, s)| step(acc, g, s))
}

use Generator::{X, Y, Z};
use Sign::{Minus, Plus};

fn support(rule: RuleId, h: Site) -> Option<Vec<Site>> {
    let mut out = alloc::vec![h];
    let paths: &[&[(Generator, Sign)]] = match rule {
        RuleId::Coset => &[&[(Y, Plus)], &[(Z, Plus)]],
        RuleId::AltX | RuleId::SoficAlt => &[&[(X, Plus)]],
        RuleId::RobE => &[&[(Y, Plus)]],
        RuleId::RobN => &[&[(Z, Plus)]],
        RuleId::SegDiag => &[&[(Y, Minus), (Z, Plus)], &[(Y, Plus), (Z, Minus)]],
        RuleId::SegFwd => &[&[(Z, Plus)], &[(Z, Minus)]],
        RuleId::CrossProp => &[&[(X, Plus)], &[(X, Minus)]],
        RuleId::Lsb => &[&[(Z, Plus)], &[(X, Plus), (X, Plus)]],
        RuleId::Add => &[
            &[(Z, Plus)],
            &[(X, Plus), (X, Plus)],
            &[(Z, Plus), (X, Plus), (X, Plus)],
        ],
        RuleId::MsbDecor => &[&[(X, Plus), (X, Plus)]],
        RuleId::Oc1 | RuleId::Oc2 => &[&[(X, Plus), (X, Plus)], &[(Y, Plus)], &[(Y, Minus)]],
        _ => return None,
    };
    for p in paths {
        out.push(steps(h, p)?);
    }
    Some(out)
}

/// The sites read by the instance of `rule` anchored at `h`.
pub fn rule_support(rule: RuleId, h: Site) -> Result<Vec<Site>, SftError> {
    if !rule.is_local() {
        return Err(SftError::NotALocalRule(rule));
    }
    support(rule, h).ok_or(SftError::Overflow(rule, h))
}

fn counters<const N: usize>(syms: &[Symbol]) -> Option<[CounterSym; N]> {
    let mut out = [CounterSym::new(0, false, Seg::Blank); N];
    for (o, s) in out.iter_mut().zip(syms) {
        *o = s.as_count()?;
    }
    Some(out)
}

fn kind_name(s: Symbol) -> &'static str {
    if s.is_robinson_side() {
        "Robinson"
    } else {
        "counter"
    }
}

const BOLD_BOTH: CounterSym = CounterSym::new(1, true, Seg::Both);
const BOLD_COORD: CounterSym = CounterSym::new(1, true, Seg::Coord);

/// `None` if the instance is satisfied, otherwise a description.
fn evaluate(rule: RuleId, s: &[Symbol]) -> Option<String> {
    match rule {
        RuleId::Coset => {
            let k = s[0].is_robinson_side();
            (s[1].is_robinson_side() != k || s[2].is_robinson_side() != k)
                .then(|| format!("{} symbol next to a different kind in its coset", kind_name(s[0])))
        }
        RuleId::AltX => (s[0].is_robinson_side() == s[1].is_robinson_side())
            .then(|| format!("two {} symbols stacked along x", kind_name(s[0]))),
        RuleId::RobE | RuleId::RobN => {
            let (a, b) = (s[0].as_rob()?, s[1].as_rob()?);
            let adj = if rule == RuleId::RobE {
                Adjacency::EOf
            } else {
                Adjacency::NOf
            };
            (!matches(a, b, adj)).then(|| {
                format!(
                    "tiles {}/{} and {}/{} do not match",
                    a.base(),
                    a.rot(),
                    b.base(),
                    b.rot()
                )
            })
        }
        RuleId::SegDiag | RuleId::SegFwd => {
            let h = s[0].as_count()?;
            let has = |c: CounterSym| {
                if rule == RuleId::SegDiag {
                    c.seg.has_diag()
                } else {
                    c.seg.has_fwd()
                }
            };
            if !has(h) {
                return None;
            }
            let broken = s[1..].iter().filter_map(|x| x.as_count()).any(|c| !has(c));
            broken.then(|| "line segment does not continue".into())
        }
        RuleId::CrossProp => {
            let t = s[0].as_rob()?;
            let bad = s[1..]
                .iter()
                .filter_map(|x| x.as_count())
                .any(|c| c.bold != t.is_cross());
            bad.then(|| {
                if t.is_cross() {
                    "cross without bold digits above and below".into()
                } else {
                    "arm next to a bold digit along x".into()
                }
            })
        }
        RuleId::Lsb => {
            let [h, zh, x2h] = counters::<3>(s)?;
            (!h.bold && zh.bold && x2h.digit == h.digit).then(|| "least significant bit does not change".into())
        }
        RuleId::Add => {
            let [h, zh, x2h, x2zh] = counters::<4>(s)?;
            if zh.bold {
                return None;
            }
            match addition_allowed(h.bit(), zh.bit(), x2h.bit(), x2zh.bit()) {
                Ok(true) => None,
                Ok(false) => Some(format!(
                    "step {} {} -> {} {} is not an admissible addition",
                    h.bit(),
                    zh.bit(),
                    x2h.bit(),
                    x2zh.bit()
                )),
                Err(e @ CounterError::BoldMismatch(..)) => Some(format!("{e}")),
                Err(_) => None,
            }
        }
        RuleId::MsbDecor => {
            let [h, x2h] = counters::<2>(s)?;
            if !h.bold {
                return None;
            }
            let overflow = h.digit == 1 && x2h.bold && x2h.digit == 0;
            let ok = if overflow {
                matches!(h.seg, Seg::Both | Seg::Coord)
            } else {
                h.seg == Seg::Blank
            };
            (!ok).then(|| {
                if overflow {
                    "overflowing most significant bit lacks both segments".into()
                } else {
                    "most significant bit carries segments without an overflow".into()
                }
            })
        }
        RuleId::Oc1 => {
            let h = s[0].as_count()?;
            let x2h = s[1].as_count()?;
            if h.bold || (h.digit == 1 && x2h.digit == 0) {
                return None;
            }
            let up = s[2].as_count() == Some(BOLD_BOTH);
            let down = s[3].as_count() == Some(BOLD_BOTH);
            (up != down).then(|| "both-tile on one side only of a quiet digit".into())
        }
        RuleId::Oc2 => {
            let h = s[0].as_count()?;
            let x2h = s[1].as_count()?;
            let trigger = (!h.bold && h.digit == 1 && x2h.digit == 0) || h == BOLD_COORD;
            if !trigger {
                return None;
            }
            let bad = s[2..]
                .iter()
                .filter_map(|x| x.as_count())
                .any(|c| c.bold && c != BOLD_COORD);
            bad.then(|| "bold digit beside an overflow lacks the coordination tile".into())
        }
        RuleId::SoficAlt => {
            let (Symbol::Letter(a), Symbol::Letter(b)) = (s[0], s[1]) else {
                return None;
            };
            let ok = match (a, b) {
                (Letter::C, Letter::Digit(d)) | (Letter::Digit(d), Letter::C) => d.bold,
                (Letter::A, Letter::Digit(d)) | (Letter::Digit(d), Letter::A) => !d.bold,
                _ => false,
            };
            (!ok).then(|| format!("letters {} and {} stacked along x", a.code(), b.code()))
        }
        _ => None,
    }
}

/// All violations of the rules selected by `select` among those that apply
/// to the window's variant. Instances whose support leaves the box are
/// skipped.
pub fn check_rules(w: &Window, mut select: impl FnMut(RuleId) -> bool) -> Vec<Violation> {
    let rules: Vec<RuleId> = RuleId::ALL
        .into_iter()
        .filter(|&r| r.applies_to(w.variant()) && select(r))
        .collect();
    let mut out = Vec::new();
    let mut syms = Vec::with_capacity(4);
    for (h, _) in w.iter() {
        for &rule in &rules {
            let Some(sites) = support(rule, h) else {
                continue;
            };
            syms.clear();
            for &g in &sites {
                match w.get(g) {
                    Some(s) => syms.push(s),
                    None => break,
                }
            }
            if syms.len() != sites.len() {
                continue;
            }
            if let Some(detail) = evaluate(rule, &syms) {
                out.push(Violation { rule, sites, detail });
            }
        }
    }
    out.sort_by(|a, b| (a.rule, &a.sites).cmp(&(b.rule, &b.sites)));
    out
}

/// Every violation of the window's local rules, ordered by rule and sites.
pub fn check_window(w: &Window) -> Vec<Violation> {
    check_rules(w, |_| true)
}
