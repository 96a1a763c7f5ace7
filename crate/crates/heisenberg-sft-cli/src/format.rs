//! The plain-text window file.
//!
//! ```text
//! hsft-window 1
//! variant omega
//! box -1:1,-2:2,-2:2
//! parity even
//! provenance gen variant=omega parity=even right-half=overflow@-1
//! -1 -2 -2 | C 0 0 _
//! ...
//! 0 -2 -2 | R 3 1
//! ```
//!
//! One record per site, x-major, then y, then z.

use std::fmt::Write as _;

use heisenberg_sft::counter::CounterSym;
use heisenberg_sft::sft::{Letter, SftError};
use heisenberg_sft::{Parity, RobTile, Seg, Site, SiteBox, Symbol, Variant, Window};
use thiserror::Error;

pub const MAGIC: &str = "hsft-window";
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("file ends after {got} of {expected} records")]
    Truncated { expected: usize, got: usize },
    #[error("unexpected content after the last record on line {0}")]
    Trailing(usize),
    #[error(transparent)]
    Window(#[from] SftError),
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line { line, msg: msg.into() }
}

pub fn symbol_record(s: Symbol) -> String {
    match s {
        Symbol::Rob(t) => format!("R {} {}", t.base(), t.rot()),
        Symbol::Count(c) => format!("C {} {} {}", c.digit, u8::from(c.bold), c.seg.code()),
        Symbol::Letter(l) => format!("S {}", l.code()),
    }
}

pub fn save(w: &Window) -> String {
    let b = w.bbox();
    let mut out = String::with_capacity(32 * b.volume() + 128);
    let _ = writeln!(out, "{MAGIC} {VERSION}");
    let _ = writeln!(out, "variant {}", w.variant().name());
    let _ = writeln!(out, "box {b}");
    let _ = writeln!(out, "parity {}", w.parity.name());
    // Line breaks would end the header early.
    let prov = w.provenance.replace(['\n', '\r'], " ");
    if prov.is_empty() {
        out.push_str("provenance\n");
    } else {
        let _ = writeln!(out, "provenance {prov}");
    }
    for (h, s) in w.iter() {
        let _ = writeln!(out, "{} {} {} | {}", h.x, h.y, h.z, symbol_record(s));
    }
    out
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
    last_line: usize,
) -> Result<(usize, &'a str), ParseError> {
    let (n, l) = lines.next().ok_or_else(|| err(last_line + 1, format!("missing `{key}` header")))?;
    if l == key {
        return Ok((n, ""));
    }
    l.strip_prefix(key)
        .and_then(|r| r.strip_prefix(' '))
        .map(|r| (n, r))
        .ok_or_else(|| err(n, format!("expected `{key}` header")))
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("bad {what} `{tok}`")))
}

pub fn parse_symbol(line: usize, body: &str) -> Result<Symbol, ParseError> {
    let mut t = body.split_ascii_whitespace();
    let sym = match t.next() {
        Some("R") => {
            let base = parse_num(line, t.next(), "tile base")?;
            let rot = parse_num(line, t.next(), "tile rotation")?;
            Symbol::Rob(RobTile::new(base, rot).map_err(|e| err(line, e.to_string()))?)
        }
        Some("C") => {
            let digit: u8 = parse_num(line, t.next(), "digit")?;
            let bold: u8 = parse_num(line, t.next(), "bold flag")?;
            let seg = t
                .next()
                .and_then(|s| {
                    let mut c = s.chars();
                    let seg = Seg::from_code(c.next()?);
                    if c.next().is_some() { None } else { seg }
                })
                .ok_or_else(|| err(line, "bad segment code"))?;
            if digit > 1 || bold > 1 {
                return Err(err(line, "digit and bold flag must be 0 or 1"));
            }
            Symbol::Count(CounterSym::new(digit, bold == 1, seg))
        }
        Some("S") => {
            let code = t.next().ok_or_else(|| err(line, "missing letter"))?;
            Symbol::Letter(Letter::from_code(code).ok_or_else(|| err(line, format!("bad letter `{code}`")))?)
        }
        Some(k) => return Err(err(line, format!("unknown record kind `{k}`"))),
        None => return Err(err(line, "empty record")),
    };
    if t.next().is_some() {
        return Err(err(line, "extra fields in record"));
    }
    Ok(sym)
}

pub fn load(text: &str) -> Result<Window, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (n, v) = header(&mut lines, MAGIC, 0)?;
    if v != VERSION.to_string() {
        return Err(err(n, format!("unsupported format version `{v}`")));
    }
    let (n, v) = header(&mut lines, "variant", n)?;
    let variant = Variant::from_name(v).ok_or_else(|| err(n, format!("unknown variant `{v}`")))?;
    let (n, v) = header(&mut lines, "box", n)?;
    let bbox: SiteBox = v.parse().map_err(|e: SftError| err(n, e.to_string()))?;
    let (n, v) = header(&mut lines, "parity", n)?;
    let parity = Parity::from_name(v).ok_or_else(|| err(n, format!("unknown parity `{v}`")))?;
    let (_, provenance) = header(&mut lines, "provenance", n)?;
    let provenance = provenance.to_string();

    let expected = bbox.volume();
    let mut symbols = Vec::with_capacity(expected);
    for h in bbox.sites() {
        let Some((n, l)) = lines.next() else {
            return Err(ParseError::Truncated { expected, got: symbols.len() });
        };
        let (coords, body) = l.split_once('|').ok_or_else(|| err(n, "record lacks `|`"))?;
        let mut c = coords.split_ascii_whitespace();
        let x = parse_num(n, c.next(), "x")?;
        let y = parse_num(n, c.next(), "y")?;
        let z = parse_num(n, c.next(), "z")?;
        if c.next().is_some() {
            return Err(err(n, "too many coordinates"));
        }
        let at = Site::new(x, y, z);
        if at != h {
            return Err(err(n, format!("record for {at} where {h} was expected")));
        }
        symbols.push(parse_symbol(n, body)?);
    }
    if let Some((n, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(ParseError::Trailing(n));
    }
    let mut w = Window::new(variant, bbox, symbols)?;
    w.parity = parity;
    w.provenance = provenance;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use heisenberg_sft::generate::{gen_omega, GenParams};

    fn sample() -> Window {
        gen_omega(&GenParams::new(SiteBox::symmetric(1, 2).unwrap(), Variant::Omega)).unwrap()
    }

    #[test]
    fn round_trip() {
        let w = sample();
        let text = save(&w);
        assert_eq!(load(&text).unwrap(), w);
        assert_eq!(save(&load(&text).unwrap()), text);
    }

    #[test]
    fn empty_provenance_round_trips() {
        let mut w = sample();
        w.provenance.clear();
        assert_eq!(load(&save(&w)).unwrap(), w);
    }

    #[test]
    fn rejects_damage() {
        let text = save(&sample());
        let lines: Vec<&str> = text.lines().collect();
        let cut = lines[..lines.len() - 3].join("\n");
        assert!(matches!(load(&cut), Err(ParseError::Truncated { .. })));
        assert!(load(&text.replacen("hsft-window 1", "hsft-window 2", 1)).is_err());
        assert!(load(&text.replacen("| C 0 0", "| C 2 0", 1)).is_err());
        assert!(load(&text.replacen("| R ", "| R 99 ", 1)).is_err());
        let mut extra = text.clone();
        extra.push_str("9 9 9 | C 0 0 _\n");
        assert!(matches!(load(&extra), Err(ParseError::Trailing(_))));
        let swapped = text.replacen("-1 -2 -2 |", "-1 -2 -1 |", 1);
        assert!(load(&swapped).is_err());
    }

    #[test]
    fn symbols_outside_the_variant_are_rejected() {
        let text = save(&sample()).replacen("| C 0 0 _", "| S A", 1);
        assert!(matches!(load(&text), Err(ParseError::Window(_))));
    }
}
