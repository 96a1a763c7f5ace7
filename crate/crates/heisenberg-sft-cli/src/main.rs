use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use heisenberg_sft::analyze::{factor_phi, factor_sofic, scan_periods};
use heisenberg_sft::generate::{gen_exceptional, gen_omega, gen_omega_tilde, GenParams};
use heisenberg_sft::sft::check_window;
use heisenberg_sft::{Parity, SiteBox, Variant, Window};
use hsft::{load, render, save, Plane};
use serde_json::json;

/// Generate and check windows of the Heisenberg shift.
#[derive(Parser)]
#[command(name = "hsft", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenVariant {
    Omega,
    Tilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnyVariant {
    Omega,
    Tilde,
    Sofic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneArg {
    Yz,
    Xz,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Phi,
    Sofic,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a valid window.
    Gen {
        /// x0:x1,y0:y1,z0:z1
        #[arg(long = "box", value_name = "BOX", allow_hyphen_values = true)]
        bbox: String,
        #[arg(long, value_enum, default_value = "omega")]
        variant: GenVariant,
        #[arg(long, value_enum, default_value = "even")]
        parity: ParityArg,
        /// Robinson layer on which every counter of the right half overflows.
        #[arg(long, value_name = "K", allow_negative_numbers = true)]
        exceptional_overflow: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every local rule; exit 1 if anything is violated.
    Verify {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Check against this variant instead of the one in the header.
        #[arg(long, value_enum)]
        variant: Option<AnyVariant>,
    },
    /// Draw a planar slice as SVG.
    Render {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "yz")]
        plane: PlaneArg,
        /// x for a yz slice, y for an xz slice.
        #[arg(long, allow_negative_numbers = true)]
        fix: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List small translations the window does not refute; exit 1 if any.
    Scan {
        path: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_period: i64,
    },
    /// Apply a factor map.
    Factor {
        path: PathBuf,
        #[arg(long, value_enum)]
        map: MapArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const CLEAN: u8 = 0;
const VIOLATIONS: u8 = 1;
const USAGE: u8 = 2;

fn read_window(path: &Path) -> Result<Window> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    load(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn variant_of(v: AnyVariant) -> Variant {
    match v {
        AnyVariant::Omega => Variant::Omega,
        AnyVariant::Tilde => Variant::OmegaTilde,
        AnyVariant::Sofic => Variant::Sofic,
    }
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Gen { bbox, variant, parity, exceptional_overflow, out } => {
            let bbox: SiteBox = bbox.parse()?;
            let variant = match variant {
                GenVariant::Omega => Variant::Omega,
                GenVariant::Tilde => Variant::OmegaTilde,
            };
            let parity = match parity {
                ParityArg::Even => Parity::Even,
                ParityArg::Odd => Parity::Odd,
            };
            let p = GenParams::new(bbox, variant).with_parity(parity);
            let w = match exceptional_overflow {
                Some(k) => gen_exceptional(&p.with_exceptional_overflow(k)?)?,
                None if variant == Variant::Omega => gen_omega(&p)?,
                None => gen_omega_tilde(&p)?,
            };
            emit(out.as_deref(), &save(&w))?;
            Ok(CLEAN)
        }
        Cmd::Verify { path, json, variant } => {
            let mut w = read_window(&path)?;
            if let Some(v) = variant {
                w = w.with_variant(variant_of(v))?;
            }
            let violations = check_window(&w);
            let mut text = String::new();
            if json {
                let list: Vec<_> = violations
                    .iter()
                    .map(|v| {
                        json!({
                            "rule": v.rule.name(),
                            "sites": v.sites.iter().map(|h| [h.x, h.y, h.z]).collect::<Vec<_>>(),
                            "detail": v.detail,
                        })
                    })
                    .collect();
                let doc = json!({
                    "variant": w.variant().name(),
                    "sites": w.bbox().volume(),
                    "violations": list,
                });
                text = serde_json::to_string_pretty(&doc)? + "\n";
            } else {
                for v in &violations {
                    let sites: Vec<String> = v.sites.iter().map(ToString::to_string).collect();
                    text += &format!("{} {} {}\n", v.rule, sites.join(" "), v.detail);
                }
                text += &format!("{} violations in {} sites\n", violations.len(), w.bbox().volume());
            }
            emit(None, &text)?;
            Ok(if violations.is_empty() { CLEAN } else { VIOLATIONS })
        }
        Cmd::Render { path, plane, fix, out } => {
            let w = read_window(&path)?;
            let plane = match plane {
                PlaneArg::Yz => Plane::Yz,
                PlaneArg::Xz => Plane::Xz,
            };
            emit(out.as_deref(), &render(&w, plane, fix)?)?;
            Ok(CLEAN)
        }
        Cmd::Scan { path, max_period } => {
            anyhow::ensure!((0..=64).contains(&max_period), "--max-period must lie in 0..=64");
            let w = read_window(&path)?;
            let found = scan_periods(&w, max_period);
            let mut text = String::new();
            for p in &found {
                text += &format!("{} {} {}\n", p.a, p.b, p.c);
            }
            text += &format!("{} candidate periods survive\n", found.len());
            emit(None, &text)?;
            Ok(if found.is_empty() { CLEAN } else { VIOLATIONS })
        }
        Cmd::Factor { path, map, out } => {
            let w = read_window(&path)?;
            let mapped = match map {
                MapArg::Phi => factor_phi(&w)?,
                MapArg::Sofic => factor_sofic(&w),
            };
            emit(out.as_deref(), &save(&mapped))?;
            Ok(CLEAN)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hsft: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
