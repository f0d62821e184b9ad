//! `qseries`: named q-expansions, Noether-Lefschetz numbers, the reduced
//! invariant solve and the identity checks, from the command line.

mod cache;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use qseries::bps::verify_yau_zaslow;
use qseries::harvey_moore::{verify_harmoo, verify_ppx};
use qseries::mirror::{verify_f3_cancellation, verify_fricke, verify_klm, verify_v678};
use qseries::noether_lefschetz::{discriminant, nl_number, RefinedNl};
use qseries::weakly_holomorphic::{bol_check, verify_hecke};
use qseries::{modular, rat, Report, SeriesError};

use cache::Cache;
use emit::{Format, FormOutput, NlOutput, NlRow, SolveOutput, VerifyOutput, YzRow};

#[derive(Debug, Parser)]
#[command(name = "qseries", version, about = "Exact q-series computations for K3 fibrations")]
pub struct RunConfig {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Directory for cached q-expansions.
    #[arg(long, env = "QSERIES_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Print timings and cache activity to stderr (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

/// An integer or an inclusive range `a:b`.
#[derive(Debug, Clone, Copy)]
struct Span(i64, i64);

impl FromStr for Span {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let int = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
        match s.split_once(':') {
            None => int(s).map(|v| Span(v, v)),
            Some((a, b)) => {
                let (a, b) = (int(a)?, int(b)?);
                if a > b {
                    return Err(format!("empty range {s}"));
                }
                Ok(Span(a, b))
            }
        }
    }
}

impl Span {
    fn iter(self) -> std::ops::RangeInclusive<i64> {
        self.0..=self.1
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a named q-expansion up to (excluding) q^order.
    Modform {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(modular::FORM_NAMES))]
        name: String,
        #[arg(long, default_value_t = 10)]
        order: i64,
    },
    /// Noether-Lefschetz numbers NL(h, d1, d2). Each key takes a value or a range a:b.
    Nl {
        #[arg(long, allow_hyphen_values = true)]
        h: Span,
        #[arg(long, allow_hyphen_values = true)]
        d1: Span,
        #[arg(long, allow_hyphen_values = true)]
        d2: Span,
    },
    /// Refined Noether-Lefschetz numbers NL_{m,h}(d1, d2).
    NlRefined {
        #[arg(long, allow_hyphen_values = true)]
        m: Span,
        #[arg(long, allow_hyphen_values = true)]
        h: Span,
        #[arg(long, allow_hyphen_values = true)]
        d1: Span,
        #[arg(long, allow_hyphen_values = true)]
        d2: Span,
    },
    /// Solve for the reduced invariants r(m, h) and compare with eta^-24.
    SolveYz {
        #[arg(long, default_value_t = 10)]
        hmax: i64,
        #[arg(long, default_value_t = 3)]
        mmax: i64,
    },
    /// Run one identity check.
    Verify {
        suite: Suite,
        #[arg(long)]
        n1: Option<i64>,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long)]
        n2: Option<i64>,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long)]
        order: Option<i64>,
        #[arg(long)]
        bi_order: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    HarveyMoore,
    Ppx,
    Hecke,
    Bol,
    Fricke,
    Klm,
    V678,
    F3,
}

/// What a successful run printed, and whether its checks matched.
struct Outcome {
    text: String,
    matched: bool,
}

fn form(cfg: &RunConfig, name: &str, order: i64) -> Result<Outcome> {
    let cache = cfg.cache_dir.as_deref().map(Cache::new);
    let hit = cache.as_ref().and_then(|c| c.load(name, order));
    let s = match hit {
        Some(s) => {
            if cfg.verbose > 0 {
                eprintln!("cache hit: {name} to order {order}");
            }
            s
        }
        None => {
            let s = modular::form_by_name(name, order)?;
            if let Some(c) = &cache {
                c.store(name, order, &s)?;
                if cfg.verbose > 0 {
                    eprintln!("cache store: {name} to order {order}");
                }
            }
            s
        }
    };
    let out = FormOutput::new(name, order, &s);
    Ok(Outcome { text: emit::render_form(&out, cfg.format), matched: true })
}

fn nl(cfg: &RunConfig, h: Span, d1: Span, d2: Span) -> Result<Outcome> {
    let mut rows = Vec::new();
    for h in h.iter() {
        for d1 in d1.iter() {
            for d2 in d2.iter() {
                rows.push(NlRow {
                    m: None,
                    h,
                    d1,
                    d2,
                    discriminant: discriminant(h, d1, d2),
                    value: rat::format(&nl_number(h, d1, d2)),
                });
            }
        }
    }
    Ok(Outcome { text: emit::render_nl(&NlOutput { rows }, cfg.format), matched: true })
}

fn nl_refined(cfg: &RunConfig, m: Span, h: Span, d1: Span, d2: Span) -> Result<Outcome> {
    let mut memo = RefinedNl::new();
    let mut rows = Vec::new();
    for m in m.iter() {
        for h in h.iter() {
            for d1 in d1.iter() {
                for d2 in d2.iter() {
                    let v = memo.get(m, h, d1, d2)?;
                    rows.push(NlRow {
                        m: Some(m),
                        h,
                        d1,
                        d2,
                        discriminant: discriminant(h, d1, d2),
                        value: rat::format(&v),
                    });
                }
            }
        }
    }
    Ok(Outcome { text: emit::render_nl(&NlOutput { rows }, cfg.format), matched: true })
}

fn solve_yz(cfg: &RunConfig, hmax: i64, mmax: i64) -> Result<Outcome> {
    let (table, report) = verify_yau_zaslow(hmax, mmax)?;
    let yz = modular::yz_series(hmax + 1)?;
    let mut rows: Vec<YzRow> = table
        .iter()
        .map(|(&(m, h), v)| YzRow { h, m, r: rat::format(v), expected: rat::format(&yz.coeff(h)) })
        .collect();
    rows.sort_by_key(|r| (r.h, r.m));
    let out = SolveOutput {
        source: "closed-form BPS counts from 2 f(q1) E4(q2) / (j(q1) - j(q2))".into(),
        hmax,
        mmax,
        rows,
        all_match: report.passed(),
    };
    Ok(Outcome { text: emit::render_solve(&out, cfg.format), matched: out.all_match })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    cfg: &RunConfig,
    suite: Suite,
    n1: Option<i64>,
    window: Option<i64>,
    n2: Option<i64>,
    nmax: Option<u32>,
    order: Option<i64>,
    bi_order: Option<i64>,
) -> Result<Outcome> {
    let (name, params, report): (&str, Vec<(&str, i64)>, Report) = match suite {
        Suite::HarveyMoore => {
            let (n1, w) = (n1.unwrap_or(12), window.unwrap_or(12));
            ("harvey-moore", vec![("n1", n1), ("window", w)], verify_harmoo(n1, w)?)
        }
        Suite::Ppx => {
            let (n1, n2) = (n1.unwrap_or(10), n2.unwrap_or(10));
            ("ppx", vec![("n1", n1), ("n2", n2)], verify_ppx(n1, n2)?)
        }
        Suite::Hecke => {
            let (n, o) = (nmax.unwrap_or(8), order.unwrap_or(25));
            ("hecke", vec![("nmax", n as i64), ("order", o)], verify_hecke(n, o)?)
        }
        Suite::Bol => {
            let o = order.unwrap_or(30);
            ("bol", vec![("order", o)], bol_check(o)?)
        }
        Suite::Fricke => {
            let o = order.unwrap_or(25);
            ("fricke", vec![("order", o)], verify_fricke(o)?)
        }
        Suite::Klm => {
            let (o, b) = (order.unwrap_or(20), bi_order.unwrap_or(6));
            ("klm", vec![("order", o), ("bi_order", b)], verify_klm(o, b)?)
        }
        Suite::V678 => {
            let o = order.unwrap_or(6);
            ("v678", vec![("order", o)], verify_v678(o)?)
        }
        Suite::F3 => {
            let o = order.unwrap_or(8);
            ("f3", vec![("order", o)], verify_f3_cancellation(o)?)
        }
    };
    let out = VerifyOutput::new(name, &params, &report);
    Ok(Outcome { text: emit::render_verify(&out, cfg.format), matched: out.passed })
}

fn run(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Modform { name, order } => form(cfg, name, *order),
        Command::Nl { h, d1, d2 } => nl(cfg, *h, *d1, *d2),
        Command::NlRefined { m, h, d1, d2 } => nl_refined(cfg, *m, *h, *d1, *d2),
        Command::SolveYz { hmax, mmax } => solve_yz(cfg, *hmax, *mmax),
        Command::Verify { suite, n1, window, n2, nmax, order, bi_order } => {
            verify(cfg, *suite, *n1, *window, *n2, *nmax, *order, *bi_order)
        }
    }
}

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let result = run(&cfg);
    if cfg.verbose > 0 {
        eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.matched {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let usage = matches!(
                e.downcast_ref::<SeriesError>(),
                Some(SeriesError::InvalidArgument(_) | SeriesError::Parse(_))
            );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
