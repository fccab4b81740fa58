//! The `budlaw` command line.

use std::fs;
use std::path::{Path, PathBuf};

use budlaw_core::finite_ring::unit_quotient_check;
use budlaw_core::honda::{self, aut_group_of, min_ambient, quotient_ring_of};
use budlaw_core::lazard::{classify, extend_one_degree, universal_law};
use budlaw_core::budlaw::defect;
use budlaw_core::{isomorphy, BudLaw, Error, Mono, Result, Ring, TruncPoly};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::fanout;
use crate::json::*;

#[derive(Parser, Debug)]
#[command(name = "budlaw", version, about = "Exact computation with truncated formal group laws")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the result here instead of standard output.
    #[arg(long = "out", value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Jobs {
    /// Worker threads for the enumeration.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug, Clone)]
pub struct HondaParams {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub h: u32,
    #[arg(long)]
    pub n: u32,
    /// Field `P^K`; defaults to `F_p`.
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the bud-law axioms of a two-variable polynomial.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Extend a law by one degree.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// The universal n-bud law over Z[t1..t_{n-1}].
    Universal {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Parameters of a law in the universal family.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Specialize the universal law at parameter values.
    Specialize {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        ring: String,
        /// Comma-separated values of t1..t_{n-1}.
        #[arg(long, conflicts_with = "input")]
        values: Option<String>,
        /// JSON array of values.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// The Honda law of height h over F_p.
    Honda {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// The [m]-series of a law (m defaults to p).
    Pseries {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Height of a law at a prime.
    Height {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        ring: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// f(F(T1,T2)) - G(f(T1), f(T2)) for a series and one or two laws.
    Defect {
        /// Series, source law, then optionally target law.
        #[arg(long = "in", num_args = 1, required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// All endomorphisms of the Honda bud over F_q.
    EndEnum {
        #[command(flatten)]
        params: HondaParams,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        out: Output,
    },
    /// Automorphisms of the Honda bud over F_q with the filtration report.
    Aut {
        #[command(flatten)]
        params: HondaParams,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        out: Output,
    },
    /// The finite quotient ring E_n and its unit group.
    QuotientRing {
        #[command(flatten)]
        params: HondaParams,
        /// Order N of the ambient law; defaults to the least admissible.
        #[arg(long)]
        ambient: Option<u32>,
        /// Write the multiplication table as CSV here.
        #[arg(long, value_name = "FILE")]
        table: Option<PathBuf>,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        out: Output,
    },
    /// Search for an isomorphism between two laws.
    Iso {
        #[arg(long = "in", num_args = 1, required = true)]
        inputs: Vec<PathBuf>,
        /// Field `P^K` to search over; defaults to the laws' ring.
        #[arg(long)]
        q: Option<String>,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        out: Output,
    },
    /// Find an isomorphism to the Honda law over a finite extension.
    Trivialize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        h: u32,
        #[arg(long = "max-ext")]
        max_ext: Option<u32>,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        out: Output,
    },
    /// The strict isomorphism to the additive law over a Q-algebra.
    Log {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Conjugate a law by T -> λT.
    Rescale {
        #[arg(long = "in")]
        input: PathBuf,
        /// The scalar λ, written in the law's ring.
        #[arg(long)]
        by: String,
        #[command(flatten)]
        out: Output,
    },
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn read_law(path: &Path) -> Result<BudLaw> {
    law_from_json(&read_json(path)?)
}

fn field_of(q: &Option<String>, p: u64) -> Result<Ring> {
    match q {
        Some(s) => {
            let (qp, k) = parse_prime_power(s)?;
            if qp != p {
                return Err(Error::CharacteristicMismatch);
            }
            Ring::finite_field(qp, k)
        }
        None => Ring::finite_field(p, 1),
    }
}

fn with_ring(x: BudLaw, ring: &Option<String>) -> Result<BudLaw> {
    match ring {
        Some(spec) => x.change_ring(&parse_ring_spec(spec)?),
        None => Ok(x),
    }
}

/// What a command produced: the JSON document and where it goes, plus any
/// side files.
pub struct Outcome {
    pub value: Value,
    pub out: Option<PathBuf>,
    pub files: Vec<(PathBuf, String)>,
}

fn done(value: Value, out: &Output) -> Result<Outcome> {
    Ok(Outcome { value, out: out.out.clone(), files: Vec::new() })
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Validate { input, ring, out } => {
            let v = read_json(input)?;
            let mut f = law_poly_from_json(&v)?;
            if let Some(spec) = ring {
                f = f.change_ring(&parse_ring_spec(spec)?)?;
            }
            done(law_to_json(&BudLaw::validate(f)?), out)
        }
        Command::Extend { input, out } => done(law_to_json(&extend_one_degree(&read_law(input)?)?), out),
        Command::Universal { n, out } => done(universal_to_json(&universal_law(*n)?), out),
        Command::Classify { input, out } => {
            let x = read_law(input)?;
            let params: Vec<Value> = classify(&x)?.iter().map(|t| elem_to_json(x.ring(), t)).collect();
            done(json!({ "ring": ring_to_json(x.ring()), "n": x.n(), "params": params }), out)
        }
        Command::Specialize { n, ring, values, input, out } => {
            let target = parse_ring_spec(ring)?;
            let vals = match (values, input) {
                (Some(s), _) => s.split(',').filter(|t| !t.trim().is_empty()).map(|t| target.parse(t.trim())).collect::<Result<Vec<_>>>()?,
                (None, Some(path)) => read_json(path)?
                    .as_array()
                    .ok_or_else(|| Error::InvalidArgument("expected a JSON array of values".into()))?
                    .iter()
                    .map(|v| elem_from_json(&target, v))
                    .collect::<Result<Vec<_>>>()?,
                (None, None) => Vec::new(),
            };
            done(law_to_json(&universal_law(*n)?.specialize(&target, &vals)?), out)
        }
        Command::Honda { p, h, n, out } => done(honda_to_json(&honda::honda_law(*p, *h, *n)?), out),
        Command::Pseries { input, p, m, out } => {
            let x = read_law(input)?;
            let m = m.or(*p).ok_or_else(|| Error::InvalidArgument("give --p or --m".into()))?;
            done(endo_to_json(&x.m_series(m)), out)
        }
        Command::Height { input, p, ring, out } => {
            let x = with_ring(read_law(input)?, ring)?;
            done(height_to_json(x.ring(), &x.height(*p)?), out)
        }
        Command::Defect { inputs, out } => {
            if !(2..=3).contains(&inputs.len()) {
                return Err(Error::InvalidArgument("defect takes a series and one or two laws".into()));
            }
            let f: TruncPoly = series_from_json(&read_json(&inputs[0])?)?;
            let x = read_law(&inputs[1])?;
            let y = match inputs.get(2) {
                Some(path) => read_law(path)?,
                None => x.clone(),
            };
            done(poly_to_json(&defect(&f, &x, &y)?), out)
        }
        Command::EndEnum { params, jobs, out } => {
            let hl = honda::honda_law(params.p, params.h, params.n)?;
            let field = field_of(&params.q, params.p)?;
            done(endo_set_to_json(&fanout::enumerate_endos(&hl, &field, jobs.jobs)?), out)
        }
        Command::Aut { params, jobs, out } => {
            let hl = honda::honda_law(params.p, params.h, params.n)?;
            let field = field_of(&params.q, params.p)?;
            let (aut, report) = aut_group_of(&fanout::enumerate_endos(&hl, &field, jobs.jobs)?)?;
            done(json!({ "automorphisms": endo_set_to_json(&aut), "filtration": filtration_to_json(&report) }), out)
        }
        Command::QuotientRing { params, ambient, table, jobs, out } => {
            let (p, h, n) = (params.p, params.h, params.n);
            let field = field_of(&params.q, p)?;
            let need = min_ambient(p, h, n);
            let big_n = ambient.unwrap_or(need as u32);
            if (big_n as u64) < need {
                return Err(Error::OrderTooSmall { order: big_n, required: need as u32 });
            }
            let set = fanout::enumerate_endos(&honda::honda_law(p, h, big_n)?, &field, jobs.jobs)?;
            let e = quotient_ring_of(&set, n)?;
            let ideal = |i: u32| -> Vec<usize> {
                (0..e.elements.len()).filter(|&k| e.elements[k][1..=i as usize].iter().all(|&c| c == 0)).collect()
            };
            let mut checks = Vec::new();
            for i in 1..=n {
                for j in i..=n.min(2 * i) {
                    checks.push(unit_quotient_to_json(i, j, &unit_quotient_check(&e.ring, &ideal(i), &ideal(j))));
                }
            }
            let mut outcome = done(quotient_ring_to_json(&e, checks), out)?;
            if let Some(path) = table {
                outcome.files.push((path.clone(), mul_table_csv(&e)?));
            }
            Ok(outcome)
        }
        Command::Iso { inputs, q, jobs, out } => {
            if inputs.len() != 2 {
                return Err(Error::InvalidArgument("iso takes exactly two laws".into()));
            }
            let x = read_law(&inputs[0])?;
            let y = read_law(&inputs[1])?;
            let field = match q {
                Some(_) => field_of(q, x.ring().characteristic())?,
                None => x.ring().clone(),
            };
            done(iso_to_json(&fanout::find_iso(&x, &y, &field, jobs.jobs)?), out)
        }
        Command::Trivialize { input, h, max_ext, jobs, out } => {
            let x = read_law(input)?;
            done(iso_to_json(&fanout::trivialize_height_h(&x, *h, *max_ext, jobs.jobs)?), out)
        }
        Command::Log { input, out } => done(endo_to_json(&isomorphy::log_to_additive(&read_law(input)?)?), out),
        Command::Rescale { input, by, out } => {
            let x = read_law(input)?;
            let r = x.ring().clone();
            let lambda = r.parse(by)?;
            let f = TruncPoly::monomial(&r, 1, x.n(), Mono::from_slice(&[1]), lambda);
            done(law_to_json(&x.conjugate(&f)?), out)
        }
    }
}

/// Runs the command line and returns the exit code with the text destined
/// for standard output and standard error.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    match execute(&cli.command).and_then(write_outcome) {
        Ok(stdout) => (0, stdout, String::new()),
        Err(e) => (1, pretty(&error_to_json(&e)), String::new()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn write_outcome(o: Outcome) -> Result<String> {
    let io = |p: &Path, e: std::io::Error| Error::InvalidArgument(format!("{}: {e}", p.display()));
    for (path, text) in &o.files {
        fs::write(path, text).map_err(|e| io(path, e))?;
    }
    let text = pretty(&o.value);
    match o.out {
        Some(path) => {
            fs::write(&path, &text).map_err(|e| io(&path, e))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
