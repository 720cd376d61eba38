//! Command-line front end. [`run`] parses arguments, writes to the given
//! streams and returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::builder::TypedValueParser as _;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::homology::{ComputeOptions, Field};
use crate::ideal::MonomialIdeal;
use crate::io;
use crate::labeled::{
    betti_numbers, supports_resolution_homological, supports_resolution_quasitree,
    taylor_complex_capped, LabeledComplex, SupportCheck, DEFAULT_TAYLOR_CAP,
};
use crate::lsquared::{bound_table, build_l2i, DEFAULT_ENUM_Q_CAP};
use crate::parse::parse_ideal;
use crate::simplicial::DEFAULT_FACE_CAP;
use crate::sweep::{run_sweep, Check, SweepConfig, MAX_SWEEP_VARS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "l2res",
    version,
    about = "Simplicial resolutions of squares of square-free monomial ideals"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalOpts {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Coefficient field: rational, gf2 or gf:<prime>
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,
    /// Comma-separated variable order (default: order of first appearance)
    #[arg(long, global = true)]
    pub vars: Option<String>,
    /// Maximum number of faces enumerated by a single computation
    #[arg(long, global = true, env = "L2RES_FACE_CAP", default_value_t = DEFAULT_FACE_CAP,
          value_parser = clap::value_parser!(u64).range(1..).map(|v| v as usize))]
    pub face_cap: usize,
    /// Maximum number of generators for a Taylor complex
    #[arg(long, global = true, env = "L2RES_TAYLOR_CAP", default_value_t = DEFAULT_TAYLOR_CAP,
          value_parser = clap::value_parser!(u64).range(1..).map(|v| v as usize))]
    pub taylor_cap: usize,
    /// Largest number of generators for which `bounds` also computes Betti numbers
    #[arg(long, global = true, env = "L2RES_ENUM_Q_CAP", default_value_t = DEFAULT_ENUM_Q_CAP,
          value_parser = clap::value_parser!(u64).range(1..).map(|v| v as usize))]
    pub enum_q_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct IdealArg {
    /// Ideal, e.g. "abe,bc,cdf,ad" or "x1*x2,x2^2*x3"
    #[arg(value_name = "IDEAL", required_unless_present = "ideal")]
    pub positional: Option<String>,
    /// Ideal (alternative to the positional argument)
    #[arg(long = "ideal", value_name = "IDEAL", conflicts_with = "positional")]
    pub ideal: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal generators of a power of the ideal
    Power {
        #[command(flatten)]
        input: IdealArg,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        power: u32,
    },
    /// The complex L²(I) with its labels and deleted vertices
    #[command(name = "build-l2")]
    BuildL2 {
        #[command(flatten)]
        input: IdealArg,
    },
    /// Check whether a labeled complex supports a resolution of I or I²
    #[command(name = "check-support")]
    CheckSupport {
        #[command(flatten)]
        input: IdealArg,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        power: u32,
        /// Labeled complex as JSON (default: Taylor(I), or L²(I) with --power 2)
        #[arg(long, value_name = "FILE")]
        complex: Option<PathBuf>,
    },
    /// Betti numbers of I or I²
    Betti {
        #[command(flatten)]
        input: IdealArg,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        power: u32,
        /// Also print the multigraded Betti numbers
        #[arg(long)]
        graded: bool,
        /// Labeled complex supporting the resolution, as JSON
        #[arg(long, value_name = "FILE")]
        complex: Option<PathBuf>,
    },
    /// Betti-number bounds for I² next to the face counts of L²(I)
    Bounds {
        #[command(flatten)]
        input: IdealArg,
    },
    /// Run the invariant suite on seeded random square-free ideals
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=MAX_SWEEP_VARS as u64).map(|v| v as usize))]
        max_n: usize,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=15).map(|v| v as usize))]
        max_q: usize,
        /// Also compare with Betti numbers computed from Taylor(I²)
        #[arg(long)]
        taylor: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_resource_limit() {
                EXIT_RESOURCE
            } else {
                EXIT_ERROR
            }
        }
    }
}

struct Context<'a> {
    global: &'a GlobalOpts,
    opts: ComputeOptions,
}

impl Context<'_> {
    fn ideal(&self, input: &IdealArg, err: &mut dyn Write) -> Result<MonomialIdeal> {
        let text = input
            .ideal
            .as_deref()
            .or(input.positional.as_deref())
            .ok_or_else(|| Error::Invalid("no ideal given".into()))?;
        let vars: Option<Vec<String>> = self
            .global
            .vars
            .as_ref()
            .map(|v| v.split(',').map(|s| s.trim().to_string()).collect());
        let parsed = parse_ideal(text, vars.as_deref())?;
        if let Some(w) = parsed.warning() {
            let _ = writeln!(err, "warning: {w}");
        }
        Ok(parsed.ideal)
    }

    fn default_complex(
        &self,
        ideal: &MonomialIdeal,
        power: u32,
        target: &MonomialIdeal,
    ) -> Result<LabeledComplex> {
        if power == 2 && ideal.is_squarefree() {
            Ok(build_l2i(ideal)?.0)
        } else {
            taylor_complex_capped(target, self.global.taylor_cap)
        }
    }

    fn complex(
        &self,
        file: Option<&PathBuf>,
        ideal: &MonomialIdeal,
        power: u32,
        target: &MonomialIdeal,
    ) -> Result<LabeledComplex> {
        match file {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                io::labeled_from_json(&io::read_complex(&text)?, target.vars())
            }
            None => self.default_complex(ideal, power, target),
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let g = &cli.global;
    let field: Field = g.field.parse()?;
    let cx = Context {
        global: g,
        opts: ComputeOptions {
            field,
            face_cap: g.face_cap,
        },
    };
    match &cli.command {
        Command::Power { input, power } => {
            let ideal = cx.ideal(input, err)?;
            let p = ideal.power(*power)?;
            match g.format {
                Format::Json => {
                    let mut v = serde_json::to_value(io::ideal_to_json(&p))?;
                    v["count"] = json!(p.q());
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                Format::Csv => {
                    writeln!(out, "generator")?;
                    for s in p.generator_strings() {
                        writeln!(out, "{s}")?;
                    }
                }
                Format::Table => {
                    writeln!(out, "{}", p.generator_strings().join(","))?;
                    writeln!(out, "count {}", p.q())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::BuildL2 { input } => {
            let ideal = cx.ideal(input, err)?;
            let (l2, record) = build_l2i(&ideal)?;
            match g.format {
                Format::Json => writeln!(out, "{}", io::write_labeled(&l2, Some(&record))?)?,
                Format::Csv => {
                    writeln!(out, "vertex,pair,label")?;
                    for (&v, m) in l2.labels() {
                        let p = crate::lsquared::PairVertex::from_id(ideal.q(), v);
                        writeln!(out, "{v},{}-{},{}", p.i(), p.j(), ideal.format_monomial(m))?;
                    }
                }
                Format::Table => {
                    let q = ideal.q();
                    let name = |v: u32| crate::lsquared::PairVertex::from_id(q, v).to_string();
                    writeln!(
                        out,
                        "vertices {} (s = {})",
                        l2.complex().num_vertices(),
                        record.s
                    )?;
                    for (&v, m) in l2.labels() {
                        writeln!(out, "  {v:>3} {:<6} {}", name(v), ideal.format_monomial(m))?;
                    }
                    writeln!(out, "facets {}", l2.complex().facets().len())?;
                    for f in l2.complex().facets() {
                        let names: Vec<String> = f.iter().map(name).collect();
                        writeln!(out, "  dim {} {{{}}}", f.dim(), names.join(", "))?;
                    }
                    let deleted: Vec<String> =
                        record.deleted.iter().map(|p| p.to_string()).collect();
                    writeln!(out, "deleted {{{}}}", deleted.join(", "))?;
                    let t: Vec<String> = record.t.iter().map(usize::to_string).collect();
                    writeln!(out, "t {}", t.join(" "))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::CheckSupport {
            input,
            power,
            complex,
        } => {
            let ideal = cx.ideal(input, err)?;
            let target = ideal.power(*power)?;
            let delta = cx.complex(complex.as_ref(), &ideal, *power, &target)?;
            let quasi = match supports_resolution_quasitree(&delta, &target) {
                Ok(c) => Some(c),
                Err(Error::NotQuasiForest) => None,
                Err(e) => return Err(e),
            };
            let homological = supports_resolution_homological(&delta, &target, &cx.opts)?;
            let passed = homological.supported && quasi.as_ref().is_none_or(|c| c.supported);
            let describe = |c: &SupportCheck| {
                let status = if c.supported { "PASS" } else { "FAIL" };
                let witness = c.witness.as_ref().map(|m| target.format_monomial(m));
                (status, witness)
            };
            match g.format {
                Format::Json => {
                    let entry = |c: Option<&SupportCheck>| match c {
                        None => json!({ "status": "N/A", "reason": "not a quasi-forest" }),
                        Some(c) => {
                            let (status, witness) = describe(c);
                            json!({ "status": status, "witness": witness, "degree": c.witness_degree })
                        }
                    };
                    let v = json!({
                        "result": if passed { "PASS" } else { "FAIL" },
                        "connectivity": entry(quasi.as_ref()),
                        "acyclicity": entry(Some(&homological)),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                Format::Table | Format::Csv => {
                    match &quasi {
                        None => writeln!(out, "connectivity criterion: N/A (not a quasi-forest)")?,
                        Some(c) => {
                            let (status, witness) = describe(c);
                            write!(out, "connectivity criterion: {status}")?;
                            match witness {
                                Some(w) => writeln!(out, " (disconnected at {w})")?,
                                None => writeln!(out)?,
                            }
                        }
                    }
                    let (status, witness) = describe(&homological);
                    write!(out, "acyclicity criterion ({}): {status}", cx.opts.field)?;
                    match witness {
                        Some(w) => writeln!(
                            out,
                            " (reduced homology in dimension {} at {w})",
                            homological.witness_degree.unwrap_or(0)
                        )?,
                        None => writeln!(out)?,
                    }
                    writeln!(out, "{}", if passed { "PASS" } else { "FAIL" })?;
                }
            }
            Ok(if passed { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Betti {
            input,
            power,
            graded,
            complex,
        } => {
            let ideal = cx.ideal(input, err)?;
            let target = ideal.power(*power)?;
            let delta = cx.complex(complex.as_ref(), &ideal, *power, &target)?;
            let table = betti_numbers(&delta, &target, &cx.opts)?;
            let shown = if *graded {
                table.clone()
            } else {
                table.without_graded()
            };
            match g.format {
                Format::Json => writeln!(out, "{}", io::write_betti(&shown, target.vars())?)?,
                Format::Csv => {
                    write!(out, "{}", io::betti_csv(&table, None))?;
                    if *graded {
                        write!(out, "{}", io::graded_csv(&table, target.vars()))?;
                    }
                }
                Format::Table => {
                    write!(out, "{}", io::betti_text(&table, None))?;
                    if *graded {
                        writeln!(out)?;
                        write!(out, "{}", io::graded_text(&table, target.vars()))?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Bounds { input } => {
            let ideal = cx.ideal(input, err)?;
            let table = bound_table(&ideal, &cx.opts, g.enum_q_cap)?;
            match g.format {
                Format::Json => writeln!(out, "{}", io::write_bounds(&table)?)?,
                Format::Csv => write!(out, "{}", io::bound_csv(&table))?,
                Format::Table => write!(out, "{}", io::bound_text(&table))?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            seed,
            count,
            max_n,
            max_q,
            taylor,
        } => {
            let config = SweepConfig {
                seed: *seed,
                count: *count,
                max_n: *max_n,
                max_q: *max_q,
                opts: cx.opts,
                taylor: *taylor,
            };
            let report = run_sweep(&config);
            match g.format {
                Format::Json => {
                    let checks: serde_json::Map<String, serde_json::Value> = Check::ALL
                        .iter()
                        .map(|&c| (c, report.tally(c)))
                        .filter(|(_, (_, run))| *run > 0)
                        .map(|(c, (passed, run))| {
                            (
                                c.name().to_string(),
                                json!({ "passed": passed, "run": run }),
                            )
                        })
                        .collect();
                    let counterexamples: Vec<serde_json::Value> = report
                        .outcomes
                        .iter()
                        .filter(|o| !o.passed())
                        .map(|o| {
                            let failed: Vec<serde_json::Value> = o
                                .results
                                .iter()
                                .filter_map(|(c, r)| {
                                    r.as_ref()
                                        .err()
                                        .map(|e| json!({ "check": c.name(), "detail": e }))
                                })
                                .collect();
                            json!({ "index": o.index, "ideal": o.ideal, "failed": failed })
                        })
                        .collect();
                    let v = json!({
                        "seed": seed,
                        "count": count,
                        "max_n": max_n,
                        "max_q": max_q,
                        "field": cx.opts.field.to_string(),
                        "checks": checks,
                        "fixture": report.fixture.as_ref().map(|r| if r.is_ok() { "PASS" } else { "FAIL" }),
                        "counterexamples": counterexamples,
                        "result": if report.passed() { "PASS" } else { "FAIL" },
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                Format::Table | Format::Csv => write!(out, "{}", report.to_text())?,
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}
