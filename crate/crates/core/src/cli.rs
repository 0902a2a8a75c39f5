//! Argument parsing and dispatch for the `mg` binary.
//!
//! Exit codes: 0 success, 1 verification failure (or other runtime error),
//! 2 usage error, 3 capacity exceeded. Every flag can also be set through an
//! `MG_`-prefixed environment variable.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::census::{euler_bfile, observation_scan, riordan_identity_check, CensusTable};
use crate::comb::{
    census_from_tree, comb_strategy, path_strategy, star_strategy, theta_strategy, tooth_breakdown,
};
use crate::complexes::{independence_complex, matching_complex, DEFAULT_FACE_CAP};
use crate::error::{invalid, Error, Result};
use crate::graphs::{build_graph, Family, Graph};
use crate::homology::{reduced_homology_with_cap, DEFAULT_HOMOLOGY_CAP};
use crate::morse::run_strategy;
use crate::verify::{run_suite, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "mg",
    version,
    about = "Morse matchings, cell censuses and homology for comb graphs"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json, env = "MG_FORMAT")]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true, env = "MG_OUT")]
    pub out: Option<PathBuf>,

    /// Largest face poset to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_FACE_CAP, env = "MG_FACE_CAP")]
    pub face_cap: usize,

    /// Largest complex handed to the homology computation.
    #[arg(long, global = true, default_value_t = DEFAULT_HOMOLOGY_CAP, env = "MG_HOMOLOGY_CAP")]
    pub homology_cap: usize,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0, env = "MG_SEED")]
    pub seed: u64,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, env = "MG_JOBS")]
    pub jobs: Option<usize>,

    /// Print progress to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

/// A graph named by family and parameters. Paths, cycles and grids use `--n`
/// only.
#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long, value_enum, default_value_t = Family::Delta, env = "MG_FAMILY")]
    pub family: Family,
    #[arg(long, env = "MG_M")]
    pub m: Option<u32>,
    #[arg(long, allow_negative_numbers = true, env = "MG_N")]
    pub n: i64,
}

impl GraphArgs {
    fn build(&self) -> Result<Graph> {
        let params = match self.family {
            Family::Path | Family::Cycle | Family::Grid2 => vec![self.n],
            _ => vec![i64::from(self.m()?), self.n],
        };
        build_graph(self.family, &params)
    }

    fn m(&self) -> Result<u32> {
        self.m.ok_or_else(|| {
            invalid(format!(
                "--m is required for the {} family",
                self.family.name()
            ))
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a graph as JSON.
    Graph(GraphArgs),
    /// F-vector (and optionally faces) of an independence or matching complex.
    Complex {
        #[command(flatten)]
        graph: GraphArgs,
        /// Use the matching complex M(G) instead of Ind(G).
        #[arg(long)]
        matching: bool,
        /// Include the face list (JSON only).
        #[arg(long)]
        faces: bool,
    },
    /// Closed-form census table C^d_n for n ≤ nmax.
    Census {
        #[arg(long, env = "MG_M")]
        m: u32,
        #[arg(long, default_value_t = 10, env = "MG_NMAX")]
        nmax: usize,
        /// Print the Euler characteristic sequence as an OEIS b-file instead.
        #[arg(long)]
        oeis: bool,
    },
    /// Run a pivot script and report the critical-cell census.
    Morse {
        #[command(flatten)]
        graph: GraphArgs,
        /// Include the full matching tree (JSON only).
        #[arg(long)]
        tree: bool,
        /// Include the per-tooth census of a comb (JSON only).
        #[arg(long)]
        breakdown: bool,
    },
    /// Reduced integral homology of an independence or matching complex.
    Homology {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        matching: bool,
    },
    /// Check the m = 2 census against the Riordan array.
    Riordan {
        #[arg(long, default_value_t = 30, env = "MG_NMAX")]
        nmax: usize,
    },
    /// Test the free-homology excess inequality at ⌊(9n+9)/13⌋ for m = 2.
    Scan {
        #[arg(long, default_value_t = 99, env = "MG_NMAX")]
        nmax: usize,
    },
    /// Run the cross-check suite; exit 1 on any failure.
    Verify {
        #[arg(long, default_value_t = 2, env = "MG_M")]
        m: u32,
        #[arg(long, default_value_t = 5, env = "MG_NMAX")]
        nmax: i64,
    },
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("mg: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::UnknownVertex(_) => 2,
        Error::Capacity { .. } => 3,
        _ => 1,
    }
}

/// Executes one subcommand, writing to `--out` or stdout. Returns the exit
/// code for a completed run (1 when a check failed).
pub fn run(config: &RunConfig) -> Result<i32> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        if j == 0 {
            return Err(invalid("--jobs must be at least 1"));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let mut buf = Vec::new();
    let code = pool.install(|| dispatch(config, &mut buf))?;
    match &config.out {
        Some(path) => std::fs::write(path, &buf)?,
        None => std::io::stdout().lock().write_all(&buf)?,
    }
    Ok(code)
}

fn json_line(out: &mut Vec<u8>, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.push(b'\n');
    Ok(())
}

fn csv_rows<R: IntoIterator<Item = S>, S: AsRef<[u8]>>(
    out: &mut Vec<u8>,
    header: &[&str],
    rows: impl IntoIterator<Item = R>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn dispatch(config: &RunConfig, out: &mut Vec<u8>) -> Result<i32> {
    let cap = config.face_cap;
    match &config.command {
        Command::Graph(g) => {
            let g = g.build()?;
            json_line(out, &g.export())?;
        }
        Command::Complex {
            graph,
            matching,
            faces,
        } => {
            let g = graph.build()?;
            let c = if *matching {
                matching_complex(&g, cap)?
            } else {
                independence_complex(&g, cap)?
            };
            match config.format {
                Format::Json => {
                    let mut v = serde_json::to_value(c.export(*faces))?;
                    v["reduced_euler"] = c.reduced_euler().into();
                    json_line(out, &v)?;
                }
                Format::Csv => csv_rows(
                    out,
                    &["d", "count"],
                    c.f_vector()
                        .0
                        .iter()
                        .enumerate()
                        .map(|(i, f)| [(i as i64 - 1).to_string(), f.to_string()]),
                )?,
            }
        }
        Command::Census { m, nmax, oeis } => {
            if *oeis {
                out.extend_from_slice(euler_bfile(*m, *nmax)?.as_bytes());
                return Ok(0);
            }
            let t = CensusTable::new(*m, *nmax)?;
            match config.format {
                Format::Json => json_line(out, &t.to_json())?,
                Format::Csv => t.write_csv(&mut *out)?,
            }
        }
        Command::Morse {
            graph,
            tree,
            breakdown,
        } => {
            let g = graph.build()?;
            let n = graph.n;
            let to_u32 =
                |x: i64| u32::try_from(x).map_err(|_| invalid(format!("n must be >= 1, got {x}")));
            let script = match graph.family {
                Family::Delta => comb_strategy(graph.m()?, n)?,
                Family::Star => star_strategy(graph.m()?, to_u32(n)?)?,
                Family::Theta => theta_strategy(graph.m()?, to_u32(n)?)?,
                Family::Path => path_strategy(to_u32(n)?)?,
                other => {
                    return Err(invalid(format!(
                        "no pivot script for the {} family",
                        other.name()
                    )))
                }
            };
            let t = run_strategy(&g, &script)?;
            let census = census_from_tree(&t);
            match config.format {
                Format::Json => {
                    let mut v = serde_json::to_value(&census)?;
                    if *tree {
                        v["tree"] = serde_json::to_value(t.export())?;
                    }
                    if *breakdown {
                        let teeth: serde_json::Map<String, serde_json::Value> = tooth_breakdown(&t)
                            .into_iter()
                            .map(|(k, c)| {
                                let key = k.map_or_else(|| "none".to_string(), |k| k.to_string());
                                Ok((key, serde_json::to_value(c.counts)?))
                            })
                            .collect::<Result<_>>()?;
                        v["teeth"] = teeth.into();
                    }
                    json_line(out, &v)?;
                }
                Format::Csv => csv_rows(out, &["m", "n", "d", "count"], census.csv_rows())?,
            }
        }
        Command::Homology { graph, matching } => {
            let g = graph.build()?;
            let c = if *matching {
                matching_complex(&g, cap)?
            } else {
                independence_complex(&g, cap)?
            };
            let r = reduced_homology_with_cap(&c, config.homology_cap)?;
            match config.format {
                Format::Json => json_line(out, &r)?,
                Format::Csv => csv_rows(
                    out,
                    &["d", "betti", "torsion"],
                    r.dims.iter().map(|x| {
                        let t: Vec<String> = x.torsion.iter().map(ToString::to_string).collect();
                        [x.d.to_string(), x.betti.to_string(), t.join(";")]
                    }),
                )?,
            }
        }
        Command::Riordan { nmax } => {
            let r = riordan_identity_check(*nmax);
            match config.format {
                Format::Json => json_line(out, &r)?,
                Format::Csv => csv_rows(
                    out,
                    &["n_max", "forward", "reduced", "inverse"],
                    [[
                        r.n_max.to_string(),
                        r.forward.to_string(),
                        r.reduced.to_string(),
                        r.inverse.to_string(),
                    ]],
                )?,
            }
            return Ok(if r.holds() { 0 } else { 1 });
        }
        Command::Scan { nmax } => {
            let s = observation_scan(*nmax);
            match config.format {
                Format::Json => json_line(
                    out,
                    &serde_json::json!({ "n_max": s.n_max, "exceptions": s.exceptions }),
                )?,
                Format::Csv => csv_rows(
                    out,
                    &["n", "delta", "holds"],
                    s.rows
                        .iter()
                        .map(|r| [r.n.to_string(), r.delta.to_string(), r.holds.to_string()]),
                )?,
            }
        }
        Command::Verify { m, nmax } => {
            let report = run_suite(&SuiteConfig {
                m: *m,
                n_max: *nmax,
                face_cap: cap,
                homology_cap: config.homology_cap,
                seed: config.seed,
            })?;
            if config.verbose > 0 {
                for c in &report.checks {
                    eprintln!("{c}");
                }
            }
            match config.format {
                Format::Json => json_line(out, &report)?,
                Format::Csv => csv_rows(
                    out,
                    &["name", "status", "detail"],
                    report.checks.iter().map(|c| {
                        let status = serde_json::to_value(c.status).expect("plain enum");
                        [
                            c.name.clone(),
                            status.as_str().unwrap_or_default().to_string(),
                            c.detail.clone(),
                        ]
                    }),
                )?,
            }
            return Ok(if report.passed { 0 } else { 1 });
        }
    }
    Ok(0)
}
