//! Command line front end. Every run writes a `#` provenance header ahead of
//! CSV or table output; JSON output carries the same data in a field.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::partitions::{partition_series, WeightConfig};
use crate::{acceptance, asymptotics, circle, saddle, sieve, special, weyl};

#[derive(Debug, Parser)]
#[command(name = "semipart", version, about = "Partitions into semiprimes: exact counts, asymptotics and circle-method checks")]
struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "SEMIPART_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantChoice {
    Both,
    #[value(name = "theorem-1")]
    Theorem1,
    #[value(name = "theorem-7.2")]
    Theorem72,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Semiprime parts up to a limit, or weighted counts per residue class.
    Sieve {
        #[arg(long)]
        limit: u64,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exact partition counts p(0..=nmax).
    Count {
        #[arg(long)]
        set: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exact, saddle and closed-form log counts side by side.
    Asympt {
        #[arg(long)]
        set: String,
        #[arg(long, num_args = 1.., required = true)]
        n: Vec<u64>,
        #[arg(long, value_enum, default_value = "both")]
        variant: VariantChoice,
        /// Largest n for which exact counts are computed.
        #[arg(long, default_value_t = 20_000)]
        exact_budget: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Saddle point and the log estimate it gives.
    Saddle {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        set: String,
        #[arg(long)]
        json: bool,
    },
    /// Coefficient recovery from samples on a circle, or a profile of Re Phi.
    Circle {
        #[arg(long, required_unless_present = "profile")]
        n: Option<u64>,
        #[arg(long, default_value = "p2sharp")]
        set: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long)]
        profile: bool,
        #[arg(long = "X")]
        x: Option<f64>,
        #[arg(long, default_value_t = 4096)]
        grid: usize,
        /// Arc exponent A; arcs are only built when given.
        #[arg(long = "arc-exponent")]
        arc_exponent: Option<f64>,
        /// Permit A <= 18.
        #[arg(long)]
        allow_small_a: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// |S2| against the double Weyl bound at seeded frequencies.
    Weyl {
        #[arg(long = "X")]
        x: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Constants with certified error bounds.
    Constants {
        #[arg(long)]
        json: bool,
    },
    /// Laplace integral against its asymptotic.
    LaplaceCheck {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        b: f64,
        #[arg(long = "L")]
        l: f64,
        #[arg(long)]
        json: bool,
    },
    /// Runs the acceptance suite and writes a markdown summary.
    Report {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn provenance(command: &Command) -> String {
    format!("# semipart {}\n# run: {:?}\n", env!("CARGO_PKG_VERSION"), command)
}

fn provenance_json(command: &Command) -> Value {
    json!({ "version": env!("CARGO_PKG_VERSION"), "run": format!("{command:?}") })
}

/// CSV text with a header row.
fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes header plus body to the path if given, else to `out`.
fn emit(out: &mut dyn Write, err: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text)?;
            writeln!(err, "wrote {}", p.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.10}")).unwrap_or_default()
}

fn to_json(v: &impl serde::Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Io(std::io::Error::other(e)))
}

fn write_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    writeln!(out, "{s}")?;
    Ok(())
}

/// Runs one parsed command; `Ok(code)` carries non-error exit codes such as partial output.
fn run(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let header = provenance(command);
    match command {
        Command::Sieve { limit, modulus, csv } => {
            let body = match modulus {
                None => csv_text(
                    &["value", "weight"],
                    sieve::semiprime_parts(*limit).into_iter().map(|p| vec![p.value.to_string(), p.weight.to_string()]),
                )?,
                Some(q) => {
                    let mut rows = Vec::new();
                    for ell in 1..=*q {
                        if num_integer::gcd(ell, *q) == 1 {
                            let c = sieve::semiprime_count_mod(*limit, *q, ell % q)?;
                            rows.push(vec![c.t.to_string(), c.q.to_string(), c.ell.to_string(), c.count.to_string()]);
                        }
                    }
                    csv_text(&["t", "q", "ell", "count"], rows)?
                }
            };
            emit(out, err, csv.as_ref(), &(header + &body))?;
        }
        Command::Count { set, nmax, csv } => {
            let series = partition_series(WeightConfig::from_set_name(set)?, *nmax)?;
            let body = csv_text(
                &["n", "count"],
                series.counts.iter().enumerate().map(|(n, c)| vec![n.to_string(), c.to_string()]),
            )?;
            emit(out, err, csv.as_ref(), &(header + &body))?;
        }
        Command::Asympt { set, n, variant, exact_budget, csv } => {
            let config = WeightConfig::from_set_name(set)?;
            let top = n.iter().copied().max().unwrap_or(0).min(*exact_budget);
            let series = partition_series(config, top as usize)?;
            let report = asymptotics::comparison_report(n, config, Some(&series))?;
            let (show1, show72) = match variant {
                VariantChoice::Both => (true, true),
                VariantChoice::Theorem1 => (true, false),
                VariantChoice::Theorem72 => (false, true),
            };
            let fit = report.fit.as_ref().map(|f| format!("{:.6}", f.c3_hat)).unwrap_or_default();
            let rows = report.rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    opt(r.log_exact),
                    opt(r.log_saddle),
                    opt(r.log_thm1.filter(|_| show1)),
                    opt(r.log_thm72.filter(|_| show72)),
                    fit.clone(),
                ]
            });
            let body = csv_text(&["n", "log_exact", "log_saddle", "log_thm1", "log_thm72", "fit_c3hat"], rows)?;
            emit(out, err, csv.as_ref(), &(header + &body))?;
            if report.partial {
                writeln!(err, "partial output: exact counts limited to n <= {exact_budget}")?;
                return Ok(3);
            }
        }
        Command::Saddle { n, set, json } => {
            let config = WeightConfig::from_set_name(set)?;
            let sol = saddle::solve_saddle(*n, config)?;
            let log_estimate = saddle::saddle_estimate_from(&sol);
            let difference = log_estimate - sol.x.ln();
            if *json {
                let mut v = to_json(&sol)?;
                v["log_estimate"] = json!(log_estimate);
                v["log_difference_estimate"] = json!(difference);
                v["provenance"] = provenance_json(command);
                write_json(out, &v)?;
            } else {
                write!(out, "{header}")?;
                writeln!(out, "n {}\nset {}\nX {:.12}\nrho {:.15}", sol.n, sol.config, sol.x, sol.rho)?;
                for (m, v) in sol.phi_moments.iter().enumerate() {
                    writeln!(out, "moment_{m} {v:.12}")?;
                }
                writeln!(out, "log_psi {:.12}\nlog_estimate {log_estimate:.12}\nlog_difference_estimate {difference:.12}", sol.log_psi)?;
            }
        }
        Command::Circle { n, set, samples, rho, profile, x, grid, arc_exponent, allow_small_a, csv, json } => {
            let config = WeightConfig::from_set_name(set)?;
            if *profile {
                let x = x.ok_or_else(|| Error::Domain("--profile needs --X".into()))?;
                let arcs = arc_exponent.map(|a| circle::build_arcs(x, a, *allow_small_a)).transpose()?;
                let p = circle::profile_phi(x, config, *grid, arcs.as_ref())?;
                let body = csv_text(
                    &["alpha", "re_phi", "abs_psi"],
                    p.rows.iter().map(|r| vec![format!("{:.12}", r.alpha), format!("{:.10}", r.re_phi), format!("{:.6e}", r.abs_psi)]),
                )?;
                let mut summary = format!("# phi_rho: {:.10}\n# re_phi_half_ratio: {:.6}\n", p.phi_rho, p.half_ratio);
                if let Some(m) = p.max_nonprincipal_ratio {
                    summary += &format!("# max_nonprincipal_ratio: {m:.6}\n");
                }
                emit(out, err, csv.as_ref(), &(header + &summary + &body))?;
            } else {
                let n = n.ok_or_else(|| Error::Domain("recovery needs --n".into()))?;
                let rec = match (samples, rho) {
                    (None, None) => circle::recover_coefficient_auto(n, config, None)?,
                    _ => {
                        let rho = rho.unwrap_or_else(|| circle::default_rho(n, config));
                        let samples = samples.unwrap_or_else(|| ((4 * n).max(64) as usize).next_power_of_two());
                        circle::recover_coefficient(n, config, samples, rho, None)?
                    }
                };
                if *json {
                    let mut v = to_json(&rec)?;
                    v["provenance"] = provenance_json(command);
                    write_json(out, &v)?;
                } else {
                    write!(out, "{header}")?;
                    writeln!(
                        out,
                        "# N = {}, rho = {}, raw = {}, alias bound = {:e}, rounding bound = {:e}",
                        rec.n_samples, rec.rho, rec.raw, rec.alias_bound, rec.rounding_bound
                    )?;
                    writeln!(out, "{}", rec.rounded)?;
                }
            }
        }
        Command::Weyl { x, samples, seed, csv } => {
            let reports = weyl::bound_ratio_sweep(*x, *samples, *seed)?;
            let max = reports.iter().map(|r| r.ratio).fold(0.0, f64::max);
            let body = csv_text(
                &["alpha", "a", "q", "err", "abs_s2", "bound", "ratio"],
                reports.iter().map(|r| {
                    vec![
                        format!("{:.17}", r.alpha),
                        r.a.to_string(),
                        r.q.to_string(),
                        format!("{:.6e}", r.err),
                        format!("{:.6}", r.abs_s2),
                        format!("{:.6e}", r.bound),
                        format!("{:.6e}", r.ratio),
                    ]
                }),
            )?;
            emit(out, err, csv.as_ref(), &(header + &format!("# max_ratio: {max:.6e}\n") + &body))?;
        }
        Command::Constants { json } => {
            let table = special::constants_table();
            if *json {
                let mut m = Map::new();
                let mut bounds = Map::new();
                for (name, v) in &table {
                    m.insert(name.clone(), json!(v.value));
                    bounds.insert(name.clone(), json!(v.abs_error_bound));
                }
                m.insert("abs_error_bounds".into(), Value::Object(bounds));
                m.insert("provenance".into(), provenance_json(command));
                write_json(out, &Value::Object(m))?;
            } else {
                let body = csv_text(
                    &["name", "value", "error"],
                    table.iter().map(|(n, v)| vec![n.clone(), format!("{:.17}", v.value), format!("{:.3e}", v.abs_error_bound)]),
                )?;
                write!(out, "{header}{body}")?;
            }
        }
        Command::LaplaceCheck { a, lambda, b, l, json } => {
            let r = saddle::laplace_check(saddle::LaplaceParams::new(*a, *lambda, *b, *l))?;
            if *json {
                let mut v = to_json(&r)?;
                v["provenance"] = provenance_json(command);
                write_json(out, &v)?;
            } else {
                write!(out, "{header}")?;
                writeln!(
                    out,
                    "integral {:.12e}\nasymptotic {:.12e}\nratio {:.10}\nquadrature_error {:.3e}\ntail_bound {:.3e}",
                    r.integral, r.asymptotic, r.ratio, r.quadrature_error, r.tail_bound
                )?;
            }
        }
        Command::Report { out: path } => {
            let results = acceptance::run_all();
            for r in &results {
                writeln!(err, "{}", r.line())?;
            }
            let md = acceptance::markdown(&results);
            match path {
                Some(p) => std::fs::write(p, md)?,
                None => out.write_all(md.as_bytes())?,
            }
        }
    }
    Ok(0)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn dispatch(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    let result = match cli.threads {
        Some(t) if t > 0 => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => {
                let (mut o, mut e) = (Vec::new(), Vec::new());
                let r = pool.install(|| run(&cli.command, &mut o, &mut e));
                let _ = out.write_all(&o);
                let _ = err.write_all(&e);
                r
            }
            Err(e) => Err(Error::Config(format!("thread pool: {e}"))),
        },
        Some(_) => Err(Error::Config("--threads must be positive".into())),
        None => run(&cli.command, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
