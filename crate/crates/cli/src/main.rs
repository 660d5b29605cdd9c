use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multising::germlab::{
    verify_divisibility_suite, verify_iii22a0, verify_quadruple, verify_tpa1, whitney_chain, Report,
};
use multising::grassmann::{GrassClass, GrassRing, Partition, CALIBRATED_ORIENTATION};
use multising::kazarian::{expand_m, expand_n, MultiSingularity};
use multising::polycore::{json as polyjson, render, GradedPoly};
use multising::secant::{count_secant, lehn_transform, ChiIndex, SecantCount, SecantProblem};
use multising::thomlib::{ResidueTable, Singularity, ThomSeries};
use multising::{Error, Rat};

#[derive(Parser, Debug)]
#[command(name = "multising", version, about = "Multisingularity residues, interpolation checks and secant counts")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Refuse to compute results of higher weighted degree.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Plug-in Thom series (JSON); may be repeated.
    #[arg(long, global = true)]
    series_file: Vec<PathBuf>,
    /// Reserved: every computation is deterministic.
    #[arg(long, global = true)]
    seed_free: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Target,
    Source,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Quadruple,
    Iii22a0,
    Tpa1,
    Divisibility,
    Whitney,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Residue polynomial of a multisingularity, e.g. `--multi A0^4`.
    Residue {
        #[arg(long)]
        multi: MultiSingularity,
        #[arg(long)]
        ell: i64,
    },
    /// Thom polynomial of a monosingularity at relative dimension `ell`.
    Thom {
        #[arg(long)]
        singularity: Singularity,
        #[arg(long)]
        ell: i64,
    },
    /// Kazarian expansion of the target (`n`) or source (`m`) class.
    Expand {
        #[arg(long)]
        multi: MultiSingularity,
        #[arg(long, value_enum, default_value_t = Side::Target)]
        side: Side,
        /// Required for the source side.
        #[arg(long)]
        ell: Option<i64>,
        /// Use reduced (barred) classes on the source side.
        #[arg(long)]
        barred: bool,
    },
    /// Run a verification suite; exit code 1 if any identity fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        ell: i64,
    },
    /// Grassmannian computations.
    Grass {
        #[command(subcommand)]
        op: GrassOp,
    },
    /// Secant plane counts in the invariants chi_u.
    Secant {
        /// Dimension of the variety.
        #[arg(long)]
        a: u32,
        /// Number of points; anything but 4 needs `--experimental`.
        #[arg(long, default_value_t = 4)]
        points: u32,
        #[arg(long)]
        experimental: bool,
        /// JSON file mapping `"(1,0)"` style keys to rationals.
        #[arg(long)]
        chi: Option<PathBuf>,
        /// Also rewrite the a = 2 count in d, pi, kappa, e.
        #[arg(long)]
        lehn: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GrassOp {
    /// Integrate a class given as a JSON list of {partition, coeff}, inline or as a file path.
    Integrate {
        /// Rank of the tautological subbundle
        #[arg(long)]
        k: u32,
        /// Ambient dimension
        #[arg(long)]
        n: u32,
        /// `[{"partition": [2,1], "coeff": "3/2"}, ...]` or a path to such a file
        #[arg(long)]
        expr: String,
    },
}

/// Failures that map to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> UsageError {
        UsageError(e.to_string())
    }
}

impl From<multising::ParseError> for UsageError {
    fn from(e: multising::ParseError) -> UsageError {
        UsageError(e.to_string())
    }
}

struct Output {
    payload: String,
    ok: bool,
}

impl Output {
    fn ok(payload: String) -> Output {
        Output { payload, ok: true }
    }
}

fn load_table(files: &[PathBuf]) -> Result<ResidueTable, UsageError> {
    let mut table = ResidueTable::new();
    for f in files {
        let text = std::fs::read_to_string(f).map_err(|e| UsageError(format!("{}: {}", f.display(), e)))?;
        table = table.with_plugin(ThomSeries::from_json(&text)?);
    }
    Ok(table)
}

fn check_degree(cli: &Cli, degree: i64) -> Result<(), UsageError> {
    match cli.max_degree {
        Some(m) if degree > m as i64 => {
            Err(UsageError(format!("result has degree {}, above --max-degree {}", degree, m)))
        }
        _ => Ok(()),
    }
}

fn render_poly(p: &GradedPoly, format: Format, meta: Value) -> String {
    match format {
        Format::Latex => render::to_latex(p),
        Format::Text => render::to_text_factored(p),
        Format::Json => {
            let mut v = meta;
            v["poly"] = polyjson::to_json_value(p);
            v["text"] = Value::String(render::to_text(p));
            serde_json::to_string_pretty(&v).expect("serializable")
        }
    }
}

fn run(cli: &Cli) -> Result<Output, UsageError> {
    let table = load_table(&cli.series_file)?;
    match &cli.command {
        Command::Residue { multi, ell } => {
            check_degree(cli, multi.codim(*ell))?;
            let res = table.residue(multi.parts(), *ell)?;
            let meta = json!({ "multi": multi.to_string(), "ell": ell, "provenance": res.provenance.label() });
            Ok(Output::ok(render_poly(&res.poly, cli.format, meta)))
        }
        Command::Thom { singularity, ell } => {
            check_degree(cli, singularity.codim(*ell))?;
            let res = table.residue(&[*singularity], *ell)?;
            let meta =
                json!({ "singularity": singularity.to_string(), "ell": ell, "provenance": res.provenance.label() });
            Ok(Output::ok(render_poly(&res.poly, cli.format, meta)))
        }
        Command::Expand { multi, side, ell, barred } => expand(cli, &table, multi, *side, *ell, *barred),
        Command::Verify { suite, ell } => verify(cli.format, *suite, *ell),
        Command::Grass { op: GrassOp::Integrate { k, n, expr } } => grass_integrate(cli.format, *k, *n, expr),
        Command::Secant { a, points, experimental, chi, lehn } => {
            if *points != 4 && !experimental {
                return Err(UsageError(format!("{} points needs --experimental", points)));
            }
            let problem = SecantProblem::with_points(*a, *points)?;
            check_degree(cli, problem.dim_g() as i64)?;
            let count = count_secant(problem, CALIBRATED_ORIENTATION, &table)?;
            secant_output(cli.format, &count, chi.as_ref(), *lehn)
        }
    }
}

fn expand(
    cli: &Cli,
    table: &ResidueTable,
    multi: &MultiSingularity,
    side: Side,
    ell: Option<i64>,
    barred: bool,
) -> Result<Output, UsageError> {
    match side {
        Side::Target => {
            let e = expand_n(multi);
            let payload = match cli.format {
                Format::Text => format!("n_{} = {}", multi, e),
                Format::Latex => e.to_latex(),
                Format::Json => {
                    let terms: Vec<Value> = e
                        .terms()
                        .map(|(prod, c)| {
                            let symbols: Vec<String> = prod.iter().map(|s| s.to_string()).collect();
                            json!({ "coeff": c.to_fraction_string(), "product": symbols })
                        })
                        .collect();
                    serde_json::to_string_pretty(
                        &json!({ "multi": multi.to_string(), "side": "target", "terms": terms }),
                    )
                    .expect("serializable")
                }
            };
            Ok(Output::ok(payload))
        }
        Side::Source => {
            let ell = ell.ok_or_else(|| UsageError("--side source needs --ell".into()))?;
            check_degree(cli, multi.codim(ell))?;
            let e = expand_m(multi, ell, table, barred)?;
            let payload = match cli.format {
                Format::Text => e.to_string(),
                Format::Latex => e.to_latex(),
                Format::Json => {
                    let terms: Vec<Value> = e
                        .ordered()
                        .into_iter()
                        .map(|(sym, p)| {
                            json!({
                                "pulled": sym.map(|s| s.to_string()),
                                "coeff": polyjson::to_json_value(p),
                                "text": render::to_text(p),
                            })
                        })
                        .collect();
                    let v = json!({ "multi": multi.to_string(), "side": "source", "ell": ell, "barred": barred, "terms": terms });
                    serde_json::to_string_pretty(&v).expect("serializable")
                }
            };
            Ok(Output::ok(payload))
        }
    }
}

fn verify(format: Format, suite: Suite, ell: i64) -> Result<Output, UsageError> {
    let report = match suite {
        Suite::Quadruple => verify_quadruple(ell)?,
        Suite::Iii22a0 => verify_iii22a0(ell)?,
        Suite::Tpa1 => verify_tpa1(ell)?,
        Suite::Divisibility => verify_divisibility_suite(ell)?,
        Suite::Whitney => Report { suite: "whitney".into(), ell: 0, checks: whitney_chain()? },
    };
    let payload = match format {
        Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("serializable"),
        _ => report.to_text(),
    };
    Ok(Output { payload, ok: report.all_hold() })
}

fn grass_integrate(format: Format, k: u32, n: u32, expr: &str) -> Result<Output, UsageError> {
    let ring = GrassRing::new(k, n)?;
    let text = if expr.trim_start().starts_with('[') {
        expr.to_string()
    } else {
        std::fs::read_to_string(expr).map_err(|e| UsageError(format!("{}: {}", expr, e)))?
    };
    let items: Vec<Value> = serde_json::from_str(&text).map_err(|e| UsageError(format!("class: {}", e)))?;
    let mut class = GrassClass::zero(ring);
    for item in items {
        let parts: Vec<u32> = serde_json::from_value(item.get("partition").cloned().unwrap_or(Value::Null))
            .map_err(|e| UsageError(format!("partition: {}", e)))?;
        let p = Partition::new(parts)?;
        if !ring.fits(&p) {
            return Err(UsageError(format!("partition {} is outside the {}x{} box", p, k, n - k)));
        }
        let coeff: Rat = match item.get("coeff") {
            Some(Value::String(s)) => s.parse()?,
            Some(Value::Number(x)) => x.to_string().parse()?,
            None => Rat::one(),
            Some(other) => return Err(UsageError(format!("bad coefficient {}", other))),
        };
        class = class.checked_add(&GrassClass::from_terms(ring, [(p, coeff)]))?;
    }
    let value = class.integrate();
    let payload = match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({ "k": k, "n": n, "integral": value.to_fraction_string() }))
                .expect("serializable")
        }
        _ => value.to_fraction_string(),
    };
    Ok(Output::ok(payload))
}

fn read_chi(path: &PathBuf) -> Result<BTreeMap<ChiIndex, Rat>, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {}", path.display(), e)))?;
    let map: BTreeMap<String, Value> =
        serde_json::from_str(&text).map_err(|e| UsageError(format!("chi file: {}", e)))?;
    let mut out = BTreeMap::new();
    for (k, v) in map {
        let value: Rat = match v {
            Value::String(s) => s.parse()?,
            Value::Number(x) => x.to_string().parse()?,
            other => return Err(UsageError(format!("bad value for {}: {}", k, other))),
        };
        out.insert(k.parse::<ChiIndex>()?, value);
    }
    Ok(out)
}

fn secant_output(format: Format, count: &SecantCount, chi: Option<&PathBuf>, lehn: bool) -> Result<Output, UsageError> {
    let p = count.problem;
    let value = match chi {
        Some(path) => Some(count.evaluate(&read_chi(path)?)?),
        None => None,
    };
    let lehn = if lehn {
        if p.a != 2 || p.r != 4 {
            return Err(UsageError("--lehn applies to --a 2 with 4 points".into()));
        }
        Some(lehn_transform(&count.scaled)?)
    } else {
        None
    };
    let factor = format!("{}!N_{}", p.r, p.a);
    let payload = match format {
        Format::Json => {
            let mut v = json!({
                "a": p.a,
                "points": p.r,
                "orientation": CALIBRATED_ORIENTATION,
                "provenance": count.provenance.label(),
                "caveat": multising::secant::ADMISSIBILITY_CAVEAT,
                "scaled": count.scaled.to_json_value(),
                "scaledText": count.scaled.to_text(),
                "count": count.count.to_json_value(),
            });
            if let Some(x) = &value {
                v["value"] = Value::String(x.to_fraction_string());
            }
            if let Some(l) = &lehn {
                v["lehn"] =
                    json!({ "poly": polyjson::to_json_value(&l.poly), "text": l.to_text(), "roundTrip": l.round_trip });
            }
            serde_json::to_string_pretty(&v).expect("serializable")
        }
        Format::Latex => {
            let mut s = count.scaled.to_latex();
            if let Some(l) = &lehn {
                s.push_str(&format!("\n{}", l.to_latex()));
            }
            if let Some(x) = &value {
                s.push_str(&format!("\nN_{{{}}} = {}", p.a, x.to_fraction_string()));
            }
            s
        }
        Format::Text => {
            let mut s = format!("{} = {}", factor, count.scaled);
            if count.provenance != multising::thomlib::Provenance::Proved {
                s.push_str(&format!("\n({})", count.provenance.label()));
            }
            if let Some(l) = &lehn {
                s.push_str(&format!("\n{} = {}", factor, l.to_text()));
            }
            if let Some(x) = &value {
                s.push_str(&format!("\nN_{} = {}", p.a, x.to_fraction_string()));
            }
            s
        }
    };
    Ok(Output::ok(payload))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", out.payload);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
