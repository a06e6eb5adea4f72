use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use virtua::fitting::{self, FittingLadder};
use virtua::freemod::{self, FreeComplex, Presentation};
use virtua::io;
use virtua::limits;
use virtua::virtuality;
use virtua::{CoxRing, Error, Ideal, Multidegree};

const SCHEMA: &str = "virtua/1";

#[derive(Parser)]
#[command(name = "virtua", version, about = "Virtual resolutions over Cox rings")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Ring descriptor (JSON).
    #[arg(long, global = true)]
    ring: Option<PathBuf>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized rank pre-pass.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget; exceeding it exits with status 3.
    #[arg(long, global = true)]
    max_seconds: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a complex is a virtual resolution.
    Check {
        #[arg(long)]
        complex: PathBuf,
        /// Also run the homology torsion oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Minimal free resolution of S/I or of a presented module.
    Mfr {
        #[command(flatten)]
        module: ModuleInput,
        #[arg(long, default_value_t = 16)]
        maxlen: usize,
    },
    /// Virtual resolution of a pair (M, d) by truncating the minimal resolution.
    VresPair {
        #[command(flatten)]
        module: ModuleInput,
        #[arg(long, value_parser = parse_degree)]
        degree: Multidegree,
        #[arg(long, default_value_t = 16)]
        maxlen: usize,
    },
    /// Saturate an ideal.
    Saturate {
        #[arg(long)]
        ideal: PathBuf,
        /// `B` for the irrelevant ideal, or comma-separated variable names.
        #[arg(long, conflicts_with = "by_ideal")]
        by: Option<String>,
        #[arg(long)]
        by_ideal: Option<PathBuf>,
    },
    /// Depth (codimension) of an ideal.
    Depth {
        #[arg(long)]
        ideal: PathBuf,
        /// Saturate by the irrelevant ideal first.
        #[arg(long)]
        saturate: bool,
    },
    /// Fitting ideals of a presentation.
    Fitting {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        saturate: bool,
    },
    /// Rank of a locally free sheaf presented by a matrix, if any.
    LocallyFree {
        #[arg(long)]
        presentation: PathBuf,
    },
    /// Presentation and torsion certificate of a homology module.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        index: usize,
    },
    /// Rank of a differential or of a presentation matrix.
    Rank {
        #[arg(long, conflicts_with = "presentation", requires = "index")]
        complex: Option<PathBuf>,
        #[arg(long)]
        index: Option<usize>,
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ModuleInput {
    /// S/I for the ideal I.
    #[arg(long)]
    ideal: Option<PathBuf>,
    #[arg(long)]
    presentation: Option<PathBuf>,
}

fn parse_degree(s: &str) -> Result<Multidegree, String> {
    Multidegree::parse(s).map_err(|e| e.to_string())
}

struct Failure {
    error: Error,
    context: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, context: None }
    }
}

trait Context<T> {
    fn in_file(self, path: &Path) -> Result<T, Failure>;
}

impl<T> Context<T> for virtua::Result<T> {
    fn in_file(self, path: &Path) -> Result<T, Failure> {
        self.map_err(|error| Failure {
            error,
            context: Some(path.display().to_string()),
        })
    }
}

/// Command result: report body, text rendering, exit status.
struct Outcome {
    report: Value,
    text: String,
    status: u8,
}

struct Session {
    ring: Option<Arc<CoxRing>>,
    seed: u64,
}

impl Session {
    fn new(common: &Common) -> Result<Session, Failure> {
        let ring = match &common.ring {
            Some(p) => Some(io::read_ring(p).in_file(p)?.with_seed(common.seed)),
            None => None,
        };
        Ok(Session {
            ring,
            seed: common.seed,
        })
    }

    fn ring(&self) -> Result<&Arc<CoxRing>, Failure> {
        self.ring
            .as_ref()
            .ok_or_else(|| Error::Parse("--ring is required for this input".into()).into())
    }

    fn complex(&self, path: &Path) -> Result<FreeComplex, Failure> {
        let f = io::read_complex(self.ring.as_ref(), path).in_file(path)?;
        self.reseed_complex(f, path)
    }

    // rings embedded in files carry the default seed
    fn reseed_complex(&self, f: FreeComplex, path: &Path) -> Result<FreeComplex, Failure> {
        if f.ring().seed() == self.seed {
            return Ok(f);
        }
        let ring = f.ring().with_seed(self.seed);
        let file = io::complex_to_file(&f, false);
        let text = serde_json::to_string(&file).map_err(Error::from)?;
        io::complex_from_json(Some(&ring), &text).in_file(path)
    }

    fn presentation(&self, path: &Path) -> Result<Presentation, Failure> {
        let p = io::read_presentation(self.ring.as_ref(), path).in_file(path)?;
        if p.ring().seed() == self.seed {
            return Ok(p);
        }
        let ring = p.ring().with_seed(self.seed);
        let text = serde_json::to_string(&io::presentation_to_file(&p, false)).map_err(Error::from)?;
        io::presentation_from_json(Some(&ring), &text).in_file(path)
    }

    fn ideal(&self, path: &Path) -> Result<Ideal, Failure> {
        io::read_ideal(self.ring()?, path).in_file(path)
    }

    fn module(&self, m: &ModuleInput) -> Result<Presentation, Failure> {
        match (&m.ideal, &m.presentation) {
            (Some(i), _) => Ok(Presentation::cyclic(&self.ideal(i)?)?),
            (None, Some(p)) => self.presentation(p),
            (None, None) => unreachable!("clap requires one module input"),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(s) = cli.common.max_seconds {
        limits::set_time_budget(Some(Duration::from_secs(s)));
    }
    let result = Session::new(&cli.common).and_then(|s| run(&s, &cli.command));
    match result {
        Ok(out) => {
            if cli.common.json {
                let mut report = json!({ "schema": SCHEMA, "seed": cli.common.seed });
                if let (Value::Object(dst), Value::Object(src)) = (&mut report, out.report) {
                    dst.extend(src);
                }
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.status)
        }
        Err(f) => {
            let code = f.error.exit_code() as u8;
            match &f.context {
                Some(c) => eprintln!("error: {c}: {}", f.error),
                None => eprintln!("error: {}", f.error),
            }
            if cli.common.json {
                let report = json!({
                    "schema": SCHEMA,
                    "seed": cli.common.seed,
                    "error": f.error.to_string(),
                    "file": f.context,
                    "exit_code": code,
                });
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            }
            ExitCode::from(code)
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, Failure> {
    Ok(serde_json::to_value(v).map_err(Error::from)?)
}

fn run(s: &Session, command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check { complex, oracle } => check(s, complex, *oracle),
        Command::Mfr { module, maxlen } => {
            let p = s.module(module)?;
            let res = freemod::minimal_free_resolution(&p, *maxlen)?;
            complex_outcome("mfr", &res)
        }
        Command::VresPair { module, degree, maxlen } => {
            let p = s.module(module)?;
            let res = freemod::minimal_free_resolution(&p, *maxlen)?;
            let v = freemod::vres_of_pair(&res, degree)?;
            complex_outcome("vres-pair", &v)
        }
        Command::Saturate { ideal, by, by_ideal } => {
            let ring = s.ring()?;
            let i = s.ideal(ideal)?;
            let sat = match (by.as_deref(), by_ideal) {
                (_, Some(j)) => i.saturate(&s.ideal(j)?)?,
                (None | Some("B"), None) => i.saturate_by_irrelevant(&ring.irrelevant())?,
                (Some(names), None) => {
                    let vars = names
                        .split(',')
                        .map(|n| {
                            let n = n.trim();
                            ring.names()
                                .iter()
                                .position(|x| x == n)
                                .ok_or_else(|| Error::Parse(format!("unknown variable {n}")))
                        })
                        .collect::<virtua::Result<Vec<_>>>()?;
                    i.saturate_by_variables(&vars)?
                }
            };
            let gens = sat.to_strings()?;
            Ok(Outcome {
                report: json!({ "command": "saturate", "generators": gens }),
                text: lines(&gens),
                status: 0,
            })
        }
        Command::Depth { ideal, saturate } => {
            let ring = s.ring()?;
            let mut i = s.ideal(ideal)?;
            if *saturate {
                i = i.saturate_by_irrelevant(&ring.irrelevant())?;
            }
            let d = i.grade()?;
            Ok(Outcome {
                report: json!({ "command": "depth", "saturated": saturate, "depth": to_value(&d)? }),
                text: format!("{d}\n"),
                status: 0,
            })
        }
        Command::Fitting {
            presentation,
            j,
            saturate,
        } => {
            let p = s.presentation(presentation)?;
            let b = p.ring().irrelevant();
            match j {
                Some(j) => {
                    let f = if *saturate {
                        fitting::saturated_fitting(*j, &p, &b)?
                    } else {
                        fitting::fitting_ideal(*j, &p)?
                    };
                    let gens = f.to_strings()?;
                    Ok(Outcome {
                        report: json!({ "command": "fitting", "j": j, "saturated": saturate, "generators": gens }),
                        text: lines(&gens),
                        status: 0,
                    })
                }
                None => {
                    let ladder = FittingLadder::new(&p, &b)?;
                    let mut text = String::new();
                    for step in &ladder.steps {
                        let shown = if *saturate { &step.saturated } else { &step.fitting };
                        text.push_str(&format!("Fitt_{}: {}\n", step.j, show_ideal(shown)?));
                    }
                    Ok(Outcome {
                        report: json!({ "command": "fitting", "ladder": to_value(&ladder)? }),
                        text,
                        status: 0,
                    })
                }
            }
        }
        Command::LocallyFree { presentation } => {
            let p = s.presentation(presentation)?;
            let r = fitting::is_locally_free_rank(&p, &p.ring().irrelevant())?;
            Ok(Outcome {
                report: json!({ "command": "locally-free", "rank": r }),
                text: match r {
                    Some(r) => format!("{r}\n"),
                    None => "none\n".into(),
                },
                status: if r.is_some() { 0 } else { 1 },
            })
        }
        Command::Homology { complex, index } => {
            let f = s.complex(complex)?;
            let h = freemod::homology_presentation(&f, *index)?;
            let cert = virtuality::torsion_certificate(&f, *index, &f.ring().irrelevant())?;
            let text = format!(
                "H_{index}: {} generators, {} relations\nFitt_0: {}\nB-torsion: {}\n",
                h.generators(),
                h.matrix.cols(),
                show_ideal(&cert.fitt0)?,
                cert.torsion
            );
            Ok(Outcome {
                report: json!({
                    "command": "homology",
                    "index": index,
                    "presentation": to_value(&io::presentation_to_file(&h, false))?,
                    "certificate": to_value(&cert)?,
                }),
                text,
                status: 0,
            })
        }
        Command::Rank {
            complex,
            index,
            presentation,
        } => {
            let m = match (complex, presentation) {
                (Some(c), _) => {
                    let f = s.complex(c)?;
                    let i = index.expect("clap requires --index");
                    if i == 0 || i > f.length() {
                        return Err(Error::Shape(format!("index {i} outside 1..={}", f.length())).into());
                    }
                    f.differential(i).clone()
                }
                (None, Some(p)) => s.presentation(p)?.matrix,
                (None, None) => return Err(Error::Parse("rank needs --complex or --presentation".into()).into()),
            };
            let r = freemod::rank(&m)?;
            Ok(Outcome {
                report: json!({ "command": "rank", "rank": r }),
                text: format!("{r}\n"),
                status: 0,
            })
        }
    }
}

fn check(s: &Session, path: &Path, oracle: bool) -> Result<Outcome, Failure> {
    let f = s.complex(path)?;
    let b = f.ring().irrelevant();
    let report = if oracle {
        virtuality::check_virtual_with_oracle(&f, &b)?
    } else {
        virtuality::check_virtual(&f, &b)?
    };
    let mut text = format!("ranks: {:?}\n", report.ranks);
    text.push_str(&format!(
        "{:>3} {:>6} {:>7} {:>6} {:>4} {:>6} {:>10} {:>4}\n",
        "i", "rank", "rank+1", "rankF", "(a)", "depth", "depth sat", "(b)"
    ));
    for r in &report.records {
        text.push_str(&format!(
            "{:>3} {:>6} {:>7} {:>6} {:>4} {:>6} {:>10} {:>4}\n",
            r.index,
            r.rank_phi,
            r.rank_next,
            r.rank_module,
            yes_no(r.condition_a),
            r.depth.to_string(),
            r.depth_saturated.to_string(),
            yes_no(r.condition_b)
        ));
    }
    text.push_str(&format!("virtual: {}\n", report.verdict_theorem));
    text.push_str(&format!("exact (unsaturated criterion): {}\n", report.exactness_note));
    if let Some(o) = &report.oracle {
        text.push_str(&format!("oracle virtual: {}\n", o.is_virtual));
        for c in &o.certificates {
            text.push_str(&format!(
                "  H_{}: {}\n",
                c.index,
                if c.zero_module {
                    "zero"
                } else if c.torsion {
                    "B-torsion"
                } else {
                    "not B-torsion"
                }
            ));
        }
    }
    if report.verdict_oracle.is_some_and(|o| o != report.verdict_theorem) {
        log::error!("criterion and oracle disagree");
    }
    let status = if report.verdict_theorem { 0 } else { 1 };
    Ok(Outcome {
        report: json!({ "command": "check", "report": to_value(&report)? }),
        text,
        status,
    })
}

fn complex_outcome(command: &str, f: &FreeComplex) -> Result<Outcome, Failure> {
    let mut text = String::new();
    for (i, m) in f.modules().iter().enumerate() {
        let twists: Vec<String> = m.sorted_twists().iter().map(|t| t.to_string()).collect();
        text.push_str(&format!("F{i}: rank {} twists {}\n", m.rank(), twists.join(" ")));
    }
    Ok(Outcome {
        report: json!({
            "command": command,
            "ranks": f.ranks(),
            "complex": to_value(&io::complex_to_file(f, false))?,
        }),
        text,
        status: 0,
    })
}

fn show_ideal(i: &Ideal) -> Result<String, Failure> {
    if i.is_zero() {
        return Ok("<0>".into());
    }
    Ok(format!("<{}>", i.to_strings()?.join(", ")))
}

fn lines(v: &[String]) -> String {
    if v.is_empty() {
        return "0\n".into();
    }
    v.iter().map(|l| format!("{l}\n")).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
