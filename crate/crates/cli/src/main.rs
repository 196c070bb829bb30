//! Command-line front end: verification suites, word actions on points,
//! presentation emission, and the coset-forest DOT export.

mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crazyring::amalgam::{act_gamma, SigmaRegistry};
use crazyring::gamma0::{act_word, g_elem, h_elem};
use crazyring::grammar::{parse_gammaword, parse_stword, parse_vpoint};
use crazyring::report::Report;
use crazyring::ring::{emit_presentation, standard_unit, word_text, CrazyRingElt};
use crazyring::slinfty::build_coset_forest;
use crazyring::steinberg::r_tilde;
use suites::{run as run_suite, suite_name, Suite};

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Target {
    Ring,
    Gamma0,
    Gamma,
}

#[derive(Parser)]
#[command(
    name = "crazyring",
    version,
    about = "Exact verification of the combined group-and-matrix ring, its elementary-matrix words, and the glued actions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Seed for every randomized check
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of random samples per sampled check
    #[arg(long, global = true, default_value_t = 100)]
    samples: u64,

    /// Pairing registry file: loaded when present, rewritten after commands
    /// that may extend it
    #[arg(long, global = true)]
    registry: Option<PathBuf>,

    /// Output format (default: json for verify, text otherwise)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named verification suite and print one verdict per check
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Apply a word to a point and print the resulting point
    Act {
        /// The word: `*`-joined letters e(i,j;r), or copy-tagged letters
        /// 1:e(...) / 2:e(...) with --twisted; `1` is the empty word
        #[arg(long)]
        word: String,
        /// The point, written [svector|svector|svector|svector]
        #[arg(long)]
        point: String,
        /// Read the word as copy-tagged and act through the involution
        #[arg(long)]
        twisted: bool,
    },
    /// Print a finite presentation
    Presentation {
        #[arg(value_enum)]
        target: Target,
    },
    /// Emit the truncated coset forest as DOT
    Tree {
        /// Level range: `2..4`, a comma list `2,3,4`, or a single level
        #[arg(long)]
        levels: String,
        /// Ambient matrix size N (2 to 4)
        #[arg(long = "ambient-n")]
        ambient_n: usize,
        /// Write the DOT text to this file instead of standard output
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Verify { suite } => {
            let mut reg = load_registry(cli.registry.as_deref())?;
            let report = run_suite(suite, cli.samples, cli.seed, &mut reg);
            save_registry(cli.registry.as_deref(), &reg)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let envelope = json!({
                        "suite": suite_name(suite),
                        "seed": cli.seed,
                        "samples": cli.samples,
                        "all_pass": report.all_pass(),
                        "verdicts": report.verdicts,
                    });
                    println!("{}", serde_json::to_string_pretty(&envelope).expect("report serializes"));
                }
                Format::Text => print_text_report(&report),
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Act {
            word,
            point,
            twisted,
        } => {
            let p = parse_vpoint(&point).map_err(|e| format!("--point: {e}"))?;
            let result = if twisted {
                let w = parse_gammaword(&word).map_err(|e| format!("--word: {e}"))?;
                let mut reg = load_registry(cli.registry.as_deref())?;
                let out = act_gamma(&mut reg, &w, &p);
                save_registry(cli.registry.as_deref(), &reg)?;
                out
            } else {
                let w = parse_stword(&word).map_err(|e| format!("--word: {e}"))?;
                act_word(&w, &p)
            };
            match cli.format.unwrap_or(Format::Text) {
                Format::Text => println!("{result}"),
                Format::Json => {
                    println!("{}", json!({ "point": result.to_string() }));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Presentation { target } => {
            print_presentation(target, cli.format.unwrap_or(Format::Text))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tree {
            levels,
            ambient_n,
            dot,
        } => {
            let (lo, hi) = parse_levels(&levels)?;
            let forest = build_coset_forest(lo, hi, ambient_n).map_err(|e| e.to_string())?;
            let text = forest.to_dot();
            match dot {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_registry(path: Option<&Path>) -> Result<SigmaRegistry, String> {
    match path {
        Some(p) if p.exists() => SigmaRegistry::load(p).map_err(|e| e.to_string()),
        _ => Ok(SigmaRegistry::new()),
    }
}

fn save_registry(path: Option<&Path>, reg: &SigmaRegistry) -> Result<(), String> {
    if let Some(p) = path {
        reg.save(p).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn print_text_report(report: &Report) {
    for v in &report.verdicts {
        let status = if v.passed() { "pass" } else { "fail" };
        println!(
            "{status}  {:<36}  {} [samples={} seed={}]",
            v.check_id, v.detail, v.samples, v.seed
        );
    }
    let failed = report.verdicts.iter().filter(|v| !v.passed()).count();
    if failed == 0 {
        println!("RESULT: pass ({} checks)", report.verdicts.len());
    } else {
        println!("RESULT: fail ({failed} of {} checks)", report.verdicts.len());
    }
}

/// One relation row of an emitted presentation.
struct Rel {
    section: &'static str,
    name: String,
    lhs: String,
    rhs: String,
}

fn ring_rows() -> Result<Vec<Rel>, String> {
    let pres = emit_presentation().map_err(|e| e.to_string())?;
    Ok(pres
        .relations
        .iter()
        .map(|r| Rel {
            section: "ring",
            name: r.name.clone(),
            lhs: word_text(&r.lhs),
            rhs: r.rhs_text(),
        })
        .collect())
}

fn gamma0_rows() -> Result<Vec<Rel>, String> {
    let mut rows = ring_rows()?;
    rows.push(Rel {
        section: "schema",
        name: "steinberg-additivity".into(),
        lhs: "e(i,j;r)*e(i,j;s)".into(),
        rhs: "e(i,j;r+s)".into(),
    });
    rows.push(Rel {
        section: "schema",
        name: "steinberg-commutator".into(),
        lhs: "e(i,j;r)*e(j,k;s)*e(i,j;r)^-1*e(j,k;s)^-1".into(),
        rhs: "e(i,k;r*s)".into(),
    });
    rows.push(Rel {
        section: "schema",
        name: "steinberg-disjoint".into(),
        lhs: "e(i,j;r)*e(p,q;s)*e(i,j;r)^-1*e(p,q;s)^-1".into(),
        rhs: "1".into(),
    });
    let unit = CrazyRingElt::embed_mat(standard_unit());
    let extra = r_tilde(&unit).map_err(|e| e.to_string())?;
    rows.push(Rel {
        section: "extra",
        name: "r-tilde-unit".into(),
        lhs: extra.to_string(),
        rhs: "1".into(),
    });
    Ok(rows)
}

fn gluing_rows() -> Vec<Rel> {
    let g = g_elem().to_string();
    let h = h_elem().to_string();
    vec![
        Rel {
            section: "gluing",
            name: "glue-1".into(),
            lhs: format!("1:{g}"),
            rhs: format!("2:{h}"),
        },
        Rel {
            section: "gluing",
            name: "glue-2".into(),
            lhs: format!("2:{g}"),
            rhs: format!("1:{h}"),
        },
    ]
}

fn rel_json(rows: &[Rel]) -> Vec<serde_json::Value> {
    rows.iter()
        .map(|r| json!({"name": r.name, "lhs": r.lhs, "rhs": r.rhs}))
        .collect()
}

fn print_rel_text(rows: &[Rel]) {
    for r in rows {
        println!("[{}] {}: {} = {}", r.section, r.name, r.lhs, r.rhs);
    }
}

fn print_presentation(target: Target, format: Format) -> Result<(), String> {
    match target {
        Target::Ring => {
            let pres = emit_presentation().map_err(|e| e.to_string())?;
            let generators: Vec<&str> = pres.generators.iter().map(|s| s.name()).collect();
            let rows = ring_rows()?;
            match format {
                Format::Json => {
                    let envelope = json!({
                        "target": "ring",
                        "generators": generators,
                        "relations": rel_json(&rows),
                    });
                    println!("{}", serde_json::to_string_pretty(&envelope).expect("serializes"));
                }
                Format::Text => {
                    println!(
                        "# ring: {} generators, {} relations",
                        generators.len(),
                        rows.len()
                    );
                    println!("generators: {}", generators.join(", "));
                    print_rel_text(&rows);
                }
            }
        }
        Target::Gamma0 => {
            let rows = gamma0_rows()?;
            match format {
                Format::Json => {
                    let envelope = json!({
                        "target": "gamma0",
                        "generators": "e(i,j;r) for 1 <= i != j <= 4 and r a ring element, plus the ring generators x0, x1, x0^-1, x1^-1, E",
                        "relations": rel_json(&rows),
                    });
                    println!("{}", serde_json::to_string_pretty(&envelope).expect("serializes"));
                }
                Format::Text => {
                    println!(
                        "# gamma0: ring presentation, elementary-letter schemas, one extra relation ({} rows)",
                        rows.len()
                    );
                    print_rel_text(&rows);
                }
            }
        }
        Target::Gamma => {
            let per_copy = gamma0_rows()?;
            let glue = gluing_rows();
            match format {
                Format::Json => {
                    let envelope = json!({
                        "target": "gamma",
                        "copies": [
                            {"copy": 1, "relations": rel_json(&per_copy)},
                            {"copy": 2, "relations": rel_json(&per_copy)},
                        ],
                        "gluing": rel_json(&glue),
                    });
                    println!("{}", serde_json::to_string_pretty(&envelope).expect("serializes"));
                }
                Format::Text => {
                    println!(
                        "# gamma: 2 copies x {} relations + {} gluing relations",
                        per_copy.len(),
                        glue.len()
                    );
                    for copy in 1..=2 {
                        println!("## copy {copy}");
                        print_rel_text(&per_copy);
                    }
                    println!("## gluing");
                    print_rel_text(&glue);
                }
            }
        }
    }
    Ok(())
}

fn parse_levels(text: &str) -> Result<(usize, usize), String> {
    let bad = |t: &str| format!("cannot read level range from {t:?}: use 2..4, 2,3,4, or a single level");
    if let Some((a, b)) = text.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| bad(text))?;
        let hi: usize = b.trim().parse().map_err(|_| bad(text))?;
        return Ok((lo, hi));
    }
    if text.contains(',') {
        let mut nums = Vec::new();
        for part in text.split(',') {
            nums.push(part.trim().parse::<usize>().map_err(|_| bad(text))?);
        }
        nums.sort_unstable();
        if nums.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(format!("levels {text:?} are not consecutive"));
        }
        return Ok((nums[0], *nums.last().expect("nonempty split")));
    }
    let n: usize = text.trim().parse().map_err(|_| bad(text))?;
    Ok((n, n))
}
