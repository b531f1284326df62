//! orbitweave CLI: certify weak-order graphs, analyze vertices, build the
//! standard models, run parabolic induction, and inspect the Weyl-group
//! action. Reports go to stdout as JSON (`--pretty` for indented output).
//! `-` means stdin/stdout for file arguments. Exit codes: 0 pass, 1 a
//! certification failed, 2 usage or schema error.

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use orbitweave::cartan::CartanDatum;
use orbitweave::error::Error;
use orbitweave::graph::{Certification, OrbitGraph};
use orbitweave::io::{export_dot, parse_graph_json, write_graph_json, write_graph_json_pretty};
use orbitweave::knop::{
    build_action, certify_action, classify_generators, max_rank_orbit, prop_minimal_check,
    stabilizer, Lattice,
};
use orbitweave::models::{
    fixture, flag_case, group_case, parabolic_induction, sl2_atom, AtomKind, FIXTURE_NAMES,
};
use orbitweave::paths::{certify_paths, schubert_expansion};

#[derive(Parser)]
#[command(name = "orbitweave", version, about = "weak-order graphs of spherical varieties")]
struct Cli {
    /// Pretty-print JSON reports.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run structural, path and action certification on a graph file.
    Validate {
        /// Graph JSON file, or `-` for stdin.
        file: String,
        /// Accept lone type-T edges as truncation warnings.
        #[arg(long)]
        allow_truncated: bool,
    },
    /// Print the expansion report of one vertex.
    Analyze {
        file: String,
        #[arg(long)]
        vertex: String,
    },
    /// Build a standard model graph and print it as JSON.
    Model {
        /// One of `group`, `flag`, `atom`.
        which: String,
        /// Cartan type for `group`/`flag` (e.g. A2, B2, A1+A1).
        #[arg(long = "type")]
        cartan: Option<String>,
        /// Comma-separated simple-root indices for `flag` (default empty).
        #[arg(long)]
        parabolic: Option<String>,
        /// Atom kind for `atom`: U, T or N.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Parabolic induction of a base graph file.
    Induce {
        #[arg(long = "type")]
        cartan: String,
        /// Comma-separated simple-root indices.
        #[arg(long)]
        subset: String,
        /// Base graph JSON file, or `-` for stdin.
        #[arg(long)]
        base: String,
    },
    /// Print the stabilizer report and the minimal-coset verdict.
    Knop {
        file: String,
        /// Optional lattice generators in the simple-root basis, e.g.
        /// `1,1` or `2,0;0,2` (semicolon-separated vectors).
        #[arg(long)]
        lattice: Option<String>,
    },
    /// List fixtures or print one by name.
    Fixtures {
        /// `list`, or `get <name>`.
        action: String,
        name: Option<String>,
    },
    /// Print deterministic DOT text for a graph file.
    ExportDot { file: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Schema { .. }
                | Error::Io(_)
                | Error::BadCartanLabel(_)
                | Error::UnknownFixture(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn read_input(file: &str) -> Result<Vec<u8>, Error> {
    if file == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Error::Io(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read(file).map_err(|e| Error::Io(format!("{file}: {e}")))
    }
}

fn load_graph(file: &str) -> Result<OrbitGraph, Error> {
    parse_graph_json(&read_input(file)?)
}

fn print_json(cli: &Cli, value: &serde_json::Value) {
    let text = if cli.pretty {
        serde_json::to_string_pretty(value).expect("report serialization")
    } else {
        serde_json::to_string(value).expect("report serialization")
    };
    println!("{text}");
}

fn print_graph(cli: &Cli, g: &OrbitGraph) {
    let bytes = if cli.pretty { write_graph_json_pretty(g) } else { write_graph_json(g) };
    std::io::stdout().write_all(&bytes).expect("stdout");
}

fn parse_indices(text: &str) -> Result<BTreeSet<usize>, Error> {
    let mut out = BTreeSet::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.insert(
            part.parse::<usize>()
                .map_err(|_| Error::Io(format!("bad simple-root index `{part}`")))?,
        );
    }
    Ok(out)
}

fn cert_json(c: &Certification) -> serde_json::Value {
    serde_json::json!({
        "passed": c.passed,
        "failures": c.failures,
        "warnings": c.warnings,
    })
}

/// Rank-complete version of the graph when one is derivable: explicit ranks
/// win, else propagate from rank_of_top.
fn with_ranks(g: &OrbitGraph) -> Result<(OrbitGraph, Option<String>), Error> {
    if g.has_ranks() {
        // cross-check against rank_of_top when it is also present
        if let Some(r) = g.rank_of_top() {
            let inferred = g.infer_ranks_uniform(r)?;
            return Ok((inferred, None));
        }
        return Ok((g.clone(), None));
    }
    match g.rank_of_top() {
        Some(r) => Ok((g.infer_ranks_uniform(r)?, None)),
        None => Ok((
            g.clone(),
            Some("no ranks and no rank_of_top: rank checks skipped".to_string()),
        )),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Validate { file, allow_truncated } => {
            let g = load_graph(file)?;
            let structure = g.validate_structure(*allow_truncated);
            let (ranked, rank_note) = match with_ranks(&g) {
                Ok(x) => x,
                Err(e) => {
                    // rank propagation conflicts are a structural failure
                    let mut s = structure.clone();
                    s.fail("rank-inference", format!("{e}"));
                    let report = serde_json::json!({
                        "structure": cert_json(&s),
                        "paths": null,
                        "action": null,
                        "passed": false,
                    });
                    print_json(cli, &report);
                    return Ok(ExitCode::from(1));
                }
            };
            let w = ranked.weyl_table()?;
            let mut paths = match certify_paths(&ranked, &w) {
                Ok(p) => p,
                Err(e) => {
                    // path enumeration itself can fail on cyclic input
                    let mut c = Certification::new();
                    c.fail("path-enumeration", format!("{e}"));
                    c
                }
            };
            if let Some(note) = rank_note {
                paths.warn(note);
            }
            let action = match build_action(&ranked) {
                Ok(t) => certify_action(&t, &ranked),
                Err(e) => {
                    let mut c = Certification::new();
                    c.fail("action-build", format!("{e}"));
                    c
                }
            };
            let passed = structure.passed && paths.passed && action.passed;
            let report = serde_json::json!({
                "structure": cert_json(&structure),
                "paths": cert_json(&paths),
                "action": cert_json(&action),
                "passed": passed,
            });
            print_json(cli, &report);
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Analyze { file, vertex } => {
            let g = load_graph(file)?;
            let (ranked, _) = with_ranks(&g)?;
            let w = ranked.weyl_table()?;
            let report = schubert_expansion(&ranked, &w, vertex)?;
            print_json(cli, &report.to_json(&w));
            Ok(ExitCode::SUCCESS)
        }
        Command::Model { which, cartan, parabolic, kind } => {
            let g = match which.as_str() {
                "group" => {
                    let label = cartan.as_deref().ok_or_else(|| {
                        Error::Io("`model group` needs --type".into())
                    })?;
                    group_case(&CartanDatum::from_label(label)?)?
                }
                "flag" => {
                    let label = cartan.as_deref().ok_or_else(|| {
                        Error::Io("`model flag` needs --type".into())
                    })?;
                    let subset = match parabolic {
                        Some(text) => parse_indices(text)?,
                        None => BTreeSet::new(),
                    };
                    flag_case(&CartanDatum::from_label(label)?, &subset)?
                }
                "atom" => {
                    let kind: AtomKind = kind
                        .as_deref()
                        .ok_or_else(|| Error::Io("`model atom` needs --kind U|T|N".into()))?
                        .parse()?;
                    sl2_atom(kind)
                }
                other => {
                    return Err(Error::Io(format!(
                        "unknown model `{other}` (expected group, flag or atom)"
                    )))
                }
            };
            print_graph(cli, &g);
            Ok(ExitCode::SUCCESS)
        }
        Command::Induce { cartan, subset, base } => {
            let datum = CartanDatum::from_label(cartan)?;
            let subset = parse_indices(subset)?;
            let base_graph = load_graph(base)?;
            let g = parabolic_induction(&datum, &subset, &base_graph)?;
            print_graph(cli, &g);
            Ok(ExitCode::SUCCESS)
        }
        Command::Knop { file, lattice } => {
            let g = load_graph(file)?;
            let (ranked, _) = with_ranks(&g)?;
            let w = ranked.weyl_table()?;
            let t = build_action(&ranked)?;
            let action = certify_action(&t, &ranked);
            if !action.passed {
                let report = serde_json::json!({
                    "action": cert_json(&action),
                    "passed": false,
                });
                print_json(cli, &report);
                return Ok(ExitCode::from(1));
            }
            let orbit = max_rank_orbit(&t, &ranked)?;
            let mut stab = stabilizer(&t, &ranked, &w)?;
            if let Some(text) = lattice {
                let gens: Result<Vec<Vec<i64>>, Error> = text
                    .split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(|vec_text| {
                        vec_text
                            .split(',')
                            .map(|c| {
                                c.trim()
                                    .parse::<i64>()
                                    .map_err(|_| Error::Io(format!("bad lattice entry `{c}`")))
                            })
                            .collect()
                    })
                    .collect();
                let l = Lattice::new(w.rank(), &gens?)?;
                stab.classification =
                    classify_generators(&w, &stab.w_iso, &stab.delta_x, Some(&l));
            }
            let minimal = prop_minimal_check(&t, &ranked, &w, &stab)?;
            let passed = action.passed
                && orbit.matches
                && stab.semidirect_ok
                && stab.classification.generates
                && minimal.passed;
            let report = serde_json::json!({
                "action": cert_json(&action),
                "max_rank_orbit": orbit.orbit.iter().collect::<Vec<_>>(),
                "orbit_matches_rank_maximal": orbit.matches,
                "stabilizer": stab.to_json(&w),
                "prop_minimal": {
                    "passed": minimal.passed,
                    "failures": minimal.failures,
                },
                "passed": passed,
            });
            print_json(cli, &report);
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Fixtures { action, name } => match action.as_str() {
            "list" => {
                let names: Vec<&str> = FIXTURE_NAMES.to_vec();
                print_json(cli, &serde_json::json!(names));
                Ok(ExitCode::SUCCESS)
            }
            "get" => {
                let name = name
                    .as_deref()
                    .ok_or_else(|| Error::Io("`fixtures get` needs a name".into()))?;
                match fixtures_dir_override(name)? {
                    Some(bytes) => {
                        let g = parse_graph_json(&bytes)?;
                        print_graph(cli, &g);
                    }
                    None => print_graph(cli, &fixture(name)?),
                }
                Ok(ExitCode::SUCCESS)
            }
            other => Err(Error::Io(format!("unknown fixtures action `{other}` (list|get)"))),
        },
        Command::ExportDot { file } => {
            let g = load_graph(file)?;
            print!("{}", export_dot(&g));
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// `ORBITWEAVE_FIXTURES` points at a directory of `<name>.json` files that
/// overrides the embedded fixtures.
fn fixtures_dir_override(name: &str) -> Result<Option<Vec<u8>>, Error> {
    if !FIXTURE_NAMES.contains(&name) {
        // unknown names fall through to fixture() for the canonical error,
        // unless the override directory provides the file
        if let Ok(dir) = std::env::var("ORBITWEAVE_FIXTURES") {
            let path = PathBuf::from(dir).join(format!("{name}.json"));
            if path.exists() {
                return std::fs::read(&path)
                    .map(Some)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())));
            }
        }
        return Err(Error::UnknownFixture(name.to_string()));
    }
    if let Ok(dir) = std::env::var("ORBITWEAVE_FIXTURES") {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        if path.exists() {
            return std::fs::read(&path)
                .map(Some)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())));
        }
    }
    Ok(None)
}
