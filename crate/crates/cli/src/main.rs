use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kr_core::affine::{classical_crystal, has_affine_structure, kr_crystal, Realization};
use kr_core::golden::{self, GoldenCase};
use kr_core::minimal::minimal_element;
use kr_core::perfectness::{verdict, Status, Verdict};
use kr_core::tableaux::classical_decomposition;
use kr_core::{CartanType, KrError, KrIndex, Weight};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_PERFECT: u8 = 3;
const EXIT_OUT_OF_SCOPE: u8 = 4;

/// Kirillov-Reshetikhin crystals of nonexceptional affine type.
#[derive(Parser)]
#[command(name = "kr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct IndexArgs {
    /// Affine type, e.g. `C3~1`, `A5~2` (A_5^(2)), `D4~2` (D_4^(2)).
    #[arg(long)]
    cartan: CartanType,
    /// Classical node.
    #[arg(long)]
    r: usize,
    /// Width.
    #[arg(long)]
    s: usize,
}

impl IndexArgs {
    fn idx(&self) -> Result<KrIndex, KrError> {
        KrIndex::new(self.cartan, self.r, self.s)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build B^{r,s} and summarize it.
    Build {
        #[command(flatten)]
        index: IndexArgs,
    },
    /// Export the crystal graph, including 0-arrows.
    Graph {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the constructed minimal element for one or all dominant weights.
    Minimal {
        #[command(flatten)]
        index: IndexArgs,
        /// Coefficients `l0,l1,...,ln` of the weight in the fundamental weights.
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Decide perfectness. Exit 0 when perfect, 3 when not.
    Check {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        json: bool,
    },
    /// Compare a bundled C3~1 example against the generated crystal.
    Golden {
        #[arg(long)]
        case: GoldenCase,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code(e: &KrError) -> u8 {
    match e {
        KrError::OutOfScope(_) => EXIT_OUT_OF_SCOPE,
        KrError::NotPerfect(_) => EXIT_NOT_PERFECT,
        KrError::InvalidType(_)
        | KrError::OutOfRange(_)
        | KrError::LevelMismatch { .. }
        | KrError::InvalidWeight(_)
        | KrError::Malformed(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn parse_weight(text: &str, ct: &CartanType) -> Result<Weight, KrError> {
    let coeffs = text
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| KrError::InvalidWeight(format!("cannot parse {text:?}")))?;
    if coeffs.len() != ct.rank() + 1 {
        return Err(KrError::InvalidWeight(format!(
            "{ct} needs {} coefficients, got {}",
            ct.rank() + 1,
            coeffs.len()
        )));
    }
    let w = Weight(coeffs);
    if !w.is_dominant() {
        return Err(KrError::InvalidWeight(format!("{w} is not dominant")));
    }
    Ok(w)
}

fn build(idx: &KrIndex) -> Result<u8, KrError> {
    let shapes = classical_decomposition(idx)?;
    let mut out = format!("{idx}\n");
    let parts: Vec<String> = shapes
        .iter()
        .map(|sh| {
            let rows = sh.rows();
            let spin = if sh.spin_columns > 0 {
                format!(" + {} spin column(s)", sh.spin_columns)
            } else {
                String::new()
            };
            format!("rows {rows:?}{spin}")
        })
        .collect();
    let _ = writeln!(out, "classical components: {}", parts.join(", "));
    if has_affine_structure(idx) {
        let k = kr_crystal(idx)?;
        let realization = match &k.realization {
            Realization::Promotion { .. } => "promotion".to_string(),
            Realization::Sigma { .. } => "diagram involution".to_string(),
            Realization::Embedded(e) => format!("virtual embedding into {}", e.ambient.idx),
        };
        let _ = writeln!(out, "elements: {}", k.len());
        let _ = writeln!(out, "affine structure: {realization}");
        let counts: Vec<String> = (0..=idx.ct.rank())
            .map(|i| format!("{i}:{}", k.edges().iter().filter(|e| e.1 == i).count()))
            .collect();
        let _ = writeln!(out, "arrows per label: {}", counts.join(" "));
    } else {
        let cl = classical_crystal(idx)?;
        let _ = writeln!(out, "elements: {}", cl.len());
        let _ = writeln!(out, "affine structure: not available for this node");
    }
    print!("{out}");
    Ok(0)
}

fn graph(idx: &KrIndex, format: Format, out: Option<PathBuf>) -> Result<u8, KrError> {
    if !has_affine_structure(idx) {
        return Err(KrError::OutOfScope(format!("no 0-arrows for {idx}")));
    }
    let k = kr_crystal(idx)?;
    let text = match format {
        Format::Dot => k.to_dot(),
        Format::Json => serde_json::to_string_pretty(&k.to_json()).expect("json") + "\n",
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return Ok(EXIT_FAILURE);
            }
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn minimal(idx: &KrIndex, weight: Option<String>, json: bool) -> Result<u8, KrError> {
    let weights = match weight {
        Some(w) => vec![parse_weight(&w, &idx.ct)?],
        None => {
            if !idx.predicted_perfect() {
                return Err(KrError::NotPerfect(idx.to_string()));
            }
            idx.ct.dominant_weights(idx.predicted_min_level())
        }
    };
    let elements = weights
        .iter()
        .map(|w| minimal_element(idx, w))
        .collect::<Result<Vec<_>, _>>()?;
    if json {
        println!("{}", serde_json::to_string_pretty(&elements).expect("json"));
    } else {
        println!("{idx}");
        for m in &elements {
            println!("{:<16} {:<24} {:?} {:?}", m.weight.to_string(), m.tableau.to_string(), m.route, m.validation);
        }
    }
    Ok(0)
}

fn check(idx: &KrIndex, json: bool) -> Result<u8, KrError> {
    let report = verdict(idx)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json"));
    } else {
        println!("{idx}: {} elements", report.size);
        for c in &report.conditions {
            let status = match c.status {
                Status::ByConstruction => "by construction",
                Status::Passed => "passed",
                Status::Failed => "FAILED",
                Status::Unchecked => "unchecked",
            };
            println!("  condition {}: {status} ({})", c.condition, c.detail);
        }
        if let Some(l) = report.min_level {
            println!("  minimal level: {l}, class sizes {:?}", report.class_sizes);
        }
        if let Some(t) = report.tau_matches_formula {
            println!("  tau agrees with the closed formula: {t}");
        }
        if let Some(w) = &report.witnesses {
            let [a, b] = &w.pair.elements;
            println!(
                "  witness pair {a}, {b} with epsilon {} (inside a minimal class: {})",
                w.pair.epsilon, w.in_minimal_class
            );
        }
        match &report.verdict {
            Verdict::Perfect { level } => println!("perfect, level {level}"),
            Verdict::NotPerfect { condition, reason } => {
                println!("not perfect: condition {condition} fails ({reason})")
            }
            Verdict::Partial { unchecked } => {
                println!("partial: conditions {unchecked:?} unchecked")
            }
        }
    }
    Ok(match report.verdict {
        Verdict::Perfect { .. } => 0,
        Verdict::NotPerfect { .. } => EXIT_NOT_PERFECT,
        Verdict::Partial { .. } => EXIT_OUT_OF_SCOPE,
    })
}

fn golden_case(case: GoldenCase, json: bool) -> Result<u8, KrError> {
    let report = golden::run(case)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    } else {
        println!("{case}: {}", case.idx());
        if let Some(g) = &report.graph {
            print!("{}", kr_crystal(&case.idx())?.to_dot());
            println!(
                "graph: {} vertices (expected {}), {} 0-arrows, {} missing, {} extra",
                g.vertices,
                g.expected_vertices,
                g.zero_arrows,
                g.missing.len(),
                g.extra.len()
            );
            for e in &g.missing {
                println!("  missing {e}");
            }
            for e in &g.extra {
                println!("  extra   {e}");
            }
        }
        if let Some(rows) = &report.f0_rows {
            let show = |t: &Option<kr_core::tableaux::Tableau>| {
                t.as_ref().map_or("none".to_string(), ToString::to_string)
            };
            println!("{:<14} {:<14} {:<14} {:<14}", "element", "table", "f_0", "e_0");
            for r in rows {
                println!(
                    "{:<14} {:<14} {:<14} {:<14}",
                    r.element.to_string(),
                    show(&r.expected),
                    show(&r.f0),
                    show(&r.e0)
                );
            }
            let f = rows.iter().filter(|r| r.f0_matches()).count();
            let e = rows.iter().filter(|r| r.e0_matches()).count();
            println!("rows matching f_0: {f}/{}; matching e_0: {e}/{}", rows.len(), rows.len());
        }
        println!("minimal level {}", report.minimal.min_level);
        for row in &report.minimal.rows {
            let found: Vec<String> = row.found.iter().map(ToString::to_string).collect();
            let mark = if row.matches() { "ok" } else { "MISMATCH" };
            println!("  {:<12} {mark:<8} {}", row.weight.to_string(), found.join("  "));
        }
        if let Some(images) = &report.images {
            for im in images {
                let mark = if im.matches() { "ok" } else { "MISMATCH" };
                println!(
                    "S({}) = {} [{mark}], epsilon {}",
                    im.source, im.found, im.ambient_epsilon
                );
            }
        }
        println!("{}", if report.matches() { "match" } else { "mismatch" });
    }
    Ok(if report.matches() { 0 } else { EXIT_FAILURE })
}

fn run(cli: Cli) -> Result<u8, KrError> {
    match cli.command {
        Command::Build { index } => build(&index.idx()?),
        Command::Graph { index, format, out } => graph(&index.idx()?, format, out),
        Command::Minimal { index, weight, json } => minimal(&index.idx()?, weight, json),
        Command::Check { index, json } => check(&index.idx()?, json),
        Command::Golden { case, json } => golden_case(case, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
