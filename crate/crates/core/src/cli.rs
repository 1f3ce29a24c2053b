//! Command-line front end. `run` returns the process exit status:
//! 0 success or green audit, 1 hard audit failure, 2 input or engine error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::text::{self, Block};
use crate::algebra::{Semimodule, Semiring};
use crate::auditor::{audit_corpus, CorpusConfig};
use crate::bitset::ElemSet;
use crate::catalog::{self, LatticeSpec};
use crate::error::{Error, Result};
use crate::homs::{self, LinearMap, SequenceSpec};
use crate::limits::{Limits, Search};
use crate::semisimple;
use crate::summands;

#[derive(Debug, Parser)]
#[command(name = "finsemi", version, about = "Finite semirings and semimodules: structure, decompositions and audits")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Override a limit, e.g. `--limits max_steps=1000000`.
    #[arg(long = "limits", value_name = "KEY=VALUE", global = true)]
    limits: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate every block of a file.
    Validate { file: PathBuf },
    /// Substructures, simplicity, semisimplicity and C1/C2/C2' of a module,
    /// plus any sequence given by `map` blocks.
    Analyze { file: PathBuf },
    /// Direct summands and decompositions of a module.
    Decompose { file: PathBuf },
    /// Audit enumerated semirings and fixtures.
    Audit {
        /// Enumerate every order from 2 up to N.
        #[arg(long)]
        order: Option<usize>,
        /// Commutative semirings only.
        #[arg(long)]
        commutative: bool,
        /// Include the named fixtures.
        #[arg(long)]
        fixtures: bool,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Extra semirings to audit.
        files: Vec<PathBuf>,
    },
    /// Emit catalog instances in the text format.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// B(n, i).
    Bni {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
    },
    /// The semiring of a distributive lattice.
    Lattice { file: PathBuf },
    /// Endomorphism semiring of a lattice's join monoid.
    End {
        file: PathBuf,
        /// Keep only endomorphisms that also fix the top.
        #[arg(long)]
        top_preserving: bool,
    },
    /// k×k matrices over a semiring.
    Matrix {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Componentwise product.
    Product {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, code)) => {
            let _ = out.write_all(report.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn limits_from(pairs: &[String]) -> Result<Limits> {
    let mut limits = Limits::default();
    for p in pairs {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameters(format!("expected key=value, got {p:?}")))?;
        limits.set(k.trim(), v.trim())?;
    }
    Ok(limits)
}

fn read_blocks(path: &Path) -> Result<Vec<Block>> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    text::parse(&src)
}

fn first_semiring(path: &Path) -> Result<Arc<Semiring>> {
    read_blocks(path)?
        .into_iter()
        .find_map(|b| match b {
            Block::Semiring(s) => Some(s),
            _ => None,
        })
        .ok_or_else(|| Error::Shape(format!("{}: no semiring block", path.display())))
}

fn first_lattice(path: &Path) -> Result<LatticeSpec> {
    let raw = read_blocks(path)?
        .into_iter()
        .find_map(|b| match b {
            Block::Lattice(l) => Some(l),
            _ => None,
        })
        .ok_or_else(|| Error::Shape(format!("{}: no lattice block", path.display())))?;
    LatticeSpec::new(raw)
}

/// The modules of a document: every `semimodule` block, or the regular
/// module of the last semiring when there are none.
fn modules_of(blocks: &[Block]) -> Result<Vec<Semimodule>> {
    let mods: Vec<Semimodule> = blocks
        .iter()
        .filter_map(|b| match b {
            Block::Semimodule(m) => Some(m.clone()),
            _ => None,
        })
        .collect();
    if !mods.is_empty() {
        return Ok(mods);
    }
    blocks
        .iter()
        .rev()
        .find_map(|b| match b {
            Block::Semiring(s) => Some(vec![Semimodule::regular(s.clone())]),
            _ => None,
        })
        .ok_or_else(|| Error::Shape("no semiring or semimodule block".into()))
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let limits = limits_from(&cli.global.limits)?;
    let fmt = cli.global.format;
    match &cli.command {
        Command::Validate { file } => validate(file, fmt).map(|r| (r, 0)),
        Command::Analyze { file } => analyze(file, fmt, &limits).map(|r| (r, 0)),
        Command::Decompose { file } => decompose(file, fmt, &limits).map(|r| (r, 0)),
        Command::Audit { order, commutative, fixtures, jobs, files } => {
            if *jobs == 0 {
                return Err(Error::InvalidParameters("--jobs must be positive".into()));
            }
            let mut extra = Vec::new();
            for f in files {
                let name = f.file_stem().map_or_else(|| f.display().to_string(), |s| s.to_string_lossy().into_owned());
                extra.push((name, first_semiring(f)?));
            }
            let cfg = CorpusConfig {
                order: *order,
                commutative_only: *commutative,
                fixtures: *fixtures,
                extra,
                jobs: *jobs,
                limits,
            };
            let report = audit_corpus(&cfg)?;
            let code = if report.hard_failures() > 0 { 1 } else { 0 };
            let body = match fmt {
                Format::Json => report.json_lines(),
                Format::Text => report.text(),
            };
            Ok((body, code))
        }
        Command::Catalog(c) => catalog_command(c, &limits).map(|r| (r, 0)),
    }
}

fn validate(file: &Path, fmt: Format) -> Result<String> {
    let blocks = read_blocks(file)?;
    let mut rows = Vec::new();
    for b in &blocks {
        let row = match b {
            Block::Semiring(s) => json!({
                "kind": "semiring",
                "order": s.order(),
                "commutative": s.is_commutative(),
                "zerosumfree": s.is_zerosumfree(),
                "cancellative": s.is_cancellative(),
                "ring": s.is_ring(),
            }),
            Block::Semimodule(m) => json!({ "kind": "semimodule", "order": m.order(), "base_order": m.base().order() }),
            Block::Map(v) => json!({ "kind": "map", "length": v.len() }),
            Block::Subset(v) => json!({ "kind": "subset", "size": v.len() }),
            Block::Lattice(l) => {
                let spec = LatticeSpec::new(l.clone())?;
                json!({ "kind": "lattice", "order": spec.order(), "distributive": spec.distributivity_failure().is_none() })
            }
        };
        rows.push(row);
    }
    Ok(match fmt {
        Format::Json => format!("{}\n", json!({ "file": file.display().to_string(), "blocks": rows })),
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                let kind = r["kind"].as_str().unwrap_or("?");
                let rest: Vec<String> = r
                    .as_object()
                    .into_iter()
                    .flatten()
                    .filter(|(k, _)| *k != "kind")
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                let _ = writeln!(out, "{kind} ok {}", rest.join(" "));
            }
            let _ = writeln!(out, "{} block(s) valid", rows.len());
            out
        }
    })
}

#[derive(Serialize)]
struct Analysis {
    order: usize,
    base_order: usize,
    base_commutative: bool,
    subsemimodules: Vec<ElemSet>,
    subtractive: Vec<ElemSet>,
    congruences: usize,
    ideal_simple: bool,
    congruence_simple: bool,
    ideal_semisimple: bool,
    congruence_semisimple: bool,
    summands: Vec<ElemSet>,
    c1: bool,
    c2: bool,
    c2_prime: bool,
    c1_witness: Option<ElemSet>,
    c2_witness: Option<(ElemSet, ElemSet)>,
    c2_prime_witness: Option<(ElemSet, ElemSet)>,
    subsets: Vec<SubsetReport>,
    sequence: Option<SequenceAnalysis>,
}

#[derive(Serialize)]
struct SubsetReport {
    members: ElemSet,
    generated: ElemSet,
    subtractive_closure: ElemSet,
    is_subsemimodule: bool,
    is_subtractive: bool,
    is_summand: bool,
}

#[derive(Serialize)]
struct SequenceAnalysis {
    short: bool,
    exact: bool,
    proper_exact: bool,
    semi_exact: bool,
    maps: Vec<homs::NormalityProfile>,
    left_split: Option<Option<LinearMap>>,
    right_split: Option<Option<LinearMap>>,
}

fn decided(s: Search<LinearMap>) -> Option<Option<LinearMap>> {
    match s {
        Search::Present(w) => Some(Some(w)),
        Search::Absent => Some(None),
        Search::Unknown => None,
    }
}

fn sequence_analysis(mods: &[Semimodule], maps: &[Vec<usize>], limits: &Limits) -> Result<SequenceAnalysis> {
    if mods.len() != maps.len() + 1 {
        return Err(Error::NotComposable(format!("{} maps need {} semimodule blocks, found {}", maps.len(), maps.len() + 1, mods.len())));
    }
    let linear: Vec<LinearMap> = maps
        .iter()
        .enumerate()
        .map(|(i, images)| LinearMap::new(&mods[i], &mods[i + 1], images.clone()))
        .collect::<Result<_>>()?;
    let profiles = linear.iter().enumerate().map(|(i, f)| homs::normality_profile(&mods[i], &mods[i + 1], f)).collect();
    let short = linear.len() == 2;
    let spec = if short {
        SequenceSpec::short(mods[0].clone(), mods[1].clone(), mods[2].clone(), linear[0].clone(), linear[1].clone())
    } else {
        SequenceSpec { modules: mods.to_vec(), maps: linear.clone() }
    };
    let report = homs::classify_sequence(&spec, limits)?;
    let (left_split, right_split) = if short && report.exact {
        let p = homs::splitting_profile(&mods[0], &mods[1], &mods[2], &linear[0], &linear[1], limits)?;
        (decided(p.left), decided(p.right))
    } else {
        (None, None)
    };
    Ok(SequenceAnalysis {
        short,
        exact: report.exact,
        proper_exact: report.proper_exact,
        semi_exact: report.semi_exact,
        maps: profiles,
        left_split,
        right_split,
    })
}

fn analyze(file: &Path, fmt: Format, limits: &Limits) -> Result<String> {
    let blocks = read_blocks(file)?;
    let mods = modules_of(&blocks)?;
    let maps: Vec<Vec<usize>> = blocks
        .iter()
        .filter_map(|b| match b {
            Block::Map(v) => Some(v.clone()),
            _ => None,
        })
        .collect();
    let sequence = if maps.is_empty() { None } else { Some(sequence_analysis(&mods, &maps, limits)?) };
    // the subject is the middle module of a sequence, else the last module
    let m = if sequence.is_some() && mods.len() >= 3 { &mods[1] } else { mods.last().unwrap() };

    let subsemimodules = m.enumerate_subsemimodules(limits, false).require_exhaustive("subsemimodules")?;
    let congruences = m.enumerate_congruences(limits).require_exhaustive("congruences")?;
    let simplicity = semisimple::simplicity_profile(m, limits)?;
    let semis = semisimple::semisimplicity_profile(m, limits)?;
    let cond = semisimple::condition_profile(m, limits)?;
    let poset = summands::summand_poset(m, limits)?;
    let mut subsets = Vec::new();
    for b in &blocks {
        if let Block::Subset(v) = b {
            if let Some(&bad) = v.iter().find(|&&x| x >= m.order()) {
                return Err(Error::Shape(format!("subset element {bad} out of range")));
            }
            let members = ElemSet::from_iter(m.order(), v.iter().copied());
            subsets.push(SubsetReport {
                generated: m.generated(&members),
                subtractive_closure: m.subtractive_closure(&members),
                is_subsemimodule: m.is_subsemimodule(&members),
                is_subtractive: m.is_subsemimodule(&members) && m.is_subtractive(&members),
                is_summand: poset.contains(&members),
                members,
            });
        }
    }
    let a = Analysis {
        order: m.order(),
        base_order: m.base().order(),
        base_commutative: m.base().is_commutative(),
        subsemimodules,
        congruences: congruences.len(),
        ideal_simple: simplicity.ideal_simple,
        congruence_simple: simplicity.congruence_simple,
        ideal_semisimple: semis.ideal_semisimple,
        congruence_semisimple: semis.congruence_semisimple,
        summands: poset.nodes.iter().map(|n| n.members.clone()).collect(),
        c1: cond.c1,
        c2: cond.c2,
        c2_prime: cond.c2_prime,
        c1_witness: cond.c1_witness,
        c2_witness: cond.c2_witness,
        c2_prime_witness: cond.c2_prime_witness,
        subtractive: cond.subtractive,
        subsets,
        sequence,
    };
    Ok(match fmt {
        Format::Json => format!("{}\n", serde_json::to_string(&a).expect("serializable")),
        Format::Text => analysis_text(&a),
    })
}

fn yes(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn sets(v: &[ElemSet]) -> String {
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn pair(p: &Option<(ElemSet, ElemSet)>) -> String {
    p.as_ref().map_or(String::new(), |(m, l)| format!(" (M={m}, L={l})"))
}

fn analysis_text(a: &Analysis) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "module of order {} over a semiring of order {}", a.order, a.base_order);
    let _ = writeln!(o, "subsemimodules {}: {}", a.subsemimodules.len(), sets(&a.subsemimodules));
    let _ = writeln!(o, "subtractive {}: {}", a.subtractive.len(), sets(&a.subtractive));
    let _ = writeln!(o, "congruences {}", a.congruences);
    let _ = writeln!(o, "ideal-simple {}, congruence-simple {}", yes(a.ideal_simple), yes(a.congruence_simple));
    let _ = writeln!(o, "ideal-semisimple {}, congruence-semisimple {}", yes(a.ideal_semisimple), yes(a.congruence_semisimple));
    let _ = writeln!(o, "direct summands {}: {}", a.summands.len(), sets(&a.summands));
    let c1w = a.c1_witness.as_ref().map_or(String::new(), |w| format!(" ({w} is not a summand)"));
    let _ = writeln!(o, "C1 {}{c1w}", yes(a.c1));
    let _ = writeln!(o, "C2 {}{}", yes(a.c2), pair(&a.c2_witness));
    let _ = writeln!(o, "C2' {}{}", yes(a.c2_prime), pair(&a.c2_prime_witness));
    for s in &a.subsets {
        let _ = writeln!(
            o,
            "subset {}: generates {}, closure {}, subsemimodule {}, subtractive {}, summand {}",
            s.members,
            s.generated,
            s.subtractive_closure,
            yes(s.is_subsemimodule),
            yes(s.is_subtractive),
            yes(s.is_summand)
        );
    }
    if let Some(q) = &a.sequence {
        let _ = writeln!(o, "sequence: exact {}, proper-exact {}, semi-exact {}", yes(q.exact), yes(q.proper_exact), yes(q.semi_exact));
        for (i, p) in q.maps.iter().enumerate() {
            let _ = writeln!(o, "  map {i}: k-normal {}, i-normal {}, normal {}", yes(p.k_normal), yes(p.i_normal), yes(p.normal));
        }
        let split = |s: &Option<Option<LinearMap>>| match s {
            Some(Some(w)) => format!("yes via {w}"),
            Some(None) => "no".into(),
            None => "n/a".into(),
        };
        if q.short {
            let _ = writeln!(o, "  left split {}, right split {}", split(&q.left_split), split(&q.right_split));
        }
    }
    o
}

#[derive(Serialize)]
struct DecompositionReport {
    summands: Vec<summands::SummandNode>,
    longest_chain: usize,
    irreducible_parts: Vec<ElemSet>,
    projections: Vec<LinearMap>,
    ideal_simple_parts: Option<Vec<ElemSet>>,
    congruence_simple_parts: Option<Vec<ElemSet>>,
}

fn decompose(file: &Path, fmt: Format, limits: &Limits) -> Result<String> {
    let blocks = read_blocks(file)?;
    let m = modules_of(&blocks)?.pop().expect("non-empty");
    let poset = summands::summand_poset(&m, limits)?;
    let dec = summands::irreducible_decomposition(&m, limits)?;
    let semis = semisimple::semisimplicity_profile(&m, limits)?;
    let r = DecompositionReport {
        longest_chain: poset.longest_chain,
        summands: poset.nodes,
        irreducible_parts: dec.parts,
        projections: dec.projections,
        ideal_simple_parts: semis.ideal_parts,
        congruence_simple_parts: semis.congruence_parts,
    };
    Ok(match fmt {
        Format::Json => format!("{}\n", serde_json::to_string(&r).expect("serializable")),
        Format::Text => {
            let mut o = String::new();
            for n in &r.summands {
                let _ = writeln!(o, "summand {} complement {} idempotent {}", n.members, n.complement, n.idempotent);
            }
            let _ = writeln!(o, "longest summand chain {}", r.longest_chain);
            for (p, e) in r.irreducible_parts.iter().zip(&r.projections) {
                let _ = writeln!(o, "irreducible part {p} projection {e}");
            }
            let parts = |v: &Option<Vec<ElemSet>>| v.as_ref().map_or("none".to_string(), |v| sets(v));
            let _ = writeln!(o, "ideal-simple decomposition: {}", parts(&r.ideal_simple_parts));
            let _ = writeln!(o, "congruence-simple decomposition: {}", parts(&r.congruence_simple_parts));
            o
        }
    })
}

fn catalog_command(c: &CatalogCommand, limits: &Limits) -> Result<String> {
    let s = match c {
        CatalogCommand::Bni { n, i } => catalog::make_b(*n, *i)?,
        CatalogCommand::Lattice { file } => catalog::make_lattice_semiring(&first_lattice(file)?)?,
        CatalogCommand::End { file, top_preserving } => catalog::make_end_semiring(&first_lattice(file)?, *top_preserving, limits)?,
        CatalogCommand::Matrix { file, k } => catalog::make_matrix_semiring(&*first_semiring(file)?, *k, limits)?,
        CatalogCommand::Product { files } => {
            let factors: Vec<Semiring> = files.iter().map(|f| first_semiring(f).map(|s| (*s).clone())).collect::<Result<_>>()?;
            catalog::make_product(&factors)?
        }
    };
    Ok(text::write_semiring(&s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("finsemi").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bni_emits_the_b31_block() {
        let (code, out, _) = run_args(&["catalog", "bni", "--n", "3", "--i", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("add\n0 1 2\n1 2 1\n2 1 2\n"), "{out}");
        assert!(out.contains("mul\n0 0 0\n0 1 2\n0 2 2\n"), "{out}");
    }

    #[test]
    fn bad_parameters_and_flags_exit_2() {
        assert_eq!(run_args(&["catalog", "bni", "--n", "3", "--i", "3"]).0, 2);
        assert_eq!(run_args(&["audit", "--bogus"]).0, 2);
        assert_eq!(run_args(&["audit", "--limits", "max_steps=0"]).0, 2);
        assert_eq!(run_args(&["audit", "--limits", "nope=3"]).0, 2);
        assert_eq!(run_args(&["validate", "/nonexistent/file.sr"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("audit"));
    }

    #[test]
    fn audit_order_two_is_green() {
        let (code, out, _) = run_args(&["audit", "--order", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("o2#0") && out.contains("o2#1"));
        assert!(!out.contains("FAILS"));
    }
}
