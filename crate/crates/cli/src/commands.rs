use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::json;

use nnirank2_core::diagram::{build_diagram, canonicalize};
use nnirank2_core::exact::rank_exact;
use nnirank2_core::instancegen::GenSpec;
use nnirank2_core::oracle::brute_force;
use nnirank2_core::solver::verify_factorization_dim;
use nnirank2_core::{reduce_to_3x3, solve_with, verify_factorization, SolveOptions, Verdict};

use crate::matrix_file::{format_matrix, read_matrix, ParseError};
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_RANK2: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] nnirank2_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn exit_for(v: Verdict) -> i32 {
    match v {
        Verdict::NotRank2 => EXIT_NOT_RANK2,
        Verdict::Rank2 | Verdict::RankAtMostOne => EXIT_OK,
    }
}

fn check_canon_index(r: usize) -> CliResult<()> {
    if r == 1 || r == 2 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--r must be 1 or 2, got {r}")))
    }
}

pub fn factor(input: &Path, json_out: bool, r: usize, explain: bool, out: &mut dyn Write) -> CliResult<i32> {
    check_canon_index(r)?;
    let a = read_matrix(input)?;
    let outcome = solve_with(&a, SolveOptions { canon_index: r, record_rejections: explain })?;
    // never print a certificate that does not multiply back to the input
    let verified = match (&outcome.certificate, &outcome.rank_one) {
        (Some(c), _) => verify_factorization(&a, &c.f1, &c.f2),
        (None, Some((f1, f2))) => verify_factorization_dim(&a, f1, f2, 1),
        (None, None) => true,
    };
    if !verified {
        return Err(nnirank2_core::Error::Internal("factorization failed verification".into()).into());
    }
    if json_out {
        writeln!(out, "{}", render::outcome(&outcome, explain))?;
    } else {
        write!(out, "{}", render::outcome_text(&outcome, explain))?;
    }
    Ok(exit_for(outcome.verdict))
}

pub fn oracle(input: &Path, json_out: bool, out: &mut dyn Write) -> CliResult<i32> {
    let a = read_matrix(input)?;
    if let Some((row, col)) = a.first_negative() {
        return Err(nnirank2_core::Error::Negative { row, col }.into());
    }
    let rank = rank_exact(&a);
    let (verdict, witness, enumerated) = match rank {
        0 | 1 => (Verdict::RankAtMostOne, None, 0),
        _ => {
            let cd = canonicalize(&build_diagram(&a)?, 1)?;
            let v = brute_force(&cd)?;
            let verdict = if v.rank2 { Verdict::Rank2 } else { Verdict::NotRank2 };
            (verdict, v.witness, v.pairs_enumerated)
        }
    };
    if json_out {
        let w = witness.as_ref().map(|p| json!([render::point(&p.a), render::point(&p.b)]));
        writeln!(out, "{}", json!({ "verdict": verdict.as_str(), "witness": w, "pairs_enumerated": enumerated }))?;
    } else {
        writeln!(out, "verdict: {verdict}")?;
        if let Some(p) = &witness {
            writeln!(out, "witness: a = {}, b = {}", p.a, p.b)?;
        }
        writeln!(out, "pairs_enumerated: {enumerated}")?;
    }
    Ok(exit_for(verdict))
}

pub fn reduce(input: &Path, trace: bool, output: Option<&Path>, out: &mut dyn Write) -> CliResult<i32> {
    let a = read_matrix(input)?;
    let (c, tr) = reduce_to_3x3(&a)?;
    match output {
        Some(path) => fs::write(path, format_matrix(&c))?,
        None => write!(out, "{}", format_matrix(&c))?,
    }
    if trace {
        if output.is_none() {
            writeln!(out)?;
        }
        write!(out, "{tr}")?;
    }
    Ok(EXIT_OK)
}

pub fn generate(spec: &GenSpec, count: u64, outdir: &Path, out: &mut dyn Write) -> CliResult<Vec<PathBuf>> {
    spec.validate()?;
    fs::create_dir_all(outdir)?;
    let mut written = Vec::new();
    for i in 0..count {
        let m = spec.generate(i)?;
        let path = outdir.join(format!("{}_{}_{}.txt", spec.kind.as_str(), spec.seed, i));
        fs::write(&path, format_matrix(&m))?;
        writeln!(out, "{}", path.display())?;
        written.push(path);
    }
    Ok(written)
}

pub fn diagram(input: &Path, canonical: bool, r: usize, json_out: bool, out: &mut dyn Write) -> CliResult<i32> {
    check_canon_index(r)?;
    let a = read_matrix(input)?;
    let d = build_diagram(&a)?;
    let cd = if canonical { Some(canonicalize(&d, r)?) } else { None };
    if json_out {
        let doc = cd.as_ref().map_or_else(|| render::diagram(&d), render::canonical);
        writeln!(out, "{doc}")?;
    } else {
        write!(out, "{}", render::diagram_text(&d, cd.as_ref()))?;
    }
    Ok(EXIT_OK)
}
