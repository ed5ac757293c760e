use std::io::Write;

use tightcut_core::matching::{brick_violation, is_factorizable};
use tightcut_core::oracle::{tight_cuts_bruteforce, verify_all, DEFAULT_ENUM_BOUND};
use tightcut_core::{fat_witness, CanonicalDecomposition, Error, Graph, Matching, VertexSet};

use crate::error::{CliError, Result};
use crate::report::{to_dot, DecompositionReport, WitnessReport};

pub const ENUM_BOUND_VAR: &str = "TIGHTCUT_ENUM_BOUND";

/// The enumeration bound from the environment, or the default.
pub fn enum_bound() -> Result<usize> {
    match std::env::var(ENUM_BOUND_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Argument {
            what: "TIGHTCUT_ENUM_BOUND",
            msg: format!("{s:?} is not a non-negative integer"),
        }),
        Err(_) => Ok(DEFAULT_ENUM_BOUND),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposeFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Brick,
    TightCuts,
    VerifyDecomp,
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source: e }
}

pub fn decompose(g: &Graph, format: DecomposeFormat, out: &mut impl Write) -> Result<()> {
    if !is_factorizable(g) {
        return Err(Error::NotFactorizable.into());
    }
    let d = CanonicalDecomposition::new(g)?;
    let text = match format {
        DecomposeFormat::Json => DecompositionReport::new(&d)?.to_json() + "\n",
        DecomposeFormat::Dot => to_dot(&d)?,
    };
    out.write_all(text.as_bytes()).map_err(io)
}

pub fn witness(g: &Graph, shore: &VertexSet, m: Option<&Matching>, json: bool, out: &mut impl Write) -> Result<()> {
    let w = fat_witness(g, shore, m)?;
    let r = WitnessReport::new(g, &w);
    let text = if json { serde_json::to_string_pretty(&r).expect("report serializes") + "\n" } else { r.to_text() };
    out.write_all(text.as_bytes()).map_err(io)
}

fn set_text(s: &VertexSet) -> String {
    let v: Vec<String> = s.iter().map(|x| x.0.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

pub fn check(g: &Graph, kind: CheckKind, bound: usize, out: &mut impl Write) -> Result<()> {
    match kind {
        CheckKind::Brick => {
            let line = match brick_violation(g) {
                None => "true".to_string(),
                Some(Some((a, b))) => format!("false: removing {a} and {b} leaves no perfect matching"),
                Some(None) => "false".to_string(),
            };
            writeln!(out, "{line}").map_err(io)
        }
        CheckKind::TightCuts => {
            let cuts = tight_cuts_bruteforce(g, bound)?;
            let n = g.vertex_count();
            for s in &cuts {
                let kind = if s.len() == 1 || s.len() + 1 == n { "star" } else { "non-trivial" };
                writeln!(out, "{} {kind}", set_text(s)).map_err(io)?;
            }
            writeln!(out, "{} tight cut(s)", cuts.len()).map_err(io)
        }
        CheckKind::VerifyDecomp => {
            let tallies = verify_all(g, bound)?;
            let mut bad = 0;
            for t in &tallies {
                let status = if t.passed() { "ok" } else { "FAILED" };
                writeln!(out, "{:<40} {status} ({} checked, {} violations)", t.name, t.checked, t.violations.len())
                    .map_err(io)?;
                for v in &t.violations {
                    writeln!(out, "    {v}").map_err(io)?;
                }
                bad += t.violations.len();
            }
            if bad > 0 {
                return Err(CliError::Violations(bad));
            }
            writeln!(out, "all invariants hold").map_err(io)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tightcut_core::{catalog, vset};

    fn run(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> (Result<()>, String) {
        let mut buf = Vec::new();
        let r = f(&mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn brick_checks() {
        let (r, s) = run(|o| check(&catalog::k4(), CheckKind::Brick, 16, o));
        assert!(r.is_ok());
        assert_eq!(s, "true\n");
        let (_, s) = run(|o| check(&catalog::k33(), CheckKind::Brick, 16, o));
        assert!(s.starts_with("false"));
    }

    #[test]
    fn prism_tight_cuts() {
        let (r, s) = run(|o| check(&catalog::prism(), CheckKind::TightCuts, 16, o));
        assert!(r.is_ok());
        assert!(s.ends_with("6 tight cut(s)\n"));
        assert_eq!(s.matches(" star").count(), 6);
        let (r, _) = run(|o| check(&catalog::petersen(), CheckKind::TightCuts, 8, o));
        assert_eq!(r.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn witness_text() {
        let g = catalog::prism();
        let m = Matching::from_pairs(&g, &[(1, 2), (3, 6), (4, 5)]).unwrap();
        let (r, s) = run(|o| witness(&g, &vset([1, 2, 3]), Some(&m), false, o));
        assert!(r.is_ok(), "{s}");
        assert!(s.contains("input matching: 1-2,3-6,4-5"));
        let crossing: usize = s
            .lines()
            .find_map(|l| l.strip_prefix("crossing edges: "))
            .unwrap()
            .parse()
            .unwrap();
        assert!(crossing >= 2);
    }

    #[test]
    fn odd_graph_is_not_factorizable() {
        let (r, _) = run(|o| decompose(&catalog::triangle(), DecomposeFormat::Json, o));
        let e = r.unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert_eq!(e.to_string(), "not factorizable");
    }
}
