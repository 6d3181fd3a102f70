//! Test harness: random programs, the law suite, the bundled corpus and
//! output rendering.

pub mod corpus;
pub mod generator;
pub mod laws;
pub mod render;

use crate::error::Error;
use crate::program::Program;

pub use generator::{generate_program, GeneratorConfig};
pub use laws::{
    check_law, check_programs, Law, LawReport, OperatorSet, Outcome, StandardOperators,
};

/// Random programs for the law suite. Successive programs cycle through
/// three profiles so that every law sees programs it applies to:
/// aggregate-free disjunctive, normal with aggregates, and unrestricted.
pub fn law_programs(base: &GeneratorConfig, count: usize) -> Result<Vec<(String, Program)>, Error> {
    (0..count)
        .map(|k| {
            let seed = base.seed.wrapping_add(k as u64);
            let mut cfg = GeneratorConfig {
                seed,
                ..base.clone()
            };
            match k % 3 {
                0 => cfg.agg_prob = 0.0,
                1 => cfg.disj_width = 1,
                _ => {}
            }
            Ok((
                format!("random #{k} (seed {seed})"),
                generate_program(&cfg)?,
            ))
        })
        .collect()
}

/// The corpus followed by `count` random programs.
pub fn suite_programs(
    base: &GeneratorConfig,
    count: usize,
) -> Result<Vec<(String, Program)>, Error> {
    let mut out: Vec<(String, Program)> = corpus::CORPUS
        .iter()
        .map(|e| (format!("corpus {}", e.name), e.program()))
        .collect();
    out.extend(law_programs(base, count)?);
    Ok(out)
}

/// Runs each law over `programs`.
pub fn check_suite(
    laws: &[Law],
    programs: &[(String, Program)],
    ops: &dyn OperatorSet,
) -> Vec<LawReport> {
    laws.iter()
        .map(|&law| check_programs(law, programs.iter().map(|(o, p)| (o.clone(), p)), ops))
        .collect()
}

/// One line per law, followed by the shrunk reproducer of any failure.
pub fn format_reports(reports: &[LawReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{status} {} ({} checked, {} skipped): {}\n",
            r.law,
            r.checked,
            r.skipped,
            r.law.description()
        ));
        if let Some(cx) = &r.counterexample {
            out.push_str(&format!(
                "  from {}: {}\n  reproducer:\n",
                cx.origin, cx.message
            ));
            for line in cx.program.to_string().lines() {
                out.push_str(&format!("    {line}\n"));
            }
            if cx.program.rules().is_empty() {
                out.push_str("    % empty program\n");
            }
        }
    }
    out
}
