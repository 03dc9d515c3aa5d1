//! Verification suites built on the oracle.
//!
//! Every suite returns a [`SuiteReport`]; a suite passes iff all of its hard
//! checks pass. Completeness misses of a bounded orbital are warnings.

use std::collections::BTreeSet;

use serde_json::json;
use suborbital_core::oracle::Oracle;
use suborbital_core::rational::{dedekind_psi, gcd, phi_pair};
use suborbital_core::suborbital::{enumerate_graph, paired_partner};
use suborbital_core::{oracle, GraphSpec, Result, SubgroupSpec};

use crate::report::{lattice_json, orbital_json, self_paired_json, self_paired_phrase, Check, SuiteReport};

pub const DEFAULT_BLOCKS_MAX: i64 = 30;
pub const DEFAULT_ORBITAL_ENTRY_BOUND: i64 = 20;
pub const DEFAULT_HEIGHT_BOUND: i64 = 30;
pub const DEFAULT_LATTICE_ENTRY_BOUND: i64 = 12;
/// Largest modulus swept by the default self-paired suite.
pub const DEFAULT_SELF_PAIRED_MAX: i64 = 10;
/// `phi_pair` is cross-checked for both arguments up to this value.
pub const PHI_PAIR_MAX: i64 = 20;

pub const DEFAULT_LATTICE_PAIRS: [(i64, i64); 3] = [(2, 3), (2, 4), (4, 6)];
pub const DEFAULT_PAIRING_SPECS: [(i64, i64); 3] = [(5, 2), (7, 3), (8, 3)];

/// `(graph, acting group)` configurations for the default orbital sweep:
/// `F_{u,L}` under `Γ₀(L,M)` with `M ∈ {1, 2, L}`, and `F_{M,u}` under
/// `Γ₀(L,M)` with `L ∈ {1, 2}`.
pub fn default_orbital_configs() -> Vec<(GraphSpec, SubgroupSpec)> {
    let mut out = Vec::new();
    for (u, l) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 5)] {
        let ms: BTreeSet<i64> = [1, 2, l].into_iter().collect();
        for m in ms {
            out.push((GraphSpec::f_infinity(u, l).expect("valid"), SubgroupSpec::Gamma0LM(l, m)));
        }
    }
    for (u, m) in [(1, 2), (2, 3), (2, 5), (3, 7)] {
        for l in [1, 2] {
            out.push((GraphSpec::f_zero(m, u).expect("valid"), SubgroupSpec::Gamma0LM(l, m)));
        }
    }
    out
}

/// Every `F_{u,L}` and `F_{M,u}` acted on by `Γ₀(L,M)`, optionally
/// restricted to one `u`.
pub fn orbital_configs_for(l: i64, m: i64, u: Option<i64>) -> Result<Vec<(GraphSpec, SubgroupSpec)>> {
    let group = SubgroupSpec::Gamma0LM(l, m);
    group.validate()?;
    let mut out = Vec::new();
    for (modulus, make) in [
        (l, GraphSpec::f_infinity as fn(i64, i64) -> Result<GraphSpec>),
        (m, |u, m| GraphSpec::f_zero(m, u)),
    ] {
        let family_specs: Vec<GraphSpec> = match u {
            Some(u) => vec![make(u, modulus)?],
            None => units_below(modulus).into_iter().map(|u| make(u, modulus).expect("valid")).collect(),
        };
        out.extend(family_specs.into_iter().map(|s| (s, group)));
    }
    Ok(out)
}

fn units_below(n: i64) -> Vec<i64> {
    if n == 1 {
        return vec![1];
    }
    (1..n).filter(|&u| gcd(u, n) == 1).collect()
}

/// All `(u, modulus)` with `1 < modulus <= max`, `u < modulus`, coprime, for
/// both families.
pub fn self_paired_sweep(max: i64) -> Vec<GraphSpec> {
    let mut out = Vec::new();
    for n in 2..=max {
        for u in units_below(n) {
            out.push(GraphSpec::f_infinity(u, n).expect("valid"));
            out.push(GraphSpec::f_zero(n, u).expect("valid"));
        }
    }
    out
}

pub fn blocks(max: i64) -> Result<SuiteReport> {
    let mut mismatches = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=max {
        let (c, p) = (oracle::count_blocks(n)?, dedekind_psi(n)?);
        counts.push(c);
        if c != p {
            mismatches.push(json!({"n": n, "count_blocks": c, "psi": p}));
        }
    }
    let psi_check = Check {
        name: format!("count_blocks(n) = psi(n) for n <= {max}"),
        passed: mismatches.is_empty(),
        summary: format!("{} of {} values agree", max as usize - mismatches.len(), max),
        warnings: Vec::new(),
        data: json!({"max": max, "mismatches": mismatches}),
    };

    let top = max.min(PHI_PAIR_MAX);
    let mut bad = Vec::new();
    for l in 1..=top {
        for m in 1..=top {
            let expected = counts[l as usize - 1] + counts[m as usize - 1];
            let got = phi_pair(l, m)?;
            if got != expected {
                bad.push(json!({"l": l, "m": m, "phi_pair": got, "count_sum": expected}));
            }
        }
    }
    let pair_check = Check {
        name: format!("phi_pair(L,M) = count_blocks(L) + count_blocks(M) for L, M <= {top}"),
        passed: bad.is_empty(),
        summary: format!("{} mismatches over {} pairs", bad.len(), top * top),
        warnings: Vec::new(),
        data: json!({"max": top, "mismatches": bad}),
    };
    Ok(SuiteReport::new("blocks", vec![psi_check, pair_check]))
}

pub fn orbital(
    oracle: &Oracle,
    configs: &[(GraphSpec, SubgroupSpec)],
    entry_bound: i64,
    height_bound: i64,
) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for (spec, group) in configs {
        let r = oracle.compare_edges_vs_orbital(spec, group, entry_bound, height_bound)?;
        let mut warnings = Vec::new();
        if let Some((a, b)) = r.smallest_missing {
            warnings.push(format!(
                "{} accepted edges not reached at entry bound {}; smallest {a} -> {b}",
                r.completeness_misses.len(),
                entry_bound
            ));
        }
        checks.push(Check {
            name: format!("{spec} under {group}"),
            passed: r.is_sound(),
            summary: format!(
                "{} orbital pairs, {} soundness failures, {} graph edges",
                r.orbital_pairs,
                r.soundness_failures.len(),
                r.graph_edges
            ),
            warnings,
            data: orbital_json(&r),
        });
    }
    Ok(SuiteReport::new("oracle", checks))
}

/// `entry_bound = None` uses `4 · modulus` for each spec.
pub fn self_paired(oracle: &Oracle, specs: &[GraphSpec], entry_bound: Option<i64>) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for spec in specs {
        let bound = match entry_bound {
            Some(b) => b,
            None => spec.modulus().checked_mul(4).ok_or(suborbital_core::Error::ArithmeticOverflow)?,
        };
        let r = oracle.verify_self_paired(spec, bound)?;
        checks.push(Check {
            name: format!("{spec} at entry bound {bound}"),
            passed: r.agrees(),
            summary: self_paired_phrase(&r),
            warnings: Vec::new(),
            data: self_paired_json(&r),
        });
    }
    Ok(SuiteReport::new("selfpaired", checks))
}

/// Edge reversal maps `F_{M,u}` onto its partner graph, and the partner of
/// the partner is the original spec.
pub fn pairing(specs: &[(i64, i64)], height_bound: i64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for &(m, u) in specs {
        let spec = GraphSpec::f_zero(m, u)?;
        let partner = paired_partner(&spec)?;
        let g = enumerate_graph(&spec, height_bound)?;
        let h = enumerate_graph(&partner, height_bound)?;
        let reversed: BTreeSet<_> = g.edges().iter().map(|e| e.reversed()).map(|e| (e.key(), e.sign())).collect();
        let target: BTreeSet<_> = h.edges().iter().map(|e| (e.key(), e.sign())).collect();
        let only_reversed = reversed.difference(&target).count();
        let only_partner = target.difference(&reversed).count();
        let involution = paired_partner(&partner)? == spec;
        checks.push(Check {
            name: format!("{spec} paired with {partner} at height {height_bound}"),
            passed: only_reversed == 0 && only_partner == 0 && involution,
            summary: format!(
                "{} edges, {} reversed edges missing from the partner, {} partner edges unmatched",
                g.edges().len(),
                only_reversed,
                only_partner
            ),
            warnings: Vec::new(),
            data: json!({
                "spec": spec.to_string(),
                "partner": partner.to_string(),
                "height_bound": height_bound,
                "edges": g.edges().len(),
                "partner_edges": h.edges().len(),
                "unmatched_reversed": only_reversed,
                "unmatched_partner": only_partner,
                "involution": involution,
            }),
        });
    }
    Ok(SuiteReport::new("pairing", checks))
}

pub fn lattice(oracle: &Oracle, pairs: &[(i64, i64)], entry_bound: i64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for &(n1, n2) in pairs {
        let r = oracle.verify_lattice_identity(n1, n2, entry_bound)?;
        let products: usize = r.containments.iter().map(|c| c.products).sum();
        let failures: usize = r.containments.iter().map(|c| c.failures.len()).sum();
        checks.push(Check {
            name: format!("lattice ({n1}, {n2}) at entry bound {entry_bound}"),
            passed: r.holds(),
            summary: format!(
                "{} matrices, {} intersection failures, {} products, {} containment failures",
                r.scanned,
                r.intersection_failures.len(),
                products,
                failures
            ),
            warnings: vec!["reverse inclusion of the product identity is not checked".to_string()],
            data: lattice_json(&r),
        });
    }
    Ok(SuiteReport::new("lattice", checks))
}
