//! Brute-force ground truth.
//!
//! Everything here is derived from the definitions alone: group elements
//! are found by scanning integer matrices, orbitals by applying those
//! elements to a base pair. The edge predicate is only consulted after the
//! fact, to compare.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{compose, mobius_apply, SubgroupSpec, UnimodularMatrix};
use crate::rational::{gcd, ProjectiveRational};
use crate::suborbital::{
    edge_check, enumerate_graph, is_self_paired, pair_map, DirectedEdge, Family, GraphSpec,
};

/// Largest entry bound the four-integer scan accepts by default.
pub const DEFAULT_SCAN_CEILING: i64 = 60;

pub type Pair = (ProjectiveRational, ProjectiveRational);

/// Configuration for bounded scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    scan_ceiling: i64,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { scan_ceiling: DEFAULT_SCAN_CEILING }
    }
}

/// The canonical members of a subgroup with all entries bounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedGroupSample {
    pub spec: SubgroupSpec,
    pub entry_bound: i64,
    /// Sorted, canonical, deduplicated.
    pub elements: Vec<UnimodularMatrix>,
}

impl BoundedGroupSample {
    pub fn contains(&self, g: &UnimodularMatrix) -> bool {
        self.elements.binary_search(&g.canonical()).is_ok()
    }
}

/// Images of a base pair under a bounded sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitalSample {
    pub base: Pair,
    pub pairs: BTreeSet<Pair>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitalReport {
    pub spec: GraphSpec,
    pub group: SubgroupSpec,
    pub entry_bound: i64,
    pub height_bound: i64,
    /// Orbital pairs inside the height bound.
    pub orbital_pairs: usize,
    /// Edges the predicate accepts inside the height bound.
    pub graph_edges: usize,
    /// Orbital pairs the predicate rejects.
    pub soundness_failures: Vec<Pair>,
    /// Accepted edges the bounded sample did not reach.
    pub completeness_misses: Vec<Pair>,
    /// The miss of least height, if any.
    pub smallest_missing: Option<Pair>,
}

impl OrbitalReport {
    pub fn is_sound(&self) -> bool {
        self.soundness_failures.is_empty()
    }
}

/// Products `g·h` with `g` from `left`, `h` from `right`, tested for
/// membership in `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentCheck {
    pub left: SubgroupSpec,
    pub right: SubgroupSpec,
    pub target: SubgroupSpec,
    pub products: usize,
    pub failures: Vec<(UnimodularMatrix, UnimodularMatrix)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub n1: i64,
    pub n2: i64,
    pub entry_bound: i64,
    pub scanned: usize,
    /// Scanned matrices where `Γ(n1) ∩ Γ(n2)` and `Γ(lcm)` disagree.
    pub intersection_failures: Vec<UnimodularMatrix>,
    pub containments: Vec<ContainmentCheck>,
    /// Whether `Γ₀(gcd) ⊆ Γ(n1)·Γ₀(n2)` was tested. It never is: bounded
    /// products cannot exhaust the target.
    pub reverse_inclusion_checked: bool,
}

impl LatticeReport {
    pub fn holds(&self) -> bool {
        self.intersection_failures.is_empty() && self.containments.iter().all(|c| c.failures.is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfPairedReport {
    pub spec: GraphSpec,
    /// `Γ₀(L,1)` for `F_{u,L}`, `Γ₀(1,M)` for `F_{M,u}`.
    pub group: SubgroupSpec,
    pub entry_bound: i64,
    /// `is_self_paired(spec)`.
    pub predicted: bool,
    /// A bounded member swapping the base pair.
    pub witness: Option<UnimodularMatrix>,
    /// The only PSL element that swaps the base pair, whatever its size,
    /// when it belongs to the group.
    pub exact_swap: Option<UnimodularMatrix>,
}

impl SelfPairedReport {
    pub fn agrees(&self) -> bool {
        self.predicted == self.witness.is_some()
    }
}

impl Oracle {
    pub fn with_scan_ceiling(scan_ceiling: i64) -> Self {
        Self { scan_ceiling }
    }

    pub fn scan_ceiling(&self) -> i64 {
        self.scan_ceiling
    }

    fn check_bound(&self, entry_bound: i64) -> Result<()> {
        if entry_bound < 1 {
            return Err(Error::InvalidBound(entry_bound));
        }
        if entry_bound > self.scan_ceiling {
            return Err(Error::BoundTooLarge { requested: entry_bound, limit: self.scan_ceiling });
        }
        Ok(())
    }

    /// Scans `(a, b, c)` and solves `ad − bc = 1` for `d`.
    pub fn enumerate_group(&self, spec: &SubgroupSpec, entry_bound: i64) -> Result<BoundedGroupSample> {
        spec.validate()?;
        self.check_bound(entry_bound)?;
        let n = entry_bound;
        let mut elements = Vec::new();
        let mut keep = |a: i64, b: i64, c: i64, d: i64| {
            let g = UnimodularMatrix::new(a, b, c, d).expect("determinant checked by the scan");
            if g.is_canonical() && spec.contains(&g) {
                elements.push(g);
            }
        };
        for a in -n..=n {
            for b in -n..=n {
                for c in -n..=n {
                    let bc = b * c;
                    if a == 0 {
                        if bc == -1 {
                            for d in -n..=n {
                                keep(a, b, c, d);
                            }
                        }
                    } else if (1 + bc) % a == 0 {
                        let d = (1 + bc) / a;
                        if d.abs() <= n {
                            keep(a, b, c, d);
                        }
                    }
                }
            }
        }
        elements.sort();
        Ok(BoundedGroupSample { spec: *spec, entry_bound, elements })
    }

    pub fn compare_edges_vs_orbital(
        &self,
        spec: &GraphSpec,
        group: &SubgroupSpec,
        entry_bound: i64,
        height_bound: i64,
    ) -> Result<OrbitalReport> {
        check_acting_group(spec, group)?;
        if height_bound < 1 {
            return Err(Error::InvalidBound(height_bound));
        }
        let sample = self.enumerate_group(group, entry_bound)?;
        let orbital = orbital_pairs(&sample, spec.base_pair())?;
        let fits = |v: &ProjectiveRational| v.height() <= height_bound as u64;
        let reached: BTreeSet<Pair> =
            orbital.pairs.into_iter().filter(|(a, b)| fits(a) && fits(b)).collect();

        let soundness_failures =
            reached.iter().filter(|(a, b)| edge_check(spec, a, b).is_none()).copied().collect();

        let graph = enumerate_graph(spec, height_bound)?;
        let mut completeness_misses: Vec<Pair> = graph
            .edges()
            .iter()
            .map(|e| (e.src(), e.dst()))
            .filter(|p| !reached.contains(p))
            .collect();
        completeness_misses.sort_by_key(|(a, b)| (a.height().max(b.height()), a.key(), b.key()));
        let smallest_missing = completeness_misses.first().copied();

        Ok(OrbitalReport {
            spec: *spec,
            group: *group,
            entry_bound,
            height_bound,
            orbital_pairs: reached.len(),
            graph_edges: graph.edges().len(),
            soundness_failures,
            completeness_misses,
            smallest_missing,
        })
    }

    /// Checks `Γ(n1) ∩ Γ(n2) = Γ(lcm)` on every bounded matrix, and that
    /// bounded products land in the gcd-level group for
    /// `Γ(n1)·Γ₀(n2)`, `Γ(n1)·Γ(n2)` and `Γ(n1)·Γ⁰(n2)`.
    pub fn verify_lattice_identity(&self, n1: i64, n2: i64, entry_bound: i64) -> Result<LatticeReport> {
        for n in [n1, n2] {
            if n < 1 {
                return Err(Error::InvalidModulus(n));
            }
        }
        self.check_bound(entry_bound)?;
        let g = gcd(n1, n2) as i64;
        let lcm = n1.checked_mul(n2 / g).ok_or(Error::ArithmeticOverflow)?;

        let full = self.enumerate_group(&SubgroupSpec::Full, entry_bound)?;
        let (p1, p2, pl) =
            (SubgroupSpec::Principal(n1), SubgroupSpec::Principal(n2), SubgroupSpec::Principal(lcm));
        let intersection_failures = full
            .elements
            .iter()
            .filter(|m| (p1.contains(m) && p2.contains(m)) != pl.contains(m))
            .copied()
            .collect();

        let left: Vec<UnimodularMatrix> = full.elements.iter().filter(|m| p1.contains(m)).copied().collect();
        let pairs = [
            (SubgroupSpec::Gamma0(n2), SubgroupSpec::Gamma0(g)),
            (SubgroupSpec::Principal(n2), SubgroupSpec::Principal(g)),
            (SubgroupSpec::GammaUpper0(n2), SubgroupSpec::GammaUpper0(g)),
        ];
        let mut containments = Vec::new();
        for (right_spec, target) in pairs {
            let right: Vec<&UnimodularMatrix> = full.elements.iter().filter(|m| right_spec.contains(m)).collect();
            let mut check = ContainmentCheck { left: p1, right: right_spec, target, products: 0, failures: Vec::new() };
            for a in &left {
                for b in &right {
                    let prod = compose(a, b)?;
                    check.products += 1;
                    if !target.contains(&prod) {
                        check.failures.push((*a, **b));
                    }
                }
            }
            containments.push(check);
        }

        Ok(LatticeReport {
            n1,
            n2,
            entry_bound,
            scanned: full.elements.len(),
            intersection_failures,
            containments,
            reverse_inclusion_checked: false,
        })
    }

    /// Searches bounded members of the root stabilizing group for one that
    /// swaps the base pair.
    pub fn verify_self_paired(&self, spec: &GraphSpec, entry_bound: i64) -> Result<SelfPairedReport> {
        let group = match spec.family() {
            Family::FInfinity => SubgroupSpec::Gamma0LM(spec.modulus(), 1),
            Family::FZero => SubgroupSpec::Gamma0LM(1, spec.modulus()),
        };
        let sample = self.enumerate_group(&group, entry_bound)?;
        let (a, b) = spec.base_pair();
        let witness = search_witness(&sample, (a, b), (b, a))?;
        let exact_swap = pair_map((a, b), (b, a))?.filter(|g| group.contains(g));
        Ok(SelfPairedReport {
            spec: *spec,
            group,
            entry_bound,
            predicted: is_self_paired(spec),
            witness,
            exact_swap,
        })
    }
}

fn check_acting_group(spec: &GraphSpec, group: &SubgroupSpec) -> Result<()> {
    group.validate()?;
    let SubgroupSpec::Gamma0LM(l, m) = *group else {
        return Err(Error::InvalidSpec(format!("{group} is not a two-parameter group Gamma0(L,M)")));
    };
    let level = match spec.family() {
        Family::FInfinity => l,
        Family::FZero => m,
    };
    if level != spec.modulus() {
        return Err(Error::InvalidSpec(format!("{spec} does not match the level of {group}")));
    }
    Ok(())
}

/// `{(g·α, g·β) : g ∈ sample}`; the base pair is always included.
pub fn orbital_pairs(sample: &BoundedGroupSample, base: Pair) -> Result<OrbitalSample> {
    let mut pairs = BTreeSet::new();
    pairs.insert(base);
    for g in &sample.elements {
        pairs.insert((mobius_apply(g, &base.0)?, mobius_apply(g, &base.1)?));
    }
    Ok(OrbitalSample { base, pairs })
}

/// The first sample element sending `from` onto `to` pointwise.
pub fn search_witness(sample: &BoundedGroupSample, from: Pair, to: Pair) -> Result<Option<UnimodularMatrix>> {
    for g in &sample.elements {
        if mobius_apply(g, &from.0)? == to.0 && mobius_apply(g, &from.1)? == to.1 {
            return Ok(Some(*g));
        }
    }
    Ok(None)
}

/// Brute-force transitivity check between two edges.
pub fn search_edge_witness(
    sample: &BoundedGroupSample,
    e1: &DirectedEdge,
    e2: &DirectedEdge,
) -> Result<Option<UnimodularMatrix>> {
    search_witness(sample, (e1.src(), e1.dst()), (e2.src(), e2.dst()))
}

/// Classes of `(x, y) ∈ (Z/n)²` with `gcd(x, y, n) = 1` under scaling by
/// units of `Z/n`.
pub fn count_blocks(n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::InvalidModulus(n));
    }
    if n > 1 << 12 {
        return Err(Error::BoundTooLarge { requested: n, limit: 1 << 12 });
    }
    let units: Vec<i64> = (1..=n).filter(|&k| gcd(k, n) == 1).map(|k| k % n).collect();
    let mut count = 0;
    for x in 0..n {
        for y in 0..n {
            if gcd(gcd(x, y) as i64, n) != 1 {
                continue;
            }
            // count (x, y) if it is the least member of its class
            let least = units.iter().all(|&t| (x, y) <= ((t * x) % n, (t * y) % n));
            if least {
                count += 1;
            }
        }
    }
    Ok(count)
}

pub fn enumerate_group(spec: &SubgroupSpec, entry_bound: i64) -> Result<BoundedGroupSample> {
    Oracle::default().enumerate_group(spec, entry_bound)
}

pub fn compare_edges_vs_orbital(
    spec: &GraphSpec,
    group: &SubgroupSpec,
    entry_bound: i64,
    height_bound: i64,
) -> Result<OrbitalReport> {
    Oracle::default().compare_edges_vs_orbital(spec, group, entry_bound, height_bound)
}

pub fn verify_lattice_identity(n1: i64, n2: i64, entry_bound: i64) -> Result<LatticeReport> {
    Oracle::default().verify_lattice_identity(n1, n2, entry_bound)
}

pub fn verify_self_paired(spec: &GraphSpec, entry_bound: i64) -> Result<SelfPairedReport> {
    Oracle::default().verify_self_paired(spec, entry_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{block_equivalent, invert};
    use crate::rational::{dedekind_psi, phi_pair};
    use crate::suborbital::transitivity_witness;

    fn pr(n: i64, d: i64) -> ProjectiveRational {
        ProjectiveRational::new(n, d).unwrap()
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> UnimodularMatrix {
        UnimodularMatrix::new(a, b, c, d).unwrap()
    }

    const INF: ProjectiveRational = ProjectiveRational::INFINITY;

    #[test]
    fn enumerate_group_examples() {
        let full = enumerate_group(&SubgroupSpec::Full, 1).unwrap();
        assert!(full.contains(&UnimodularMatrix::IDENTITY));
        assert!(full.contains(&m(0, -1, 1, 0)));
        assert!(full.contains(&m(1, 1, 0, 1)));
        assert!(full.elements.iter().all(|g| g.max_abs_entry() <= 1));

        let s = enumerate_group(&SubgroupSpec::Gamma0LM(2, 3), 3).unwrap();
        assert!(s.contains(&m(1, 0, 2, 1)));
        assert!(!s.contains(&m(1, 3, 2, 7)));

        assert_eq!(enumerate_group(&SubgroupSpec::Gamma0LM(2, 3), 0), Err(Error::InvalidBound(0)));
        assert_eq!(
            enumerate_group(&SubgroupSpec::Full, 61),
            Err(Error::BoundTooLarge { requested: 61, limit: 60 })
        );
        assert!(Oracle::with_scan_ceiling(61).check_bound(61).is_ok());
    }

    #[test]
    fn sample_invariants() {
        for spec in [SubgroupSpec::Full, SubgroupSpec::Gamma0LM(3, 2), SubgroupSpec::Principal(2)] {
            let s = enumerate_group(&spec, 8).unwrap();
            assert!(s.contains(&UnimodularMatrix::IDENTITY));
            assert!(s.elements.windows(2).all(|w| w[0] < w[1]));
            for g in &s.elements {
                assert!(g.is_canonical() && g.max_abs_entry() <= 8 && spec.contains(g));
                assert!(s.contains(&invert(g)));
            }
        }
    }

    #[test]
    fn enumeration_is_exhaustive() {
        // compare against a naive four-integer scan
        let n = 4;
        let spec = SubgroupSpec::Gamma0(2);
        let mut naive = Vec::new();
        for a in -n..=n {
            for b in -n..=n {
                for c in -n..=n {
                    for d in -n..=n {
                        if a * d - b * c == 1 {
                            let g = m(a, b, c, d);
                            if g.is_canonical() && spec.contains(&g) {
                                naive.push(g);
                            }
                        }
                    }
                }
            }
        }
        naive.sort();
        assert_eq!(enumerate_group(&spec, n).unwrap().elements, naive);
    }

    #[test]
    fn orbital_examples() {
        let trivial = BoundedGroupSample {
            spec: SubgroupSpec::Full,
            entry_bound: 1,
            elements: alloc::vec![UnimodularMatrix::IDENTITY],
        };
        let o = orbital_pairs(&trivial, (INF, pr(1, 2))).unwrap();
        assert_eq!(o.pairs.into_iter().collect::<Vec<_>>(), alloc::vec![(INF, pr(1, 2))]);

        let s = enumerate_group(&SubgroupSpec::Gamma0LM(2, 1), 5).unwrap();
        let o = orbital_pairs(&s, (INF, pr(1, 2))).unwrap();
        assert!(o.pairs.contains(&(INF, pr(1, 2))));
        assert!(o.pairs.contains(&(pr(1, 2), pr(1, 4))));

        let o = orbital_pairs(&s, (pr(3, 5), pr(3, 5))).unwrap();
        assert!(o.pairs.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn orbital_respects_blocks() {
        for l in [2, 3, 4, 5] {
            let s = enumerate_group(&SubgroupSpec::Gamma0LM(l, 1), 10).unwrap();
            let o = orbital_pairs(&s, (INF, pr(1, l))).unwrap();
            for (a, _) in &o.pairs {
                assert!(block_equivalent(a, &INF, l).unwrap(), "{a} under level {l}");
            }
        }
    }

    #[test]
    fn compare_examples() {
        let f12 = GraphSpec::f_infinity(1, 2).unwrap();
        let r = compare_edges_vs_orbital(&f12, &SubgroupSpec::Gamma0LM(2, 1), 10, 10).unwrap();
        assert!(r.is_sound());
        assert!(r.orbital_pairs > 0);

        let r = compare_edges_vs_orbital(&f12, &SubgroupSpec::Gamma0LM(2, 1), 1, 10).unwrap();
        assert!(!r.completeness_misses.is_empty());
        assert_eq!(r.smallest_missing, r.completeness_misses.first().copied());

        let f32 = GraphSpec::f_zero(3, 2).unwrap();
        let r = compare_edges_vs_orbital(&f32, &SubgroupSpec::Gamma0LM(1, 3), 10, 10).unwrap();
        assert!(r.is_sound());

        assert!(matches!(
            compare_edges_vs_orbital(&f12, &SubgroupSpec::Gamma0LM(3, 1), 5, 5),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            compare_edges_vs_orbital(&f12, &SubgroupSpec::Gamma0(2), 5, 5),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn reversed_specs_compare_sound() {
        for (mm, u) in [(5, 2), (7, 3)] {
            let spec = paired(GraphSpec::f_zero(mm, u).unwrap());
            let r = compare_edges_vs_orbital(&spec, &SubgroupSpec::Gamma0LM(1, mm), 12, 15).unwrap();
            assert!(r.is_sound(), "{spec}: {:?}", r.soundness_failures);
        }
    }

    fn paired(spec: GraphSpec) -> GraphSpec {
        crate::suborbital::paired_partner(&spec).unwrap()
    }

    #[test]
    fn count_blocks_examples() {
        assert_eq!(count_blocks(1), Ok(1));
        assert_eq!(count_blocks(2), Ok(3));
        assert_eq!(count_blocks(6), Ok(12));
        assert_eq!(count_blocks(0), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn count_blocks_is_psi() {
        for n in 1..=30 {
            assert_eq!(count_blocks(n).unwrap(), dedekind_psi(n).unwrap(), "n = {n}");
        }
        for l in 1..=12 {
            for mm in 1..=12 {
                assert_eq!(phi_pair(l, mm).unwrap(), count_blocks(l).unwrap() + count_blocks(mm).unwrap());
            }
        }
    }

    #[test]
    fn lattice_examples() {
        let r = verify_lattice_identity(2, 3, 10).unwrap();
        assert!(r.holds());
        assert!(!r.reverse_inclusion_checked);
        assert!(r.containments.iter().all(|c| c.products > 0));
        assert!(verify_lattice_identity(3, 3, 6).unwrap().holds());
        assert!(verify_lattice_identity(2, 4, 10).unwrap().holds());
        assert_eq!(verify_lattice_identity(2, 3, 0), Err(Error::InvalidBound(0)));
        assert_eq!(verify_lattice_identity(0, 3, 4), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn lattice_intersection_fails_in_psl_beyond_small_entries() {
        // +I mod 4 and -I mod 6, so in both images but not ±I mod 12
        let g = m(5, 12, 12, 29);
        assert!(SubgroupSpec::Principal(4).contains(&g));
        assert!(SubgroupSpec::Principal(6).contains(&g));
        assert!(!SubgroupSpec::Principal(12).contains(&g));
        assert!(verify_lattice_identity(4, 6, 12).unwrap().holds());
        let r = verify_lattice_identity(4, 6, 30).unwrap();
        assert!(r.intersection_failures.contains(&g));
    }

    #[test]
    fn self_paired_examples() {
        let r = verify_self_paired(&GraphSpec::f_infinity(1, 2).unwrap(), 5).unwrap();
        assert!(r.predicted && r.witness.is_some() && r.agrees());

        let r = verify_self_paired(&GraphSpec::f_infinity(2, 7).unwrap(), 12).unwrap();
        assert!(!r.predicted && r.witness.is_none() && r.agrees());

        // u² ≡ −1 (mod 5), but the only swapping matrix is not in Γ₀(5,1)
        let r = verify_self_paired(&GraphSpec::f_infinity(2, 5).unwrap(), 10).unwrap();
        assert!(r.predicted && r.witness.is_none() && r.exact_swap.is_none());
    }

    #[test]
    fn swap_exists_iff_unit_square_is_minus_one() {
        for n in 1..=10 {
            for u in 1..=n {
                if gcd(u, n) != 1 || (u == n && n != 1) {
                    continue;
                }
                for spec in [GraphSpec::f_infinity(u, n), GraphSpec::f_zero(n, u)] {
                    let spec = spec.unwrap();
                    let r = verify_self_paired(&spec, 4 * n).unwrap();
                    let unit = |t: i64| (t - 1) % n == 0 || (t + 1) % n == 0;
                    let derived = unit(u) && (u * u + 1) % n == 0;
                    assert_eq!(r.witness.is_some(), derived, "{spec}");
                    assert_eq!(r.exact_swap.is_some(), derived, "{spec}");
                }
            }
        }
    }

    #[test]
    fn search_matches_algebraic_witness() {
        let spec = GraphSpec::f_infinity(1, 3).unwrap();
        let group = SubgroupSpec::Gamma0LM(3, 1);
        let sample = enumerate_group(&group, 12).unwrap();
        let g = enumerate_graph(&spec, 4).unwrap();
        for e1 in g.edges() {
            for e2 in g.edges() {
                let brute = search_edge_witness(&sample, e1, e2).unwrap();
                let exact = transitivity_witness(&spec, e1, e2, &group, 12).unwrap();
                assert_eq!(brute, exact, "{e1} -> {e2}");
            }
        }
    }
}
