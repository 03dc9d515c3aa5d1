//! Suborbital graphs `F_{u,L}` and `F_{M,u}` of Γ₀(L,M).
//!
//! `F_{u,L}` is the orbital of `(∞, u/L)` and `F_{M,u}` the orbital of
//! `(0, M/u)`. Vertices of a graph are the points of the ≈-block of its
//! root (`den ≡ 0 (mod L)` resp. `num ≡ 0 (mod M)`); an edge `r/s → x/y`
//! additionally needs its source in the orbit of the root and
//!
//! ```text
//! F_{u,L}:  x ≡ δ·u·r, y ≡ δ·u·s (mod L),  r·y − s·x =  δ·L
//! F_{M,u}:  x ≡ δ·u·r, y ≡ δ·u·s (mod M),  r·y − s·x = −δ·M
//! ```
//!
//! for one `δ ∈ {+1, −1}`. The recorded [`Sign`] is the sign of
//! `r·y − s·x`, which is `+` exactly when the source is the larger point.
//!
//! A *reversed* spec describes the paired graph (`F_{−M,ū}`): its edges
//! are the reverses of the forward graph's, expressed through `ū` with the
//! orbit condition moved to the destination.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::group::{mobius_apply, SubgroupSpec, UnimodularMatrix};
use crate::rational::{compare, ext_gcd, gcd, mod_inverse, residue, ProjectiveRational};
use crate::{Error, Result};

/// Largest height accepted by [`enumerate_graph`].
pub const DEFAULT_HEIGHT_LIMIT: i64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `F_{u,L}`, rooted at ∞.
    FInfinity,
    /// `F_{M,u}`, rooted at 0.
    FZero,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::FInfinity => "finf",
            Family::FZero => "fzero",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "finf" => Some(Family::FInfinity),
            "fzero" => Some(Family::FZero),
            _ => None,
        }
    }
}

/// Parameters of a suborbital graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphSpec {
    family: Family,
    u: i64,
    modulus: i64,
    reversed: bool,
}

impl GraphSpec {
    /// Requires `modulus >= 1`, `u != 0`, `gcd(u, modulus) = 1` and
    /// `1 <= u < modulus` whenever `modulus > 1`.
    pub fn new(family: Family, u: i64, modulus: i64, reversed: bool) -> Result<Self> {
        if modulus < 1 {
            return Err(Error::InvalidSpec(format!("modulus {modulus} must be >= 1")));
        }
        if u == 0 {
            return Err(Error::InvalidSpec(String::from("u must be nonzero")));
        }
        if modulus > 1 && !(1..modulus).contains(&u) {
            return Err(Error::InvalidSpec(format!("u = {u} must satisfy 1 <= u < {modulus}")));
        }
        if gcd(u, modulus) != 1 {
            return Err(Error::InvalidSpec(format!("gcd({u}, {modulus}) != 1")));
        }
        Ok(Self { family, u, modulus, reversed })
    }

    pub fn f_infinity(u: i64, l: i64) -> Result<Self> {
        Self::new(Family::FInfinity, u, l, false)
    }

    pub fn f_zero(m: i64, u: i64) -> Result<Self> {
        Self::new(Family::FZero, u, m, false)
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn u(&self) -> i64 {
        self.u
    }
    pub fn modulus(&self) -> i64 {
        self.modulus
    }
    pub fn reversed(&self) -> bool {
        self.reversed
    }

    /// The `u` of the forward graph (for a reversed spec, the inverse of
    /// the stored `ū`).
    pub fn forward_u(&self) -> i64 {
        if self.reversed {
            invert_unit(self.u, self.modulus)
        } else {
            self.u
        }
    }

    /// The ordered pair whose orbital is the edge set.
    pub fn base_pair(&self) -> (ProjectiveRational, ProjectiveRational) {
        let u = self.forward_u();
        let (root, partner) = match self.family {
            Family::FInfinity => (ProjectiveRational::INFINITY, fraction(u, self.modulus)),
            Family::FZero => (ProjectiveRational::ZERO, fraction(self.modulus, u)),
        };
        if self.reversed {
            (partner, root)
        } else {
            (root, partner)
        }
    }

    /// Membership in the ≈-block of the root.
    pub fn in_block(&self, v: &ProjectiveRational) -> bool {
        match self.family {
            Family::FInfinity => residue(v.den() as i128, self.modulus) == 0,
            Family::FZero => residue(v.num() as i128, self.modulus) == 0,
        }
    }

    /// Membership in the Γ₀(L,1) (resp. Γ₀(1,M)) orbit of the root.
    pub fn in_root_orbit(&self, v: &ProjectiveRational) -> bool {
        let m = self.modulus;
        let unit = |t: i64| {
            let t = residue(t as i128, m);
            t == residue(1, m) || t == residue(-1, m)
        };
        match self.family {
            Family::FInfinity => residue(v.den() as i128, m) == 0 && unit(v.num()),
            Family::FZero => residue(v.num() as i128, m) == 0 && unit(v.den()),
        }
    }
}

fn fraction(n: i64, d: i64) -> ProjectiveRational {
    // n/d with gcd 1 and d > 0 is already reduced
    ProjectiveRational::new(n, d).expect("validated spec yields a valid base point")
}

fn invert_unit(u: i64, m: i64) -> i64 {
    if m == 1 {
        u
    } else {
        mod_inverse(u, m).expect("validated spec has gcd(u, modulus) = 1")
    }
}

/// `F[u, L]`, `F[M, u]`, and `F[-M, ū]` / `F[ū, -L]` for reversed specs.
impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = if self.reversed { -self.modulus } else { self.modulus };
        match self.family {
            Family::FInfinity => write!(f, "F[{}, {}]", self.u, m),
            Family::FZero => write!(f, "F[{}, {}]", m, self.u),
        }
    }
}

/// `+` when the source is greater than the destination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "+" => Some(Sign::Plus),
            "-" => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flipped(&self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn of_order(o: Ordering) -> Option<Self> {
        match o {
            Ordering::Greater => Some(Sign::Plus),
            Ordering::Less => Some(Sign::Minus),
            Ordering::Equal => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirectedEdge {
    src: ProjectiveRational,
    dst: ProjectiveRational,
    sign: Sign,
}

impl DirectedEdge {
    /// The sign is derived from the order of the endpoints.
    pub fn new(src: ProjectiveRational, dst: ProjectiveRational) -> Result<Self> {
        let sign = Sign::of_order(compare(&src, &dst))
            .ok_or_else(|| Error::InvariantViolation(format!("loop at {src}")))?;
        Ok(Self { src, dst, sign })
    }

    /// An edge with an explicitly recorded sign, checked only when it is
    /// loaded into a [`SuborbitalGraph`].
    pub fn with_sign(src: ProjectiveRational, dst: ProjectiveRational, sign: Sign) -> Self {
        Self { src, dst, sign }
    }

    pub fn src(&self) -> ProjectiveRational {
        self.src
    }
    pub fn dst(&self) -> ProjectiveRational {
        self.dst
    }
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn reversed(&self) -> Self {
        Self { src: self.dst, dst: self.src, sign: self.sign.flipped() }
    }

    /// Lexicographic on `(src.num, src.den, dst.num, dst.den)`.
    pub fn key(&self) -> ((i64, i64), (i64, i64)) {
        (self.src.key(), self.dst.key())
    }

    /// `r·y − s·x` for `src = r/s`, `dst = x/y`.
    pub fn determinant(&self) -> i128 {
        pair_determinant(&self.src, &self.dst)
    }
}

impl fmt::Display for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} ({})", self.src, self.dst, self.sign.symbol())
    }
}

impl fmt::Debug for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn pair_determinant(v: &ProjectiveRational, w: &ProjectiveRational) -> i128 {
    v.num() as i128 * w.den() as i128 - v.den() as i128 * w.num() as i128
}

/// The sign of the edge `from → to` if the spec's graph has it.
pub fn edge_check(spec: &GraphSpec, from: &ProjectiveRational, to: &ProjectiveRational) -> Option<Sign> {
    let (anchor, other) = if spec.reversed { (to, from) } else { (from, to) };
    if !spec.in_root_orbit(anchor) || !spec.in_block(other) {
        return None;
    }
    let m = spec.modulus;
    let u = spec.u as i128;
    let orientation: i128 = match (spec.family, spec.reversed) {
        (Family::FInfinity, false) | (Family::FZero, true) => 1,
        (Family::FInfinity, true) | (Family::FZero, false) => -1,
    };
    let (r, s) = (from.num() as i128, from.den() as i128);
    let (x, y) = (to.num() as i128, to.den() as i128);
    let det = r * y - s * x;
    for delta in [1i128, -1] {
        if det == orientation * delta * m as i128
            && residue(x - delta * u * r, m) == 0
            && residue(y - delta * u * s, m) == 0
        {
            return Some(if det > 0 { Sign::Plus } else { Sign::Minus });
        }
    }
    None
}

/// Vertices and signed edges of a suborbital graph within a height bound.
///
/// Vertices are sorted by `(num, den)`, edges by `(src, dst)` keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuborbitalGraph {
    spec: GraphSpec,
    height_bound: i64,
    vertices: Vec<ProjectiveRational>,
    edges: Vec<DirectedEdge>,
}

impl SuborbitalGraph {
    /// Validates every invariant: heights, block membership, endpoints
    /// present, no duplicates, and each edge accepted by [`edge_check`]
    /// with its recorded sign.
    pub fn from_parts(
        spec: GraphSpec,
        height_bound: i64,
        mut vertices: Vec<ProjectiveRational>,
        mut edges: Vec<DirectedEdge>,
    ) -> Result<Self> {
        if height_bound < 1 {
            return Err(Error::InvalidBound(height_bound));
        }
        vertices.sort_by_key(|v| v.key());
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvariantViolation(format!("duplicate vertex {}", w[0])));
        }
        for v in &vertices {
            if v.height() > height_bound as u64 {
                return Err(Error::InvariantViolation(format!(
                    "vertex {v} exceeds height bound {height_bound}"
                )));
            }
            if !spec.in_block(v) {
                return Err(Error::InvariantViolation(format!("vertex {v} is outside the block of {spec}")));
            }
        }
        edges.sort_by_key(|e| e.key());
        if let Some(w) = edges.windows(2).find(|w| w[0].key() == w[1].key()) {
            return Err(Error::InvariantViolation(format!("duplicate edge {}", w[0])));
        }
        for e in &edges {
            for end in [e.src, e.dst] {
                if vertices.binary_search_by_key(&end.key(), |v| v.key()).is_err() {
                    return Err(Error::InvariantViolation(format!("edge {e}: endpoint {end} is not a vertex")));
                }
            }
            if e.determinant().unsigned_abs() != spec.modulus as u128 {
                return Err(Error::InvariantViolation(format!(
                    "edge {e}: determinant {} is not ±{}",
                    e.determinant(),
                    spec.modulus
                )));
            }
            match edge_check(&spec, &e.src, &e.dst) {
                Some(s) if s == e.sign => {}
                Some(_) => return Err(Error::InvariantViolation(format!("edge {e}: wrong sign"))),
                None => return Err(Error::InvariantViolation(format!("edge {e} fails the edge conditions of {spec}"))),
            }
        }
        Ok(Self { spec, height_bound, vertices, edges })
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }
    pub fn height_bound(&self) -> i64 {
        self.height_bound
    }
    pub fn vertices(&self) -> &[ProjectiveRational] {
        &self.vertices
    }
    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn contains_edge(&self, src: &ProjectiveRational, dst: &ProjectiveRational) -> bool {
        self.edges
            .binary_search_by_key(&(src.key(), dst.key()), |e| e.key())
            .is_ok()
    }
}

/// Every point of the spec's block with height at most `bound`.
pub fn block_vertices(spec: &GraphSpec, bound: i64) -> Vec<ProjectiveRational> {
    let mut out = Vec::new();
    for den in 0..=bound {
        for num in -bound..=bound {
            if gcd(num, den) != 1 || (den == 0 && num != 1) {
                continue;
            }
            let v = ProjectiveRational::new(num, den).expect("nonzero coprime pair");
            if spec.in_block(&v) {
                out.push(v);
            }
        }
    }
    out.sort_by_key(|v| v.key());
    out
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// `k` such that `lo <= base + k*step <= hi`; `None` means unconstrained.
fn k_range(base: i128, step: i128, lo: i128, hi: i128) -> Option<(i128, i128)> {
    match step.cmp(&0) {
        Ordering::Equal if (lo..=hi).contains(&base) => None,
        Ordering::Equal => Some((1, 0)),
        Ordering::Greater => Some((div_ceil(lo - base, step), div_floor(hi - base, step))),
        Ordering::Less => Some((div_ceil(hi - base, step), div_floor(lo - base, step))),
    }
}

/// All primitive `(p, q)` with `alpha*p + beta*q = target`, `|p| <= h`,
/// `0 <= q <= h`, for coprime `(alpha, beta)`.
fn lattice_line(alpha: i128, beta: i128, target: i128, h: i128) -> Vec<(i128, i128)> {
    let (g, x, y) = ext_gcd(alpha, beta);
    debug_assert_eq!(g, 1);
    let (p0, q0) = (x * target, y * target);
    // p = p0 + k*beta, q = q0 - k*alpha
    let kp = k_range(p0, beta, -h, h);
    let kq = k_range(q0, -alpha, 0, h);
    let (lo, hi) = match (kp, kq) {
        (Some((a, b)), Some((c, d))) => (a.max(c), b.min(d)),
        (Some(r), None) | (None, Some(r)) => r,
        (None, None) => unreachable!("alpha and beta cannot both vanish"),
    };
    let mut out = Vec::new();
    let mut k = lo;
    while k <= hi {
        let (p, q) = (p0 + k * beta, q0 - k * alpha);
        if gcd_i128(p, q) == 1 {
            out.push((p, q));
        }
        k += 1;
    }
    out
}

fn gcd_i128(a: i128, b: i128) -> u128 {
    crate::rational::gcd_u128(a.unsigned_abs(), b.unsigned_abs())
}

/// Enumerates the graph within `height_bound` (at most [`DEFAULT_HEIGHT_LIMIT`]).
pub fn enumerate_graph(spec: &GraphSpec, height_bound: i64) -> Result<SuborbitalGraph> {
    enumerate_graph_with_limit(spec, height_bound, DEFAULT_HEIGHT_LIMIT)
}

/// As [`enumerate_graph`] with a caller-chosen height limit.
///
/// For each vertex in the root orbit the other endpoint lies on the line
/// `r·y − s·x = ±modulus`, so only lattice points of that line are tested.
pub fn enumerate_graph_with_limit(spec: &GraphSpec, height_bound: i64, limit: i64) -> Result<SuborbitalGraph> {
    if height_bound < 1 {
        return Err(Error::InvalidBound(height_bound));
    }
    if height_bound > limit {
        return Err(Error::BoundTooLarge { requested: height_bound, limit });
    }
    let vertices = block_vertices(spec, height_bound);
    let h = height_bound as i128;
    let m = spec.modulus as i128;
    let mut edges = BTreeMap::new();
    for anchor in vertices.iter().filter(|v| spec.in_root_orbit(v)) {
        let (an, ad) = (anchor.num() as i128, anchor.den() as i128);
        // forward: anchor = r/s is the source, r*q - s*p = D
        // reversed: anchor = x/y is the destination, p*y - q*x = D
        let (alpha, beta) = if spec.reversed { (ad, -an) } else { (-ad, an) };
        for target in [m, -m] {
            for (p, q) in lattice_line(alpha, beta, target, h) {
                let other = ProjectiveRational::from_wide(p, q)?;
                let (src, dst) = if spec.reversed { (other, *anchor) } else { (*anchor, other) };
                if let Some(sign) = edge_check(spec, &src, &dst) {
                    edges.insert((src.key(), dst.key()), DirectedEdge { src, dst, sign });
                }
            }
        }
    }
    let edges = edges.into_values().collect();
    Ok(SuborbitalGraph { spec: *spec, height_bound, vertices, edges })
}

/// `u² ≡ ±1 (mod modulus)`.
pub fn is_self_paired(spec: &GraphSpec) -> bool {
    let m = spec.modulus;
    let sq = residue(spec.u as i128 * spec.u as i128, m);
    sq == residue(1, m) || sq == residue(-1, m)
}

/// The paired graph: `F_{M,u} ↦ F_{−M,ū}` with `u·ū ≡ 1 (mod M)`.
///
/// Applying it twice returns the original spec.
pub fn paired_partner(spec: &GraphSpec) -> Result<GraphSpec> {
    let u_bar = invert_unit(spec.u, spec.modulus);
    GraphSpec::new(spec.family, u_bar, spec.modulus, !spec.reversed)
}

/// The matrix `[[1 − u1, M], [(u2 − u1·u2 − u1)/M, u2 + 1]]` sending
/// `M/u1` to `M/u2`, with its membership status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexMap {
    /// Entries exactly as in the formula (not canonicalized).
    pub matrix: UnimodularMatrix,
    /// Actual membership in Γ₀(L,M).
    pub member: bool,
    /// `1 − u1 ≡ 1 (mod L)`, `u2 + 1 ≡ 1 (mod M)` and `u2 ≡ 0 (mod L)`.
    pub side_conditions: bool,
}

pub fn vertex_map_matrix(u1: i64, u2: i64, l: i64, m: i64) -> Result<VertexMap> {
    if l < 1 {
        return Err(Error::InvalidModulus(l));
    }
    if m < 1 {
        return Err(Error::InvalidModulus(m));
    }
    if gcd(u1, m) != 1 || gcd(u2, m) != 1 {
        return Err(Error::InvalidSpec(format!("u1 = {u1} and u2 = {u2} must be coprime to {m}")));
    }
    let (w1, w2, wm) = (u1 as i128, u2 as i128, m as i128);
    let numer = w2 - w1 * w2 - w1;
    if numer % wm != 0 {
        return Err(Error::NotMappable { u1, u2, modulus: m });
    }
    let narrow = crate::rational::narrow;
    let matrix = UnimodularMatrix::new(narrow(1 - w1)?, m, narrow(numer / wm)?, narrow(w2 + 1)?)?;
    let member = SubgroupSpec::Gamma0LM(l, m).contains(&matrix);
    let side_conditions =
        residue(-w1, l) == 0 && residue(w2, m) == 0 && residue(w2, l) == 0;
    Ok(VertexMap { matrix, member, side_conditions })
}

/// The unique element of PSL(2,Z) sending `(a1, b1)` to `(a2, b2)`, if any.
///
/// With `P = [[num(a), num(b)], [den(a), den(b)]]` the candidate is
/// `P2 · diag(1, ±1) · P1⁻¹`; the pointwise stabilizer of two distinct
/// rationals is trivial, so there is at most one.
pub fn pair_map(
    from: (ProjectiveRational, ProjectiveRational),
    to: (ProjectiveRational, ProjectiveRational),
) -> Result<Option<UnimodularMatrix>> {
    let det1 = pair_determinant(&from.0, &from.1);
    let det2 = pair_determinant(&to.0, &to.1);
    if det1 == 0 || det1.unsigned_abs() != det2.unsigned_abs() {
        return Ok(None);
    }
    let mu = det1 / det2;
    let (r1, s1, x1, y1) = wide(&from.0, &from.1);
    let (r2, s2, x2, y2) = wide(&to.0, &to.1);
    let (x2, y2) = (mu * x2, mu * y2);
    // P2' * adj(P1), adj(P1) = [[y1, -x1], [-s1, r1]]
    let prod = [
        r2 * y1 - x2 * s1,
        -r2 * x1 + x2 * r1,
        s2 * y1 - y2 * s1,
        -s2 * x1 + y2 * r1,
    ];
    if prod.iter().any(|e| e % det1 != 0) {
        return Ok(None);
    }
    let narrow = crate::rational::narrow;
    let g = UnimodularMatrix::new(
        narrow(prod[0] / det1)?,
        narrow(prod[1] / det1)?,
        narrow(prod[2] / det1)?,
        narrow(prod[3] / det1)?,
    )?;
    debug_assert!(mobius_apply(&g, &from.0) == Ok(to.0) && mobius_apply(&g, &from.1) == Ok(to.1));
    Ok(Some(g.canonical()))
}

fn wide(v: &ProjectiveRational, w: &ProjectiveRational) -> (i128, i128, i128, i128) {
    (v.num() as i128, v.den() as i128, w.num() as i128, w.den() as i128)
}

/// A member of `group` with entries at most `entry_bound` sending `e1`
/// onto `e2` (both endpoints), built as `T · S⁻¹` from the elements
/// carrying the base pair onto each edge.
///
/// `None` means no such element exists within the bound.
pub fn transitivity_witness(
    spec: &GraphSpec,
    e1: &DirectedEdge,
    e2: &DirectedEdge,
    group: &SubgroupSpec,
    entry_bound: i64,
) -> Result<Option<UnimodularMatrix>> {
    group.validate()?;
    if entry_bound < 1 {
        return Err(Error::InvalidBound(entry_bound));
    }
    for e in [e1, e2] {
        if edge_check(spec, &e.src, &e.dst).is_none() {
            return Err(Error::InvariantViolation(format!("{e} is not an edge of {spec}")));
        }
    }
    let Some(g) = pair_map((e1.src, e1.dst), (e2.src, e2.dst))? else {
        return Ok(None);
    };
    let fits = g.max_abs_entry() <= entry_bound as u64;
    let maps = mobius_apply(&g, &e1.src)? == e2.src && mobius_apply(&g, &e1.dst)? == e2.dst;
    Ok((fits && maps && group.contains(&g)).then_some(g))
}
