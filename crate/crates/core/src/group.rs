//! Unimodular matrices, their Möbius action on Q̂ and congruence subgroups.

use alloc::format;
use core::fmt;

use crate::rational::{narrow, residue, ProjectiveRational};
use crate::{Error, Result};

/// An integer matrix `[[a, b], [c, d]]` with `ad - bc = 1`.
///
/// Any integer lift may be stored. As an element of PSL(2,Z) the lifts
/// `g` and `-g` coincide; [`UnimodularMatrix::canonical`] picks the one with
/// `c > 0`, or `c = 0` and `a > 0`. The group operations here return
/// canonical forms so that derived `Eq`/`Hash`/`Ord` agree with PSL equality
/// on their results.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl UnimodularMatrix {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };

    /// Fails unless the determinant is exactly 1. Entries equal to
    /// `i64::MIN` are rejected so that negation can never overflow.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if [a, b, c, d].contains(&i64::MIN) {
            return Err(Error::ArithmeticOverflow);
        }
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::InvariantViolation(format!(
                "[[{a},{b}],[{c},{d}]] has determinant {det}, expected 1"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    fn from_wide(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        Self::new(narrow(a)?, narrow(b)?, narrow(c)?, narrow(d)?)
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    pub fn max_abs_entry(&self) -> u64 {
        self.entries().iter().map(|e| e.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn negated(&self) -> Self {
        Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn is_canonical(&self) -> bool {
        self.c > 0 || (self.c == 0 && self.a > 0)
    }

    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            *self
        } else {
            self.negated()
        }
    }

    /// Equality in PSL(2,Z).
    pub fn psl_eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical form of the product `g * h`.
pub fn compose(g: &UnimodularMatrix, h: &UnimodularMatrix) -> Result<UnimodularMatrix> {
    let (a, b, c, d) = (g.a as i128, g.b as i128, g.c as i128, g.d as i128);
    let (e, f, p, q) = (h.a as i128, h.b as i128, h.c as i128, h.d as i128);
    let m = UnimodularMatrix::from_wide(a * e + b * p, a * f + b * q, c * e + d * p, c * f + d * q)?;
    Ok(m.canonical())
}

/// Canonical form of `(d, -b; -c, a)`.
pub fn invert(g: &UnimodularMatrix) -> UnimodularMatrix {
    UnimodularMatrix { a: g.d, b: -g.b, c: -g.c, d: g.a }.canonical()
}

/// `g^k` for any integer `k`, by repeated squaring.
pub fn power(g: &UnimodularMatrix, k: i64) -> Result<UnimodularMatrix> {
    let mut base = if k < 0 { invert(g) } else { g.canonical() };
    let mut e = k.unsigned_abs();
    let mut acc = UnimodularMatrix::IDENTITY;
    while e > 0 {
        if e & 1 == 1 {
            acc = compose(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = compose(&base, &base)?;
        }
    }
    Ok(acc)
}

/// The image vector `(a x + b y, c x + d y)` of `v = x/y` before reduction.
pub fn mobius_vector(g: &UnimodularMatrix, v: &ProjectiveRational) -> (i128, i128) {
    let (x, y) = (v.num() as i128, v.den() as i128);
    (
        g.a as i128 * x + g.b as i128 * y,
        g.c as i128 * x + g.d as i128 * y,
    )
}

/// `T(z) = (a z + b) / (c z + d)` on Q̂.
///
/// The image of a reduced vector under a unimodular matrix is already
/// reduced; the result is still passed through canonicalization to fix the
/// sign of the denominator.
pub fn mobius_apply(g: &UnimodularMatrix, v: &ProjectiveRational) -> Result<ProjectiveRational> {
    let (n, d) = mobius_vector(g, v);
    ProjectiveRational::from_wide(n, d)
}

/// Congruence-subgroup families of PSL(2,Z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupSpec {
    Full,
    /// `a ≡ d ≡ 1`, `b ≡ c ≡ 0 (mod N)`.
    Principal(i64),
    /// Same predicate as [`SubgroupSpec::Principal`].
    Gamma1(i64),
    /// `c ≡ 0 (mod N)`.
    Gamma0(i64),
    /// `b ≡ 0 (mod N)`.
    GammaUpper0(i64),
    /// `b ≡ c ≡ 0 (mod N)`.
    Gamma00(i64),
    /// `a ≡ 1 (mod L)`, `d ≡ 1 (mod M)`, `c ≡ 0 (mod L)`, `b ≡ 0 (mod M)`.
    Gamma0LM(i64, i64),
    /// `c ≡ 0 (mod L)`, `b ≡ 0 (mod M)`.
    Gamma00LM(i64, i64),
}

impl SubgroupSpec {
    pub fn validate(&self) -> Result<()> {
        let check = |n: i64| if n >= 1 { Ok(()) } else { Err(Error::InvalidModulus(n)) };
        match *self {
            SubgroupSpec::Full => Ok(()),
            SubgroupSpec::Principal(n)
            | SubgroupSpec::Gamma1(n)
            | SubgroupSpec::Gamma0(n)
            | SubgroupSpec::GammaUpper0(n)
            | SubgroupSpec::Gamma00(n) => check(n),
            SubgroupSpec::Gamma0LM(l, m) | SubgroupSpec::Gamma00LM(l, m) => {
                check(l)?;
                check(m)
            }
        }
    }

    fn lift_satisfies(&self, a: i128, b: i128, c: i128, d: i128) -> bool {
        let z = |v: i128, n: i64| residue(v, n) == 0;
        let one = |v: i128, n: i64| residue(v - 1, n) == 0;
        match *self {
            SubgroupSpec::Full => true,
            SubgroupSpec::Principal(n) | SubgroupSpec::Gamma1(n) => {
                one(a, n) && one(d, n) && z(b, n) && z(c, n)
            }
            SubgroupSpec::Gamma0(n) => z(c, n),
            SubgroupSpec::GammaUpper0(n) => z(b, n),
            SubgroupSpec::Gamma00(n) => z(b, n) && z(c, n),
            SubgroupSpec::Gamma0LM(l, m) => one(a, l) && one(d, m) && z(c, l) && z(b, m),
            SubgroupSpec::Gamma00LM(l, m) => z(c, l) && z(b, m),
        }
    }

    /// PSL membership: true iff one of the lifts `±g` satisfies the
    /// congruences. Invalid moduli contain nothing except for `Full`.
    pub fn contains(&self, g: &UnimodularMatrix) -> bool {
        if self.validate().is_err() {
            return false;
        }
        let (a, b, c, d) = (g.a as i128, g.b as i128, g.c as i128, g.d as i128);
        self.lift_satisfies(a, b, c, d) || self.lift_satisfies(-a, -b, -c, -d)
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Full => write!(f, "PSL(2,Z)"),
            SubgroupSpec::Principal(n) => write!(f, "Gamma({n})"),
            SubgroupSpec::Gamma1(n) => write!(f, "Gamma1({n})"),
            SubgroupSpec::Gamma0(n) => write!(f, "Gamma0({n})"),
            SubgroupSpec::GammaUpper0(n) => write!(f, "Gamma^0({n})"),
            SubgroupSpec::Gamma00(n) => write!(f, "Gamma0^0({n})"),
            SubgroupSpec::Gamma0LM(l, m) => write!(f, "Gamma0({l},{m})"),
            SubgroupSpec::Gamma00LM(l, m) => write!(f, "Gamma0^0({l},{m})"),
        }
    }
}

pub fn is_member(g: &UnimodularMatrix, s: &SubgroupSpec) -> bool {
    s.contains(g)
}

/// The two cusps the graphs are rooted at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cusp {
    Infinity,
    Zero,
}

impl Cusp {
    pub fn point(&self) -> ProjectiveRational {
        match self {
            Cusp::Infinity => ProjectiveRational::INFINITY,
            Cusp::Zero => ProjectiveRational::ZERO,
        }
    }
}

/// Generator of the stabilizer of ∞ (`[[1,1],[0,1]]`) or of 0 (`[[1,0],[1,1]]`).
pub fn stabilizer_generator(point: Cusp) -> UnimodularMatrix {
    match point {
        Cusp::Infinity => UnimodularMatrix { a: 1, b: 1, c: 0, d: 1 },
        Cusp::Zero => UnimodularMatrix { a: 1, b: 0, c: 1, d: 1 },
    }
}

/// `v ≈_n w ⟺ r y - s x ≡ 0 (mod n)` for `v = r/s`, `w = x/y`.
pub fn block_equivalent(v: &ProjectiveRational, w: &ProjectiveRational, n: i64) -> Result<bool> {
    if n < 1 {
        return Err(Error::InvalidModulus(n));
    }
    let det = v.num() as i128 * w.den() as i128 - v.den() as i128 * w.num() as i128;
    Ok(residue(det, n) == 0)
}
