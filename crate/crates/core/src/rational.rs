//! Projective rationals and the elementary number theory the graphs need.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Greatest common divisor of `|a|` and `|b|`, with `gcd(x, 0) = |x|`.
pub fn gcd(a: i64, b: i64) -> u64 {
    gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128) as u64
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub(crate) fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::ArithmeticOverflow)
}

/// Least non-negative residue of `v` modulo `m` (`m >= 1`).
#[inline]
pub(crate) fn residue(v: i128, m: i64) -> i128 {
    v.rem_euclid(m as i128)
}

/// A point of Q̂ = Q ∪ {∞} as a reduced fraction `num/den`.
///
/// The sign lives on the numerator, `den >= 0`, and ∞ is exactly `1/0`.
/// Two values are equal iff they are the same point, so the type can key
/// sets directly. `Ord` is the order by value with ∞ as the maximum.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjectiveRational {
    num: i64,
    den: i64,
}

impl ProjectiveRational {
    pub const INFINITY: Self = Self { num: 1, den: 0 };
    pub const ZERO: Self = Self { num: 0, den: 1 };

    /// Reduces `num/den`; every `n/0` with `n != 0` collapses to ∞.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        Self::from_wide(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub(crate) fn from_wide(num: i128, den: i128) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(Error::ZeroOverZero);
        }
        if den == 0 {
            return Ok(Self::INFINITY);
        }
        if num == 0 {
            return Ok(Self::ZERO);
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        Ok(Self {
            num: narrow(num / g)?,
            den: narrow(den / g)?,
        })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinity(&self) -> bool {
        self.den == 0
    }

    /// `max(|num|, den)`, the measure used to bound enumerations.
    pub fn height(&self) -> u64 {
        self.num.unsigned_abs().max(self.den as u64)
    }

    /// Lexicographic key on `(num, den)`, used for output ordering.
    pub fn key(&self) -> (i64, i64) {
        (self.num, self.den)
    }
}

/// Canonical representative of `num/den`; see [`ProjectiveRational::new`].
pub fn make_rational(num: i64, den: i64) -> Result<ProjectiveRational> {
    ProjectiveRational::new(num, den)
}

/// Total order on Q̂ with ∞ strictly greatest.
pub fn compare(a: &ProjectiveRational, b: &ProjectiveRational) -> Ordering {
    match (a.is_infinity(), b.is_infinity()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            let lhs = a.num as i128 * b.den as i128;
            let rhs = b.num as i128 * a.den as i128;
            lhs.cmp(&rhs)
        }
    }
}

impl Ord for ProjectiveRational {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl PartialOrd for ProjectiveRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjectiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for ProjectiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    Syntax,
    Value(Error),
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseRationalError::Syntax => write!(f, "expected \"num/den\" with decimal integers"),
            ParseRationalError::Value(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses `"num/den"` (or a bare integer) and reduces it.
impl FromStr for ProjectiveRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: i64 = n.trim().parse().map_err(|_| ParseRationalError::Syntax)?;
        let d: i64 = d.trim().parse().map_err(|_| ParseRationalError::Syntax)?;
        Self::new(n, d).map_err(ParseRationalError::Value)
    }
}

/// The inverse of `u` modulo `m`, as the residue in `[0, m)`.
pub fn mod_inverse(u: i64, m: i64) -> Result<i64> {
    if m < 1 {
        return Err(Error::InvalidModulus(m));
    }
    let (g, x, _) = ext_gcd(u as i128, m as i128);
    if g != 1 {
        return Err(Error::NotInvertible { value: u, modulus: m });
    }
    Ok(residue(x, m) as i64)
}

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Trial division up to `sqrt(n)`. `n = 1` gives the empty product.
    pub fn of(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let mut factors = Vec::new();
        let mut rest = n;
        let mut p = 2u64;
        while p.saturating_mul(p) <= rest {
            if rest.is_multiple_of(p) {
                let mut k = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    k += 1;
                }
                factors.push((p, k));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, k)| p.pow(k)).product()
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }
}

/// Dedekind psi, `n * prod_{p | n} (1 + 1/p)`, as `prod p^(k-1) (p + 1)`.
pub fn dedekind_psi(n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::InvalidModulus(n));
    }
    let f = Factorization::of(n as u64)?;
    let mut acc: i64 = 1;
    for &(p, k) in f.factors() {
        let p = p as i64;
        let term = p
            .checked_pow(k - 1)
            .and_then(|q| q.checked_mul(p + 1))
            .ok_or(Error::ArithmeticOverflow)?;
        acc = acc.checked_mul(term).ok_or(Error::ArithmeticOverflow)?;
    }
    Ok(acc)
}

/// Number of invariant relations of Γ₀(L,M): `r prod(p_i + 1) + s prod(q_j + 1)`
/// where `r = L / rad(L)` and `s = M / rad(M)`, so each summand is `psi`.
pub fn phi_pair(l: i64, m: i64) -> Result<i64> {
    let pl = dedekind_psi(l)?;
    let pm = dedekind_psi(m)?;
    pl.checked_add(pm).ok_or(Error::ArithmeticOverflow)
}
