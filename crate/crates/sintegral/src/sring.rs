//! Exact arithmetic in the localisation of `Z` at a finite set of primes.
//!
//! For a finite set `S` of rational primes, the ring of S-integers consists of
//! the rationals whose denominator has every prime factor in `S`; its units
//! are the rationals whose numerator and denominator are both S-smooth.  Over
//! `Q` this localisation is always a PID, so every ideal has a canonical
//! positive generator prime to `S` ([`s_free_part`]), and gcd arithmetic is
//! exact integer arithmetic after stripping S-primes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// A rational number with reduced numerator/denominator; the denominator is
/// kept positive by `num_rational`.  Values of all predicates in this crate.
pub type SRational = BigRational;

/// p-adic valuation of a rational, with `Infinite` as the value at zero.
///
/// The derive order makes every finite valuation compare below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// The finite set of primes defining the localisation.  May be empty, in
/// which case the S-integers are just `Z`.  Primes are arbitrary-precision:
/// user-facing sets hold small primes, but primes of bad reduction extracted
/// from elimination certificates can be arbitrarily large.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeSet {
    primes: BTreeSet<BigInt>,
}

impl PrimeSet {
    /// Builds a prime set from machine-sized primes, rejecting non-prime
    /// entries.  Duplicates collapse.
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_prime_u64(p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            set.insert(BigInt::from(p));
        }
        Ok(PrimeSet { primes: set })
    }

    /// Builds a prime set from arbitrary-precision primes.
    pub fn from_bigints<I: IntoIterator<Item = BigInt>>(primes: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_probable_prime(&p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            set.insert(p);
        }
        Ok(PrimeSet { primes: set })
    }

    pub fn empty() -> Self {
        PrimeSet::default()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&BigInt::from(p))
    }

    pub fn contains_int(&self, p: &BigInt) -> bool {
        self.primes.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> + '_ {
        self.primes.iter()
    }

    /// The machine-sized members, for interfaces keyed on small primes.
    pub fn small_primes(&self) -> Vec<u64> {
        self.primes.iter().filter_map(|p| u64::try_from(p).ok()).collect()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Set union, used when a construction has to enlarge S.
    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet {
            primes: self.primes.union(&other.primes).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.primes.is_subset(&other.primes)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Miller–Rabin for arbitrary-precision integers: deterministic below 2^64,
/// strongly probable beyond (fixed-base rounds).
pub fn is_probable_prime(n: &BigInt) -> bool {
    use num_bigint::Sign;
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Ok(small) = u64::try_from(n) {
        return is_prime_u64(small);
    }
    let one = BigInt::from(1);
    let two = BigInt::from(2);
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut r = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        r += 1;
    }
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigInt::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 0..r.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Deterministic Miller–Rabin for u64 (the listed bases decide all of u64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// p-adic valuation `v_p(x)`; `v_p(0)` is the `Infinite` sentinel.
pub fn val(p: u64, x: &SRational) -> Valuation {
    debug_assert!(is_prime_u64(p), "val called with non-prime {p}");
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    Valuation::Finite(int_val(&p, x.numer()) - int_val(&p, x.denom()))
}

fn int_val(p: &BigInt, n: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut v = 0i64;
    let mut n = n.abs();
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        n = q;
    }
}

/// Divides all primes of `S` out of `|n|`, returning the S-free positive part.
fn strip_s(n: &BigInt, s: &PrimeSet) -> BigInt {
    let mut n = n.abs();
    for p in s.iter() {
        loop {
            let (q, r) = n.div_rem(p);
            if !r.is_zero() {
                break;
            }
            n = q;
        }
    }
    n
}

/// `x` lies in the ring of S-integers: `v_p(x) >= 0` for every `p` outside S.
pub fn is_s_integral(x: &SRational, s: &PrimeSet) -> bool {
    strip_s(x.denom(), s).is_one()
}

/// `x` is an S-unit: nonzero with `v_p(x) = 0` for every `p` outside S.
pub fn is_s_unit(x: &SRational, s: &PrimeSet) -> bool {
    !x.is_zero() && strip_s(x.numer(), s).is_one() && strip_s(x.denom(), s).is_one()
}

/// The positive generator, prime to S, of the ideal `(x)` in the S-integers.
///
/// Requires `x` nonzero and S-integral.
pub fn s_free_part(x: &SRational, s: &PrimeSet) -> Result<BigInt> {
    if x.is_zero() {
        return Err(Error::domain("s_free_part of zero"));
    }
    if !is_s_integral(x, s) {
        return Err(Error::domain(format!("{x} is not S-integral for S = {s}")));
    }
    Ok(strip_s(x.numer(), s))
}

/// Divisibility in the S-integers: `v_p(a) <= v_p(b)` for every `p` outside S.
///
/// `a` must be nonzero; `b = 0` divides trivially.
pub fn divides(a: &SRational, b: &SRational, s: &PrimeSet) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::domain("division by zero in the S-integers"));
    }
    if b.is_zero() {
        return Ok(true);
    }
    // v_p(b/a) >= 0 outside S  <=>  the S-free part of den(b/a) is 1.
    let q = b / a;
    Ok(strip_s(q.denom(), s).is_one())
}

/// Positive generator of the ideal `(a, b)` prime to S, via gcd of S-free
/// parts.  Convention: `s_gcd(0, b) = s_free_part(b)`; both zero is an error.
pub fn s_gcd(a: &SRational, b: &SRational, s: &PrimeSet) -> Result<BigInt> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Err(Error::domain("s_gcd(0, 0) is undefined")),
        (true, false) => s_free_part(b, s),
        (false, true) => s_free_part(a, s),
        (false, false) => {
            let fa = s_free_part(a, s)?;
            let fb = s_free_part(b, s)?;
            Ok(fa.gcd(&fb))
        }
    }
}

/// All S-smooth positive integers up to `bound`, in ascending order.
pub fn enumerate_smooth(s: &PrimeSet, bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    out.push(1);
    let small: Vec<u64> = s
        .iter()
        .filter_map(|p| u64::try_from(p).ok())
        .filter(|&p| p <= bound)
        .collect();
    let mut frontier = vec![1u64];
    while let Some(v) = frontier.pop() {
        for &p in &small {
            match v.checked_mul(p) {
                Some(w) if w <= bound => {
                    if let Err(pos) = out.binary_search(&w) {
                        out.insert(pos, w);
                        frontier.push(w);
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Convenience: an `SRational` from an integer.
pub fn rat(n: i64) -> SRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Convenience: an `SRational` fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> SRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
