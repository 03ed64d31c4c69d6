//! Sparse multivariate polynomials with exact rational coefficients, plus the
//! univariate helpers (gcd, squarefree part, rational roots) that back the
//! elimination machinery.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::sring::SRational;
use crate::Result;

/// Exponent vector, one entry per variable.
pub type Exps = Vec<u32>;

/// A sparse polynomial in 1, 2 or 3 variables over `Q`.
///
/// Invariants: no zero coefficient is stored; all exponent vectors have
/// length `arity`.  The zero polynomial has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Exps, BigRational>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        assert!((1..=3).contains(&arity), "arity must be 1..=3");
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: BigRational) -> Self {
        let mut p = MultiPoly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    /// The variable `x_index` as a polynomial.
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity);
        let mut exps = vec![0u32; arity];
        exps[index] = 1;
        MultiPoly::from_terms(arity, [(exps, BigRational::one())])
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exps, BigRational)>,
    {
        let mut p = MultiPoly::zero(arity);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exps, i64)>,
    {
        MultiPoly::from_terms(
            arity,
            terms
                .into_iter()
                .map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    fn add_term(&mut self, exps: Exps, c: BigRational) {
        assert_eq!(exps.len(), self.arity, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, other.arity);
        let mut out = MultiPoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[SRational]) -> Result<SRational> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Sum of the top-total-degree terms.  Errors on the zero polynomial.
    pub fn leading_form(&self) -> Result<MultiPoly> {
        let d = self
            .degree()
            .ok_or_else(|| Error::domain("leading form of zero polynomial"))?;
        Ok(MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        assert!(var < self.arity);
        let mut out = MultiPoly::zero(self.arity);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.add_term(ne, c * BigRational::from_integer(BigInt::from(e[var])));
        }
        out
    }

    /// Substitutes a rational value for one variable, keeping the arity (the
    /// substituted variable's exponent becomes 0 in every term).
    pub fn substitute(&self, var: usize, value: &SRational) -> MultiPoly {
        assert!(var < self.arity);
        let mut out = MultiPoly::zero(self.arity);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..e[var] {
                term *= value;
            }
            let mut ne = e.clone();
            ne[var] = 0;
            out.add_term(ne, term);
        }
        out
    }

    /// Coefficients of the polynomial viewed in one variable; entry `k` is the
    /// coefficient of `var^k`, a polynomial in the remaining variables.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        assert!(var < self.arity);
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(self.arity); d + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut ne = e.clone();
            ne[var] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }

    /// Extracts a dense univariate polynomial when all terms involve only
    /// variable `var`.
    pub fn as_unipoly(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![BigRational::zero(); self.degree_in(var).unwrap_or(0) as usize + 1];
        for (e, c) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                if i != var && k != 0 {
                    return None;
                }
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Lifts a univariate polynomial into a `MultiPoly` in variable `var`.
    pub fn from_unipoly(arity: usize, var: usize, p: &UniPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(arity);
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u32; arity];
                e[var] = k as u32;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Clears denominators and the integer content and fixes the sign so the
    /// lexicographically largest exponent has positive coefficient.  Returns
    /// the normalized polynomial (primitive integer coefficients, content 1).
    pub fn primitive_normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * &den / c.denom();
            num_gcd = num_gcd.gcd(&n);
        }
        let scale = BigRational::new(den, num_gcd);
        let mut out = self.scale(&scale);
        // sign: make the coefficient of the largest exponent vector positive
        if let Some((_, c)) = out.terms.iter().next_back() {
            if c.is_negative() {
                out = out.neg();
            }
        }
        out
    }

    /// Homogenises a 2-variable polynomial to a 3-variable form of the given
    /// degree using the third variable.
    pub fn homogenize_to_3(&self, degree: u32) -> MultiPoly {
        assert_eq!(self.arity, 2);
        let mut out = MultiPoly::zero(3);
        for (e, c) in &self.terms {
            let d = e[0] + e[1];
            assert!(d <= degree);
            out.add_term(vec![e[0], e[1], degree - d], c.clone());
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const NAMES: [&str; 3] = ["x", "y", "z"];
        let mut first = true;
        // highest degree first for readability
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse((e.iter().sum::<u32>(), (*e).clone())));
        for (e, c) in terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&k| k == 0);
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut sep = "";
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                write!(f, "{sep}{}", NAMES[i])?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
                sep = "*";
            }
        }
        Ok(())
    }
}

/// Sylvester resultant of `p` and `q` with respect to variable `var`.
///
/// Rows are ordered with the `p` block above the `q` block.  If either input
/// is constant in `var`, the convention `Res(p, c) = c^deg(p)` applies (and
/// symmetrically); two constants give 1.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> MultiPoly {
    assert_eq!(p.arity(), q.arity());
    let arity = p.arity();
    let dp = p.degree_in(var).unwrap_or(0) as usize;
    let dq = q.degree_in(var).unwrap_or(0) as usize;
    if dp == 0 && dq == 0 {
        return MultiPoly::constant(arity, BigRational::one());
    }
    if dq == 0 {
        return pow_poly(&q.substitute(var, &BigRational::zero()), dp);
    }
    if dp == 0 {
        return pow_poly(&p.substitute(var, &BigRational::zero()), dq);
    }
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let n = dp + dq;
    let zero = MultiPoly::zero(arity);
    let mut mat = vec![vec![zero; n]; n];
    for row in 0..dq {
        for (k, c) in pc.iter().enumerate() {
            // coefficient of var^(dp - k)... store descending: column row + (dp - k)
            mat[row][row + dp - k] = c.clone();
        }
    }
    for row in 0..dp {
        for (k, c) in qc.iter().enumerate() {
            mat[dq + row][row + dq - k] = c.clone();
        }
    }
    det(&mat)
}

fn pow_poly(p: &MultiPoly, k: usize) -> MultiPoly {
    let mut acc = MultiPoly::constant(p.arity(), BigRational::one());
    for _ in 0..k {
        acc = acc.mul(p);
    }
    acc
}

/// Determinant by expansion along the first column, memoized on column masks.
fn det(mat: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = mat.len();
    assert!(n > 0 && n <= 64);
    let arity = mat[0][0].arity();
    let mut memo: std::collections::HashMap<u64, MultiPoly> = std::collections::HashMap::new();
    fn go(
        mat: &[Vec<MultiPoly>],
        row: usize,
        mask: u64,
        arity: usize,
        memo: &mut std::collections::HashMap<u64, MultiPoly>,
    ) -> MultiPoly {
        let n = mat.len();
        if row == n {
            return MultiPoly::constant(arity, BigRational::one());
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero(arity);
        let mut sign_pos = true;
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let entry = &mat[row][col];
            if !entry.is_zero() {
                let sub = go(mat, row + 1, mask | (1 << col), arity, memo);
                let term = entry.mul(&sub);
                acc = if sign_pos {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    go(mat, 0, 0, arity, &mut memo)
}

// ---------------------------------------------------------------------------
// dense univariate polynomials over Q

/// Dense univariate polynomial over `Q`; coefficient `k` multiplies `t^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial gives `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i as u64 + 1)))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|k| k * c).collect())
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() / &lc;
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c.clone();
            for (j, dcoef) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = &rem[idx] - &(dcoef * &c);
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd over `Q`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lc = a.leading_coeff();
        a.scale(&(BigRational::one() / lc))
    }

    /// The squarefree part `p / gcd(p, p')`, normalized monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        let q = self.exact_div(&g).expect("gcd divides");
        let lc = q.leading_coeff();
        q.scale(&(BigRational::one() / lc))
    }

    /// Integer-primitive representative: clears denominators and content.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * &den / c.denom())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        ints.iter().map(|c| c / &g).collect()
    }

    /// All rational roots with multiplicities.
    pub fn rational_roots(&self) -> Vec<(BigRational, usize)> {
        if self.is_zero() || self.degree() == Some(0) {
            return vec![];
        }
        let ints = self.primitive_int();
        // strip powers of t
        let zero_mult = ints.iter().take_while(|c| c.is_zero()).count();
        let ints = &ints[zero_mult..];
        let mut roots = Vec::new();
        if zero_mult > 0 {
            roots.push((BigRational::zero(), zero_mult));
        }
        if ints.len() <= 1 {
            return roots;
        }
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let num_divs = divisors(&a0);
        let den_divs = divisors(&an);
        let mut candidates: Vec<BigRational> = Vec::new();
        for n in &num_divs {
            for d in &den_divs {
                if n.gcd(d).is_one() {
                    candidates.push(BigRational::new(n.clone(), d.clone()));
                    candidates.push(BigRational::new(-n.clone(), d.clone()));
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        let stripped = UniPoly::new(
            ints.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        );
        for cand in candidates {
            if stripped.eval(&cand).is_zero() {
                // multiplicity by repeated division
                let lin = UniPoly::new(vec![-cand.clone(), BigRational::one()]);
                let mut m = 0usize;
                let mut cur = stripped.clone();
                while let Some(q) = cur.exact_div(&lin) {
                    m += 1;
                    cur = q;
                }
                roots.push((cand, m));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        roots
    }

    /// Detects the shape `c * (t - t0)^m` with `m >= 1`; returns `(c, t0, m)`.
    pub fn as_linear_power(&self) -> Option<(BigRational, BigRational, usize)> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let sf = self.squarefree_part();
        if sf.degree() != Some(1) {
            return None;
        }
        let t0 = -sf.coeff(0) / sf.coeff(1);
        let lin = UniPoly::new(vec![-t0.clone(), BigRational::one()]);
        let mut pow = UniPoly::constant(BigRational::one());
        for _ in 0..d {
            pow = pow.mul(&lin);
        }
        let c = self.leading_coeff();
        if self == &pow.scale(&c) {
            Some((c, t0, d))
        } else {
            None
        }
    }
}

/// All positive divisors of `|n|` (n nonzero), via factorization.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let factors = factorize(&n);
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}

/// Prime factorization: trial division then Pollard rho for large cofactors.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, usize)> {
    let mut n = n.abs();
    let mut out: BTreeMap<BigInt, usize> = BTreeMap::new();
    if n.is_one() || n.is_zero() {
        return vec![];
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n && p < BigInt::from(1u64 << 20) {
        while (&n % &p).is_zero() {
            *out.entry(p.clone()).or_insert(0) += 1;
            n /= &p;
        }
        p += 1;
    }
    if !n.is_one() {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if crate::sring::is_probable_prime(&m) {
                *out.entry(m).or_insert(0) += 1;
                continue;
            }
            let d = pollard_rho(&m);
            stack.push(m.clone() / &d);
            stack.push(d);
        }
    }
    out.into_iter().collect()
}

fn pollard_rho(n: &BigInt) -> BigInt {
    use num_bigint::BigUint;
    let two = BigInt::from(2);
    if (n % &two).is_zero() {
        return two;
    }
    let nu = n.to_biguint().unwrap();
    let mut c = BigUint::from(1u32);
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::from(1u32);
        let one = BigUint::from(1u32);
        while d == one {
            x = (&x * &x + &c) % &nu;
            y = (&y * &y + &c) % &nu;
            y = (&y * &y + &c) % &nu;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(&nu);
        }
        if d != one && !d.is_zero() && d != nu {
            return BigInt::from(d);
        }
        c += 1u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sring::{rat, ratio};

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }
    fn c2(n: i64) -> MultiPoly {
        MultiPoly::constant(2, rat(n))
    }

    #[test]
    fn eval_examples() {
        // x + y + 2 at (0, 0)
        let p = x().add(&y()).add(&c2(2));
        assert_eq!(p.eval(&[rat(0), rat(0)]).unwrap(), rat(2));
        // x*y*(1 - x - y) at (1, -1)
        let q = x().mul(&y()).mul(&c2(1).sub(&x()).sub(&y()));
        assert_eq!(q.eval(&[rat(1), rat(-1)]).unwrap(), rat(-1));
        // x^2 - 2y^2 at (3, 2)
        let r = x().mul(&x()).sub(&c2(2).mul(&y()).mul(&y()));
        assert_eq!(r.eval(&[rat(3), rat(2)]).unwrap(), rat(1));
        assert!(r.eval(&[rat(1)]).is_err());
    }

    #[test]
    fn leading_forms() {
        let p = x().add(&y()).add(&c2(2));
        assert_eq!(p.leading_form().unwrap(), x().add(&y()));
        let q = x().mul(&y()).sub(&x());
        assert_eq!(q.leading_form().unwrap(), x().mul(&y()));
        let r = c2(5);
        assert_eq!(r.leading_form().unwrap(), c2(5));
        assert!(MultiPoly::zero(2).leading_form().is_err());
    }

    #[test]
    fn resultant_golden_signs() {
        // Res_y(y - 1, y + 1) = 2
        let p = y().sub(&c2(1));
        let q = y().add(&c2(1));
        assert_eq!(resultant(&p, &q, 1), c2(2));
        // Res_y(y - x, y + x) = 2x
        let p = y().sub(&x());
        let q = y().add(&x());
        assert_eq!(resultant(&p, &q, 1), c2(2).mul(&x()));
        // Res_y(y - x^2, y) = x^2 with the fixed row convention
        let p = y().sub(&x().mul(&x()));
        let q = y();
        assert_eq!(resultant(&p, &q, 1), x().mul(&x()));
        // constant convention: Res_y(x, y) = x^deg_y(y) = x
        assert_eq!(resultant(&x(), &y(), 1), x());
    }

    #[test]
    fn resultant_detects_common_roots() {
        // (y - x)(y + 1) and (y - x)(y - 2) share the factor y - x
        let f = y().sub(&x()).mul(&y().add(&c2(1)));
        let g = y().sub(&x()).mul(&y().sub(&c2(2)));
        assert!(resultant(&f, &g, 1).is_zero());
    }

    #[test]
    fn unipoly_arithmetic() {
        let p = UniPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let q = UniPoly::from_ints(&[1, 1]); // t + 1
        let (quo, rem) = p.div_rem(&q);
        assert!(rem.is_zero());
        assert_eq!(quo, UniPoly::from_ints(&[-1, 1]));
        assert_eq!(p.gcd(&q), UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn squarefree_and_roots() {
        // (t-1)^2 (t+2) = t^3 - 3t + 2
        let p = UniPoly::from_ints(&[2, -3, 0, 1]);
        let sf = p.squarefree_part();
        assert_eq!(sf.degree(), Some(2));
        let roots = p.rational_roots();
        assert_eq!(roots, vec![(rat(-2), 1), (rat(1), 2)]);
        // 2t^2 - 1 has no rational roots
        assert!(UniPoly::from_ints(&[-1, 0, 2]).rational_roots().is_empty());
        // 6t^2 - t - 1 = (3t + 1)(2t - 1)
        let q = UniPoly::from_ints(&[-1, -1, 6]);
        assert_eq!(
            q.rational_roots(),
            vec![(ratio(-1, 3), 1), (ratio(1, 2), 1)]
        );
    }

    #[test]
    fn linear_power_shapes() {
        let lin = UniPoly::from_ints(&[-3, 1]); // t - 3
        let p = lin.mul(&lin).scale(&ratio(5, 2));
        let (c, t0, m) = p.as_linear_power().unwrap();
        assert_eq!(c, ratio(5, 2));
        assert_eq!(t0, rat(3));
        assert_eq!(m, 2);
        assert!(UniPoly::from_ints(&[2, 3, 1]).as_linear_power().is_none()); // (t+1)(t+2)
        assert!(UniPoly::from_ints(&[7]).as_linear_power().is_none());
    }

    #[test]
    fn divisor_enumeration() {
        let divs = divisors(&BigInt::from(12));
        let expect: Vec<BigInt> = [1, 2, 3, 4, 6, 12]
            .iter()
            .map(|&n| BigInt::from(n))
            .collect();
        assert_eq!(divs, expect);
        // a big semiprime exercises the rho path
        let n = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        let f = factorize(&n);
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn primitive_normalization() {
        let p = x().scale(&ratio(-2, 3)).add(&y().scale(&ratio(4, 3)));
        let n = p.primitive_normalized();
        // content cleared to (-x + 2y), then sign fixed on the lex-largest
        // exponent vector, which is the x term
        assert_eq!(n, x().sub(&y().scale(&rat(2))));
    }
}
