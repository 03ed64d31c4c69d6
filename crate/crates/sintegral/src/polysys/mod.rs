//! Polynomial systems: problem types, general-position validation, and the
//! divisibility / ideal / S-unit predicates evaluated at rational points.

pub mod poly;
pub mod position;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use poly::{resultant, MultiPoly, UniPoly};
pub use position::{
    bad_primes_div, bad_primes_forms, bad_primes_ngon, check_general_position_div,
    check_general_position_forms, common_affine_zeros, ConditionVerdict, PositionReport,
};

use crate::error::Error;
use crate::sring::{self, PrimeSet, SRational};
use crate::Result;

/// Pairs `(f_i, g_i)` of polynomials in two variables with the divisibility
/// condition `f_i(x, y) | g_i(x, y)` in the S-integers.
#[derive(Debug, Clone)]
pub struct DivisibilityProblem {
    pub pairs: Vec<(MultiPoly, MultiPoly)>,
    pub s: PrimeSet,
}

impl DivisibilityProblem {
    /// Validates the structural invariants: nonzero `f_i` in two variables
    /// with `deg f_i >= max(1, deg g_i)`.
    pub fn new(pairs: Vec<(MultiPoly, MultiPoly)>, s: PrimeSet) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Validation("no pairs given".into()));
        }
        for (i, (f, g)) in pairs.iter().enumerate() {
            if f.arity() != 2 || g.arity() != 2 {
                return Err(Error::Validation(format!(
                    "pair {i}: polynomials must have 2 variables"
                )));
            }
            if g.is_zero() {
                return Err(Error::Validation(format!("pair {i}: g is zero")));
            }
            let df = f
                .degree()
                .ok_or_else(|| Error::Validation(format!("pair {i}: f is zero")))?;
            let dg = g.degree().unwrap_or(0);
            if df < 1.max(dg) {
                return Err(Error::Validation(format!(
                    "pair {i}: deg f = {df} violates deg f >= max(1, deg g) with deg g = {dg}"
                )));
            }
        }
        Ok(DivisibilityProblem { pairs, s })
    }
}

/// Homogeneous forms `F_1, ..., F_r` of equal degree dividing a form `G`.
#[derive(Debug, Clone)]
pub struct FormsProblem {
    pub forms: Vec<MultiPoly>,
    pub g: MultiPoly,
    pub s: PrimeSet,
}

impl FormsProblem {
    pub fn new(forms: Vec<MultiPoly>, g: MultiPoly, s: PrimeSet) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::Validation("no forms given".into()));
        }
        let mut deg = None;
        for (i, f) in forms.iter().enumerate() {
            if f.arity() != 3 {
                return Err(Error::Validation(format!("form {i} must have 3 variables")));
            }
            if !f.is_homogeneous() || f.is_zero() {
                return Err(Error::Validation(format!(
                    "form {i} must be homogeneous and nonzero"
                )));
            }
            let d = f.degree().unwrap();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::Validation("forms must share one degree".into()))
                }
                _ => {}
            }
        }
        if g.arity() != 3 || !g.is_homogeneous() || g.is_zero() {
            return Err(Error::Validation(
                "G must be a nonzero homogeneous form in 3 variables".into(),
            ));
        }
        if g.degree().unwrap() > deg.unwrap() {
            return Err(Error::Validation("deg(F_i) >= deg(G) is required".into()));
        }
        Ok(FormsProblem { forms, g, s })
    }

    pub fn r(&self) -> usize {
        self.forms.len()
    }
}

/// A cyclically ordered list of `n` linear forms in three variables, any
/// three of them linearly independent.
#[derive(Debug, Clone)]
pub struct NGonProblem {
    pub forms: Vec<MultiPoly>,
    pub s: PrimeSet,
}

impl NGonProblem {
    pub fn new(forms: Vec<MultiPoly>, s: PrimeSet) -> Result<Self> {
        if forms.len() < 3 {
            return Err(Error::Validation("need at least 3 linear forms".into()));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.arity() != 3 || f.degree() != Some(1) || !f.is_homogeneous() {
                return Err(Error::Validation(format!(
                    "entry {i} is not a linear form in 3 variables"
                )));
            }
        }
        let problem = NGonProblem { forms, s };
        for (i, j, k, d) in problem.triple_determinants() {
            if d.is_zero() {
                return Err(Error::Validation(format!(
                    "forms {i}, {j}, {k} are linearly dependent"
                )));
            }
        }
        Ok(problem)
    }

    pub fn n(&self) -> usize {
        self.forms.len()
    }

    /// Coefficient row of one linear form.
    fn row(&self, i: usize) -> [BigRational; 3] {
        let mut row = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for (e, c) in self.forms[i].terms() {
            for (k, &exp) in e.iter().enumerate() {
                if exp == 1 {
                    row[k] = c.clone();
                }
            }
        }
        row
    }

    /// All 3x3 determinants of distinct form triples.
    pub fn triple_determinants(&self) -> Vec<(usize, usize, usize, BigRational)> {
        let n = self.n();
        let rows: Vec<_> = (0..n).map(|i| self.row(i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (&rows[i], &rows[j], &rows[k]);
                    let det = &a[0] * (&b[1] * &c[2] - &b[2] * &c[1])
                        - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
                        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0]);
                    out.push((i, j, k, det));
                }
            }
        }
        out
    }
}

/// The parametric unit equation `f(t) u + g(t) v = h(t)` with `u, v` S-units
/// and `t` an S-integer.
#[derive(Debug, Clone)]
pub struct ParametricUnitProblem {
    pub f: UniPoly,
    pub g: UniPoly,
    pub h: UniPoly,
    pub s: PrimeSet,
}

impl ParametricUnitProblem {
    pub fn new(f: UniPoly, g: UniPoly, h: UniPoly, s: PrimeSet) -> Result<Self> {
        let df = f
            .degree()
            .ok_or_else(|| Error::Validation("f is zero".into()))?;
        let dg = g
            .degree()
            .ok_or_else(|| Error::Validation("g is zero".into()))?;
        let dh = h
            .degree()
            .ok_or_else(|| Error::Validation("h is zero".into()))?;
        if df != dg || dg != dh {
            return Err(Error::Validation(
                "f, g, h must have the same degree".into(),
            ));
        }
        if df == 0 {
            return Err(Error::Validation("degree must be positive".into()));
        }
        for (a, b, name) in [(&f, &g, "f, g"), (&f, &h, "f, h"), (&g, &h, "g, h")] {
            if a.gcd(b).degree() != Some(0) {
                return Err(Error::Validation(format!("{name} must be coprime")));
            }
        }
        Ok(ParametricUnitProblem { f, g, h, s })
    }
}

/// The per-index decomposition `F_i(P) = beta_i * beta_{i+1} * alpha_i` of
/// the n-gon values, with `beta_i = gcd(F_i(P), F_{i-1}(P))` in `Z_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaDecomposition {
    pub beta: Vec<BigInt>,
    pub alpha: Vec<SRational>,
}

/// Evaluates `f(P) | g(P)` for every pair; a vanishing `f_i` value makes the
/// predicate false.  Point coordinates must be S-integral.
pub fn holds_div(problem: &DivisibilityProblem, point: &(SRational, SRational)) -> Result<bool> {
    for c in [&point.0, &point.1] {
        if !sring::is_s_integral(c, &problem.s) {
            return Err(Error::domain(format!("{c} is not S-integral")));
        }
    }
    let coords = [point.0.clone(), point.1.clone()];
    for (f, g) in &problem.pairs {
        let fv = f.eval(&coords)?;
        if fv.is_zero() {
            return Ok(false);
        }
        let gv = g.eval(&coords)?;
        if !sring::divides(&fv, &gv, &problem.s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scales a rational triple to a coprime integer triple whose first nonzero
/// coordinate is positive.
pub fn normalize_projective(triple: &[SRational; 3]) -> Result<[BigInt; 3]> {
    if triple.iter().all(|c| c.is_zero()) {
        return Err(Error::domain("cannot normalize the zero triple"));
    }
    let mut den = BigInt::one();
    for c in triple {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = triple
        .iter()
        .map(|c| c.numer() * &den / c.denom())
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    for c in ints.iter_mut() {
        *c /= &g;
    }
    if let Some(first) = ints.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in ints.iter_mut() {
                *c = -(c.clone());
            }
        }
    }
    Ok([ints[0].clone(), ints[1].clone(), ints[2].clone()])
}

fn int_triple_to_rat(t: &[BigInt; 3]) -> [SRational; 3] {
    [
        BigRational::from_integer(t[0].clone()),
        BigRational::from_integer(t[1].clone()),
        BigRational::from_integer(t[2].clone()),
    ]
}

/// Divisibility of forms: normalizes the triple, then checks that every
/// `F_i` value is nonzero and divides the `G` value in `Z_S`.
pub fn holds_forms(problem: &FormsProblem, triple: &[SRational; 3]) -> Result<bool> {
    let norm = normalize_projective(triple)?;
    let coords = int_triple_to_rat(&norm);
    let gv = problem.g.eval(&coords)?;
    for f in &problem.forms {
        let fv = f.eval(&coords)?;
        if fv.is_zero() {
            return Ok(false);
        }
        if !sring::divides(&fv, &gv, &problem.s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Values of the n-gon forms at a normalized triple.
fn ngon_values(problem: &NGonProblem, triple: &[BigInt; 3]) -> Result<Vec<SRational>> {
    let coords = int_triple_to_rat(triple);
    problem.forms.iter().map(|f| f.eval(&coords)).collect()
}

/// Consecutive-gcd decomposition of the form values at a point.
///
/// Errors if a value vanishes, or if the `beta_i` fail to be pairwise coprime
/// / some `alpha_i` fails to be S-integral — both symptoms that a prime
/// outside S divides three of the values, i.e. that S must be enlarged.
pub fn beta_decompose(problem: &NGonProblem, triple: &[SRational; 3]) -> Result<BetaDecomposition> {
    let norm = normalize_projective(triple)?;
    let values = ngon_values(problem, &norm)?;
    let n = values.len();
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::domain(format!("form {i} vanishes at the point")));
        }
    }
    let mut beta = Vec::with_capacity(n);
    for i in 0..n {
        let prev = (i + n - 1) % n;
        beta.push(sring::s_gcd(&values[i], &values[prev], &problem.s)?);
    }
    // pairwise coprimality of the beta; a shared prime flags an S too small
    for i in 0..n {
        for j in i + 1..n {
            let g = beta[i].gcd(&beta[j]);
            if !g.is_one() {
                let p = smallest_prime_factor(&g);
                return Err(Error::CoprimalityViolation { prime: p });
            }
        }
    }
    let mut alpha = Vec::with_capacity(n);
    for i in 0..n {
        let next = (i + 1) % n;
        let denom = BigRational::from_integer(&beta[i] * &beta[next]);
        let a = &values[i] / denom;
        if !sring::is_s_integral(&a, &problem.s) {
            let p = smallest_prime_factor(&sring::s_free_part(
                &BigRational::from_integer(a.denom().clone()),
                &problem.s,
            )?);
            return Err(Error::CoprimalityViolation { prime: p });
        }
        alpha.push(a);
    }
    Ok(BetaDecomposition { beta, alpha })
}

fn smallest_prime_factor(n: &BigInt) -> BigInt {
    poly::factorize(n)
        .into_iter()
        .next()
        .map(|(p, _)| p)
        .unwrap_or_else(|| n.clone())
}

/// The gcd-form predicate: every `alpha_i` is an S-unit.  A vanishing form
/// value yields `false`; a coprimality violation is an error (S too small).
pub fn holds_ngon(problem: &NGonProblem, triple: &[SRational; 3]) -> Result<bool> {
    let norm = normalize_projective(triple)?;
    let values = ngon_values(problem, &norm)?;
    if values.iter().any(|v| v.is_zero()) {
        return Ok(false);
    }
    let dec = beta_decompose(problem, triple)?;
    Ok(dec.alpha.iter().all(|a| sring::is_s_unit(a, &problem.s)))
}

/// The ideal-form predicate: after normalizing the triple, the ideal
/// `(x, y, z)` is all of `Z_S`, so the condition reduces to
/// `s_free_part(F_i(P)) = beta_i * beta_{i+1}` for every `i` — an oracle twin
/// of [`holds_ngon`] computed without touching `alpha`.
pub fn holds_ngon_ideal(problem: &NGonProblem, triple: &[SRational; 3]) -> Result<bool> {
    let norm = normalize_projective(triple)?;
    let values = ngon_values(problem, &norm)?;
    if values.iter().any(|v| v.is_zero()) {
        return Ok(false);
    }
    let n = values.len();
    let free: Vec<BigInt> = values
        .iter()
        .map(|v| sring::s_free_part(v, &problem.s))
        .collect::<Result<_>>()?;
    for i in 0..n {
        let prev = (i + n - 1) % n;
        let next = (i + 1) % n;
        let beta_i = free[i].gcd(&free[prev]);
        let beta_next = free[next].gcd(&free[i]);
        if free[i] != beta_i * beta_next {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The parametric unit predicate: `t` S-integral, `u, v` S-units, equation
/// exact.
pub fn holds_sunit(
    problem: &ParametricUnitProblem,
    sol: &(SRational, SRational, SRational),
) -> bool {
    let (u, v, t) = sol;
    if !sring::is_s_integral(t, &problem.s) {
        return false;
    }
    if !sring::is_s_unit(u, &problem.s) || !sring::is_s_unit(v, &problem.s) {
        return false;
    }
    let lhs = problem.f.eval(t) * u + problem.g.eval(t) * v;
    lhs == problem.h.eval(t)
}

/// Valuation criterion for integrality on a blow-up: `v_p(phi(P)) <=
/// v_p(psi(P))` for every prime outside S.  Errors when `phi` vanishes at the
/// point.
pub fn blowup_integral(
    phi: &MultiPoly,
    psi: &MultiPoly,
    point: &[SRational],
    s: &PrimeSet,
) -> Result<bool> {
    let pv = phi.eval(point)?;
    if pv.is_zero() {
        return Err(Error::domain("phi vanishes at the point"));
    }
    let qv = psi.eval(point)?;
    sring::divides(&pv, &qv, s)
}

#[cfg(test)]
pub(crate) mod tests {
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

    fn unit_pairs(s: &[u64]) -> DivisibilityProblem {
        let pairs = vec![
            (x(), c2(1)),
            (y(), c2(1)),
            (c2(1).sub(&x()).sub(&y()), c2(1)),
        ];
        DivisibilityProblem::new(pairs, PrimeSet::new(s.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn holds_div_examples() {
        let p = unit_pairs(&[]);
        assert!(holds_div(&p, &(rat(1), rat(-1))).unwrap());
        assert!(!holds_div(&p, &(rat(2), rat(3))).unwrap());
        assert!(!holds_div(&p, &(rat(0), rat(5))).unwrap());
        // non-integral coordinates are rejected
        assert!(holds_div(&p, &(ratio(1, 2), rat(0))).is_err());
    }

    #[test]
    fn normalization() {
        assert_eq!(
            normalize_projective(&[rat(2), rat(4), rat(6)]).unwrap(),
            [BigInt::from(1), BigInt::from(2), BigInt::from(3)]
        );
        assert_eq!(
            normalize_projective(&[ratio(-1, 2), rat(1), rat(0)]).unwrap(),
            [BigInt::from(1), BigInt::from(-2), BigInt::from(0)]
        );
        assert!(normalize_projective(&[rat(0), rat(0), rat(0)]).is_err());
    }

    fn x3() -> MultiPoly {
        MultiPoly::var(3, 0)
    }
    fn z3() -> MultiPoly {
        MultiPoly::var(3, 2)
    }

    #[test]
    fn holds_forms_examples() {
        // F1 = x^2, G = z^2
        let problem =
            FormsProblem::new(vec![x3().mul(&x3())], z3().mul(&z3()), PrimeSet::empty()).unwrap();
        assert!(!holds_forms(&problem, &[rat(2), rat(1), rat(1)]).unwrap());
        // (2,1,2) stays coprime, 4 | 4
        assert!(holds_forms(&problem, &[rat(2), rat(1), rat(2)]).unwrap());
        // scaling invariance
        assert!(holds_forms(&problem, &[rat(4), rat(2), rat(4)]).unwrap());
        assert!(holds_forms(&problem, &[ratio(2, 3), ratio(1, 3), ratio(2, 3)]).unwrap());
    }

    /// The cyclic Vandermonde forms x + t y + t^2 z for t = 0..n-1.
    pub(crate) fn vandermonde_ngon(n: usize, s: &[u64]) -> NGonProblem {
        let forms = (0..n as i64)
            .map(|t| {
                MultiPoly::from_int_terms(
                    3,
                    [
                        (vec![1, 0, 0], 1),
                        (vec![0, 1, 0], t),
                        (vec![0, 0, 1], t * t),
                    ],
                )
            })
            .collect();
        NGonProblem::new(forms, PrimeSet::new(s.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn hexagon_beta_table() {
        // frozen from an independent gcd computation: values at (6, 2, 1)
        // are 6, 9, 14, 21, 30, 41 with a single shared prime 7 between
        // positions 2 and 3
        let p = vandermonde_ngon(6, &[2, 3, 5]);
        let triple = [rat(6), rat(2), rat(1)];
        let dec = beta_decompose(&p, &triple).unwrap();
        let expect_beta: Vec<BigInt> = [1, 1, 1, 7, 1, 1]
            .iter()
            .map(|&b| BigInt::from(b))
            .collect();
        assert_eq!(dec.beta, expect_beta);
        let expect_alpha: Vec<SRational> = [6, 9, 2, 3, 30, 41].iter().map(|&a| rat(a)).collect();
        assert_eq!(dec.alpha, expect_alpha);
        // alpha_5 = 41 is not a unit, so the predicate fails here ...
        assert!(!holds_ngon(&p, &triple).unwrap());
        assert!(!holds_ngon_ideal(&p, &triple).unwrap());
        // ... while a point with all values 1 passes
        let one = [rat(1), rat(0), rat(0)];
        assert!(holds_ngon(&p, &one).unwrap());
        assert!(holds_ngon_ideal(&p, &one).unwrap());
    }

    #[test]
    fn beta_reconstruction() {
        let p = vandermonde_ngon(6, &[2, 3, 5]);
        let triple = [rat(6), rat(2), rat(1)];
        let dec = beta_decompose(&p, &triple).unwrap();
        let norm = normalize_projective(&triple).unwrap();
        let values = ngon_values(&p, &norm).unwrap();
        for i in 0..6 {
            let next = (i + 1) % 6;
            let recon = BigRational::from_integer(&dec.beta[i] * &dec.beta[next]) * &dec.alpha[i];
            assert_eq!(recon, values[i]);
        }
    }

    #[test]
    fn coprimality_violation_names_prime() {
        // a prime outside S can divide three values only when it divides a
        // triple determinant; for the Vandermonde hexagon mod 2 every form
        // reduces to x + ty + t^2 z with t in {0,1}, so at (2, 1, 1) all six
        // values are even.  With S = {} the decomposition must refuse and
        // name the offending prime.
        let p = vandermonde_ngon(6, &[]);
        let triple = [rat(2), rat(1), rat(1)];
        match beta_decompose(&p, &triple) {
            Err(Error::CoprimalityViolation { prime }) => assert_eq!(prime, BigInt::from(2)),
            other => panic!("expected a coprimality violation, got {other:?}"),
        }
        // the same point is fine once 2 is in S
        let p = vandermonde_ngon(6, &[2]);
        assert!(beta_decompose(&p, &triple).is_ok());
    }

    #[test]
    fn holds_sunit_examples() {
        let f = UniPoly::from_ints(&[0, 1]); // t
        let g = UniPoly::from_ints(&[1, -1]); // 1 - t
        let h = UniPoly::from_ints(&[1, 1]); // t + 1
        let p5 = ParametricUnitProblem::new(
            f.clone(),
            g.clone(),
            h.clone(),
            PrimeSet::new([5]).unwrap(),
        )
        .unwrap();
        assert!(holds_sunit(&p5, &(rat(5), rat(5), rat(4))));
        let p0 = ParametricUnitProblem::new(f, g, h, PrimeSet::empty()).unwrap();
        assert!(!holds_sunit(&p0, &(rat(5), rat(5), rat(4))));
        assert!(!holds_sunit(&p5, &(rat(5), rat(5), rat(3))));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // the forms predicate is invariant under scaling the triple by
            // any nonzero rational (normalization absorbs the scalar)
            #[test]
            fn holds_forms_scaling_invariance(
                x in -20i64..20, y in -20i64..20, z in -20i64..20,
                num in 1i64..7, den in 1i64..7, neg: bool,
            ) {
                prop_assume!(x != 0 || y != 0 || z != 0);
                let problem = FormsProblem::new(
                    vec![MultiPoly::var(3, 0).mul(&MultiPoly::var(3, 0))],
                    MultiPoly::var(3, 2).mul(&MultiPoly::var(3, 2)),
                    PrimeSet::new([3]).unwrap(),
                )
                .unwrap();
                let triple = [rat(x), rat(y), rat(z)];
                let scale = ratio(if neg { -num } else { num }, den);
                let scaled = [
                    triple[0].clone() * &scale,
                    triple[1].clone() * &scale,
                    triple[2].clone() * &scale,
                ];
                prop_assert_eq!(
                    holds_forms(&problem, &triple).unwrap(),
                    holds_forms(&problem, &scaled).unwrap()
                );
            }

            // mutual blow-up integrality pins equal valuations outside S
            #[test]
            fn blowup_mutual_iff_equal_valuations(
                a in 1i64..400, b in 1i64..400, sign_a: bool, sign_b: bool,
            ) {
                let s = PrimeSet::new([2]).unwrap();
                let x = MultiPoly::var(2, 0);
                let y = MultiPoly::var(2, 1);
                let pa = rat(if sign_a { a } else { -a });
                let pb = rat(if sign_b { b } else { -b });
                let point = [pa.clone(), pb.clone()];
                let both = blowup_integral(&x, &y, &point, &s).unwrap()
                    && blowup_integral(&y, &x, &point, &s).unwrap();
                // oracle: compare valuations at every prime dividing either value
                let mut equal_valuations = true;
                for (p, _) in crate::polysys::poly::factorize(&(pa.numer() * pb.numer())) {
                    let p64 = u64::try_from(&p).unwrap();
                    if s.contains(p64) {
                        continue;
                    }
                    if crate::sring::val(p64, &pa) != crate::sring::val(p64, &pb) {
                        equal_valuations = false;
                    }
                }
                prop_assert_eq!(both, equal_valuations);
            }
        }
    }

    #[test]
    fn blowup_integrality() {
        let s0 = PrimeSet::empty();
        let s2 = PrimeSet::new([2]).unwrap();
        assert!(blowup_integral(&x(), &y(), &[rat(2), rat(4)], &s0).unwrap());
        assert!(!blowup_integral(&x(), &y(), &[rat(4), rat(2)], &s0).unwrap());
        assert!(blowup_integral(&x(), &y(), &[rat(4), rat(2)], &s2).unwrap());
        assert!(blowup_integral(&x(), &y(), &[rat(0), rat(2)], &s0).is_err());
        // mutual integrality pins equal valuations outside S
        let p = (rat(12), rat(20));
        let both = blowup_integral(&x(), &y(), &[p.0.clone(), p.1.clone()], &s2).unwrap()
            && blowup_integral(&y(), &x(), &[p.0.clone(), p.1.clone()], &s2).unwrap();
        // 12 = 2^2*3, 20 = 2^2*5: outside {2} valuations differ at 3 and 5
        assert!(!both);
    }
}
