//! General-position validation by exact elimination.
//!
//! The checks decide conditions over the algebraic closure wherever the
//! relevant resultants and gcds split over `Q`, and fall back to iterated
//! resultant certificates otherwise; a condition that cannot be decided is
//! reported as inconclusive rather than guessed.  Every verified condition
//! leaves behind integer certificates whose prime factors are exactly the
//! places of bad reduction ([`bad_primes_div`] and friends).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{factorize, resultant, MultiPoly, UniPoly};
use super::{DivisibilityProblem, FormsProblem, NGonProblem};
use crate::error::Error;
use crate::sring::{PrimeSet, SRational};
use crate::Result;

/// Verdict for one general-position condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionVerdict {
    Verified,
    Violated(String),
    Inconclusive(String),
}

impl ConditionVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, ConditionVerdict::Verified)
    }
}

/// Labeled verdicts plus the integer certificates that witness them.
#[derive(Debug, Clone, Default)]
pub struct PositionReport {
    pub conditions: Vec<(String, ConditionVerdict)>,
    pub notes: Vec<String>,
    pub certificates: Vec<BigInt>,
}

impl PositionReport {
    pub fn all_verified(&self) -> bool {
        self.conditions.iter().all(|(_, v)| v.is_verified())
    }

    fn push(&mut self, label: String, verdict: ConditionVerdict) {
        self.conditions.push((label, verdict));
    }

    fn certify(&mut self, value: &BigRational) {
        if !value.is_zero() {
            let prod = value.numer().abs() * value.denom().abs();
            if !prod.is_one() {
                self.certificates.push(prod);
            }
        }
    }
}

/// Rational common zeros of two curves in the affine plane, together with an
/// upper bound for the number of distinct x-fibers of common zeros over the
/// closure and a completeness flag (`complete` means the rational points are
/// provably *all* common zeros over the closure).
#[derive(Debug, Clone)]
pub struct CommonZeros {
    pub points: Vec<(SRational, SRational)>,
    pub bound: usize,
    pub complete: bool,
}

/// Common affine zeros of `p` and `q` (two variables).  Errors with
/// [`Error::PositiveDimensional`] when the curves share a component.
pub fn common_affine_zeros(p: &MultiPoly, q: &MultiPoly) -> Result<CommonZeros> {
    assert_eq!(p.arity(), 2);
    assert_eq!(q.arity(), 2);
    if p.is_zero() || q.is_zero() {
        return Err(Error::PositiveDimensional);
    }
    let r_elim_y = resultant(p, q, 1);
    let r_elim_x = resultant(p, q, 0);
    if r_elim_y.is_zero() || r_elim_x.is_zero() {
        return Err(Error::PositiveDimensional);
    }
    // both inputs constant: no zeros at all
    if p.degree() == Some(0) || q.degree() == Some(0) {
        return Ok(CommonZeros {
            points: vec![],
            bound: 0,
            complete: true,
        });
    }
    let rx = r_elim_y.as_unipoly(0).expect("resultant eliminated y");
    if rx.degree() == Some(0) {
        return Ok(CommonZeros {
            points: vec![],
            bound: 0,
            complete: true,
        });
    }
    let w = rx.squarefree_part();
    let bound = w.degree().unwrap_or(0);
    let roots = w.rational_roots();
    let mut complete = roots.len() == bound;
    let mut points = Vec::new();
    for (x0, _) in roots {
        let px = p.substitute(0, &x0);
        let qx = q.substitute(0, &x0);
        let fiber = match (px.is_zero(), qx.is_zero()) {
            (true, true) => return Err(Error::PositiveDimensional),
            (true, false) => qx.as_unipoly(1).expect("x eliminated"),
            (false, true) => px.as_unipoly(1).expect("x eliminated"),
            (false, false) => {
                let pu = px.as_unipoly(1).expect("x eliminated");
                let qu = qx.as_unipoly(1).expect("x eliminated");
                pu.gcd(&qu)
            }
        };
        if fiber.is_zero() {
            return Err(Error::PositiveDimensional);
        }
        if fiber.degree() == Some(0) {
            continue; // phantom fiber from a vanishing leading coefficient
        }
        let sf = fiber.squarefree_part();
        let ys = sf.rational_roots();
        if ys.len() != sf.degree().unwrap_or(0) {
            complete = false;
        }
        for (y0, _) in ys {
            points.push((x0.clone(), y0));
        }
    }
    points.sort();
    points.dedup();
    Ok(CommonZeros {
        points,
        bound,
        complete,
    })
}

// ---------------------------------------------------------------------------
// binary forms (homogeneous, two variables)

/// Sylvester resultant of two binary forms given by full coefficient vectors.
fn binary_resultant(f: &MultiPoly, g: &MultiPoly) -> BigRational {
    let fc = binary_coeffs(f);
    let gc = binary_coeffs(g);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    if m == 0 && n == 0 {
        return BigRational::one();
    }
    let size = m + n;
    let mut mat = vec![vec![BigRational::zero(); size]; size];
    for row in 0..n {
        for (k, c) in fc.iter().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in gc.iter().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    rational_det(mat)
}

/// Coefficients `[x^d, x^(d-1) y, ..., y^d]` of a binary form of degree d.
fn binary_coeffs(f: &MultiPoly) -> Vec<BigRational> {
    assert_eq!(f.arity(), 2);
    assert!(f.is_homogeneous());
    let d = f.degree().unwrap_or(0) as usize;
    let mut out = vec![BigRational::zero(); d + 1];
    for (e, c) in f.terms() {
        out[e[1] as usize] = c.clone();
    }
    out
}

fn rational_det(mut mat: Vec<Vec<BigRational>>) -> BigRational {
    let n = mat.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero());
        let Some(pr) = pivot else {
            return BigRational::zero();
        };
        if pr != col {
            mat.swap(pr, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &pv;
            for c in col..n {
                let sub = &mat[col][c] * &factor;
                mat[r][c] = &mat[r][c] - &sub;
            }
        }
    }
    det
}

/// Exact test for a common projective zero of two binary forms.
fn binary_forms_share_zero(f: &MultiPoly, g: &MultiPoly) -> bool {
    let fu = UniPoly::new(binary_coeffs(f).iter().rev().cloned().collect());
    let gu = UniPoly::new(binary_coeffs(g).iter().rev().cloned().collect());
    // the reversed vectors are f(t, 1), g(t, 1); a common zero is a common
    // root there or a shared zero at (1 : 0), i.e. both vectors losing their
    // top coefficient
    let f_at_infinity = binary_coeffs(f)[0].is_zero();
    let g_at_infinity = binary_coeffs(g)[0].is_zero();
    if f_at_infinity && g_at_infinity {
        return true;
    }
    fu.gcd(&gu).degree().map(|d| d > 0).unwrap_or(true)
}

/// Flags a repeated factor in a binary form (used to annotate the point-at-
/// infinity check, where no multiplicity convention is imposed).
fn binary_form_has_repeated_factor(f: &MultiPoly) -> bool {
    let coeffs = binary_coeffs(f);
    let d = coeffs.len() - 1;
    if d < 2 {
        return false;
    }
    let fu = UniPoly::new(coeffs.iter().rev().cloned().collect());
    let y_mult = d - fu.degree().unwrap_or(0);
    if y_mult >= 2 {
        return true;
    }
    fu.gcd(&fu.derivative())
        .degree()
        .map(|g| g > 0)
        .unwrap_or(false)
}

// ---------------------------------------------------------------------------
// triple conditions in the affine plane

/// Decides whether the three affine curves `p = q = h = 0` have a common
/// point over the closure.  Returns the verdict together with the integer
/// certificates backing a "verified".
fn triple_no_common_zero(
    p: &MultiPoly,
    q: &MultiPoly,
    h: &MultiPoly,
    report: &mut PositionReport,
) -> ConditionVerdict {
    // constants without zeros settle the question immediately
    if let Some(0) = h.degree() {
        let c = h.eval(&[BigRational::zero(), BigRational::zero()]).unwrap();
        report.certify(&c);
        return ConditionVerdict::Verified;
    }
    match common_affine_zeros(p, q) {
        Ok(cz) => {
            for (x0, y0) in &cz.points {
                let hv = h.eval(&[x0.clone(), y0.clone()]).unwrap();
                if hv.is_zero() {
                    return ConditionVerdict::Violated(format!("common zero at ({x0}, {y0})"));
                }
                report.certify(&hv);
            }
            if cz.complete {
                return ConditionVerdict::Verified;
            }
            // irrational intersections remain; try iterated resultants
            match iterated_resultant_certificate(p, q, h) {
                Some(cert) => {
                    report.certify(&cert);
                    ConditionVerdict::Verified
                }
                None => ConditionVerdict::Inconclusive(
                    "irrational intersections and vanishing iterated resultant".into(),
                ),
            }
        }
        Err(Error::PositiveDimensional) => {
            ConditionVerdict::Inconclusive("the first two curves share a component".into())
        }
        Err(e) => ConditionVerdict::Inconclusive(format!("elimination failed: {e}")),
    }
}

/// Nonzero iterated resultant in either elimination order certifies that the
/// triple has no common zero over the closure.
fn iterated_resultant_certificate(
    p: &MultiPoly,
    q: &MultiPoly,
    h: &MultiPoly,
) -> Option<BigRational> {
    for var in [1usize, 0] {
        let other = 1 - var;
        let r1 = resultant(p, q, var);
        let r2 = resultant(p, h, var);
        if r1.is_zero() || r2.is_zero() {
            continue;
        }
        let r = resultant(&r1, &r2, other);
        if r.is_zero() {
            continue;
        }
        if let Some(c) = r
            .as_unipoly(0)
            .filter(|u| u.degree() == Some(0))
            .map(|u| u.coeff(0))
        {
            return Some(c);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// divisibility problems

/// Checks the four general-position conditions for a divisibility problem:
/// no common points at infinity among the `f_i`; no common affine point of
/// three `f`-curves; transversality of each `f_i = 0` with its nonconstant
/// `g_i = 0`; and no common point of `f_i = 0`, `f_j = 0`, `g_h = 0`.
pub fn check_general_position_div(problem: &DivisibilityProblem) -> PositionReport {
    let mut report = PositionReport::default();
    let m = problem.pairs.len();
    let f: Vec<&MultiPoly> = problem.pairs.iter().map(|(f, _)| f).collect();
    let g: Vec<&MultiPoly> = problem.pairs.iter().map(|(_, g)| g).collect();

    // leading-coefficient contents keep degrees stable under reduction
    for (i, fi) in f.iter().enumerate() {
        let lead = fi.primitive_normalized().leading_form().unwrap();
        let mut content = BigInt::zero();
        for (_, c) in lead.terms() {
            content = content.gcd(c.numer());
        }
        if !content.abs().is_one() && !content.is_zero() {
            report.certificates.push(content.abs());
        }
        if binary_form_has_repeated_factor(&lead) {
            report.notes.push(format!(
                "leading form of f{} has a repeated factor; the infinity check is set-theoretic",
                i + 1
            ));
        }
    }

    // bullet 1: pairwise disjoint at infinity
    for i in 0..m {
        for j in i + 1..m {
            let li = f[i].primitive_normalized().leading_form().unwrap();
            let lj = f[j].primitive_normalized().leading_form().unwrap();
            let label = format!("f{} and f{} disjoint at infinity", i + 1, j + 1);
            if binary_forms_share_zero(&li, &lj) {
                report.push(
                    label,
                    ConditionVerdict::Violated("common point at infinity".into()),
                );
            } else {
                let res = binary_resultant(&li, &lj);
                report.certify(&res);
                report.push(label, ConditionVerdict::Verified);
            }
        }
    }

    // bullet 2: no three f-curves meet
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let label = format!(
                    "curves f{}, f{}, f{} have no common point",
                    i + 1,
                    j + 1,
                    k + 1
                );
                let verdict = triple_no_common_zero(f[i], f[j], f[k], &mut report);
                report.push(label, verdict);
            }
        }
    }

    // bullet 3: transversality of f_i and nonconstant g_i
    for i in 0..m {
        let label = format!("f{} = 0 and g{} = 0 intersect transversely", i + 1, i + 1);
        if g[i].degree().unwrap_or(0) == 0 {
            report.push(label, ConditionVerdict::Verified);
            continue;
        }
        let jac = f[i]
            .partial_derivative(0)
            .mul(&g[i].partial_derivative(1))
            .sub(&f[i].partial_derivative(1).mul(&g[i].partial_derivative(0)));
        let verdict = triple_no_common_zero(f[i], g[i], &jac, &mut report);
        report.push(label, verdict);
    }

    // bullet 4: no common point of f_i, f_j, g_h for h in {i, j}
    for i in 0..m {
        for j in i + 1..m {
            for h in [i, j] {
                let label = format!(
                    "curves f{}, f{}, g{} have no common point",
                    i + 1,
                    j + 1,
                    h + 1
                );
                let verdict = triple_no_common_zero(f[i], f[j], g[h], &mut report);
                report.push(label, verdict);
            }
        }
    }

    report
}

// ---------------------------------------------------------------------------
// forms problems

/// Restriction of a ternary form to the affine chart `z = 1`.
fn chart_z1(f: &MultiPoly) -> MultiPoly {
    assert_eq!(f.arity(), 3);
    let mut out = MultiPoly::zero(2);
    for (e, c) in f.terms() {
        out = out.add(&MultiPoly::from_terms(2, [(vec![e[0], e[1]], c.clone())]));
    }
    out
}

/// Restriction of a ternary form to the line `z = 0`, as a binary form.
fn line_z0(f: &MultiPoly) -> MultiPoly {
    assert_eq!(f.arity(), 3);
    let mut out = MultiPoly::zero(2);
    for (e, c) in f.terms() {
        if e[2] == 0 {
            out = out.add(&MultiPoly::from_terms(2, [(vec![e[0], e[1]], c.clone())]));
        }
    }
    out
}

/// Rational common projective zeros of two coprime ternary forms, with a
/// completeness flag as in [`common_affine_zeros`].
fn projective_common_zeros(f: &MultiPoly, g: &MultiPoly) -> Result<(Vec<[BigRational; 3]>, bool)> {
    let mut points = Vec::new();
    let mut complete = true;

    // affine chart z = 1
    let fa = chart_z1(f);
    let ga = chart_z1(g);
    if fa.is_zero() || ga.is_zero() {
        return Err(Error::PositiveDimensional);
    }
    match common_affine_zeros(&fa, &ga) {
        Ok(cz) => {
            complete &= cz.complete;
            for (x0, y0) in cz.points {
                points.push([x0, y0, BigRational::one()]);
            }
        }
        Err(e) => return Err(e),
    }

    // the line z = 0: binary forms
    let fb = line_z0(f);
    let gb = line_z0(g);
    match (fb.is_zero(), gb.is_zero()) {
        (true, true) => return Err(Error::PositiveDimensional), // both divisible by z
        (true, false) | (false, true) => {
            // one form contains the whole line z = 0: zeros there are the
            // other's binary zeros
            let h = if fb.is_zero() { &gb } else { &fb };
            let hu = UniPoly::new(binary_coeffs(h).iter().rev().cloned().collect());
            let d = h.degree().unwrap_or(0) as usize;
            let roots = hu.rational_roots();
            complete &= roots.len() == hu.squarefree_part().degree().unwrap_or(0);
            for (t, _) in roots {
                points.push([t, BigRational::one(), BigRational::zero()]);
            }
            if hu.degree().unwrap_or(0) < d {
                // top coefficient lost: (1 : 0 : 0) is a zero as well
                points.push([BigRational::one(), BigRational::zero(), BigRational::zero()]);
            }
        }
        (false, false) => {
            let fu = UniPoly::new(binary_coeffs(&fb).iter().rev().cloned().collect());
            let gu = UniPoly::new(binary_coeffs(&gb).iter().rev().cloned().collect());
            let gcd = fu.gcd(&gu);
            if let Some(d) = gcd.degree() {
                if d > 0 {
                    let roots = gcd.rational_roots();
                    complete &= roots.len() == gcd.squarefree_part().degree().unwrap_or(0);
                    for (t, _) in roots {
                        points.push([t, BigRational::one(), BigRational::zero()]);
                    }
                }
            }
            // (1 : 0 : 0) lies on both iff both binary forms lose top degree
            let f_inf = binary_coeffs(&fb)[0].is_zero();
            let g_inf = binary_coeffs(&gb)[0].is_zero();
            if f_inf && g_inf {
                points.push([BigRational::one(), BigRational::zero(), BigRational::zero()]);
            }
        }
    }
    Ok((points, complete))
}

/// Checks the two conditions for a forms problem: transversality of each
/// `F_i = 0` with `G = 0` at smooth points, and emptiness of every triple
/// intersection `F_i = F_j = F_k = 0`.
pub fn check_general_position_forms(problem: &FormsProblem) -> PositionReport {
    let mut report = PositionReport::default();
    let r = problem.forms.len();

    for (i, fi) in problem.forms.iter().enumerate() {
        let label = format!("F{} and G meet transversely at smooth points", i + 1);
        let verdict = forms_transversality(fi, &problem.g, &mut report);
        report.push(label, verdict);
    }

    for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                let label = format!("F{}, F{}, F{} have no common zero", i + 1, j + 1, k + 1);
                let verdict = projective_triple_empty(
                    &problem.forms[i],
                    &problem.forms[j],
                    &problem.forms[k],
                    &mut report,
                );
                report.push(label, verdict);
            }
        }
    }
    report
}

fn gradient_minors(f: &MultiPoly, g: &MultiPoly) -> [MultiPoly; 3] {
    let fx = f.partial_derivative(0);
    let fy = f.partial_derivative(1);
    let fz = f.partial_derivative(2);
    let gx = g.partial_derivative(0);
    let gy = g.partial_derivative(1);
    let gz = g.partial_derivative(2);
    [
        fx.mul(&gy).sub(&fy.mul(&gx)),
        fx.mul(&gz).sub(&fz.mul(&gx)),
        fy.mul(&gz).sub(&fz.mul(&gy)),
    ]
}

fn forms_transversality(
    f: &MultiPoly,
    g: &MultiPoly,
    report: &mut PositionReport,
) -> ConditionVerdict {
    let minors = gradient_minors(f, g);
    match projective_common_zeros(f, g) {
        Ok((points, complete)) => {
            for pt in &points {
                let vals: Vec<BigRational> = minors.iter().map(|m| m.eval(pt).unwrap()).collect();
                if vals.iter().all(|v| v.is_zero()) {
                    return ConditionVerdict::Violated(format!(
                        "tangency or singular point at ({} : {} : {})",
                        pt[0], pt[1], pt[2]
                    ));
                }
                for v in &vals {
                    report.certify(v);
                }
            }
            if complete {
                return ConditionVerdict::Verified;
            }
            // sufficient certificate: some minor misses every common zero
            for m in &minors {
                if let ConditionVerdict::Verified = projective_triple_empty(f, g, m, report) {
                    return ConditionVerdict::Verified;
                }
            }
            ConditionVerdict::Inconclusive("irrational intersections of F and G".into())
        }
        Err(Error::PositiveDimensional) => {
            ConditionVerdict::Inconclusive("F and G share a component".into())
        }
        Err(e) => ConditionVerdict::Inconclusive(format!("elimination failed: {e}")),
    }
}

fn projective_triple_empty(
    a: &MultiPoly,
    b: &MultiPoly,
    c: &MultiPoly,
    report: &mut PositionReport,
) -> ConditionVerdict {
    if c.is_zero() {
        return ConditionVerdict::Inconclusive("third form is identically zero".into());
    }
    // affine chart; a shared component of the first two curves meets any
    // positive-degree third curve somewhere in the projective plane
    let verdict = match common_affine_zeros(&chart_z1(a), &chart_z1(b)) {
        Err(Error::PositiveDimensional) => {
            if c.degree().unwrap_or(0) >= 1 {
                return ConditionVerdict::Violated(
                    "the first two curves share a component, which meets the third".into(),
                );
            }
            let cv = c
                .eval(&[BigRational::zero(), BigRational::zero(), BigRational::one()])
                .unwrap();
            report.certify(&cv);
            ConditionVerdict::Verified
        }
        _ => triple_no_common_zero(&chart_z1(a), &chart_z1(b), &chart_z1(c), report),
    };
    if !verdict.is_verified() {
        return verdict;
    }
    // line at infinity
    let ab = [line_z0(a), line_z0(b), line_z0(c)];
    let nonzero: Vec<&MultiPoly> = ab.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.len() < 3 {
        // some form vanishes on the whole line; the common zeros there are
        // the binary common zeros of the remaining ones
        match nonzero.len() {
            0 => {
                return ConditionVerdict::Violated("all three forms contain the line z = 0".into())
            }
            1 => {
                let f = nonzero[0];
                let fu = UniPoly::new(binary_coeffs(f).iter().rev().cloned().collect());
                let has_zero = fu.degree().map(|d| d > 0).unwrap_or(false)
                    || fu.degree().unwrap_or(0) < f.degree().unwrap_or(0) as usize;
                if has_zero {
                    return ConditionVerdict::Violated(
                        "two forms contain z = 0 and meet the third there".into(),
                    );
                }
            }
            _ => {
                if binary_forms_share_zero(nonzero[0], nonzero[1]) {
                    return ConditionVerdict::Violated(
                        "one form contains z = 0 where the other two meet".into(),
                    );
                }
                let res = binary_resultant(nonzero[0], nonzero[1]);
                report.certify(&res);
            }
        }
        return ConditionVerdict::Verified;
    }
    // generic case: check pairwise gcd of the three binary restrictions for a
    // common projective root of all three
    let au = UniPoly::new(binary_coeffs(&ab[0]).iter().rev().cloned().collect());
    let bu = UniPoly::new(binary_coeffs(&ab[1]).iter().rev().cloned().collect());
    let cu = UniPoly::new(binary_coeffs(&ab[2]).iter().rev().cloned().collect());
    let g = au.gcd(&bu).gcd(&cu);
    if g.degree().map(|d| d > 0).unwrap_or(false) {
        return ConditionVerdict::Violated("common point on the line z = 0".into());
    }
    let all_at_inf = ab.iter().all(|f| {
        let c = binary_coeffs(f);
        c[0].is_zero()
    });
    if all_at_inf {
        return ConditionVerdict::Violated("common zero at (1 : 0 : 0)".into());
    }
    ConditionVerdict::Verified
}

// ---------------------------------------------------------------------------
// bad primes

fn primes_of_certificates(certs: &[BigInt]) -> Result<PrimeSet> {
    let mut primes = Vec::new();
    for c in certs {
        if c.is_zero() {
            continue;
        }
        for (p, _) in factorize(c) {
            primes.push(p);
        }
    }
    PrimeSet::from_bigints(primes)
}

/// Primes of bad reduction for an n-gon problem: every prime dividing one of
/// the triple determinants.  Errors when some determinant vanishes (general
/// position fails over `Q`).
pub fn bad_primes_ngon(problem: &NGonProblem) -> Result<PrimeSet> {
    let mut certs = Vec::new();
    for (i, j, k, det) in problem.triple_determinants() {
        if det.is_zero() {
            return Err(Error::GeneralPosition(format!(
                "forms {i}, {j}, {k} are linearly dependent"
            )));
        }
        // scale rows to primitive integers: the determinant of the primitive
        // integer forms carries the reduction obstruction
        certs.push(det.numer().abs() * det.denom().abs());
    }
    primes_of_certificates(&certs)
}

/// Primes of bad reduction for a divisibility problem, from the certificates
/// of a successful general-position check.
pub fn bad_primes_div(problem: &DivisibilityProblem) -> Result<PositionBadPrimes> {
    let report = check_general_position_div(problem);
    if !report.all_verified() {
        return Err(Error::GeneralPosition(describe_failures(&report)));
    }
    let primes = primes_of_certificates(&report.certificates)?;
    Ok(PositionBadPrimes { primes, report })
}

/// Primes of bad reduction for a forms problem.
pub fn bad_primes_forms(problem: &FormsProblem) -> Result<PositionBadPrimes> {
    let report = check_general_position_forms(problem);
    if !report.all_verified() {
        return Err(Error::GeneralPosition(describe_failures(&report)));
    }
    let primes = primes_of_certificates(&report.certificates)?;
    Ok(PositionBadPrimes { primes, report })
}

/// Bad primes together with the validation report they were extracted from.
#[derive(Debug, Clone)]
pub struct PositionBadPrimes {
    pub primes: PrimeSet,
    pub report: PositionReport,
}

fn describe_failures(report: &PositionReport) -> String {
    report
        .conditions
        .iter()
        .filter(|(_, v)| !v.is_verified())
        .map(|(label, v)| format!("{label}: {v:?}"))
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::tests::vandermonde_ngon;
    use crate::sring::rat;

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
    fn common_zero_examples() {
        let cz = common_affine_zeros(&x(), &y()).unwrap();
        assert_eq!(cz.points, vec![(rat(0), rat(0))]);
        assert_eq!(cz.bound, 1);
        assert!(cz.complete);

        let cz = common_affine_zeros(&x().sub(&c2(1)), &y().sub(&c2(2))).unwrap();
        assert_eq!(cz.points, vec![(rat(1), rat(2))]);
        assert_eq!(cz.bound, 1);

        match common_affine_zeros(&x().mul(&x()), &x()) {
            Err(Error::PositiveDimensional) => {}
            other => panic!("expected positive-dimensional error, got {other:?}"),
        }
    }

    #[test]
    fn common_zero_irrational_flagged() {
        // x^2 - 2 = 0 and y = 0 meet at irrational points only
        let p = x().mul(&x()).sub(&c2(2));
        let cz = common_affine_zeros(&p, &y()).unwrap();
        assert!(cz.points.is_empty());
        assert_eq!(cz.bound, 2);
        assert!(!cz.complete);
    }

    fn unit_problem() -> DivisibilityProblem {
        DivisibilityProblem::new(
            vec![
                (x(), c2(1)),
                (y(), c2(1)),
                (c2(1).sub(&x()).sub(&y()), c2(1)),
            ],
            PrimeSet::empty(),
        )
        .unwrap()
    }

    #[test]
    fn unit_configuration_passes() {
        let report = check_general_position_div(&unit_problem());
        assert!(report.all_verified(), "{:?}", report.conditions);
        // all certificates are trivial, so no bad primes
        let bp = bad_primes_div(&unit_problem()).unwrap();
        assert!(
            bp.primes.is_empty(),
            "expected no bad primes, got {}",
            bp.primes
        );
    }

    #[test]
    fn infinity_violation_detected() {
        // f1 = x and f2 = x + 1 share the point (0 : 1 : 0) at infinity
        let problem = DivisibilityProblem::new(
            vec![(x(), c2(1)), (x().add(&c2(1)), c2(1))],
            PrimeSet::empty(),
        )
        .unwrap();
        let report = check_general_position_div(&problem);
        let infinity = report
            .conditions
            .iter()
            .find(|(l, _)| l.contains("infinity"))
            .unwrap();
        assert!(matches!(infinity.1, ConditionVerdict::Violated(_)));
    }

    #[test]
    fn tangency_violation_detected() {
        // f = y - x^2 and g = y are tangent at the origin
        let problem =
            DivisibilityProblem::new(vec![(y().sub(&x().mul(&x())), y())], PrimeSet::empty())
                .unwrap();
        let report = check_general_position_div(&problem);
        let transversal = report
            .conditions
            .iter()
            .find(|(l, _)| l.contains("transversely"))
            .unwrap();
        assert!(matches!(transversal.1, ConditionVerdict::Violated(_)));
    }

    #[test]
    fn vandermonde_bad_primes() {
        let p = vandermonde_ngon(6, &[]);
        let bad = bad_primes_ngon(&p).unwrap();
        let expect = PrimeSet::new([2, 3, 5]).unwrap();
        assert_eq!(bad, expect);
        // soundness: mod any prime outside the bad set, all determinants stay
        // nonzero; spot-check p = 7 and p = 11
        for q in [7i64, 11] {
            for (_, _, _, det) in p.triple_determinants() {
                let num = det.numer();
                assert!(!(num % BigInt::from(q)).is_zero());
            }
        }
    }

    #[test]
    fn coordinate_triangle_has_no_bad_primes() {
        let forms = vec![
            MultiPoly::var(3, 0),
            MultiPoly::var(3, 1),
            MultiPoly::var(3, 2),
        ];
        let p = NGonProblem::new(forms, PrimeSet::empty()).unwrap();
        assert!(bad_primes_ngon(&p).unwrap().is_empty());
    }

    fn x3() -> MultiPoly {
        MultiPoly::var(3, 0)
    }
    fn y3() -> MultiPoly {
        MultiPoly::var(3, 1)
    }
    fn z3() -> MultiPoly {
        MultiPoly::var(3, 2)
    }

    #[test]
    fn forms_duplicate_violates() {
        // F1 = F2 makes every triple containing both fail
        let f1 = x3().mul(&x3()).add(&y3().mul(&z3()));
        let problem = FormsProblem::new(
            vec![
                f1.clone(),
                f1.clone(),
                x3().mul(&y3()).sub(&z3().mul(&z3())),
            ],
            x3().mul(&x3()),
            PrimeSet::empty(),
        );
        // duplicate forms are structurally fine; the position check fails
        let problem = problem.unwrap();
        let report = check_general_position_forms(&problem);
        assert!(!report.all_verified());
    }

    #[test]
    fn forms_singular_g_violates() {
        // G = x^2 is singular along x = 0; F1 = y z - x^2 passes through
        // (0 : 0 : 1) where G vanishes doubly
        let problem = FormsProblem::new(
            vec![y3().mul(&z3()).sub(&x3().mul(&x3()))],
            x3().mul(&x3()),
            PrimeSet::empty(),
        )
        .unwrap();
        let report = check_general_position_forms(&problem);
        let cond = &report.conditions[0];
        assert!(
            matches!(cond.1, ConditionVerdict::Violated(_)),
            "expected violation, got {:?}",
            cond
        );
    }
}
