//! Integral points on conics minus a marked degree-2 divisor: Pell
//! fundamental solutions, stabilizer matrices fixing the marked pair, and
//! orbit generation with exact on-curve and mark-integrality checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::polysys::{normalize_projective, poly::factorize, MultiPoly};
use crate::sring::{self, PrimeSet, SRational};
use crate::Result;

pub type Vec3 = [BigInt; 3];
pub type Mat3 = [[BigInt; 3]; 3];

/// A nondegenerate plane conic with a marked degree-2 divisor cut out by a
/// line: the marks are `C ∩ {ell = 0}`.
#[derive(Debug, Clone)]
pub struct ConicWithMarks {
    /// primitive integer quadratic form in (x, y, z)
    pub form: MultiPoly,
    /// primitive integer linear form cutting the marks
    pub ell: Vec3,
    /// discriminant of the restriction of the conic to the line; the marked
    /// pair is split (rational) iff this is a nonzero square, tangent iff 0
    pub restriction_disc: BigInt,
}

/// How the marked pair splits over `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkKind {
    RationalPair,
    RealQuadraticPair,
    Tangent,
    ComplexPair,
}

impl ConicWithMarks {
    pub fn new(form: MultiPoly, ell: Vec3) -> Result<Self> {
        if form.arity() != 3 || !form.is_homogeneous() || form.degree() != Some(2) {
            return Err(Error::Validation(
                "conic must be a ternary quadratic form".into(),
            ));
        }
        if ell.iter().all(|c| c.is_zero()) {
            return Err(Error::Validation("the marking line must be nonzero".into()));
        }
        let form = form.primitive_normalized();
        let ell = primitive_vec(&ell);
        let doubled = doubled_gram(&form);
        if mat_det(&doubled).is_zero() {
            return Err(Error::Validation("the conic is degenerate".into()));
        }
        let (u, v) = line_basis(&ell);
        let (qa, qb, qc) = restriction(&form, &u, &v);
        let restriction_disc = &qb * &qb - BigInt::from(4) * &qa * &qc;
        Ok(ConicWithMarks {
            form,
            ell,
            restriction_disc,
        })
    }

    pub fn mark_kind(&self) -> MarkKind {
        match self.restriction_disc.sign() {
            num_bigint::Sign::NoSign => MarkKind::Tangent,
            num_bigint::Sign::Minus => MarkKind::ComplexPair,
            num_bigint::Sign::Plus => {
                let s = self.restriction_disc.sqrt();
                if &s * &s == self.restriction_disc {
                    MarkKind::RationalPair
                } else {
                    MarkKind::RealQuadraticPair
                }
            }
        }
    }

    /// Exact membership test.
    pub fn contains(&self, point: &Vec3) -> bool {
        let coords = [
            BigRational::from_integer(point[0].clone()),
            BigRational::from_integer(point[1].clone()),
            BigRational::from_integer(point[2].clone()),
        ];
        self.form
            .eval(&coords)
            .map(|v| v.is_zero())
            .unwrap_or(false)
    }

    pub fn ell_value(&self, point: &Vec3) -> BigInt {
        &self.ell[0] * &point[0] + &self.ell[1] * &point[1] + &self.ell[2] * &point[2]
    }
}

/// An infinite-order integral stabilizer of a marked conic.
#[derive(Debug, Clone)]
pub struct OrbitGenerator {
    pub matrix: Mat3,
    /// `M^T G M = lambda_conic * G` for the (doubled) Gram matrix
    pub conic_multiplier: BigRational,
    /// `ell ∘ M = lambda_line * ell`
    pub line_multiplier: BigRational,
    /// primes introduced by denominator clearing and eigenvalue scaling
    pub bad_primes_added: PrimeSet,
}

/// Minimal positive solution of `u^2 - d v^2 = 1` via the continued-fraction
/// expansion of `sqrt(d)`.
pub fn pell_fundamental(d: &BigInt) -> Result<(BigInt, BigInt)> {
    if d < &BigInt::from(2) {
        return Err(Error::domain("pell_fundamental needs d >= 2"));
    }
    let a0 = d.sqrt();
    if &a0 * &a0 == *d {
        return Err(Error::domain("pell_fundamental needs a non-square d"));
    }
    // convergents h/k of the continued fraction of sqrt(d); the first with
    // h^2 - d k^2 = 1 is the fundamental solution
    let mut m = BigInt::zero();
    let mut den = BigInt::one();
    let mut a = a0.clone();
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        if &h * &h - d * &k * &k == BigInt::one() {
            return Ok((h, k));
        }
        m = &den * &a - &m;
        den = (d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// u64 convenience wrapper.
pub fn pell_fundamental_u64(d: u64) -> Result<(BigInt, BigInt)> {
    pell_fundamental(&BigInt::from(d))
}

// ---------------------------------------------------------------------------
// small exact linear algebra

fn primitive_vec(v: &Vec3) -> Vec3 {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return v.clone();
    }
    [&v[0] / &g, &v[1] / &g, &v[2] / &g]
}

pub(crate) fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn mat_det(m: &Mat3) -> BigInt {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out: Mat3 = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = BigInt::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += &a[i][k] * &bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat_transpose(m: &Mat3) -> Mat3 {
    let mut out: Mat3 = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i].clone();
        }
    }
    out
}

fn mat_adjugate(m: &Mat3) -> Mat3 {
    let c = |i: usize, j: usize| -> BigInt {
        let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
        let minor = &m[rows[0]][cols[0]] * &m[rows[1]][cols[1]]
            - &m[rows[0]][cols[1]] * &m[rows[1]][cols[0]];
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    let mut out: Mat3 = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = c(j, i); // adjugate = transposed cofactors
        }
    }
    out
}

pub(crate) fn mat_apply(m: &Mat3, v: &Vec3) -> Vec3 {
    [
        &m[0][0] * &v[0] + &m[0][1] * &v[1] + &m[0][2] * &v[2],
        &m[1][0] * &v[0] + &m[1][1] * &v[1] + &m[1][2] * &v[2],
        &m[2][0] * &v[0] + &m[2][1] * &v[1] + &m[2][2] * &v[2],
    ]
}

fn mat_content_normalize(m: &mut Mat3) -> BigInt {
    let mut g = BigInt::zero();
    for row in m.iter() {
        for e in row {
            g = g.gcd(e);
        }
    }
    if g.is_zero() || g.is_one() {
        return BigInt::one();
    }
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e = &*e / &g;
        }
    }
    g
}

/// Doubled Gram matrix `2G` of a ternary quadratic form (integer entries).
fn doubled_gram(form: &MultiPoly) -> Mat3 {
    let mut g: Mat3 = Default::default();
    for (e, c) in form.terms() {
        let c = c.numer().clone(); // primitive integer form
        let idx: Vec<usize> = (0..3).filter(|&i| e[i] > 0).collect();
        match idx.len() {
            1 => {
                let i = idx[0];
                g[i][i] = BigInt::from(2) * &c;
            }
            2 => {
                let (i, j) = (idx[0], idx[1]);
                g[i][j] = c.clone();
                g[j][i] = c;
            }
            _ => unreachable!("quadratic form terms touch at most two variables"),
        }
    }
    g
}

/// Two independent integer points spanning the line `ell . x = 0`.
fn line_basis(ell: &Vec3) -> (Vec3, Vec3) {
    let zero = BigInt::zero();
    if !ell[2].is_zero() {
        (
            [ell[2].clone(), zero.clone(), -ell[0].clone()],
            [zero.clone(), ell[2].clone(), -ell[1].clone()],
        )
    } else if !ell[1].is_zero() {
        (
            [ell[1].clone(), -ell[0].clone(), zero.clone()],
            [zero.clone(), zero.clone(), BigInt::one()],
        )
    } else {
        (
            [zero.clone(), BigInt::one(), zero.clone()],
            [zero.clone(), zero, BigInt::one()],
        )
    }
}

/// Coefficients (a, b, c) of the binary form `F(s U + t V) = a s^2 + b st + c t^2`.
fn restriction(form: &MultiPoly, u: &Vec3, v: &Vec3) -> (BigInt, BigInt, BigInt) {
    let eval_int = |p: &Vec3| -> BigInt {
        let coords = [
            BigRational::from_integer(p[0].clone()),
            BigRational::from_integer(p[1].clone()),
            BigRational::from_integer(p[2].clone()),
        ];
        let val = form.eval(&coords).expect("arity 3");
        assert!(val.denom().is_one());
        val.numer().clone()
    };
    let a = eval_int(u);
    let c = eval_int(v);
    let sum = [&u[0] + &v[0], &u[1] + &v[1], &u[2] + &v[2]];
    let b = eval_int(&sum) - &a - &c;
    (a, b, c)
}

// ---------------------------------------------------------------------------
// stabilizers

/// Builds an infinite-order integer stabilizer of the conic fixing the marked
/// pair, conjugating either a binary-form automorph (real quadratic marks) or
/// a split-torus action (rational marks) back through the pole triangle.
///
/// Unsupported configurations (tangent line, complex marks) are errors.
pub fn stabilizer_map(conic: &ConicWithMarks, _s: &PrimeSet) -> Result<OrbitGenerator> {
    let (u, v) = line_basis(&conic.ell);
    let (qa, qb, qc) = restriction(&conic.form, &u, &v);
    let disc = &conic.restriction_disc;
    let gram = doubled_gram(&conic.form);

    // pole of the marking line: T = adj(2G) * ell
    let pole = primitive_vec(&mat_apply(&mat_adjugate(&gram), &conic.ell));

    let two_by_two: [[BigInt; 2]; 2];
    let basis: (Vec3, Vec3);
    match conic.mark_kind() {
        MarkKind::Tangent => {
            return Err(Error::Unsupported(
                "the marking line is tangent: no infinite-order stabilizer of a double mark".into(),
            ))
        }
        MarkKind::ComplexPair => {
            return Err(Error::Unsupported(
                "the marked pair is complex conjugate: the stabilizer over Q is finite".into(),
            ))
        }
        MarkKind::RealQuadraticPair => {
            // automorph of the binary form a s^2 + b st + c t^2 from the
            // fundamental solution of x^2 - disc y^2 = 1
            let (x0, y0) = pell_fundamental(disc)?;
            two_by_two = [
                [&x0 - &qb * &y0, BigInt::from(-2) * &qc * &y0],
                [BigInt::from(2) * &qa * &y0, &x0 + &qb * &y0],
            ];
            basis = (u, v);
        }
        MarkKind::RationalPair => {
            // the marks themselves are rational; use them as eigenvectors of
            // a squared torus weight (m^2, 1) with geometric mean m
            let sqrt_disc = disc.sqrt();
            let (mark_a, mark_b) = if qa.is_zero() {
                let a_pt = u.clone();
                let b_pt = [
                    -&qc * &u[0] + &qb * &v[0],
                    -&qc * &u[1] + &qb * &v[1],
                    -&qc * &u[2] + &qb * &v[2],
                ];
                (a_pt, b_pt)
            } else {
                let r1 = -&qb + &sqrt_disc;
                let r2 = -&qb - &sqrt_disc;
                let two_a = BigInt::from(2) * &qa;
                let mk = |r: &BigInt| -> Vec3 {
                    [
                        r * &u[0] + &two_a * &v[0],
                        r * &u[1] + &two_a * &v[1],
                        r * &u[2] + &two_a * &v[2],
                    ]
                };
                (mk(&r1), mk(&r2))
            };
            let m = BigInt::from(2);
            two_by_two = [[&m * &m, BigInt::zero()], [BigInt::zero(), BigInt::one()]];
            basis = (primitive_vec(&mark_a), primitive_vec(&mark_b));
        }
    }

    // conjugate diag(two_by_two, mid) back: M = P * B * adj(P), where for the
    // quadratic case the block is the automorph and the third eigenvalue is 1;
    // for the split case the block is diag(m^2, 1) and the pole scales by m
    let mid = match conic.mark_kind() {
        MarkKind::RealQuadraticPair => BigInt::one(),
        MarkKind::RationalPair => BigInt::from(2),
        _ => unreachable!(),
    };
    let p_mat: Mat3 = [
        [basis.0[0].clone(), basis.1[0].clone(), pole[0].clone()],
        [basis.0[1].clone(), basis.1[1].clone(), pole[1].clone()],
        [basis.0[2].clone(), basis.1[2].clone(), pole[2].clone()],
    ];
    if mat_det(&p_mat).is_zero() {
        return Err(Error::Unsupported("marks and pole are degenerate".into()));
    }
    let block: Mat3 = [
        [
            two_by_two[0][0].clone(),
            two_by_two[0][1].clone(),
            BigInt::zero(),
        ],
        [
            two_by_two[1][0].clone(),
            two_by_two[1][1].clone(),
            BigInt::zero(),
        ],
        [BigInt::zero(), BigInt::zero(), mid],
    ];
    let mut m = mat_mul(&mat_mul(&p_mat, &block), &mat_adjugate(&p_mat));
    mat_content_normalize(&mut m);
    // the conjugation is defined up to sign; fix it by the trace (automorphs
    // and torus blocks both have positive trace)
    let trace = &m[0][0] + &m[1][1] + &m[2][2];
    if trace.is_negative() {
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = -(e.clone());
            }
        }
    }

    // exact invariance: M^T (2G) M = lambda (2G)
    let lhs = mat_mul(&mat_mul(&mat_transpose(&m), &gram), &m);
    let lambda = find_multiplier_mat(&lhs, &gram)
        .ok_or_else(|| Error::Unsupported("stabilizer does not preserve the conic".into()))?;
    // ell ∘ M = lambda_line * ell
    let ell_m = [
        &conic.ell[0] * &m[0][0] + &conic.ell[1] * &m[1][0] + &conic.ell[2] * &m[2][0],
        &conic.ell[0] * &m[0][1] + &conic.ell[1] * &m[1][1] + &conic.ell[2] * &m[2][1],
        &conic.ell[0] * &m[0][2] + &conic.ell[1] * &m[1][2] + &conic.ell[2] * &m[2][2],
    ];
    let lambda_line = find_multiplier_vec(&ell_m, &conic.ell)
        .ok_or_else(|| Error::Unsupported("stabilizer does not fix the marked pair".into()))?;

    let mut primes = Vec::new();
    for value in [&lambda, &lambda_line] {
        for part in [value.numer(), value.denom()] {
            for (p, _) in factorize(part) {
                primes.push(
                    u64::try_from(&p).map_err(|_| Error::domain("eigenvalue prime too large"))?,
                );
            }
        }
    }
    Ok(OrbitGenerator {
        matrix: m,
        conic_multiplier: lambda,
        line_multiplier: lambda_line,
        bad_primes_added: PrimeSet::new(primes)?,
    })
}

fn find_multiplier_mat(lhs: &Mat3, rhs: &Mat3) -> Option<BigRational> {
    let mut lambda: Option<BigRational> = None;
    for i in 0..3 {
        for j in 0..3 {
            match (lhs[i][j].is_zero(), rhs[i][j].is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let q = BigRational::new(lhs[i][j].clone(), rhs[i][j].clone());
                    match &lambda {
                        None => lambda = Some(q),
                        Some(l) if *l == q => {}
                        _ => return None,
                    }
                }
                _ => return None,
            }
        }
    }
    lambda
}

fn find_multiplier_vec(lhs: &Vec3, rhs: &Vec3) -> Option<BigRational> {
    let mut lambda: Option<BigRational> = None;
    for i in 0..3 {
        match (lhs[i].is_zero(), rhs[i].is_zero()) {
            (true, true) => {}
            (false, false) => {
                let q = BigRational::new(lhs[i].clone(), rhs[i].clone());
                match &lambda {
                    None => lambda = Some(q),
                    Some(l) if *l == q => {}
                    _ => return None,
                }
            }
            _ => return None,
        }
    }
    lambda
}

// ---------------------------------------------------------------------------
// orbit generation

/// Mark-integrality: the S-free part of the marking line's value is 1, so the
/// reduction never meets the marked divisor outside S (valid away from the
/// primes of bad reduction, which must be in S).
pub fn integral_wrt_marks(
    point: &[SRational; 3],
    conic: &ConicWithMarks,
    s: &PrimeSet,
) -> Result<bool> {
    let norm = normalize_projective(point)?;
    if !conic.contains(&norm) {
        return Err(Error::domain("the point does not lie on the conic"));
    }
    let val = conic.ell_value(&norm);
    if val.is_zero() {
        return Err(Error::domain("the point lies on the marked divisor"));
    }
    Ok(sring::s_free_part(&BigRational::from_integer(val), s)?.is_one())
}

fn height(p: &Vec3) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap()
}

/// Generates `count` distinct orbit points `M^k seed` (normalized, seed not
/// included), verifying each lies on the conic, stays integral with respect
/// to the marks under `S ∪ bad_primes_added`, and has strictly increasing
/// height.
pub fn generate_orbit(
    conic: &ConicWithMarks,
    generator: &OrbitGenerator,
    seed: &Vec3,
    count: usize,
    s: &PrimeSet,
) -> Result<Vec<Vec3>> {
    let s_work = s.union(&generator.bad_primes_added);
    let seed = primitive_vec(seed);
    let seed_rat = [
        BigRational::from_integer(seed[0].clone()),
        BigRational::from_integer(seed[1].clone()),
        BigRational::from_integer(seed[2].clone()),
    ];
    if !integral_wrt_marks(&seed_rat, conic, &s_work)? {
        return Err(Error::domain(
            "seed is not integral with respect to the marks",
        ));
    }
    if count == 0 {
        return Ok(vec![]);
    }
    // pick the expanding direction by a two-step lookahead (heights can
    // shuffle near the height minimum of the orbit)
    let two_step_height = |m: &Mat3| -> BigInt {
        let one = primitive_vec(&mat_apply(m, &seed));
        height(&primitive_vec(&mat_apply(m, &one)))
    };
    let adj = mat_adjugate(&generator.matrix);
    let matrix = if two_step_height(&generator.matrix) >= two_step_height(&adj) {
        generator.matrix.clone()
    } else {
        adj
    };
    // normalized heights grow geometrically along the orbit but the integer
    // content of the iterates can oscillate with the parity of k; walk with
    // stride M, M^2, M^4, ... until a strictly increasing run of length
    // `count` appears (the emitted points are still iterates M^k seed)
    let mut step = matrix;
    for _ in 0..4 {
        if let Some(points) = emit_increasing_run(conic, &step, &seed, count, &s_work)? {
            return Ok(points);
        }
        step = mat_mul(&step, &step.clone());
        let mut squared = step;
        mat_content_normalize(&mut squared);
        step = squared;
    }
    Err(Error::domain("orbit heights failed to increase strictly"))
}

/// Walks `step`-iterates of the seed and returns the first strictly
/// increasing run of `count` points, allowing a bounded dip prefix;
/// `Ok(None)` means the heights kept dipping for this stride.
fn emit_increasing_run(
    conic: &ConicWithMarks,
    step: &Mat3,
    seed: &Vec3,
    count: usize,
    s_work: &PrimeSet,
) -> Result<Option<Vec<Vec3>>> {
    const MAX_DIP_PREFIX: usize = 16;
    let mut out = Vec::with_capacity(count);
    let mut current = seed.clone();
    let mut last_height: Option<BigInt> = None;
    let mut skips = 0usize;
    while out.len() < count {
        current = primitive_vec(&mat_apply(step, &current));
        sign_normalize(&mut current);
        let h = height(&current);
        if let Some(prev) = &last_height {
            if h <= *prev {
                if skips >= MAX_DIP_PREFIX {
                    return Ok(None);
                }
                skips += 1;
                out.clear();
                last_height = Some(h);
                continue;
            }
        }
        last_height = Some(h);
        if !conic.contains(&current) {
            return Err(Error::domain("orbit left the conic"));
        }
        let rat = [
            BigRational::from_integer(current[0].clone()),
            BigRational::from_integer(current[1].clone()),
            BigRational::from_integer(current[2].clone()),
        ];
        if !integral_wrt_marks(&rat, conic, s_work)? {
            return Err(Error::domain("orbit point lost mark-integrality"));
        }
        out.push(current.clone());
    }
    Ok(Some(out))
}

fn sign_normalize(v: &mut Vec3) {
    if let Some(first) = v.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in v.iter_mut() {
                *c = -(c.clone());
            }
        }
    }
}
