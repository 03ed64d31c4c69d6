//! The five-line density generator: a pencil of conics through four of the
//! five intersection nodes, split-torus orbits on each good member, and exact
//! valuation certificates for every emitted point against all five lines.
//!
//! With lines `L1..L5` and nodes `P_i = L_i ∩ L_{i+1}` (cyclic), the pencil
//! runs through `P1, P2, P3, P4`; the omitted node is `P5 = L5 ∩ L1`.  Each
//! smooth member meets `L5` in `P4` plus one moving point and `L1` in `P1`
//! plus one moving point — those two rational points are the marked divisor.
//! The seed `P2` lies on every member and off the marks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::conic::{cross, generate_orbit, stabilizer_map, ConicWithMarks, Vec3};
use crate::error::Error;
use crate::polysys::{bad_primes_ngon, poly::factorize, MultiPoly, NGonProblem};
use crate::sring::{self, PrimeSet};
use crate::Result;

/// One processed pencil member.
#[derive(Debug, Clone)]
pub struct PencilMember {
    /// pencil parameter of the member conic
    pub parameter: i64,
    /// primitive integer form of the member
    pub conic: MultiPoly,
    /// marked points (second intersections with L5 and L1)
    pub marks: (Vec3, Vec3),
    /// full working prime set used for this member's certificates
    pub working_primes: PrimeSet,
    /// the seed node (a base point of the pencil; its lift to the blow-up is
    /// integral by transversality at the node, so no plane-level certificate
    /// applies to it)
    pub seed: Vec3,
    /// generated orbit points, each passing the valuation certificate
    pub points: Vec<Vec3>,
}

#[derive(Debug, Clone)]
pub struct PencilReport {
    pub members: Vec<PencilMember>,
    pub skipped: Vec<(i64, String)>,
    /// primes of bad reduction of the line configuration itself
    pub config_primes: PrimeSet,
}

impl PencilReport {
    /// Number of certified (orbit) points across all members.
    pub fn total_points(&self) -> usize {
        self.members.iter().map(|m| m.points.len()).sum()
    }
}

fn line_coeffs(line: &MultiPoly) -> Result<Vec3> {
    if line.arity() != 3 || line.degree() != Some(1) || !line.is_homogeneous() {
        return Err(Error::Validation(
            "expected linear forms in three variables".into(),
        ));
    }
    let p = line.primitive_normalized();
    let mut out = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (e, c) in p.terms() {
        for (i, &k) in e.iter().enumerate() {
            if k == 1 {
                out[i] = c.numer().clone();
            }
        }
    }
    Ok(out)
}

fn eval_line(l: &Vec3, p: &Vec3) -> BigInt {
    &l[0] * &p[0] + &l[1] * &p[1] + &l[2] * &p[2]
}

fn primitive(v: &Vec3) -> Vec3 {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return v.clone();
    }
    [&v[0] / &g, &v[1] / &g, &v[2] / &g]
}

/// Primes where two distinct projective points collide after reduction: the
/// prime factors of the content of their cross product.
fn collision_primes(a: &Vec3, b: &Vec3) -> Result<Vec<BigInt>> {
    let c = cross(a, b);
    let mut content = BigInt::zero();
    for e in &c {
        content = content.gcd(e);
    }
    if content.is_zero() {
        return Err(Error::domain("collision primes of equal points"));
    }
    Ok(factorize(&content).into_iter().map(|(p, _)| p).collect())
}

/// Product of two linear forms as a quadratic form.
fn line_product(a: &Vec3, b: &Vec3) -> MultiPoly {
    let la = MultiPoly::from_terms(
        3,
        (0..3).map(|i| {
            let mut e = vec![0u32; 3];
            e[i] = 1;
            (e, BigRational::from_integer(a[i].clone()))
        }),
    );
    let lb = MultiPoly::from_terms(
        3,
        (0..3).map(|i| {
            let mut e = vec![0u32; 3];
            e[i] = 1;
            (e, BigRational::from_integer(b[i].clone()))
        }),
    );
    la.mul(&lb)
}

fn eval_form(form: &MultiPoly, p: &Vec3) -> BigInt {
    let coords = [
        BigRational::from_integer(p[0].clone()),
        BigRational::from_integer(p[1].clone()),
        BigRational::from_integer(p[2].clone()),
    ];
    let v = form.eval(&coords).expect("arity 3");
    debug_assert!(v.denom().is_one());
    v.numer().clone()
}

/// Second intersection of a member conic with the line through `base` and
/// `other` (both on the line, `base` on the conic).  `None` when the conic is
/// tangent there (second point equals `base`) or contains the whole line.
fn second_intersection(form: &MultiPoly, base: &Vec3, other: &Vec3) -> Option<Vec3> {
    let c_other = eval_form(form, other);
    let sum = [
        &base[0] + &other[0],
        &base[1] + &other[1],
        &base[2] + &other[2],
    ];
    let beta = eval_form(form, &sum) - eval_form(form, base) - &c_other;
    // C(s base + t other) = t (beta s + c_other t); second root at
    // (s : t) = (-c_other : beta)
    if beta.is_zero() {
        return None; // tangent at base, or the line is a component
    }
    let pt = [
        -&c_other * &base[0] + &beta * &other[0],
        -&c_other * &base[1] + &beta * &other[1],
        -&c_other * &base[2] + &beta * &other[2],
    ];
    let pt = primitive(&pt);
    if pt.iter().all(|c| c.is_zero()) {
        return None;
    }
    Some(pt)
}

/// Exact integrality certificate for one plane point against all five strict
/// transforms on the blow-up at the five nodes, by the valuation criterion:
/// for every prime outside the working set dividing some line value, the
/// support of that prime among the five values must be one adjacent pair
/// (a blown-up node) with equal valuations on both lines through it.
pub fn valuation_certificate(lines: &[Vec3; 5], point: &Vec3, working: &PrimeSet) -> Result<bool> {
    let point = primitive(point);
    let values: Vec<BigInt> = lines.iter().map(|l| eval_line(l, &point)).collect();
    if values.iter().any(|v| v.is_zero()) {
        return Ok(false); // the point lies on a line
    }
    // primes outside the working set touching any value
    let mut primes: Vec<BigInt> = Vec::new();
    for v in &values {
        let free = sring::s_free_part(&BigRational::from_integer(v.clone()), working)?;
        for (p, _) in factorize(&free) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    for p in primes {
        let vals: Vec<i64> = values
            .iter()
            .map(|v| {
                let mut n = v.abs();
                let mut k = 0i64;
                while (&n % &p).is_zero() {
                    n /= &p;
                    k += 1;
                }
                k
            })
            .collect();
        let support: Vec<usize> = (0..5).filter(|&i| vals[i] > 0).collect();
        match support.len() {
            0 => unreachable!("prime was drawn from the values"),
            2 => {
                let (i, j) = (support[0], support[1]);
                let adjacent = (j + 5 - i) % 5 == 1 || (i + 5 - j) % 5 == 1;
                if !adjacent || vals[i] != vals[j] {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Runs the five-line pencil generator: enumerates members `M1 + t M2` of the
/// pencil through the four base nodes, builds the marked-conic orbit on each
/// good member seeded at `P2`, and emits only points passing the valuation
/// certificate.  Degenerate or tangent members are skipped with a reason;
/// member-specific primes of bad reduction join that member's working set.
pub fn pencil_points(
    lines: &[MultiPoly; 5],
    s: &PrimeSet,
    member_count: usize,
    points_per_member: usize,
) -> Result<PencilReport> {
    let coeffs: Vec<Vec3> = lines.iter().map(line_coeffs).collect::<Result<Vec<_>>>()?;
    let coeffs: [Vec3; 5] = coeffs.try_into().expect("five lines");

    // configuration validity and bad primes via the cyclic-forms machinery
    let ngon = NGonProblem::new(lines.to_vec(), s.clone())
        .map_err(|e| Error::Validation(format!("five-line configuration invalid: {e}")))?;
    let config_primes = bad_primes_ngon(&ngon)?;

    // nodes P_i = L_i ∩ L_{i+1}; base nodes P1..P4, omitted node P5
    let nodes: Vec<Vec3> = (0..5)
        .map(|i| primitive(&cross(&coeffs[i], &coeffs[(i + 1) % 5])))
        .collect();
    let (p1, p2, p3, p4, p5) = (&nodes[0], &nodes[1], &nodes[2], &nodes[3], &nodes[4]);

    // pencil basis: both members pass through all four base nodes
    let m1 = line_product(&coeffs[1], &coeffs[3]); // L2 * L4
    let m14 = primitive(&cross(p1, p4));
    let m2 = line_product(&coeffs[2], &m14); // L3 * line(P1, P4)

    let mut report = PencilReport {
        members: Vec::new(),
        skipped: Vec::new(),
        config_primes: config_primes.clone(),
    };

    let max_attempts = (60 * member_count.max(1)) as i64;
    let mut t = 0i64;
    while report.members.len() < member_count && t < max_attempts {
        t += 1;
        match build_member(
            t,
            &m1,
            &m2,
            &coeffs,
            p1,
            p2,
            p3,
            p4,
            p5,
            s,
            &config_primes,
            points_per_member,
        ) {
            Ok(member) => report.members.push(member),
            Err(e) => report.skipped.push((t, e.to_string())),
        }
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn build_member(
    t: i64,
    m1: &MultiPoly,
    m2: &MultiPoly,
    lines: &[Vec3; 5],
    p1: &Vec3,
    p2: &Vec3,
    p3: &Vec3,
    p4: &Vec3,
    p5: &Vec3,
    s: &PrimeSet,
    config_primes: &PrimeSet,
    points_per_member: usize,
) -> Result<PencilMember> {
    let form = m1
        .add(&m2.scale(&BigRational::from_integer(BigInt::from(t))))
        .primitive_normalized();

    // marks: second intersections with L5 (through P4) and L1 (through P1)
    let w5 = other_point_on_line(&lines[4], p4);
    let mark_a = second_intersection(&form, p4, &w5)
        .ok_or_else(|| Error::Unsupported("member tangent to L5 at the base node".into()))?;
    let w1 = other_point_on_line(&lines[0], p1);
    let mark_b = second_intersection(&form, p1, &w1)
        .ok_or_else(|| Error::Unsupported("member tangent to L1 at the base node".into()))?;
    if mark_a == mark_b {
        return Err(Error::Unsupported(
            "marks coincide (member through the omitted node)".into(),
        ));
    }
    for (mark, name) in [(&mark_a, "A"), (&mark_b, "B")] {
        for (node, node_name) in [(p1, "P1"), (p2, "P2"), (p3, "P3"), (p4, "P4"), (p5, "P5")] {
            if mark == node {
                return Err(Error::Unsupported(format!(
                    "mark {name} hits node {node_name}"
                )));
            }
        }
    }

    let ell = primitive(&cross(&mark_a, &mark_b));
    let conic = ConicWithMarks::new(form.clone(), ell)?;

    // working prime set: problem S, configuration primes, member parameter,
    // conic degeneracy, and pairwise collisions of the special points
    let mut extra: Vec<BigInt> = Vec::new();
    for (p, _) in factorize(&BigInt::from(t)) {
        extra.push(p);
    }
    let special = [p1, p2, p3, p4, p5, &mark_a, &mark_b];
    for i in 0..special.len() {
        for j in i + 1..special.len() {
            extra.extend(collision_primes(special[i], special[j])?);
        }
    }
    if !conic.restriction_disc.is_zero() {
        for (p, _) in factorize(&conic.restriction_disc) {
            extra.push(p);
        }
    }
    let gen = stabilizer_map(&conic, s)?;
    let working = s
        .union(config_primes)
        .union(&PrimeSet::from_bigints(extra)?)
        .union(&gen.bad_primes_added);

    // seed at the base node P2 (never on L1, L4, L5 by general position)
    let seed = p2.clone();
    let seed_rat = [
        BigRational::from_integer(seed[0].clone()),
        BigRational::from_integer(seed[1].clone()),
        BigRational::from_integer(seed[2].clone()),
    ];
    if !super::conic::integral_wrt_marks(&seed_rat, &conic, &working)? {
        return Err(Error::Unsupported(
            "seed is not integral with respect to the marks".into(),
        ));
    }

    let points = generate_orbit(&conic, &gen, &seed, points_per_member, &working)?;

    // certification of every generated point against the five strict
    // transforms (the seed itself is a node; its blow-up lift is integral by
    // transversality, but the plane-level certificate only makes sense off
    // the lines)
    for pt in &points {
        if !valuation_certificate(lines, pt, &working)? {
            return Err(Error::Unsupported(format!(
                "point ({} : {} : {}) failed the valuation certificate",
                pt[0], pt[1], pt[2]
            )));
        }
    }

    Ok(PencilMember {
        parameter: t,
        conic: form,
        marks: (mark_a, mark_b),
        working_primes: working,
        seed,
        points,
    })
}

/// Any integer point on the line distinct from `base`.
fn other_point_on_line(line: &Vec3, base: &Vec3) -> Vec3 {
    let zero = BigInt::zero();
    let candidates = [
        [line[2].clone(), zero.clone(), -line[0].clone()],
        [zero.clone(), line[2].clone(), -line[1].clone()],
        [line[1].clone(), -line[0].clone(), zero.clone()],
    ];
    for c in candidates {
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        let c = primitive(&c);
        if &c != base && !cross(&c, base).iter().all(|x| x.is_zero()) {
            return c;
        }
    }
    unreachable!("a projective line contains at least two points")
}

/// Convenience: checks a point against the conic it is supposed to lie on.
pub fn on_conic(member: &PencilMember, point: &Vec3) -> bool {
    eval_form(&member.conic, point).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(c: [i64; 3]) -> MultiPoly {
        MultiPoly::from_int_terms(
            3,
            [
                (vec![1, 0, 0], c[0]),
                (vec![0, 1, 0], c[1]),
                (vec![0, 0, 1], c[2]),
            ],
        )
    }

    /// A validated quintuple: every triple determinant is nonzero (they take
    /// the values ±1, ±2, ±3, 4), so the configuration primes are {2, 3}.
    pub(crate) fn five_lines() -> [MultiPoly; 5] {
        [
            lin([1, 0, 0]), // x
            lin([0, 1, 0]), // y
            lin([0, 0, 1]), // z
            lin([1, 1, 1]), // x + y + z
            lin([1, 2, 4]), // x + 2y + 4z
        ]
    }

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn configuration_is_valid() {
        let lines = five_lines();
        let ngon = NGonProblem::new(lines.to_vec(), PrimeSet::empty());
        assert!(
            ngon.is_ok(),
            "the default quintuple must be in general position"
        );
        let primes = bad_primes_ngon(&ngon.unwrap()).unwrap();
        assert_eq!(primes, PrimeSet::new([2, 3]).unwrap());
    }

    #[test]
    fn certificate_examples() {
        let lines = five_lines();
        let coeffs: Vec<Vec3> = lines.iter().map(|l| line_coeffs(l).unwrap()).collect();
        let coeffs: [Vec3; 5] = coeffs.try_into().unwrap();
        let s = PrimeSet::empty();
        // on a line: fails
        let bad = [bi(0), bi(1), bi(1)];
        assert!(!valuation_certificate(&coeffs, &bad, &s).unwrap());
        // all five values ±1 at (1 : 1 : -1): passes vacuously
        let unit = [bi(1), bi(1), bi(-1)];
        assert!(valuation_certificate(&coeffs, &unit, &s).unwrap());
        // (11 : -11 : 3): values 11, -11, 3, 3, 1 — the prime 11 sits on the
        // adjacent pair (L1, L2) and 3 on the adjacent pair (L3, L4), with
        // equal valuations: passes
        let two_nodes = [bi(11), bi(-11), bi(3)];
        assert!(valuation_certificate(&coeffs, &two_nodes, &s).unwrap());
        // (5 : -3 : 1): values 5, -3, 1, 3, 3 — the prime 3 touches three
        // lines: fails
        let three = [bi(5), bi(-3), bi(1)];
        assert!(!valuation_certificate(&coeffs, &three, &s).unwrap());
        // (5 : 1 : 5): values 5, 1, 5, 11, 27 — the prime 5 sits on the
        // non-adjacent pair (L1, L3): fails
        let nonadj = [bi(5), bi(1), bi(5)];
        assert!(!valuation_certificate(&coeffs, &nonadj, &s).unwrap());
    }

    #[test]
    fn pencil_generates_certified_members() {
        let lines = five_lines();
        let s = PrimeSet::empty();
        let report = pencil_points(&lines, &s, 3, 2).unwrap();
        assert_eq!(report.members.len(), 3, "skipped: {:?}", report.skipped);
        let coeffs: [Vec3; 5] = lines
            .iter()
            .map(|l| line_coeffs(l).unwrap())
            .collect::<Vec<_>>()
            .try_into()
            .unwrap();
        for m in &report.members {
            assert!(on_conic(m, &m.seed));
            assert_eq!(m.points.len(), 2);
            for pt in &m.points {
                assert!(on_conic(m, pt));
                assert!(valuation_certificate(&coeffs, pt, &m.working_primes).unwrap());
            }
        }
    }

    #[test]
    fn members_are_distinct_conics() {
        let lines = five_lines();
        let report = pencil_points(&lines, &PrimeSet::empty(), 4, 0).unwrap();
        assert_eq!(report.members.len(), 4, "skipped: {:?}", report.skipped);
        for i in 0..report.members.len() {
            for j in i + 1..report.members.len() {
                assert_ne!(report.members[i].conic, report.members[j].conic);
            }
        }
        // seeds only when points_per_member = 0
        for m in &report.members {
            assert!(m.points.is_empty());
        }
    }

    #[test]
    fn seed_is_the_shared_node() {
        let lines = five_lines();
        let report = pencil_points(&lines, &PrimeSet::empty(), 2, 1).unwrap();
        assert!(report.members.len() >= 2, "skipped: {:?}", report.skipped);
        assert_eq!(report.members[0].seed, report.members[1].seed);
    }
}
