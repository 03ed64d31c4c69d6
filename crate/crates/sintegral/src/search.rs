//! Height-bounded exhaustive enumeration of S-integer points, predicate
//! filtering with per-point witnesses, and independent re-verification.
//!
//! Runs are deterministic: the enumeration order is a pure function of the
//! domain, workers process disjoint chunks of the leading coordinate, and the
//! merged output preserves enumeration order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::polysys::{
    bad_primes_div, bad_primes_forms, bad_primes_ngon, beta_decompose, holds_div, holds_forms,
    holds_ngon, holds_ngon_ideal, holds_sunit, normalize_projective, DivisibilityProblem,
    FormsProblem, NGonProblem, ParametricUnitProblem,
};
use crate::sring::{self, PrimeSet, SRational};
use crate::Result;

/// Enumeration region: numerators bounded by `height`, S-smooth denominators
/// bounded by `denom_bound`; `unit_exp_bound` bounds the exponents of the
/// S-unit grid used for unit coordinates of parametric problems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchDomain {
    pub height: u64,
    pub denom_bound: u64,
    pub mode: SearchMode,
    #[serde(default = "default_unit_exp")]
    pub unit_exp_bound: u32,
}

fn default_unit_exp() -> u32 {
    6
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Affine2,
    Affine3,
    Projective,
}

impl SearchDomain {
    pub fn affine2(height: u64, denom_bound: u64) -> Self {
        SearchDomain {
            height,
            denom_bound,
            mode: SearchMode::Affine2,
            unit_exp_bound: 6,
        }
    }

    pub fn projective(height: u64) -> Self {
        SearchDomain {
            height,
            denom_bound: 1,
            mode: SearchMode::Projective,
            unit_exp_bound: 6,
        }
    }
}

/// All S-integral values `a/s` with `|a| <= height`, `s` an S-smooth
/// denominator `<= bound`, in ascending numeric order.
pub fn coordinate_values(s: &PrimeSet, height: u64, bound: u64) -> Vec<SRational> {
    let mut out = Vec::new();
    for den in sring::enumerate_smooth(s, bound.max(1)) {
        let d = BigInt::from(den);
        for num in -(height as i64)..=height as i64 {
            let n = BigInt::from(num);
            if num_integer::Integer::gcd(&n, &d).is_one() {
                out.push(BigRational::new(n, d.clone()));
            }
        }
    }
    out.sort();
    out
}

/// Deterministic stream of affine pairs over the coordinate values.
pub fn enumerate_affine(s: &PrimeSet, domain: &SearchDomain) -> Vec<(SRational, SRational)> {
    let values = coordinate_values(s, domain.height, domain.denom_bound);
    let mut out = Vec::with_capacity(values.len() * values.len());
    for x in &values {
        for y in &values {
            out.push((x.clone(), y.clone()));
        }
    }
    out
}

/// Deterministic stream of coprime integer triples with entries bounded by
/// `height`, first nonzero coordinate positive, in lexicographic order.
pub fn enumerate_projective(height: u64) -> Vec<[BigInt; 3]> {
    let h = height as i64;
    let mut out = Vec::new();
    for x in -h..=h {
        for y in -h..=h {
            for z in -h..=h {
                if x == 0 && y == 0 && z == 0 {
                    continue;
                }
                let first = [x, y, z].into_iter().find(|&c| c != 0).unwrap();
                if first < 0 {
                    continue;
                }
                let g = gcd3(x.unsigned_abs(), y.unsigned_abs(), z.unsigned_abs());
                if g != 1 {
                    continue;
                }
                out.push([BigInt::from(x), BigInt::from(y), BigInt::from(z)]);
            }
        }
    }
    out
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    gcd(gcd(a, b), c)
}

/// The signed S-unit grid `{± p1^a1 ... pk^ak : |ai| <= bound}` in ascending
/// order.
pub fn unit_grid(s: &PrimeSet, bound: u32) -> Vec<SRational> {
    let mut mags = vec![BigRational::one()];
    for p in s.iter() {
        let p = BigRational::from_integer(p.clone());
        let mut next = Vec::with_capacity(mags.len() * (2 * bound as usize + 1));
        for m in &mags {
            let mut up = m.clone();
            let mut down = m.clone();
            next.push(m.clone());
            for _ in 0..bound {
                up = up.clone() * &p;
                down = down.clone() / &p;
                next.push(up.clone());
                next.push(down.clone());
            }
        }
        mags = next;
    }
    let mut out = Vec::with_capacity(mags.len() * 2);
    for m in mags {
        out.push(-m.clone());
        out.push(m);
    }
    out.sort();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// problems, witnesses, solution sets

/// Any of the searchable problem types.
#[derive(Debug, Clone)]
pub enum Problem {
    Divisibility(DivisibilityProblem),
    Forms(FormsProblem),
    NGon(NGonProblem),
    ParametricUnit(ParametricUnitProblem),
}

impl Problem {
    pub fn prime_set(&self) -> &PrimeSet {
        match self {
            Problem::Divisibility(p) => &p.s,
            Problem::Forms(p) => &p.s,
            Problem::NGon(p) => &p.s,
            Problem::ParametricUnit(p) => &p.s,
        }
    }

    /// General-position validation plus S-sufficiency where reduction
    /// matters (the cyclic-forms predicate needs its bad primes inside S).
    pub fn validate(&self) -> Result<()> {
        match self {
            Problem::Divisibility(p) => {
                bad_primes_div(p)?;
                Ok(())
            }
            Problem::Forms(p) => {
                bad_primes_forms(p)?;
                Ok(())
            }
            Problem::NGon(p) => {
                let bad = bad_primes_ngon(p)?;
                if !bad.is_subset(&p.s) {
                    return Err(Error::Validation(format!(
                        "enlarge S to contain the bad primes {bad}"
                    )));
                }
                Ok(())
            }
            Problem::ParametricUnit(_) => Ok(()),
        }
    }
}

/// A rational point in one of the supported shapes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    Affine2(SRational, SRational),
    Projective([BigInt; 3]),
    UnitSolution(SRational, SRational, SRational),
}

/// Everything needed to re-verify a record without re-running the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Divisibility {
        /// the pair values (f_i(P), g_i(P))
        values: Vec<(SRational, SRational)>,
    },
    Forms {
        form_values: Vec<SRational>,
        g_value: SRational,
    },
    NGon {
        values: Vec<SRational>,
        beta: Vec<BigInt>,
        alpha: Vec<SRational>,
    },
    ParametricUnit {
        f_t: SRational,
        g_t: SRational,
        h_t: SRational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub point: Point,
    pub witness: Witness,
}

/// A witnessed, deduplicated, deterministic solution set.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub problem_fingerprint: String,
    pub domain: SearchDomain,
    pub override_used: bool,
    pub records: Vec<SolutionRecord>,
}

fn witness_for(problem: &Problem, point: &Point) -> Result<Option<Witness>> {
    match (problem, point) {
        (Problem::Divisibility(p), Point::Affine2(x, y)) => {
            if !holds_div(p, &(x.clone(), y.clone()))? {
                return Ok(None);
            }
            let coords = [x.clone(), y.clone()];
            let mut values = Vec::with_capacity(p.pairs.len());
            for (f, g) in &p.pairs {
                values.push((f.eval(&coords)?, g.eval(&coords)?));
            }
            Ok(Some(Witness::Divisibility { values }))
        }
        (Problem::Forms(p), Point::Projective(t)) => {
            let coords = [
                BigRational::from_integer(t[0].clone()),
                BigRational::from_integer(t[1].clone()),
                BigRational::from_integer(t[2].clone()),
            ];
            if !holds_forms(p, &coords)? {
                return Ok(None);
            }
            let form_values = p
                .forms
                .iter()
                .map(|f| f.eval(&coords))
                .collect::<Result<Vec<_>>>()?;
            let g_value = p.g.eval(&coords)?;
            Ok(Some(Witness::Forms {
                form_values,
                g_value,
            }))
        }
        (Problem::NGon(p), Point::Projective(t)) => {
            let coords = [
                BigRational::from_integer(t[0].clone()),
                BigRational::from_integer(t[1].clone()),
                BigRational::from_integer(t[2].clone()),
            ];
            if !holds_ngon(p, &coords)? {
                return Ok(None);
            }
            let values = p
                .forms
                .iter()
                .map(|f| f.eval(&coords))
                .collect::<Result<Vec<_>>>()?;
            let dec = beta_decompose(p, &coords)?;
            Ok(Some(Witness::NGon {
                values,
                beta: dec.beta,
                alpha: dec.alpha,
            }))
        }
        (Problem::ParametricUnit(p), Point::UnitSolution(u, v, t)) => {
            if !holds_sunit(p, &(u.clone(), v.clone(), t.clone())) {
                return Ok(None);
            }
            Ok(Some(Witness::ParametricUnit {
                f_t: p.f.eval(t),
                g_t: p.g.eval(t),
                h_t: p.h.eval(t),
            }))
        }
        _ => Err(Error::domain("point shape does not match the problem")),
    }
}

/// Runs the exhaustive search over the domain.  The problem must pass its
/// validator unless `override_validation` is set (recorded in the output).
pub fn run(
    problem: &Problem,
    domain: &SearchDomain,
    override_validation: bool,
) -> Result<SolutionSet> {
    if let Err(e) = problem.validate() {
        if !override_validation {
            return Err(e);
        }
    }
    let records = match problem {
        Problem::Divisibility(p) => {
            let values = coordinate_values(&p.s, domain.height, domain.denom_bound);
            let chunks: Vec<_> = values
                .par_iter()
                .map(|x| {
                    let mut local = Vec::new();
                    for y in &values {
                        let point = Point::Affine2(x.clone(), y.clone());
                        if let Some(w) = witness_for(problem, &point).expect("S-integral inputs") {
                            local.push(SolutionRecord { point, witness: w });
                        }
                    }
                    local
                })
                .collect();
            chunks.into_iter().flatten().collect()
        }
        Problem::Forms(_) | Problem::NGon(_) => {
            let triples = enumerate_projective(domain.height);
            let chunks: Vec<_> = triples
                .par_chunks(4096)
                .map(|chunk| {
                    let mut local = Vec::new();
                    for t in chunk {
                        let point = Point::Projective(t.clone());
                        if let Some(w) = witness_for(problem, &point).expect("normalized triples") {
                            local.push(SolutionRecord { point, witness: w });
                        }
                    }
                    local
                })
                .collect();
            chunks.into_iter().flatten().collect()
        }
        Problem::ParametricUnit(p) => {
            let units = unit_grid(&p.s, domain.unit_exp_bound);
            let ts = coordinate_values(&p.s, domain.height, domain.denom_bound);
            let chunks: Vec<_> = ts
                .par_iter()
                .map(|t| {
                    let mut local = Vec::new();
                    let ft = p.f.eval(t);
                    let gt = p.g.eval(t);
                    let ht = p.h.eval(t);
                    if gt.is_zero() {
                        // u is forced; v ranges over the grid
                        if ft.is_zero() {
                            return local;
                        }
                        let u = &ht / &ft;
                        if units.binary_search(&u).is_ok() {
                            for v in &units {
                                push_unit_solution(problem, &u, v, t, &mut local);
                            }
                        }
                        return local;
                    }
                    for u in &units {
                        // solve for v and test membership in the grid
                        let v: SRational = (&ht - &ft * u) / gt.clone();
                        if v.is_zero() {
                            continue;
                        }
                        if units.binary_search(&v).is_ok() {
                            push_unit_solution(problem, u, &v, t, &mut local);
                        }
                    }
                    local
                })
                .collect();
            chunks.into_iter().flatten().collect()
        }
    };
    Ok(SolutionSet {
        problem_fingerprint: crate::io::problem_fingerprint(problem),
        domain: domain.clone(),
        override_used: override_validation,
        records,
    })
}

fn push_unit_solution(
    problem: &Problem,
    u: &SRational,
    v: &SRational,
    t: &SRational,
    out: &mut Vec<SolutionRecord>,
) {
    let point = Point::UnitSolution(u.clone(), v.clone(), t.clone());
    if let Ok(Some(w)) = witness_for(problem, &point) {
        out.push(SolutionRecord { point, witness: w });
    }
}

/// Independent re-verification of a solution set: every record is pushed
/// through the oracle-twin predicate where one exists (the ideal-equality
/// twin for cyclic forms, quotient integrality for divisibility), and its
/// stored witness values are recomputed and compared.
pub fn verify(problem: &Problem, solutions: &SolutionSet) -> bool {
    solutions
        .records
        .iter()
        .all(|rec| verify_record(problem, rec))
}

fn verify_record(problem: &Problem, rec: &SolutionRecord) -> bool {
    match (problem, &rec.point, &rec.witness) {
        (Problem::Divisibility(p), Point::Affine2(x, y), Witness::Divisibility { values }) => {
            let coords = [x.clone(), y.clone()];
            if values.len() != p.pairs.len() {
                return false;
            }
            for ((f, g), (fv, gv)) in p.pairs.iter().zip(values) {
                let (fe, ge) = match (f.eval(&coords), g.eval(&coords)) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => return false,
                };
                if &fe != fv || &ge != gv || fe.is_zero() {
                    return false;
                }
                // oracle route: the quotient must be S-integral
                if !sring::is_s_integral(&(ge / fe), &p.s) {
                    return false;
                }
            }
            true
        }
        (
            Problem::Forms(p),
            Point::Projective(t),
            Witness::Forms {
                form_values,
                g_value,
            },
        ) => {
            let coords = [
                BigRational::from_integer(t[0].clone()),
                BigRational::from_integer(t[1].clone()),
                BigRational::from_integer(t[2].clone()),
            ];
            let Ok(norm) = normalize_projective(&coords) else {
                return false;
            };
            if &norm != t {
                return false;
            }
            let Ok(gv) = p.g.eval(&coords) else {
                return false;
            };
            if &gv != g_value || form_values.len() != p.forms.len() {
                return false;
            }
            for (f, fv) in p.forms.iter().zip(form_values) {
                let Ok(fe) = f.eval(&coords) else {
                    return false;
                };
                if &fe != fv || fe.is_zero() {
                    return false;
                }
                if !sring::is_s_integral(&(gv.clone() / fe), &p.s) {
                    return false;
                }
            }
            true
        }
        (
            Problem::NGon(p),
            Point::Projective(t),
            Witness::NGon {
                values,
                beta,
                alpha,
            },
        ) => {
            let coords = [
                BigRational::from_integer(t[0].clone()),
                BigRational::from_integer(t[1].clone()),
                BigRational::from_integer(t[2].clone()),
            ];
            // recompute values and the decomposition
            let evs: Option<Vec<SRational>> =
                p.forms.iter().map(|f| f.eval(&coords).ok()).collect();
            let Some(evs) = evs else { return false };
            if &evs != values {
                return false;
            }
            let Ok(dec) = beta_decompose(p, &coords) else {
                return false;
            };
            if &dec.beta != beta || &dec.alpha != alpha {
                return false;
            }
            // oracle twin: the ideal-equality predicate
            matches!(holds_ngon_ideal(p, &coords), Ok(true))
        }
        (
            Problem::ParametricUnit(p),
            Point::UnitSolution(u, v, t),
            Witness::ParametricUnit { f_t, g_t, h_t },
        ) => {
            if &p.f.eval(t) != f_t || &p.g.eval(t) != g_t || &p.h.eval(t) != h_t {
                return false;
            }
            holds_sunit(p, &(u.clone(), v.clone(), t.clone()))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::MultiPoly;
    use crate::sring::{rat, ratio};

    fn s(primes: &[u64]) -> PrimeSet {
        PrimeSet::new(primes.iter().copied()).unwrap()
    }

    fn unit_pairs_problem() -> Problem {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let one = MultiPoly::constant(2, rat(1));
        let f3 = one.sub(&x).sub(&y);
        Problem::Divisibility(
            DivisibilityProblem::new(
                vec![(x, one.clone()), (y, one.clone()), (f3, one)],
                PrimeSet::empty(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn coordinate_value_counts() {
        assert_eq!(coordinate_values(&s(&[]), 2, 1).len(), 5);
        let vals = coordinate_values(&s(&[2]), 1, 2);
        assert_eq!(vals.len(), 5); // 0, ±1, ±1/2
        assert!(vals.contains(&ratio(1, 2)));
        assert_eq!(coordinate_values(&s(&[]), 0, 1), vec![rat(0)]);
    }

    #[test]
    fn projective_enumeration() {
        let triples = enumerate_projective(1);
        assert_eq!(triples.len(), 13);
        // sign normalization: (1,0,0) in, (-1,0,0) out
        assert!(triples
            .iter()
            .any(|t| t[0] == BigInt::from(1) && t[1].is_zero() && t[2].is_zero()));
        assert!(!triples.iter().any(|t| t[0] == BigInt::from(-1)));
        // no non-coprime triple
        let h2 = enumerate_projective(4);
        assert!(!h2.iter().any(|t| t[0] == BigInt::from(2)
            && t[1] == BigInt::from(4)
            && t[2] == BigInt::from(6)));
    }

    #[test]
    fn unit_grid_size() {
        let g = unit_grid(&s(&[2, 3]), 6);
        assert_eq!(g.len(), 338);
        assert!(g.contains(&rat(1)));
        assert!(g.contains(&ratio(-8, 9)));
        let g0 = unit_grid(&s(&[]), 6);
        assert_eq!(g0, vec![rat(-1), rat(1)]);
    }

    #[test]
    fn unit_pair_ground_truth() {
        let problem = unit_pairs_problem();
        let sols = run(&problem, &SearchDomain::affine2(10, 1), false).unwrap();
        let points: Vec<_> = sols
            .records
            .iter()
            .map(|r| match &r.point {
                Point::Affine2(x, y) => (x.clone(), y.clone()),
                _ => panic!(),
            })
            .collect();
        assert_eq!(
            points,
            vec![(rat(-1), rat(1)), (rat(1), rat(-1)), (rat(1), rat(1))]
        );
        assert!(verify(&problem, &sols));
    }

    #[test]
    fn tampered_record_fails_verification() {
        let problem = unit_pairs_problem();
        let mut sols = run(&problem, &SearchDomain::affine2(10, 1), false).unwrap();
        match &mut sols.records[0].witness {
            Witness::Divisibility { values } => values[0].0 = rat(7),
            _ => panic!(),
        }
        assert!(!verify(&problem, &sols));
    }

    #[test]
    fn empty_domain_empty_set() {
        let problem = unit_pairs_problem();
        let sols = run(&problem, &SearchDomain::affine2(0, 1), false).unwrap();
        assert!(sols.records.is_empty());
        assert!(verify(&problem, &sols));
    }

    #[test]
    fn partition_invariance() {
        // running the same search with different rayon pool sizes (including
        // sequential) yields identical records
        let problem = unit_pairs_problem();
        let base = run(&problem, &SearchDomain::affine2(6, 1), false).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let seq = pool.install(|| run(&problem, &SearchDomain::affine2(6, 1), false).unwrap());
        assert_eq!(base.records, seq.records);
    }

    #[test]
    fn ngon_search_requires_s() {
        let p = crate::polysys::tests::vandermonde_ngon(6, &[]);
        let problem = Problem::NGon(p);
        assert!(run(&problem, &SearchDomain::projective(3), false).is_err());
        // override records the fact
        let sols = run(&problem, &SearchDomain::projective(1), true).unwrap();
        assert!(sols.override_used);
    }

    #[test]
    fn ngon_twin_agreement_small() {
        let p = crate::polysys::tests::vandermonde_ngon(6, &[2, 3, 5]);
        let problem = Problem::NGon(p.clone());
        let sols = run(&problem, &SearchDomain::projective(6), false).unwrap();
        // every returned triple satisfies both twin predicates
        for rec in &sols.records {
            let Point::Projective(t) = &rec.point else {
                panic!()
            };
            let coords = [
                BigRational::from_integer(t[0].clone()),
                BigRational::from_integer(t[1].clone()),
                BigRational::from_integer(t[2].clone()),
            ];
            assert!(holds_ngon(&p, &coords).unwrap());
            assert!(holds_ngon_ideal(&p, &coords).unwrap());
        }
        assert!(verify(&problem, &sols));
    }
}
