//! Constructive generators and classifiers for the infinite solution
//! families of the parametric unit equation, Pell orbits on marked conics,
//! and the five-line conic-pencil generator.

pub mod conic;
pub mod pencil;

use num_rational::BigRational;
use num_traits::Zero;

pub use conic::{
    generate_orbit, integral_wrt_marks, pell_fundamental, pell_fundamental_u64, stabilizer_map,
    ConicWithMarks, MarkKind, OrbitGenerator,
};
pub use pencil::{pencil_points, valuation_certificate, PencilMember, PencilReport};

use crate::error::Error;
use crate::polysys::{holds_sunit, ParametricUnitProblem, UniPoly};
use crate::sring::SRational;
use crate::Result;

/// Which coordinate of `(u, v, u/v)` a family confines, and to which value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Confined {
    U(SRational),
    V(SRational),
    Ratio(SRational),
}

impl Confined {
    pub fn label(&self) -> &'static str {
        match self {
            Confined::U(_) => "u",
            Confined::V(_) => "v",
            Confined::Ratio(_) => "u/v",
        }
    }

    pub fn value(&self) -> &SRational {
        match self {
            Confined::U(v) | Confined::V(v) | Confined::Ratio(v) => v,
        }
    }
}

/// One infinite family of solutions.
///
/// A `Fiber` family freezes `t` at a rational root of `f g h` (the equation
/// then forces the confined coordinate); the other kinds have variable `t`
/// with one coordinate constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    Fiber,
    FixedU,
    FixedV,
    FixedRatio,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub kind: FamilyKind,
    pub t0: Option<SRational>,
    pub confined: Confined,
    pub description: String,
}

impl FamilyDescriptor {
    /// Exact membership test for a verified solution.
    pub fn contains(&self, sol: &(SRational, SRational, SRational)) -> bool {
        let (u, v, t) = sol;
        match self.kind {
            FamilyKind::Fiber => self.t0.as_ref() == Some(t),
            FamilyKind::FixedU => match &self.confined {
                Confined::U(val) => u == val,
                _ => false,
            },
            FamilyKind::FixedV => match &self.confined {
                Confined::V(val) => v == val,
                _ => false,
            },
            FamilyKind::FixedRatio => match &self.confined {
                Confined::Ratio(val) => !v.is_zero() && &(u / v) == val,
                _ => false,
            },
        }
    }
}

/// The family catalog of a parametric unit problem.
#[derive(Debug, Clone)]
pub struct FamilyCatalog {
    pub families: Vec<FamilyDescriptor>,
}

/// Builds the catalog: one fiber family per rational root of `f g h`, plus
/// every variable-`t` family with a constant coordinate.  A constant value
/// `u0` admits a family exactly when `(h - u0 f)/g` has at most one distinct
/// finite zero-or-pole, which over `Q` reduces to two computable shapes:
/// full cancellation against `g` (constant quotient) and division of `g` by
/// `h - u0 f` with a linear-power quotient; symmetrically for `v0`, and for
/// ratios via `h / (rho f + g)`.
pub fn sunit_catalog(problem: &ParametricUnitProblem) -> FamilyCatalog {
    let mut families = Vec::new();
    let f = &problem.f;
    let g = &problem.g;
    let h = &problem.h;

    // fiber families at rational roots
    let mut fibers: Vec<FamilyDescriptor> = Vec::new();
    for (t0, _) in f.rational_roots() {
        let value = h.eval(&t0) / g.eval(&t0);
        fibers.push(FamilyDescriptor {
            kind: FamilyKind::Fiber,
            t0: Some(t0.clone()),
            confined: Confined::V(value.clone()),
            description: format!("fiber t = {t0}: v = {value}, u free"),
        });
    }
    for (t0, _) in g.rational_roots() {
        let value = h.eval(&t0) / f.eval(&t0);
        fibers.push(FamilyDescriptor {
            kind: FamilyKind::Fiber,
            t0: Some(t0.clone()),
            confined: Confined::U(value.clone()),
            description: format!("fiber t = {t0}: u = {value}, v free"),
        });
    }
    for (t0, _) in h.rational_roots() {
        let value = -g.eval(&t0) / f.eval(&t0);
        fibers.push(FamilyDescriptor {
            kind: FamilyKind::Fiber,
            t0: Some(t0.clone()),
            confined: Confined::Ratio(value.clone()),
            description: format!("fiber t = {t0}: u/v = {value}"),
        });
    }
    fibers.sort_by(|a, b| a.t0.cmp(&b.t0));
    families.extend(fibers);

    // variable-t families with a constant coordinate
    let push_unique = |fam: FamilyDescriptor, families: &mut Vec<FamilyDescriptor>| {
        if !families
            .iter()
            .any(|f| f.kind == fam.kind && f.confined == fam.confined)
        {
            families.push(fam);
        }
    };

    let mut value_families = Vec::new();
    for (u0, other) in constant_coordinate_values(f, g, h) {
        push_unique(
            FamilyDescriptor {
                kind: FamilyKind::FixedU,
                t0: None,
                confined: Confined::U(u0.clone()),
                description: format!("u = {u0} with v = {other} as a function of t"),
            },
            &mut value_families,
        );
    }
    for (v0, other) in constant_coordinate_values(g, f, h) {
        push_unique(
            FamilyDescriptor {
                kind: FamilyKind::FixedV,
                t0: None,
                confined: Confined::V(v0.clone()),
                description: format!("v = {v0} with u = {other} as a function of t"),
            },
            &mut value_families,
        );
    }
    for (rho, other) in constant_ratio_values(f, g, h) {
        push_unique(
            FamilyDescriptor {
                kind: FamilyKind::FixedRatio,
                t0: None,
                confined: Confined::Ratio(rho.clone()),
                description: format!("u/v = {rho} with v = {other} as a function of t"),
            },
            &mut value_families,
        );
    }
    value_families.sort_by(|a, b| {
        let ka = match a.kind {
            FamilyKind::FixedU => 0,
            FamilyKind::FixedV => 1,
            _ => 2,
        };
        let kb = match b.kind {
            FamilyKind::FixedU => 0,
            FamilyKind::FixedV => 1,
            _ => 2,
        };
        ka.cmp(&kb).then(a.confined.value().cmp(b.confined.value()))
    });
    families.extend(value_families);

    FamilyCatalog { families }
}

/// Constant values `c0` such that `u = c0` (coefficient polynomial `coef`,
/// complementary polynomial `other`) gives an infinite family: the quotient
/// `(h - c0 coef)/other` must be constant, or `(h - c0 coef)` must divide
/// `other` with a linear-power quotient.  Returns `(c0, description of the
/// free coordinate)`.
fn constant_coordinate_values(
    coef: &UniPoly,
    other: &UniPoly,
    h: &UniPoly,
) -> Vec<(SRational, String)> {
    let mut out = Vec::new();
    // full cancellation: other | (h - c0 coef): compare remainders mod other
    let (_, r_coef) = coef.div_rem(other);
    let (_, r_h) = h.div_rem(other);
    if !r_coef.is_zero() {
        if let Some(c0) = proportionality(&r_h, &r_coef) {
            if !c0.is_zero() {
                let n = h.sub(&coef.scale(&c0));
                if let Some(q) = n.exact_div(other) {
                    // deg n <= deg other forces a constant quotient
                    if q.degree() == Some(0) {
                        out.push((c0, format!("{}", q.coeff(0))));
                    }
                }
            }
        }
    }
    // degree drop: c0 = lc(h)/lc(coef), then (h - c0 coef) | other with a
    // linear-power (or constant) cofactor
    let c0 = h.leading_coeff() / coef.leading_coeff();
    let n = h.sub(&coef.scale(&c0));
    if !n.is_zero() && !c0.is_zero() {
        if let Some(q) = other.exact_div(&n) {
            let ok = q.degree() == Some(0) || q.as_linear_power().is_some();
            if ok && !out.iter().any(|(v, _)| v == &c0) {
                out.push((c0, "n/q".into()));
            }
        }
    }
    out
}

/// Constant ratios `rho` with `u = rho v` giving an infinite family: either
/// `rho f + g` is proportional to `h` (both coordinates constant) or it
/// divides `h` with a linear-power quotient after the leading terms cancel.
fn constant_ratio_values(f: &UniPoly, g: &UniPoly, h: &UniPoly) -> Vec<(SRational, String)> {
    let mut out = Vec::new();
    // proportional case: rho f + g = c h, solved coefficientwise
    if let Some((rho, c)) = solve_linear_combination(f, g, h) {
        if !rho.is_zero() && !c.is_zero() {
            out.push((rho, format!("{}", BigRational::from_integer(1.into()) / c)));
        }
    }
    // degree-drop case: rho = -lc(g)/lc(f)
    let rho = -g.leading_coeff() / f.leading_coeff();
    if !rho.is_zero() {
        let d = f.scale(&rho).add(g);
        if !d.is_zero() && !out.iter().any(|(v, _)| v == &rho) {
            if let Some(q) = h.exact_div(&d) {
                if q.degree() == Some(0) || q.as_linear_power().is_some() {
                    out.push((rho, "h/(rho f + g)".into()));
                }
            }
        }
    }
    out
}

/// Finds `c` with `lhs = c * rhs` exactly, if it exists (`rhs` nonzero).
fn proportionality(lhs: &UniPoly, rhs: &UniPoly) -> Option<SRational> {
    if lhs.is_zero() {
        return Some(BigRational::zero());
    }
    let k = rhs.coeffs().iter().position(|c| !c.is_zero())?;
    let c = lhs.coeff(k) / rhs.coeff(k);
    if lhs == &rhs.scale(&c) {
        Some(c)
    } else {
        None
    }
}

/// Solves `rho f + g = c h` for rationals `(rho, c)` if possible.
fn solve_linear_combination(
    f: &UniPoly,
    g: &UniPoly,
    h: &UniPoly,
) -> Option<(SRational, SRational)> {
    // two unknowns; pick two coefficient equations with an invertible system,
    // then verify all the rest
    let n = f.coeffs().len().max(g.coeffs().len()).max(h.coeffs().len());
    let rows: Vec<(SRational, SRational, SRational)> = (0..n)
        .map(|k| (f.coeff(k), h.coeff(k), g.coeff(k)))
        .collect();
    // rho * f_k - c * h_k = -g_k
    for i in 0..n {
        for j in i + 1..n {
            let det = &rows[i].0 * -rows[j].1.clone() - &rows[j].0 * -rows[i].1.clone();
            if det.is_zero() {
                continue;
            }
            let rho = (-rows[i].2.clone() * -rows[j].1.clone()
                - (-rows[j].2.clone()) * -rows[i].1.clone())
                / &det;
            let c = (&rows[i].0 * -rows[j].2.clone() - &rows[j].0 * -rows[i].2.clone()) / &det;
            // verify all equations
            let ok = (0..n).all(|k| &rho * &rows[k].0 + &rows[k].2 == &c * &rows[k].1);
            if ok {
                return Some((rho, c));
            }
            return None;
        }
    }
    None
}

/// Result of classifying one solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Family(usize),
    Sporadic,
}

/// Classifies a verified solution against the catalog: fiber families match
/// on `t`, value families on the confined coordinate; the first match in
/// catalog order wins.  A non-solution is an error.
pub fn classify_solution(
    catalog: &FamilyCatalog,
    problem: &ParametricUnitProblem,
    sol: &(SRational, SRational, SRational),
) -> Result<Classification> {
    if !holds_sunit(problem, sol) {
        return Err(Error::domain("not a solution of the unit equation"));
    }
    for (i, fam) in catalog.families.iter().enumerate() {
        if fam.contains(sol) {
            return Ok(Classification::Family(i));
        }
    }
    Ok(Classification::Sporadic)
}

/// Aggregate classification of a batch of solutions: per-family counts, the
/// set of observed confined values (the empirical finite set the theorems
/// predict), and the sporadic records with their value triples.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub family_counts: Vec<usize>,
    /// confined values actually observed, as (coordinate label, value)
    pub observed_confined: Vec<(String, SRational)>,
    pub sporadics: Vec<(SRational, SRational, SRational)>,
}

pub fn classify_all(
    catalog: &FamilyCatalog,
    problem: &ParametricUnitProblem,
    solutions: &[(SRational, SRational, SRational)],
) -> Result<ClassificationReport> {
    let mut family_counts = vec![0usize; catalog.families.len()];
    let mut observed = Vec::new();
    let mut sporadics = Vec::new();
    for sol in solutions {
        match classify_solution(catalog, problem, sol)? {
            Classification::Family(i) => {
                family_counts[i] += 1;
                let fam = &catalog.families[i];
                let entry = (
                    fam.confined.label().to_string(),
                    fam.confined.value().clone(),
                );
                if !observed.contains(&entry) {
                    observed.push(entry);
                }
            }
            Classification::Sporadic => sporadics.push(sol.clone()),
        }
    }
    observed.sort();
    Ok(ClassificationReport {
        family_counts,
        observed_confined: observed,
        sporadics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sring::{rat, ratio, PrimeSet};

    /// f = t, g = 1 - t, h = t + 1.
    pub(crate) fn linear_problem(s: &[u64]) -> ParametricUnitProblem {
        ParametricUnitProblem::new(
            UniPoly::from_ints(&[0, 1]),
            UniPoly::from_ints(&[1, -1]),
            UniPoly::from_ints(&[1, 1]),
            PrimeSet::new(s.iter().copied()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn catalog_of_the_linear_problem() {
        let p = linear_problem(&[2, 3]);
        let cat = sunit_catalog(&p);
        // fibers at t = -1, 0, 1
        let fibers: Vec<_> = cat
            .families
            .iter()
            .filter(|f| f.kind == FamilyKind::Fiber)
            .collect();
        assert_eq!(fibers.len(), 3);
        assert_eq!(fibers[0].t0, Some(rat(-1)));
        assert_eq!(fibers[0].confined, Confined::Ratio(rat(2)));
        assert_eq!(fibers[1].t0, Some(rat(0)));
        assert_eq!(fibers[1].confined, Confined::V(rat(1)));
        assert_eq!(fibers[2].t0, Some(rat(1)));
        assert_eq!(fibers[2].confined, Confined::U(rat(2)));
        // variable-t families: u in {1, 2}, v in {-1, 1}, ratio in {1, 2}
        let values: Vec<_> = cat
            .families
            .iter()
            .filter(|f| f.kind != FamilyKind::Fiber)
            .map(|f| (f.kind.clone(), f.confined.value().clone()))
            .collect();
        assert_eq!(
            values,
            vec![
                (FamilyKind::FixedU, rat(1)),
                (FamilyKind::FixedU, rat(2)),
                (FamilyKind::FixedV, rat(-1)),
                (FamilyKind::FixedV, rat(1)),
                (FamilyKind::FixedRatio, rat(1)),
                (FamilyKind::FixedRatio, rat(2)),
            ]
        );
    }

    #[test]
    fn catalog_without_rational_roots() {
        // f = t^2 + 1, g = t^2 + t + 1, h = t^2 + 2 have no rational roots
        let p = ParametricUnitProblem::new(
            UniPoly::from_ints(&[1, 0, 1]),
            UniPoly::from_ints(&[1, 1, 1]),
            UniPoly::from_ints(&[2, 0, 1]),
            PrimeSet::empty(),
        )
        .unwrap();
        let cat = sunit_catalog(&p);
        assert!(cat.families.iter().all(|f| f.kind != FamilyKind::Fiber));
    }

    #[test]
    fn classification_examples() {
        let p = linear_problem(&[2]);
        let cat = sunit_catalog(&p);
        // (8, 1, 0): fiber at t = 0
        let c = classify_solution(&cat, &p, &(rat(8), rat(1), rat(0))).unwrap();
        match c {
            Classification::Family(i) => {
                assert_eq!(cat.families[i].kind, FamilyKind::Fiber);
                assert_eq!(cat.families[i].t0, Some(rat(0)));
            }
            _ => panic!("expected the t = 0 fiber"),
        }
        // non-solutions are rejected
        assert!(classify_solution(&cat, &p, &(rat(3), rat(1), rat(1))).is_err());
    }

    #[test]
    fn ratio_family_catches_equal_coordinates() {
        let p = linear_problem(&[5]);
        let cat = sunit_catalog(&p);
        // (5, 5, 4): u/v = 1 family
        let c = classify_solution(&cat, &p, &(rat(5), rat(5), rat(4))).unwrap();
        match c {
            Classification::Family(i) => {
                assert_eq!(cat.families[i].kind, FamilyKind::FixedRatio);
                assert_eq!(cat.families[i].confined, Confined::Ratio(rat(1)));
            }
            other => panic!("expected the ratio-1 family, got {other:?}"),
        }
    }

    #[test]
    fn family_members_solve_the_equation() {
        // for each catalog family, instantiate the free coordinate with units
        // and check the equation
        let p = linear_problem(&[2, 3]);
        let cat = sunit_catalog(&p);
        let units: Vec<_> = [1i64, -1, 2, -2, 3, 4, 6, 8, 9, -6]
            .iter()
            .map(|&u| rat(u))
            .collect();
        for fam in &cat.families {
            match (&fam.kind, &fam.t0, &fam.confined) {
                (FamilyKind::Fiber, Some(t0), Confined::V(v0)) => {
                    for u in &units {
                        assert!(holds_sunit(&p, &(u.clone(), v0.clone(), t0.clone())));
                    }
                }
                (FamilyKind::Fiber, Some(t0), Confined::U(u0)) => {
                    for v in &units {
                        assert!(holds_sunit(&p, &(u0.clone(), v.clone(), t0.clone())));
                    }
                }
                (FamilyKind::Fiber, Some(t0), Confined::Ratio(r0)) => {
                    for v in &units {
                        assert!(holds_sunit(&p, &(r0 * v, v.clone(), t0.clone())));
                    }
                }
                (FamilyKind::FixedU, _, Confined::U(u0)) => {
                    // v = (h - u0 f)/g must be a unit for suitable t
                    for t in [rat(-5), rat(3), ratio(1, 2)] {
                        let v = (p.h.eval(&t) - u0 * p.f.eval(&t)) / p.g.eval(&t);
                        if crate::sring::is_s_unit(&v, &p.s) {
                            assert!(holds_sunit(&p, &(u0.clone(), v, t.clone())));
                        }
                    }
                }
                _ => {}
            }
        }
    }

    #[test]
    fn report_aggregates() {
        let p = linear_problem(&[2, 3]);
        let cat = sunit_catalog(&p);
        let sols = vec![
            (rat(8), rat(1), rat(0)),
            (rat(2), rat(9), rat(1)),
            (rat(4), rat(4), rat(3)), // u = v = t + 1
        ];
        let report = classify_all(&cat, &p, &sols).unwrap();
        assert_eq!(report.sporadics.len(), 0);
        assert_eq!(report.family_counts.iter().sum::<usize>(), 3);
        assert!(!report.observed_confined.is_empty());
    }
}
