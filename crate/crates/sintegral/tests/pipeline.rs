//! Cross-module integration: constructions that exercise several layers at
//! once (exact conic interpolation feeding the forms validator, searches
//! feeding closure reports, pencil bookkeeping).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use sintegral::closure::{degeneracy_report, vanishing_space};
use sintegral::families::pencil_points;
use sintegral::polysys::{
    check_general_position_forms, holds_forms, DivisibilityProblem, FormsProblem, MultiPoly,
    ParametricUnitProblem, UniPoly,
};
use sintegral::search::{run, verify, Point, Problem, SearchDomain};
use sintegral::sring::{rat, PrimeSet, SRational};

fn r(n: i64) -> BigRational {
    rat(n)
}

fn pt(x: i64, y: i64) -> (SRational, SRational) {
    (r(x), r(y))
}

/// Interpolates the unique conic through five points (or a pencil member
/// through four points plus a steering point) and homogenizes it.
fn conic_through(points: &[(SRational, SRational)]) -> MultiPoly {
    let basis = vanishing_space(points, 2);
    assert_eq!(basis.len(), 1, "points must determine a unique conic");
    basis[0].homogenize_to_3(2)
}

#[test]
fn five_generic_conics_pass_general_position() {
    // the five conics are interpolated through disjoint generic quintuples,
    // G through its own five base points; every condition is decided exactly
    // (rational intersections) or by nonvanishing iterated resultants
    let g = conic_through(&[pt(0, 0), pt(1, 0), pt(0, 1), pt(2, 3), pt(-1, 2)]);
    let quintuples: [[(i64, i64); 5]; 5] = [
        [(3, 1), (-2, 5), (4, -3), (1, 6), (7, 2)],
        [(2, 2), (-3, 1), (5, 4), (-1, -4), (6, 1)],
        [(1, -2), (4, 5), (-5, 2), (3, 7), (-2, -3)],
        [(5, 1), (-4, 3), (2, -5), (7, 6), (-1, 4)],
        [(6, -1), (-2, 7), (3, 3), (-6, 2), (1, 5)],
    ];
    let forms: Vec<MultiPoly> = quintuples
        .iter()
        .map(|q| {
            let pts: Vec<(SRational, SRational)> = q.iter().map(|&(x, y)| pt(x, y)).collect();
            conic_through(&pts)
        })
        .collect();
    let problem = FormsProblem::new(forms, g, PrimeSet::empty()).unwrap();
    let report = check_general_position_forms(&problem);
    assert!(
        report.all_verified(),
        "expected the generic instance to verify: {:?}",
        report
            .conditions
            .iter()
            .filter(|(_, v)| !v.is_verified())
            .collect::<Vec<_>>()
    );
    // the verified conditions leave behind integer certificates with a
    // finite set of bad-reduction primes
    let bad = sintegral::polysys::bad_primes_forms(&problem).unwrap();
    assert!(!bad.primes.is_empty());
}

#[test]
fn forms_search_with_square_divisor() {
    // F1 = x^2, G = z^2: solutions are exactly the normalized triples with
    // a unit first coordinate (9 of them at height 1)
    let x = MultiPoly::var(3, 0);
    let z = MultiPoly::var(3, 2);
    let problem =
        Problem::Forms(FormsProblem::new(vec![x.mul(&x)], z.mul(&z), PrimeSet::empty()).unwrap());
    // x^2 is singular along x = 0, so validation refuses; the override runs
    // the search anyway and records the fact
    assert!(run(&problem, &SearchDomain::projective(1), false).is_err());
    let sols = run(&problem, &SearchDomain::projective(1), true).unwrap();
    assert!(sols.override_used);
    assert_eq!(sols.records.len(), 9);
    for rec in &sols.records {
        let Point::Projective(t) = &rec.point else {
            panic!()
        };
        assert_eq!(t[0], BigInt::from(1));
    }
    assert!(verify(&problem, &sols));
    // direct spot checks
    let fp = match &problem {
        Problem::Forms(p) => p,
        _ => unreachable!(),
    };
    assert!(!holds_forms(fp, &[r(2), r(1), r(1)]).unwrap());
    assert!(holds_forms(fp, &[r(2), r(1), r(2)]).unwrap());
}

#[test]
fn unit_pair_closure_shows_line_families() {
    // x, y and 1 - x - y all units over S = {2, 3}: the solution set at
    // small height concentrates on lines such as x = 1, y = 1 and x + y = 0
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let one = MultiPoly::constant(2, r(1));
    let problem = Problem::Divisibility(
        DivisibilityProblem::new(
            vec![
                (x.clone(), one.clone()),
                (y.clone(), one.clone()),
                (one.sub(&x).sub(&y), one.clone()),
            ],
            PrimeSet::new([2, 3]).unwrap(),
        )
        .unwrap(),
    );
    let sols = run(&problem, &SearchDomain::affine2(9, 1), false).unwrap();
    assert!(verify(&problem, &sols));
    let points: Vec<(SRational, SRational)> = sols
        .records
        .iter()
        .map(|rec| match &rec.point {
            Point::Affine2(a, b) => (a.clone(), b.clone()),
            _ => unreachable!(),
        })
        .collect();
    // x = 1 carries one solution for every unit y in range: 14 of them
    assert_eq!(points.iter().filter(|(a, _)| a == &r(1)).count(), 14);
    let report = degeneracy_report(&points, 1);
    assert!(report.components.len() >= 3);
    let polys: Vec<String> = report
        .components
        .iter()
        .map(|c| c.poly.to_string())
        .collect();
    assert!(polys.iter().any(|p| p == "x - 1"), "components: {polys:?}");
    assert!(polys.iter().any(|p| p == "y - 1"), "components: {polys:?}");
    assert!(polys.iter().any(|p| p == "x + y"), "components: {polys:?}");
    // the split is exact
    for c in &report.components {
        for &i in &c.support {
            let v = c
                .poly
                .eval(&[points[i].0.clone(), points[i].1.clone()])
                .unwrap();
            assert!(v.is_zero());
        }
    }
}

#[test]
fn pencil_logs_the_degenerate_member() {
    // for the validated quintuple the pencil parameter t = 1 produces the
    // third degenerate member (x + y)(y + 3z); it must be skipped with a
    // reason while later parameters succeed
    let lin = |c: [i64; 3]| {
        MultiPoly::from_int_terms(
            3,
            [
                (vec![1, 0, 0], c[0]),
                (vec![0, 1, 0], c[1]),
                (vec![0, 0, 1], c[2]),
            ],
        )
    };
    let lines = [
        lin([1, 0, 0]),
        lin([0, 1, 0]),
        lin([0, 0, 1]),
        lin([1, 1, 1]),
        lin([1, 2, 4]),
    ];
    let report = pencil_points(&lines, &PrimeSet::empty(), 2, 1).unwrap();
    assert!(
        report
            .skipped
            .iter()
            .any(|(t, reason)| *t == 1 && reason.contains("degenerate")),
        "skipped: {:?}",
        report.skipped
    );
    assert_eq!(report.members.len(), 2);
}

#[test]
fn catalog_of_shifted_linear_problem() {
    // t u + (1 - t) v = t + 3: fibers at 0, 1, -3 and the equal-coordinates
    // family u = v = t + 3 (ratio 1)
    let p = ParametricUnitProblem::new(
        UniPoly::from_ints(&[0, 1]),
        UniPoly::from_ints(&[1, -1]),
        UniPoly::from_ints(&[3, 1]),
        PrimeSet::new([2, 3]).unwrap(),
    )
    .unwrap();
    let catalog = sintegral::families::sunit_catalog(&p);
    let fibers: Vec<_> = catalog
        .families
        .iter()
        .filter_map(|f| f.t0.clone())
        .collect();
    assert_eq!(fibers, vec![r(-3), r(0), r(1)]);
    assert!(catalog.families.iter().any(|f| {
        f.t0.is_none()
            && matches!(&f.confined, sintegral::families::Confined::Ratio(v) if v == &r(1))
    }));
    // a member of the ratio family: u = v = 7 at t = 4 ... 4*7 - 3*7 = 7 = 4 + 3
    use sintegral::families::{classify_solution, Classification};
    let c = classify_solution(&catalog, &p, &(r(-8), r(-8), r(-11))).unwrap();
    // -11*-8 + 12*-8 = -8 = -11 + 3
    match c {
        Classification::Family(i) => {
            assert!(catalog.families[i].t0.is_none());
        }
        other => panic!("expected the equal-coordinates family, got {other:?}"),
    }
}

#[test]
fn empty_search_produces_valid_empty_set() {
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let one = MultiPoly::constant(2, r(1));
    // x | 1 and y | 1 and (1 - x - y) | 1 over Z has no solutions at height 0
    let problem = Problem::Divisibility(
        DivisibilityProblem::new(
            vec![
                (x.clone(), one.clone()),
                (y.clone(), one.clone()),
                (one.sub(&x).sub(&y), one),
            ],
            PrimeSet::empty(),
        )
        .unwrap(),
    );
    let sols = run(&problem, &SearchDomain::affine2(0, 1), false).unwrap();
    assert!(sols.records.is_empty());
    assert!(verify(&problem, &sols));
    // the empty set serializes and re-ingests cleanly
    let file = sintegral::io::SolutionFile::from_solution_set(&sols);
    let text = serde_json::to_string(&file).unwrap();
    let back: sintegral::io::SolutionFile = serde_json::from_str(&text).unwrap();
    assert!(back.to_solution_set().unwrap().records.is_empty());
}
