//! Empirical Zariski-closure detection: find low-degree curves containing
//! most of a finite point set by exact rational linear algebra, greedily
//! extract the largest components, and report the uncovered residue.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polysys::MultiPoly;
use crate::sring::SRational;

pub type PlanePoint = (SRational, SRational);

/// One extracted curve component.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveComponent {
    /// primitive integer coefficients, content 1, sign-normalized
    pub poly: MultiPoly,
    pub degree: u32,
    /// indices into the input point list
    pub support: Vec<usize>,
}

/// The full closure report.
#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub components: Vec<CurveComponent>,
    pub residual: Vec<usize>,
    /// covered points / total points
    pub coverage: (usize, usize),
    pub parameters: FitParameters,
}

/// Tunable knobs of the greedy fit, recorded in every report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitParameters {
    pub dmax: u32,
    pub min_support: usize,
    /// candidate tuples examined per degree before subsampling kicks in
    pub seed_budget: usize,
    /// subsample size used for seed tuples when the point set is large
    pub seed_sample: usize,
}

impl Default for FitParameters {
    fn default() -> Self {
        FitParameters {
            dmax: 2,
            min_support: 8,
            seed_budget: 200_000,
            seed_sample: 30,
        }
    }
}

/// Number of monomials of total degree <= d in two variables.
pub fn monomial_count(d: u32) -> usize {
    ((d + 1) * (d + 2) / 2) as usize
}

fn monomials(d: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for total in 0..=d {
        for i in (0..=total).rev() {
            out.push((i, total - i));
        }
    }
    out
}

/// Exact basis of the space of polynomials of total degree <= d vanishing on
/// all the given points: the nullspace of the evaluation matrix.
pub fn vanishing_space(points: &[PlanePoint], d: u32) -> Vec<MultiPoly> {
    let monos = monomials(d);
    let ncols = monos.len();
    // build the evaluation matrix and row-reduce it
    let mut rows: Vec<Vec<BigRational>> = points
        .iter()
        .map(|(x, y)| monos.iter().map(|&(i, j)| pow(x, i) * pow(y, j)).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pr) = pivot else { continue };
        rows.swap(rank, pr);
        let inv = BigRational::one() / rows[rank][col].clone();
        for c in col..ncols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let sub = &rows[rank][c] * &factor;
                    rows[r][c] = &rows[r][c] - &sub;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    // free columns parametrize the nullspace
    let mut basis = Vec::with_capacity(ncols - rank);
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut coeffs = vec![BigRational::zero(); ncols];
        coeffs[free] = BigRational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            coeffs[pc] = -rows[r][free].clone();
        }
        let poly = MultiPoly::from_terms(
            2,
            monos
                .iter()
                .zip(&coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&(i, j), c)| (vec![i, j], c.clone())),
        );
        basis.push(poly.primitive_normalized());
    }
    basis
}

fn pow(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

fn vanishes_at(poly: &MultiPoly, p: &PlanePoint) -> bool {
    poly.eval(&[p.0.clone(), p.1.clone()])
        .map(|v| v.is_zero())
        .unwrap_or(false)
}

/// Normalized key of a candidate curve, for dedup and the deterministic
/// lexicographic tie-break.
fn poly_key(poly: &MultiPoly) -> Vec<(Vec<u32>, BigInt)> {
    poly.terms()
        .map(|(e, c)| (e.clone(), c.numer().clone()))
        .collect()
}

/// The unique line through two distinct points, primitive and sign-normalized.
fn line_through(p: &PlanePoint, q: &PlanePoint) -> Option<MultiPoly> {
    if p == q {
        return None;
    }
    let a = &p.1 - &q.1;
    let b = &q.0 - &p.0;
    let c = &p.0 * &q.1 - &q.0 * &p.1;
    let poly = MultiPoly::from_terms(2, [(vec![1u32, 0], a), (vec![0, 1], b), (vec![0, 0], c)]);
    if poly.is_zero() {
        None
    } else {
        Some(poly.primitive_normalized())
    }
}

/// Greedy extraction of curve components: repeatedly pick the curve of degree
/// at most `dmax` vanishing on the largest number of remaining points (ties:
/// smaller degree, then lexicographically smallest normalized polynomial),
/// stop when no candidate reaches `min_support`.
pub fn fit_components(points: &[PlanePoint], params: &FitParameters) -> Vec<CurveComponent> {
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let mut components = Vec::new();
    loop {
        let candidates = candidate_curves(points, &remaining, params);
        // evaluate support of each candidate over the remaining points
        let mut best: Option<(usize, u32, Vec<(Vec<u32>, BigInt)>, MultiPoly, Vec<usize>)> = None;
        for poly in candidates {
            let support: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&i| vanishes_at(&poly, &points[i]))
                .collect();
            if support.len() < params.min_support {
                continue;
            }
            let degree = poly.degree().unwrap_or(0);
            let key = poly_key(&poly);
            let better = match &best {
                None => true,
                Some((bs, bd, bk, _, _)) => {
                    support.len() > *bs
                        || (support.len() == *bs && degree < *bd)
                        || (support.len() == *bs && degree == *bd && key < *bk)
                }
            };
            if better {
                best = Some((support.len(), degree, key, poly, support));
            }
        }
        let Some((_, degree, _, poly, support)) = best else {
            break;
        };
        let supset: std::collections::BTreeSet<usize> = support.iter().copied().collect();
        remaining.retain(|i| !supset.contains(i));
        components.push(CurveComponent {
            poly,
            degree,
            support,
        });
        if remaining.is_empty() {
            break;
        }
    }
    components
}

/// Candidate curves from collinear and co-conic (and higher) seed tuples.
fn candidate_curves(
    points: &[PlanePoint],
    remaining: &[usize],
    params: &FitParameters,
) -> Vec<MultiPoly> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();

    // lines from all pairs; a line supported by s points collects exactly
    // s(s-1)/2 pairs, so the pair count filters candidates below the support
    // threshold without any support scan
    let mut line_counts: std::collections::BTreeMap<Vec<(Vec<u32>, BigInt)>, (MultiPoly, usize)> =
        std::collections::BTreeMap::new();
    for (a, i) in remaining.iter().enumerate() {
        for j in &remaining[a + 1..] {
            if let Some(line) = line_through(&points[*i], &points[*j]) {
                let key = poly_key(&line);
                line_counts.entry(key).or_insert((line, 0)).1 += 1;
            }
        }
    }
    let pair_threshold = params.min_support * (params.min_support - 1) / 2;
    for (key, (line, count)) in line_counts {
        if count >= pair_threshold && seen.insert(key) {
            out.push(line);
        }
    }

    // degree >= 2: tuples of (monomial count - 1) points determine a curve;
    // subsample deterministically when the remaining set is large
    for d in 2..=params.dmax {
        let k = monomial_count(d) - 1;
        if remaining.len() < k {
            continue;
        }
        let pool: Vec<usize> = if remaining.len() > params.seed_sample {
            let stride = remaining.len().div_ceil(params.seed_sample);
            remaining.iter().copied().step_by(stride).collect()
        } else {
            remaining.to_vec()
        };
        if pool.len() < k {
            continue;
        }
        let mut budget = params.seed_budget;
        let mut tuple: Vec<usize> = (0..k).collect();
        'combos: while budget > 0 {
            budget -= 1;
            let pts: Vec<PlanePoint> = tuple.iter().map(|&ti| points[pool[ti]].clone()).collect();
            let space = vanishing_space(&pts, d);
            if space.len() == 1 {
                let poly = space.into_iter().next().unwrap();
                // skip curves of lower degree (already covered by line seeds)
                if poly.degree() == Some(d) && seen.insert(poly_key(&poly)) {
                    out.push(poly);
                }
            }
            // advance to the next k-combination of the pool
            let mut i = k;
            while i > 0 {
                i -= 1;
                if tuple[i] < i + pool.len() - k {
                    tuple[i] += 1;
                    for j in i + 1..k {
                        tuple[j] = tuple[j - 1] + 1;
                    }
                    continue 'combos;
                }
            }
            break;
        }
    }
    out
}

/// Full degeneracy report with the default support threshold
/// `min_support = dmax (dmax + 3) / 2 + 3`, strictly above the interpolation
/// dimension of degree-dmax curves.
pub fn degeneracy_report(points: &[PlanePoint], dmax: u32) -> ClosureReport {
    let min_support = (dmax * (dmax + 3) / 2) as usize + 3;
    let params = FitParameters {
        dmax,
        min_support,
        ..FitParameters::default()
    };
    let components = fit_components(points, &params);
    let covered: std::collections::BTreeSet<usize> = components
        .iter()
        .flat_map(|c| c.support.iter().copied())
        .collect();
    let residual: Vec<usize> = (0..points.len()).filter(|i| !covered.contains(i)).collect();
    ClosureReport {
        coverage: (covered.len(), points.len()),
        components,
        residual,
        parameters: params,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sring::{rat, ratio};

    fn pt(x: i64, y: i64) -> PlanePoint {
        (rat(x), rat(y))
    }

    #[test]
    fn vanishing_space_examples() {
        // three collinear points: dimension 1, generator x - y
        let pts = vec![pt(0, 0), pt(1, 1), pt(2, 2)];
        let basis = vanishing_space(&pts, 1);
        assert_eq!(basis.len(), 1);
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        assert_eq!(basis[0], x.sub(&y));
        // five generic points: dimension 0 at degree 1
        let pts = vec![pt(0, 0), pt(1, 0), pt(0, 1), pt(2, 3), pt(5, 1)];
        assert!(vanishing_space(&pts, 1).is_empty());
        // no points: full space of dimension 3
        assert_eq!(vanishing_space(&[], 1).len(), 3);
    }

    #[test]
    fn fits_circle_plus_noise() {
        // 8 points on x^2 + y^2 = 25 plus 3 generic points
        let mut pts: Vec<PlanePoint> = vec![
            pt(5, 0),
            pt(-5, 0),
            pt(0, 5),
            pt(0, -5),
            pt(3, 4),
            pt(4, 3),
            pt(-3, 4),
            pt(3, -4),
        ];
        pts.push(pt(1, 1));
        pts.push(pt(2, 1));
        pts.push(pt(7, 2));
        let report = degeneracy_report(&pts, 2);
        assert_eq!(report.components.len(), 1);
        assert_eq!(report.components[0].degree, 2);
        assert_eq!(report.components[0].support.len(), 8);
        assert_eq!(report.residual.len(), 3);
        assert_eq!(report.coverage, (8, 11));
    }

    #[test]
    fn below_threshold_no_components() {
        let pts = vec![pt(0, 0), pt(1, 1), pt(2, 2)];
        let report = degeneracy_report(&pts, 2);
        assert!(report.components.is_empty());
        assert_eq!(report.residual.len(), 3);
    }

    #[test]
    fn two_lines_deterministic_order() {
        // two full lines of 10 points each: y = 0 and y = x + 12
        let mut pts = Vec::new();
        for x in 0..10 {
            pts.push(pt(x, 0));
        }
        for x in 0..10 {
            pts.push(pt(x, x + 12));
        }
        let report = degeneracy_report(&pts, 1);
        assert_eq!(report.components.len(), 2);
        assert_eq!(report.components[0].support.len(), 10);
        assert_eq!(report.components[1].support.len(), 10);
        assert!(report.residual.is_empty());
        // deterministic: rerun gives the identical answer
        let again = degeneracy_report(&pts, 1);
        assert_eq!(report.components, again.components);
        // tie broken lexicographically on the normalized polynomial
        let first_key = poly_key(&report.components[0].poly);
        let second_key = poly_key(&report.components[1].poly);
        assert!(first_key < second_key);
    }

    #[test]
    fn exactness_of_split() {
        // residual points never lie on a reported component
        let mut pts: Vec<PlanePoint> = (0..12).map(|x| pt(x, 2 * x)).collect();
        pts.push((ratio(1, 2), rat(3)));
        pts.push(pt(-7, 5));
        let report = degeneracy_report(&pts, 1);
        for c in &report.components {
            for &r in &report.residual {
                assert!(!vanishes_at(&c.poly, &pts[r]));
            }
            for &s in &c.support {
                assert!(vanishes_at(&c.poly, &pts[s]));
            }
        }
    }

    #[test]
    fn empty_input() {
        let report = degeneracy_report(&[], 2);
        assert!(report.components.is_empty());
        assert!(report.residual.is_empty());
        assert_eq!(report.coverage, (0, 0));
    }
}
