//! Problem, solution and report files.
//!
//! Everything is JSON with exact integers serialized as decimal strings and
//! rationals as `{num, den}` string pairs; no floats appear anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::str::FromStr;

use crate::error::Error;
use crate::polysys::{
    DivisibilityProblem, FormsProblem, MultiPoly, NGonProblem, ParametricUnitProblem, UniPoly,
};
use crate::search::Problem;
use crate::sring::PrimeSet;
use crate::Result;

/// One sparse polynomial term: exponents plus an exact rational coefficient.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermSchema {
    pub exponents: Vec<u32>,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolySchema {
    pub arity: usize,
    pub terms: Vec<TermSchema>,
}

/// The on-disk problem format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProblemFile {
    Divisibility {
        s_primes: Vec<u64>,
        pairs: Vec<PairSchema>,
    },
    Forms {
        s_primes: Vec<u64>,
        forms: Vec<PolySchema>,
        g: PolySchema,
    },
    Ngon {
        s_primes: Vec<u64>,
        forms: Vec<PolySchema>,
    },
    SunitParametric {
        s_primes: Vec<u64>,
        f: PolySchema,
        g: PolySchema,
        h: PolySchema,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairSchema {
    pub f: PolySchema,
    pub g: PolySchema,
}

pub fn parse_bigint(s: &str, field: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim())
        .map_err(|_| Error::Parse(format!("{field}: `{s}` is not an integer")))
}

pub fn rational_from_strings(num: &str, den: &str, field: &str) -> Result<BigRational> {
    let n = parse_bigint(num, field)?;
    let d = parse_bigint(den, field)?;
    if d == BigInt::from(0) {
        return Err(Error::Parse(format!("{field}: zero denominator")));
    }
    Ok(BigRational::new(n, d))
}

pub fn rational_to_parts(x: &BigRational) -> (String, String) {
    (x.numer().to_string(), x.denom().to_string())
}

/// Compact `num` or `num/den` rendering for reports.
pub fn rational_display(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl PolySchema {
    pub fn to_poly(&self, field: &str) -> Result<MultiPoly> {
        if !(1..=3).contains(&self.arity) {
            return Err(Error::Parse(format!("{field}: arity must be 1, 2 or 3")));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            if t.exponents.len() != self.arity {
                return Err(Error::Parse(format!(
                    "{field}, term {i}: exponent vector length {} does not match arity {}",
                    t.exponents.len(),
                    self.arity
                )));
            }
            let c =
                rational_from_strings(&t.numerator, &t.denominator, &format!("{field}, term {i}"))?;
            terms.push((t.exponents.clone(), c));
        }
        Ok(MultiPoly::from_terms(self.arity, terms))
    }

    pub fn from_poly(p: &MultiPoly) -> Self {
        PolySchema {
            arity: p.arity(),
            terms: p
                .terms()
                .map(|(e, c)| {
                    let (numerator, denominator) = rational_to_parts(c);
                    TermSchema {
                        exponents: e.clone(),
                        numerator,
                        denominator,
                    }
                })
                .collect(),
        }
    }

    fn to_unipoly(&self, field: &str) -> Result<UniPoly> {
        if self.arity != 1 {
            return Err(Error::Parse(format!(
                "{field}: expected a 1-variable polynomial"
            )));
        }
        let p = self.to_poly(field)?;
        p.as_unipoly(0)
            .ok_or_else(|| Error::Parse(format!("{field}: not univariate")))
    }
}

impl ProblemFile {
    pub fn to_problem(&self) -> Result<Problem> {
        match self {
            ProblemFile::Divisibility { s_primes, pairs } => {
                let s = PrimeSet::new(s_primes.iter().copied())?;
                let pairs = pairs
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        Ok((
                            p.f.to_poly(&format!("pairs[{i}].f"))?,
                            p.g.to_poly(&format!("pairs[{i}].g"))?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Problem::Divisibility(DivisibilityProblem::new(pairs, s)?))
            }
            ProblemFile::Forms { s_primes, forms, g } => {
                let s = PrimeSet::new(s_primes.iter().copied())?;
                let forms = forms
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.to_poly(&format!("forms[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let g = g.to_poly("g")?;
                Ok(Problem::Forms(FormsProblem::new(forms, g, s)?))
            }
            ProblemFile::Ngon { s_primes, forms } => {
                let s = PrimeSet::new(s_primes.iter().copied())?;
                let forms = forms
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.to_poly(&format!("forms[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Problem::NGon(NGonProblem::new(forms, s)?))
            }
            ProblemFile::SunitParametric { s_primes, f, g, h } => {
                let s = PrimeSet::new(s_primes.iter().copied())?;
                Ok(Problem::ParametricUnit(ParametricUnitProblem::new(
                    f.to_unipoly("f")?,
                    g.to_unipoly("g")?,
                    h.to_unipoly("h")?,
                    s,
                )?))
            }
        }
    }

    pub fn from_problem(problem: &Problem) -> Self {
        match problem {
            Problem::Divisibility(p) => ProblemFile::Divisibility {
                s_primes: p.s.small_primes(),
                pairs: p
                    .pairs
                    .iter()
                    .map(|(f, g)| PairSchema {
                        f: PolySchema::from_poly(f),
                        g: PolySchema::from_poly(g),
                    })
                    .collect(),
            },
            Problem::Forms(p) => ProblemFile::Forms {
                s_primes: p.s.small_primes(),
                forms: p.forms.iter().map(PolySchema::from_poly).collect(),
                g: PolySchema::from_poly(&p.g),
            },
            Problem::NGon(p) => ProblemFile::Ngon {
                s_primes: p.s.small_primes(),
                forms: p.forms.iter().map(PolySchema::from_poly).collect(),
            },
            Problem::ParametricUnit(p) => ProblemFile::SunitParametric {
                s_primes: p.s.small_primes(),
                f: PolySchema::from_poly(&MultiPoly::from_unipoly(1, 0, &p.f)),
                g: PolySchema::from_poly(&MultiPoly::from_unipoly(1, 0, &p.g)),
                h: PolySchema::from_poly(&MultiPoly::from_unipoly(1, 0, &p.h)),
            },
        }
    }
}

/// Canonical fingerprint of a problem: SHA-256 of its canonical JSON form.
pub fn problem_fingerprint(problem: &Problem) -> String {
    let file = ProblemFile::from_problem(problem);
    let json = serde_json::to_string(&file).expect("serialization is total");
    let mut hasher = Sha256::new();
    hasher.update(json.as_bytes());
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Parses `"n"` or `"n/d"` into an exact rational.
pub fn rational_from_string(s: &str, field: &str) -> Result<BigRational> {
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_bigint(s, field)?)),
        Some((n, d)) => rational_from_strings(n, d, field),
    }
}

// ---------------------------------------------------------------------------
// solution files

use crate::search::{Point, SearchDomain, SolutionRecord, SolutionSet, Witness};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PointSchema {
    Affine2 { coords: [String; 2] },
    Projective { coords: [String; 3] },
    UnitSolution { u: String, v: String, t: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessSchema {
    Divisibility {
        values: Vec<[String; 2]>,
    },
    Forms {
        form_values: Vec<String>,
        g_value: String,
    },
    Ngon {
        values: Vec<String>,
        beta: Vec<String>,
        alpha: Vec<String>,
    },
    ParametricUnit {
        f_t: String,
        g_t: String,
        h_t: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecordSchema {
    pub point: PointSchema,
    pub witness: WitnessSchema,
}

/// The on-disk solution format: full witnesses plus run metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionFile {
    pub problem_hash: String,
    pub tool_version: String,
    pub domain: SearchDomain,
    pub override_used: bool,
    pub records: Vec<RecordSchema>,
}

fn r2s(x: &BigRational) -> String {
    rational_display(x)
}

impl PointSchema {
    fn from_point(p: &Point) -> Self {
        match p {
            Point::Affine2(x, y) => PointSchema::Affine2 {
                coords: [r2s(x), r2s(y)],
            },
            Point::Projective(t) => PointSchema::Projective {
                coords: [t[0].to_string(), t[1].to_string(), t[2].to_string()],
            },
            Point::UnitSolution(u, v, t) => PointSchema::UnitSolution {
                u: r2s(u),
                v: r2s(v),
                t: r2s(t),
            },
        }
    }

    fn to_point(&self) -> Result<Point> {
        Ok(match self {
            PointSchema::Affine2 { coords } => Point::Affine2(
                rational_from_string(&coords[0], "point.x")?,
                rational_from_string(&coords[1], "point.y")?,
            ),
            PointSchema::Projective { coords } => Point::Projective([
                parse_bigint(&coords[0], "point.x")?,
                parse_bigint(&coords[1], "point.y")?,
                parse_bigint(&coords[2], "point.z")?,
            ]),
            PointSchema::UnitSolution { u, v, t } => Point::UnitSolution(
                rational_from_string(u, "point.u")?,
                rational_from_string(v, "point.v")?,
                rational_from_string(t, "point.t")?,
            ),
        })
    }
}

impl WitnessSchema {
    fn from_witness(w: &Witness) -> Self {
        match w {
            Witness::Divisibility { values } => WitnessSchema::Divisibility {
                values: values.iter().map(|(f, g)| [r2s(f), r2s(g)]).collect(),
            },
            Witness::Forms {
                form_values,
                g_value,
            } => WitnessSchema::Forms {
                form_values: form_values.iter().map(r2s).collect(),
                g_value: r2s(g_value),
            },
            Witness::NGon {
                values,
                beta,
                alpha,
            } => WitnessSchema::Ngon {
                values: values.iter().map(r2s).collect(),
                beta: beta.iter().map(|b| b.to_string()).collect(),
                alpha: alpha.iter().map(r2s).collect(),
            },
            Witness::ParametricUnit { f_t, g_t, h_t } => WitnessSchema::ParametricUnit {
                f_t: r2s(f_t),
                g_t: r2s(g_t),
                h_t: r2s(h_t),
            },
        }
    }

    fn to_witness(&self) -> Result<Witness> {
        Ok(match self {
            WitnessSchema::Divisibility { values } => Witness::Divisibility {
                values: values
                    .iter()
                    .map(|[f, g]| {
                        Ok((
                            rational_from_string(f, "witness.f")?,
                            rational_from_string(g, "witness.g")?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?,
            },
            WitnessSchema::Forms {
                form_values,
                g_value,
            } => Witness::Forms {
                form_values: form_values
                    .iter()
                    .map(|v| rational_from_string(v, "witness.form_values"))
                    .collect::<Result<Vec<_>>>()?,
                g_value: rational_from_string(g_value, "witness.g_value")?,
            },
            WitnessSchema::Ngon {
                values,
                beta,
                alpha,
            } => Witness::NGon {
                values: values
                    .iter()
                    .map(|v| rational_from_string(v, "witness.values"))
                    .collect::<Result<Vec<_>>>()?,
                beta: beta
                    .iter()
                    .map(|b| parse_bigint(b, "witness.beta"))
                    .collect::<Result<Vec<_>>>()?,
                alpha: alpha
                    .iter()
                    .map(|a| rational_from_string(a, "witness.alpha"))
                    .collect::<Result<Vec<_>>>()?,
            },
            WitnessSchema::ParametricUnit { f_t, g_t, h_t } => Witness::ParametricUnit {
                f_t: rational_from_string(f_t, "witness.f_t")?,
                g_t: rational_from_string(g_t, "witness.g_t")?,
                h_t: rational_from_string(h_t, "witness.h_t")?,
            },
        })
    }
}

impl SolutionFile {
    pub fn from_solution_set(set: &SolutionSet) -> Self {
        SolutionFile {
            problem_hash: set.problem_fingerprint.clone(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            domain: set.domain.clone(),
            override_used: set.override_used,
            records: set
                .records
                .iter()
                .map(|r| RecordSchema {
                    point: PointSchema::from_point(&r.point),
                    witness: WitnessSchema::from_witness(&r.witness),
                })
                .collect(),
        }
    }

    pub fn to_solution_set(&self) -> Result<SolutionSet> {
        Ok(SolutionSet {
            problem_fingerprint: self.problem_hash.clone(),
            domain: self.domain.clone(),
            override_used: self.override_used,
            records: self
                .records
                .iter()
                .map(|r| {
                    Ok(SolutionRecord {
                        point: r.point.to_point()?,
                        witness: r.witness.to_witness()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

pub fn read_solutions(path: &std::path::Path) -> Result<SolutionSet> {
    let text = std::fs::read_to_string(path)?;
    let file: SolutionFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.to_solution_set()
}

pub fn read_problem(path: &std::path::Path) -> Result<Problem> {
    let text = std::fs::read_to_string(path)?;
    let file: ProblemFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.to_problem()
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serialization is total");
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sring::rat;

    fn poly_x_plus_1() -> PolySchema {
        PolySchema {
            arity: 2,
            terms: vec![
                TermSchema {
                    exponents: vec![1, 0],
                    numerator: "1".into(),
                    denominator: "1".into(),
                },
                TermSchema {
                    exponents: vec![0, 0],
                    numerator: "1".into(),
                    denominator: "1".into(),
                },
            ],
        }
    }

    #[test]
    fn poly_roundtrip() {
        let p = poly_x_plus_1().to_poly("f").unwrap();
        assert_eq!(p.eval(&[rat(2), rat(0)]).unwrap(), rat(3));
        let back = PolySchema::from_poly(&p);
        let again = back.to_poly("f").unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn parse_errors_carry_context() {
        let mut bad = poly_x_plus_1();
        bad.terms[0].exponents = vec![1];
        let err = bad.to_poly("pairs[0].f").unwrap_err();
        assert!(err.to_string().contains("pairs[0].f"));
        let mut bad = poly_x_plus_1();
        bad.terms[1].denominator = "0".into();
        assert!(bad.to_poly("f").is_err());
    }

    #[test]
    fn fingerprint_stable_and_sensitive() {
        let mk = |s: &[u64]| {
            let x = MultiPoly::var(2, 0);
            let one = MultiPoly::constant(2, rat(1));
            Problem::Divisibility(
                DivisibilityProblem::new(vec![(x, one)], PrimeSet::new(s.iter().copied()).unwrap())
                    .unwrap(),
            )
        };
        let a = problem_fingerprint(&mk(&[]));
        let b = problem_fingerprint(&mk(&[]));
        let c = problem_fingerprint(&mk(&[2]));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 64);
    }
}
