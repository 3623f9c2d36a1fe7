//! One-parameter deformation analysis: per-sample invariants, mu-constancy,
//! equimultiplicity, family non-degeneracy, the topological-triviality
//! verdict, and the control function built from the Newton vertices of a
//! deformed member.
//!
//! Constancy "for small t" is certified at sampled rationals only; the
//! sampled invariants are constant on a Zariski-open set of the parameter
//! line, so agreement of the base with several independent samples is
//! reported as a yes, and disagreement among nonzero samples (a sampling
//! artifact) as inconclusive.

use crate::error::{Error, Result};
use crate::exec;
use crate::invariants::{analyze, AnalyzeOptions, InvariantReport};
use crate::newton::newton_complex;
use crate::poly::{ExponentVector, Polynomial};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// A deformation `F(z, t)` of the germ `f = F(z, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationFamily {
    poly: Polynomial,
}

impl DeformationFamily {
    /// The base specialization must be a nonzero germ vanishing at z = 0.
    pub fn new(poly: Polynomial) -> Result<Self> {
        let base = poly.specialize(&BigRational::zero());
        if base.is_zero() {
            return Err(Error::InvalidFamily {
                message: "F(z, 0) is the zero polynomial".into(),
            });
        }
        if base.has_constant_term() {
            return Err(Error::InvalidFamily {
                message: "F(0, 0) != 0".into(),
            });
        }
        Ok(DeformationFamily { poly })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// The undeformed germ `F(., 0)`.
    pub fn base(&self) -> Polynomial {
        self.poly.specialize(&BigRational::zero())
    }

    pub fn at(&self, t0: &BigRational) -> Polynomial {
        self.poly.specialize(t0)
    }
}

/// Deterministic nonzero sample parameters of small height: `1, 1/2, 1/3`
/// first, then seeded extras.
pub fn sample_params(count: usize, seed: u64) -> Vec<BigRational> {
    let defaults = [(1i64, 1i64), (1, 2), (1, 3)];
    let mut out: Vec<BigRational> = defaults
        .iter()
        .take(count)
        .map(|&(n, d)| BigRational::new(n.into(), d.into()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let num: i64 = rng.gen_range(1..=9);
        let den: i64 = rng.gen_range(1..=9);
        let candidate = BigRational::new(num.into(), den.into());
        if !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleRecord {
    pub t0: BigRational,
    pub report: InvariantReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    Inconclusive,
}

impl TriState {
    pub fn as_str(&self) -> &'static str {
        match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyVerdict {
    TopologicallyTrivialAndEquimultiple,
    NotApplicableDegenerate,
    MuNotConstant,
    Inconclusive,
}

impl FamilyVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyVerdict::TopologicallyTrivialAndEquimultiple => {
                "topologically-trivial-and-equimultiple"
            }
            FamilyVerdict::NotApplicableDegenerate => "not-applicable-degenerate",
            FamilyVerdict::MuNotConstant => "mu-not-constant",
            FamilyVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Verdict logic: a degenerate member disqualifies the theorem outright;
/// otherwise mu-constancy decides; a trivial verdict requires both yes.
pub fn verdict(mu_constant: TriState, family_nondegenerate: TriState) -> FamilyVerdict {
    if family_nondegenerate == TriState::No {
        FamilyVerdict::NotApplicableDegenerate
    } else if mu_constant == TriState::No {
        FamilyVerdict::MuNotConstant
    } else if mu_constant == TriState::Yes && family_nondegenerate == TriState::Yes {
        FamilyVerdict::TopologicallyTrivialAndEquimultiple
    } else {
        FamilyVerdict::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ControlFunction {
    /// The Newton vertices of the specialized germ.
    pub vertices: Vec<ExponentVector>,
    /// `rho(z) = sum over vertices of z^alpha * conj(z)^alpha`.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub base: SampleRecord,
    pub samples: Vec<SampleRecord>,
    pub mu_constant: TriState,
    pub equimultiple: TriState,
    pub family_nondegenerate: TriState,
    pub newton_boundary_constant: bool,
    pub verdict: FamilyVerdict,
    pub control: ControlFunction,
}

#[derive(Clone, Copy, Debug)]
pub struct FamilyOptions {
    pub samples: usize,
    pub seed: u64,
    pub verify: bool,
    pub oracle_cap: Option<u32>,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            samples: 3,
            seed: 0,
            verify: false,
            oracle_cap: None,
        }
    }
}

/// Analyze the base and the sampled members, decide the tri-states, check
/// Milnor semicontinuity against the base, and render the verdict.
pub fn analyze_family(fam: &DeformationFamily, opts: &FamilyOptions) -> Result<FamilyReport> {
    let analyze_opts = AnalyzeOptions {
        verify: opts.verify,
        oracle_cap: opts.oracle_cap,
    };
    let ts = sample_params(opts.samples.max(1), opts.seed);

    let base_report = analyze(&fam.base(), &analyze_opts)?;
    let sample_reports = exec::map_slice(&ts, |t0| -> Result<SampleRecord> {
        Ok(SampleRecord {
            t0: t0.clone(),
            report: analyze(&fam.at(t0), &analyze_opts)?,
        })
    });
    let mut samples = Vec::with_capacity(ts.len());
    for record in sample_reports {
        samples.push(record?);
    }

    let base_mu = base_report.mu.clone().expect("analyze always reports mu");
    for record in &samples {
        let mu = record.report.mu.clone().expect("analyze always reports mu");
        if mu > base_mu {
            return Err(Error::SemicontinuityViolation {
                t0: record.t0.clone(),
                mu_base: base_mu,
                mu_sample: mu,
            });
        }
    }

    let mu_constant = constancy(
        &base_mu,
        samples.iter().map(|s| s.report.mu.clone().unwrap()),
    );
    let equimultiple = constancy(&base_report.mult, samples.iter().map(|s| s.report.mult));
    let family_nondegenerate = if base_report.nondeg.nondegenerate
        && samples.iter().all(|s| s.report.nondeg.nondegenerate)
    {
        TriState::Yes
    } else {
        TriState::No
    };
    let verdict = verdict(mu_constant, family_nondegenerate);

    let newton_boundary_constant = boundary_constant(fam, &ts)?;
    let control = control_function(fam, &ts[0])?;

    Ok(FamilyReport {
        base: SampleRecord {
            t0: BigRational::zero(),
            report: base_report,
        },
        samples,
        mu_constant,
        equimultiple,
        family_nondegenerate,
        newton_boundary_constant,
        verdict,
        control,
    })
}

/// Yes if every sample agrees with the base, inconclusive if the nonzero
/// samples disagree among themselves, no otherwise.
fn constancy<T: PartialEq>(base: &T, samples: impl Iterator<Item = T>) -> TriState {
    let values: Vec<T> = samples.collect();
    if values.iter().all(|v| v == base) {
        return TriState::Yes;
    }
    if values.windows(2).all(|w| w[0] == w[1]) {
        TriState::No
    } else {
        TriState::Inconclusive
    }
}

/// The control function `rho(z) = sum_{alpha in ver(F_t)} z^alpha conj(z)^alpha`
/// of the member at `t0`.
pub fn control_function(fam: &DeformationFamily, t0: &BigRational) -> Result<ControlFunction> {
    let member = fam.at(t0);
    if member.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let complex = newton_complex(&member.support())?;
    let vertices = complex.vertices();
    let names = member.varnames();
    let mut terms: Vec<String> = Vec::with_capacity(vertices.len());
    for alpha in &vertices {
        let mut factors: Vec<String> = Vec::new();
        for (i, &e) in alpha.entries().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let power = if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            };
            factors.push(power);
        }
        let monomial = factors.join("*");
        terms.push(format!("{monomial}*conj({monomial})"));
    }
    Ok(ControlFunction {
        vertices,
        text: format!("rho(z) = {}", terms.join(" + ")),
    })
}

/// True iff the compact face complexes (as point sets) of the base and all
/// sampled members coincide. The main verdict does not require this; it is
/// reported for information.
pub fn check_newton_boundary_constant(
    fam: &DeformationFamily,
    samples: &[BigRational],
) -> Result<bool> {
    boundary_constant(fam, samples)
}

fn boundary_constant(fam: &DeformationFamily, samples: &[BigRational]) -> Result<bool> {
    let shape = |p: &Polynomial| -> Result<BTreeSet<Vec<ExponentVector>>> {
        let complex = newton_complex(&p.support())?;
        Ok(complex.all_faces().map(|f| f.points.clone()).collect())
    };
    let base_shape = shape(&fam.base())?;
    for t0 in samples {
        if shape(&fam.at(t0))? != base_shape {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use num_bigint::BigInt;

    fn family(text: &str, names: &[&str]) -> DeformationFamily {
        let v: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        DeformationFamily::new(parse_poly(text, &v, Some("t")).unwrap()).unwrap()
    }

    #[test]
    fn sample_defaults() {
        let s = sample_params(3, 0);
        assert_eq!(
            s,
            vec![
                BigRational::new(1.into(), 1.into()),
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 3.into()),
            ]
        );
        assert_eq!(
            sample_params(1, 0),
            vec![BigRational::new(1.into(), 1.into())]
        );
        // deterministic and distinct beyond the defaults
        let a = sample_params(8, 42);
        let b = sample_params(8, 42);
        assert_eq!(a, b);
        let set: std::collections::BTreeSet<_> = a.iter().collect();
        assert_eq!(set.len(), 8);
        assert!(a.iter().all(|t| !t.is_zero()));
        assert_ne!(sample_params(8, 43)[3..], a[3..]);
    }

    #[test]
    fn verdict_truth_table() {
        use TriState::{Inconclusive, No, Yes};
        for mu in [Yes, No, Inconclusive] {
            for nd in [Yes, No, Inconclusive] {
                let v = verdict(mu, nd);
                // the trivial verdict appears exactly for (yes, yes)
                assert_eq!(
                    v == FamilyVerdict::TopologicallyTrivialAndEquimultiple,
                    mu == Yes && nd == Yes
                );
                if nd == No {
                    assert_eq!(v, FamilyVerdict::NotApplicableDegenerate);
                } else if mu == No {
                    assert_eq!(v, FamilyVerdict::MuNotConstant);
                }
            }
        }
    }

    #[test]
    fn family_validation() {
        let v: Vec<String> = vec!["x".into(), "y".into()];
        let zero_base = parse_poly("t*x", &v, Some("t")).unwrap();
        assert!(DeformationFamily::new(zero_base).is_err());
        let constant = parse_poly("1 + x", &v, Some("t")).unwrap();
        assert!(DeformationFamily::new(constant).is_err());
        let fine = parse_poly("x^2 + y^2 + t*x*y", &v, Some("t")).unwrap();
        assert!(DeformationFamily::new(fine).is_ok());
    }

    #[test]
    fn constant_family_control_function() {
        let fam = family("x^2 + y^2", &["x", "y"]);
        let c = control_function(&fam, &BigRational::new(1.into(), 1.into())).unwrap();
        assert_eq!(c.vertices.len(), 2);
        assert_eq!(c.text, "rho(z) = y^2*conj(y^2) + x^2*conj(x^2)");
        assert!(check_newton_boundary_constant(&fam, &sample_params(3, 0)).unwrap());
    }

    #[test]
    fn degenerate_quintic_family_report() {
        let fam = family(
            "x^5 + y^6 + z^5 + y^3*z^2 + 2*t*x^2*y^2*z + t^2*x^4*y",
            &["x", "y", "z"],
        );
        let report = analyze_family(&fam, &FamilyOptions::default()).unwrap();
        assert_eq!(report.base.report.mu, Some(BigInt::from(68)));
        assert_eq!(report.base.report.nu, BigInt::from(68));
        for s in &report.samples {
            assert_eq!(s.report.mu, Some(BigInt::from(68)));
            assert_eq!(s.report.nu, BigInt::from(67));
            assert!(!s.report.nondeg.nondegenerate);
        }
        assert_eq!(report.mu_constant, TriState::Yes);
        assert_eq!(report.equimultiple, TriState::Yes);
        assert_eq!(report.family_nondegenerate, TriState::No);
        assert_eq!(report.verdict, FamilyVerdict::NotApplicableDegenerate);
        assert!(!report.newton_boundary_constant);
    }

    #[test]
    fn control_vertices_of_deformed_members() {
        let one = BigRational::new(1.into(), 1.into());
        // all six support points of the degree-13/20 member are vertices
        let fam = family(
            "x^13 + y^20 + z*x^6*y^5 + t*x^6*y^8 + t^2*x^10*y^3 + z^7",
            &["x", "y", "z"],
        );
        let c = control_function(&fam, &one).unwrap();
        assert_eq!(c.vertices.len(), 6);
        // the x^2 y^2 z monomial of the deformed quintic is a midpoint of an
        // edge, so only five of the six support points are vertices
        let fam = family(
            "x^5 + y^6 + z^5 + y^3*z^2 + 2*t*x^2*y^2*z + t^2*x^4*y",
            &["x", "y", "z"],
        );
        let c = control_function(&fam, &one).unwrap();
        assert_eq!(c.vertices.len(), 5);
        assert!(!c
            .vertices
            .contains(&crate::poly::ExponentVector::new(vec![2, 2, 1])));
    }

    #[test]
    fn semicontinuity_violation_detected() {
        // F = (x^3 - x^2) + t x^2: at t=1 the member x^3 has mu 2 > mu 1
        let fam = family("x^3 - x^2 + t*x^2", &["x"]);
        match analyze_family(&fam, &FamilyOptions::default()) {
            Err(Error::SemicontinuityViolation {
                mu_base, mu_sample, ..
            }) => {
                assert_eq!(mu_base, BigInt::from(1));
                assert_eq!(mu_sample, BigInt::from(2));
            }
            other => panic!("expected a semicontinuity violation, got {other:?}"),
        }
    }

    #[test]
    fn non_convenient_family_boundary_moves() {
        let fam = family("x^5 + y*z^7 + y^15 + t*x*z^6", &["x", "y", "z"]);
        assert!(!check_newton_boundary_constant(&fam, &sample_params(1, 0)).unwrap());
    }
}
