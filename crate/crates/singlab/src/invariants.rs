//! Per-germ invariants: the Kouchnirenko non-degeneracy verdict with a
//! witness face, the Milnor number by two routes (Newton number on the
//! non-degenerate convenient path, Macaulay-truncation oracle otherwise),
//! multiplicity, and hyperplane-section Milnor numbers.

use crate::error::{Error, Result};
use crate::exec;
use crate::ideal::empty_on_torus;
use crate::ideal::macaulay::{local_quotient_dim, MacaulayFrame};
use crate::newton::{
    face_polynomial, newton_complex, newton_number_stabilized, Face, NewtonComplex,
};
use crate::poly::{HyperplaneSpec, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default cap for the Macaulay truncation schedule.
pub const DEFAULT_ORACLE_CAP: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegeneracyVerdict {
    pub nondegenerate: bool,
    /// A face whose face-polynomial partials share a zero with all
    /// coordinates nonzero; present iff `nondegenerate` is false.
    pub witness: Option<Face>,
    /// Number of faces actually put through the torus test.
    pub faces_checked: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuRoute {
    Newton,
    Macaulay,
}

impl MuRoute {
    pub fn as_str(&self) -> &'static str {
        match self {
            MuRoute::Newton => "newton",
            MuRoute::Macaulay => "macaulay",
        }
    }
}

/// How the Kouchnirenko equality `mu = nu` entered the report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KouchnirenkoStatus {
    /// Non-degenerate convenient germ: `mu` was taken from `nu`.
    EqualityApplied,
    /// Both routes ran and were checked equal.
    VerifiedEqual,
    /// The germ is degenerate; only `mu >= nu` is available.
    InapplicableDegenerate,
    /// The germ is not convenient; `nu` is the stabilized value and only
    /// `mu >= nu` is available.
    InapplicableNonConvenient,
}

impl KouchnirenkoStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            KouchnirenkoStatus::EqualityApplied => "equality-applied",
            KouchnirenkoStatus::VerifiedEqual => "verified-equal",
            KouchnirenkoStatus::InapplicableDegenerate => "inapplicable-degenerate",
            KouchnirenkoStatus::InapplicableNonConvenient => "inapplicable-non-convenient",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub mu: Option<BigInt>,
    pub mu_route: Option<MuRoute>,
    /// True iff the Macaulay certificate held or the Kouchnirenko equality
    /// applied.
    pub mu_certified: bool,
    pub nu: BigInt,
    pub nu_stabilized: bool,
    pub mult: u64,
    pub convenient: bool,
    pub nondeg: NondegeneracyVerdict,
    pub kouchnirenko: KouchnirenkoStatus,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    /// Run both Milnor routes and assert agreement where they must agree.
    pub verify: bool,
    /// Override for the Macaulay truncation cap.
    pub oracle_cap: Option<u32>,
}

/// Torus test over every compact face of every dimension. Vertices are
/// skipped: the partials of a single monomial cannot all vanish where every
/// coordinate is nonzero (each nonzero partial is itself a monomial).
pub fn check_nondegenerate(f: &Polynomial) -> Result<NondegeneracyVerdict> {
    let complex = newton_complex(&f.support())?;
    check_nondegenerate_with(f, &complex, false)
}

/// Same scan with the complex supplied; `include_vertices` forces the full
/// torus test on 0-dimensional faces (used to validate the vertex shortcut).
pub fn check_nondegenerate_with(
    f: &Polynomial,
    complex: &NewtonComplex,
    include_vertices: bool,
) -> Result<NondegeneracyVerdict> {
    if f.is_parametric() {
        return Err(Error::ParametricInput);
    }
    let min_dim = usize::from(!include_vertices);
    let faces: Vec<&Face> = complex
        .faces_by_dim
        .iter()
        .skip(min_dim)
        .flatten()
        .collect();
    let verdicts = exec::map_slice(&faces, |face| -> Result<bool> {
        let fg = face_polynomial(f, face)?;
        let partials: Vec<Polynomial> = (0..f.nvars())
            .map(|i| fg.differentiate(i))
            .collect::<Result<_>>()?;
        empty_on_torus(&partials)
    });
    let mut witness = None;
    for (face, verdict) in faces.iter().zip(verdicts) {
        if !verdict? {
            witness = Some((*face).clone());
            break;
        }
    }
    Ok(NondegeneracyVerdict {
        nondegenerate: witness.is_none(),
        witness,
        faces_checked: faces.len(),
    })
}

/// Milnor number through the Kouchnirenko equality: requires a convenient,
/// non-degenerate germ and returns its Newton number.
pub fn milnor_newton(f: &Polynomial) -> Result<BigInt> {
    let support = f.support();
    let complex = newton_complex(&support)?;
    if !complex.convenient {
        return Err(Error::NotConvenient);
    }
    if !check_nondegenerate_with(f, &complex, false)?.nondegenerate {
        return Err(Error::DegenerateInput);
    }
    crate::newton::newton_number(&support)
}

/// Milnor number as the certified local Jacobian-quotient dimension. The
/// truncation level starts at twice the multiplicity and grows by 2 until
/// the Nakayama certificate holds.
pub fn milnor_oracle(f: &Polynomial, cap: Option<u32>) -> Result<(u64, MacaulayFrame)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_parametric() {
        return Err(Error::ParametricInput);
    }
    let cap = cap.unwrap_or(DEFAULT_ORACLE_CAP);
    let partials: Vec<Polynomial> = (0..f.nvars())
        .map(|i| f.differentiate(i))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    if partials.is_empty() {
        return Err(Error::NotIsolated { cap });
    }
    let mult = f.multiplicity()?;
    let start = (2 * mult).clamp(2, u64::from(u32::MAX)) as u32;
    let mut level = start;
    while level <= cap {
        let frame = local_quotient_dim(&partials, level)?;
        if frame.certificate {
            return Ok((frame.quotient_dim as u64, frame));
        }
        level += 2;
    }
    Err(Error::NotIsolated { cap })
}

/// Milnor number of the germ cut by an explicit hyperplane.
pub fn section_milnor(f: &Polynomial, h: &HyperplaneSpec, cap: Option<u32>) -> Result<u64> {
    let section = f.substitute_hyperplane(h)?;
    if section.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(milnor_oracle(&section, cap)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSectionReport {
    /// Minimum Milnor number over the sampled hyperplanes; generic sections
    /// minimize the sectional Milnor number, so this is the best estimate.
    pub min_mu: u64,
    pub samples: usize,
    /// Samples whose section was not an isolated singularity (skipped).
    pub skipped: usize,
}

/// Genericity heuristic: sample seeded random rational hyperplanes through
/// the `var` axis and report the minimum sectional Milnor number.
pub fn section_milnor_random(
    f: &Polynomial,
    var: usize,
    samples: usize,
    seed: u64,
    cap: Option<u32>,
) -> Result<RandomSectionReport> {
    if var >= f.nvars() {
        return Err(Error::IndexOutOfRange {
            index: var,
            nvars: f.nvars(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = cap.unwrap_or(DEFAULT_ORACLE_CAP);
    let specs: Vec<HyperplaneSpec> = (0..samples)
        .map(|_| {
            let coeffs: Vec<BigRational> = (0..f.nvars())
                .map(|j| {
                    if j == var {
                        BigRational::from_integer(0.into())
                    } else {
                        let num: i64 = rng.gen_range(-9..=9);
                        let den: i64 = rng.gen_range(1..=4);
                        BigRational::new(num.into(), den.into())
                    }
                })
                .collect();
            HyperplaneSpec::new(var, coeffs).expect("zero coefficient at the eliminated variable")
        })
        .collect();
    let results = exec::map_slice(&specs, |h| section_milnor(f, h, Some(cap)));
    let mut min_mu: Option<u64> = None;
    let mut skipped = 0usize;
    for r in results {
        match r {
            Ok(mu) => min_mu = Some(min_mu.map_or(mu, |m| m.min(mu))),
            Err(Error::NotIsolated { .. }) | Err(Error::ZeroPolynomial) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    match min_mu {
        Some(min_mu) => Ok(RandomSectionReport {
            min_mu,
            samples,
            skipped,
        }),
        None => Err(Error::NotIsolated { cap }),
    }
}

/// Full per-germ report. The Milnor route is the cheapest sound one unless
/// `verify` asks for both; degenerate or non-convenient germs go through
/// the Macaulay oracle, with `nu` still reported (stabilized if needed).
pub fn analyze(f: &Polynomial, opts: &AnalyzeOptions) -> Result<InvariantReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_parametric() {
        return Err(Error::ParametricInput);
    }
    if f.has_constant_term() {
        return Err(Error::OriginInSupport);
    }
    let support = f.support();
    let complex = newton_complex(&support)?;
    let convenient = complex.convenient;
    let nondeg = check_nondegenerate_with(f, &complex, false)?;
    let mult = f.multiplicity()?;
    let stab = newton_number_stabilized(&support)?;
    let nu = stab.value.clone();

    let newton_eligible = convenient && nondeg.nondegenerate;
    let (mu, mu_route, kouchnirenko) = if newton_eligible {
        if opts.verify {
            let (oracle_mu, _) = milnor_oracle(f, opts.oracle_cap)?;
            if BigInt::from(oracle_mu) != nu {
                return Err(Error::RouteMismatch {
                    newton: nu.clone(),
                    macaulay: BigInt::from(oracle_mu),
                });
            }
            (
                nu.clone(),
                MuRoute::Newton,
                KouchnirenkoStatus::VerifiedEqual,
            )
        } else {
            (
                nu.clone(),
                MuRoute::Newton,
                KouchnirenkoStatus::EqualityApplied,
            )
        }
    } else {
        let (oracle_mu, _) = milnor_oracle(f, opts.oracle_cap)?;
        let mu = BigInt::from(oracle_mu);
        // Kouchnirenko inequality must hold against the (stabilized) nu
        if mu < nu {
            return Err(Error::RouteMismatch {
                newton: nu.clone(),
                macaulay: mu,
            });
        }
        let status = if !nondeg.nondegenerate {
            KouchnirenkoStatus::InapplicableDegenerate
        } else {
            KouchnirenkoStatus::InapplicableNonConvenient
        };
        (mu, MuRoute::Macaulay, status)
    };

    Ok(InvariantReport {
        mu: Some(mu),
        mu_route: Some(mu_route),
        mu_certified: true,
        nu,
        nu_stabilized: stab.stabilized,
        mult,
        convenient,
        nondeg,
        kouchnirenko,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn poly(text: &str, names: &[&str]) -> Polynomial {
        parse_poly(text, &vars(names), None).unwrap()
    }

    #[test]
    fn morse_is_nondegenerate() {
        let v = check_nondegenerate(&poly("x^2 + y^2", &["x", "y"])).unwrap();
        assert!(v.nondegenerate);
        assert!(v.witness.is_none());
        assert_eq!(v.faces_checked, 1);
    }

    #[test]
    fn perfect_square_is_degenerate() {
        let v = check_nondegenerate(&poly("x^2 + 2*x*y + y^2", &["x", "y"])).unwrap();
        assert!(!v.nondegenerate);
        let w = v.witness.unwrap();
        assert_eq!(w.dim, 1);
        assert_eq!(w.points.len(), 3);
        // coefficient 3 instead: distinct roots, non-degenerate
        let v3 = check_nondegenerate(&poly("x^2 + 3*x*y + y^2", &["x", "y"])).unwrap();
        assert!(v3.nondegenerate);
    }

    #[test]
    fn deformed_quintic_is_degenerate() {
        let f1 = poly(
            "x^5 + y^6 + z^5 + y^3*z^2 + 2*x^2*y^2*z + x^4*y",
            &["x", "y", "z"],
        );
        let v = check_nondegenerate(&f1).unwrap();
        assert!(!v.nondegenerate);
        assert!(v.witness.is_some());
    }

    #[test]
    fn vertex_shortcut_is_sound() {
        for text in [
            "x^2 + y^2",
            "x^2 + 2*x*y + y^2",
            "x^5 + y^6 + z^5 + y^3*z^2",
            "x^3 + x*y + y^3",
            "x*y",
        ] {
            let names: &[&str] = if text.contains('z') {
                &["x", "y", "z"]
            } else {
                &["x", "y"]
            };
            let f = poly(text, names);
            let complex = newton_complex(&f.support()).unwrap();
            let fast = check_nondegenerate_with(&f, &complex, false).unwrap();
            let full = check_nondegenerate_with(&f, &complex, true).unwrap();
            assert_eq!(fast.nondegenerate, full.nondegenerate, "on {text}");
        }
    }

    #[test]
    fn milnor_newton_examples() {
        assert_eq!(
            milnor_newton(&poly("x^5 + y^6 + z^5 + y^3*z^2", &["x", "y", "z"])).unwrap(),
            BigInt::from(68)
        );
        assert_eq!(
            milnor_newton(&poly("x^3 + y^2", &["x", "y"])).unwrap(),
            BigInt::from(2)
        );
        assert!(matches!(
            milnor_newton(&poly("x^2 + 2*x*y + y^2", &["x", "y"])).unwrap_err(),
            Error::DegenerateInput
        ));
        assert!(matches!(
            milnor_newton(&poly("x^5 + y*z^7 + y^15 + x*z^6", &["x", "y", "z"])).unwrap_err(),
            Error::NotConvenient
        ));
    }

    #[test]
    fn milnor_oracle_examples() {
        assert_eq!(
            milnor_oracle(&poly("x^2 + y^2", &["x", "y"]), None)
                .unwrap()
                .0,
            1
        );
        for a in 1..=6u64 {
            for b in 1..=6u64 {
                let f = poly(&format!("x^{} + y^{}", a + 1, b + 1), &["x", "y"]);
                assert_eq!(milnor_oracle(&f, None).unwrap().0, a * b);
            }
        }
    }

    #[test]
    fn milnor_oracle_quintic() {
        let (mu, frame) =
            milnor_oracle(&poly("x^5 + y^6 + z^5 + y^3*z^2", &["x", "y", "z"]), None).unwrap();
        assert_eq!(mu, 68);
        assert!(frame.certificate);
    }

    #[test]
    fn oracle_rejects_non_isolated() {
        // x*y^2 is critical along the whole x-axis
        assert!(matches!(
            milnor_oracle(&poly("x*y^2", &["x", "y"]), Some(20)).unwrap_err(),
            Error::NotIsolated { cap: 20 }
        ));
        assert!(matches!(
            milnor_oracle(&poly("x^2", &["x", "y"]), Some(12)).unwrap_err(),
            Error::NotIsolated { .. }
        ));
    }

    #[test]
    fn cross_term_is_a_morse_point() {
        // the gradient of xy is (y, x): isolated critical point, mu = 1
        let f = poly("x*y", &["x", "y"]);
        assert_eq!(milnor_oracle(&f, None).unwrap().0, 1);
        let report = analyze(&f, &AnalyzeOptions::default()).unwrap();
        assert_eq!(report.mu, Some(BigInt::from(1)));
        assert_eq!(report.nu, BigInt::from(1));
        assert!(report.nu_stabilized);
        assert!(!report.convenient);
    }

    #[test]
    fn oracle_scale_invariance() {
        let f = poly("x^3 + x*y^3", &["x", "y"]);
        let mu = milnor_oracle(&f, None).unwrap().0;
        for c in [2i64, -3, 7] {
            let scaled = f.scale(&BigRational::from_integer(c.into()));
            assert_eq!(milnor_oracle(&scaled, None).unwrap().0, mu);
        }
    }

    #[test]
    fn section_milnor_examples() {
        let v3 = &["x", "y", "z"];
        let sphere = poly("x^2 + y^2 + z^2", v3);
        let h = HyperplaneSpec::coordinate(2, 3).unwrap();
        assert_eq!(section_milnor(&sphere, &h, None).unwrap(), 1);

        // z = x section of x^3 + y^3 + z^3 is 2x^3 + y^3
        let cubic = poly("x^3 + y^3 + z^3", v3);
        let mut coeffs = vec![BigRational::from_integer(0.into()); 3];
        coeffs[0] = BigRational::from_integer(1.into());
        let hx = HyperplaneSpec::new(2, coeffs).unwrap();
        assert_eq!(section_milnor(&cubic, &hx, None).unwrap(), 4);
    }

    #[test]
    fn analyze_quintic_base() {
        let report = analyze(
            &poly("x^5 + y^6 + z^5 + y^3*z^2", &["x", "y", "z"]),
            &AnalyzeOptions::default(),
        )
        .unwrap();
        assert_eq!(report.mu, Some(BigInt::from(68)));
        assert_eq!(report.nu, BigInt::from(68));
        assert_eq!(report.mult, 5);
        assert!(report.convenient);
        assert!(report.nondeg.nondegenerate);
        assert_eq!(report.mu_route, Some(MuRoute::Newton));
        assert_eq!(report.kouchnirenko, KouchnirenkoStatus::EqualityApplied);
    }

    #[test]
    fn analyze_deformed_quintic_verify_mode() {
        let report = analyze(
            &poly(
                "x^5 + y^6 + z^5 + y^3*z^2 + 2*x^2*y^2*z + x^4*y",
                &["x", "y", "z"],
            ),
            &AnalyzeOptions {
                verify: true,
                oracle_cap: None,
            },
        )
        .unwrap();
        assert_eq!(report.mu, Some(BigInt::from(68)));
        assert_eq!(report.nu, BigInt::from(67));
        assert!(!report.nondeg.nondegenerate);
        assert_eq!(report.mu_route, Some(MuRoute::Macaulay));
        assert_eq!(
            report.kouchnirenko,
            KouchnirenkoStatus::InapplicableDegenerate
        );
        assert!(report.mu_certified);
    }

    #[test]
    fn analyze_morse() {
        let report = analyze(&poly("x^2 + y^2", &["x", "y"]), &AnalyzeOptions::default()).unwrap();
        assert_eq!(report.mu, Some(BigInt::from(1)));
        assert_eq!(report.nu, BigInt::from(1));
        assert_eq!(report.mult, 2);
        assert!(report.convenient && report.nondeg.nondegenerate);
    }

    #[test]
    fn analyze_is_permutation_invariant() {
        let f = poly("x^5 + y^6 + z^5 + y^3*z^2", &["x", "y", "z"]);
        let base = analyze(&f, &AnalyzeOptions::default()).unwrap();
        for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
            let g = f.permute_vars(&perm).unwrap();
            let r = analyze(&g, &AnalyzeOptions::default()).unwrap();
            assert_eq!(r.mu, base.mu);
            assert_eq!(r.nu, base.nu);
            assert_eq!(r.mult, base.mult);
            assert_eq!(r.convenient, base.convenient);
            assert_eq!(r.nondeg.nondegenerate, base.nondeg.nondegenerate);
        }
    }

    #[test]
    fn analyze_rejects_constant_term() {
        assert!(matches!(
            analyze(&poly("1 + x", &["x", "y"]), &AnalyzeOptions::default()).unwrap_err(),
            Error::OriginInSupport
        ));
    }
}
