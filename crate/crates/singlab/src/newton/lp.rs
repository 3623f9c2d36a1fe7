//! Exact linear feasibility by Fourier-Motzkin elimination.
//!
//! Strict positivity is handled by scaling: the face-selection system is
//! homogeneous, so a solution with margin delta > 0 exists iff one with
//! delta = 1 does. All constraints are therefore non-strict `a . x >= b`.

use crate::poly::ExponentVector;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// `coeffs . x >= rhs`
#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Constraint {
    fn last_active_var(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Primitive integer key for deduplication: the coefficient vector scaled
    /// to coprime integers, together with the correspondingly scaled rhs.
    fn normalized(&self) -> (Vec<BigInt>, BigRational) {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * &lcm).to_integer())
            .collect();
        let mut gcd = BigInt::zero();
        for v in &scaled {
            gcd = gcd.gcd(v);
        }
        if gcd.is_zero() {
            return (scaled, self.rhs.clone());
        }
        let scale = BigRational::new(lcm, gcd.clone());
        (
            scaled.iter().map(|v| v / &gcd).collect(),
            &self.rhs * &scale,
        )
    }
}

/// Find any exact rational point satisfying every constraint, or `None`.
pub(crate) fn feasible_point(
    nvars: usize,
    constraints: Vec<Constraint>,
) -> Option<Vec<BigRational>> {
    // systems[k] involves only variables 0..k
    let mut systems: Vec<Vec<Constraint>> = Vec::with_capacity(nvars + 1);
    systems.push(dedup(constraints));
    for k in (0..nvars).rev() {
        let next = eliminate(systems.last().unwrap(), k);
        systems.push(dedup(next));
    }
    // systems[nvars] is variable-free: feasible iff every rhs <= 0
    if systems[nvars].iter().any(|c| c.rhs.is_positive()) {
        return None;
    }

    let mut point = vec![BigRational::zero(); nvars];
    for k in 0..nvars {
        // bounds for variable k come from the system that still contains it
        let sys = &systems[nvars - 1 - k];
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for c in sys {
            let a = &c.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let mut rest = c.rhs.clone();
            for (i, coeff) in c.coeffs.iter().enumerate().take(k) {
                rest -= coeff * &point[i];
            }
            let bound = rest / a;
            if a.is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        point[k] = match (lower, upper) {
            (Some(l), _) => l,
            (None, Some(u)) => u,
            (None, None) => BigRational::zero(),
        };
    }
    Some(point)
}

fn eliminate(constraints: &[Constraint], var: usize) -> Vec<Constraint> {
    let mut lows: Vec<&Constraint> = Vec::new();
    let mut highs: Vec<&Constraint> = Vec::new();
    let mut out: Vec<Constraint> = Vec::new();
    for c in constraints {
        debug_assert!(c.last_active_var().is_none_or(|v| v <= var));
        if c.coeffs[var].is_zero() {
            out.push(c.clone());
        } else if c.coeffs[var].is_positive() {
            lows.push(c);
        } else {
            highs.push(c);
        }
    }
    for low in &lows {
        let a = &low.coeffs[var];
        for high in &highs {
            let b = &high.coeffs[var]; // negative
                                       // (-b) * low + a * high cancels the variable; both multipliers > 0
            let mb = -b;
            let coeffs: Vec<BigRational> = low
                .coeffs
                .iter()
                .zip(&high.coeffs)
                .map(|(lc, hc)| lc * &mb + hc * a)
                .collect();
            let rhs = &low.rhs * &mb + &high.rhs * a;
            out.push(Constraint { coeffs, rhs });
        }
    }
    out
}

/// Drop tautologies and keep only the strongest rhs per coefficient vector.
fn dedup(constraints: Vec<Constraint>) -> Vec<Constraint> {
    let mut best: HashMap<Vec<BigInt>, Constraint> = HashMap::new();
    let mut order: Vec<Vec<BigInt>> = Vec::new();
    for c in constraints {
        let (key, rhs) = c.normalized();
        if key.iter().all(Zero::is_zero) && !rhs.is_positive() {
            continue; // 0 >= nonpositive
        }
        match best.get_mut(&key) {
            None => {
                order.push(key.clone());
                let coeffs = key
                    .iter()
                    .map(|v| BigRational::from_integer(v.clone()))
                    .collect();
                best.insert(key, Constraint { coeffs, rhs });
            }
            Some(existing) => {
                if rhs > existing.rhs {
                    existing.rhs = rhs;
                }
            }
        }
    }
    order
        .into_iter()
        .map(|k| best.remove(&k).unwrap())
        .collect()
}

/// A strictly positive weight vector whose minimum over `points` is attained
/// exactly on the subset `on_face` (indices into `points`), or `None`.
pub(crate) fn face_witness(
    points: &[ExponentVector],
    on_face: &[usize],
) -> Option<Vec<BigRational>> {
    let n = points[0].len();
    let base = &points[on_face[0]];
    let on: std::collections::HashSet<usize> = on_face.iter().copied().collect();
    let mut constraints = Vec::new();

    let diff = |p: &ExponentVector| -> Vec<BigRational> {
        (0..n)
            .map(|i| {
                BigRational::from_integer(BigInt::from(
                    i64::from(p.get(i)) - i64::from(base.get(i)),
                ))
            })
            .collect()
    };

    // w . (a - base) = 0 for the remaining face points
    for &idx in &on_face[1..] {
        let coeffs = diff(&points[idx]);
        constraints.push(Constraint {
            coeffs: coeffs.clone(),
            rhs: BigRational::zero(),
        });
        constraints.push(Constraint {
            coeffs: coeffs.iter().map(|c| -c).collect(),
            rhs: BigRational::zero(),
        });
    }
    // w . (q - base) >= 1 off the face
    for (idx, q) in points.iter().enumerate() {
        if !on.contains(&idx) {
            constraints.push(Constraint {
                coeffs: diff(q),
                rhs: BigRational::one(),
            });
        }
    }
    // strict positivity: w_i >= 1 after scaling
    for i in 0..n {
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs[i] = BigRational::one();
        constraints.push(Constraint {
            coeffs,
            rhs: BigRational::one(),
        });
    }

    feasible_point(n, constraints)
}

/// Re-check a witness by direct scan: the minimum of `w . p` over `points`
/// must be attained exactly on `on_face`.
pub(crate) fn witness_selects(
    points: &[ExponentVector],
    on_face: &[usize],
    w: &[BigRational],
) -> bool {
    let value = |p: &ExponentVector| -> BigRational {
        w.iter()
            .enumerate()
            .map(|(i, wi)| wi * BigRational::from_integer(BigInt::from(p.get(i))))
            .sum()
    };
    let on: std::collections::HashSet<usize> = on_face.iter().copied().collect();
    let level = value(&points[on_face[0]]);
    points.iter().enumerate().all(|(idx, p)| {
        if on.contains(&idx) {
            value(p) == level
        } else {
            value(p) > level
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(entries: &[u32]) -> ExponentVector {
        ExponentVector::new(entries.to_vec())
    }

    #[test]
    fn feasibility_basic() {
        // x >= 1, -x >= -3 (x <= 3): feasible
        let cs = vec![
            Constraint {
                coeffs: vec![BigRational::one()],
                rhs: BigRational::one(),
            },
            Constraint {
                coeffs: vec![-BigRational::one()],
                rhs: BigRational::from_integer((-3).into()),
            },
        ];
        let p = feasible_point(1, cs).unwrap();
        assert!(p[0] >= BigRational::one());
        assert!(p[0] <= BigRational::from_integer(3.into()));

        // x >= 2 and x <= 1: infeasible
        let cs = vec![
            Constraint {
                coeffs: vec![BigRational::one()],
                rhs: BigRational::from_integer(2.into()),
            },
            Constraint {
                coeffs: vec![-BigRational::one()],
                rhs: BigRational::from_integer((-1).into()),
            },
        ];
        assert!(feasible_point(1, cs).is_none());
    }

    #[test]
    fn vertex_witness_on_segment() {
        // (1,1) is on the segment (2,0)-(0,2), so it admits no selector,
        // while the endpoints do.
        let pts = vec![ev(&[2, 0]), ev(&[1, 1]), ev(&[0, 2])];
        assert!(face_witness(&pts, &[1]).is_none());
        let w = face_witness(&pts, &[0]).unwrap();
        assert!(witness_selects(&pts, &[0], &w));
        let w = face_witness(&pts, &[0, 1, 2]).unwrap();
        assert!(witness_selects(&pts, &[0, 1, 2], &w));
        // a proper sub-segment is not a face
        assert!(face_witness(&pts, &[0, 1]).is_none());
    }

    #[test]
    fn positive_weights_only() {
        // (1,1) against (3,0): only selectable with strictly positive weights
        // if no cheaper point exists in the positive quadrant direction.
        let pts = vec![ev(&[1, 1]), ev(&[3, 0])];
        let w = face_witness(&pts, &[0]);
        assert!(w.is_some());
        let w = w.unwrap();
        assert!(w.iter().all(|wi| wi.is_positive()));
    }
}
