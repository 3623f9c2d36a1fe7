//! Lattice volumes of the cone under the Newton boundary, the Newton number,
//! and its stabilization for non-convenient supports.

use super::{newton_complex, Face, NewtonComplex};
use crate::error::{Error, Result};
use crate::exec;
use crate::poly::ExponentVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// `v[k-1]` is V_k: the sum over k-subsets I of the coordinate axes of the
/// k-volume of the cone under the Newton boundary of the restriction to I.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeVector {
    pub v: Vec<BigRational>,
}

impl VolumeVector {
    pub fn get(&self, k: usize) -> &BigRational {
        &self.v[k - 1]
    }
}

/// Volumes V_1..V_n for a convenient support.
pub fn gamma_minus_volumes(support: &BTreeSet<ExponentVector>) -> Result<VolumeVector> {
    let Some(first) = support.iter().next() else {
        return Err(Error::EmptySupport);
    };
    let n = first.len();
    if !super::is_convenient(support) {
        return Err(Error::NotConvenient);
    }

    // every nonempty axis subset is an independent volume job
    let mut jobs: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << n) {
        jobs.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
    }
    jobs.sort_by_key(|axes| (axes.len(), axes.clone()));

    let per_job = exec::map_slice(&jobs, |axes| restricted_cone_volume(support, axes));
    let mut v = vec![BigRational::zero(); n];
    for (axes, vol) in jobs.iter().zip(per_job) {
        v[axes.len() - 1] += vol?;
    }
    Ok(VolumeVector { v })
}

fn restricted_cone_volume(
    support: &BTreeSet<ExponentVector>,
    axes: &[usize],
) -> Result<BigRational> {
    let restricted: BTreeSet<ExponentVector> = support
        .iter()
        .filter(|p| (0..p.len()).all(|i| axes.contains(&i) || p.get(i) == 0))
        .map(|p| p.project(axes))
        .collect();
    let complex = newton_complex(&restricted)?;
    cone_volume(&complex)
}

/// Volume of the cone with apex at the origin under the Newton boundary:
/// each top-dimensional compact face is fanned into simplices from its first
/// vertex, and a simplex with vertices v_1..v_n contributes |det|/n!.
pub(crate) fn cone_volume(complex: &NewtonComplex) -> Result<BigRational> {
    let n = complex.nvars;
    let mut total = BigInt::zero();
    for facet in &complex.faces_by_dim[n - 1] {
        for simplex in fan_simplices(complex, facet) {
            let mat: Vec<Vec<BigInt>> = simplex
                .iter()
                .map(|p| (0..n).map(|i| BigInt::from(p.get(i))).collect())
                .collect();
            let d = determinant(&mat);
            total += d.abs();
        }
    }
    Ok(BigRational::new(total, factorial(n)))
}

/// Recursive fan triangulation of a compact face using the complex's own
/// face lattice; the simplices are lists of `dim + 1` vertices.
fn fan_simplices(complex: &NewtonComplex, face: &Face) -> Vec<Vec<ExponentVector>> {
    if face.dim == 0 {
        return vec![vec![face.points[0].clone()]];
    }
    let apex = &face.vertex_set[0];
    let mut out = Vec::new();
    for sub in complex.subfacets(face) {
        if sub.points.contains(apex) {
            continue;
        }
        for mut simplex in fan_simplices(complex, sub) {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn determinant(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    match n {
        0 => BigInt::one(),
        1 => mat[0][0].clone(),
        2 => &mat[0][0] * &mat[1][1] - &mat[0][1] * &mat[1][0],
        _ => {
            let mut det = BigInt::zero();
            for (j, lead) in mat[0].iter().enumerate() {
                if lead.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = mat[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let cofactor = lead * determinant(&minor);
                if j % 2 == 0 {
                    det += cofactor;
                } else {
                    det -= cofactor;
                }
            }
            det
        }
    }
}

/// The alternating sum `n! V_n - (n-1)! V_{n-1} + ... + (-1)^(n-1) V_1 + (-1)^n`.
/// The rational arithmetic must cancel to an integer; anything else is an
/// internal inconsistency, not bad input.
pub fn newton_number(support: &BTreeSet<ExponentVector>) -> Result<BigInt> {
    let vols = gamma_minus_volumes(support)?;
    let n = vols.v.len();
    let mut nu = if n % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    for k in 1..=n {
        let term = vols.get(k) * BigRational::from_integer(factorial(k));
        if (n - k) % 2 == 0 {
            nu += term;
        } else {
            nu -= term;
        }
    }
    if !nu.is_integer() {
        return Err(Error::NonIntegerNewtonNumber);
    }
    Ok(nu.to_integer())
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilizedNewtonNumber {
    pub value: BigInt,
    /// True when axis monomials had to be added.
    pub stabilized: bool,
    /// The coordinate axes the support misses.
    pub added_axes: Vec<usize>,
    /// The exponent at which two consecutive values agreed.
    pub axis_exponent: Option<u32>,
}

/// Newton number extended to non-convenient supports: add `z_i^N` on every
/// missed axis and double N from one past the maximal total degree until two
/// consecutive values agree. Divergence up to the cap signals a singularity
/// that is non-isolated along a missed axis (or a cap that is too small).
pub fn newton_number_stabilized(
    support: &BTreeSet<ExponentVector>,
) -> Result<StabilizedNewtonNumber> {
    let Some(first) = support.iter().next() else {
        return Err(Error::EmptySupport);
    };
    let n = first.len();
    let missing: Vec<usize> = (0..n)
        .filter(|&i| !support.iter().any(|p| p.on_axis(i) && !p.is_origin()))
        .collect();
    if missing.is_empty() {
        return Ok(StabilizedNewtonNumber {
            value: newton_number(support)?,
            stabilized: false,
            added_axes: missing,
            axis_exponent: None,
        });
    }

    let n0 = 1 + support
        .iter()
        .map(ExponentVector::total_degree)
        .max()
        .unwrap();
    let cap = n0 << 10;
    let mut exponent = n0;
    let mut previous: Option<BigInt> = None;
    while exponent <= cap {
        let e32 = u32::try_from(exponent)
            .map_err(|_| Error::StabilizationFailed { cap_exponent: cap })?;
        let mut augmented = support.clone();
        for &i in &missing {
            augmented.insert(ExponentVector::axis(i, e32, n));
        }
        let value = newton_number(&augmented)?;
        if previous.as_ref() == Some(&value) {
            return Ok(StabilizedNewtonNumber {
                value,
                stabilized: true,
                added_axes: missing,
                axis_exponent: Some(e32),
            });
        }
        previous = Some(value);
        exponent *= 2;
    }
    Err(Error::StabilizationFailed { cap_exponent: cap })
}
