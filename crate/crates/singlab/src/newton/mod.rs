//! Exact convex geometry of Newton polyhedra: the compact face lattice of
//! the polyhedron `conv(supp f) + R^n_+`, convenience, vertices, the volumes
//! of the cone under the Newton boundary, and the Newton number with its
//! stabilization for non-convenient supports.
//!
//! The hull algorithm is a brute-force supporting-hyperplane enumeration
//! over vertex subsets with exact rational arithmetic, sized for n <= 4 and
//! small supports. A candidate point set is a compact face iff a strictly
//! positive weight vector selects it as the argmin over the support, decided
//! by Fourier-Motzkin feasibility.

mod lp;
mod volume;

use crate::error::{Error, Result};
use crate::exec;
use crate::poly::{ExponentVector, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeSet, HashSet};

pub use volume::{
    gamma_minus_volumes, newton_number, newton_number_stabilized, StabilizedNewtonNumber,
    VolumeVector,
};

/// A compact face of the Newton polyhedron, identified by the support points
/// lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    /// All support points on the face, sorted.
    pub points: Vec<ExponentVector>,
    /// The subset of `points` that are vertices of the polyhedron, sorted.
    pub vertex_set: Vec<ExponentVector>,
    /// Strictly positive weights whose minimum over the support is attained
    /// exactly on `points`.
    pub witness: Vec<BigRational>,
}

/// The compact face lattice of the Newton polyhedron of a support set.
#[derive(Clone, Debug)]
pub struct NewtonComplex {
    pub nvars: usize,
    pub support: Vec<ExponentVector>,
    /// `faces_by_dim[d]` holds the d-dimensional compact faces.
    pub faces_by_dim: Vec<Vec<Face>>,
    pub convenient: bool,
}

impl NewtonComplex {
    pub fn vertices(&self) -> Vec<ExponentVector> {
        self.faces_by_dim[0]
            .iter()
            .map(|f| f.points[0].clone())
            .collect()
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces_by_dim.iter().flatten()
    }

    pub fn face_count(&self) -> usize {
        self.faces_by_dim.iter().map(Vec::len).sum()
    }

    /// The faces of `face` of one dimension lower within this complex.
    fn subfacets(&self, face: &Face) -> Vec<&Face> {
        if face.dim == 0 {
            return Vec::new();
        }
        self.faces_by_dim[face.dim - 1]
            .iter()
            .filter(|t| is_subset(&t.points, &face.points))
            .collect()
    }
}

fn is_subset(a: &[ExponentVector], b: &[ExponentVector]) -> bool {
    // both sorted
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// True iff the polyhedron meets every coordinate axis: for each variable
/// some support point vanishes in all other variables.
pub fn is_convenient(support: &BTreeSet<ExponentVector>) -> bool {
    let Some(first) = support.iter().next() else {
        return true;
    };
    let n = first.len();
    (0..n).all(|i| support.iter().any(|p| p.on_axis(i) && !p.is_origin()))
}

/// The vertex set of the Newton boundary (the 0-dimensional compact faces).
pub fn vertices(support: &BTreeSet<ExponentVector>) -> Result<BTreeSet<ExponentVector>> {
    Ok(newton_complex(support)?.vertices().into_iter().collect())
}

/// Enumerate every compact face of the Newton polyhedron of `support`.
pub fn newton_complex(support: &BTreeSet<ExponentVector>) -> Result<NewtonComplex> {
    let points: Vec<ExponentVector> = support.iter().cloned().collect();
    let Some(first) = points.first() else {
        return Err(Error::EmptySupport);
    };
    let n = first.len();
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::VarMismatch);
    }
    if points.iter().any(ExponentVector::is_origin) {
        return Err(Error::OriginInSupport);
    }

    // 0-dimensional faces
    let vertex_checks = exec::map_slice(&(0..points.len()).collect::<Vec<_>>(), |&i| {
        lp::face_witness(&points, &[i])
    });
    let vertex_idx: Vec<usize> = vertex_checks
        .iter()
        .enumerate()
        .filter_map(|(i, w)| w.is_some().then_some(i))
        .collect();
    let mut faces_by_dim: Vec<Vec<Face>> = vec![Vec::new(); n.max(1)];
    for &i in &vertex_idx {
        faces_by_dim[0].push(Face {
            dim: 0,
            points: vec![points[i].clone()],
            vertex_set: vec![points[i].clone()],
            witness: vertex_checks[i].clone().unwrap(),
        });
    }
    let vertex_points: HashSet<&ExponentVector> = vertex_idx.iter().map(|&i| &points[i]).collect();

    // Candidate faces of dimension d are spanned by d+1 affinely independent
    // vertices; the candidate point set is the support cut by their affine
    // hull, deduplicated across spanning subsets.
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut candidates: Vec<(usize, Vec<usize>)> = Vec::new();
    for d in 1..n {
        for subset in combinations(&vertex_idx, d + 1) {
            let diffs: Vec<Vec<BigRational>> = subset[1..]
                .iter()
                .map(|&i| point_diff(&points[i], &points[subset[0]]))
                .collect();
            if rational_rank(diffs.clone()) != d {
                continue;
            }
            let hull: Vec<usize> = (0..points.len())
                .filter(|&i| {
                    subset.contains(&i) || in_affine_span(&points[i], &points[subset[0]], &diffs, d)
                })
                .collect();
            if seen.insert(hull.clone()) {
                candidates.push((d, hull));
            }
        }
    }

    let results = exec::map_slice(&candidates, |(d, idxs)| {
        lp::face_witness(&points, idxs).map(|w| (*d, idxs.clone(), w))
    });
    for (d, idxs, witness) in results.into_iter().flatten() {
        debug_assert!(lp::witness_selects(&points, &idxs, &witness));
        let face_points: Vec<ExponentVector> = idxs.iter().map(|&i| points[i].clone()).collect();
        let vertex_set: Vec<ExponentVector> = face_points
            .iter()
            .filter(|p| vertex_points.contains(p))
            .cloned()
            .collect();
        faces_by_dim[d].push(Face {
            dim: d,
            points: face_points,
            vertex_set,
            witness,
        });
    }

    let convenient = is_convenient(support);
    Ok(NewtonComplex {
        nvars: n,
        support: points,
        faces_by_dim,
        convenient,
    })
}

/// The sum of exactly the terms of `f` lying on `face`. The face must come
/// from the Newton complex of `f`'s support, which is re-checked by a direct
/// scan of the witness weights.
pub fn face_polynomial(f: &Polynomial, face: &Face) -> Result<Polynomial> {
    let support: Vec<ExponentVector> = f.support().into_iter().collect();
    let on_face: Vec<usize> = face
        .points
        .iter()
        .filter_map(|p| support.iter().position(|s| s == p))
        .collect();
    if on_face.len() != face.points.len()
        || face.witness.len() != f.nvars()
        || !lp::witness_selects(&support, &on_face, &face.witness)
    {
        return Err(Error::FaceNotOfComplex);
    }
    let mut out = Polynomial::zero(f.varnames().to_vec(), f.param().map(str::to_string));
    for p in &face.points {
        out.add_term(p.clone(), f.coefficient(p));
    }
    Ok(out)
}

fn point_diff(p: &ExponentVector, base: &ExponentVector) -> Vec<BigRational> {
    (0..p.len())
        .map(|i| {
            BigRational::from_integer(BigInt::from(i64::from(p.get(i)) - i64::from(base.get(i))))
        })
        .collect()
}

/// Rank of a small rational matrix by Gaussian elimination.
fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, Vec::len);
    let mut pivot_rows: Vec<Vec<BigRational>> = Vec::new();
    for row in rows.iter_mut() {
        let mut current = row.clone();
        for pivot in &pivot_rows {
            let col = pivot.iter().position(|c| !c.is_zero()).unwrap();
            if !current[col].is_zero() {
                let factor = &current[col] / &pivot[col];
                for j in 0..width {
                    let delta = &pivot[j] * &factor;
                    current[j] -= delta;
                }
            }
        }
        if current.iter().any(|c| !c.is_zero()) {
            pivot_rows.push(current);
            rank += 1;
        }
    }
    rank
}

fn in_affine_span(
    p: &ExponentVector,
    base: &ExponentVector,
    span: &[Vec<BigRational>],
    dim: usize,
) -> bool {
    let mut rows = span.to_vec();
    rows.push(point_diff(p, base));
    rational_rank(rows) == dim
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
