//! Macaulay-truncation linear algebra for local quotient dimensions.
//!
//! The rows `x^beta * g` (truncated below degree N) span exactly the image
//! of `J + m^N` on the monomials of degree < N, so the quotient dimension at
//! level N is `#monomials - rank`. The certificate checks that every
//! monomial of degree N-1 lies in the row space; by Nakayama this pins the
//! dimension to the exact local value, and certifies isolation.
//!
//! Elimination is fraction-free over integers after clearing denominators:
//! rows are sparse, the pivot policy is fixed (always the leading monomial
//! in degrevlex), and every combined row is divided by its content.

use super::degrevlex;
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Polynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayFrame {
    pub truncation_degree: u32,
    /// Number of monomials of total degree < N, i.e. the column count.
    pub monomial_count: usize,
    pub row_count: usize,
    pub rank: usize,
    /// `monomial_count - rank`.
    pub quotient_dim: usize,
    /// True iff every monomial of degree N-1 reduces to zero against the
    /// row space, which proves the quotient dimension is exact.
    pub certificate: bool,
}

/// All monomials of total degree <= max_degree in `n` variables, sorted
/// ascending in degrevlex.
pub(crate) fn monomials_up_to(n: usize, max_degree: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(&mut out, &mut current, 0, max_degree);
    out.sort_by(degrevlex);
    out
}

fn fill(out: &mut Vec<ExponentVector>, current: &mut Vec<u32>, var: usize, budget: u32) {
    if var == current.len() {
        out.push(ExponentVector::new(current.clone()));
        return;
    }
    for e in 0..=budget {
        current[var] = e;
        fill(out, current, var + 1, budget - e);
    }
    current[var] = 0;
}

type SparseRow = Vec<(u32, BigInt)>; // (column, coeff), descending column

fn content_normalize(row: &mut SparseRow) {
    let mut gcd = BigInt::zero();
    for (_, c) in row.iter() {
        gcd = gcd.gcd(c);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for (_, c) in row.iter_mut() {
            *c = &*c / &gcd;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        for (_, c) in row.iter_mut() {
            *c = -&*c;
        }
    }
}

/// `pivot_lead/g * row - row_lead/g * pivot`, leading entries cancelled.
fn combine(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    debug_assert_eq!(row[0].0, pivot[0].0);
    let a = &row[0].1;
    let b = &pivot[0].1;
    let g = a.gcd(b);
    let ca = b / &g; // multiplies row
    let cb = a / &g; // multiplies pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let mut left = row.iter().skip(1).peekable();
    let mut right = pivot.iter().skip(1).peekable();
    loop {
        match (left.peek(), right.peek()) {
            (None, None) => break,
            (Some((i, c)), None) => {
                out.push((*i, c * &ca));
                left.next();
            }
            (None, Some((j, d))) => {
                out.push((*j, -(d * &cb)));
                right.next();
            }
            (Some((i, c)), Some((j, d))) => {
                if i > j {
                    out.push((*i, c * &ca));
                    left.next();
                } else if j > i {
                    out.push((*j, -(d * &cb)));
                    right.next();
                } else {
                    let v = c * &ca - d * &cb;
                    if !v.is_zero() {
                        out.push((*i, v));
                    }
                    left.next();
                    right.next();
                }
            }
        }
    }
    content_normalize(&mut out);
    out
}

struct Staircase {
    pivots: HashMap<u32, SparseRow>,
}

impl Staircase {
    fn new() -> Self {
        Staircase {
            pivots: HashMap::new(),
        }
    }

    /// Insert a row, reducing leading terms against the pivots; returns true
    /// if the rank grew.
    fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => row = combine(&row, pivot),
                None => {
                    content_normalize(&mut row);
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// True iff the unit vector at `col` lies in the row space.
    fn reduces_to_zero(&self, col: u32) -> bool {
        let mut row: SparseRow = vec![(col, BigInt::one())];
        loop {
            let Some(&(lead, _)) = row.first() else {
                return true;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => row = combine(&row, pivot),
                None => return false,
            }
        }
    }
}

/// Quotient dimension of `O_n / (gens)` at truncation level `truncation`,
/// with a Nakayama certificate when the level suffices.
pub fn local_quotient_dim(gens: &[Polynomial], truncation: u32) -> Result<MacaulayFrame> {
    if truncation < 2 {
        return Err(Error::TruncationTooSmall { given: truncation });
    }
    let Some(first) = gens.first() else {
        return Err(Error::ZeroPolynomial);
    };
    let n = first.nvars();
    for g in gens {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if g.is_parametric() {
            return Err(Error::ParametricInput);
        }
        if g.nvars() != n {
            return Err(Error::VarMismatch);
        }
    }

    let columns = monomials_up_to(n, truncation - 1);
    let index: HashMap<&ExponentVector, u32> = columns
        .iter()
        .enumerate()
        .map(|(i, ev)| (ev, i as u32))
        .collect();

    // integer-primitive generator term lists, descending degrevlex
    let mut int_gens: Vec<(u64, Vec<(ExponentVector, BigInt)>)> = Vec::new();
    for g in gens {
        let mut lcm = BigInt::one();
        for (_, c) in g.terms() {
            lcm = lcm.lcm(c.as_scalar().unwrap().denom());
        }
        let mut terms: Vec<(ExponentVector, BigInt)> = g
            .terms()
            .map(|(ev, c)| (ev.clone(), (c.as_scalar().unwrap() * &lcm).to_integer()))
            .collect();
        terms.sort_by(|a, b| degrevlex(&b.0, &a.0));
        let mut gcd = BigInt::zero();
        for (_, c) in &terms {
            gcd = gcd.gcd(c);
        }
        if !gcd.is_one() && !gcd.is_zero() {
            for (_, c) in &mut terms {
                *c = &*c / &gcd;
            }
        }
        int_gens.push((g.multiplicity()?, terms));
    }

    let mut staircase = Staircase::new();
    let mut row_count = 0usize;
    for (mult, terms) in &int_gens {
        if *mult >= u64::from(truncation) {
            continue;
        }
        let budget = truncation - 1 - *mult as u32;
        for beta in monomials_up_to(n, budget) {
            let row: SparseRow = terms
                .iter()
                .filter_map(|(ev, c)| {
                    let shifted = beta.add(ev);
                    (shifted.total_degree() < u64::from(truncation))
                        .then(|| (index[&shifted], c.clone()))
                })
                .collect();
            debug_assert!(!row.is_empty());
            row_count += 1;
            staircase.insert(row);
        }
    }

    let rank = staircase.pivots.len();
    let target = u64::from(truncation) - 1;
    let certificate = columns
        .iter()
        .rev()
        .take_while(|ev| ev.total_degree() == target)
        .all(|ev| staircase.reduces_to_zero(index[ev]));

    Ok(MacaulayFrame {
        truncation_degree: truncation,
        monomial_count: columns.len(),
        row_count,
        rank,
        quotient_dim: columns.len() - rank,
        certificate,
    })
}
