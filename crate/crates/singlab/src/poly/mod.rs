//! Exact sparse multivariate polynomials over Q, with an optional single
//! deformation parameter in the coefficients.

mod display;
mod parse;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

/// A lattice point of the support: one exponent per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The point `e * unit_i` in `n` variables.
    pub fn axis(i: usize, e: u32, n: usize) -> Self {
        let mut entries = vec![0; n];
        entries[i] = e;
        ExponentVector(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// True when every entry vanishes except possibly the `i`-th.
    pub fn on_axis(&self, i: usize) -> bool {
        self.0.iter().enumerate().all(|(j, &e)| j == i || e == 0)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Keep the entries whose index is in `keep` (strictly increasing).
    pub fn project(&self, keep: &[usize]) -> ExponentVector {
        ExponentVector(keep.iter().map(|&i| self.0[i]).collect())
    }
}

impl Ord for ExponentVector {
    /// Graded lexicographic: total degree first, then entry-wise lex.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A coefficient: an exact-rational polynomial in the deformation parameter.
/// The plain rational case is the degree-zero case of the same storage.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Coefficient {
    /// `c[k]` multiplies `t^k`; trailing zeros are trimmed, empty means 0.
    c: Vec<BigRational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient { c: Vec::new() }
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut out = Coefficient { c: vec![q] };
        out.trim();
        out
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The coefficient `q * t^pow`.
    pub fn from_param_term(pow: u32, q: BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); pow as usize + 1];
        c[pow as usize] = q;
        Coefficient { c }
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(Zero::is_zero) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree in the parameter; `None` for the zero coefficient.
    pub fn degree(&self) -> Option<u32> {
        self.c.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn is_scalar(&self) -> bool {
        self.c.len() <= 1
    }

    /// The rational value when the coefficient does not involve the
    /// parameter; `None` otherwise.
    pub fn as_scalar(&self) -> Option<BigRational> {
        match self.c.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    /// `(parameter power, rational)` pairs with nonzero rational, ascending.
    pub fn param_terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(k, q)| (k as u32, q))
    }

    /// Horner evaluation at `t0`.
    pub fn eval(&self, t0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for q in self.c.iter().rev() {
            acc = acc * t0 + q;
        }
        acc
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.c.get(k).cloned().unwrap_or_else(BigRational::zero);
            let b = other.c.get(k).cloned().unwrap_or_else(BigRational::zero);
            c.push(a + b);
        }
        let mut out = Coefficient { c };
        out.trim();
        out
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        if self.is_zero() || other.is_zero() {
            return Coefficient::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] += a * b;
            }
        }
        let mut out = Coefficient { c };
        out.trim();
        out
    }

    pub fn neg(&self) -> Coefficient {
        Coefficient {
            c: self.c.iter().map(|q| -q).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Coefficient {
        if q.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            c: self.c.iter().map(|a| a * q).collect(),
        }
    }
}

/// Sparse polynomial in `nvars` variables with [`Coefficient`] entries.
/// No zero coefficient is ever stored; keys all have length `nvars`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    varnames: Vec<String>,
    param: Option<String>,
    terms: BTreeMap<ExponentVector, Coefficient>,
}

impl Polynomial {
    pub fn zero(varnames: Vec<String>, param: Option<String>) -> Self {
        Polynomial {
            varnames,
            param,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(varnames: Vec<String>, param: Option<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Coefficient)>,
    {
        let mut p = Polynomial::zero(varnames, param);
        for (ev, c) in terms {
            p.add_term(ev, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.varnames.len()
    }

    pub fn varnames(&self) -> &[String] {
        &self.varnames
    }

    pub fn param(&self) -> Option<&str> {
        self.param.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// True when some stored coefficient actually involves the parameter.
    pub fn is_parametric(&self) -> bool {
        self.terms.values().any(|c| !c.is_scalar())
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.keys().any(ExponentVector::is_origin)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, ev: &ExponentVector) -> Coefficient {
        self.terms
            .get(ev)
            .cloned()
            .unwrap_or_else(Coefficient::zero)
    }

    /// Merge a term in, dropping the entry if the sum cancels.
    pub fn add_term(&mut self, ev: ExponentVector, c: Coefficient) {
        assert_eq!(ev.len(), self.nvars(), "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ev) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// Exactly the stored exponent vectors. A key only exists while its
    /// coefficient is nonzero as a polynomial in the parameter.
    pub fn support(&self) -> BTreeSet<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    /// Formal partial derivative in `z_i`; the parameter rides along as a
    /// constant.
    pub fn differentiate(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars(),
            });
        }
        let mut out = Polynomial::zero(self.varnames.clone(), self.param.clone());
        for (ev, c) in &self.terms {
            let e = ev.get(i);
            if e == 0 {
                continue;
            }
            let mut entries = ev.entries().to_vec();
            entries[i] -= 1;
            let factor = BigRational::from_integer(BigInt::from(e));
            out.add_term(ExponentVector::new(entries), c.scale(&factor));
        }
        Ok(out)
    }

    /// Evaluate every coefficient at `t0`; the result is non-parametric.
    pub fn specialize(&self, t0: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(self.varnames.clone(), None);
        for (ev, c) in &self.terms {
            let v = c.eval(t0);
            if !v.is_zero() {
                out.add_term(ev.clone(), Coefficient::from_rational(v));
            }
        }
        out
    }

    /// Keep the terms whose exponents vanish outside `keep`, read as a
    /// polynomial in the surviving variables. `keep` must be strictly
    /// increasing and in range.
    pub fn restrict_to_axes(&self, keep: &[usize]) -> Result<Polynomial> {
        for window in keep.windows(2) {
            if window[0] >= window[1] {
                return Err(Error::VarMismatch);
            }
        }
        if let Some(&last) = keep.last() {
            if last >= self.nvars() {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    nvars: self.nvars(),
                });
            }
        }
        let names = keep.iter().map(|&i| self.varnames[i].clone()).collect();
        let mut out = Polynomial::zero(names, self.param.clone());
        'term: for (ev, c) in &self.terms {
            let mut k = 0;
            for (j, &e) in ev.entries().iter().enumerate() {
                if k < keep.len() && keep[k] == j {
                    k += 1;
                } else if e != 0 {
                    continue 'term;
                }
            }
            out.add_term(ev.project(keep), c.clone());
        }
        Ok(out)
    }

    /// Substitute `z_i = sum_j h.coeffs[j] * z_j` and drop the variable.
    pub fn substitute_hyperplane(&self, h: &HyperplaneSpec) -> Result<Polynomial> {
        if self.is_parametric() {
            return Err(Error::ParametricInput);
        }
        if h.var >= self.nvars() || h.coeffs.len() != self.nvars() {
            return Err(Error::IndexOutOfRange {
                index: h.var,
                nvars: self.nvars(),
            });
        }
        let keep: Vec<usize> = (0..self.nvars()).filter(|&j| j != h.var).collect();
        let names: Vec<String> = keep.iter().map(|&j| self.varnames[j].clone()).collect();

        // The linear form as a polynomial in the surviving variables.
        let mut linear = Polynomial::zero(names.clone(), None);
        for (slot, &j) in keep.iter().enumerate() {
            if !h.coeffs[j].is_zero() {
                linear.add_term(
                    ExponentVector::axis(slot, 1, keep.len()),
                    Coefficient::from_rational(h.coeffs[j].clone()),
                );
            }
        }

        let max_pow = self.terms.keys().map(|ev| ev.get(h.var)).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_pow as usize + 1);
        let mut one = Polynomial::zero(names.clone(), None);
        one.add_term(
            ExponentVector::zeros(keep.len()),
            Coefficient::from_integer(1),
        );
        powers.push(one);
        for k in 1..=max_pow as usize {
            let next = powers[k - 1].mul(&linear);
            powers.push(next);
        }

        let mut out = Polynomial::zero(names, None);
        for (ev, c) in &self.terms {
            let base = ev.project(&keep);
            for (pev, pc) in powers[ev.get(h.var) as usize].terms() {
                out.add_term(base.add(pev), c.mul(pc));
            }
        }
        Ok(out)
    }

    /// Lowest total degree over the support.
    pub fn multiplicity(&self) -> Result<u64> {
        self.terms
            .keys()
            .map(ExponentVector::total_degree)
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.varnames, other.varnames, "variable set mismatch");
        let mut out = self.clone();
        for (ev, c) in &other.terms {
            out.add_term(ev.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            varnames: self.varnames.clone(),
            param: self.param.clone(),
            terms: self
                .terms
                .iter()
                .map(|(ev, c)| (ev.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.varnames, other.varnames, "variable set mismatch");
        let mut out = Polynomial::zero(
            self.varnames.clone(),
            self.param.clone().or_else(|| other.param.clone()),
        );
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(self.varnames.clone(), self.param.clone());
        for (ev, c) in &self.terms {
            out.add_term(ev.clone(), c.scale(q));
        }
        out
    }

    /// Rename/permute variables: entry `i` of the result reads variable
    /// `perm[i]` of the input. Used by the permutation-invariance tests.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Polynomial> {
        if perm.len() != self.nvars() {
            return Err(Error::VarMismatch);
        }
        let names = perm.iter().map(|&i| self.varnames[i].clone()).collect();
        let mut out = Polynomial::zero(names, self.param.clone());
        for (ev, c) in &self.terms {
            let entries = perm.iter().map(|&i| ev.get(i)).collect();
            out.add_term(ExponentVector::new(entries), c.clone());
        }
        Ok(out)
    }
}

/// `z_i = sum_{j != i} coeffs[j] * z_j`; the all-zero form is the coordinate
/// hyperplane `z_i = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct HyperplaneSpec {
    pub var: usize,
    pub coeffs: Vec<BigRational>,
}

impl HyperplaneSpec {
    pub fn new(var: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if var >= coeffs.len() {
            return Err(Error::IndexOutOfRange {
                index: var,
                nvars: coeffs.len(),
            });
        }
        if !coeffs[var].is_zero() {
            return Err(Error::IndexOutOfRange {
                index: var,
                nvars: coeffs.len(),
            });
        }
        Ok(HyperplaneSpec { var, coeffs })
    }

    /// The coordinate hyperplane `z_var = 0` in `n` variables.
    pub fn coordinate(var: usize, n: usize) -> Result<Self> {
        Self::new(var, vec![BigRational::zero(); n])
    }
}

pub use parse::parse_poly;
