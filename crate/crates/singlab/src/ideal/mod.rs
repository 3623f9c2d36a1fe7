//! Minimal exact commutative-algebra kernel: Buchberger Groebner bases over
//! Q in the fixed graded-reverse-lexicographic order, ideal triviality tests,
//! and torus saturation via the Rabinowitsch trick.
//!
//! Internally everything is fraction-free: basis elements are primitive
//! integer polynomials and reduction is pseudo-division with a tracked
//! multiplier, so the public normal form is still the exact Q-linear one.

pub mod macaulay;

use crate::error::{Error, Result};
use crate::poly::{Coefficient, ExponentVector, Polynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// The fixed monomial order: graded reverse lexicographic with variable
/// priority equal to declaration order. Total, multiplicative, global.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TermOrder;

impl TermOrder {
    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        degrevlex(a, b)
    }
}

/// a > b iff deg a > deg b, or degrees tie and the rightmost nonzero entry
/// of a - b is negative.
pub fn degrevlex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {
            for i in (0..a.len()).rev() {
                match a.get(i).cmp(&b.get(i)) {
                    Ordering::Equal => continue,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

fn divides(a: &ExponentVector, b: &ExponentVector) -> bool {
    a.entries().iter().zip(b.entries()).all(|(x, y)| x <= y)
}

fn quotient(b: &ExponentVector, a: &ExponentVector) -> ExponentVector {
    ExponentVector::new(
        b.entries()
            .iter()
            .zip(a.entries())
            .map(|(x, y)| x - y)
            .collect(),
    )
}

fn lcm(a: &ExponentVector, b: &ExponentVector) -> ExponentVector {
    ExponentVector::new(
        a.entries()
            .iter()
            .zip(b.entries())
            .map(|(x, y)| *x.max(y))
            .collect(),
    )
}

/// Primitive integer polynomial: terms strictly descending in degrevlex,
/// coprime coefficients, positive leading coefficient.
#[derive(Clone, Debug, PartialEq)]
struct TermPoly(Vec<(ExponentVector, BigInt)>);

impl TermPoly {
    fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let mut denom_lcm = BigInt::one();
        for (_, c) in p.terms() {
            let scalar = c.as_scalar().ok_or(Error::ParametricInput)?;
            denom_lcm = denom_lcm.lcm(scalar.denom());
        }
        let mut terms: Vec<(ExponentVector, BigInt)> = p
            .terms()
            .map(|(ev, c)| {
                (
                    ev.clone(),
                    (c.as_scalar().unwrap() * &denom_lcm).to_integer(),
                )
            })
            .collect();
        terms.sort_by(|a, b| degrevlex(&b.0, &a.0));
        let mut out = TermPoly(terms);
        out.normalize();
        Ok(out)
    }

    /// Monic rational polynomial: primitive integer terms divided by the
    /// leading coefficient.
    fn to_monic_polynomial(&self, varnames: &[String]) -> Polynomial {
        let lead = self
            .0
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::one);
        Polynomial::from_terms(
            varnames.to_vec(),
            None,
            self.0.iter().map(|(ev, c)| {
                (
                    ev.clone(),
                    Coefficient::from_rational(BigRational::new(c.clone(), lead.clone())),
                )
            }),
        )
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn leading_monomial(&self) -> &ExponentVector {
        &self.0[0].0
    }

    /// Divide out the content and make the leading coefficient positive.
    /// Returns the (signed) rational the polynomial was divided by.
    fn normalize(&mut self) -> BigRational {
        if self.0.is_empty() {
            return BigRational::one();
        }
        let mut content = BigInt::zero();
        for (_, c) in &self.0 {
            content = content.gcd(c);
        }
        if self.0[0].1.is_negative() {
            content = -content;
        }
        if !content.is_one() {
            for (_, c) in &mut self.0 {
                *c = &*c / &content;
            }
        }
        BigRational::from_integer(content)
    }

    /// `a * self - b * x^shift * other`, merged in order.
    fn combine(
        &self,
        a: &BigInt,
        b: &BigInt,
        shift: &ExponentVector,
        other: &TermPoly,
    ) -> TermPoly {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut left = self.0.iter().peekable();
        let mut right = other
            .0
            .iter()
            .map(|(ev, c)| (ev.add(shift), -(c * b)))
            .peekable();
        loop {
            match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some(_), None) => {
                    let (ev, c) = left.next().unwrap();
                    out.push((ev.clone(), c * a));
                }
                (None, Some(_)) => out.push(right.next().unwrap()),
                (Some((le, _)), Some((re, _))) => match degrevlex(le, re) {
                    Ordering::Greater => {
                        let (ev, c) = left.next().unwrap();
                        out.push((ev.clone(), c * a));
                    }
                    Ordering::Less => out.push(right.next().unwrap()),
                    Ordering::Equal => {
                        let (ev, c) = left.next().unwrap();
                        let (_, d) = right.next().unwrap();
                        let v = c * a + d;
                        if !v.is_zero() {
                            out.push((ev.clone(), v));
                        }
                    }
                },
            }
        }
        TermPoly(out)
    }

    /// Fraction-free full reduction against `basis`. The integer result is
    /// primitive; `multiplier` is the overall rational factor by which the
    /// original polynomial must be divided to recover the exact normal form:
    /// `NF_Q(self) = result / multiplier`.
    fn reduce_full(&self, basis: &[TermPoly]) -> (TermPoly, BigRational) {
        let mut p = self.clone();
        let mut multiplier = p.normalize().recip();
        let mut pos = 0;
        'scan: while pos < p.0.len() {
            let m = p.0[pos].0.clone();
            for g in basis {
                let gm = g.leading_monomial();
                if divides(gm, &m) {
                    let c = &p.0[pos].1;
                    let gc = &g.0[0].1;
                    let d = c.gcd(gc);
                    let a = gc / &d;
                    let b = c / &d;
                    let shift = quotient(&m, gm);
                    p = p.combine(&a, &b, &shift, g);
                    multiplier *= BigRational::from_integer(a);
                    multiplier /= p.normalize();
                    continue 'scan;
                }
            }
            pos += 1;
        }
        (p, multiplier)
    }
}

/// `x^(l-fm) * f * (gc/d) - x^(l-gm) * g * (fc/d)` for `l = lcm(fm, gm)` and
/// `d = gcd(fc, gc)`; the leading terms cancel.
fn spoly(f: &TermPoly, g: &TermPoly) -> TermPoly {
    let fm = f.leading_monomial();
    let gm = g.leading_monomial();
    let l = lcm(fm, gm);
    let fc = &f.0[0].1;
    let gc = &g.0[0].1;
    let d = fc.gcd(gc);
    let zero = TermPoly(Vec::new());
    // 0 - (-(gc/d)) x^(l-fm) f = (gc/d) x^(l-fm) f
    let part = zero.combine(&BigInt::one(), &(-(gc / &d)), &quotient(&l, fm), f);
    let mut s = part.combine(&BigInt::one(), &(fc / &d), &quotient(&l, gm), g);
    s.normalize();
    s
}

/// An interreduced monic Groebner basis in the fixed degrevlex order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: TermOrder,
    varnames: Vec<String>,
    generators: Vec<Polynomial>,
    internal: Vec<TermPoly>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// True iff the reduced basis is `{1}`.
    pub fn contains_one(&self) -> bool {
        self.internal
            .iter()
            .any(|g| g.leading_monomial().is_origin())
    }

    /// Remainder of `p` under full division by the basis; idempotent and
    /// Q-linear.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.varnames() != self.varnames.as_slice() {
            return Err(Error::VarMismatch);
        }
        if p.is_zero() {
            return Ok(p.clone());
        }
        let tp = TermPoly::from_polynomial(p)?;
        // the primitive form is proportional to p: recover the input scale
        // from the coefficients at the leading monomial
        let original_lead = p
            .coefficient(&tp.0[0].0)
            .as_scalar()
            .ok_or(Error::ParametricInput)?;
        let primitive_lead = BigRational::from_integer(tp.0[0].1.clone());
        let scale_in = original_lead / primitive_lead; // p = scale_in * tp

        let (reduced, multiplier) = tp.reduce_full(&self.internal);
        // NF(tp) = reduced / multiplier, so NF(p) = scale_in * reduced / multiplier
        let scale = scale_in / multiplier;
        Ok(Polynomial::from_terms(
            self.varnames.clone(),
            None,
            reduced.0.iter().map(|(ev, c)| {
                (
                    ev.clone(),
                    Coefficient::from_rational(BigRational::from_integer(c.clone()) * &scale),
                )
            }),
        ))
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ExponentVector,
}

/// Gebauer-Moeller pair update: prune the candidate pairs of the new element
/// `t` against each other (divisibility and equal-lcm classes, where a
/// coprime member kills its whole class), then prune the surviving old
/// pairs whose lcm factors through the new leading monomial.
fn update_pairs(pairs: &mut Vec<Pair>, basis: &[TermPoly], t: usize) {
    let lt = basis[t].leading_monomial();
    let mut cand: Vec<(Pair, bool)> = (0..t)
        .map(|i| {
            let li = basis[i].leading_monomial();
            let l = lcm(li, lt);
            let coprime = l == li.add(lt);
            (Pair { i, j: t, lcm: l }, coprime)
        })
        .collect();

    // strict divisibility among candidates
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..cand.len() {
            if a == b || !keep[b] {
                continue;
            }
            if cand[b].0.lcm != cand[a].0.lcm && divides(&cand[b].0.lcm, &cand[a].0.lcm) {
                keep[a] = false;
                break;
            }
        }
    }
    let survivors: Vec<(Pair, bool)> = cand
        .drain(..)
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect();

    // equal-lcm classes: a coprime member removes the entire class,
    // otherwise exactly one representative survives
    let mut new_pairs: Vec<Pair> = Vec::new();
    let mut used: Vec<bool> = vec![false; survivors.len()];
    for a in 0..survivors.len() {
        if used[a] {
            continue;
        }
        let mut class_coprime = survivors[a].1;
        for b in a + 1..survivors.len() {
            if survivors[b].0.lcm == survivors[a].0.lcm {
                used[b] = true;
                class_coprime |= survivors[b].1;
            }
        }
        if !class_coprime {
            new_pairs.push(survivors[a].0.clone());
        }
    }

    // prune old pairs through the new leading monomial
    pairs.retain(|p| {
        !(divides(lt, &p.lcm)
            && lcm(basis[p.i].leading_monomial(), lt) != p.lcm
            && lcm(basis[p.j].leading_monomial(), lt) != p.lcm)
    });
    pairs.extend(new_pairs);
}

/// Buchberger with the Gebauer-Moeller installation of the product and chain
/// criteria; the output is interreduced with monic leading coefficients.
pub fn groebner(gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::ZeroPolynomial);
    };
    let varnames = first.varnames().to_vec();
    let mut basis: Vec<TermPoly> = Vec::new();
    for g in gens {
        if g.varnames() != varnames.as_slice() {
            return Err(Error::VarMismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        basis.push(TermPoly::from_polynomial(g)?);
    }

    let mut pairs: Vec<Pair> = Vec::new();
    for t in 0..basis.len() {
        update_pairs(&mut pairs, &basis, t);
    }

    while !pairs.is_empty() {
        // normal selection: smallest lcm in the working order
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, p1), (_, p2)| degrevlex(&p2.lcm, &p1.lcm))
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);

        let s = spoly(&basis[pair.i], &basis[pair.j]);
        let (reduced, _) = s.reduce_full(&basis);
        if !reduced.is_zero() {
            // shortcut: a constant ends every computation
            if reduced.leading_monomial().is_origin() {
                basis.push(reduced);
                pairs.clear();
                break;
            }
            basis.push(reduced);
            update_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    // interreduce: drop generators with divisible leading monomials, then
    // tail-reduce the survivors
    let mut keep: Vec<TermPoly> = Vec::new();
    let mut order_idx: Vec<usize> = (0..basis.len()).collect();
    order_idx.sort_by(|&a, &b| degrevlex(basis[a].leading_monomial(), basis[b].leading_monomial()));
    for &i in &order_idx {
        let lm = basis[i].leading_monomial();
        if !keep.iter().any(|g| divides(g.leading_monomial(), lm)) {
            keep.push(basis[i].clone());
        }
    }
    let mut reduced: Vec<TermPoly> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<TermPoly> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (r, _) = keep[i].reduce_full(&others);
        debug_assert!(!r.is_zero());
        reduced.push(r);
    }
    reduced.sort_by(|a, b| degrevlex(b.leading_monomial(), a.leading_monomial()));

    let generators = reduced
        .iter()
        .map(|g| g.to_monic_polynomial(&varnames))
        .collect();
    Ok(GroebnerBasis {
        order: TermOrder,
        varnames,
        generators,
        internal: reduced,
    })
}

/// True iff `1` lies in the ideal generated by `gens`.
pub fn contains_one(gens: &[Polynomial]) -> Result<bool> {
    Ok(groebner(gens)?.contains_one())
}

/// True iff the generators have no common zero with every coordinate
/// nonzero. Decided by adjoining `u * x_1 ... x_n - 1` (Rabinowitsch) and
/// testing ideal triviality; zero generators are ignored.
pub fn empty_on_torus(gens: &[Polynomial]) -> Result<bool> {
    let Some(first) = gens.first() else {
        return Err(Error::ZeroPolynomial);
    };
    let n = first.nvars();
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        // the empty system vanishes everywhere, in particular on the torus
        return Ok(false);
    }

    let mut aux = String::from("u");
    while first.varnames().contains(&aux) {
        aux.push('_');
    }
    let mut varnames = first.varnames().to_vec();
    varnames.push(aux);

    let mut lifted: Vec<Polynomial> = Vec::with_capacity(nonzero.len() + 1);
    for g in &nonzero {
        let mut lift = Polynomial::zero(varnames.clone(), None);
        for (ev, c) in g.terms() {
            let mut entries = ev.entries().to_vec();
            entries.push(0);
            lift.add_term(ExponentVector::new(entries), c.clone());
        }
        lifted.push(lift);
    }
    let mut rabinowitsch = Polynomial::zero(varnames.clone(), None);
    rabinowitsch.add_term(
        ExponentVector::new(vec![1; n + 1]),
        Coefficient::from_integer(1),
    );
    rabinowitsch.add_term(ExponentVector::zeros(n + 1), Coefficient::from_integer(-1));
    lifted.push(rabinowitsch);

    contains_one(&lifted)
}
