//! Monomials, sparse polynomials and the transfer maps of a monomial
//! representation.

use super::field::FieldSpec;
use crate::abelian::GroupElement;
use crate::groups::MonomialRep;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Exponent vector over the variables of a representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// Graded lexicographic comparison: degree first, then the exponent
    /// vector lexicographically.
    pub fn graded_lex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Map monomial -> nonzero coefficient over a fixed prime field.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub terms: BTreeMap<Monomial, u64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn term(m: Monomial, c: u64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: u64, f: &FieldSpec) {
        use std::collections::btree_map::Entry;
        let c = c % f.p;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                let v = f.add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Polynomial, f: &FieldSpec) -> Polynomial {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c, f);
        }
        out
    }

    pub fn scale(&self, c: u64, f: &FieldSpec) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, &v) in &self.terms {
            out.add_term(m.clone(), f.mul(v, c), f);
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: u64, f: &FieldSpec) -> Polynomial {
        let mut out = Polynomial::zero();
        for (mm, &v) in &self.terms {
            out.add_term(mm.mul(m), f.mul(v, c), f);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial, f: &FieldSpec) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, &c) in &other.terms {
            for (mm, &v) in &self.terms {
                out.add_term(mm.mul(m), f.mul(v, c), f);
            }
        }
        out
    }
}

/// Character of the order-two quotient `G/A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetChar {
    Trivial,
    Sign,
}

/// Weight of a monomial: the sum of its variable weights in the character
/// lattice.
pub fn weight(rep: &MonomialRep, m: &Monomial) -> GroupElement {
    let a = rep.a();
    let mut acc = a.zero();
    for (i, &e) in m.0.iter().enumerate() {
        acc = a.add(&acc, &a.scale(e as i64, &rep.weights()[i]));
    }
    acc
}

/// The multiset of variable weights of a monomial, with multiplicities.
pub fn weight_sequence(rep: &MonomialRep, m: &Monomial) -> crate::zerosum::ZSequence {
    let mut entries = vec![];
    for (i, &e) in m.0.iter().enumerate() {
        for _ in 0..e {
            entries.push(rep.weights()[i].clone());
        }
    }
    crate::zerosum::ZSequence::new(rep.a().clone(), entries).expect("weights lie in the lattice")
}

/// Image of a monomial under the coset element: permuted exponents plus the
/// accumulated scalar exponent.
pub fn b_image(rep: &MonomialRep, m: &Monomial) -> (Monomial, u64) {
    let n = rep.num_vars();
    let mut exps = vec![0u16; n];
    let mut scalar = 0u64;
    for (i, &e) in m.0.iter().enumerate() {
        exps[rep.b_perm()[i]] = e;
        scalar = (scalar + rep.b_scalar_exp()[i] * e as u64) % rep.root_order();
    }
    (Monomial(exps), scalar)
}

/// Transfer of an `A`-invariant monomial: `m + m^b`. May be zero.
pub fn transfer(rep: &MonomialRep, m: &Monomial, f: &FieldSpec) -> Result<Polynomial> {
    relative_transfer(rep, m, CosetChar::Trivial, f)
}

/// Relative transfer `m + theta(b)^-1 m^b` for a character of `G/A`; the
/// result is a relative invariant of that weight.
pub fn relative_transfer(
    rep: &MonomialRep,
    m: &Monomial,
    theta: CosetChar,
    f: &FieldSpec,
) -> Result<Polynomial> {
    if weight(rep, m) != rep.a().zero() {
        return Err(Error::Domain(
            "transfer input must be an A-invariant monomial".into(),
        ));
    }
    let (image, scalar_exp) = b_image(rep, m);
    let mut scalar = f.zeta_pow(scalar_exp);
    if theta == CosetChar::Sign {
        scalar = f.neg(scalar);
    }
    let mut out = Polynomial::term(m.clone(), 1);
    out.add_term(image, scalar, f);
    Ok(out)
}

/// Linear extension of the transfer to polynomials with `A`-invariant
/// support.
pub fn transfer_poly(rep: &MonomialRep, poly: &Polynomial, f: &FieldSpec) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (m, &c) in &poly.terms {
        let t = transfer(rep, m, f)?;
        out = out.add(&t.scale(c, f), f);
    }
    Ok(out)
}

/// Exactly the degree-`d` monomials of weight zero, leading (largest)
/// monomial first under graded lex.
pub fn a_invariant_monomials(rep: &MonomialRep, d: u32, cap: u64) -> Result<Vec<Monomial>> {
    let v = rep.num_vars();
    let total = compositions_count(d as u64, v as u64);
    if total > cap {
        return Err(Error::Resource(format!(
            "degree {d} has {total} monomials, cap is {cap}"
        )));
    }
    let a = rep.a().clone();
    let zero = a.zero();
    let mut out = vec![];
    let mut exps = vec![0u16; v];
    enumerate_weighted(rep, &mut exps, 0, d as u16, &zero.clone(), &zero, &mut out);
    Ok(out)
}

fn compositions_count(d: u64, v: u64) -> u64 {
    // C(d + v - 1, v - 1), saturating
    if v == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    let mut acc: u64 = 1;
    for i in 0..(v - 1) {
        acc = acc.saturating_mul(d + v - 1 - i) / (i + 1);
    }
    acc
}

fn enumerate_weighted(
    rep: &MonomialRep,
    exps: &mut Vec<u16>,
    var: usize,
    left: u16,
    acc: &GroupElement,
    zero: &GroupElement,
    out: &mut Vec<Monomial>,
) {
    let a = rep.a();
    if var + 1 == exps.len() {
        exps[var] = left;
        let w = a.add(acc, &a.scale(left as i64, &rep.weights()[var]));
        if w == *zero {
            out.push(Monomial(exps.clone()));
        }
        exps[var] = 0;
        return;
    }
    // descending first exponent yields descending graded lex
    for e in (0..=left).rev() {
        exps[var] = e;
        let w = a.add(acc, &a.scale(e as i64, &rep.weights()[var]));
        enumerate_weighted(rep, exps, var + 1, left - e, &w, zero, out);
        exps[var] = 0;
    }
}
