//! Monomial representations: each group element acts on the variables by a
//! permutation composed with root-of-unity scalars. Elements of `A` act
//! diagonally through the variable weights; the coset element `b` acts by a
//! signed involution whose square is the diagonal action of `b^2`.

use super::{CharSpec, Constituent, GroupSpec, ModuleSpec};
use crate::abelian::{AbelianGroup, Automorphism, GroupElement};
use crate::invariants::field::FieldSpec;
use crate::{Error, Result};

/// A verified monomial representation of a catalog group.
#[derive(Debug, Clone)]
pub struct MonomialRep {
    group: GroupSpec,
    module: ModuleSpec,
    a: AbelianGroup,
    weights: Vec<GroupElement>,
    b_perm: Vec<usize>,
    b_scalar_exp: Vec<u64>,
    b_square_in_a: GroupElement,
    twist: Automorphism,
    root_order: u64,
}

impl MonomialRep {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn module(&self) -> &ModuleSpec {
        &self.module
    }

    /// Character lattice of the index-two subgroup.
    pub fn a(&self) -> &AbelianGroup {
        &self.a
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[GroupElement] {
        &self.weights
    }

    pub fn b_perm(&self) -> &[usize] {
        &self.b_perm
    }

    pub fn b_scalar_exp(&self) -> &[u64] {
        &self.b_scalar_exp
    }

    pub fn b_square_in_a(&self) -> &GroupElement {
        &self.b_square_in_a
    }

    pub fn twist(&self) -> &Automorphism {
        &self.twist
    }

    /// Order of the fixed primitive root all scalars are powers of.
    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn group_order(&self) -> u64 {
        self.group.order()
    }

    /// Exponent of the scalar through which `a` acts on variable `i`.
    pub fn weight_exp(&self, i: usize, a: &GroupElement) -> u64 {
        self.a.pairing(&self.weights[i], a, self.root_order)
    }
}

/// Assembles the monomial representation of a module spec and verifies the
/// defining relations over the given field.
pub fn build_rep(g: &GroupSpec, module: &ModuleSpec, field: &FieldSpec) -> Result<MonomialRep> {
    if module.constituents.is_empty() {
        return Err(Error::InvalidSpec("module has no constituents".into()));
    }
    let data = g.index_two()?;
    let m = data.root_order;
    if field.m != m {
        return Err(Error::Field(format!(
            "field carries roots of order {}, the group needs {m}",
            field.m
        )));
    }
    let mut weights = vec![];
    let mut b_perm = vec![];
    let mut b_scalar_exp = vec![];
    for c in &module.constituents {
        match c {
            Constituent::Induced(coords) => {
                let theta = parse_coords(&data.a, coords)?;
                let twisted = data.twist.apply(&theta);
                // b swaps the two variables; the common scalar squares to
                // the diagonal value of b^2
                let t = data.a.pairing(&theta, &data.b_square, m);
                let c_exp = if t % 2 == 0 { t / 2 } else { (t + m) / 2 };
                let base = weights.len();
                weights.push(theta);
                weights.push(twisted);
                b_perm.push(base + 1);
                b_perm.push(base);
                b_scalar_exp.push(c_exp);
                b_scalar_exp.push(c_exp);
            }
            Constituent::Char(spec) => {
                let (theta, c_exp) = resolve_char(&data.a, &data.twist, &data.b_square, m, spec)?;
                weights.push(theta);
                b_perm.push(weights.len() - 1);
                b_scalar_exp.push(c_exp);
            }
        }
    }
    let rep = MonomialRep {
        group: g.clone(),
        module: module.clone(),
        a: data.a,
        weights,
        b_perm,
        b_scalar_exp,
        b_square_in_a: data.b_square,
        twist: data.twist,
        root_order: m,
    };
    if !verify_relations(&rep, field) {
        return Err(Error::Internal(
            "constructed representation fails the group relations".into(),
        ));
    }
    Ok(rep)
}

fn parse_coords(a: &AbelianGroup, coords: &[u32]) -> Result<GroupElement> {
    let signed: Vec<i64> = coords.iter().map(|&c| c as i64).collect();
    a.element(&signed)
}

fn resolve_char(
    a: &AbelianGroup,
    twist: &Automorphism,
    b_square: &GroupElement,
    m: u64,
    spec: &CharSpec,
) -> Result<(GroupElement, u64)> {
    let (theta, c_exp) = match spec {
        CharSpec::Named(name) => match name.as_str() {
            "trivial" => (a.zero(), 0),
            "sign" => (a.zero(), m / 2),
            other => {
                return Err(Error::InvalidSpec(format!(
                    "unknown character name {other:?} (expected \"trivial\" or \"sign\")"
                )))
            }
        },
        CharSpec::Full { theta, scalar_exp } => (parse_coords(a, theta)?, *scalar_exp % m),
    };
    if twist.apply(&theta) != theta {
        return Err(Error::InvalidSpec(
            "character restriction is not fixed by the twist".into(),
        ));
    }
    let t = a.pairing(&theta, b_square, m);
    if (2 * c_exp) % m != t {
        return Err(Error::Field(
            "character scalar does not square to the value on b^2".into(),
        ));
    }
    Ok((theta, c_exp))
}

/// Signed permutation: variable `i` maps to `scalar_exp[i]` times variable
/// `perm[i]`, scalars as exponents of the primitive root.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SignedPerm {
    perm: Vec<usize>,
    scalar_exp: Vec<u64>,
}

impl SignedPerm {
    fn diagonal(exps: Vec<u64>) -> Self {
        SignedPerm {
            perm: (0..exps.len()).collect(),
            scalar_exp: exps,
        }
    }

    /// `self` after `other` as variable substitutions.
    fn after(&self, other: &SignedPerm, m: u64) -> SignedPerm {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut scalar_exp = vec![0; n];
        for i in 0..n {
            perm[i] = self.perm[other.perm[i]];
            scalar_exp[i] = (other.scalar_exp[i] + self.scalar_exp[other.perm[i]]) % m;
        }
        SignedPerm { perm, scalar_exp }
    }

    fn eval_eq(&self, other: &SignedPerm, field: &FieldSpec) -> bool {
        self.perm == other.perm
            && self
                .scalar_exp
                .iter()
                .zip(&other.scalar_exp)
                .all(|(&x, &y)| field.zeta_pow(x) == field.zeta_pow(y))
    }
}

/// Checks the defining relations of the group on the representation
/// matrices over the given field: generators of `A` have their orders and
/// commute, `b` conjugates them through the twist, and `b^2` equals the
/// diagonal action of the designated element of `A`.
pub fn verify_relations(rep: &MonomialRep, field: &FieldSpec) -> bool {
    let m = rep.root_order;
    let diag_for = |a_elem: &GroupElement| -> SignedPerm {
        SignedPerm::diagonal(
            (0..rep.num_vars())
                .map(|i| rep.weight_exp(i, a_elem))
                .collect(),
        )
    };
    let b = SignedPerm {
        perm: rep.b_perm.clone(),
        scalar_exp: rep.b_scalar_exp.clone(),
    };
    let identity = SignedPerm::diagonal(vec![0; rep.num_vars()]);

    // orders of the diagonal generators
    for j in 0..rep.a.rank() {
        let e = rep.a.unit(j);
        let n = rep.a.factors()[j] as i64;
        let mut acc = identity.clone();
        for _ in 0..n {
            acc = acc.after(&diag_for(&e), m);
        }
        if !acc.eval_eq(&identity, field) {
            return false;
        }
    }
    // b^2 = diagonal action of b_square_in_a
    let b2 = b.after(&b, m);
    if !b2.eval_eq(&diag_for(&rep.b_square_in_a), field) {
        return false;
    }
    // conjugation: b a = twist(a) b as substitutions
    for j in 0..rep.a.rank() {
        let e = rep.a.unit(j);
        let lhs = diag_for(&e).after(&b, m);
        let rhs = b.after(&diag_for(&rep.twist.apply(&e)), m);
        if !lhs.eval_eq(&rhs, field) {
            return false;
        }
    }
    true
}
