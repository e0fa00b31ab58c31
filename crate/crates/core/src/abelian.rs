//! Finite abelian groups in product-of-cyclic form: elements, subgroups,
//! quotients, characters and automorphisms.
//!
//! Characters of a group are stored as elements of the group itself through
//! the fixed pairing `<u, v> = sum_i u_i v_i / n_i` in Q/Z, so the character
//! group is written additively and shares all element machinery with the
//! group. All values are immutable after construction.

use crate::{gcd, lcm, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Order cap for automorphism enumeration.
pub const DEFAULT_AUT_CAP: u64 = 64;

/// Order cap for coset/element enumeration in quotients and subgroups.
const ENUMERATION_CAP: u64 = 1 << 12;

/// `Z_{n_1} x ... x Z_{n_t}` with every `n_i >= 2`; the empty factor list is
/// the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

/// An element of an [`AbelianGroup`], each coordinate reduced modulo its
/// factor. Equality and ordering are coordinatewise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidSpec(format!(
                "cyclic factor {bad} is below 2"
            )));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: vec![] }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&n| n as u64).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |e, &n| lcm(e, n as u64))
    }

    pub fn is_cyclic(&self) -> bool {
        self.order() == self.exponent()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    /// Builds an element from arbitrary integer coordinates, reducing each
    /// one modulo its factor.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidSpec(format!(
                "element has {} coordinates, group has rank {}",
                coords.len(),
                self.factors.len()
            )));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &n)| (c.rem_euclid(n as i64)) as u32)
                .collect(),
        })
    }

    /// The standard generator of the `i`-th cyclic factor.
    pub fn unit(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.factors.len()];
        coords[i] = 1;
        GroupElement { coords }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.coords.len() == self.factors.len()
            && a.coords.iter().zip(&self.factors).all(|(&c, &n)| c < n)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
                .collect(),
        }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, r: i64, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &n)| ((r.rem_euclid(n as i64) as u64 * x as u64) % n as u64) as u32)
                .collect(),
        }
    }

    /// Smallest `r >= 1` with `r * a = 0`.
    pub fn order_of(&self, a: &GroupElement) -> u64 {
        a.coords
            .iter()
            .zip(&self.factors)
            .fold(1, |o, (&x, &n)| {
                lcm(o, n as u64 / gcd(n as u64, x as u64))
            })
    }

    /// All elements in mixed-radix order (identity first).
    pub fn elements(&self) -> Vec<GroupElement> {
        let order = self.order();
        (0..order).map(|i| self.from_index(i)).collect()
    }

    pub fn index_of(&self, a: &GroupElement) -> u64 {
        let mut idx = 0u64;
        for (&c, &n) in a.coords.iter().zip(&self.factors) {
            idx = idx * n as u64 + c as u64;
        }
        idx
    }

    pub fn from_index(&self, mut idx: u64) -> GroupElement {
        let mut coords = vec![0u32; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let n = self.factors[i] as u64;
            coords[i] = (idx % n) as u32;
            idx /= n;
        }
        GroupElement { coords }
    }

    /// Pairing exponent `<theta, a>` scaled to `Z_m`, where `m` must be a
    /// multiple of the group exponent: `sum_i theta_i a_i (m / n_i) mod m`.
    pub fn pairing(&self, theta: &GroupElement, a: &GroupElement, m: u64) -> u64 {
        debug_assert!(self.exponent() == 0 || m % self.exponent() == 0);
        let mut acc = 0u64;
        for ((&t, &x), &n) in theta.coords.iter().zip(&a.coords).zip(&self.factors) {
            acc = (acc + (t as u64 * x as u64) % m * (m / n as u64)) % m;
        }
        acc
    }
}

/// Subgroup stored by full element enumeration; closed under addition and
/// negation, always contains the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: AbelianGroup,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl Subgroup {
    pub fn from_generators(parent: &AbelianGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            if !parent.contains(g) {
                return Err(Error::InvalidSpec(format!(
                    "generator {:?} does not lie in the group",
                    g.coords
                )));
            }
        }
        if parent.order() > ENUMERATION_CAP {
            return Err(Error::Resource(format!(
                "subgroup closure needs group order <= {ENUMERATION_CAP}, got {}",
                parent.order()
            )));
        }
        let mut set = BTreeSet::new();
        set.insert(parent.zero());
        let mut frontier = vec![parent.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = parent.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            generators: gens.to_vec(),
            elements: set.into_iter().collect(),
        })
    }

    pub fn from_elements(parent: &AbelianGroup, elems: Vec<GroupElement>) -> Result<Self> {
        let sub = Subgroup::from_generators(parent, &elems)?;
        let given: BTreeSet<_> = elems.into_iter().collect();
        if given.len() != sub.elements.len() {
            return Err(Error::InvalidSpec(
                "element set is not closed under addition".into(),
            ));
        }
        Ok(sub)
    }

    pub fn trivial(parent: &AbelianGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            generators: vec![],
            elements: vec![parent.zero()],
        }
    }

    pub fn full(parent: &AbelianGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            generators: (0..parent.rank()).map(|i| parent.unit(i)).collect(),
            elements: parent.elements().into_iter().collect(),
        }
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    /// Abstract invariant-factor form of the subgroup plus the isomorphism
    /// sending each subgroup element to its coordinates in that form.
    pub fn as_group(&self) -> (AbelianGroup, BTreeMap<GroupElement, GroupElement>) {
        let add = |x: &GroupElement, y: &GroupElement| self.parent.add(x, y);
        let (factors, coords) = decompose(&self.elements, add);
        let group = AbelianGroup { factors };
        let map = self
            .elements
            .iter()
            .cloned()
            .zip(coords.into_iter().map(|c| GroupElement { coords: c }))
            .collect();
        (group, map)
    }
}

/// Total projection `A -> A/B` with kernel exactly `B`.
#[derive(Debug, Clone)]
pub struct Projection {
    target: AbelianGroup,
    map: BTreeMap<GroupElement, GroupElement>,
}

impl Projection {
    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        self.map[a].clone()
    }
}

/// Quotient `A/B` in invariant-factor form together with the projection.
pub fn quotient(a: &AbelianGroup, b: &Subgroup) -> Result<(AbelianGroup, Projection)> {
    if b.parent() != a {
        return Err(Error::InvalidSpec(
            "subgroup does not belong to the given group".into(),
        ));
    }
    if a.order() > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "quotient needs group order <= {ENUMERATION_CAP}, got {}",
            a.order()
        )));
    }
    // Canonical coset representative: the least element of the coset.
    let rep = |x: &GroupElement| -> GroupElement {
        b.elements()
            .iter()
            .map(|h| a.add(x, h))
            .min()
            .expect("subgroup is non-empty")
    };
    let mut reps: Vec<GroupElement> = a
        .elements()
        .iter()
        .map(rep)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // Identity coset must come first for the decomposition.
    let zero_rep = rep(&a.zero());
    reps.retain(|r| *r != zero_rep);
    reps.insert(0, zero_rep);
    let add = |x: &GroupElement, y: &GroupElement| rep(&a.add(x, y));
    let (factors, coords) = decompose(&reps, add);
    let target = AbelianGroup { factors };
    let rep_coords: BTreeMap<GroupElement, GroupElement> = reps
        .iter()
        .cloned()
        .zip(coords.into_iter().map(|c| GroupElement { coords: c }))
        .collect();
    let map = a
        .elements()
        .into_iter()
        .map(|x| {
            let c = rep_coords[&rep(&x)].clone();
            (x, c)
        })
        .collect();
    Ok((
        target.clone(),
        Projection { target, map },
    ))
}

/// Subgroup of the character group killing `C` under the canonical pairing.
pub fn annihilator(a: &AbelianGroup, c: &Subgroup) -> Result<Subgroup> {
    if c.parent() != a {
        return Err(Error::InvalidSpec(
            "subgroup does not belong to the given group".into(),
        ));
    }
    let m = a.exponent().max(1);
    let killers: Vec<GroupElement> = a
        .elements()
        .into_iter()
        .filter(|theta| c.generators().iter().all(|g| a.pairing(theta, g, m) == 0))
        .collect();
    Subgroup::from_elements(a, killers)
}

/// A bijective homomorphism, stored by the images of the standard
/// generators and checked on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Automorphism {
    group: AbelianGroup,
    images: Vec<GroupElement>,
}

impl Automorphism {
    pub fn new(group: &AbelianGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != group.rank() {
            return Err(Error::InvalidSpec(
                "one generator image per cyclic factor is required".into(),
            ));
        }
        for (i, img) in images.iter().enumerate() {
            let n = group.factors[i] as i64;
            if !group.contains(img) || group.scale(n, img) != group.zero() {
                return Err(Error::InvalidSpec(format!(
                    "image of generator {i} does not define a homomorphism"
                )));
            }
        }
        let aut = Automorphism {
            group: group.clone(),
            images,
        };
        let seen: BTreeSet<GroupElement> =
            group.elements().iter().map(|x| aut.apply(x)).collect();
        if seen.len() as u64 != group.order() {
            return Err(Error::InvalidSpec("map is not bijective".into()));
        }
        Ok(aut)
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        Automorphism {
            group: group.clone(),
            images: (0..group.rank()).map(|i| group.unit(i)).collect(),
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        let mut acc = self.group.zero();
        for (&c, img) in a.coords.iter().zip(&self.images) {
            acc = self.group.add(&acc, &self.group.scale(c as i64, img));
        }
        acc
    }

    /// `self` after `other`: `(self . other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            group: self.group.clone(),
            images: other.images.iter().map(|y| self.apply(y)).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let images = (0..self.group.rank())
            .map(|i| {
                let target = self.group.unit(i);
                self.group
                    .elements()
                    .into_iter()
                    .find(|x| self.apply(x) == target)
                    .expect("automorphism is bijective")
            })
            .collect();
        Automorphism {
            group: self.group.clone(),
            images,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, img)| *img == self.group.unit(i))
    }
}

/// Complete list of automorphisms, by brute force over generator images.
pub fn automorphisms(a: &AbelianGroup, cap: u64) -> Result<Vec<Automorphism>> {
    if a.order() > cap {
        return Err(Error::Resource(format!(
            "automorphism enumeration capped at order {cap}, group has order {}",
            a.order()
        )));
    }
    let elems = a.elements();
    let mut out = Vec::new();
    let mut images: Vec<GroupElement> = Vec::new();
    search_automorphisms(a, &elems, &mut images, &mut out);
    Ok(out)
}

fn search_automorphisms(
    a: &AbelianGroup,
    elems: &[GroupElement],
    images: &mut Vec<GroupElement>,
    out: &mut Vec<Automorphism>,
) {
    let i = images.len();
    if i == a.rank() {
        out.push(Automorphism {
            group: a.clone(),
            images: images.clone(),
        });
        return;
    }
    let n = a.factors[i] as i64;
    for cand in elems {
        if a.scale(n, cand) != a.zero() {
            continue;
        }
        images.push(cand.clone());
        if partial_span_is_injective(a, images) {
            search_automorphisms(a, elems, images, out);
        }
        images.pop();
    }
}

fn partial_span_is_injective(a: &AbelianGroup, images: &[GroupElement]) -> bool {
    let mut expected = 1u64;
    for i in 0..images.len() {
        expected *= a.factors[i] as u64;
    }
    let mut seen = BTreeSet::new();
    let mut tuple = vec![0u32; images.len()];
    loop {
        let mut acc = a.zero();
        for (&c, img) in tuple.iter().zip(images) {
            acc = a.add(&acc, &a.scale(c as i64, img));
        }
        seen.insert(acc);
        // next mixed-radix tuple
        let mut j = images.len();
        loop {
            if j == 0 {
                return seen.len() as u64 == expected;
            }
            j -= 1;
            tuple[j] += 1;
            if tuple[j] < a.factors[j] {
                break;
            }
            tuple[j] = 0;
        }
    }
}

/// Invariant-factor decomposition of a small abelian group presented by an
/// element list (identity first) and an addition rule. Returns the factor
/// list `d_1 >= d_2 >= ...` and per-element coordinates.
fn decompose<F>(elems: &[GroupElement], add: F) -> (Vec<u32>, Vec<Vec<u32>>)
where
    F: Fn(&GroupElement, &GroupElement) -> GroupElement,
{
    let m = elems.len();
    if m == 1 {
        return (vec![], vec![vec![]]);
    }
    let index: BTreeMap<&GroupElement, usize> =
        elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut table = vec![vec![0u16; m]; m];
    for i in 0..m {
        for j in 0..m {
            table[i][j] = index[&add(&elems[i], &elems[j])] as u16;
        }
    }
    let mul = |x: usize, t: u64| -> usize {
        let mut acc = 0usize;
        let mut base = x;
        let mut t = t;
        while t > 0 {
            if t & 1 == 1 {
                acc = table[acc][base] as usize;
            }
            base = table[base][base] as usize;
            t >>= 1;
        }
        acc
    };
    let order_of = |x: usize| -> u64 {
        let mut acc = x;
        let mut r = 1u64;
        while acc != 0 {
            acc = table[acc][x] as usize;
            r += 1;
        }
        r
    };
    let orders: Vec<u64> = (0..m).map(order_of).collect();

    // Primary partitions from the counts N_j = #{x : p^j x = 0}.
    let mut primes = vec![];
    let mut rest = m as u64;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            primes.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    let mut partitions: Vec<Vec<u32>> = vec![];
    for &p in &primes {
        let mut counts = vec![];
        let mut j = 0u32;
        loop {
            let pj = p.pow(j);
            let n_j = (0..m).filter(|&x| mul(x, pj) == 0).count() as u64;
            counts.push(n_j);
            if j > 0 && counts[j as usize] == counts[j as usize - 1] {
                break;
            }
            j += 1;
        }
        let log_p = |mut v: u64| -> u32 {
            let mut e = 0;
            while v > 1 {
                v /= p;
                e += 1;
            }
            e
        };
        let c: Vec<u32> = (1..counts.len())
            .map(|j| log_p(counts[j]) - log_p(counts[j - 1]))
            .collect();
        let max_lambda = c.first().copied().unwrap_or(0);
        let lambda: Vec<u32> = (1..=max_lambda)
            .map(|i| c.iter().filter(|&&cj| cj >= i).count() as u32)
            .collect();
        partitions.push(lambda);
    }
    let t = partitions.iter().map(|l| l.len()).max().unwrap_or(0);
    let ds: Vec<u64> = (0..t)
        .map(|i| {
            primes
                .iter()
                .zip(&partitions)
                .map(|(&p, l)| p.pow(l.get(i).copied().unwrap_or(0)))
                .product()
        })
        .collect();
    debug_assert_eq!(ds.iter().product::<u64>(), m as u64);

    // Deterministic search for a generating tuple realizing the factors.
    let mut gens: Vec<usize> = Vec::new();
    assert!(
        pick_generators(&ds, &orders, &mut gens, m, &mul, &table),
        "invariant factors admit a generating tuple"
    );
    let mut coords = vec![vec![0u32; t]; m];
    let mut tuple = vec![0u32; t];
    let mut hit = vec![false; m];
    loop {
        let mut acc = 0usize;
        for (i, &c) in tuple.iter().enumerate() {
            acc = table[acc][mul(gens[i], c as u64)] as usize;
        }
        debug_assert!(!hit[acc]);
        hit[acc] = true;
        coords[acc] = tuple.clone();
        let mut j = t;
        loop {
            if j == 0 {
                debug_assert!(hit.iter().all(|&h| h));
                return (ds.iter().map(|&d| d as u32).collect(), coords);
            }
            j -= 1;
            tuple[j] += 1;
            if (tuple[j] as u64) < ds[j] {
                break;
            }
            tuple[j] = 0;
        }
    }
}

fn pick_generators(
    ds: &[u64],
    orders: &[u64],
    gens: &mut Vec<usize>,
    m: usize,
    mul: &impl Fn(usize, u64) -> usize,
    table: &[Vec<u16>],
) -> bool {
    let i = gens.len();
    if i == ds.len() {
        return true;
    }
    for cand in 0..m {
        if orders[cand] != ds[i] {
            continue;
        }
        gens.push(cand);
        if span_size(ds, gens, mul, table) == ds[..=i].iter().product::<u64>()
            && pick_generators(ds, orders, gens, m, mul, table)
        {
            return true;
        }
        gens.pop();
    }
    false
}

fn span_size(
    ds: &[u64],
    gens: &[usize],
    mul: &impl Fn(usize, u64) -> usize,
    table: &[Vec<u16>],
) -> u64 {
    let mut seen = BTreeSet::new();
    let mut tuple = vec![0u64; gens.len()];
    loop {
        let mut acc = 0usize;
        for (i, &c) in tuple.iter().enumerate() {
            acc = table[acc][mul(gens[i], c)] as usize;
        }
        seen.insert(acc);
        let mut j = gens.len();
        loop {
            if j == 0 {
                return seen.len() as u64;
            }
            j -= 1;
            tuple[j] += 1;
            if tuple[j] < ds[j] {
                break;
            }
            tuple[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> AbelianGroup {
        AbelianGroup::new(vec![n]).unwrap()
    }

    #[test]
    fn make_group_basic() {
        let g = z(4);
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 4);
        let h = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.exponent(), 2);
        let t = AbelianGroup::new(vec![]).unwrap();
        assert_eq!(t.order(), 1);
        assert!(AbelianGroup::new(vec![1]).is_err());
        assert!(AbelianGroup::new(vec![3, 0]).is_err());
    }

    #[test]
    fn element_orders() {
        let g = z(4);
        assert_eq!(g.order_of(&g.element(&[2]).unwrap()), 2);
        let h = AbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(h.order_of(&h.element(&[1, 1]).unwrap()), 6);
        assert_eq!(h.order_of(&h.zero()), 1);
        for e in h.elements() {
            assert_eq!(h.exponent() % h.order_of(&e), 0);
        }
    }

    #[test]
    fn quotient_z6_by_z2() {
        let g = z(6);
        let b = Subgroup::from_generators(&g, &[g.element(&[3]).unwrap()]).unwrap();
        let (q, proj) = quotient(&g, &b).unwrap();
        assert_eq!(q.factors(), &[3]);
        assert_eq!(proj.apply(&g.element(&[3]).unwrap()), q.zero());
        assert_eq!(proj.apply(&g.element(&[1]).unwrap()), q.element(&[1]).unwrap());
        // kernel is exactly B, image is everything
        let kernel: Vec<_> = g
            .elements()
            .into_iter()
            .filter(|x| proj.apply(x) == q.zero())
            .collect();
        assert_eq!(kernel, b.elements());
        let image: BTreeSet<_> = g.elements().iter().map(|x| proj.apply(x)).collect();
        assert_eq!(image.len() as u64, q.order());
        assert_eq!(q.order() * b.order(), g.order());
    }

    #[test]
    fn quotient_by_full_and_z12() {
        let g = z(4);
        let (q, _) = quotient(&g, &Subgroup::full(&g)).unwrap();
        assert_eq!(q.order(), 1);

        let g = z(12);
        let b = Subgroup::from_generators(&g, &[g.element(&[4]).unwrap()]).unwrap();
        let (q, proj) = quotient(&g, &b).unwrap();
        assert_eq!(q.factors(), &[4]);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(
                    proj.apply(&g.add(&x, &y)),
                    q.add(&proj.apply(&x), &proj.apply(&y))
                );
            }
        }
    }

    /// Independent oracle: automorphisms as permutations of the element set
    /// that respect addition.
    fn count_automorphisms_oracle(g: &AbelianGroup) -> usize {
        let elems = g.elements();
        let n = elems.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        permute(&mut perm, 0, &mut |p| {
            if p[0] != 0 {
                return;
            }
            for i in 0..n {
                for j in 0..n {
                    let s = g.add(&elems[i], &elems[j]);
                    let si = elems.iter().position(|e| *e == s).unwrap();
                    let mapped = g.add(&elems[p[i]], &elems[p[j]]);
                    if mapped != elems[p[si]] {
                        return;
                    }
                }
            }
            count += 1;
        });
        count
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&z(4), 64).unwrap().len(), 2);
        let v4 = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(automorphisms(&v4, 64).unwrap().len(), 6);
        assert_eq!(count_automorphisms_oracle(&v4), 6);
        assert_eq!(count_automorphisms_oracle(&z(4)), 2);
        let t = AbelianGroup::trivial();
        assert_eq!(automorphisms(&t, 64).unwrap().len(), 1);
        assert!(automorphisms(&z(4), 2).is_err());
    }

    #[test]
    fn automorphisms_form_group() {
        for g in [z(6), AbelianGroup::new(vec![2, 2]).unwrap(), z(8)] {
            let auts = automorphisms(&g, 64).unwrap();
            assert!(auts.iter().any(|a| a.is_identity()));
            for a in &auts {
                assert!(auts.contains(&a.inverse()));
                for b in &auts {
                    assert!(auts.contains(&a.compose(b)));
                }
            }
        }
    }

    #[test]
    fn annihilator_examples() {
        let g = z(6);
        let c = Subgroup::from_generators(&g, &[g.element(&[2]).unwrap()]).unwrap();
        let ann = annihilator(&g, &c).unwrap();
        let expect: Vec<_> = [0i64, 3]
            .iter()
            .map(|&v| g.element(&[v]).unwrap())
            .collect();
        assert_eq!(ann.elements(), &expect[..]);

        let triv = Subgroup::trivial(&g);
        assert_eq!(annihilator(&g, &triv).unwrap().order(), 6);
        assert_eq!(annihilator(&g, &Subgroup::full(&g)).unwrap().order(), 1);
    }

    /// All subgroups of a small group, by closure growth.
    fn all_subgroups(g: &AbelianGroup) -> Vec<Subgroup> {
        let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
        let mut stack = vec![Subgroup::trivial(g)];
        seen.insert(stack[0].elements().to_vec());
        let mut out = vec![];
        while let Some(s) = stack.pop() {
            for e in g.elements() {
                let mut gens = s.generators().to_vec();
                gens.push(e);
                let bigger = Subgroup::from_generators(g, &gens).unwrap();
                if seen.insert(bigger.elements().to_vec()) {
                    stack.push(bigger);
                }
            }
            out.push(s);
        }
        out
    }

    #[test]
    fn annihilator_reverses_subgroup_lattice() {
        for g in [z(12), AbelianGroup::new(vec![2, 4]).unwrap()] {
            let subs = all_subgroups(&g);
            let mut images = BTreeSet::new();
            for c in &subs {
                let ann = annihilator(&g, c).unwrap();
                assert_eq!(ann.order() * c.order(), g.order());
                assert_eq!(
                    annihilator(&g, &ann).unwrap().elements(),
                    c.elements(),
                    "double annihilator returns the subgroup"
                );
                images.insert(ann.elements().to_vec());
                for d in &subs {
                    let c_in_d = c.elements().iter().all(|x| d.contains(x));
                    if c_in_d {
                        let ann_d = annihilator(&g, d).unwrap();
                        assert!(ann_d.elements().iter().all(|x| ann.contains(x)));
                    }
                }
            }
            assert_eq!(images.len(), subs.len());
        }
    }

    #[test]
    fn subgroup_as_group() {
        let g = z(12);
        let s = Subgroup::from_generators(&g, &[g.element(&[4]).unwrap()]).unwrap();
        let (abs, map) = s.as_group();
        assert_eq!(abs.factors(), &[3]);
        for x in s.elements() {
            for y in s.elements() {
                let lhs = map[&g.add(x, y)].clone();
                let rhs = abs.add(&map[x], &map[y]);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
