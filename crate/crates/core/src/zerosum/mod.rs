//! Zero-sum sequence combinatorics over finite abelian groups: subset sums,
//! factorizations, Davenport constants, zero-corners, contractions,
//! sequence norms and similarity under automorphisms.
//!
//! A sequence is a finite multiset of group elements, stored sorted so that
//! multiset equality is plain equality. The subset-sum set `Sigma(S)` ranges
//! over all sub-multisets *including the empty one*, so `0` is always a
//! member; both Cauchy-Davenport style bounds implemented in the test suite
//! depend on that convention.

mod contract;
mod corner;
mod search;

pub use contract::{contractions, Contraction};
pub use corner::{extract_zero_corner, zero_corner_min_diameter, ZeroCorner};
pub use search::{davenport, davenport_capped, max_factorization, max_zsf_length};

use crate::abelian::{automorphisms, AbelianGroup, Automorphism, GroupElement, DEFAULT_AUT_CAP};
use crate::{Error, Result};
use std::collections::BTreeSet;

pub(crate) const SEQUENCE_GROUP_CAP: u64 = 1 << 10;

/// A finite multiset of group elements, stored as a sorted list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZSequence {
    group: AbelianGroup,
    entries: Vec<GroupElement>,
}

impl ZSequence {
    pub fn new(group: AbelianGroup, mut entries: Vec<GroupElement>) -> Result<Self> {
        for e in &entries {
            if !group.contains(e) {
                return Err(Error::InvalidSpec(format!(
                    "entry {:?} does not lie in the group",
                    e.coords()
                )));
            }
        }
        entries.sort();
        Ok(ZSequence { group, entries })
    }

    pub fn empty(group: AbelianGroup) -> Self {
        ZSequence {
            group,
            entries: vec![],
        }
    }

    /// Sequence `(a^r)`: the element `a` with multiplicity `r`.
    pub fn power(group: AbelianGroup, a: GroupElement, r: usize) -> Result<Self> {
        ZSequence::new(group, vec![a; r])
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn entries(&self) -> &[GroupElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, a: &GroupElement) -> usize {
        self.entries.iter().filter(|e| *e == a).count()
    }

    /// Largest multiplicity of any element, `h(S)`; zero for the empty
    /// sequence.
    pub fn max_multiplicity(&self) -> usize {
        let mut best = 0;
        let mut i = 0;
        while i < self.entries.len() {
            let mut j = i;
            while j < self.entries.len() && self.entries[j] == self.entries[i] {
                j += 1;
            }
            best = best.max(j - i);
            i = j;
        }
        best
    }

    pub fn with_entry(&self, a: GroupElement) -> Result<Self> {
        let mut entries = self.entries.clone();
        entries.push(a);
        ZSequence::new(self.group.clone(), entries)
    }

    pub fn concat(&self, other: &ZSequence) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::Domain(
                "concatenation needs a common parent group".into(),
            ));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        ZSequence::new(self.group.clone(), entries)
    }

    /// Is `other` a sub-multiset of `self`?
    pub fn contains_sub(&self, other: &ZSequence) -> bool {
        if self.group != other.group {
            return false;
        }
        let mut rest = self.entries.clone();
        for e in &other.entries {
            match rest.iter().position(|x| x == e) {
                Some(i) => {
                    rest.remove(i);
                }
                None => return false,
            }
        }
        true
    }

    /// Multiset difference; `other` must be a sub-multiset.
    pub fn remove_sub(&self, other: &ZSequence) -> Result<Self> {
        let mut rest = self.entries.clone();
        for e in &other.entries {
            match rest.iter().position(|x| x == e) {
                Some(i) => {
                    rest.remove(i);
                }
                None => {
                    return Err(Error::Domain(
                        "subtrahend is not a subsequence".into(),
                    ))
                }
            }
        }
        ZSequence::new(self.group.clone(), rest)
    }

    pub fn subsequence(&self, positions: &[usize]) -> ZSequence {
        let entries = positions.iter().map(|&i| self.entries[i].clone()).collect();
        ZSequence {
            group: self.group.clone(),
            entries,
        }
    }

    /// Sum of all entries; zero for the empty sequence.
    pub fn theta(&self) -> GroupElement {
        self.entries
            .iter()
            .fold(self.group.zero(), |acc, e| self.group.add(&acc, e))
    }

    /// All subset sums `Sigma(S)`, empty subset included.
    pub fn sigma_set(&self) -> BTreeSet<GroupElement> {
        let mut sums = BTreeSet::new();
        sums.insert(self.group.zero());
        for e in &self.entries {
            let shifted: Vec<GroupElement> =
                sums.iter().map(|s| self.group.add(s, e)).collect();
            sums.extend(shifted);
        }
        sums
    }

    pub fn is_zero_sum(&self) -> bool {
        self.theta() == self.group.zero()
    }

    /// No non-empty sub-multiset sums to zero.
    pub fn is_zero_sum_free(&self) -> bool {
        let zero = self.group.zero();
        let mut reachable: BTreeSet<GroupElement> = BTreeSet::new();
        for e in &self.entries {
            let mut next: Vec<GroupElement> = vec![e.clone()];
            next.extend(reachable.iter().map(|s| self.group.add(s, e)));
            reachable.extend(next);
            if reachable.contains(&zero) {
                return false;
            }
        }
        true
    }

    /// Non-empty, zero-sum, and no proper non-empty sub-multiset sums to
    /// zero.
    pub fn is_irreducible_zero_sum(&self) -> bool {
        if self.is_empty() || !self.is_zero_sum() {
            return false;
        }
        // (sum, size) pairs over non-empty proper sub-multisets
        let zero = self.group.zero();
        let n = self.len();
        let mut pairs: BTreeSet<(GroupElement, usize)> = BTreeSet::new();
        for e in &self.entries {
            let mut next: Vec<(GroupElement, usize)> = vec![(e.clone(), 1)];
            next.extend(
                pairs
                    .iter()
                    .map(|(s, c)| (self.group.add(s, e), c + 1)),
            );
            pairs.extend(next);
        }
        !pairs
            .iter()
            .any(|(s, c)| *s == zero && *c >= 1 && *c < n)
    }

    /// Image of the sequence under an automorphism, `S^b`.
    pub fn apply(&self, b: &Automorphism) -> ZSequence {
        let mut entries: Vec<GroupElement> =
            self.entries.iter().map(|e| b.apply(e)).collect();
        entries.sort();
        ZSequence {
            group: self.group.clone(),
            entries,
        }
    }
}

/// `||S||_e`: sum over entries of the least positive `r` with `a = r e`.
/// The group must be cyclic and `e` a generator; `||0||_e` is the group
/// order by the "least positive" convention.
pub fn norm(s: &ZSequence, e: &GroupElement) -> Result<u64> {
    let g = s.group();
    if !g.is_cyclic() {
        return Err(Error::Domain("sequence norm needs a cyclic group".into()));
    }
    let n = g.order();
    if g.order_of(e) != n {
        return Err(Error::Domain(
            "norm base element does not generate the group".into(),
        ));
    }
    let mut total = 0u64;
    for a in s.entries() {
        let mut acc = g.zero();
        let mut r = 0u64;
        loop {
            acc = g.add(&acc, e);
            r += 1;
            if acc == *a {
                break;
            }
            if r > n {
                return Err(Error::Internal("generator scan failed".into()));
            }
        }
        total += r;
    }
    Ok(total)
}

/// Least sequence in the automorphism orbit of `S`; constant on orbits and
/// idempotent, used to deduplicate similarity classes.
pub fn canonical_form(s: &ZSequence) -> Result<ZSequence> {
    let auts = automorphisms(s.group(), DEFAULT_AUT_CAP)?;
    Ok(auts
        .iter()
        .map(|b| s.apply(b))
        .min()
        .expect("automorphism list is never empty"))
}

/// An automorphism `b` with `T = S^b`, if the sequences are similar.
pub fn similar(s: &ZSequence, t: &ZSequence) -> Result<Option<Automorphism>> {
    if s.group() != t.group() {
        return Err(Error::Domain(
            "similarity needs a common parent group".into(),
        ));
    }
    let auts = automorphisms(s.group(), DEFAULT_AUT_CAP)?;
    Ok(auts.into_iter().find(|b| s.apply(b) == *t))
}

/// Unique-extension check for a strictly growing chain of zero-sum free
/// sequences: given `S_1 < ... < S_t` with `|S_i| = i` and
/// `|Sigma(S_{i+1})| >= |Sigma(S_i)| + 2`, decides whether appending `b`
/// keeps `S_t` zero-sum free while growing `Sigma` by exactly one. At most
/// one `b` can satisfy both.
pub fn unique_extension(chain: &[ZSequence], b: &GroupElement) -> Result<bool> {
    if chain.is_empty() {
        return Err(Error::Domain("empty chain".into()));
    }
    let group = chain[0].group().clone();
    for (i, s) in chain.iter().enumerate() {
        if s.group() != &group {
            return Err(Error::Domain("chain mixes parent groups".into()));
        }
        if s.len() != i + 1 {
            return Err(Error::Domain(format!(
                "chain member {} has length {}, expected {}",
                i,
                s.len(),
                i + 1
            )));
        }
        if !s.is_zero_sum_free() {
            return Err(Error::Domain("chain member is not zero-sum free".into()));
        }
        if i > 0 {
            if !s.contains_sub(&chain[i - 1]) {
                return Err(Error::Domain("chain is not nested".into()));
            }
            if i < chain.len() {
                let prev = chain[i - 1].sigma_set().len();
                let here = s.sigma_set().len();
                if here < prev + 2 {
                    return Err(Error::Domain(
                        "chain subset-sum growth condition fails".into(),
                    ));
                }
            }
        }
    }
    let last = chain.last().expect("chain is non-empty");
    let extended = last.with_entry(b.clone())?;
    Ok(extended.is_zero_sum_free()
        && extended.sigma_set().len() == last.sigma_set().len() + 1)
}
