//! Zero-corners: factorizations `C = EFH` with `EF` and `EH` zero-sum, the
//! minimal-diameter search, and the constructive extraction used to bound
//! degrees of invariants of dihedral type.

use super::search::{max_zsf_with_witness, GroupTable, SumSet};
use super::ZSequence;
use crate::{Error, Result};

const MIN_DIAMETER_LEN_CAP: usize = 18;

/// A factorization `EFH` of a sub-multiset with `theta(EF) = theta(EH) = 0`;
/// `diameter` is `max(|EF|, |EH|, |FH|)` of this factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCorner {
    pub e: ZSequence,
    pub f: ZSequence,
    pub h: ZSequence,
    pub diameter: u32,
}

impl ZeroCorner {
    pub fn new(e: ZSequence, f: ZSequence, h: ZSequence) -> Result<Self> {
        if e.group() != f.group() || e.group() != h.group() {
            return Err(Error::Domain("corner parts mix parent groups".into()));
        }
        if e.is_empty() || f.is_empty() || h.is_empty() {
            return Err(Error::Domain("corner parts must be non-empty".into()));
        }
        let g = e.group();
        let ef = g.add(&e.theta(), &f.theta());
        let eh = g.add(&e.theta(), &h.theta());
        if ef != g.zero() || eh != g.zero() {
            return Err(Error::Domain(
                "EF and EH must both be zero-sum".into(),
            ));
        }
        let (le, lf, lh) = (e.len(), f.len(), h.len());
        let diameter = (le + lf).max(le + lh).max(lf + lh) as u32;
        Ok(ZeroCorner { e, f, h, diameter })
    }

    /// The full corner sequence `EFH`.
    pub fn sequence(&self) -> ZSequence {
        self.e
            .concat(&self.f)
            .and_then(|s| s.concat(&self.h))
            .expect("parts share the parent group")
    }
}

/// A zero-corner contained in `S` of minimal diameter over all sub-multisets
/// and tripartitions, or `None` when `S` contains no zero-corner.
pub fn zero_corner_min_diameter(s: &ZSequence) -> Result<Option<ZeroCorner>> {
    if s.len() > MIN_DIAMETER_LEN_CAP {
        return Err(Error::Resource(format!(
            "zero-corner search capped at length {MIN_DIAMETER_LEN_CAP}, got {}",
            s.len()
        )));
    }
    if s.len() < 3 {
        return Ok(None);
    }
    let t = GroupTable::new(s.group())?;
    let idx = t.indices(s.group(), s);
    for diam in 2..=s.len() as u32 {
        if let Some(corner) = corner_with_diameter_at_most(s, &idx, &t, diam) {
            return Ok(Some(corner));
        }
    }
    Ok(None)
}

fn corner_with_diameter_at_most(
    s: &ZSequence,
    idx: &[u16],
    t: &GroupTable,
    diam: u32,
) -> Option<ZeroCorner> {
    let diam = diam as usize;
    for a in 1..diam {
        for b in 1..=(diam - a) {
            for c in 1..=(diam - a).min(diam - b) {
                let mut e_pick = vec![];
                let mut found = None;
                enumerate_submultisets(idx, 0, a, &mut e_pick, &mut |e_pos| {
                    if found.is_some() {
                        return;
                    }
                    let e_sum = e_pos
                        .iter()
                        .fold(0u16, |acc, &p| t.add[acc as usize][idx[p] as usize]);
                    let target = t.neg[e_sum as usize];
                    let mut rest: Vec<usize> =
                        (0..idx.len()).filter(|p| !e_pos.contains(p)).collect();
                    let mut f_pick = vec![];
                    let rest_vals: Vec<u16> = rest.iter().map(|&p| idx[p]).collect();
                    enumerate_submultisets(&rest_vals, 0, b, &mut f_pick, &mut |f_rel| {
                        if found.is_some() {
                            return;
                        }
                        let f_sum = f_rel
                            .iter()
                            .fold(0u16, |acc, &p| t.add[acc as usize][rest_vals[p] as usize]);
                        if f_sum != target {
                            return;
                        }
                        let rest2_vals: Vec<u16> = rest_vals
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| !f_rel.contains(i))
                            .map(|(_, &v)| v)
                            .collect();
                        let mut h_pick = vec![];
                        enumerate_submultisets(&rest2_vals, 0, c, &mut h_pick, &mut |h_rel| {
                            if found.is_some() {
                                return;
                            }
                            let h_sum = h_rel.iter().fold(0u16, |acc, &p| {
                                t.add[acc as usize][rest2_vals[p] as usize]
                            });
                            if h_sum == target {
                                found = Some((
                                    e_pos.to_vec(),
                                    f_rel.iter().map(|&i| rest_vals[i]).collect::<Vec<_>>(),
                                    h_rel.iter().map(|&i| rest2_vals[i]).collect::<Vec<_>>(),
                                ));
                            }
                        });
                    });
                    rest.clear();
                });
                if let Some((e_pos, f_vals, h_vals)) = found {
                    let g = s.group().clone();
                    let e = s.subsequence(&e_pos);
                    let f = ZSequence::new(
                        g.clone(),
                        f_vals.iter().map(|&v| t.elems[v as usize].clone()).collect(),
                    )
                    .expect("values lie in the group");
                    let h = ZSequence::new(
                        g,
                        h_vals.iter().map(|&v| t.elems[v as usize].clone()).collect(),
                    )
                    .expect("values lie in the group");
                    return Some(ZeroCorner::new(e, f, h).expect("search checked the sums"));
                }
            }
        }
    }
    None
}

/// Visit position sets of sub-multisets of the given size, skipping
/// duplicate values at the same depth.
fn enumerate_submultisets(
    vals: &[u16],
    from: usize,
    size: usize,
    pick: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if size == 0 {
        visit(pick);
        return;
    }
    let mut i = from;
    while i < vals.len() {
        pick.push(i);
        enumerate_submultisets(vals, i + 1, size - 1, pick, visit);
        pick.pop();
        let v = vals[i];
        while i < vals.len() && vals[i] == v {
            i += 1;
        }
    }
}

/// Constructive corner extraction: if every entry of `S` is non-zero and the
/// longest zero-sum free subsequence has length `d <= |S| - 3`, produces a
/// zero-corner of diameter at most `d + 1` (not necessarily minimal).
pub fn extract_zero_corner(s: &ZSequence) -> Result<ZeroCorner> {
    let g = s.group();
    if s.entries().iter().any(|e| *e == g.zero()) {
        return Err(Error::Domain(
            "corner extraction needs non-zero entries".into(),
        ));
    }
    let (d, witness) = max_zsf_with_witness(s)?;
    if d as usize + 3 > s.len() {
        return Err(Error::Domain(format!(
            "corner extraction needs max zero-sum free length {} <= |S| - 3 = {}",
            d,
            s.len() as i64 - 3
        )));
    }
    let t = GroupTable::new(g)?;
    let idx = t.indices(g, s);
    let j: Vec<usize> = witness;
    let rest: Vec<usize> = (0..s.len()).filter(|p| !j.contains(p)).collect();
    let extras = &rest[..3];

    // for each extra x, a minimal U inside the zero-sum free part with
    // theta(U) = -x; then U + x is an irreducible zero-sum block
    let j_vals: Vec<u16> = j.iter().map(|&p| idx[p]).collect();
    let mut blocks: Vec<Vec<usize>> = vec![];
    for &x in extras {
        let target = t.neg[idx[x] as usize];
        let u = minimal_subset_with_sum(&j_vals, target, &t).ok_or_else(|| {
            Error::Internal("maximal zero-sum free part admits no completion".into())
        })?;
        let mut block: Vec<usize> = u.iter().map(|&i| j[i]).collect();
        block.push(x);
        blocks.push(block);
    }

    // lexicographically first intersecting pair, if any
    for (bi, bj) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let inter: Vec<usize> = blocks[bi]
            .iter()
            .copied()
            .filter(|p| blocks[bj].contains(p))
            .collect();
        if !inter.is_empty() {
            let only_i: Vec<usize> = blocks[bi]
                .iter()
                .copied()
                .filter(|p| !inter.contains(p))
                .collect();
            let only_j: Vec<usize> = blocks[bj]
                .iter()
                .copied()
                .filter(|p| !inter.contains(p))
                .collect();
            return ZeroCorner::new(
                s.subsequence(&inter),
                s.subsequence(&only_i),
                s.subsequence(&only_j),
            );
        }
    }
    // disjoint case: the three blocks themselves
    ZeroCorner::new(
        s.subsequence(&blocks[0]),
        s.subsequence(&blocks[1]),
        s.subsequence(&blocks[2]),
    )
}

/// Smallest (then lexicographically first) subset of `vals` with the given
/// sum; indices into `vals`.
fn minimal_subset_with_sum(vals: &[u16], target: u16, t: &GroupTable) -> Option<Vec<usize>> {
    for size in 1..=vals.len() {
        let mut pick = vec![];
        if subset_with_sum(vals, 0, size, target, t, &mut pick) {
            return Some(pick);
        }
    }
    None
}

fn subset_with_sum(
    vals: &[u16],
    from: usize,
    size: usize,
    target: u16,
    t: &GroupTable,
    pick: &mut Vec<usize>,
) -> bool {
    if size == 0 {
        return target == 0;
    }
    let mut i = from;
    while i + size <= vals.len() + 0 && i < vals.len() {
        pick.push(i);
        let rest = t.add[target as usize][t.neg[vals[i] as usize] as usize];
        if subset_with_sum(vals, i + 1, size - 1, rest, t, pick) {
            return true;
        }
        pick.pop();
        let v = vals[i];
        while i < vals.len() && vals[i] == v {
            i += 1;
        }
    }
    false
}

// keep SumSet linked into this module for the corner searches
#[allow(unused_imports)]
use SumSet as _SumSetInUse;

#[cfg(test)]
mod tests {
    use super::super::max_zsf_length;
    use super::*;
    use crate::abelian::AbelianGroup;

    fn zn(n: u32) -> AbelianGroup {
        AbelianGroup::new(vec![n]).unwrap()
    }

    fn seq(n: u32, entries: &[i64]) -> ZSequence {
        let g = zn(n);
        let es = entries.iter().map(|&v| g.element(&[v]).unwrap()).collect();
        ZSequence::new(g, es).unwrap()
    }

    /// Oracle: minimal corner diameter by exhaustive 4-way labeling.
    fn min_diameter_oracle(s: &ZSequence) -> Option<u32> {
        let g = s.group();
        let n = s.len();
        let mut best: Option<u32> = None;
        let mut labels = vec![0u8; n];
        loop {
            let mut sums = [g.zero(), g.zero(), g.zero()];
            let mut sizes = [0usize; 3];
            for (i, &l) in labels.iter().enumerate() {
                if l > 0 {
                    sums[l as usize - 1] = g.add(&sums[l as usize - 1], &s.entries()[i]);
                    sizes[l as usize - 1] += 1;
                }
            }
            if sizes.iter().all(|&x| x > 0) {
                let ef = g.add(&sums[0], &sums[1]);
                let eh = g.add(&sums[0], &sums[2]);
                if ef == g.zero() && eh == g.zero() {
                    let d = (sizes[0] + sizes[1])
                        .max(sizes[0] + sizes[2])
                        .max(sizes[1] + sizes[2]) as u32;
                    best = Some(best.map_or(d, |b: u32| b.min(d)));
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return best;
                }
                labels[i] += 1;
                if labels[i] < 4 {
                    break;
                }
                labels[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn min_diameter_examples() {
        let c = zero_corner_min_diameter(&seq(5, &[0, 0, 0])).unwrap().unwrap();
        assert_eq!(c.diameter, 2);

        let c = zero_corner_min_diameter(&seq(4, &[1, 3, 3])).unwrap().unwrap();
        assert_eq!(c.diameter, 2);
        assert_eq!(min_diameter_oracle(&seq(4, &[1, 3, 3])), Some(2));

        assert!(zero_corner_min_diameter(&seq(3, &[1, 1])).unwrap().is_none());
    }

    #[test]
    fn min_diameter_matches_oracle() {
        let cases: &[(u32, &[i64])] = &[
            (4, &[1, 1, 2, 3, 3]),
            (5, &[1, 4, 2, 3, 1]),
            (6, &[2, 4, 3, 3, 1, 5]),
            (3, &[1, 1, 1, 2, 2, 2]),
            (5, &[1, 2, 3]),
        ];
        for &(n, entries) in cases {
            let s = seq(n, entries);
            let got = zero_corner_min_diameter(&s).unwrap().map(|c| c.diameter);
            assert_eq!(got, min_diameter_oracle(&s), "on {entries:?} over Z_{n}");
        }
    }

    #[test]
    fn extraction_satisfies_lemma_bound() {
        for (n, entries) in [
            (3u32, &[1i64, 1, 1, 2, 2, 2][..]),
            (4, &[1, 1, 2, 1, 1, 2, 1, 1, 2]),
            (5, &[1, 2, 3, 4, 4, 3, 2]),
        ] {
            let s = seq(n, entries);
            let d = max_zsf_length(&s).unwrap();
            assert!(d as usize + 3 <= s.len());
            let corner = extract_zero_corner(&s).unwrap();
            assert!(corner.diameter <= d + 1, "diameter {} > d+1 = {}", corner.diameter, d + 1);
            assert!(s.contains_sub(&corner.sequence()));
            let floor = zero_corner_min_diameter(&s).unwrap().unwrap().diameter;
            assert!(corner.diameter >= floor);
        }
    }

    #[test]
    fn extraction_rejects_bad_inputs() {
        // zero entry
        assert!(extract_zero_corner(&seq(3, &[0, 1, 1, 1, 2, 2])).is_err());
        // zero-sum free part too long
        assert!(extract_zero_corner(&seq(7, &[1, 2, 3])).is_err());
    }

    #[test]
    fn corner_validation() {
        let e = seq(4, &[1]);
        let f = seq(4, &[3]);
        let h = seq(4, &[3]);
        let c = ZeroCorner::new(e, f, h).unwrap();
        assert_eq!(c.diameter, 2);
        assert!(ZeroCorner::new(seq(4, &[1]), seq(4, &[1]), seq(4, &[3])).is_err());
        assert!(ZeroCorner::new(seq(4, &[]), seq(4, &[3]), seq(4, &[3])).is_err());
    }
}
