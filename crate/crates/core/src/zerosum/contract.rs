//! Contractions of a sequence along a subgroup: partitions into blocks whose
//! images in the quotient are irreducible zero-sum sequences, each block
//! replaced by its sum.

use super::ZSequence;
use crate::abelian::{quotient, GroupElement, Subgroup};
use crate::{Error, Result};
use std::collections::BTreeSet;

const CONTRACTION_LEN_CAP: usize = 24;

/// One contraction of a sequence along a subgroup `B`: the blocks partition
/// the parent multiset, every block image mod `B` is an irreducible zero-sum
/// over `A/B`, and `result` collects the block sums as a sequence over the
/// abstract form of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub blocks: Vec<ZSequence>,
    /// Block sums as elements of the parent group (all lie in `B`).
    pub sums: Vec<GroupElement>,
    /// Block sums transported to the abstract form of `B`.
    pub result: ZSequence,
}

/// Enumerates every `B`-contraction of `S` up to reordering of blocks;
/// blocks equal as multisets are not distinguished.
pub fn contractions(s: &ZSequence, b: &Subgroup) -> Result<Vec<Contraction>> {
    if b.parent() != s.group() {
        return Err(Error::InvalidSpec(
            "subgroup does not belong to the sequence's group".into(),
        ));
    }
    if s.len() > CONTRACTION_LEN_CAP {
        return Err(Error::Resource(format!(
            "contraction search capped at length {CONTRACTION_LEN_CAP}, got {}",
            s.len()
        )));
    }
    if !b.contains(&s.theta()) {
        return Err(Error::Domain(
            "sequence sum does not lie in the subgroup".into(),
        ));
    }
    let a = s.group();
    let (q, proj) = quotient(a, b)?;
    let max_block = q.order().max(1) as usize; // blocks are irreducible mod B

    let is_block = |positions: &[usize]| -> bool {
        let img: Vec<GroupElement> = positions
            .iter()
            .map(|&p| proj.apply(&s.entries()[p]))
            .collect();
        ZSequence::new(q.clone(), img)
            .map(|t| t.is_irreducible_zero_sum())
            .unwrap_or(false)
    };

    let mut partitions: BTreeSet<Vec<Vec<GroupElement>>> = BTreeSet::new();
    let all: Vec<usize> = (0..s.len()).collect();
    let mut current: Vec<Vec<usize>> = vec![];
    partition_search(s, &all, &is_block, max_block, &mut current, &mut partitions);

    let (abs, iso) = b.as_group();
    let mut out = vec![];
    for blocks in partitions {
        let blocks: Vec<ZSequence> = blocks
            .into_iter()
            .map(|entries| ZSequence::new(a.clone(), entries).expect("entries lie in the group"))
            .collect();
        let sums: Vec<GroupElement> = blocks.iter().map(|t| t.theta()).collect();
        let abstract_entries: Vec<GroupElement> =
            sums.iter().map(|x| iso[x].clone()).collect();
        let result = ZSequence::new(abs.clone(), abstract_entries)?;
        out.push(Contraction {
            blocks,
            sums,
            result,
        });
    }
    Ok(out)
}

fn partition_search(
    s: &ZSequence,
    remaining: &[usize],
    is_block: &impl Fn(&[usize]) -> bool,
    max_block: usize,
    current: &mut Vec<Vec<usize>>,
    out: &mut BTreeSet<Vec<Vec<GroupElement>>>,
) {
    if remaining.is_empty() {
        let mut blocks: Vec<Vec<GroupElement>> = current
            .iter()
            .map(|pos| pos.iter().map(|&p| s.entries()[p].clone()).collect())
            .collect();
        blocks.sort();
        out.insert(blocks);
        return;
    }
    // the block containing the first remaining position
    let anchor = remaining[0];
    let rest = &remaining[1..];
    let mut pick = vec![];
    subsets_up_to(rest, 0, max_block - 1, &mut pick, &mut |extra| {
        let mut block = vec![anchor];
        block.extend(extra.iter().map(|&i| rest[i]));
        if !is_block(&block) {
            return;
        }
        let next: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|p| !block.contains(p))
            .collect();
        current.push(block);
        partition_search(s, &next, is_block, max_block, current, out);
        current.pop();
    });
}

fn subsets_up_to(
    pool: &[usize],
    from: usize,
    max_size: usize,
    pick: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    visit(pick);
    if pick.len() == max_size {
        return;
    }
    for i in from..pool.len() {
        pick.push(i);
        subsets_up_to(pool, i + 1, max_size, pick, visit);
        pick.pop();
    }
}
