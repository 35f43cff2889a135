//! Exact decisions of `d ≤ 2` from the complement of two classes.

use serde::{Deserialize, Serialize};

use super::wordball::is_member;
use super::GraphKind;
use crate::error::{Error, Result};
use crate::planar::{complement_analysis, intersection_number, Class, Complement, PuncturedDisk};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Zero,
    One,
    Two,
    AtLeastThree,
}

impl Distance {
    pub fn as_u8(self) -> Option<u8> {
        match self {
            Distance::Zero => Some(0),
            Distance::One => Some(1),
            Distance::Two => Some(2),
            Distance::AtLeastThree => None,
        }
    }
}

/// With exactly four blocks the separating-curve graph joins curves meeting
/// at most twice, since disjoint pairs alone leave it disconnected.
pub fn sep2_uses_twice_rule(disk: &PuncturedDisk) -> bool {
    disk.block_count() == 4
}

/// Decides whether `d(x, y) ≤ 2`.
///
/// For arcs a common disjoint neighbour exists iff some complementary
/// component of `x ∪ y` has two distinct marked punctures on its closure. For
/// separating curves it exists iff some component admits a curve whose sides
/// each carry whole blocks, at least two of them. In the four-block graph a
/// pair without such a disjoint witness is reported as undecidable.
pub fn distance_leq2(kind: GraphKind, x: &Class, y: &Class, disk: &PuncturedDisk) -> Result<Distance> {
    let bad: Vec<usize> =
        [x, y].iter().enumerate().filter(|(_, c)| !is_member(kind, c, disk).unwrap_or(false)).map(|(i, _)| i).collect();
    match kind {
        GraphKind::A2 | GraphKind::Sep2 => {}
        _ => return Err(Error::KindMismatch),
    }
    let expect = if kind == GraphKind::A2 { crate::planar::ClassKind::Arc } else { crate::planar::ClassKind::Curve };
    if x.kind() != expect || y.kind() != expect {
        return Err(Error::KindMismatch);
    }
    if !bad.is_empty() {
        return Err(Error::MembershipFail(bad));
    }
    if x.n() != disk.n() || y.n() != disk.n() {
        return Err(Error::DiskMismatch(x.n(), disk.n()));
    }
    if x == y {
        return Ok(Distance::Zero);
    }
    let i = intersection_number(x, y);
    let twice = kind == GraphKind::Sep2 && sep2_uses_twice_rule(disk);
    if i == 0 || (twice && i <= 2) {
        return Ok(Distance::One);
    }
    let comp = complement_analysis(&[x.clone(), y.clone()])?;
    let found = match kind {
        GraphKind::A2 => comp.components.iter().any(|c| c.marked_count(disk) >= 2),
        _ => (0..comp.len()).any(|d| sep2_witness_in(&comp, d, disk)),
    };
    if found {
        Ok(Distance::Two)
    } else if twice {
        Err(Error::Undecidable(format!(
            "no disjoint common neighbour and the pair meets {i} times; \
             a neighbour meeting both at most twice is not searched"
        )))
    } else {
        Ok(Distance::AtLeastThree)
    }
}

/// Whether component `d` contains a curve splitting the blocks with at least
/// two whole blocks on each side. Holes sharing a block must stay together;
/// any bipartition of the resulting atoms is realized by a curve in `d`.
fn sep2_witness_in(comp: &Complement, d: usize, disk: &PuncturedDisk) -> bool {
    let holes = comp.holes(d);
    let t = disk.block_count();
    if t < 4 || holes.len() < 2 {
        return false;
    }
    let mut atom: Vec<usize> = (0..holes.len()).collect();
    fn find(a: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while a[r] != r {
            r = a[r];
        }
        a[x] = r;
        r
    }
    let mut owner: Vec<Option<usize>> = vec![None; t];
    for (h, hole) in holes.iter().enumerate() {
        for &p in &hole.punctures {
            if let Some(b) = disk.block_of(p) {
                match owner[b] {
                    None => owner[b] = Some(h),
                    Some(o) => {
                        let (ra, rb) = (find(&mut atom, o), find(&mut atom, h));
                        atom[ra] = rb;
                    }
                }
            }
        }
    }
    let mut weight: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for h in 0..holes.len() {
        let r = find(&mut atom, h);
        weight.entry(r).or_insert(0);
    }
    for o in owner.iter().flatten() {
        let r = find(&mut atom, *o);
        *weight.get_mut(&r).unwrap() += 1;
    }
    if weight.len() < 2 {
        return false;
    }
    // subset sums of block counts over atoms
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for &w in weight.values() {
        for s in (w..=t).rev() {
            if reach[s - w] {
                reach[s] = true;
            }
        }
    }
    (2..=t - 2).any(|s| reach[s])
}
