use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Marked punctures: either a plain set `Q` or a partition `𝒬` of a subset of
/// the punctures into blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Marks {
    Points(Vec<u8>),
    Blocks(Vec<Vec<u8>>),
}

/// The disk with punctures `p_1 … p_n` on the horizontal axis, equivalently the
/// sphere with `n + 1` punctures where the outer boundary plays the role of the
/// extra puncture `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PuncturedDisk {
    n: usize,
    marks: Marks,
}

impl PuncturedDisk {
    pub fn new(n: usize, marks: Marks) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewPunctures(n));
        }
        if n > 60 {
            return Err(Error::BadMarks(format!("{n} punctures exceeds the supported maximum of 60")));
        }
        let marks = match marks {
            Marks::Points(mut pts) => {
                pts.sort_unstable();
                check_range(n, &pts)?;
                if pts.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::BadMarks("repeated puncture".into()));
                }
                Marks::Points(pts)
            }
            Marks::Blocks(blocks) => {
                let mut seen = BTreeSet::new();
                let mut out = Vec::with_capacity(blocks.len());
                for mut b in blocks {
                    if b.is_empty() {
                        return Err(Error::BadMarks("empty block".into()));
                    }
                    b.sort_unstable();
                    check_range(n, &b)?;
                    for &p in &b {
                        if !seen.insert(p) {
                            return Err(Error::BadMarks(format!("puncture {p} lies in two blocks")));
                        }
                    }
                    out.push(b);
                }
                Marks::Blocks(out)
            }
        };
        Ok(PuncturedDisk { n, marks })
    }

    /// All punctures marked, as singletons.
    pub fn all_marked(n: usize) -> Result<Self> {
        Self::new(n, Marks::Points((1..=n as u8).collect()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marks(&self) -> &Marks {
        &self.marks
    }

    /// Marked punctures in increasing order.
    pub fn marked(&self) -> Vec<u8> {
        match &self.marks {
            Marks::Points(p) => p.clone(),
            Marks::Blocks(b) => {
                let mut v: Vec<u8> = b.iter().flatten().copied().collect();
                v.sort_unstable();
                v
            }
        }
    }

    pub fn is_marked(&self, p: u8) -> bool {
        match &self.marks {
            Marks::Points(pts) => pts.binary_search(&p).is_ok(),
            Marks::Blocks(b) => b.iter().any(|blk| blk.contains(&p)),
        }
    }

    /// Blocks of the partition; a point set is read as singletons.
    pub fn blocks(&self) -> Vec<Vec<u8>> {
        match &self.marks {
            Marks::Points(p) => p.iter().map(|&x| vec![x]).collect(),
            Marks::Blocks(b) => b.clone(),
        }
    }

    pub fn block_count(&self) -> usize {
        match &self.marks {
            Marks::Points(p) => p.len(),
            Marks::Blocks(b) => b.len(),
        }
    }

    pub fn block_of(&self, p: u8) -> Option<usize> {
        self.blocks().iter().position(|b| b.contains(&p))
    }

    /// Same geometry, different marks.
    pub fn with_marks(&self, marks: Marks) -> Result<Self> {
        Self::new(self.n, marks)
    }
}

fn check_range(n: usize, pts: &[u8]) -> Result<()> {
    match pts.iter().find(|&&p| p == 0 || p as usize > n) {
        Some(p) => Err(Error::BadMarks(format!("puncture {p} outside 1..={n}"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_all_marked() {
        let d = PuncturedDisk::all_marked(5).unwrap();
        assert_eq!(d.marked().len(), 5);
        assert_eq!(d.block_count(), 5);
    }

    #[test]
    fn seven_with_blocks() {
        let d = PuncturedDisk::new(7, Marks::Blocks(vec![vec![1, 2], vec![3], vec![4, 5], vec![6], vec![7]])).unwrap();
        assert_eq!(d.block_count(), 5);
        assert_eq!(d.block_of(5), Some(2));
    }

    #[test]
    fn too_small() {
        assert_eq!(PuncturedDisk::new(2, Marks::Points(vec![1, 2])), Err(Error::TooFewPunctures(2)));
    }

    #[test]
    fn overlapping_blocks() {
        let r = PuncturedDisk::new(5, Marks::Blocks(vec![vec![1, 2], vec![2, 3]]));
        assert!(matches!(r, Err(Error::BadMarks(_))));
        let r = PuncturedDisk::new(5, Marks::Points(vec![1, 9]));
        assert!(matches!(r, Err(Error::BadMarks(_))));
    }
}
