//! Isotopy classes of arcs and closed curves, stored as reduced cutting
//! sequences against the axis system.
//!
//! The axis through the punctures is cut into the segments `s_0 … s_n`, where
//! `s_0` runs from the outer boundary to `p_1`, `s_j` from `p_j` to `p_{j+1}`
//! and `s_n` from `p_n` back to the boundary. These arcs cut the disk into the
//! upper and lower half-disks, so a transverse arc or curve is recorded by the
//! ordered list of segments it crosses together with the crossing direction.
//! A sequence with no backtracking (and, for arcs, no corner at an endpoint)
//! is in minimal position with every segment, and two simple classes are
//! isotopic exactly when their reduced sequences agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Half {
    Upper,
    Lower,
}

impl Half {
    pub fn other(self) -> Half {
        match self {
            Half::Upper => Half::Lower,
            Half::Lower => Half::Upper,
        }
    }
}

/// One transverse crossing of the axis: the segment crossed and whether the
/// crossing goes from the lower half into the upper half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub seg: u8,
    pub up: bool,
}

impl Crossing {
    pub fn new(seg: u8, up: bool) -> Self {
        Crossing { seg, up }
    }

    pub fn flipped(self) -> Self {
        Crossing { seg: self.seg, up: !self.up }
    }

    /// Half entered after the crossing.
    pub fn into_half(self) -> Half {
        if self.up {
            Half::Upper
        } else {
            Half::Lower
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Arc,
    Curve,
}

/// Essential simple arc between two distinct punctures, in canonical form:
/// `start < end`, reduced crossing sequence read from `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcClass {
    n: u8,
    start: u8,
    end: u8,
    first: Half,
    crossings: Vec<Crossing>,
}

/// Essential simple closed curve in canonical form: cyclically reduced,
/// starting with an upward crossing, least among its rotations and reversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    n: u8,
    crossings: Vec<Crossing>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    Arc(ArcClass),
    Curve(CurveClass),
}

fn check_alternation(first: Option<Half>, crossings: &[Crossing], cyclic: bool) -> Result<()> {
    let mut half = first;
    for c in crossings {
        if let Some(h) = half {
            // leaving `h` means crossing into the other half
            if c.into_half() == h {
                return Err(Error::NotEmbedded(format!("crossing sequence does not alternate at segment {}", c.seg)));
            }
        }
        half = Some(c.into_half());
    }
    if cyclic && crossings.len() % 2 == 1 {
        return Err(Error::NotEmbedded("closed sequence of odd length".into()));
    }
    Ok(())
}

fn free_reduce(crossings: &[Crossing]) -> Vec<Crossing> {
    let mut stack: Vec<Crossing> = Vec::with_capacity(crossings.len());
    for &c in crossings {
        match stack.last() {
            Some(top) if top.seg == c.seg => {
                stack.pop();
            }
            _ => stack.push(c),
        }
    }
    stack
}

impl ArcClass {
    /// Canonicalizes an arbitrary transverse path from `start` to `end`.
    ///
    /// `first` is the half entered when leaving `start`; it must agree with
    /// the direction of the first crossing when there is one.
    pub fn from_path(n: usize, start: u8, end: u8, first: Half, crossings: &[Crossing]) -> Result<Self> {
        check_puncture(n, start)?;
        check_puncture(n, end)?;
        if start == end {
            return Err(Error::SameEndpoint(start));
        }
        check_alternation(Some(first), crossings, false)?;
        if let Some(c) = crossings.iter().find(|c| c.seg as usize > n) {
            return Err(Error::NotEmbedded(format!("segment {} out of range", c.seg)));
        }
        let mut word = free_reduce(crossings);
        let mut first = first;
        loop {
            let mut changed = false;
            if let Some(c) = word.first() {
                if c.seg + 1 == start || c.seg == start {
                    first = c.into_half();
                    word.remove(0);
                    changed = true;
                }
            }
            if let Some(c) = word.last() {
                if c.seg + 1 == end || c.seg == end {
                    word.pop();
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if word.is_empty() && start.abs_diff(end) == 1 {
            first = Half::Upper;
        }
        let arc = ArcClass { n: n as u8, start, end, first, crossings: word };
        Ok(if start > end { arc.reversed() } else { arc })
    }

    /// The arc from `i` to `j` running through the upper half without crossing
    /// the axis; for adjacent punctures this is the straight segment.
    pub fn over(n: usize, i: u8, j: u8) -> Result<Self> {
        Self::from_path(n, i, j, Half::Upper, &[])
    }

    fn reversed(&self) -> Self {
        let crossings: Vec<Crossing> = self.crossings.iter().rev().map(|c| c.flipped()).collect();
        ArcClass { n: self.n, start: self.end, end: self.start, first: self.last_half(), crossings }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn endpoints(&self) -> (u8, u8) {
        (self.start, self.end)
    }

    pub fn first_half(&self) -> Half {
        self.first
    }

    /// Half containing the final chord into `end`.
    pub fn last_half(&self) -> Half {
        match self.crossings.last() {
            Some(c) => c.into_half(),
            None => self.first,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// The same arc read from `from`; errors if `from` is not an endpoint.
    pub fn oriented_from(&self, from: u8) -> Result<(u8, Half, Vec<Crossing>, u8)> {
        if from == self.start {
            Ok((self.start, self.first, self.crossings.clone(), self.end))
        } else if from == self.end {
            let r = self.reversed();
            Ok((r.start, r.first, r.crossings, r.end))
        } else {
            Err(Error::BadEndpoint(from))
        }
    }
}

impl CurveClass {
    /// Canonicalizes a closed transverse path. The sequence is read
    /// cyclically and must alternate between the two halves.
    pub fn from_cycle(n: usize, crossings: &[Crossing]) -> Result<Self> {
        check_alternation(None, crossings, true)?;
        if let (Some(f), Some(l)) = (crossings.first(), crossings.last()) {
            if f.up == l.up {
                return Err(Error::NotEmbedded("closed sequence does not alternate".into()));
            }
        }
        if let Some(c) = crossings.iter().find(|c| c.seg as usize > n) {
            return Err(Error::NotEmbedded(format!("segment {} out of range", c.seg)));
        }
        let mut word = free_reduce(crossings);
        while word.len() >= 2 && word[0].seg == word[word.len() - 1].seg {
            word.pop();
            word.remove(0);
        }
        if word.is_empty() {
            return Err(Error::Inessential("curve bounds a disk".into()));
        }
        let canonical = canonical_rotation(&word);
        let curve = CurveClass { n: n as u8, crossings: canonical };
        if curve.crossings.len() == 2 {
            let inside = curve.inside().len();
            if inside <= 1 || inside >= n {
                return Err(Error::Inessential(format!(
                    "curve bounds a once-punctured disk ({inside} of {n} punctures inside)"
                )));
            }
        }
        Ok(curve)
    }

    /// The round curve enclosing exactly the punctures `lo..=hi`.
    pub fn round(n: usize, lo: u8, hi: u8) -> Result<Self> {
        if lo == 0 || lo > hi || hi as usize > n {
            return Err(Error::BadMarks(format!("run {lo}..={hi} outside 1..={n}")));
        }
        Self::from_cycle(n, &[Crossing::new(lo - 1, true), Crossing::new(hi, false)])
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Punctures on the side of the curve away from the outer boundary.
    pub fn inside(&self) -> Vec<u8> {
        let m = self.crossings.len();
        let mut parity = vec![false; self.n as usize + 1];
        for t in 0..m {
            let c = self.crossings[t];
            if !c.up {
                continue;
            }
            let d = self.crossings[(t + 1) % m];
            let (a, b) = (c.seg.min(d.seg), c.seg.max(d.seg));
            for k in (a + 1)..=b {
                parity[k as usize] ^= true;
            }
        }
        (1..=self.n).filter(|&k| parity[k as usize]).collect()
    }
}

fn canonical_rotation(word: &[Crossing]) -> Vec<Crossing> {
    let m = word.len();
    let rev: Vec<Crossing> = word.iter().rev().map(|c| c.flipped()).collect();
    let mut best: Option<Vec<Crossing>> = None;
    for w in [word, rev.as_slice()] {
        for s in 0..m {
            if !w[s].up {
                continue;
            }
            let cand: Vec<Crossing> = w[s..].iter().chain(w[..s].iter()).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("alternating cycle has an upward crossing")
}

fn check_puncture(n: usize, p: u8) -> Result<()> {
    if p == 0 || p as usize > n {
        Err(Error::BadMarks(format!("puncture {p} outside 1..={n}")))
    } else {
        Ok(())
    }
}

impl Class {
    pub fn n(&self) -> usize {
        match self {
            Class::Arc(a) => a.n(),
            Class::Curve(c) => c.n(),
        }
    }

    pub fn kind(&self) -> ClassKind {
        match self {
            Class::Arc(_) => ClassKind::Arc,
            Class::Curve(_) => ClassKind::Curve,
        }
    }

    pub fn as_arc(&self) -> Option<&ArcClass> {
        match self {
            Class::Arc(a) => Some(a),
            Class::Curve(_) => None,
        }
    }

    pub fn as_curve(&self) -> Option<&CurveClass> {
        match self {
            Class::Curve(c) => Some(c),
            Class::Arc(_) => None,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        match self {
            Class::Arc(a) => a.crossings(),
            Class::Curve(c) => c.crossings(),
        }
    }

    pub fn endpoints(&self) -> Option<(u8, u8)> {
        self.as_arc().map(|a| a.endpoints())
    }
}

impl From<ArcClass> for Class {
    fn from(a: ArcClass) -> Self {
        Class::Arc(a)
    }
}

impl From<CurveClass> for Class {
    fn from(c: CurveClass) -> Self {
        Class::Curve(c)
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.seg, if self.up { '^' } else { 'v' })
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Arc(a) => {
                let h = if a.first == Half::Upper { "U" } else { "L" };
                write!(f, "arc {}-{} {h}[", a.start, a.end)?;
                for (i, c) in a.crossings.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
            Class::Curve(c) => {
                f.write_str("curve (")?;
                for (i, x) in c.crossings.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cr(seg: u8, up: bool) -> Crossing {
        Crossing::new(seg, up)
    }

    #[test]
    fn adjacent_arc_halves_agree() {
        let u = ArcClass::from_path(5, 1, 2, Half::Upper, &[]).unwrap();
        let l = ArcClass::from_path(5, 1, 2, Half::Lower, &[]).unwrap();
        assert_eq!(u, l);
        let u = ArcClass::from_path(5, 1, 3, Half::Upper, &[]).unwrap();
        let l = ArcClass::from_path(5, 1, 3, Half::Lower, &[]).unwrap();
        assert_ne!(u, l);
    }

    #[test]
    fn finger_through_an_edge_is_removed() {
        // push the straight arc 1-2 down through s_3 and back
        let fingered = ArcClass::from_path(5, 1, 2, Half::Upper, &[cr(3, false), cr(3, true)]).unwrap();
        assert_eq!(fingered, ArcClass::over(5, 1, 2).unwrap());
    }

    #[test]
    fn corner_spins_are_removed() {
        // spin the start of arc 2-4 once around p2
        let spun = ArcClass::from_path(5, 2, 4, Half::Upper, &[cr(1, false), cr(2, true)]).unwrap();
        assert_eq!(spun, ArcClass::over(5, 2, 4).unwrap());
    }

    #[test]
    fn orientation_is_normalized() {
        let a = ArcClass::from_path(5, 4, 1, Half::Lower, &[cr(2, true)]).unwrap();
        assert_eq!(a.endpoints(), (1, 4));
        assert_eq!(a.first_half(), Half::Upper);
        assert_eq!(a.crossings(), &[cr(2, false)]);
    }

    #[test]
    fn round_curves() {
        let c = CurveClass::round(5, 1, 2).unwrap();
        assert_eq!(c.inside(), vec![1, 2]);
        assert!(matches!(CurveClass::round(5, 3, 3), Err(Error::Inessential(_))));
        assert!(matches!(CurveClass::round(5, 1, 5), Err(Error::Inessential(_))));
    }

    #[test]
    fn curve_rotation_is_canonical() {
        let w = [cr(0, true), cr(2, false), cr(3, true), cr(5, false)];
        let a = CurveClass::from_cycle(5, &w).unwrap();
        let rotated = [w[2], w[3], w[0], w[1]];
        let b = CurveClass::from_cycle(5, &rotated).unwrap();
        let rev: Vec<Crossing> = w.iter().rev().map(|c| c.flipped()).collect();
        let c = CurveClass::from_cycle(5, &rev).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn non_alternating_rejected() {
        let r = CurveClass::from_cycle(5, &[cr(0, true), cr(2, true)]);
        assert!(matches!(r, Err(Error::NotEmbedded(_))));
    }
}
