//! Half-twist action on cutting sequences and generator words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::class::{ArcClass, Class, Crossing, CurveClass, Half};
use crate::error::{Error, Result};

/// A half-twist `σ_i` (or its inverse) exchanging `p_i` and `p_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub index: u8,
    pub positive: bool,
}

impl Generator {
    pub fn new(index: u8, positive: bool) -> Self {
        Generator { index, positive }
    }

    pub fn inverse(self) -> Self {
        Generator { index: self.index, positive: !self.positive }
    }

    /// All `σ_i^{±1}` for a disk with `n` punctures, positive before negative.
    pub fn all(n: usize) -> Vec<Generator> {
        let mut v = Vec::with_capacity(2 * (n - 1));
        for i in 1..n as u8 {
            v.push(Generator::new(i, true));
            v.push(Generator::new(i, false));
        }
        v
    }

    fn check(self, n: usize) -> Result<()> {
        if self.index == 0 || self.index as usize >= n {
            Err(Error::BadGenerator(self.to_string()))
        } else {
            Ok(())
        }
    }

    /// Segment the moved germs are routed across: left of the pair for the
    /// positive twist, right of it for the inverse.
    fn side(self) -> u8 {
        if self.positive {
            self.index - 1
        } else {
            self.index + 1
        }
    }

    fn substitute(self, c: Crossing, out: &mut Vec<Crossing>) {
        let i = self.index;
        if c.seg != i {
            out.push(c);
            return;
        }
        let (a, b) = if self.positive == c.up { (i + 1, i - 1) } else { (i - 1, i + 1) };
        out.push(Crossing::new(a, c.up));
        out.push(Crossing::new(i, !c.up));
        out.push(Crossing::new(b, c.up));
    }

    fn swap(self, p: u8) -> Option<u8> {
        if p == self.index {
            Some(p + 1)
        } else if p == self.index + 1 {
            Some(p - 1)
        } else {
            None
        }
    }

    pub fn apply(self, x: &Class) -> Result<Class> {
        self.check(x.n())?;
        Ok(match x {
            Class::Curve(c) => Class::Curve(self.apply_curve(c)?),
            Class::Arc(a) => Class::Arc(self.apply_arc(a)?),
        })
    }

    fn apply_curve(self, c: &CurveClass) -> Result<CurveClass> {
        let mut w = Vec::with_capacity(c.crossings().len() * 3);
        for &x in c.crossings() {
            self.substitute(x, &mut w);
        }
        CurveClass::from_cycle(c.n(), &w)
    }

    fn apply_arc(self, a: &ArcClass) -> Result<ArcClass> {
        let (start, end) = a.endpoints();
        // normalize so that the arc leaves `start` and reaches `end` through
        // the upper half; germs at the punctures are then standard
        let mut body = Vec::with_capacity(a.crossings().len() + 2);
        if a.first_half() == Half::Lower {
            body.push(Crossing::new(start, false));
        }
        body.extend_from_slice(a.crossings());
        if a.last_half() == Half::Lower {
            body.push(Crossing::new(end, true));
        }

        let mut w = Vec::with_capacity(body.len() * 3 + 2);
        let new_start = self.swap(start);
        if new_start.is_some() {
            w.push(Crossing::new(self.side(), true));
        }
        for &x in &body {
            self.substitute(x, &mut w);
        }
        let new_end = self.swap(end);
        if new_end.is_some() {
            w.push(Crossing::new(self.side(), false));
        }
        let first = if new_start.is_some() { Half::Lower } else { Half::Upper };
        ArcClass::from_path(a.n(), new_start.unwrap_or(start), new_end.unwrap_or(end), first, &w)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.positive { 's' } else { 'S' }, self.index)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadGenerator(s.to_string());
        let mut chars = s.chars();
        let positive = match chars.next() {
            Some('s') => true,
            Some('S') => false,
            _ => return Err(bad()),
        };
        let index: u8 = chars.as_str().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Generator { index, positive })
    }
}

/// A word in the half-twists. Written left to right, applied right to left:
/// `s1 s2` applied to `x` is `σ_1(σ_2(x))`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: &Class) -> Result<Class> {
        let mut cur = x.clone();
        for g in self.0.iter().rev() {
            cur = g.apply(&cur)?;
        }
        Ok(cur)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    /// `g · self`, i.e. `g` applied after this word.
    pub fn then(&self, g: Generator) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(g);
        v.extend_from_slice(&self.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(Word)
    }
}

/// Reads `[word *] seed` on the disk with `n` punctures, where the seed is
/// `arc(i, j)` (the arc over the axis) or `curve(lo, hi)` (the round curve
/// around `lo..=hi`). The word, if any, is applied to the seed.
pub fn parse_class(n: usize, text: &str) -> Result<(Class, Option<Word>)> {
    let (word, seed, offset) = match text.rfind('*') {
        Some(k) => (Some(text[..k].parse::<Word>()?), &text[k + 1..], k + 1),
        None => (None, text, 0),
    };
    let bad = |msg: &str| Error::Parse { at: offset, msg: msg.to_string() };
    let seed = seed.trim();
    let (name, rest) = seed.split_once('(').ok_or_else(|| bad("expected arc(i, j) or curve(lo, hi)"))?;
    let args = rest.strip_suffix(')').ok_or_else(|| bad("missing closing parenthesis"))?;
    let nums: Vec<u8> = args
        .split(',')
        .map(|a| a.trim().parse::<u8>().map_err(|_| bad("puncture indices are small positive integers")))
        .collect::<Result<_>>()?;
    let [i, j] = nums[..] else {
        return Err(bad("seeds take two puncture indices"));
    };
    let base = match name.trim() {
        "arc" => Class::Arc(ArcClass::over(n, i.min(j), i.max(j))?),
        "curve" => Class::Curve(CurveClass::round(n, i, j)?),
        other => return Err(bad(&format!("unknown seed {other}"))),
    };
    match word {
        Some(w) => Ok((w.apply(&base)?, Some(w))),
        None => Ok((base, None)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(n: usize, i: u8, j: u8) -> Class {
        Class::Arc(ArcClass::over(n, i, j).unwrap())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn class_expressions() {
        let (x, w) = parse_class(4, "s2 s1 s1 s2 * arc(1,2)").unwrap();
        assert_eq!(x, arc(4, 1, 2));
        assert_eq!(w.unwrap().len(), 4);
        let (c, _) = parse_class(5, "curve(2, 3)").unwrap();
        assert_eq!(c, Class::Curve(CurveClass::round(5, 2, 3).unwrap()));
        assert!(parse_class(5, "arc(1 2)").is_err());
        assert!(parse_class(5, "s9 * arc(1,2)").is_err());
        assert!(matches!(parse_class(5, "s1 * blob(1,2)"), Err(Error::Parse { at: 4, .. })));
    }

    #[test]
    fn twist_fixes_its_core_arc() {
        let a = arc(3, 1, 2);
        assert_eq!(w("s1").apply(&a).unwrap(), a);
        assert_eq!(w("S1").apply(&a).unwrap(), a);
    }

    #[test]
    fn inverse_cancels() {
        let seeds = [arc(5, 1, 2), arc(5, 2, 4), arc(5, 1, 5)];
        for x in &seeds {
            for g in Generator::all(5) {
                let y = g.apply(x).unwrap();
                assert_eq!(g.inverse().apply(&y).unwrap(), *x, "{g} on {x}");
            }
        }
        let c = Class::Curve(CurveClass::round(5, 2, 3).unwrap());
        for g in Generator::all(5) {
            assert_eq!(g.inverse().apply(&g.apply(&c).unwrap()).unwrap(), c);
        }
    }

    #[test]
    fn braid_relation_on_seeds() {
        let x = arc(4, 2, 3);
        assert_eq!(w("s1 s2 s1").apply(&x).unwrap(), w("s2 s1 s2").apply(&x).unwrap());
        assert_eq!(w("s1 s3").apply(&x).unwrap(), w("s3 s1").apply(&x).unwrap());
    }

    #[test]
    fn full_twist_moves_neighbour_arc() {
        let x = arc(3, 2, 3);
        assert_ne!(w("s1 s1").apply(&x).unwrap(), x);
    }

    #[test]
    fn twist_permutes_round_curves() {
        // σ_2 carries the curve around {1,2} to one around {1,3}
        let c = Class::Curve(CurveClass::round(4, 1, 2).unwrap());
        let d = w("s2").apply(&c).unwrap();
        assert_ne!(d, c);
        assert_eq!(d.as_curve().unwrap().inside(), vec![1, 3]);
    }

    #[test]
    fn parse_words() {
        assert_eq!(w("s2 S1").0, vec![Generator::new(2, true), Generator::new(1, false)]);
        assert!("x1".parse::<Word>().is_err());
        assert!("s0".parse::<Word>().is_err());
        assert_eq!(w("s2 S1").to_string(), "s2 S1");
    }

    #[test]
    fn out_of_range_generator() {
        assert!(matches!(w("s3").apply(&arc(3, 1, 2)), Err(Error::BadGenerator(_))));
    }
}
