//! Surface descriptors `(genus, Ends, 𝒜𝒢)` and their text syntax.
//!
//! ```text
//! descriptor := field (';' field)*
//! field      := 'genus' '=' ('inf' | N)
//!             | 'ends' '=' term
//!             | 'ag' '=' ('none' | 'all' | 'top' | '(' mark (',' mark)* ')')
//! mark       := 'none' | 'all' | 'top'
//! term       := 'empty' | 'cantor' | 'fin(' N ')' | 'char(' N ',' N ')'
//!             | 'union(' term (',' term)* ')'
//! ```
//!
//! A per-leaf mark list follows the leaves of `ends` from left to right.
//! `top` marks the top Cantor–Bendixson stratum of a countable leaf, the
//! finite set `E^(α)`, leaving the rest of the leaf unmarked.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::EndSpace;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Genus {
    Finite(u64),
    Infinite,
}

/// Which ends of a leaf are accumulated by genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mark {
    None,
    All,
    /// Only the top-rank points of a countable leaf.
    Top,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    genus: Genus,
    ends: EndSpace,
    marks: Vec<Mark>,
}

impl SurfaceDescriptor {
    /// Checks the term, one mark per leaf, no partial marks on Cantor leaves,
    /// and that the genus is infinite exactly when some end is marked. `top`
    /// on a finite leaf is read as `all`.
    pub fn new(genus: Genus, ends: EndSpace, marks: Vec<Mark>) -> Result<Self> {
        ends.check()?;
        let leaves = ends.leaves();
        if marks.len() != leaves.len() {
            return Err(Error::InvalidTerm(format!("{} marks for {} leaves", marks.len(), leaves.len())));
        }
        let mut out = Vec::with_capacity(marks.len());
        for (leaf, &m) in leaves.iter().zip(&marks) {
            out.push(match (leaf, m) {
                (EndSpace::Cantor, Mark::Top) => {
                    return Err(Error::InvalidTerm("a Cantor leaf is marked wholly or not at all".into()))
                }
                (EndSpace::Finite(_) | EndSpace::CharSpace { rank: 0, .. }, Mark::Top) => Mark::All,
                _ => m,
            });
        }
        let marked = out.iter().any(|&m| m != Mark::None);
        if marked != (genus == Genus::Infinite) {
            return Err(Error::InvalidTerm(
                "genus must be infinite exactly when some end is accumulated by genus".into(),
            ));
        }
        Ok(SurfaceDescriptor { genus, ends, marks: out })
    }

    /// Every leaf carries the same mark.
    pub fn uniform(genus: Genus, ends: EndSpace, mark: Mark) -> Result<Self> {
        let k = ends.leaves().len();
        Self::new(genus, ends, vec![mark; k])
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn ends(&self) -> &EndSpace {
        &self.ends
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    /// Leaves paired with their marks.
    pub fn marked_leaves(&self) -> Vec<(EndSpace, Mark)> {
        self.ends.leaves().into_iter().zip(self.marks.iter().copied()).collect()
    }

    pub fn is_infinite_type(&self) -> bool {
        self.genus == Genus::Infinite || self.ends.is_infinite()
    }

    /// Invariant under reordering and merging homeomorphic summands: the
    /// genus, the normalized fully marked part, the normalized unmarked part
    /// and the top-marked leaves merged by rank.
    pub fn canonical_key(&self) -> (Genus, EndSpace, EndSpace, Vec<(u32, u64)>) {
        let (mut all, mut none, mut top) = (Vec::new(), Vec::new(), Vec::<(u32, u64)>::new());
        for (leaf, m) in self.marked_leaves() {
            match m {
                Mark::All => all.push(leaf),
                Mark::None => none.push(leaf),
                Mark::Top => {
                    let EndSpace::CharSpace { rank, top: n } = leaf else { unreachable!("checked in new") };
                    match top.iter_mut().find(|(r, _)| *r == rank) {
                        Some(e) => e.1 += n,
                        None => top.push((rank, n)),
                    }
                }
            }
        }
        top.sort_unstable();
        (self.genus, EndSpace::Union(all).normalize(), EndSpace::Union(none).normalize(), top)
    }
}

impl fmt::Display for SurfaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.genus {
            Genus::Infinite => write!(f, "genus=inf; ")?,
            Genus::Finite(g) => write!(f, "genus={g}; ")?,
        }
        write!(f, "ends={}; ag=", self.ends)?;
        let name = |m: Mark| match m {
            Mark::None => "none",
            Mark::All => "all",
            Mark::Top => "top",
        };
        match self.marks.first() {
            Some(&m) if self.marks.iter().all(|&x| x == m) => write!(f, "{}", name(m)),
            None => write!(f, "none"),
            _ => {
                let parts: Vec<&str> = self.marks.iter().map(|&m| name(m)).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

impl std::str::FromStr for SurfaceDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let (mut genus, mut ends, mut ag) = (None, None, None);
        loop {
            p.skip_ws();
            if p.at_end() {
                break;
            }
            let key = p.word()?;
            p.expect('=')?;
            match key.as_str() {
                "genus" => {
                    let w = p.word()?;
                    genus = Some(if w == "inf" {
                        Genus::Infinite
                    } else {
                        Genus::Finite(w.parse().map_err(|_| p.error(format!("bad genus `{w}`")))?)
                    });
                }
                "ends" => ends = Some(p.term()?),
                "ag" => ag = Some(p.marks()?),
                other => return Err(p.error(format!("unknown field `{other}`"))),
            }
            p.skip_ws();
            if !p.eat(';') {
                break;
            }
        }
        p.end()?;
        let genus = genus.ok_or_else(|| p.error("missing genus".into()))?;
        let ends = ends.ok_or_else(|| p.error("missing ends".into()))?;
        let leaves = ends.leaves().len();
        let marks = match ag.unwrap_or(AgSpec::Uniform(Mark::None)) {
            AgSpec::Uniform(m) => vec![m; leaves],
            AgSpec::List(v) => v,
        };
        SurfaceDescriptor::new(genus, ends, marks)
    }
}

enum AgSpec {
    Uniform(Mark),
    List(Vec<Mark>),
}

pub(super) struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(super) fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse { at: self.pos, msg }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.rest().is_empty()
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> Result<String> {
        self.skip_ws();
        let t = self.rest();
        let len = t.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(t.len());
        if len == 0 {
            return Err(self.error("expected a word".into()));
        }
        self.pos += len;
        Ok(t[..len].to_string())
    }

    fn number(&mut self) -> Result<u64> {
        let w = self.word()?;
        w.parse().map_err(|_| self.error(format!("expected a number, got `{w}`")))
    }

    pub(super) fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("trailing input".into()))
        }
    }

    pub(super) fn term(&mut self) -> Result<EndSpace> {
        let w = self.word()?;
        let t = match w.as_str() {
            "empty" => EndSpace::Empty,
            "cantor" => EndSpace::Cantor,
            "fin" => {
                self.expect('(')?;
                let k = self.number()?;
                self.expect(')')?;
                EndSpace::Finite(k)
            }
            "char" => {
                self.expect('(')?;
                let rank = self.number()?;
                self.expect(',')?;
                let top = self.number()?;
                self.expect(')')?;
                let rank = u32::try_from(rank).map_err(|_| self.error("rank too large".into()))?;
                EndSpace::CharSpace { rank, top }
            }
            "union" => {
                self.expect('(')?;
                let mut parts = vec![self.term()?];
                while self.eat(',') {
                    parts.push(self.term()?);
                }
                self.expect(')')?;
                EndSpace::Union(parts)
            }
            other => return Err(self.error(format!("unknown term `{other}`"))),
        };
        t.check()?;
        Ok(t)
    }

    fn mark(&mut self) -> Result<Mark> {
        match self.word()?.as_str() {
            "none" => Ok(Mark::None),
            "all" => Ok(Mark::All),
            "top" => Ok(Mark::Top),
            other => Err(self.error(format!("unknown mark `{other}`"))),
        }
    }

    fn marks(&mut self) -> Result<AgSpec> {
        if self.eat('(') {
            let mut v = vec![self.mark()?];
            while self.eat(',') {
                v.push(self.mark()?);
            }
            self.expect(')')?;
            Ok(AgSpec::List(v))
        } else {
            Ok(AgSpec::Uniform(self.mark()?))
        }
    }
}

pub const CATALOG: [&str; 8] = [
    "cantor_tree",
    "blooming_cantor_tree",
    "loch_ness",
    "plane_minus_cantor",
    "tripod",
    "spotted_loch_ness",
    "jacobs_ladder",
    "punctured_jacobs_ladder",
];

pub fn named_surface(name: &str) -> Result<SurfaceDescriptor> {
    let text = match name {
        "cantor_tree" => "genus=0; ends=cantor; ag=none",
        "blooming_cantor_tree" => "genus=inf; ends=cantor; ag=all",
        "loch_ness" => "genus=inf; ends=fin(1); ag=all",
        "plane_minus_cantor" => "genus=0; ends=union(cantor, fin(1)); ag=none",
        "tripod" => "genus=inf; ends=fin(3); ag=all",
        // punctures converging to the one end accumulated by genus
        "spotted_loch_ness" => "genus=inf; ends=char(1, 1); ag=top",
        "jacobs_ladder" => "genus=inf; ends=fin(2); ag=all",
        "punctured_jacobs_ladder" => "genus=inf; ends=union(fin(2), fin(1)); ag=(all, none)",
        other => return Err(Error::UnknownName(other.to_string())),
    };
    text.parse()
}
