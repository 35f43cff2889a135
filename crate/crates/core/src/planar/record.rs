//! Serialized form of a class.

use serde::{Deserialize, Serialize};

use super::class::{Class, ClassKind};
use super::fingerprint::Fingerprint;
use super::twist::Word;
use crate::error::{Error, Result};

/// `{kind, endpoints?, fingerprint, word?}`; the fingerprint alone determines
/// the class, the word records how it was reached from a seed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassRecord {
    pub kind: ClassKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<(u8, u8)>,
    pub fingerprint: Fingerprint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
}

impl ClassRecord {
    pub fn new(x: &Class, word: Option<&Word>) -> Self {
        ClassRecord {
            kind: x.kind(),
            endpoints: x.endpoints(),
            fingerprint: Fingerprint::of(x),
            word: word.map(|w| w.to_string()),
        }
    }

    pub fn to_class(&self) -> Result<Class> {
        if self.kind != self.fingerprint.kind || self.endpoints != self.fingerprint.endpoints {
            return Err(Error::NotEmbedded("record header disagrees with its fingerprint".into()));
        }
        self.fingerprint.to_class()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::ArcClass;

    #[test]
    fn json_round_trip() {
        let w: Word = "s2 S1 s3".parse().unwrap();
        let x = w.apply(&Class::Arc(ArcClass::over(4, 1, 2).unwrap())).unwrap();
        let rec = ClassRecord::new(&x, Some(&w));
        let text = serde_json::to_string(&rec).unwrap();
        let back: ClassRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert_eq!(back.to_class().unwrap(), x);
    }
}
