//! Finite counts and the Beth tower.
//!
//! Cardinals are either `Fin(n)` or `Beth(a)` for an ordinal notation `a`.
//! Every finite cardinal lies below every Beth value and the tower is
//! strictly increasing in its index. Nothing between consecutive Beth values
//! is representable.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hf::HfCode;
use crate::ordinal::{Cofinality, Ordinal};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SymCardinal {
    Fin(BigUint),
    Beth(Ordinal),
}

impl SymCardinal {
    pub fn fin(n: u64) -> Self {
        SymCardinal::Fin(BigUint::from(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SymCardinal::Fin(_))
    }
}

impl Ord for SymCardinal {
    fn cmp(&self, other: &Self) -> Ordering {
        use SymCardinal::*;
        match (self, other) {
            (Fin(a), Fin(b)) => a.cmp(b),
            (Fin(_), Beth(_)) => Ordering::Less,
            (Beth(_), Fin(_)) => Ordering::Greater,
            (Beth(a), Beth(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for SymCardinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn card_cmp(a: &SymCardinal, b: &SymCardinal) -> Ordering {
    a.cmp(b)
}

/// `card[A × B]`: the product for finite inputs, otherwise the maximum.
pub fn card_product(a: &SymCardinal, b: &SymCardinal) -> SymCardinal {
    match (a, b) {
        (SymCardinal::Fin(x), SymCardinal::Fin(y)) => SymCardinal::Fin(x * y),
        _ => a.max(b).clone(),
    }
}

/// `card[A ∪ B]`: for finite inputs the disjoint-union count `a + b`,
/// otherwise the maximum.
pub fn card_union(a: &SymCardinal, b: &SymCardinal) -> SymCardinal {
    match (a, b) {
        (SymCardinal::Fin(x), SymCardinal::Fin(y)) => SymCardinal::Fin(x + y),
        _ => a.max(b).clone(),
    }
}

/// `ℶ[a]`; `ℶ[0]` is `card[ℕ]`.
pub fn beth(index: &Ordinal) -> SymCardinal {
    SymCardinal::Beth(index.clone())
}

/// `ℶ[a]` with `a = 0` or `a` a limit.
pub fn is_strong_limit(c: &SymCardinal) -> bool {
    match c {
        SymCardinal::Fin(_) => false,
        SymCardinal::Beth(a) => a.is_zero() || a.is_limit(),
    }
}

/// `rank[x] = min{a | ℶ[a] > x}`: finite cardinals have rank `0`, and
/// `ℶ[a]` has rank `a + 1`.
pub fn rank_of_cardinal(c: &SymCardinal) -> Ordinal {
    match c {
        SymCardinal::Fin(_) => Ordinal::zero(),
        SymCardinal::Beth(a) => a.succ(),
    }
}

/// Cofinality of `ℶ[b]`, which equals that of `b`.
pub fn cofinality_transfer(index: &Ordinal) -> Cofinality {
    index.cofinality()
}

/// Level bookkeeping for elements outside ℕ: members of an element of rank
/// `x` have rank `x − 1`. Zero and limit levels have no predecessor.
pub fn rank_law_1b(level: &Ordinal) -> Result<Ordinal> {
    level.pred().ok_or_else(|| Error::RankLevel {
        level: level.to_string(),
        kind: if level.is_zero() { "zero" } else { "a limit" },
    })
}

/// What sits at a Beth level: an HF code at level 0 or an opaque tag above.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Witness {
    Code(HfCode),
    Tag(String),
}

/// An element together with its Beth rank; the rank is never a limit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RankedElement {
    level: Ordinal,
    witness: Witness,
}

impl RankedElement {
    pub fn new(level: Ordinal, witness: Witness) -> Result<Self> {
        if level.is_limit() {
            return Err(Error::RankLevel {
                level: level.to_string(),
                kind: "a limit",
            });
        }
        Ok(RankedElement { level, witness })
    }

    /// HF sets are finite, so they sit at rank 0.
    pub fn hf(code: HfCode) -> Self {
        RankedElement {
            level: Ordinal::zero(),
            witness: Witness::Code(code),
        }
    }

    pub fn level(&self) -> &Ordinal {
        &self.level
    }

    pub fn witness(&self) -> &Witness {
        &self.witness
    }
}

impl fmt::Display for SymCardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymCardinal::Fin(n) => write!(f, "fin:{n}"),
            SymCardinal::Beth(a) => write!(f, "beth:{a}"),
        }
    }
}

/// `fin:<n>` or `beth:<ordinal>`.
impl FromStr for SymCardinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(n) = s.strip_prefix("fin:") {
            let value =
                BigUint::parse_bytes(n.trim().as_bytes(), 10).ok_or_else(|| Error::Parse {
                    position: 4,
                    message: format!("`{n}` is not a natural number"),
                })?;
            Ok(SymCardinal::Fin(value))
        } else if let Some(index) = s.strip_prefix("beth:") {
            index
                .parse()
                .map(SymCardinal::Beth)
                .map_err(|err| match err {
                    Error::Parse { position, message } => Error::Parse {
                        position: position + 5,
                        message,
                    },
                    other => other,
                })
        } else {
            Err(Error::Parse {
                position: 0,
                message: "expected `fin:` or `beth:`".into(),
            })
        }
    }
}

impl Serialize for SymCardinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SymCardinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
