//! Hereditarily finite sets as natural numbers.
//!
//! A code `n` is read as the set `{m | bit m of n is 1}` (Ackermann coding).
//! Ordering finite subsets of ℕ by the largest element of their symmetric
//! difference makes `n ↦ bits(n)` an order isomorphism from ℕ onto finite
//! subsets, and every natural is a valid code.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default popcount limit for [`powerset`].
pub const DEFAULT_POWERSET_BOUND: u32 = 20;

/// Largest bit index a constructed code may set. Past this the code needs
/// more than 32 MiB.
pub const MAX_MEMBER_INDEX: u64 = 1 << 28;

/// A hereditarily finite set, identified with its code.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HfCode(BigUint);

impl HfCode {
    pub fn new(code: BigUint) -> Self {
        HfCode(code)
    }

    pub fn empty() -> Self {
        HfCode(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Decimal or `0x`-prefixed hexadecimal.
    pub fn parse_number(text: &str) -> Result<Self> {
        let text = text.trim();
        let (digits, radix) = match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
            Some(hex) => (hex, 16),
            None => (text, 10),
        };
        let digits = digits.replace('_', "");
        BigUint::parse_bytes(digits.as_bytes(), radix)
            .map(HfCode)
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("`{text}` is not a number"),
            })
    }

    /// Set with the given member indices.
    pub fn from_indices<I: IntoIterator<Item = u64>>(indices: I) -> Result<Self> {
        let mut digits: Vec<u32> = Vec::new();
        for m in indices {
            if m > MAX_MEMBER_INDEX {
                return Err(Error::CodeTooLarge(m));
            }
            let (word, bit) = ((m / 32) as usize, m % 32);
            if digits.len() <= word {
                digits.resize(word + 1, 0);
            }
            digits[word] |= 1 << bit;
        }
        Ok(HfCode(BigUint::new(digits)))
    }

    pub fn from_members<'a, I: IntoIterator<Item = &'a HfCode>>(members: I) -> Result<Self> {
        let indices = members
            .into_iter()
            .map(HfCode::as_index)
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(indices)
    }

    /// `{m}`.
    pub fn singleton(member: &HfCode) -> Result<Self> {
        Self::from_indices([member.as_index()?])
    }

    /// This code used as a bit index.
    pub fn as_index(&self) -> Result<u64> {
        match self.0.to_u64() {
            Some(m) if m <= MAX_MEMBER_INDEX => Ok(m),
            _ => Err(Error::CodeTooLarge(self.0.bits())),
        }
    }

    /// `m ∈ self`.
    pub fn mem(&self, member: &HfCode) -> bool {
        member.0.to_u64().is_some_and(|m| self.0.bit(m))
    }

    pub fn contains_index(&self, m: u64) -> bool {
        self.0.bit(m)
    }

    /// Member indices in increasing order.
    pub fn member_indices(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.card() as usize);
        for (w, word) in self.0.iter_u64_digits().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let bit = rest.trailing_zeros() as u64;
                out.push(w as u64 * 64 + bit);
                rest &= rest - 1;
            }
        }
        out
    }

    pub fn members(&self) -> impl Iterator<Item = HfCode> {
        self.member_indices().into_iter().map(HfCode::from)
    }

    /// Number of members.
    pub fn card(&self) -> u64 {
        self.0.count_ones()
    }

    pub fn is_subset(&self, other: &HfCode) -> bool {
        (&self.0 & &other.0) == self.0
    }

    pub fn is_disjoint(&self, other: &HfCode) -> bool {
        (&self.0 & &other.0).is_zero()
    }
}

impl From<u64> for HfCode {
    fn from(n: u64) -> Self {
        HfCode(BigUint::from(n))
    }
}

impl From<BigUint> for HfCode {
    fn from(n: BigUint) -> Self {
        HfCode(n)
    }
}

impl fmt::Display for HfCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for HfCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HfCode({})", self.0)
    }
}

impl FromStr for HfCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HfCode::parse_number(s)
    }
}

/// Codes travel as decimal strings in JSON.
impl Serialize for HfCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HfCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        HfCode::parse_number(&text).map_err(serde::de::Error::custom)
    }
}

/// Fully expanded braces notation, members in increasing code order.
pub fn decode(code: &HfCode) -> String {
    let mut out = String::new();
    write_braces(code, &mut out, usize::MAX);
    out
}

/// [`decode`], or `None` once the text would exceed `max_len` bytes.
pub fn decode_bounded(code: &HfCode, max_len: usize) -> Option<String> {
    let mut out = String::new();
    write_braces(code, &mut out, max_len).then_some(out)
}

fn write_braces(code: &HfCode, out: &mut String, max_len: usize) -> bool {
    out.push('{');
    for (i, m) in code.member_indices().into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        if out.len() >= max_len || !write_braces(&HfCode::from(m), out, max_len) {
            return false;
        }
    }
    out.push('}');
    out.len() <= max_len
}

/// A repeated member met while encoding; kept as a note, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplicateMember {
    pub position: usize,
    pub member: HfCode,
}

/// Result of [`encode_with_notes`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoded {
    pub code: HfCode,
    pub duplicates: Vec<DuplicateMember>,
}

/// Parse braces notation, e.g. `{{},{{}}}`.
pub fn encode(text: &str) -> Result<HfCode> {
    encode_with_notes(text).map(|e| e.code)
}

pub fn encode_with_notes(text: &str) -> Result<Encoded> {
    let mut parser = BracesParser {
        bytes: text.as_bytes(),
        pos: 0,
        duplicates: Vec::new(),
    };
    let code = parser.set()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(Encoded {
        code,
        duplicates: parser.duplicates,
    })
}

struct BracesParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    duplicates: Vec<DuplicateMember>,
}

impl BracesParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", byte as char)))
        }
    }

    fn set(&mut self) -> Result<HfCode> {
        self.expect(b'{')?;
        let mut members: Vec<u64> = Vec::new();
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&b'}') {
            self.pos += 1;
            return Ok(HfCode::empty());
        }
        if self.bytes.get(self.pos) != Some(&b'{') {
            return Err(self.error("expected `{` or `}`"));
        }
        loop {
            self.skip_ws();
            let start = self.pos;
            let member = self.set()?;
            let index = member.as_index()?;
            if members.contains(&index) {
                self.duplicates.push(DuplicateMember {
                    position: start,
                    member,
                });
            } else {
                members.push(index);
            }
            self.skip_ws();
            match self.bytes.get(self.pos) {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    return HfCode::from_indices(members);
                }
                _ => return Err(self.error("expected `,` or `}`")),
            }
        }
    }
}

/// `∪a`: bitwise OR of the codes of the members.
pub fn set_union(a: &HfCode) -> HfCode {
    let mut out = BigUint::zero();
    for m in a.member_indices() {
        out |= BigUint::from(m);
    }
    HfCode(out)
}

/// All `b` with `bits(b) ⊆ bits(a)`. Refuses sets with more than `bound`
/// members.
pub fn powerset(a: &HfCode, bound: u32) -> Result<HfCode> {
    let members = a.card();
    if members > u64::from(bound) {
        return Err(Error::PowersetBound { members, bound });
    }
    // a itself is the largest member of the result
    a.as_index()?;
    let indices = a.member_indices();
    let subsets = (0u64..1 << indices.len()).map(|mask| {
        indices
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0u64, |acc, (_, &m)| acc | 1 << m)
    });
    HfCode::from_indices(subsets)
}

/// `{m ∈ a | p(m)}`.
pub fn separation(a: &HfCode, predicate: impl Fn(&HfCode) -> bool) -> HfCode {
    let kept = a
        .members()
        .filter(|m| predicate(m))
        .map(|m| m.to_u64().expect("member index"));
    HfCode::from_indices(kept).expect("members of a fit")
}

/// `{f(m) | m ∈ a}`.
pub fn replacement(a: &HfCode, f: impl Fn(&HfCode) -> HfCode) -> Result<HfCode> {
    let images: Vec<HfCode> = a.members().map(|m| f(&m)).collect();
    HfCode::from_members(&images)
}

/// Least member `b` of `a` with `b ∩ a = ∅`.
pub fn foundation_witness(a: &HfCode) -> Result<HfCode> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    // membership strictly decreases codes, so the least member is minimal
    Ok(a.members()
        .find(|b| b.is_disjoint(a))
        .expect("least member is disjoint from a"))
}

/// Least non-member of `a`.
pub fn choice_fn(a: &HfCode) -> HfCode {
    let mut index = 0u64;
    for word in a.0.iter_u64_digits() {
        if word != u64::MAX {
            return HfCode::from(index + u64::from(word.trailing_ones()));
        }
        index += 64;
    }
    HfCode::from(index)
}

/// Least transitive superset: close under taking members of members.
pub fn transitive_closure(a: &HfCode) -> HfCode {
    let mut closed = a.0.clone();
    let mut frontier = a.clone();
    loop {
        let step = set_union(&frontier).0;
        let next = &closed | &step;
        if next == closed {
            return HfCode(closed);
        }
        frontier = HfCode(&next ^ &closed);
        closed = next;
    }
}

/// Von Neumann stage: `0` for `∅`, otherwise one more than the largest
/// stage of a member. `stage(a) < k` iff `a` lies in `V_k`.
pub fn stage(a: &HfCode) -> u32 {
    a.member_indices()
        .into_iter()
        .map(stage_of_index)
        .max()
        .map_or(0, |s| s + 1)
}

fn stage_of_index(m: u64) -> u32 {
    if m == 0 {
        return 0;
    }
    let mut best = 0;
    let mut rest = m;
    while rest != 0 {
        let bit = u64::from(rest.trailing_zeros());
        best = best.max(stage_of_index(bit));
        rest &= rest - 1;
    }
    best + 1
}

/// Number of codes in `V_k` (they are exactly `0..size`), if it fits a u64.
pub fn stage_size(k: u32) -> Option<u64> {
    let mut size = 0u64;
    for _ in 0..k {
        size = 1u64.checked_shl(u32::try_from(size).ok()?)?;
    }
    Some(size)
}
