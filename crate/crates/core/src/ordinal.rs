//! Ordinal notations below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a sum `ω^e₁·k₁ + … + ω^eₙ·kₙ` with strictly decreasing
//! exponents and positive coefficients. Notations are canonical, so structural
//! equality is ordinal equality.
//!
//! Text syntax: `0`, decimal naturals, `w`, and terms `w^<exp>*<k>` joined by
//! `+`. A compound exponent is written in parentheses, e.g. `w^(w+1)*2+w+3`.
//! `ω` is accepted as a synonym for `w`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::wellorder::FinWellOrder;

/// An ordinal below ε₀ in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// One `ω^exponent · coefficient` summand.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: u64,
}

/// Cofinality of a notation: `0`, a successor, or a limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cofinality {
    Zero,
    One,
    Omega,
}

impl fmt::Display for Cofinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cofinality::Zero => "zero",
            Cofinality::One => "one",
            Cofinality::Omega => "omega",
        })
    }
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::default()
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![Term {
                    exponent: Ordinal::zero(),
                    coefficient: n,
                }],
            }
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::nat(1))
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient: 1,
            }],
        }
    }

    /// `ω^exponent · coefficient`; zero coefficient gives `0`.
    pub fn monomial(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    /// Assemble a notation from `(exponent, coefficient)` pairs, checking
    /// that exponents strictly decrease and coefficients are positive.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self> {
        for (i, (exponent, coefficient)) in terms.iter().enumerate() {
            if *coefficient == 0 {
                return Err(Error::NonCanonical(format!("term {i} has coefficient 0")));
            }
            if i > 0 && terms[i - 1].0 <= *exponent {
                return Err(Error::NonCanonical(format!(
                    "exponent {exponent} of term {i} does not decrease"
                )));
            }
        }
        Ok(Ordinal {
            terms: terms
                .into_iter()
                .map(|(exponent, coefficient)| Term {
                    exponent,
                    coefficient,
                })
                .collect(),
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// The natural number denoted, if the notation is finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => t.coefficient,
            _ => 0,
        }
    }

    /// Nonzero with no exponent-0 term.
    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.finite_part() == 0
    }

    pub fn is_successor(&self) -> bool {
        self.finite_part() > 0
    }

    pub fn succ(&self) -> Ordinal {
        let mut next = self.clone();
        match next.terms.last_mut() {
            Some(t) if t.exponent.is_zero() => {
                t.coefficient = t.coefficient.checked_add(1).expect("coefficient overflow");
            }
            _ => next.terms.push(Term {
                exponent: Ordinal::zero(),
                coefficient: 1,
            }),
        }
        next
    }

    /// Immediate predecessor of a successor notation.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut prev = self.clone();
        let last = prev.terms.last_mut().expect("successor has a finite part");
        if last.coefficient == 1 {
            prev.terms.pop();
        } else {
            last.coefficient -= 1;
        }
        Some(prev)
    }

    pub fn cofinality(&self) -> Cofinality {
        if self.is_zero() {
            Cofinality::Zero
        } else if self.is_successor() {
            Cofinality::One
        } else {
            Cofinality::Omega
        }
    }

    /// Structural nesting depth of exponents; `0` for naturals.
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .filter(|t| !t.exponent.is_zero())
            .map(|t| 1 + t.exponent.height())
            .max()
            .unwrap_or(0)
    }
}

impl Ord for Ordinal {
    /// Lexicographic on the term lists, comparing exponents first and then
    /// coefficients; a proper prefix is smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then(a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The least upper bound of a finite nonempty family, i.e. its maximum.
pub fn sup<'a, I>(family: I) -> Result<Ordinal>
where
    I: IntoIterator<Item = &'a Ordinal>,
{
    family
        .into_iter()
        .max()
        .cloned()
        .ok_or(Error::Empty("sup of an empty family"))
}

/// A pair under the canonical order on `A × A`: compare maxima first; within
/// one maximum `c`, the pairs `(a, c)` with `a < c` come before the pairs
/// `(c, b)` with `b ≤ c`, which amounts to lexicographic order on
/// `(first, second)` inside the block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalPair<T> {
    pub first: T,
    pub second: T,
}

impl<T> CanonicalPair<T> {
    pub fn new(first: T, second: T) -> Self {
        CanonicalPair { first, second }
    }
}

/// Canonical pair of ordinal notations.
pub type PairCanonical = CanonicalPair<Ordinal>;

impl<T: Ord> Ord for CanonicalPair<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        let max_self = (&self.first).max(&self.second);
        let max_other = (&other.first).max(&other.second);
        max_self
            .cmp(max_other)
            .then_with(|| self.first.cmp(&other.first))
            .then_with(|| self.second.cmp(&other.second))
    }
}

impl<T: Ord> PartialOrd for CanonicalPair<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn cmp_canonical<T: Ord>(p: &CanonicalPair<T>, q: &CanonicalPair<T>) -> Ordering {
    p.cmp(q)
}

/// Order type of the canonical order below `(a, b)` on `ℕ × ℕ`.
///
/// With `m = max(a, b)` the block of maximum `m` starts at `m²`; it lists
/// `(0,m) … (m-1,m)` and then `(m,0) … (m,m)`.
pub fn pair_index(a: u64, b: u64) -> u128 {
    let m = u128::from(a.max(b));
    let (a, b) = (u128::from(a), u128::from(b));
    if b == m && a < m {
        m * m + a
    } else {
        m * m + m + b
    }
}

/// Inverse of [`pair_index`].
pub fn unpair(n: u128) -> (u64, u64) {
    let m = n.isqrt();
    let offset = n - m * m;
    let m64 = u64::try_from(m).expect("isqrt of a u128 fits in u64");
    if offset < m {
        (offset as u64, m64)
    } else {
        (m64, (offset - m) as u64)
    }
}

/// [`pair_index`] on notations; only finite notations are accepted.
pub fn pair_index_ordinal(a: &Ordinal, b: &Ordinal) -> Result<u128> {
    let finite = |x: &Ordinal| {
        x.as_nat()
            .ok_or_else(|| Error::InfiniteNotation(x.to_string()))
    };
    Ok(pair_index(finite(a)?, finite(b)?))
}

/// The canonical embedding `x ↦ ⟨(x > #)⟩`: each element goes to the order
/// type of its strict initial segment.
pub fn canonical_embedding(order: &FinWellOrder) -> Vec<(String, Ordinal)> {
    let labels = order.in_order();
    labels
        .iter()
        .map(|x| {
            let below = labels.iter().filter(|y| order.less(y, x)).count() as u64;
            (x.to_string(), Ordinal::nat(below))
        })
        .collect()
}

/// Order type of a finite well-order: the least notation above the image of
/// the canonical embedding.
pub fn classify_finite(order: &FinWellOrder) -> Ordinal {
    canonical_embedding(order)
        .into_iter()
        .map(|(_, x)| x.succ())
        .max()
        .unwrap_or_default()
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            let exponent = &term.exponent;
            if exponent.is_zero() {
                write!(f, "{}", term.coefficient)?;
                continue;
            }
            f.write_str("w")?;
            if *exponent != Ordinal::nat(1) {
                if exponent.is_finite() || *exponent == Ordinal::omega() {
                    write!(f, "^{exponent}")?;
                } else {
                    write!(f, "^({exponent})")?;
                }
            }
            if term.coefficient > 1 {
                write!(f, "*{}", term.coefficient)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            chars: s.chars().collect(),
            pos: 0,
        };
        let ordinal = parser.sum()?;
        parser.skip_ws();
        if parser.pos < parser.chars.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(ordinal)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, position: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| self.error_at(start, "natural number out of range"))
    }

    fn sum(&mut self) -> Result<Ordinal> {
        let mut terms: Vec<Term> = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let term = self.term()?;
            match term {
                None if terms.is_empty() && self.peek() != Some('+') => return Ok(Ordinal::zero()),
                None => return Err(self.error_at(start, "zero term inside a sum")),
                Some(term) => {
                    if let Some(prev) = terms.last() {
                        if prev.exponent <= term.exponent {
                            return Err(self.error_at(start, "exponents must strictly decrease"));
                        }
                    }
                    terms.push(term);
                }
            }
            if !self.eat('+') {
                return Ok(Ordinal { terms });
            }
        }
    }

    /// `None` for a literal `0`.
    fn term(&mut self) -> Result<Option<Term>> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                Ok((n > 0).then(|| Term {
                    exponent: Ordinal::zero(),
                    coefficient: n,
                }))
            }
            Some('w' | 'ω') => {
                self.pos += 1;
                let exponent = if self.eat('^') {
                    self.atom()?
                } else {
                    Ordinal::nat(1)
                };
                let coefficient = if self.eat('*') {
                    let at = self.pos;
                    let k = self.nat()?;
                    if k == 0 {
                        return Err(self.error_at(at, "coefficient must be positive"));
                    }
                    k
                } else {
                    1
                };
                Ok(Some(Term {
                    exponent,
                    coefficient,
                }))
            }
            Some(_) => Err(self.error("expected a natural, `w` or `ω`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn atom(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some('w' | 'ω') => {
                self.pos += 1;
                let exponent = if self.eat('^') {
                    self.atom()?
                } else {
                    Ordinal::nat(1)
                };
                Ok(Ordinal::omega_pow(exponent))
            }
            _ => Err(self.error("expected an exponent")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        for text in [
            "0",
            "7",
            "w",
            "w+1",
            "w*3",
            "w^2*3+w+1",
            "w^w",
            "w^(w+1)*2+5",
            "w^w^2",
        ] {
            let parsed = o(text);
            let printed = parsed.to_string();
            assert_eq!(o(&printed), parsed, "{text}");
        }
        assert_eq!(o("w^2*3+w+1").to_string(), "w^2*3+w+1");
        assert_eq!(o("w^w^2").to_string(), "w^(w^2)");
        assert_eq!(o("ω^2 + ω"), o("w^2+w"));
    }

    #[test]
    fn parser_rejects_non_canonical_input() {
        let position = |s: &str| match s.parse::<Ordinal>() {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("{s}: expected parse error, got {other:?}"),
        };
        assert_eq!(position("w+w^2"), 2);
        assert_eq!(position("1+w"), 2);
        assert_eq!(position("w+w"), 2);
        assert_eq!(position("w*0"), 2);
        assert_eq!(position("w+0"), 2);
        assert_eq!(position("w^"), 2);
        assert_eq!(position("w)"), 1);
        assert_eq!(position(""), 0);
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(o("0").cmp(&o("0")), Ordering::Equal);
        assert_eq!(o("w").cmp(&o("1")), Ordering::Greater);
        assert_eq!(o("w^2+1").cmp(&o("w*3")), Ordering::Greater);
        assert!(o("w^w") > o("w^5*1000+w"));
        assert!(o("w*2") < o("w*2+1"));
    }

    #[test]
    fn succ_and_limits() {
        assert_eq!(Ordinal::zero().succ(), o("1"));
        assert_eq!(o("w").succ(), o("w+1"));
        assert_eq!(o("w+1").succ(), o("w+2"));
        assert!(o("w").is_limit());
        assert!(!o("w+1").is_limit());
        assert!(!o("0").is_limit());
        assert_eq!(o("w+1").pred(), Some(o("w")));
        assert_eq!(o("w").pred(), None);
    }

    #[test]
    fn sup_examples() {
        assert_eq!(sup(&[o("5")]).unwrap(), o("5"));
        assert_eq!(sup(&[o("w"), o("3"), o("w*2")]).unwrap(), o("w*2"));
        assert!(matches!(sup(&[]), Err(Error::Empty(_))));
    }

    #[test]
    fn cofinality_examples() {
        assert_eq!(o("0").cofinality(), Cofinality::Zero);
        assert_eq!(o("7").cofinality(), Cofinality::One);
        assert_eq!(o("w^w").cofinality(), Cofinality::Omega);
    }

    #[test]
    fn cofinality_of_omega_to_omega_via_fundamental_sequence() {
        let target = o("w^w");
        let sequence: Vec<Ordinal> = (0..=50)
            .map(|n| Ordinal::omega_pow(Ordinal::nat(n)))
            .collect();
        assert!(sequence.iter().all(|x| *x < target));
        assert!(sequence.windows(2).all(|w| w[0] < w[1]));
        // each notation below ω^ω has finite leading exponent n and sits below ω^(n+1)
        for below in ["w^3*7+w+2", "w^12", "5", "w^49*1000"] {
            let x = o(below);
            assert!(x < target);
            assert!(sequence.iter().any(|s| x < *s));
        }
    }

    #[test]
    fn canonical_pair_examples() {
        let p = |a: u64, b: u64| CanonicalPair::new(a, b);
        assert_eq!(cmp_canonical(&p(0, 0), &p(0, 0)), Ordering::Equal);
        assert_eq!(cmp_canonical(&p(1, 2), &p(2, 0)), Ordering::Less);
        assert_eq!(cmp_canonical(&p(2, 2), &p(0, 3)), Ordering::Less);

        let q = |a: &str, b: &str| PairCanonical::new(o(a), o(b));
        assert_eq!(q("0", "w").cmp(&q("w", "0")), Ordering::Less);
        assert_eq!(q("w", "w").cmp(&q("5", "w+1")), Ordering::Less);
    }

    #[test]
    fn pair_index_examples() {
        assert_eq!(pair_index(0, 0), 0);
        assert_eq!(pair_index(0, 1), 1);
        assert_eq!(pair_index(1, 0), 2);
        assert_eq!(pair_index(1, 1), 3);
        assert_eq!(unpair(3), (1, 1));
        assert_eq!(unpair(pair_index(u64::MAX, u64::MAX)), (u64::MAX, u64::MAX));
        assert_eq!(
            pair_index_ordinal(&o("w"), &o("1")),
            Err(Error::InfiniteNotation("w".into()))
        );
        assert_eq!(pair_index_ordinal(&o("2"), &o("0")), Ok(pair_index(2, 0)));
    }

    #[test]
    fn classify_examples() {
        let empty = FinWellOrder::from_ranked(Vec::<String>::new()).unwrap();
        assert_eq!(classify_finite(&empty), Ordinal::zero());
        let three = FinWellOrder::from_ranked(["c", "a", "b"]).unwrap();
        assert_eq!(classify_finite(&three), o("3"));
        let embedding = canonical_embedding(&three);
        assert_eq!(embedding[0], ("c".to_string(), o("0")));
        assert_eq!(embedding[2], ("b".to_string(), o("2")));
    }
}
