//! Signed alphabets: totally ordered letters carrying a Z_2 parity.
//!
//! Positive (`+`) letters are even and behave symmetrically; negative (`-`)
//! letters are odd and behave exterior-like. The derived relations `<+` and
//! `<-` relax strictness between two letters of the matching sign.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    /// Positively signed, even.
    Plus,
    /// Negatively signed, odd.
    Minus,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Minus
    }

    pub fn suffix(self) -> char {
        match self {
            Parity::Plus => '+',
            Parity::Minus => '-',
        }
    }
}

/// A letter as used in computations: its rank in the owning alphabet plus its
/// parity. Fake letters introduced internally by the skew straightening use
/// negative ranks, below every alphabet letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub ord: i32,
    pub parity: Parity,
}

impl Letter {
    pub fn new(ord: i32, parity: Parity) -> Self {
        Letter { ord, parity }
    }

    pub fn is_odd(self) -> bool {
        self.parity.is_odd()
    }

    /// `self <+ other`: strictly smaller, or equal with both letters positive.
    pub fn lt_plus(self, other: Letter) -> bool {
        self.ord < other.ord
            || (self == other && self.parity == Parity::Plus && other.parity == Parity::Plus)
    }

    /// `self <- other`: strictly smaller, or equal with both letters negative.
    pub fn lt_minus(self, other: Letter) -> bool {
        self.ord < other.ord
            || (self == other && self.parity == Parity::Minus && other.parity == Parity::Minus)
    }

    /// `self >+ other`.
    pub fn gt_plus(self, other: Letter) -> bool {
        other.lt_plus(self)
    }

    /// `self >- other`.
    pub fn gt_minus(self, other: Letter) -> bool {
        other.lt_minus(self)
    }
}

/// A named letter, the unit an [`Alphabet`] is built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedLetter {
    pub symbol: String,
    pub parity: Parity,
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.symbol, self.parity.suffix())
    }
}

/// A totally ordered signed alphabet. The order is the listed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    letters: Vec<SignedLetter>,
}

impl Alphabet {
    pub fn new(letters: Vec<SignedLetter>) -> Result<Self> {
        for sl in &letters {
            if sl.symbol.is_empty() {
                return Err(Error::Parse {
                    reason: "empty letter symbol".into(),
                });
            }
        }
        for i in 1..letters.len() {
            if letters[..i].iter().any(|l| *l == letters[i]) {
                return Err(Error::Parse {
                    reason: format!("duplicate letter {}", letters[i]),
                });
            }
        }
        Ok(Alphabet { letters })
    }

    /// Parse an inline comma list such as `"a+,b+,c-"`, listed in increasing
    /// order. The parity suffix is mandatory.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            letters.push(parse_signed_letter(part)?);
        }
        if letters.is_empty() {
            return Err(Error::Parse {
                reason: "empty alphabet".into(),
            });
        }
        Alphabet::new(letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, index: usize) -> Letter {
        Letter::new(index as i32, self.letters[index].parity)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters.len()).map(|i| self.letter(i))
    }

    pub fn signed(&self, letter: Letter) -> &SignedLetter {
        &self.letters[letter.ord as usize]
    }

    pub fn display(&self, letter: Letter) -> String {
        if letter.ord < 0 {
            // internal fake letter; only surfaces in diagnostics
            return format!("f{}{}", letter.ord, letter.parity.suffix());
        }
        self.signed(letter).to_string()
    }

    pub fn lookup(&self, text: &str) -> Result<Letter> {
        let want = parse_signed_letter(text)?;
        self.letters
            .iter()
            .position(|l| *l == want)
            .map(|i| self.letter(i))
            .ok_or(Error::UnknownLetter {
                symbol: text.to_string(),
            })
    }

    /// The alphabet with `letter` removed; remaining letters keep their order.
    /// Returns the new alphabet and the map from old ranks to new letters.
    pub fn without(&self, letter: Letter) -> (Alphabet, Vec<Option<Letter>>) {
        let mut rest = Vec::new();
        let mut map = vec![None; self.letters.len()];
        for (i, sl) in self.letters.iter().enumerate() {
            if i as i32 == letter.ord {
                continue;
            }
            map[i] = Some(Letter::new(rest.len() as i32, sl.parity));
            rest.push(sl.clone());
        }
        (Alphabet { letters: rest }, map)
    }

    /// True when every letter is negatively signed.
    pub fn all_minus(&self) -> bool {
        self.letters.iter().all(|l| l.parity == Parity::Minus)
    }
}

pub fn parse_signed_letter(text: &str) -> Result<SignedLetter> {
    let text = text.trim();
    let parity = match text.chars().last() {
        Some('+') => Parity::Plus,
        Some('-') => Parity::Minus,
        _ => {
            return Err(Error::Parse {
                reason: format!("letter {text:?} lacks a +/- suffix"),
            })
        }
    };
    let symbol = &text[..text.len() - 1];
    if symbol.is_empty() {
        return Err(Error::Parse {
            reason: format!("letter {text:?} has an empty symbol"),
        });
    }
    Ok(SignedLetter {
        symbol: symbol.to_string(),
        parity,
    })
}

/// A place: a column index viewed as a signed letter. Columns are negative by
/// default, matching the Deruyts filling.
pub fn place(column: u32, parity: Parity) -> Letter {
    Letter::new(column as i32, parity)
}

pub fn minus_place(column: u32) -> Letter {
    place(column, Parity::Minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inline_alphabets() {
        let a = Alphabet::parse("a+, b+, x-").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.letter(0).parity, Parity::Plus);
        assert_eq!(a.letter(2).parity, Parity::Minus);
        assert_eq!(a.display(a.letter(2)), "x-");
        assert!(Alphabet::parse("a").is_err());
        assert!(Alphabet::parse("a+,a+").is_err());
    }

    #[test]
    fn relaxed_orders_match_their_signs() {
        let a = Alphabet::parse("a+,b-").unwrap();
        let (pa, mb) = (a.letter(0), a.letter(1));
        assert!(pa.lt_plus(pa));
        assert!(!pa.lt_minus(pa));
        assert!(mb.lt_minus(mb));
        assert!(!mb.lt_plus(mb));
        assert!(pa.lt_plus(mb) && pa.lt_minus(mb));
    }

    #[test]
    fn removing_a_letter_reranks_the_rest() {
        let a = Alphabet::parse("a+,b-,c+").unwrap();
        let (rest, map) = a.without(a.letter(1));
        assert_eq!(rest.len(), 2);
        assert_eq!(map[0], Some(rest.letter(0)));
        assert_eq!(map[1], None);
        assert_eq!(map[2], Some(rest.letter(1)));
        assert_eq!(rest.display(rest.letter(1)), "c+");
    }
}
