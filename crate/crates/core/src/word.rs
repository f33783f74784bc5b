//! Reduced words in a free group of rank at most 26.
//!
//! A letter is a non-zero `i8`: `+i` is the generator `a_i`, `-i` its
//! inverse. Text form uses `a..z` for generators and `A..Z` for inverses;
//! the identity is the empty string.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = i8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for x in letters {
            debug_assert!(x != 0);
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    /// `x^n` for a single letter, `n >= 0`.
    pub fn power(x: Letter, n: usize) -> Self {
        Word(vec![x; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Word length, i.e. distance to the identity in the Cayley graph.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let a = &self.0;
        let b = &other.0;
        let mut cancel = 0;
        while cancel < a.len() && cancel < b.len() && a[a.len() - 1 - cancel] == -b[cancel] {
            cancel += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * cancel);
        out.extend_from_slice(&a[..a.len() - cancel]);
        out.extend_from_slice(&b[cancel..]);
        Word(out)
    }

    /// Right multiplication by one letter.
    pub fn push(&self, x: Letter) -> Word {
        let mut out = self.0.clone();
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
        Word(out)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .take_while(|(x, y)| x == y)
            .count()
    }

    /// Cayley-graph distance `d(self, other) = |self⁻¹ other|`.
    pub fn distance(&self, other: &Word) -> usize {
        let c = self.common_prefix_len(other);
        self.len() + other.len() - 2 * c
    }

    /// Largest generator index used.
    pub fn rank_used(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

/// Every letter of a rank-`k` free group, generators first.
pub fn alphabet(rank: usize) -> Vec<Letter> {
    let k = rank as Letter;
    (1..=k).chain((1..=k).map(|x| -x)).collect()
}

pub fn letter_char(x: Letter) -> char {
    let i = x.unsigned_abs() - 1;
    if x > 0 {
        (b'a' + i) as char
    } else {
        (b'A' + i) as char
    }
}

fn char_letter(c: char) -> Option<Letter> {
    match c {
        'a'..='z' => Some((c as u8 - b'a' + 1) as Letter),
        'A'..='Z' => Some(-((c as u8 - b'A' + 1) as Letter)),
        _ => None,
    }
}

/// Parses and freely reduces a string over `a..z`, `A..Z`.
pub fn reduce(s: &str) -> Result<Word> {
    let letters = s
        .chars()
        .map(|c| char_letter(c).ok_or_else(|| Error::Parse(format!("unknown letter `{c}` in word `{s}`"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Word::reduce(letters))
}

/// `(a|a')_b = (d(b,a) + d(b,a') − d(a,a')) / 2`.
pub fn gromov_product(a: &Word, a2: &Word, b: &Word) -> f64 {
    let s = b.distance(a) + b.distance(a2);
    (s - a.distance(a2)) as f64 / 2.0
}

/// All reduced words of length `<= n` in a free group of the given rank,
/// ordered by length.
pub fn ball(rank: usize, n: usize) -> Vec<Word> {
    let letters = alphabet(rank);
    let mut out = vec![Word::identity()];
    let mut start = 0;
    for _ in 0..n {
        let end = out.len();
        for i in start..end {
            let w = out[i].clone();
            for &x in &letters {
                if w.0.last() != Some(&-x) {
                    let mut v = w.0.clone();
                    v.push(x);
                    out.push(Word(v));
                }
            }
        }
        start = end;
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            write!(f, "{}", letter_char(x))?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        reduce(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        reduce(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert!(reduce("aA").unwrap().is_identity());
        assert!(reduce("abBA").unwrap().is_identity());
        assert_eq!(reduce("abaB").unwrap().to_string(), "abaB");
        assert!(matches!(reduce("ab1"), Err(Error::Parse(_))));
    }

    #[test]
    fn gromov_examples() {
        let e = Word::identity();
        let aa = reduce("aa").unwrap();
        let ab = reduce("ab").unwrap();
        assert_eq!(gromov_product(&aa, &ab, &e), 1.0);
        let g = reduce("abAb").unwrap();
        let b = reduce("B").unwrap();
        assert_eq!(gromov_product(&g, &g, &b), b.distance(&g) as f64);
        assert_eq!(gromov_product(&reduce("a").unwrap(), &reduce("A").unwrap(), &e), 0.0);
    }

    #[test]
    fn group_laws() {
        let g = reduce("abA").unwrap();
        let h = reduce("aBB").unwrap();
        assert!(g.mul(&g.inverse()).is_identity());
        assert_eq!(g.mul(&h).to_string(), "aB");
        assert_eq!(g.mul(&h).inverse(), h.inverse().mul(&g.inverse()));
        assert_eq!(g.push(1).to_string(), "ab");
    }

    #[test]
    fn ball_sizes() {
        // |B(r)| = 2·3^r − 1 in rank 2.
        for r in 0..5 {
            assert_eq!(ball(2, r).len(), 2 * 3usize.pow(r as u32) - 1);
        }
    }
}
