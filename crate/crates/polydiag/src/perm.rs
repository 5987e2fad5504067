//! Permutations of `{1..n}` and the weak order.
//!
//! A permutation is stored as its word; `2|1|3|5|4` is the word
//! `[2, 1, 3, 5, 4]`. The weak order is containment of inversion sets: an
//! oriented edge of the permutahedron swaps an adjacent ascent, adding one
//! inversion, so `u ≤ v` iff every inversion of `u` is an inversion of `v`.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Largest `n` the bitmask-backed types support.
pub const MAX_N: u8 = 16;

/// A permutation of `{1..n}`, stored as the word of its values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        if n == 0 || n > MAX_N as usize {
            return Err(Error::Notation(format!(
                "permutation length {n} out of range 1..={MAX_N}"
            )));
        }
        let mut seen = 0u32;
        for &v in &word {
            if v == 0 || v as usize > n || seen & (1 << v) != 0 {
                return Err(Error::Notation(format!(
                    "word is not a permutation of 1..={n}"
                )));
            }
            seen |= 1 << v;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: u8) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    pub fn reversal(n: u8) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> u8 {
        self.word.len() as u8
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// 0-based position of each value; entry `v` is the index of `v` in the word.
    pub fn positions(&self) -> [u8; MAX_N as usize + 1] {
        let mut pos = [0u8; MAX_N as usize + 1];
        for (i, &v) in self.word.iter().enumerate() {
            pos[v as usize] = i as u8;
        }
        pos
    }

    pub fn inversion_set(&self) -> InversionSet {
        let n = self.n();
        let pos = self.positions();
        let mut mask = 0u128;
        for j in 2..=n {
            for i in 1..j {
                if pos[j as usize] < pos[i as usize] {
                    mask |= 1 << InversionSet::index(i, j);
                }
            }
        }
        InversionSet { n, mask }
    }

    pub fn inversion_count(&self) -> u32 {
        self.inversion_set().len()
    }

    /// All of `S_n` in lexicographic word order.
    pub fn all(n: u8) -> impl Iterator<Item = Permutation> {
        use itertools::Itertools;
        (1..=n)
            .permutations(n as usize)
            .map(|word| Permutation { word })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2|1|3|5|4`, compact digits `21354` (values 1..9 only), or
    /// comma-separated `2,1,3,5,4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Notation("empty permutation".into()));
        }
        let word = if s.contains('|') || s.contains(',') {
            s.split(['|', ','])
                .map(|tok| {
                    tok.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Notation(format!("bad value {tok:?}")))
                })
                .collect::<Result<Vec<u8>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Notation(format!("bad digit {c:?}")))
                })
                .collect::<Result<Vec<u8>>>()?
        };
        Permutation::new(word)
    }
}

/// The set of out-of-order value pairs `(i, j)`, `i < j`, with `j` before `i`
/// in the word. Backed by a bitmask over the `C(n,2)` pairs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct InversionSet {
    n: u8,
    mask: u128,
}

impl InversionSet {
    /// Triangular index of the pair `(i, j)`, `1 ≤ i < j`.
    fn index(i: u8, j: u8) -> u32 {
        debug_assert!(i < j);
        let j = j as u32;
        let i = i as u32;
        (j - 1) * (j - 2) / 2 + (i - 1)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    pub fn contains(&self, i: u8, j: u8) -> bool {
        i < j && self.mask & (1 << Self::index(i, j)) != 0
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.mask & !other.mask == 0
    }

    /// The pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::with_capacity(self.len() as usize);
        for i in 1..self.n {
            for j in (i + 1)..=self.n {
                if self.contains(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// The weak order: `u ≤ v` iff `Inv(u) ⊆ Inv(v)`.
pub fn weak_leq(u: &Permutation, v: &Permutation) -> Result<bool> {
    if u.n() != v.n() {
        return Err(Error::SizeMismatch {
            left: u.n(),
            right: v.n(),
        });
    }
    Ok(u.inversion_set().is_subset(&v.inversion_set()))
}
