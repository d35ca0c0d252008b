//! Symmetric group combinatorics: one-line permutations, lexicographic
//! enumeration, Coxeter length, and deterministic reduced words.
//!
//! Internally positions and values are 0-based; the serialized form and the
//! simple-reflection indices follow the usual 1-based mathematical
//! conventions (`s_k` swaps `k` and `k+1`, `1 <= k <= n-1`).

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymGroupError {
    #[error("degree {0} outside the supported range 1..=8")]
    DegreeOutOfRange(usize),
    #[error("images are not a bijection of 1..=n")]
    NotABijection,
}

/// Element of `S_n` in one-line notation: `images[i] = w(i)` with 0-based
/// positions and values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From 1-based one-line notation.
    pub fn new(one_line: &[usize]) -> Result<Self, SymGroupError> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &v in one_line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(SymGroupError::NotABijection);
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: one_line.iter().map(|&v| v - 1).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Transposition of the 1-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1 && a <= n && b <= n);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    /// Simple reflection `s_k = (k, k+1)`, 1-based `k`.
    pub fn simple(n: usize, k: usize) -> Self {
        assert!((1..n).contains(&k), "simple reflection index out of range");
        Permutation::transposition(n, k, k + 1)
    }

    /// The n-cycle `c`: `c(i) = i+1` for `i < n`, `c(n) = 1`.
    pub fn cycle(n: usize) -> Self {
        let images = (0..n).map(|i| (i + 1) % n).collect();
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` with 0-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Function composition: `(self.compose(other))(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Number of inversions; equals the length of any reduced word.
    pub fn coxeter_length(&self) -> usize {
        let n = self.degree();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Lexicographic rank of the one-line notation among all of `S_n`
    /// (identity has rank 0), via the Lehmer code.
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut factorial = 1usize;
        let mut factorials = vec![1usize; n.max(1)];
        for (i, slot) in factorials.iter_mut().enumerate().skip(1) {
            factorial *= i;
            *slot = factorial;
        }
        let mut rank = 0;
        for i in 0..n {
            let smaller_later = (i + 1..n)
                .filter(|&j| self.images[j] < self.images[i])
                .count();
            rank += smaller_later * factorials[n - 1 - i];
        }
        rank
    }

    /// Deterministic reduced word by the smallest-descent bubble strategy:
    /// repeatedly strip the smallest `i` with `w(i) > w(i+1)` from the right.
    /// Letters are 1-based simple-reflection indices; the product
    /// `s_{i_1} ... s_{i_l}` of the returned word equals `w`.
    pub fn reduced_word(&self) -> Vec<usize> {
        self.reduced_word_by(|w| {
            (0..w.degree() - 1).find(|&i| w.images[i] > w.images[i + 1])
        })
    }

    /// Alternative deterministic reduced word (largest descent first); used
    /// to confirm that constructions are independent of the word choice.
    pub fn reduced_word_largest_descent(&self) -> Vec<usize> {
        self.reduced_word_by(|w| {
            (0..w.degree() - 1)
                .rev()
                .find(|&i| w.images[i] > w.images[i + 1])
        })
    }

    fn reduced_word_by<F>(&self, pick: F) -> Vec<usize>
    where
        F: Fn(&Permutation) -> Option<usize>,
    {
        let mut w = self.clone();
        let mut letters = Vec::with_capacity(self.coxeter_length());
        while let Some(i) = pick(&w) {
            // w has a descent at i, so w * s_i is shorter and
            // w = (w * s_i) * s_i appends the letter i+1 on the right.
            w.images.swap(i, i + 1);
            letters.push(i + 1);
        }
        letters.reverse();
        letters
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.one_line()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.one_line().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let one_line = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(&one_line).map_err(de::Error::custom)
    }
}

/// All of `S_n` in lexicographic order of one-line notation; index 0 is the
/// identity. Supported for `1 <= n <= 8`.
pub fn enumerate_sn(n: usize) -> Result<Vec<Permutation>, SymGroupError> {
    if n == 0 || n > 8 {
        return Err(SymGroupError::DegreeOutOfRange(n));
    }
    let mut current: Vec<usize> = (0..n).collect();
    let mut all = Vec::new();
    loop {
        all.push(Permutation {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        if all.len() > 50_000 {
            unreachable!("n <= 8 keeps the enumeration bounded");
        }
    }
    Ok(all)
}

/// Product of simple reflections for a 1-based word.
pub fn word_to_permutation(n: usize, word: &[usize]) -> Permutation {
    word.iter().fold(Permutation::identity(n), |acc, &k| {
        acc.compose(&Permutation::simple(n, k))
    })
}
