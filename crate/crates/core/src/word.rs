//! Words over the alphabet `{1, …, d}`.

use std::fmt;

use crate::error::{Error, Result};

/// A finite sequence of letters in `[1, d]`. The empty word is allowed.
///
/// The derived ordering compares `d` first and then the letters
/// lexicographically; within one alphabet and one length this is the usual
/// lexicographic order on `W_n^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word {
    d: u32,
    letters: Vec<u32>,
}

pub(crate) fn check_alphabet(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidAlphabet { d, min: 2 });
    }
    Ok(())
}

impl Word {
    pub fn new(d: u32, letters: Vec<u32>) -> Result<Self> {
        check_alphabet(d)?;
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l > d) {
            return Err(Error::LetterOutOfRange { letter: bad as u64, d });
        }
        Ok(Word { d, letters })
    }

    pub fn empty(d: u32) -> Self {
        Word { d, letters: Vec::new() }
    }

    /// The one-letter word `(j)`.
    pub fn letter(d: u32, j: u32) -> Result<Self> {
        Word::new(d, vec![j])
    }

    /// `(j, j, …, j)` of length `n`.
    pub fn repeat(d: u32, j: u32, n: usize) -> Result<Self> {
        Word::new(d, vec![j; n])
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: other.d });
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word { d: self.d, letters })
    }

    /// Concatenation for words already known to share an alphabet.
    pub(crate) fn join(&self, other: &Word) -> Word {
        debug_assert_eq!(self.d, other.d);
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { d: self.d, letters }
    }

    pub(crate) fn pushed(&self, j: u32) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.extend_from_slice(&self.letters);
        letters.push(j);
        Word { d: self.d, letters }
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.letters
            .strip_prefix(prefix.letters.as_slice())
            .map(|rest| Word { d: self.d, letters: rest.to_vec() })
    }

    /// Splits off the last letter.
    pub(crate) fn split_last(&self) -> Option<(Word, u32)> {
        let (&last, init) = self.letters.split_last()?;
        Some((Word { d: self.d, letters: init.to_vec() }, last))
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word { d: self.d, letters: self.letters[..n.min(self.len())].to_vec() }
    }

    /// Rank of the word in the lexicographic order of `W_n^d`.
    pub fn index(&self) -> usize {
        self.letters
            .iter()
            .fold(0usize, |acc, &l| acc * self.d as usize + (l - 1) as usize)
    }

    /// Inverse of [`Word::index`] for words of length `n`.
    pub fn from_index(d: u32, n: usize, mut idx: usize) -> Word {
        let mut letters = vec![0u32; n];
        for slot in letters.iter_mut().rev() {
            *slot = (idx % d as usize) as u32 + 1;
            idx /= d as usize;
        }
        Word { d, letters }
    }

    /// All words of length `n`, in lexicographic order.
    pub fn all(d: u32, n: usize) -> impl Iterator<Item = Word> {
        let count = (d as usize).pow(n as u32);
        (0..count).map(move |i| Word::from_index(d, n, i))
    }
}

impl fmt::Display for Word {
    /// Digit syntax for `d ≤ 9` (`12`), bracket syntax otherwise (`[1,10]`).
    /// The empty word prints as `∅`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "∅");
        }
        if self.d <= 9 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}
