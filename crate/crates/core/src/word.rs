//! q-ary words, run-length profiles and the canonical word constructors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest alphabet that has a single-character textual form (`0-9a-z`).
pub const MAX_TEXT_ALPHABET: u32 = 36;

fn symbol_to_char(s: u32) -> Option<char> {
    char::from_digit(s, MAX_TEXT_ALPHABET)
}

fn char_to_symbol(c: char) -> Option<u32> {
    c.to_digit(MAX_TEXT_ALPHABET)
}

/// A string over `{0, .., alphabet_size - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    symbols: Vec<u32>,
    alphabet_size: u32,
}

impl Word {
    pub fn new(symbols: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        if alphabet_size == 0 && !symbols.is_empty() {
            return Err(Error::AlphabetSize(0));
        }
        if let Some((position, &symbol)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= alphabet_size)
        {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol,
                alphabet_size,
            });
        }
        Ok(Word {
            symbols,
            alphabet_size,
        })
    }

    pub fn empty(alphabet_size: u32) -> Self {
        Word {
            symbols: Vec::new(),
            alphabet_size,
        }
    }

    /// Parses the compact text form (`"011222"`), digits first then letters.
    pub fn parse(text: &str, alphabet_size: u32) -> Result<Self> {
        let symbols = parse_symbols(text)?;
        Word::new(symbols, alphabet_size)
    }

    /// Parses the text form and takes the alphabet to be `max symbol + 1`
    /// (at least 1).
    pub fn parse_inferred(text: &str) -> Result<Self> {
        let symbols = parse_symbols(text)?;
        let q = symbols.iter().max().map_or(1, |m| m + 1);
        Word::new(symbols, q)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of maximal constant substrings.
    pub fn run_count(&self) -> usize {
        if self.symbols.is_empty() {
            return 0;
        }
        1 + self.symbols.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn runs(&self) -> RunProfile {
        encode_runs(self)
    }

    pub fn reversed(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word {
            symbols,
            alphabet_size: self.alphabet_size,
        }
    }

    /// Same symbols viewed over a larger (or equal) alphabet.
    pub fn with_alphabet(&self, alphabet_size: u32) -> Result<Word> {
        Word::new(self.symbols.clone(), alphabet_size)
    }

    pub(crate) fn from_parts_unchecked(symbols: Vec<u32>, alphabet_size: u32) -> Word {
        debug_assert!(symbols.iter().all(|&s| s < alphabet_size));
        Word {
            symbols,
            alphabet_size,
        }
    }
}

fn parse_symbols(text: &str) -> Result<Vec<u32>> {
    text.trim()
        .chars()
        .map(|c| {
            char_to_symbol(c).ok_or_else(|| Error::Parse {
                what: "word",
                input: text.to_string(),
                reason: format!("unexpected character {c:?}"),
            })
        })
        .collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet_size <= MAX_TEXT_ALPHABET {
            for &s in &self.symbols {
                write!(f, "{}", symbol_to_char(s).expect("symbol < 36"))?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(u32::to_string).collect();
            write!(f, "[{}]", parts.join(" "))
        }
    }
}

/// Run-length form `S(x_1..x_r; a_1..a_r)` of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunProfile {
    lengths: Vec<usize>,
    symbols: Vec<u32>,
    alphabet_size: u32,
}

impl RunProfile {
    pub fn new(lengths: Vec<usize>, symbols: Vec<u32>, alphabet_size: u32) -> Result<Self> {
        if lengths.len() != symbols.len() {
            return Err(Error::InvalidProfile(format!(
                "{} lengths but {} symbols",
                lengths.len(),
                symbols.len()
            )));
        }
        if let Some(i) = lengths.iter().position(|&x| x == 0) {
            return Err(Error::InvalidProfile(format!("run {} has length 0", i + 1)));
        }
        if let Some(i) = symbols.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::InvalidProfile(format!(
                "runs {} and {} share symbol {}",
                i + 1,
                i + 2,
                symbols[i]
            )));
        }
        if let Some((position, &symbol)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= alphabet_size)
        {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol,
                alphabet_size,
            });
        }
        Ok(RunProfile {
            lengths,
            symbols,
            alphabet_size,
        })
    }

    /// `S(x_1..x_r)`: run `i` (0-based) carries symbol `i mod min(r, q)`.
    pub fn canonical(lengths: Vec<usize>, alphabet_size: u32) -> Result<Self> {
        if alphabet_size < 2 {
            return Err(Error::AlphabetSize(alphabet_size));
        }
        let q1 = canonical_modulus(lengths.len(), alphabet_size);
        let symbols = (0..lengths.len()).map(|i| (i % q1) as u32).collect();
        RunProfile::new(lengths, symbols, alphabet_size)
    }

    /// Parses `"x1,x2,...;a1,a2,..."`.
    pub fn parse(text: &str, alphabet_size: u32) -> Result<Self> {
        let (lengths, symbols) = parse_profile_text(text)?;
        RunProfile::new(lengths, symbols, alphabet_size)
    }

    /// Like [`RunProfile::parse`] with the alphabet inferred as `max symbol + 1`.
    pub fn parse_inferred(text: &str) -> Result<Self> {
        let (lengths, symbols) = parse_profile_text(text)?;
        let q = symbols.iter().max().map_or(1, |m| m + 1);
        RunProfile::new(lengths, symbols, q)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn run_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn total_length(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.lengths.iter().map(|&x| (x as u64) * (x as u64)).sum()
    }

    /// Whether the run symbols are `0, 1, .., (r-1) mod min(r, q)`.
    pub fn is_canonical(&self) -> bool {
        let q1 = canonical_modulus(self.lengths.len(), self.alphabet_size);
        self.symbols
            .iter()
            .enumerate()
            .all(|(i, &s)| s as usize == i % q1)
    }

    pub fn to_word(&self) -> Word {
        let mut symbols = Vec::with_capacity(self.total_length());
        for (&x, &a) in self.lengths.iter().zip(&self.symbols) {
            symbols.extend(std::iter::repeat_n(a, x));
        }
        Word::from_parts_unchecked(symbols, self.alphabet_size)
    }
}

impl fmt::Display for RunProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.lengths.iter().map(usize::to_string).collect();
        let s: Vec<String> = self.symbols.iter().map(u32::to_string).collect();
        write!(f, "{};{}", l.join(","), s.join(","))
    }
}

impl FromStr for RunProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RunProfile::parse_inferred(s)
    }
}

fn parse_profile_text(text: &str) -> Result<(Vec<usize>, Vec<u32>)> {
    let err = |reason: String| Error::Parse {
        what: "run profile",
        input: text.to_string(),
        reason,
    };
    let (l, s) = text
        .trim()
        .split_once(';')
        .ok_or_else(|| err("expected \"lengths;symbols\"".into()))?;
    let split = |part: &str| -> Vec<String> {
        if part.trim().is_empty() {
            Vec::new()
        } else {
            part.split(',').map(|x| x.trim().to_string()).collect()
        }
    };
    let lengths = split(l)
        .iter()
        .map(|x| {
            x.parse::<usize>()
                .map_err(|e| err(format!("length {x:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let symbols = split(s)
        .iter()
        .map(|x| {
            x.parse::<u32>()
                .map_err(|e| err(format!("symbol {x:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((lengths, symbols))
}

/// `q_1 = min(r, q)`, floored at 1 so that modular arithmetic stays defined.
pub fn canonical_modulus(runs: usize, alphabet_size: u32) -> usize {
    runs.min(alphabet_size as usize).max(1)
}

pub fn encode_runs(word: &Word) -> RunProfile {
    let mut lengths = Vec::new();
    let mut symbols: Vec<u32> = Vec::new();
    for &s in word.symbols() {
        match symbols.last() {
            Some(&last) if last == s => *lengths.last_mut().unwrap() += 1,
            _ => {
                symbols.push(s);
                lengths.push(1);
            }
        }
    }
    RunProfile {
        lengths,
        symbols,
        alphabet_size: word.alphabet_size(),
    }
}

pub fn canonical_word(lengths: &[usize], alphabet_size: u32) -> Result<Word> {
    Ok(RunProfile::canonical(lengths.to_vec(), alphabet_size)?.to_word())
}

/// `B_{r,k;q}`: `r` runs of length `k` with canonical symbols.
pub fn balanced_word(r: usize, k: usize, q: u32) -> Result<Word> {
    if r < 1 || k < 1 {
        return Err(Error::OutOfRange(format!(
            "balanced word needs r >= 1 and k >= 1, got r={r}, k={k}"
        )));
    }
    canonical_word(&vec![k; r], q)
}

/// `B'_{r,k;q}`: the balanced word with its first symbol removed.
pub fn balanced_prime_word(r: usize, k: usize, q: u32) -> Result<Word> {
    let b = balanced_word(r, k, q)?;
    Ok(Word::from_parts_unchecked(b.symbols()[1..].to_vec(), q))
}

/// Binary word with `r - 1` runs of length one followed by a run of
/// length `n - r + 1`.
pub fn unbalanced_binary_word(n: usize, r: usize) -> Result<Word> {
    if r < 1 || r > n {
        return Err(Error::OutOfRange(format!(
            "unbalanced word needs 1 <= r <= n, got n={n}, r={r}"
        )));
    }
    let mut lengths = vec![1; r - 1];
    lengths.push(n - r + 1);
    canonical_word(&lengths, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str, q: u32) -> Word {
        Word::parse(text, q).unwrap()
    }

    #[test]
    fn encode_examples() {
        let p = encode_runs(&w("011222", 3));
        assert_eq!(p.lengths(), &[1, 2, 3]);
        assert_eq!(p.symbols(), &[0, 1, 2]);

        let p = encode_runs(&w("0000", 2));
        assert_eq!(p.lengths(), &[4]);
        assert_eq!(p.symbols(), &[0]);

        let p = encode_runs(&w("0101", 2));
        assert_eq!(p.lengths(), &[1, 1, 1, 1]);
        assert_eq!(p.symbols(), &[0, 1, 0, 1]);

        let p = encode_runs(&Word::empty(2));
        assert_eq!(p.run_count(), 0);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            canonical_word(&[4; 6], 3).unwrap().to_string(),
            "000011112222000011112222"
        );
        assert_eq!(canonical_word(&[5], 3).unwrap().to_string(), "00000");
        assert_eq!(canonical_word(&[2, 2], 4).unwrap().to_string(), "0011");
        assert!(matches!(
            canonical_word(&[2, 2], 1),
            Err(Error::AlphabetSize(1))
        ));
        assert!(canonical_word(&[2, 0, 1], 3).is_err());
    }

    #[test]
    fn balanced_examples() {
        assert_eq!(balanced_prime_word(4, 2, 3).unwrap().to_string(), "0112200");
        assert_eq!(balanced_word(1, 5, 3).unwrap().to_string(), "00000");
        assert_eq!(
            balanced_word(6, 4, 3).unwrap().to_string(),
            "000011112222000011112222"
        );
        assert!(balanced_word(0, 3, 3).is_err());
        assert!(balanced_prime_word(3, 0, 3).is_err());
    }

    #[test]
    fn unbalanced_examples() {
        assert_eq!(unbalanced_binary_word(6, 4).unwrap().to_string(), "010111");
        assert_eq!(unbalanced_binary_word(5, 1).unwrap().to_string(), "00000");
        assert_eq!(unbalanced_binary_word(4, 4).unwrap().to_string(), "0101");
        assert!(unbalanced_binary_word(3, 4).is_err());
        assert!(unbalanced_binary_word(3, 0).is_err());
    }

    #[test]
    fn word_validation_and_text() {
        assert!(matches!(
            Word::new(vec![0, 3], 3),
            Err(Error::SymbolOutOfRange { position: 1, .. })
        ));
        assert!(Word::parse("01x", 36).is_ok());
        assert!(Word::parse("01-", 3).is_err());
        let inferred = Word::parse_inferred("000000011022200000333333").unwrap();
        assert_eq!(inferred.alphabet_size(), 4);
        assert_eq!(w("0a", 11).symbols(), &[0, 10]);
        assert_eq!(Word::new(vec![40, 2], 41).unwrap().to_string(), "[40 2]");
    }

    #[test]
    fn profile_text_and_validation() {
        let p = RunProfile::parse("1,2,3;0,1,2", 3).unwrap();
        assert_eq!(p.to_word().to_string(), "011222");
        assert_eq!(p.to_string(), "1,2,3;0,1,2");
        assert!(p.is_canonical());
        assert!(RunProfile::parse("1,2;0,0", 3).is_err());
        assert!(RunProfile::parse("1,0;0,1", 3).is_err());
        assert!(RunProfile::parse("1,2;0", 3).is_err());
        assert!(RunProfile::parse("1,2,0,1", 3).is_err());
        let single: RunProfile = "4;0".parse().unwrap();
        assert_eq!(single.to_word().to_string(), "0000");
        let empty = RunProfile::parse(";", 2).unwrap();
        assert_eq!(empty.run_count(), 0);
        assert!(!RunProfile::parse("2,2;1,0", 2).unwrap().is_canonical());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        (1u32..6).prop_flat_map(|q| {
            prop::collection::vec(0..q, 0..30).prop_map(move |s| Word::new(s, q).unwrap())
        })
    }

    fn arb_profile() -> impl Strategy<Value = RunProfile> {
        (2u32..6, prop::collection::vec((1usize..5, 1u32..5), 0..12)).prop_map(|(q, steps)| {
            // each step shifts the symbol by a nonzero amount mod q
            let mut symbols = Vec::new();
            let mut lengths = Vec::new();
            let mut cur = 0u32;
            for (i, (len, shift)) in steps.into_iter().enumerate() {
                if i > 0 {
                    cur = (cur + 1 + shift % (q - 1)) % q;
                }
                symbols.push(cur);
                lengths.push(len);
            }
            RunProfile::new(lengths, symbols, q).unwrap()
        })
    }

    proptest! {
        #[test]
        fn decode_encode_identity(word in arb_word()) {
            let p = encode_runs(&word);
            prop_assert_eq!(p.run_count(), word.run_count());
            prop_assert_eq!(p.to_word(), word);
        }

        #[test]
        fn encode_decode_identity(profile in arb_profile()) {
            prop_assert_eq!(encode_runs(&profile.to_word()), profile);
        }

        #[test]
        fn canonical_has_requested_runs(
            lengths in prop::collection::vec(1usize..6, 1..15),
            q in 2u32..7,
        ) {
            let word = canonical_word(&lengths, q).unwrap();
            let p = encode_runs(&word);
            prop_assert_eq!(p.lengths(), &lengths[..]);
            prop_assert!(p.is_canonical());
        }

        #[test]
        fn text_roundtrip(word in arb_word()) {
            let text = word.to_string();
            prop_assert_eq!(Word::parse(&text, word.alphabet_size()).unwrap(), word);
        }
    }
}
