//! String transformations with known effect on the deletion-ball size.
//!
//! | operation            | effect on `|D_t|`       |
//! |----------------------|-------------------------|
//! | [`insert_symbol`]    | never decreases         |
//! | [`apply_permutation`]| unchanged               |
//! | [`reduce_to_binary`] | never increases         |
//! | [`cyclicize`]        | never decreases         |
//! | [`balance_step`]     | never decreases         |
//!
//! The effects are contracts checked by the test suites, not enforced here.

use rayon::prelude::*;

use crate::count::Count;
use crate::error::{Error, Result};
use crate::exact::count_exact;
use crate::word::{canonical_modulus, encode_runs, RunProfile, Word};

pub fn insert_symbol(word: &Word, position: usize, symbol: u32) -> Result<Word> {
    if position > word.len() {
        return Err(Error::OutOfRange(format!(
            "insert position {position} beyond word length {}",
            word.len()
        )));
    }
    let mut symbols = word.symbols().to_vec();
    symbols.insert(position, symbol);
    Word::new(symbols, word.alphabet_size())
}

/// A bijection on `{0, .., q-1}`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let q = images.len();
        let mut seen = vec![false; q];
        for &v in &images {
            let v = v as usize;
            if v >= q || seen[v] {
                return Err(Error::Precondition(format!(
                    "{images:?} is not a bijection on 0..{q}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(q: u32) -> Self {
        Permutation((0..q).collect())
    }

    /// `s -> (s + shift) mod q`.
    pub fn rotation(q: u32, shift: u32) -> Self {
        Permutation((0..q).map(|s| (s + shift) % q).collect())
    }

    pub fn swap(q: u32, a: u32, b: u32) -> Result<Self> {
        if a >= q || b >= q {
            return Err(Error::OutOfRange(format!("swap {a}<->{b} outside 0..{q}")));
        }
        let mut images: Vec<u32> = (0..q).collect();
        images.swap(a as usize, b as usize);
        Ok(Permutation(images))
    }

    pub fn size(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn image(&self, s: u32) -> u32 {
        self.0[s as usize]
    }
}

pub fn apply_permutation(word: &Word, permutation: &Permutation) -> Result<Word> {
    if permutation.size() != word.alphabet_size() {
        return Err(Error::Precondition(format!(
            "permutation acts on {} symbols, word alphabet has {}",
            permutation.size(),
            word.alphabet_size()
        )));
    }
    let symbols = word
        .symbols()
        .iter()
        .map(|&s| permutation.image(s))
        .collect();
    Word::new(symbols, word.alphabet_size())
}

/// Keeps run lengths and relabels runs `0, 1, 0, 1, ..` over the binary alphabet.
pub fn reduce_to_binary(word: &Word) -> Word {
    let profile = encode_runs(word);
    let symbols = (0..profile.run_count()).map(|i| (i % 2) as u32).collect();
    RunProfile::new(profile.lengths().to_vec(), symbols, 2)
        .expect("alternating symbols are valid")
        .to_word()
}

/// Keeps run lengths and relabels runs `0, 1, .., (r-1) mod min(r, q)`.
pub fn cyclicize(word: &Word) -> Word {
    let profile = encode_runs(word);
    let q1 = canonical_modulus(profile.run_count(), word.alphabet_size());
    let symbols = (0..profile.run_count()).map(|i| (i % q1) as u32).collect();
    RunProfile::new(profile.lengths().to_vec(), symbols, word.alphabet_size())
        .expect("cyclic symbols are valid")
        .to_word()
}

/// Moves one unit of length from the longer of runs `p` and `s` to the
/// shorter one. Indices are 0-based.
///
/// Requires a canonical profile, `p < s`, `|x_p - x_s| > 1` and a
/// palindromic run-length segment strictly between them.
pub fn balance_step(profile: &RunProfile, p: usize, s: usize) -> Result<RunProfile> {
    if !profile.is_canonical() {
        return Err(Error::Precondition(format!(
            "profile {profile} is not canonical"
        )));
    }
    let x = profile.lengths();
    if p >= s || s >= x.len() {
        return Err(Error::Precondition(format!(
            "need p < s < r, got p={p}, s={s}, r={}",
            x.len()
        )));
    }
    if x[p].abs_diff(x[s]) <= 1 {
        return Err(Error::Precondition(format!(
            "runs {p} and {s} differ by at most one ({} vs {})",
            x[p], x[s]
        )));
    }
    let inner = &x[p + 1..s];
    if !inner.iter().eq(inner.iter().rev()) {
        return Err(Error::Precondition(format!(
            "segment between runs {p} and {s} is not symmetric: {inner:?}"
        )));
    }
    let mut lengths = x.to_vec();
    let (long, short) = if x[p] > x[s] { (p, s) } else { (s, p) };
    lengths[long] -= 1;
    lengths[short] += 1;
    RunProfile::canonical(lengths, profile.alphabet_size())
}

/// One row of a balancing chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainStep<C> {
    pub index: usize,
    pub profile: RunProfile,
    pub ball_size: C,
    pub sum_of_squares: u64,
}

/// Pair `(p, s)` with `|x_p - x_s| > 1` and `s - p` minimal; ties go to the
/// smallest `p`.
pub fn closest_unbalanced_pair(lengths: &[usize]) -> Option<(usize, usize)> {
    (1..lengths.len()).find_map(|gap| {
        (0..lengths.len() - gap)
            .find(|&p| lengths[p].abs_diff(lengths[p + gap]) > 1)
            .map(|p| (p, p + gap))
    })
}

/// The profile sequence from `word` to the balanced word: the input, its
/// cyclic relabelling, then balance steps until every run has length `n / r`.
pub fn balancing_profiles(word: &Word) -> Result<Vec<RunProfile>> {
    let n = word.len();
    let r = word.run_count();
    if r == 0 {
        return Err(Error::Precondition(
            "balancing chain of the empty word".into(),
        ));
    }
    if !n.is_multiple_of(r) {
        return Err(Error::Precondition(format!(
            "run count {r} does not divide length {n}"
        )));
    }
    let mut current = encode_runs(&cyclicize(word));
    let mut profiles = vec![encode_runs(word), current.clone()];
    while let Some((p, s)) = closest_unbalanced_pair(current.lengths()) {
        current = balance_step(&current, p, s)?;
        profiles.push(current.clone());
    }
    Ok(profiles)
}

/// [`balancing_profiles`] with `|D_t|` attached to every step. Ball sizes
/// are evaluated in parallel.
pub fn balancing_chain<C: Count>(word: &Word, t: i64) -> Result<Vec<ChainStep<C>>> {
    let profiles = balancing_profiles(word)?;
    Ok(profiles
        .into_par_iter()
        .enumerate()
        .map(|(index, profile)| {
            let ball_size = count_exact(&profile.to_word(), t);
            let sum_of_squares = profile.sum_of_squares();
            ChainStep {
                index,
                profile,
                ball_size,
                sum_of_squares,
            }
        })
        .collect())
}
