#![allow(dead_code)]

use delball_core::Word;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize, max_q: u32) -> Word {
    let q = rng.gen_range(2..=max_q);
    let n = rng.gen_range(0..=max_len);
    Word::new((0..n).map(|_| rng.gen_range(0..q)).collect(), q).unwrap()
}

/// Random positive parts summing to `n`.
pub fn random_composition(rng: &mut ChaCha8Rng, n: usize, parts: usize) -> Vec<usize> {
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, n - 1, parts - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(n)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// A word with the given run lengths and random symbols (adjacent runs differ).
pub fn word_with_runs(rng: &mut ChaCha8Rng, lengths: &[usize], q: u32) -> Word {
    let mut symbols = Vec::new();
    let mut prev: Option<u32> = None;
    for &len in lengths {
        let s = loop {
            let s = rng.gen_range(0..q);
            if Some(s) != prev {
                break s;
            }
        };
        symbols.extend(std::iter::repeat_n(s, len));
        prev = Some(s);
    }
    Word::new(symbols, q).unwrap()
}
