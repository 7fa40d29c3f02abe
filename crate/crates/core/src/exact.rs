//! Ground-truth deletion-ball sizes.
//!
//! Three independent routes: brute-force enumeration of `D_t(X)`, a
//! distinct-fixed-length-subsequence dynamic program, and the peel-the-first-run
//! recursion for canonical run profiles.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigUint;

use crate::count::{indicator, Count};
use crate::error::{Error, Result};
use crate::word::{canonical_modulus, Word};

/// Default cap on the number of position subsets `enumerate_ball` will visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 2_000_000;

/// A word together with a deletion count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BallSizeQuery {
    pub word: Word,
    pub deletions: i64,
}

impl BallSizeQuery {
    pub fn new(word: Word, deletions: i64) -> Self {
        BallSizeQuery { word, deletions }
    }

    pub fn count<C: Count>(&self) -> C {
        count_exact(&self.word, self.deletions)
    }
}

/// All distinct words obtained from `word` by deleting exactly `t` symbols.
///
/// Refuses with [`Error::BudgetExceeded`] when `C(n, t)` exceeds `budget`.
pub fn enumerate_ball(word: &Word, t: i64, budget: u64) -> Result<BTreeSet<Word>> {
    let n = word.len() as i64;
    if t < 0 || t > n {
        return Ok(BTreeSet::new());
    }
    let candidates = crate::count::binomial(n, t);
    if candidates > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            candidates: candidates.to_string(),
            budget,
        });
    }
    let keep = (n - t) as usize;
    let q = word.alphabet_size();
    let symbols = word.symbols();
    Ok((0..symbols.len())
        .combinations(keep)
        .map(|positions| {
            Word::from_parts_unchecked(positions.into_iter().map(|i| symbols[i]).collect(), q)
        })
        .collect())
}

/// `|D_t(word)|` by dynamic programming over prefixes.
///
/// `dp[i][j]` counts distinct length-`j` subsequences of the first `i`
/// symbols; subsequences ending at an earlier copy of the same symbol are
/// subtracted once. Zero for `t < 0` or `t > n`.
pub fn count_exact<C: Count>(word: &Word, t: i64) -> C {
    let n = word.len();
    if t < 0 || t > n as i64 {
        return C::zero();
    }
    let keep = n - t as usize;
    if keep == 0 {
        return C::one();
    }
    let symbols = word.symbols();
    let mut dp: Vec<Vec<C>> = Vec::with_capacity(n + 1);
    let mut first = vec![C::zero(); keep + 1];
    first[0] = C::one();
    dp.push(first);
    let mut last_seen: HashMap<u32, usize> = HashMap::new();
    for i in 1..=n {
        let prev = &dp[i - 1];
        let earlier = last_seen.get(&symbols[i - 1]).copied();
        let mut row = Vec::with_capacity(keep + 1);
        row.push(C::one());
        for j in 1..=keep {
            let mut v = prev[j].clone() + prev[j - 1].clone();
            if let Some(p) = earlier {
                v = v - dp[p - 1][j - 1].clone();
            }
            row.push(v);
        }
        dp.push(row);
        last_seen.insert(symbols[i - 1], i);
    }
    dp[n][keep].clone()
}

/// `|D_t(S(x_1..x_r))|` for the canonical word with the given run lengths,
/// evaluated by repeatedly peeling the first run.
pub fn count_canonical_recursive<C: Count>(lengths: &[usize], q: u32, t: i64) -> Result<C> {
    if q < 2 {
        return Err(Error::AlphabetSize(q));
    }
    if lengths.is_empty() {
        return Err(Error::InvalidProfile("no runs".into()));
    }
    if let Some(i) = lengths.iter().position(|&x| x == 0) {
        return Err(Error::InvalidProfile(format!("run {} has length 0", i + 1)));
    }
    let mut eval = CanonicalRecursion::new(lengths, q);
    Ok(eval.count(0, lengths[0], t))
}

struct CanonicalRecursion<'a, C> {
    lengths: &'a [usize],
    suffix: Vec<usize>,
    q: usize,
    memo: HashMap<(usize, usize, i64), C>,
}

impl<'a, C: Count> CanonicalRecursion<'a, C> {
    fn new(lengths: &'a [usize], q: u32) -> Self {
        let mut suffix = vec![0; lengths.len() + 1];
        for i in (0..lengths.len()).rev() {
            suffix[i] = suffix[i + 1] + lengths[i];
        }
        CanonicalRecursion {
            lengths,
            suffix,
            q: q as usize,
            memo: HashMap::new(),
        }
    }

    /// Ball size of the profile `[first, lengths[start+1..]]`.
    fn count(&mut self, start: usize, first: usize, t: i64) -> C {
        let r = self.lengths.len();
        if start >= r {
            return indicator(t == 0);
        }
        if first == 0 {
            return match self.lengths.get(start + 1) {
                Some(&next) => self.count(start + 1, next, t),
                None => indicator(t == 0),
            };
        }
        let n = (first + self.suffix[start + 1]) as i64;
        if t < 0 || t > n {
            return C::zero();
        }
        if t == 0 || t == n {
            return C::one();
        }
        if let Some(v) = self.memo.get(&(start, first, t)) {
            return v.clone();
        }
        let runs = r - start;
        let q1 = canonical_modulus(runs, self.q as u32);

        let mut total = match self.lengths.get(start + 1) {
            Some(&next) => self.count(start + 1, next, t),
            None => C::zero(),
        };
        // f(j) = first + x_{start+1} + .. + x_{start+j-1}
        let mut f = first as i64;
        for j in 1..q1 {
            let idx = start + j;
            let sub_first = self.lengths[idx] - 1;
            for i in 0..first as i64 {
                total += self.count(idx, sub_first, t - f + i);
            }
            f += self.lengths[idx] as i64;
        }
        total += indicator::<C>(t > n - first as i64);
        self.memo.insert((start, first, t), total.clone());
        total
    }
}
