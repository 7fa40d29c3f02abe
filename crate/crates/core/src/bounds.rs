//! Known lower and upper bounds on `|D_t(X)|`, and a report that collects
//! them for one word or one `(q, n, r)` triple.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::balanced::BigEvaluator;
use crate::count::binomial;
use crate::error::{Error, Result};
use crate::exact::count_exact;
use crate::word::{canonical_word, unbalanced_binary_word, Word};

/// Upper limit on the number of run-length compositions scanned when an
/// exact value is requested for a `(q, n, r)` triple.
pub const EXACT_COMPOSITION_LIMIT: u64 = 200_000;

/// `(C(r-t+1, t), C(r+t-1, t))`.
///
/// The upper value is 0 for `r = t = 0`, below the true size 1 of the
/// empty word's ball.
pub fn levenshtein_bounds(r: i64, t: i64) -> (BigUint, BigUint) {
    (binomial(r - t + 1, t), binomial(r + t - 1, t))
}

/// Memoised maximum ball size `D_q(n, t)` over all length-`n` words.
#[derive(Debug, Clone)]
pub struct CalabiHartnett {
    q: u32,
    memo: HashMap<(i64, i64), BigUint>,
}

impl CalabiHartnett {
    pub fn new(q: u32) -> Result<Self> {
        if q < 1 {
            return Err(Error::AlphabetSize(q));
        }
        Ok(CalabiHartnett {
            q,
            memo: HashMap::new(),
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn get(&mut self, n: i64, t: i64) -> BigUint {
        if t < 0 || t > n {
            return BigUint::zero();
        }
        if t == 0 || t == n {
            return BigUint::one();
        }
        if let Some(v) = self.memo.get(&(n, t)) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for i in 0..self.q as i64 {
            total += self.get(n - i - 1, t - i);
        }
        self.memo.insert((n, t), total.clone());
        total
    }
}

pub fn calabi_hartnett_max(q: u32, n: i64, t: i64) -> Result<BigUint> {
    Ok(CalabiHartnett::new(q)?.get(n, t))
}

fn check_qnr(q: u32, n: i64, r: i64) -> Result<()> {
    if q < 2 {
        return Err(Error::AlphabetSize(q));
    }
    if r < 0 || r > n {
        return Err(Error::OutOfRange(format!("run count {r} not in [0, {n}]")));
    }
    Ok(())
}

fn hr_lower(r: i64, t: i64) -> BigUint {
    (0..=t.max(-1)).map(|i| binomial(r - t, i)).sum()
}

/// Upper sum with `D_{q-1}` supplied by the caller's memo.
fn hr_upper(smaller: &mut CalabiHartnett, n: i64, t: i64) -> BigUint {
    (0..=t.max(-1))
        .map(|i| binomial(n - t, i) * smaller.get(t, t - i))
        .sum()
}

/// `(sum_{i<=t} C(r-t, i), sum_{i<=t} C(n-t, i) D_{q-1}(t, t-i))`.
pub fn hirschberg_regnier_bounds(q: u32, n: i64, r: i64, t: i64) -> Result<(BigUint, BigUint)> {
    check_qnr(q, n, r)?;
    let mut smaller = CalabiHartnett::new(q - 1)?;
    Ok((hr_lower(r, t), hr_upper(&mut smaller, n, t)))
}

fn check_runs(n: i64, r: i64) -> Result<()> {
    if r < 1 || r > n {
        return Err(Error::OutOfRange(format!("run count {r} not in [1, {n}]")));
    }
    Ok(())
}

/// Ball size of the binary word with `r - 1` single-symbol runs followed by
/// one run of length `n - r + 1`.
pub fn new_lower_bound(n: i64, r: i64, t: i64) -> Result<BigUint> {
    check_runs(n, r)?;
    Ok(count_exact(
        &unbalanced_binary_word(n as usize, r as usize)?,
        t,
    ))
}

/// `b(r, ceil(n/r), t; q)`.
pub fn new_upper_bound(q: u32, n: i64, r: i64, t: i64) -> Result<BigUint> {
    check_runs(n, r)?;
    let k = ((n + r - 1) / r) as usize;
    Ok(BigEvaluator::new(k, q)?.b_closed(r, t))
}

/// Largest `|D_t|` over all `q`-ary words of length `n` with `r` runs.
///
/// Scans every composition of `n` into `r` parts; a word and its cyclic
/// relabelling share run lengths and the latter never has a smaller ball.
pub fn exact_max(q: u32, n: i64, r: i64, t: i64) -> Result<BigUint> {
    check_qnr(q, n, r)?;
    check_runs(n, r)?;
    let candidates = binomial(n - 1, r - 1);
    if candidates > BigUint::from(EXACT_COMPOSITION_LIMIT) {
        return Err(Error::BudgetExceeded {
            candidates: candidates.to_string(),
            budget: EXACT_COMPOSITION_LIMIT,
        });
    }
    let compositions = compositions(n as usize, r as usize);
    compositions
        .par_iter()
        .map(|lengths| canonical_word(lengths, q).map(|w| count_exact::<BigUint>(&w, t)))
        .try_reduce(BigUint::zero, |a, b| Ok(a.max(b)))
}

fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=left - (parts - 1) {
            cur.push(first);
            go(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 && parts <= n {
        go(n, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Report columns in their canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundColumn {
    Exact,
    LevLower,
    LevUpper,
    HrLower,
    HrUpper,
    ChUpper,
    NewLower,
    NewUpper,
}

impl BoundColumn {
    pub const ALL: [BoundColumn; 8] = [
        BoundColumn::Exact,
        BoundColumn::LevLower,
        BoundColumn::LevUpper,
        BoundColumn::HrLower,
        BoundColumn::HrUpper,
        BoundColumn::ChUpper,
        BoundColumn::NewLower,
        BoundColumn::NewUpper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundColumn::Exact => "exact",
            BoundColumn::LevLower => "lev_lower",
            BoundColumn::LevUpper => "lev_upper",
            BoundColumn::HrLower => "hr_lower",
            BoundColumn::HrUpper => "hr_upper",
            BoundColumn::ChUpper => "ch_upper",
            BoundColumn::NewLower => "new_lower",
            BoundColumn::NewUpper => "new_upper",
        }
    }
}

impl fmt::Display for BoundColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundColumn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundColumn::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse {
                what: "column",
                input: s.to_string(),
                reason: format!(
                    "expected one of {}",
                    BoundColumn::ALL.map(BoundColumn::name).join(", ")
                ),
            })
    }
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_optional_decimal<S: Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Every bound for one `(q, n, r, t)`, plus the exact value when requested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub q: u32,
    pub n: i64,
    pub r: i64,
    pub t: i64,
    #[serde(serialize_with = "as_optional_decimal")]
    pub exact: Option<BigUint>,
    #[serde(serialize_with = "as_decimal")]
    pub lev_lower: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub lev_upper: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub hr_lower: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub hr_upper: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub ch_upper: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub new_lower: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub new_upper: BigUint,
}

impl BoundReport {
    pub fn get(&self, column: BoundColumn) -> Option<&BigUint> {
        match column {
            BoundColumn::Exact => self.exact.as_ref(),
            BoundColumn::LevLower => Some(&self.lev_lower),
            BoundColumn::LevUpper => Some(&self.lev_upper),
            BoundColumn::HrLower => Some(&self.hr_lower),
            BoundColumn::HrUpper => Some(&self.hr_upper),
            BoundColumn::ChUpper => Some(&self.ch_upper),
            BoundColumn::NewLower => Some(&self.new_lower),
            BoundColumn::NewUpper => Some(&self.new_upper),
        }
    }

    pub fn lowers(&self) -> [(BoundColumn, &BigUint); 3] {
        [
            (BoundColumn::LevLower, &self.lev_lower),
            (BoundColumn::HrLower, &self.hr_lower),
            (BoundColumn::NewLower, &self.new_lower),
        ]
    }

    pub fn uppers(&self) -> [(BoundColumn, &BigUint); 4] {
        [
            (BoundColumn::LevUpper, &self.lev_upper),
            (BoundColumn::HrUpper, &self.hr_upper),
            (BoundColumn::ChUpper, &self.ch_upper),
            (BoundColumn::NewUpper, &self.new_upper),
        ]
    }

    /// Descriptions of every lower bound above `exact` and every upper bound
    /// below it. Empty when `exact` is absent.
    pub fn sandwich_violations(&self) -> Vec<String> {
        let Some(exact) = &self.exact else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for (c, v) in self.lowers() {
            if v > exact {
                out.push(format!("{c} = {v} > exact = {exact}"));
            }
        }
        for (c, v) in self.uppers() {
            if v < exact {
                out.push(format!("{c} = {v} < exact = {exact}"));
            }
        }
        out
    }

    /// Values of the requested columns as decimal strings; `None` marks an
    /// absent exact value.
    pub fn row(&self, columns: &[BoundColumn]) -> Vec<Option<String>> {
        columns
            .iter()
            .map(|&c| self.get(c).map(BigUint::to_string))
            .collect()
    }
}

/// What a report describes: one concrete word, or every word with the given
/// alphabet size, length and run count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportSubject {
    Word(Word),
    Params { q: u32, n: i64, r: i64 },
}

/// Builds reports, keeping memo tables alive between calls.
#[derive(Default)]
pub struct Reporter {
    ch: HashMap<u32, CalabiHartnett>,
    balanced: HashMap<(usize, u32), BigEvaluator>,
}

impl Reporter {
    pub fn new() -> Self {
        Self::default()
    }

    fn ch(&mut self, q: u32) -> Result<&mut CalabiHartnett> {
        match self.ch.entry(q) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => Ok(e.insert(CalabiHartnett::new(q)?)),
        }
    }

    fn evaluator(&mut self, k: usize, q: u32) -> Result<&mut BigEvaluator> {
        match self.balanced.entry((k, q)) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => Ok(e.insert(BigEvaluator::new(k, q)?)),
        }
    }

    /// Memo hit/miss totals across every balanced evaluator used so far.
    pub fn balanced_stats(&self) -> crate::balanced::MemoCounter {
        let mut hits = 0;
        let mut misses = 0;
        for ev in self.balanced.values() {
            let s = ev.stats().total();
            hits += s.hits;
            misses += s.misses;
        }
        crate::balanced::MemoCounter { hits, misses }
    }

    /// Unary words are reported as binary words.
    ///
    /// Panics if an exact value is computed and falls outside any bound.
    pub fn report(
        &mut self,
        subject: &ReportSubject,
        t: i64,
        with_exact: bool,
    ) -> Result<BoundReport> {
        let (q, n, r) = match subject {
            ReportSubject::Word(w) => (
                w.alphabet_size().max(2),
                w.len() as i64,
                w.run_count() as i64,
            ),
            ReportSubject::Params { q, n, r } => (*q, *n, *r),
        };
        check_qnr(q, n, r)?;
        check_runs(n, r)?;
        let exact = match (subject, with_exact) {
            (_, false) => None,
            (ReportSubject::Word(w), true) => Some(count_exact(w, t)),
            (ReportSubject::Params { .. }, true) => Some(exact_max(q, n, r, t)?),
        };
        let (lev_lower, lev_upper) = levenshtein_bounds(r, t);
        let hr_lower = hr_lower(r, t);
        let hr_upper = hr_upper(self.ch(q - 1)?, n, t);
        let ch_upper = self.ch(q)?.get(n, t);
        let new_lower = new_lower_bound(n, r, t)?;
        let k = ((n + r - 1) / r) as usize;
        let new_upper = self.evaluator(k, q)?.b_closed(r, t);
        let report = BoundReport {
            q,
            n,
            r,
            t,
            exact,
            lev_lower,
            lev_upper,
            hr_lower,
            hr_upper,
            ch_upper,
            new_lower,
            new_upper,
        };
        let violations = report.sandwich_violations();
        assert!(violations.is_empty(), "bound violated: {violations:?}");
        Ok(report)
    }
}

pub fn report(subject: &ReportSubject, t: i64, with_exact: bool) -> Result<BoundReport> {
    Reporter::new().report(subject, t, with_exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::enumerate_ball;
    use crate::word::balanced_word;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn w(text: &str) -> Word {
        Word::parse_inferred(text).unwrap()
    }

    #[test]
    fn levenshtein_examples() {
        assert_eq!(levenshtein_bounds(2, 1), (big(2), big(2)));
        assert_eq!(levenshtein_bounds(6, 7), (big(0), big(792)));
        for r in 1..10 {
            assert_eq!(levenshtein_bounds(r, 0), (big(1), big(1)));
        }
        // C(-1, 0) = 0 by convention
        assert_eq!(levenshtein_bounds(0, 0), (big(1), big(0)));
    }

    #[test]
    fn calabi_hartnett_examples() {
        assert_eq!(calabi_hartnett_max(2, 2, 1).unwrap(), big(2));
        for q in 1..5 {
            for n in 0..6 {
                assert_eq!(calabi_hartnett_max(q, n, 0).unwrap(), big(1));
            }
        }
        assert_eq!(
            calabi_hartnett_max(3, 6, 2).unwrap(),
            count_exact::<BigUint>(&w("012012"), 2)
        );
        assert!(CalabiHartnett::new(0).is_err());
    }

    #[test]
    fn calabi_hartnett_is_the_exhaustive_maximum() {
        for q in 1..=3u32 {
            for n in 0..=7usize {
                let mut ch = CalabiHartnett::new(q).unwrap();
                let total = (q as usize).pow(n as u32);
                for t in 0..=n as i64 {
                    let mut best = BigUint::zero();
                    for code in 0..total {
                        let mut c = code;
                        let symbols = (0..n)
                            .map(|_| {
                                let s = (c % q as usize) as u32;
                                c /= q as usize;
                                s
                            })
                            .collect();
                        let word = Word::new(symbols, q).unwrap();
                        best = best.max(count_exact(&word, t));
                    }
                    assert_eq!(ch.get(n as i64, t), best, "D_{q}({n},{t})");
                }
            }
        }
    }

    #[test]
    fn hirschberg_regnier_examples() {
        assert_eq!(
            hirschberg_regnier_bounds(2, 4, 4, 1).unwrap(),
            (big(4), big(4))
        );
        assert_eq!(hirschberg_regnier_bounds(3, 6, 2, 3).unwrap().0, big(0));
        assert!(hirschberg_regnier_bounds(1, 4, 4, 1).is_err());
        assert!(hirschberg_regnier_bounds(2, 4, 5, 1).is_err());
    }

    #[test]
    fn hirschberg_regnier_upper_is_the_maximum() {
        for q in 2..=4u32 {
            let mut ch = CalabiHartnett::new(q).unwrap();
            for n in 0..=14i64 {
                for t in 0..=n {
                    let (_, upper) = hirschberg_regnier_bounds(q, n, 0, t).unwrap();
                    assert_eq!(upper, ch.get(n, t));
                }
            }
        }
    }

    #[test]
    fn new_lower_examples() {
        assert_eq!(new_lower_bound(6, 4, 1).unwrap(), big(4));
        for t in 0..=5 {
            assert_eq!(new_lower_bound(5, 1, t).unwrap(), big(1));
        }
        let ball = enumerate_ball(&w("010111"), 2, 1000).unwrap();
        assert_eq!(new_lower_bound(6, 4, 2).unwrap(), big(ball.len() as u64));
        assert!(new_lower_bound(6, 0, 1).is_err());
        assert!(new_lower_bound(6, 7, 1).is_err());
    }

    #[test]
    fn new_upper_examples() {
        assert_eq!(new_upper_bound(3, 24, 6, 7).unwrap(), big(666));
        assert_eq!(new_upper_bound(3, 10, 3, 0).unwrap(), big(1));
        assert_eq!(
            new_upper_bound(4, 24, 6, 7).unwrap(),
            count_exact::<BigUint>(&w("000011112222333300001111"), 7)
        );
        assert!(new_upper_bound(3, 5, 6, 1).is_err());
    }

    #[test]
    fn new_upper_is_exact_when_runs_divide_length() {
        for q in 2..=4u32 {
            for r in 1..=5usize {
                for k in 1..=3usize {
                    let word = balanced_word(r, k, q).unwrap();
                    for t in 0..=(r * k) as i64 {
                        assert_eq!(
                            new_upper_bound(q, (r * k) as i64, r as i64, t).unwrap(),
                            count_exact::<BigUint>(&word, t)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn report_examples() {
        let word = w("000000011022200000333333");
        let rep = report(&ReportSubject::Word(word), 7, true).unwrap();
        assert_eq!(rep.exact, Some(big(326)));
        assert_eq!(rep.lev_upper, big(792));
        assert_eq!(rep.new_upper, new_upper_bound(4, 24, 6, 7).unwrap());

        let word = w("00000");
        for t in 0..=5 {
            let rep = report(&ReportSubject::Word(word.clone()), t, true).unwrap();
            assert_eq!(rep.exact, Some(big(1)));
        }

        let rep = report(
            &ReportSubject::Params {
                q: 3,
                n: 120,
                r: 24,
            },
            40,
            false,
        )
        .unwrap();
        assert_eq!(rep.exact, None);
        assert_eq!(
            rep.new_upper,
            BigEvaluator::new(5, 3).unwrap().b_closed(24, 40)
        );

        let rep = report(&ReportSubject::Params { q: 2, n: 4, r: 4 }, 1, true).unwrap();
        assert_eq!(rep.exact, Some(big(4)));
        let rep = report(&ReportSubject::Params { q: 2, n: 5, r: 1 }, 3, true).unwrap();
        assert_eq!(rep.exact, Some(big(1)));
    }

    #[test]
    fn report_rejects_inconsistent_input() {
        assert!(report(&ReportSubject::Params { q: 3, n: 4, r: 5 }, 1, false).is_err());
        assert!(report(&ReportSubject::Params { q: 1, n: 4, r: 1 }, 1, false).is_err());
        assert!(report(&ReportSubject::Word(Word::empty(2)), 0, false).is_err());
        assert!(matches!(
            report(&ReportSubject::Params { q: 3, n: 60, r: 12 }, 5, true),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn exact_max_matches_exhaustive_search() {
        for q in 2..=3u32 {
            for n in 1..=7usize {
                let total = (q as usize).pow(n as u32);
                for t in 0..=n as i64 {
                    let mut best: HashMap<usize, BigUint> = HashMap::new();
                    for code in 0..total {
                        let mut c = code;
                        let symbols = (0..n)
                            .map(|_| {
                                let s = (c % q as usize) as u32;
                                c /= q as usize;
                                s
                            })
                            .collect();
                        let word = Word::new(symbols, q).unwrap();
                        let e = best.entry(word.run_count()).or_default();
                        *e = e.clone().max(count_exact(&word, t));
                    }
                    for (r, v) in best {
                        assert_eq!(exact_max(q, n as i64, r as i64, t).unwrap(), v);
                    }
                }
            }
        }
    }

    #[test]
    fn columns_round_trip() {
        for c in BoundColumn::ALL {
            assert_eq!(c.name().parse::<BoundColumn>().unwrap(), c);
        }
        assert!("nope".parse::<BoundColumn>().is_err());
        let mut sorted = BoundColumn::ALL;
        sorted.sort();
        assert_eq!(sorted, BoundColumn::ALL);
    }

    #[test]
    fn json_uses_decimal_strings() {
        let rep = report(
            &ReportSubject::Params {
                q: 3,
                n: 120,
                r: 24,
            },
            60,
            false,
        )
        .unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(
            json["new_upper"],
            serde_json::json!(rep.new_upper.to_string())
        );
        assert_eq!(json["lev_lower"], serde_json::json!("0"));
        assert!(json["exact"].is_null());
        assert_eq!(json["n"], serde_json::json!(120));
    }
}
