//! Invariant suites behind `delball selftest` and the acceptance target.
//!
//! Every suite that needs ground-truth ball sizes takes a [`CountFn`], so a
//! deliberately broken counter can be plugged in as a negative control.

use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use delball_core::balanced::{BigEvaluator, MemoCounter};
use delball_core::bounds::{
    hirschberg_regnier_bounds, levenshtein_bounds, new_lower_bound, new_upper_bound, BoundColumn,
    CalabiHartnett,
};
use delball_core::exact::{count_exact, enumerate_ball, DEFAULT_ENUM_BUDGET};
use delball_core::ops::{
    apply_permutation, balance_step, balancing_profiles, cyclicize, insert_symbol, reduce_to_binary,
};
use delball_core::word::{balanced_prime_word, balanced_word, canonical_modulus, canonical_word};
use delball_core::{BigCount, Permutation, RunProfile, Word};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sweep::{Format, SweepSpec, TRange};

pub type CountFn = fn(&Word, i64) -> BigCount;

pub fn reference_count(word: &Word, t: i64) -> BigCount {
    count_exact(word, t)
}

/// The eleven strings of the worked balancing example with `|D_7|` of each.
pub const WORKED_CHAIN: [(&str, u64); 11] = [
    ("000000011022200000333333", 326),
    ("000000011233300000111111", 378),
    ("000000011233330000111111", 394),
    ("000000111200001111222222", 434),
    ("000001111200001111222222", 465),
    ("000001112200001111222222", 557),
    ("000011112200001111222222", 579),
    ("000011122200001111222222", 615),
    ("000011122200001111122222", 625),
    ("000011122220000111122222", 646),
    ("000011112222000011112222", 666),
];

const MAX_EXAMPLES: usize = 5;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub name: String,
    pub checks: u64,
    pub failures: u64,
    pub examples: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} checks, {} failures, {:.2?}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.failures,
            self.elapsed
        )?;
        for note in &self.notes {
            write!(f, "; {note}")?;
        }
        for ex in &self.examples {
            write!(f, "\n    {ex}")?;
        }
        Ok(())
    }
}

struct Tally {
    name: String,
    checks: u64,
    failures: u64,
    examples: Vec<String>,
    notes: Vec<String>,
    start: Instant,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            name: name.to_string(),
            checks: 0,
            failures: 0,
            examples: Vec::new(),
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn finish(self) -> Outcome {
        Outcome {
            name: self.name,
            checks: self.checks,
            failures: self.failures,
            examples: self.examples,
            notes: self.notes,
            elapsed: self.start.elapsed(),
        }
    }
}

fn random_word(rng: &mut ChaCha8Rng, min_len: usize, max_len: usize, max_q: u32) -> Word {
    let q = rng.gen_range(2..=max_q);
    let n = rng.gen_range(min_len..=max_len);
    Word::new((0..n).map(|_| rng.gen_range(0..q)).collect(), q).expect("symbols below q")
}

fn random_composition(rng: &mut ChaCha8Rng, n: usize, parts: usize) -> Vec<usize> {
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

fn word_with_runs(rng: &mut ChaCha8Rng, lengths: &[usize], q: u32) -> Word {
    let mut symbols = Vec::new();
    let mut prev = None;
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
    Word::new(symbols, q).expect("symbols below q")
}

fn all_words(q: u32, n: usize) -> impl Iterator<Item = Word> {
    (0..(q as usize).pow(n as u32)).map(move |mut code| {
        let symbols = (0..n)
            .map(|_| {
                let s = (code % q as usize) as u32;
                code /= q as usize;
                s
            })
            .collect();
        Word::new(symbols, q).expect("symbols below q")
    })
}

/// Ball size of the canonical word, with the empty profile and negative `t`
/// handled by convention.
fn canonical_ball(count: CountFn, lengths: &[usize], q: u32, t: i64) -> BigCount {
    if t < 0 {
        return BigCount::from(0u32);
    }
    if lengths.is_empty() {
        return BigCount::from((t == 0) as u32);
    }
    count(&canonical_word(lengths, q).expect("q >= 2"), t)
}

pub fn worked_chain(count: CountFn) -> Outcome {
    let mut tally = Tally::new("worked balancing example");
    for (text, expected) in WORKED_CHAIN {
        let word = Word::parse_inferred(text).expect("valid word");
        let got = count(&word, 7);
        tally.check(got == BigUint::from(expected), || {
            format!("|D_7({text})| = {got}, expected {expected}")
        });
    }
    tally.finish()
}

pub struct GridSpec {
    pub qs: std::ops::RangeInclusive<u32>,
    pub rs: std::ops::RangeInclusive<usize>,
    pub ks: std::ops::RangeInclusive<usize>,
}

pub fn balanced_grid(count: CountFn, grid: &GridSpec) -> Outcome {
    let mut tally = Tally::new("balanced closed form vs recursion vs exact");
    for q in grid.qs.clone() {
        for k in grid.ks.clone() {
            let mut ev = BigEvaluator::new(k, q).expect("k >= 1, q >= 2");
            for r in grid.rs.clone() {
                let b = balanced_word(r, k, q).expect("r, k >= 1");
                let bp = balanced_prime_word(r, k, q).expect("r, k >= 1");
                for t in 0..=(r * k) as i64 {
                    let (ri, e) = (r as i64, count(&b, t));
                    let (closed, rec) = (ev.b_closed(ri, t), ev.b_recursive(ri, t));
                    tally.check(closed == e && rec == e, || {
                        format!("b({r},{k},{t};{q}): closed {closed}, recursive {rec}, exact {e}")
                    });
                    let e = count(&bp, t);
                    let (closed, rec) = (ev.b_prime_closed(ri, t), ev.b_prime_recursive(ri, t));
                    tally.check(closed == e && rec == e, || {
                        format!("b'({r},{k},{t};{q}): closed {closed}, recursive {rec}, exact {e}")
                    });
                }
            }
        }
    }
    tally.finish()
}

pub fn named_value() -> Outcome {
    let mut tally = Tally::new("b(6,4,7;3) = 666");
    let mut ev = BigEvaluator::new(4, 3).expect("valid parameters");
    let closed = ev.b_closed(6, 7);
    let rec = ev.b_recursive(6, 7);
    let want = BigUint::from(666u32);
    tally.check(closed == want && rec == want, || {
        format!("closed {closed}, recursive {rec}")
    });
    tally.finish()
}

pub fn oracle_equivalence(
    count: CountFn,
    trials: usize,
    seed: u64,
    exhaustive_n: usize,
) -> Outcome {
    let mut tally = Tally::new("exact count vs enumeration");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let compare = |tally: &mut Tally, word: &Word, t: i64| {
        let got = count(word, t);
        let want = enumerate_ball(word, t, DEFAULT_ENUM_BUDGET)
            .expect("small word")
            .len();
        tally.check(got == BigUint::from(want), || {
            format!("|D_{t}({word})| = {got}, enumeration gives {want}")
        });
    };
    for _ in 0..trials {
        let word = random_word(&mut rng, 0, 10, 4);
        let t = rng.gen_range(0..=word.len() as i64);
        compare(&mut tally, &word, t);
    }
    for n in 0..=exhaustive_n {
        for word in all_words(2, n) {
            for t in 0..=n as i64 {
                compare(&mut tally, &word, t);
            }
        }
    }
    tally.finish()
}

pub fn insertion(count: CountFn, trials: usize, seed: u64) -> Outcome {
    let mut tally = Tally::new("insertion never shrinks the ball");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let word = random_word(&mut rng, 0, 11, 4);
        let pos = rng.gen_range(0..=word.len());
        let sym = rng.gen_range(0..word.alphabet_size());
        let longer = insert_symbol(&word, pos, sym).expect("valid insertion");
        for t in 0..=word.len() as i64 {
            let (a, b) = (count(&word, t), count(&longer, t));
            tally.check(a <= b, || format!("{word} ({a}) -> {longer} ({b}), t={t}"));
        }
    }
    tally.finish()
}

pub fn permutation(count: CountFn, trials: usize, seed: u64) -> Outcome {
    let mut tally = Tally::new("symbol permutation keeps the ball size");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let word = random_word(&mut rng, 0, 12, 4);
        let mut images: Vec<u32> = (0..word.alphabet_size()).collect();
        images.shuffle(&mut rng);
        let permuted = apply_permutation(&word, &Permutation::new(images).expect("bijection"))
            .expect("sizes match");
        for t in 0..=word.len() as i64 {
            let (a, b) = (count(&word, t), count(&permuted, t));
            tally.check(a == b, || {
                format!("{word} ({a}) vs {permuted} ({b}), t={t}")
            });
        }
    }
    tally.finish()
}

pub fn reduction(count: CountFn, trials: usize, seed: u64) -> Outcome {
    let mut tally = Tally::new("binary reduction never grows the ball");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let word = random_word(&mut rng, 0, 12, 4);
        let reduced = reduce_to_binary(&word);
        for t in 0..=word.len() as i64 {
            let (a, b) = (count(&reduced, t), count(&word, t));
            tally.check(a <= b, || format!("{word} ({b}) -> {reduced} ({a}), t={t}"));
        }
    }
    tally.finish()
}

pub fn cyclic(count: CountFn, trials: usize, seed: u64) -> Outcome {
    let mut tally = Tally::new("cyclic relabelling never shrinks the ball");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let word = random_word(&mut rng, 0, 12, 4);
        let relabelled = cyclicize(&word);
        for t in 0..=word.len() as i64 {
            let (a, b) = (count(&word, t), count(&relabelled, t));
            tally.check(a <= b, || {
                format!("{word} ({a}) -> {relabelled} ({b}), t={t}")
            });
        }
    }
    tally.finish()
}

pub fn reversal(count: CountFn, trials: usize, seed: u64) -> Outcome {
    let mut tally = Tally::new("reversed run lengths keep the ball size");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let q = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=12);
        let r = rng.gen_range(1..=n);
        let x = random_composition(&mut rng, n, r);
        let rev: Vec<usize> = x.iter().rev().copied().collect();
        for t in 0..=n as i64 {
            let (a, b) = (
                canonical_ball(count, &x, q, t),
                canonical_ball(count, &rev, q, t),
            );
            tally.check(a == b, || {
                format!("{x:?} ({a}) vs {rev:?} ({b}), q={q}, t={t}")
            });
        }
    }
    tally.finish()
}

/// Ball of a canonical word from the balls of its prefixes.
pub fn last_run_identity(count: CountFn, trials: usize, seed: u64) -> Outcome {
    let mut tally = Tally::new("last-run removal identity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let q = rng.gen_range(2..=4u32);
        let n = rng.gen_range(1..=12);
        let r = rng.gen_range(1..=n);
        let x = random_composition(&mut rng, n, r);
        let q1 = canonical_modulus(r, q);
        let t1: usize = x[r - q1..].iter().sum();
        let mut shortened = x.clone();
        shortened[r - 1] -= 1;
        if shortened[r - 1] == 0 {
            shortened.pop();
        }
        // run r - q1 carries the symbol of run r when r > q
        let repeat = (r > q1).then(|| {
            let mut sub = x[..r - q1].to_vec();
            *sub.last_mut().expect("nonempty") -= 1;
            if sub.last() == Some(&0) {
                sub.pop();
            }
            sub
        });
        for t in 0..=n as i64 {
            let lhs = canonical_ball(count, &x, q, t);
            let mut rhs = canonical_ball(count, &shortened, q, t)
                + canonical_ball(count, &x[..r - 1], q, t - x[r - 1] as i64);
            let sub = repeat
                .as_ref()
                .map(|s| canonical_ball(count, s, q, t - t1 as i64))
                .unwrap_or_default();
            let ok = rhs >= sub && {
                rhs -= &sub;
                lhs == rhs
            };
            tally.check(ok, || format!("x={x:?} q={q} t={t}: lhs {lhs}, rhs {rhs}"));
        }
    }
    tally.finish()
}

/// `b` split by the first run (distinct symbols) or the first symbol
/// (repeated symbols), evaluated on exact counts.
pub fn balanced_split_identity(count: CountFn, trials: usize, seed: u64) -> Outcome {
    let mut tally = Tally::new("balanced-word split identities");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = |r: usize, k: usize, q: u32, t: i64| -> BigCount {
        if r == 0 {
            return BigCount::from((t == 0) as u32);
        }
        count(&balanced_word(r, k, q).expect("valid"), t)
    };
    let bp = |r: i64, k: usize, q: u32, t: i64| -> BigCount {
        if r <= 0 || t < 0 {
            return BigCount::from(0u32);
        }
        count(&balanced_prime_word(r as usize, k, q).expect("valid"), t)
    };
    let mut distinct = 0;
    for _ in 0..trials {
        let q = rng.gen_range(2..=4u32);
        let k = rng.gen_range(1..=4usize);
        let r = rng.gen_range(1..=12 / k);
        distinct += (q as usize >= r) as usize;
        // at t = rk the only subsequence is empty and the q < r split does
        // not apply
        let top = if q as usize >= r { r * k } else { r * k - 1 };
        for t in 0..=top as i64 {
            let lhs = b(r, k, q, t);
            let rhs = if q as usize >= r {
                (0..=k as i64)
                    .map(|i| b(r - 1, k, q, t - k as i64 + i))
                    .sum()
            } else {
                let mut s = bp(r as i64, k, q, t);
                for i in 1..q as i64 {
                    s += bp(r as i64 - i, k, q, t - i * k as i64);
                }
                s
            };
            tally.check(lhs == rhs, || {
                format!("r={r} k={k} q={q} t={t}: {lhs} vs {rhs}")
            });
        }
    }
    tally.note(format!("{distinct} trials with q >= r"));
    tally.finish()
}

/// `[y.., x_p, palindrome, x_s, z..]` with `|x_p - x_s| >= 2`.
fn balanceable(rng: &mut ChaCha8Rng, leading: bool, trailing: bool) -> (Vec<usize>, usize, usize) {
    let lead = if leading { rng.gen_range(1..=2) } else { 0 };
    let trail = if trailing { rng.gen_range(1..=2) } else { 0 };
    let mut inner: Vec<usize> = (0..rng.gen_range(0..=1))
        .map(|_| rng.gen_range(1..=2))
        .collect();
    let mirror: Vec<usize> = inner.iter().rev().copied().collect();
    if rng.gen_bool(0.5) {
        inner.push(rng.gen_range(1..=2));
    }
    inner.extend(mirror);
    let small = rng.gen_range(1..=2);
    let large = small + rng.gen_range(2..=3);
    let (xp, xs) = if rng.gen_bool(0.5) {
        (small, large)
    } else {
        (large, small)
    };
    let mut x: Vec<usize> = (0..lead).map(|_| rng.gen_range(1..=2)).collect();
    let p = x.len();
    x.push(xp);
    x.extend(inner);
    let s = x.len();
    x.push(xs);
    x.extend((0..trail).map(|_| rng.gen_range(1..=2)));
    (x, p, s)
}

pub fn balance_steps(count: CountFn, trials: usize, seed: u64) -> Outcome {
    let mut tally = Tally::new("balance step never shrinks the ball");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_case = [0usize; 4];
    let mut done = 0;
    while done < trials {
        let case = done % 4;
        let (x, p, s) = balanceable(&mut rng, case & 1 == 1, case & 2 == 2);
        if x.iter().sum::<usize>() > 12 {
            continue;
        }
        done += 1;
        per_case[case] += 1;
        let q = rng.gen_range(2..=4);
        let before = RunProfile::canonical(x, q).expect("q >= 2");
        let after = balance_step(&before, p, s).expect("preconditions hold by construction");
        let (bw, aw) = (before.to_word(), after.to_word());
        for t in 0..=bw.len() as i64 {
            let (a, b) = (count(&bw, t), count(&aw, t));
            tally.check(a <= b, || format!("{before} ({a}) -> {after} ({b}), t={t}"));
        }
    }
    tally.note(format!(
        "bare/leading/trailing/both = {}/{}/{}/{}",
        per_case[0], per_case[1], per_case[2], per_case[3]
    ));
    tally.finish()
}

pub fn deletion_composition(trials: usize, seed: u64) -> Outcome {
    let mut tally = Tally::new("deleting t then t' stays inside D_{t+t'}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let word = random_word(&mut rng, 0, 8, 3);
        let t = rng.gen_range(0..=word.len() as i64);
        let t2 = rng.gen_range(0..=word.len() as i64 - t);
        let outer = enumerate_ball(&word, t + t2, DEFAULT_ENUM_BUDGET).expect("small word");
        for v in enumerate_ball(&word, t, DEFAULT_ENUM_BUDGET).expect("small word") {
            for w in enumerate_ball(&v, t2, DEFAULT_ENUM_BUDGET).expect("small word") {
                tally.check(outer.contains(&w), || format!("{w} from {v} from {word}"));
            }
        }
    }
    tally.finish()
}

/// Every property suite at one size.
pub fn property_suites(count: CountFn, trials: usize, seed: u64) -> Vec<Outcome> {
    vec![
        insertion(count, trials, seed),
        permutation(count, trials, seed + 1),
        reduction(count, trials, seed + 2),
        cyclic(count, trials, seed + 3),
        reversal(count, trials, seed + 4),
        last_run_identity(count, trials, seed + 5),
        balanced_split_identity(count, trials, seed + 6),
        balance_steps(count, trials, seed + 7),
        deletion_composition(trials / 3 + 1, seed + 8),
    ]
}

pub fn sandwich(count: CountFn, trials: usize, seed: u64, exhaustive_n: usize) -> Outcome {
    let mut tally = Tally::new("every bound holds");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ch: Vec<CalabiHartnett> = (0..=4)
        .map(|q| CalabiHartnett::new(q.max(1)).expect("q >= 1"))
        .collect();
    let mut check_word = |tally: &mut Tally, word: &Word| {
        let q = word.alphabet_size();
        let (n, r) = (word.len() as i64, word.run_count() as i64);
        for t in 0..=n {
            let e = count(word, t);
            let (ll, lu) = levenshtein_bounds(r, t);
            let (hl, hu) = hirschberg_regnier_bounds(q, n, r, t).expect("q >= 2, r <= n");
            let chu = ch[q as usize].get(n, t);
            let nl = new_lower_bound(n, r, t).expect("1 <= r <= n");
            let nu = new_upper_bound(q, n, r, t).expect("1 <= r <= n");
            for (name, ok) in [
                ("levenshtein", ll <= e && e <= lu),
                ("hirschberg-regnier", hl <= e && e <= hu),
                ("levenshtein below hirschberg-regnier", ll <= hl),
                ("calabi-hartnett", e <= chu),
                ("new", nl <= e && e <= nu),
            ] {
                tally.check(ok, || format!("{name}: {word} t={t} exact {e}"));
            }
        }
    };
    for _ in 0..trials {
        let word = random_word(&mut rng, 1, 12, 4);
        check_word(&mut tally, &word);
    }
    for n in 1..=exhaustive_n {
        for word in all_words(2, n) {
            check_word(&mut tally, &word);
        }
    }
    tally.finish()
}

pub fn chains(count: CountFn, trials: usize, seed: u64) -> Outcome {
    let mut tally = Tally::new("balancing chains");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = 0;
    for _ in 0..trials {
        let q = rng.gen_range(2..=4u32);
        let r = rng.gen_range(1..=8usize);
        let k = rng.gen_range(1..=24 / r);
        let x = random_composition(&mut rng, r * k, r);
        let word = word_with_runs(&mut rng, &x, q);
        let t = rng.gen_range(0..=(r * k) as i64);
        let profiles = balancing_profiles(&word).expect("r divides n");
        steps += profiles.len();
        let sizes: Vec<BigCount> = profiles.iter().map(|p| count(&p.to_word(), t)).collect();
        for (i, pair) in sizes.windows(2).enumerate() {
            tally.check(pair[0] <= pair[1], || {
                format!(
                    "{word} t={t}: step {i} -> {} shrinks {} -> {}",
                    i + 1,
                    pair[0],
                    pair[1]
                )
            });
        }
        for pair in profiles[1..].windows(2) {
            tally.check(pair[0].sum_of_squares() > pair[1].sum_of_squares(), || {
                format!("{word}: sum of squares {} -> {}", pair[0], pair[1])
            });
        }
        let last = sizes.last().expect("at least two steps");
        let b = BigEvaluator::new(k, q)
            .expect("valid")
            .b_recursive(r as i64, t);
        tally.check(*last == b, || {
            format!("{word} t={t}: chain ends at {last}, b = {b}")
        });
    }
    tally.note(format!("{steps} chain steps"));
    tally.finish()
}

pub fn upper_bound_sweep_spec(output: Option<PathBuf>) -> SweepSpec {
    SweepSpec {
        q: 3,
        n: 120,
        r: 24,
        t_range: TRange { start: 1, end: 119 },
        columns: vec![
            BoundColumn::LevUpper,
            BoundColumn::HrUpper,
            BoundColumn::NewUpper,
        ],
        output,
        format: Format::Csv,
    }
}

pub struct UpperBoundSweep {
    pub outcome: Outcome,
    pub csv: String,
    pub memo: MemoCounter,
    /// Wall time of the first sweep alone.
    pub sweep_time: Duration,
}

/// Runs the `q = 3, n = 120, r = 24` sweep twice and checks the ordering of
/// the upper bounds and that both runs produce identical bytes.
pub fn upper_bound_sweep(output: Option<PathBuf>) -> UpperBoundSweep {
    let mut tally = Tally::new("upper-bound sweep q=3 n=120 r=24");
    let spec = upper_bound_sweep_spec(output);
    let start = Instant::now();
    let first = spec.run();
    let sweep_time = start.elapsed();
    let second = upper_bound_sweep_spec(None).run();
    let (first, second) = match (first, second) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            tally.check(false, || format!("sweep failed: {e}"));
            return UpperBoundSweep {
                outcome: tally.finish(),
                csv: String::new(),
                memo: MemoCounter::default(),
                sweep_time,
            };
        }
    };
    for rep in &first.reports {
        tally.check(
            rep.new_upper <= rep.hr_upper && rep.new_upper <= rep.lev_upper,
            || {
                format!(
                    "t={}: new_upper {} hr_upper {} lev_upper {}",
                    rep.t, rep.new_upper, rep.hr_upper, rep.lev_upper
                )
            },
        );
    }
    tally.check(first.reports.len() == 119, || {
        format!("{} rows", first.reports.len())
    });
    tally.check(first.text == second.text, || {
        "two sweeps produced different bytes".into()
    });
    tally.note(format!("memo hit rate {:.4}", first.memo.hit_rate()));
    UpperBoundSweep {
        outcome: tally.finish(),
        csv: first.text,
        memo: first.memo,
        sweep_time,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Small,
    Full,
}

impl std::str::FromStr for Scale {
    type Err = crate::error::CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "small" => Ok(Scale::Small),
            "full" => Ok(Scale::Full),
            _ => Err(crate::error::CliError::Input(format!(
                "unknown scale {s:?}, expected small or full"
            ))),
        }
    }
}

pub fn selftest(scale: Scale, count: CountFn) -> Vec<Outcome> {
    let seed = 0x5eed;
    let (trials, grid, exhaustive) = match scale {
        Scale::Small => (
            100,
            GridSpec {
                qs: 2..=4,
                rs: 1..=6,
                ks: 1..=3,
            },
            6,
        ),
        Scale::Full => (
            300,
            GridSpec {
                qs: 2..=5,
                rs: 1..=8,
                ks: 1..=4,
            },
            8,
        ),
    };
    let mut out = vec![
        worked_chain(count),
        named_value(),
        balanced_grid(count, &grid),
        oracle_equivalence(count, trials * 3, seed, exhaustive),
    ];
    out.extend(property_suites(count, trials, seed + 10));
    out.push(sandwich(count, trials * 3, seed + 20, exhaustive));
    out.push(chains(count, trials, seed + 30));
    if scale == Scale::Full {
        out.push(upper_bound_sweep(None).outcome);
    }
    out
}
