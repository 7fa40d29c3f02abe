//! Ball sizes of balanced words `B_{r,k;q}` and their one-shorter variants
//! `B'_{r,k;q}`, by recursion and by closed form.
//!
//! Notation used throughout: `b(r, t) = |D_t(B_{r,k;q})|` and
//! `b'(r, t) = |D_t(B'_{r,k;q})|` with `k` and `q` fixed per evaluator.
//!
//! The closed form counts ordered selections of decrement tuples from the
//! [`TupleAlphabet`] `{(q, (q-1)k)} ∪ {(i, (i-1)k + j) : 1 <= i < q, 0 <= j < k}`.
//! A selection is summarised by a [`WSolution`]: for every first coordinate
//! `i < q`, how many tuples `z_i` were taken and the total `v_i` of their
//! second coordinates.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::count::{indicator, BinomialTable, Count};
use crate::error::{Error, Result};

/// Parameters of a balanced-word ball query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BalancedParams {
    pub r: i64,
    pub k: usize,
    pub q: u32,
    pub t: i64,
}

impl BalancedParams {
    pub fn new(r: i64, k: usize, q: u32, t: i64) -> Result<Self> {
        check_kq(k, q)?;
        if r < 0 {
            return Err(Error::OutOfRange(format!("run count {r} is negative")));
        }
        Ok(BalancedParams { r, k, q, t })
    }

    pub fn b(&self) -> BigUint {
        BalancedEvaluator::new(self.k, self.q)
            .expect("validated")
            .b_closed(self.r, self.t)
    }

    pub fn b_prime(&self) -> BigUint {
        BalancedEvaluator::new(self.k, self.q)
            .expect("validated")
            .b_prime_closed(self.r, self.t)
    }
}

fn check_kq(k: usize, q: u32) -> Result<()> {
    if k < 1 {
        return Err(Error::OutOfRange("run length k must be at least 1".into()));
    }
    if q < 2 {
        return Err(Error::AlphabetSize(q));
    }
    Ok(())
}

/// The decrement tuples `(r_j, t_j)` one expansion step of `b'` may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleAlphabet {
    q: u32,
    k: usize,
}

impl TupleAlphabet {
    pub fn new(q: u32, k: usize) -> Result<Self> {
        check_kq(k, q)?;
        Ok(TupleAlphabet { q, k })
    }

    /// `(q, (q-1)k)` first, then `(i, (i-1)k + j)` in lexicographic order.
    pub fn tuples(&self) -> Vec<(i64, i64)> {
        let (q, k) = (self.q as i64, self.k as i64);
        let mut out = vec![(q, (q - 1) * k)];
        for i in 1..q {
            for j in 0..k {
                out.push((i, (i - 1) * k + j));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        (self.q as usize - 1) * self.k + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// One element `((z_1, v_1), .., (z_{q-1}, v_{q-1}))` of the index set `W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WSolution {
    pub pairs: Vec<(u64, u64)>,
}

impl WSolution {
    pub fn z_total(&self) -> u64 {
        self.pairs.iter().map(|&(z, _)| z).sum()
    }

    /// Checks every defining constraint of `W_{q,k,dr,dt}`.
    pub fn satisfies(&self, q: u32, k: usize, dr: i64, dt: i64) -> bool {
        if self.pairs.len() + 1 != q as usize {
            return false;
        }
        let k = k as u64;
        let mut weighted = 0u64;
        let mut v_total = 0u64;
        for (idx, &(z, v)) in self.pairs.iter().enumerate() {
            let i = idx as u64 + 1;
            if v < (i - 1) * k * z || v > (i * k - 1) * z {
                return false;
            }
            weighted += i * z;
            v_total += v;
        }
        dr >= 0 && dt >= 0 && weighted == dr as u64 && v_total == dt as u64
    }
}

/// Enumerates `W_{q,k,dr,dt}` in two stages.
///
/// Stage one lists every `Z = (z_1..z_{q-1})` with `sum i*z_i = dr` and
/// `sum z_i = x` for each `x` in `[ceil((k*dr - dt)/k), k*dr - dt]`; stage two
/// lists the `V` compatible with each `Z` under the per-index bands
/// `(i-1)k z_i <= v_i <= (ik-1) z_i`.
pub fn enumerate_w(q: u32, k: usize, dr: i64, dt: i64) -> Vec<WSolution> {
    let mut out = Vec::new();
    if q < 2 || k < 1 || dr < 0 || dt < 0 {
        return out;
    }
    let kk = k as i64;
    let hi = kk * dr - dt;
    if hi < 0 {
        return out;
    }
    let lo = (hi + kk - 1) / kk;
    let width = q as usize - 1;
    for x in lo.max(0)..=hi.min(dr) {
        let mut z = vec![0u64; width];
        let mut zs = Vec::new();
        weighted_compositions(width, dr, x, &mut z, &mut zs);
        for z in zs {
            let bands: Vec<(u64, u64)> = z
                .iter()
                .enumerate()
                .map(|(idx, &zi)| {
                    let i = idx as u64 + 1;
                    ((i - 1) * k as u64 * zi, (i * k as u64 - 1) * zi)
                })
                .collect();
            let mut v = vec![0u64; width];
            banded_sums(&bands, 0, dt as u64, &mut v, &mut |v| {
                out.push(WSolution {
                    pairs: z.iter().copied().zip(v.iter().copied()).collect(),
                })
            });
        }
    }
    out
}

/// All `z` of length `width` with `sum (i+1) z_i = weight` and `sum z_i = count`.
fn weighted_compositions(
    width: usize,
    weight: i64,
    count: i64,
    z: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    fn go(idx: usize, weight: i64, count: i64, z: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        // idx counts down; coefficient of z[idx] is idx + 1
        if idx == 0 {
            if weight == count && weight >= 0 {
                z[0] = weight as u64;
                out.push(z.clone());
            }
            return;
        }
        let coef = idx as i64 + 1;
        // the remaining indices contribute at most coef - 1 per unit of count
        let mut zi = 0;
        while zi * coef <= weight && zi <= count {
            let (w, c) = (weight - zi * coef, count - zi);
            if c <= w && w <= c * (coef - 1) || (w == 0 && c == 0) {
                z[idx] = zi as u64;
                go(idx - 1, w, c, z, out);
            }
            zi += 1;
        }
        z[idx] = 0;
    }
    if width == 0 {
        return;
    }
    go(width - 1, weight, count, z, out);
}

/// Calls `emit` for every `v` with `bands[i].0 <= v_i <= bands[i].1` and
/// `sum v_i = total`.
fn banded_sums(
    bands: &[(u64, u64)],
    idx: usize,
    total: u64,
    v: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]),
) {
    if idx == bands.len() {
        if total == 0 {
            emit(v);
        }
        return;
    }
    let rest_min: u64 = bands[idx + 1..].iter().map(|b| b.0).sum();
    let rest_max: u64 = bands[idx + 1..].iter().map(|b| b.1).sum();
    let (lo, hi) = bands[idx];
    for vi in lo..=hi.min(total) {
        let left = total - vi;
        if left < rest_min {
            break;
        }
        if left > rest_max {
            continue;
        }
        v[idx] = vi;
        banded_sums(bands, idx + 1, left, v, emit);
    }
}

/// Hit/miss counters for one memo table.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct MemoCounter {
    pub hits: u64,
    pub misses: u64,
}

impl MemoCounter {
    pub fn hit_rate(&self) -> f64 {
        let total = self.hits + self.misses;
        if total == 0 {
            0.0
        } else {
            self.hits as f64 / total as f64
        }
    }

    fn merge(&mut self, other: MemoCounter) {
        self.hits += other.hits;
        self.misses += other.misses;
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EvaluatorStats {
    pub b: MemoCounter,
    pub b_prime_recursive: MemoCounter,
    pub b_prime_closed: MemoCounter,
    pub q_count: MemoCounter,
    pub p0: MemoCounter,
}

impl EvaluatorStats {
    pub fn total(&self) -> MemoCounter {
        let mut t = MemoCounter::default();
        for c in [
            self.b,
            self.b_prime_recursive,
            self.b_prime_closed,
            self.q_count,
            self.p0,
        ] {
            t.merge(c);
        }
        t
    }
}

struct Memo<C> {
    table: HashMap<(i64, i64), C>,
    counter: MemoCounter,
}

impl<C: Clone> Memo<C> {
    fn new() -> Self {
        Memo {
            table: HashMap::new(),
            counter: MemoCounter::default(),
        }
    }

    fn get(&mut self, key: (i64, i64)) -> Option<C> {
        let hit = self.table.get(&key).cloned();
        if hit.is_some() {
            self.counter.hits += 1;
        } else {
            self.counter.misses += 1;
        }
        hit
    }

    fn put(&mut self, key: (i64, i64), value: C) -> C {
        self.table.insert(key, value.clone());
        value
    }
}

/// Evaluates `b`, `b'` and the counting functions behind the closed form for
/// one `(k, q)`, memoising every intermediate value.
///
/// The recursive and closed routes keep separate memo tables; they share
/// only the `b` recursion used when `q >= r`.
pub struct BalancedEvaluator<C> {
    k: usize,
    q: u32,
    binom: BinomialTable<C>,
    b_memo: Memo<C>,
    bp_rec_memo: Memo<C>,
    bp_closed_memo: Memo<C>,
    q_memo: Memo<C>,
    p0_memo: Memo<C>,
}

impl<C: Count> BalancedEvaluator<C> {
    pub fn new(k: usize, q: u32) -> Result<Self> {
        check_kq(k, q)?;
        Ok(BalancedEvaluator {
            k,
            q,
            binom: BinomialTable::new(),
            b_memo: Memo::new(),
            bp_rec_memo: Memo::new(),
            bp_closed_memo: Memo::new(),
            q_memo: Memo::new(),
            p0_memo: Memo::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn stats(&self) -> EvaluatorStats {
        EvaluatorStats {
            b: self.b_memo.counter,
            b_prime_recursive: self.bp_rec_memo.counter,
            b_prime_closed: self.bp_closed_memo.counter,
            q_count: self.q_memo.counter,
            p0: self.p0_memo.counter,
        }
    }

    fn kk(&self) -> i64 {
        self.k as i64
    }

    fn qq(&self) -> i64 {
        self.q as i64
    }

    /// `b(r, t)` by recursion: summing over deletions from the last run when
    /// all runs carry distinct symbols (`q >= r`), otherwise splitting on
    /// the first symbol of the subsequence into `b'` terms.
    pub fn b_recursive(&mut self, r: i64, t: i64) -> C {
        let k = self.kk();
        if r < 0 || t < 0 || t > k * r {
            return C::zero();
        }
        if r == 0 {
            return indicator(t == 0);
        }
        if self.qq() >= r {
            return self.b_distinct_runs(r, t);
        }
        if t == k * r {
            return C::one();
        }
        let mut total = self.b_prime_recursive(r, t);
        for i in 1..self.qq() {
            total += self.b_prime_recursive(r - i, t - i * k);
        }
        total
    }

    /// `b(r, t) = sum_{i=0..k} b(r-1, t-i)`, valid while `q >= r`.
    fn b_distinct_runs(&mut self, r: i64, t: i64) -> C {
        let k = self.kk();
        if r < 0 || t < 0 || t > k * r {
            return C::zero();
        }
        if r == 0 {
            return indicator(t == 0);
        }
        if let Some(v) = self.b_memo.get((r, t)) {
            return v;
        }
        let mut total = C::zero();
        for i in 0..=k {
            total += self.b_distinct_runs(r - 1, t - i);
        }
        self.b_memo.put((r, t), total)
    }

    /// `b'(r, t)` by its three-case recursion.
    pub fn b_prime_recursive(&mut self, r: i64, t: i64) -> C {
        let k = self.kk();
        let q = self.qq();
        if r <= 0 || t < 0 || t >= k * r {
            return C::zero();
        }
        if let Some(v) = self.bp_rec_memo.get((r, t)) {
            return v;
        }
        let mut total = C::zero();
        for i in 1..k {
            for j in 1..q {
                total += self.b_prime_recursive(r - j, t - j * k + i);
            }
        }
        if t >= k * (r - 1) {
            total += C::one();
        } else {
            for j in 0..q {
                total += self.b_prime_recursive(r - 1 - j, t - j * k);
            }
        }
        self.bp_rec_memo.put((r, t), total)
    }

    /// Number of ordered compositions of `dt` into `dr` parts, each in
    /// `[0, k-1]`, by inclusion-exclusion.
    pub fn p0(&mut self, dr: i64, dt: i64) -> C {
        if dr < 0 || dt < 0 {
            return C::zero();
        }
        if dr == 0 {
            return indicator(dt == 0);
        }
        if let Some(v) = self.p0_memo.get((dr, dt)) {
            return v;
        }
        let k = self.kk();
        let mut plus = C::zero();
        let mut minus = C::zero();
        for i in 0..=dt / k {
            let term = self.binom.get(dr, i) * self.binom.get(dr + dt - i * k - 1, dr - 1);
            if i % 2 == 0 {
                plus += term;
            } else {
                minus += term;
            }
        }
        self.p0_memo.put((dr, dt), plus - minus)
    }

    /// Sum over `W_{q,k,dr,dt}` of the interleavings of `l` extra
    /// `(q, (q-1)k)` tuples with the others.
    fn w_sum(&mut self, dr: i64, dt: i64, l: i64) -> C {
        let k = self.k;
        let mut total = C::zero();
        for w in enumerate_w(self.q, k, dr, dt) {
            let zs: Vec<u64> = w.pairs.iter().map(|&(z, _)| z).collect();
            let z_total: u64 = zs.iter().sum();
            let mut term = self.binom.get(l + z_total as i64, l) * self.binom.multinomial(&zs);
            for (idx, &(z, v)) in w.pairs.iter().enumerate() {
                let shift = idx as u64 * k as u64 * z;
                term = term * self.p0(z as i64, v as i64 - shift as i64);
            }
            total += term;
        }
        total
    }

    /// Ordered selections summing to `(dr, dt)` that avoid `(q, (q-1)k)`.
    pub fn q0(&mut self, dr: i64, dt: i64) -> C {
        if dr < 0 || dt < 0 {
            return C::zero();
        }
        self.w_sum(dr, dt, 0)
    }

    /// Ordered selections from the tuple alphabet summing to `(dr, dt)`.
    pub fn q_count(&mut self, dr: i64, dt: i64) -> C {
        if dr < 0 || dt < 0 {
            return C::zero();
        }
        if let Some(v) = self.q_memo.get((dr, dt)) {
            return v;
        }
        let (q, k) = (self.qq(), self.kk());
        let mut total = C::zero();
        let mut l = 0;
        while l * (q - 1) * k <= dt && l * q <= dr {
            total += self.w_sum(dr - q * l, dt - (q - 1) * k * l, l);
            l += 1;
        }
        self.q_memo.put((dr, dt), total)
    }

    /// `b'(r, t) = sum_{j=0..t} #Q(r - floor(j/k) - 1, t - j)`.
    pub fn b_prime_closed(&mut self, r: i64, t: i64) -> C {
        let k = self.kk();
        if r < 1 || t < 0 || t > k * r - 1 {
            return C::zero();
        }
        if let Some(v) = self.bp_closed_memo.get((r, t)) {
            return v;
        }
        let mut total = C::zero();
        for j in 0..=t {
            total += self.q_count(r - j / k - 1, t - j);
        }
        self.bp_closed_memo.put((r, t), total)
    }

    /// `b(r, t)` via the closed form of `b'` when `q < r`; the distinct-run
    /// recursion otherwise.
    pub fn b_closed(&mut self, r: i64, t: i64) -> C {
        let k = self.kk();
        if r < 0 || t < 0 || t > k * r {
            return C::zero();
        }
        if self.qq() >= r {
            return self.b_distinct_runs(r, t);
        }
        if t == k * r {
            return C::one();
        }
        let mut total = self.b_prime_closed(r, t);
        for i in 1..self.qq() {
            total += self.b_prime_closed(r - i, t - i * k);
        }
        total
    }
}

pub type BigEvaluator = BalancedEvaluator<BigUint>;

pub fn b_recursive(r: usize, k: usize, t: i64, q: u32) -> Result<BigUint> {
    Ok(BigEvaluator::new(k, q)?.b_recursive(r as i64, t))
}

pub fn b_prime_recursive(r: usize, k: usize, t: i64, q: u32) -> Result<BigUint> {
    Ok(BigEvaluator::new(k, q)?.b_prime_recursive(r as i64, t))
}

pub fn b_closed(r: usize, k: usize, t: i64, q: u32) -> Result<BigUint> {
    Ok(BigEvaluator::new(k, q)?.b_closed(r as i64, t))
}

pub fn b_prime_closed(r: usize, k: usize, t: i64, q: u32) -> Result<BigUint> {
    Ok(BigEvaluator::new(k, q)?.b_prime_closed(r as i64, t))
}

/// Bounded compositions; the alphabet size does not enter, so any `q >= 2`
/// evaluator will do.
pub fn p0(dr: i64, dt: i64, k: usize) -> Result<BigUint> {
    Ok(BigEvaluator::new(k, 2)?.p0(dr, dt))
}

pub fn q0(q: u32, k: usize, dr: i64, dt: i64) -> Result<BigUint> {
    Ok(BigEvaluator::new(k, q)?.q0(dr, dt))
}

pub fn q_count(q: u32, k: usize, dr: i64, dt: i64) -> Result<BigUint> {
    Ok(BigEvaluator::new(k, q)?.q_count(dr, dt))
}
