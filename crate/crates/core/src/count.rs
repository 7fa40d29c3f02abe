//! Scalar abstraction for subsequence counts and a lazily grown Pascal table.
//!
//! Every counting routine in this crate is generic over [`Count`]. The exact
//! instantiation is [`BigCount`](crate::BigCount); fixed-width integers work
//! for small parameters (they panic on overflow in debug builds) and `f64`
//! gives fast approximations for plotting.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A nonnegative count: a commutative semiring with truncated subtraction
/// that is only ever used when the result is nonnegative.
pub trait Count:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + Send
    + Sync
    + 'static
{
}

impl<T> Count for T where
    T: Clone
        + Debug
        + Display
        + PartialOrd
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + AddAssign
        + Send
        + Sync
        + 'static
{
}

/// `1` if the predicate holds, `0` otherwise.
pub fn indicator<C: Count>(cond: bool) -> C {
    if cond {
        C::one()
    } else {
        C::zero()
    }
}

/// Pascal triangle grown on demand, one row at a time.
///
/// Out-of-range arguments (`a < 0`, `b < 0`, `b > a`) yield zero.
#[derive(Debug, Clone)]
pub struct BinomialTable<C> {
    rows: Vec<Vec<C>>,
}

impl<C: Count> Default for BinomialTable<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Count> BinomialTable<C> {
    pub fn new() -> Self {
        BinomialTable {
            rows: vec![vec![C::one()]],
        }
    }

    /// Number of rows currently materialised.
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    fn grow_to(&mut self, a: usize) {
        while self.rows.len() <= a {
            let prev = self.rows.last().expect("row 0 always present");
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(C::one());
            for w in prev.windows(2) {
                row.push(w[0].clone() + w[1].clone());
            }
            row.push(C::one());
            self.rows.push(row);
        }
    }

    /// `C(a, b)` with the zero convention outside `0 <= b <= a`.
    pub fn get(&mut self, a: i64, b: i64) -> C {
        if a < 0 || b < 0 || b > a {
            return C::zero();
        }
        let (a, b) = (a as usize, b as usize);
        self.grow_to(a);
        self.rows[a][b].clone()
    }

    /// Multinomial coefficient `(sum parts)! / prod(part!)`, built as a
    /// product of binomials so that no division is needed.
    pub fn multinomial(&mut self, parts: &[u64]) -> C {
        let mut acc = C::one();
        let mut total: i64 = 0;
        for &p in parts {
            total += p as i64;
            acc = acc * self.get(total, p as i64);
        }
        acc
    }
}

/// Binomial coefficient `C(a, b)`; zero when `a < 0`, `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(a as u64), BigUint::from(b as u64))
}
