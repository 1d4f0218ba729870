//! The Tribonacci sequence `T_0 = T_1 = 0`, `T_2 = 1`, `T_{n+3} = T_{n+2} + T_{n+1} + T_n`.
//!
//! A shared memoized table is the source of truth. [`trib_fast`] is an
//! independent matrix-power route kept for cross-checking and for one-off
//! large indices.

use std::cmp::Ordering;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::real::{cmp_alpha_power_with, Precision};

/// Index into the sequence.
pub type TribIndex = usize;

/// Memoized prefix of the sequence. Readers share the lock; extension takes
/// the write lock, so every reader observes a prefix of the sequential table.
#[derive(Debug)]
pub struct TribTable {
    values: RwLock<Vec<BigUint>>,
}

impl Default for TribTable {
    fn default() -> Self {
        Self::new()
    }
}

impl TribTable {
    pub fn new() -> Self {
        Self {
            values: RwLock::new(vec![BigUint::zero(), BigUint::zero(), BigUint::one()]),
        }
    }

    /// Highest index currently cached.
    pub fn high_water(&self) -> TribIndex {
        self.values.read().expect("table lock poisoned").len() - 1
    }

    pub fn extend_to(&self, n: TribIndex) {
        if self.high_water() >= n {
            return;
        }
        let mut values = self.values.write().expect("table lock poisoned");
        let missing = (n + 1).saturating_sub(values.len());
        values.reserve(missing);
        while values.len() <= n {
            let k = values.len();
            let next = &values[k - 1] + &values[k - 2] + &values[k - 3];
            values.push(next);
        }
    }

    pub fn get(&self, n: TribIndex) -> BigUint {
        self.extend_to(n);
        self.values.read().expect("table lock poisoned")[n].clone()
    }

    /// Runs `f` on the cached prefix `T_0..=T_n` without cloning it.
    pub fn with_prefix<R>(&self, n: TribIndex, f: impl FnOnce(&[BigUint]) -> R) -> R {
        self.extend_to(n);
        let values = self.values.read().expect("table lock poisoned");
        f(&values[..=n])
    }
}

fn global() -> &'static TribTable {
    static TABLE: OnceLock<TribTable> = OnceLock::new();
    TABLE.get_or_init(TribTable::new)
}

/// `T_n`, from the shared table.
pub fn trib(n: TribIndex) -> BigUint {
    global().get(n)
}

/// Runs `f` on `T_0..=T_n` from the shared table.
pub fn with_table<R>(n: TribIndex, f: impl FnOnce(&[BigUint]) -> R) -> R {
    global().with_prefix(n, f)
}

type Mat3 = [[BigUint; 3]; 3];

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(BigUint::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
    })
}

/// `T_n` by binary powering of the companion matrix. Independent of the table.
pub fn trib_fast(n: TribIndex) -> BigUint {
    let one = BigUint::one;
    let zero = BigUint::zero;
    let mut result: Mat3 = [
        [one(), zero(), zero()],
        [zero(), one(), zero()],
        [zero(), zero(), one()],
    ];
    let mut base: Mat3 = [
        [one(), one(), one()],
        [one(), zero(), zero()],
        [zero(), one(), zero()],
    ];
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    // M^n (T_2, T_1, T_0)^t = (T_{n+2}, T_{n+1}, T_n)^t and (T_2, T_1, T_0) = (1, 0, 0).
    result[2][0].clone()
}

/// Natural log estimate of a positive integer, good to a few ulps. Only used
/// to seed searches that are then decided exactly.
fn ln_estimate(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_f64().unwrap_or(f64::MAX).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Largest `k` with `alpha^k <= value`.
fn floor_log_alpha(value: &BigUint, precision: &Precision) -> Result<i64> {
    const LN_ALPHA: f64 = 0.609_377_863_436_006_3;
    let mut k = (ln_estimate(value) / LN_ALPHA).floor() as i64;
    while cmp_alpha_power_with(k, 1, value, precision)? == Ordering::Greater {
        k -= 1;
    }
    while cmp_alpha_power_with(k + 1, 1, value, precision)? != Ordering::Greater {
        k += 1;
    }
    Ok(k)
}

/// Index window `[lo, hi]` containing every `n >= 2` with `T_n = value`,
/// from `alpha^(n-3) <= T_n <= alpha^(n-2)`.
pub fn index_window(value: &BigUint) -> Result<(TribIndex, TribIndex)> {
    index_window_with(value, &Precision::default())
}

pub fn index_window_with(value: &BigUint, precision: &Precision) -> Result<(TribIndex, TribIndex)> {
    if value.is_zero() {
        return Err(Error::precondition("index_window needs a positive value"));
    }
    let k = floor_log_alpha(value, precision)?;
    // n - 3 <= log_alpha(N) gives n <= k + 3; n - 2 >= log_alpha(N) gives n >= k + 3
    // unless alpha^k = N exactly, which only happens for N = 1.
    let hi = k + 3;
    let exact = cmp_alpha_power_with(k, 1, value, precision)? == Ordering::Equal;
    let lo = if exact { k + 2 } else { k + 3 };
    Ok((lo as TribIndex, hi as TribIndex))
}

/// Smallest index `n` with `T_n = value`, if any.
pub fn is_tribonacci(value: &BigUint) -> Result<Option<TribIndex>> {
    is_tribonacci_with(value, &Precision::default())
}

pub fn is_tribonacci_with(value: &BigUint, precision: &Precision) -> Result<Option<TribIndex>> {
    if value.is_zero() {
        return Ok(Some(0));
    }
    if value.is_one() {
        return Ok(Some(2));
    }
    let (lo, hi) = index_window_with(value, precision)?;
    Ok((lo..=hi).find(|&n| trib(n) == *value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn initial_values() {
        assert_eq!(trib(0), big(0));
        assert_eq!(trib(1), big(0));
        assert_eq!(trib(2), big(1));
        assert_eq!(trib(3), big(1));
        assert_eq!(trib(4), big(2));
        assert_eq!(trib(10), big(81));
    }

    #[test]
    fn fast_path_matches_table() {
        for n in 0..300 {
            assert_eq!(trib_fast(n), trib(n), "n = {n}");
        }
    }

    #[test]
    fn fresh_table_is_independent_of_global() {
        let table = TribTable::new();
        assert_eq!(table.high_water(), 2);
        assert_eq!(table.get(20), big(35890));
        assert_eq!(table.high_water(), 20);
        table.with_prefix(5, |p| assert_eq!(p.len(), 6));
    }

    #[test]
    fn windows() {
        assert_eq!(index_window(&big(24)).unwrap(), (8, 8));
        assert_eq!(index_window(&big(1)).unwrap(), (2, 3));
        let (lo, hi) = index_window(&big(81)).unwrap();
        assert!(lo <= 10 && 10 <= hi);
        // non-members still get a window of at most one index
        let (lo, hi) = index_window(&big(25)).unwrap();
        assert!(hi - lo <= 2);
        assert!(index_window(&big(0)).is_err());
    }

    #[test]
    fn membership() {
        assert_eq!(is_tribonacci(&big(24)).unwrap(), Some(8));
        assert_eq!(is_tribonacci(&big(25)).unwrap(), None);
        assert_eq!(is_tribonacci(&big(0)).unwrap(), Some(0));
        assert_eq!(is_tribonacci(&big(1)).unwrap(), Some(2));
        assert_eq!(is_tribonacci(&big(2)).unwrap(), Some(4));
        assert_eq!(is_tribonacci(&big(3)).unwrap(), None);
    }

    #[test]
    fn concurrent_readers_agree() {
        let table = TribTable::new();
        std::thread::scope(|s| {
            for k in 0..4 {
                let table = &table;
                s.spawn(move || {
                    for n in (k * 50)..(k * 50 + 200) {
                        assert_eq!(table.get(n), trib_fast(n));
                    }
                });
            }
        });
    }
}
