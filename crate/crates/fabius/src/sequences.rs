//! The coefficient sequences behind dyadic Fabius values.
//!
//! Five sequences are maintained:
//! - `c_n`: rationals with `c_0 = 1` and
//!   `(2n+1)(2^{2n}-1) c_n = sum_{k<n} C(2n+1,2k) c_k`;
//! - `F_n = c_n (2n+1)!! prod_{v=1..n} (2^{2v}-1)`, integers computed by
//!   their own integer recurrence and cross-checked against the product;
//! - `d_n`: rationals with `d_0 = 1` and
//!   `(n+1)(2^n-1) d_n = sum_{k<n} C(n+1,k) d_k`;
//! - `G_n = d_n (n+1)! prod_{k=1..n} (2^k-1)`, integers;
//! - `R_n = 2 d_n (2n-1)!! prod_{k=1..floor(n/2)} (2^{2k}-1)`, integers,
//!   re-derived through `2^{C(n-1,2)} (2n)! F(2^{-n}) prod (2^{2k}-1)`
//!   as a second route that must agree exactly.
//!
//! A second, fully independent pair of routes computes `c` and `d` from
//! Bernoulli numbers; the standard and Bernoulli paths share no
//! intermediate results and serve as mutual oracles.

use std::collections::BTreeMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{
    binomial, choose_two, double_factorial, exact_div, factorial, pow2, pow2_int, ratio,
    BernoulliCache, ExactRational,
};
use crate::denominators::DenominatorRow;
use crate::error::Error;
use crate::Result;

/// One growing sequence of reduced rationals together with the running
/// scale that clears its denominators: entry `n` of `scale` is the
/// product the recurrence guarantees to absorb the denominator of
/// entry `n` of `values`.
struct ScaledSeq {
    values: Vec<ExactRational>,
    scale: Vec<BigInt>,
}

impl ScaledSeq {
    fn unit() -> Self {
        ScaledSeq {
            values: vec![ExactRational::one()],
            scale: vec![BigInt::one()],
        }
    }
}

/// Memoized prefixes of every sequence, plus the Bernoulli numbers and
/// the per-level denominator rows. Growth takes a write lock; computed
/// prefixes are read concurrently, so a frozen cache can be shared
/// across threads.
pub struct SequenceCache {
    c: RwLock<ScaledSeq>,
    d: RwLock<ScaledSeq>,
    f_int: RwLock<Vec<BigInt>>,
    g_int: RwLock<Vec<BigInt>>,
    r_int: RwLock<Vec<BigInt>>,
    bernoulli: BernoulliCache,
    denominator_rows: RwLock<BTreeMap<u32, DenominatorRow>>,
}

impl SequenceCache {
    pub fn new() -> Self {
        SequenceCache {
            c: RwLock::new(ScaledSeq::unit()),
            d: RwLock::new(ScaledSeq::unit()),
            f_int: RwLock::new(vec![BigInt::one()]),
            g_int: RwLock::new(vec![BigInt::one()]),
            r_int: RwLock::new(Vec::new()),
            bernoulli: BernoulliCache::new(),
            denominator_rows: RwLock::new(BTreeMap::new()),
        }
    }

    /// The shared Bernoulli cache.
    pub fn bernoulli(&self) -> &BernoulliCache {
        &self.bernoulli
    }

    /// Grow the `c` sequence to index `n_max`.
    ///
    /// The recurrence is evaluated over the common denominator
    /// `scale[n-1] = (2n-1)!! prod_{v<n} (2^{2v}-1)`: every earlier
    /// reduced denominator divides it by construction, so each term is
    /// an exact integer and only the final value needs one reduction.
    fn ensure_c(&self, n_max: usize) {
        if self.c.read().unwrap().values.len() > n_max {
            return;
        }
        let mut state = self.c.write().unwrap();
        while state.values.len() <= n_max {
            let m = state.values.len();
            let prev_scale = state.scale[m - 1].clone();
            let mut sum = BigInt::zero();
            for (k, value) in state.values.iter().enumerate() {
                let cleared = value.numer()
                    * exact_div(&prev_scale, value.denom())
                        .expect("reduced denominator divides the running scale");
                sum += binomial(2 * m as u64 + 1, 2 * k as u64) * cleared;
            }
            let step = BigInt::from(2 * m as u64 + 1) * (pow2_int(2 * m as u64) - BigInt::one());
            let scale = prev_scale * step;
            state.values.push(ratio(sum, scale.clone()));
            state.scale.push(scale);
        }
    }

    /// Grow the `d` sequence to index `n_max`; same layout as `ensure_c`
    /// with scale `(n+1)! prod_{k<=n} (2^k-1)`.
    fn ensure_d(&self, n_max: usize) {
        if self.d.read().unwrap().values.len() > n_max {
            return;
        }
        let mut state = self.d.write().unwrap();
        while state.values.len() <= n_max {
            let m = state.values.len();
            let prev_scale = state.scale[m - 1].clone();
            let mut sum = BigInt::zero();
            for (k, value) in state.values.iter().enumerate() {
                let cleared = value.numer()
                    * exact_div(&prev_scale, value.denom())
                        .expect("reduced denominator divides the running scale");
                sum += binomial(m as u64 + 1, k as u64) * cleared;
            }
            let step = BigInt::from(m as u64 + 1) * (pow2_int(m as u64) - BigInt::one());
            let scale = prev_scale * step;
            state.values.push(ratio(sum, scale.clone()));
            state.scale.push(scale);
        }
    }

    /// Grow the integer sequence `F` by its own recurrence
    /// `F_n = sum_{k<n} C(2n+1,2k) F_k (2n-1)!!/(2k+1)!! prod_{v=k+1..n-1} (2^{2v}-1)`
    /// (the inner ratio accumulated as a downward-running integer
    /// multiplier), then cross-check each new entry against the product
    /// formula through `c_n`.
    fn ensure_f(&self, n_max: usize) -> Result<()> {
        if self.f_int.read().unwrap().len() > n_max {
            return Ok(());
        }
        self.ensure_c(n_max);
        let c_state = self.c.read().unwrap();
        let mut f = self.f_int.write().unwrap();
        while f.len() <= n_max {
            let m = f.len();
            let mut sum = BigInt::zero();
            let mut multiplier = BigInt::one();
            for k in (0..m).rev() {
                sum += binomial(2 * m as u64 + 1, 2 * k as u64) * &f[k] * &multiplier;
                multiplier *= BigInt::from(2 * k as u64 + 1) * (pow2_int(2 * k as u64) - 1);
            }
            let c_m = &c_state.values[m];
            let product_form = c_m.numer() * exact_div(&c_state.scale[m], c_m.denom())?;
            if product_form != sum {
                return Err(Error::Inconsistency(format!(
                    "F_{m}: integer recurrence gives {sum}, product formula gives {product_form}"
                )));
            }
            f.push(sum);
        }
        Ok(())
    }

    /// Grow the integer sequence `G_n = d_n (n+1)! prod_{k<=n} (2^k-1)`,
    /// signalling if any entry fails to clear to an integer.
    fn ensure_g(&self, n_max: usize) -> Result<()> {
        if self.g_int.read().unwrap().len() > n_max {
            return Ok(());
        }
        self.ensure_d(n_max);
        let d_state = self.d.read().unwrap();
        let mut g = self.g_int.write().unwrap();
        while g.len() <= n_max {
            let m = g.len();
            let product = ExactRational::from_integer(d_state.scale[m].clone());
            let value = &d_state.values[m] * product;
            if !value.is_integer() {
                return Err(Error::Inconsistency(format!(
                    "G_{m} = {value} is not an integer"
                )));
            }
            g.push(value.to_integer());
        }
        Ok(())
    }

    /// Grow the integer sequence `R` (indexed from 1) by both routes and
    /// insist on exact agreement and integrality.
    fn ensure_r(&self, n_max: usize) -> Result<()> {
        if self.r_int.read().unwrap().len() >= n_max {
            return Ok(());
        }
        self.ensure_d(n_max);
        let d_state = self.d.read().unwrap();
        let mut r = self.r_int.write().unwrap();
        while r.len() < n_max {
            let m = r.len() as u64 + 1;
            let d_m = &d_state.values[m as usize];
            let odd_product: BigInt = (1..=m / 2).map(|k| pow2_int(2 * k) - 1).product();
            let direct = d_m
                * ExactRational::from_integer(
                    BigInt::from(2) * double_factorial(2 * m as i64 - 1)? * &odd_product,
                );
            let through_value = pow2(choose_two(m - 1) as i64)
                * ExactRational::from_integer(factorial(2 * m) * &odd_product)
                * f_inverse_power_from_d(m, d_m);
            if direct != through_value {
                return Err(Error::Inconsistency(format!(
                    "R_{m}: closed form gives {direct}, definitional route gives {through_value}"
                )));
            }
            if !direct.is_integer() {
                return Err(Error::Inconsistency(format!(
                    "R_{m} = {direct} is not an integer"
                )));
            }
            r.push(direct.to_integer());
        }
        Ok(())
    }

    /// Read `d_0..=d_n` under the lock without cloning the prefix.
    pub(crate) fn with_d_prefix<T>(&self, n: usize, f: impl FnOnce(&[ExactRational]) -> T) -> T {
        self.ensure_d(n);
        let state = self.d.read().unwrap();
        f(&state.values[..=n])
    }

    pub(crate) fn denominator_row(&self, level: u32) -> Option<DenominatorRow> {
        self.denominator_rows.read().unwrap().get(&level).cloned()
    }

    pub(crate) fn store_denominator_row(&self, row: DenominatorRow) {
        self.denominator_rows
            .write()
            .unwrap()
            .insert(row.level, row);
    }
}

impl Default for SequenceCache {
    fn default() -> Self {
        Self::new()
    }
}

/// `F(2^{-n})` written directly from `d_n`: `d_n / (n! 2^{C(n,2)})`.
fn f_inverse_power_from_d(n: u64, d_n: &ExactRational) -> ExactRational {
    d_n * pow2(-(choose_two(n) as i64)) / ExactRational::from_integer(factorial(n))
}

/// First `n_max + 1` values of `c`.
pub fn c_seq(n_max: usize, cache: &SequenceCache) -> Vec<ExactRational> {
    cache.ensure_c(n_max);
    cache.c.read().unwrap().values[..=n_max].to_vec()
}

/// First `n_max + 1` values of `d`.
pub fn d_seq(n_max: usize, cache: &SequenceCache) -> Vec<ExactRational> {
    cache.ensure_d(n_max);
    cache.d.read().unwrap().values[..=n_max].to_vec()
}

/// First `n_max + 1` values of the integer sequence `F`.
pub fn f_seq(n_max: usize, cache: &SequenceCache) -> Result<Vec<BigInt>> {
    cache.ensure_f(n_max)?;
    Ok(cache.f_int.read().unwrap()[..=n_max].to_vec())
}

/// First `n_max + 1` values of the integer sequence `G`.
pub fn g_seq(n_max: usize, cache: &SequenceCache) -> Result<Vec<BigInt>> {
    cache.ensure_g(n_max)?;
    Ok(cache.g_int.read().unwrap()[..=n_max].to_vec())
}

/// `R_1 ..= R_{n_max}` (the sequence starts at index 1); entry `i` of
/// the result is `R_{i+1}`.
pub fn r_seq(n_max: usize, cache: &SequenceCache) -> Result<Vec<BigInt>> {
    if n_max == 0 {
        return Err(Error::IndexRange { got: 0, min: 1 });
    }
    cache.ensure_r(n_max)?;
    Ok(cache.r_int.read().unwrap()[..n_max].to_vec())
}

/// The single value `c_n`.
pub fn c_value(n: usize, cache: &SequenceCache) -> ExactRational {
    cache.ensure_c(n);
    cache.c.read().unwrap().values[n].clone()
}

/// The single value `d_n`.
pub fn d_value(n: usize, cache: &SequenceCache) -> ExactRational {
    cache.ensure_d(n);
    cache.d.read().unwrap().values[n].clone()
}

/// The single value `F_n`.
pub fn f_value(n: usize, cache: &SequenceCache) -> Result<BigInt> {
    cache.ensure_f(n)?;
    Ok(cache.f_int.read().unwrap()[n].clone())
}

/// The single value `G_n`.
pub fn g_value(n: usize, cache: &SequenceCache) -> Result<BigInt> {
    cache.ensure_g(n)?;
    Ok(cache.g_int.read().unwrap()[n].clone())
}

/// The single value `R_n` (`n >= 1`).
pub fn r_value(n: usize, cache: &SequenceCache) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::IndexRange { got: 0, min: 1 });
    }
    cache.ensure_r(n)?;
    Ok(cache.r_int.read().unwrap()[n - 1].clone())
}

/// `d_n` recovered from the `c` sequence:
/// `d_n = 2^{-n} sum_{k<=n/2} C(n,2k) c_k`.
pub fn d_from_c(n: usize, cache: &SequenceCache) -> ExactRational {
    let c = c_seq(n / 2, cache);
    let mut sum = ExactRational::zero();
    for (k, c_k) in c.iter().enumerate() {
        sum += ExactRational::from_integer(binomial(n as u64, 2 * k as u64)) * c_k;
    }
    sum * pow2(-(n as i64))
}

/// The `c` sequence by the Bernoulli-number recurrence
/// `c_n = (2^{2n}-1)^{-1} sum_{k=1..n} 2^{2n-2k} (2^{2k}-2) C(2n,2k) B_{2k} c_{n-k}`.
///
/// Deliberately self-contained: it reads nothing from the standard
/// route, so the two act as mutual oracles.
pub fn c_via_bernoulli(n_max: usize, cache: &SequenceCache) -> Vec<ExactRational> {
    let mut values = vec![ExactRational::one()];
    for n in 1..=n_max {
        let mut sum = ExactRational::zero();
        for k in 1..=n {
            let weight = pow2_int(2 * (n - k) as u64)
                * (pow2_int(2 * k as u64) - 2)
                * binomial(2 * n as u64, 2 * k as u64);
            sum +=
                ExactRational::from_integer(weight) * cache.bernoulli.get(2 * k) * &values[n - k];
        }
        values.push(sum / ExactRational::from_integer(pow2_int(2 * n as u64) - 1));
    }
    values
}

/// The `d` sequence by the Bernoulli-number recurrence
/// `d_n = n 2^{n-2}/(2^n-1) d_{n-1}
///        - (2^n-1)^{-1} sum_{k=1..n/2} C(n,2k) 2^{n-2k} B_{2k} d_{n-2k}`.
///
/// Like [`c_via_bernoulli`], shares nothing with the standard route.
pub fn d_via_bernoulli(n_max: usize, cache: &SequenceCache) -> Vec<ExactRational> {
    let mut values = vec![ExactRational::one()];
    for n in 1..=n_max {
        let lead = ExactRational::from_integer(BigInt::from(n)) * pow2(n as i64 - 2)
            / ExactRational::from_integer(pow2_int(n as u64) - 1);
        let mut sum = ExactRational::zero();
        for k in 1..=n / 2 {
            sum += ExactRational::from_integer(
                binomial(n as u64, 2 * k as u64) * pow2_int((n - 2 * k) as u64),
            ) * cache.bernoulli.get(2 * k)
                * &values[n - 2 * k];
        }
        let value =
            lead * &values[n - 1] - sum / ExactRational::from_integer(pow2_int(n as u64) - 1);
        values.push(value);
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::from_canonical_string;
    use num_traits::Signed;

    fn rats(texts: &[&str]) -> Vec<ExactRational> {
        texts
            .iter()
            .map(|t| from_canonical_string(t).unwrap())
            .collect()
    }

    fn ints(texts: &[&str]) -> Vec<BigInt> {
        texts.iter().map(|t| t.parse().unwrap()).collect()
    }

    #[test]
    fn c_prefix_matches_published_values() {
        let cache = SequenceCache::new();
        let expected = rats(&[
            "1",
            "1/9",
            "19/675",
            "583/59535",
            "132809/32531625",
            "46840699/24405225075",
            "4068990560161/4133856862760625",
        ]);
        assert_eq!(c_seq(6, &cache), expected);
    }

    #[test]
    fn f_prefix_matches_published_values() {
        let cache = SequenceCache::new();
        let expected = ints(&[
            "1",
            "1",
            "19",
            "2915",
            "2788989",
            "14754820185",
            "402830065455939",
            "54259734183964303995",
        ]);
        assert_eq!(f_seq(7, &cache).unwrap(), expected);
    }

    #[test]
    fn d_prefix_matches_published_values() {
        let cache = SequenceCache::new();
        let expected = rats(&[
            "1",
            "1/2",
            "5/18",
            "1/6",
            "143/1350",
            "19/270",
            "1153/23814",
            "583/17010",
            "1616353/65063250",
            "132809/7229250",
            "134926369/9762090030",
        ]);
        assert_eq!(d_seq(10, &cache), expected);
    }

    #[test]
    fn g_prefix_matches_published_values() {
        let cache = SequenceCache::new();
        let expected = ints(&[
            "1",
            "1",
            "5",
            "84",
            "4004",
            "494760",
            "150120600",
            "107969547840",
            "179605731622464",
        ]);
        assert_eq!(g_seq(8, &cache).unwrap(), expected);
    }

    #[test]
    fn r_prefix_matches_published_values() {
        let cache = SequenceCache::new();
        let expected = ints(&[
            "1",
            "5",
            "15",
            "1001",
            "5985",
            "2853675",
            "26261235",
            "72808620885",
            "915304354965",
        ]);
        assert_eq!(r_seq(9, &cache).unwrap(), expected);
        assert!(r_seq(0, &cache).is_err());
    }

    #[test]
    fn d_from_c_small_cases() {
        let cache = SequenceCache::new();
        assert_eq!(d_from_c(0, &cache), ExactRational::one());
        assert_eq!(d_from_c(2, &cache), from_canonical_string("5/18").unwrap());
        assert_eq!(d_from_c(3, &cache), from_canonical_string("1/6").unwrap());
        for n in 0..=40 {
            assert_eq!(d_from_c(n, &cache), d_seq(n, &cache)[n], "n={n}");
        }
    }

    #[test]
    fn bernoulli_routes_agree_with_standard_routes() {
        let cache = SequenceCache::new();
        assert_eq!(c_via_bernoulli(20, &cache), c_seq(20, &cache));
        assert_eq!(d_via_bernoulli(30, &cache), d_seq(30, &cache));
    }

    #[test]
    fn bernoulli_route_first_steps() {
        let cache = SequenceCache::new();
        assert_eq!(
            c_via_bernoulli(1, &cache)[1],
            from_canonical_string("1/9").unwrap()
        );
        let d = d_via_bernoulli(2, &cache);
        assert_eq!(d[1], from_canonical_string("1/2").unwrap());
        assert_eq!(d[2], from_canonical_string("5/18").unwrap());
    }

    #[test]
    fn interleaving_identity_holds() {
        // d_{2n+1} = (2n+1) c_n / 2
        let cache = SequenceCache::new();
        let c = c_seq(12, &cache);
        let d = d_seq(25, &cache);
        for n in 0..=12usize {
            let rhs = ExactRational::from_integer(BigInt::from(2 * n as u64 + 1)) * &c[n]
                / ExactRational::from_integer(BigInt::from(2));
            assert_eq!(d[2 * n + 1], rhs, "n={n}");
        }
    }

    #[test]
    fn f_entries_are_odd() {
        use num_integer::Integer;
        let cache = SequenceCache::new();
        for (n, f) in f_seq(40, &cache).unwrap().iter().enumerate() {
            assert!(f.is_odd(), "F_{n} even");
            assert!(f.is_positive(), "F_{n} not positive");
        }
    }

    #[test]
    fn r_entries_are_positive_odd() {
        use num_integer::Integer;
        let cache = SequenceCache::new();
        for (i, r) in r_seq(40, &cache).unwrap().iter().enumerate() {
            assert!(r.is_odd(), "R_{} even", i + 1);
            assert!(r.is_positive(), "R_{} not positive", i + 1);
        }
    }

    #[test]
    fn single_value_accessors_match_prefixes() {
        let cache = SequenceCache::new();
        assert_eq!(c_value(5, &cache), c_seq(5, &cache)[5]);
        assert_eq!(d_value(9, &cache), d_seq(9, &cache)[9]);
        assert_eq!(f_value(6, &cache).unwrap(), f_seq(6, &cache).unwrap()[6]);
        assert_eq!(g_value(7, &cache).unwrap(), g_seq(7, &cache).unwrap()[7]);
        assert_eq!(r_value(4, &cache).unwrap(), BigInt::from(1001));
        assert!(r_value(0, &cache).is_err());
    }

    #[test]
    fn growth_is_idempotent_and_prefix_stable() {
        let cache = SequenceCache::new();
        let first = d_seq(30, &cache);
        let again = d_seq(12, &cache);
        assert_eq!(&first[..=12], &again[..]);
        assert_eq!(d_seq(30, &cache), first);
    }
}
