//! Arithmetic kernel: exact rationals and the small number-theoretic
//! helpers every other module consumes.
//!
//! All arithmetic is exact. Rationals are always kept reduced with a
//! positive denominator and zero represented as 0/1; their canonical
//! text form is `p/q` (or just `p` when the denominator is 1) in base
//! 10 with the sign on the numerator. Both invariants are provided by
//! the backing `num-rational` type and locked in by tests here.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type ExactRational = BigRational;

/// Number of 1-bits in the binary expansion of `n`.
///
/// This is the sign exponent in the series expansion of the Fabius
/// function and drives the step count of the reduction evaluator.
pub fn digit_sum_w(n: u64) -> u32 {
    n.count_ones()
}

/// 2-adic valuation of a nonzero rational: trailing zeros of the
/// numerator minus trailing zeros of the denominator.
pub fn dyadic_valuation(r: &ExactRational) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(int_valuation(r.numer())? - int_valuation(r.denom())?)
}

/// 2-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt) -> Result<i64> {
    n.trailing_zeros()
        .map(|t| t as i64)
        .ok_or(Error::ZeroValuation)
}

/// Binomial coefficient C(n, k), exactly; 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 1..=k {
        acc = acc * BigInt::from(n - k + j) / BigInt::from(j);
    }
    acc
}

/// Triangular exponent n(n-1)/2 = C(n, 2), the power of two attached
/// to level-n values throughout.
pub fn choose_two(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// n! as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

/// 2-adic valuation of n!, by Legendre's sum of floor(n/2^i).
pub fn factorial_valuation(n: u64) -> u64 {
    let mut total = 0;
    let mut m = n / 2;
    while m > 0 {
        total += m;
        m /= 2;
    }
    total
}

/// Double factorial m!! for m >= -1, with (-1)!! = 0!! = 1.
pub fn double_factorial(m: i64) -> Result<BigInt> {
    if m < -1 {
        return Err(Error::DoubleFactorialRange(m));
    }
    let mut acc = BigInt::one();
    let mut j = m;
    while j >= 2 {
        acc *= BigInt::from(j);
        j -= 2;
    }
    Ok(acc)
}

/// 2^e as an exact rational, for any signed exponent.
pub fn pow2(e: i64) -> ExactRational {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        ExactRational::from_integer(mag)
    } else {
        ExactRational::new(BigInt::one(), mag)
    }
}

/// 2^e as an exact integer.
pub fn pow2_int(e: u64) -> BigInt {
    BigInt::one() << e
}

/// True when `r` is a dyadic rational (denominator a power of two).
pub fn is_dyadic(r: &ExactRational) -> bool {
    let d = r.denom();
    match d.trailing_zeros() {
        Some(t) => (d >> t).is_one(),
        None => false,
    }
}

/// Memoized Bernoulli numbers B_0, B_1, B_2, ... with B_1 = -1/2.
///
/// Grown by the standard recurrence sum_{k<=m} C(m+1,k) B_k = 0; odd
/// entries past B_1 come out zero rather than being assumed zero.
/// Growth takes the write lock once; computed prefixes are read
/// concurrently.
pub struct BernoulliCache {
    values: RwLock<Vec<ExactRational>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            values: RwLock::new(vec![ExactRational::one()]),
        }
    }

    /// B_n, computing and memoizing anything missing below it.
    pub fn get(&self, n: usize) -> ExactRational {
        {
            let values = self.values.read().unwrap();
            if let Some(b) = values.get(n) {
                return b.clone();
            }
        }
        let mut values = self.values.write().unwrap();
        while values.len() <= n {
            let m = values.len();
            let mut sum = ExactRational::zero();
            for (k, b) in values.iter().enumerate() {
                sum += ExactRational::from_integer(binomial(m as u64 + 1, k as u64)) * b;
            }
            let next = -sum / ExactRational::from_integer(BigInt::from(m + 1));
            values.push(next);
        }
        values[n].clone()
    }
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

/// Bernoulli number B_n (B_1 = -1/2) through the shared cache.
pub fn bernoulli(n: usize, cache: &BernoulliCache) -> ExactRational {
    cache.get(n)
}

/// Parity row of Pascal's triangle, little-endian: bit k of the result
/// is C(m, k) mod 2. Built by the additive recurrence over GF(2), one
/// XOR cascade per row, so no closed-form parity shortcut is involved.
fn parity_row(m: u64) -> Vec<u64> {
    let words = (m as usize + 64) / 64;
    let mut row = vec![0u64; words];
    row[0] = 1;
    for _ in 0..m {
        for i in (0..words).rev() {
            let carried = if i == 0 { 0 } else { row[i - 1] >> 63 };
            row[i] ^= (row[i] << 1) | carried;
        }
    }
    row
}

/// Counts of odd binomials in row 2n+1 of Pascal's triangle, obtained
/// by a direct parity scan of the row: `(even_positions, all)` where
/// `even_positions` counts odd C(2n+1, 2k) for 0 <= k <= n and `all`
/// counts odd C(2n+1, k) for 0 <= k <= 2n+1.
pub fn odd_binomial_counts(n: u64) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::IndexRange { got: 0, min: 1 });
    }
    const EVEN_POSITIONS: u64 = 0x5555_5555_5555_5555;
    let row = parity_row(2 * n + 1);
    let mut even = 0u64;
    let mut all = 0u64;
    for w in row {
        even += (w & EVEN_POSITIONS).count_ones() as u64;
        all += w.count_ones() as u64;
    }
    Ok((even, all))
}

/// Trial-division primality check; adequate for the small moduli the
/// Lucas reduction is used with.
fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    if p.is_multiple_of(3) {
        return p == 3;
    }
    let mut f = 5u64;
    while f.saturating_mul(f) <= p {
        if p.is_multiple_of(f) || p.is_multiple_of(f + 2) {
            return false;
        }
        f += 6;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// C(a, b) mod p for 0 <= a, b < p, p prime.
fn small_binomial_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc = 1 % p;
    for j in 1..=b {
        acc = mul_mod(acc, (a - b + j) % p, p);
        // j < p and p prime, so j is invertible mod p.
        acc = mul_mod(acc, pow_mod(j, p - 2, p), p);
    }
    acc
}

/// C(n, k) mod p by Lucas' theorem: the product over base-p digits of
/// the digit binomials. Rejects composite p.
pub fn lucas_binomial_mod_p(n: u64, k: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1 % p;
    while n > 0 || k > 0 {
        acc = mul_mod(acc, small_binomial_mod(n % p, k % p, p), p);
        if acc == 0 {
            return Ok(0);
        }
        n /= p;
        k /= p;
    }
    Ok(acc)
}

/// Canonical text form of a rational: `p/q`, or `p` when q = 1.
pub fn to_canonical_string(r: &ExactRational) -> String {
    r.to_string()
}

/// Parse canonical rational text (`p/q` or `p`).
pub fn from_canonical_string(s: &str) -> Result<ExactRational> {
    s.parse().map_err(|_| Error::Parse {
        input: s.to_string(),
        expected: "rational in canonical p/q form",
    })
}

/// Ratio of an integer pair, reduced, denominator made positive.
pub fn ratio(num: BigInt, den: BigInt) -> ExactRational {
    debug_assert!(!den.is_zero());
    ExactRational::new(num, den)
}

/// Exact integer quotient; error reporting is on the caller, this
/// signals corruption if the division leaves a remainder.
pub fn exact_div(num: &BigInt, den: &BigInt) -> Result<BigInt> {
    use num_integer::Integer;
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Inconsistency(format!(
            "expected {den} to divide {num} exactly"
        )))
    }
}

/// True iff the rational is a (possibly negative) odd integer.
pub fn is_odd_integer(r: &ExactRational) -> bool {
    r.is_integer() && r.numer().is_odd_int()
}

trait OddInt {
    fn is_odd_int(&self) -> bool;
}

impl OddInt for BigInt {
    fn is_odd_int(&self) -> bool {
        use num_integer::Integer;
        self.is_odd()
    }
}

/// Floor of log2 of a positive rational: the unique e with
/// 2^e <= r < 2^(e+1).
pub fn floor_log2(r: &ExactRational) -> Result<i64> {
    if !r.is_positive() {
        return Err(Error::NonPositive(r.to_string()));
    }
    let (p, q) = (r.numer(), r.denom());
    let mut e = p.bits() as i64 - q.bits() as i64;
    // p/q >= 2^e ?
    let ge = |e: i64| -> bool {
        if e >= 0 {
            *p >= (q << e as u64)
        } else {
            (p << (-e) as u64) >= *q
        }
    };
    if ge(e) {
        if ge(e + 1) {
            e += 1;
        }
    } else {
        e -= 1;
    }
    debug_assert!(ge(e) && !ge(e + 1));
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn rat(n: i64, d: i64) -> ExactRational {
        ExactRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum_w(0), 0);
        assert_eq!(digit_sum_w(1), 1);
        assert_eq!(digit_sum_w(11), 3);
        assert_eq!(digit_sum_w(0b1011_0111), 6);
    }

    #[test]
    fn triangular_exponents() {
        assert_eq!(choose_two(0), 0);
        assert_eq!(choose_two(1), 0);
        assert_eq!(choose_two(2), 1);
        assert_eq!(choose_two(7), 21);
    }

    #[test]
    fn valuations() {
        assert_eq!(dyadic_valuation(&rat(288, 1)).unwrap(), 5);
        assert_eq!(dyadic_valuation(&rat(1, 288)).unwrap(), -5);
        assert_eq!(dyadic_valuation(&rat(7, 9)).unwrap(), 0);
        assert_eq!(dyadic_valuation(&rat(-12, 1)).unwrap(), 2);
        assert_eq!(dyadic_valuation(&rat(0, 1)), Err(Error::ZeroValuation));
    }

    #[test]
    fn binomials_match_pascal_triangle() {
        // Independent oracle: build the triangle additively.
        let rows = 41usize;
        let mut row = vec![BigInt::one()];
        for n in 0..rows {
            for k in 0..=n as u64 {
                assert_eq!(binomial(n as u64, k), row[k as usize], "C({n},{k})");
            }
            let mut next = vec![BigInt::one()];
            for k in 1..=n {
                next.push(&row[k - 1] + &row[k]);
            }
            next.push(BigInt::one());
            row = next;
        }
        assert_eq!(binomial(3, 2), BigInt::from(3));
        assert_eq!(binomial(7, 6), BigInt::from(7));
        assert!(binomial(5, 9).is_zero());
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::one());
        assert_eq!(double_factorial(0).unwrap(), BigInt::one());
        assert_eq!(double_factorial(5).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial(9).unwrap(), BigInt::from(945));
        assert_eq!(double_factorial(10).unwrap(), BigInt::from(3840));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn bernoulli_values() {
        let cache = BernoulliCache::new();
        assert_eq!(bernoulli(0, &cache), rat(1, 1));
        assert_eq!(bernoulli(1, &cache), rat(-1, 2));
        assert_eq!(bernoulli(2, &cache), rat(1, 6));
        assert_eq!(bernoulli(3, &cache), rat(0, 1));
        // Frozen well-known values as an independent spot check.
        assert_eq!(bernoulli(4, &cache), rat(-1, 30));
        assert_eq!(bernoulli(6, &cache), rat(1, 42));
        assert_eq!(bernoulli(8, &cache), rat(-1, 30));
        assert_eq!(bernoulli(10, &cache), rat(5, 66));
        assert_eq!(bernoulli(12, &cache), rat(-691, 2730));
        for odd in (3..62).step_by(2) {
            assert!(bernoulli(odd, &cache).is_zero(), "B_{odd}");
        }
    }

    #[test]
    fn odd_binomial_count_examples() {
        assert_eq!(odd_binomial_counts(1).unwrap(), (2, 4));
        assert_eq!(odd_binomial_counts(2).unwrap(), (2, 4));
        assert_eq!(odd_binomial_counts(3).unwrap(), (4, 8));
        assert!(odd_binomial_counts(0).is_err());
    }

    #[test]
    fn odd_binomial_counts_against_direct_binomials() {
        use num_integer::Integer;
        for n in 1..=40u64 {
            let m = 2 * n + 1;
            let mut even = 0;
            let mut all = 0;
            for k in 0..=m {
                if binomial(m, k).is_odd() {
                    all += 1;
                    if k % 2 == 0 {
                        even += 1;
                    }
                }
            }
            assert_eq!(odd_binomial_counts(n).unwrap(), (even, all), "n={n}");
        }
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_binomial_mod_p(7, 3, 2).unwrap(), 1);
        assert_eq!(lucas_binomial_mod_p(4, 2, 2).unwrap(), 0);
        assert_eq!(lucas_binomial_mod_p(10, 0, 5).unwrap(), 1);
        assert!(lucas_binomial_mod_p(4, 2, 6).is_err());
        assert!(lucas_binomial_mod_p(4, 2, 1).is_err());
    }

    #[test]
    fn lucas_agrees_with_exact_binomials() {
        use num_integer::Integer;
        for p in [2u64, 3, 5, 7, 13] {
            for n in 0..=120u64 {
                for k in 0..=n {
                    let exact = binomial(n, k).mod_floor(&BigInt::from(p));
                    let exact = exact.to_u64().unwrap();
                    assert_eq!(
                        lucas_binomial_mod_p(n, k, p).unwrap(),
                        exact,
                        "C({n},{k}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_text_form() {
        assert_eq!(to_canonical_string(&rat(73, 288)), "73/288");
        assert_eq!(to_canonical_string(&rat(-1, 2)), "-1/2");
        assert_eq!(to_canonical_string(&rat(6, 3)), "2");
        assert_eq!(to_canonical_string(&rat(0, 7)), "0");
        assert_eq!(from_canonical_string("73/288").unwrap(), rat(73, 288));
        assert_eq!(from_canonical_string("-5").unwrap(), rat(-5, 1));
        assert!(from_canonical_string("1/0").is_err());
        assert!(from_canonical_string("x").is_err());
    }

    #[test]
    fn reduction_invariants() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = rat(0, -9);
        assert!(z.numer().is_zero());
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn pow2_both_signs() {
        assert_eq!(pow2(0), rat(1, 1));
        assert_eq!(pow2(10), rat(1024, 1));
        assert_eq!(pow2(-3), rat(1, 8));
        assert_eq!(pow2_int(6), BigInt::from(64));
    }

    #[test]
    fn dyadic_detection() {
        assert!(is_dyadic(&rat(3, 8)));
        assert!(is_dyadic(&rat(5, 1)));
        assert!(is_dyadic(&rat(0, 1)));
        assert!(is_dyadic(&rat(-7, 4)));
        assert!(!is_dyadic(&rat(1, 3)));
        assert!(!is_dyadic(&rat(5, 6)));
    }

    #[test]
    fn floor_log2_brackets() {
        assert_eq!(floor_log2(&rat(1, 1)).unwrap(), 0);
        assert_eq!(floor_log2(&rat(3, 8)).unwrap(), -2);
        assert_eq!(floor_log2(&rat(1, 8)).unwrap(), -3);
        assert_eq!(floor_log2(&rat(3, 1)).unwrap(), 1);
        assert_eq!(floor_log2(&rat(4, 1)).unwrap(), 2);
        assert_eq!(floor_log2(&rat(1, 3)).unwrap(), -2);
        assert!(floor_log2(&rat(0, 1)).is_err());
        assert!(floor_log2(&rat(-1, 2)).is_err());
    }

    #[test]
    fn factorial_valuations() {
        for n in 0..=300u64 {
            let direct = int_valuation(&factorial(n));
            let direct = if n < 2 { 0 } else { direct.unwrap() as u64 };
            assert_eq!(factorial_valuation(n), direct, "v2({n}!)");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_rational() -> impl Strategy<Value = ExactRational> {
            (any::<i64>(), 1..u32::MAX)
                .prop_map(|(n, d)| ExactRational::new(BigInt::from(n), BigInt::from(d)))
        }

        proptest! {
            #[test]
            fn add_associates(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
                prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            }

            #[test]
            fn mul_commutes(a in arb_rational(), b in arb_rational()) {
                prop_assert_eq!(&a * &b, &b * &a);
            }

            #[test]
            fn string_round_trip(a in arb_rational()) {
                let s = to_canonical_string(&a);
                prop_assert_eq!(from_canonical_string(&s).unwrap(), a);
            }

            #[test]
            fn valuation_is_additive(a in arb_rational(), b in arb_rational()) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                let product = &a * &b;
                prop_assert_eq!(
                    dyadic_valuation(&product).unwrap(),
                    dyadic_valuation(&a).unwrap() + dyadic_valuation(&b).unwrap()
                );
            }

            #[test]
            fn floor_log2_is_tight(a in arb_rational()) {
                prop_assume!(a.is_positive());
                let e = floor_log2(&a).unwrap();
                prop_assert!(pow2(e) <= a && a < pow2(e + 1));
            }
        }
    }
}
