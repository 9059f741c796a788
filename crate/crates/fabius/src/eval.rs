//! Evaluation of the Fabius function `F` and the compactly supported
//! average `up`.
//!
//! `F` is exactly rational at dyadic points; two distinct algorithms
//! compute it there and are kept as mutual oracles:
//! - the *explicit* alternating-power sum over the numerator's binary
//!   prefix, `F(a/2^n) = 2^{-C(n+1,2)}/n! * sum_k C(n,2k) c_k *
//!   sum_{h<a} (-1)^{w(h)} (2a-2h-1)^{n-2k}`;
//! - the *reduction* method, which strips the leading binary digit of
//!   the argument per step via
//!   `F(x) = -F(x - 2^{-n}) + sum_{k<=n} 2^{C(k+1,2)-C(n-k,2)}
//!    d_{n-k}/(n-k)! * y^k/k!` and terminates after `w(a)` steps.
//!
//! At non-dyadic arguments the reduction runs until the remainder drops
//! below `2^{-m}` for the least `m` with `F(2^{-m}) <= eps`; the
//! discarded tail is `±F(remainder)`, so `F(2^{-m})` is a rigorous
//! error bound, returned exactly.
//!
//! `F` vanishes for `x <= 0` (the function is identically 0 there),
//! and all off-interval values follow from the reduction identity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    binomial, choose_two, digit_sum_w, factorial, floor_log2, is_dyadic, pow2, ExactRational,
};
use crate::error::Error;
use crate::sequences::{c_seq, d_seq, g_seq, SequenceCache};
use crate::Result;

/// A dyadic rational `a / 2^n` in canonical form: `a` odd, or `n = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DyadicPoint {
    numerator: i64,
    level: u32,
}

impl DyadicPoint {
    /// Build `a / 2^n`, canonicalizing by removing common factors of 2.
    pub fn new(a: i64, n: u32) -> Self {
        let (mut a, mut n) = (a, n);
        while n > 0 && a % 2 == 0 {
            a /= 2;
            n -= 1;
        }
        DyadicPoint {
            numerator: a,
            level: n,
        }
    }

    /// Recognize a rational as a dyadic point, if it is one and fits the
    /// table range this type serves.
    pub fn from_rational(r: &ExactRational) -> Option<Self> {
        if !is_dyadic(r) {
            return None;
        }
        let level = r.denom().trailing_zeros().unwrap_or(0);
        let level = u32::try_from(level).ok()?;
        let numerator = r.numer().to_i64()?;
        Some(DyadicPoint { numerator, level })
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// The rational value `a / 2^n`.
    pub fn value(&self) -> ExactRational {
        ExactRational::new(BigInt::from(self.numerator), BigInt::one() << self.level)
    }
}

impl fmt::Display for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.level)
        }
    }
}

/// Which algorithm produced an evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Explicit,
    Reduction,
    ClosedForm,
    Approx,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Explicit => "explicit",
            Method::Reduction => "reduction",
            Method::ClosedForm => "closed_form",
            Method::Approx => "approx",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An exact value together with a rigorous error bound (0 means the
/// value is exact) and the algorithm that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub value: ExactRational,
    pub error_bound: ExactRational,
    pub method: Method,
}

impl EvalResult {
    fn exact(value: ExactRational, method: Method) -> Self {
        EvalResult {
            value,
            error_bound: ExactRational::zero(),
            method,
        }
    }
}

/// One reduction step at `x > 0`: the unique `n` with
/// `2^{-n} <= x < 2^{-n+1}`, the remainder `y = x - 2^{-n}`, and the
/// Taylor-style sum `S` with `F(x) = -F(y) + S` (`S = 0` when `n < 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReduceStep {
    pub level: i64,
    pub remainder: ExactRational,
    pub taylor_sum: ExactRational,
}

/// Perform one reduction step; rejects `x <= 0`.
pub fn reduce_step(x: &ExactRational, cache: &SequenceCache) -> Result<ReduceStep> {
    let e = floor_log2(x)?;
    let level = -e;
    let remainder = x - pow2(e);
    let taylor_sum = if level < 0 {
        ExactRational::zero()
    } else {
        let n = level as usize;
        cache.with_d_prefix(n, |d| {
            let mut sum = ExactRational::zero();
            let mut y_power = ExactRational::one();
            let mut k_factorial = BigInt::one();
            for k in 0..=n {
                let exponent = choose_two(k as u64 + 1) as i64 - choose_two((n - k) as u64) as i64;
                let term = pow2(exponent) * &d[n - k]
                    / ExactRational::from_integer(factorial((n - k) as u64) * &k_factorial)
                    * &y_power;
                sum += term;
                y_power *= &remainder;
                k_factorial *= BigInt::from(k as u64 + 1);
            }
            sum
        })
    };
    Ok(ReduceStep {
        level,
        remainder,
        taylor_sum,
    })
}

/// `F(a/2^n)` by the explicit alternating-power sum. The admissible
/// window is `0 <= a <= 2^n`.
pub fn f_dyadic_explicit(p: &DyadicPoint, cache: &SequenceCache) -> Result<ExactRational> {
    let (a, n) = (p.numerator(), p.level());
    // For n >= 63 every nonnegative i64 numerator is within [0, 2^n].
    if a < 0 || (n < 63 && a > (1i64 << n)) {
        return Err(Error::OutsideWindow {
            a: a.to_string(),
            n,
        });
    }
    let a = a as u64;
    if a == 0 {
        return Ok(ExactRational::zero());
    }
    let k_max = (n / 2) as usize;
    let c = c_seq(k_max, cache);
    // For each h, walk the exponents n-2k upward (k downward) so each
    // power costs one multiplication by base^2.
    let mut alternating = vec![BigInt::zero(); k_max + 1];
    for h in 0..a {
        let base = BigInt::from(2 * a - 2 * h - 1);
        let base_sq = &base * &base;
        let mut power = if n % 2 == 1 {
            base.clone()
        } else {
            BigInt::one()
        };
        let negative = digit_sum_w(h) % 2 == 1;
        for k in (0..=k_max).rev() {
            if negative {
                alternating[k] -= &power;
            } else {
                alternating[k] += &power;
            }
            if k > 0 {
                power *= &base_sq;
            }
        }
    }
    let mut total = ExactRational::zero();
    for (k, sum) in alternating.iter().enumerate() {
        total += ExactRational::from_integer(binomial(n as u64, 2 * k as u64) * sum) * &c[k];
    }
    Ok(total * pow2(-(choose_two(n as u64 + 1) as i64))
        / ExactRational::from_integer(factorial(n as u64)))
}

/// `F(2^{-n})` in closed form, computed two ways — through `d_n` and
/// through `G_n` — which must agree exactly.
pub fn f_at_inverse_power(n: u32, cache: &SequenceCache) -> ExactRational {
    let n = n as usize;
    let d_n = d_seq(n, cache).pop().expect("nonempty prefix");
    let from_d = &d_n * pow2(-(choose_two(n as u64) as i64))
        / ExactRational::from_integer(factorial(n as u64));
    let g_n = g_seq(n, cache)
        .expect("G is integral")
        .pop()
        .expect("nonempty prefix");
    let odd_product: BigInt = (1..=n as u64).map(|k| (BigInt::one() << k) - 1).product();
    let from_g = ExactRational::from_integer(g_n) * pow2(-(choose_two(n as u64) as i64))
        / ExactRational::from_integer(factorial(n as u64) * factorial(n as u64 + 1) * odd_product);
    assert_eq!(from_d, from_g, "closed forms for F(2^-{n}) disagree");
    from_d
}

/// Least `m >= 0` with `F(2^{-m}) <= eps`, together with that value.
fn truncation_level(eps: &ExactRational, cache: &SequenceCache) -> (u32, ExactRational) {
    let mut m = 0u32;
    loop {
        let tail = f_at_inverse_power(m, cache);
        if tail <= *eps {
            return (m, tail);
        }
        m += 1;
    }
}

/// Evaluate `F(x)` within `eps`.
///
/// `eps = 0` demands exactness and is admitted only for dyadic `x`
/// (where the reduction terminates after `w(numerator)` steps); any
/// `x <= 0` evaluates to exactly 0. For positive `eps` the result
/// carries the exact discarded-tail bound `F(2^{-m})` and method
/// `approx` — unless the reduction happens to terminate first, in
/// which case the value is exact.
pub fn f_eval(x: &ExactRational, eps: &ExactRational, cache: &SequenceCache) -> Result<EvalResult> {
    if eps.is_negative() {
        return Err(Error::NegativeTolerance(eps.to_string()));
    }
    if !x.is_positive() {
        return Ok(EvalResult::exact(ExactRational::zero(), Method::ClosedForm));
    }
    if eps.is_zero() && !is_dyadic(x) {
        return Err(Error::NonDyadicExact(x.to_string()));
    }
    let cutoff = if eps.is_zero() {
        None
    } else {
        let (level, tail) = truncation_level(eps, cache);
        Some((pow2(-(level as i64)), tail))
    };
    let mut accumulated = ExactRational::zero();
    let mut negate = false;
    let mut current = x.clone();
    loop {
        if current.is_zero() {
            return Ok(EvalResult::exact(accumulated, Method::Reduction));
        }
        if let Some((threshold, tail)) = &cutoff {
            if current < *threshold {
                return Ok(EvalResult {
                    value: accumulated,
                    error_bound: tail.clone(),
                    method: Method::Approx,
                });
            }
        }
        let step = reduce_step(&current, cache)?;
        if negate {
            accumulated -= step.taylor_sum;
        } else {
            accumulated += step.taylor_sum;
        }
        negate = !negate;
        current = step.remainder;
    }
}

/// The `up` function: `up(t) = F(t+1)` on `[-1,0]`, `F(1-t)` on
/// `[0,1]`, and 0 outside `[-1,1]`.
pub fn up_value(
    t: &ExactRational,
    eps: &ExactRational,
    cache: &SequenceCache,
) -> Result<EvalResult> {
    if eps.is_negative() {
        return Err(Error::NegativeTolerance(eps.to_string()));
    }
    let one = ExactRational::one();
    if t.abs() > one {
        return Ok(EvalResult::exact(ExactRational::zero(), Method::ClosedForm));
    }
    let inner = if t.is_negative() { t + one } else { one - t };
    f_eval(&inner, eps, cache)
}

/// `F^{(k)}(x) = 2^{C(k+1,2)} F(2^k x)`, with the same tolerance
/// contract as [`f_eval`]: the returned bound is at most `eps`.
pub fn f_derivative_at(
    k: u32,
    x: &ExactRational,
    eps: &ExactRational,
    cache: &SequenceCache,
) -> Result<EvalResult> {
    if eps.is_negative() {
        return Err(Error::NegativeTolerance(eps.to_string()));
    }
    let scale = pow2(choose_two(k as u64 + 1) as i64);
    let inner_eps = eps / &scale;
    let inner = f_eval(&(x * pow2(k as i64)), &inner_eps, cache)?;
    Ok(EvalResult {
        value: inner.value * &scale,
        error_bound: inner.error_bound * &scale,
        method: inner.method,
    })
}
