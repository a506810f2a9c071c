//! Digit sums, binomial valuations and the coefficient sums `c(r, s; 1)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("need 0 <= m <= n, got n = {n}, m = {m}")]
    BinomialRange { n: u64, m: u64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("{name} = {value} is outside [1, {max}]")]
    OutOfRange { name: &'static str, value: u64, max: u64 },
    #[error("precision p^{have} is below the required p^{needed}")]
    Precision { needed: u32, have: u32 },
    #[error("p^{0} does not fit the ring representation")]
    PrecisionTooLarge(u32),
    #[error("operands come from different rings")]
    RingMismatch,
    #[error("vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("Teichmuller iteration did not stabilise")]
    NoConvergence,
}

/// Sum of the base-`p` digits of `n`.
pub fn digit_sum(mut n: u64, p: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// `nu_p(n)`, or `None` for `n = 0`.
pub fn valuation(n: u64, p: u64) -> Option<u32> {
    (n != 0).then(|| crate::code::nu_p(n, p))
}

/// `nu_p(n)` of a big integer, or `None` for zero.
pub fn valuation_big(n: &BigUint, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        n = quot;
        v += 1;
    }
}

/// `nu_p(binom(n, m))` by Kummer: the number of carries when adding `m` and
/// `n - m` in base `p`.
pub fn nu_binom(n: u64, m: u64, p: u64) -> Result<u64, PadicError> {
    if m > n {
        return Err(PadicError::BinomialRange { n, m });
    }
    let total = digit_sum(m, p) + digit_sum(n - m, p) - digit_sum(n, p);
    assert_eq!(total % (p - 1), 0, "digit-sum excess is a multiple of p - 1");
    Ok(total / (p - 1))
}

/// Exact `binom(n, m)`; zero when `m > n`.
pub fn binomial(n: u64, m: u64) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(m))
}

/// Which carry bound to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarryMode {
    /// `nu_p(x) = m`, `nu_p(z) = n >= m` implies at least `n - m` carries.
    ValuationGap,
    /// Low digits of `x` dominate those of `z` below `p^n` (strictly in the
    /// units digit) implies at least `n` carries.
    DigitDominance { n: u32 },
}

/// Checks a carry lower bound for `z = x + y` against Kummer's count.
pub fn carry_bound_check(x: u64, y: u64, z: u64, p: u64, mode: CarryMode) -> Result<bool, PadicError> {
    if x.checked_add(y) != Some(z) {
        return Err(PadicError::Hypothesis(format!("{x} + {y} != {z}")));
    }
    let carries = nu_binom(z, x, p)?;
    match mode {
        CarryMode::ValuationGap => {
            let (Some(m), Some(n)) = (valuation(x, p), valuation(z, p)) else {
                return Err(PadicError::Hypothesis("x and z must be positive".into()));
            };
            if n < m {
                return Err(PadicError::Hypothesis(format!("nu_p(z) = {n} is below nu_p(x) = {m}")));
            }
            Ok(carries >= (n - m) as u64)
        }
        CarryMode::DigitDominance { n } => {
            let pn = p
                .checked_pow(n)
                .ok_or_else(|| PadicError::Hypothesis("p^n overflows".into()))?;
            let (mut xl, mut zl) = (x % pn, z % pn);
            for i in 0..n {
                let (xi, zi) = (xl % p, zl % p);
                let ok = if i == 0 { xi > zi } else { xi >= zi };
                if !ok {
                    return Err(PadicError::Hypothesis(format!("digit {i}: x has {xi}, z has {zi}")));
                }
                xl /= p;
                zl /= p;
            }
            Ok(carries >= n as u64)
        }
    }
}

fn check_range(name: &'static str, value: u64, max: u64) -> Result<(), PadicError> {
    if (1..=max).contains(&value) {
        Ok(())
    } else {
        Err(PadicError::OutOfRange { name, value, max })
    }
}

/// `c(r, s; 1) = sum_{a >= 0} binom(rq, a(q-1) + s)`, every index up to `rq`
/// included.
pub fn c_sum(r: u64, s: u64, field: &Field) -> Result<BigUint, PadicError> {
    let q = field.q() as u64;
    check_range("r", r, q - 1)?;
    check_range("s", s, q - 1)?;
    let top = r * q;
    let mut total = BigUint::zero();
    let mut i = s;
    while i <= top {
        total += binomial(top, i);
        i += q - 1;
    }
    Ok(total)
}

/// The coefficient of `X^(q-1+r-s) Y^s` in `(X + Y)^(rq) - X^r - Y^r` once
/// exponents are folded with `X^q = X`: the sum over interior indices
/// `0 < i < rq` with `i = s (mod q-1)`. It differs from [`c_sum`] only when
/// `s = r`, where the last index `i = rq` belongs to the `Y^r` term.
pub fn expansion_coefficient(r: u64, s: u64, field: &Field) -> Result<BigUint, PadicError> {
    let total = c_sum(r, s, field)?;
    Ok(if s == r { total - BigUint::one() } else { total })
}

/// `c mod m` as a machine integer.
pub(crate) fn big_mod(c: &BigUint, m: u64) -> u64 {
    (c % BigUint::from(m)).to_u64().expect("reduced below m")
}
