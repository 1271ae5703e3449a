//! Primitive prime divisors of `dⁿ − 1`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::factor::{is_prime, multiplicative_order, pow_mod_u128, prime_divisors};
use crate::cyclotomic::cyclotomic_polynomial;
use crate::error::{Error, Result};

/// `Φ_n(d)` as an exact integer.
pub fn cyclotomic_value(n: u32, d: u64) -> BigInt {
    let x = BigInt::from(d);
    cyclotomic_polynomial(n)
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, &c| acc * &x + BigInt::from(c))
}

/// Whether `(d, n)` is one of the cases without a primitive prime divisor.
pub fn is_zsigmondy_exception(d: u64, n: u32) -> bool {
    (d == 2 && n == 6) || (n == 2 && (d + 1).is_power_of_two())
}

/// All primitive prime divisors of `dⁿ − 1`, ascending.
///
/// These are the primes of `Φ_n(d)` that do not divide `n`.
pub fn primitive_prime_divisors(d: u64, n: u32) -> Result<Vec<u128>> {
    if d < 2 || n < 1 {
        return Err(Error::Domain(format!("primitive prime divisors need d ≥ 2, n ≥ 1 (got d = {d}, n = {n})")));
    }
    if n == 1 {
        return Ok(prime_divisors(d as u128 - 1));
    }
    let mut value = cyclotomic_value(n, d);
    for p in prime_divisors(n as u128) {
        let p = BigInt::from(p);
        while (&value % &p).is_zero() {
            value /= &p;
        }
    }
    let cofactor = value.to_u128().filter(|&c| c < 1 << 127).ok_or_else(|| {
        Error::Unsupported(format!("Φ_{n}({d}) has a cofactor beyond 127 bits, too large to factor"))
    })?;
    Ok(if cofactor.is_one() { Vec::new() } else { prime_divisors(cofactor) })
}

/// The smallest primitive prime divisor of `dⁿ − 1`, if any.
pub fn zsigmondy(d: u64, n: u32) -> Result<Option<u128>> {
    if d < 2 || n < 2 {
        return Err(Error::Domain(format!("zsigmondy needs d ≥ 2 and n ≥ 2 (got d = {d}, n = {n})")));
    }
    Ok(primitive_prime_divisors(d, n)?.first().copied())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PpdProperties {
    pub d: u64,
    pub n: u32,
    #[serde(serialize_with = "super::serialize_wide")]
    pub prime: u128,
    /// `p ≡ 1 (mod n)`.
    pub congruence_ok: bool,
}

impl PpdProperties {
    /// The rule `p | d^m − 1 ⇒ n | m`, evaluated at `m`.
    pub fn divisibility_rule(&self, m: u64) -> bool {
        !self.divides(m) || m % self.n as u64 == 0
    }

    /// Whether `p` divides `d^m − 1`.
    pub fn divides(&self, m: u64) -> bool {
        pow_mod_u128(self.d as u128, m as u128, self.prime) == 1
    }
}

pub fn ppd_properties(d: u64, n: u32, prime: u128) -> Result<PpdProperties> {
    if d < 2 || n < 1 {
        return Err(Error::Domain(format!("need d ≥ 2, n ≥ 1 (got d = {d}, n = {n})")));
    }
    if prime >= 1 << 127 || !is_prime(prime) || d as u128 % prime == 0 || multiplicative_order(d as u128 % prime, prime) != n as u128 {
        return Err(Error::Domain(format!("{prime} is not a primitive prime divisor of {d}^{n} − 1")));
    }
    Ok(PpdProperties { d, n, prime, congruence_ok: prime % n as u128 == 1 })
}
