//! Factorization of integers below 2¹²⁷: trial division, Miller–Rabin and
//! Brent's variant of Pollard rho, with Montgomery multiplication for
//! moduli beyond 64 bits.

use num_integer::Integer;

/// Full 256-bit product as `(hi, lo)`.
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a1, a0) = (a >> 64, a & MASK);
    let (b1, b0) = (b >> 64, b & MASK);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & MASK) + (p10 & MASK);
    let lo = (p00 & MASK) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

/// Arithmetic modulo an odd `n < 2¹²⁷` in Montgomery form with `R = 2¹²⁸`.
#[derive(Clone, Copy)]
struct Montgomery {
    n: u128,
    n_neg_inv: u128,
    r2: u128,
}

impl Montgomery {
    fn new(n: u128) -> Self {
        debug_assert!(n % 2 == 1 && n < 1 << 127);
        let mut inv: u128 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r = (u128::MAX % n + 1) % n;
        let mut r2 = r;
        for _ in 0..128 {
            r2 = (r2 << 1) % n;
        }
        Montgomery { n, n_neg_inv: inv.wrapping_neg(), r2 }
    }

    fn reduce(&self, (hi, lo): (u128, u128)) -> u128 {
        let u = lo.wrapping_mul(self.n_neg_inv);
        let (uh, ul) = mul_wide(u, self.n);
        let carry = lo.overflowing_add(ul).1 as u128;
        let t = hi + uh + carry;
        if t >= self.n {
            t - self.n
        } else {
            t
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        self.reduce(mul_wide(a, b))
    }

    fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    fn pow(&self, base: u128, mut exp: u128) -> u128 {
        let mut acc = self.to_mont(1);
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

fn mul_mod64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod64(acc, base, m);
        }
        base = mul_mod64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `base^exp mod m` for `m < 2¹²⁷`.
pub fn pow_mod_u128(base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let ring = Ring::new(m);
    let mut acc = ring.enter(1);
    let mut b = ring.enter(base);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ring.mul(acc, b);
        }
        b = ring.mul(b, b);
        exp >>= 1;
    }
    ring.leave(acc)
}

/// Residues modulo `n`: plain for `n < 2⁶⁴`, Montgomery form for odd larger `n`.
enum Ring {
    Small(u64),
    Mont(Montgomery),
}

impl Ring {
    fn new(n: u128) -> Self {
        if n <= u64::MAX as u128 {
            Ring::Small(n as u64)
        } else {
            assert!(n % 2 == 1 && n < 1 << 127, "modulus out of range: {n}");
            Ring::Mont(Montgomery::new(n))
        }
    }

    fn enter(&self, a: u128) -> u128 {
        match self {
            Ring::Small(m) => a % *m as u128,
            Ring::Mont(r) => r.to_mont(a),
        }
    }

    fn leave(&self, a: u128) -> u128 {
        match self {
            Ring::Small(_) => a,
            Ring::Mont(r) => r.reduce((0, a)),
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        match self {
            Ring::Small(m) => mul_mod64(a as u64, b as u64, *m) as u128,
            Ring::Mont(r) => r.mul(a, b),
        }
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        match self {
            Ring::Small(m) => (a + b) % *m as u128,
            Ring::Mont(r) => r.add(a, b),
        }
    }
}

const BASES: [u64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Miller–Rabin over the first twelve primes, deterministic below 2⁶⁴.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality. Deterministic below 3.3·10²⁴; beyond that a strong probable
/// prime test to the first twenty prime bases.
pub fn is_prime(n: u128) -> bool {
    if n <= u64::MAX as u128 {
        return is_prime_u64(n as u64);
    }
    assert!(n < 1 << 127, "primality is implemented below 2^127");
    for &p in &BASES {
        if n % p as u128 == 0 {
            return false;
        }
    }
    let mont = Montgomery::new(n);
    let one = mont.to_mont(1);
    let minus_one = mont.to_mont(n - 1);
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = mont.pow(mont.to_mont(a as u128), d);
        if x == one || x == minus_one {
            continue;
        }
        for _ in 1..s {
            x = mont.mul(x, x);
            if x == minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A non-trivial divisor of the odd composite `n`.
///
/// Iterates in the residue representation of [`Ring`]; gcds with `n` are
/// unaffected by the Montgomery factor `R`, which is coprime to `n`.
fn brent(n: u128) -> u128 {
    const BLOCK: usize = 128;
    let ring = Ring::new(n);
    for c in 1..n {
        let f = |x: u128| ring.add(ring.mul(x, x), c);
        let mut y = 2u128;
        let (mut g, mut r, mut q) = (1u128, 1usize, 1u128);
        let (mut x, mut ys) = (y, y);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BLOCK.min(r - k) {
                    y = f(y);
                    q = ring.mul(q, x.abs_diff(y));
                }
                g = q.gcd(&n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("Pollard rho exhausted all constants")
}

fn split(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = brent(n);
    split(d, out);
    split(n / d, out);
}

/// Prime factorization as sorted `(prime, exponent)` pairs. `factor(1)` is
/// empty. Defined for `0 < n < 2¹²⁷`.
pub fn factor(mut n: u128) -> Vec<(u128, u32)> {
    assert!(n > 0, "cannot factor 0");
    let mut primes = Vec::new();
    for p in [2u128, 3, 5] {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    let mut p = 7u128;
    while p < 1000 && p * p <= n {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
        p += 2;
    }
    split(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn prime_divisors(n: u128) -> Vec<u128> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// Multiplicative order of `a` modulo the prime `p`, with `p ∤ a`.
pub fn multiplicative_order(a: u128, p: u128) -> u128 {
    let mut order = p - 1;
    for (r, _) in factor(p - 1) {
        while order % r == 0 && pow_mod_u128(a, order / r, p) == 1 {
            order /= r;
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn naive_is_prime(n: u128) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn primality_small() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), naive_is_prime(n), "{n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
        assert!(!is_prime(4_294_967_297));
        // 2^89 - 1 and 2^107 - 1 are Mersenne primes, 2^101 - 1 is not
        assert!(is_prime((1 << 89) - 1));
        assert!(is_prime((1 << 107) - 1));
        assert!(!is_prime((1 << 101) - 1));
    }

    #[test]
    fn factors_semiprimes() {
        assert_eq!(factor(4_294_967_297), vec![(641, 1), (6_700_417, 1)]);
        assert_eq!(factor(1_000_000_007 * 998_244_353), vec![(998_244_353, 1), (1_000_000_007, 1)]);
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(1 << 40), vec![(2, 40)]);
        assert_eq!(factor((1 << 101) - 1), vec![(7432339208719, 1), (341117531003194129, 1)]);
    }

    #[test]
    fn montgomery_powers_match_bigint() {
        let m: u128 = (1 << 107) - 1;
        for (b, e) in [(3u128, 12345u128), (m - 2, m - 1), (1 << 100, 77)] {
            let expect = BigUint::from(b).modpow(&BigUint::from(e), &BigUint::from(m));
            assert_eq!(BigUint::from(pow_mod_u128(b, e, m)), expect);
        }
    }

    #[test]
    fn orders_mod_p() {
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(multiplicative_order(2, 31), 5);
        assert_eq!(multiplicative_order(3, 11), 5);
    }

    proptest! {
        #[test]
        fn factorization_multiplies_back(n in 1u128..(1u128 << 80)) {
            let f = factor(n);
            let mut prod = 1u128;
            for &(p, e) in &f {
                prop_assert!(is_prime(p));
                prod *= p.pow(e);
            }
            prop_assert_eq!(prod, n);
        }
    }
}
