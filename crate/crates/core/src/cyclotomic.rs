//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! A value is stored at its minimal conductor `n` (never `n ≡ 2 mod 4`) as
//! the coefficient vector of its remainder modulo the cyclotomic polynomial
//! `Φ_n`, i.e. in the power basis `1, ζ_n, .., ζ_n^(φ(n)-1)`. Both choices are
//! canonical, so structural equality is field equality.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub type Rational = Ratio<i128>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

/// Descent data for the subfield `Q(ζ_m) ⊂ Q(ζ_n)`: the images of the power
/// basis of the subfield, and the inverse of a square full-rank minor.
struct Descent {
    basis_images: Vec<Vec<Rational>>,
    rows: Vec<usize>,
    inverse: Vec<Vec<Rational>>,
}

#[derive(Default)]
struct Tables {
    cyclotomic_polys: HashMap<u32, Rc<Vec<i128>>>,
    descents: HashMap<(u32, u32), Rc<Descent>>,
}

thread_local! {
    static TABLES: RefCell<Tables> = RefCell::new(Tables::default());
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u32) -> u32 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Rc<Vec<i128>> {
    if let Some(p) = TABLES.with(|t| t.borrow().cyclotomic_polys.get(&n).cloned()) {
        return p;
    }
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = exact_div(&num, &div);
        }
    }
    let poly = Rc::new(num);
    TABLES.with(|t| t.borrow_mut().cyclotomic_polys.insert(n, poly.clone()));
    poly
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i128; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduces a dense polynomial in `ζ_n` to the power basis modulo `Φ_n`.
fn reduce(n: u32, mut dense: Vec<Rational>) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for k in (deg..dense.len()).rev() {
        let c = dense[k];
        if c.is_zero() {
            continue;
        }
        for (j, &p) in phi.iter().enumerate() {
            if p != 0 {
                dense[k - deg + j] -= c * Rational::from_integer(p);
            }
        }
    }
    dense.truncate(deg);
    dense.resize(deg, Rational::zero());
    dense
}

/// Dense vector of `ζ_n^k` exponents folded into `0..n`.
fn fold_exponents(n: u32, terms: impl IntoIterator<Item = (i64, Rational)>) -> Vec<Rational> {
    let mut dense = vec![Rational::zero(); n as usize];
    for (k, c) in terms {
        let k = k.rem_euclid(n as i64) as usize;
        dense[k] += c;
    }
    dense
}

fn descent(n: u32, m: u32) -> Rc<Descent> {
    if let Some(d) = TABLES.with(|t| t.borrow().descents.get(&(n, m)).cloned()) {
        return d;
    }
    let step = (n / m) as i64;
    let dim_m = euler_phi(m) as usize;
    let basis_images: Vec<Vec<Rational>> = (0..dim_m as i64)
        .map(|i| reduce(n, fold_exponents(n, [(i * step, Rational::one())])))
        .collect();
    // pick rows giving an invertible minor by Gaussian elimination on the transpose
    let dim_n = euler_phi(n) as usize;
    let mut rows = Vec::new();
    {
        let mut work: Vec<Vec<Rational>> = basis_images.clone();
        let mut used = vec![false; dim_n];
        for col in 0..dim_m {
            let r = (0..dim_n)
                .find(|&r| !used[r] && !work[col][r].is_zero())
                .expect("subfield basis is linearly independent");
            used[r] = true;
            rows.push(r);
            let pivot = work[col][r];
            for other in col + 1..dim_m {
                let f = work[other][r] / pivot;
                if !f.is_zero() {
                    for k in 0..dim_n {
                        let v = work[col][k];
                        work[other][k] -= f * v;
                    }
                }
            }
        }
    }
    // square minor A[i][j] = basis_images[j][rows[i]], invert it
    let size = dim_m;
    let mut a: Vec<Vec<Rational>> = (0..size)
        .map(|i| (0..size).map(|j| basis_images[j][rows[i]]).collect())
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..size)
        .map(|i| (0..size).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..size {
        let piv = (col..size).find(|&r| !a[r][col].is_zero()).expect("invertible minor");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for k in 0..size {
            a[col][k] /= p;
            inv[col][k] /= p;
        }
        for r in 0..size {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for k in 0..size {
                    let (av, iv) = (a[col][k], inv[col][k]);
                    a[r][k] -= f * av;
                    inv[r][k] -= f * iv;
                }
            }
        }
    }
    let d = Rc::new(Descent {
        basis_images,
        rows,
        inverse: inv,
    });
    TABLES.with(|t| t.borrow_mut().descents.insert((n, m), d.clone()));
    d
}

/// Coordinates in `Q(ζ_m)` if the element of `Q(ζ_n)` lies in that subfield.
fn try_descend(n: u32, coeffs: &[Rational], m: u32) -> Option<Vec<Rational>> {
    let d = descent(n, m);
    let y: Vec<Rational> = d
        .inverse
        .iter()
        .map(|row| {
            row.iter()
                .zip(&d.rows)
                .map(|(a, &r)| *a * coeffs[r])
                .fold(Rational::zero(), |s, t| s + t)
        })
        .collect();
    let mut check = vec![Rational::zero(); coeffs.len()];
    for (yi, img) in y.iter().zip(&d.basis_images) {
        if yi.is_zero() {
            continue;
        }
        for (c, v) in check.iter_mut().zip(img) {
            *c += *yi * *v;
        }
    }
    (check == coeffs).then_some(y)
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(k as i128))
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        Self::from_exponents(n, [(k, Rational::one())])
    }

    /// `Σ c · ζ_n^k` over the given `(k, c)` pairs.
    pub fn from_exponents(n: u32, terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        assert!(n >= 1, "conductor must be positive");
        if n % 4 == 2 {
            // ζ_{2m} = -ζ_m^((m+1)/2) for odd m
            let m = n / 2;
            let half = ((m + 1) / 2) as i64;
            let mapped: Vec<(i64, Rational)> = terms
                .into_iter()
                .map(|(k, c)| {
                    let sign = if k.rem_euclid(2) == 1 { -c } else { c };
                    (k * half, sign)
                })
                .collect();
            return Self::from_exponents(m, mapped);
        }
        let dense = fold_exponents(n, terms);
        Self::normalized(n, reduce(n, dense))
    }

    /// Minimises the conductor of a reduced power-basis vector.
    fn normalized(mut n: u32, mut coeffs: Vec<Rational>) -> Self {
        'descend: loop {
            if n == 1 || coeffs[1..].iter().all(Zero::is_zero) {
                return Cyclotomic {
                    conductor: 1,
                    coeffs: vec![coeffs[0]],
                };
            }
            for p in prime_factors(n) {
                let mut m = n / p;
                if m % 4 == 2 {
                    m /= 2;
                }
                if let Some(y) = try_descend(n, &coeffs, m) {
                    n = m;
                    coeffs = y;
                    continue 'descend;
                }
            }
            return Cyclotomic {
                conductor: n,
                coeffs,
            };
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients at the minimal conductor.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0])
    }

    pub fn to_integer(&self) -> Option<i128> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Representation in `Q(ζ_big)` for a multiple `big` of the conductor.
    fn lifted(&self, big: u32) -> Vec<Rational> {
        if big == self.conductor {
            return self.coeffs.clone();
        }
        let step = (big / self.conductor) as i64;
        reduce(
            big,
            fold_exponents(
                big,
                self.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i as i64 * step, *c)),
            ),
        )
    }

    fn common(&self, other: &Self) -> (u32, Vec<Rational>, Vec<Rational>) {
        let n = self.conductor.lcm(&other.conductor);
        (n, self.lifted(n), other.lifted(n))
    }

    pub fn scale(&self, q: Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| *c * q).collect(),
        }
    }

    /// Galois automorphism `ζ ↦ ζ^a`, with `a` coprime to the conductor.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        debug_assert_eq!(a.rem_euclid(n as i64).gcd(&(n as i64)), 1);
        let dense = fold_exponents(
            n,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 * a, *c)),
        );
        Self::normalized(n, reduce(n, dense))
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// `z · conj(z)`.
    pub fn abs_squared(&self) -> Self {
        self * &self.conj()
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let t = std::f64::consts::TAU * k as f64 / n;
                (re + c * t.cos(), im + c * t.sin())
            })
    }

    /// Compares a real value with a rational. Exact when the value is
    /// rational; otherwise decided numerically with a rigorous margin, and
    /// `None` when the margin is too small to decide.
    pub fn cmp_real_rational(&self, r: Rational) -> Option<Ordering> {
        if let Some(q) = self.to_rational() {
            return Some(q.cmp(&r));
        }
        debug_assert!(self.is_real());
        let (re, _) = self.to_complex();
        let scale: f64 = self.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum();
        let margin = 1e-12 * (scale + 1.0);
        let diff = re - r.to_f64()?;
        if diff > margin {
            Some(Ordering::Greater)
        } else if diff < -margin {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Cyclotomic::from_rational(self.coeffs[0] + rhs.coeffs[0]);
        }
        let (n, mut a, b) = self.common(rhs);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        Cyclotomic::normalized(n, a)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -*c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == 1 {
            return rhs.scale(self.coeffs[0]);
        }
        if rhs.conductor == 1 {
            return self.scale(rhs.coeffs[0]);
        }
        let (n, a, b) = self.common(rhs);
        let mut prod = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += *x * *y;
                }
            }
        }
        Cyclotomic::normalized(n, reduce(n, prod))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + &x)
    }
}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Cyclotomic::from_integer(k)
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return f.write_str(&fmt_rational(&q));
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -*c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            let term = match k {
                0 => fmt_rational(&mag),
                _ => {
                    let base = if k == 1 {
                        format!("E({})", self.conductor)
                    } else {
                        format!("E({})^{k}", self.conductor)
                    };
                    if mag.is_one() {
                        base
                    } else {
                        format!("{}*{base}", fmt_rational(&mag))
                    }
                }
            };
            f.write_str(&term)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rational coefficient as a JSON number when integral, `"p/q"` otherwise.
#[derive(Serialize)]
#[serde(untagged)]
enum JsonRational {
    Int(i128),
    Frac(String),
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<JsonRational> = self
            .coeffs
            .iter()
            .map(|q| {
                if q.is_integer() {
                    JsonRational::Int(q.to_integer())
                } else {
                    JsonRational::Frac(fmt_rational(q))
                }
            })
            .collect();
        let mut st = s.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("conductor", &self.conductor)?;
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(1260), 288);
    }

    #[test]
    fn sums_of_roots_collapse() {
        // 1 + ζ_3 + ζ_3^2 = 0
        let s = Cyclotomic::from_exponents(3, [(0, q(1)), (1, q(1)), (2, q(1))]);
        assert!(s.is_zero());
        // ζ_5 + ζ_5^4 = (-1 + √5)/2 is real but irrational
        let b5 = Cyclotomic::from_exponents(5, [(1, q(1)), (4, q(1))]);
        assert!(b5.is_real());
        assert!(!b5.is_rational());
        // (b5)^2 + b5 - 1 = 0
        let lhs = &(&(&b5 * &b5) + &b5) - &Cyclotomic::one();
        assert!(lhs.is_zero());
    }

    #[test]
    fn conductor_minimised() {
        // ζ_12^4 = ζ_3
        assert_eq!(Cyclotomic::root_of_unity(12, 4), Cyclotomic::root_of_unity(3, 1));
        assert_eq!(Cyclotomic::root_of_unity(12, 4).conductor(), 3);
        // ζ_6 = -ζ_3^2
        assert_eq!(Cyclotomic::root_of_unity(6, 1), -Cyclotomic::root_of_unity(3, 2));
        // √-3 = ζ_3 - ζ_3^2 lives in Q(ζ_3); lifted to conductor 12 it comes back down
        let s3 = Cyclotomic::from_exponents(12, [(4, q(1)), (8, q(-1))]);
        assert_eq!(s3.conductor(), 3);
        assert_eq!((&s3 * &s3).to_integer(), Some(-3));
        // √2 = ζ_8 + ζ_8^7 has conductor 8
        let r2 = Cyclotomic::from_exponents(8, [(1, q(1)), (7, q(1))]);
        assert_eq!(r2.conductor(), 8);
        assert_eq!((&r2 * &r2).to_integer(), Some(2));
    }

    #[test]
    fn conjugation_and_modulus() {
        let z = Cyclotomic::root_of_unity(7, 2);
        assert_eq!(z.conj(), Cyclotomic::root_of_unity(7, 5));
        assert_eq!(z.abs_squared(), Cyclotomic::one());
        let (re, im) = z.to_complex();
        assert!((re - (4.0 * std::f64::consts::PI / 7.0).cos()).abs() < 1e-12);
        assert!((im - (4.0 * std::f64::consts::PI / 7.0).sin()).abs() < 1e-12);
    }

    #[test]
    fn real_rational_comparison() {
        let b5 = Cyclotomic::from_exponents(5, [(1, q(1)), (4, q(1))]); // ≈ 0.618
        assert_eq!(b5.cmp_real_rational(Rational::new(1, 2)), Some(Ordering::Greater));
        assert_eq!(b5.cmp_real_rational(Rational::new(2, 3)), Some(Ordering::Less));
        assert_eq!(Cyclotomic::from_integer(3).cmp_real_rational(q(3)), Some(Ordering::Equal));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(Cyclotomic::root_of_unity(3, 1)).unwrap();
        assert_eq!(v, serde_json::json!({"conductor": 3, "coefficients": [0, 1]}));
        let h = serde_json::to_value(Cyclotomic::from_rational(Rational::new(1, 2))).unwrap();
        assert_eq!(h, serde_json::json!({"conductor": 1, "coefficients": ["1/2"]}));
    }

    fn arb_cyc() -> impl Strategy<Value = Cyclotomic> {
        (prop::sample::select(vec![1u32, 3, 4, 5, 7, 8, 9, 12, 15]), prop::collection::vec((0i64..60, -3i128..4), 0..5))
            .prop_map(|(n, terms)| Cyclotomic::from_exponents(n, terms.into_iter().map(|(k, c)| (k, q(c)))))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            let (ar, ai) = a.to_complex();
            let (br, bi) = b.to_complex();
            let (pr, pi) = (&a * &b).to_complex();
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-8);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-8);
        }

        #[test]
        fn canonical_form_is_conductor_independent(k in 0i64..100, mult in 1u32..5) {
            // ζ_n^k written at conductor n·mult must give the same canonical value
            let n = 15u32;
            let a = Cyclotomic::root_of_unity(n, k);
            let b = Cyclotomic::root_of_unity(n * mult, k * mult as i64);
            prop_assert_eq!(a, b);
        }
    }
}
