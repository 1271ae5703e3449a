//! Families of finite simple groups of Lie type, their order formulas and
//! the chosen torus elements.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::factor::factor;
use crate::error::{Error, Result};

/// A family together with its dimension parameter. Classical families carry
/// the dimension of the natural module: `Psp(4)` is `PSp₄`, `Omega(7)` is
/// `Ω₇`, `OmegaPlus(8)` is `Ω⁺₈`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LieFamily {
    Psl(u32),
    Psp(u32),
    Psu(u32),
    Omega(u32),
    OmegaMinus(u32),
    OmegaPlus(u32),
    /// ²B₂ (Suzuki).
    B2Twisted,
    /// ²G₂ (small Ree).
    G2Twisted,
    /// ²F₄ (large Ree).
    F4Twisted,
    G2,
    /// ³D₄ (triality).
    D4Triality,
    F4,
    E6,
    E6Twisted,
    E7,
    E8,
}

impl LieFamily {
    /// Parses a family name; `n` is the dimension for classical families and
    /// ignored otherwise.
    pub fn parse(name: &str, n: Option<u32>) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let key = match lower.as_str() {
            "o-" | "omega-" => "omegaminus".to_string(),
            "o+" | "omega+" => "omegaplus".to_string(),
            _ => lower.replace(['_', '-', ' '], ""),
        };
        let dim = || {
            n.ok_or_else(|| Error::MalformedInput(format!("family {name} needs a dimension parameter")))
        };
        let family = match key.as_str() {
            "psl" | "l" | "sl" => LieFamily::Psl(dim()?),
            "psp" | "s" | "sp" => LieFamily::Psp(dim()?),
            "psu" | "u" | "su" => LieFamily::Psu(dim()?),
            "omega" | "o" | "pomega" => LieFamily::Omega(dim()?),
            "omegaminus" | "pomegaminus" => LieFamily::OmegaMinus(dim()?),
            "omegaplus" | "pomegaplus" => LieFamily::OmegaPlus(dim()?),
            "2b2" | "sz" | "suzuki" => LieFamily::B2Twisted,
            "2g2" | "ree" | "r" => LieFamily::G2Twisted,
            "2f4" => LieFamily::F4Twisted,
            "g2" => LieFamily::G2,
            "3d4" => LieFamily::D4Triality,
            "f4" => LieFamily::F4,
            "e6" => LieFamily::E6,
            "2e6" => LieFamily::E6Twisted,
            "e7" => LieFamily::E7,
            "e8" => LieFamily::E8,
            _ => return Err(Error::NotFound(format!("unknown Lie family {name:?}"))),
        };
        Ok(family)
    }

    pub fn is_classical(&self) -> bool {
        self.dimension().is_some()
    }

    pub fn dimension(&self) -> Option<u32> {
        match *self {
            LieFamily::Psl(n)
            | LieFamily::Psp(n)
            | LieFamily::Psu(n)
            | LieFamily::Omega(n)
            | LieFamily::OmegaMinus(n)
            | LieFamily::OmegaPlus(n) => Some(n),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            LieFamily::Psl(_) => "PSL",
            LieFamily::Psp(_) => "PSp",
            LieFamily::Psu(_) => "PSU",
            LieFamily::Omega(_) => "Omega",
            LieFamily::OmegaMinus(_) => "OmegaMinus",
            LieFamily::OmegaPlus(_) => "OmegaPlus",
            LieFamily::B2Twisted => "2B2",
            LieFamily::G2Twisted => "2G2",
            LieFamily::F4Twisted => "2F4",
            LieFamily::G2 => "G2",
            LieFamily::D4Triality => "3D4",
            LieFamily::F4 => "F4",
            LieFamily::E6 => "E6",
            LieFamily::E6Twisted => "2E6",
            LieFamily::E7 => "E7",
            LieFamily::E8 => "E8",
        }
    }

    /// `PSL4(2)`, `2B2(8)`.
    pub fn name_at(&self, q: u64) -> String {
        match self.dimension() {
            Some(n) => format!("{}{}({})", self.tag(), n, q),
            None => format!("{}({})", self.tag(), q),
        }
    }

    fn check_dimension(&self) -> Result<()> {
        let ok = match *self {
            LieFamily::Psl(n) | LieFamily::Psu(n) => n >= 2,
            LieFamily::Psp(n) => n >= 2 && n % 2 == 0,
            LieFamily::Omega(n) => n >= 3 && n % 2 == 1,
            LieFamily::OmegaMinus(n) | LieFamily::OmegaPlus(n) => n >= 4 && n % 2 == 0,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("{} has no member of dimension {}", self.tag(), self.dimension().unwrap_or(0))))
        }
    }

    /// Validates `q` and returns its characteristic and exponent.
    pub fn check(&self, q: u64) -> Result<(u64, u32)> {
        self.check_dimension()?;
        let (p, r) = prime_power(q).ok_or_else(|| Error::Domain(format!("q = {q} is not a prime power")))?;
        let twisted = match self {
            LieFamily::B2Twisted | LieFamily::F4Twisted => Some(2),
            LieFamily::G2Twisted => Some(3),
            _ => None,
        };
        if let Some(t) = twisted {
            if p != t || r % 2 == 0 {
                return Err(Error::Domain(format!("{} needs q = {t}^(2m+1), got {q}", self.tag())));
            }
        }
        if matches!(self, LieFamily::Omega(_)) && p == 2 {
            return Err(Error::Domain(format!(
                "Omega in odd dimension needs odd q (got {q}); use PSp in characteristic 2"
            )));
        }
        Ok((p, r))
    }

    /// The formulas for `|L_sc|` and `|Z(L_sc)|`.
    pub fn order_formula(&self) -> Result<OrderFormula> {
        self.check_dimension()?;
        let minus = |k: u32| QPoly::binomial(k, -1);
        let plus = |k: u32| QPoly::binomial(k, 1);
        let (p_exponent, factors, center) = match *self {
            LieFamily::Psl(n) => (n * (n - 1) / 2, (2..=n).map(minus).collect(), Center::gcd(n as u64, 1, -1)),
            LieFamily::Psp(d) | LieFamily::Omega(d) => {
                let m = d / 2;
                (m * m, (1..=m).map(|i| minus(2 * i)).collect(), Center::gcd(2, 1, -1))
            }
            LieFamily::Psu(n) => (
                n * (n - 1) / 2,
                (2..=n).map(|i| if i % 2 == 0 { minus(i) } else { plus(i) }).collect(),
                Center::gcd(n as u64, 1, 1),
            ),
            LieFamily::OmegaMinus(d) | LieFamily::OmegaPlus(d) => {
                let m = d / 2;
                let sign = if matches!(self, LieFamily::OmegaMinus(_)) { 1 } else { -1 };
                let mut f = vec![QPoly::binomial(m, sign)];
                f.extend((1..m).map(|i| minus(2 * i)));
                (m * (m - 1), f, Center::gcd(4, m, sign))
            }
            LieFamily::B2Twisted => (2, vec![plus(2), minus(1)], Center::one()),
            LieFamily::G2Twisted => (3, vec![plus(3), minus(1)], Center::one()),
            LieFamily::F4Twisted => (12, vec![plus(6), minus(4), plus(3), minus(1)], Center::one()),
            LieFamily::G2 => (6, vec![minus(6), minus(2)], Center::one()),
            LieFamily::D4Triality => (
                12,
                vec![QPoly::from_terms(&[(8, 1), (4, 1), (0, 1)]), minus(6), minus(2)],
                Center::one(),
            ),
            LieFamily::F4 => (24, [12, 8, 6, 2].map(minus).to_vec(), Center::one()),
            LieFamily::E6 => (36, [12, 9, 8, 6, 5, 2].map(minus).to_vec(), Center::gcd(3, 1, -1)),
            LieFamily::E6Twisted => (
                36,
                vec![minus(12), plus(9), minus(8), minus(6), plus(5), minus(2)],
                Center::gcd(3, 1, 1),
            ),
            LieFamily::E7 => (63, [18, 14, 12, 10, 8, 6, 2].map(minus).to_vec(), Center::gcd(2, 1, -1)),
            LieFamily::E8 => (120, [30, 24, 20, 18, 14, 12, 8, 2].map(minus).to_vec(), Center::one()),
        };
        Ok(OrderFormula { p_exponent, factors, center })
    }

    /// Known small members whose `L_sc / Z` is not simple.
    fn non_simple_note(&self, q: u64) -> Option<&'static str> {
        match (*self, q) {
            (LieFamily::Psl(2), 2) | (LieFamily::Psp(2), 2) | (LieFamily::Psu(2), 2) => Some("isomorphic to S3"),
            (LieFamily::Psl(2), 3) | (LieFamily::Psp(2), 3) | (LieFamily::Psu(2), 3) | (LieFamily::Omega(3), 3) => {
                Some("isomorphic to A4")
            }
            (LieFamily::Psu(3), 2) => Some("solvable of order 72"),
            (LieFamily::Psp(4), 2) => Some("isomorphic to S6"),
            (LieFamily::OmegaPlus(4), _) => Some("a central product of two copies of SL2(q)"),
            (LieFamily::B2Twisted, 2) => Some("solvable of order 20"),
            (LieFamily::G2Twisted, 3) => Some("isomorphic to PΓL2(8)"),
            (LieFamily::F4Twisted, 2) => Some("its derived subgroup, the Tits group, has index 2"),
            (LieFamily::G2, 2) => Some("its derived subgroup PSU3(3) has index 2"),
            _ => None,
        }
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dimension() {
            Some(n) => write!(f, "{}{}", self.tag(), n),
            None => f.write_str(self.tag()),
        }
    }
}

/// `(p, r)` with `q = p^r`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    match factor(q as u128).as_slice() {
        [(p, r)] => Some((*p as u64, *r)),
        _ => None,
    }
}

/// An integer polynomial in `q`, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly(pub Vec<i64>);

impl QPoly {
    /// `q^k + sign`.
    pub fn binomial(k: u32, sign: i64) -> Self {
        Self::from_terms(&[(k, 1), (0, sign)])
    }

    pub fn from_terms(terms: &[(u32, i64)]) -> Self {
        let deg = terms.iter().map(|t| t.0).max().unwrap_or(0) as usize;
        let mut c = vec![0; deg + 1];
        for &(k, a) in terms {
            c[k as usize] += a;
        }
        QPoly(c)
    }

    pub fn degree(&self) -> u32 {
        self.0.len().saturating_sub(1) as u32
    }

    pub fn eval(&self, q: u64) -> BigInt {
        let x = BigInt::from(q);
        self.0.iter().rev().fold(BigInt::zero(), |acc, &c| acc * &x + c)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let coeff = if a == 1 && k > 0 { String::new() } else { a.to_string() };
            let power = match k {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{k}"),
            };
            write!(f, "{sign}{coeff}{power}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `gcd(modulus, q^power + sign)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Center {
    pub modulus: u64,
    pub power: u32,
    pub sign: i64,
}

impl Center {
    fn one() -> Self {
        Center { modulus: 1, power: 1, sign: -1 }
    }

    fn gcd(modulus: u64, power: u32, sign: i64) -> Self {
        Center { modulus, power, sign }
    }

    pub fn eval(&self, q: u64) -> u64 {
        let v = QPoly::binomial(self.power, self.sign).eval(q);
        let r = v.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap();
        r.gcd(&self.modulus)
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 1 {
            return f.write_str("1");
        }
        write!(f, "({}, {})", self.modulus, QPoly::binomial(self.power, self.sign))
    }
}

/// `|L_sc| = q^e · Π factors`, `|Z(L_sc)|` a gcd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderFormula {
    pub p_exponent: u32,
    pub factors: Vec<QPoly>,
    pub center: Center,
}

impl OrderFormula {
    pub fn simply_connected(&self, q: u64) -> BigUint {
        let mut acc = BigInt::from(q).pow(self.p_exponent);
        for f in &self.factors {
            acc *= f.eval(q);
        }
        acc.to_biguint().expect("order formulas are positive for q ≥ 2")
    }

    /// Largest `k` with a factor `q^k ± 1`, or the degree for other factors.
    pub fn max_degree(&self) -> u32 {
        self.factors.iter().map(QPoly::degree).max().unwrap_or(0)
    }
}

impl fmt::Display for OrderFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}", self.p_exponent)?;
        for factor in &self.factors {
            write!(f, "({factor})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupOrder {
    pub family: String,
    pub q: u64,
    pub characteristic: u64,
    #[serde(serialize_with = "super::serialize_big")]
    pub simply_connected: BigUint,
    pub center: u64,
    #[serde(serialize_with = "super::serialize_big")]
    pub simple: BigUint,
    /// False for the small members whose quotient `L_sc / Z` is not simple.
    pub is_simple: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn group_order(family: LieFamily, q: u64) -> Result<GroupOrder> {
    let (p, _) = family.check(q)?;
    let formula = family.order_formula()?;
    let sc = formula.simply_connected(q);
    let center = formula.center.eval(q);
    let simple = &sc / center;
    if &simple * center != sc {
        return Err(Error::Integrity(format!("center {center} does not divide |{}|", family.name_at(q))));
    }
    let note = family.non_simple_note(q);
    Ok(GroupOrder {
        family: family.to_string(),
        q,
        characteristic: p,
        simply_connected: sc,
        center,
        simple,
        is_simple: note.is_none(),
        note: note.map(str::to_string),
    })
}

/// `|S|_p`, the degree of the Steinberg character.
pub fn steinberg_degree(family: LieFamily, q: u64) -> Result<BigUint> {
    let order = group_order(family, q)?;
    Ok(p_part(&order.simple, order.characteristic))
}

pub fn p_part(n: &BigUint, p: u64) -> BigUint {
    let mut n = n.clone();
    let mut part = BigUint::one();
    let p = BigUint::from(p);
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        part *= &p;
    }
    part
}

/// Element order `ord(x̂)` of the chosen torus generator and the torus order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusSpec {
    pub family: String,
    pub q: u64,
    pub order_expression: String,
    #[serde(serialize_with = "super::serialize_big")]
    pub element_order: BigUint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus_order_expression: Option<String>,
    #[serde(serialize_with = "super::serialize_big")]
    pub torus_order: BigUint,
}

/// `√(c q)` for `q = c^(2m+1)`.
fn twisted_root(c: u64, q: u64) -> u64 {
    let mut r = c;
    let mut t = q * c;
    while t > c * c {
        t /= c * c;
        r *= c;
    }
    debug_assert_eq!(r * r, c * q);
    r
}

pub fn singer_torus_order(family: LieFamily, q: u64) -> Result<TorusSpec> {
    family.check(q)?;
    let big = |v: BigInt| v.to_biguint().unwrap();
    let qq = BigInt::from(q);
    let pw = |k: u32| qq.pow(k);
    let odd2 = if q % 2 == 1 { 2 } else { 1 };
    let (expr, ord, torus_expr, torus): (String, BigInt, Option<String>, Option<BigInt>) = match family {
        LieFamily::Psl(n) => ("(q^n-1)/(q-1)".into(), (pw(n) - 1) / (&qq - 1), None, None),
        LieFamily::Psp(d) => ("q^n+1".into(), pw(d / 2) + 1, None, None),
        LieFamily::Psu(n) if n % 2 == 1 => ("(q^n+1)/(q+1)".into(), (pw(n) + 1) / (&qq + 1), None, None),
        LieFamily::Psu(n) => {
            let ord = (pw(n - 1) + 1) / (&qq + 1);
            let t = &ord * (&qq + 1);
            ("(q^(n-1)+1)/(q+1)".into(), ord, Some("ord(x)*(q+1)".into()), Some(t))
        }
        LieFamily::Omega(d) => ("(q^n+1)/2".into(), (pw(d / 2) + 1) / 2, None, None),
        LieFamily::OmegaMinus(d) => ("(q^n+1)/(2,q-1)".into(), (pw(d / 2) + 1) / odd2, None, None),
        LieFamily::OmegaPlus(d) => {
            let ord = (pw(d / 2 - 1) + 1) / odd2;
            let t = &ord * (&qq + 1);
            ("(q^(n-1)+1)/(2,q-1)".into(), ord, Some("ord(x)*(q+1)".into()), Some(t))
        }
        LieFamily::B2Twisted => ("q+sqrt(2q)+1".into(), &qq + twisted_root(2, q) + 1, None, None),
        LieFamily::G2Twisted => ("q+sqrt(3q)+1".into(), &qq + twisted_root(3, q) + 1, None, None),
        LieFamily::F4Twisted => {
            let r = twisted_root(2, q);
            let r3 = BigInt::from(r) * q;
            ("q^2+sqrt(2q^3)+q+sqrt(2q)+1".into(), pw(2) + r3 + &qq + r + 1, None, None)
        }
        LieFamily::G2 => ("q^2-q+1".into(), pw(2) - &qq + 1, None, None),
        LieFamily::D4Triality | LieFamily::F4 => ("q^4-q^2+1".into(), pw(4) - pw(2) + 1, None, None),
        LieFamily::E6 => ("q^6+q^3+1".into(), pw(6) + pw(3) + 1, None, None),
        LieFamily::E6Twisted => ("q^6-q^3+1".into(), pw(6) - pw(3) + 1, None, None),
        LieFamily::E7 => ("(q+1)(q^6-q^3+1)".into(), (&qq + 1) * (pw(6) - pw(3) + 1), None, None),
        LieFamily::E8 => (
            "q^8+q^7-q^5-q^4-q^3+q+1".into(),
            pw(8) + pw(7) - pw(5) - pw(4) - pw(3) + &qq + 1,
            None,
            None,
        ),
    };
    debug_assert!(ord.is_positive());
    let torus = torus.unwrap_or_else(|| ord.clone());
    Ok(TorusSpec {
        family: family.to_string(),
        q,
        order_expression: expr,
        element_order: big(ord),
        torus_order_expression: torus_expr,
        torus_order: big(torus),
    })
}
