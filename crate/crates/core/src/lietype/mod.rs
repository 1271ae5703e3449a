//! Number theory for groups of Lie type: primitive prime divisors, order
//! formulas, Steinberg degrees, torus orders and elimination reports.

mod eliminate;
mod factor;
mod family;
mod zsigmondy;


pub use eliminate::{eliminate, tits_group_row, Candidate, EliminationReport, PrimeTag};
pub use factor::{factor, is_prime, multiplicative_order, prime_divisors};
pub use family::{
    group_order, p_part, prime_power, singer_torus_order, steinberg_degree, Center, GroupOrder, LieFamily,
    OrderFormula, QPoly, TorusSpec,
};
pub use zsigmondy::{
    cyclotomic_value, is_zsigmondy_exception, ppd_properties, primitive_prime_divisors, zsigmondy, PpdProperties,
};

use num_bigint::BigUint;

/// Big integers are written as decimal strings in JSON.
pub(crate) fn serialize_big<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub(crate) fn serialize_wide<S: serde::Serializer>(n: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}
