//! Closed-form lower bounds from an `(R, r)`-decomposition.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{invalid, Result};
use crate::rational::{self, Rational};

fn check(mu: usize, r: &Rational) -> Result<()> {
    if mu < 2 {
        return invalid(format!("μ = {mu} must be at least 2"));
    }
    if *r <= rational::zero() {
        return invalid("r must be positive");
    }
    Ok(())
}

// μ^{R+1} − 1
fn power_minus_one(mu: usize, big_r: u32) -> Rational {
    let p = num_traits::pow(BigInt::from(mu), big_r as usize + 1);
    Rational::from_integer(p - BigInt::one())
}

/// `r²(μ−1) / ((μ^{R+1}−1)(μ+r)² + 2rμ(μ−1))`.
pub fn bound_general(mu: usize, big_r: u32, r: &Rational) -> Result<Rational> {
    check(mu, r)?;
    let m = rational::int(mu as i64);
    let m1 = m.clone() - rational::one();
    let mr = m.clone() + r;
    let num = r * r * &m1;
    let den = power_minus_one(mu, big_r) * &mr * &mr + rational::int(2) * r * &m * &m1;
    Ok(num / den)
}

/// `r(μ−1) / ((μ^{R+1}−1)(μ+r) + μ(μ−1))`, for strong decompositions.
pub fn bound_strong(mu: usize, big_r: u32, r: &Rational) -> Result<Rational> {
    check(mu, r)?;
    let m = rational::int(mu as i64);
    let m1 = m.clone() - rational::one();
    let num = r * &m1;
    let den = power_minus_one(mu, big_r) * (m.clone() + r) + &m * &m1;
    Ok(num / den)
}
