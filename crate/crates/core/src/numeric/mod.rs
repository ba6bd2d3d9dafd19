//! Arbitrary-precision oracle: `Γ`, the periods `Ω_D`, values of
//! q-expansions and raising operators at CM points, and recognition of the
//! results as exact numbers.
//!
//! Precision is always passed explicitly, in decimal digits.

mod bigfloat;
mod complex;
mod eval;
pub mod functions;
mod point;
mod recognize;

pub use bigfloat::{digits_to_bits, BigFloat};
pub use complex::BigComplex;
pub use eval::{
    almost_holo_value, eval_qseries, generator_values, raising, raising_components, required_order,
    tail_log10,
};
pub use functions::{gamma, pi};
pub use point::CmPoint;
pub use recognize::{quad_to_float, rational_reconstruct, recognize_quad};

use serde::Serialize;
use thiserror::Error;

use crate::arith::nt::{is_squarefree, kronecker};
use crate::arith::{rat, ArithError, Rat};

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 128;

/// Extra digits carried internally beyond the requested precision.
pub const GUARD_DIGITS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("q-expansion with {order} terms is too short for {digits} digits")]
    InsufficientTruncation { order: usize, digits: u32 },
    #[error("no exact value found within the given bounds")]
    NotRecognized,
    #[error("unsupported discriminant {0} (need a negative fundamental discriminant)")]
    UnsupportedDiscriminant(i64),
    #[error("cannot parse number {0:?}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `Ω_D` together with the data entering its formula.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodValue {
    pub disc: i64,
    #[serde(serialize_with = "ser_float")]
    pub omega: BigFloat,
    #[serde(serialize_with = "ser_rat")]
    pub h_prime: Rat,
    pub trace: String,
}

fn ser_float<S: serde::Serializer>(x: &BigFloat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_rat<S: serde::Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    let m = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => is_squarefree(m),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && is_squarefree(q.unsigned_abs())
        }
        _ => false,
    }
}

/// Class number of the negative discriminant `d`, by counting reduced forms.
fn class_number(d: i64) -> u64 {
    let n = d.unsigned_abs() as i64;
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if num_integer::gcd(num_integer::gcd(a, b.abs()), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

/// `h'(D) = h(D) / (w(D)/2)` with `w` the number of units.
pub fn modified_class_number(d: i64) -> Result<Rat, NumericError> {
    if !is_fundamental(d) {
        return Err(NumericError::UnsupportedDiscriminant(d));
    }
    let w = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    Ok(rat(2 * class_number(d) as i64, w))
}

/// `Ω_D = (2π|D|)^{-1/2} (Π_{j=1}^{|D|-1} Γ(j/|D|)^{χ_D(j)})^{1/(2h'(D))}`.
pub fn omega_d(d: i64, digits: u32) -> Result<PeriodValue, NumericError> {
    let h_prime = modified_class_number(d)?;
    let bits = digits_to_bits(digits + GUARD_DIGITS);
    let n = d.unsigned_abs() as i64;
    let mut log_prod = BigFloat::zero(bits);
    let mut factors = Vec::new();
    for j in 1..n {
        let chi = kronecker(d, j as u64);
        if chi == 0 {
            continue;
        }
        let g = gamma(&BigFloat::from_rat(&rat(j, n), bits))?;
        log_prod = log_prod.add(&functions::ln(&g)?.mul_int(chi as i64));
        factors.push(format!("Gamma({j}/{n})^{chi}"));
    }
    let root = functions::exp(
        &log_prod.mul_rat(&(Rat::from_integer(1.into()) / (h_prime.clone() * rat(2, 1)))),
    );
    let pre = pi(bits).mul_int(2 * n).sqrt()?.recip()?;
    let trace = format!(
        "(2 pi {n})^(-1/2) * ({})^(1/(2*{h_prime}))",
        factors.join(" * ")
    );
    Ok(PeriodValue {
        disc: d,
        omega: pre.mul(&root),
        h_prime,
        trace,
    })
}

/// `Φ = Γ(1/4)⁸ / (128 π⁴)`, the normalization of Romik's expansion at `i/2`.
pub fn romik_phi(digits: u32) -> Result<BigFloat, NumericError> {
    let bits = digits_to_bits(digits + GUARD_DIGITS);
    let g = gamma(&BigFloat::from_rat(&rat(1, 4), bits))?;
    g.pow_u(8).div(&pi(bits).pow_u(4).mul_int(128))
}

/// Normalizing constant `κ = 4πy₀Θ(τ₀)⁴/Φ` at `τ₀ = (1 + i√7)/2`, where
/// `Φ = (√7/2)πΩ₋₇²`; this reduces to `4Θ(τ₀)⁴/Ω₋₇²`. Returns the
/// floating value and its recognition in `Q(√7)`.
pub fn z7_kappa(digits: u32) -> Result<(BigFloat, crate::arith::QuadRat), NumericError> {
    let o = omega_d(-7, digits)?;
    let [th, _, _] = generator_values(&CmPoint::z7(), digits)?;
    let om2 = o.omega.mul(&o.omega);
    let k = th.pow_u(4).re.mul_int(4).div(&om2)?;
    let exact = recognize_quad(
        &k,
        7,
        &num_bigint::BigInt::from(1000),
        digits.saturating_sub(GUARD_DIGITS).max(20),
    )?;
    Ok((k, exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QuadRat;
    use num_bigint::BigInt;

    #[test]
    fn class_numbers() {
        assert_eq!(modified_class_number(-4).unwrap(), rat(1, 2));
        assert_eq!(modified_class_number(-7).unwrap(), rat(1, 1));
        assert_eq!(modified_class_number(-3).unwrap(), rat(1, 3));
        assert_eq!(class_number(-23), 3);
        assert_eq!(class_number(-20), 2);
        assert!(omega_d(-8 * 4, 20).is_err());
        assert!(omega_d(5, 20).is_err());
    }

    #[test]
    fn omega_minus_four() {
        let o = omega_d(-4, 60).unwrap();
        assert!(o.omega.to_string_digits(12).starts_with("0.59017029"));
        let bits = o.omega.bits();
        let g = gamma(&BigFloat::from_rat(&rat(1, 4), bits)).unwrap();
        let closed = g
            .mul(&g)
            .div(&pi(bits).pow_u(3).sqrt().unwrap().mul_int(4))
            .unwrap();
        assert!(o.omega.rel_close_to(&closed, 55));
        // Θ(i) = ((3+2√2)/2)^{1/4} Ω^{1/2}
        let [th, _, _] = generator_values(&CmPoint::i(), 60).unwrap();
        let c = quad_to_float(&QuadRat::new(rat(3, 2), rat(1, 1), 2).unwrap(), bits);
        let want = c
            .sqrt()
            .unwrap()
            .sqrt()
            .unwrap()
            .mul(&o.omega.sqrt().unwrap());
        assert!(th.re.rel_close_to(&want, 55));
    }

    #[test]
    fn omega_minus_seven() {
        let o = omega_d(-7, 60).unwrap();
        let bits = o.omega.bits();
        let g = |j| gamma(&BigFloat::from_rat(&rat(j, 7), bits)).unwrap();
        let seven4 = BigFloat::from_int(7, bits).sqrt().unwrap().sqrt().unwrap();
        let closed = g(1)
            .mul(&g(2))
            .mul(&g(4))
            .div(&seven4.mul(&pi(bits).pow_u(2)).mul_int(4))
            .unwrap();
        assert!(o.omega.rel_close_to(&closed, 55));
        // Θ(z7)⁴/Ω² = (8+3√7)/4 and E₂*(z7)/Ω² = 3/√7
        let [th, _, e2s] = generator_values(&CmPoint::z7(), 60).unwrap();
        let om2 = BigComplex::real(o.omega.mul(&o.omega));
        let r = th.pow_u(4).div(&om2).unwrap();
        let v = recognize_quad(&r.re, 7, &BigInt::from(1000), 50).unwrap();
        assert_eq!(v, QuadRat::new(rat(2, 1), rat(3, 4), 7).unwrap());
        let e = e2s.div(&om2).unwrap();
        let v = recognize_quad(&e.re, 7, &BigInt::from(1000), 50).unwrap();
        assert_eq!(v, QuadRat::new(rat(0, 1), rat(3, 7), 7).unwrap());
    }

    #[test]
    fn z7_kappa_is_the_fundamental_unit() {
        let (_, k) = z7_kappa(50).unwrap();
        assert_eq!(k, QuadRat::new(rat(8, 1), rat(3, 1), 7).unwrap());
    }

    #[test]
    fn romik_bridge() {
        let d = 50;
        let phi = romik_phi(d).unwrap();
        let [th, _, _] = generator_values(&CmPoint::i_half(), d).unwrap();
        let bits = phi.bits();
        let v = th
            .re
            .pow_u(8)
            .mul(&pi(bits).pow_u(2).mul_int(4))
            .div(&phi)
            .unwrap();
        assert!(v.close_to(&BigFloat::from_int(32, bits), 40));
    }
}
