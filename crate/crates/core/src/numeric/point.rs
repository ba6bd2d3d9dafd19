use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{functions, BigComplex, BigFloat, NumericError};
use crate::arith::{rat, Rat};

/// A point `τ = x + iy` of the upper half-plane with `x` and `y²` rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmPoint {
    pub label: String,
    pub x: Rat,
    pub y2: Rat,
}

impl CmPoint {
    pub fn new(label: impl Into<String>, x: Rat, y2: Rat) -> Result<Self, NumericError> {
        if !y2.is_positive() {
            return Err(NumericError::Domain(
                "point must lie in the upper half-plane".into(),
            ));
        }
        Ok(Self {
            label: label.into(),
            x,
            y2,
        })
    }

    pub fn i() -> Self {
        Self {
            label: "i".into(),
            x: Rat::zero(),
            y2: Rat::one(),
        }
    }

    pub fn i_half() -> Self {
        Self {
            label: "i/2".into(),
            x: Rat::zero(),
            y2: rat(1, 4),
        }
    }

    /// `(1 + i√7)/2`.
    pub fn z7() -> Self {
        Self {
            label: "z7".into(),
            x: rat(1, 2),
            y2: rat(7, 4),
        }
    }

    pub fn y(&self, bits: u32) -> BigFloat {
        BigFloat::from_rat(&self.y2, bits).sqrt().expect("y^2 > 0")
    }

    pub fn tau(&self, bits: u32) -> BigComplex {
        BigComplex::new(BigFloat::from_rat(&self.x, bits), self.y(bits))
    }

    /// `e^{2πi a τ}`.
    pub fn q_power(&self, a: &Rat, bits: u32) -> BigComplex {
        let two_pi_a = functions::pi(bits).mul_int(2).mul_rat(a);
        let modulus = functions::exp(&two_pi_a.mul(&self.y(bits)).neg());
        let arg = two_pi_a.mul_rat(&self.x);
        if arg.is_zero() {
            return BigComplex::real(modulus);
        }
        functions::cis(&arg).scale(&modulus)
    }

    /// `log10 |q|`.
    pub fn log10_abs_q(&self) -> f64 {
        let y = num_traits::ToPrimitive::to_f64(&self.y2)
            .expect("finite")
            .sqrt();
        -2.0 * std::f64::consts::PI * y * std::f64::consts::LOG10_E
    }
}

fn parse_real(s: &str) -> Result<Rat, NumericError> {
    let s = s.trim();
    let bad = || NumericError::Parse(s.to_string());
    if s.is_empty() || s == "+" {
        return Ok(Rat::one());
    }
    if s == "-" {
        return Ok(-Rat::one());
    }
    let r = BigFloat::parse_with_bits(s, 64)?;
    // decimal and fractional literals are exact rationals
    if let Some((n, d)) = s.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    let (sign, body) = s.strip_prefix('-').map_or((1, s), |b| (-1, b));
    let body = body.strip_prefix('+').unwrap_or(body);
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if s.contains(['e', 'E']) {
        return Ok(r.to_rat());
    }
    let digits: num_bigint::BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
    Ok(Rat::new(
        digits * sign,
        num_bigint::BigInt::from(10).pow(fp.len() as u32),
    ))
}

impl FromStr for CmPoint {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "i" => return Ok(Self::i()),
            "i/2" => return Ok(Self::i_half()),
            "z7" => return Ok(Self::z7()),
            _ => {}
        }
        let t = s.trim().replace(' ', "");
        let body = t
            .strip_suffix('i')
            .ok_or_else(|| NumericError::Parse(s.to_string()))?;
        // split before the sign of the imaginary part (not a leading sign or exponent sign)
        let split = body
            .char_indices()
            .filter(|&(k, c)| {
                (c == '+' || c == '-') && k > 0 && !matches!(body.as_bytes()[k - 1], b'e' | b'E')
            })
            .map(|(k, _)| k)
            .next_back();
        let (x, y) = match split {
            Some(k) => (parse_real(&body[..k])?, parse_real(&body[k..])?),
            None => (Rat::zero(), parse_real(body)?),
        };
        Self::new(s.trim(), x, &y * &y).and_then(|p| {
            if y.is_positive() {
                Ok(p)
            } else {
                Err(NumericError::Domain(
                    "point must lie in the upper half-plane".into(),
                ))
            }
        })
    }
}

impl fmt::Display for CmPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_points() {
        assert_eq!("i".parse::<CmPoint>().unwrap(), CmPoint::i());
        let p: CmPoint = "0.5+2i".parse().unwrap();
        assert_eq!((p.x, p.y2), (rat(1, 2), rat(4, 1)));
        let p: CmPoint = "-1/3 + 1/2 i".parse().unwrap();
        assert_eq!((p.x, p.y2), (rat(-1, 3), rat(1, 4)));
        let p: CmPoint = "i".parse().unwrap();
        assert_eq!(p.y2, rat(1, 1));
        let p: CmPoint = "3i".parse().unwrap();
        assert_eq!((p.x, p.y2), (rat(0, 1), rat(9, 1)));
        assert!("1-2i".parse::<CmPoint>().is_err());
        assert!("1+2".parse::<CmPoint>().is_err());
    }
}
