use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::nt::{inv_mod, is_prime, mul_mod};
use super::{ArithError, QuadRat, Rat};

/// Class of `a + b sqrt(d)` in `Z[sqrt d] / p^A`, stored in the basis
/// `{1, sqrt d}`. `d = 1` marks a rational class (`b = 0`) which combines
/// with any radicand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueQuad {
    pub p: u64,
    pub exp: u32,
    pub modulus: u64,
    pub d: u64,
    pub a: u64,
    pub b: u64,
}

pub(crate) fn modulus_of(p: u64, exp: u32) -> Result<u64, ArithError> {
    if p == 2 || !is_prime(p) {
        return Err(ArithError::NotOddPrime(p));
    }
    match p.checked_pow(exp) {
        Some(m) if m < (1 << 62) && exp >= 1 => Ok(m),
        _ => Err(ArithError::ModulusTooLarge { p, exp }),
    }
}

pub(crate) fn reduce_rat(x: &Rat, p: u64, m: u64) -> Result<u64, ArithError> {
    let den = x.denom();
    let pm = BigInt::from(p);
    if den.mod_floor(&pm).is_zero() {
        return Err(ArithError::NotPIntegral {
            value: x.to_string(),
            p,
        });
    }
    let mb = BigInt::from(m);
    let n = x
        .numer()
        .mod_floor(&mb)
        .to_u64()
        .expect("reduced below modulus");
    let d = den.mod_floor(&mb).to_u64().expect("reduced below modulus");
    let dinv = inv_mod(d, m).expect("denominator coprime to p");
    Ok(mul_mod(n, dinv, m))
}

/// Reduces a p-integral element of `Q(sqrt d)` modulo `p^exp`, componentwise.
pub fn reduce_mod(x: &QuadRat, p: u64, exp: u32) -> Result<ResidueQuad, ArithError> {
    let modulus = modulus_of(p, exp)?;
    let a = reduce_rat(x.a(), p, modulus)?;
    let b = reduce_rat(x.b(), p, modulus)?;
    Ok(ResidueQuad {
        p,
        exp,
        modulus,
        d: if b == 0 { 1 } else { x.d() },
        a,
        b,
    })
}

impl ResidueQuad {
    pub fn new(p: u64, exp: u32, d: u64, a: i64, b: i64) -> Result<Self, ArithError> {
        let modulus = modulus_of(p, exp)?;
        let m = modulus as i64;
        let b = b.rem_euclid(m) as u64;
        Ok(Self {
            p,
            exp,
            modulus,
            d: if b == 0 { 1 } else { d },
            a: a.rem_euclid(m) as u64,
            b,
        })
    }

    pub fn from_int(p: u64, exp: u32, n: i64) -> Result<Self, ArithError> {
        Self::new(p, exp, 1, n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn with(&self, d: u64, a: u64, b: u64) -> Self {
        Self {
            d: if b == 0 { 1 } else { d },
            a,
            b,
            ..*self
        }
    }

    fn common(&self, other: &Self) -> Result<u64, ArithError> {
        if self.modulus != other.modulus {
            return Err(ArithError::MixedModulus(self.modulus, other.modulus));
        }
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ArithError::MixedField(x, y)),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ArithError> {
        let d = self.common(o)?;
        let m = self.modulus;
        Ok(self.with(d, (self.a + o.a) % m, (self.b + o.b) % m))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ArithError> {
        let d = self.common(o)?;
        let m = self.modulus;
        Ok(self.with(d, (self.a + m - o.a) % m, (self.b + m - o.b) % m))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ArithError> {
        let d = self.common(o)?;
        let m = self.modulus;
        let a = (mul_mod(self.a, o.a, m) + mul_mod(d % m, mul_mod(self.b, o.b, m), m)) % m;
        let b = (mul_mod(self.a, o.b, m) + mul_mod(self.b, o.a, m)) % m;
        Ok(self.with(d, a, b))
    }

    /// `a^2 - d b^2 mod p^A`.
    pub fn norm(&self) -> u64 {
        let m = self.modulus;
        let a2 = mul_mod(self.a, self.a, m);
        let db2 = mul_mod(self.d % m, mul_mod(self.b, self.b, m), m);
        (a2 + m - db2) % m
    }

    /// Units are the classes whose norm is prime to `p`. Only meaningful
    /// when `p` does not divide `d`.
    pub fn is_unit(&self) -> bool {
        !self.norm().is_multiple_of(self.p)
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        let m = self.modulus;
        let ninv = inv_mod(self.norm(), m).ok_or(ArithError::NotAUnit)?;
        Ok(self.with(
            self.d,
            mul_mod(self.a, ninv, m),
            mul_mod((m - self.b) % m, ninv, m),
        ))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.with(1, 1 % self.modulus, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, for units.
    pub fn order(&self) -> Option<u64> {
        if !self.is_unit() {
            return None;
        }
        let one = self.with(1, 1 % self.modulus, 0);
        let mut x = *self;
        // |(Z[sqrt d]/p^A)^x| divides p^(2A-2) (p^2 - 1).
        let bound = self.modulus.saturating_mul(self.modulus);
        for k in 1..=bound {
            if x == one {
                return Some(k);
            }
            x = x * *self;
        }
        None
    }

    /// Balanced representative of the rational part, in `(-m/2, m/2]`.
    pub fn balanced(v: u64, m: u64) -> i64 {
        if v > m / 2 {
            v as i64 - m as i64
        } else {
            v as i64
        }
    }
}

impl fmt::Display for ResidueQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({})+({})sqrt({})", self.a, self.b, self.d)
        }
    }
}

macro_rules! residue_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for ResidueQuad {
            type Output = ResidueQuad;
            fn $method(self, rhs: ResidueQuad) -> ResidueQuad {
                self.$checked(&rhs).expect("incompatible residues")
            }
        }
    };
}

residue_binop!(Add, add, checked_add);
residue_binop!(Sub, sub, checked_sub);
residue_binop!(Mul, mul, checked_mul);

impl Neg for ResidueQuad {
    type Output = ResidueQuad;
    fn neg(self) -> ResidueQuad {
        let m = self.modulus;
        self.with(self.d, (m - self.a) % m, (m - self.b) % m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn reduction_examples() {
        let x = QuadRat::new(rat_int(-3), rat_int(-3), 2).unwrap();
        let r = reduce_mod(&x, 5, 1).unwrap();
        assert_eq!((r.a, r.b), (2, 2));
        let t0 = QuadRat::new(rat(17, 16), rat(-12, 16), 2).unwrap();
        let r = reduce_mod(&t0, 5, 2).unwrap();
        assert_eq!((r.a, r.b), (12, 18));
        assert!(matches!(
            reduce_mod(&QuadRat::from_rat(rat(1, 5)), 5, 1),
            Err(ArithError::NotPIntegral { .. })
        ));
        assert!(reduce_mod(&QuadRat::one(), 9, 1).is_err());
    }

    #[test]
    fn units_and_inverse() {
        let x = ResidueQuad::new(5, 3, 1, 57, 0).unwrap();
        assert_eq!(x.inverse().unwrap().a, 68);
        let e = ResidueQuad::new(5, 1, 2, 1, 1).unwrap();
        assert!(e.is_unit());
        assert_eq!(
            e * e.inverse().unwrap(),
            ResidueQuad::from_int(5, 1, 1).unwrap()
        );
        assert_eq!(ResidueQuad::from_int(5, 1, 2).unwrap().order(), Some(4));
        assert!(ResidueQuad::from_int(5, 2, 10).unwrap().inverse().is_err());
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_homomorphism(
            a in -500i64..500, b in 1i64..60, c in -500i64..500, e in 1i64..60,
            f in -500i64..500, g in -500i64..500,
            (p, exp) in prop::sample::select(vec![(5u64, 1u32), (5, 3), (13, 2), (29, 1)]))
        {
            prop_assume!(b % p as i64 != 0 && e % p as i64 != 0);
            let x = QuadRat::new(rat(a, b), rat(c, e), 2).unwrap();
            let y = QuadRat::new(rat_int(f), rat(g, b), 2).unwrap();
            let rx = reduce_mod(&x, p, exp).unwrap();
            let ry = reduce_mod(&y, p, exp).unwrap();
            prop_assert_eq!(reduce_mod(&(&x + &y), p, exp).unwrap(), rx + ry);
            prop_assert_eq!(reduce_mod(&(&x * &y), p, exp).unwrap(), rx * ry);
        }
    }
}
