use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::nt::is_squarefree;
use super::{ArithError, Rat};

/// Exact element `a + b sqrt(d)` of the real quadratic field `Q(sqrt d)`.
///
/// Rational values (`b = 0`) are stored with `d = 1` and combine with any
/// field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRat {
    d: u64,
    a: Rat,
    b: Rat,
}

impl QuadRat {
    pub fn new(a: Rat, b: Rat, d: u64) -> Result<Self, ArithError> {
        if !is_squarefree(d) {
            return Err(ArithError::NotSquarefree(d));
        }
        Ok(Self::normalized(d, a, b))
    }

    fn normalized(d: u64, a: Rat, b: Rat) -> Self {
        if d == 1 {
            Self {
                d: 1,
                a: a + b,
                b: Rat::zero(),
            }
        } else if b.is_zero() {
            Self { d: 1, a, b }
        } else {
            Self { d, a, b }
        }
    }

    pub fn from_rat(a: Rat) -> Self {
        Self {
            d: 1,
            a,
            b: Rat::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Radicand; 1 for rational values.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common_d(&self, other: &Self) -> Result<u64, ArithError> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ArithError::MixedField(x, y)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_d(other)?;
        Ok(Self::normalized(d, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_d(other)?;
        Ok(Self::normalized(d, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_d(other)?;
        let rd = Rat::from_integer(d.into());
        let a = &self.a * &other.a + &rd * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::normalized(d, a, b))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalized(self.d, &self.a / &n, -&self.b / &n))
    }

    pub fn pow(&self, exp: i64) -> Result<Self, ArithError> {
        let mut base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn conjugate(&self) -> Self {
        Self {
            d: self.d,
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::normalized(self.d, &self.a * c, &self.b * c)
    }

    /// Both coordinates are integers.
    pub fn is_integral_basis(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({})+({})sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl From<Rat> for QuadRat {
    fn from(a: Rat) -> Self {
        Self::from_rat(a)
    }
}

impl From<i64> for QuadRat {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

// Operator forms panic on mixed fields; use the `checked_*` methods when the
// operands come from user input.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadRat> for &QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: &QuadRat) -> QuadRat {
                self.$checked(rhs).expect("mixed quadratic fields")
            }
        }
        impl $tr<QuadRat> for QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: QuadRat) -> QuadRat {
                (&self).$checked(&rhs).expect("mixed quadratic fields")
            }
        }
        impl $tr<&QuadRat> for QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: &QuadRat) -> QuadRat {
                (&self).$checked(rhs).expect("mixed quadratic fields")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat {
            d: self.d,
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        -(self.clone())
    }
}

impl Zero for QuadRat {
    fn zero() -> Self {
        QuadRat::zero()
    }
    fn is_zero(&self) -> bool {
        QuadRat::is_zero(self)
    }
}

impl One for QuadRat {
    fn one() -> Self {
        QuadRat::one()
    }
}

impl QuadRat {
    /// Sign of the real number `a + b sqrt(d)`.
    pub fn signum(&self) -> i32 {
        // Compare a against -b sqrt(d) by squaring.
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        let a2 = &self.a * &self.a;
        let db2 = Rat::from_integer(self.d.into()) * &self.b * &self.b;
        if a2 > db2 {
            sa
        } else if a2 < db2 {
            sb
        } else {
            0
        }
    }
}

fn sign(x: &Rat) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use proptest::prelude::*;

    fn q(a: i64, b: i64, d: u64) -> QuadRat {
        QuadRat::new(rat_int(a), rat_int(b), d).unwrap()
    }

    #[test]
    fn field_examples() {
        assert_eq!(&q(1, 1, 2) * &q(3, -2, 2), q(-1, 1, 2));
        assert_eq!(q(1, 1, 2).inverse().unwrap(), q(-1, 1, 2));
        assert_eq!(q(8, 3, 7).pow(2).unwrap(), q(127, 48, 7));
        assert_eq!(q(1, 1, 2).pow(-2).unwrap(), q(3, -2, 2));
    }

    #[test]
    fn norms_and_conjugates() {
        assert_eq!(q(72, -3, 7).norm(), rat_int(5121));
        assert_eq!(q(-265, -60, 7).norm(), rat_int(45025));
        assert_eq!(q(1, 1, 2).conjugate(), q(1, -1, 2));
        assert_eq!(q(1, 1, 2).trace(), rat_int(2));
        let alpha = QuadRat::new(rat(1065, 800), rat(-400, 800), 7).unwrap();
        assert_eq!(alpha.norm(), rat(569, 1024 * 25));
    }

    #[test]
    fn errors() {
        assert_eq!(QuadRat::zero().inverse(), Err(ArithError::DivisionByZero));
        assert_eq!(
            q(1, 1, 2).checked_add(&q(1, 1, 7)),
            Err(ArithError::MixedField(2, 7))
        );
        assert_eq!(
            QuadRat::new(rat_int(1), rat_int(1), 8),
            Err(ArithError::NotSquarefree(8))
        );
        // rationals mix with any field
        assert_eq!(
            q(1, 1, 2).checked_add(&QuadRat::from_int(2)).unwrap(),
            q(3, 1, 2)
        );
    }

    #[test]
    fn sign_of_real_value() {
        assert_eq!(q(1, 1, 2).signum(), 1);
        assert_eq!(q(1, -1, 2).signum(), -1);
        assert_eq!(q(-3, 2, 2).signum(), -1);
        assert_eq!(q(3, -2, 2).signum(), 1);
        assert_eq!(QuadRat::zero().signum(), 0);
    }

    fn arb_quad() -> impl Strategy<Value = QuadRat> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
            .prop_map(|(a, b, c, e)| QuadRat::new(rat(a, b), rat(c, e), 7).unwrap())
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_quad(), y in arb_quad(), z in arb_quad()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &QuadRat::zero(), x.clone());
            prop_assert_eq!(&x * &QuadRat::one(), x.clone());
            prop_assert_eq!(x.conjugate().conjugate(), x.clone());
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inverse().unwrap(), QuadRat::one());
            }
        }

        #[test]
        fn print_parse_roundtrip(x in arb_quad()) {
            let s = x.to_string();
            prop_assert_eq!(s.parse::<QuadRat>().unwrap(), x);
        }
    }
}
