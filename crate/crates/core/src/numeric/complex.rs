use std::fmt;

use super::{BigFloat, NumericError};
use crate::arith::Rat;
use crate::qseries::Ring;

#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigFloat) -> Self {
        let bits = re.bits();
        Self {
            re,
            im: BigFloat::zero(bits),
        }
    }

    pub fn zero(bits: u32) -> Self {
        Self::real(BigFloat::zero(bits))
    }

    pub fn one(bits: u32) -> Self {
        Self::real(BigFloat::one(bits))
    }

    pub fn bits(&self) -> u32 {
        self.re.bits().min(self.im.bits())
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        Self::new(self.re.with_bits(bits), self.im.with_bits(bits))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(self.re.mul(&o.re));
        }
        Self::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn scale(&self, s: &BigFloat) -> Self {
        Self::new(self.re.mul(s), self.im.mul(s))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&BigFloat::from_rat(r, self.bits()))
    }

    pub fn div_int(&self, n: i64) -> Self {
        Self::new(self.re.div_int(n), self.im.div_int(n))
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt().expect("non-negative")
    }

    pub fn div(&self, o: &Self) -> Result<Self, NumericError> {
        let n = o.norm_sqr();
        let num = self.mul(&o.conj());
        Ok(Self::new(num.re.div(&n)?, num.im.div(&n)?))
    }

    pub fn recip(&self) -> Result<Self, NumericError> {
        Self::one(self.bits()).div(self)
    }

    pub fn pow_u(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.bits());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Both parts below `2^{-w}`.
    pub fn is_negligible(&self, w: i64) -> bool {
        self.re.magnitude() < -w && self.im.magnitude() < -w
    }

    /// `|self - o| <= 10^{-digits} max(1, |o|)`.
    pub fn rel_close_to(&self, o: &Self, digits: u32) -> bool {
        let scale = o.abs().to_rat().max(Rat::from_integer(1.into()));
        self.sub(o).abs().to_rat() <= scale * super::bigfloat::pow10(-(digits as i64))
    }

    pub fn to_string_digits(&self, digits: usize) -> String {
        if self.im.is_zero() {
            return self.re.to_string_digits(digits);
        }
        let im = self.im.to_string_digits(digits);
        match im.strip_prefix('-') {
            Some(abs) => format!("{} - {}i", self.re.to_string_digits(digits), abs),
            None => format!("{} + {}i", self.re.to_string_digits(digits), im),
        }
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigComplex({})", self.to_string_digits(30))
    }
}

impl Ring for BigComplex {
    fn zero_like(&self) -> Self {
        Self::zero(self.bits())
    }
    fn one_like(&self) -> Self {
        Self::one(self.bits())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn try_inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn rat_like(&self, x: &Rat) -> Option<Self> {
        Some(Self::real(BigFloat::from_rat(x, self.bits())))
    }
}
