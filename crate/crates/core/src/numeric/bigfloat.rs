use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumericError;
use crate::arith::Rat;

/// Binary floating point `m · 2^e` with `|m| < 2^bits`.
///
/// Results are truncated (rounded toward −∞) to the smaller precision of the
/// operands; callers carry guard bits.
#[derive(Clone)]
pub struct BigFloat {
    m: BigInt,
    e: i64,
    bits: u32,
}

/// Bits needed for `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

fn bitlen(m: &BigInt) -> i64 {
    m.bits() as i64
}

impl BigFloat {
    pub fn zero(bits: u32) -> Self {
        Self {
            m: BigInt::zero(),
            e: 0,
            bits,
        }
    }

    pub fn from_bigint(m: BigInt, bits: u32) -> Self {
        Self::normalized(m, 0, bits)
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        Self::from_bigint(BigInt::from(n), bits)
    }

    pub fn one(bits: u32) -> Self {
        Self::from_int(1, bits)
    }

    pub fn from_rat(x: &Rat, bits: u32) -> Self {
        let (n, d) = (x.numer(), x.denom());
        let shift = bits as i64 + 2 + bitlen(d) - bitlen(n).min(bits as i64 + bitlen(d));
        let shift = shift.max(0);
        Self::normalized((n << shift as usize) / d, -shift, bits)
    }

    pub fn from_f64(x: f64, bits: u32) -> Self {
        let r = Rat::from_float(x).expect("finite float");
        Self::from_rat(&r, bits)
    }

    fn normalized(mut m: BigInt, mut e: i64, bits: u32) -> Self {
        if m.is_zero() {
            return Self::zero(bits);
        }
        let excess = bitlen(&m) - bits as i64;
        if excess > 0 {
            m >>= excess as usize;
            e += excess;
        }
        Self { m, e, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        Self::normalized(self.m.clone(), self.e, bits)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    /// `floor(log2 |x|) + 1`, or `i64::MIN` for zero.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.e + bitlen(&self.m)
        }
    }

    /// The exact rational value.
    pub fn to_rat(&self) -> Rat {
        if self.e >= 0 {
            Rat::from_integer(&self.m << self.e as usize)
        } else {
            Rat::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let drop = (bitlen(&self.m) - 60).max(0);
        let top = (&self.m >> drop as usize)
            .to_f64()
            .expect("60-bit mantissa");
        top * 2f64.powi((self.e + drop).clamp(-2000, 2000) as i32)
    }

    pub fn neg(&self) -> Self {
        Self {
            m: -&self.m,
            e: self.e,
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            m: self.m.abs(),
            e: self.e,
            bits: self.bits,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let bits = self.bits.min(o.bits);
        if self.is_zero() {
            return o.with_bits(bits);
        }
        if o.is_zero() {
            return self.with_bits(bits);
        }
        let (hi, lo) = if self.magnitude() >= o.magnitude() {
            (self, o)
        } else {
            (o, self)
        };
        if hi.magnitude() - lo.magnitude() > bits as i64 + 4 {
            return hi.with_bits(bits);
        }
        let e = hi.e.min(lo.e);
        let a = &hi.m << (hi.e - e) as usize;
        let b = &lo.m << (lo.e - e) as usize;
        Self::normalized(a + b, e, bits)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(&self.m * &o.m, self.e + o.e, self.bits.min(o.bits))
    }

    pub fn mul_int(&self, n: i64) -> Self {
        Self::normalized(&self.m * n, self.e, self.bits)
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        self.mul(&Self::from_rat(r, self.bits))
    }

    /// Multiplication by `2^k`.
    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self {
            m: self.m.clone(),
            e: self.e + k,
            bits: self.bits,
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, NumericError> {
        if o.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let bits = self.bits.min(o.bits);
        let shift = (bits as i64 + 2 + bitlen(&o.m) - bitlen(&self.m)).max(0);
        let q = (&self.m << shift as usize) / &o.m;
        Ok(Self::normalized(q, self.e - o.e - shift, bits))
    }

    pub fn div_int(&self, n: i64) -> Self {
        self.div(&Self::from_int(n, self.bits))
            .expect("nonzero divisor")
    }

    pub fn recip(&self) -> Result<Self, NumericError> {
        Self::one(self.bits).div(self)
    }

    pub fn sqrt(&self) -> Result<Self, NumericError> {
        if self.is_negative() {
            return Err(NumericError::Domain("sqrt of a negative number".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        // scale so the radicand has about 2*bits bits and an even exponent
        let mut shift = (2 * self.bits as i64 + 2 - bitlen(&self.m)).max(0);
        if (self.e - shift) % 2 != 0 {
            shift += 1;
        }
        let r = (&self.m << shift as usize).sqrt();
        Ok(Self::normalized(r, (self.e - shift) / 2, self.bits))
    }

    pub fn pow_u(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.bits);
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

    pub fn pow_i(&self, n: i64) -> Result<Self, NumericError> {
        let p = self.pow_u(n.unsigned_abs());
        if n < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    /// Nearest integer (ties toward +∞).
    pub fn round(&self) -> BigInt {
        if self.e >= 0 {
            return &self.m << self.e as usize;
        }
        let half = BigInt::one() << (-self.e - 1) as usize;
        (&self.m + half) >> (-self.e) as usize
    }

    pub fn floor(&self) -> BigInt {
        if self.e >= 0 {
            &self.m << self.e as usize
        } else {
            &self.m >> (-self.e) as usize
        }
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let mut e10 = ((self.magnitude() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let p = digits as i64 - 1 - e10;
            let scaled = self.abs().to_rat() * pow10(p);
            let n = (scaled + Rat::new(1.into(), 2.into())).floor().to_integer();
            let s = n.to_string();
            if s.len() > digits {
                e10 += 1;
                continue;
            }
            if s.len() < digits {
                e10 -= 1;
                continue;
            }
            let sign = if self.is_negative() { "-" } else { "" };
            let (head, tail) = s.split_at(1);
            return if tail.is_empty() {
                format!("{sign}{head}e{e10}")
            } else {
                format!("{sign}{head}.{tail}e{e10}")
            };
        }
    }

    /// Fixed notation with `digits` significant digits when the exponent is
    /// moderate, scientific otherwise.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let sci = self.to_sci_string(digits);
        let Some((mant, exp)) = sci.split_once('e') else {
            return sci;
        };
        let e10: i64 = exp.parse().expect("exponent");
        if !(-6..=24).contains(&e10) {
            return sci;
        }
        let (sign, mant) = mant.strip_prefix('-').map_or(("", mant), |m| ("-", m));
        let ds: String = mant.chars().filter(char::is_ascii_digit).collect();
        let out = if e10 < 0 {
            format!("0.{}{}", "0".repeat((-e10 - 1) as usize), ds)
        } else if (e10 as usize) + 1 >= ds.len() {
            format!("{}{}", ds, "0".repeat(e10 as usize + 1 - ds.len()))
        } else {
            let (a, b) = ds.split_at(e10 as usize + 1);
            format!("{a}.{b}")
        };
        format!("{sign}{out}")
    }

    pub fn parse_with_bits(s: &str, bits: u32) -> Result<Self, NumericError> {
        let bad = || NumericError::Parse(s.to_string());
        let s = s.trim();
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let r = if let Some((n, d)) = mant.split_once('/') {
            Rat::new(
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            )
        } else {
            let (sign, body) = mant.strip_prefix('-').map_or((1, mant), |b| (-1, b));
            let body = body.strip_prefix('+').unwrap_or(body);
            let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
            if ip.is_empty() && fp.is_empty()
                || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit())
            {
                return Err(bad());
            }
            let digits: BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
            Rat::new(digits * sign, BigInt::from(10).pow(fp.len() as u32))
        };
        if r.denom().is_zero() {
            return Err(bad());
        }
        Ok(Self::from_rat(&(r * pow10(exp)), bits))
    }
}

pub(crate) fn pow10(p: i64) -> Rat {
    let t = BigInt::from(10).pow(p.unsigned_abs() as u32);
    if p >= 0 {
        Rat::from_integer(t)
    } else {
        Rat::new(BigInt::one(), t)
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_value(o) == Ordering::Equal
    }
}

impl BigFloat {
    pub fn cmp_value(&self, o: &Self) -> Ordering {
        let d = Self::normalized(self.m.clone(), self.e, u32::MAX).sub(&Self::normalized(
            o.m.clone(),
            o.e,
            u32::MAX,
        ));
        match d.m.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    /// `|self - o| < 10^{-digits}`.
    pub fn close_to(&self, o: &Self, digits: u32) -> bool {
        let d = self.sub(o).abs().to_rat();
        d < pow10(-(digits as i64))
    }

    /// `|self - o| <= 10^{-digits} max(1, |o|)`.
    pub fn rel_close_to(&self, o: &Self, digits: u32) -> bool {
        let d = self.sub(o).abs().to_rat();
        let scale = o.abs().to_rat().max(Rat::one());
        d <= pow10(-(digits as i64)) * scale
    }
}

impl FromStr for BigFloat {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_with_bits(s, digits_to_bits(super::DEFAULT_DIGITS))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(((self.bits as f64 - 8.0) / std::f64::consts::LOG2_10) as usize);
        write!(f, "{}", self.to_string_digits(digits.max(1)))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({})", self.to_sci_string(30))
    }
}
