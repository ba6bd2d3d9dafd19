use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ArithError, QuadRat, Rat};

/// Univariate polynomial over `Q`, stored as integer numerators over one
/// positive common denominator kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    num: Vec<BigInt>,
    den: BigInt,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self {
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c0 + c1 t + c2 t² + ...`
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::normalized(num, den)
    }

    pub fn from_ints(coeffs: &[i64], den: i64) -> Self {
        Self::normalized(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::from(den),
        )
    }

    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        while num.last().is_some_and(Zero::is_zero) {
            num.pop();
        }
        if num.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            num.iter_mut().for_each(|c| *c /= &g);
            den /= &g;
        }
        Self { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.num
            .get(i)
            .map_or_else(Rat::zero, |c| Rat::new(c.clone(), self.den.clone()))
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn add(&self, o: &Self) -> Self {
        let l = self.den.lcm(&o.den);
        let (fa, fb) = (&l / &self.den, &l / &o.den);
        let n = self.num.len().max(o.num.len());
        let num = (0..n)
            .map(|i| {
                let a = self.num.get(i).map_or_else(BigInt::zero, |c| c * &fa);
                let b = o.num.get(i).map_or_else(BigInt::zero, |c| c * &fb);
                a + b
            })
            .collect();
        Self::normalized(num, l)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::normalized(
            self.num.iter().map(|x| x * c.numer()).collect(),
            &self.den * c.denom(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut num = vec![BigInt::zero(); self.num.len() + o.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                num[i + j] += a * b;
            }
        }
        Self::normalized(num, &self.den * &o.den)
    }

    pub fn derivative(&self) -> Self {
        let num = self
            .num
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i)
            .collect();
        Self::normalized(num, self.den.clone())
    }

    pub fn eval_rat(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.num.iter().rev() {
            acc = acc * t + Rat::from_integer(c.clone());
        }
        acc / Rat::from_integer(self.den.clone())
    }

    /// Horner evaluation on the integer numerators, divided once at the end.
    pub fn eval(&self, t: &QuadRat) -> Result<QuadRat, ArithError> {
        let mut acc = QuadRat::zero();
        for c in self.num.iter().rev() {
            acc = acc
                .checked_mul(t)?
                .checked_add(&QuadRat::from_rat(Rat::from_integer(c.clone())))?;
        }
        Ok(acc.scale(&Rat::new(BigInt::one(), self.den.clone())))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_c = !abs.is_one() || i == 0;
            if show_c {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}t", if show_c { "*" } else { "" })?,
                _ => write!(f, "{}t^{i}", if show_c { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}
