//! Truncated q-expansions over an exact (or floating) coefficient ring.
//!
//! A [`QSeries`] stores the coefficients of `q^(offset/24 + j)` for
//! `0 <= j < order`. Everything beyond the truncation is unknown, and
//! arithmetic keeps only the coefficients that are determined by the inputs.

mod named;
mod ring;

pub use named::{
    bernoulli, bernoulli_numbers, delta, e2, eisenstein, eta, eta_at, f2, h52, h52_coefficient,
    theta,
};
pub use ring::Ring;

use std::fmt;

use thiserror::Error;

use crate::arith::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("exponent offsets {0}/24 and {1}/24 differ by a non-integer")]
    OffsetMismatch(i64, i64),
    #[error("division by a series whose leading coefficient is not invertible")]
    NonUnitLeading,
    #[error("division by a series that vanishes to its truncation order")]
    ZeroDivisor,
    #[error("Eisenstein series E_{0} is not defined (need even k >= 4)")]
    InvalidWeight(i64),
    #[error("truncation order must be at least 1")]
    EmptySeries,
}

#[derive(Clone, PartialEq)]
pub struct QSeries<R = Rat> {
    offset24: i64,
    coeffs: Vec<R>,
}

impl<R: Ring> QSeries<R> {
    pub fn new(offset24: i64, coeffs: Vec<R>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::EmptySeries);
        }
        Ok(Self { offset24, coeffs })
    }

    /// Series with integral leading exponent `start`.
    pub fn from_coeffs(start: i64, coeffs: Vec<R>) -> Self {
        Self::new(24 * start, coeffs).expect("non-empty coefficient list")
    }

    pub fn constant(c: R, order: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z; order.max(1)];
        v[0] = c;
        Self {
            offset24: 0,
            coeffs: v,
        }
    }

    /// Leading exponent in units of 1/24.
    pub fn offset24(&self) -> i64 {
        self.offset24
    }

    /// Number of known coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Exponent bound (in 1/24 units) up to which coefficients are known.
    fn end24(&self) -> i64 {
        self.offset24 + 24 * self.coeffs.len() as i64
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.offset24 % 24 == 0
    }

    /// Coefficient of `q^n` for integral `n`; zero below the offset,
    /// `None` beyond the truncation.
    pub fn coeff(&self, n: i64) -> Option<R> {
        let rel = 24 * n - self.offset24;
        if rel % 24 != 0 {
            return Some(self.coeffs[0].zero_like());
        }
        let j = rel / 24;
        if j < 0 {
            Some(self.coeffs[0].zero_like())
        } else {
            self.coeffs.get(j as usize).cloned()
        }
    }

    /// Exponents paired with coefficients, as rationals.
    pub fn terms(&self) -> impl Iterator<Item = (Rat, &R)> {
        let off = self.offset24;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(j, c)| (Rat::new((off + 24 * j as i64).into(), 24.into()), c))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(order.max(1));
        s
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> QSeries<S> {
        QSeries {
            offset24: self.offset24,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<QSeries<S>, E> {
        Ok(QSeries {
            offset24: self.offset24,
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    fn zero(&self) -> R {
        self.coeffs[0].zero_like()
    }

    fn combine(&self, other: &Self, sub: bool) -> Result<Self, SeriesError> {
        if (self.offset24 - other.offset24) % 24 != 0 {
            return Err(SeriesError::OffsetMismatch(self.offset24, other.offset24));
        }
        let start = self.offset24.min(other.offset24);
        let end = self.end24().min(other.end24());
        let len = ((end - start) / 24).max(1) as usize;
        let zero = self.zero();
        let at = |s: &Self, j: usize| -> R {
            let rel = (start + 24 * j as i64 - s.offset24) / 24;
            if rel < 0 {
                zero.clone()
            } else {
                s.coeffs
                    .get(rel as usize)
                    .cloned()
                    .unwrap_or_else(|| zero.clone())
            }
        };
        let coeffs = (0..len)
            .map(|j| {
                let (x, y) = (at(self, j), at(other, j));
                if sub {
                    x.minus(&y)
                } else {
                    x.plus(&y)
                }
            })
            .collect();
        Ok(Self {
            offset24: start,
            coeffs,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negate())
    }

    /// Drops leading zero coefficients, moving the offset up. A series that
    /// vanishes to its truncation is returned unchanged.
    pub fn strip_leading_zeros(&self) -> Self {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) | None => self.clone(),
            Some(v) => Self {
                offset24: self.offset24 + 24 * v as i64,
                coeffs: self.coeffs[v..].to_vec(),
            },
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.strip_leading_zeros(), other.strip_leading_zeros());
        a.mul_raw(&b)
    }

    fn mul_raw(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![self.zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Self {
            offset24: self.offset24 + other.offset24,
            coeffs: out,
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        let c = self.coeffs[0]
            .rat_like(c)
            .expect("scalar not representable in ring");
        self.scale(&c)
    }

    /// Inverse of a series whose constant (leading) coefficient is a unit.
    fn unit_inverse(coeffs: &[R]) -> Result<Vec<R>, SeriesError> {
        let inv0 = coeffs[0].try_inv().ok_or(SeriesError::NonUnitLeading)?;
        let n = coeffs.len();
        let mut out = vec![coeffs[0].zero_like(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = coeffs[0].zero_like();
            for j in 1..=k {
                if !coeffs[j].is_zero() && !out[k - j].is_zero() {
                    acc = acc.plus(&coeffs[j].times(&out[k - j]));
                }
            }
            out[k] = acc.times(&inv0).negate();
        }
        Ok(out)
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        let v = other
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(SeriesError::ZeroDivisor)?;
        let unit = &other.coeffs[v..];
        let inv = Self {
            offset24: 0,
            coeffs: Self::unit_inverse(unit)?,
        };
        let mut q = self.strip_leading_zeros().mul_raw(&inv);
        q.offset24 -= other.offset24 + 24 * v as i64;
        Ok(q)
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let one = Self::constant(self.coeffs[0].one_like(), self.order());
        one.div(self)
    }

    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::constant(self.coeffs[0].one_like(), self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Substitutes `q -> q^m`.
    pub fn rescale(&self, m: usize) -> Self {
        assert!(m >= 1, "rescale factor must be positive");
        let zero = self.zero();
        let mut coeffs = vec![zero; self.order() * m];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * m] = c.clone();
        }
        Self {
            offset24: self.offset24 * m as i64,
            coeffs,
        }
    }

    /// `D = q d/dq`: the coefficient of `q^a` is multiplied by `a`.
    pub fn derivative(&self) -> Self {
        let template = &self.coeffs[0];
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let a = Rat::new((self.offset24 + 24 * j as i64).into(), 24.into());
                let a = template
                    .rat_like(&a)
                    .expect("exponent not representable in ring");
                c.times(&a)
            })
            .collect();
        Self {
            offset24: self.offset24,
            coeffs,
        }
    }

    /// Applies `D` `n` times.
    pub fn derivative_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |s, _| s.derivative())
    }

    /// Equality of the coefficients both series determine, up to `order`
    /// terms from the common start.
    pub fn agrees_with(&self, other: &Self, order: usize) -> bool {
        match self.sub(other) {
            Ok(d) => d.order() >= order && d.coeffs[..order].iter().all(R::is_zero),
            Err(_) => false,
        }
    }
}

impl<R: Ring + fmt::Display> fmt::Debug for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[offset {}/24](", self.offset24)?;
        for (i, c) in self.coeffs.iter().take(12).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        if self.coeffs.len() > 12 {
            write!(f, ", ...")?;
        }
        write!(f, "; O({}))", self.order())
    }
}
