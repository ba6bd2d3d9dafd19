//! Elementary and special functions on [`BigFloat`] and [`BigComplex`].

use super::{BigComplex, BigFloat, NumericError};
use crate::arith::Rat;

const GUARD: u32 = 32;

/// `atan(1/n)` by its alternating series.
fn atan_inv(n: i64, bits: u32) -> BigFloat {
    let x = BigFloat::one(bits).div_int(n);
    let x2 = x.mul(&x);
    let mut power = x.clone();
    let mut acc = x;
    let mut k = 1i64;
    loop {
        power = power.mul(&x2);
        let term = power.div_int(2 * k + 1);
        if term.is_zero() || term.magnitude() < -(bits as i64) - 2 {
            break;
        }
        acc = if k % 2 == 1 {
            acc.sub(&term)
        } else {
            acc.add(&term)
        };
        k += 1;
    }
    acc
}

/// `π` by Machin's formula.
pub fn pi(bits: u32) -> BigFloat {
    let w = bits + GUARD;
    atan_inv(5, w)
        .mul_int(16)
        .sub(&atan_inv(239, w).mul_int(4))
        .with_bits(bits)
}

/// `atanh(z) = z + z³/3 + ...` for `|z| <= 1/3`.
fn atanh_small(z: &BigFloat) -> BigFloat {
    let bits = z.bits();
    let z2 = z.mul(z);
    let mut power = z.clone();
    let mut acc = z.clone();
    let mut k = 1i64;
    loop {
        power = power.mul(&z2);
        let term = power.div_int(2 * k + 1);
        if term.is_zero() || term.magnitude() < acc.magnitude() - bits as i64 - 2 {
            break;
        }
        acc = acc.add(&term);
        k += 1;
    }
    acc
}

pub fn ln2(bits: u32) -> BigFloat {
    let w = bits + GUARD;
    atanh_small(&BigFloat::one(w).div_int(3))
        .mul_int(2)
        .with_bits(bits)
}

pub fn exp(x: &BigFloat) -> BigFloat {
    let bits = x.bits();
    if x.is_zero() {
        return BigFloat::one(bits);
    }
    let extra = x.magnitude().max(0) as u32;
    let s = ((bits as f64).sqrt() as u32).max(4);
    let w = bits + GUARD + s + extra;
    let x = x.with_bits(w);
    let l2 = ln2(w);
    let k = x.div(&l2).expect("ln2 > 0").round();
    let k_i64 = i64::try_from(&k).expect("exponent fits");
    let r = x
        .sub(&l2.mul(&BigFloat::from_bigint(k, w)))
        .mul_2exp(-(s as i64));
    let mut term = BigFloat::one(w);
    let mut acc = BigFloat::one(w);
    let mut j = 1i64;
    loop {
        term = term.mul(&r).div_int(j);
        if term.is_zero() || term.magnitude() < -(w as i64) {
            break;
        }
        acc = acc.add(&term);
        j += 1;
    }
    for _ in 0..s {
        acc = acc.mul(&acc);
    }
    acc.mul_2exp(k_i64).with_bits(bits)
}

pub fn ln(x: &BigFloat) -> Result<BigFloat, NumericError> {
    if x.is_negative() || x.is_zero() {
        return Err(NumericError::Domain("ln of a non-positive number".into()));
    }
    let bits = x.bits();
    let w = bits + GUARD;
    // x = f 2^k with f in [1/2, 1)... then move to [sqrt(1/2), sqrt 2)
    let k = x.magnitude();
    let mut f = x.with_bits(w).mul_2exp(-k);
    let mut k = k;
    if f.to_f64() < std::f64::consts::FRAC_1_SQRT_2 {
        f = f.mul_2exp(1);
        k -= 1;
    }
    let one = BigFloat::one(w);
    let z = f.sub(&one).div(&f.add(&one))?;
    Ok(atanh_small(&z)
        .mul_int(2)
        .add(&ln2(w).mul_int(k))
        .with_bits(bits))
}

/// `x^y` for `x > 0`.
pub fn pow(x: &BigFloat, y: &BigFloat) -> Result<BigFloat, NumericError> {
    Ok(exp(&ln(x)?.mul(y)))
}

pub fn pow_rat(x: &BigFloat, y: &Rat) -> Result<BigFloat, NumericError> {
    pow(x, &BigFloat::from_rat(y, x.bits()))
}

/// `e^{ix} = (cos x, sin x)`.
pub fn cis(x: &BigFloat) -> BigComplex {
    let bits = x.bits();
    let extra = x.magnitude().max(0) as u32;
    let s = ((bits as f64).sqrt() as u32 / 2).max(4);
    let w = bits + GUARD + s + extra;
    let x = x.with_bits(w);
    let two_pi = pi(w).mul_int(2);
    let k = x.div(&two_pi).expect("pi > 0").round();
    let r = x
        .sub(&two_pi.mul(&BigFloat::from_bigint(k, w)))
        .mul_2exp(-(s as i64));
    let z = BigComplex::new(BigFloat::zero(w), r);
    let mut term = BigComplex::one(w);
    let mut acc = BigComplex::one(w);
    let mut j = 1i64;
    loop {
        term = term.mul(&z).div_int(j);
        if term.is_negligible(w as i64) {
            break;
        }
        acc = acc.add(&term);
        j += 1;
    }
    for _ in 0..s {
        acc = acc.mul(&acc);
    }
    acc.with_bits(bits)
}

pub fn sin(x: &BigFloat) -> BigFloat {
    cis(x).im
}

pub fn cos(x: &BigFloat) -> BigFloat {
    cis(x).re
}

pub fn exp_complex(z: &BigComplex) -> BigComplex {
    cis(&z.im).scale(&exp(&z.re))
}

/// `Γ(x)` for real `x` away from the poles.
///
/// `x` is shifted into `(0, 1]` by the functional equation; there
/// `Γ(s) = N^s e^{-N} Σ_k N^k / (s(s+1)...(s+k)) + Γ(s, N)` with the tail
/// `Γ(s, N) <= N^{s-1} e^{-N}` below the target precision.
pub fn gamma(x: &BigFloat) -> Result<BigFloat, NumericError> {
    let bits = x.bits();
    let fl = x.floor();
    if x.to_rat().is_integer() && fl <= 0.into() {
        return Err(NumericError::Domain(format!("gamma has a pole at {}", fl)));
    }
    let shift =
        i64::try_from(&fl).map_err(|_| NumericError::Domain("argument too large".into()))?;
    if !(-10_000..=10_000).contains(&shift) {
        return Err(NumericError::Domain(
            "argument out of supported range".into(),
        ));
    }
    // s in (0, 1]
    let s_shift = if x.to_rat().is_integer() {
        shift - 1
    } else {
        shift
    };
    let n_cut = ((bits + GUARD) as f64 * std::f64::consts::LN_2).ceil() as i64 + 2;
    let w = bits + GUARD + (n_cut as f64 / std::f64::consts::LN_2) as u32 + 16;
    let xw = x.with_bits(w);
    let s = xw.sub(&BigFloat::from_int(s_shift, w));
    let nf = BigFloat::from_int(n_cut, w);
    let mut term = s.recip()?;
    let mut sum = term.clone();
    let mut k = 1i64;
    loop {
        term = term.mul(&nf).div(&s.add(&BigFloat::from_int(k, w)))?;
        sum = sum.add(&term);
        if k > n_cut && term.magnitude() < sum.magnitude() - w as i64 {
            break;
        }
        k += 1;
    }
    let prefactor = exp(&ln(&nf)?.mul(&s).sub(&nf));
    let mut g = sum.mul(&prefactor);
    // undo the shift: Γ(s + j) = (s)(s+1)...(s+j-1) Γ(s), Γ(s - j) = Γ(s) / ((s-1)...(s-j))
    if s_shift > 0 {
        for j in 0..s_shift {
            g = g.mul(&s.add(&BigFloat::from_int(j, w)));
        }
    } else {
        for j in 1..=(-s_shift) {
            g = g.div(&s.sub(&BigFloat::from_int(j, w)))?;
        }
    }
    Ok(g.with_bits(bits))
}
