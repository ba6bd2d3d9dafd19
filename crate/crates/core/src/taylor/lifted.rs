//! Modular evaluation for primes that divide the denominators of the
//! recursion. With `D` clearing them, `q_m = D^m p_m` has integer
//! coefficients; it is computed modulo a higher power of `p` and the
//! surplus power of `p` is divided out at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{RatPoly, Recursion, TaylorError};
use crate::arith::{modulus_of, QuadRat, Rat, ResidueQuad};

/// `lcm(den A, den B, 2 den C)`: `D·A`, `D·B` and `D²C/2` are integral.
pub(crate) fn clearing_denominator(rec: &Recursion) -> BigInt {
    rec.a
        .denominator()
        .lcm(rec.b.denominator())
        .lcm(&(rec.c.denominator() * 2))
}

pub(crate) fn p_divides(d: &BigInt, p: u64) -> bool {
    (d % p).is_zero()
}

fn split_p(n: &BigInt, p: u64) -> (u32, BigInt) {
    let (mut v, mut n) = (0, n.clone());
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    (v, n)
}

struct Field {
    m: BigInt,
    d: BigInt,
}

impl Field {
    fn rat(&self, x: &Rat, p: u64, what: &str) -> Result<BigInt, TaylorError> {
        if (x.denom() % p).is_zero() {
            return Err(TaylorError::BadPrime {
                p,
                what: what.into(),
            });
        }
        let inv = x.denom().modinv(&self.m).expect("denominator prime to p");
        Ok((x.numer() * inv).mod_floor(&self.m))
    }

    fn quad(&self, x: &QuadRat, p: u64, what: &str) -> Result<(BigInt, BigInt), TaylorError> {
        Ok((self.rat(x.a(), p, what)?, self.rat(x.b(), p, what)?))
    }

    fn mul(&self, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let a = (&x.0 * &y.0 + &self.d * &x.1 * &y.1).mod_floor(&self.m);
        let b = (&x.0 * &y.1 + &x.1 * &y.0).mod_floor(&self.m);
        (a, b)
    }

    fn eval(&self, poly: &[BigInt], t: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        poly.iter()
            .rev()
            .fold((BigInt::zero(), BigInt::zero()), |acc, c| {
                let (a, b) = self.mul(&acc, t);
                ((a + c).mod_floor(&self.m), b)
            })
    }
}

fn int_poly(p: &RatPoly, scale: &BigInt) -> Vec<BigInt> {
    let s = Rat::from_integer(scale.clone());
    p.coeffs().iter().map(|c| (c * &s).to_integer()).collect()
}

fn mul_acc(out: &mut [BigInt], f: &[BigInt], g: &[BigInt], s: &BigInt, m: &BigInt) {
    for (i, fi) in f.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        let c = (fi * s).mod_floor(m);
        for (j, gj) in g.iter().enumerate() {
            if !gj.is_zero() {
                out[i + j] += &c * gj;
            }
        }
    }
}

/// Parameters of one normalized sequence `p_{stride n}(t) κⁿ c`.
pub(crate) struct Target<'a> {
    pub t: &'a QuadRat,
    pub kappa: &'a QuadRat,
    pub prefactor: &'a QuadRat,
    pub stride: usize,
    pub count: usize,
}

/// Normalized values modulo `p^exp` for any odd prime `p`, including those
/// dividing the recursion's denominators.
pub(crate) fn normalized_lifted(
    rec: &Recursion,
    p0: &RatPoly,
    k2: u32,
    target: &Target<'_>,
    p: u64,
    exp: u32,
) -> Result<Vec<ResidueQuad>, TaylorError> {
    let modulus = modulus_of(p, exp)?;
    if target.count == 0 {
        return Ok(Vec::new());
    }
    let dd = clearing_denominator(rec);
    let (v, d_unit) = split_p(&dd, p);
    let (w, e_unit) = split_p(p0.denominator(), p);
    let last = target.stride * (target.count - 1);
    let extra = v as usize * last + w as usize;
    let prec = exp as usize + extra;
    let m = BigInt::from(p).pow(prec as u32);
    let radicand = [target.t, target.kappa, target.prefactor]
        .iter()
        .map(|x| x.d())
        .max()
        .unwrap_or(1);
    let f = Field {
        m: m.clone(),
        d: BigInt::from(radicand),
    };

    let a = int_poly(&rec.a, &dd);
    let b = int_poly(&rec.b, &dd);
    let c = int_poly(&rec.c, &(&dd * &dd / 2));
    let t = f.quad(target.t, p, "t_eval")?;
    let kappa = f.quad(target.kappa, p, "kappa")?;
    let mut scale = f.quad(target.prefactor, p, "prefactor")?;

    let small = BigInt::from(modulus);
    let d_inv = d_unit.modinv(&small).expect("unit");
    let e_inv = e_unit.modinv(&small).expect("unit");
    let mut out = Vec::with_capacity(target.count);
    let mut emit =
        |mm: usize, poly: &[BigInt], scale: &(BigInt, BigInt)| -> Result<(), TaylorError> {
            let val = f.mul(&f.eval(poly, &t), scale);
            let drop = BigInt::from(p).pow((v as usize * mm + w as usize) as u32);
            let mut parts = [BigInt::zero(), BigInt::zero()];
            for (slot, x) in parts.iter_mut().zip([&val.0, &val.1]) {
                if !(x % &drop).is_zero() {
                    return Err(TaylorError::BadPrime {
                        p,
                        what: format!("value at index {}", mm / target.stride),
                    });
                }
                let u = (x / &drop).mod_floor(&small);
                let k = (u * d_inv.modpow(&BigInt::from(mm), &small) * &e_inv).mod_floor(&small);
                *slot = k;
            }
            let [a, b] = parts;
            let (a, b) = (a.to_u64().expect("reduced"), b.to_u64().expect("reduced"));
            out.push(ResidueQuad {
                p,
                exp,
                modulus,
                d: if b == 0 { 1 } else { radicand },
                a,
                b,
            });
            Ok(())
        };

    let mut cur: Vec<BigInt> = p0.numerators().iter().map(|x| x.mod_floor(&m)).collect();
    let mut prev: Vec<BigInt> = Vec::new();
    emit(0, &cur, &scale)?;
    for step in 0..last {
        let mut next = vec![BigInt::zero(); cur.len().max(prev.len()) + 2];
        mul_acc(
            &mut next,
            &a,
            &cur,
            &BigInt::from(k2 as u64 + 4 * step as u64),
            &m,
        );
        let deriv: Vec<BigInt> = cur.iter().enumerate().skip(1).map(|(i, x)| x * i).collect();
        mul_acc(&mut next, &b, &deriv, &-BigInt::one(), &m);
        if step > 0 {
            let s = step as u64;
            mul_acc(
                &mut next,
                &c,
                &prev,
                &BigInt::from(s * (2 * s + k2 as u64 - 2)),
                &m,
            );
        }
        next.iter_mut().for_each(|x| *x = x.mod_floor(&m));
        while next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        prev = std::mem::replace(&mut cur, next);
        if (step + 1) % target.stride == 0 {
            scale = f.mul(&scale, &kappa);
            emit(step + 1, &cur, &scale)?;
        }
    }
    Ok(out)
}
