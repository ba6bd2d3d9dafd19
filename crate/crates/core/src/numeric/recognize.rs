//! Recognition of floating values as rationals or elements of `Q(√d)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BigFloat, NumericError};
use crate::arith::{QuadRat, Rat};

/// The continued-fraction convergent of `x` with the largest denominator
/// `<= den_bound`, accepted if it agrees with `x` to half of `x`'s bits.
pub fn rational_reconstruct(x: &BigFloat, den_bound: &BigInt) -> Result<Rat, NumericError> {
    let target = x.to_rat();
    let tol = Rat::new(BigInt::one(), BigInt::one() << (x.bits() / 2) as usize);
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rem = target.clone();
    let mut best: Option<Rat> = None;
    for _ in 0..10_000 {
        let a = rem.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > den_bound {
            break;
        }
        let conv = Rat::new(h2.clone(), k2.clone());
        if (&conv - &target).abs() <= tol {
            best = Some(conv);
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = &rem - Rat::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rem = frac.recip();
    }
    best.ok_or(NumericError::NotRecognized)
}

/// LLL reduction (δ = 3/4) of the rows of `b`, exact over `Q`.
fn lll(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    let gram_schmidt = |b: &[Vec<BigInt>]| {
        let mut bstar: Vec<Vec<Rat>> = Vec::with_capacity(n);
        let mut mu = vec![vec![Rat::zero(); n]; n];
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<Rat> = b[i].iter().cloned().map(Rat::from_integer).collect();
            for j in 0..i {
                let num: Rat = b[i]
                    .iter()
                    .zip(&bstar[j])
                    .map(|(a, c)| Rat::from_integer(a.clone()) * c)
                    .sum();
                mu[i][j] = if norms[j] == Rat::zero() {
                    Rat::zero()
                } else {
                    num / &norms[j]
                };
                for (x, y) in v.iter_mut().zip(&bstar[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            norms.push(v.iter().map(|x| x * x).sum::<Rat>());
            bstar.push(v);
        }
        (mu, norms)
    };
    let delta = Rat::new(3.into(), 4.into());
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 100_000 {
        guard += 1;
        let (mu, _) = gram_schmidt(&b);
        for j in (0..k).rev() {
            let q = mu[k][j].round().to_integer();
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
            }
        }
        let (mu, norms) = gram_schmidt(&b);
        if norms[k] >= (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Finds `a + b√d` with `|x - (a + b√d)|` below `10^{-(digits - 5)}`, where
/// the integer relation `c0 + c1√d + c2 x = 0` is searched at `digits/2`
/// digits and `|c2| <= denom_bound`.
pub fn recognize_quad(
    x: &BigFloat,
    d: u64,
    denom_bound: &BigInt,
    digits: u32,
) -> Result<QuadRat, NumericError> {
    let bits = x.bits();
    let confirm = |v: &QuadRat| -> bool {
        let f = quad_to_float(v, bits);
        f.rel_close_to(x, digits.saturating_sub(5))
    };
    if d == 1 {
        let r = rational_reconstruct(x, denom_bound)?;
        let v = QuadRat::from_rat(r);
        return if confirm(&v) {
            Ok(v)
        } else {
            Err(NumericError::NotRecognized)
        };
    }
    let sd = BigFloat::from_int(d as i64, bits).sqrt()?;
    let scale = BigFloat::parse_with_bits(&format!("1e{}", digits / 2), bits)?;
    let col = |v: &BigFloat| v.mul(&scale).round();
    let rows = vec![
        vec![
            BigInt::one(),
            BigInt::zero(),
            BigInt::zero(),
            col(&BigFloat::one(bits)),
        ],
        vec![BigInt::zero(), BigInt::one(), BigInt::zero(), col(&sd)],
        vec![BigInt::zero(), BigInt::zero(), BigInt::one(), col(x)],
    ];
    for row in lll(rows) {
        let (c0, c1, c2) = (&row[0], &row[1], &row[2]);
        if c2.is_zero() || &c2.abs() > denom_bound {
            continue;
        }
        let den = Rat::from_integer(-c2.clone());
        let v = QuadRat::new(
            Rat::from_integer(c0.clone()) / &den,
            Rat::from_integer(c1.clone()) / &den,
            d,
        )?;
        if confirm(&v) {
            return Ok(v);
        }
    }
    Err(NumericError::NotRecognized)
}

pub fn quad_to_float(v: &QuadRat, bits: u32) -> BigFloat {
    let a = BigFloat::from_rat(v.a(), bits);
    if v.b().is_zero() {
        return a;
    }
    let sd = BigFloat::from_int(v.d() as i64, bits)
        .sqrt()
        .expect("d > 0");
    a.add(&BigFloat::from_rat(v.b(), bits).mul(&sd))
}
