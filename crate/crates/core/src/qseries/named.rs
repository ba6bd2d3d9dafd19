//! Constructors for the q-expansions used throughout the crate. All are exact
//! over `Rat`; `order` is the number of coefficients from the leading
//! exponent.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{QSeries, SeriesError};
use crate::arith::nt::{kronecker, mobius, sigma};
use crate::arith::{rat, rat_int, Rat};

/// `Θ = Σ_{n ∈ Z} q^{n²}`.
pub fn theta(order: usize) -> QSeries {
    let order = order.max(1);
    let mut c = vec![Rat::zero(); order];
    c[0] = Rat::one();
    let mut n = 1usize;
    while n * n < order {
        c[n * n] = rat_int(2);
        n += 1;
    }
    QSeries::from_coeffs(0, c)
}

/// Dedekind `η = q^{1/24} Π (1 - q^n)`, from the pentagonal number theorem.
pub fn eta(order: usize) -> QSeries {
    let order = order.max(1);
    let mut c = vec![Rat::zero(); order];
    for k in 0i64.. {
        let mut hit = false;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if (g as usize) < order {
                c[g as usize] = rat_int(sign);
                hit = true;
            }
            if k == 0 {
                break;
            }
        }
        if !hit {
            break;
        }
    }
    QSeries::new(1, c).expect("non-empty")
}

/// `η(m τ)` with `order` coefficients.
pub fn eta_at(m: usize, order: usize) -> QSeries {
    eta(order.div_ceil(m)).rescale(m).truncate(order)
}

/// `F₂ = Σ_{n odd} σ₁(n) q^n`.
pub fn f2(order: usize) -> QSeries {
    let c = (0..order.max(1) as u64)
        .map(|n| {
            if n % 2 == 1 {
                Rat::from_integer(sigma(1, n))
            } else {
                Rat::zero()
            }
        })
        .collect();
    QSeries::from_coeffs(0, c)
}

/// `E₂ = 1 - 24 Σ σ₁(n) q^n`.
pub fn e2(order: usize) -> QSeries {
    let c = (0..order.max(1) as u64)
        .map(|n| {
            if n == 0 {
                Rat::one()
            } else {
                Rat::from_integer(sigma(1, n) * -24)
            }
        })
        .collect();
    QSeries::from_coeffs(0, c)
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`, from
/// `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    b.push(Rat::one());
    for m in 1..=n {
        let mut binom = BigInt::one(); // C(m+1, j)
        let mut acc = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rat::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        // binom is now C(m+1, m)
        b.push(-acc / Rat::from_integer(binom));
    }
    b
}

pub fn bernoulli(k: usize) -> Rat {
    bernoulli_numbers(k).pop().expect("at least B_0")
}

/// `E_k = 1 - (2k / B_k) Σ σ_{k-1}(n) q^n` for even `k >= 4`.
pub fn eisenstein(k: i64, order: usize) -> Result<QSeries, SeriesError> {
    if k < 4 || k % 2 != 0 {
        return Err(SeriesError::InvalidWeight(k));
    }
    let factor = -rat_int(2 * k) / bernoulli(k as usize);
    let c = (0..order.max(1) as u64)
        .map(|n| {
            if n == 0 {
                Rat::one()
            } else {
                &factor * Rat::from_integer(sigma(k as u32 - 1, n))
            }
        })
        .collect();
    Ok(QSeries::from_coeffs(0, c))
}

/// `Δ = η^24 = q Π (1 - q^n)^24`, starting at `q^0` with a zero constant term.
pub fn delta(order: usize) -> QSeries {
    let order = order.max(2);
    let e = eta(order - 1).pow(24).expect("positive power");
    let mut c = vec![Rat::zero()];
    c.extend(e.coeffs().iter().cloned());
    QSeries::from_coeffs(0, c)
}

fn squarefree_part(mut n: u64) -> (u64, u64) {
    // n = s * f^2 with s squarefree
    let (mut s, mut f) = (1u64, 1u64);
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            s *= p;
        }
        f *= p.pow(e / 2);
        p += 1;
    }
    (s * n, f)
}

/// `L(-1, χ_D) = -B_{2,χ}/2` for a positive fundamental discriminant `D`.
fn l_value_minus_one(disc: u64) -> Rat {
    // B_{2,χ} = F Σ_{a=1}^{F} χ(a) B_2(a/F), B_2(x) = x² - x + 1/6
    let f = disc as i64;
    let mut acc = Rat::zero();
    for a in 1..=f {
        let chi = kronecker(disc as i64, a as u64);
        if chi == 0 {
            continue;
        }
        let x = rat(a, f);
        let b2 = &x * &x - &x + rat(1, 6);
        acc += b2 * rat_int(chi as i64);
    }
    -(acc * rat_int(f)) / rat_int(2)
}

/// Coefficient `H(2, N)` of the Cohen–Eisenstein series of weight 5/2.
pub fn h52_coefficient(n: u64) -> Rat {
    if n == 0 {
        // ζ(-3)
        return rat(1, 120);
    }
    if n % 4 == 2 || n % 4 == 3 {
        return Rat::zero();
    }
    let (s, f) = squarefree_part(n);
    let (disc, cond) = if s % 4 == 1 { (s, f) } else { (4 * s, f / 2) };
    debug_assert_eq!(disc * cond * cond, n);
    let mut sum = Rat::zero();
    for d in 1..=cond {
        if cond % d != 0 {
            continue;
        }
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let chi = kronecker(disc as i64, d) as i64;
        sum += Rat::from_integer(sigma(3, cond / d) * (mu * chi * d as i64));
    }
    l_value_minus_one(disc) * sum
}

/// Cohen–Eisenstein series `H_{5/2} = Σ H(2, N) q^N`.
pub fn h52(order: usize) -> QSeries {
    QSeries::from_coeffs(0, (0..order.max(1) as u64).map(h52_coefficient).collect())
}
