//! Values of q-expansions, raising operators and almost holomorphic forms at
//! points of the upper half-plane.

use num_traits::{Signed, ToPrimitive, Zero};

use super::{digits_to_bits, functions, BigComplex, BigFloat, CmPoint, NumericError, GUARD_DIGITS};
use crate::arith::{rat, Rat};
use crate::qseries::{e2, f2, theta, QSeries};
use crate::quasimod::WeightedPoly;

/// Smallest `N` with `(N+2)^growth |q|^N < 10^{-(digits + 5)}`.
pub fn required_order(point: &CmPoint, digits: u32, growth: u32) -> usize {
    let lq = point.log10_abs_q();
    let mut n = 1usize;
    while growth as f64 * ((n + 2) as f64).log10() + n as f64 * lq > -(digits as f64 + 5.0) {
        n += 1;
    }
    n
}

fn log10_abs(r: &Rat) -> f64 {
    let n = r.numer().abs();
    let d = r.denom();
    let ln = |b: &num_bigint::BigInt| {
        let bits = b.bits() as i64;
        let drop = (bits - 60).max(0);
        (b >> drop as usize).to_f64().expect("60 bits").log10()
            + drop as f64 * std::f64::consts::LOG10_2
    };
    ln(&n) - ln(d)
}

/// Bound on the discarded tail of `f` at `point`, as `log10`, assuming the
/// coefficients keep growing no faster than the fitted `(j+2)^G`.
pub fn tail_log10(f: &QSeries, point: &CmPoint) -> f64 {
    let mut g: f64 = 1.0;
    let mut c: f64 = f64::NEG_INFINITY;
    for (j, x) in f.coeffs().iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let l = log10_abs(x);
        c = c.max(l);
        if j >= 1 {
            g = g.max(l / ((j + 2) as f64).log10());
        }
    }
    if c == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let g = g.ceil() + 1.0;
    let n = f.order() as f64;
    let start = f.offset24() as f64 / 24.0;
    let lq = point.log10_abs_q();
    // ratio of consecutive bound terms
    let ratio = g * ((n + 3.0) / (n + 2.0)).log10() + lq;
    if ratio >= 0.0 {
        return f64::INFINITY;
    }
    g * (n + 2.0).log10() + (start + n) * lq - (1.0 - 10f64.powf(ratio)).log10()
}

fn eval_bits(f: &QSeries, point: &CmPoint, bits: u32) -> BigComplex {
    let q = point.q_power(&Rat::from_integer(1.into()), bits);
    let lead = point.q_power(&rat(f.offset24(), 24), bits);
    // Horner in q
    let mut acc = BigComplex::zero(bits);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(&q);
        if !c.is_zero() {
            acc = acc.add(&BigComplex::real(BigFloat::from_rat(c, bits)));
        }
    }
    acc.mul(&lead)
}

/// `Σ c_j e^{2πi a_j τ}` to `digits` decimal digits.
pub fn eval_qseries(f: &QSeries, point: &CmPoint, digits: u32) -> Result<BigComplex, NumericError> {
    let tail = tail_log10(f, point);
    if tail > -(digits as f64) {
        return Err(NumericError::InsufficientTruncation {
            order: f.order(),
            digits,
        });
    }
    Ok(eval_bits(f, point, digits_to_bits(digits + GUARD_DIGITS)))
}

/// The components `G_j` of `∂ⁿ f = Σ_j G_j Y^j`, `Y = -1/(4πy)`, obtained by
/// iterating `∂_w g = Dg + w Y g` with `DY = -Y²`.
pub fn raising_components(f: &QSeries, k2: u32, n: usize) -> Vec<QSeries> {
    let mut g = vec![f.clone()];
    for m in 0..n {
        let w = rat(k2 as i64 + 4 * m as i64, 2);
        let mut next: Vec<QSeries> = g.iter().map(QSeries::derivative).collect();
        next.push(g[0].scale_rat(&Rat::zero()));
        for j in 0..g.len() {
            // Y^{j+1} picks up (w - j) G_j
            let c = &w - Rat::from_integer(j.into());
            next[j + 1] = next[j + 1].add(&g[j].scale_rat(&c)).expect("aligned");
        }
        g = next;
    }
    g
}

/// `∂ⁿ f (τ₀)` for `f` of doubled weight `k2`.
pub fn raising(
    f: &QSeries,
    k2: u32,
    n: usize,
    point: &CmPoint,
    digits: u32,
) -> Result<BigComplex, NumericError> {
    let bits = digits_to_bits(digits + GUARD_DIGITS);
    let comps = raising_components(f, k2, n);
    let y_val = functions::pi(bits)
        .mul(&point.y(bits))
        .mul_int(-4)
        .recip()?;
    let mut acc = BigComplex::zero(bits);
    let mut ypow = BigFloat::one(bits);
    for g in &comps {
        acc = acc.add(&eval_qseries(g, point, digits)?.scale(&ypow));
        ypow = ypow.mul(&y_val);
    }
    Ok(acc)
}

/// `(Θ(τ₀), F₂(τ₀), E₂*(τ₀))`.
pub fn generator_values(point: &CmPoint, digits: u32) -> Result<[BigComplex; 3], NumericError> {
    let n = required_order(point, digits + GUARD_DIGITS, 3);
    let bits = digits_to_bits(digits + GUARD_DIGITS);
    let th = eval_qseries(&theta(n), point, digits)?;
    let f = eval_qseries(&f2(n), point, digits)?;
    let e = eval_qseries(&e2(n), point, digits)?;
    let corr = functions::pi(bits).mul(&point.y(bits)).recip()?.mul_int(3);
    Ok([th, f, e.sub(&BigComplex::real(corr))])
}

/// Substitutes `Θ(τ₀)`, `F₂(τ₀)` and `E₂*(τ₀) = E₂(τ₀) - 3/(πy₀)` into `P`.
pub fn almost_holo_value(
    p: &WeightedPoly,
    point: &CmPoint,
    digits: u32,
) -> Result<BigComplex, NumericError> {
    let [x, y, z] = generator_values(point, digits)?;
    Ok(p.eval_with(&x, &y, &z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{eisenstein, h52};

    const D: u32 = 60;

    fn f(s: &str) -> BigFloat {
        BigFloat::parse_with_bits(s, 300).unwrap()
    }

    #[test]
    fn theta_at_i() {
        let v = eval_qseries(&theta(30), &CmPoint::i(), D).unwrap();
        assert!(v.re.close_to(
            &f("1.003734885487739091047679595066953866207994332444519408254958153247325"),
            45
        ));
        assert!(v.im.close_to(&BigFloat::zero(300), 50));
    }

    #[test]
    fn truncation_is_checked() {
        assert!(matches!(
            eval_qseries(&theta(3), &CmPoint::i(), D),
            Err(NumericError::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn e12_at_z7() {
        let n = required_order(&CmPoint::z7(), 40, 12);
        let v = eval_qseries(&eisenstein(12, n).unwrap(), &CmPoint::z7(), 40).unwrap();
        assert_eq!(v.re.to_string_digits(8), "0.98818418");
    }

    #[test]
    fn romik_t_value() {
        let [th, fv, _] = generator_values(&CmPoint::i_half(), D).unwrap();
        let t = fv.div(&th.pow_u(4)).unwrap();
        assert!(t.re.close_to(&f("0.03125"), 55));
    }

    #[test]
    fn raising_examples() {
        let p = CmPoint::i();
        let n = required_order(&p, D + 10, 12);
        let th = theta(n);
        let r1 = raising(&th, 1, 1, &p, D).unwrap();
        assert_eq!(r1.re.to_string_digits(6), "-0.0362025");
        let [t, _, _] = generator_values(&p, D).unwrap();
        let s2 = BigFloat::from_int(2, 300).sqrt().unwrap();
        let alg = f("3.5").sub(&s2.mul(&f("2.5")));
        assert!(r1.re.close_to(&t.pow_u(5).re.mul(&alg), 50));
        let r0 = raising(&th, 1, 0, &p, D).unwrap();
        assert!(r0.rel_close_to(&eval_qseries(&th, &p, D).unwrap(), 55));

        let h = CmPoint::i_half();
        let r2 = raising(&theta(required_order(&h, D + 10, 12)), 1, 2, &h, D).unwrap();
        assert_eq!(r2.re.to_string_digits(10), "0.06589964513");
        let [th, _, _] = generator_values(&h, D).unwrap();
        assert!(r2.rel_close_to(&th.pow_u(9).div_int(32), 50));
    }

    #[test]
    fn e2_star_values() {
        let z = almost_holo_value(&WeightedPoly::z(), &CmPoint::i(), D).unwrap();
        assert!(z.abs().close_to(&BigFloat::zero(300), 55));
        let p = CmPoint::z7();
        let ratio = almost_holo_value(&WeightedPoly::z(), &p, D)
            .unwrap()
            .div(&almost_holo_value(&WeightedPoly::x().pow(4), &p, D).unwrap())
            .unwrap();
        let s7 = BigFloat::from_int(7, 300).sqrt().unwrap();
        let want = s7.mul_int(96).sub(&BigFloat::from_int(252, 300)).div_int(7);
        assert!(ratio.re.close_to(&want, 50) && ratio.im.close_to(&BigFloat::zero(300), 50));
    }

    #[test]
    fn almost_holomorphic_correspondence() {
        // X·D^n(P_H) evaluated with E₂* equals Θ·∂ⁿH
        for p in [CmPoint::i(), CmPoint::z7()] {
            let n_ord = required_order(&p, D + 10, 16);
            let hs = h52(n_ord);
            let th = eval_qseries(&theta(n_ord), &p, D).unwrap();
            let mut poly = WeightedPoly::h52();
            for n in 0..=4 {
                let lhs = almost_holo_value(&WeightedPoly::x().mul(&poly), &p, D).unwrap();
                let rhs = th.mul(&raising(&hs, 5, n, &p, D).unwrap());
                assert!(lhs.rel_close_to(&rhs, 45), "{} n={n}", p.label);
                poly = poly.d();
            }
        }
    }
}
