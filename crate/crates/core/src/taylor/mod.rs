//! Taylor coefficients at CM points: the one-variable recursion obtained by
//! dehomogenizing `ϑ_φ^{[n]} f` with `t = Y/X⁴`,
//!
//! `p_{n+1} = (2k+4n) A p_n - B p_n' + n(n+k-1) C p_{n-1}`,
//!
//! evaluated exactly at `t₀ = F₂(τ₀)/Θ(τ₀)⁴` or modulo a prime power.

mod lifted;
mod modular;
mod poly;
mod preset;

pub use modular::{normalized_sequence_mod, run_recursion_mod, ModPoly};
pub use poly::RatPoly;
pub use preset::{TaylorForm, TaylorPreset};

use num_traits::Zero;
use thiserror::Error;

use crate::arith::{rat, rat_int, ArithError, QuadRat};
use crate::quasimod::{DerivationTable, QuasimodError, WeightedPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaylorError {
    #[error("form must be a homogeneous polynomial in X, Y (got {0})")]
    NotModular(String),
    #[error("derivation table violates the B-shape invariant: {0}")]
    BShape(String),
    #[error("preset {0} has no normalization scale kappa configured")]
    KappaUnresolved(String),
    #[error("{what} is not {p}-integral")]
    BadPrime { p: u64, what: String },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("unknown form {0:?}")]
    UnknownForm(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Quasimod(#[from] QuasimodError),
}

/// Coefficient polynomials of the recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recursion {
    pub a: RatPoly,
    pub b: RatPoly,
    pub c: RatPoly,
}

/// A normalized sequence of Taylor coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSeq {
    pub preset: String,
    pub form: String,
    pub n_start: usize,
    pub values: Vec<QuadRat>,
}

/// `P(X, tX⁴) / X^{k2}` for `P` homogeneous of doubled weight `k2` in `X, Y`.
pub fn dehomogenize(p: &WeightedPoly, k2: u32) -> Result<RatPoly, TaylorError> {
    let bad = || TaylorError::NotModular(p.to_string());
    let mut coeffs = Vec::new();
    for (m, c) in p.terms() {
        if m.2 != 0 || m.0 + 4 * m.1 != k2 {
            return Err(bad());
        }
        let j = m.1 as usize;
        if coeffs.len() <= j {
            coeffs.resize(j + 1, rat_int(0));
        }
        coeffs[j] = c.clone();
    }
    Ok(RatPoly::from_coeffs(coeffs))
}

/// Reads `A, B, C` off `thetaX = X⁵(a+bt)`, `thetaY = X⁸(ct+et²)`,
/// `psi = X⁸(u+vt+wt²)`; `B = -((c-4a)t + (e-4b)t²)`.
pub fn derive_recursion(table: &DerivationTable) -> Result<Recursion, TaylorError> {
    let tx = &table.theta_x;
    let ty = &table.theta_y;
    let (a, b) = (tx.coeff((5, 0, 0)), tx.coeff((1, 1, 0)));
    let (g, c, e) = (
        ty.coeff((8, 0, 0)),
        ty.coeff((4, 1, 0)),
        ty.coeff((0, 2, 0)),
    );
    if !g.is_zero() {
        return Err(TaylorError::BShape(format!("thetaY has an X^8 term {g}")));
    }
    let bt = RatPoly::from_coeffs(vec![
        rat_int(0),
        -(c - &a * rat_int(4)),
        -(e - &b * rat_int(4)),
    ]);
    if bt != RatPoly::from_ints(&[0, -1, 16], 1) {
        return Err(TaylorError::BShape(format!("B = {bt}")));
    }
    Ok(Recursion {
        a: RatPoly::from_coeffs(vec![a, b]),
        b: bt,
        c: dehomogenize(&table.psi, 8)?,
    })
}

/// `p_0, ..., p_n` starting from `p0` for a form of doubled weight `k2`.
pub fn run_recursion(rec: &Recursion, p0: &RatPoly, k2: u32, n: usize) -> Vec<RatPoly> {
    let mut out = vec![p0.clone()];
    let mut prev = RatPoly::zero();
    for m in 0..n {
        let cur = &out[m];
        let mut next = rec
            .a
            .mul(cur)
            .scale(&rat_int(k2 as i64 + 4 * m as i64))
            .sub(&rec.b.mul(&cur.derivative()));
        if m > 0 {
            // m(m + k - 1) with k = k2/2
            let w = rat(m as i64 * (2 * m as i64 + k2 as i64 - 2), 2);
            next = next.add(&rec.c.mul(&prev).scale(&w));
        }
        prev = cur.clone();
        out.push(next);
    }
    out
}

/// `p_n(t_eval)`, the algebraic factor of `∂ⁿf(τ₀) = p_n(t₀) Θ(τ₀)^{4n+2k}`.
pub fn taylor_value(
    preset: &TaylorPreset,
    form: &TaylorForm,
    n: usize,
) -> Result<QuadRat, TaylorError> {
    let (p0, k2) = form.initial()?;
    let ps = run_recursion(&preset.recursion()?, &p0, k2, n);
    Ok(ps[n].eval(&preset.t_eval)?)
}

/// `value(n) = p_{stride n}(t_eval) κⁿ prefactor` for `n < count`.
pub fn normalized_sequence(
    preset: &TaylorPreset,
    form: &TaylorForm,
    count: usize,
) -> Result<CoeffSeq, TaylorError> {
    let kappa = preset
        .kappa
        .clone()
        .ok_or_else(|| TaylorError::KappaUnresolved(preset.label.clone()))?;
    let (p0, k2) = form.initial()?;
    let ps = run_recursion(
        &preset.recursion()?,
        &p0,
        k2,
        preset.stride * count.saturating_sub(1),
    );
    let mut values = Vec::with_capacity(count);
    let mut scale = preset.prefactor.clone();
    for n in 0..count {
        values.push(
            ps[preset.stride * n]
                .eval(&preset.t_eval)?
                .checked_mul(&scale)?,
        );
        scale = scale.checked_mul(&kappa)?;
    }
    Ok(CoeffSeq {
        preset: preset.label.clone(),
        form: form.label(),
        n_start: 0,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasimod::{iterate_serre, serre_derivation};

    fn q(a: (i64, i64), b: (i64, i64), d: u64) -> QuadRat {
        QuadRat::new(rat(a.0, a.1), rat(b.0, b.1), d).unwrap()
    }

    #[test]
    fn dehomogenize_examples() {
        assert_eq!(
            dehomogenize(&WeightedPoly::x(), 1).unwrap(),
            RatPoly::constant(rat_int(1))
        );
        assert_eq!(
            dehomogenize(&WeightedPoly::h52(), 5).unwrap(),
            RatPoly::from_ints(&[1, -20], 120)
        );
        assert_eq!(
            dehomogenize(&WeightedPoly::x().pow(4), 4).unwrap(),
            RatPoly::constant(rat_int(1))
        );
        assert!(dehomogenize(&WeightedPoly::z(), 4).is_err());
        assert!(dehomogenize(&WeightedPoly::x(), 3).is_err());
    }

    #[test]
    fn recursions_of_the_presets() {
        let b = RatPoly::from_ints(&[0, -1, 16], 1);
        let cases = [
            ("i", [-1, 80], 24, [-1, -224, -256], 144),
            ("z7", [-5, 592], 168, [-25, -15584, -6400], 7056),
            ("romik", [-5, 160], 48, [-25, 64, -1024], 576),
        ];
        for (label, a, ad, c, cd) in cases {
            let rec = TaylorPreset::by_label(label).unwrap().recursion().unwrap();
            assert_eq!(rec.a, RatPoly::from_ints(&a, ad), "{label}");
            assert_eq!(rec.b, b, "{label}");
            assert_eq!(rec.c, RatPoly::from_ints(&c, cd), "{label}");
        }
    }

    #[test]
    fn first_steps() {
        let i = TaylorPreset::by_label("i").unwrap();
        let ps = run_recursion(
            &i.recursion().unwrap(),
            &RatPoly::constant(rat_int(1)),
            1,
            1,
        );
        assert_eq!(ps[1], RatPoly::from_ints(&[-1, 80], 24));
        assert_eq!(
            taylor_value(&i, &TaylorForm::Theta, 1).unwrap(),
            q((7, 2), (-5, 2), 2)
        );
        let ip = TaylorPreset::by_label("i-printed").unwrap();
        assert_eq!(
            taylor_value(&ip, &TaylorForm::Theta, 1).unwrap(),
            q((7, 2), (5, 2), 2)
        );
        let r = TaylorPreset::by_label("romik").unwrap();
        assert!(taylor_value(&r, &TaylorForm::Theta, 1).unwrap().is_zero());
        let z = TaylorPreset::by_label("z7").unwrap();
        assert_eq!(
            taylor_value(&z, &TaylorForm::H52, 0).unwrap(),
            q((1065, 800), (-400, 800), 7)
        );
        assert_eq!(
            taylor_value(&z, &TaylorForm::H52, 0).unwrap(),
            q((639, 480), (-240, 480), 7)
        );
    }

    #[test]
    fn triple_agreement() {
        for label in ["i", "romik", "z7"] {
            let preset = TaylorPreset::by_label(label).unwrap();
            let table = serre_derivation(&preset.phi).unwrap();
            let rec = derive_recursion(&table).unwrap();
            for form in [TaylorForm::Theta, TaylorForm::H52, TaylorForm::F2] {
                let (p0, k2) = form.initial().unwrap();
                let ps = run_recursion(&rec, &p0, k2, 12);
                for (n, p) in ps.iter().enumerate() {
                    let it = iterate_serre(&form.poly(), &preset.phi, n).unwrap();
                    assert_eq!(
                        dehomogenize(&it, k2 + 4 * n as u32).unwrap(),
                        *p,
                        "{label} {form:?} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn romik_values() {
        let r = TaylorPreset::by_label("romik").unwrap();
        let s = normalized_sequence(&r, &TaylorForm::Theta, 6).unwrap();
        let expect = [1, 1, -1, 51, 849, -26199];
        for (v, e) in s.values.iter().zip(expect) {
            assert_eq!(*v, QuadRat::from_int(e));
        }
    }

    #[test]
    fn romik_parity_and_integrality() {
        let r = TaylorPreset::by_label("romik").unwrap();
        let ps = run_recursion(
            &r.recursion().unwrap(),
            &RatPoly::constant(rat_int(1)),
            1,
            40,
        );
        let t = rat(1, 32);
        for (n, p) in ps.iter().enumerate() {
            let v = p.eval_rat(&t);
            if n % 2 == 1 {
                assert!(v.is_zero(), "n={n}");
            } else {
                assert!((v * rat_int(32).pow(n as i32 / 2)).is_integer(), "n={n}");
            }
        }
    }

    #[test]
    fn printed_table_prefix() {
        let ip = TaylorPreset::by_label("i-printed").unwrap();
        let s = normalized_sequence(&ip, &TaylorForm::Theta, 6).unwrap();
        let eps = q((1, 1), (1, 1), 2);
        let expect = [
            (1, false),
            (1, true),
            (1, false),
            (-3, true),
            (17, false),
            (9, true),
        ];
        for (v, (c, e)) in s.values.iter().zip(expect) {
            let want = if e {
                eps.scale(&rat_int(c))
            } else {
                QuadRat::from_int(c)
            };
            assert_eq!(*v, want);
        }
    }

    #[test]
    fn z7_needs_kappa() {
        let z = TaylorPreset::by_label("z7").unwrap();
        assert!(matches!(
            normalized_sequence(&z, &TaylorForm::H52, 2),
            Err(TaylorError::KappaUnresolved(_))
        ));
        let z = z.with_kappa(q((8, 1), (3, 1), 7));
        let s = normalized_sequence(&z, &TaylorForm::H52, 1).unwrap();
        assert_eq!(s.values[0], q((72, 1), (-3, 1), 7));
    }
}
