//! The recursion with coefficients reduced modulo `p^A` at every step.

use super::lifted::{clearing_denominator, normalized_lifted, p_divides, Target};
use super::{RatPoly, Recursion, TaylorError, TaylorForm, TaylorPreset};
use crate::arith::nt::mul_mod;
use crate::arith::{modulus_of, rat, reduce_mod, reduce_rat, ArithError, Rat, ResidueQuad};

/// Polynomial over `Z/m`, low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    pub modulus: u64,
    pub coeffs: Vec<u64>,
}

impl ModPoly {
    fn reduce(p: &RatPoly, prime: u64, m: u64, what: &str) -> Result<Self, TaylorError> {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| reduce_or_bad(c, prime, m, what))
            .collect::<Result<_, _>>()?;
        Ok(Self { modulus: m, coeffs })
    }

    /// Horner evaluation at a residue of the same modulus.
    pub fn eval(&self, t: &ResidueQuad) -> ResidueQuad {
        let zero = ResidueQuad {
            a: 0,
            b: 0,
            d: 1,
            ..*t
        };
        self.coeffs.iter().rev().fold(zero, |acc, &c| {
            let c = ResidueQuad {
                a: c,
                b: 0,
                d: 1,
                ..*t
            };
            acc * *t + c
        })
    }
}

fn reduce_or_bad(x: &Rat, p: u64, m: u64, what: &str) -> Result<u64, TaylorError> {
    reduce_rat(x, p, m).map_err(|e| match e {
        ArithError::NotPIntegral { .. } => TaylorError::BadPrime {
            p,
            what: what.into(),
        },
        e => e.into(),
    })
}

/// `out += s * (f * g)` where `f` is short.
fn mul_acc(out: &mut [u64], f: &[u64], g: &[u64], s: u64, m: u64) {
    for (i, &fi) in f.iter().enumerate() {
        if fi == 0 {
            continue;
        }
        let c = mul_mod(fi, s, m);
        for (j, &gj) in g.iter().enumerate() {
            if gj != 0 {
                let k = i + j;
                out[k] = (out[k] + mul_mod(c, gj, m)) % m;
            }
        }
    }
}

/// Runs the recursion mod `p^exp` up to `p_n`, calling `visit(m, p_m)` for
/// every `m`. Only two polynomials are kept alive.
pub fn run_recursion_mod(
    rec: &Recursion,
    p0: &RatPoly,
    k2: u32,
    n: usize,
    p: u64,
    exp: u32,
    mut visit: impl FnMut(usize, &ModPoly),
) -> Result<(), TaylorError> {
    let m = modulus_of(p, exp)?;
    let a = ModPoly::reduce(&rec.a, p, m, "A")?.coeffs;
    let b = ModPoly::reduce(&rec.b, p, m, "B")?.coeffs;
    let c = ModPoly::reduce(&rec.c, p, m, "C")?.coeffs;
    let half = reduce_or_bad(&rat(1, 2), p, m, "2")?;
    let mut cur = ModPoly::reduce(p0, p, m, "p0")?;
    let mut prev = ModPoly {
        modulus: m,
        coeffs: Vec::new(),
    };
    visit(0, &cur);
    for step in 0..n {
        let len = cur.coeffs.len().max(prev.coeffs.len()) + 2;
        let mut next = vec![0u64; len];
        let alpha = (k2 as u64 + 4 * step as u64) % m;
        mul_acc(&mut next, &a, &cur.coeffs, alpha, m);
        let deriv: Vec<u64> = cur
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| mul_mod(x, i as u64 % m, m))
            .collect();
        mul_acc(&mut next, &b, &deriv, m - 1, m);
        if step > 0 {
            let s = step as u64;
            let w = mul_mod(mul_mod(s % m, (2 * s + k2 as u64 - 2) % m, m), half, m);
            mul_acc(&mut next, &c, &prev.coeffs, w, m);
        }
        while next.last() == Some(&0) {
            next.pop();
        }
        prev = std::mem::replace(
            &mut cur,
            ModPoly {
                modulus: m,
                coeffs: next,
            },
        );
        visit(step + 1, &cur);
    }
    Ok(())
}

/// `p_{stride n}(t_eval) κⁿ prefactor mod p^exp` for `n < count`. Primes
/// dividing a denominator of the recursion take a slower lifted path.
pub fn normalized_sequence_mod(
    preset: &TaylorPreset,
    form: &TaylorForm,
    count: usize,
    p: u64,
    exp: u32,
) -> Result<Vec<ResidueQuad>, TaylorError> {
    let kappa = preset
        .kappa
        .clone()
        .ok_or_else(|| TaylorError::KappaUnresolved(preset.label.clone()))?;
    let rec = preset.recursion()?;
    let (p0, k2) = form.initial()?;
    if p_divides(&clearing_denominator(&rec), p) || p_divides(p0.denominator(), p) {
        let target = Target {
            t: &preset.t_eval,
            kappa: &kappa,
            prefactor: &preset.prefactor,
            stride: preset.stride,
            count,
        };
        return normalized_lifted(&rec, &p0, k2, &target, p, exp);
    }
    let bad = |what: &str| {
        let what = what.to_string();
        move |e: ArithError| match e {
            ArithError::NotPIntegral { .. } => TaylorError::BadPrime {
                p,
                what: what.clone(),
            },
            e => e.into(),
        }
    };
    let t = reduce_mod(&preset.t_eval, p, exp).map_err(bad("t_eval"))?;
    let kappa = reduce_mod(&kappa, p, exp).map_err(bad("kappa"))?;
    let mut scale = reduce_mod(&preset.prefactor, p, exp).map_err(bad("prefactor"))?;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    let last = preset.stride * (count - 1);
    run_recursion_mod(&rec, &p0, k2, last, p, exp, |m, poly| {
        if m % preset.stride == 0 {
            out.push(poly.eval(&t) * scale);
            scale = scale * kappa;
        }
    })?;
    Ok(out)
}
