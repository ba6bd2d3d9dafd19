use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{express_in_basis, QuasimodError, WeightedPoly};
use crate::arith::{rat, rat_int, Rat};
use crate::qseries::{e2, f2, theta, QSeries};

/// Order to which symbolic derivations are re-checked on q-expansions.
pub const CROSS_CHECK_ORDER: usize = 100;

/// `φ = E₂/12 + a4·Θ⁴ + aY·F₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiSpec {
    pub a4: Rat,
    pub a_y: Rat,
}

impl PhiSpec {
    pub fn new(a4: Rat, a_y: Rat) -> Self {
        Self { a4, a_y }
    }

    /// `φ = E₂/12`, the plain Serre derivative.
    pub fn serre() -> Self {
        Self::new(Rat::zero(), Rat::zero())
    }

    /// Vanishing completion at `τ = i/2`.
    pub fn romik() -> Self {
        Self::new(rat(1, 8), Rat::zero())
    }

    /// Vanishing completion at `τ = (1 + i√7)/2`.
    pub fn z7() -> Self {
        Self::new(rat(-1, 42), rat(-8, 21))
    }

    pub fn to_poly(&self) -> WeightedPoly {
        WeightedPoly::from_terms([
            ((0, 0, 1), rat(1, 12)),
            ((4, 0, 0), self.a4.clone()),
            ((0, 1, 0), self.a_y.clone()),
        ])
    }

    fn to_qseries(&self, order: usize) -> QSeries {
        let t4 = theta(order).pow(4).expect("power");
        e2(order)
            .scale_rat(&rat(1, 12))
            .add(&t4.scale_rat(&self.a4))
            .and_then(|s| s.add(&f2(order).scale_rat(&self.a_y)))
            .expect("aligned series")
    }
}

/// Images of the generators under `ϑ_φ`, and `ψ = Dφ - φ²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTable {
    pub phi: PhiSpec,
    pub theta_x: WeightedPoly,
    pub theta_y: WeightedPoly,
    pub psi: WeightedPoly,
}

impl DerivationTable {
    /// `ϑ_φ` on a `Z`-free polynomial, as the derivation sending
    /// `X ↦ thetaX`, `Y ↦ thetaY`.
    pub fn apply(&self, p: &WeightedPoly) -> WeightedPoly {
        p.dx().mul(&self.theta_x).add(&p.dy().mul(&self.theta_y))
    }
}

/// `ϑ_φ P = D P - k φ P` for homogeneous `P` of weight `k`.
pub fn serre_apply(p: &WeightedPoly, phi: &PhiSpec) -> Result<WeightedPoly, QuasimodError> {
    let k2 = p.require_k2()?;
    Ok(p.d().sub(&phi.to_poly().mul(p).scale(&rat(k2 as i64, 2))))
}

/// Symbolic derivation table; fails if an `E₂`-part survives.
pub fn serre_derivation_symbolic(phi: &PhiSpec) -> Result<DerivationTable, QuasimodError> {
    let theta_x = serre_apply(&WeightedPoly::x(), phi)?;
    let theta_y = serre_apply(&WeightedPoly::y(), phi)?;
    let f = phi.to_poly();
    let psi = f.d().sub(&f.mul(&f));
    for (name, p) in [("thetaX", &theta_x), ("thetaY", &theta_y), ("psi", &psi)] {
        if !p.is_z_free() {
            return Err(QuasimodError::ZPartNonzero(name));
        }
    }
    Ok(DerivationTable {
        phi: phi.clone(),
        theta_x,
        theta_y,
        psi,
    })
}

/// Derivation table computed symbolically and confirmed by matching the
/// q-expansions of `Df - kφf` and `Dφ - φ²` against the basis.
pub fn serre_derivation(phi: &PhiSpec) -> Result<DerivationTable, QuasimodError> {
    let table = serre_derivation_symbolic(phi)?;
    let n = CROSS_CHECK_ORDER;
    let phis = phi.to_qseries(n);
    let modular = |f: &QSeries, k2: i64| -> Result<QSeries, QuasimodError> {
        Ok(f.derivative().sub(&phis.mul(f).scale_rat(&rat(k2, 2)))?)
    };
    let tx = express_in_basis(&modular(&theta(n), 1)?, 5)?;
    let ty = express_in_basis(&modular(&f2(n), 4)?, 8)?;
    let psi = express_in_basis(&phis.derivative().sub(&phis.mul(&phis))?, 8)?;
    for (name, sym, num) in [
        ("thetaX", &table.theta_x, tx),
        ("thetaY", &table.theta_y, ty),
        ("psi", &table.psi, psi),
    ] {
        if *sym != num {
            return Err(QuasimodError::CrossCheckFailed(name));
        }
    }
    Ok(table)
}

/// `ϑ_φ^{[n]} f` via `ϑ^{[m+1]} = ϑ(ϑ^{[m]}) + m(k+m-1) ψ ϑ^{[m-1]}`.
pub fn iterate_serre(
    f: &WeightedPoly,
    phi: &PhiSpec,
    n: usize,
) -> Result<WeightedPoly, QuasimodError> {
    Ok(iterate_serre_all(f, phi, n)?.pop().expect("n + 1 entries"))
}

/// `ϑ_φ^{[0]} f, ..., ϑ_φ^{[n]} f`.
pub fn iterate_serre_all(
    f: &WeightedPoly,
    phi: &PhiSpec,
    n: usize,
) -> Result<Vec<WeightedPoly>, QuasimodError> {
    let k2 = f.require_k2()? as i64;
    let table = serre_derivation_symbolic(phi)?;
    let step = |p: &WeightedPoly| -> Result<WeightedPoly, QuasimodError> {
        if p.is_z_free() {
            Ok(table.apply(p))
        } else {
            serre_apply(p, phi)
        }
    };
    let mut out = vec![f.clone()];
    for m in 0..n {
        let mut next = step(&out[m])?;
        if m > 0 {
            // m(k + m - 1) with k = k2/2
            let c = rat_int(m as i64) * rat(k2 + 2 * m as i64 - 2, 2);
            next = next.add(&table.psi.mul(&out[m - 1]).scale(&c));
        }
        out.push(next);
    }
    Ok(out)
}
