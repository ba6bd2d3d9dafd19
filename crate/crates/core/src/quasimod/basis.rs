use std::collections::HashMap;

use num_traits::Zero;

use super::{QuasimodError, WeightedPoly};
use crate::arith::Rat;
use crate::qseries::{e2, f2, theta, QSeries};

struct Powers {
    base: QSeries,
    cache: HashMap<u32, QSeries>,
}

impl Powers {
    fn new(base: QSeries) -> Self {
        Self {
            base,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, e: u32) -> QSeries {
        if let Some(s) = self.cache.get(&e) {
            return s.clone();
        }
        let s = self.base.pow(e as i64).expect("non-negative power");
        self.cache.insert(e, s.clone());
        s
    }
}

/// q-expansion of `p` with `order` coefficients from `q^0`.
pub fn to_qseries(p: &WeightedPoly, order: usize) -> QSeries {
    let order = order.max(1);
    let (mut xs, mut ys, mut zs) = (
        Powers::new(theta(order)),
        Powers::new(f2(order)),
        Powers::new(e2(order)),
    );
    let mut acc = vec![Rat::zero(); order];
    for (m, c) in p.terms() {
        let t = xs.get(m.0).mul(&ys.get(m.1)).mul(&zs.get(m.2));
        // terms() of F₂-powers start at q^j; realign to q^0
        let start = (t.offset24() / 24) as usize;
        for (k, v) in t.coeffs().iter().enumerate() {
            if start + k < order {
                acc[start + k] += v * c;
            }
        }
    }
    QSeries::from_coeffs(0, acc)
}

/// Writes `f` as a polynomial in `Θ` and `F₂` of doubled weight `k2`.
///
/// `X^i Y^j` starts at `q^j` with leading coefficient 1, so the system is
/// triangular; the remaining coefficients up to `f.order()` are checked.
pub fn express_in_basis(f: &QSeries, k2: u32) -> Result<WeightedPoly, QuasimodError> {
    let jmax = k2 / 4;
    let order = f.order() + (f.offset24() / 24).max(0) as usize;
    if f.offset24() % 24 != 0 || f.offset24() < 0 {
        return Err(QuasimodError::NotInAlgebra { k2, at: 0 });
    }
    if order <= jmax as usize {
        return Err(QuasimodError::TooFewCoefficients {
            have: order,
            need: jmax as usize + 1,
        });
    }
    let mut residual: Vec<Rat> = (0..order as i64)
        .map(|n| f.coeff(n).unwrap_or_else(Rat::zero))
        .collect();
    let mut out = WeightedPoly::zero();
    for j in 0..=jmax {
        let c = residual[j as usize].clone();
        if c.is_zero() {
            continue;
        }
        let m = (k2 - 4 * j, j, 0);
        let s = to_qseries(
            &WeightedPoly::monomial(m, Rat::from_integer(1.into())),
            order,
        );
        for (r, v) in residual.iter_mut().zip(s.coeffs()) {
            *r -= v * &c;
        }
        out = out.add(&WeightedPoly::monomial(m, c));
    }
    if let Some(at) = residual.iter().position(|r| !r.is_zero()) {
        return Err(QuasimodError::NotInAlgebra { k2, at });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::qseries::{eisenstein, h52};

    #[test]
    fn e4_and_h52_expansions() {
        assert!(to_qseries(&WeightedPoly::e4(), 30).agrees_with(&eisenstein(4, 30).unwrap(), 30));
        assert!(to_qseries(&WeightedPoly::h52(), 30).agrees_with(&h52(30), 30));
    }

    #[test]
    fn recovers_polynomials() {
        assert_eq!(
            express_in_basis(&eisenstein(4, 20).unwrap(), 8).unwrap(),
            WeightedPoly::e4()
        );
        assert_eq!(express_in_basis(&h52(20), 5).unwrap(), WeightedPoly::h52());
        let e6 = eisenstein(6, 24).unwrap();
        let p = express_in_basis(&e6, 12).unwrap();
        assert_eq!(p.coeff((12, 0, 0)), rat_int(1));
        assert!(to_qseries(&p, 24).agrees_with(&e6, 24));
    }

    #[test]
    fn rejects_non_members() {
        // E₂ has weight 2 but is not a polynomial in Θ, F₂
        assert!(matches!(
            express_in_basis(&e2(20), 4),
            Err(QuasimodError::NotInAlgebra { .. })
        ));
        assert!(matches!(
            express_in_basis(&theta(2), 12),
            Err(QuasimodError::TooFewCoefficients { .. })
        ));
    }
}
