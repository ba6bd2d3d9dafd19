use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::QuasimodError;
use crate::arith::{rat, rat_int, Rat};

/// Exponents `(i, j, l)` of `X^i Y^j Z^l`.
pub type Monomial = (u32, u32, u32);

pub fn monomial_k2(m: &Monomial) -> u32 {
    m.0 + 4 * m.1 + 4 * m.2
}

/// Polynomial in `X, Y, Z` with rational coefficients; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightedPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl WeightedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial((0, 0, 0), c)
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::monomial((1, 0, 0), Rat::one())
    }

    pub fn y() -> Self {
        Self::monomial((0, 1, 0), Rat::one())
    }

    pub fn z() -> Self {
        Self::monomial((0, 0, 1), Rat::one())
    }

    /// `Θ⁸ + 224Θ⁴F₂ + 256F₂²`, the weight-4 Eisenstein series.
    pub fn e4() -> Self {
        Self::from_terms([
            ((8, 0, 0), rat_int(1)),
            ((4, 1, 0), rat_int(224)),
            ((0, 2, 0), rat_int(256)),
        ])
    }

    /// `(Θ⁵ - 20ΘF₂)/120`, the Cohen–Eisenstein series of weight 5/2.
    pub fn h52() -> Self {
        Self::from_terms([((5, 0, 0), rat(1, 120)), ((1, 1, 0), rat(-1, 6))])
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rat {
        self.terms.get(&m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Doubled weight if every monomial has the same weight. The zero
    /// polynomial is homogeneous of every weight and reports `None`.
    pub fn homogeneous_k2(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(monomial_k2);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn require_k2(&self) -> Result<u32, QuasimodError> {
        match self.homogeneous_k2() {
            Some(k) => Ok(k),
            None if self.is_zero() => Ok(0),
            None => Err(QuasimodError::NotHomogeneous),
        }
    }

    /// Highest power of `Z`.
    pub fn depth(&self) -> u32 {
        self.terms.keys().map(|m| m.2).max().unwrap_or(0)
    }

    pub fn is_z_free(&self) -> bool {
        self.depth() == 0
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term((m1.0 + m2.0, m1.1 + m2.1, m1.2 + m2.2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rat::one()), |acc, _| acc.mul(self))
    }

    fn partial(&self, var: usize) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let e = [m.0, m.1, m.2][var];
            if e == 0 {
                continue;
            }
            let mut n = [m.0, m.1, m.2];
            n[var] -= 1;
            r.add_term((n[0], n[1], n[2]), c * rat_int(e as i64));
        }
        r
    }

    pub fn dx(&self) -> Self {
        self.partial(0)
    }

    pub fn dy(&self) -> Self {
        self.partial(1)
    }

    pub fn dz(&self) -> Self {
        self.partial(2)
    }

    /// The derivation `D = q d/dq` on `Q[X, Y, Z]`:
    /// `DX = (80XY - X⁵)/24 + XZ/24`, `DY = (5X⁴Y - 16Y²)/6 + YZ/6`,
    /// `DZ = (Z² - E₄)/12`.
    pub fn d(&self) -> Self {
        let dx = Self::from_terms([
            ((1, 1, 0), rat(80, 24)),
            ((5, 0, 0), rat(-1, 24)),
            ((1, 0, 1), rat(1, 24)),
        ]);
        let dy = Self::from_terms([
            ((4, 1, 0), rat(5, 6)),
            ((0, 2, 0), rat(-16, 6)),
            ((0, 1, 1), rat(1, 6)),
        ]);
        let dz = Self::z()
            .mul(&Self::z())
            .sub(&Self::e4())
            .scale(&rat(1, 12));
        self.dx()
            .mul(&dx)
            .add(&self.dy().mul(&dy))
            .add(&self.dz().mul(&dz))
    }

    /// Substitutes ring values for `X, Y, Z`.
    pub fn eval_with<R: crate::qseries::Ring>(&self, x: &R, y: &R, z: &R) -> R {
        let one = x.one_like();
        let pw = |b: &R, e: u32| (0..e).fold(one.clone(), |a, _| a.times(b));
        let mut acc = x.zero_like();
        for (m, c) in &self.terms {
            let c = x.rat_like(c).expect("rational constant in ring");
            let t = c.times(&pw(x, m.0)).times(&pw(y, m.1)).times(&pw(z, m.2));
            acc = acc.plus(&t);
        }
        acc
    }

    fn canonical_order(&self) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| (monomial_k2(m), **m));
        v
    }
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.canonical_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts = Vec::new();
            if !abs.is_one() || *m == (0, 0, 0) {
                parts.push(abs.to_string());
            }
            for (name, e) in [("X", m.0), ("Y", m.1), ("Z", m.2)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_depth() {
        let p = WeightedPoly::x().pow(4).add(&WeightedPoly::z());
        assert_eq!(p.homogeneous_k2(), Some(4));
        assert_eq!(p.depth(), 1);
        assert!(WeightedPoly::x()
            .add(&WeightedPoly::y())
            .require_k2()
            .is_err());
        assert_eq!(WeightedPoly::h52().homogeneous_k2(), Some(5));
    }

    #[test]
    fn d_of_constant_is_zero() {
        assert!(WeightedPoly::constant(rat(3, 7)).d().is_zero());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(WeightedPoly::e4().to_string(), "256*Y^2 + 224*X^4*Y + X^8");
        assert_eq!(WeightedPoly::h52().to_string(), "-1/6*X*Y + 1/120*X^5");
        assert_eq!(WeightedPoly::constant(rat(-1, 2)).to_string(), "-1/2");
    }

    #[test]
    fn evaluation() {
        let v = WeightedPoly::e4().eval_with(&rat_int(1), &rat(1, 2), &rat_int(9));
        assert_eq!(v, rat_int(1 + 112 + 64));
    }
}
