use num_traits::{One, Zero};

use crate::arith::{reduce_mod, QuadRat, Rat, ResidueQuad};

/// Coefficient ring of a [`QSeries`](super::QSeries).
///
/// Constants are produced from an existing element (`zero_like`,
/// `one_like`, `rat_like`) so rings whose elements carry context
/// (a modulus, a working precision) need no global state.
pub trait Ring: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;
    fn rat_like(&self, x: &Rat) -> Option<Self>;
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn rat_like(&self, x: &Rat) -> Option<Self> {
        Some(x.clone())
    }
}

impl Ring for QuadRat {
    fn zero_like(&self) -> Self {
        QuadRat::zero()
    }
    fn one_like(&self) -> Self {
        QuadRat::one()
    }
    fn is_zero(&self) -> bool {
        QuadRat::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn rat_like(&self, x: &Rat) -> Option<Self> {
        Some(QuadRat::from_rat(x.clone()))
    }
}

impl Ring for ResidueQuad {
    fn zero_like(&self) -> Self {
        ResidueQuad::from_int(self.p, self.exp, 0).expect("valid modulus")
    }
    fn one_like(&self) -> Self {
        ResidueQuad::from_int(self.p, self.exp, 1).expect("valid modulus")
    }
    fn is_zero(&self) -> bool {
        ResidueQuad::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        *self + *o
    }
    fn minus(&self, o: &Self) -> Self {
        *self - *o
    }
    fn times(&self, o: &Self) -> Self {
        *self * *o
    }
    fn negate(&self) -> Self {
        -*self
    }
    fn try_inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn rat_like(&self, x: &Rat) -> Option<Self> {
        reduce_mod(&QuadRat::from_rat(x.clone()), self.p, self.exp).ok()
    }
}
