use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::ArithError;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn vp_int(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Exponent of `p` in the factorization of `x`.
pub fn vp(x: &Rat, p: u64) -> Result<i64, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroValuation);
    }
    let p = BigInt::from(p);
    Ok(vp_int(x.numer(), &p) - vp_int(x.denom(), &p))
}
