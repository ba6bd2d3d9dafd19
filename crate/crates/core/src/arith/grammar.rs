use std::str::FromStr;

use num_bigint::BigInt;

use super::{ArithError, QuadRat, Rat};

fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let err = || ArithError::Parse(s.to_string());
    match s.split_once('/') {
        None => Ok(Rat::from_integer(s.parse::<BigInt>().map_err(|_| err())?)),
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| err())?;
            if d.starts_with(['-', '+']) {
                return Err(err());
            }
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d == BigInt::from(0) {
                return Err(err());
            }
            Ok(Rat::new(n, d))
        }
    }
}

impl FromStr for QuadRat {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ArithError::Parse(s.to_string());
        let Some(body) = s.strip_prefix('(') else {
            return Ok(QuadRat::from_rat(parse_rat(s)?));
        };
        let (a, rest) = body.split_once(")+(").ok_or_else(err)?;
        let (b, rest) = rest.split_once(")sqrt(").ok_or_else(err)?;
        let d = rest.strip_suffix(')').ok_or_else(err)?;
        let d: u64 = d.parse().map_err(|_| err())?;
        QuadRat::new(parse_rat(a)?, parse_rat(b)?, d)
    }
}
