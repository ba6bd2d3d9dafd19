use std::fmt;
use std::str::FromStr;

use cmtaylor::ResidueQuad;

/// A modulus `p^A` with `p` an odd prime, written `p^A` or `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModSpec {
    pub p: u64,
    pub exp: u32,
}

impl FromStr for ModSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (p, e) = match s.split_once('^') {
            Some((p, e)) => (p, e),
            None => (s, "1"),
        };
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| format!("invalid prime in modulus {s:?}"))?;
        let exp: u32 = e
            .trim()
            .parse()
            .map_err(|_| format!("invalid exponent in modulus {s:?}"))?;
        if exp == 0 {
            return Err(format!("modulus {s:?}: exponent must be at least 1"));
        }
        ResidueQuad::from_int(p, exp, 0).map_err(|e| format!("modulus {s:?}: {e}"))?;
        Ok(Self { p, exp })
    }
}

impl fmt::Display for ModSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.exp)
    }
}

/// `exact` or `mod:p^A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Mod(ModSpec),
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            _ => match s.strip_prefix("mod:") {
                Some(m) => m.parse().map(Mode::Mod),
                None => Err(format!("mode must be exact or mod:p^A, got {s:?}")),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!("5^3".parse::<ModSpec>().unwrap(), ModSpec { p: 5, exp: 3 });
        assert_eq!("13".parse::<ModSpec>().unwrap(), ModSpec { p: 13, exp: 1 });
        assert!("4^2".parse::<ModSpec>().is_err());
        assert!("2^3".parse::<ModSpec>().is_err());
        assert!("5^0".parse::<ModSpec>().is_err());
        assert!("5^40".parse::<ModSpec>().is_err());
        assert_eq!(
            "mod:25".parse::<Mode>(),
            Err("modulus \"25\": 25 is not an odd prime".into())
        );
        assert_eq!("exact".parse::<Mode>().unwrap(), Mode::Exact);
    }
}
