//! `FromStr` for [`WeightedPoly`]: sums and products of rationals and the
//! generators `X`, `Y`, `Z` (aliases `Theta`, `F2`, `E2`), with `^`, `/` by
//! constants, and parentheses.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{QuasimodError, WeightedPoly};
use crate::arith::Rat;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self) -> QuasimodError {
        QuasimodError::Parse(self.src.to_string())
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..]
                .chars()
                .next()
                .map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<WeightedPoly, QuasimodError> {
        let mut acc = if self.eat("-") {
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            if self.eat("+") {
                acc = acc.add(&self.term()?);
            } else if self.eat("-") {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WeightedPoly, QuasimodError> {
        let mut acc = self.power()?;
        loop {
            if self.eat("*") {
                acc = acc.mul(&self.power()?);
            } else if self.eat("/") {
                let d = self.power()?;
                let c = d.coeff((0, 0, 0));
                if d.len() != 1 || c.is_zero() {
                    return Err(self.err());
                }
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<WeightedPoly, QuasimodError> {
        let base = self.atom()?;
        if self.eat("^") {
            self.skip_ws();
            let e = self.digits().ok_or_else(|| self.err())?;
            let e: u32 = e.parse().map_err(|_| self.err())?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<&'a str> {
        let rest = &self.src[self.pos..];
        let n = rest.bytes().take_while(u8::is_ascii_digit).count();
        (n > 0).then(|| {
            self.pos += n;
            &rest[..n]
        })
    }

    fn atom(&mut self) -> Result<WeightedPoly, QuasimodError> {
        if self.eat("(") {
            let e = self.expr()?;
            return if self.eat(")") {
                Ok(e)
            } else {
                Err(self.err())
            };
        }
        for (names, gen) in [
            (&["Theta", "X"][..], WeightedPoly::x()),
            (&["F2", "Y"][..], WeightedPoly::y()),
            (&["E2", "Z"][..], WeightedPoly::z()),
        ] {
            if names.iter().any(|n| self.eat(n)) {
                return Ok(gen);
            }
        }
        self.skip_ws();
        let d = self.digits().ok_or_else(|| self.err())?;
        let n: BigInt = d.parse().map_err(|_| self.err())?;
        Ok(WeightedPoly::constant(Rat::from_integer(n)))
    }
}

impl FromStr for WeightedPoly {
    type Err = QuasimodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn parses_expressions() {
        let h: WeightedPoly = "(X^5 - 20*X*Y)/120".parse().unwrap();
        assert_eq!(h, WeightedPoly::h52());
        let e: WeightedPoly = "Theta^8 + 224*Theta^4*F2 + 256*F2^2".parse().unwrap();
        assert_eq!(e, WeightedPoly::e4());
        let z: WeightedPoly = "-E2/12".parse().unwrap();
        assert_eq!(z, WeightedPoly::z().scale(&rat(-1, 12)));
    }

    #[test]
    fn display_round_trips() {
        for p in [
            WeightedPoly::e4(),
            WeightedPoly::h52(),
            WeightedPoly::constant(rat(-3, 4)),
        ] {
            assert_eq!(p.to_string().parse::<WeightedPoly>().unwrap(), p);
        }
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "X +", "X/Y", "X/0", "(X", "W", "X^"] {
            assert!(s.parse::<WeightedPoly>().is_err(), "{s}");
        }
    }
}
