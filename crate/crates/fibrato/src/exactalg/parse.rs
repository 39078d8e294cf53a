//! Polynomial strings: integer or rational coefficients, named variables, `^`
//! for exponents, `*` for products, parentheses.  Example: `3/2*t0^2*t1 - (t0 - t1)`.

use num_bigint::BigInt;

use super::multipoly::{MPoly, MultiPolyRing};
use super::rational::{Rationals, Q};
use super::ring::Ring;
use super::AlgError;

struct Parser<'a> {
    ring: &'a MultiPolyRing<Rationals>,
    src: &'a str,
    pos: usize,
}

pub fn parse_poly(ring: &MultiPolyRing<Rationals>, s: &str) -> Result<MPoly<Q>, AlgError> {
    let mut p = Parser { ring, src: s, pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgError {
        AlgError::Parse(format!("{msg} at byte {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly<Q>, AlgError> {
        let r = self.ring;
        let mut acc = if self.eat('-') {
            r.neg(&self.term()?)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = r.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = r.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<Q>, AlgError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = self.ring.mul(&acc, &self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MPoly<Q>, AlgError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let n = self.digits().map(str::to_string);
            let n = n.ok_or_else(|| self.err("expected exponent"))?;
            let n: u64 = n.parse().map_err(|_| self.err("exponent out of range"))?;
            return Ok(self.ring.pow(&base, n));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn atom(&mut self) -> Result<MPoly<Q>, AlgError> {
        self.skip_ws();
        if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(e);
        }
        if self.eat('-') {
            return Ok(self.ring.neg(&self.power()?));
        }
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                let mut val = Q::from_integer(num);
                let save = self.pos;
                if self.eat('/') {
                    self.skip_ws();
                    match self.digits() {
                        Some(d) => {
                            let den: BigInt = d.parse().unwrap();
                            if den == BigInt::from(0) {
                                return Err(self.err("zero denominator"));
                            }
                            val /= Q::from_integer(den);
                        }
                        None => self.pos = save,
                    }
                }
                Ok(self.ring.constant(val))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let i = self
                    .ring
                    .var_index(name)
                    .ok_or_else(|| AlgError::Parse(format!("unknown variable {name:?} in {:?}", self.src)))?;
                Ok(self.ring.var(i))
            }
            _ => Err(self.err("expected number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{q, q_frac};

    #[test]
    fn parses_and_prints_round_trip() {
        let r = MultiPolyRing::new(Rationals, &["t0", "t1"]);
        for s in ["t0^2 - 3*t0*t1 + 1/2*t1^2", "-t1", "0", "7", "-2/3*t0^3*t1"] {
            let p = parse_poly(&r, s).unwrap();
            assert_eq!(r.fmt_elem(&p), s);
        }
    }

    #[test]
    fn parentheses_and_powers() {
        let r = MultiPolyRing::new(Rationals, &["t0", "t1"]);
        let p = parse_poly(&r, "(t0 - t1)^2").unwrap();
        assert_eq!(r.fmt_elem(&p), "t0^2 - 2*t0*t1 + t1^2");
        let c = parse_poly(&r, "3/6").unwrap();
        assert_eq!(r.constant_value(&c), Some(q_frac(1, 2)));
        assert_eq!(r.constant_value(&parse_poly(&r, "2*-3").unwrap()), Some(q(-6)));
    }

    #[test]
    fn rejects_garbage() {
        let r = MultiPolyRing::new(Rationals, &["t0", "t1"]);
        assert!(parse_poly(&r, "t2").is_err());
        assert!(parse_poly(&r, "t0 +").is_err());
        assert!(parse_poly(&r, "1/0").is_err());
        assert!(parse_poly(&r, "t0^").is_err());
    }
}
