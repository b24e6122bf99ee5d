//! Text form of scalars: integers, `p`, `h`, `+ - * / ^` and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Mono, Poly};
use super::rational::Scalar;
use crate::error::{Error, Result};

pub fn parse(s: &str) -> Result<Scalar> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let e = self.integer()?;
            let e: i64 = e
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(b'p') => {
                self.pos += 1;
                Ok(Scalar::p())
            }
            Some(b'h') => {
                self.pos += 1;
                Ok(Scalar::h())
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(Scalar::from_rational(BigRational::from_integer(self.integer()?)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Canonical text: integer coefficients, numerator over denominator.
pub fn print(s: &Scalar) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let (n, d) = integerize(s.numer(), s.denom());
    let ns = poly_string(&n);
    if d.is_one() {
        return ns;
    }
    let ds = poly_string(&d);
    let d_atomic = d.as_constant().is_some()
        || (d.is_monomial() && d.leading().unwrap().1.is_one() && {
            let m = d.leading().unwrap().0;
            m.p == 0 || m.h == 0
        });
    let ns = if n.len() > 1 { format!("({ns})") } else { ns };
    if d_atomic {
        format!("{ns}/{ds}")
    } else {
        format!("{ns}/({ds})")
    }
}

/// Scale numerator and denominator by a common rational so both have coprime integer coefficients.
fn integerize(n: &Poly, d: &Poly) -> (Poly, Poly) {
    use num_integer::Integer;
    let l = n.denom_lcm().lcm(&d.denom_lcm());
    let lr = BigRational::from_integer(l);
    let (n, d) = (n.scale(&lr), d.scale(&lr));
    let g = n.numer_gcd().gcd(&d.numer_gcd());
    if g.is_one() || g.is_zero() {
        return (n, d);
    }
    let gi = BigRational::from_integer(g).recip();
    (n.scale(&gi), d.scale(&gi))
}

fn mono_string(m: Mono) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("p", m.p), ("h", m.h)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

fn poly_string(a: &Poly) -> String {
    let mut out = String::new();
    for (i, (m, c)) in a.terms().rev().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let abs = c.abs();
        let ms = mono_string(*m);
        if ms.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&ms);
        } else {
            out.push_str(&format!("{abs}*{ms}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_fixture_style() {
        let x: Scalar = "h^2/2".parse().unwrap();
        assert_eq!(x.to_string(), "h^2/2");
        let y: Scalar = "(p^4-1)/(2*h)".parse().unwrap();
        assert_eq!(y.to_string(), "(p^4-1)/(2*h)");
        let z: Scalar = "-h".parse().unwrap();
        assert_eq!(z.to_string(), "-h");
        assert_eq!("p^-2".parse::<Scalar>().unwrap().to_string(), "1/p^2");
    }

    #[test]
    fn roundtrip_is_exact() {
        for t in [
            "0",
            "3/4",
            "-7*h^3+p*h/5",
            "(p^2+1)/(p*h-3)",
            "h/(p^2-1)",
            "(1+h)^3/(2-p)^2",
            "-1/(4*p*h)",
        ] {
            let v: Scalar = t.parse().unwrap();
            let back: Scalar = v.to_string().parse().unwrap();
            assert_eq!(v, back, "{t}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("p+").is_err());
        assert!(parse("x").is_err());
        assert!(parse("(p").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("p h").is_err());
    }
}
