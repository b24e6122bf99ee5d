//! Small infix language for algebra elements, e.g. `"E⊗Tinvhalf + Thalf⊗E"` or
//! `"-h/4*(Thalf*H + H*Thalf)⊗T*E"`.
//!
//! `⊗` (or `@`) binds looser than `*`, `/` and `^`, tighter than `+`/`-`.
//! The identifier `h` is the scalar deformation parameter; numbers are integers.

use num_bigint::BigInt;

use super::expr::TensorExpression;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = cs[st..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            // ladder names b+ and b-
            if i - st == 1 && c == 'b' && i < cs.len() && (cs[i] == '+' || cs[i] == '-') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()⊗@".contains(c) {
            out.push(Tok::Op(if c == '@' { '⊗' } else { c }));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} of {:?}", self.pos, self.src))
    }

    fn sum(&mut self) -> Result<TensorExpression> {
        let mut acc = self.tens()?;
        loop {
            if self.eat('+') {
                let r = self.tens()?;
                acc = acc.try_add(&r)?;
            } else if self.eat('-') {
                let r = self.tens()?;
                acc = acc.try_add(&r.neg())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn tens(&mut self) -> Result<TensorExpression> {
        let mut acc = self.prod()?;
        while self.eat('⊗') {
            let r = self.prod()?;
            acc = acc.tensor(&r);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<TensorExpression> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let r = self.unary()?;
                acc = match (acc.as_scalar(), r.legs() != acc.legs()) {
                    // scalars broadcast over any leg count
                    (Some(c), true) if acc.legs() == 1 => r.scale(&c),
                    _ => match r.as_scalar() {
                        Some(c) if r.legs() == 1 => acc.scale(&c),
                        _ => acc.try_mul(&r)?,
                    },
                };
            } else if self.eat('/') {
                let r = self.unary()?;
                let c = r.as_scalar().ok_or_else(|| self.err("division by a non-scalar"))?;
                acc = acc.scale(&c.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<TensorExpression> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.pow()
    }

    fn pow(&mut self) -> Result<TensorExpression> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let n: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(n));
                }
                _ => return Err(self.err("expected an exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<TensorExpression> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(TensorExpression::scalar(1, Scalar::from_rational(n.into())))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if id == "h" {
                    Ok(TensorExpression::scalar(1, Scalar::h()))
                } else {
                    Ok(TensorExpression::letter(&id))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parse an expression.
pub fn expr(s: &str) -> Result<TensorExpression> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, src: s };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let a = expr("2*E⊗F + h/2*1⊗H").unwrap();
        assert_eq!(a.legs(), 2);
        assert_eq!(a.len(), 2);
        let b = expr("-h/4*(Thalf*H + H*Thalf)⊗T*E").unwrap();
        assert_eq!(b.legs(), 2);
        assert_eq!(b.len(), 2);
        assert_eq!(expr("(T - Tinv)^2").unwrap(), expr("T*T - T*Tinv - Tinv*T + Tinv*Tinv").unwrap());
    }

    #[test]
    fn scalar_only_and_division() {
        let c = expr("3*h^2/(2*h)").unwrap();
        assert_eq!(c.as_scalar(), Some("3*h/2".parse().unwrap()));
        assert!(expr("E/F").is_err());
        assert!(expr("E +").is_err());
        assert!(expr("E ⊗ F ⊗").is_err());
    }

    #[test]
    fn classical_ladder_names() {
        let e = expr("b+*b- - b-*b+").unwrap();
        assert_eq!(e.letters().into_iter().collect::<Vec<_>>(), vec!["b+", "b-"]);
    }
}
