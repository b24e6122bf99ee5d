use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd::{gcd, lex_monic};
use super::halfint::HalfInt;
use super::poly::{Mono, Poly, Var};
use crate::error::{Error, Result};

/// Element of Q(p, h) in canonical form: numerator and denominator coprime,
/// denominator lex-monic, zero stored as 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    /// Canonical representative of `num / den`.
    pub fn normalize(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        if let Some(c) = den.as_constant() {
            return Ok(Scalar {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Ok(Scalar::rescale(num, den))
    }

    fn rescale(num: Poly, den: Poly) -> Scalar {
        let lc = den.leading().unwrap().1.clone();
        if lc.is_one() {
            return Scalar { num, den };
        }
        let inv = lc.recip();
        Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar {
            num: Poly::from_int(n),
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar {
            num: Poly::constant(r),
            den: Poly::one(),
        }
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(num: Poly) -> Scalar {
        Scalar {
            num,
            den: Poly::one(),
        }
    }

    pub fn p() -> Scalar {
        Scalar::from_poly(Poly::var(Var::P))
    }

    pub fn h() -> Scalar {
        Scalar::from_poly(Poly::var(Var::H))
    }

    /// `p^k` for any integer `k`.
    pub fn p_pow(k: i64) -> Scalar {
        let m = Poly::monomial(
            BigRational::one(),
            Mono {
                p: k.unsigned_abs() as u32,
                h: 0,
            },
        );
        if k >= 0 {
            Scalar::from_poly(m)
        } else {
            Scalar {
                num: Poly::one(),
                den: m,
            }
        }
    }

    /// `q^x = p^(2x)`.
    pub fn p_power(x: HalfInt) -> Scalar {
        Scalar::p_pow(x.twice())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// Rational value if the scalar involves neither `p` nor `h`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.den.is_one() {
            self.num.as_constant().cloned()
        } else {
            None
        }
    }

    pub fn is_p_free(&self) -> bool {
        self.num.degree(Var::P) == 0 && self.den.degree(Var::P) == 0
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::rescale(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(Scalar {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale(&self, k: &BigRational) -> Scalar {
        if k.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    /// Value at `p = 1`; a pole there is reported, never papered over.
    pub fn limit_at_p1(&self) -> Result<Scalar> {
        let one = BigRational::one();
        let d = self.den.eval_var(Var::P, &one);
        if d.is_zero() {
            return Err(Error::PoleAtUnity {
                denominator: Scalar::from_poly(self.den.clone()).to_string(),
            });
        }
        Scalar::normalize(self.num.eval_var(Var::P, &one), d)
    }

    /// Multiplicity of `p - 1` in the reduced denominator.
    pub fn pole_order_at_p1(&self) -> u32 {
        let root = Poly::var(Var::P).sub(&Poly::one());
        let mut d = self.den.clone();
        let mut k = 0;
        while let Some(q) = d.div_exact(&root) {
            d = q;
            k += 1;
        }
        k
    }

    /// Substitute an exact rational for `h`.
    pub fn substitute_h(&self, x: &BigRational) -> Result<Scalar> {
        Scalar::normalize(self.num.eval_var(Var::H, x), self.den.eval_var(Var::H, x))
    }

    /// Order of vanishing in `h`; `None` for zero.
    pub fn h_valuation(&self) -> Option<i64> {
        let n = self.num.valuation(Var::H)? as i64;
        let d = self.den.valuation(Var::H).unwrap() as i64;
        Some(n - d)
    }

    /// Taylor coefficients in `h` (each a function of `p`) for `h^0 .. h^(n-1)`.
    pub fn h_series(&self, n: usize) -> Result<Vec<Scalar>> {
        if self.h_valuation().unwrap_or(0) < 0 {
            return Err(Error::Precondition(format!("{self} has a pole at h = 0")));
        }
        let split = |a: &Poly| -> Vec<Scalar> {
            a.coeffs_in(Var::H)
                .iter()
                .map(|u| Scalar::from_poly(Poly::from_upoly(Var::P, u)))
                .collect()
        };
        let nums = split(&self.num);
        let dens = split(&self.den);
        let d0 = dens[0].clone();
        if d0.is_zero() {
            return Err(Error::Precondition(format!("{self} has a pole at h = 0")));
        }
        let d0_inv = d0.inv()?;
        let mut out: Vec<Scalar> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = nums.get(k).cloned().unwrap_or_default();
            for i in 1..=k.min(dens.len() - 1) {
                acc -= &(&dens[i] * &out[k - i]);
            }
            out.push(&acc * &d0_inv);
        }
        Ok(out)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar::from_poly(self.num.add(&o.num));
        }
        if self.den.is_one() {
            return Scalar {
                num: self.num.mul(&o.den).add(&o.num),
                den: o.den.clone(),
            };
        }
        if o.den.is_one() {
            return Scalar {
                num: o.num.mul(&self.den).add(&self.num),
                den: self.den.clone(),
            };
        }
        if self.den == o.den {
            return Scalar::normalize(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Scalar::rescale(num, self.den.mul(&o.den));
        }
        let ad = self.den.div_exact(&g).unwrap();
        let bd = o.den.div_exact(&g).unwrap();
        let t = self.num.mul(&bd).add(&o.num.mul(&ad));
        if t.is_zero() {
            return Scalar::zero();
        }
        let g2 = gcd(&t, &g);
        let num = t.div_exact(&g2).unwrap();
        let den = self.den.div_exact(&g2).unwrap().mul(&bd);
        Scalar::rescale(num, lex_fix(den))
    }
}

fn lex_fix(den: Poly) -> Poly {
    if den.leading().is_some_and(|(_, c)| c.is_one()) {
        den
    } else {
        lex_monic(&den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let div = |a: &Poly, g: &Poly| {
            if g.is_one() {
                a.clone()
            } else {
                a.div_exact(g).unwrap()
            }
        };
        let num = div(&self.num, &g1).mul(&div(&o.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&o.den, &g1));
        Scalar::rescale(num, den)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print(self))
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        super::parse::parse(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        let p = Poly::var(Var::P);
        let h = Poly::var(Var::H);
        let one = Poly::one();
        let a = Scalar::normalize(p.pow(2).sub(&one), p.sub(&one)).unwrap();
        assert_eq!(a, s("p+1"));
        let b = Scalar::normalize(
            h.mul(&p.pow(4).sub(&one)),
            p.pow(2).sub(&one).mul(&p.pow(2).add(&one)),
        )
        .unwrap();
        assert_eq!(b, Scalar::h());
        assert_eq!(Scalar::normalize(one, Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn limit_examples() {
        assert_eq!(s("(p^4-1)/(p^2-1)").limit_at_p1().unwrap(), Scalar::from_int(2));
        assert!(matches!(
            s("h/(p^2-1)").limit_at_p1(),
            Err(Error::PoleAtUnity { .. })
        ));
        let p1 = s("p-1");
        let x = Scalar::normalize(
            Poly::var(Var::H).mul(&p1.numer().pow(2)),
            p1.numer().clone(),
        )
        .unwrap();
        assert_eq!(x.limit_at_p1().unwrap(), Scalar::zero());
    }

    #[test]
    fn p_power_examples() {
        assert_eq!(Scalar::p_power(HalfInt::from_twice(3)), s("p^3"));
        assert_eq!(Scalar::p_power(HalfInt::from_int(-1)), s("1/p^2"));
        assert_eq!(Scalar::p_power(HalfInt::ZERO), Scalar::one());
    }

    #[test]
    fn henrici_sum_cancels() {
        let a = s("1/(p-1)");
        let b = s("-1/(p+1)");
        assert_eq!(&a + &b, s("2/(p^2-1)"));
        let c = s("p/(p^2-1)");
        let d = s("-1/(p^2-1)");
        assert_eq!(&c + &d, s("1/(p+1)"));
    }

    #[test]
    fn h_series_of_rational() {
        let x = s("1/(1-h)");
        let c = x.h_series(4).unwrap();
        assert!(c.iter().all(|t| t.is_one()));
        assert_eq!(s("h^3*p/(2+h)").h_valuation(), Some(3));
    }
}
