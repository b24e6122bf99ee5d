use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;

/// Exponent pair of `p^p * h^h`. The derived order is lex with `p` dominant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub p: u32,
    pub h: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { p: 0, h: 0 };

    pub fn mul(self, o: Mono) -> Mono {
        Mono {
            p: self.p + o.p,
            h: self.h + o.h,
        }
    }

    pub fn divides(self, o: Mono) -> bool {
        self.p <= o.p && self.h <= o.h
    }
}

/// Sparse polynomial in `p` and `h` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, BigRational>,
}

/// Which variable a univariate view is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    P,
    H,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::monomial(c, Mono::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn monomial(c: BigRational, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        let m = match v {
            Var::P => Mono { p: 1, h: 0 },
            Var::H => Mono { p: 0, h: 1 },
        };
        Poly::monomial(BigRational::one(), m)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial has no `p` and no `h`.
    pub fn as_constant(&self) -> Option<&BigRational> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Mono::ONE),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(Mono, &BigRational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| match v {
                Var::P => m.p,
                Var::H => m.h,
            })
            .max()
            .unwrap_or(0)
    }

    /// Smallest exponent of `v` over all terms.
    pub fn valuation(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match v {
                Var::P => m.p,
                Var::H => m.h,
            })
            .min()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            add_term(&mut terms, *m, c.clone());
        }
        Poly { terms }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            add_term(&mut terms, *m, -c);
        }
        Poly { terms }
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn mul_mono(&self, k: &BigRational, m: Mono) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c * k)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(c);
        }
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                add_term(&mut terms, ma.mul(*mb), ca * cb);
            }
        }
        Poly { terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading().expect("division by zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let dc_inv = dc.recip();
        let mut rem = self.clone();
        let mut q = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let tm = Mono {
                p: rm.p - dm.p,
                h: rm.h - dm.h,
            };
            let tc = rc * &dc_inv;
            rem = rem.sub(&d.mul_mono(&tc, tm));
            q.insert(tm, tc);
        }
        Some(Poly { terms: q })
    }

    /// Substitute a rational value for one variable.
    pub fn eval_var(&self, v: Var, x: &BigRational) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = match v {
                Var::P => (m.p, Mono { p: 0, h: m.h }),
                Var::H => (m.h, Mono { p: m.p, h: 0 }),
            };
            add_term(&mut terms, rest, c * pow_rat(x, e));
        }
        Poly { terms }
    }

    /// View as a polynomial in `v` whose coefficients are univariate in the other variable.
    pub fn coeffs_in(&self, v: Var) -> Vec<UPoly> {
        let deg = self.degree(v) as usize;
        let other = match v {
            Var::P => self.degree(Var::H),
            Var::H => self.degree(Var::P),
        } as usize;
        let mut rows = vec![vec![BigRational::zero(); other + 1]; deg + 1];
        for (m, c) in &self.terms {
            let (i, k) = match v {
                Var::P => (m.p, m.h),
                Var::H => (m.h, m.p),
            };
            rows[i as usize][k as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(v: Var, rows: &[UPoly]) -> Poly {
        let mut terms = BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            for (k, c) in row.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let m = match v {
                    Var::P => Mono {
                        p: i as u32,
                        h: k as u32,
                    },
                    Var::H => Mono {
                        p: k as u32,
                        h: i as u32,
                    },
                };
                terms.insert(m, c.clone());
            }
        }
        Poly { terms }
    }

    /// Univariate polynomial in the other variable, embedded back.
    pub fn from_upoly(v: Var, u: &UPoly) -> Poly {
        let mut terms = BTreeMap::new();
        for (k, c) in u.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = match v {
                Var::P => Mono { p: k as u32, h: 0 },
                Var::H => Mono { p: 0, h: k as u32 },
            };
            terms.insert(m, c.clone());
        }
        Poly { terms }
    }

    /// Univariate view when the polynomial only involves `v`.
    pub fn to_upoly(&self, v: Var) -> Option<UPoly> {
        let other = match v {
            Var::P => Var::H,
            Var::H => Var::P,
        };
        if self.degree(other) != 0 {
            return None;
        }
        let mut c = vec![BigRational::zero(); self.degree(v) as usize + 1];
        for (m, x) in &self.terms {
            let e = match v {
                Var::P => m.p,
                Var::H => m.h,
            };
            c[e as usize] = x.clone();
        }
        Some(UPoly::new(c))
    }

    /// Least common multiple of coefficient denominators.
    pub fn denom_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the integer numerators (sign-free).
    pub fn numer_gcd(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    pub fn has_negative_lead(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

fn add_term(terms: &mut BTreeMap<Mono, BigRational>, m: Mono, c: BigRational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Poly {
        Poly::var(Var::P)
    }
    fn h() -> Poly {
        Poly::var(Var::H)
    }

    #[test]
    fn exact_division() {
        let a = p().pow(4).sub(&Poly::one()).mul(&h());
        let d = p().pow(2).sub(&Poly::one());
        let q = a.div_exact(&d).unwrap();
        assert_eq!(q, p().pow(2).add(&Poly::one()).mul(&h()));
        assert!(p().add(&Poly::one()).div_exact(&h()).is_none());
    }

    #[test]
    fn coefficient_views_roundtrip() {
        let a = p().pow(3).mul(&h()).add(&h().pow(2)).sub(&Poly::from_int(7));
        for v in [Var::P, Var::H] {
            assert_eq!(Poly::from_coeffs_in(v, &a.coeffs_in(v)), a);
        }
    }

    #[test]
    fn leading_is_lex_p_first() {
        let a = p().add(&h().pow(5));
        assert_eq!(a.leading().unwrap().0, Mono { p: 1, h: 0 });
    }
}
