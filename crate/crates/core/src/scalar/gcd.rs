//! Greatest common divisors in Q[p, h].

use super::poly::{Mono, Poly, Var};
use super::upoly::UPoly;

/// Gcd normalized so that its lex-leading coefficient is 1.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return lex_monic(b);
    }
    if b.is_zero() {
        return lex_monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.is_monomial() {
        return mono_gcd(a, b);
    }
    if b.is_monomial() {
        return mono_gcd(b, a);
    }
    for v in [Var::P, Var::H] {
        let other = flip(v);
        let a_uni = a.degree(other) == 0;
        let b_uni = b.degree(other) == 0;
        if a_uni && b_uni {
            let g = a.to_upoly(v).unwrap().gcd(&b.to_upoly(v).unwrap());
            return Poly::from_upoly(v, &g);
        }
        if a_uni {
            return lex_monic(&uni_vs_bi(v, a, b));
        }
        if b_uni {
            return lex_monic(&uni_vs_bi(v, b, a));
        }
    }
    lex_monic(&prs_gcd(a, b))
}

/// Divide by the lex-leading coefficient.
pub fn lex_monic(a: &Poly) -> Poly {
    match a.leading() {
        None => Poly::zero(),
        Some((_, c)) => a.scale(&c.recip()),
    }
}

fn flip(v: Var) -> Var {
    match v {
        Var::P => Var::H,
        Var::H => Var::P,
    }
}

fn mono_gcd(m: &Poly, b: &Poly) -> Poly {
    let (mm, _) = m.leading().unwrap();
    let e = Mono {
        p: mm.p.min(b.valuation(Var::P).unwrap()),
        h: mm.h.min(b.valuation(Var::H).unwrap()),
    };
    Poly::monomial(num_traits::One::one(), e)
}

/// `u` involves only `v`; gcd with the content of `b` viewed over Q[v].
fn uni_vs_bi(v: Var, u: &Poly, b: &Poly) -> Poly {
    let mut g = u.to_upoly(v).unwrap();
    for c in b.coeffs_in(flip(v)) {
        if g.is_one() {
            break;
        }
        if !c.is_zero() {
            g = g.gcd(&c);
        }
    }
    Poly::from_upoly(v, &g)
}

type Rows = Vec<UPoly>;

fn trim(r: &mut Rows) {
    while r.last().is_some_and(|x| x.is_zero()) {
        r.pop();
    }
}

fn content(r: &Rows) -> UPoly {
    let mut g = UPoly::zero();
    for c in r {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.monic() } else { g.gcd(c) };
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(r: &Rows) -> Rows {
    let c = content(r);
    if c.is_one() || c.is_zero() {
        return r.clone();
    }
    r.iter().map(|x| x.divrem(&c).0).collect()
}

fn prem(a: &Rows, b: &Rows) -> Rows {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r = a.clone();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        let mut next: Rows = r.iter().map(|x| x.mul(lcb)).collect();
        for (i, bi) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bi.mul(&lcr));
        }
        trim(&mut next);
        r = primitive(&next);
    }
    r
}

/// Content and primitive pseudo-remainder sequence over Q[h][p].
fn prs_gcd(a: &Poly, b: &Poly) -> Poly {
    let ra = a.coeffs_in(Var::P);
    let rb = b.coeffs_in(Var::P);
    let ca = content(&ra);
    let cb = content(&rb);
    let c = ca.gcd(&cb);
    let (mut x, mut y) = (primitive(&ra), primitive(&rb));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            // primitive and free of p: a unit
            x = vec![UPoly::one()];
            break;
        }
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let g = primitive(&x);
    Poly::from_coeffs_in(Var::P, &g).mul(&Poly::from_upoly(Var::H, &c))
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
    fn c(n: i64) -> Poly {
        Poly::from_int(n)
    }

    #[test]
    fn bivariate_common_factor() {
        let f = p().mul(&h()).add(&c(1)); // ph + 1
        let a = f.mul(&p().sub(&h())).mul(&h().add(&c(2)));
        let b = f.mul(&p().add(&c(3))).mul(&h().add(&c(2)));
        let g = gcd(&a, &b);
        assert_eq!(g, lex_monic(&f.mul(&h().add(&c(2)))));
    }

    #[test]
    fn fast_paths() {
        let a = p().pow(2).mul(&h().pow(3)).scale(&num_rational::BigRational::from_integer(5.into()));
        let b = p().pow(3).mul(&h()).add(&p().pow(1).mul(&h().pow(2)));
        assert_eq!(gcd(&a, &b), p().mul(&h()));
        let u = p().pow(2).sub(&c(1));
        let v = p().sub(&c(1)).mul(&h()).add(&p().pow(2).sub(&c(1)).mul(&h().pow(2)));
        assert_eq!(gcd(&u, &v), p().sub(&c(1)));
        assert_eq!(gcd(&c(3), &v), c(1));
    }

    #[test]
    fn coprime_bivariate() {
        let a = p().add(&h());
        let b = p().sub(&h());
        assert_eq!(gcd(&a.mul(&p()), &b.mul(&h())), c(1));
    }
}
