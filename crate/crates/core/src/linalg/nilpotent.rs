use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::matrix::GradedMatrix;
use crate::error::{Error, Result};
use crate::scalar::{PowerSeries, Scalar};

/// Function applied by finite Taylor expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilFn {
    /// `exp(A)`, `A` nilpotent.
    Exp,
    /// `ln(A)`, `A - I` nilpotent.
    Ln,
    /// `A^(1/2)`, `A - I` nilpotent.
    Sqrt,
    /// `A^(num/den)`, `A - I` nilpotent.
    Pow(i64, i64),
}

/// Powers `N^0, N^1, ...` up to the first zero power; fails if none within `dim + 1` steps.
fn nil_powers(n: &GradedMatrix) -> Result<Vec<GradedMatrix>> {
    let mut out = vec![GradedMatrix::identity(n.parity().to_vec())];
    let limit = n.dim() + 1;
    loop {
        let next = out.last().unwrap() * n;
        if next.is_zero() {
            return Ok(out);
        }
        if out.len() > limit {
            return Err(Error::NotNilpotent(limit));
        }
        out.push(next);
    }
}

/// `sum_k c_k N^k` for nilpotent `N`.
pub fn apply_coeffs(n: &GradedMatrix, coeff: impl Fn(usize) -> Scalar) -> Result<GradedMatrix> {
    let pows = nil_powers(n)?;
    let mut acc = GradedMatrix::zeros(n.parity().to_vec());
    for (k, pk) in pows.iter().enumerate() {
        let c = coeff(k);
        if !c.is_zero() {
            acc = &acc + &pk.scale(&c);
        }
    }
    Ok(acc)
}

/// Evaluate a truncated series at a nilpotent matrix; the series must reach the nilpotency index.
pub fn apply_series(n: &GradedMatrix, s: &PowerSeries) -> Result<GradedMatrix> {
    let pows = nil_powers(n)?;
    if pows.len() > s.order() {
        return Err(Error::Precondition(format!(
            "series of order {} too short for nilpotency index {}",
            s.order(),
            pows.len()
        )));
    }
    apply_coeffs(n, |k| s.coeff(k).clone())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Generalized binomial coefficient `C(r, k)`.
pub fn binom(r: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc = acc * (r - BigRational::from_integer(BigInt::from(i))) / BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

pub fn nilpotent_fun(a: &GradedMatrix, f: &NilFn) -> Result<GradedMatrix> {
    let id = GradedMatrix::identity(a.parity().to_vec());
    match f {
        NilFn::Exp => {
            let mut fact = BigRational::one();
            let mut coeffs = vec![];
            for k in 0..=a.dim() + 1 {
                if k > 0 {
                    fact = fact / BigRational::from_integer(BigInt::from(k));
                }
                coeffs.push(fact.clone());
            }
            apply_coeffs(a, |k| Scalar::from_rational(coeffs[k].clone()))
        }
        NilFn::Ln => {
            let n = a - &id;
            apply_coeffs(&n, |k| match k {
                0 => Scalar::zero(),
                _ => {
                    let s = if k % 2 == 1 { 1 } else { -1 };
                    Scalar::from_rational(rat(s, k as i64))
                }
            })
        }
        NilFn::Sqrt => nilpotent_fun(a, &NilFn::Pow(1, 2)),
        NilFn::Pow(num, den) => {
            let r = rat(*num, *den);
            let n = a - &id;
            apply_coeffs(&n, |k| Scalar::from_rational(binom(&r, k)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::rep_parity;

    fn e(dim: usize) -> GradedMatrix {
        let mut m = GradedMatrix::zeros(rep_parity(dim));
        for i in 1..dim {
            m.set(i - 1, i, Scalar::one());
        }
        m
    }

    #[test]
    fn exp_of_square_zero() {
        let n = &e(3) * &e(3);
        let id = GradedMatrix::identity(rep_parity(3));
        assert_eq!(nilpotent_fun(&n, &NilFn::Exp).unwrap(), &id + &n);
        assert!(nilpotent_fun(&id, &NilFn::Ln).unwrap().is_zero());
    }

    #[test]
    fn quarter_power_truncates() {
        let b = &e(3) * &e(3);
        let id = GradedMatrix::identity(rep_parity(3));
        let a = &id - &b.scale(&"2*h".parse().unwrap());
        let r = nilpotent_fun(&a, &NilFn::Pow(-1, 4)).unwrap();
        assert_eq!(r, &id + &b.scale(&"h/2".parse().unwrap()));
    }

    #[test]
    fn rational_power_consistency() {
        let b = &e(7) * &e(7);
        let id = GradedMatrix::identity(rep_parity(7));
        let a = &id + &b.scale(&"3*h".parse().unwrap());
        let r = nilpotent_fun(&a, &NilFn::Pow(-3, 4)).unwrap();
        let r4 = r.pow(4);
        let inv3 = a.inverse().unwrap().pow(3);
        assert_eq!(r4, inv3);
        let l = nilpotent_fun(&a, &NilFn::Ln).unwrap();
        assert_eq!(nilpotent_fun(&l, &NilFn::Exp).unwrap(), a);
    }

    #[test]
    fn non_nilpotent_rejected() {
        let id = GradedMatrix::identity(rep_parity(3));
        assert!(matches!(nilpotent_fun(&id, &NilFn::Exp), Err(Error::NotNilpotent(_))));
        let two = id.scale(&Scalar::from_int(2));
        assert!(matches!(nilpotent_fun(&two, &NilFn::Sqrt), Err(Error::NotNilpotent(_))));
    }
}
