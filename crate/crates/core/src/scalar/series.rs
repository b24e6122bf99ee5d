use num_bigint::BigInt;
use num_rational::BigRational;

use super::rational::Scalar;
use crate::error::{Error, Result};

/// Truncated power series `sum c_k x^k`, exact for `k < order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    var: String,
    coeffs: Vec<Scalar>,
}

impl PowerSeries {
    pub fn new(var: impl Into<String>, mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.resize(order, Scalar::zero());
        PowerSeries {
            var: var.into(),
            coeffs,
        }
    }

    pub fn constant(var: impl Into<String>, c: Scalar, order: usize) -> Self {
        PowerSeries::new(var, vec![c], order)
    }

    /// The series variable itself.
    pub fn variable(var: impl Into<String>, order: usize) -> Self {
        PowerSeries::new(var, vec![Scalar::zero(), Scalar::one()], order)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// First coefficient that is not zero, with its index.
    pub fn first_nonzero(&self) -> Option<(usize, &Scalar)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    fn zip_order(&self, o: &PowerSeries) -> usize {
        debug_assert_eq!(self.var, o.var, "mixing series variables");
        self.order().min(o.order())
    }

    pub fn add(&self, o: &PowerSeries) -> PowerSeries {
        let n = self.zip_order(o);
        let c = (0..n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect();
        PowerSeries::new(self.var.clone(), c, n)
    }

    pub fn sub(&self, o: &PowerSeries) -> PowerSeries {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PowerSeries {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, k: &Scalar) -> PowerSeries {
        PowerSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add_scalar(&self, k: &Scalar) -> PowerSeries {
        let mut out = self.clone();
        if let Some(c) = out.coeffs.first_mut() {
            *c += k;
        }
        out
    }

    pub fn mul(&self, o: &PowerSeries) -> PowerSeries {
        let n = self.zip_order(o);
        let mut c = vec![Scalar::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    c[i + j] += &(a * b);
                }
            }
        }
        PowerSeries::new(self.var.clone(), c, n)
    }

    /// Multiply by `x^k`; precision grows by `k`.
    pub fn shift(&self, k: usize) -> PowerSeries {
        let mut c = vec![Scalar::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        PowerSeries::new(self.var.clone(), c, self.order() + k)
    }

    /// Formal derivative; one order of precision is lost.
    pub fn derivative(&self) -> PowerSeries {
        let n = self.order().saturating_sub(1);
        let c = (0..n)
            .map(|k| &self.coeffs[k + 1] * &Scalar::from_int(k as i64 + 1))
            .collect();
        PowerSeries::new(self.var.clone(), c, n)
    }

    pub fn inv(&self) -> Result<PowerSeries> {
        let n = self.order();
        let head = self.coeffs.first().ok_or(Error::DivisionByZero)?;
        let head_inv = head.inv()?;
        let mut g: Vec<Scalar> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                g.push(head_inv.clone());
                continue;
            }
            let mut acc = Scalar::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &(&self.coeffs[i] * &g[k - i]);
                }
            }
            g.push(-(&acc * &head_inv));
        }
        Ok(PowerSeries::new(self.var.clone(), g, n))
    }

    pub fn div(&self, o: &PowerSeries) -> Result<PowerSeries> {
        Ok(self.mul(&o.inv()?))
    }

    /// `self^(num/den)` for a series with head 1.
    pub fn pow_ratio(&self, num: i64, den: i64) -> Result<PowerSeries> {
        if !self.coeffs.first().is_some_and(|c| c.is_one()) {
            return Err(Error::BadSeriesHead(
                self.coeffs.first().map(|c| c.to_string()).unwrap_or_default(),
            ));
        }
        let r = Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)));
        let r1 = &r + &Scalar::one();
        let n = self.order();
        let mut g: Vec<Scalar> = Vec::with_capacity(n);
        g.push(Scalar::one());
        for k in 1..n {
            let mut acc = Scalar::zero();
            for i in 1..=k {
                let f = &self.coeffs[i];
                if f.is_zero() {
                    continue;
                }
                let w = &(&r1 * &Scalar::from_int(i as i64)) - &Scalar::from_int(k as i64);
                acc += &(&(&w * f) * &g[k - i]);
            }
            g.push(&acc * &Scalar::ratio(1, k as i64));
        }
        Ok(PowerSeries::new(self.var.clone(), g, n))
    }

    pub fn sqrt(&self) -> Result<PowerSeries> {
        self.pow_ratio(1, 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize) -> PowerSeries {
        PowerSeries::variable("x", n)
    }

    #[test]
    fn sqrt_of_one_plus_x_matches_binomial() {
        let s = x(6).add_scalar(&Scalar::one()).sqrt().unwrap();
        // C(1/2, k) for k = 0..5
        let expect = [(1, 1), (1, 2), (-1, 8), (1, 16), (-5, 128), (7, 256)];
        for (k, (n, d)) in expect.iter().enumerate() {
            assert_eq!(s.coeff(k), &Scalar::ratio(*n, *d));
        }
    }

    #[test]
    fn sqrt_edge_cases() {
        let one = PowerSeries::constant("x", Scalar::one(), 5);
        assert_eq!(one.sqrt().unwrap(), one);
        let bad = x(5).add_scalar(&Scalar::from_int(2));
        assert!(matches!(bad.sqrt(), Err(Error::BadSeriesHead(_))));
    }

    #[test]
    fn derivative_loses_one_order() {
        let s = x(5).mul(&x(5)).add(&x(5));
        let d = s.derivative();
        assert_eq!(d.order(), 4);
        assert_eq!(d.coeff(0), &Scalar::one());
        assert_eq!(d.coeff(1), &Scalar::from_int(2));
    }

    #[test]
    fn symbolic_coefficients() {
        // (1 - 2 h x)^(-1/4) then raised to the 4th power is 1/(1 - 2 h x)
        let n = 8;
        let base = x(n).scale(&"-2*h".parse().unwrap()).add_scalar(&Scalar::one());
        let r = base.pow_ratio(-1, 4).unwrap();
        let r4 = r.mul(&r).mul(&r).mul(&r);
        assert_eq!(r4.mul(&base), PowerSeries::constant("x", Scalar::one(), n));
    }

    proptest! {
        #[test]
        fn sqrt_squares_back(c in proptest::collection::vec(-9i64..9, 1..7)) {
            let n = 8;
            let mut coeffs = vec![Scalar::one()];
            coeffs.extend(c.iter().map(|&v| Scalar::from_int(v)));
            let s = PowerSeries::new("x", coeffs, n);
            let r = s.sqrt().unwrap();
            prop_assert_eq!(r.mul(&r), s);
        }

        #[test]
        fn inverse_is_inverse(c in proptest::collection::vec(-9i64..9, 0..6), head in 1i64..5) {
            let n = 7;
            let mut coeffs = vec![Scalar::from_int(head)];
            coeffs.extend(c.iter().map(|&v| Scalar::from_int(v)));
            let s = PowerSeries::new("x", coeffs, n);
            prop_assert_eq!(s.mul(&s.inv().unwrap()), PowerSeries::constant("x", Scalar::one(), n));
        }
    }
}
