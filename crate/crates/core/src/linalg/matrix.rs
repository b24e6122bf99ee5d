use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ o.bit())
    }

    /// `(-1)^(self * o)` as a boolean "negate".
    pub fn sign_with(self, o: Parity) -> bool {
        self.is_odd() && o.is_odd()
    }
}

/// Parity vector of a `(4j+1)`-dimensional irrep in descending-`m` order.
pub fn rep_parity(dim: usize) -> Vec<Parity> {
    (0..dim).map(|i| Parity::from_bit((i % 2) as u8)).collect()
}

/// Dense square matrix over [`Scalar`] on a graded basis.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    dim: usize,
    parity: Vec<Parity>,
    entries: Vec<Scalar>,
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedMatrix {}x{} {:?}", self.dim, self.dim, self.parity)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl GradedMatrix {
    pub fn zeros(parity: Vec<Parity>) -> Self {
        let dim = parity.len();
        GradedMatrix {
            dim,
            parity,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(parity: Vec<Parity>) -> Self {
        let mut m = GradedMatrix::zeros(parity);
        for i in 0..m.dim {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_entries(parity: Vec<Parity>, entries: Vec<Scalar>) -> Result<Self> {
        let dim = parity.len();
        if entries.len() != dim * dim {
            return Err(Error::Shape(format!(
                "{} entries for dimension {dim}",
                entries.len()
            )));
        }
        Ok(GradedMatrix {
            dim,
            parity,
            entries,
        })
    }

    pub fn from_fn(parity: Vec<Parity>, f: impl Fn(usize, usize) -> Scalar + Sync + Send) -> Self {
        let dim = parity.len();
        let entries = (0..dim * dim)
            .into_par_iter()
            .map(|k| f(k / dim, k % dim))
            .collect();
        GradedMatrix {
            dim,
            parity,
            entries,
        }
    }

    /// Diagonal matrix.
    pub fn diagonal(parity: Vec<Parity>, d: Vec<Scalar>) -> Self {
        let mut m = GradedMatrix::zeros(parity);
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Assemble from a square grid of equally sized blocks, without signs.
    pub fn from_blocks(outer: &[Parity], blocks: &[Vec<GradedMatrix>]) -> Result<Self> {
        let nb = blocks.len();
        let inner = blocks[0][0].parity.clone();
        let n = inner.len();
        if outer.len() != nb {
            return Err(Error::Shape("block grid and outer parity disagree".into()));
        }
        let parity: Vec<Parity> = outer
            .iter()
            .flat_map(|a| inner.iter().map(move |b| a.add(*b)))
            .collect();
        let mut m = GradedMatrix::zeros(parity);
        for (a, row) in blocks.iter().enumerate() {
            if row.len() != nb {
                return Err(Error::Shape("ragged block grid".into()));
            }
            for (b, blk) in row.iter().enumerate() {
                if blk.parity != inner {
                    return Err(Error::Shape("blocks on different bases".into()));
                }
                for i in 0..n {
                    for j in 0..n {
                        let x = blk.get(i, j);
                        if !x.is_zero() {
                            m.set(a * n + i, b * n + j, x.clone());
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.entries[r * self.dim + c] = x;
    }

    /// Block `(a, b)` of size `n` as a matrix on `parity`.
    pub fn block(&self, a: usize, b: usize, parity: Vec<Parity>) -> GradedMatrix {
        let n = parity.len();
        GradedMatrix::from_fn(parity, |i, j| self.get(a * n + i, b * n + j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let x = self.get(r, c);
                if r == c {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    fn check_same(&self, o: &GradedMatrix) -> Result<()> {
        if self.parity != o.parity {
            return Err(Error::Shape(format!(
                "parity vectors differ ({} vs {})",
                self.dim, o.dim
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_same(o)?;
        let n = self.dim;
        let rows_b: Vec<Vec<(usize, &Scalar)>> = (0..n)
            .map(|k| {
                (0..n)
                    .filter_map(|j| {
                        let x = o.get(k, j);
                        (!x.is_zero()).then_some((j, x))
                    })
                    .collect()
            })
            .collect();
        let entries: Vec<Scalar> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut acc = vec![Scalar::zero(); n];
                for (k, row) in rows_b.iter().enumerate() {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in row {
                        acc[*j] += &(a * *b);
                    }
                }
                acc
            })
            .collect();
        Ok(GradedMatrix {
            dim: n,
            parity: self.parity.clone(),
            entries,
        })
    }

    pub fn try_add(&self, o: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_same(o)?;
        Ok(self.zip(o, |a, b| a + b))
    }

    pub fn try_sub(&self, o: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_same(o)?;
        Ok(self.zip(o, |a, b| a - b))
    }

    fn zip(&self, o: &GradedMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar + Sync + Send) -> GradedMatrix {
        let entries = self
            .entries
            .par_iter()
            .zip(o.entries.par_iter())
            .map(|(a, b)| f(a, b))
            .collect();
        GradedMatrix {
            dim: self.dim,
            parity: self.parity.clone(),
            entries,
        }
    }

    pub fn scale(&self, k: &Scalar) -> GradedMatrix {
        self.map(|x| x * k)
    }

    pub fn scale_rational(&self, k: &BigRational) -> GradedMatrix {
        self.map(|x| x.scale(k))
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar + Sync + Send) -> GradedMatrix {
        GradedMatrix {
            dim: self.dim,
            parity: self.parity.clone(),
            entries: self.entries.par_iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(usize, usize, &Scalar) -> Result<Scalar> + Sync + Send) -> Result<GradedMatrix> {
        let n = self.dim;
        let entries = self
            .entries
            .par_iter()
            .enumerate()
            .map(|(k, x)| f(k / n, k % n, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedMatrix {
            dim: n,
            parity: self.parity.clone(),
            entries,
        })
    }

    pub fn pow(&self, e: u32) -> GradedMatrix {
        let mut acc = GradedMatrix::identity(self.parity.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn transpose(&self) -> GradedMatrix {
        GradedMatrix::from_fn(self.parity.clone(), |r, c| self.get(c, r).clone())
    }

    /// Parity of the operator; `None` when it mixes even and odd blocks. Zero counts as even.
    pub fn operator_parity(&self) -> Option<Parity> {
        let mut seen: Option<Parity> = None;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if self.get(r, c).is_zero() {
                    continue;
                }
                let p = self.parity[r].add(self.parity[c]);
                match seen {
                    None => seen = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.operator_parity().is_some()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|r| (0..r).all(|c| self.get(r, c).is_zero()))
    }

    /// Exact inverse by back substitution (triangular) or Gauss-Jordan.
    pub fn inverse(&self) -> Result<GradedMatrix> {
        let n = self.dim;
        if self.is_upper_triangular() {
            let mut inv = GradedMatrix::zeros(self.parity.clone());
            let mut dinv = Vec::with_capacity(n);
            for i in 0..n {
                dinv.push(self.get(i, i).inv().map_err(|_| Error::Singular)?);
            }
            // column by column: solve U x = e_c
            let cols: Vec<Vec<Scalar>> = (0..n)
                .into_par_iter()
                .map(|c| {
                    let mut x = vec![Scalar::zero(); n];
                    for i in (0..=c).rev() {
                        let mut acc = if i == c { Scalar::one() } else { Scalar::zero() };
                        for k in i + 1..=c {
                            let u = self.get(i, k);
                            if !u.is_zero() && !x[k].is_zero() {
                                acc -= &(u * &x[k]);
                            }
                        }
                        x[i] = &acc * &dinv[i];
                    }
                    x
                })
                .collect();
            for (c, col) in cols.into_iter().enumerate() {
                for (r, x) in col.into_iter().enumerate() {
                    if !x.is_zero() {
                        inv.set(r, c, x);
                    }
                }
            }
            return Ok(inv);
        }
        let mut a = self.clone();
        let mut inv = GradedMatrix::identity(self.parity.clone());
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            let pinv = a.get(col, col).inv()?;
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                a.axpy_row(r, col, &f);
                inv.axpy_row(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        for c in 0..self.dim {
            self.entries.swap(r1 * self.dim + c, r2 * self.dim + c);
        }
    }

    fn scale_row(&mut self, r: usize, k: &Scalar) {
        for c in 0..self.dim {
            let x = self.get(r, c) * k;
            self.set(r, c, x);
        }
    }

    /// row[r] -= f * row[src]
    fn axpy_row(&mut self, r: usize, src: usize, f: &Scalar) {
        for c in 0..self.dim {
            let s = self.get(src, c);
            if s.is_zero() {
                continue;
            }
            let x = self.get(r, c) - &(f * s);
            self.set(r, c, x);
        }
    }

    /// First entry where `self` and `o` differ, with the difference.
    pub fn first_difference(&self, o: &GradedMatrix) -> Option<(usize, usize, Scalar)> {
        if self.dim != o.dim {
            return Some((self.dim, o.dim, Scalar::zero()));
        }
        (0..self.dim * self.dim)
            .find(|&k| self.entries[k] != o.entries[k])
            .map(|k| (k / self.dim, k % self.dim, &self.entries[k] - &o.entries[k]))
    }

    /// First nonzero entry.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Scalar)> {
        self.entries
            .iter()
            .enumerate()
            .find(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k / self.dim, k % self.dim, x))
    }

    /// Entrywise `p -> 1`, failing on the first pole.
    pub fn limit_at_p1(&self) -> Result<GradedMatrix> {
        self.try_map(|r, c, x| {
            x.limit_at_p1().map_err(|_| Error::CancellationFailure {
                row: r,
                col: c,
                value: x.to_string(),
            })
        })
    }

    pub fn substitute_h(&self, v: &BigRational) -> Result<GradedMatrix> {
        self.try_map(|_, _, x| x.substitute_h(v))
    }

    /// Smallest `h`-valuation over all entries; `None` for the zero matrix.
    pub fn h_valuation(&self) -> Option<i64> {
        self.entries.iter().filter_map(Scalar::h_valuation).min()
    }

    pub fn commutator(&self, o: &GradedMatrix) -> GradedMatrix {
        &(self * o) - &(o * self)
    }

    pub fn anticommutator(&self, o: &GradedMatrix) -> GradedMatrix {
        &(self * o) + &(o * self)
    }
}

impl Mul for &GradedMatrix {
    type Output = GradedMatrix;
    fn mul(self, o: &GradedMatrix) -> GradedMatrix {
        self.try_mul(o).expect("matrix product on mismatched bases")
    }
}

impl Add for &GradedMatrix {
    type Output = GradedMatrix;
    fn add(self, o: &GradedMatrix) -> GradedMatrix {
        self.try_add(o).expect("matrix sum on mismatched bases")
    }
}

impl Sub for &GradedMatrix {
    type Output = GradedMatrix;
    fn sub(self, o: &GradedMatrix) -> GradedMatrix {
        self.try_sub(o).expect("matrix difference on mismatched bases")
    }
}

impl Neg for &GradedMatrix {
    type Output = GradedMatrix;
    fn neg(self) -> GradedMatrix {
        self.map(|x| -x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> GradedMatrix {
        let par = rep_parity(rows.len());
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|s| s.parse::<Scalar>().unwrap()))
            .collect();
        GradedMatrix::from_entries(par, entries).unwrap()
    }

    #[test]
    fn inverse_general_and_triangular() {
        let a = m(&[&["1", "h", "p"], &["0", "1", "h^2"], &["0", "0", "p"]]);
        let ai = a.inverse().unwrap();
        assert!((&a * &ai).is_identity());
        let b = m(&[&["0", "1", "0"], &["1", "0", "h"], &["p", "0", "1"]]);
        assert!((&b * &b.inverse().unwrap()).is_identity());
        let z = m(&[&["1", "1", "0"], &["1", "1", "0"], &["0", "0", "1"]]);
        assert_eq!(z.inverse(), Err(Error::Singular));
    }

    #[test]
    fn operator_parity_detection() {
        let e = m(&[&["0", "1", "0"], &["0", "0", "1"], &["0", "0", "0"]]);
        assert_eq!(e.operator_parity(), Some(Parity::Odd));
        let e2 = &e * &e;
        assert_eq!(e2.operator_parity(), Some(Parity::Even));
        let mixed = &e + &GradedMatrix::identity(rep_parity(3));
        assert_eq!(mixed.operator_parity(), None);
    }
}
