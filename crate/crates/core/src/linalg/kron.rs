use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::{GradedMatrix, Parity};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Where the Koszul sign of `a ⊗ b` is read off.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    /// `(-1)^{|b| |col of a|}`: `(a⊗b)(v⊗w) = (-1)^{|b||v|} av ⊗ bw`.
    #[default]
    Column,
    /// `(-1)^{|b| |row of a|}`, kept for diagnosis.
    Row,
}

/// Graded Kronecker product, inferring the parity of `b` from its entries.
pub fn graded_kron(a: &GradedMatrix, b: &GradedMatrix, conv: SignConvention) -> Result<GradedMatrix> {
    let pb = b.operator_parity().ok_or(Error::NonHomogeneous)?;
    Ok(graded_kron_with(a, b, pb, conv))
}

/// Graded Kronecker product with the parity of `b` supplied.
pub fn graded_kron_with(a: &GradedMatrix, b: &GradedMatrix, pb: Parity, conv: SignConvention) -> GradedMatrix {
    let na = a.dim();
    let nb = b.dim();
    let parity: Vec<Parity> = a
        .parity()
        .iter()
        .flat_map(|x| b.parity().iter().map(move |y| x.add(*y)))
        .collect();
    let nz_b: Vec<(usize, usize, &Scalar)> = (0..nb)
        .flat_map(|k| (0..nb).map(move |l| (k, l)))
        .filter_map(|(k, l)| {
            let x = b.get(k, l);
            (!x.is_zero()).then_some((k, l, x))
        })
        .collect();
    let n = na * nb;
    let rows: Vec<Vec<(usize, Scalar)>> = (0..na)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..na {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let pivot = match conv {
                    SignConvention::Column => a.parity()[j],
                    SignConvention::Row => a.parity()[i],
                };
                let neg = pb.sign_with(pivot);
                for (k, l, y) in &nz_b {
                    let v = x * *y;
                    out.push((k * n + j * nb + l, if neg { -v } else { v }));
                }
            }
            out
        })
        .collect();
    let mut m = GradedMatrix::zeros(parity);
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row {
            // off = k * n + (j * nb + l); row index is i * nb + k
            let (k, col) = (off / n, off % n);
            m.set(i * nb + k, col, v);
        }
    }
    m
}

/// Koszul sign of reordering homogeneous factors with the given parities into `perm` order.
fn koszul_negates(parities: &[Parity], perm: &[usize]) -> bool {
    let mut neg = false;
    for s in 0..perm.len() {
        for t in s + 1..perm.len() {
            // perm[s] now precedes perm[t]; inverted if it came after originally
            if perm[s] > perm[t] && parities[perm[s]].sign_with(parities[perm[t]]) {
                neg = !neg;
            }
        }
    }
    neg
}

/// Re-express an operator on `V_0 ⊗ ... ⊗ V_{n-1}` on the reordered space
/// `V_{perm[0]} ⊗ ... ⊗ V_{perm[n-1]}` by conjugating with the graded flip.
pub fn permute_legs(m: &GradedMatrix, legs: &[Vec<Parity>], perm: &[usize]) -> Result<GradedMatrix> {
    let dims: Vec<usize> = legs.iter().map(Vec::len).collect();
    let total: usize = dims.iter().product();
    if total != m.dim() || perm.len() != legs.len() {
        return Err(Error::Shape("leg layout does not match operator".into()));
    }
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..legs.len()).collect::<Vec<_>>() {
        return Err(Error::Shape("not a permutation".into()));
    }
    let new_dims: Vec<usize> = perm.iter().map(|&t| dims[t]).collect();
    // image index and sign of every old basis vector
    let image: Vec<(usize, bool)> = (0..total)
        .map(|mut idx| {
            let mut digits = vec![0usize; dims.len()];
            for t in (0..dims.len()).rev() {
                digits[t] = idx % dims[t];
                idx /= dims[t];
            }
            let pars: Vec<Parity> = digits.iter().enumerate().map(|(t, &d)| legs[t][d]).collect();
            let mut out = 0;
            for (s, &t) in perm.iter().enumerate() {
                out = out * new_dims[s] + digits[t];
            }
            (out, koszul_negates(&pars, perm))
        })
        .collect();
    let mut parity = vec![Parity::Even; total];
    for (old, (new, _)) in image.iter().enumerate() {
        parity[*new] = m.parity()[old];
    }
    let mut out = GradedMatrix::zeros(parity);
    for r in 0..total {
        for c in 0..total {
            let x = m.get(r, c);
            if x.is_zero() {
                continue;
            }
            let (nr, sr) = image[r];
            let (nc, sc) = image[c];
            out.set(nr, nc, if sr ^ sc { -x } else { x.clone() });
        }
    }
    Ok(out)
}

/// Embed an operator acting on legs `(a, b)` (in that order) of a three-leg space.
pub fn embed_pair(m: &GradedMatrix, legs: &[Vec<Parity>; 3], a: usize, b: usize, conv: SignConvention) -> Result<GradedMatrix> {
    let c = 3 - a - b;
    if a == b || a > 2 || b > 2 {
        return Err(Error::Shape("bad leg pair".into()));
    }
    let id = GradedMatrix::identity(legs[c].clone());
    // operator on V_a ⊗ V_b ⊗ V_c
    let ext = graded_kron_with(m, &id, Parity::Even, conv);
    let layout = vec![legs[a].clone(), legs[b].clone(), legs[c].clone()];
    // position s of the target holds old leg perm[s]
    let order = [a, b, c];
    let perm: Vec<usize> = (0..3).map(|s| order.iter().position(|&t| t == s).unwrap()).collect();
    permute_legs(&ext, &layout, &perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::rep_parity;

    fn e3() -> GradedMatrix {
        let mut e = GradedMatrix::zeros(rep_parity(3));
        e.set(0, 1, Scalar::one());
        e.set(1, 2, Scalar::one());
        e
    }

    #[test]
    fn identity_factor_signs() {
        // B ⊗ I never picks up a sign; I ⊗ B carries (-1)^{|B|} on odd diagonal blocks
        let i = GradedMatrix::identity(rep_parity(3));
        let left = graded_kron(&i, &e3(), SignConvention::Column).unwrap();
        let right = graded_kron(&e3(), &i, SignConvention::Column).unwrap();
        for b in 0..3 {
            for r in 0..3 {
                for c in 0..3 {
                    let x = e3().get(r, c).clone();
                    let expect = if b % 2 == 1 { -x.clone() } else { x.clone() };
                    assert_eq!(left.get(b * 3 + r, b * 3 + c), &expect);
                    assert_eq!(right.get(r * 3 + b, c * 3 + b), &x);
                }
            }
        }
        let even = &e3() * &e3();
        let plain = graded_kron(&i, &even, SignConvention::Column).unwrap();
        assert_eq!(plain.get(3, 5), even.get(0, 2));
    }

    #[test]
    fn e_tensor_e_matches_definition() {
        // brute force: (a⊗b)(v_j⊗w_l) = (-1)^{|b||v_j|} a v_j ⊗ b w_l
        let e = e3();
        let k = graded_kron(&e, &e, SignConvention::Column).unwrap();
        let par = rep_parity(3);
        for i in 0..3 {
            for j in 0..3 {
                for kk in 0..3 {
                    for l in 0..3 {
                        let mut v = e.get(i, j) * e.get(kk, l);
                        if par[j].is_odd() {
                            v = -v;
                        }
                        assert_eq!(k.get(i * 3 + kk, j * 3 + l), &v);
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_operator_rejected() {
        let mixed = &e3() + &GradedMatrix::identity(rep_parity(3));
        assert_eq!(
            graded_kron(&e3(), &mixed, SignConvention::Column),
            Err(Error::NonHomogeneous)
        );
    }

    #[test]
    fn flip_twice_is_identity() {
        let legs = vec![rep_parity(3), rep_parity(5)];
        let mut f5 = GradedMatrix::zeros(rep_parity(5));
        f5.set(1, 0, Scalar::from_int(-2));
        f5.set(2, 1, Scalar::from_int(3));
        let m = graded_kron(&e3(), &f5, SignConvention::Column).unwrap();
        let once = permute_legs(&m, &legs, &[1, 0]).unwrap();
        let back = permute_legs(&once, &[rep_parity(5), rep_parity(3)], &[1, 0]).unwrap();
        assert_eq!(back, m);
        // a⊗b flipped is (-1)^{|a||b|} b⊗a
        let expect = graded_kron(&f5, &e3(), SignConvention::Column).unwrap();
        assert_eq!(once, -&expect);
    }
}
