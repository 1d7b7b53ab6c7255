//! Low-degree right inverses by solving `G R = I` coefficient by coefficient.
//!
//! With `G(0)` of full row rank, fix `P` with `G_0 P = I` and a kernel basis
//! `K` of `G_0`. Every polynomial right inverse of degree `ρ` satisfies
//!
//! `R_t = P (δ_t0 I - Σ_{i>=1} G_i R_{t-i}) + K z_t`,   `t = 0..=ρ`
//!
//! for some free vectors `z_t`, and the remaining equations at
//! `t = ρ+1..ρ+μ` are linear in the `z_t`. The recursion is time invariant, so
//! the effect of `z_s` is the effect of `z_0` shifted by `s`.

use crate::error::Result;
use crate::gf::FieldSpec;
use crate::matfq::{axpy, MatrixFq};

use super::{Poly, PolyMatrix};

struct Recursion {
    f: FieldSpec,
    k: usize,
    n: usize,
    /// `P^T`, `k x n`.
    pt: MatrixFq,
    /// Kernel basis of `G_0`, one row per vector.
    kb: MatrixFq,
    /// `G_i^T` for `i = 1..=μ`.
    gts: Vec<MatrixFq>,
}

impl Recursion {
    /// `Σ_{i>=1, t-i < seq.len()} G_i seq[t-i]`.
    fn feedback(&self, seq: &[Vec<u32>], t: usize) -> Vec<u32> {
        let mut acc = vec![0u32; self.k];
        for (i, gt) in self.gts.iter().enumerate() {
            let back = i + 1;
            if t < back || t - back >= seq.len() {
                continue;
            }
            let v = gt.left_mul_vec(&seq[t - back]).expect("dimensions agree");
            axpy(&self.f, &mut acc, 1, &v);
        }
        acc
    }

    fn run(&self, e: &[u32], zs: &[Vec<u32>], len: usize) -> Vec<Vec<u32>> {
        let f = &self.f;
        let mut seq: Vec<Vec<u32>> = Vec::with_capacity(len);
        for t in 0..len {
            let mut rhs = if t == 0 { e.to_vec() } else { vec![0; self.k] };
            let fb = self.feedback(&seq, t);
            axpy(f, &mut rhs, f.neg(1), &fb);
            let mut r = self.pt.left_mul_vec(&rhs).expect("dimensions agree");
            if let Some(z) = zs.get(t) {
                let kz = self.kb.left_mul_vec(z).expect("dimensions agree");
                axpy(f, &mut r, 1, &kz);
            }
            seq.push(r);
        }
        debug_assert!(seq.iter().all(|r| r.len() == self.n));
        seq
    }

    /// Residuals at times `len..len+μ` when the sequence stops after `len` terms.
    fn tail(&self, seq: &[Vec<u32>], len: usize) -> Vec<u32> {
        let mu = self.gts.len();
        (len..len + mu)
            .flat_map(|t| self.feedback(&seq[..len], t))
            .collect()
    }
}

fn invert(m: &MatrixFq) -> Option<MatrixFq> {
    let f = m.field();
    let k = m.rows();
    let aug = MatrixFq::from_fn(f, k, 2 * k, |i, j| {
        if j < k {
            m.get(i, j)
        } else if j - k == i {
            1
        } else {
            0
        }
    });
    let (red, pivots) = aug.rref();
    if pivots.len() < k || pivots[k - 1] >= k {
        return None;
    }
    Some(MatrixFq::from_fn(f, k, k, |i, j| red.get(i, k + j)))
}

/// Right inverse of least degree `<= max_degree`, or `None` when `G(0)` is
/// rank deficient or no such inverse exists.
pub(crate) fn right_inverse_by_degree(
    g: &PolyMatrix,
    max_degree: usize,
) -> Result<Option<PolyMatrix>> {
    let f = g.field().clone();
    let (k, n) = (g.rows(), g.cols());
    let mu = g.max_degree().unwrap_or(0);
    let g0 = g.coefficient_matrix(0);
    let (_, pivots) = g0.rref();
    if pivots.len() < k {
        return Ok(None);
    }
    let Some(inv) = invert(&g0.take_columns(&pivots)?) else {
        return Ok(None);
    };
    let pt = MatrixFq::from_fn(&f, k, n, |c, col| {
        pivots
            .iter()
            .position(|&p| p == col)
            .map_or(0, |j| inv.get(j, c))
    });
    let kb = g0.kernel_basis();
    let nk = kb.rows();
    let rec = Recursion {
        f: f.clone(),
        k,
        n,
        pt,
        kb,
        gts: (1..=mu)
            .map(|i| g.coefficient_matrix(i).transpose())
            .collect(),
    };

    let horizon = max_degree + 1;
    let zero_e = vec![0u32; k];
    let units: Vec<Vec<Vec<u32>>> = (0..nk)
        .map(|v| {
            let mut z = vec![0u32; nk];
            z[v] = 1;
            rec.run(&zero_e, &[z], horizon)
        })
        .collect();
    let particular: Vec<Vec<Vec<u32>>> = (0..k)
        .map(|c| {
            let mut e = vec![0u32; k];
            e[c] = 1;
            rec.run(&e, &[], horizon)
        })
        .collect();

    for rho in 0..=max_degree {
        let len = rho + 1;
        let unknowns = len * nk;
        let eqs = mu * k;
        // Column (s, v) holds the residual caused by z_s = e_v.
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(unknowns + k);
        for s in 0..len {
            for u in &units {
                let base = rec.tail(u, len - s);
                cols.push(base);
            }
        }
        for p in &particular {
            let t = rec.tail(p, len);
            cols.push(t.iter().map(|&x| f.neg(x)).collect());
        }
        let (red, piv) = if eqs == 0 {
            (MatrixFq::zeros(&f, 0, unknowns + k), Vec::new())
        } else {
            MatrixFq::from_fn(&f, eqs, unknowns + k, |i, j| cols[j][i]).rref()
        };
        if piv.iter().any(|&p| p >= unknowns) {
            continue;
        }
        let mut entries = vec![Poly::zero(); n * k];
        for c in 0..k {
            let mut zs = vec![vec![0u32; nk]; len];
            for (row, &p) in piv.iter().enumerate() {
                zs[p / nk.max(1)][p % nk.max(1)] = red.get(row, unknowns + c);
            }
            let mut e = vec![0u32; k];
            e[c] = 1;
            let seq = rec.run(&e, &zs, len);
            for j in 0..n {
                entries[j * k + c] = Poly::from_coeffs(seq.iter().map(|r| r[j]).collect());
            }
        }
        return Ok(Some(PolyMatrix::new(&f, n, k, entries)?));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn least_degree_inverse() {
        let f = make_field(3, 1).unwrap();
        let p = |c: &[u32]| Poly::from_coeffs(c.to_vec());
        // [1 + D + D^2, D]: no constant inverse, (1, 2 + 2D) works.
        let g = PolyMatrix::new(&f, 1, 2, vec![p(&[1, 1, 1]), p(&[0, 1])]).unwrap();
        let r = right_inverse_by_degree(&g, 4).unwrap().unwrap();
        assert!(g.mul(&r).unwrap().is_identity());
        assert_eq!(r.max_degree(), Some(1));
        // G(0) rank deficient.
        let g = PolyMatrix::new(&f, 1, 2, vec![p(&[0, 1]), p(&[0, 0, 1])]).unwrap();
        assert!(right_inverse_by_degree(&g, 4).unwrap().is_none());
    }
}
