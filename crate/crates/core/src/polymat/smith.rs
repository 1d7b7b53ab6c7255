//! Diagonalization of polynomial matrices by unimodular row and column operations.
//!
//! `U G V = [diag(d_1..d_k) | 0]`. Row operations are applied to `U` as they
//! happen; column operations are logged so that a right inverse `V [Δ^-1; 0] U`
//! can be formed without materializing the `n x n` matrix `V`.

use crate::gf::FieldSpec;

use super::poly::Poly;

#[derive(Debug, Clone)]
enum ColOp {
    Swap(usize, usize),
    /// `col[target] += factor * col[source]`
    AddMul {
        target: usize,
        source: usize,
        factor: Poly,
    },
}

pub(crate) struct Diagonalization {
    pub diag: Vec<Poly>,
    pub rank: usize,
    u: Option<Vec<Vec<Poly>>>,
    col_ops: Vec<ColOp>,
    cols: usize,
}

struct Work<'a> {
    f: &'a FieldSpec,
    a: Vec<Vec<Poly>>,
    u: Option<Vec<Vec<Poly>>>,
    col_ops: Option<Vec<ColOp>>,
    rows: usize,
    cols: usize,
}

impl Work<'_> {
    fn swap_rows(&mut self, x: usize, y: usize) {
        if x != y {
            self.a.swap(x, y);
            if let Some(u) = &mut self.u {
                u.swap(x, y);
            }
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if x != y {
            for row in &mut self.a {
                row.swap(x, y);
            }
            if let Some(ops) = &mut self.col_ops {
                ops.push(ColOp::Swap(x, y));
            }
        }
    }

    /// `row[target] += factor * row[source]`, restricted to columns `from..`.
    fn add_row(&mut self, target: usize, source: usize, factor: &Poly, from: usize) {
        let f = self.f;
        let src: Vec<Poly> = self.a[source][from..].to_vec();
        for (j, s) in src.iter().enumerate() {
            self.a[target][from + j].add_scaled_product(factor, s, f);
        }
        if let Some(u) = &mut self.u {
            let src = u[source].clone();
            for (j, s) in src.iter().enumerate() {
                u[target][j].add_scaled_product(factor, s, f);
            }
        }
    }

    /// `col[target] += factor * col[source]`, restricted to rows `from..`.
    fn add_col(&mut self, target: usize, source: usize, factor: &Poly, from: usize) {
        let f = self.f;
        for i in from..self.rows {
            let s = self.a[i][source].clone();
            self.a[i][target].add_scaled_product(factor, &s, f);
        }
        if let Some(ops) = &mut self.col_ops {
            ops.push(ColOp::AddMul {
                target,
                source,
                factor: factor.clone(),
            });
        }
    }

    fn min_degree_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if let Some(d) = self.a[i][j].degree() {
                    if best.map_or(true, |(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                        if d == 0 {
                            return Some((i, j));
                        }
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Diagonalizes a `rows x cols` matrix given row-major entries.
pub(crate) fn diagonalize(
    f: &FieldSpec,
    entries: &[Poly],
    rows: usize,
    cols: usize,
    record: bool,
) -> Diagonalization {
    let a: Vec<Vec<Poly>> = entries.chunks(cols).map(|r| r.to_vec()).collect();
    let u = record.then(|| {
        (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| {
                        if i == j {
                            Poly::constant(1)
                        } else {
                            Poly::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    });
    let mut w = Work {
        f,
        a,
        u,
        col_ops: record.then(Vec::new),
        rows,
        cols,
    };

    let mut rank = 0;
    for t in 0..rows.min(cols) {
        let Some((i, j)) = w.min_degree_entry(t) else {
            break;
        };
        w.swap_rows(t, i);
        w.swap_cols(t, j);
        loop {
            let pivot = w.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = w.a[i][t].divrem(&pivot, f);
                w.add_row(i, t, &q.neg(f), t);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = w.a[t][j].divrem(&pivot, f);
                w.add_col(j, t, &q.neg(f), t);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // A remainder of lower degree than the pivot is now in row or column t.
            let (i, j) = w.min_degree_entry(t).expect("a nonzero remainder exists");
            w.swap_rows(t, i);
            w.swap_cols(t, j);
        }
        rank += 1;
    }

    let diag = (0..rank).map(|t| w.a[t][t].clone()).collect();
    Diagonalization {
        diag,
        rank,
        u: w.u,
        col_ops: w.col_ops.unwrap_or_default(),
        cols,
    }
}

impl Diagonalization {
    /// Invariant factors (monic, each dividing the next) of the diagonal form.
    pub fn invariant_factors(&self, f: &FieldSpec) -> Vec<Poly> {
        let mut d: Vec<Poly> = self.diag.iter().map(|p| p.monic(f)).collect();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = d[i].gcd(&d[j], f);
                if g == d[i] {
                    continue;
                }
                let (l, _) = d[i].mul(&d[j], f).divrem(&g, f);
                d[i] = g;
                d[j] = l.monic(f);
            }
        }
        d
    }

    /// `n x k` right inverse (row-major) when every diagonal entry is a unit.
    pub fn right_inverse(&self, f: &FieldSpec) -> Option<Vec<Poly>> {
        let u = self.u.as_ref()?;
        let k = u.len();
        if self.rank != k || !self.diag.iter().all(Poly::is_unit) {
            return None;
        }
        let n = self.cols;
        let mut x: Vec<Vec<Poly>> = vec![vec![Poly::zero(); k]; n];
        for t in 0..k {
            let inv = f.inv(self.diag[t].leading()).ok()?;
            for c in 0..k {
                x[t][c] = u[t][c].scale(inv, f);
            }
        }
        for op in self.col_ops.iter().rev() {
            match op {
                ColOp::Swap(a, b) => x.swap(*a, *b),
                ColOp::AddMul {
                    target,
                    source,
                    factor,
                } => {
                    let src = x[*target].clone();
                    for (c, s) in src.iter().enumerate() {
                        x[*source][c].add_scaled_product(factor, s, f);
                    }
                }
            }
        }
        Some(x.into_iter().flatten().collect())
    }
}
