//! Dense matrices over GF(q) with exact elimination.
//!
//! Vectors are rows. Elimination picks the first nonzero entry scanning columns
//! left to right and, within a column, rows top to bottom.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{field_of_order, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl MatrixFq {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixFq {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert!(field.contains(v));
                data.push(v);
            }
        }
        MatrixFq {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows of encodings; `cols` is needed when `rows` is empty.
    pub fn from_rows(field: &FieldSpec, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| !field.contains(v)) {
                return Err(Error::Parameter(format!(
                    "{bad} is not an element of GF({})",
                    field.q()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(MatrixFq {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|&v| v == 0)
    }

    fn check_field(&self, other: &MatrixFq) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    pub fn transpose(&self) -> MatrixFq {
        MatrixFq::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatrixFq::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// `v * self`, for a row vector `v` of length `rows`.
    pub fn left_mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                axpy(f, &mut out, c, self.row(i));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (MatrixFq, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if factor != 0 {
                        m.add_row_multiple(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only.
        let f = &self.field;
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for i in r + 1..m.rows {
                let factor = m.get(i, c);
                if factor != 0 {
                    m.add_row_multiple(i, r, f.neg(f.mul(factor, inv)));
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel `{v : self * v^T = 0}`, one vector per row.
    ///
    /// One basis vector per free column of the RREF, with a 1 in that column.
    pub fn kernel_basis(&self) -> MatrixFq {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        MatrixFq::from_fn(f, free.len(), self.cols, |b, j| {
            let fc = free[b];
            if j == fc {
                1
            } else if is_pivot[j] {
                let pr = pivots.iter().position(|&p| p == j).unwrap();
                f.neg(r.get(pr, fc))
            } else {
                0
            }
        })
    }

    pub fn take_rows(&self, indices: &[usize]) -> Result<MatrixFq> {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.rows,
                });
            }
            data.extend_from_slice(self.row(i));
        }
        Ok(MatrixFq {
            field: self.field.clone(),
            rows: indices.len(),
            cols: self.cols,
            data,
        })
    }

    pub fn take_columns(&self, indices: &[usize]) -> Result<MatrixFq> {
        if let Some(&bad) = indices.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.cols,
            });
        }
        Ok(MatrixFq::from_fn(
            &self.field,
            self.rows,
            indices.len(),
            |i, j| self.get(i, indices[j]),
        ))
    }

    /// Stacks matrices top to bottom.
    pub fn vstack(parts: &[&MatrixFq]) -> Result<MatrixFq> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("nothing to stack".into()))?;
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            first.check_field(m)?;
            if m.cols != first.cols {
                return Err(Error::DimensionMismatch(format!(
                    "cannot stack {} columns onto {}",
                    m.cols, first.cols
                )));
            }
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Ok(MatrixFq {
            field: first.field.clone(),
            rows,
            cols: first.cols,
            data,
        })
    }

    /// Appends zero rows at the bottom up to `target` rows.
    pub fn pad_zero_rows(&self, target: usize) -> Result<MatrixFq> {
        if target < self.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot pad {} rows down to {target}",
                self.rows
            )));
        }
        let mut data = self.data.clone();
        data.resize(target * self.cols, 0);
        Ok(MatrixFq {
            field: self.field.clone(),
            rows: target,
            cols: self.cols,
            data,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: u32) {
        let f = self.field.clone();
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *v = f.mul(*v, c);
        }
    }

    /// row[target] += c * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, c: u32) {
        let f = self.field.clone();
        let cols = self.cols;
        for j in 0..cols {
            let s = self.data[source * cols + j];
            if s != 0 {
                let t = &mut self.data[target * cols + j];
                *t = f.add(*t, f.mul(c, s));
            }
        }
    }

    /// Text form: `rows cols q` then one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.field.q());
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<MatrixFq> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(hl + 1, "header must be `rows cols q`"))?;
        let [rows, cols, q] = nums[..] else {
            return Err(Error::parse(hl + 1, "header must be `rows cols q`"));
        };
        let field = field_of_order(q)?;
        let mut out = Vec::with_capacity(rows as usize);
        for (ln, line) in lines {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(ln + 1, "non-numeric entry"))?;
            if row.len() != cols as usize {
                return Err(Error::parse(
                    ln + 1,
                    format!("expected {cols} entries, found {}", row.len()),
                ));
            }
            out.push(row);
        }
        if out.len() != rows as usize {
            return Err(Error::parse(
                hl + 1,
                format!("expected {rows} rows, found {}", out.len()),
            ));
        }
        MatrixFq::from_rows(&field, cols as usize, &out)
    }
}

/// `acc += c * x` over GF(q).
#[inline]
pub(crate) fn axpy(f: &FieldSpec, acc: &mut [u32], c: u32, x: &[u32]) {
    for (a, &v) in acc.iter_mut().zip(x) {
        if v != 0 {
            *a = f.add(*a, f.mul(c, v));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use proptest::prelude::*;

    fn gf(p: u32) -> FieldSpec {
        make_field(p, 1).unwrap()
    }

    #[test]
    fn rank_of_trivial_matrices() {
        let f = gf(3);
        assert_eq!(MatrixFq::zeros(&f, 3, 4).rank(), 0);
        assert_eq!(MatrixFq::identity(&f, 5).rank(), 5);
    }

    #[test]
    fn rref_examples() {
        let f = gf(3);
        let id = MatrixFq::identity(&f, 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));

        let m = MatrixFq::from_rows(&f, 2, &[vec![1, 2], vec![2, 4 % 3]]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(
            r,
            MatrixFq::from_rows(&f, 2, &[vec![1, 2], vec![0, 0]]).unwrap()
        );
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(3);
        assert_eq!(MatrixFq::identity(&f, 4).kernel_basis().rows(), 0);
        // [1, -1] over GF(3)
        let m = MatrixFq::from_rows(&f, 2, &[vec![1, 2]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k, MatrixFq::from_rows(&f, 2, &[vec![1, 1]]).unwrap());
    }

    #[test]
    fn stacking_and_padding() {
        let f = gf(5);
        let a = MatrixFq::from_fn(&f, 2, 3, |i, j| ((i + 2 * j) % 5) as u32);
        let p = a.pad_zero_rows(4).unwrap();
        assert_eq!(p.rows(), 4);
        assert!(p.is_zero_row(2) && p.is_zero_row(3));
        assert_eq!(p.take_rows(&[0, 1]).unwrap(), a);
        assert!(a.pad_zero_rows(1).is_err());

        let b = MatrixFq::from_fn(&f, 3, 3, |i, j| ((i * j + 1) % 5) as u32);
        let s = MatrixFq::vstack(&[&a, &b]).unwrap();
        assert_eq!(s.take_rows(&[0, 1]).unwrap(), a);
        assert_eq!(s.take_rows(&[2, 3, 4]).unwrap(), b);

        let wide = MatrixFq::zeros(&f, 1, 4);
        assert!(matches!(
            MatrixFq::vstack(&[&a, &wide]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            a.take_rows(&[2]),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
        let other = MatrixFq::zeros(&gf(3), 1, 3);
        assert!(matches!(
            MatrixFq::vstack(&[&a, &other]),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn text_round_trip_over_extension_field() {
        let f = make_field(3, 2).unwrap();
        let m = MatrixFq::from_fn(&f, 3, 4, |i, j| ((i * 4 + j) % 9) as u32);
        let t = m.to_text();
        assert!(t.starts_with("3 4 9\n"));
        assert_eq!(MatrixFq::from_text(&t).unwrap(), m);
        assert!(MatrixFq::from_text("2 2 3\n1 2\n").is_err());
        assert!(MatrixFq::from_text("1 2 3\n1 7\n").is_err());
    }

    fn matrix_strategy() -> impl Strategy<Value = MatrixFq> {
        (
            prop::sample::select(vec![3u32, 5, 7, 9]),
            1usize..6,
            1usize..7,
        )
            .prop_flat_map(|(q, r, c)| {
                prop::collection::vec(0..q, r * c).prop_map(move |data| {
                    let f = crate::gf::field_of_order(q as u64).unwrap();
                    MatrixFq::from_fn(&f, r, c, |i, j| data[i * c + j])
                })
            })
    }

    proptest! {
        #[test]
        fn rank_and_kernel_invariants(m in matrix_strategy(), other in matrix_strategy()) {
            let (r, piv) = m.rref();
            prop_assert_eq!(m.rank(), piv.len());
            prop_assert_eq!(r.rank(), m.rank());
            let k = m.kernel_basis();
            prop_assert_eq!(k.rows() + m.rank(), m.cols());
            prop_assert!(m.mul(&k.transpose()).unwrap().is_zero());
            prop_assert_eq!(k.rank(), k.rows());
            if other.cols() == m.cols() && other.field() == m.field() {
                let s = MatrixFq::vstack(&[&m, &other]).unwrap();
                prop_assert!(s.rank() >= m.rank().max(other.rank()));
            }
        }

        #[test]
        fn rank_invariant_under_row_operations(m in matrix_strategy(), seed in any::<u64>()) {
            let f = m.field().clone();
            let n = m.rows();
            let perm: Vec<usize> = (0..n).map(|i| (i + seed as usize) % n).collect();
            let permuted = m.take_rows(&perm).unwrap();
            prop_assert_eq!(permuted.rank(), m.rank());
            let scale = 1 + (seed % (f.q() as u64 - 1)) as u32;
            let scaled = MatrixFq::from_fn(&f, n, m.cols(), |i, j| {
                if i == 0 { f.mul(scale, m.get(i, j)) } else { m.get(i, j) }
            });
            prop_assert_eq!(scaled.rank(), m.rank());
        }
    }
}
