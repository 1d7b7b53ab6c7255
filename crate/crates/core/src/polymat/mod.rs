//! Polynomial generator matrices `G(D)` over GF(q)[D].
//!
//! A `k x n` matrix `G(D)` generates the code `{u(D) G(D) : u(D) in GF(q)[D]^k}`.
//! Row `i` has degree `δ_i = max_j deg g_ij`; the matrix has degree `δ = Σ δ_i`
//! and memory `μ = max δ_i`. It is basic when it has a polynomial right
//! inverse, and reduced when its high-order coefficient matrix has full rank.

mod poly;
mod rinv;
mod smith;

pub use poly::Poly;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{field_of_order, FieldSpec};
use crate::matfq::MatrixFq;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl std::fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// `(n, k, δ; μ)` together with the individual row degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvParams {
    pub n: usize,
    pub k: usize,
    pub row_degrees: Vec<usize>,
    pub degree: usize,
    pub memory: usize,
}

/// Outcome of the basicness test.
#[derive(Debug, Clone)]
pub enum Basicness {
    /// `G R = I` for the carried `n x k` matrix.
    Basic { right_inverse: PolyMatrix },
    /// The first invariant factor that is not a unit.
    NotBasic { invariant_factor: Poly },
}

impl Basicness {
    pub fn is_basic(&self) -> bool {
        matches!(self, Basicness::Basic { .. })
    }
}

impl PolyMatrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|p| p.coeffs().iter().any(|&c| !field.contains(c)))
        {
            return Err(Error::Parameter(format!(
                "coefficient outside GF({})",
                field.q()
            )));
        }
        Ok(PolyMatrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// `Σ_i coefficients[i] D^i`; all coefficient matrices must share a shape.
    pub fn from_coefficients(coefficients: &[MatrixFq]) -> Result<Self> {
        let first = coefficients
            .first()
            .ok_or_else(|| Error::DimensionMismatch("no coefficient matrices".into()))?;
        let (rows, cols) = (first.rows(), first.cols());
        for c in coefficients {
            if c.field() != first.field() {
                return Err(Error::FieldMismatch(
                    first.field().to_string(),
                    c.field().to_string(),
                ));
            }
            if c.rows() != rows || c.cols() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient matrix {}x{} differs from {rows}x{cols}",
                    c.rows(),
                    c.cols()
                )));
            }
        }
        let entries = (0..rows * cols)
            .map(|idx| {
                let (i, j) = (idx / cols, idx % cols);
                Poly::from_coeffs(coefficients.iter().map(|c| c.get(i, j)).collect())
            })
            .collect();
        Ok(PolyMatrix {
            field: first.field().clone(),
            rows,
            cols,
            entries,
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

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Largest exponent present, `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// The constant matrix multiplying `D^power`.
    pub fn coefficient_matrix(&self, power: usize) -> MatrixFq {
        MatrixFq::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.get(i, j).coeff(power)
        })
    }

    /// Row degrees, `None` for a zero row.
    pub fn row_degree(&self, i: usize) -> Option<usize> {
        self.row(i).iter().filter_map(Poly::degree).max()
    }

    fn nonzero_row_degrees(&self) -> Result<Vec<usize>> {
        (0..self.rows)
            .map(|i| self.row_degree(i).ok_or(Error::ZeroRow(i)))
            .collect()
    }

    pub fn params(&self) -> Result<ConvParams> {
        let row_degrees = self.nonzero_row_degrees()?;
        Ok(ConvParams {
            n: self.cols,
            k: self.rows,
            degree: row_degrees.iter().sum(),
            memory: row_degrees.iter().copied().max().unwrap_or(0),
            row_degrees,
        })
    }

    /// Entry `(i, j)` is the coefficient of `D^δ_i` in `g_ij`.
    pub fn high_order_matrix(&self) -> Result<MatrixFq> {
        let row_degrees = self.nonzero_row_degrees()?;
        Ok(MatrixFq::from_fn(
            &self.field,
            self.rows,
            self.cols,
            |i, j| self.get(i, j).coeff(row_degrees[i]),
        ))
    }

    /// Rank over the field of rational functions in `D`.
    pub fn rank(&self) -> usize {
        smith::diagonalize(&self.field, &self.entries, self.rows, self.cols, false).rank
    }

    fn check_full_rank(&self) -> Result<()> {
        if self.rows > self.cols {
            return Err(Error::RankDeficient {
                rank: self.cols,
                expected: self.rows,
            });
        }
        Ok(())
    }

    /// Decides basicness through the diagonal form; certifies with a right inverse.
    pub fn is_basic(&self) -> Result<Basicness> {
        self.check_full_rank()?;
        self.nonzero_row_degrees()?;
        let d = smith::diagonalize(&self.field, &self.entries, self.rows, self.cols, false);
        if d.rank < self.rows {
            return Err(Error::RankDeficient {
                rank: d.rank,
                expected: self.rows,
            });
        }
        if let Some(invariant_factor) = d
            .invariant_factors(&self.field)
            .into_iter()
            .find(|p| !p.is_unit())
        {
            return Ok(Basicness::NotBasic { invariant_factor });
        }
        // Tracking the transforms lets degrees grow; try a direct solve first.
        let degree: usize = self.nonzero_row_degrees()?.iter().sum();
        if let Some(right_inverse) = rinv::right_inverse_by_degree(self, degree.max(1))? {
            return Ok(Basicness::Basic { right_inverse });
        }
        let d = smith::diagonalize(&self.field, &self.entries, self.rows, self.cols, true);
        let r = d
            .right_inverse(&self.field)
            .expect("unit diagonal admits a right inverse");
        let right_inverse = PolyMatrix::new(&self.field, self.cols, self.rows, r)?;
        Ok(Basicness::Basic { right_inverse })
    }

    /// Invariant factors of the Smith normal form, monic and in divisibility order.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        smith::diagonalize(&self.field, &self.entries, self.rows, self.cols, false)
            .invariant_factors(&self.field)
    }

    /// Full-rank high-order coefficient matrix test.
    pub fn is_reduced(&self) -> Result<bool> {
        self.check_full_rank()?;
        let high = self.high_order_matrix()?;
        if high.rank() == self.rows {
            return Ok(true);
        }
        let rank = self.rank();
        if rank < self.rows {
            return Err(Error::RankDeficient {
                rank,
                expected: self.rows,
            });
        }
        Ok(false)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut entries = vec![Poly::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    entries[i * other.cols + j].add_scaled_product(a, other.get(k, j), f);
                }
            }
        }
        PolyMatrix::new(f, self.rows, other.cols, entries)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let p = self.get(i, j);
                    if i == j {
                        p.coeffs() == [1]
                    } else {
                        p.is_zero()
                    }
                })
            })
    }

    /// Header `k n q maxdeg`, then one line per row with each entry's
    /// coefficient list `c0,c1,...`; the zero polynomial is written `0`.
    pub fn to_text(&self) -> String {
        let maxdeg = self.max_degree().unwrap_or(0);
        let mut s = format!(
            "{} {} {} {}\n",
            self.rows,
            self.cols,
            self.field.q(),
            maxdeg
        );
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(Poly::to_text).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<PolyMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let bad_header = || Error::parse(hl + 1, "header must be `k n q maxdeg`");
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad_header())?;
        let [k, n, q, maxdeg] = nums[..] else {
            return Err(bad_header());
        };
        let field = field_of_order(q)?;
        let mut entries = Vec::with_capacity((k * n) as usize);
        let mut seen = 0;
        for (ln, line) in lines {
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != n as usize {
                return Err(Error::parse(
                    ln + 1,
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
            for tok in row {
                let coeffs = tok
                    .split(',')
                    .map(|c| c.parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::parse(ln + 1, format!("bad coefficient list `{tok}`")))?;
                let p = Poly::from_coeffs(coeffs);
                if p.degree().unwrap_or(0) as u64 > maxdeg {
                    return Err(Error::parse(ln + 1, "entry exceeds declared maxdeg"));
                }
                entries.push(p);
            }
            seen += 1;
        }
        if seen != k {
            return Err(Error::parse(
                hl + 1,
                format!("expected {k} rows, found {seen}"),
            ));
        }
        PolyMatrix::new(&field, k as usize, n as usize, entries)
    }
}

/// `u(D) G(D)` for a length-`k` vector of polynomials.
pub fn encode(u: &[Poly], g: &PolyMatrix) -> Result<Vec<Poly>> {
    if u.len() != g.rows {
        return Err(Error::DimensionMismatch(format!(
            "message has {} components, generator has {} rows",
            u.len(),
            g.rows
        )));
    }
    let f = &g.field;
    let mut out = vec![Poly::zero(); g.cols];
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            o.add_scaled_product(ui, g.get(i, j), f);
        }
    }
    Ok(out)
}

/// Total number of nonzero coefficients over all components.
pub fn weight(v: &[Poly]) -> usize {
    v.iter().map(Poly::weight).sum()
}
