//! Group character codes over `Z_l^m`.
//!
//! For a field GF(q) containing an element `xi` of order `l`, the characters of
//! `Z_l^m` are `gamma_i(x) = xi^(x_1 i_1 + ... + x_m i_m)` where `(i_1, ..., i_m)`
//! are the base-`l` digits of `i`. The code `C_q(r, m; l)` is the set of vectors
//! `c` with `sum_i c_i gamma_i(x) = 0` for every `x` of weight `||x|| > r`.
//! The binary family `C_q(r, m)` is the case `l = 2`, `xi = -1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matfq::MatrixFq;

/// Largest group order `l^m` accepted.
pub const MAX_GROUP_SIZE: u64 = 1 << 14;

pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// `s_m(r)`: number of binary vectors of length `m` with Hamming weight at most `r`.
pub fn binary_dim(m: u32, r: u32) -> Result<u64> {
    if r > m {
        return Err(Error::Parameter(format!("r = {r} exceeds m = {m}")));
    }
    Ok((0..=r).map(|i| binomial(m as i64, i as i64) as u64).sum())
}

/// `(m, i)_l`: number of points of `Z_l^m` with coordinate sum `i`, by the
/// alternating binomial formula.
pub fn lary_weight_count(m: u32, i: u32, l: u32) -> Result<u64> {
    if l < 2 || m < 1 {
        return Err(Error::Parameter(format!(
            "need l >= 2 and m >= 1, got l={l} m={m}"
        )));
    }
    if i > m * (l - 1) {
        return Err(Error::Parameter(format!(
            "weight {i} exceeds m(l-1) = {}",
            m * (l - 1)
        )));
    }
    let (m, i, l) = (m as i64, i as i64, l as i64);
    let total: i128 = (0..=m)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            sign * (binomial(m, k) as i128) * (binomial(m - 1 + i - k * l, m - 1) as i128)
        })
        .sum();
    Ok(total as u64)
}

/// `S_m(r)`: number of points of `Z_l^m` with coordinate sum at most `r`.
pub fn lary_dim(m: u32, r: u32, l: u32) -> Result<u64> {
    if l >= 2 && r > m * (l - 1) {
        return Err(Error::Parameter(format!(
            "r = {r} exceeds m(l-1) = {}",
            m * (l - 1)
        )));
    }
    (0..=r).map(|i| lary_weight_count(m, i, l)).sum()
}

/// Splits `r = a(l-1) + b` with `0 <= b <= l-2`.
pub fn weight_decomposition(r: u32, l: u32) -> (u32, u32) {
    (r / (l - 1), r % (l - 1))
}

/// Designed minimum distance `(l-b) l^(m-1-a)` of `C_q(r, m; l)`; `2^(m-r)` for `l = 2`.
pub fn designed_distance(l: u32, m: u32, r: u32) -> Result<u64> {
    check_order_range(l, m, r)?;
    let (a, b) = weight_decomposition(r, l);
    Ok((l - b) as u64 * (l as u64).pow(m - 1 - a))
}

/// Designed distance of the dual code, `(b+2) l^a`; `2^(r+1)` for `l = 2`.
pub fn designed_dual_distance(l: u32, m: u32, r: u32) -> Result<u64> {
    check_order_range(l, m, r)?;
    let (a, b) = weight_decomposition(r, l);
    Ok((b + 2) as u64 * (l as u64).pow(a))
}

fn check_order_range(l: u32, m: u32, r: u32) -> Result<()> {
    if l < 2 || m < 1 {
        return Err(Error::Parameter(format!(
            "need l >= 2 and m >= 1, got l={l} m={m}"
        )));
    }
    if r >= m * (l - 1) {
        return Err(Error::precondition(
            "r < m(l-1)",
            format!("r = {r}, m(l-1) = {}", m * (l - 1)),
        ));
    }
    Ok(())
}

/// A point of `Z_l^m`; coordinate `k` is the `k`-th base-`l` digit of `index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPoint {
    pub l: u32,
    pub index: usize,
    pub coords: Vec<u32>,
}

impl GroupPoint {
    pub fn new(l: u32, m: u32, index: usize) -> Self {
        let mut coords = Vec::with_capacity(m as usize);
        let mut n = index;
        for _ in 0..m {
            coords.push((n % l as usize) as u32);
            n /= l as usize;
        }
        GroupPoint { l, index, coords }
    }

    /// `||x||`, the coordinate sum as an integer.
    pub fn weight(&self) -> u32 {
        self.coords.iter().sum()
    }

    pub fn m(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn negate(&self) -> GroupPoint {
        let l = self.l;
        let coords: Vec<u32> = self.coords.iter().map(|&c| (l - c) % l).collect();
        let index = coords
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * l as usize + c as usize);
        GroupPoint { l, index, coords }
    }
}

fn group_size(l: u32, m: u32) -> Result<u64> {
    if l < 2 || m < 1 {
        return Err(Error::Parameter(format!(
            "need l >= 2 and m >= 1, got l={l} m={m}"
        )));
    }
    let n = (l as u64).checked_pow(m).unwrap_or(u64::MAX);
    if n > MAX_GROUP_SIZE {
        return Err(Error::SizeGuard {
            what: "group Z_l^m",
            size: n,
            limit: MAX_GROUP_SIZE,
        });
    }
    Ok(n)
}

/// All points of `Z_l^m` in index order.
pub fn enumerate_group(l: u32, m: u32) -> Result<Vec<GroupPoint>> {
    let n = group_size(l, m)? as usize;
    Ok((0..n).map(|i| GroupPoint::new(l, m, i)).collect())
}

/// `gamma_index(arg) = xi^(sum_k arg_k index_k mod l)`.
pub fn character_value(
    field: &FieldSpec,
    xi: u32,
    index_point: &GroupPoint,
    arg_point: &GroupPoint,
) -> Result<u32> {
    if index_point.l != arg_point.l || index_point.coords.len() != arg_point.coords.len() {
        return Err(Error::DimensionMismatch(
            "character index and argument lie in different groups".into(),
        ));
    }
    let l = index_point.l;
    if field.order(xi).ok() != Some(l as u64) {
        return Err(Error::UnsupportedOrder {
            order: l as u64,
            q: field.q() as u64,
        });
    }
    let exp = index_point
        .coords
        .iter()
        .zip(&arg_point.coords)
        .map(|(&a, &b)| a as u64 * b as u64)
        .sum::<u64>()
        % l as u64;
    Ok(field.pow(xi, exp))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

/// A constructed character code `C_q(r, m; l)`.
#[derive(Debug, Clone)]
pub struct CharCode {
    pub field: FieldSpec,
    pub l: u32,
    pub m: u32,
    pub r: u32,
    pub xi: u32,
    /// Group indices of the defining set, in parity-check row order.
    pub defining_set: Vec<usize>,
    /// `||x||` of each parity-check row.
    pub row_weights: Vec<u32>,
    pub parity_check: MatrixFq,
    pub generator: MatrixFq,
    pub designed: BlockParams,
}

/// Builds `C_q(r, m; l)`.
///
/// Rows of the parity-check matrix run over the defining set in descending
/// weight, ascending group index within a weight class; columns run over the
/// character index `j = 0..l^m`. The generator is the kernel basis of the
/// parity-check matrix.
pub fn build_char_code(field: &FieldSpec, l: u32, m: u32, r: u32) -> Result<CharCode> {
    let n = group_size(l, m)?;
    if (field.q() - 1) % l != 0 {
        return Err(Error::UnsupportedOrder {
            order: l as u64,
            q: field.q() as u64,
        });
    }
    check_order_range(l, m, r)?;
    let xi = field.root_of_unity(l as u64)?;
    let points = enumerate_group(l, m)?;

    let mut defining: Vec<&GroupPoint> = points.iter().filter(|x| x.weight() > r).collect();
    defining.sort_by(|a, b| b.weight().cmp(&a.weight()).then(a.index.cmp(&b.index)));

    let powers: Vec<u32> = (0..l).map(|e| field.pow(xi, e as u64)).collect();
    let exponent = |x: &GroupPoint, j: &GroupPoint| -> usize {
        (x.coords
            .iter()
            .zip(&j.coords)
            .map(|(&a, &b)| a * b)
            .sum::<u32>()
            % l) as usize
    };
    let parity_check = MatrixFq::from_fn(field, defining.len(), n as usize, |i, j| {
        powers[exponent(defining[i], &points[j])]
    });

    let k = n - defining.len() as u64;
    let designed = BlockParams {
        n,
        k: if l == 2 {
            binary_dim(m, r)?
        } else {
            lary_dim(m, r, l)?
        },
        d: designed_distance(l, m, r)?,
    };
    let generator = parity_check.kernel_basis();
    if generator.rows() as u64 != k || designed.k != k {
        return Err(Error::Parameter(format!(
            "dimension check failed for C_{}({r},{m};{l}): kernel {}, census {k}, formula {}",
            field.q(),
            generator.rows(),
            designed.k
        )));
    }

    Ok(CharCode {
        field: field.clone(),
        l,
        m,
        r,
        xi,
        defining_set: defining.iter().map(|x| x.index).collect(),
        row_weights: defining.iter().map(|x| x.weight()).collect(),
        parity_check,
        generator,
        designed,
    })
}

/// The code `C_q(m(l-1)-1-r, m; l)`, monomially equivalent to the dual of `C_q(r, m; l)`.
pub fn dual_reference_code(field: &FieldSpec, l: u32, m: u32, r: u32) -> Result<CharCode> {
    check_order_range(l, m, r)?;
    let reflected = m * (l - 1) - 1 - r;
    build_char_code(field, l, m, reflected)
}

impl CharCode {
    pub fn n(&self) -> usize {
        self.parity_check.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// Number of parity-check rows with weight in `lo..=hi`.
    pub fn rows_in_weight_band(&self, lo: u32, hi: u32) -> usize {
        self.row_weights
            .iter()
            .filter(|&&w| lo <= w && w <= hi)
            .count()
    }

    /// Generator built from characters: one row per `y` outside the defining
    /// set (ascending index), entries `gamma_j(-y)`. Spans the same space as
    /// [`CharCode::generator`].
    pub fn character_generator(&self) -> Result<MatrixFq> {
        let points = enumerate_group(self.l, self.m)?;
        let outside: Vec<&GroupPoint> = points.iter().filter(|y| y.weight() <= self.r).collect();
        let f = &self.field;
        let mut rows = Vec::with_capacity(outside.len());
        for y in outside {
            let neg = y.negate();
            let row = points
                .iter()
                .map(|j| character_value(f, self.xi, j, &neg))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        MatrixFq::from_rows(f, points.len(), &rows)
    }

    /// Text document with parameters and both matrices.
    pub fn to_text(&self) -> String {
        format!(
            "q {}\nl {}\nm {}\nr {}\ndesigned [{}, {}, {}]\nparity-check\n{}generator\n{}",
            self.field.q(),
            self.l,
            self.m,
            self.r,
            self.designed.n,
            self.designed.k,
            self.designed.d,
            self.parity_check.to_text(),
            self.generator.to_text()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    /// Census of `Z_l^m` by weight, by direct enumeration.
    fn census(l: u32, m: u32) -> Vec<u64> {
        let mut counts = vec![0u64; (m * (l - 1) + 1) as usize];
        for i in 0..(l as usize).pow(m) {
            counts[GroupPoint::new(l, m, i).weight() as usize] += 1;
        }
        counts
    }

    #[test]
    fn binary_dimensions() {
        assert_eq!(binary_dim(5, 2).unwrap(), 16);
        assert_eq!(binary_dim(6, 2).unwrap(), 22);
        assert_eq!(binary_dim(6, 1).unwrap(), 7);
        assert_eq!(binary_dim(7, 3).unwrap(), 1 + 7 + 21 + 35);
        assert!(binary_dim(3, 4).is_err());
    }

    #[test]
    fn weight_counts_match_enumeration() {
        assert_eq!(census(3, 2), vec![1, 2, 3, 2, 1]);
        for i in 0..=4 {
            assert_eq!(
                lary_weight_count(2, i, 3).unwrap(),
                census(3, 2)[i as usize]
            );
        }
        assert_eq!(census(3, 3)[3], 7);
        assert_eq!(lary_weight_count(3, 3, 3).unwrap(), 7);
        for (l, m) in [(2, 5), (3, 4), (4, 3), (5, 3), (7, 2), (3, 6)] {
            let c = census(l, m);
            for i in 0..=m * (l - 1) {
                assert_eq!(
                    lary_weight_count(m, i, l).unwrap(),
                    c[i as usize],
                    "l={l} m={m} i={i}"
                );
            }
            assert_eq!(c.iter().sum::<u64>(), (l as u64).pow(m));
            assert_eq!(lary_weight_count(m, 0, l).unwrap(), 1);
        }
        assert!(lary_weight_count(2, 5, 3).is_err());
    }

    #[test]
    fn lary_dimensions() {
        assert_eq!(lary_dim(2, 1, 3).unwrap(), 3);
        assert_eq!(lary_dim(3, 2, 3).unwrap(), 10);
        assert_eq!(lary_dim(3, 6, 3).unwrap(), 27);
        assert_eq!(lary_dim(4, 12, 4).unwrap(), 256);
        assert!(lary_dim(3, 7, 3).is_err());
        // l = 2 agrees with the binomial sums
        for m in 1..8 {
            for r in 0..=m {
                assert_eq!(lary_dim(m, r, 2).unwrap(), binary_dim(m, r).unwrap());
            }
        }
    }

    #[test]
    fn group_enumeration_order() {
        let g = enumerate_group(2, 2).unwrap();
        let coords: Vec<_> = g.iter().map(|x| x.coords.clone()).collect();
        assert_eq!(coords, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(enumerate_group(3, 2).unwrap()[5].coords, vec![2, 1]);
        let p = &enumerate_group(3, 3).unwrap()[26];
        assert_eq!((p.coords.clone(), p.weight()), (vec![2, 2, 2], 6));
        assert!(matches!(
            enumerate_group(2, 15),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn character_values() {
        let f = make_field(5, 1).unwrap();
        let xi = f.root_of_unity(2).unwrap();
        let zero = GroupPoint::new(2, 3, 0);
        for y in enumerate_group(2, 3).unwrap() {
            assert_eq!(character_value(&f, xi, &zero, &y).unwrap(), 1);
        }
        let x = GroupPoint {
            l: 2,
            index: 3,
            coords: vec![1, 1],
        };
        let y = GroupPoint {
            l: 2,
            index: 1,
            coords: vec![1, 0],
        };
        assert_eq!(character_value(&f, xi, &x, &y).unwrap(), f.q() - 1);

        let f7 = make_field(7, 1).unwrap();
        let x = GroupPoint {
            l: 3,
            index: 7,
            coords: vec![1, 2],
        };
        let i = GroupPoint {
            l: 3,
            index: 8,
            coords: vec![2, 2],
        };
        // (2 + 4) mod 3 = 0
        assert_eq!(character_value(&f7, 2, &x, &i).unwrap(), 1);
        // 3 has order 6 in GF(7)
        assert!(character_value(&f7, 3, &x, &i).is_err());
    }

    #[test]
    fn small_binary_code() {
        let f = make_field(3, 1).unwrap();
        let c = build_char_code(&f, 2, 3, 1).unwrap();
        assert_eq!(c.designed, BlockParams { n: 8, k: 4, d: 4 });
        assert_eq!(c.parity_check.rank(), 4);
        assert_eq!(c.row_weights, vec![3, 2, 2, 2]);
        assert_eq!(c.defining_set, vec![7, 3, 5, 6]);
        assert!(c
            .generator
            .mul(&c.parity_check.transpose())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn small_lary_code() {
        let f = make_field(7, 1).unwrap();
        let c = build_char_code(&f, 3, 2, 1).unwrap();
        assert_eq!(c.designed, BlockParams { n: 9, k: 3, d: 6 });
        assert_eq!(c.xi, 2);
        let top = build_char_code(&f, 3, 2, 3).unwrap();
        assert_eq!(top.parity_check.rows(), 1);
        assert_eq!(top.k(), 8);
        assert!(build_char_code(&f, 3, 2, 4).is_err());
        assert!(build_char_code(&make_field(5, 1).unwrap(), 3, 2, 1).is_err());
    }

    #[test]
    fn rank_census_of_larger_codes() {
        let f = make_field(3, 1).unwrap();
        let c = build_char_code(&f, 2, 5, 1).unwrap();
        assert_eq!(c.parity_check.rank(), 26);
        let u = build_char_code(&f, 2, 5, 2).unwrap();
        assert_eq!(u.parity_check.rref().1.len(), 16);
        assert_eq!(build_char_code(&f, 2, 3, 1).unwrap().generator.rows(), 4);
        // The weight > 2 rows of H_{X_1} are exactly H_{X_2}.
        let top: Vec<usize> = (0..16).collect();
        assert_eq!(c.parity_check.take_rows(&top).unwrap(), u.parity_check);
    }

    #[test]
    fn dual_reference_parameters() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(dual_reference_code(&f, 2, 3, 1).unwrap().r, 1);
        let d = dual_reference_code(&f, 2, 5, 1).unwrap();
        assert_eq!((d.r, d.designed.d), (3, 4));
        let f7 = make_field(7, 1).unwrap();
        let d = dual_reference_code(&f7, 3, 2, 1).unwrap();
        assert_eq!((d.r, d.designed.d), (2, 3));
        assert!(dual_reference_code(&f, 2, 3, 3).is_err());
    }

    #[test]
    fn dual_distance_formula_matches_reflected_code() {
        for l in 2..6u32 {
            for m in 1..5u32 {
                for r in 0..m * (l - 1) {
                    let reflected = m * (l - 1) - 1 - r;
                    assert_eq!(
                        designed_dual_distance(l, m, r).unwrap(),
                        designed_distance(l, m, reflected).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn character_generator_spans_kernel() {
        for (q, l, m, r) in [
            (3u64, 2, 3, 1),
            (5, 2, 4, 2),
            (7, 3, 2, 1),
            (7, 3, 3, 2),
            (9, 2, 3, 0),
        ] {
            let f = crate::gf::field_of_order(q).unwrap();
            let c = build_char_code(&f, l, m, r).unwrap();
            let gx = c.character_generator().unwrap();
            assert_eq!(gx.rows(), c.k());
            assert!(gx.mul(&c.parity_check.transpose()).unwrap().is_zero());
            assert_eq!(gx.rank(), c.k());
            assert_eq!(
                MatrixFq::vstack(&[&gx, &c.generator]).unwrap().rank(),
                c.k()
            );
        }
    }
}
