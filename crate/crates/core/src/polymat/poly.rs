//! Univariate polynomials in `D` over GF(q).

use crate::gf::FieldSpec;

/// Coefficients constant term first, trailing zeros trimmed. The zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: u32) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: u32, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &FieldSpec) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: u32, f: &FieldSpec) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly::from_coeffs(out)
    }

    /// `self += c * other`, in place.
    pub fn add_scaled_product(&mut self, c: &Poly, other: &Poly, f: &FieldSpec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let need = c.coeffs.len() + other.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, 0);
        }
        for (i, &a) in c.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    self.coeffs[i + j] = f.add(self.coeffs[i + j], f.mul(a, b));
                }
            }
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly, f: &FieldSpec) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = f
            .inv(divisor.leading())
            .expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for s in (0..quot.len()).rev() {
            let c = f.mul(rem[s + dd], inv);
            quot[s] = c;
            if c != 0 {
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    rem[s + i] = f.sub(rem[s + i], f.mul(c, d));
                }
            }
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self, f: &FieldSpec) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.leading()).unwrap(), f)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, x: u32, f: &FieldSpec) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `c0,c1,...`; the zero polynomial prints as `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Conventional notation, e.g. `1 + 2D + D^2`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "D".into(),
                _ => format!("D^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}{var}"),
            });
        }
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn arithmetic_over_gf3() {
        let f = make_field(3, 1).unwrap();
        let a = Poly::from_coeffs(vec![1, 1]); // 1 + D
        let b = Poly::from_coeffs(vec![0, 1, 1]); // D + D^2
        assert_eq!(a.mul(&a, &f), Poly::from_coeffs(vec![1, 2, 1]));
        assert_eq!(a.add(&a.neg(&f), &f), Poly::zero());
        let (q, r) = b.divrem(&a, &f);
        assert_eq!((q, r), (Poly::from_coeffs(vec![0, 1]), Poly::zero()));
        assert_eq!(b.gcd(&a.mul(&a, &f), &f), a);
        assert_eq!(Poly::from_coeffs(vec![1, 0, 0]).degree(), Some(0));
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(b.weight(), 2);
        assert_eq!(Poly::from_coeffs(vec![2, 0, 1]).pretty(), "2 + D^2");
    }

    #[test]
    fn divrem_reconstructs_dividend() {
        let f = make_field(5, 1).unwrap();
        let a = Poly::from_coeffs(vec![3, 0, 4, 1, 2, 2]);
        let b = Poly::from_coeffs(vec![1, 3, 2]);
        let (q, r) = a.divrem(&b, &f);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        let mut acc = r.clone();
        acc.add_scaled_product(&q, &b, &f);
        assert_eq!(acc, a);
    }
}
