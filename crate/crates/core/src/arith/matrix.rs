//! Dense square matrices over `Q[h]` carrying a weight grading.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::poly::HPoly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Square matrix of [`HPoly`] entries. `grading[i]` is the weight label
/// (`2m`) of basis vector `i`.
#[derive(Clone, PartialEq, Eq)]
pub struct HMatrix {
    dim: usize,
    entries: Vec<HPoly>,
    grading: Vec<Rational>,
}

impl HMatrix {
    pub fn zeros(grading: Vec<Rational>) -> Self {
        let dim = grading.len();
        HMatrix {
            dim,
            entries: vec![HPoly::zero(); dim * dim],
            grading,
        }
    }

    pub fn identity(grading: Vec<Rational>) -> Self {
        let mut m = Self::zeros(grading);
        for i in 0..m.dim {
            m.set(i, i, HPoly::one());
        }
        m
    }

    pub fn from_fn(grading: Vec<Rational>, mut f: impl FnMut(usize, usize) -> HPoly) -> Self {
        let mut m = Self::zeros(grading);
        for r in 0..m.dim {
            for c in 0..m.dim {
                m.entries[r * m.dim + c] = f(r, c);
            }
        }
        m
    }

    /// A diagonal matrix whose entries are the grading labels themselves.
    pub fn grading_diagonal(grading: Vec<Rational>) -> Self {
        let g = grading.clone();
        Self::from_fn(grading, |r, c| {
            if r == c {
                HPoly::constant(g[r].clone())
            } else {
                HPoly::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grading(&self) -> &[Rational] {
        &self.grading
    }

    pub fn get(&self, r: usize, c: usize) -> &HPoly {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: HPoly) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(HPoly::is_zero)
    }

    pub fn identity_like(&self) -> Self {
        Self::identity(self.grading.clone())
    }

    pub fn zeros_like(&self) -> Self {
        Self::zeros(self.grading.clone())
    }

    pub fn map(&self, f: impl Fn(&HPoly) -> HPoly) -> Self {
        HMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
            grading: self.grading.clone(),
        }
    }

    pub fn scale(&self, p: &HPoly) -> Self {
        self.map(|e| e * p)
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        self.map(|e| e.scale(c))
    }

    /// Entrywise specialization `h = 0`.
    pub fn eval_h0(&self) -> Self {
        self.map(|e| HPoly::constant(e.eval_h0()))
    }

    /// Exact entrywise division by `h^k`.
    pub fn div_h_pow(&self, k: u32) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.div_h_pow(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(HMatrix {
            dim: self.dim,
            entries,
            grading: self.grading.clone(),
        })
    }

    fn check_same(&self, other: &HMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &HMatrix) -> Result<HMatrix> {
        self.check_same(other)?;
        Ok(HMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
            grading: self.grading.clone(),
        })
    }

    pub fn checked_sub(&self, other: &HMatrix) -> Result<HMatrix> {
        self.check_same(other)?;
        Ok(HMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
            grading: self.grading.clone(),
        })
    }

    pub fn checked_mul(&self, other: &HMatrix) -> Result<HMatrix> {
        self.check_same(other)?;
        let n = self.dim;
        let mut out = self.zeros_like();
        let rhs_rows: Vec<Vec<(usize, &HPoly)>> = (0..n)
            .map(|k| (0..n).filter_map(|c| Some((c, other.get(k, c))).filter(|(_, v)| !v.is_zero())).collect())
            .collect();
        for r in 0..n {
            for (k, row) in rhs_rows.iter().enumerate() {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for (c, b) in row {
                    out.entries[r * n + c] += &(a * *b);
                }
            }
        }
        Ok(out)
    }

    /// `[a, b] = ab - ba`.
    pub fn checked_commutator(&self, other: &HMatrix) -> Result<HMatrix> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    pub fn commutator(&self, other: &HMatrix) -> HMatrix {
        self.checked_commutator(other).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Kronecker product; basis index `(i, j)` maps to `i * dim(b) + j` and
    /// the grading of the product is the sum of the factor gradings.
    pub fn kron(&self, other: &HMatrix) -> HMatrix {
        let (n, m) = (self.dim, other.dim);
        let mut grading = Vec::with_capacity(n * m);
        for a in &self.grading {
            for b in &other.grading {
                grading.push(a + b);
            }
        }
        let mut out = HMatrix::zeros(grading);
        for r1 in 0..n {
            for c1 in 0..n {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..m {
                    for c2 in 0..m {
                        let b = other.get(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        out.entries[(r1 * m + r2) * (n * m) + c1 * m + c2] = a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> HMatrix {
        let mut acc = self.identity_like();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_vec(&self, v: &[HPoly]) -> Vec<HPoly> {
        assert_eq!(v.len(), self.dim, "vector length does not match matrix dimension");
        (0..self.dim)
            .map(|r| {
                let mut acc = HPoly::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// True when every nonzero entry `(r, c)` has
    /// `grading[r] = grading[c] + 2d`.
    pub fn is_weight_shift(&self, d: &Rational) -> bool {
        let step = d * int(2);
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| self.get(r, c).is_zero() || self.grading[r] == &self.grading[c] + &step)
        })
    }

    /// True when every nonzero entry `(r, c)` has `grading[r] > grading[c]`.
    pub fn is_strictly_raising(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| self.get(r, c).is_zero() || self.grading[r] > self.grading[c]))
    }

    /// True when every nonzero entry `(r, c)` has `grading[r] >= grading[c]`
    /// and the weight-preserving part is diagonal.
    pub fn is_weight_upper(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let e = self.get(r, c);
                e.is_zero() || self.grading[r] > self.grading[c] || (self.grading[r] == self.grading[c] && r == c)
            })
        })
    }

    /// Largest `h`-degree among the entries.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(HPoly::degree).max()
    }

    /// First entry where the two matrices differ, restricted to `rows`.
    pub fn first_difference_in_rows(
        &self,
        other: &HMatrix,
        rows: impl IntoIterator<Item = usize>,
    ) -> Option<(usize, usize)> {
        if self.dim != other.dim {
            return Some((0, 0));
        }
        for r in rows {
            for c in 0..self.dim {
                if self.get(r, c) != other.get(r, c) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn first_difference(&self, other: &HMatrix) -> Option<(usize, usize)> {
        self.first_difference_in_rows(other, 0..self.dim)
    }

    pub fn column(&self, c: usize) -> Vec<HPoly> {
        (0..self.dim).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<HPoly>> {
        (0..self.dim).map(|r| (0..self.dim).map(|c| self.get(r, c).clone()).collect()).collect()
    }

    pub fn scalar(grading: Vec<Rational>, s: &Rational) -> Self {
        Self::identity(grading).scale_rat(s)
    }

    /// Whether the matrix equals `s * I`.
    pub fn is_scalar(&self, s: &Rational) -> bool {
        let want = HPoly::constant(s.clone());
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| if r == c { self.get(r, c) == &want } else { self.get(r, c).is_zero() })
        })
    }
}

impl fmt::Debug for HMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HMatrix {}x{} [", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add<&HMatrix> for &HMatrix {
    type Output = HMatrix;
    fn add(self, rhs: &HMatrix) -> HMatrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&HMatrix> for &HMatrix {
    type Output = HMatrix;
    fn sub(self, rhs: &HMatrix) -> HMatrix {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<&HMatrix> for &HMatrix {
    type Output = HMatrix;
    fn mul(self, rhs: &HMatrix) -> HMatrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &HMatrix {
    type Output = HMatrix;
    fn neg(self) -> HMatrix {
        self.map(|e| -e)
    }
}

impl Add for HMatrix {
    type Output = HMatrix;
    fn add(self, rhs: HMatrix) -> HMatrix {
        &self + &rhs
    }
}

impl Sub for HMatrix {
    type Output = HMatrix;
    fn sub(self, rhs: HMatrix) -> HMatrix {
        &self - &rhs
    }
}

impl Mul for HMatrix {
    type Output = HMatrix;
    fn mul(self, rhs: HMatrix) -> HMatrix {
        &self * &rhs
    }
}

impl Neg for HMatrix {
    type Output = HMatrix;
    fn neg(self) -> HMatrix {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn flat(n: usize) -> Vec<Rational> {
        vec![Rational::zero(); n]
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = HMatrix> {
        prop::collection::vec((-3i64..=3, -2i64..=2), n * n).prop_map(move |cs| {
            HMatrix::from_fn(flat(n), |r, c| {
                let (a, b) = cs[r * n + c];
                HPoly::from_terms([(0, int(a)), (1, rat(b, 2))])
            })
        })
    }

    #[test]
    fn kron_of_identities() {
        let i2 = HMatrix::identity(flat(2));
        let i3 = HMatrix::identity(flat(3));
        assert_eq!(i2.kron(&i3), HMatrix::identity(flat(6)));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = HMatrix::identity(flat(2));
        let b = HMatrix::identity(flat(3));
        assert_eq!(a.checked_mul(&b), Err(Error::DimensionMismatch { left: 2, right: 3 }));
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_commutator(&b).is_err());
    }

    #[test]
    fn kron_grading_is_sum() {
        let a = HMatrix::identity(vec![int(1), int(-1)]);
        let b = HMatrix::identity(vec![int(2), int(0), int(-2)]);
        let k = a.kron(&b);
        let want: Vec<Rational> = [3, 1, -1, 1, -1, -3].into_iter().map(int).collect();
        assert_eq!(k.grading(), want.as_slice());
    }

    #[test]
    fn raising_degrees_add() {
        // basis with weights 2m = 2, 0, -2 (highest first)
        let g = vec![int(2), int(0), int(-2)];
        let mut up = HMatrix::zeros(g.clone());
        up.set(0, 1, HPoly::one());
        up.set(1, 2, HPoly::h());
        assert!(up.is_weight_shift(&int(1)));
        let up2 = &up * &up;
        assert!(up2.is_weight_shift(&int(2)));
        assert!(!up2.is_zero());
        assert!((&up2 * &up).is_zero());
        assert!(!up.is_weight_shift(&int(0)));
    }

    proptest! {
        #[test]
        fn commutator_with_self_vanishes(a in arb_matrix(3)) {
            prop_assert!(a.commutator(&a).is_zero());
        }

        #[test]
        fn mixed_product(a in arb_matrix(2), b in arb_matrix(2), c in arb_matrix(2), d in arb_matrix(2)) {
            prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
        }

        #[test]
        fn associative_and_distributive(a in arb_matrix(3), b in arb_matrix(3), c in arb_matrix(3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
