//! Clebsch-Gordan decomposition of `V(j1) ⊗ V(j2)` for `U_h(sl(2))`.
//!
//! `ΔH` is not diagonal in the product basis, so the weight eigenvectors are
//!
//! ```text
//! |(j1 m1)(j2 m2)> = sum_{k,l} α(m1+k, m2+l) |j1 m1+k> ⊗ |j2 m2+l>
//! ```
//!
//! with `α(m1, m2) = 1`. The coefficients are produced three ways (two
//! recurrences and a closed form) which must agree. Coupled states `|j m>`
//! are then built from the kernel of `ΔX` and lowered with `ΔZ-`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{elim, gen_binomial, int, HMatrix, HPoly, HalfInt, Rational};
use crate::check::{Check, CheckReport};
use crate::coproduct::{CoproductSet, TensorSpace};
use crate::error::{Error, Result};
use crate::sl2::{self, RepSL2};

/// `α(m1+k, m2+l)` for `0 <= k <= j1-m1`, `0 <= l <= j2-m2`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaTable {
    pub j1: HalfInt,
    pub m1: HalfInt,
    pub j2: HalfInt,
    pub m2: HalfInt,
    kmax: usize,
    lmax: usize,
    entries: Vec<HPoly>,
}

impl AlphaTable {
    fn empty(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt) -> Result<Self> {
        j1.check_highest_weight()?;
        j2.check_highest_weight()?;
        m1.check_weight_of(j1)?;
        m2.check_weight_of(j2)?;
        let kmax = (j1 - m1).as_int().expect("checked weight") as usize;
        let lmax = (j2 - m2).as_int().expect("checked weight") as usize;
        Ok(AlphaTable { j1, m1, j2, m2, kmax, lmax, entries: vec![HPoly::zero(); (kmax + 1) * (lmax + 1)] })
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    pub fn get(&self, k: usize, l: usize) -> &HPoly {
        &self.entries[k * (self.lmax + 1) + l]
    }

    pub fn set(&mut self, k: usize, l: usize, v: HPoly) {
        self.entries[k * (self.lmax + 1) + l] = v;
    }

    /// Entries in `(k, l)` lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &HPoly)> {
        (0..=self.kmax).flat_map(move |k| (0..=self.lmax).map(move |l| (k, l, self.get(k, l))))
    }

    /// Index pairs with `k + l = s`.
    fn diagonal(&self, s: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=s.min(self.kmax)).filter_map(move |k| (s - k <= self.lmax).then_some((k, s - k)))
    }

    fn fill(&mut self, mut rhs: impl FnMut(&AlphaTable, usize, usize) -> HPoly) {
        self.set(0, 0, HPoly::one());
        for s in 1..=self.kmax + self.lmax {
            let cells: Vec<_> = self.diagonal(s).collect();
            for (k, l) in cells {
                let v = rhs(self, k, l).scale(&-Rational::new(BigInt::one(), BigInt::from(s)));
                self.set(k, l, v);
            }
        }
    }

    /// Assembles the weight eigenvector over the product basis.
    pub fn to_vector(&self) -> WeightVector {
        let (d1, d2) = ((self.j1.twice() + 1) as usize, (self.j2.twice() + 1) as usize);
        let top1 = (self.j1 - self.m1).as_int().unwrap() as usize;
        let top2 = (self.j2 - self.m2).as_int().unwrap() as usize;
        let mut coeffs = vec![HPoly::zero(); d1 * d2];
        for (k, l, a) in self.iter() {
            coeffs[(top1 - k) * d2 + (top2 - l)] = a.clone();
        }
        WeightVector { j1: self.j1, j2: self.j2, weight: self.m1 + self.m2, coeffs }
    }
}

fn half_h_pow(n: usize, sign: i64) -> HPoly {
    HPoly::monomial(Rational::new(BigInt::from(sign).pow(n as u32), BigInt::from(2).pow(n as u32)), n as u32)
}

/// Solves the eigenvalue equation term by term:
/// `(k+l) α_{k,l} + 2(m1+k) Σ_n (h/2)^n α_{k,l-n} + 2(m2+l) Σ_n (-h/2)^n α_{k-n,l} = 0`.
pub fn alpha_recurrence_rec1(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt) -> Result<AlphaTable> {
    let mut t = AlphaTable::empty(j1, m1, j2, m2)?;
    let (a1, a2) = (m1.to_rational(), m2.to_rational());
    t.fill(|t, k, l| {
        let mut acc = HPoly::zero();
        let w1 = (&a1 + int(k as i64)) * int(2);
        for n in 1..=l {
            acc += &(&half_h_pow(n, 1) * t.get(k, l - n)).scale(&w1);
        }
        let w2 = (&a2 + int(l as i64)) * int(2);
        for n in 1..=k {
            acc += &(&half_h_pow(n, -1) * t.get(k - n, l)).scale(&w2);
        }
        acc
    });
    Ok(t)
}

/// Four-term form of the same recurrence:
/// `(k+l) α_{k,l} + (h/2)(2m1+1+k-l) α_{k,l-1} - (h/2)(2m2+1-k+l) α_{k-1,l}
///  + (h/2)^2 (2m1+2m2-2+k+l) α_{k-1,l-1} = 0`.
pub fn alpha_recurrence_rec3(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt) -> Result<AlphaTable> {
    let mut t = AlphaTable::empty(j1, m1, j2, m2)?;
    let (t1, t2) = (m1.twice(), m2.twice());
    t.fill(|t, k, l| {
        let (ki, li) = (k as i64, l as i64);
        let mut acc = HPoly::zero();
        if l >= 1 {
            acc += &(&half_h_pow(1, 1) * t.get(k, l - 1)).scale(&int(t1 + 1 + ki - li));
        }
        if k >= 1 {
            acc -= &(&half_h_pow(1, 1) * t.get(k - 1, l)).scale(&int(t2 + 1 - ki + li));
        }
        if k >= 1 && l >= 1 {
            acc += &(&half_h_pow(2, 1) * t.get(k - 1, l - 1)).scale(&int(t1 + t2 - 2 + ki + li));
        }
        acc
    });
    Ok(t)
}

/// One closed-form coefficient:
/// `(-1)^l (h/2)^{k+l} Σ_p C(2m1+k-p, l-p) C(2m1+k-1, p) C(2m2, k-p)`,
/// with `p` over `0..=min(k, l)` and negative tops continued analytically.
pub fn alpha_closed_form_entry(m1: HalfInt, m2: HalfInt, k: usize, l: usize) -> HPoly {
    let (t1, t2) = (m1.twice(), m2.twice());
    let (ki, li) = (k as i64, l as i64);
    let sum: BigInt = (0..=ki.min(li))
        .map(|p| gen_binomial(t1 + ki - p, li - p) * gen_binomial(t1 + ki - 1, p) * gen_binomial(t2, ki - p))
        .sum();
    let sign = if l.is_multiple_of(2) { 1 } else { -1 };
    half_h_pow(k + l, 1).scale(&Rational::from_integer(sum * sign))
}

pub fn alpha_closed_form(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt) -> Result<AlphaTable> {
    let mut t = AlphaTable::empty(j1, m1, j2, m2)?;
    for k in 0..=t.kmax {
        for l in 0..=t.lmax {
            t.set(k, l, alpha_closed_form_entry(m1, m2, k, l));
        }
    }
    Ok(t)
}

/// A vector in `V(j1) ⊗ V(j2)` of definite `ΔH` weight `2 * weight`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub weight: HalfInt,
    pub coeffs: Vec<HPoly>,
}

impl WeightVector {
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn grading(&self) -> Vec<Rational> {
        let g2 = sl2::grading(self.j2);
        sl2::grading(self.j1).iter().flat_map(|a| g2.iter().map(move |b| a + b)).collect()
    }

    /// Product-basis index of `|j1 m1> ⊗ |j2 m2>`.
    pub fn index(&self, m1: HalfInt, m2: HalfInt) -> usize {
        let k1 = (self.j1 - m1).as_int().unwrap() as usize;
        let k2 = (self.j2 - m2).as_int().unwrap() as usize;
        k1 * (self.j2.twice() as usize + 1) + k2
    }

    pub fn component(&self, m1: HalfInt, m2: HalfInt) -> &HPoly {
        &self.coeffs[self.index(m1, m2)]
    }

    /// Nonzero components sit at product weights `>= weight`, and at least
    /// one sits exactly at `weight`.
    pub fn is_leading_at_weight(&self) -> bool {
        let w = self.weight.to_rational() * int(2);
        let g = self.grading();
        let low = self.coeffs.iter().zip(&g).all(|(c, gi)| c.is_zero() || gi >= &w);
        let lead = self.coeffs.iter().zip(&g).any(|(c, gi)| !c.is_zero() && gi == &w);
        low && lead
    }

    pub fn eval_h0(&self) -> Vec<Rational> {
        self.coeffs.iter().map(HPoly::eval_h0).collect()
    }

    /// Whether `op · self = eigenvalue · self` exactly.
    pub fn is_eigenvector_of(&self, op: &HMatrix, eigenvalue: &Rational) -> bool {
        op.mul_vec(&self.coeffs).iter().zip(&self.coeffs).all(|(a, b)| a == &b.scale(eigenvalue))
    }
}

/// Weight pairs `(m1, m2)` with `m1 + m2 = m`, by decreasing `m1`.
pub fn weight_pairs(j1: HalfInt, j2: HalfInt, m: HalfInt) -> Vec<(HalfInt, HalfInt)> {
    let mut out = Vec::new();
    let mut m1 = j1;
    while m1 >= -j1 {
        let m2 = m - m1;
        if m2.abs() <= j2 && m2.same_parity(j2) {
            out.push((m1, m2));
        }
        m1 = m1 - HalfInt::ONE;
    }
    out
}

pub fn weight_eigenvector(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt) -> Result<WeightVector> {
    Ok(alpha_closed_form(j1, m1, j2, m2)?.to_vector())
}

/// Pair counts `n(m)` and multiplicities `N(j) = n(j) - n(j+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub n_of_m: BTreeMap<HalfInt, usize>,
    pub multiplicity: BTreeMap<HalfInt, usize>,
}

impl DecompositionReport {
    /// `Σ_j N(j)(2j+1)`.
    pub fn total_dimension(&self) -> usize {
        self.multiplicity.iter().map(|(j, n)| n * (j.twice() as usize + 1)).sum()
    }

    /// Spins with `N(j) > 0`, descending.
    pub fn components(&self) -> Vec<HalfInt> {
        self.multiplicity.iter().rev().filter(|(_, &n)| n > 0).map(|(&j, _)| j).collect()
    }
}

/// Piecewise pair count for `|m| <= j1 + j2`.
fn n_piecewise(j1: HalfInt, j2: HalfInt, m: HalfInt) -> usize {
    let (sum, diff) = (j1 + j2, (j1 - j2).abs());
    if m.abs() > sum {
        0
    } else if m.abs() >= diff {
        (sum - m.abs()).as_int().unwrap() as usize + 1
    } else {
        j1.twice().min(j2.twice()) as usize + 1
    }
}

pub fn decomposition_rule(j1: HalfInt, j2: HalfInt) -> Result<DecompositionReport> {
    j1.check_highest_weight()?;
    j2.check_highest_weight()?;
    let top = j1 + j2;
    let count = |m: HalfInt| weight_pairs(j1, j2, m).len();
    let mut n_of_m = BTreeMap::new();
    let mut m = top;
    while m >= -top {
        n_of_m.insert(m, count(m));
        m = m - HalfInt::ONE;
    }
    let mut multiplicity = BTreeMap::new();
    let mut j = top;
    while j >= HalfInt::ZERO {
        multiplicity.insert(j, count(j) - count(j + HalfInt::ONE));
        j = j - HalfInt::ONE;
    }
    for (&m, &n) in &n_of_m {
        if n != n_piecewise(j1, j2, m) {
            return Err(Error::Inconsistent(format!("pair count at m = {m} disagrees with the piecewise rule")));
        }
    }
    let diff = (j1 - j2).abs();
    for (&j, &n) in &multiplicity {
        if n != usize::from(j >= diff && j <= top) {
            return Err(Error::Inconsistent(format!("multiplicity of j = {j} is {n}")));
        }
    }
    Ok(DecompositionReport { j1, j2, n_of_m, multiplicity })
}

/// Coefficient of a coupled state on one weight eigenvector.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenCoeff {
    pub m1: HalfInt,
    pub m2: HalfInt,
    pub coeff: HPoly,
}

/// `|j m>` in both the product basis and the weight-eigenvector basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledState {
    pub j: HalfInt,
    pub m: HalfInt,
    pub vector: WeightVector,
    pub eigen: Vec<EigenCoeff>,
}

impl CoupledState {
    pub fn is_h_free(&self) -> bool {
        self.eigen.iter().all(|e| e.coeff.is_constant())
    }
}

/// Scales `v` to coprime integer coefficients (over all powers of `h`).
fn primitive_integer(v: &[HPoly]) -> Vec<HPoly> {
    let coeffs = || v.iter().flat_map(|p| p.terms().map(|(_, c)| c.clone()));
    let den = coeffs().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = coeffs().fold(BigInt::zero(), |acc, c| acc.gcd(&(c * Rational::from_integer(den.clone())).to_integer()));
    if num.is_zero() {
        return v.to_vec();
    }
    let s = Rational::new(den, num);
    v.iter().map(|p| p.scale(&s)).collect()
}

/// Sign of the lowest-order coefficient.
fn leading_sign(p: &HPoly) -> i64 {
    match p.terms().next() {
        Some((_, c)) if c.is_negative() => -1,
        Some(_) => 1,
        None => 0,
    }
}

/// Works on one tensor product with its coproduct operators.
#[derive(Clone, Debug)]
pub struct CgEngine {
    pub space: TensorSpace<RepSL2>,
    pub ops: CoproductSet,
}

/// A highest-weight vector together with its eigenbasis expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct HighestWeight {
    pub j: HalfInt,
    pub vector: WeightVector,
    pub eigen: Vec<EigenCoeff>,
}

impl CgEngine {
    pub fn new(j1: HalfInt, j2: HalfInt) -> Result<Self> {
        let space = TensorSpace::sl2(j1, j2)?;
        let ops = CoproductSet::new(&space)?;
        Ok(CgEngine { space, ops })
    }

    pub fn j1(&self) -> HalfInt {
        self.space.left.j
    }

    pub fn j2(&self) -> HalfInt {
        self.space.right.j
    }

    /// Weight eigenvectors of total weight `m`, by decreasing `m1`.
    pub fn eigenvectors(&self, m: HalfInt) -> Result<Vec<(HalfInt, HalfInt, WeightVector)>> {
        weight_pairs(self.j1(), self.j2(), m)
            .into_iter()
            .map(|(m1, m2)| Ok((m1, m2, weight_eigenvector(self.j1(), m1, self.j2(), m2)?)))
            .collect()
    }

    /// `ΔX` images of the weight-`m` eigenvectors, as columns.
    fn dx_columns(&self, eig: &[(HalfInt, HalfInt, WeightVector)]) -> Vec<Vec<HPoly>> {
        let images: Vec<_> = eig.iter().map(|(_, _, v)| self.ops.dx.mul_vec(&v.coeffs)).collect();
        (0..self.space.dim()).map(|r| images.iter().map(|c| c[r].clone()).collect()).collect()
    }

    /// Dimension of `ker ΔX` on the weight-`m` eigenspace.
    pub fn kernel_dimension(&self, m: HalfInt) -> Result<usize> {
        let eig = self.eigenvectors(m)?;
        Ok(eig.len() - elim::rank(&self.dx_columns(&eig), eig.len())?)
    }

    fn combine(&self, eig: &[(HalfInt, HalfInt, WeightVector)], c: &[HPoly], m: HalfInt) -> WeightVector {
        let mut coeffs = vec![HPoly::zero(); self.space.dim()];
        for ((_, _, v), ci) in eig.iter().zip(c) {
            for (acc, x) in coeffs.iter_mut().zip(&v.coeffs) {
                *acc += &(ci * x);
            }
        }
        WeightVector { j1: self.j1(), j2: self.j2(), weight: m, coeffs }
    }

    /// The vector annihilated by `ΔX` at weight `j`, normalized to coprime
    /// integer eigenbasis coefficients with the maximal-`m1` coefficient of
    /// sign `(-1)^{j1+j2-j}`.
    pub fn highest_weight_vector(&self, j: HalfInt) -> Result<HighestWeight> {
        let (j1, j2) = (self.j1(), self.j2());
        if !j.same_parity(j1 + j2) || j > j1 + j2 || j < (j1 - j2).abs() {
            return Err(Error::NotInDecomposition(j));
        }
        let eig = self.eigenvectors(j)?;
        let ker = elim::kernel(&self.dx_columns(&eig), eig.len())?;
        if ker.len() != 1 {
            return Err(Error::Inconsistent(format!("kernel of ΔX at weight {j} has dimension {}", ker.len())));
        }
        let mut c = primitive_integer(&ker[0]);
        let want = if (j1 + j2 - j).as_int().unwrap() % 2 == 0 { 1 } else { -1 };
        if leading_sign(&c[0]) != want {
            c.iter_mut().for_each(|x| *x = -&*x);
        }
        let vector = self.combine(&eig, &c, j);
        let eigen = eig.iter().zip(c).map(|((m1, m2, _), coeff)| EigenCoeff { m1: *m1, m2: *m2, coeff }).collect();
        Ok(HighestWeight { j, vector, eigen })
    }

    /// `|j m-1> = ΔZ- |j m> / ((j+m)(j-m+1))`, from `m = j` down to `-j`.
    pub fn lower_to_basis(&self, hw: &WeightVector, j: HalfInt) -> Result<Vec<WeightVector>> {
        let mut out = vec![hw.clone()];
        let mut m = j;
        while m > -j {
            let div = ((j + m).to_rational() * (j - m + HalfInt::ONE).to_rational()).recip();
            let prev = out.last().unwrap();
            let coeffs = self.ops.dzm.mul_vec(&prev.coeffs).iter().map(|p| p.scale(&div)).collect();
            m = m - HalfInt::ONE;
            out.push(WeightVector { j1: self.j1(), j2: self.j2(), weight: m, coeffs });
        }
        Ok(out)
    }

    /// Reads the eigenbasis coefficients of a weight vector off its
    /// leading components and confirms the expansion is exact.
    pub fn eigen_expansion(&self, v: &WeightVector) -> Result<Vec<EigenCoeff>> {
        let eig = self.eigenvectors(v.weight)?;
        let c: Vec<HPoly> = eig.iter().map(|(m1, m2, _)| v.component(*m1, *m2).clone()).collect();
        if self.combine(&eig, &c, v.weight).coeffs != v.coeffs {
            return Err(Error::Inconsistent(format!("state of weight {} is not in the eigenvector span", v.weight)));
        }
        Ok(eig.iter().zip(c).map(|((m1, m2, _), coeff)| EigenCoeff { m1: *m1, m2: *m2, coeff }).collect())
    }

    pub fn table(&self) -> Result<CGTable> {
        let decomposition = decomposition_rule(self.j1(), self.j2())?;
        let mut states = Vec::new();
        for j in decomposition.components() {
            let hw = self.highest_weight_vector(j)?;
            for v in self.lower_to_basis(&hw.vector, j)? {
                let eigen = self.eigen_expansion(&v)?;
                states.push(CoupledState { j, m: v.weight, vector: v, eigen });
            }
        }
        let grading = self.space.grading();
        let n = grading.len();
        let change_of_basis = HMatrix::from_fn(grading, |r, c| states[c].vector.coeffs[r].clone());
        debug_assert_eq!(states.len(), n);
        let determinant = elim::determinant(&change_of_basis.rows())?;
        Ok(CGTable { j1: self.j1(), j2: self.j2(), decomposition, states, change_of_basis, determinant })
    }

    /// Structural checks on a computed table.
    pub fn verify_table(&self, t: &CGTable) -> CheckReport {
        let mut r = CheckReport::default();
        let two = |m: HalfInt| m.to_rational() * int(2);

        let eig_ok = t.states.iter().all(|s| s.vector.is_eigenvector_of(&self.ops.dh, &two(s.m)));
        r.push(Check::new("ΔH |j m> = 2m |j m>", eig_ok));
        let lead_ok = t.states.iter().all(|s| s.vector.is_leading_at_weight());
        r.push(Check::new("coupled states are weight-upper with a leading component", lead_ok));

        let tops: Vec<_> = t.states.iter().filter(|s| s.m == s.j).collect();
        let hw_ok = tops.iter().all(|s| self.ops.dx.mul_vec(&s.vector.coeffs).iter().all(HPoly::is_zero));
        r.push(Check::new("ΔX |j j> = 0", hw_ok));
        let zp_ok = tops.iter().all(|s| self.ops.dzp.mul_vec(&s.vector.coeffs).iter().all(HPoly::is_zero));
        r.push(Check::new("ΔZ+ |j j> = 0", zp_ok));
        let bottoms = t.states.iter().filter(|s| s.m == -s.j);
        let bottom_ok = bottoms.into_iter().all(|s| self.ops.dzm.mul_vec(&s.vector.coeffs).iter().all(HPoly::is_zero));
        r.push(Check::new("ΔZ- |j -j> = 0", bottom_ok));

        let raise_ok = t.states.windows(2).filter(|w| w[0].j == w[1].j).all(|w| {
            self.ops.dzp.mul_vec(&w[1].vector.coeffs) == w[0].vector.coeffs
        });
        r.push(Check::new("ΔZ+ |j m-1> = |j m>", raise_ok));

        let mut kernel_ok = true;
        let mut m = self.j1() + self.j2();
        while m >= -(self.j1() + self.j2()) {
            let above = t.decomposition.n_of_m.get(&(m + HalfInt::ONE)).copied().unwrap_or(0);
            let pred = t.decomposition.n_of_m[&m].saturating_sub(above);
            kernel_ok &= self.kernel_dimension(m).map(|d| d == pred).unwrap_or(false);
            m = m - HalfInt::ONE;
        }
        r.push(Check::new("dim ker ΔX on weight m = n(m) - n(m+1)", kernel_ok));

        r.push(Check::new(
            "sum of N(j)(2j+1) equals the tensor dimension",
            t.decomposition.total_dimension() == self.space.dim() && t.states.len() == self.space.dim(),
        ));
        r.push(Check::new("change of basis has nonzero determinant", !t.determinant.is_zero()).with_detail(format!("det = {}", t.determinant)));
        r
    }
}

/// The full coupled basis of `V(j1) ⊗ V(j2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CGTable {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub decomposition: DecompositionReport,
    /// Ordered by decreasing `j`, then decreasing `m`.
    pub states: Vec<CoupledState>,
    /// Column `c` is `states[c]` over the product basis.
    pub change_of_basis: HMatrix,
    pub determinant: HPoly,
}

impl CGTable {
    pub fn state(&self, j: HalfInt, m: HalfInt) -> Option<&CoupledState> {
        self.states.iter().find(|s| s.j == j && s.m == m)
    }

    pub fn change_of_basis_h0(&self) -> HMatrix {
        self.change_of_basis.eval_h0()
    }

    /// `(j, m, h-free?)` for every coupled state.
    pub fn h_free_report(&self) -> Vec<(HalfInt, HalfInt, bool)> {
        self.states.iter().map(|s| (s.j, s.m, s.is_h_free())).collect()
    }
}

pub fn cg_table(j1: HalfInt, j2: HalfInt) -> Result<CGTable> {
    CgEngine::new(j1, j2)?.table()
}

/// The `h = 0` coupled basis from the classical representation alone:
/// kernel of `Z+⊗1 + 1⊗Z+` at weight `j`, same normalization as the
/// Jordanian engine, lowered with `Z-⊗1 + 1⊗Z-`. Columns in table order.
pub fn classical_table(j1: HalfInt, j2: HalfInt) -> Result<Vec<(HalfInt, HalfInt, Vec<Rational>)>> {
    let (zp1, zm1, _) = sl2::build_classical(j1)?;
    let (zp2, zm2, _) = sl2::build_classical(j2)?;
    let (i1, i2) = (zp1.identity_like(), zp2.identity_like());
    let dzp = &zp1.kron(&i2) + &i1.kron(&zp2);
    let dzm = &zm1.kron(&i2) + &i1.kron(&zm2);
    let d2 = j2.twice() as usize + 1;
    let index = |m1: HalfInt, m2: HalfInt| (j1 - m1).as_int().unwrap() as usize * d2 + (j2 - m2).as_int().unwrap() as usize;

    let mut out = Vec::new();
    for j in decomposition_rule(j1, j2)?.components() {
        let pairs = weight_pairs(j1, j2, j);
        let cols: Vec<Vec<HPoly>> = pairs
            .iter()
            .map(|&(m1, m2)| {
                let mut e = vec![HPoly::zero(); dzp.dim()];
                e[index(m1, m2)] = HPoly::one();
                dzp.mul_vec(&e)
            })
            .collect();
        let rows: Vec<Vec<HPoly>> = (0..dzp.dim()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let ker = elim::kernel(&rows, pairs.len())?;
        if ker.len() != 1 {
            return Err(Error::Inconsistent(format!("classical kernel at weight {j} has dimension {}", ker.len())));
        }
        let mut c = primitive_integer(&ker[0]);
        let want = if (j1 + j2 - j).as_int().unwrap() % 2 == 0 { 1 } else { -1 };
        if leading_sign(&c[0]) != want {
            c.iter_mut().for_each(|x| *x = -&*x);
        }
        let mut v = vec![HPoly::zero(); dzp.dim()];
        for (&(m1, m2), ci) in pairs.iter().zip(&c) {
            v[index(m1, m2)] = ci.clone();
        }
        let mut m = j;
        loop {
            out.push((j, m, v.iter().map(HPoly::eval_h0).collect()));
            if m == -j {
                break;
            }
            let div = ((j + m).to_rational() * (j - m + HalfInt::ONE).to_rational()).recip();
            v = dzm.mul_vec(&v).iter().map(|p| p.scale(&div)).collect();
            m = m - HalfInt::ONE;
        }
    }
    Ok(out)
}

impl CGTable {
    /// Compares the `h = 0` change of basis with [`classical_table`].
    pub fn classical_check(&self) -> Result<Check> {
        let classical = classical_table(self.j1, self.j2)?;
        let h0 = self.change_of_basis_h0();
        let mismatch = classical.iter().enumerate().find(|(c, (j, m, col))| {
            self.states[*c].j != *j || self.states[*c].m != *m || (0..h0.dim()).any(|r| h0.get(r, *c).eval_h0() != col[r])
        });
        let name = "h=0 table equals the classical coupled basis";
        Ok(match mismatch {
            None if classical.len() == self.states.len() => Check::new(name, true),
            None => Check::new(name, false).with_detail("state count differs"),
            Some((c, (j, m, _))) => Check::new(name, false).with_detail(format!("state |{j} {m}> (column {c})")),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn hi(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn all_weight_pairs(max_sum: i64) -> Vec<(HalfInt, HalfInt, HalfInt, HalfInt)> {
        let mut out = Vec::new();
        for t1 in 0..=2 * max_sum {
            for t2 in 0..=2 * max_sum - t1 {
                for a in 0..=t1 {
                    for b in 0..=t2 {
                        out.push((hi(t1), hi(t1 - 2 * a), hi(t2), hi(t2 - 2 * b)));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn first_entries() {
        let (j1, j2) = (hi(3), hi(2));
        let t = alpha_recurrence_rec1(j1, j1, j2, j2 - HalfInt::ONE).unwrap();
        assert_eq!(t.get(0, 1), &HPoly::monomial(rat(-3, 2), 1));
        let t = alpha_recurrence_rec3(j1, j1 - HalfInt::ONE, j2, j2).unwrap();
        assert_eq!(t.get(1, 0), &HPoly::monomial(int(1), 1));
        let t = alpha_closed_form(j1, j1, j2, j2).unwrap();
        assert_eq!(t.iter().count(), 1);
        assert_eq!(t.get(0, 0), &HPoly::one());
    }

    #[test]
    fn rec3_matches_rec1_small() {
        let (j1, m1, j2, m2) = (hi(2), hi(0), hi(2), hi(-2));
        assert_eq!(alpha_recurrence_rec1(j1, m1, j2, m2).unwrap(), alpha_recurrence_rec3(j1, m1, j2, m2).unwrap());
    }

    #[test]
    fn three_routes_agree() {
        for (j1, m1, j2, m2) in all_weight_pairs(4) {
            let a = alpha_recurrence_rec1(j1, m1, j2, m2).unwrap();
            assert_eq!(a, alpha_recurrence_rec3(j1, m1, j2, m2).unwrap(), "rec3 at {j1} {m1} {j2} {m2}");
            assert_eq!(a, alpha_closed_form(j1, m1, j2, m2).unwrap(), "closed form at {j1} {m1} {j2} {m2}");
            for (k, l, p) in a.iter() {
                assert!(p.valuation().is_none_or(|v| v as usize >= k + l));
            }
        }
    }

    #[test]
    fn eigenvectors_solve_eigen_equation() {
        for (t1, t2) in [(1, 1), (2, 1), (3, 2), (4, 3)] {
            let (j1, j2) = (hi(t1), hi(t2));
            let ts = TensorSpace::sl2(j1, j2).unwrap();
            let ops = CoproductSet::new(&ts).unwrap();
            for (_, m1, _, m2) in all_weight_pairs(4).into_iter().filter(|w| w.0 == j1 && w.2 == j2) {
                let v = weight_eigenvector(j1, m1, j2, m2).unwrap();
                assert!(v.is_eigenvector_of(&ops.dh, &((m1 + m2).to_rational() * int(2))));
                assert!(v.is_leading_at_weight());
            }
        }
    }

    #[test]
    fn perturbed_alpha_breaks_eigen_equation() {
        let (j1, j2) = (hi(2), hi(2));
        let ts = TensorSpace::sl2(j1, j2).unwrap();
        let ops = CoproductSet::new(&ts).unwrap();
        let (m1, m2) = (hi(-2), hi(0));
        let base = alpha_closed_form(j1, m1, j2, m2).unwrap();
        let cells: Vec<_> = base.iter().map(|(k, l, _)| (k, l)).collect();
        for (k, l) in cells {
            let mut t = base.clone();
            t.set(k, l, t.get(k, l) + &HPoly::monomial(int(1), 3));
            assert!(!t.to_vector().is_eigenvector_of(&ops.dh, &int(-2)), "({k},{l})");
        }
    }

    #[test]
    fn decomposition_examples() {
        let d = decomposition_rule(hi(1), hi(1)).unwrap();
        assert_eq!(d.components(), vec![hi(2), hi(0)]);
        let d = decomposition_rule(hi(4), hi(0)).unwrap();
        assert_eq!(d.components(), vec![hi(4)]);
        let d = decomposition_rule(hi(4), hi(3)).unwrap();
        assert_eq!(d.total_dimension(), 20);
        assert_eq!(d.components(), vec![hi(7), hi(5), hi(3), hi(1)]);
        // the middle branch of the pair count uses the smaller spin
        let d = decomposition_rule(hi(2), hi(4)).unwrap();
        assert_eq!(d.n_of_m[&hi(0)], 3);
    }

    #[test]
    fn highest_weight_out_of_range() {
        let e = CgEngine::new(hi(2), hi(1)).unwrap();
        assert_eq!(e.highest_weight_vector(hi(5)), Err(Error::NotInDecomposition(hi(5))));
        assert_eq!(e.highest_weight_vector(hi(2)), Err(Error::NotInDecomposition(hi(2))));
        assert!(e.highest_weight_vector(hi(-1)).is_err());
    }

    #[test]
    fn second_and_third_highest() {
        let e = CgEngine::new(hi(4), hi(3)).unwrap();
        let hw = e.highest_weight_vector(hi(5)).unwrap();
        let c: Vec<_> = hw.eigen.iter().map(|x| x.coeff.clone()).collect();
        // (j1 j1)(j2 j2-1) first, then (j1 j1-1)(j2 j2)
        assert_eq!(c, vec![HPoly::from_int(-1), HPoly::from_int(1)]);
        let hw = e.highest_weight_vector(hi(3)).unwrap();
        let c: Vec<_> = hw.eigen.iter().map(|x| x.coeff.clone()).collect();
        assert_eq!(c, vec![HPoly::from_int(1), HPoly::from_int(-1), HPoly::from_int(1)]);
    }

    #[test]
    fn tables_verify() {
        for (t1, t2) in [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (4, 2), (3, 3)] {
            let e = CgEngine::new(hi(t1), hi(t2)).unwrap();
            let t = e.table().unwrap();
            let report = e.verify_table(&t);
            let bad: Vec<_> = report.failures().collect();
            assert!(bad.is_empty(), "({t1},{t2}): {bad:?}");
        }
    }

    #[test]
    fn classical_limit() {
        for (t1, t2) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            let t = cg_table(hi(t1), hi(t2)).unwrap();
            assert!(t.classical_check().unwrap().passed, "({t1},{t2})");
        }
        // singlet of two spin-1/2: (|+-> - |-+>) up to the sign rule
        let c = classical_table(hi(1), hi(1)).unwrap();
        assert_eq!(c[3].2, vec![int(0), int(-1), int(1), int(0)]);
    }

    #[test]
    fn primitive_integer_scaling() {
        let v = vec![HPoly::constant(rat(2, 3)), HPoly::constant(rat(-4, 9))];
        assert_eq!(primitive_integer(&v), vec![HPoly::from_int(3), HPoly::from_int(-2)]);
    }
}
