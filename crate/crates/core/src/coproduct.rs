//! Coproducts of `U_h(sl(2))` as explicit matrices on a tensor product.
//!
//! `Δ(X) = X⊗1 + 1⊗X`, `Δ(Y) = Y⊗e^{hX} + e^{-hX}⊗Y`,
//! `Δ(H) = H⊗e^{hX} + e^{-hX}⊗H`. The classical-type generators follow from
//! the same nonlinear map as in a single representation:
//! `Δ(Z+) = (2/h) tanh(hΔ(X)/2)` and
//! `Δ(Z-) = Δ(cosh hX/2) Δ(Y) Δ(cosh hX/2)`.
//!
//! `Δ(H)` and `Δ(Z-)` are also assembled a second way, directly from `Z±`,
//! `H` and the Casimir of each factor; the two routes must agree exactly.

use crate::arith::elim;
use crate::arith::series::{half_pow, cosh_h, cosh_half, exp_h, power_series, sinh_half, sinh_over_h, tanh_scaled};
use crate::arith::{int, rat, HMatrix, HPoly, Rational};
use crate::check::{Check, CheckReport};
use crate::error::{Error, Result};
use crate::sl2::RepSL2;

/// A representation with a graded basis.
pub trait GradedRep {
    fn dim(&self) -> usize;
    fn grading(&self) -> Vec<Rational>;
}

impl GradedRep for RepSL2 {
    fn dim(&self) -> usize {
        RepSL2::dim(self)
    }
    fn grading(&self) -> Vec<Rational> {
        RepSL2::grading(self)
    }
}

/// `left ⊗ right` with row-major basis `(k1, k2) ↔ k1 * dim(right) + k2`.
#[derive(Clone, Debug)]
pub struct TensorSpace<R> {
    pub left: R,
    pub right: R,
}

impl<R: GradedRep> TensorSpace<R> {
    pub fn new(left: R, right: R) -> Self {
        TensorSpace { left, right }
    }

    pub fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    pub fn flat(&self, k1: usize, k2: usize) -> usize {
        debug_assert!(k1 < self.left.dim() && k2 < self.right.dim());
        k1 * self.right.dim() + k2
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.right.dim(), i % self.right.dim())
    }

    pub fn grading(&self) -> Vec<Rational> {
        let r = self.right.grading();
        self.left
            .grading()
            .iter()
            .flat_map(|a| r.iter().map(move |b| a + b))
            .collect()
    }

    fn id_left(&self) -> HMatrix {
        HMatrix::identity(self.left.grading())
    }

    fn id_right(&self) -> HMatrix {
        HMatrix::identity(self.right.grading())
    }

    /// `a⊗1 + 1⊗b`.
    pub fn primitive(&self, a: &HMatrix, b: &HMatrix) -> HMatrix {
        &a.kron(&self.id_right()) + &self.id_left().kron(b)
    }
}

impl TensorSpace<RepSL2> {
    pub fn sl2(j1: crate::arith::HalfInt, j2: crate::arith::HalfInt) -> Result<Self> {
        Ok(TensorSpace::new(RepSL2::new(j1)?, RepSL2::new(j2)?))
    }
}

/// Counit values `ε(X) = ε(Y) = ε(H) = 0`, recorded for completeness.
pub const COUNIT_X: i64 = 0;
pub const COUNIT_Y: i64 = 0;
pub const COUNIT_H: i64 = 0;

/// `(ΔX, ΔY, ΔH)` from the primitive Hopf structure, with `e^{±hX}` taken
/// from the exponential series of `X`.
pub fn delta_primitive(ts: &TensorSpace<RepSL2>) -> Result<(HMatrix, HMatrix, HMatrix)> {
    let (l, r) = (&ts.left, &ts.right);
    let dx = ts.primitive(&l.x, &r.x);
    let em_l = exp_h(&l.x, -1)?;
    let e_r = exp_h(&r.x, 1)?;
    let dy = &l.y.kron(&e_r) + &em_l.kron(&r.y);
    let dh = &l.hm.kron(&e_r) + &em_l.kron(&r.hm);
    Ok((dx, dy, dh))
}

/// `sum_{n >= start} weight(n) (sign h Z+ / 2)^n`.
fn zp_series(zp: &HMatrix, sign: i64, start: u32, weight: impl Fn(u32) -> i64) -> Result<HMatrix> {
    power_series(zp, |n| {
        if n < start {
            return HPoly::zero();
        }
        HPoly::monomial(int(weight(n) * sign.pow(n)) * half_pow(n), n)
    })
}

/// `ΔH` written through `Z+`:
/// `H⊗1 + 1⊗H + H⊗2Σ_{n≥1}(hZ+/2)^n + 2Σ_{n≥1}(-hZ+/2)^n⊗H`.
pub fn delta_h_expanded(ts: &TensorSpace<RepSL2>) -> Result<HMatrix> {
    let (l, r) = (&ts.left, &ts.right);
    let up = zp_series(&r.zp, 1, 1, |_| 2)?;
    let down = zp_series(&l.zp, -1, 1, |_| 2)?;
    Ok(&(&ts.primitive(&l.hm, &r.hm) + &l.hm.kron(&up)) + &down.kron(&r.hm))
}

/// `ΔZ+ = (2/h) tanh(h ΔX / 2)`.
pub fn delta_zplus(dx: &HMatrix) -> Result<HMatrix> {
    tanh_scaled(dx)
}

/// `Δ(cosh hX/2) = cosh⊗cosh + sinh⊗sinh`, from factor-local series.
pub fn delta_cosh_half_split(ts: &TensorSpace<RepSL2>) -> Result<HMatrix> {
    let (l, r) = (&ts.left, &ts.right);
    Ok(&cosh_half(&l.x)?.kron(&cosh_half(&r.x)?) + &sinh_half(&l.x)?.kron(&sinh_half(&r.x)?))
}

/// `ΔZ- = Δ(cosh hX/2) ΔY Δ(cosh hX/2)`. The hyperbolic factor is computed
/// both from `ΔX` directly and from the addition formula; they must agree.
pub fn delta_zminus_product(ts: &TensorSpace<RepSL2>, dx: &HMatrix, dy: &HMatrix) -> Result<HMatrix> {
    let c = cosh_half(dx)?;
    if c != delta_cosh_half_split(ts)? {
        return Err(Error::Inconsistent("Δ(cosh hX/2): direct series and addition formula disagree".into()));
    }
    Ok(&(&c * dy) * &c)
}

/// `ΔZ-` assembled from `Z±`, `H` and the Casimir of each factor.
pub fn delta_zminus_expanded(ts: &TensorSpace<RepSL2>) -> Result<HMatrix> {
    let (l, r) = (&ts.left, &ts.right);
    // h (C - H^2/4) in each factor
    let shifted = |rep: &RepSL2| (&rep.cas - &(&rep.hm * &rep.hm).scale_rat(&rat(1, 4))).scale(&HPoly::h());
    // (h/2)^2 Z+ Z- Z+
    let sandwich = |rep: &RepSL2| (&(&rep.zp * &rep.zm) * &rep.zp).scale(&HPoly::monomial(rat(1, 4), 2));

    let first = &l.zm.kron(&zp_series(&r.zp, 1, 0, |n| n as i64 + 1)?)
        + &zp_series(&l.zp, -1, 0, |n| n as i64 + 1)?.kron(&r.zm);
    let second = &shifted(l).kron(&zp_series(&r.zp, 1, 1, |n| n as i64)?)
        - &zp_series(&l.zp, -1, 1, |n| n as i64)?.kron(&shifted(r));
    let third = &sandwich(l).kron(&zp_series(&r.zp, 1, 2, |n| n as i64 - 1)?)
        + &zp_series(&l.zp, -1, 2, |n| n as i64 - 1)?.kron(&sandwich(r));
    Ok(&(&first + &second) + &third)
}

/// Every coproduct operator needed for Clebsch-Gordan work.
#[derive(Clone, Debug)]
pub struct CoproductSet {
    pub dx: HMatrix,
    pub dy: HMatrix,
    pub dh: HMatrix,
    pub dzp: HMatrix,
    pub dzm: HMatrix,
}

impl CoproductSet {
    /// Builds the operators through the primitive and product routes.
    pub fn new(ts: &TensorSpace<RepSL2>) -> Result<Self> {
        let (dx, dy, dh) = delta_primitive(ts)?;
        let dzp = delta_zplus(&dx)?;
        let dzm = delta_zminus_product(ts, &dx, &dy)?;
        Ok(CoproductSet { dx, dy, dh, dzp, dzm })
    }

    /// Like [`CoproductSet::new`], but also rebuilds `ΔH` and `ΔZ-` from
    /// their expanded forms and fails if either disagrees.
    pub fn new_verified(ts: &TensorSpace<RepSL2>) -> Result<Self> {
        let set = Self::new(ts)?;
        if set.dh != delta_h_expanded(ts)? {
            return Err(Error::Inconsistent("ΔH: primitive and expanded forms disagree".into()));
        }
        if set.dzm != delta_zminus_expanded(ts)? {
            return Err(Error::Inconsistent("ΔZ-: product and expanded forms disagree".into()));
        }
        Ok(set)
    }

    /// Algebra-map checks: images of the defining relations of both
    /// generator sets.
    pub fn verify_homomorphism(&self) -> Result<CheckReport> {
        let mut r = CheckReport::default();
        let sh = sinh_over_h(&self.dx)?;
        let ch = cosh_h(&self.dx)?;
        r.push(Check::matrices("[ΔH, ΔX] = 2 sinh(hΔX)/h", &self.dh.commutator(&self.dx), &sh.scale_rat(&int(2))));
        r.push(Check::matrices(
            "[ΔH, ΔY] = -ΔY cosh(hΔX) - cosh(hΔX) ΔY",
            &self.dh.commutator(&self.dy),
            &-(&(&self.dy * &ch) + &(&ch * &self.dy)),
        ));
        r.push(Check::matrices("[ΔX, ΔY] = ΔH", &self.dx.commutator(&self.dy), &self.dh));
        r.push(Check::matrices("[ΔH, ΔZ+] = 2 ΔZ+", &self.dh.commutator(&self.dzp), &self.dzp.scale_rat(&int(2))));
        r.push(Check::matrices("[ΔH, ΔZ-] = -2 ΔZ-", &self.dh.commutator(&self.dzm), &self.dzm.scale_rat(&int(-2))));
        r.push(Check::matrices("[ΔZ+, ΔZ-] = ΔH", &self.dzp.commutator(&self.dzm), &self.dh));
        Ok(r)
    }

    /// Dual-route, grading and classical-limit checks.
    pub fn verify_structure(&self, ts: &TensorSpace<RepSL2>) -> Result<CheckReport> {
        let mut r = CheckReport::default();
        let (l, rt) = (&ts.left, &ts.right);
        r.push(Check::matrices("ΔH primitive = ΔH expanded", &self.dh, &delta_h_expanded(ts)?));
        r.push(Check::matrices(
            "Δ(cosh hX/2) direct = cosh⊗cosh + sinh⊗sinh",
            &cosh_half(&self.dx)?,
            &delta_cosh_half_split(ts)?,
        ));
        r.push(Check::matrices("ΔZ- product = ΔZ- expanded", &self.dzm, &delta_zminus_expanded(ts)?));

        r.push(Check::new("ΔX strictly raises weight", self.dx.is_strictly_raising()));
        r.push(Check::new("ΔZ+ strictly raises weight", self.dzp.is_strictly_raising()));
        let diag_ok = (0..self.dh.dim()).all(|i| self.dh.get(i, i) == &HPoly::constant(self.dh.grading()[i].clone()));
        r.push(Check::new("ΔH is weight-upper with diagonal 2(m1+m2)", self.dh.is_weight_upper() && diag_ok));

        r.push(Check::matrices("ΔX at h=0 is primitive", &self.dx.eval_h0(), &ts.primitive(&l.zp, &rt.zp)));
        r.push(Check::matrices("ΔH at h=0 is primitive", &self.dh.eval_h0(), &ts.primitive(&l.hm, &rt.hm)));
        r.push(Check::matrices("ΔZ+ at h=0 is primitive", &self.dzp.eval_h0(), &ts.primitive(&l.zp, &rt.zp)));
        r.push(Check::matrices("ΔZ- at h=0 is primitive", &self.dzm.eval_h0(), &ts.primitive(&l.zm, &rt.zm)));

        let expected = (l.j.twice().min(rt.j.twice()) + 1) as usize;
        let ker_x = self.dim() - elim::rank(&self.dx.rows(), self.dim())?;
        let ker_zp = self.dim() - elim::rank(&self.dzp.rows(), self.dim())?;
        r.push(
            Check::new("dim ker ΔX = 2 min(j1,j2) + 1", ker_x == expected)
                .with_detail(format!("kernel dimension {ker_x}, expected {expected}")),
        );
        let same_kernel = ker_zp == ker_x
            && elim::kernel(&self.dx.rows(), self.dim())?
                .iter()
                .all(|v| self.dzp.mul_vec(v).iter().all(HPoly::is_zero));
        r.push(Check::new("ker ΔZ+ = ker ΔX", same_kernel));
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        self.dx.dim()
    }
}
