//! Finite-dimensional highest-weight representations of `U_h(sl(2))`.
//!
//! The classical generators `Z+`, `Z-`, `H` act on the basis `|j m>`,
//! `m = j, j-1, ..., -j` (index `k = j - m`) by
//!
//! ```text
//! Z+ |j m> = |j m+1>,   Z- |j m> = (j+m)(j-m+1) |j m-1>,   H |j m> = 2m |j m>
//! ```
//!
//! and the Jordanian generators are recovered from
//! `Z+ = (2/h) tanh(hX/2)`, `Z- = cosh(hX/2) Y cosh(hX/2)`. Every function of
//! `X` or `Z+` is a finite series because both are strictly raising.

use crate::arith::series::{
    artanh_scaled, cayley_h, cosh_h, cosh_half, exp_h, sinh_h, sinh_over_h, tanh_scaled, unipotent_inverse,
};
use crate::arith::{int, rat, HMatrix, HPoly, HalfInt, Rational};
use crate::check::{Check, CheckReport};
use crate::error::{Error, Result};

/// Weight labels `2m` for the spin-`j` basis, highest weight first.
pub fn grading(j: HalfInt) -> Vec<Rational> {
    (0..=j.twice()).map(|k| int(j.twice() - 2 * k)).collect()
}

/// `(Z+, Z-, H)` in the classical convention.
pub fn build_classical(j: HalfInt) -> Result<(HMatrix, HMatrix, HMatrix)> {
    let j = j.check_highest_weight()?;
    let g = grading(j);
    let jr = j.to_rational();
    let mut zp = HMatrix::zeros(g.clone());
    let mut zm = HMatrix::zeros(g.clone());
    for k in 0..j.twice() as usize {
        // column k has weight m = j - k
        zp.set(k, k + 1, HPoly::one());
        let m = &jr - int(k as i64);
        let coeff = (&jr + &m) * (&jr - &m + int(1));
        zm.set(k + 1, k, HPoly::constant(coeff));
    }
    let hm = HMatrix::grading_diagonal(g);
    Ok((zp, zm, hm))
}

/// `X = (2/h) artanh(h Z+ / 2)` and `Y = cosh(hX/2)^{-1} Z- cosh(hX/2)^{-1}`.
pub fn jordanian_from_classical(zp: &HMatrix, zm: &HMatrix) -> Result<(HMatrix, HMatrix)> {
    let x = artanh_scaled(zp)?;
    let c_inv = unipotent_inverse(&cosh_half(&x)?)?;
    let y = &(&c_inv * zm) * &c_inv;
    Ok((x, y))
}

/// Inverse of [`jordanian_from_classical`]: `(Z+, Z-)` from `(X, Y)`.
pub fn classical_from_jordanian(x: &HMatrix, y: &HMatrix) -> Result<(HMatrix, HMatrix)> {
    let c = cosh_half(x)?;
    Ok((tanh_scaled(x)?, &(&c * y) * &c))
}

/// Casimir from the Jordanian generators:
/// `(1/2h){Y sinh hX + sinh hX Y} + H^2/4 + (sinh hX)^2/4`.
pub fn casimir_jordanian(x: &HMatrix, y: &HMatrix, hm: &HMatrix) -> Result<HMatrix> {
    let s = sinh_h(x)?;
    let anti = &(y * &s) + &(&s * y);
    let first = anti.div_h_pow(1)?.scale_rat(&rat(1, 2));
    let quarter = rat(1, 4);
    Ok(&(&first + &(hm * hm).scale_rat(&quarter)) + &(&s * &s).scale_rat(&quarter))
}

/// Casimir from the classical generators: `Z+ Z- + (H/2)(H/2 - 1)`.
pub fn casimir_classical(zp: &HMatrix, zm: &HMatrix, hm: &HMatrix) -> HMatrix {
    let half_h = hm.scale_rat(&rat(1, 2));
    &(zp * zm) + &(&half_h * &(&half_h - &hm.identity_like()))
}

#[derive(Clone, Debug)]
pub struct RepSL2 {
    pub j: HalfInt,
    pub zp: HMatrix,
    pub zm: HMatrix,
    pub hm: HMatrix,
    pub x: HMatrix,
    pub y: HMatrix,
    /// `e^{hX}`
    pub ehx: HMatrix,
    /// `e^{-hX}`
    pub emhx: HMatrix,
    pub cas: HMatrix,
    pub s_x: HMatrix,
    pub s_y: HMatrix,
    pub s_h: HMatrix,
}

impl RepSL2 {
    /// Builds every matrix of the spin-`j` representation and checks the
    /// constructions that have two independent routes.
    pub fn new(j: HalfInt) -> Result<Self> {
        let (zp, zm, hm) = build_classical(j)?;
        let (x, y) = jordanian_from_classical(&zp, &zm)?;

        let ehx = cayley_h(&zp, 1)?;
        let emhx = cayley_h(&zp, -1)?;
        if ehx != exp_h(&x, 1)? || emhx != exp_h(&x, -1)? {
            return Err(Error::Inconsistent("e^{±hX}: Cayley form disagrees with exponential series".into()));
        }

        let cas = casimir_jordanian(&x, &y, &hm)?;
        if cas != casimir_classical(&zp, &zm, &hm) {
            return Err(Error::Inconsistent("Casimir: Jordanian and classical forms disagree".into()));
        }

        let s_x = -&x;
        let s_y = -(&(&ehx * &y) * &emhx);
        let s_h = -(&(&ehx * &hm) * &emhx);

        Ok(RepSL2 {
            j,
            zp,
            zm,
            hm,
            x,
            y,
            ehx,
            emhx,
            cas,
            s_x,
            s_y,
            s_h,
        })
    }

    pub fn dim(&self) -> usize {
        self.j.twice() as usize + 1
    }

    pub fn grading(&self) -> Vec<Rational> {
        grading(self.j)
    }

    /// Basis index of weight `m`.
    pub fn index_of(&self, m: HalfInt) -> Result<usize> {
        m.check_weight_of(self.j)?;
        Ok(self.j.int_diff(m) as usize)
    }

    /// `j(j+1)`.
    pub fn casimir_value(&self) -> Rational {
        let j = self.j.to_rational();
        &j * (&j + int(1))
    }

    /// `[H, X^n] = 2n X^{n-1} sinh(hX)/h` and
    /// `[Y, X^n] = -n X^{n-1} H - n(n-1) X^{n-2} sinh(hX)/h` for `n = 1..=n_max`.
    pub fn verify_power_identities(&self, n_max: u32) -> Result<CheckReport> {
        let sh = sinh_over_h(&self.x)?;
        let mut report = CheckReport::default();
        for n in 1..=n_max {
            let xn = self.x.pow(n);
            let xn1 = self.x.pow(n - 1);
            let nr = int(n as i64);
            let lhs_h = self.hm.commutator(&xn);
            let rhs_h = (&xn1 * &sh).scale_rat(&(&nr * int(2)));
            report.push(Check::matrices(format!("[H, X^{n}] = 2n X^(n-1) sinh(hX)/h"), &lhs_h, &rhs_h));

            let lhs_y = self.y.commutator(&xn);
            let mut rhs_y = -(&xn1 * &self.hm).scale_rat(&nr);
            if n >= 2 {
                let xn2 = self.x.pow(n - 2);
                rhs_y = &rhs_y - &(&xn2 * &sh).scale_rat(&(&nr * int(n as i64 - 1)));
            }
            report.push(Check::matrices(
                format!("[Y, X^{n}] = -n X^(n-1) H - n(n-1) X^(n-2) sinh(hX)/h"),
                &lhs_y,
                &rhs_y,
            ));
        }
        Ok(report)
    }

    /// The full identity suite for this representation.
    pub fn verify(&self) -> Result<CheckReport> {
        let mut r = CheckReport::default();
        let id = self.zp.identity_like();
        let sh = sinh_over_h(&self.x)?;
        let ch = cosh_h(&self.x)?;

        // defining relations
        r.push(Check::matrices("[H, X] = 2 sinh(hX)/h", &self.hm.commutator(&self.x), &sh.scale_rat(&int(2))));
        r.push(Check::matrices(
            "[H, Y] = -Y cosh(hX) - cosh(hX) Y",
            &self.hm.commutator(&self.y),
            &-(&(&self.y * &ch) + &(&ch * &self.y)),
        ));
        r.push(Check::matrices("[X, Y] = H", &self.x.commutator(&self.y), &self.hm));

        // classical generators recovered from X, Y
        let (zp, zm) = classical_from_jordanian(&self.x, &self.y)?;
        r.push(Check::matrices("(2/h) tanh(hX/2) = Z+", &zp, &self.zp));
        r.push(Check::matrices("cosh(hX/2) Y cosh(hX/2) = Z-", &zm, &self.zm));
        r.push(Check::matrices("[H, Z+] = 2 Z+", &self.hm.commutator(&zp), &zp.scale_rat(&int(2))));
        r.push(Check::matrices("[H, Z-] = -2 Z-", &self.hm.commutator(&zm), &zm.scale_rat(&int(-2))));
        r.push(Check::matrices("[Z+, Z-] = H", &zp.commutator(&zm), &self.hm));

        // Casimir
        let cas2 = casimir_classical(&self.zp, &self.zm, &self.hm);
        r.push(Check::matrices("C (Jordanian form) = C (classical form)", &self.cas, &cas2));
        r.push(Check::new("C = j(j+1) I", self.cas.is_scalar(&self.casimir_value())));

        // exponentials
        r.push(Check::matrices("e^{hX} e^{-hX} = I", &(&self.ehx * &self.emhx), &id));
        r.push(Check::matrices("e^{hX} (Cayley) = exp series", &self.ehx, &exp_h(&self.x, 1)?));
        r.push(Check::matrices("e^{-hX} (Cayley) = exp series", &self.emhx, &exp_h(&self.x, -1)?));

        r.extend(self.verify_power_identities(self.j.twice() as u32 + 1)?);

        // antipode is an anti-homomorphism on the defining relations
        r.push(Check::matrices("S(X) = -X", &self.s_x, &-&self.x));
        r.push(Check::matrices("S([X,Y]) = [S(Y), S(X)]", &self.s_h, &self.s_y.commutator(&self.s_x)));
        r.push(Check::matrices(
            "S([H,X]) = [S(X), S(H)]",
            &self.s_x.commutator(&self.s_h),
            &sh.scale_rat(&int(-2)),
        ));
        r.push(Check::matrices(
            "S([H,Y]) = [S(Y), S(H)]",
            &self.s_y.commutator(&self.s_h),
            &-(&(&ch * &self.s_y) + &(&self.s_y * &ch)),
        ));

        // classical limit
        r.push(Check::matrices("X at h=0 is Z+", &self.x.eval_h0(), &self.zp));
        r.push(Check::matrices("Y at h=0 is Z-", &self.y.eval_h0(), &self.zm));
        r.push(Check::matrices("e^{hX} at h=0 is I", &self.ehx.eval_h0(), &id));
        r.push(Check::matrices("S(Y) at h=0 is -Z-", &self.s_y.eval_h0(), &-&self.zm));
        r.push(Check::matrices("S(H) at h=0 is -H", &self.s_h.eval_h0(), &-&self.hm));

        // nilpotency and grading
        let top = self.j.twice() as u32;
        r.push(Check::new("X^(2j+1) = 0", self.x.pow(top + 1).is_zero()));
        r.push(Check::new("Z+^(2j+1) = 0", self.zp.pow(top + 1).is_zero()));
        if top > 0 {
            r.push(Check::new("X^(2j) != 0", !self.x.pow(top).is_zero()));
        }
        r.push(Check::new("Z+ raises weight by 1", self.zp.is_weight_shift(&int(1))));
        r.push(Check::new("X strictly raises weight", self.x.is_strictly_raising()));
        r.push(Check::new("Z- lowers weight by 1", self.zm.is_weight_shift(&int(-1))));
        // the cosh(hX/2)^{-1} dressing only adds raising parts to Y
        let dressing = &self.y - &self.zm;
        r.push(Check::new("Y - Z- strictly raises weight", dressing.is_strictly_raising() && dressing.eval_h0().is_zero()));
        Ok(r)
    }
}
