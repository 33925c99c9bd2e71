//! Positive discrete series of `U_h(su(1,1))`, truncated to finitely many
//! weights.
//!
//! The generators are `R = -X`, `V = Y`, `F = H` in terms of `U_h(sl(2))`,
//! with classical partners `T+ = (2/h) tanh(hR/2)` and
//! `T- = cosh(hR/2) V cosh(hR/2)` acting on `|κ μ>`, `μ = κ, κ+1, ...`:
//!
//! ```text
//! F |κ μ> = 2μ |κ μ>,   T+ |κ μ> = |κ μ+1>,   T- |κ μ> = (μ-κ)(μ+κ-1) |κ μ-1>
//! ```
//!
//! Only `μ <= κ + N` is kept. Raising operators are exact on every row; an
//! expression containing `E` lowering factors is exact on rows `μ <= κ+N-E`,
//! and every identity is checked only there.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_traits::Zero;

use crate::arith::series::{
    artanh_scaled, cayley_h, cosh_h, cosh_half, exp_h, half_pow, power_series, sinh_over_h, tanh_scaled,
    unipotent_inverse,
};
use crate::arith::{falling_binomial, format_rational, gen_binomial, int, rat, HMatrix, HPoly, Rational};
use crate::check::{Check, CheckReport};
use crate::coproduct::{GradedRep, TensorSpace};
use crate::error::{Error, Result};
use crate::sl2;

/// Rows on which an expression with `excursion` lowering factors is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationContract {
    pub expression: String,
    pub excursion: usize,
    pub rows: RangeInclusive<usize>,
}

/// A truncated positive-discrete-series representation.
#[derive(Clone, Debug)]
pub struct RepSU11 {
    pub kappa: Rational,
    pub cutoff: usize,
    /// Largest lowering excursion among the checked identities.
    pub buffer: usize,
    pub tp: HMatrix,
    pub tm: HMatrix,
    pub f: HMatrix,
    pub r: HMatrix,
    pub v: HMatrix,
    pub ehr: HMatrix,
    pub emhr: HMatrix,
    /// Casimir from `R`, `V`, `F`.
    pub cas: HMatrix,
    /// Casimir from `T±`, `F`.
    pub cas2: HMatrix,
}

/// Weight labels `2μ`, lowest first.
pub fn grading(kappa: &Rational, cutoff: usize) -> Vec<Rational> {
    (0..=cutoff).map(|i| (kappa + int(i as i64)) * int(2)).collect()
}

/// `(T+, T-, F)` on `μ = κ, ..., κ+N`.
pub fn build_posdes(kappa: &Rational, cutoff: usize) -> Result<(HMatrix, HMatrix, HMatrix)> {
    if *kappa <= int(0) {
        return Err(Error::InvalidLowestWeight(kappa.clone()));
    }
    if cutoff == 0 {
        return Err(Error::InvalidCutoff);
    }
    let g = grading(kappa, cutoff);
    let mut tp = HMatrix::zeros(g.clone());
    let mut tm = HMatrix::zeros(g.clone());
    for i in 0..cutoff {
        tp.set(i + 1, i, HPoly::one());
        // column i + 1 has μ - κ = i + 1
        let n = int(i as i64 + 1);
        let c = &n * (&n + kappa * int(2) - int(1));
        tm.set(i, i + 1, HPoly::constant(c));
    }
    Ok((tp, tm, HMatrix::grading_diagonal(g)))
}

/// `R = (2/h) artanh(hT+/2)`, `V = cosh(hR/2)^{-1} T- cosh(hR/2)^{-1}` and
/// `e^{±hR}` in Cayley form.
pub fn build_jordanian_su(tp: &HMatrix, tm: &HMatrix) -> Result<(HMatrix, HMatrix, HMatrix, HMatrix)> {
    let r = artanh_scaled(tp)?;
    let c_inv = unipotent_inverse(&cosh_half(&r)?)?;
    let v = &(&c_inv * tm) * &c_inv;
    Ok((r, v, cayley_h(tp, 1)?, cayley_h(tp, -1)?))
}

/// `-(1/2h){V sinh hR + sinh hR V} + F^2/4 + (sinh hR)^2/4`.
pub fn casimir_su(r: &HMatrix, v: &HMatrix, f: &HMatrix) -> Result<HMatrix> {
    let s = sinh_over_h(r)?;
    let quarter = rat(1, 4);
    let anti = &(v * &s) + &(&s * v);
    let sq = (&s * &s).scale(&HPoly::monomial(quarter.clone(), 2));
    Ok(&(&anti.scale_rat(&rat(-1, 2)) + &(f * f).scale_rat(&quarter)) + &sq)
}

/// `(F/2)(F/2 - 1) - T+ T-`.
pub fn casimir_su_classical(tp: &HMatrix, tm: &HMatrix, f: &HMatrix) -> HMatrix {
    let half = f.scale_rat(&rat(1, 2));
    &(&half * &(&half - &half.identity_like())) - &(tp * tm)
}

impl RepSU11 {
    pub fn new(kappa: Rational, cutoff: usize) -> Result<Self> {
        let (tp, tm, f) = build_posdes(&kappa, cutoff)?;
        let (r, v, ehr, emhr) = build_jordanian_su(&tp, &tm)?;
        let cas = casimir_su(&r, &v, &f)?;
        let cas2 = casimir_su_classical(&tp, &tm, &f);
        Ok(RepSU11 { kappa, cutoff, buffer: 1, tp, tm, f, r, v, ehr, emhr, cas, cas2 })
    }

    pub fn dim(&self) -> usize {
        self.cutoff + 1
    }

    pub fn grading(&self) -> Vec<Rational> {
        grading(&self.kappa, self.cutoff)
    }

    /// Basis index of weight `μ`.
    pub fn index_of(&self, mu: &Rational) -> Result<usize> {
        let d = mu - &self.kappa;
        if !d.is_integer() || d < Rational::zero() || d > int(self.cutoff as i64) {
            return Err(Error::InvalidSeriesWeight { kappa: self.kappa.to_string(), mu: mu.to_string() });
        }
        Ok(d.to_integer().try_into().expect("index fits"))
    }

    /// `κ(κ-1)`.
    pub fn casimir_value(&self) -> Rational {
        &self.kappa * (&self.kappa - int(1))
    }

    pub fn contract(&self, expression: impl Into<String>, excursion: usize) -> TruncationContract {
        TruncationContract { expression: expression.into(), excursion, rows: 0..=self.cutoff.saturating_sub(excursion) }
    }

    fn rows_label(&self, c: &TruncationContract) -> String {
        let top = &self.kappa + int(*c.rows.end() as i64);
        format!("mu <= {}", format_rational(&top))
    }

    fn check(&self, name: &str, excursion: usize, lhs: &HMatrix, rhs: &HMatrix) -> Check {
        let c = self.contract(name, excursion);
        Check::matrices_on_rows(name, lhs, rhs, c.rows.clone()).with_rows(self.rows_label(&c))
    }

    /// `[F, R^n] = 2n R^{n-1} sinh(hR)/h` and
    /// `[V, R^n] = n R^{n-1} F + n(n-1) R^{n-2} sinh(hR)/h`.
    pub fn verify_power_identities(&self, n_max: u32) -> Result<CheckReport> {
        let s = sinh_over_h(&self.r)?;
        let mut report = CheckReport::default();
        for n in 1..=n_max {
            let nr = int(n as i64);
            let rn = self.r.pow(n);
            let rn1 = self.r.pow(n - 1);
            let rhs_f = (&rn1 * &s).scale_rat(&(&nr * int(2)));
            report.push(self.check(&format!("[F, R^{n}] = 2n R^(n-1) sinh(hR)/h"), 0, &self.f.commutator(&rn), &rhs_f));
            let mut rhs_v = (&rn1 * &self.f).scale_rat(&nr);
            if n >= 2 {
                rhs_v = &rhs_v + &(&self.r.pow(n - 2) * &s).scale_rat(&(&nr * int(n as i64 - 1)));
            }
            report.push(self.check(
                &format!("[V, R^{n}] = n R^(n-1) F + n(n-1) R^(n-2) sinh(hR)/h"),
                1,
                &self.v.commutator(&rn),
                &rhs_v,
            ));
        }
        Ok(report)
    }

    /// The full identity suite on truncation-valid rows.
    pub fn verify(&self) -> Result<CheckReport> {
        let mut r = CheckReport::default();
        let two = int(2);
        let (tp, tm, f) = (&self.tp, &self.tm, &self.f);

        r.push(self.check("[F, T+] = 2 T+", 0, &f.commutator(tp), &tp.scale_rat(&two)));
        r.push(self.check("[F, T-] = -2 T-", 1, &f.commutator(tm), &tm.scale_rat(&-&two)));
        r.push(self.check("[T+, T-] = -F", 1, &tp.commutator(tm), &-f));

        let s = sinh_over_h(&self.r)?;
        let ch = cosh_h(&self.r)?;
        r.push(self.check("[F, R] = 2 sinh(hR)/h", 0, &f.commutator(&self.r), &s.scale_rat(&two)));
        r.push(self.check(
            "[F, V] = -V cosh(hR) - cosh(hR) V",
            1,
            &f.commutator(&self.v),
            &-(&(&self.v * &ch) + &(&ch * &self.v)),
        ));
        r.push(self.check("[R, V] = -F", 1, &self.r.commutator(&self.v), &-f));

        let kk = HMatrix::scalar(self.grading(), &self.casimir_value());
        r.push(self.check("C' (R, V, F form) = kappa(kappa-1)", 1, &self.cas, &kk));
        r.push(self.check("C' (T+, T-, F form) = kappa(kappa-1)", 1, &self.cas2, &kk));
        r.push(self.check("C' forms agree", 1, &self.cas, &self.cas2));

        r.push(self.check("T+ = (2/h) tanh(hR/2)", 0, &tanh_scaled(&self.r)?, tp));
        let c = cosh_half(&self.r)?;
        r.push(self.check("T- = cosh(hR/2) V cosh(hR/2)", 1, &(&(&c * &self.v) * &c), tm));
        r.push(self.check("e^{hR}: Cayley form = exponential series", 0, &self.ehr, &exp_h(&self.r, 1)?));
        r.push(self.check("e^{-hR}: Cayley form = exponential series", 0, &self.emhr, &exp_h(&self.r, -1)?));
        r.push(self.check("e^{hR} e^{-hR} = 1", 0, &(&self.ehr * &self.emhr), &self.tp.identity_like()));

        // transport from the sl(2) construction with Z+ -> -T+
        let (x, y) = sl2::jordanian_from_classical(&-tp, tm)?;
        r.push(self.check("R = -X under Z+ = -T+, Z- = T-", 0, &self.r, &-&x));
        r.push(self.check("V = Y under Z+ = -T+, Z- = T-", 1, &self.v, &y));

        r.push(self.check("R at h=0 is T+", 0, &self.r.eval_h0(), tp));
        r.push(self.check("V at h=0 is T-", 1, &self.v.eval_h0(), tm));
        r.push(Check::new("R is strictly raising", self.r.is_strictly_raising()));
        r.push(Check::new("T+ raises weight by 1", tp.is_weight_shift(&int(1))));
        r.push(Check::new("T- lowers weight by 1", tm.is_weight_shift(&int(-1))));
        r.push(Check::new("T- annihilates the lowest weight", (0..self.dim()).all(|i| tm.get(i, 0).is_zero())));

        r.extend(self.verify_power_identities(self.cutoff as u32)?);
        Ok(r)
    }
}

impl GradedRep for RepSU11 {
    fn dim(&self) -> usize {
        RepSU11::dim(self)
    }
    fn grading(&self) -> Vec<Rational> {
        RepSU11::grading(self)
    }
}

/// `ΔF = F⊗1 + 1⊗F + F⊗2Σ_{n≥1}(-hT+/2)^n + 2Σ_{n≥1}(hT+/2)^n⊗F`.
pub fn delta_f(ts: &TensorSpace<RepSU11>) -> Result<HMatrix> {
    let series = |tp: &HMatrix, sign: i64| {
        power_series(tp, |n| {
            if n == 0 {
                HPoly::zero()
            } else {
                HPoly::monomial(half_pow(n) * int(2 * sign.pow(n)), n)
            }
        })
    };
    let (l, r) = (&ts.left, &ts.right);
    let base = ts.primitive(&l.f, &r.f);
    Ok(&(&base + &l.f.kron(&series(&r.tp, -1)?)) + &series(&l.tp, 1)?.kron(&r.f))
}

/// `α(μ1+ρ, μ2+σ)` for `ρ + σ <= degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuAlphaTable {
    pub kappa1: Rational,
    pub mu1: Rational,
    pub kappa2: Rational,
    pub mu2: Rational,
    pub degree: usize,
    entries: BTreeMap<(usize, usize), HPoly>,
}

fn check_series_weight(kappa: &Rational, mu: &Rational) -> Result<()> {
    if *kappa <= Rational::zero() {
        return Err(Error::InvalidLowestWeight(kappa.clone()));
    }
    let d = mu - kappa;
    if d.is_integer() && d >= Rational::zero() {
        Ok(())
    } else {
        Err(Error::InvalidSeriesWeight { kappa: kappa.to_string(), mu: mu.to_string() })
    }
}

impl SuAlphaTable {
    fn empty(kappa1: &Rational, mu1: &Rational, kappa2: &Rational, mu2: &Rational, degree: usize) -> Result<Self> {
        check_series_weight(kappa1, mu1)?;
        check_series_weight(kappa2, mu2)?;
        Ok(SuAlphaTable {
            kappa1: kappa1.clone(),
            mu1: mu1.clone(),
            kappa2: kappa2.clone(),
            mu2: mu2.clone(),
            degree,
            entries: BTreeMap::new(),
        })
    }

    /// Zero outside the computed range.
    pub fn get(&self, rho: usize, sigma: usize) -> HPoly {
        self.entries.get(&(rho, sigma)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by total degree, then `ρ`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &HPoly)> {
        let mut v: Vec<_> = self.entries.iter().map(|(&(a, b), p)| (a, b, p)).collect();
        v.sort_by_key(|&(a, b, _)| (a + b, a));
        v.into_iter()
    }

    fn cells(degree: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..=degree).flat_map(|s| (0..=s).map(move |rho| (rho, s - rho)))
    }

    fn fill(&mut self, rhs: impl Fn(&SuAlphaTable, usize, usize) -> HPoly) {
        self.entries.insert((0, 0), HPoly::one());
        for (rho, sigma) in Self::cells(self.degree).skip(1) {
            let v = rhs(self, rho, sigma).scale(&-Rational::new(1.into(), ((rho + sigma) as i64).into()));
            self.entries.insert((rho, sigma), v);
        }
    }
}

fn half_h(n: usize, sign: i64) -> HPoly {
    HPoly::monomial(half_pow(n as u32) * int(sign.pow(n as u32)), n as u32)
}

/// Direct form:
/// `(ρ+σ) α + 2(μ1+ρ) Σ_n (-h/2)^n α_{ρ,σ-n} + 2(μ2+σ) Σ_n (h/2)^n α_{ρ-n,σ} = 0`.
pub fn alpha_su_recsu1(
    kappa1: &Rational,
    mu1: &Rational,
    kappa2: &Rational,
    mu2: &Rational,
    degree: usize,
) -> Result<SuAlphaTable> {
    let mut t = SuAlphaTable::empty(kappa1, mu1, kappa2, mu2, degree)?;
    let (a1, a2) = (mu1.clone(), mu2.clone());
    t.fill(|t, rho, sigma| {
        let mut acc = HPoly::zero();
        let w1 = (&a1 + int(rho as i64)) * int(2);
        for n in 1..=sigma {
            acc += &(&half_h(n, -1) * &t.get(rho, sigma - n)).scale(&w1);
        }
        let w2 = (&a2 + int(sigma as i64)) * int(2);
        for n in 1..=rho {
            acc += &(&half_h(n, 1) * &t.get(rho - n, sigma)).scale(&w2);
        }
        acc
    });
    Ok(t)
}

/// Four-term form:
/// `(ρ+σ) α - (h/2)(2μ1+1+ρ-σ) α_{ρ,σ-1} + (h/2)(2μ2+1-ρ+σ) α_{ρ-1,σ}
///  + (h/2)^2 (2μ1+2μ2-2+ρ+σ) α_{ρ-1,σ-1} = 0`.
pub fn alpha_su_recsu2(
    kappa1: &Rational,
    mu1: &Rational,
    kappa2: &Rational,
    mu2: &Rational,
    degree: usize,
) -> Result<SuAlphaTable> {
    let mut t = SuAlphaTable::empty(kappa1, mu1, kappa2, mu2, degree)?;
    let (t1, t2) = (mu1 * int(2), mu2 * int(2));
    t.fill(|t, rho, sigma| {
        let (r, s) = (int(rho as i64), int(sigma as i64));
        let mut acc = HPoly::zero();
        if sigma >= 1 {
            acc -= &(&half_h(1, 1) * &t.get(rho, sigma - 1)).scale(&(&t1 + int(1) + &r - &s));
        }
        if rho >= 1 {
            acc += &(&half_h(1, 1) * &t.get(rho - 1, sigma)).scale(&(&t2 + int(1) - &r + &s));
        }
        if rho >= 1 && sigma >= 1 {
            acc += &(&half_h(2, 1) * &t.get(rho - 1, sigma - 1)).scale(&(&t1 + &t2 - int(2) + &r + &s));
        }
        acc
    });
    Ok(t)
}

fn closed_form(
    kappa1: &Rational,
    mu1: &Rational,
    kappa2: &Rational,
    mu2: &Rational,
    degree: usize,
    binom: impl Fn(&Rational, i64) -> Result<Rational>,
) -> Result<SuAlphaTable> {
    let mut t = SuAlphaTable::empty(kappa1, mu1, kappa2, mu2, degree)?;
    let (t1, t2) = (mu1 * int(2), mu2 * int(2));
    for (rho, sigma) in SuAlphaTable::cells(degree) {
        let (r, s) = (rho as i64, sigma as i64);
        let mut sum = Rational::zero();
        for p in 0..=r.min(s) {
            sum += binom(&(&t1 + int(r - p)), s - p)? * binom(&(&t1 + int(r - 1)), p)? * binom(&t2, r - p)?;
        }
        let sign = if rho % 2 == 0 { 1 } else { -1 };
        t.entries.insert((rho, sigma), half_h(rho + sigma, 1).scale(&(sum * int(sign))));
    }
    Ok(t)
}

/// `(-1)^ρ (h/2)^{ρ+σ} Σ_p C(2μ1+ρ-p, σ-p) C(2μ1+ρ-1, p) C(2μ2, ρ-p)`.
/// Requires `2μ1`, `2μ2` integral.
pub fn alpha_su_closed_form(
    kappa1: &Rational,
    mu1: &Rational,
    kappa2: &Rational,
    mu2: &Rational,
    degree: usize,
) -> Result<SuAlphaTable> {
    closed_form(kappa1, mu1, kappa2, mu2, degree, |top, r| {
        if !top.is_integer() {
            return Err(Error::NonIntegerBinomial(top.clone()));
        }
        let n: i64 = top.to_integer().try_into().map_err(|_| Error::NonIntegerBinomial(top.clone()))?;
        Ok(Rational::from_integer(gen_binomial(n, r)))
    })
}

/// The same sum with binomials continued to rational tops,
/// `C(x, r) = x(x-1)...(x-r+1)/r!`. Agrees with
/// [`alpha_su_closed_form`] whenever the latter is defined.
pub fn alpha_su_closed_form_extended(
    kappa1: &Rational,
    mu1: &Rational,
    kappa2: &Rational,
    mu2: &Rational,
    degree: usize,
) -> Result<SuAlphaTable> {
    closed_form(kappa1, mu1, kappa2, mu2, degree, |top, r| Ok(falling_binomial(top, r)))
}

/// Lowest-weight tensor product with its `ΔF`.
#[derive(Clone, Debug)]
pub struct SuTensor {
    pub space: TensorSpace<RepSU11>,
    pub df: HMatrix,
}

impl SuTensor {
    pub fn new(kappa1: Rational, n1: usize, kappa2: Rational, n2: usize) -> Result<Self> {
        let space = TensorSpace::new(RepSU11::new(kappa1, n1)?, RepSU11::new(kappa2, n2)?);
        let df = delta_f(&space)?;
        Ok(SuTensor { space, df })
    }

    /// Places the table on the product basis. Needs
    /// `μi - κi + degree <= Ni` so every entry fits.
    pub fn vector(&self, t: &SuAlphaTable) -> Result<Vec<HPoly>> {
        let (l, r) = (&self.space.left, &self.space.right);
        let i1 = l.index_of(&t.mu1)?;
        let i2 = r.index_of(&t.mu2)?;
        for (i, n) in [(i1, l.cutoff), (i2, r.cutoff)] {
            if i + t.degree > n {
                return Err(Error::CutoffTooSmall { needed: i + t.degree, cutoff: n });
            }
        }
        let mut v = vec![HPoly::zero(); self.space.dim()];
        for (rho, sigma, p) in t.iter() {
            v[self.space.flat(i1 + rho, i2 + sigma)] = p.clone();
        }
        Ok(v)
    }

    /// `ΔF v = 2(μ1+μ2) v` on every component of total degree `<= t.degree`
    /// above `(μ1, μ2)`.
    pub fn eigen_check(&self, t: &SuAlphaTable) -> Result<Check> {
        let v = self.vector(t)?;
        let lambda = (&t.mu1 + &t.mu2) * int(2);
        let w = self.df.mul_vec(&v);
        let (i1, i2) = (self.space.left.index_of(&t.mu1)?, self.space.right.index_of(&t.mu2)?);
        let bad = (0..self.space.dim()).find(|&i| {
            let (a, b) = self.space.split(i);
            let deg = (a as i64 - i1 as i64) + (b as i64 - i2 as i64);
            deg <= t.degree as i64 && w[i] != v[i].scale(&lambda)
        });
        let name = format!(
            "ΔF eigen-equation at (mu1, mu2) = ({}, {}) up to degree {}",
            format_rational(&t.mu1),
            format_rational(&t.mu2),
            t.degree
        );
        Ok(match bad {
            None => Check::new(name, true),
            Some(i) => Check::new(name, false).with_detail(format!("component {i}: {} != {}", w[i], v[i].scale(&lambda))),
        })
    }

    /// Structural checks on `ΔF`.
    pub fn verify(&self) -> CheckReport {
        let mut r = CheckReport::default();
        let (l, rt) = (&self.space.left, &self.space.right);
        let diag_ok = (0..self.df.dim()).all(|i| self.df.get(i, i) == &HPoly::constant(self.df.grading()[i].clone()));
        r.push(Check::new("ΔF is weight-upper with diagonal 2(mu1+mu2)", self.df.is_weight_upper() && diag_ok));
        r.push(Check::matrices("ΔF at h=0 is primitive", &self.df.eval_h0(), &self.space.primitive(&l.f, &rt.f)));
        r
    }
}

/// One row of the su(1,1) decomposition: pair count and multiplicity at `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuDecompositionRow {
    pub mu: Rational,
    pub count: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuDecompositionReport {
    pub kappa1: Rational,
    pub kappa2: Rational,
    pub mu_max: Rational,
    /// Ascending in `μ`, from `κ1 + κ2`.
    pub rows: Vec<SuDecompositionRow>,
}

/// `n(μ)` by counting `μ1 + μ2 = μ`, `N(μ) = n(μ) - n(μ-1)`, checked
/// against `n(μ) = μ - κ1 - κ2 + 1` and `N(μ) = 1`.
pub fn su_decomposition_rule(kappa1: &Rational, kappa2: &Rational, mu_max: &Rational) -> Result<SuDecompositionReport> {
    for k in [kappa1, kappa2] {
        if *k <= Rational::zero() {
            return Err(Error::InvalidLowestWeight(k.clone()));
        }
    }
    let floor = kappa1 + kappa2;
    if mu_max < &floor {
        return Err(Error::InvalidSeriesWeight { kappa: floor.to_string(), mu: mu_max.to_string() });
    }
    let steps: usize = (mu_max - &floor).floor().to_integer().try_into().expect("small range");
    let count = |mu: &Rational| -> usize {
        let mut n = 0;
        let mut mu1 = kappa1.clone();
        while &mu1 <= mu {
            let mu2 = mu - &mu1;
            if (&mu2 - kappa2).is_integer() && &mu2 >= kappa2 {
                n += 1;
            }
            mu1 += int(1);
        }
        n
    };
    let mut rows = Vec::new();
    for s in 0..=steps {
        let mu = &floor + int(s as i64);
        let n = count(&mu);
        let below = count(&(&mu - int(1)));
        if n != s + 1 || n - below != 1 {
            return Err(Error::Inconsistent(format!("pair count at mu = {}", format_rational(&mu))));
        }
        rows.push(SuDecompositionRow { mu, count: n, multiplicity: n - below });
    }
    if count(&(&floor - int(1))) != 0 {
        return Err(Error::Inconsistent("pairs below kappa1 + kappa2".into()));
    }
    Ok(SuDecompositionReport { kappa1: kappa1.clone(), kappa2: kappa2.clone(), mu_max: mu_max.clone(), rows })
}

/// `α_su(ρ, σ; μ1, μ2)(h) = α_sl2(k=ρ, l=σ; m1=μ1, m2=μ2)(-h)` for
/// half-integral `μ`: both recurrences agree up to `h -> -h`.
pub fn sl2_mirror_matches(t: &SuAlphaTable) -> Option<bool> {
    let to_half = |x: &Rational| -> Option<crate::arith::HalfInt> {
        let d = x * int(2);
        if !d.is_integer() {
            return None;
        }
        Some(crate::arith::HalfInt::from_twice(d.to_integer().try_into().ok()?))
    };
    let (m1, m2) = (to_half(&t.mu1)?, to_half(&t.mu2)?);
    Some(t.iter().all(|(rho, sigma, p)| &crate::cg::alpha_closed_form_entry(m1, m2, rho, sigma).flip_h() == p))
}
