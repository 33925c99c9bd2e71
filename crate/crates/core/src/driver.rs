//! Builds one [`Document`] per command.

use crate::arith::{format_rational, HPoly, HalfInt, Rational};
use crate::cg::{self, CgEngine};
use crate::check::Check;
use crate::coproduct::TensorSpace;
use crate::error::{Error, Result};
use crate::io::{AlphaEntry, CgEntry, DecompositionEntry, Document, Entry, SuAlphaEntry};
use crate::sl2::RepSL2;
use crate::su11::{self, RepSU11, SuTensor};

/// Default cap on any matrix dimension a command may build.
pub const DEFAULT_MAX_DIM: usize = 400;

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: DEFAULT_MAX_DIM }
    }
}

impl Limits {
    /// Reads `JORDAN_CG_MAX_DIM`, falling back to the default.
    pub fn from_env() -> Result<Self> {
        match std::env::var("JORDAN_CG_MAX_DIM") {
            Ok(s) => s
                .trim()
                .parse()
                .map(|max_dim| Limits { max_dim })
                .map_err(|_| Error::Parse(format!("JORDAN_CG_MAX_DIM must be a positive integer (got {s:?})"))),
            Err(_) => Ok(Limits::default()),
        }
    }

    fn allow(&self, dim: usize) -> Result<()> {
        if dim > self.max_dim {
            Err(Error::DimensionCap { dim, cap: self.max_dim })
        } else {
            Ok(())
        }
    }
}

fn sl2_tensor_dim(j1: HalfInt, j2: HalfInt) -> Result<usize> {
    j1.check_highest_weight()?;
    j2.check_highest_weight()?;
    Ok((j1.twice() as usize + 1) * (j2.twice() as usize + 1))
}

pub fn verify_sl2(j: HalfInt, limits: Limits) -> Result<Document> {
    j.check_highest_weight()?;
    limits.allow(j.twice() as usize + 1)?;
    let rep = RepSL2::new(j)?;
    let mut doc = Document::new("verify sl2").param("j", j);
    doc.checks = rep.verify()?.checks;
    Ok(doc)
}

pub fn verify_su11(kappa: Rational, cutoff: usize, limits: Limits) -> Result<Document> {
    limits.allow(cutoff + 1)?;
    let rep = RepSU11::new(kappa.clone(), cutoff)?;
    let mut doc = Document::new("verify su11").param("kappa", format_rational(&kappa)).param("cutoff", cutoff);
    doc.checks = rep.verify()?.checks;
    Ok(doc)
}

pub fn decompose_sl2(j1: HalfInt, j2: HalfInt) -> Result<Document> {
    let d = cg::decomposition_rule(j1, j2)?;
    let mut doc = Document::new("decompose sl2").param("j1", j1).param("j2", j2);
    for (&j, &n) in d.multiplicity.iter().rev() {
        doc.entries.push(Entry::Decomposition(DecompositionEntry {
            weight: j.to_string(),
            count: d.n_of_m[&j],
            multiplicity: n,
        }));
    }
    let dim = (j1.twice() as usize + 1) * (j2.twice() as usize + 1);
    doc.checks.push(
        Check::new("sum of N(j)(2j+1) = (2j1+1)(2j2+1)", d.total_dimension() == dim)
            .with_detail(format!("{} vs {dim}", d.total_dimension())),
    );
    doc.checks.push(Check::new("multiplicity free", d.multiplicity.values().all(|&n| n <= 1)));
    Ok(doc)
}

pub fn decompose_su11(kappa1: Rational, kappa2: Rational, mu_max: Rational) -> Result<Document> {
    let d = su11::su_decomposition_rule(&kappa1, &kappa2, &mu_max)?;
    let mut doc = Document::new("decompose su11")
        .param("kappa1", format_rational(&kappa1))
        .param("kappa2", format_rational(&kappa2))
        .param("mu_max", format_rational(&mu_max));
    for r in &d.rows {
        doc.entries.push(Entry::Decomposition(DecompositionEntry {
            weight: format_rational(&r.mu),
            count: r.count,
            multiplicity: r.multiplicity,
        }));
    }
    let floor = &kappa1 + &kappa2;
    doc.checks.push(Check::new(
        "n(mu) = mu - kappa1 - kappa2 + 1",
        d.rows.iter().all(|r| Rational::from_integer((r.count as i64).into()) == &r.mu - &floor + Rational::from_integer(1.into())),
    ));
    doc.checks.push(Check::new("N(mu) = 1 from kappa1 + kappa2 up", d.rows.iter().all(|r| r.multiplicity == 1)));
    Ok(doc)
}

pub fn eigvec_sl2(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, limits: Limits) -> Result<Document> {
    limits.allow(sl2_tensor_dim(j1, j2)?)?;
    let closed = cg::alpha_closed_form(j1, m1, j2, m2)?;
    let mut doc = Document::new("eigvec sl2").param("j1", j1).param("m1", m1).param("j2", j2).param("m2", m2);
    for (k, l, p) in closed.iter() {
        doc.entries.push(Entry::Alpha(AlphaEntry { k, l, poly: p.clone() }));
    }
    doc.checks.push(Check::new("closed form = first recurrence", closed == cg::alpha_recurrence_rec1(j1, m1, j2, m2)?));
    doc.checks.push(Check::new("closed form = four-term recurrence", closed == cg::alpha_recurrence_rec3(j1, m1, j2, m2)?));
    doc.checks.push(Check::new("alpha(m1, m2) = 1", closed.get(0, 0) == &HPoly::one()));
    doc.checks.push(Check::new(
        "alpha(m1+k, m2+l) divisible by h^(k+l)",
        closed.iter().all(|(k, l, p)| p.valuation().is_none_or(|v| v as usize >= k + l)),
    ));
    let engine = CgEngine::new(j1, j2)?;
    let v = closed.to_vector();
    let lambda = (m1 + m2).to_rational() * Rational::from_integer(2.into());
    doc.checks.push(Check::new("ΔH v = 2(m1+m2) v", v.is_eigenvector_of(&engine.ops.dh, &lambda)));
    Ok(doc)
}

/// Smallest cutoff that holds every entry of a degree-`degree` table at `μ`.
fn su_cutoff(kappa: &Rational, mu: &Rational, degree: usize) -> Result<usize> {
    let d = mu - kappa;
    if !d.is_integer() || d < Rational::from_integer(0.into()) {
        return Err(Error::InvalidSeriesWeight { kappa: kappa.to_string(), mu: mu.to_string() });
    }
    let base: usize = d.to_integer().try_into().map_err(|_| Error::Parse("weight too large".into()))?;
    Ok((base + degree).max(1))
}

pub fn eigvec_su11(
    kappa1: Rational,
    mu1: Rational,
    kappa2: Rational,
    mu2: Rational,
    degree: usize,
    limits: Limits,
) -> Result<Document> {
    let n1 = su_cutoff(&kappa1, &mu1, degree)?;
    let n2 = su_cutoff(&kappa2, &mu2, degree)?;
    limits.allow((n1 + 1) * (n2 + 1))?;
    let t = su11::alpha_su_recsu1(&kappa1, &mu1, &kappa2, &mu2, degree)?;
    let mut doc = Document::new("eigvec su11")
        .param("kappa1", format_rational(&kappa1))
        .param("mu1", format_rational(&mu1))
        .param("kappa2", format_rational(&kappa2))
        .param("mu2", format_rational(&mu2))
        .param("degree", degree);
    for (rho, sigma, p) in t.iter() {
        doc.entries.push(Entry::SuAlpha(SuAlphaEntry { rho, sigma, poly: p.clone() }));
    }
    doc.checks.push(Check::new(
        "first recurrence = four-term recurrence",
        t == su11::alpha_su_recsu2(&kappa1, &mu1, &kappa2, &mu2, degree)?,
    ));
    match su11::alpha_su_closed_form(&kappa1, &mu1, &kappa2, &mu2, degree) {
        Ok(c) => doc.checks.push(Check::new("closed form = first recurrence", c == t)),
        Err(Error::NonIntegerBinomial(_)) => {
            let c = su11::alpha_su_closed_form_extended(&kappa1, &mu1, &kappa2, &mu2, degree)?;
            doc.checks.push(Check::new("closed form (rational binomials) = first recurrence", c == t));
            doc.notes.insert("closed_form".into(), "2mu is not integral; binomials continued to rational tops".into());
        }
        Err(e) => return Err(e),
    }
    if let Some(ok) = su11::sl2_mirror_matches(&t) {
        doc.checks.push(Check::new("alpha equals the sl(2) table at -h", ok));
    }
    let st = SuTensor::new(kappa1, n1, kappa2, n2)?;
    doc.checks.push(st.eigen_check(&t)?);
    doc.checks.extend(st.verify().checks);
    Ok(doc)
}

pub fn cgtable_sl2(j1: HalfInt, j2: HalfInt, limits: Limits) -> Result<Document> {
    limits.allow(sl2_tensor_dim(j1, j2)?)?;
    let engine = CgEngine::new(j1, j2)?;
    let t = engine.table()?;
    let mut doc = Document::new("cgtable sl2").param("j1", j1).param("j2", j2);
    let ts: &TensorSpace<RepSL2> = &engine.space;
    for s in &t.states {
        for e in &s.eigen {
            doc.entries.push(Entry::Cg(CgEntry {
                j: s.j.to_string(),
                m: s.m.to_string(),
                basis: "eigen".into(),
                m1: e.m1.to_string(),
                m2: e.m2.to_string(),
                poly: e.coeff.clone(),
            }));
        }
        for (i, p) in s.vector.coeffs.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            let (k1, k2) = ts.split(i);
            doc.entries.push(Entry::Cg(CgEntry {
                j: s.j.to_string(),
                m: s.m.to_string(),
                basis: "product".into(),
                m1: (j1 - HalfInt::from_int(k1 as i64)).to_string(),
                m2: (j2 - HalfInt::from_int(k2 as i64)).to_string(),
                poly: p.clone(),
            }));
        }
    }
    doc.checks = engine.verify_table(&t).checks;
    doc.checks.push(t.classical_check()?);
    doc.notes.insert("determinant".into(), t.determinant.to_string());
    let deep: Vec<String> =
        t.h_free_report().into_iter().filter(|(_, _, free)| !free).map(|(j, m, _)| format!("|{j} {m}>")).collect();
    let note = if deep.is_empty() { "all".to_string() } else { format!("all except {}", deep.join(", ")) };
    doc.notes.insert("h_free_eigen_coefficients".into(), note);
    Ok(doc)
}

/// 0 when every check passed, 1 otherwise.
pub fn exit_code(doc: &Document) -> i32 {
    if doc.all_passed() {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn hi(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn commands_pass() {
        let l = Limits::default();
        for doc in [
            verify_sl2(hi(4), l).unwrap(),
            verify_su11(rat(1, 2), 8, l).unwrap(),
            decompose_sl2(hi(2), hi(3)).unwrap(),
            decompose_su11(rat(1, 2), rat(1, 2), int(3)).unwrap(),
            eigvec_sl2(hi(2), hi(2), hi(2), hi(-2), l).unwrap(),
            eigvec_su11(rat(1, 2), rat(1, 2), int(1), int(1), 4, l).unwrap(),
            eigvec_su11(rat(2, 3), rat(5, 3), rat(2, 3), rat(2, 3), 3, l).unwrap(),
            cgtable_sl2(hi(1), hi(1), l).unwrap(),
        ] {
            assert_eq!(exit_code(&doc), 0, "{}: {:?}", doc.command, doc.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        }
    }

    #[test]
    fn entry_counts() {
        let l = Limits::default();
        assert_eq!(eigvec_su11(rat(1, 2), rat(1, 2), int(1), int(1), 4, l).unwrap().entries.len(), 15);
        assert_eq!(decompose_sl2(hi(2), hi(3)).unwrap().entries.len(), 3);
        assert_eq!(decompose_sl2(hi(0), hi(0)).unwrap().entries.len(), 1);
        let d = cgtable_sl2(hi(1), hi(1), l).unwrap();
        let states: std::collections::BTreeSet<_> = d
            .entries
            .iter()
            .map(|e| match e {
                Entry::Cg(c) => (c.j.clone(), c.m.clone()),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(states.len(), 4);
    }

    #[test]
    fn dimension_cap() {
        let l = Limits { max_dim: 10 };
        assert_eq!(cgtable_sl2(hi(2), hi(4), l).unwrap_err(), Error::DimensionCap { dim: 15, cap: 10 });
        assert_eq!(verify_sl2(hi(-2), l).unwrap_err().exit_code(), 2);
    }
}
