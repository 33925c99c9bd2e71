//! Acceptance criteria, one line of output each.
//!
//! Runs without the libtest harness so the result lines always print.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use jordan_cg::arith::{int, rat, HPoly, HalfInt, Rational};
use jordan_cg::cg::{self, CgEngine, CoupledState};
use jordan_cg::coproduct::{delta_h_expanded, delta_primitive, delta_zminus_expanded, delta_zminus_product, TensorSpace};
use jordan_cg::sl2::RepSL2;
use jordan_cg::su11::{self, RepSU11, SuTensor};

type Outcome = Result<String, String>;

fn hi(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn within(label: &str, elapsed: Duration, budget_s: u64) -> Outcome {
    if elapsed <= Duration::from_secs(budget_s) {
        Ok(format!("{label}, {:.2}s (budget {budget_s}s)", elapsed.as_secs_f64()))
    } else {
        Err(format!("{label}, but took {:.2}s (budget {budget_s}s)", elapsed.as_secs_f64()))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for t in 0..=5 {
        let rep = RepSL2::new(hi(t)).map_err(|e| e.to_string())?;
        let report = rep.verify().map_err(|e| e.to_string())?;
        let first = report.failures().next().map(|bad| format!("j = {}: {} {:?}", hi(t), bad.name, bad.detail));
        if let Some(msg) = first {
            return Err(msg);
        }
    }
    within("algebra suite for j = 0..5/2", start.elapsed(), 5)
}

fn pairs_up_to(max_twice_sum: i64) -> Vec<(HalfInt, HalfInt)> {
    let mut out = Vec::new();
    for a in 0..=max_twice_sum {
        for b in 0..=max_twice_sum - a {
            out.push((hi(a), hi(b)));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let pairs = pairs_up_to(6);
    for &(j1, j2) in &pairs {
        let ts = TensorSpace::sl2(j1, j2).map_err(|e| e.to_string())?;
        let (dx, dy, dh) = delta_primitive(&ts).map_err(|e| e.to_string())?;
        if dh != delta_h_expanded(&ts).map_err(|e| e.to_string())? {
            return Err(format!("ΔH routes differ at ({j1}, {j2})"));
        }
        let product = delta_zminus_product(&ts, &dx, &dy).map_err(|e| e.to_string())?;
        if product != delta_zminus_expanded(&ts).map_err(|e| e.to_string())? {
            return Err(format!("ΔZ- routes differ at ({j1}, {j2})"));
        }
    }
    within(&format!("ΔH and ΔZ- dual routes on {} pairs", pairs.len()), start.elapsed(), 30)
}

fn criterion_3() -> Outcome {
    let mut tables = 0;
    for (j1, j2) in pairs_up_to(8) {
        let engine = CgEngine::new(j1, j2).map_err(|e| e.to_string())?;
        for a in 0..=j1.twice() {
            for b in 0..=j2.twice() {
                let (m1, m2) = (j1 - HalfInt::from_int(a), j2 - HalfInt::from_int(b));
                let closed = cg::alpha_closed_form(j1, m1, j2, m2).map_err(|e| e.to_string())?;
                let r1 = cg::alpha_recurrence_rec1(j1, m1, j2, m2).map_err(|e| e.to_string())?;
                let r3 = cg::alpha_recurrence_rec3(j1, m1, j2, m2).map_err(|e| e.to_string())?;
                if closed != r1 || closed != r3 {
                    return Err(format!("routes differ at j = ({j1}, {j2}), m = ({m1}, {m2})"));
                }
                let lambda = (m1 + m2).to_rational() * int(2);
                if !closed.to_vector().is_eigenvector_of(&engine.ops.dh, &lambda) {
                    return Err(format!("eigen-equation fails at j = ({j1}, {j2}), m = ({m1}, {m2})"));
                }
                tables += 1;
            }
        }
    }
    Ok(format!("{tables} weight pairs agree on all three routes and solve the eigen-equation"))
}

/// `(m1, m2) -> coefficient` keyed by twice the weights.
type Expected = BTreeMap<(i64, i64), HPoly>;

fn c(x: Rational) -> HPoly {
    HPoly::constant(x)
}

fn hpow(x: Rational, e: u32) -> HPoly {
    HPoly::monomial(x, e)
}

/// Adds a term if its coefficient is nonzero; `None` if the term is
/// nonzero but the weights do not exist.
fn term(e: &mut Expected, j1: HalfInt, j2: HalfInt, m1: HalfInt, m2: HalfInt, p: HPoly) -> Option<()> {
    if p.is_zero() {
        return Some(());
    }
    if m1.abs() > j1 || m2.abs() > j2 {
        return None;
    }
    *e.entry((m1.twice(), m2.twice())).or_default() += &p;
    Some(())
}

fn compare_product(name: &str, v: &cg::WeightVector, exp: &Expected) -> Result<(), String> {
    let (j1, j2) = (v.j1, v.j2);
    for a in 0..=j1.twice() {
        for b in 0..=j2.twice() {
            let (m1, m2) = (j1 - HalfInt::from_int(a), j2 - HalfInt::from_int(b));
            let want = exp.get(&(m1.twice(), m2.twice())).cloned().unwrap_or_default();
            if v.component(m1, m2) != &want {
                return Err(format!(
                    "{name} at ({j1}, {j2}): component ({m1}, {m2}) is {} but expected {want}",
                    v.component(m1, m2)
                ));
            }
        }
    }
    Ok(())
}

fn compare_eigen(name: &str, s: &CoupledState, exp: &Expected) -> Result<(), String> {
    for e in &s.eigen {
        let want = exp.get(&(e.m1.twice(), e.m2.twice())).cloned().unwrap_or_default();
        if e.coeff != want {
            return Err(format!("{name}: coefficient on ({}, {}) is {} but expected {want}", e.m1, e.m2, e.coeff));
        }
    }
    let known: Vec<_> = s.eigen.iter().map(|e| (e.m1.twice(), e.m2.twice())).collect();
    if exp.keys().any(|k| !known.contains(k)) {
        return Err(format!("{name}: expected weights missing from the eigenbasis"));
    }
    Ok(())
}

/// Checks every displayed formula that applies at `(j1, j2)`; returns how
/// many were compared.
fn fixtures_at(j1: HalfInt, j2: HalfInt) -> Result<usize, String> {
    let one = HalfInt::ONE;
    let two = HalfInt::from_int(2);
    let (a, b) = (j1.to_rational(), j2.to_rational());
    let jj = &a + &b;
    let mut done = 0;

    let mut eig = |name: &str, m1: HalfInt, m2: HalfInt, build: &dyn Fn(&mut Expected) -> Option<()>| -> Result<(), String> {
        if m1.abs() > j1 || m2.abs() > j2 {
            return Ok(());
        }
        let mut exp = Expected::new();
        if build(&mut exp).is_none() {
            return Ok(());
        }
        let v = cg::weight_eigenvector(j1, m1, j2, m2).map_err(|e| e.to_string())?;
        compare_product(name, &v, &exp)?;
        done += 1;
        Ok(())
    };

    eig("j1j2", j1, j2, &|e| term(e, j1, j2, j1, j2, HPoly::one()))?;
    eig("m1p1", j1, j2 - one, &|e| {
        term(e, j1, j2, j1, j2 - one, HPoly::one())?;
        term(e, j1, j2, j1, j2, hpow(-&a, 1))
    })?;
    eig("m1p2", j1 - one, j2, &|e| {
        term(e, j1, j2, j1 - one, j2, HPoly::one())?;
        term(e, j1, j2, j1, j2, hpow(b.clone(), 1))
    })?;
    eig("m2p1", j1, j2 - two, &|e| {
        term(e, j1, j2, j1, j2 - two, HPoly::one())?;
        term(e, j1, j2, j1, j2 - one, hpow(-&a, 1))?;
        term(e, j1, j2, j1, j2, hpow(rat(1, 4) * &a * (&a * int(2) - int(1)), 2))
    })?;
    eig("m2p2", j1 - one, j2 - one, &|e| {
        term(e, j1, j2, j1 - one, j2 - one, HPoly::one())?;
        term(e, j1, j2, j1 - one, j2, hpow(-(&a - int(1)), 1))?;
        term(e, j1, j2, j1, j2 - one, hpow(&b - int(1), 1))?;
        term(e, j1, j2, j1, j2, hpow(rat(-1, 2) * (&a * &b * int(2) - &a - &b), 2))
    })?;
    eig("m2p3", j1 - two, j2, &|e| {
        term(e, j1, j2, j1 - two, j2, HPoly::one())?;
        term(e, j1, j2, j1 - one, j2, hpow(b.clone(), 1))?;
        term(e, j1, j2, j1, j2, hpow(rat(1, 4) * &b * (&b * int(2) - int(1)), 2))
    })?;

    let table = cg::cg_table(j1, j2).map_err(|e| e.to_string())?;
    let top = j1 + j2;
    let mut state = |name: &str, j: HalfInt, m: HalfInt, build: &dyn Fn(&mut Expected) -> Option<()>| -> Result<(), String> {
        let Some(s) = table.state(j, m) else {
            return Ok(());
        };
        let mut exp = Expected::new();
        if build(&mut exp).is_none() {
            return Ok(());
        }
        compare_eigen(&format!("{name} at ({j1}, {j2})"), s, &exp)?;
        done += 1;
        Ok(())
    };

    state("high", top, top, &|e| term(e, j1, j2, j1, j2, HPoly::one()))?;
    state("secondhigh", top - one, top - one, &|e| {
        term(e, j1, j2, j1 - one, j2, HPoly::one())?;
        term(e, j1, j2, j1, j2 - one, HPoly::from_int(-1))
    })?;
    state("thirdhigh", top - two, top - two, &|e| {
        term(e, j1, j2, j1, j2 - two, HPoly::one())?;
        term(e, j1, j2, j1 - one, j2 - one, HPoly::from_int(-1))?;
        term(e, j1, j2, j1 - two, j2, HPoly::one())
    })?;
    state("lowered |J J-1>", top, top - one, &|e| {
        let s = jj.recip();
        term(e, j1, j2, j1 - one, j2, c(&a * &s))?;
        term(e, j1, j2, j1, j2 - one, c(&b * &s))
    })?;
    state("lowered |J J-2>", top, top - two, &|e| {
        let s = (&jj * (&jj * int(2) - int(1))).recip();
        term(e, j1, j2, j1, j2 - two, c(&b * (&b * int(2) - int(1)) * &s))?;
        term(e, j1, j2, j1 - one, j2 - one, c(&a * &b * int(2) * &s))?;
        term(e, j1, j2, j1 - two, j2, c(&a * (&a * int(2) - int(1)) * &s))
    })?;
    state("lowered |J-1 J-2>", top - one, top - two, &|e| {
        let s = (&jj - int(1)).recip();
        term(e, j1, j2, j1, j2 - two, c(-(&b * int(2) - int(1)) * &s))?;
        term(e, j1, j2, j1 - one, j2 - one, c((&b - &a) * &s))?;
        term(e, j1, j2, j1 - two, j2, c((&a * int(2) - int(1)) * &s))
    })?;
    Ok(done)
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    for (t1, t2) in [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3)] {
        total += fixtures_at(hi(t1), hi(t2))?;
    }
    // spot value: the m2p2 top coefficient at (3/2, 1)
    let v = cg::weight_eigenvector(hi(3), hi(1), hi(2), hi(0)).map_err(|e| e.to_string())?;
    let want = hpow(rat(-1, 4), 2);
    if v.component(hi(3), hi(2)) != &want {
        return Err(format!("m2p2 top coefficient at (3/2, 1) is {}", v.component(hi(3), hi(2))));
    }
    Ok(format!("{total} displayed vectors reproduced exactly at 5 spin pairs"))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for t1 in 0..=5 {
        for t2 in 0..=5 {
            let (j1, j2) = (hi(t1), hi(t2));
            let d = cg::decomposition_rule(j1, j2).map_err(|e| e.to_string())?;
            for (&j, &n) in &d.multiplicity {
                let expected = usize::from(j >= (j1 - j2).abs() && j <= j1 + j2);
                if n != expected {
                    return Err(format!("N({j}) = {n} for ({j1}, {j2})"));
                }
            }
            if d.total_dimension() != ((t1 + 1) * (t2 + 1)) as usize {
                return Err(format!("dimension identity fails for ({j1}, {j2})"));
            }
            count += 1;
        }
    }
    let kappas = [rat(1, 2), int(1), rat(2, 3)];
    for k1 in &kappas {
        for k2 in &kappas {
            let floor = k1 + k2;
            let d = su11::su_decomposition_rule(k1, k2, &(&floor + int(10))).map_err(|e| e.to_string())?;
            if d.rows.len() != 11 {
                return Err(format!("expected 11 rows for ({k1}, {k2})"));
            }
            for (i, r) in d.rows.iter().enumerate() {
                if r.mu != &floor + int(i as i64) || r.multiplicity != 1 || r.count != i + 1 {
                    return Err(format!("row {i} wrong for ({k1}, {k2})"));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} decompositions match the multiplicity-free rule"))
}

type ClassicalVector = BTreeMap<(i64, i64), Rational>;

/// Classical coupled basis built only from the undeformed action
/// `J+ |m> = |m+1>`, `J- |m> = (j+m)(j-m+1) |m-1>` on each factor.
/// Keys are twice the weights.
fn classical_oracle(j1: i64, j2: i64) -> Vec<(i64, i64, ClassicalVector)> {
    let lower = |j: i64, m: i64| -> Rational { rat((j + m) * (j - m + 2), 4) };
    let mut out = Vec::new();
    let mut jj = j1 + j2;
    while jj >= (j1 - j2).abs() {
        // highest weight vector: alternating signs along decreasing m1
        let mut v = BTreeMap::new();
        let mut i = 0;
        let mut m1 = j1;
        while m1 >= -j1 {
            let m2 = jj - m1;
            if m2.abs() <= j2 {
                let sign = if ((j1 + j2 - jj) / 2 + i) % 2 == 0 { 1 } else { -1 };
                v.insert((m1, m2), int(sign));
                i += 1;
            }
            m1 -= 2;
        }
        let mut m = jj;
        loop {
            out.push((jj, m, v.clone()));
            if m == -jj {
                break;
            }
            let mut next: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
            for (&(a, b), x) in &v {
                if a > -j1 {
                    *next.entry((a - 2, b)).or_default() += x * lower(j1, a);
                }
                if b > -j2 {
                    *next.entry((a, b - 2)).or_default() += x * lower(j2, b);
                }
            }
            let div = lower(jj, m);
            v = next.into_iter().filter(|(_, x)| *x != int(0)).map(|(k, x)| (k, x / &div)).collect();
            m -= 2;
        }
        jj -= 2;
    }
    out
}

fn criterion_6() -> Outcome {
    for (t1, t2) in [(1, 1), (2, 1), (2, 2)] {
        let table = cg::cg_table(hi(t1), hi(t2)).map_err(|e| e.to_string())?;
        let oracle = classical_oracle(t1, t2);
        if oracle.len() != table.states.len() {
            return Err(format!("state count differs at ({}, {})", hi(t1), hi(t2)));
        }
        for ((jj, m, v), s) in oracle.iter().zip(&table.states) {
            if s.j.twice() != *jj || s.m.twice() != *m {
                return Err(format!("state order differs at ({}, {})", hi(t1), hi(t2)));
            }
            for a in 0..=t1 {
                for b in 0..=t2 {
                    let (m1, m2) = (t1 - 2 * a, t2 - 2 * b);
                    let got = s.vector.component(hi(m1), hi(m2)).eval_h0();
                    let want = v.get(&(m1, m2)).cloned().unwrap_or_default();
                    if got != want {
                        return Err(format!("|{} {}> at ({}, {}): {got} vs {want}", s.j, s.m, hi(m1), hi(m2)));
                    }
                }
            }
        }
    }
    Ok("h=0 tables match the classical lowering oracle for (1/2,1/2), (1,1/2), (1,1)".into())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let kappas = [rat(1, 2), int(1), rat(2, 3)];
    let mut checks = 0;
    for k in &kappas {
        let rep = RepSU11::new(k.clone(), 12).map_err(|e| e.to_string())?;
        let report = rep.verify().map_err(|e| e.to_string())?;
        let first = report.failures().next().map(|bad| format!("kappa = {k}: {} {:?}", bad.name, bad.detail));
        if let Some(msg) = first {
            return Err(msg);
        }
        checks += report.checks.len();
    }
    for k1 in &kappas {
        for k2 in &kappas {
            let st = SuTensor::new(k1.clone(), 12, k2.clone(), 12).map_err(|e| e.to_string())?;
            for (d1, d2) in [(0, 0), (1, 0), (0, 1), (2, 3), (6, 6)] {
                let (mu1, mu2) = (k1 + int(d1), k2 + int(d2));
                let r1 = su11::alpha_su_recsu1(k1, &mu1, k2, &mu2, 6).map_err(|e| e.to_string())?;
                let r2 = su11::alpha_su_recsu2(k1, &mu1, k2, &mu2, 6).map_err(|e| e.to_string())?;
                let half_integral = (k1 * int(2)).is_integer() && (k2 * int(2)).is_integer();
                let closed = match su11::alpha_su_closed_form(k1, &mu1, k2, &mu2, 6) {
                    Ok(t) if half_integral => t,
                    Ok(_) => return Err(format!("strict closed form accepted kappa = ({k1}, {k2})")),
                    Err(jordan_cg::Error::NonIntegerBinomial(_)) if !half_integral => {
                        su11::alpha_su_closed_form_extended(k1, &mu1, k2, &mu2, 6).map_err(|e| e.to_string())?
                    }
                    Err(e) => return Err(e.to_string()),
                };
                if r1 != r2 || r1 != closed {
                    return Err(format!("routes differ at kappa = ({k1}, {k2}), mu = ({mu1}, {mu2})"));
                }
                let eig = st.eigen_check(&r1).map_err(|e| e.to_string())?;
                if !eig.passed {
                    return Err(format!("{} {:?}", eig.name, eig.detail));
                }
                checks += 2;
            }
        }
    }
    within(&format!("{checks} su(1,1) checks on valid rows, N = 12, degree 6"), start.elapsed(), 60)
}

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_jordan-cg");
    let runs: &[&[&str]] = &[
        &["verify", "sl2", "--j", "3/2"],
        &["verify", "su11", "--kappa", "2/3", "--cutoff", "8", "--format", "csv"],
        &["decompose", "sl2", "--j1", "1", "--j2", "3/2", "--format", "csv"],
        &["decompose", "su11", "--kappa1", "1/2", "--kappa2", "1/2", "--mu-max", "3"],
        &["eigvec", "sl2", "--j1", "1", "--m1", "1", "--j2", "1", "--m2", "-1", "--format", "latex"],
        &["eigvec", "su11", "--kappa1", "1/2", "--mu1", "1/2", "--kappa2", "1", "--mu2", "1", "--degree", "4"],
        &["cgtable", "sl2", "--j1", "1", "--j2", "1/2"],
        &["cgtable", "sl2", "--j1", "1", "--j2", "1", "--format", "latex"],
        &["verify", "sl2", "--j", "-1"],
    ];
    for args in runs {
        let a = Command::new(bin).args(*args).output().map_err(|e| e.to_string())?;
        let b = Command::new(bin).args(*args).output().map_err(|e| e.to_string())?;
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
            return Err(format!("output differs between runs of {}", args.join(" ")));
        }
    }
    Ok(format!("{} commands produce byte-identical output across runs", runs.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("algebra verification", criterion_1),
        ("coproduct dual routes", criterion_2),
        ("CG triple agreement", criterion_3),
        ("displayed vectors", criterion_4),
        ("decomposition rules", criterion_5),
        ("classical-limit oracle", criterion_6),
        ("su(1,1) suite", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {} ({name}): PASS - {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
