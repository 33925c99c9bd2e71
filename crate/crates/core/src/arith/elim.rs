//! Fraction-free elimination over `Q[h]`.
//!
//! Rows are combined by cross-multiplication and then divided by their
//! polynomial content, so every intermediate entry stays a polynomial and
//! kernels are exact over the fraction field `Q(h)`.

use super::poly::HPoly;
use crate::error::{Error, Result};

/// Reduced, fraction-free echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<HPoly>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

fn content(row: &[HPoly]) -> HPoly {
    row.iter().filter(|p| !p.is_zero()).fold(HPoly::zero(), |g, p| g.gcd(p))
}

fn remove_content(row: &mut [HPoly]) -> Result<()> {
    let g = content(row);
    if g.is_zero() || g == HPoly::one() {
        return Ok(());
    }
    for e in row.iter_mut() {
        *e = e
            .div_exact(&g)
            .ok_or_else(|| Error::InexactDivision(format!("{e} by row content {g}")))?;
    }
    Ok(())
}

fn lcm(a: &HPoly, b: &HPoly) -> HPoly {
    let g = a.gcd(b);
    (a * b).div_exact(&g).expect("gcd divides the product")
}

/// Gauss-Jordan elimination without fractions. Each pivot row ends with a
/// nonzero pivot and every other row has zero in that pivot column.
pub fn echelon(a: &[Vec<HPoly>], cols: usize) -> Result<Echelon> {
    let mut rows: Vec<Vec<HPoly>> = a.to_vec();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch {
            left: cols,
            right: rows.iter().map(Vec::len).find(|&l| l != cols).unwrap_or(cols),
        });
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        // lowest-degree pivot keeps the cross-multiplied entries small
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].degree())
        else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        let piv = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (e, pe) in row.iter_mut().zip(&pivot_row) {
                *e = &(&piv * &*e) - &(&f * pe);
            }
            remove_content(row)?;
        }
        remove_content(&mut rows[r])?;
        pivots.push(c);
        r += 1;
    }
    Ok(Echelon { rows, pivots, cols })
}

pub fn rank(a: &[Vec<HPoly>], cols: usize) -> Result<usize> {
    Ok(echelon(a, cols)?.pivots.len())
}

/// A basis of the right kernel `{x : A x = 0}` over `Q(h)`, each vector
/// cleared to polynomial entries with trivial content.
pub fn kernel(a: &[Vec<HPoly>], cols: usize) -> Result<Vec<Vec<HPoly>>> {
    let ech = echelon(a, cols)?;
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !ech.pivots.contains(c)) {
        let mut scale = HPoly::one();
        for (i, &p) in ech.pivots.iter().enumerate() {
            if !ech.rows[i][f].is_zero() {
                scale = lcm(&scale, &ech.rows[i][p]);
            }
        }
        let mut x = vec![HPoly::zero(); cols];
        x[f] = scale.clone();
        for (i, &p) in ech.pivots.iter().enumerate() {
            let e = &ech.rows[i][f];
            if e.is_zero() {
                continue;
            }
            let factor = scale.div_exact(&ech.rows[i][p]).expect("lcm is a multiple of each pivot");
            x[p] = -(e * &factor);
        }
        remove_content(&mut x)?;
        basis.push(x);
    }
    Ok(basis)
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn determinant(a: &[Vec<HPoly>]) -> Result<HPoly> {
    let n = a.len();
    let mut m = a.to_vec();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { left: n, right: m[0].len() });
    }
    if n == 0 {
        return Ok(HPoly::one());
    }
    let mut negate = false;
    let mut prev = HPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(HPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::InexactDivision("Bareiss step".into()))?;
            }
            m[i][k] = HPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// `A x` for a rectangular row list.
pub fn apply(a: &[Vec<HPoly>], x: &[HPoly]) -> Vec<HPoly> {
    a.iter()
        .map(|row| {
            let mut acc = HPoly::zero();
            for (e, v) in row.iter().zip(x) {
                if !e.is_zero() && !v.is_zero() {
                    acc += &(e * v);
                }
            }
            acc
        })
        .collect()
}
