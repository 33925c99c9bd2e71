//! Polynomials in the deformation parameter `h` with exact rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};

/// A polynomial in `h`. Zero coefficients are never stored, so the zero
/// polynomial has an empty term map and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HPoly {
    terms: BTreeMap<u32, Rational>,
}

impl HPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial `h`.
    pub fn h() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn monomial(c: Rational, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        HPoly { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(it: I) -> Self {
        let mut p = HPoly::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, exp: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Value at `h = 0`, i.e. the constant coefficient.
    pub fn eval_h0(&self) -> Rational {
        self.coeff(0)
    }

    pub fn eval(&self, h: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut pow = Rational::one();
        let mut at = 0u32;
        for (e, c) in &self.terms {
            while at < *e {
                pow *= h;
                at += 1;
            }
            acc += c * &pow;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return HPoly::zero();
        }
        HPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Substitutes `h -> -h`.
    pub fn flip_h(&self) -> Self {
        HPoly::from_terms(self.terms().map(|(e, c)| (e, if e % 2 == 0 { c.clone() } else { -c })))
    }

    pub fn mul_h_pow(&self, k: u32) -> Self {
        HPoly {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Exact division by `h^k`; fails if any term has exponent below `k`.
    pub fn div_h_pow(&self, k: u32) -> Result<Self> {
        if let Some(v) = self.valuation() {
            if v < k {
                return Err(Error::InexactDivision(format!("{self} by h^{k}")));
            }
        }
        Ok(HPoly {
            terms: self.terms.iter().map(|(e, v)| (e - k, v.clone())).collect(),
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = HPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Long division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &HPoly) -> (HPoly, HPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading_coeff().unwrap().clone();
        let mut q = HPoly::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading_coeff().unwrap() / &lead;
            let t = HPoly::monomial(c, rd - dd);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        (q, r)
    }

    /// `self / d` when the division leaves no remainder.
    pub fn div_exact(&self, d: &HPoly) -> Option<HPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> HPoly {
        match self.leading_coeff() {
            None => HPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &HPoly) -> HPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// LaTeX rendering, ascending powers, e.g. `1 - \frac{3}{2} h^{2}`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            match e {
                0 => out.push_str(&coeff),
                _ => {
                    if !a.is_one() {
                        out.push_str(&coeff);
                        out.push(' ');
                    }
                    if *e == 1 {
                        out.push('h');
                    } else {
                        out.push_str(&format!("h^{{{e}}}"));
                    }
                }
            }
        }
        out
    }
}

/// Canonical text form: ascending powers, `c*h^e` with `c` a reduced
/// fraction, `h^1` written `h`, `h^0` dropped, unit coefficients on
/// nonconstant terms dropped, e.g. `1 - 3/2*h^2`. Zero prints as `0`.
impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let var = match e {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{e}"),
            };
            if *e == 0 {
                f.write_str(&format_rational(&a))?;
            } else if a.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{}*{}", format_rational(&a), var)?;
            }
        }
        Ok(())
    }
}

impl FromStr for HPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut p = HPoly::zero();
        for piece in pieces {
            let (neg, body) = match piece.as_bytes()[0] {
                b'-' => (true, &piece[1..]),
                b'+' => (false, &piece[1..]),
                _ => (false, piece),
            };
            let bad = || Error::Parse(format!("bad polynomial term {piece:?} in {s:?}"));
            let (coeff, var) = match body.split_once('*') {
                Some((c, v)) => (parse_rational(c)?, Some(v)),
                None if body.starts_with('h') => (Rational::one(), Some(body)),
                None => (parse_rational(body)?, None),
            };
            let exp = match var {
                None => 0,
                Some("h") => 1,
                Some(v) => v
                    .strip_prefix("h^")
                    .and_then(|e| e.parse::<u32>().ok())
                    .ok_or_else(bad)?,
            };
            p.add_term(exp, &if neg { -coeff } else { coeff });
        }
        Ok(p)
    }
}

impl Serialize for HPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<Rational> for HPoly {
    fn from(c: Rational) -> Self {
        HPoly::constant(c)
    }
}

impl Add<&HPoly> for &HPoly {
    type Output = HPoly;
    fn add(self, rhs: &HPoly) -> HPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&HPoly> for &HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &HPoly) -> HPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&HPoly> for &HPoly {
    type Output = HPoly;
    fn mul(self, rhs: &HPoly) -> HPoly {
        let mut out = HPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        HPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        -&self
    }
}

impl AddAssign<&HPoly> for HPoly {
    fn add_assign(&mut self, rhs: &HPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&HPoly> for HPoly {
    fn sub_assign(&mut self, rhs: &HPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<HPoly> for HPoly {
            type Output = HPoly;
            fn $m(self, rhs: HPoly) -> HPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&HPoly> for HPoly {
            type Output = HPoly;
            fn $m(self, rhs: &HPoly) -> HPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<HPoly> for &HPoly {
            type Output = HPoly;
            fn $m(self, rhs: HPoly) -> HPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
