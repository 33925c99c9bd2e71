//! Output documents and their JSON, CSV and LaTeX renderings.
//!
//! A [`Document`] is the single source for every format; CSV and LaTeX are
//! views of the same data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{HPoly, Rational};
use crate::check::Check;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Alpha(AlphaEntry),
    SuAlpha(SuAlphaEntry),
    Decomposition(DecompositionEntry),
    Cg(CgEntry),
}

/// `α(m1+k, m2+l)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaEntry {
    pub k: usize,
    pub l: usize,
    pub poly: HPoly,
}

/// `α(μ1+ρ, μ2+σ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuAlphaEntry {
    pub rho: usize,
    pub sigma: usize,
    pub poly: HPoly,
}

/// Pair count and multiplicity at one weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionEntry {
    pub weight: String,
    pub count: usize,
    pub multiplicity: usize,
}

/// One coefficient of `|j m>`. With `basis = "eigen"` it multiplies the
/// weight eigenvector `|(j1 m1)(j2 m2)>`; with `basis = "product"` it
/// multiplies `|j1 m1> ⊗ |j2 m2>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CgEntry {
    pub j: String,
    pub m: String,
    pub basis: String,
    pub m1: String,
    pub m2: String,
    pub poly: HPoly,
}

/// Everything one command run produces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    pub engine_version: String,
    pub params: BTreeMap<String, String>,
    pub entries: Vec<Entry>,
    pub checks: Vec<Check>,
    /// Observations that are reported but not asserted.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
    /// Wall-clock milliseconds per phase; only filled on request.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
}

impl Document {
    pub fn new(command: impl Into<String>) -> Self {
        Document {
            command: command.into(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            params: BTreeMap::new(),
            entries: Vec::new(),
            checks: Vec::new(),
            notes: BTreeMap::new(),
            timings: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub fn render(doc: &Document, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => to_csv(doc),
        Format::Latex => Ok(to_latex(doc)),
    }
}

pub fn to_json(doc: &Document) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(s: &str) -> Result<Document> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// The entry table, or the check table when there are no entries.
pub fn to_csv(doc: &Document) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Parse(e.to_string());
    match doc.entries.first() {
        None => {
            w.write_record(["check", "passed", "valid_rows", "detail"]).map_err(err)?;
            for c in &doc.checks {
                let passed = c.passed.to_string();
                let rows = c.valid_rows.as_deref().unwrap_or("");
                let detail = c.detail.as_deref().unwrap_or("");
                w.write_record([c.name.as_str(), &passed, rows, detail]).map_err(err)?;
            }
        }
        Some(first) => {
            let header: &[&str] = match first {
                Entry::Alpha(_) => &["k", "l", "poly"],
                Entry::SuAlpha(_) => &["rho", "sigma", "poly"],
                Entry::Decomposition(_) => &["weight", "count", "multiplicity"],
                Entry::Cg(_) => &["j", "m", "basis", "m1", "m2", "poly"],
            };
            w.write_record(header).map_err(err)?;
            for e in &doc.entries {
                let row: Vec<String> = match e {
                    Entry::Alpha(a) => vec![a.k.to_string(), a.l.to_string(), a.poly.to_string()],
                    Entry::SuAlpha(a) => vec![a.rho.to_string(), a.sigma.to_string(), a.poly.to_string()],
                    Entry::Decomposition(d) => vec![d.weight.clone(), d.count.to_string(), d.multiplicity.to_string()],
                    Entry::Cg(c) => vec![
                        c.j.clone(),
                        c.m.clone(),
                        c.basis.clone(),
                        c.m1.clone(),
                        c.m2.clone(),
                        c.poly.to_string(),
                    ],
                };
                w.write_record(&row).map_err(err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// `3/2` as `\frac{3}{2}`, integers unchanged.
pub fn latex_number(s: &str) -> String {
    let (sign, body) = s.strip_prefix('-').map_or(("", s), |b| ("-", b));
    match body.split_once('/') {
        Some((p, q)) => format!("{sign}\\frac{{{p}}}{{{q}}}"),
        None => s.to_string(),
    }
}

fn latex_text(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '_' | '#' | '%' | '&' | '$' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            _ => out.push(ch),
        }
    }
    out
}

/// `c |ket>` summands joined into one signed sum.
fn ket_sum(terms: &[(HPoly, String)]) -> String {
    let mut out = String::new();
    for (p, ket) in terms.iter().filter(|(p, _)| !p.is_zero()) {
        let neg = p.terms().next().is_some_and(|(_, c)| c < &Rational::from_integer(0.into()));
        let mag = if neg { -p } else { p.clone() };
        let coeff = if mag == HPoly::one() {
            String::new()
        } else if mag.terms().count() == 1 {
            format!("{} ", mag.to_latex())
        } else {
            format!("\\left({}\\right) ", mag.to_latex())
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&coeff);
        out.push_str(ket);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn ket(j: &str, m: &str) -> String {
    format!("\\ket{{{}\\; {}}}", latex_number(j), latex_number(m))
}

fn pair_ket(j1: &str, m1: &str, j2: &str, m2: &str) -> String {
    format!(
        "\\ket{{({}\\; {})\\; ({}\\; {})}}",
        latex_number(j1),
        latex_number(m1),
        latex_number(j2),
        latex_number(m2)
    )
}

fn offset(base: &str, k: usize) -> String {
    let b: Rational = crate::arith::parse_rational(base).unwrap_or_default();
    crate::arith::format_rational(&(b + Rational::from_integer((k as i64).into())))
}

fn p<'a>(doc: &'a Document, key: &str) -> &'a str {
    doc.params.get(key).map(String::as_str).unwrap_or("?")
}

/// A standalone-friendly LaTeX fragment; `\ket` is defined if missing.
pub fn to_latex(doc: &Document) -> String {
    let mut out = String::new();
    out.push_str(&format!("% jordan-cg {} (engine {})\n", doc.command, doc.engine_version));
    out.push_str("\\providecommand{\\ket}[1]{\\left|#1\\right\\rangle}\n");
    let family_su = doc.command.ends_with("su11");

    let first = doc.entries.first();
    match first {
        Some(Entry::Alpha(_)) => {
            let (j1, m1, j2, m2) = (p(doc, "j1"), p(doc, "m1"), p(doc, "j2"), p(doc, "m2"));
            let terms: Vec<_> = doc
                .entries
                .iter()
                .filter_map(|e| match e {
                    Entry::Alpha(a) => Some((a.poly.clone(), format!("{} \\otimes {}", ket(j1, &offset(m1, a.k)), ket(j2, &offset(m2, a.l))))),
                    _ => None,
                })
                .collect();
            out.push_str("\\begin{equation*}\n");
            out.push_str(&format!("{} = {}\n", pair_ket(j1, m1, j2, m2), ket_sum(&terms)));
            out.push_str("\\end{equation*}\n");
        }
        Some(Entry::SuAlpha(_)) => {
            let (k1, m1, k2, m2) = (p(doc, "kappa1"), p(doc, "mu1"), p(doc, "kappa2"), p(doc, "mu2"));
            let terms: Vec<_> = doc
                .entries
                .iter()
                .filter_map(|e| match e {
                    Entry::SuAlpha(a) => {
                        Some((a.poly.clone(), format!("{} \\otimes {}", ket(k1, &offset(m1, a.rho)), ket(k2, &offset(m2, a.sigma)))))
                    }
                    _ => None,
                })
                .collect();
            out.push_str("\\begin{equation*}\n");
            out.push_str(&format!("{} = {} + \\cdots\n", pair_ket(k1, m1, k2, m2), ket_sum(&terms)));
            out.push_str("\\end{equation*}\n");
        }
        Some(Entry::Decomposition(_)) => {
            let rows: Vec<&DecompositionEntry> = doc
                .entries
                .iter()
                .filter_map(|e| match e {
                    Entry::Decomposition(d) => Some(d),
                    _ => None,
                })
                .collect();
            let parts: Vec<String> =
                rows.iter().filter(|d| d.multiplicity > 0).map(|d| latex_number(&d.weight)).collect();
            let (a, b) = if family_su { ("kappa1", "kappa2") } else { ("j1", "j2") };
            let tail = if family_su { " \\oplus \\cdots" } else { "" };
            out.push_str("\\begin{equation*}\n");
            out.push_str(&format!(
                "{} \\otimes {} = {}{}\n",
                latex_number(p(doc, a)),
                latex_number(p(doc, b)),
                parts.join(" \\oplus "),
                tail
            ));
            out.push_str("\\end{equation*}\n");
            let (w, n, mult) = if family_su { ("\\mu", "n(\\mu)", "N(\\mu)") } else { ("m", "n(m)", "N(m)") };
            out.push_str(&format!("\\begin{{tabular}}{{rrr}}\n${w}$ & ${n}$ & ${mult}$ \\\\\n\\hline\n"));
            for d in rows {
                out.push_str(&format!("${}$ & {} & {} \\\\\n", latex_number(&d.weight), d.count, d.multiplicity));
            }
            out.push_str("\\end{tabular}\n");
        }
        Some(Entry::Cg(_)) => {
            let (j1, j2) = (p(doc, "j1"), p(doc, "j2"));
            type Group = ((String, String), Vec<(HPoly, String)>);
            let mut groups: Vec<Group> = Vec::new();
            for e in &doc.entries {
                if let Entry::Cg(c) = e {
                    if c.basis != "eigen" {
                        continue;
                    }
                    let key = (c.j.clone(), c.m.clone());
                    if groups.last().map(|g| &g.0) != Some(&key) {
                        groups.push((key, Vec::new()));
                    }
                    groups.last_mut().unwrap().1.push((c.poly.clone(), pair_ket(j1, &c.m1, j2, &c.m2)));
                }
            }
            out.push_str("\\begin{align*}\n");
            let lines: Vec<String> =
                groups.iter().map(|((j, m), terms)| format!("{} &= {}", ket(j, m), ket_sum(terms))).collect();
            out.push_str(&lines.join(" \\\\\n"));
            out.push_str("\n\\end{align*}\n");
        }
        None => {}
    }

    if !doc.checks.is_empty() {
        out.push_str("\\begin{tabular}{lll}\ncheck & result & rows \\\\\n\\hline\n");
        for c in &doc.checks {
            out.push_str(&format!(
                "\\texttt{{{}}} & {} & {} \\\\\n",
                latex_text(&c.name),
                if c.passed { "pass" } else { "FAIL" },
                latex_text(c.valid_rows.as_deref().unwrap_or("all"))
            ));
        }
        out.push_str("\\end{tabular}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Document {
        let mut d = Document::new("eigvec sl2").param("j1", "1").param("m1", "1").param("j2", "1").param("m2", "-1");
        for (k, l, s) in [(0, 0, "1"), (0, 1, "-h"), (0, 2, "1/4*h^2")] {
            d.entries.push(Entry::Alpha(AlphaEntry { k, l, poly: s.parse().unwrap() }));
        }
        d.checks.push(Check::new("a_{0,0} = 1", true));
        d
    }

    #[test]
    fn json_round_trip_all_entry_kinds() {
        let mut d = sample();
        d.entries.push(Entry::SuAlpha(SuAlphaEntry { rho: 1, sigma: 0, poly: "-h".parse().unwrap() }));
        d.entries.push(Entry::Decomposition(DecompositionEntry { weight: "3/2".into(), count: 2, multiplicity: 1 }));
        d.entries.push(Entry::Cg(CgEntry {
            j: "1".into(),
            m: "0".into(),
            basis: "eigen".into(),
            m1: "1/2".into(),
            m2: "-1/2".into(),
            poly: "1/2".parse().unwrap(),
        }));
        d.notes.insert("x".into(), "y".into());
        d.checks.push(Check::new("rows", false).with_rows("mu <= 5").with_detail("entry (0,0)"));
        let s = to_json(&d).unwrap();
        assert_eq!(from_json(&s).unwrap(), d);
        assert!(s.contains("\"poly\": \"1/4*h^2\""));
    }

    #[test]
    fn csv_views() {
        let s = to_csv(&sample()).unwrap();
        assert_eq!(s, "k,l,poly\n0,0,1\n0,1,-h\n0,2,1/4*h^2\n");
        let mut d = Document::new("verify sl2");
        d.checks.push(Check::new("[H, X] = 2 sinh(hX)/h", true));
        assert_eq!(to_csv(&d).unwrap(), "check,passed,valid_rows,detail\n\"[H, X] = 2 sinh(hX)/h\",true,,\n");
    }

    #[test]
    fn latex_kets() {
        let s = to_latex(&sample());
        assert!(s.contains("\\ket{(1\\; 1)\\; (1\\; -1)} = \\ket{1\\; 1} \\otimes \\ket{1\\; -1} - h \\ket{1\\; 1} \\otimes \\ket{1\\; 0}"));
        assert!(s.contains("\\texttt{a\\_\\{0,0\\} = 1}"));
        assert_eq!(latex_number("-3/2"), "-\\frac{3}{2}");
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
