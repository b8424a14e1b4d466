//! Closed-form clique counts for the extremal families and checks of the
//! tightness results built on them.
//!
//! Every verifier builds the relevant graph, counts its cliques directly and
//! compares the counts with the closed forms and with [`kk_bound`]. The
//! outcome is a [`Report`] listing each comparison, so a failure shows the
//! numbers that disagreed rather than a bare `false`.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::binomial::{binom, canonical_rep, kk_bound, BinomialError, Count};
use crate::graph::{apex_construction, complete_minus_star, count_cliques, turan_graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("closed form for {what} at n = {n} is {formula} but direct counting gives {counted}")]
    FormulaMismatch {
        what: &'static str,
        n: u64,
        formula: Count,
        counted: Count,
    },
    #[error(transparent)]
    Binomial(#[from] BinomialError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Result<T> = std::result::Result<T, ExtremalError>;

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(ExtremalError::Precondition(msg()))
    }
}

fn ibinom(n: u64, k: u64) -> BigInt {
    BigInt::from(binom(n, k))
}

fn to_count(v: BigInt) -> Count {
    v.to_biguint().expect("clique count is non-negative")
}

/// `k_3(T(n, n-2)) = C(n,3) - 2(n-2)`.
pub fn turan_k3_count(n: u64) -> Result<Count> {
    require(n >= 4, || format!("T(n,n-2) formulas need n >= 4, got {n}"))?;
    Ok(binom(n, 3) - Count::from(2 * (n - 2)))
}

/// `k_4(T(n, n-2)) = C(n,4) - 2 C(n-2,2) + 1`.
pub fn turan_k4_count(n: u64) -> Result<Count> {
    require(n >= 4, || format!("T(n,n-2) formulas need n >= 4, got {n}"))?;
    Ok(to_count(ibinom(n, 4) - 2 * ibinom(n - 2, 2) + 1))
}

/// `k_5(T(n, n-2)) = C(n,5) - 2 C(n-2,3) + (n-4)`.
pub fn turan_k5_count(n: u64) -> Result<Count> {
    require(n >= 5, || format!("the K_5 formula needs n >= 5, got {n}"))?;
    Ok(to_count(ibinom(n, 5) - 2 * ibinom(n - 2, 3) + BigInt::from(n - 4)))
}

/// `k_s` of `K_n` with `p` edges deleted at one vertex, i.e. of `K_{n-1}`
/// plus a vertex joined to `n-1-p` of its vertices:
/// `C(n-1, s) + C(n-1-p, s-1)`.
pub fn star_deletion_count(n: u64, p: u64, s: u64) -> Result<Count> {
    require(p < n, || format!("need p < n, got p = {p}, n = {n}"))?;
    require(s >= 1, || "need s >= 1".to_string())?;
    Ok(binom(n - 1, s) + binom(n - 1 - p, s - 1))
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn new(label: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        Self {
            label: label.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    fn new(name: &'static str, params: Vec<(&'static str, String)>) -> Self {
        Self {
            name,
            params,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) {
        self.checks.push(Check::new(label, expected, actual));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(
            f,
            "{} [{}]: {}",
            self.name,
            params.join(" "),
            if self.passed() { "pass" } else { "FAIL" }
        )?;
        for c in &self.checks {
            let mark = if c.passed() { "ok" } else { "MISMATCH" };
            writeln!(f, "  {mark:8} {}: expected {}, got {}", c.label, c.expected, c.actual)?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

/// Two-term case: `[x]^r = C(n,r) + C(m,r-1)` is attained by `K_n` plus one
/// vertex joined to `m` of its vertices.
pub fn verify_single_apex(n: u64, m: u64, r: u64, s: u64) -> Result<Report> {
    require(r >= 2, || format!("need r >= 2, got {r}"))?;
    require(r < s && s < n, || {
        format!("need r < s < n, got r = {r}, s = {s}, n = {n}")
    })?;
    require(m < n, || format!("need m < n, got m = {m}, n = {n}"))?;
    require(m + 1 >= r, || format!("need m >= r - 1, got m = {m}, r = {r}"))?;

    let mut rep = Report::new(
        "single-apex",
        vec![
            ("n", n.to_string()),
            ("m", m.to_string()),
            ("r", r.to_string()),
            ("s", s.to_string()),
        ],
    );
    let g = apex_construction(n as usize, &[m as usize])?;
    let x = binom(n, r) + binom(m, r - 1);
    let ks = binom(n, s) + binom(m, s - 1);
    let counted_r = count_cliques(&g, r as usize);
    let counted_s = count_cliques(&g, s as usize);
    rep.check(format!("k_{r} counted vs C(n,r)+C(m,r-1)"), &x, &counted_r);
    rep.check(
        format!("cascade of x at level {r}"),
        format!("C({n},{r})+C({m},{})", r - 1),
        canonical_rep(&x, r as u32)?,
    );
    rep.check(format!("k_{s} counted vs C(n,s)+C(m,s-1)"), &ks, &counted_s);
    rep.check(
        format!("[x]^{r}_{s} vs C(n,s)+C(m,s-1)"),
        &ks,
        kk_bound(&counted_r, r as u32, s as u32)?,
    );
    Ok(rep)
}

/// Smallest `t` with `C(t, r-2) = C(w, r-1)`, scanning `t <= max(4w, r)`.
pub fn matching_lower_top(w: u64, r: u64) -> Option<u64> {
    let target = binom(w, r - 1);
    (0..=(4 * w).max(r)).find(|&t| binom(t, r - 2) == target)
}

/// Three-term case: the third term `C(t, r-2)` vanishes after shifting to
/// `s` and is realised by a second external vertex joined to `w` vertices,
/// where `C(w, r-1) = C(t, r-2)`.
pub fn verify_double_apex(n: u64, m: u64, w: u64, r: u64, s: u64) -> Result<Report> {
    require(r >= 2, || format!("need r >= 2, got {r}"))?;
    require(r < s, || format!("need r < s, got r = {r}, s = {s}"))?;
    require(m < n, || format!("need m < n, got m = {m}, n = {n}"))?;
    require(w <= m, || format!("need w <= m, got w = {w}, m = {m}"))?;
    let t = matching_lower_top(w, r).ok_or_else(|| {
        ExtremalError::Precondition(format!(
            "no t <= {} satisfies C(t,{}) = C({w},{}) = {}",
            (4 * w).max(r),
            r - 2,
            r - 1,
            binom(w, r - 1)
        ))
    })?;
    require(s >= 2 && s - 2 > t, || format!("need s - 2 > t, got s = {s}, t = {t}"))?;
    require(s - 1 > w, || format!("need s - 1 > w, got s = {s}, w = {w}"))?;

    let mut rep = Report::new(
        "double-apex",
        vec![
            ("n", n.to_string()),
            ("m", m.to_string()),
            ("w", w.to_string()),
            ("r", r.to_string()),
            ("s", s.to_string()),
        ],
    );
    rep.notes.push(format!("t = {t}"));
    let x = binom(n, r) + binom(m, r - 1) + binom(w, r - 1);
    let ks = binom(n, s) + binom(m, s - 1);
    let g = apex_construction(n as usize, &[m as usize, w as usize])?;
    let counted_r = count_cliques(&g, r as usize);
    rep.notes.push(format!("x = {x}"));
    rep.check(format!("k_{r} counted vs C(n,r)+C(m,r-1)+C(w,r-1)"), &x, &counted_r);
    rep.check(
        format!("cascade of x at level {r}"),
        canonical_rep(&(binom(n, r) + binom(m, r - 1) + binom(t, r - 2)), r as u32)?,
        canonical_rep(&x, r as u32)?,
    );
    rep.check(
        format!("[x]^{r}_{s} vs C(n,s)+C(m,s-1)"),
        &ks,
        kk_bound(&x, r as u32, s as u32)?,
    );
    rep.check(
        format!("k_{s} counted vs C(n,s)+C(m,s-1)"),
        &ks,
        count_cliques(&g, s as usize),
    );
    Ok(rep)
}

/// Star deletion from `K_n`: compares the counted `k_s` with
/// [`star_deletion_count`].
pub fn verify_star_deletion(n: u64, p: u64, s: u64) -> Result<Report> {
    require(p < n, || format!("need p < n, got p = {p}, n = {n}"))?;
    require(s >= 1 && s <= n, || format!("need 1 <= s <= n, got s = {s}"))?;
    let mut rep = Report::new(
        "star-deletion",
        vec![("n", n.to_string()), ("p", p.to_string()), ("s", s.to_string())],
    );
    let g = complete_minus_star(n as usize, p as usize)?;
    let counted = count_cliques(&g, s as usize);
    rep.check(
        format!("k_{s} counted vs C(n-1,s)+C(n-1-p,s-1)"),
        star_deletion_count(n, p, s)?,
        &counted,
    );
    rep.notes.push(format!(
        "C(n,s)+C(n-p,s-1) = {} counts K_{} minus {p} edges at one vertex",
        binom(n, s) + binom(n - p, s - 1),
        n + 1
    ));
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlateauParams {
    pub r: u64,
    pub t: u64,
    pub w: u64,
}

/// `r = u+1`, `t = w = 2u-1`, using `C(2u-1, u-1) = C(2u-1, u)`.
pub fn plateau_params(u: u64, s: u64) -> Result<PlateauParams> {
    require(u > 1, || format!("need u > 1, got {u}"))?;
    require(s >= 2 * u + 2, || format!("need s >= 2u + 2 = {}, got {s}", 2 * u + 2))?;
    let params = PlateauParams {
        r: u + 1,
        t: 2 * u - 1,
        w: 2 * u - 1,
    };
    let lower = binom(params.t, params.r - 2);
    let upper = binom(params.w, params.r - 1);
    require(lower == upper, || {
        format!("C({0},{1}) = {lower} but C({0},{2}) = {upper}", params.t, u - 1, u)
    })?;
    Ok(params)
}

/// Smallest plateau instance `(n, m, w, r, s)` for a given `u`:
/// `s = 2u+2` and `n = s+1 > m = s`, so both surviving terms are non-zero.
pub fn plateau_minimal_instance(u: u64) -> Result<(u64, u64, u64, u64, u64)> {
    let s = 2 * u + 2;
    let p = plateau_params(u, s)?;
    Ok((s + 1, s, p.w, p.r, s))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlateauReport {
    pub report: Report,
    pub start: Count,
    pub end: Count,
    pub length: Count,
    pub value: Count,
}

/// Checks that `[y]^r_s = C(n,s) + C(m,s-1)` for every `y` between
/// `C(n,r) + C(m,r-1)` and `x = C(n,r) + C(m,r-1) + C(t,r-2)`, and that both
/// ends are attained by apex constructions.
pub fn plateau_check(n: u64, m: u64, t: u64, r: u64, s: u64) -> Result<PlateauReport> {
    require(r >= 2, || format!("need r >= 2, got {r}"))?;
    require(r < s, || format!("need r < s, got r = {r}, s = {s}"))?;
    require(m < n, || format!("need m < n, got m = {m}, n = {n}"))?;
    require(m + 1 >= r, || format!("need m >= r - 1, got m = {m}, r = {r}"))?;
    require(s >= 2 && s - 2 > t, || format!("need s - 2 > t, got s = {s}, t = {t}"))?;
    let tail = binom(t, r - 2);
    require(tail == Count::from(0u32) || t < m, || {
        format!("need t < m, got t = {t}, m = {m}")
    })?;
    let w = (0..=m)
        .find(|&w| binom(w, r - 1) == tail)
        .ok_or_else(|| ExtremalError::Precondition(format!("no w <= {m} has C(w,{}) = {tail}", r - 1)))?;
    require(s - 1 > w, || format!("need s - 1 > w, got s = {s}, w = {w}"))?;

    let start = binom(n, r) + binom(m, r - 1);
    let end = &start + &tail;
    let value = binom(n, s) + binom(m, s - 1);
    let mut rep = Report::new(
        "plateau",
        vec![
            ("n", n.to_string()),
            ("m", m.to_string()),
            ("t", t.to_string()),
            ("r", r.to_string()),
            ("s", s.to_string()),
        ],
    );
    let length = &tail + 1u32;
    let mut agreeing = Count::from(0u32);
    let mut y = start.clone();
    while y <= end {
        if kk_bound(&y, r as u32, s as u32)? == value {
            agreeing += 1u32;
        }
        y += 1u32;
    }
    rep.check(
        format!("y in [{start}, {end}] with [y]^{r}_{s} = {value}"),
        &length,
        &agreeing,
    );

    let low = apex_construction(n as usize, &[m as usize])?;
    rep.check(format!("k_{r} of apex(n,[m])"), &start, count_cliques(&low, r as usize));
    rep.check(format!("k_{s} of apex(n,[m])"), &value, count_cliques(&low, s as usize));
    let high = apex_construction(n as usize, &[m as usize, w as usize])?;
    rep.check(
        format!("k_{r} of apex(n,[m,{w}])"),
        &end,
        count_cliques(&high, r as usize),
    );
    rep.check(
        format!("k_{s} of apex(n,[m,{w}])"),
        &value,
        count_cliques(&high, s as usize),
    );
    Ok(PlateauReport {
        report: rep,
        start,
        end,
        length,
        value,
    })
}

fn require_above_six(n: u64) -> Result<()> {
    require(n > 6, || format!("identity is stated for n > 6, got {n}"))
}

/// `C(n,4) - 2C(n-2,2) + 1 = C(n-1,4) + C(n-4,3) + C(n-5,2) - 1`.
pub fn verify_k4_identity(n: u64) -> Result<Report> {
    require_above_six(n)?;
    let lhs = ibinom(n, 4) - 2 * ibinom(n - 2, 2) + 1;
    let rhs = ibinom(n - 1, 4) + ibinom(n - 4, 3) + ibinom(n - 5, 2) - 1;
    let mut rep = Report::new("turan-k4-identity", vec![("n", n.to_string())]);
    rep.check("C(n,4)-2C(n-2,2)+1 vs C(n-1,4)+C(n-4,3)+C(n-5,2)-1", rhs, lhs);
    Ok(rep)
}

/// `C(n,5) - 2C(n-2,3) + (2n-9) = C(n-1,5) + C(n-4,4) + C(n-5,3)`.
pub fn verify_k5_identity(n: u64) -> Result<Report> {
    require_above_six(n)?;
    let lhs = ibinom(n, 5) - 2 * ibinom(n - 2, 3) + BigInt::from(2 * n - 9);
    let rhs = ibinom(n - 1, 5) + ibinom(n - 4, 4) + ibinom(n - 5, 3);
    let mut rep = Report::new("turan-k5-identity", vec![("n", n.to_string())]);
    rep.check("C(n,5)-2C(n-2,3)+(2n-9) vs C(n-1,5)+C(n-4,4)+C(n-5,3)", rhs, lhs);
    Ok(rep)
}

/// `[C(n,3) - 2(n-2)]^3 = C(n-1,3) + C(n-4,2) + C(n-5,1)`.
pub fn verify_canonical_x(n: u64) -> Result<Report> {
    require_above_six(n)?;
    let x = turan_k3_count(n)?;
    let rep_x = canonical_rep(&x, 3)?;
    let mut rep = Report::new("canonical-x", vec![("n", n.to_string())]);
    rep.check(
        format!("cascade of {x}"),
        format!("C({},3)+C({},2)+C({},1)", n - 1, n - 4, n - 5),
        &rep_x,
    );
    Ok(rep)
}

/// Which clique size is compared against triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CliquePair {
    K3K4,
    K3K5,
}

impl CliquePair {
    pub fn s(self) -> u64 {
        match self {
            CliquePair::K3K4 => 4,
            CliquePair::K3K5 => 5,
        }
    }

    /// Observed gap `[x]^3_s - k_s(T(n, n-2))`.
    pub fn expected_gap(self, n: u64) -> u64 {
        match self {
            CliquePair::K3K4 => 1,
            CliquePair::K3K5 => n - 5,
        }
    }

    fn actual(self, n: u64) -> Result<Count> {
        match self {
            CliquePair::K3K4 => turan_k4_count(n),
            CliquePair::K3K5 => turan_k5_count(n),
        }
    }
}

impl std::str::FromStr for CliquePair {
    type Err = ExtremalError;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace(' ', "").as_str() {
            "3,4" => Ok(CliquePair::K3K4),
            "3,5" => Ok(CliquePair::K3K5),
            other => Err(ExtremalError::Precondition(format!(
                "unsupported pair {other:?}; expected 3,4 or 3,5"
            ))),
        }
    }
}

impl fmt::Display for CliquePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "3,{}", self.s())
    }
}

/// One row of the `T(n, n-2)` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapRow {
    pub n: u64,
    /// `k_3(T(n, n-2))`.
    pub x: Count,
    /// `k_s(T(n, n-2))`.
    pub actual: Count,
    /// `[x]^3_s`.
    pub bound: Count,
    pub gap: Count,
}

/// Closed forms are compared against direct counting up to this `n`.
pub const CROSS_CHECK_MAX_N: u64 = 40;

fn gap_row(pair: CliquePair, n: u64) -> Result<GapRow> {
    let s = pair.s();
    let x = turan_k3_count(n)?;
    let actual = pair.actual(n)?;
    if n <= CROSS_CHECK_MAX_N {
        let g = turan_graph(n as usize, n as usize - 2)?;
        for (what, r, formula) in [("k_3", 3, &x), (if s == 4 { "k_4" } else { "k_5" }, s, &actual)] {
            let counted = count_cliques(&g, r as usize);
            if &counted != formula {
                return Err(ExtremalError::FormulaMismatch {
                    what,
                    n,
                    formula: formula.clone(),
                    counted,
                });
            }
        }
    }
    let bound = kk_bound(&x, 3, s as u32)?;
    let gap = if bound >= actual {
        &bound - &actual
    } else {
        return Err(ExtremalError::Precondition(format!(
            "bound {bound} is below k_{s} = {actual} at n = {n}"
        )));
    };
    Ok(GapRow {
        n,
        x,
        actual,
        bound,
        gap,
    })
}

fn gap_rows(pair: CliquePair, n_min: u64, n_max: u64) -> Result<Vec<GapRow>> {
    (n_min..=n_max).into_par_iter().map(|n| gap_row(pair, n)).collect()
}

/// Rows `n_min..=n_max` of the `T(n, n-2)` table for the given pair. Rows
/// are in increasing `n`.
pub fn table_rows(pair: CliquePair, n_min: u64, n_max: u64) -> Result<Vec<GapRow>> {
    let floor = if pair == CliquePair::K3K4 { 4 } else { 6 };
    require(n_min >= floor, || format!("need n_min >= {floor}, got {n_min}"))?;
    require(n_min <= n_max, || format!("empty range {n_min}..={n_max}"))?;
    gap_rows(pair, n_min, n_max)
}

/// The triangle versus `K_5` table for `n_min..=n_max`.
pub fn triangle_k5_table(n_min: u64, n_max: u64) -> Result<Vec<GapRow>> {
    table_rows(CliquePair::K3K5, n_min, n_max)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub pair: CliquePair,
    pub rows: Vec<GapRow>,
    /// Values of `n` whose gap differs from [`CliquePair::expected_gap`].
    pub deviations: Vec<u64>,
}

impl GapReport {
    pub fn passed(&self) -> bool {
        self.deviations.is_empty()
    }
}

/// Gap rows with the expected gap pattern checked: `1` for `(3,4)` and
/// `n - 5` for `(3,5)`.
pub fn gap_report(pair: CliquePair, n_min: u64, n_max: u64) -> Result<GapReport> {
    require(n_min > 6, || {
        format!("gap patterns are stated for n > 6, got n_min = {n_min}")
    })?;
    require(n_min <= n_max, || format!("empty range {n_min}..={n_max}"))?;
    let rows = gap_rows(pair, n_min, n_max)?;
    let deviations = rows
        .iter()
        .filter(|row| row.gap != Count::from(pair.expected_gap(row.n)))
        .map(|row| row.n)
        .collect();
    Ok(GapReport { pair, rows, deviations })
}

fn k_label(pair: CliquePair) -> &'static str {
    match pair {
        CliquePair::K3K4 => "K4",
        CliquePair::K3K5 => "K5",
    }
}

/// CSV with header `n,K3,K5,bound,gap` (or `K4`).
pub fn rows_to_csv(pair: CliquePair, rows: &[GapRow]) -> String {
    let mut out = format!("n,K3,{},bound,gap\n", k_label(pair));
    for row in rows {
        writeln!(out, "{},{},{},{},{}", row.n, row.x, row.actual, row.bound, row.gap).unwrap();
    }
    out
}

/// Indented key/value tree, one block per row.
pub fn rows_to_tree(pair: CliquePair, rows: &[GapRow]) -> String {
    let mut out = format!("table:\n  pair: {pair}\n  rows:\n");
    for row in rows {
        writeln!(out, "    - n: {}", row.n).unwrap();
        writeln!(out, "      K3: {}", row.x).unwrap();
        writeln!(out, "      {}: {}", k_label(pair), row.actual).unwrap();
        writeln!(out, "      bound: {}", row.bound).unwrap();
        writeln!(out, "      gap: {}", row.gap).unwrap();
    }
    out
}
