//! Generalized flattenings and their minors.
//!
//! A split assigns each factor `P(n_i, d_i)` a row-side degree `a_i`; rows
//! are tuples of degree-`a_i` monomials, columns tuples of degree
//! `d_i - a_i` monomials, and the entry is the coordinate of the product.
//! For Segre factors this is the partition flattening of the coordinate
//! tensor; for a single factor it is a catalecticant; in general it is the
//! Kronecker product of the per-factor catalecticants.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coords::{binomial, enumerate_monomials, CoordIndex, Exponent, Factor, FactorProfile};
use crate::error::{Error, Result};
use crate::poly::SparsePoly;

/// Row-side degree per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Split(pub Vec<u32>);

impl Split {
    pub fn complement(&self, profile: &FactorProfile) -> Split {
        Split(
            self.0
                .iter()
                .zip(profile.factors())
                .map(|(a, f)| f.d - a)
                .collect(),
        )
    }

    pub fn is_degenerate(&self, profile: &FactorProfile) -> bool {
        self.0.iter().all(|&a| a == 0)
            || self.0.iter().zip(profile.factors()).all(|(&a, f)| a == f.d)
    }

    pub fn validate(&self, profile: &FactorProfile) -> Result<()> {
        if self.0.len() != profile.len() {
            return Err(Error::InvalidSplit(format!(
                "{} entries for {} factors",
                self.0.len(),
                profile.len()
            )));
        }
        for (i, (&a, f)) in self.0.iter().zip(profile.factors()).enumerate() {
            if a > f.d {
                return Err(Error::InvalidSplit(format!(
                    "factor {i} has degree {} but split asks for {a}",
                    f.d
                )));
            }
        }
        Ok(())
    }

    /// `(rows, cols)` of the flattening this split produces.
    pub fn shape(&self, profile: &FactorProfile) -> Result<(usize, usize)> {
        let mut rows = 1u64;
        let mut cols = 1u64;
        for (&a, f) in self.0.iter().zip(profile.factors()) {
            let n = f.n as u64;
            rows = rows
                .checked_mul(binomial(n + u64::from(a), n)?)
                .ok_or(Error::Overflow("flattening shape"))?;
            cols = cols
                .checked_mul(binomial(n + u64::from(f.d - a), n)?)
                .ok_or(Error::Overflow("flattening shape"))?;
        }
        Ok((rows as usize, cols as usize))
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl std::str::FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidSplit(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Split)
    }
}

/// Dense matrix whose entries are ambient coordinate indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<CoordIndex>,
}

impl CoordMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<CoordIndex>) -> Self {
        assert_eq!(rows * cols, entries.len());
        Self { rows, cols, entries }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entry(&self, r: usize, c: usize) -> CoordIndex {
        self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[CoordIndex] {
        &self.entries
    }

    pub fn transpose(&self) -> CoordMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.entry(r, c));
            }
        }
        CoordMatrix::new(self.cols, self.rows, entries)
    }

    /// Copy without column `col` (0-based).
    pub fn without_column(&self, col: usize) -> CoordMatrix {
        assert!(col < self.cols);
        let entries = (0..self.rows)
            .flat_map(|r| (0..self.cols).filter(move |&c| c != col).map(move |c| (r, c)))
            .map(|(r, c)| self.entry(r, c))
            .collect();
        CoordMatrix::new(self.rows, self.cols - 1, entries)
    }

    /// Distinct coordinates appearing in the matrix.
    pub fn support(&self) -> BTreeSet<CoordIndex> {
        self.entries.iter().copied().collect()
    }

    /// Determinantal expansion of the minor on `rows x cols`, with equal
    /// coordinate monomials collected into integer coefficients.
    pub fn minor_poly(&self, rows: &[usize], cols: &[usize]) -> Result<SparsePoly> {
        if rows.len() != cols.len() {
            return Err(Error::MinorShape {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        if rows.is_empty() {
            return Err(Error::MinorTooLarge {
                k: 0,
                rows: self.rows,
                cols: self.cols,
            });
        }
        for &r in rows {
            if r >= self.rows {
                return Err(Error::OutOfRange(format!("row {r} of {}", self.rows)));
            }
        }
        for &c in cols {
            if c >= self.cols {
                return Err(Error::OutOfRange(format!("column {c} of {}", self.cols)));
            }
        }
        let k = rows.len();
        let mut poly = SparsePoly::zero(k);
        let mut used = vec![false; k];
        let mut mono = Vec::with_capacity(k);
        expand(self, rows, cols, 0, &mut used, &mut mono, 1, &mut poly);
        Ok(poly)
    }

    /// Streams the `k x k` minors in colex order of (row set, column set),
    /// at most `cap` of them.
    pub fn emit_minors(&self, k: usize, cap: usize) -> Result<MinorStream<'_>> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::MinorTooLarge {
                k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let total = u128::from(binomial(self.rows as u64, k as u64)?)
            * u128::from(binomial(self.cols as u64, k as u64)?);
        Ok(MinorStream {
            matrix: self,
            rows: Some((0..k).collect()),
            cols: (0..k).collect(),
            remaining: cap,
            total,
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn expand(
    m: &CoordMatrix,
    rows: &[usize],
    cols: &[usize],
    depth: usize,
    used: &mut [bool],
    mono: &mut Vec<CoordIndex>,
    sign: i64,
    out: &mut SparsePoly,
) {
    if depth == rows.len() {
        out.add_term(mono.clone(), sign);
        return;
    }
    // sign flips once per unused column skipped to the left of the choice
    let mut parity = 1;
    for j in 0..cols.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        mono.push(m.entry(rows[depth], cols[j]));
        expand(m, rows, cols, depth + 1, used, mono, sign * parity, out);
        mono.pop();
        used[j] = false;
        parity = -parity;
    }
}

/// Advances a k-subset of `0..n` in colex order; false when exhausted.
pub fn next_colex(set: &mut [usize], n: usize) -> bool {
    let k = set.len();
    for i in 0..k {
        let limit = if i + 1 < k { set[i + 1] } else { n };
        if set[i] + 1 < limit {
            set[i] += 1;
            for (j, v) in set.iter_mut().enumerate().take(i) {
                *v = j;
            }
            return true;
        }
    }
    false
}

pub struct MinorStream<'a> {
    matrix: &'a CoordMatrix,
    rows: Option<Vec<usize>>,
    cols: Vec<usize>,
    remaining: usize,
    total: u128,
}

impl MinorStream<'_> {
    /// Exact number of minors of this size, regardless of the cap.
    pub fn total(&self) -> u128 {
        self.total
    }
}

impl Iterator for MinorStream<'_> {
    type Item = (Vec<usize>, Vec<usize>, SparsePoly);

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        let rows = self.rows.as_mut()?;
        let r = rows.clone();
        let c = self.cols.clone();
        // column set varies fastest; row set is the major key
        if !next_colex(&mut self.cols, self.matrix.cols) {
            let k = self.cols.len();
            self.cols = (0..k).collect();
            if !next_colex(rows, self.matrix.rows) {
                self.rows = None;
            }
        }
        self.remaining -= 1;
        let poly = self.matrix.minor_poly(&r, &c).expect("indices in range");
        Some((r, c, poly))
    }
}

/// A flattening with its row and column labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flattening {
    profile: FactorProfile,
    split: Split,
    rows: Vec<Vec<Exponent>>,
    cols: Vec<Vec<Exponent>>,
    matrix: CoordMatrix,
}

/// Tuples of per-factor monomials of the given degrees, first factor most
/// significant.
fn monomial_tuples(factors: &[Factor], degrees: &[u32]) -> Vec<Vec<Exponent>> {
    let mut tuples: Vec<Vec<Exponent>> = vec![Vec::new()];
    for (f, &deg) in factors.iter().zip(degrees) {
        let monos = enumerate_monomials(f.n, deg);
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                monos.iter().map(move |m| {
                    let mut next = t.clone();
                    next.push(m.clone());
                    next
                })
            })
            .collect();
    }
    tuples
}

impl Flattening {
    /// Builds the flattening for `split`; degenerate splits (everything on
    /// one side) are rejected unless `allow_degenerate` is set.
    pub fn build(profile: &FactorProfile, split: &Split, allow_degenerate: bool) -> Result<Self> {
        split.validate(profile)?;
        if !allow_degenerate && split.is_degenerate(profile) {
            return Err(Error::InvalidSplit(format!("split {split} is degenerate")));
        }
        let (r, c) = split.shape(profile)?;
        if r.checked_mul(c).is_none_or(|n| n as u64 > crate::coords::MAX_COORDS) {
            return Err(Error::Overflow("flattening size"));
        }
        let col_degrees: Vec<u32> = split.complement(profile).0;
        let rows = monomial_tuples(profile.factors(), &split.0);
        let cols = monomial_tuples(profile.factors(), &col_degrees);
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for row in &rows {
            for col in &cols {
                let product: Vec<Exponent> = row.iter().zip(col).map(|(a, b)| a.add(b)).collect();
                entries.push(profile.coord_index(&product)?);
            }
        }
        Ok(Self {
            profile: profile.clone(),
            split: split.clone(),
            matrix: CoordMatrix::new(rows.len(), cols.len(), entries),
            rows,
            cols,
        })
    }

    pub fn profile(&self) -> &FactorProfile {
        &self.profile
    }

    pub fn split(&self) -> &Split {
        &self.split
    }

    pub fn row_labels(&self) -> &[Vec<Exponent>] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[Vec<Exponent>] {
        &self.cols
    }

    pub fn matrix(&self) -> &CoordMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> (usize, usize) {
        self.matrix.shape()
    }

    pub fn entry(&self, r: usize, c: usize) -> CoordIndex {
        self.matrix.entry(r, c)
    }

    pub fn minor_poly(&self, rows: &[usize], cols: &[usize]) -> Result<SparsePoly> {
        self.matrix.minor_poly(rows, cols)
    }

    pub fn emit_minors(&self, k: usize, cap: usize) -> Result<MinorStream<'_>> {
        self.matrix.emit_minors(k, cap)
    }

    /// Human-readable matrix of coordinate names, one row per line.
    pub fn render(&self) -> String {
        let (r, c) = self.shape();
        let names: Vec<Vec<String>> = (0..r)
            .map(|i| {
                (0..c)
                    .map(|j| self.profile.coord_name(self.entry(i, j)).expect("valid index"))
                    .collect()
            })
            .collect();
        let width = names.iter().flatten().map(String::len).max().unwrap_or(0);
        names
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| format!("{s:<width$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Catalecticant of one factor `P(n, d)`: degree-`a` monomials against
/// degree-`(d - a)` monomials.
pub fn factor_catalecticant(n: usize, d: u32, a: u32) -> Result<Flattening> {
    let profile = FactorProfile::new(vec![Factor::new(n, d)])?;
    Flattening::build(&profile, &Split(vec![a]), true)
}

/// A proper split with its matrix shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitInfo {
    pub split: Split,
    pub rows: usize,
    pub cols: usize,
}

/// All proper splits up to the global transpose. Each class is represented
/// by the member with fewer rows (lexicographically smaller on ties).
pub fn enumerate_splits(profile: &FactorProfile) -> Result<Vec<SplitInfo>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; profile.len()];
    loop {
        let split = Split(current.clone());
        if !split.is_degenerate(profile) {
            let comp = split.complement(profile);
            let (r, c) = split.shape(profile)?;
            if (r, &split) <= (c, &comp) {
                out.push(SplitInfo { split, rows: r, cols: c });
            }
        }
        // odometer over [0, d_i]
        let mut i = profile.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if current[i] < profile.factors()[i].d {
                current[i] += 1;
                break;
            }
            current[i] = 0;
        }
    }
}

/// Splits grouped by shape, in order of first appearance.
pub fn split_census(splits: &[SplitInfo]) -> Vec<((usize, usize), usize)> {
    let mut census: Vec<((usize, usize), usize)> = Vec::new();
    for s in splits {
        match census.iter_mut().find(|(shape, _)| *shape == (s.rows, s.cols)) {
            Some((_, n)) => *n += 1,
            None => census.push(((s.rows, s.cols), 1)),
        }
    }
    census
}
