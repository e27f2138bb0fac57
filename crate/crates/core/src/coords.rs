//! Coordinate bookkeeping for Segre–Veronese embeddings.
//!
//! A profile `P(n1,d1) x ... x P(nt,dt)` embeds the product of projective
//! spaces by all products of one degree-`di` monomial per factor. Ambient
//! coordinates are indexed by tuples of exponent vectors; the tuple is
//! linearized mixed-radix with the first factor most significant, and each
//! factor's monomials are ordered graded-lex with variable 0 heaviest.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of one factor's monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Component-wise sum (monomial product).
    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.len(), other.len());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Index of a homogeneous coordinate of the ambient space, in `[0, N]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoordIndex(pub usize);

/// Checked binomial coefficient.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

/// All exponent vectors of `n + 1` variables with total degree `d`, in
/// graded-lex order with variable 0 heaviest.
///
/// `(1, 2)` yields `(2,0), (1,1), (0,2)`.
pub fn enumerate_monomials(n: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n + 1];
    fill_monomials(&mut cur, 0, d, &mut out);
    out
}

fn fill_monomials(cur: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Exponent>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(Exponent(cur.to_vec()));
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill_monomials(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

/// Position of `exp` inside `enumerate_monomials(exp.len() - 1, exp.degree())`.
pub fn monomial_rank(exp: &Exponent) -> usize {
    let vars = exp.len();
    let mut remaining = exp.degree() as u64;
    let mut rank = 0u64;
    for (i, &e) in exp.0.iter().enumerate().take(vars.saturating_sub(1)) {
        let rest = (vars - i - 1) as u64;
        // every vector with a larger entry at position i comes first
        for v in (u64::from(e) + 1)..=remaining {
            rank += binomial(remaining - v + rest - 1, rest - 1).expect("rank fits once enumerated");
        }
        remaining -= u64::from(e);
    }
    rank as usize
}

/// One factor `P(n, d)` of a profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub n: usize,
    pub d: u32,
}

impl Factor {
    pub fn new(n: usize, d: u32) -> Self {
        Self { n, d }
    }

    pub fn segre(n: usize) -> Self {
        Self { n, d: 1 }
    }

    /// Number of degree-`d` monomials, `C(n + d, n)`.
    pub fn coord_count(&self) -> Result<u64> {
        binomial(self.n as u64 + u64::from(self.d), self.n as u64)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            write!(f, "P({})", self.n)
        } else {
            write!(f, "P({},{})", self.n, self.d)
        }
    }
}

/// Ordered list of factors defining a Segre–Veronese embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorProfile {
    factors: Vec<Factor>,
    tables: Vec<Vec<Exponent>>,
    radices: Vec<usize>,
    ambient: usize,
}

/// Largest number of ambient coordinates a profile may have; keeps the
/// per-factor monomial tables and dense vectors addressable.
pub const MAX_COORDS: u64 = 1 << 32;

impl FactorProfile {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidProfile("profile has no factors".into()));
        }
        let mut total: u64 = 1;
        let mut radices = Vec::with_capacity(factors.len());
        for (i, f) in factors.iter().enumerate() {
            if f.n == 0 || f.d == 0 {
                return Err(Error::InvalidProfile(format!(
                    "factor {i} is {f}; need n >= 1 and d >= 1"
                )));
            }
            let c = f.coord_count()?;
            total = total.checked_mul(c).ok_or(Error::Overflow("ambient dimension"))?;
            if total > MAX_COORDS {
                return Err(Error::Overflow("ambient dimension"));
            }
            radices.push(c as usize);
        }
        let tables = factors.iter().map(|f| enumerate_monomials(f.n, f.d)).collect();
        Ok(Self {
            factors,
            tables,
            radices,
            ambient: (total - 1) as usize,
        })
    }

    /// Segre profile `P(n1) x ... x P(nt)`.
    pub fn segre(dims: &[usize]) -> Result<Self> {
        Self::new(dims.iter().map(|&n| Factor::segre(n)).collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_segre(&self) -> bool {
        self.factors.iter().all(|f| f.d == 1)
    }

    /// `N = prod C(ni + di, ni) - 1`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn coord_count(&self) -> usize {
        self.ambient + 1
    }

    /// `dim X = sum ni`.
    pub fn variety_dim(&self) -> usize {
        self.factors.iter().map(|f| f.n).sum()
    }

    /// Number of affine parameters, `sum (ni + 1)`.
    pub fn param_count(&self) -> usize {
        self.factors.iter().map(|f| f.n + 1).sum()
    }

    pub fn monomials(&self, factor: usize) -> &[Exponent] {
        &self.tables[factor]
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn coord_index(&self, monomials: &[Exponent]) -> Result<CoordIndex> {
        if monomials.len() != self.factors.len() {
            return Err(Error::FactorCountMismatch {
                expected: self.factors.len(),
                got: monomials.len(),
            });
        }
        let mut idx = 0usize;
        for (i, (f, e)) in self.factors.iter().zip(monomials).enumerate() {
            if e.len() != f.n + 1 {
                return Err(Error::InvalidProfile(format!(
                    "factor {i} needs {} exponents, got {}",
                    f.n + 1,
                    e.len()
                )));
            }
            if e.degree() != f.d {
                return Err(Error::DegreeMismatch {
                    factor: i,
                    expected: f.d,
                    got: e.degree(),
                });
            }
            idx = idx * self.radices[i] + monomial_rank(e);
        }
        Ok(CoordIndex(idx))
    }

    /// Per-factor positions in the monomial tables, first factor first.
    pub fn digits(&self, index: CoordIndex) -> Result<Vec<usize>> {
        if index.0 > self.ambient {
            return Err(Error::IndexOutOfRange {
                index: index.0,
                ambient: self.ambient,
            });
        }
        let mut rest = index.0;
        let mut digits = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            digits[i] = rest % self.radices[i];
            rest /= self.radices[i];
        }
        Ok(digits)
    }

    pub fn coord_monomials(&self, index: CoordIndex) -> Result<Vec<Exponent>> {
        Ok(self
            .digits(index)?
            .into_iter()
            .enumerate()
            .map(|(i, k)| self.tables[i][k].clone())
            .collect())
    }

    /// Variable name in the polynomial text format, e.g. `y[3,0;0,1]`.
    pub fn coord_name(&self, index: CoordIndex) -> Result<String> {
        let blocks: Vec<String> = self
            .coord_monomials(index)?
            .iter()
            .map(|e| e.to_string())
            .collect();
        Ok(format!("y[{}]", blocks.join(";")))
    }
}

impl fmt::Display for FactorProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for FactorProfile {
    type Err = Error;

    /// Parses `P(n1,d1)xP(n2)x...`; a bare count `xK` repeats the preceding
    /// factor so that it appears `K` times in total (`P(1)x5`).
    fn from_str(input: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::ProfileSyntax {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(syntax("empty profile"));
        }
        let mut factors: Vec<Factor> = Vec::new();
        let mut rest = compact.as_str();
        loop {
            if let Some(body) = rest.strip_prefix("P(") {
                let close = body.find(')').ok_or_else(|| syntax("missing ')'"))?;
                let nums: Vec<&str> = body[..close].split(',').collect();
                let parse = |s: &str| s.parse::<u64>().map_err(|_| syntax("expected integer"));
                let factor = match nums.as_slice() {
                    [n] => Factor::segre(parse(n)? as usize),
                    [n, d] => {
                        let d = u32::try_from(parse(d)?).map_err(|_| syntax("degree too large"))?;
                        Factor::new(parse(n)? as usize, d)
                    }
                    _ => return Err(syntax("expected P(n) or P(n,d)")),
                };
                factors.push(factor);
                rest = &body[close + 1..];
            } else {
                let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                if end == 0 {
                    return Err(syntax("expected P(...) or a repeat count"));
                }
                let count: usize = rest[..end].parse().map_err(|_| syntax("bad repeat count"))?;
                let last = *factors.last().ok_or_else(|| syntax("repeat count before any factor"))?;
                if count == 0 {
                    return Err(syntax("repeat count must be positive"));
                }
                factors.extend(std::iter::repeat_n(last, count - 1));
                rest = &rest[end..];
            }
            if rest.is_empty() {
                break;
            }
            rest = rest
                .strip_prefix('x')
                .or_else(|| rest.strip_prefix('X'))
                .or_else(|| rest.strip_prefix('×'))
                .ok_or_else(|| syntax("expected 'x' between factors"))?;
        }
        FactorProfile::new(factors)
    }
}

impl Serialize for FactorProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FactorProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> Exponent {
        Exponent(v.to_vec())
    }

    #[test]
    fn monomial_lists() {
        assert_eq!(enumerate_monomials(1, 2), vec![e(&[2, 0]), e(&[1, 1]), e(&[0, 2])]);
        assert_eq!(enumerate_monomials(2, 3).len(), 10);
        assert_eq!(
            enumerate_monomials(2, 1),
            vec![e(&[1, 0, 0]), e(&[0, 1, 0]), e(&[0, 0, 1])]
        );
        assert_eq!(enumerate_monomials(3, 0), vec![e(&[0, 0, 0, 0])]);
        assert_eq!(enumerate_monomials(0, 4), vec![e(&[4])]);
    }

    #[test]
    fn quadric_order_matches_catalecticant_columns() {
        let q = enumerate_monomials(2, 2);
        let want = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
        for (got, w) in q.iter().zip(want) {
            assert_eq!(got.entries(), &w);
        }
    }

    #[test]
    fn monomials_strictly_decreasing_and_counted() {
        for n in 0..5 {
            for d in 0..6u32 {
                let list = enumerate_monomials(n, d);
                assert_eq!(list.len() as u64, binomial((n as u64) + u64::from(d), n as u64).unwrap());
                for w in list.windows(2) {
                    assert!(w[0] > w[1]);
                }
                for (i, m) in list.iter().enumerate() {
                    assert_eq!(monomial_rank(m), i);
                }
            }
        }
    }

    #[test]
    fn ambient_dimensions() {
        for n in 1..6 {
            let p = FactorProfile::segre(&[1, 1, n]).unwrap();
            assert_eq!(p.ambient_dim(), 4 * n + 3);
        }
        for k in 1..4u32 {
            for m in 1..5usize {
                let p = FactorProfile::new(vec![Factor::new(1, 2 * k), Factor::new(m, 2)]).unwrap();
                let c = (m + 2) * (m + 1) / 2;
                assert_eq!(p.ambient_dim(), (2 * k as usize + 1) * c - 1);
            }
        }
        assert_eq!(FactorProfile::new(vec![Factor::new(2, 3)]).unwrap().ambient_dim(), 9);
    }

    #[test]
    fn overflow_is_reported() {
        let err = FactorProfile::new(vec![Factor::new(60, 60), Factor::new(60, 60)]).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
        assert!(matches!(binomial(200, 100), Err(Error::Overflow(_))));
    }

    #[test]
    fn invalid_factors() {
        assert!(FactorProfile::new(vec![Factor::new(0, 1)]).is_err());
        assert!(FactorProfile::new(vec![Factor::new(2, 0)]).is_err());
        assert!(FactorProfile::new(vec![]).is_err());
    }

    #[test]
    fn coordinate_counts() {
        let p: FactorProfile = "P(1)x5".parse().unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.coord_count(), 32);
        let first: Vec<Exponent> = (0..5).map(|_| e(&[1, 0])).collect();
        assert_eq!(p.coord_index(&first).unwrap(), CoordIndex(0));
        let p: FactorProfile = "P(2,2)xP(2,2)".parse().unwrap();
        assert_eq!(p.coord_count(), 36);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let p: FactorProfile = "P(1,2)xP(2)".parse().unwrap();
        let err = p.coord_index(&[e(&[1, 0]), e(&[1, 0, 0])]).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { factor: 0, expected: 2, got: 1 }));
        assert!(p.coord_index(&[e(&[2, 0])]).is_err());
        assert!(p.coord_monomials(CoordIndex(9)).is_err());
    }

    #[test]
    fn exhaustive_bijection_small_profiles() {
        for s in ["P(1)xP(1)xP(3)", "P(2,3)", "P(1,2)xP(1,2)", "P(2,2)xP(1)xP(1,3)"] {
            let p: FactorProfile = s.parse().unwrap();
            for i in 0..p.coord_count() {
                let m = p.coord_monomials(CoordIndex(i)).unwrap();
                assert_eq!(p.coord_index(&m).unwrap(), CoordIndex(i));
            }
        }
    }

    #[test]
    fn profile_syntax() {
        let p: FactorProfile = "P(1)xP(1)xP(5)".parse().unwrap();
        assert_eq!(p.to_string(), "P(1)xP(1)xP(5)");
        let p: FactorProfile = " P(2,2) x P(2,2) ".parse().unwrap();
        assert_eq!(p.to_string(), "P(2,2)xP(2,2)");
        let p: FactorProfile = "P(1,1)x2xP(3)".parse().unwrap();
        assert_eq!(p.to_string(), "P(1)xP(1)xP(3)");
        for bad in ["", "Q(1)", "P(1", "P(1)xx", "P(a)", "3", "P(1,2,3)", "P(1)x0"] {
            assert!(bad.parse::<FactorProfile>().is_err(), "{bad}");
        }
    }

    #[test]
    fn coord_names() {
        let p: FactorProfile = "P(1,3)xP(1,1)".parse().unwrap();
        let idx = p.coord_index(&[e(&[3, 0]), e(&[0, 1])]).unwrap();
        assert_eq!(p.coord_name(idx).unwrap(), "y[3,0;0,1]");
    }
}
