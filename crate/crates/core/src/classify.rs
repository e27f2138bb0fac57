//! Closed-form dimension, defect and degree formulas for secant varieties
//! of Segre and Segre–Veronese varieties.
//!
//! Defects are always computed definitionally, as the expected dimension
//! `min{N, s dim X + s - 1}` minus an actual dimension. Printed closed forms
//! are carried alongside as annotations and any disagreement is flagged.

use serde::{Deserialize, Serialize};

use crate::coords::{binomial, FactorProfile};
use crate::error::{Error, Result};

pub const FLAG_AMBIENT_BOUND: &str = "ambient-bound";
pub const FLAG_FORMULA_MISMATCH: &str = "formula-defect-mismatch";
pub const FLAG_PRINTED_MISMATCH: &str = "printed-defect-mismatch";
pub const FLAG_ORACLE_MISMATCH: &str = "formula-oracle-mismatch";
pub const FLAG_HYPOTHESIS: &str = "hypothesis-violated";
pub const FLAG_NOT_APPLICABLE: &str = "not-applicable";

/// `min{N, s n + s - 1}` for a variety of dimension `dim` in `P^ambient`.
pub fn expected_dim(ambient: usize, dim: usize, s: usize) -> usize {
    assert!(s >= 1, "secant index must be at least 1");
    ambient.min(s * dim + s - 1)
}

pub fn expected_secant_dim(profile: &FactorProfile, s: usize) -> usize {
    expected_dim(profile.ambient_dim(), profile.variety_dim(), s)
}

/// True when the ambient dimension, not the parameter count, is the
/// binding term of the expected dimension.
pub fn ambient_binds(ambient: usize, dim: usize, s: usize) -> bool {
    s * dim + s - 1 > ambient
}

/// Dimension of `σ_s` of the Segre `P^a x P^b`: matrices of rank at most `s`.
pub fn two_factor_secant_dim(a: usize, b: usize, s: usize) -> usize {
    assert!(s >= 1, "secant index must be at least 1");
    if s > a.min(b) {
        (a + 1) * (b + 1) - 1
    } else {
        s * (a + b + 2 - s) - 1
    }
}

/// Codimension of the rank-`<= s` locus in `P^{(a+1)(b+1)-1}`.
pub fn two_factor_codim(a: usize, b: usize, s: usize) -> usize {
    if s > a.min(b) {
        0
    } else {
        (a + 1 - s) * (b + 1 - s)
    }
}

/// `N - sum n_i + 1` for the Segre `P^{n_1} x ... x P^{n_t}`.
pub fn critical_s(n_list: &[usize]) -> usize {
    let ambient: usize = n_list.iter().map(|n| n + 1).product::<usize>() - 1;
    ambient - n_list.iter().sum::<usize>() + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Thm24Case {
    /// Expected dimension, secant differs from the two-factor one.
    One,
    /// Equal to the two-factor secant, expected dimension.
    Two,
    /// Equal to the two-factor secant, defective.
    Three,
    /// Fills the ambient space.
    Four,
    NotApplicable,
}

impl Thm24Case {
    pub fn label(&self) -> Option<u8> {
        match self {
            Thm24Case::One => Some(1),
            Thm24Case::Two => Some(2),
            Thm24Case::Three => Some(3),
            Thm24Case::Four => Some(4),
            Thm24Case::NotApplicable => None,
        }
    }
}

/// Classification of `σ_s` for `P^{n_1} x ... x P^{n_t} x P^n` against the
/// grouping `P^N x P^n`, `N = prod(n_i + 1) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnbalancedReport {
    pub case: Thm24Case,
    /// Ambient dimension `M = (N + 1)(n + 1) - 1`.
    pub ambient: usize,
    pub expected_dim: usize,
    /// Dimension predicted by the classification.
    pub predicted_dim: usize,
    pub equals_two_factor: bool,
    pub definitional_defect: usize,
    pub closed_form_defect: Option<i64>,
    pub hypothesis_holds: bool,
    pub flags: Vec<String>,
}

pub fn unbalanced_classify(n_list: &[usize], n: usize, s: usize) -> UnbalancedReport {
    let big_n: usize = n_list.iter().map(|k| k + 1).product::<usize>() - 1;
    let sum: usize = n_list.iter().sum();
    let crit = big_n - sum + 1;
    let ambient = (big_n + 1) * (n + 1) - 1;
    let dim = sum + n;
    let expected = expected_dim(ambient, dim, s.max(1));
    let hypothesis_holds = n >= crit;
    let mut flags = Vec::new();
    if !hypothesis_holds {
        flags.push(FLAG_HYPOTHESIS.to_string());
    }
    let case = if s < 2 {
        flags.push(FLAG_NOT_APPLICABLE.to_string());
        Thm24Case::NotApplicable
    } else if s < crit {
        Thm24Case::One
    } else if s == crit {
        Thm24Case::Two
    } else if s <= n.min(big_n) {
        Thm24Case::Three
    } else {
        Thm24Case::Four
    };
    let two_factor = two_factor_secant_dim(big_n, n, s.max(1));
    let (predicted_dim, equals_two_factor) = match case {
        Thm24Case::One | Thm24Case::NotApplicable => (expected, false),
        _ => (two_factor, true),
    };
    let definitional_defect = expected.saturating_sub(predicted_dim);
    let closed_form_defect = match case {
        Thm24Case::Three => {
            let s = s as i64;
            Some(s * s - s * crit as i64)
        }
        Thm24Case::One | Thm24Case::Two | Thm24Case::Four => Some(0),
        Thm24Case::NotApplicable => None,
    };
    if matches!(case, Thm24Case::Three) && ambient_binds(ambient, dim, s) {
        flags.push(FLAG_AMBIENT_BOUND.to_string());
    }
    if let Some(c) = closed_form_defect {
        if c != definitional_defect as i64 {
            flags.push(FLAG_FORMULA_MISMATCH.to_string());
        }
    }
    UnbalancedReport {
        case,
        ambient,
        expected_dim: expected,
        predicted_dim,
        equals_two_factor,
        definitional_defect,
        closed_form_defect,
        hypothesis_holds,
        flags,
    }
}

/// Splits a Segre profile into `(n_list, n)` with the largest factor as
/// `P^n`, when it has at least two factors.
pub fn unbalanced_parts(profile: &FactorProfile) -> Option<(Vec<usize>, usize)> {
    if !profile.is_segre() || profile.len() < 2 {
        return None;
    }
    let mut dims: Vec<usize> = profile.factors().iter().map(|f| f.n).collect();
    let (pos, _) = dims.iter().enumerate().max_by_key(|&(i, d)| (*d, i))?;
    let n = dims.remove(pos);
    Some((dims, n))
}

/// Per-`s` record of expected against observed secant dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantReport {
    pub s: usize,
    pub ambient: usize,
    pub expected_dim: usize,
    pub oracle_dim: Option<usize>,
    pub defect: Option<usize>,
    pub thm24_case: Option<u8>,
    pub predicted_dim: Option<usize>,
    pub closed_form_defect: Option<i64>,
    pub printed_defect: Option<i64>,
    pub flags: Vec<String>,
}

impl SecantReport {
    /// True when a closed form disagrees with the oracle or with the
    /// definitional defect.
    pub fn has_mismatch(&self) -> bool {
        self.flags.iter().any(|f| {
            f == FLAG_ORACLE_MISMATCH || f == FLAG_FORMULA_MISMATCH || f == FLAG_PRINTED_MISMATCH
        })
    }
}

/// `P^1 x P^m x P^n` with `m <= n`, as `(m, n)`.
fn triple_parts(profile: &FactorProfile) -> Option<(usize, usize)> {
    if !profile.is_segre() || profile.len() != 3 {
        return None;
    }
    let mut dims: Vec<usize> = profile.factors().iter().map(|f| f.n).collect();
    dims.sort_unstable();
    (dims[0] == 1).then_some((dims[1], dims[2]))
}

/// Builds the report for `σ_s(X)`, attaching the unbalanced classification
/// when the theorem's hypothesis holds and the `P^1 x P^m x P^n` defect
/// formulas when the profile has that shape.
pub fn secant_report(profile: &FactorProfile, s: usize, oracle_dim: Option<usize>) -> Result<SecantReport> {
    if s == 0 {
        return Err(Error::OutOfRange("secant index must be at least 1".into()));
    }
    let ambient = profile.ambient_dim();
    let dim = profile.variety_dim();
    let expected = expected_dim(ambient, dim, s);
    let mut flags = Vec::new();
    if ambient_binds(ambient, dim, s) {
        flags.push(FLAG_AMBIENT_BOUND.to_string());
    }
    let mut report = SecantReport {
        s,
        ambient,
        expected_dim: expected,
        oracle_dim,
        defect: oracle_dim.map(|o| expected.saturating_sub(o)),
        thm24_case: None,
        predicted_dim: None,
        closed_form_defect: None,
        printed_defect: None,
        flags: Vec::new(),
    };
    if let Some((n_list, n)) = unbalanced_parts(profile) {
        let u = unbalanced_classify(&n_list, n, s);
        if u.hypothesis_holds && u.case != Thm24Case::NotApplicable {
            report.thm24_case = u.case.label();
            report.predicted_dim = Some(u.predicted_dim);
            report.closed_form_defect = u.closed_form_defect;
            flags.extend(u.flags.into_iter().filter(|f| f != FLAG_AMBIENT_BOUND));
            if oracle_dim.is_some_and(|o| o != u.predicted_dim) {
                flags.push(FLAG_ORACLE_MISMATCH.to_string());
            }
        }
    }
    if let Some((m, n)) = triple_parts(profile) {
        if s >= 2 {
            let t = corollary_2_6(m, n, s)?;
            report.printed_defect = t.printed_defect;
            if let Some(d) = report.defect {
                if t.printed_defect.is_some_and(|p| p != d as i64)
                    && !flags.iter().any(|f| f == FLAG_PRINTED_MISMATCH)
                {
                    flags.push(FLAG_PRINTED_MISMATCH.to_string());
                }
            } else {
                flags.extend(t.flags.into_iter().filter(|f| f == FLAG_PRINTED_MISMATCH));
            }
        }
    }
    if let Some(o) = oracle_dim {
        if o + 1 == ambient {
            flags.push("hypersurface".to_string());
        } else if o == ambient {
            flags.push("fills".to_string());
        }
        if o < expected {
            flags.push("defective".to_string());
        }
    }
    flags.dedup();
    report.flags = flags;
    Ok(report)
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Degree of `σ_s` of the Segre `P^a x P^b` for `1 <= s <= min(a, b)`:
/// `prod_{i=0}^{a-s} C(b+1+i, s) / C(s+i, s)` with `a <= b`.
pub fn giambelli_degree(a: usize, b: usize, s: usize) -> Result<u128> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    if s == 0 || s > a {
        return Err(Error::OutOfRange(format!(
            "secant index {s} must lie in [1, {a}] for P^{a} x P^{b}"
        )));
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..=(a - s) {
        let top = u128::from(binomial((b + 1 + i) as u64, s as u64)?);
        let bottom = u128::from(binomial((s + i) as u64, s as u64)?);
        num = num.checked_mul(top).ok_or(Error::Overflow("degree"))?;
        den = den.checked_mul(bottom).ok_or(Error::Overflow("degree"))?;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    if den != 1 {
        return Err(Error::OutOfRange(format!(
            "degree product did not reduce to an integer ({num}/{den})"
        )));
    }
    Ok(num)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Expected,
    Defective,
    Fills,
}

/// Classification of `σ_s` of the Segre `P^1 x P^m x P^n`, `m <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReport {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    /// `i` (n = m), `ii` (n = m + 1) or `iii` (n > m + 1).
    pub regime: String,
    pub verdict: Verdict,
    pub expected_dim: usize,
    pub actual_dim: usize,
    pub definitional_defect: usize,
    /// `s^2 - s(m + 2)` inside the printed defective range.
    pub printed_defect: Option<i64>,
    /// `s^2 - s(m + 1)` inside the printed defective range.
    pub theorem_defect: Option<i64>,
    pub flags: Vec<String>,
}

pub fn corollary_2_6(m: usize, n: usize, s: usize) -> Result<TripleReport> {
    if m == 0 || m > n || s < 2 {
        return Err(Error::OutOfRange(format!("need 1 <= m <= n and s >= 2, got m={m}, n={n}, s={s}")));
    }
    let ambient = 2 * (m + 1) * (n + 1) - 1;
    let dim = 1 + m + n;
    let expected = expected_dim(ambient, dim, s);
    let regime = if n == m {
        "i"
    } else if n == m + 1 {
        "ii"
    } else {
        "iii"
    };
    // grouping P^1 x P^m -> P^{2m+1}; for n >= m + 1 the unbalanced
    // classification applies, and for n = m every secant is non-defective
    let actual = if n > m {
        unbalanced_classify(&[1, m], n, s).predicted_dim
    } else {
        expected
    };
    let in_range = regime == "iii" && s >= m + 2 && s <= (2 * m + 1).min(n);
    let verdict = if regime == "iii" && s > (2 * m + 1).min(n) {
        Verdict::Fills
    } else if in_range {
        Verdict::Defective
    } else if expected == ambient && actual == ambient {
        Verdict::Fills
    } else {
        Verdict::Expected
    };
    let definitional = expected - actual;
    let si = s as i64;
    let printed = in_range.then(|| si * si - si * (m as i64 + 2));
    let theorem = in_range.then(|| si * si - si * (m as i64 + 1));
    let mut flags = Vec::new();
    if let Some(p) = printed {
        if p != definitional as i64 {
            flags.push(FLAG_PRINTED_MISMATCH.to_string());
        }
    }
    if let Some(t) = theorem {
        if t != definitional as i64 {
            flags.push(FLAG_FORMULA_MISMATCH.to_string());
        }
    }
    if in_range && ambient_binds(ambient, dim, s) {
        flags.push(FLAG_AMBIENT_BOUND.to_string());
    }
    Ok(TripleReport {
        m,
        n,
        s,
        regime: regime.to_string(),
        verdict,
        expected_dim: expected,
        actual_dim: actual,
        definitional_defect: definitional,
        printed_defect: printed,
        theorem_defect: theorem,
        flags,
    })
}

/// Expected dimension of the Grassmann secant `Sec_{k,s-1}` of an
/// `n`-dimensional variety in `P^N`:
/// `min{ s n + (k+1)(s-k-1), (k+1)(N-k) }`.
pub fn grassmann_expected_dim(n: usize, ambient: usize, k: usize, s: usize) -> Result<usize> {
    if s == 0 || k > s - 1 || s - 1 > ambient.saturating_sub(1) || ambient == 0 {
        return Err(Error::OutOfRange(format!(
            "need 0 <= k <= s-1 <= N-1, got k={k}, s={s}, N={ambient}"
        )));
    }
    Ok((s * n + (k + 1) * (s - k - 1)).min((k + 1) * (ambient - k)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannReport {
    pub k: usize,
    pub s: usize,
    pub expected_dim: Option<usize>,
    pub defective: bool,
    /// `s^2 - s(m + 2)` when defective.
    pub closed_form_defect: Option<i64>,
    /// `s^2 - s(m + 1)` when defective.
    pub theorem_defect: Option<i64>,
    /// Defect of `σ_s(P^1 x P^n x P^m)`, which equals the Grassmann defect.
    pub segre_defect: usize,
    pub flags: Vec<String>,
}

/// `Sec_{m,s-1}` of the Segre `X_n = P^1 x P^n`.
pub fn grassmann_classify(m: usize, n: usize, s: usize) -> Result<GrassmannReport> {
    if m == 0 || n == 0 || s == 0 {
        return Err(Error::OutOfRange("m, n and s must be positive".into()));
    }
    let mut flags = Vec::new();
    let expected = match grassmann_expected_dim(n + 1, 2 * n + 1, m, s) {
        Ok(e) => Some(e),
        Err(_) => {
            flags.push(FLAG_NOT_APPLICABLE.to_string());
            None
        }
    };
    let defective = n > m + 1 && s >= m + 2 && s <= (2 * m + 1).min(n);
    let si = s as i64;
    let printed = defective.then(|| si * si - si * (m as i64 + 2));
    let theorem = defective.then(|| si * si - si * (m as i64 + 1));
    // P^1 x P^n x P^m, grouped as P^{2n+1} x P^m or P^{2m+1} x P^n
    let (small, big) = if m <= n { (m, n) } else { (n, m) };
    let segre_defect = if s >= 2 && big > small {
        unbalanced_classify(&[1, small], big, s).definitional_defect
    } else {
        0
    };
    if let Some(p) = printed {
        if p != segre_defect as i64 {
            flags.push(FLAG_PRINTED_MISMATCH.to_string());
        }
    }
    if let Some(t) = theorem {
        if t != segre_defect as i64 {
            flags.push(FLAG_FORMULA_MISMATCH.to_string());
        }
    }
    Ok(GrassmannReport {
        k: m,
        s,
        expected_dim: expected,
        defective,
        closed_form_defect: printed,
        theorem_defect: theorem,
        segre_defect,
        flags,
    })
}

/// Grassmann defect of `Sec_{n_i, s-1}` of the Segre obtained by dropping
/// factor `i` of `n_list` (keeping the large factor `P^n`), as a closed form
/// `s^2 - s(N - sum n_j + 1)` and definitionally through `σ_s` of the full
/// product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedFactorReport {
    pub s: usize,
    pub in_range: bool,
    pub closed_form_defect: Option<i64>,
    pub definitional_defect: usize,
    pub flags: Vec<String>,
}

pub fn dropped_factor_defect(n_list: &[usize], n: usize, i: usize, s: usize) -> Result<DroppedFactorReport> {
    if i >= n_list.len() || s < 2 {
        return Err(Error::OutOfRange(format!("factor {i} of {} with s={s}", n_list.len())));
    }
    let big_n: usize = n_list.iter().map(|k| k + 1).product::<usize>() - 1;
    let crit = critical_s(n_list);
    let in_range = s >= crit && s <= n.min(big_n) && s > n_list[i];
    let report = unbalanced_classify(n_list, n, s);
    let si = s as i64;
    let closed = in_range.then(|| si * si - si * crit as i64);
    let mut flags = report.flags.clone();
    if let Some(c) = closed {
        if c != report.definitional_defect as i64 && !flags.iter().any(|f| f == FLAG_FORMULA_MISMATCH) {
            flags.push(FLAG_FORMULA_MISMATCH.to_string());
        }
    }
    Ok(DroppedFactorReport {
        s,
        in_range,
        closed_form_defect: closed,
        definitional_defect: report.definitional_defect,
        flags,
    })
}

/// `(s_0, s_max)` for `P^1 x P^m` embedded by `(2k, 2)`:
/// `s_0 = km + k + ceil((m+1)/2)`, `s_max = km + k + m`.
pub fn sv_defect_range(k: usize, m: usize) -> Result<(usize, usize)> {
    if k == 0 || m == 0 {
        return Err(Error::OutOfRange("k and m must be positive".into()));
    }
    Ok((k * m + k + (m + 2) / 2, k * m + k + m))
}
