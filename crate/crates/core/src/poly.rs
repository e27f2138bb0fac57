//! Homogeneous polynomials in the ambient coordinates with exact integer
//! coefficients, and their line-oriented text format.
//!
//! ```text
//! poly  := term (SP sign SP term)*      sign := '+' | '-'
//! term  := [coeff '*'] var ('*' var)*   coeff omitted when 1
//! var   := 'y[' block (';' block)* ']'  block := exponent (',' exponent)*
//! ```
//!
//! A leading `-` marks a negative first term and the zero polynomial is
//! written `0`. Variables inside a term are written in increasing coordinate
//! order and terms follow the canonical (sorted multiset) order.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::coords::{CoordIndex, Exponent, FactorProfile};
use crate::error::{Error, Result};

/// Sorted multiset of coordinates.
pub type Monomial = Vec<CoordIndex>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    degree: usize,
    terms: BTreeMap<Monomial, i64>,
}

impl SparsePoly {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn variable(index: CoordIndex) -> Self {
        let mut p = Self::zero(1);
        p.terms.insert(vec![index], 1);
        p
    }

    /// Adds `coeff * prod(vars)`; `vars` need not be sorted.
    pub fn add_term(&mut self, mut vars: Monomial, coeff: i64) {
        assert_eq!(vars.len(), self.degree, "non-homogeneous term");
        if coeff == 0 {
            return;
        }
        vars.sort_unstable();
        match self.terms.entry(vars) {
            Entry::Occupied(mut slot) => {
                let sum = slot.get().checked_add(coeff).expect("coefficient overflow");
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, monomial: &[CoordIndex]) -> i64 {
        let mut key = monomial.to_vec();
        key.sort_unstable();
        self.terms.get(&key).copied().unwrap_or(0)
    }

    /// Largest coordinate index used, if any.
    pub fn max_index(&self) -> Option<CoordIndex> {
        self.terms.keys().filter_map(|m| m.last().copied()).max()
    }

    pub fn to_text(&self, profile: &FactorProfile) -> Result<String> {
        if self.is_zero() {
            return Ok("0".into());
        }
        let mut out = String::new();
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            let negative = *coeff < 0;
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = coeff.unsigned_abs();
            if magnitude != 1 {
                write!(out, "{magnitude}*").unwrap();
            }
            for (j, v) in mono.iter().enumerate() {
                if j > 0 {
                    out.push('*');
                }
                out.push_str(&profile.coord_name(*v)?);
            }
        }
        Ok(out)
    }

    /// Parses one line of the text format. `line_no` is only used in errors.
    pub fn parse(text: &str, profile: &FactorProfile, line_no: usize) -> Result<Self> {
        let err = |reason: String| Error::PolyFormat {
            line: line_no,
            reason,
        };
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero(0));
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(err("empty polynomial".into()));
        }
        let mut terms: Vec<(i64, Monomial)> = Vec::new();
        let mut idx = 0;
        let mut sign = 1i64;
        while idx < tokens.len() {
            let mut tok = tokens[idx];
            if terms.is_empty() {
                if let Some(rest) = tok.strip_prefix('-') {
                    sign = -1;
                    tok = rest;
                }
            }
            let (coeff, mono) = parse_term(tok, profile).map_err(&err)?;
            terms.push((sign * coeff, mono));
            idx += 1;
            if idx < tokens.len() {
                sign = match tokens[idx] {
                    "+" => 1,
                    "-" => -1,
                    other => return Err(err(format!("expected '+' or '-', found {other:?}"))),
                };
                idx += 1;
                if idx == tokens.len() {
                    return Err(err("dangling sign".into()));
                }
            }
        }
        let degree = terms[0].1.len();
        let mut poly = Self::zero(degree);
        for (coeff, mono) in terms {
            if mono.len() != degree {
                return Err(err("terms of different degrees".into()));
            }
            poly.add_term(mono, coeff);
        }
        Ok(poly)
    }
}

fn parse_term(tok: &str, profile: &FactorProfile) -> std::result::Result<(i64, Monomial), String> {
    let mut coeff = 1i64;
    let mut mono = Vec::new();
    for (i, piece) in tok.split('*').enumerate() {
        if i == 0 && piece.chars().all(|c| c.is_ascii_digit()) && !piece.is_empty() {
            coeff = piece.parse().map_err(|_| format!("bad coefficient {piece:?}"))?;
            continue;
        }
        let body = piece
            .strip_prefix("y[")
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| format!("bad variable {piece:?}"))?;
        let blocks = body
            .split(';')
            .map(|b| {
                b.split(',')
                    .map(|e| e.parse::<u32>().map_err(|_| format!("bad exponent {e:?}")))
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map(Exponent)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let idx = profile.coord_index(&blocks).map_err(|e| e.to_string())?;
        mono.push(idx);
    }
    if mono.is_empty() {
        return Err(format!("term {tok:?} has no variables"));
    }
    Ok((coeff, mono))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collection_and_cancellation() {
        let mut p = SparsePoly::zero(2);
        p.add_term(vec![CoordIndex(3), CoordIndex(1)], 1);
        p.add_term(vec![CoordIndex(1), CoordIndex(3)], 2);
        assert_eq!(p.coefficient(&[CoordIndex(1), CoordIndex(3)]), 3);
        p.add_term(vec![CoordIndex(2), CoordIndex(2)], -1);
        p.add_term(vec![CoordIndex(1), CoordIndex(3)], -3);
        assert_eq!(p.term_count(), 1);
        p.add_term(vec![CoordIndex(2), CoordIndex(2)], 1);
        assert!(p.is_zero());
    }

    #[test]
    fn text_format_matches_grammar() {
        let profile: FactorProfile = "P(1,3)xP(1)".parse().unwrap();
        let line = "y[3,0;0,1]*y[1,2;1,0] - y[2,1;0,1]*y[2,1;1,0]";
        let p = SparsePoly::parse(line, &profile, 1).unwrap();
        assert_eq!(p.term_count(), 2);
        assert_eq!(p.degree(), 2);
        // variables are re-emitted in increasing coordinate order
        assert_eq!(
            p.to_text(&profile).unwrap(),
            "y[3,0;0,1]*y[1,2;1,0] - y[2,1;1,0]*y[2,1;0,1]"
        );
    }

    #[test]
    fn text_roundtrip_with_coefficients() {
        let profile: FactorProfile = "P(2,3)".parse().unwrap();
        let mut p = SparsePoly::zero(3);
        p.add_term(vec![CoordIndex(1), CoordIndex(1), CoordIndex(4)], -2);
        p.add_term(vec![CoordIndex(0), CoordIndex(4), CoordIndex(9)], 1);
        p.add_term(vec![CoordIndex(2), CoordIndex(3), CoordIndex(5)], 7);
        let text = p.to_text(&profile).unwrap();
        assert!(text.starts_with("y[3,0,0]"));
        assert!(text.contains(" - 2*y[2,1,0]*y[2,1,0]*y[1,1,1]"));
        assert_eq!(SparsePoly::parse(&text, &profile, 1).unwrap(), p);

        let neg = SparsePoly::parse("-3*y[3,0,0]", &profile, 1).unwrap();
        assert_eq!(neg.to_text(&profile).unwrap(), "-3*y[3,0,0]");
        assert!(SparsePoly::parse("0", &profile, 1).unwrap().is_zero());
    }

    #[test]
    fn malformed_lines() {
        let profile: FactorProfile = "P(2,3)".parse().unwrap();
        for bad in ["y[3,0,0] +", "y[3,0,0] * y[0,0,3]", "y[3,0]", "x[3,0,0]", "y[3,0,0] y[0,3,0]", "y[2,0,0]", "y[3,0,0] + y[3,0,0]*y[0,0,3]"] {
            assert!(SparsePoly::parse(bad, &profile, 7).is_err(), "{bad}");
        }
    }
}
