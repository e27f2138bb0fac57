//! Randomized dimension oracle for secant varieties and evaluation-level
//! checks of their equations.
//!
//! `dim σ_s` is read off as the rank of the stacked affine tangent spaces at
//! `s` random cone points, minus one. Random specialization can only lower
//! a rank, so every trial gives a lower bound and the maximum over trials is
//! reported.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classify::two_factor_secant_dim;
use crate::coords::FactorProfile;
use crate::error::{Error, Result};
use crate::field::{FieldConfig, Fp, FpMatrix};
use crate::flatten::{CoordMatrix, Flattening, Split};
use crate::numeric::{eval_poly, evaluate_matrix, stream_rng, ConePoint, Embedding, Purpose};
use crate::poly::SparsePoly;

/// `s` cone points, their coefficients and the combined point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecantSample {
    pub points: Vec<ConePoint>,
    pub combo: Vec<u64>,
    pub image: Vec<u64>,
}

pub fn sample_secant_point<R: Rng + ?Sized>(
    embedding: &Embedding,
    s: usize,
    field: Fp,
    rng: &mut R,
) -> Result<SecantSample> {
    if s == 0 {
        return Err(Error::OutOfRange("secant index must be at least 1".into()));
    }
    for _ in 0..16 {
        let points = (0..s)
            .map(|_| embedding.sample(field, rng))
            .collect::<Result<Vec<_>>>()?;
        let combo: Vec<u64> = (0..s).map(|_| field.random_nonzero(rng)).collect();
        let mut image = vec![0u64; embedding.coord_count()];
        for (pt, &lambda) in points.iter().zip(&combo) {
            for (acc, v) in image.iter_mut().zip(&pt.image) {
                *acc = field.add(*acc, field.mul(lambda, *v));
            }
        }
        if image.iter().any(|&v| v != 0) {
            return Ok(SecantSample { points, combo, image });
        }
    }
    Err(Error::Sampling("secant combinations kept vanishing".into()))
}

/// Secant sample for `(config.seed, trial)`.
pub fn seeded_secant_point(
    embedding: &Embedding,
    s: usize,
    config: &FieldConfig,
    trial: u64,
) -> Result<SecantSample> {
    let mut rng = stream_rng(config.seed, trial, Purpose::Secant);
    sample_secant_point(embedding, s, config.field(), &mut rng)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEstimate {
    pub s: usize,
    pub affine_rank: usize,
    pub projective_dim: usize,
    pub trials: usize,
}

/// Terracini rank oracle for `dim σ_s`.
pub fn terracini_dim(embedding: &Embedding, s: usize, config: &FieldConfig) -> Result<DimEstimate> {
    if s == 0 {
        return Err(Error::OutOfRange("secant index must be at least 1".into()));
    }
    let field = config.field();
    let ceiling = embedding
        .coord_count()
        .min(s * (embedding.variety_dim() + 1));
    let mut best = 0;
    let mut used = 0;
    for trial in 0..config.trials {
        used += 1;
        let mut rng = stream_rng(config.seed, trial as u64, Purpose::Terracini);
        let mut stacked = FpMatrix::zeros(0, embedding.coord_count());
        for _ in 0..s {
            let pt = embedding.sample(field, &mut rng)?;
            stacked.stack(&embedding.jacobian(&pt.params, field));
        }
        best = best.max(stacked.rank(field));
        if best == ceiling {
            break;
        }
    }
    Ok(DimEstimate {
        s,
        affine_rank: best,
        projective_dim: best - 1,
        trials: used,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBound {
    pub holds: bool,
    pub max_rank: usize,
    /// False when `s >= min(rows, cols)`: the bound is vacuous.
    pub constrained: bool,
}

/// Checks that `matrix` (in the embedding's unprojected coordinates) has
/// rank at most `s` at secant samples across all trials.
pub fn verify_matrix_rank_bound(
    embedding: &Embedding,
    matrix: &CoordMatrix,
    s: usize,
    config: &FieldConfig,
) -> Result<RankBound> {
    let field = config.field();
    let mut max_rank = 0;
    for trial in 0..config.trials {
        let mut rng = stream_rng(config.seed, trial as u64, Purpose::RankBound);
        let sample = sample_secant_point(embedding, s, field, &mut rng)?;
        let full = embedding.lift(&sample.image);
        max_rank = max_rank.max(evaluate_matrix(matrix, &full).rank(field));
    }
    let (r, c) = matrix.shape();
    Ok(RankBound {
        holds: max_rank <= s,
        max_rank,
        constrained: s < r.min(c),
    })
}

pub fn verify_rank_bound(
    profile: &FactorProfile,
    split: &Split,
    s: usize,
    config: &FieldConfig,
) -> Result<RankBound> {
    let flat = Flattening::build(profile, split, false)?;
    verify_matrix_rank_bound(&Embedding::full(profile.clone()), flat.matrix(), s, config)
}

/// True iff every polynomial vanishes at secant samples of every trial.
pub fn verify_vanishing(
    polys: &[SparsePoly],
    embedding: &Embedding,
    s: usize,
    config: &FieldConfig,
) -> Result<bool> {
    let field = config.field();
    for trial in 0..config.trials {
        let mut rng = stream_rng(config.seed, trial as u64, Purpose::Vanishing);
        let sample = sample_secant_point(embedding, s, field, &mut rng)?;
        let full = embedding.lift(&sample.image);
        for p in polys {
            if eval_poly(p, &full, field)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evaluates the determinant of a square coordinate matrix at secant
/// samples without expanding it; true iff it is zero at every trial.
pub fn verify_determinant_vanishing(
    embedding: &Embedding,
    matrix: &CoordMatrix,
    s: usize,
    config: &FieldConfig,
) -> Result<bool> {
    let (r, c) = matrix.shape();
    if r != c {
        return Err(Error::MinorShape { rows: r, cols: c });
    }
    let field = config.field();
    for trial in 0..config.trials {
        let mut rng = stream_rng(config.seed, trial as u64, Purpose::Vanishing);
        let sample = sample_secant_point(embedding, s, field, &mut rng)?;
        let full = embedding.lift(&sample.image);
        if evaluate_matrix(matrix, &full).det(field) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the span of `polys`, from their values at `2 * len` random
/// points of the ambient space (lower bound; exact with high probability).
pub fn independent_count(polys: &[SparsePoly], coord_count: usize, config: &FieldConfig) -> Result<usize> {
    if let Some(first) = polys.first() {
        if let Some(other) = polys.iter().find(|p| p.degree() != first.degree() && !p.is_zero()) {
            if !first.is_zero() {
                return Err(Error::MixedDegrees(first.degree(), other.degree()));
            }
        }
    }
    let field = config.field();
    let mut best = 0;
    for trial in 0..config.trials {
        let mut rng = stream_rng(config.seed, trial as u64, Purpose::Independence);
        let points: Vec<Vec<u64>> = (0..2 * polys.len())
            .map(|_| (0..coord_count).map(|_| field.random(&mut rng)).collect())
            .collect();
        let mut m = FpMatrix::zeros(0, points.len());
        for p in polys {
            let row = points
                .iter()
                .map(|pt| eval_poly(p, pt, field))
                .collect::<Result<Vec<_>>>()?;
            m.push_row(&row);
        }
        best = best.max(m.rank(field));
    }
    Ok(best)
}

/// Finds a group of factors of `x` whose Segre product has `target`
/// coordinates, leaving the rest with `rest` coordinates.
fn grouping_exists(x: &FactorProfile, target: usize, rest: usize) -> bool {
    let sizes: Vec<usize> = x.factors().iter().map(|f| f.n + 1).collect();
    (1..(1u64 << sizes.len()) - 1).any(|mask| {
        let (mut a, mut b) = (1usize, 1usize);
        for (i, s) in sizes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a *= s;
            } else {
                b *= s;
            }
        }
        a == target && b == rest
    })
}

/// Compares the oracle dimension of `σ_s(X)` with the closed-form dimension
/// of `σ_s(Y)` for the two-factor Segre grouping `Y` of `X`.
pub fn equal_secants_check(
    x: &FactorProfile,
    y: &FactorProfile,
    s: usize,
    config: &FieldConfig,
) -> Result<bool> {
    if !x.is_segre() || !y.is_segre() || y.len() != 2 {
        return Err(Error::Grouping(format!("{y} is not a two-factor Segre grouping of {x}")));
    }
    let (a, b) = (y.factors()[0].n, y.factors()[1].n);
    if !grouping_exists(x, a + 1, b + 1) {
        return Err(Error::Grouping(format!("no grouping of {x} gives {y}")));
    }
    let oracle = terracini_dim(&Embedding::full(x.clone()), s, config)?;
    Ok(oracle.projective_dim == two_factor_secant_dim(a, b, s))
}
