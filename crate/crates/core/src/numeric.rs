//! Evaluation of monomial parametrizations over `F_p`: cone points,
//! Jacobians and polynomial evaluation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coords::{CoordIndex, FactorProfile};
use crate::error::{Error, Result};
use crate::field::{FieldConfig, Fp, FpMatrix};
use crate::flatten::CoordMatrix;
use crate::poly::SparsePoly;

/// Purpose tags keep the random streams of different checks apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    ConePoint = 1,
    Terracini = 2,
    Secant = 3,
    Independence = 4,
    Vanishing = 5,
    RankBound = 6,
}

/// Deterministic stream for `(master seed, trial, purpose)`.
pub fn stream_rng(seed: u64, trial: u64, purpose: Purpose) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    key[16..24].copy_from_slice(&(purpose as u64).to_le_bytes());
    key[24..].copy_from_slice(b"secantSV");
    ChaCha8Rng::from_seed(key)
}

/// A parameter point per factor and its image on the affine cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePoint {
    pub params: Vec<Vec<u64>>,
    pub image: Vec<u64>,
}

/// Values of all degree-`d` monomials of one factor (in table order).
fn factor_values(profile: &FactorProfile, factor: usize, x: &[u64], field: Fp) -> Vec<u64> {
    profile
        .monomials(factor)
        .iter()
        .map(|e| {
            e.entries()
                .iter()
                .zip(x)
                .fold(1, |acc, (&k, &v)| field.mul(acc, field.pow(v, u64::from(k))))
        })
        .collect()
}

/// `d/dx_j` of every degree-`d` monomial of one factor.
fn factor_derivatives(
    profile: &FactorProfile,
    factor: usize,
    x: &[u64],
    j: usize,
    field: Fp,
) -> Vec<u64> {
    profile
        .monomials(factor)
        .iter()
        .map(|e| {
            let ej = e.entries()[j];
            if ej == 0 {
                return 0;
            }
            e.entries()
                .iter()
                .zip(x)
                .enumerate()
                .fold(field.from_i64(i64::from(ej)), |acc, (i, (&k, &v))| {
                    let k = if i == j { k - 1 } else { k };
                    field.mul(acc, field.pow(v, u64::from(k)))
                })
        })
        .collect()
}

/// Mixed-radix (Kronecker) product of per-factor vectors, first factor
/// most significant; matches the coordinate linearization.
fn kron_vectors(parts: &[Vec<u64>], field: Fp) -> Vec<u64> {
    let mut out = vec![1u64];
    for part in parts {
        let mut next = Vec::with_capacity(out.len() * part.len());
        for &a in &out {
            for &b in part {
                next.push(field.mul(a, b));
            }
        }
        out = next;
    }
    out
}

/// Image of `params` under the Segre–Veronese map.
pub fn cone_image(profile: &FactorProfile, params: &[Vec<u64>], field: Fp) -> Vec<u64> {
    let parts: Vec<Vec<u64>> = (0..profile.len())
        .map(|i| factor_values(profile, i, &params[i], field))
        .collect();
    kron_vectors(&parts, field)
}

/// Samples uniform nonzero parameters per factor; retries on a zero image.
pub fn sample_cone_point<R: Rng + ?Sized>(
    profile: &FactorProfile,
    field: Fp,
    rng: &mut R,
) -> Result<ConePoint> {
    for _ in 0..16 {
        let params: Vec<Vec<u64>> = profile
            .factors()
            .iter()
            .map(|f| loop {
                let v: Vec<u64> = (0..=f.n).map(|_| field.random(rng)).collect();
                if v.iter().any(|&x| x != 0) {
                    break v;
                }
            })
            .collect();
        let image = cone_image(profile, &params, field);
        if image.iter().any(|&v| v != 0) {
            return Ok(ConePoint { params, image });
        }
    }
    Err(Error::Sampling("16 consecutive cone points had zero image".into()))
}

/// Deterministic cone point for `(config.seed, trial)`.
pub fn seeded_cone_point(profile: &FactorProfile, config: &FieldConfig, trial: u64) -> Result<ConePoint> {
    let mut rng = stream_rng(config.seed, trial, Purpose::ConePoint);
    sample_cone_point(profile, config.field(), &mut rng)
}

/// One row per affine parameter (factor-major): the partial derivatives of
/// every ambient coordinate at `params`. The row space is the affine tangent
/// space of the cone.
pub fn jacobian_rows(profile: &FactorProfile, params: &[Vec<u64>], field: Fp) -> FpMatrix {
    let values: Vec<Vec<u64>> = (0..profile.len())
        .map(|i| factor_values(profile, i, &params[i], field))
        .collect();
    let mut out = FpMatrix::zeros(0, profile.coord_count());
    for (i, f) in profile.factors().iter().enumerate() {
        for j in 0..=f.n {
            let mut parts = values.clone();
            parts[i] = factor_derivatives(profile, i, &params[i], j, field);
            out.push_row(&kron_vectors(&parts, field));
        }
    }
    out
}

/// Evaluates a polynomial at an ambient point.
pub fn eval_poly(poly: &SparsePoly, point: &[u64], field: Fp) -> Result<u64> {
    if let Some(max) = poly.max_index() {
        if max.0 >= point.len() {
            return Err(Error::IndexOutOfRange {
                index: max.0,
                ambient: point.len().saturating_sub(1),
            });
        }
    }
    let mut acc = 0;
    for (mono, coeff) in poly.terms() {
        let term = mono
            .iter()
            .fold(field.from_i64(coeff), |t, v| field.mul(t, point[v.0]));
        acc = field.add(acc, term);
    }
    Ok(acc)
}

/// Substitutes an ambient point into a coordinate matrix.
pub fn evaluate_matrix(matrix: &CoordMatrix, point: &[u64]) -> FpMatrix {
    let (r, c) = matrix.shape();
    FpMatrix::new(r, c, matrix.entries().iter().map(|i| point[i.0]).collect())
}

/// The Segre–Veronese map of a profile, optionally followed by a coordinate
/// projection onto `kept` (the surfaces obtained by dropping coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    profile: FactorProfile,
    kept: Option<Vec<CoordIndex>>,
}

impl Embedding {
    pub fn full(profile: FactorProfile) -> Self {
        Self { profile, kept: None }
    }

    pub fn projected(profile: FactorProfile, kept: Vec<CoordIndex>) -> Result<Self> {
        if let Some(bad) = kept.iter().find(|k| k.0 > profile.ambient_dim()) {
            return Err(Error::IndexOutOfRange {
                index: bad.0,
                ambient: profile.ambient_dim(),
            });
        }
        Ok(Self {
            profile,
            kept: Some(kept),
        })
    }

    pub fn profile(&self) -> &FactorProfile {
        &self.profile
    }

    pub fn kept(&self) -> Option<&[CoordIndex]> {
        self.kept.as_deref()
    }

    pub fn coord_count(&self) -> usize {
        self.kept.as_ref().map_or(self.profile.coord_count(), Vec::len)
    }

    pub fn ambient_dim(&self) -> usize {
        self.coord_count() - 1
    }

    pub fn variety_dim(&self) -> usize {
        self.profile.variety_dim()
    }

    fn project(&self, full: Vec<u64>) -> Vec<u64> {
        match &self.kept {
            None => full,
            Some(kept) => kept.iter().map(|k| full[k.0]).collect(),
        }
    }

    /// Image in the (possibly projected) ambient space.
    pub fn image(&self, params: &[Vec<u64>], field: Fp) -> Vec<u64> {
        self.project(cone_image(&self.profile, params, field))
    }

    pub fn jacobian(&self, params: &[Vec<u64>], field: Fp) -> FpMatrix {
        let full = jacobian_rows(&self.profile, params, field);
        match &self.kept {
            None => full,
            Some(kept) => {
                let rows: Vec<usize> = (0..full.shape().0).collect();
                let cols: Vec<usize> = kept.iter().map(|k| k.0).collect();
                full.submatrix(&rows, &cols)
            }
        }
    }

    /// A parameter point whose projected image is nonzero.
    pub fn sample<R: Rng + ?Sized>(&self, field: Fp, rng: &mut R) -> Result<ConePoint> {
        for _ in 0..16 {
            let p = sample_cone_point(&self.profile, field, rng)?;
            let image = self.project(p.image);
            if image.iter().any(|&v| v != 0) {
                return Ok(ConePoint {
                    params: p.params,
                    image,
                });
            }
        }
        Err(Error::Sampling("16 consecutive projected images were zero".into()))
    }

    /// Lifts a point of the projected space back to full coordinates,
    /// filling dropped coordinates with zero.
    pub fn lift(&self, point: &[u64]) -> Vec<u64> {
        match &self.kept {
            None => point.to_vec(),
            Some(kept) => {
                let mut full = vec![0; self.profile.coord_count()];
                for (k, v) in kept.iter().zip(point) {
                    full[k.0] = *v;
                }
                full
            }
        }
    }
}

impl From<FactorProfile> for Embedding {
    fn from(profile: FactorProfile) -> Self {
        Self::full(profile)
    }
}
