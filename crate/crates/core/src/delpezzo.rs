//! Del Pezzo surfaces `S9..S6` (cubic Veronese surface and its projections
//! from coordinate points) and `D8` (`P^1 x P^1` by bidegree `(2,2)`), with
//! their catalecticant-type matrices and secant checks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::{expected_dim, giambelli_degree, two_factor_codim};
use crate::coords::{CoordIndex, Exponent, FactorProfile};
use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::flatten::{factor_catalecticant, CoordMatrix, Flattening, Split};
use crate::numeric::Embedding;
use crate::secant::{terracini_dim, verify_vanishing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceName {
    S9,
    S8,
    S7,
    S6,
    D8,
}

impl SurfaceName {
    pub const ALL: [SurfaceName; 5] = [
        SurfaceName::S9,
        SurfaceName::S8,
        SurfaceName::S7,
        SurfaceName::S6,
        SurfaceName::D8,
    ];
}

impl fmt::Display for SurfaceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SurfaceName::S9 => "S9",
            SurfaceName::S8 => "S8",
            SurfaceName::S7 => "S7",
            SurfaceName::S6 => "S6",
            SurfaceName::D8 => "D8",
        };
        f.write_str(s)
    }
}

impl FromStr for SurfaceName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "S9" => Ok(SurfaceName::S9),
            "S8" => Ok(SurfaceName::S8),
            "S7" => Ok(SurfaceName::S7),
            "S6" => Ok(SurfaceName::S6),
            "D8" => Ok(SurfaceName::D8),
            _ => Err(Error::UnknownSurface(s.to_string())),
        }
    }
}

/// Columns removed from the 3x6 cubic catalecticant, 1-based in its
/// printed order: `x2^2`, then `x1^2`, then `x0^2`.
pub const DELETION_ORDER: [usize; 3] = [6, 4, 1];

/// The cubic catalecticant with the first `steps` deletions applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletedColumnMatrix {
    pub base: CoordMatrix,
    pub steps: usize,
}

impl DeletedColumnMatrix {
    pub fn new(steps: usize) -> Result<Self> {
        if steps > DELETION_ORDER.len() {
            return Err(Error::OutOfRange(format!("at most {} deletions", DELETION_ORDER.len())));
        }
        Ok(Self {
            base: factor_catalecticant(2, 3, 1)?.matrix().clone(),
            steps,
        })
    }

    /// Current 0-based positions of the surviving base columns.
    pub fn surviving_columns(&self) -> Vec<usize> {
        let deleted: Vec<usize> = DELETION_ORDER[..self.steps].iter().map(|c| c - 1).collect();
        (0..self.base.shape().1).filter(|c| !deleted.contains(c)).collect()
    }

    pub fn matrix(&self) -> CoordMatrix {
        let mut m = self.base.clone();
        for (i, &col) in DELETION_ORDER[..self.steps].iter().enumerate() {
            let shift = DELETION_ORDER[..i].iter().filter(|&&c| c < col).count();
            m = m.without_column(col - 1 - shift);
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceSpec {
    pub name: SurfaceName,
    pub embedding: Embedding,
    pub matrix: CoordMatrix,
}

impl SurfaceSpec {
    pub fn profile(&self) -> &FactorProfile {
        self.embedding.profile()
    }

    /// Parametrizing monomials, one exponent block per factor.
    pub fn parametrization(&self) -> Vec<Vec<Exponent>> {
        let profile = self.profile();
        let all: Vec<CoordIndex> = (0..profile.coord_count()).map(CoordIndex).collect();
        self.embedding
            .kept()
            .unwrap_or(&all)
            .iter()
            .map(|c| profile.coord_monomials(*c).expect("valid coordinate"))
            .collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.embedding.ambient_dim()
    }
}

pub fn build_surface(name: SurfaceName) -> Result<SurfaceSpec> {
    match name {
        SurfaceName::D8 => {
            let profile: FactorProfile = "P(1,2)xP(1,2)".parse()?;
            let b = Flattening::build(&profile, &Split(vec![1, 1]), false)?;
            Ok(SurfaceSpec {
                name,
                matrix: b.matrix().clone(),
                embedding: Embedding::full(profile),
            })
        }
        _ => {
            let steps = match name {
                SurfaceName::S9 => 0,
                SurfaceName::S8 => 1,
                SurfaceName::S7 => 2,
                _ => 3,
            };
            let profile: FactorProfile = "P(2,3)".parse()?;
            let dropped: Vec<CoordIndex> = [[0, 0, 3], [0, 3, 0], [3, 0, 0]][..steps]
                .iter()
                .map(|e| profile.coord_index(&[Exponent(e.to_vec())]))
                .collect::<Result<_>>()?;
            let kept = (0..profile.coord_count())
                .map(CoordIndex)
                .filter(|c| !dropped.contains(c))
                .collect();
            Ok(SurfaceSpec {
                name,
                matrix: DeletedColumnMatrix::new(steps)?.matrix(),
                embedding: Embedding::projected(profile, kept)?,
            })
        }
    }
}

/// Substitutes the parametrization into every `k x k` minor of the surface
/// matrix and checks that each collapses to zero over the integers.
pub fn symbolic_minor_vanishing(spec: &SurfaceSpec, k: usize) -> Result<bool> {
    let profile = spec.profile();
    let mut exponent_of: BTreeMap<CoordIndex, Vec<u32>> = BTreeMap::new();
    for c in spec.matrix.support() {
        let blocks = profile.coord_monomials(c)?;
        exponent_of.insert(c, blocks.iter().flat_map(|b| b.entries().to_vec()).collect());
    }
    for (_, _, minor) in spec.matrix.emit_minors(k, usize::MAX)? {
        let mut collected: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (mono, coeff) in minor.terms() {
            let mut total = vec![0u32; profile.param_count()];
            for v in mono {
                for (t, e) in total.iter_mut().zip(&exponent_of[v]) {
                    *t += e;
                }
            }
            *collected.entry(total).or_insert(0) += coeff;
        }
        if collected.values().any(|&c| c != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSecantRecord {
    pub surface: SurfaceName,
    pub s: usize,
    pub ambient: usize,
    pub expected_dim: usize,
    pub oracle_dim: usize,
    /// `None` when the matrix has no `(s+1) x (s+1)` minors.
    pub minors_vanish: Option<bool>,
    pub minor_count: u128,
}

pub fn secant_checks(spec: &SurfaceSpec, s: usize, config: &FieldConfig) -> Result<SurfaceSecantRecord> {
    if s < 2 {
        return Err(Error::OutOfRange("surface secant checks need s >= 2".into()));
    }
    let (r, c) = spec.matrix.shape();
    let (minors_vanish, minor_count) = if s < r.min(c) {
        let stream = spec.matrix.emit_minors(s + 1, usize::MAX)?;
        let total = stream.total();
        let polys: Vec<_> = stream.map(|m| m.2).collect();
        (Some(verify_vanishing(&polys, &spec.embedding, s, config)?), total)
    } else {
        (None, 0)
    };
    let oracle = terracini_dim(&spec.embedding, s, config)?;
    Ok(SurfaceSecantRecord {
        surface: spec.name,
        s,
        ambient: spec.ambient_dim(),
        expected_dim: expected_dim(spec.ambient_dim(), 2, s),
        oracle_dim: oracle.projective_dim,
        minors_vanish,
        minor_count,
    })
}

pub const FLAG_REPORTED_ONLY: &str = "reported-only";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub surface: SurfaceName,
    pub s: usize,
    pub degree: u128,
    /// `Some((a, b, s))` when the degree comes from the determinantal formula.
    pub giambelli: Option<(usize, usize, usize)>,
    pub flags: Vec<String>,
}

/// Degree of `σ_2` for each surface. Where the `3 x 3` minors have generic
/// height the determinantal degree formula applies; `D8`'s value is carried
/// as a literature value.
pub fn delpezzo_degrees() -> Result<Vec<DegreeRow>> {
    let mut rows = Vec::new();
    for (name, cols) in [
        (SurfaceName::S9, 6usize),
        (SurfaceName::S8, 5),
        (SurfaceName::S7, 4),
        (SurfaceName::S6, 3),
    ] {
        rows.push(DegreeRow {
            surface: name,
            s: 2,
            degree: giambelli_degree(2, cols - 1, 2)?,
            giambelli: Some((2, cols - 1, 2)),
            flags: Vec::new(),
        });
    }
    rows.push(DegreeRow {
        surface: SurfaceName::D8,
        s: 2,
        degree: 10,
        giambelli: None,
        flags: vec![FLAG_REPORTED_ONLY.to_string(), "not-generic-height".to_string()],
    });
    Ok(rows)
}

/// Whether the `(s+1)`-minors of the surface matrix cut out a locus of the
/// generic codimension, judged against the oracle dimension.
pub fn has_generic_height(spec: &SurfaceSpec, oracle_dim: usize, s: usize) -> bool {
    let (r, c) = spec.matrix.shape();
    two_factor_codim(r - 1, c - 1, s) == spec.ambient_dim() - oracle_dim
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub surface: SurfaceName,
    pub ambient: usize,
    pub matrix_shape: (usize, usize),
    pub parametrization_size: usize,
    pub quadrics_vanish_identically: bool,
    pub secants: Vec<SurfaceSecantRecord>,
    pub sigma2_generic_height: bool,
    pub sigma2_degree: u128,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelPezzoReport {
    pub schema: u32,
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    pub surfaces: Vec<SurfaceRow>,
    pub notes: Vec<String>,
}

pub fn delpezzo_report(config: &FieldConfig) -> Result<DelPezzoReport> {
    let degrees = delpezzo_degrees()?;
    let mut surfaces = Vec::new();
    for name in SurfaceName::ALL {
        let spec = build_surface(name)?;
        let secants = vec![secant_checks(&spec, 2, config)?, secant_checks(&spec, 3, config)?];
        let degree = degrees.iter().find(|d| d.surface == name).expect("all surfaces");
        let mut flags = degree.flags.clone();
        for rec in &secants {
            if rec.oracle_dim < rec.expected_dim {
                flags.push(format!("sigma{}-defective", rec.s));
            } else if rec.oracle_dim + 1 == rec.ambient {
                flags.push(format!("sigma{}-hypersurface", rec.s));
            } else if rec.oracle_dim == rec.ambient {
                flags.push(format!("sigma{}-fills", rec.s));
            }
        }
        surfaces.push(SurfaceRow {
            surface: name,
            ambient: spec.ambient_dim(),
            matrix_shape: spec.matrix.shape(),
            parametrization_size: spec.parametrization().len(),
            quadrics_vanish_identically: symbolic_minor_vanishing(&spec, 2)?,
            sigma2_generic_height: has_generic_height(&spec, secants[0].oracle_dim, 2),
            sigma2_degree: degree.degree,
            secants,
            flags,
        });
    }
    Ok(DelPezzoReport {
        schema: 1,
        prime: config.p,
        seed: config.seed,
        trials: config.trials,
        surfaces,
        notes: vec![
            "S3, S4, S5: sigma2 fills the ambient space; not computed".to_string(),
            "S4 and S5 ideals: two and three quadrics respectively (literature, not computed)".to_string(),
            "ideal generation and Betti numbers are not checked".to_string(),
        ],
    })
}
