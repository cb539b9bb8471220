//! Unit-sphere primitives: unit vectors, the three bounded spherical
//! distances, coordinate conversions and rotations.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{stream_rng, streams};

/// Inputs whose norm is within this of 1 are accepted and renormalized.
pub const UNIT_TOLERANCE: f64 = 1e-12;
/// Orthogonality tolerance for [`RotationMatrix`].
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-10;

/// A point on the unit hypersphere S^(q-1), q >= 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitVector(Vec<f64>);

impl UnitVector {
    /// Accepts `coords` whose Euclidean norm is already 1 within
    /// [`UNIT_TOLERANCE`]; the stored value is renormalized.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(coords, UNIT_TOLERANCE)
    }

    /// Like [`UnitVector::new`] with a caller-chosen norm tolerance.
    pub fn with_tolerance(coords: Vec<f64>, tolerance: f64) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len()));
        }
        let norm = euclidean_norm(&coords);
        if !norm.is_finite() || (norm - 1.0).abs() > tolerance {
            return Err(Error::NotUnitNorm(norm));
        }
        Ok(UnitVector(coords.into_iter().map(|c| c / norm).collect()))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// Ambient dimension q.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &UnitVector) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(dot(&self.0, &other.0))
    }

    /// Inner product clamped to [-1, 1].
    pub fn cosine(&self, other: &UnitVector) -> Result<f64> {
        self.dot(other).map(|t| t.clamp(-1.0, 1.0))
    }

    /// The antipodal point.
    pub fn antipode(&self) -> UnitVector {
        UnitVector(self.0.iter().map(|c| -c).collect())
    }

    /// Standard basis vector e_(axis+1) in dimension `q`.
    pub fn basis(q: usize, axis: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::DimensionTooSmall(q));
        }
        if axis >= q {
            return Err(Error::DimensionMismatch { expected: q, found: axis + 1 });
        }
        let mut coords = vec![0.0; q];
        coords[axis] = 1.0;
        Ok(UnitVector(coords))
    }

    /// Polar angle in `[0, 2pi)` of a circular (q = 2) point.
    pub fn angle(&self) -> Result<f64> {
        if self.dim() != 2 {
            return Err(Error::NotCircular(self.dim()));
        }
        Ok(self.0[1].atan2(self.0[0]).rem_euclid(2.0 * PI))
    }
}

impl<'de> Deserialize<'de> for UnitVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<f64>::deserialize(deserializer)?;
        UnitVector::new(coords).map_err(serde::de::Error::custom)
    }
}

/// Scales `raw` onto the sphere.
pub fn normalize(raw: &[f64]) -> Result<UnitVector> {
    if raw.len() < 2 {
        return Err(Error::DimensionTooSmall(raw.len()));
    }
    let norm = euclidean_norm(raw);
    if !norm.is_finite() || norm <= UNIT_TOLERANCE {
        return Err(Error::ZeroNorm);
    }
    Ok(UnitVector(raw.iter().map(|c| c / norm).collect()))
}

/// Bounded rotation-invariant spherical distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceKind {
    /// Great-circle arc length, `arccos(x'y)`.
    Arc,
    /// `1 - x'y`.
    Cosine,
    /// Euclidean chord, `sqrt(2(1 - x'y))`.
    Chord,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 3] = [DistanceKind::Arc, DistanceKind::Cosine, DistanceKind::Chord];

    /// Distance as a function of the (clamped) inner product.
    #[inline]
    pub fn from_cosine(self, t: f64) -> f64 {
        let t = t.clamp(-1.0, 1.0);
        match self {
            DistanceKind::Arc => t.acos(),
            DistanceKind::Cosine => 1.0 - t,
            DistanceKind::Chord => (2.0 * (1.0 - t).max(0.0)).sqrt(),
        }
    }

    /// Distance between two equal-length coordinate slices on the sphere.
    ///
    /// Arc and chord use the difference/sum vectors rather than the inner
    /// product: `arccos` and `sqrt(1 - t)` lose about half the significant
    /// digits near coincident points.
    #[inline]
    pub(crate) fn between(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            DistanceKind::Cosine => 1.0 - dot(a, b).clamp(-1.0, 1.0),
            DistanceKind::Chord => {
                let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                diff.sqrt().min(2.0)
            }
            DistanceKind::Arc => {
                let (mut diff, mut sum) = (0.0, 0.0);
                for (x, y) in a.iter().zip(b) {
                    diff += (x - y) * (x - y);
                    sum += (x + y) * (x + y);
                }
                2.0 * diff.sqrt().atan2(sum.sqrt())
            }
        }
    }

    pub fn sup(self) -> f64 {
        sup_distance(self)
    }

    pub fn name(self) -> &'static str {
        match self {
            DistanceKind::Arc => "arc",
            DistanceKind::Cosine => "cosine",
            DistanceKind::Chord => "chord",
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistanceKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "arc" => Ok(DistanceKind::Arc),
            "cos" | "cosine" => Ok(DistanceKind::Cosine),
            "chord" => Ok(DistanceKind::Chord),
            other => Err(format!("unknown distance '{other}' (expected arc, cosine or chord)")),
        }
    }
}

pub fn distance(kind: DistanceKind, x: &UnitVector, y: &UnitVector) -> Result<f64> {
    check_dims(x.dim(), y.dim())?;
    Ok(kind.between(x.coords(), y.coords()))
}

/// Supremum of the distance over the sphere: pi for arc, 2 otherwise.
pub fn sup_distance(kind: DistanceKind) -> f64 {
    match kind {
        DistanceKind::Arc => PI,
        DistanceKind::Cosine | DistanceKind::Chord => 2.0,
    }
}

/// The radius delta whose spherical cap has angular radius `angle_rad`.
pub fn cap_radius_from_angle(kind: DistanceKind, angle_rad: f64) -> Result<f64> {
    if !(angle_rad > 0.0 && angle_rad <= PI) {
        return Err(Error::AngleOutOfRange(angle_rad));
    }
    Ok(match kind {
        DistanceKind::Arc => angle_rad,
        DistanceKind::Cosine => 1.0 - angle_rad.cos(),
        DistanceKind::Chord => 2.0 * (angle_rad / 2.0).sin(),
    })
}

/// Angular radius of the cap of radius `delta`; inverse of [`cap_radius_from_angle`].
pub fn cap_angle_from_radius(kind: DistanceKind, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= kind.sup()) {
        return Err(Error::DeltaOutOfRange { delta, sup: kind.sup() });
    }
    Ok(match kind {
        DistanceKind::Arc => delta,
        DistanceKind::Cosine => (1.0 - delta).clamp(-1.0, 1.0).acos(),
        DistanceKind::Chord => 2.0 * (delta / 2.0).min(1.0).asin(),
    })
}

/// Geographic latitude/longitude in degrees to a point on S^2.
pub fn from_latlon(lat_deg: f64, lon_deg: f64) -> Result<UnitVector> {
    if !(-90.0..=90.0).contains(&lat_deg) {
        return Err(Error::LatitudeOutOfRange(lat_deg));
    }
    if !(-180.0..360.0).contains(&lon_deg) {
        return Err(Error::LongitudeOutOfRange(lon_deg));
    }
    let (phi, lambda) = (lat_deg.to_radians(), lon_deg.to_radians());
    normalize(&[phi.cos() * lambda.cos(), phi.cos() * lambda.sin(), phi.sin()])
}

/// Point on the unit circle at angle `theta_rad`.
pub fn from_angle(theta_rad: f64) -> UnitVector {
    let theta = theta_rad.rem_euclid(2.0 * PI);
    UnitVector(vec![theta.cos(), theta.sin()])
}

/// A q x q orthogonal matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationMatrix {
    q: usize,
    entries: Vec<f64>,
}

impl RotationMatrix {
    /// Validates `O'O = I` within [`ORTHOGONALITY_TOLERANCE`].
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let q = rows.len();
        if q < 2 {
            return Err(Error::DimensionTooSmall(q));
        }
        for row in &rows {
            check_dims(q, row.len())?;
        }
        let m = RotationMatrix { q, entries: rows.into_iter().flatten().collect() };
        if m.orthogonality_error() > ORTHOGONALITY_TOLERANCE {
            return Err(Error::NotOrthogonal);
        }
        Ok(m)
    }

    pub fn identity(q: usize) -> Self {
        let mut entries = vec![0.0; q * q];
        for i in 0..q {
            entries[i * q + i] = 1.0;
        }
        RotationMatrix { q, entries }
    }

    pub fn dim(&self) -> usize {
        self.q
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.q + col]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.q).map(<[f64]>::to_vec).collect()
    }

    /// Largest entrywise deviation of `O'O` from the identity.
    pub fn orthogonality_error(&self) -> f64 {
        let q = self.q;
        let mut worst = 0.0f64;
        for i in 0..q {
            for j in 0..q {
                let s: f64 = (0..q).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

/// Haar-distributed orthogonal matrix: QR of a standard Gaussian matrix
/// with R's diagonal forced positive. Deterministic in `seed`.
pub fn random_rotation(q: usize, seed: u64) -> Result<RotationMatrix> {
    if q < 2 {
        return Err(Error::DimensionTooSmall(q));
    }
    let mut rng = stream_rng(seed, streams::ROTATION);
    loop {
        let mut cols: Vec<Vec<f64>> =
            (0..q).map(|_| (0..q).map(|_| StandardNormal.sample(&mut rng)).collect()).collect();
        // Modified Gram-Schmidt: positive diagonal of R by construction.
        let mut ok = true;
        for j in 0..q {
            for i in 0..j {
                let proj = dot(&cols[i], &cols[j]);
                let (head, tail) = cols.split_at_mut(j);
                for (c, b) in tail[0].iter_mut().zip(&head[i]) {
                    *c -= proj * b;
                }
            }
            let norm = euclidean_norm(&cols[j]);
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols[j].iter_mut().for_each(|c| *c /= norm);
        }
        if !ok {
            continue;
        }
        let mut entries = vec![0.0; q * q];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                entries[i * q + j] = *v;
            }
        }
        return Ok(RotationMatrix { q, entries });
    }
}

/// `O x`, renormalized.
pub fn apply_rotation(rotation: &RotationMatrix, x: &UnitVector) -> Result<UnitVector> {
    check_dims(rotation.q, x.dim())?;
    let out: Vec<f64> = rotation.entries.chunks(rotation.q).map(|row| dot(row, x.coords())).collect();
    normalize(&out)
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn euclidean_norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}
