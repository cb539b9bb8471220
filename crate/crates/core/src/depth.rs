//! Plug-in global and local distance-based depths.
//!
//! For a point `x` and a sample `X_1..X_n`, the global depth is the distance
//! supremum minus the mean distance from `x` to the sample. The local depth
//! restricts the mean to sample points within distance `delta` of `x`
//! (boundary included). When no sample point falls in that cap the local
//! depth takes its `delta -> 0` limit, the supremum itself.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{apply_rotation, check_dims, from_angle, DistanceKind, RotationMatrix, UnitVector};

/// An ordered, non-empty collection of unit vectors of a common dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<UnitVector>", into = "Vec<UnitVector>")]
pub struct DirectionalSample {
    points: Vec<UnitVector>,
}

impl DirectionalSample {
    pub fn new(points: Vec<UnitVector>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySample)?;
        let q = first.dim();
        for p in &points {
            check_dims(q, p.dim())?;
        }
        Ok(DirectionalSample { points })
    }

    /// Builds a sample from raw rows, each of which must already be unit norm.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(rows.into_iter().map(UnitVector::new).collect::<Result<_>>()?)
    }

    pub fn points(&self) -> &[UnitVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, UnitVector> {
        self.points.iter()
    }

    /// Applies `rotation` to every point.
    pub fn rotated(&self, rotation: &RotationMatrix) -> Result<Self> {
        let points = self.points.iter().map(|p| apply_rotation(rotation, p)).collect::<Result<_>>()?;
        Ok(DirectionalSample { points })
    }

    /// Mean vector of the sample (not normalized).
    pub fn mean_vector(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.dim()];
        for p in &self.points {
            for (a, c) in acc.iter_mut().zip(p.coords()) {
                *a += c;
            }
        }
        let n = self.len() as f64;
        acc.iter_mut().for_each(|a| *a /= n);
        acc
    }
}

impl TryFrom<Vec<UnitVector>> for DirectionalSample {
    type Error = Error;

    fn try_from(points: Vec<UnitVector>) -> Result<Self> {
        DirectionalSample::new(points)
    }
}

impl From<DirectionalSample> for Vec<UnitVector> {
    fn from(sample: DirectionalSample) -> Self {
        sample.points
    }
}

/// Distance kind, locality radius and self-inclusion policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthConfig {
    pub kind: DistanceKind,
    pub delta: Option<f64>,
    /// Whether a sample point counts in its own reference sample.
    pub include_self: bool,
}

impl DepthConfig {
    pub fn new(kind: DistanceKind, delta: Option<f64>, include_self: bool) -> Result<Self> {
        if let Some(delta) = delta {
            check_delta(kind, delta)?;
        }
        Ok(DepthConfig { kind, delta, include_self })
    }

    /// Local configuration with self-inclusion on.
    pub fn local(kind: DistanceKind, delta: f64) -> Result<Self> {
        Self::new(kind, Some(delta), true)
    }

    pub fn sup(&self) -> f64 {
        self.kind.sup()
    }
}

/// Global and local depth of every sample point, in sample order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthProfile {
    pub global: Vec<f64>,
    pub local: Vec<f64>,
    pub config: DepthConfig,
}

impl DepthProfile {
    pub fn len(&self) -> usize {
        self.global.len()
    }

    pub fn is_empty(&self) -> bool {
        self.global.is_empty()
    }
}

fn check_delta(kind: DistanceKind, delta: f64) -> Result<()> {
    let sup = kind.sup();
    if !(delta > 0.0 && delta < sup) {
        return Err(Error::DeltaOutOfRange { delta, sup });
    }
    Ok(())
}

/// Sums of distances from one evaluation point, overall and within delta.
#[derive(Debug, Clone, Copy, Default)]
struct DistanceSums {
    total: f64,
    count: usize,
    near: f64,
    near_count: usize,
}

impl DistanceSums {
    fn collect(x: &[f64], sample: &DirectionalSample, kind: DistanceKind, delta: f64, skip: Option<usize>) -> Self {
        let mut sums = DistanceSums::default();
        for (i, p) in sample.points.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let d = kind.between(x, p.coords());
            sums.total += d;
            sums.count += 1;
            if d <= delta {
                sums.near += d;
                sums.near_count += 1;
            }
        }
        sums
    }

    fn mean(&self) -> f64 {
        self.total / self.count as f64
    }

    fn near_mean(&self) -> Option<f64> {
        (self.near_count > 0).then(|| self.near / self.near_count as f64)
    }

    fn global(&self, sup: f64) -> f64 {
        sup - self.mean()
    }

    fn local(&self, sup: f64) -> f64 {
        self.near_mean().map_or(sup, |m| sup - m)
    }
}

fn check_point(x: &UnitVector, sample: &DirectionalSample) -> Result<()> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    check_dims(sample.dim(), x.dim())
}

/// Sup-distance minus the mean distance from `x` to the sample.
pub fn global_depth(x: &UnitVector, sample: &DirectionalSample, kind: DistanceKind) -> Result<f64> {
    check_point(x, sample)?;
    let sums = DistanceSums::collect(x.coords(), sample, kind, f64::NEG_INFINITY, None);
    Ok(sums.global(kind.sup()))
}

/// Sup-distance minus the mean of the distances that do not exceed `delta`.
///
/// Returns the supremum when the `delta`-cap around `x` holds no sample point.
pub fn local_depth(x: &UnitVector, sample: &DirectionalSample, kind: DistanceKind, delta: f64) -> Result<f64> {
    check_point(x, sample)?;
    check_delta(kind, delta)?;
    let sums = DistanceSums::collect(x.coords(), sample, kind, delta, None);
    Ok(sums.local(kind.sup()))
}

/// Mean distance minus the mean distance within `delta`; the amount by
/// which local depth exceeds global depth.
pub fn expectation_gap(x: &UnitVector, sample: &DirectionalSample, kind: DistanceKind, delta: f64) -> Result<f64> {
    check_point(x, sample)?;
    check_delta(kind, delta)?;
    let sums = DistanceSums::collect(x.coords(), sample, kind, delta, None);
    let near = sums.near_mean().ok_or(Error::EmptyNeighborhood)?;
    Ok(sums.mean() - near)
}

/// Global and local depth of every sample point with respect to the sample.
///
/// With `include_self == false` each point is evaluated against the other
/// `n - 1` points.
pub fn depth_profile(sample: &DirectionalSample, config: &DepthConfig) -> Result<DepthProfile> {
    let delta = config.delta.ok_or(Error::MissingDelta)?;
    check_delta(config.kind, delta)?;
    if sample.len() < 2 {
        return Err(Error::TooFewPoints { needed: 2, found: sample.len() });
    }
    let sup = config.sup();
    let (global, local) = (0..sample.len())
        .into_par_iter()
        .map(|i| {
            let skip = (!config.include_self).then_some(i);
            let sums = DistanceSums::collect(sample.points[i].coords(), sample, config.kind, delta, skip);
            (sums.global(sup), sums.local(sup))
        })
        .unzip();
    Ok(DepthProfile { global, local, config: *config })
}

/// Global and local depths of arbitrary evaluation points.
pub fn depths_at(
    points: &[UnitVector],
    sample: &DirectionalSample,
    kind: DistanceKind,
    delta: f64,
) -> Result<Vec<(f64, f64)>> {
    check_delta(kind, delta)?;
    for p in points {
        check_point(p, sample)?;
    }
    let sup = kind.sup();
    Ok(points
        .par_iter()
        .map(|p| {
            let sums = DistanceSums::collect(p.coords(), sample, kind, delta, None);
            (sums.global(sup), sums.local(sup))
        })
        .collect())
}

/// Angles `2 pi k / grid_size` for `k = 0..grid_size`.
pub fn circle_grid(grid_size: usize) -> Vec<f64> {
    (0..grid_size).map(|k| 2.0 * PI * k as f64 / grid_size as f64).collect()
}

/// Depth of a circular sample evaluated on an equispaced angle grid.
///
/// Global depth when `delta` is `None`, local depth otherwise.
pub fn depth_curve(
    sample: &DirectionalSample,
    kind: DistanceKind,
    delta: Option<f64>,
    grid_size: usize,
) -> Result<Vec<(f64, f64)>> {
    if sample.dim() != 2 {
        return Err(Error::NotCircular(sample.dim()));
    }
    if grid_size < 8 {
        return Err(Error::GridTooSmall(grid_size));
    }
    if let Some(delta) = delta {
        check_delta(kind, delta)?;
    }
    let sup = kind.sup();
    Ok(circle_grid(grid_size)
        .into_par_iter()
        .map(|theta| {
            let x = from_angle(theta);
            let sums = DistanceSums::collect(x.coords(), sample, kind, delta.unwrap_or(f64::NEG_INFINITY), None);
            let depth = match delta {
                Some(_) => sums.local(sup),
                None => sums.global(sup),
            };
            (theta, depth)
        })
        .collect())
}
