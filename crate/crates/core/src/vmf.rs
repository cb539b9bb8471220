//! von Mises-Fisher simulation: single components, finite mixtures and the
//! uniform law, plus the density and mean resultant length.
//!
//! Sampling uses Wood's rejection scheme for the cosine `w = x'mu`, then
//! attaches a uniformly random tangent direction orthogonal to `mu`.
//!
//! Every sampler call draws from its own ChaCha20 stream (see [`crate::rng`]).
//! `sample_mixture` spends one uniform on the component index before each
//! point, so a degenerate mixture `(1, 0)` has the law of its first
//! component but not the same draws as `sample_vmf` with the same seed.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Beta, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_i_ratio, ln_bessel_i, ln_gamma};
use crate::depth::DirectionalSample;
use crate::error::{Error, Result};
use crate::geometry::{check_dims, dot, euclidean_norm, from_angle, normalize, UnitVector};
use crate::rng::{stream_rng, streams};

/// Mean direction and concentration of a vMF law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VmfParams {
    pub mu: UnitVector,
    pub kappa: f64,
}

impl VmfParams {
    pub fn new(mu: UnitVector, kappa: f64) -> Result<Self> {
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidKappa(kappa));
        }
        Ok(VmfParams { mu, kappa })
    }

    /// Circular vMF with mean direction at angle `theta` (radians).
    pub fn circular(theta: f64, kappa: f64) -> Result<Self> {
        Self::new(from_angle(theta), kappa)
    }

    pub fn dim(&self) -> usize {
        self.mu.dim()
    }
}

/// Weighted finite mixture of vMF components of a common dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureParams {
    components: Vec<VmfParams>,
    weights: Vec<f64>,
}

impl MixtureParams {
    pub fn new(components: Vec<VmfParams>, weights: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidWeights("mixture has no components".into()));
        }
        if components.len() != weights.len() {
            return Err(Error::InvalidWeights(format!(
                "{} components but {} weights",
                components.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
            return Err(Error::InvalidWeights("weights must be finite and non-negative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
        }
        let q = components[0].dim();
        for c in &components {
            check_dims(q, c.dim())?;
        }
        Ok(MixtureParams { components, weights })
    }

    /// Equal weights over `components`.
    pub fn equal(components: Vec<VmfParams>) -> Result<Self> {
        let w = 1.0 / components.len().max(1) as f64;
        let weights = vec![w; components.len()];
        // 1/3 + 1/3 + 1/3 etc. sums to 1 within 1e-12 for any practical count
        Self::new(components, weights)
    }

    pub fn components(&self) -> &[VmfParams] {
        &self.components
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }
}

/// Precomputed envelope for Wood's sampler.
struct VmfKernel<'a> {
    mu: &'a UnitVector,
    kappa: f64,
    m1: f64,
    b: f64,
    x0: f64,
    c: f64,
    beta: Option<Beta<f64>>,
}

impl<'a> VmfKernel<'a> {
    fn new(params: &'a VmfParams) -> Self {
        let m1 = (params.dim() - 1) as f64;
        let kappa = params.kappa;
        // (-2k + sqrt(4k^2 + m1^2)) / m1, rewritten to avoid cancellation at large k
        let b = m1 / (2.0 * kappa + (4.0 * kappa * kappa + m1 * m1).sqrt());
        let x0 = (1.0 - b) / (1.0 + b);
        let c = kappa * x0 + m1 * (1.0 - x0 * x0).ln();
        let beta = (kappa > 0.0).then(|| Beta::new(m1 / 2.0, m1 / 2.0).expect("positive shape"));
        VmfKernel { mu: &params.mu, kappa, m1, b, x0, c, beta }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> UnitVector {
        let Some(beta) = &self.beta else {
            return uniform_point(rng, self.mu.dim());
        };
        let w = loop {
            let z = beta.sample(rng);
            let w = (1.0 - (1.0 + self.b) * z) / (1.0 - (1.0 - self.b) * z);
            let u: f64 = rng.random();
            if self.kappa * w + self.m1 * (1.0 - self.x0 * w).ln() - self.c >= u.ln() {
                break w;
            }
        };
        let tangent = tangent_direction(rng, self.mu);
        let radial = (1.0 - w * w).max(0.0).sqrt();
        let raw: Vec<f64> = self.mu.coords().iter().zip(&tangent).map(|(m, t)| w * m + radial * t).collect();
        normalize(&raw).expect("combination of orthonormal vectors")
    }
}

/// Uniformly random unit vector orthogonal to `mu`.
fn tangent_direction<R: Rng + ?Sized>(rng: &mut R, mu: &UnitVector) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..mu.dim()).map(|_| StandardNormal.sample(rng)).collect();
        let along = dot(&v, mu.coords());
        for (vi, m) in v.iter_mut().zip(mu.coords()) {
            *vi -= along * m;
        }
        let norm = euclidean_norm(&v);
        if norm > 1e-10 {
            v.iter_mut().for_each(|vi| *vi /= norm);
            return v;
        }
    }
}

fn uniform_point<R: Rng + ?Sized>(rng: &mut R, q: usize) -> UnitVector {
    loop {
        let v: Vec<f64> = (0..q).map(|_| StandardNormal.sample(rng)).collect();
        if let Ok(u) = normalize(&v) {
            return u;
        }
    }
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    Ok(())
}

/// `n` i.i.d. draws from vMF(mu, kappa); `kappa == 0` gives the uniform law.
pub fn sample_vmf(params: &VmfParams, n: usize, seed: u64) -> Result<DirectionalSample> {
    check_count(n)?;
    if params.kappa == 0.0 {
        return sample_uniform(params.dim(), n, seed);
    }
    let mut rng = stream_rng(seed, streams::VMF);
    let kernel = VmfKernel::new(params);
    DirectionalSample::new((0..n).map(|_| kernel.draw(&mut rng)).collect())
}

/// `n` i.i.d. draws from a vMF mixture.
pub fn sample_mixture(params: &MixtureParams, n: usize, seed: u64) -> Result<DirectionalSample> {
    check_count(n)?;
    let mut rng = stream_rng(seed, streams::MIXTURE);
    let kernels: Vec<VmfKernel<'_>> = params.components.iter().map(VmfKernel::new).collect();
    let mut cumulative = Vec::with_capacity(params.weights.len());
    let mut acc = 0.0;
    for w in &params.weights {
        acc += w;
        cumulative.push(acc);
    }
    let points = (0..n)
        .map(|_| {
            let u: f64 = rng.random::<f64>() * acc;
            let idx = cumulative
                .iter()
                .zip(&params.weights)
                .position(|(c, w)| *w > 0.0 && u < *c)
                .unwrap_or_else(|| params.weights.iter().rposition(|w| *w > 0.0).unwrap_or(0));
            kernels[idx].draw(&mut rng)
        })
        .collect();
    DirectionalSample::new(points)
}

/// `n` uniform points on S^(q-1), as normalized Gaussian vectors.
pub fn sample_uniform(q: usize, n: usize, seed: u64) -> Result<DirectionalSample> {
    if q < 2 {
        return Err(Error::DimensionTooSmall(q));
    }
    check_count(n)?;
    let mut rng = stream_rng(seed, streams::UNIFORM);
    DirectionalSample::new((0..n).map(|_| uniform_point(&mut rng, q)).collect())
}

/// ln of the vMF normalizer `kappa^(q/2-1) / ((2 pi)^(q/2) I_(q/2-1)(kappa))`.
pub fn ln_vmf_normalizer(q: usize, kappa: f64) -> Result<f64> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::KappaNotPositive(kappa));
    }
    let half = q as f64 / 2.0;
    let nu = half - 1.0;
    Ok(nu * kappa.ln() - half * (2.0 * PI).ln() - ln_bessel_i(nu, kappa))
}

/// vMF density with respect to surface measure on S^(q-1).
pub fn vmf_density(x: &UnitVector, params: &VmfParams) -> Result<f64> {
    let t = x.dot(&params.mu)?;
    let ln_c = ln_vmf_normalizer(params.dim(), params.kappa)?;
    Ok((ln_c + params.kappa * t).exp())
}

/// Density of the uniform law, `1 / area(S^(q-1)) = Gamma(q/2) / (2 pi^(q/2))`.
pub fn uniform_density(q: usize) -> f64 {
    let half = q as f64 / 2.0;
    (ln_gamma(half) - 2f64.ln() - half * PI.ln()).exp()
}

/// Mixture density; zero-concentration components use [`uniform_density`].
pub fn mixture_density(x: &UnitVector, params: &MixtureParams) -> Result<f64> {
    let mut total = 0.0;
    for (c, w) in params.components.iter().zip(&params.weights) {
        let f = if c.kappa == 0.0 {
            check_dims(c.dim(), x.dim())?;
            uniform_density(c.dim())
        } else {
            vmf_density(x, c)?
        };
        total += w * f;
    }
    Ok(total)
}

/// Mean resultant length `A_q(kappa) = I_(q/2)(kappa) / I_(q/2-1)(kappa)`,
/// the expected cosine between a vMF draw and its mean direction.
pub fn bessel_ratio(q: usize, kappa: f64) -> Result<f64> {
    if q < 2 {
        return Err(Error::DimensionTooSmall(q));
    }
    if !(kappa >= 0.0 && kappa.is_finite()) {
        return Err(Error::InvalidKappa(kappa));
    }
    Ok(bessel_i_ratio(q as f64 / 2.0, kappa))
}

/// Length of the sample mean vector.
pub fn mean_resultant_length(sample: &DirectionalSample) -> f64 {
    euclidean_norm(&sample.mean_vector())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn e(q: usize, i: usize) -> UnitVector {
        UnitVector::basis(q, i).unwrap()
    }

    /// Independent power-series oracle for I_nu(x) / I_(nu-1)(x): the
    /// Gamma prefactors reduce to (x/2)/nu, leaving two normalized sums.
    fn series_ratio(nu: f64, x: f64) -> f64 {
        let sum = |order: f64| {
            let (mut term, mut total) = (1.0f64, 1.0f64);
            for k in 0..500 {
                let k = k as f64;
                term *= (x * x / 4.0) / ((k + 1.0) * (k + order + 1.0));
                total += term;
            }
            total
        };
        (x / 2.0) / nu * sum(nu) / sum(nu - 1.0)
    }

    #[test]
    fn bessel_ratio_examples() {
        for q in 2..7 {
            assert_eq!(bessel_ratio(q, 0.0).unwrap(), 0.0);
        }
        let a = bessel_ratio(2, 2.0).unwrap();
        assert_abs_diff_eq!(a, series_ratio(1.0, 2.0), epsilon = 1e-13);
        assert_abs_diff_eq!(a, 0.6978, epsilon = 5e-5);
        for q in [2, 3, 5, 10] {
            for kappa in [0.1, 0.5, 2.0, 5.0, 20.0, 40.0] {
                let want = series_ratio(q as f64 / 2.0, kappa);
                assert_abs_diff_eq!(bessel_ratio(q, kappa).unwrap(), want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn bessel_ratio_is_increasing_and_bounded() {
        for q in [2, 3, 5] {
            let mut prev = bessel_ratio(q, 0.0).unwrap();
            for k in 1..200 {
                let a = bessel_ratio(q, k as f64 * 0.5).unwrap();
                assert!(a > prev && a < 1.0, "q={q} kappa={}", k as f64 * 0.5);
                prev = a;
            }
        }
    }

    #[test]
    fn density_at_mode_on_circle() {
        // I_0(1) by its power series
        let i0: f64 = (0..30)
            .scan(1.0f64, |t, k| {
                let cur = *t;
                *t *= 0.25 / ((k as f64 + 1.0) * (k as f64 + 1.0));
                Some(cur)
            })
            .sum();
        let p = VmfParams::new(e(2, 0), 1.0).unwrap();
        let want = 1f64.exp() / (2.0 * PI * i0);
        assert_abs_diff_eq!(vmf_density(&e(2, 0), &p).unwrap(), want, epsilon = 1e-14);
        assert_abs_diff_eq!(want, 0.3417, epsilon = 1e-4);
    }

    #[test]
    fn density_integrates_to_one_on_circle() {
        let p = VmfParams::circular(0.7, 2.0).unwrap();
        let m = 100_000;
        let h = 2.0 * PI / m as f64;
        let total: f64 = (0..m).map(|k| vmf_density(&from_angle(k as f64 * h), &p).unwrap()).sum::<f64>() * h;
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn density_peaks_at_mean_direction() {
        let p = VmfParams::new(normalize(&[1.0, 2.0, -1.0]).unwrap(), 3.0).unwrap();
        let at_mu = vmf_density(&p.mu, &p).unwrap();
        for seed in 0..20 {
            let x = sample_uniform(3, 1, seed).unwrap().points()[0].clone();
            assert!(vmf_density(&x, &p).unwrap() < at_mu);
        }
        assert!(matches!(
            vmf_density(&p.mu, &VmfParams::new(p.mu.clone(), 0.0).unwrap()),
            Err(Error::KappaNotPositive(_))
        ));
    }

    #[test]
    fn uniform_density_constants() {
        assert_abs_diff_eq!(uniform_density(2), 1.0 / (2.0 * PI), epsilon = 1e-14);
        assert_abs_diff_eq!(uniform_density(3), 1.0 / (4.0 * PI), epsilon = 1e-14);
    }

    #[test]
    fn uniform_sampler_contracts() {
        let s = sample_uniform(4, 500, 3).unwrap();
        for p in s.iter() {
            assert_abs_diff_eq!(euclidean_norm(p.coords()), 1.0, epsilon = 1e-12);
        }
        assert_eq!(s, sample_uniform(4, 500, 3).unwrap());
        assert_ne!(s, sample_uniform(4, 500, 4).unwrap());
        // multinomial oracle: each quarter gets 0.25 with sd sqrt(0.1875/20000) ~ 0.003
        let circle = sample_uniform(2, 20_000, 11).unwrap();
        let mut quarters = [0usize; 4];
        for p in circle.iter() {
            quarters[((p.angle().unwrap() / (PI / 2.0)) as usize).min(3)] += 1;
        }
        for count in quarters {
            assert_abs_diff_eq!(count as f64 / 20_000.0, 0.25, epsilon = 0.01);
        }
        let s = sample_uniform(3, 10_000, 5).unwrap();
        assert!(mean_resultant_length(&s) < 0.05);
    }

    #[test]
    fn zero_concentration_is_uniform() {
        let p = VmfParams::new(e(3, 2), 0.0).unwrap();
        assert_eq!(sample_vmf(&p, 10, 8).unwrap(), sample_uniform(3, 10, 8).unwrap());
        assert!(mean_resultant_length(&sample_vmf(&p, 10_000, 1).unwrap()) < 0.05);
    }

    #[test]
    fn vmf_recovers_mean_direction_in_five_dimensions() {
        let mu = e(5, 0);
        let s = sample_vmf(&VmfParams::new(mu.clone(), 20.0).unwrap(), 250, 17).unwrap();
        let m = normalize(&s.mean_vector()).unwrap();
        let angle = m.cosine(&mu).unwrap().acos().to_degrees();
        assert!(angle < 5.0, "angle {angle}");
    }

    #[test]
    fn circular_mean_resultant_length_matches_ratio() {
        let s = sample_vmf(&VmfParams::circular(1.0, 2.0).unwrap(), 50_000, 2).unwrap();
        assert_abs_diff_eq!(mean_resultant_length(&s), bessel_ratio(2, 2.0).unwrap(), epsilon = 0.01);
    }

    #[test]
    fn sampling_is_reproducible() {
        let p = VmfParams::new(e(3, 1), 4.0).unwrap();
        assert_eq!(sample_vmf(&p, 100, 9).unwrap(), sample_vmf(&p, 100, 9).unwrap());
        assert_ne!(sample_vmf(&p, 100, 9).unwrap(), sample_vmf(&p, 100, 10).unwrap());
        assert_eq!(sample_vmf(&p, 1, 0).unwrap().len(), 1);
        assert_eq!(sample_vmf(&p, 0, 0), Err(Error::EmptySample));
    }

    #[test]
    fn mixture_weights_validation() {
        let a = VmfParams::new(e(3, 0), 1.0).unwrap();
        let b = VmfParams::new(e(3, 1), 1.0).unwrap();
        assert!(MixtureParams::new(vec![a.clone(), b.clone()], vec![0.5, 0.6]).is_err());
        assert!(MixtureParams::new(vec![a.clone(), b.clone()], vec![1.5, -0.5]).is_err());
        assert!(MixtureParams::new(vec![a.clone()], vec![0.5, 0.5]).is_err());
        assert!(MixtureParams::new(vec![a.clone(), VmfParams::new(e(2, 0), 1.0).unwrap()], vec![0.5, 0.5]).is_err());
        assert!(MixtureParams::new(vec![], vec![]).is_err());
        assert!(MixtureParams::equal(vec![a.clone(), b.clone(), a]).is_ok());
    }

    #[test]
    fn degenerate_mixture_only_uses_first_component() {
        let mu1 = e(3, 0);
        let mu2 = mu1.antipode();
        let mix = MixtureParams::new(
            vec![VmfParams::new(mu1.clone(), 50.0).unwrap(), VmfParams::new(mu2, 50.0).unwrap()],
            vec![1.0, 0.0],
        )
        .unwrap();
        let s = sample_mixture(&mix, 2000, 4).unwrap();
        assert!(s.iter().all(|p| p.cosine(&mu1).unwrap() > 0.0));
        let single = sample_vmf(&VmfParams::new(mu1, 50.0).unwrap(), 2000, 4).unwrap();
        assert_abs_diff_eq!(mean_resultant_length(&s), mean_resultant_length(&single), epsilon = 0.01);
    }

    fn five_dim_mixture(w1: f64) -> MixtureParams {
        MixtureParams::new(
            vec![VmfParams::new(e(5, 0), 20.0).unwrap(), VmfParams::new(e(5, 4), 20.0).unwrap()],
            vec![w1, 1.0 - w1],
        )
        .unwrap()
    }

    fn split_by_nearest(s: &DirectionalSample) -> (Vec<&UnitVector>, Vec<&UnitVector>) {
        let (e1, e5) = (e(5, 0), e(5, 4));
        s.iter().partition(|p| p.dot(&e1).unwrap() >= p.dot(&e5).unwrap())
    }

    #[test]
    fn balanced_mixture_forms_two_clusters() {
        let s = sample_mixture(&five_dim_mixture(0.5), 250, 21).unwrap();
        let (first, second) = split_by_nearest(&s);
        for (cluster, mu) in [(first, e(5, 0)), (second, e(5, 4))] {
            let mut acc = vec![0.0; 5];
            for p in &cluster {
                for (a, c) in acc.iter_mut().zip(p.coords()) {
                    *a += c;
                }
            }
            let angle = normalize(&acc).unwrap().cosine(&mu).unwrap().acos().to_degrees();
            assert!(angle < 10.0, "cluster angle {angle}");
        }
    }

    #[test]
    fn unbalanced_mixture_share() {
        let s = sample_mixture(&five_dim_mixture(0.8), 2000, 22).unwrap();
        let (first, _) = split_by_nearest(&s);
        assert_abs_diff_eq!(first.len() as f64 / 2000.0, 0.8, epsilon = 0.05);
    }
}
