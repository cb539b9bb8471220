//! Python bindings for `gldepth`.
//!
//! Samples cross the boundary as lists of unit-norm rows; distances are
//! named by string (`"arc"`, `"cosine"`, `"chord"`).

use gldepth::scenarios::Model;
use gldepth::{
    DepthConfig, DirectionalSample, DistanceKind, GldData, MixtureParams, RenderOptions, UnitVector, VmfParams,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn kind(name: &str) -> PyResult<DistanceKind> {
    name.parse().map_err(value_err)
}

fn unit(coords: Vec<f64>) -> PyResult<UnitVector> {
    UnitVector::new(coords).map_err(value_err)
}

fn sample(rows: Vec<Vec<f64>>) -> PyResult<DirectionalSample> {
    DirectionalSample::from_rows(rows).map_err(value_err)
}

fn rows(sample: &DirectionalSample) -> Vec<Vec<f64>> {
    sample.iter().map(|x| x.coords().to_vec()).collect()
}

/// Rescales a nonzero vector to unit length.
#[pyfunction]
fn normalize(raw: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(gldepth::normalize(&raw).map_err(value_err)?.coords().to_vec())
}

#[pyfunction]
fn distance(kind_name: &str, x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    gldepth::distance(kind(kind_name)?, &unit(x)?, &unit(y)?).map_err(value_err)
}

#[pyfunction]
fn sup_distance(kind_name: &str) -> PyResult<f64> {
    Ok(gldepth::sup_distance(kind(kind_name)?))
}

/// Cap radius for an angular radius given in degrees.
#[pyfunction]
fn cap_radius(kind_name: &str, angle_deg: f64) -> PyResult<f64> {
    gldepth::cap_radius_from_angle(kind(kind_name)?, angle_deg.to_radians()).map_err(value_err)
}

#[pyfunction]
fn from_latlon(lat_deg: f64, lon_deg: f64) -> PyResult<Vec<f64>> {
    Ok(gldepth::from_latlon(lat_deg, lon_deg).map_err(value_err)?.coords().to_vec())
}

#[pyfunction]
fn global_depth(x: Vec<f64>, sample_rows: Vec<Vec<f64>>, kind_name: &str) -> PyResult<f64> {
    gldepth::global_depth(&unit(x)?, &sample(sample_rows)?, kind(kind_name)?).map_err(value_err)
}

#[pyfunction]
fn local_depth(x: Vec<f64>, sample_rows: Vec<Vec<f64>>, kind_name: &str, delta: f64) -> PyResult<f64> {
    gldepth::local_depth(&unit(x)?, &sample(sample_rows)?, kind(kind_name)?, delta).map_err(value_err)
}

#[pyfunction]
fn expectation_gap(x: Vec<f64>, sample_rows: Vec<Vec<f64>>, kind_name: &str, delta: f64) -> PyResult<f64> {
    gldepth::expectation_gap(&unit(x)?, &sample(sample_rows)?, kind(kind_name)?, delta).map_err(value_err)
}

/// Global and local depth of every sample point, as two lists.
#[pyfunction]
#[pyo3(signature = (sample_rows, kind_name, delta, include_self = true))]
fn depth_profile(
    py: Python<'_>,
    sample_rows: Vec<Vec<f64>>,
    kind_name: &str,
    delta: f64,
    include_self: bool,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let s = sample(sample_rows)?;
    let config = DepthConfig::new(kind(kind_name)?, Some(delta), include_self).map_err(value_err)?;
    let profile = py.detach(|| gldepth::depth_profile(&s, &config)).map_err(value_err)?;
    Ok((profile.global, profile.local))
}

/// `(angle, depth)` pairs on an equispaced grid; global depth when `delta` is None.
#[pyfunction]
#[pyo3(signature = (sample_rows, kind_name, delta = None, grid = 360))]
fn depth_curve(
    py: Python<'_>,
    sample_rows: Vec<Vec<f64>>,
    kind_name: &str,
    delta: Option<f64>,
    grid: usize,
) -> PyResult<Vec<(f64, f64)>> {
    let s = sample(sample_rows)?;
    let k = kind(kind_name)?;
    py.detach(|| gldepth::depth_curve(&s, k, delta, grid)).map_err(value_err)
}

#[pyfunction]
fn sample_vmf(mu: Vec<f64>, kappa: f64, n: usize, seed: u64) -> PyResult<Vec<Vec<f64>>> {
    let params = VmfParams::new(unit(mu)?, kappa).map_err(value_err)?;
    Ok(rows(&gldepth::sample_vmf(&params, n, seed).map_err(value_err)?))
}

fn mixture(components: Vec<(f64, f64, Vec<f64>)>) -> PyResult<MixtureParams> {
    let mut weights = Vec::with_capacity(components.len());
    let mut params = Vec::with_capacity(components.len());
    for (w, kappa, mu) in components {
        weights.push(w);
        params.push(VmfParams::new(unit(mu)?, kappa).map_err(value_err)?);
    }
    MixtureParams::new(params, weights).map_err(value_err)
}

/// Draws from a mixture given as `[(weight, kappa, mu), ...]`.
#[pyfunction]
fn sample_mixture(components: Vec<(f64, f64, Vec<f64>)>, n: usize, seed: u64) -> PyResult<Vec<Vec<f64>>> {
    Ok(rows(&gldepth::sample_mixture(&mixture(components)?, n, seed).map_err(value_err)?))
}

#[pyfunction]
fn sample_uniform(q: usize, n: usize, seed: u64) -> PyResult<Vec<Vec<f64>>> {
    Ok(rows(&gldepth::sample_uniform(q, n, seed).map_err(value_err)?))
}

#[pyfunction]
fn vmf_density(x: Vec<f64>, mu: Vec<f64>, kappa: f64) -> PyResult<f64> {
    let params = VmfParams::new(unit(mu)?, kappa).map_err(value_err)?;
    gldepth::vmf_density(&unit(x)?, &params).map_err(value_err)
}

#[pyfunction]
fn mixture_density(x: Vec<f64>, components: Vec<(f64, f64, Vec<f64>)>) -> PyResult<f64> {
    Model::Mixture(mixture(components)?).density(&unit(x)?).map_err(value_err)
}

#[pyfunction]
fn bessel_ratio(q: usize, kappa: f64) -> PyResult<f64> {
    gldepth::bessel_ratio(q, kappa).map_err(value_err)
}

#[pyfunction]
fn mean_resultant_length(sample_rows: Vec<Vec<f64>>) -> PyResult<f64> {
    Ok(gldepth::mean_resultant_length(&sample(sample_rows)?))
}

/// A GLD-plot: normalized (global, local) depth pairs with their summary.
#[pyclass(frozen, module = "pygldepth")]
struct GldPlot {
    data: GldData,
}

#[pymethods]
impl GldPlot {
    #[new]
    #[pyo3(signature = (sample_rows, kind_name, delta, include_self = true))]
    fn new(
        py: Python<'_>,
        sample_rows: Vec<Vec<f64>>,
        kind_name: &str,
        delta: f64,
        include_self: bool,
    ) -> PyResult<Self> {
        let s = sample(sample_rows)?;
        let config = DepthConfig::new(kind(kind_name)?, Some(delta), include_self).map_err(value_err)?;
        let data = py.detach(|| gldepth::build_gld(&s, &config)).map_err(value_err)?;
        Ok(GldPlot { data })
    }

    #[getter]
    fn points(&self) -> Vec<(f64, f64)> {
        self.data.points.clone()
    }

    #[getter]
    fn g_median(&self) -> f64 {
        self.data.g_median
    }

    #[getter]
    fn l_median(&self) -> f64 {
        self.data.l_median
    }

    #[getter]
    fn slope(&self) -> Option<f64> {
        self.data.slope
    }

    #[getter]
    fn concordance(&self) -> f64 {
        self.data.concordance
    }

    #[getter]
    fn spearman_rho(&self) -> f64 {
        self.data.spearman_rho
    }

    #[getter]
    fn degenerate(&self) -> bool {
        self.data.degenerate
    }

    /// Counts as `(upper_right, upper_left, lower_left, lower_right)`.
    #[getter]
    fn quadrants(&self) -> (usize, usize, usize, usize) {
        let q = &self.data.quadrant_counts;
        (q.ur, q.ul, q.ll, q.lr)
    }

    fn __len__(&self) -> usize {
        self.data.len()
    }

    fn to_json(&self) -> String {
        self.data.to_json()
    }

    #[pyo3(signature = (width = 480, height = 480, diagonal = false, title = None))]
    fn to_svg(&self, width: u32, height: u32, diagonal: bool, title: Option<String>) -> PyResult<String> {
        let defaults = RenderOptions::default();
        let options = RenderOptions {
            width,
            height,
            show_diagonal: diagonal,
            title: title.unwrap_or(defaults.title.clone()),
            ..defaults
        };
        gldepth::render_svg(&self.data, &options).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "GldPlot(n={}, spearman_rho={:.4}, concordance={:.4})",
            self.data.len(),
            self.data.spearman_rho,
            self.data.concordance
        )
    }
}

#[pymodule]
fn pygldepth(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<GldPlot>()?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(sup_distance, m)?)?;
    m.add_function(wrap_pyfunction!(cap_radius, m)?)?;
    m.add_function(wrap_pyfunction!(from_latlon, m)?)?;
    m.add_function(wrap_pyfunction!(global_depth, m)?)?;
    m.add_function(wrap_pyfunction!(local_depth, m)?)?;
    m.add_function(wrap_pyfunction!(expectation_gap, m)?)?;
    m.add_function(wrap_pyfunction!(depth_profile, m)?)?;
    m.add_function(wrap_pyfunction!(depth_curve, m)?)?;
    m.add_function(wrap_pyfunction!(sample_vmf, m)?)?;
    m.add_function(wrap_pyfunction!(sample_mixture, m)?)?;
    m.add_function(wrap_pyfunction!(sample_uniform, m)?)?;
    m.add_function(wrap_pyfunction!(vmf_density, m)?)?;
    m.add_function(wrap_pyfunction!(mixture_density, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(mean_resultant_length, m)?)?;
    Ok(())
}
