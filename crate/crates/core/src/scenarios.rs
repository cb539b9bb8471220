//! Simulation scenarios behind the `repro` command.
//!
//! Five-dimensional GLD scenarios (n = 250) and circular depth-curve
//! scenarios. Each scenario draws with seed `base_seed + offset`, so one
//! base seed pins every artifact.

use std::f64::consts::PI;

use crate::depth::DirectionalSample;
use crate::error::Result;
use crate::geometry::UnitVector;
use crate::vmf::{mixture_density, sample_mixture, sample_vmf, vmf_density, MixtureParams, VmfParams};

/// Default base seed of `repro`.
pub const DEFAULT_BASE_SEED: u64 = 20_190;

/// Cosine-distance radii for 90, 60 and (rounded) 45 degree caps.
pub const COSINE_DELTAS: [f64; 3] = [1.0, 0.5, 0.29];

/// Sample size of the five-dimensional scenarios.
pub const GLD_SAMPLE_SIZE: usize = 250;

/// Sample size of the circular scenarios.
pub const CIRCULAR_SAMPLE_SIZE: usize = 1000;

/// Concentration of each component in the circular bimodal and antipodal scenarios.
pub const CIRCULAR_BIMODAL_KAPPA: f64 = 5.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Vmf(VmfParams),
    Mixture(MixtureParams),
}

impl Model {
    pub fn sample(&self, n: usize, seed: u64) -> Result<DirectionalSample> {
        match self {
            Model::Vmf(p) => sample_vmf(p, n, seed),
            Model::Mixture(p) => sample_mixture(p, n, seed),
        }
    }

    pub fn density(&self, x: &UnitVector) -> Result<f64> {
        match self {
            Model::Vmf(p) => vmf_density(x, p),
            Model::Mixture(p) => mixture_density(x, p),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Model::Vmf(p) => p.dim(),
            Model::Mixture(p) => p.dim(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    pub model: Model,
    pub n: usize,
    pub seed_offset: u64,
}

impl Scenario {
    pub fn seed(&self, base_seed: u64) -> u64 {
        base_seed.wrapping_add(self.seed_offset)
    }

    pub fn sample(&self, base_seed: u64) -> Result<DirectionalSample> {
        self.model.sample(self.n, self.seed(base_seed))
    }
}

fn e5(axis: usize) -> UnitVector {
    UnitVector::basis(5, axis).expect("axis < 5")
}

fn vmf5(axis: usize, kappa: f64) -> VmfParams {
    VmfParams::new(e5(axis), kappa).expect("valid kappa")
}

/// vMF with mu = e1 in five dimensions.
pub fn unimodal_5d(kappa: f64) -> Model {
    Model::Vmf(vmf5(0, kappa))
}

/// Two kappa = 20 components at e1 and e5, weight `w1` on the first.
pub fn bimodal_5d(w1: f64) -> Model {
    Model::Mixture(MixtureParams::new(vec![vmf5(0, 20.0), vmf5(4, 20.0)], vec![w1, 1.0 - w1]).expect("valid weights"))
}

/// Equal-weight mixture of two circular vMF laws with the given mean angles.
pub fn circular_pair(theta1: f64, theta2: f64, kappa: f64) -> Model {
    Model::Mixture(
        MixtureParams::equal(vec![
            VmfParams::circular(theta1, kappa).expect("valid kappa"),
            VmfParams::circular(theta2, kappa).expect("valid kappa"),
        ])
        .expect("valid weights"),
    )
}

/// The four five-dimensional GLD scenarios.
pub fn gld_scenarios() -> Vec<Scenario> {
    vec![
        Scenario {
            name: "vmf5_k5",
            description: "vMF on S^4, mu = e1, kappa = 5",
            model: unimodal_5d(5.0),
            n: GLD_SAMPLE_SIZE,
            seed_offset: 0,
        },
        Scenario {
            name: "vmf5_k20",
            description: "vMF on S^4, mu = e1, kappa = 20",
            model: unimodal_5d(20.0),
            n: GLD_SAMPLE_SIZE,
            seed_offset: 1,
        },
        Scenario {
            name: "mix5_balanced",
            description: "equal-weight vMF mixture on S^4, mu = e1 and e5, kappa = 20",
            model: bimodal_5d(0.5),
            n: GLD_SAMPLE_SIZE,
            seed_offset: 2,
        },
        Scenario {
            name: "mix5_80_20",
            description: "80/20 vMF mixture on S^4, mu = e1 and e5, kappa = 20",
            model: bimodal_5d(0.8),
            n: GLD_SAMPLE_SIZE,
            seed_offset: 3,
        },
    ]
}

/// The four circular depth-curve scenarios.
pub fn circular_scenarios() -> Vec<Scenario> {
    let mixture = MixtureParams::equal(vec![
        VmfParams::circular(PI, 0.5).expect("valid kappa"),
        VmfParams::circular(1.5 * PI, 5.0).expect("valid kappa"),
    ])
    .expect("valid weights");
    vec![
        Scenario {
            name: "circle_unimodal",
            description: "vMF(pi, 2) on the circle",
            model: Model::Vmf(VmfParams::circular(PI, 2.0).expect("valid kappa")),
            n: CIRCULAR_SAMPLE_SIZE,
            seed_offset: 10,
        },
        Scenario {
            name: "circle_asymmetric",
            description: "1/2 vMF(pi, 0.5) + 1/2 vMF(3pi/2, 5) on the circle",
            model: Model::Mixture(mixture),
            n: CIRCULAR_SAMPLE_SIZE,
            seed_offset: 11,
        },
        Scenario {
            name: "circle_bimodal_105",
            description: "1/2 vMF(pi/2, 5) + 1/2 vMF(pi/2 + 7pi/12, 5) on the circle",
            model: circular_pair(PI / 2.0, PI / 2.0 + 7.0 * PI / 12.0, CIRCULAR_BIMODAL_KAPPA),
            n: CIRCULAR_SAMPLE_SIZE,
            seed_offset: 12,
        },
        Scenario {
            name: "circle_antipodal",
            description: "1/2 vMF(pi/4, 5) + 1/2 vMF(5pi/4, 5) on the circle",
            model: circular_pair(PI / 4.0, 1.25 * PI, CIRCULAR_BIMODAL_KAPPA),
            n: CIRCULAR_SAMPLE_SIZE,
            seed_offset: 13,
        },
    ]
}
