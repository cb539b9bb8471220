//! Flag validation. Every problem is collected before anything runs so a
//! bad invocation reports all of them at once.

use std::fmt;
use std::path::PathBuf;

use gldepth::scenarios::Model;
use gldepth::{
    cap_radius_from_angle, from_angle, normalize, DepthConfig, DistanceKind, MixtureParams, UnitVector, VmfParams,
};

use crate::args::{DepthOptions, Format, Generator, GeneratorArgs, InputArgs};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub Vec<String>);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid arguments: {}", self.0.join("; "))
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone)]
pub enum GenModel {
    Model(Model),
    Uniform { q: usize },
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub model: GenModel,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub enum Source {
    File { path: PathBuf, format: Format },
    Generated(Generated),
}

/// Collects problems; `finish` turns them into an error if any were seen.
#[derive(Debug, Default)]
pub struct Problems(Vec<String>);

impl Problems {
    pub fn push(&mut self, msg: impl Into<String>) {
        self.0.push(msg.into());
    }

    pub fn finish<T>(self, value: Option<T>) -> Result<T, ConfigError> {
        match value {
            Some(v) if self.0.is_empty() => Ok(v),
            _ if self.0.is_empty() => Err(ConfigError(vec!["incomplete configuration".into()])),
            _ => Err(ConfigError(self.0)),
        }
    }
}

/// Parses `--mu`: a coordinate list, or a single angle in degrees on the circle.
fn parse_direction(text: &str, q: Option<usize>, what: &str, problems: &mut Problems) -> Option<UnitVector> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let mut values = Vec::with_capacity(parts.len());
    for p in &parts {
        match p.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            _ => {
                problems.push(format!("{what}: '{p}' is not a finite number"));
                return None;
            }
        }
    }
    if values.len() == 1 {
        if q.is_some_and(|q| q != 2) {
            problems.push(format!("{what}: a single angle is only meaningful for q = 2"));
            return None;
        }
        return Some(from_angle(values[0].to_radians()));
    }
    if let Some(q) = q {
        if values.len() != q {
            problems.push(format!("{what}: has {} coordinates but q = {q}", values.len()));
            return None;
        }
    }
    match normalize(&values) {
        Ok(u) => Some(u),
        Err(e) => {
            problems.push(format!("{what}: {e}"));
            None
        }
    }
}

fn resolve_q(args: &GeneratorArgs, problems: &mut Problems) -> Option<usize> {
    match args.q {
        Some(q) if q < 2 => {
            problems.push(format!("--q must be at least 2, got {q}"));
            None
        }
        q => q,
    }
}

fn resolve_vmf(args: &GeneratorArgs, q: Option<usize>, problems: &mut Problems) -> Option<Model> {
    if !args.components.is_empty() {
        problems.push("--component is only valid with --gen mixture");
    }
    let kappa = match args.kappa {
        None => {
            problems.push("--gen vmf requires --kappa");
            None
        }
        Some(k) if !(k >= 0.0 && k.is_finite()) => {
            problems.push(format!("--kappa must be non-negative and finite, got {k}"));
            None
        }
        k => k,
    };
    let mu = match (&args.mu, q) {
        (Some(text), q) => parse_direction(text, q, "--mu", problems),
        (None, Some(q)) => UnitVector::basis(q, 0).ok(),
        (None, None) => {
            problems.push("--gen vmf requires --q or --mu");
            None
        }
    };
    match VmfParams::new(mu?, kappa?) {
        Ok(p) => Some(Model::Vmf(p)),
        Err(e) => {
            problems.push(format!("--kappa: {e}"));
            None
        }
    }
}

fn parse_component(text: &str, q: Option<usize>, problems: &mut Problems) -> Option<(f64, VmfParams)> {
    let what = format!("--component '{text}'");
    let fields: Vec<&str> = text.splitn(3, ':').collect();
    if fields.len() != 3 {
        problems.push(format!("{what}: expected WEIGHT:KAPPA:MU"));
        return None;
    }
    let weight = fields[0].trim().parse::<f64>().ok().or_else(|| {
        problems.push(format!("{what}: bad weight '{}'", fields[0]));
        None
    });
    let kappa = fields[1].trim().parse::<f64>().ok().or_else(|| {
        problems.push(format!("{what}: bad kappa '{}'", fields[1]));
        None
    });
    let mu = parse_direction(fields[2], q, &what, problems);
    match VmfParams::new(mu?, kappa?) {
        Ok(p) => Some((weight?, p)),
        Err(e) => {
            problems.push(format!("{what}: {e}"));
            None
        }
    }
}

fn resolve_mixture(args: &GeneratorArgs, q: Option<usize>, problems: &mut Problems) -> Option<Model> {
    if args.kappa.is_some() || args.mu.is_some() {
        problems.push("--kappa and --mu are not used by --gen mixture; give each --component instead");
    }
    if args.components.is_empty() {
        problems.push("--gen mixture requires at least one --component");
        return None;
    }
    let parsed: Vec<_> = args.components.iter().map(|c| parse_component(c, q, problems)).collect();
    let parsed: Option<Vec<_>> = parsed.into_iter().collect();
    let (weights, components): (Vec<f64>, Vec<VmfParams>) = parsed?.into_iter().unzip();
    match MixtureParams::new(components, weights) {
        Ok(p) => Some(Model::Mixture(p)),
        Err(e) => {
            problems.push(format!("--component: {e}"));
            None
        }
    }
}

pub fn resolve_generator(args: &GeneratorArgs, problems: &mut Problems) -> Option<Generated> {
    let Some(generator) = args.generator else {
        problems.push("--gen is required");
        return None;
    };
    let q = resolve_q(args, problems);
    let n = match args.n {
        Some(0) => {
            problems.push("--n must be positive");
            None
        }
        None => {
            problems.push("--n is required with --gen");
            None
        }
        n => n,
    };
    let model = match generator {
        Generator::Vmf => resolve_vmf(args, q, problems).map(GenModel::Model),
        Generator::Mixture => resolve_mixture(args, q, problems).map(GenModel::Model),
        Generator::Uniform => {
            if args.kappa.is_some() || args.mu.is_some() || !args.components.is_empty() {
                problems.push("--gen uniform takes only --q, --n and --seed");
            }
            if args.q.is_none() {
                problems.push("--gen uniform requires --q");
            }
            q.map(|q| GenModel::Uniform { q })
        }
    };
    Some(Generated { model: model?, n: n?, seed: args.seed })
}

pub fn resolve_input(args: &InputArgs, problems: &mut Problems) -> Option<Source> {
    let g = &args.generator;
    match (&args.input, g.generator) {
        (Some(_), Some(_)) => {
            problems.push("--in and --gen are mutually exclusive");
            None
        }
        (None, None) => {
            problems.push("one of --in or --gen is required");
            None
        }
        (Some(path), None) => {
            let stray: Vec<&str> = [
                ("--q", g.q.is_some()),
                ("--kappa", g.kappa.is_some()),
                ("--mu", g.mu.is_some()),
                ("--component", !g.components.is_empty()),
                ("--n", g.n.is_some()),
            ]
            .into_iter()
            .filter_map(|(flag, set)| set.then_some(flag))
            .collect();
            if !stray.is_empty() {
                problems.push(format!("{} only apply with --gen", stray.join(", ")));
            }
            Some(Source::File { path: path.clone(), format: args.format })
        }
        (None, Some(_)) => {
            if args.format != Format::Unit {
                problems.push("--format only applies with --in");
            }
            resolve_generator(g, problems).map(Source::Generated)
        }
    }
}

/// Resolves distance and radius. With `require_delta` one of `--delta` and
/// `--cap-angle` must be present.
pub fn resolve_depth(opts: &DepthOptions, require_delta: bool, problems: &mut Problems) -> Option<DepthConfig> {
    let kind = DistanceKind::from(opts.dist);
    let delta = match (opts.delta, opts.cap_angle) {
        (Some(_), Some(_)) => {
            problems.push("--delta and --cap-angle are mutually exclusive");
            return None;
        }
        (None, None) if require_delta => {
            problems.push("one of --delta or --cap-angle is required");
            return None;
        }
        (None, None) => None,
        (Some(d), None) => Some(d),
        (None, Some(deg)) => match cap_radius_from_angle(kind, deg.to_radians()) {
            Ok(d) if deg < 180.0 => Some(d),
            _ => {
                problems.push(format!("--cap-angle must lie strictly between 0 and 180 degrees, got {deg}"));
                return None;
            }
        },
    };
    match DepthConfig::new(kind, delta, !opts.leave_one_out) {
        Ok(c) => Some(c),
        Err(e) => {
            problems.push(format!("--delta: {e}"));
            None
        }
    }
}
