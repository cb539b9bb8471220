use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use gldepth::io::{
    curve_csv_string, depth_csv_string, format_number, parse_latlon_csv, parse_unit_csv, unit_csv_string, write_atomic,
};
use gldepth::scenarios::{circular_scenarios, gld_scenarios, COSINE_DELTAS};
use gldepth::{
    build_gld, cap_angle_from_radius, cap_radius_from_angle, circle_grid, depth_curve, depth_profile, from_angle,
    render_svg, sample_uniform, DepthConfig, DirectionalSample, DistanceKind, GldData, RenderOptions,
};
use serde::Serialize;

use crate::args::{CurveArgs, DepthArgs, Format, GldplotArgs, ReproArgs, SimulateArgs};
use crate::config::{resolve_depth, resolve_generator, resolve_input, GenModel, Generated, Problems, Source};

const CURVE_GRID: usize = 360;

fn generate(g: &Generated) -> Result<DirectionalSample> {
    Ok(match &g.model {
        GenModel::Model(m) => m.sample(g.n, g.seed)?,
        GenModel::Uniform { q } => sample_uniform(*q, g.n, g.seed)?,
    })
}

fn load(source: &Source) -> Result<DirectionalSample> {
    match source {
        Source::File { path, format: Format::Unit } => Ok(parse_unit_csv(path)?),
        Source::File { path, format: Format::Latlon } => Ok(parse_latlon_csv(path)?),
        Source::Generated(g) => generate(g),
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    write_atomic(path, contents.as_bytes())?;
    println!("wrote {}", path.display());
    Ok(())
}

/// JSON summary: run parameters followed by the GLD fields.
#[derive(Debug, Serialize)]
pub struct GldSummary<'a> {
    pub distance: &'static str,
    pub delta: f64,
    pub cap_angle_deg: f64,
    pub n: usize,
    pub include_self: bool,
    #[serde(flatten)]
    pub gld: &'a GldData,
}

fn summary_json(config: &DepthConfig, delta: f64, gld: &GldData) -> Result<String> {
    let summary = GldSummary {
        distance: config.kind.name(),
        delta,
        cap_angle_deg: cap_angle_from_radius(config.kind, delta)?.to_degrees(),
        n: gld.len(),
        include_self: config.include_self,
        gld,
    };
    let mut s = serde_json::to_string_pretty(&summary)?;
    s.push('\n');
    Ok(s)
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let mut problems = Problems::default();
    let generated = resolve_generator(&args.generator, &mut problems);
    let generated = problems.finish(generated)?;
    write(&args.out, &unit_csv_string(&generate(&generated)?))
}

pub fn depth(args: &DepthArgs) -> Result<()> {
    let mut problems = Problems::default();
    let source = resolve_input(&args.input, &mut problems);
    let config = resolve_depth(&args.depth, true, &mut problems);
    let (source, config) = problems.finish(source.zip(config))?;
    let sample = load(&source)?;
    let profile = depth_profile(&sample, &config)?;
    write(&args.out, &depth_csv_string(&profile)?)
}

pub fn gldplot(args: &GldplotArgs) -> Result<()> {
    let mut problems = Problems::default();
    let source = resolve_input(&args.input, &mut problems);
    let config = resolve_depth(&args.depth, true, &mut problems);
    if args.svg.is_none() && args.json.is_none() {
        problems.push("at least one of --svg or --json is required");
    }
    let (source, config) = problems.finish(source.zip(config))?;
    let sample = load(&source)?;
    let gld = build_gld(&sample, &config)?;
    let delta = config.delta.expect("resolved with a radius");
    if let Some(path) = &args.svg {
        let options = RenderOptions {
            show_diagonal: args.diagonal,
            title: args
                .title
                .clone()
                .unwrap_or_else(|| format!("GLD-plot, {} delta = {}", config.kind, format_number(delta))),
            ..RenderOptions::default()
        };
        write(path, &render_svg(&gld, &options)?)?;
    }
    if let Some(path) = &args.json {
        write(path, &summary_json(&config, delta, &gld)?)?;
    }
    Ok(())
}

pub fn curve(args: &CurveArgs) -> Result<()> {
    let mut problems = Problems::default();
    let source = resolve_input(&args.input, &mut problems);
    let config = resolve_depth(&args.depth, false, &mut problems);
    if args.depth.leave_one_out {
        problems.push("--leave-one-out does not apply to curves, which are evaluated at grid angles");
    }
    if args.grid < 8 {
        problems.push(format!("--grid must be at least 8, got {}", args.grid));
    }
    let (source, config) = problems.finish(source.zip(config))?;
    let sample = load(&source)?;
    let angles = circle_grid(args.grid);
    let values = |delta| -> Result<Vec<f64>> {
        Ok(depth_curve(&sample, config.kind, delta, args.grid)?.into_iter().map(|(_, d)| d).collect())
    };
    let mut series = vec![("global", values(None)?)];
    if let Some(delta) = config.delta {
        series.push(("local", values(Some(delta))?));
    }
    write(&args.out, &curve_csv_string(&angles, &series))
}

#[derive(Debug, Serialize)]
struct ManifestEntry {
    name: &'static str,
    description: &'static str,
    n: usize,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct Manifest {
    base_seed: u64,
    cosine_deltas: Vec<f64>,
    circular_cap_angle_deg: f64,
    gld_scenarios: Vec<ManifestEntry>,
    circular_scenarios: Vec<ManifestEntry>,
}

pub fn repro(args: &ReproArgs) -> Result<()> {
    let dir = &args.out_dir;
    fs::create_dir_all(dir).with_context(|| format!("{}: cannot create directory", dir.display()))?;
    let entry = |s: &gldepth::scenarios::Scenario| ManifestEntry {
        name: s.name,
        description: s.description,
        n: s.n,
        seed: s.seed(args.seed),
    };

    let mut summary = String::from("scenario,seed,n,delta,spearman_rho,concordance,slope,ur,ul,ll,lr\n");
    let gld_set = gld_scenarios();
    for sc in &gld_set {
        let sample = sc.sample(args.seed)?;
        write(&dir.join(format!("{}_sample.csv", sc.name)), &unit_csv_string(&sample))?;
        for delta in COSINE_DELTAS {
            let config = DepthConfig::local(DistanceKind::Cosine, delta)?;
            let gld = build_gld(&sample, &config)?;
            let tag = format_number(delta);
            let options =
                RenderOptions { title: format!("{}, cosine delta = {tag}", sc.name), ..RenderOptions::default() };
            write(&dir.join(format!("{}_d{tag}.svg", sc.name)), &render_svg(&gld, &options)?)?;
            write(&dir.join(format!("{}_d{tag}.json", sc.name)), &summary_json(&config, delta, &gld)?)?;
            let q = &gld.quadrant_counts;
            summary.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                sc.name,
                sc.seed(args.seed),
                sc.n,
                tag,
                format_number(gld.spearman_rho),
                format_number(gld.concordance),
                gld.slope.map(format_number).unwrap_or_default(),
                q.ur,
                q.ul,
                q.ll,
                q.lr
            ));
        }
    }
    write(&dir.join("gld_summary.csv"), &summary)?;

    let circ_set = circular_scenarios();
    let angles = circle_grid(CURVE_GRID);
    for sc in &circ_set {
        let sample = sc.sample(args.seed)?;
        write(&dir.join(format!("{}_sample.csv", sc.name)), &unit_csv_string(&sample))?;
        let density = angles.iter().map(|a| sc.model.density(&from_angle(*a))).collect::<Result<Vec<_>, _>>()?;
        let mut series = vec![("density".to_string(), density)];
        for kind in DistanceKind::ALL {
            let delta = cap_radius_from_angle(kind, PI / 2.0)?;
            let strip = |c: Vec<(f64, f64)>| c.into_iter().map(|(_, d)| d).collect::<Vec<_>>();
            series.push((format!("global_{kind}"), strip(depth_curve(&sample, kind, None, CURVE_GRID)?)));
            series.push((format!("local_{kind}"), strip(depth_curve(&sample, kind, Some(delta), CURVE_GRID)?)));
        }
        let named: Vec<(&str, Vec<f64>)> = series.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
        write(&dir.join(format!("{}_curve.csv", sc.name)), &curve_csv_string(&angles, &named))?;
    }

    let manifest = Manifest {
        base_seed: args.seed,
        cosine_deltas: COSINE_DELTAS.to_vec(),
        circular_cap_angle_deg: 90.0,
        gld_scenarios: gld_set.iter().map(entry).collect(),
        circular_scenarios: circ_set.iter().map(entry).collect(),
    };
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    write(&dir.join("manifest.json"), &json)
}
