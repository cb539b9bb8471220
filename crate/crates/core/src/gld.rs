//! Global-versus-local depth (GLD) plots.
//!
//! Each sample point is placed at (normalized global depth, normalized local
//! depth). Dashed lines at the two axis medians split the square into four
//! quadrants; under unimodality most points fall in the upper-right and
//! lower-left ones. A line through the origin with slope
//! `l_median / g_median` completes the plot.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::depth::{depth_profile, DepthConfig, DepthProfile, DirectionalSample};
use crate::error::{Error, Result};

/// Axes whose raw range is below this are treated as constant.
pub const DEGENERATE_RANGE: f64 = 1e-12;

/// Min-max scaled values and whether the input was constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub values: Vec<f64>,
    pub degenerate: bool,
}

/// Scales `values` onto [0, 1]. A constant input maps to 0.5 everywhere and
/// is flagged degenerate.
pub fn normalize_depths(values: &[f64]) -> Result<Normalized> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    let range = hi - lo;
    if range < DEGENERATE_RANGE {
        return Ok(Normalized { values: vec![0.5; values.len()], degenerate: true });
    }
    Ok(Normalized { values: values.iter().map(|v| ((v - lo) / range).clamp(0.0, 1.0)).collect(), degenerate: false })
}

/// Median; the mean of the two central order statistics for even length.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    Ok(if n % 2 == 1 { sorted[n / 2] } else { 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]) })
}

/// Ranks 1..=n, ties sharing their average rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Spearman's rho (Pearson correlation of average ranks). Zero when either
/// input is constant.
pub fn spearman_rho(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let (ra, rb) = (average_ranks(a), average_ranks(b));
    let n = ra.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / n, rb.iter().sum::<f64>() / n);
    let (mut cov, mut va, mut vb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    if va == 0.0 || vb == 0.0 {
        return 0.0;
    }
    (cov / (va * vb).sqrt()).clamp(-1.0, 1.0)
}

/// Point counts per median quadrant. A point on a median line counts
/// toward the upper/right side.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadrants {
    pub ur: usize,
    pub ul: usize,
    pub ll: usize,
    pub lr: usize,
}

impl Quadrants {
    pub fn total(&self) -> usize {
        self.ur + self.ul + self.ll + self.lr
    }

    fn add(&mut self, right: bool, upper: bool) {
        match (right, upper) {
            (true, true) => self.ur += 1,
            (false, true) => self.ul += 1,
            (false, false) => self.ll += 1,
            (true, false) => self.lr += 1,
        }
    }
}

/// Everything needed to draw and summarize a GLD-plot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GldData {
    /// (global, local) normalized coordinates, in sample order.
    pub points: Vec<(f64, f64)>,
    pub g_median: f64,
    pub l_median: f64,
    /// `l_median / g_median`; `None` when `g_median` is zero.
    pub slope: Option<f64>,
    #[serde(rename = "quadrants")]
    pub quadrant_counts: Quadrants,
    /// Fraction of points in the upper-right or lower-left quadrant.
    pub concordance: f64,
    pub spearman_rho: f64,
    /// Either axis was constant before normalization.
    pub degenerate: bool,
    #[serde(skip)]
    pub global_degenerate: bool,
    #[serde(skip)]
    pub local_degenerate: bool,
}

impl GldData {
    /// Builds the plot data from paired normalized coordinates.
    pub fn from_normalized(global: &Normalized, local: &Normalized) -> Result<Self> {
        if global.values.len() != local.values.len() {
            return Err(Error::DimensionMismatch { expected: global.values.len(), found: local.values.len() });
        }
        let g_median = median(&global.values)?;
        let l_median = median(&local.values)?;
        let mut quadrant_counts = Quadrants::default();
        for (g, l) in global.values.iter().zip(&local.values) {
            quadrant_counts.add(*g >= g_median, *l >= l_median);
        }
        let n = global.values.len() as f64;
        Ok(GldData {
            points: global.values.iter().copied().zip(local.values.iter().copied()).collect(),
            g_median,
            l_median,
            slope: (g_median > 0.0).then(|| l_median / g_median),
            quadrant_counts,
            concordance: (quadrant_counts.ur + quadrant_counts.ll) as f64 / n,
            spearman_rho: spearman_rho(&global.values, &local.values),
            degenerate: global.degenerate || local.degenerate,
            global_degenerate: global.degenerate,
            local_degenerate: local.degenerate,
        })
    }

    pub fn from_profile(profile: &DepthProfile) -> Result<Self> {
        Self::from_normalized(&normalize_depths(&profile.global)?, &normalize_depths(&profile.local)?)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("GldData is always serializable")
    }
}

/// Depth profile of `sample` turned into GLD-plot data. Needs `n >= 4`.
pub fn build_gld(sample: &DirectionalSample, config: &DepthConfig) -> Result<GldData> {
    if sample.len() < 4 {
        return Err(Error::TooFewPoints { needed: 4, found: sample.len() });
    }
    GldData::from_profile(&depth_profile(sample, config)?)
}

/// Quadrant fractions ordered UR, UL, LL, LR.
pub fn quadrant_summary(gld: &GldData) -> [f64; 4] {
    let q = gld.quadrant_counts;
    let n = q.total().max(1) as f64;
    [q.ur as f64 / n, q.ul as f64 / n, q.ll as f64 / n, q.lr as f64 / n]
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    pub point_radius: f64,
    pub show_diagonal: bool,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 480,
            height: 480,
            point_radius: 2.5,
            show_diagonal: false,
            title: "GLD-plot".into(),
            x_label: "global depth (normalized)".into(),
            y_label: "local depth (normalized)".into(),
        }
    }
}

const MARGIN: f64 = 56.0;

impl RenderOptions {
    fn validate(&self) -> Result<()> {
        let min = (2.0 * MARGIN + 10.0) as u32;
        if self.width < min || self.height < min {
            return Err(Error::InvalidOptions(format!("width and height must be at least {min} px")));
        }
        if !(self.point_radius > 0.0 && self.point_radius.is_finite()) {
            return Err(Error::InvalidOptions("point radius must be positive".into()));
        }
        Ok(())
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// End point of the slope line through the origin, clipped to the unit box.
pub fn slope_endpoint(slope: Option<f64>) -> (f64, f64) {
    match slope {
        Some(s) if s <= 1.0 => (1.0, s.max(0.0)),
        Some(s) => (1.0 / s, 1.0),
        None => (0.0, 1.0),
    }
}

/// Renders a standalone SVG 1.1 document.
///
/// Points are `<circle class="point">`, the two median lines are the only
/// elements carrying `stroke-dasharray`, and the slope line is
/// `<line class="slope">`.
pub fn render_svg(gld: &GldData, options: &RenderOptions) -> Result<String> {
    options.validate()?;
    let (w, h) = (options.width as f64, options.height as f64);
    let (pw, ph) = (w - 2.0 * MARGIN, h - 2.0 * MARGIN);
    let px = |g: f64| MARGIN + g * pw;
    let py = |l: f64| h - MARGIN - l * ph;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        options.width, options.height, options.width, options.height
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r##"<rect class="frame" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#000" stroke-width="1"/>"##,
        MARGIN, MARGIN, pw, ph
    );
    for tick in [0.0, 0.5, 1.0] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11" text-anchor="middle">{tick}</text>"#,
            px(tick),
            h - MARGIN + 16.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11" text-anchor="end">{tick}</text>"#,
            MARGIN - 6.0,
            py(tick) + 4.0
        );
    }
    if options.show_diagonal {
        let _ = writeln!(
            svg,
            r##"<line class="diagonal" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#999" stroke-width="1"/>"##,
            px(0.0),
            py(0.0),
            px(1.0),
            py(1.0)
        );
    }
    let _ = writeln!(
        svg,
        r##"<line class="median" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#444" stroke-width="1" stroke-dasharray="6,4"/>"##,
        px(gld.g_median),
        py(0.0),
        px(gld.g_median),
        py(1.0)
    );
    let _ = writeln!(
        svg,
        r##"<line class="median" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#444" stroke-width="1" stroke-dasharray="6,4"/>"##,
        px(0.0),
        py(gld.l_median),
        px(1.0),
        py(gld.l_median)
    );
    let (ex, ey) = slope_endpoint(gld.slope);
    let _ = writeln!(
        svg,
        r##"<line class="slope" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#c0392b" stroke-width="1.5"/>"##,
        px(0.0),
        py(0.0),
        px(ex),
        py(ey)
    );
    let _ = writeln!(svg, r##"<g fill="#1f4e79" fill-opacity="0.7">"##);
    for (g, l) in &gld.points {
        let _ = writeln!(
            svg,
            r#"<circle class="point" cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#,
            px(*g),
            py(*l),
            options.point_radius
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        w / 2.0,
        h - 14.0,
        xml_escape(&options.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{:.3}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 16 {:.3})">{}</text>"#,
        h / 2.0,
        h / 2.0,
        xml_escape(&options.y_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.3}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        w / 2.0,
        xml_escape(&options.title)
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn norm(values: &[f64]) -> Normalized {
        normalize_depths(values).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let n = norm(&[1.0, 4.0 / 3.0, 1.0]);
        assert_eq!(n.values, vec![0.0, 1.0, 0.0]);
        assert!(!n.degenerate);
        let n = norm(&[2.0, 2.0, 2.0]);
        assert_eq!(n.values, vec![0.5; 3]);
        assert!(n.degenerate);
        assert_eq!(norm(&[0.0, 1.0]).values, vec![0.0, 1.0]);
        assert_eq!(normalize_depths(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn median_convention() {
        assert_eq!(median(&[3.0, 1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]).unwrap(), 2.5);
    }

    #[test]
    fn ranks_average_ties() {
        assert_eq!(average_ranks(&[10.0, 20.0, 10.0, 5.0]), vec![2.5, 4.0, 2.5, 1.0]);
    }

    #[test]
    fn identical_axes() {
        let g = norm(&[0.1, 0.5, 0.2, 0.9, 0.3, 0.7]);
        let gld = GldData::from_normalized(&g, &g).unwrap();
        assert_eq!(gld.spearman_rho, 1.0);
        assert_eq!(gld.slope, Some(1.0));
        assert_eq!(gld.concordance, 1.0);
        assert_eq!(gld.quadrant_counts.total(), 6);
    }

    #[test]
    fn quadrant_examples() {
        let all_top = Normalized { values: vec![1.0; 5], degenerate: false };
        let gld = GldData::from_normalized(&all_top, &all_top).unwrap();
        assert_eq!(quadrant_summary(&gld), [1.0, 0.0, 0.0, 0.0]);

        let alt = Normalized { values: vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0], degenerate: false };
        let gld = GldData::from_normalized(&alt, &alt).unwrap();
        let [ur, ul, ll, lr] = quadrant_summary(&gld);
        assert_eq!(ur + ll, 1.0);
        assert_eq!(ul + lr, 0.0);
    }

    #[test]
    fn reversed_ranks() {
        let g = norm(&[0.0, 0.25, 0.5, 1.0]);
        let l = norm(&[1.0, 0.5, 0.25, 0.0]);
        let gld = GldData::from_normalized(&g, &l).unwrap();
        assert_eq!(gld.spearman_rho, -1.0);
        assert_eq!(gld.concordance, 0.0);
    }

    #[test]
    fn degenerate_axis_still_builds() {
        let g = norm(&[1.0, 1.0, 1.0, 1.0]);
        let l = norm(&[0.0, 0.3, 0.6, 1.0]);
        let gld = GldData::from_normalized(&g, &l).unwrap();
        assert!(gld.degenerate && gld.global_degenerate && !gld.local_degenerate);
        assert_eq!(gld.spearman_rho, 0.0);
        assert_eq!(gld.slope, Some(gld.l_median / 0.5));
    }

    #[test]
    fn json_schema_fields() {
        let g = norm(&[0.0, 0.3, 0.6, 1.0]);
        let gld = GldData::from_normalized(&g, &g).unwrap();
        let v: serde_json::Value = serde_json::from_str(&gld.to_json()).unwrap();
        let obj = v.as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            ["concordance", "degenerate", "g_median", "l_median", "points", "quadrants", "slope", "spearman_rho"]
        );
        assert_eq!(v["points"][1], serde_json::json!([0.3, 0.3]));
        assert_eq!(v["quadrants"]["ur"], 2);
        let back: GldData = serde_json::from_str(&gld.to_json()).unwrap();
        assert_eq!(back.points, gld.points);
    }

    fn sample_gld() -> GldData {
        let g = norm(&[0.2, 0.4, 0.1, 0.9, 0.5, 0.3, 0.8]);
        let l = norm(&[0.3, 0.5, 0.0, 0.7, 0.9, 0.1, 0.6]);
        GldData::from_normalized(&g, &l).unwrap()
    }

    #[test]
    fn svg_structure() {
        let gld = sample_gld();
        let svg = render_svg(&gld, &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), gld.len());
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert_eq!(svg.matches(r#"class="slope""#).count(), 1);
        assert!(svg.contains("global depth (normalized)"));
        assert!(svg.contains("local depth (normalized)"));
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg, render_svg(&gld, &RenderOptions::default()).unwrap());
    }

    #[test]
    fn unit_slope_coincides_with_diagonal() {
        let g = norm(&[0.0, 0.4, 0.6, 1.0]);
        let gld = GldData::from_normalized(&g, &g).unwrap();
        let opts = RenderOptions { show_diagonal: true, ..RenderOptions::default() };
        let svg = render_svg(&gld, &opts).unwrap();
        let coords = |class: &str| {
            let line = svg.lines().find(|l| l.contains(&format!(r#"class="{class}""#))).unwrap();
            let start = line.find("x1=").unwrap();
            let end = line.find(" stroke=").unwrap();
            line[start..end].to_string()
        };
        assert_eq!(coords("slope"), coords("diagonal"));
    }

    #[test]
    fn svg_rejects_bad_options() {
        let opts = RenderOptions { width: 10, ..RenderOptions::default() };
        assert!(matches!(render_svg(&sample_gld(), &opts), Err(Error::InvalidOptions(_))));
        let opts = RenderOptions { point_radius: 0.0, ..RenderOptions::default() };
        assert!(matches!(render_svg(&sample_gld(), &opts), Err(Error::InvalidOptions(_))));
    }

    #[test]
    fn labels_are_escaped() {
        let opts = RenderOptions { title: "a<b & c".into(), ..RenderOptions::default() };
        let svg = render_svg(&sample_gld(), &opts).unwrap();
        assert!(svg.contains("a&lt;b &amp; c"));
    }

    #[test]
    fn slope_clipping() {
        assert_eq!(slope_endpoint(Some(0.5)), (1.0, 0.5));
        assert_eq!(slope_endpoint(Some(2.0)), (0.5, 1.0));
        assert_eq!(slope_endpoint(None), (0.0, 1.0));
    }

    proptest! {
        #[test]
        fn normalization_preserves_rank_order(values in prop::collection::vec(-5.0f64..5.0, 2..40)) {
            let n = norm(&values);
            prop_assert!(n.values.iter().all(|v| (0.0..=1.0).contains(v)));
            if !n.degenerate {
                prop_assert_eq!(average_ranks(&values), average_ranks(&n.values));
            }
        }

        #[test]
        fn quadrants_partition_points(
            pairs in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 4..60)
        ) {
            let (g, l): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            let gld = GldData::from_normalized(&norm(&g), &norm(&l)).unwrap();
            prop_assert_eq!(gld.quadrant_counts.total(), g.len());
            let fr = quadrant_summary(&gld);
            prop_assert!((fr.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(gld.spearman_rho >= -1.0 && gld.spearman_rho <= 1.0);
            prop_assert!((0.0..=1.0).contains(&gld.concordance));
        }

        #[test]
        fn spearman_is_invariant_under_normalization(
            pairs in prop::collection::vec((0.0f64..3.0, -2.0f64..1.0), 4..40)
        ) {
            let (g, l): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            let ng = norm(&g);
            let nl = norm(&l);
            prop_assume!(!ng.degenerate && !nl.degenerate);
            assert_abs_diff_eq!(spearman_rho(&g, &l), spearman_rho(&ng.values, &nl.values), epsilon = 1e-12);
        }

        #[test]
        fn perfect_rank_agreement_gives_full_concordance(
            mut values in prop::collection::vec(0.0f64..1.0, 2..30).prop_map(|mut v| { v.push(v[0] + 2.0); v })
        ) {
            // even n, distinct values
            values.sort_by(f64::total_cmp);
            values.dedup();
            prop_assume!(values.len() % 2 == 0 && values.len() >= 4);
            let l: Vec<f64> = values.iter().map(|v| v * v + 1.0).collect();
            let gld = GldData::from_normalized(&norm(&values), &norm(&l)).unwrap();
            prop_assert_eq!(gld.spearman_rho, 1.0);
            prop_assert_eq!(gld.concordance, 1.0);
        }
    }
}
