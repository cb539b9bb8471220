//! CSV interchange for samples, depth tables and depth curves.
//!
//! Unit-vector files carry a header `x1,...,xq` and one observation per row.
//! Lat/lon files carry a header `lat,lon` in degrees (geographic latitude,
//! longitude east). Numbers are written with 12 significant digits.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::depth::{DepthProfile, DirectionalSample};
use crate::error::Error as DepthError;
use crate::geometry::{from_latlon, UnitVector};
use crate::gld::normalize_depths;

/// Rows must have norm within this of 1 before renormalization.
pub const CSV_UNIT_TOLERANCE: f64 = 1e-6;
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {cause}")]
    Io { path: PathBuf, cause: std::io::Error },
    #[error("line {line}: malformed row: {message}")]
    MalformedRow { line: u64, message: String },
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("line {line}: expected {expected} columns, found {found}")]
    InconsistentDimension { line: u64, expected: usize, found: usize },
    #[error("line {line}: row norm {norm} is not within 1e-6 of 1")]
    NotUnitNorm { line: u64, norm: f64 },
    #[error("line {line}: latitude {value} is outside [-90, 90]")]
    LatitudeOutOfRange { line: u64, value: f64 },
    #[error("line {line}: longitude {value} is outside [-180, 360)")]
    LongitudeOutOfRange { line: u64, value: f64 },
    #[error("file contains no observations")]
    NoRows,
    #[error(transparent)]
    Depth(#[from] DepthError),
}

pub type IoResult<T> = std::result::Result<T, IoError>;

fn read_to_string(path: &Path) -> IoResult<String> {
    fs::read_to_string(path).map_err(|cause| IoError::Io { path: path.to_path_buf(), cause })
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

fn headers(rdr: &mut csv::Reader<&[u8]>) -> IoResult<Vec<String>> {
    let h = rdr.headers().map_err(|e| IoError::BadHeader(e.to_string()))?;
    Ok(h.iter().map(|s| s.to_ascii_lowercase()).collect())
}

fn parse_fields(record: &csv::StringRecord, line: u64) -> IoResult<Vec<f64>> {
    record
        .iter()
        .map(|field| {
            field
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| IoError::MalformedRow { line, message: format!("'{field}' is not a finite number") })
        })
        .collect()
}

fn records(rdr: &mut csv::Reader<&[u8]>) -> Vec<IoResult<(u64, csv::StringRecord)>> {
    rdr.records()
        .map(|r| {
            r.map(|rec| (rec.position().map_or(0, |p| p.line()), rec)).map_err(|e| IoError::MalformedRow {
                line: e.position().map_or(0, |p| p.line()),
                message: e.to_string(),
            })
        })
        .collect()
}

/// Parses unit-vector CSV text.
pub fn parse_unit_csv_str(text: &str) -> IoResult<DirectionalSample> {
    let mut rdr = reader(text);
    let header = headers(&mut rdr)?;
    let q = header.len();
    if q < 2 {
        return Err(IoError::BadHeader(format!("need at least 2 columns x1..xq, got {q}")));
    }
    for (i, name) in header.iter().enumerate() {
        if *name != format!("x{}", i + 1) {
            return Err(IoError::BadHeader(format!("expected column x{}, found '{name}'", i + 1)));
        }
    }
    let mut points = Vec::new();
    for row in records(&mut rdr) {
        let (line, record) = row?;
        if record.len() != q {
            return Err(IoError::InconsistentDimension { line, expected: q, found: record.len() });
        }
        let coords = parse_fields(&record, line)?;
        let point = UnitVector::with_tolerance(coords, CSV_UNIT_TOLERANCE).map_err(|e| match e {
            DepthError::NotUnitNorm(norm) => IoError::NotUnitNorm { line, norm },
            other => IoError::Depth(other),
        })?;
        points.push(point);
    }
    if points.is_empty() {
        return Err(IoError::NoRows);
    }
    Ok(DirectionalSample::new(points)?)
}

/// Parses `lat,lon` CSV text (degrees) into points on S^2.
pub fn parse_latlon_csv_str(text: &str) -> IoResult<DirectionalSample> {
    let mut rdr = reader(text);
    let header = headers(&mut rdr)?;
    let lat_col = header.iter().position(|h| h == "lat" || h == "latitude");
    let lon_col = header.iter().position(|h| h == "lon" || h == "longitude");
    let (Some(lat_col), Some(lon_col)) = (lat_col, lon_col) else {
        return Err(IoError::BadHeader("expected columns lat,lon".into()));
    };
    let mut points = Vec::new();
    for row in records(&mut rdr) {
        let (line, record) = row?;
        if record.len() != header.len() {
            return Err(IoError::InconsistentDimension { line, expected: header.len(), found: record.len() });
        }
        let values = parse_fields(&record, line)?;
        let (lat, lon) = (values[lat_col], values[lon_col]);
        let point = from_latlon(lat, lon).map_err(|e| match e {
            DepthError::LatitudeOutOfRange(value) => IoError::LatitudeOutOfRange { line, value },
            DepthError::LongitudeOutOfRange(value) => IoError::LongitudeOutOfRange { line, value },
            other => IoError::Depth(other),
        })?;
        points.push(point);
    }
    if points.is_empty() {
        return Err(IoError::NoRows);
    }
    Ok(DirectionalSample::new(points)?)
}

pub fn parse_unit_csv(path: impl AsRef<Path>) -> IoResult<DirectionalSample> {
    parse_unit_csv_str(&read_to_string(path.as_ref())?)
}

pub fn parse_latlon_csv(path: impl AsRef<Path>) -> IoResult<DirectionalSample> {
    parse_latlon_csv_str(&read_to_string(path.as_ref())?)
}

/// Formats `v` with [`SIGNIFICANT_DIGITS`] significant digits, trailing
/// zeros removed; scientific notation outside `[1e-5, 1e12)`.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v);
        let (mantissa, exponent) = s.split_once('e').expect("exponent form");
        return format!("{}e{}", trim_zeros(mantissa), exponent);
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn join_row(values: impl IntoIterator<Item = String>) -> String {
    values.into_iter().collect::<Vec<_>>().join(",")
}

/// Unit-vector CSV with header `x1,...,xq`.
pub fn unit_csv_string(sample: &DirectionalSample) -> String {
    let mut out = join_row((1..=sample.dim()).map(|i| format!("x{i}")));
    out.push('\n');
    for p in sample.iter() {
        out.push_str(&join_row(p.coords().iter().map(|c| format_number(*c))));
        out.push('\n');
    }
    out
}

/// Depth table `index,global,local,global_norm,local_norm`.
pub fn depth_csv_string(profile: &DepthProfile) -> Result<String, DepthError> {
    let g = normalize_depths(&profile.global)?;
    let l = normalize_depths(&profile.local)?;
    let mut out = String::from("index,global,local,global_norm,local_norm\n");
    for i in 0..profile.len() {
        out.push_str(&join_row([
            i.to_string(),
            format_number(profile.global[i]),
            format_number(profile.local[i]),
            format_number(g.values[i]),
            format_number(l.values[i]),
        ]));
        out.push('\n');
    }
    Ok(out)
}

/// Curve table with an `angle` column (radians) followed by one column per
/// named series.
pub fn curve_csv_string(angles: &[f64], series: &[(&str, Vec<f64>)]) -> String {
    let mut out = join_row(std::iter::once("angle".to_string()).chain(series.iter().map(|(n, _)| n.to_string())));
    out.push('\n');
    for (i, a) in angles.iter().enumerate() {
        let row = std::iter::once(format_number(*a)).chain(series.iter().map(|(_, v)| format_number(v[i])));
        out.push_str(&join_row(row));
        out.push('\n');
    }
    out
}

/// Writes `contents` to a temporary file beside `path`, then renames it
/// into place.
pub fn write_atomic(path: impl AsRef<Path>, contents: &[u8]) -> IoResult<()> {
    let path = path.as_ref();
    let wrap = |cause| IoError::Io { path: path.to_path_buf(), cause };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(wrap)?;
    tmp.write_all(contents).map_err(wrap)?;
    tmp.as_file().sync_all().map_err(wrap)?;
    tmp.persist(path).map_err(|e| wrap(e.error))?;
    Ok(())
}
