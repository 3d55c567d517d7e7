//! Type-token observations built from a token stream.
//!
//! Three windowing schemes are supported:
//!
//! - `prefix`: every window starts at the first token, one point per length
//!   `T = 1..=len`;
//! - `partition`: for each window size, the text is cut into consecutive
//!   non-overlapping windows (the trailing remainder is dropped), one point
//!   per window;
//! - `logsample`: the prefix curve restricted to `T = round(ratio^k)`, which
//!   spaces points evenly in `log T`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::TokenStream;
use crate::format::sig6;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Prefix,
    Partition,
    LogSample,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Prefix => "prefix",
            Scheme::Partition => "partition",
            Scheme::LogSample => "logsample",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prefix" => Ok(Scheme::Prefix),
            "partition" => Ok(Scheme::Partition),
            "logsample" => Ok(Scheme::LogSample),
            other => Err(Error::Parse(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Statistic used to collapse replicates sharing a token count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Statistic {
    #[default]
    Median,
    Mean,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::Median => "median",
            Statistic::Mean => "mean",
        })
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "median" => Ok(Statistic::Median),
            "mean" => Ok(Statistic::Mean),
            other => Err(Error::Parse(format!("unknown statistic {other:?}"))),
        }
    }
}

/// One window: `tokens` = T, `types` = V.
///
/// Raw curves hold integral type counts; an aggregated curve may hold a
/// fractional median or mean.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub tokens: u64,
    pub types: f64,
    /// Replicate id within a window size; 0 for prefix windows.
    pub window_index: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeTokenCurve {
    pub source_id: String,
    pub scheme: Scheme,
    pub points: Vec<CurvePoint>,
}

impl TypeTokenCurve {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of distinct token counts.
    pub fn distinct_sizes(&self) -> usize {
        let mut sizes: Vec<u64> = self.points.iter().map(|p| p.tokens).collect();
        sizes.sort_unstable();
        sizes.dedup();
        sizes.len()
    }

    /// `(log T, log V)` pairs in the given base.
    pub fn log_xy(&self, base: f64) -> (Vec<f64>, Vec<f64>) {
        let ln_base = base.ln();
        self.points
            .iter()
            .map(|p| ((p.tokens as f64).ln() / ln_base, p.types.ln() / ln_base))
            .unzip()
    }

    /// Writes `scheme,source_id,tokens,types,window_index` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["scheme", "source_id", "tokens", "types", "window_index"])?;
        let scheme = self.scheme.to_string();
        for p in &self.points {
            out.write_record([
                scheme.as_str(),
                self.source_id.as_str(),
                &p.tokens.to_string(),
                &format_types(p.types),
                &p.window_index.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a curve CSV written by [`TypeTokenCurve::write_csv`].
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let mut scheme = None;
        let mut source_id = None;
        let mut points = Vec::new();
        for row in rdr.records() {
            let row = row?;
            if row.len() != 5 {
                return Err(Error::Parse(format!("expected 5 columns, got {}", row.len())));
            }
            let s: Scheme = row[0].parse()?;
            if *scheme.get_or_insert(s) != s {
                return Err(Error::Parse("mixed schemes in one curve file".into()));
            }
            if source_id.get_or_insert_with(|| row[1].to_string()) != &row[1] {
                return Err(Error::Parse("mixed source ids in one curve file".into()));
            }
            let parse_err = |what: &str| Error::Parse(format!("bad {what} in row {:?}", row));
            let tokens: u64 = row[2].parse().map_err(|_| parse_err("tokens"))?;
            let types: f64 = row[3].parse().map_err(|_| parse_err("types"))?;
            let window_index: u64 = row[4].parse().map_err(|_| parse_err("window_index"))?;
            if tokens == 0 || !(1.0..=tokens as f64).contains(&types) {
                return Err(parse_err("point (need 1 <= types <= tokens)"));
            }
            points.push(CurvePoint {
                tokens,
                types,
                window_index,
            });
        }
        let (Some(scheme), Some(source_id)) = (scheme, source_id) else {
            return Err(Error::Parse("empty curve file".into()));
        };
        Ok(Self {
            source_id,
            scheme,
            points,
        })
    }
}

fn format_types(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        sig6(v)
    }
}

/// Distinct types among the first `T` tokens, for every `T`.
pub fn prefix_curve(stream: &TokenStream) -> TypeTokenCurve {
    let (ids, num_types) = stream.type_ids();
    let mut seen = vec![false; num_types];
    let mut distinct = 0u64;
    let points = ids
        .iter()
        .enumerate()
        .map(|(i, &id)| {
            if !std::mem::replace(&mut seen[id as usize], true) {
                distinct += 1;
            }
            CurvePoint {
                tokens: i as u64 + 1,
                types: distinct as f64,
                window_index: 0,
            }
        })
        .collect();
    TypeTokenCurve {
        source_id: stream.source_id.clone(),
        scheme: Scheme::Prefix,
        points,
    }
}

/// Window sizes `{1, 2, 5} x 10^k` between 100 and `len`.
///
/// The whole text is not appended; pass `len` explicitly to
/// [`partition_curve`] to get that single point.
pub fn default_ladder(len: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut decade = 100usize;
    'outer: loop {
        for m in [1, 2, 5] {
            let Some(size) = decade.checked_mul(m) else {
                break 'outer;
            };
            if size > len {
                break 'outer;
            }
            sizes.push(size);
        }
        match decade.checked_mul(10) {
            Some(d) => decade = d,
            None => break,
        }
    }
    sizes
}

/// Types in each non-overlapping window, for every size in `sizes`.
pub fn partition_curve(stream: &TokenStream, sizes: &[usize]) -> Result<TypeTokenCurve> {
    if sizes.is_empty() {
        return Err(Error::EmptySizes);
    }
    let len = stream.len();
    if let Some(&size) = sizes.iter().find(|&&s| s == 0 || s > len) {
        return Err(Error::BadWindowSize { size, len });
    }
    let (ids, num_types) = stream.type_ids();
    // Window stamp of the last sighting of each type; avoids clearing a set per window.
    let mut stamp = vec![usize::MAX; num_types];
    let mut window_serial = 0usize;
    let mut points = Vec::new();
    for &size in sizes {
        for (index, window) in ids.chunks_exact(size).enumerate() {
            let mut distinct = 0u64;
            for &id in window {
                let s = &mut stamp[id as usize];
                if *s != window_serial {
                    *s = window_serial;
                    distinct += 1;
                }
            }
            window_serial += 1;
            points.push(CurvePoint {
                tokens: size as u64,
                types: distinct as f64,
                window_index: index as u64,
            });
        }
    }
    Ok(TypeTokenCurve {
        source_id: stream.source_id.clone(),
        scheme: Scheme::Partition,
        points,
    })
}

/// Token counts `round(ratio^k)`, `k = 1, 2, ...`, de-duplicated and capped at `len`.
pub fn logsample_sizes(len: u64, ratio: f64) -> Result<Vec<u64>> {
    if !(ratio > 1.0 && ratio.is_finite()) {
        return Err(Error::InvalidParameter(format!("ratio must be > 1, got {ratio}")));
    }
    let mut sizes: Vec<u64> = Vec::new();
    for k in 1.. {
        let t = ratio.powi(k).round();
        if t > len as f64 {
            break;
        }
        let t = t as u64;
        if sizes.last() != Some(&t) {
            sizes.push(t);
        }
    }
    Ok(sizes)
}

/// Restricts a prefix curve to log-evenly spaced token counts.
pub fn logsample_curve(prefix: &TypeTokenCurve, ratio: f64) -> Result<TypeTokenCurve> {
    if prefix.scheme != Scheme::Prefix {
        return Err(Error::InvalidParameter(format!(
            "logsample needs a prefix curve, got {}",
            prefix.scheme
        )));
    }
    let contiguous = prefix.points.iter().enumerate().all(|(i, p)| p.tokens == i as u64 + 1);
    if !contiguous {
        return Err(Error::InvalidParameter(
            "prefix curve must contain every T from 1".into(),
        ));
    }
    let points = logsample_sizes(prefix.len() as u64, ratio)?
        .into_iter()
        .map(|t| prefix.points[t as usize - 1])
        .collect();
    Ok(TypeTokenCurve {
        source_id: prefix.source_id.clone(),
        scheme: Scheme::LogSample,
        points,
    })
}

/// Collapses replicates with equal token count into one point.
pub fn aggregate(curve: &TypeTokenCurve, statistic: Statistic) -> TypeTokenCurve {
    let mut groups: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
    for p in &curve.points {
        groups.entry(p.tokens).or_default().push(p.types);
    }
    let points = groups
        .into_iter()
        .map(|(tokens, mut v)| {
            let types = match statistic {
                Statistic::Mean => v.iter().sum::<f64>() / v.len() as f64,
                Statistic::Median => {
                    v.sort_by(f64::total_cmp);
                    let mid = v.len() / 2;
                    if v.len() % 2 == 1 {
                        v[mid]
                    } else {
                        0.5 * (v[mid - 1] + v[mid])
                    }
                }
            };
            CurvePoint {
                tokens,
                types,
                window_index: 0,
            }
        })
        .collect();
    TypeTokenCurve {
        source_id: curve.source_id.clone(),
        scheme: curve.scheme,
        points,
    }
}

/// OLS slope of `log10 V` on `log10 T` within one band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeBand {
    /// Band midpoint in log10(T).
    pub x_center: f64,
    pub slope: f64,
    pub n_points: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SlopeReport {
    pub bands: Vec<SlopeBand>,
    /// Midpoints of bands skipped for having fewer than three points.
    pub skipped: Vec<f64>,
}

impl SlopeReport {
    /// Writes `source_id,x_center,slope` rows.
    pub fn write_csv<W: Write>(&self, source_id: &str, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["source_id", "x_center", "slope"])?;
        for b in &self.bands {
            out.write_record([source_id, &sig6(b.x_center), &sig6(b.slope)])?;
        }
        out.flush()?;
        Ok(())
    }
}

pub const DEFAULT_BAND: f64 = 0.5;
pub const DEFAULT_STEP: f64 = 0.1;

/// Local log-log slopes of a curve, in log10 units.
pub fn local_slopes(curve: &TypeTokenCurve, band_width: f64, step: f64) -> Result<SlopeReport> {
    let (xs, ys) = curve.log_xy(10.0);
    local_slopes_xy(&xs, &ys, band_width, step)
}

/// Local slopes of `ys` against `xs` over sliding bands `[s, s + band_width]`,
/// with `s` advancing by `step` from the smallest `x`.
pub fn local_slopes_xy(xs: &[f64], ys: &[f64], band_width: f64, step: f64) -> Result<SlopeReport> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidParameter("x and y lengths differ".into()));
    }
    if !(band_width > 0.0 && step > 0.0) {
        return Err(Error::InvalidParameter("band width and step must be positive".into()));
    }
    let mut pts: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (Some(&(x_min, _)), Some(&(x_max, _))) = (pts.first(), pts.last()) else {
        return Err(Error::InvalidParameter("empty curve".into()));
    };
    if x_max - x_min <= band_width {
        return Err(Error::InvalidParameter(format!(
            "curve spans {:.3} log units, need more than the band width {band_width}",
            x_max - x_min
        )));
    }
    // Absorbs rounding in the band edges so grid-aligned points are not lost.
    const EDGE: f64 = 1e-9;
    let mut report = SlopeReport::default();
    for i in 0.. {
        let lo = x_min + i as f64 * step;
        let hi = lo + band_width;
        if hi > x_max + EDGE {
            break;
        }
        let a = pts.partition_point(|p| p.0 < lo - EDGE);
        let b = pts.partition_point(|p| p.0 <= hi + EDGE);
        let center = lo + band_width / 2.0;
        match ols_slope(&pts[a..b]) {
            Some(slope) if b - a >= 3 => report.bands.push(SlopeBand {
                x_center: center,
                slope,
                n_points: b - a,
            }),
            _ => report.skipped.push(center),
        }
    }
    Ok(report)
}

fn ols_slope(pts: &[(f64, f64)]) -> Option<f64> {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxx, sxy) = pts.iter().fold((0.0, 0.0), |(sxx, sxy), &(x, y)| {
        (sxx + (x - mx) * (x - mx), sxy + (x - mx) * (y - my))
    });
    (sxx > 0.0).then(|| sxy / sxx)
}
