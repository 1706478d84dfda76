//! Figure-ready tables: the sampled curve family with its lower envelope,
//! the delocalization path anchors, the recursion tent path, and CSV/JSON
//! serialization.
//!
//! Numeric output is rendered with 17 significant digits so every value
//! reparses to the identical f64; serialization is deterministic byte for
//! byte.

use thiserror::Error;

use crate::cascade::CascadeLevel;
use crate::potential::{f_reduced, PotentialError};
use crate::recursion::{bifurcation_constants, ratio_to_f64};

/// Errors from table construction and serialization.
#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("need 0 < q_min < q_max (got q_min = {q_min}, q_max = {q_max})")]
    InvalidRange { q_min: f64, q_max: f64 },
    #[error("need at least 2 samples (got {n_samples})")]
    TooFewSamples { n_samples: usize },
    #[error("delta0 must lie in (0, 1/8) (got {delta0})")]
    InvalidDelta { delta0: f64 },
    #[error("cannot serialize an empty table")]
    EmptyTable,
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

/// One sampled abscissa with the per-order values and their minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub q: f64,
    pub per_order_u: Vec<f64>,
    pub envelope: f64,
}

/// One anchor of the delocalization path, all at the fixed-point level.
#[derive(Debug, Clone, PartialEq)]
pub struct PathPoint {
    pub label: String,
    pub q: f64,
    pub u: f64,
}

/// One sample of the recursion figure: the parabola and, inside the
/// bifurcation interval, the tent path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursionRow {
    pub chi: f64,
    pub f_parabola: f64,
    pub f_tent: Option<f64>,
}

/// Evaluates every level's curve at one radius; the envelope is the exact
/// minimum of the stored values.
///
/// Panics if `levels` is empty.
pub fn row_at(levels: &[CascadeLevel], eps1: f64, q: f64) -> Result<ProfileRow, ProfileError> {
    assert!(!levels.is_empty(), "row_at needs at least one level");
    let mut per_order_u = Vec::with_capacity(levels.len());
    for level in levels {
        per_order_u.push(level.spec(eps1)?.evaluate(q)?);
    }
    let envelope = per_order_u.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(ProfileRow {
        q,
        per_order_u,
        envelope,
    })
}

/// Samples the curve family on a uniform grid inclusive of both endpoints.
pub fn sample_family(
    levels: &[CascadeLevel],
    eps1: f64,
    q_min: f64,
    q_max: f64,
    n_samples: usize,
) -> Result<Vec<ProfileRow>, ProfileError> {
    if !(q_min > 0.0 && q_min < q_max) {
        return Err(ProfileError::InvalidRange { q_min, q_max });
    }
    if n_samples < 2 {
        return Err(ProfileError::TooFewSamples { n_samples });
    }
    let step = (q_max - q_min) / (n_samples - 1) as f64;
    (0..n_samples)
        .map(|k| {
            let q = if k == n_samples - 1 {
                q_max
            } else {
                q_min + k as f64 * step
            };
            row_at(levels, eps1, q)
        })
        .collect()
}

/// The path q₁,L → q₁,R → q₂,R → … → q_M,R, every anchor at −15/16 ε₁.
///
/// Panics if `levels` is empty.
pub fn delocalization_path(levels: &[CascadeLevel], eps1: f64) -> Vec<PathPoint> {
    assert!(
        !levels.is_empty(),
        "delocalization_path needs at least one level"
    );
    let u = ratio_to_f64(bifurcation_constants().u_c_star) * eps1;
    let mut points = Vec::with_capacity(levels.len() + 1);
    points.push(PathPoint {
        label: "q1L".to_string(),
        q: levels[0].q_left,
        u,
    });
    for level in levels {
        points.push(PathPoint {
            label: format!("q{}R", level.order),
            q: level.q_right,
            u,
        });
    }
    points
}

/// The tent path through (3/8, −15/16), (1/2, −17/16), (5/8, −15/16);
/// `None` outside the bifurcation interval.
pub fn tent(chi: f64) -> Option<f64> {
    let c = bifurcation_constants();
    let lo = ratio_to_f64(c.chi_plus);
    let hi = ratio_to_f64(c.chi_minus);
    if !(lo..=hi).contains(&chi) {
        return None;
    }
    let apex_chi = ratio_to_f64(c.deep_point.0);
    let apex_f = ratio_to_f64(c.deep_point.1);
    Some(apex_f + (chi - apex_chi).abs())
}

/// Samples the parabola and the tent on χ ∈ [3/8 − δ₀, 5/8 + δ₀].
pub fn recursion_figure(delta0: f64, n_samples: usize) -> Result<Vec<RecursionRow>, ProfileError> {
    let c = bifurcation_constants();
    if !(delta0 > 0.0 && delta0 < ratio_to_f64(c.qiee)) {
        return Err(ProfileError::InvalidDelta { delta0 });
    }
    if n_samples < 2 {
        return Err(ProfileError::TooFewSamples { n_samples });
    }
    let lo = ratio_to_f64(c.chi_plus) - delta0;
    let hi = ratio_to_f64(c.chi_minus) + delta0;
    let step = (hi - lo) / (n_samples - 1) as f64;
    Ok((0..n_samples)
        .map(|k| {
            let chi = if k == n_samples - 1 {
                hi
            } else {
                lo + k as f64 * step
            };
            RecursionRow {
                chi,
                f_parabola: f_reduced(chi),
                f_tent: tent(chi),
            }
        })
        .collect())
}

/// Output encoding for the tabular emitters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Renders an f64 with 17 significant digits ('.' separator, no locale),
/// enough to reparse the exact value.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_array(objects: Vec<String>) -> String {
    let mut out = String::from("[\n");
    out.push_str(&objects.join(",\n"));
    out.push_str("\n]\n");
    out
}

/// Serializes family rows: columns `q,u_1,…,u_M,envelope`.
pub fn serialize_family(rows: &[ProfileRow], format: OutputFormat) -> Result<String, ProfileError> {
    if rows.is_empty() {
        return Err(ProfileError::EmptyTable);
    }
    let n_orders = rows[0].per_order_u.len();
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("q");
            for i in 1..=n_orders {
                out.push_str(&format!(",u_{i}"));
            }
            out.push_str(",envelope\n");
            for row in rows {
                out.push_str(&fmt_f64(row.q));
                for u in &row.per_order_u {
                    out.push(',');
                    out.push_str(&fmt_f64(*u));
                }
                out.push(',');
                out.push_str(&fmt_f64(row.envelope));
                out.push('\n');
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let objects = rows
                .iter()
                .map(|row| {
                    let mut obj = format!("  {{\"q\":{}", fmt_f64(row.q));
                    for (i, u) in row.per_order_u.iter().enumerate() {
                        obj.push_str(&format!(",\"u_{}\":{}", i + 1, fmt_f64(*u)));
                    }
                    obj.push_str(&format!(",\"envelope\":{}}}", fmt_f64(row.envelope)));
                    obj
                })
                .collect();
            Ok(json_array(objects))
        }
    }
}

/// Serializes path points: columns `label,q,u`.
pub fn serialize_path(points: &[PathPoint], format: OutputFormat) -> Result<String, ProfileError> {
    if points.is_empty() {
        return Err(ProfileError::EmptyTable);
    }
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("label,q,u\n");
            for p in points {
                out.push_str(&format!("{},{},{}\n", p.label, fmt_f64(p.q), fmt_f64(p.u)));
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let objects = points
                .iter()
                .map(|p| {
                    format!(
                        "  {{\"label\":{},\"q\":{},\"u\":{}}}",
                        json_string(&p.label),
                        fmt_f64(p.q),
                        fmt_f64(p.u)
                    )
                })
                .collect();
            Ok(json_array(objects))
        }
    }
}

/// Serializes recursion-figure rows: columns `chi,f_parabola,f_tent`, with
/// an empty CSV field (JSON null) where the tent is absent.
pub fn serialize_recursion(
    rows: &[RecursionRow],
    format: OutputFormat,
) -> Result<String, ProfileError> {
    if rows.is_empty() {
        return Err(ProfileError::EmptyTable);
    }
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("chi,f_parabola,f_tent\n");
            for row in rows {
                out.push_str(&fmt_f64(row.chi));
                out.push(',');
                out.push_str(&fmt_f64(row.f_parabola));
                out.push(',');
                if let Some(tent) = row.f_tent {
                    out.push_str(&fmt_f64(tent));
                }
                out.push('\n');
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let objects = rows
                .iter()
                .map(|row| {
                    format!(
                        "  {{\"chi\":{},\"f_parabola\":{},\"f_tent\":{}}}",
                        fmt_f64(row.chi),
                        fmt_f64(row.f_parabola),
                        row.f_tent.map_or("null".to_string(), fmt_f64)
                    )
                })
                .collect();
            Ok(json_array(objects))
        }
    }
}

/// Serializes cascade levels: columns `order,sigma,q_left,q_right,gap_prev,lindemann`,
/// with empty fields (JSON null) on the first order.
pub fn serialize_cascade(
    levels: &[CascadeLevel],
    format: OutputFormat,
) -> Result<String, ProfileError> {
    if levels.is_empty() {
        return Err(ProfileError::EmptyTable);
    }
    match format {
        OutputFormat::Csv => {
            let mut out = String::from("order,sigma,q_left,q_right,gap_prev,lindemann\n");
            for l in levels {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    l.order,
                    fmt_f64(l.sigma),
                    fmt_f64(l.q_left),
                    fmt_f64(l.q_right),
                    l.gap_prev.map_or(String::new(), fmt_f64),
                    l.lindemann.map_or(String::new(), fmt_f64),
                ));
            }
            Ok(out)
        }
        OutputFormat::Json => {
            let objects = levels
                .iter()
                .map(|l| {
                    format!(
                        "  {{\"order\":{},\"sigma\":{},\"q_left\":{},\"q_right\":{},\"gap_prev\":{},\"lindemann\":{}}}",
                        l.order,
                        fmt_f64(l.sigma),
                        fmt_f64(l.q_left),
                        fmt_f64(l.q_right),
                        l.gap_prev.map_or("null".to_string(), fmt_f64),
                        l.lindemann.map_or("null".to_string(), fmt_f64),
                    )
                })
                .collect();
            Ok(json_array(objects))
        }
    }
}
