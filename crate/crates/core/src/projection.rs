//! Feature-space to landscape-plane projection.
//!
//! Fitting takes a population of 10-feature vectors and learns, in order:
//! a per-feature shift making values positive (`1 - min` when the minimum
//! is ≤ 0, else 0), a natural-log transform with a tiny epsilon, a
//! population z-score, and a PCA whose top two components become the
//! landscape axes. Constant features carry no information and are dropped
//! (their std is stored as 0 and their coefficients are 0).
//!
//! Determinism contracts: fitting is invariant to the input *order*
//! (rows are canonically sorted before any accumulation), component signs
//! are fixed by making each row's largest-magnitude coefficient positive,
//! and the text serialization round-trips every float bit-exactly.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::features::{FeatureVector, FEATURE_COUNT};
use crate::linalg::{jacobi_eigen, SymMatrix};

/// Additive epsilon inside the log transform, and the floor applied to
/// out-of-training-range values at projection time (values below the
/// training floor clamp here instead of producing NaN).
pub const LOG_EPSILON: f64 = 1e-9;

/// A fitted projection pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionModel {
    /// Per-feature positivity shift applied before the log.
    pub offsets: [f64; FEATURE_COUNT],
    /// Per-feature mean of the log-transformed training data.
    pub means: [f64; FEATURE_COUNT],
    /// Per-feature population std of the log-transformed training data;
    /// exactly 0 marks a dropped (constant) feature.
    pub stds: [f64; FEATURE_COUNT],
    /// Two principal axes over the z-scored space, unit norm, mutually
    /// orthogonal; dropped features have coefficient 0.
    pub components: [[f64; FEATURE_COUNT]; 2],
    /// Fraction of total variance captured by each component.
    pub variance_explained: [f64; 2],
    /// Fingerprint of the (canonically sorted) training data.
    pub fitted_on: u64,
}

fn all_finite(xs: &[f64]) -> bool {
    xs.iter().all(|v| v.is_finite())
}

/// Fits the full pipeline on a training population.
///
/// Needs at least 3 vectors with at least 2 distinct among them; the
/// result is independent of the order the vectors arrive in.
pub fn fit(features: &[FeatureVector]) -> Result<ProjectionModel> {
    let mut rows: Vec<[f64; FEATURE_COUNT]> = features.iter().map(|f| f.as_array()).collect();
    if rows.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "projection fit needs at least 3 feature vectors, got {}",
            rows.len()
        )));
    }
    for row in &rows {
        if !all_finite(row) {
            return Err(Error::invalid("non-finite feature value in fit input".to_string()));
        }
    }
    // Canonical order: projection must not depend on input order, so all
    // accumulation happens over lexicographically sorted rows.
    rows.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b.iter()) {
            match x.total_cmp(y) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    });
    if rows.windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::InsufficientData(
            "projection fit needs variation; all feature vectors are identical".to_string(),
        ));
    }
    let count = rows.len() as f64;

    // Positivity offsets from raw minima; constants detected exactly via
    // min == max (no floating-point dust, unlike a variance test).
    let mut offsets = [0.0; FEATURE_COUNT];
    let mut constant = [false; FEATURE_COUNT];
    for f in 0..FEATURE_COUNT {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for row in &rows {
            lo = lo.min(row[f]);
            hi = hi.max(row[f]);
        }
        constant[f] = lo == hi;
        if lo <= 0.0 {
            offsets[f] = 1.0 - lo;
        }
    }

    // Log transform, then population moments.
    let transformed: Vec<[f64; FEATURE_COUNT]> = rows
        .iter()
        .map(|row| {
            let mut t = [0.0; FEATURE_COUNT];
            for f in 0..FEATURE_COUNT {
                t[f] = (row[f] + offsets[f] + LOG_EPSILON).ln();
            }
            t
        })
        .collect();
    let mut means = [0.0; FEATURE_COUNT];
    let mut stds = [0.0; FEATURE_COUNT];
    for f in 0..FEATURE_COUNT {
        let mean = transformed.iter().map(|t| t[f]).sum::<f64>() / count;
        means[f] = mean;
        if !constant[f] {
            let var = transformed
                .iter()
                .map(|t| (t[f] - mean).powi(2))
                .sum::<f64>()
                / count;
            stds[f] = var.sqrt();
        }
    }

    // Z-score the retained features and take the population covariance.
    let retained: Vec<usize> = (0..FEATURE_COUNT).filter(|&f| !constant[f]).collect();
    let k = retained.len();
    debug_assert!(k >= 1, "all-constant input was rejected above");
    let z: Vec<Vec<f64>> = transformed
        .iter()
        .map(|t| retained.iter().map(|&f| (t[f] - means[f]) / stds[f]).collect())
        .collect();
    let mut cov = SymMatrix::zeros(k);
    for a in 0..k {
        for b in a..k {
            let s: f64 = z.iter().map(|row| row[a] * row[b]).sum();
            cov.set(a, b, s / count);
        }
    }

    let eig = jacobi_eigen(&cov);
    let order = eig.order_descending();
    let lambda: Vec<f64> = order.iter().map(|&i| eig.values[i].max(0.0)).collect();
    let total: f64 = lambda.iter().sum();

    let mut components = [[0.0; FEATURE_COUNT]; 2];
    let mut variance_explained = [0.0; 2];
    for c in 0..2usize.min(k) {
        let col = order[c];
        for (slot, &f) in retained.iter().enumerate() {
            components[c][f] = eig.vector_entry(slot, col);
        }
        variance_explained[c] = if total > 0.0 { lambda[c] / total } else { 0.0 };
    }
    if k == 1 {
        // Only one informative direction exists. Keep the second axis
        // well-defined and orthogonal by placing it on the first dropped
        // feature; it projects everything to 0 and explains no variance.
        let dropped = (0..FEATURE_COUNT)
            .find(|&f| constant[f])
            .expect("k == 1 implies a dropped feature");
        components[1][dropped] = 1.0;
        variance_explained[1] = 0.0;
    }

    // Deterministic sign: each component's largest-|coefficient| entry
    // (first on ties) points positive.
    for row in components.iter_mut() {
        let mut lead = 0;
        for (f, v) in row.iter().enumerate() {
            if v.abs() > row[lead].abs() {
                lead = f;
            }
        }
        if row[lead] < 0.0 {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
    }

    Ok(ProjectionModel {
        offsets,
        means,
        stds,
        components,
        variance_explained,
        fitted_on: fingerprint(&rows),
    })
}

/// FNV-1a over the bit patterns of the sorted training rows.
fn fingerprint(rows: &[[f64; FEATURE_COUNT]]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |byte: u8| {
        h ^= byte as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    };
    for b in (rows.len() as u64).to_le_bytes() {
        eat(b);
    }
    for row in rows {
        for v in row {
            for b in v.to_bits().to_le_bytes() {
                eat(b);
            }
        }
    }
    h
}

/// Projects one feature vector to landscape coordinates.
///
/// Inputs must be finite. Values below the training floor clamp the log
/// argument at [`LOG_EPSILON`] instead of going negative, so projections
/// of out-of-range instances (as evolution explores them) stay finite.
pub fn project(model: &ProjectionModel, fv: &FeatureVector) -> Result<(f64, f64)> {
    let row = fv.as_array();
    if !all_finite(&row) {
        return Err(Error::invalid("non-finite feature value in projection input".to_string()));
    }
    let mut x = 0.0;
    let mut y = 0.0;
    for f in 0..FEATURE_COUNT {
        if model.stds[f] == 0.0 {
            continue; // dropped feature: coefficient is 0 anyway
        }
        let arg = (row[f] + model.offsets[f] + LOG_EPSILON).max(LOG_EPSILON);
        let t = (arg.ln() - model.means[f]) / model.stds[f];
        x += model.components[0][f] * t;
        y += model.components[1][f] * t;
    }
    Ok((x, y))
}

// ---- text serialization ---------------------------------------------------

const MODEL_HEADER: &str = "projection-model v1";

fn push_floats(out: &mut String, key: &str, values: &[f64]) {
    let _ = write!(out, "{key}");
    for v in values {
        // Rust's float Display prints the shortest string that parses
        // back to the same bits, so the round trip is exact.
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

/// Serializes a model to its versioned text form.
pub fn to_text(model: &ProjectionModel) -> String {
    let mut out = String::new();
    out.push_str(MODEL_HEADER);
    out.push('\n');
    let _ = writeln!(out, "fitted_on {:016x}", model.fitted_on);
    push_floats(&mut out, "offsets", &model.offsets);
    push_floats(&mut out, "means", &model.means);
    push_floats(&mut out, "stds", &model.stds);
    push_floats(&mut out, "component1", &model.components[0]);
    push_floats(&mut out, "component2", &model.components[1]);
    push_floats(&mut out, "variance_explained", &model.variance_explained);
    out
}

fn parse_floats<const K: usize>(line: Option<(usize, &str)>, key: &str) -> Result<[f64; K]> {
    let (line_no, line) = line.ok_or_else(|| Error::format(0, format!("missing {key} line")))?;
    let mut parts = line.split_whitespace();
    let found = parts
        .next()
        .ok_or_else(|| Error::format(line_no, "empty line".to_string()))?;
    if found != key {
        return Err(Error::format(
            line_no,
            format!("expected key {key:?}, found {found:?}"),
        ));
    }
    let mut out = [0.0; K];
    for slot in out.iter_mut() {
        let tok = parts
            .next()
            .ok_or_else(|| Error::format(line_no, format!("{key} needs {K} values")))?;
        *slot = tok
            .parse::<f64>()
            .map_err(|_| Error::format(line_no, format!("bad float {tok:?}")))?;
    }
    if parts.next().is_some() {
        return Err(Error::format(line_no, format!("{key} has extra values")));
    }
    Ok(out)
}

/// Parses the text form produced by [`to_text`].
pub fn from_text(text: &str) -> Result<ProjectionModel> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::format(0, "empty model file".to_string()))?;
    if header != MODEL_HEADER {
        return Err(Error::format(
            line_no,
            format!("unsupported model header {header:?}"),
        ));
    }
    let (fp_line, fp) = lines
        .next()
        .ok_or_else(|| Error::format(0, "missing fitted_on line".to_string()))?;
    let fitted_on = fp
        .strip_prefix("fitted_on ")
        .and_then(|h| u64::from_str_radix(h.trim(), 16).ok())
        .ok_or_else(|| Error::format(fp_line, "bad fitted_on line".to_string()))?;
    let offsets = parse_floats::<FEATURE_COUNT>(lines.next(), "offsets")?;
    let means = parse_floats::<FEATURE_COUNT>(lines.next(), "means")?;
    let stds = parse_floats::<FEATURE_COUNT>(lines.next(), "stds")?;
    let c1 = parse_floats::<FEATURE_COUNT>(lines.next(), "component1")?;
    let c2 = parse_floats::<FEATURE_COUNT>(lines.next(), "component2")?;
    let variance_explained = parse_floats::<2>(lines.next(), "variance_explained")?;
    Ok(ProjectionModel {
        offsets,
        means,
        stds,
        components: [c1, c2],
        variance_explained,
        fitted_on,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorKind, GeneratorSpec};

    /// Hand-built feature vector; only the first few slots matter in most
    /// tests, the rest stay fixed.
    fn fv(vals: [f64; FEATURE_COUNT]) -> FeatureVector {
        FeatureVector {
            density: vals[0],
            clustering_coefficient: vals[1],
            energy: vals[2],
            max_degree: vals[3] as usize,
            degree_std: vals[4],
            degree_skewness: vals[5],
            degree_kurtosis: vals[6],
            diameter: vals[7] as usize,
            pct_degree1: vals[8],
            pct_degree2: vals[9],
        }
    }

    fn two_feature_population() -> Vec<FeatureVector> {
        // Features 0 and 1 vary, the rest are constant (and so dropped).
        let mut pop = Vec::new();
        for i in 0..24 {
            let a = 0.1 + 0.03 * i as f64;
            let b = 2.0 + ((i * 7) % 5) as f64 * 0.21;
            pop.push(fv([a, b, 4.0, 3.0, 1.0, 0.5, 2.0, 3.0, 0.25, 0.25]));
        }
        pop
    }

    #[test]
    fn fit_rejects_degenerate_inputs() {
        let v = fv([0.5; FEATURE_COUNT]);
        assert!(matches!(
            fit(&[v.clone(), v.clone()]),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(
            fit(&vec![v; 8]),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn constant_features_are_dropped() {
        let model = fit(&two_feature_population()).unwrap();
        for f in 2..FEATURE_COUNT {
            assert_eq!(model.stds[f], 0.0, "feature {f} should be dropped");
            assert_eq!(model.components[0][f], 0.0);
            assert_eq!(model.components[1][f], 0.0);
        }
        assert!(model.stds[0] > 0.0);
        assert!(model.stds[1] > 0.0);
        // Two informative features: the two components capture everything.
        let ve = model.variance_explained;
        assert!(ve[0] >= ve[1] && ve[1] >= 0.0);
        assert!((ve[0] + ve[1] - 1.0).abs() < 1e-9, "ve = {ve:?}");
    }

    #[test]
    fn components_are_orthonormal_and_sign_fixed() {
        let model = fit(&two_feature_population()).unwrap();
        for row in &model.components {
            let norm: f64 = row.iter().map(|v| v * v).sum::<f64>();
            assert!((norm - 1.0).abs() < 1e-9);
            let lead = row
                .iter()
                .cloned()
                .fold(0.0f64, |a, v| if v.abs() > a.abs() { v } else { a });
            assert!(lead > 0.0, "leading coefficient must be positive");
        }
        let dot: f64 = model.components[0]
            .iter()
            .zip(&model.components[1])
            .map(|(a, b)| a * b)
            .sum();
        assert!(dot.abs() < 1e-9);
    }

    #[test]
    fn training_centroid_projects_to_origin() {
        let pop = two_feature_population();
        let model = fit(&pop).unwrap();
        let mut cx = 0.0;
        let mut cy = 0.0;
        for v in &pop {
            let (x, y) = project(&model, v).unwrap();
            cx += x;
            cy += y;
        }
        cx /= pop.len() as f64;
        cy /= pop.len() as f64;
        assert!(cx.abs() < 1e-9 && cy.abs() < 1e-9, "centroid ({cx}, {cy})");
    }

    #[test]
    fn offsets_follow_the_minimum_rule() {
        let mut pop = two_feature_population();
        // Push feature 0 down so its min is -2: offset must be 1 - (-2) = 3.
        for (i, v) in pop.iter_mut().enumerate() {
            v.density = -2.0 + 0.1 * i as f64;
        }
        let model = fit(&pop).unwrap();
        assert_eq!(model.offsets[0], 3.0);
        // Feature 1 stays strictly positive: no offset.
        assert_eq!(model.offsets[1], 0.0);
        // A zero minimum also triggers the shift (min <= 0).
        for (i, v) in pop.iter_mut().enumerate() {
            v.density = 0.0 + 0.1 * i as f64;
        }
        let model = fit(&pop).unwrap();
        assert_eq!(model.offsets[0], 1.0);
    }

    #[test]
    fn fit_is_input_order_invariant() {
        let pop = real_population();
        let mut shuffled = pop.clone();
        shuffled.reverse();
        shuffled.swap(1, 10);
        shuffled.swap(3, 17);
        let a = fit(&pop).unwrap();
        let b = fit(&shuffled).unwrap();
        assert_eq!(a, b);
        assert_eq!(to_text(&a), to_text(&b));
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let model = fit(&real_population()).unwrap();
        let text = to_text(&model);
        let back = from_text(&text).unwrap();
        assert_eq!(model, back);
        assert_eq!(to_text(&back), text);
    }

    #[test]
    fn text_parser_rejects_corruption() {
        let model = fit(&real_population()).unwrap();
        let text = to_text(&model);
        assert!(from_text(&text.replace("projection-model v1", "model v2")).is_err());
        assert!(from_text(&text.replace("means", "medians")).is_err());
        assert!(from_text(text.trim_end().rsplit_once('\n').unwrap().0).is_err());
        let truncated_row = text.replace("variance_explained ", "variance_explained 0.5 ");
        assert!(from_text(&truncated_row).is_err());
    }

    #[test]
    fn projection_handles_out_of_range_inputs() {
        let model = fit(&real_population()).unwrap();
        // Absurdly negative values would push the log argument negative;
        // the clamp keeps the projection finite.
        let weird = fv([-100.0, -5.0, 0.0, 0.0, 0.0, -9.0, 0.0, 1.0, 0.0, 0.0]);
        let (x, y) = project(&model, &weird).unwrap();
        assert!(x.is_finite() && y.is_finite());
        // Non-finite input is refused.
        let bad = fv([f64::NAN, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(project(&model, &bad).is_err());
    }

    #[test]
    fn fingerprints_distinguish_datasets() {
        let a = fit(&real_population()).unwrap();
        let b = fit(&two_feature_population()).unwrap();
        assert_ne!(a.fitted_on, b.fitted_on);
        // Same data, same fingerprint, regardless of order.
        let mut rev = real_population();
        rev.reverse();
        assert_eq!(fit(&rev).unwrap().fitted_on, a.fitted_on);
    }

    #[test]
    fn single_informative_feature_still_yields_two_axes() {
        let mut pop = Vec::new();
        for i in 0..10 {
            pop.push(fv([
                0.1 * i as f64,
                7.0,
                7.0,
                7.0,
                7.0,
                7.0,
                7.0,
                7.0,
                7.0,
                7.0,
            ]));
        }
        let model = fit(&pop).unwrap();
        assert!((model.variance_explained[0] - 1.0).abs() < 1e-9);
        assert_eq!(model.variance_explained[1], 0.0);
        // Second axis is a unit vector and orthogonal to the first.
        let norm: f64 = model.components[1].iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        let (x, y) = project(&model, &pop[3]).unwrap();
        assert!(x.is_finite());
        assert_eq!(y, 0.0);
    }

    fn real_population() -> Vec<FeatureVector> {
        let mut pop = Vec::new();
        for seed in 0..20u64 {
            let g = generate(&GeneratorSpec {
                kind: GeneratorKind::ErdosRenyi {
                    p: 0.15 + 0.04 * (seed % 10) as f64,
                },
                n: 14,
                seed,
            })
            .unwrap();
            pop.push(crate::features::feature_vector(&g));
        }
        pop
    }
}
