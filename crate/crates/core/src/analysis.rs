//! Landscape analytics: runtime histograms, provenance footprints,
//! nearest-neighbour classification of which solver wins, and a simple
//! threshold rule for spotting the exact-solver-dominant region.

use crate::archive::InstanceRecord;
use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::rng::chacha;
use rand::Rng;

/// Which solver finished first on an instance. Ties (a zero runtime
/// difference) count as the exact solver winning, since the heuristic
/// then buys nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgoLabel {
    ExactFaster,
    HeuristicFaster,
}

impl AlgoLabel {
    /// Labels a runtime difference (heuristic seconds minus exact
    /// seconds): non-negative means the exact solver was at least as fast.
    pub fn of_runtime_diff(diff: f64) -> AlgoLabel {
        if diff >= 0.0 {
            AlgoLabel::ExactFaster
        } else {
            AlgoLabel::HeuristicFaster
        }
    }

    /// Stable name for reports and CSV cells.
    pub fn name(self) -> &'static str {
        match self {
            AlgoLabel::ExactFaster => "exact-faster",
            AlgoLabel::HeuristicFaster => "heuristic-faster",
        }
    }

    fn index(self) -> usize {
        match self {
            AlgoLabel::ExactFaster => 0,
            AlgoLabel::HeuristicFaster => 1,
        }
    }
}

/// Fixed-width histogram over half-open bins `[start + i·w, start + (i+1)·w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    /// Left edge of bin 0.
    pub start: f64,
    /// Bin width.
    pub width: f64,
    pub counts: Vec<u64>,
    /// The clamp range applied to values before binning, if any.
    pub clamped: Option<(f64, f64)>,
}

impl Histogram {
    /// Edges of bin `i` as `(left, right)`.
    pub fn bin_edges(&self, i: usize) -> (f64, f64) {
        (
            self.start + i as f64 * self.width,
            self.start + (i + 1) as f64 * self.width,
        )
    }

    /// Total number of binned values.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Bins runtime differences (or any finite values).
///
/// Without a clamp, bins are aligned to multiples of `width` (bin edges
/// land on `k·width`) and cover every value; with `clamp = Some((lo, hi))`
/// the bins span exactly `[lo, hi)` starting at `lo`, and out-of-range
/// values are clamped onto the end bins.
pub fn runtime_histogram(
    values: &[f64],
    width: f64,
    clamp: Option<(f64, f64)>,
) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::invalid("histogram needs at least one value".to_string()));
    }
    if !width.is_finite() || width <= 0.0 {
        return Err(Error::invalid(format!("bin width must be positive, got {width}")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("histogram values must be finite".to_string()));
    }
    let (start, bins) = match clamp {
        Some((lo, hi)) => {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::invalid(format!(
                    "clamp range must be finite with low < high, got ({lo}, {hi})"
                )));
            }
            (lo, ((hi - lo) / width).ceil() as usize)
        }
        None => {
            let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let start = (min / width).floor() * width;
            let bins = ((max - start) / width).floor() as usize + 1;
            (start, bins)
        }
    };
    let bins = bins.max(1);
    let mut counts = vec![0u64; bins];
    for &v in values {
        let v = match clamp {
            Some((lo, hi)) => v.clamp(lo, hi),
            None => v,
        };
        let idx = (((v - start) / width).floor() as isize).clamp(0, bins as isize - 1) as usize;
        counts[idx] += 1;
    }
    Ok(Histogram {
        start,
        width,
        counts,
        clamped: clamp,
    })
}

/// Selects the records whose provenance matches `tag` (the footprint of
/// that source on the landscape). Tags: `generator`, `generator:<kind>`,
/// `evolved`, `evolved:<mode>`. Unknown tags match nothing.
pub fn footprint<'a>(records: &'a [InstanceRecord], tag: &str) -> Vec<&'a InstanceRecord> {
    records
        .iter()
        .filter(|r| r.provenance.matches_tag(tag))
        .collect()
}

/// A labelled instance in landscape coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LabeledPoint {
    pub x: f64,
    pub y: f64,
    pub label: AlgoLabel,
    /// Heuristic seconds minus exact seconds.
    pub runtime_diff: f64,
    pub instance_id: u64,
}

impl LabeledPoint {
    /// Builds a point from a record that has coordinates and a runtime
    /// difference; `None` if either is missing.
    pub fn from_record(r: &InstanceRecord) -> Option<LabeledPoint> {
        let (x, y) = (r.px?, r.py?);
        let diff = r.runtime_diff()?;
        Some(LabeledPoint {
            x,
            y,
            label: AlgoLabel::of_runtime_diff(diff),
            runtime_diff: diff,
            instance_id: r.id,
        })
    }
}

fn dist2(p: &LabeledPoint, q: (f64, f64)) -> f64 {
    let dx = p.x - q.0;
    let dy = p.y - q.1;
    dx * dx + dy * dy
}

/// k-nearest-neighbour vote in the plane.
///
/// Neighbours are ordered by squared distance, ties broken by smaller
/// instance id (so the answer never depends on input order). `k` is
/// capped at the training size. A split vote falls back to the single
/// nearest neighbour's label.
pub fn knn_classify(train: &[LabeledPoint], query: (f64, f64), k: usize) -> Result<AlgoLabel> {
    if train.is_empty() {
        return Err(Error::invalid("knn needs a non-empty training set".to_string()));
    }
    if k == 0 {
        return Err(Error::invalid("knn needs k >= 1".to_string()));
    }
    if !(query.0.is_finite() && query.1.is_finite()) {
        return Err(Error::invalid("knn query must be finite".to_string()));
    }
    let mut order: Vec<&LabeledPoint> = train.iter().collect();
    order.sort_by(|a, b| {
        dist2(a, query)
            .total_cmp(&dist2(b, query))
            .then(a.instance_id.cmp(&b.instance_id))
    });
    let k = k.min(order.len());
    let mut votes = [0usize; 2];
    for p in &order[..k] {
        votes[p.label.index()] += 1;
    }
    Ok(match votes[0].cmp(&votes[1]) {
        std::cmp::Ordering::Greater => AlgoLabel::ExactFaster,
        std::cmp::Ordering::Less => AlgoLabel::HeuristicFaster,
        std::cmp::Ordering::Equal => order[0].label,
    })
}

/// Held-out evaluation of the kNN solver-choice classifier.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifierReport {
    pub k: usize,
    pub train_size: usize,
    pub test_size: usize,
    /// Fraction of held-out points classified correctly.
    pub accuracy: f64,
    /// `confusion[actual][predicted]` with rows/columns in label order
    /// (exact-faster, heuristic-faster).
    pub confusion: [[u64; 2]; 2],
    /// Ids of misclassified held-out instances, ascending.
    pub misclassified: Vec<u64>,
}

/// Shuffles the points with a seeded permutation, trains on the first
/// half, and scores the second half.
///
/// Requires at least `2·k` points (and at least 2) so both halves are
/// usable.
pub fn evaluate_classifier(
    points: &[LabeledPoint],
    split_seed: u64,
    k: usize,
) -> Result<ClassifierReport> {
    if k == 0 {
        return Err(Error::invalid("knn needs k >= 1".to_string()));
    }
    if points.len() < (2 * k).max(2) {
        return Err(Error::InsufficientData(format!(
            "classifier evaluation needs at least {} points, got {}",
            (2 * k).max(2),
            points.len()
        )));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    let mut rng = chacha(split_seed);
    for i in (1..order.len()).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let half = order.len() / 2;
    let train: Vec<LabeledPoint> = order[..half].iter().map(|&i| points[i]).collect();
    let test: Vec<LabeledPoint> = order[half..].iter().map(|&i| points[i]).collect();
    let mut confusion = [[0u64; 2]; 2];
    let mut misclassified = Vec::new();
    for p in &test {
        let predicted = knn_classify(&train, (p.x, p.y), k)?;
        confusion[p.label.index()][predicted.index()] += 1;
        if predicted != p.label {
            misclassified.push(p.instance_id);
        }
    }
    misclassified.sort_unstable();
    let correct = confusion[0][0] + confusion[1][1];
    Ok(ClassifierReport {
        k,
        train_size: train.len(),
        test_size: test.len(),
        accuracy: correct as f64 / test.len() as f64,
        confusion,
        misclassified,
    })
}

/// Thresholds for the hand-written "exact solver dominates" rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DominanceThresholds {
    /// Inclusive density band.
    pub density_min: f64,
    pub density_max: f64,
    /// Exact diameter required.
    pub diameter: usize,
    /// Degree skewness must be strictly below this.
    pub skewness_max: f64,
}

impl Default for DominanceThresholds {
    fn default() -> Self {
        DominanceThresholds {
            density_min: 0.25,
            density_max: 0.35,
            diameter: 2,
            skewness_max: 0.0,
        }
    }
}

/// Outcome of the threshold rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DominancePrediction {
    /// Mid-density, diameter-2, left-skewed degree graphs: the region
    /// where the exact solver tends to win outright.
    ExactDominant,
    Unremarkable,
}

/// Applies the threshold rule to a feature vector: density inside the
/// band (inclusive), diameter exactly as required, and degree skewness
/// strictly below the cutoff.
pub fn dominance_rule(fv: &FeatureVector, th: &DominanceThresholds) -> DominancePrediction {
    let hit = fv.density >= th.density_min
        && fv.density <= th.density_max
        && fv.diameter == th.diameter
        && fv.degree_skewness < th.skewness_max;
    if hit {
        DominancePrediction::ExactDominant
    } else {
        DominancePrediction::Unremarkable
    }
}
