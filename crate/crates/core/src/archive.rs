//! Append-only JSON-lines instance archives.
//!
//! One line = one [`InstanceRecord`] = one graph plus everything measured
//! about it so far (solve times, fitness, features, landscape
//! coordinates). Records carry a stable content id (FNV-1a over node
//! count and packed edge bytes) so rows can be cross-referenced and
//! tampering/corruption is caught on read. Unknown JSON keys survive a
//! read/write cycle untouched, so foreign tooling can annotate records
//! without this crate erasing the annotations.

use std::collections::BTreeMap;
use std::io::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Where an instance came from.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Provenance {
    /// Produced by a named generator family.
    Generator { kind: String },
    /// Produced by an evolution run.
    Evolved {
        run_id: u64,
        generation: usize,
        /// Fitness mode of the run: `runtime-diff-max`, `runtime-diff-min`,
        /// `novelty`, or `target`.
        mode: String,
    },
}

impl Provenance {
    /// Tag matching for footprint filtering: `generator` and `evolved`
    /// match whole families; `generator:<kind>` / `evolved:<mode>` match
    /// exactly; anything else matches nothing.
    pub fn matches_tag(&self, tag: &str) -> bool {
        match self {
            Provenance::Generator { kind } => {
                tag == "generator"
                    || tag
                        .strip_prefix("generator:")
                        .is_some_and(|want| want == kind)
            }
            Provenance::Evolved { mode, .. } => {
                tag == "evolved"
                    || tag
                        .strip_prefix("evolved:")
                        .is_some_and(|want| want == mode)
            }
        }
    }
}

/// Fixed-width lowercase hex (de)serialization for the 64-bit id: JSON
/// numbers lose precision past 2^53, so the id travels as a string.
mod hex_u64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{v:016x}"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let s = String::deserialize(d)?;
        u64::from_str_radix(&s, 16)
            .map_err(|_| serde::de::Error::custom(format!("bad hex id {s:?}")))
    }
}

/// One archived instance.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct InstanceRecord {
    /// Stable content id (hex string on the wire); always recomputable
    /// from `n` + `edge_hex`, and verified on read.
    #[serde(with = "hex_u64")]
    pub id: u64,
    pub n: usize,
    /// Packed edge bit vector, lowercase hex.
    pub edge_hex: String,
    pub provenance: Provenance,
    /// Runtime-difference fitness (heuristic seconds minus exact
    /// seconds), when measured.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fitness: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_exact: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_heuristic: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hcn_exact: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hcn_heuristic: Option<u64>,
    /// The ten features in canonical order, when computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub features: Option<Vec<f64>>,
    /// Landscape coordinates, when projected.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub px: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub py: Option<f64>,
    /// Unknown keys from foreign writers, preserved verbatim.
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl InstanceRecord {
    /// Fresh record for a graph: identity fields only, measurements unset.
    pub fn from_graph(g: &Graph, provenance: Provenance) -> InstanceRecord {
        InstanceRecord {
            id: g.stable_id(),
            n: g.n(),
            edge_hex: g.to_edge_hex(),
            provenance,
            fitness: None,
            t_exact: None,
            t_heuristic: None,
            hcn_exact: None,
            hcn_heuristic: None,
            features: None,
            px: None,
            py: None,
            extra: BTreeMap::new(),
        }
    }

    /// Decodes the graph this record describes.
    pub fn graph(&self) -> Result<Graph> {
        Graph::from_edge_hex(self.n, &self.edge_hex)
    }

    /// The runtime difference this record knows: the stored fitness, or
    /// the difference of stored times.
    pub fn runtime_diff(&self) -> Option<f64> {
        self.fitness
            .or(match (self.t_heuristic, self.t_exact) {
                (Some(h), Some(e)) => Some(h - e),
                _ => None,
            })
    }

    /// Internal consistency: id matches content, features have canonical
    /// arity, stored fitness agrees with stored times, coordinates are
    /// finite.
    pub fn validate(&self) -> Result<()> {
        let g = self.graph()?;
        if g.stable_id() != self.id {
            return Err(Error::invalid(format!(
                "record id {:016x} does not match content id {:016x}",
                self.id,
                g.stable_id()
            )));
        }
        if let Some(f) = &self.features {
            if f.len() != crate::features::FEATURE_COUNT {
                return Err(Error::invalid(format!(
                    "features array has {} entries, expected {}",
                    f.len(),
                    crate::features::FEATURE_COUNT
                )));
            }
            if !f.iter().all(|v| v.is_finite()) {
                return Err(Error::invalid("non-finite feature value".to_string()));
            }
        }
        if let (Some(fit), Some(te), Some(th)) = (self.fitness, self.t_exact, self.t_heuristic) {
            if (fit - (th - te)).abs() > 1e-9 {
                return Err(Error::invalid(format!(
                    "fitness {fit} disagrees with t_heuristic - t_exact = {}",
                    th - te
                )));
            }
        }
        for (name, v) in [("px", self.px), ("py", self.py), ("fitness", self.fitness)] {
            if let Some(v) = v {
                if !v.is_finite() {
                    return Err(Error::invalid(format!("non-finite {name}")));
                }
            }
        }
        Ok(())
    }

    /// Serializes to one JSON line (no trailing newline).
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }
}

/// Parses and validates a whole archive. Blank lines are permitted and
/// skipped; any malformed or inconsistent line fails the read with its
/// 1-based line number.
pub fn read_archive(text: &str) -> Result<Vec<InstanceRecord>> {
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: InstanceRecord = serde_json::from_str(line)
            .map_err(|e| Error::format(line_no, e.to_string()))?;
        record
            .validate()
            .map_err(|e| Error::format(line_no, e.to_string()))?;
        records.push(record);
    }
    Ok(records)
}

/// Serializes records to archive text (one line each, trailing newline).
pub fn to_archive_text(records: &[InstanceRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_line());
        out.push('\n');
    }
    out
}

/// Append-only archive file handle.
///
/// Each record goes out as a single `write` of one full line to an
/// `O_APPEND` descriptor, so concurrent writers interleave only at line
/// boundaries — never inside a line.
pub struct ArchiveWriter {
    file: std::fs::File,
}

impl ArchiveWriter {
    /// Opens (creating if needed) an archive for appending.
    pub fn open(path: &std::path::Path) -> std::io::Result<ArchiveWriter> {
        let file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)?;
        Ok(ArchiveWriter { file })
    }

    /// Appends one record as one atomic line write.
    pub fn append(&mut self, record: &InstanceRecord) -> std::io::Result<()> {
        let mut line = record.to_line();
        line.push('\n');
        self.file.write_all(line.as_bytes())
    }

    /// Flushes OS buffers (appends are unbuffered already; this is for
    /// callers who want an fsync-ish barrier).
    pub fn sync(&mut self) -> std::io::Result<()> {
        self.file.sync_data()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorKind, GeneratorSpec};

    fn sample_graph(seed: u64) -> Graph {
        generate(&GeneratorSpec {
            kind: GeneratorKind::ErdosRenyi { p: 0.4 },
            n: 10,
            seed,
        })
        .unwrap()
    }

    fn sample_record(seed: u64) -> InstanceRecord {
        let g = sample_graph(seed);
        let mut r = InstanceRecord::from_graph(
            &g,
            Provenance::Generator {
                kind: "erdos-renyi".to_string(),
            },
        );
        r.t_exact = Some(0.002);
        r.t_heuristic = Some(0.0005);
        r.fitness = Some(0.0005 - 0.002);
        r.hcn_exact = Some(1);
        r.hcn_heuristic = Some(1);
        r
    }

    #[test]
    fn round_trip_preserves_records() {
        let records: Vec<InstanceRecord> = (0..5).map(sample_record).collect();
        let text = to_archive_text(&records);
        let back = read_archive(&text).unwrap();
        assert_eq!(records, back);
        // Byte-stable serialization: same records, same text.
        assert_eq!(to_archive_text(&back), text);
    }

    #[test]
    fn id_tampering_is_caught_with_line_number() {
        let mut records: Vec<InstanceRecord> = (0..3).map(sample_record).collect();
        records[1].id ^= 0xff; // corrupt
        let text = to_archive_text(&records);
        let err = read_archive(&text).unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }), "{err}");
    }

    #[test]
    fn fitness_time_inconsistency_is_caught() {
        let mut r = sample_record(0);
        r.fitness = Some(123.0);
        let err = read_archive(&to_archive_text(&[r])).unwrap_err();
        assert!(err.to_string().contains("fitness"), "{err}");
    }

    #[test]
    fn malformed_json_is_a_format_error() {
        let err = read_archive("{not json}\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 1, .. }), "{err}");
        // Blank lines are fine.
        let ok = read_archive(&format!("\n{}\n\n", sample_record(1).to_line())).unwrap();
        assert_eq!(ok.len(), 1);
    }

    #[test]
    fn wrong_feature_arity_is_rejected() {
        let mut r = sample_record(0);
        r.features = Some(vec![1.0, 2.0]);
        assert!(read_archive(&to_archive_text(&[r])).is_err());
    }

    #[test]
    fn unknown_keys_survive_round_trips() {
        let mut line = sample_record(2).to_line();
        assert!(line.ends_with('}'));
        line.truncate(line.len() - 1);
        line.push_str(",\"annotation\":\"by a human\",\"review_score\":7}");
        let records = read_archive(&line).unwrap();
        assert_eq!(
            records[0].extra.get("annotation"),
            Some(&serde_json::Value::String("by a human".to_string()))
        );
        let re_emitted = records[0].to_line();
        assert!(re_emitted.contains("\"annotation\":\"by a human\""));
        assert!(re_emitted.contains("\"review_score\":7"));
    }

    #[test]
    fn runtime_diff_prefers_fitness_then_times() {
        let mut r = sample_record(0);
        assert_eq!(r.runtime_diff(), r.fitness);
        r.fitness = None;
        let diff = r.runtime_diff().unwrap();
        assert!((diff - (0.0005 - 0.002)).abs() < 1e-15);
        r.t_exact = None;
        assert_eq!(r.runtime_diff(), None);
    }

    #[test]
    fn provenance_tags_match_families_and_members() {
        let g = Provenance::Generator {
            kind: "circle".to_string(),
        };
        assert!(g.matches_tag("generator"));
        assert!(g.matches_tag("generator:circle"));
        assert!(!g.matches_tag("generator:star"));
        assert!(!g.matches_tag("evolved"));
        assert!(!g.matches_tag("weird"));
        let e = Provenance::Evolved {
            run_id: 3,
            generation: 17,
            mode: "novelty".to_string(),
        };
        assert!(e.matches_tag("evolved"));
        assert!(e.matches_tag("evolved:novelty"));
        assert!(!e.matches_tag("evolved:target"));
        assert!(!e.matches_tag("generator"));
    }

    #[test]
    fn id_serializes_as_hex_string() {
        let r = sample_record(0);
        let line = r.to_line();
        let expected = format!("\"id\":\"{:016x}\"", r.id);
        assert!(line.contains(&expected), "{line}");
    }

    #[test]
    fn concurrent_appends_stay_line_atomic() {
        let path = std::env::temp_dir().join(format!(
            "archive-stress-{}-{}.jsonl",
            std::process::id(),
            crate::rng::splitmix64(0xfeed)
        ));
        let _ = std::fs::remove_file(&path);
        let workers = 4;
        let per_worker = 250;
        std::thread::scope(|scope| {
            for w in 0..workers {
                let path = path.clone();
                scope.spawn(move || {
                    let mut writer = ArchiveWriter::open(&path).unwrap();
                    for i in 0..per_worker {
                        let rec = sample_record((w * per_worker + i) as u64);
                        writer.append(&rec).unwrap();
                    }
                });
            }
        });
        let text = std::fs::read_to_string(&path).unwrap();
        let records = read_archive(&text).unwrap();
        assert_eq!(records.len(), workers * per_worker);
        std::fs::remove_file(&path).unwrap();
    }
}
