//! Frozen reference partitions at rank 3, bundled as data files: the
//! recording-fiber cells with their common recording bitableaux, and the
//! cell partitions of two weighted orders. Small enough to audit by
//! hand, strong enough to pin the engine.

use serde::Deserialize;

use crate::error::Result;
use crate::group::{ElementIndex, Group, SignedPermutation};

#[derive(Deserialize)]
pub struct RecordingCells {
    pub n: usize,
    pub cells: Vec<RecordingCell>,
}

#[derive(Deserialize)]
pub struct RecordingCell {
    /// Reduced words of the members, space-separated generator tokens.
    pub words: Vec<String>,
    /// The members' common recording bitableau in `plus|minus` text form.
    pub recording: String,
}

#[derive(Deserialize)]
pub struct WeightedTables {
    pub n: usize,
    pub blocks: Vec<WeightedBlock>,
}

#[derive(Deserialize)]
pub struct WeightedBlock {
    pub c: i64,
    pub d: i64,
    pub cells: Vec<Vec<String>>,
}

pub fn rank3_recording_cells() -> RecordingCells {
    serde_json::from_str(include_str!("../data/rank3_recording_cells.json"))
        .expect("bundled recording cells parse")
}

pub fn rank3_weighted_cells() -> WeightedTables {
    serde_json::from_str(include_str!("../data/rank3_weighted_cells.json"))
        .expect("bundled weighted cells parse")
}

/// Converts lists of reduced words into the canonical partition form:
/// each part sorted by enumeration index, parts sorted by first member.
pub fn parts_as_indices(group: &Group, parts: &[Vec<String>]) -> Result<Vec<Vec<ElementIndex>>> {
    let mut out = Vec::with_capacity(parts.len());
    for part in parts {
        let mut indices = Vec::with_capacity(part.len());
        for word in part {
            indices.push(group.index(&SignedPermutation::parse_word(word, group.rank())?));
        }
        indices.sort_unstable();
        out.push(indices);
    }
    out.sort_unstable_by_key(|p| p.first().copied());
    Ok(out)
}
