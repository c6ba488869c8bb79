//! Persistent text cache for computed polynomial tables.
//!
//! One file per (rank, order) pair. The format is line-oriented and
//! deterministic: a short header followed by coordinate records sorted by
//! column, then structure-element records. A header mismatch is reported
//! as an error so the caller can fall back to recomputation.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::laurent::{LaurentElement, OrderSpec};

use super::KLStore;

const FORMAT_VERSION: u32 = 1;

/// File name for a given rank and order, stable across runs.
pub fn file_name(rank: usize, spec: &OrderSpec) -> String {
    format!("pstar-n{}-{}.txt", rank, spec.key())
}

/// Full path inside a cache directory.
pub fn file_path(dir: &Path, rank: usize, spec: &OrderSpec) -> PathBuf {
    dir.join(file_name(rank, spec))
}

fn header(rank: usize, spec: &OrderSpec) -> String {
    let spec_line = match spec {
        OrderSpec::Asymptotic => "spec asymptotic".to_string(),
        OrderSpec::Weighted { c, d } => format!("spec weighted {c} {d}"),
    };
    format!("klcache {FORMAT_VERSION}\nrank {rank}\n{spec_line}\n")
}

/// Writes the store's tables to the given file.
pub fn save(store: &KLStore, path: &Path) -> Result<()> {
    let group = store.group();
    let mut out = header(group.rank(), store.spec());
    for (y, w) in store.pstar_pairs() {
        out.push_str(&format!(
            "P|{}|{}|{}\n",
            group.element(y).window_string(),
            group.element(w).window_string(),
            store.pstar(y, w)
        ));
    }
    for (g, y, w) in store.m_keys() {
        out.push_str(&format!(
            "M|{}|{}|{}|{}\n",
            g,
            group.element(y).window_string(),
            group.element(w).window_string(),
            store.m_polynomial(g, y, w)
        ));
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads tables from a cache file, validating the header against the
/// requested rank and order.
pub fn load(group: Arc<Group>, spec: &OrderSpec, path: &Path) -> Result<KLStore> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let expect = |lines: &mut std::str::Lines<'_>, want: &str| -> Result<()> {
        let got = lines.next().unwrap_or("");
        if got == want {
            Ok(())
        } else {
            Err(Error::Cache(format!("header line {got:?}, expected {want:?}")))
        }
    };
    let head = header(group.rank(), spec);
    for want in head.lines() {
        expect(&mut lines, want)?;
    }

    let mut store = KLStore::empty(Arc::clone(&group), spec.clone());
    let dim = spec.dim();
    let index_of = |text: &str| -> Result<crate::group::ElementIndex> {
        let w = crate::group::SignedPermutation::parse_window(text)?;
        if w.rank() != group.rank() {
            return Err(Error::Cache(format!("window {text:?} has the wrong rank")));
        }
        Ok(group.index(&w))
    };
    for (no, line) in lines.enumerate() {
        let bad = |reason: String| Error::Cache(format!("record {}: {reason}", no + 4));
        let mut fields = line.split('|');
        let kind = fields.next().unwrap_or("");
        match kind {
            "P" => {
                let (y, w, poly) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
                    (Some(y), Some(w), Some(p), None) => (y, w, p),
                    _ => return Err(bad("expected P|y|w|poly".to_string())),
                };
                store.insert_pstar(index_of(y)?, index_of(w)?, LaurentElement::parse(poly, dim)?);
            }
            "M" => {
                let (g, y, w, poly) =
                    match (fields.next(), fields.next(), fields.next(), fields.next(), fields.next()) {
                        (Some(g), Some(y), Some(w), Some(p), None) => (g, y, w, p),
                        _ => return Err(bad("expected M|g|y|w|poly".to_string())),
                    };
                let g_idx: usize =
                    g.parse().map_err(|_| bad(format!("bad generator index {g:?}")))?;
                if g_idx >= group.generator_count() {
                    return Err(bad(format!("generator index {g_idx} out of range")));
                }
                store.insert_m(g_idx, index_of(y)?, index_of(w)?, LaurentElement::parse(poly, dim)?);
            }
            "" => {}
            other => return Err(bad(format!("unknown record kind {other:?}"))),
        }
    }
    store.finish_load();
    Ok(store)
}

/// Loads a cache if present and valid; otherwise computes and saves.
/// Returns the store and a note when an invalid cache was replaced.
pub fn load_or_build(
    group: Arc<Group>,
    spec: &OrderSpec,
    dir: &Path,
) -> Result<(KLStore, Option<String>)> {
    let path = file_path(dir, group.rank(), spec);
    let mut note = None;
    if path.exists() {
        match load(Arc::clone(&group), spec, &path) {
            Ok(store) => return Ok((store, None)),
            Err(err) => note = Some(format!("cache {} unusable ({err}); recomputing", path.display())),
        }
    }
    let store = KLStore::build(group, spec.clone())?;
    save(&store, &path)?;
    Ok((store, note))
}
