//! A directory of `*.grp` files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::Context;
use groupeq_core::iso::{isomorphism, Fingerprint};
use groupeq_core::{Caps, FiniteGroup};
use rayon::prelude::*;

use crate::formats::group_file::parse_group;

/// Numbers of groups of orders 1 to 100.
pub const GROUP_COUNTS: [usize; 100] = [
    1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4, 1, 51, 1, 2, 1, 14, 1,
    2, 2, 14, 1, 6, 1, 4, 2, 2, 1, 52, 2, 5, 1, 5, 1, 15, 2, 13, 2, 2, 1, 13, 1, 2, 4, 267, 1, 4, 1, 5, 1, 4, 1, 50, 1,
    2, 3, 4, 1, 6, 1, 52, 15, 2, 1, 15, 1, 2, 1, 12, 1, 10, 1, 4, 2, 2, 1, 231, 1, 5, 2, 16,
];

pub fn expected_count(order: usize) -> Option<usize> {
    order.checked_sub(1).and_then(|i| GROUP_COUNTS.get(i)).copied()
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub file: String,
    pub group: Arc<FiniteGroup>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    /// Sorted by file name.
    pub entries: Vec<Entry>,
    /// Files that failed to load, with the reason.
    pub errors: Vec<(String, String)>,
}

/// Loads every `*.grp` file of `dir`. Per-file errors are collected.
pub fn load_catalog(dir: &Path, caps: &Caps) -> anyhow::Result<Catalog> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("catalog {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    files.sort();
    let loaded: Vec<(String, Result<FiniteGroup, String>)> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().unwrap_or_default().to_string_lossy().into_owned();
            let g = std::fs::read_to_string(p)
                .map_err(|e| e.to_string())
                .and_then(|t| parse_group(&t, caps).map_err(|e| e.to_string()));
            (name, g)
        })
        .collect();
    let mut cat = Catalog::default();
    for (file, g) in loaded {
        match g {
            Ok(g) => cat.entries.push(Entry {
                file,
                group: Arc::new(g),
            }),
            Err(e) => cat.errors.push((file, e)),
        }
    }
    Ok(cat)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogCheck {
    /// Pairs of isomorphic entries, by file name.
    pub duplicates: Vec<(String, String)>,
    /// `(order, groups present, number of groups of that order)`.
    pub counts: Vec<(usize, usize, Option<usize>)>,
    /// Orders too large for the isomorphism search.
    pub unchecked_orders: Vec<usize>,
}

/// Pairwise non-isomorphism within each order, and per-order counts.
pub fn check_catalog(cat: &Catalog, caps: &Caps) -> CatalogCheck {
    let mut by_order: BTreeMap<usize, Vec<&Entry>> = BTreeMap::new();
    for e in &cat.entries {
        by_order.entry(e.group.order()).or_default().push(e);
    }
    let mut out = CatalogCheck::default();
    let orders: Vec<(usize, Vec<&Entry>)> = by_order.into_iter().collect();
    let dups: Vec<Option<Vec<(String, String)>>> = orders
        .par_iter()
        .map(|(_, es)| {
            let fps: Vec<Fingerprint> = es.iter().map(|e| Fingerprint::of(&e.group)).collect();
            let mut d = Vec::new();
            for i in 0..es.len() {
                for j in i + 1..es.len() {
                    if fps[i] != fps[j] {
                        continue;
                    }
                    match isomorphism(&es[i].group, &es[j].group, caps) {
                        Ok(Some(_)) => d.push((es[i].file.clone(), es[j].file.clone())),
                        Ok(None) => {}
                        Err(_) => return None,
                    }
                }
            }
            Some(d)
        })
        .collect();
    for ((order, es), d) in orders.iter().zip(dups) {
        out.counts.push((*order, es.len(), expected_count(*order)));
        match d {
            Some(d) => out.duplicates.extend(d),
            None => out.unchecked_orders.push(*order),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_table() {
        assert_eq!(expected_count(16), Some(14));
        assert_eq!(expected_count(24), Some(15));
        assert_eq!(expected_count(42), Some(6));
        assert_eq!(expected_count(64), Some(267));
        assert_eq!(expected_count(0), None);
        assert_eq!(expected_count(101), None);
    }

    #[test]
    fn duplicates_and_errors() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("a.grp"), "group A order 2\ngenerators:\n(1 2)\n").unwrap();
        std::fs::write(dir.path().join("b.grp"), "group B order 2\ngenerators:\n(3 4)\n").unwrap();
        std::fs::write(dir.path().join("c.grp"), "group C order 3\ngenerators:\n(1 2)\n").unwrap();
        std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
        let cat = load_catalog(dir.path(), &Caps::default()).unwrap();
        assert_eq!(cat.entries.len(), 2);
        assert_eq!(cat.errors.len(), 1);
        assert_eq!(cat.errors[0].0, "c.grp");
        let check = check_catalog(&cat, &Caps::default());
        assert_eq!(check.duplicates, [("a.grp".to_string(), "b.grp".to_string())]);
        assert_eq!(check.counts, [(2, 2, Some(1))]);
    }
}
