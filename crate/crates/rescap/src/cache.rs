//! Binary on-disk cache of Laplacian pseudo-inverses.
//!
//! Keyed by a SHA-256 content hash of the edge set (node count, external
//! identifiers in index order, and the sorted edge pairs), so a cache entry
//! is only ever reused for a graph with identical structure. Layout:
//! 8-byte magic, `n` as little-endian `u64`, the 32-byte hash, then `n*n`
//! little-endian `f64` values in row-major order.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use sha2::{Digest, Sha256};

use crate::graph::AttributedGraph;

const MAGIC: &[u8; 8] = b"RCAPLDG1";

/// Content hash of a graph's edge set.
pub fn edge_set_hash(g: &AttributedGraph) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update((g.node_count() as u64).to_le_bytes());
    hasher.update((g.edge_count() as u64).to_le_bytes());
    for u in 0..g.node_count() {
        hasher.update(g.external_id(u).as_bytes());
        hasher.update([0]);
    }
    for (u, v) in g.edges() {
        hasher.update((u as u64).to_le_bytes());
        hasher.update((v as u64).to_le_bytes());
    }
    hasher.finalize().into()
}

/// Cache file path for a graph inside `dir`.
pub fn cache_path(dir: &Path, g: &AttributedGraph) -> PathBuf {
    let hash = edge_set_hash(g);
    let mut name = String::with_capacity(70);
    for byte in hash {
        name.push_str(&format!("{byte:02x}"));
    }
    name.push_str(".ldag");
    dir.join(name)
}

/// Write a pseudo-inverse for `g` to `path` (atomically: temp file plus
/// rename).
pub fn write_cache(path: &Path, g: &AttributedGraph, pinv: &DMatrix<f64>) -> std::io::Result<()> {
    let n = g.node_count();
    assert_eq!(pinv.nrows(), n);
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("ldag.tmp");
    {
        let mut file = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        file.write_all(MAGIC)?;
        file.write_all(&(n as u64).to_le_bytes())?;
        file.write_all(&edge_set_hash(g))?;
        for i in 0..n {
            for j in 0..n {
                file.write_all(&pinv[(i, j)].to_le_bytes())?;
            }
        }
        file.flush()?;
    }
    std::fs::rename(&tmp, path)
}

/// Read a cached pseudo-inverse for `g`; `None` on any mismatch or
/// corruption.
pub fn read_cache(path: &Path, g: &AttributedGraph) -> Option<DMatrix<f64>> {
    let mut file = std::io::BufReader::new(std::fs::File::open(path).ok()?);
    let mut magic = [0u8; 8];
    file.read_exact(&mut magic).ok()?;
    if &magic != MAGIC {
        return None;
    }
    let mut n_bytes = [0u8; 8];
    file.read_exact(&mut n_bytes).ok()?;
    let n = u64::from_le_bytes(n_bytes) as usize;
    if n != g.node_count() {
        return None;
    }
    let mut hash = [0u8; 32];
    file.read_exact(&mut hash).ok()?;
    if hash != edge_set_hash(g) {
        return None;
    }
    let mut values = Vec::with_capacity(n * n);
    let mut buf = [0u8; 8];
    for _ in 0..n * n {
        file.read_exact(&mut buf).ok()?;
        values.push(f64::from_le_bytes(buf));
    }
    Some(DMatrix::from_row_slice(n, n, &values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::LaplacianState;
    use crate::synthetic;

    #[test]
    fn round_trip_and_mismatch_rejection() {
        let dir = tempfile::tempdir().unwrap();
        let g = synthetic::connected_erdos_renyi(12, 0.3, 4);
        let state = LaplacianState::from_graph(&g).unwrap();
        let path = cache_path(dir.path(), &g);
        write_cache(&path, &g, state.pseudo_inverse()).unwrap();

        let loaded = read_cache(&path, &g).expect("cache hit");
        assert_eq!(&loaded, state.pseudo_inverse());

        // a structurally different graph must miss
        let mut g2 = g.clone();
        let (mut u, mut v) = (0, 1);
        'search: for a in 0..12 {
            for b in (a + 1)..12 {
                if !g2.has_edge(a, b) {
                    (u, v) = (a, b);
                    break 'search;
                }
            }
        }
        g2.add_edge(u, v).unwrap();
        assert!(read_cache(&path, &g2).is_none());

        // truncated file must miss
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
        assert!(read_cache(&path, &g).is_none());
    }
}
