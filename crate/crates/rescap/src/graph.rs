//! Undirected attributed graphs: construction, text ingestion, attribute
//! partitioning and connected-component extraction.
//!
//! Nodes carry an external string identifier and an optional categorical
//! attribute value; internally they are dense `0..n` indices so that all
//! matrix code can index directly. Graphs are simple (no self-loops, no
//! parallel edges) and immutable except for [`AttributedGraph::add_edge`],
//! which requires exclusive access.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::io::{BufReader, Read};
use std::path::Path;

use crate::error::{Error, Result};

/// Undirected simple graph with per-node attribute labels.
///
/// `None` labels mean the attribute value is unknown; such nodes stay in the
/// graph (they contribute to every pairwise resistance) but belong to no
/// group of a [`GroupPartition`].
#[derive(Debug, Clone, PartialEq)]
pub struct AttributedGraph {
    node_ids: Vec<String>,
    id_index: HashMap<String, usize>,
    /// Sorted adjacency lists; `neighbors[u]` never contains `u`.
    neighbors: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
    edge_count: usize,
}

/// Counts of irregularities observed while loading input files.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadWarnings {
    /// Edge rows of the form `(a, a)`, dropped.
    pub self_loops: usize,
    /// Edge rows repeating an already-seen pair (in either order), collapsed.
    pub duplicate_edges: usize,
    /// Attribute rows repeating a node; the last row wins.
    pub duplicate_attributes: usize,
    /// Attribute rows naming a node that never appears in the edge list.
    pub unmatched_attribute_rows: usize,
}

impl AttributedGraph {
    /// Build a graph over `n` nodes from internal-index edge pairs. External
    /// identifiers default to the decimal index and all labels to unknown.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut g = AttributedGraph {
            node_ids: (0..n).map(|i| i.to_string()).collect(),
            id_index: (0..n).map(|i| (i.to_string(), i)).collect(),
            neighbors: vec![Vec::new(); n],
            labels: vec![None; n],
            edge_count: 0,
        };
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Number of nodes `n`.
    pub fn node_count(&self) -> usize {
        self.node_ids.len()
    }

    /// Number of undirected edges `m`.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sum of all degrees, `vol(G) = 2m`.
    pub fn volume(&self) -> usize {
        2 * self.edge_count
    }

    /// Degree of node `u`.
    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    /// Neighbors of `u`, sorted ascending.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v
            && u < self.node_count()
            && v < self.node_count()
            && self.neighbors[u].binary_search(&v).is_ok()
    }

    /// External identifier of internal index `u`.
    pub fn external_id(&self, u: usize) -> &str {
        &self.node_ids[u]
    }

    /// Internal index of an external identifier, if present.
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.id_index.get(id).copied()
    }

    /// Attribute value of node `u`; `None` means unknown.
    pub fn label(&self, u: usize) -> Option<&str> {
        self.labels[u].as_deref()
    }

    /// Set the attribute value of node `u` (construction-time helper).
    pub fn set_label(&mut self, u: usize, value: Option<&str>) {
        self.labels[u] = value.map(str::to_owned);
    }

    /// All edges as normalized `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    fn check_index(&self, u: usize) -> Result<()> {
        if u >= self.node_count() {
            return Err(Error::IndexOutOfBounds {
                index: u,
                len: self.node_count(),
            });
        }
        Ok(())
    }

    /// Insert the edge `(u, v)`. Errors on self-loops, existing edges, and
    /// out-of-range indices. Requires exclusive access, so no reader can
    /// observe a half-updated adjacency.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_index(u)?;
        self.check_index(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::EdgeExists {
                u: u.min(v),
                v: u.max(v),
            });
        }
        let pos_v = self.neighbors[u].binary_search(&v).unwrap_err();
        self.neighbors[u].insert(pos_v, v);
        let pos_u = self.neighbors[v].binary_search(&u).unwrap_err();
        self.neighbors[v].insert(pos_u, u);
        self.edge_count += 1;
        Ok(())
    }

    /// Copy of this graph with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    /// True when a breadth-first search from node 0 reaches every node.
    pub fn is_connected(&self) -> bool {
        if self.node_count() == 0 {
            return false;
        }
        self.bfs_component(0, &mut vec![false; self.node_count()]).len() == self.node_count()
    }

    fn bfs_component(&self, start: usize, visited: &mut [bool]) -> Vec<usize> {
        let mut comp = vec![start];
        let mut head = 0;
        visited[start] = true;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for &v in &self.neighbors[u] {
                if !visited[v] {
                    visited[v] = true;
                    comp.push(v);
                }
            }
        }
        comp
    }

    /// Connected components as lists of internal indices, in order of their
    /// smallest contained index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut visited = vec![false; self.node_count()];
        let mut out = Vec::new();
        for start in 0..self.node_count() {
            if !visited[start] {
                let mut comp = self.bfs_component(start, &mut visited);
                comp.sort_unstable();
                out.push(comp);
            }
        }
        out
    }

    /// Induced subgraph on the largest connected component, indices
    /// re-densified in increasing order of the original indices. Ties between
    /// equal-size components go to the one containing the smallest original
    /// index. On an already-connected graph this is the identity.
    pub fn largest_connected_component(&self) -> AttributedGraph {
        let comps = self.components();
        // components() yields by smallest contained index, so the first
        // maximum is the tie-rule winner.
        let best = comps
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
            .map(|(i, _)| i)
            .expect("graph has at least one node");
        let keep = &comps[best];
        let mut remap = vec![usize::MAX; self.node_count()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let mut g = AttributedGraph {
            node_ids: keep.iter().map(|&u| self.node_ids[u].clone()).collect(),
            id_index: HashMap::new(),
            neighbors: vec![Vec::new(); keep.len()],
            labels: keep.iter().map(|&u| self.labels[u].clone()).collect(),
            edge_count: 0,
        };
        g.id_index = g
            .node_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        for (new_u, &old_u) in keep.iter().enumerate() {
            for &old_v in &self.neighbors[old_u] {
                let new_v = remap[old_v];
                g.neighbors[new_u].push(new_v);
            }
            g.neighbors[new_u].sort_unstable();
        }
        g.edge_count = g.neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        g
    }

    /// Serialize to the edge-list text format accepted by [`load_graph`]
    /// (one `u,v` pair of external identifiers per line).
    pub fn write_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{},{}", self.node_ids[u], self.node_ids[v]);
        }
        out
    }

    /// Serialize the attribute table (`node,<attribute_name>` CSV); unknown
    /// values become empty fields.
    pub fn write_attributes(&self, attribute_name: &str) -> String {
        let mut out = format!("node,{attribute_name}\n");
        for u in 0..self.node_count() {
            let _ = writeln!(
                out,
                "{},{}",
                self.node_ids[u],
                self.labels[u].as_deref().unwrap_or("")
            );
        }
        out
    }
}

/// Node groups induced by a categorical attribute.
///
/// Group keys are the observed attribute values; nodes with unknown values
/// land in `excluded` and belong to no group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPartition {
    groups: BTreeMap<String, Vec<usize>>,
    excluded: Vec<usize>,
}

impl GroupPartition {
    /// Groups keyed by attribute value, members sorted ascending.
    pub fn groups(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.groups
    }

    /// Nodes with unknown attribute value.
    pub fn excluded(&self) -> &[usize] {
        &self.excluded
    }

    pub fn group(&self, value: &str) -> Option<&[usize]> {
        self.groups.get(value).map(Vec::as_slice)
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Membership mask for one group, indexed by internal node index.
    pub fn mask(&self, value: &str, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        if let Some(members) = self.groups.get(value) {
            for &u in members {
                mask[u] = true;
            }
        }
        mask
    }
}

/// Group the nodes of `g` by attribute value. Unknown-valued nodes are
/// excluded (but remain part of the graph). Errors when no node has a known
/// value.
pub fn partition_by_attribute(g: &AttributedGraph) -> Result<GroupPartition> {
    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut excluded = Vec::new();
    for u in 0..g.node_count() {
        match g.label(u) {
            Some(value) => groups.entry(value.to_owned()).or_default().push(u),
            None => excluded.push(u),
        }
    }
    if groups.is_empty() {
        return Err(Error::AllUnknown);
    }
    Ok(GroupPartition { groups, excluded })
}

/// Split a text row on commas and whitespace, dropping empty tokens.
fn tokenize(line: &str) -> Vec<&str> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect()
}

/// Parse edge-list text: one edge per line, two whitespace- or
/// comma-separated identifiers, `#` starts a comment. A leading header row
/// naming the columns (e.g. the `step,u_ext,v_ext,score` header written by
/// the intervention trace) is recognized; its `u_ext`/`v_ext` columns are
/// then used, which makes every emitted `edges.csv` loadable as an edge
/// list.
fn parse_edge_rows(text: &str) -> Result<(Vec<(String, String)>, LoadWarnings)> {
    let mut rows = Vec::new();
    let mut warnings = LoadWarnings::default();
    let mut columns: Option<(usize, usize)> = None;
    let mut saw_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        if !saw_data {
            saw_data = true;
            let u_col = tokens.iter().position(|t| *t == "u_ext");
            let v_col = tokens.iter().position(|t| *t == "v_ext");
            if let (Some(u), Some(v)) = (u_col, v_col) {
                columns = Some((u, v));
                continue;
            }
        }
        let (cu, cv) = columns.unwrap_or((0, 1));
        let expected = if columns.is_some() { cu.max(cv) + 1 } else { 2 };
        if tokens.len() < expected || (columns.is_none() && tokens.len() != 2) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected an edge row, got {} field(s)", tokens.len()),
            });
        }
        let (a, b) = (tokens[cu].to_owned(), tokens[cv].to_owned());
        if a == b {
            warnings.self_loops += 1;
            continue;
        }
        rows.push((a, b));
    }
    Ok((rows, warnings))
}

/// Parse the attribute table: CSV with a header containing `node` and the
/// requested attribute column. Empty or missing values mean unknown.
fn parse_attribute_rows(
    text: &str,
    attribute_name: &str,
) -> Result<(HashMap<String, Option<String>>, usize)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "attribute table is empty".into(),
    })?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let node_col = cols.iter().position(|c| *c == "node").ok_or(Error::Parse {
        line: 1,
        message: "attribute table header lacks a `node` column".into(),
    })?;
    let attr_col = cols
        .iter()
        .position(|c| *c == attribute_name)
        .ok_or(Error::Parse {
            line: 1,
            message: format!("attribute table header lacks a `{attribute_name}` column"),
        })?;
    let mut map: HashMap<String, Option<String>> = HashMap::new();
    let mut duplicates = 0;
    for (idx, raw) in lines {
        let line_no = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        if fields.len() <= node_col {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected at least {} field(s)", node_col + 1),
            });
        }
        let node = fields[node_col].to_owned();
        if node.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                message: "empty node identifier".into(),
            });
        }
        let value = fields
            .get(attr_col)
            .filter(|v| !v.is_empty())
            .map(|v| (*v).to_owned());
        if map.insert(node, value).is_some() {
            // last row wins
            duplicates += 1;
        }
    }
    Ok((map, duplicates))
}

/// Build an [`AttributedGraph`] from edge-list text and attribute-table
/// text. Nodes come from the edge list; nodes missing from the attribute
/// table get an unknown label.
pub fn load_graph_from_strings(
    edge_text: &str,
    attr_text: &str,
    attribute_name: &str,
) -> Result<(AttributedGraph, LoadWarnings)> {
    let (rows, mut warnings) = parse_edge_rows(edge_text)?;
    if rows.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut node_ids: Vec<String> = Vec::new();
    let mut id_index: HashMap<String, usize> = HashMap::new();
    let intern = |id: &str, node_ids: &mut Vec<String>, id_index: &mut HashMap<String, usize>| {
        if let Some(&i) = id_index.get(id) {
            i
        } else {
            let i = node_ids.len();
            node_ids.push(id.to_owned());
            id_index.insert(id.to_owned(), i);
            i
        }
    };
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for (a, b) in &rows {
        let u = intern(a, &mut node_ids, &mut id_index);
        let v = intern(b, &mut node_ids, &mut id_index);
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            edges.push(key);
        } else {
            warnings.duplicate_edges += 1;
        }
    }
    let n = node_ids.len();
    let mut neighbors = vec![Vec::new(); n];
    for &(u, v) in &edges {
        neighbors[u].push(v);
        neighbors[v].push(u);
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }

    let (attr_map, duplicate_attributes) = parse_attribute_rows(attr_text, attribute_name)?;
    warnings.duplicate_attributes = duplicate_attributes;
    let labels = node_ids
        .iter()
        .map(|id| attr_map.get(id).cloned().flatten())
        .collect();
    warnings.unmatched_attribute_rows = attr_map
        .keys()
        .filter(|id| !id_index.contains_key(*id))
        .count();

    Ok((
        AttributedGraph {
            node_ids,
            id_index,
            neighbors,
            labels,
            edge_count: edges.len(),
        },
        warnings,
    ))
}

/// File-based variant of [`load_graph_from_strings`].
pub fn load_graph(
    edge_path: &Path,
    attr_path: &Path,
    attribute_name: &str,
) -> Result<(AttributedGraph, LoadWarnings)> {
    let edge_text = read_to_string(edge_path)?;
    let attr_text = read_to_string(attr_path)?;
    load_graph_from_strings(&edge_text, &attr_text, attribute_name)
}

fn read_to_string(path: &Path) -> Result<String> {
    let mut text = String::new();
    BufReader::new(std::fs::File::open(path)?).read_to_string(&mut text)?;
    Ok(text)
}
