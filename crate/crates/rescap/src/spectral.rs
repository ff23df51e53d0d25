//! Laplacian pseudo-inverse, effective resistances, incremental rank-one
//! updates and the commute-time embedding.
//!
//! The pseudo-inverse is obtained from the rank-corrected system: for a
//! connected graph, `L + J/n` (with `J` the all-ones matrix) is symmetric
//! positive definite and
//!
//! ```text
//! pinv(L) = (L + J/n)^{-1} - J/n
//! ```
//!
//! so a Cholesky solve replaces the eigendecomposition. Eigendecomposition
//! is kept only where the spectrum itself is needed (commute-time embedding,
//! spectral gap).
//!
//! After an edge insertion `(u, v)` the pseudo-inverse is refreshed in
//! `O(n^2)` with a rank-one (Sherman–Morrison type) update; a full recompute
//! runs every `refresh_interval` updates to cap floating-point drift.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;

/// Default number of incremental updates between full pseudo-inverse
/// recomputes.
pub const DEFAULT_REFRESH_INTERVAL: usize = 100;

/// Eigenvalue threshold below which the graph is treated as disconnected.
const CONNECTIVITY_TOL: f64 = 1e-8;

/// Combinatorial Laplacian `L = D - A`, its Moore–Penrose pseudo-inverse,
/// and bookkeeping for incremental maintenance.
#[derive(Debug, Clone)]
pub struct LaplacianState {
    lap: DMatrix<f64>,
    pinv: DMatrix<f64>,
    updates_since_refresh: usize,
    refresh_interval: usize,
}

/// Dense symmetric matrix of all pairwise effective resistances; zero
/// diagonal, nonnegative entries.
#[derive(Debug, Clone)]
pub struct ResistanceMatrix {
    r: DMatrix<f64>,
}

/// Build `L = D - A` from a graph.
pub fn laplacian_matrix(g: &AttributedGraph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut lap = DMatrix::zeros(n, n);
    for u in 0..n {
        lap[(u, u)] = g.degree(u) as f64;
        for &v in g.neighbors(u) {
            lap[(u, v)] = -1.0;
        }
    }
    lap
}

/// Pseudo-inverse of a connected graph's Laplacian via the rank-corrected
/// Cholesky solve.
fn pinv_of_laplacian(lap: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = lap.nrows();
    let shift = 1.0 / n as f64;
    let mut m = lap.clone();
    m.add_scalar_mut(shift);
    let chol = m
        .cholesky()
        .ok_or_else(|| Error::Singular("rank-corrected Laplacian is not positive definite".into()))?;
    let mut pinv = chol.inverse();
    pinv.add_scalar_mut(-shift);
    // Solver output is symmetric up to rounding; make it exact so downstream
    // row/column reads agree bitwise.
    for i in 0..n {
        for j in (i + 1)..n {
            let s = 0.5 * (pinv[(i, j)] + pinv[(j, i)]);
            pinv[(i, j)] = s;
            pinv[(j, i)] = s;
        }
    }
    Ok(pinv)
}

impl LaplacianState {
    /// Build the state for a connected graph. The BFS connectivity check is
    /// authoritative; disconnected input is an error rather than an infinite
    /// resistance.
    pub fn new(g: &AttributedGraph, refresh_interval: usize) -> Result<Self> {
        if g.node_count() < 2 {
            return Err(Error::InvalidConfig(
                "need at least 2 nodes for resistance computations".into(),
            ));
        }
        if refresh_interval == 0 {
            return Err(Error::InvalidConfig("refresh_interval must be positive".into()));
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let lap = laplacian_matrix(g);
        let pinv = pinv_of_laplacian(&lap)?;
        Ok(LaplacianState {
            lap,
            pinv,
            updates_since_refresh: 0,
            refresh_interval,
        })
    }

    /// Convenience constructor with [`DEFAULT_REFRESH_INTERVAL`].
    pub fn from_graph(g: &AttributedGraph) -> Result<Self> {
        Self::new(g, DEFAULT_REFRESH_INTERVAL)
    }

    /// Rebuild the state from a previously computed pseudo-inverse (e.g. a
    /// cache hit), skipping the solve. The caller is responsible for the
    /// pseudo-inverse matching this exact edge set.
    pub fn with_pseudo_inverse(
        g: &AttributedGraph,
        pinv: DMatrix<f64>,
        refresh_interval: usize,
    ) -> Result<Self> {
        if pinv.nrows() != g.node_count() || pinv.ncols() != g.node_count() {
            return Err(Error::InvalidConfig(
                "pseudo-inverse dimensions do not match the graph".into(),
            ));
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(LaplacianState {
            lap: laplacian_matrix(g),
            pinv,
            updates_since_refresh: 0,
            refresh_interval: refresh_interval.max(1),
        })
    }

    pub fn n(&self) -> usize {
        self.lap.nrows()
    }

    pub fn laplacian(&self) -> &DMatrix<f64> {
        &self.lap
    }

    pub fn pseudo_inverse(&self) -> &DMatrix<f64> {
        &self.pinv
    }

    pub fn updates_since_refresh(&self) -> usize {
        self.updates_since_refresh
    }

    /// Effective resistance `R_uv = pinv_uu + pinv_vv - 2 pinv_uv`.
    pub fn effective_resistance(&self, u: usize, v: usize) -> f64 {
        if u == v {
            return 0.0;
        }
        (self.pinv[(u, u)] + self.pinv[(v, v)] - 2.0 * self.pinv[(u, v)]).max(0.0)
    }

    /// All pairwise resistances, `R = 1 diag(pinv)^T + diag(pinv) 1^T - 2 pinv`.
    pub fn resistance_matrix(&self) -> ResistanceMatrix {
        let n = self.n();
        let mut r = DMatrix::zeros(n, n);
        for u in 0..n {
            let duu = self.pinv[(u, u)];
            for v in (u + 1)..n {
                let val = (duu + self.pinv[(v, v)] - 2.0 * self.pinv[(u, v)]).max(0.0);
                r[(u, v)] = val;
                r[(v, u)] = val;
            }
        }
        ResistanceMatrix { r }
    }

    /// Trace of the pseudo-inverse; `n * trace` equals the graph's total
    /// effective resistance.
    pub fn pinv_trace(&self) -> f64 {
        self.pinv.trace()
    }

    /// Fold the new edge `(u, v)` into both `L` and its pseudo-inverse.
    ///
    /// The pseudo-inverse update is the rank-one correction
    /// `pinv -= w w^T / (1 + R_uv)` with `w = pinv e_u - pinv e_v`, valid
    /// because the added edge leaves the kernel (the all-ones vector)
    /// untouched. Every `refresh_interval` updates the drifted pseudo-inverse
    /// is replaced by a full recompute from the exactly-maintained `L`.
    pub fn add_edge_update(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::IndexOutOfBounds { index: u.max(v), len: n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let r_uv = self.effective_resistance(u, v);

        self.lap[(u, u)] += 1.0;
        self.lap[(v, v)] += 1.0;
        self.lap[(u, v)] -= 1.0;
        self.lap[(v, u)] -= 1.0;

        let w: DVector<f64> = self.pinv.column(u) - self.pinv.column(v);
        let scale = 1.0 / (1.0 + r_uv);
        // pinv -= scale * w w^T, symmetric by construction
        for i in 0..n {
            let wi = scale * w[i];
            for j in 0..n {
                self.pinv[(i, j)] -= wi * w[j];
            }
        }

        self.updates_since_refresh += 1;
        if self.updates_since_refresh >= self.refresh_interval {
            self.pinv = pinv_of_laplacian(&self.lap)?;
            self.updates_since_refresh = 0;
        }
        Ok(())
    }

    /// Commute-time embedding `Z` (`n x (n-1)`): row `u` is the embedding of
    /// node `u`, and `||z_u - z_v||^2 = vol * R_uv`.
    pub fn commute_time_embedding(&self, vol: f64) -> Result<DMatrix<f64>> {
        let n = self.n();
        let eigen = nalgebra::SymmetricEigen::new(self.lap.clone());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eigen.eigenvalues[a].total_cmp(&eigen.eigenvalues[b]));
        if n > 1 && eigen.eigenvalues[order[1]] <= CONNECTIVITY_TOL {
            return Err(Error::Disconnected);
        }
        let mut z = DMatrix::zeros(n, n - 1);
        for (k, &idx) in order.iter().skip(1).enumerate() {
            let lambda = eigen.eigenvalues[idx];
            let scale = (vol / lambda).sqrt();
            for u in 0..n {
                z[(u, k)] = scale * eigen.eigenvectors[(u, idx)];
            }
        }
        Ok(z)
    }

    /// Smallest non-zero Laplacian eigenvalue, from a dense symmetric
    /// eigendecomposition. Diagnostic only.
    pub fn spectral_gap(&self) -> Result<f64> {
        let eigen = nalgebra::SymmetricEigen::new(self.lap.clone());
        let mut vals: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        let gap = vals.get(1).copied().unwrap_or(0.0);
        if gap <= CONNECTIVITY_TOL {
            return Err(Error::Disconnected);
        }
        Ok(gap)
    }

    /// Cheap estimate of the spectral gap: `1 / lambda_max(pinv)` by power
    /// iteration on the maintained pseudo-inverse. Used in per-step summary
    /// records where a dense eigendecomposition per snapshot would dominate
    /// the runtime.
    pub fn spectral_gap_estimate(&self) -> f64 {
        let n = self.n();
        let mut x = DVector::from_fn(n, |i, _| 1.0 + (i as f64 % 7.0));
        // project out the all-ones kernel direction
        let mean = x.mean();
        x.add_scalar_mut(-mean);
        let mut value = 0.0;
        for _ in 0..500 {
            let mut y = &self.pinv * &x;
            let mean = y.mean();
            y.add_scalar_mut(-mean);
            let norm = y.norm();
            if norm == 0.0 {
                break;
            }
            y /= norm;
            let next = y.dot(&(&self.pinv * &y));
            if (next - value).abs() <= 1e-12 * next.abs() {
                value = next;
                break;
            }
            value = next;
            x = y;
        }
        if value > 0.0 {
            1.0 / value
        } else {
            0.0
        }
    }
}

impl ResistanceMatrix {
    pub fn n(&self) -> usize {
        self.r.nrows()
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.r[(u, v)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.r
    }

    /// Total effective resistance of the graph, `R_tot = (1/2) 1^T R 1`.
    pub fn total_resistance(&self) -> f64 {
        0.5 * self.r.sum()
    }

    /// Resistance diameter of the graph, `max_{u,v} R_uv`.
    pub fn max_entry(&self) -> f64 {
        self.r.max()
    }
}

/// Independent verification path for a single effective resistance.
///
/// Grounds an arbitrary node (the last index), injects a unit current at `u`
/// and extracts it at `v`, and solves the reduced `(n-1)`-dimensional system
/// with hand-rolled Gaussian elimination. Shares no code with the
/// pseudo-inverse path.
#[allow(clippy::needless_range_loop)]
pub fn oracle_resistance(g: &AttributedGraph, u: usize, v: usize) -> Result<f64> {
    let n = g.node_count();
    if u >= n || v >= n {
        return Err(Error::IndexOutOfBounds { index: u.max(v), len: n });
    }
    if u == v {
        return Ok(0.0);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let ground = n - 1;
    let dim = n - 1;
    // Dense grounded Laplacian, built straight from the adjacency.
    let mut a = vec![vec![0.0_f64; dim]; dim];
    for i in 0..dim {
        a[i][i] = g.degree(i) as f64;
        for &j in g.neighbors(i) {
            if j != ground {
                a[i][j] = -1.0;
            }
        }
    }
    let mut b = vec![0.0_f64; dim];
    if u != ground {
        b[u] = 1.0;
    }
    if v != ground {
        b[v] = -1.0;
    }

    // Gaussian elimination with partial pivoting.
    for col in 0..dim {
        let pivot_row = (col..dim)
            .max_by(|&r1, &r2| a[r1][col].abs().total_cmp(&a[r2][col].abs()))
            .unwrap();
        if a[pivot_row][col].abs() < 1e-12 {
            return Err(Error::Singular("grounded Laplacian solve failed".into()));
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in (col + 1)..dim {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..dim {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0_f64; dim];
    for row in (0..dim).rev() {
        let mut acc = b[row];
        for k in (row + 1)..dim {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }

    let potential = |node: usize| if node == ground { 0.0 } else { x[node] };
    Ok(potential(u) - potential(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AttributedGraph;
    use crate::synthetic;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn complete_graph(n: usize) -> AttributedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        AttributedGraph::from_edges(n, &edges).unwrap()
    }

    fn path_graph(n: usize) -> AttributedGraph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        AttributedGraph::from_edges(n, &edges).unwrap()
    }

    fn cycle_graph(n: usize) -> AttributedGraph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        AttributedGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn k3_pinv_closed_form() {
        // Oracle: symbolic inverse of (L + J/3) for n = 3 gives
        // pinv = I/3 - J/9, i.e. diagonal 2/9 and off-diagonal -1/9.
        let state = LaplacianState::from_graph(&complete_graph(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 2.0 / 9.0 } else { -1.0 / 9.0 };
                assert_relative_eq!(state.pseudo_inverse()[(i, j)], expected, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn single_edge_resistance_is_one() {
        let state = LaplacianState::from_graph(&path_graph(2)).unwrap();
        assert_relative_eq!(state.effective_resistance(0, 1), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn disconnected_graph_is_error() {
        let g = AttributedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            LaplacianState::from_graph(&g),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn pinv_invariants_hold() {
        let g = synthetic::connected_erdos_renyi(40, 0.12, 7);
        let state = LaplacianState::from_graph(&g).unwrap();
        let n = state.n();
        // row sums of L are exactly zero
        for u in 0..n {
            assert_eq!(state.laplacian().row(u).sum(), 0.0);
        }
        // pinv * 1 = 0
        let ones = DVector::from_element(n, 1.0);
        let resid = (state.pseudo_inverse() * &ones).abs().max();
        assert!(resid < 1e-9 * n as f64, "pinv kernel residual {resid}");
        // L pinv L = L
        let lap = state.laplacian();
        let diff = lap * state.pseudo_inverse() * lap - lap;
        assert!(diff.norm() / lap.norm() < 1e-7);
    }

    #[test]
    fn complete_graph_pairwise_2_over_n() {
        for n in [3, 5, 10] {
            let state = LaplacianState::from_graph(&complete_graph(n)).unwrap();
            for u in 0..n {
                for v in (u + 1)..n {
                    assert_relative_eq!(
                        state.effective_resistance(u, v),
                        2.0 / n as f64,
                        max_relative = 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn tree_resistance_is_geodesic() {
        // star plus a pendant path: distances are path lengths
        let g = AttributedGraph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]).unwrap();
        let state = LaplacianState::from_graph(&g).unwrap();
        let expect = |u: usize, v: usize, d: f64| {
            assert_relative_eq!(state.effective_resistance(u, v), d, max_relative = 1e-10);
        };
        expect(1, 2, 2.0);
        expect(1, 5, 4.0);
        expect(0, 5, 3.0);
        expect(3, 5, 2.0);
    }

    #[test]
    fn cycle_opposite_nodes() {
        // C4: two 2-hop paths in parallel -> 1.0
        let state = LaplacianState::from_graph(&cycle_graph(4)).unwrap();
        assert_relative_eq!(state.effective_resistance(0, 2), 1.0, max_relative = 1e-10);
    }

    #[test]
    fn p3_resistance_matrix() {
        let state = LaplacianState::from_graph(&path_graph(3)).unwrap();
        let r = state.resistance_matrix();
        let expected = [[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]];
        for u in 0..3 {
            for v in 0..3 {
                assert_relative_eq!(r.get(u, v), expected[u][v], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn total_resistance_matches_pinv_trace() {
        let g = synthetic::connected_erdos_renyi(30, 0.15, 3);
        let state = LaplacianState::from_graph(&g).unwrap();
        let r = state.resistance_matrix();
        let n = state.n() as f64;
        assert_relative_eq!(
            r.total_resistance(),
            n * state.pinv_trace(),
            max_relative = 1e-8
        );
    }

    #[test]
    fn woodbury_p3_plus_chord_is_triangle() {
        let mut state = LaplacianState::from_graph(&path_graph(3)).unwrap();
        state.add_edge_update(0, 2).unwrap();
        assert_relative_eq!(state.effective_resistance(0, 2), 2.0 / 3.0, max_relative = 1e-10);
        assert_relative_eq!(state.effective_resistance(0, 1), 2.0 / 3.0, max_relative = 1e-10);
    }

    #[test]
    fn woodbury_matches_recompute_after_single_update() {
        let g = synthetic::connected_erdos_renyi(25, 0.15, 11);
        let mut state = LaplacianState::from_graph(&g).unwrap();
        let (u, v) = first_non_edge(&g);
        state.add_edge_update(u, v).unwrap();
        let mut g2 = g.clone();
        g2.add_edge(u, v).unwrap();
        let fresh = LaplacianState::from_graph(&g2).unwrap();
        let scale = state.pseudo_inverse().abs().max();
        let diff = (state.pseudo_inverse() - fresh.pseudo_inverse()).abs().max();
        assert!(diff <= 1e-9 * scale, "drift {diff} vs scale {scale}");
    }

    #[test]
    fn refresh_interval_triggers_recompute() {
        let g = synthetic::connected_erdos_renyi(15, 0.3, 5);
        let mut state = LaplacianState::new(&g, 2).unwrap();
        let mut work = g.clone();
        let mut added = 0;
        'outer: for u in 0..g.node_count() {
            for v in (u + 1)..g.node_count() {
                if !work.has_edge(u, v) {
                    work.add_edge(u, v).unwrap();
                    state.add_edge_update(u, v).unwrap();
                    added += 1;
                    if added == 3 {
                        break 'outer;
                    }
                }
            }
        }
        // after 3 updates with interval 2: refreshed at 2, counter back to 1
        assert_eq!(state.updates_since_refresh(), 1);
    }

    fn first_non_edge(g: &AttributedGraph) -> (usize, usize) {
        for u in 0..g.node_count() {
            for v in (u + 1)..g.node_count() {
                if !g.has_edge(u, v) {
                    return (u, v);
                }
            }
        }
        panic!("graph is complete");
    }

    #[test]
    fn embedding_identity_small_graphs() {
        // P2: vol = 2, R = 1 -> squared distance 2
        let state = LaplacianState::from_graph(&path_graph(2)).unwrap();
        let z = state.commute_time_embedding(2.0).unwrap();
        let d = (z.row(0) - z.row(1)).norm_squared();
        assert_relative_eq!(d, 2.0, max_relative = 1e-10);

        // K3: vol = 6, R = 2/3 -> squared distance 4
        let state = LaplacianState::from_graph(&complete_graph(3)).unwrap();
        let z = state.commute_time_embedding(6.0).unwrap();
        for u in 0..3 {
            for v in (u + 1)..3 {
                let d = (z.row(u) - z.row(v)).norm_squared();
                assert_relative_eq!(d, 4.0, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn embedding_identity_random_graph() {
        let g = synthetic::connected_erdos_renyi(20, 0.2, 9);
        let state = LaplacianState::from_graph(&g).unwrap();
        let vol = g.volume() as f64;
        let z = state.commute_time_embedding(vol).unwrap();
        for u in 0..20 {
            for v in (u + 1)..20 {
                let d = (z.row(u) - z.row(v)).norm_squared();
                let expected = vol * state.effective_resistance(u, v);
                assert_relative_eq!(d, expected, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn spectral_gap_fixtures() {
        assert_relative_eq!(
            LaplacianState::from_graph(&complete_graph(3)).unwrap().spectral_gap().unwrap(),
            3.0,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            LaplacianState::from_graph(&path_graph(2)).unwrap().spectral_gap().unwrap(),
            2.0,
            max_relative = 1e-9
        );
        // P3 Laplacian eigenvalues are {0, 1, 3}
        assert_relative_eq!(
            LaplacianState::from_graph(&path_graph(3)).unwrap().spectral_gap().unwrap(),
            1.0,
            max_relative = 1e-9
        );
    }

    #[test]
    fn spectral_gap_estimate_agrees_with_eigen() {
        let g = synthetic::connected_erdos_renyi(30, 0.2, 21);
        let state = LaplacianState::from_graph(&g).unwrap();
        let exact = state.spectral_gap().unwrap();
        let estimate = state.spectral_gap_estimate();
        assert_relative_eq!(estimate, exact, max_relative = 1e-6);
    }

    #[test]
    fn oracle_fixtures() {
        assert_relative_eq!(
            oracle_resistance(&path_graph(2), 0, 1).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        // series-parallel on C4: 2 || 2 = 1
        assert_relative_eq!(
            oracle_resistance(&cycle_graph(4), 0, 2).unwrap(),
            1.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn oracle_cross_validates_pinv_path() {
        let g = synthetic::connected_erdos_renyi(30, 0.15, 17);
        let state = LaplacianState::from_graph(&g).unwrap();
        let mut rng = synthetic::seeded_rng(42);
        for _ in 0..50 {
            let u = synthetic::rand_index(&mut rng, 30);
            let mut v = synthetic::rand_index(&mut rng, 30);
            while v == u {
                v = synthetic::rand_index(&mut rng, 30);
            }
            let fast = state.effective_resistance(u, v);
            let slow = oracle_resistance(&g, u, v).unwrap();
            assert!((fast - slow).abs() < 1e-9, "mismatch {fast} vs {slow}");
        }
    }

    #[test]
    fn edge_resistance_sum_is_n_minus_one() {
        let g = synthetic::connected_erdos_renyi(50, 0.1, 23);
        let state = LaplacianState::from_graph(&g).unwrap();
        let sum: f64 = g.edges().map(|(u, v)| state.effective_resistance(u, v)).sum();
        let n = g.node_count() as f64;
        assert!((sum - (n - 1.0)).abs() < 1e-9 * n);
    }

    #[test]
    fn path_graph_total_resistance_brute_force() {
        // sum over pairs of geodesics; no closed form asserted
        for n in [3usize, 5, 8] {
            let g = path_graph(n);
            let state = LaplacianState::from_graph(&g).unwrap();
            let mut expected = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    expected += (j - i) as f64;
                }
            }
            assert_relative_eq!(
                state.resistance_matrix().total_resistance(),
                expected,
                max_relative = 1e-9
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn resistance_is_a_metric(seed in 0u64..500) {
            let g = synthetic::connected_erdos_renyi(18, 0.18, seed);
            let state = LaplacianState::from_graph(&g).unwrap();
            let r = state.resistance_matrix();
            let n = r.n();
            for u in 0..n {
                prop_assert!(r.get(u, u) == 0.0);
                for v in 0..n {
                    prop_assert!(r.get(u, v) >= 0.0);
                    prop_assert!((r.get(u, v) - r.get(v, u)).abs() == 0.0);
                    if u != v {
                        prop_assert!(r.get(u, v) > 0.0);
                    }
                }
            }
            // triangle inequality on sampled triples
            let mut rng = synthetic::seeded_rng(seed.wrapping_add(1));
            for _ in 0..200 {
                let a = synthetic::rand_index(&mut rng, n);
                let b = synthetic::rand_index(&mut rng, n);
                let c = synthetic::rand_index(&mut rng, n);
                prop_assert!(r.get(a, c) <= r.get(a, b) + r.get(b, c) + 1e-10);
            }
        }

        #[test]
        fn rayleigh_monotonicity_under_insertion(seed in 0u64..500) {
            let g = synthetic::connected_erdos_renyi(16, 0.2, seed);
            let mut state = LaplacianState::from_graph(&g).unwrap();
            let before = state.resistance_matrix();
            let mut work = g.clone();
            let mut found = None;
            'search: for u in 0..16 {
                for v in (u + 1)..16 {
                    if !work.has_edge(u, v) {
                        found = Some((u, v));
                        break 'search;
                    }
                }
            }
            if let Some((u, v)) = found {
                work.add_edge(u, v).unwrap();
                state.add_edge_update(u, v).unwrap();
                let after = state.resistance_matrix();
                for a in 0..16 {
                    for b in 0..16 {
                        prop_assert!(after.get(a, b) <= before.get(a, b) + 1e-10);
                    }
                }
            }
        }

        #[test]
        fn total_resistance_lower_bound(seed in 0u64..500) {
            let g = synthetic::connected_erdos_renyi(14, 0.25, seed);
            let state = LaplacianState::from_graph(&g).unwrap();
            let n = g.node_count() as f64;
            let r_tot = state.resistance_matrix().total_resistance();
            prop_assert!(r_tot >= n - 1.0 - 1e-9);
        }
    }

    #[test]
    fn total_resistance_bound_tight_iff_complete() {
        let n = 7;
        let state = LaplacianState::from_graph(&complete_graph(n)).unwrap();
        assert_relative_eq!(
            state.resistance_matrix().total_resistance(),
            (n - 1) as f64,
            max_relative = 1e-10
        );
        // remove one edge: strictly above the bound
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if !(u == 0 && v == 1) {
                    edges.push((u, v));
                }
            }
        }
        let g = AttributedGraph::from_edges(n, &edges).unwrap();
        let state = LaplacianState::from_graph(&g).unwrap();
        assert!(state.resistance_matrix().total_resistance() > (n - 1) as f64 + 1e-6);
    }
}
