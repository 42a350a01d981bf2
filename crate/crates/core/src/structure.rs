//! Markov partitions, transition matrices, entropy, transitivity and mixing
//! of the covering graph, and inaccessible-point estimates.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::plmap::PlMap;
use crate::rational::{self, Q};
use crate::topograph::{Arc, ArcSet, GraphPoint, PointSet};

/// Square 0/1 matrix with `rows[i][j] = 1` iff `f(cell_i) ⊇ cell_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    rows: Vec<Vec<u8>>,
}

impl TransitionMatrix {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("transition matrix must be square".into()));
        }
        if rows.iter().flatten().any(|&x| x > 1) {
            return Err(Error::Domain("transition matrix entries must be 0 or 1".into()));
        }
        Ok(TransitionMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        TransitionMatrix { rows: (0..n).map(|i| (0..n).map(|j| u8::from(i == j)).collect()).collect() }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j] == 1
    }

    fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[i].iter().enumerate().filter(|(_, &x)| x == 1).map(|(j, _)| j)
    }

    /// Strongly connected components in increasing order of their smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let reach = self.reachability();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let comp: Vec<usize> = (i..n).filter(|&j| j == i || (reach[i][j] && reach[j][i])).collect();
            for &j in &comp {
                seen[j] = true;
            }
            out.push(comp);
        }
        out
    }

    /// `reach[i][j]`: a path of length at least one leads from `i` to `j`.
    #[allow(clippy::needless_range_loop)]
    fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        let mut reach: Vec<Vec<bool>> = self.rows.iter().map(|r| r.iter().map(|&x| x == 1).collect()).collect();
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        reach
    }

    fn submatrix(&self, nodes: &[usize]) -> Vec<Vec<f64>> {
        nodes.iter().map(|&i| nodes.iter().map(|&j| f64::from(self.rows[i][j])).collect()).collect()
    }

    fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect()).collect()
    }

    /// Boolean power `A^k`, `k >= 1`.
    pub fn bool_power(&self, mut k: usize) -> Vec<Vec<bool>> {
        let mut base: Vec<Vec<bool>> = self.rows.iter().map(|r| r.iter().map(|&x| x == 1).collect()).collect();
        let mut acc: Option<Vec<Vec<bool>>> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(m) => Self::bool_mul(&m, &base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = Self::bool_mul(&base, &base);
            }
        }
        acc.expect("k >= 1")
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovPartition {
    /// Cells ordered by `(edge, t)`.
    pub cells: Vec<Arc>,
    /// Vertices, breakpoints and their forward orbits.
    pub cut: PointSet,
    /// Number of forward steps needed to close the cut set.
    pub depth_used: usize,
    pub matrix: TransitionMatrix,
}

impl MarkovPartition {
    /// Exact re-check that every cell image is the union of the cells its row marks.
    pub fn verify(&self, f: &PlMap) -> bool {
        let g = f.graph();
        self.cells.iter().enumerate().all(|(i, cell)| {
            let Ok(image) = f.image_of_arcs(std::slice::from_ref(cell)) else {
                return false;
            };
            let marked: Vec<Arc> =
                (0..self.cells.len()).filter(|&j| self.matrix.get(i, j)).map(|j| self.cells[j].clone()).collect();
            ArcSet::new(g, marked) == image
        })
    }
}

/// Closes the cut set under `f` within `depth` steps, cuts the graph into
/// cells and checks the Markov property exactly.
pub fn markov_partition(f: &PlMap, depth: usize) -> Result<MarkovPartition> {
    let g = f.graph();
    let mut cut: BTreeSet<GraphPoint> = (0..g.vertex_count()).map(|v| g.vertex_point(v)).collect();
    cut.extend(f.breakpoints().iter().cloned());
    let mut frontier: Vec<GraphPoint> = cut.iter().cloned().collect();
    let mut depth_used = 0;
    while !frontier.is_empty() {
        if depth_used == depth {
            let open: Vec<String> = frontier.iter().take(4).map(|p| f.format_point(p)).collect();
            return Err(Error::NotMarkov {
                depth,
                detail: format!("forward orbits still open at {}", open.join(", ")),
            });
        }
        depth_used += 1;
        let mut next = Vec::new();
        for p in &frontier {
            let img = f.eval(p);
            if cut.insert(img.clone()) {
                next.push(img);
            }
        }
        frontier = next;
    }
    let mut cells = Vec::new();
    for e in 0..g.edge_count() {
        let mut ts: BTreeSet<Q> = [rational::zero(), rational::one()].into_iter().collect();
        ts.extend(cut.iter().filter(|p| p.edge == e).map(|p| p.t.clone()));
        let ts: Vec<Q> = ts.into_iter().collect();
        cells.extend(ts.windows(2).map(|w| Arc::new(e, w[0].clone(), w[1].clone())));
    }
    let mut rows = Vec::with_capacity(cells.len());
    for (i, cell) in cells.iter().enumerate() {
        let image = f.image_of_arcs(std::slice::from_ref(cell))?;
        let row: Vec<u8> = cells.iter().map(|c| u8::from(image.contains_arc(g, c))).collect();
        let covered: Vec<Arc> = cells.iter().zip(&row).filter(|(_, &x)| x == 1).map(|(c, _)| c.clone()).collect();
        if ArcSet::new(g, covered) != image {
            return Err(Error::Structure(format!(
                "cell #{i} {} maps onto {:?}, which is not a union of cells",
                cell,
                image.arcs().iter().map(ToString::to_string).collect::<Vec<_>>()
            )));
        }
        rows.push(row);
    }
    let cut = PointSet::new(g, cut)?;
    Ok(MarkovPartition { cells, cut, depth_used, matrix: TransitionMatrix { rows } })
}

/// Convergence tolerance on the spectral radius bracket.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;
/// Iteration budget for power iteration.
pub const MAX_POWER_ITERATIONS: usize = 100_000;

/// Two-sided bracket `lower <= ρ(A) <= upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRadius {
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

impl SpectralRadius {
    pub fn value(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    fn exact(v: f64) -> Self {
        SpectralRadius { lower: v, upper: v, iterations: 0 }
    }
}

/// Spectral radius, block by block over strongly connected components.
///
/// Blocks without a cycle contribute 0 and single cycles contribute exactly 1.
/// Other blocks run power iteration on `B + I` (primitive when `B` is
/// irreducible) and stop once the Collatz–Wielandt ratios
/// `min (Mv)_i / v_i <= ρ(M) <= max (Mv)_i / v_i` agree to the tolerance.
pub fn spectral_radius(a: &TransitionMatrix) -> Result<SpectralRadius> {
    let mut best = SpectralRadius::exact(0.0);
    for comp in a.components() {
        let internal: Vec<usize> = comp.iter().map(|&i| a.successors(i).filter(|j| comp.contains(j)).count()).collect();
        let r = if internal.iter().all(|&d| d == 0) {
            SpectralRadius::exact(0.0)
        } else if internal.iter().all(|&d| d == 1) {
            SpectralRadius::exact(1.0)
        } else {
            power_iteration(&a.submatrix(&comp))?
        };
        if r.value() > best.value() {
            best = r;
        }
    }
    Ok(best)
}

fn power_iteration(b: &[Vec<f64>]) -> Result<SpectralRadius> {
    let n = b.len();
    let mut v = vec![1.0; n];
    for it in 1..=MAX_POWER_ITERATIONS {
        let w: Vec<f64> = (0..n).map(|i| v[i] + (0..n).map(|j| b[i][j] * v[j]).sum::<f64>()).collect();
        let ratios = w.iter().zip(&v).map(|(x, y)| x / y);
        let lo = ratios.clone().fold(f64::INFINITY, f64::min) - 1.0;
        let hi = ratios.fold(f64::NEG_INFINITY, f64::max) - 1.0;
        let norm = w.iter().cloned().fold(0.0, f64::max);
        v = w.iter().map(|x| x / norm).collect();
        if hi - lo <= ENTROPY_TOLERANCE * lo.max(1.0) * 1e-3 {
            return Ok(SpectralRadius { lower: lo, upper: hi, iterations: it });
        }
    }
    Err(Error::Resource(format!("power iteration did not converge in {MAX_POWER_ITERATIONS} steps")))
}

/// `ln ρ(A)`; a nilpotent (in particular zero) matrix has entropy 0 by convention.
pub fn entropy(a: &TransitionMatrix) -> Result<f64> {
    let r = spectral_radius(a)?;
    if r.value() <= 1.0 {
        return Ok(0.0);
    }
    Ok(r.value().ln())
}

/// Irreducible: strongly connected with every node on a cycle.
pub fn is_transitive(a: &TransitionMatrix) -> bool {
    let n = a.size();
    if n == 0 {
        return false;
    }
    let reach = a.reachability();
    (0..n).all(|i| (0..n).all(|j| reach[i][j]))
}

/// Primitive: `A^((n-1)^2 + 1)` has no zero entry.
pub fn is_mixing(a: &TransitionMatrix) -> bool {
    let n = a.size();
    if !is_transitive(a) {
        return false;
    }
    let k = (n - 1) * (n - 1) + 1;
    a.bool_power(k).iter().flatten().all(|&x| x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InaccessibleEstimate {
    pub points: PointSet,
    /// False when the map's Markov matrix is not primitive (or no partition was found).
    pub authoritative: bool,
    pub grid_size: usize,
    pub seed_count: usize,
}

/// Depth used to look for a Markov partition when labeling estimates.
pub const DEFAULT_MARKOV_DEPTH: usize = 64;

/// Grid points (spacing `seed_scale`) missed, for at least one seed arc of
/// length `seed_scale` centered on the grid, by every `int f^k(U)` with `k <= horizon`.
pub fn inaccessible_estimate(f: &PlMap, seed_scale: &Q, horizon: usize) -> Result<InaccessibleEstimate> {
    if !seed_scale.is_positive() {
        return Err(Error::Domain("seed scale must be positive".into()));
    }
    let g = f.graph();
    let mut grid: BTreeSet<GraphPoint> = BTreeSet::new();
    for e in 0..g.edge_count() {
        let steps = rational::ceil_to_usize(&(&g.edge(e).length / seed_scale)).max(1);
        for i in 0..=steps {
            let t = Q::new(i.into(), steps.into());
            grid.insert(g.normalize_unchecked(&GraphPoint::new(e, t)));
        }
    }
    let radius = seed_scale / Q::from_integer(2.into());
    let grid: Vec<GraphPoint> = grid.into_iter().collect();
    let mut accessible = vec![true; grid.len()];
    for center in &grid {
        let mut image = g.ball(center, &radius);
        let mut hit = vec![false; grid.len()];
        for k in 0..=horizon {
            if k > 0 {
                image = f.image_of_set(&image);
            }
            for (i, p) in grid.iter().enumerate() {
                if !hit[i] && image.interior_contains(g, p) {
                    hit[i] = true;
                }
            }
        }
        for (a, h) in accessible.iter_mut().zip(hit) {
            *a &= h;
        }
    }
    let points = PointSet::new(g, grid.iter().zip(&accessible).filter(|(_, &a)| !a).map(|(p, _)| p.clone()))?;
    let authoritative = markov_partition(f, DEFAULT_MARKOV_DEPTH).map(|m| is_mixing(&m.matrix)).unwrap_or(false);
    Ok(InaccessibleEstimate { points, authoritative, grid_size: grid.len(), seed_count: grid.len() })
}
