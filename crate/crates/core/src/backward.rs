//! Backward branches: preimage trees, waypoint steering, α-limit estimates
//! and finite chain-transitivity checks.

use std::collections::VecDeque;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::orbits::{
    certify_covering, epsilon_net, periodic_points, Certificate, CoveringChain, EstimateParams, LimitSetEstimate,
    PeriodicOrbit, PeriodicSearch, Provenance,
};
use crate::plmap::{format_point, PlMap};
use crate::rational::{self, q, Q};
use crate::topograph::{Arc, GraphPoint, GraphSpace, PointSet};

/// A finite backward branch `x_0, x_{-1}, …, x_{-N}` with `f(x_{-(j+1)}) = x_{-j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackwardBranch {
    /// `points[j]` is `x_{-j}`.
    pub points: Vec<GraphPoint>,
    pub map_name: String,
    pub verified: bool,
    /// Set when steering stopped at a point without preimages; holds the achieved depth.
    pub dead_end: Option<usize>,
}

impl BackwardBranch {
    /// Wraps and checks a branch given as `x_0, x_{-1}, …`.
    pub fn from_points(f: &PlMap, points: Vec<GraphPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Domain("a branch needs at least x_0".into()));
        }
        for p in &points {
            f.graph().check_point(p)?;
        }
        let points = points.iter().map(|p| f.graph().normalize_unchecked(p)).collect();
        let mut branch = BackwardBranch { points, map_name: f.name().to_string(), verified: false, dead_end: None };
        branch.verified = branch.check(f);
        if !branch.verified {
            return Err(Error::Contract("points do not form a backward branch".into()));
        }
        Ok(branch)
    }

    pub fn depth(&self) -> usize {
        self.points.len() - 1
    }

    pub fn start(&self) -> &GraphPoint {
        &self.points[0]
    }

    pub fn deepest(&self) -> &GraphPoint {
        self.points.last().expect("non-empty")
    }

    /// Exact forward consistency of every consecutive pair.
    pub fn check(&self, f: &PlMap) -> bool {
        self.points.windows(2).all(|w| f.eval(&w[1]) == w[0])
    }

    /// Records `"j:edge:p/q"` for `x_{-j}`, shallowest first.
    pub fn records(&self, graph: &GraphSpace) -> Vec<String> {
        self.points.iter().enumerate().map(|(j, p)| format!("{j}:{}", format_point(graph, p))).collect()
    }

    /// CSV with columns `index,edge,t,t_float`.
    pub fn to_csv(&self, graph: &GraphSpace) -> String {
        let mut out = String::from("index,edge,t,t_float\n");
        for (j, p) in self.points.iter().enumerate() {
            out.push_str(&format!(
                "{j},{},{},{}\n",
                graph.edge(p.edge).id,
                rational::format(&p.t),
                rational::to_f64(&p.t)
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub point: GraphPoint,
    pub parent: Option<usize>,
    pub level: usize,
}

/// Full preimage tree; nodes are stored level by level in child order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageTree {
    pub nodes: Vec<TreeNode>,
    /// `levels[j]` lists the node indices at depth `j`.
    pub levels: Vec<Vec<usize>>,
    /// Arcs of preimages from constant pieces, keyed by the node they map to.
    /// They are not expanded.
    pub arc_preimages: Vec<(usize, Arc)>,
}

impl PreimageTree {
    pub fn root(&self) -> &GraphPoint {
        &self.nodes[0].point
    }

    pub fn level_points(&self, j: usize) -> Vec<&GraphPoint> {
        self.levels.get(j).map(|l| l.iter().map(|&i| &self.nodes[i].point).collect()).unwrap_or_default()
    }

    /// The branch from the root down to `node`.
    pub fn branch_to(&self, f: &PlMap, node: usize) -> BackwardBranch {
        let mut points = Vec::new();
        let mut cur = Some(node);
        while let Some(i) = cur {
            points.push(self.nodes[i].point.clone());
            cur = self.nodes[i].parent;
        }
        points.reverse();
        let verified = points.windows(2).all(|w| f.eval(&w[1]) == w[0]);
        BackwardBranch { points, map_name: f.name().to_string(), verified, dead_end: None }
    }
}

/// Preimage tree of `x` down to `depth`, failing once it holds more than `cap` nodes.
pub fn backward_tree(f: &PlMap, x: &GraphPoint, depth: usize, cap: usize) -> Result<PreimageTree> {
    let x = f.graph().normalize(x)?;
    let mut tree = PreimageTree {
        nodes: vec![TreeNode { point: x, parent: None, level: 0 }],
        levels: vec![vec![0]],
        arc_preimages: Vec::new(),
    };
    for level in 1..=depth {
        let mut current = Vec::new();
        for &parent in &tree.levels[level - 1] {
            let pre = f.preimages(&tree.nodes[parent].point)?;
            tree.arc_preimages.extend(pre.arcs.into_iter().map(|a| (parent, a)));
            for p in pre.points.iter().cloned() {
                if tree.nodes.len() >= cap {
                    return Err(Error::Resource(format!("preimage tree cap {cap} exceeded at depth {level}")));
                }
                current.push(tree.nodes.len());
                tree.nodes.push(TreeNode { point: p, parent: Some(parent), level });
            }
        }
        tree.levels.push(current);
    }
    Ok(tree)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    GreedyNearest,
    GreedyWithLookahead(usize),
}

/// Default lookahead depth of [`Strategy::GreedyWithLookahead`].
pub const DEFAULT_LOOKAHEAD: usize = 4;
/// Default number of steps spent on each waypoint.
pub const DEFAULT_DWELL: usize = 3;

impl Default for Strategy {
    fn default() -> Self {
        Strategy::GreedyWithLookahead(DEFAULT_LOOKAHEAD)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteeringPlan {
    pub waypoints: Vec<GraphPoint>,
    pub dwell: usize,
    pub strategy: Strategy,
}

impl SteeringPlan {
    pub fn new(waypoints: Vec<GraphPoint>, dwell: usize, strategy: Strategy) -> Result<Self> {
        if waypoints.is_empty() {
            return Err(Error::Domain("steering plan needs at least one waypoint".into()));
        }
        if dwell == 0 {
            return Err(Error::Domain("dwell must be at least 1".into()));
        }
        Ok(SteeringPlan { waypoints, dwell, strategy })
    }

    /// Waypoints cycling through a target set in the given order, default dwell and strategy.
    pub fn toward(target: &[GraphPoint]) -> Result<Self> {
        SteeringPlan::new(target.to_vec(), DEFAULT_DWELL, Strategy::default())
    }

    /// Waypoint used when choosing `x_{-(step+1)}`.
    pub fn waypoint(&self, step: usize) -> &GraphPoint {
        &self.waypoints[(step / self.dwell) % self.waypoints.len()]
    }
}

/// Preimage candidates of `p`: isolated preimages, plus for each arc of
/// preimages the arc point nearest to `w`.
fn candidates(f: &PlMap, p: &GraphPoint, w: &GraphPoint) -> Result<Vec<GraphPoint>> {
    let g = f.graph();
    let pre = f.preimages(p)?;
    let mut out: Vec<GraphPoint> = pre.points.iter().cloned().collect();
    for arc in &pre.arcs {
        out.push(nearest_on_arc(g, arc, w));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn nearest_on_arc(g: &GraphSpace, arc: &Arc, w: &GraphPoint) -> GraphPoint {
    let mut best = GraphPoint::new(arc.edge, arc.lo.clone());
    let mut best_d = g.distance(w, &best);
    let mut options = vec![GraphPoint::new(arc.edge, arc.hi.clone())];
    if w.edge == arc.edge && arc.contains_t(&w.t) {
        options.push(w.clone());
    }
    for z in options {
        let d = g.distance(w, &z);
        if d < best_d {
            best_d = d;
            best = z;
        }
    }
    g.normalize_unchecked(&best)
}

/// Smallest distance to `w` over `p` and its preimages up to `levels` further steps.
fn subtree_score(f: &PlMap, p: &GraphPoint, w: &GraphPoint, levels: usize) -> Result<Q> {
    let mut best = f.graph().distance(p, w);
    if levels == 0 || best.is_zero() {
        return Ok(best);
    }
    for c in candidates(f, p, w)? {
        let s = subtree_score(f, &c, w, levels - 1)?;
        if s < best {
            best = s;
        }
    }
    Ok(best)
}

/// Builds `x_0 = x, …, x_{-depth}`, choosing at each step the preimage
/// preferred by the plan's strategy. Ties go to the candidate nearer the
/// waypoint, then to the smallest `(edge, t)`.
pub fn steer_branch(f: &PlMap, x: &GraphPoint, plan: &SteeringPlan, depth: usize) -> Result<BackwardBranch> {
    if depth < 1 {
        return Err(Error::Domain("steering depth must be at least 1".into()));
    }
    let g = f.graph();
    let mut points = vec![g.normalize(x)?];
    for w in &plan.waypoints {
        g.check_point(w)?;
    }
    let lookahead = match plan.strategy {
        Strategy::GreedyNearest => 0,
        Strategy::GreedyWithLookahead(k) => k,
    };
    let mut dead_end = None;
    for step in 0..depth {
        let w = plan.waypoint(step);
        let cur = points.last().expect("non-empty");
        let options = candidates(f, cur, w)?;
        if options.is_empty() {
            dead_end = Some(step);
            break;
        }
        let mut best: Option<(Q, Q, GraphPoint)> = None;
        for c in options {
            let score = subtree_score(f, &c, w, lookahead)?;
            let near = g.distance(&c, w);
            let key = (score, near, c);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        points.push(best.expect("non-empty options").2);
    }
    let mut branch = BackwardBranch { points, map_name: f.name().to_string(), verified: false, dead_end };
    branch.verified = branch.check(f);
    if !branch.verified {
        return Err(Error::Internal("steered branch failed forward verification".into()));
    }
    Ok(branch)
}

/// Default share of the branch used for α-estimates.
pub fn default_tail_fraction() -> Q {
    rational::half()
}

/// ε-net of the deepest `⌈tail_fraction · (N + 1)⌉` branch points, scanned deepest first.
pub fn alpha_estimate(f: &PlMap, branch: &BackwardBranch, tail_fraction: &Q, eps: &Q) -> Result<LimitSetEstimate> {
    if !branch.verified {
        return Err(Error::Contract("α-estimate of an unverified branch".into()));
    }
    if !tail_fraction.is_positive() || tail_fraction > &rational::one() {
        return Err(Error::Domain(format!("tail fraction {} not in (0, 1]", rational::format(tail_fraction))));
    }
    if !eps.is_positive() {
        return Err(Error::Domain("resolution must be positive".into()));
    }
    let n = branch.points.len();
    let tail = rational::ceil_to_usize(&(tail_fraction * Q::from_integer(n.into()))).clamp(1, n);
    let points = epsilon_net(f.graph(), branch.points[n - tail..].iter().rev(), eps);
    Ok(LimitSetEstimate {
        points,
        resolution: eps.clone(),
        provenance: Provenance::AlphaTail,
        params: EstimateParams::Alpha { depth: branch.depth(), tail },
    })
}

/// Strong connectivity of `u → v` whenever `d(f(u), v) < ε` on `S`.
pub fn chain_transitive(s: &PointSet, f: &PlMap, eps: &Q) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::Domain("chain transitivity of an empty set".into()));
    }
    if !eps.is_positive() {
        return Err(Error::Domain("ε must be positive".into()));
    }
    let g = f.graph();
    let pts = s.points();
    let images: Vec<GraphPoint> = pts.iter().map(|p| f.eval(p)).collect();
    let adj: Vec<Vec<usize>> =
        (0..pts.len()).map(|u| (0..pts.len()).filter(|&v| &g.distance(&images[u], &pts[v]) < eps).collect()).collect();
    let mut radj = vec![Vec::new(); pts.len()];
    for (u, outs) in adj.iter().enumerate() {
        for &v in outs {
            radj[v].push(u);
        }
    }
    Ok(reaches_all(&adj) && reaches_all(&radj))
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Period bound used when matching estimates against exact periodic orbits.
pub const DEFAULT_MATCH_PERIOD: usize = 4;

/// Looks for an exact periodic orbit represented in `s` whose matched
/// points form a proper, ε-isolated part of `s`.
pub fn isolated_periodic_violation(
    s: &LimitSetEstimate,
    f: &PlMap,
    eps: &Q,
    max_period: usize,
    limits: &Limits,
) -> Result<Option<PeriodicOrbit>> {
    let search = periodic_points(f, max_period, limits)?;
    Ok(isolated_periodic_violation_in(&search, s, f, eps))
}

/// [`isolated_periodic_violation`] against a precomputed periodic search.
pub fn isolated_periodic_violation_in(
    search: &PeriodicSearch,
    s: &LimitSetEstimate,
    f: &PlMap,
    eps: &Q,
) -> Option<PeriodicOrbit> {
    let g = f.graph();
    let mut orbits: Vec<PeriodicOrbit> = search.orbits.clone();
    for pa in &search.arcs {
        for p in &s.points {
            let z = nearest_on_arc(g, &pa.arc, p);
            if &g.distance(&z, p) < eps {
                if let Some(o) = PeriodicOrbit::from_point(f, &z, pa.period, Certificate::ExactSolve) {
                    orbits.push(o);
                }
            }
        }
    }
    for orbit in orbits {
        let represented = orbit.points.iter().all(|z| s.points.iter().any(|p| &g.distance(p, z) < eps));
        if !represented {
            continue;
        }
        let (matched, rest): (Vec<&GraphPoint>, Vec<&GraphPoint>) =
            s.points.iter().partition(|p| orbit.points.iter().any(|z| &g.distance(p, z) < eps));
        if rest.is_empty() {
            continue;
        }
        let isolated = matched.iter().all(|m| rest.iter().all(|r| &g.distance(m, r) > eps));
        if isolated {
            return Some(orbit);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Recurrence {
    /// The branch runs backward along the exact cycle of `x`.
    ExactCycle,
    /// `x` was not found periodic; the branch is only steered toward `x`.
    Steered,
}

/// Period bound for detecting exact periodicity in [`recurrent_branch`].
pub const RECURRENCE_PERIOD_BOUND: usize = 4096;

/// A branch from `x` whose α-estimate contains `x`.
pub fn recurrent_branch(f: &PlMap, x: &GraphPoint, depth: usize) -> Result<(BackwardBranch, Recurrence)> {
    let x = f.graph().normalize(x)?;
    if let Some(orbit) = PeriodicOrbit::from_point(f, &x, RECURRENCE_PERIOD_BOUND, Certificate::ExactSolve) {
        let start = orbit.cycle.iter().position(|c| *c == x).expect("x on its orbit");
        let p = orbit.period;
        let points = (0..=depth).map(|j| orbit.cycle[(start + p - j % p) % p].clone()).collect();
        return Ok((BackwardBranch::from_points(f, points)?, Recurrence::ExactCycle));
    }
    let plan = SteeringPlan::toward(std::slice::from_ref(&x))?;
    Ok((steer_branch(f, &x, &plan, depth.max(1))?, Recurrence::Steered))
}

/// Recurrence threshold for covering-chain extraction.
pub fn default_recurrence_threshold() -> Q {
    q(1, 64)
}

/// Extracts a single-arc covering chain `f^m(J) ⊇ J` from the tail of a branch.
///
/// Looks for a pair `l < k = N` with `l` at or before the start of the
/// α-tail and `d(x_{-k}, x_{-l}) < threshold`, then grows a dyadic radius
/// around `x_{-k}` until `J` covers itself under `f^(k-l)`.
pub fn tail_covering_chain(
    f: &PlMap,
    branch: &BackwardBranch,
    tail_fraction: &Q,
    threshold: &Q,
) -> Result<Option<CoveringChain>> {
    let g = f.graph();
    let n = branch.points.len();
    let k = n - 1;
    let tail = rational::ceil_to_usize(&(tail_fraction * Q::from_integer(n.into()))).clamp(1, n);
    let tail_start = n - tail;
    let anchor = &branch.points[k];
    let edge_len = g.edge(anchor.edge).length.clone();
    for l in (0..=tail_start.min(k.saturating_sub(1))).rev() {
        if l >= k {
            continue;
        }
        let d = g.distance(anchor, &branch.points[l]);
        if &d >= threshold {
            continue;
        }
        let m = k - l;
        let max_exp = (m as u32 + 16).min(400);
        let needed = &d / Q::from_integer((num_bigint::BigInt::one() << m.min(400)) - 1u32);
        for s in (2..=max_exp).rev() {
            let r = Q::new(1.into(), num_bigint::BigInt::one() << s);
            if r < needed {
                continue;
            }
            let w = &r / &edge_len;
            let lo = rational::max(&(&anchor.t - &w), &rational::zero());
            let hi = rational::min(&(&anchor.t + &w), &rational::one());
            let chain = CoveringChain::new(vec![Arc::new(anchor.edge, lo, hi)], vec![m])?;
            if chain.verify(f).into_iter().all(|ok| ok) {
                return Ok(Some(chain));
            }
        }
    }
    Ok(None)
}

/// Certified periodic orbit shadowing the tail of `branch`, if a covering chain is found.
pub fn tail_periodic_orbit(
    f: &PlMap,
    branch: &BackwardBranch,
    tail_fraction: &Q,
    limits: &Limits,
) -> Result<Option<(CoveringChain, PeriodicOrbit)>> {
    match tail_covering_chain(f, branch, tail_fraction, &default_recurrence_threshold())? {
        Some(chain) => {
            let orbit = certify_covering(f, &chain, limits)?;
            Ok(Some((chain, orbit)))
        }
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::rational::qi;

    fn pt(n: i64, d: i64) -> GraphPoint {
        GraphPoint::new(0, q(n, d))
    }

    fn set(f: &PlMap, xs: &[(i64, i64)]) -> PointSet {
        PointSet::new(f.graph(), xs.iter().map(|&(n, d)| pt(n, d))).unwrap()
    }

    #[test]
    fn tree_examples() {
        let t = builtins::tent();
        let tr = backward_tree(&t, &pt(0, 1), 1, 100).unwrap();
        assert_eq!(tr.level_points(1), vec![&pt(0, 1), &pt(1, 1)]);
        let tr = backward_tree(&t, &pt(1, 1), 1, 100).unwrap();
        assert_eq!(tr.level_points(1), vec![&pt(1, 2)]);
        let tr = backward_tree(&t, &pt(2, 3), 2, 100).unwrap();
        let lvl: Vec<GraphPoint> = tr.level_points(2).into_iter().cloned().collect();
        assert_eq!(PointSet::new(t.graph(), lvl).unwrap(), set(&t, &[(1, 6), (5, 6), (1, 3), (2, 3)]));
        for node in &tr.nodes[1..] {
            assert_eq!(t.eval(&node.point), tr.nodes[node.parent.unwrap()].point);
        }
        assert!(tr.branch_to(&t, *tr.levels[2].last().unwrap()).verified);
    }

    #[test]
    fn tree_cap_is_loud() {
        let t = builtins::tent();
        assert!(matches!(backward_tree(&t, &pt(1, 3), 10, 50), Err(Error::Resource(_))));
    }

    #[test]
    fn tree_reports_constant_pieces() {
        let f =
            crate::plmap::interval_map(&[qi(0), q(1, 3), q(2, 3), qi(1)], &[qi(0), q(1, 2), q(1, 2), qi(1)], "plateau")
                .unwrap();
        let tr = backward_tree(&f, &pt(1, 2), 1, 100).unwrap();
        assert!(tr.level_points(1).is_empty());
        assert_eq!(tr.arc_preimages, vec![(0, Arc::new(0, q(1, 3), q(2, 3)))]);
    }

    #[test]
    fn steer_to_fixed_point() {
        let t = builtins::tent();
        let plan = SteeringPlan::new(vec![pt(2, 3)], 1, Strategy::GreedyNearest).unwrap();
        let b = steer_branch(&t, &pt(1, 2), &plan, 20).unwrap();
        assert!(b.verified);
        assert_eq!(b.depth(), 20);
        assert!(t.graph().distance(b.deepest(), &pt(2, 3)) < q(1, 1024));
        let b = steer_branch(&t, &pt(2, 3), &plan, 10).unwrap();
        assert!(b.points.iter().all(|p| *p == pt(2, 3)));
        let a = alpha_estimate(&t, &b, &default_tail_fraction(), &q(1, 100)).unwrap();
        assert_eq!(a.points, set(&t, &[(2, 3)]));
    }

    #[test]
    fn steer_to_period_two() {
        let t = builtins::tent();
        let plan = SteeringPlan::new(vec![pt(2, 5), pt(4, 5)], 3, Strategy::default()).unwrap();
        let b = steer_branch(&t, &pt(1, 2), &plan, 60).unwrap();
        let a = alpha_estimate(&t, &b, &default_tail_fraction(), &q(1, 100)).unwrap();
        let target = set(&t, &[(2, 5), (4, 5)]);
        assert!(t.graph().hausdorff(&a.points, &target).unwrap() < q(1, 100));
        assert!(chain_transitive(&a.points, &t, &q(4, 100)).unwrap());
    }

    #[test]
    fn steering_is_deterministic() {
        let f = builtins::figure2();
        let plan = SteeringPlan::toward(&[pt(1, 2)]).unwrap();
        let a = steer_branch(&f, &pt(33, 64), &plan, 30).unwrap();
        let b = steer_branch(&f, &pt(33, 64), &plan, 30).unwrap();
        assert_eq!(a, b);
        for j in 1..a.points.len() {
            let prev = (&a.points[j - 1].t - rational::half()).abs();
            let cur = (&a.points[j].t - rational::half()).abs();
            assert_eq!(cur * qi(2), prev);
        }
    }

    #[test]
    fn dead_end_gives_partial_branch() {
        let f = crate::plmap::interval_map(&[qi(0), qi(1)], &[qi(0), q(1, 2)], "half").unwrap();
        let plan = SteeringPlan::toward(&[pt(0, 1)]).unwrap();
        let b = steer_branch(&f, &pt(3, 4), &plan, 5).unwrap();
        assert_eq!(b.dead_end, Some(0));
        assert_eq!(b.depth(), 0);
    }

    #[test]
    fn chain_examples() {
        let t = builtins::tent();
        assert!(chain_transitive(&set(&t, &[(2, 5), (4, 5)]), &t, &q(1, 100)).unwrap());
        assert!(!chain_transitive(&set(&t, &[(0, 1), (2, 3)]), &t, &q(1, 100)).unwrap());
        assert!(chain_transitive(&set(&t, &[(2, 3)]), &t, &q(1, 1_000_000)).unwrap());
    }

    fn estimate(points: PointSet) -> LimitSetEstimate {
        LimitSetEstimate {
            points,
            resolution: q(1, 1000),
            provenance: Provenance::AlphaTail,
            params: EstimateParams::Alpha { depth: 0, tail: 0 },
        }
    }

    #[test]
    fn periodic_violation_examples() {
        let t = builtins::tent();
        let lim = Limits::default();
        let eps = q(1, 100);
        assert_eq!(isolated_periodic_violation(&estimate(set(&t, &[(2, 3)])), &t, &eps, 3, &lim).unwrap(), None);
        assert_eq!(
            isolated_periodic_violation(&estimate(set(&t, &[(2, 5), (4, 5)])), &t, &eps, 3, &lim).unwrap(),
            None
        );
        let synthetic = set(&t, &[(0, 1), (666, 1000), (2, 3), (667, 1000)]);
        let w = isolated_periodic_violation(&estimate(synthetic), &t, &eps, 3, &lim).unwrap().unwrap();
        assert_eq!(w.points, set(&t, &[(0, 1)]));
    }

    #[test]
    fn recurrent_examples() {
        let t = builtins::tent();
        let (b, kind) = recurrent_branch(&t, &pt(2, 3), 10).unwrap();
        assert_eq!(kind, Recurrence::ExactCycle);
        assert!(b.points.iter().all(|p| *p == pt(2, 3)));
        let (b, kind) = recurrent_branch(&t, &pt(2, 5), 9).unwrap();
        assert_eq!(kind, Recurrence::ExactCycle);
        assert_eq!(b.points[..3], [pt(2, 5), pt(4, 5), pt(2, 5)]);
        let a = alpha_estimate(&t, &b, &default_tail_fraction(), &q(1, 100)).unwrap();
        assert_eq!(a.points, set(&t, &[(2, 5), (4, 5)]));
        let f = builtins::figure2();
        let (b, _) = recurrent_branch(&f, &pt(1, 2), 5).unwrap();
        assert!(b.points.iter().all(|p| *p == pt(1, 2)));
        let (b, kind) = recurrent_branch(&t, &pt(1, 7), 5).unwrap();
        assert_eq!(kind, Recurrence::Steered);
        assert!(b.verified);
    }

    #[test]
    fn records_and_csv() {
        let t = builtins::tent();
        let b = BackwardBranch::from_points(&t, vec![pt(1, 1), pt(1, 2), pt(1, 4)]).unwrap();
        assert_eq!(b.records(t.graph()), vec!["0:e0:1/1", "1:e0:1/2", "2:e0:1/4"]);
        assert_eq!(b.to_csv(t.graph()), "index,edge,t,t_float\n0,e0,1/1,1\n1,e0,1/2,0.5\n2,e0,1/4,0.25\n");
        assert!(BackwardBranch::from_points(&t, vec![pt(1, 1), pt(1, 4)]).is_err());
    }

    #[test]
    fn covering_chain_from_tail() {
        let t = builtins::tent();
        let plan = SteeringPlan::toward(&[pt(2, 7), pt(4, 7), pt(6, 7)]).unwrap();
        let b = steer_branch(&t, &pt(1, 3), &plan, 40).unwrap();
        let (chain, orbit) =
            tail_periodic_orbit(&t, &b, &default_tail_fraction(), &Limits::default()).unwrap().unwrap();
        assert!(chain.verify(&t).into_iter().all(|ok| ok));
        assert!(orbit.verify(&t));
        let a = alpha_estimate(&t, &b, &default_tail_fraction(), &q(1, 256)).unwrap();
        assert!(t.graph().hausdorff(&orbit.points, &a.points).unwrap() < q(1, 16));
    }
}
