//! Forward-orbit analyses: ω-limit estimates, exact periodic orbits, Bowen
//! ball components and covering-chain certificates.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::plmap::{AffineBranch, PlMap};
use crate::rational::{self, Q};
use crate::topograph::{Arc, ArcSet, GraphPoint, GraphSpace, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    OmegaTail,
    AlphaTail,
    ExactPeriodic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateParams {
    Omega { burn_in: usize, samples: usize },
    Alpha { depth: usize, tail: usize },
    Periodic { period: usize },
}

/// A finite point set standing in for a limit set at resolution `resolution`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSetEstimate {
    pub points: PointSet,
    pub resolution: Q,
    pub provenance: Provenance,
    pub params: EstimateParams,
}

impl LimitSetEstimate {
    /// Whether `f` maps the point set onto itself exactly.
    pub fn is_exactly_invariant(&self, f: &PlMap) -> bool {
        let image: Vec<GraphPoint> = self.points.iter().map(|p| f.eval(p)).collect();
        PointSet::new(f.graph(), image).map(|img| img == self.points).unwrap_or(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    ExactSolve,
    CoveringChain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicOrbit {
    /// Minimal period.
    pub period: usize,
    pub points: PointSet,
    /// The orbit in dynamical order, starting at its smallest point.
    pub cycle: Vec<GraphPoint>,
    pub certificate: Certificate,
}

impl PeriodicOrbit {
    /// Builds the orbit of `z` if `f^k(z) = z` for some `k <= max_period`.
    pub fn from_point(f: &PlMap, z: &GraphPoint, max_period: usize, certificate: Certificate) -> Option<Self> {
        let z = f.graph().normalize_unchecked(z);
        let mut cycle = vec![z.clone()];
        let mut cur = f.eval(&z);
        while cur != z {
            if cycle.len() >= max_period {
                return None;
            }
            cycle.push(cur.clone());
            cur = f.eval(&cur);
        }
        let start = cycle.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|(i, _)| i).unwrap_or(0);
        cycle.rotate_left(start);
        let points = PointSet::new(f.graph(), cycle.iter().cloned()).expect("valid points");
        Some(PeriodicOrbit { period: cycle.len(), points, cycle, certificate })
    }

    /// Re-checks that `f` permutes the points cyclically with the stated period.
    pub fn verify(&self, f: &PlMap) -> bool {
        if self.cycle.len() != self.period || self.points.len() != self.period {
            return false;
        }
        (0..self.period).all(|i| f.eval(&self.cycle[i]) == self.cycle[(i + 1) % self.period])
    }
}

/// An arc on which `f^period` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicArc {
    pub arc: Arc,
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PeriodicSearch {
    /// Isolated orbits, sorted by (period, points).
    pub orbits: Vec<PeriodicOrbit>,
    /// Arcs of periodic points (only when some iterate is the identity on an interval).
    pub arcs: Vec<PeriodicArc>,
}

impl PeriodicSearch {
    pub fn of_period(&self, period: usize) -> impl Iterator<Item = &PeriodicOrbit> {
        self.orbits.iter().filter(move |o| o.period == period)
    }

    /// Exact periodic orbit nearest to `p`: either an isolated orbit point or
    /// the closest point of a periodic arc.
    pub fn nearest_orbit(&self, f: &PlMap, p: &GraphPoint) -> Option<(Q, PeriodicOrbit)> {
        let g = f.graph();
        let mut best: Option<(Q, PeriodicOrbit)> = None;
        let offer = |d: Q, orbit: &PeriodicOrbit, best: &mut Option<(Q, PeriodicOrbit)>| {
            if best.as_ref().is_none_or(|(bd, bo)| d < *bd || (d == *bd && orbit.points < bo.points)) {
                *best = Some((d, orbit.clone()));
            }
        };
        for o in &self.orbits {
            if let Some(d) = g.distance_to_set(p, &o.points) {
                offer(d, o, &mut best);
            }
        }
        for pa in &self.arcs {
            let z = closest_point_on_arc(g, &pa.arc, p);
            if let Some(orbit) = PeriodicOrbit::from_point(f, &z, pa.period, Certificate::ExactSolve) {
                offer(g.distance(p, &z), &orbit, &mut best);
            }
        }
        best
    }
}

fn closest_point_on_arc(g: &GraphSpace, arc: &Arc, p: &GraphPoint) -> GraphPoint {
    let ends = [GraphPoint::new(arc.edge, arc.lo.clone()), GraphPoint::new(arc.edge, arc.hi.clone())];
    let mut best = ends[0].clone();
    let mut best_d = g.distance(p, &best);
    let mut consider = |z: GraphPoint| {
        let d = g.distance(p, &z);
        if d < best_d {
            best_d = d;
            best = z;
        }
    };
    consider(ends[1].clone());
    if p.edge == arc.edge && arc.contains_t(&p.t) {
        consider(p.clone());
    }
    g.normalize_unchecked(&best)
}

/// Greedy ε-net: keeps a point iff it is at distance `>= eps` from every
/// point kept so far, scanning in the given order.
pub fn epsilon_net<'a>(graph: &GraphSpace, points: impl IntoIterator<Item = &'a GraphPoint>, eps: &Q) -> PointSet {
    PointSet::new(graph, epsilon_net_ordered(graph, points, eps)).expect("normalized points")
}

/// [`epsilon_net`] in scan order.
pub fn epsilon_net_ordered<'a>(
    graph: &GraphSpace,
    points: impl IntoIterator<Item = &'a GraphPoint>,
    eps: &Q,
) -> Vec<GraphPoint> {
    let mut kept: Vec<GraphPoint> = Vec::new();
    for p in points {
        let p = graph.normalize_unchecked(p);
        if kept.iter().all(|k| &graph.distance(k, &p) >= eps) {
            kept.push(p);
        }
    }
    kept
}

/// ε-net of `f^burn_in(x), …, f^(burn_in + samples)(x)`.
pub fn omega_estimate(f: &PlMap, x: &GraphPoint, burn_in: usize, samples: usize, eps: &Q) -> Result<LimitSetEstimate> {
    if samples < 1 {
        return Err(Error::Domain("omega_estimate needs at least one sample".into()));
    }
    if !eps.is_positive() {
        return Err(Error::Domain("resolution must be positive".into()));
    }
    let start = f.iterate_n(&f.graph().normalize(x)?, burn_in);
    let tail = f.iterate(&start, samples)?;
    Ok(LimitSetEstimate {
        points: epsilon_net(f.graph(), &tail, eps),
        resolution: eps.clone(),
        provenance: Provenance::OmegaTail,
        params: EstimateParams::Omega { burn_in, samples },
    })
}

/// All periodic orbits of minimal period `<= max_period`, by solving one
/// linear equation per itinerary of affine pieces, plus a direct check of
/// every vertex.
pub fn periodic_points(f: &PlMap, max_period: usize, limits: &Limits) -> Result<PeriodicSearch> {
    if max_period < 1 {
        return Err(Error::Domain("period bound must be at least 1".into()));
    }
    let g = f.graph();
    let mut candidates: Vec<GraphPoint> = Vec::new();
    let mut arcs: Vec<PeriodicArc> = Vec::new();
    let mut level = f.branches();
    for p in 1..=max_period {
        if p > 1 {
            let mut next = Vec::new();
            for b in &level {
                next.extend(f.refine_branch(b));
                if next.len() > limits.itinerary_cap {
                    return Err(Error::Resource(format!(
                        "itinerary explosion cap {} exceeded at period {p}",
                        limits.itinerary_cap
                    )));
                }
            }
            level = next;
        }
        for b in &level {
            if b.target != b.source.edge {
                continue;
            }
            let slope_minus_one = &b.a - rational::one();
            if slope_minus_one.is_zero() {
                if b.b.is_zero() && !arcs.iter().any(|a| a.arc.edge == b.source.edge && covers(&a.arc, &b.source)) {
                    arcs.push(PeriodicArc { arc: b.source.clone(), period: p });
                }
                continue;
            }
            let s = &b.b / (rational::one() - &b.a);
            rational::check_size(&s, limits.max_bits)?;
            if b.source.contains_t(&s) {
                candidates.push(GraphPoint::new(b.source.edge, s));
            }
        }
        for v in 0..g.vertex_count() {
            let z = g.vertex_point(v);
            if f.iterate_n(&z, p) == z {
                candidates.push(z);
            }
        }
    }
    let mut orbits: Vec<PeriodicOrbit> = Vec::new();
    candidates.sort();
    candidates.dedup();
    for z in candidates {
        let z = g.normalize_unchecked(&z);
        if orbits.iter().any(|o| o.points.contains(&z)) {
            continue;
        }
        let orbit = PeriodicOrbit::from_point(f, &z, max_period, Certificate::ExactSolve)
            .ok_or_else(|| Error::Internal(format!("solved point {} is not periodic", f.format_point(&z))))?;
        orbits.push(orbit);
    }
    orbits.sort_by(|a, b| (a.period, &a.points).cmp(&(b.period, &b.points)));
    arcs.sort_by(|a, b| (a.period, &a.arc).cmp(&(b.period, &b.arc)));
    Ok(PeriodicSearch { orbits, arcs })
}

fn covers(outer: &Arc, inner: &Arc) -> bool {
    outer.lo <= inner.lo && inner.hi <= outer.hi
}

/// Keeps the parts of each branch whose image lies in `target`, including
/// single-point contacts through a shared vertex.
pub(crate) fn restrict_image(g: &GraphSpace, branches: &[AffineBranch], target: &Arc) -> Vec<AffineBranch> {
    let mut out = Vec::new();
    for b in branches {
        if b.target == target.edge {
            if let Some(src) = b.pull_back(&target.lo, &target.hi) {
                out.push(b.restrict(src));
            }
            continue;
        }
        for end in [&target.lo, &target.hi] {
            if !(end.is_zero() || end.is_one()) {
                continue;
            }
            let vertex = GraphPoint::new(target.edge, end.clone());
            for rep in g.representations(&vertex).into_iter().filter(|r| r.edge == b.target) {
                if let Some(src) = b.pull_back(&rep.t, &rep.t) {
                    out.push(b.restrict(src));
                }
            }
        }
    }
    out.sort_by(|x, y| x.source.cmp(&y.source));
    out.dedup();
    out
}

/// Keeps the parts of each branch whose image lies in `set`.
fn restrict_image_to_set(g: &GraphSpace, branches: &[AffineBranch], set: &ArcSet) -> Vec<AffineBranch> {
    let mut out = Vec::new();
    for arc in set.arcs() {
        out.extend(restrict_image(g, branches, arc));
    }
    out.sort_by(|x, y| x.source.cmp(&y.source));
    out.dedup();
    out
}

/// `B'_n(x, ε)` for every `n` in `0..=n_max`, together with the affine
/// pieces of `f^n` on each of them.
pub fn bowen_ball_components(
    f: &PlMap,
    x: &GraphPoint,
    n_max: usize,
    eps: &Q,
) -> Result<Vec<(ArcSet, Vec<AffineBranch>)>> {
    if !eps.is_positive() {
        return Err(Error::Domain("ε must be positive".into()));
    }
    let g = f.graph();
    let x = g.normalize(x)?;
    let ball = g.ball(&x, eps);
    let mut segments: Vec<AffineBranch> = ball.arcs().iter().cloned().map(AffineBranch::identity).collect();
    let mut component = ball;
    let mut out = vec![(component.clone(), segments.clone())];
    let mut fx = x.clone();
    for _ in 1..=n_max {
        fx = f.eval(&fx);
        let refined: Vec<AffineBranch> = segments.iter().flat_map(|s| f.refine_branch(s)).collect();
        let target = g.ball(&fx, eps);
        let kept = restrict_image_to_set(g, &refined, &target);
        let sources = ArcSet::new(g, kept.iter().map(|s| s.source.clone()).collect());
        component =
            sources.component_containing(g, &x).ok_or_else(|| Error::Internal("Bowen ball lost its center".into()))?;
        segments = kept.into_iter().filter(|s| component.contains_arc(g, &s.source)).collect();
        out.push((component.clone(), segments.clone()));
    }
    Ok(out)
}

/// The connected component containing `x` of
/// `{ y : d(f^i(x), f^i(y)) <= ε for i = 0..=n }`.
pub fn bowen_ball_component(f: &PlMap, x: &GraphPoint, n: usize, eps: &Q) -> Result<ArcSet> {
    Ok(bowen_ball_components(f, x, n, eps)?.pop().expect("n + 1 entries").0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    /// `min diam f^n(B'_n(x, ε))` over the samples and `n <= n_max`.
    pub eta: Q,
    /// Where the minimum was attained.
    pub argmin: (GraphPoint, usize),
}

/// Empirical expansion constant: the smallest `diam f^n(B'_n(x, ε))`.
pub fn expansion_constant(f: &PlMap, eps: &Q, n_max: usize, samples: &PointSet) -> Result<ExpansionReport> {
    if samples.is_empty() {
        return Err(Error::Domain("expansion_constant needs sample points".into()));
    }
    let g = f.graph();
    let mut best: Option<ExpansionReport> = None;
    for x in samples {
        for (n, (_, segments)) in bowen_ball_components(f, x, n_max, eps)?.into_iter().enumerate() {
            let image = ArcSet::new(g, segments.iter().map(AffineBranch::image).collect());
            let d = image.diameter(g);
            if best.as_ref().is_none_or(|b| d < b.eta) {
                best = Some(ExpansionReport { eta: d, argmin: (x.clone(), n) });
            }
        }
    }
    Ok(best.expect("non-empty samples"))
}

/// Cyclic arc inclusions `f^(n_i)(J_i) ⊇ J_(i+1 mod k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringChain {
    pub arcs: Vec<Arc>,
    pub exponents: Vec<usize>,
}

impl CoveringChain {
    pub fn new(arcs: Vec<Arc>, exponents: Vec<usize>) -> Result<Self> {
        if arcs.is_empty() || arcs.len() != exponents.len() {
            return Err(Error::Domain("covering chain needs one exponent per arc".into()));
        }
        if exponents.contains(&0) {
            return Err(Error::Domain("covering exponents must be positive".into()));
        }
        Ok(CoveringChain { arcs, exponents })
    }

    pub fn total_time(&self) -> usize {
        self.exponents.iter().sum()
    }

    /// Exact check of every inclusion, in chain order.
    pub fn verify(&self, f: &PlMap) -> Vec<bool> {
        let g = f.graph();
        (0..self.arcs.len())
            .map(|i| {
                let img = f.image_iterate(&ArcSet::new(g, vec![self.arcs[i].clone()]), self.exponents[i]);
                let next = &self.arcs[(i + 1) % self.arcs.len()];
                img.contains_arc(g, next)
            })
            .collect()
    }
}

/// Finds `z ∈ J_0` with `f^(Σ n_i)(z) = z` whose orbit visits `J_i` at the
/// chain's checkpoints, by exact solving over the chain's itineraries.
pub fn certify_covering(f: &PlMap, chain: &CoveringChain, limits: &Limits) -> Result<PeriodicOrbit> {
    let g = f.graph();
    let checks = chain.verify(f);
    if let Some(i) = checks.iter().position(|ok| !ok) {
        return Err(Error::Contract(format!(
            "covering inclusion {i} fails: f^{}(J_{i}) does not contain J_{}",
            chain.exponents[i],
            (i + 1) % chain.arcs.len()
        )));
    }
    let j0 = &chain.arcs[0];
    let mut segments = vec![AffineBranch::identity(j0.clone())];
    for (i, &n) in chain.exponents.iter().enumerate() {
        for _ in 0..n {
            let mut next = Vec::new();
            for s in &segments {
                next.extend(f.refine_branch(s));
                if next.len() > limits.itinerary_cap {
                    return Err(Error::Resource(format!(
                        "itinerary explosion cap {} exceeded in covering chain",
                        limits.itinerary_cap
                    )));
                }
            }
            segments = next;
        }
        segments = restrict_image(g, &segments, &chain.arcs[(i + 1) % chain.arcs.len()]);
    }
    let mut candidates: Vec<GraphPoint> = Vec::new();
    for s in &segments {
        if s.target == s.source.edge {
            let slope_minus_one = &s.a - rational::one();
            if slope_minus_one.is_zero() {
                if s.b.is_zero() {
                    candidates.push(GraphPoint::new(s.source.edge, s.source.lo.clone()));
                }
            } else {
                let z = &s.b / (rational::one() - &s.a);
                rational::check_size(&z, limits.max_bits)?;
                if s.source.contains_t(&z) {
                    candidates.push(GraphPoint::new(s.source.edge, z));
                }
            }
        }
        candidates.push(GraphPoint::new(s.source.edge, s.source.lo.clone()));
        candidates.push(GraphPoint::new(s.source.edge, s.source.hi.clone()));
    }
    let mut verified: Vec<GraphPoint> =
        candidates.into_iter().map(|z| g.normalize_unchecked(&z)).filter(|z| follows_chain(f, chain, z)).collect();
    verified.sort();
    verified.dedup();
    let z = verified.into_iter().next().ok_or_else(|| {
        Error::Internal("covering inclusions hold but no periodic point was found in the chain".into())
    })?;
    PeriodicOrbit::from_point(f, &z, chain.total_time(), Certificate::CoveringChain)
        .ok_or_else(|| Error::Internal("chain solution is not periodic".into()))
}

fn follows_chain(f: &PlMap, chain: &CoveringChain, z: &GraphPoint) -> bool {
    let g = f.graph();
    let in_arc = |p: &GraphPoint, a: &Arc| ArcSet::new(g, vec![a.clone()]).contains_point(g, p);
    if !in_arc(z, &chain.arcs[0]) {
        return false;
    }
    let mut cur = z.clone();
    for (i, &n) in chain.exponents.iter().enumerate() {
        cur = f.iterate_n(&cur, n);
        if !in_arc(&cur, &chain.arcs[(i + 1) % chain.arcs.len()]) {
            return false;
        }
    }
    cur == *z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::rational::{q, qi};

    fn pt(n: i64, d: i64) -> GraphPoint {
        GraphPoint::new(0, q(n, d))
    }

    fn set(f: &PlMap, xs: &[(i64, i64)]) -> PointSet {
        PointSet::new(f.graph(), xs.iter().map(|&(n, d)| pt(n, d))).unwrap()
    }

    #[test]
    fn omega_examples() {
        let t = builtins::tent();
        let e = omega_estimate(&t, &pt(2, 5), 10, 10, &q(1, 100)).unwrap();
        assert_eq!(e.points, set(&t, &[(2, 5), (4, 5)]));
        assert!(e.is_exactly_invariant(&t));
        assert_eq!(omega_estimate(&t, &pt(2, 3), 10, 10, &q(1, 100)).unwrap().points, set(&t, &[(2, 3)]));
        assert_eq!(omega_estimate(&t, &pt(0, 1), 10, 10, &q(1, 100)).unwrap().points, set(&t, &[(0, 1)]));
        assert!(omega_estimate(&t, &pt(0, 1), 10, 0, &q(1, 100)).is_err());
        assert!(omega_estimate(&t, &pt(0, 1), 10, 3, &qi(0)).is_err());
    }

    #[test]
    fn epsilon_net_keeps_first_seen() {
        let t = builtins::tent();
        let pts = [pt(1, 2), pt(51, 100), pt(3, 4)];
        assert_eq!(epsilon_net(t.graph(), &pts, &q(1, 10)), set(&t, &[(1, 2), (3, 4)]));
    }

    #[test]
    fn tent_periodic_points() {
        let t = builtins::tent();
        let lim = Limits::default();
        let p1 = periodic_points(&t, 1, &lim).unwrap();
        let sets: Vec<_> = p1.orbits.iter().map(|o| o.points.clone()).collect();
        assert_eq!(sets, vec![set(&t, &[(0, 1)]), set(&t, &[(2, 3)])]);
        let p2 = periodic_points(&t, 2, &lim).unwrap();
        assert_eq!(p2.orbits.len(), 3);
        assert_eq!(p2.of_period(2).next().unwrap().points, set(&t, &[(2, 5), (4, 5)]));
        let p3 = periodic_points(&t, 3, &lim).unwrap();
        let triples: Vec<_> = p3.of_period(3).map(|o| o.points.clone()).collect();
        assert_eq!(triples, vec![set(&t, &[(2, 9), (4, 9), (8, 9)]), set(&t, &[(2, 7), (4, 7), (6, 7)])]);
        for o in &p3.orbits {
            assert!(o.verify(&t));
            assert_eq!(o.certificate, Certificate::ExactSolve);
        }
    }

    #[test]
    fn figure2_fixed_points() {
        let f = builtins::figure2();
        let p1 = periodic_points(&f, 1, &Limits::default()).unwrap();
        let sets: Vec<_> = p1.orbits.iter().map(|o| o.points.clone()).collect();
        assert_eq!(sets, vec![set(&f, &[(0, 1)]), set(&f, &[(1, 2)]), set(&f, &[(4, 5)])]);
    }

    #[test]
    fn explosion_cap_is_loud() {
        let t = builtins::tent();
        let lim = Limits { itinerary_cap: 10, ..Limits::default() };
        let err = periodic_points(&t, 6, &lim).unwrap_err();
        assert!(matches!(err, Error::Resource(ref m) if m.contains("10")), "{err}");
    }

    #[test]
    fn identity_pieces_give_periodic_arcs() {
        let f = builtins::cantor_bumps(1).unwrap();
        let p = periodic_points(&f, 1, &Limits::default()).unwrap();
        assert_eq!(p.arcs.len(), 2);
        assert_eq!(p.arcs[0].arc, Arc::new(0, qi(0), q(1, 3)));
        let (d, orbit) = p.nearest_orbit(&f, &pt(1, 10)).unwrap();
        assert_eq!(d, qi(0));
        assert_eq!(orbit.points, set(&f, &[(1, 10)]));
    }

    #[test]
    fn bowen_examples() {
        let t = builtins::tent();
        let b0 = bowen_ball_component(&t, &pt(1, 2), 0, &q(1, 4)).unwrap();
        assert_eq!(b0.arcs(), &[Arc::new(0, q(1, 4), q(3, 4))]);
        let b1 = bowen_ball_component(&t, &pt(1, 2), 1, &q(1, 4)).unwrap();
        assert_eq!(b1.arcs(), &[Arc::new(0, q(3, 8), q(5, 8))]);
    }

    #[test]
    fn bowen_component_drops_far_pieces() {
        // On the doubling circle the ball around 0 wraps; after one step the
        // preimage of the ball around f(0) = 0 has pieces near 0 and near 1/2.
        let f = builtins::doubling_circle();
        let b = bowen_ball_component(&f, &pt(0, 1), 1, &q(1, 5)).unwrap();
        assert_eq!(b.arcs(), &[Arc::new(0, qi(0), q(1, 10)), Arc::new(0, q(9, 10), qi(1))]);
    }

    #[test]
    fn segment_images_match_iterated_arc_images() {
        let t = builtins::tent();
        for (n, (ball, segs)) in bowen_ball_components(&t, &pt(3, 7), 6, &q(1, 10)).unwrap().into_iter().enumerate() {
            let via_segments = ArcSet::new(t.graph(), segs.iter().map(AffineBranch::image).collect());
            assert_eq!(via_segments, t.image_iterate(&ball, n));
        }
    }

    #[test]
    fn expansion_n_max_zero_is_ball_diameter() {
        let t = builtins::tent();
        let grid = set(&t, &[(0, 1), (1, 2)]);
        let r = expansion_constant(&t, &q(1, 10), 0, &grid).unwrap();
        assert_eq!(r.eta, q(1, 10));
        assert_eq!(r.argmin.0, pt(0, 1));
        let mid = set(&t, &[(1, 2)]);
        assert_eq!(expansion_constant(&t, &q(1, 10), 0, &mid).unwrap().eta, q(1, 5));
    }

    #[test]
    fn covering_examples() {
        let t = builtins::tent();
        let lim = Limits::default();
        let left = Arc::new(0, qi(0), q(1, 2));
        let right = Arc::new(0, q(1, 2), qi(1));
        let o = certify_covering(&t, &CoveringChain::new(vec![left.clone()], vec![1]).unwrap(), &lim).unwrap();
        assert_eq!(o.points, set(&t, &[(0, 1)]));
        assert_eq!(o.certificate, Certificate::CoveringChain);
        let o = certify_covering(&t, &CoveringChain::new(vec![right.clone()], vec![1]).unwrap(), &lim).unwrap();
        assert_eq!(o.points, set(&t, &[(2, 3)]));
        let o = certify_covering(&t, &CoveringChain::new(vec![left, right], vec![1, 1]).unwrap(), &lim).unwrap();
        assert_eq!(o.cycle, vec![pt(2, 5), pt(4, 5)]);
        assert_eq!(o.period, 2);
    }

    #[test]
    fn covering_rejects_unverified_chain() {
        let t = builtins::tent();
        let small = Arc::new(0, q(1, 10), q(1, 5));
        let err = certify_covering(&t, &CoveringChain::new(vec![small], vec![1]).unwrap(), &Limits::default());
        assert!(matches!(err, Err(Error::Contract(_))));
    }
}
