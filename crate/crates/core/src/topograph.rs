//! Finite metric graphs, exact points on them, single-edge arcs and the
//! geodesic (shortest path) metric.
//!
//! Edges are ordered by declaration index; "smallest edge" always refers to
//! that index, not to the textual id.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

pub type EdgeIx = usize;
pub type VertexIx = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub from: VertexIx,
    pub to: VertexIx,
    pub length: Q,
}

/// Which end of an edge: `t = 0` is `From`, `t = 1` is `To`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum End {
    From,
    To,
}

impl End {
    pub fn coordinate(self) -> Q {
        match self {
            End::From => rational::zero(),
            End::To => rational::one(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GraphSpace {
    vertex_ids: Vec<String>,
    edges: Vec<Edge>,
    /// Edge-ends incident to each vertex, sorted by (edge, end). A loop shows up twice.
    incident: Vec<Vec<(EdgeIx, End)>>,
    /// All-pairs shortest vertex distances.
    vdist: Vec<Vec<Q>>,
}

impl PartialEq for GraphSpace {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_ids == other.vertex_ids && self.edges == other.edges
    }
}

/// A location on the graph: edge plus coordinate `t` in `[0, 1]`, oriented
/// from the edge's `from` vertex to its `to` vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphPoint {
    pub edge: EdgeIx,
    pub t: Q,
}

impl GraphPoint {
    pub fn new(edge: EdgeIx, t: Q) -> Self {
        GraphPoint { edge, t }
    }
}

/// A closed sub-interval `[lo, hi]` of one edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub edge: EdgeIx,
    pub lo: Q,
    pub hi: Q,
}

impl Arc {
    pub fn new(edge: EdgeIx, lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi);
        Arc { edge, lo, hi }
    }

    pub fn point(p: &GraphPoint) -> Self {
        Arc { edge: p.edge, lo: p.t.clone(), hi: p.t.clone() }
    }

    pub fn whole(edge: EdgeIx) -> Self {
        Arc { edge, lo: rational::zero(), hi: rational::one() }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_t(&self, t: &Q) -> bool {
        &self.lo <= t && t <= &self.hi
    }
}

impl GraphSpace {
    /// Builds and validates a graph: at least one edge, positive lengths,
    /// known endpoints, unique ids, connected.
    pub fn new(vertex_ids: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::Structure("graph needs at least one edge".into()));
        }
        let mut seen = BTreeSet::new();
        for v in &vertex_ids {
            if !seen.insert(v.as_str()) {
                return Err(Error::Structure(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(e.id.as_str()) {
                return Err(Error::Structure(format!("duplicate edge id {:?}", e.id)));
            }
            if e.id.contains(':') || e.id.is_empty() {
                return Err(Error::Structure(format!("edge id {:?} must be non-empty and free of ':'", e.id)));
            }
            if !e.length.is_positive() {
                return Err(Error::Structure(format!("edge {:?} has non-positive length", e.id)));
            }
            if e.from >= vertex_ids.len() || e.to >= vertex_ids.len() {
                return Err(Error::Structure(format!("edge {:?} references an unknown vertex", e.id)));
            }
        }
        let n = vertex_ids.len();
        let mut incident = vec![Vec::new(); n];
        for (ix, e) in edges.iter().enumerate() {
            incident[e.from].push((ix, End::From));
            incident[e.to].push((ix, End::To));
        }
        for list in &mut incident {
            list.sort();
        }
        if let Some(v) = incident.iter().position(|l| l.is_empty()) {
            return Err(Error::Structure(format!("vertex {:?} is isolated", vertex_ids[v])));
        }
        let vdist = floyd_warshall(n, &edges);
        if vdist.iter().flatten().any(Option::is_none) {
            return Err(Error::Structure("graph is not connected".into()));
        }
        let vdist = vdist.into_iter().map(|row| row.into_iter().map(Option::unwrap).collect()).collect();
        Ok(GraphSpace { vertex_ids, edges, incident, vdist })
    }

    /// Convenience constructor from `(id, from, to, length)` tuples using vertex names.
    pub fn from_named(vertices: &[&str], edges: &[(&str, &str, &str, Q)]) -> Result<Self> {
        let vertex_ids: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let lookup = |name: &str| {
            vertex_ids
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Structure(format!("unknown vertex {name:?}")))
        };
        let mut es = Vec::with_capacity(edges.len());
        for (id, from, to, length) in edges {
            es.push(Edge { id: id.to_string(), from: lookup(from)?, to: lookup(to)?, length: length.clone() });
        }
        GraphSpace::new(vertex_ids, es)
    }

    /// `[0, 1]` as a single edge `e0` from `a` to `b`.
    pub fn unit_interval() -> Self {
        GraphSpace::from_named(&["a", "b"], &[("e0", "a", "b", rational::one())]).expect("valid")
    }

    /// A circle of circumference 1 as one loop edge `e0`.
    pub fn unit_circle() -> Self {
        GraphSpace::from_named(&["o"], &[("e0", "o", "o", rational::one())]).expect("valid")
    }

    /// A star with `k` unit edges `e0..` from the center `c` (at `t = 0`) to leaves.
    pub fn star(k: usize) -> Self {
        let mut names = vec!["c".to_string()];
        names.extend((0..k).map(|i| format!("l{i}")));
        let edges = (0..k).map(|i| Edge { id: format!("e{i}"), from: 0, to: i + 1, length: rational::one() }).collect();
        GraphSpace::new(names, edges).expect("valid")
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, ix: EdgeIx) -> &Edge {
        &self.edges[ix]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_index(&self, id: &str) -> Option<EdgeIx> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn vertex_index(&self, id: &str) -> Option<VertexIx> {
        self.vertex_ids.iter().position(|v| v == id)
    }

    pub fn incident(&self, v: VertexIx) -> &[(EdgeIx, End)] {
        &self.incident[v]
    }

    pub fn vertex_distance(&self, a: VertexIx, b: VertexIx) -> &Q {
        &self.vdist[a][b]
    }

    pub fn total_length(&self) -> Q {
        self.edges.iter().map(|e| e.length.clone()).sum()
    }

    pub fn end_vertex(&self, edge: EdgeIx, end: End) -> VertexIx {
        match end {
            End::From => self.edges[edge].from,
            End::To => self.edges[edge].to,
        }
    }

    /// Number of edge-ends at `v`; loops count twice.
    pub fn degree(&self, v: VertexIx) -> Result<usize> {
        self.incident.get(v).map(Vec::len).ok_or_else(|| Error::Structure(format!("unknown vertex index {v}")))
    }

    /// End(G): vertices of degree 1.
    pub fn endpoints(&self) -> Vec<VertexIx> {
        (0..self.vertex_count()).filter(|&v| self.incident[v].len() == 1).collect()
    }

    /// Br(G): vertices of degree at least 3.
    pub fn branch_points(&self) -> Vec<VertexIx> {
        (0..self.vertex_count()).filter(|&v| self.incident[v].len() >= 3).collect()
    }

    /// Canonical point for a vertex: smallest incident edge, matching end coordinate.
    pub fn vertex_point(&self, v: VertexIx) -> GraphPoint {
        let (edge, end) = self.incident[v][0];
        GraphPoint::new(edge, end.coordinate())
    }

    /// The vertex a point sits on, if any.
    pub fn point_vertex(&self, p: &GraphPoint) -> Option<VertexIx> {
        if p.t.is_zero() {
            Some(self.edges[p.edge].from)
        } else if p.t.is_one() {
            Some(self.edges[p.edge].to)
        } else {
            None
        }
    }

    pub fn check_point(&self, p: &GraphPoint) -> Result<()> {
        if p.edge >= self.edges.len() {
            return Err(Error::Structure(format!("unknown edge index {}", p.edge)));
        }
        if p.t.is_negative() || p.t > rational::one() {
            return Err(Error::Structure(format!(
                "coordinate {} outside [0, 1] on edge {}",
                rational::format(&p.t),
                self.edges[p.edge].id
            )));
        }
        Ok(())
    }

    /// Canonical representative: vertex positions are rewritten to the
    /// smallest incident edge, interior points are unchanged.
    pub fn normalize(&self, p: &GraphPoint) -> Result<GraphPoint> {
        self.check_point(p)?;
        Ok(self.normalize_unchecked(p))
    }

    pub(crate) fn normalize_unchecked(&self, p: &GraphPoint) -> GraphPoint {
        match self.point_vertex(p) {
            Some(v) => self.vertex_point(v),
            None => p.clone(),
        }
    }

    /// Every `(edge, t)` describing the same location as `p`.
    pub fn representations(&self, p: &GraphPoint) -> Vec<GraphPoint> {
        match self.point_vertex(p) {
            Some(v) => {
                let mut reps: Vec<GraphPoint> =
                    self.incident[v].iter().map(|&(e, end)| GraphPoint::new(e, end.coordinate())).collect();
                reps.dedup();
                reps
            }
            None => vec![p.clone()],
        }
    }

    pub fn same_point(&self, p: &GraphPoint, q: &GraphPoint) -> bool {
        self.normalize_unchecked(p) == self.normalize_unchecked(q)
    }

    fn end_distances(&self, p: &GraphPoint) -> [(VertexIx, Q); 2] {
        let e = &self.edges[p.edge];
        [(e.from, &p.t * &e.length), (e.to, (rational::one() - &p.t) * &e.length)]
    }

    /// Geodesic distance between two points.
    pub fn distance(&self, p: &GraphPoint, q: &GraphPoint) -> Q {
        let mut best: Option<Q> = None;
        if p.edge == q.edge {
            best = Some((&p.t - &q.t).abs() * &self.edges[p.edge].length);
        }
        let pe = self.end_distances(p);
        let qe = self.end_distances(q);
        for (a, da) in &pe {
            for (b, db) in &qe {
                let d = da + &self.vdist[*a][*b] + db;
                if best.as_ref().is_none_or(|cur| &d < cur) {
                    best = Some(d);
                }
            }
        }
        best.expect("at least one route")
    }

    pub fn distance_to_vertex(&self, p: &GraphPoint, v: VertexIx) -> Q {
        self.end_distances(p).iter().map(|(a, da)| da + &self.vdist[*a][v]).min().expect("two ends")
    }

    /// `{ t : d((edge, t), center) <= radius }` as sorted, merged closed intervals.
    pub fn ball_on_edge(&self, center: &GraphPoint, radius: &Q, edge: EdgeIx) -> Vec<(Q, Q)> {
        let e = &self.edges[edge];
        let mut pieces = Vec::new();
        let reach_from = radius - self.distance_to_vertex(center, e.from);
        if !reach_from.is_negative() {
            pieces.push((rational::zero(), reach_from / &e.length));
        }
        let reach_to = radius - self.distance_to_vertex(center, e.to);
        if !reach_to.is_negative() {
            pieces.push((rational::one() - reach_to / &e.length, rational::one()));
        }
        if center.edge == edge {
            let w = radius / &e.length;
            pieces.push((&center.t - &w, &center.t + &w));
        }
        let mut clipped: Vec<(Q, Q)> = pieces
            .into_iter()
            .map(|(lo, hi)| (rational::max(&lo, &rational::zero()), rational::min(&hi, &rational::one())))
            .filter(|(lo, hi)| lo <= hi)
            .collect();
        clipped.sort();
        merge_intervals(clipped)
    }

    /// Closed ball of radius `r` around `center` as an arc set.
    pub fn ball(&self, center: &GraphPoint, radius: &Q) -> ArcSet {
        let arcs = (0..self.edge_count())
            .flat_map(|e| self.ball_on_edge(center, radius, e).into_iter().map(move |(lo, hi)| Arc::new(e, lo, hi)))
            .collect();
        ArcSet::new(self, arcs)
    }

    /// Hausdorff distance `max(sup_a d(a, B), sup_b d(b, A))`.
    pub fn hausdorff(&self, a: &PointSet, b: &PointSet) -> Result<Q> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::Domain("Hausdorff distance of an empty set".into()));
        }
        let directed = |from: &PointSet, to: &PointSet| -> Q {
            from.iter()
                .map(|x| to.iter().map(|y| self.distance(x, y)).min().expect("non-empty"))
                .max()
                .expect("non-empty")
        };
        let ab = directed(a, b);
        let ba = directed(b, a);
        Ok(rational::max(&ab, &ba))
    }

    pub fn distance_to_set(&self, p: &GraphPoint, set: &PointSet) -> Option<Q> {
        set.iter().map(|y| self.distance(p, y)).min()
    }

    /// Largest distance between a point of `a` and a point of `b`.
    ///
    /// The distance restricted to two edge parameters is a minimum of affine
    /// functions (plus `|s - t|` on a shared edge), so its maximum over the
    /// parameter box sits on an intersection of two of the lines bounding
    /// its linearity domains. All such intersections are evaluated exactly.
    pub fn max_distance(&self, a: &Arc, b: &Arc) -> Q {
        let (e1, e2) = (&self.edges[a.edge], &self.edges[b.edge]);
        let (l1, l2) = (&e1.length, &e2.length);
        // Lines are (cs, ct, c0) meaning cs*s + ct*t + c0 = 0.
        let mut terms: Vec<(Q, Q, Q)> = Vec::new();
        for (cs, c1, v1) in [(l1.clone(), rational::zero(), e1.from), (-l1.clone(), l1.clone(), e1.to)] {
            for (ct, c2, v2) in [(l2.clone(), rational::zero(), e2.from), (-l2.clone(), l2.clone(), e2.to)] {
                terms.push((cs.clone(), ct, &c1 + &c2 + &self.vdist[v1][v2]));
            }
        }
        if a.edge == b.edge {
            terms.push((l1.clone(), -l1.clone(), rational::zero()));
            terms.push((-l1.clone(), l1.clone(), rational::zero()));
        }
        let mut lines: Vec<(Q, Q, Q)> = vec![
            (rational::one(), rational::zero(), -a.lo.clone()),
            (rational::one(), rational::zero(), -a.hi.clone()),
            (rational::zero(), rational::one(), -b.lo.clone()),
            (rational::zero(), rational::one(), -b.hi.clone()),
        ];
        if a.edge == b.edge {
            lines.push((rational::one(), -rational::one(), rational::zero()));
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                let l = (&terms[i].0 - &terms[j].0, &terms[i].1 - &terms[j].1, &terms[i].2 - &terms[j].2);
                if !(l.0.is_zero() && l.1.is_zero()) {
                    lines.push(l);
                }
            }
        }
        let mut best = rational::zero();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (a1, b1, c1) = &lines[i];
                let (a2, b2, c2) = &lines[j];
                let det = a1 * b2 - a2 * b1;
                if det.is_zero() {
                    continue;
                }
                let s = (b1 * c2 - b2 * c1) / &det;
                let t = (a2 * c1 - a1 * c2) / &det;
                if !a.contains_t(&s) || !b.contains_t(&t) {
                    continue;
                }
                let d = self.distance(&GraphPoint::new(a.edge, s), &GraphPoint::new(b.edge, t));
                if d > best {
                    best = d;
                }
            }
        }
        best
    }
}

#[allow(clippy::needless_range_loop)]
fn floyd_warshall(n: usize, edges: &[Edge]) -> Vec<Vec<Option<Q>>> {
    let mut d: Vec<Vec<Option<Q>>> = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(rational::zero());
    }
    for e in edges {
        for (a, b) in [(e.from, e.to), (e.to, e.from)] {
            if d[a][b].as_ref().is_none_or(|cur| &e.length < cur) {
                d[a][b] = Some(e.length.clone());
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = d[i][k].clone() else { continue };
            for j in 0..n {
                let Some(dkj) = &d[k][j] else { continue };
                let via = &dik + dkj;
                if d[i][j].as_ref().is_none_or(|cur| &via < cur) {
                    d[i][j] = Some(via);
                }
            }
        }
    }
    d
}

fn merge_intervals(sorted: Vec<(Q, Q)>) -> Vec<(Q, Q)> {
    let mut out: Vec<(Q, Q)> = Vec::with_capacity(sorted.len());
    for (lo, hi) in sorted {
        if let Some(last) = out.last_mut() {
            if lo <= last.1 {
                if hi > last.1 {
                    last.1 = hi;
                }
                continue;
            }
        }
        out.push((lo, hi));
    }
    out
}

/// A finite, normalized, sorted, duplicate-free set of points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PointSet {
    points: Vec<GraphPoint>,
}

impl PointSet {
    pub fn new(graph: &GraphSpace, points: impl IntoIterator<Item = GraphPoint>) -> Result<Self> {
        let mut out = Vec::new();
        for p in points {
            out.push(graph.normalize(&p)?);
        }
        out.sort();
        out.dedup();
        Ok(PointSet { points: out })
    }

    pub fn empty() -> Self {
        PointSet::default()
    }

    pub fn singleton(graph: &GraphSpace, p: &GraphPoint) -> Result<Self> {
        PointSet::new(graph, [p.clone()])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GraphPoint> {
        self.points.iter()
    }

    pub fn points(&self) -> &[GraphPoint] {
        &self.points
    }

    /// Membership of an already normalized point.
    pub fn contains(&self, p: &GraphPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        points.sort();
        points.dedup();
        PointSet { points }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a GraphPoint;
    type IntoIter = std::slice::Iter<'a, GraphPoint>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// A finite union of single-edge arcs in canonical form: non-degenerate arcs
/// merged per edge and sorted, followed by isolated points (degenerate arcs
/// in canonical vertex form) not covered by any non-degenerate arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ArcSet {
    arcs: Vec<Arc>,
}

impl ArcSet {
    pub fn new(graph: &GraphSpace, arcs: Vec<Arc>) -> Self {
        let (mut long, short): (Vec<Arc>, Vec<Arc>) = arcs.into_iter().partition(|a| !a.is_degenerate());
        long.sort();
        let mut merged: Vec<Arc> = Vec::with_capacity(long.len());
        for a in long {
            if let Some(last) = merged.last_mut() {
                if last.edge == a.edge && a.lo <= last.hi {
                    if a.hi > last.hi {
                        last.hi = a.hi;
                    }
                    continue;
                }
            }
            merged.push(a);
        }
        let covered = ArcSet { arcs: merged.clone() };
        let mut points: Vec<GraphPoint> = short
            .into_iter()
            .map(|a| graph.normalize_unchecked(&GraphPoint::new(a.edge, a.lo)))
            .filter(|p| !covered.contains_point(graph, p))
            .collect();
        points.sort();
        points.dedup();
        merged.extend(points.iter().map(Arc::point));
        ArcSet { arcs: merged }
    }

    pub fn whole(graph: &GraphSpace) -> Self {
        ArcSet::new(graph, (0..graph.edge_count()).map(Arc::whole).collect())
    }

    pub fn empty() -> Self {
        ArcSet::default()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn contains_point(&self, graph: &GraphSpace, p: &GraphPoint) -> bool {
        graph.representations(p).iter().any(|r| self.arcs.iter().any(|a| a.edge == r.edge && a.contains_t(&r.t)))
    }

    pub fn contains_arc(&self, graph: &GraphSpace, arc: &Arc) -> bool {
        if arc.is_degenerate() {
            return self.contains_point(graph, &GraphPoint::new(arc.edge, arc.lo.clone()));
        }
        self.arcs.iter().any(|a| a.edge == arc.edge && a.lo <= arc.lo && arc.hi <= a.hi)
    }

    /// `self ⊇ other`.
    pub fn contains_set(&self, graph: &GraphSpace, other: &ArcSet) -> bool {
        other.arcs.iter().all(|a| self.contains_arc(graph, a))
    }

    pub fn union(&self, graph: &GraphSpace, other: &ArcSet) -> ArcSet {
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().cloned());
        ArcSet::new(graph, arcs)
    }

    /// Whether `p` lies in the topological interior (relative to the graph).
    pub fn interior_contains(&self, graph: &GraphSpace, p: &GraphPoint) -> bool {
        match graph.point_vertex(p) {
            None => self.arcs.iter().any(|a| a.edge == p.edge && a.lo < p.t && p.t < a.hi),
            Some(v) => graph.incident(v).iter().all(|&(e, end)| {
                self.arcs.iter().any(|a| {
                    a.edge == e
                        && !a.is_degenerate()
                        && match end {
                            End::From => a.lo.is_zero(),
                            End::To => a.hi.is_one(),
                        }
                })
            }),
        }
    }

    /// Connected components, each a canonical arc set, in order of their first arc.
    pub fn components(&self, graph: &GraphSpace) -> Vec<ArcSet> {
        let n = self.arcs.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        let touches = |a: &Arc| -> Vec<VertexIx> {
            let mut vs = Vec::new();
            if a.lo.is_zero() {
                vs.push(graph.edge(a.edge).from);
            }
            if a.hi.is_one() {
                vs.push(graph.edge(a.edge).to);
            }
            vs
        };
        let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); graph.vertex_count()];
        for (i, a) in self.arcs.iter().enumerate() {
            for v in touches(a) {
                at_vertex[v].push(i);
            }
        }
        for list in &at_vertex {
            for w in list.windows(2) {
                let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut groups: Vec<(usize, Vec<Arc>)> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            match groups.iter_mut().find(|(root, _)| *root == r) {
                Some((_, g)) => g.push(self.arcs[i].clone()),
                None => groups.push((r, vec![self.arcs[i].clone()])),
            }
        }
        groups.into_iter().map(|(_, g)| ArcSet { arcs: g }).collect()
    }

    pub fn component_containing(&self, graph: &GraphSpace, p: &GraphPoint) -> Option<ArcSet> {
        self.components(graph).into_iter().find(|c| c.contains_point(graph, p))
    }

    /// Exact diameter in the ambient geodesic metric.
    pub fn diameter(&self, graph: &GraphSpace) -> Q {
        let mut best = rational::zero();
        for (i, a) in self.arcs.iter().enumerate() {
            for b in &self.arcs[i..] {
                let d = graph.max_distance(a, b);
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    /// Total length of the non-degenerate arcs.
    pub fn measure(&self, graph: &GraphSpace) -> Q {
        self.arcs.iter().map(|a| (&a.hi - &a.lo) * &graph.edge(a.edge).length).sum()
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}[{}, {}]", self.edge, rational::format(&self.lo), rational::format(&self.hi))
    }
}

/// Orders points by `(edge, t)`; used for deterministic tie-breaking.
pub fn point_order(a: &GraphPoint, b: &GraphPoint) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn pt(e: usize, n: i64, d: i64) -> GraphPoint {
        GraphPoint::new(e, q(n, d))
    }

    #[test]
    fn normalize_examples() {
        let i = GraphSpace::unit_interval();
        assert_eq!(i.normalize(&pt(0, 0, 1)).unwrap(), pt(0, 0, 1));
        assert_eq!(i.normalize(&pt(0, 1, 3)).unwrap(), pt(0, 1, 3));
        let s = GraphSpace::star(3);
        assert_eq!(s.normalize(&pt(2, 0, 1)).unwrap(), pt(0, 0, 1));
        assert_eq!(s.normalize(&pt(2, 1, 1)).unwrap(), pt(2, 1, 1));
    }

    #[test]
    fn normalize_rejects_unknown_edge_and_range() {
        let i = GraphSpace::unit_interval();
        assert!(matches!(i.normalize(&pt(3, 1, 2)), Err(Error::Structure(_))));
        assert!(i.normalize(&pt(0, 3, 2)).is_err());
        assert!(i.normalize(&pt(0, -1, 2)).is_err());
    }

    #[test]
    fn loop_vertex_normalizes_to_zero() {
        let c = GraphSpace::unit_circle();
        assert_eq!(c.normalize(&pt(0, 1, 1)).unwrap(), pt(0, 0, 1));
    }

    #[test]
    fn distance_examples() {
        let i = GraphSpace::unit_interval();
        assert_eq!(i.distance(&pt(0, 1, 4), &pt(0, 3, 4)), q(1, 2));
        let c = GraphSpace::unit_circle();
        assert_eq!(c.distance(&pt(0, 0, 1), &pt(0, 3, 4)), q(1, 4));
        let s = GraphSpace::star(3);
        assert_eq!(s.distance(&pt(0, 1, 1), &pt(1, 1, 1)), qi(2));
    }

    #[test]
    fn hausdorff_examples() {
        let i = GraphSpace::unit_interval();
        let set = |xs: &[(i64, i64)]| PointSet::new(&i, xs.iter().map(|&(n, d)| pt(0, n, d))).unwrap();
        assert_eq!(i.hausdorff(&set(&[(0, 1)]), &set(&[(1, 1)])).unwrap(), qi(1));
        let a = set(&[(1, 3), (1, 2)]);
        assert_eq!(i.hausdorff(&a, &a).unwrap(), rational::zero());
        assert_eq!(i.hausdorff(&set(&[(0, 1), (1, 1)]), &set(&[(1, 2)])).unwrap(), q(1, 2));
        assert!(matches!(i.hausdorff(&PointSet::empty(), &a), Err(Error::Domain(_))));
    }

    #[test]
    fn degree_examples() {
        let i = GraphSpace::unit_interval();
        assert_eq!(i.degree(0).unwrap(), 1);
        let s = GraphSpace::star(3);
        assert_eq!(s.degree(0).unwrap(), 3);
        let c = GraphSpace::unit_circle();
        assert_eq!(c.degree(0).unwrap(), 2);
        assert!(c.degree(5).is_err());
    }

    #[test]
    fn endpoints_and_branch_points() {
        let s = GraphSpace::star(3);
        assert_eq!(s.endpoints(), vec![1, 2, 3]);
        assert_eq!(s.branch_points(), vec![0]);
        let c = GraphSpace::unit_circle();
        assert!(c.endpoints().is_empty() && c.branch_points().is_empty());
        // figure-eight: one vertex with two loops has degree 4
        let eight = GraphSpace::from_named(&["o"], &[("a", "o", "o", qi(1)), ("b", "o", "o", qi(2))]).unwrap();
        assert_eq!(eight.branch_points(), vec![0]);
        assert_eq!(eight.degree(0).unwrap(), 4);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(GraphSpace::from_named(&["a"], &[]).is_err());
        assert!(GraphSpace::from_named(&["a", "b"], &[("e", "a", "b", qi(0))]).is_err());
        assert!(
            GraphSpace::from_named(&["a", "b", "c", "d"], &[("e", "a", "b", qi(1)), ("f", "c", "d", qi(1))]).is_err()
        );
        assert!(GraphSpace::from_named(&["a", "b", "c"], &[("e", "a", "b", qi(1))]).is_err());
    }

    #[test]
    fn parallel_edges_use_shorter_route() {
        let g = GraphSpace::from_named(&["a", "b"], &[("long", "a", "b", qi(3)), ("short", "a", "b", qi(1))]).unwrap();
        // midpoint of long edge: 3/2 to either end; far side via short edge
        assert_eq!(g.distance(&pt(0, 1, 2), &pt(1, 1, 2)), q(3, 2) + q(1, 2));
        assert_eq!(g.distance(&pt(0, 0, 1), &pt(0, 1, 1)), qi(1));
    }

    #[test]
    fn ball_on_circle_wraps() {
        let c = GraphSpace::unit_circle();
        let b = c.ball(&pt(0, 1, 10), &q(1, 5));
        assert_eq!(b.arcs(), &[Arc::new(0, qi(0), q(3, 10)), Arc::new(0, q(9, 10), qi(1))]);
        assert_eq!(b.components(&c).len(), 1);
    }

    #[test]
    fn arcset_normalization_merges_and_drops_covered_points() {
        let s = GraphSpace::star(3);
        let set = ArcSet::new(
            &s,
            vec![
                Arc::new(1, q(1, 2), qi(1)),
                Arc::new(1, q(1, 4), q(1, 2)),
                Arc::new(2, qi(0), qi(0)),
                Arc::new(0, qi(0), q(1, 3)),
                Arc::new(2, q(1, 2), q(1, 2)),
            ],
        );
        assert_eq!(
            set.arcs(),
            &[Arc::new(0, qi(0), q(1, 3)), Arc::new(1, q(1, 4), qi(1)), Arc::new(2, q(1, 2), q(1, 2))]
        );
    }

    #[test]
    fn interior_at_vertices() {
        let i = GraphSpace::unit_interval();
        let a = ArcSet::new(&i, vec![Arc::new(0, qi(0), q(1, 8))]);
        assert!(a.interior_contains(&i, &pt(0, 0, 1)));
        assert!(!a.interior_contains(&i, &pt(0, 1, 8)));
        let s = GraphSpace::star(3);
        let two = ArcSet::new(&s, vec![Arc::new(0, qi(0), q(1, 8)), Arc::new(1, qi(0), q(1, 8))]);
        assert!(!two.interior_contains(&s, &pt(0, 0, 1)));
        let three = two.union(&s, &ArcSet::new(&s, vec![Arc::new(2, qi(0), q(1, 9))]));
        assert!(three.interior_contains(&s, &pt(2, 0, 1)));
    }

    #[test]
    fn diameters() {
        let i = GraphSpace::unit_interval();
        assert_eq!(ArcSet::new(&i, vec![Arc::new(0, q(1, 4), q(3, 4))]).diameter(&i), q(1, 2));
        let c = GraphSpace::unit_circle();
        assert_eq!(ArcSet::whole(&c).diameter(&c), q(1, 2));
        assert_eq!(ArcSet::new(&c, vec![Arc::new(0, qi(0), q(1, 3))]).diameter(&c), q(1, 3));
        let s = GraphSpace::star(3);
        assert_eq!(ArcSet::whole(&s).diameter(&s), qi(2));
        let two = ArcSet::new(&s, vec![Arc::new(0, q(1, 2), qi(1)), Arc::new(2, q(1, 4), q(1, 4))]);
        assert_eq!(two.diameter(&s), q(5, 4));
    }

    #[test]
    fn components_split_at_gaps() {
        let i = GraphSpace::unit_interval();
        let set = ArcSet::new(&i, vec![Arc::new(0, qi(0), q(1, 4)), Arc::new(0, q(1, 2), qi(1))]);
        let comps = set.components(&i);
        assert_eq!(comps.len(), 2);
        assert_eq!(set.component_containing(&i, &pt(0, 3, 4)).unwrap().arcs(), &[Arc::new(0, q(1, 2), qi(1))]);
    }
}
