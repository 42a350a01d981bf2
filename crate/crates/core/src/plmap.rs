//! Continuous edge-piecewise-linear self-maps of a [`GraphSpace`].
//!
//! Every piece maps a sub-interval `[lo, hi]` of one edge affinely
//! (`t ↦ a·t + b`) into a single target edge. Maps whose pieces cross
//! vertices are described with [`PlMapBuilder::piece_along`], which
//! subdivides the source interval at every vertex crossing.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::topograph::{Arc, ArcSet, Edge, EdgeIx, GraphPoint, GraphSpace, PointSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub lo: Q,
    pub hi: Q,
    pub target: EdgeIx,
    pub a: Q,
    pub b: Q,
}

impl Piece {
    pub fn value(&self, t: &Q) -> Q {
        &self.a * t + &self.b
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_zero()
    }

    /// Image interval on the target edge, ordered.
    pub fn image(&self, lo: &Q, hi: &Q) -> (Q, Q) {
        let (x, y) = (self.value(lo), self.value(hi));
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlMap {
    graph: GraphSpace,
    pieces: Vec<Vec<Piece>>,
    name: String,
    notes: String,
}

/// Exact preimages of a point: isolated points plus whole arcs coming from
/// constant pieces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Preimages {
    pub points: PointSet,
    pub arcs: Vec<Arc>,
}

/// `f^k` restricted to a source interval on which it is affine into one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineBranch {
    pub source: Arc,
    pub target: EdgeIx,
    pub a: Q,
    pub b: Q,
}

impl AffineBranch {
    pub fn identity(source: Arc) -> Self {
        let target = source.edge;
        AffineBranch { source, target, a: rational::one(), b: rational::zero() }
    }

    pub fn value(&self, t: &Q) -> Q {
        &self.a * t + &self.b
    }

    pub fn image(&self) -> Arc {
        let (x, y) = (self.value(&self.source.lo), self.value(&self.source.hi));
        if x <= y {
            Arc::new(self.target, x, y)
        } else {
            Arc::new(self.target, y, x)
        }
    }

    /// Source parameters whose image lies in `[lo, hi]` (on the target edge).
    pub fn pull_back(&self, lo: &Q, hi: &Q) -> Option<Arc> {
        if self.a.is_zero() {
            let v = &self.b;
            return (lo <= v && v <= hi).then(|| self.source.clone());
        }
        let (mut s0, mut s1) = ((lo - &self.b) / &self.a, (hi - &self.b) / &self.a);
        if s0 > s1 {
            std::mem::swap(&mut s0, &mut s1);
        }
        let s0 = rational::max(&s0, &self.source.lo);
        let s1 = rational::min(&s1, &self.source.hi);
        (s0 <= s1).then(|| Arc::new(self.source.edge, s0, s1))
    }

    pub fn restrict(&self, source: Arc) -> AffineBranch {
        AffineBranch { source, target: self.target, a: self.a.clone(), b: self.b.clone() }
    }
}

impl PlMap {
    /// Validates totality, image containment and continuity.
    pub fn new(graph: GraphSpace, pieces: Vec<Vec<Piece>>, name: impl Into<String>) -> Result<Self> {
        let map = PlMap { graph, pieces, name: name.into(), notes: String::new() };
        map.validate()?;
        Ok(map)
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    fn describe_piece(&self, edge: EdgeIx, k: usize) -> String {
        let p = &self.pieces[edge][k];
        format!(
            "piece #{k} on edge {} [{}, {}]",
            self.graph.edge(edge).id,
            rational::format(&p.lo),
            rational::format(&p.hi)
        )
    }

    fn validate(&self) -> Result<()> {
        let g = &self.graph;
        if self.pieces.len() != g.edge_count() {
            return Err(Error::Structure(format!(
                "map has pieces for {} edges, graph has {}",
                self.pieces.len(),
                g.edge_count()
            )));
        }
        for (e, list) in self.pieces.iter().enumerate() {
            let edge_id = &g.edge(e).id;
            let Some(first) = list.first() else {
                return Err(Error::Structure(format!("edge {edge_id} has no pieces")));
            };
            if !first.lo.is_zero() {
                return Err(Error::Structure(format!("{}: first piece must start at 0/1", self.describe_piece(e, 0))));
            }
            if !list.last().expect("non-empty").hi.is_one() {
                return Err(Error::Structure(format!(
                    "{}: last piece must end at 1/1",
                    self.describe_piece(e, list.len() - 1)
                )));
            }
            for (k, p) in list.iter().enumerate() {
                if p.lo >= p.hi {
                    return Err(Error::Structure(format!("{}: empty or reversed interval", self.describe_piece(e, k))));
                }
                if p.target >= g.edge_count() {
                    return Err(Error::Structure(format!("{}: unknown target edge", self.describe_piece(e, k))));
                }
                let (m, mx) = p.image(&p.lo, &p.hi);
                if m.is_negative() || mx > rational::one() {
                    return Err(Error::Structure(format!(
                        "{}: image [{}, {}] leaves target edge {}",
                        self.describe_piece(e, k),
                        rational::format(&m),
                        rational::format(&mx),
                        g.edge(p.target).id
                    )));
                }
                if k + 1 < list.len() {
                    let next = &list[k + 1];
                    if next.lo != p.hi {
                        return Err(Error::Structure(format!(
                            "{}: gap or overlap with the next piece",
                            self.describe_piece(e, k)
                        )));
                    }
                    let left = GraphPoint::new(p.target, p.value(&p.hi));
                    let right = GraphPoint::new(next.target, next.value(&next.lo));
                    if !g.same_point(&left, &right) {
                        return Err(Error::Structure(format!(
                            "{}: discontinuous at t = {}",
                            self.describe_piece(e, k + 1),
                            rational::format(&next.lo)
                        )));
                    }
                }
            }
        }
        for v in 0..g.vertex_count() {
            let mut value: Option<(GraphPoint, String)> = None;
            for &(e, end) in g.incident(v) {
                let (k, t) = match end {
                    crate::topograph::End::From => (0, rational::zero()),
                    crate::topograph::End::To => (self.pieces[e].len() - 1, rational::one()),
                };
                let p = &self.pieces[e][k];
                let img = g.normalize_unchecked(&GraphPoint::new(p.target, p.value(&t)));
                match &value {
                    None => value = Some((img, self.describe_piece(e, k))),
                    Some((prev, who)) if *prev != img => {
                        return Err(Error::Structure(format!(
                            "{}: discontinuous at vertex {} (disagrees with {who})",
                            self.describe_piece(e, k),
                            g.vertex_ids()[v]
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &GraphSpace {
        &self.graph
    }

    pub fn pieces(&self, edge: EdgeIx) -> &[Piece] {
        &self.pieces[edge]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn notes(&self) -> &str {
        &self.notes
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.iter().map(Vec::len).sum()
    }

    fn piece_index(&self, edge: EdgeIx, t: &Q) -> usize {
        let list = &self.pieces[edge];
        list.partition_point(|p| &p.hi < t).min(list.len() - 1)
    }

    pub fn piece_at(&self, p: &GraphPoint) -> &Piece {
        &self.pieces[p.edge][self.piece_index(p.edge, &p.t)]
    }

    /// Exact image `f(p)`, normalized.
    pub fn evaluate(&self, p: &GraphPoint) -> Result<GraphPoint> {
        self.graph.check_point(p)?;
        Ok(self.eval(p))
    }

    pub(crate) fn eval(&self, p: &GraphPoint) -> GraphPoint {
        let piece = self.piece_at(p);
        self.graph.normalize_unchecked(&GraphPoint::new(piece.target, piece.value(&p.t)))
    }

    /// `[p, f(p), …, f^n(p)]`.
    pub fn iterate(&self, p: &GraphPoint, n: usize) -> Result<Vec<GraphPoint>> {
        let mut cur = self.graph.normalize(p)?;
        let mut out = Vec::with_capacity(n + 1);
        out.push(cur.clone());
        for _ in 0..n {
            cur = self.eval(&cur);
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn iterate_n(&self, p: &GraphPoint, n: usize) -> GraphPoint {
        let mut cur = self.graph.normalize_unchecked(p);
        for _ in 0..n {
            cur = self.eval(&cur);
        }
        cur
    }

    /// The exact set `{ p : f(p) = q }`; constant pieces hitting `q` are
    /// reported as arcs instead of points.
    pub fn preimages(&self, q: &GraphPoint) -> Result<Preimages> {
        self.graph.check_point(q)?;
        let mut points = Vec::new();
        let mut arcs = Vec::new();
        for rep in self.graph.representations(q) {
            for (e, list) in self.pieces.iter().enumerate() {
                for p in list.iter().filter(|p| p.target == rep.edge) {
                    if p.is_constant() {
                        if p.b == rep.t {
                            arcs.push(Arc::new(e, p.lo.clone(), p.hi.clone()));
                        }
                        continue;
                    }
                    let t = (&rep.t - &p.b) / &p.a;
                    if p.lo <= t && t <= p.hi {
                        points.push(GraphPoint::new(e, t));
                    }
                }
            }
        }
        let arc_set = ArcSet::new(&self.graph, arcs.clone());
        points.retain(|p| !arc_set.contains_point(&self.graph, p));
        arcs.sort();
        arcs.dedup();
        Ok(Preimages { points: PointSet::new(&self.graph, points)?, arcs })
    }

    /// Image of a finite union of arcs, as a canonical arc set.
    pub fn image_of_arcs(&self, arcs: &[Arc]) -> Result<ArcSet> {
        let mut out = Vec::new();
        for arc in arcs {
            self.graph.check_point(&GraphPoint::new(arc.edge, arc.lo.clone()))?;
            self.graph.check_point(&GraphPoint::new(arc.edge, arc.hi.clone()))?;
            if arc.lo > arc.hi {
                return Err(Error::Domain(format!("reversed arc {arc}")));
            }
            if arc.is_degenerate() {
                let img = self.eval(&GraphPoint::new(arc.edge, arc.lo.clone()));
                out.push(Arc::point(&img));
                continue;
            }
            for p in &self.pieces[arc.edge] {
                let lo = rational::max(&p.lo, &arc.lo);
                let hi = rational::min(&p.hi, &arc.hi);
                if lo < hi {
                    let (m, mx) = p.image(&lo, &hi);
                    out.push(Arc::new(p.target, m, mx));
                }
            }
        }
        Ok(ArcSet::new(&self.graph, out))
    }

    pub fn image_of_set(&self, set: &ArcSet) -> ArcSet {
        self.image_of_arcs(set.arcs()).expect("canonical arc sets are valid")
    }

    /// `f^n(set)`.
    pub fn image_iterate(&self, set: &ArcSet, n: usize) -> ArcSet {
        let mut cur = set.clone();
        for _ in 0..n {
            cur = self.image_of_set(&cur);
        }
        cur
    }

    /// Splits `branch` at the pieces of `f` on its image and composes, giving
    /// the branches of one more iterate. Branches with constant maps follow
    /// the single piece containing their image point.
    pub fn refine_branch(&self, branch: &AffineBranch) -> Vec<AffineBranch> {
        let img = branch.image();
        let compose = |src: Arc, p: &Piece| AffineBranch {
            source: src,
            target: p.target,
            a: &p.a * &branch.a,
            b: &p.a * &branch.b + &p.b,
        };
        if img.is_degenerate() {
            let k = self.piece_index(img.edge, &img.lo);
            return vec![compose(branch.source.clone(), &self.pieces[img.edge][k])];
        }
        let mut out = Vec::new();
        for p in &self.pieces[img.edge] {
            let lo = rational::max(&p.lo, &img.lo);
            let hi = rational::min(&p.hi, &img.hi);
            if lo >= hi {
                continue;
            }
            if let Some(src) = branch.pull_back(&lo, &hi) {
                if !src.is_degenerate() {
                    out.push(compose(src, p));
                }
            }
        }
        out.sort_by(|x, y| x.source.cmp(&y.source));
        out
    }

    /// The affine branches of `f` itself.
    pub fn branches(&self) -> Vec<AffineBranch> {
        self.pieces
            .iter()
            .enumerate()
            .flat_map(|(e, list)| {
                list.iter().map(move |p| AffineBranch {
                    source: Arc::new(e, p.lo.clone(), p.hi.clone()),
                    target: p.target,
                    a: p.a.clone(),
                    b: p.b.clone(),
                })
            })
            .collect()
    }

    /// Every breakpoint (including edge ends) as a normalized point set.
    pub fn breakpoints(&self) -> PointSet {
        let pts = self.pieces.iter().enumerate().flat_map(|(e, list)| {
            list.iter().flat_map(move |p| [GraphPoint::new(e, p.lo.clone()), GraphPoint::new(e, p.hi.clone())])
        });
        PointSet::new(&self.graph, pts).expect("breakpoints are valid points")
    }

    pub fn is_surjective(&self) -> bool {
        self.image_of_set(&ArcSet::whole(&self.graph)) == ArcSet::whole(&self.graph)
    }

    pub fn has_constant_pieces(&self) -> bool {
        self.pieces.iter().flatten().any(Piece::is_constant)
    }

    pub fn to_spec(&self) -> MapSpec {
        let g = &self.graph;
        MapSpec {
            name: self.name.clone(),
            notes: self.notes.clone(),
            graph: GraphSpec {
                vertices: g.vertex_ids().to_vec(),
                edges: g
                    .edges()
                    .iter()
                    .map(|e| EdgeSpec {
                        id: e.id.clone(),
                        from: g.vertex_ids()[e.from].clone(),
                        to: g.vertex_ids()[e.to].clone(),
                        length: rational::format(&e.length),
                    })
                    .collect(),
            },
            map: PiecesSpec {
                pieces: self
                    .pieces
                    .iter()
                    .enumerate()
                    .flat_map(|(e, list)| {
                        list.iter().map(move |p| PieceSpec {
                            edge: g.edge(e).id.clone(),
                            t_lo: rational::format(&p.lo),
                            t_hi: rational::format(&p.hi),
                            target_edge: g.edge(p.target).id.clone(),
                            a: rational::format(&p.a),
                            b: rational::format(&p.b),
                        })
                    })
                    .collect(),
            },
        }
    }

    pub fn from_spec(spec: &MapSpec) -> Result<Self> {
        let vertex_ids = spec.graph.vertices.clone();
        let vix = |name: &str, edge: &str| {
            vertex_ids
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Structure(format!("edge {edge}: unknown vertex {name:?}")))
        };
        let mut edges = Vec::new();
        for e in &spec.graph.edges {
            edges.push(Edge {
                id: e.id.clone(),
                from: vix(&e.from, &e.id)?,
                to: vix(&e.to, &e.id)?,
                length: rational::parse(&e.length)
                    .map_err(|err| Error::Parse(format!("edge {}: length: {err}", e.id)))?,
            });
        }
        let graph = GraphSpace::new(vertex_ids, edges)?;
        let mut pieces: Vec<Vec<Piece>> = vec![Vec::new(); graph.edge_count()];
        for (k, p) in spec.map.pieces.iter().enumerate() {
            let ctx = |what: &str, err: Error| Error::Parse(format!("piece #{k} (edge {}): {what}: {err}", p.edge));
            let edge = graph
                .edge_index(&p.edge)
                .ok_or_else(|| Error::Structure(format!("piece #{k}: unknown edge {:?}", p.edge)))?;
            let target = graph
                .edge_index(&p.target_edge)
                .ok_or_else(|| Error::Structure(format!("piece #{k}: unknown target edge {:?}", p.target_edge)))?;
            pieces[edge].push(Piece {
                lo: rational::parse(&p.t_lo).map_err(|e| ctx("t_lo", e))?,
                hi: rational::parse(&p.t_hi).map_err(|e| ctx("t_hi", e))?,
                target,
                a: rational::parse(&p.a).map_err(|e| ctx("a", e))?,
                b: rational::parse(&p.b).map_err(|e| ctx("b", e))?,
            });
        }
        for list in &mut pieces {
            list.sort_by(|x, y| x.lo.cmp(&y.lo));
        }
        Ok(PlMap::new(graph, pieces, spec.name.clone())?.with_notes(spec.notes.clone()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: MapSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("map spec: {e}")))?;
        PlMap::from_spec(&spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("spec serializes")
    }

    /// Parses `edge:p/q` against this map's graph.
    pub fn parse_point(&self, text: &str) -> Result<GraphPoint> {
        parse_point(&self.graph, text)
    }

    pub fn format_point(&self, p: &GraphPoint) -> String {
        format_point(&self.graph, p)
    }
}

pub fn parse_point(graph: &GraphSpace, text: &str) -> Result<GraphPoint> {
    let (edge, t) =
        text.split_once(':').ok_or_else(|| Error::Parse(format!("point {text:?} must look like edge:p/q")))?;
    let edge =
        graph.edge_index(edge.trim()).ok_or_else(|| Error::Parse(format!("point {text:?}: unknown edge {edge:?}")))?;
    let p = GraphPoint::new(edge, rational::parse(t)?);
    graph.normalize(&p).map_err(|e| Error::Parse(format!("point {text:?}: {e}")))
}

pub fn format_point(graph: &GraphSpace, p: &GraphPoint) -> String {
    format!("{}:{}", graph.edge(p.edge).id, rational::format(&p.t))
}

/// Serializable description of a map: graph plus pieces plus metadata.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
    pub graph: GraphSpec,
    pub map: PiecesSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    pub length: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecesSpec {
    pub pieces: Vec<PieceSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceSpec {
    pub edge: String,
    pub t_lo: String,
    pub t_hi: String,
    pub target_edge: String,
    pub a: String,
    pub b: String,
}

/// Assembles maps piece by piece, subdividing pieces whose image runs
/// across several edges.
#[derive(Debug)]
pub struct PlMapBuilder {
    graph: GraphSpace,
    pieces: Vec<Vec<Piece>>,
}

impl PlMapBuilder {
    pub fn new(graph: GraphSpace) -> Self {
        let n = graph.edge_count();
        PlMapBuilder { graph, pieces: vec![Vec::new(); n] }
    }

    pub fn graph(&self) -> &GraphSpace {
        &self.graph
    }

    /// Affine piece `t ↦ a·t + b` from `[lo, hi]` of `edge` into `target`.
    pub fn affine(mut self, edge: EdgeIx, lo: Q, hi: Q, target: EdgeIx, a: Q, b: Q) -> Self {
        self.pieces[edge].push(Piece { lo, hi, target, a, b });
        self
    }

    /// Maps `[lo, hi]` of `edge` linearly (by arc length) along a walk given
    /// as consecutive `(edge, t_start, t_end)` legs, splitting the source
    /// interval at every leg boundary.
    pub fn piece_along(mut self, edge: EdgeIx, lo: Q, hi: Q, walk: &[(EdgeIx, Q, Q)]) -> Self {
        let lens: Vec<Q> = walk.iter().map(|(e, s, t)| (t - s).abs() * &self.graph.edge(*e).length).collect();
        let total: Q = lens.iter().cloned().sum();
        let width = &hi - &lo;
        let mut start = lo.clone();
        for (k, ((target, s, t), len)) in walk.iter().zip(&lens).enumerate() {
            let end = if k + 1 == walk.len() { hi.clone() } else { &start + &width * len / &total };
            // t(start) = s, t(end) = t
            let a = (t - s) / (&end - &start);
            let b = s - &a * &start;
            self.pieces[edge].push(Piece { lo: start.clone(), hi: end.clone(), target: *target, a, b });
            start = end;
        }
        self
    }

    pub fn build(mut self, name: &str) -> Result<PlMap> {
        for list in &mut self.pieces {
            list.sort_by(|x, y| x.lo.cmp(&y.lo));
        }
        PlMap::new(self.graph, self.pieces, name)
    }
}

/// Interval map on `[0, 1]` through the points `(xs[i], ys[i])`.
pub fn interval_map(xs: &[Q], ys: &[Q], name: &str) -> Result<PlMap> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Structure("interval map needs matching breakpoint/value lists".into()));
    }
    let mut b = PlMapBuilder::new(GraphSpace::unit_interval());
    for i in 0..xs.len() - 1 {
        let a = (&ys[i + 1] - &ys[i]) / (&xs[i + 1] - &xs[i]);
        let off = &ys[i] - &a * &xs[i];
        b = b.affine(0, xs[i].clone(), xs[i + 1].clone(), 0, a, off);
    }
    b.build(name)
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
    fn tent_evaluate() {
        let t = builtins::tent();
        assert_eq!(t.evaluate(&pt(1, 3)).unwrap(), pt(2, 3));
        assert_eq!(t.evaluate(&pt(1, 2)).unwrap(), pt(1, 1));
        assert_eq!(t.evaluate(&pt(2, 3)).unwrap(), pt(2, 3));
    }

    #[test]
    fn tent_preimages() {
        let t = builtins::tent();
        assert_eq!(t.preimages(&pt(1, 2)).unwrap().points, set(&t, &[(1, 4), (3, 4)]));
        assert_eq!(t.preimages(&pt(0, 1)).unwrap().points, set(&t, &[(0, 1), (1, 1)]));
        assert_eq!(t.preimages(&pt(2, 3)).unwrap().points, set(&t, &[(1, 3), (2, 3)]));
        assert_eq!(t.preimages(&pt(1, 1)).unwrap().points, set(&t, &[(1, 2)]));
    }

    #[test]
    fn tent_iterate() {
        let t = builtins::tent();
        assert_eq!(t.iterate(&pt(2, 5), 2).unwrap(), vec![pt(2, 5), pt(4, 5), pt(2, 5)]);
        assert_eq!(t.iterate(&pt(2, 3), 3).unwrap(), vec![pt(2, 3); 4]);
        assert_eq!(t.iterate(&pt(0, 1), 1).unwrap(), vec![pt(0, 1); 2]);
    }

    #[test]
    fn tent_arc_images() {
        let t = builtins::tent();
        let img = |lo, hi| t.image_of_arcs(&[Arc::new(0, lo, hi)]).unwrap();
        assert_eq!(img(qi(0), q(1, 2)).arcs(), &[Arc::new(0, qi(0), qi(1))]);
        assert_eq!(img(q(1, 4), q(3, 4)).arcs(), &[Arc::new(0, q(1, 2), qi(1))]);
        assert_eq!(img(q(1, 3), q(1, 3)).arcs(), &[Arc::new(0, q(2, 3), q(2, 3))]);
    }

    #[test]
    fn constant_pieces_report_arcs() {
        let f = interval_map(&[qi(0), q(1, 3), q(2, 3), qi(1)], &[qi(0), q(1, 2), q(1, 2), qi(1)], "plateau").unwrap();
        let pre = f.preimages(&pt(1, 2)).unwrap();
        assert_eq!(pre.arcs, vec![Arc::new(0, q(1, 3), q(2, 3))]);
        assert!(pre.points.is_empty());
        let pre = f.preimages(&pt(1, 4)).unwrap();
        assert!(pre.arcs.is_empty());
        assert_eq!(pre.points, set(&f, &[(1, 6)]));
    }

    #[test]
    fn validation_cites_piece() {
        let g = GraphSpace::unit_interval();
        let err = PlMapBuilder::new(g.clone())
            .affine(0, qi(0), q(1, 2), 0, qi(2), qi(0))
            .affine(0, q(1, 2), qi(1), 0, qi(-2), q(3, 2))
            .build("broken")
            .unwrap_err();
        assert!(err.to_string().contains("piece #1"), "{err}");
        let err = PlMapBuilder::new(g.clone()).affine(0, qi(0), qi(1), 0, qi(2), qi(0)).build("x").unwrap_err();
        assert!(err.to_string().contains("leaves target edge"), "{err}");
        let err = PlMapBuilder::new(g).affine(0, qi(0), q(1, 2), 0, qi(1), qi(0)).build("x").unwrap_err();
        assert!(err.to_string().contains("last piece"), "{err}");
    }

    #[test]
    fn vertex_continuity_is_checked() {
        // Star: edge 1 sends the center somewhere else than edge 0 does.
        let g = GraphSpace::star(2);
        let err = PlMapBuilder::new(g)
            .affine(0, qi(0), qi(1), 0, qi(1), qi(0))
            .affine(1, qi(0), qi(1), 1, q(-1, 2), qi(1))
            .build("bad")
            .unwrap_err();
        assert!(err.to_string().contains("vertex"), "{err}");
    }

    #[test]
    fn piece_along_subdivides_at_vertices() {
        let f = builtins::star3_mix();
        assert_eq!(f.pieces(2).len(), 3);
        assert_eq!(f.pieces(2)[2].lo, q(2, 3));
        assert_eq!(f.pieces(2)[2].target, 0);
    }

    #[test]
    fn spec_round_trip() {
        for f in builtins::all_default() {
            let json = f.to_json();
            let back = PlMap::from_json(&json).unwrap();
            assert_eq!(back, f);
            assert_eq!(back.to_json(), json);
        }
    }

    #[test]
    fn point_text() {
        let t = builtins::tent();
        assert_eq!(t.parse_point("e0:2/5").unwrap(), pt(2, 5));
        assert_eq!(t.format_point(&pt(2, 5)), "e0:2/5");
        assert!(t.parse_point("e0:1/0").is_err());
        assert!(t.parse_point("e7:1/2").is_err());
        assert!(t.parse_point("1/2").is_err());
        assert!(t.parse_point("e0:3/2").is_err());
    }

    #[test]
    fn refine_composes_branches() {
        let t = builtins::tent();
        let mut level: Vec<AffineBranch> = t.branches();
        level = level.iter().flat_map(|b| t.refine_branch(b)).collect();
        assert_eq!(level.len(), 4);
        for b in &level {
            let mid = (&b.source.lo + &b.source.hi) / qi(2);
            let direct = t.graph().normalize(&GraphPoint::new(b.target, b.value(&mid))).unwrap();
            assert_eq!(direct, t.iterate_n(&GraphPoint::new(0, mid), 2));
        }
    }
}
