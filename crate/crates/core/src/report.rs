//! JSON report format shared by the command-line driver and the suites.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::backward::{BackwardBranch, SteeringPlan, Strategy};
use crate::orbits::{LimitSetEstimate, PeriodicOrbit};
use crate::plmap::{format_point, PlMap};
use crate::rational::{self, Q};
use crate::structure::{MarkovPartition, TransitionMatrix};
use crate::topograph::{GraphPoint, GraphSpace};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapInfo {
    pub name: String,
    /// SHA-256 of the canonical map-spec JSON.
    pub sha256: String,
}

impl MapInfo {
    pub fn of(f: &PlMap) -> Self {
        let digest = Sha256::digest(f.to_json().as_bytes());
        MapInfo { name: f.name().to_string(), sha256: digest.iter().map(|b| format!("{b:02x}")).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    /// Arguments as given on the command line.
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<MapInfo>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
}

impl Report {
    pub fn new(command: Vec<String>, map: Option<&PlMap>, results: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "graphdyn".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command,
            map: map.map(MapInfo::of),
            results,
            wall_clock_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn rat(x: &Q) -> Value {
    Value::String(rational::format(x))
}

pub fn point(g: &GraphSpace, p: &GraphPoint) -> Value {
    Value::String(format_point(g, p))
}

pub fn points<'a>(g: &GraphSpace, ps: impl IntoIterator<Item = &'a GraphPoint>) -> Value {
    Value::Array(ps.into_iter().map(|p| point(g, p)).collect())
}

pub fn estimate(g: &GraphSpace, e: &LimitSetEstimate) -> Value {
    json!({
        "points": points(g, &e.points),
        "resolution": rat(&e.resolution),
        "provenance": e.provenance,
        "parameters": e.params,
    })
}

pub fn orbit(g: &GraphSpace, o: &PeriodicOrbit) -> Value {
    json!({
        "period": o.period,
        "cycle": points(g, &o.cycle),
        "certificate": o.certificate,
    })
}

pub fn strategy(s: &Strategy) -> Value {
    match s {
        Strategy::GreedyNearest => json!({"name": "greedy_nearest"}),
        Strategy::GreedyWithLookahead(k) => json!({"name": "greedy_with_lookahead", "lookahead": k}),
    }
}

pub fn plan(g: &GraphSpace, p: &SteeringPlan) -> Value {
    json!({
        "waypoints": points(g, &p.waypoints),
        "dwell": p.dwell,
        "strategy": strategy(&p.strategy),
    })
}

/// Branch export: `"index:edge:p/q"` records plus plan metadata.
pub fn branch_export(f: &PlMap, b: &BackwardBranch, plan: Option<&SteeringPlan>) -> Value {
    let g = f.graph();
    json!({
        "map": f.name(),
        "depth": b.depth(),
        "verified": b.verified,
        "dead_end": b.dead_end,
        "plan": plan.map(|p| self::plan(g, p)),
        "records": b.records(g),
    })
}

/// Short branch summary for reports (the full branch goes to the export file).
pub fn branch_summary(f: &PlMap, b: &BackwardBranch) -> Value {
    let g = f.graph();
    json!({
        "depth": b.depth(),
        "verified": b.verified,
        "dead_end": b.dead_end,
        "start": point(g, b.start()),
        "deepest": point(g, b.deepest()),
    })
}

pub fn matrix(m: &TransitionMatrix) -> Value {
    Value::Array(
        m.rows().iter().map(|r| Value::String(r.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))).collect(),
    )
}

pub fn partition(g: &GraphSpace, p: &MarkovPartition) -> Value {
    json!({
        "cells": p.cells.iter().map(|c| Value::String(format!(
            "{}:[{}, {}]", g.edge(c.edge).id, rational::format(&c.lo), rational::format(&c.hi)
        ))).collect::<Vec<_>>(),
        "cut": points(g, &p.cut),
        "depth_used": p.depth_used,
        "matrix": matrix(&p.matrix),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn map_hash_is_stable() {
        let a = MapInfo::of(&builtins::tent());
        let b = MapInfo::of(&builtins::tent());
        assert_eq!(a, b);
        assert_eq!(a.sha256.len(), 64);
        assert_ne!(a.sha256, MapInfo::of(&builtins::figure2()).sha256);
    }

    #[test]
    fn timestamp_is_omitted_when_unset() {
        let r = Report::new(vec!["entropy".into()], None, json!({}));
        assert!(!r.to_json().contains("wall_clock_ms"));
        let r = Report { wall_clock_ms: Some(3), ..r };
        assert!(r.to_json().contains("\"wall_clock_ms\": 3"));
    }

    #[test]
    fn matrix_rows_are_row_major() {
        let m = TransitionMatrix::new(vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(matrix(&m), json!(["1 0", "1 1"]));
    }
}
