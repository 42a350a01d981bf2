//! Named example maps.
//!
//! | name              | graph           | map                                                        |
//! |-------------------|-----------------|------------------------------------------------------------|
//! | `tent`            | `[0, 1]`        | `min(2t, 2 - 2t)`                                          |
//! | `doubling_circle` | circle, length 1| `t ↦ 2t mod 1`                                             |
//! | `star3_mix`       | 3-star, unit    | `e0 → e1`, `e1 → e2` isometrically; `e2` runs c→l2→c→l0     |
//! | `figure2`         | `[0, 1]`        | through `(0,0) (1/4,1) (1/2,1/2) (3/4,1) (1,0)`            |
//! | `cantor_bumps:k`  | `[0, 1]`        | identity on depth-k Cantor intervals, tent bumps on gaps   |
//! | `edge_swap`       | 2-edge circle   | half rotation swapping the two edges                       |
//!
//! `star3_mix` piece table (center `c` at `t = 0` of every edge, leaves at `t = 1`):
//!
//! | source        | target | formula     |
//! |---------------|--------|-------------|
//! | e0 `[0, 1]`   | e1     | `t`         |
//! | e1 `[0, 1]`   | e2     | `t`         |
//! | e2 `[0, 1/3]` | e2     | `3t`        |
//! | e2 `[1/3,2/3]`| e2     | `2 - 3t`    |
//! | e2 `[2/3, 1]` | e0     | `3t - 2`    |
//!
//! Its Markov cells are `e0`, `e1` and the three thirds of `e2`; the
//! transition matrix is primitive (the first third of `e2` covers itself).
//!
//! `cantor_bumps:k` keeps each of the `2^k` depth-k middle-third intervals
//! pointwise fixed. Over a gap `(g_l, g_r)` removed at depth `j` it places a
//! tent with apex at the gap midpoint whose height is the right endpoint of
//! the depth `j - 1` interval the gap was cut from. Slopes are `4` on the
//! rising side and `-2` on the falling side at every depth; every apex is a
//! fixed Cantor endpoint, so the map is Markov with `f(x) >= x` everywhere.

use crate::error::{Error, Result};
use crate::plmap::{interval_map, PlMap, PlMapBuilder};
use crate::rational::{q, qi, Q};
use crate::topograph::{Edge, GraphSpace};

pub const NAMES: &[&str] = &["tent", "doubling_circle", "star3_mix", "figure2", "cantor_bumps", "edge_swap"];

/// Largest supported Cantor depth; the map has `3·2^k - 2` pieces.
pub const MAX_CANTOR_DEPTH: i64 = 12;

/// Resolves a builtin by name; parameters use colon syntax (`cantor_bumps:3`).
pub fn builtin(spec: &str) -> Result<PlMap> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    let no_param = |f: fn() -> PlMap| match param {
        None => Ok(f()),
        Some(_) => Err(Error::Parse(format!("builtin {name} takes no parameter"))),
    };
    match name {
        "tent" => no_param(tent),
        "doubling_circle" => no_param(doubling_circle),
        "star3_mix" => no_param(star3_mix),
        "figure2" => no_param(figure2),
        "edge_swap" => no_param(edge_swap),
        "cantor_bumps" => {
            let k: i64 = param
                .ok_or_else(|| Error::Parse("cantor_bumps needs a depth, e.g. cantor_bumps:3".into()))?
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cantor_bumps depth {param:?} is not an integer")))?;
            cantor_bumps(k)
        }
        other => Err(Error::Parse(format!("unknown builtin {other:?}; known: {}", NAMES.join(", ")))),
    }
}

pub fn tent() -> PlMap {
    interval_map(&[qi(0), q(1, 2), qi(1)], &[qi(0), qi(1), qi(0)], "tent").expect("tent is valid")
}

pub fn doubling_circle() -> PlMap {
    PlMapBuilder::new(GraphSpace::unit_circle())
        .affine(0, qi(0), q(1, 2), 0, qi(2), qi(0))
        .affine(0, q(1, 2), qi(1), 0, qi(2), qi(-1))
        .build("doubling_circle")
        .expect("doubling map is valid")
}

pub fn star3_mix() -> PlMap {
    PlMapBuilder::new(GraphSpace::star(3))
        .affine(0, qi(0), qi(1), 1, qi(1), qi(0))
        .affine(1, qi(0), qi(1), 2, qi(1), qi(0))
        .piece_along(2, qi(0), qi(1), &[(2, qi(0), qi(1)), (2, qi(1), qi(0)), (0, qi(0), qi(1))])
        .build("star3_mix")
        .expect("star3_mix is valid")
}

/// Peaks at 1/4 and 3/4, fixed point p = 1/2 with outer preimages q = 1/8, r = 7/8.
pub fn figure2() -> PlMap {
    interval_map(&[qi(0), q(1, 4), q(1, 2), q(3, 4), qi(1)], &[qi(0), qi(1), q(1, 2), qi(1), qi(0)], "figure2")
        .expect("figure2 is valid")
}

/// Rotation by half a turn of a circle made of two unit edges.
pub fn edge_swap() -> PlMap {
    let g = GraphSpace::new(
        vec!["u".into(), "v".into()],
        vec![
            Edge { id: "e0".into(), from: 0, to: 1, length: qi(1) },
            Edge { id: "e1".into(), from: 1, to: 0, length: qi(1) },
        ],
    )
    .expect("valid");
    PlMapBuilder::new(g)
        .affine(0, qi(0), qi(1), 1, qi(1), qi(0))
        .affine(1, qi(0), qi(1), 0, qi(1), qi(0))
        .build("edge_swap")
        .expect("edge_swap is valid")
}

/// Layout of `cantor_bumps:k` from left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CantorSegment {
    /// A depth-k interval, fixed pointwise.
    Fixed { lo: Q, hi: Q },
    /// A removed gap with its removal depth and apex height.
    Gap { lo: Q, hi: Q, depth: u32, peak: Q },
}

pub fn cantor_layout(k: u32) -> Vec<CantorSegment> {
    fn go(lo: Q, hi: Q, left: u32, depth: u32, out: &mut Vec<CantorSegment>) {
        if left == 0 {
            out.push(CantorSegment::Fixed { lo, hi });
            return;
        }
        let w = (&hi - &lo) / qi(3);
        let (a, b) = (&lo + &w, &lo + &w * qi(2));
        go(lo, a.clone(), left - 1, depth + 1, out);
        out.push(CantorSegment::Gap { lo: a, hi: b.clone(), depth: depth + 1, peak: hi.clone() });
        go(b, hi, left - 1, depth + 1, out);
    }
    let mut out = Vec::new();
    go(qi(0), qi(1), k, 0, &mut out);
    out
}

pub fn cantor_bumps(k: i64) -> Result<PlMap> {
    if k <= 0 {
        return Err(Error::Domain(format!("cantor_bumps depth must be positive, got {k}")));
    }
    if k > MAX_CANTOR_DEPTH {
        return Err(Error::Resource(format!("cantor_bumps depth {k} exceeds {MAX_CANTOR_DEPTH}")));
    }
    let mut xs = vec![qi(0)];
    let mut ys = vec![qi(0)];
    for seg in cantor_layout(k as u32) {
        match seg {
            CantorSegment::Fixed { hi, .. } => {
                xs.push(hi.clone());
                ys.push(hi);
            }
            CantorSegment::Gap { lo, hi, peak, .. } => {
                xs.push((&lo + &hi) / qi(2));
                ys.push(peak);
                xs.push(hi.clone());
                ys.push(hi);
            }
        }
    }
    Ok(interval_map(&xs, &ys, &format!("cantor_bumps:{k}"))?.with_notes(
        "interval part of the zero-entropy example: Cantor intervals fixed, tent bumps above the diagonal on gaps",
    ))
}

/// Every builtin with default parameters (`cantor_bumps:3`).
pub fn all_default() -> Vec<PlMap> {
    vec![tent(), doubling_circle(), star3_mix(), figure2(), cantor_bumps(3).expect("valid"), edge_swap()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topograph::{ArcSet, GraphPoint};

    #[test]
    fn figure2_values() {
        let f = figure2();
        let at = |n, d| f.evaluate(&GraphPoint::new(0, q(n, d))).unwrap().t;
        assert_eq!(at(1, 8), q(1, 2));
        assert_eq!(at(7, 8), q(1, 2));
        assert_eq!(at(1, 2), q(1, 2));
        assert_eq!(at(1, 4), qi(1));
        assert_eq!(at(3, 4), qi(1));
    }

    #[test]
    fn names_resolve() {
        assert_eq!(builtin("tent").unwrap().name(), "tent");
        assert_eq!(builtin("cantor_bumps:2").unwrap().name(), "cantor_bumps:2");
        assert!(matches!(builtin("cantor_bumps:0"), Err(Error::Domain(_))));
        assert!(matches!(builtin("cantor_bumps:-1"), Err(Error::Domain(_))));
        assert!(builtin("cantor_bumps").is_err());
        assert!(builtin("tent:2").is_err());
        assert!(builtin("logistic").is_err());
    }

    #[test]
    fn builtins_are_surjective_without_constant_pieces() {
        for f in all_default() {
            assert!(f.is_surjective(), "{}", f.name());
            assert!(!f.has_constant_pieces(), "{}", f.name());
            assert_eq!(f.image_of_set(&ArcSet::whole(f.graph())), ArcSet::whole(f.graph()));
        }
    }

    #[test]
    fn cantor_layout_depth_two() {
        let layout = cantor_layout(2);
        assert_eq!(layout.len(), 7);
        assert_eq!(layout[1], CantorSegment::Gap { lo: q(1, 9), hi: q(2, 9), depth: 2, peak: q(1, 3) });
        assert_eq!(layout[3], CantorSegment::Gap { lo: q(1, 3), hi: q(2, 3), depth: 1, peak: qi(1) });
        assert_eq!(layout[5], CantorSegment::Gap { lo: q(7, 9), hi: q(8, 9), depth: 2, peak: qi(1) });
    }

    #[test]
    fn cantor_bumps_shape() {
        let f = cantor_bumps(3).unwrap();
        assert_eq!(f.piece_count(), 3 * 8 - 2);
        for seg in cantor_layout(3) {
            match seg {
                CantorSegment::Fixed { lo, hi } => {
                    for t in [lo.clone(), (&lo + &hi) / qi(2), hi] {
                        assert_eq!(f.evaluate(&GraphPoint::new(0, t.clone())).unwrap().t, t);
                    }
                }
                CantorSegment::Gap { lo, hi, peak, .. } => {
                    let mid = (&lo + &hi) / qi(2);
                    assert_eq!(f.evaluate(&GraphPoint::new(0, mid)).unwrap().t, peak);
                }
            }
        }
        for p in f.pieces(0) {
            assert!(p.a == qi(1) || p.a == qi(4) || p.a == qi(-2), "slope {}", p.a);
        }
    }
}
