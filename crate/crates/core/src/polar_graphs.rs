//! Graphs built on the points of a polar space, with the vertex list tied
//! back to the geometry.
//!
//! Vertex order is always the canonical point-enumeration order, and each
//! vertex is labeled with its point's coordinate string, so certificates
//! and switching records can name concrete geometric witnesses.

use std::collections::HashMap;

use crate::geometry::{GeometryError, PointFilter, PolarSpace, ProjectivePoint};
use crate::graph::{Graph, GraphBuilder};

/// A graph plus the projective points backing its vertices.
pub struct BuiltGraph {
    pub graph: Graph,
    pub points: Vec<ProjectivePoint>,
    index: HashMap<ProjectivePoint, usize>,
}

impl BuiltGraph {
    fn new(space: &PolarSpace, points: Vec<ProjectivePoint>) -> BuiltGraph {
        let n = points.len();
        let mut builder = GraphBuilder::new(n);
        // pairing both ways is symmetric for all supported forms, one
        // direction suffices
        for u in 0..n {
            for v in (u + 1)..n {
                if space.orthogonal(points[u].coords(), points[v].coords()) {
                    builder.add_edge(u, v);
                }
            }
        }
        builder.set_labels(points.iter().map(|p| p.label()).collect());
        let index = points.iter().cloned().zip(0..).collect();
        BuiltGraph {
            graph: builder.build(),
            points,
            index,
        }
    }

    pub fn vertex_of(&self, p: &ProjectivePoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }
}

/// Collinearity graph: isotropic points, adjacent when they span a totally
/// isotropic line (equivalently, lie in each other's perp).
pub fn collinearity_graph(space: &PolarSpace) -> Result<BuiltGraph, GeometryError> {
    let points = space.enumerate_points(PointFilter::Isotropic)?;
    Ok(BuiltGraph::new(space, points))
}

/// Polarity graph on non-isotropic points: `x ~ y` when `x` lies in the
/// perp of `y`. For quadrics the vertex set is one square class `V+`/`V-`;
/// for hermitian spaces it is all non-isotropic points.
pub fn polarity_graph(space: &PolarSpace, filter: PointFilter) -> Result<BuiltGraph, GeometryError> {
    let points = space.enumerate_points(filter)?;
    Ok(BuiltGraph::new(space, points))
}
