//! Switching sets and the two switching operations.
//!
//! WQH switching: given disjoint equal-size cells C1, C2 whose induced
//! subgraphs (and the one on their union) are regular with equal cell
//! degrees, and where every outside vertex either sees both cells equally
//! or sees exactly one full cell and nothing of the other, swapping the
//! full-cell attachments produces a cospectral graph.
//!
//! GM switching: given a cell partition C1..Ct equitable inside its union
//! and outside vertices seeing each cell in ratio 0, 1/2, or 1, the
//! half-adjacencies are complemented within their cell.
//!
//! The constructors at the bottom build the concrete switching sets used by
//! the polar space and design graphs: hyperplane differences inside a
//! totally isotropic subspace (collinearity graphs), tangent-line pairs
//! through an isotropic point (polarity graphs), and subdesign block pencils
//! (block graphs).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::designs::{Design, SubdesignEmbedding};
use crate::geometry::{
    GeometryError, LineClass, PointClass, PolarSpace, ProjectivePoint, Sign, Subspace,
    SubspaceFilter,
};
use crate::graph::{bits_to_indices, popcount_and, Graph};
use crate::polar_graphs::BuiltGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SwitchError {
    #[error("switching cells must be nonempty, equal-sized, disjoint and in range")]
    MalformedPair,
    #[error("GM cells must be nonempty, disjoint and in range")]
    MalformedPartition,
    #[error("switching hypotheses fail: {0}")]
    WqhInvalid(WqhViolation),
    #[error("GM hypotheses fail: {0}")]
    GmInvalid(GmViolation),
    #[error("subspace is not totally isotropic")]
    NotTotallyIsotropic,
    #[error("expected hyperplanes of the given subspace (equal dimension, contained, distinct)")]
    NotHyperplanes,
    #[error("line radical does not match the given point")]
    RadicalMismatch,
    #[error("switching cell points have mixed or wrong square type")]
    TypeMismatch,
    #[error("a cell point is not a vertex of the graph")]
    MissingVertex,
    #[error("design switching needs lambda = 1")]
    LambdaNotOne,
    #[error("swap points must be distinct points of the subdesign")]
    BadSwapPoints,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The two cells of a WQH switching set: disjoint, equal size, at least one
/// vertex each, all indices in range. Stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchingSetPair {
    c1: Vec<usize>,
    c2: Vec<usize>,
}

impl SwitchingSetPair {
    pub fn new(mut c1: Vec<usize>, mut c2: Vec<usize>, n: usize) -> Result<Self, SwitchError> {
        c1.sort_unstable();
        c2.sort_unstable();
        c1.dedup();
        c2.dedup();
        let ok = !c1.is_empty()
            && c1.len() == c2.len()
            && c1.iter().all(|&v| v < n)
            && c2.iter().all(|&v| v < n)
            && c1.iter().all(|v| c2.binary_search(v).is_err());
        if !ok {
            return Err(SwitchError::MalformedPair);
        }
        Ok(SwitchingSetPair { c1, c2 })
    }

    pub fn c1(&self) -> &[usize] {
        &self.c1
    }

    pub fn c2(&self) -> &[usize] {
        &self.c2
    }

    pub fn cell_size(&self) -> usize {
        self.c1.len()
    }
}

/// A GM cell partition C1..Ct; the outside part D is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GmPartition {
    cells: Vec<Vec<usize>>,
}

impl GmPartition {
    pub fn new(cells: Vec<Vec<usize>>, n: usize) -> Result<Self, SwitchError> {
        let mut cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        let mut seen = vec![false; n];
        for cell in &cells {
            if cell.is_empty() {
                return Err(SwitchError::MalformedPartition);
            }
            for &v in cell {
                if v >= n || seen[v] {
                    return Err(SwitchError::MalformedPartition);
                }
                seen[v] = true;
            }
        }
        cells.sort();
        Ok(GmPartition { cells })
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }
}

/// Statistics of a passing WQH validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WqhSummary {
    pub cell_size: usize,
    /// Induced degree inside each cell (equal for both by hypothesis).
    pub cell_degree: usize,
    /// Induced degree on the union C1 ∪ C2.
    pub union_degree: usize,
    pub balanced_outside: usize,
    pub full_c1: usize,
    pub full_c2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum WqhViolation {
    #[error("induced subgraph on C{cell} is irregular: deg({v}) = {got}, expected {expected}")]
    CellIrregular { cell: u8, v: usize, expected: usize, got: usize },
    #[error("cell degrees differ: {c1} inside C1 vs {c2} inside C2")]
    CellDegreesDiffer { c1: usize, c2: usize },
    #[error("induced subgraph on C1 ∪ C2 is irregular: deg({v}) = {got}, expected {expected}")]
    UnionIrregular { v: usize, expected: usize, got: usize },
    #[error("outside vertex {v} sees {in_c1} of C1 and {in_c2} of C2 and neither cell fully")]
    OutsideUnbalanced { v: usize, in_c1: usize, in_c2: usize },
}

fn mask_of(indices: &[usize], words: usize) -> Vec<u64> {
    let mut m = vec![0u64; words];
    for &v in indices {
        m[v / 64] |= 1 << (v % 64);
    }
    m
}

/// Checks the WQH hypotheses, reporting the first failure with a witness.
pub fn validate_wqh(g: &Graph, pair: &SwitchingSetPair) -> Result<WqhSummary, WqhViolation> {
    let words = g.words();
    let m1 = mask_of(pair.c1(), words);
    let m2 = mask_of(pair.c2(), words);
    let union: Vec<u64> = m1.iter().zip(&m2).map(|(a, b)| a | b).collect();

    let mut cell_degree = None;
    for (cell_id, (cell, mask)) in [(pair.c1(), &m1), (pair.c2(), &m2)].into_iter().enumerate() {
        let mut this_cell = None;
        for &v in cell {
            let d = popcount_and(g.row(v), mask);
            match this_cell {
                None => this_cell = Some(d),
                Some(expected) if expected != d => {
                    return Err(WqhViolation::CellIrregular {
                        cell: cell_id as u8 + 1,
                        v,
                        expected,
                        got: d,
                    })
                }
                _ => {}
            }
        }
        let this_cell = this_cell.expect("cells are nonempty");
        match cell_degree {
            None => cell_degree = Some(this_cell),
            Some(c1) if c1 != this_cell => {
                return Err(WqhViolation::CellDegreesDiffer { c1, c2: this_cell })
            }
            _ => {}
        }
    }

    let mut union_degree = None;
    for &v in pair.c1().iter().chain(pair.c2()) {
        let d = popcount_and(g.row(v), &union);
        match union_degree {
            None => union_degree = Some(d),
            Some(expected) if expected != d => {
                return Err(WqhViolation::UnionIrregular { v, expected, got: d })
            }
            _ => {}
        }
    }

    let size = pair.cell_size();
    let in_pair = |v: usize| {
        pair.c1().binary_search(&v).is_ok() || pair.c2().binary_search(&v).is_ok()
    };
    let mut balanced = 0;
    let mut full_c1 = 0;
    let mut full_c2 = 0;
    for v in 0..g.n() {
        if in_pair(v) {
            continue;
        }
        let in_c1 = popcount_and(g.row(v), &m1);
        let in_c2 = popcount_and(g.row(v), &m2);
        if in_c1 == in_c2 {
            balanced += 1;
        } else if in_c1 == size && in_c2 == 0 {
            full_c1 += 1;
        } else if in_c2 == size && in_c1 == 0 {
            full_c2 += 1;
        } else {
            return Err(WqhViolation::OutsideUnbalanced { v, in_c1, in_c2 });
        }
    }
    Ok(WqhSummary {
        cell_size: size,
        cell_degree: cell_degree.unwrap_or(0),
        union_degree: union_degree.unwrap_or(0),
        balanced_outside: balanced,
        full_c1,
        full_c2,
    })
}

/// Applies WQH switching after validating. Outside vertices attached to all
/// of C1 get reattached to all of C2 and vice versa; everything else is
/// untouched. Applying the same pair twice restores the input.
pub fn apply_wqh(g: &Graph, pair: &SwitchingSetPair) -> Result<Graph, SwitchError> {
    validate_wqh(g, pair).map_err(SwitchError::WqhInvalid)?;
    let words = g.words();
    let m1 = mask_of(pair.c1(), words);
    let m2 = mask_of(pair.c2(), words);
    let size = pair.cell_size();
    let in_pair = |v: usize| {
        pair.c1().binary_search(&v).is_ok() || pair.c2().binary_search(&v).is_ok()
    };

    let mut rows: Vec<Vec<u64>> = (0..g.n()).map(|v| g.row(v).to_vec()).collect();
    for v in 0..g.n() {
        if in_pair(v) {
            continue;
        }
        let in_c1 = popcount_and(&rows[v], &m1);
        let in_c2 = popcount_and(&rows[v], &m2);
        let swap_to: &[u64] = if in_c1 == size && in_c2 == 0 {
            &m2
        } else if in_c2 == size && in_c1 == 0 {
            &m1
        } else {
            continue;
        };
        for w in 0..words {
            rows[v][w] = (rows[v][w] & !(m1[w] | m2[w])) | swap_to[w];
        }
        for &c in pair.c1().iter().chain(pair.c2()) {
            let on = swap_to[c / 64] >> (c % 64) & 1 == 1;
            if on {
                rows[c][v / 64] |= 1 << (v % 64);
            } else {
                rows[c][v / 64] &= !(1 << (v % 64));
            }
        }
    }

    Ok(rebuild_from_rows(g, rows))
}

/// Graph exposes no mutation; reconstructing through the builder keeps the
/// symmetry invariant checked in one place.
fn rebuild_from_rows(template: &Graph, rows: Vec<Vec<u64>>) -> Graph {
    let mut builder = crate::graph::GraphBuilder::new(template.n());
    for (u, row) in rows.iter().enumerate() {
        for v in bits_to_indices(row) {
            if v > u {
                builder.add_edge(u, v);
            }
        }
    }
    if let Some(labels) = template.labels() {
        builder.set_labels(labels.to_vec());
    }
    builder.build()
}

/// Statistics of a passing GM validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GmSummary {
    pub cell_sizes: Vec<usize>,
    pub half_adjacent_outside: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum GmViolation {
    #[error("cells {i} and {j} are not equitable: vertex {v} sees {got} of cell {j}, vertex {u} sees {expected}")]
    NotEquitable { i: usize, j: usize, u: usize, v: usize, expected: usize, got: usize },
    #[error("outside vertex {v} sees {got} of cell {cell} (size {size}); allowed 0, half, all")]
    BadOutsideRatio { v: usize, cell: usize, size: usize, got: usize },
}

/// Checks the GM hypotheses: the cells are equitable within their union and
/// every outside vertex meets each cell in none, half, or all of it.
pub fn validate_gm(g: &Graph, partition: &GmPartition) -> Result<GmSummary, GmViolation> {
    let words = g.words();
    let masks: Vec<Vec<u64>> = partition.cells().iter().map(|c| mask_of(c, words)).collect();
    for (j, mask) in masks.iter().enumerate() {
        for (i, cell) in partition.cells().iter().enumerate() {
            let mut expected = None;
            let mut first = 0;
            for &v in cell {
                let d = popcount_and(g.row(v), mask);
                match expected {
                    None => {
                        expected = Some(d);
                        first = v;
                    }
                    Some(e) if e != d => {
                        return Err(GmViolation::NotEquitable {
                            i,
                            j,
                            u: first,
                            v,
                            expected: e,
                            got: d,
                        })
                    }
                    _ => {}
                }
            }
        }
    }
    let mut member = vec![false; g.n()];
    for cell in partition.cells() {
        for &v in cell {
            member[v] = true;
        }
    }
    let mut half = 0;
    for v in 0..g.n() {
        if member[v] {
            continue;
        }
        for (ci, (cell, mask)) in partition.cells().iter().zip(&masks).enumerate() {
            let d = popcount_and(g.row(v), mask);
            if d == 0 || d == cell.len() {
                continue;
            }
            if 2 * d == cell.len() {
                half += 1;
            } else {
                return Err(GmViolation::BadOutsideRatio {
                    v,
                    cell: ci,
                    size: cell.len(),
                    got: d,
                });
            }
        }
    }
    Ok(GmSummary {
        cell_sizes: partition.cells().iter().map(|c| c.len()).collect(),
        half_adjacent_outside: half,
    })
}

/// Applies GM switching after validating: for each outside vertex half-
/// adjacent to a cell, its neighborhood inside that cell is complemented.
pub fn apply_gm(g: &Graph, partition: &GmPartition) -> Result<Graph, SwitchError> {
    validate_gm(g, partition).map_err(SwitchError::GmInvalid)?;
    let words = g.words();
    let masks: Vec<Vec<u64>> = partition.cells().iter().map(|c| mask_of(c, words)).collect();
    let mut member = vec![false; g.n()];
    for cell in partition.cells() {
        for &v in cell {
            member[v] = true;
        }
    }
    let mut rows: Vec<Vec<u64>> = (0..g.n()).map(|v| g.row(v).to_vec()).collect();
    for v in 0..g.n() {
        if member[v] {
            continue;
        }
        for (cell, mask) in partition.cells().iter().zip(&masks) {
            let d = popcount_and(&rows[v], mask);
            if d == 0 || d == cell.len() || 2 * d != cell.len() {
                continue;
            }
            for w in 0..words {
                rows[v][w] ^= mask[w];
            }
            for &c in cell {
                rows[c][v / 64] ^= 1 << (v % 64);
            }
        }
    }
    Ok(rebuild_from_rows(g, rows))
}

/// Switching set for a collinearity graph: inside a totally isotropic
/// `m`-space `P`, two distinct hyperplanes `L1 != L2` give the cells
/// `Ci = Li \ L(3-i)`, of `q^(m-2)` points each.
pub fn collinearity_switch_set(
    space: &PolarSpace,
    built: &BuiltGraph,
    p_space: &Subspace,
    l1: &Subspace,
    l2: &Subspace,
) -> Result<SwitchingSetPair, SwitchError> {
    if !space.is_totally_isotropic(p_space) {
        return Err(SwitchError::NotTotallyIsotropic);
    }
    let f = space.field();
    let m = p_space.dim();
    let good = l1.dim() == m - 1
        && l2.dim() == m - 1
        && l1 != l2
        && p_space.contains_subspace(f, l1)
        && p_space.contains_subspace(f, l2);
    if !good {
        return Err(SwitchError::NotHyperplanes);
    }
    let cell = |a: &Subspace, b: &Subspace| -> Result<Vec<usize>, SwitchError> {
        a.points(f)
            .iter()
            .filter(|pt| !b.contains_point(f, pt))
            .map(|pt| built.vertex_of(pt).ok_or(SwitchError::MissingVertex))
            .collect()
    };
    SwitchingSetPair::new(cell(l1, l2)?, cell(l2, l1)?, built.n())
}

/// First (P, L1, L2) in canonical order for the collinearity construction.
pub fn find_collinearity_configuration(
    space: &PolarSpace,
    m: usize,
) -> Result<Option<(Subspace, Subspace, Subspace)>, SwitchError> {
    let iso = SubspaceFilter {
        totally_isotropic: true,
        ..Default::default()
    };
    for p_space in space.enumerate_subspaces(m, &iso)? {
        let inside = SubspaceFilter {
            inside: Some(p_space.clone()),
            ..Default::default()
        };
        let hyperplanes = space.enumerate_subspaces(m - 1, &inside)?;
        if hyperplanes.len() >= 2 {
            return Ok(Some((
                p_space,
                hyperplanes[0].clone(),
                hyperplanes[1].clone(),
            )));
        }
    }
    Ok(None)
}

/// Switching set for a block graph: `C1` holds the subdesign blocks through
/// `p1` but not `p2`, `C2` the mirror image. Cell size is
/// `(v'-1)/(b-1) - 1`.
pub fn design_switch_set(
    design: &Design,
    emb: &SubdesignEmbedding,
    p1: usize,
    p2: usize,
) -> Result<SwitchingSetPair, SwitchError> {
    if design.lambda != 1 {
        return Err(SwitchError::LambdaNotOne);
    }
    if p1 == p2 || !emb.contains_point(p1) || !emb.contains_point(p2) {
        return Err(SwitchError::BadSwapPoints);
    }
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    for &bi in &emb.block_indices {
        let block = &design.blocks[bi];
        match (block.contains(&p1), block.contains(&p2)) {
            (true, false) => c1.push(bi),
            (false, true) => c2.push(bi),
            _ => {}
        }
    }
    SwitchingSetPair::new(c1, c2, design.blocks.len())
}

/// Switching set for a polarity graph: two tangent lines through a common
/// isotropic point `p` (each with radical exactly `p`, spanning a plane
/// with radical `p`) contribute their `q` non-isotropic points per cell.
/// On quadric graphs all cell points must carry the graph's square type.
pub fn tangent_line_switch_set(
    space: &PolarSpace,
    built: &BuiltGraph,
    p: &ProjectivePoint,
    l1: &Subspace,
    l2: &Subspace,
) -> Result<SwitchingSetPair, SwitchError> {
    let f = space.field();
    let p_sub = Subspace::from_point(p);
    if l1 == l2 || l1.dim() != 2 || l2.dim() != 2 {
        return Err(SwitchError::NotHyperplanes);
    }
    for line in [l1, l2] {
        if space.radical(line) != p_sub {
            return Err(SwitchError::RadicalMismatch);
        }
    }
    let plane = Subspace::span(f, l1, l2);
    if plane.dim() != 3 || space.radical(&plane) != p_sub {
        return Err(SwitchError::RadicalMismatch);
    }
    let mut class_seen: Option<PointClass> = None;
    let cell = |line: &Subspace, class_seen: &mut Option<PointClass>| -> Result<Vec<usize>, SwitchError> {
        let mut out = Vec::new();
        for pt in line.points(f) {
            if pt == *p {
                continue;
            }
            let class = space.classify_point(&pt)?;
            if class == PointClass::Isotropic {
                return Err(SwitchError::RadicalMismatch);
            }
            match class_seen {
                None => *class_seen = Some(class),
                Some(c) if *c != class => return Err(SwitchError::TypeMismatch),
                _ => {}
            }
            out.push(built.vertex_of(&pt).ok_or(SwitchError::MissingVertex)?);
        }
        Ok(out)
    };
    let c1 = cell(l1, &mut class_seen)?;
    let c2 = cell(l2, &mut class_seen)?;
    SwitchingSetPair::new(c1, c2, built.n())
}

/// Quotient type requested from [`find_tangent_configuration`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuotientTarget {
    /// `P/p` nondegenerate hermitian (the only nondegenerate case there).
    HermitianNondeg,
    /// `P/p` a hyperbolic quadric line.
    Hyperbolic,
    /// `P/p` an elliptic quadric line.
    Elliptic,
    /// Any nondegenerate quotient.
    Any,
}

impl QuotientTarget {
    fn matches(self, class: LineClass) -> bool {
        match self {
            QuotientTarget::HermitianNondeg => class == LineClass::HermitianNondeg,
            QuotientTarget::Hyperbolic => class == LineClass::Hyperbolic,
            QuotientTarget::Elliptic => class == LineClass::Elliptic,
            QuotientTarget::Any => matches!(
                class,
                LineClass::HermitianNondeg | LineClass::Hyperbolic | LineClass::Elliptic
            ),
        }
    }
}

/// A found tangent configuration: the radical point and the two lines.
#[derive(Clone, Debug)]
pub struct TangentConfig {
    pub p: ProjectivePoint,
    pub l1: Subspace,
    pub l2: Subspace,
}

/// Deterministic first-hit search for an isotropic point `p` and tangent
/// lines `L1 != L2` through it whose span `P` has radical `p` and quotient
/// `P/p` of the requested type. `class` restricts the non-isotropic points
/// of both lines to one square type (quadric graphs). Returns `None` only
/// after exhausting every candidate.
pub fn find_tangent_configuration(
    space: &PolarSpace,
    target: QuotientTarget,
    class: Option<Sign>,
) -> Result<Option<TangentConfig>, SwitchError> {
    let f = space.field();
    let wanted = class.map(|s| match s {
        Sign::Plus => PointClass::Plus,
        Sign::Minus => PointClass::Minus,
    });
    for p in space.enumerate_points(crate::geometry::PointFilter::Isotropic)? {
        let p_sub = Subspace::from_point(&p);
        let lines = space.lines_through(&p, &SubspaceFilter::default())?;
        let mut tangents = Vec::new();
        'line: for line in lines {
            if space.radical(&line) != p_sub {
                continue;
            }
            if let Some(w) = wanted {
                for pt in line.points(f) {
                    if pt != p && space.classify_point(&pt)? != w {
                        continue 'line;
                    }
                }
            }
            tangents.push(line);
        }
        for (i, l1) in tangents.iter().enumerate() {
            for l2 in &tangents[i + 1..] {
                let plane = Subspace::span(f, l1, l2);
                if plane.dim() != 3 || space.radical(&plane) != p_sub {
                    continue;
                }
                let quotient = space.quotient_line(&plane, &p_sub)?;
                if target.matches(quotient) {
                    return Ok(Some(TangentConfig {
                        p,
                        l1: l1.clone(),
                        l2: l2.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Serializable record of a constructed switching set, binding the sorted
/// cells to the geometric or design witness that produced them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SwitchingRecord {
    pub schema_version: u32,
    pub kind: String,
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    pub witness: Vec<(String, String)>,
    pub graph_sha256: Option<String>,
}

impl SwitchingRecord {
    pub fn new(kind: &str, pair: &SwitchingSetPair, witness: Vec<(String, String)>) -> Self {
        SwitchingRecord {
            schema_version: 1,
            kind: kind.to_string(),
            c1: pair.c1().to_vec(),
            c2: pair.c2().to_vec(),
            witness,
            graph_sha256: None,
        }
    }

    pub fn pair(&self, n: usize) -> Result<SwitchingSetPair, SwitchError> {
        SwitchingSetPair::new(self.c1.clone(), self.c2.clone(), n)
    }
}
