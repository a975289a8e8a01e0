//! 2-designs with unit lambda: the Grassmann design of lines, the affine
//! AG(3,3) line design, subdesigns cut out by a subspace, block graphs, and
//! the point-swap block modification that switching reproduces.
//!
//! Convention: a 2-(v, b, lambda) design has `v` points, blocks of size `b`,
//! and every point pair in exactly `lambda` blocks.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::field::{Felt, FieldTables};
use crate::geometry::{self, ProjectivePoint, Subspace};
use crate::graph::{Graph, GraphBuilder};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
    #[error("block graphs and block modification need lambda = 1, got {0}")]
    LambdaNotOne(usize),
    #[error("subdesign subspace dimension {0} must satisfy 2 < s < {1}")]
    DimensionOutOfRange(usize, usize),
    #[error("point {0} is not a point of the subdesign")]
    PointOutsideSubdesign(usize),
    #[error("the two swap points must differ")]
    SamePoint,
    #[error("design text is malformed: {0}")]
    Parse(String),
    #[error("design dimension must be at least 3, got {0}")]
    TooSmall(usize),
}

/// A block design: `v` labeled points and a sequence of blocks, each a
/// sorted list of point indices. Block order is part of the identity of
/// the design (block graphs inherit it as vertex order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub v: usize,
    pub block_size: usize,
    pub lambda: usize,
    pub blocks: Vec<Vec<usize>>,
    pub point_labels: Vec<String>,
}

/// A subdesign: a subset of points together with the blocks lying entirely
/// inside it.
#[derive(Clone, Debug)]
pub struct SubdesignEmbedding {
    pub point_set: Vec<usize>,
    pub block_indices: Vec<usize>,
}

impl SubdesignEmbedding {
    pub fn contains_point(&self, p: usize) -> bool {
        self.point_set.binary_search(&p).is_ok()
    }
}

/// Outcome of the pair-count check, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DesignVerdict {
    Valid,
    WrongBlockSize { block: usize, size: usize },
    PairCountOff { p: usize, q: usize, count: usize },
}

impl DesignVerdict {
    pub fn is_valid(&self) -> bool {
        *self == DesignVerdict::Valid
    }
}

/// Checks that every block has the declared size and every point pair lies
/// in exactly `lambda` blocks.
pub fn verify_design(d: &Design) -> DesignVerdict {
    for (i, block) in d.blocks.iter().enumerate() {
        if block.len() != d.block_size {
            return DesignVerdict::WrongBlockSize { block: i, size: block.len() };
        }
    }
    let mut counts = vec![0usize; d.v * d.v];
    for block in &d.blocks {
        for (i, &p) in block.iter().enumerate() {
            for &q in &block[i + 1..] {
                counts[p * d.v + q] += 1;
                counts[q * d.v + p] += 1;
            }
        }
    }
    for p in 0..d.v {
        for q in (p + 1)..d.v {
            if counts[p * d.v + q] != d.lambda {
                return DesignVerdict::PairCountOff { p, q, count: counts[p * d.v + q] };
            }
        }
    }
    DesignVerdict::Valid
}

/// The 2-design of points and lines of GF(q)^n: lambda = 1, block size
/// q + 1. Blocks are sorted by their point-index sequences so the block
/// graph vertex order is reproducible. Also returns the point list backing
/// the indices.
pub fn grassmann_design(n: usize, q: u64) -> Result<(Design, Vec<ProjectivePoint>), DesignError> {
    if n < 3 {
        return Err(DesignError::TooSmall(n));
    }
    let f = FieldTables::of_order(q)?;
    let points = geometry::projective_points(&f, n);
    let index: HashMap<&ProjectivePoint, usize> =
        points.iter().zip(0..).collect();
    let mut blocks: Vec<Vec<usize>> = geometry::subspaces_of(&f, n, 2)
        .iter()
        .map(|line| {
            let mut ids: Vec<usize> = line.points(&f).iter().map(|p| index[p]).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    blocks.sort();
    let design = Design {
        v: points.len(),
        block_size: q as usize + 1,
        lambda: 1,
        blocks,
        point_labels: points.iter().map(|p| p.label()).collect(),
    };
    Ok((design, points))
}

/// The design of points and lines of the affine space AG(3,3): 27 points,
/// 117 blocks of size 3.
pub fn ag_design() -> Design {
    let f = FieldTables::new(3, 1).expect("GF(3)");
    let n = 27usize;
    let decode = |i: usize| -> [Felt; 3] {
        [Felt((i / 9) as u8), Felt((i / 3 % 3) as u8), Felt((i % 3) as u8)]
    };
    let encode = |v: [Felt; 3]| -> usize {
        v[0].0 as usize * 9 + v[1].0 as usize * 3 + v[2].0 as usize
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut blocks = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let pa = decode(a);
            let pb = decode(b);
            let mut line = vec![a, b];
            // third point of the affine line through a and b over GF(3)
            let third = [
                f.sub(f.mul(Felt(2), pa[0]), pb[0]),
                f.sub(f.mul(Felt(2), pa[1]), pb[1]),
                f.sub(f.mul(Felt(2), pa[2]), pb[2]),
            ];
            line.push(encode(third));
            line.sort_unstable();
            if seen.insert(line.clone()) {
                blocks.push(line);
            }
        }
    }
    blocks.sort();
    let point_labels = (0..n)
        .map(|i| {
            let v = decode(i);
            format!("({},{},{})", v[0].0, v[1].0, v[2].0)
        })
        .collect();
    Design {
        v: n,
        block_size: 3,
        lambda: 1,
        blocks,
        point_labels,
    }
}

/// Restricts a Grassmann design to an s-space `S` with `2 < s < n`: the
/// points of `S` and the lines inside it form a subdesign with the same
/// block size and lambda.
pub fn subdesign_from_subspace(
    design: &Design,
    points: &[ProjectivePoint],
    f: &FieldTables,
    s: &Subspace,
) -> Result<SubdesignEmbedding, DesignError> {
    if s.dim() <= 2 || s.dim() >= s.dim_ambient() {
        return Err(DesignError::DimensionOutOfRange(s.dim(), s.dim_ambient()));
    }
    let mut point_set: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| s.contains_point(f, p))
        .map(|(i, _)| i)
        .collect();
    point_set.sort_unstable();
    let inside: HashSet<usize> = point_set.iter().copied().collect();
    let block_indices = design
        .blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.iter().all(|p| inside.contains(p)))
        .map(|(i, _)| i)
        .collect();
    Ok(SubdesignEmbedding { point_set, block_indices })
}

/// Block graph of a lambda = 1 design: vertices are blocks in design order,
/// adjacent when they intersect. Vertex labels carry the block point sets.
pub fn block_graph(d: &Design) -> Result<Graph, DesignError> {
    if d.lambda != 1 {
        return Err(DesignError::LambdaNotOne(d.lambda));
    }
    let n = d.blocks.len();
    let sets: Vec<HashSet<usize>> = d
        .blocks
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    let mut builder = GraphBuilder::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if d.blocks[u].iter().any(|p| sets[v].contains(p)) {
                builder.add_edge(u, v);
            }
        }
    }
    builder.set_labels(
        d.blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect(),
    );
    Ok(builder.build())
}

/// Swaps `p1` and `p2` inside the subdesign blocks through exactly one of
/// them: blocks through `p1` but not `p2` get `p1` replaced by `p2`, and
/// symmetrically. Block order is preserved, so the modified design's block
/// graph is indexed like the original's.
pub fn jungnickel_modify(
    d: &Design,
    emb: &SubdesignEmbedding,
    p1: usize,
    p2: usize,
) -> Result<Design, DesignError> {
    if d.lambda != 1 {
        return Err(DesignError::LambdaNotOne(d.lambda));
    }
    if p1 == p2 {
        return Err(DesignError::SamePoint);
    }
    for p in [p1, p2] {
        if !emb.contains_point(p) {
            return Err(DesignError::PointOutsideSubdesign(p));
        }
    }
    let mut out = d.clone();
    for &bi in &emb.block_indices {
        let block = &mut out.blocks[bi];
        let has1 = block.contains(&p1);
        let has2 = block.contains(&p2);
        if has1 == has2 {
            continue;
        }
        let (from, to) = if has1 { (p1, p2) } else { (p2, p1) };
        block.retain(|&p| p != from);
        block.push(to);
        block.sort_unstable();
    }
    Ok(out)
}

/// Line-oriented serialization, version 1:
///
/// ```text
/// design/v1
/// v=<points> b=<block size> lambda=<lambda>
/// <sorted point indices of block 0, space separated>
/// ...
/// ```
pub fn to_text(d: &Design) -> String {
    let mut out = String::from("design/v1\n");
    out.push_str(&format!("v={} b={} lambda={}\n", d.v, d.block_size, d.lambda));
    for block in &d.blocks {
        let line: Vec<String> = block.iter().map(|p| p.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn from_text(text: &str) -> Result<Design, DesignError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| DesignError::Parse("empty input".into()))?;
    if header != "design/v1" {
        return Err(DesignError::Parse(format!("unknown version line {header:?}")));
    }
    let meta = lines.next().ok_or_else(|| DesignError::Parse("missing header".into()))?;
    let mut v = None;
    let mut b = None;
    let mut lambda = None;
    for part in meta.split_whitespace() {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| DesignError::Parse(format!("bad header field {part:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| DesignError::Parse(format!("bad number in {part:?}")))?;
        match key {
            "v" => v = Some(value),
            "b" => b = Some(value),
            "lambda" => lambda = Some(value),
            _ => return Err(DesignError::Parse(format!("unknown header key {key:?}"))),
        }
    }
    let (v, block_size, lambda) = match (v, b, lambda) {
        (Some(v), Some(b), Some(l)) => (v, b, l),
        _ => return Err(DesignError::Parse("header must set v, b and lambda".into())),
    };
    let mut blocks = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let block: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let block = block.map_err(|_| DesignError::Parse(format!("bad block line {line:?}")))?;
        if block.iter().any(|&p| p >= v) {
            return Err(DesignError::Parse(format!("point out of range in {line:?}")));
        }
        blocks.push(block);
    }
    Ok(Design {
        v,
        block_size,
        lambda,
        blocks,
        point_labels: (0..v).map(|i| i.to_string()).collect(),
    })
}

/// First subspace of dimension `s` in canonical order; convenient seed for
/// subdesign construction.
pub fn first_subspace(f: &FieldTables, n: usize, s: usize) -> Subspace {
    // the span of the last s unit vectors is the canonical least subspace,
    // but take it from the ordered enumeration to stay definitionally tied
    // to the canonical order
    geometry::subspaces_of(f, n, s)
        .into_iter()
        .next()
        .unwrap_or_else(|| Subspace::zero(n))
}
