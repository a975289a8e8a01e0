//! Machine-checkable certificates: strong regularity, cospectrality,
//! non-isomorphism via invariant distributions, design and switching
//! validity, and a small exhaustive isomorphism oracle for calibration.
//!
//! A certificate records the claim, content digests of its inputs, and
//! enough evidence to re-derive the verdict from the input bytes alone
//! (histograms come with witness tuples whose counts can be recounted
//! directly on the graphs). Non-isomorphism certificates are sound but
//! possibly inconclusive: `Fail` means the invariant did not separate the
//! graphs, never that they are isomorphic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::designs::{self, Design};
use crate::graph::{self, Graph, SrgParams};
use crate::graph6;
use crate::spectral;
use crate::switching::{self, SwitchingSetPair};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("exhaustive isomorphism is capped at 64 vertices, got {0}")]
    TooLargeForExhaustive(usize),
    #[error("certificate does not match the supplied inputs")]
    InputMismatch,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Digest of a graph: the SHA-256 of its graph6 bytes, tying certificates
/// to exact inputs.
pub fn graph_digest(g: &Graph) -> String {
    sha256_hex(&graph6::encode(g).expect("supported graph orders"))
}

pub fn design_digest(d: &Design) -> String {
    sha256_hex(designs::to_text(d).as_bytes())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    SrgParams,
    Cospectral,
    NonIsomorphic,
    Isomorphic,
    DesignValid,
    SwitchingValid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

/// Histograms are serialized as sorted (value, count) pairs.
pub type Histogram = Vec<(usize, u64)>;

fn histogram_vec(map: &BTreeMap<usize, u64>) -> Histogram {
    map.iter().map(|(&k, &v)| (k, v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    TriangleHistograms {
        a: Histogram,
        b: Histogram,
        /// A triangle of `b` whose common-neighborhood size is foreign to
        /// `a`'s histogram (present when the invariant separates and `a` has
        /// a constant distribution).
        witness: Option<TriangleWitness>,
    },
    FourCliqueHistograms {
        a: Histogram,
        b: Histogram,
        witness: Option<FourCliqueWitness>,
    },
    CliqueSizes {
        floor: usize,
        a: Histogram,
        b: Histogram,
        /// A maximal clique realizing a multiset difference.
        witness: Option<CliqueWitness>,
    },
    SrgComparison {
        a: Option<SrgParams>,
        b: Option<SrgParams>,
    },
    Cospectrality {
        primes: Vec<u64>,
        equal: bool,
        first_mismatch: Option<u64>,
        /// Set when the charpoly route was skipped for size and parameter
        /// equality of strongly regular graphs was used instead.
        by_srg_parameters: Option<bool>,
    },
    IsomorphismSearch {
        mapping: Option<Vec<usize>>,
        nodes_explored: u64,
    },
    DesignCheck {
        v: usize,
        block_size: usize,
        lambda: usize,
        violation: Option<String>,
    },
    SwitchingCheck {
        summary: Option<switching::WqhSummary>,
        violation: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleWitness {
    pub vertices: [usize; 3],
    pub common_neighbors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourCliqueWitness {
    pub vertices: [usize; 4],
    pub common_neighbors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueWitness {
    pub vertices: Vec<usize>,
}

/// A self-describing verification record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub claim: Claim,
    pub inputs: Vec<InputDigest>,
    pub evidence: Evidence,
    pub verdict: Verdict,
}

impl Certificate {
    fn new(claim: Claim, inputs: Vec<InputDigest>, evidence: Evidence, pass: bool) -> Certificate {
        Certificate {
            schema_version: 1,
            claim,
            inputs,
            evidence,
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        }
    }

    /// Canonical report serialization: pretty JSON with fixed key order.
    pub fn to_report(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_report(text: &str) -> Result<Certificate, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn graph_inputs(a: &Graph, b: &Graph) -> Vec<InputDigest> {
    vec![
        InputDigest { name: "a".into(), sha256: graph_digest(a) },
        InputDigest { name: "b".into(), sha256: graph_digest(b) },
    ]
}

/// Non-isomorphism by the triangle common-neighborhood distribution.
/// Passes when the histograms differ; when `a`'s distribution is constant,
/// the evidence also carries a concrete triangle of `b` with a foreign
/// value.
pub fn certify_non_isomorphic_by_triangles(a: &Graph, b: &Graph) -> Certificate {
    let (ha, _) = graph::triangle_scan(a);
    let (hb, wb) = graph::triangle_scan(b);
    let pass = ha != hb;
    let witness = if pass && ha.len() == 1 {
        wb.iter()
            .find(|(value, _)| !ha.contains_key(value))
            .map(|(&value, &vertices)| TriangleWitness {
                vertices,
                common_neighbors: value,
            })
    } else {
        None
    };
    Certificate::new(
        Claim::NonIsomorphic,
        graph_inputs(a, b),
        Evidence::TriangleHistograms {
            a: histogram_vec(&ha),
            b: histogram_vec(&hb),
            witness,
        },
        pass,
    )
}

/// Non-isomorphism by the 4-clique common-neighborhood distribution; the
/// fallback invariant when triangles do not separate.
pub fn certify_non_isomorphic_by_four_cliques(a: &Graph, b: &Graph) -> Certificate {
    let (ha, _) = graph::four_clique_scan(a);
    let (hb, wb) = graph::four_clique_scan(b);
    let pass = ha != hb;
    let witness = if pass {
        wb.iter()
            .find(|(value, _)| ha.get(value) != hb.get(value))
            .map(|(&value, &vertices)| FourCliqueWitness {
                vertices,
                common_neighbors: value,
            })
    } else {
        None
    };
    Certificate::new(
        Claim::NonIsomorphic,
        graph_inputs(a, b),
        Evidence::FourCliqueHistograms {
            a: histogram_vec(&ha),
            b: histogram_vec(&hb),
            witness,
        },
        pass,
    )
}

/// Non-isomorphism by the multiset of maximal clique sizes at or above
/// `floor`.
pub fn certify_non_isomorphic_by_cliques(a: &Graph, b: &Graph, floor: usize) -> Certificate {
    let (ha, _) = graph::clique_scan(a, floor);
    let (hb, wb) = graph::clique_scan(b, floor);
    let pass = ha != hb;
    let witness = if pass {
        hb.iter()
            .find(|(size, count)| ha.get(size) != Some(count))
            .and_then(|(size, _)| wb.get(size))
            .map(|vertices| CliqueWitness { vertices: vertices.clone() })
    } else {
        None
    };
    Certificate::new(
        Claim::NonIsomorphic,
        graph_inputs(a, b),
        Evidence::CliqueSizes {
            floor,
            a: histogram_vec(&ha),
            b: histogram_vec(&hb),
            witness,
        },
        pass,
    )
}

/// Both graphs strongly regular with equal parameters.
pub fn certify_same_srg(a: &Graph, b: &Graph) -> Certificate {
    let pa = graph::srg_params(a).ok();
    let pb = graph::srg_params(b).ok();
    let pass = pa.is_some() && pa == pb;
    Certificate::new(
        Claim::SrgParams,
        graph_inputs(a, b),
        Evidence::SrgComparison { a: pa, b: pb },
        pass,
    )
}

/// Policy for cospectrality certificates.
#[derive(Clone, Copy, Debug)]
pub struct CospectralPolicy {
    pub prime_count: usize,
    pub seed: u64,
    /// Graphs larger than this skip the charpoly route and use equality of
    /// SRG parameters instead (exact for strongly regular graphs).
    pub charpoly_limit: usize,
    pub force_charpoly: bool,
}

impl Default for CospectralPolicy {
    fn default() -> Self {
        CospectralPolicy {
            prime_count: 5,
            seed: 0,
            charpoly_limit: 2000,
            force_charpoly: false,
        }
    }
}

pub fn certify_cospectral(a: &Graph, b: &Graph, policy: CospectralPolicy) -> Certificate {
    let use_charpoly = policy.force_charpoly || a.n().max(b.n()) <= policy.charpoly_limit;
    let (evidence, pass) = if use_charpoly {
        let verdict = spectral::cospectral(a, b, policy.prime_count, policy.seed);
        let pass = verdict.equal;
        (
            Evidence::Cospectrality {
                primes: verdict.primes,
                equal: verdict.equal,
                first_mismatch: verdict.first_mismatch,
                by_srg_parameters: None,
            },
            pass,
        )
    } else {
        let pa = graph::srg_params(a).ok();
        let pb = graph::srg_params(b).ok();
        let equal = pa.is_some() && pa == pb;
        (
            Evidence::Cospectrality {
                primes: Vec::new(),
                equal,
                first_mismatch: None,
                by_srg_parameters: Some(equal),
            },
            equal,
        )
    };
    Certificate::new(Claim::Cospectral, graph_inputs(a, b), evidence, pass)
}

pub fn certify_design_valid(d: &Design) -> Certificate {
    let verdict = designs::verify_design(d);
    let pass = verdict.is_valid();
    Certificate::new(
        Claim::DesignValid,
        vec![InputDigest { name: "design".into(), sha256: design_digest(d) }],
        Evidence::DesignCheck {
            v: d.v,
            block_size: d.block_size,
            lambda: d.lambda,
            violation: if pass { None } else { Some(format!("{verdict:?}")) },
        },
        pass,
    )
}

pub fn certify_switching_valid(g: &Graph, pair: &SwitchingSetPair) -> Certificate {
    let result = switching::validate_wqh(g, pair);
    let pass = result.is_ok();
    Certificate::new(
        Claim::SwitchingValid,
        vec![InputDigest { name: "graph".into(), sha256: graph_digest(g) }],
        Evidence::SwitchingCheck {
            summary: result.as_ref().ok().copied(),
            violation: result.err().map(|e| e.to_string()),
        },
        pass,
    )
}

/// Backtracking isomorphism search with bitset candidate refinement.
/// Capped at 64 vertices; returns an explicit bijection or an exhaustive
/// refutation. Calibration oracle for the invariant certificates.
pub fn exhaustive_isomorphism(a: &Graph, b: &Graph) -> Result<Certificate, CertifyError> {
    let n = a.n();
    if n > 64 || b.n() > 64 {
        return Err(CertifyError::TooLargeForExhaustive(n.max(b.n())));
    }
    let inputs = graph_inputs(a, b);
    if n != b.n() || a.edge_count() != b.edge_count() {
        return Ok(Certificate::new(
            Claim::Isomorphic,
            inputs,
            Evidence::IsomorphismSearch { mapping: None, nodes_explored: 0 },
            false,
        ));
    }
    let rows_a: Vec<u64> = (0..n).map(|v| a.row(v).first().copied().unwrap_or(0)).collect();
    let rows_b: Vec<u64> = (0..n).map(|v| b.row(v).first().copied().unwrap_or(0)).collect();
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };

    // initial candidates by degree
    let deg_a: Vec<u32> = rows_a.iter().map(|r| r.count_ones()).collect();
    let deg_b: Vec<u32> = rows_b.iter().map(|r| r.count_ones()).collect();
    let mut initial = vec![0u64; n];
    for u in 0..n {
        for v in 0..n {
            if deg_a[u] == deg_b[v] {
                initial[u] |= 1 << v;
            }
        }
        if initial[u] == 0 {
            return Ok(Certificate::new(
                Claim::Isomorphic,
                inputs,
                Evidence::IsomorphismSearch { mapping: None, nodes_explored: 0 },
                false,
            ));
        }
    }

    struct Search<'g> {
        n: usize,
        rows_a: &'g [u64],
        rows_b: &'g [u64],
        mapping: Vec<usize>,
        nodes: u64,
    }

    impl Search<'_> {
        fn run(&mut self, candidates: &[u64], mapped: u64, used: u64, full: u64) -> bool {
            if mapped == full {
                return true;
            }
            self.nodes += 1;
            // most constrained unmapped vertex first
            let mut best = usize::MAX;
            let mut best_count = u32::MAX;
            for u in 0..self.n {
                if mapped >> u & 1 == 1 {
                    continue;
                }
                let count = (candidates[u] & !used).count_ones();
                if count < best_count {
                    best_count = count;
                    best = u;
                }
            }
            if best_count == 0 {
                return false;
            }
            let u = best;
            let mut options = candidates[u] & !used;
            while options != 0 {
                let v = options.trailing_zeros() as usize;
                options &= options - 1;
                let mut next = candidates.to_vec();
                let mut ok = true;
                for w in 0..self.n {
                    if mapped >> w & 1 == 1 || w == u {
                        continue;
                    }
                    if self.rows_a[u] >> w & 1 == 1 {
                        next[w] &= self.rows_b[v];
                    } else {
                        next[w] &= !self.rows_b[v];
                    }
                    if next[w] & !(used | 1 << v) == 0 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    self.mapping[u] = v;
                    if self.run(&next, mapped | 1 << u, used | 1 << v, full) {
                        return true;
                    }
                }
            }
            false
        }
    }

    let mut search = Search {
        n,
        rows_a: &rows_a,
        rows_b: &rows_b,
        mapping: vec![usize::MAX; n],
        nodes: 0,
    };
    let found = n == 0 || search.run(&initial, 0, 0, full);
    let mapping = if found && n > 0 {
        Some(search.mapping.clone())
    } else if found {
        Some(Vec::new())
    } else {
        None
    };
    if let Some(m) = &mapping {
        debug_assert!(is_isomorphism(a, b, m));
    }
    Ok(Certificate::new(
        Claim::Isomorphic,
        inputs,
        Evidence::IsomorphismSearch { mapping, nodes_explored: search.nodes },
        found,
    ))
}

fn is_isomorphism(a: &Graph, b: &Graph, mapping: &[usize]) -> bool {
    if mapping.len() != a.n() {
        return false;
    }
    for u in 0..a.n() {
        for v in (u + 1)..a.n() {
            if a.has_edge(u, v) != b.has_edge(mapping[u], mapping[v]) {
                return false;
            }
        }
    }
    true
}

/// Re-derives a certificate's verdict from the given inputs: the digests
/// must match, histogram evidence is recomputed, and witnesses recounted
/// on the raw graphs.
pub fn recheck(cert: &Certificate, a: &Graph, b: &Graph) -> Result<bool, CertifyError> {
    let expect = graph_inputs(a, b);
    if cert.inputs != expect {
        return Err(CertifyError::InputMismatch);
    }
    let ok = match &cert.evidence {
        Evidence::TriangleHistograms { a: ha, b: hb, witness } => {
            let (ra, _) = graph::triangle_scan(a);
            let (rb, _) = graph::triangle_scan(b);
            let mut ok = histogram_vec(&ra) == *ha && histogram_vec(&rb) == *hb;
            ok &= (ra != rb) == cert.verdict.passed();
            if let Some(w) = witness {
                let [x, y, z] = w.vertices;
                let mut common = 0;
                for t in 0..b.n() {
                    if b.has_edge(x, t) && b.has_edge(y, t) && b.has_edge(z, t) {
                        common += 1;
                    }
                }
                ok &= b.has_edge(x, y) && b.has_edge(x, z) && b.has_edge(y, z);
                ok &= common == w.common_neighbors;
                ok &= !ra.contains_key(&w.common_neighbors);
            }
            ok
        }
        Evidence::FourCliqueHistograms { a: ha, b: hb, .. } => {
            let (ra, _) = graph::four_clique_scan(a);
            let (rb, _) = graph::four_clique_scan(b);
            histogram_vec(&ra) == *ha
                && histogram_vec(&rb) == *hb
                && (ra != rb) == cert.verdict.passed()
        }
        Evidence::CliqueSizes { floor, a: ha, b: hb, .. } => {
            let ra = graph::maximal_clique_sizes(a, *floor);
            let rb = graph::maximal_clique_sizes(b, *floor);
            histogram_vec(&ra) == *ha
                && histogram_vec(&rb) == *hb
                && (ra != rb) == cert.verdict.passed()
        }
        Evidence::SrgComparison { a: pa, b: pb } => {
            let ra = graph::srg_params(a).ok();
            let rb = graph::srg_params(b).ok();
            ra == *pa && rb == *pb && (ra.is_some() && ra == rb) == cert.verdict.passed()
        }
        Evidence::Cospectrality { primes, equal, by_srg_parameters, .. } => {
            if by_srg_parameters.is_some() {
                let ra = graph::srg_params(a).ok();
                let rb = graph::srg_params(b).ok();
                (ra.is_some() && ra == rb) == *equal
            } else {
                let mut all_equal = true;
                for &p in primes {
                    let ca = spectral::charpoly_mod_p(a, p).map_err(|_| CertifyError::InputMismatch)?;
                    let cb = spectral::charpoly_mod_p(b, p).map_err(|_| CertifyError::InputMismatch)?;
                    all_equal &= ca.coeffs == cb.coeffs;
                }
                all_equal == *equal && *equal == cert.verdict.passed()
            }
        }
        Evidence::IsomorphismSearch { mapping, .. } => match mapping {
            Some(m) => is_isomorphism(a, b, m) && cert.verdict.passed(),
            None => !cert.verdict.passed(),
        },
        Evidence::DesignCheck { .. } | Evidence::SwitchingCheck { .. } => {
            return Err(CertifyError::InputMismatch)
        }
    };
    Ok(ok)
}
