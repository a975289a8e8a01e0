//! Cospectrality checking via characteristic polynomials over random
//! word-size primes, plus closed-form spectra of strongly regular graphs.
//!
//! The integer characteristic polynomial of an n-vertex adjacency matrix
//! has coefficients bounded by `B = n! * n^n`; two distinct integer
//! polynomials can agree modulo at most `log2(B)` of the roughly `5*10^7`
//! 31-bit primes, so a disagreement survives `k` independently drawn primes
//! with probability at most `(log2(B) / 5*10^7)^k`. With the default of
//! five primes and n <= 10^4 that is below `10^(-25)`. For strongly regular
//! graphs, equality of SRG parameters independently implies cospectrality
//! exactly.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, SrgParams};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectralError {
    #[error("prime {prime} is too small for an order-{n} graph; need prime > n")]
    PrimeTooSmall { prime: u64, n: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("infeasible strongly regular parameters {0:?}")]
    Infeasible(SrgParams),
    #[error("irrational eigenvalues (conference graph case): discriminant {0} is not a square")]
    IrrationalEigenvalues(u64),
}

/// Characteristic polynomial of an adjacency matrix modulo a prime.
/// Coefficients are listed constant term first; the leading coefficient is
/// one and the degree equals the vertex count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPolyModP {
    pub prime: u64,
    pub coeffs: Vec<u64>,
}

/// Characteristic polynomial mod `prime` via similarity reduction to upper
/// Hessenberg form followed by the leading-minor recurrence; cubic cost.
///
/// Requires `prime > n` (so small integer eigenvalue structure cannot
/// collapse accidentally) and `prime < 2^31` (so products fit in u64).
pub fn charpoly_mod_p(g: &Graph, prime: u64) -> Result<CharPolyModP, SpectralError> {
    let n = g.n();
    if prime <= n as u64 || prime >= 1 << 31 {
        return Err(SpectralError::PrimeTooSmall { prime, n });
    }
    if !is_prime_u64(prime) {
        return Err(SpectralError::NotPrime(prime));
    }
    let p = prime;
    let mut m = vec![0u64; n * n];
    for u in 0..n {
        for v in g.neighbors(u) {
            m[u * n + v] = 1;
        }
    }

    // Hessenberg reduction by similarity: eliminate below the subdiagonal
    // with paired row/column operations.
    for col in 0..n.saturating_sub(2) {
        let pivot_row = match (col + 1..n).find(|&r| m[r * n + col] != 0) {
            Some(r) => r,
            None => continue,
        };
        if pivot_row != col + 1 {
            for j in 0..n {
                m.swap(pivot_row * n + j, (col + 1) * n + j);
            }
            for i in 0..n {
                m.swap(i * n + pivot_row, i * n + col + 1);
            }
        }
        let inv = mod_inv(m[(col + 1) * n + col], p);
        for row in (col + 2)..n {
            let factor = m[row * n + col] * inv % p;
            if factor == 0 {
                continue;
            }
            // row_row -= factor * row_{col+1}
            for j in 0..n {
                let sub = factor * m[(col + 1) * n + j] % p;
                m[row * n + j] = (m[row * n + j] + p - sub) % p;
            }
            // col_{col+1} += factor * col_row
            for i in 0..n {
                let add = factor * m[i * n + row] % p;
                m[i * n + col + 1] = (m[i * n + col + 1] + add) % p;
            }
        }
    }

    // p_0 = 1; p_k expands det(xI - H) along the last column of the
    // leading k x k block.
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for k in 1..=n {
        let mut next = vec![0u64; k + 1];
        // (x - h[k-1][k-1]) * p_{k-1}
        let prev = &polys[k - 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            let sub = m[(k - 1) * n + (k - 1)] * c % p;
            next[i] = (next[i] + p - sub) % p;
        }
        // minus h[k-1-i][k-1] * (prod of subdiagonals) * p_{k-1-i}
        let mut subdiag_prod = 1u64;
        for i in 1..k {
            subdiag_prod = subdiag_prod * m[(k - i) * n + (k - i - 1)] % p;
            if subdiag_prod == 0 {
                break;
            }
            let factor = m[(k - 1 - i) * n + (k - 1)] * subdiag_prod % p;
            if factor == 0 {
                continue;
            }
            for (j, &c) in polys[k - 1 - i].iter().enumerate() {
                let sub = factor * c % p;
                next[j] = (next[j] + p - sub) % p;
            }
        }
        polys.push(next);
    }
    Ok(CharPolyModP {
        prime,
        coeffs: polys.pop().expect("n+1 polynomials built"),
    })
}

/// Outcome of a Monte Carlo cospectrality check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CospectralVerdict {
    pub equal: bool,
    pub primes: Vec<u64>,
    /// First prime where the polynomials differed, if any.
    pub first_mismatch: Option<u64>,
}

/// Compares characteristic polynomials modulo `prime_count` random 31-bit
/// primes drawn from `seed`. Graphs of different orders are immediately
/// unequal. Per-prime work runs on worker threads (bounded by the
/// `SRGSWITCH_THREADS` environment variable when set).
pub fn cospectral(a: &Graph, b: &Graph, prime_count: usize, seed: u64) -> CospectralVerdict {
    if a.n() != b.n() {
        return CospectralVerdict {
            equal: false,
            primes: Vec::new(),
            first_mismatch: None,
        };
    }
    let primes = random_primes(prime_count, a.n() as u64, seed);
    if primes.is_empty() {
        return CospectralVerdict { equal: true, primes, first_mismatch: None };
    }
    let mut results: Vec<Option<bool>> = vec![None; primes.len()];
    let threads = effective_threads(primes.len());
    std::thread::scope(|scope| {
        let chunk = primes.len().div_ceil(threads);
        for (tid, slot_chunk) in results.chunks_mut(chunk).enumerate() {
            let primes = &primes;
            scope.spawn(move || {
                for (i, slot) in slot_chunk.iter_mut().enumerate() {
                    let p = primes[tid * chunk + i];
                    let ca = charpoly_mod_p(a, p).expect("sampled prime is valid");
                    let cb = charpoly_mod_p(b, p).expect("sampled prime is valid");
                    *slot = Some(ca.coeffs == cb.coeffs);
                }
            });
        }
    });
    let first_mismatch = results
        .iter()
        .zip(&primes)
        .find(|(r, _)| **r == Some(false))
        .map(|(_, &p)| p);
    CospectralVerdict {
        equal: first_mismatch.is_none(),
        primes,
        first_mismatch,
    }
}

fn effective_threads(jobs: usize) -> usize {
    let hw = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let cap = std::env::var("SRGSWITCH_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(hw);
    cap.min(jobs).max(1)
}

/// `count` distinct 31-bit primes greater than `floor`, drawn from a seeded
/// generator; deterministic per seed.
pub fn random_primes(count: usize, floor: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = (floor + 1).max(1 << 24);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let candidate: u64 = rng.gen_range(lo..1 << 31) | 1;
        if is_prime_u64(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

/// Deterministic Miller-Rabin for u64 (the base set covers the full range).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u128(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    pow_mod_u128(a, p - 2, p)
}

/// The spectrum {k^1, r^f, s^g} of a strongly regular graph, integral cases
/// only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgSpectrum {
    /// (eigenvalue, multiplicity), largest first.
    pub eigenvalues: [(i64, u64); 3],
}

/// Solves the two trace conditions for the restricted eigenvalues
/// `r, s = ((lambda - mu) +- sqrt((lambda-mu)^2 + 4(k-mu))) / 2` and their
/// multiplicities. Conference-graph parameter sets (irrational eigenvalues)
/// are rejected with a distinct error.
pub fn srg_spectrum(p: &SrgParams) -> Result<SrgSpectrum, SpectralError> {
    if !p.feasible() {
        return Err(SpectralError::Infeasible(*p));
    }
    let diff = p.lambda as i64 - p.mu as i64;
    let disc = (diff * diff) as u64 + 4 * (p.k as u64 - p.mu as u64);
    let root = disc.isqrt();
    if root * root != disc {
        return Err(SpectralError::IrrationalEigenvalues(disc));
    }
    let root = root as i64;
    if (diff + root) % 2 != 0 {
        return Err(SpectralError::Infeasible(*p));
    }
    let r = (diff + root) / 2;
    let s = (diff - root) / 2;
    let v1 = (p.v - 1) as i64;
    let num = 2 * p.k as i64 + v1 * diff;
    if root == 0 || num % root != 0 {
        return Err(SpectralError::Infeasible(*p));
    }
    let f2 = v1 - num / root;
    let g2 = v1 + num / root;
    if f2 < 0 || g2 < 0 || f2 % 2 != 0 || g2 % 2 != 0 {
        return Err(SpectralError::Infeasible(*p));
    }
    let spectrum = SrgSpectrum {
        eigenvalues: [
            (p.k as i64, 1),
            (r, (f2 / 2) as u64),
            (s, (g2 / 2) as u64),
        ],
    };
    // trace of A is zero and trace of A^2 is vk
    let trace: i64 = spectrum
        .eigenvalues
        .iter()
        .map(|&(ev, m)| ev * m as i64)
        .sum();
    if trace != 0 {
        return Err(SpectralError::Infeasible(*p));
    }
    Ok(spectrum)
}

/// Expands `prod (x - theta)^m` modulo `prime`; lets tests and verifiers
/// reconcile the closed-form spectrum with `charpoly_mod_p`.
pub fn poly_from_spectrum_mod_p(spectrum: &SrgSpectrum, prime: u64) -> Vec<u64> {
    let p = prime;
    let mut poly = vec![1u64];
    for &(ev, mult) in &spectrum.eigenvalues {
        let root = ev.rem_euclid(p as i64) as u64;
        let neg_root = (p - root) % p;
        for _ in 0..mult {
            let mut next = vec![0u64; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = (next[i + 1] + c) % p;
                next[i] = (next[i] + c * neg_root) % p;
            }
            poly = next;
        }
    }
    poly
}

/// Histogram form of a spectrum (eigenvalue -> multiplicity).
pub fn spectrum_histogram(s: &SrgSpectrum) -> BTreeMap<i64, u64> {
    let mut out = BTreeMap::new();
    for &(ev, m) in &s.eigenvalues {
        *out.entry(ev).or_insert(0) += m;
    }
    out
}
