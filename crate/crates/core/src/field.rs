//! Exact arithmetic in small finite fields GF(p^k) with p^k <= 256.
//!
//! Every element is an index into precomputed lookup tables. Index 0 is the
//! additive identity and index 1 the multiplicative identity; in general the
//! element with index `i` has base-`p` digits equal to the coefficients of
//! its polynomial representative, constant term in the least significant
//! digit. The reduction modulus for each `(p, k)` is the least monic
//! irreducible polynomial of degree `k`, "least" meaning the smallest
//! integer encoding `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of the non-leading
//! coefficients. Fixing the modulus pins the element enumeration, so every
//! ordering derived from it (projective points, graph vertex order, graph6
//! bytes) is stable across runs.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum of 256")]
    TooLarge(u64),
    #[error("conjugation x -> x^(p^(k/2)) needs an even extension degree, got {0}")]
    OddDegree(usize),
    #[error("square classes are defined only for odd field order, got {0}")]
    EvenOrder(u16),
    #[error("zero has no square class")]
    ZeroSquareClass,
}

/// An element of a finite field, identified by its table index.
///
/// A `Felt` is meaningful only relative to the [`FieldTables`] it was drawn
/// from; all arithmetic goes through those tables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Felt(pub u8);

pub const ZERO: Felt = Felt(0);
pub const ONE: Felt = Felt(1);

/// Complete arithmetic tables for one field GF(p^k).
///
/// Immutable after construction; all queries are plain table lookups, so
/// shared references can be used freely from any number of threads.
#[derive(Clone)]
pub struct FieldTables {
    p: u64,
    k: usize,
    order: u16,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Option<Vec<u8>>,
    square: Vec<bool>,
}

impl std::fmt::Debug for FieldTables {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldTables(GF({}^{}))", self.p, self.k)
    }
}

impl FieldTables {
    /// Builds the tables for GF(p^k).
    ///
    /// Fails if `p` is not prime or `p^k > 256`. The modulus is chosen
    /// deterministically (see module docs) and checked irreducible by
    /// exhaustive trial division.
    pub fn new(p: u64, k: usize) -> Result<FieldTables, FieldError> {
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if !is_small_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        let mut order: u64 = 1;
        for _ in 0..k {
            order = order.saturating_mul(p);
            if order > 256 {
                return Err(FieldError::TooLarge(order));
            }
        }
        let order = order as u16;
        let modulus = least_irreducible(p, k);
        debug_assert!(k == 1 || is_irreducible(&modulus, p));

        let size = order as usize;
        let mut add = vec![0u8; size * size];
        let mut neg = vec![0u8; size];
        for a in 0..size {
            let da = digits(a as u64, p, k);
            let mut nd = vec![0u8; k];
            for i in 0..k {
                nd[i] = ((p - da[i] as u64) % p) as u8;
            }
            neg[a] = index(&nd, p) as u8;
            for b in a..size {
                let db = digits(b as u64, p, k);
                let mut sd = vec![0u8; k];
                for i in 0..k {
                    sd[i] = ((da[i] as u64 + db[i] as u64) % p) as u8;
                }
                let s = index(&sd, p) as u8;
                add[a * size + b] = s;
                add[b * size + a] = s;
            }
        }

        let mut mul = vec![0u8; size * size];
        for a in 0..size {
            let da = digits(a as u64, p, k);
            for b in a..size {
                let db = digits(b as u64, p, k);
                let prod = poly_mul_mod(&da, &db, &modulus, p);
                let m = index(&prod, p) as u8;
                mul[a * size + b] = m;
                mul[b * size + a] = m;
            }
        }

        let mut inv = vec![0u8; size];
        for a in 1..size {
            for b in 1..size {
                if mul[a * size + b] == 1 {
                    inv[a] = b as u8;
                    break;
                }
            }
            debug_assert!(inv[a] != 0 || a == 0);
        }

        let frob = if k % 2 == 0 {
            let e = p.pow((k / 2) as u32);
            let mut t = vec![0u8; size];
            for (a, slot) in t.iter_mut().enumerate() {
                *slot = pow_index(&mul, size, a, e);
            }
            Some(t)
        } else {
            None
        };

        let mut square = vec![false; size];
        if order % 2 == 1 {
            for y in 1..size {
                square[mul[y * size + y] as usize] = true;
            }
        }

        Ok(FieldTables {
            p,
            k,
            order,
            modulus,
            add,
            mul,
            neg,
            inv,
            frob,
            square,
        })
    }

    /// Builds the field of the given order, factoring it as p^k.
    pub fn of_order(q: u64) -> Result<FieldTables, FieldError> {
        if q < 2 {
            return Err(FieldError::NonPrime(q));
        }
        if q > 256 {
            return Err(FieldError::TooLarge(q));
        }
        let mut p = 2;
        while p * p <= q {
            if q % p == 0 {
                break;
            }
            p += 1;
        }
        if q % p != 0 {
            p = q; // q itself is prime
        }
        let mut k = 0;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(FieldError::NonPrime(q));
        }
        FieldTables::new(p, k)
    }

    pub fn order(&self) -> u16 {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Coefficients of the reduction modulus, constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.order).map(|i| Felt(i as u8))
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        Felt(self.add[a.0 as usize * self.order as usize + b.0 as usize])
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        Felt(self.mul[a.0 as usize * self.order as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        Felt(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Felt) -> Felt {
        assert!(a != ZERO, "zero has no multiplicative inverse");
        Felt(self.inv[a.0 as usize])
    }

    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        Felt(pow_index(
            &self.mul,
            self.order as usize,
            a.0 as usize,
            e,
        ))
    }

    /// The involutory automorphism x -> x^(p^(k/2)); needs even degree.
    pub fn frobenius(&self, a: Felt) -> Result<Felt, FieldError> {
        match &self.frob {
            Some(t) => Ok(Felt(t[a.0 as usize])),
            None => Err(FieldError::OddDegree(self.k)),
        }
    }

    /// Square-class test by table scan over all y^2. Odd order, nonzero only.
    pub fn is_square(&self, a: Felt) -> Result<bool, FieldError> {
        if self.order % 2 == 0 {
            return Err(FieldError::EvenOrder(self.order));
        }
        if a == ZERO {
            return Err(FieldError::ZeroSquareClass);
        }
        Ok(self.square[a.0 as usize])
    }

    /// Square-class test via the Euler criterion x^((q-1)/2) == 1.
    ///
    /// Independent of [`FieldTables::is_square`]; tests require the two
    /// routes to agree on every nonzero element.
    pub fn is_square_by_pow(&self, a: Felt) -> Result<bool, FieldError> {
        if self.order % 2 == 0 {
            return Err(FieldError::EvenOrder(self.order));
        }
        if a == ZERO {
            return Err(FieldError::ZeroSquareClass);
        }
        Ok(self.pow(a, (self.order as u64 - 1) / 2) == ONE)
    }

    /// The least non-square element in index order (odd order only).
    pub fn least_nonsquare(&self) -> Result<Felt, FieldError> {
        if self.order % 2 == 0 {
            return Err(FieldError::EvenOrder(self.order));
        }
        for a in 2..self.order {
            if !self.square[a as usize] {
                return Ok(Felt(a as u8));
            }
        }
        unreachable!("odd field order implies a non-square exists")
    }
}

#[inline]
fn pow_index(mul: &[u8], size: usize, a: usize, mut e: u64) -> u8 {
    let mut base = a;
    let mut acc = 1usize;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul[acc * size + base] as usize;
        }
        base = mul[base * size + base] as usize;
        e >>= 1;
    }
    acc as u8
}

fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut x: u64, p: u64, k: usize) -> Vec<u8> {
    let mut d = vec![0u8; k];
    for slot in d.iter_mut() {
        *slot = (x % p) as u8;
        x /= p;
    }
    d
}

fn index(d: &[u8], p: u64) -> u64 {
    let mut x = 0u64;
    for &c in d.iter().rev() {
        x = x * p + c as u64;
    }
    x
}

/// Product of two coefficient vectors reduced mod `modulus`, all over GF(p).
fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8], p: u64) -> Vec<u8> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
        }
    }
    // reduce: x^k = -(modulus minus leading term)
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            let m = modulus[j] as u64;
            if m != 0 {
                let sub = (c * m) % p;
                prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
            }
        }
    }
    prod.truncate(k.max(1));
    prod.iter().map(|&c| c as u8).collect()
}

/// Remainder of `a` divided by monic `b` over GF(p). Coefficients low-first.
fn poly_rem(a: &[u8], b: &[u8], p: u64) -> Vec<u8> {
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    while r.len() > db {
        let lead = *r.last().unwrap();
        let top = r.len() - 1;
        if lead != 0 {
            for j in 0..db {
                let sub = (lead * b[j] as u64) % p;
                r[top - db + j] = (r[top - db + j] + p - sub) % p;
            }
        }
        r.pop();
    }
    r.iter().map(|&c| c as u8).collect()
}

fn is_zero_poly(a: &[u8]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Exhaustive irreducibility check: trial-divides by every monic polynomial
/// of degree 1..=deg/2. Only runs at table-construction sizes.
fn is_irreducible(f: &[u8], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for enc in 0..count {
            let mut g = digits(enc, p, d);
            g.push(1); // monic
            if is_zero_poly(&poly_rem(f, &g, p)) {
                return false;
            }
        }
    }
    true
}

/// The least monic irreducible polynomial of degree k over GF(p), ordered by
/// the integer encoding of the non-leading coefficients.
fn least_irreducible(p: u64, k: usize) -> Vec<u8> {
    if k == 1 {
        return vec![0, 1]; // x; GF(p)[x]/(x) = GF(p)
    }
    let count = p.pow(k as u32);
    for enc in 0..count {
        let mut f = digits(enc, p, k);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}
