//! Finite classical polar spaces: forms, perps, isotropy, subspaces, and
//! point classification.
//!
//! All six families are supported through a fixed standard form per
//! `(kind, n, q)`:
//!
//! * symplectic `Sp(2d, q)` — antidiagonal pair blocks;
//! * parabolic `O(2d+1, q)` — one diagonal term plus `d` hyperbolic pairs,
//!   the diagonal coefficient calibrated so that a point has a square form
//!   value exactly when its perp is a hyperbolic quadric;
//! * hyperbolic `O+(2d, q)` — `d` hyperbolic pairs;
//! * elliptic `O-(2d+2, q)` — `d` hyperbolic pairs plus the anisotropic
//!   binary form `x^2 - v y^2`, `v` the least non-square;
//! * hermitian `U(n, sqrt(q))` — the identity Gram matrix with conjugation
//!   `x -> x^sqrt(q)`.
//!
//! Quadratic kinds require odd `q`. Projective points are normalized so the
//! first nonzero coordinate is one; subspaces are kept in reduced row
//! echelon form, which makes equality and hashing structural.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Felt, FieldError, FieldTables, ONE, ZERO};
use crate::linalg;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("inconsistent polar space parameters ({kind:?}, n={n}, q={q}): {reason}")]
    InconsistentParameters {
        kind: FormKind,
        n: usize,
        q: u64,
        reason: &'static str,
    },
    #[error("expected a line (dimension 2), got dimension {0}")]
    NotALine(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("the given subspace is not the radical of the larger one")]
    RadicalMismatch,
    #[error("form calibration failed for the parabolic quadric")]
    CalibrationFailed,
    #[error("restriction is not a nondegenerate even-dimensional quadratic space")]
    BadRestriction,
}

/// The five form kinds behind the six classical polar space families
/// (hermitian covers both even and odd ambient dimension).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Symplectic,
    Parabolic,
    Hyperbolic,
    Elliptic,
    Hermitian,
}

impl FormKind {
    pub fn is_quadratic(self) -> bool {
        matches!(self, FormKind::Parabolic | FormKind::Hyperbolic | FormKind::Elliptic)
    }
}

/// Square class of a nonzero form value (odd characteristic quadrics).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    Isotropic,
    /// Non-isotropic with square form value (quadratic kinds, odd q).
    Plus,
    /// Non-isotropic with non-square form value.
    Minus,
    /// Non-isotropic, no square-class distinction (hermitian / symplectic).
    Nonisotropic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointFilter {
    All,
    Isotropic,
    Nonisotropic,
    Class(Sign),
}

impl PointFilter {
    pub fn accepts(self, class: PointClass) -> bool {
        match self {
            PointFilter::All => true,
            PointFilter::Isotropic => class == PointClass::Isotropic,
            PointFilter::Nonisotropic => class != PointClass::Isotropic,
            PointFilter::Class(Sign::Plus) => class == PointClass::Plus,
            PointFilter::Class(Sign::Minus) => class == PointClass::Minus,
        }
    }
}

/// Classification of a line (2-space) by its radical and isotropic points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineClass {
    Hyperbolic,
    Elliptic,
    Tangent,
    TotallyIsotropic,
    HermitianNondeg,
    HermitianTangent,
}

/// A 1-space of GF(q)^n, stored as the unique representative whose first
/// nonzero coordinate is one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<Felt>,
}

impl ProjectivePoint {
    /// Normalizes a nonzero vector; returns `None` for the zero vector.
    pub fn normalize(f: &FieldTables, coords: &[Felt]) -> Option<ProjectivePoint> {
        let lead = coords.iter().position(|&c| c != ZERO)?;
        let scale = f.inv(coords[lead]);
        let coords = coords.iter().map(|&c| f.mul(scale, c)).collect();
        Some(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[Felt] {
        &self.coords
    }

    pub fn dim_ambient(&self) -> usize {
        self.coords.len()
    }

    /// Canonical textual encoding, e.g. `(1,0,2)`; coordinates are element
    /// indices of the field enumeration.
    pub fn label(&self) -> String {
        let inner: Vec<String> = self.coords.iter().map(|c| c.0.to_string()).collect();
        format!("({})", inner.join(","))
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A subspace of GF(q)^n in reduced row echelon form. Two equal subspaces
/// always have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Felt>>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { n, rows: Vec::new() }
    }

    pub fn from_vectors(f: &FieldTables, n: usize, vectors: &[Vec<Felt>]) -> Subspace {
        debug_assert!(vectors.iter().all(|v| v.len() == n));
        Subspace {
            n,
            rows: linalg::rref(f, vectors),
        }
    }

    pub fn from_point(p: &ProjectivePoint) -> Subspace {
        Subspace {
            n: p.dim_ambient(),
            rows: vec![p.coords().to_vec()],
        }
    }

    pub fn span(f: &FieldTables, a: &Subspace, b: &Subspace) -> Subspace {
        debug_assert_eq!(a.n, b.n);
        let mut rows = a.rows.clone();
        rows.extend(b.rows.iter().cloned());
        Subspace::from_vectors(f, a.n, &rows)
    }

    /// Intersection of row spaces, via standard-dot-product complements.
    pub fn intersect(f: &FieldTables, a: &Subspace, b: &Subspace) -> Subspace {
        debug_assert_eq!(a.n, b.n);
        let mut stacked = linalg::null_space(f, &a.rows, a.n);
        stacked.extend(linalg::null_space(f, &b.rows, b.n));
        Subspace {
            n: a.n,
            rows: linalg::null_space(f, &stacked, a.n),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn dim_ambient(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Felt>] {
        &self.rows
    }

    /// Reduces `v` against the echelon basis; the remainder is zero exactly
    /// when `v` lies in the subspace.
    fn reduce_vector(&self, f: &FieldTables, v: &[Felt]) -> Vec<Felt> {
        let mut v = v.to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|&c| c != ZERO).expect("nonzero row");
            if v[pivot] != ZERO {
                let factor = v[pivot];
                for c in 0..self.n {
                    let sub = f.mul(factor, row[c]);
                    v[c] = f.sub(v[c], sub);
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, f: &FieldTables, v: &[Felt]) -> bool {
        self.reduce_vector(f, v).iter().all(|&c| c == ZERO)
    }

    pub fn contains_point(&self, f: &FieldTables, p: &ProjectivePoint) -> bool {
        self.contains_vector(f, p.coords())
    }

    pub fn contains_subspace(&self, f: &FieldTables, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_vector(f, r))
    }

    /// All projective points of the subspace, in the canonical coordinate
    /// order of the ambient space.
    pub fn points(&self, f: &FieldTables) -> Vec<ProjectivePoint> {
        let q = f.order() as u64;
        let d = self.dim();
        let mut set = HashSet::new();
        let mut coeffs = vec![ZERO; d];
        let total = q.pow(d as u32);
        for enc in 1..total {
            let mut e = enc;
            for c in coeffs.iter_mut() {
                *c = Felt((e % q) as u8);
                e /= q;
            }
            let mut v = vec![ZERO; self.n];
            for (row, &c) in self.rows.iter().zip(&coeffs) {
                if c != ZERO {
                    for i in 0..self.n {
                        v[i] = f.add(v[i], f.mul(c, row[i]));
                    }
                }
            }
            if let Some(p) = ProjectivePoint::normalize(f, &v) {
                set.insert(p);
            }
        }
        let mut pts: Vec<ProjectivePoint> = set.into_iter().collect();
        pts.sort();
        pts
    }

    /// Flattened coefficient bytes; the canonical sort key for enumeration.
    pub fn key(&self) -> Vec<u8> {
        let mut k = Vec::with_capacity(self.rows.len() * self.n);
        for row in &self.rows {
            k.extend(row.iter().map(|c| c.0));
        }
        k
    }

    pub fn label(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let inner: Vec<String> = r.iter().map(|c| c.0.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        format!("[{}]", rows.join(" "))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// All projective points of GF(q)^n in lexicographic coordinate order
/// (first coordinate most significant). This order fixes every derived
/// vertex numbering.
pub fn projective_points(f: &FieldTables, n: usize) -> Vec<ProjectivePoint> {
    let q = f.order() as u64;
    let total = q.pow(n as u32);
    let mut pts = Vec::new();
    let mut coords = vec![ZERO; n];
    for enc in 1..total {
        let mut e = enc;
        for i in (0..n).rev() {
            coords[i] = Felt((e % q) as u8);
            e /= q;
        }
        // keep only normalized representatives
        let lead = coords.iter().position(|&c| c != ZERO).unwrap();
        if coords[lead] == ONE {
            pts.push(ProjectivePoint {
                coords: coords.clone(),
            });
        }
    }
    pts
}

/// Extension-based subspace enumeration constraints. `through` seeds the
/// search, `inside` restricts candidate points, `totally_isotropic` prunes
/// during extension, and `radical_equals` post-filters.
#[derive(Clone, Default)]
pub struct SubspaceFilter {
    pub totally_isotropic: bool,
    pub through: Option<Subspace>,
    pub inside: Option<Subspace>,
    pub radical_equals: Option<Subspace>,
}

/// A polar space: a nondegenerate form of the given kind on GF(q)^n.
pub struct PolarSpace {
    kind: FormKind,
    n: usize,
    field: FieldTables,
    gram: Vec<Vec<Felt>>,
    quad: Option<Vec<Vec<Felt>>>,
    rank: usize,
    qe: u64,
}

impl fmt::Debug for PolarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PolarSpace({:?}, n={}, q={})",
            self.kind,
            self.n,
            self.field.order()
        )
    }
}

impl PolarSpace {
    /// The fixed standard polar space for `(kind, n, q)`.
    pub fn standard(kind: FormKind, n: usize, q: u64) -> Result<PolarSpace, GeometryError> {
        let field = FieldTables::of_order(q)?;
        let bad = |reason| GeometryError::InconsistentParameters { kind, n, q, reason };
        match kind {
            FormKind::Symplectic => {
                if n < 2 || n % 2 != 0 {
                    return Err(bad("symplectic spaces need even dimension >= 2"));
                }
            }
            FormKind::Parabolic => {
                if n < 3 || n % 2 != 1 {
                    return Err(bad("parabolic quadrics need odd dimension >= 3"));
                }
                if q % 2 == 0 {
                    return Err(bad("quadrics are supported in odd characteristic only"));
                }
            }
            FormKind::Hyperbolic | FormKind::Elliptic => {
                if n < 2 || n % 2 != 0 {
                    return Err(bad("even-dimensional quadrics need even dimension >= 2"));
                }
                if q % 2 == 0 {
                    return Err(bad("quadrics are supported in odd characteristic only"));
                }
            }
            FormKind::Hermitian => {
                if field.degree() % 2 != 0 {
                    return Err(bad("hermitian forms need a square field order"));
                }
                if n < 1 {
                    return Err(bad("hermitian spaces need dimension >= 1"));
                }
            }
        }

        let space = match kind {
            FormKind::Parabolic => {
                // Calibrate the diagonal coefficient so that square form
                // values correspond to hyperbolic point perps.
                let candidates = [ONE, field.least_nonsquare()?];
                let mut found = None;
                for c in candidates {
                    let sp = Self::build(kind, n, field.clone(), Some(c))?;
                    if sp.parabolic_calibrated()? {
                        found = Some(sp);
                        break;
                    }
                }
                found.ok_or(GeometryError::CalibrationFailed)?
            }
            _ => Self::build(kind, n, field, None)?,
        };

        // Non-degeneracy: the perp of the full space must be zero.
        let full = Subspace::from_vectors(
            &space.field,
            n,
            &(0..n)
                .map(|i| {
                    let mut v = vec![ZERO; n];
                    v[i] = ONE;
                    v
                })
                .collect::<Vec<_>>(),
        );
        if !space.perp(&full).is_zero() {
            return Err(GeometryError::InconsistentParameters {
                kind,
                n,
                q,
                reason: "standard form is degenerate",
            });
        }
        Ok(space)
    }

    fn build(
        kind: FormKind,
        n: usize,
        field: FieldTables,
        parabolic_coeff: Option<Felt>,
    ) -> Result<PolarSpace, GeometryError> {
        let q = field.order() as u64;
        let mut quad: Option<Vec<Vec<Felt>>> = None;
        let mut gram = vec![vec![ZERO; n]; n];
        let rank;
        let qe;
        match kind {
            FormKind::Symplectic => {
                for i in 0..n / 2 {
                    gram[2 * i][2 * i + 1] = ONE;
                    gram[2 * i + 1][2 * i] = field.neg(ONE);
                }
                rank = n / 2;
                qe = q;
            }
            FormKind::Parabolic => {
                let mut m = vec![vec![ZERO; n]; n];
                m[0][0] = parabolic_coeff.unwrap_or(ONE);
                for i in 0..(n - 1) / 2 {
                    m[2 * i + 1][2 * i + 2] = ONE;
                }
                gram = gram_of_quad(&field, &m);
                quad = Some(m);
                rank = (n - 1) / 2;
                qe = q;
            }
            FormKind::Hyperbolic => {
                let mut m = vec![vec![ZERO; n]; n];
                for i in 0..n / 2 {
                    m[2 * i][2 * i + 1] = ONE;
                }
                gram = gram_of_quad(&field, &m);
                quad = Some(m);
                rank = n / 2;
                qe = 1;
            }
            FormKind::Elliptic => {
                let mut m = vec![vec![ZERO; n]; n];
                for i in 0..(n - 2) / 2 {
                    m[2 * i][2 * i + 1] = ONE;
                }
                // anisotropic tail x^2 - v y^2 with v a non-square
                let v = field.least_nonsquare()?;
                m[n - 2][n - 2] = ONE;
                m[n - 1][n - 1] = field.neg(v);
                gram = gram_of_quad(&field, &m);
                quad = Some(m);
                rank = (n - 2) / 2;
                qe = q * q;
            }
            FormKind::Hermitian => {
                for (i, row) in gram.iter_mut().enumerate() {
                    row[i] = ONE;
                }
                rank = n / 2;
                let root = field.characteristic().pow((field.degree() / 2) as u32);
                qe = if n % 2 == 0 { root } else { root * root * root };
            }
        }
        Ok(PolarSpace {
            kind,
            n,
            field,
            gram,
            quad,
            rank,
            qe,
        })
    }

    /// Checks the parabolic convention: square form value iff hyperbolic
    /// perp, on one witness point of each square class.
    fn parabolic_calibrated(&self) -> Result<bool, GeometryError> {
        let mut seen_plus = false;
        let mut seen_minus = false;
        for p in projective_points(&self.field, self.n) {
            let class = self.classify_point(&p)?;
            let want = match class {
                PointClass::Plus if !seen_plus => Sign::Plus,
                PointClass::Minus if !seen_minus => Sign::Minus,
                _ => continue,
            };
            let perp = self.perp(&Subspace::from_point(&p));
            let got = self.witt_sign_of_restriction(&perp)?;
            if got != want {
                return Ok(false);
            }
            match want {
                Sign::Plus => seen_plus = true,
                Sign::Minus => seen_minus = true,
            }
            if seen_plus && seen_minus {
                return Ok(true);
            }
        }
        Err(GeometryError::CalibrationFailed)
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim_ambient(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldTables {
        &self.field
    }

    /// Witt index: the dimension of a maximal totally isotropic subspace.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `q^e` where each isotropic (d-1)-space lies in `q^e + 1` maximal
    /// totally isotropic subspaces. Stored as the integer count minus one so
    /// the hermitian half-integer exponents need no fractions.
    pub fn maximals_per_coline_minus_one(&self) -> u64 {
        self.qe
    }

    pub fn gram(&self) -> &[Vec<Felt>] {
        &self.gram
    }

    /// The bilinear (or sesquilinear) pairing behind the polarity.
    pub fn pair(&self, x: &[Felt], y: &[Felt]) -> Felt {
        let f = &self.field;
        let mut acc = ZERO;
        match self.kind {
            FormKind::Hermitian => {
                for (i, &xi) in x.iter().enumerate() {
                    if xi == ZERO {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        let g = self.gram[i][j];
                        if g == ZERO || yj == ZERO {
                            continue;
                        }
                        let c = f.frobenius(yj).expect("hermitian field has even degree");
                        acc = f.add(acc, f.mul(f.mul(xi, g), c));
                    }
                }
            }
            _ => {
                for (i, &xi) in x.iter().enumerate() {
                    if xi == ZERO {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        let g = self.gram[i][j];
                        if g == ZERO || yj == ZERO {
                            continue;
                        }
                        acc = f.add(acc, f.mul(f.mul(xi, g), yj));
                    }
                }
            }
        }
        acc
    }

    pub fn orthogonal(&self, x: &[Felt], y: &[Felt]) -> bool {
        self.pair(x, y) == ZERO
    }

    /// Form value of a vector: the quadratic form for quadrics, `H(x,x)`
    /// for hermitian spaces, zero for symplectic ones.
    pub fn evaluate_vector(&self, x: &[Felt]) -> Felt {
        let f = &self.field;
        match self.kind {
            FormKind::Symplectic => ZERO,
            FormKind::Hermitian => self.pair(x, x),
            _ => {
                let quad = self.quad.as_ref().expect("quadratic kind has coefficients");
                let mut acc = ZERO;
                for (i, &xi) in x.iter().enumerate() {
                    if xi == ZERO {
                        continue;
                    }
                    for (j, &xj) in x.iter().enumerate().skip(i) {
                        let c = quad[i][j];
                        if c != ZERO && xj != ZERO {
                            acc = f.add(acc, f.mul(c, f.mul(xi, xj)));
                        }
                    }
                }
                acc
            }
        }
    }

    pub fn evaluate(&self, x: &ProjectivePoint) -> Felt {
        self.evaluate_vector(x.coords())
    }

    pub fn is_isotropic(&self, x: &ProjectivePoint) -> bool {
        self.evaluate(x) == ZERO
    }

    /// The polarity: all vectors pairing to zero with the subspace.
    /// `dim(perp(s)) = n - dim(s)` and `perp(perp(s)) = s`.
    pub fn perp(&self, s: &Subspace) -> Subspace {
        let f = &self.field;
        let mut system: Vec<Vec<Felt>> = Vec::with_capacity(s.dim());
        for row in s.basis() {
            // (row * G), conjugated entrywise for hermitian forms, gives a
            // linear functional whose kernel is the perp condition.
            let mut func = vec![ZERO; self.n];
            for j in 0..self.n {
                let mut acc = ZERO;
                for (i, &ri) in row.iter().enumerate() {
                    if ri != ZERO && self.gram[i][j] != ZERO {
                        acc = f.add(acc, f.mul(ri, self.gram[i][j]));
                    }
                }
                func[j] = match self.kind {
                    FormKind::Hermitian => {
                        f.frobenius(acc).expect("hermitian field has even degree")
                    }
                    _ => acc,
                };
            }
            system.push(func);
        }
        Subspace {
            n: self.n,
            rows: linalg::null_space(f, &system, self.n),
        }
    }

    /// `s` intersected with its perp.
    pub fn radical(&self, s: &Subspace) -> Subspace {
        Subspace::intersect(&self.field, s, &self.perp(s))
    }

    pub fn is_totally_isotropic(&self, s: &Subspace) -> bool {
        let perp = self.perp(s);
        if !perp.contains_subspace(&self.field, s) {
            return false;
        }
        match self.kind {
            FormKind::Symplectic => true,
            _ => s
                .basis()
                .iter()
                .all(|row| self.evaluate_vector(row) == ZERO),
        }
    }

    pub fn classify_point(&self, x: &ProjectivePoint) -> Result<PointClass, GeometryError> {
        let value = self.evaluate(x);
        if value == ZERO {
            return Ok(PointClass::Isotropic);
        }
        if self.kind.is_quadratic() {
            Ok(if self.field.is_square(value)? {
                PointClass::Plus
            } else {
                PointClass::Minus
            })
        } else {
            Ok(PointClass::Nonisotropic)
        }
    }

    /// Classifies a line by its radical dimension and isotropic point count.
    pub fn classify_line(&self, line: &Subspace) -> Result<LineClass, GeometryError> {
        if line.dim() != 2 {
            return Err(GeometryError::NotALine(line.dim()));
        }
        let rad = self.radical(line).dim();
        if rad == 2 {
            return Ok(LineClass::TotallyIsotropic);
        }
        match self.kind {
            FormKind::Symplectic => Ok(match rad {
                0 => LineClass::Hyperbolic,
                _ => LineClass::Tangent,
            }),
            FormKind::Hermitian => Ok(match rad {
                0 => LineClass::HermitianNondeg,
                _ => LineClass::HermitianTangent,
            }),
            _ => {
                if rad == 1 {
                    return Ok(LineClass::Tangent);
                }
                let isotropic = line
                    .points(&self.field)
                    .iter()
                    .filter(|p| self.is_isotropic(p))
                    .count();
                match isotropic {
                    2 => Ok(LineClass::Hyperbolic),
                    0 => Ok(LineClass::Elliptic),
                    _ => Err(GeometryError::BadRestriction),
                }
            }
        }
    }

    /// Classification of the induced form on `big / small`, where `small`
    /// must be the radical of `big` and `dim(big) = dim(small) + 2`. The
    /// induced form is computed on a complement of `small` inside `big`.
    pub fn quotient_line(&self, big: &Subspace, small: &Subspace) -> Result<LineClass, GeometryError> {
        if big.dim() != small.dim() + 2 {
            return Err(GeometryError::DimensionMismatch(
                "quotient needs dim(big) = dim(small) + 2",
            ));
        }
        if self.radical(big) != *small {
            return Err(GeometryError::RadicalMismatch);
        }
        let f = &self.field;
        let mut acc = small.rows.clone();
        let mut complement = Vec::new();
        for row in big.basis() {
            let mut trial = acc.clone();
            trial.push(row.clone());
            if linalg::rank(f, &trial) > acc.len() {
                acc = linalg::rref(f, &trial);
                complement.push(row.clone());
            }
        }
        debug_assert_eq!(complement.len(), 2);
        let w = Subspace::from_vectors(f, self.n, &complement);
        self.classify_line(&w)
    }

    /// Witt type of the form restricted to an even-dimensional nondegenerate
    /// subspace, decided by exhaustively counting isotropic points of the
    /// restriction and matching the hyperbolic/elliptic count formulas.
    pub fn witt_sign_of_restriction(&self, s: &Subspace) -> Result<Sign, GeometryError> {
        let m = s.dim();
        if !self.kind.is_quadratic() || m == 0 || m % 2 != 0 {
            return Err(GeometryError::BadRestriction);
        }
        let f = &self.field;
        let q = f.order() as u64;
        let mut isotropic = 0u64;
        for coeffs in projective_points(f, m) {
            let mut v = vec![ZERO; self.n];
            for (row, &c) in s.basis().iter().zip(coeffs.coords()) {
                if c != ZERO {
                    for i in 0..self.n {
                        v[i] = f.add(v[i], f.mul(c, row[i]));
                    }
                }
            }
            if self.evaluate_vector(&v) == ZERO {
                isotropic += 1;
            }
        }
        let h = (m / 2) as u32;
        let plus = (q.pow(h) - 1) * (q.pow(h - 1) + 1) / (q - 1);
        let minus = (q.pow(h) + 1) * (q.pow(h - 1).saturating_sub(1)) / (q - 1);
        if isotropic == plus {
            Ok(Sign::Plus)
        } else if isotropic == minus {
            Ok(Sign::Minus)
        } else {
            Err(GeometryError::BadRestriction)
        }
    }

    /// All projective points matching the filter, in canonical order.
    pub fn enumerate_points(&self, filter: PointFilter) -> Result<Vec<ProjectivePoint>, GeometryError> {
        let mut out = Vec::new();
        for p in projective_points(&self.field, self.n) {
            if filter.accepts(self.classify_point(&p)?) {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// All subspaces of the given dimension matching the filter, found by
    /// exhaustive extension with echelon-form deduplication, sorted by the
    /// canonical coefficient key.
    pub fn enumerate_subspaces(
        &self,
        dim: usize,
        filter: &SubspaceFilter,
    ) -> Result<Vec<Subspace>, GeometryError> {
        if dim > self.n {
            return Err(GeometryError::DimensionMismatch(
                "requested dimension exceeds the ambient space",
            ));
        }
        let f = &self.field;
        let seed = filter.through.clone().unwrap_or_else(|| Subspace::zero(self.n));
        if filter.totally_isotropic && !self.is_totally_isotropic(&seed) {
            return Ok(Vec::new());
        }
        let candidates: Vec<ProjectivePoint> = match &filter.inside {
            Some(container) => container.points(f),
            None => projective_points(f, self.n),
        };
        let candidates: Vec<ProjectivePoint> = if filter.totally_isotropic {
            candidates
                .into_iter()
                .filter(|p| self.is_isotropic(p))
                .collect()
        } else {
            candidates
        };

        let mut level: Vec<Subspace> = vec![seed.clone()];
        let mut current_dim = seed.dim();
        while current_dim < dim {
            let mut seen: HashSet<Vec<u8>> = HashSet::new();
            let mut next = Vec::new();
            for s in &level {
                for p in &candidates {
                    if s.contains_point(f, p) {
                        continue;
                    }
                    if filter.totally_isotropic
                        && !s.basis().iter().all(|row| self.orthogonal(row, p.coords()))
                    {
                        continue;
                    }
                    let ext = Subspace::span(f, s, &Subspace::from_point(p));
                    debug_assert_eq!(ext.dim(), s.dim() + 1);
                    if seen.insert(ext.key()) {
                        next.push(ext);
                    }
                }
            }
            level = next;
            current_dim += 1;
            if level.is_empty() {
                break;
            }
        }
        let mut out: Vec<Subspace> = level
            .into_iter()
            .filter(|s| s.dim() == dim)
            .filter(|s| match &filter.radical_equals {
                Some(r) => self.radical(s) == *r,
                None => true,
            })
            .collect();
        out.sort_by_key(|a| a.key());
        Ok(out)
    }

    /// Lines through a fixed point, optionally restricted by the filter.
    pub fn lines_through(
        &self,
        p: &ProjectivePoint,
        filter: &SubspaceFilter,
    ) -> Result<Vec<Subspace>, GeometryError> {
        let mut filter = filter.clone();
        filter.through = Some(Subspace::from_point(p));
        self.enumerate_subspaces(2, &filter)
    }
}

fn gram_of_quad(f: &FieldTables, quad: &[Vec<Felt>]) -> Vec<Vec<Felt>> {
    let n = quad.len();
    let mut gram = vec![vec![ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                gram[i][i] = f.add(quad[i][i], quad[i][i]);
            } else {
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                gram[i][j] = quad[a][b];
            }
        }
    }
    gram
}

/// All subspaces of a given dimension of plain GF(q)^n (no form involved),
/// in canonical order. Used by the design constructions.
pub fn subspaces_of(f: &FieldTables, n: usize, dim: usize) -> Vec<Subspace> {
    let points = projective_points(f, n);
    let mut level: Vec<Subspace> = vec![Subspace::zero(n)];
    for _ in 0..dim {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut next = Vec::new();
        for s in &level {
            for p in &points {
                if s.contains_point(f, p) {
                    continue;
                }
                let ext = Subspace::span(f, s, &Subspace::from_point(p));
                if seen.insert(ext.key()) {
                    next.push(ext);
                }
            }
        }
        level = next;
    }
    level.sort_by_key(|a| a.key());
    level
}
