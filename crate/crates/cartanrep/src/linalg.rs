//! Exact dense linear algebra over the rationals and prime fields.
//!
//! Everything downstream runs on [`Mat`]: reduced row-echelon form, rank,
//! nullspace, solving, inversion. Matrices are dense, row-major, and
//! immutable in spirit (all operations return fresh values). The scalar type
//! is generic; [`Q`] (arbitrary-precision rationals) and [`Fp`] (prime field
//! with runtime modulus) are the two instantiations.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// Arbitrary-precision rational scalar.
pub type Q = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("mixed fields: {0} vs {1}")]
    MixedFields(FieldDescriptor, FieldDescriptor),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("bad matrix JSON: {0}")]
    BadJson(String),
}

/// The ground field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
}

impl FieldDescriptor {
    /// Validates the modulus of a prime field.
    pub fn new_prime_field(p: u64) -> Result<Self, LinalgError> {
        if is_prime(p) {
            Ok(FieldDescriptor::PrimeField(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            FieldDescriptor::Rationals => json!({"kind": "q"}),
            FieldDescriptor::PrimeField(p) => json!({"kind": "fp", "p": p.to_string()}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, LinalgError> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| LinalgError::BadJson("field.kind missing".into()))?;
        match kind {
            "q" => Ok(FieldDescriptor::Rationals),
            "fp" => {
                let p = match v.get("p") {
                    Some(Value::String(s)) => s
                        .parse::<u64>()
                        .map_err(|e| LinalgError::BadJson(format!("field.p: {e}")))?,
                    Some(Value::Number(n)) => n
                        .as_u64()
                        .ok_or_else(|| LinalgError::BadJson("field.p not a u64".into()))?,
                    _ => return Err(LinalgError::BadJson("field.p missing".into())),
                };
                FieldDescriptor::new_prime_field(p)
            }
            other => Err(LinalgError::BadJson(format!(
                "unknown field kind {other:?}"
            ))),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    // Deterministic Miller-Rabin for u64.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        let mut r = d;
        while r != n - 1 {
            x = mul_mod(x, x, n);
            r <<= 1;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Field scalar usable as a matrix entry.
///
/// The trait is satisfied by exact fields only; construction always goes
/// through a [`FieldDescriptor`] so prime-field values know their modulus.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_int(n: i64, field: FieldDescriptor) -> Self;
    fn from_bigint(n: &BigInt, field: FieldDescriptor) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Uniform-ish random element suitable for isomorphism certificates.
    fn random(rng: &mut dyn rand::RngCore, field: FieldDescriptor) -> Self;
    fn to_json_entry(&self) -> Value;
    fn from_json_entry(v: &Value, field: FieldDescriptor) -> Result<Self, LinalgError>;
}

fn parse_bigint(s: &str) -> Result<BigInt, LinalgError> {
    s.parse::<BigInt>()
        .map_err(|e| LinalgError::BadJson(format!("bad integer {s:?}: {e}")))
}

impl Scalar for Q {
    fn from_int(n: i64, _field: FieldDescriptor) -> Self {
        Q::from_integer(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt, _field: FieldDescriptor) -> Self {
        Q::from_integer(n.clone())
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Q::one() / self.clone())
        }
    }

    fn random(rng: &mut dyn rand::RngCore, _field: FieldDescriptor) -> Self {
        // Small integers keep certificate matrices readable and fast.
        let n = (rng.next_u32() % 7) as i64 - 3;
        Q::from_integer(BigInt::from(n))
    }

    fn to_json_entry(&self) -> Value {
        json!([self.numer().to_string(), self.denom().to_string()])
    }

    fn from_json_entry(v: &Value, _field: FieldDescriptor) -> Result<Self, LinalgError> {
        match v {
            Value::Array(parts) if parts.len() == 2 => {
                let num = match &parts[0] {
                    Value::String(s) => parse_bigint(s)?,
                    Value::Number(n) => BigInt::from(n.as_i64().ok_or_else(|| {
                        LinalgError::BadJson(format!("numerator {n} not an i64"))
                    })?),
                    other => return Err(LinalgError::BadJson(format!("bad numerator {other}"))),
                };
                let den = match &parts[1] {
                    Value::String(s) => parse_bigint(s)?,
                    Value::Number(n) => BigInt::from(n.as_i64().ok_or_else(|| {
                        LinalgError::BadJson(format!("denominator {n} not an i64"))
                    })?),
                    other => return Err(LinalgError::BadJson(format!("bad denominator {other}"))),
                };
                if den.is_zero() {
                    return Err(LinalgError::BadJson("zero denominator".into()));
                }
                Ok(Q::new(num, den))
            }
            Value::Number(n) => Ok(Q::from_integer(BigInt::from(
                n.as_i64()
                    .ok_or_else(|| LinalgError::BadJson(format!("entry {n} not an i64")))?,
            ))),
            Value::String(s) => {
                if let Some((num, den)) = s.split_once('/') {
                    let den = parse_bigint(den)?;
                    if den.is_zero() {
                        return Err(LinalgError::BadJson("zero denominator".into()));
                    }
                    Ok(Q::new(parse_bigint(num)?, den))
                } else {
                    Ok(Q::from_integer(parse_bigint(s)?))
                }
            }
            other => Err(LinalgError::BadJson(format!("bad rational entry {other}"))),
        }
    }
}

/// Prime-field element carrying its modulus.
///
/// `Zero::zero()`/`One::one()` cannot know a modulus, so they return
/// transient values with `p = 0` that adopt the other operand's modulus on
/// the first arithmetic operation. Every value built through [`Scalar`]
/// constructors is bound (`p > 0`) and reduced.
#[derive(Debug, Clone, Copy, Eq)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    fn bind(v: u64, p: u64) -> Self {
        debug_assert!(p > 0);
        Fp { v: v % p, p }
    }

    fn unify(a: Fp, b: Fp) -> (u64, u64, u64) {
        let p = match (a.p, b.p) {
            (0, 0) => 0,
            (0, p) | (p, 0) => p,
            (p, q) => {
                assert_eq!(p, q, "mixed prime-field moduli {p} and {q}");
                p
            }
        };
        if p == 0 {
            (a.v, b.v, 0)
        } else {
            (a.v % p, b.v % p, p)
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.v
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = Fp::unify(*self, *other);
        a == b
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            Fp { v: a + b, p: 0 }
        } else {
            Fp { v: (a + b) % p, p }
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        if p == 0 {
            Fp { v: a * b, p: 0 }
        } else {
            Fp {
                v: mul_mod(a, b, p),
                p,
            }
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.p == 0 {
            assert!(self.v <= 1, "cannot negate unbound prime-field value");
            if self.v == 0 {
                self
            } else {
                panic!("cannot negate unbound prime-field one");
            }
        } else {
            Fp {
                v: (self.p - self.v % self.p) % self.p,
                p: self.p,
            }
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    // Field division is multiplication by the inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
    fn is_one(&self) -> bool {
        if self.p == 0 {
            self.v == 1
        } else {
            self.v % self.p == 1 % self.p
        }
    }
}

impl Scalar for Fp {
    fn from_int(n: i64, field: FieldDescriptor) -> Self {
        let p = match field {
            FieldDescriptor::PrimeField(p) => p,
            FieldDescriptor::Rationals => panic!("Fp value requested over the rationals"),
        };
        let r = n.rem_euclid(p as i64) as u64;
        Fp::bind(r, p)
    }

    fn from_bigint(n: &BigInt, field: FieldDescriptor) -> Self {
        let p = match field {
            FieldDescriptor::PrimeField(p) => p,
            FieldDescriptor::Rationals => panic!("Fp value requested over the rationals"),
        };
        let m = BigInt::from(p);
        let r = ((n % &m) + &m) % &m;
        let (_, digits) = r.to_u64_digits();
        Fp::bind(digits.first().copied().unwrap_or(0), p)
    }

    fn inverse(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        assert!(self.p > 0, "cannot invert unbound prime-field value");
        Some(Fp::bind(pow_mod(self.v, self.p - 2, self.p), self.p))
    }

    fn random(rng: &mut dyn rand::RngCore, field: FieldDescriptor) -> Self {
        let p = match field {
            FieldDescriptor::PrimeField(p) => p,
            FieldDescriptor::Rationals => panic!("Fp value requested over the rationals"),
        };
        Fp::bind(rng.next_u64() % p, p)
    }

    fn to_json_entry(&self) -> Value {
        Value::String(self.v.to_string())
    }

    fn from_json_entry(v: &Value, field: FieldDescriptor) -> Result<Self, LinalgError> {
        match v {
            Value::Number(n) => Ok(Fp::from_int(
                n.as_i64()
                    .ok_or_else(|| LinalgError::BadJson(format!("entry {n} not an i64")))?,
                field,
            )),
            Value::String(s) => Ok(Fp::from_bigint(&parse_bigint(s)?, field)),
            Value::Array(parts) if parts.len() == 2 => {
                // Rational syntax over a prime field: num/den reduced mod p.
                let num = Fp::from_json_entry(&parts[0], field)?;
                let den = Fp::from_json_entry(&parts[1], field)?;
                den.inverse()
                    .map(|d| num * d)
                    .ok_or_else(|| LinalgError::BadJson("denominator is zero mod p".into()))
            }
            other => Err(LinalgError::BadJson(format!(
                "bad prime-field entry {other}"
            ))),
        }
    }
}

/// Dense matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<S: Scalar> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
    field: FieldDescriptor,
}

/// Result of reduced row-echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref<S: Scalar> {
    pub reduced: Mat<S>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Rref<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<S: Scalar> Mat<S> {
    pub fn zero(rows: usize, cols: usize, field: FieldDescriptor) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
            field,
        }
    }

    pub fn identity(n: usize, field: FieldDescriptor) -> Self {
        let mut m = Mat::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, S::from_int(1, field));
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: FieldDescriptor,
        f: impl Fn(usize, usize) -> S,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Mat {
            rows,
            cols,
            entries,
            field,
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>], field: FieldDescriptor) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(r, c, field, |i, j| S::from_int(rows[i][j], field))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, self.field, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn scale(&self, s: &S) -> Mat<S> {
        Mat::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.get(r, c).clone() * s.clone()
        })
    }

    pub fn neg(&self) -> Mat<S> {
        Mat::from_fn(self.rows, self.cols, self.field, |r, c| {
            -self.get(r, c).clone()
        })
    }

    pub fn add(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        Mat::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.get(r, c).clone() + other.get(r, c).clone()
        })
    }

    pub fn sub(&self, other: &Mat<S>) -> Mat<S> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out: Mat<S> = Mat::zero(self.rows, other.cols, self.field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// Matrix power (square matrices).
    pub fn pow(&self, e: usize) -> Mat<S> {
        assert_eq!(self.rows, self.cols, "pow of non-square matrix");
        let mut acc = Mat::identity(self.rows, self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, other.cols, "shape mismatch in vstack");
        Mat::from_fn(self.rows + other.rows, self.cols, self.field, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                other.get(r - self.rows, c).clone()
            }
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!(self.rows, other.rows, "shape mismatch in hstack");
        Mat::from_fn(self.rows, self.cols + other.cols, self.field, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat<S> {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "submatrix out of range"
        );
        Mat::from_fn(rows, cols, self.field, |r, c| {
            self.get(r0 + r, c0 + c).clone()
        })
    }

    pub fn column(&self, c: usize) -> Mat<S> {
        self.submatrix(0, c, self.rows, 1)
    }

    /// Writes `block` into `self` with top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat<S>) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "paste out of range"
        );
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    /// Row-major flattening of the matrix into a single column.
    pub fn vec_flatten(&self) -> Mat<S> {
        Mat::from_fn(self.rows * self.cols, 1, self.field, |r, _| {
            self.entries[r].clone()
        })
    }

    /// Reduced row-echelon form with pivot columns; rank = pivot count.
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let a = m.get(row, c).clone();
                    let b = m.get(p, c).clone();
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c).clone() * inv.clone();
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c).clone() - factor.clone() * m.get(row, c).clone();
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Canonical right-kernel basis read off the reduced echelon form: each
    /// free column contributes one basis column with a unit in that slot.
    pub fn nullspace(&self) -> Mat<S> {
        let Rref { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zero(self.cols, free.len(), self.field);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, S::from_int(1, self.field));
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, -reduced.get(r, fc).clone());
            }
        }
        basis
    }

    /// Exact solution of `self * x = b` (free variables set to zero).
    pub fn solve(&self, b: &Mat<S>) -> Result<Option<Mat<S>>, LinalgError> {
        if self.rows != b.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "solve: {}x{} vs {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let aug = self.hstack(b);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zero(self.cols, b.cols, self.field);
        for (r, &pc) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(pc, c, reduced.get(r, self.cols + c).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Mat<S>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotInvertible);
        }
        let id = Mat::identity(self.rows, self.field);
        match self.solve(&id)? {
            Some(x) if self.mul(&x) == id => Ok(x),
            _ => Err(LinalgError::NotInvertible),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.iter().map(Scalar::to_json_entry).collect::<Vec<_>>(),
            "field": self.field.to_json(),
        })
    }

    pub fn from_json(v: &Value, expected_field: FieldDescriptor) -> Result<Mat<S>, LinalgError> {
        let rows =
            v.get("rows")
                .and_then(Value::as_u64)
                .ok_or_else(|| LinalgError::BadJson("rows missing".into()))? as usize;
        let cols =
            v.get("cols")
                .and_then(Value::as_u64)
                .ok_or_else(|| LinalgError::BadJson("cols missing".into()))? as usize;
        if let Some(fv) = v.get("field") {
            let field = FieldDescriptor::from_json(fv)?;
            if field != expected_field {
                return Err(LinalgError::MixedFields(field, expected_field));
            }
        }
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| LinalgError::BadJson("entries missing".into()))?;
        if entries.len() != rows * cols {
            return Err(LinalgError::BadJson(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let parsed = entries
            .iter()
            .map(|e| S::from_json_entry(e, expected_field))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Mat {
            rows,
            cols,
            entries: parsed,
            field: expected_field,
        })
    }
}

impl<S: Scalar> fmt::Display for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Basis of the solution space of `X a = b X` with `X` of shape `p x q`,
/// `a` of shape `q x q`, `b` of shape `p x p`. Returned as matrices.
pub fn sylvester_basis<S: Scalar>(a: &Mat<S>, b: &Mat<S>) -> Vec<Mat<S>> {
    assert_eq!(a.rows(), a.cols(), "a must be square");
    assert_eq!(b.rows(), b.cols(), "b must be square");
    let (p, q) = (b.rows(), a.rows());
    let field = a.field();
    // One equation per entry (r, c) of X a - b X, unknowns X row-major.
    let mut system: Mat<S> = Mat::zero(p * q, p * q, field);
    for r in 0..p {
        for c in 0..q {
            let eq = r * q + c;
            for k in 0..q {
                let cur = system.get(eq, r * q + k).clone();
                system.set(eq, r * q + k, cur + a.get(k, c).clone());
            }
            for k in 0..p {
                let cur = system.get(eq, k * q + c).clone();
                system.set(eq, k * q + c, cur - b.get(r, k).clone());
            }
        }
    }
    let null = system.nullspace();
    (0..null.cols())
        .map(|col| Mat::from_fn(p, q, field, |r, c| null.get(r * q + c, col).clone()))
        .collect()
}

/// Name used by integer conversions where no field context applies.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Sum of signed products, used for integral forms that never leave `i64`.
pub fn int_dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
