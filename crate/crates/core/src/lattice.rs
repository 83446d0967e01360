//! Integer relation lattices cutting diagonal subgroups out of a torus, and
//! their points over fields described by their roots of unity.
//!
//! Lattices are stored as `i64` Hermite bases. The normal-form routines run
//! on checked `i128` and redo the work in bignums if that overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::RelativeModel;
use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;
pub type BigMatrix = Vec<Vec<BigInt>>;

/// Integer arithmetic for the normal-form routines: `i128` with checked
/// operations (an overflow aborts the attempt) or `BigInt`.
trait Ring: Clone + PartialEq + fmt::Debug + Sized {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn div_floor(&self, other: &Self) -> Self;
    fn divides(&self, other: &Self) -> bool;
    fn into_big(self) -> BigInt;
}

impl Ring for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_floor(&self, other: &Self) -> Self {
        Integer::div_floor(self, other)
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Ring for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, other: &Self) -> Self {
        Integer::div_floor(self, other)
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn into_big(self) -> BigInt {
        self
    }
}

fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in lattice arithmetic")
}

fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in lattice arithmetic")
}

fn lift<T: Ring>(m: &[Vec<i64>]) -> Vec<Vec<T>> {
    m.iter().map(|r| r.iter().map(|&x| T::from_i64(x)).collect()).collect()
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("lattice entry exceeds i64")
}

/// `row_a += k * row_b`.
fn row_axpy<T: Ring>(m: &mut [Vec<T>], a: usize, b: usize, k: &T) -> Option<()> {
    if k.is_zero() {
        return Some(());
    }
    for c in 0..m[a].len() {
        let v = k.mul(&m[b][c])?;
        m[a][c] = m[a][c].add(&v)?;
    }
    Some(())
}

/// `col_a += k * col_b`.
fn col_axpy<T: Ring>(m: &mut [Vec<T>], a: usize, b: usize, k: &T) -> Option<()> {
    if k.is_zero() {
        return Some(());
    }
    for row in m.iter_mut() {
        let v = k.mul(&row[b])?;
        row[a] = row[a].add(&v)?;
    }
    Some(())
}

fn negate_row<T: Ring>(m: &mut [Vec<T>], a: usize) -> Option<()> {
    for x in m[a].iter_mut() {
        *x = x.neg()?;
    }
    Some(())
}

fn identity_of<T: Ring>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| T::from_i64(i64::from(i == j))).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    identity_of::<i128>(n)
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as i64).collect())
        .collect()
}

pub fn to_big(m: &IntMatrix) -> BigMatrix {
    lift(m)
}

pub fn mat_mul(a: &BigMatrix, b: &BigMatrix) -> BigMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix shape mismatch");
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Smith normal form of an `r × n` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: BigMatrix,
    pub s: BigMatrix,
    pub v: BigMatrix,
    /// Inverse of `v`, tracked alongside it.
    pub v_inv: BigMatrix,
}

impl Smith {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.s.len().min(self.v.len()))
            .map(|i| &self.s[i][i])
            .take_while(|d| !Zero::is_zero(*d))
            .map(to_i64)
            .collect()
    }
}

type SmithParts<T> = (Vec<Vec<T>>, Vec<Vec<T>>, Vec<Vec<T>>, Vec<Vec<T>>);

fn smith_in<T: Ring>(m: &[Vec<i64>], ncols: usize) -> Option<SmithParts<T>> {
    let rows = m.len();
    let mut s: Vec<Vec<T>> = lift(m);
    let mut u = identity_of::<T>(rows);
    let mut v = identity_of::<T>(ncols);
    let mut vi = identity_of::<T>(ncols);

    // Column op `col a += k col b` on S and V; on V^{-1} it is `row b -= k row a`.
    fn col_op<T: Ring>(s: &mut [Vec<T>], v: &mut [Vec<T>], vi: &mut [Vec<T>], a: usize, b: usize, k: &T) -> Option<()> {
        col_axpy(s, a, b, k)?;
        col_axpy(v, a, b, k)?;
        row_axpy(vi, b, a, &k.neg()?)
    }

    for t in 0..rows.min(ncols) {
        loop {
            // Smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..ncols {
                    if !s[i][j].is_zero() && best.is_none_or(|(bi, bj)| s[i][j].abs_lt(&s[bi][bj])) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Some((u, s, v, vi));
            };
            s.swap(t, pi);
            u.swap(t, pi);
            for r in s.iter_mut().chain(v.iter_mut()) {
                r.swap(t, pj);
            }
            vi.swap(t, pj);

            let p = s[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = s[i][t].div_floor(&p).neg()?;
                row_axpy(&mut s, i, t, &q)?;
                row_axpy(&mut u, i, t, &q)?;
                dirty |= !s[i][t].is_zero();
            }
            for j in t + 1..ncols {
                let q = s[t][j].div_floor(&p).neg()?;
                col_op(&mut s, &mut v, &mut vi, j, t, &q)?;
                dirty |= !s[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // Divisibility: fold an offending row into row t and retry.
            let bad = (t + 1..rows).find(|&i| (t + 1..ncols).any(|j| !p.divides(&s[i][j])));
            match bad {
                Some(i) => {
                    let one = T::from_i64(1);
                    row_axpy(&mut s, t, i, &one)?;
                    row_axpy(&mut u, t, i, &one)?;
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            negate_row(&mut s, t)?;
            negate_row(&mut u, t)?;
        }
    }
    Some((u, s, v, vi))
}

fn big<T: Ring>(m: Vec<Vec<T>>) -> BigMatrix {
    m.into_iter().map(|r| r.into_iter().map(Ring::into_big).collect()).collect()
}

/// Computes unimodular `U`, `V` and diagonal `S` with `U·M·V = S` and
/// `s_1 | s_2 | ...`, all entries non-negative on the diagonal.
pub fn smith_normal_form(m: &IntMatrix, ncols: usize) -> Smith {
    for r in m {
        assert_eq!(r.len(), ncols, "ragged matrix");
    }
    let (u, s, v, v_inv) = match smith_in::<i128>(m, ncols) {
        Some((u, s, v, vi)) => (big(u), big(s), big(v), big(vi)),
        None => smith_in::<BigInt>(m, ncols).expect("bignum arithmetic cannot overflow"),
    };
    let out = Smith { u, s, v, v_inv };
    #[cfg(debug_assertions)]
    check_smith(&out);
    out
}

#[cfg(debug_assertions)]
fn check_smith(sm: &Smith) {
    let n = sm.v.len();
    assert_eq!(mat_mul(&sm.v, &sm.v_inv), to_big(&identity(n)), "V·V^-1 != I");
    let f = sm.invariant_factors();
    for w in f.windows(2) {
        assert_eq!(w[1] % w[0], 0, "divisibility chain broken");
    }
    for (i, row) in sm.s.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                assert!(Zero::is_zero(x), "S not diagonal");
            }
        }
    }
}

fn hermite_in<T: Ring>(rows: &[Vec<T>], ncols: usize) -> Option<Vec<Vec<T>>> {
    let mut m: Vec<Vec<T>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m.len() {
                if !m[i][c].is_zero() && best.is_none_or(|b| m[i][c].abs_lt(&m[b][c])) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let p = m[r][c].clone();
            let mut done = true;
            for i in r + 1..m.len() {
                let q = m[i][c].div_floor(&p).neg()?;
                row_axpy(&mut m, i, r, &q)?;
                done &= m[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            negate_row(&mut m, r)?;
        }
        let p = m[r][c].clone();
        for i in 0..r {
            let q = m[i][c].div_floor(&p).neg()?;
            row_axpy(&mut m, i, r, &q)?;
        }
        r += 1;
    }
    m.truncate(r);
    Some(m)
}

fn hermite_big(rows: &[Vec<BigInt>], ncols: usize) -> BigMatrix {
    hermite_in(rows, ncols).expect("bignum arithmetic cannot overflow")
}

fn narrow(m: BigMatrix) -> IntMatrix {
    m.iter().map(|r| r.iter().map(to_i64).collect()).collect()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: pivots
/// positive and strictly moving right, entries above a pivot in `[0, pivot)`,
/// zero rows dropped.
pub fn hermite_normal_form(rows: &[Vec<i64>], ncols: usize) -> IntMatrix {
    match hermite_in::<i128>(&lift(rows), ncols) {
        Some(h) => narrow(big(h)),
        None => narrow(hermite_big(&lift(rows), ncols)),
    }
}

/// A coefficient field, seen only through its roots of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Cyclotomic(u64),
    AlgebraicClosure,
}

impl FieldSpec {
    /// Number of `d`-th roots of unity in the field.
    pub fn root_count(&self, d: i64) -> i64 {
        assert!(d >= 1, "root_count of {d}");
        match *self {
            FieldSpec::Rationals => d.gcd(&2),
            FieldSpec::Cyclotomic(m) => {
                let m = m as i64;
                let w = if m % 2 == 0 { m } else { 2 * m };
                d.gcd(&w)
            }
            FieldSpec::AlgebraicClosure => d,
        }
    }

    /// Order of the full group of roots of unity, `None` if infinite.
    pub fn unit_root_order(&self) -> Option<i64> {
        match *self {
            FieldSpec::Rationals => Some(2),
            FieldSpec::Cyclotomic(m) => Some(if m % 2 == 0 { m as i64 } else { 2 * m as i64 }),
            FieldSpec::AlgebraicClosure => None,
        }
    }

    pub fn parse(token: &str) -> Result<Self> {
        match token.trim() {
            "q" => Ok(FieldSpec::Rationals),
            "qbar" => Ok(FieldSpec::AlgebraicClosure),
            t => {
                let m = t
                    .strip_prefix("cyc:")
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::usage(format!("bad field `{t}` (expected q, cyc:<m> or qbar)")))?;
                if m < 3 {
                    return Err(Error::usage(format!("cyc:{m} needs m >= 3")));
                }
                Ok(FieldSpec::Cyclotomic(m))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Cyclotomic(m) => write!(f, "cyc:{m}"),
            FieldSpec::AlgebraicClosure => write!(f, "qbar"),
        }
    }
}

/// Relations `∏ c_j^{m_j} = 1`, stored as a Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConstraintLattice {
    ambient_rank: usize,
    relations: IntMatrix,
}

impl ConstraintLattice {
    pub fn new(ambient_rank: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ambient_rank) {
            return Err(Error::usage(format!(
                "relation of length {} in ambient rank {ambient_rank}",
                r.len()
            )));
        }
        Ok(ConstraintLattice {
            ambient_rank,
            relations: hermite_normal_form(rows, ambient_rank),
        })
    }

    /// The whole of `Z^n` (trivial point group).
    pub fn full(n: usize) -> Self {
        ConstraintLattice {
            ambient_rank: n,
            relations: identity(n),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.relations.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.ambient_rank, "ambient mismatch");
        let mut v = v.to_vec();
        let mut row = 0;
        for c in 0..self.ambient_rank {
            let pivot = self.relations.get(row).map(|r| (r.iter().position(|&x| x != 0), r));
            match pivot {
                Some((Some(pc), r)) if pc == c => {
                    if v[c] % r[c] != 0 {
                        return false;
                    }
                    let q = v[c] / r[c];
                    for (x, y) in v.iter_mut().zip(r) {
                        *x = add(*x, mul(-q, *y));
                    }
                    row += 1;
                }
                _ => {
                    if v[c] != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_sublattice_of(&self, other: &ConstraintLattice) -> bool {
        self.relations.iter().all(|r| other.contains(r))
    }

    pub fn smith(&self) -> Smith {
        smith_normal_form(&self.relations, self.ambient_rank)
    }

    /// Class of `w` in `Z^n / L`, as a key comparable across calls on the
    /// same lattice.
    pub fn quotient(&self) -> Quotient {
        let sm = self.smith();
        let factors = sm.invariant_factors();
        let n = self.ambient_rank;
        let r = factors.len();
        // Columns of V may be large. Torsion columns only matter modulo their
        // factor, and the free columns may be replaced by any basis of their
        // span, so both are shrunk before going back to i64.
        let free: BigMatrix = (r..n).map(|j| (0..n).map(|k| sm.v[k][j].clone()).collect()).collect();
        let free = hermite_big(&free, n);
        let mut v = vec![vec![0i64; n]; n];
        for (k, row) in v.iter_mut().enumerate() {
            for (j, d) in factors.iter().enumerate() {
                row[j] = to_i64(&sm.v[k][j].mod_floor(&BigInt::from(*d)));
            }
            for (j, col) in free.iter().enumerate() {
                row[r + j] = to_i64(&col[k]);
            }
        }
        Quotient { v, factors }
    }

    /// The saturation `(L ⊗ Q) ∩ Z^n`.
    pub fn saturation(&self) -> ConstraintLattice {
        let sm = self.smith();
        let rank = sm.invariant_factors().len();
        let basis = hermite_big(&sm.v_inv[..rank], self.ambient_rank);
        ConstraintLattice {
            ambient_rank: self.ambient_rank,
            relations: narrow(basis),
        }
    }
}

impl fmt::Display for ConstraintLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{r:?}"))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Reduction map `Z^n → Z^n / L`.
#[derive(Clone, Debug)]
pub struct Quotient {
    v: IntMatrix,
    factors: Vec<i64>,
}

impl Quotient {
    pub fn key(&self, w: &[i64]) -> Vec<i64> {
        let n = self.v.len();
        let mut out = Vec::new();
        for j in 0..n {
            let x = (0..n).fold(0i64, |acc, k| add(acc, mul(w[k], self.v[k][j])));
            match self.factors.get(j) {
                Some(&1) => {}
                Some(&d) => out.push(x.rem_euclid(d)),
                None => out.push(x),
            }
        }
        out
    }
}

/// Isomorphism type of the point group of a lattice over a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianStructure {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub field: FieldSpec,
    pub realized_orders: Vec<i64>,
}

impl AbelianStructure {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the point group when finite.
    pub fn order(&self) -> Option<i64> {
        self.is_finite()
            .then(|| self.realized_orders.iter().product())
    }

    pub fn structure_string(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("(K*)^{}", self.free_rank));
        }
        for &d in &self.realized_orders {
            if d > 1 {
                parts.push(format!("Z/{d}"));
            }
        }
        if parts.is_empty() {
            "{0}".to_string()
        } else {
            parts.join(" x ")
        }
    }
}

pub fn points_structure(l: &ConstraintLattice, k: FieldSpec) -> AbelianStructure {
    let factors = l.smith().invariant_factors();
    let torsion: Vec<i64> = factors.iter().copied().filter(|&d| d > 1).collect();
    AbelianStructure {
        free_rank: l.ambient_rank - factors.len(),
        realized_orders: torsion.iter().map(|&d| k.root_count(d)).collect(),
        torsion,
        field: k,
    }
}

/// The largest lattice with the same `K`-points as `l`. With `w` roots of
/// unity in `K` this is `L + w·sat(L)`.
pub fn field_closure(l: &ConstraintLattice, k: FieldSpec) -> ConstraintLattice {
    let Some(w) = k.unit_root_order() else {
        return l.clone();
    };
    let mut rows = l.relations.clone();
    rows.extend(l.saturation().relations.iter().map(|r| r.iter().map(|&x| mul(w, x)).collect()));
    ConstraintLattice::new(l.ambient_rank, &rows).expect("same ambient rank")
}

fn same_ambient(a: &ConstraintLattice, b: &ConstraintLattice) -> Result<()> {
    if a.ambient_rank == b.ambient_rank {
        Ok(())
    } else {
        Err(Error::usage(format!(
            "lattices in ambient ranks {} and {}",
            a.ambient_rank, b.ambient_rank
        )))
    }
}

/// Whether `points(l1, K) ⊆ points(l2, K)`.
pub fn subgroup_includes(l1: &ConstraintLattice, l2: &ConstraintLattice, k: FieldSpec) -> Result<bool> {
    same_ambient(l1, l2)?;
    Ok(l2.is_sublattice_of(&field_closure(l1, k)))
}

pub fn subgroup_equals(l1: &ConstraintLattice, l2: &ConstraintLattice, k: FieldSpec) -> Result<bool> {
    same_ambient(l1, l2)?;
    Ok(field_closure(l1, k) == field_closure(l2, k))
}

/// Weight of a total-space monomial in the fiber character lattice: the base
/// generator (total index 0) has weight zero.
pub fn fiber_weight(exps: &[u32]) -> Vec<i64> {
    exps[1..].iter().map(|&e| e as i64).collect()
}

/// One relation per term of each `D v_i`: the term's fiber weight minus `e_i`.
pub fn extract_constraint_lattice(rm: &RelativeModel) -> Result<ConstraintLattice> {
    let fiber = rm.fiber().universe();
    check_diagonalizable(fiber)?;
    let n = fiber.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for (m, _) in rm.total_differential_of(i).terms() {
            let mut w = fiber_weight(m.exponents());
            w[i] -= 1;
            rows.push(w);
        }
    }
    ConstraintLattice::new(n, &rows)
}

/// Relations imposed by the fiber differential alone: the diagonal part of
/// the ambient automorphism group.
pub fn ambient_lattice(fiber: &crate::algebra::SullivanModel) -> Result<ConstraintLattice> {
    let u = fiber.universe();
    check_diagonalizable(u)?;
    let n = u.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for (m, _) in fiber.differential_of(i).terms() {
            let mut w: Vec<i64> = m.exponents().iter().map(|&e| e as i64).collect();
            w[i] -= 1;
            rows.push(w);
        }
    }
    ConstraintLattice::new(n, &rows)
}

fn check_diagonalizable(u: &crate::algebra::Universe) -> Result<()> {
    let even: Vec<u32> = u
        .generators()
        .iter()
        .filter(|g| !g.is_odd())
        .map(|g| g.degree)
        .collect();
    for (i, d) in even.iter().enumerate() {
        if even[..i].contains(d) {
            return Err(Error::Unsupported(format!(
                "two even fiber generators in degree {d}; the diagonal ansatz does not apply"
            )));
        }
    }
    Ok(())
}
