//! Exact integer linear algebra: dense matrices over arbitrary-precision
//! integers, diagonal and Smith forms with transforms, row Hermite form,
//! solving and kernels over Z and Z/m.

use std::fmt;

use dashu_base::{DivRemEuclid, ExtendedGcd, UnsignedAbs};
use dashu_int::IBig;

use crate::error::{dim, Result};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = IBig;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Euclidean division with `0 <= r < |b|`.
pub fn div_euclid(a: &Int, b: &Int) -> (Int, Int) {
    let (q, r) = a.clone().div_rem_euclid(b.clone());
    (q, Int::from(r))
}

/// Representative of `a` in `[0, m)`.
pub fn reduce(a: &Int, m: &Int) -> Int {
    div_euclid(a, m).1
}

pub fn divides(d: &Int, a: &Int) -> bool {
    if d.is_zero() {
        return a.is_zero();
    }
    div_euclid(a, d).1.is_zero()
}

/// Exact quotient; the caller guarantees divisibility.
pub fn exact_div(a: &Int, b: &Int) -> Int {
    div_euclid(a, b).0
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    let (g, _, _) = a.clone().gcd_ext(b.clone());
    Int::from(g)
}

pub fn lcm(a: &Int, b: &Int) -> Int {
    if a.is_zero() || b.is_zero() {
        return Int::ZERO;
    }
    let g = gcd(a, b);
    let l = exact_div(&(a * b), &g);
    if l < Int::ZERO {
        -l
    } else {
        l
    }
}

/// `(g, s, t)` with `g = gcd(a, b) = s a + t b`, `g >= 0`.
pub fn xgcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (g, s, t) = a.clone().gcd_ext(b.clone());
    (Int::from(g), s, t)
}

fn abs_lt(a: &Int, b: &Int) -> bool {
    a.unsigned_abs() < b.unsigned_abs()
}

/// Quotient rounded to the nearest integer, so the remainder is at most |b|/2.
fn round_quot(a: &Int, b: &Int) -> Int {
    let (mut q, r) = div_euclid(a, b);
    let babs = Int::from(b.unsigned_abs());
    if &r * int(2) > babs {
        if *b > Int::ZERO {
            q += int(1);
        } else {
            q -= int(1);
        }
    }
    q
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(dim(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = int(1);
        }
        m
    }

    pub fn scalar(n: usize, c: &Int) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, d: &[Int]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Builds a matrix from small integer rows; `cols` fixes the width so
    /// that empty row lists still have a shape.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&v| int(v)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Int>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(dim(format!("row of length {} in a {}-column matrix", r.len(), cols)));
            }
            data.extend(r.iter().cloned());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Int>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(dim(format!("column of length {} in a {}-row matrix", c.len(), rows)));
            }
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn column_vector(v: &[Int]) -> Self {
        IntMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Int] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        *v == int(1)
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.checked_mul(other).expect("matrix shapes")
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut s = Int::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), other.shape(), "matrix shapes");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), other.shape(), "matrix shapes");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&int(-1))
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Entries reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &Int) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| reduce(a, m)).collect(),
        }
    }

    pub fn hstack(parts: &[&IntMatrix]) -> Result<IntMatrix> {
        let Some(first) = parts.first() else {
            return Ok(Self::zeros(0, 0));
        };
        let rows = first.rows;
        if parts.iter().any(|p| p.rows != rows) {
            return Err(dim("hstack of matrices with different row counts"));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    out.data[i * cols + off + j] = p.get(i, j).clone();
                }
            }
            off += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&IntMatrix]) -> Result<IntMatrix> {
        let Some(first) = parts.first() else {
            return Ok(Self::zeros(0, 0));
        };
        let cols = first.cols;
        if parts.iter().any(|p| p.cols != cols) {
            return Err(dim("vstack of matrices with different column counts"));
        }
        let mut data = Vec::new();
        for p in parts {
            data.extend(p.data.iter().cloned());
        }
        Ok(IntMatrix {
            rows: parts.iter().map(|p| p.rows).sum(),
            cols,
            data,
        })
    }

    pub fn block_diag(parts: &[&IntMatrix]) -> IntMatrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block bounds");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> IntMatrix {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + k] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    fn to_rows(&self) -> Vec<Vec<Int>> {
        self.row_vecs()
    }

    fn from_row_vecs(rows: usize, cols: usize, v: Vec<Vec<Int>>) -> IntMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in v {
            data.extend(r);
        }
        IntMatrix { rows, cols, data }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Working state for unimodular elimination. Row operations on `a` are
/// mirrored in `l` (and inversely in `l_inv`), column operations in `r`
/// (and inversely in `r_inv`), so that `l · a0 · r = a` at all times.
struct Elim {
    a: Vec<Vec<Int>>,
    nrows: usize,
    ncols: usize,
    l: Option<Vec<Vec<Int>>>,
    l_inv: Option<Vec<Vec<Int>>>,
    r: Option<Vec<Vec<Int>>>,
    r_inv: Option<Vec<Vec<Int>>>,
}

fn ident_rows(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { int(1) } else { Int::ZERO }).collect())
        .collect()
}

fn rows_add(m: &mut [Vec<Int>], target: usize, source: usize, c: &Int) {
    if c.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = m.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

fn cols_add(m: &mut [Vec<Int>], target: usize, source: usize, c: &Int) {
    if c.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[source].is_zero() {
            let v = c * &row[source];
            row[target] += v;
        }
    }
}

fn rows_combine(m: &mut [Vec<Int>], i: usize, j: usize, blk: [&Int; 4]) {
    let [p, q, r, s] = blk;
    let n = m[i].len();
    for k in 0..n {
        let x = m[i][k].clone();
        let y = m[j][k].clone();
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[i][k] = p * &x + q * &y;
        m[j][k] = r * &x + s * &y;
    }
}

/// Right multiplication by the 2x2 block `[[a, b], [c, d]]` on columns `i, j`.
fn cols_combine(m: &mut [Vec<Int>], i: usize, j: usize, blk: [&Int; 4]) {
    let [a, b, c, d] = blk;
    for row in m.iter_mut() {
        let x = row[i].clone();
        let y = row[j].clone();
        if x.is_zero() && y.is_zero() {
            continue;
        }
        row[i] = a * &x + c * &y;
        row[j] = b * &x + d * &y;
    }
}

impl Elim {
    fn new(m: &IntMatrix, track_l: bool, track_l_inv: bool, track_r: bool, track_r_inv: bool) -> Elim {
        Elim {
            a: m.to_rows(),
            nrows: m.rows,
            ncols: m.cols,
            l: track_l.then(|| ident_rows(m.rows)),
            l_inv: track_l_inv.then(|| ident_rows(m.rows)),
            r: track_r.then(|| ident_rows(m.cols)),
            r_inv: track_r_inv.then(|| ident_rows(m.cols)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(l) = &mut self.l {
            l.swap(i, j);
        }
        if let Some(li) = &mut self.l_inv {
            for row in li.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(r) = &mut self.r {
            for row in r.iter_mut() {
                row.swap(i, j);
            }
        }
        if let Some(ri) = &mut self.r_inv {
            ri.swap(i, j);
        }
    }

    /// row_t += c * row_s
    fn add_row(&mut self, t: usize, s: usize, c: &Int) {
        rows_add(&mut self.a, t, s, c);
        if let Some(l) = &mut self.l {
            rows_add(l, t, s, c);
        }
        if let Some(li) = &mut self.l_inv {
            cols_add(li, s, t, &-c);
        }
    }

    /// col_t += c * col_s
    fn add_col(&mut self, t: usize, s: usize, c: &Int) {
        cols_add(&mut self.a, t, s, c);
        if let Some(r) = &mut self.r {
            cols_add(r, t, s, c);
        }
        if let Some(ri) = &mut self.r_inv {
            rows_add(ri, s, t, &-c);
        }
    }

    fn neg_row(&mut self, i: usize) {
        for v in self.a[i].iter_mut() {
            *v = -&*v;
        }
        if let Some(l) = &mut self.l {
            for v in l[i].iter_mut() {
                *v = -&*v;
            }
        }
        if let Some(li) = &mut self.l_inv {
            for row in li.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    /// Rows `(i, j)` replaced by `[[p, q], [r, s]] · (row_i, row_j)`; determinant 1.
    fn combine_rows(&mut self, i: usize, j: usize, p: &Int, q: &Int, r: &Int, s: &Int) {
        rows_combine(&mut self.a, i, j, [p, q, r, s]);
        if let Some(l) = &mut self.l {
            rows_combine(l, i, j, [p, q, r, s]);
        }
        if let Some(li) = &mut self.l_inv {
            cols_combine(li, i, j, [s, &-q, &-r, p]);
        }
    }

    /// Columns `(i, j)` right-multiplied by `[[a, b], [c, d]]`; determinant 1.
    fn combine_cols(&mut self, i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        cols_combine(&mut self.a, i, j, [a, b, c, d]);
        if let Some(r) = &mut self.r {
            cols_combine(r, i, j, [a, b, c, d]);
        }
        if let Some(ri) = &mut self.r_inv {
            rows_combine(ri, i, j, [d, &-b, &-c, a]);
        }
    }

    /// Reduces to a diagonal matrix with nonzero entries first. The pivot
    /// at each step is the entry of least absolute value (lowest row, then
    /// column, on ties). No divisibility normalisation is done here, so
    /// block-diagonal inputs stay block-local.
    fn diagonalize(&mut self) -> usize {
        let n = self.nrows.min(self.ncols);
        let mut t = 0;
        while t < n {
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.nrows {
                for j in t..self.ncols {
                    let v = &self.a[i][j];
                    if v.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if !abs_lt(v, &self.a[bi][bj]) => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.nrows {
                    if !self.a[i][t].is_zero() {
                        let q = round_quot(&self.a[i][t], &p);
                        self.add_row(i, t, &-q);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.ncols {
                    if !self.a[t][j].is_zero() {
                        let q = round_quot(&self.a[t][j], &p);
                        self.add_col(j, t, &-q);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
                // Move the smallest leftover in the pivot row/column into place.
                let mut best_row: Option<usize> = None;
                let mut best_col: Option<usize> = None;
                let mut best_val = p.clone();
                for i in t + 1..self.nrows {
                    let v = &self.a[i][t];
                    if !v.is_zero() && abs_lt(v, &best_val) {
                        best_val = v.clone();
                        best_row = Some(i);
                        best_col = None;
                    }
                }
                for j in t + 1..self.ncols {
                    let v = &self.a[t][j];
                    if !v.is_zero() && abs_lt(v, &best_val) {
                        best_val = v.clone();
                        best_col = Some(j);
                        best_row = None;
                    }
                }
                if let Some(i) = best_row {
                    self.swap_rows(t, i);
                } else if let Some(j) = best_col {
                    self.swap_cols(t, j);
                }
            }
            t += 1;
        }
        t
    }

    fn fix_divisibility(&mut self, rank: usize) {
        for i in 0..rank {
            for j in i + 1..rank {
                let a = self.a[i][i].clone();
                let b = self.a[j][j].clone();
                if divides(&a, &b) {
                    continue;
                }
                let (g, s, t) = xgcd(&a, &b);
                let ag = exact_div(&a, &g);
                let bg = exact_div(&b, &g);
                self.combine_rows(i, j, &s, &t, &-&bg, &ag);
                self.combine_cols(i, j, &int(1), &-(&t * &bg), &int(1), &(&s * &ag));
            }
        }
        for i in 0..rank {
            if self.a[i][i] < Int::ZERO {
                self.neg_row(i);
            }
        }
    }

    fn take(m: Option<Vec<Vec<Int>>>, n: usize) -> IntMatrix {
        IntMatrix::from_row_vecs(n, n, m.expect("tracked transform"))
    }
}

/// `left · a · right = diag(d)` with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub diag: Vec<Int>,
    pub rank: usize,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

/// Diagonal form without divisibility normalisation. Entries `diag[..rank]`
/// are nonzero, the remaining diagonal is zero.
pub fn diagonalize(a: &IntMatrix) -> Diagonalization {
    let mut e = Elim::new(a, true, false, true, false);
    let rank = e.diagonalize();
    let diag = (0..rank).map(|i| e.a[i][i].clone()).collect();
    Diagonalization {
        diag,
        rank,
        left: Elim::take(e.l, a.rows),
        right: Elim::take(e.r, a.cols),
    }
}

/// Smith normal form `a = u · D · v` with `d[0] | d[1] | ...`, all `d[i] > 0`,
/// and `u`, `v` unimodular. `d` has length `min(rows, cols)`; trailing zeros
/// are included.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: Vec<Int>,
    pub rank: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

pub fn snf(a: &IntMatrix) -> Smith {
    let mut e = Elim::new(a, true, true, true, true);
    let rank = e.diagonalize();
    e.fix_divisibility(rank);
    let n = a.rows.min(a.cols);
    let d = (0..n)
        .map(|i| if i < rank { e.a[i][i].clone() } else { Int::ZERO })
        .collect();
    Smith {
        d,
        rank,
        u: Elim::take(e.l_inv, a.rows),
        u_inv: Elim::take(e.l, a.rows),
        v: Elim::take(e.r_inv, a.cols),
        v_inv: Elim::take(e.r, a.cols),
    }
}

/// Invariant factors only.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<Int> {
    let mut e = Elim::new(a, false, false, false, false);
    let rank = e.diagonalize();
    e.fix_divisibility(rank);
    let n = a.rows.min(a.cols);
    (0..n)
        .map(|i| if i < rank { e.a[i][i].clone() } else { Int::ZERO })
        .collect()
}

pub fn rank(a: &IntMatrix) -> usize {
    let mut e = Elim::new(a, false, false, false, false);
    e.diagonalize()
}

/// Row Hermite normal form `h = u · a`: pivots strictly increase to the
/// right, are positive, entries above a pivot lie in `[0, pivot)`, and the
/// first `rank` rows are the nonzero ones.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn hermite_rows(a: &IntMatrix, track: bool) -> (Vec<Vec<Int>>, Option<Vec<Vec<Int>>>, Vec<usize>) {
    let mut e = Elim::new(a, track, false, false, false);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..e.ncols {
        if row == e.nrows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            let mut nonzero = 0;
            for i in row..e.nrows {
                let v = &e.a[i][col];
                if v.is_zero() {
                    continue;
                }
                nonzero += 1;
                match best {
                    Some(b) if !abs_lt(v, &e.a[b][col]) => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            e.swap_rows(row, b);
            if nonzero == 1 {
                break;
            }
            let p = e.a[row][col].clone();
            for i in row + 1..e.nrows {
                if !e.a[i][col].is_zero() {
                    let q = round_quot(&e.a[i][col], &p);
                    e.add_row(i, row, &-q);
                }
            }
        }
        if row < e.nrows && !e.a[row][col].is_zero() {
            if e.a[row][col] < Int::ZERO {
                e.neg_row(row);
            }
            let p = e.a[row][col].clone();
            for k in 0..row {
                if !e.a[k][col].is_zero() {
                    let (q, _) = div_euclid(&e.a[k][col], &p);
                    e.add_row(k, row, &-q);
                }
            }
            pivots.push(col);
            row += 1;
        }
    }
    (e.a, e.l, pivots)
}

pub fn hnf(a: &IntMatrix) -> Hermite {
    let (h, u, pivots) = hermite_rows(a, true);
    Hermite {
        h: IntMatrix::from_row_vecs(a.rows, a.cols, h),
        u: IntMatrix::from_row_vecs(a.rows, a.rows, u.expect("tracked")),
        rank: pivots.len(),
        pivots,
    }
}

/// Canonical basis (as columns) of the lattice spanned by the columns of `g`.
pub fn lattice_basis(g: &IntMatrix) -> IntMatrix {
    let (h, _, pivots) = hermite_rows(&g.transpose(), false);
    let rank = pivots.len();
    let mut out = IntMatrix::zeros(g.rows, rank);
    for (k, row) in h.into_iter().take(rank).enumerate() {
        for (i, v) in row.into_iter().enumerate() {
            out.set(i, k, v);
        }
    }
    out
}

fn check_modulus(m: Option<&Int>) -> Result<()> {
    match m {
        Some(m) if *m <= int(1) => Err(dim(format!("modulus {m} must exceed 1"))),
        _ => Ok(()),
    }
}

/// Solves `a · X = b` column by column over Z, sharing one diagonalisation.
fn solve_over_z(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let dg = diagonalize(a);
    let c = dg.left.mul(b);
    let mut y = IntMatrix::zeros(a.cols, b.cols);
    for k in 0..b.cols {
        for t in 0..a.rows {
            let v = c.get(t, k);
            if t < dg.rank {
                let (q, r) = div_euclid(v, &dg.diag[t]);
                if !r.is_zero() {
                    return None;
                }
                y.set(t, k, q);
            } else if !v.is_zero() {
                return None;
            }
        }
    }
    Some(dg.right.mul(&y))
}

/// Solves `a · X = b` (every column of `b`) over Z, or over Z/m when a
/// modulus is given. Solutions modulo `m` are reduced into `[0, m)`.
pub fn solve_matrix(a: &IntMatrix, b: &IntMatrix, modulus: Option<&Int>) -> Result<Option<IntMatrix>> {
    check_modulus(modulus)?;
    if a.rows != b.rows {
        return Err(dim(format!(
            "system has {} equations but right-hand side has {} rows",
            a.rows, b.rows
        )));
    }
    match modulus {
        None => Ok(solve_over_z(a, b)),
        Some(m) => {
            let aug = IntMatrix::hstack(&[a, &IntMatrix::scalar(a.rows, m)])?;
            Ok(solve_over_z(&aug, b).map(|x| x.block(0, 0, a.cols, b.cols).reduce_mod(m)))
        }
    }
}

pub fn solve(a: &IntMatrix, b: &[Int], modulus: Option<&Int>) -> Result<Option<Vec<Int>>> {
    Ok(solve_matrix(a, &IntMatrix::column_vector(b), modulus)?.map(|x| x.col(0)))
}

/// Basis (columns) of `{x : a x = 0}` over Z, or generators of the solution
/// module of `a x = 0 (mod m)` reduced into `[0, m)` with zero columns dropped.
pub fn kernel_basis(a: &IntMatrix, modulus: Option<&Int>) -> Result<IntMatrix> {
    check_modulus(modulus)?;
    match modulus {
        None => Ok(lattice_basis(&kernel_lattice(a))),
        Some(m) => {
            let n = a.cols;
            let aug = IntMatrix::hstack(&[a, &IntMatrix::scalar(a.rows, m)])?;
            let full = kernel_lattice(&aug);
            let k = full.block(0, 0, n, full.cols);
            let gens = IntMatrix::hstack(&[&k, &IntMatrix::scalar(n, m)])?;
            let basis = lattice_basis(&gens).reduce_mod(m);
            let keep: Vec<usize> = (0..basis.cols)
                .filter(|&j| (0..n).any(|i| !basis.get(i, j).is_zero()))
                .collect();
            Ok(basis.select_cols(&keep))
        }
    }
}

/// Columns of the right transform beyond the rank: a basis of the integer kernel.
fn kernel_lattice(a: &IntMatrix) -> IntMatrix {
    let dg = diagonalize(a);
    let idx: Vec<usize> = (dg.rank..a.cols).collect();
    dg.right.select_cols(&idx)
}

/// Generators of `{x in Z^n : a x ∈ L}` where `L` is the lattice spanned by
/// the columns of `rel` (same row count as `a`).
pub fn preimage_lattice(a: &IntMatrix, rel: &IntMatrix) -> Result<IntMatrix> {
    let n = a.cols;
    let aug = IntMatrix::hstack(&[a, rel])?;
    let k = kernel_lattice(&aug);
    let proj = k.block(0, 0, n, k.cols);
    Ok(lattice_basis(&proj))
}

/// A system of linear matrix equations `Σ left · X_v · right ≡ rhs`, where
/// each equation may hold only modulo a lattice (columns of `lattice`),
/// solved over Z by vectorising every unknown column-major.
#[derive(Clone, Debug, Default)]
pub struct MatrixSystem {
    vars: Vec<(usize, usize)>,
    eqs: Vec<MatrixEquation>,
}

#[derive(Clone, Debug)]
struct MatrixEquation {
    rows: usize,
    cols: usize,
    terms: Vec<(usize, IntMatrix, IntMatrix)>,
    rhs: IntMatrix,
    lattice: Option<IntMatrix>,
}

impl MatrixSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares an unknown `rows × cols` matrix and returns its handle.
    pub fn var(&mut self, rows: usize, cols: usize) -> usize {
        self.vars.push((rows, cols));
        self.vars.len() - 1
    }

    pub fn var_shape(&self, v: usize) -> (usize, usize) {
        self.vars[v]
    }

    /// Adds `Σ left_k · X_{v_k} · right_k = rhs`, modulo the column lattice
    /// `lattice` when given (one column per lattice generator).
    pub fn equation(
        &mut self,
        terms: Vec<(usize, IntMatrix, IntMatrix)>,
        rhs: IntMatrix,
        lattice: Option<IntMatrix>,
    ) {
        let (rows, cols) = rhs.shape();
        for (v, l, r) in &terms {
            let (vr, vc) = self.vars[*v];
            assert_eq!(l.shape(), (rows, vr), "left factor shape");
            assert_eq!(r.shape(), (vc, cols), "right factor shape");
        }
        if let Some(l) = &lattice {
            assert_eq!(l.rows(), rows, "lattice rows");
        }
        self.eqs.push(MatrixEquation {
            rows,
            cols,
            terms,
            rhs,
            lattice: lattice.filter(|l| l.cols() > 0),
        });
    }

    fn assemble(&self) -> (IntMatrix, Vec<Int>, Vec<usize>) {
        let mut offsets = Vec::with_capacity(self.vars.len());
        let mut n = 0;
        for &(r, c) in &self.vars {
            offsets.push(n);
            n += r * c;
        }
        let mut slack_offsets = Vec::with_capacity(self.eqs.len());
        for e in &self.eqs {
            slack_offsets.push(n);
            if let Some(l) = &e.lattice {
                n += l.cols() * e.cols;
            }
        }
        let m: usize = self.eqs.iter().map(|e| e.rows * e.cols).sum();
        let mut a = IntMatrix::zeros(m, n);
        let mut b = Vec::with_capacity(m);
        let mut row = 0;
        for (k, e) in self.eqs.iter().enumerate() {
            for (v, l, r) in &e.terms {
                let block = r.transpose().kron(l);
                add_block(&mut a, row, offsets[*v], &block);
            }
            if let Some(l) = &e.lattice {
                let block = IntMatrix::identity(e.cols).kron(l);
                add_block(&mut a, row, slack_offsets[k], &block);
            }
            for j in 0..e.cols {
                for i in 0..e.rows {
                    b.push(e.rhs.get(i, j).clone());
                }
            }
            row += e.rows * e.cols;
        }
        (a, b, offsets)
    }

    fn unpack(&self, x: &[Int], offsets: &[usize]) -> Vec<IntMatrix> {
        self.vars
            .iter()
            .zip(offsets)
            .map(|(&(r, c), &off)| {
                let mut m = IntMatrix::zeros(r, c);
                for j in 0..c {
                    for i in 0..r {
                        m.set(i, j, x[off + j * r + i].clone());
                    }
                }
                m
            })
            .collect()
    }

    /// One solution (values of the declared unknowns), or `None`.
    pub fn solve(&self) -> Option<Vec<IntMatrix>> {
        let (a, b, offsets) = self.assemble();
        let x = solve_over_z(&a, &IntMatrix::column_vector(&b))?;
        Some(self.unpack(&x.col(0), &offsets))
    }

    /// Generators of the solution lattice of the homogeneous system,
    /// projected to the declared unknowns.
    pub fn homogeneous_generators(&self) -> Vec<Vec<IntMatrix>> {
        let (a, _, offsets) = self.assemble();
        let k = kernel_lattice(&a);
        let nvars: usize = self.vars.iter().map(|(r, c)| r * c).sum();
        let proj = lattice_basis(&k.block(0, 0, nvars, k.cols()));
        (0..proj.cols())
            .map(|j| self.unpack(&proj.col(j), &offsets))
            .collect()
    }
}

fn add_block(a: &mut IntMatrix, r0: usize, c0: usize, block: &IntMatrix) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = block.get(i, j);
            if !v.is_zero() {
                let cur = a.get(r0 + i, c0 + j) + v;
                a.set(r0 + i, c0 + j, cur);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, e)
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn smith_examples() {
        assert_eq!(snf(&m(2, 2, &[2, 4, 6, 8])).d, ints(&[2, 4]));
        assert_eq!(snf(&IntMatrix::identity(3)).d, ints(&[1, 1, 1]));
        assert_eq!(snf(&IntMatrix::zeros(2, 3)).d, ints(&[0, 0]));
        assert_eq!(snf(&m(2, 2, &[2, 0, 0, 3])).d, ints(&[1, 6]));
    }

    #[test]
    fn smith_reconstructs() {
        let a = m(3, 4, &[2, 4, 4, -6, 6, 12, 18, 0, -4, -8, -8, 4]);
        let s = snf(&a);
        let d = IntMatrix::diagonal(3, 4, &s.d);
        assert_eq!(s.u.mul(&d).mul(&s.v), a);
        assert!(s.u.mul(&s.u_inv).is_identity());
        assert!(s.v.mul(&s.v_inv).is_identity());
    }

    #[test]
    fn solve_examples() {
        let a = m(1, 1, &[2]);
        assert_eq!(solve(&a, &ints(&[4]), None).unwrap(), Some(ints(&[2])));
        assert_eq!(solve(&a, &ints(&[3]), None).unwrap(), None);
        assert_eq!(solve(&a, &ints(&[3]), Some(&int(5))).unwrap(), Some(ints(&[4])));
    }

    #[test]
    fn solve_rejects_bad_shapes() {
        let a = m(2, 1, &[1, 2]);
        assert!(solve(&a, &ints(&[1]), None).is_err());
        assert!(solve(&a, &ints(&[1, 2]), Some(&int(1))).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&m(1, 2, &[1, 1]), None).unwrap(), m(2, 1, &[1, -1]));
        assert_eq!(kernel_basis(&IntMatrix::identity(3), None).unwrap().cols(), 0);
        assert_eq!(kernel_basis(&m(1, 1, &[2]), Some(&int(4))).unwrap(), m(1, 1, &[2]));
    }

    #[test]
    fn hermite_form() {
        let a = m(3, 3, &[2, 3, 6, 4, 6, 8, 0, 0, 2]);
        let h = hnf(&a);
        assert_eq!(h.u.mul(&a), h.h);
        assert_eq!(h.rank, 2);
        for (k, &p) in h.pivots.iter().enumerate() {
            let piv = h.h.get(k, p).clone();
            assert!(piv > Int::ZERO);
            for r in 0..k {
                let v = h.h.get(r, p);
                assert!(*v >= Int::ZERO && *v < piv);
            }
        }
    }

    #[test]
    fn diagonalize_keeps_blocks() {
        // Every transform column stays supported inside one diagonal block.
        let a = IntMatrix::block_diag(&[&m(2, 2, &[2, 4, 6, 8]), &m(1, 1, &[3])]);
        let dg = diagonalize(&a);
        for t in [&dg.right, &dg.left.transpose()] {
            for j in 0..3 {
                let first = (0..2).any(|i| !t.get(i, j).is_zero());
                let second = !t.get(2, j).is_zero();
                assert!(!(first && second), "column {j} mixes blocks: {t:?}");
            }
        }
    }

    #[test]
    fn matrix_system_solves_sylvester_type_equation() {
        // Find X with 2·X ≡ [[1]] modulo 3.
        let mut sys = MatrixSystem::new();
        let x = sys.var(1, 1);
        sys.equation(
            vec![(x, m(1, 1, &[2]), m(1, 1, &[1]))],
            m(1, 1, &[1]),
            Some(m(1, 1, &[3])),
        );
        let sol = sys.solve().unwrap();
        assert!(divides(&int(3), &(int(2) * sol[0].get(0, 0) - int(1))));
        let mut bad = MatrixSystem::new();
        let y = bad.var(1, 1);
        bad.equation(vec![(y, m(1, 1, &[2]), m(1, 1, &[1]))], m(1, 1, &[1]), None);
        assert!(bad.solve().is_none());
    }

    #[test]
    fn preimage_of_lattice() {
        // x ↦ 2x into Z/4 (relation 4): preimage of 0 is 2Z.
        let k = preimage_lattice(&m(1, 1, &[2]), &m(1, 1, &[4])).unwrap();
        assert_eq!(k, m(1, 1, &[2]));
    }
}
