//! Exact integer linear algebra on lattices: gcds of minors, saturation
//! indices, primitive vectors and quotient maps.
//!
//! Everything here is arbitrary precision; there is no floating point in the
//! kernel. Ray generators, divisorial valuations and monomial-map matrices all
//! live in these types.

use crate::arith::Int;
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A point of Z^dim.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(pub Vec<Int>);

impl IntVector {
    pub fn from_i64(v: &[i64]) -> Self {
        IntVector(v.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVector(vec![Int::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![Int::zero(); dim];
        v[i] = Int::one();
        IntVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Int) -> IntVector {
        IntVector(self.0.iter().map(|a| a * c).collect())
    }

    /// gcd of the absolute values of the entries.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for a in &self.0 {
            g = g.gcd(a);
        }
        g
    }

    /// True iff self and other span the same line (or either is zero).
    pub fn is_parallel(&self, other: &IntVector) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                if &self.0[i] * &other.0[j] != &self.0[j] * &other.0[i] {
                    return false;
                }
            }
        }
        true
    }
}

impl std::fmt::Display for IntVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                *m.at_mut(i, j) = Int::from(v);
            }
        }
        m
    }

    pub fn from_columns(cols: &[IntVector]) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].dim() };
        let mut m = Self::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.dim(), r, "ragged columns");
            for i in 0..r {
                *m.at_mut(i, j) = col.0[i].clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector((0..self.cols).map(|j| self.at(i, j).clone()).collect())
    }

    pub fn mul_vec(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.dim());
        IntVector(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v.0[j]).sum())
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.data.swap(a * c + j, b * c + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let c = self.cols;
            self.data.swap(i * c + a, i * c + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &Int) {
        for j in 0..self.cols {
            let v = self.at(src, j) * q;
            *self.at_mut(dst, j) += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &Int) {
        for i in 0..self.rows {
            let v = self.at(i, src) * q;
            *self.at_mut(i, dst) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(m: &IntMatrix) -> Int {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.at(i, k).is_zero()) else {
                return Int::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / &prev;
                *a.at_mut(i, j) = v;
            }
            *a.at_mut(i, k) = Int::zero();
        }
        prev = a.at(k, k).clone();
    }
    a.at(n - 1, n - 1) * sign
}

/// gcd of the absolute values of all 2x2 minors of a matrix with exactly two
/// columns. Zero iff the columns are linearly dependent.
pub fn gcd_minors2(m: &IntMatrix) -> Result<Int> {
    if m.cols != 2 || m.rows < 2 {
        return Err(Error::DimensionMismatch(format!(
            "gcd_minors2 wants an r x 2 matrix with r >= 2, got {} x {}",
            m.rows, m.cols
        )));
    }
    let mut g = Int::zero();
    for i in 0..m.rows {
        for j in (i + 1)..m.rows {
            let minor = m.at(i, 0) * m.at(j, 1) - m.at(j, 0) * m.at(i, 1);
            g = g.gcd(&minor);
        }
    }
    Ok(g)
}

/// gcd of all k x k minors of an r x k matrix (k <= r).
fn gcd_maximal_minors(m: &IntMatrix) -> Int {
    let k = m.cols;
    let r = m.rows;
    let mut g = Int::zero();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut sub = IntMatrix::zero(k, k);
        for (a, &i) in idx.iter().enumerate() {
            for j in 0..k {
                *sub.at_mut(a, j) = m.at(i, j).clone();
            }
        }
        g = g.gcd(&det_bareiss(&sub));
        // next combination
        let mut pos = k;
        loop {
            if pos == 0 {
                return g;
            }
            pos -= 1;
            if idx[pos] + (k - pos) < r {
                idx[pos] += 1;
                for p in pos + 1..k {
                    idx[p] = idx[p - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Index of the sublattice Z-spanned by `vectors` inside its saturation.
/// Returns 0 when the vectors are linearly dependent (rank drop).
pub fn lattice_index(vectors: &[IntVector]) -> Result<Int> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput("lattice_index of no vectors".into()));
    }
    let dim = vectors[0].dim();
    if vectors.iter().any(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch("lattice_index: mixed dimensions".into()));
    }
    if vectors.len() > dim {
        return Ok(Int::zero());
    }
    let m = IntMatrix::from_columns(vectors);
    Ok(gcd_maximal_minors(&m).abs())
}

/// v divided by the gcd of its entries; keeps direction.
pub fn primitive_vector(v: &IntVector) -> Result<IntVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.content();
    Ok(IntVector(v.0.iter().map(|a| a / &g).collect()))
}

/// Unimodular row/column reduction of `m` to a diagonal matrix `d`, with
/// row transforms tracked: u * m * (col ops) = d, and u_inv = u^{-1}.
pub(crate) fn diagonalize(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut u_inv = IntMatrix::identity(m.rows);
    let rank_bound = m.rows.min(m.cols);
    for t in 0..rank_bound {
        loop {
            // pivot: smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    if !a.at(i, j).is_zero()
                        && best
                            .map(|(bi, bj)| a.at(i, j).abs() < a.at(bi, bj).abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (u, u_inv, a);
            };
            if pi != t {
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
            }
            if pj != t {
                a.swap_cols(t, pj);
            }
            let mut clean = true;
            for i in t + 1..m.rows {
                if a.at(i, t).is_zero() {
                    continue;
                }
                let (q, _) = a.at(i, t).div_mod_floor(a.at(t, t));
                let nq = -&q;
                a.add_row(i, t, &nq);
                u.add_row(i, t, &nq);
                u_inv.add_col(t, i, &q);
                if !a.at(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..m.cols {
                if a.at(t, j).is_zero() {
                    continue;
                }
                let (q, _) = a.at(t, j).div_mod_floor(a.at(t, t));
                let nq = -&q;
                a.add_col(j, t, &nq);
                if !a.at(t, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
    (u, u_inv, a)
}

/// A basis of the saturation of the lattice spanned by `cols` (rank k basis
/// of (Q-span of cols) intersected with Z^n).
pub fn saturation_basis(cols: &[IntVector]) -> Vec<IntVector> {
    if cols.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_columns(cols);
    let (_, u_inv, d) = diagonalize(&m);
    let rank = (0..m.rows.min(m.cols)).take_while(|&i| !d.at(i, i).is_zero()).count();
    (0..rank).map(|j| u_inv.column(j)).collect()
}

/// Quotient projection Z^n -> Z^(n-1) whose kernel is the saturation of Z*v.
pub fn quotient_map(v: &IntVector) -> Result<IntMatrix> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = v.dim();
    let m = IntMatrix::from_columns(std::slice::from_ref(v));
    let (u, _, _) = diagonalize(&m);
    let mut q = IntMatrix::zero(n - 1, n);
    for i in 1..n {
        for j in 0..n {
            *q.at_mut(i - 1, j) = u.at(i, j).clone();
        }
    }
    Ok(q)
}

/// Row-style Hermite normal form of a small integer matrix; rows span the
/// same lattice, pivots positive, entries above pivots reduced. Canonical per
/// row lattice, so usable as a map key.
pub fn hnf_rows(mat: &IntMatrix) -> IntMatrix {
    let mut a = mat.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !a.at(i, col).is_zero()
                    && best.map(|b| a.at(i, col).abs() < a.at(b, col).abs()).unwrap_or(true)
                {
                    best = Some(i);
                }
            }
            let Some(p) = best else {
                break;
            };
            a.swap_rows(pivot_row, p);
            let mut done = true;
            for i in pivot_row + 1..rows {
                if a.at(i, col).is_zero() {
                    continue;
                }
                let (q, r) = a.at(i, col).div_mod_floor(a.at(pivot_row, col));
                let nq = -q;
                a.add_row(i, pivot_row, &nq);
                if !r.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.at(pivot_row, col).is_zero() {
            continue;
        }
        if a.at(pivot_row, col).is_negative() {
            a.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let (q, _) = a.at(i, col).div_mod_floor(a.at(pivot_row, col));
            let nq = -q;
            a.add_row(i, pivot_row, &nq);
        }
        pivot_row += 1;
    }
    a
}

/// Coordinates of x in the (rank-2, saturated) lattice with basis rows
/// (b1, b2); None if x is outside the spanned plane or non-integral.
pub fn plane_coords(b1: &IntVector, b2: &IntVector, x: &IntVector) -> Option<(Int, Int)> {
    let n = b1.dim();
    // find two coordinate positions with invertible 2x2 block
    for i in 0..n {
        for j in (i + 1)..n {
            let det = &b1.0[i] * &b2.0[j] - &b1.0[j] * &b2.0[i];
            if det.is_zero() {
                continue;
            }
            let num_a = &x.0[i] * &b2.0[j] - &x.0[j] * &b2.0[i];
            let num_b = &b1.0[i] * &x.0[j] - &b1.0[j] * &x.0[i];
            let (qa, ra) = num_a.div_rem(&det);
            let (qb, rb) = num_b.div_rem(&det);
            if !ra.is_zero() || !rb.is_zero() {
                return None;
            }
            // verify all coordinates
            for k in 0..n {
                if &qa * &b1.0[k] + &qb * &b2.0[k] != x.0[k] {
                    return None;
                }
            }
            return Some((qa, qb));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn v(e: &[i64]) -> IntVector {
        IntVector::from_i64(e)
    }

    /// Independent oracle: gcd of minors by direct enumeration over row pairs.
    fn minors2_oracle(cols: [&[i64]; 2]) -> Int {
        let mut g = Int::zero();
        let r = cols[0].len();
        for i in 0..r {
            for j in (i + 1)..r {
                let m = int(cols[0][i]) * int(cols[1][j]) - int(cols[0][j]) * int(cols[1][i]);
                g = g.gcd(&m);
            }
        }
        g
    }

    #[test]
    fn gcd_minors2_examples() {
        let m = IntMatrix::from_columns(&[v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(gcd_minors2(&m).unwrap(), int(1));
        let m = IntMatrix::from_columns(&[v(&[2, 0, 0]), v(&[0, 2, 0])]);
        assert_eq!(gcd_minors2(&m).unwrap(), int(4));
        // all three 2x2 minors are (-2, -1, 2); gcd 1
        assert_eq!(minors2_oracle([&[-1, -2, -2], &[-2, -2, -3]]), int(1));
        let m = IntMatrix::from_columns(&[v(&[-1, -2, -2]), v(&[-2, -2, -3])]);
        assert_eq!(gcd_minors2(&m).unwrap(), int(1));
    }

    #[test]
    fn gcd_minors2_rank_drop_and_errors() {
        let m = IntMatrix::from_columns(&[v(&[2, 4]), v(&[1, 2])]);
        assert_eq!(gcd_minors2(&m).unwrap(), int(0));
        let m = IntMatrix::from_columns(&[v(&[2]), v(&[1])]);
        assert!(gcd_minors2(&m).is_err());
        let m3 = IntMatrix::from_columns(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]);
        assert!(gcd_minors2(&m3).is_err());
    }

    #[test]
    fn lattice_index_examples() {
        assert_eq!(lattice_index(&[v(&[1, 0]), v(&[0, 1])]).unwrap(), int(1));
        assert_eq!(lattice_index(&[v(&[2, 2, 2])]).unwrap(), int(2));
        // brute-force oracle: lattice points of the saturation inside the
        // half-open fundamental parallelogram of {(1,1,0),(0,2,0)}:
        // x = a(1,1,0)+b(0,2,0) integral with 0<=a,b<1 -> (a,b) in {(0,0),(0,1/2)}
        assert_eq!(lattice_index(&[v(&[1, 1, 0]), v(&[0, 2, 0])]).unwrap(), int(2));
        // dependent -> 0
        assert_eq!(lattice_index(&[v(&[1, 1]), v(&[2, 2])]).unwrap(), int(0));
        assert!(lattice_index(&[]).is_err());
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_vector(&v(&[2, 4])).unwrap(), v(&[1, 2]));
        assert_eq!(primitive_vector(&v(&[-3, 0, -3])).unwrap(), v(&[-1, 0, -1]));
        assert_eq!(primitive_vector(&v(&[0, -6])).unwrap(), v(&[0, -1]));
        assert!(primitive_vector(&v(&[0, 0])).is_err());
        // idempotent
        let p = primitive_vector(&v(&[6, -9, 12])).unwrap();
        assert_eq!(primitive_vector(&p).unwrap(), p);
    }

    #[test]
    fn diagonalize_tracks_transforms() {
        let m = IntMatrix::from_rows_i64(&[vec![4, 6], vec![2, 8], vec![6, 6]]);
        let (u, u_inv, _d) = diagonalize(&m);
        // u * u_inv = id
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let mut s = Int::zero();
                for k in 0..n {
                    s += u.at(i, k) * u_inv.at(k, j);
                }
                assert_eq!(s, if i == j { Int::one() } else { Int::zero() });
            }
        }
    }

    #[test]
    fn saturation_and_quotient() {
        let b = saturation_basis(&[v(&[2, 2, 2])]);
        assert_eq!(b.len(), 1);
        assert!(b[0].is_parallel(&v(&[1, 1, 1])));
        assert_eq!(b[0].content(), int(1));

        let q = quotient_map(&v(&[-3, -3, -3])).unwrap();
        assert_eq!(q.mul_vec(&v(&[-3, -3, -3])), IntVector::zero(2));
        // surjectivity: gcd of the maximal minors of the transpose is 1
        let t = IntMatrix::from_columns(&[q.row(0), q.row(1)]);
        let g = gcd_maximal_minors(&t);
        assert_eq!(g.abs(), int(1));
    }

    #[test]
    fn plane_coordinates() {
        let b1 = v(&[1, 0, 1]);
        let b2 = v(&[0, 1, 0]);
        assert_eq!(plane_coords(&b1, &b2, &v(&[2, -1, 2])), Some((int(2), int(-1))));
        assert_eq!(plane_coords(&b1, &b2, &v(&[2, -1, 3])), None);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntMatrix::from_rows_i64(&[vec![2, 4, 6], vec![1, 1, 1]]);
        let b = IntMatrix::from_rows_i64(&[vec![3, 5, 7], vec![1, 1, 1]]);
        assert_eq!(hnf_rows(&a), hnf_rows(&b));
    }
}
