use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::LinalgError;

/// Dense integer matrix, row-major, arbitrary precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::ShapeMismatch { expected: cols, found: r.len() });
            }
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::ShapeMismatch { expected: rows, found: c.len() });
            }
            for (i, &x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = BigInt::from(x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row_vec(&self, r: usize) -> Vec<BigInt> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column_vec(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Entries as i64 when they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| i64::try_from(self.get(r, c).clone()).ok())
                    .collect::<Option<Vec<i64>>>()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
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

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] <- x*row[a] + y*row[b], row[b] <- z*row[a] + w*row[b]
    fn mix_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for j in 0..self.cols {
            let ra = self.data[a * self.cols + j].clone();
            let rb = self.data[b * self.cols + j].clone();
            if ra.is_zero() && rb.is_zero() {
                continue;
            }
            self.data[a * self.cols + j] = x * &ra + y * &rb;
            self.data[b * self.cols + j] = z * &ra + w * &rb;
        }
    }

    fn mix_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for i in 0..self.rows {
            let ca = self.data[i * self.cols + a].clone();
            let cb = self.data[i * self.cols + b].clone();
            if ca.is_zero() && cb.is_zero() {
                continue;
            }
            self.data[i * self.cols + a] = x * &ca + y * &cb;
            self.data[i * self.cols + b] = z * &ca + w * &cb;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.data[r * self.cols + j].clone();
            self.data[r * self.cols + j] = v;
        }
    }

    /// col[t] -= f * col[s]
    fn sub_col(&mut self, t: usize, s: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.data[i * self.cols + s].clone();
            if !v.is_zero() {
                self.data[i * self.cols + t] -= f * v;
            }
        }
    }

    /// row[t] -= f * row[s]
    fn sub_row(&mut self, t: usize, s: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.data[s * self.cols + j].clone();
            if !v.is_zero() {
                self.data[t * self.cols + j] -= f * v;
            }
        }
    }
}

/// Row-style Hermite normal form of the row lattice, zero rows dropped.
/// Pivots are positive and entries above a pivot lie in `0..pivot`.
pub fn row_hnf(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        // gcd-combine all rows below r into row r at column c
        for i in (r + 1)..a.rows {
            if a.get(i, c).is_zero() {
                continue;
            }
            let x = a.get(r, c).clone();
            let y = a.get(i, c).clone();
            if !x.is_zero() && y.is_multiple_of(&x) {
                a.sub_row(i, r, &(&y / &x));
                continue;
            }
            let e = x.extended_gcd(&y);
            let g = e.gcd;
            let (s, t) = (e.x, e.y);
            let xg = &x / &g;
            let yg = &y / &g;
            a.mix_rows(r, i, &s, &t, &(-yg), &xg);
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
        }
        let piv = a.get(r, c).clone();
        for i in 0..r {
            let q = a.get(i, c).div_floor(&piv);
            a.sub_row(i, r, &q);
        }
        r += 1;
    }
    let mut out = IntMatrix::zeros(r, a.cols);
    for i in 0..r {
        for j in 0..a.cols {
            out.set(i, j, a.get(i, j).clone());
        }
    }
    out
}

/// Column-style Hermite normal form: the columns of the result generate the
/// same lattice as the columns of `m`.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    row_hnf(&m.transpose()).transpose()
}

/// Basis (as columns) of the integer kernel {x in Z^n : m x = 0}.
pub fn int_kernel(m: &IntMatrix) -> IntMatrix {
    let n = m.cols;
    let k = m.rows;
    // rows of [m^T | I]
    let mut aug = IntMatrix::zeros(n, k + n);
    for i in 0..n {
        for j in 0..k {
            aug.set(i, j, m.get(j, i).clone());
        }
        aug.set(i, k + i, BigInt::one());
    }
    let h = row_hnf(&aug);
    let mut basis = Vec::new();
    for i in 0..h.rows {
        if (0..k).all(|j| h.get(i, j).is_zero()) {
            basis.push((0..n).map(|j| h.get(i, k + j).clone()).collect::<Vec<_>>());
        }
    }
    let mut out = IntMatrix::zeros(n, basis.len());
    for (c, v) in basis.into_iter().enumerate() {
        for (r, x) in v.into_iter().enumerate() {
            out.set(r, c, x);
        }
    }
    out
}

/// Whether `v` lies in the column lattice of `m`.
pub fn in_column_lattice(m: &IntMatrix, v: &[BigInt]) -> Result<bool, LinalgError> {
    if v.len() != m.rows {
        return Err(LinalgError::ShapeMismatch { expected: m.rows, found: v.len() });
    }
    let h = row_hnf(&m.transpose());
    let mut w: Vec<BigInt> = v.to_vec();
    for i in 0..h.rows {
        let Some(c) = (0..h.cols).find(|&c| !h.get(i, c).is_zero()) else {
            continue;
        };
        let piv = h.get(i, c);
        if !w[c].is_multiple_of(piv) {
            return Ok(false);
        }
        let q = &w[c] / piv;
        for (j, wj) in w.iter_mut().enumerate() {
            let hij = h.get(i, j);
            if !hij.is_zero() {
                *wj -= &q * hij;
            }
        }
    }
    Ok(w.iter().all(|x| x.is_zero()))
}

/// Smith normal form: returns the diagonal matrix and its diagonal entries
/// d_1 | d_2 | ... (non-negative, zeros trailing).
pub fn snf(m: &IntMatrix) -> (IntMatrix, Vec<BigInt>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // choose smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(t, bi);
        a.swap_cols(t, bj);
        loop {
            let mut changed = false;
            for i in (t + 1)..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let x = a.get(t, t).clone();
                let y = a.get(i, t).clone();
                if y.is_multiple_of(&x) {
                    a.sub_row(i, t, &(&y / &x));
                    changed = true;
                    continue;
                }
                let e = x.extended_gcd(&y);
                let (g, s, u) = (e.gcd, e.x, e.y);
                a.mix_rows(t, i, &s, &u, &(-(&y / &g)), &(&x / &g));
                changed = true;
            }
            for j in (t + 1)..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let x = a.get(t, t).clone();
                let y = a.get(t, j).clone();
                if y.is_multiple_of(&x) {
                    a.sub_col(j, t, &(&y / &x));
                    changed = true;
                    continue;
                }
                let e = x.extended_gcd(&y);
                let (g, s, u) = (e.gcd, e.x, e.y);
                a.mix_cols(t, j, &s, &u, &(-(&y / &g)), &(&x / &g));
                changed = true;
            }
            if !changed {
                // enforce divisibility of the remaining block by the pivot
                let piv = a.get(t, t).clone();
                let bad = ((t + 1)..rows)
                    .flat_map(|i| ((t + 1)..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).is_multiple_of(&piv));
                match bad {
                    Some((i, _)) => {
                        let one = BigInt::one();
                        let zero = BigInt::zero();
                        a.mix_rows(t, i, &one, &one, &zero, &one);
                    }
                    None => break,
                }
            }
        }
        if a.get(t, t).is_negative() {
            let v = -a.get(t, t).clone();
            a.set(t, t, v);
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| a.get(i, i).clone()).collect();
    (a, diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn snf_of_diag_2_3() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        let (_, d) = snf(&m);
        assert_eq!(d, vec![b(1), b(6)]);
    }

    #[test]
    fn hnf_drops_dependent_columns() {
        let m = IntMatrix::from_columns(2, &[vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1]]).unwrap();
        let h = hnf(&m);
        assert_eq!(h.cols(), 2);
        assert!(in_column_lattice(&h, &[b(1), b(1)]).unwrap());
        assert!(!in_column_lattice(&h, &[b(1), b(0)]).unwrap());
    }

    #[test]
    fn kernel_of_two_columns() {
        let m = IntMatrix::from_rows(&[vec![2, 4]]).unwrap();
        let k = int_kernel(&m);
        assert_eq!(k.cols(), 1);
        let v = k.column_vec(0);
        assert!(v == vec![b(-2), b(1)] || v == vec![b(2), b(-1)]);
    }
}
