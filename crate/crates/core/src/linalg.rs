//! Dense symmetric linear algebra at the sizes this crate works with (n <= 64).

use itertools::Itertools;

use crate::error::LinalgError;

/// Default relative threshold for counting an eigenvalue toward a numerical rank.
pub const RANK_TOL: f64 = 1e-8;

/// Default threshold on normalized Cayley–Menger determinants.
pub const CAYLEY_MENGER_TOL: f64 = 1e-8;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_TOL: f64 = 1e-13;
const SYMMETRY_TOL: f64 = 1e-12;

/// Real symmetric matrix stored densely in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds a matrix from its upper triangle: `f(i, j)` is called for `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Checks squareness, finiteness and symmetry (to 1e-12 relative), then
    /// averages the two triangles.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LinalgError::NotSquare { rows: n, row, cols: r.len() });
            }
            if let Some(j) = r.iter().position(|x| !x.is_finite()) {
                return Err(LinalgError::NonFinite { i: row, j });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (rows[i][j], rows[j][i]);
                if (a - b).abs() > SYMMETRY_TOL * a.abs().max(b.abs()).max(1.0) {
                    return Err(LinalgError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| 0.5 * (rows[i][j] + rows[j][i])))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, c: f64) -> Self {
        SymMatrix { n: self.n, data: self.data.iter().map(|x| c * x).collect() }
    }

    /// `x^T A x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        (0..self.n)
            .map(|i| x[i] * (0..self.n).map(|j| self.get(i, j) * x[j]).sum::<f64>())
            .sum()
    }

    pub fn check_finite(&self) -> Result<(), LinalgError> {
        match self.data.iter().position(|x| !x.is_finite()) {
            Some(k) => Err(LinalgError::NonFinite { i: k / self.n, j: k % self.n }),
            None => Ok(()),
        }
    }

    /// Errors unless every diagonal entry is within `1e-12 * max(1, max|a|)` of zero.
    pub fn check_zero_diagonal(&self) -> Result<(), LinalgError> {
        let bound = SYMMETRY_TOL * self.max_abs().max(1.0);
        match (0..self.n).find(|&i| self.get(i, i).abs() > bound) {
            Some(i) => Err(LinalgError::NonzeroDiagonal { i, value: self.get(i, i) }),
            None => Ok(()),
        }
    }
}

/// Eigendecomposition of a symmetric matrix, eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Row-major `n x n`; column `k` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: Vec<f64>,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        let n = self.n();
        (0..n).map(|i| self.eigenvectors[i * n + k]).collect()
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Number of eigenvalues above `tol * max(1, lambda_max)`.
    pub fn rank(&self, tol: f64) -> usize {
        let threshold = tol * self.largest().max(1.0);
        self.eigenvalues.iter().filter(|&&l| l > threshold).count()
    }
}

/// Cyclic Jacobi eigensolver with threshold sweeps.
pub fn symmetric_eigen(a: &SymMatrix) -> Result<Spectrum, LinalgError> {
    a.check_finite()?;
    let n = a.n();
    let mut m = a.data.clone();
    let mut v = SymMatrix::identity(n).data;
    let norm = a.frobenius();
    let off = |m: &[f64]| {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += 2.0 * m[p * n + q] * m[p * n + q];
            }
        }
        s.sqrt()
    };

    let mut converged = norm == 0.0 || n < 2;
    let mut sweep = 0;
    while !converged {
        if sweep == JACOBI_MAX_SWEEPS {
            return Err(LinalgError::NoConvergence { sweeps: sweep });
        }
        let off_norm = off(&m);
        if off_norm <= JACOBI_REL_TOL * norm {
            converged = true;
            continue;
        }
        // early sweeps only annihilate the large entries
        let threshold = if sweep < 3 { 0.2 * off_norm / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() <= threshold || apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (m[p * n + p], m[q * n + q]);
                // the rotation would not change the diagonal in floating point
                if sweep >= 3 && app.abs() + 100.0 * apq.abs() == app.abs()
                    && aqq.abs() + 100.0 * apq.abs() == aqq.abs()
                {
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let (arp, arq) = (m[r * n + p], m[r * n + q]);
                    let new_p = c * arp - s * arq;
                    let new_q = s * arp + c * arq;
                    m[r * n + p] = new_p;
                    m[p * n + r] = new_p;
                    m[r * n + q] = new_q;
                    m[q * n + r] = new_q;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for r in 0..n {
                    let (vrp, vrq) = (v[r * n + p], v[r * n + q]);
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
        sweep += 1;
    }

    let order: Vec<usize> = (0..n)
        .sorted_by(|&i, &j| m[j * n + j].total_cmp(&m[i * n + i]))
        .collect();
    let eigenvalues = order.iter().map(|&k| m[k * n + k]).collect();
    let mut eigenvectors = vec![0.0; n * n];
    for (col, &k) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[r * n + col] = v[r * n + k];
        }
    }
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Orthonormal basis of the hyperplane `{x : sum(x) = 0}` in `R^n`.
///
/// The columns are columns `2..n` of the Householder reflector that maps `e1`
/// to `1/sqrt(n)`; they are orthogonal to the all-ones vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SumZeroBasis {
    n: usize,
    /// Row-major `n x (n-1)`.
    columns: Vec<f64>,
}

impl SumZeroBasis {
    pub fn new(n: usize) -> Result<Self, LinalgError> {
        if n < 2 {
            return Err(LinalgError::TooSmall { n, min: 2 });
        }
        let u = 1.0 / (n as f64).sqrt();
        let mut v = vec![-u; n];
        v[0] += 1.0;
        let vv = 2.0 - 2.0 * u;
        let mut columns = vec![0.0; n * (n - 1)];
        for i in 0..n {
            for j in 1..n {
                let delta = if i == j { 1.0 } else { 0.0 };
                columns[i * (n - 1) + j - 1] = delta - 2.0 * v[i] * v[j] / vv;
            }
        }
        Ok(SumZeroBasis { n, columns })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.columns[i * (self.n - 1) + k]
    }

    /// `B^T M B`, an `(n-1) x (n-1)` symmetric matrix.
    pub fn project(&self, m: &SymMatrix) -> Result<SymMatrix, LinalgError> {
        if m.n() != self.n {
            return Err(LinalgError::DimensionMismatch { left: m.n(), right: self.n });
        }
        let (n, k) = (self.n, self.n - 1);
        // M B
        let mut mb = vec![0.0; n * k];
        for i in 0..n {
            for j in 0..n {
                let mij = m.get(i, j);
                if mij == 0.0 {
                    continue;
                }
                for c in 0..k {
                    mb[i * k + c] += mij * self.get(j, c);
                }
            }
        }
        Ok(SymMatrix::from_fn(k, |a, b| (0..n).map(|i| self.get(i, a) * mb[i * k + b]).sum()))
    }

    /// `B y` for `y` in `R^(n-1)`.
    pub fn lift(&self, y: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| (0..self.n - 1).map(|k| self.get(i, k) * y[k]).sum()).collect()
    }
}

/// Entrywise l1 distance `sum |m_ij - n_ij|` over all `i, j`.
pub fn l1_distance(m: &SymMatrix, n: &SymMatrix) -> Result<f64, LinalgError> {
    if m.n() != n.n() {
        return Err(LinalgError::DimensionMismatch { left: m.n(), right: n.n() });
    }
    Ok(m.data.iter().zip(&n.data).map(|(a, b)| (a - b).abs()).sum())
}

/// Classical MDS double centering `-1/2 P D P`, `P = I - 11^T/n`.
pub fn double_center(d2: &SymMatrix) -> Result<SymMatrix, LinalgError> {
    d2.check_zero_diagonal()?;
    let n = d2.n();
    if n == 0 {
        return Ok(SymMatrix::zeros(0));
    }
    let nf = n as f64;
    let row_mean: Vec<f64> = (0..n).map(|i| (0..n).map(|j| d2.get(i, j)).sum::<f64>() / nf).collect();
    let grand = row_mean.iter().sum::<f64>() / nf;
    Ok(SymMatrix::from_fn(n, |i, j| -0.5 * (d2.get(i, j) - row_mean[i] - row_mean[j] + grand)))
}

/// Cayley–Menger determinant of the points `subset`, computed from `d2`
/// scaled by `scale`.
pub fn cayley_menger_determinant(d2: &SymMatrix, subset: &[usize], scale: f64) -> f64 {
    let m = subset.len() + 1;
    let mut a = vec![0.0; m * m];
    for k in 1..m {
        a[k] = 1.0;
        a[k * m] = 1.0;
    }
    for (r, &i) in subset.iter().enumerate() {
        for (c, &j) in subset.iter().enumerate() {
            a[(r + 1) * m + c + 1] = d2.get(i, j) * scale;
        }
    }
    determinant(&mut a, m)
}

fn determinant(a: &mut [f64], m: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&x, &y| a[x * m + col].abs().total_cmp(&a[y * m + col].abs()))
            .expect("nonempty range");
        if a[pivot * m + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..m {
                a.swap(col * m + k, pivot * m + k);
            }
            det = -det;
        }
        let p = a[col * m + col];
        det *= p;
        for r in col + 1..m {
            let f = a[r * m + col] / p;
            if f != 0.0 {
                for k in col..m {
                    a[r * m + k] -= f * a[col * m + k];
                }
            }
        }
    }
    det
}

/// Affine dimension of a point set given by squared distances, independent of
/// any eigensolver: the largest `k` such that some `k + 1` points have a
/// Cayley–Menger determinant above `tol` after scaling `d2` to max entry 1.
///
/// Subsets are searched from the largest size down, so the cost is small when
/// the dimension is close to `n - 1` and combinatorial when it is far below.
pub fn affine_dimension_oracle(d2: &SymMatrix, tol: f64) -> usize {
    let n = d2.n();
    let max = d2.max_abs();
    if n < 2 || max == 0.0 {
        return 0;
    }
    let scale = 1.0 / max;
    for k in (1..n).rev() {
        if (0..n)
            .combinations(k + 1)
            .any(|subset| cayley_menger_determinant(d2, &subset, scale).abs() > tol)
        {
            return k;
        }
    }
    0
}

/// Squared Euclidean distances between rows of `coords`.
pub fn squared_distances(coords: &[Vec<f64>]) -> SymMatrix {
    SymMatrix::from_fn(coords.len(), |i, j| {
        if i == j {
            0.0
        } else {
            coords[i].iter().zip(&coords[j]).map(|(a, b)| (a - b) * (a - b)).sum()
        }
    })
}
