//! Dense/banded linear algebra helpers shared by the stepper and the
//! spectral probes.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Symmetric positive definite matrix in lower banded storage.
///
/// Entry `(i, j)` with `i >= j` and `i - j <= bw` lives at
/// `data[(i - j) * n + i]`. Factorization overwrites the storage with the
/// Cholesky factor `L` (same band).
pub struct BandedCholesky {
    n: usize,
    bw: usize,
    data: Vec<f64>,
    factored: bool,
}

impl BandedCholesky {
    pub fn zeros(n: usize, bw: usize) -> Self {
        Self {
            n,
            bw,
            data: vec![0.0; (bw + 1) * n],
            factored: false,
        }
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        debug_assert!(hi - lo <= self.bw, "entry outside band");
        self.data[(hi - lo) * self.n + hi] += v;
    }

    /// In-place Cholesky factorization. Fails on a non-positive pivot,
    /// reporting the ratio of the offending pivot to the largest diagonal
    /// entry as a rough conditioning hint.
    pub fn factor(&mut self) -> Result<()> {
        let (n, bw) = (self.n, self.bw);
        let max_diag = (0..n).fold(0.0f64, |m, i| m.max(self.data[i].abs()));
        for j in 0..n {
            let mut d = self.data[j];
            let kmin = j.saturating_sub(bw);
            for k in kmin..j {
                let l = self.data[(j - k) * n + j];
                d -= l * l;
            }
            if d <= 0.0 {
                return Err(Error::Numerical(format!(
                    "banded Cholesky pivot {} non-positive at column {j} (pivot/max_diag = {:.3e})",
                    d,
                    d / max_diag.max(f64::MIN_POSITIVE)
                )));
            }
            let dj = d.sqrt();
            self.data[j] = dj;
            let imax = (j + bw).min(n - 1);
            for i in (j + 1)..=imax {
                let mut s = self.data[(i - j) * n + i];
                let kmin = i.saturating_sub(bw).max(kmin);
                for k in kmin..j {
                    s -= self.data[(i - k) * n + i] * self.data[(j - k) * n + j];
                }
                self.data[(i - j) * n + i] = s / dj;
            }
        }
        self.factored = true;
        Ok(())
    }

    /// Solves `A x = b` in place using the stored factor.
    pub fn solve(&self, b: &mut [f64]) {
        assert!(self.factored, "solve before factor");
        let (n, bw) = (self.n, self.bw);
        // forward: L y = b
        for i in 0..n {
            let kmin = i.saturating_sub(bw);
            let mut s = b[i];
            for k in kmin..i {
                s -= self.data[(i - k) * n + i] * b[k];
            }
            b[i] = s / self.data[i];
        }
        // backward: L^T x = y
        for i in (0..n).rev() {
            let imax = (i + bw).min(n - 1);
            let mut s = b[i];
            for k in (i + 1)..=imax {
                s -= self.data[(k - i) * n + k] * b[k];
            }
            b[i] = s / self.data[i];
        }
    }
}

/// Householder reflector `H = I - 2 v v^T` sending `c` to `|c| e_0`.
///
/// The columns `1..n` of `H` form an orthonormal basis of the hyperplane
/// `{x : c . x = 0}`, so conjugating a matrix by `H` and dropping the first
/// row and column restricts it to that hyperplane.
pub struct Reflector {
    v: DVector<f64>,
}

impl Reflector {
    pub fn from_normal(c: &DVector<f64>) -> Self {
        let mut v = c.clone();
        let norm = v.norm();
        assert!(norm > 0.0, "zero constraint row");
        // sign choice avoids cancellation in v[0]
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * norm;
        let vn = v.norm();
        v /= vn;
        Self { v }
    }

    /// `H m H` restricted to the hyperplane (drops row/column 0).
    pub fn restrict(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let hm = self.apply_both(m);
        hm.view((1, 1), (m.nrows() - 1, m.ncols() - 1)).into_owned()
    }

    fn apply_both(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        // H M H with H = I - 2 v v^T, applied as rank-1 updates
        let v = &self.v;
        let mv = m * v;
        let vtm = (v.transpose() * m).transpose();
        let vmv = v.dot(&mv);
        let mut out = m.clone();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out[(i, j)] += -2.0 * v[i] * vtm[j] - 2.0 * mv[i] * v[j] + 4.0 * vmv * v[i] * v[j];
            }
        }
        out
    }
}

/// QR factorization of a complex upper Hessenberg matrix by Givens
/// rotations, supporting solves with the matrix and its adjoint.
pub struct HessenbergQr {
    n: usize,
    r: DMatrix<Complex64>,
    rot: Vec<(Complex64, Complex64)>, // (c, s) per subdiagonal elimination
}

impl HessenbergQr {
    /// Factors `shift * I - h` where `h` is real upper Hessenberg.
    pub fn shifted(h: &DMatrix<f64>, shift: Complex64) -> Result<Self> {
        let n = h.nrows();
        let mut r = DMatrix::<Complex64>::zeros(n, n);
        for i in 0..n {
            for j in i.saturating_sub(1)..n {
                r[(i, j)] = Complex64::new(-h[(i, j)], 0.0);
            }
            r[(i, i)] += shift;
        }
        let mut rot = Vec::with_capacity(n.saturating_sub(1));
        for k in 0..n.saturating_sub(1) {
            let a = r[(k, k)];
            let b = r[(k + 1, k)];
            let denom = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (c, s) = if denom == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (a.conj() / denom, b.conj() / denom)
            };
            for j in k..n {
                let x = r[(k, j)];
                let y = r[(k + 1, j)];
                r[(k, j)] = c * x + s * y;
                r[(k + 1, j)] = -s.conj() * x + c.conj() * y;
            }
            rot.push((c, s));
        }
        for k in 0..n {
            if r[(k, k)].norm() == 0.0 {
                return Err(Error::Numerical(format!(
                    "singular shifted pencil: shift {shift} hits an eigenvalue (pivot {k})"
                )));
            }
        }
        Ok(Self { n, r, rot })
    }

    /// Solves `(shift I - H) x = b` in place.
    pub fn solve(&self, b: &mut [Complex64]) {
        let n = self.n;
        for (k, &(c, s)) in self.rot.iter().enumerate() {
            let x = b[k];
            let y = b[k + 1];
            b[k] = c * x + s * y;
            b[k + 1] = -s.conj() * x + c.conj() * y;
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            for j in (i + 1)..n {
                acc -= self.r[(i, j)] * b[j];
            }
            b[i] = acc / self.r[(i, i)];
        }
    }

    /// Solves `(shift I - H)^H x = b` in place.
    pub fn solve_adjoint(&self, b: &mut [Complex64]) {
        let n = self.n;
        // (QR)^H x = b  =>  R^H y = b, then x = Q y (apply rotations reversed)
        for i in 0..n {
            let mut acc = b[i];
            for j in 0..i {
                acc -= self.r[(j, i)].conj() * b[j];
            }
            b[i] = acc / self.r[(i, i)].conj();
        }
        for (k, &(c, s)) in self.rot.iter().enumerate().rev() {
            let x = b[k];
            let y = b[k + 1];
            b[k] = c.conj() * x - s * y;
            b[k + 1] = s.conj() * x + c * y;
        }
    }
}

/// Dense upper-triangular solve `R x = b` (real).
pub fn solve_upper_triangular(r: &DMatrix<f64>, b: &mut [f64]) {
    let n = r.nrows();
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in (i + 1)..n {
            acc -= r[(i, j)] * b[j];
        }
        b[i] = acc / r[(i, i)];
    }
}

/// Dense upper-triangular multiply `b <- R b` (real R, complex b).
pub fn mul_upper_triangular(r: &DMatrix<f64>, b: &mut [Complex64]) {
    let n = r.nrows();
    for i in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in i..n {
            acc += r[(i, j)] * b[j];
        }
        b[i] = acc;
    }
}

/// Dense upper-triangular solve `R x = b` (real R, complex b).
pub fn solve_upper_triangular_c(r: &DMatrix<f64>, b: &mut [Complex64]) {
    let n = r.nrows();
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in (i + 1)..n {
            acc -= r[(i, j)] * b[j];
        }
        b[i] = acc / r[(i, i)];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn banded_cholesky_solves_spd_system() {
        let n = 40;
        let bw = 3;
        let mut a = BandedCholesky::zeros(n, bw);
        for i in 0..n {
            a.add(i, i, 4.0);
            if i + 1 < n {
                a.add(i + 1, i, -1.0);
            }
            if i + 3 < n {
                a.add(i + 3, i, -0.5);
            }
        }
        a.factor().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x_true: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        // b = A x via the band description
        let mut b = vec![0.0; n];
        for i in 0..n {
            b[i] += 4.0 * x_true[i];
            if i + 1 < n {
                b[i] += -1.0 * x_true[i + 1];
                b[i + 1] += -1.0 * x_true[i];
            }
            if i + 3 < n {
                b[i] += -0.5 * x_true[i + 3];
                b[i + 3] += -0.5 * x_true[i];
            }
        }
        a.solve(&mut b);
        for i in 0..n {
            assert!((b[i] - x_true[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn banded_cholesky_rejects_indefinite() {
        let mut a = BandedCholesky::zeros(3, 1);
        a.add(0, 0, 1.0);
        a.add(1, 1, -2.0);
        a.add(2, 2, 1.0);
        assert!(a.factor().is_err());
    }

    #[test]
    fn reflector_restricts_to_hyperplane() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 12;
        let c = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0f64));
        let refl = Reflector::from_normal(&c);
        // rows of (I - 2vv^T) other than the first must be orthogonal to c
        let h = DMatrix::identity(n, n) - 2.0 * &refl.v * refl.v.transpose();
        for j in 1..n {
            let col = h.column(j);
            assert!(c.dot(&col.into_owned()).abs() < 1e-12);
        }
        // restriction of the identity is the identity
        let id = DMatrix::<f64>::identity(n, n);
        let r = refl.restrict(&id);
        assert!((&r - DMatrix::<f64>::identity(n - 1, n - 1)).norm() < 1e-12);
    }

    #[test]
    fn hessenberg_qr_solves_shifted_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 20;
        let mut h = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in i.saturating_sub(1)..n {
                h[(i, j)] = rng.gen_range(-1.0..1.0);
            }
        }
        let shift = Complex64::new(0.3, 2.0);
        let qr = HessenbergQr::shifted(&h, shift).unwrap();
        let x_true: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        // b = (shift I - H) x
        let mut b = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = shift * x_true[i];
            for j in 0..n {
                acc -= h[(i, j)] * x_true[j];
            }
            b[i] = acc;
        }
        let mut sol = b.clone();
        qr.solve(&mut sol);
        for i in 0..n {
            assert!((sol[i] - x_true[i]).norm() < 1e-10);
        }
        // adjoint solve consistency: <x, (sI-H)^H y> = <(sI-H) x, y>
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = Complex64::new(i as f64 * 0.1 - 1.0, 0.5);
        }
        let mut adj = y.clone();
        qr.solve_adjoint(&mut adj);
        // verify (shift I - H)^H adj = y
        let mut check = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = shift.conj() * adj[i];
            for j in 0..n {
                acc -= h[(j, i)] * adj[j];
            }
            check[i] = acc;
        }
        for i in 0..n {
            assert!((check[i] - y[i]).norm() < 1e-10);
        }
    }
}
