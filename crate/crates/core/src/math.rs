//! Small fixed-size linear algebra: complex 2x2 matrices, real 3x3 and 4x4
//! matrices, and the handful of closed-form decompositions the rest of the
//! crate needs. Everything is plain value types; no allocation.

use num_complex::Complex64;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A 2x2 complex matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e: [[C64; 2]; 2],
}

/// Identity matrix (sigma_0).
pub const SIGMA_0: Mat2 = Mat2 {
    e: [
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
    ],
};

/// Pauli x.
pub const SIGMA_X: Mat2 = Mat2 {
    e: [
        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
    ],
};

/// Pauli y.
pub const SIGMA_Y: Mat2 = Mat2 {
    e: [
        [C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
        [C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
    ],
};

/// Pauli z.
pub const SIGMA_Z: Mat2 = Mat2 {
    e: [
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)],
    ],
};

impl Mat2 {
    pub fn new(e00: C64, e01: C64, e10: C64, e11: C64) -> Self {
        Self {
            e: [[e00, e01], [e10, e11]],
        }
    }

    pub fn zero() -> Self {
        let z = C64::new(0.0, 0.0);
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        SIGMA_0
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.e;
        let b = &rhs.e;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] += rhs.e[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] -= rhs.e[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] *= s;
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        Mat2::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.e[0][0], self.e[1][0], self.e[0][1], self.e[1][1])
    }

    pub fn trace(&self) -> C64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> C64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Mat2) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.e[i][j] - rhs.e[i][j]).norm());
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Mat2::zero())
    }

    /// Deviation from Hermiticity: max |e_ij - conj(e_ji)|.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Deviation from unitarity: max |(U U^dag - I)_ij|.
    pub fn unitarity_residual(&self) -> f64 {
        self.mul(&self.adjoint()).max_abs_diff(&SIGMA_0)
    }

    /// Eigenvalues of a Hermitian 2x2 matrix, descending order.
    ///
    /// Uses the closed form (t/2 +- sqrt(t^2/4 - det)) on the real trace and
    /// determinant; the caller is responsible for the input being Hermitian.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let t = self.trace().re;
        let half_diff = 0.5 * (self.e[0][0].re - self.e[1][1].re);
        let off = self.e[0][1].norm_sqr();
        let r = (half_diff * half_diff + off).sqrt();
        [0.5 * t + r, 0.5 * t - r]
    }
}

/// Spectral decomposition of a Hermitian 2x2 matrix: eigenvalues (descending)
/// and an orthonormal pair of eigenvectors as the columns of a unitary.
///
/// Near-degenerate spectra fall back to the identity eigenbasis.
pub fn hermitian_eigensystem(m: &Mat2) -> ([f64; 2], Mat2) {
    let [l1, l2] = m.hermitian_eigenvalues();
    let b = m.e[0][1];
    let a = m.e[0][0].re;
    if (l1 - l2).abs() < 1e-14 * (1.0 + l1.abs() + l2.abs()) {
        return ([l1, l2], SIGMA_0);
    }
    // Eigenvector for l1: (b, l1 - a) unless that pair degenerates.
    let (v0, v1) = if b.norm() > (l1 - a).abs() {
        (b, c64(l1 - a, 0.0))
    } else {
        // a is the dominant diagonal entry; use the second row relation.
        (c64(l1 - m.e[1][1].re, 0.0), m.e[1][0])
    };
    let n = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
    let (v0, v1) = (v0 / n, v1 / n);
    // Orthogonal complement (-conj(v1), conj(v0)) is the eigenvector for l2.
    let u = Mat2::new(v0, -v1.conj(), v1, v0.conj());
    ([l1, l2], u)
}

/// Inverse square root of a positive-definite Hermitian 2x2 matrix.
pub fn hermitian_inv_sqrt(m: &Mat2) -> Mat2 {
    let ([l1, l2], u) = hermitian_eigensystem(m);
    assert!(l1 > 0.0 && l2 > 0.0, "matrix is not positive definite");
    let d = Mat2::new(
        c64(1.0 / l1.sqrt(), 0.0),
        c64(0.0, 0.0),
        c64(0.0, 0.0),
        c64(1.0 / l2.sqrt(), 0.0),
    );
    u.mul(&d).mul(&u.adjoint())
}

/// A 3x3 real matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3 {
    pub e: [[f64; 3]; 3],
}

impl Mat3 {
    pub fn identity() -> Self {
        let mut e = [[0.0; 3]; 3];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { e }
    }

    pub fn zero() -> Self {
        Self { e: [[0.0; 3]; 3] }
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut out = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for (k, rhs_row) in rhs.e.iter().enumerate() {
                    s += self.e[i][k] * rhs_row[j];
                }
                out.e[i][j] = s;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, row) in self.e.iter().enumerate() {
            out[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
        }
        out
    }

    pub fn det(&self) -> f64 {
        let e = &self.e;
        e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
            - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
            + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0])
    }

    pub fn max_abs_diff(&self, rhs: &Mat3) -> f64 {
        let mut m = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                m = m.max((self.e[i][j] - rhs.e[i][j]).abs());
            }
        }
        m
    }
}

/// A 4x4 real matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    pub e: [[f64; 4]; 4],
}

impl Mat4 {
    pub fn identity() -> Self {
        let mut e = [[0.0; 4]; 4];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { e }
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut out = Mat4 { e: [[0.0; 4]; 4] };
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for (k, rhs_row) in rhs.e.iter().enumerate() {
                    s += self.e[i][k] * rhs_row[j];
                }
                out.e[i][j] = s;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, rhs: &Mat4) -> f64 {
        let mut m = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((self.e[i][j] - rhs.e[i][j]).abs());
            }
        }
        m
    }
}
