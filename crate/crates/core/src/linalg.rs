//! Fixed-size 3-vectors and 3×3 matrices.

use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vector3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vector3 {
    pub const ZERO: Vector3 = Vector3::new(0.0, 0.0, 0.0);
    pub const X: Vector3 = Vector3::new(1.0, 0.0, 0.0);
    pub const Y: Vector3 = Vector3::new(0.0, 1.0, 0.0);
    pub const Z: Vector3 = Vector3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vector3 { x, y, z }
    }

    pub const fn from_array(v: [f64; 3]) -> Self {
        Vector3::new(v[0], v[1], v[2])
    }

    pub const fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn dot(&self, other: &Vector3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    /// Euclidean length, computed with `hypot` to avoid overflow.
    pub fn norm(&self) -> f64 {
        libm::hypot(libm::hypot(self.x, self.y), self.z)
    }

    pub fn scale(&self, s: f64) -> Vector3 {
        Vector3::new(self.x * s, self.y * s, self.z * s)
    }

    /// Splits a nonzero vector into its length and direction.
    pub fn norm_and_unit(&self) -> Result<(f64, Vector3)> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroSeparation);
        }
        if !n.is_finite() {
            return Err(Error::NonFinite("vector"));
        }
        Ok((n, self.scale(1.0 / n)))
    }

    /// Outer product `self ⊗ other`.
    pub fn outer(&self, other: &Vector3) -> Matrix3 {
        let a = self.to_array();
        let b = other.to_array();
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i] * b[j];
            }
        }
        Matrix3(m)
    }
}

impl Add for Vector3 {
    type Output = Vector3;
    fn add(self, o: Vector3) -> Vector3 {
        Vector3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vector3 {
    type Output = Vector3;
    fn sub(self, o: Vector3) -> Vector3 {
        Vector3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vector3 {
    type Output = Vector3;
    fn neg(self) -> Vector3 {
        Vector3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vector3 {
    type Output = Vector3;
    fn mul(self, s: f64) -> Vector3 {
        self.scale(s)
    }
}

/// Row-major 3×3 real matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Matrix3(pub [[f64; 3]; 3]);

impl Matrix3 {
    pub const ZERO: Matrix3 = Matrix3([[0.0; 3]; 3]);
    pub const IDENTITY: Matrix3 = Matrix3::diag(1.0, 1.0, 1.0);
    /// `𝟙 − 2ẑẑ`, the reflection through the plate.
    pub const MIRROR: Matrix3 = Matrix3::diag(1.0, 1.0, -1.0);

    pub const fn diag(a: f64, b: f64, c: f64) -> Self {
        Matrix3([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]])
    }

    pub const fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        Matrix3(rows)
    }

    pub fn transpose(&self) -> Matrix3 {
        let m = &self.0;
        Matrix3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn scale(&self, s: f64) -> Matrix3 {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|v| *v *= s);
        out
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mul_vec(&self, v: &Vector3) -> Vector3 {
        let r = |i: usize| self.0[i][0] * v.x + self.0[i][1] * v.y + self.0[i][2] * v.z;
        Vector3::new(r(0), r(1), r(2))
    }

    /// Bilinear form `u · M · v`.
    pub fn sandwich(&self, u: &Vector3, v: &Vector3) -> f64 {
        u.dot(&self.mul_vec(v))
    }

    /// `tr(self · other)` without forming the product. The summation order
    /// makes `a.trace_product(b) == b.trace_product(a)` exactly.
    pub fn trace_product(&self, other: &Matrix3) -> f64 {
        let (a, b) = (&self.0, &other.0);
        let diag = a[0][0] * b[0][0] + a[1][1] * b[1][1] + a[2][2] * b[2][2];
        let off = (a[0][1] * b[1][0] + a[1][0] * b[0][1])
            + (a[0][2] * b[2][0] + a[2][0] * b[0][2])
            + (a[1][2] * b[2][1] + a[2][1] * b[1][2]);
        diag + off
    }
}

impl Index<(usize, usize)> for Matrix3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Add for Matrix3 {
    type Output = Matrix3;
    fn add(mut self, o: Matrix3) -> Matrix3 {
        self += o;
        self
    }
}

impl AddAssign for Matrix3 {
    fn add_assign(&mut self, o: Matrix3) {
        for (a, b) in self.0.iter_mut().flatten().zip(o.0.iter().flatten()) {
            *a += b;
        }
    }
}

impl Sub for Matrix3 {
    type Output = Matrix3;
    fn sub(self, o: Matrix3) -> Matrix3 {
        self + o.scale(-1.0)
    }
}

impl Mul for Matrix3 {
    type Output = Matrix3;
    fn mul(self, o: Matrix3) -> Matrix3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        Matrix3(m)
    }
}

impl Mul<f64> for Matrix3 {
    type Output = Matrix3;
    fn mul(self, s: f64) -> Matrix3 {
        self.scale(s)
    }
}
