use std::ops::{Add, Sub};

use rug::{Complex, Float};

/// Dense 2×2 complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2(pub [[Complex; 2]; 2]);

impl Mat2 {
    pub fn identity(prec: u32) -> Self {
        let one = Complex::with_val(prec, 1);
        let zero = Complex::with_val(prec, 0);
        Mat2([[one.clone(), zero.clone()], [zero, one]])
    }

    pub fn prec(&self) -> u32 {
        self.0[0][0].prec().0
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        &self.0[i][j]
    }

    pub fn det(&self) -> Complex {
        let prec = self.prec();
        let [[m00, m01], [m10, m11]] = &self.0;
        Complex::with_val(prec, m00 * m11) - Complex::with_val(prec, m01 * m10)
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let prec = self.prec();
        let entry = |i: usize, j: usize| {
            Complex::with_val(prec, &self.0[i][0] * &rhs.0[0][j]) + Complex::with_val(prec, &self.0[i][1] * &rhs.0[1][j])
        };
        Mat2([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> Float {
        let prec = self.prec();
        self.0.iter().flatten().map(|z| Float::with_val(prec, z.abs_ref())).fold(Float::with_val(prec, 0), |acc, v| acc.max(&v))
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: &Mat2) -> Mat2 {
        let prec = self.prec();
        let e = |i: usize, j: usize| Complex::with_val(prec, &self.0[i][j] - &rhs.0[i][j]);
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

/// `ci·I + c1·σ₁ + c2·σ₂ + c3·σ₃` with
/// `σ₁ = [[0,1],[1,0]]`, `σ₂ = [[0,-i],[i,0]]`, `σ₃ = [[1,0],[0,-1]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliCoefficients {
    pub ci: Complex,
    pub c1: Complex,
    pub c2: Complex,
    pub c3: Complex,
}

impl PauliCoefficients {
    pub fn zero(prec: u32) -> Self {
        let z = Complex::with_val(prec, 0);
        PauliCoefficients { ci: z.clone(), c1: z.clone(), c2: z.clone(), c3: z }
    }

    pub fn new(ci: Complex, c1: Complex, c2: Complex, c3: Complex) -> Self {
        PauliCoefficients { ci, c1, c2, c3 }
    }

    pub fn prec(&self) -> u32 {
        self.ci.prec().0
    }

    /// `x (σ₃ + i σ₁)` for `sign = 1`, `x (σ₃ - i σ₁)` for `sign = -1`.
    pub fn sigma3_with_sigma1(x: &Float, sign: i32) -> Self {
        let prec = x.prec();
        let mut out = Self::zero(prec);
        out.c3 = Complex::with_val(prec, x);
        out.c1 = Complex::with_val(prec, (0, x * Float::with_val(prec, sign)));
        out
    }

    pub fn to_matrix(&self) -> Mat2 {
        let prec = self.prec();
        let ic2 = self.c2.clone().mul_i(false);
        Mat2([
            [Complex::with_val(prec, &self.ci + &self.c3), Complex::with_val(prec, &self.c1 - &ic2)],
            [Complex::with_val(prec, &self.c1 + &ic2), Complex::with_val(prec, &self.ci - &self.c3)],
        ])
    }

    pub fn from_matrix(m: &Mat2) -> Self {
        let prec = m.prec();
        let [[m00, m01], [m10, m11]] = &m.0;
        let ci = Complex::with_val(prec, m00 + m11) / 2u32;
        let c3 = Complex::with_val(prec, m00 - m11) / 2u32;
        let c1 = Complex::with_val(prec, m01 + m10) / 2u32;
        let c2 = (Complex::with_val(prec, m01 - m10) / 2u32).mul_i(false);
        PauliCoefficients { ci, c1, c2, c3 }
    }

    pub fn scale(&self, x: &Complex) -> Self {
        let prec = self.prec();
        let f = |c: &Complex| Complex::with_val(prec, c * x);
        PauliCoefficients { ci: f(&self.ci), c1: f(&self.c1), c2: f(&self.c2), c3: f(&self.c3) }
    }

    pub fn scale_real(&self, x: &Float) -> Self {
        let prec = self.prec();
        let f = |c: &Complex| Complex::with_val(prec, c * x);
        PauliCoefficients { ci: f(&self.ci), c1: f(&self.c1), c2: f(&self.c2), c3: f(&self.c3) }
    }

    /// Largest component modulus.
    pub fn max_abs(&self) -> Float {
        let prec = self.prec();
        [&self.ci, &self.c1, &self.c2, &self.c3]
            .into_iter()
            .map(|z| Float::with_val(prec, z.abs_ref()))
            .fold(Float::with_val(prec, 0), |acc, v| acc.max(&v))
    }

    /// Distance in the largest-component norm.
    pub fn distance(&self, other: &Self) -> Float {
        (self - other).max_abs()
    }
}

impl Add for &PauliCoefficients {
    type Output = PauliCoefficients;

    fn add(self, rhs: &PauliCoefficients) -> PauliCoefficients {
        let prec = self.prec();
        PauliCoefficients {
            ci: Complex::with_val(prec, &self.ci + &rhs.ci),
            c1: Complex::with_val(prec, &self.c1 + &rhs.c1),
            c2: Complex::with_val(prec, &self.c2 + &rhs.c2),
            c3: Complex::with_val(prec, &self.c3 + &rhs.c3),
        }
    }
}

impl Sub for &PauliCoefficients {
    type Output = PauliCoefficients;

    fn sub(self, rhs: &PauliCoefficients) -> PauliCoefficients {
        let prec = self.prec();
        PauliCoefficients {
            ci: Complex::with_val(prec, &self.ci - &rhs.ci),
            c1: Complex::with_val(prec, &self.c1 - &rhs.c1),
            c2: Complex::with_val(prec, &self.c2 - &rhs.c2),
            c3: Complex::with_val(prec, &self.c3 - &rhs.c3),
        }
    }
}
