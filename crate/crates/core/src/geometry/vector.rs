use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// A position in model space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[Rational; 3]", into = "[Rational; 3]")]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

/// A displacement between two positions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[Rational; 3]", into = "[Rational; 3]")]
pub struct Vector3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: impl Into<Rational>, y: impl Into<Rational>, z: impl Into<Rational>) -> Self {
        Point3 {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn origin() -> Self {
        Point3::new(0, 0, 0)
    }

    pub fn to_vector(&self) -> Vector3 {
        Vector3 {
            x: self.x.clone(),
            y: self.y.clone(),
            z: self.z.clone(),
        }
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn distance_squared(&self, other: &Point3) -> Rational {
        (self - other).norm_squared()
    }

    pub fn scaled(&self, k: &Rational) -> Point3 {
        Point3 {
            x: &self.x * k,
            y: &self.y * k,
            z: &self.z * k,
        }
    }
}

impl Vector3 {
    pub fn new(x: impl Into<Rational>, y: impl Into<Rational>, z: impl Into<Rational>) -> Self {
        Vector3 {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn zero() -> Self {
        Vector3::new(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &Vector3) -> Rational {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Vector3) -> Vector3 {
        Vector3 {
            x: &self.y * &other.z - &self.z * &other.y,
            y: &self.z * &other.x - &self.x * &other.z,
            z: &self.x * &other.y - &self.y * &other.x,
        }
    }

    pub fn norm_squared(&self) -> Rational {
        self.dot(self)
    }

    pub fn scaled(&self, k: &Rational) -> Vector3 {
        Vector3 {
            x: &self.x * k,
            y: &self.y * k,
            z: &self.z * k,
        }
    }

    pub fn to_point(&self) -> Point3 {
        Point3 {
            x: self.x.clone(),
            y: self.y.clone(),
            z: self.z.clone(),
        }
    }

    pub fn components(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }
}

/// Scalar triple product `a · (b × c)`.
pub fn triple(a: &Vector3, b: &Vector3, c: &Vector3) -> Rational {
    a.dot(&b.cross(c))
}

impl Sub for &Point3 {
    type Output = Vector3;
    fn sub(self, rhs: &Point3) -> Vector3 {
        Vector3 {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            z: &self.z - &rhs.z,
        }
    }
}

impl Add<&Vector3> for &Point3 {
    type Output = Point3;
    fn add(self, rhs: &Vector3) -> Point3 {
        Point3 {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &self.z + &rhs.z,
        }
    }
}

impl Add<&Vector3> for &Vector3 {
    type Output = Vector3;
    fn add(self, rhs: &Vector3) -> Vector3 {
        Vector3 {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &self.z + &rhs.z,
        }
    }
}

impl Sub for &Vector3 {
    type Output = Vector3;
    fn sub(self, rhs: &Vector3) -> Vector3 {
        Vector3 {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            z: &self.z - &rhs.z,
        }
    }
}

impl Neg for &Vector3 {
    type Output = Vector3;
    fn neg(self) -> Vector3 {
        Vector3 {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

impl Mul<&Rational> for &Vector3 {
    type Output = Vector3;
    fn mul(self, k: &Rational) -> Vector3 {
        self.scaled(k)
    }
}

impl From<[Rational; 3]> for Point3 {
    fn from([x, y, z]: [Rational; 3]) -> Self {
        Point3 { x, y, z }
    }
}

impl From<Point3> for [Rational; 3] {
    fn from(p: Point3) -> Self {
        [p.x, p.y, p.z]
    }
}

impl From<[Rational; 3]> for Vector3 {
    fn from([x, y, z]: [Rational; 3]) -> Self {
        Vector3 { x, y, z }
    }
}

impl From<Vector3> for [Rational; 3] {
    fn from(v: Vector3) -> Self {
        [v.x, v.y, v.z]
    }
}

impl fmt::Debug for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Debug for Vector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, {}>", self.x, self.y, self.z)
    }
}

/// Row-major 3×3 rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix3(pub [[Rational; 3]; 3]);

impl Matrix3 {
    pub fn identity() -> Self {
        Matrix3::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Matrix3(rows.map(|row| row.map(Rational::from)))
    }

    pub fn from_columns(c0: &Vector3, c1: &Vector3, c2: &Vector3) -> Self {
        let cols = [c0, c1, c2];
        Matrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| cols[j].components()[i].clone())
        }))
    }

    pub fn row(&self, i: usize) -> Vector3 {
        let [x, y, z] = self.0[i].clone();
        Vector3 { x, y, z }
    }

    pub fn transpose(&self) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i].clone())
        }))
    }

    pub fn determinant(&self) -> Rational {
        triple(&self.row(0), &self.row(1), &self.row(2))
    }

    pub fn mul_matrix(&self, other: &Matrix3) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| &self.0[i][k] * &other.0[k][j]).sum())
        }))
    }

    pub fn mul_vector(&self, v: &Vector3) -> Vector3 {
        let c = v.components();
        let r = |i: usize| -> Rational { (0..3).map(|k| &self.0[i][k] * c[k]).sum() };
        Vector3 {
            x: r(0),
            y: r(1),
            z: r(2),
        }
    }

    /// Inverse via the adjugate; `None` for singular matrices.
    pub fn inverse(&self) -> Option<Matrix3> {
        let det = self.determinant();
        if det.is_zero() {
            return None;
        }
        let (r0, r1, r2) = (self.row(0), self.row(1), self.row(2));
        // columns of the inverse are the cross products of rows, divided by det
        let c0 = r1.cross(&r2);
        let c1 = r2.cross(&r0);
        let c2 = r0.cross(&r1);
        let inv = Matrix3::from_columns(&c0, &c1, &c2);
        let scale = det.recip();
        Some(Matrix3(inv.0.map(|row| row.map(|v| v * &scale))))
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix3::identity()
    }
}
