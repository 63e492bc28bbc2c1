use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::vector::{Point3, Vector3};
use super::GeometryError;

/// The closed region `{x : normal·x ≤ offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHalfSpace")]
pub struct HalfSpace {
    normal: Vector3,
    offset: Rational,
}

#[derive(Deserialize)]
struct RawHalfSpace {
    normal: Vector3,
    offset: Rational,
}

impl TryFrom<RawHalfSpace> for HalfSpace {
    type Error = GeometryError;
    fn try_from(raw: RawHalfSpace) -> Result<Self, Self::Error> {
        HalfSpace::new(raw.normal, raw.offset)
    }
}

impl HalfSpace {
    pub fn new(normal: Vector3, offset: Rational) -> Result<Self, GeometryError> {
        if normal.is_zero() {
            return Err(GeometryError::ZeroNormal);
        }
        Ok(HalfSpace { normal, offset })
    }

    /// The half-space bounded by the plane through `point` with outward `normal`.
    pub fn through(point: &Point3, normal: Vector3) -> Result<Self, GeometryError> {
        let offset = normal.dot(&point.to_vector());
        HalfSpace::new(normal, offset)
    }

    /// The same half-space with the normal rescaled to a primitive integer vector.
    pub fn primitive(&self) -> HalfSpace {
        let comps = self.normal.components();
        let lcm = comps
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = comps
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        let k = Rational::new(lcm, gcd);
        HalfSpace {
            normal: self.normal.scaled(&k),
            offset: &self.offset * &k,
        }
    }

    pub fn normal(&self) -> &Vector3 {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// `normal·p − offset`: negative inside, zero on the boundary plane.
    pub fn evaluate(&self, p: &Point3) -> Rational {
        self.normal.dot(&p.to_vector()) - &self.offset
    }

    /// Sign of [`HalfSpace::evaluate`], computed over a common denominator
    /// without intermediate reductions.
    pub fn side(&self, p: &Point3) -> Ordering {
        let mut num = -self.offset.numer();
        let mut den = self.offset.denom().clone();
        for (n, x) in self.normal.components().into_iter().zip(p.coords()) {
            if n.is_zero() || x.is_zero() {
                continue;
            }
            let term_den = n.denom() * x.denom();
            num = num * &term_den + n.numer() * x.numer() * &den;
            den *= term_den;
        }
        match num.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn contains(&self, p: &Point3) -> bool {
        self.side(p) != Ordering::Greater
    }

    pub fn strictly_contains(&self, p: &Point3) -> bool {
        self.side(p) == Ordering::Less
    }

    pub fn on_boundary(&self, p: &Point3) -> bool {
        self.side(p) == Ordering::Equal
    }

    /// The reversed inequality `normal·x ≥ offset`.
    pub fn complement(&self) -> HalfSpace {
        HalfSpace {
            normal: -&self.normal,
            offset: -&self.offset,
        }
    }

    /// True when both describe the same closed half-space (positive rescaling).
    pub fn same_as(&self, other: &HalfSpace) -> bool {
        self.normal.cross(&other.normal).is_zero()
            && self.normal.dot(&other.normal).is_positive()
            && &self.offset * &other.normal.x == &other.offset * &self.normal.x
            && &self.offset * &other.normal.y == &other.offset * &self.normal.y
            && &self.offset * &other.normal.z == &other.offset * &self.normal.z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, rat};

    #[test]
    fn membership() {
        let hs = HalfSpace::new(Vector3::new(1, 0, 0), rat(1, 2)).unwrap();
        assert!(hs.contains(&Point3::new(0, 5, 5)));
        assert!(hs.contains(&Point3::new(rat(1, 2), 0, 0)));
        assert!(!hs.strictly_contains(&Point3::new(rat(1, 2), 0, 0)));
        assert!(!hs.contains(&Point3::new(1, 0, 0)));
        assert!(hs.complement().contains(&Point3::new(1, 0, 0)));
    }

    #[test]
    fn rejects_zero_normal() {
        assert_eq!(
            HalfSpace::new(Vector3::zero(), int(1)),
            Err(GeometryError::ZeroNormal)
        );
    }

    #[test]
    fn same_as_ignores_scale() {
        let a = HalfSpace::new(Vector3::new(1, 1, 0), int(1)).unwrap();
        let b = HalfSpace::new(Vector3::new(2, 2, 0), int(2)).unwrap();
        let c = HalfSpace::new(Vector3::new(-1, -1, 0), int(-1)).unwrap();
        assert!(a.same_as(&b));
        assert!(!a.same_as(&c));
    }
}
