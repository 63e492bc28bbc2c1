use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::vector::{Matrix3, Point3, Vector3};
use super::GeometryError;

/// Sign of a motion's determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Orientation {
    Proper,
    Improper,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Proper => 1,
            Orientation::Improper => -1,
        }
    }

    pub fn compose(self, other: Orientation) -> Orientation {
        if self == other {
            Orientation::Proper
        } else {
            Orientation::Improper
        }
    }
}

impl TryFrom<i8> for Orientation {
    type Error = String;
    fn try_from(value: i8) -> Result<Self, Self::Error> {
        match value {
            1 => Ok(Orientation::Proper),
            -1 => Ok(Orientation::Improper),
            other => Err(format!("orientation must be 1 or -1, got {other}")),
        }
    }
}

impl From<Orientation> for i8 {
    fn from(o: Orientation) -> i8 {
        o.sign()
    }
}

/// An affine isometry `x ↦ matrix·x + translation` with a rational orthogonal matrix.
///
/// Construction does not validate; motions read from files may be malformed
/// and are checked with [`RigidMotion::is_valid`] at the point of use.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RigidMotion {
    pub matrix: Matrix3,
    pub translation: Vector3,
    pub orientation: Orientation,
}

impl RigidMotion {
    /// Builds a motion, deriving the orientation from the determinant sign.
    pub fn new(matrix: Matrix3, translation: Vector3) -> Self {
        let orientation = if matrix.determinant().is_negative() {
            Orientation::Improper
        } else {
            Orientation::Proper
        };
        RigidMotion {
            matrix,
            translation,
            orientation,
        }
    }

    pub fn identity() -> Self {
        RigidMotion::new(Matrix3::identity(), Vector3::zero())
    }

    pub fn translation(v: Vector3) -> Self {
        RigidMotion::new(Matrix3::identity(), v)
    }

    pub fn linear(matrix: Matrix3) -> Self {
        RigidMotion::new(matrix, Vector3::zero())
    }

    /// Rotation by a quarter turn `quarters` times (counter-clockwise) about the z-axis.
    pub fn rotation_z(quarters: i32) -> Self {
        let m = match quarters.rem_euclid(4) {
            0 => [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            1 => [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
            2 => [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
            _ => [[0, 1, 0], [-1, 0, 0], [0, 0, 1]],
        };
        RigidMotion::linear(Matrix3::from_ints(m))
    }

    /// Reflection in the plane `x = y`.
    pub fn swap_xy() -> Self {
        RigidMotion::linear(Matrix3::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))
    }

    /// The motion whose matrix sends axis `i` to `signs[i]·e[perm[i]]`.
    pub fn signed_permutation(perm: [usize; 3], signs: [i64; 3]) -> Self {
        let mut m = [[0i64; 3]; 3];
        for i in 0..3 {
            m[perm[i]][i] = signs[i];
        }
        RigidMotion::linear(Matrix3::from_ints(m))
    }

    /// True iff `MᵀM = I`, `det M = ±1`, and the stored orientation matches the determinant.
    pub fn is_valid(&self) -> bool {
        if !self
            .matrix
            .transpose()
            .mul_matrix(&self.matrix)
            .is_identity()
        {
            return false;
        }
        let det = self.matrix.determinant();
        let expected = Rational::from(self.orientation.sign() as i64);
        det == expected
    }

    pub fn ensure_valid(&self) -> Result<(), GeometryError> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(GeometryError::NotAnIsometry)
        }
    }

    pub fn is_proper(&self) -> bool {
        self.orientation == Orientation::Proper
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity() && self.translation.is_zero()
    }

    pub fn apply(&self, p: &Point3) -> Result<Point3, GeometryError> {
        self.ensure_valid()?;
        Ok(self.apply_unchecked(p))
    }

    /// `matrix·p + translation` without the isometry check.
    pub fn apply_unchecked(&self, p: &Point3) -> Point3 {
        let v = self.matrix.mul_vector(&p.to_vector());
        (&v + &self.translation).to_point()
    }

    pub fn apply_vector(&self, v: &Vector3) -> Vector3 {
        self.matrix.mul_vector(v)
    }

    /// The motion applying `second` first and then `self`.
    pub fn compose(&self, second: &RigidMotion) -> RigidMotion {
        let matrix = self.matrix.mul_matrix(&second.matrix);
        let translation = &self.matrix.mul_vector(&second.translation) + &self.translation;
        RigidMotion {
            matrix,
            translation,
            orientation: self.orientation.compose(second.orientation),
        }
    }

    /// Follows `self` with a translation by `v`.
    pub fn then_translate(&self, v: &Vector3) -> RigidMotion {
        RigidMotion {
            matrix: self.matrix.clone(),
            translation: &self.translation + v,
            orientation: self.orientation,
        }
    }

    pub fn inverse(&self) -> Result<RigidMotion, GeometryError> {
        self.ensure_valid()?;
        let matrix = self.matrix.transpose();
        let translation = -&matrix.mul_vector(&self.translation);
        Ok(RigidMotion {
            matrix,
            translation,
            orientation: self.orientation,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyclic() -> RigidMotion {
        // (x, y, z) -> (y, z, x)
        RigidMotion::linear(Matrix3::from_ints([[0, 1, 0], [0, 0, 1], [1, 0, 0]]))
    }

    #[test]
    fn validation_cases() {
        assert!(RigidMotion::identity().is_valid());
        let c = cyclic();
        assert!(c.is_valid());
        assert_eq!(c.orientation, Orientation::Proper);
        let bad = RigidMotion {
            matrix: Matrix3::from_ints([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            translation: Vector3::zero(),
            orientation: Orientation::Proper,
        };
        assert!(!bad.is_valid());
        let wrong_sign = RigidMotion {
            orientation: Orientation::Improper,
            ..RigidMotion::identity()
        };
        assert!(!wrong_sign.is_valid());
    }

    #[test]
    fn apply_cases() {
        let p = Point3::new(1, 2, 3);
        assert_eq!(RigidMotion::identity().apply(&p).unwrap(), p);
        let e1 = Point3::new(1, 0, 0);
        assert_eq!(
            RigidMotion::swap_xy().apply(&e1).unwrap(),
            Point3::new(0, 1, 0)
        );
        assert_eq!(
            RigidMotion::rotation_z(1).apply(&e1).unwrap(),
            Point3::new(0, 1, 0)
        );
        let bad = RigidMotion {
            matrix: Matrix3::from_ints([[2, 0, 0], [0, 1, 0], [0, 0, 1]]),
            translation: Vector3::zero(),
            orientation: Orientation::Proper,
        };
        assert_eq!(bad.apply(&e1), Err(GeometryError::NotAnIsometry));
    }

    #[test]
    fn compose_cases() {
        let m = RigidMotion::rotation_z(1).then_translate(&Vector3::new(1, 2, 3));
        assert_eq!(RigidMotion::identity().compose(&m), m);
        let r = RigidMotion::swap_xy();
        assert!(r.compose(&r).is_identity());
        // (x,y,z)->(y,z,x) twice is (x,y,z)->(z,x,y)
        let twice = cyclic().compose(&cyclic());
        assert_eq!(
            twice.matrix,
            Matrix3::from_ints([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
        );
        let swap_then_cyclic = cyclic().compose(&r);
        assert_eq!(swap_then_cyclic.orientation, Orientation::Improper);
        assert!(swap_then_cyclic.is_valid());
    }

    fn arb_motion() -> impl Strategy<Value = RigidMotion> {
        let perms = prop::sample::select(vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ]);
        let sign = prop::sample::select(vec![-1i64, 1]);
        (
            perms,
            [sign.clone(), sign.clone(), sign],
            [-20i64..20, -20i64..20, -20i64..20],
            1i64..5,
        )
            .prop_map(|(perm, signs, t, d)| {
                RigidMotion::signed_permutation(perm, signs).then_translate(&Vector3::new(
                    Rational::new(t[0], d),
                    Rational::new(t[1], d),
                    Rational::new(t[2], d),
                ))
            })
    }

    fn arb_point() -> impl Strategy<Value = Point3> {
        ([-50i64..50, -50i64..50, -50i64..50], 1i64..7).prop_map(|(c, d)| {
            Point3::new(
                Rational::new(c[0], d),
                Rational::new(c[1], d),
                Rational::new(c[2], d),
            )
        })
    }

    proptest! {
        #[test]
        fn motions_preserve_distance(m in arb_motion(), p in arb_point(), q in arb_point()) {
            let mp = m.apply(&p).unwrap();
            let mq = m.apply(&q).unwrap();
            prop_assert_eq!(mp.distance_squared(&mq), p.distance_squared(&q));
        }

        #[test]
        fn compose_is_associative(a in arb_motion(), b in arb_motion(), c in arb_motion()) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn inverse_is_valid_and_cancels(m in arb_motion(), p in arb_point()) {
            let inv = m.inverse().unwrap();
            prop_assert!(inv.is_valid());
            prop_assert!(m.compose(&inv).is_identity());
            prop_assert_eq!(inv.apply(&m.apply(&p).unwrap()).unwrap(), p);
        }
    }
}
