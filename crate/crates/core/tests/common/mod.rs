#![allow(dead_code)]

use frusta_core::catalog::SolidSpec;
use frusta_core::geometry::{Matrix3, Rational, RigidMotion, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive rational with numerator and denominator in `1..=50`.
pub fn positive(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.random_range(1..=50i64), rng.random_range(1..=50i64))
}

pub fn signed(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.random_range(-50..=50i64), rng.random_range(1..=50i64))
}

/// `(a, b, h)` with `a > b > 0`, `h > 0`.
pub fn frustum_triple(rng: &mut impl Rng) -> (Rational, Rational, Rational) {
    loop {
        let (x, y) = (positive(rng), positive(rng));
        if x != y {
            let (a, b) = if x > y { (x, y) } else { (y, x) };
            return (a, b, positive(rng));
        }
    }
}

/// Rotation from a random integer quaternion, optionally composed with a
/// reflection, plus a random translation. Always an exact isometry.
pub fn motion(rng: &mut impl Rng) -> RigidMotion {
    let q: [i64; 4] = loop {
        let q = [0; 4].map(|_| rng.random_range(-4..=4i64));
        if q.iter().any(|x| *x != 0) {
            break q;
        }
    };
    let [a, b, c, d] = q;
    let n = a * a + b * b + c * c + d * d;
    let entries = [
        [
            a * a + b * b - c * c - d * d,
            2 * (b * c - a * d),
            2 * (b * d + a * c),
        ],
        [
            2 * (b * c + a * d),
            a * a - b * b + c * c - d * d,
            2 * (c * d - a * b),
        ],
        [
            2 * (b * d - a * c),
            2 * (c * d + a * b),
            a * a - b * b - c * c + d * d,
        ],
    ];
    let mut m = Matrix3(entries.map(|row| row.map(|x| Rational::new(x, n))));
    if rng.random_bool(0.5) {
        m = m.mul_matrix(&Matrix3::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, -1]]));
    }
    let t = Vector3::new(signed(rng), signed(rng), signed(rng));
    RigidMotion::new(m, t)
}

pub fn solid(rng: &mut impl Rng) -> SolidSpec {
    let (a, b, h) = frustum_triple(rng);
    match rng.random_range(0..8) {
        0 => SolidSpec::cuboid(a, b, h),
        1 => SolidSpec::symmetric_frustum(a, b, h),
        2 => SolidSpec::right_frustum(a, b, h),
        3 => SolidSpec::symmetric_pyramid(a, h),
        4 => SolidSpec::yangma(a, b, h),
        5 => SolidSpec::qiandu(a, b, h),
        6 => SolidSpec::truncated_juel(a, b),
        _ => SolidSpec::regular_tetrahedron(),
    }
}
