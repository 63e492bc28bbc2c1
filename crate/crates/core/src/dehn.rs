//! A restricted Dehn invariant: edge lengths over a `√d` basis, tensored with
//! dihedral-angle classes that are provably irrational multiples of π.
//!
//! Angles are encoded exactly by `(sign of cos θ, cos² θ)`. With rational face
//! normals `cos² θ` is always rational, and by Niven's theorem θ/π is rational
//! only when `cos² θ ∈ {0, 1/4, 1/2, 3/4, 1}`; those classes are dropped.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{int, Rational};
use crate::polytope::ConvexPolytope;

/// Largest integer factored when canonicalizing a square root.
pub const FACTOR_BOUND: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DehnError {
    #[error("length too large to canonicalize: sqrt({0})")]
    LengthTooLarge(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AngleClass {
    /// Sign of cos θ: 1 for acute, 0 for right, -1 for obtuse.
    pub cos_sign: i8,
    pub cos_squared: Rational,
}

impl AngleClass {
    pub fn is_rational_pi(&self) -> bool {
        let niven = [
            Rational::zero(),
            Rational::new(1, 4),
            Rational::new(1, 2),
            Rational::new(3, 4),
            Rational::one(),
        ];
        niven.contains(&self.cos_squared)
    }

    pub fn approx_radians(&self) -> f64 {
        let c = self.cos_squared.to_f64().sqrt() * f64::from(self.cos_sign);
        c.acos()
    }
}

impl fmt::Display for AngleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.cos_sign {
            1 => "+",
            0 => "0",
            _ => "-",
        };
        write!(f, "({sign}, cos² = {})", self.cos_squared)
    }
}

/// A finite sum `Σ r_d √d` over square-free `d`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SqrtSum(pub BTreeMap<u64, Rational>);

impl SqrtSum {
    /// `√value` as `(p/q)√d`.
    pub fn sqrt_of(value: &Rational) -> Result<SqrtSum, DehnError> {
        let mut out = SqrtSum::default();
        if value.is_zero() {
            return Ok(out);
        }
        let bounded = |x: &BigInt| {
            x.to_u64()
                .filter(|x| *x <= FACTOR_BOUND)
                .ok_or_else(|| DehnError::LengthTooLarge(value.clone()))
        };
        let (sn, dn) = square_free_split(bounded(value.numer())?);
        let (sm, dm) = square_free_split(bounded(value.denom())?);
        // √(n/m) = sn√dn / (sm√dm) = sn√(dn·dm) / (sm·dm), and dn·dm is square-free
        // up to their common factors g: dn·dm = g²·(dn/g)(dm/g)
        let g = dn.gcd(&dm);
        let free = (dn / g) * (dm / g);
        let coefficient =
            Rational::from(sn) * Rational::from(g) / (Rational::from(sm) * Rational::from(dm));
        out.0.insert(free, coefficient);
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_scaled(&mut self, other: &SqrtSum, k: &Rational) {
        for (d, c) in &other.0 {
            let entry = self.0.entry(*d).or_insert_with(Rational::zero);
            *entry += c * k;
            if entry.is_zero() {
                self.0.remove(d);
            }
        }
    }

    pub fn scaled(&self, k: &Rational) -> SqrtSum {
        let mut out = SqrtSum::default();
        out.add_scaled(self, k);
        out
    }
}

impl fmt::Display for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(d, c)| {
                if *d == 1 {
                    format!("({c})")
                } else {
                    format!("({c})√{d}")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// `n = s²·d` with `d` square-free; returns `(s, d)`.
fn square_free_split(mut n: u64) -> (u64, u64) {
    let (mut s, mut d) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, d * n)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DehnInvariant(pub BTreeMap<AngleClass, SqrtSum>);

impl DehnInvariant {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn classes(&self) -> impl Iterator<Item = (&AngleClass, &SqrtSum)> {
        self.0.iter()
    }

    fn add_term(&mut self, class: AngleClass, length: &SqrtSum, k: &Rational) {
        let entry = self.0.entry(class.clone()).or_default();
        entry.add_scaled(length, k);
        if entry.is_zero() {
            self.0.remove(&class);
        }
    }

    pub fn add_scaled(&mut self, other: &DehnInvariant, k: &Rational) {
        for (class, length) in &other.0 {
            self.add_term(class.clone(), length, k);
        }
    }

    pub fn difference(&self, other: &DehnInvariant) -> DehnInvariant {
        let mut out = self.clone();
        out.add_scaled(other, &int(-1));
        out
    }

    pub fn scaled(&self, k: &Rational) -> DehnInvariant {
        let mut out = DehnInvariant::default();
        out.add_scaled(self, k);
        out
    }
}

impl fmt::Display for DehnInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0 (no irrational dihedral classes)");
        }
        let lines: Vec<String> = self.0.iter().map(|(c, l)| format!("{c} : {l}")).collect();
        f.write_str(&lines.join("\n"))
    }
}

/// Squared length and interior dihedral class of every edge.
pub fn dihedral_edges(p: &ConvexPolytope) -> Vec<(Rational, AngleClass)> {
    let v = p.vertices();
    p.edges()
        .iter()
        .map(|e| {
            let n1 = p.faces()[e.faces[0]].plane().normal();
            let n2 = p.faces()[e.faces[1]].plane().normal();
            let dot = n1.dot(n2);
            // interior angle: cos θ = -(n1·n2)/(|n1||n2|) for outward normals
            let class = AngleClass {
                cos_sign: -dot.signum(),
                cos_squared: dot.square() / (n1.norm_squared() * n2.norm_squared()),
            };
            (v[e.a].distance_squared(&v[e.b]), class)
        })
        .collect()
}

pub fn dehn_invariant(p: &ConvexPolytope) -> Result<DehnInvariant, DehnError> {
    let mut out = DehnInvariant::default();
    for (length_squared, class) in dihedral_edges(p) {
        if class.is_rational_pi() {
            continue;
        }
        out.add_term(class, &SqrtSum::sqrt_of(&length_squared)?, &int(1));
    }
    Ok(out)
}

/// Sum of the pieces' invariants; the Dehn invariant is additive over a
/// dissection, though this per-class form may not show the cancellation.
pub fn dehn_invariant_of_union(pieces: &[ConvexPolytope]) -> Result<DehnInvariant, DehnError> {
    let mut out = DehnInvariant::default();
    for p in pieces {
        out.add_scaled(&dehn_invariant(p)?, &int(1));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DehnComparison {
    /// Difference is zero: the necessary condition for scissors congruence holds.
    EqualInvariant,
    /// Difference is a single nonzero pure tensor: provably not scissors-congruent.
    SoundlyDifferent(DehnInvariant),
    /// Difference spans several classes that may be rationally related mod π.
    PossiblyDifferent(DehnInvariant),
}

impl DehnComparison {
    pub fn name(&self) -> &'static str {
        match self {
            DehnComparison::EqualInvariant => "EqualInvariant",
            DehnComparison::SoundlyDifferent(_) => "SoundlyDifferent",
            DehnComparison::PossiblyDifferent(_) => "PossiblyDifferent",
        }
    }
}

impl fmt::Display for DehnComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_difference(d: DehnInvariant) -> DehnComparison {
    match d.0.len() {
        0 => DehnComparison::EqualInvariant,
        1 => DehnComparison::SoundlyDifferent(d),
        _ => DehnComparison::PossiblyDifferent(d),
    }
}

pub fn compare_invariants(
    p: &ConvexPolytope,
    q: &ConvexPolytope,
) -> Result<DehnComparison, DehnError> {
    Ok(classify_difference(
        dehn_invariant(p)?.difference(&dehn_invariant(q)?),
    ))
}

pub fn compare_unions(
    left: &[ConvexPolytope],
    right: &[ConvexPolytope],
) -> Result<DehnComparison, DehnError> {
    Ok(classify_difference(
        dehn_invariant_of_union(left)?.difference(&dehn_invariant_of_union(right)?),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{box_corner_pyramids, make_solid, SolidSpec};
    use crate::geometry::{rat, RigidMotion, Vector3};

    fn solid(spec: SolidSpec) -> ConvexPolytope {
        make_solid(&spec).unwrap()
    }

    #[test]
    fn square_free() {
        assert_eq!(square_free_split(72), (6, 2));
        assert_eq!(square_free_split(1), (1, 1));
        assert_eq!(square_free_split(97), (1, 97));
        let s = SqrtSum::sqrt_of(&rat(8, 3)).unwrap();
        assert_eq!(s.0.get(&6), Some(&rat(2, 3)));
        assert!(SqrtSum::sqrt_of(&Rational::from(10_000_000_000_000u64)).is_err());
        // √(3/8) = √6 / 4
        assert_eq!(
            SqrtSum::sqrt_of(&rat(3, 8)).unwrap().0,
            BTreeMap::from([(6u64, rat(1, 4))])
        );
        assert_eq!(
            SqrtSum::sqrt_of(&rat(9, 4)).unwrap().0,
            BTreeMap::from([(1u64, rat(3, 2))])
        );
    }

    #[test]
    fn cube_has_right_dihedrals() {
        let cube = solid(SolidSpec::cube(int(1)));
        let edges = dihedral_edges(&cube);
        assert_eq!(edges.len(), 12);
        assert!(edges
            .iter()
            .all(|(_, c)| c.cos_squared.is_zero() && c.cos_sign == 0));
        assert!(dehn_invariant(&cube).unwrap().is_zero());
        assert!(
            dehn_invariant(&solid(SolidSpec::cuboid(int(1), int(2), int(3))))
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn regular_tetrahedron() {
        let t = solid(SolidSpec::regular_tetrahedron());
        let edges = dihedral_edges(&t);
        assert_eq!(edges.len(), 6);
        for (l2, c) in &edges {
            assert_eq!(*l2, int(2));
            assert_eq!(c.cos_sign, 1);
            assert_eq!(c.cos_squared, rat(1, 9));
        }
        let inv = dehn_invariant(&t).unwrap();
        assert_eq!(inv.0.len(), 1);
        let (class, length) = inv.classes().next().unwrap();
        assert_eq!(class.cos_squared, rat(1, 9));
        assert_eq!(length.0, BTreeMap::from([(2u64, int(6))]));
        assert_eq!(inv.to_string(), "(+, cos² = 1/9) : (6)√2");
        let cube = solid(SolidSpec::cube(int(1)));
        assert!(matches!(
            compare_invariants(&cube, &t).unwrap(),
            DehnComparison::SoundlyDifferent(_)
        ));
    }

    #[test]
    fn qiandu_dihedrals_are_rational_pi() {
        let q = solid(SolidSpec::qiandu(int(1), int(1), int(1)));
        let classes: Vec<Rational> = dihedral_edges(&q)
            .into_iter()
            .map(|(_, c)| c.cos_squared)
            .collect();
        assert!(classes.iter().all(|c| c.is_zero() || *c == rat(1, 2)));
        assert!(dehn_invariant(&q).unwrap().is_zero());
    }

    #[test]
    fn equal_and_possibly_different() {
        let cube = solid(SolidSpec::cube(int(1)));
        let flat = solid(SolidSpec::cuboid(int(1), int(2), int(3)))
            .scale(&rat(1, 6))
            .unwrap();
        assert_eq!(
            compare_invariants(&cube, &flat).unwrap(),
            DehnComparison::EqualInvariant
        );
        let m = RigidMotion::rotation_z(1).then_translate(&Vector3::new(3, 1, 2));
        let t = solid(SolidSpec::regular_tetrahedron());
        assert_eq!(
            compare_invariants(&t, &t.transform(&m).unwrap()).unwrap(),
            DehnComparison::EqualInvariant
        );

        let pieces = box_corner_pyramids(&int(1), &int(1), &int(2)).unwrap();
        let boxed = solid(SolidSpec::cuboid(int(1), int(1), int(2)));
        let verdict = compare_unions(&pieces, &[boxed]).unwrap();
        assert!(
            matches!(verdict, DehnComparison::PossiblyDifferent(_)),
            "{verdict:?}"
        );
    }

    #[test]
    fn scaling_is_linear() {
        let t = solid(SolidSpec::regular_tetrahedron());
        let k = rat(5, 3);
        assert_eq!(
            dehn_invariant(&t.scale(&k).unwrap()).unwrap(),
            dehn_invariant(&t).unwrap().scaled(&k)
        );
    }
}
