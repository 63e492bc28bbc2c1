//! Exact congruence of rational-vertex polytopes.
//!
//! An isometry between two convex polytopes maps vertices to vertices and is
//! fixed by the images of any four affinely independent vertices, so solving
//! for the affine map over every distance-compatible correspondence of one
//! anchor quadruple is a complete search.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{Matrix3, Point3, Rational, RigidMotion};
use crate::polytope::{affine_rank, ConvexPolytope};

/// A motion together with the vertex bijection it realises.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CongruenceWitness {
    pub motion: RigidMotion,
    /// `(source vertex, target vertex)` index pairs.
    pub pairs: Vec<(usize, usize)>,
}

/// Sorted multiset of squared edge lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeFingerprint(pub Vec<Rational>);

pub fn edge_fingerprint(p: &ConvexPolytope) -> EdgeFingerprint {
    let v = p.vertices();
    let mut lengths: Vec<Rational> = p
        .edges()
        .iter()
        .map(|e| v[e.a].distance_squared(&v[e.b]))
        .collect();
    lengths.sort();
    EdgeFingerprint(lengths)
}

fn anchor_quadruple(points: &[Point3]) -> Option<[usize; 4]> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let quad = [i, j, k, l].map(|x| points[x].clone());
                    if affine_rank(&quad) == 3 {
                        return Some([i, j, k, l]);
                    }
                }
            }
        }
    }
    None
}

/// The unique affine map sending `from[i]` to `to[i]`, when `from` is affinely independent.
fn solve_affine(from: &[&Point3; 4], to: &[&Point3; 4]) -> Option<RigidMotion> {
    let p = Matrix3::from_columns(
        &(from[1] - from[0]),
        &(from[2] - from[0]),
        &(from[3] - from[0]),
    );
    let q = Matrix3::from_columns(&(to[1] - to[0]), &(to[2] - to[0]), &(to[3] - to[0]));
    let matrix = q.mul_matrix(&p.inverse()?);
    let translation = &to[0].to_vector() - &matrix.mul_vector(&from[0].to_vector());
    Some(RigidMotion::new(matrix, translation))
}

/// Searches for a rigid motion carrying `p` onto `q` as vertex sets.
///
/// Improper motions are considered only when `allow_reflection` is set. The
/// first witness in deterministic enumeration order is returned.
pub fn find_congruence(
    p: &ConvexPolytope,
    q: &ConvexPolytope,
    allow_reflection: bool,
) -> Option<CongruenceWitness> {
    let (pv, qv) = (p.vertices(), q.vertices());
    if pv.len() != qv.len()
        || p.volume() != q.volume()
        || edge_fingerprint(p) != edge_fingerprint(q)
    {
        return None;
    }
    let anchor = anchor_quadruple(pv)?;
    let lookup: HashMap<&Point3, usize> = qv.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let anchor_d2: [[Rational; 4]; 4] = std::array::from_fn(|i| {
        std::array::from_fn(|j| pv[anchor[i]].distance_squared(&pv[anchor[j]]))
    });

    let mut images = [0usize; 4];
    search(0, &mut images, &anchor_d2, qv, &mut |images| {
        let from = anchor.map(|i| &pv[i]);
        let to = images.map(|i| &qv[i]);
        let motion = solve_affine(&from, &to)?;
        if !motion.is_valid() || (!allow_reflection && !motion.is_proper()) {
            return None;
        }
        let mut pairs = Vec::with_capacity(pv.len());
        let mut hit = vec![false; qv.len()];
        for (i, v) in pv.iter().enumerate() {
            let j = *lookup.get(&motion.apply_unchecked(v))?;
            if std::mem::replace(&mut hit[j], true) {
                return None;
            }
            pairs.push((i, j));
        }
        Some(CongruenceWitness { motion, pairs })
    })
}

fn search<F>(
    depth: usize,
    images: &mut [usize; 4],
    d2: &[[Rational; 4]; 4],
    targets: &[Point3],
    accept: &mut F,
) -> Option<CongruenceWitness>
where
    F: FnMut(&[usize; 4]) -> Option<CongruenceWitness>,
{
    if depth == 4 {
        return accept(images);
    }
    for candidate in 0..targets.len() {
        if images[..depth].contains(&candidate) {
            continue;
        }
        let compatible = (0..depth)
            .all(|k| targets[images[k]].distance_squared(&targets[candidate]) == d2[k][depth]);
        if !compatible {
            continue;
        }
        images[depth] = candidate;
        if let Some(w) = search(depth + 1, images, d2, targets, accept) {
            return Some(w);
        }
    }
    None
}

/// Re-checks a witness without searching.
pub fn verify_witness(p: &ConvexPolytope, q: &ConvexPolytope, w: &CongruenceWitness) -> bool {
    let (pv, qv) = (p.vertices(), q.vertices());
    if !w.motion.is_valid() || pv.len() != qv.len() || w.pairs.len() != pv.len() {
        return false;
    }
    let mut seen_from = vec![false; pv.len()];
    let mut seen_to = vec![false; qv.len()];
    for &(from, to) in &w.pairs {
        if from >= pv.len() || to >= qv.len() {
            return false;
        }
        if std::mem::replace(&mut seen_from[from], true)
            || std::mem::replace(&mut seen_to[to], true)
        {
            return false;
        }
        if w.motion.apply_unchecked(&pv[from]) != qv[to] {
            return false;
        }
    }
    true
}

/// Identity witness for a polytope against itself.
pub fn identity_witness(p: &ConvexPolytope) -> CongruenceWitness {
    CongruenceWitness {
        motion: RigidMotion::identity(),
        pairs: (0..p.vertices().len()).map(|i| (i, i)).collect(),
    }
}

impl CongruenceWitness {
    /// Witness for `q ≅ p` from one for `p ≅ q`.
    pub fn inverse(&self) -> Option<CongruenceWitness> {
        Some(CongruenceWitness {
            motion: self.motion.inverse().ok()?,
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
        })
    }

    /// Witness for `p ≅ r` from `self: p ≅ q` and `next: q ≅ r`.
    pub fn then(&self, next: &CongruenceWitness) -> CongruenceWitness {
        let forward: HashMap<usize, usize> = next.pairs.iter().copied().collect();
        CongruenceWitness {
            motion: next.motion.compose(&self.motion),
            pairs: self
                .pairs
                .iter()
                .map(|&(a, b)| (a, forward.get(&b).copied().unwrap_or(usize::MAX)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vector3;
    use crate::polytope::build_polytope;

    fn yangma(p: i64, q: i64, r: i64) -> ConvexPolytope {
        build_polytope(
            vec![
                Point3::new(0, 0, 0),
                Point3::new(p, 0, 0),
                Point3::new(p, q, 0),
                Point3::new(0, q, 0),
                Point3::new(0, 0, r),
            ],
            vec![
                vec![0, 3, 2, 1],
                vec![0, 1, 4],
                vec![1, 2, 4],
                vec![2, 3, 4],
                vec![3, 0, 4],
            ],
            "yangma",
        )
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        let mut v: Vec<Rational> = v.iter().map(|&x| Rational::from(x)).collect();
        v.sort();
        v
    }

    #[test]
    fn fingerprints() {
        assert_eq!(
            edge_fingerprint(&yangma(1, 1, 2)).0,
            ints(&[1, 1, 1, 1, 4, 5, 5, 6])
        );
        assert_eq!(
            edge_fingerprint(&yangma(1, 2, 1)).0,
            ints(&[1, 1, 4, 4, 1, 2, 5, 6])
        );
    }

    #[test]
    fn different_yangma_are_not_congruent() {
        assert!(find_congruence(&yangma(1, 1, 2), &yangma(1, 2, 1), true).is_none());
    }

    #[test]
    fn chirality_needs_reflection() {
        let a = yangma(1, 2, 3);
        let b = yangma(2, 1, 3);
        assert!(find_congruence(&a, &b, false).is_none());
        let w = find_congruence(&a, &b, true).unwrap();
        assert!(!w.motion.is_proper());
        assert!(verify_witness(&a, &b, &w));
    }

    #[test]
    fn round_trip_and_tampering() {
        let a = yangma(1, 2, 3);
        let m = RigidMotion::rotation_z(1).then_translate(&Vector3::new(4, -1, 2));
        let b = a.transform(&m).unwrap();
        let w = find_congruence(&a, &b, false).unwrap();
        assert!(verify_witness(&a, &b, &w));
        let mut bad = w.clone();
        let first_target = bad.pairs[0].1;
        bad.pairs[0].1 = bad.pairs[1].1;
        bad.pairs[1].1 = first_target;
        assert!(!verify_witness(&a, &b, &bad));
        assert!(verify_witness(&a, &a, &identity_witness(&a)));
    }

    #[test]
    fn symmetric_and_transitive_witnesses() {
        let a = yangma(1, 2, 3);
        let b = a.transform(&RigidMotion::rotation_z(2)).unwrap();
        let c = b
            .transform(&RigidMotion::swap_xy().then_translate(&Vector3::new(1, 1, 1)))
            .unwrap();
        let ab = find_congruence(&a, &b, true).unwrap();
        let bc = find_congruence(&b, &c, true).unwrap();
        assert!(verify_witness(&b, &a, &ab.inverse().unwrap()));
        assert!(verify_witness(&a, &c, &ab.then(&bc)));
    }
}
