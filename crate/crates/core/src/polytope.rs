//! Convex polytopes with exact validation, clipping, intersection and volume.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::geometry::{triple, GeometryError, HalfSpace, Point3, Rational, RigidMotion, Vector3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("non-planar face {face}")]
    NonPlanarFace { face: usize },
    #[error("non-convex / vertex outside face plane (face {face}: {detail})")]
    NonConvex { face: usize, detail: String },
    #[error("degenerate (rank < 3)")]
    Degenerate,
    #[error("bad topology (Euler/edge sharing): {0}")]
    BadTopology(String),
    #[error("not an isometry")]
    InvalidMotion,
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(Rational),
}

impl From<GeometryError> for PolytopeError {
    fn from(_: GeometryError) -> Self {
        PolytopeError::InvalidMotion
    }
}

/// A face: a vertex-index cycle, counter-clockwise seen from outside, and
/// its supporting half-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    indices: Vec<usize>,
    plane: HalfSpace,
}

impl Face {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn plane(&self) -> &HalfSpace {
        &self.plane
    }
}

/// An edge `a < b` and the two faces meeting along it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub faces: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexPolytope {
    vertices: Vec<Point3>,
    faces: Vec<Face>,
    edges: Vec<Edge>,
    label: String,
}

/// Validates a vertex/face description and derives the supporting half-spaces.
///
/// Face cycles may be given in either winding; each is reoriented so that its
/// normal points outward.
pub fn build_polytope(
    vertices: Vec<Point3>,
    faces: Vec<Vec<usize>>,
    label: impl Into<String>,
) -> Result<ConvexPolytope, PolytopeError> {
    if vertices.len() < 4 || affine_rank(&vertices) < 3 {
        return Err(PolytopeError::Degenerate);
    }
    let mut built = Vec::with_capacity(faces.len());
    for (fi, mut cycle) in faces.into_iter().enumerate() {
        if cycle.len() < 3 {
            return Err(PolytopeError::BadTopology(format!(
                "face {fi} has fewer than 3 vertices"
            )));
        }
        if let Some(&bad) = cycle.iter().find(|&&i| i >= vertices.len()) {
            return Err(PolytopeError::BadTopology(format!(
                "face {fi} references missing vertex {bad}"
            )));
        }
        let mut seen = cycle.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != cycle.len() {
            return Err(PolytopeError::BadTopology(format!(
                "face {fi} repeats a vertex"
            )));
        }

        let pts: Vec<&Point3> = cycle.iter().map(|&i| &vertices[i]).collect();
        let normal = face_normal(&pts).ok_or(PolytopeError::NonConvex {
            face: fi,
            detail: "collinear face".into(),
        })?;
        let mut plane = HalfSpace::through(pts[0], normal)
            .expect("nonzero normal")
            .primitive();
        if pts.iter().any(|p| !plane.on_boundary(p)) {
            return Err(PolytopeError::NonPlanarFace { face: fi });
        }
        let (mut above, mut below) = (false, false);
        for v in &vertices {
            match plane.side(v) {
                Ordering::Greater => above = true,
                Ordering::Less => below = true,
                Ordering::Equal => {}
            }
        }
        if above && below {
            return Err(PolytopeError::NonConvex {
                face: fi,
                detail: "vertices on both sides of the face plane".into(),
            });
        }
        if above {
            plane = plane.complement();
            cycle.reverse();
        }
        check_convex_polygon(fi, &cycle, &vertices, plane.normal())?;
        built.push(Face {
            indices: cycle,
            plane,
        });
    }

    for i in 0..built.len() {
        for j in i + 1..built.len() {
            if built[i].plane.same_as(&built[j].plane) {
                return Err(PolytopeError::BadTopology(format!(
                    "faces {i} and {j} are coplanar"
                )));
            }
        }
    }

    let edges = collect_edges(vertices.len(), &built)?;
    let euler = vertices.len() as i64 - edges.len() as i64 + built.len() as i64;
    if euler != 2 {
        return Err(PolytopeError::BadTopology(format!("V - E + F = {euler}")));
    }

    Ok(ConvexPolytope {
        vertices,
        faces: built,
        edges,
        label: label.into(),
    })
}

/// Normal of the first non-degenerate fan triangle, following the cycle's winding.
fn face_normal(pts: &[&Point3]) -> Option<Vector3> {
    let base = pts[0];
    let first = pts[1] - base;
    pts[2..].iter().find_map(|p| {
        let n = first.cross(&(*p - base));
        (!n.is_zero()).then_some(n)
    })
}

fn check_convex_polygon(
    fi: usize,
    cycle: &[usize],
    vertices: &[Point3],
    normal: &Vector3,
) -> Result<(), PolytopeError> {
    let k = cycle.len();
    for e in 0..k {
        let a = &vertices[cycle[e]];
        let b = &vertices[cycle[(e + 1) % k]];
        let dir = b - a;
        for &other in cycle.iter() {
            if other == cycle[e] || other == cycle[(e + 1) % k] {
                continue;
            }
            let side = normal.dot(&dir.cross(&(&vertices[other] - a)));
            if !side.is_positive() {
                return Err(PolytopeError::NonConvex {
                    face: fi,
                    detail: "face polygon is not strictly convex and simple".into(),
                });
            }
        }
    }
    Ok(())
}

fn collect_edges(vertex_count: usize, faces: &[Face]) -> Result<Vec<Edge>, PolytopeError> {
    let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, face) in faces.iter().enumerate() {
        let k = face.indices.len();
        for e in 0..k {
            let key = (face.indices[e], face.indices[(e + 1) % k]);
            if directed.insert(key, fi).is_some() {
                return Err(PolytopeError::BadTopology(format!(
                    "directed edge {key:?} used twice"
                )));
            }
        }
    }
    let mut edges = Vec::new();
    let mut used = vec![false; vertex_count];
    for (&(a, b), &f) in &directed {
        used[a] = true;
        let Some(&g) = directed.get(&(b, a)) else {
            return Err(PolytopeError::BadTopology(format!(
                "edge ({a}, {b}) is not shared by exactly 2 faces"
            )));
        };
        if a < b {
            edges.push(Edge {
                a,
                b,
                faces: [f, g],
            });
        }
    }
    if let Some(v) = used.iter().position(|u| !u) {
        return Err(PolytopeError::BadTopology(format!(
            "vertex {v} is on no face"
        )));
    }
    edges.sort_by_key(|e| (e.a, e.b));
    Ok(edges)
}

/// Dimension of the affine hull of `points` (0..=3).
pub fn affine_rank(points: &[Point3]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let mut basis: Vec<Vector3> = Vec::new();
    for p in &points[1..] {
        let d = p - base;
        let independent = match basis.len() {
            0 => !d.is_zero(),
            1 => !basis[0].cross(&d).is_zero(),
            2 => !triple(&basis[0], &basis[1], &d).is_zero(),
            _ => false,
        };
        if independent {
            basis.push(d);
            if basis.len() == 3 {
                break;
            }
        }
    }
    basis.len()
}

impl ConvexPolytope {
    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn face_cycles(&self) -> Vec<Vec<usize>> {
        self.faces.iter().map(|f| f.indices.clone()).collect()
    }

    /// Exact volume by the divergence form: one sixth of the sum of
    /// `det[v0, vi, vi+1]` over the fan triangles of every outward face.
    pub fn volume(&self) -> Rational {
        let mut six_v = Rational::zero();
        for face in &self.faces {
            let v0 = self.vertices[face.indices[0]].to_vector();
            for w in face.indices[1..].windows(2) {
                let vi = self.vertices[w[0]].to_vector();
                let vj = self.vertices[w[1]].to_vector();
                six_v += triple(&v0, &vi, &vj);
            }
        }
        six_v / Rational::from(6)
    }

    pub fn contains_point(&self, p: &Point3) -> bool {
        self.faces.iter().all(|f| f.plane.contains(p))
    }

    pub fn strictly_contains_point(&self, p: &Point3) -> bool {
        self.faces.iter().all(|f| f.plane.strictly_contains(p))
    }

    /// Exact intersection with a half-space; `None` when the result has no
    /// interior (empty, or touching only along a face, edge or vertex).
    pub fn clip(&self, hs: &HalfSpace) -> Option<ConvexPolytope> {
        let side: Vec<Rational> = self.vertices.iter().map(|v| hs.evaluate(v)).collect();
        if side.iter().all(|s| !s.is_positive()) {
            return Some(self.clone());
        }
        if side.iter().all(|s| !s.is_negative()) {
            return None;
        }

        let mut points: Vec<Point3> = Vec::new();
        let mut index: BTreeMap<Point3, usize> = BTreeMap::new();
        let mut intern = |p: Point3, points: &mut Vec<Point3>| -> usize {
            *index.entry(p.clone()).or_insert_with(|| {
                points.push(p);
                points.len() - 1
            })
        };
        let mut crossings: HashMap<(usize, usize), Point3> = HashMap::new();
        let mut crossing = |a: usize, b: usize| -> Point3 {
            let key = (a.min(b), a.max(b));
            crossings
                .entry(key)
                .or_insert_with(|| {
                    let (u, w) = (&self.vertices[key.0], &self.vertices[key.1]);
                    let t = &side[key.0] / (&side[key.0] - &side[key.1]);
                    u + &(w - u).scaled(&t)
                })
                .clone()
        };

        let mut faces: Vec<Vec<usize>> = Vec::new();
        let mut cap: Vec<Point3> = self
            .vertices
            .iter()
            .zip(&side)
            .filter(|(_, s)| s.is_zero())
            .map(|(v, _)| v.clone())
            .collect();
        for face in &self.faces {
            let k = face.indices.len();
            if !face.indices.iter().any(|&i| side[i].is_negative()) {
                continue;
            }
            let mut polygon = Vec::with_capacity(k + 1);
            for e in 0..k {
                let (a, b) = (face.indices[e], face.indices[(e + 1) % k]);
                if !side[a].is_positive() {
                    polygon.push(intern(self.vertices[a].clone(), &mut points));
                }
                if side[a].signum() * side[b].signum() < 0 {
                    let p = crossing(a, b);
                    cap.push(p.clone());
                    polygon.push(intern(p, &mut points));
                }
            }
            if polygon.len() >= 3 {
                faces.push(polygon);
            }
        }

        cap.sort();
        cap.dedup();
        let ordered = order_around(cap, hs.normal());
        faces.push(
            ordered
                .into_iter()
                .map(|p| intern(p, &mut points))
                .collect(),
        );

        let clipped = build_polytope(points, faces, self.label.clone())
            .expect("clipping a valid convex polytope yields a valid polytope");
        Some(clipped)
    }

    /// Image under a rigid motion. Isometries preserve validity, so the result
    /// is assembled directly; it equals what [`build_polytope`] would produce
    /// from the moved vertices and face cycles.
    pub fn transform(&self, m: &RigidMotion) -> Result<ConvexPolytope, PolytopeError> {
        m.ensure_valid()?;
        let vertices: Vec<Point3> = self.vertices.iter().map(|v| m.apply_unchecked(v)).collect();
        let flip = !m.is_proper();
        let faces = self
            .faces
            .iter()
            .map(|f| {
                // outward normals map to M·n; a reflection reverses the winding
                let normal = m.matrix.mul_vector(f.plane.normal());
                let plane = HalfSpace::through(&vertices[f.indices[0]], normal)
                    .expect("isometries keep normals nonzero")
                    .primitive();
                let mut indices = f.indices.clone();
                if flip {
                    indices.reverse();
                }
                Face { indices, plane }
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                faces: if flip {
                    [e.faces[1], e.faces[0]]
                } else {
                    e.faces
                },
                ..*e
            })
            .collect();
        Ok(ConvexPolytope {
            vertices,
            faces,
            edges,
            label: self.label.clone(),
        })
    }

    pub fn translate(&self, v: &Vector3) -> ConvexPolytope {
        self.transform(&RigidMotion::translation(v.clone()))
            .expect("translations are isometries")
    }

    /// Uniform scaling about the origin.
    pub fn scale(&self, k: &Rational) -> Result<ConvexPolytope, PolytopeError> {
        if !k.is_positive() {
            return Err(PolytopeError::NonPositiveScale(k.clone()));
        }
        let vertices = self.vertices.iter().map(|v| v.scaled(k)).collect();
        build_polytope(vertices, self.face_cycles(), self.label.clone())
    }

    /// True when no face plane of `self` has `other` strictly inside it.
    fn separated_from(&self, other: &ConvexPolytope) -> bool {
        self.faces
            .iter()
            .any(|f| other.vertices.iter().all(|v| !f.plane.strictly_contains(v)))
    }

    pub fn intersect(&self, other: &ConvexPolytope) -> Option<ConvexPolytope> {
        if self.separated_from(other) || other.separated_from(self) {
            return None;
        }
        let mut current = self.clone();
        for face in &other.faces {
            current = current.clip(&face.plane)?;
        }
        Some(current)
    }

    /// True iff every vertex of `inner` satisfies every face half-space of `self`.
    pub fn contains_polytope(&self, inner: &ConvexPolytope) -> bool {
        inner.vertices.iter().all(|v| self.contains_point(v))
    }

    /// Vertex-set equality, ignoring order and face structure.
    pub fn same_vertex_set(&self, other: &ConvexPolytope) -> bool {
        let mut a = self.vertices.clone();
        let mut b = other.vertices.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Arithmetic mean of the vertices; an interior point.
    pub fn centroid(&self) -> Point3 {
        let n = Rational::from(self.vertices.len());
        let sum = self
            .vertices
            .iter()
            .fold(Vector3::zero(), |acc, v| &acc + &v.to_vector());
        sum.scaled(&n.recip()).to_point()
    }
}

/// Orders coplanar points of a convex polygon counter-clockwise about `normal`.
fn order_around(points: Vec<Point3>, normal: &Vector3) -> Vec<Point3> {
    let n = Rational::from(points.len());
    let center = points
        .iter()
        .fold(Vector3::zero(), |acc, p| &acc + &p.to_vector())
        .scaled(&n.recip())
        .to_point();
    let reference = &points[0] - &center;
    let half = |d: &Vector3| -> u8 {
        let s = normal.dot(&reference.cross(d));
        if s.is_positive() || (s.is_zero() && reference.dot(d).is_positive()) {
            0
        } else {
            1
        }
    };
    let mut keyed: Vec<(u8, Vector3, Point3)> = points
        .into_iter()
        .map(|p| {
            let d = &p - &center;
            (half(&d), d, p)
        })
        .collect();
    keyed.sort_by(|(ha, da, _), (hb, db, _)| {
        ha.cmp(hb)
            .then_with(|| match normal.dot(&da.cross(db)).signum() {
                1 => Ordering::Less,
                -1 => Ordering::Greater,
                _ => Ordering::Equal,
            })
    });
    keyed.into_iter().map(|(_, _, p)| p).collect()
}

pub fn volume(p: &ConvexPolytope) -> Rational {
    p.volume()
}

pub fn clip(p: &ConvexPolytope, hs: &HalfSpace) -> Option<ConvexPolytope> {
    p.clip(hs)
}

pub fn intersect(p: &ConvexPolytope, q: &ConvexPolytope) -> Option<ConvexPolytope> {
    p.intersect(q)
}

pub fn contains_polytope(outer: &ConvexPolytope, inner: &ConvexPolytope) -> bool {
    outer.contains_polytope(inner)
}

pub fn transform(p: &ConvexPolytope, m: &RigidMotion) -> Result<ConvexPolytope, PolytopeError> {
    p.transform(m)
}

pub fn scale(p: &ConvexPolytope, k: &Rational) -> Result<ConvexPolytope, PolytopeError> {
    p.scale(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat, Matrix3};

    fn cube_vertices(side: i64) -> Vec<Point3> {
        let mut v = Vec::new();
        for z in [0, side] {
            for (x, y) in [(0, 0), (side, 0), (side, side), (0, side)] {
                v.push(Point3::new(x, y, z));
            }
        }
        v
    }

    fn cube_faces() -> Vec<Vec<usize>> {
        vec![
            vec![0, 3, 2, 1],
            vec![4, 5, 6, 7],
            vec![0, 1, 5, 4],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 0, 4, 7],
        ]
    }

    fn unit_cube() -> ConvexPolytope {
        build_polytope(cube_vertices(1), cube_faces(), "cube").unwrap()
    }

    #[test]
    fn unit_cube_is_valid() {
        let c = unit_cube();
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.edges().len(), 12);
        assert_eq!(c.faces().len(), 6);
        assert_eq!(c.volume(), int(1));
    }

    #[test]
    fn accepts_either_winding() {
        let flipped: Vec<Vec<usize>> = cube_faces()
            .into_iter()
            .map(|mut f| {
                f.reverse();
                f
            })
            .collect();
        let c = build_polytope(cube_vertices(1), flipped, "cube").unwrap();
        assert_eq!(c.volume(), int(1));
    }

    #[test]
    fn moved_vertex_breaks_planarity() {
        let mut v = cube_vertices(1);
        v[1] = Point3::new(2, 0, 0);
        // the bottom face (0,3,2,1) stays planar; the x = 1 side no longer is
        let err = build_polytope(v, cube_faces(), "bad").unwrap_err();
        assert!(matches!(err, PolytopeError::NonPlanarFace { .. }), "{err}");
    }

    #[test]
    fn rejects_flat_and_bad_topology() {
        let flat = vec![
            Point3::new(0, 0, 0),
            Point3::new(1, 0, 0),
            Point3::new(0, 1, 0),
            Point3::new(1, 1, 0),
        ];
        let err = build_polytope(flat, vec![vec![0, 1, 2], vec![1, 3, 2]], "flat").unwrap_err();
        assert_eq!(err, PolytopeError::Degenerate);

        let mut faces = cube_faces();
        faces.pop();
        let err = build_polytope(cube_vertices(1), faces, "open").unwrap_err();
        assert!(matches!(err, PolytopeError::BadTopology(_)), "{err}");
    }

    #[test]
    fn rejects_concave_description() {
        // the cube's top face described with a self-intersecting order
        let mut faces = cube_faces();
        faces[1] = vec![4, 6, 5, 7];
        let err = build_polytope(cube_vertices(1), faces, "bow").unwrap_err();
        assert!(
            matches!(
                err,
                PolytopeError::NonConvex { .. } | PolytopeError::BadTopology(_)
            ),
            "{err}"
        );
    }

    #[test]
    fn clip_cases() {
        let c = unit_cube();
        let half = c
            .clip(&HalfSpace::new(Vector3::new(1, 0, 0), rat(1, 2)).unwrap())
            .unwrap();
        assert_eq!(half.volume(), rat(1, 2));
        let same = c
            .clip(&HalfSpace::new(Vector3::new(1, 0, 0), int(2)).unwrap())
            .unwrap();
        assert_eq!(same, c);
        assert!(c
            .clip(&HalfSpace::new(Vector3::new(1, 0, 0), int(0)).unwrap())
            .is_none());
    }

    #[test]
    fn clip_through_vertices() {
        // diagonal plane x + y <= 1 passes through two vertical edges
        let c = unit_cube();
        let prism = c
            .clip(&HalfSpace::new(Vector3::new(1, 1, 0), int(1)).unwrap())
            .unwrap();
        assert_eq!(prism.vertices().len(), 6);
        assert_eq!(prism.faces().len(), 5);
        assert_eq!(prism.volume(), rat(1, 2));
        // corner tetrahedron x + y + z <= 1
        let tet = c
            .clip(&HalfSpace::new(Vector3::new(1, 1, 1), int(1)).unwrap())
            .unwrap();
        assert_eq!(tet.vertices().len(), 4);
        assert_eq!(tet.volume(), rat(1, 6));
    }

    #[test]
    fn intersect_cases() {
        let big = build_polytope(cube_vertices(2), cube_faces(), "a").unwrap();
        let shifted = big.translate(&Vector3::new(1, 1, 1));
        assert_eq!(big.intersect(&shifted).unwrap().volume(), int(1));
        let far = unit_cube().translate(&Vector3::new(5, 0, 0));
        assert!(unit_cube().intersect(&far).is_none());
        let touching = unit_cube().translate(&Vector3::new(1, 0, 0));
        assert!(unit_cube().intersect(&touching).is_none());
    }

    #[test]
    fn containment() {
        let big = build_polytope(cube_vertices(2), cube_faces(), "a").unwrap();
        assert!(big.contains_polytope(&unit_cube()));
        assert!(!unit_cube().contains_polytope(&big));
    }

    #[test]
    fn scale_and_transform() {
        let c = unit_cube();
        assert_eq!(c.scale(&int(2)).unwrap().volume(), int(8));
        assert_eq!(c.scale(&int(1)).unwrap(), c);
        assert!(matches!(
            c.scale(&int(0)),
            Err(PolytopeError::NonPositiveScale(_))
        ));
        assert_eq!(c.transform(&RigidMotion::identity()).unwrap(), c);
        let mirrored = c.transform(&RigidMotion::swap_xy()).unwrap();
        assert_eq!(mirrored.volume(), int(1));
        assert!(mirrored.same_vertex_set(&c));
    }

    #[test]
    fn fast_transform_matches_rebuild() {
        let flipped: Vec<Vec<usize>> = cube_faces()
            .into_iter()
            .map(|mut f| {
                f.reverse();
                f
            })
            .collect();
        let skewed = vec![
            Point3::new(0, 0, 0),
            Point3::new(3, 0, 0),
            Point3::new(0, 2, 0),
            Point3::new(rat(1, 2), rat(1, 3), 5),
        ];
        let shapes = [
            unit_cube(),
            build_polytope(cube_vertices(2), flipped, "inward").unwrap(),
            build_polytope(
                skewed,
                vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
                "tetra",
            )
            .unwrap(),
        ];
        let third = Rational::new(1, 3);
        let two_thirds = Rational::new(2, 3);
        let rotation = Matrix3([
            [two_thirds.clone(), -&two_thirds, third.clone()],
            [two_thirds.clone(), third.clone(), -&two_thirds],
            [third.clone(), two_thirds.clone(), two_thirds.clone()],
        ]);
        let motions = [
            RigidMotion::swap_xy().then_translate(&Vector3::new(1, -2, rat(3, 7))),
            RigidMotion::rotation_z(1),
            RigidMotion::new(rotation.clone(), Vector3::new(rat(1, 5), 0, 2)),
            RigidMotion::new(
                rotation.mul_matrix(&Matrix3::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, -1]])),
                Vector3::zero(),
            ),
        ];
        for p in &shapes {
            for m in &motions {
                let fast = p.transform(m).unwrap();
                let moved = p.vertices().iter().map(|v| m.apply(v).unwrap()).collect();
                let rebuilt = build_polytope(moved, p.face_cycles(), p.label()).unwrap();
                assert_eq!(fast, rebuilt, "{} under {m:?}", p.label());
            }
        }
    }
}
