//! Canonical solids and the dissection/rearrangement certificates built from them.
//!
//! Poses: the symmetric frustum, pyramid and Juel pyramid stand on `z = 0`
//! centred on the z-axis; boxes and blocks are anchored at the origin corner.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruence::find_congruence;
use crate::dissection::{
    Claim, LinearExpr, PlacedPiece, Placement, RearrangementCertificate, Ref, Region,
};
use crate::formulas::{evaluate_formula, FormulaId};
use crate::geometry::{int, Point3, Rational, RigidMotion, Vector3};
use crate::polytope::{build_polytope, ConvexPolytope, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

fn invalid(msg: impl Into<String>) -> CatalogError {
    CatalogError::InvalidParameters(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolidKind {
    Box,
    SymmetricFrustum,
    RightFrustum,
    SymmetricPyramid,
    Yangma,
    Qiandu,
    Juel,
    TruncatedJuel,
    RegularTetrahedron,
}

impl SolidKind {
    pub const ALL: [SolidKind; 9] = [
        SolidKind::Box,
        SolidKind::SymmetricFrustum,
        SolidKind::RightFrustum,
        SolidKind::SymmetricPyramid,
        SolidKind::Yangma,
        SolidKind::Qiandu,
        SolidKind::Juel,
        SolidKind::TruncatedJuel,
        SolidKind::RegularTetrahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolidKind::Box => "box",
            SolidKind::SymmetricFrustum => "symmetric_frustum",
            SolidKind::RightFrustum => "right_frustum",
            SolidKind::SymmetricPyramid => "symmetric_pyramid",
            SolidKind::Yangma => "yangma",
            SolidKind::Qiandu => "qiandu",
            SolidKind::Juel => "juel",
            SolidKind::TruncatedJuel => "truncated_juel",
            SolidKind::RegularTetrahedron => "regular_tetrahedron",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            SolidKind::Box | SolidKind::Yangma | SolidKind::Qiandu => &["p", "q", "r"],
            SolidKind::SymmetricFrustum | SolidKind::RightFrustum => &["a", "b", "h"],
            SolidKind::SymmetricPyramid => &["a", "h"],
            SolidKind::Juel => &["a"],
            SolidKind::TruncatedJuel => &["a", "b"],
            SolidKind::RegularTetrahedron => &[],
        }
    }
}

impl fmt::Display for SolidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolidKind {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.replace('-', "_");
        SolidKind::ALL
            .into_iter()
            .find(|k| k.name() == wanted || (wanted == "cuboid" && *k == SolidKind::Box))
            .ok_or_else(|| invalid(format!("unknown solid kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolidSpec {
    pub kind: SolidKind,
    pub params: Vec<Rational>,
}

impl SolidSpec {
    pub fn new(kind: SolidKind, params: Vec<Rational>) -> Self {
        SolidSpec { kind, params }
    }

    pub fn cuboid(p: Rational, q: Rational, r: Rational) -> Self {
        SolidSpec::new(SolidKind::Box, vec![p, q, r])
    }

    pub fn cube(a: Rational) -> Self {
        SolidSpec::cuboid(a.clone(), a.clone(), a)
    }

    pub fn symmetric_frustum(a: Rational, b: Rational, h: Rational) -> Self {
        SolidSpec::new(SolidKind::SymmetricFrustum, vec![a, b, h])
    }

    pub fn right_frustum(a: Rational, b: Rational, h: Rational) -> Self {
        SolidSpec::new(SolidKind::RightFrustum, vec![a, b, h])
    }

    pub fn symmetric_pyramid(a: Rational, h: Rational) -> Self {
        SolidSpec::new(SolidKind::SymmetricPyramid, vec![a, h])
    }

    pub fn yangma(p: Rational, q: Rational, r: Rational) -> Self {
        SolidSpec::new(SolidKind::Yangma, vec![p, q, r])
    }

    pub fn qiandu(p: Rational, q: Rational, r: Rational) -> Self {
        SolidSpec::new(SolidKind::Qiandu, vec![p, q, r])
    }

    pub fn juel(a: Rational) -> Self {
        SolidSpec::new(SolidKind::Juel, vec![a])
    }

    pub fn truncated_juel(a: Rational, b: Rational) -> Self {
        SolidSpec::new(SolidKind::TruncatedJuel, vec![a, b])
    }

    pub fn regular_tetrahedron() -> Self {
        SolidSpec::new(SolidKind::RegularTetrahedron, vec![])
    }

    /// Parses `kind` or `kind:p1,p2,...`, e.g. `symmetric_frustum:4,2,6`.
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let (kind, params) = match text.split_once(':') {
            Some((k, p)) => (k, p),
            None => (text, ""),
        };
        let kind: SolidKind = kind.trim().parse()?;
        let params = params
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<Rational>().map_err(|e| invalid(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SolidSpec::new(kind, params))
    }

    /// Closed-form volume, independent of the polytope construction.
    pub fn closed_form_volume(&self) -> Result<Rational, CatalogError> {
        self.check()?;
        let p = &self.params;
        let third = Rational::new(1, 3);
        Ok(match self.kind {
            SolidKind::Box => &p[0] * &p[1] * &p[2],
            SolidKind::SymmetricFrustum | SolidKind::RightFrustum => {
                &p[2] * &third * (p[0].square() + &p[0] * &p[1] + p[1].square())
            }
            SolidKind::SymmetricPyramid => &p[1] * &third * p[0].square(),
            SolidKind::Yangma => &p[0] * &p[1] * &p[2] * third,
            SolidKind::Qiandu => &p[0] * &p[1] * &p[2] / int(2),
            SolidKind::Juel => p[0].cube() / int(6),
            SolidKind::TruncatedJuel => (p[0].cube() - p[1].cube()) / int(6),
            SolidKind::RegularTetrahedron => Rational::new(1, 3),
        })
    }

    fn check(&self) -> Result<(), CatalogError> {
        let names = self.kind.param_names();
        if self.params.len() != names.len() {
            return Err(invalid(format!(
                "{} takes {} parameters ({}), got {}",
                self.kind,
                names.len(),
                names.join(", "),
                self.params.len()
            )));
        }
        for (name, value) in names.iter().zip(&self.params) {
            if !value.is_positive() {
                return Err(invalid(format!("{name} must be positive")));
            }
        }
        if matches!(
            self.kind,
            SolidKind::SymmetricFrustum | SolidKind::RightFrustum | SolidKind::TruncatedJuel
        ) && self.params[0] <= self.params[1]
        {
            return Err(invalid("a must exceed b"));
        }
        Ok(())
    }
}

impl fmt::Display for SolidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.params.is_empty() {
            let params: Vec<String> = self.params.iter().map(ToString::to_string).collect();
            write!(f, "({})", params.join(", "))?;
        }
        Ok(())
    }
}

const HEXAHEDRON_FACES: [[usize; 4]; 6] = [
    [0, 3, 2, 1],
    [4, 5, 6, 7],
    [0, 1, 5, 4],
    [1, 2, 6, 5],
    [2, 3, 7, 6],
    [3, 0, 4, 7],
];

fn hexahedron(
    bottom: [Point3; 4],
    top: [Point3; 4],
    label: String,
) -> Result<ConvexPolytope, CatalogError> {
    let vertices = bottom.into_iter().chain(top).collect();
    let faces = HEXAHEDRON_FACES.iter().map(|f| f.to_vec()).collect();
    Ok(build_polytope(vertices, faces, label)?)
}

fn square_pyramid(
    base: [Point3; 4],
    apex: Point3,
    label: String,
) -> Result<ConvexPolytope, CatalogError> {
    let vertices = base.into_iter().chain([apex]).collect();
    let faces = vec![
        vec![0, 3, 2, 1],
        vec![0, 1, 4],
        vec![1, 2, 4],
        vec![2, 3, 4],
        vec![3, 0, 4],
    ];
    Ok(build_polytope(vertices, faces, label)?)
}

fn centred_square(side: &Rational, z: &Rational) -> [Point3; 4] {
    let h = side / int(2);
    let m = -&h;
    [
        Point3::new(m.clone(), m.clone(), z.clone()),
        Point3::new(h.clone(), m.clone(), z.clone()),
        Point3::new(h.clone(), h.clone(), z.clone()),
        Point3::new(m, h, z.clone()),
    ]
}

fn corner_rect(p: &Rational, q: &Rational, z: &Rational) -> [Point3; 4] {
    let o = Rational::zero();
    [
        Point3::new(o.clone(), o.clone(), z.clone()),
        Point3::new(p.clone(), o.clone(), z.clone()),
        Point3::new(p.clone(), q.clone(), z.clone()),
        Point3::new(o, q.clone(), z.clone()),
    ]
}

/// Tetrahedron on four affinely independent points.
pub fn tetrahedron(
    points: [Point3; 4],
    label: impl Into<String>,
) -> Result<ConvexPolytope, PolytopeError> {
    build_polytope(
        points.to_vec(),
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        label,
    )
}

/// Builds the canonical polytope for a solid specification.
pub fn make_solid(spec: &SolidSpec) -> Result<ConvexPolytope, CatalogError> {
    spec.check()?;
    let p = &spec.params;
    let zero = Rational::zero();
    let label = spec.to_string();
    match spec.kind {
        SolidKind::Box => hexahedron(
            corner_rect(&p[0], &p[1], &zero),
            corner_rect(&p[0], &p[1], &p[2]),
            label,
        ),
        SolidKind::SymmetricFrustum => hexahedron(
            centred_square(&p[0], &zero),
            centred_square(&p[1], &p[2]),
            label,
        ),
        SolidKind::TruncatedJuel => {
            let h = (&p[0] - &p[1]) / int(2);
            hexahedron(
                centred_square(&p[0], &zero),
                centred_square(&p[1], &h),
                label,
            )
        }
        SolidKind::RightFrustum => hexahedron(
            corner_rect(&p[0], &p[0], &zero),
            corner_rect(&p[1], &p[1], &p[2]),
            label,
        ),
        SolidKind::SymmetricPyramid => square_pyramid(
            centred_square(&p[0], &zero),
            Point3::new(0, 0, p[1].clone()),
            label,
        ),
        SolidKind::Juel => square_pyramid(
            centred_square(&p[0], &zero),
            Point3::new(0, 0, &p[0] / int(2)),
            label,
        ),
        SolidKind::Yangma => square_pyramid(
            corner_rect(&p[0], &p[1], &zero),
            Point3::new(0, 0, p[2].clone()),
            label,
        ),
        SolidKind::Qiandu => {
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            let vertices = vec![
                Point3::new(0, 0, 0),
                Point3::new(x.clone(), 0, 0),
                Point3::new(0, y.clone(), 0),
                Point3::new(x.clone(), y.clone(), 0),
                Point3::new(0, 0, z.clone()),
                Point3::new(x.clone(), 0, z.clone()),
            ];
            let faces = vec![
                vec![0, 2, 3, 1],
                vec![0, 1, 5, 4],
                vec![2, 4, 5, 3],
                vec![0, 4, 2],
                vec![1, 3, 5],
            ];
            Ok(build_polytope(vertices, faces, label)?)
        }
        SolidKind::RegularTetrahedron => Ok(tetrahedron(
            [
                Point3::new(0, 0, 0),
                Point3::new(1, 1, 0),
                Point3::new(1, 0, 1),
                Point3::new(0, 1, 1),
            ],
            label,
        )?),
    }
}

fn solid(spec: SolidSpec) -> Result<ConvexPolytope, CatalogError> {
    make_solid(&spec)
}

fn solid_at(spec: SolidSpec, offset: &Vector3) -> Result<ConvexPolytope, CatalogError> {
    Ok(make_solid(&spec)?.translate(offset))
}

fn require_positive(name: &str, v: &Rational) -> Result<(), CatalogError> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive")))
    }
}

fn require_frustum(a: &Rational, b: &Rational, h: &Rational) -> Result<(), CatalogError> {
    require_positive("b", b)?;
    require_positive("h", h)?;
    if a <= b {
        return Err(invalid("a must exceed b"));
    }
    Ok(())
}

fn v3(x: &Rational, y: &Rational, z: &Rational) -> Vector3 {
    Vector3::new(x.clone(), y.clone(), z.clone())
}

fn translate(x: &Rational, y: &Rational) -> RigidMotion {
    RigidMotion::translation(v3(x, y, &Rational::zero()))
}

/// Half-turn of the box `[0,p]×[0,q]×[0,r]` about its axis parallel to x:
/// swaps a qiandu with its complement in that box.
fn qiandu_half_turn(q: &Rational, r: &Rational) -> RigidMotion {
    RigidMotion::signed_permutation([0, 1, 2], [1, -1, -1]).then_translate(&v3(
        &Rational::zero(),
        q,
        r,
    ))
}

/// Motions of two `qiandu(_, width, h)` that tile a box with one corner at
/// `(x0, y0, 0)`; the prism length runs along x when `along_x`, else along y.
fn slab_motions(
    x0: &Rational,
    y0: &Rational,
    width: &Rational,
    h: &Rational,
    along_x: bool,
) -> [RigidMotion; 2] {
    let first = if along_x {
        translate(x0, y0)
    } else {
        // (x, y, z) -> (x0 + width - y, y0 + x, z)
        RigidMotion::rotation_z(1).then_translate(&v3(&(x0 + width), y0, &Rational::zero()))
    };
    let second = first.compose(&qiandu_half_turn(width, h));
    [first, second]
}

/// Motions of three `yangma(s, s, s)` that tile the cube `[0,s]³ + (x0, y0, 0)`,
/// the pieces meeting at the cube's origin corner and related by the 3-fold
/// rotation about the main diagonal.
fn cube_corner_motions(s: &Rational, x0: &Rational, y0: &Rational) -> [RigidMotion; 3] {
    // (x, y, z) -> (y, x, s - z): apex to the origin, base onto z = s
    let flip = RigidMotion::signed_permutation([1, 0, 2], [1, 1, -1]).then_translate(&v3(
        &Rational::zero(),
        &Rational::zero(),
        s,
    ));
    // (x, y, z) -> (y, z, x)
    let cycle = RigidMotion::signed_permutation([2, 0, 1], [1, 1, 1]);
    let offset = v3(x0, y0, &Rational::zero());
    [
        flip.then_translate(&offset),
        cycle.compose(&flip).then_translate(&offset),
        cycle.compose(&cycle).compose(&flip).then_translate(&offset),
    ]
}

#[derive(Default)]
struct CertBuilder {
    cert: RearrangementCertificate,
}

impl CertBuilder {
    fn new(name: &str, params: &[&Rational]) -> Self {
        let mut b = CertBuilder::default();
        b.cert.name = name.to_string();
        b.cert.metadata.push(("scenario".into(), name.into()));
        let params: Vec<String> = params.iter().map(ToString::to_string).collect();
        b.cert.metadata.push(("params".into(), params.join(" ")));
        b
    }

    fn source(&mut self, p: ConvexPolytope) -> usize {
        self.cert.sources.push(p);
        self.cert.sources.len() - 1
    }

    fn target(&mut self, p: ConvexPolytope) -> usize {
        self.cert.targets.push(p);
        self.cert.targets.len() - 1
    }

    fn region(&mut self, p: ConvexPolytope, within: Option<usize>) -> usize {
        self.cert.regions.push(Region {
            polytope: p,
            within,
        });
        self.cert.regions.len() - 1
    }

    fn piece(
        &mut self,
        piece: ConvexPolytope,
        source: Option<(usize, RigidMotion)>,
        target: Option<(usize, RigidMotion)>,
    ) -> usize {
        self.cert.pieces.push(PlacedPiece {
            piece,
            source: source.map(|(i, m)| Placement::new(i, m)),
            target: target.map(|(i, m)| Placement::new(i, m)),
        });
        self.cert.pieces.len() - 1
    }

    fn set_target(&mut self, piece: usize, target: usize, motion: RigidMotion) {
        self.cert.pieces[piece].target = Some(Placement::new(target, motion));
    }

    fn claim(&mut self, c: Claim) {
        self.cert.claims.push(c);
    }

    fn tiling(&mut self, label: &str, container: Ref, items: Vec<Ref>) {
        self.claim(Claim::Tiling {
            label: label.into(),
            container,
            items,
        });
    }

    /// Congruence claim with witnesses computed now, so verification does not search.
    fn congruence(
        &mut self,
        label: &str,
        items: Vec<Ref>,
        allow_reflection: bool,
    ) -> Result<(), CatalogError> {
        let shapes = items
            .iter()
            .map(|r| self.cert.resolve(r))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| invalid(format!("unresolvable congruence item: {e}")))?;
        let witnesses = shapes[1..]
            .iter()
            .map(|s| find_congruence(&shapes[0], s, allow_reflection))
            .collect::<Option<Vec<_>>>()
            .unwrap_or_default();
        self.claim(Claim::Congruence {
            label: label.into(),
            items,
            allow_reflection,
            witnesses,
        });
        Ok(())
    }

    fn finish(self) -> RearrangementCertificate {
        self.cert
    }
}

/// Indices of the nine pieces cut from one frustum.
struct NineParts {
    central: usize,
    prisms: [usize; 4],
    corners: [usize; 4],
}

/// Adds the nine parts of `symmetric_frustum(a, b, h)` sitting at `offset` as
/// pieces of source `src`.
fn add_nine_parts(
    builder: &mut CertBuilder,
    src: usize,
    a: &Rational,
    b: &Rational,
    h: &Rational,
    offset: &Vector3,
    tag: &str,
) -> Result<NineParts, CatalogError> {
    let s = (a - b) / int(2);
    let hb = b / int(2);
    let central = solid(SolidSpec::cuboid(b.clone(), b.clone(), h.clone()))?
        .with_label(format!("{tag}central cuboid"));
    let prism = solid(SolidSpec::qiandu(b.clone(), s.clone(), h.clone()))?;
    let corner = solid(SolidSpec::yangma(s.clone(), s.clone(), h.clone()))?;

    let central_idx = builder.piece(
        central,
        Some((src, translate(&-&hb, &-&hb).then_translate(offset))),
        None,
    );
    let mut prisms = [0; 4];
    let mut corners = [0; 4];
    for k in 0..4 {
        let prism_motion = RigidMotion::rotation_z(k as i32)
            .compose(&translate(&-&hb, &hb))
            .then_translate(offset);
        prisms[k] = builder.piece(
            prism.clone().with_label(format!("{tag}prism {k}")),
            Some((src, prism_motion)),
            None,
        );
        let corner_motion = RigidMotion::rotation_z(k as i32)
            .compose(&translate(&hb, &hb))
            .then_translate(offset);
        corners[k] = builder.piece(
            corner
                .clone()
                .with_label(format!("{tag}corner pyramid {k}")),
            Some((src, corner_motion)),
            None,
        );
    }
    Ok(NineParts {
        central: central_idx,
        prisms,
        corners,
    })
}

/// The frustum cut into a central cuboid, four side prisms and four corner pyramids.
pub fn nine_part_frustum(
    a: &Rational,
    b: &Rational,
    h: &Rational,
) -> Result<RearrangementCertificate, CatalogError> {
    require_frustum(a, b, h)?;
    let mut builder = CertBuilder::new("nine-part", &[a, b, h]);
    let src = builder.source(solid(SolidSpec::symmetric_frustum(
        a.clone(),
        b.clone(),
        h.clone(),
    ))?);
    let parts = add_nine_parts(&mut builder, src, a, b, h, &Vector3::zero(), "")?;
    let items = std::iter::once(parts.central)
        .chain(parts.prisms)
        .chain(parts.corners)
        .map(Ref::piece_at_source)
        .collect();
    builder.tiling(
        "frustum = central cuboid + 4 prisms + 4 corner pyramids",
        Ref::Source(src),
        items,
    );
    Ok(builder.finish())
}

/// Three copies of the frustum rearranged into the boxes a·a·h, a·b·h and b·b·h.
///
/// Copy 1 feeds the middle box, copy 2 the central cross of the big box (with
/// copy 3's prisms), copy 3's cuboid is the small box. When `h = (a − b)/2` the
/// twelve corner pyramids exactly fill the big box's four corner cubes;
/// otherwise only their total volume is claimed.
pub fn liu_hui_three_copies(
    a: &Rational,
    b: &Rational,
    h: &Rational,
) -> Result<RearrangementCertificate, CatalogError> {
    require_frustum(a, b, h)?;
    let s = (a - b) / int(2);
    let zero = Rational::zero();
    let mut builder = CertBuilder::new("liu-hui", &[a, b, h]);

    let spacing = a * int(2);
    let mut copies = Vec::new();
    for c in 0..3 {
        let offset = v3(&(&spacing * int(c)), &zero, &zero);
        let src = builder.source(
            solid_at(
                SolidSpec::symmetric_frustum(a.clone(), b.clone(), h.clone()),
                &offset,
            )?
            .with_label(format!("frustum copy {}", c + 1)),
        );
        copies.push(add_nine_parts(
            &mut builder,
            src,
            a,
            b,
            h,
            &offset,
            &format!("copy {} ", c + 1),
        )?);
    }

    let row = -&spacing;
    let big_at = v3(&zero, &row, &zero);
    let mid_at = v3(&spacing, &row, &zero);
    let small_at = v3(&(&spacing * int(2)), &row, &zero);
    let big = builder.target(
        solid_at(SolidSpec::cuboid(a.clone(), a.clone(), h.clone()), &big_at)?
            .with_label("box a*a*h"),
    );
    let mid = builder.target(
        solid_at(SolidSpec::cuboid(a.clone(), b.clone(), h.clone()), &mid_at)?
            .with_label("box a*b*h"),
    );
    let small = builder.target(
        solid_at(
            SolidSpec::cuboid(b.clone(), b.clone(), h.clone()),
            &small_at,
        )?
        .with_label("box b*b*h"),
    );

    // (i) middle box: slab s | cuboid b | slab s along x
    let [c1, c2, c3] = [&copies[0], &copies[1], &copies[2]];
    let place = |m: RigidMotion, at: &Vector3| m.then_translate(at);
    builder.set_target(c1.central, mid, place(translate(&s, &zero), &mid_at));
    let west = slab_motions(&zero, &zero, &s, h, false);
    let east = slab_motions(&(&s + b), &zero, &s, h, false);
    for (piece, motion) in c1.prisms.iter().zip(west.iter().chain(east.iter())) {
        builder.set_target(*piece, mid, place(motion.clone(), &mid_at));
    }
    let mut items = vec![Ref::piece_at_target(c1.central)];
    items.extend(c1.prisms.iter().map(|&p| Ref::piece_at_target(p)));
    builder.tiling(
        "(i) box a*b*h = copy-1 cuboid + copy-1 prisms",
        Ref::Target(mid),
        items,
    );

    // (ii) big box: central cuboid, four slabs, four corner slots
    let sb = &s + b;
    builder.set_target(c2.central, big, place(translate(&s, &s), &big_at));
    let slabs = [
        slab_motions(&s, &zero, &s, h, true),
        slab_motions(&s, &sb, &s, h, true),
        slab_motions(&zero, &s, &s, h, false),
        slab_motions(&sb, &s, &s, h, false),
    ];
    let cross_prisms: Vec<usize> = c2.prisms.iter().chain(c3.prisms.iter()).copied().collect();
    for (piece, motion) in cross_prisms.iter().zip(slabs.iter().flatten()) {
        builder.set_target(*piece, big, place(motion.clone(), &big_at));
    }
    let corner_origins = [
        (zero.clone(), zero.clone()),
        (sb.clone(), zero.clone()),
        (zero.clone(), sb.clone()),
        (sb.clone(), sb.clone()),
    ];
    let corner_regions: Vec<usize> = corner_origins
        .iter()
        .enumerate()
        .map(|(j, (x, y))| -> Result<usize, CatalogError> {
            let at = &big_at + &v3(x, y, &zero);
            let slot = solid_at(SolidSpec::cuboid(s.clone(), s.clone(), h.clone()), &at)?
                .with_label(format!("corner box {j}"));
            Ok(builder.region(slot, Some(big)))
        })
        .collect::<Result<_, _>>()?;
    let mut items = vec![Ref::piece_at_target(c2.central)];
    items.extend(cross_prisms.iter().map(|&p| Ref::piece_at_target(p)));
    items.extend(corner_regions.iter().map(|&r| Ref::Region(r)));
    builder.tiling(
        "(ii) box a*a*h = copy-2 cuboid + 8 prisms (copies 2, 3) + 4 corner boxes",
        Ref::Target(big),
        items,
    );

    // (iii) small box
    builder.set_target(c3.central, small, place(RigidMotion::identity(), &small_at));
    builder.tiling(
        "(iii) box b*b*h = copy-3 cuboid",
        Ref::Target(small),
        vec![Ref::piece_at_target(c3.central)],
    );

    // (iv) corner step
    let yangma: Vec<[usize; 3]> = (0..4)
        .map(|j| [c1.corners[j], c2.corners[j], c3.corners[j]])
        .collect();
    if *h == s {
        for (j, (x, y)) in corner_origins.iter().enumerate() {
            let motions = cube_corner_motions(&s, x, y);
            for (piece, motion) in yangma[j].iter().zip(motions) {
                builder.set_target(*piece, big, place(motion, &big_at));
            }
            builder.tiling(
                &format!("(iv) corner box {j} = 3 corner pyramids"),
                Ref::Region(corner_regions[j]),
                yangma[j].iter().map(|&p| Ref::piece_at_target(p)).collect(),
            );
        }
    } else {
        builder.claim(Claim::Volume {
            label: "(iv) 12 corner pyramids = 4 corner boxes in volume".into(),
            left: yangma
                .iter()
                .flatten()
                .map(|&p| Ref::piece_local(p))
                .collect(),
            right: corner_regions.iter().map(|&r| Ref::Region(r)).collect(),
            note: Some("volume argument only; presupposes the pyramid rule V = (h/3)*base".into()),
        });
    }
    Ok(builder.finish())
}

/// Four congruent `yangma(s, s, h)` assembled into `symmetric_pyramid(2s, h)`.
pub fn four_yangma_pyramid(
    s: &Rational,
    h: &Rational,
) -> Result<RearrangementCertificate, CatalogError> {
    require_positive("s", s)?;
    require_positive("h", h)?;
    let mut builder = CertBuilder::new("four-yangma", &[s, h]);
    let target = builder.target(solid(SolidSpec::symmetric_pyramid(s * int(2), h.clone()))?);
    let piece = solid(SolidSpec::yangma(s.clone(), s.clone(), h.clone()))?;
    let pieces: Vec<usize> = (0..4)
        .map(|k| {
            builder.piece(
                piece.clone().with_label(format!("corner pyramid {k}")),
                None,
                Some((target, RigidMotion::rotation_z(k))),
            )
        })
        .collect();
    let items: Vec<Ref> = pieces.iter().map(|&p| Ref::piece_at_target(p)).collect();
    builder.tiling(
        "pyramid = 4 corner pyramids, apexes on the axis",
        Ref::Target(target),
        items.clone(),
    );
    builder.congruence("the 4 corner pyramids are congruent", items, true)?;
    Ok(builder.finish())
}

/// The right frustum cut into a cuboid, two prisms and one corner pyramid;
/// the two prisms stack into a box.
pub fn right_frustum_parts(
    a: &Rational,
    b: &Rational,
    h: &Rational,
) -> Result<RearrangementCertificate, CatalogError> {
    require_frustum(a, b, h)?;
    let d = a - b;
    let zero = Rational::zero();
    let mut builder = CertBuilder::new("right-frustum", &[a, b, h]);
    let src = builder.source(solid(SolidSpec::right_frustum(
        a.clone(),
        b.clone(),
        h.clone(),
    ))?);

    let box_at = v3(&(a * int(2)), &zero, &zero);
    let pyramid_at = v3(&(a * int(4)), &zero, &zero);
    let hab = builder.target(
        solid_at(SolidSpec::cuboid(a.clone(), b.clone(), h.clone()), &box_at)?
            .with_label("box a*b*h"),
    );
    let corner_target = builder.target(
        solid_at(
            SolidSpec::yangma(d.clone(), d.clone(), h.clone()),
            &pyramid_at,
        )?
        .with_label("corner pyramid"),
    );
    let stack = builder.region(
        solid_at(
            SolidSpec::cuboid(d.clone(), b.clone(), h.clone()),
            &(&box_at + &v3(b, &zero, &zero)),
        )?
        .with_label("prism stack b*(a-b)*h"),
        Some(hab),
    );

    let central = builder.piece(
        solid(SolidSpec::cuboid(b.clone(), b.clone(), h.clone()))?.with_label("central cuboid"),
        Some((src, RigidMotion::identity())),
        Some((hab, RigidMotion::translation(box_at.clone()))),
    );
    let prism = solid(SolidSpec::qiandu(b.clone(), d.clone(), h.clone()))?;
    // (x, y, z) -> (b + y, b - x, z)
    let east = RigidMotion::rotation_z(3).then_translate(&v3(b, b, &zero));
    let north = translate(&zero, b);
    let stacked = [
        east.then_translate(&box_at),
        east.compose(&qiandu_half_turn(&d, h))
            .then_translate(&box_at),
    ];
    let p1 = builder.piece(
        prism.clone().with_label("prism 1"),
        Some((src, north)),
        Some((hab, stacked[0].clone())),
    );
    let p2 = builder.piece(
        prism.with_label("prism 2"),
        Some((src, east)),
        Some((hab, stacked[1].clone())),
    );
    let corner = builder.piece(
        solid(SolidSpec::yangma(d.clone(), d.clone(), h.clone()))?.with_label("corner pyramid"),
        Some((src, translate(b, b))),
        Some((corner_target, RigidMotion::translation(pyramid_at.clone()))),
    );

    builder.tiling(
        "right frustum = cuboid + 2 prisms + corner pyramid",
        Ref::Source(src),
        [central, p1, p2, corner].map(Ref::piece_at_source).to_vec(),
    );
    builder.tiling(
        "2 prisms stacked = box b*(a-b)*h",
        Ref::Region(stack),
        vec![Ref::piece_at_target(p1), Ref::piece_at_target(p2)],
    );
    builder.tiling(
        "box a*b*h = cuboid + prism stack",
        Ref::Target(hab),
        vec![Ref::piece_at_target(central), Ref::Region(stack)],
    );
    builder.tiling(
        "corner pyramid",
        Ref::Target(corner_target),
        vec![Ref::piece_at_target(corner)],
    );
    let fta = evaluate_formula(FormulaId::FrustumAlternative, a, b, h)
        .map_err(|e| invalid(e.to_string()))?;
    builder.claim(Claim::Arithmetic {
        label: "volume = hab + (h/3)(a-b)^2".into(),
        left: LinearExpr::volume_of(int(1), Ref::Source(src)),
        right: LinearExpr::constant(fta),
    });
    Ok(builder.finish())
}

/// Four right frusta, turned a quarter each about the vertical axis, form
/// `symmetric_frustum(2a, 2b, h)`.
pub fn four_right_frustums(
    a: &Rational,
    b: &Rational,
    h: &Rational,
) -> Result<RearrangementCertificate, CatalogError> {
    require_frustum(a, b, h)?;
    let zero = Rational::zero();
    let mut builder = CertBuilder::new("four-right-frustums", &[a, b, h]);
    let right = solid(SolidSpec::right_frustum(a.clone(), b.clone(), h.clone()))?;
    let target_at = v3(&zero, &(a * int(-4)), &zero);
    let target = builder.target(solid_at(
        SolidSpec::symmetric_frustum(a * int(2), b * int(2), h.clone()),
        &target_at,
    )?);
    let mut pieces = Vec::new();
    for k in 0..4 {
        let at = v3(&(a * int(2) * int(k)), &zero, &zero);
        let src = builder.source(
            right
                .translate(&at)
                .with_label(format!("right frustum {k}")),
        );
        pieces.push(builder.piece(
            right.clone().with_label(format!("right frustum {k}")),
            Some((src, RigidMotion::translation(at))),
            Some((
                target,
                RigidMotion::rotation_z(k as i32).then_translate(&target_at),
            )),
        ));
    }
    let items: Vec<Ref> = pieces.iter().map(|&p| Ref::piece_at_target(p)).collect();
    builder.tiling(
        "symmetric frustum(2a, 2b, h) = 4 right frusta",
        Ref::Target(target),
        items.clone(),
    );
    builder.congruence("the 4 right frusta are congruent", items, false)?;
    let ft = evaluate_formula(FormulaId::Frustum, &(a * int(2)), &(b * int(2)), h)
        .map_err(|e| invalid(e.to_string()))?;
    builder.claim(Claim::Arithmetic {
        label: "4 * volume(right frustum) = F_T(2a, 2b, h)".into(),
        left: LinearExpr::volume_of(int(4), Ref::Source(0)),
        right: LinearExpr::constant(ft),
    });
    Ok(builder.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CubeDissection {
    ThreeYangma,
    SixJuel,
    TwoQiandu,
}

impl FromStr for CubeDissection {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "three_yangma" => Ok(CubeDissection::ThreeYangma),
            "six_juel" => Ok(CubeDissection::SixJuel),
            "two_qiandu" => Ok(CubeDissection::TwoQiandu),
            other => Err(invalid(format!("unknown cube dissection {other:?}"))),
        }
    }
}

/// The cube `[0,a]³` cut into 3 yangma, 6 Juel pyramids, or 2 qiandu.
pub fn cube_dissections(
    a: &Rational,
    kind: CubeDissection,
) -> Result<RearrangementCertificate, CatalogError> {
    require_positive("a", a)?;
    let name = match kind {
        CubeDissection::ThreeYangma => "cube-three-yangma",
        CubeDissection::SixJuel => "cube-six-juel",
        CubeDissection::TwoQiandu => "cube-two-qiandu",
    };
    let mut builder = CertBuilder::new(name, &[a]);
    let src = builder.source(solid(SolidSpec::cube(a.clone()))?);
    let zero = Rational::zero();
    let half = a / int(2);
    let placements: Vec<(ConvexPolytope, RigidMotion)> = match kind {
        CubeDissection::ThreeYangma => {
            let piece = solid(SolidSpec::yangma(a.clone(), a.clone(), a.clone()))?;
            cube_corner_motions(a, &zero, &zero)
                .into_iter()
                .map(|m| (piece.clone(), m))
                .collect()
        }
        CubeDissection::SixJuel => {
            let piece = solid(SolidSpec::juel(a.clone()))?;
            // (axis permutation, signs, anchor of the base centre)
            let poses: [([usize; 3], [i64; 3], [&Rational; 3]); 6] = [
                ([0, 1, 2], [1, 1, 1], [&half, &half, &zero]),
                ([0, 1, 2], [1, -1, -1], [&half, &half, a]),
                ([1, 2, 0], [1, 1, 1], [&zero, &half, &half]),
                ([1, 2, 0], [1, -1, -1], [a, &half, &half]),
                ([2, 0, 1], [1, 1, 1], [&half, &zero, &half]),
                ([2, 0, 1], [1, -1, -1], [&half, a, &half]),
            ];
            poses
                .into_iter()
                .map(|(perm, signs, [x, y, z])| {
                    (
                        piece.clone(),
                        RigidMotion::signed_permutation(perm, signs).then_translate(&v3(x, y, z)),
                    )
                })
                .collect()
        }
        CubeDissection::TwoQiandu => {
            let piece = solid(SolidSpec::qiandu(a.clone(), a.clone(), a.clone()))?;
            vec![
                (piece.clone(), RigidMotion::identity()),
                (piece, qiandu_half_turn(a, a)),
            ]
        }
    };
    let pieces: Vec<usize> = placements
        .into_iter()
        .enumerate()
        .map(|(k, (p, m))| {
            let label = format!("{} {k}", p.label());
            builder.piece(p.with_label(label), Some((src, m)), None)
        })
        .collect();
    let items: Vec<Ref> = pieces.iter().map(|&p| Ref::piece_at_source(p)).collect();
    builder.tiling(
        &format!("cube = {} pieces", items.len()),
        Ref::Source(src),
        items.clone(),
    );
    builder.congruence("the pieces are pairwise congruent", items, true)?;
    Ok(builder.finish())
}

/// The three corner pyramids of the box `p×q×r` obtained by the cube's
/// three-yangma cut: apex at the origin, one base on each far face.
pub fn box_corner_pyramids(
    p: &Rational,
    q: &Rational,
    r: &Rational,
) -> Result<[ConvexPolytope; 3], CatalogError> {
    for (n, v) in [("p", p), ("q", q), ("r", r)] {
        require_positive(n, v)?;
    }
    let o = Point3::origin();
    let far = Point3::new(p.clone(), q.clone(), r.clone());
    let pyramid =
        |base: [Point3; 4], label: &str| square_pyramid(base, o.clone(), label.to_string());
    let z = Rational::zero();
    Ok([
        pyramid(
            [
                Point3::new(z.clone(), z.clone(), r.clone()),
                Point3::new(p.clone(), z.clone(), r.clone()),
                far.clone(),
                Point3::new(z.clone(), q.clone(), r.clone()),
            ],
            "corner pyramid on z = r",
        )?,
        pyramid(
            [
                Point3::new(p.clone(), z.clone(), z.clone()),
                Point3::new(p.clone(), q.clone(), z.clone()),
                far.clone(),
                Point3::new(p.clone(), z.clone(), r.clone()),
            ],
            "corner pyramid on x = p",
        )?,
        pyramid(
            [
                Point3::new(z.clone(), q.clone(), z.clone()),
                Point3::new(z.clone(), q.clone(), r.clone()),
                far,
                Point3::new(p.clone(), q.clone(), z.clone()),
            ],
            "corner pyramid on y = q",
        )?,
    ])
}

/// Certificate for the corner-pyramid cut of an arbitrary box: the tiling
/// always holds, the congruence claim only for a cube.
pub fn box_three_pyramids(
    p: &Rational,
    q: &Rational,
    r: &Rational,
) -> Result<RearrangementCertificate, CatalogError> {
    let mut builder = CertBuilder::new("box-three-pyramids", &[p, q, r]);
    let src = builder.source(solid(SolidSpec::cuboid(p.clone(), q.clone(), r.clone()))?);
    let pieces: Vec<usize> = box_corner_pyramids(p, q, r)?
        .into_iter()
        .map(|piece| builder.piece(piece, Some((src, RigidMotion::identity())), None))
        .collect();
    let items: Vec<Ref> = pieces.iter().map(|&i| Ref::piece_at_source(i)).collect();
    builder.tiling("box = 3 corner pyramids", Ref::Source(src), items.clone());
    builder.congruence("the 3 corner pyramids are pairwise congruent", items, true)?;
    Ok(builder.finish())
}

/// A qiandu cut into its yangma (two thirds) and the remaining tetrahedron (one third).
pub fn qiandu_split(
    p: &Rational,
    q: &Rational,
    r: &Rational,
) -> Result<RearrangementCertificate, CatalogError> {
    for (n, v) in [("p", p), ("q", q), ("r", r)] {
        require_positive(n, v)?;
    }
    let mut builder = CertBuilder::new("qiandu-split", &[p, q, r]);
    let src = builder.source(solid(SolidSpec::qiandu(p.clone(), q.clone(), r.clone()))?);
    let yangma = solid(SolidSpec::yangma(p.clone(), q.clone(), r.clone()))?;
    let z = Rational::zero();
    let rest = tetrahedron(
        [
            Point3::new(p.clone(), z.clone(), z.clone()),
            Point3::new(p.clone(), q.clone(), z.clone()),
            Point3::new(p.clone(), z.clone(), r.clone()),
            Point3::new(z.clone(), z.clone(), r.clone()),
        ],
        "remaining tetrahedron",
    )?;
    let y = builder.piece(yangma, Some((src, RigidMotion::identity())), None);
    let t = builder.piece(rest, Some((src, RigidMotion::identity())), None);
    builder.tiling(
        "qiandu = yangma + tetrahedron",
        Ref::Source(src),
        vec![Ref::piece_at_source(y), Ref::piece_at_source(t)],
    );
    builder.claim(Claim::Arithmetic {
        label: "yangma is two thirds of the qiandu".into(),
        left: LinearExpr::volume_of(int(3), Ref::piece_local(y)),
        right: LinearExpr::volume_of(int(2), Ref::Source(src)),
    });
    Ok(builder.finish())
}

/// The top-pyramid argument for `symmetric_frustum(2b, b, h)`: the four corner
/// pyramids assemble into a copy of the removed top, the full pyramid is the
/// top scaled by 2, and six top pyramids equal the box `h·2b·b`.
pub fn shutler_certificate(
    b: &Rational,
    h: &Rational,
) -> Result<RearrangementCertificate, CatalogError> {
    require_positive("b", b)?;
    require_positive("h", h)?;
    let a = b * int(2);
    let zero = Rational::zero();
    let mut builder = CertBuilder::new("shutler", &[b, h]);
    let src = builder.source(solid(SolidSpec::symmetric_frustum(
        a.clone(),
        b.clone(),
        h.clone(),
    ))?);
    let parts = add_nine_parts(&mut builder, src, &a, b, h, &Vector3::zero(), "")?;

    let pyramid_at = v3(&(&a * int(2)), &zero, &zero);
    let box_at = v3(&(&a * int(4)), &zero, &zero);
    let assembled = builder.target(
        solid_at(
            SolidSpec::symmetric_pyramid(b.clone(), h.clone()),
            &pyramid_at,
        )?
        .with_label("pyramid of 4 corner pyramids"),
    );
    let hab = builder.target(
        solid_at(SolidSpec::cuboid(b.clone(), a.clone(), h.clone()), &box_at)?
            .with_label("box h*a*b"),
    );
    let top = builder.region(
        solid_at(
            SolidSpec::symmetric_pyramid(b.clone(), h.clone()),
            &v3(&zero, &zero, h),
        )?
        .with_label("removed top pyramid"),
        None,
    );
    let full = builder.region(
        solid(SolidSpec::symmetric_pyramid(a.clone(), h * int(2)))?.with_label("complete pyramid"),
        None,
    );

    for (k, &corner) in parts.corners.iter().enumerate() {
        // corner k's apex sits over (±b/2, ±b/2); shift it onto the axis
        let m = RigidMotion::rotation_z(k as i32).then_translate(&pyramid_at);
        builder.set_target(corner, assembled, m);
    }
    let quarter = b / int(2);
    builder.set_target(
        parts.central,
        hab,
        translate(&zero, &quarter).then_translate(&box_at),
    );
    let slabs = [
        slab_motions(&zero, &zero, &quarter, h, true),
        slab_motions(&zero, &(&quarter + b), &quarter, h, true),
    ];
    for (piece, motion) in parts.prisms.iter().zip(slabs.iter().flatten()) {
        builder.set_target(*piece, hab, motion.then_translate(&box_at));
    }

    let nine: Vec<Ref> = std::iter::once(parts.central)
        .chain(parts.prisms)
        .chain(parts.corners)
        .map(Ref::piece_at_source)
        .collect();
    builder.tiling("frustum(2b, b, h) = 9 parts", Ref::Source(src), nine);
    builder.tiling(
        "4 corner pyramids assemble into a pyramid",
        Ref::Target(assembled),
        parts
            .corners
            .iter()
            .map(|&p| Ref::piece_at_target(p))
            .collect(),
    );
    builder.congruence(
        "assembled pyramid is congruent to the removed top",
        vec![Ref::Target(assembled), Ref::Region(top)],
        true,
    )?;
    let mut box_items = vec![Ref::piece_at_target(parts.central)];
    box_items.extend(parts.prisms.iter().map(|&p| Ref::piece_at_target(p)));
    builder.tiling(
        "box h*a*b = central cuboid + 4 prisms",
        Ref::Target(hab),
        box_items,
    );
    builder.tiling(
        "complete pyramid = frustum + top pyramid",
        Ref::Region(full),
        vec![Ref::Source(src), Ref::Region(top)],
    );
    builder.claim(Claim::Scale {
        label: "complete pyramid = top pyramid scaled by 2 (volume ratio 1:8)".into(),
        base: Ref::Region(top),
        factor: int(2),
        scaled: Ref::Region(full),
    });
    builder.claim(Claim::Arithmetic {
        label: "6 * V_top = volume(box h*a*b)".into(),
        left: LinearExpr::volume_of(int(6), Ref::Region(top)),
        right: LinearExpr::volume_of(int(1), Ref::Target(hab)),
    });
    builder.claim(Claim::Arithmetic {
        label: "6 * V_top = 2*h*b^2".into(),
        left: LinearExpr::volume_of(int(6), Ref::Region(top)),
        right: LinearExpr::constant(int(2) * h * b.square()),
    });
    Ok(builder.finish())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaReport {
    pub geometric: Rational,
    pub cube_difference: Rational,
    pub frustum_rule: Rational,
    pub holds: bool,
}

/// volume(truncated_juel(a, b)) = (a³ − b³)/6 = F_T(a, b, (a − b)/2).
pub fn truncated_juel_check(a: &Rational, b: &Rational) -> Result<FormulaReport, CatalogError> {
    let geometric = make_solid(&SolidSpec::truncated_juel(a.clone(), b.clone()))?.volume();
    let cube_difference = (a.cube() - b.cube()) / int(6);
    let h = (a - b) / int(2);
    let frustum_rule =
        evaluate_formula(FormulaId::Frustum, a, b, &h).map_err(|e| invalid(e.to_string()))?;
    Ok(FormulaReport {
        holds: geometric == cube_difference && cube_difference == frustum_rule,
        geometric,
        cube_difference,
        frustum_rule,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    NinePart,
    LiuHui,
    FourYangma,
    RightFrustum,
    FourRightFrustums,
    CubeThreeYangma,
    CubeSixJuel,
    CubeTwoQiandu,
    QianduSplit,
    Shutler,
    TruncatedJuel,
}

impl Scenario {
    pub const ALL: [Scenario; 11] = [
        Scenario::NinePart,
        Scenario::LiuHui,
        Scenario::FourYangma,
        Scenario::RightFrustum,
        Scenario::FourRightFrustums,
        Scenario::CubeThreeYangma,
        Scenario::CubeSixJuel,
        Scenario::CubeTwoQiandu,
        Scenario::QianduSplit,
        Scenario::Shutler,
        Scenario::TruncatedJuel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::NinePart => "nine-part",
            Scenario::LiuHui => "liu-hui",
            Scenario::FourYangma => "four-yangma",
            Scenario::RightFrustum => "right-frustum",
            Scenario::FourRightFrustums => "four-right-frustums",
            Scenario::CubeThreeYangma => "cube-three-yangma",
            Scenario::CubeSixJuel => "cube-six-juel",
            Scenario::CubeTwoQiandu => "cube-two-qiandu",
            Scenario::QianduSplit => "qiandu-split",
            Scenario::Shutler => "shutler",
            Scenario::TruncatedJuel => "truncated-juel",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Scenario::NinePart
            | Scenario::LiuHui
            | Scenario::RightFrustum
            | Scenario::FourRightFrustums
            | Scenario::QianduSplit => 3,
            Scenario::FourYangma | Scenario::Shutler | Scenario::TruncatedJuel => 2,
            Scenario::CubeThreeYangma | Scenario::CubeSixJuel | Scenario::CubeTwoQiandu => 1,
        }
    }

    /// Builds the scenario's certificate. For `truncated-juel` this is the
    /// frustum dissection of `truncated_juel(a, b)` with an arithmetic claim
    /// tying its volume to `(a³ − b³)/6`.
    pub fn build(self, params: &[Rational]) -> Result<RearrangementCertificate, CatalogError> {
        if params.len() != self.arity() {
            return Err(invalid(format!(
                "{} takes {} parameters, got {}",
                self.name(),
                self.arity(),
                params.len()
            )));
        }
        let p = params;
        match self {
            Scenario::NinePart => nine_part_frustum(&p[0], &p[1], &p[2]),
            Scenario::LiuHui => liu_hui_three_copies(&p[0], &p[1], &p[2]),
            Scenario::FourYangma => four_yangma_pyramid(&p[0], &p[1]),
            Scenario::RightFrustum => right_frustum_parts(&p[0], &p[1], &p[2]),
            Scenario::FourRightFrustums => four_right_frustums(&p[0], &p[1], &p[2]),
            Scenario::CubeThreeYangma => cube_dissections(&p[0], CubeDissection::ThreeYangma),
            Scenario::CubeSixJuel => cube_dissections(&p[0], CubeDissection::SixJuel),
            Scenario::CubeTwoQiandu => cube_dissections(&p[0], CubeDissection::TwoQiandu),
            Scenario::QianduSplit => qiandu_split(&p[0], &p[1], &p[2]),
            Scenario::Shutler => shutler_certificate(&p[0], &p[1]),
            Scenario::TruncatedJuel => truncated_juel_certificate(&p[0], &p[1]),
        }
    }
}

impl FromStr for Scenario {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Scenario::ALL.iter().map(|s| s.name()).collect();
                invalid(format!(
                    "unknown scenario {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

fn truncated_juel_certificate(
    a: &Rational,
    b: &Rational,
) -> Result<RearrangementCertificate, CatalogError> {
    let report = truncated_juel_check(a, b)?;
    let h = (a - b) / int(2);
    let mut cert = nine_part_frustum(a, b, &h)?;
    cert.name = "truncated-juel".into();
    cert.metadata = vec![
        ("scenario".into(), "truncated-juel".into()),
        ("params".into(), format!("{a} {b}")),
    ];
    cert.sources[0] = make_solid(&SolidSpec::truncated_juel(a.clone(), b.clone()))?;
    cert.claims.push(Claim::Arithmetic {
        label: "volume = (a^3 - b^3)/6".into(),
        left: LinearExpr::volume_of(int(1), Ref::Source(0)),
        right: LinearExpr::constant(report.cube_difference),
    });
    cert.claims.push(Claim::Arithmetic {
        label: "volume = F_T(a, b, (a-b)/2)".into(),
        left: LinearExpr::volume_of(int(1), Ref::Source(0)),
        right: LinearExpr::constant(report.frustum_rule),
    });
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissection::{verify_certificate, ClaimKind, Outcome, Overall};
    use crate::geometry::rat;

    fn r(n: i64) -> Rational {
        int(n)
    }

    #[test]
    fn every_kind_matches_its_closed_form() {
        let specs = [
            SolidSpec::cuboid(r(1), r(2), r(3)),
            SolidSpec::symmetric_frustum(r(4), r(2), r(6)),
            SolidSpec::right_frustum(r(4), r(2), r(6)),
            SolidSpec::symmetric_pyramid(r(3), rat(5, 2)),
            SolidSpec::yangma(r(1), r(2), r(3)),
            SolidSpec::qiandu(r(2), r(3), r(5)),
            SolidSpec::juel(r(2)),
            SolidSpec::truncated_juel(r(3), r(1)),
            SolidSpec::regular_tetrahedron(),
        ];
        for spec in specs {
            let p = make_solid(&spec).unwrap();
            assert_eq!(p.volume(), spec.closed_form_volume().unwrap(), "{spec}");
        }
    }

    #[test]
    fn catalog_solids() {
        assert_eq!(
            make_solid(&SolidSpec::symmetric_frustum(r(4), r(2), r(6)))
                .unwrap()
                .volume(),
            r(56)
        );
        assert_eq!(
            make_solid(&SolidSpec::juel(r(2))).unwrap().volume(),
            rat(4, 3)
        );
        assert_eq!(
            make_solid(&SolidSpec::yangma(r(1), r(1), r(1)))
                .unwrap()
                .volume(),
            rat(1, 3)
        );
        let err = make_solid(&SolidSpec::symmetric_frustum(r(2), r(2), r(6))).unwrap_err();
        assert_eq!(err.to_string(), "invalid parameters: a must exceed b");
    }

    #[test]
    fn spec_parsing() {
        let s = SolidSpec::parse("symmetric_frustum:4,2,6").unwrap();
        assert_eq!(s, SolidSpec::symmetric_frustum(r(4), r(2), r(6)));
        assert_eq!(
            SolidSpec::parse("regular_tetrahedron").unwrap(),
            SolidSpec::regular_tetrahedron()
        );
        assert!(SolidSpec::parse("sphere:1").is_err());
    }

    fn piece_volumes(cert: &RearrangementCertificate) -> Vec<Rational> {
        cert.pieces.iter().map(|p| p.piece.volume()).collect()
    }

    #[test]
    fn nine_part_volumes() {
        let cert = nine_part_frustum(&r(4), &r(2), &r(6)).unwrap();
        let v = piece_volumes(&cert);
        assert_eq!(v[0], r(24));
        assert_eq!(v.iter().filter(|x| **x == r(6)).count(), 4);
        assert_eq!(v.iter().filter(|x| **x == r(2)).count(), 4);
        assert_eq!(v.iter().cloned().sum::<Rational>(), r(56));
        let total = |a, b, h| {
            piece_volumes(&nine_part_frustum(&r(a), &r(b), &r(h)).unwrap())
                .into_iter()
                .sum::<Rational>()
        };
        assert_eq!(total(3, 1, 1), rat(13, 3));
        assert_eq!(total(2, 1, 1), rat(7, 3));
        assert!(verify_certificate(&cert).unwrap().passed());
    }

    #[test]
    fn liu_hui_paradigm_is_exact() {
        let cert = liu_hui_three_copies(&r(3), &r(1), &r(1)).unwrap();
        let v = verify_certificate(&cert).unwrap();
        assert_eq!(v.overall(), Overall::Exact, "{v:#?}");
        let targets: Vec<Rational> = cert.targets.iter().map(|t| t.volume()).collect();
        assert_eq!(targets, vec![r(9), r(3), r(1)]);
    }

    #[test]
    fn liu_hui_general_is_volume_level() {
        let cert = liu_hui_three_copies(&r(4), &r(2), &r(6)).unwrap();
        let v = verify_certificate(&cert).unwrap();
        assert_eq!(v.overall(), Overall::VolumeEquality, "{v:#?}");
        let corner = v
            .claims
            .iter()
            .find(|c| c.kind == ClaimKind::Volume)
            .unwrap();
        assert_eq!(corner.outcome, Outcome::VolumeEquality);
        assert_eq!(v.notes.len(), 1);
        let exact = v
            .claims
            .iter()
            .filter(|c| c.outcome == Outcome::Exact)
            .count();
        assert_eq!(exact, 3);
    }

    #[test]
    fn liu_hui_corner_exact_when_height_matches() {
        let v = verify_certificate(&liu_hui_three_copies(&r(4), &r(2), &r(1)).unwrap()).unwrap();
        assert_eq!(v.overall(), Overall::Exact, "{v:#?}");
    }

    #[test]
    fn four_yangma_targets() {
        for (s, h, vol) in [
            (rat(1, 2), r(1), rat(1, 3)),
            (r(1), r(6), r(8)),
            (r(1), r(1), rat(4, 3)),
        ] {
            let cert = four_yangma_pyramid(&s, &h).unwrap();
            assert_eq!(cert.targets[0].volume(), vol);
            let v = verify_certificate(&cert).unwrap();
            assert_eq!(v.overall(), Overall::Exact, "{v:#?}");
        }
    }

    #[test]
    fn right_frustum_parts_verify() {
        let cert = right_frustum_parts(&r(4), &r(2), &r(6)).unwrap();
        let v = piece_volumes(&cert);
        assert_eq!(v, vec![r(24), r(12), r(12), r(8)]);
        let verdict = verify_certificate(&cert).unwrap();
        assert_eq!(verdict.overall(), Overall::Exact, "{verdict:#?}");
        let cert = right_frustum_parts(&r(2), &r(1), &r(1)).unwrap();
        assert_eq!(
            piece_volumes(&cert).into_iter().sum::<Rational>(),
            rat(7, 3)
        );
    }

    #[test]
    fn four_right_frustums_verify() {
        let cert = four_right_frustums(&r(2), &r(1), &r(1)).unwrap();
        assert_eq!(cert.targets[0].volume(), rat(28, 3));
        let v = verify_certificate(&cert).unwrap();
        assert_eq!(v.overall(), Overall::Exact, "{v:#?}");
        let cert = four_right_frustums(&r(4), &r(2), &r(6)).unwrap();
        assert_eq!(cert.targets[0].volume(), r(224));
    }

    #[test]
    fn cube_dissections_verify() {
        for (kind, a, piece) in [
            (CubeDissection::ThreeYangma, r(1), rat(1, 3)),
            (CubeDissection::SixJuel, r(2), rat(4, 3)),
            (CubeDissection::TwoQiandu, r(1), rat(1, 2)),
        ] {
            let cert = cube_dissections(&a, kind).unwrap();
            assert!(piece_volumes(&cert).iter().all(|v| *v == piece));
            let v = verify_certificate(&cert).unwrap();
            assert_eq!(v.overall(), Overall::Exact, "{kind:?}: {v:#?}");
        }
    }

    #[test]
    fn box_corner_pyramids_congruent_only_for_cube() {
        let cube = verify_certificate(&box_three_pyramids(&r(1), &r(1), &r(1)).unwrap()).unwrap();
        assert_eq!(cube.overall(), Overall::Exact);
        let tall = verify_certificate(&box_three_pyramids(&r(1), &r(1), &r(2)).unwrap()).unwrap();
        assert_eq!(tall.claims[0].outcome, Outcome::Exact);
        assert!(tall.claims[1].outcome.is_failed());
    }

    #[test]
    fn qiandu_split_volumes() {
        for (p, q, rr, y, t) in [
            (1, 1, 1, rat(1, 3), rat(1, 6)),
            (2, 3, 5, r(10), r(5)),
            (1, 1, 2, rat(2, 3), rat(1, 3)),
        ] {
            let cert = qiandu_split(&r(p), &r(q), &r(rr)).unwrap();
            assert_eq!(piece_volumes(&cert), vec![y, t]);
            assert_eq!(verify_certificate(&cert).unwrap().overall(), Overall::Exact);
        }
    }

    #[test]
    fn shutler_bundle() {
        let cert = shutler_certificate(&r(1), &r(1)).unwrap();
        assert_eq!(cert.sources[0].volume(), rat(7, 3));
        assert_eq!(cert.regions[0].polytope.volume(), rat(1, 3));
        assert_eq!(cert.regions[1].polytope.volume(), rat(8, 3));
        let v = verify_certificate(&cert).unwrap();
        assert_eq!(v.overall(), Overall::Exact, "{v:#?}");
        let v = verify_certificate(&shutler_certificate(&r(2), &r(3)).unwrap()).unwrap();
        assert!(v.passed(), "{v:#?}");
    }

    #[test]
    fn truncated_juel_values() {
        let rep = truncated_juel_check(&r(2), &r(1)).unwrap();
        assert_eq!(rep.geometric, rat(7, 6));
        assert!(rep.holds);
        assert_eq!(
            truncated_juel_check(&r(3), &r(1)).unwrap().geometric,
            rat(13, 3)
        );
        assert!(truncated_juel_check(&r(1), &r(1)).is_err());
    }

    #[test]
    fn scenarios_build_and_verify() {
        for sc in Scenario::ALL {
            let params: Vec<Rational> = [r(3), r(1), r(1)][..sc.arity()].to_vec();
            let cert = sc.build(&params).unwrap();
            let v = verify_certificate(&cert).unwrap();
            assert!(v.passed(), "{}: {v:#?}", sc.name());
        }
        assert_eq!(
            "nine-part"
                .parse::<Scenario>()
                .unwrap()
                .build(&[r(2), r(2), r(6)])
                .unwrap_err()
                .to_string(),
            "invalid parameters: a must exceed b"
        );
    }
}
