//! Rearrangement certificates and their verification.
//!
//! A certificate lists source solids, target solids, auxiliary regions and
//! pieces. Each piece is stored in its own local frame with an optional
//! placement into a source and an optional placement into a target. Claims
//! are checked at one of two levels: exact tiling (containment, pairwise
//! interior-disjointness and volume sum) or aggregate volume equality. A
//! volume-level claim is never reported as exact.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::congruence::{find_congruence, verify_witness, CongruenceWitness};
use crate::geometry::{Rational, RigidMotion};
use crate::polytope::ConvexPolytope;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub index: usize,
    pub motion: RigidMotion,
}

impl Placement {
    pub fn new(index: usize, motion: RigidMotion) -> Self {
        Placement { index, motion }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedPiece {
    /// Shape in its local frame.
    pub piece: ConvexPolytope,
    pub source: Option<Placement>,
    pub target: Option<Placement>,
}

/// An auxiliary solid in world coordinates: a slot inside a target, a
/// sub-box of a nested tiling, or a comparison solid used by a claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub polytope: ConvexPolytope,
    /// Target this region lies inside, if any.
    pub within: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Frame {
    Local,
    Source,
    Target,
}

/// Reference to a solid or to a piece in one of its frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ref {
    Source(usize),
    Target(usize),
    Region(usize),
    Piece { index: usize, frame: Frame },
}

impl Ref {
    pub fn piece_at_source(index: usize) -> Ref {
        Ref::Piece {
            index,
            frame: Frame::Source,
        }
    }

    pub fn piece_at_target(index: usize) -> Ref {
        Ref::Piece {
            index,
            frame: Frame::Target,
        }
    }

    pub fn piece_local(index: usize) -> Ref {
        Ref::Piece {
            index,
            frame: Frame::Local,
        }
    }
}

impl fmt::Display for Ref {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ref::Source(i) => write!(f, "source {i}"),
            Ref::Target(i) => write!(f, "target {i}"),
            Ref::Region(i) => write!(f, "region {i}"),
            Ref::Piece { index, frame } => {
                let at = match frame {
                    Frame::Local => "local",
                    Frame::Source => "source",
                    Frame::Target => "target",
                };
                write!(f, "piece {index} @{at}")
            }
        }
    }
}

/// `Σ coefficient·volume(ref) + constant`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearExpr {
    pub terms: Vec<(Rational, Ref)>,
    pub constant: Rational,
}

impl LinearExpr {
    pub fn constant(value: Rational) -> Self {
        LinearExpr {
            terms: Vec::new(),
            constant: value,
        }
    }

    pub fn volume_of(coefficient: Rational, r: Ref) -> Self {
        LinearExpr {
            terms: vec![(coefficient, r)],
            constant: Rational::zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// The items exactly tile the container.
    Tiling {
        label: String,
        container: Ref,
        items: Vec<Ref>,
    },
    /// Σ volume(left) = Σ volume(right); volume level only.
    Volume {
        label: String,
        left: Vec<Ref>,
        right: Vec<Ref>,
        note: Option<String>,
    },
    /// All items are pairwise congruent. `witnesses[i]` carries `items[0]`
    /// onto `items[i + 1]`; when empty the verifier searches.
    Congruence {
        label: String,
        items: Vec<Ref>,
        allow_reflection: bool,
        witnesses: Vec<CongruenceWitness>,
    },
    /// volume(scaled) = factor³·volume(base), and `scaled` is congruent to
    /// `base` scaled about the origin by `factor`.
    Scale {
        label: String,
        base: Ref,
        factor: Rational,
        scaled: Ref,
    },
    Arithmetic {
        label: String,
        left: LinearExpr,
        right: LinearExpr,
    },
}

impl Claim {
    pub fn label(&self) -> &str {
        match self {
            Claim::Tiling { label, .. }
            | Claim::Volume { label, .. }
            | Claim::Congruence { label, .. }
            | Claim::Scale { label, .. }
            | Claim::Arithmetic { label, .. } => label,
        }
    }

    pub fn kind(&self) -> ClaimKind {
        match self {
            Claim::Tiling { .. } => ClaimKind::Tiling,
            Claim::Volume { .. } => ClaimKind::Volume,
            Claim::Congruence { .. } => ClaimKind::Congruence,
            Claim::Scale { .. } => ClaimKind::Scale,
            Claim::Arithmetic { .. } => ClaimKind::Arithmetic,
        }
    }

    fn refs(&self) -> Vec<Ref> {
        match self {
            Claim::Tiling {
                container, items, ..
            } => std::iter::once(*container)
                .chain(items.iter().copied())
                .collect(),
            Claim::Volume { left, right, .. } => left.iter().chain(right).copied().collect(),
            Claim::Congruence { items, .. } => items.clone(),
            Claim::Scale { base, scaled, .. } => vec![*base, *scaled],
            Claim::Arithmetic { left, right, .. } => left
                .terms
                .iter()
                .chain(&right.terms)
                .map(|(_, r)| *r)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimKind {
    Tiling,
    Volume,
    Congruence,
    Scale,
    Arithmetic,
    Conservation,
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ClaimKind::Tiling => "tiling",
            ClaimKind::Volume => "volume",
            ClaimKind::Congruence => "congruence",
            ClaimKind::Scale => "scale",
            ClaimKind::Arithmetic => "arithmetic",
            ClaimKind::Conservation => "conservation",
        };
        f.write_str(name)
    }
}

/// The machine form of a dissection argument.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RearrangementCertificate {
    pub name: String,
    pub sources: Vec<ConvexPolytope>,
    pub targets: Vec<ConvexPolytope>,
    pub regions: Vec<Region>,
    pub pieces: Vec<PlacedPiece>,
    pub claims: Vec<Claim>,
    /// Free-form labels (scenario, parameters).
    pub metadata: Vec<(String, String)>,
}

/// Why a tiling check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TilingFailure {
    InvalidMotion {
        piece: usize,
    },
    NotContained {
        piece: usize,
    },
    Overlap {
        first: usize,
        second: usize,
        volume: Rational,
    },
    VolumeMismatch {
        pieces: Rational,
        container: Rational,
    },
}

impl fmt::Display for TilingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TilingFailure::InvalidMotion { piece } => write!(f, "invalid motion on piece {piece}"),
            TilingFailure::NotContained { piece } => {
                write!(f, "piece {piece} is not contained in the container")
            }
            TilingFailure::Overlap {
                first,
                second,
                volume,
            } => write!(f, "pieces {first} and {second} overlap in volume {volume}"),
            TilingFailure::VolumeMismatch { pieces, container } => {
                write!(
                    f,
                    "piece volumes sum to {pieces}, container volume is {container}"
                )
            }
        }
    }
}

impl TilingFailure {
    fn reason(&self) -> &'static str {
        match self {
            TilingFailure::InvalidMotion { .. } => "invalid motion",
            TilingFailure::NotContained { .. } => "containment",
            TilingFailure::Overlap { .. } => "overlap",
            TilingFailure::VolumeMismatch { .. } => "volume sum",
        }
    }
}

/// Exact tiling check for pieces already in world coordinates.
#[allow(clippy::result_large_err)]
pub fn verify_tiling_world(
    container: &ConvexPolytope,
    pieces: &[ConvexPolytope],
) -> Result<(), TilingFailure> {
    if let Some(piece) = pieces.iter().position(|p| !container.contains_polytope(p)) {
        return Err(TilingFailure::NotContained { piece });
    }
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if let Some(common) = pieces[i].intersect(&pieces[j]) {
                return Err(TilingFailure::Overlap {
                    first: i,
                    second: j,
                    volume: common.volume(),
                });
            }
        }
    }
    let total: Rational = pieces.iter().map(ConvexPolytope::volume).sum();
    let container_volume = container.volume();
    if total != container_volume {
        return Err(TilingFailure::VolumeMismatch {
            pieces: total,
            container: container_volume,
        });
    }
    Ok(())
}

/// Checks that the placed pieces tile `container`: each lies inside it, no
/// two share interior, and their volumes sum to the container's.
#[allow(clippy::result_large_err)]
pub fn verify_tiling(
    container: &ConvexPolytope,
    placed: &[(ConvexPolytope, RigidMotion)],
) -> Result<(), TilingFailure> {
    let mut world = Vec::with_capacity(placed.len());
    for (i, (piece, motion)) in placed.iter().enumerate() {
        let moved = piece
            .transform(motion)
            .map_err(|_| TilingFailure::InvalidMotion { piece: i })?;
        world.push(moved);
    }
    verify_tiling_world(container, &world)
}

pub fn volume_equality(left: &[ConvexPolytope], right: &[ConvexPolytope]) -> bool {
    let l: Rational = left.iter().map(ConvexPolytope::volume).sum();
    let r: Rational = right.iter().map(ConvexPolytope::volume).sum();
    l == r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Exact,
    VolumeEquality,
    Verified,
    Failed { reason: String, detail: String },
}

impl Outcome {
    fn failed(reason: impl Into<String>, detail: impl Into<String>) -> Self {
        Outcome::Failed {
            reason: reason.into(),
            detail: detail.into(),
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, Outcome::Failed { .. })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Exact => f.write_str("Exact"),
            Outcome::VolumeEquality => f.write_str("VolumeEquality"),
            Outcome::Verified => f.write_str("Verified"),
            Outcome::Failed { reason, detail } => write!(f, "Failed({reason}: {detail})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimVerdict {
    pub label: String,
    pub kind: ClaimKind,
    pub outcome: Outcome,
}

/// Strongest level a certificate achieved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overall {
    Exact,
    VolumeEquality,
    Failed,
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Overall::Exact => "pass (exact)",
            Overall::VolumeEquality => "pass (volume equality)",
            Overall::Failed => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// One entry per claim, in certificate order.
    pub claims: Vec<ClaimVerdict>,
    /// Global source/target conservation checks.
    pub conservation: Vec<ClaimVerdict>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn overall(&self) -> Overall {
        let all = self.claims.iter().chain(&self.conservation);
        let mut level = Overall::Exact;
        for v in all {
            match v.outcome {
                Outcome::Failed { .. } => return Overall::Failed,
                Outcome::VolumeEquality => level = Overall::VolumeEquality,
                _ => {}
            }
        }
        level
    }

    pub fn passed(&self) -> bool {
        self.overall() != Overall::Failed
    }
}

/// Structural defects that make a certificate meaningless to verify.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

fn malformed(msg: impl Into<String>) -> CertificateError {
    CertificateError::Malformed(msg.into())
}

impl RearrangementCertificate {
    fn check_ref(&self, r: &Ref) -> Result<(), CertificateError> {
        let ok = match *r {
            Ref::Source(i) => i < self.sources.len(),
            Ref::Target(i) => i < self.targets.len(),
            Ref::Region(i) => i < self.regions.len(),
            Ref::Piece { index, frame } => match self.pieces.get(index) {
                None => false,
                Some(p) => match frame {
                    Frame::Local => true,
                    Frame::Source => p.source.is_some(),
                    Frame::Target => p.target.is_some(),
                },
            },
        };
        if ok {
            Ok(())
        } else {
            Err(malformed(format!("unresolvable reference: {r}")))
        }
    }

    /// Index and reference checks; everything geometric is left to verification.
    pub fn check_structure(&self) -> Result<(), CertificateError> {
        for (i, p) in self.pieces.iter().enumerate() {
            if let Some(s) = &p.source {
                if s.index >= self.sources.len() {
                    return Err(malformed(format!(
                        "piece {i} names missing source {}",
                        s.index
                    )));
                }
            }
            if let Some(t) = &p.target {
                if t.index >= self.targets.len() {
                    return Err(malformed(format!(
                        "piece {i} names missing target {}",
                        t.index
                    )));
                }
            }
        }
        for (i, r) in self.regions.iter().enumerate() {
            if let Some(w) = r.within {
                if w >= self.targets.len() {
                    return Err(malformed(format!(
                        "region {i} lies within missing target {w}"
                    )));
                }
            }
        }
        for claim in &self.claims {
            for r in claim.refs() {
                self.check_ref(&r)?;
            }
            match claim {
                Claim::Congruence {
                    items, witnesses, ..
                } => {
                    if items.len() < 2 {
                        return Err(malformed(format!(
                            "congruence claim {:?} needs two items",
                            claim.label()
                        )));
                    }
                    if !witnesses.is_empty() && witnesses.len() + 1 != items.len() {
                        return Err(malformed(format!(
                            "congruence claim {:?} has {} witnesses for {} items",
                            claim.label(),
                            witnesses.len(),
                            items.len()
                        )));
                    }
                }
                Claim::Tiling {
                    container: Ref::Piece { .. },
                    ..
                } => {
                    return Err(malformed(format!(
                        "tiling claim {:?} has a piece as container",
                        claim.label()
                    )));
                }
                _ => {}
            }
        }
        self.tiling_children()?;
        Ok(())
    }

    /// Container → items for region containers, rejecting cyclic nesting.
    fn tiling_children(&self) -> Result<HashMap<Ref, Vec<Ref>>, CertificateError> {
        let mut children: HashMap<Ref, Vec<Ref>> = HashMap::new();
        for claim in &self.claims {
            if let Claim::Tiling {
                container: c @ Ref::Region(_),
                items,
                ..
            } = claim
            {
                if children.insert(*c, items.clone()).is_some() {
                    return Err(malformed(format!(
                        "{c} is the container of two tiling claims"
                    )));
                }
            }
        }
        fn visit(
            node: Ref,
            children: &HashMap<Ref, Vec<Ref>>,
            stack: &mut BTreeSet<Ref>,
        ) -> Result<(), CertificateError> {
            if !stack.insert(node) {
                return Err(malformed(format!(
                    "tiling claims nest cyclically through {node}"
                )));
            }
            if let Some(items) = children.get(&node) {
                for item in items {
                    visit(*item, children, stack)?;
                }
            }
            stack.remove(&node);
            Ok(())
        }
        for node in children.keys() {
            visit(*node, &children, &mut BTreeSet::new())?;
        }
        Ok(children)
    }

    /// World-frame shape of a reference.
    pub fn resolve(&self, r: &Ref) -> Result<ConvexPolytope, Outcome> {
        match *r {
            Ref::Source(i) => Ok(self.sources[i].clone()),
            Ref::Target(i) => Ok(self.targets[i].clone()),
            Ref::Region(i) => Ok(self.regions[i].polytope.clone()),
            Ref::Piece { index, frame } => {
                let piece = &self.pieces[index];
                let placement = match frame {
                    Frame::Local => return Ok(piece.piece.clone()),
                    Frame::Source => piece.source.as_ref(),
                    Frame::Target => piece.target.as_ref(),
                };
                let placement = placement.expect("checked by check_structure");
                piece.piece.transform(&placement.motion).map_err(|_| {
                    Outcome::failed(
                        "invalid motion",
                        format!("placement of piece {index} is not an isometry"),
                    )
                })
            }
        }
    }
}

/// Verification state: the certificate plus a cache of world-frame shapes,
/// since tiling claims and conservation checks revisit the same placements.
struct Checker<'a> {
    cert: &'a RearrangementCertificate,
    shapes: RefCell<HashMap<Ref, Result<ConvexPolytope, Outcome>>>,
}

impl<'a> Checker<'a> {
    fn new(cert: &'a RearrangementCertificate) -> Self {
        Checker {
            cert,
            shapes: RefCell::new(HashMap::new()),
        }
    }

    fn resolve(&self, r: &Ref) -> Result<ConvexPolytope, Outcome> {
        if let Some(hit) = self.shapes.borrow().get(r) {
            return hit.clone();
        }
        let shape = self.cert.resolve(r);
        self.shapes.borrow_mut().insert(*r, shape.clone());
        shape
    }

    fn volume_of(&self, r: &Ref) -> Result<Rational, Outcome> {
        match *r {
            // volumes are motion-invariant, so an invalid placement does not matter here
            Ref::Piece { index, .. } => Ok(self.cert.pieces[index].piece.volume()),
            _ => Ok(self.resolve(r)?.volume()),
        }
    }

    fn evaluate(&self, e: &LinearExpr) -> Result<Rational, Outcome> {
        let mut total = e.constant.clone();
        for (c, r) in &e.terms {
            total += c * self.volume_of(r)?;
        }
        Ok(total)
    }

    fn flatten(&self, items: &[Ref], children: &HashMap<Ref, Vec<Ref>>, out: &mut Vec<Ref>) {
        for item in items {
            match children.get(item) {
                Some(sub) => self.flatten(sub, children, out),
                None => out.push(*item),
            }
        }
    }

    fn verify_claim(&self, claim: &Claim, children: &HashMap<Ref, Vec<Ref>>) -> Outcome {
        match claim {
            Claim::Tiling {
                container, items, ..
            } => {
                let mut leaves = Vec::new();
                self.flatten(items, children, &mut leaves);
                self.tile(container, &leaves)
            }
            Claim::Volume { left, right, .. } => {
                let sum = |refs: &[Ref]| -> Result<Rational, Outcome> {
                    refs.iter().map(|r| self.volume_of(r)).sum()
                };
                match (sum(left), sum(right)) {
                    (Ok(l), Ok(r)) if l == r => Outcome::VolumeEquality,
                    (Ok(l), Ok(r)) => Outcome::failed("volume inequality", format!("{l} != {r}")),
                    (Err(e), _) | (_, Err(e)) => e,
                }
            }
            Claim::Congruence {
                items,
                allow_reflection,
                witnesses,
                ..
            } => self.congruent(items, *allow_reflection, witnesses),
            Claim::Scale {
                base,
                factor,
                scaled,
                ..
            } => {
                let (p, q) = match (self.resolve(base), self.resolve(scaled)) {
                    (Ok(p), Ok(q)) => (p, q),
                    (Err(e), _) | (_, Err(e)) => return e,
                };
                let expected = factor.cube() * p.volume();
                if q.volume() != expected {
                    return Outcome::failed(
                        "scale",
                        format!("volume {} != {}^3 * {}", q.volume(), factor, p.volume()),
                    );
                }
                match p.scale(factor) {
                    Ok(grown) if find_congruence(&grown, &q, true).is_some() => Outcome::Verified,
                    Ok(_) => Outcome::failed(
                        "scale",
                        "scaled solid is not congruent to the claimed image",
                    ),
                    Err(e) => Outcome::failed("scale", e.to_string()),
                }
            }
            Claim::Arithmetic { left, right, .. } => {
                match (self.evaluate(left), self.evaluate(right)) {
                    (Ok(l), Ok(r)) if l == r => Outcome::Verified,
                    (Ok(l), Ok(r)) => Outcome::failed("arithmetic", format!("{l} != {r}")),
                    (Err(e), _) | (_, Err(e)) => e,
                }
            }
        }
    }

    fn tile(&self, container: &Ref, items: &[Ref]) -> Outcome {
        let container = match self.resolve(container) {
            Ok(c) => c,
            Err(e) => return e,
        };
        let mut world = Vec::with_capacity(items.len());
        for item in items {
            match self.resolve(item) {
                Ok(p) => world.push(p),
                Err(e) => return e,
            }
        }
        match verify_tiling_world(&container, &world) {
            Ok(()) => Outcome::Exact,
            Err(failure) => {
                let detail = match &failure {
                    TilingFailure::NotContained { piece } => {
                        format!("{} is outside the container", items[*piece])
                    }
                    TilingFailure::Overlap {
                        first,
                        second,
                        volume,
                    } => format!(
                        "{} and {} overlap in volume {volume}",
                        items[*first], items[*second]
                    ),
                    other => other.to_string(),
                };
                Outcome::failed(failure.reason(), detail)
            }
        }
    }

    fn congruent(
        &self,
        items: &[Ref],
        allow_reflection: bool,
        witnesses: &[CongruenceWitness],
    ) -> Outcome {
        let mut shapes = Vec::with_capacity(items.len());
        for item in items {
            match self.resolve(item) {
                Ok(p) => shapes.push(p),
                Err(e) => return e,
            }
        }
        let first = &shapes[0];
        for (k, other) in shapes.iter().enumerate().skip(1) {
            let ok = match witnesses.get(k - 1) {
                Some(w) => {
                    (allow_reflection || w.motion.is_proper()) && verify_witness(first, other, w)
                }
                None => find_congruence(first, other, allow_reflection).is_some(),
            };
            if !ok {
                return Outcome::failed(
                    "not congruent",
                    format!("{} is not congruent to {}", items[0], items[k]),
                );
            }
        }
        Outcome::Verified
    }

    /// Sources and targets must each be exactly tiled by what is assigned to them.
    fn conservation(&self) -> Vec<ClaimVerdict> {
        let mut volume_listed: BTreeSet<Ref> = BTreeSet::new();
        for claim in &self.cert.claims {
            if let Claim::Volume { left, right, .. } = claim {
                for r in left.iter().chain(right) {
                    volume_listed.insert(match *r {
                        Ref::Piece { index, .. } => Ref::piece_local(index),
                        other => other,
                    });
                }
            }
        }
        let mut out = Vec::new();
        let unaccounted: Vec<usize> = self
            .cert
            .pieces
            .iter()
            .enumerate()
            .filter(|(i, p)| p.target.is_none() && !volume_listed.contains(&Ref::piece_local(*i)))
            .map(|(i, _)| i)
            .collect();
        if !self.cert.targets.is_empty() && !unaccounted.is_empty() {
            out.push(ClaimVerdict {
                label: "every piece reaches a target or a volume claim".into(),
                kind: ClaimKind::Conservation,
                outcome: Outcome::failed(
                    "conservation",
                    format!("pieces {unaccounted:?} are unaccounted for"),
                ),
            });
        }

        for (i, _) in self.cert.sources.iter().enumerate() {
            let items: Vec<Ref> = self
                .cert
                .pieces
                .iter()
                .enumerate()
                .filter(|(_, p)| p.source.as_ref().is_some_and(|s| s.index == i))
                .map(|(k, _)| Ref::piece_at_source(k))
                .collect();
            if items.is_empty() {
                continue;
            }
            out.push(self.conservation_entry(
                format!("source {i} is tiled by its pieces"),
                Ref::Source(i),
                &items,
            ));
        }
        for (i, _) in self.cert.targets.iter().enumerate() {
            let mut items: Vec<Ref> = self
                .cert
                .pieces
                .iter()
                .enumerate()
                .filter(|(_, p)| p.target.as_ref().is_some_and(|t| t.index == i))
                .map(|(k, _)| Ref::piece_at_target(k))
                .collect();
            items.extend(
                self.cert
                    .regions
                    .iter()
                    .enumerate()
                    .filter(|(k, r)| {
                        r.within == Some(i) && volume_listed.contains(&Ref::Region(*k))
                    })
                    .map(|(k, _)| Ref::Region(k)),
            );
            if items.is_empty() {
                continue;
            }
            out.push(self.conservation_entry(
                format!("target {i} is tiled by its pieces and open slots"),
                Ref::Target(i),
                &items,
            ));
        }
        out
    }

    fn conservation_entry(&self, label: String, container: Ref, items: &[Ref]) -> ClaimVerdict {
        let outcome = match self.tile(&container, items) {
            Outcome::Failed { reason, detail } => {
                Outcome::failed("conservation", format!("{reason}: {detail}"))
            }
            other => other,
        };
        ClaimVerdict {
            label,
            kind: ClaimKind::Conservation,
            outcome,
        }
    }
}

/// Evaluates every claim and the global conservation checks.
pub fn verify_certificate(cert: &RearrangementCertificate) -> Result<Verdict, CertificateError> {
    cert.check_structure()?;
    let children = cert.tiling_children()?;
    let checker = Checker::new(cert);
    let mut notes = Vec::new();
    let claims = cert
        .claims
        .iter()
        .map(|claim| {
            let outcome = checker.verify_claim(claim, &children);
            if let (Claim::Volume { note: Some(n), .. }, Outcome::VolumeEquality) =
                (claim, &outcome)
            {
                notes.push(format!("{}: {n}", claim.label()));
            }
            ClaimVerdict {
                label: claim.label().to_string(),
                kind: claim.kind(),
                outcome,
            }
        })
        .collect();
    Ok(Verdict {
        claims,
        conservation: checker.conservation(),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_solid, SolidSpec};
    use crate::geometry::{int, Vector3};

    fn cube(a: i64) -> ConvexPolytope {
        make_solid(&SolidSpec::cuboid(int(a), int(a), int(a))).unwrap()
    }

    fn qiandu(a: i64) -> ConvexPolytope {
        make_solid(&SolidSpec::qiandu(int(a), int(a), int(a))).unwrap()
    }

    fn half_turn() -> RigidMotion {
        // (x, y, z) -> (x, 1 - y, 1 - z)
        RigidMotion::signed_permutation([0, 1, 2], [1, -1, -1])
            .then_translate(&Vector3::new(0, 1, 1))
    }

    #[test]
    fn cube_from_two_qiandu() {
        let placed = vec![
            (qiandu(1), RigidMotion::identity()),
            (qiandu(1), half_turn()),
        ];
        assert_eq!(verify_tiling(&cube(1), &placed), Ok(()));
        // order independence
        let reversed: Vec<_> = placed.into_iter().rev().collect();
        assert_eq!(verify_tiling(&cube(1), &reversed), Ok(()));
    }

    #[test]
    fn overlapping_qiandu_fail() {
        let placed = vec![
            (qiandu(1), RigidMotion::identity()),
            (qiandu(1), RigidMotion::identity()),
        ];
        assert!(matches!(
            verify_tiling(&cube(1), &placed),
            Err(TilingFailure::Overlap {
                first: 0,
                second: 1,
                ..
            })
        ));
    }

    #[test]
    fn missing_piece_is_a_volume_mismatch() {
        let placed = vec![(qiandu(1), RigidMotion::identity())];
        assert!(matches!(
            verify_tiling(&cube(1), &placed),
            Err(TilingFailure::VolumeMismatch { .. })
        ));
    }

    #[test]
    fn outside_piece_is_reported() {
        let placed = vec![(qiandu(1), RigidMotion::translation(Vector3::new(1, 0, 0)))];
        assert_eq!(
            verify_tiling(&cube(1), &placed),
            Err(TilingFailure::NotContained { piece: 0 })
        );
    }

    #[test]
    fn volume_equality_cases() {
        assert!(!volume_equality(&[cube(1)], &[cube(2)]));
        assert!(volume_equality(&[cube(2)], &vec![cube(1); 8]));
    }

    #[test]
    fn structural_errors_are_distinct_from_failures() {
        let cert = RearrangementCertificate {
            sources: vec![cube(1)],
            claims: vec![Claim::Tiling {
                label: "bad".into(),
                container: Ref::Source(3),
                items: vec![],
            }],
            ..Default::default()
        };
        assert!(matches!(
            verify_certificate(&cert),
            Err(CertificateError::Malformed(_))
        ));
    }
}
