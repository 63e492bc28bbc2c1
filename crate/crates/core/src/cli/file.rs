//! JSON certificate files.
//!
//! Solids carry a role (`source`, `target` or `region`) and are referred to
//! by string id. Rationals are written as `"p/q"` strings. Solid poses must be
//! valid isometries (a bad pose is a parse error); piece motions are stored
//! as written and checked by the verifier.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{make_solid, SolidSpec};
use crate::congruence::CongruenceWitness;
use crate::dissection::{
    Claim, Frame, LinearExpr, PlacedPiece, Placement, RearrangementCertificate, Ref, Region,
};
use crate::geometry::{Point3, Rational, RigidMotion};
use crate::polytope::{build_polytope, ConvexPolytope};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported certificate version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FileError {
    FileError::Invalid(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub version: u32,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub metadata: Vec<(String, String)>,
    pub solids: Vec<SolidRecord>,
    pub pieces: Vec<PieceRecord>,
    pub claims: Vec<ClaimRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Source,
    Target,
    Region,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeLiteral {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Shape {
    Polytope(PolytopeLiteral),
    Solid(SolidSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolidRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub role: Role,
    /// For regions: id of the target the region lies inside.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within: Option<String>,
    pub shape: Shape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pose: Option<RigidMotion>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementRecord {
    pub solid: String,
    pub motion: RigidMotion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub shape: Shape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<PlacementRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<PlacementRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum At {
    Local,
    Source,
    Target,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RefRecord {
    Solid { solid: String },
    Piece { piece: String, at: At },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub coefficient: Rational,
    #[serde(rename = "volume")]
    pub of: RefRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExprRecord {
    #[serde(default)]
    pub terms: Vec<TermRecord>,
    #[serde(default)]
    pub constant: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClaimRecord {
    Tiling {
        label: String,
        container: RefRecord,
        items: Vec<RefRecord>,
    },
    Volume {
        label: String,
        left: Vec<RefRecord>,
        right: Vec<RefRecord>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    Congruence {
        label: String,
        items: Vec<RefRecord>,
        allow_reflection: bool,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        witnesses: Vec<CongruenceWitness>,
    },
    Scale {
        label: String,
        base: RefRecord,
        factor: Rational,
        scaled: RefRecord,
    },
    Arithmetic {
        label: String,
        left: ExprRecord,
        right: ExprRecord,
    },
}

fn literal(p: &ConvexPolytope) -> Shape {
    Shape::Polytope(PolytopeLiteral {
        vertices: p.vertices().to_vec(),
        faces: p.face_cycles(),
    })
}

fn solid_id(role: Role, i: usize) -> String {
    match role {
        Role::Source => format!("source-{i}"),
        Role::Target => format!("target-{i}"),
        Role::Region => format!("region-{i}"),
    }
}

fn piece_id(i: usize) -> String {
    format!("piece-{i}")
}

fn ref_record(r: &Ref) -> RefRecord {
    match *r {
        Ref::Source(i) => RefRecord::Solid {
            solid: solid_id(Role::Source, i),
        },
        Ref::Target(i) => RefRecord::Solid {
            solid: solid_id(Role::Target, i),
        },
        Ref::Region(i) => RefRecord::Solid {
            solid: solid_id(Role::Region, i),
        },
        Ref::Piece { index, frame } => RefRecord::Piece {
            piece: piece_id(index),
            at: match frame {
                Frame::Local => At::Local,
                Frame::Source => At::Source,
                Frame::Target => At::Target,
            },
        },
    }
}

fn expr_record(e: &LinearExpr) -> ExprRecord {
    ExprRecord {
        terms: e
            .terms
            .iter()
            .map(|(c, r)| TermRecord {
                coefficient: c.clone(),
                of: ref_record(r),
            })
            .collect(),
        constant: e.constant.clone(),
    }
}

impl CertificateFile {
    pub fn from_certificate(cert: &RearrangementCertificate) -> CertificateFile {
        let mut solids = Vec::new();
        let mut push = |role: Role, i: usize, p: &ConvexPolytope, within: Option<usize>| {
            solids.push(SolidRecord {
                id: solid_id(role, i),
                label: Some(p.label().to_string()),
                role,
                within: within.map(|t| solid_id(Role::Target, t)),
                shape: literal(p),
                pose: None,
            });
        };
        for (i, p) in cert.sources.iter().enumerate() {
            push(Role::Source, i, p, None);
        }
        for (i, p) in cert.targets.iter().enumerate() {
            push(Role::Target, i, p, None);
        }
        for (i, r) in cert.regions.iter().enumerate() {
            push(Role::Region, i, &r.polytope, r.within);
        }
        let placement = |role: Role, p: &Option<Placement>| {
            p.as_ref().map(|p| PlacementRecord {
                solid: solid_id(role, p.index),
                motion: p.motion.clone(),
            })
        };
        let pieces = cert
            .pieces
            .iter()
            .enumerate()
            .map(|(i, p)| PieceRecord {
                id: piece_id(i),
                label: Some(p.piece.label().to_string()),
                shape: literal(&p.piece),
                source: placement(Role::Source, &p.source),
                target: placement(Role::Target, &p.target),
            })
            .collect();
        let refs = |rs: &[Ref]| rs.iter().map(ref_record).collect::<Vec<_>>();
        let claims = cert
            .claims
            .iter()
            .map(|c| match c {
                Claim::Tiling {
                    label,
                    container,
                    items,
                } => ClaimRecord::Tiling {
                    label: label.clone(),
                    container: ref_record(container),
                    items: refs(items),
                },
                Claim::Volume {
                    label,
                    left,
                    right,
                    note,
                } => ClaimRecord::Volume {
                    label: label.clone(),
                    left: refs(left),
                    right: refs(right),
                    note: note.clone(),
                },
                Claim::Congruence {
                    label,
                    items,
                    allow_reflection,
                    witnesses,
                } => ClaimRecord::Congruence {
                    label: label.clone(),
                    items: refs(items),
                    allow_reflection: *allow_reflection,
                    witnesses: witnesses.clone(),
                },
                Claim::Scale {
                    label,
                    base,
                    factor,
                    scaled,
                } => ClaimRecord::Scale {
                    label: label.clone(),
                    base: ref_record(base),
                    factor: factor.clone(),
                    scaled: ref_record(scaled),
                },
                Claim::Arithmetic { label, left, right } => ClaimRecord::Arithmetic {
                    label: label.clone(),
                    left: expr_record(left),
                    right: expr_record(right),
                },
            })
            .collect();
        CertificateFile {
            version: FORMAT_VERSION,
            name: cert.name.clone(),
            metadata: cert.metadata.clone(),
            solids,
            pieces,
            claims,
        }
    }

    pub fn to_certificate(&self) -> Result<RearrangementCertificate, FileError> {
        if self.version != FORMAT_VERSION {
            return Err(FileError::Version(self.version));
        }
        let mut ids: HashMap<&str, (Role, usize)> = HashMap::new();
        let mut counts = [0usize; 3];
        for s in &self.solids {
            let slot = &mut counts[s.role as usize];
            if ids.insert(&s.id, (s.role, *slot)).is_some() {
                return Err(invalid(format!("duplicate solid id {:?}", s.id)));
            }
            *slot += 1;
        }
        let mut piece_ids: HashMap<&str, usize> = HashMap::new();
        for (i, p) in self.pieces.iter().enumerate() {
            if ids.contains_key(p.id.as_str()) || piece_ids.insert(&p.id, i).is_some() {
                return Err(invalid(format!("duplicate piece id {:?}", p.id)));
            }
        }
        let lookup = |id: &str, want: Option<Role>| -> Result<usize, FileError> {
            match ids.get(id) {
                Some((role, i)) if want.is_none_or(|w| w == *role) => Ok(*i),
                Some((role, _)) => Err(invalid(format!(
                    "solid {id:?} is a {role:?}, expected {:?}",
                    want.unwrap()
                ))),
                None => Err(invalid(format!("unknown solid id {id:?}"))),
            }
        };

        let mut cert = RearrangementCertificate {
            name: self.name.clone(),
            metadata: self.metadata.clone(),
            ..Default::default()
        };
        for s in &self.solids {
            let mut polytope = shape_polytope(&s.shape, s.label.as_deref(), &s.id)?;
            if let Some(pose) = &s.pose {
                polytope = polytope
                    .transform(pose)
                    .map_err(|e| invalid(format!("solid {:?}: pose {e}", s.id)))?;
            }
            match s.role {
                Role::Source => cert.sources.push(polytope),
                Role::Target => cert.targets.push(polytope),
                Role::Region => {
                    let within = s
                        .within
                        .as_deref()
                        .map(|t| lookup(t, Some(Role::Target)))
                        .transpose()?;
                    cert.regions.push(Region { polytope, within });
                }
            }
            if s.within.is_some() && s.role != Role::Region {
                return Err(invalid(format!(
                    "solid {:?}: only regions may have `within`",
                    s.id
                )));
            }
        }
        for p in &self.pieces {
            let placement = |rec: &Option<PlacementRecord>,
                             role: Role|
             -> Result<Option<Placement>, FileError> {
                rec.as_ref()
                    .map(|r| {
                        Ok(Placement::new(
                            lookup(&r.solid, Some(role))?,
                            r.motion.clone(),
                        ))
                    })
                    .transpose()
            };
            cert.pieces.push(PlacedPiece {
                piece: shape_polytope(&p.shape, p.label.as_deref(), &p.id)?,
                source: placement(&p.source, Role::Source)?,
                target: placement(&p.target, Role::Target)?,
            });
        }

        let resolve = |r: &RefRecord| -> Result<Ref, FileError> {
            match r {
                RefRecord::Solid { solid } => {
                    let (role, i) = *ids
                        .get(solid.as_str())
                        .ok_or_else(|| invalid(format!("unknown solid id {solid:?}")))?;
                    Ok(match role {
                        Role::Source => Ref::Source(i),
                        Role::Target => Ref::Target(i),
                        Role::Region => Ref::Region(i),
                    })
                }
                RefRecord::Piece { piece, at } => {
                    let index = *piece_ids
                        .get(piece.as_str())
                        .ok_or_else(|| invalid(format!("unknown piece id {piece:?}")))?;
                    let frame = match at {
                        At::Local => Frame::Local,
                        At::Source => Frame::Source,
                        At::Target => Frame::Target,
                    };
                    Ok(Ref::Piece { index, frame })
                }
            }
        };
        let refs = |rs: &[RefRecord]| rs.iter().map(resolve).collect::<Result<Vec<_>, _>>();
        let expr = |e: &ExprRecord| -> Result<LinearExpr, FileError> {
            Ok(LinearExpr {
                terms: e
                    .terms
                    .iter()
                    .map(|t| Ok((t.coefficient.clone(), resolve(&t.of)?)))
                    .collect::<Result<_, FileError>>()?,
                constant: e.constant.clone(),
            })
        };
        for c in &self.claims {
            cert.claims.push(match c {
                ClaimRecord::Tiling {
                    label,
                    container,
                    items,
                } => Claim::Tiling {
                    label: label.clone(),
                    container: resolve(container)?,
                    items: refs(items)?,
                },
                ClaimRecord::Volume {
                    label,
                    left,
                    right,
                    note,
                } => Claim::Volume {
                    label: label.clone(),
                    left: refs(left)?,
                    right: refs(right)?,
                    note: note.clone(),
                },
                ClaimRecord::Congruence {
                    label,
                    items,
                    allow_reflection,
                    witnesses,
                } => Claim::Congruence {
                    label: label.clone(),
                    items: refs(items)?,
                    allow_reflection: *allow_reflection,
                    witnesses: witnesses.clone(),
                },
                ClaimRecord::Scale {
                    label,
                    base,
                    factor,
                    scaled,
                } => Claim::Scale {
                    label: label.clone(),
                    base: resolve(base)?,
                    factor: factor.clone(),
                    scaled: resolve(scaled)?,
                },
                ClaimRecord::Arithmetic { label, left, right } => Claim::Arithmetic {
                    label: label.clone(),
                    left: expr(left)?,
                    right: expr(right)?,
                },
            });
        }
        cert.check_structure().map_err(|e| invalid(e.to_string()))?;
        Ok(cert)
    }
}

fn shape_polytope(
    shape: &Shape,
    label: Option<&str>,
    id: &str,
) -> Result<ConvexPolytope, FileError> {
    let p = match shape {
        Shape::Polytope(lit) => {
            build_polytope(lit.vertices.clone(), lit.faces.clone(), label.unwrap_or(id))
                .map_err(|e| invalid(format!("{id:?}: {e}")))?
        }
        Shape::Solid(spec) => {
            let p = make_solid(spec).map_err(|e| invalid(format!("{id:?}: {e}")))?;
            match label {
                Some(l) => p.with_label(l),
                None => p,
            }
        }
    };
    Ok(p)
}

pub fn render_certificate(cert: &RearrangementCertificate) -> String {
    let file = CertificateFile::from_certificate(cert);
    let mut text = serde_json::to_string_pretty(&file).expect("certificate serializes");
    text.push('\n');
    text
}

pub fn parse_certificate(text: &str) -> Result<RearrangementCertificate, FileError> {
    let file: CertificateFile = serde_json::from_str(text)?;
    file.to_certificate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{liu_hui_three_copies, shutler_certificate};
    use crate::dissection::verify_certificate;
    use crate::geometry::int;

    #[test]
    fn round_trip_is_identical() {
        for cert in [
            liu_hui_three_copies(&int(3), &int(1), &int(1)).unwrap(),
            shutler_certificate(&int(1), &int(2)).unwrap(),
        ] {
            let text = render_certificate(&cert);
            let back = parse_certificate(&text).unwrap();
            assert_eq!(back, cert);
            assert_eq!(render_certificate(&back), text);
        }
    }

    #[test]
    fn rejects_unknown_fields_and_versions() {
        let cert = liu_hui_three_copies(&int(3), &int(1), &int(1)).unwrap();
        let text = render_certificate(&cert);
        let extra = text.replacen("\"version\": 1,", "\"version\": 1, \"bogus\": 3,", 1);
        assert!(matches!(parse_certificate(&extra), Err(FileError::Json(_))));
        let v2 = text.replacen("\"version\": 1,", "\"version\": 2,", 1);
        assert!(matches!(parse_certificate(&v2), Err(FileError::Version(2))));
        assert!(parse_certificate(&text[..text.len() / 2]).is_err());
    }

    #[test]
    fn hand_written_solids() {
        let text = r#"{
            "version": 1,
            "solids": [
                {"id": "cube", "role": "source", "shape": {"solid": {"kind": "box", "params": ["1", "1", "1"]}}},
                {"id": "moved", "role": "region", "shape": {"solid": {"kind": "box", "params": ["1", "1", "1"]}},
                 "pose": {"matrix": [["1","0","0"],["0","1","0"],["0","0","1"]], "translation": ["5","0","0"], "orientation": 1}}
            ],
            "pieces": [
                {"id": "p", "shape": {"solid": {"kind": "qiandu", "params": ["1", "1", "1"]}},
                 "source": {"solid": "cube", "motion": {"matrix": [["1","0","0"],["0","1","0"],["0","0","1"]], "translation": ["0","0","0"], "orientation": 1}}},
                {"id": "q", "shape": {"solid": {"kind": "qiandu", "params": ["1", "1", "1"]}},
                 "source": {"solid": "cube", "motion": {"matrix": [["1","0","0"],["0","-1","0"],["0","0","-1"]], "translation": ["0","1","1"], "orientation": 1}}}
            ],
            "claims": [
                {"type": "tiling", "label": "cube = 2 prisms", "container": {"solid": "cube"},
                 "items": [{"piece": "p", "at": "source"}, {"piece": "q", "at": "source"}]},
                {"type": "arithmetic", "label": "moved cube", "left": {"terms": [{"coefficient": "1", "volume": {"solid": "moved"}}]}, "right": {"constant": "1"}}
            ]
        }"#;
        let cert = parse_certificate(text).unwrap();
        assert!(verify_certificate(&cert).unwrap().passed());
        let bad_pose = text.replacen(
            r#""translation": ["5","0","0"], "orientation": 1"#,
            r#""translation": ["5","0","0"], "orientation": -1"#,
            1,
        );
        assert!(matches!(
            parse_certificate(&bad_pose),
            Err(FileError::Invalid(_))
        ));
        let dangling = text.replacen(r#"{"solid": "moved"}"#, r#"{"solid": "nowhere"}"#, 1);
        assert!(parse_certificate(&dangling)
            .unwrap_err()
            .to_string()
            .contains("nowhere"));
    }
}
