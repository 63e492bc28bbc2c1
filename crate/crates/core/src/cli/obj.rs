//! Wavefront OBJ export. Decimal coordinates are for viewing only; each
//! vertex is preceded by a comment holding its exact value.

use std::fmt::Write;

use crate::dissection::RearrangementCertificate;
use crate::polytope::ConvexPolytope;

pub const DEFAULT_DIGITS: usize = 12;

fn object_name(label: &str, fallback: &str) -> String {
    let name: String = label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "-_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect();
    if name.is_empty() {
        fallback.to_string()
    } else {
        name
    }
}

/// Renders named polytopes as OBJ objects with fan-triangulated faces.
pub fn render_obj(objects: &[(String, ConvexPolytope)], digits: usize) -> String {
    let mut out = String::from("# frusta export\n");
    let mut base = 1usize;
    for (name, p) in objects {
        writeln!(out, "o {name}").unwrap();
        for v in p.vertices() {
            let [x, y, z] = v.coords();
            writeln!(out, "# exact: {x} {y} {z}").unwrap();
            writeln!(
                out,
                "v {} {} {}",
                x.to_significant(digits),
                y.to_significant(digits),
                z.to_significant(digits)
            )
            .unwrap();
        }
        for cycle in p.face_cycles() {
            for k in 1..cycle.len() - 1 {
                writeln!(
                    out,
                    "f {} {} {}",
                    base + cycle[0],
                    base + cycle[k],
                    base + cycle[k + 1]
                )
                .unwrap();
            }
        }
        base += p.vertices().len();
    }
    out
}

/// One object per piece, at its source placement when it has one, else at
/// its target placement, else in its local frame. A certificate without
/// pieces exports its solids instead.
pub fn certificate_objects(cert: &RearrangementCertificate) -> Vec<(String, ConvexPolytope)> {
    if cert.pieces.is_empty() {
        let solids = cert
            .sources
            .iter()
            .chain(&cert.targets)
            .chain(cert.regions.iter().map(|r| &r.polytope));
        return solids
            .enumerate()
            .map(|(i, p)| (object_name(p.label(), &format!("solid_{i}")), p.clone()))
            .collect();
    }
    cert.pieces
        .iter()
        .enumerate()
        .map(|(i, piece)| {
            let placed = piece
                .source
                .iter()
                .chain(&piece.target)
                .find_map(|pl| piece.piece.transform(&pl.motion).ok())
                .unwrap_or_else(|| piece.piece.clone());
            (
                object_name(
                    &format!("{i}_{}", piece.piece.label()),
                    &format!("piece_{i}"),
                ),
                placed,
            )
        })
        .collect()
}

pub fn solid_objects(p: &ConvexPolytope) -> Vec<(String, ConvexPolytope)> {
    vec![(object_name(p.label(), "solid"), p.clone())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{liu_hui_three_copies, make_solid, SolidSpec};
    use crate::geometry::int;

    fn count(text: &str, prefix: &str) -> usize {
        text.lines().filter(|l| l.starts_with(prefix)).count()
    }

    #[test]
    fn frustum_export() {
        let p = make_solid(&SolidSpec::symmetric_frustum(int(4), int(2), int(6))).unwrap();
        let text = render_obj(&solid_objects(&p), DEFAULT_DIGITS);
        assert_eq!(count(&text, "v "), 8);
        assert_eq!(count(&text, "f "), 12);
        assert_eq!(count(&text, "# exact: "), 8);
        assert_eq!(count(&text, "o "), 1);
    }

    #[test]
    fn cube_coordinates_are_plain() {
        let p = make_solid(&SolidSpec::cube(int(1))).unwrap();
        let text = render_obj(&solid_objects(&p), DEFAULT_DIGITS);
        for line in text.lines().filter(|l| l.starts_with("v ")) {
            assert!(line[2..].split(' ').all(|c| c == "0" || c == "1"), "{line}");
        }
    }

    #[test]
    fn liu_hui_has_27_pieces() {
        let cert = liu_hui_three_copies(&int(3), &int(1), &int(1)).unwrap();
        let text = render_obj(&certificate_objects(&cert), 6);
        assert_eq!(count(&text, "o "), 27);
        let max_index = text
            .lines()
            .filter(|l| l.starts_with("f "))
            .flat_map(|l| l[2..].split(' ').map(|i| i.parse::<usize>().unwrap()))
            .max()
            .unwrap();
        assert_eq!(max_index, count(&text, "v "));
    }
}
