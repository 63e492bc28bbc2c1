//! Human- and machine-readable reports: certificate verdicts and the golden
//! reproduction table.

use std::fmt::Write;

use serde::Serialize;

use crate::catalog::{
    box_three_pyramids, liu_hui_three_copies, make_solid, nine_part_frustum, shutler_certificate,
    truncated_juel_check, SolidSpec,
};
use crate::dehn::{compare_invariants, dehn_invariant};
use crate::dissection::{
    verify_certificate, ClaimVerdict, Outcome, RearrangementCertificate, Verdict,
};
use crate::formulas::{evaluate_formula, moscow_trace, nine_chapters_trace, FormulaId};
use crate::geometry::{int, rat, Rational};

#[derive(Debug, Clone, Serialize)]
pub struct ClaimLine {
    pub kind: String,
    pub label: String,
    pub outcome: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub overall: String,
    pub passed: bool,
    pub claims: Vec<ClaimLine>,
    pub conservation: Vec<ClaimLine>,
    pub notes: Vec<String>,
}

fn line(v: &ClaimVerdict) -> ClaimLine {
    ClaimLine {
        kind: v.kind.to_string(),
        label: v.label.clone(),
        outcome: v.outcome.to_string(),
    }
}

impl VerificationReport {
    pub fn new(cert: &RearrangementCertificate, verdict: &Verdict) -> Self {
        VerificationReport {
            scenario: cert.name.clone(),
            overall: verdict.overall().to_string(),
            passed: verdict.passed(),
            claims: verdict.claims.iter().map(line).collect(),
            conservation: verdict.conservation.iter().map(line).collect(),
            notes: verdict.notes.clone(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let name = if self.scenario.is_empty() {
            "certificate"
        } else {
            &self.scenario
        };
        writeln!(out, "{name}").unwrap();
        for c in self.claims.iter().chain(&self.conservation) {
            writeln!(out, "  [{}] {}: {}", c.outcome, c.kind, c.label).unwrap();
        }
        for n in &self.notes {
            writeln!(out, "  note: {n}").unwrap();
        }
        writeln!(out, "overall: {}", self.overall).unwrap();
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldenRow {
    pub name: String,
    pub expected: String,
    pub computed: String,
    /// Decimal rendering of the computed value, presentation only.
    pub approx: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldenReport {
    pub rows: Vec<GoldenRow>,
}

fn approx(v: &Rational) -> Option<String> {
    (!v.is_integer()).then(|| format!("≈ {}", v.to_decimal_places(6)))
}

fn value_row(name: &str, expected: Rational, computed: Result<Rational, String>) -> GoldenRow {
    match computed {
        Ok(c) => GoldenRow {
            name: name.into(),
            approx: approx(&c),
            pass: c == expected,
            expected: expected.to_string(),
            computed: c.to_string(),
        },
        Err(e) => GoldenRow {
            name: name.into(),
            expected: expected.to_string(),
            computed: format!("error: {e}"),
            approx: None,
            pass: false,
        },
    }
}

fn text_row(name: &str, expected: &str, computed: String) -> GoldenRow {
    GoldenRow {
        name: name.into(),
        pass: computed == expected,
        expected: expected.into(),
        computed,
        approx: None,
    }
}

fn verdict_text(cert: Result<RearrangementCertificate, impl ToString>) -> String {
    match cert {
        Ok(c) => match verify_certificate(&c) {
            Ok(v) => v.overall().to_string(),
            Err(e) => e.to_string(),
        },
        Err(e) => format!("error: {}", e.to_string()),
    }
}

fn volume(spec: SolidSpec) -> Result<Rational, String> {
    make_solid(&spec)
        .map(|p| p.volume())
        .map_err(|e| e.to_string())
}

/// Every checkable number from the source material, pinned in one place.
pub fn golden_report() -> GoldenReport {
    let mut rows = Vec::new();

    let moscow = moscow_trace(&int(4), &int(2), &int(6)).map_err(|e| e.to_string());
    rows.push(text_row(
        "Moscow trace steps (4, 2, 6)",
        "16, 8, 4, 28, 2, 56",
        match &moscow {
            Ok(t) => t
                .values()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "),
            Err(e) => format!("error: {e}"),
        },
    ));
    rows.push(value_row(
        "Moscow volume (4, 2, 6)",
        int(56),
        moscow.and_then(|t| t.final_value().cloned().ok_or_else(|| "empty trace".into())),
    ));
    rows.push(value_row(
        "geometric volume symmetric_frustum(4, 2, 6)",
        int(56),
        volume(SolidSpec::symmetric_frustum(int(4), int(2), int(6))),
    ));
    rows.push(value_row(
        "Nine Chapters volume (50, 40, 50) cubic chi",
        rat(305000, 3),
        nine_chapters_trace(&int(50), &int(40), &int(50))
            .map_err(|e| e.to_string())
            .and_then(|t| t.final_value().cloned().ok_or_else(|| "empty trace".into())),
    ));
    rows.push(value_row(
        "Nine Chapters volume (5, 4, 5) cubic zhang x 1000",
        rat(305000, 3),
        evaluate_formula(FormulaId::Frustum, &int(5), &int(4), &int(5))
            .map(|v| v * int(1000))
            .map_err(|e| e.to_string()),
    ));

    let paradigm = liu_hui_three_copies(&int(3), &int(1), &int(1));
    rows.push(value_row(
        "Liu Hui (3, 1, 1): total of the three boxes",
        int(13),
        paradigm
            .as_ref()
            .map(|c| c.targets.iter().map(|t| t.volume()).sum())
            .map_err(|e| e.to_string()),
    ));
    rows.push(value_row(
        "Liu Hui (3, 1, 1): one frustum = 13/3",
        rat(13, 3),
        volume(SolidSpec::symmetric_frustum(int(3), int(1), int(1))),
    ));
    rows.push(text_row(
        "Liu Hui (3, 1, 1) certificate",
        "pass (exact)",
        verdict_text(paradigm),
    ));
    rows.push(text_row(
        "Liu Hui (4, 2, 6) certificate",
        "pass (volume equality)",
        verdict_text(liu_hui_three_copies(&int(4), &int(2), &int(6))),
    ));

    let nine = nine_part_frustum(&int(4), &int(2), &int(6));
    rows.push(text_row(
        "nine-part volumes (4, 2, 6)",
        "24, 6, 2, 6, 2, 6, 2, 6, 2",
        match &nine {
            Ok(c) => c
                .pieces
                .iter()
                .map(|p| p.piece.volume().to_string())
                .collect::<Vec<_>>()
                .join(", "),
            Err(e) => format!("error: {e}"),
        },
    ));
    rows.push(text_row(
        "nine-part certificate (4, 2, 6)",
        "pass (exact)",
        verdict_text(nine),
    ));

    rows.push(value_row(
        "Juel pyramid a = 2",
        rat(4, 3),
        volume(SolidSpec::juel(int(2))),
    ));
    let juel = truncated_juel_check(&int(2), &int(1)).map_err(|e| e.to_string());
    rows.push(value_row(
        "truncated Juel (2, 1) = (a^3 - b^3)/6",
        rat(7, 6),
        juel.clone().map(|r| r.geometric),
    ));
    rows.push(value_row(
        "truncated Juel (2, 1) = F_T(a, b, (a-b)/2)",
        rat(7, 6),
        juel.map(|r| r.frustum_rule),
    ));

    let shutler = shutler_certificate(&int(1), &int(1));
    rows.push(value_row(
        "Shutler (1, 1): 6 V_P = 2hb^2",
        int(2),
        shutler
            .as_ref()
            .map(|c| c.regions[0].polytope.volume() * int(6))
            .map_err(|e| e.to_string()),
    ));
    rows.push(value_row(
        "Shutler (1, 1): complete / top volume ratio",
        int(8),
        shutler
            .as_ref()
            .map(|c| c.regions[1].polytope.volume() / c.regions[0].polytope.volume())
            .map_err(|e| e.to_string()),
    ));
    rows.push(text_row(
        "Shutler (1, 1) certificate",
        "pass (exact)",
        verdict_text(shutler),
    ));

    let tall_box = box_three_pyramids(&int(1), &int(1), &int(2));
    rows.push(text_row(
        "box(1, 1, 2) corner pyramids: tiling / congruence",
        "Exact / Failed",
        match tall_box
            .as_ref()
            .map_err(ToString::to_string)
            .and_then(|c| verify_certificate(c).map_err(|e| e.to_string()))
        {
            Ok(v) => {
                let short = |o: &Outcome| {
                    if o.is_failed() {
                        "Failed".to_string()
                    } else {
                        o.to_string()
                    }
                };
                format!(
                    "{} / {}",
                    short(&v.claims[0].outcome),
                    short(&v.claims[1].outcome)
                )
            }
            Err(e) => format!("error: {e}"),
        },
    ));

    let cube = make_solid(&SolidSpec::cube(int(1)));
    let tetra = make_solid(&SolidSpec::regular_tetrahedron());
    rows.push(text_row(
        "Dehn invariant of the regular tetrahedron",
        "(+, cos² = 1/9) : (6)√2",
        match &tetra {
            Ok(t) => dehn_invariant(t)
                .map(|d| d.to_string())
                .unwrap_or_else(|e| e.to_string()),
            Err(e) => e.to_string(),
        },
    ));
    rows.push(text_row(
        "Dehn: cube vs regular tetrahedron",
        "SoundlyDifferent",
        match (&cube, &tetra) {
            (Ok(c), Ok(t)) => compare_invariants(c, t)
                .map(|v| v.name().to_string())
                .unwrap_or_else(|e| e.to_string()),
            _ => "error".into(),
        },
    ));

    GoldenReport { rows }
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn render(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.name.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for r in &self.rows {
            let mark = if r.pass { "ok  " } else { "FAIL" };
            let name = format!("{:width$}", r.name);
            write!(
                out,
                "{mark} {name}  expected {}  computed {}",
                r.expected, r.computed
            )
            .unwrap();
            if let Some(a) = &r.approx {
                write!(out, "  ({a})").unwrap();
            }
            out.push('\n');
        }
        let failed = self.rows.iter().filter(|r| !r.pass).count();
        writeln!(out, "{} rows, {failed} mismatches", self.rows.len()).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_table_passes() {
        let report = golden_report();
        let failures: Vec<_> = report.rows.iter().filter(|r| !r.pass).collect();
        assert!(failures.is_empty(), "{failures:#?}");
        let text = report.render();
        assert!(text.contains("expected 56  computed 56"));
        assert!(text.contains("expected 305000/3  computed 305000/3"));
        assert!(text.contains("SoundlyDifferent"));
    }
}
