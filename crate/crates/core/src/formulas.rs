//! Closed-form frustum and pyramid volume rules, and step-by-step traces of
//! the two historical calculation schedules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaId {
    /// `(h/3)(a² + ab + b²)`
    #[serde(rename = "F_T")]
    Frustum,
    /// `hab + (h/3)(a − b)²`
    #[serde(rename = "F_TA")]
    FrustumAlternative,
    /// `(h/3)a²`
    #[serde(rename = "F_P")]
    Pyramid,
    /// `h(ab + (1/3)(a − b)²)`
    #[serde(rename = "GUNN_PEET_FACTORED")]
    Factored,
}

impl FormulaId {
    pub const ALL: [FormulaId; 4] = [
        FormulaId::Frustum,
        FormulaId::FrustumAlternative,
        FormulaId::Pyramid,
        FormulaId::Factored,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::Frustum => "F_T",
            FormulaId::FrustumAlternative => "F_TA",
            FormulaId::Pyramid => "F_P",
            FormulaId::Factored => "GUNN_PEET_FACTORED",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = FormulaError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FormulaError::UnknownFormula(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("h must be positive")]
    NonPositiveHeight,
    #[error("a must exceed b")]
    SidesOutOfOrder,
    #[error("b must be positive")]
    NonPositiveTop,
    #[error("b must not be negative")]
    NegativeTop,
    #[error("a must be positive")]
    NonPositiveBase,
    #[error("unknown formula {0:?}")]
    UnknownFormula(String),
}

fn third() -> Rational {
    Rational::new(1, 3)
}

/// Exact evaluation. `b` may be zero for the frustum rules (the pyramid
/// limit) and is ignored by `F_P`.
pub fn evaluate_formula(
    id: FormulaId,
    a: &Rational,
    b: &Rational,
    h: &Rational,
) -> Result<Rational, FormulaError> {
    if !h.is_positive() {
        return Err(FormulaError::NonPositiveHeight);
    }
    if id == FormulaId::Pyramid {
        if !a.is_positive() {
            return Err(FormulaError::NonPositiveBase);
        }
        return Ok(h * third() * a.square());
    }
    if b.is_negative() {
        return Err(FormulaError::NegativeTop);
    }
    if a <= b {
        return Err(FormulaError::SidesOutOfOrder);
    }
    let diff = a - b;
    Ok(match id {
        FormulaId::Frustum => h * third() * (a.square() + a * b + b.square()),
        FormulaId::FrustumAlternative => h * a * b + h * third() * diff.square(),
        FormulaId::Factored => h * (a * b + third() * diff.square()),
        FormulaId::Pyramid => unreachable!(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStyle {
    Moscow,
    NineChapters,
}

impl FromStr for TraceStyle {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "moscow" => Ok(TraceStyle::Moscow),
            "nine-chapters" | "nine_chapters" => Ok(TraceStyle::NineChapters),
            other => Err(format!(
                "unknown trace style {other:?}; expected moscow or nine-chapters"
            )),
        }
    }
}

/// The arithmetic event a step performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepOp {
    Multiply,
    /// Sum of `terms` values: `terms − 1` additions.
    Sum {
        terms: u32,
    },
    Divide,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub label: String,
    pub value: Rational,
    pub op: StepOp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgorithmTrace {
    pub style: TraceStyle,
    pub steps: Vec<TraceStep>,
    pub unit_label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OpCounts {
    pub additions: u32,
    pub multiplications: u32,
    pub divisions: u32,
}

impl AlgorithmTrace {
    pub fn final_value(&self) -> Option<&Rational> {
        self.steps.last().map(|s| &s.value)
    }

    pub fn values(&self) -> Vec<Rational> {
        self.steps.iter().map(|s| s.value.clone()).collect()
    }

    pub fn with_unit(mut self, unit: impl Into<String>) -> Self {
        self.unit_label = Some(unit.into());
        self
    }

    /// Plain-text table: label, exact value, and a six-place decimal marked `≈`.
    pub fn render(&self) -> String {
        let title = match self.style {
            TraceStyle::Moscow => "Moscow papyrus schedule",
            TraceStyle::NineChapters => "Nine Chapters schedule",
        };
        let mut out = title.to_string();
        if let Some(unit) = &self.unit_label {
            out.push_str(&format!(" (lengths in {unit})"));
        }
        out.push('\n');
        let width = self
            .steps
            .iter()
            .map(|s| s.label.chars().count())
            .max()
            .unwrap_or(0);
        for (i, step) in self.steps.iter().enumerate() {
            let exact = step.value.to_string();
            let approx = if step.value.is_integer() {
                String::new()
            } else {
                format!("  ≈ {}", step.value.to_decimal_places(6))
            };
            out.push_str(&format!(
                "({}) {:<width$}  {}{}\n",
                i + 1,
                step.label,
                exact,
                approx,
                width = width
            ));
        }
        let c = op_count(self);
        out.push_str(&format!(
            "operations: {} additions, {} multiplications, {} divisions\n",
            c.additions, c.multiplications, c.divisions
        ));
        out
    }
}

fn check_frustum(a: &Rational, b: &Rational, h: &Rational) -> Result<(), FormulaError> {
    if !h.is_positive() {
        return Err(FormulaError::NonPositiveHeight);
    }
    if !b.is_positive() {
        return Err(FormulaError::NonPositiveTop);
    }
    if a <= b {
        return Err(FormulaError::SidesOutOfOrder);
    }
    Ok(())
}

fn step(label: &str, value: Rational, op: StepOp) -> TraceStep {
    TraceStep {
        label: label.to_string(),
        value,
        op,
    }
}

/// Papyrus order: the three area terms, their sum, a third of the height,
/// then the product.
pub fn moscow_trace(
    a: &Rational,
    b: &Rational,
    h: &Rational,
) -> Result<AlgorithmTrace, FormulaError> {
    check_frustum(a, b, h)?;
    let (aa, ab, bb) = (a.square(), a * b, b.square());
    let sum = &aa + &ab + &bb;
    let third_h = h / Rational::from(3);
    let volume = &third_h * &sum;
    Ok(AlgorithmTrace {
        style: TraceStyle::Moscow,
        steps: vec![
            step("square the lower side", aa, StepOp::Multiply),
            step("lower side times upper side", ab, StepOp::Multiply),
            step("square the upper side", bb, StepOp::Multiply),
            step("add the three", sum, StepOp::Sum { terms: 3 }),
            step("take a third of the height", third_h, StepOp::Divide),
            step("multiply: the volume", volume, StepOp::Multiply),
        ],
        unit_label: None,
    })
}

/// Nine Chapters order: the sum of the three area terms times the height,
/// with the division by three applied last.
pub fn nine_chapters_trace(
    a: &Rational,
    b: &Rational,
    h: &Rational,
) -> Result<AlgorithmTrace, FormulaError> {
    check_frustum(a, b, h)?;
    let (aa, ab, bb) = (a.square(), a * b, b.square());
    let sum = &aa + &ab + &bb;
    let times_h = &sum * h;
    let volume = &times_h / Rational::from(3);
    Ok(AlgorithmTrace {
        style: TraceStyle::NineChapters,
        steps: vec![
            step("square the lower side", aa, StepOp::Multiply),
            step("lower side times upper side", ab, StepOp::Multiply),
            step("square the upper side", bb, StepOp::Multiply),
            step("add the three", sum, StepOp::Sum { terms: 3 }),
            step("multiply by the height", times_h, StepOp::Multiply),
            step("divide by three: the volume", volume, StepOp::Divide),
        ],
        unit_label: None,
    })
}

pub fn op_count(t: &AlgorithmTrace) -> OpCounts {
    let mut c = OpCounts::default();
    for s in &t.steps {
        match s.op {
            StepOp::Multiply => c.multiplications += 1,
            StepOp::Sum { terms } => c.additions += terms.saturating_sub(1),
            StepOp::Divide => c.divisions += 1,
        }
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub left: Rational,
    pub right: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// `3ab + (a − b)² = a² + ab + b²`
    pub plane: IdentityCheck,
    /// `(a − b)(a² + ab + b²) = a³ − b³`
    pub cube_difference: IdentityCheck,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.plane.holds && self.cube_difference.holds
    }
}

pub fn identity_checks(a: &Rational, b: &Rational) -> IdentityReport {
    let three_terms = a.square() + a * b + b.square();
    let plane_left = Rational::from(3) * a * b + (a - b).square();
    let cube_left = (a - b) * &three_terms;
    let cube_right = a.cube() - b.cube();
    IdentityReport {
        plane: IdentityCheck {
            name: "3ab + (a-b)^2 = a^2 + ab + b^2",
            holds: plane_left == three_terms,
            left: plane_left,
            right: three_terms,
        },
        cube_difference: IdentityCheck {
            name: "(a-b)(a^2 + ab + b^2) = a^3 - b^3",
            holds: cube_left == cube_right,
            left: cube_left,
            right: cube_right,
        },
    }
}
