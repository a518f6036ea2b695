use std::fmt;

use serde::{Deserialize, Serialize};

use super::{
    check_conical, check_consistent, check_convex, check_geodesic, check_midpoint_property,
    check_reversible, Property, PropertyReport, SampleConfig, DEFAULT_TAU_STEPS,
};
use crate::bicombings::{Bicombing, Delta, FoldedX1, SigmaDelta};
use crate::error::{Error, Result};
use crate::funcspace::{
    horizontal_bicombing, l1_distance, vertical_bicombing, FunctionBicombing, MonotoneFn, SQRT_MESH,
};

/// Minimum L¹ gap between the two function-space bicombings at `t = ½`.
pub const DISTINCT_GAP: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixConfig {
    pub sample: SampleConfig,
    pub delta: Delta,
    pub tau_steps: Vec<f64>,
}

impl Default for MatrixConfig {
    fn default() -> Self {
        MatrixConfig {
            sample: SampleConfig::default(),
            delta: Delta::max(),
            tau_steps: DEFAULT_TAU_STEPS.to_vec(),
        }
    }
}

/// The bicombings shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    SigmaDelta,
    SigmaTilde,
    SigmaZero,
    SigmaX1,
    TauX1,
    FuncVertical,
    FuncHorizontal,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::SigmaDelta,
        Builtin::SigmaTilde,
        Builtin::SigmaZero,
        Builtin::SigmaX1,
        Builtin::TauX1,
        Builtin::FuncVertical,
        Builtin::FuncHorizontal,
    ];

    /// Expected outcome per property, in `Property::BICOMBING` order.
    /// `None` leaves a cell unconstrained.
    pub fn expected(self, delta: Delta) -> [Option<bool>; 6] {
        let (t, f, u) = (Some(true), Some(false), None);
        let flat = delta.value() == 0.0;
        match self {
            Builtin::SigmaDelta if flat => [t; 6],
            Builtin::SigmaDelta => [t, t, t, f, t, t],
            Builtin::SigmaTilde if flat => [t; 6],
            Builtin::SigmaTilde => [t, t, t, f, f, u],
            Builtin::SigmaZero => [t; 6],
            Builtin::SigmaX1 => [t, t, u, u, f, f],
            Builtin::TauX1 => [t, t, u, u, f, t],
            Builtin::FuncVertical | Builtin::FuncHorizontal => [t, t, t, t, u, u],
        }
    }

    /// Runs every check in `Property::BICOMBING` on this bicombing.
    pub fn run(self, cfg: &MatrixConfig) -> Result<MatrixRow> {
        let expected = self.expected(cfg.delta);
        match self {
            Builtin::SigmaDelta => run_row(&SigmaDelta::new(cfg.delta), expected, cfg),
            Builtin::SigmaTilde => run_row(&SigmaDelta::tilde(cfg.delta), expected, cfg),
            Builtin::SigmaZero => run_row(&SigmaDelta::new(Delta::zero()), expected, cfg),
            Builtin::SigmaX1 => run_row(&FoldedX1::sigma(), expected, cfg),
            Builtin::TauX1 => run_row(&FoldedX1::tau(), expected, cfg),
            Builtin::FuncVertical => run_row(&FunctionBicombing::vertical(), expected, cfg),
            Builtin::FuncHorizontal => run_row(&FunctionBicombing::horizontal(), expected, cfg),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixCell {
    pub expected: Option<bool>,
    pub report: PropertyReport,
}

impl MatrixCell {
    pub fn matches(&self) -> bool {
        self.expected.is_none_or(|e| e == self.report.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRow {
    pub bicombing: String,
    pub cells: Vec<MatrixCell>,
}

impl MatrixRow {
    pub fn cell(&self, property: Property) -> Option<&MatrixCell> {
        self.cells.iter().find(|c| c.report.property == property)
    }

    pub fn passed(&self, property: Property) -> Option<bool> {
        self.cell(property).map(|c| c.report.passed)
    }

    pub fn matches(&self) -> bool {
        self.cells.iter().all(MatrixCell::matches)
    }
}

/// Runs the six bicombing checks on `b` and pairs them with expectations.
pub fn run_row<B: Bicombing>(
    b: &B,
    expected: [Option<bool>; 6],
    cfg: &MatrixConfig,
) -> Result<MatrixRow> {
    let s = &cfg.sample;
    let reports = [
        check_geodesic(b, s)?,
        check_conical(b, s)?,
        check_convex(b, s, &cfg.tau_steps)?,
        check_consistent(b, s)?,
        check_reversible(b, s)?,
        check_midpoint_property(b, s)?,
    ];
    Ok(MatrixRow {
        bicombing: b.name(),
        cells: reports
            .into_iter()
            .zip(expected)
            .map(|(report, expected)| MatrixCell { expected, report })
            .collect(),
    })
}

/// L¹ distance between the vertical and horizontal geodesics from the
/// graded `√x` to the identity at `t = ½`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distinctness {
    pub l1_gap: f64,
    pub threshold: f64,
    pub distinct: bool,
}

impl Distinctness {
    pub fn compute() -> Self {
        let f = MonotoneFn::sqrt_graded(SQRT_MESH);
        let g = MonotoneFn::identity();
        let l1_gap = l1_distance(
            &vertical_bicombing(&f, &g, 0.5),
            &horizontal_bicombing(&f, &g, 0.5),
        );
        Distinctness {
            l1_gap,
            threshold: DISTINCT_GAP,
            distinct: l1_gap > DISTINCT_GAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyMatrix {
    pub rows: Vec<MatrixRow>,
    /// Present when both function-space rows were run.
    pub distinctness: Option<Distinctness>,
}

impl PropertyMatrix {
    /// Human-readable descriptions of every cell, implication or
    /// distinctness expectation that failed.
    pub fn deviations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for row in &self.rows {
            for cell in row.cells.iter().filter(|c| !c.matches()) {
                out.push(format!(
                    "{} {}: expected {}, observed {} (worst {:e})",
                    row.bicombing,
                    cell.report.property,
                    mark(cell.expected),
                    mark(Some(cell.report.passed)),
                    cell.report.worst_violation
                ));
            }
        }
        out.extend(implication_violations(&self.rows));
        if let Some(d) = &self.distinctness {
            if !d.distinct {
                out.push(format!(
                    "funcspace bicombings coincide: L1 gap {:e} <= {:e}",
                    d.l1_gap, d.threshold
                ));
            }
        }
        out
    }

    pub fn matches(&self) -> bool {
        self.deviations().is_empty()
    }
}

/// Rows passing a stronger property while failing a weaker one along
/// consistent ⇒ convex ⇒ conical.
pub fn implication_violations(rows: &[MatrixRow]) -> Vec<String> {
    let chain = [
        (Property::Consistent, Property::Convex),
        (Property::Convex, Property::Conical),
    ];
    let mut out = Vec::new();
    for row in rows {
        for (strong, weak) in chain {
            if row.passed(strong) == Some(true) && row.passed(weak) == Some(false) {
                out.push(format!(
                    "{} passes {strong} but fails {weak}",
                    row.bicombing
                ));
            }
        }
    }
    out
}

fn mark(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "✓",
        Some(false) => "✗",
        None => "·",
    }
}

impl fmt::Display for PropertyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<28}", "bicombing")?;
        for p in Property::BICOMBING {
            write!(f, " {:>17}", p.as_str())?;
        }
        writeln!(f)?;
        for row in &self.rows {
            write!(f, "{:<28}", row.bicombing)?;
            for cell in &row.cells {
                let flag = if cell.matches() { " " } else { "!" };
                write!(f, " {:>16}{flag}", mark(Some(cell.report.passed)))?;
            }
            writeln!(f)?;
        }
        if let Some(d) = &self.distinctness {
            writeln!(
                f,
                "funcspace vertical vs horizontal at t=1/2: L1 gap {:.6} ({})",
                d.l1_gap,
                if d.distinct {
                    "distinct"
                } else {
                    "NOT distinct"
                }
            )?;
        }
        Ok(())
    }
}

/// Runs the selected built-in bicombings. The distinctness entry is filled
/// when both function-space bicombings are among them.
pub fn run_matrix(which: &[Builtin], cfg: &MatrixConfig) -> Result<PropertyMatrix> {
    if which.is_empty() {
        return Err(Error::Config("no bicombings selected".into()));
    }
    let rows = which
        .iter()
        .map(|b| b.run(cfg))
        .collect::<Result<Vec<_>>>()?;
    let distinctness = (which.contains(&Builtin::FuncVertical)
        && which.contains(&Builtin::FuncHorizontal))
    .then(Distinctness::compute);
    Ok(PropertyMatrix { rows, distinctness })
}

/// The full matrix over every built-in bicombing.
pub fn builtin_matrix(cfg: &MatrixConfig) -> Result<PropertyMatrix> {
    run_matrix(&Builtin::ALL, cfg)
}
