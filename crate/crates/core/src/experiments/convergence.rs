//! Grid-refinement studies comparing the standard and well-balanced schemes.

use super::diagnostics::{coarsen, error_norms, pressure_deviation, rate, NormWeight};
use super::problems::ProblemSpec;
use crate::error::{Error, Result};
use crate::solver::SchemeKind;
use crate::state::Prim;

/// Field whose L1 error is tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quantity {
    /// `p - p_eq`, the deviation from the grid's own background profile.
    #[default]
    PressureDeviation,
    /// The pressure itself.
    Pressure,
}

impl std::str::FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta_p" | "dp" => Ok(Quantity::PressureDeviation),
            "p" | "pressure" => Ok(Quantity::Pressure),
            other => Err(Error::config(format!("unknown suite.quantity {other:?}"))),
        }
    }
}

impl Quantity {
    fn extract(self, w: &[Prim], background: &[Prim]) -> Vec<f64> {
        match self {
            Quantity::PressureDeviation => pressure_deviation(w, background),
            Quantity::Pressure => w.iter().map(|w| w.p).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    /// Template; its cell count and scheme kind are overridden per run.
    pub problem: ProblemSpec,
    pub levels: Vec<usize>,
    /// Resolution of the well-balanced reference for perturbed problems.
    /// Unperturbed problems are compared against their own initial data.
    pub reference_cells: usize,
    pub schemes: Vec<SchemeKind>,
    pub quantity: Quantity,
    pub weight: NormWeight,
}

impl ConvergenceStudy {
    /// Ladder `32, 64, ..., 2048` with an 8192-cell reference and both schemes.
    pub fn standard_ladder(problem: ProblemSpec) -> Self {
        Self {
            problem,
            levels: vec![32, 64, 128, 256, 512, 1024, 2048],
            reference_cells: 8192,
            schemes: vec![SchemeKind::Standard, SchemeKind::WellBalanced],
            quantity: Quantity::PressureDeviation,
            weight: NormWeight::Volume,
        }
    }

    fn needs_reference(&self) -> bool {
        self.problem.perturbation.amplitude != 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConvergenceRow {
    pub n: usize,
    pub err_unbalanced: Option<f64>,
    pub rate_unbalanced: Option<f64>,
    pub err_wb: Option<f64>,
    pub rate_wb: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn row(&self, n: usize) -> Option<&ConvergenceRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    fn fill_rates(&mut self) {
        for k in 1..self.rows.len() {
            let (prev, cur) = (self.rows[k - 1], self.rows[k]);
            let ratio = cur.n as f64 / prev.n as f64;
            let pair = |a: Option<f64>, b: Option<f64>| Some(rate(a?, b?, ratio));
            self.rows[k].rate_unbalanced = pair(prev.err_unbalanced, cur.err_unbalanced);
            self.rows[k].rate_wb = pair(prev.err_wb, cur.err_wb);
        }
    }
}

/// Interior values of `quantity` after running `spec` to its end time.
fn evolve(spec: &ProblemSpec, quantity: Quantity) -> Result<Vec<f64>> {
    let background = spec.equilibrium_prims()?;
    let (field, _) = spec.run()?;
    let w = field.interior_prims(&spec.eos)?;
    let range = spec.grid()?.interior();
    Ok(quantity.extract(&w, &background[range]))
}

/// Run every scheme at every level and tabulate L1 errors and observed orders.
pub fn convergence_suite(study: &ConvergenceStudy) -> Result<ConvergenceTable> {
    let mut tables = convergence_tables(study, &[study.weight])?;
    Ok(tables.remove(0))
}

/// Like [`convergence_suite`], with one table per norm weight from a single set of runs.
pub fn convergence_tables(study: &ConvergenceStudy, weights: &[NormWeight]) -> Result<Vec<ConvergenceTable>> {
    if study.levels.is_empty() {
        return Err(Error::config("suite.levels is empty"));
    }
    let mut levels = study.levels.clone();
    levels.sort_unstable();
    levels.dedup();

    let reference = if study.needs_reference() {
        let spec = study
            .problem
            .with_cells(study.reference_cells)?
            .with_scheme(SchemeKind::WellBalanced);
        Some((spec.grid()?, evolve(&spec, study.quantity)?))
    } else {
        None
    };

    let mut tables = vec![ConvergenceTable::default(); weights.len()];
    for &n in &levels {
        let mut rows = vec![
            ConvergenceRow {
                n,
                ..Default::default()
            };
            weights.len()
        ];
        for &kind in &study.schemes {
            let spec = study.problem.with_cells(n)?.with_scheme(kind);
            let grid = spec.grid()?;
            let q = evolve(&spec, study.quantity)?;
            let q_ref = match &reference {
                Some((fine_grid, q_fine)) => coarsen(q_fine, fine_grid, &grid)?,
                None => {
                    let w0 = spec.initial_prims()?;
                    let eq = spec.equilibrium_prims()?;
                    let range = grid.interior();
                    study.quantity.extract(&w0[range.clone()], &eq[range])
                }
            };
            for (row, &weight) in rows.iter_mut().zip(weights) {
                let err = error_norms(&q, &q_ref, &grid, weight)?.err1;
                match kind {
                    SchemeKind::Standard => row.err_unbalanced = Some(err),
                    SchemeKind::WellBalanced => row.err_wb = Some(err),
                }
            }
        }
        for (table, row) in tables.iter_mut().zip(rows) {
            table.rows.push(row);
        }
    }
    for table in &mut tables {
        table.fill_rates();
    }
    Ok(tables)
}
