//! Diagonal recurrence coefficients `a_{n,n}`, `b_{n,n}` of the monic
//! polynomials orthogonal with respect to `e^{-nV}`:
//!
//! ```text
//! x π_n(x) = π_{n+1}(x) + b_{n,n} π_n(x) + a_{n,n} π_{n-1}(x)
//! ```
//!
//! Every `n` has its own weight, so the Stieltjes run is repeated per `n`;
//! the runs are independent and evaluated in parallel.

mod grid;
mod hankel;
mod jacobi;
mod stieltjes;

use rayon::prelude::*;
use rug::Float;

use crate::equilibrium::{EquilibriumConfig, EquilibriumMeasure};
use crate::potential::Potential;
use crate::quadrature::gauss_legendre;
use crate::{Error, PrecisionConfig, Result};

pub use hankel::{hankel_oracle, HANKEL_MAX_N};
pub use jacobi::jacobi_recurrence_closed;

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceEntry {
    pub n: usize,
    pub a_nn: Float,
    pub b_nn: Float,
}

/// Entries for `n = 1..=n_max` in order, with `a_nn > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceTable {
    pub entries: Vec<RecurrenceEntry>,
    pub precision_bits: u32,
    /// Largest discretization size that was accepted (0 for moment-based tables).
    pub node_count: usize,
    pub potential_spec: String,
}

impl RecurrenceTable {
    pub fn n_max(&self) -> usize {
        self.entries.last().map_or(0, |e| e.n)
    }

    pub fn get(&self, n: usize) -> Option<&RecurrenceEntry> {
        n.checked_sub(1).and_then(|i| self.entries.get(i)).filter(|e| e.n == n)
    }

    pub fn a_sequence(&self) -> Vec<(usize, Float)> {
        self.entries.iter().map(|e| (e.n, e.a_nn.clone())).collect()
    }

    pub fn b_sequence(&self) -> Vec<(usize, Float)> {
        self.entries.iter().map(|e| (e.n, e.b_nn.clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceConfig {
    pub precision: PrecisionConfig,
    pub panel_nodes: usize,
    pub initial_panels: usize,
    /// Self-validation gives up past this many panels.
    pub max_panels: usize,
}

impl Default for RecurrenceConfig {
    fn default() -> Self {
        RecurrenceConfig { precision: PrecisionConfig::default(), panel_nodes: 64, initial_panels: 8, max_panels: 1024 }
    }
}

impl RecurrenceConfig {
    pub fn with_precision(precision: PrecisionConfig) -> Self {
        RecurrenceConfig { precision, ..Self::default() }
    }
}

/// Diagonal table for `n = 1..=n_max` with default discretization settings.
pub fn compute_recurrence(p: &Potential, n_max: usize, cfg: &PrecisionConfig) -> Result<RecurrenceTable> {
    let m = EquilibriumMeasure::compute(p, &EquilibriumConfig::with_precision(*cfg))?;
    compute_recurrence_for(&m, n_max, &RecurrenceConfig::with_precision(*cfg))
}

/// As [`compute_recurrence`], reusing an already computed measure. The
/// measure must be one-cut regular.
pub fn compute_recurrence_for(m: &EquilibriumMeasure, n_max: usize, cfg: &RecurrenceConfig) -> Result<RecurrenceTable> {
    if n_max == 0 {
        return Err(Error::Argument("n_max must be at least 1".into()));
    }
    if cfg.panel_nodes < 2 || cfg.initial_panels == 0 || cfg.max_panels < cfg.initial_panels {
        return Err(Error::Argument("invalid panel configuration".into()));
    }
    m.require_regular()?;
    let prec = cfg.precision.bits;
    let rule = gauss_legendre(cfg.panel_nodes, prec);
    let tol = cfg.precision.target_tolerance();
    // tail threshold for the truncated line, with ten digits of margin
    let threshold = f64::from(cfg.precision.digits_target + 10) * std::f64::consts::LN_10;
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let domain = match m.potential() {
                Potential::Polynomial { .. } => grid::line_domain(m, n, threshold)?,
                Potential::Jacobi { .. } => grid::Domain::Jacobi,
            };
            let run = |panels: usize| -> Result<(Float, Float)> {
                let d = grid::discretize(m.potential(), &domain, n, panels, &rule)?;
                Ok(stieltjes::stieltjes(&d, n))
            };
            let mut panels = cfg.initial_panels;
            let mut coarse = run(panels)?;
            while panels < cfg.max_panels {
                panels *= 2;
                let fine = run(panels)?;
                if agrees(&coarse.0, &fine.0, &tol) && agrees(&coarse.1, &fine.1, &tol) {
                    if fine.0 <= 0 {
                        return Err(Error::Precision(format!("non-positive a_nn at n = {n}")));
                    }
                    return Ok((RecurrenceEntry { n, a_nn: fine.0, b_nn: fine.1 }, panels * cfg.panel_nodes));
                }
                coarse = fine;
            }
            Err(Error::Precision(format!(
                "recurrence coefficients at n = {n} not stable to 1e-{} with {} nodes",
                cfg.precision.digits_target,
                panels * cfg.panel_nodes
            )))
        })
        .collect::<Result<Vec<_>>>()?;
    let node_count = rows.iter().map(|r| r.1).max().unwrap_or(0);
    Ok(RecurrenceTable {
        entries: rows.into_iter().map(|r| r.0).collect(),
        precision_bits: prec,
        node_count,
        potential_spec: m.potential().to_string(),
    })
}

fn agrees(x: &Float, y: &Float, tol: &Float) -> bool {
    let prec = x.prec();
    let scale = Float::with_val(prec, x.abs_ref()).max(&Float::with_val(prec, 1));
    Float::with_val(prec, x - y).abs() <= Float::with_val(prec, tol * &scale)
}
