//! Parameter sweeps over `a`, evaluated concurrently.

use ewit_core::analysis::edge_report;
use ewit_core::witness::{build_witness, nondecomposability_certificate};
use ewit_core::{OptimizerConfig, StateParameter};
use rayon::prelude::*;

use crate::report::SweepRow;
use crate::Result;

/// Full edge and witness pipeline at one parameter value.
pub fn sweep_point(p: StateParameter, cfg: &OptimizerConfig) -> Result<SweepRow> {
    let edge = edge_report(p, cfg)?;
    let cert = build_witness(p, cfg)?;
    Ok(SweepRow {
        a: p.a(),
        ppt: edge.is_ppt,
        min_pt_eigenvalue: edge.min_pt_eigenvalue,
        neg_eig: edge.subtraction_neg_eigenvalue,
        neg_eig_closed_form: p.subtraction_eigenvalue(),
        range_min: edge.range_feasibility_min,
        verdict: edge.verdict.into(),
        epsilon: cert.epsilon,
        epsilon_closed_form: cert.epsilon_closed_form,
        epsilon_oracle: cert.epsilon_oracle,
        product_min_of_w: cert.product_min_of_w,
        trace_w_rho: cert.trace_w_rho,
        nondecomposable: nondecomposability_certificate(&cert, p)?,
    })
}

/// Rows in the order of `grid`, whatever order the workers finish in.
pub fn run_sweep(grid: &[StateParameter], cfg: &OptimizerConfig) -> Result<Vec<SweepRow>> {
    grid.par_iter().map(|&p| sweep_point(p, cfg)).collect()
}

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory CSV");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("UTF-8 CSV")
}
