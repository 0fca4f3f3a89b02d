//! Error-scaling measurements and the four comparison datasets
//! (bulk and edge, GUE and LUE).

use serde::Serialize;

use crate::asymptotics::{
    bulk_expansion, edge_expansion, edge_limit_density, scaled_exact_edge_density,
};
use crate::ensembles::{EnsembleKind, EnsembleSpec};
use crate::error::Result;
use crate::exact_density::density_exact;
use crate::output::Table;

/// `n` equally spaced points on `[a, b]`, endpoints included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| if i + 1 == n { b } else { a + h * i as f64 })
                .collect()
        }
    }
}

/// Bulk comparison interval: `[-0.6, 0.6]` for GUE, `[0.2, 0.8]` for LUE.
pub fn bulk_window(kind: EnsembleKind) -> (f64, f64) {
    match kind {
        EnsembleKind::Gue => (-0.6, 0.6),
        EnsembleKind::Lue => (0.2, 0.8),
    }
}

/// Edge comparison interval in the edge variable.
pub const EDGE_WINDOW: (f64, f64) = (-2.0, 2.0);
pub const BULK_POINTS: usize = 101;
pub const EDGE_POINTS: usize = 41;
pub const FIGURE_POINTS: usize = 201;

/// `max |bulk_expansion(order 1) - ρ_N|` over `grid`.
pub fn bulk_error_max(spec: &EnsembleSpec, grid: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &x in grid {
        let a = bulk_expansion(spec, x, 1)?.truncated_sum;
        worst = worst.max((a - density_exact(spec, x)?).abs());
    }
    Ok(worst)
}

/// `max |edge_expansion(order 2) - scaled exact|` over `grid` (edge variable).
pub fn edge_error_max(spec: &EnsembleSpec, grid: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &xi in grid {
        let a = edge_expansion(spec, xi, 2)?.truncated_sum;
        worst = worst.max((a - scaled_exact_edge_density(spec, xi)?).abs());
    }
    Ok(worst)
}

/// Which comparison dataset to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Figure {
    GueBulk,
    LueBulk,
    GueEdge,
    LueEdge,
}

impl Figure {
    pub const ALL: [Figure; 4] = [
        Figure::GueBulk,
        Figure::LueBulk,
        Figure::GueEdge,
        Figure::LueEdge,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Figure::GueBulk => "gue-bulk",
            Figure::LueBulk => "lue-bulk",
            Figure::GueEdge => "gue-edge",
            Figure::LueEdge => "lue-edge",
        }
    }

    /// GUE N = 10; LUE α = 1/2 with N = 10 (bulk) or N = 20 (edge).
    pub fn spec(&self) -> EnsembleSpec {
        match self {
            Figure::GueBulk | Figure::GueEdge => EnsembleSpec::gue(10),
            Figure::LueBulk => EnsembleSpec::lue(0.5, 10),
            Figure::LueEdge => EnsembleSpec::lue(0.5, 20),
        }
        .expect("fixed figure parameters are valid")
    }

    pub fn is_edge(&self) -> bool {
        matches!(self, Figure::GueEdge | Figure::LueEdge)
    }

    /// Acceptable `max |exact - asymptotic|`: `1/N²` in the bulk, `1/N` at the edge.
    pub fn error_bound(&self) -> f64 {
        let n = self.spec().n as f64;
        if self.is_edge() {
            1.0 / n
        } else {
            1.0 / (n * n)
        }
    }
}

/// Comparison dataset with columns `x, exact, asymptotic, abs_error`, plus
/// `limit` for the edge figures (where `x` is the edge variable).
pub fn figure_table(fig: Figure) -> Result<Table> {
    let spec = fig.spec();
    let mut t = if fig.is_edge() {
        Table::new(&["x", "exact", "asymptotic", "abs_error", "limit"])
    } else {
        Table::new(&["x", "exact", "asymptotic", "abs_error"])
    };
    let grid = if fig.is_edge() {
        linspace(EDGE_WINDOW.0, EDGE_WINDOW.1, FIGURE_POINTS)
    } else {
        let (a, b) = bulk_window(spec.kind);
        linspace(a, b, FIGURE_POINTS)
    };
    let mut worst: f64 = 0.0;
    for x in grid {
        if fig.is_edge() {
            let exact = scaled_exact_edge_density(&spec, x)?;
            let asym = edge_expansion(&spec, x, 2)?.truncated_sum;
            let err = (exact - asym).abs();
            worst = worst.max(err);
            t.push(vec![
                x.into(),
                exact.into(),
                asym.into(),
                err.into(),
                edge_limit_density(x)?.into(),
            ]);
        } else {
            let exact = density_exact(&spec, x)?;
            let asym = bulk_expansion(&spec, x, 1)?.truncated_sum;
            let err = (exact - asym).abs();
            worst = worst.max(err);
            t.push(vec![x.into(), exact.into(), asym.into(), err.into()]);
        }
    }
    t.meta("figure", fig.name());
    t.meta("spec", spec);
    t.meta("order", if fig.is_edge() { 2 } else { 1 });
    t.meta("max_abs_error", worst);
    t.meta("error_bound", fig.error_bound());
    Ok(t)
}

/// One row of the error-scaling summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub criterion: &'static str,
    pub spec: EnsembleSpec,
    pub errors: Vec<(usize, f64)>,
    pub ratio: f64,
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
}

impl ScalingRow {
    pub fn verdict_line(&self) -> String {
        let label = match self.spec.kind {
            EnsembleKind::Gue => "GUE".to_string(),
            EnsembleKind::Lue => format!("LUE alpha={}", self.spec.alpha),
        };
        format!(
            "{} {} {}: E(10)/E(20) = {:.4} (want [{}, {}])",
            if self.pass { "PASS" } else { "FAIL" },
            self.criterion,
            label,
            self.ratio,
            self.lower,
            self.upper
        )
    }
}

/// Sample sizes at which the scaling errors are reported.
pub const SCALING_NS: [usize; 3] = [10, 20, 40];
pub const BULK_RATIO_RANGE: (f64, f64) = (3.0, 5.5);
pub const EDGE_RATIO_RANGE: (f64, f64) = (1.5, 2.8);

fn scaling_row(
    criterion: &'static str,
    kind: EnsembleKind,
    alpha: f64,
    edge: bool,
) -> Result<ScalingRow> {
    let mut errors = Vec::new();
    for n in SCALING_NS {
        let spec = EnsembleSpec::new(kind, alpha, n)?;
        let e = if edge {
            edge_error_max(&spec, &linspace(EDGE_WINDOW.0, EDGE_WINDOW.1, EDGE_POINTS))?
        } else {
            let (a, b) = bulk_window(kind);
            bulk_error_max(&spec, &linspace(a, b, BULK_POINTS))?
        };
        errors.push((n, e));
    }
    let ratio = errors[0].1 / errors[1].1;
    let (lower, upper) = if edge {
        EDGE_RATIO_RANGE
    } else {
        BULK_RATIO_RANGE
    };
    Ok(ScalingRow {
        criterion,
        spec: EnsembleSpec::new(kind, alpha, SCALING_NS[0])?,
        errors,
        ratio,
        lower,
        upper,
        pass: ratio >= lower && ratio <= upper,
    })
}

/// Bulk (`O(1/N²)`) and edge (`O(1/N)`) remainder scaling for GUE and LUE α = 1/2.
pub fn scaling_report() -> Result<Vec<ScalingRow>> {
    Ok(vec![
        scaling_row("bulk-remainder", EnsembleKind::Gue, 0.0, false)?,
        scaling_row("bulk-remainder", EnsembleKind::Lue, 0.5, false)?,
        scaling_row("edge-remainder", EnsembleKind::Gue, 0.0, true)?,
        scaling_row("edge-remainder", EnsembleKind::Lue, 0.5, true)?,
    ])
}

/// The scaling summary as a table, one row per ensemble and criterion.
pub fn scaling_table(rows: &[ScalingRow]) -> Table {
    let mut t = Table::new(&[
        "criterion", "ensemble", "alpha", "e10", "e20", "e40", "ratio", "lower", "upper",
        "verdict",
    ]);
    for r in rows {
        let kind = match r.spec.kind {
            EnsembleKind::Gue => "gue",
            EnsembleKind::Lue => "lue",
        };
        t.push(vec![
            r.criterion.into(),
            kind.into(),
            r.spec.alpha.into(),
            r.errors[0].1.into(),
            r.errors[1].1.into(),
            r.errors[2].1.into(),
            r.ratio.into(),
            r.lower.into(),
            r.upper.into(),
            (if r.pass { "PASS" } else { "FAIL" }).into(),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        let g = linspace(-1.2, 1.2, 801);
        assert_eq!(g.len(), 801);
        assert_eq!(g[0], -1.2);
        assert_eq!(g[800], 1.2);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(linspace(3.0, 4.0, 1), vec![3.0]);
    }

    #[test]
    fn figure_shapes() {
        for fig in Figure::ALL {
            let t = figure_table(fig).unwrap();
            assert_eq!(t.rows.len(), FIGURE_POINTS);
            assert_eq!(t.columns.len(), if fig.is_edge() { 5 } else { 4 });
            let worst = t.column("abs_error").unwrap().into_iter().fold(0.0, f64::max);
            assert!(worst < fig.error_bound(), "{}: {worst}", fig.name());
        }
    }
}
