//! CSV and JSON renderings of analysis results.
//!
//! Floats use Rust's shortest round-trip form (`{:?}`, exponent notation for
//! very small or large values), `.` as the decimal separator and `\n` line
//! endings, so identical inputs give byte-identical
//! files.

use std::fmt::Write as _;

use serde::Serialize;

use crate::freq::{ErrorSample, RootReport};
use crate::integrators::{CoefficientSet, IntegratorKind};
use crate::simulate::{CaseTable, Trace};
use crate::stability::StabilityMap;

pub fn coeffs_csv(c: &CoefficientSet) -> String {
    format!(
        "kind,omega_select_rad_s,h_s,a_prev,b_now,b_prev,c_now,c_prev\n{},{:?},{:?},{:?},{:?},{:?},{:?},{:?}\n",
        c.kind(),
        c.omega_select(),
        c.h(),
        c.a_prev(),
        c.b_now(),
        c.b_prev(),
        c.c_now(),
        c.c_prev()
    )
}

pub fn sweep_csv(samples: &[ErrorSample]) -> String {
    let mut out = String::from("omega_rad_s,err_re,err_im,err_mag\n");
    for s in samples {
        let _ = writeln!(out, "{:?},{:?},{:?},{:?}", s.omega, s.error.re, s.error.im, s.magnitude);
    }
    out
}

/// Header row holds `Im(lambda h)`; each following row starts with its
/// `Re(lambda h)` and then lists `|g|` per column.
pub fn map_csv(map: &StabilityMap) -> String {
    let mut out = String::from("re_lambda_h");
    for im in &map.im_axis {
        let _ = write!(out, ",{im:?}");
    }
    out.push('\n');
    for (re, row) in map.re_axis.iter().zip(&map.magnitude) {
        let _ = write!(out, "{re:?}");
        for m in row {
            let _ = write!(out, ",{m:?}");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize)]
struct MapSidecar {
    kind: IntegratorKind,
    theta: f64,
    ranges: MapRanges,
    n: usize,
}

#[derive(Debug, Serialize)]
struct MapRanges {
    re: [f64; 2],
    im: [f64; 2],
}

pub fn map_sidecar_json(map: &StabilityMap) -> String {
    let first_last = |v: &[f64]| [v[0], v[v.len() - 1]];
    let sidecar = MapSidecar {
        kind: map.kind,
        theta: map.theta,
        ranges: MapRanges {
            re: first_last(&map.re_axis),
            im: first_last(&map.im_axis),
        },
        n: map.re_axis.len(),
    };
    let mut s = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    s.push('\n');
    s
}

/// Rows of `(lambda h, [gain per kind], exp(lambda h))`.
pub fn gains_csv(kinds: &[IntegratorKind], rows: &[(f64, Vec<f64>, f64)]) -> String {
    let mut out = String::from("lambda_h");
    for k in kinds {
        let _ = write!(out, ",gain_{k}");
    }
    out.push_str(",exact\n");
    for (mu, gains, exact) in rows {
        let _ = write!(out, "{mu:?}");
        for g in gains {
            let _ = write!(out, ",{g:?}");
        }
        let _ = writeln!(out, ",{exact:?}");
    }
    out
}

pub fn table_csv(table: &CaseTable) -> String {
    let mut out = String::from("step_us");
    for k in &table.kinds {
        let _ = write!(out, ",{k}");
    }
    out.push('\n');
    for (us, row) in table.steps_us.iter().zip(&table.cells) {
        let _ = write!(out, "{us}");
        for v in row {
            let _ = write!(out, ",{v:.4}");
        }
        out.push('\n');
    }
    out
}

pub fn roots_csv(reports: &[RootReport]) -> String {
    let mut out = String::from("location_re,location_im,claimed_multiplicity,order,magnitude,threshold,pass\n");
    for r in reports {
        for c in &r.checks {
            let _ = writeln!(
                out,
                "{:?},{:?},{},{},{:?},{:?},{}",
                r.location.re, r.location.im, r.claimed_multiplicity, c.order, c.magnitude, c.threshold, c.pass
            );
        }
    }
    out
}

/// `t_s, x_0, x_1, ...` for a single trace.
pub fn trace_csv(trace: &Trace) -> String {
    let n = trace.values.first().map_or(0, |v| v.len());
    let names: Vec<String> = (0..n).map(|i| format!("x_{i}")).collect();
    let columns: Vec<Vec<f64>> = (0..n).map(|i| trace.component(i)).collect();
    columns_csv(trace, &names, &columns)
}

/// `t_s` followed by one named column per series, all sampled like `time_base`.
pub fn columns_csv(time_base: &Trace, names: &[String], columns: &[Vec<f64>]) -> String {
    let mut out = String::from("t_s");
    for name in names {
        let _ = write!(out, ",{name}");
    }
    out.push('\n');
    for (k, t) in time_base.times().enumerate() {
        let _ = write!(out, "{t:?}");
        for col in columns {
            let _ = write!(out, ",{:?}", col[k]);
        }
        out.push('\n');
    }
    out
}
