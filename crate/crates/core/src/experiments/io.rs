//! CSV writers for snapshots and convergence tables.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::convergence::ConvergenceTable;
use crate::error::{Error, Result};
use crate::state::{Prim, Prim2};

/// Round-trip precision: 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn snapshot_csv(xs: &[f64], w: &[Prim]) -> String {
    let mut s = String::from("x,rho,v,p\n");
    for (x, w) in xs.iter().zip(w) {
        let _ = writeln!(s, "{},{},{},{}", num(*x), num(w.rho), num(w.v), num(w.p));
    }
    s
}

/// Rows in storage order, `x` fastest.
pub fn snapshot_2d_csv(xs: &[f64], ys: &[f64], w: &[Prim2]) -> String {
    let mut s = String::from("x,y,rho,vx,vy,p\n");
    for (j, y) in ys.iter().enumerate() {
        for (i, x) in xs.iter().enumerate() {
            let w = &w[j * xs.len() + i];
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                num(*x),
                num(*y),
                num(w.rho),
                num(w.vx),
                num(w.vy),
                num(w.p)
            );
        }
    }
    s
}

pub fn convergence_csv(table: &ConvergenceTable) -> String {
    let mut s = String::from("N,err_unbalanced,rate_unbalanced,err_wb,rate_wb\n");
    for r in &table.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.n,
            opt(r.err_unbalanced),
            opt(r.rate_unbalanced),
            opt(r.err_wb),
            opt(r.rate_wb)
        );
    }
    s
}

/// Path for a snapshot taken before the end of a run: `out.csv` becomes `out_t0.25.csv`.
pub fn intermediate_path(base: &Path, t: f64) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_t{t}.{}", ext.to_string_lossy()),
        None => format!("{stem}_t{t}"),
    };
    base.with_file_name(name)
}

/// Write `contents`, creating parent directories as needed.
pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}
