//! Level scans: evaluation, CSV and SVG output.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use torus_wrt::wrt::{invariant, BundleClass, Method};
use torus_wrt::C64;

use crate::{coloured, CliError, CliResult};

pub const CSV_HEADER: &str = "k,r,re,im,abs,arg";

#[derive(Clone, Debug)]
pub struct ScanSpec {
    pub n: usize,
    pub class: BundleClass,
    pub method: Method,
    pub colour: Option<u32>,
    pub levels: RangeInclusive<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRecord {
    pub k: u32,
    pub r: i64,
    pub value: C64,
}

fn eval(spec: &ScanSpec, k: u32) -> CliResult<ScanRecord> {
    let value = match spec.colour {
        Some(j) => coloured(spec.n, k, spec.class, j, spec.method)?,
        None => invariant(spec.n, k, spec.class, spec.method)?.value,
    };
    Ok(ScanRecord { k, r: k as i64 + spec.n as i64, value })
}

/// Evaluates every level in order. Each level is computed independently,
/// so the output does not depend on `threads`.
pub fn run_scan(spec: &ScanSpec, threads: Option<usize>) -> CliResult<Vec<ScanRecord>> {
    let levels: Vec<u32> = spec.levels.clone().collect();
    let work = || levels.par_iter().map(|&k| eval(spec, k)).collect::<CliResult<Vec<_>>>();
    match threads {
        Some(0) => Err(CliError::Invalid("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Invalid(e.to_string()))?
            .install(work),
        None => work(),
    }
}

fn unsign_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

pub fn to_csv(rows: &[ScanRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for row in rows {
        let re = unsign_zero(row.value.re);
        let im = unsign_zero(row.value.im);
        let abs = row.value.norm();
        let arg = unsign_zero(im.atan2(re));
        writeln!(s, "{},{},{:.16e},{:.16e},{:.16e},{:.16e}", row.k, row.r, re, im, abs, arg).unwrap();
    }
    s
}

/// Scatter plot of the values in the complex plane, with circles at
/// integer radii.
pub fn to_svg(rows: &[ScanRecord]) -> String {
    const SIZE: f64 = 600.0;
    let reach = rows.iter().map(|r| r.value.norm()).fold(1.0f64, f64::max).ceil();
    let scale = SIZE / (2.2 * reach);
    let c = SIZE / 2.0;
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for radius in 1..=reach as u32 {
        writeln!(
            s,
            r##"<circle cx="{c}" cy="{c}" r="{:.3}" fill="none" stroke="#ccc" stroke-width="1"/>"##,
            radius as f64 * scale
        )
        .unwrap();
    }
    writeln!(s, r##"<line x1="0" y1="{c}" x2="{SIZE}" y2="{c}" stroke="#999"/>"##).unwrap();
    writeln!(s, r##"<line x1="{c}" y1="0" x2="{c}" y2="{SIZE}" stroke="#999"/>"##).unwrap();
    for row in rows {
        let x = c + row.value.re * scale;
        let y = c - row.value.im * scale;
        writeln!(s, r##"<circle cx="{x:.3}" cy="{y:.3}" r="2.5" fill="#1f5fa8"><title>k={}</title></circle>"##, row.k).unwrap();
    }
    s.push_str("</svg>\n");
    s
}
