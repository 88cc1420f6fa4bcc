//! The `|g(s)|` surface as CSV.

use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{GridSpec, ScanError, StripRect};
use crate::chi::chi;
use crate::error::EvalError;
use crate::point::EvalConfig;

pub const FIGURE_HEADER: &str = "sigma,t,abs_g,margin";

/// Write `sigma,t,abs_g,margin` rows for every lattice node of `rect`,
/// σ-major then `t`, with `margin = 1 − |g|`. Returns the number of data rows.
pub fn emit_figure_grid<W: Write>(
    rect: &StripRect,
    grid: &GridSpec,
    cfg: &EvalConfig,
    sink: &mut W,
) -> Result<usize, ScanError> {
    let sigmas = grid.sigma_nodes(rect);
    let ts = grid.t_nodes(rect);
    let rows: Vec<Vec<(f64, f64, f64)>> = sigmas
        .par_iter()
        .map(|&sigma| {
            ts.iter()
                .map(|&t| Ok((sigma, t, chi(Complex64::new(sigma, t), cfg)?.norm())))
                .collect::<Result<Vec<_>, EvalError>>()
        })
        .collect::<Result<_, _>>()?;

    let mut out = BufWriter::new(sink);
    writeln!(out, "{FIGURE_HEADER}")?;
    let mut count = 0;
    for (sigma, t, abs_g) in rows.into_iter().flatten() {
        writeln!(out, "{sigma:.16e},{t:.16e},{abs_g:.16e},{:.16e}", 1.0 - abs_g)?;
        count += 1;
    }
    out.flush()?;
    Ok(count)
}

/// [`emit_figure_grid`] into `path`, written through a temporary file in the
/// same directory so a failure never leaves a partial file behind.
pub fn write_figure_file(rect: &StripRect, grid: &GridSpec, cfg: &EvalConfig, path: &Path) -> Result<usize, ScanError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    let count = emit_figure_grid(rect, grid, cfg, tmp.as_file_mut())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(count)
}


#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn small_grid_rows_and_format() {
        let cfg = EvalConfig::default();
        let rect = StripRect::new(0.0, 0.5, 6.0, 7.0).unwrap();
        let grid = GridSpec::uniform(0.25, 0.5).unwrap();
        let mut buf = Vec::new();
        let n = emit_figure_grid(&rect, &grid, &cfg, &mut buf).unwrap();
        assert_eq!(n, 9);
        let text = String::from_utf8(buf).unwrap();
        assert!(!text.contains('\r'));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], FIGURE_HEADER);
        assert_eq!(lines.len(), 10);
        assert!(lines[1].starts_with("0.0000000000000000e0,6.0000000000000000e0,"));
        for line in &lines[7..] {
            let abs_g: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
            assert!((abs_g - 1.0).abs() < 1e-9, "{line}");
        }
    }

    #[test]
    fn failed_write_leaves_no_file() {
        let cfg = EvalConfig::default();
        let rect = StripRect::new(0.0, 0.5, 6.0, 7.0).unwrap();
        let grid = GridSpec::uniform(0.25, 0.5).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("missing").join("fig.csv");
        assert!(write_figure_file(&rect, &grid, &cfg, &target).is_err());
        assert!(!target.exists());
        let ok = dir.path().join("fig.csv");
        assert_eq!(write_figure_file(&rect, &grid, &cfg, &ok).unwrap(), 9);
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
