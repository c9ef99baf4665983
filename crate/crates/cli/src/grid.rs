//! Scalar or `start:stop:step` parameter grids.

use crate::CliError;

fn number(text: &str, whole: &str) -> Result<f64, CliError> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("`{text}` in `{whole}` is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::Input(format!(
            "`{whole}` contains a non-finite value"
        )));
    }
    Ok(v)
}

/// Parses `"0.5"` into one point or `"start:stop:step"` into the inclusive
/// range `start, start + step, …, start + n·step` with `n` the step count
/// rounded to the nearest integer, so a stop within half a step of the grid
/// is included. A last point within round-off of `stop` is replaced by `stop`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![number(single, text)?]),
        [start, stop, step] => {
            let (start, stop, step) = (
                number(start, text)?,
                number(stop, text)?,
                number(step, text)?,
            );
            if step <= 0.0 {
                return Err(CliError::Input(format!(
                    "grid `{text}` needs a positive step"
                )));
            }
            if stop < start {
                return Err(CliError::Input(format!(
                    "grid `{text}` has stop below start"
                )));
            }
            let count = ((stop - start) / step + 0.5).floor() as usize;
            if count > 10_000_000 {
                return Err(CliError::Input(format!(
                    "grid `{text}` has too many points"
                )));
            }
            let mut points: Vec<f64> = (0..=count).map(|i| start + i as f64 * step).collect();
            let last = points.last_mut().expect("at least one point");
            if (*last - stop).abs() <= 1e-9 * step {
                *last = stop;
            }
            Ok(points)
        }
        _ => Err(CliError::Input(format!(
            "`{text}` is neither a number nor a start:stop:step grid"
        ))),
    }
}

/// Sorts ascending and removes duplicates.
pub fn sorted_unique(mut points: Vec<f64>) -> Vec<f64> {
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}
