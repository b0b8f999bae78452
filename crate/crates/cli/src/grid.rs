//! Grid syntax: `min:max:steps` (inclusive linspace, `steps` points) or
//! a comma-separated list of values.

use crate::error::CliError;

pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(CliError::InvalidSpec("empty grid".into()));
    }
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::InvalidSpec(format!(
                "expected min:max:steps, got {spec:?}"
            )));
        }
        let min = parse_value(parts[0])?;
        let max = parse_value(parts[1])?;
        let steps: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| CliError::InvalidSpec(format!("bad step count {:?}", parts[2])))?;
        if steps < 1 {
            return Err(CliError::InvalidSpec("steps must be at least 1".into()));
        }
        if min > max {
            return Err(CliError::InvalidSpec(format!("min {min} > max {max}")));
        }
        if steps == 1 {
            return Ok(vec![min]);
        }
        let h = (max - min) / (steps - 1) as f64;
        Ok((0..steps).map(|i| min + h * i as f64).collect())
    } else {
        spec.split(',').map(parse_value).collect()
    }
}

fn parse_value(s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::InvalidSpec(format!("bad number {s:?}")))?;
    if !v.is_finite() {
        return Err(CliError::InvalidSpec(format!("non-finite value {s:?}")));
    }
    Ok(v)
}
