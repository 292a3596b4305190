//! Parsers for the CLI input surface: complex literals `re[+im i]`,
//! comma-separated coefficient lists, and flat `key=value` config files.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::shooting::ShootingConfig;

/// Parse a complex literal: `1.5`, `-2e-3`, `1+2i`, `0.5-1.25e1i`, `2i`, `-i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let bad = |why: &str| Error::Parse(format!("bad complex literal {s:?}: {why}"));

    if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('I')) {
        // Find the sign splitting re from im: the last '+'/'-' that is not
        // the leading sign and not an exponent sign.
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx];
            if (c == b'+' || c == b'-')
                && !matches!(bytes[idx - 1], b'e' | b'E')
            {
                split = Some(idx);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => im_str
                .parse::<f64>()
                .map_err(|_| bad("imaginary part is not a number"))?,
        };
        let re = if re_str.is_empty() {
            0.0
        } else {
            re_str
                .parse::<f64>()
                .map_err(|_| bad("real part is not a number"))?
        };
        Ok(Complex64::new(re, im))
    } else {
        t.parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad("not a number"))
    }
}

/// Parse `a` as comma-separated complex literals.
pub fn parse_coeff_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_complex).collect()
}

/// Mutable bundle of the numeric configs the CLI exposes.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunConfig {
    pub quad: QuadratureConfig,
    pub shoot: ShootingConfig,
}

/// Apply one `key=value` setting.
pub fn apply_setting(cfg: &mut RunConfig, key: &str, value: &str) -> Result<()> {
    let f = || -> Result<f64> {
        value
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad numeric value for {key}: {value:?}")))
    };
    let u = || -> Result<usize> {
        value
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad integer value for {key}: {value:?}")))
    };
    match key {
        "abs_tol" => cfg.quad.abs_tol = f()?,
        "rel_tol" => cfg.quad.rel_tol = f()?,
        "tail_cut" => cfg.quad.tail_cut = f()?,
        "max_subdivisions" => cfg.quad.max_subdivisions = u()?,
        "start_radius" => cfg.shoot.start_radius = f()?,
        "ode_rel_tol" => cfg.shoot.ode_rel_tol = f()?,
        "ode_abs_tol" => cfg.shoot.ode_abs_tol = f()?,
        "newton_tol" => cfg.shoot.newton_tol = f()?,
        "newton_max_iter" => cfg.shoot.newton_max_iter = u()?,
        "deflation_radius" => cfg.shoot.deflation_radius = f()?,
        "reality_tol" => cfg.shoot.reality_tol = f()?,
        _ => return Err(Error::Parse(format!("unknown config key {key:?}"))),
    }
    Ok(())
}

/// Parse a flat config file: `key = value` lines, `#` comments, blank lines.
pub fn parse_config(text: &str, cfg: &mut RunConfig) -> Result<()> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", lineno + 1)))?;
        apply_setting(cfg, key.trim(), value.trim())?;
    }
    cfg.quad.validate()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn complex_literals() {
        let cases = [
            ("1.5", (1.5, 0.0)),
            ("-2e-3", (-0.002, 0.0)),
            ("1+2i", (1.0, 2.0)),
            ("0.5-1.25e1i", (0.5, -12.5)),
            ("2i", (0.0, 2.0)),
            ("-i", (0.0, -1.0)),
            ("i", (0.0, 1.0)),
            ("3.0 + 4.0 i", (3.0, 4.0)),
            ("-1e2+0.5e-1i", (-100.0, 0.05)),
        ];
        for (s, (re, im)) in cases {
            let z = parse_complex(s).unwrap();
            assert_relative_eq!(z.re, re, max_relative = 1e-15);
            assert_relative_eq!(z.im, im, max_relative = 1e-15);
        }
        for bad in ["", "abc", "1+", "1+2j", "1++2i", "i2", "1.2.3"] {
            assert!(parse_complex(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn coeff_lists() {
        let v = parse_coeff_list("1,0,-2.5+1i").unwrap();
        assert_eq!(v.len(), 3);
        assert_relative_eq!(v[2].im, 1.0);
        assert!(parse_coeff_list("1,,2").is_err());
    }

    #[test]
    fn config_files() {
        let mut cfg = RunConfig::default();
        let text = "
            # comment line
            start_radius = 14.5
            newton_max_iter=80   # trailing comment
            abs_tol = 1e-13
        ";
        parse_config(text, &mut cfg).unwrap();
        assert_relative_eq!(cfg.shoot.start_radius, 14.5);
        assert_eq!(cfg.shoot.newton_max_iter, 80);
        assert_relative_eq!(cfg.quad.abs_tol, 1e-13);

        let mut cfg = RunConfig::default();
        assert!(parse_config("bogus_key = 1", &mut cfg).is_err());
        assert!(parse_config("start_radius 12", &mut cfg).is_err());
        assert!(parse_config("abs_tol = -1", &mut cfg).is_err());
    }
}
