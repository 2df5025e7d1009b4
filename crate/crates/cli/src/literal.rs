//! Element literals: `δ_s` / `delta_s` for basis deltas, or a JSON object
//! mapping arrows to complex "a+bi" strings.

use std::collections::BTreeMap;

use gcorr_core::algebra::AlgebraElem;
use gcorr_core::groupoid::FiniteGroupoid;
use gcorr_core::numeric::{c64, C64};

use crate::schema::CliError;

/// Parses "a+bi" complex literals: "1", "-2/…" is not allowed (floats
/// only), "3+2i", "1-i", "i", "2.5i".
pub fn parse_complex(s: &str) -> Result<C64, CliError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(CliError::BadElement("empty complex literal".into()));
    }
    let bad = |s: &str| CliError::BadElement(format!("cannot parse complex literal {s:?}"));
    let parse_part = |t: &str| -> Result<f64, CliError> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad(t)),
        }
    };
    if let Some(im) = s.strip_suffix('i') {
        // Split the imaginary tail from a possible real head at the last
        // +/- that is not an exponent sign and not leading.
        let chars: Vec<char> = im.chars().collect();
        let mut split = None;
        for i in (1..chars.len()).rev() {
            if (chars[i] == '+' || chars[i] == '-')
                && chars[i - 1] != 'e'
                && chars[i - 1] != 'E'
            {
                split = Some(i);
                break;
            }
        }
        match split {
            None => Ok(c64(0.0, parse_part(im)?)),
            Some(i) => {
                let (re, imag) = im.split_at(i);
                Ok(c64(re.parse::<f64>().map_err(|_| bad(re))?, parse_part(imag)?))
            }
        }
    } else {
        Ok(c64(s.parse::<f64>().map_err(|_| bad(&s))?, 0.0))
    }
}

/// Renders with 17 significant digits so reports are reproducible and
/// re-parse to the same double.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn format_complex(z: C64) -> String {
    if z.im >= 0.0 {
        format!("{}+{}i", format_f64(z.re), format_f64(z.im))
    } else {
        format!("{}-{}i", format_f64(z.re), format_f64(-z.im))
    }
}

/// Parses an algebra-element literal over the given groupoid.
pub fn parse_element(literal: &str, groupoid: &FiniteGroupoid) -> Result<AlgebraElem, CliError> {
    let literal = literal.trim();
    let check_arrow = |arrow: &str| -> Result<(), CliError> {
        if groupoid.arrows().iter().any(|a| a == arrow) {
            Ok(())
        } else {
            Err(CliError::BadElement(format!("unknown arrow {arrow:?}")))
        }
    };
    for prefix in ["δ_", "delta_"] {
        if let Some(arrow) = literal.strip_prefix(prefix) {
            check_arrow(arrow)?;
            return Ok(AlgebraElem::delta(arrow));
        }
    }
    if literal.starts_with('{') {
        let map: BTreeMap<String, String> = serde_json::from_str(literal)
            .map_err(|e| CliError::BadElement(e.to_string()))?;
        let mut out = AlgebraElem::zero();
        for (arrow, value) in &map {
            check_arrow(arrow)?;
            out.set(arrow, parse_complex(value)?);
        }
        return Ok(out);
    }
    // A bare arrow name is its delta function.
    check_arrow(literal)?;
    Ok(AlgebraElem::delta(literal))
}
