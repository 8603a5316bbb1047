//! The boundary-data grammar accepted by `--phi`:
//!
//! ```text
//! constant:<c> | coord:<i> | poly:<c>*x<i>^<p>[*x<j>^<q>...][+...] | expcoord:<i> | gauss:<i>,<w>
//! ```

use crate::boundary_data::{BoundaryFunction, Monomial};
use std::str::FromStr;

fn number<T: FromStr>(token: &str, what: &str) -> Result<T, String> {
    token
        .trim()
        .parse()
        .map_err(|_| format!("malformed {what} '{token}'"))
}

fn index(token: &str) -> Result<usize, String> {
    let i: usize = number(token, "coordinate index")?;
    if i == 0 {
        return Err(format!("coordinate index out of range: {i}"));
    }
    Ok(i)
}

fn monomial(term: &str) -> Result<Monomial, String> {
    let mut factors = term.split('*');
    let coefficient = number(factors.next().unwrap_or(""), "polynomial coefficient")?;
    let mut powers = Vec::new();
    for factor in factors {
        let var = factor
            .trim()
            .strip_prefix('x')
            .ok_or_else(|| format!("malformed polynomial factor '{factor}'"))?;
        let (i, p) = match var.split_once('^') {
            Some((i, p)) => (index(i)?, number::<u32>(p, "polynomial exponent")?),
            None => (index(var)?, 1),
        };
        powers.push((i, p));
    }
    Ok(Monomial { coefficient, powers })
}

/// Parses a `--phi` value. Index ranges are checked later against `d`.
pub fn parse_phi(spec: &str) -> Result<BoundaryFunction, String> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| format!("malformed phi spec '{spec}'"))?;
    let parsed = match kind {
        "constant" => BoundaryFunction::Constant(number(body, "constant")?),
        "coord" => BoundaryFunction::Coordinate(index(body)?),
        "expcoord" => BoundaryFunction::ExpCoordinate(index(body)?),
        "poly" => BoundaryFunction::Polynomial(body.split('+').map(monomial).collect::<Result<_, _>>()?),
        "gauss" => {
            let (i, w) = body
                .split_once(',')
                .ok_or_else(|| format!("malformed gauss spec '{body}'"))?;
            let i = index(i)?;
            let width: f64 = number(w, "gauss width")?;
            // the centre is e_i; its length is fixed once d is known
            let mut center = vec![0.0; i];
            center[i - 1] = 1.0;
            BoundaryFunction::GaussianBump { center, width }
        }
        other => return Err(format!("unknown phi kind '{other}' in '{spec}'")),
    };
    Ok(parsed)
}

/// Pads the centre of a Gaussian bump to length `d`.
pub fn fit_to_dim(phi: BoundaryFunction, d: usize) -> BoundaryFunction {
    match phi {
        BoundaryFunction::GaussianBump { mut center, width } if center.len() < d => {
            center.resize(d, 0.0);
            BoundaryFunction::GaussianBump { center, width }
        }
        other => other,
    }
}
