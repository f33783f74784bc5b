//! Text form of Young functions: `power:4`, `scaled-power:4`, `linear`,
//! `indicator`, `pwl:[t0,t1];[m0,m1]`, `interp:<base>,s=<s>` and
//! `scaled:<c>,<inner>`.

use std::fmt;
use std::str::FromStr;

use super::{interpolate, PiecewiseLinear, YoungFunction};
use crate::error::{Error, Result};

fn parse_number(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("invalid {what} `{s}`")))
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|x| parse_number(x, "list entry")).collect()
}

fn reparse(e: Error) -> Error {
    match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    }
}

impl FromStr for YoungFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "linear" => return Ok(Self::Linear),
            "indicator" => return Ok(Self::IndicatorBand),
            _ => {}
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unrecognized Young function `{s}`")))?;
        match kind {
            "power" => Self::power(parse_number(rest, "exponent")?).map_err(reparse),
            "scaled-power" => Self::scaled_power(parse_number(rest, "exponent")?).map_err(reparse),
            "pwl" => {
                let (b, m) = rest
                    .split_once(';')
                    .ok_or_else(|| Error::Parse("pwl needs `[breakpoints];[slopes]`".into()))?;
                Self::pwl(parse_list(b)?, parse_list(m)?).map_err(reparse)
            }
            "interp" => {
                let (base, s_part) = rest
                    .rsplit_once(",s=")
                    .ok_or_else(|| Error::Parse("interp needs `<base>,s=<value>`".into()))?;
                let base: YoungFunction = base.parse()?;
                interpolate(&base, parse_number(s_part, "interpolation parameter")?)
                    .map_err(reparse)
            }
            "scaled" => {
                let (c, inner) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::Parse("scaled needs `<factor>,<inner>`".into()))?;
                Self::scaled_by(parse_number(c, "scale factor")?, inner.parse()?).map_err(reparse)
            }
            other => Err(Error::Parse(format!("unknown Young function kind `{other}`"))),
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[f64]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("pwl:")?;
        write_list(f, self.breakpoints())?;
        f.write_str(";")?;
        write_list(f, self.slopes())
    }
}

impl fmt::Display for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Power(p) => write!(f, "power:{p}"),
            Self::ScaledPower(p) => write!(f, "scaled-power:{p}"),
            Self::Linear => f.write_str("linear"),
            Self::IndicatorBand => f.write_str("indicator"),
            Self::PiecewiseLinear(g) => write!(f, "{g}"),
            Self::Interpolated { base, s } => write!(f, "interp:{base},s={s}"),
            Self::ScaledBy { factor, inner } => write!(f, "scaled:{factor},{inner}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "power:4",
            "scaled-power:1.5",
            "linear",
            "indicator",
            "pwl:[0,1,3];[1,2,inf]",
            "interp:power:6,s=0.5",
            "interp:pwl:[0,1];[1,100],s=0.5",
            "scaled:0.25,power:2",
        ] {
            let phi: YoungFunction = s.parse().unwrap();
            assert_eq!(phi.to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        for s in ["power:1", "power:x", "cube", "pwl:[0];", "interp:power:2,s=2", "interp:indicator,s=0.5"] {
            assert!(matches!(s.parse::<YoungFunction>(), Err(Error::Parse(_))), "{s}");
        }
    }
}
