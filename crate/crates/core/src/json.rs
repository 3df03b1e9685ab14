//! Validating decoders for the JSON and text inputs the tools accept.
//!
//! Every decoder rejects malformed input with an error and never panics.

use crate::error::{Error, Result};
use crate::geometry::{HeisenbergPoint, HorizontalVector, VerticalLine};
use crate::lifting::PlaneMap;
use crate::measure::DiscreteMeasure;
use crate::radon::RadonSample;
use crate::suite::SuiteConfig;

/// `{"x":[…],"y":[…],"z":…}`.
pub fn parse_point(text: &str) -> Result<HeisenbergPoint> {
    let q: HeisenbergPoint = serde_json::from_str(text)?;
    q.validate()?;
    Ok(q)
}

/// `{"xt":[…],"yt":[…]}`.
pub fn parse_line(text: &str) -> Result<VerticalLine> {
    let line: VerticalLine = serde_json::from_str(text)?;
    line.validate()?;
    Ok(line)
}

/// `{"dim":n,"atoms":[{"x","y","z","w"}…]}`; duplicate atoms are merged.
pub fn parse_measure(text: &str) -> Result<DiscreteMeasure> {
    Ok(serde_json::from_str(text)?)
}

/// `{"line":…,"projection":…}`, with the projection supported on the line.
pub fn parse_radon_sample(text: &str) -> Result<RadonSample> {
    let sample: RadonSample = serde_json::from_str(text)?;
    sample.validate()?;
    Ok(sample)
}

/// A lookup table `[{"from":[…],"to":[…]}…]`.
pub fn parse_plane_map(text: &str) -> Result<PlaneMap> {
    PlaneMap::from_json(text)
}

/// Comma-separated `u…,v…` with an even number of finite components.
pub fn parse_horizontal(text: &str) -> Result<HorizontalVector> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("invalid number `{}`", s.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.is_empty() || coords.len() % 2 != 0 {
        return Err(Error::Parse(
            "a horizontal vector needs an even, positive number of components".into(),
        ));
    }
    let (u, v) = coords.split_at(coords.len() / 2);
    HorizontalVector::new(u.to_vec(), v.to_vec())
}

/// Flat `key=value` suite configuration.
pub fn parse_config(text: &str) -> Result<SuiteConfig> {
    SuiteConfig::parse(text)
}
