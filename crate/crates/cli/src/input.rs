use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use ctk_core::catalog::{neighborhood_family, FamilyParam};
use ctk_core::{AffineMap, Point, Region, Scalar, TopologyId};

use crate::error::{CliError, CliResult};

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Header-free `t,s` rows; blank lines are skipped, row numbers are 1-based
/// line numbers.
pub fn parse_sequence_csv(text: &str) -> CliResult<Vec<Point>> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let p = line
            .parse::<Point>()
            .map_err(|e| CliError::Usage(format!("row {}: {e}", i + 1)))?;
        points.push(p);
    }
    if points.is_empty() {
        return Err(CliError::Usage("sequence file has no rows".into()));
    }
    Ok(points)
}

pub fn parse_region_json(text: &str) -> CliResult<Region> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("region JSON: {e}")))?;
    Region::deserialize(&value).map_err(|_| {
        let (path, message) = locate_schema_error(&value, "$".to_string());
        CliError::Usage(format!("region schema error at {path}: {message}"))
    })
}

/// Path and message of the deepest subtree that fails to deserialize.
/// Internally tagged enums buffer their content, so serde alone reports no
/// position inside the tree.
fn locate_schema_error(value: &Value, path: String) -> (String, String) {
    let mut children = Vec::new();
    if let Value::Object(map) = value {
        for key in ["of", "left", "right"] {
            match map.get(key) {
                Some(Value::Array(items)) => children.extend(
                    items
                        .iter()
                        .enumerate()
                        .map(|(i, item)| (format!("{path}.{key}[{i}]"), item)),
                ),
                Some(child) => children.push((format!("{path}.{key}"), child)),
                None => {}
            }
        }
    }
    for (child_path, child) in children {
        if Region::deserialize(child).is_err() {
            return locate_schema_error(child, child_path);
        }
    }
    let message = Region::deserialize(value)
        .err()
        .map_or_else(String::new, |e| e.to_string());
    (path, message)
}

/// A topology index or the path of a region JSON file.
pub enum RegionSource {
    Topology(TopologyId),
    File(Region),
}

impl RegionSource {
    pub fn parse(arg: &str) -> CliResult<RegionSource> {
        if let Ok(index) = arg.parse::<u8>() {
            return Ok(RegionSource::Topology(TopologyId::new(index)?));
        }
        parse_region_json(&read_file(Path::new(arg))?).map(RegionSource::File)
    }

    /// The region itself, or the topology's neighborhood member at `anchor`.
    pub fn region(self, anchor: &Point, eps: &Scalar) -> CliResult<Region> {
        match self {
            RegionSource::File(region) => Ok(region),
            RegionSource::Topology(tid) => {
                Ok(neighborhood_family(tid, anchor).member(&FamilyParam::Scale(eps.clone()))?)
            }
        }
    }
}

/// `boost:k`, `translate:t,s`, `dilate:k`, `reflect-time`, `reflect-space`,
/// `matrix:a,b,c,d` or `matrix:a,b,c,d,t,s`.
pub fn parse_map_spec(spec: &str) -> CliResult<AffineMap> {
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let scalars = || -> CliResult<Vec<Scalar>> {
        arg.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<Scalar>()
                    .map_err(|e| CliError::Usage(format!("map spec {spec:?}: {e}")))
            })
            .collect()
    };
    let arity = |n: &[usize]| -> CliResult<Vec<Scalar>> {
        let values = scalars()?;
        if n.contains(&values.len()) {
            Ok(values)
        } else {
            Err(CliError::Usage(format!(
                "map spec {spec:?}: expected {n:?} values, got {}",
                values.len()
            )))
        }
    };
    let map = match name {
        "boost" => AffineMap::boost(&arity(&[1])?[0])?,
        "dilate" => {
            let k = arity(&[1])?.remove(0);
            if k.is_zero() {
                return Err(CliError::Usage("dilatation factor must be nonzero".into()));
            }
            AffineMap::dilatation(k)
        }
        "translate" => {
            let v = arity(&[2])?;
            AffineMap::translation(Point::new(v[0].clone(), v[1].clone()))
        }
        "reflect-time" if arg.is_empty() => AffineMap::time_reflection(),
        "reflect-space" if arg.is_empty() => AffineMap::space_reflection(),
        "matrix" => {
            let v = arity(&[4, 6])?;
            let shift = match v.len() {
                6 => Point::new(v[4].clone(), v[5].clone()),
                _ => Point::origin(),
            };
            AffineMap::new(
                [[v[0].clone(), v[1].clone()], [v[2].clone(), v[3].clone()]],
                shift,
            )
        }
        _ => return Err(CliError::Usage(format!("unknown map spec {spec:?}"))),
    };
    if !map.is_invertible() {
        return Err(CliError::Core(ctk_core::Error::SingularMap));
    }
    Ok(map)
}

/// `lo:hi` with corners written `t,s`.
pub fn parse_window(text: &str) -> CliResult<(Point, Point)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("window {text:?} must be lo:hi")))?;
    Ok((lo.parse()?, hi.parse()?))
}

/// `WxH`.
pub fn parse_resolution(text: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("resolution {text:?} must be WxH"));
    let (w, h) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((w.parse().map_err(|_| bad())?, h.parse().map_err(|_| bad())?))
}
