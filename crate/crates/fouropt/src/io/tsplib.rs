//! Strict reader for a subset of the TSPLIB95 format.
//!
//! Supported: `TYPE: TSP` with `EDGE_WEIGHT_TYPE` either `EUC_2D` (node
//! coordinates, rounded Euclidean costs) or `EXPLICIT` with
//! `EDGE_WEIGHT_FORMAT` one of `FULL_MATRIX`, `UPPER_ROW`, `LOWER_DIAG_ROW`.
//! Anything else fails loudly, naming the offending keyword or value —
//! silently mis-reading an instance is worse than rejecting it.

use std::path::Path;

use crate::model::CostMatrix;

use super::{Instance, IoError};

/// TSPLIB's `nint`: round half up to the nearest integer.
fn nint(x: f64) -> f64 {
    (x + 0.5).floor()
}

fn malformed(line: usize, detail: impl Into<String>) -> IoError {
    IoError::Malformed {
        line,
        detail: detail.into(),
    }
}

/// Parse TSPLIB text. `default_name` is used when the file has no `NAME`.
pub fn parse_tsplib_str(text: &str, default_name: &str) -> Result<Instance, IoError> {
    // Non-blank lines with their 1-based numbers; sections are read with an
    // explicit cursor.
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut name: Option<String> = None;
    let mut type_ok = false;
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<String> = None;
    let mut weight_format: Option<String> = None;
    let mut coords: Option<Vec<(f64, f64)>> = None;
    let mut weights: Option<(Vec<f64>, String)> = None;

    let mut i = 0;
    while i < lines.len() {
        let (lineno, line) = lines[i];
        i += 1;
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (line, ""),
        };
        match key {
            "NAME" => name = Some(value.to_string()),
            "COMMENT" => {}
            "TYPE" => {
                if value != "TSP" {
                    return Err(IoError::Unsupported {
                        keyword: "TYPE".into(),
                        value: value.into(),
                    });
                }
                type_ok = true;
            }
            "DIMENSION" => {
                dimension = Some(
                    value
                        .parse()
                        .map_err(|_| malformed(lineno, "DIMENSION must be an integer"))?,
                );
            }
            "EDGE_WEIGHT_TYPE" => {
                if value != "EUC_2D" && value != "EXPLICIT" {
                    return Err(IoError::Unsupported {
                        keyword: "EDGE_WEIGHT_TYPE".into(),
                        value: value.into(),
                    });
                }
                weight_type = Some(value.to_string());
            }
            "EDGE_WEIGHT_FORMAT" => weight_format = Some(value.to_string()),
            "NODE_COORD_TYPE" => {
                if value != "TWOD_COORDS" {
                    return Err(IoError::Unsupported {
                        keyword: "NODE_COORD_TYPE".into(),
                        value: value.into(),
                    });
                }
            }
            "NODE_COORD_SECTION" => {
                let n = dimension.ok_or_else(|| IoError::Missing("DIMENSION".into()))?;
                let mut pts = vec![None::<(f64, f64)>; n];
                for _ in 0..n {
                    let Some(&(lno, l)) = lines.get(i) else {
                        return Err(IoError::WrongCount {
                            section: "NODE_COORD_SECTION".into(),
                            expected: n,
                            found: pts.iter().filter(|p| p.is_some()).count(),
                        });
                    };
                    i += 1;
                    let tokens: Vec<&str> = l.split_whitespace().collect();
                    let [id, x, y] = tokens[..] else {
                        return Err(malformed(lno, "expected `<id> <x> <y>`"));
                    };
                    let id: usize = id
                        .parse()
                        .map_err(|_| malformed(lno, "node id must be an integer"))?;
                    if id == 0 || id > n {
                        return Err(malformed(lno, format!("node id {id} outside 1..={n}")));
                    }
                    if pts[id - 1].is_some() {
                        return Err(malformed(lno, format!("node id {id} listed twice")));
                    }
                    let x: f64 = x
                        .parse()
                        .map_err(|_| malformed(lno, "coordinate must be a number"))?;
                    let y: f64 = y
                        .parse()
                        .map_err(|_| malformed(lno, "coordinate must be a number"))?;
                    pts[id - 1] = Some((x, y));
                }
                coords = Some(pts.into_iter().map(|p| p.expect("all ids seen")).collect());
            }
            "EDGE_WEIGHT_SECTION" => {
                let n = dimension.ok_or_else(|| IoError::Missing("DIMENSION".into()))?;
                let format = weight_format
                    .clone()
                    .ok_or_else(|| IoError::Missing("EDGE_WEIGHT_FORMAT".into()))?;
                let expected = match format.as_str() {
                    "FULL_MATRIX" => n * n,
                    "UPPER_ROW" => n * (n - 1) / 2,
                    "LOWER_DIAG_ROW" => n * (n + 1) / 2,
                    _ => {
                        return Err(IoError::Unsupported {
                            keyword: "EDGE_WEIGHT_FORMAT".into(),
                            value: format,
                        })
                    }
                };
                let mut values = Vec::with_capacity(expected);
                while values.len() < expected {
                    let Some(&(lno, l)) = lines.get(i) else { break };
                    if l.split_whitespace()
                        .next()
                        .is_some_and(|t| t.parse::<f64>().is_err())
                    {
                        break; // next keyword; count check below reports it
                    }
                    i += 1;
                    for token in l.split_whitespace() {
                        let v: f64 = token
                            .parse()
                            .map_err(|_| malformed(lno, format!("bad weight {token:?}")))?;
                        if values.len() == expected {
                            return Err(malformed(lno, "more weights than the format calls for"));
                        }
                        values.push(v);
                    }
                }
                if values.len() != expected {
                    return Err(IoError::WrongCount {
                        section: "EDGE_WEIGHT_SECTION".into(),
                        expected,
                        found: values.len(),
                    });
                }
                weights = Some((values, format));
            }
            "EOF" => break,
            other => return Err(IoError::UnsupportedKeyword(other.to_string())),
        }
    }

    if !type_ok {
        return Err(IoError::Missing("TYPE".into()));
    }
    let n = dimension.ok_or_else(|| IoError::Missing("DIMENSION".into()))?;
    let weight_type = weight_type.ok_or_else(|| IoError::Missing("EDGE_WEIGHT_TYPE".into()))?;

    let costs = match weight_type.as_str() {
        "EUC_2D" => {
            if let Some(format) = &weight_format {
                if format != "FUNCTION" {
                    return Err(IoError::Unsupported {
                        keyword: "EDGE_WEIGHT_FORMAT".into(),
                        value: format.clone(),
                    });
                }
            }
            let pts = coords.ok_or_else(|| IoError::Missing("NODE_COORD_SECTION".into()))?;
            CostMatrix::from_fn(n, |u, v| {
                let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
                nint((dx * dx + dy * dy).sqrt())
            })?
        }
        "EXPLICIT" => {
            let (values, format) =
                weights.ok_or_else(|| IoError::Missing("EDGE_WEIGHT_SECTION".into()))?;
            match format.as_str() {
                "FULL_MATRIX" => {
                    let rows: Vec<Vec<f64>> = values.chunks(n).map(|row| row.to_vec()).collect();
                    CostMatrix::from_rows(&rows)? // validates symmetry
                }
                "UPPER_ROW" => {
                    // Row-major strict upper triangle: (0,1) … (0,n-1), (1,2) …
                    let mut dense = vec![0.0; n * n];
                    let mut it = values.into_iter();
                    for u in 0..n {
                        for v in u + 1..n {
                            let w = it.next().expect("count validated");
                            dense[u * n + v] = w;
                        }
                    }
                    CostMatrix::from_fn(n, |u, v| dense[u * n + v])?
                }
                "LOWER_DIAG_ROW" => {
                    // Row-major lower triangle with diagonal; diagonal ignored.
                    let mut dense = vec![0.0; n * n];
                    let mut it = values.into_iter();
                    for u in 0..n {
                        for v in 0..=u {
                            let w = it.next().expect("count validated");
                            if u != v {
                                dense[v * n + u] = w;
                            }
                        }
                    }
                    CostMatrix::from_fn(n, |u, v| dense[u * n + v])?
                }
                _ => unreachable!("format validated at section read"),
            }
        }
        _ => unreachable!("weight type validated at keyword read"),
    };

    Ok(Instance {
        name: name.unwrap_or_else(|| default_name.to_string()),
        costs,
    })
}

/// Read a TSPLIB file; the file stem names the instance when `NAME` is absent.
pub fn read_tsplib(path: &Path) -> Result<Instance, IoError> {
    let text = std::fs::read_to_string(path)?;
    let default_name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_tsplib_str(&text, &default_name)
}
