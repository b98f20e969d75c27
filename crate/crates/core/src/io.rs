// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! Plain-text curve files.
//!
//! ```text
//! N 4 closed
//! 0 0
//! 1 0
//! ...
//! ```
//!
//! One header line `N <count> closed`, then `<count>` lines of `x y`.
//! Coordinates are written with 17 significant digits, which round-trips
//! every `f64`.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::curve::DiscreteCurve;
use crate::error::CurveError;
use crate::point::Point2;

pub fn write_curve<W: Write>(curve: &DiscreteCurve, mut out: W) -> io::Result<()> {
    writeln!(out, "N {} closed", curve.len())?;
    for p in curve.vertices() {
        writeln!(out, "{:.16e} {:.16e}", p.x, p.y)?;
    }
    Ok(())
}

pub fn curve_to_string(curve: &DiscreteCurve) -> String {
    let mut buf = Vec::new();
    write_curve(curve, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("curve text is ASCII")
}

pub fn parse_curve(text: &str) -> Result<DiscreteCurve, CurveError> {
    let parse_err = |line: usize, msg: String| CurveError::Parse { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty curve file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let count = match fields.as_slice() {
        ["N", count, "closed"] => count
            .parse::<usize>()
            .map_err(|_| parse_err(line, format!("bad vertex count '{count}'")))?,
        _ => {
            return Err(parse_err(
                line,
                format!("expected header 'N <count> closed', found '{header}'"),
            ))
        }
    };

    let mut vertices = Vec::with_capacity(count);
    for (line, text) in lines {
        let mut it = text.split_whitespace();
        let mut coord = |name: &str| -> Result<f64, CurveError> {
            let field = it
                .next()
                .ok_or_else(|| parse_err(line, format!("missing {name} coordinate")))?;
            field
                .parse::<f64>()
                .map_err(|_| parse_err(line, format!("bad {name} coordinate '{field}'")))
        };
        let x = coord("x")?;
        let y = coord("y")?;
        if it.next().is_some() {
            return Err(parse_err(line, "expected exactly two coordinates".into()));
        }
        vertices.push(Point2::new(x, y));
    }
    if vertices.len() != count {
        return Err(parse_err(
            line,
            format!("header declares {count} vertices, found {}", vertices.len()),
        ));
    }
    DiscreteCurve::new(vertices)
}

pub fn read_curve_file(path: &Path) -> Result<DiscreteCurve, crate::Error> {
    let text = fs::read_to_string(path).map_err(|e| crate::Error::io(path, e))?;
    Ok(parse_curve(&text)?)
}

pub fn write_curve_file(curve: &DiscreteCurve, path: &Path) -> Result<(), crate::Error> {
    fs::write(path, curve_to_string(curve)).map_err(|e| crate::Error::io(path, e))
}
