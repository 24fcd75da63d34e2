//! JSON and SVG forms of a realization.
//!
//! Coordinates are exact rationals written as `"p/q"` strings (or plain
//! integers as `"p"`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use super::geometry::Point;
use super::{Q, Realization, Region};
use crate::error::{Error, Result};

fn q_text(v: Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn q_parse(v: &Value) -> Result<Q> {
    let bad = || Error::Document(format!("expected a rational like \"3/4\", got {v}"));
    if let Some(i) = v.as_i64() {
        return Ok(Q::from_integer(i as i128));
    }
    let s = v.as_str().ok_or_else(bad)?;
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: i128 = n.parse().map_err(|_| bad())?;
    let d: i128 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(Error::Document("zero denominator".to_string()));
    }
    Ok(Q::new(n, d))
}

pub fn to_json(r: &Realization) -> Value {
    let regions: Vec<Value> = r
        .regions
        .iter()
        .map(|(&i, reg)| match reg {
            Region::Interval(p, q) => json!({"neuron": i, "interval": [q_text(*p), q_text(*q)]}),
            Region::Polygon(ps) => {
                let pts: Vec<Value> = ps.iter().map(|p| json!([q_text(p.x), q_text(p.y)])).collect();
                json!({"neuron": i, "polygon": pts})
            }
        })
        .collect();
    json!({"dimension": r.dimension, "regions": regions})
}

pub fn from_json(v: &Value) -> Result<Realization> {
    let doc = |m: &str| Error::Document(m.to_string());
    let dimension = v.get("dimension").and_then(Value::as_u64).ok_or_else(|| doc("missing \"dimension\""))?;
    if dimension != 1 && dimension != 2 {
        return Err(doc("\"dimension\" must be 1 or 2"));
    }
    let list = v.get("regions").and_then(Value::as_array).ok_or_else(|| doc("missing \"regions\" array"))?;
    let mut regions = BTreeMap::new();
    for item in list {
        let neuron = item
            .get("neuron")
            .and_then(Value::as_u64)
            .filter(|&i| i >= 1 && i <= crate::code::MAX_NEURONS as u64)
            .ok_or_else(|| doc("region needs a \"neuron\" index in range"))?;
        let region = if let Some(iv) = item.get("interval") {
            match iv.as_array().map(Vec::as_slice) {
                Some([p, q]) => Region::Interval(q_parse(p)?, q_parse(q)?),
                _ => return Err(doc("\"interval\" must have two endpoints")),
            }
        } else if let Some(poly) = item.get("polygon").and_then(Value::as_array) {
            let mut pts = Vec::with_capacity(poly.len());
            for p in poly {
                match p.as_array().map(Vec::as_slice) {
                    Some([x, y]) => pts.push(Point::new(q_parse(x)?, q_parse(y)?)),
                    _ => return Err(doc("polygon vertices must be [x, y] pairs")),
                }
            }
            Region::Polygon(pts)
        } else {
            return Err(doc("region needs \"interval\" or \"polygon\""));
        };
        if regions.insert(neuron as crate::code::NeuronId, region).is_some() {
            return Err(Error::Document(format!("neuron {neuron} appears twice")));
        }
    }
    Ok(Realization { dimension: dimension as u8, regions })
}

fn f(v: Q) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

const PALETTE: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

/// Renders translucent regions with neuron labels. One-dimensional regions
/// are drawn as stacked bars.
pub fn to_svg(r: &Realization) -> String {
    let scale = 40.0;
    let pad = 20.0;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for reg in r.regions.values() {
        match reg {
            Region::Interval(p, q) => xs.extend([f(*p), f(*q)]),
            Region::Polygon(ps) => {
                for p in ps {
                    xs.push(f(p.x));
                    ys.push(f(p.y));
                }
            }
        }
    }
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (x0, x1) = if xs.is_empty() { (0.0, 1.0) } else { (min(&xs), max(&xs)) };
    let (y0, y1) = if ys.is_empty() { (0.0, r.regions.len() as f64 * 0.5) } else { (min(&ys), max(&ys)) };
    let w = (x1 - x0) * scale + 2.0 * pad;
    let h = (y1 - y0) * scale + 2.0 * pad;
    let px = |x: f64| (x - x0) * scale + pad;
    let py = |y: f64| h - ((y - y0) * scale + pad);

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#);
    for (k, (&i, reg)) in r.regions.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        match reg {
            Region::Interval(p, q) => {
                let y = pad + k as f64 * 0.5 * scale;
                let _ = writeln!(
                    out,
                    r#"  <rect x="{:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{color}" fill-opacity="0.4" stroke="{color}"/>"#,
                    px(f(*p)),
                    (f(*q) - f(*p)) * scale,
                    0.4 * scale
                );
                let _ = writeln!(out, r#"  <text x="{:.2}" y="{:.2}" font-size="12">{i}</text>"#, px(f(*p)) + 3.0, y + 13.0);
            }
            Region::Polygon(ps) => {
                let pts: Vec<String> = ps.iter().map(|p| format!("{:.2},{:.2}", px(f(p.x)), py(f(p.y)))).collect();
                let _ = writeln!(
                    out,
                    r#"  <polygon points="{}" fill="{color}" fill-opacity="0.25" stroke="{color}"/>"#,
                    pts.join(" ")
                );
                let n = ps.len() as f64;
                let cx = ps.iter().map(|p| f(p.x)).sum::<f64>() / n;
                let cy = ps.iter().map(|p| f(p.y)).sum::<f64>() / n;
                let _ = writeln!(out, r#"  <text x="{:.2}" y="{:.2}" font-size="12">{i}</text>"#, px(cx), py(cy));
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::parse_code;
    use crate::realize::build_realization;

    #[test]
    fn json_round_trip() {
        for s in ["134,1357,356,13,35", "134,1357,257,356,13,35,57"] {
            let (r, _) = build_realization(&parse_code(s).unwrap()).unwrap().unwrap();
            let back = from_json(&to_json(&r)).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn rational_strings() {
        assert_eq!(q_parse(&json!("-6/4")).unwrap(), Q::new(-3, 2));
        assert_eq!(q_parse(&json!(5)).unwrap(), Q::from_integer(5));
        assert!(q_parse(&json!("1/0")).is_err());
        assert!(q_parse(&json!(0.5)).is_err());
        assert_eq!(q_text(Q::new(6, 4)), "3/2");
    }

    #[test]
    fn malformed_documents() {
        assert!(from_json(&json!({"dimension": 3, "regions": []})).is_err());
        assert!(from_json(&json!({"dimension": 1, "regions": [{"neuron": 1}]})).is_err());
        let dup = json!({"dimension": 1, "regions": [
            {"neuron": 1, "interval": ["0", "1"]}, {"neuron": 1, "interval": ["2", "3"]}]});
        assert!(from_json(&dup).is_err());
    }

    #[test]
    fn svg_mentions_every_neuron() {
        let (r, _) = build_realization(&parse_code("134,1357,257,356,13,35,57").unwrap()).unwrap().unwrap();
        let svg = to_svg(&r);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polygon").count(), r.regions.len());
    }
}
