//! Exact JSON encodings: rationals are strings `"p"` or `"p/q"`.

use ellfib_core::rankjump::{MazurCertificate, ScanReport};
use ellfib_core::rational::{fmt_rat, Rat};
use ellfib_core::Point;
use serde_json::{json, Value};

pub fn rat(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn curve_point(p: &Point<Rat>) -> Value {
    match p {
        Point::Zero => Value::String("O".into()),
        Point::Affine(x, y) => json!([fmt_rat(x), fmt_rat(y)]),
    }
}

pub fn certificate(c: &MazurCertificate) -> Value {
    json!({
        "non_torsion": c.non_torsion,
        "multiples": c.multiples.iter().map(curve_point).collect::<Vec<_>>(),
    })
}

pub fn scan_report(r: &ScanReport) -> Value {
    let fibers: Vec<Value> = r
        .fibers
        .iter()
        .map(|f| {
            json!({
                "t": rat(&f.t),
                "kodaira_ok": f.kodaira_ok,
                "degenerate": f.degenerate.map(|k| k.to_string()),
                "fiber": f.fiber.as_ref().map(|e| e.coeffs().iter().map(|c| rat(c)).collect::<Vec<_>>()),
                "points": f.points.iter().map(|p| json!({
                    "n": p.n,
                    "x": rat(&p.x),
                    "y": rat(&p.y),
                    "certificate": certificate(&p.certificate),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let s = &r.summary;
    json!({
        "fibers": fibers,
        "summary": {
            "multiples": s.multiples,
            "distinct_fibers": s.distinct_fibers,
            "certified_fibers": s.certified_fibers,
            "degenerate_fibers": s.degenerate_fibers,
            "skipped": s.skipped,
            "mw_rank_geometric_upper": s.mw_rank_geometric_upper,
            "known_generic_rank": s.known_generic_rank,
        },
    })
}

fn parse_rat(v: &Value) -> Option<Rat> {
    ellfib_core::rational::parse_rat(v.as_str()?)
}

fn parse_curve_point(v: &Value) -> Option<Point<Rat>> {
    match v {
        Value::String(s) if s == "O" => Some(Point::Zero),
        Value::Array(xy) if xy.len() == 2 => Some(Point::Affine(parse_rat(&xy[0])?, parse_rat(&xy[1])?)),
        _ => None,
    }
}

/// Re-read a scan document and check every point and certificate against
/// its fiber, independently of the in-memory report.
pub fn verify_scan_document(doc: &Value) -> bool {
    use ellfib_core::rankjump::mazur_nontorsion;
    use ellfib_core::WeierstrassModel;
    let Some(fibers) = doc["fibers"].as_array() else {
        return false;
    };
    fibers.iter().all(|f| {
        let points = f["points"].as_array().cloned().unwrap_or_default();
        let Some(coeffs) = f["fiber"].as_array() else {
            return points.is_empty();
        };
        let c: Option<Vec<Rat>> = coeffs.iter().map(parse_rat).collect();
        let Some(c) = c.filter(|c| c.len() == 5) else {
            return false;
        };
        let e = WeierstrassModel::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone());
        points.iter().all(|p| {
            let (Some(x), Some(y)) = (parse_rat(&p["x"]), parse_rat(&p["y"])) else {
                return false;
            };
            let q = Point::Affine(x, y);
            let Ok(cert) = mazur_nontorsion(&e, &q) else {
                return false;
            };
            let listed: Option<Vec<Point<Rat>>> = p["certificate"]["multiples"]
                .as_array()
                .and_then(|m| m.iter().map(parse_curve_point).collect::<Option<Vec<_>>>());
            listed.as_ref() == Some(&cert.multiples)
                && p["certificate"]["non_torsion"].as_bool() == Some(cert.non_torsion)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ellfib_core::rational::ratio;

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rat(&ratio(-6, 4)), Value::String("-3/2".into()));
        assert_eq!(rat(&ratio(8, 4)), Value::String("2".into()));
    }

    #[test]
    fn points_round_trip() {
        for p in [Point::Zero, Point::Affine(ratio(25, 4), ratio(-35, 8))] {
            assert_eq!(parse_curve_point(&curve_point(&p)), Some(p));
        }
        assert_eq!(parse_curve_point(&json!(["1"])), None);
    }
}
