//! The five commands. Each returns a human-readable text and a JSON value.

use std::fmt::Write as _;

use ellfib_core::basechange::{base_change, k3_criterion, new_section, NewSection};
use ellfib_core::mordell_weil::{gram_matrix, gram_rank, height, is_torsion, Section};
use ellfib_core::quadext::QuadExt;
use ellfib_core::quadorigin::{parse_multiset, quadratic_origin_check, QuadOrigin};
use ellfib_core::rankjump::{nagao_sum, point_search, rank_jump_scan};
use ellfib_core::rational::fmt_rat;
use ellfib_core::twist::rank_over_extension;
use ellfib_core::{classify, fiber_configuration, FiberConfig, Place, Point, RatFunc, SurfaceInfo};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::json;
use crate::manifest::Manifest;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

pub fn place_label(p: &Place, var: char) -> String {
    match p {
        Place::Infinity => format!("{var}=inf"),
        Place::Finite(_) => match p.rational_point() {
            Some(a) => format!("{var}={}", fmt_rat(&a)),
            None => p.render(&var.to_string()),
        },
        Place::RationalPrime(q) => format!("p={q}"),
    }
}

fn func(r: &RatFunc, var: char) -> String {
    r.render(&var.to_string())
}

fn quad(q: &QuadExt, var: char) -> String {
    if q.b.is_zero() {
        return func(&q.a, var);
    }
    format!("({}) + ({})*w", func(&q.a, var), func(&q.b, var))
}

fn section_text(p: &Section, var: char) -> String {
    match p {
        Point::Zero => "O".into(),
        Point::Affine(x, y) => format!("({}, {})", func(x, var), func(y, var)),
    }
}

fn section_json(p: &Section, var: char) -> Value {
    match p {
        Point::Zero => Value::String("O".into()),
        Point::Affine(x, y) => json!([func(x, var), func(y, var)]),
    }
}

fn config_table(out: &mut String, config: &FiberConfig, var: char) {
    let _ = writeln!(out, "{:<20} {:>3} {:<6} {:>3} {:>3}", "place", "deg", "type", "m", "e");
    for d in config.entries() {
        let _ = writeln!(
            out,
            "{:<20} {:>3} {:<6} {:>3} {:>3}",
            place_label(&d.place, var),
            d.place.residue_degree(),
            d.kodaira.to_string(),
            d.components,
            d.euler
        );
    }
}

fn config_json(config: &FiberConfig, var: char) -> Value {
    Value::Array(
        config
            .entries()
            .iter()
            .map(|d| {
                json!({
                    "place": place_label(&d.place, var),
                    "degree": d.place.residue_degree(),
                    "type": d.kodaira.to_string(),
                    "components": d.components,
                    "euler": d.euler,
                })
            })
            .collect(),
    )
}

fn info_text(out: &mut String, info: &SurfaceInfo) {
    let _ = writeln!(out, "Euler number: {}", info.euler);
    let _ = writeln!(out, "chi: {}", info.chi);
    let _ = writeln!(out, "Class: {}", info.class);
    let _ = writeln!(out, "Trivial lattice rank: {}", info.trivial_lattice_rank);
    match info.mw_rank_geometric_upper {
        Some(b) => {
            let _ = writeln!(out, "MW geometric upper bound: {b}");
        }
        None => {
            let _ = writeln!(out, "MW geometric upper bound: unknown");
        }
    }
    let _ = writeln!(out, "NS rank over Q >= {}", info.ns_rank_lower_over_k);
}

fn info_json(info: &SurfaceInfo) -> Value {
    json!({
        "euler": info.euler,
        "chi": info.chi,
        "class": info.class.to_string(),
        "trivial_lattice_rank": info.trivial_lattice_rank,
        "mw_rank_geometric_upper": info.mw_rank_geometric_upper,
        "ns_rank_lower_over_k": info.ns_rank_lower_over_k,
    })
}

pub fn analyze(m: &Manifest, primes: Option<u64>) -> Result<Report> {
    let var = m.var();
    let model = m.model()?;
    let config = fiber_configuration(&model)?;
    let info = classify(&config)?;
    let mut text = String::new();
    config_table(&mut text, &config, var);
    info_text(&mut text, &info);
    let mut doc = json!({ "fibers": config_json(&config, var), "surface": info_json(&info) });
    if let Some(n) = primes.or(m.options.primes) {
        let s = nagao_sum(&model, n)?;
        let _ = writeln!(text, "Nagao average S({n}): {}", fmt_rat(&s));
        doc["nagao"] = json!({ "primes": n, "value": json::rat(&s) });
    }
    Ok(Report { text, json: doc })
}

pub fn basechange(m: &Manifest) -> Result<Report> {
    let var = m.var();
    let model = m.model()?;
    let map = m.base_change_map()?;
    let report = base_change(&model, &map)?;
    let mut text = String::new();
    let _ = writeln!(text, "Base change {var} -> {} (degree {})", func(map.phi(), var), map.degree());
    let mut ram = Vec::new();
    for r in &report.ramification {
        let (up, down) = (place_label(&r.upstairs, var), place_label(&r.downstairs, var));
        let _ = writeln!(text, "ramified: {up} over {down}, index {}", r.index);
        ram.push(json!({ "upstairs": up, "downstairs": down, "index": r.index }));
    }
    let _ = writeln!(text, "{:<20} {:<10} {:<10}", "place", "predicted", "recomputed");
    let mut rows = Vec::new();
    let n = report.predicted.len().max(report.recomputed.len());
    for i in 0..n {
        let p = report.predicted.get(i);
        let r = report.recomputed.get(i);
        let place = p.or(r).map(|x| place_label(&x.0, var)).unwrap_or_default();
        let show = |x: Option<&(Place, ellfib_core::KodairaType)>| x.map_or("-".to_string(), |x| x.1.to_string());
        let _ = writeln!(text, "{:<20} {:<10} {:<10}", place, show(p), show(r));
        rows.push(json!({ "place": place, "predicted": show(p), "recomputed": show(r) }));
        if p != r {
            return Err(CliError::Mismatch(place));
        }
    }
    let _ = writeln!(text, "Prediction agrees with recomputation");
    let config = fiber_configuration(&model)?;
    let k3 = match k3_criterion(&config, &map) {
        Ok(true) => "satisfied".to_string(),
        Ok(false) => "not satisfied".to_string(),
        Err(e) => format!("not applicable ({e})"),
    };
    let _ = writeln!(text, "K3 criterion: {k3}");
    let pulled_info = classify(&report.pulled_config)?;
    let _ = writeln!(text, "Pullback:");
    config_table(&mut text, &report.pulled_config, var);
    info_text(&mut text, &pulled_info);
    let mut doc = json!({
        "phi": func(map.phi(), var),
        "ramification": ram,
        "configuration": rows,
        "agrees": true,
        "k3_criterion": k3,
        "pullback": { "fibers": config_json(&report.pulled_config, var), "surface": info_json(&pulled_info) },
    });
    if let Some(ms) = m.multisection()? {
        match new_section(&model, &ms)? {
            NewSection::Rational(p) => {
                let _ = writeln!(text, "New section: {}", section_text(&p, var));
                doc["new_section"] = section_json(&p, var);
            }
            NewSection::Quadratic { g, point } => {
                let Point::Affine(x, y) = &point else {
                    unreachable!("new_section builds an affine point")
                };
                let _ = writeln!(text, "New section over w^2 = {}: x = {}, y = {}", func(&g, var), quad(x, var), quad(y, var));
                doc["new_section"] = json!({ "ext": func(&g, var), "x": quad(x, var), "y": quad(y, var) });
                if ms.map.degree() == 1 && !m.sections.is_empty() {
                    let old: Vec<Section> = m.sections()?.into_iter().map(|s| s.1).collect();
                    let r = rank_over_extension(&model, &config, &old, &g, &point)?;
                    let _ = writeln!(text, "Rank with the new section: {} -> {}", r.old_rank, r.new_rank);
                    doc["rank_over_extension"] = json!({ "old": r.old_rank, "new": r.new_rank });
                }
            }
        }
    }
    Ok(Report { text, json: doc })
}

pub fn quadorigin(src: &str, partial: bool) -> Result<Report> {
    let types = parse_multiset(src)?;
    let verdict = quadratic_origin_check(&types, partial)?;
    let listed: Vec<String> = types.iter().map(|t| t.to_string()).collect();
    Ok(match verdict {
        QuadOrigin::Possible(w) => Report {
            text: format!("Possible\nwitness: {w}\ndownstairs: {}\n", join(&w.downstairs())),
            json: json!({ "input": listed, "verdict": "possible", "witness": w.to_string(), "downstairs": join(&w.downstairs()) }),
        },
        QuadOrigin::Impossible(reasons) => {
            let mut text = "Impossible\n".to_string();
            for r in &reasons {
                let _ = writeln!(text, "reason: {r}");
            }
            Report { text, json: json!({ "input": listed, "verdict": "impossible", "reasons": reasons }) }
        }
    })
}

fn join(v: &[ellfib_core::KodairaType]) -> String {
    v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn heights(m: &Manifest) -> Result<Report> {
    let var = m.var();
    let model = m.model()?;
    let config = fiber_configuration(&model)?;
    let named = m.sections()?;
    if named.is_empty() {
        return Err(CliError::Manifest("no [sections] given".into()));
    }
    let sections: Vec<Section> = named.iter().map(|s| s.1.clone()).collect();
    let gram = gram_matrix(&model, &config, &sections)?;
    let data = gram_rank(&model, &config, &sections)?;
    let mut text = String::new();
    let mut per = Vec::new();
    for (name, p) in &named {
        let h = height(&model, &config, p)?;
        let tors = is_torsion(&model, &config, p)?;
        let verdict = if tors { "torsion" } else { "non-torsion" };
        let _ = writeln!(text, "{name} = {}: height {}, {verdict}", section_text(p, var), fmt_rat(&h));
        per.push(json!({ "name": name, "point": section_json(p, var), "height": json::rat(&h), "torsion": tors }));
    }
    let _ = writeln!(text, "Gram matrix:");
    for row in &gram {
        let _ = writeln!(text, "  [{}]", row.iter().map(fmt_rat).collect::<Vec<_>>().join(", "));
    }
    let _ = writeln!(text, "rank: {}", data.rank);
    let _ = writeln!(text, "determinant: {}", fmt_rat(&data.determinant));
    let independent = data.rank == sections.len();
    let _ = writeln!(text, "{}", if independent { "independent" } else { "dependent" });
    let doc = json!({
        "sections": per,
        "gram": gram.iter().map(|r| r.iter().map(json::rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "rank": data.rank,
        "determinant": json::rat(&data.determinant),
        "independent": independent,
    });
    Ok(Report { text, json: doc })
}

pub fn scan(m: &Manifest, height_bound: Option<u64>) -> Result<Report> {
    let var = m.var();
    let model = m.model()?;
    let second = m.second_fibration()?;
    let count = m.scan.as_ref().map_or(0, |s| s.count);
    let known: Vec<Section> = m.sections()?.into_iter().map(|s| s.1).collect();
    let report = rank_jump_scan(&model, &second, count, &known)?;
    if !report.verify() {
        return Err(CliError::Core(ellfib_core::Error::Consistency("scan certificates do not re-verify".into())));
    }
    let mut doc = json::scan_report(&report);
    let mut text = String::new();
    let _ = writeln!(text, "{:<12} {:<5} {:<40} status", var, "n", "point");
    for (i, f) in report.fibers.iter().enumerate() {
        let t = fmt_rat(&f.t);
        if let Some(k) = f.degenerate {
            let _ = writeln!(text, "{t:<12} {:<5} {:<40} degenerate fiber {k}", "-", "-");
            continue;
        }
        for p in &f.points {
            let pt = format!("({}, {})", fmt_rat(&p.x), fmt_rat(&p.y));
            let status = if p.certificate.non_torsion { "non-torsion (certified)" } else { "torsion" };
            let _ = writeln!(text, "{t:<12} {:<5} {pt:<40} {status}", p.n);
        }
        if let (Some(h), Some(e)) = (height_bound.or(m.options.height_bound), &f.fiber) {
            let found = point_search(e, h);
            let _ = writeln!(text, "{t:<12} {:<5} {} points of naive height <= {h}", "", found.len());
            doc["fibers"][i]["search"] = json!({ "height_bound": h, "points": found.iter().map(json::curve_point).collect::<Vec<_>>() });
        }
    }
    let s = &report.summary;
    let _ = writeln!(text, "multiples: {}, skipped: {}", s.multiples, s.skipped);
    let _ = writeln!(text, "distinct fibers: {}, certified: {}, degenerate: {}", s.distinct_fibers, s.certified_fibers, s.degenerate_fibers);
    let _ = writeln!(text, "generic rank of supplied sections: {}", s.known_generic_rank);
    if let Some(b) = s.mw_rank_geometric_upper {
        let _ = writeln!(text, "MW geometric upper bound: {b}");
    }
    Ok(Report { text, json: doc })
}
