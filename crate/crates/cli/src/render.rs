//! JSON and text rendering of core results.

use std::str::FromStr;

use serde_json::{json, Number, Value};

use nnirank2_core::diagram::{CanonicalDiagram, Diagram};
use nnirank2_core::solver::{CandidatePair, Rejection};
use nnirank2_core::{Int, IntMatrix, PlanePoint, SolveOutcome};

pub fn int(x: &Int) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

pub fn vector(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| vector(r)).collect())
}

pub fn point(p: &PlanePoint) -> Value {
    json!([int(&p.x), int(&p.y)])
}

pub fn points(ps: &[PlanePoint]) -> Value {
    Value::Array(ps.iter().map(point).collect())
}

fn rejection(r: &Rejection) -> Value {
    json!({
        "a": point(&r.pair.a),
        "b": point(&r.pair.b),
        "point": r.index,
        "coefficients": [r.coeffs.0.to_string(), r.coeffs.1.to_string()],
    })
}

pub fn outcome(out: &SolveOutcome, explain: bool) -> Value {
    let (f1, f2, generators) = match (&out.certificate, &out.rank_one) {
        (Some(c), _) => (
            matrix(&c.f1),
            matrix(&c.f2),
            json!({ "plane": [point(&c.pair.a), point(&c.pair.b)], "columns": [vector(&c.f1.col(0)), vector(&c.f1.col(1))] }),
        ),
        (None, Some((f1, f2))) => (matrix(f1), matrix(f2), json!({ "columns": [vector(&f1.col(0))] })),
        (None, None) => (Value::Null, Value::Null, Value::Null),
    };
    let mut doc = json!({
        "verdict": out.verdict.as_str(),
        "F1": f1,
        "F2": f2,
        "generators": generators,
        "pairs_examined": out.pairs_examined,
    });
    if explain {
        doc["rejections"] = Value::Array(out.rejections.iter().map(rejection).collect());
    }
    doc
}

fn pair_text(p: &CandidatePair) -> String {
    format!("a = {}, b = {}", p.a, p.b)
}

pub fn outcome_text(out: &SolveOutcome, explain: bool) -> String {
    let mut s = format!("verdict: {}\npairs_examined: {}\n", out.verdict, out.pairs_examined);
    if let Some(c) = &out.certificate {
        s += &format!("generators: {}\n", pair_text(&c.pair));
        s += &format!("F1:\n{}\nF2:\n{}\n", c.f1, c.f2);
    } else if let Some((f1, f2)) = &out.rank_one {
        s += &format!("F1:\n{f1}\nF2:\n{f2}\n");
    }
    if explain {
        for r in &out.rejections {
            s += &format!("rejected {}: point {} has coefficients ({}, {})\n", pair_text(&r.pair), r.index + 1, r.coeffs.0, r.coeffs.1);
        }
    }
    s
}

pub fn diagram(d: &Diagram) -> Value {
    json!({
        "basis": matrix(&d.basis),
        "points": points(&d.points),
        "cone": points(&d.cone_gens),
        "vanishing_rows": d.vanishing_rows,
    })
}

pub fn canonical(cd: &CanonicalDiagram) -> Value {
    let mut doc = diagram(&cd.diagram);
    doc["transform"] = matrix(&cd.transform);
    doc["canon_index"] = json!(cd.canon_index);
    doc
}

pub fn diagram_text(d: &Diagram, cd: Option<&CanonicalDiagram>) -> String {
    let shown = cd.map_or(d, |c| &c.diagram);
    let list = |ps: &[PlanePoint]| ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut s = format!(
        "basis:\n{}\npoints: {}\ncone: {}\nvanishing_rows: {} {}\n",
        shown.basis,
        list(&shown.points),
        list(&shown.cone_gens),
        shown.vanishing_rows[0],
        shown.vanishing_rows[1]
    );
    if let Some(c) = cd {
        s += &format!("transform:\n{}\ncanon_index: {}\n", c.transform, c.canon_index);
    }
    s
}
