//! Command front end shared by the binary and the C ABI: parse a JSON request, dispatch it by
//! verb, and render the report as JSON or text.

pub mod json;

use std::io::Read;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use self::json::*;
use crate::arith::rational::is_prime;
use crate::comm_fitting::{annihilator_ideal, fitting_ideal, Presentation};
use crate::conductors::{conductor_index_report, h_lambda_lower_bound, BoundReason, HBound};
use crate::error::{Error, Result};
use crate::group_algebra::{classify_nice, gr_identity, gr_mat_mul, FiniteGroup, GrMatrix, GroupRingElem};
use crate::invariants::{
    fit_of_presentation, idempotent_cut, quotient_by_left_ideal, verify_annihilation, GroupRingPresentation,
};
use crate::matrix_ring::{fit_matrix_ring, full_module_presentation, MatRingElem, MatRingPresentation};
use crate::wedderburn::{generalized_adjoint, reduced_norm, wedderburn_data, WedderburnData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Verb {
    Classify,
    Wedderburn,
    Nr,
    Adjoint,
    Fit,
    Conductor,
    Index,
    Annihilate,
    Quotient,
}

impl Verb {
    pub const ALL: [Verb; 9] = [
        Verb::Classify,
        Verb::Wedderburn,
        Verb::Nr,
        Verb::Adjoint,
        Verb::Fit,
        Verb::Conductor,
        Verb::Index,
        Verb::Annihilate,
        Verb::Quotient,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verb::Classify => "classify",
            Verb::Wedderburn => "wedderburn",
            Verb::Nr => "nr",
            Verb::Adjoint => "adjoint",
            Verb::Fit => "fit",
            Verb::Conductor => "conductor",
            Verb::Index => "index",
            Verb::Annihilate => "annihilate",
            Verb::Quotient => "quotient",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| schema(format!("unknown verb `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// One request: a verb, its input (inline JSON, a file path, or `-` for stdin) and the format.
#[derive(Clone, Debug)]
pub struct Command {
    pub verb: Verb,
    pub input: String,
    pub format: Format,
}

/// Exit status and rendered report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub report: String,
}

/// Nonzero exit codes by error family.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Schema(_) => 2,
        Error::UnknownGroup(_) | Error::UnknownElement(_) => 3,
        Error::UnsupportedField(_) => 4,
        _ => 1,
    }
}

pub fn run(cmd: &Command) -> Outcome {
    match read_input(&cmd.input).and_then(|v| dispatch(cmd.verb, &v)) {
        Ok(v) => Outcome { status: 0, report: render(&v, cmd.format) },
        Err(e) => Outcome { status: exit_code(&e), report: render(&error_report(&e), cmd.format) },
    }
}

pub fn error_report(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

pub fn read_input(input: &str) -> Result<Value> {
    let text = match input.trim() {
        "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| schema(format!("stdin: {e}")))?;
            s
        }
        t if t.starts_with('{') => t.to_string(),
        path => std::fs::read_to_string(path).map_err(|e| schema(format!("{path}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| schema(format!("invalid JSON: {e}")))
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize"),
        Format::Text => {
            let mut out = String::new();
            render_text(v, 0, &mut out);
            out
        }
    }
}

/// Runs one verb on a parsed request.
pub fn dispatch(verb: Verb, input: &Value) -> Result<Value> {
    if !input.is_object() {
        return Err(schema("request must be a JSON object"));
    }
    match verb {
        Verb::Classify => classify(input),
        Verb::Wedderburn => wedderburn(input),
        Verb::Nr => nr(input),
        Verb::Adjoint => adjoint(input),
        Verb::Fit => fit(input),
        Verb::Conductor => conductor(input),
        Verb::Index => index(input),
        Verb::Annihilate => annihilate(input),
        Verb::Quotient => quotient(input),
    }
}

/// The group and prime every group-ring verb needs.
fn group_and_prime(input: &Value) -> Result<(Arc<FiniteGroup>, u64)> {
    let g = group_from_json(field(input, "group")?)?;
    let p = field(input, "p")?.as_u64().ok_or_else(|| schema("`p` must be a positive integer"))?;
    if !is_prime(p) {
        return Err(schema(format!("`p` = {p} is not prime")));
    }
    Ok((g, p))
}

fn context(input: &Value) -> Result<(Arc<FiniteGroup>, u64, Arc<WedderburnData>)> {
    let (g, p) = group_and_prime(input)?;
    let data = wedderburn_data(&g, p)?;
    Ok((g, p, data))
}

fn header(g: &FiniteGroup, p: u64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("group".into(), json!(g.spec.to_string()));
    m.insert("p".into(), json!(p));
    m
}

fn with_header(g: &FiniteGroup, p: u64, body: Value) -> Value {
    let mut m = header(g, p);
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

/// A matrix from `"matrix"`, or a `1 × 1` matrix from `"element"`.
fn matrix_or_element(g: &Arc<FiniteGroup>, input: &Value) -> Result<GrMatrix> {
    match (input.get("matrix"), input.get("element")) {
        (Some(m), _) => gr_matrix_from_json(g, m),
        (None, Some(x)) => Ok(vec![vec![elem_from_json(g, x)?]]),
        (None, None) => Err(schema("missing field `matrix` or `element`")),
    }
}

fn square(h: &GrMatrix) -> Result<usize> {
    let n = h.len();
    if n == 0 || h.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("a nonempty square matrix is required".into()));
    }
    Ok(n)
}

fn classify(input: &Value) -> Result<Value> {
    let (g, p) = group_and_prime(input)?;
    let c = serde_json::to_value(classify_nice(&g, p)).expect("classification serializes");
    Ok(with_header(&g, p, c))
}

fn wedderburn(input: &Value) -> Result<Value> {
    let (g, p, data) = context(input)?;
    let components: Vec<Value> = data
        .components
        .iter()
        .map(|c| {
            json!({
                "index": c.index + 1,
                "degree": c.degree,
                "matrix_size": c.matrix_size,
                "schur_index": c.schur_index,
                "field_degree": c.field_degree(),
                "ramification_index": c.field.ram_index,
                "residue_degree": c.field.residue_degree,
                "different": c.field.different,
                "character": c.character.iter().map(cyc_to_json).collect::<Vec<_>>(),
                "orbit": c.orbit,
                "integral_basis": c.integral_basis.iter().map(cyc_to_json).collect::<Vec<_>>(),
                "uniformizer": cyc_to_json(&c.uniformizer),
            })
        })
        .collect();
    let labels: Vec<&str> = (0..g.order()).map(|a| g.label(a)).collect();
    Ok(with_header(&g, p, json!({ "conductor": data.conductor, "elements": labels, "components": components })))
}

fn nr(input: &Value) -> Result<Value> {
    let (g, p, data) = context(input)?;
    let h = matrix_or_element(&g, input)?;
    square(&h)?;
    Ok(with_header(&g, p, json!({ "norm": central_to_json(&data, &reduced_norm(&data, &h)?) })))
}

fn adjoint(input: &Value) -> Result<Value> {
    let (g, p, data) = context(input)?;
    let h = matrix_or_element(&g, input)?;
    let n = square(&h)?;
    let star = generalized_adjoint(&data, &h)?;
    let norm = reduced_norm(&data, &h)?;
    let scalar: GrMatrix = gr_identity(&g, n)
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.mul(&data.central_element(&norm))).collect())
        .collect();
    let holds = gr_mat_mul(&star, &h) == scalar && gr_mat_mul(&h, &star) == scalar;
    Ok(with_header(
        &g,
        p,
        json!({ "adjoint": gr_matrix_to_json(&star), "norm": central_to_json(&data, &norm), "identity_holds": holds }),
    ))
}

fn presentation(g: &Arc<FiniteGroup>, p: u64, input: &Value) -> Result<GroupRingPresentation> {
    GroupRingPresentation::new(g, p, gr_matrix_from_json(g, field(input, "matrix")?)?)
}

fn fit(input: &Value) -> Result<Value> {
    if input.get("group").is_some() {
        let (g, p, data) = context(input)?;
        let pres = presentation(&g, p, input)?;
        let r = fit_of_presentation(&pres)?;
        let cut = idempotent_cut(&pres)?;
        return Ok(with_header(
            &g,
            p,
            json!({
                "relations": pres.a,
                "generators_count": pres.b,
                "flag": r.flag,
                "expansion": ideal_to_json(&r.expansion),
                "generators": r.generators.iter().map(|c| central_to_json(&data, c)).collect::<Vec<_>>(),
                "cut": {
                    "components": cut.upsilon.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "idempotent": elem_to_json(&cut.idempotent),
                    "expansion": ideal_to_json(&cut.fit.expansion),
                },
            }),
        ));
    }
    let ring = ring_from_json(field(input, "ring")?)?;
    if let Some(blocks) = input.get("blocks") {
        let blocks: Vec<Vec<MatRingElem>> = array(blocks, "blocks")?
            .iter()
            .map(|row| {
                array(row, "blocks")?
                    .iter()
                    .map(|b| MatRingElem::new(ring, rat_matrix_from_json(b, "blocks")?))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let pres = MatRingPresentation::new(blocks)?;
        let full = full_module_presentation(&pres);
        return Ok(json!({
            "ring": ring.to_string(),
            "matrix_size": pres.n,
            "fit_matrix_ring": comm_ideal_to_json(&fit_matrix_ring(&pres)),
            "fit_base_ring": comm_ideal_to_json(&fitting_ideal(&full)),
            "annihilator_base_ring": comm_ideal_to_json(&annihilator_ideal(&full)),
        }));
    }
    let m = rat_matrix_from_json(field(input, "matrix")?, "matrix")?;
    let b = m.first().map_or(0, |r| r.len());
    let pres = Presentation::new(ring, m.len(), b, m)?;
    Ok(json!({
        "ring": ring.to_string(),
        "fit": comm_ideal_to_json(&fitting_ideal(&pres)),
        "annihilator": comm_ideal_to_json(&annihilator_ideal(&pres)),
    }))
}

fn bound_to_json(h: &HBound, p: u64) -> Value {
    let reason = match &h.reason {
        BoundReason::Nice => json!("nice"),
        BoundReason::Formula => json!("formula"),
        BoundReason::Saturated(cert) => json!({
            "saturated": cert.generators.iter().map(|s| s.source.clone()).collect::<Vec<_>>(),
        }),
    };
    json!({ "flag": h.flag, "reason": reason, "lattice": lattice_to_json(&h.lattice, p) })
}

fn conductor(input: &Value) -> Result<Value> {
    let (g, p, data) = context(input)?;
    let r = conductor_index_report(&data)?;
    Ok(with_header(
        &g,
        p,
        json!({
            "maximal": ideal_to_json(&r.maximal),
            "centres": ideal_to_json(&r.centres),
            "char_values": r.char_values,
            "hybrid": lattice_to_json(&r.hybrid, p),
            "h_bound": bound_to_json(&r.h_bound, p),
            "indices": r.indices,
        }),
    ))
}

fn index(input: &Value) -> Result<Value> {
    let (g, p, data) = context(input)?;
    let name = |k: &str| -> Result<Option<String>> {
        input
            .get(k)
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| schema(format!("`{k}` must be a string"))))
            .transpose()
    };
    let (larger, smaller) = (name("larger")?, name("smaller")?);
    let known = ["maximal", "hybrid", "h_bound", "centres"];
    for n in larger.iter().chain(&smaller) {
        if !known.contains(&n.as_str()) {
            return Err(schema(format!("unknown lattice `{n}`; expected one of {known:?}")));
        }
    }
    let r = conductor_index_report(&data)?;
    let entries: Vec<Value> = r
        .indices
        .iter()
        .filter(|e| larger.as_ref().is_none_or(|l| *l == e.larger) && smaller.as_ref().is_none_or(|s| *s == e.smaller))
        .map(|e| {
            let mut v = serde_json::to_value(e).expect("index entries serialize");
            if let Some(k) = e.exponent {
                v["value"] = json!(crate::arith::rational::big_pow(p, k).to_string());
            }
            v
        })
        .collect();
    Ok(with_header(&g, p, json!({ "indices": entries })))
}

fn annihilate(input: &Value) -> Result<Value> {
    let (g, p, data) = context(input)?;
    let pres = presentation(&g, p, input)?;
    if let Some(x) = input.get("element") {
        let z = elem_from_json(&g, x)?;
        return Ok(with_header(
            &g,
            p,
            json!({ "element": elem_to_json(&z), "annihilates": verify_annihilation(&z, &pres)? }),
        ));
    }
    let fit = fit_of_presentation(&pres)?;
    let bound = h_lambda_lower_bound(&data)?;
    let mut products: Vec<GroupRingElem> = Vec::new();
    for gen in &fit.generators {
        let z = data.central_element(gen);
        for row in bound.lattice.basis(p) {
            let b = GroupRingElem::from_coeffs(&g, row)?;
            let x = b.mul(&z);
            if !x.is_zero() && !products.contains(&x) {
                products.push(x);
            }
        }
    }
    let integral = products.iter().all(|x| x.is_p_integral(p));
    let annihilates = products.iter().map(|x| verify_annihilation(x, &pres)).collect::<Result<Vec<_>>>()?;
    Ok(with_header(
        &g,
        p,
        json!({
            "fit_flag": fit.flag,
            "bound_flag": bound.flag,
            "all_integral": integral,
            "all_annihilate": annihilates.iter().all(|&a| a),
            "annihilators": products.iter().map(elem_to_json).collect::<Vec<_>>(),
        }),
    ))
}

fn quotient(input: &Value) -> Result<Value> {
    let (g, p, data) = context(input)?;
    let gens: Vec<GroupRingElem> = array(field(input, "generators")?, "generators")?
        .iter()
        .map(|x| elem_from_json(&g, x))
        .collect::<Result<_>>()?;
    let r = quotient_by_left_ideal(&g, p, &gens)?;
    let members: Vec<Value> = r
        .members
        .iter()
        .map(|m| json!({ "description": m.description, "element": elem_to_json(&m.element), "norm": central_to_json(&data, &m.norm) }))
        .collect();
    Ok(with_header(
        &g,
        p,
        json!({ "flag": r.fit.flag, "expansion": ideal_to_json(&r.fit.expansion), "members": members }),
    ))
}

/// Plain text: one `key: value` per line, nested objects indented, cyclotomic numbers written
/// as polynomials in `z_e`.
fn render_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_inline(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(x, depth + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_inline(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, depth + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(xs) => {
            xs.iter().all(|x| is_inline(x) && !x.is_array()) || xs.iter().all(|x| x.is_array() && is_inline(x))
        }
        Value::Object(m) => {
            m.is_empty() || cyc_from_json(v).is_ok() || is_zero_marker(v) || m.values().all(|x| x.is_string())
        }
        _ => true,
    }
}

fn is_zero_marker(v: &Value) -> bool {
    v.as_object().is_some_and(|m| m.len() == 1 && m.get("zero") == Some(&Value::Bool(true)))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => {
            if let Ok(c) = cyc_from_json(v) {
                c.to_string()
            } else if is_zero_marker(v) {
                "inf".to_string()
            } else if m.is_empty() {
                "0".to_string()
            } else {
                let terms: Vec<String> = m
                    .iter()
                    .map(|(k, c)| match inline(c).as_str() {
                        "1" => k.clone(),
                        "-1" => format!("-{k}"),
                        s => format!("{s}*{k}"),
                    })
                    .collect();
                terms.join(" + ")
            }
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(verb: Verb, input: Value) -> Value {
        dispatch(verb, &input).unwrap()
    }

    #[test]
    fn classify_d8() {
        let v = call(Verb::Classify, json!({"group": {"family": "dihedral", "param": 8}, "p": 2}));
        assert_eq!(v["nice"], json!(false));
        assert_eq!(v["commutator_order"], json!(2));
    }

    #[test]
    fn nr_of_reflection_in_d10() {
        let v = call(Verb::Nr, json!({"group": {"family": "dihedral", "param": 10}, "p": 5, "element": "y"}));
        let values: Vec<CycNumLike> = v["norm"]["values"].as_array().unwrap().iter().map(CycNumLike::from).collect();
        assert_eq!(values, vec![CycNumLike::Int(1), CycNumLike::Int(-1), CycNumLike::Int(-1)]);
    }

    #[derive(Debug, PartialEq)]
    enum CycNumLike {
        Int(i64),
        Other,
    }

    impl From<&Value> for CycNumLike {
        fn from(v: &Value) -> Self {
            match cyc_from_json(v).unwrap().to_rational() {
                Some(r) if r.is_integer() => CycNumLike::Int(r.to_integer().try_into().unwrap()),
                _ => CycNumLike::Other,
            }
        }
    }

    #[test]
    fn conductor_d8() {
        let v = call(Verb::Conductor, json!({"group": {"family": "dihedral", "param": 8}, "p": 2}));
        assert_eq!(v["maximal"], json!([3, 3, 3, 3, 2]));
        let idx = call(Verb::Index, json!({"group": {"family": "dihedral", "param": 8}, "p": 2, "smaller": "maximal"}));
        let find = |l: &str| {
            idx["indices"].as_array().unwrap().iter().find(|e| e["larger"] == json!(l)).unwrap()["value"].clone()
        };
        assert_eq!(find("hybrid"), json!("16"));
        assert_eq!(find("h_bound"), json!("32"));
    }

    #[test]
    fn commutative_and_matrix_ring_fits() {
        let v = call(Verb::Fit, json!({"ring": "Z", "matrix": [[2, 0], [0, 3]]}));
        assert_eq!(v["fit"]["generator"], json!("6"));
        let v = call(Verb::Fit, json!({"ring": "Z", "blocks": [[[[2, 0], [0, 2]]]]}));
        assert_eq!(v["fit_matrix_ring"]["generator"], json!("4"));
        assert_eq!(v["fit_base_ring"]["generator"], json!("16"));
        assert_eq!(v["annihilator_base_ring"]["generator"], json!("2"));
    }

    #[test]
    fn errors_are_typed() {
        let bad = |verb, input: Value| exit_code(&dispatch(verb, &input).unwrap_err());
        assert_eq!(bad(Verb::Classify, json!({"group": {"family": "mathieu", "param": 11}, "p": 2})), 3);
        assert_eq!(bad(Verb::Classify, json!({"group": {"family": "dihedral", "param": 8}})), 2);
        assert_eq!(bad(Verb::Conductor, json!({"group": {"family": "cyclic", "param": 3}, "p": 7})), 4);
    }

    #[test]
    fn text_rendering_is_readable() {
        let v = call(Verb::Nr, json!({"group": {"family": "dihedral", "param": 8}, "p": 2, "element": "x"}));
        let text = render(&v, Format::Text);
        assert!(text.contains("group: D8"), "{text}");
        assert!(text.contains("valuations: [0, 0, 0, 0, 0]"), "{text}");
    }
}
