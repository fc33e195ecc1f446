use std::time::Instant;

use serde_json::{json, Map, Value};
use sumset_core::format::{format_list, format_vector, format_vectors, SetLiteral};
use sumset_core::geometry::linalg::{fraction_string, IVec};
use sumset_core::geometry::{hull, validate_lattice, VectorSetND};
use sumset_core::nd::{
    e_n_slice, e_n_slices, exceptional_truncated, khovanskii_fit, structure_decompose,
    sumset_nd_with_budget, verify_theorem2,
};
use sumset_core::one_d::{
    exceptional_set_1d, normalize, residue_profile, savchev_chen_certify, sumset_1d_with_budget,
    theorem1_statement_holds, threshold, StampSet1D,
};
use sumset_core::{Error, Result};

use crate::{Command, Common, Target};

use num_rational::Rational64 as Ratio;

fn frac(r: Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Result of one command on one set.
pub struct Record {
    pub json: Value,
    pub text: String,
    pub warning: Option<String>,
    pub counterexample: Option<String>,
}

impl Record {
    fn ok(json: Value, text: String) -> Self {
        Record {
            json,
            text,
            warning: None,
            counterexample: None,
        }
    }
}

pub struct Outcome {
    pub line: Option<usize>,
    pub set: SetLiteral,
    pub result: Result<Record>,
}

impl Outcome {
    pub fn status(&self) -> u8 {
        match &self.result {
            Ok(r) if r.counterexample.is_some() => 1,
            Ok(_) => 0,
            Err(e) if e.is_counterexample() || matches!(e, Error::StructureViolation(_)) => 1,
            Err(e) if e.is_budget() => 3,
            Err(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("set".into(), set_json(&self.set));
        if let Some(l) = self.line {
            obj.insert("line".into(), json!(l));
        }
        match &self.result {
            Ok(r) => {
                if let Value::Object(m) = &r.json {
                    obj.extend(m.clone());
                }
                if let Some(w) = &r.warning {
                    obj.insert("warning".into(), json!(w));
                }
                if let Some(c) = &r.counterexample {
                    obj.insert("counterexample".into(), json!(c));
                }
            }
            Err(e) => {
                obj.insert("error".into(), json!(e.to_string()));
            }
        }
        Value::Object(obj)
    }

    pub fn to_table(&self, labelled: bool) -> String {
        let body = match &self.result {
            Ok(r) => match &r.counterexample {
                Some(c) => format!("{}\nCOUNTEREXAMPLE: {c}", r.text),
                None => r.text.clone(),
            },
            Err(_) if !labelled => return String::new(),
            Err(e) => format!("error: {e}"),
        };
        if labelled {
            format!("# {}\n{body}\n", set_text(&self.set))
        } else {
            format!("{body}\n")
        }
    }
}

fn set_json(set: &SetLiteral) -> Value {
    match set {
        SetLiteral::OneD(v) => json!(v),
        SetLiteral::ND(v) => json!(v),
    }
}

fn set_text(set: &SetLiteral) -> String {
    match set {
        SetLiteral::OneD(v) => format_list(v),
        SetLiteral::ND(v) => format_vectors(v),
    }
}

fn one_d(set: &SetLiteral) -> Result<StampSet1D> {
    match set {
        SetLiteral::OneD(v) => normalize(v),
        SetLiteral::ND(v) if v.first().is_some_and(|p| p.len() == 1) => {
            normalize(&v.iter().map(|p| p[0]).collect::<Vec<_>>())
        }
        SetLiteral::ND(_) => Err(Error::InvalidInput(
            "this command needs a one-dimensional set".into(),
        )),
    }
}

fn n_dim(set: &SetLiteral) -> Result<VectorSetND> {
    match set {
        SetLiteral::OneD(v) => VectorSetND::from_1d(v),
        SetLiteral::ND(v) => validate_lattice(v),
    }
}

fn require_n(common: &Common) -> Result<u64> {
    common
        .n
        .ok_or_else(|| Error::InvalidInput("--n is required".into()))
}

pub fn run(command: Command, set: &SetLiteral, common: &Common) -> Result<Record> {
    match command {
        Command::Sumset => sumset(set, common),
        Command::Exceptional => exceptional(set, common),
        Command::Profile => profile(set),
        Command::Threshold => threshold_cmd(set, common),
        Command::Verify { target } => verify(target, set, common),
        Command::Decompose => decompose(set, common),
        Command::Khovanskii => khovanskii(set, common),
        Command::Bench => bench(set, common),
    }
}

fn sumset(set: &SetLiteral, common: &Common) -> Result<Record> {
    let n = require_n(common)?;
    if let SetLiteral::OneD(_) = set {
        let s = one_d(set)?;
        let image = sumset_1d_with_budget(&s, n, &common.budget())?;
        let values: Vec<i64> = image.iter().map(|x| s.to_raw(x, n)).collect();
        return Ok(Record::ok(
            json!({ "n": n, "b": s.b(), "result": values }),
            format_list(&values),
        ));
    }
    let a = n_dim(set)?;
    let points = sumset_nd_with_budget(&a, n, &common.budget())?.sorted();
    Ok(Record::ok(
        json!({ "n": n, "result": points }),
        point_lines(&points),
    ))
}

/// One vector per line, so large sets stream to a text file.
fn point_lines(points: &[IVec]) -> String {
    points
        .iter()
        .map(|p| format_vector(p))
        .collect::<Vec<_>>()
        .join("\n")
}

fn exceptional(set: &SetLiteral, common: &Common) -> Result<Record> {
    if let SetLiteral::OneD(_) = set {
        let s = one_d(set)?;
        let e = exceptional_set_1d(&s);
        let frobenius = e.frobenius().map_or(-1, |f| f as i64);
        let text = format!("{{{}}} frobenius={frobenius}", format_list(&e.members));
        return Ok(Record::ok(
            json!({ "b": s.b(), "result": { "members": e.members, "frobenius": frobenius } }),
            text,
        ));
    }
    let a = n_dim(set)?;
    let n = common.n.unwrap_or(4);
    let region = hull(&a)?.scaled(n);
    let points = exceptional_truncated(&a, &region, &common.budget())?;
    let mut text = format!("# {} points in {n}H(A)", points.len());
    if !points.is_empty() {
        text.push('\n');
        text.push_str(&point_lines(&points));
    }
    Ok(Record::ok(json!({ "n": n, "result": points }), text))
}

fn profile(set: &SetLiteral) -> Result<Record> {
    let s = one_d(set)?;
    let p = residue_profile(&s)?;
    let mut text = String::from("a\tn_aA\tN_aA\tN*_aA\tthreshold");
    for r in &p.rows {
        let nstar = Ratio::new(r.nstar_num as i64, s.b() as i64);
        text.push_str(&format!(
            "\n{}\t{}\t{}\t{}\t{}",
            r.a,
            r.least,
            r.least_count,
            frac(nstar),
            r.threshold
        ));
    }
    Ok(Record::ok(json!({ "b": s.b(), "result": p }), text))
}

fn threshold_cmd(set: &SetLiteral, common: &Common) -> Result<Record> {
    if let SetLiteral::OneD(_) = set {
        let s = one_d(set)?;
        let t = threshold(&s)?;
        return Ok(Record::ok(
            json!({ "b": s.b(), "result": t }),
            t.to_string(),
        ));
    }
    let a = n_dim(set)?;
    let n_max = common.n_max.unwrap_or(12);
    let report = verify_theorem2(&a, n_max, &common.budget())?;
    let mut rec = Record::ok(
        json!({ "n_max": n_max, "result": report.onset }),
        report
            .onset
            .map_or_else(|| "none".to_string(), |o| o.to_string()),
    );
    if report.onset.is_none() {
        rec.warning = Some(format!(
            "equality fails at N={n_max}; onset may lie beyond the tested range"
        ));
    }
    Ok(rec)
}

fn verify(target: Target, set: &SetLiteral, common: &Common) -> Result<Record> {
    match target {
        Target::Thm0 => {
            let s = one_d(set)?;
            if s.len() != 3 {
                return Err(Error::InvalidInput(
                    "thm0 needs a three-element set {0,a,b}".into(),
                ));
            }
            let n_max = common.n_max.unwrap_or(40);
            let mut failing = Vec::new();
            for n in 1..=n_max {
                if !theorem1_statement_holds(&s, n)? {
                    failing.push(n);
                }
            }
            Ok(check(
                json!({ "n_max": n_max, "failing": failing }),
                failing.is_empty(),
                || format!("statement fails at N in {failing:?}"),
                format!("holds for N=1..{n_max}"),
            ))
        }
        Target::Thm1 => {
            let s = one_d(set)?;
            let b = s.b();
            let lo = 2 * (b / 2);
            let hi = common.n_max.unwrap_or(3 * b);
            let mut failing = Vec::new();
            for n in lo.max(1)..=hi {
                if !theorem1_statement_holds(&s, n)? {
                    failing.push(n);
                }
            }
            let t = threshold(&s)?;
            let conj = (s.len() >= 4).then(|| b + 2 - s.len() as u64);
            let mut problems = Vec::new();
            if !failing.is_empty() {
                problems.push(format!("statement fails at N in {failing:?}"));
            }
            if t > lo {
                problems.push(format!("threshold {t} exceeds 2*floor(b/2) = {lo}"));
            }
            if let Some(c) = conj.filter(|&c| t > c) {
                problems.push(format!("threshold {t} exceeds b+2-#A = {c}"));
            }
            let text = format!("threshold={t} bound={lo} checked N={}..{hi}", lo.max(1));
            Ok(check(
                json!({ "threshold": t, "bound": lo, "n_max": hi, "failing": failing }),
                problems.is_empty(),
                || problems.join("; "),
                text,
            ))
        }
        Target::Thm2 => {
            let a = n_dim(set)?;
            let n_max = common.n_max.unwrap_or(12);
            let report = verify_theorem2(&a, n_max, &common.budget())?;
            let mut text = String::from("N\t#NA\t#NH\t#E_N\tequal");
            for r in &report.rows {
                text.push_str(&format!(
                    "\n{}\t{}\t{}\t{}\t{}",
                    r.n, r.sumset_size, r.hull_points, r.exceptional, r.holds
                ));
            }
            text.push_str(&format!(
                "\nonset={}",
                report.onset.map_or("none".into(), |o| o.to_string())
            ));
            let mut rec = Record::ok(json!({ "n_max": n_max, "result": report }), text);
            if report.onset.is_none() {
                rec.warning = Some(format!(
                    "equality fails at N={n_max}; onset may lie beyond the tested range"
                ));
            }
            Ok(rec)
        }
        Target::Sylvester => {
            let s = one_d(set)?;
            if s.len() != 3 {
                return Err(Error::InvalidInput(
                    "sylvester needs a three-element set {0,a,b}".into(),
                ));
            }
            let (a, b) = (s.elements()[1] as i64, s.b() as i64);
            let e = exceptional_set_1d(&s);
            let max = e.frobenius().map_or(-1, |f| f as i64);
            let (want_max, want_len) = (a * b - a - b, (a - 1) * (b - 1) / 2);
            let ok = max == want_max && e.len() as i64 == want_len;
            Ok(check(
                json!({ "max": max, "count": e.len(), "expected_max": want_max, "expected_count": want_len }),
                ok,
                || {
                    format!(
                        "max {max} count {} against {want_max} and {want_len}",
                        e.len()
                    )
                },
                format!("max={max} count={}", e.len()),
            ))
        }
        Target::SavchevChen => {
            let s = one_d(set)?;
            let certs = savchev_chen_certify(&s)?;
            let text = certs
                .iter()
                .map(|c| format!("a={} h={} copies={}", c.residue, c.h, c.copies))
                .collect::<Vec<_>>()
                .join("\n");
            let text = if text.is_empty() {
                "no residue needs more than b/2 summands".into()
            } else {
                text
            };
            Ok(Record::ok(json!({ "b": s.b(), "result": certs }), text))
        }
        Target::Growth => {
            let a = n_dim(set)?;
            let n_max = common.n_max.unwrap_or(20);
            let power = a.dim() as u32 - 1;
            let rows: Vec<(u64, i64, Ratio)> = e_n_slices(&a, n_max, &common.budget())?
                .into_iter()
                .filter(|e| e.n >= 2)
                .map(|e| {
                    (
                        e.n,
                        e.len() as i64,
                        Ratio::new(e.len() as i64, (e.n as i64).pow(power)),
                    )
                })
                .collect();
            let max = rows.iter().map(|r| r.2).max().unwrap_or_default();
            let at = |k: u64| rows.iter().find(|r| r.0 == k).map(|r| r.2);
            let ok = match (at(5), at(n_max)) {
                (Some(r5), Some(rl)) => rl <= r5 * Ratio::from(2),
                _ => true,
            };
            let mut text = String::from("N\t#E_N\tratio");
            for (n, size, r) in &rows {
                text.push_str(&format!("\n{n}\t{size}\t{}", frac(*r)));
            }
            text.push_str(&format!("\nmax ratio={}", frac(max)));
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|(n, s, r)| json!({ "n": n, "size": s, "ratio": frac(*r) }))
                .collect();
            Ok(check(
                json!({ "result": json_rows, "max_ratio": frac(max) }),
                ok,
                || format!("ratio at N={n_max} exceeds twice the ratio at N=5"),
                text,
            ))
        }
    }
}

fn check(json: Value, ok: bool, problem: impl FnOnce() -> String, text: String) -> Record {
    let mut rec = Record::ok(json, text);
    if !ok {
        rec.counterexample = Some(problem());
    }
    rec
}

fn decompose(set: &SetLiteral, common: &Common) -> Result<Record> {
    let a = n_dim(set)?;
    let d = structure_decompose(&a, &common.budget())?;
    let text = d
        .pieces
        .iter()
        .map(|p| {
            if p.generators.is_empty() {
                format_vector(&p.v)
            } else {
                format!(
                    "{} + P{{{}}}",
                    format_vector(&p.v),
                    format_vectors(&p.generators)
                )
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    let text = if text.is_empty() {
        "E(A) is empty".into()
    } else {
        text
    };
    Ok(Record::ok(json!({ "result": d }), text))
}

fn khovanskii(set: &SetLiteral, common: &Common) -> Result<Record> {
    let a = n_dim(set)?;
    let n_max = common.n_max.unwrap_or(20);
    match khovanskii_fit(&a, n_max, &common.budget())? {
        Some(fit) => {
            let coeffs: Vec<String> = fit.coefficients.iter().map(fraction_string).collect();
            let text = format!(
                "degree={} onset={} coefficients=[{}] leading={} volume={}",
                fit.degree,
                fit.onset,
                coeffs.join(","),
                fraction_string(&fit.leading),
                fraction_string(&fit.volume)
            );
            let mut rec = Record::ok(json!({ "n_max": n_max, "result": fit }), text);
            if !fit.leading_matches_volume() {
                rec.counterexample =
                    Some("leading coefficient differs from the hull volume".into());
            }
            Ok(rec)
        }
        None => {
            let mut rec = Record::ok(
                json!({ "n_max": n_max, "result": null }),
                "no stabilization".into(),
            );
            rec.warning = Some(format!("finite differences do not vanish by N={n_max}"));
            Ok(rec)
        }
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_secs_f64() * 1e3))
}

fn bench(set: &SetLiteral, common: &Common) -> Result<Record> {
    let budget = common.budget();
    let mut rows: Vec<(String, usize, f64)> = Vec::new();
    if let SetLiteral::OneD(_) = set {
        let s = one_d(set)?;
        let n = common.n.unwrap_or(3 * s.b());
        let (image, ms) = timed(|| sumset_1d_with_budget(&s, n, &budget))?;
        rows.push((format!("sumset N={n}"), image.len(), ms));
        let (p, ms) = timed(|| residue_profile(&s))?;
        rows.push(("profile".into(), p.rows.len(), ms));
        let (e, ms) = timed(|| Ok(exceptional_set_1d(&s)))?;
        rows.push(("exceptional".into(), e.len(), ms));
    } else {
        let a = n_dim(set)?;
        let n = common.n.unwrap_or(10);
        let (image, ms) = timed(|| sumset_nd_with_budget(&a, n, &budget))?;
        rows.push((format!("sumset N={n}"), image.len(), ms));
        let (slice, ms) = timed(|| e_n_slice(&a, n, &budget))?;
        rows.push((format!("e_n N={n}"), slice.len(), ms));
        let (d, ms) = timed(|| structure_decompose(&a, &budget))?;
        rows.push(("decompose".into(), d.pieces.len(), ms));
    }
    let text = rows
        .iter()
        .map(|(op, size, ms)| format!("{op}\tsize={size}\t{ms:.3} ms"))
        .collect::<Vec<_>>()
        .join("\n");
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|(op, size, ms)| json!({ "op": op, "size": size, "ms": ms }))
        .collect();
    Ok(Record::ok(json!({ "result": json_rows }), text))
}
