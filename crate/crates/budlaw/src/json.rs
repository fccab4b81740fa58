//! JSON encodings of rings, elements, series, laws and computed structures.

use budlaw_core::finite_ring::UnitQuotientReport;
use budlaw_core::honda::{EndoSet, FiltrationReport, HondaLaw, QuotientRing};
use budlaw_core::isomorphy::IsoResult;
use budlaw_core::lazard::UniversalLaw;
use budlaw_core::{BudLaw, Elem, Endo, Error, HeightClass, Mono, Result, Ring, TruncPoly};
use serde_json::{json, Map, Value};

fn bad(what: &str) -> Error {
    Error::InvalidArgument(format!("malformed JSON: {what}"))
}

/// Ring descriptors: `"Z"`, `"Q"`, `{"mod": m}`, `{"gf": [p, k]}`,
/// `{"poly": {"base": .., "params": [..]}}`.
pub fn ring_to_json(r: &Ring) -> Value {
    match r {
        Ring::Integers => json!("Z"),
        Ring::Rationals => json!("Q"),
        Ring::ModN(m) => json!({ "mod": m }),
        Ring::FiniteField(f) => json!({ "gf": [f.p(), f.k()] }),
        Ring::ParamPoly(_) => json!({ "poly": { "base": ring_to_json(r.base()), "params": r.params() } }),
    }
}

pub fn ring_from_json(v: &Value) -> Result<Ring> {
    match v {
        Value::String(s) if s == "Z" => Ok(Ring::Integers),
        Value::String(s) if s == "Q" => Ok(Ring::Rationals),
        Value::Object(o) => {
            if let Some(m) = o.get("mod") {
                return Ring::mod_n(m.as_u64().ok_or_else(|| bad("modulus"))?);
            }
            if let Some(g) = o.get("gf") {
                let pk = g.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("gf"))?;
                let p = pk[0].as_u64().ok_or_else(|| bad("gf"))?;
                let k = pk[1].as_u64().and_then(|k| u32::try_from(k).ok()).ok_or_else(|| bad("gf"))?;
                return Ring::finite_field(p, k);
            }
            if let Some(pp) = o.get("poly") {
                let base = ring_from_json(pp.get("base").ok_or_else(|| bad("poly base"))?)?;
                let params = pp
                    .get("params")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("poly params"))?
                    .iter()
                    .map(|s| s.as_str().map(str::to_owned).ok_or_else(|| bad("param name")))
                    .collect::<Result<Vec<_>>>()?;
                return Ring::param_poly(base, params);
            }
            Err(bad("ring"))
        }
        _ => Err(bad("ring")),
    }
}

/// Command-line ring specs: `z`, `q`, `mod:M`, `gf:P^K`, `poly:RING[t1..tr]`
/// or `poly:RING[a,b,..]`.
pub fn parse_ring_spec(s: &str) -> Result<Ring> {
    let s = s.trim();
    let err = || Error::InvalidArgument(format!("unknown ring spec {s:?}"));
    match s {
        "z" | "Z" => return Ok(Ring::Integers),
        "q" | "Q" => return Ok(Ring::Rationals),
        _ => {}
    }
    if let Some(m) = s.strip_prefix("mod:") {
        return Ring::mod_n(m.parse().map_err(|_| err())?);
    }
    if let Some(pk) = s.strip_prefix("gf:") {
        let (p, k) = parse_prime_power(pk)?;
        return Ring::finite_field(p, k);
    }
    if let Some(rest) = s.strip_prefix("poly:") {
        let open = rest.rfind('[').ok_or_else(err)?;
        let inner = rest[open + 1..].strip_suffix(']').ok_or_else(err)?;
        let base = parse_ring_spec(&rest[..open])?;
        let params: Vec<String> = match inner.split_once("..") {
            Some((a, b)) => {
                let lo: usize = a.trim().strip_prefix('t').and_then(|x| x.parse().ok()).ok_or_else(err)?;
                let hi: usize = b.trim().strip_prefix('t').and_then(|x| x.parse().ok()).ok_or_else(err)?;
                (lo..=hi).map(|i| format!("t{i}")).collect()
            }
            None if inner.trim().is_empty() => Vec::new(),
            None => inner.split(',').map(|x| x.trim().to_owned()).collect(),
        };
        return Ring::param_poly(base, params);
    }
    Err(err())
}

/// `P^K` or `P`.
pub fn parse_prime_power(s: &str) -> Result<(u64, u32)> {
    let err = || Error::InvalidArgument(format!("expected P^K, got {s:?}"));
    let (p, k) = s.split_once('^').unwrap_or((s, "1"));
    Ok((p.trim().parse().map_err(|_| err())?, k.trim().parse().map_err(|_| err())?))
}

fn monomial_key(names: &[String], m: &Mono) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(m.exps())
        .filter(|(_, &e)| e > 0)
        .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Scalars as strings; parameter polynomials as maps from monomials to
/// coefficient strings.
pub fn elem_to_json(r: &Ring, a: &Elem) -> Value {
    match (r, a) {
        (Ring::ParamPoly(_), Elem::Poly(map)) => {
            let mut o = Map::new();
            for (m, c) in map {
                o.insert(monomial_key(r.params(), m), Value::String(r.base().format(c)));
            }
            Value::Object(o)
        }
        _ => Value::String(r.format(a)),
    }
}

pub fn elem_from_json(r: &Ring, v: &Value) -> Result<Elem> {
    match v {
        Value::String(s) => r.parse(s),
        Value::Number(n) => r.parse(&n.to_string()),
        Value::Object(o) if matches!(r, Ring::ParamPoly(_)) => {
            let mut acc = r.zero();
            for (k, c) in o {
                let coeff = r.constant(elem_from_json(r.base(), c)?);
                acc = r.add(&acc, &r.mul(&r.parse(k)?, &coeff));
            }
            Ok(acc)
        }
        _ => Err(bad("element")),
    }
}

pub fn poly_to_json(f: &TruncPoly) -> Value {
    let terms: Vec<Value> = f.terms().map(|(m, c)| json!([m.exps(), elem_to_json(f.ring(), c)])).collect();
    json!({ "ring": ring_to_json(f.ring()), "vars": f.vars(), "bound": f.bound(), "terms": terms })
}

pub fn poly_from_json(v: &Value) -> Result<TruncPoly> {
    let ring = ring_from_json(v.get("ring").ok_or_else(|| bad("ring"))?)?;
    let vars = v.get("vars").and_then(Value::as_u64).ok_or_else(|| bad("vars"))? as usize;
    let bound = v.get("bound").and_then(Value::as_u64).and_then(|b| u32::try_from(b).ok()).ok_or_else(|| bad("bound"))?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("terms"))?
        .iter()
        .map(|t| {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term"))?;
            let exps = pair[0]
                .as_array()
                .ok_or_else(|| bad("exponents"))?
                .iter()
                .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad("exponent")))
                .collect::<Result<Vec<u32>>>()?;
            Ok((Mono::from_slice(&exps), elem_from_json(&ring, &pair[1])?))
        })
        .collect::<Result<Vec<_>>>()?;
    TruncPoly::from_terms(&ring, vars, bound, terms)
}

pub fn law_to_json(x: &BudLaw) -> Value {
    json!({ "ring": ring_to_json(x.ring()), "n": x.n(), "F": poly_to_json(x.poly()), "validated": x.is_validated() })
}

pub fn universal_to_json(u: &UniversalLaw) -> Value {
    let mut v = law_to_json(&u.law);
    v["params"] = json!(u.ring().params());
    v
}

/// The polynomial `F` from a law, a bare two-variable polynomial, or any
/// object carrying one of those under `"law"`.
pub fn law_poly_from_json(v: &Value) -> Result<TruncPoly> {
    if let Some(inner) = v.get("law") {
        return law_poly_from_json(inner);
    }
    if let Some(f) = v.get("F") {
        return poly_from_json(f);
    }
    poly_from_json(v)
}

/// Reads and validates a law.
pub fn law_from_json(v: &Value) -> Result<BudLaw> {
    BudLaw::validate(law_poly_from_json(v)?)
}

pub fn endo_to_json(f: &Endo) -> Value {
    json!({
        "ring": ring_to_json(f.source().ring()),
        "n": f.source().n(),
        "f": poly_to_json(f.series()),
        "source": law_to_json(f.source()),
        "target": law_to_json(f.target()),
    })
}

/// A one-variable series from an endomorphism or a bare polynomial.
pub fn series_from_json(v: &Value) -> Result<TruncPoly> {
    match v.get("f") {
        Some(f) => poly_from_json(f),
        None => poly_from_json(v),
    }
}

pub fn endo_from_json(v: &Value) -> Result<Endo> {
    let source = law_from_json(v.get("source").ok_or_else(|| bad("source"))?)?;
    let target = law_from_json(v.get("target").ok_or_else(|| bad("target"))?)?;
    Endo::new(&source, &target, series_from_json(v)?)
}

pub fn height_to_json(r: &Ring, h: &HeightClass) -> Value {
    match h {
        HeightClass::Height { h, leading } => json!({ "height": h, "leading": elem_to_json(r, leading) }),
        HeightClass::PSeriesZero => json!({ "height": null, "class": "PSeriesZero" }),
        HeightClass::Undefined { degree, coeff } => {
            json!({ "height": null, "class": "Undefined", "degree": degree, "coeff": elem_to_json(r, coeff) })
        }
    }
}

pub fn honda_to_json(h: &HondaLaw) -> Value {
    json!({ "p": h.p, "h": h.h, "n": h.n, "law": law_to_json(&h.law), "log": poly_to_json(&h.log) })
}

pub fn iso_to_json(r: &IsoResult) -> Value {
    match r {
        IsoResult::Found { iso, field } => json!({ "result": "Found", "field": ring_to_json(field), "iso": endo_to_json(iso) }),
        IsoResult::NotFoundOverBase => json!({ "result": "NotFoundOverBase" }),
        IsoResult::Failed(reason) => json!({ "result": "Failed", "reason": reason }),
    }
}

pub fn iso_from_json(v: &Value) -> Result<IsoResult> {
    match v.get("result").and_then(Value::as_str) {
        Some("Found") => Ok(IsoResult::Found {
            iso: endo_from_json(v.get("iso").ok_or_else(|| bad("iso"))?)?,
            field: ring_from_json(v.get("field").ok_or_else(|| bad("field"))?)?,
        }),
        Some("NotFoundOverBase") => Ok(IsoResult::NotFoundOverBase),
        Some("Failed") => Ok(IsoResult::Failed(v.get("reason").and_then(Value::as_str).unwrap_or_default().into())),
        _ => Err(bad("result")),
    }
}

pub fn endo_set_to_json(s: &EndoSet) -> Value {
    json!({
        "p": s.law.p,
        "h": s.law.h,
        "n": s.law.n,
        "field": ring_to_json(&s.field),
        "l": s.l,
        "law": law_to_json(&s.law.law),
        "count": s.len(),
        "elements": s.elements.iter().map(|e| poly_to_json(e.series())).collect::<Vec<_>>(),
    })
}

pub fn filtration_to_json(f: &FiltrationReport) -> Value {
    json!({
        "p": f.p,
        "h": f.h,
        "n": f.n,
        "q": f.q,
        "group_orders": f.group_orders,
        "quotient_orders": f.quotient_orders,
        "predicted": f.predicted,
        "match": f.matches,
        "normal": f.normal,
        "bijection": f.bijection,
        "all_match": f.all_match(),
    })
}

pub fn unit_quotient_to_json(i: u32, j: u32, r: &UnitQuotientReport) -> Value {
    let checks: Vec<Value> = r.checks.iter().map(|(name, ok)| json!({ "check": name, "ok": ok })).collect();
    json!({ "i": i, "j": j, "ok": r.ok(), "checks": checks })
}

pub fn quotient_ring_to_json(e: &QuotientRing, unit_checks: Vec<Value>) -> Value {
    let codes = |f: &Vec<u32>| -> Vec<Value> {
        f[1..].iter().map(|&c| elem_to_json(&e.field, &Elem::Gf(c))).collect()
    };
    json!({
        "p": e.p,
        "h": e.h,
        "n": e.n,
        "ambient": e.ambient,
        "field": ring_to_json(&e.field),
        "order": e.elements.len(),
        "expected_order": e.expected_order,
        "order_matches": e.order_matches(),
        "truncations_are_endos": e.truncations_are_endos,
        "units": e.units,
        "elements": e.elements.iter().map(codes).collect::<Vec<_>>(),
        "unit_quotients": unit_checks,
    })
}

/// The multiplication table as CSV, rows and columns in canonical order.
pub fn mul_table_csv(e: &QuotientRing) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let size = e.ring.size;
    let io = |err: csv::Error| Error::InvalidArgument(err.to_string());
    let mut header = vec![String::new()];
    header.extend((0..size).map(|i| i.to_string()));
    w.write_record(&header).map_err(io)?;
    for (i, row) in e.ring.mul_table().iter().enumerate() {
        let mut rec = vec![i.to_string()];
        rec.extend(row.iter().map(|x| x.to_string()));
        w.write_record(&rec).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
}

pub fn error_to_json(e: &Error) -> Value {
    let mut v = json!({ "error": e.kind(), "detail": e.to_string() });
    if let Some(w) = e.witness() {
        v["witness"] = json!(w.exps());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_specs() {
        assert_eq!(parse_ring_spec("gf:3^2").unwrap(), Ring::finite_field(3, 2).unwrap());
        assert_eq!(parse_ring_spec("mod:12").unwrap(), Ring::mod_n(12).unwrap());
        let r = parse_ring_spec("poly:z[t1..t3]").unwrap();
        assert_eq!(r.params(), ["t1", "t2", "t3"]);
        assert_eq!(parse_ring_spec("poly:gf:2^2[s]").unwrap().base(), &Ring::finite_field(2, 2).unwrap());
        assert!(parse_ring_spec("gf:4^1").is_err());
        assert!(parse_ring_spec("r").is_err());
    }

    #[test]
    fn ring_descriptor_forms() {
        assert_eq!(ring_to_json(&Ring::Integers), json!("Z"));
        assert_eq!(ring_to_json(&Ring::mod_n(4).unwrap()), json!({"mod": 4}));
        assert_eq!(ring_to_json(&Ring::finite_field(2, 2).unwrap()), json!({"gf": [2, 2]}));
        let r = parse_ring_spec("poly:q[t1,t2]").unwrap();
        assert_eq!(ring_to_json(&r), json!({"poly": {"base": "Q", "params": ["t1", "t2"]}}));
        assert_eq!(ring_from_json(&ring_to_json(&r)).unwrap(), r);
    }

    #[test]
    fn parameter_elements_are_coefficient_maps() {
        let r = parse_ring_spec("poly:q[t1..t2]").unwrap();
        let a = r.parse("1/2*t1^2*t2 - 3").unwrap();
        let v = elem_to_json(&r, &a);
        assert_eq!(v, json!({"1": "-3", "t1^2*t2": "1/2"}));
        assert_eq!(elem_from_json(&r, &v).unwrap(), a);
    }

    #[test]
    fn field_elements_are_polynomials_in_x() {
        let r = Ring::finite_field(2, 2).unwrap();
        assert_eq!(elem_to_json(&r, &Elem::Gf(3)), json!("x+1"));
        assert_eq!(elem_from_json(&r, &json!("x+1")).unwrap(), Elem::Gf(3));
    }

    #[test]
    fn laws_read_back() {
        let f2 = Ring::finite_field(2, 1).unwrap();
        let x = BudLaw::multiplicative(&f2, 3);
        let v = law_to_json(&x);
        assert_eq!(v["F"]["terms"], json!([[[1, 0], "1"], [[0, 1], "1"], [[1, 1], "1"]]));
        assert_eq!(law_from_json(&v).unwrap(), x);
        assert_eq!(law_from_json(&json!({ "law": v })).unwrap(), x);
    }

    #[test]
    fn witness_is_reported() {
        let e = Error::IdentityFail { witness: Mono::from_slice(&[2, 0]) };
        let v = error_to_json(&e);
        assert_eq!(v["error"], "IdentityFail");
        assert_eq!(v["witness"], json!([2, 0]));
    }
}
