//! Text renderings of the JSON reports. Same data, one line per fact.

use serde_json::Value;

fn field(v: &Value, k: &str) -> String {
    match v.get(k) {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Null) | None => "-".to_string(),
        Some(other) => other.to_string(),
    }
}

pub fn render_decompose(v: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "F_{} G_{{{},{},{}}}  (dimension {})\n",
        field(v, "q"),
        field(v, "n"),
        field(v, "m"),
        field(v, "r"),
        field(v, "dimension"),
    ));
    if let Some(orbits) = v.get("orbits").and_then(Value::as_array) {
        for (i, o) in orbits.iter().enumerate() {
            out.push_str(&format!(
                "  block {}: rep {}  s={} u={} k={}  kind={}  shape={}\n",
                i + 1,
                field(o, "rep_poly"),
                field(o, "s"),
                field(o, "u"),
                field(o, "k"),
                field(o, "kind"),
                field(o, "shape"),
            ));
        }
    }
    out
}

pub fn render_code(v: &Value) -> String {
    let dim = v
        .get("basis")
        .and_then(Value::as_array)
        .map(Vec::len)
        .or_else(|| v.get("dim").and_then(Value::as_u64).map(|d| d as usize))
        .unwrap_or(0);
    let p = v.get("params").cloned().unwrap_or(Value::Null);
    format!(
        "code over F_{} in G_{{{},{},{}}}: dimension {}\n",
        field(&p, "q"),
        field(&p, "n"),
        field(&p, "m"),
        field(&p, "r"),
        dim,
    )
}

pub fn render_analysis(v: &Value) -> String {
    let mut out = render_code(v);
    out.push_str(&format!("  d_exact: {}\n", field(v, "d_exact")));
    out.push_str(&format!("  d_bound: {}\n", field(v, "d_bound")));
    if let Some(gc) = v.get("gc") {
        out.push_str(&format!(
            "  gc: inner generator {} (dim {}, d {}), outer dims {}\n",
            field(gc, "inner_generator"),
            field(gc, "inner_dim"),
            field(gc, "inner_distance"),
            gc.get("outer")
                .map(|o| o.to_string())
                .unwrap_or_else(|| "-".to_string()),
        ));
    }
    if let Some(att) = v.get("attack") {
        out.push_str(&render_attack_inner(att));
    }
    out
}

fn render_attack_inner(att: &Value) -> String {
    format!(
        "  attack: threshold {} count {} ({}) -> {}\n",
        field(att, "threshold"),
        field(att, "count"),
        if att.get("exact").and_then(Value::as_bool).unwrap_or(false) {
            "exact"
        } else {
            "lower bound"
        },
        field(att, "verdict"),
    )
}

pub fn render_attack(v: &Value) -> String {
    let mut out = render_code(v);
    if let Some(att) = v.get("attack") {
        out.push_str(&render_attack_inner(att));
    }
    out
}

pub fn render_intersection(v: &Value) -> String {
    let mut out = render_code(v);
    if let Some(i) = v.get("intersection") {
        out.push_str(&format!(
            "  intersection dim {} d_exact {}\n",
            field(i, "dim"),
            field(i, "d_exact"),
        ));
        if let Some(c) = i.get("certificate") {
            out.push_str(&format!(
                "  bounds: d >= {} (d1 {} · d2 {}), dim >= {}\n",
                field(c, "product_bound"),
                field(c, "d1"),
                field(c, "d2"),
                field(c, "dim_bound"),
            ));
        }
    }
    out
}

pub fn render_search(v: &Value) -> String {
    let mut out = String::new();
    let grid_len = v.get("grid").and_then(Value::as_array).map_or(0, Vec::len);
    out.push_str(&format!("grid points: {grid_len}\n"));
    if let Some(notes) = v.get("notes").and_then(Value::as_array) {
        for n in notes {
            out.push_str(&format!("note: {}\n", n.as_str().unwrap_or("")));
        }
    }
    if let Some(rows) = v.get("results").and_then(Value::as_array) {
        out.push_str("  n  m  r  q  [N, k, d]  exact  tuple\n");
        for r in rows {
            out.push_str(&format!(
                "  {}  {}  {}  {}  [{}, {}, {}]  {}  {}\n",
                field(r, "n"),
                field(r, "m"),
                field(r, "r"),
                field(r, "q"),
                field(r, "length"),
                field(r, "dim"),
                field(r, "d"),
                field(r, "d_exact"),
                field(r, "tuple"),
            ));
        }
    }
    out
}
