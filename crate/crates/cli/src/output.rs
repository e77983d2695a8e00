use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Plain,
    Csv,
}

/// Rounds every float to 15 significant digits.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let r: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
            serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        v => v,
    }
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(v).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Plain => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            rows.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
        }
        Format::Csv => csv(v),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        v => v.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", items.join(", "))));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        v => out.push((prefix.to_string(), scalar(v))),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Arrays of objects become tables; anything else becomes `key,value` rows.
fn csv(v: &Value) -> String {
    if let Value::Array(rows) = v {
        if let Some(Value::Object(first)) = rows.first() {
            let header: Vec<&String> = first.keys().collect();
            let mut s = header.iter().map(|h| csv_field(h)).collect::<Vec<_>>().join(",");
            s.push('\n');
            for r in rows {
                let empty = Map::new();
                let o = r.as_object().unwrap_or(&empty);
                let mut cells = Vec::new();
                for h in &header {
                    let mut flat = Vec::new();
                    flatten("", o.get(*h).unwrap_or(&Value::Null), &mut flat);
                    let cell = match flat.as_slice() {
                        [(_, x)] => x.clone(),
                        _ => flat.iter().map(|(k, x)| format!("{k}={x}")).collect::<Vec<_>>().join(";"),
                    };
                    cells.push(csv_field(&cell));
                }
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            return s;
        }
    }
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut s = String::from("key,value\n");
    for (k, x) in rows {
        s.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&x)));
    }
    s
}
