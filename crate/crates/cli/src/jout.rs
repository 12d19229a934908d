//! Minimal ordered JSON/CSV rendering: insertion order is preserved and all
//! numeric renderings are deterministic, so identical invocations produce
//! byte-identical reports.

use std::fmt::Write;

#[derive(Debug, Clone)]
pub enum J {
    Null,
    Bool(bool),
    Int(i64),
    /// Pre-rendered numeric literal (floats at 12 significant digits).
    Num(String),
    Str(String),
    Arr(Vec<J>),
    Obj(Vec<(&'static str, J)>),
}

pub fn float(x: f64) -> J {
    J::Num(format!("{x:.11e}"))
}

pub fn s(x: impl Into<String>) -> J {
    J::Str(x.into())
}

fn escape(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

impl J {
    fn render_into(&self, out: &mut String, indent: usize) {
        match self {
            J::Null => out.push_str("null"),
            J::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            J::Int(i) => {
                let _ = write!(out, "{i}");
            }
            J::Num(n) => out.push_str(n),
            J::Str(v) => escape(out, v),
            J::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    item.render_into(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            J::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    escape(out, k);
                    out.push_str(": ");
                    v.render_into(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out.push('\n');
        out
    }

    /// Flat CSV rendering: arrays of objects become rows, everything else a
    /// key,value listing.
    pub fn render_csv(&self) -> String {
        fn scalar(v: &J) -> String {
            match v {
                J::Null => String::new(),
                J::Bool(b) => b.to_string(),
                J::Int(i) => i.to_string(),
                J::Num(n) => n.clone(),
                J::Str(s) => {
                    if s.contains(',') || s.contains('"') {
                        format!("\"{}\"", s.replace('"', "\"\""))
                    } else {
                        s.clone()
                    }
                }
                J::Arr(items) => {
                    let body: Vec<String> = items.iter().map(scalar).collect();
                    format!("\"{}\"", body.join(";"))
                }
                J::Obj(_) => "<object>".into(),
            }
        }
        fn walk(prefix: &str, v: &J, rows: &mut Vec<String>) {
            match v {
                J::Obj(fields) => {
                    for (k, val) in fields {
                        let key = if prefix.is_empty() { (*k).to_string() } else { format!("{prefix}.{k}") };
                        walk(&key, val, rows);
                    }
                }
                J::Arr(items) if items.iter().all(|i| matches!(i, J::Obj(_))) && !items.is_empty() => {
                    if let J::Obj(first) = &items[0] {
                        let header: Vec<String> = first.iter().map(|(k, _)| (*k).to_string()).collect();
                        rows.push(format!("# {prefix}"));
                        rows.push(header.join(","));
                        for item in items {
                            if let J::Obj(fields) = item {
                                let row: Vec<String> = fields.iter().map(|(_, v)| scalar(v)).collect();
                                rows.push(row.join(","));
                            }
                        }
                    }
                }
                other => rows.push(format!("{prefix},{}", scalar(other))),
            }
        }
        let mut rows = Vec::new();
        walk("", self, &mut rows);
        rows.join("\n") + "\n"
    }
}
