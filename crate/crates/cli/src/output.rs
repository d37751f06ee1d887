//! Output formatting. Numeric output in json and csv modes is printed with
//! 12 significant digits in scientific notation; documents are assembled as
//! plain strings so identical inputs yield byte-identical output.

/// 12 significant digits, scientific notation. Valid as a JSON number and
/// as a CSV field. Negative zero is normalized.
pub fn sig12(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

pub fn json_number_array(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| sig12(*v)).collect();
    format!("[{}]", parts.join(","))
}

pub fn json_number_matrix(rows: &[&[f64]]) -> String {
    let parts: Vec<String> = rows.iter().map(|r| json_number_array(r)).collect();
    format!("[{}]", parts.join(","))
}

/// Assembles a JSON object from pre-rendered value strings.
pub fn json_object(pairs: &[(&str, String)]) -> String {
    let parts: Vec<String> = pairs.iter().map(|(k, v)| format!("\"{k}\":{v}")).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn json_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A CSV document from a header and rows of pre-rendered fields.
/// Comma separators, LF line endings, header mandatory.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
