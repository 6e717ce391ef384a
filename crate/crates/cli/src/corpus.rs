//! Expressions exercised by the parse/format round trip.

use pseudonull::diffalg::parse_any;

use crate::golden::golden_levels;

const EXTRA: &[&str] = &[
    "0",
    "1",
    "-1",
    "G",
    "-G",
    "G^3",
    "1/2",
    "-7/3",
    "t",
    "t0",
    "t1",
    "t7",
    "t12",
    "k",
    "k4",
    "t^2",
    "-t^2",
    "t1^3",
    "t*t1*t2",
    "2*t*t1",
    "t1*t",
    "3/4*t2^2 - t1",
    "(t + t1)^2",
    "(t - 1)*(t + 1)",
    "(1 + G)^2*t",
    "G*t^2 - G^2*t1",
    "1/2*G*t + 1/3",
    "-(t1 - t^2)",
    "+t3",
    "t - t",
    "2*(t1 + 3/2*t)",
    "(((t)))",
    "t2 + 2*t*t1 + 0*t5",
    "10*t1^2 + 15*t*t3",
    "t^10",
    "(t1 + t^2)^3",
    "-2*t1^2 - 2*t^2*t1",
    "k1 + G*k",
    "k2 - 1/5*G^2*k",
    "3*k*k1^2",
    "(k + k2)*(k - k2)",
    "G*(t + G*(t1 + G*t2))",
    "  t2\t+ 2 * t * t1 ",
    "100000000000000000000*t",
    "-1/2*t^2*t1 + 1/2",
    "(t2 + 3*t*t1 + t^3)^2",
    "t1 + t^2 + G",
];

/// Every printed hierarchy member followed by assorted expressions.
pub fn corpus() -> Vec<String> {
    let mut out = Vec::new();
    for row in golden_levels() {
        out.extend(row.field.split(';').map(str::to_string));
        out.push(row.tau_flow);
        out.push(row.k_flow);
    }
    out.extend(EXTRA.iter().map(|s| s.to_string()));
    out
}

/// Parses `text`, formats it canonically and checks that the canonical
/// form parses back to the same polynomial and formats identically.
pub fn round_trip(text: &str) -> Result<String, String> {
    let p = parse_any(text).map_err(|e| format!("`{text}`: {e}"))?;
    let canonical = p.to_string();
    let q = parse_any(&canonical).map_err(|e| format!("canonical `{canonical}` of `{text}`: {e}"))?;
    if q != p {
        return Err(format!("`{text}` -> `{canonical}` parses to `{q}`"));
    }
    if q.to_string() != canonical {
        return Err(format!("`{canonical}` reformats to `{q}`"));
    }
    Ok(canonical)
}
