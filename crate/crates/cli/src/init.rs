//! Initial data for the simulations, written as sums like `2+cos`,
//! `0.5*sin` or `1 - 0.3*cos(2s)`.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Shape {
    Constant,
    Sin(f64),
    Cos(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct InitialCondition {
    source: String,
    terms: Vec<(f64, Shape)>,
}

impl InitialCondition {
    pub fn eval(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(c, shape)| match shape {
                Shape::Constant => c,
                Shape::Sin(m) => c * (m * s).sin(),
                Shape::Cos(m) => c * (m * s).cos(),
            })
            .sum()
    }
}

impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitError(String);

impl fmt::Display for InitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InitError {}

fn number(text: &str) -> Result<f64, InitError> {
    text.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| InitError(format!("`{text}` is not a number")))
}

/// `sin`, `sin(s)`, `sin(2s)` or `sin(2*s)`.
fn shape(text: &str) -> Result<Shape, InitError> {
    let (name, freq) = match text.find('(') {
        None => (text, 1.0),
        Some(open) => {
            let inner = text[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| InitError(format!("unbalanced parenthesis in `{text}`")))?;
            let m = inner
                .strip_suffix('s')
                .ok_or_else(|| InitError(format!("argument of `{text}` must be a multiple of s")))?
                .trim_end_matches('*');
            (&text[..open], if m.is_empty() { 1.0 } else { number(m)? })
        }
    };
    match name {
        "sin" => Ok(Shape::Sin(freq)),
        "cos" => Ok(Shape::Cos(freq)),
        _ => Err(InitError(format!("unknown function `{name}`"))),
    }
}

fn term(text: &str) -> Result<(f64, Shape), InitError> {
    if text.is_empty() {
        return Err(InitError("empty term".into()));
    }
    let starts_alpha = text.starts_with(|c: char| c.is_ascii_alphabetic());
    match text.split_once('*') {
        _ if starts_alpha => Ok((1.0, shape(text)?)),
        Some((c, rest)) if rest.starts_with(|c: char| c.is_ascii_alphabetic()) => Ok((number(c)?, shape(rest)?)),
        _ => Ok((number(text)?, Shape::Constant)),
    }
}

impl FromStr for InitialCondition {
    type Err = InitError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms = Vec::new();
        let mut sign = 1.0;
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 0..=bytes.len() {
            let at_split = i == bytes.len()
                || ((bytes[i] == b'+' || bytes[i] == b'-')
                    && i > 0
                    && !matches!(bytes[i - 1], b'e' | b'E' | b'*' | b'('));
            if i == 0 && i < bytes.len() && (bytes[0] == b'+' || bytes[0] == b'-') {
                sign = if bytes[0] == b'-' { -1.0 } else { 1.0 };
                start = 1;
                continue;
            }
            if at_split {
                let (c, shape) = term(&compact[start..i])?;
                terms.push((sign * c, shape));
                if i < bytes.len() {
                    sign = if bytes[i] == b'-' { -1.0 } else { 1.0 };
                    start = i + 1;
                }
            }
        }
        Ok(Self {
            source: text.trim().to_string(),
            terms,
        })
    }
}
