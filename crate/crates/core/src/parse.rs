//! Model-description text format.
//!
//! ```text
//! # comment
//! t 2 base
//! v1 3
//! v2 5
//! d v2 = v1 t^2 + 1/2 t^3 - v1*t
//! ```
//!
//! Generator lines are `name degree` with an optional `base` marker (at most
//! one, degree 2). Differential lines are `d name = <polynomial>`. Products
//! are juxtaposition or `*`; adjacent names are split by greedy longest match.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{
    GeneratorSpec, GradedPolynomial, Rational, RelativeModel, SullivanModel, Universe,
};
use crate::error::{Error, Result};

/// Either kind of model a description can hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedModel {
    Absolute(SullivanModel),
    Relative(RelativeModel),
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_model(text: &str) -> Result<ParsedModel> {
    let mut gens: Vec<GeneratorSpec> = Vec::new();
    let mut base: Option<String> = None;
    let mut diffs: Vec<(usize, String, String)> = Vec::new();

    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("d ") {
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| err(line_no, "expected `d name = polynomial`"))?;
            diffs.push((line_no, lhs.trim().to_string(), rhs.trim().to_string()));
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(err(line_no, "expected `name degree [base]`"));
        }
        let name = fields[0];
        if !name.chars().next().is_some_and(|c| c.is_alphabetic())
            || !name.chars().all(|c| c.is_alphanumeric() || c == '_')
        {
            return Err(err(line_no, format!("bad generator name `{name}`")));
        }
        let degree: u32 = fields[1]
            .parse()
            .map_err(|_| err(line_no, format!("bad degree `{}`", fields[1])))?;
        if fields.len() == 3 {
            if fields[2] != "base" {
                return Err(err(line_no, format!("unknown marker `{}`", fields[2])));
            }
            if base.is_some() {
                return Err(err(line_no, "more than one base generator"));
            }
            if degree != 2 {
                return Err(err(line_no, "the base generator must have degree 2"));
            }
            base = Some(name.to_string());
        }
        gens.push(GeneratorSpec::new(name, degree));
    }

    let universe = match &base {
        Some(b) => {
            let fiber: Vec<_> = gens.iter().filter(|g| &g.name != b).cloned().collect();
            let fiber = Universe::new(fiber)?;
            Universe::with_base(b, &fiber)?
        }
        None => Universe::new(gens)?,
    };
    let mut model = SullivanModel::free(Arc::clone(&universe));
    let mut seen = vec![false; universe.len()];
    for (line_no, lhs, rhs) in diffs {
        let idx = universe
            .index_of(&lhs)
            .ok_or_else(|| err(line_no, format!("unknown generator `{lhs}`")))?;
        if seen[idx] {
            return Err(err(line_no, format!("second differential for `{lhs}`")));
        }
        seen[idx] = true;
        let p = parse_polynomial(&rhs, &universe).map_err(|m| err(line_no, m))?;
        model.set_differential(idx, p)?;
    }
    match base {
        Some(_) => Ok(ParsedModel::Relative(RelativeModel::from_total(model)?)),
        None => Ok(ParsedModel::Absolute(model)),
    }
}

/// Parses a relative model, rejecting descriptions without a base.
pub fn parse_relative_model(text: &str) -> Result<RelativeModel> {
    match parse_model(text)? {
        ParsedModel::Relative(r) => Ok(r),
        ParsedModel::Absolute(_) => Err(Error::usage("model has no base generator")),
    }
}

pub fn parse_sullivan_model(text: &str) -> Result<SullivanModel> {
    match parse_model(text)? {
        ParsedModel::Absolute(m) => Ok(m),
        ParsedModel::Relative(_) => Err(Error::usage("expected a model without a base generator")),
    }
}

/// Parses a polynomial over `universe`.
pub fn parse_polynomial(
    src: &str,
    universe: &Arc<Universe>,
) -> std::result::Result<GradedPolynomial, String> {
    let mut names: Vec<(String, usize)> = universe
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| (g.name.clone(), i))
        .collect();
    names.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));

    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let mut out = GradedPolynomial::zero(universe);
    if chars.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut first = true;
    while pos < chars.len() {
        let mut sign = Rational::one();
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                sign = -sign;
                pos += 1;
            }
            _ if first => {}
            c => return Err(format!("expected `+` or `-`, found `{c}`")),
        }
        first = false;
        let (coeff, word, next) = parse_term(&chars, pos, &names)?;
        pos = next;
        let term = GradedPolynomial::from_word(universe, &word, sign * coeff);
        out = &out + &term;
    }
    Ok(out)
}

fn parse_term(
    chars: &[char],
    mut pos: usize,
    names: &[(String, usize)],
) -> std::result::Result<(Rational, Vec<usize>, usize), String> {
    let mut coeff = Rational::one();
    let mut saw_coeff = false;
    if pos < chars.len() && chars[pos].is_ascii_digit() {
        let (num, p) = read_int(chars, pos);
        pos = p;
        let mut value = Rational::from_integer(num);
        if pos < chars.len() && chars[pos] == '/' {
            let (den, p) = read_int(chars, pos + 1);
            if p == pos + 1 {
                return Err("missing denominator".into());
            }
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            pos = p;
            value = Rational::new(value.to_integer(), den);
        }
        coeff = value;
        saw_coeff = true;
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
        }
    }
    let mut word = Vec::new();
    loop {
        if pos >= chars.len() || chars[pos] == '+' || chars[pos] == '-' {
            break;
        }
        if chars[pos] == '*' {
            pos += 1;
            continue;
        }
        let rest: String = chars[pos..].iter().collect();
        let (name, idx) = names
            .iter()
            .find(|(n, _)| rest.starts_with(n.as_str()))
            .ok_or_else(|| format!("unknown symbol at `{rest}`"))?;
        pos += name.chars().count();
        let mut exp = 1u32;
        if pos < chars.len() && chars[pos] == '^' {
            let (e, p) = read_int(chars, pos + 1);
            if p == pos + 1 {
                return Err("missing exponent".into());
            }
            exp = u32::try_from(e).map_err(|_| "exponent out of range".to_string())?;
            pos = p;
        }
        word.extend(std::iter::repeat_n(*idx, exp as usize));
    }
    if word.is_empty() && !saw_coeff {
        return Err("empty term".into());
    }
    Ok((coeff, word, pos))
}

fn read_int(chars: &[char], mut pos: usize) -> (BigInt, usize) {
    let start = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        pos += 1;
    }
    let s: String = chars[start..pos].iter().collect();
    (s.parse().unwrap_or_default(), pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX54_ROW1: &str = "t 2 base\nv1 3\nv2 5\nv3 9\nv4 15\nv5 33\n\
        d v5 = v1v4t^8 + v2v3t^10 + t^17\n";

    #[test]
    fn parses_relative_model_and_renders_base_last() {
        let m = parse_relative_model(EX54_ROW1).unwrap();
        assert_eq!(m.total_differential_of(4).render(), "v1v4t^8 + v2v3t^10 + t^17");
        assert!(m.validate().is_valid());
        let again = parse_relative_model(&m.to_text()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn differential_of_product() {
        let m = parse_relative_model(EX54_ROW1).unwrap();
        let u = m.total().universe();
        let p = parse_polynomial("v5 v1", u).unwrap();
        let dp = m.apply_differential(&p).unwrap();
        assert_eq!(dp, parse_polynomial("v1v2v3t^10 + v1t^17", u).unwrap());
        let q = parse_polynomial("v1v4", u).unwrap();
        assert!(m.apply_differential(&q).unwrap().is_zero());
    }

    #[test]
    fn coefficients_and_stars() {
        let u = Universe::new(vec![GeneratorSpec::new("x", 2), GeneratorSpec::new("xy", 2)]).unwrap();
        let p = parse_polynomial("-3/6*xy x + 2x^2", &u).unwrap();
        assert_eq!(p.render(), "-1/2 xxy + 2x^2");
        assert!(parse_polynomial("x +", &u).is_err());
        assert!(parse_polynomial("z", &u).is_err());
        assert_eq!(parse_polynomial("0", &u).unwrap(), GradedPolynomial::zero(&u));
    }

    #[test]
    fn grading_and_d_squared_violations() {
        let bad_degree = "t 2 base\nv1 3\nv2 5\nv3 9\nv4 15\nd v4 = v1v3t\n";
        let r = parse_relative_model(bad_degree).unwrap().validate();
        assert!(r.violations().iter().any(|v| matches!(v, crate::algebra::Violation::Grading { .. })));

        let bad_dd = "t 2 base\nv1 3\nv2 5\nv3 9\nv4 13\nw 23\n\
            d v3 = v1v2t\nd v4 = v1v3t\nd w = v3v4t\n";
        let m = parse_relative_model(bad_dd).unwrap();
        let dd = m.apply_differential(m.total_differential_of(4)).unwrap();
        let u = m.total().universe();
        let expected = parse_polynomial("v1v2v4t^2", u).unwrap();
        assert!(dd == expected || dd == -&expected);
        assert!(m
            .validate()
            .violations()
            .iter()
            .any(|v| matches!(v, crate::algebra::Violation::DSquared { .. })));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_model("v1 3\nd v2 = v1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_model("t 4 base\n").is_err());
    }
}
