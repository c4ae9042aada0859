//! Boxed-answer extraction, judgment parsing, and exact answer equivalence.
//!
//! The equivalence scope is deliberately small: exact rationals (integers,
//! finite decimals, `\frac{p}{q}` and plain `p/q`) plus canonical-string
//! comparison for everything else. Decimal comparison converts to rationals,
//! never through floating point, so `0.333` never collides with `1/3`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::model::{Judgment, Question, Solution};

/// A normalized answer: the original string, its cleaned-up canonical form,
/// and an exact rational value when one parses.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalAnswer {
    pub raw: String,
    pub canonical: String,
    pub numeric: Option<BigRational>,
}

/// Key for grouping answers under the equivalence relation: numerically
/// parseable answers group by exact value, everything else by canonical
/// string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum AnswerKey {
    Numeric(BigRational),
    Text(String),
}

impl AnswerKey {
    pub fn of(raw: &str) -> Self {
        let c = canonicalize(raw);
        match c.numeric {
            Some(r) => AnswerKey::Numeric(r),
            None => AnswerKey::Text(c.canonical),
        }
    }

    /// Stable display form used as tally key and selected answer: reduced
    /// `p/q` (or bare integer) for numeric groups, the canonical string
    /// otherwise.
    pub fn display(&self) -> String {
        match self {
            AnswerKey::Numeric(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            AnswerKey::Text(s) => s.clone(),
        }
    }
}

/// Return the content of the last well-formed `\boxed{...}` in `text`,
/// matching braces with nesting and treating `\{`/`\}` as literals.
pub fn extract_boxed(text: &str) -> Option<String> {
    const MARKER: &str = "\\boxed{";
    let mut result = None;
    let mut search = 0;
    while let Some(pos) = text[search..].find(MARKER) {
        let start = search + pos + MARKER.len();
        match balanced_content(&text[start..]) {
            Some(content) => {
                search = start + content.len() + 1;
                result = Some(content);
            }
            None => search = start,
        }
    }
    result
}

/// Scan forward from just inside an opening brace, returning the content up
/// to the matching close. `None` when the text ends before braces balance.
fn balanced_content(s: &str) -> Option<String> {
    let mut depth = 1usize;
    let mut out = String::new();
    let mut escaped = false;
    for c in s.chars() {
        if escaped {
            escaped = false;
            out.push(c);
            continue;
        }
        match c {
            '\\' => {
                escaped = true;
                out.push(c);
            }
            '{' => {
                depth += 1;
                out.push(c);
            }
            '}' => {
                depth -= 1;
                if depth == 0 {
                    return Some(out);
                }
                out.push(c);
            }
            _ => out.push(c),
        }
    }
    None
}

/// Parse the terminal boxed token of a critique into a judgment. Anything
/// other than a (whitespace-trimmed, case-insensitive) True/False box is
/// `Invalid`.
pub fn parse_judgment(text: &str) -> Judgment {
    match extract_boxed(text) {
        Some(content) => {
            let token = content.trim();
            if token.eq_ignore_ascii_case("true") {
                Judgment::True
            } else if token.eq_ignore_ascii_case("false") {
                Judgment::False
            } else {
                Judgment::Invalid
            }
        }
        None => Judgment::Invalid,
    }
}

/// Normalize a raw answer string.
///
/// Strips outer whitespace, surrounding `$...$`, `\left`/`\right` commands
/// and trailing periods, collapses internal whitespace, lowercases a
/// standalone True/False, and parses integers, finite decimals and
/// fractions into exact rationals reduced to lowest terms.
pub fn canonicalize(raw: &str) -> CanonicalAnswer {
    let mut s = raw.trim().to_string();
    loop {
        let before = s.clone();
        s = s.trim().trim_end_matches('.').trim_end().to_string();
        s = strip_math_delims(&s);
        if s == before {
            break;
        }
    }
    s = strip_latex_command(&s, "\\left");
    s = strip_latex_command(&s, "\\right");
    let collapsed = s.split_whitespace().collect::<Vec<_>>().join(" ");
    let canonical =
        if collapsed.eq_ignore_ascii_case("true") || collapsed.eq_ignore_ascii_case("false") {
            collapsed.to_ascii_lowercase()
        } else {
            collapsed
        };
    let numeric = parse_rational(&canonical);
    CanonicalAnswer {
        raw: raw.to_string(),
        canonical,
        numeric,
    }
}

fn strip_math_delims(s: &str) -> String {
    let bytes = s.as_bytes();
    if bytes.len() >= 2 && bytes[0] == b'$' && bytes[bytes.len() - 1] == b'$' {
        s[1..s.len() - 1].to_string()
    } else {
        s.to_string()
    }
}

/// Remove a LaTeX command wherever it is not a prefix of a longer command
/// (so `\left(` loses the `\left` but `\leftarrow` is untouched).
fn strip_latex_command(s: &str, cmd: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(pos) = rest.find(cmd) {
        let after = &rest[pos + cmd.len()..];
        let at_boundary = after
            .chars()
            .next()
            .is_none_or(|c| !c.is_ascii_alphabetic());
        if at_boundary {
            out.push_str(&rest[..pos]);
        } else {
            out.push_str(&rest[..pos + cmd.len()]);
        }
        rest = after;
    }
    out.push_str(rest);
    out
}

/// Try to read `s` as an exact rational: `\frac{p}{q}` (and `\dfrac`,
/// `\tfrac`), plain `p/q`, or a signed integer/finite decimal.
fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some(r) = parse_frac_command(s) {
        return Some(r);
    }
    if let Some(r) = parse_slash_fraction(s) {
        return Some(r);
    }
    parse_decimal(s)
}

fn parse_frac_command(s: &str) -> Option<BigRational> {
    let (negate, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s.strip_prefix('+').unwrap_or(s).trim_start()),
    };
    let rest = ["\\frac", "\\dfrac", "\\tfrac"]
        .iter()
        .find_map(|cmd| body.strip_prefix(cmd))?;
    let rest = rest.trim_start();
    let (p, rest) = read_braced(rest)?;
    let rest = rest.trim_start();
    let (q, rest) = read_braced(rest)?;
    if !rest.trim().is_empty() {
        return None;
    }
    let num: BigInt = p.trim().parse().ok()?;
    let den: BigInt = q.trim().parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    let r = BigRational::new(num, den);
    Some(if negate { -r } else { r })
}

fn read_braced(s: &str) -> Option<(&str, &str)> {
    let rest = s.strip_prefix('{')?;
    let end = rest.find('}')?;
    Some((&rest[..end], &rest[end + 1..]))
}

fn parse_slash_fraction(s: &str) -> Option<BigRational> {
    let (p, q) = s.split_once('/')?;
    let num = parse_integer(p.trim())?;
    let den = parse_integer(q.trim())?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    if s.is_empty() {
        return None;
    }
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        return None;
    } else {
        digits.parse().ok()?
    };
    let den = BigInt::from(10u8).pow(frac_part.len() as u32);
    Some(BigRational::new(num * sign, den))
}

/// Answer equivalence: exact rational equality when both sides parse
/// numerically, canonical-string equality otherwise. Symmetric, reflexive,
/// and transitive on the numeric subset.
pub fn answers_equal(a: &str, b: &str) -> bool {
    let ca = canonicalize(a);
    let cb = canonicalize(b);
    match (&ca.numeric, &cb.numeric) {
        (Some(x), Some(y)) if x == y => true,
        _ => ca.canonical == cb.canonical,
    }
}

/// A text "contains code" exactly when it carries a triple-backtick fence.
pub fn contains_code(text: &str) -> bool {
    text.contains("```")
}

/// Label a solution against a question's ground truth. A solution is correct
/// iff its final answer matches the ground truth and the text contains no
/// code fence; a missing final answer is always incorrect.
pub fn label_solution(solution: &Solution, question: &Question) -> Solution {
    let correct = match &solution.final_answer {
        Some(ans) => {
            answers_equal(ans, &question.ground_truth_answer) && !contains_code(&solution.text)
        }
        None => false,
    };
    let mut labeled = solution.clone();
    labeled.correct = Some(correct);
    labeled
}
