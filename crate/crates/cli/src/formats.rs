//! Line-oriented text files for theories and contexts.
//!
//! Both formats share the header lines
//!
//! ```text
//! scale 2
//! logic lukasiewicz | goedel | bl 0,0.5,1
//! hedge identity | globalization | table 0,0,1
//! attributes p q r
//! ```
//!
//! where `bl` lists the idempotent degrees of an ordinal sum and
//! `table` lists the hedge value for each degree, both as degree
//! values. `logic` defaults to `lukasiewicz`, `hedge` to `identity`.
//! A theory file continues with one implication per line
//! (`{p} => {p, 0.5/q}`), a context file with one row per object
//! (`object x1: 1 0.5 0`). `#` starts a comment, blank lines are
//! ignored, headers may appear in any order.

use fai_core::algebra::{Chain, HedgeKind, TNormKind};
use fai_core::context::FormalContext;
use fai_core::fuzzyset::Universe;
use fai_core::implications::{Implication, Theory};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing required header: {0}")]
    Missing(&'static str),
    #[error("{0}")]
    Core(#[from] fai_core::Error),
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Line {
        line,
        message: message.into(),
    })
}

struct Lines<'a> {
    headers: Vec<(usize, &'a str, &'a str)>,
    body: Vec<(usize, &'a str)>,
}

fn split_lines(text: &str) -> Lines<'_> {
    let mut headers = Vec::new();
    let mut body = Vec::new();
    for (at, raw) in text.lines().enumerate() {
        let line = at + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let keyword = content.split_whitespace().next().unwrap_or("");
        match keyword {
            "scale" | "logic" | "hedge" | "attributes" => {
                let rest = content[keyword.len()..].trim();
                headers.push((line, keyword, rest));
            }
            _ => body.push((line, content)),
        }
    }
    Lines { headers, body }
}

fn parse_degree_list(scale: u8, text: &str) -> Result<Vec<u8>, String> {
    // a plain chain of the right resolution is enough to turn degree
    // literals into indices
    let probe = Chain::new(scale, TNormKind::Goedel, HedgeKind::Identity)
        .map_err(|e| e.to_string())?;
    text.split(',')
        .map(|token| probe.parse_degree(token.trim()).map_err(|e| e.to_string()))
        .collect()
}

/// Parses the value of a `logic` header (`lukasiewicz`, `goedel`, or
/// `bl <degrees>`) without validating the resulting chain.
pub fn parse_logic_spec(scale: u8, spec: &str) -> Result<TNormKind, String> {
    let mut parts = spec.trim().splitn(2, char::is_whitespace);
    match (parts.next().unwrap_or(""), parts.next().unwrap_or("").trim()) {
        ("lukasiewicz", "") => Ok(TNormKind::Lukasiewicz),
        ("goedel", "") => Ok(TNormKind::Goedel),
        ("bl", list) if !list.is_empty() => {
            Ok(TNormKind::OrdinalSum(parse_degree_list(scale, list)?))
        }
        _ => Err(format!("invalid logic: {spec:?}")),
    }
}

/// Parses the value of a `hedge` header (`identity`, `globalization`,
/// or `table <degrees>`) without validating the axioms.
pub fn parse_hedge_spec(scale: u8, spec: &str) -> Result<HedgeKind, String> {
    let mut parts = spec.trim().splitn(2, char::is_whitespace);
    match (parts.next().unwrap_or(""), parts.next().unwrap_or("").trim()) {
        ("identity", "") => Ok(HedgeKind::Identity),
        ("globalization", "") => Ok(HedgeKind::Globalization),
        ("table", list) if !list.is_empty() => {
            Ok(HedgeKind::Table(parse_degree_list(scale, list)?))
        }
        _ => Err(format!("invalid hedge: {spec:?}")),
    }
}

fn build_chain_and_universe(lines: &Lines<'_>) -> Result<(Chain, Universe), FormatError> {
    let mut scale: Option<(usize, u8)> = None;
    let mut logic: Option<(usize, &str)> = None;
    let mut hedge: Option<(usize, &str)> = None;
    let mut attributes: Option<Vec<&str>> = None;
    for &(line, keyword, rest) in &lines.headers {
        match keyword {
            "scale" => {
                if scale.is_some() {
                    return fail(line, "duplicate header: scale");
                }
                match rest.parse::<u8>() {
                    Ok(n) if n >= 1 => scale = Some((line, n)),
                    _ => return fail(line, format!("invalid scale: {rest:?}")),
                }
            }
            "logic" => {
                if logic.is_some() {
                    return fail(line, "duplicate header: logic");
                }
                logic = Some((line, rest));
            }
            "hedge" => {
                if hedge.is_some() {
                    return fail(line, "duplicate header: hedge");
                }
                hedge = Some((line, rest));
            }
            "attributes" => {
                if attributes.is_some() {
                    return fail(line, "duplicate header: attributes");
                }
                attributes = Some(rest.split_whitespace().collect());
            }
            _ => unreachable!("classified above"),
        }
    }
    let (scale_line, scale) = scale.ok_or(FormatError::Missing("scale"))?;
    let tnorm = match logic {
        None => TNormKind::Lukasiewicz,
        Some((line, spec)) => match parse_logic_spec(scale, spec) {
            Ok(t) => t,
            Err(message) => return fail(line, message),
        },
    };
    let hedge = match hedge {
        None => HedgeKind::Identity,
        Some((line, spec)) => match parse_hedge_spec(scale, spec) {
            Ok(h) => h,
            Err(message) => return fail(line, message),
        },
    };
    let chain = Chain::new(scale, tnorm, hedge).map_err(|e| FormatError::Line {
        line: scale_line,
        message: e.to_string(),
    })?;
    let names = attributes.ok_or(FormatError::Missing("attributes"))?;
    let universe = Universe::new(names.iter().map(|s| s.to_string()))?;
    Ok((chain, universe))
}

pub fn parse_theory(text: &str) -> Result<Theory, FormatError> {
    let lines = split_lines(text);
    let (chain, universe) = build_chain_and_universe(&lines)?;
    let mut implications = Vec::new();
    for &(line, content) in &lines.body {
        if content.starts_with("object") {
            return fail(line, "object row in a theory file");
        }
        let imp = Implication::parse(&universe, &chain, content).map_err(|e| {
            FormatError::Line {
                line,
                message: e.to_string(),
            }
        })?;
        implications.push(imp);
    }
    Ok(Theory::new(&universe, &chain, implications)?)
}

pub fn parse_context(text: &str) -> Result<FormalContext, FormatError> {
    let lines = split_lines(text);
    let (chain, universe) = build_chain_and_universe(&lines)?;
    let mut objects: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for &(line, content) in &lines.body {
        let Some(rest) = content.strip_prefix("object") else {
            return fail(line, format!("expected an object row, got {content:?}"));
        };
        let rest = rest.trim();
        let Some((name, values)) = rest.split_once(':') else {
            return fail(line, "object row needs `object <name>: <values>`");
        };
        let name = name.trim();
        if name.is_empty() || name.split_whitespace().count() != 1 {
            return fail(line, "object row needs exactly one name before `:`");
        }
        let cells: Vec<&str> = values.split_whitespace().collect();
        if cells.len() != universe.len() {
            return fail(
                line,
                format!(
                    "row has {} values, expected {}",
                    cells.len(),
                    universe.len()
                ),
            );
        }
        let degrees = cells
            .iter()
            .map(|cell| {
                chain.parse_degree(cell).map_err(|e| FormatError::Line {
                    line,
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if objects.iter().any(|o| o == name) {
            return fail(line, format!("duplicate object name: {name}"));
        }
        objects.push(name.to_string());
        rows.push(degrees);
    }
    Ok(FormalContext::new(objects, &universe, &chain, rows)?)
}

fn header_lines(chain: &Chain, universe: &Universe) -> String {
    let mut out = String::new();
    out.push_str(&format!("scale {}\n", chain.scale()));
    match chain.tnorm_kind() {
        TNormKind::Lukasiewicz => out.push_str("logic lukasiewicz\n"),
        TNormKind::Goedel => out.push_str("logic goedel\n"),
        TNormKind::OrdinalSum(idempotents) => {
            let list: Vec<String> = idempotents
                .iter()
                .map(|&d| chain.format_degree(d))
                .collect();
            out.push_str(&format!("logic bl {}\n", list.join(",")));
        }
    }
    match chain.hedge_kind() {
        HedgeKind::Identity => out.push_str("hedge identity\n"),
        HedgeKind::Globalization => out.push_str("hedge globalization\n"),
        HedgeKind::Table(values) => {
            let list: Vec<String> =
                values.iter().map(|&d| chain.format_degree(d)).collect();
            out.push_str(&format!("hedge table {}\n", list.join(",")));
        }
    }
    out.push_str(&format!("attributes {}\n", universe.names().join(" ")));
    out
}

pub fn write_theory(theory: &Theory) -> String {
    let mut out = header_lines(theory.chain(), theory.universe());
    for imp in theory.implications() {
        out.push_str(&format!("{imp}\n"));
    }
    out
}

pub fn write_context(ctx: &FormalContext) -> String {
    let mut out = header_lines(ctx.chain(), ctx.universe());
    for (at, name) in ctx.objects().names().iter().enumerate() {
        let cells: Vec<String> = ctx
            .row(at)
            .degrees()
            .iter()
            .map(|&d| ctx.chain().format_degree(d))
            .collect();
        out.push_str(&format!("object {name}: {}\n", cells.join(" ")));
    }
    out
}
