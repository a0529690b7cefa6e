//! Line-oriented text formats and a JSON envelope for every artifact.
//!
//! Each text file starts with a header line `<kind> key=value ...`. Blank
//! lines and lines starting with `#` are ignored. Points are integers or
//! `inf`; parts are separated by `|`. Code symbols are written 1-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::code::{ArmstrongCode, Symbol};
use crate::construct::PartOrdering;
use crate::designs::{
    parse_type, BasePartition, GddDesign, Partition, PartitionSystem, Point, PointSet,
};
use crate::error::{Error, Result};

/// Any artifact the formats can carry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Artifact {
    Code { code: ArmstrongCode },
    PartitionSystem { system: PartitionSystem },
    Gdd { design: GddDesign },
    BasePartition { base: BasePartition },
    PartOrdering { ordering: PartOrdering },
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Code { .. } => "armstrong-code",
            Artifact::PartitionSystem { .. } => "partition-system",
            Artifact::Gdd { .. } => "gdd",
            Artifact::BasePartition { .. } => "base-partition",
            Artifact::PartOrdering { .. } => "part-ordering",
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Artifact::Code { code } => write_code(code),
            Artifact::PartitionSystem { system } => write_system(system),
            Artifact::Gdd { design } => write_gdd(design),
            Artifact::BasePartition { base } => write_base_partition(base),
            Artifact::PartOrdering { ordering } => write_ordering(ordering),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifacts serialize")
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn lift(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        other => perr(line, other.to_string()),
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

struct Header {
    line: usize,
    fields: BTreeMap<String, String>,
}

impl Header {
    fn parse(line: usize, text: &str, kind: &str, rest_key: Option<&str>) -> Result<Header> {
        let mut it = text.splitn(2, char::is_whitespace);
        let found = it.next().unwrap_or("");
        if found != kind {
            return Err(perr(
                line,
                format!("expected header '{kind}', found '{found}'"),
            ));
        }
        let mut rest = it.next().unwrap_or("").trim();
        let mut fields = BTreeMap::new();
        while !rest.is_empty() {
            let (tok, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| perr(line, format!("expected key=value, found '{tok}'")))?;
            if Some(key) == rest_key {
                fields.insert(key.to_string(), rest[key.len() + 1..].trim().to_string());
                break;
            }
            if fields.insert(key.to_string(), val.to_string()).is_some() {
                return Err(perr(line, format!("duplicate header field '{key}'")));
            }
            rest = tail.trim_start();
        }
        Ok(Header { line, fields })
    }

    fn allow_only(&self, keys: &[&str]) -> Result<()> {
        match self.fields.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(perr(self.line, format!("unknown header field '{k}'"))),
            None => Ok(()),
        }
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.fields.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| perr(self.line, format!("bad value '{v}' for '{key}'"))),
        }
    }

    fn require<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?
            .ok_or_else(|| perr(self.line, format!("missing header field '{key}'")))
    }
}

fn parse_point(line: usize, tok: &str) -> Result<Point> {
    tok.parse()
        .map_err(|_| perr(line, format!("bad point '{tok}'")))
}

fn parse_parts(line: usize, text: &str) -> Result<Vec<Vec<Point>>> {
    text.split('|')
        .map(|part| {
            let pts = part
                .split_whitespace()
                .map(|t| parse_point(line, t))
                .collect::<Result<Vec<_>>>()?;
            if pts.is_empty() {
                return Err(perr(line, "empty part"));
            }
            Ok(pts)
        })
        .collect()
}

fn parse_partition(line: usize, text: &str) -> Result<Partition> {
    Partition::new(parse_parts(line, text)?).map_err(lift(line))
}

fn points_str(pts: &[Point]) -> String {
    pts.iter()
        .map(Point::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn partition_str(p: &Partition) -> String {
    p.parts()
        .iter()
        .map(|part| points_str(part))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn header_line<'a>(lines: &[(usize, &'a str)]) -> Result<(usize, &'a str)> {
    lines.first().copied().ok_or_else(|| perr(1, "empty input"))
}

pub fn write_code(c: &ArmstrongCode) -> String {
    let mut out = format!(
        "armstrong-code q={} k={} n={} m={}",
        c.q(),
        c.k(),
        c.n(),
        c.m()
    );
    if let Some((s, t)) = c.dependency() {
        let _ = write!(out, " s={s} t={t}");
    }
    out.push('\n');
    for row in c.rows() {
        let cells: Vec<String> = row.iter().map(|&v| (v as u32 + 1).to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_code(text: &str) -> Result<ArmstrongCode> {
    let lines = content_lines(text);
    let (hl, h) = header_line(&lines)?;
    let h = Header::parse(hl, h, "armstrong-code", None)?;
    h.allow_only(&["q", "k", "n", "m", "s", "t"])?;
    let (q, k, n, m): (usize, usize, usize, usize) = (
        h.require("q")?,
        h.require("k")?,
        h.require("n")?,
        h.require("m")?,
    );
    let st = match (h.get::<usize>("s")?, h.get::<usize>("t")?) {
        (Some(s), Some(t)) => Some((s, t)),
        (None, None) => None,
        _ => return Err(perr(hl, "s and t must be given together")),
    };
    let body = &lines[1..];
    if body.len() != m {
        return Err(perr(
            body.last().map_or(hl, |l| l.0),
            format!("header says m={m} rows, found {}", body.len()),
        ));
    }
    let mut rows = Vec::with_capacity(m);
    for &(ln, l) in body {
        let row = l
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| perr(ln, format!("bad symbol '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(perr(
                ln,
                format!("row has {} entries, header says n={n}", row.len()),
            ));
        }
        if let Some(v) = row.iter().find(|&&v| v == 0 || v as usize > q) {
            return Err(perr(ln, format!("symbol {v} outside 1..={q}")));
        }
        rows.push(row);
    }
    ArmstrongCode::from_one_based(q, k, st, &rows).map_err(lift(hl))
}

pub fn write_system(ps: &PartitionSystem) -> String {
    let pts = ps.points();
    let mut out = format!("partition-system m={} n={}", pts.size, ps.len());
    if pts.has_infinity {
        out.push_str(" inf=true");
    }
    out.push('\n');
    for p in ps.partitions() {
        out.push_str(&partition_str(p));
        out.push('\n');
    }
    out
}

pub fn parse_system(text: &str) -> Result<PartitionSystem> {
    let lines = content_lines(text);
    let (hl, h) = header_line(&lines)?;
    let h = Header::parse(hl, h, "partition-system", None)?;
    h.allow_only(&["m", "n", "inf"])?;
    let m: usize = h.require("m")?;
    let n: usize = h.require("n")?;
    let inf: bool = h.get("inf")?.unwrap_or(false);
    let set = PointSet::new(m, inf).map_err(lift(hl))?;
    let body = &lines[1..];
    if body.len() != n {
        return Err(perr(
            body.last().map_or(hl, |l| l.0),
            format!("header says n={n} partitions, found {}", body.len()),
        ));
    }
    let mut parts = Vec::with_capacity(n);
    for &(ln, l) in body {
        let p = parse_partition(ln, l)?;
        if let Some(x) = p.parts().iter().flatten().find(|x| !set.contains(**x)) {
            return Err(perr(ln, format!("point {x} outside the {m}-point set")));
        }
        if p.num_points() != m {
            return Err(perr(
                ln,
                format!("partition covers {} of {m} points", p.num_points()),
            ));
        }
        parts.push(p);
    }
    PartitionSystem::new(set, parts).map_err(lift(hl))
}

pub fn write_gdd(g: &GddDesign) -> String {
    let mut out = format!("gdd k={} type={}\n", g.block_size(), g.type_string());
    out.push_str(&partition_str(g.groups()));
    out.push('\n');
    for b in g.blocks() {
        out.push_str(&points_str(b));
        out.push('\n');
    }
    out
}

pub fn parse_gdd(text: &str) -> Result<GddDesign> {
    let lines = content_lines(text);
    let (hl, h) = header_line(&lines)?;
    let h = Header::parse(hl, h, "gdd", Some("type"))?;
    h.allow_only(&["k", "type"])?;
    let k: usize = h.require("k")?;
    let declared =
        parse_type(h.fields.get("type").map(String::as_str).unwrap_or("")).map_err(lift(hl))?;
    let &(gl, gtext) = lines
        .get(1)
        .ok_or_else(|| perr(hl, "missing groups line"))?;
    let groups = parse_partition(gl, gtext)?;
    let size = groups.num_points();
    let set = PointSet::new(size, false).map_err(lift(gl))?;
    let mut blocks = Vec::new();
    for &(ln, l) in &lines[2..] {
        let b = l
            .split_whitespace()
            .map(|t| parse_point(ln, t))
            .collect::<Result<Vec<_>>>()?;
        if b.len() != k {
            return Err(perr(
                ln,
                format!("block of size {}, header says k={k}", b.len()),
            ));
        }
        blocks.push(b);
    }
    let g = GddDesign::new(set, groups, blocks, k).map_err(lift(gl))?;
    if g.type_vector() != declared {
        return Err(perr(
            hl,
            format!(
                "declared type {} but groups have type {}",
                crate::designs::format_type(&declared),
                g.type_string()
            ),
        ));
    }
    Ok(g)
}

pub fn write_base_partition(bp: &BasePartition) -> String {
    format!(
        "base-partition m={}\n{}\n",
        bp.order(),
        partition_str(bp.triples())
    )
}

pub fn parse_base_partition(text: &str) -> Result<BasePartition> {
    let lines = content_lines(text);
    let (hl, h) = header_line(&lines)?;
    let h = Header::parse(hl, h, "base-partition", None)?;
    h.allow_only(&["m"])?;
    let m: usize = h.require("m")?;
    let &(ln, l) = lines
        .get(1)
        .ok_or_else(|| perr(hl, "missing triples line"))?;
    if lines.len() > 2 {
        return Err(perr(lines[2].0, "unexpected extra line"));
    }
    BasePartition::new(m, parse_partition(ln, l)?).map_err(lift(ln))
}

pub fn write_ordering(o: &PartOrdering) -> String {
    let mut out = format!("part-ordering n={}\n", o.len());
    for row in o.symbols() {
        let syms: Vec<String> = row.iter().map(|&s| (s + 1).to_string()).collect();
        out.push_str(&syms.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_ordering(text: &str) -> Result<PartOrdering> {
    let lines = content_lines(text);
    let (hl, h) = header_line(&lines)?;
    let h = Header::parse(hl, h, "part-ordering", None)?;
    h.allow_only(&["n"])?;
    let n: usize = h.require("n")?;
    let body = &lines[1..];
    if body.len() != n {
        return Err(perr(
            body.last().map_or(hl, |l| l.0),
            format!("header says n={n} partitions, found {}", body.len()),
        ));
    }
    let mut symbols = Vec::with_capacity(n);
    for &(ln, l) in body {
        let row = l
            .split_whitespace()
            .map(|t| match t.parse::<Symbol>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(perr(ln, format!("bad symbol '{t}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        symbols.push(row);
    }
    PartOrdering::new(symbols).map_err(lift(hl))
}

/// Parses text in any format, dispatching on the header keyword.
pub fn parse_text(text: &str) -> Result<Artifact> {
    let lines = content_lines(text);
    let (hl, h) = header_line(&lines)?;
    match h.split_whitespace().next().unwrap_or("") {
        "armstrong-code" => parse_code(text).map(|code| Artifact::Code { code }),
        "partition-system" => parse_system(text).map(|system| Artifact::PartitionSystem { system }),
        "gdd" => parse_gdd(text).map(|design| Artifact::Gdd { design }),
        "base-partition" => parse_base_partition(text).map(|base| Artifact::BasePartition { base }),
        "part-ordering" => parse_ordering(text).map(|ordering| Artifact::PartOrdering { ordering }),
        other => Err(perr(hl, format!("unknown artifact kind '{other}'"))),
    }
}

pub fn parse_json(text: &str) -> Result<Artifact> {
    serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))
}

/// Text or JSON, decided by the first non-blank character.
pub fn parse_any(text: &str) -> Result<Artifact> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn code_round_trip() {
        let c = fixtures::st22_q4_code();
        let text = write_code(&c);
        assert!(text.lines().nth(1).unwrap() == "4 1 2 3 3 2 1");
        assert_eq!(parse_code(&text).unwrap(), c);
        let json = Artifact::Code { code: c.clone() }.to_json();
        assert_eq!(parse_any(&json).unwrap(), Artifact::Code { code: c });
    }

    #[test]
    fn system_round_trip() {
        let ps = fixtures::k7_odc_system();
        let text = write_system(&ps);
        assert_eq!(parse_system(&text).unwrap(), ps);
        let a = Artifact::PartitionSystem { system: ps };
        assert_eq!(parse_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn base_partition_round_trip() {
        for q in [6, 8, 10, 12] {
            let bp = fixtures::tabulated_base(q).unwrap();
            let text = write_base_partition(&bp);
            assert_eq!(parse_base_partition(&text).unwrap(), bp);
            let a = Artifact::BasePartition { base: bp };
            assert_eq!(parse_any(&a.to_json()).unwrap(), a);
        }
    }

    #[test]
    fn ordering_round_trip() {
        let o = fixtures::k7_odc_ordering();
        assert_eq!(parse_ordering(&write_ordering(&o)).unwrap(), o);
    }

    #[test]
    fn gdd_text() {
        let text = "gdd k=3 type=1^3\n0 | 1 | 2\n0 1 2\n";
        let g = parse_gdd(text).unwrap();
        assert_eq!(g.type_string(), "1^3");
        assert_eq!(parse_gdd(&write_gdd(&g)).unwrap(), g);
        let bad = "gdd k=3 type=1^4\n0 | 1 | 2\n0 1 2\n";
        assert!(matches!(parse_gdd(bad), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let ragged = "armstrong-code q=2 k=2 n=3 m=2\n1 1 2\n# comment\n1 2\n";
        assert!(matches!(
            parse_code(ragged),
            Err(Error::Parse { line: 4, .. })
        ));
        let sym = "armstrong-code q=2 k=2 n=2 m=1\n1 3\n";
        assert!(matches!(parse_code(sym), Err(Error::Parse { line: 2, .. })));
        let overlap = "partition-system m=3 n=1\n0 1 | 1 2\n";
        assert!(matches!(
            parse_system(overlap),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_text("bogus x=1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_code("armstrong-code q=2 k=2 n=2 m=1 zz=3\n1 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_any("{ \"kind\": \"code\" "),
            Err(Error::Parse { .. })
        ));
    }
}
