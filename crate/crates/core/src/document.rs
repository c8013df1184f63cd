//! Text form of group diagrams.
//!
//! Inline: `(SO3, O2, SO3, SO3)`, `(T2, e, circle(1,0), circle(0,1))`,
//! `(SU2, Zn, SU2, Z2n) n>=2`, `(SO3, SO2; circle/1)`.
//! Documents are `key = value` lines with the keys `schema_version`, `group`,
//! `h`, `k_minus`, `k_plus`, `orbit_space` and `param`; `#` starts a comment.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::spherical::{Cover, Sph};
use crate::catalog::{torus_group_spec, Ambient, EmbeddedSubgroup, GroupSpec, So4Sub, Sub, TorusSubgroup};
use crate::diagram::{GroupDiagram, OrbitSpace};
use crate::scalar::Axis;
use crate::symint::{Param, SymInt};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, column, message: message.into() })
}

/// Parsed document before assembly into a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub schema_version: String,
    pub group: String,
    pub h: String,
    pub k_minus: Option<String>,
    pub k_plus: Option<String>,
    /// `interval`, `circle` or `circle:<gluing>`.
    pub orbit_space: String,
    /// Lower bound of the family parameter `n`.
    pub param_min: Option<u64>,
}

impl DiagramDocument {
    pub fn from_diagram(d: &GroupDiagram) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            group: group_token(&d.g),
            h: subgroup_token(&d.h),
            k_minus: d.k_minus.as_ref().map(subgroup_token),
            k_plus: d.k_plus.as_ref().map(subgroup_token),
            orbit_space: match d.orbit_space {
                OrbitSpace::Interval => "interval".to_string(),
                OrbitSpace::Circle { gluing: 0 } => "circle".to_string(),
                OrbitSpace::Circle { gluing } => format!("circle:{gluing}"),
            },
            param_min: d.parameter().map(|p| p.min),
        }
    }
}

impl fmt::Display for DiagramDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "schema_version = {}", self.schema_version)?;
        writeln!(f, "group = {}", self.group)?;
        writeln!(f, "h = {}", self.h)?;
        if let Some(k) = &self.k_minus {
            writeln!(f, "k_minus = {k}")?;
        }
        if let Some(k) = &self.k_plus {
            writeln!(f, "k_plus = {k}")?;
        }
        writeln!(f, "orbit_space = {}", self.orbit_space)?;
        if let Some(m) = self.param_min {
            writeln!(f, "param = n >= {m}")?;
        }
        Ok(())
    }
}

fn symint_token(s: &SymInt) -> String {
    s.to_string()
}

pub fn group_token(g: &GroupSpec) -> String {
    match g {
        GroupSpec::Circle | GroupSpec::Torus(1) => "S1".to_string(),
        GroupSpec::Torus(k) => format!("T{k}"),
        GroupSpec::SU2 => "SU2".to_string(),
        GroupSpec::SO3 => "SO3".to_string(),
        GroupSpec::SO4 => "SO4".to_string(),
        g if *g == GroupSpec::so3_times_circle() => "SO3xS1".to_string(),
        g => g.to_string(),
    }
}

fn axis_tag(u: Axis, default: Axis) -> String {
    if u == default {
        String::new()
    } else {
        format!("@{}", u.letter())
    }
}

fn default_axes(cover: Cover) -> (Axis, Axis) {
    match cover {
        Cover::SO3 => (Axis::K, Axis::K),
        Cover::SU2 => (Axis::I, Axis::J),
    }
}

fn sph_token(cover: Cover, s: &Sph) -> String {
    let (cyc, norm) = default_axes(cover);
    let su2 = cover == Cover::SU2;
    match s {
        Sph::Identity => "e".to_string(),
        Sph::Cyclic(a, u) => format!("Z{}{}", symint_token(a), axis_tag(*u, cyc)),
        Sph::Dihedral(a, u) => format!("D{}{}{}", if su2 { "*" } else { "" }, symint_token(a), axis_tag(*u, cyc)),
        Sph::Klein => if su2 { "Q8" } else { "D2" }.to_string(),
        Sph::Tetrahedral => if su2 { "T*" } else { "T" }.to_string(),
        Sph::Octahedral => if su2 { "O*" } else { "O" }.to_string(),
        Sph::Icosahedral => if su2 { "I*" } else { "I" }.to_string(),
        Sph::Circle(u) => format!("{}{}", if su2 { "S1" } else { "SO2" }, axis_tag(*u, cyc)),
        Sph::CircleNormalizer(u) => format!("{}{}", if su2 { "Pin2" } else { "O2" }, axis_tag(*u, norm)),
        Sph::Whole => if su2 { "SU2" } else { "SO3" }.to_string(),
    }
}

fn list(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn torus_token(t: &TorusSubgroup) -> String {
    if let Some(v) = t.as_circle() {
        return format!("circle({})", list(&v));
    }
    if t.dim() == 0 && t.component_invariants().len() == 1 {
        let m = t.component_invariants()[0];
        for v in cyclic_candidates(t.ambient_rank(), m) {
            if TorusSubgroup::cyclic(&v, m) == *t {
                return format!("Z{m}({})", list(&v));
            }
        }
    }
    t.to_string()
}

fn cyclic_candidates(k: usize, m: i64) -> Vec<Vec<i64>> {
    let total = (m as usize).pow(k as u32);
    (1..total)
        .map(|mut idx| {
            (0..k)
                .map(|_| {
                    let x = (idx % m as usize) as i64;
                    idx /= m as usize;
                    x
                })
                .collect()
        })
        .collect()
}

/// ASCII token of a subgroup; [`parse_subgroup`] reads it back.
pub fn subgroup_token(s: &EmbeddedSubgroup) -> String {
    match s.view() {
        Ok(Sub::Torus(t)) => torus_token(&t),
        Ok(Sub::Sph(cover, a)) => sph_token(cover, &a),
        Ok(Sub::Prod(a, b)) => {
            let left = sph_token(Cover::SO3, &a);
            if b.is_trivial() {
                left
            } else if b.is_full() {
                format!("{left}xS1")
            } else {
                format!("{left}x{}", torus_group_spec(&b).to_string().replace('_', ""))
            }
        }
        Ok(Sub::Diag(t)) => match t.as_circle() {
            Some(v) => format!("diag({})", list(&v)),
            None => format!("toral{}", torus_token(&t)),
        },
        Ok(Sub::So4(x)) => match x {
            So4Sub::Identity => "e",
            So4Sub::Center => "Z2",
            So4Sub::SO3 => "SO3",
            So4Sub::O3 => "O3",
            So4Sub::Whole => "SO4",
        }
        .to_string(),
        Err(_) => s.group.to_string(),
    }
}

/// Inline form; parsing it gives back the same diagram.
pub fn serialize(d: &GroupDiagram) -> String {
    let g = group_token(&d.g);
    let h = subgroup_token(&d.h);
    let body = match (&d.k_minus, &d.k_plus) {
        (Some(a), Some(b)) => format!("({g}, {h}, {}, {})", subgroup_token(a), subgroup_token(b)),
        _ => match d.orbit_space {
            OrbitSpace::Circle { gluing } if gluing > 0 => format!("({g}, {h}; circle/{gluing})"),
            _ => format!("({g}, {h}; circle)"),
        },
    };
    match d.parameter() {
        Some(p) => format!("{body} n>={}", p.min),
        None => body,
    }
}

/// Drop the decorations of the printed notation: `SO(3)` → `SO3`,
/// `Z_{2n}` → `Z2n`, `S^1` → `S1`.
fn plain(token: &str) -> String {
    token.chars().filter(|c| !matches!(c, '(' | ')' | '{' | '}' | '_' | '^' | ' ')).collect()
}

pub fn parse_group(token: &str) -> Option<GroupSpec> {
    let t = plain(token);
    Some(match t.as_str() {
        "S1" | "T1" | "U1" => GroupSpec::Circle,
        "SU2" | "Sp1" => GroupSpec::SU2,
        "SO3" => GroupSpec::SO3,
        "SO4" => GroupSpec::SO4,
        "SO3xS1" | "SO3xT1" => GroupSpec::so3_times_circle(),
        _ => {
            let k: usize = t.strip_prefix('T')?.parse().ok()?;
            if k >= 1 {
                GroupSpec::Torus(k)
            } else {
                return None;
            }
        }
    })
}

fn parse_axis(s: &str) -> Option<Axis> {
    let s = s.strip_prefix("axis:").unwrap_or(s);
    match s {
        "i" | "x" => Some(Axis::I),
        "j" | "y" => Some(Axis::J),
        "k" | "z" => Some(Axis::K),
        _ => None,
    }
}

fn parse_ints(s: &str) -> Option<Vec<i64>> {
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

fn parse_symint(s: &str, param: &Param) -> Option<SymInt> {
    if let Ok(v) = s.parse::<u64>() {
        return (v >= 1).then_some(SymInt::Concrete(v));
    }
    let mult = s.strip_suffix(param.name)?;
    let mult = if mult.is_empty() { 1 } else { mult.parse().ok()? };
    (mult >= 1).then(|| SymInt::n(mult, param))
}

/// Subgroup of `SU(2)` or `SO(3)` from a decoration-free token.
fn parse_sph(cover: Cover, t: &str, param: &Param) -> Option<Sph> {
    let (name, axis) = match t.split_once('@') {
        Some((n, a)) => (n, Some(parse_axis(a)?)),
        None => (t, None),
    };
    let (cyc, norm) = default_axes(cover);
    let on = |d: Axis| axis.unwrap_or(d);
    let su2 = cover == Cover::SU2;
    let s = match name {
        "e" | "1" => Sph::Identity,
        "<i>" | "<j>" | "<k>" if su2 => Sph::Cyclic(SymInt::Concrete(4), parse_axis(&name[1..2])?),
        "V4" | "D2" | "D*2" | "Q8" | "Q" => Sph::Klein,
        "T" | "T*" => Sph::Tetrahedral,
        "O" | "O*" => Sph::Octahedral,
        "I" | "I*" => Sph::Icosahedral,
        "SO2" | "S1" | "U1" => Sph::Circle(on(cyc)),
        "O2" | "Pin2" => Sph::CircleNormalizer(on(norm)),
        "SO3" | "SU2" => Sph::Whole,
        _ => {
            if let Some(rest) = name.strip_prefix('Z') {
                Sph::Cyclic(parse_symint(rest, param)?, on(cyc))
            } else {
                let rest = name.strip_prefix("D*").or_else(|| name.strip_prefix('D'))?;
                Sph::Dihedral(parse_symint(rest, param)?, on(cyc))
            }
        }
    };
    Some(match s {
        Sph::Dihedral(m, u) if m.concrete() == Some(1) || m.concrete() == Some(2) => Sph::Dihedral(m, u).canonical(cover),
        Sph::Cyclic(a, u) if a.concrete() == Some(1) => Sph::Cyclic(a, u).canonical(cover),
        other => other,
    })
}

fn parse_torus(k: usize, t: &str) -> Option<TorusSubgroup> {
    if t == "e" || t == "1" {
        return Some(TorusSubgroup::trivial(k));
    }
    if t == format!("T{k}") || (k == 1 && (t == "S1" || t == "T1")) {
        return Some(TorusSubgroup::full(k));
    }
    let args = |s: &str, prefix: &str| -> Option<Vec<i64>> {
        let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
        parse_ints(inner)
    };
    if let Some(slope) = t.strip_prefix("circle@slope:") {
        let v = parse_ints(slope)?;
        return (v.len() == k && v.iter().any(|&x| x != 0)).then(|| TorusSubgroup::circle(&v));
    }
    if let Some(v) = args(t, "circle") {
        return (v.len() == k && v.iter().any(|&x| x != 0)).then(|| TorusSubgroup::circle(&v));
    }
    if let Some(rest) = t.strip_prefix('Z') {
        let open = rest.find('(')?;
        let m: i64 = rest[..open].parse().ok()?;
        let v = args(&rest[open..], "")?;
        return (m >= 1 && v.len() == k).then(|| TorusSubgroup::cyclic(&v, m));
    }
    if let Some(inner) = t.strip_prefix("sub[").and_then(|s| s.strip_suffix(']')) {
        let rows: Option<Vec<Vec<i64>>> = inner
            .split(';')
            .filter(|r| !r.is_empty())
            .map(|r| r.strip_prefix('[').and_then(|r| r.strip_suffix(']')).and_then(parse_ints))
            .collect();
        let rows = rows?;
        return rows.iter().all(|r| r.len() == k).then(|| TorusSubgroup::from_annihilator(k, rows));
    }
    None
}

/// Subgroup token in the group `g`.
pub fn parse_subgroup(g: &GroupSpec, token: &str, param: &Param) -> Option<EmbeddedSubgroup> {
    let raw: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    let ambient = crate::catalog::ambient_of(g).ok()?;
    // Keep the parentheses of slope lists.
    let keeps_parens = ["circle", "diag", "toral", "sub["].iter().any(|p| raw.starts_with(p))
        || (raw.starts_with('Z') && raw.contains("(") && matches!(ambient, Ambient::Torus(_)));
    let t = if keeps_parens { raw.clone() } else { plain(&raw) };
    match ambient {
        Ambient::Torus(k) => {
            let t = if k == 1 { t.replace("S1", "T1") } else { t };
            let sub = parse_torus(k, &t)?;
            Some(Sub::Torus(sub).embed(g))
        }
        Ambient::Sphere(cover) => Some(Sub::Sph(cover, parse_sph(cover, &t, param)?).embed(g)),
        Ambient::SO4 => Some(EmbeddedSubgroup::so4(match t.as_str() {
            "e" | "1" => So4Sub::Identity,
            "Z2" | "center" | "-1" => So4Sub::Center,
            "SO3" => So4Sub::SO3,
            "O3" => So4Sub::O3,
            "SO4" => So4Sub::Whole,
            _ => return None,
        })),
        Ambient::SO3xS1 => {
            if let Some(inner) = t.strip_prefix("diag(").and_then(|s| s.strip_suffix(')')) {
                let v = parse_ints(inner)?;
                return (v.len() == 2 && v.iter().any(|&x| x != 0))
                    .then(|| EmbeddedSubgroup::so3_circle_toral(TorusSubgroup::circle(&v)));
            }
            if let Some(rest) = t.strip_prefix("toral") {
                return Some(EmbeddedSubgroup::so3_circle_toral(parse_torus(2, rest)?));
            }
            if t == "SO3xS1" {
                return Some(EmbeddedSubgroup::so3_circle(Sph::Whole, TorusSubgroup::full(1)));
            }
            let (left, right) = match t.rsplit_once('x') {
                Some((l, r)) if !l.is_empty() => (l.to_string(), r.to_string()),
                _ => (t.clone(), "1".to_string()),
            };
            let a = parse_sph(Cover::SO3, &left, param)?;
            let b = match right.as_str() {
                "1" | "e" => TorusSubgroup::trivial(1),
                "S1" | "T1" | "U1" => TorusSubgroup::full(1),
                r => {
                    let m: i64 = r.strip_prefix('Z')?.parse().ok()?;
                    if m < 1 {
                        return None;
                    }
                    TorusSubgroup::cyclic(&[1], m)
                }
            };
            Some(EmbeddedSubgroup::so3_circle(a, b))
        }
    }
}

/// Split at commas outside brackets, with 1-based columns.
fn split_top(s: &str, offset: usize) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    for &(i, ch) in &chars {
        match ch {
            '(' | '[' | '{' | '<' => depth += 1,
            ')' | ']' | '}' | '>' => depth -= 1,
            ',' if depth == 0 => {
                out.push((offset + s[..start].chars().count(), s[start..i].to_string()));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((offset + s[..start].chars().count(), s[start..].to_string()));
    // `circle@slope:1,0` carries its own commas.
    let mut merged: Vec<(usize, String)> = Vec::new();
    for (col, piece) in out {
        if let Some(last) = merged.last_mut() {
            if last.1.contains("@slope:") && piece.trim().parse::<i64>().is_ok() {
                last.1.push(',');
                last.1.push_str(&piece);
                continue;
            }
        }
        merged.push((col, piece));
    }
    merged
        .into_iter()
        .map(|(col, piece)| {
            let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
            (col + lead + 1, piece.trim().to_string())
        })
        .collect()
}

fn parse_param(s: &str, line: usize, column: usize) -> Result<u64, ParseError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(v) = t.strip_prefix("n>=") else {
        return err(line, column, format!("expected `n >= <min>`, found `{s}`"));
    };
    match v.parse::<u64>() {
        Ok(m) if m >= 1 => Ok(m),
        _ => err(line, column, format!("parameter bound must be a positive integer, found `{v}`")),
    }
}

/// Default lower bound of `n` when a family is written without one.
pub const DEFAULT_PARAM_MIN: u64 = 2;

/// Inline diagram on one line.
pub fn parse_inline(input: &str) -> Result<GroupDiagram, ParseError> {
    parse_inline_at(input, 1)
}

fn parse_inline_at(input: &str, line: usize) -> Result<GroupDiagram, ParseError> {
    let lead = input.chars().take_while(|c| c.is_whitespace()).count();
    let s = input.trim();
    if !s.starts_with('(') {
        return err(line, lead + 1, "expected `(`");
    }
    let mut depth = 0i32;
    let mut close = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    close = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let Some(close) = close else {
        return err(line, lead + s.chars().count() + 1, "missing `)`");
    };
    let inner = &s[1..close];
    let tail = s[close + 1..].trim();
    let tail_col = lead + s[..close + 1].chars().count() + 1;
    let param_min = if tail.is_empty() { DEFAULT_PARAM_MIN } else { parse_param(tail, line, tail_col + 1)? };
    let param = Param::new('n', param_min);

    let (head, circle) = match inner.split_once(';') {
        Some((a, b)) => (a, Some(b)),
        None => (inner, None),
    };
    let parts = split_top(head, lead + 1);
    let orbit = match circle {
        None => OrbitSpace::Interval,
        Some(c) => {
            let col = lead + 2 + head.chars().count() + 1;
            let c = c.trim();
            match c.strip_prefix("circle") {
                Some("") => OrbitSpace::Circle { gluing: 0 },
                Some(rest) => match rest.trim_start_matches(['/', ':']).parse() {
                    Ok(gluing) => OrbitSpace::Circle { gluing },
                    Err(_) => return err(line, col, format!("bad gluing `{rest}`")),
                },
                None => return err(line, col, format!("expected `circle`, found `{c}`")),
            }
        }
    };
    let expected = if orbit == OrbitSpace::Interval { 4 } else { 2 };
    if parts.len() != expected {
        return err(line, lead + 1, format!("expected {expected} entries, found {}", parts.len()));
    }
    let (gcol, gtok) = &parts[0];
    let Some(g) = parse_group(gtok) else {
        return err(line, *gcol, format!("unknown group `{gtok}`"));
    };
    let mut subs = Vec::new();
    for (col, tok) in &parts[1..] {
        match parse_subgroup(&g, tok, &param) {
            Some(s) => subs.push(s),
            None => return err(line, *col, format!("unknown subgroup `{tok}` of {}", group_token(&g))),
        }
    }
    let h = subs.remove(0);
    let d = match orbit {
        OrbitSpace::Interval => {
            let kp = subs.pop().expect("four entries");
            let km = subs.pop().expect("four entries");
            GroupDiagram::new(g, h, km, kp)
        }
        OrbitSpace::Circle { gluing } => GroupDiagram::over_circle(g, h, gluing),
    };
    Ok(d)
}

/// A `key = value` document, or an inline diagram.
pub fn parse_document(input: &str) -> Result<GroupDiagram, ParseError> {
    let meaningful: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if let [(line, l)] = meaningful.as_slice() {
        if l.trim_start().starts_with('(') {
            return parse_inline_at(l, *line);
        }
    }
    let mut fields: Vec<(&str, usize, usize, String)> = Vec::new();
    for (line, l) in &meaningful {
        let Some((k, v)) = l.split_once('=') else {
            if l.trim_start().starts_with('(') {
                return parse_inline_at(l, *line);
            }
            return err(*line, 1, "expected `key = value`");
        };
        let key = k.trim();
        const KEYS: [&str; 7] = ["schema_version", "group", "h", "k_minus", "k_plus", "orbit_space", "param"];
        let Some(&key) = KEYS.iter().find(|&&x| x == key) else {
            return err(*line, 1 + k.len() - k.trim_start().len(), format!("unknown key `{key}`"));
        };
        if fields.iter().any(|f| f.0 == key) {
            return err(*line, 1, format!("duplicate key `{key}`"));
        }
        let col = k.chars().count() + 2 + (v.chars().count() - v.trim_start().chars().count());
        fields.push((key, *line, col, v.trim().to_string()));
    }
    let get = |key: &str| fields.iter().find(|f| f.0 == key);
    let last_line = meaningful.last().map(|x| x.0).unwrap_or(1);
    let missing = |key: &str| ParseError { line: last_line, column: 1, message: format!("missing key `{key}`") };
    if let Some((_, line, col, v)) = get("schema_version") {
        if v != SCHEMA_VERSION {
            return err(*line, *col, format!("unsupported schema_version `{v}`"));
        }
    }
    let param_min = match get("param") {
        Some((_, line, col, v)) => parse_param(v, *line, *col)?,
        None => DEFAULT_PARAM_MIN,
    };
    let param = Param::new('n', param_min);
    let (_, gline, gcol, gtok) = get("group").ok_or_else(|| missing("group"))?;
    let Some(g) = parse_group(gtok) else {
        return err(*gline, *gcol, format!("unknown group `{gtok}`"));
    };
    let sub = |key: &str| -> Result<Option<EmbeddedSubgroup>, ParseError> {
        match get(key) {
            None => Ok(None),
            Some((_, line, col, tok)) => match parse_subgroup(&g, tok, &param) {
                Some(s) => Ok(Some(s)),
                None => err(*line, *col, format!("unknown subgroup `{tok}` of {}", group_token(&g))),
            },
        }
    };
    let h = sub("h")?.ok_or_else(|| missing("h"))?;
    let orbit = match get("orbit_space") {
        None => OrbitSpace::Interval,
        Some((_, line, col, v)) => match v.as_str() {
            "interval" => OrbitSpace::Interval,
            "circle" => OrbitSpace::Circle { gluing: 0 },
            other => match other.strip_prefix("circle:").and_then(|x| x.parse().ok()) {
                Some(gluing) => OrbitSpace::Circle { gluing },
                None => return err(*line, *col, format!("unknown orbit_space `{other}`")),
            },
        },
    };
    match orbit {
        OrbitSpace::Interval => {
            let km = sub("k_minus")?.ok_or_else(|| missing("k_minus"))?;
            let kp = sub("k_plus")?.ok_or_else(|| missing("k_plus"))?;
            Ok(GroupDiagram::new(g, h, km, kp))
        }
        OrbitSpace::Circle { gluing } => {
            if let Some((_, line, _, _)) = get("k_minus").or_else(|| get("k_plus")) {
                return err(*line, 1, "singular isotropy groups given for a circle orbit space");
            }
            Ok(GroupDiagram::over_circle(g, h, gluing))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::canonical_form;

    #[test]
    fn inline_examples() {
        let d = parse_inline("(SO3, O2, SO3, SO3)").unwrap();
        assert_eq!(d.to_string(), "(SO(3), O(2), SO(3), SO(3))");
        let d = parse_inline("(T2, e, circle(1,0), circle(0,1))").unwrap();
        assert_eq!(d.to_string(), "(T^2, e, circle(1,0), circle(0,1))");
        let d = parse_inline("(SU(2), <i>, SU(2), Pin(2))").unwrap();
        assert_eq!(d.to_string(), "(SU(2), <i>, SU(2), Pin(2))");
        let d = parse_inline("(SO(3)xS^1, O(2), SO(3), O(2)xZ_2)").unwrap();
        assert_eq!(d.to_string(), "(SO(3)xS^1, O(2), SO(3), O(2)xZ_2)");
        let d = parse_inline("(T2, e, circle@slope:1,0, circle@slope:0,1)").unwrap();
        assert_eq!(serialize(&d), "(T2, e, circle(1,0), circle(0,1))");
        let d = parse_inline("(SU2, Zn@axis:x, SU2, Z2n) n>=3").unwrap();
        assert_eq!(d.parameter(), Some(Param::new('n', 3)));
        assert_eq!(serialize(&d), "(SU2, Zn, SU2, Z2n) n>=3");
        let d = parse_inline("(SO3, SO2; circle/1)").unwrap();
        assert_eq!(d.orbit_space, OrbitSpace::Circle { gluing: 1 });
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_inline("(SO3, O2, SO3, Q17)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 16));
        let e = parse_inline("(SO5, e, e, e)").unwrap_err();
        assert_eq!((e.line, e.column), (1, 2));
        let e = parse_document("group = SO3\nh = O2\nk_minus = SO3\nk_plus = XX\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 10));
        assert!(parse_inline("SO3, O2").is_err());
        assert!(parse_inline("(SO3, O2, SO3)").is_err());
    }

    #[test]
    fn document_round_trip() {
        let d = parse_inline("(SO3, Zn, SO3, Z2n) n>=1").unwrap();
        let doc = DiagramDocument::from_diagram(&d).to_string();
        assert_eq!(parse_document(&doc).unwrap(), d);
        let c = canonical_form(&d);
        assert_eq!(parse_inline(&serialize(&c)).unwrap(), c);
    }
}
