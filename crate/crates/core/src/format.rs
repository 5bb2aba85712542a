//! The `.cat` text format: a finite category with optional marked classes,
//! strict types, reindexing choices and path objects. See `docs/FORMAT.md`.

use crate::dispcat::{DispCat, MapClass, Reindexing, StrictType, Structure};
use crate::error::Error;
use crate::fincat::{FiniteCategory, MorId};
use crate::pathcat::{PathCat, PathObjectWitness};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub const SECTIONS: [&str; 9] = [
    "meta",
    "objects",
    "morphisms",
    "identities",
    "composition",
    "classes",
    "strict-types",
    "reindex",
    "path-objects",
];

pub const CLASS_NAMES: [&str; 3] = ["display", "fibration", "equivalence"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    /// A reference to an undeclared object or morphism.
    Dangling(String),
    Semantic(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Syntax(m) | ParseErrorKind::Semantic(m) => f.write_str(m),
            ParseErrorKind::Dangling(id) => write!(f, "unknown identifier `{id}`"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClassItem {
    All,
    Isos,
    Identities,
    Named(String),
}

impl fmt::Display for ClassItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassItem::All => f.write_str("*"),
            ClassItem::Isos => f.write_str("@isos"),
            ClassItem::Identities => f.write_str("@identities"),
            ClassItem::Named(n) => f.write_str(n),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryFile {
    pub meta: Vec<(String, String)>,
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, String, String)>,
    pub identities: Vec<(String, String)>,
    pub composition: Vec<(String, String, String)>,
    pub classes: Vec<(String, Vec<ClassItem>)>,
    pub strict_types: Vec<(String, String)>,
    /// `(type, sigma, result, weakening)`
    pub reindex: Vec<(String, String, String, String)>,
    /// `(fibration, carrier, r, s, t)`
    pub path_objects: Vec<(String, String, String, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Arrow,
    Equals,
    Dot,
    Star,
    At(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Star => f.write_str("`*`"),
            Tok::At(s) => write!(f, "`@{s}`"),
        }
    }
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '*')
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

/// Tokens of one line with their 1-based columns; `#` starts a comment.
fn lex(line_no: usize, text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if ident_start(c) || c == '@' {
            let start = if c == '@' { i + 1 } else { i };
            let mut j = start;
            while j < chars.len() && ident_char(chars[j]) {
                j += 1;
            }
            if j == start {
                return Err(err(line_no, col, "expected a name after `@`"));
            }
            let word: String = chars[start..j].iter().collect();
            out.push((col, if c == '@' { Tok::At(word) } else { Tok::Ident(word) }));
            i = j;
            continue;
        }
        let tok = match c {
            ':' => Tok::Colon,
            '=' => Tok::Equals,
            '.' => Tok::Dot,
            '*' => Tok::Star,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            other => return Err(err(line_no, col, format!("unexpected character `{other}`"))),
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

/// Position of every identifier occurrence, for semantic errors.
type Refs = Vec<(usize, usize, String, RefKind)>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum RefKind {
    Object,
    Morphism,
    Type,
}

struct Line<'a> {
    no: usize,
    toks: &'a [(usize, Tok)],
    end: usize,
}

impl Line<'_> {
    fn expect_shape(&self, shape: &[Option<Tok>]) -> Result<Vec<String>, ParseError> {
        let mut names = Vec::new();
        for (k, want) in shape.iter().enumerate() {
            let Some((col, tok)) = self.toks.get(k) else {
                let what = match want {
                    None => "a name".to_string(),
                    Some(t) => t.to_string(),
                };
                return Err(err(self.no, self.end, format!("expected {what} before end of line")));
            };
            match (want, tok) {
                (None, Tok::Ident(s)) => names.push(s.clone()),
                (None, other) => return Err(err(self.no, *col, format!("expected a name, found {other}"))),
                (Some(w), t) if w == t => {}
                (Some(w), t) => return Err(err(self.no, *col, format!("expected {w}, found {t}"))),
            }
        }
        if let Some((col, tok)) = self.toks.get(shape.len()) {
            return Err(err(self.no, *col, format!("unexpected {tok}")));
        }
        Ok(names)
    }

    fn col(&self, k: usize) -> usize {
        self.toks.get(k).map(|(c, _)| *c).unwrap_or(self.end)
    }
}

const NAME: Option<Tok> = None;

/// Parses and resolves every reference; a dangling name is reported at its
/// first occurrence.
pub fn parse(text: &str) -> Result<CategoryFile, ParseError> {
    let mut file = CategoryFile::default();
    let mut section: Option<&'static str> = None;
    let mut seen: BTreeSet<&'static str> = BTreeSet::new();
    let mut refs: Refs = Vec::new();
    let mut decl_obj: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut decl_mor: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut decl_type: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut classes_seen: BTreeSet<String> = BTreeSet::new();

    let dup = |line: usize, col: usize, what: &str, name: &str| ParseError {
        line,
        col,
        kind: ParseErrorKind::Semantic(format!("duplicate {what} `{name}`")),
    };

    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let trimmed = raw.trim_start();
        let indent = raw.len() - trimmed.len();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed.starts_with('[') {
            let close = trimmed
                .find(']')
                .ok_or_else(|| err(no, indent + 1, "unterminated section header"))?;
            let name = trimmed[1..close].trim();
            let rest = trimmed[close + 1..].trim();
            if !rest.is_empty() && !rest.starts_with('#') {
                return Err(err(no, indent + close + 2, "unexpected text after section header"));
            }
            let known = SECTIONS
                .iter()
                .find(|s| **s == name)
                .ok_or_else(|| err(no, indent + 2, format!("unknown section `{name}`")))?;
            if !seen.insert(known) {
                return Err(dup(no, indent + 1, "section", name));
            }
            section = Some(known);
            continue;
        }
        let Some(sec) = section else {
            return Err(err(no, indent + 1, "entry outside of any section"));
        };
        if sec == "meta" {
            let content = raw.split('#').next().unwrap_or("");
            let eq = content
                .find('=')
                .ok_or_else(|| err(no, indent + 1, "expected `key = value`"))?;
            let key = content[..eq].trim();
            let value = content[eq + 1..].trim();
            if key.is_empty()
                || !key
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
            {
                return Err(err(no, indent + 1, format!("invalid meta key `{key}`")));
            }
            if file.meta.iter().any(|(k, _)| k == key) {
                return Err(dup(no, indent + 1, "meta key", key));
            }
            file.meta.push((key.to_string(), value.to_string()));
            continue;
        }
        let toks = lex(no, raw)?;
        let line = Line {
            no,
            toks: &toks,
            end: raw.trim_end().chars().count() + 1,
        };
        match sec {
            "objects" => {
                for (col, tok) in &toks {
                    match tok {
                        Tok::Ident(n) => {
                            if decl_obj.insert(n.clone(), (no, *col)).is_some() {
                                return Err(dup(no, *col, "object", n));
                            }
                            file.objects.push(n.clone());
                        }
                        other => return Err(err(no, *col, format!("expected an object name, found {other}"))),
                    }
                }
            }
            "morphisms" => {
                let n = line.expect_shape(&[NAME, Some(Tok::Colon), NAME, Some(Tok::Arrow), NAME])?;
                if decl_mor.insert(n[0].clone(), (no, line.col(0))).is_some() {
                    return Err(dup(no, line.col(0), "morphism", &n[0]));
                }
                refs.push((no, line.col(2), n[1].clone(), RefKind::Object));
                refs.push((no, line.col(4), n[2].clone(), RefKind::Object));
                file.morphisms.push((n[0].clone(), n[1].clone(), n[2].clone()));
            }
            "identities" => {
                let n = line.expect_shape(&[NAME, Some(Tok::Equals), NAME])?;
                if file.identities.iter().any(|(o, _)| *o == n[0]) {
                    return Err(dup(no, line.col(0), "identity for", &n[0]));
                }
                refs.push((no, line.col(0), n[0].clone(), RefKind::Object));
                refs.push((no, line.col(2), n[1].clone(), RefKind::Morphism));
                file.identities.push((n[0].clone(), n[1].clone()));
            }
            "composition" => {
                let n = line.expect_shape(&[NAME, Some(Tok::Dot), NAME, Some(Tok::Equals), NAME])?;
                for (k, name) in [(0, &n[0]), (2, &n[1]), (4, &n[2])] {
                    refs.push((no, line.col(k), name.clone(), RefKind::Morphism));
                }
                file.composition.push((n[0].clone(), n[1].clone(), n[2].clone()));
            }
            "classes" => {
                let name = match toks.first() {
                    Some((_, Tok::Ident(s))) => s.clone(),
                    _ => return Err(err(no, line.col(0), "expected a class name")),
                };
                if !CLASS_NAMES.contains(&name.as_str()) {
                    return Err(err(
                        no,
                        line.col(0),
                        format!("unknown class `{name}`; expected one of {}", CLASS_NAMES.join(", ")),
                    ));
                }
                if !classes_seen.insert(name.clone()) {
                    return Err(dup(no, line.col(0), "class", &name));
                }
                match toks.get(1) {
                    Some((_, Tok::Equals)) => {}
                    Some((col, t)) => return Err(err(no, *col, format!("expected `=`, found {t}"))),
                    None => return Err(err(no, line.end, "expected `=` before end of line")),
                }
                let mut items = Vec::new();
                for (col, tok) in &toks[2..] {
                    items.push(match tok {
                        Tok::Star => ClassItem::All,
                        Tok::At(s) if s == "isos" => ClassItem::Isos,
                        Tok::At(s) if s == "identities" => ClassItem::Identities,
                        Tok::At(s) => return Err(err(no, *col, format!("unknown class macro `@{s}`"))),
                        Tok::Ident(s) => {
                            refs.push((no, *col, s.clone(), RefKind::Morphism));
                            ClassItem::Named(s.clone())
                        }
                        other => return Err(err(no, *col, format!("unexpected {other}"))),
                    });
                }
                file.classes.push((name, items));
            }
            "strict-types" => {
                let n = line.expect_shape(&[NAME, Some(Tok::Equals), NAME])?;
                if decl_type.insert(n[0].clone(), (no, line.col(0))).is_some() {
                    return Err(dup(no, line.col(0), "strict type", &n[0]));
                }
                refs.push((no, line.col(2), n[1].clone(), RefKind::Morphism));
                file.strict_types.push((n[0].clone(), n[1].clone()));
            }
            "reindex" => {
                let n = line.expect_shape(&[NAME, NAME, Some(Tok::Equals), NAME, NAME])?;
                if file.reindex.iter().any(|r| r.0 == n[0] && r.1 == n[1]) {
                    return Err(dup(no, line.col(0), "reindexing of", &format!("{} {}", n[0], n[1])));
                }
                refs.push((no, line.col(0), n[0].clone(), RefKind::Type));
                refs.push((no, line.col(1), n[1].clone(), RefKind::Morphism));
                refs.push((no, line.col(3), n[2].clone(), RefKind::Type));
                refs.push((no, line.col(4), n[3].clone(), RefKind::Morphism));
                file.reindex.push((n[0].clone(), n[1].clone(), n[2].clone(), n[3].clone()));
            }
            "path-objects" => {
                let n = line.expect_shape(&[NAME, Some(Tok::Equals), NAME, NAME, NAME, NAME])?;
                if file.path_objects.iter().any(|p| p.0 == n[0]) {
                    return Err(dup(no, line.col(0), "path object for", &n[0]));
                }
                refs.push((no, line.col(0), n[0].clone(), RefKind::Morphism));
                refs.push((no, line.col(2), n[1].clone(), RefKind::Object));
                for k in 3..6 {
                    refs.push((no, line.col(k), n[k - 1].clone(), RefKind::Morphism));
                }
                file.path_objects
                    .push((n[0].clone(), n[1].clone(), n[2].clone(), n[3].clone(), n[4].clone()));
            }
            _ => unreachable!("section names come from SECTIONS"),
        }
    }

    if !seen.contains("objects") {
        return Err(err(1, 1, "missing objects section"));
    }
    for (no, col, name, kind) in refs {
        let known = match kind {
            RefKind::Object => decl_obj.contains_key(&name),
            RefKind::Morphism => decl_mor.contains_key(&name),
            RefKind::Type => decl_type.contains_key(&name),
        };
        if !known {
            return Err(ParseError {
                line: no,
                col,
                kind: ParseErrorKind::Dangling(name),
            });
        }
    }
    Ok(file)
}

/// Canonical text for `file`; `parse(&emit(f)) == Ok(f)`.
pub fn emit(file: &CategoryFile) -> String {
    let mut out = String::new();
    let mut section = |name: &str, lines: Vec<String>, always: bool| {
        if lines.is_empty() && !always {
            return;
        }
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&format!("[{name}]\n"));
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
    };
    section(
        "meta",
        file.meta.iter().map(|(k, v)| format!("{k} = {v}")).collect(),
        false,
    );
    section(
        "objects",
        if file.objects.is_empty() {
            Vec::new()
        } else {
            vec![file.objects.join(" ")]
        },
        true,
    );
    section(
        "morphisms",
        file.morphisms.iter().map(|(n, d, c)| format!("{n} : {d} -> {c}")).collect(),
        false,
    );
    section(
        "identities",
        file.identities.iter().map(|(o, m)| format!("{o} = {m}")).collect(),
        false,
    );
    section(
        "composition",
        file.composition.iter().map(|(g, f, h)| format!("{g} . {f} = {h}")).collect(),
        false,
    );
    section(
        "classes",
        file.classes
            .iter()
            .map(|(n, items)| {
                let mut l = format!("{n} =");
                for it in items {
                    l.push(' ');
                    l.push_str(&it.to_string());
                }
                l
            })
            .collect(),
        false,
    );
    section(
        "strict-types",
        file.strict_types.iter().map(|(a, f)| format!("{a} = {f}")).collect(),
        false,
    );
    section(
        "reindex",
        file.reindex
            .iter()
            .map(|(a, s, b, w)| format!("{a} {s} = {b} {w}"))
            .collect(),
        false,
    );
    section(
        "path-objects",
        file.path_objects
            .iter()
            .map(|(f, p, r, s, t)| format!("{f} = {p} {r} {s} {t}"))
            .collect(),
        false,
    );
    out
}

/// A parsed file resolved against its category.
#[derive(Debug, Clone)]
pub struct Model {
    pub name: String,
    pub cat: FiniteCategory,
    pub classes: BTreeMap<String, MapClass>,
    pub structure: Option<Structure>,
    pub paths: BTreeMap<MorId, PathObjectWitness>,
    /// `expect.<check> = pass|fail` entries of the meta section.
    pub expect: BTreeMap<String, bool>,
}

impl CategoryFile {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Builds the category and resolves classes, structure and path objects.
    /// Law violations are left for `FiniteCategory::validate`.
    pub fn build(&self) -> Result<Model, Error> {
        let cat = FiniteCategory::from_parts(&self.objects, &self.morphisms, &self.identities, &self.composition)?;
        let mut classes = BTreeMap::new();
        for (name, items) in &self.classes {
            let mut class = MapClass::empty();
            for it in items {
                let add = match it {
                    ClassItem::All => MapClass::all(&cat),
                    ClassItem::Isos => MapClass::isomorphisms(&cat),
                    ClassItem::Identities => MapClass::identities(&cat),
                    ClassItem::Named(n) => std::iter::once(cat.morphism_or_err(n)?).collect(),
                };
                class = class.union(&add);
            }
            classes.insert(name.clone(), class);
        }
        let structure = if self.strict_types.is_empty() {
            None
        } else {
            let mut s = Structure::default();
            for (name, f) in &self.strict_types {
                s.types.push(StrictType {
                    name: name.clone(),
                    display: cat.morphism_or_err(f)?,
                });
            }
            for (a, sigma, b, w) in &self.reindex {
                let ia = s.type_index(a).ok_or_else(|| Error::UnknownObject(a.clone()))?;
                let ib = s.type_index(b).ok_or_else(|| Error::UnknownObject(b.clone()))?;
                s.table.insert(
                    (ia, cat.morphism_or_err(sigma)?),
                    Reindexing {
                        result: ib,
                        weakening: cat.morphism_or_err(w)?,
                    },
                );
            }
            Some(s)
        };
        if structure.is_none() && !self.reindex.is_empty() {
            return Err(Error::Precondition("reindex rows without strict types".into()));
        }
        let mut paths = BTreeMap::new();
        for (f, p, r, s, t) in &self.path_objects {
            let base = cat.morphism_or_err(f)?;
            let w = PathObjectWitness::assemble(
                &cat,
                base,
                cat.morphism_or_err(r)?,
                cat.morphism_or_err(s)?,
                cat.morphism_or_err(t)?,
            )?;
            if cat.obj_name(w.object) != p {
                return Err(Error::Precondition(format!(
                    "path object for {f} is {}, not {p}",
                    cat.obj_name(w.object)
                )));
            }
            paths.insert(base, w);
        }
        let mut expect = BTreeMap::new();
        for (k, v) in &self.meta {
            if let Some(check) = k.strip_prefix("expect.") {
                let verdict = match v.as_str() {
                    "pass" => true,
                    "fail" => false,
                    other => return Err(Error::Precondition(format!("{k}: expected pass or fail, got {other}"))),
                };
                expect.insert(check.to_string(), verdict);
            }
        }
        Ok(Model {
            name: self.meta("name").unwrap_or("").to_string(),
            cat,
            classes,
            structure,
            paths,
            expect,
        })
    }
}

impl Model {
    pub fn class(&self, name: &str) -> Option<&MapClass> {
        self.classes.get(name)
    }

    /// Display maps, falling back to the fibrations.
    pub fn display(&self) -> Option<&MapClass> {
        self.class("display").or_else(|| self.class("fibration"))
    }

    pub fn disp_cat(&self) -> Result<DispCat, Error> {
        let display = self
            .display()
            .ok_or_else(|| Error::Precondition("no display or fibration class".into()))?
            .clone();
        match &self.structure {
            Some(s) => DispCat::structured(self.cat.clone(), display, s.clone()),
            None => DispCat::new(self.cat.clone(), display),
        }
    }

    pub fn path_cat(&self) -> Result<PathCat, Error> {
        let fib = self
            .class("fibration")
            .or_else(|| self.class("display"))
            .ok_or_else(|| Error::Precondition("no fibration class".into()))?;
        let eq = self
            .class("equivalence")
            .ok_or_else(|| Error::Precondition("no equivalence class".into()))?;
        PathCat::new(self.cat.clone(), fib.clone(), eq.clone(), self.paths.clone())
    }
}

pub fn load(text: &str) -> Result<Model, String> {
    let file = parse(text).map_err(|e| e.to_string())?;
    file.build().map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const ARROW: &str = "\
[meta]
name = arrow  # a comment

[objects]
a b

[morphisms]
id_a : a -> a
id_b : b -> b
f : a -> b

[identities]
a = id_a
b = id_b

[classes]
fibration = *
equivalence = @isos
";

    #[test]
    fn parses_and_builds() {
        let f = parse(ARROW).unwrap();
        assert_eq!(f.objects, vec!["a", "b"]);
        assert_eq!(f.meta("name"), Some("arrow"));
        let m = f.build().unwrap();
        assert!(m.cat.validate().is_empty());
        assert_eq!(m.class("fibration").unwrap().len(), 3);
        assert_eq!(m.class("equivalence").unwrap().len(), 2);
    }

    #[test]
    fn emit_round_trips() {
        let f = parse(ARROW).unwrap();
        let text = emit(&f);
        assert_eq!(parse(&text).unwrap(), f);
        assert_eq!(emit(&parse(&text).unwrap()), text);
    }

    #[test]
    fn empty_file_is_missing_objects() {
        let e = parse("").unwrap_err();
        assert!(e.to_string().contains("missing objects section"));
    }

    #[test]
    fn dangling_morphism_named() {
        let text = "[objects]\na\n[morphisms]\nid_a : a -> a\n[composition]\nid_a . f = id_a\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Dangling("f".into()));
        assert_eq!((e.line, e.col), (6, 8));
    }

    #[test]
    fn syntax_errors_are_located() {
        let e = parse("[objects]\na\n[morphisms]\nf : a b\n").unwrap_err();
        assert_eq!((e.line, e.col), (4, 7));
        let e = parse("[objects]\na\n[bogus]\n").unwrap_err();
        assert!(e.to_string().contains("unknown section"));
        let e = parse("a\n").unwrap_err();
        assert_eq!(e.line, 1);
    }
}
