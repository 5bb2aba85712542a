//! The bundled `.cat` fixtures, compiled in so tests and the CLI can use them
//! without touching the filesystem.

use crate::format::{self, Model};

pub const FILES: [(&str, &str); 9] = [
    ("point", include_str!("../corpus/point.cat")),
    ("arrow", include_str!("../corpus/arrow.cat")),
    ("chain3", include_str!("../corpus/chain3.cat")),
    ("diamond", include_str!("../corpus/diamond.cat")),
    ("interval", include_str!("../corpus/interval.cat")),
    ("arrow-split", include_str!("../corpus/arrow-split.cat")),
    ("arrow-alleq", include_str!("../corpus/arrow-alleq.cat")),
    ("diamond-bigeq", include_str!("../corpus/diamond-bigeq.cat")),
    ("chain3-nofib", include_str!("../corpus/chain3-nofib.cat")),
];

pub fn text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parses and builds a bundled fixture.
pub fn load(name: &str) -> Model {
    let t = text(name).unwrap_or_else(|| panic!("no bundled fixture {name}"));
    format::load(t).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// Every fixture, parsed and built.
pub fn all() -> Vec<(&'static str, Model)> {
    FILES.iter().map(|(n, _)| (*n, load(n))).collect()
}

/// The subcommand words an `expect.<check>` key refers to; the file path goes last.
pub fn command_for(check: &str) -> Option<&'static [&'static str]> {
    Some(match check {
        "validate" => &["validate"],
        "path-axioms" => &["check", "path-axioms"],
        "dmpc" => &["check", "dmpc"],
        "root" => &["check", "root"],
        "check-split" => &["check", "split"],
        "lf" => &["check", "lf"],
        "stability" => &["check", "stability"],
        "id-types" => &["derive", "id-types"],
        "to-disp" => &["translate", "to-disp"],
        "to-path" => &["translate", "to-path"],
        "roundtrip" => &["roundtrip"],
        "split" => &["split"],
        "coherence" => &["coherence"],
        "matrix" => &["matrix"],
        _ => return None,
    })
}

/// Fixtures whose meta section expects `check` to pass.
pub fn expecting(check: &str, verdict: bool) -> Vec<(&'static str, Model)> {
    all()
        .into_iter()
        .filter(|(_, m)| m.expect.get(check) == Some(&verdict))
        .collect()
}
