//! Findings produced by checks and the verdict tree written by the CLI.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One violated rule, naming the morphisms or objects involved.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Finding {
    pub rule: String,
    pub detail: String,
    pub culprits: Vec<String>,
}

impl Finding {
    pub fn new(rule: &str, detail: impl Into<String>, culprits: Vec<String>) -> Self {
        Finding {
            rule: rule.to_string(),
            detail: detail.into(),
            culprits,
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        self.culprits.iter().any(|c| c == name)
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule, self.detail)?;
        if !self.culprits.is_empty() {
            write!(f, " ({})", self.culprits.join(", "))?;
        }
        Ok(())
    }
}

/// A node of the verdict tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Node>,
}

impl Node {
    pub fn leaf(name: impl Into<String>, findings: &[Finding], witnesses: Vec<String>) -> Self {
        Node {
            name: name.into(),
            pass: findings.is_empty(),
            witnesses,
            counterexamples: findings.iter().map(|f| f.to_string()).collect(),
            children: Vec::new(),
        }
    }

    pub fn pass(name: impl Into<String>, witnesses: Vec<String>) -> Self {
        Node::leaf(name, &[], witnesses)
    }

    pub fn fail(name: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Node {
            name: name.into(),
            pass: false,
            witnesses: Vec::new(),
            counterexamples: vec![counterexample.into()],
            children: Vec::new(),
        }
    }

    /// Passes iff every child passes; a failing group names its failing children.
    pub fn group(name: impl Into<String>, children: Vec<Node>) -> Self {
        let failing: Vec<String> = children
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("failed: {}", c.name))
            .collect();
        Node {
            name: name.into(),
            pass: failing.is_empty(),
            witnesses: Vec::new(),
            counterexamples: failing,
            children,
        }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<String>) -> Self {
        self.witnesses.extend(witnesses);
        self
    }

    /// Every failing node carries at least one counterexample.
    pub fn well_formed(&self) -> bool {
        (self.pass || !self.counterexamples.is_empty()) && self.children.iter().all(Node::well_formed)
    }

    /// Indented pass/fail lines for terminal output.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let tag = if self.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{pad}{tag} {}\n", self.name));
        if self.children.is_empty() {
            for c in &self.counterexamples {
                out.push_str(&format!("{pad}  - {c}\n"));
            }
        }
        for child in &self.children {
            child.render_into(depth + 1, out);
        }
    }
}

/// The machine-readable report written by `--report`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub seedless: bool,
    pub pass: bool,
    pub verdict: Node,
}

impl Report {
    pub fn new(command: impl Into<String>, input: Option<String>, seedless: bool, verdict: Node) -> Self {
        Report {
            command: command.into(),
            input,
            seedless,
            pass: verdict.pass,
            verdict,
        }
    }

    pub fn to_json(&self) -> String {
        // Serialization of plain owned data cannot fail.
        serde_json::to_string_pretty(self).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_group_names_child() {
        let g = Node::group("all", vec![Node::pass("a", vec![]), Node::fail("b", "boom")]);
        assert!(!g.pass);
        assert_eq!(g.counterexamples, vec!["failed: b".to_string()]);
        assert!(g.well_formed());
    }

    #[test]
    fn finding_display_lists_culprits() {
        let f = Finding::new("unit", "missing", vec!["f".into(), "g".into()]);
        assert_eq!(f.to_string(), "[unit] missing (f, g)");
        assert!(f.mentions("g"));
    }
}
