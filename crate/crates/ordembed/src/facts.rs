//! Line-based fact files.
//!
//! ```text
//! # stage 2
//! E 0
//! E 2
//! L 0 2
//! ```
//!
//! `E x` declares an element and `L x y` declares `x < y`. The writer emits
//! elements in increasing order followed by the covering facts only; the
//! reader accepts any set of `L` facts whose transitive closure is total.
//! A file without `# stage` markers holds a single diagram, numbered 0.

use std::fmt::Write as _;

use ordembed_core::{ElementName, FiniteDiagram, LinearityViolation};

#[derive(Debug, thiserror::Error)]
pub enum FactsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("stage {stage}: {source}")]
    NotLinear {
        stage: usize,
        #[source]
        source: LinearityViolation,
    },
}

/// A numbered sequence of diagrams.
pub type Stages = Vec<(usize, FiniteDiagram)>;

pub fn write_diagram(out: &mut String, d: &FiniteDiagram) {
    for x in d.elements() {
        writeln!(out, "E {x}").unwrap();
    }
    for w in d.elements().windows(2) {
        writeln!(out, "L {} {}", w[0], w[1]).unwrap();
    }
}

pub fn write_stages<'a>(stages: impl IntoIterator<Item = (usize, &'a FiniteDiagram)>) -> String {
    let mut out = String::new();
    for (s, d) in stages {
        writeln!(out, "# stage {s}").unwrap();
        write_diagram(&mut out, d);
    }
    out
}

#[derive(Default)]
struct Pending {
    stage: usize,
    elements: Vec<ElementName>,
    less: Vec<(ElementName, ElementName)>,
}

impl Pending {
    fn finish(self) -> Result<(usize, FiniteDiagram), FactsError> {
        FiniteDiagram::from_order_facts(&self.elements, &self.less)
            .map(|d| (self.stage, d))
            .map_err(|source| FactsError::NotLinear {
                stage: self.stage,
                source,
            })
    }
}

pub fn parse_stages(text: &str) -> Result<Stages, FactsError> {
    let mut out = Vec::new();
    let mut current: Option<Pending> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let syntax = |message: String| FactsError::Syntax {
            line: i + 1,
            message,
        };
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let mut words = rest.split_whitespace();
            if words.next() != Some("stage") {
                continue;
            }
            let stage = words
                .next()
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| syntax(format!("bad stage marker {line:?}")))?;
            if words.next().is_some() {
                return Err(syntax(format!("bad stage marker {line:?}")));
            }
            if let Some(p) = current.take() {
                out.push(p.finish()?);
            }
            current = Some(Pending {
                stage,
                ..Pending::default()
            });
            continue;
        }
        let name = |w: &str| {
            w.parse::<ElementName>()
                .map_err(|e| syntax(format!("{w:?}: {e}")))
        };
        let words: Vec<&str> = line.split_whitespace().collect();
        let p = current.get_or_insert_with(Pending::default);
        match words.as_slice() {
            ["E", x] => p.elements.push(name(x)?),
            ["L", x, y] => p.less.push((name(x)?, name(y)?)),
            _ => return Err(syntax(format!("expected `E x` or `L x y`, found {line:?}"))),
        }
    }
    if let Some(p) = current {
        out.push(p.finish()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_full_and_covering_facts() {
        let text = "E 2\nE 0\nE 1\nL 2 0\nL 0 1\nL 2 1\n";
        let stages = parse_stages(text).unwrap();
        assert_eq!(stages.len(), 1);
        assert_eq!(stages[0].1, FiniteDiagram::from_atoms([2, 0, 1]).unwrap());
    }

    #[test]
    fn rejects_partial_orders_and_junk() {
        assert!(matches!(
            parse_stages("E 0\nE 1\n"),
            Err(FactsError::NotLinear { .. })
        ));
        assert!(matches!(
            parse_stages("# stage 0\nQ 1\n"),
            Err(FactsError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_stages("# stage x\n"),
            Err(FactsError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_stages("E P(0\n"),
            Err(FactsError::Syntax { .. })
        ));
    }

    #[test]
    fn empty_stages_survive() {
        let d = FiniteDiagram::empty();
        let text = write_stages([(0, &d), (1, &d)]);
        assert_eq!(text, "# stage 0\n# stage 1\n");
        assert_eq!(parse_stages(&text).unwrap().len(), 2);
    }
}
