//! Structured element names.
//!
//! Inputs use natural-number atoms; operator outputs build names out of the
//! input names, so every output element can be traced back to input elements.
//! The textual encoding is injective: `n`, `P(x,y)`, `T(x,[y1,...,yk])`, `C(i,x)`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementName {
    Atom(u64),
    Pair(Box<ElementName>, Box<ElementName>),
    Tuple(Box<ElementName>, Vec<ElementName>),
    Copy(u64, Box<ElementName>),
}

impl ElementName {
    pub fn pair(a: &ElementName, b: &ElementName) -> ElementName {
        ElementName::Pair(Box::new(a.clone()), Box::new(b.clone()))
    }

    pub fn tuple(head: &ElementName, rest: Vec<ElementName>) -> ElementName {
        ElementName::Tuple(Box::new(head.clone()), rest)
    }

    pub fn copy(index: u64, inner: ElementName) -> ElementName {
        ElementName::Copy(index, Box::new(inner))
    }

    pub fn as_atom(&self) -> Option<u64> {
        match self {
            ElementName::Atom(n) => Some(*n),
            _ => None,
        }
    }

    /// The element a generalized-sum summand is indexed by: the first
    /// coordinate of a pair or tuple, kept under its copy tag.
    pub fn group_key(&self) -> ElementName {
        match self {
            ElementName::Atom(_) => self.clone(),
            ElementName::Pair(a, _) | ElementName::Tuple(a, _) => (**a).clone(),
            ElementName::Copy(i, inner) => ElementName::copy(*i, inner.group_key()),
        }
    }
}

impl fmt::Display for ElementName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementName::Atom(n) => write!(f, "{n}"),
            ElementName::Pair(a, b) => write!(f, "P({a},{b})"),
            ElementName::Tuple(a, rest) => {
                write!(f, "T({a},[")?;
                for (i, x) in rest.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("])")
            }
            ElementName::Copy(i, x) => write!(f, "C({i},{x})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad element name at {position}: {message}")]
pub struct NameError {
    pub position: usize,
    pub message: String,
}

impl FromStr for ElementName {
    type Err = NameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cursor = Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let name = cursor.name()?;
        if cursor.pos != s.len() {
            return Err(cursor.error("trailing characters"));
        }
        Ok(name)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn error(&self, message: &str) -> NameError {
        NameError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), NameError> {
        if self.bytes.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected '{}'", b as char)))
        }
    }

    fn number(&mut self) -> Result<u64, NameError> {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        // no leading zeros, so the encoding stays injective
        if self.pos - start > 1 && self.bytes[start] == b'0' {
            return Err(NameError {
                position: start,
                message: "leading zero".to_string(),
            });
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("number too large"))
    }

    fn name(&mut self) -> Result<ElementName, NameError> {
        match self.bytes.get(self.pos) {
            Some(b'P') => {
                self.pos += 1;
                self.expect(b'(')?;
                let a = self.name()?;
                self.expect(b',')?;
                let b = self.name()?;
                self.expect(b')')?;
                Ok(ElementName::Pair(Box::new(a), Box::new(b)))
            }
            Some(b'T') => {
                self.pos += 1;
                self.expect(b'(')?;
                let head = self.name()?;
                self.expect(b',')?;
                self.expect(b'[')?;
                let mut rest = Vec::new();
                if self.bytes.get(self.pos) != Some(&b']') {
                    loop {
                        rest.push(self.name()?);
                        if self.bytes.get(self.pos) == Some(&b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b']')?;
                self.expect(b')')?;
                Ok(ElementName::Tuple(Box::new(head), rest))
            }
            Some(b'C') => {
                self.pos += 1;
                self.expect(b'(')?;
                let i = self.number()?;
                self.expect(b',')?;
                let inner = self.name()?;
                self.expect(b')')?;
                Ok(ElementName::Copy(i, Box::new(inner)))
            }
            _ => Ok(ElementName::Atom(self.number()?)),
        }
    }
}

impl Serialize for ElementName {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<u64> for ElementName {
    fn from(n: u64) -> Self {
        ElementName::Atom(n)
    }
}

/// Renders a name list as `a < b < c`.
pub fn render_chain(names: &[ElementName]) -> String {
    let mut out = String::new();
    for (i, n) in names.iter().enumerate() {
        if i > 0 {
            out.push_str(" < ");
        }
        out.push_str(&n.to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodings() {
        let a = ElementName::Atom(3);
        let p = ElementName::pair(&a, &ElementName::Atom(0));
        assert_eq!(p.to_string(), "P(3,0)");
        let t = ElementName::tuple(&a, alloc::vec![ElementName::Atom(1), p.clone()]);
        assert_eq!(t.to_string(), "T(3,[1,P(3,0)])");
        assert_eq!(ElementName::tuple(&a, Vec::new()).to_string(), "T(3,[])");
        assert_eq!(
            ElementName::copy(2, t.clone()).to_string(),
            "C(2,T(3,[1,P(3,0)]))"
        );
        for n in [a, p, t] {
            assert_eq!(n.to_string().parse::<ElementName>().unwrap(), n);
        }
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "P(1,2", "T(1,[2,])", "C(x,1)", "01", "P(1,2)x"] {
            assert!(bad.parse::<ElementName>().is_err(), "{bad}");
        }
    }

    #[test]
    fn group_keys() {
        let p = ElementName::pair(&ElementName::Atom(4), &ElementName::Atom(1));
        assert_eq!(p.group_key(), ElementName::Atom(4));
        assert_eq!(
            ElementName::copy(1, p).group_key(),
            ElementName::copy(1, ElementName::Atom(4))
        );
    }
}
