//! Line-oriented spec files.
//!
//! ```text
//! # comment
//! [geometry]
//! kind = round-sphere
//! n = 4
//! resolution = 24, 24, 24, 8
//!
//! [run]
//! resolutions = 16, 24
//! yamabe = exact
//! ```
//!
//! Keys are unique within a section. Values run to the end of the line;
//! lists are comma separated.

use std::collections::BTreeMap;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    /// Offending key, when the error concerns one.
    pub key: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub value: String,
    pub line: usize,
}

/// One `[section]` of key/value pairs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Section {
    pub line: usize,
    entries: BTreeMap<String, Entry>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpecFile {
    sections: BTreeMap<String, Section>,
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut sections: BTreeMap<String, Section> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.split('#').next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            if let Some(rest) = s.strip_prefix('[') {
                let name = rest.strip_suffix(']').map(str::trim).filter(|n| is_ident(n)).ok_or(ParseError {
                    line,
                    key: None,
                    message: format!("malformed section header `{s}`"),
                })?;
                if sections.contains_key(name) {
                    return Err(ParseError { line, key: None, message: format!("duplicate section [{name}]") });
                }
                sections.insert(name.to_string(), Section { line, entries: BTreeMap::new() });
                current = Some(name.to_string());
                continue;
            }
            let (key, value) = s.split_once('=').ok_or(ParseError {
                line,
                key: None,
                message: format!("expected `key = value`, found `{s}`"),
            })?;
            let key = key.trim();
            if !is_ident(key) {
                return Err(ParseError { line, key: Some(key.to_string()), message: format!("invalid key `{key}`") });
            }
            let section = current.as_ref().ok_or(ParseError {
                line,
                key: Some(key.to_string()),
                message: format!("key `{key}` appears before any section header"),
            })?;
            let sec = sections.get_mut(section).expect("current section exists");
            let value = value.trim();
            if value.is_empty() {
                return Err(ParseError { line, key: Some(key.to_string()), message: format!("key `{key}` has no value") });
            }
            if sec.entries.insert(key.to_string(), Entry { value: value.to_string(), line }).is_some() {
                return Err(ParseError {
                    line,
                    key: Some(key.to_string()),
                    message: format!("duplicate key `{key}` in [{section}]"),
                });
            }
        }
        Ok(SpecFile { sections })
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.get(name)
    }

    pub fn section_names(&self) -> impl Iterator<Item = (&str, usize)> {
        self.sections.iter().map(|(k, s)| (k.as_str(), s.line))
    }
}

impl Section {
    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = (&str, usize)> {
        self.entries.iter().map(|(k, e)| (k.as_str(), e.line))
    }

    /// Rejects any key outside `allowed`.
    pub fn expect_keys(&self, section: &str, allowed: &[&str]) -> Result<(), ParseError> {
        for (k, line) in self.keys() {
            if !allowed.contains(&k) {
                return Err(ParseError {
                    line,
                    key: Some(k.to_string()),
                    message: format!("unknown key `{k}` in [{section}]"),
                });
            }
        }
        Ok(())
    }

    pub fn parse<V: FromStr>(&self, key: &str) -> Result<Option<V>, ParseError> {
        self.get(key).map(|e| parse_value(key, e)).transpose()
    }

    pub fn require<V: FromStr>(&self, section: &str, key: &str) -> Result<V, ParseError> {
        self.parse(key)?.ok_or(ParseError {
            line: self.line,
            key: Some(key.to_string()),
            message: format!("missing required key `{key}` in [{section}]"),
        })
    }

    pub fn list<V: FromStr>(&self, key: &str) -> Result<Option<Vec<V>>, ParseError> {
        self.get(key)
            .map(|e| {
                e.value
                    .split(',')
                    .map(|item| parse_value(key, &Entry { value: item.trim().to_string(), line: e.line }))
                    .collect()
            })
            .transpose()
    }
}

fn parse_value<V: FromStr>(key: &str, e: &Entry) -> Result<V, ParseError> {
    e.value.parse().map_err(|_| ParseError {
        line: e.line,
        key: Some(key.to_string()),
        message: format!("cannot parse `{}` for key `{key}`", e.value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_and_comments() {
        let f = SpecFile::parse("# top\n[geometry]\nkind = flat-torus # trailing\nn=4\n\n[run]\nresolutions = 8, 12\n").unwrap();
        let g = f.section("geometry").unwrap();
        assert_eq!(g.get("kind").unwrap().value, "flat-torus");
        assert_eq!(g.parse::<usize>("n").unwrap(), Some(4));
        assert_eq!(f.section("run").unwrap().list::<usize>("resolutions").unwrap(), Some(vec![8, 12]));
    }

    #[test]
    fn errors_carry_lines_and_keys() {
        let e = SpecFile::parse("[geometry]\nn = 4\nn = 5\n").unwrap_err();
        assert_eq!((e.line, e.key.as_deref()), (3, Some("n")));
        let e = SpecFile::parse("n = 4\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = SpecFile::parse("[geometry\n").unwrap_err();
        assert_eq!(e.line, 1);
        let f = SpecFile::parse("[g]\n\nn = four\n").unwrap();
        let e = f.section("g").unwrap().parse::<usize>("n").unwrap_err();
        assert_eq!((e.line, e.key.as_deref()), (3, Some("n")));
    }
}
