use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::PrimeField;
use crate::polyspace::{is_identifier, parse_poly, Poly};

use super::{build_graded, build_local, GradedAlgebra, LocalAlgebra};

/// Degree cap used when a file gives none.
pub const DEFAULT_CAP: usize = 10;

/// Contents of an algebra definition file:
///
/// ```text
/// # comment
/// p = 101
/// vars = x, y
/// relations = x*y, x^3 - y^3
/// cap = 10            # optional
/// local = true        # optional, requires trunc
/// trunc = 3
/// ```
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub field: PrimeField,
    pub vars: Arc<[String]>,
    pub relations: Vec<Poly>,
    pub cap: Option<usize>,
    pub local: bool,
    pub trunc: Option<usize>,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::AlgebraFile {
        line,
        col,
        msg: msg.into(),
    }
}

/// 1-based column of byte offset `at` in `line`.
fn col_of(line: &str, at: usize) -> usize {
    line[..at.min(line.len())].chars().count() + 1
}

struct Entry<'a> {
    line: usize,
    text: &'a str,
    /// Byte offset of the value within `text`.
    value_at: usize,
}

impl Entry<'_> {
    fn value(&self) -> &str {
        &self.text[self.value_at..]
    }

    fn number(&self) -> Result<usize> {
        let v = self.value().trim();
        v.parse().map_err(|_| {
            let lead = self.value().len() - self.value().trim_start().len();
            err(
                self.line,
                col_of(self.text, self.value_at + lead),
                format!("expected a number, found `{v}`"),
            )
        })
    }
}

/// Parses the text of an algebra file. Errors carry 1-based line and
/// column numbers.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile> {
    let mut entries: Vec<(String, Entry)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let lead = content.len() - content.trim_start().len();
            return Err(err(line, col_of(raw, lead), "expected `key = value`"));
        };
        let key = content[..eq].trim().to_string();
        if entries.iter().any(|(k, _)| *k == key) {
            return Err(err(line, 1, format!("duplicate key `{key}`")));
        }
        entries.push((
            key,
            Entry {
                line,
                text: content,
                value_at: eq + 1,
            },
        ));
    }
    let get = |k: &str| entries.iter().find(|(key, _)| key == k).map(|(_, e)| e);
    for (k, e) in &entries {
        if !["p", "vars", "relations", "cap", "local", "trunc"].contains(&k.as_str()) {
            return Err(err(e.line, 1, format!("unknown key `{k}`")));
        }
    }
    let last = text.lines().count().max(1);

    let field = match get("p") {
        Some(e) => {
            let p = e.number()?;
            let p = u32::try_from(p).map_err(|_| err(e.line, 1, format!("{p} is too large")))?;
            PrimeField::new(p).map_err(|x| err(e.line, col_of(e.text, e.value_at) + 1, x.to_string()))?
        }
        None => PrimeField::default(),
    };

    let ve = get("vars").ok_or_else(|| err(last, 1, "missing `vars`"))?;
    let mut names = Vec::new();
    let mut at = ve.value_at;
    for piece in ve.value().split(',') {
        let name = piece.trim();
        let lead = piece.len() - piece.trim_start().len();
        if !is_identifier(name) {
            return Err(err(
                ve.line,
                col_of(ve.text, at + lead),
                format!("`{name}` is not a variable name"),
            ));
        }
        if names.iter().any(|n| n == name) {
            return Err(err(
                ve.line,
                col_of(ve.text, at + lead),
                format!("variable `{name}` repeated"),
            ));
        }
        names.push(name.to_string());
        at += piece.len() + 1;
    }
    let vars: Arc<[String]> = names.into();

    let mut relations = Vec::new();
    if let Some(re) = get("relations") {
        let mut at = re.value_at;
        for piece in re.value().split(',') {
            if piece.trim().is_empty() {
                if re.value().trim().is_empty() {
                    break;
                }
                return Err(err(re.line, col_of(re.text, at), "empty relation"));
            }
            let poly = parse_poly(piece, &vars, field).map_err(|x| match x {
                Error::Syntax { pos, msg } => err(re.line, col_of(re.text, at + pos), msg),
                Error::UnknownVariable { name, pos } => {
                    err(re.line, col_of(re.text, at + pos), format!("unknown variable `{name}`"))
                }
                other => err(re.line, col_of(re.text, at), other.to_string()),
            })?;
            relations.push(poly);
            at += piece.len() + 1;
        }
    }

    let cap = get("cap").map(Entry::number).transpose()?;
    let trunc = get("trunc").map(Entry::number).transpose()?;
    let local = match get("local") {
        None => false,
        Some(e) => match e.value().trim() {
            "true" => true,
            "false" => false,
            v => {
                return Err(err(
                    e.line,
                    col_of(e.text, e.value_at) + 1,
                    format!("expected true or false, found `{v}`"),
                ))
            }
        },
    };
    if local && trunc.is_none() {
        return Err(err(
            get("local").map_or(last, |e| e.line),
            1,
            "`local = true` requires `trunc`",
        ));
    }
    Ok(AlgebraFile {
        field,
        vars,
        relations,
        cap,
        local,
        trunc,
    })
}

impl AlgebraFile {
    /// The graded algebra, with cap from the file or
    /// `max(DEFAULT_CAP, max relation degree + 1)`.
    pub fn graded(&self) -> Result<GradedAlgebra> {
        let maxdeg = self.relations.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let cap = self.cap.unwrap_or(DEFAULT_CAP.max(maxdeg + 1));
        build_graded(self.field, self.vars.clone(), &self.relations, cap)
    }

    /// The local algebra `k[x]/(I + m^{trunc+1})`; the truncation defaults
    /// to the cap, then to `DEFAULT_CAP`.
    pub fn local(&self) -> Result<LocalAlgebra> {
        let n = self.trunc.or(self.cap).unwrap_or(DEFAULT_CAP);
        build_local(self.field, self.vars.clone(), &self.relations, n)
    }

    /// Whether every relation is homogeneous, so that a graded algebra can
    /// be built.
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| r.is_zero() || r.is_homogeneous())
    }
}
