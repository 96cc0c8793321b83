//! Distribution files and source literals.
//!
//! A distribution file is UTF-8 text with one probability per line, written
//! `a/b` or as a decimal literal; blank lines and lines starting with `#` are
//! ignored. Source literals:
//!
//! | literal                    | meaning                                         |
//! |----------------------------|-------------------------------------------------|
//! | `geom:q`                   | `p_i = q (1-q)^(i-1)`                           |
//! | `alpha:[a1,a2,...]`        | alpha rule, last entry repeats                  |
//! | `alpha-cycle:[a1,...]`     | alpha rule, the list repeats cyclically         |
//! | `head:[p1,...];geom:q`     | explicit head, geometric continuation           |
//! | `dist:[p1,...]`            | inline finite distribution                      |
//! | `file:PATH` or `PATH`      | finite distribution file                        |

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::dist::{DistError, FiniteDistribution};
use crate::rational::{ParseRationalError, Rational};
use crate::source::{AlphaSequence, SourceError, SourceSpec};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: ParseRationalError,
    },
    #[error("bad list entry {entry:?}: {source}")]
    ListEntry {
        entry: String,
        #[source]
        source: ParseRationalError,
    },
    #[error("unrecognized source literal {0:?}")]
    UnknownLiteral(String),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Source(#[from] SourceError),
}

/// A parsed input: either a finite distribution or an infinite source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Finite(FiniteDistribution),
    Infinite(SourceSpec),
}

impl Source {
    pub fn as_spec(&self) -> Result<&SourceSpec, SourceError> {
        match self {
            Source::Infinite(spec) => Ok(spec),
            Source::Finite(_) => Err(SourceError::TailNotComputable(
                "a finite distribution has no infinite tail".into(),
            )),
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteDistribution> {
        match self {
            Source::Finite(d) => Some(d),
            Source::Infinite(_) => None,
        }
    }
}

pub fn parse_distribution_text(text: &str) -> Result<Vec<Rational>, InputError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value = line.parse().map_err(|source| InputError::Line {
            line: idx + 1,
            source,
        })?;
        out.push(value);
    }
    Ok(out)
}

pub fn read_distribution_file(path: impl AsRef<Path>) -> Result<FiniteDistribution, InputError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(FiniteDistribution::new(&parse_distribution_text(&text)?)?)
}

fn parse_list(body: &str) -> Result<Vec<Rational>, InputError> {
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| InputError::UnknownLiteral(body.to_string()))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse().map_err(|source| InputError::ListEntry {
                entry: s.to_string(),
                source,
            })
        })
        .collect()
}

fn parse_scalar(body: &str) -> Result<Rational, InputError> {
    body.trim().parse().map_err(|source| InputError::ListEntry {
        entry: body.to_string(),
        source,
    })
}

pub fn parse_source(literal: &str) -> Result<Source, InputError> {
    let lit = literal.trim();
    if let Some(rest) = lit.strip_prefix("geom:") {
        return Ok(Source::Infinite(SourceSpec::geometric(parse_scalar(
            rest,
        )?)?));
    }
    if let Some(rest) = lit.strip_prefix("alpha-cycle:") {
        let seq = AlphaSequence::cyclic(parse_list(rest)?)?;
        return Ok(Source::Infinite(SourceSpec::alpha(seq)));
    }
    if let Some(rest) = lit.strip_prefix("alpha:") {
        let seq = AlphaSequence::repeat_last(parse_list(rest)?)?;
        return Ok(Source::Infinite(SourceSpec::alpha(seq)));
    }
    if let Some(rest) = lit.strip_prefix("head:") {
        let (head, tail) = rest
            .split_once(";geom:")
            .ok_or_else(|| InputError::UnknownLiteral(lit.to_string()))?;
        let spec = SourceSpec::explicit_head(parse_list(head)?, parse_scalar(tail)?)?;
        return Ok(Source::Infinite(spec));
    }
    if let Some(rest) = lit.strip_prefix("dist:") {
        return Ok(Source::Finite(FiniteDistribution::new(&parse_list(rest)?)?));
    }
    if let Some(rest) = lit.strip_prefix("file:") {
        return Ok(Source::Finite(read_distribution_file(rest)?));
    }
    if Path::new(lit).is_file() {
        return Ok(Source::Finite(read_distribution_file(lit)?));
    }
    Err(InputError::UnknownLiteral(lit.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn text_with_comments_and_decimals() {
        let text = "# dyadic\n1/2\n\n0.25\n  # trailing comment\n.25\n";
        assert_eq!(
            parse_distribution_text(text).unwrap(),
            vec![r(1, 2), r(1, 4), r(1, 4)]
        );
    }

    #[test]
    fn bad_line_reports_number() {
        match parse_distribution_text("1/2\nhalf\n") {
            Err(InputError::Line { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn literals() {
        assert_eq!(
            parse_source("geom:1/4").unwrap(),
            Source::Infinite(SourceSpec::geometric(r(1, 4)).unwrap())
        );
        let Source::Infinite(SourceSpec::Alpha { alphas }) =
            parse_source("alpha:[1/2, 2/5]").unwrap()
        else {
            panic!("expected alpha source");
        };
        assert_eq!(alphas.alpha(1), r(1, 2));
        assert_eq!(alphas.alpha(7), r(2, 5));
        let Source::Infinite(SourceSpec::Alpha { alphas }) =
            parse_source("alpha-cycle:[2/5,3/5]").unwrap()
        else {
            panic!("expected alpha source");
        };
        assert_eq!(alphas.alpha(4), r(3, 5));
        assert!(matches!(
            parse_source("head:[1/2,1/4];geom:1/2").unwrap(),
            Source::Infinite(SourceSpec::ExplicitHead { .. })
        ));
        assert!(matches!(
            parse_source("dist:[0.5,0.25,0.25]").unwrap(),
            Source::Finite(_)
        ));
        assert!(matches!(
            parse_source("nonsense"),
            Err(InputError::UnknownLiteral(_))
        ));
        assert!(matches!(
            parse_source("geom:3/2"),
            Err(InputError::Source(SourceError::ParameterOutOfRange(_)))
        ));
    }

    #[test]
    fn files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.txt");
        fs::write(&path, "1/2\n1/4\n1/8\n").unwrap();
        let err = parse_source(&format!("file:{}", path.display())).unwrap_err();
        assert!(matches!(
            err,
            InputError::Dist(DistError::NotNormalized { .. })
        ));
        fs::write(&path, "1/2\n1/4\n1/8\n1/8\n").unwrap();
        let src = parse_source(path.to_str().unwrap()).unwrap();
        assert_eq!(src.as_finite().unwrap().len(), 4);
        assert!(src.as_spec().is_err());
        assert!(matches!(
            read_distribution_file(dir.path().join("missing.txt")),
            Err(InputError::Io { .. })
        ));
    }
}
