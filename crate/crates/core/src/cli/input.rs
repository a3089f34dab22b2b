//! Line-oriented input files.
//!
//! ```text
//! # comments run to end of line
//! perm 2 3 1 4 5
//! perm 3 2 1 5 4
//! ```
//!
//! or
//!
//! ```text
//! n 3
//! cover 1 3
//! cover 2 3
//! ```
//!
//! A single `perm` line is paired with the identity order.

use std::fmt;

use crate::error::Error;
use crate::perm::Permutation;
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    /// One-based line number, when the problem is local to a line.
    pub line: Option<usize>,
    pub message: String,
}

impl InputError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn global(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSpec {
    Perms(Vec<Permutation>),
    Covers {
        n: usize,
        covers: Vec<(usize, usize)>,
    },
}

impl InputSpec {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let mut perms: Vec<(usize, Permutation)> = Vec::new();
        let mut n: Option<(usize, usize)> = None;
        let mut covers: Vec<(usize, (usize, usize))> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let body = raw.split('#').next().unwrap_or("");
            let mut tokens = body.split_whitespace();
            let Some(keyword) = tokens.next() else {
                continue;
            };
            let args: Vec<usize> = tokens
                .map(|t| {
                    t.parse::<usize>().map_err(|_| {
                        InputError::at(lineno, format!("`{t}` is not a non-negative integer"))
                    })
                })
                .collect::<Result<_, _>>()?;
            match keyword {
                "perm" => {
                    let p = Permutation::new(args)
                        .map_err(|e| InputError::at(lineno, e.to_string()))?;
                    if let Some((_, first)) = perms.first() {
                        if first.len() != p.len() {
                            return Err(InputError::at(
                                lineno,
                                format!(
                                    "permutation of length {} after one of length {}",
                                    p.len(),
                                    first.len()
                                ),
                            ));
                        }
                    }
                    perms.push((lineno, p));
                }
                "n" => {
                    if let Some((prev, _)) = n {
                        return Err(InputError::at(
                            lineno,
                            format!("ground set size already given on line {prev}"),
                        ));
                    }
                    match args.as_slice() {
                        [k] if *k > 0 => n = Some((lineno, *k)),
                        _ => return Err(InputError::at(lineno, "expected `n <positive integer>`")),
                    }
                }
                "cover" => match args.as_slice() {
                    [a, b] => covers.push((lineno, (*a, *b))),
                    _ => return Err(InputError::at(lineno, "expected `cover <a> <b>`")),
                },
                other => {
                    return Err(InputError::at(
                        lineno,
                        format!("unknown directive `{other}`"),
                    ))
                }
            }
        }

        match (perms.is_empty(), n) {
            (false, None) if covers.is_empty() => Ok(InputSpec::Perms(
                perms.into_iter().map(|(_, p)| p).collect(),
            )),
            (false, _) => {
                let line = n.map(|(l, _)| l).or(covers.first().map(|(l, _)| *l));
                Err(InputError {
                    line,
                    message: "cannot mix `perm` lines with `n`/`cover` lines".into(),
                })
            }
            (true, Some((_, n))) => {
                for &(line, (a, b)) in &covers {
                    for x in [a, b] {
                        if x == 0 || x > n {
                            return Err(InputError::at(
                                line,
                                format!("element {x} outside 1..={n}"),
                            ));
                        }
                    }
                    if a == b {
                        return Err(InputError::at(
                            line,
                            format!("element {a} cannot cover itself"),
                        ));
                    }
                }
                Ok(InputSpec::Covers {
                    n,
                    covers: covers.into_iter().map(|(_, c)| c).collect(),
                })
            }
            (true, None) => match covers.first() {
                Some((line, _)) => Err(InputError::at(
                    *line,
                    "`cover` needs a preceding `n <size>` line",
                )),
                None => Err(InputError::global("no `perm` or `n` lines found")),
            },
        }
    }

    /// The linear orders whose intersection is the input poset, when given
    /// as permutations. A lone permutation is paired with the identity.
    pub fn lines(&self) -> Option<Vec<Permutation>> {
        match self {
            InputSpec::Perms(ps) if ps.len() == 1 => {
                Some(vec![Permutation::identity(ps[0].len()), ps[0].clone()])
            }
            InputSpec::Perms(ps) => Some(ps.clone()),
            InputSpec::Covers { .. } => None,
        }
    }

    pub fn poset(&self) -> Result<Poset, InputError> {
        let built = match self {
            InputSpec::Perms(_) => Poset::from_linear_orders(&self.lines().expect("perm input")),
            InputSpec::Covers { n, covers } => Poset::from_covers(*n, covers),
        };
        built.map_err(|e| match e {
            Error::Cycle(x) => InputError::global(format!(
                "cover relations contain a cycle through element {x}"
            )),
            other => InputError::global(other.to_string()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_files() {
        let spec =
            InputSpec::parse("# two lines\nperm 2 3 1 4 5\n\nperm 3 2 1 5 4 # tau\n").unwrap();
        let InputSpec::Perms(ps) = &spec else {
            panic!()
        };
        assert_eq!(ps.len(), 2);
        assert_eq!(spec.poset().unwrap().relations().len(), 8);

        let single = InputSpec::parse("perm 2 1 3 5 4").unwrap();
        assert!(single.lines().unwrap()[0].is_identity());
        assert_eq!(
            single.poset().unwrap().covers(),
            vec![(1, 3), (2, 3), (3, 4), (3, 5)]
        );
    }

    #[test]
    fn cover_files() {
        let spec = InputSpec::parse("n 3\ncover 1 3\ncover 2 3\n").unwrap();
        assert_eq!(
            spec,
            InputSpec::Covers {
                n: 3,
                covers: vec![(1, 3), (2, 3)]
            }
        );
        assert_eq!(
            InputSpec::parse("n 2").unwrap().poset().unwrap(),
            Poset::antichain(2)
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("perm 1 2\nperm 1 2 3\n", Some(2)),
            ("perm 1 1\n", Some(1)),
            ("n 3\ncover 1 x\n", Some(2)),
            ("n 3\ncover 1 4\n", Some(2)),
            ("n 3\ncover 2 2\n", Some(2)),
            ("n 3\nn 4\n", Some(2)),
            ("n 0\n", Some(1)),
            ("cover 1 2\n", Some(1)),
            ("# nothing\n", None),
            ("edge 1 2\n", Some(1)),
            ("perm 1 2\nn 2\n", Some(2)),
        ];
        for (text, line) in cases {
            let err = InputSpec::parse(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}: {err}");
        }
        let cyclic = InputSpec::parse("n 3\ncover 1 2\ncover 2 3\ncover 3 1\n").unwrap();
        assert!(cyclic.poset().unwrap_err().message.contains("cycle"));
    }
}
