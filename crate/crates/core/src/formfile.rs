//! The text format for 1-forms.
//!
//! ```text
//! # comments run to the end of the line
//! name tetrahedron
//! expected-degree 2
//! ring z0 z1 z2 z3
//! form (z1*z2*z3) dz0 + (z0*z2*z3) dz1 + (z0*z1*z3) dz2 + (-3*z0*z1*z2) dz3
//! ```
//!
//! `name` and `expected-degree` are optional. The `form` body runs to the end
//! of the file; each term is an optional coefficient (a product, usually
//! parenthesized) followed by `dz<i>`, joined by `+` and `-`. Repeated
//! differentials are summed.

use std::fmt::Write as _;

use thiserror::Error;

use crate::foliation::{FoliationError, ProjectiveOneForm};
use crate::poly::parse::{tokenize, Cursor, ExprParser, ParseError, Tok, Token};
use crate::poly::{MonomialOrder, PolyRing};
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormFileError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("{line}:{col}: {source}")]
    Invalid {
        line: usize,
        col: usize,
        #[source]
        source: FoliationError,
    },
    #[error("{line}:{col}: expected degree {expected}, the form has degree {found}")]
    DegreeMismatch { line: usize, col: usize, expected: u32, found: u32 },
}

impl FormFileError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            Self::Syntax(e) => (e.line, e.col),
            Self::Invalid { line, col, .. } | Self::DegreeMismatch { line, col, .. } => (*line, *col),
        }
    }
}

/// A parsed form file.
#[derive(Clone, Debug)]
pub struct FormFile {
    pub name: Option<String>,
    pub expected_degree: Option<u32>,
    pub form: ProjectiveOneForm,
}

impl FormFile {
    pub fn new(form: ProjectiveOneForm) -> Self {
        Self { name: None, expected_degree: None, form }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

fn syntax(t: &Token, message: impl Into<String>) -> FormFileError {
    ParseError::new(t.line, t.col, message).into()
}

/// Parse and validate a form file.
pub fn parse_form_file(text: &str) -> Result<FormFile, FormFileError> {
    // `name` takes the raw rest of its line; blank it out before tokenizing
    let mut name = None;
    let mut cleaned = String::with_capacity(text.len());
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if let Some(rest) = trimmed.strip_prefix("name").filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
        {
            if name.is_some() {
                return Err(ParseError::new(i + 1, line.len() - trimmed.len() + 1, "duplicate 'name'").into());
            }
            name = Some(rest.trim().to_string());
            cleaned.push_str(&" ".repeat(line.chars().count()));
        } else {
            cleaned.push_str(line);
        }
        cleaned.push('\n');
    }
    let toks = tokenize(&cleaned)?;
    let mut cur = Cursor::new(&toks, &cleaned);
    let mut expected_degree = None;
    let mut ring_names: Option<Vec<String>> = None;
    let form_tok = loop {
        let Some(t) = cur.bump() else {
            return Err(cur.error_here("missing 'form' declaration").into());
        };
        match &t.tok {
            Tok::Ident(k) if k == "expected-degree" => {
                if expected_degree.is_some() {
                    return Err(syntax(t, "duplicate 'expected-degree'"));
                }
                match cur.bump() {
                    Some(Token { tok: Tok::Int(s), line, col }) => {
                        let d = s.parse().map_err(|_| ParseError::new(*line, *col, "degree too large"))?;
                        expected_degree = Some(d);
                    }
                    _ => return Err(cur.error_here("expected a degree").into()),
                }
            }
            Tok::Ident(k) if k == "ring" => {
                if ring_names.is_some() {
                    return Err(syntax(t, "duplicate 'ring'"));
                }
                let mut names = Vec::new();
                while let Some(Token { tok: Tok::Ident(v), line, col }) = cur.peek() {
                    if v == "form" || v == "expected-degree" {
                        break;
                    }
                    let want = format!("z{}", names.len());
                    if *v != want {
                        return Err(
                            ParseError::new(*line, *col, format!("expected variable '{want}', found '{v}'")).into()
                        );
                    }
                    names.push(v.clone());
                    cur.bump();
                }
                if !(3..=4).contains(&names.len()) {
                    return Err(syntax(t, format!("a ring needs 3 or 4 variables, found {}", names.len())));
                }
                ring_names = Some(names);
            }
            Tok::Ident(k) if k == "form" => break t,
            _ => return Err(syntax(t, "expected 'ring', 'form' or 'expected-degree'")),
        }
    };
    let names = ring_names.ok_or_else(|| syntax(form_tok, "'form' before 'ring'"))?;
    let n = names.len();
    let ring = PolyRing::new(n, MonomialOrder::GrevLex);
    let parser = ExprParser { ring, names: &names };
    let mut coeffs = vec![Poly::zero(ring); n];
    let mut first = true;
    while !cur.at_end() {
        let negative = if cur.eat_sym('-') {
            true
        } else {
            let plus = cur.eat_sym('+');
            if !first && !plus {
                return Err(cur.error_here("expected '+' or '-' between terms").into());
            }
            false
        };
        first = false;
        let coefficient: Poly = match cur.peek_tok() {
            Some(Tok::Ident(v)) if v.starts_with("dz") => Poly::one(ring),
            _ => parser.term(&mut cur)?,
        };
        let index = match cur.bump() {
            Some(t @ Token { tok: Tok::Ident(v), .. }) if v.starts_with("dz") => match v[2..].parse::<usize>() {
                Ok(i) if i < n => i,
                _ => return Err(syntax(t, format!("'{v}' is not a differential of the ring"))),
            },
            Some(t) => return Err(syntax(t, "expected dz<i> after the coefficient")),
            None => return Err(cur.error_here("expected dz<i> after the coefficient").into()),
        };
        let coefficient = if negative { -coefficient } else { coefficient };
        coeffs[index] = &coeffs[index] + &coefficient;
    }
    let form = ProjectiveOneForm::validate(coeffs).map_err(|source| FormFileError::Invalid {
        line: form_tok.line,
        col: form_tok.col,
        source,
    })?;
    if let Some(expected) = expected_degree {
        if expected != form.degree() {
            return Err(FormFileError::DegreeMismatch {
                line: form_tok.line,
                col: form_tok.col,
                expected,
                found: form.degree(),
            });
        }
    }
    Ok(FormFile { name, expected_degree, form })
}

/// The canonical text of a form file.
pub fn print_form_file(file: &FormFile) -> String {
    let mut out = String::new();
    if let Some(name) = &file.name {
        writeln!(out, "name {name}").expect("writing to a string");
    }
    if let Some(d) = file.expected_degree {
        writeln!(out, "expected-degree {d}").expect("writing to a string");
    }
    let names = file.form.ring().var_names();
    writeln!(out, "ring {}", names.join(" ")).expect("writing to a string");
    writeln!(out, "form {}", file.form.to_form_string()).expect("writing to a string");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::{exceptional_form, logarithmic_form};
    use crate::Rat;

    const PENCIL: &str = "ring z0 z1 z2 z3\nform (z1) dz0 - (z0) dz1\n";

    #[test]
    fn pencil_file() {
        let f = parse_form_file(PENCIL).unwrap();
        assert_eq!(f.form.degree(), 0);
        assert_eq!(print_form_file(&f), "ring z0 z1 z2 z3\nform (z1) dz0 + (-z0) dz1\n");
    }

    #[test]
    fn euler_violation_is_positioned() {
        let err = parse_form_file("# header\nring z0 z1 z2 z3\nform (z0) dz0").unwrap_err();
        match &err {
            FormFileError::Invalid { line: 3, col: 1, source: FoliationError::EulerViolation { sum } } => {
                assert_eq!(sum, "z0^2");
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(err.position(), (3, 1));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("ring z0 z1 z2 z3\nform (z1) dz0 -", (2, 16)),
            ("ring z0 z1 z2 z3\nform (z1) dz0 (z0) dz1", (2, 15)),
            ("ring z0 z1 z2 z3\nform (z1) dz7", (2, 11)),
            ("ring z0 z2 z1\nform dz0", (1, 9)),
            ("form (z1) dz0", (1, 1)),
            ("ring z0 z1 z2 z3\nform (z1 dz0", (2, 10)),
            ("ring z0 z1 z2 z3\nform (z1) $ dz0", (2, 11)),
        ];
        for (text, pos) in cases {
            let err = parse_form_file(text).unwrap_err();
            assert_eq!(err.position(), pos, "{text:?}: {err}");
        }
    }

    #[test]
    fn metadata_and_free_layout() {
        let text = "name L(1,1,1,1) tetrahedron\nexpected-degree 2\nring z0 z1 z2 z3\nform (z1*z2*z3) dz0\n  + (z0*z2*z3) dz1 # second\n  + z0*z1*z3 dz2 - 3*z0*z1*z2 dz3\n";
        let f = parse_form_file(text).unwrap();
        assert_eq!(f.name.as_deref(), Some("L(1,1,1,1) tetrahedron"));
        assert_eq!(f.expected_degree, Some(2));
        let wrong = text.replace("expected-degree 2", "expected-degree 3");
        assert!(matches!(parse_form_file(&wrong), Err(FormFileError::DegreeMismatch { expected: 3, found: 2, .. })));
    }

    #[test]
    fn round_trips() {
        let r = PolyRing::grevlex(4);
        let f: Vec<Poly> = (0..4).map(|i| Poly::var(r, i)).collect();
        let half = Rat::new(1.into(), 2.into());
        let weights = [half.clone(), half, Rat::from_integer(3.into()), Rat::from_integer((-4).into())];
        let forms = [logarithmic_form(&f, &weights).unwrap(), exceptional_form(2).unwrap().form];
        for form in forms {
            let file = FormFile::new(form.clone()).with_name("sample");
            let text = print_form_file(&file);
            let back = parse_form_file(&text).unwrap();
            assert_eq!(back.form.coefficients(), form.coefficients());
            assert_eq!(print_form_file(&back), text);
        }
    }
}
