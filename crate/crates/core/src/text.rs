//! Plain-text formats.
//!
//! Codes and binary matrices share one format: one row per line written with
//! the characters `0` and `1`, all rows the same length, `#` starting a
//! comment that runs to the end of the line, and blank lines ignored.
//! Pseudomonomials print as `x2*(1-x1)*(1-x3)` with positive factors first
//! and factors sorted by index; the parser accepts the factors in any order
//! and with arbitrary interior whitespace.

use crate::bits::Mask;
use crate::code::Code;
use crate::error::{Error, Result};
use crate::ideal::Pseudomonomial;
use crate::matrix::BitMatrix;

/// Parses the shared row format into a matrix, preserving duplicate rows.
pub fn parse_matrix(input: &str) -> Result<BitMatrix> {
    let mut rows: Vec<Mask> = Vec::new();
    let mut width: Option<usize> = None;
    for (lineno, raw) in input.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let start_col = line.chars().take_while(|c| c.is_whitespace()).count();
        let mut row = Mask::EMPTY;
        for (k, ch) in trimmed.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => row = row.insert(k + 1),
                _ => {
                    return Err(Error::parse(
                        lineno + 1,
                        start_col + k + 1,
                        format!("expected '0' or '1', found {ch:?}"),
                    ))
                }
            }
        }
        match width {
            None => width = Some(trimmed.len()),
            Some(w) if w != trimmed.len() => {
                return Err(Error::parse(
                    lineno + 1,
                    start_col + 1,
                    format!("row has {} columns, expected {w}", trimmed.len()),
                ))
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    BitMatrix::from_rows(width.unwrap_or(0), rows)
}

/// Parses the shared row format into a code, deduplicating rows.
pub fn parse_code(input: &str) -> Result<Code> {
    Ok(Code::from_matrix(&parse_matrix(input)?))
}

/// Renders the pseudomonomial `x^sigma (1-x)^tau` in the printing syntax,
/// positive factors first, factors sorted by index. The empty product is `1`.
pub fn pseudomonomial_string(p: &Pseudomonomial) -> String {
    let mut parts: Vec<String> = Vec::new();
    for i in p.sigma().iter() {
        parts.push(format!("x{i}"));
    }
    for i in p.tau().iter() {
        parts.push(format!("(1-x{i})"));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

struct Scanner<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    text: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Scanner {
            chars: text.chars().collect(),
            pos: 0,
            line,
            text,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            got => Err(self.error(format!(
                "expected {want:?}{}",
                match got {
                    Some(c) => format!(", found {c:?}"),
                    None => ", found end of line".to_string(),
                }
            ))),
        }
    }

    fn error(&self, message: String) -> Error {
        Error::parse(self.line, self.pos.min(self.chars.len()).max(1), message)
    }

    fn index(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a neuron index".to_string()));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse::<usize>()
            .ok()
            .filter(|&i| i >= 1 && i <= crate::bits::MAX_NEURONS)
            .ok_or_else(|| self.error(format!("index {digits} out of range")))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    #[allow(dead_code)]
    fn rest(&self) -> &'a str {
        self.text
    }
}

/// Parses one pseudomonomial in the printing syntax. `line` is used for
/// error positions.
pub fn parse_pseudomonomial(text: &str, line: usize) -> Result<Pseudomonomial> {
    let mut s = Scanner::new(text, line);
    let mut sigma = Mask::EMPTY;
    let mut tau = Mask::EMPTY;
    loop {
        match s.peek() {
            Some('1') => {
                // the neutral factor, legal on its own or inside a product
                s.bump();
            }
            Some('x') => {
                s.bump();
                let i = s.index()?;
                sigma = sigma.insert(i);
            }
            Some('(') => {
                s.bump();
                s.expect('1')?;
                s.expect('-')?;
                s.expect('x')?;
                let i = s.index()?;
                s.expect(')')?;
                tau = tau.insert(i);
            }
            Some(c) => return Err(s.error(format!("expected a factor, found {c:?}"))),
            None => return Err(s.error("expected a factor".to_string())),
        }
        if s.at_end() {
            break;
        }
        s.expect('*')?;
    }
    if sigma.intersects(tau) {
        let i = sigma.inter(tau).iter().next().unwrap();
        return Err(Error::parse(
            line,
            1,
            format!("x{i} and (1-x{i}) cannot appear in the same squarefree product"),
        ));
    }
    Ok(Pseudomonomial::new(sigma, tau).expect("disjoint by construction"))
}

/// Parses one pseudomonomial per line, with `#` comments and blank lines
/// ignored.
pub fn parse_pseudomonomials(input: &str) -> Result<Vec<Pseudomonomial>> {
    let mut out = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_pseudomonomial(line, lineno + 1)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_matrix_with_comments_and_blanks() {
        let m = parse_matrix("# header\n1100\n\n0110  # trailing\n0011\n").unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 4);
        assert_eq!(m.row(0), Mask::from_indices([1, 2]));
    }

    #[test]
    fn parse_matrix_reports_position() {
        let err = parse_matrix("1100\n01x0\n").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!((line, column), (2, 3));
            }
            other => panic!("unexpected error {other:?}"),
        }
        let err = parse_matrix("1100\n011\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_the_empty_matrix() {
        let m = parse_matrix("# nothing\n").unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 0));
    }

    #[test]
    fn code_parse_dedupes() {
        let c = parse_code("10\n10\n01\n").unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn pseudomonomial_round_trip() {
        let p = parse_pseudomonomial("x2*(1-x1)*(1-x3)", 1).unwrap();
        assert_eq!(pseudomonomial_string(&p), "x2*(1-x1)*(1-x3)");
        // arbitrary order and spacing
        let q = parse_pseudomonomial("  ( 1 - x3 ) * x2 *(1-x1)", 1).unwrap();
        assert_eq!(p, q);
        let one = parse_pseudomonomial("1", 1).unwrap();
        assert_eq!(pseudomonomial_string(&one), "1");
    }

    #[test]
    fn pseudomonomial_rejects_square() {
        assert!(parse_pseudomonomial("x1*(1-x1)", 1).is_err());
        assert!(parse_pseudomonomial("x1**x2", 1).is_err());
        assert!(parse_pseudomonomial("(1-x0)", 1).is_err());
    }
}
