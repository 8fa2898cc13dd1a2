//! Text formats for point configurations and triangulations, plus the
//! JSON shape webs travel in between command-line tools.
//!
//! A points file is a bracketed matrix with one point per row
//! (`[[1,0],\n[0,1]]`); coordinates are integers or `a/b` fractions. A
//! triangulation file is a braced list of 0-based vertex index sets
//! (`{{0,1,4},{1,2,4}}`) and may hold several such lists, one per line.
//! Both formats round-trip byte-identically through write∘read once
//! normalized (sorted indices, reduced fractions, no padding).

use crate::complex::{ComplexError, PointConfiguration, Simplex, Triangulation};
use crate::geom::{Rat, RatVec};
use crate::webs::{Web, WebSetting};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: vertex index {index} out of range for {points} points")]
    IndexOutOfRange { line: usize, index: usize, points: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("web JSON: {0}")]
    WebJson(#[from] serde_json::Error),
    #[error("web anchor must be \"P\" or \"Q\", got {0:?}")]
    BadAnchor(String),
    #[error("web names a source cell {{{0}}} that the triangulation does not have")]
    UnknownSourceCell(String),
    #[error("web image for cell {{{0}}} is not a star-shaped ball of the target")]
    UnknownBall(String),
    #[error("web assigns source cell {{{0}}} twice")]
    DuplicateAssignment(String),
    #[error("web leaves {missing} of {cells} source cells unassigned")]
    IncompleteWeb { missing: usize, cells: usize },
}

/// Character walker that keeps 1-based line/column positions for error
/// reporting.
struct Scanner<'a> {
    rest: std::str::Chars<'a>,
    line: usize,
    column: usize,
    lookahead: Option<char>,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        let mut rest = src.chars();
        let lookahead = rest.next();
        Scanner { rest, line: 1, column: 1, lookahead }
    }

    fn peek(&self) -> Option<char> {
        self.lookahead
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.lookahead?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        self.lookahead = self.rest.next();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, IoError> {
        Err(IoError::Syntax { line: self.line, column: self.column, message: message.into() })
    }

    fn expect(&mut self, want: char) -> Result<(), IoError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.err(format!("expected '{want}', found '{c}'")),
            None => self.err(format!("expected '{want}', found end of input")),
        }
    }

    fn digits(&mut self) -> Result<String, IoError> {
        let mut s = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.bump().unwrap());
        }
        if s.is_empty() {
            match self.peek() {
                Some(c) => self.err(format!("expected a digit, found '{c}'")),
                None => self.err("expected a digit, found end of input"),
            }
        } else {
            Ok(s)
        }
    }

    fn rational(&mut self) -> Result<Rat, IoError> {
        self.skip_ws();
        let negative = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let numer: BigInt = self.digits()?.parse().expect("digits parse as BigInt");
        let numer = if negative { -numer } else { numer };
        if self.peek() == Some('/') {
            self.bump();
            let denom: BigInt = self.digits()?.parse().expect("digits parse as BigInt");
            if denom.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rat::new(numer, denom))
        } else {
            Ok(Rat::from(numer))
        }
    }

    fn index(&mut self) -> Result<usize, IoError> {
        self.skip_ws();
        let s = self.digits()?;
        s.parse().or_else(|_| self.err(format!("index {s} does not fit in usize")))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }
}

/// Parse a bracketed rational matrix into a validated configuration.
pub fn parse_points(text: &str) -> Result<PointConfiguration, IoError> {
    let mut sc = Scanner::new(text);
    sc.expect('[')?;
    let mut rows: Vec<RatVec> = Vec::new();
    let mut width: Option<(usize, usize)> = None; // (coords, line it was set)
    loop {
        sc.expect('[')?;
        let row_line = sc.line;
        let mut row: RatVec = Vec::new();
        loop {
            row.push(sc.rational()?);
            sc.skip_ws();
            match sc.peek() {
                Some(',') => {
                    sc.bump();
                }
                Some(']') => {
                    sc.bump();
                    break;
                }
                Some(c) => return sc.err(format!("expected ',' or ']', found '{c}'")),
                None => return sc.err("expected ',' or ']', found end of input"),
            }
        }
        match width {
            None => width = Some((row.len(), row_line)),
            Some((w, first_line)) if w != row.len() => {
                return Err(IoError::Syntax {
                    line: row_line,
                    column: 1,
                    message: format!(
                        "row has {} coordinates, but the row on line {first_line} has {w}",
                        row.len()
                    ),
                });
            }
            Some(_) => {}
        }
        rows.push(row);
        sc.skip_ws();
        match sc.peek() {
            Some(',') => {
                sc.bump();
            }
            Some(']') => {
                sc.bump();
                break;
            }
            Some(c) => return sc.err(format!("expected ',' or ']', found '{c}'")),
            None => return sc.err("expected ',' or ']', found end of input"),
        }
    }
    if !sc.at_end() {
        return sc.err("trailing input after the closing ']'");
    }
    Ok(PointConfiguration::new(rows)?)
}

/// Parse one or more braced index-set lists against a configuration. Each
/// `{{…},{…}}` block becomes one triangulation; blocks may be separated
/// by any whitespace.
pub fn parse_triangulations(
    text: &str,
    config: &Arc<PointConfiguration>,
) -> Result<Vec<Triangulation>, IoError> {
    let mut sc = Scanner::new(text);
    let mut out = Vec::new();
    while !sc.at_end() {
        sc.expect('{')?;
        let mut cells: Vec<Simplex> = Vec::new();
        loop {
            sc.expect('{')?;
            let mut verts: Vec<usize> = Vec::new();
            loop {
                let set_line = sc.line;
                let v = sc.index()?;
                if v >= config.len() {
                    return Err(IoError::IndexOutOfRange {
                        line: set_line,
                        index: v,
                        points: config.len(),
                    });
                }
                verts.push(v);
                sc.skip_ws();
                match sc.peek() {
                    Some(',') => {
                        sc.bump();
                    }
                    Some('}') => {
                        sc.bump();
                        break;
                    }
                    Some(c) => return sc.err(format!("expected ',' or '}}', found '{c}'")),
                    None => return sc.err("expected ',' or '}}', found end of input"),
                }
            }
            cells.push(Simplex::new(verts));
            sc.skip_ws();
            match sc.peek() {
                Some(',') => {
                    sc.bump();
                }
                Some('}') => {
                    sc.bump();
                    break;
                }
                Some(c) => return sc.err(format!("expected ',' or '}}', found '{c}'")),
                None => return sc.err("expected ',' or '}}', found end of input"),
            }
        }
        out.push(Triangulation::new(config.clone(), cells)?);
    }
    Ok(out)
}

/// Canonical points file: one point per row, reduced fractions, no
/// padding. `parse_points(format_points(c))` reproduces `c` and the text
/// reproduces itself.
pub fn format_points(config: &PointConfiguration) -> String {
    let rows: Vec<String> = config
        .points()
        .iter()
        .map(|p| {
            let coords: Vec<String> = p.iter().map(|r| r.to_string()).collect();
            format!("[{}]", coords.join(","))
        })
        .collect();
    format!("[{}]\n", rows.join(",\n"))
}

/// Canonical single-line triangulation file (cells already sorted by
/// construction).
pub fn format_triangulation(t: &Triangulation) -> String {
    let cells: Vec<String> = t.cells().iter().map(|c| format!("{c}")).collect();
    format!("{{{}}}\n", cells.join(","))
}

/// One triangulation per line.
pub fn format_triangulations(ts: &[Triangulation]) -> String {
    ts.iter().map(format_triangulation).collect()
}

/// A web as it travels between tools: which factor carries the source
/// cells, and for each source cell the target cells of its image ball.
/// Cells are vertex index sets, so the file is meaningful next to the two
/// triangulation files it references.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WebFile {
    pub anchored: String,
    pub assignments: Vec<WebAssignment>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WebAssignment {
    pub source_cell: Vec<usize>,
    pub image_cells: Vec<Vec<usize>>,
}

/// Express a web over `setting` (source cells on its P side) in the file
/// shape. `anchored_p` records which factor of the original sum the
/// source side is.
pub fn web_to_file(setting: &WebSetting, web: &Web, anchored_p: bool) -> WebFile {
    let assignments = setting
        .p()
        .cells()
        .iter()
        .enumerate()
        .map(|(i, cell)| WebAssignment {
            source_cell: cell.vertices().to_vec(),
            image_cells: setting.q_balls().ball(web[i])
                .iter()
                .map(|&c| setting.q().cells()[c].vertices().to_vec())
                .collect(),
        })
        .collect();
    WebFile { anchored: if anchored_p { "P" } else { "Q" }.to_string(), assignments }
}

/// Resolve file assignments into a web over `setting`: every source cell
/// assigned exactly once, every image an actual ball of the target.
pub fn web_from_assignments(
    setting: &WebSetting,
    assignments: &[WebAssignment],
) -> Result<Web, IoError> {
    let cells = setting.p().cells();
    let mut web: Vec<Option<usize>> = vec![None; cells.len()];
    for a in assignments {
        let cell = Simplex::new(a.source_cell.clone());
        let pretty = || {
            a.source_cell.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        };
        let i = cells
            .binary_search(&cell)
            .map_err(|_| IoError::UnknownSourceCell(pretty()))?;
        if web[i].is_some() {
            return Err(IoError::DuplicateAssignment(pretty()));
        }
        let mut ball: Vec<usize> = a
            .image_cells
            .iter()
            .map(|verts| {
                let target = Simplex::new(verts.clone());
                setting
                    .q()
                    .cells()
                    .binary_search(&target)
                    .map_err(|_| IoError::UnknownBall(pretty()))
            })
            .collect::<Result<_, _>>()?;
        ball.sort_unstable();
        let b = setting
            .q_balls()
            .index_of(&ball)
            .ok_or_else(|| IoError::UnknownBall(pretty()))?;
        web[i] = Some(b);
    }
    let missing = web.iter().filter(|b| b.is_none()).count();
    if missing > 0 {
        return Err(IoError::IncompleteWeb { missing, cells: cells.len() });
    }
    Ok(web.into_iter().map(|b| b.unwrap()).collect())
}
