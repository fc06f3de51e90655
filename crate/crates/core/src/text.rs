//! Plain-text diagram files.
//!
//! ```text
//! 3
//! ..r
//! .r+
//! r++
//! ```
//!
//! The first line is the size `n`, followed by `n` rows of `n` tile characters from
//! `.-|+rjb`, each line terminated by `\n`. A decorated BPD writes `x` or `y` in place
//! of every blank; a `.` in a file that contains any `x` or `y` is an error. No other
//! whitespace is allowed.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::decorated::{DecoratedBpd, DecoratedError, Label};
use crate::grid::{Bpd, Diagram, Grid, GridError, Tile, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("input must end with a newline")]
    MissingNewline,
    #[error("first line must be a positive decimal size without sign or leading zeros, got {0:?}")]
    Header(String),
    #[error("size {0} exceeds the supported maximum {MAX_N}")]
    TooLarge(usize),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}: expected {expected} characters, found {found}")]
    Ragged { line: usize, expected: usize, found: usize },
    #[error("line {line}, column {column}: unexpected character {ch:?}")]
    BadChar { line: usize, column: usize, ch: char },
    #[error("line {line}, column {column}: unlabelled blank in a decorated diagram")]
    BlankInDecorated { line: usize, column: usize },
    #[error("invalid diagram: {0}")]
    Invalid(#[from] GridError),
    #[error("invalid decorated diagram: {0}")]
    Decorated(#[from] DecoratedError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Plain(Diagram),
    Decorated(DecoratedBpd),
}

/// Parse a diagram file. Lines are numbered from 1, the size line included.
pub fn parse(text: &str) -> Result<Parsed, ParseError> {
    let body = text.strip_suffix('\n').ok_or(ParseError::MissingNewline)?;
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or_default();
    let valid_header = !header.is_empty()
        && header.bytes().all(|b| b.is_ascii_digit())
        && !header.starts_with('0')
        && header.len() <= 4;
    if !valid_header {
        return Err(ParseError::Header(header.to_string()));
    }
    let n: usize = header.parse().map_err(|_| ParseError::Header(header.to_string()))?;
    if n > MAX_N {
        return Err(ParseError::TooLarge(n));
    }
    let rows: Vec<&str> = lines.collect();
    if rows.len() != n {
        return Err(ParseError::RowCount { expected: n, found: rows.len() });
    }

    let mut tiles = Vec::with_capacity(n);
    let mut labels = BTreeMap::new();
    let mut first_dot = None;
    for (r, row) in rows.iter().enumerate() {
        let line = r + 2;
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != n {
            return Err(ParseError::Ragged { line, expected: n, found: chars.len() });
        }
        let mut tile_row = Vec::with_capacity(n);
        for (c, &ch) in chars.iter().enumerate() {
            let tile = if let Some(label) = Label::from_char(ch) {
                labels.insert((r + 1, c + 1), label);
                Tile::Blank
            } else {
                let tile = Tile::from_char(ch).ok_or(ParseError::BadChar { line, column: c + 1, ch })?;
                if tile == Tile::Blank && first_dot.is_none() {
                    first_dot = Some((line, c + 1));
                }
                tile
            };
            tile_row.push(tile);
        }
        tiles.push(tile_row);
    }

    let grid = Grid::from_rows(tiles)?;
    if labels.is_empty() {
        return Ok(Parsed::Plain(grid.validate()?));
    }
    if let Some((line, column)) = first_dot {
        return Err(ParseError::BlankInDecorated { line, column });
    }
    let bpd = Bpd::new(grid)?;
    Ok(Parsed::Decorated(DecoratedBpd::new(bpd, labels)?))
}

/// Parse a file that must hold an undecorated BPD.
pub fn parse_bpd(text: &str) -> Result<Bpd, ParseError> {
    match parse(text)? {
        Parsed::Plain(d) => Ok(d.into_bpd()?),
        Parsed::Decorated(d) => Ok(d.into_parts().0),
    }
}

pub fn render(grid: &Grid) -> String {
    render_with(grid, |_, t| t.to_char())
}

pub fn render_decorated(d: &DecoratedBpd) -> String {
    render_with(d.bpd().grid(), |pos, t| d.label(pos).map_or(t.to_char(), Label::to_char))
}

pub fn render_parsed(p: &Parsed) -> String {
    match p {
        Parsed::Plain(d) => render(d.grid()),
        Parsed::Decorated(d) => render_decorated(d),
    }
}

fn render_with(grid: &Grid, mut ch: impl FnMut((usize, usize), Tile) -> char) -> String {
    let n = grid.n();
    let mut out = format!("{n}\n");
    for r in 1..=n {
        for c in 1..=n {
            out.push(ch((r, c), grid.get((r, c))));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{enumerate_all, Side};
    use crate::perm::Permutation;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let Parsed::Plain(d) = parse("2\n.r\nr+\n").unwrap() else { panic!() };
        assert_eq!(d.permutation(), &"2 1".parse::<Permutation>().unwrap());
        assert_eq!(d.blanks(), vec![(1, 1)]);
        let Parsed::Plain(id) = parse("2\nr-\n|r\n").unwrap() else { panic!() };
        assert!(id.permutation().is_identity());
        let Parsed::Plain(almost) = parse("2\n.r\nrb\n").unwrap() else { panic!() };
        assert_eq!(almost.bump_pos(), Some((2, 2)));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(parse("2\n.r\nr%\n").unwrap_err(), ParseError::BadChar { line: 3, column: 2, ch: '%' });
        assert_eq!(parse("2\n.r\nr+").unwrap_err(), ParseError::MissingNewline);
        assert_eq!(parse("2\n.r\nr+\n\n").unwrap_err(), ParseError::RowCount { expected: 2, found: 3 });
        assert_eq!(parse("2\n.r \nr+\n").unwrap_err(), ParseError::Ragged { line: 2, expected: 2, found: 3 });
        assert_eq!(parse("2\r\n.r\nr+\n").unwrap_err(), ParseError::Header("2\r".into()));
        assert_eq!(parse("02\n.r\nr+\n").unwrap_err(), ParseError::Header("02".into()));
        assert_eq!(parse("0\n").unwrap_err(), ParseError::Header("0".into()));
        assert_eq!(parse("\n").unwrap_err(), ParseError::Header("".into()));
        assert_eq!(parse("").unwrap_err(), ParseError::MissingNewline);
        assert_eq!(
            parse("2\n|r\nr+\n").unwrap_err(),
            ParseError::Invalid(GridError::Boundary { pos: (1, 1), side: Side::North })
        );
        assert_eq!(parse("3\nx.r\n.r+\nr++\n").unwrap_err(), ParseError::BlankInDecorated { line: 2, column: 2 });
        assert!(matches!(parse("2\nxr\nrb\n").unwrap_err(), ParseError::Invalid(GridError::UnexpectedBump(_))));
    }

    #[test]
    fn decorated_round_trip() {
        let text = "3\nxyr\nyr+\nr++\n";
        let parsed = parse(text).unwrap();
        let Parsed::Decorated(d) = &parsed else { panic!() };
        assert_eq!(d.label((1, 2)), Some(Label::NegY));
        assert_eq!(render_parsed(&parsed), text);
    }

    #[test]
    fn every_small_bpd_round_trips() {
        for n in 1..=4 {
            for d in enumerate_all(n).into_values().flatten() {
                let text = render(d.grid());
                let parsed = parse(&text).unwrap();
                assert_eq!(parsed, Parsed::Plain(Diagram::Bpd(d)));
                assert_eq!(render_parsed(&parsed), text);
            }
        }
    }

    proptest! {
        #[test]
        fn render_parse_identity_on_canonical_text(n in 1usize..=4, cells in prop::collection::vec(0usize..7, 16)) {
            let alphabet = ['.', '-', '|', '+', 'r', 'j', 'b'];
            let mut text = format!("{n}\n");
            for r in 0..n {
                for c in 0..n {
                    text.push(alphabet[cells[r * 4 + c]]);
                }
                text.push('\n');
            }
            if let Ok(parsed) = parse(&text) {
                prop_assert_eq!(render_parsed(&parsed), text);
            }
        }

        #[test]
        fn parse_never_panics(s in "[0-9\\n.\\-|+rjbxy%]{0,40}") {
            let _ = parse(&s);
        }
    }
}
