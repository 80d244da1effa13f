//! Text formats for polyominoes.
//!
//! ASCII: one line per row of cells, top row first, `#` for a cell and `.`
//! for a gap, the first column being `x = 1` and the last line `y = 1`.
//! JSON: `{"cells":[[x,y],...]}` with lower-left corners.
//! Both end in a newline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Cell, Point};
use crate::polyomino::Polyomino;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Json,
}

/// JSON if the first non-blank character opens an object.
pub fn detect(text: &str) -> Format {
    match text.trim_start().starts_with('{') {
        true => Format::Json,
        false => Format::Ascii,
    }
}

pub fn parse(text: &str) -> Result<Polyomino> {
    match detect(text) {
        Format::Ascii => parse_ascii(text),
        Format::Json => parse_json(text),
    }
}

pub fn emit(p: &Polyomino, format: Format) -> Result<String> {
    match format {
        Format::Ascii => emit_ascii(p),
        Format::Json => Ok(emit_json(p)),
    }
}

pub fn parse_ascii(text: &str) -> Result<Polyomino> {
    let body = text.strip_suffix('\n').ok_or_else(|| Error::Parse("missing trailing newline".into()))?;
    let lines: Vec<&str> = body.split('\n').collect();
    let width = lines[0].len();
    let height = lines.len();
    let mut cells = Vec::new();
    for (k, line) in lines.iter().enumerate() {
        if line.len() != width {
            return Err(Error::Parse(format!("line {} has length {}, expected {width}", k + 1, line.len())));
        }
        for (i, ch) in line.chars().enumerate() {
            match ch {
                '#' => cells.push(Cell::new(i as i32 + 1, (height - k) as i32)),
                '.' => {}
                other => return Err(Error::Parse(format!("line {}: unexpected character {other:?}", k + 1))),
            }
        }
    }
    if !lines[0].contains('#') {
        return Err(Error::Parse("top line has no cell".into()));
    }
    if !lines.iter().any(|l| l.ends_with('#')) {
        return Err(Error::Parse("last column has no cell".into()));
    }
    Polyomino::from_cells(cells)
}

pub fn emit_ascii(p: &Polyomino) -> Result<String> {
    if let Some(c) = p.cells().find(|c| c.x() < 1 || c.y() < 1) {
        return Err(Error::NonPositiveCoordinate(c.lower_left()));
    }
    let hi = p.bounding_box().hi();
    let (width, height) = (hi.x - 1, hi.y - 1);
    let mut out = String::with_capacity(((width + 1) * height) as usize);
    for y in (1..=height).rev() {
        out.extend((1..=width).map(|x| if p.contains(Cell::new(x, y)) { '#' } else { '.' }));
        out.push('\n');
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellList {
    cells: Vec<Point>,
}

pub fn parse_json(text: &str) -> Result<Polyomino> {
    let list: CellList = serde_json::from_str(text)?;
    Polyomino::from_cells(list.cells.into_iter().map(Cell::at))
}

/// Cells in vertex order.
pub fn emit_json(p: &Polyomino) -> String {
    let list = CellList { cells: p.cells().map(|c| c.lower_left()).collect() };
    serde_json::to_string(&list).expect("cell lists serialize") + "\n"
}
