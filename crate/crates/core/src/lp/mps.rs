//! MPS text export and import (free-format fields, OBJSENSE section, integrality markers).

use std::collections::HashMap;
use std::fmt::Write as _;

use super::problem::{LpProblem, RowKind, Sense};
use crate::error::{Error, Result};

const OBJ: &str = "OBJ";

pub fn write_mps(p: &LpProblem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NAME          {}", p.name);
    let _ = writeln!(out, "OBJSENSE");
    let _ = writeln!(out, "    {}", if p.sense == Sense::Maximize { "MAX" } else { "MIN" });
    let _ = writeln!(out, "ROWS");
    let _ = writeln!(out, " N  {OBJ}");
    for (name, kind) in p.row_names.iter().zip(&p.row_kinds) {
        let tag = match kind {
            RowKind::Le => 'L',
            RowKind::Ge => 'G',
        };
        let _ = writeln!(out, " {tag}  {name}");
    }
    let _ = writeln!(out, "COLUMNS");
    if p.integer {
        let _ = writeln!(out, "    MARKER                 'MARKER'                 'INTORG'");
    }
    for (j, col) in p.columns.iter().enumerate() {
        let name = &p.col_names[j];
        if p.objective[j] != 0 || col.is_empty() {
            let _ = writeln!(out, "    {name:<12}  {OBJ:<12}  {}", p.objective[j]);
        }
        for &(i, a) in col {
            let _ = writeln!(out, "    {name:<12}  {:<12}  {a}", p.row_names[i as usize]);
        }
    }
    if p.integer {
        let _ = writeln!(out, "    MARKER                 'MARKER'                 'INTEND'");
    }
    let _ = writeln!(out, "RHS");
    for (i, &b) in p.rhs.iter().enumerate() {
        if b != 0 {
            let _ = writeln!(out, "    RHS           {:<12}  {b}", p.row_names[i]);
        }
    }
    if p.integer {
        let _ = writeln!(out, "BOUNDS");
        for name in &p.col_names {
            let _ = writeln!(out, " BV BND           {name}");
        }
    }
    let _ = writeln!(out, "ENDATA");
    out
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn int_value(line: usize, tok: &str) -> Result<i64> {
    let v: f64 = tok.parse().map_err(|_| err(line, format!("bad number '{tok}'")))?;
    if v.fract() != 0.0 || v.abs() > 9.0e15 {
        return Err(err(line, format!("only integer coefficients are supported, got {tok}")));
    }
    Ok(v as i64)
}

#[derive(PartialEq)]
enum Section {
    Start,
    ObjSense,
    Rows,
    Columns,
    Rhs,
    Bounds,
    Done,
}

/// Parses what `write_mps` writes: integer data, L/G rows, nonnegative or binary variables.
pub fn parse_mps(text: &str) -> Result<LpProblem> {
    let mut name = String::new();
    let mut sense = Sense::Minimize;
    let mut section = Section::Start;
    let mut obj_row: Option<String> = None;
    let mut row_index: HashMap<String, usize> = HashMap::new();
    let mut row_names = Vec::new();
    let mut row_kinds = Vec::new();
    let mut col_index: HashMap<String, usize> = HashMap::new();
    let mut col_names: Vec<String> = Vec::new();
    let mut columns: Vec<Vec<(u32, i64)>> = Vec::new();
    let mut objective: Vec<i64> = Vec::new();
    let mut rhs: Vec<i64> = Vec::new();
    let mut integer = false;

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        if raw.trim().is_empty() || raw.starts_with('*') {
            continue;
        }
        let toks: Vec<&str> = raw.split_whitespace().collect();
        if !raw.starts_with(' ') && !raw.starts_with('\t') {
            section = match toks[0] {
                "NAME" => {
                    name = toks.get(1).unwrap_or(&"").to_string();
                    Section::Start
                }
                "OBJSENSE" => {
                    if let Some(v) = toks.get(1) {
                        sense = parse_sense(line_no, v)?;
                    }
                    Section::ObjSense
                }
                "ROWS" => Section::Rows,
                "COLUMNS" => Section::Columns,
                "RHS" => Section::Rhs,
                "BOUNDS" => Section::Bounds,
                "ENDATA" => Section::Done,
                "RANGES" => return Err(err(line_no, "RANGES are not supported")),
                other => return Err(err(line_no, format!("unknown section {other}"))),
            };
            continue;
        }
        match section {
            Section::ObjSense => sense = parse_sense(line_no, toks[0])?,
            Section::Rows => {
                if toks.len() != 2 {
                    return Err(err(line_no, "row line needs a type and a name"));
                }
                match toks[0] {
                    "N" => {
                        if obj_row.is_none() {
                            obj_row = Some(toks[1].to_string());
                        }
                    }
                    "L" | "G" => {
                        row_index.insert(toks[1].to_string(), row_names.len());
                        row_names.push(toks[1].to_string());
                        row_kinds.push(if toks[0] == "L" { RowKind::Le } else { RowKind::Ge });
                        rhs.push(0);
                    }
                    t => return Err(err(line_no, format!("row type {t} is not supported"))),
                }
            }
            Section::Columns => {
                if toks.len() >= 3 && toks[1] == "'MARKER'" {
                    match toks[2] {
                        "'INTORG'" => integer = true,
                        "'INTEND'" => {}
                        t => return Err(err(line_no, format!("unknown marker {t}"))),
                    }
                    continue;
                }
                if toks.len() != 3 && toks.len() != 5 {
                    return Err(err(line_no, "column line needs one or two (row, value) pairs"));
                }
                let j = *col_index.entry(toks[0].to_string()).or_insert_with(|| {
                    col_names.push(toks[0].to_string());
                    columns.push(Vec::new());
                    objective.push(0);
                    col_names.len() - 1
                });
                for pair in toks[1..].chunks(2) {
                    let v = int_value(line_no, pair[1])?;
                    if Some(pair[0]) == obj_row.as_deref() {
                        objective[j] = v;
                    } else {
                        let i = *row_index.get(pair[0]).ok_or_else(|| err(line_no, format!("unknown row {}", pair[0])))?;
                        columns[j].push((i as u32, v));
                    }
                }
            }
            Section::Rhs => {
                if toks.len() != 3 && toks.len() != 5 {
                    return Err(err(line_no, "rhs line needs one or two (row, value) pairs"));
                }
                for pair in toks[1..].chunks(2) {
                    let v = int_value(line_no, pair[1])?;
                    if Some(pair[0]) == obj_row.as_deref() {
                        continue;
                    }
                    let i = *row_index.get(pair[0]).ok_or_else(|| err(line_no, format!("unknown row {}", pair[0])))?;
                    rhs[i] = v;
                }
            }
            Section::Bounds => {
                let kind = toks[0];
                match kind {
                    "BV" => integer = true,
                    "LO" if toks.get(3).map(|v| v.parse::<f64>() == Ok(0.0)).unwrap_or(false) => {}
                    "PL" => {}
                    _ => return Err(err(line_no, format!("bound type {kind} is not supported"))),
                }
            }
            Section::Start | Section::Done => return Err(err(line_no, "data outside a section")),
        }
    }
    if section != Section::Done {
        return Err(err(text.lines().count(), "missing ENDATA"));
    }
    for col in &mut columns {
        col.sort_unstable();
    }
    Ok(LpProblem { name, sense, objective, columns, row_kinds, rhs, col_names, row_names, integer })
}

fn parse_sense(line: usize, tok: &str) -> Result<Sense> {
    match tok {
        "MAX" | "MAXIMIZE" => Ok(Sense::Maximize),
        "MIN" | "MINIMIZE" => Ok(Sense::Minimize),
        t => Err(err(line, format!("unknown objective sense {t}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{DeletionHypergraph, HypergraphLimits};

    #[test]
    fn roundtrip_matching_and_transversal() {
        let h = DeletionHypergraph::build(2, 1, 4, HypergraphLimits::default()).unwrap();
        for p in [LpProblem::matching(&h), LpProblem::transversal(&h), LpProblem::matching(&h).as_integer()] {
            let text = write_mps(&p);
            assert_eq!(parse_mps(&text).unwrap(), p);
        }
    }

    #[test]
    fn ilp_export_has_markers() {
        let h = DeletionHypergraph::build(2, 1, 3, HypergraphLimits::default()).unwrap();
        let text = write_mps(&LpProblem::matching(&h).as_integer());
        assert!(text.contains("'INTORG'"));
        assert!(text.contains(" BV BND"));
        assert!(text.contains("    MAX"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_mps("NAME x\nROWS\n N OBJ\n E R1\nENDATA\n").is_err());
        assert!(parse_mps("NAME x\nROWS\n N OBJ\n").is_err());
        assert!(parse_mps("NAME x\nROWS\n N OBJ\n L R1\nCOLUMNS\n    X R1 0.5\nENDATA\n").is_err());
    }
}
