//! Reader and writer for TSPLIB-style files extended with GTSP sets.
//!
//! ```text
//! NAME: 10att48
//! TYPE: GTSP
//! DIMENSION: 48
//! GTSP_SETS: 10
//! EDGE_WEIGHT_TYPE: ATT
//! NODE_COORD_SECTION
//! 1 6734 1453
//! ...
//! GTSP_SET_SECTION
//! 1 1 8 38 -1
//! ...
//! EOF
//! ```
//!
//! A plain `TYPE: TSP` file without `GTSP_SETS` is read as a GTSP instance
//! with one singleton cluster per vertex.

use std::fmt::Write as _;
use std::io::Read;

use crate::error::InstanceError;
use crate::instance::{GtspInstance, Weight, WeightKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MatrixFormat {
    Full,
    UpperRow,
    LowerRow,
    UpperDiagRow,
    LowerDiagRow,
    UpperCol,
    LowerCol,
    UpperDiagCol,
    LowerDiagCol,
}

impl MatrixFormat {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "FULL_MATRIX" => MatrixFormat::Full,
            "UPPER_ROW" => MatrixFormat::UpperRow,
            "LOWER_ROW" => MatrixFormat::LowerRow,
            "UPPER_DIAG_ROW" => MatrixFormat::UpperDiagRow,
            "LOWER_DIAG_ROW" => MatrixFormat::LowerDiagRow,
            "UPPER_COL" => MatrixFormat::UpperCol,
            "LOWER_COL" => MatrixFormat::LowerCol,
            "UPPER_DIAG_COL" => MatrixFormat::UpperDiagCol,
            "LOWER_DIAG_COL" => MatrixFormat::LowerDiagCol,
            _ => return None,
        })
    }

    fn entry_count(self, n: usize) -> usize {
        match self {
            MatrixFormat::Full => n * n,
            MatrixFormat::UpperRow | MatrixFormat::LowerRow | MatrixFormat::UpperCol | MatrixFormat::LowerCol => {
                n * (n - 1) / 2
            }
            _ => n * (n + 1) / 2,
        }
    }

    /// Cell coordinates in reading order. Column formats are the transposes
    /// of the row formats.
    fn cells(self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.entry_count(n));
        let (row_fmt, transpose) = match self {
            MatrixFormat::UpperCol => (MatrixFormat::LowerRow, true),
            MatrixFormat::LowerCol => (MatrixFormat::UpperRow, true),
            MatrixFormat::UpperDiagCol => (MatrixFormat::LowerDiagRow, true),
            MatrixFormat::LowerDiagCol => (MatrixFormat::UpperDiagRow, true),
            other => (other, false),
        };
        for i in 0..n {
            let range = match row_fmt {
                MatrixFormat::Full => 0..n,
                MatrixFormat::UpperRow => i + 1..n,
                MatrixFormat::LowerRow => 0..i,
                MatrixFormat::UpperDiagRow => i..n,
                MatrixFormat::LowerDiagRow => 0..i + 1,
                _ => unreachable!(),
            };
            for j in range {
                out.push(if transpose { (j, i) } else { (i, j) });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Coords,
    Weights,
    Sets,
    Display,
}

const SECTIONS: &[&str] = &[
    "NODE_COORD_SECTION",
    "EDGE_WEIGHT_SECTION",
    "GTSP_SET_SECTION",
    "DISPLAY_DATA_SECTION",
    "FIXED_EDGES_SECTION",
    "EOF",
];

const HEADERS: &[&str] = &[
    "NAME",
    "TYPE",
    "COMMENT",
    "DIMENSION",
    "GTSP_SETS",
    "EDGE_WEIGHT_TYPE",
    "EDGE_WEIGHT_FORMAT",
    "NODE_COORD_TYPE",
    "DISPLAY_DATA_TYPE",
];

fn syntax(line: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_int(tok: &str, line: usize) -> Result<i64, InstanceError> {
    if let Ok(v) = tok.parse::<i64>() {
        return Ok(v);
    }
    match tok.parse::<f64>() {
        Ok(f) if f.fract() == 0.0 && f.is_finite() => Ok(f as i64),
        _ => Err(syntax(line, format!("expected an integer, found `{tok}`"))),
    }
}

/// Reads an instance from any byte source.
pub fn read_instance<R: Read>(mut source: R) -> Result<GtspInstance, InstanceError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    parse_instance(&text)
}

/// Parses the text of a GTSP (or plain TSP) file.
pub fn parse_instance(text: &str) -> Result<GtspInstance, InstanceError> {
    let mut name = None;
    let mut comment: Option<String> = None;
    let mut dimension: Option<usize> = None;
    let mut sets: Option<usize> = None;
    let mut kind: Option<WeightKind> = None;
    let mut format: Option<MatrixFormat> = None;

    let mut coords: Vec<Option<[f64; 2]>> = Vec::new();
    let mut weight_tokens: Vec<(i64, usize)> = Vec::new();
    let mut set_tokens: Vec<(i64, usize)> = Vec::new();
    let mut section = Section::None;
    let mut seen_eof = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if seen_eof {
            return Err(syntax(line_no, "content after EOF"));
        }

        // keyword detection: `KEY`, `KEY:`, `KEY : value`, `KEY: value`
        let (head, rest) = match line.find(':') {
            Some(p) => (line[..p].trim(), Some(line[p + 1..].trim())),
            None => {
                let mut it = line.splitn(2, char::is_whitespace);
                (it.next().unwrap_or(""), it.next().map(str::trim))
            }
        };
        let is_keyword = head.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
        if is_keyword {
            let key = head.to_ascii_uppercase();
            if SECTIONS.contains(&key.as_str()) {
                if rest.is_some_and(|r| !r.is_empty()) {
                    return Err(syntax(line_no, format!("unexpected text after {key}")));
                }
                section = match key.as_str() {
                    "NODE_COORD_SECTION" => {
                        let n = dimension.ok_or(InstanceError::Missing("DIMENSION before NODE_COORD_SECTION"))?;
                        coords = vec![None; n];
                        Section::Coords
                    }
                    "EDGE_WEIGHT_SECTION" => Section::Weights,
                    "GTSP_SET_SECTION" => Section::Sets,
                    "DISPLAY_DATA_SECTION" => Section::Display,
                    "FIXED_EDGES_SECTION" => return Err(InstanceError::UnsupportedFeature(key)),
                    "EOF" => {
                        seen_eof = true;
                        Section::None
                    }
                    _ => unreachable!(),
                };
                continue;
            }
            if HEADERS.contains(&key.as_str()) {
                let value = rest.unwrap_or("").to_string();
                match key.as_str() {
                    "NAME" => name = Some(value),
                    "COMMENT" => {
                        comment = Some(match comment {
                            Some(prev) => format!("{prev}\n{value}"),
                            None => value,
                        })
                    }
                    "TYPE" => {
                        let t = value.to_ascii_uppercase();
                        if !matches!(t.as_str(), "GTSP" | "TSP" | "AGTSP" | "ATSP") {
                            return Err(InstanceError::UnsupportedFeature(format!("TYPE {value}")));
                        }
                    }
                    "DIMENSION" => {
                        let d = parse_int(&value, line_no)?;
                        if d <= 0 {
                            return Err(syntax(line_no, "DIMENSION must be positive"));
                        }
                        dimension = Some(d as usize);
                    }
                    "GTSP_SETS" => {
                        let d = parse_int(&value, line_no)?;
                        if d <= 0 {
                            return Err(syntax(line_no, "GTSP_SETS must be positive"));
                        }
                        sets = Some(d as usize);
                    }
                    "EDGE_WEIGHT_TYPE" => {
                        kind = Some(
                            WeightKind::from_keyword(&value.to_ascii_uppercase())
                                .ok_or(InstanceError::UnsupportedWeightType(value))?,
                        )
                    }
                    "EDGE_WEIGHT_FORMAT" => {
                        format = Some(
                            MatrixFormat::parse(&value.to_ascii_uppercase())
                                .ok_or(InstanceError::UnsupportedWeightFormat(value))?,
                        )
                    }
                    "NODE_COORD_TYPE" if !value.eq_ignore_ascii_case("TWOD_COORDS") => {
                        return Err(InstanceError::UnsupportedFeature(format!("NODE_COORD_TYPE {value}")));
                    }
                    _ => {}
                }
                section = Section::None;
                continue;
            }
            return Err(InstanceError::UnknownKeyword {
                line: line_no,
                keyword: head.to_string(),
            });
        }

        match section {
            Section::None => return Err(syntax(line_no, "data outside of a section")),
            Section::Display => {}
            Section::Coords => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(syntax(line_no, "coordinate lines need `id x y`"));
                }
                let id = parse_int(toks[0], line_no)?;
                if id < 1 || id as usize > coords.len() {
                    return Err(InstanceError::VertexOutOfRange(id.max(0) as usize));
                }
                let mut xy = [0.0; 2];
                for (k, t) in toks[1..].iter().enumerate() {
                    xy[k] = t
                        .parse::<f64>()
                        .map_err(|_| syntax(line_no, format!("bad coordinate `{t}`")))?;
                }
                if coords[id as usize - 1].replace(xy).is_some() {
                    return Err(syntax(line_no, format!("duplicate coordinates for node {id}")));
                }
            }
            Section::Weights => {
                for t in line.split_whitespace() {
                    weight_tokens.push((parse_int(t, line_no)?, line_no));
                }
            }
            Section::Sets => {
                for t in line.split_whitespace() {
                    set_tokens.push((parse_int(t, line_no)?, line_no));
                }
            }
        }
    }

    let n = dimension.ok_or(InstanceError::Missing("DIMENSION"))?;
    let name = name.unwrap_or_default();
    let kind = kind.ok_or(InstanceError::Missing("EDGE_WEIGHT_TYPE"))?;

    let (weights, coords) = if kind == WeightKind::Explicit {
        if !coords.is_empty() {
            return Err(InstanceError::UnsupportedFeature(
                "NODE_COORD_SECTION with EXPLICIT weights".into(),
            ));
        }
        let format = format.ok_or(InstanceError::Missing("EDGE_WEIGHT_FORMAT"))?;
        let cells = format.cells(n);
        if weight_tokens.len() != cells.len() {
            return Err(InstanceError::DimensionMismatch(format!(
                "EDGE_WEIGHT_SECTION has {} entries, {} expected for DIMENSION {}",
                weight_tokens.len(),
                cells.len(),
                n
            )));
        }
        let mut w = vec![0 as Weight; n * n];
        let mirror = format != MatrixFormat::Full;
        for (&(i, j), &(value, _)) in cells.iter().zip(&weight_tokens) {
            w[i * n + j] = value;
            if mirror {
                w[j * n + i] = value;
            }
        }
        (w, None)
    } else {
        if !weight_tokens.is_empty() {
            return Err(InstanceError::UnsupportedFeature(format!(
                "EDGE_WEIGHT_SECTION with {kind} weights"
            )));
        }
        if coords.is_empty() {
            return Err(InstanceError::Missing("NODE_COORD_SECTION"));
        }
        let coords: Vec<[f64; 2]> = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or(InstanceError::DimensionMismatch(format!(
                    "no coordinates for node {}",
                    i + 1
                )))
            })
            .collect::<Result<_, _>>()?;
        let mut w = vec![0 as Weight; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    w[i * n + j] = kind.distance(coords[i], coords[j]).expect("geometric kind");
                }
            }
        }
        (w, Some(coords))
    };

    let clusters = match sets {
        None => {
            if !set_tokens.is_empty() {
                return Err(InstanceError::Missing("GTSP_SETS"));
            }
            (0..n).map(|v| vec![v]).collect()
        }
        Some(m) => {
            if m > n {
                return Err(InstanceError::DimensionMismatch(format!(
                    "GTSP_SETS {m} exceeds DIMENSION {n}"
                )));
            }
            parse_sets(&set_tokens, m, n)?
        }
    };

    GtspInstance::build(name, comment, kind, coords, n, weights, clusters)
}

fn parse_sets(tokens: &[(i64, usize)], m: usize, n: usize) -> Result<Vec<Vec<usize>>, InstanceError> {
    let mut clusters: Vec<Option<Vec<usize>>> = vec![None; m];
    let mut it = tokens.iter();
    let mut read = 0;
    while let Some(&(id, line)) = it.next() {
        if id < 1 || id as usize > m {
            return Err(syntax(line, format!("set id {id} outside 1..={m}")));
        }
        let mut members = Vec::new();
        loop {
            match it.next() {
                Some(&(-1, _)) => break,
                Some(&(v, line)) => {
                    if v < 1 || v as usize > n {
                        return Err(syntax(line, format!("vertex id {v} outside 1..={n}")));
                    }
                    members.push(v as usize - 1);
                }
                None => return Err(syntax(line, format!("set {id} is not terminated by -1"))),
            }
        }
        if clusters[id as usize - 1].replace(members).is_some() {
            return Err(syntax(line, format!("set {id} defined twice")));
        }
        read += 1;
    }
    if read != m {
        return Err(InstanceError::DimensionMismatch(format!(
            "GTSP_SETS is {m} but {read} sets were given"
        )));
    }
    Ok(clusters.into_iter().map(|c| c.unwrap_or_default()).collect())
}

/// Serializes an instance in the format accepted by [`parse_instance`].
///
/// Geometric instances are written with their coordinates, everything else
/// as a full explicit matrix.
pub fn write_instance(instance: &GtspInstance) -> String {
    let n = instance.n();
    let mut out = String::new();
    writeln!(out, "NAME: {}", instance.name()).unwrap();
    writeln!(out, "TYPE: GTSP").unwrap();
    if let Some(c) = instance.comment() {
        for line in c.lines() {
            writeln!(out, "COMMENT: {line}").unwrap();
        }
    }
    writeln!(out, "DIMENSION: {n}").unwrap();
    writeln!(out, "GTSP_SETS: {}", instance.m()).unwrap();
    match (instance.weight_kind(), instance.coords()) {
        (kind, Some(coords)) if kind != WeightKind::Explicit => {
            writeln!(out, "EDGE_WEIGHT_TYPE: {kind}").unwrap();
            writeln!(out, "NODE_COORD_SECTION").unwrap();
            for (i, c) in coords.iter().enumerate() {
                writeln!(out, "{} {} {}", i + 1, c[0], c[1]).unwrap();
            }
        }
        _ => {
            writeln!(out, "EDGE_WEIGHT_TYPE: EXPLICIT").unwrap();
            writeln!(out, "EDGE_WEIGHT_FORMAT: FULL_MATRIX").unwrap();
            writeln!(out, "EDGE_WEIGHT_SECTION").unwrap();
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| instance.w(i, j).to_string()).collect();
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
        }
    }
    writeln!(out, "GTSP_SET_SECTION").unwrap();
    for (c, members) in instance.clusters().iter().enumerate() {
        write!(out, "{}", c + 1).unwrap();
        for v in members {
            write!(out, " {}", v + 1).unwrap();
        }
        writeln!(out, " -1").unwrap();
    }
    writeln!(out, "EOF").unwrap();
    out
}
