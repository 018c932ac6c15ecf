//! The `tautri 1` text format and its JSON mirror.
//!
//! ```text
//! tautri 1
//! tets 2
//! tet 0: 1 0132 | 1 1023 | 1 3201 | 1 2310
//! tet 1: ...
//! coor 0: + - - +
//! ```
//!
//! `tet I:` lists, for faces 0..3, the target tetrahedron and the image of
//! vertices 0123 under the gluing. The optional `coor I:` lines give a
//! transverse orientation per face, `+` pointing out of tetrahedron `I`.
//! Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Gluing, IdealTriangulation, TriError};
use crate::perm::Perm4;

/// Out/in flag per face of every tetrahedron (`true` = out).
pub type TetFlags = Vec<[bool; 4]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationFile {
    pub tri: IdealTriangulation,
    pub coor: Option<TetFlags>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected header `tautri 1`")]
    BadHeader,
    #[error("expected `tets N` with N > 0")]
    BadTetCount,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("not a permutation: {0:?}")]
    BadPermutation(String),
    #[error("tetrahedron {0} listed twice")]
    Duplicate(usize),
    #[error("tetrahedron {0} is missing")]
    Missing(usize),
    #[error("coor block must list every tetrahedron")]
    IncompleteCoor,
    #[error(transparent)]
    Structure(#[from] TriError),
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses text or JSON input; JSON is recognised by a leading `{`.
pub fn parse_any(text: &str) -> Result<TriangulationFile, ParseError> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        parse(text)
    }
}

pub fn parse_triangulation(text: &str) -> Result<IdealTriangulation, ParseError> {
    parse(text).map(|f| f.tri)
}

fn parse_index_prefix(rest: &str, line: usize) -> Result<(usize, &str), ParseError> {
    let (idx, body) = rest
        .split_once(':')
        .ok_or_else(|| err(line, ParseErrorKind::Malformed("missing `:`".into())))?;
    let idx = idx.trim().parse::<usize>().map_err(|_| {
        err(
            line,
            ParseErrorKind::Malformed(format!("bad index {:?}", idx.trim())),
        )
    })?;
    Ok((idx, body))
}

pub fn parse(text: &str) -> Result<TriangulationFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, header) = lines
        .next()
        .ok_or_else(|| err(1, ParseErrorKind::BadHeader))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["tautri", "1"] {
        return Err(err(ln, ParseErrorKind::BadHeader));
    }
    let (ln, count_line) = lines
        .next()
        .ok_or_else(|| err(ln + 1, ParseErrorKind::BadTetCount))?;
    let n = match count_line.split_whitespace().collect::<Vec<_>>()[..] {
        ["tets", n] => n.parse::<usize>().ok().filter(|&n| n > 0),
        _ => None,
    }
    .ok_or_else(|| err(ln, ParseErrorKind::BadTetCount))?;

    let mut gluings: Vec<Option<[Gluing; 4]>> = vec![None; n];
    let mut tet_line = vec![0usize; n];
    let mut coor: Vec<Option<[bool; 4]>> = vec![None; n];
    let mut any_coor = false;
    let mut last_line = ln;

    for (ln, line) in lines {
        last_line = ln;
        if let Some(rest) = line.strip_prefix("tet ") {
            let (idx, body) = parse_index_prefix(rest, ln)?;
            if idx >= n {
                return Err(err(
                    ln,
                    ParseErrorKind::Malformed(format!("tet index {idx} out of range")),
                ));
            }
            if gluings[idx].is_some() {
                return Err(err(ln, ParseErrorKind::Duplicate(idx)));
            }
            let parts: Vec<&str> = body.split('|').collect();
            if parts.len() != 4 {
                return Err(err(
                    ln,
                    ParseErrorKind::Malformed("expected four face gluings".into()),
                ));
            }
            let mut faces = [Gluing {
                tet: 0,
                perm: Perm4::identity(),
            }; 4];
            for (slot, part) in faces.iter_mut().zip(&parts) {
                let toks: Vec<&str> = part.split_whitespace().collect();
                let [target, perm] = toks[..] else {
                    return Err(err(
                        ln,
                        ParseErrorKind::Malformed(format!("bad gluing {:?}", part.trim())),
                    ));
                };
                let tet = target.parse::<usize>().map_err(|_| {
                    err(
                        ln,
                        ParseErrorKind::Malformed(format!("bad target {target:?}")),
                    )
                })?;
                let perm = Perm4::parse(perm)
                    .ok_or_else(|| err(ln, ParseErrorKind::BadPermutation(perm.to_string())))?;
                *slot = Gluing { tet, perm };
            }
            gluings[idx] = Some(faces);
            tet_line[idx] = ln;
        } else if let Some(rest) = line.strip_prefix("coor ") {
            let (idx, body) = parse_index_prefix(rest, ln)?;
            if idx >= n {
                return Err(err(
                    ln,
                    ParseErrorKind::Malformed(format!("coor index {idx} out of range")),
                ));
            }
            if coor[idx].is_some() {
                return Err(err(ln, ParseErrorKind::Duplicate(idx)));
            }
            let signs: Vec<bool> = body
                .split_whitespace()
                .map(|s| match s {
                    "+" => Ok(true),
                    "-" | "\u{2212}" => Ok(false),
                    other => Err(err(
                        ln,
                        ParseErrorKind::Malformed(format!("bad sign {other:?}")),
                    )),
                })
                .collect::<Result<_, _>>()?;
            let signs: [bool; 4] = signs
                .try_into()
                .map_err(|_| err(ln, ParseErrorKind::Malformed("expected four signs".into())))?;
            coor[idx] = Some(signs);
            any_coor = true;
        } else {
            return Err(err(ln, ParseErrorKind::Malformed(line.to_string())));
        }
    }

    let mut faces = Vec::with_capacity(n);
    for (i, g) in gluings.into_iter().enumerate() {
        faces.push(g.ok_or_else(|| err(last_line, ParseErrorKind::Missing(i)))?);
    }
    let tri = IdealTriangulation::new(faces).map_err(|e| {
        let line = match e {
            TriError::DanglingTarget { tet, .. }
            | TriError::SelfGluedFace { tet, .. }
            | TriError::NonInvolutive { tet, .. }
            | TriError::ReversedEdge { tet, .. } => tet_line[tet],
            TriError::Empty => 0,
        };
        err(line, ParseErrorKind::Structure(e))
    })?;
    let coor = if any_coor {
        Some(
            coor.into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| err(last_line, ParseErrorKind::IncompleteCoor))?,
        )
    } else {
        None
    };
    Ok(TriangulationFile { tri, coor })
}

/// Canonical text form: tetrahedra ascending, faces 0..3, then the `coor`
/// block if present.
pub fn serialize(tri: &IdealTriangulation, coor: Option<&[[bool; 4]]>) -> String {
    let mut out = String::new();
    writeln!(out, "tautri 1").unwrap();
    writeln!(out, "tets {}", tri.tet_count()).unwrap();
    for (t, faces) in tri.gluings().iter().enumerate() {
        let body: Vec<String> = faces
            .iter()
            .map(|g| format!("{} {}", g.tet, g.perm))
            .collect();
        writeln!(out, "tet {t}: {}", body.join(" | ")).unwrap();
    }
    if let Some(flags) = coor {
        for (t, f) in flags.iter().enumerate() {
            let signs: Vec<&str> = f.iter().map(|&o| if o { "+" } else { "-" }).collect();
            writeln!(out, "coor {t}: {}", signs.join(" ")).unwrap();
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonGluing {
    tet: usize,
    perm: Perm4,
}

#[derive(Serialize, Deserialize)]
struct JsonFile {
    format: String,
    version: u32,
    tets: Vec<[JsonGluing; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coor: Option<Vec<String>>,
}

pub fn to_json(tri: &IdealTriangulation, coor: Option<&[[bool; 4]]>) -> String {
    let file = JsonFile {
        format: "tautri".into(),
        version: 1,
        tets: tri
            .gluings()
            .iter()
            .map(|faces| {
                faces.map(|g| JsonGluing {
                    tet: g.tet,
                    perm: g.perm,
                })
            })
            .collect(),
        coor: coor.map(|flags| {
            flags
                .iter()
                .map(|f| f.iter().map(|&o| if o { '+' } else { '-' }).collect())
                .collect()
        }),
    };
    serde_json::to_string_pretty(&file).unwrap() + "\n"
}

pub fn from_json(text: &str) -> Result<TriangulationFile, ParseError> {
    let jerr = |e: serde_json::Error| err(e.line(), ParseErrorKind::Json(e.to_string()));
    let file: JsonFile = serde_json::from_str(text).map_err(jerr)?;
    if file.format != "tautri" || file.version != 1 {
        return Err(err(1, ParseErrorKind::BadHeader));
    }
    let gluings: Vec<[Gluing; 4]> = file
        .tets
        .into_iter()
        .map(|faces| {
            faces.map(|g| Gluing {
                tet: g.tet,
                perm: g.perm,
            })
        })
        .collect();
    let tri = IdealTriangulation::new(gluings).map_err(|e| err(0, ParseErrorKind::Structure(e)))?;
    let coor = match file.coor {
        None => None,
        Some(rows) => {
            if rows.len() != tri.tet_count() {
                return Err(err(0, ParseErrorKind::IncompleteCoor));
            }
            let mut flags = Vec::with_capacity(rows.len());
            for row in rows {
                let signs: Vec<bool> = row
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(true),
                        '-' => Ok(false),
                        _ => Err(err(
                            0,
                            ParseErrorKind::Malformed(format!("bad sign row {row:?}")),
                        )),
                    })
                    .collect::<Result<_, _>>()?;
                flags.push(<[bool; 4]>::try_from(signs).map_err(|_| {
                    err(
                        0,
                        ParseErrorKind::Malformed(format!("bad sign row {row:?}")),
                    )
                })?);
            }
            Some(flags)
        }
    };
    Ok(TriangulationFile { tri, coor })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    const TWO_TET: &str = "tautri 1\ntets 2\n\
        tet 0: 1 0123 | 1 0123 | 1 0123 | 1 0123\n\
        tet 1: 0 0123 | 0 0123 | 0 0123 | 0 0123\n";

    #[test]
    fn parses_two_tet_file() {
        let f = parse(TWO_TET).unwrap();
        assert_eq!(f.tri, doubled_tet());
        assert!(f.coor.is_none());
        assert_eq!(serialize(&f.tri, None), TWO_TET);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = format!("# a comment\n\n{TWO_TET}# trailing\n");
        assert_eq!(parse(&text).unwrap().tri, doubled_tet());
    }

    #[test]
    fn bad_permutation_reports_line() {
        let text = TWO_TET.replacen(
            "1 0123 | 1 0123 | 1 0123 | 1 0123",
            "1 0122 | 1 0123 | 1 0123 | 1 0123",
            1,
        );
        let e = parse(&text).unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(e.kind, ParseErrorKind::BadPermutation("0122".into()));
    }

    #[test]
    fn structural_errors_report_line() {
        let text = TWO_TET.replacen("tet 1: 0 0123 | 0 0123", "tet 1: 0 0123 | 0 0132", 1);
        let e = parse(&text).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(
            e.kind,
            ParseErrorKind::Structure(TriError::NonInvolutive { .. })
        ));
        let text = TWO_TET.replacen("tet 1: 0 0123", "tet 1: 7 0123", 1);
        let e = parse(&text).unwrap_err();
        assert!(matches!(
            e.kind,
            ParseErrorKind::Structure(TriError::DanglingTarget { .. })
        ));
    }

    #[test]
    fn header_errors() {
        assert_eq!(
            parse("garbage").unwrap_err().kind,
            ParseErrorKind::BadHeader
        );
        assert_eq!(
            parse("tautri 1\ntets 0\n").unwrap_err().kind,
            ParseErrorKind::BadTetCount
        );
        let missing = "tautri 1\ntets 2\ntet 0: 1 0123 | 1 0123 | 1 0123 | 1 0123\n";
        assert_eq!(parse(missing).unwrap_err().kind, ParseErrorKind::Missing(1));
    }

    #[test]
    fn coor_block_round_trips() {
        let text = format!("{TWO_TET}coor 0: + + - -\ncoor 1: - - + +\n");
        let f = parse(&text).unwrap();
        let flags = f.coor.clone().unwrap();
        assert_eq!(flags[0], [true, true, false, false]);
        assert_eq!(serialize(&f.tri, Some(&flags)), text);
        let json = to_json(&f.tri, Some(&flags));
        assert_eq!(parse_any(&json).unwrap(), f);
        let partial = format!("{TWO_TET}coor 0: + + - -\n");
        assert_eq!(
            parse(&partial).unwrap_err().kind,
            ParseErrorKind::IncompleteCoor
        );
    }
}
