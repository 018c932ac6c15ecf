//! The `surf 1` text format.
//!
//! ```text
//! surf 1
//! tris 2
//! tri 0: 1 10 | 1 21 | 1 10
//! tri 1: 0 10 | 0 21 | 0 10
//! ```
//!
//! For each side `k` of triangle `I` the line gives the target triangle and
//! the images of side `k`'s two endpoints, listed in increasing order.

use std::fmt::Write as _;

use thiserror::Error;

use super::{SideGluing, SurfaceError, SurfaceIdealTri};
use crate::perm::Perm3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Structure(#[from] SurfaceError),
}

fn syntax(line: usize, msg: impl Into<String>) -> SurfaceParseError {
    SurfaceParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn endpoints(side: usize) -> (usize, usize) {
    match side {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn perm_from_endpoints(side: usize, token: &str) -> Option<Perm3> {
    let digits: Vec<u8> = token.bytes().map(|b| b.wrapping_sub(b'0')).collect();
    if digits.len() != 2 || digits.iter().any(|&d| d > 2) || digits[0] == digits[1] {
        return None;
    }
    let (u, v) = endpoints(side);
    let mut images = [0u8; 3];
    images[u] = digits[0];
    images[v] = digits[1];
    images[side] = 3 - digits[0] - digits[1];
    Perm3::new(images)
}

pub fn parse_surface(text: &str) -> Result<SurfaceIdealTri, SurfaceParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "surf 1")) => {}
        Some((n, _)) => return Err(syntax(n, "expected header `surf 1`")),
        None => return Err(syntax(1, "empty input")),
    }
    let count = match lines.next() {
        Some((n, l)) => l
            .strip_prefix("tris ")
            .and_then(|c| c.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
            .ok_or_else(|| syntax(n, "expected `tris N` with N > 0"))?,
        None => return Err(syntax(1, "missing `tris N`")),
    };
    let mut rows: Vec<Option<[SideGluing; 3]>> = vec![None; count];
    for (n, l) in lines {
        let rest = l
            .strip_prefix("tri ")
            .ok_or_else(|| syntax(n, format!("unexpected line {l:?}")))?;
        let (idx, body) = rest
            .split_once(':')
            .ok_or_else(|| syntax(n, "missing `:`"))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| syntax(n, "bad triangle index"))?;
        if idx >= count {
            return Err(syntax(n, format!("triangle {idx} out of range")));
        }
        if rows[idx].is_some() {
            return Err(syntax(n, format!("triangle {idx} listed twice")));
        }
        let parts: Vec<&str> = body.split('|').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(syntax(n, "expected three sides"));
        }
        let mut row = [SideGluing {
            tri: 0,
            perm: Perm3::identity(),
        }; 3];
        for (k, part) in parts.iter().enumerate() {
            let mut it = part.split_whitespace();
            let (Some(t), Some(p), None) = (it.next(), it.next(), it.next()) else {
                return Err(syntax(n, format!("side {k}: expected `T PP`")));
            };
            let tri = t
                .parse()
                .map_err(|_| syntax(n, format!("side {k}: bad triangle {t:?}")))?;
            let perm = perm_from_endpoints(k, p)
                .ok_or_else(|| syntax(n, format!("side {k}: bad endpoints {p:?}")))?;
            row[k] = SideGluing { tri, perm };
        }
        rows[idx] = Some(row);
    }
    let gluings = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| syntax(0, format!("triangle {i} is missing"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SurfaceIdealTri::new(gluings)?)
}

pub fn serialize_surface(s: &SurfaceIdealTri) -> String {
    let mut out = format!("surf 1\ntris {}\n", s.triangle_count());
    for (t, row) in s.gluings().iter().enumerate() {
        let sides: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let (u, v) = endpoints(k);
                format!("{} {}{}", g.tri, g.perm.apply(u), g.perm.apply(v))
            })
            .collect();
        writeln!(out, "tri {t}: {}", sides.join(" | ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_standard_surfaces() {
        for (g, p) in [(0, 3), (1, 1), (1, 2), (2, 1)] {
            let s = SurfaceIdealTri::punctured_surface(g, p).unwrap();
            let text = serialize_surface(&s);
            assert_eq!(parse_surface(&text).unwrap(), s);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_surface("surf 2\n"),
            Err(SurfaceParseError::Syntax { line: 1, .. })
        ));
        let bad = "surf 1\ntris 2\ntri 0: 1 11 | 1 21 | 1 10\ntri 1: 0 10 | 0 21 | 0 10\n";
        assert!(matches!(
            parse_surface(bad),
            Err(SurfaceParseError::Syntax { line: 3, .. })
        ));
        let unmatched = "surf 1\ntris 2\ntri 0: 1 10 | 1 21 | 1 10\ntri 1: 0 10 | 0 21 | 0 12\n";
        assert!(matches!(
            parse_surface(unmatched),
            Err(SurfaceParseError::Structure(_))
        ));
    }
}
