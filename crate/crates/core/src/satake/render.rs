//! Text rendering of Satake diagrams.
//!
//! Each component is drawn along one line in Bourbaki order. Types D and E
//! have one vertex hanging below the branch node on a third line:
//!
//! ```text
//! ●─○─●─○─●
//!     │
//!     ○
//! ```
//!
//! Multiple bonds carry an arrow pointing at the shorter root. Components are
//! separated by two spaces.

use super::{SatakeDiagram, SatakeError};
use crate::rootdata::classify::{check_cartan, classify_cartan};
use crate::rootdata::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderStyle {
    Unicode,
    Ascii,
}

struct Glyphs {
    black: char,
    white: char,
    vertical: char,
    /// single, double towards right, double towards left, triple right, triple left
    bonds: [&'static str; 5],
}

const UNICODE: Glyphs = Glyphs {
    black: '●',
    white: '○',
    vertical: '│',
    bonds: ["─", "⇒", "⇐", "⇛", "⇚"],
};

const ASCII: Glyphs = Glyphs {
    black: '*',
    white: 'o',
    vertical: '|',
    bonds: ["--", "=>", "<=", "3>", "<3"],
};

impl RenderStyle {
    fn glyphs(self) -> &'static Glyphs {
        match self {
            RenderStyle::Unicode => &UNICODE,
            RenderStyle::Ascii => &ASCII,
        }
    }

    fn bond_width(self) -> usize {
        self.glyphs().bonds[0].chars().count()
    }
}

/// One drawn component: vertices along the line and an optional pendant
/// `(vertex, position of its neighbour on the line)`.
struct Layout {
    line: Vec<usize>,
    pendant: Option<(usize, usize)>,
}

fn layout(series: Series, v: &[usize]) -> Layout {
    match series {
        Series::D => Layout {
            line: v[..v.len() - 1].to_vec(),
            pendant: Some((v[v.len() - 1], v.len() - 3)),
        },
        Series::E => {
            let mut line = vec![v[0]];
            line.extend(&v[2..]);
            Layout {
                line,
                pendant: Some((v[1], 2)),
            }
        }
        _ => Layout {
            line: v.to_vec(),
            pendant: None,
        },
    }
}

fn bond(c: &[Vec<i64>], a: usize, b: usize, g: &Glyphs) -> &'static str {
    match (-c[a][b], -c[b][a]) {
        (2, 1) => g.bonds[1],
        (1, 2) => g.bonds[2],
        (3, 1) => g.bonds[3],
        (1, 3) => g.bonds[4],
        _ => g.bonds[0],
    }
}

pub fn render(diagram: &SatakeDiagram, style: RenderStyle) -> String {
    let g = style.glyphs();
    let unit = 1 + style.bond_width();
    let comps = classify_cartan(&diagram.cartan).expect("finite-type Cartan matrix");
    let vertex = |v: usize| if diagram.is_black(v) { g.black } else { g.white };
    let mut lines = [String::new(), String::new(), String::new()];
    let mut col = 0;
    for (k, comp) in comps.iter().enumerate() {
        if k > 0 {
            lines[0].push_str("  ");
            col += 2;
        }
        let lay = layout(comp.series, &comp.vertices);
        for (i, &v) in lay.line.iter().enumerate() {
            if i > 0 {
                lines[0].push_str(bond(&diagram.cartan, lay.line[i - 1], v, g));
            }
            lines[0].push(vertex(v));
        }
        if let Some((p, at)) = lay.pendant {
            let c = col + at * unit;
            for (line, ch) in [(1, g.vertical), (2, vertex(p))] {
                let len = lines[line].chars().count();
                lines[line].extend(std::iter::repeat(' ').take(c - len));
                lines[line].push(ch);
            }
        }
        col += (lay.line.len() - 1) * unit + 1;
    }
    let used = if lines[2].is_empty() { 1 } else { 3 };
    lines[..used].join("\n")
}

/// Renders with the Unicode glyphs unless `INNERFORM_ASCII` is set to a
/// non-empty value other than `0`.
pub fn render_ascii(diagram: &SatakeDiagram) -> String {
    let ascii = std::env::var("INNERFORM_ASCII").map(|v| !v.is_empty() && v != "0").unwrap_or(false);
    render(diagram, if ascii { RenderStyle::Ascii } else { RenderStyle::Unicode })
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> SatakeError {
    SatakeError::Parse {
        line: line + 1,
        column: column + 1,
        message: message.into(),
    }
}

struct Parsed {
    /// (column, black) per vertex on the line
    line: Vec<(usize, bool)>,
    /// (kind index into `bonds`) between consecutive line vertices
    bonds: Vec<usize>,
    pendant: Option<(bool, usize)>,
}

/// Inverse of [`render`]; accepts either glyph set. Vertices are numbered
/// component by component in Bourbaki order.
pub fn parse_diagram(text: &str) -> Result<SatakeDiagram, SatakeError> {
    let rows: Vec<Vec<char>> = text.lines().map(|l| l.trim_end().chars().collect()).collect();
    if rows.iter().all(|r| r.is_empty()) {
        return SatakeDiagram::new(Vec::new(), &[]);
    }
    if rows.len() != 1 && rows.len() != 3 {
        return Err(perr(rows.len() - 1, 0, "expected one or three lines"));
    }
    let first = rows[0].iter().find(|c| !c.is_whitespace()).copied().unwrap_or(' ');
    let style = if first == UNICODE.black || first == UNICODE.white {
        RenderStyle::Unicode
    } else {
        RenderStyle::Ascii
    };
    let g = style.glyphs();
    let bw = style.bond_width();
    let line = &rows[0];
    let mut comps: Vec<Parsed> = Vec::new();
    let mut i = 0;
    while i < line.len() {
        if line[i] == ' ' {
            i += 1;
            continue;
        }
        let mut p = Parsed {
            line: Vec::new(),
            bonds: Vec::new(),
            pendant: None,
        };
        loop {
            let c = line[i];
            if c != g.black && c != g.white {
                return Err(perr(0, i, format!("expected a vertex, found `{c}`")));
            }
            p.line.push((i, c == g.black));
            i += 1;
            if i >= line.len() || line[i] == ' ' {
                break;
            }
            let tok: String = line[i..(i + bw).min(line.len())].iter().collect();
            let kind = g
                .bonds
                .iter()
                .position(|b| *b == tok)
                .ok_or_else(|| perr(0, i, format!("unknown bond `{tok}`")))?;
            p.bonds.push(kind);
            i += bw;
            if i >= line.len() {
                return Err(perr(0, i, "bond without a vertex"));
            }
        }
        comps.push(p);
    }
    if rows.len() == 3 {
        let width = rows[1].len().max(rows[2].len());
        for col in 0..width {
            let bar = rows[1].get(col).copied().unwrap_or(' ');
            let v = rows[2].get(col).copied().unwrap_or(' ');
            let (is_bar, is_vertex) = (bar == g.vertical, v == g.black || v == g.white);
            if !is_bar && bar != ' ' {
                return Err(perr(1, col, format!("unexpected `{bar}`")));
            }
            if !is_vertex && v != ' ' {
                return Err(perr(2, col, format!("unexpected `{v}`")));
            }
            match (is_bar, is_vertex) {
                (false, false) => continue,
                (true, false) => return Err(perr(2, col, "dangling bond")),
                (false, true) => return Err(perr(1, col, "vertex without a bond")),
                (true, true) => {}
            }
            let (ci, pos) = comps
                .iter()
                .enumerate()
                .find_map(|(ci, p)| p.line.iter().position(|&(c, _)| c == col).map(|pos| (ci, pos)))
                .ok_or_else(|| perr(1, col, "bond does not meet a vertex"))?;
            if comps[ci].pendant.is_some() {
                return Err(perr(2, col, "second branch on one component"));
            }
            comps[ci].pendant = Some((v == g.black, pos));
        }
    }
    let total: usize = comps.iter().map(|p| p.line.len() + usize::from(p.pendant.is_some())).sum();
    let mut cartan = vec![vec![0i64; total]; total];
    let mut black = Vec::new();
    let mut base = 0;
    for p in &comps {
        let len = p.line.len();
        // global index of each line vertex and of the pendant
        let (idx, pend): (Vec<usize>, Option<usize>) = match p.pendant {
            None => ((0..len).map(|k| base + k).collect(), None),
            Some((_, at)) if len >= 3 && at == len - 2 => ((0..len).map(|k| base + k).collect(), Some(base + len)),
            Some((_, 2)) if len >= 5 => (
                std::iter::once(base).chain((1..len).map(|k| base + k + 1)).collect(),
                Some(base + 1),
            ),
            Some((_, at)) => return Err(perr(1, p.line[at].0, "unsupported branch position")),
        };
        for k in 0..len {
            cartan[idx[k]][idx[k]] = 2;
            if p.line[k].1 {
                black.push(idx[k]);
            }
        }
        for (k, &kind) in p.bonds.iter().enumerate() {
            let (a, b) = (idx[k], idx[k + 1]);
            let (ab, ba) = match kind {
                1 => (2, 1),
                2 => (1, 2),
                3 => (3, 1),
                4 => (1, 3),
                _ => (1, 1),
            };
            cartan[a][b] = -ab;
            cartan[b][a] = -ba;
        }
        if let (Some(v), Some((is_black, at))) = (pend, p.pendant) {
            cartan[v][v] = 2;
            cartan[v][idx[at]] = -1;
            cartan[idx[at]][v] = -1;
            if is_black {
                black.push(v);
            }
        }
        base += len + usize::from(pend.is_some());
    }
    check_cartan(&cartan).map_err(|e| perr(0, 0, e.to_string()))?;
    classify_cartan(&cartan).map_err(|e| perr(0, 0, e.to_string()))?;
    SatakeDiagram::new(cartan, &black)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::cartan_matrix;

    fn diagram(series: Series, rank: usize, black: &[usize]) -> SatakeDiagram {
        SatakeDiagram::new(cartan_matrix(series, rank), black).unwrap()
    }

    #[test]
    fn line_types() {
        assert_eq!(render(&diagram(Series::A, 3, &[]), RenderStyle::Unicode), "○─○─○");
        assert_eq!(render(&diagram(Series::B, 4, &[3]), RenderStyle::Unicode), "○─○─○⇒●");
        assert_eq!(render(&diagram(Series::C, 4, &[0, 2]), RenderStyle::Unicode), "●─○─●⇐○");
        assert_eq!(render(&diagram(Series::G, 2, &[]), RenderStyle::Unicode), "○⇚○");
        assert_eq!(render(&diagram(Series::F, 4, &[]), RenderStyle::Unicode), "○─○⇒○─○");
        assert_eq!(render(&diagram(Series::B, 3, &[2]), RenderStyle::Ascii), "o--o=>*");
    }

    #[test]
    fn branched_types() {
        let e6 = diagram(Series::E, 6, &[0, 2, 4, 5]);
        assert_eq!(render(&e6, RenderStyle::Unicode), "●─●─○─●─●\n    │\n    ○");
        let d5 = diagram(Series::D, 5, &[3, 4]);
        assert_eq!(render(&d5, RenderStyle::Unicode), "○─○─○─●\n    │\n    ●");
        assert_eq!(render(&d5, RenderStyle::Ascii), "o--o--o--*\n      |\n      *");
    }

    #[test]
    fn round_trips() {
        for (s, r) in [(Series::E, 7), (Series::E, 8), (Series::D, 4), (Series::C, 2), (Series::A, 1)] {
            let d = diagram(s, r, &[0, r - 1]);
            for style in [RenderStyle::Unicode, RenderStyle::Ascii] {
                assert_eq!(parse_diagram(&render(&d, style)).unwrap(), d, "{s}{r}");
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_diagram("○─x"), Err(SatakeError::Parse { column: 3, .. })));
        assert!(matches!(parse_diagram("○~○"), Err(SatakeError::Parse { column: 2, .. })));
        // two double bonds on a path: not of finite type
        assert!(parse_diagram("○⇒○⇐○").is_err());
        assert!(parse_diagram("○─○\n  │").is_err());
    }
}
