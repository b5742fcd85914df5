//! SVG and ASCII drawings of a fish at its tilted plane coordinates.
//!
//! A cell at tilted position `(x, y)` is the diamond with vertices
//! `(x±1, y)` and `(x, y±1)`, `y` pointing up.

use std::collections::BTreeMap;
use std::fmt::Write;

use finfish_core::surface::{FishComplex, SideKind, StructureError};

const SCALE: i64 = 20;
const MARGIN: i64 = 10;

/// Endpoints of a side of the cell centred at `(x, y)`, in boundary order.
fn side_segment((x, y): (i64, i64), side: SideKind) -> [(i64, i64); 2] {
    let (l, t, r, b) = ((x - 1, y), (x, y + 1), (x + 1, y), (x, y - 1));
    match side {
        SideKind::UL => [l, t],
        SideKind::UR => [t, r],
        SideKind::LR => [r, b],
        SideKind::LL => [b, l],
    }
}

struct Layout {
    /// Occupied tilted positions with their multiplicity.
    cells: BTreeMap<(i64, i64), usize>,
    centres: Vec<(i64, i64)>,
    fin: Vec<[(i64, i64); 2]>,
    word: String,
}

fn layout(c: &FishComplex) -> Result<Layout, StructureError> {
    let placement = c.project()?;
    let centres: Vec<_> = (0..c.cell_count()).map(|i| placement.tilted(i)).collect();
    let mut cells = BTreeMap::new();
    for &p in &centres {
        *cells.entry(p).or_insert(0) += 1;
    }
    let (fin_sides, word) = c.fin()?;
    let fin = fin_sides.iter().map(|s| side_segment(centres[s.cell], s.side)).collect();
    let word = word.letters().iter().map(|l| format!("{l:?}")).collect();
    Ok(Layout { cells, centres, fin, word })
}

pub fn svg(c: &FishComplex) -> Result<String, StructureError> {
    let lay = layout(c)?;
    let xs = lay.centres.iter().map(|p| p.0);
    let ys = lay.centres.iter().map(|p| p.1);
    let (min_x, max_x) = (xs.clone().min().unwrap_or(0) - 1, xs.max().unwrap_or(0) + 1);
    let (min_y, max_y) = (ys.clone().min().unwrap_or(0) - 1, ys.max().unwrap_or(0) + 1);
    let px = |(x, y): (i64, i64)| (MARGIN + (x - min_x) * SCALE, MARGIN + (max_y - y) * SCALE);
    let (w, h) = (2 * MARGIN + (max_x - min_x) * SCALE, 2 * MARGIN + (max_y - min_y) * SCALE);

    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    for (&(x, y), &m) in &lay.cells {
        let pts: Vec<String> = [(x - 1, y), (x, y + 1), (x + 1, y), (x, y - 1)]
            .into_iter()
            .map(|p| {
                let (a, b) = px(p);
                format!("{a},{b}")
            })
            .collect();
        let fill = if m > 1 { "#f4c27a" } else { "#cfe3f5" };
        writeln!(
            out,
            r##"  <polygon class="cell" points="{}" fill="{fill}" stroke="#345" stroke-width="1"/>"##,
            pts.join(" ")
        )
        .unwrap();
    }
    for seg in &lay.fin {
        let (a, b) = (px(seg[0]), px(seg[1]));
        writeln!(
            out,
            r##"  <line class="fin" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c0392b" stroke-width="3"/>"##,
            a.0, a.1, b.0, b.1
        )
        .unwrap();
    }
    for (&p, &m) in lay.cells.iter().filter(|(_, &m)| m > 1) {
        let (cx, cy) = px(p);
        writeln!(
            out,
            r##"  <g class="badge"><circle cx="{cx}" cy="{cy}" r="7" fill="#fff" stroke="#345"/><text x="{cx}" y="{}" font-size="10" text-anchor="middle">{m}</text></g>"##,
            cy + 4
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// One character per occupied position: `o` for a single cell, the
/// multiplicity otherwise. Rows run from the highest `y` down.
pub fn ascii(c: &FishComplex) -> Result<String, StructureError> {
    let lay = layout(c)?;
    let xs = lay.cells.keys().map(|p| p.0);
    let ys = lay.cells.keys().map(|p| p.1);
    let (min_x, max_x) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
    let (min_y, max_y) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
    let mut out = String::new();
    for y in (min_y..=max_y).rev() {
        let row: String = (min_x..=max_x)
            .map(|x| match lay.cells.get(&(x, y)) {
                None => ' ',
                Some(1) => 'o',
                Some(&m) if m < 10 => char::from_digit(m as u32, 10).expect("digit"),
                Some(_) => '+',
            })
            .collect();
        out.push_str(row.trim_end());
        out.push('\n');
    }
    writeln!(out, "fin: {}", lay.word).unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell() {
        let c = FishComplex::single_cell();
        let s = svg(&c).unwrap();
        assert_eq!(s.matches("<polygon").count(), 1);
        assert_eq!(s.matches("class=\"fin\"").count(), 2);
        assert_eq!(ascii(&c).unwrap(), "o\nfin: LR\n");
    }
}
