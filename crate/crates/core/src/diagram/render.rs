use std::fmt::Write as _;
use std::str::FromStr;

use super::CupDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ascii" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

pub fn render(d: &CupDiagram, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => ascii(d),
        RenderFormat::Svg => svg(d),
    }
}

/// Cups hang from the vertex line, a cup of half-span h bottoming out on
/// row h; rays run down every row. Markers are drawn as `■`.
fn ascii(d: &CupDiagram) -> String {
    let depth = d.cups.iter().map(|c| c.half_span()).max().unwrap_or(0);
    let rows = depth + usize::from(!d.rays.is_empty());
    let width = 2 * d.n_vertices - 1;
    let mut grid = vec![vec![' '; width]; rows];
    let col = |v: usize| 2 * (v - 1);
    for c in &d.cups {
        let h = c.half_span();
        let (l, r) = (col(c.left), col(c.right));
        for row in grid.iter_mut().take(h - 1) {
            row[l] = '|';
            row[r] = '|';
        }
        let bottom = &mut grid[h - 1];
        bottom[l] = '(';
        bottom[r] = ')';
        for x in bottom.iter_mut().take(r).skip(l + 1) {
            *x = '_';
        }
        if c.marked {
            bottom[(l + r) / 2] = '■';
        }
    }
    for ray in &d.rays {
        let x = col(ray.vertex);
        for row in grid.iter_mut() {
            row[x] = '|';
        }
        if ray.marked {
            grid[rows - 1][x] = '■';
        }
    }
    let mut out = String::new();
    for row in grid {
        out.push_str(row.into_iter().collect::<String>().trim_end());
        out.push('\n');
    }
    out
}

fn svg(d: &CupDiagram) -> String {
    const STEP: usize = 40;
    const TOP: usize = 20;
    const DROP: usize = 24;
    let depth = d.cups.iter().map(|c| c.half_span()).max().unwrap_or(0);
    let height = TOP + DROP * (depth + 1) + 20;
    let width = STEP * (d.n_vertices + 1);
    let x = |v: usize| STEP * v;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<line x1="0" y1="{TOP}" x2="{width}" y2="{TOP}" stroke="gray" stroke-dasharray="4 4"/>"#);
    for c in &d.cups {
        let (x1, x2) = (x(c.left), x(c.right));
        let dy = TOP + DROP * c.half_span() * 4 / 3;
        let _ = writeln!(
            s,
            r#"<path d="M {x1} {TOP} C {x1} {dy} {x2} {dy} {x2} {TOP}" fill="none" stroke="black" stroke-width="2"/>"#
        );
        if c.marked {
            let mx = (x1 + x2) / 2 - 5;
            let my = TOP + DROP * c.half_span() - 5;
            let _ = writeln!(s, r#"<rect x="{mx}" y="{my}" width="10" height="10" fill="black"/>"#);
        }
    }
    for r in &d.rays {
        let xr = x(r.vertex);
        let _ = writeln!(
            s,
            r#"<line x1="{xr}" y1="{TOP}" x2="{xr}" y2="{height}" stroke="black" stroke-width="2"/>"#
        );
        if r.marked {
            let my = (TOP + height) / 2 - 5;
            let _ = writeln!(s, r#"<rect x="{}" y="{my}" width="10" height="10" fill="black"/>"#, xr - 5);
        }
    }
    for v in 1..=d.n_vertices {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{TOP}" r="3" fill="black"/>"#, x(v));
    }
    s.push_str("</svg>\n");
    s
}
