use std::collections::BTreeMap;

use crate::chess::board::{Board, Content, Pos};

fn cells(board: &Board) -> BTreeMap<Pos, String> {
    let mut out: BTreeMap<Pos, String> = BTreeMap::new();
    for e in &board.entries {
        let s = match e.content {
            Content::Opaque { .. } => "x".to_string(),
            c => c.to_string(),
        };
        out.entry(e.pos())
            .and_modify(|v| *v = format!("{v}/{s}"))
            .or_insert(s);
    }
    out
}

fn bounds(cells: &BTreeMap<Pos, String>) -> Option<(i64, i64, i64, i64)> {
    let xs = cells.keys().map(|p| p.0).chain([0]);
    let ys = cells.keys().map(|p| p.1).chain([0]);
    if cells.is_empty() {
        return None;
    }
    let (x0, x1) = xs.fold((i64::MAX, i64::MIN), |(a, b), x| (a.min(x), b.max(x)));
    let (y0, y1) = ys.fold((i64::MAX, i64::MIN), |(a, b), y| (a.min(y), b.max(y)));
    Some((x0, x1, y0, y1))
}

/// Plain-text grid, rows top to bottom by increasing `y`. Opaque boxes
/// print as `x`, empty cells as `.`, the origin is bracketed.
pub fn render_ascii(board: &Board) -> String {
    let cells = cells(board);
    let Some((x0, x1, y0, y1)) = bounds(&cells) else {
        return String::new();
    };
    let label = |p: Pos| -> String {
        let c = cells.get(&p).cloned();
        if p == (0, 0) {
            format!("[{}]", c.unwrap_or_else(|| "·".into()))
        } else {
            c.unwrap_or_else(|| ".".into())
        }
    };
    let width = (y0..=y1)
        .flat_map(|y| (x0..=x1).map(move |x| (x, y)))
        .map(|p| label(p).chars().count())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for y in y0..=y1 {
        let row: Vec<String> = (x0..=x1)
            .map(|x| format!("{:>width$}", label((x, y))))
            .collect();
        out.push_str(row.join(" ").trim_end());
        out.push('\n');
    }
    out
}

/// `ytableau` source with the origin shaded and `\none` for empty cells.
pub fn render_latex(board: &Board) -> String {
    let cells = cells(board);
    let mut out = String::from("\\begin{ytableau}\n");
    if let Some((x0, x1, y0, y1)) = bounds(&cells) {
        let mut rows = Vec::new();
        for y in y0..=y1 {
            let row: Vec<String> = (x0..=x1)
                .map(|x| {
                    let c = cells.get(&(x, y)).map(|s| {
                        if s == "x" {
                            "\\times".to_string()
                        } else {
                            s.clone()
                        }
                    });
                    match ((x, y) == (0, 0), c) {
                        (true, Some(s)) => format!("*(gray) {s}"),
                        (true, None) => "*(gray)".to_string(),
                        (false, Some(s)) => s,
                        (false, None) => "\\none".to_string(),
                    }
                })
                .collect();
            rows.push(format!("  {}", row.join(" & ")));
        }
        out.push_str(&rows.join(" \\\\\n"));
        out.push('\n');
    }
    out.push_str("\\end{ytableau}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chess::board::{Entry, Mode};

    #[test]
    fn empty_board() {
        let b = Board::new(2, 0, Mode::Fibration, vec![]).unwrap();
        assert_eq!(render_ascii(&b), "");
        assert_eq!(render_latex(&b), "\\begin{ytableau}\n\\end{ytableau}\n");
    }

    #[test]
    fn small_grid() {
        let b = Board::new(
            2,
            0,
            Mode::Fibration,
            vec![
                Entry::new(0, 1, Content::sym(1)),
                Entry::new(1, 1, Content::sym(0)),
                Entry::new(-1, 1, Content::Opaque { copies: 2 }),
            ],
        )
        .unwrap();
        assert_eq!(render_ascii(&b), "  . [·]   .\n  x   1   0\n");
        assert!(render_latex(&b).contains("\\none & *(gray) & \\none \\\\\n  \\times & 1 & 0"));
    }
}
