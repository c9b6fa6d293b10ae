//! Box diagrams for the `A(α, β)` grid: `α` runs down, `β` runs right, and
//! a thick rule follows the `β = 0` column.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::hpd::GridState;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCell {
    /// Short annotation: a stage number, a marker, or empty.
    pub label: String,
    pub shaded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridDiagram {
    pub i: i64,
    pub ell: i64,
    /// `α` values, top to bottom.
    pub rows: Vec<i64>,
    /// `β` values, left to right.
    pub cols: Vec<i64>,
    /// `cells[r][c]` is the box `A(rows[r], cols[c])`.
    pub cells: Vec<Vec<GridCell>>,
    /// The thick rule sits right after this column, if it is drawn.
    pub divider_after: Option<i64>,
}

fn divider_for(cols: &[i64]) -> Option<i64> {
    // a rule at the right edge would only duplicate the border
    (cols.contains(&0) && cols.last() != Some(&0)).then_some(0)
}

impl GridDiagram {
    fn build(
        i: i64,
        ell: i64,
        rows: Vec<i64>,
        cols: Vec<i64>,
        cell: impl Fn(i64, i64) -> GridCell,
    ) -> Self {
        let cells = rows
            .iter()
            .map(|&a| cols.iter().map(|&b| cell(a, b)).collect())
            .collect();
        let divider_after = divider_for(&cols);
        Self {
            i,
            ell,
            rows,
            cols,
            cells,
            divider_after,
        }
    }

    /// The HPD II picture: rows `α ∈ [0, i-1]`, columns `β ∈ [0, ℓ-1]`, with
    /// the boxes of `⊥C_{H_L}` (`α >= 1`) shaded.
    pub fn hpd2(i: i64, ell: i64) -> Self {
        let cols = if i >= 2 {
            (0..ell).collect()
        } else {
            Vec::new()
        };
        Self::build(i, ell, (0..i.max(1)).collect(), cols, |a, _| GridCell {
            label: if a >= 1 { "#".into() } else { String::new() },
            shaded: a >= 1,
        })
    }

    /// The mutation walkthrough: each box `A(0,1)` is mutated past carries
    /// its stage number, skipped boxes carry `s`, and the start box `b`.
    pub fn walkthrough(state: &GridState) -> Self {
        let (i, ell) = (state.i, state.ell);
        let cols: Vec<i64> = if i >= 2 {
            ((2 - i).min(1)..ell.max(2)).collect()
        } else {
            Vec::new()
        };
        Self::build(i, ell, (0..i.max(1)).collect(), cols, |a, b| {
            if (a, b) == (0, 1) {
                return GridCell {
                    label: "b".into(),
                    shaded: false,
                };
            }
            for step in &state.script {
                if step.mutated_past.contains(&(a, b)) {
                    return GridCell {
                        label: step.stage.to_string(),
                        shaded: true,
                    };
                }
                if step.skipped.contains(&(a, b)) {
                    return GridCell {
                        label: "s".into(),
                        shaded: false,
                    };
                }
            }
            GridCell {
                label: String::new(),
                shaded: false,
            }
        })
    }

    pub fn render_ascii(&self) -> String {
        const W: usize = 4;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "grid i={} ell={} (alpha down, beta right)",
            self.i, self.ell
        );
        let sep = |b: i64| {
            if Some(b) == self.divider_after {
                "||"
            } else {
                "|"
            }
        };
        let mut header = format!("{:>6} |", "a\\b");
        for &b in &self.cols {
            let _ = write!(header, "{b:>W$} {}", sep(b));
        }
        out.push_str(header.trim_end());
        out.push('\n');
        for (r, &a) in self.rows.iter().enumerate() {
            let mut line = format!("{a:>6} |");
            for (c, &b) in self.cols.iter().enumerate() {
                let cell = &self.cells[r][c];
                let text = if cell.shaded {
                    format!("[{}]", cell.label)
                } else {
                    cell.label.clone()
                };
                let _ = write!(line, "{text:>W$} {}", sep(b));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn render_svg(&self) -> String {
        const S: i64 = 40;
        const PAD: i64 = 30;
        let width = PAD + S * self.cols.len() as i64 + 10;
        let height = PAD + S * self.rows.len() as i64 + 10;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="12">"#
        );
        for (c, &b) in self.cols.iter().enumerate() {
            let x = PAD + S * c as i64 + S / 2;
            let _ = writeln!(
                out,
                r#"  <text x="{x}" y="{}" text-anchor="middle">{b}</text>"#,
                PAD - 8
            );
        }
        for (r, &a) in self.rows.iter().enumerate() {
            let y = PAD + S * r as i64;
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" text-anchor="end">{a}</text>"#,
                PAD - 6,
                y + S / 2 + 4
            );
            for (c, cell) in self.cells[r].iter().enumerate() {
                let x = PAD + S * c as i64;
                let fill = if cell.shaded { "#bbbbbb" } else { "#ffffff" };
                let _ = writeln!(
                    out,
                    r#"  <rect x="{x}" y="{y}" width="{S}" height="{S}" fill="{fill}" stroke="black"/>"#
                );
                if !cell.label.is_empty() {
                    let _ = writeln!(
                        out,
                        r#"  <text x="{}" y="{}" text-anchor="middle">{}</text>"#,
                        x + S / 2,
                        y + S / 2 + 4,
                        cell.label
                    );
                }
            }
        }
        if let Some(pos) = self
            .divider_after
            .and_then(|d| self.cols.iter().position(|&b| b == d))
        {
            let x = PAD + S * (pos as i64 + 1);
            let _ = writeln!(
                out,
                r#"  <line x1="{x}" y1="{PAD}" x2="{x}" y2="{}" stroke="black" stroke-width="4"/>"#,
                PAD + S * self.rows.len() as i64
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpd::mutation_walkthrough;

    #[test]
    fn hpd2_layout() {
        let g = GridDiagram::hpd2(2, 4);
        assert_eq!((g.rows.len(), g.cols.len()), (2, 4));
        assert_eq!(g.divider_after, Some(0));
        let text = g.render_ascii();
        let header = text.lines().nth(1).unwrap();
        assert_eq!(header.matches("||").count(), 1);
        assert!(header.find("0 ||").unwrap() < header.find("1 |").unwrap());
    }

    #[test]
    fn degenerate_grid() {
        let g = GridDiagram::hpd2(1, 3);
        assert_eq!(g.rows, vec![0]);
        assert!(g.cols.is_empty());
        let text = g.render_ascii();
        assert!(!text.contains("||"));
        assert_eq!(text.lines().count(), 3);
        assert_eq!(text.lines().last().unwrap().trim(), "0 |");
    }

    #[test]
    fn walkthrough_stages() {
        let state = mutation_walkthrough(3, 3).unwrap();
        let g = GridDiagram::walkthrough(&state);
        assert_eq!(g.cols, vec![-1, 0, 1, 2]);
        let at = |a: i64, b: i64| {
            let r = g.rows.iter().position(|&x| x == a).unwrap();
            let c = g.cols.iter().position(|&x| x == b).unwrap();
            g.cells[r][c].label.clone()
        };
        assert_eq!(at(2, 0), "1");
        assert_eq!(at(1, 0), "2");
        assert_eq!(at(1, -1), "2");
        assert_eq!(at(2, 1), "s");
        assert_eq!(at(0, 1), "b");
    }

    #[test]
    fn svg_is_stable() {
        let g = GridDiagram::hpd2(3, 2);
        assert_eq!(g.render_svg(), g.clone().render_svg());
        assert!(g.render_svg().contains("stroke-width=\"4\""));
    }
}
