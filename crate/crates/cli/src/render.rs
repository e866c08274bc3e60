//! Arc diagrams: vertices on a line, one semicircle above it per arc.

use std::fmt::Write;

use ncwalk_core::{Arc, SetPartition};

/// Stacks arcs into levels: an arc sits above every arc nested inside it and
/// never shares a level with an arc whose span touches its own.
fn levels(arcs: &[Arc]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by_key(|&k| (arcs[k].right - arcs[k].left, arcs[k].left));
    let mut level = vec![0; arcs.len()];
    for (done, &k) in order.iter().enumerate() {
        let a = arcs[k];
        let placed = &order[..done];
        let mut candidate = 1 + placed
            .iter()
            .filter(|&&m| a.left < arcs[m].left && arcs[m].right < a.right)
            .map(|&m| level[m])
            .max()
            .unwrap_or(0);
        while placed
            .iter()
            .any(|&m| level[m] == candidate && arcs[m].left <= a.right && a.left <= arcs[m].right)
        {
            candidate += 1;
        }
        level[k] = candidate;
    }
    level
}

pub fn ascii(p: &SetPartition) -> String {
    let n = p.n();
    let arcs = p.canonical_arcs();
    let width = n.to_string().len();
    let col = |v: usize| (v - 1) * (width + 1) + width - 1;
    let levels = levels(&arcs);
    let height = levels.iter().copied().max().unwrap_or(0);
    let columns = col(n) + 1;
    let mut grid = vec![vec![' '; columns]; height];
    let row = |level: usize| height - level;
    for (a, &lv) in arcs.iter().zip(&levels) {
        let r = row(lv);
        grid[r][col(a.left)..=col(a.right)].fill('-');
    }
    for (a, &lv) in arcs.iter().zip(&levels) {
        for line in &mut grid[row(lv) + 1..] {
            for c in [col(a.left), col(a.right)] {
                if line[c] != '+' {
                    line[c] = '|';
                }
            }
        }
    }
    for (a, &lv) in arcs.iter().zip(&levels) {
        grid[row(lv)][col(a.left)] = '+';
        grid[row(lv)][col(a.right)] = '+';
    }
    let mut out = String::new();
    for line in grid {
        let line: String = line.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let labels: Vec<String> = (1..=n).map(|v| format!("{v:>width$}")).collect();
    out.push_str(&labels.join(" "));
    out.push('\n');
    out
}

const SPACING: usize = 40;
const MARGIN: usize = 20;

pub fn svg(p: &SetPartition) -> String {
    let n = p.n();
    let arcs = p.canonical_arcs();
    let x = |v: usize| MARGIN + (v - 1) * SPACING;
    let tallest = arcs.iter().map(|a| (a.right - a.left) * SPACING / 2).max().unwrap_or(0);
    let baseline = MARGIN + tallest;
    let width = x(n) + MARGIN;
    let height = baseline + 30;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "  <title>{p}</title>");
    let _ = writeln!(
        out,
        r#"  <line x1="{}" y1="{baseline}" x2="{}" y2="{baseline}" stroke="silver"/>"#,
        x(1),
        x(n)
    );
    for a in &arcs {
        let r = (a.right - a.left) * SPACING / 2;
        let _ = writeln!(
            out,
            r#"  <path d="M {} {baseline} A {r} {r} 0 0 1 {} {baseline}" fill="none" stroke="black"/>"#,
            x(a.left),
            x(a.right)
        );
    }
    for v in 1..=n {
        let _ = writeln!(out, r#"  <circle cx="{}" cy="{baseline}" r="3"/>"#, x(v));
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="monospace" font-size="12" text-anchor="middle">{v}</text>"#,
            x(v),
            baseline + 18
        );
    }
    out.push_str("</svg>\n");
    out
}
