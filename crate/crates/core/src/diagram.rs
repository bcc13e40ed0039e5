//! Plain-text cirquent diagrams.
//!
//! Layout, top to bottom: a horizontal rule, the oformula row, one arc row per
//! ogroup, and a bullet row with one `*` per ogroup. In an arc row the
//! ogroup's leftmost member is marked `\`, its rightmost `/`, members in
//! between `|`, joined by `_`; a one-member ogroup is a single `|`. Each
//! bullet sits under the middle of its ogroup's span, nudged right when that
//! column is taken. Trailing spaces are trimmed.

use crate::cirquent::Cirquent;

const GAP: usize = 3;

pub fn render(c: &Cirquent) -> String {
    let texts: Vec<String> = c.pool.iter().map(|f| f.to_string()).collect();
    let mut anchors = Vec::with_capacity(texts.len());
    let mut formula_row = String::new();
    for t in &texts {
        if !formula_row.is_empty() {
            formula_row.push_str(&" ".repeat(GAP));
        }
        let start = formula_row.chars().count();
        anchors.push(start + (t.chars().count().saturating_sub(1)) / 2);
        formula_row.push_str(t);
    }
    let width = formula_row.chars().count();

    let mut arc_rows = Vec::with_capacity(c.groups.len());
    let mut bullets: Vec<usize> = Vec::with_capacity(c.groups.len());
    for g in &c.groups {
        let cols: Vec<usize> = g
            .iter()
            .filter_map(|i| anchors.get(i.wrapping_sub(1)).copied())
            .collect();
        let mut row = vec![' '; width.max(1)];
        let wanted = match (cols.first(), cols.last()) {
            (Some(&first), Some(&last)) if first == last => {
                row[first] = '|';
                first
            }
            (Some(&first), Some(&last)) => {
                for cell in &mut row[first..=last] {
                    *cell = '_';
                }
                for &col in &cols {
                    row[col] = '|';
                }
                row[first] = '\\';
                row[last] = '/';
                (first + last) / 2
            }
            _ => width.max(bullets.iter().map(|b| b + 2).max().unwrap_or(0)),
        };
        let mut at = wanted;
        while bullets.iter().any(|&b| b + 1 >= at && at + 1 >= b) {
            at += 1;
        }
        bullets.push(at);
        arc_rows.push(row.into_iter().collect::<String>());
    }

    let mut bullet_row = vec![' '; bullets.iter().map(|b| b + 1).max().unwrap_or(0)];
    for &b in &bullets {
        bullet_row[b] = '*';
    }
    let bullet_row: String = bullet_row.into_iter().collect();

    let mut lines = vec![formula_row];
    lines.extend(arc_rows);
    if !c.groups.is_empty() {
        lines.push(bullet_row);
    }
    let lines: Vec<String> = lines.iter().map(|l| l.trim_end().to_string()).collect();
    let rule_len = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0).max(3);

    let mut out = "-".repeat(rule_len);
    if !c.is_empty() {
        for l in lines {
            out.push('\n');
            out.push_str(&l);
        }
    }
    out
}
