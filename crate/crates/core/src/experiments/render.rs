use std::fmt::Write as _;

use super::HeatmapTable;
use crate::sim::Counts;

/// Glyphs from dark (fraction 0) to light (fraction 1).
pub const RAMP: [char; 9] = ['@', '%', '#', '*', '+', '=', '-', ':', '.'];

fn glyph(fraction: f64) -> char {
    let top = (RAMP.len() - 1) as f64;
    RAMP[(fraction.clamp(0.0, 1.0) * top).round() as usize]
}

/// Heatmap as text: densities on the y axis (highest at the top), message
/// lengths on the x axis, two glyphs per cell.
pub fn render_ascii(table: &HeatmapTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "secure fraction  ('{}' = 0 ... '{}' = 1)", RAMP[0], RAMP[RAMP.len() - 1]);
    let _ = writeln!(out, "density");
    for di in (0..table.densities.len()).rev() {
        let _ = write!(out, "{:>6.2} |", table.densities[di]);
        for row in &table.cells {
            let g = glyph(row[di]);
            out.push(g);
            out.push(g);
        }
        out.push('\n');
    }
    let width = table.lengths.len() * 2;
    let _ = writeln!(out, "       +{}", "-".repeat(width));

    let mut ticks = vec![' '; width];
    for (li, len) in table.lengths.iter().enumerate() {
        if li == 0 || len % 5 == 0 {
            let label = len.to_string();
            let start = li * 2;
            if start + label.len() <= width && ticks[start..start + label.len()].iter().all(|&c| c == ' ') {
                for (k, ch) in label.chars().enumerate() {
                    ticks[start + k] = ch;
                }
            }
        }
    }
    let _ = writeln!(out, "        {}", ticks.iter().collect::<String>().trim_end());
    let _ = writeln!(out, "        message length (bits)");
    out
}

/// Horizontal bar per outcome, scaled to `width` columns for the largest count.
pub fn render_histogram(counts: &Counts, width: usize) -> String {
    let max = counts.iter().map(|(_, n)| n).max().unwrap_or(0).max(1);
    let mut out = String::new();
    for (k, n) in counts.iter() {
        let bar = (n as f64 / max as f64 * width as f64).round() as usize;
        let _ = writeln!(out, "{k} | {} {n}", "#".repeat(bar));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(cells: Vec<Vec<f64>>, densities: Vec<f64>) -> HeatmapTable {
        HeatmapTable {
            lengths: (1..=cells.len()).collect(),
            key_too_short: vec![0; cells.len()],
            densities,
            cells,
        }
    }

    fn body(text: &str) -> Vec<String> {
        text.lines()
            .filter_map(|l| l.split_once('|').map(|(_, r)| r.to_owned()))
            .collect()
    }

    #[test]
    fn uniform_grids() {
        let light = render_ascii(&table(vec![vec![1.0; 3]; 4], vec![0.0, 0.5, 1.0]));
        assert!(body(&light).iter().all(|r| r.chars().all(|c| c == '.')));
        let dark = render_ascii(&table(vec![vec![0.0; 3]; 4], vec![0.0, 0.5, 1.0]));
        assert!(body(&dark).iter().all(|r| r.chars().all(|c| c == '@')));
        assert!(light.contains("message length") && light.contains("density"));
    }

    #[test]
    fn monotone_column_gives_monotone_glyphs() {
        let column = vec![1.0, 0.8, 0.6, 0.4, 0.2, 0.0];
        let densities = vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0];
        let text = render_ascii(&table(vec![column], densities));
        // rows print from density 1 down to 0, so lightness must increase
        let ranks: Vec<usize> = body(&text)
            .iter()
            .map(|r| RAMP.iter().position(|&g| g == r.chars().next().unwrap()).unwrap())
            .collect();
        assert_eq!(ranks.len(), 6);
        assert!(ranks.windows(2).all(|w| w[0] <= w[1]), "{ranks:?}");
        assert!(ranks[0] < ranks[5]);
    }

    #[test]
    fn histogram_bars() {
        let mut c = Counts::new(1);
        c.record_n("0", 10).unwrap();
        c.record_n("1", 5).unwrap();
        let h = render_histogram(&c, 10);
        assert!(h.contains("0 | ########## 10"));
        assert!(h.contains("1 | ##### 5"));
    }
}
