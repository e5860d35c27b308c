//! Deterministic SVG chart emitter: stem horizontal, filtration vertical,
//! tau-towers collapsed to markers. A black dot is an `M2`-free class, a
//! red dot a tau-torsion class; vertical segments are `h0`-multiplications,
//! diagonals `h1`.

use kqcoop_core::ext::ExtChart;
use std::collections::BTreeMap;
use std::fmt::Write;

const CELL: i32 = 24;
const RADIUS: i32 = 3;

/// Per `(stem, s)`: number of free (tau-tower) markers and torsion markers,
/// collapsed over the weight direction.
fn collapse(chart: &ExtChart) -> BTreeMap<(i32, i32), (usize, usize)> {
    // group dims per (s, t) over w
    let mut columns: BTreeMap<(i32, i32), Vec<(i32, usize)>> = BTreeMap::new();
    for (&(s, t, w), &d) in &chart.dims {
        if !chart.window.contains_reported(s, t, w) || d == 0 {
            continue;
        }
        columns.entry((s, t)).or_default().push((w, d));
    }
    let mut out = BTreeMap::new();
    for ((s, t), col) in columns {
        let floor = chart.window.w_min;
        let top = col.iter().map(|&(w, _)| w).max().unwrap();
        let dim_at = |w: i32| col.iter().find(|&&(x, _)| x == w).map(|&(_, d)| d).unwrap_or(0);
        // markers = weight levels where a summand tops out; free summands
        // are the ones persisting down to the window floor
        let stable = |w: i32| -> usize { (floor..=w).map(dim_at).min().unwrap_or(0) };
        let mut free = 0;
        let mut torsion = 0;
        for w in floor..=top {
            let tops_all = dim_at(w).saturating_sub(dim_at(w + 1));
            let tops_free = stable(w).saturating_sub(stable(w + 1));
            free += tops_free;
            torsion += tops_all.saturating_sub(tops_free);
        }
        out.insert((t - s, s), (free, torsion));
    }
    out
}

pub fn chart_svg(chart: &ExtChart) -> String {
    let markers = collapse(chart);
    let stem_max = chart.window.t_max;
    let s_max = chart.window.s_max;
    let width = (stem_max + 2) * CELL;
    let height = (s_max + 2) * CELL;
    let x_of = |stem: i32| CELL + stem * CELL;
    let y_of = |s: i32| height - CELL - s * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );
    // light grid
    for stem in 0..=stem_max {
        let x = x_of(stem);
        let _ = writeln!(
            out,
            r##"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#eeeeee"/>"##,
            y_of(s_max),
            y_of(0)
        );
    }
    for s in 0..=s_max {
        let y = y_of(s);
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#eeeeee"/>"##,
            x_of(0),
            x_of(stem_max)
        );
    }
    // structure lines from the recorded h0/h1 actions: connect cell centers
    for (action, color, (ds, dt)) in [("h0", "#888888", (1, 1)), ("h1", "#444444", (1, 2))] {
        if let Some(pairs) = chart.actions.get(action) {
            let mut seen = std::collections::BTreeSet::new();
            for &(from, to) in pairs {
                let f = &chart.generators[from];
                let t = &chart.generators[to];
                debug_assert_eq!((t.s - f.s, t.t - f.t), (ds, dt));
                let key = (f.t - f.s, f.s, t.t - t.s, t.s);
                if !seen.insert(key) {
                    continue;
                }
                if f.s > s_max || t.s > s_max || f.t - f.s > stem_max {
                    continue;
                }
                let _ = writeln!(
                    out,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}"/>"#,
                    x_of(f.t - f.s),
                    y_of(f.s),
                    x_of(t.t - t.s),
                    y_of(t.s)
                );
            }
        }
    }
    // dots, offset horizontally when a spot carries several markers
    for (&(stem, s), &(free, torsion)) in &markers {
        if stem > stem_max || s > s_max || stem < 0 {
            continue;
        }
        let total = free + torsion;
        let x0 = x_of(stem);
        let y = y_of(s);
        for k in 0..total {
            let dx = (k as i32 - (total as i32 - 1) / 2) * (2 * RADIUS + 1);
            let fill = if k < free { "black" } else { "red" };
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{y}" r="{RADIUS}" fill="{fill}"/>"#,
                x0 + dx
            );
        }
    }
    // axis labels every 4 stems
    for stem in (0..=stem_max).step_by(4) {
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" font-size="9" text-anchor="middle" fill="#666666">{stem}</text>"##,
            x_of(stem),
            height - 6
        );
    }
    for s in (0..=s_max).step_by(2) {
        let _ = writeln!(
            out,
            r##"<text x="6" y="{}" font-size="9" fill="#666666">{s}</text>"##,
            y_of(s) + 3
        );
    }
    out.push_str("</svg>\n");
    out
}
