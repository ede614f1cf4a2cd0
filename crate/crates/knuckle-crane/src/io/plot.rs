//! Static SVG line charts for trajectory data.
//!
//! Minimal hand-rolled renderer: stacked panels, shared x axis, nice-number
//! ticks, downsampled polylines. The output is a pure function of the data
//! passed in (no timestamps or environment), so identical runs give
//! identical plot files.

/// One curve in a panel.
pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub dashed: bool,
    pub points: Vec<(f64, f64)>,
}

/// One stacked panel with its own y axis.
pub struct Panel {
    pub title: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

pub const COLOR_PRIMARY: &str = "#1f77b4";
pub const COLOR_REFERENCE: &str = "#d62728";
pub const COLOR_SECONDARY: &str = "#2ca02c";
pub const COLOR_EXTRA: &str = "#ff7f0e";

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 28.0;
const MARGIN_BOTTOM: f64 = 40.0;
const MAX_POINTS: usize = 1200;

/// Render stacked panels into an SVG document.
pub fn render(
    title: &str,
    x_label: &str,
    panels: &[Panel],
    width: u32,
    panel_height: u32,
) -> String {
    let w = width as f64;
    let ph = panel_height as f64;
    let total_h = MARGIN_TOP + panels.len() as f64 * ph + MARGIN_BOTTOM;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{h}\" \
         viewBox=\"0 0 {width} {h}\" font-family=\"sans-serif\">\n",
        h = total_h.ceil() as u64
    ));
    svg.push_str(&format!(
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        w / 2.0,
        escape(title)
    ));

    for (idx, panel) in panels.iter().enumerate() {
        let top = MARGIN_TOP + idx as f64 * ph;
        let plot_x0 = MARGIN_LEFT;
        let plot_x1 = w - MARGIN_RIGHT;
        let plot_y0 = top + 22.0;
        let plot_y1 = top + ph - 18.0;

        let (xmin, xmax) = data_range(panel, |p| p.0);
        let (ymin, ymax) = pad_range(data_range(panel, |p| p.1));

        let sx = |x: f64| plot_x0 + (x - xmin) / (xmax - xmin).max(1e-300) * (plot_x1 - plot_x0);
        let sy = |y: f64| plot_y1 - (y - ymin) / (ymax - ymin).max(1e-300) * (plot_y1 - plot_y0);

        svg.push_str(&format!(
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{:.1}\" height=\"{:.1}\" \
             fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n",
            plot_x0,
            plot_y0,
            plot_x1 - plot_x0,
            plot_y1 - plot_y0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\">{}</text>\n",
            plot_x0,
            plot_y0 - 7.0,
            escape(&panel.title)
        ));
        svg.push_str(&format!(
            "<text x=\"14\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\" \
             transform=\"rotate(-90 14 {:.1})\">{}</text>\n",
            (plot_y0 + plot_y1) / 2.0,
            (plot_y0 + plot_y1) / 2.0,
            escape(&panel.y_label)
        ));

        for tick in nice_ticks(ymin, ymax, 5) {
            let y = sy(tick);
            svg.push_str(&format!(
                "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" \
                 stroke=\"#ddd\" stroke-width=\"0.5\"/>\n\
                 <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"end\">{}</text>\n",
                plot_x0,
                plot_x1,
                plot_x0 - 4.0,
                y + 3.0,
                tick_label(tick)
            ));
        }
        for tick in nice_ticks(xmin, xmax, 8) {
            let x = sx(tick);
            svg.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" \
                 stroke=\"#ddd\" stroke-width=\"0.5\"/>\n",
                plot_y0, plot_y1
            ));
            if idx + 1 == panels.len() {
                svg.push_str(&format!(
                    "<text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"10\" \
                     text-anchor=\"middle\">{}</text>\n",
                    plot_y1 + 14.0,
                    tick_label(tick)
                ));
            }
        }

        for s in &panel.series {
            let stride = s.points.len().div_ceil(MAX_POINTS).max(1);
            let mut path = String::new();
            for (i, &(x, y)) in s.points.iter().step_by(stride).enumerate() {
                path.push_str(if i == 0 { "M" } else { "L" });
                path.push_str(&format!("{:.2} {:.2}", sx(x), sy(y)));
            }
            // always include the final sample
            if let Some(&(x, y)) = s.points.last() {
                path.push_str(&format!("L{:.2} {:.2}", sx(x), sy(y)));
            }
            let dash = if s.dashed {
                " stroke-dasharray=\"6 4\""
            } else {
                ""
            };
            svg.push_str(&format!(
                "<path d=\"{path}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.3\"{dash}/>\n",
                s.color
            ));
        }

        // legend, stacked in the top-right corner of the panel
        let lx = plot_x1 - 120.0;
        for (i, s) in panel.series.iter().enumerate() {
            let ly = plot_y0 + 12.0 + i as f64 * 12.0;
            svg.push_str(&format!(
                "<line x1=\"{lx:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{}\" \
                 stroke-width=\"1.5\"{}/>\n\
                 <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\">{}</text>\n",
                ly - 3.0,
                lx + 18.0,
                ly - 3.0,
                s.color,
                if s.dashed {
                    " stroke-dasharray=\"6 4\""
                } else {
                    ""
                },
                lx + 22.0,
                ly,
                escape(&s.label)
            ));
        }
    }

    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
        (MARGIN_LEFT + w - MARGIN_RIGHT) / 2.0,
        total_h - 8.0,
        escape(x_label)
    ));
    svg.push_str("</svg>\n");
    svg
}

fn data_range(panel: &Panel, f: impl Fn(&(f64, f64)) -> f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in &panel.series {
        for p in &s.points {
            let v = f(p);
            if v.is_finite() {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn pad_range((lo, hi): (f64, f64)) -> (f64, f64) {
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

/// Round ticks on the 1-2-5 ladder covering [lo, hi].
fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = hi - lo;
    if span <= 0.0 || !span.is_finite() {
        return vec![lo];
    }
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    } * mag;
    let first = (lo / step).ceil() * step;
    let mut ticks = Vec::new();
    let mut t = first;
    while t <= hi + 1e-9 * step {
        // snap tiny residue to zero for clean labels
        ticks.push(if t.abs() < 1e-12 * step { 0.0 } else { t });
        t += step;
    }
    ticks
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if !(1e-3..1e4).contains(&a) {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo_panel() -> Panel {
        Panel {
            title: "demo".into(),
            y_label: "y".into(),
            series: vec![Series {
                label: "curve".into(),
                color: COLOR_PRIMARY,
                dashed: false,
                points: (0..5000)
                    .map(|i| (i as f64 * 0.01, (i as f64 * 0.01).sin()))
                    .collect(),
            }],
        }
    }

    #[test]
    fn output_is_deterministic_and_downsampled() {
        let a = render("t", "time [s]", &[demo_panel()], 800, 220);
        let b = render("t", "time [s]", &[demo_panel()], 800, 220);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        // 5000 points downsampled: path has bounded length
        let path_line = a.lines().find(|l| l.starts_with("<path")).unwrap();
        assert!(path_line.matches('L').count() <= MAX_POINTS + 2);
    }

    #[test]
    fn ticks_are_on_the_125_ladder() {
        let t = nice_ticks(0.0, 150.0, 8);
        assert!(t.contains(&0.0) && t.contains(&20.0) && t.contains(&140.0));
        let t2 = nice_ticks(-1.04, 1.04, 5);
        assert!(t2.contains(&0.0));
    }
}
