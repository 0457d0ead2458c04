//! Minimal SVG line plots, derived from the same curve data as the CSVs.
//! The CSVs remain the ground truth; these exist for quick visual checks.

use std::fmt::Write;

pub struct Series<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub points: &'a [(f64, f64)],
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;

/// Render a line plot. With `log_x`, the x axis is log10-scaled and points
/// with non-positive x are dropped.
pub fn render_line_plot(
    title: &str,
    x_label: &str,
    y_label: &str,
    log_x: bool,
    series: &[Series<'_>],
) -> String {
    let tx = |x: f64| if log_x { x.log10() } else { x };

    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for s in series {
        for &(x, y) in s.points {
            if log_x && x <= 0.0 {
                continue;
            }
            if x.is_finite() && y.is_finite() {
                xs.push(tx(x));
                ys.push(y);
            }
        }
    }
    let (x_min, x_max) = bounds(&xs);
    let (y_min, y_max) = bounds(&ys);

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let px = |x: f64| MARGIN_L + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| HEIGHT - MARGIN_B - (y - y_min) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    // Axes.
    let _ = writeln!(
        svg,
        r#"<path d="M {l} {t} L {l} {b} L {r} {b}" stroke="black" fill="none"/>"#,
        l = MARGIN_L,
        t = MARGIN_T,
        b = HEIGHT - MARGIN_B,
        r = WIDTH - MARGIN_R,
    );
    let x_fmt = |v: f64| {
        if log_x {
            fmt_short(10f64.powf(v))
        } else {
            fmt_short(v)
        }
    };
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
        MARGIN_L,
        HEIGHT - MARGIN_B + 16.0,
        x_fmt(x_min)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
        WIDTH - MARGIN_R,
        HEIGHT - MARGIN_B + 16.0,
        x_fmt(x_max)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
        MARGIN_L - 6.0,
        HEIGHT - MARGIN_B,
        fmt_short(y_min)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
        MARGIN_L - 6.0,
        MARGIN_T + 4.0,
        fmt_short(y_max)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        escape(y_label)
    );

    // Series polylines and legend.
    for (i, s) in series.iter().enumerate() {
        let mut path = String::new();
        for &(x, y) in s.points {
            if log_x && x <= 0.0 {
                continue;
            }
            if !(x.is_finite() && y.is_finite()) {
                continue;
            }
            let cmd = if path.is_empty() { 'M' } else { 'L' };
            let _ = write!(path, "{cmd} {:.2} {:.2} ", px(tx(x)), py(y));
        }
        let _ = writeln!(
            svg,
            r#"<path d="{}" stroke="{}" stroke-width="1.5" fill="none"/>"#,
            path.trim_end(),
            s.color
        );
        let ly = MARGIN_T + 14.0 + 16.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{x0}" y1="{ly}" x2="{x1}" y2="{ly}" stroke="{}" stroke-width="1.5"/>"#,
            s.color,
            x0 = WIDTH - MARGIN_R - 110.0,
            x1 = WIDTH - MARGIN_R - 90.0,
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11">{}</text>"#,
            WIDTH - MARGIN_R - 84.0,
            ly + 4.0,
            escape(s.label)
        );
    }

    svg.push_str("</svg>\n");
    svg
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        // Degenerate span: pad symmetrically.
        let pad = lo.abs().max(1.0) * 0.05;
        return (lo - pad, hi + pad);
    }
    (lo, hi)
}

/// Compact tick label: plain decimals in a sane range, scientific outside.
fn fmt_short(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-3..1e4).contains(&a) {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.2e}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
