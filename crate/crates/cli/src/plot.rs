use std::fmt::Write;

use crate::error::{CliError, CliResult};
use crate::files::fmt_f64;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;
const Y_MAX: f64 = 2.0;

/// Scatter of eigenvalue against 1-based index, with the gap between
/// indices `k` and `k + 1` shaded.
pub fn render_spectrum_svg(values: &[f64], k: usize) -> CliResult<String> {
    if values.is_empty() {
        return Err(CliError::data("cannot plot an empty spectrum"));
    }
    let m = values.len();
    let span = (m.max(2) - 1) as f64;
    let x = |i: usize| MARGIN + (i - 1) as f64 / span * (WIDTH - 2.0 * MARGIN);
    let y = |v: f64| HEIGHT - MARGIN - v.clamp(0.0, Y_MAX) / Y_MAX * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if (1..=m).contains(&k) {
        let to = (k + 1).min(m);
        let (x0, x1) = (x(k), x(to));
        let _ = writeln!(
            s,
            r##"<rect class="gap" data-from="{k}" data-to="{}" x="{x0:.3}" y="{MARGIN:.3}" width="{:.3}" height="{:.3}" fill="#f4a261" fill-opacity="0.35"/>"##,
            k + 1,
            (x1 - x0).max(2.0),
            HEIGHT - 2.0 * MARGIN
        );
    }
    let (bx, by) = (MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        s,
        r#"<path d="M{bx} {MARGIN} L{bx} {by} L{:.3} {by}" stroke="black" fill="none"/>"#,
        WIDTH - MARGIN
    );
    for tick in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="11" text-anchor="end">{tick:.1}</text>"#,
            bx - 6.0,
            y(tick) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="middle">index</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    for (i, &v) in values.iter().enumerate() {
        let idx = i + 1;
        let _ = writeln!(
            s,
            r##"<circle class="eig" data-index="{idx}" data-value="{}" cx="{:.3}" cy="{:.3}" r="3" fill="#264653"/>"##,
            fmt_f64(v),
            x(idx),
            y(v)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_an_error() {
        assert!(render_spectrum_svg(&[], 1).is_err());
    }

    #[test]
    fn one_circle_per_value() {
        let svg = render_spectrum_svg(&[0.0, 0.5, 1.5], 1).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains(r#"data-from="1" data-to="2""#));
    }
}
