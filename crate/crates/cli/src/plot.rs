//! Orthographic glyph plots of a field over one hemisphere.

use std::fmt::Write;

use unitvol::{FieldError, SphericalPoint, UnitField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Hemisphere {
    North,
    South,
}

#[derive(Debug, Clone, Copy)]
pub struct PlotOptions {
    pub hemisphere: Hemisphere,
    /// Glyphs per diameter.
    pub density: usize,
    /// Image width and height in pixels.
    pub size: f64,
}

/// One arrow: centre in disk coordinates and unit direction in the view plane.
#[derive(Debug, Clone, Copy)]
pub struct Glyph {
    pub x: f64,
    pub y: f64,
    pub dx: f64,
    pub dy: f64,
}

/// Samples the field at the cell centres of a `density × density` grid over the
/// unit disk, viewed from outside the sphere. The south view uses `(x, -y)` so
/// that counter-clockwise turning matches the outward orientation.
pub fn glyphs(field: &UnitField, opts: &PlotOptions) -> Result<Vec<Glyph>, FieldError> {
    let n = opts.density.max(2);
    let h = 2.0 / n as f64;
    let flip = match opts.hemisphere {
        Hemisphere::North => 1.0,
        Hemisphere::South => -1.0,
    };
    let mut out = Vec::new();
    for row in 0..n {
        for col in 0..n {
            let u = -1.0 + (col as f64 + 0.5) * h;
            let w = 1.0 - (row as f64 + 0.5) * h;
            let r = u.hypot(w);
            if r > 1.0 - 0.25 * h || r < 1e-9 {
                continue;
            }
            let (x, y) = (u, flip * w);
            let alpha = flip * r.acos();
            let Ok(p) = SphericalPoint::new(alpha, y.atan2(x)) else { continue };
            let (c, s) = match field.vector_components(&p) {
                Ok(cs) => cs,
                Err(FieldError::LatitudeOutsideGrid { .. }) => continue,
                Err(e) => return Err(e),
            };
            let (sa, ca) = (p.alpha().sin(), p.beta().cos());
            let sb = p.beta().sin();
            let vx = -c * sb - s * sa * ca;
            let vy = c * ca - s * sa * sb;
            let len = vx.hypot(vy);
            if len < 1e-9 {
                continue;
            }
            out.push(Glyph { x: u, y: w, dx: vx / len, dy: flip * vy / len });
        }
    }
    Ok(out)
}

/// Standalone SVG with one `<line class="glyph">` and one arrowhead per glyph.
pub fn render_svg(glyphs: &[Glyph], opts: &PlotOptions, title: &str) -> String {
    let size = opts.size;
    let c = size / 2.0;
    let radius = 0.46 * size;
    let half = 0.4 * radius * 2.0 / opts.density.max(2) as f64;
    let head = 0.45 * half;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.0} {size:.0}">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(title));
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<circle cx="{c:.3}" cy="{c:.3}" r="{radius:.3}" fill="none" stroke="gray" stroke-width="1"/>"#
    );
    let _ = writeln!(svg, r#"<circle cx="{c:.3}" cy="{c:.3}" r="2.5" fill="red"/>"#);
    let _ = writeln!(svg, r#"<g stroke="black" stroke-width="1.2" fill="black">"#);
    for g in glyphs {
        let (px, py) = (c + radius * g.x, c - radius * g.y);
        let (ex, ey) = (g.dx, -g.dy);
        let (x1, y1) = (px - half * ex, py - half * ey);
        let (x2, y2) = (px + half * ex, py + half * ey);
        let (bx, by) = (x2 - head * ex, y2 - head * ey);
        let (nx, ny) = (-ey * 0.5 * head, ex * 0.5 * head);
        let _ = writeln!(
            svg,
            r#"<line class="glyph" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/><polygon points="{x2:.3},{y2:.3} {:.3},{:.3} {:.3},{:.3}"/>"#,
            bx + nx,
            by + ny,
            bx - nx,
            by - ny
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
