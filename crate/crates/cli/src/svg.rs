//! Standalone SVG figures of bubble configurations.

use std::fmt::Write as _;

use hexbubble::hexnorm::{hex_norm, point_segment_distance, shared_segments, PlanePoint, PolyChain};
use hexbubble::solver::figure_geometry;
use hexbubble::DoubleBubbleResult;

use crate::format::sig;

/// SVG user units per plane unit.
pub const SCALE: f64 = 100.0;
/// Margin on each side of the viewBox, as a fraction of the content size.
pub const MARGIN: f64 = 0.05;

const PANEL_GAP: f64 = 0.6;
const LABEL_OFFSET: f64 = 0.09;
const FONT_SIZE: f64 = 9.0;

/// One panel: bubble A, optional bubble B and a caption.
pub struct Panel {
    pub caption: String,
    pub a: PolyChain,
    pub b: Option<PolyChain>,
}

struct Bounds {
    min: PlanePoint,
    max: PlanePoint,
}

impl Bounds {
    fn empty() -> Self {
        Bounds {
            min: PlanePoint::new(f64::INFINITY, f64::INFINITY),
            max: PlanePoint::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn add(&mut self, p: PlanePoint) {
        self.min = PlanePoint::new(self.min.x.min(p.x), self.min.y.min(p.y));
        self.max = PlanePoint::new(self.max.x.max(p.x), self.max.y.max(p.y));
    }
}

fn chain_bounds(chains: &[&PolyChain]) -> Bounds {
    let mut b = Bounds::empty();
    for c in chains {
        for &v in c.vertices() {
            b.add(v);
        }
    }
    b
}

/// Edges of `c` with their `D`-lengths and outward label anchors.
fn edge_labels(c: &PolyChain, skip: &[(PlanePoint, PlanePoint)]) -> Vec<(PlanePoint, f64)> {
    let mut out = Vec::new();
    for (p, q) in c.edges() {
        let d = q - p;
        let len = hex_norm(d);
        if len < 1e-9 {
            continue;
        }
        let mid = (p + q) * 0.5;
        if skip.iter().any(|&(s0, s1)| point_segment_distance(mid, s0, s1) < 1e-9) {
            continue;
        }
        // chains are counterclockwise, so the outward normal is to the right
        let n = PlanePoint::new(d.y, -d.x) * (1.0 / d.euclid());
        out.push((mid + n * LABEL_OFFSET, len));
    }
    out
}

fn points_attr(c: &PolyChain, to_svg: &impl Fn(PlanePoint) -> (f64, f64)) -> String {
    let pts: Vec<String> = c
        .vertices()
        .iter()
        .map(|&v| {
            let (x, y) = to_svg(v);
            format!("{x:.4},{y:.4}")
        })
        .collect();
    pts.join(" ")
}

/// Panels side by side, plane `y` pointing up.
pub fn render(panels: &[Panel]) -> String {
    let mut offsets = Vec::with_capacity(panels.len());
    let mut all = Bounds::empty();
    let mut cursor = 0.0;
    for panel in panels {
        let chains: Vec<&PolyChain> = std::iter::once(&panel.a).chain(panel.b.as_ref()).collect();
        let b = chain_bounds(&chains);
        let shift = PlanePoint::new(cursor - b.min.x, 0.0);
        offsets.push(shift);
        let pad = LABEL_OFFSET + 0.08;
        all.add(PlanePoint::new(cursor - pad, b.min.y - pad));
        all.add(PlanePoint::new(cursor + (b.max.x - b.min.x) + pad, b.max.y + pad + 0.25));
        cursor += b.max.x - b.min.x + PANEL_GAP;
    }

    let width = (all.max.x - all.min.x) * SCALE;
    let height = (all.max.y - all.min.y) * SCALE;
    let (mx, my) = (MARGIN * width, MARGIN * height);
    let to_svg = |p: PlanePoint| ((p.x - all.min.x) * SCALE, (all.max.y - p.y) * SCALE);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<!-- hexbubble figure. Scale: 1 plane unit = {SCALE} user units; plane y axis points up. \
         Labels are D-lengths of the sides. -->"
    );
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{:.4} {:.4} {:.4} {:.4}\" \
         width=\"{:.0}\" height=\"{:.0}\">",
        -mx,
        -my,
        width + 2.0 * mx,
        height + 2.0 * my,
        width + 2.0 * mx,
        height + 2.0 * my
    );
    let _ = writeln!(
        s,
        "<style>.a{{fill:#cfe2f3;stroke:#1f4e79;stroke-width:1.5}} .b{{fill:#f9d9c5;stroke:#8a3b12;stroke-width:1.5}} \
         .joint{{stroke:#c00000;stroke-width:3.5;stroke-linecap:round}} \
         text{{font-family:sans-serif;font-size:{FONT_SIZE}px;text-anchor:middle;dominant-baseline:middle}} \
         .caption{{font-size:{}px}}</style>",
        FONT_SIZE * 1.3
    );

    for (panel, &shift) in panels.iter().zip(&offsets) {
        let a = panel.a.translated(shift);
        let b = panel.b.as_ref().map(|b| b.translated(shift));
        let joint = match &b {
            Some(b) => shared_segments(&a, b).unwrap_or_default(),
            None => Vec::new(),
        };
        let bounds = chain_bounds(&std::iter::once(&a).chain(b.as_ref()).collect::<Vec<_>>());

        s.push_str("<g>\n");
        let (cx, cy) = to_svg(PlanePoint::new((bounds.min.x + bounds.max.x) / 2.0, bounds.max.y + 0.22));
        let _ = writeln!(s, "<text class=\"caption\" x=\"{cx:.4}\" y=\"{cy:.4}\">{}</text>", panel.caption);
        let _ = writeln!(s, "<polygon class=\"a\" points=\"{}\"/>", points_attr(&a, &to_svg));
        if let Some(b) = &b {
            let _ = writeln!(s, "<polygon class=\"b\" points=\"{}\"/>", points_attr(b, &to_svg));
        }
        for &(p, q) in &joint {
            let ((x1, y1), (x2, y2)) = (to_svg(p), to_svg(q));
            let _ = writeln!(s, "<line class=\"joint\" x1=\"{x1:.4}\" y1=\"{y1:.4}\" x2=\"{x2:.4}\" y2=\"{y2:.4}\"/>");
        }
        let mut labels = edge_labels(&a, &[]);
        if let Some(b) = &b {
            labels.extend(edge_labels(b, &joint));
        }
        for (at, len) in labels {
            let (x, y) = to_svg(at);
            let _ = writeln!(s, "<text x=\"{x:.4}\" y=\"{y:.4}\">{}</text>", short(len));
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

fn short(x: f64) -> String {
    format!("{x:.4}")
}

/// One panel per reported configuration.
pub fn render_result(r: &DoubleBubbleResult) -> String {
    let panels: Vec<Panel> = r
        .solutions
        .iter()
        .map(|c| {
            let (a, b) = figure_geometry(c);
            Panel {
                caption: format!("{} α = {} perimeter = {}", c.case(), sig(r.alpha), sig(c.perimeter())),
                a,
                b: Some(b),
            }
        })
        .collect();
    render(&panels)
}

/// A single bubble, e.g. the isoperimetric hexagon.
pub fn render_single(c: &PolyChain, caption: String) -> String {
    render(&[Panel { caption, a: c.clone().to_counterclockwise(), b: None }])
}
