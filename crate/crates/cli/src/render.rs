//! Deterministic SVG pictures of disk packings and of sphere packings seen
//! from above.
//!
//! Spheres are drawn as their silhouette circles on `z = 0`, painted in
//! order of decreasing curvature with translucent fills. Half-spaces become
//! half-planes clipped to the viewport; in three dimensions only vertical
//! ones (normal in the `xy`-plane) are drawn, since any other half-space
//! covers the whole picture. Balls of negative curvature are outlined only.

use crate::commands::grow;
use crate::input::{check_field, load_packing, write_output};
use crate::Outcome;
use anyhow::{bail, Result};
use clap::Args;
use polypack::{Geometry, Packing, Scalar};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Args, Debug)]
pub struct RenderArgs {
    /// Packing, section or orbit-report JSON; `-` reads stdin.
    #[arg(long)]
    pub input: PathBuf,
    /// Draw the planar packing of a section file.
    #[arg(long)]
    pub planar: bool,
    /// Grow the cluster to this depth before drawing.
    #[arg(long, default_value_t = 0)]
    pub depth: u32,
    /// Skip balls with |κ| above this (also bounds the cluster).
    #[arg(long)]
    pub max_curvature: Option<i64>,
    /// Print the curvature inside balls with κ at most this.
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    pub labels: Option<i64>,
    /// Colour balls by the generation in which they appear.
    #[arg(long)]
    pub color_depth: bool,
    /// Viewport as `cx,cy,half-width` in packing units (default: fitted to the seed).
    #[arg(long, value_delimiter = ',', num_args = 3, allow_hyphen_values = true)]
    pub view: Option<Vec<f64>>,
    /// Image width and height in pixels.
    #[arg(long, default_value_t = 800)]
    pub size: u32,
}

/// Viewport and drawing policy.
#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub center: [f64; 2],
    pub half_width: f64,
    pub size: f64,
    pub max_curvature: Option<f64>,
    pub label_max: Option<f64>,
    pub color_depth: bool,
}

/// One ball reduced to what the picture needs.
#[derive(Clone, Debug)]
pub enum Shape {
    Circle {
        center: [f64; 2],
        radius: f64,
        curvature: f64,
        label: String,
        depth: u32,
    },
    HalfPlane {
        normal: [f64; 2],
        offset: f64,
        depth: u32,
    },
}

const PALETTE: [&str; 8] = [
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c",
];
const FILL: &str = "#9ecae1";

pub fn run<S: Scalar>(a: &RenderArgs, out: Option<&Path>, field: Option<u32>) -> Result<Outcome> {
    let seed: Packing<S> = load_packing(&a.input, a.planar)?;
    check_field(&seed, field)?;
    let d = seed.dim();
    if d != 2 && d != 3 {
        bail!(
            "render draws disk and sphere packings only (this packing has {d}-dimensional balls)"
        );
    }
    let seed_shapes: Vec<Shape> = seed.balls.iter().filter_map(|b| shape(b, 0)).collect();
    let shapes: Vec<Shape> = if a.depth == 0 {
        seed_shapes.clone()
    } else {
        let r = grow(&seed, a.depth, a.max_curvature)?;
        (0..r.len())
            .filter_map(|i| shape(&r.ball(i), r.entries()[i].depth))
            .collect()
    };
    let (center, half_width) = match &a.view {
        Some(v) if v[2] > 0.0 => ([v[0], v[1]], v[2]),
        Some(_) => bail!("the viewport half-width must be positive"),
        None => fit(&seed_shapes),
    };
    let spec = RenderSpec {
        center,
        half_width,
        size: a.size.max(16) as f64,
        max_curvature: a.max_curvature.map(|k| k as f64),
        label_max: a.labels.map(|k| k as f64),
        color_depth: a.color_depth,
    };
    write_output(out, &svg(&shapes, &spec))?;
    Ok(Outcome::Ok)
}

fn shape<S: Scalar>(b: &polypack::Ball<S>, depth: u32) -> Option<Shape> {
    match b.geometry() {
        Geometry::Sphere { center, curvature } => {
            let k = curvature.to_f64();
            let label = match curvature.as_integer() {
                Some(n) => n.to_string(),
                None if S::is_exact() => curvature.to_string(),
                None => format!("{k:.2}"),
            };
            Some(Shape::Circle {
                center: [center[0].to_f64(), center[1].to_f64()],
                radius: 1.0 / k.abs(),
                curvature: k,
                label,
                depth,
            })
        }
        Geometry::HalfSpace { normal, offset } => {
            if normal.len() > 2 && normal[2..].iter().any(|x| !x.is_zero()) {
                return None;
            }
            Some(Shape::HalfPlane {
                normal: [normal[0].to_f64(), normal[1].to_f64()],
                offset: offset.to_f64(),
                depth,
            })
        }
    }
}

/// The bounding ball when there is one, else the box around the seed's
/// bounded balls, with a small margin.
fn fit(shapes: &[Shape]) -> ([f64; 2], f64) {
    if let Some(Shape::Circle { center, radius, .. }) = shapes
        .iter()
        .find(|s| matches!(s, Shape::Circle { curvature, .. } if *curvature < 0.0))
    {
        return (*center, radius * 1.04);
    }
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for s in shapes {
        if let Shape::Circle { center, radius, .. } = s {
            for i in 0..2 {
                lo[i] = lo[i].min(center[i] - radius);
                hi[i] = hi[i].max(center[i] + radius);
            }
        }
    }
    if !lo[0].is_finite() {
        return ([0.0, 0.0], 1.0);
    }
    let c = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    let hw = ((hi[0] - lo[0]).max(hi[1] - lo[1]) / 2.0 * 1.04).max(1e-9);
    (c, hw)
}

fn colour(depth: u32, spec: &RenderSpec) -> &'static str {
    if spec.color_depth {
        PALETTE[depth as usize % PALETTE.len()]
    } else {
        FILL
    }
}

/// Renders the shapes; the output depends only on the shapes and the spec.
pub fn svg(shapes: &[Shape], spec: &RenderSpec) -> String {
    let px = spec.size;
    let scale = px / (2.0 * spec.half_width);
    let (x0, y1) = (
        spec.center[0] - spec.half_width,
        spec.center[1] + spec.half_width,
    );
    let to_px = |p: [f64; 2]| [(p[0] - x0) * scale, (y1 - p[1]) * scale];
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px:.0}" height="{px:.0}" viewBox="0 0 {px:.0} {px:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let mut circles: Vec<&Shape> = Vec::new();
    let mut outlines: Vec<&Shape> = Vec::new();
    for sh in shapes {
        match sh {
            Shape::HalfPlane {
                normal,
                offset,
                depth,
            } => {
                let poly = clip_half_plane(*normal, *offset, spec);
                if poly.len() >= 3 {
                    let pts: Vec<String> = poly
                        .iter()
                        .map(|&p| {
                            let q = to_px(p);
                            format!("{:.3},{:.3}", q[0], q[1])
                        })
                        .collect();
                    let _ = writeln!(
                        s,
                        r#"<polygon points="{}" fill="{}" fill-opacity="0.6" stroke="black" stroke-width="0.5"/>"#,
                        pts.join(" "),
                        colour(*depth, spec)
                    );
                }
            }
            Shape::Circle {
                center,
                radius,
                curvature,
                ..
            } => {
                if spec.max_curvature.is_some_and(|m| curvature.abs() > m)
                    || !visible(*center, *radius, spec)
                {
                    continue;
                }
                if radius * scale < 0.05 {
                    continue;
                }
                if *curvature < 0.0 {
                    outlines.push(sh);
                } else {
                    circles.push(sh);
                }
            }
        }
    }
    let curv = |s: &Shape| match s {
        Shape::Circle { curvature, .. } => *curvature,
        Shape::HalfPlane { .. } => 0.0,
    };
    // stable sort keeps input order among equal curvatures
    circles.sort_by(|a, b| curv(b).total_cmp(&curv(a)));
    for sh in circles.iter().chain(outlines.iter()) {
        let Shape::Circle {
            center,
            radius,
            curvature,
            depth,
            ..
        } = sh
        else {
            continue;
        };
        let c = to_px(*center);
        let r = radius * scale;
        if *curvature < 0.0 {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.3}" cy="{:.3}" r="{r:.3}" fill="none" stroke="black" stroke-width="1"/>"#,
                c[0], c[1]
            );
        } else {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.3}" cy="{:.3}" r="{r:.3}" fill="{}" fill-opacity="0.6" stroke="black" stroke-width="0.5"/>"#,
                c[0],
                c[1],
                colour(*depth, spec)
            );
        }
    }
    for sh in &circles {
        let Shape::Circle {
            center,
            radius,
            curvature,
            label,
            ..
        } = sh
        else {
            continue;
        };
        let r = radius * scale;
        if spec.label_max.is_some_and(|m| *curvature <= m) && r >= 6.0 {
            let c = to_px(*center);
            let font = (r * 0.6).min(24.0);
            let _ = writeln!(
                s,
                r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="{font:.3}" text-anchor="middle" dominant-baseline="central">{label}</text>"#,
                c[0], c[1]
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn visible(center: [f64; 2], radius: f64, spec: &RenderSpec) -> bool {
    let hw = spec.half_width;
    (center[0] - spec.center[0]).abs() <= hw + radius
        && (center[1] - spec.center[1]).abs() <= hw + radius
}

/// The viewport square cut down to `{p : n·p ≥ offset}`.
fn clip_half_plane(n: [f64; 2], offset: f64, spec: &RenderSpec) -> Vec<[f64; 2]> {
    let (c, hw) = (spec.center, spec.half_width);
    let square = [
        [c[0] - hw, c[1] - hw],
        [c[0] + hw, c[1] - hw],
        [c[0] + hw, c[1] + hw],
        [c[0] - hw, c[1] + hw],
    ];
    let side = |p: [f64; 2]| n[0] * p[0] + n[1] * p[1] - offset;
    let mut out = Vec::new();
    for i in 0..4 {
        let (p, q) = (square[i], square[(i + 1) % 4]);
        let (sp, sq) = (side(p), side(q));
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp >= 0.0) != (sq >= 0.0) {
            let t = sp / (sp - sq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> RenderSpec {
        RenderSpec {
            center: [0.0, 0.0],
            half_width: 1.0,
            size: 100.0,
            max_curvature: None,
            label_max: Some(5.0),
            color_depth: false,
        }
    }

    #[test]
    fn half_plane_clipping() {
        let poly = clip_half_plane([0.0, 1.0], 0.0, &spec());
        assert_eq!(poly.len(), 4);
        assert!(poly.iter().all(|p| p[1] >= 0.0));
        assert!(clip_half_plane([0.0, 1.0], 2.0, &spec()).is_empty());
    }

    #[test]
    fn bounding_disk_is_outlined_last() {
        let shapes = vec![
            Shape::Circle {
                center: [0.0, 0.0],
                radius: 1.0,
                curvature: -1.0,
                label: "-1".into(),
                depth: 0,
            },
            Shape::Circle {
                center: [0.5, 0.0],
                radius: 0.5,
                curvature: 2.0,
                label: "2".into(),
                depth: 0,
            },
        ];
        let out = svg(&shapes, &spec());
        let filled = out.find("fill=\"#9ecae1\"").unwrap();
        let outline = out.find("fill=\"none\"").unwrap();
        assert!(filled < outline);
        assert!(out.contains(">2</text>"));
        assert_eq!(out, svg(&shapes, &spec()));
    }
}
