//! SVG circle graphs for marked rhythms.
//!
//! A rhythm on an `N`-beat clock is drawn on a wheel: beat `a` sits at angle
//! `2*pi*a/N`, measured counterclockwise from the positive x-axis (screen y
//! is inverted so the picture matches the mathematical orientation). Each
//! onset gets a filled disk, the onsets are joined by a closed polygon in
//! index order, and the marked onset is enclosed in an extra ring.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rhythm::MarkedRhythm;

/// Dimensions for [`circle_graph_svg`], all in pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleGraphStyle {
    /// Width and height of the square canvas.
    pub canvas: f64,
    /// Radius of the beat wheel.
    pub radius: f64,
    /// Radius of each onset disk.
    pub node_radius: f64,
    /// Radius of the ring around the marked onset; must exceed the disk.
    pub ring_radius: f64,
    /// Font size of the beat labels.
    pub font_size: f64,
    /// Stroke width of the wheel outline.
    pub circle_stroke: f64,
    /// Stroke width of the rhythm polygon.
    pub polygon_stroke: f64,
    /// Stroke width of the marker ring.
    pub ring_stroke: f64,
}

impl Default for CircleGraphStyle {
    fn default() -> Self {
        Self {
            canvas: 480.0,
            radius: 180.0,
            node_radius: 7.0,
            ring_radius: 12.0,
            font_size: 16.0,
            circle_stroke: 1.0,
            polygon_stroke: 2.0,
            ring_stroke: 2.0,
        }
    }
}

impl CircleGraphStyle {
    /// Reject degenerate dimensions before any drawing happens.
    fn validate(&self) -> Result<()> {
        let fields = [
            ("canvas", self.canvas),
            ("radius", self.radius),
            ("node_radius", self.node_radius),
            ("ring_radius", self.ring_radius),
            ("font_size", self.font_size),
            ("circle_stroke", self.circle_stroke),
            ("polygon_stroke", self.polygon_stroke),
            ("ring_stroke", self.ring_stroke),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidStyle(format!(
                    "{name} must be a positive finite number, got {value}"
                )));
            }
        }
        if self.ring_radius <= self.node_radius {
            return Err(Error::InvalidStyle(format!(
                "marker ring radius {} must exceed node radius {}",
                self.ring_radius, self.node_radius
            )));
        }
        if self.radius + self.ring_radius >= self.canvas / 2.0 {
            return Err(Error::InvalidStyle(format!(
                "radius {} plus ring {} must fit inside the {}px canvas",
                self.radius, self.ring_radius, self.canvas
            )));
        }
        Ok(())
    }

    /// Canvas position of beat `beat` on a wheel of `beats` beats, at
    /// distance `r` from the center. Screen y grows downward, so it is
    /// negated to keep angles counterclockwise.
    fn position(&self, beat: u32, beats: u32, r: f64) -> (f64, f64) {
        let theta = TAU * f64::from(beat) / f64::from(beats);
        let center = self.canvas / 2.0;
        (center + r * theta.cos(), center - r * theta.sin())
    }
}

/// Render `marked` as a standalone SVG 1.1 document.
///
/// The output always contains one wheel circle, one beat label per clock
/// position, one closed polygon, one filled disk per onset, and exactly one
/// marker ring. Coordinates are rounded to two decimals, so the text is
/// identical across runs.
///
/// # Errors
///
/// [`Error::InvalidStyle`] for non-positive dimensions, a ring that does not
/// clear the onset disks, or a wheel that does not fit the canvas.
pub fn circle_graph_svg(marked: &MarkedRhythm, style: &CircleGraphStyle) -> Result<String> {
    style.validate()?;
    let params = marked.params();
    let beats = params.beats();
    let center = style.canvas / 2.0;
    let label_offset = style.radius + style.ring_radius + 0.9 * style.font_size;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c:.0}" height="{c:.0}" viewBox="0 0 {c:.0} {c:.0}">"#,
        c = style.canvas
    );
    let _ = writeln!(
        svg,
        r#"  <rect class="background" width="{c:.0}" height="{c:.0}" fill="white"/>"#,
        c = style.canvas
    );
    let _ = writeln!(
        svg,
        r#"  <circle class="wheel" cx="{center:.2}" cy="{center:.2}" r="{:.2}" fill="none" stroke="black" stroke-width="{:.2}"/>"#,
        style.radius, style.circle_stroke
    );

    for beat in 0..beats {
        let (x, y) = style.position(beat, beats, label_offset);
        let _ = writeln!(
            svg,
            r#"  <text class="beat-label" x="{x:.2}" y="{y:.2}" font-size="{:.2}" font-family="sans-serif" text-anchor="middle" dominant-baseline="central">{beat}</text>"#,
            style.font_size
        );
    }

    let mut points = String::new();
    for &entry in marked.rhythm().entries() {
        let (x, y) = style.position(entry, beats, style.radius);
        if !points.is_empty() {
            points.push(' ');
        }
        let _ = write!(points, "{x:.2},{y:.2}");
    }
    let _ = writeln!(
        svg,
        r#"  <polygon class="rhythm-polygon" points="{points}" fill="none" stroke="black" stroke-width="{:.2}"/>"#,
        style.polygon_stroke
    );

    for &entry in marked.rhythm().entries() {
        let (x, y) = style.position(entry, beats, style.radius);
        let _ = writeln!(
            svg,
            r#"  <circle class="onset" cx="{x:.2}" cy="{y:.2}" r="{:.2}" fill="black"/>"#,
            style.node_radius
        );
    }

    let (mx, my) = style.position(marked.marked_entry(), beats, style.radius);
    let _ = writeln!(
        svg,
        r#"  <circle class="marker-ring" cx="{mx:.2}" cy="{my:.2}" r="{:.2}" fill="none" stroke="black" stroke-width="{:.2}"/>"#,
        style.ring_radius, style.ring_stroke
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
