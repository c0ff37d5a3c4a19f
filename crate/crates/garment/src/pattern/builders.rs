//! Builtin garment templates.
//!
//! Geometry and proportions are measured against the canonical procedural
//! body (1.75 m). Length-type defaults (`h*`, `l1`) are measured from the
//! constructed base polylines so displacement gains are metric at the
//! defaults: adding 0.1 to a length parameter lengthens the measured boundary
//! polyline by 0.1 m to first order (exactly, for straight seams).

use nalgebra::{Point2, Vector2};

use super::{ControlPoint, GarmentType, ParamEffect, PatternTemplate, PieceTemplate, SegmentTemplate, SeamSpec, SizingParams};

const X: Vector2<f64> = Vector2::new(1.0, 0.0);
const Y: Vector2<f64> = Vector2::new(0.0, 1.0);

fn point(position: Point2<f64>, effects: Vec<ParamEffect>) -> ControlPoint {
    ControlPoint { position, effects }
}

/// Sample `n + 1` control points (inclusive of both endpoints) of a curve.
fn sampled_segment(
    name: &str,
    n: usize,
    curve: impl Fn(f64) -> Point2<f64>,
    effects: impl Fn(Point2<f64>, f64) -> Vec<ParamEffect>,
) -> SegmentTemplate {
    let points = (0..=n)
        .map(|i| {
            let s = i as f64 / n as f64;
            let p = curve(s);
            point(p, effects(p, s))
        })
        .collect();
    SegmentTemplate { name: name.to_string(), points }
}

fn polyline_length(points: &[ControlPoint]) -> f64 {
    points.windows(2).map(|w| (w[1].position - w[0].position).norm()).sum()
}

/// Mirror a piece about x = 0 and reverse its loop so it stays
/// counter-clockwise. Segment names are preserved.
fn mirror_piece(piece: &PieceTemplate, name: &str) -> PieceTemplate {
    let segments = piece
        .segments
        .iter()
        .rev()
        .map(|seg| SegmentTemplate {
            name: seg.name.clone(),
            points: seg
                .points
                .iter()
                .rev()
                .map(|cp| ControlPoint {
                    position: Point2::new(-cp.position.x, cp.position.y),
                    effects: cp
                        .effects
                        .iter()
                        .map(|e| ParamEffect::new(e.weight, Vector2::new(-e.direction.x, e.direction.y)))
                        .collect(),
                })
                .collect(),
        })
        .collect();
    PieceTemplate { name: name.to_string(), segments }
}

// Pieces are kept in their local construction frames; mirrored or repeated
// pieces may overlap in pattern space. Rest-shape physics only uses edge
// vectors, and the SVG sheet lays pieces out for display.

// ---------------------------------------------------------------------------
// Skirt: two mirrored annular sectors (classic circle-skirt cut).
// ---------------------------------------------------------------------------

pub const SKIRT_R1: f64 = 0.25;
pub const SKIRT_R2: f64 = 0.55;
pub const SKIRT_ALPHA: f64 = 1.6;
/// Waist arc per piece; the base sector satisfies l1 = r1 * alpha.
pub const SKIRT_L1: f64 = SKIRT_R1 * SKIRT_ALPHA;

pub fn skirt_template() -> PatternTemplate {
    let front = skirt_piece();
    let mut back = front.clone();
    back.name = "back".into();

    // Loop order below: waist (0), seam_left (1), hem (2), seam_right (3).
    // Front right edge meets back left edge when the two halves wrap the
    // body, and vice versa; both seams pair waist-to-waist, so the pairing
    // runs one segment backwards.
    let seams = vec![
        SeamSpec { piece_a: 0, segment_a: 3, piece_b: 1, segment_b: 1, reversed: true },
        SeamSpec { piece_a: 0, segment_a: 1, piece_b: 1, segment_b: 3, reversed: true },
    ];

    PatternTemplate {
        garment_type: GarmentType::Skirt,
        pieces: vec![front, back],
        seams,
        defaults: SizingParams {
            garment_type: GarmentType::Skirt,
            values: vec![SKIRT_L1, SKIRT_R1, SKIRT_R2, SKIRT_ALPHA],
        },
    }
}

fn skirt_piece() -> PieceTemplate {
    let half = SKIRT_ALPHA / 2.0;
    let at = |rho: f64, phi: f64| Point2::new(rho * phi.sin(), -rho * phi.cos());

    // Effects are pure functions of the polar position.
    let effects = move |p: Point2<f64>, _s: f64| -> Vec<ParamEffect> {
        let rho = p.coords.norm();
        let phi = p.x.atan2(-p.y);
        let radial = Vector2::new(phi.sin(), -phi.cos());
        let tangential = Vector2::new(phi.cos(), phi.sin());
        let t = ((rho - SKIRT_R1) / SKIRT_R2).clamp(0.0, 1.0);
        vec![
            // l1: waist girth; radial shift of the waist, fading to the hem.
            ParamEffect::new(1.0 - t, radial / SKIRT_ALPHA),
            // r1: inner radius; rigid radial shift of the whole sector.
            ParamEffect::new(1.0, radial),
            // r2: skirt length; radial shift growing toward the hem.
            ParamEffect::new(t, radial),
            // alpha: sector angle; tangential shear proportional to the
            // angular coordinate.
            ParamEffect::new((phi / half).abs().min(1.0), tangential * (phi.signum() * rho / 2.0)),
        ]
    };

    let arc_n = |rho: f64| ((rho * SKIRT_ALPHA) / 0.02).ceil() as usize;
    let waist = sampled_segment("waist", arc_n(SKIRT_R1), |s| at(SKIRT_R1, half - SKIRT_ALPHA * s), effects);
    let seam_left = sampled_segment("seam_left", 8, |s| at(SKIRT_R1 + SKIRT_R2 * s, -half), effects);
    let hem = sampled_segment(
        "hem",
        arc_n(SKIRT_R1 + SKIRT_R2),
        |s| at(SKIRT_R1 + SKIRT_R2, -half + SKIRT_ALPHA * s),
        effects,
    );
    let seam_right = sampled_segment("seam_right", 8, |s| at(SKIRT_R1 + SKIRT_R2 * (1.0 - s), half), effects);

    PieceTemplate { name: "front".into(), segments: vec![waist, seam_left, hem, seam_right] }
}

// ---------------------------------------------------------------------------
// Pants: four pieces, front/back x left/right.
// ---------------------------------------------------------------------------

pub const PANTS_W1: f64 = 0.80;
pub const PANTS_W2: f64 = 1.00;
pub const PANTS_W3: f64 = 0.48;
pub const PANTS_W4: f64 = 0.40;
/// Outseam length; the base outseam is a straight line of exactly this length.
pub const PANTS_H1: f64 = 1.00;
/// Vertical crotch depth of the base geometry (fixed; the rise-length
/// parameters h2/h3 reshape the rise curves without moving the crotch).
const PANTS_CROTCH_DROP: f64 = 0.28;
const PANTS_RISE_BULGE_FRONT: f64 = 0.030;
const PANTS_RISE_BULGE_BACK: f64 = 0.085;

struct PantsFrame {
    q: [f64; 4],
    drop: f64,   // vertical waist-to-hem drop
    y_knee: f64, // knee station height (negative)
    x_crotch: f64,
    outseam_dir: Vector2<f64>,
}

fn pants_frame() -> PantsFrame {
    // Waist and hip are full-body girths (quarter per piece); knee and ankle
    // are per-leg girths (each leg is two pieces, so half per piece).
    let q = [PANTS_W1 / 4.0, PANTS_W2 / 4.0, PANTS_W3 / 2.0, PANTS_W4 / 2.0];
    let span = q[0] - q[3];
    let drop = (PANTS_H1 * PANTS_H1 - span * span).sqrt();
    let y_knee = -(PANTS_CROTCH_DROP + 0.45 * (drop - PANTS_CROTCH_DROP));
    let x_out = |y: f64| q[0] + (q[3] - q[0]) * (-y / drop);
    let x_crotch = x_out(-PANTS_CROTCH_DROP) - q[1];
    let outseam_dir = (Vector2::new(q[3] - q[0], -drop)) / PANTS_H1;
    PantsFrame { q, drop, y_knee, x_crotch, outseam_dir }
}

/// Quadratic Bezier.
fn bezier(a: Point2<f64>, c: Point2<f64>, b: Point2<f64>, s: f64) -> Point2<f64> {
    let u = 1.0 - s;
    Point2::from(a.coords * (u * u) + c.coords * (2.0 * u * s) + b.coords * (s * s))
}

fn pants_front_left(frame: &PantsFrame, bulge: f64, rise_param: usize) -> PieceTemplate {
    let &PantsFrame { q, drop, y_knee, x_crotch, outseam_dir } = frame;
    let x_out = move |y: f64| q[0] + (q[3] - q[0]) * (-y / drop);

    let top = Point2::new(0.0, 0.0);
    let crotch = Point2::new(x_crotch, -PANTS_CROTCH_DROP);
    let knee_in = Point2::new(x_out(y_knee) - q[2], y_knee);
    let hem_in = Point2::new(0.0, -drop);
    let hem_out = Point2::new(q[3], -drop);
    let waist_side = Point2::new(q[0], 0.0);

    // Rise curve bows toward -x; its length is the rise parameter at base.
    let rise_ctrl = Point2::new(x_crotch * 0.35 - bulge, -PANTS_CROTCH_DROP * 0.55);
    let rise_curve = move |s: f64| bezier(top, rise_ctrl, crotch, s);

    // Gain so one unit of the rise parameter lengthens the curve by ~1 m.
    let bump = |s: f64| 4.0 * s * (1.0 - s);
    let rise_gain = {
        let eps = 1e-4;
        let base: f64 = (0..=32)
            .map(|i| rise_curve(i as f64 / 32.0))
            .collect::<Vec<_>>()
            .windows(2)
            .map(|w| (w[1] - w[0]).norm())
            .sum();
        let bent: f64 = (0..=32)
            .map(|i| {
                let s = i as f64 / 32.0;
                let p = rise_curve(s);
                Point2::new(p.x - eps * bump(s), p.y)
            })
            .collect::<Vec<_>>()
            .windows(2)
            .map(|w| (w[1] - w[0]).norm())
            .sum();
        eps / (bent - base)
    };

    // Station-based weights shared by lengths and girths.
    let w1_weight = move |p: Point2<f64>| (1.0 + p.y / (1.3 * PANTS_CROTCH_DROP)).clamp(0.0, 1.0);
    let h1_weight = move |p: Point2<f64>| (-p.y / drop).clamp(0.0, 1.0);
    let effects_base = move |p: Point2<f64>| -> Vec<ParamEffect> {
        vec![
            ParamEffect::new(w1_weight(p), X * 0.25), // w1 applies on waist/outseam points only; weight set per segment below
            ParamEffect::ZERO,                        // w2 crotch hook (inseam/rise only)
            ParamEffect::ZERO,                        // w3 knee (inseam only)
            ParamEffect::ZERO,                        // w4 ankle (inseam/hem only)
            ParamEffect::new(h1_weight(p), outseam_dir * 1.0), // h1 stretches everything along the outseam direction
            ParamEffect::ZERO,                        // h2 (back rise)
            ParamEffect::ZERO,                        // h3 (front rise)
        ]
    };

    // Segment-specific weight overrides.
    let rise = sampled_segment("rise", 16, rise_curve, move |p, s| {
        let mut e = effects_base(p);
        e[0] = ParamEffect::ZERO;
        // Hip girth fades from the crotch hook up the rise.
        e[1] = ParamEffect::new(s * s, -X * 0.25);
        e[rise_param] = ParamEffect::new(bump(s), -X * rise_gain);
        e
    });
    let inseam = sampled_segment(
        "inseam",
        16,
        move |s| {
            // Two straight legs: crotch -> knee -> hem, split at s = 0.45.
            if s < 0.45 {
                let t = s / 0.45;
                Point2::from(crotch.coords * (1.0 - t) + knee_in.coords * t)
            } else {
                let t = (s - 0.45) / 0.55;
                Point2::from(knee_in.coords * (1.0 - t) + hem_in.coords * t)
            }
        },
        move |p, s| {
            let mut e = effects_base(p);
            e[0] = ParamEffect::ZERO;
            let knee_w = if s < 0.45 { s / 0.45 } else { 1.0 - (s - 0.45) / 0.55 };
            e[1] = ParamEffect::new((1.0 - s / 0.45).max(0.0), -X * 0.25);
            e[2] = ParamEffect::new(knee_w, -X * 0.5);
            e[3] = ParamEffect::new(((s - 0.45) / 0.55).clamp(0.0, 1.0), -X * 0.5);
            e
        },
    );
    let hem = sampled_segment(
        "hem",
        4,
        move |s| Point2::from(hem_in.coords * (1.0 - s) + hem_out.coords * s),
        move |p, s| {
            let mut e = effects_base(p);
            e[0] = ParamEffect::ZERO;
            e[3] = ParamEffect::new(1.0 - s, -X * 0.5);
            e
        },
    );
    let outseam = sampled_segment(
        "outseam",
        12,
        move |s| Point2::from(hem_out.coords * (1.0 - s) + waist_side.coords * s),
        move |p, _| effects_base(p),
    );
    let waist = sampled_segment(
        "waist",
        6,
        move |s| Point2::from(waist_side.coords * (1.0 - s) + top.coords * s),
        move |p, s| {
            let mut e = effects_base(p);
            e[0] = ParamEffect::new(1.0 - s, X * 0.25);
            e
        },
    );

    PieceTemplate {
        name: "front_left".into(),
        segments: vec![rise, inseam, hem, outseam, waist],
    }
}

pub fn pants_template() -> PatternTemplate {
    let frame = pants_frame();
    let front_left = pants_front_left(&frame, PANTS_RISE_BULGE_FRONT, 6);
    let back_left = {
        let mut p = pants_front_left(&frame, PANTS_RISE_BULGE_BACK, 5);
        p.name = "back_left".into();
        p
    };
    let h3_default = polyline_length(&front_left.segments[0].points);
    let h2_default = polyline_length(&back_left.segments[0].points);

    let front_right = mirror_piece(&front_left, "front_right");
    let back_right = mirror_piece(&back_left, "back_right");
    let pieces = vec![front_left, back_left, front_right, back_right];

    // Segment order: rise 0, inseam 1, hem 2, outseam 3, waist 4. Mirrored
    // pieces have the loop reversed: rise 4, inseam 3, hem 2, outseam 1,
    // waist 0, with each segment's points running backwards.
    let seams = vec![
        // Left leg: front_left x back_left share outseam and inseam.
        SeamSpec { piece_a: 0, segment_a: 3, piece_b: 1, segment_b: 3, reversed: false },
        SeamSpec { piece_a: 0, segment_a: 1, piece_b: 1, segment_b: 1, reversed: false },
        // Right leg.
        SeamSpec { piece_a: 2, segment_a: 1, piece_b: 3, segment_b: 1, reversed: false },
        SeamSpec { piece_a: 2, segment_a: 3, piece_b: 3, segment_b: 3, reversed: false },
        // Center front and center back rises.
        SeamSpec { piece_a: 0, segment_a: 0, piece_b: 2, segment_b: 4, reversed: true },
        SeamSpec { piece_a: 1, segment_a: 0, piece_b: 3, segment_b: 4, reversed: true },
    ];

    PatternTemplate {
        garment_type: GarmentType::Pants,
        pieces,
        seams,
        defaults: SizingParams {
            garment_type: GarmentType::Pants,
            values: vec![PANTS_W1, PANTS_W2, PANTS_W3, PANTS_W4, PANTS_H1, h2_default, h3_default],
        },
    }
}

/// Geometry the initial pants embedding needs.
pub(crate) struct PantsEmbedFrame {
    pub crotch_drop: f64,
    pub waist_radius: f64,
    pub hip_radius: f64,
    q: [f64; 4],
    drop: f64,
    y_knee: f64,
    x_crotch: f64,
}

impl PantsEmbedFrame {
    /// Horizontal span (inseam x, outseam x) of an unmirrored piece at
    /// height `y`.
    pub fn span_at(&self, y: f64) -> (f64, f64) {
        let x_out = self.q[0] + (self.q[3] - self.q[0]) * (-y / self.drop);
        let x_in = if y >= -PANTS_CROTCH_DROP {
            // Rise region: approach the crotch hook from the center line.
            self.x_crotch * (-y / PANTS_CROTCH_DROP).max(0.0).powf(1.2)
        } else if y >= self.y_knee {
            let t = (y + PANTS_CROTCH_DROP) / (self.y_knee + PANTS_CROTCH_DROP);
            let knee_in = self.q[0] + (self.q[3] - self.q[0]) * (-self.y_knee / self.drop) - self.q[2];
            self.x_crotch * (1.0 - t) + knee_in * t
        } else {
            let t = (y - self.y_knee) / (-self.drop - self.y_knee);
            let knee_in = self.q[0] + (self.q[3] - self.q[0]) * (-self.y_knee / self.drop) - self.q[2];
            knee_in * (1.0 - t)
        };
        (x_in, x_out)
    }
}

pub(crate) fn pants_embed_frame() -> PantsEmbedFrame {
    let f = pants_frame();
    PantsEmbedFrame {
        crotch_drop: PANTS_CROTCH_DROP,
        waist_radius: PANTS_W1 / std::f64::consts::TAU,
        hip_radius: PANTS_W2 / std::f64::consts::TAU,
        q: f.q,
        drop: f.drop,
        y_knee: f.y_knee,
        x_crotch: f.x_crotch,
    }
}

/// Full width of a t-shirt body piece at height `y` (local frame).
pub(crate) fn tshirt_embed_width(y: f64) -> f64 {
    let d_arm = TSHIRT_ARMHOLE * TSHIRT_H2;
    if y >= -d_arm {
        TSHIRT_W2
    } else {
        let t = ((-y - d_arm) / (TSHIRT_H2 - d_arm)).clamp(0.0, 1.0);
        TSHIRT_W2 * (1.0 - t) + (TSHIRT_H1 / 2.0) * t
    }
}

// ---------------------------------------------------------------------------
// T-shirt: front, back, two sleeves.
// ---------------------------------------------------------------------------

pub const TSHIRT_R: f64 = 0.075;
pub const TSHIRT_W1: f64 = 0.32;
pub const TSHIRT_W2: f64 = 0.46;
pub const TSHIRT_H1: f64 = 0.92;
pub const TSHIRT_H2: f64 = 0.65;
pub const TSHIRT_L1: f64 = 0.22;
/// Armhole depth as a fraction of total length.
pub(crate) const TSHIRT_ARMHOLE: f64 = 0.35;

fn tshirt_body(name: &str, neck_dip: f64) -> PieceTemplate {
    let w2h = TSHIRT_W2 / 2.0;
    let h1q = TSHIRT_H1 / 4.0;
    let d_arm = TSHIRT_ARMHOLE * TSHIRT_H2;
    let r = TSHIRT_R;

    let hem_l = Point2::new(-h1q, -TSHIRT_H2);
    let hem_r = Point2::new(h1q, -TSHIRT_H2);
    let underarm_r = Point2::new(w2h, -d_arm);
    let tip_r = Point2::new(w2h, 0.0);
    let neck_r = Point2::new(r, 0.0);
    let neck_l = Point2::new(-r, 0.0);
    let tip_l = Point2::new(-w2h, 0.0);
    let underarm_l = Point2::new(-w2h, -d_arm);

    let base = move |p: Point2<f64>| -> Vec<ParamEffect> {
        vec![
            ParamEffect::ZERO,                                       // r (neck arc/shoulder only)
            ParamEffect::ZERO,                                       // w1 (sleeve only)
            ParamEffect::ZERO,                                       // w2 (shoulder/armhole/side)
            ParamEffect::ZERO,                                       // h1 (hem/side)
            ParamEffect::new((-p.y / TSHIRT_H2).clamp(0.0, 1.0), -Y), // h2 vertical stretch
            ParamEffect::ZERO,                                       // l1 (sleeve only)
        ]
    };
    let xsign = |p: Point2<f64>| if p.x >= 0.0 { 1.0 } else { -1.0 };

    let hem = sampled_segment(
        "hem",
        8,
        move |s| Point2::from(hem_l.coords * (1.0 - s) + hem_r.coords * s),
        move |p, _| {
            let mut e = base(p);
            e[3] = ParamEffect::new((p.x / h1q).abs().min(1.0), X * (0.25 * xsign(p)));
            e
        },
    );
    let side_right = sampled_segment(
        "side_right",
        8,
        move |s| Point2::from(hem_r.coords * (1.0 - s) + underarm_r.coords * s),
        move |p, s| {
            let mut e = base(p);
            e[2] = ParamEffect::new(s, X * 0.5);
            e[3] = ParamEffect::new(1.0 - s, X * 0.25);
            e
        },
    );
    let armhole_right = sampled_segment(
        "armhole_right",
        6,
        move |s| Point2::from(underarm_r.coords * (1.0 - s) + tip_r.coords * s),
        move |p, _| {
            let mut e = base(p);
            e[2] = ParamEffect::new(1.0, X * 0.5);
            e
        },
    );
    let shoulder_right = sampled_segment(
        "shoulder_right",
        4,
        move |s| Point2::from(tip_r.coords * (1.0 - s) + neck_r.coords * s),
        move |p, s| {
            let mut e = base(p);
            e[0] = ParamEffect::new(s, X);
            e[2] = ParamEffect::new(1.0 - s, X * 0.5);
            e
        },
    );
    let neck = sampled_segment(
        "neck",
        16,
        move |s| {
            // Half-ellipse dipping to `neck_dip` at the center.
            let a = std::f64::consts::PI * s;
            Point2::new(r * a.cos(), -neck_dip * a.sin())
        },
        move |p, _| {
            let mut e = base(p);
            let d = p.coords.norm().max(1e-9);
            e[0] = ParamEffect::new(1.0, p.coords / d);
            e
        },
    );
    let shoulder_left = sampled_segment(
        "shoulder_left",
        4,
        move |s| Point2::from(neck_l.coords * (1.0 - s) + tip_l.coords * s),
        move |p, s| {
            let mut e = base(p);
            e[0] = ParamEffect::new(1.0 - s, -X);
            e[2] = ParamEffect::new(s, -X * 0.5);
            e
        },
    );
    let armhole_left = sampled_segment(
        "armhole_left",
        6,
        move |s| Point2::from(tip_l.coords * (1.0 - s) + underarm_l.coords * s),
        move |p, _| {
            let mut e = base(p);
            e[2] = ParamEffect::new(1.0, -X * 0.5);
            e
        },
    );
    let side_left = sampled_segment(
        "side_left",
        8,
        move |s| Point2::from(underarm_l.coords * (1.0 - s) + hem_l.coords * s),
        move |p, s| {
            let mut e = base(p);
            e[2] = ParamEffect::new(1.0 - s, -X * 0.5);
            e[3] = ParamEffect::new(s, -X * 0.25);
            e
        },
    );

    PieceTemplate {
        name: name.to_string(),
        segments: vec![hem, side_right, armhole_right, shoulder_right, neck, shoulder_left, armhole_left, side_left],
    }
}

fn tshirt_sleeve(name: &str) -> PieceTemplate {
    let d_arm = TSHIRT_ARMHOLE * TSHIRT_H2;
    let w1h = TSHIRT_W1 / 2.0;
    let cuff_l = Point2::new(-w1h, -TSHIRT_L1);
    let cuff_r = Point2::new(w1h, -TSHIRT_L1);
    let cap_r = Point2::new(d_arm, 0.0);
    let cap_c = Point2::new(0.0, 0.0);
    let cap_l = Point2::new(-d_arm, 0.0);

    let base = move |p: Point2<f64>| -> Vec<ParamEffect> {
        let cap_w = (1.0 + p.y / TSHIRT_L1).clamp(0.0, 1.0); // 1 at cap, 0 at cuff
        vec![
            ParamEffect::ZERO,
            ParamEffect::ZERO,
            ParamEffect::ZERO,
            ParamEffect::ZERO,
            // h2 widens the cap so it keeps matching the armhole length.
            ParamEffect::new(cap_w * (p.x / d_arm).abs().min(1.0), X * (TSHIRT_ARMHOLE * p.x.signum())),
            // l1 lengthens the sleeve.
            ParamEffect::new((-p.y / TSHIRT_L1).clamp(0.0, 1.0), -Y),
        ]
    };

    let cuff = sampled_segment(
        "cuff",
        6,
        move |s| Point2::from(cuff_l.coords * (1.0 - s) + cuff_r.coords * s),
        move |p, _| {
            let mut e = base(p);
            e[1] = ParamEffect::new((p.x / w1h).abs().min(1.0), X * (0.5 * p.x.signum()));
            e
        },
    );
    let side_right = sampled_segment(
        "side_right",
        6,
        move |s| Point2::from(cuff_r.coords * (1.0 - s) + cap_r.coords * s),
        move |p, s| {
            let mut e = base(p);
            e[1] = ParamEffect::new(1.0 - s, X * 0.5);
            e
        },
    );
    let cap_back = sampled_segment(
        "cap_back",
        6,
        move |s| Point2::from(cap_r.coords * (1.0 - s) + cap_c.coords * s),
        move |p, _| base(p),
    );
    let cap_front = sampled_segment(
        "cap_front",
        6,
        move |s| Point2::from(cap_c.coords * (1.0 - s) + cap_l.coords * s),
        move |p, _| base(p),
    );
    let side_left = sampled_segment(
        "side_left",
        6,
        move |s| Point2::from(cap_l.coords * (1.0 - s) + cuff_l.coords * s),
        move |p, s| {
            let mut e = base(p);
            e[1] = ParamEffect::new(s, -X * 0.5);
            e
        },
    );

    PieceTemplate { name: name.to_string(), segments: vec![cuff, side_right, cap_back, cap_front, side_left] }
}

pub fn tshirt_template() -> PatternTemplate {
    let front = tshirt_body("front", TSHIRT_R);
    let back = tshirt_body("back", 0.4 * TSHIRT_R);
    let sleeve_l = tshirt_sleeve("sleeve_left");
    let sleeve_r = tshirt_sleeve("sleeve_right");
    let pieces = vec![front, back, sleeve_l, sleeve_r];

    // Body segment order: hem 0, side_right 1, armhole_right 2,
    // shoulder_right 3, neck 4, shoulder_left 5, armhole_left 6, side_left 7.
    // Sleeve: cuff 0, side_right 1, cap_back 2, cap_front 3, side_left 4.
    let seams = vec![
        // Shoulders.
        SeamSpec { piece_a: 0, segment_a: 3, piece_b: 1, segment_b: 3, reversed: false },
        SeamSpec { piece_a: 0, segment_a: 5, piece_b: 1, segment_b: 5, reversed: false },
        // Side seams.
        SeamSpec { piece_a: 0, segment_a: 1, piece_b: 1, segment_b: 1, reversed: false },
        SeamSpec { piece_a: 0, segment_a: 7, piece_b: 1, segment_b: 7, reversed: false },
        // Left sleeve into left armholes. armhole_left runs tip->underarm,
        // cap_front runs center(tip)->cap_l(underarm): aligned. cap_back runs
        // underarm->center: back armhole_left runs tip->underarm: reversed.
        SeamSpec { piece_a: 2, segment_a: 3, piece_b: 0, segment_b: 6, reversed: false },
        SeamSpec { piece_a: 2, segment_a: 2, piece_b: 1, segment_b: 6, reversed: true },
        // Left sleeve underarm seam closes the tube.
        SeamSpec { piece_a: 2, segment_a: 1, piece_b: 2, segment_b: 4, reversed: true },
        // Right sleeve into right armholes. armhole_right runs
        // underarm->tip: cap_front (center->left end) pairs reversed.
        SeamSpec { piece_a: 3, segment_a: 3, piece_b: 0, segment_b: 2, reversed: true },
        SeamSpec { piece_a: 3, segment_a: 2, piece_b: 1, segment_b: 2, reversed: false },
        SeamSpec { piece_a: 3, segment_a: 1, piece_b: 3, segment_b: 4, reversed: true },
    ];

    PatternTemplate {
        garment_type: GarmentType::Tshirt,
        pieces,
        seams,
        defaults: SizingParams {
            garment_type: GarmentType::Tshirt,
            values: vec![TSHIRT_R, TSHIRT_W1, TSHIRT_W2, TSHIRT_H1, TSHIRT_H2, TSHIRT_L1],
        },
    }
}
