//! Luna diagrams: the Dynkin diagram of the group decorated with one
//! glyph per spherical root and one circle per colour incidence, rendered
//! to monospaced text or to SVG.
//!
//! The drawing conventions are fixed: vertices sit on an integer grid six
//! character columns apart with a ten-column gap between components, the
//! lower fork vertex of a D component hangs below its branch vertex,
//! circles read `( )` (doubled `((o))`), path-sum roots mark their support
//! edges with `~`, fork-type roots print their coefficient digits next to
//! the diagram, and circles of one colour are joined by a line.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rootsys::{CompKind, RootSystem};
use crate::system::{build_colours, ColourKind, RootKind, SphericalSystem};

/// Where a circle sits relative to its vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Above,
    Center,
    Below,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CircleStyle {
    Plain,
    Doubled,
}

/// One circle: a colour incident to one vertex.
#[derive(Clone, Debug)]
pub struct CircleSlot {
    pub colour: usize,
    pub vertex: usize,
    pub side: Side,
    pub style: CircleStyle,
    /// Arrow marks on a top circle: the spherical root whose pairing is
    /// −1 and the direction pointing toward it.
    pub arrows: Vec<(usize, char)>,
}

/// The glyph drawn for one spherical root.
#[derive(Clone, Debug)]
pub enum RootGlyph {
    /// A simple spherical root: the circle pair above and below carries it.
    PairedCircles(usize),
    /// A doubled simple root: concentric circles around the vertex.
    DoubledCircle(usize),
    /// A path sum: wavy marks along the support edges, endpoints in path
    /// order.
    Zigzag(Vec<usize>),
    /// A fork-type root: its coefficient digit next to each support vertex.
    Digits(Vec<(usize, i64)>),
    /// An orthogonal pair sum: the joined circles below carry it.
    JoinedPair(usize, usize),
}

#[derive(Clone, Debug)]
pub struct RootMark {
    pub root: usize,
    pub glyph: RootGlyph,
}

/// A resolved drawing: everything the renderers need, nothing about the
/// system itself.
#[derive(Clone, Debug)]
pub struct DiagramLayout {
    /// Per vertex: character column and band (0 = chain row, 1 = lower
    /// fork vertices).
    pub positions: Vec<(i64, i64)>,
    /// Dynkin edges, each pair ascending.
    pub edges: Vec<(usize, usize)>,
    pub marks: Vec<RootMark>,
    pub circles: Vec<CircleSlot>,
    /// Circle indices joined by a line, consecutive members per colour.
    pub joins: Vec<(usize, usize)>,
}

/// Computes the canonical drawing of a validated system. The only choice
/// made here is which element of each simple spherical root's pair sits on
/// top at that vertex: the top circle must pair to at least −1 against
/// every spherical root, and when both elements qualify the lower-indexed
/// colour wins. A shared colour may sit on top at one vertex and below at
/// another; its joining line then runs diagonally.
pub fn layout(sys: &SphericalSystem) -> Result<DiagramLayout> {
    let rs = sys.group();
    let delta = build_colours(sys)?;
    let positions = vertex_grid(rs);

    let mut edges = Vec::new();
    for i in 0..rs.rank() {
        for j in i + 1..rs.rank() {
            if rs.adjacent(i, j) {
                edges.push((i, j));
            }
        }
    }

    let mut marks = Vec::new();
    for (j, root) in sys.sigma().iter().enumerate() {
        let support = root.vector.support();
        let kind = root.kind.ok_or_else(|| {
            Error::Layout(format!("spherical root {} has no catalogue shape", j + 1))
        })?;
        let glyph = match kind {
            RootKind::A1 | RootKind::A1Prime => {
                let v = *support.iter().next().expect("nonempty support");
                if kind == RootKind::A1 {
                    RootGlyph::PairedCircles(v)
                } else {
                    RootGlyph::DoubledCircle(v)
                }
            }
            RootKind::Am(_) => RootGlyph::Zigzag(path_order(rs, &support)),
            RootKind::A1xA1 => {
                let mut it = support.iter();
                RootGlyph::JoinedPair(*it.next().unwrap(), *it.next().unwrap())
            }
            RootKind::D3 | RootKind::Dm(_) => RootGlyph::Digits(
                support.iter().map(|&v| (v, root.vector.0[v])).collect(),
            ),
        };
        marks.push(RootMark { root: j, glyph });
    }

    let colours = delta.colours();
    let qualifies: Vec<bool> = colours
        .iter()
        .map(|c| c.row.iter().all(|&x| x >= -1))
        .collect();
    let names: Vec<&str> = colours.iter().map(|c| c.name.as_str()).collect();
    let mut pairs = Vec::new();
    for v in 0..rs.rank() {
        let moved = delta.delta_of_root(v);
        if moved.len() == 2 {
            let mut it = moved.iter();
            let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
            if colours[a].kind == ColourKind::A && colours[b].kind == ColourKind::A {
                pairs.push((v, a, b));
            }
        }
    }
    let top = top_choices(&pairs, &qualifies, &names)?;

    let mut circles: Vec<CircleSlot> = Vec::new();
    let mut joins = Vec::new();
    for (ci, c) in colours.iter().enumerate() {
        let style = if c.kind == ColourKind::APrime {
            CircleStyle::Doubled
        } else {
            CircleStyle::Plain
        };
        let mut prev: Option<usize> = None;
        for &v in &c.members {
            let side = match c.kind {
                ColourKind::A => {
                    if top.get(&v) == Some(&ci) {
                        Side::Above
                    } else {
                        Side::Below
                    }
                }
                ColourKind::APrime => Side::Center,
                ColourKind::B => {
                    if c.members.len() >= 2 {
                        Side::Below
                    } else {
                        Side::Center
                    }
                }
            };
            let arrows = if side == Side::Above {
                arrow_marks(sys, &c.row, &positions, v)
            } else {
                Vec::new()
            };
            let idx = circles.len();
            circles.push(CircleSlot {
                colour: ci,
                vertex: v,
                side,
                style,
                arrows,
            });
            if let Some(p) = prev {
                joins.push((p, idx));
            }
            prev = Some(idx);
        }
    }

    if cfg!(debug_assertions) {
        for v in 0..rs.rank() {
            let drawn = circles.iter().filter(|c| c.vertex == v).count();
            debug_assert_eq!(
                drawn,
                delta.delta_of_root(v).len(),
                "every colour moved by a vertex gets exactly one circle there"
            );
        }
    }

    Ok(DiagramLayout {
        positions,
        edges,
        marks,
        circles,
        joins,
    })
}

fn vertex_grid(rs: &RootSystem) -> Vec<(i64, i64)> {
    let mut positions = vec![(0i64, 0i64); rs.rank()];
    let mut cursor = 0i64;
    for comp in rs.components() {
        if comp.start > 0 {
            cursor += 10;
        }
        match comp.kind {
            CompKind::A => {
                for i in 0..comp.rank {
                    positions[comp.start + i] = (cursor + 6 * i as i64, 0);
                }
                cursor += 6 * (comp.rank as i64 - 1);
            }
            CompKind::D => {
                // Chain and upper fork vertex on the main row, lower fork
                // vertex one band down under the branch vertex.
                for i in 0..comp.rank - 1 {
                    positions[comp.start + i] = (cursor + 6 * i as i64, 0);
                }
                positions[comp.start + comp.rank - 1] = (cursor + 6 * (comp.rank as i64 - 3), 1);
                cursor += 6 * (comp.rank as i64 - 2);
            }
        }
    }
    positions
}

/// The support of a path-sum root, ordered along the path from its
/// lowest-indexed endpoint.
fn path_order(rs: &RootSystem, supp: &BTreeSet<usize>) -> Vec<usize> {
    let start = *supp
        .iter()
        .find(|&&v| {
            rs.neighbours(v)
                .into_iter()
                .filter(|u| supp.contains(u))
                .count()
                <= 1
        })
        .expect("a path support has an endpoint");
    let mut path = vec![start];
    let mut prev = None;
    while path.len() < supp.len() {
        let cur = *path.last().unwrap();
        match rs
            .neighbours(cur)
            .into_iter()
            .find(|&u| supp.contains(&u) && Some(u) != prev)
        {
            Some(u) => {
                prev = Some(cur);
                path.push(u);
            }
            None => break,
        }
    }
    path
}

/// The top circle at each simple spherical vertex, as colour index: the
/// lowest-indexed colour of the pair moved there whose row pairs to at
/// least −1 against every spherical root. Every valid table contains such
/// an element for each pair, so a failure here points at a corrupted table
/// upstream.
fn top_choices(
    pairs: &[(usize, usize, usize)],
    qualifies: &[bool],
    names: &[&str],
) -> Result<BTreeMap<usize, usize>> {
    let mut top = BTreeMap::new();
    for &(v, c1, c2) in pairs {
        let choice = if qualifies[c1] {
            c1
        } else if qualifies[c2] {
            c2
        } else {
            return Err(Error::Layout(format!(
                "neither {} nor {} may sit on top: both pair below -1 somewhere",
                names[c1], names[c2]
            )));
        };
        top.insert(v, choice);
    }
    Ok(top)
}

/// Arrows on a top circle at `vertex`: one per spherical root paired to
/// −1, pointing toward that root's support.
fn arrow_marks(
    sys: &SphericalSystem,
    row: &[i64],
    positions: &[(i64, i64)],
    vertex: usize,
) -> Vec<(usize, char)> {
    sys.sigma()
        .iter()
        .enumerate()
        .filter(|&(j, _)| row[j] == -1)
        .map(|(j, root)| {
            let cols: Vec<i64> = root
                .vector
                .support()
                .iter()
                .map(|&u| positions[u].0)
                .collect();
            let target = (cols.iter().min().unwrap() + cols.iter().max().unwrap()) / 2;
            let dir = if target < positions[vertex].0 { '<' } else { '>' };
            (j, dir)
        })
        .collect()
}

const MARGIN: i64 = 2;

struct Sheet {
    rows: Vec<Vec<u8>>,
    width: usize,
}

impl Sheet {
    fn new(width: usize) -> Self {
        Sheet {
            rows: Vec::new(),
            width,
        }
    }

    fn blank(&self) -> Vec<u8> {
        vec![b' '; self.width]
    }

    fn push(&mut self, row: Vec<u8>) -> usize {
        self.rows.push(row);
        self.rows.len() - 1
    }

    fn push_nonempty(&mut self, row: Vec<u8>) -> Option<usize> {
        if row.iter().all(|&b| b == b' ') {
            None
        } else {
            Some(self.push(row))
        }
    }

    fn finish(self) -> String {
        let mut out = String::new();
        for row in self.rows {
            let end = row.iter().rposition(|&b| b != b' ').map_or(0, |p| p + 1);
            out.push_str(std::str::from_utf8(&row[..end]).expect("ascii"));
            out.push('\n');
        }
        out
    }
}

fn put(row: &mut [u8], col: i64, ch: u8) {
    let c = col + MARGIN;
    if c >= 0 && (c as usize) < row.len() {
        row[c as usize] = ch;
    }
}

fn put_str(row: &mut [u8], col: i64, s: &str) {
    for (k, ch) in s.bytes().enumerate() {
        put(row, col + k as i64, ch);
    }
}

/// Edges marked by a path-sum root, pairs ascending.
fn zigzag_edges(l: &DiagramLayout) -> BTreeSet<(usize, usize)> {
    let mut set = BTreeSet::new();
    for mark in &l.marks {
        if let RootGlyph::Zigzag(path) = &mark.glyph {
            for w in path.windows(2) {
                set.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
    }
    set
}

/// Renders a layout to monospaced text; equal layouts produce identical
/// bytes.
pub fn render_text(l: &DiagramLayout) -> String {
    if l.positions.is_empty() {
        return "(empty diagram)\n".to_string();
    }
    let width = (l.positions.iter().map(|p| p.0).max().unwrap() + MARGIN + 8) as usize;
    let mut sheet = Sheet::new(width);
    let zigzag = zigzag_edges(l);
    let has_lower_band = l.positions.iter().any(|p| p.1 == 1);

    let mut circle_row: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vertex_row_of_band: BTreeMap<i64, usize> = BTreeMap::new();

    for band in 0..=i64::from(has_lower_band) {
        if band == 0 {
            for row in digit_rows(l, 0, &mut sheet) {
                sheet.push(row);
            }
        } else {
            let mut row = sheet.blank();
            for &(i, j) in &l.edges {
                if l.positions[i].1 != l.positions[j].1 {
                    let (lower, _) = if l.positions[i].1 == 1 { (i, j) } else { (j, i) };
                    let ch = if zigzag.contains(&(i.min(j), i.max(j))) {
                        b'~'
                    } else {
                        b'|'
                    };
                    put(&mut row, l.positions[lower].0, ch);
                }
            }
            sheet.push(row);
        }

        join_rows(l, band, Side::Above, &mut sheet);
        let mut above = sheet.blank();
        let mut above_circles = Vec::new();
        for (idx, c) in l.circles.iter().enumerate() {
            if c.side == Side::Above && l.positions[c.vertex].1 == band {
                draw_circle_with_arrows(&mut above, l.positions[c.vertex].0, c);
                above_circles.push(idx);
            }
        }
        if let Some(r) = sheet.push_nonempty(above) {
            for idx in above_circles {
                circle_row.insert(idx, r);
            }
        }

        let vrow = vertex_row(l, band, &zigzag, &mut sheet);
        let r = sheet.push(vrow);
        vertex_row_of_band.insert(band, r);
        for (idx, c) in l.circles.iter().enumerate() {
            if c.side == Side::Center && l.positions[c.vertex].1 == band {
                circle_row.insert(idx, r);
            }
        }

        let mut below = sheet.blank();
        let mut below_circles = Vec::new();
        for (idx, c) in l.circles.iter().enumerate() {
            if c.side == Side::Below && l.positions[c.vertex].1 == band {
                put_str(&mut below, l.positions[c.vertex].0 - 1, "( )");
                below_circles.push(idx);
            }
        }
        if let Some(r) = sheet.push_nonempty(below) {
            for idx in below_circles {
                circle_row.insert(idx, r);
            }
        }
        join_rows(l, band, Side::Below, &mut sheet);

        if band == 1 {
            for row in digit_rows(l, 1, &mut sheet) {
                sheet.push(row);
            }
        }
    }

    // Fork connectors: fill the column between the two vertex rows where
    // nothing else was drawn.
    if has_lower_band {
        let (r0, r1) = (vertex_row_of_band[&0], vertex_row_of_band[&1]);
        for &(i, j) in &l.edges {
            if l.positions[i].1 != l.positions[j].1 {
                let lower = if l.positions[i].1 == 1 { i } else { j };
                let ch = if zigzag.contains(&(i.min(j), i.max(j))) {
                    b'~'
                } else {
                    b'|'
                };
                for r in r0 + 1..r1 {
                    let col = (l.positions[lower].0 + MARGIN) as usize;
                    if sheet.rows[r][col] == b' ' {
                        sheet.rows[r][col] = ch;
                    }
                }
            }
        }
    }

    // Joins whose circles sit on different rows: a dotted tie.
    for &(a, b) in &l.joins {
        let (ra, rb) = (circle_row[&a], circle_row[&b]);
        if ra == rb {
            continue;
        }
        let (r1, x1, r2, x2) = if ra < rb {
            (ra, l.positions[l.circles[a].vertex].0, rb, l.positions[l.circles[b].vertex].0)
        } else {
            (rb, l.positions[l.circles[b].vertex].0, ra, l.positions[l.circles[a].vertex].0)
        };
        for r in r1 + 1..r2 {
            let x = x1 + (x2 - x1) * (r - r1) as i64 / (r2 - r1) as i64;
            let col = (x + MARGIN) as usize;
            if sheet.rows[r][col] == b' ' {
                sheet.rows[r][col] = b'.';
            }
        }
    }

    sheet.finish()
}

fn draw_circle_with_arrows(row: &mut [u8], col: i64, c: &CircleSlot) {
    put_str(row, col - 1, "( )");
    let mut lefts = 0;
    let mut rights = 0;
    for &(_, dir) in &c.arrows {
        if dir == '<' {
            put(row, col - 2 - lefts, b'<');
            lefts += 1;
        } else {
            put(row, col + 2 + rights, b'>');
            rights += 1;
        }
    }
}

/// One row per fork-type root with digits on this band, in root order.
fn digit_rows(l: &DiagramLayout, band: i64, sheet: &mut Sheet) -> Vec<Vec<u8>> {
    let mut rows = Vec::new();
    for mark in &l.marks {
        if let RootGlyph::Digits(digits) = &mark.glyph {
            let mut row = sheet.blank();
            let mut any = false;
            for &(v, coeff) in digits {
                if l.positions[v].1 == band {
                    put_str(&mut row, l.positions[v].0, &coeff.to_string());
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    rows
}

/// One row per joined colour on this band and side: `/__\` above the
/// circles, `\__/` below them.
fn join_rows(l: &DiagramLayout, band: i64, side: Side, sheet: &mut Sheet) {
    let mut by_colour: BTreeMap<usize, Vec<(i64, i64)>> = BTreeMap::new();
    for &(a, b) in &l.joins {
        let (ca, cb) = (&l.circles[a], &l.circles[b]);
        if ca.side != side
            || cb.side != side
            || l.positions[ca.vertex].1 != band
            || l.positions[cb.vertex].1 != band
        {
            continue;
        }
        let xa = l.positions[ca.vertex].0;
        let xb = l.positions[cb.vertex].0;
        by_colour
            .entry(ca.colour)
            .or_default()
            .push((xa.min(xb), xa.max(xb)));
    }
    for segments in by_colour.values() {
        let mut row = sheet.blank();
        for &(x1, x2) in segments {
            let (open, close) = if side == Side::Above {
                (b'/', b'\\')
            } else {
                (b'\\', b'/')
            };
            put(&mut row, x1 + 1, open);
            for x in x1 + 2..x2 - 1 {
                put(&mut row, x, b'_');
            }
            put(&mut row, x2 - 1, close);
        }
        sheet.push(row);
    }
}

fn vertex_row(
    l: &DiagramLayout,
    band: i64,
    zigzag: &BTreeSet<(usize, usize)>,
    sheet: &mut Sheet,
) -> Vec<u8> {
    let mut row = sheet.blank();
    for &(i, j) in &l.edges {
        if l.positions[i].1 == band && l.positions[j].1 == band {
            let (x1, x2) = (l.positions[i].0.min(l.positions[j].0), l.positions[i].0.max(l.positions[j].0));
            let ch = if zigzag.contains(&(i, j)) { b'~' } else { b'-' };
            for x in x1 + 1..x2 {
                put(&mut row, x, ch);
            }
        }
    }
    for &(x, b) in &l.positions {
        if b == band {
            put(&mut row, x, b'o');
        }
    }
    for c in &l.circles {
        if c.side == Side::Center && l.positions[c.vertex].1 == band {
            let x = l.positions[c.vertex].0;
            if c.style == CircleStyle::Doubled {
                put_str(&mut row, x - 2, "((o))");
            } else {
                put_str(&mut row, x - 1, "(o)");
            }
        }
    }
    row
}

fn xml_escape(ch: char) -> &'static str {
    match ch {
        '<' => "&lt;",
        '>' => "&gt;",
        _ => unreachable!("only arrow glyphs are escaped"),
    }
}

/// Renders a layout to a standalone SVG document; equal layouts produce
/// identical bytes.
pub fn render_svg(l: &DiagramLayout) -> String {
    use std::fmt::Write;

    let px = |v: usize| 20 + l.positions[v].0 * 7;
    let py = |v: usize| 50 + l.positions[v].1 * 70;
    let max_px = l.positions.iter().map(|p| 20 + p.0 * 7).max().unwrap_or(20);
    let max_py = l.positions.iter().map(|p| 50 + p.1 * 70).max().unwrap_or(50);
    let width = max_px + 40;
    let height = max_py + 80;
    let zigzag = zigzag_edges(l);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    for &(i, j) in &l.edges {
        let dash = if zigzag.contains(&(i, j)) {
            " stroke-dasharray=\"5,3\""
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#444\" stroke-width=\"2\"{dash}/>",
            px(i),
            py(i),
            px(j),
            py(j)
        );
    }
    let mut level = [0i64; 2];
    for mark in &l.marks {
        if let RootGlyph::Digits(digits) = &mark.glyph {
            let mut touched = [false; 2];
            for &(v, coeff) in digits {
                let band = l.positions[v].1 as usize;
                touched[band] = true;
                let y = if band == 0 {
                    py(v) - 26 - 13 * level[0]
                } else {
                    py(v) + 38 + 13 * level[1]
                };
                let _ = writeln!(
                    s,
                    "  <text x=\"{}\" y=\"{y}\" font-size=\"12\" text-anchor=\"middle\">{coeff}</text>",
                    px(v)
                );
            }
            for band in 0..2 {
                if touched[band] {
                    level[band] += 1;
                }
            }
        }
    }
    for v in 0..l.positions.len() {
        let _ = writeln!(
            s,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#000\"/>",
            px(v),
            py(v)
        );
    }
    let cy_of = |c: &CircleSlot| match c.side {
        Side::Above => py(c.vertex) - 22,
        Side::Center => py(c.vertex),
        Side::Below => py(c.vertex) + 22,
    };
    for c in &l.circles {
        let cx = px(c.vertex);
        let cy = cy_of(c);
        let _ = writeln!(
            s,
            "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"9\" fill=\"none\" stroke=\"#000\" stroke-width=\"2\"/>"
        );
        if c.style == CircleStyle::Doubled {
            let _ = writeln!(
                s,
                "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"13\" fill=\"none\" stroke=\"#000\" stroke-width=\"2\"/>"
            );
        }
    }
    for &(a, b) in &l.joins {
        let (ca, cb) = (&l.circles[a], &l.circles[b]);
        let (mut x1, y1) = (px(ca.vertex), cy_of(ca));
        let (mut x2, y2) = (px(cb.vertex), cy_of(cb));
        if y1 == y2 {
            if x1 > x2 {
                std::mem::swap(&mut x1, &mut x2);
            }
            x1 += 9;
            x2 -= 9;
        }
        let _ = writeln!(
            s,
            "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#000\" stroke-width=\"1\"/>"
        );
    }
    for c in &l.circles {
        let mut lefts = 0i64;
        let mut rights = 0i64;
        for &(_, dir) in &c.arrows {
            let x = if dir == '<' {
                lefts += 1;
                px(c.vertex) - 8 - 9 * lefts
            } else {
                rights += 1;
                px(c.vertex) + 8 + 9 * rights
            };
            let _ = writeln!(
                s,
                "  <text x=\"{x}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
                cy_of(c) + 5,
                xml_escape(dir)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
