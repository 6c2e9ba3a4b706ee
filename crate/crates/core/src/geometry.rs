//! Simple polygons with exact rational coordinates and their vertex
//! visibility graphs.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde_json::Value;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: BigRational::from_integer(x.into()), y: BigRational::from_integer(y.into()) }
    }

    fn scaled(&self, f: &BigRational) -> Point {
        Point { x: &self.x * f, y: &self.y * f }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    RepeatedVertex { first: usize, second: usize },
    /// Edge `i` joins vertex `i` to vertex `i + 1 (mod n)`.
    EdgesIntersect { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RepeatedVertex { first, second } => write!(f, "vertices {first} and {second} coincide"),
            Violation::EdgesIntersect { first, second } => write!(f, "edges {first} and {second} intersect"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(Violation),
    #[error("cannot parse polygon: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Self {
        Polygon { vertices }
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Self {
        Polygon { vertices: coords.iter().map(|&(x, y)| Point::int(x, y)).collect() }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        let n = self.len();
        (&self.vertices[i], &self.vertices[(i + 1) % n])
    }

    pub fn reversed(&self) -> Polygon {
        let mut v = self.vertices.clone();
        v.reverse();
        Polygon { vertices: v }
    }

    pub fn scaled(&self, factor: &BigRational) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|p| p.scaled(factor)).collect() }
    }

    /// Parses `{"vertices": [["x", "y"], ...]}` where each coordinate is an
    /// integer or a `"num/den"` string.
    pub fn from_json(text: &str) -> Result<Polygon, GeometryError> {
        let value: Value = serde_json::from_str(text).map_err(|e| GeometryError::Parse(e.to_string()))?;
        let list = value
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| GeometryError::Parse("missing \"vertices\" array".into()))?;
        let mut vertices = Vec::with_capacity(list.len());
        for item in list {
            let pair = item
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| GeometryError::Parse(format!("expected a coordinate pair, got {item}")))?;
            vertices.push(Point::new(parse_coord(&pair[0])?, parse_coord(&pair[1])?));
        }
        Ok(Polygon { vertices })
    }

    pub fn to_json(&self) -> String {
        let coords: Vec<Value> = self
            .vertices
            .iter()
            .map(|p| Value::Array(vec![Value::String(p.x.to_string()), Value::String(p.y.to_string())]))
            .collect();
        serde_json::json!({ "vertices": coords }).to_string()
    }
}

fn parse_coord(v: &Value) -> Result<BigRational, GeometryError> {
    let text = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(GeometryError::Parse(format!("coordinate {other} is not an integer or fraction"))),
    };
    let bad = || GeometryError::Parse(format!("bad coordinate {text:?}"));
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(text.parse::<BigInt>().map_err(|_| bad())?)),
        Some((a, b)) => {
            let num = a.trim().parse::<BigInt>().map_err(|_| bad())?;
            let den = b.trim().parse::<BigInt>().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Sign of the cross product (b - a) x (c - a).
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Ordering {
    let cross = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    cross.cmp(&BigRational::zero())
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orientation(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal && o3 != Ordering::Equal && o4 != Ordering::Equal {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// The segments cross at a single point interior to both.
pub fn properly_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    o1 != Ordering::Equal && o2 != Ordering::Equal && o1 != o2 && o3 != Ordering::Equal && o4 != Ordering::Equal && o3 != o4
}

pub fn validate_simple_polygon(p: &Polygon) -> Result<(), GeometryError> {
    let n = p.len();
    if n < 3 {
        return Err(GeometryError::TooFewVertices(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if p.vertices[i] == p.vertices[j] {
                return Err(GeometryError::InvalidPolygon(Violation::RepeatedVertex { first: i, second: j }));
            }
        }
    }
    for i in 0..n {
        let (a, b) = p.edge(i);
        for j in i + 1..n {
            let (c, d) = p.edge(j);
            let bad = if j == i + 1 {
                // shares b == c
                on_segment(d, a, b) || on_segment(a, c, d)
            } else if i == 0 && j == n - 1 {
                // shares a == d
                on_segment(c, a, b) || on_segment(b, c, d)
            } else {
                segments_intersect(a, b, c, d)
            };
            if bad {
                return Err(GeometryError::InvalidPolygon(Violation::EdgesIntersect { first: i, second: j }));
            }
        }
    }
    Ok(())
}

pub fn on_boundary(p: &Polygon, q: &Point) -> bool {
    (0..p.len()).any(|i| {
        let (a, b) = p.edge(i);
        on_segment(q, a, b)
    })
}

/// Point in closed polygon: boundary counts as inside; otherwise an exact
/// crossing-number test with a half-open rule for vertices on the ray.
pub fn contains_point(p: &Polygon, q: &Point) -> bool {
    if on_boundary(p, q) {
        return true;
    }
    let mut inside = false;
    for i in 0..p.len() {
        let (a, b) = p.edge(i);
        if (a.y > q.y) != (b.y > q.y) {
            // x coordinate of the edge at height q.y, compared with q.x
            let x = &a.x + (&b.x - &a.x) * (&q.y - &a.y) / (&b.y - &a.y);
            if x > q.x {
                inside = !inside;
            }
        }
    }
    inside
}

fn midpoint(a: &Point, b: &Point) -> Point {
    let two = BigRational::from_integer(2.into());
    Point { x: (&a.x + &b.x) / &two, y: (&a.y + &b.y) / two }
}

/// Whether the closed segment between vertices `i` and `j` stays inside the
/// closed polygon.
pub fn vertices_see_each_other(p: &Polygon, i: usize, j: usize) -> bool {
    let n = p.len();
    if i == j {
        return true;
    }
    if (i + 1) % n == j || (j + 1) % n == i {
        return true;
    }
    let (a, b) = (&p.vertices[i], &p.vertices[j]);
    for e in 0..n {
        let (c, d) = p.edge(e);
        if properly_cross(a, b, c, d) {
            return false;
        }
    }
    // Boundary contacts along ab are polygon vertices lying on it; order them
    // by their position along the segment.
    let key = |q: &Point| if a.x != b.x { (&q.x - &a.x) / (&b.x - &a.x) } else { (&q.y - &a.y) / (&b.y - &a.y) };
    let mut contacts: Vec<(BigRational, &Point)> =
        p.vertices.iter().filter(|q| on_segment(q, a, b)).map(|q| (key(q), q)).collect();
    contacts.sort_by(|x, y| x.0.cmp(&y.0));
    contacts.windows(2).all(|w| contains_point(p, &midpoint(w[0].1, w[1].1)))
}

pub fn visibility_graph(p: &Polygon) -> Result<Graph, GeometryError> {
    validate_simple_polygon(p)?;
    let n = p.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if vertices_see_each_other(p, i, j) {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::new(n, &edges).expect("pairs are distinct and in range"))
}

/// Regular-ish convex polygon: `n` distinct lattice points on the parabola
/// `y = x^2` are in convex position.
pub fn convex_polygon(n: usize) -> Polygon {
    let mut pts: Vec<(i64, i64)> = (0..n as i64).map(|x| (x, x * x)).collect();
    pts.reverse();
    Polygon::from_ints(&pts)
}

/// Random simple polygon, star-shaped around the origin, with `n` vertices on
/// an integer grid of radius `r`.
pub fn random_star_polygon<R: Rng>(rng: &mut R, n: usize, r: i64) -> Polygon {
    assert!(n >= 3 && r >= 2);
    loop {
        let mut pts: Vec<(i64, i64)> = Vec::new();
        let mut guard = 0;
        while pts.len() < n && guard < 100 * n {
            guard += 1;
            let q = (rng.gen_range(-r..=r), rng.gen_range(-r..=r));
            if q == (0, 0) {
                continue;
            }
            // one point per direction from the origin
            if pts.iter().any(|&(x, y)| x * q.1 - y * q.0 == 0 && x * q.0 + y * q.1 > 0) {
                continue;
            }
            pts.push(q);
        }
        if pts.len() < n {
            continue;
        }
        pts.sort_by(|&a, &b| angle_cmp(a, b));
        let poly = Polygon::from_ints(&pts);
        if validate_simple_polygon(&poly).is_ok() {
            return poly;
        }
    }
}

fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |p: (i64, i64)| if p.1 > 0 || (p.1 == 0 && p.0 > 0) { 0 } else { 1 };
    // counterclockwise from the positive x axis
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a.0 * b.1 - a.1 * b.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn square_is_valid() {
        assert_eq!(validate_simple_polygon(&Polygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)])), Ok(()));
    }

    #[test]
    fn bowtie_edges_cross() {
        let p = Polygon::from_ints(&[(0, 0), (2, 2), (2, 0), (0, 2)]);
        assert_eq!(
            validate_simple_polygon(&p),
            Err(GeometryError::InvalidPolygon(Violation::EdgesIntersect { first: 0, second: 2 }))
        );
    }

    #[test]
    fn degenerate_inputs() {
        let p = Polygon::from_ints(&[(0, 0), (1, 0), (1, 0), (0, 1)]);
        assert!(matches!(
            validate_simple_polygon(&p),
            Err(GeometryError::InvalidPolygon(Violation::RepeatedVertex { first: 1, second: 2 }))
        ));
        assert_eq!(validate_simple_polygon(&Polygon::from_ints(&[(0, 0), (1, 0)])), Err(GeometryError::TooFewVertices(2)));
        // collinear spike folding back on itself
        let spike = Polygon::from_ints(&[(0, 0), (2, 0), (1, 0), (0, 1)]);
        assert!(validate_simple_polygon(&spike).is_err());
    }

    #[test]
    fn convex_gives_complete_graph() {
        for n in 3..=8 {
            let g = visibility_graph(&convex_polygon(n)).unwrap();
            assert_eq!(g.edge_count(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn l_shape() {
        let p = Polygon::from_ints(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        let g = visibility_graph(&p).unwrap();
        let missing: Vec<_> =
            (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).filter(|&(i, j)| !g.has_edge(i, j)).collect();
        assert_eq!(missing, vec![(1, 4), (2, 4), (2, 5)]);
    }

    #[test]
    fn grazing_a_reflex_vertex_is_visible() {
        // (0,0)-(2,2) passes exactly through the reflex corner (1,1)
        let p = Polygon::from_ints(&[(0, 0), (2, 0), (2, 2), (1, 2), (1, 1), (0, 1)]);
        let g = visibility_graph(&p).unwrap();
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn point_location() {
        let sq = Polygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert!(contains_point(&sq, &Point::int(1, 1)));
        assert!(contains_point(&sq, &Point::int(2, 1)));
        assert!(!contains_point(&sq, &Point::int(3, 1)));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices": [[0, 0], ["3/2", 0], ["3/2", "1/3"], [0, 1]]}"#;
        let p = Polygon::from_json(text).unwrap();
        assert_eq!(p.vertices[2].y, BigRational::new(1.into(), 3.into()));
        assert_eq!(Polygon::from_json(&p.to_json()).unwrap(), p);
        assert!(Polygon::from_json(r#"{"vertices": [[0, "1/0"]]}"#).is_err());
    }

    #[test]
    fn random_star_polygons_are_simple() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..12 {
            let p = random_star_polygon(&mut rng, n, 10);
            assert_eq!(p.len(), n);
            assert!(validate_simple_polygon(&p).is_ok());
        }
    }
}
