//! Simplicial (Regge) geometry: hinges, dihedral and deficit angles,
//! discrete curvature sums and Gauss-Bonnet checks for 2-, 3- and
//! 4-dimensional complexes.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deficits may exceed the `2π` (or `4π`) threshold by this much.
pub const BOUND_TOLERANCE: f64 = 1e-12;

/// Relative volume below which a simplex counts as degenerate.
const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    dim: usize,
    vertex_count: usize,
    simplices: Vec<Vec<usize>>,
    /// Vertex coordinates of each top simplex, in the order of `simplices`.
    /// Shared vertices carry the same coordinates when the complex is
    /// embedded; edge-length complexes get per-simplex local frames.
    frames: Vec<Vec<DVector<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hinge {
    pub face: Vec<usize>,
    /// `(n−2)`-volume; 1 for the vertex hinges of a 2-complex.
    pub area: f64,
    pub incident: Vec<usize>,
    pub interior: bool,
    /// `2π − Σ dihedral angles`; `None` on the boundary.
    pub deficit: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReggeConvention {
    /// `Σ A·ε`.
    #[default]
    Paper,
    /// `2 Σ A·ε`, the normalization of `∫R dV`.
    Continuum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub interior_hinges: usize,
    pub max_deficit: f64,
    /// `max ε ≤ 2π`.
    pub ok: bool,
    /// `max ε ≤ 4π`, the threshold obtained from the curvature limit with
    /// the hinge area in place of `rt`.
    pub ok_4pi: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussBonnet {
    pub sum_deficits: f64,
    pub euler_characteristic: i64,
    pub expected: f64,
    pub residual: f64,
}

/// Complex description as read from JSON: either embedded vertex
/// coordinates or, for `n ≤ 3`, explicit edge lengths `[i, j, length]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_lengths: Option<Vec<(usize, usize, f64)>>,
    pub simplices: Vec<Vec<usize>>,
}

fn gram(points: &[DVector<f64>]) -> DMatrix<f64> {
    let k = points.len() - 1;
    let edges: Vec<DVector<f64>> = points[1..].iter().map(|p| p - &points[0]).collect();
    DMatrix::from_fn(k, k, |i, j| edges[i].dot(&edges[j]))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `k`-volume of the simplex spanned by `k + 1` points.
fn simplex_volume(points: &[DVector<f64>]) -> f64 {
    let k = points.len() - 1;
    if k == 0 {
        return 1.0;
    }
    gram(points).determinant().max(0.0).sqrt() / factorial(k)
}

fn max_edge(points: &[DVector<f64>]) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            m = m.max((&points[i] - &points[j]).norm());
        }
    }
    m
}

/// Component of `v` orthogonal to the span of `basis` (orthonormal).
fn reject(mut v: DVector<f64>, basis: &[DVector<f64>]) -> DVector<f64> {
    // Two passes keep the result orthogonal to round-off.
    for _ in 0..2 {
        for b in basis {
            let c = v.dot(b);
            v.axpy(-c, b, 1.0);
        }
    }
    v
}

fn orthonormal_basis(vectors: &[DVector<f64>]) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let r = reject(v.clone(), &basis);
        basis.push(r.normalize());
    }
    basis
}

/// Interior angle between `u` and `v`.
fn angle(u: &DVector<f64>, v: &DVector<f64>) -> f64 {
    let dot = u.dot(v);
    let cross2 = (u.norm_squared() * v.norm_squared() - dot * dot).max(0.0);
    cross2.sqrt().atan2(dot)
}

impl SimplicialComplex {
    pub fn from_vertices(vertices: Vec<Vec<f64>>, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let dim = Self::check_simplices(&simplices, vertices.len())?;
        let ambient = vertices.first().map_or(0, Vec::len);
        if vertices.iter().any(|v| v.len() != ambient) {
            return Err(Error::InvalidInput("vertices have mixed dimensions".into()));
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite vertex coordinate".into()));
        }
        if ambient < dim {
            return Err(Error::InvalidInput(format!(
                "{dim}-simplices need an embedding of dimension ≥ {dim}, got {ambient}"
            )));
        }
        let frames = simplices
            .iter()
            .map(|s| s.iter().map(|&i| DVector::from_column_slice(&vertices[i])).collect())
            .collect();
        Self::finish(dim, vertices.len(), simplices, frames)
    }

    /// Builds local frames from edge lengths (`n ≤ 3`) via the Cholesky
    /// factor of each simplex's Gram matrix.
    pub fn from_edge_lengths(
        vertex_count: usize,
        edges: &[(usize, usize, f64)],
        simplices: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let dim = Self::check_simplices(&simplices, vertex_count)?;
        if dim > 3 {
            return Err(Error::Unsupported(
                "edge-length input is limited to complexes of dimension ≤ 3".into(),
            ));
        }
        let mut lengths = BTreeMap::new();
        for &(i, j, l) in edges {
            if !(l.is_finite() && l > 0.0) || i >= vertex_count || j >= vertex_count || i == j {
                return Err(Error::InvalidInput(format!("invalid edge ({i}, {j}, {l})")));
            }
            lengths.insert((i.min(j), i.max(j)), l);
        }
        let length = |i: usize, j: usize| -> Result<f64> {
            if i == j {
                return Ok(0.0);
            }
            lengths
                .get(&(i.min(j), i.max(j)))
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("missing length for edge ({i}, {j})")))
        };
        let mut frames = Vec::with_capacity(simplices.len());
        for (index, s) in simplices.iter().enumerate() {
            let mut g = DMatrix::zeros(dim, dim);
            for a in 0..dim {
                for b in 0..dim {
                    let (la, lb, lab) = (length(s[0], s[a + 1])?, length(s[0], s[b + 1])?, length(s[a + 1], s[b + 1])?);
                    g[(a, b)] = 0.5 * (la * la + lb * lb - lab * lab);
                }
            }
            let chol = g.cholesky().ok_or_else(|| Error::DegenerateSimplex {
                index,
                vertices: s.clone(),
            })?;
            // Rows of L are edge vectors from the first vertex.
            let l = chol.l();
            let mut frame = vec![DVector::zeros(dim)];
            for a in 0..dim {
                frame.push(l.row(a).transpose());
            }
            frames.push(frame);
        }
        Self::finish(dim, vertex_count, simplices, frames)
    }

    pub fn from_spec(spec: &ComplexSpec) -> Result<Self> {
        match (&spec.vertices, &spec.edge_lengths) {
            (Some(v), None) => Self::from_vertices(v.clone(), spec.simplices.clone()),
            (None, Some(e)) => {
                let count = spec.simplices.iter().flatten().map(|i| i + 1).max().unwrap_or(0);
                Self::from_edge_lengths(count, e, spec.simplices.clone())
            }
            _ => Err(Error::InvalidInput(
                "complex needs exactly one of `vertices` or `edge_lengths`".into(),
            )),
        }
    }

    fn check_simplices(simplices: &[Vec<usize>], vertex_count: usize) -> Result<usize> {
        let Some(first) = simplices.first() else {
            return Err(Error::InvalidInput("complex has no simplices".into()));
        };
        let dim = first.len().saturating_sub(1);
        if !(2..=4).contains(&dim) {
            return Err(Error::InvalidInput(format!(
                "top simplices must have dimension 2, 3 or 4, got {dim}"
            )));
        }
        for s in simplices {
            if s.len() != dim + 1 {
                return Err(Error::InvalidInput("top simplices have mixed dimensions".into()));
            }
            if let Some(i) = s.iter().find(|&&i| i >= vertex_count) {
                return Err(Error::InvalidInput(format!("vertex index {i} out of range")));
            }
            let mut sorted = s.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("simplex {s:?} repeats a vertex")));
            }
        }
        Ok(dim)
    }

    fn finish(
        dim: usize,
        vertex_count: usize,
        simplices: Vec<Vec<usize>>,
        frames: Vec<Vec<DVector<f64>>>,
    ) -> Result<Self> {
        for (index, frame) in frames.iter().enumerate() {
            let scale = max_edge(frame).powi(dim as i32);
            if !(simplex_volume(frame) > DEGENERACY_TOL * scale) {
                return Err(Error::DegenerateSimplex {
                    index,
                    vertices: simplices[index].clone(),
                });
            }
        }
        Ok(Self {
            dim,
            vertex_count,
            simplices,
            frames,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Dihedral angle of top simplex `s` about the hinge `face`.
    fn dihedral(&self, s: usize, face: &[usize]) -> f64 {
        let simplex = &self.simplices[s];
        let frame = &self.frames[s];
        let pos = |v: usize| &frame[simplex.iter().position(|&x| x == v).expect("hinge vertex in simplex")];
        let opposite: Vec<usize> = simplex.iter().copied().filter(|v| !face.contains(v)).collect();
        let origin = pos(face[0]);
        let span: Vec<DVector<f64>> = face[1..].iter().map(|&v| pos(v) - origin).collect();
        let basis = orthonormal_basis(&span);
        let u = reject(pos(opposite[0]) - origin, &basis);
        let v = reject(pos(opposite[1]) - origin, &basis);
        angle(&u, &v)
    }

    fn hinge_area(&self, s: usize, face: &[usize]) -> f64 {
        let simplex = &self.simplices[s];
        let points: Vec<DVector<f64>> = face
            .iter()
            .map(|v| self.frames[s][simplex.iter().position(|x| x == v).unwrap()].clone())
            .collect();
        simplex_volume(&points)
    }

    /// All codimension-2 faces with their incidence and deficits, in
    /// lexicographic order of their vertex sets.
    pub fn hinges(&self) -> Vec<Hinge> {
        let mut incidence: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        let mut facets: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (index, s) in self.simplices.iter().enumerate() {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            for a in 0..sorted.len() {
                let mut facet = sorted.clone();
                facet.remove(a);
                *facets.entry(facet).or_default() += 1;
                for b in a + 1..sorted.len() {
                    let face: Vec<usize> = sorted
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != a && *i != b)
                        .map(|(_, v)| *v)
                        .collect();
                    incidence.entry(face).or_default().push(index);
                }
            }
        }
        incidence
            .into_iter()
            .map(|(face, incident)| {
                let interior = incident.iter().all(|&s| {
                    self.simplices[s].iter().filter(|v| !face.contains(v)).all(|&extra| {
                        let mut facet = face.clone();
                        facet.push(extra);
                        facet.sort_unstable();
                        facets.get(&facet) == Some(&2)
                    })
                });
                let deficit = interior.then(|| {
                    2.0 * PI - incident.iter().map(|&s| self.dihedral(s, &face)).sum::<f64>()
                });
                Hinge {
                    area: self.hinge_area(incident[0], &face),
                    face,
                    incident,
                    interior,
                    deficit,
                }
            })
            .collect()
    }

    /// Deficit angle at `face`, or a boundary-hinge error.
    pub fn deficit_angle(&self, face: &[usize]) -> Result<f64> {
        let mut key = face.to_vec();
        key.sort_unstable();
        let hinge = self
            .hinges()
            .into_iter()
            .find(|h| h.face == key)
            .ok_or_else(|| Error::InvalidInput(format!("{face:?} is not a hinge")))?;
        hinge.deficit.ok_or(Error::BoundaryHinge(key))
    }

    pub fn regge_curvature_sum(&self, convention: ReggeConvention) -> f64 {
        let sum: f64 = self
            .hinges()
            .iter()
            .filter_map(|h| h.deficit.map(|e| h.area * e))
            .sum();
        match convention {
            ReggeConvention::Paper => sum,
            ReggeConvention::Continuum => 2.0 * sum,
        }
    }

    pub fn bound_check(&self) -> BoundCheck {
        let deficits: Vec<f64> = self.hinges().iter().filter_map(|h| h.deficit).collect();
        let max_deficit = deficits.iter().copied().fold(0.0, f64::max);
        BoundCheck {
            interior_hinges: deficits.len(),
            max_deficit,
            ok: max_deficit <= 2.0 * PI + BOUND_TOLERANCE,
            ok_4pi: max_deficit <= 4.0 * PI + BOUND_TOLERANCE,
        }
    }

    /// `|Σε − 2πχ|` for a closed 2-complex.
    pub fn gauss_bonnet_check(&self) -> Result<GaussBonnet> {
        if self.dim != 2 {
            return Err(Error::InvalidInput(format!(
                "Gauss-Bonnet needs a 2-complex, got dimension {}",
                self.dim
            )));
        }
        let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for s in &self.simplices {
            for (a, b) in [(s[0], s[1]), (s[1], s[2]), (s[0], s[2])] {
                *edges.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let open = edges.values().filter(|&&n| n != 2).count();
        if open > 0 {
            return Err(Error::OpenSurface(open));
        }
        let hinges = self.hinges();
        let sum_deficits: f64 = hinges.iter().filter_map(|h| h.deficit).sum();
        let chi = hinges.len() as i64 - edges.len() as i64 + self.simplices.len() as i64;
        let expected = 2.0 * PI * chi as f64;
        Ok(GaussBonnet {
            sum_deficits,
            euler_characteristic: chi,
            expected,
            residual: (sum_deficits - expected).abs(),
        })
    }
}

/// Parses an OFF surface, fan-triangulating polygons.
pub fn parse_off(text: &str) -> Result<SimplicialComplex> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    let bad = |what: &str| Error::InvalidInput(format!("OFF: {what}"));
    if tokens.next() != Some("OFF") {
        return Err(bad("missing OFF header"));
    }
    let next_usize = |what: &str, tokens: &mut dyn Iterator<Item = &str>| -> Result<usize> {
        tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad(&format!("expected {what}")))
    };
    let nv = next_usize("vertex count", &mut tokens)?;
    let nf = next_usize("face count", &mut tokens)?;
    let _edges = next_usize("edge count", &mut tokens)?;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let mut v = Vec::with_capacity(3);
        for _ in 0..3 {
            v.push(
                tokens
                    .next()
                    .and_then(|t| t.parse::<f64>().ok())
                    .ok_or_else(|| bad("expected vertex coordinate"))?,
            );
        }
        vertices.push(v);
    }
    let mut simplices = Vec::new();
    for _ in 0..nf {
        let k = next_usize("polygon size", &mut tokens)?;
        if k < 3 {
            return Err(bad("faces need at least 3 vertices"));
        }
        let polygon: Vec<usize> = (0..k)
            .map(|_| next_usize("vertex index", &mut tokens))
            .collect::<Result<_>>()?;
        for i in 1..k - 1 {
            simplices.push(vec![polygon[0], polygon[i], polygon[i + 1]]);
        }
    }
    SimplicialComplex::from_vertices(vertices, simplices)
}

/// Triangulated `nx × ny` square grid in the plane.
pub fn flat_grid(nx: usize, ny: usize, spacing: f64) -> Result<SimplicialComplex> {
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidInput("grid needs at least one cell".into()));
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let vertices = (0..=ny)
        .flat_map(|j| (0..=nx).map(move |i| vec![i as f64 * spacing, j as f64 * spacing, 0.0]))
        .collect();
    let mut simplices = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            simplices.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            simplices.push(vec![id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    SimplicialComplex::from_vertices(vertices, simplices)
}

fn icosahedron_parts() -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let p = 0.5 * (1.0 + 5f64.sqrt());
    let vertices = vec![
        [-1.0, p, 0.0],
        [1.0, p, 0.0],
        [-1.0, -p, 0.0],
        [1.0, -p, 0.0],
        [0.0, -1.0, p],
        [0.0, 1.0, p],
        [0.0, -1.0, -p],
        [0.0, 1.0, -p],
        [p, 0.0, -1.0],
        [p, 0.0, 1.0],
        [-p, 0.0, -1.0],
        [-p, 0.0, 1.0],
    ];
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (vertices, faces)
}

fn to_complex(vertices: Vec<[f64; 3]>, faces: Vec<[usize; 3]>) -> Result<SimplicialComplex> {
    SimplicialComplex::from_vertices(
        vertices.into_iter().map(|v| v.to_vec()).collect(),
        faces.into_iter().map(|f| f.to_vec()).collect(),
    )
}

/// Regular icosahedron with edge length 2.
pub fn icosahedron() -> Result<SimplicialComplex> {
    let (v, f) = icosahedron_parts();
    to_complex(v, f)
}

/// Unit-sphere triangulation: the icosahedron subdivided `level` times with
/// vertices pushed onto the sphere.
pub fn icosphere(level: usize) -> Result<SimplicialComplex> {
    let (vertices, mut faces) = icosahedron_parts();
    let unit = |v: [f64; 3]| {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        [v[0] / n, v[1] / n, v[2] / n]
    };
    let mut vertices: Vec<[f64; 3]> = vertices.into_iter().map(unit).collect();
    for _ in 0..level {
        let mut midpoints: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut mid = |a: usize, b: usize, vertices: &mut Vec<[f64; 3]>| {
            *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (p, q) = (vertices[a], vertices[b]);
                vertices.push(unit([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                vertices.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let (ab, bc, ca) = (mid(a, b, &mut vertices), mid(b, c, &mut vertices), mid(c, a, &mut vertices));
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    to_complex(vertices, faces)
}

/// Unit cube surface, two triangles per face.
pub fn cube_surface() -> Result<SimplicialComplex> {
    let vertices: Vec<[f64; 3]> = (0..8)
        .map(|i| [(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64])
        .collect();
    let quads = [
        [0, 1, 3, 2],
        [4, 6, 7, 5],
        [0, 4, 5, 1],
        [2, 3, 7, 6],
        [0, 2, 6, 4],
        [1, 5, 7, 3],
    ];
    let faces = quads
        .iter()
        .flat_map(|q| [[q[0], q[1], q[2]], [q[0], q[2], q[3]]])
        .collect();
    to_complex(vertices, faces)
}

/// Flat torus `(cos u, sin u, cos v, sin v)/√2` in R⁴ on an `n × m` grid.
pub fn clifford_torus(n: usize, m: usize) -> Result<SimplicialComplex> {
    if n < 3 || m < 3 {
        return Err(Error::InvalidInput("torus grid needs at least 3 × 3 points".into()));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut vertices = Vec::with_capacity(n * m);
    for j in 0..m {
        let v = 2.0 * PI * j as f64 / m as f64;
        for i in 0..n {
            let u = 2.0 * PI * i as f64 / n as f64;
            vertices.push(vec![s * u.cos(), s * u.sin(), s * v.cos(), s * v.sin()]);
        }
    }
    let id = |i: usize, j: usize| (j % m) * n + (i % n);
    let mut simplices = Vec::with_capacity(2 * n * m);
    for j in 0..m {
        for i in 0..n {
            simplices.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            simplices.push(vec![id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    SimplicialComplex::from_vertices(vertices, simplices)
}

/// Boundary of the regular 5-simplex: six regular 4-simplices on the unit
/// vectors of R⁶.
pub fn five_simplex_boundary() -> Result<SimplicialComplex> {
    let vertices = (0..6)
        .map(|i| (0..6).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let simplices = (0..6)
        .map(|skip| (0..6).filter(|&v| v != skip).collect())
        .collect();
    SimplicialComplex::from_vertices(vertices, simplices)
}
