use serde::Serialize;

use super::{TessellationError, VertexSymbol};

/// Edge from vertex `ends[0]` in the base cell to vertex `ends[1]` in the
/// cell translated by `wrap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TilingEdge {
    pub ends: [usize; 2],
    pub wrap: (i32, i32),
}

/// An edge-to-edge tiling of a torus cell with straight-line geometry, used
/// to read off the cyclic order of edges at each vertex.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodicTiling {
    pub symbol: VertexSymbol,
    pub scale: usize,
    /// Cell periods after scaling.
    pub lattice: [(f64, f64); 2],
    pub positions: Vec<(f64, f64)>,
    pub edges: Vec<TilingEdge>,
    /// Counterclockwise `(edge, end)` pairs with their angle at each vertex.
    pub rotation: Vec<Vec<(usize, usize, f64)>>,
    /// Boundary of each face as `(edge, forward)` steps.
    pub faces: Vec<Vec<(usize, bool)>>,
}

struct Primitive {
    lattice: [(f64, f64); 2],
    positions: Vec<(f64, f64)>,
    edges: Vec<TilingEdge>,
}

fn primitive(sym: &VertexSymbol) -> Option<Primitive> {
    let h = 3f64.sqrt() / 2.0;
    let tri = [(1.0, 0.0), (0.5, h)];
    let e = |u: usize, v: usize, wrap: (i32, i32)| TilingEdge { ends: [u, v], wrap };
    Some(match sym.polygons.as_slice() {
        [4, 4, 4, 4] => Primitive {
            lattice: [(1.0, 0.0), (0.0, 1.0)],
            positions: vec![(0.0, 0.0)],
            edges: vec![e(0, 0, (1, 0)), e(0, 0, (0, 1))],
        },
        [3, 3, 3, 3, 3, 3] => Primitive {
            lattice: tri,
            positions: vec![(0.0, 0.0)],
            edges: vec![e(0, 0, (1, 0)), e(0, 0, (0, 1)), e(0, 0, (-1, 1))],
        },
        [6, 6, 6] => Primitive {
            lattice: tri,
            positions: vec![(0.0, 0.0), (0.5, h / 3.0)],
            edges: vec![e(0, 1, (0, 0)), e(1, 0, (1, 0)), e(1, 0, (0, 1))],
        },
        [3, 6, 3, 6] => Primitive {
            lattice: tri,
            positions: vec![(0.5, 0.0), (0.25, h / 2.0), (0.75, h / 2.0)],
            edges: vec![
                e(0, 1, (0, 0)),
                e(0, 2, (0, 0)),
                e(1, 2, (0, 0)),
                e(0, 2, (0, -1)),
                e(0, 1, (1, -1)),
                e(1, 2, (-1, 0)),
            ],
        },
        _ => return None,
    })
}

/// Builds a curated tiling on a `scale x scale` block of primitive cells.
pub fn build_tiling(sym: &VertexSymbol, scale: usize) -> Result<PeriodicTiling, TessellationError> {
    let p = primitive(sym).ok_or_else(|| TessellationError::UnsupportedTiling(sym.clone()))?;
    if scale == 0 {
        return Err(TessellationError::InvalidScale);
    }
    let k = scale as i32;
    let nv = p.positions.len();
    let id = |v: usize, x: i32, y: i32| ((y * k + x) as usize) * nv + v;
    let [l1, l2] = p.lattice;
    let mut positions = Vec::new();
    for y in 0..k {
        for x in 0..k {
            for &(px, py) in &p.positions {
                positions.push((px + x as f64 * l1.0 + y as f64 * l2.0, py + x as f64 * l1.1 + y as f64 * l2.1));
            }
        }
    }
    let mut edges = Vec::new();
    for y in 0..k {
        for x in 0..k {
            for pe in &p.edges {
                let (tx, ty) = (x + pe.wrap.0, y + pe.wrap.1);
                edges.push(TilingEdge {
                    ends: [id(pe.ends[0], x, y), id(pe.ends[1], tx.rem_euclid(k), ty.rem_euclid(k))],
                    wrap: (tx.div_euclid(k), ty.div_euclid(k)),
                });
            }
        }
    }
    let lattice = [(l1.0 * k as f64, l1.1 * k as f64), (l2.0 * k as f64, l2.1 * k as f64)];
    let mut rotation = vec![Vec::new(); positions.len()];
    for (ei, e) in edges.iter().enumerate() {
        let (a, b) = (positions[e.ends[0]], positions[e.ends[1]]);
        let dx = b.0 + e.wrap.0 as f64 * lattice[0].0 + e.wrap.1 as f64 * lattice[1].0 - a.0;
        let dy = b.1 + e.wrap.0 as f64 * lattice[0].1 + e.wrap.1 as f64 * lattice[1].1 - a.1;
        rotation[e.ends[0]].push((ei, 0, dy.atan2(dx)));
        rotation[e.ends[1]].push((ei, 1, (-dy).atan2(-dx)));
    }
    for r in &mut rotation {
        r.sort_by(|a, b| a.2.total_cmp(&b.2));
    }
    let faces = trace_faces(&edges, &rotation);
    Ok(PeriodicTiling {
        symbol: sym.clone(),
        scale,
        lattice,
        positions,
        edges,
        rotation,
        faces,
    })
}

/// Each face keeps its interior on the left: arriving at a vertex, leave by
/// the next edge clockwise.
fn trace_faces(edges: &[TilingEdge], rotation: &[Vec<(usize, usize, f64)>]) -> Vec<Vec<(usize, bool)>> {
    let mut seen = vec![[false; 2]; edges.len()];
    let mut faces = Vec::new();
    for e0 in 0..edges.len() {
        for t0 in 0..2 {
            if seen[e0][t0] {
                continue;
            }
            let mut face = Vec::new();
            let (mut e, mut t) = (e0, t0);
            while !seen[e][t] {
                seen[e][t] = true;
                face.push((e, t == 0));
                let v = edges[e].ends[1 - t];
                let r = &rotation[v];
                let i = r.iter().position(|&(re, rt, _)| re == e && rt == 1 - t).unwrap();
                let (ne, nt, _) = r[(i + r.len() - 1) % r.len()];
                e = ne;
                t = nt;
            }
            faces.push(face);
        }
    }
    faces
}

impl PeriodicTiling {
    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }
}
