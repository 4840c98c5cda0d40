//! Implicit-surface extraction on a regular grid (marching cubes) and the
//! triangle mesh container with OBJ export.

use std::collections::HashMap;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{SolError, SolResult};
use crate::mc_tables::{CORNER_OFFSETS, EDGE_CORNERS, TRIANGLE_TABLE};
use crate::scalar::Real;
use crate::sol::SolPoint;

/// Axis-aligned sampling grid.  `resolution` counts cells per axis; node
/// counts are one larger.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec<T> {
    pub min: [T; 3],
    pub max: [T; 3],
    pub resolution: [usize; 3],
}

impl<T: Real> GridSpec<T> {
    pub fn new(min: [T; 3], max: [T; 3], resolution: [usize; 3]) -> SolResult<Self> {
        for axis in 0..3 {
            if !(min[axis] < max[axis]) {
                return Err(SolError::InvalidParameter(
                    "grid bounds must satisfy min < max per axis".into(),
                ));
            }
            if resolution[axis] < 2 {
                return Err(SolError::InvalidParameter(
                    "grid resolution must be at least 2 per axis".into(),
                ));
            }
        }
        Ok(Self {
            min,
            max,
            resolution,
        })
    }

    /// Symmetric cube `[-half, half]^3` at equal resolution.
    pub fn cube(half: T, resolution: usize) -> SolResult<Self> {
        Self::new(
            [-half, -half, -half],
            [half, half, half],
            [resolution; 3],
        )
    }

    pub fn spacing(&self) -> [T; 3] {
        let mut s = [T::zero(); 3];
        for axis in 0..3 {
            s[axis] = (self.max[axis] - self.min[axis]) / T::of(self.resolution[axis] as f64);
        }
        s
    }

    fn node(&self, i: usize, j: usize, k: usize) -> SolPoint<T> {
        let s = self.spacing();
        SolPoint::new(
            self.min[0] + s[0] * T::of(i as f64),
            self.min[1] + s[1] * T::of(j as f64),
            self.min[2] + s[2] * T::of(k as f64),
        )
    }
}

/// Indexed triangle mesh in model coordinates.
#[derive(Clone, Debug)]
pub struct TriMesh<T> {
    pub vertices: Vec<SolPoint<T>>,
    pub triangles: Vec<[u32; 3]>,
}

impl<T> Default for TriMesh<T> {
    fn default() -> Self {
        Self {
            vertices: Vec::new(),
            triangles: Vec::new(),
        }
    }
}

impl<T: Real> TriMesh<T> {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    fn undirected_edges(&self) -> HashMap<(u32, u32), usize> {
        let mut edges = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let a = t[k];
                let b = t[(k + 1) % 3];
                let key = (a.min(b), a.max(b));
                *edges.entry(key).or_insert(0) += 1;
            }
        }
        edges
    }

    /// `V - E + F` with edges counted once per undirected pair.
    pub fn euler_characteristic(&self) -> i64 {
        let mut used = vec![false; self.vertices.len()];
        for t in &self.triangles {
            for &i in t {
                used[i as usize] = true;
            }
        }
        let v = used.iter().filter(|&&u| u).count() as i64;
        let e = self.undirected_edges().len() as i64;
        let f = self.triangles.len() as i64;
        v - e + f
    }

    /// True when every undirected edge borders exactly two triangles.
    pub fn is_closed(&self) -> bool {
        !self.is_empty() && self.undirected_edges().values().all(|&n| n == 2)
    }

    /// True when additionally every directed edge appears exactly once,
    /// i.e. neighbouring triangles are consistently oriented.
    pub fn is_consistently_oriented(&self) -> bool {
        let mut directed = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                *directed.entry((t[k], t[(k + 1) % 3])).or_insert(0) += 1;
            }
        }
        self.is_closed() && directed.values().all(|&n| n == 1)
    }

    pub fn bounds(&self) -> Option<([T; 3], [T; 3])> {
        let first = self.vertices.first()?;
        let mut min = first.to_array();
        let mut max = min;
        for p in &self.vertices {
            let a = p.to_array();
            for axis in 0..3 {
                min[axis] = min[axis].min(a[axis]);
                max[axis] = max[axis].max(a[axis]);
            }
        }
        Some((min, max))
    }

    /// Largest `|f|` over the mesh vertices.
    pub fn max_field_residual(&self, f: impl Fn(&SolPoint<T>) -> T) -> T {
        self.vertices
            .iter()
            .map(|p| f(p).abs())
            .fold(T::zero(), T::max)
    }

    /// ASCII OBJ with 17 significant digit coordinates; byte-identical for
    /// identical meshes.
    pub fn write_obj<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for p in &self.vertices {
            writeln!(
                out,
                "v {:.16e} {:.16e} {:.16e}",
                p.x.as_f64(),
                p.y.as_f64(),
                p.z.as_f64()
            )?;
        }
        for t in &self.triangles {
            writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
        }
        Ok(())
    }
}

/// Extracts the zero set of `f` over `grid` by marching cubes with linear
/// edge interpolation.
///
/// Non-finite samples are replaced by a large positive value (treated as
/// outside), so singular fields only need masking by the caller when the
/// sign matters.  Vertices on shared cell edges are emitted once, making
/// the mesh watertight across interior cells; an all-same-sign grid yields
/// an empty mesh.
pub fn march<T, F>(f: F, grid: &GridSpec<T>) -> TriMesh<T>
where
    T: Real,
    F: Fn(&SolPoint<T>) -> T + Sync,
{
    let [rx, ry, rz] = grid.resolution;
    let (nx, ny, nz) = (rx + 1, ry + 1, rz + 1);
    let node_index = |i: usize, j: usize, k: usize| -> u32 { ((k * ny + j) * nx + i) as u32 };

    // sample the field, parallel over z slabs, deterministic order
    let values: Vec<T> = (0..nz)
        .into_par_iter()
        .flat_map_iter(|k| {
            let mut slab = Vec::with_capacity(nx * ny);
            for j in 0..ny {
                for i in 0..nx {
                    let v = f(&grid.node(i, j, k));
                    slab.push(if v.is_finite() { v } else { T::of(1e30) });
                }
            }
            slab
        })
        .collect();

    let inside = |idx: u32| values[idx as usize] < T::zero();
    let mut mesh = TriMesh::default();
    let mut edge_vertices: HashMap<(u32, u8), u32> = HashMap::new();

    for k in 0..rz {
        for j in 0..ry {
            for i in 0..rx {
                let corner_nodes: Vec<u32> = CORNER_OFFSETS
                    .iter()
                    .map(|o| node_index(i + o[0], j + o[1], k + o[2]))
                    .collect();
                let mut case = 0usize;
                for (bit, &n) in corner_nodes.iter().enumerate() {
                    if inside(n) {
                        case |= 1 << bit;
                    }
                }
                if case == 0 || case == 255 {
                    continue;
                }
                let mut cell_vertex = |edge: u8, mesh: &mut TriMesh<T>| -> u32 {
                    let (ca, cb) = EDGE_CORNERS[edge as usize];
                    let (na, nb) = (corner_nodes[ca], corner_nodes[cb]);
                    let axis = {
                        let (oa, ob) = (CORNER_OFFSETS[ca], CORNER_OFFSETS[cb]);
                        (0..3).find(|&a| oa[a] != ob[a]).unwrap() as u8
                    };
                    let key = (na.min(nb), axis);
                    if let Some(&idx) = edge_vertices.get(&key) {
                        return idx;
                    }
                    let (va, vb) = (values[na as usize], values[nb as usize]);
                    let t = (va / (va - vb)).max(T::zero()).min(T::one());
                    let pa = {
                        let o = CORNER_OFFSETS[ca];
                        grid.node(i + o[0], j + o[1], k + o[2])
                    };
                    let pb = {
                        let o = CORNER_OFFSETS[cb];
                        grid.node(i + o[0], j + o[1], k + o[2])
                    };
                    let p = SolPoint::new(
                        pa.x + t * (pb.x - pa.x),
                        pa.y + t * (pb.y - pa.y),
                        pa.z + t * (pb.z - pa.z),
                    );
                    let idx = mesh.vertices.len() as u32;
                    mesh.vertices.push(p);
                    edge_vertices.insert(key, idx);
                    idx
                };
                for tri in &TRIANGLE_TABLE[case] {
                    let a = cell_vertex(tri[0], &mut mesh);
                    let b = cell_vertex(tri[1], &mut mesh);
                    let c = cell_vertex(tri[2], &mut mesh);
                    if a == b || b == c || a == c {
                        continue;
                    }
                    mesh.triangles.push([a, b, c]);
                }
            }
        }
    }
    mesh
}
