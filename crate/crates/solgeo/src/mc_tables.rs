//! Marching-cubes case tables, generated at first use.
//!
//! For every corner sign pattern the zero-crossing edges are linked into
//! loops on the cube surface and fan-triangulated.  Faces with four crossing
//! edges (the ambiguous saddle faces) are always resolved by isolating the
//! inside corners; the rule depends only on the shared face data, so
//! adjacent cells make the same choice and the extracted surface stays
//! watertight.  Loops are wound so triangle normals point toward positive
//! field values.

use once_cell::sync::Lazy;

/// Corner offsets within a cell, standard marching-cubes numbering: corners
/// 0..3 ring the bottom face, 4..7 the top.
pub const CORNER_OFFSETS: [[usize; 3]; 8] = [
    [0, 0, 0],
    [1, 0, 0],
    [1, 1, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 0, 1],
    [1, 1, 1],
    [0, 1, 1],
];

/// The twelve cube edges as corner pairs.
pub const EDGE_CORNERS: [(usize, usize); 12] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 0),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 4),
    (0, 4),
    (1, 5),
    (2, 6),
    (3, 7),
];

/// Face corner cycles, counterclockwise when viewed from outside the cube.
const FACE_CYCLES: [[usize; 4]; 6] = [
    [0, 3, 2, 1], // z = 0
    [4, 5, 6, 7], // z = 1
    [0, 1, 5, 4], // y = 0
    [3, 7, 6, 2], // y = 1
    [0, 4, 7, 3], // x = 0
    [1, 2, 6, 5], // x = 1
];

fn edge_between(a: usize, b: usize) -> u8 {
    EDGE_CORNERS
        .iter()
        .position(|&(p, q)| (p == a && q == b) || (p == b && q == a))
        .expect("face edges are cube edges") as u8
}

fn corner_midpoint(edge: u8) -> [f64; 3] {
    let (a, b) = EDGE_CORNERS[edge as usize];
    let (pa, pb) = (CORNER_OFFSETS[a], CORNER_OFFSETS[b]);
    [
        (pa[0] as f64 + pb[0] as f64) / 2.0,
        (pa[1] as f64 + pb[1] as f64) / 2.0,
        (pa[2] as f64 + pb[2] as f64) / 2.0,
    ]
}

/// Gradient of the trilinear interpolant of the corner values at `p`.
fn trilinear_gradient(values: &[f64; 8], p: [f64; 3]) -> [f64; 3] {
    let mut g = [0.0f64; 3];
    for (i, off) in CORNER_OFFSETS.iter().enumerate() {
        let w = |axis: usize| {
            if off[axis] == 1 {
                p[axis]
            } else {
                1.0 - p[axis]
            }
        };
        let dw = |axis: usize| if off[axis] == 1 { 1.0 } else { -1.0 };
        g[0] += values[i] * dw(0) * w(1) * w(2);
        g[1] += values[i] * w(0) * dw(1) * w(2);
        g[2] += values[i] * w(0) * w(1) * dw(2);
    }
    g
}

fn case_triangles(case: usize) -> Vec<[u8; 3]> {
    let inside = |corner: usize| case >> corner & 1 == 1;

    // collect the oriented cut segments face by face
    let mut links: Vec<Vec<u8>> = vec![Vec::new(); 12];
    let mut any = false;
    for cycle in &FACE_CYCLES {
        let edges: Vec<u8> = (0..4)
            .map(|k| edge_between(cycle[k], cycle[(k + 1) % 4]))
            .collect();
        let crossing: Vec<usize> = (0..4)
            .filter(|&k| inside(cycle[k]) != inside(cycle[(k + 1) % 4]))
            .collect();
        let mut connect = |a: u8, b: u8| {
            links[a as usize].push(b);
            links[b as usize].push(a);
            any = true;
        };
        match crossing.len() {
            0 => {}
            2 => connect(edges[crossing[0]], edges[crossing[1]]),
            4 => {
                // saddle face: isolate the inside corners so the choice is a
                // function of the face alone
                if inside(cycle[0]) {
                    connect(edges[3], edges[0]);
                    connect(edges[1], edges[2]);
                } else {
                    connect(edges[0], edges[1]);
                    connect(edges[2], edges[3]);
                }
            }
            n => unreachable!("face with {n} crossings"),
        }
    }
    if !any {
        return Vec::new();
    }

    // canonical corner data for orienting the loops
    let mut values = [0.0f64; 8];
    for (i, v) in values.iter_mut().enumerate() {
        *v = if inside(i) { -1.0 } else { 1.0 };
    }

    let mut visited = [false; 12];
    let mut triangles = Vec::new();
    for start in 0..12u8 {
        if visited[start as usize] || links[start as usize].is_empty() {
            continue;
        }
        let mut polygon = vec![start];
        visited[start as usize] = true;
        let mut prev = start;
        let mut cur = links[start as usize][0];
        while cur != start {
            visited[cur as usize] = true;
            polygon.push(cur);
            let next = if links[cur as usize][0] == prev {
                links[cur as usize][1]
            } else {
                links[cur as usize][0]
            };
            prev = cur;
            cur = next;
        }
        debug_assert!(polygon.len() >= 3);

        // wind the loop so normals point toward positive values
        let pts: Vec<[f64; 3]> = polygon.iter().map(|&e| corner_midpoint(e)).collect();
        let mut normal = [0.0f64; 3];
        let mut centroid = [0.0f64; 3];
        for i in 0..pts.len() {
            let p = pts[i];
            let q = pts[(i + 1) % pts.len()];
            normal[0] += (p[1] - q[1]) * (p[2] + q[2]);
            normal[1] += (p[2] - q[2]) * (p[0] + q[0]);
            normal[2] += (p[0] - q[0]) * (p[1] + q[1]);
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / pts.len() as f64;
            }
        }
        let grad = trilinear_gradient(&values, centroid);
        let dot: f64 = normal.iter().zip(grad).map(|(n, g)| n * g).sum();
        if dot < 0.0 {
            polygon.reverse();
        }
        for i in 1..polygon.len() - 1 {
            triangles.push([polygon[0], polygon[i], polygon[i + 1]]);
        }
    }
    triangles
}

/// Per-case triangle lists, each triangle a triple of cube edge indices.
pub static TRIANGLE_TABLE: Lazy<Vec<Vec<[u8; 3]>>> =
    Lazy::new(|| (0..256).map(case_triangles).collect());

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_full_cases_have_no_triangles() {
        assert!(TRIANGLE_TABLE[0].is_empty());
        assert!(TRIANGLE_TABLE[255].is_empty());
    }

    #[test]
    fn single_corner_cases_cut_one_triangle() {
        for corner in 0..8 {
            let tris = &TRIANGLE_TABLE[1usize << corner];
            assert_eq!(tris.len(), 1, "corner {corner}");
        }
    }

    #[test]
    fn triangles_use_only_crossing_edges_and_cover_them() {
        for case in 0..256usize {
            let inside = |c: usize| case >> c & 1 == 1;
            let crossing: Vec<u8> = (0..12u8)
                .filter(|&e| {
                    let (a, b) = EDGE_CORNERS[e as usize];
                    inside(a) != inside(b)
                })
                .collect();
            let mut used: Vec<u8> = TRIANGLE_TABLE[case]
                .iter()
                .flat_map(|t| t.iter().copied())
                .collect();
            used.sort_unstable();
            used.dedup();
            assert_eq!(used, crossing, "case {case}");
        }
    }

    #[test]
    fn triangle_counts_stay_in_marching_cubes_bounds() {
        // complementary cases need not triangulate identically (the saddle
        // rule isolates inside corners), but every case stays within the
        // 12-edge budget
        for case in 1..255usize {
            let n = TRIANGLE_TABLE[case].len();
            assert!(n >= 1 && n <= 10, "case {case}: {n} triangles");
        }
    }

    #[test]
    fn triangle_normals_point_toward_positive_values() {
        for case in 0..256usize {
            let inside = |c: usize| case >> c & 1 == 1;
            let mut values = [0.0f64; 8];
            for (i, v) in values.iter_mut().enumerate() {
                *v = if inside(i) { -1.0 } else { 1.0 };
            }
            for tri in &TRIANGLE_TABLE[case] {
                let p: Vec<[f64; 3]> = tri.iter().map(|&e| corner_midpoint(e)).collect();
                let u = [p[1][0] - p[0][0], p[1][1] - p[0][1], p[1][2] - p[0][2]];
                let v = [p[2][0] - p[0][0], p[2][1] - p[0][1], p[2][2] - p[0][2]];
                let n = [
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                let c = [
                    (p[0][0] + p[1][0] + p[2][0]) / 3.0,
                    (p[0][1] + p[1][1] + p[2][1]) / 3.0,
                    (p[0][2] + p[1][2] + p[2][2]) / 3.0,
                ];
                let g = trilinear_gradient(&values, c);
                let dot: f64 = n.iter().zip(g).map(|(a, b)| a * b).sum();
                assert!(dot > 0.0, "case {case}: inward triangle (dot {dot})");
            }
        }
    }
}
