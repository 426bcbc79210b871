//! Closed polyhedral primitives as boundary 2-complexes.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::Point3;
use crate::model::LarModel;

/// Builds a model from faces given as vertex loops, deriving the edges.
pub(crate) fn from_loops(v: Vec<Point3>, loops: Vec<Vec<usize>>) -> Result<LarModel> {
    let mut seen = HashMap::new();
    let mut ev = Vec::new();
    for l in &loops {
        for i in 0..l.len() {
            let (a, b) = (l[i], l[(i + 1) % l.len()]);
            seen.entry((a.min(b), a.max(b))).or_insert_with(|| {
                ev.push([a.min(b), a.max(b)]);
            });
        }
    }
    LarModel::new(3, v, ev, Some(loops))
}

/// Boundary surface of an `m x n x p` block of unit cubes, made of unit
/// squares.
pub fn cuboid_grid(shape: [usize; 3]) -> Result<LarModel> {
    if shape.contains(&0) {
        return Err(Error::invalid("cuboid grid dimensions must be positive"));
    }
    let mut ids: HashMap<[usize; 3], usize> = HashMap::new();
    let mut v: Vec<Point3> = Vec::new();
    let mut id = |p: [usize; 3], v: &mut Vec<Point3>| {
        *ids.entry(p).or_insert_with(|| {
            v.push(p.map(|x| x as f64));
            v.len() - 1
        })
    };
    let mut loops = Vec::new();
    for axis in 0..3 {
        let (u, w) = ((axis + 1) % 3, (axis + 2) % 3);
        for side in [0, shape[axis]] {
            for i in 0..shape[u] {
                for j in 0..shape[w] {
                    let corner = |di: usize, dj: usize| {
                        let mut p = [0; 3];
                        p[axis] = side;
                        p[u] = i + di;
                        p[w] = j + dj;
                        p
                    };
                    let mut quad = vec![corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)];
                    if side == 0 {
                        quad.reverse();
                    }
                    loops.push(quad.into_iter().map(|p| id(p, &mut v)).collect());
                }
            }
        }
    }
    from_loops(v, loops)
}

/// Prism over a regular `n`-gon of radius `r` and height `h`. Each lateral
/// face is one planar cell whose vertical sides are split into `k` edges.
pub fn cylinder(n: usize, r: f64, h: f64, k: usize) -> Result<LarModel> {
    if n < 3 {
        return Err(Error::invalid("a cylinder needs at least 3 sides"));
    }
    if r <= 0.0 || h <= 0.0 || k == 0 {
        return Err(Error::invalid("cylinder radius, height and subdivisions must be positive"));
    }
    let idx = |ring: usize, i: usize| ring * n + i % n;
    let mut v = Vec::with_capacity(n * (k + 1));
    for ring in 0..=k {
        let z = h * ring as f64 / k as f64;
        for i in 0..n {
            let a = 2.0 * PI * i as f64 / n as f64;
            v.push([r * a.cos(), r * a.sin(), z]);
        }
    }
    let mut loops = Vec::with_capacity(n + 2);
    for i in 0..n {
        let mut l: Vec<usize> = (0..=k).map(|ring| idx(ring, i + 1)).collect();
        l.extend((0..=k).rev().map(|ring| idx(ring, i)));
        loops.push(l);
    }
    loops.push((0..n).rev().map(|i| idx(0, i)).collect());
    loops.push((0..n).map(|i| idx(k, i)).collect());

    let mut ev = Vec::new();
    for ring in 0..=k {
        for i in 0..n {
            let (a, b) = (idx(ring, i), idx(ring, i + 1));
            ev.push([a.min(b), a.max(b)]);
        }
    }
    for ring in 0..k {
        for i in 0..n {
            ev.push([idx(ring, i), idx(ring + 1, i)]);
        }
    }
    // lateral faces only span the end rings; intermediate ring edges would
    // cross their interiors
    let ev: Vec<[usize; 2]> = ev
        .into_iter()
        .filter(|&[a, b]| {
            let (ra, rb) = (a / n, b / n);
            ra != rb || ra == 0 || ra == k
        })
        .collect();
    LarModel::new(3, v, ev, Some(loops))
}

/// Latitude-longitude polyhedron with `n` meridians and `m` bands.
pub fn sphere(n: usize, m: usize, r: f64) -> Result<LarModel> {
    if n < 3 || m < 2 {
        return Err(Error::invalid("a sphere needs at least 3 meridians and 2 bands"));
    }
    if r <= 0.0 {
        return Err(Error::invalid("sphere radius must be positive"));
    }
    let mut v = vec![[0.0, 0.0, -r]];
    for band in 1..m {
        let phi = -PI / 2.0 + PI * band as f64 / m as f64;
        for i in 0..n {
            let th = 2.0 * PI * i as f64 / n as f64;
            v.push([r * phi.cos() * th.cos(), r * phi.cos() * th.sin(), r * phi.sin()]);
        }
    }
    v.push([0.0, 0.0, r]);
    let north = v.len() - 1;
    let at = |ring: usize, i: usize| 1 + (ring - 1) * n + i % n;
    let mut loops = Vec::new();
    for i in 0..n {
        loops.push(vec![0, at(1, i + 1), at(1, i)]);
        loops.push(vec![north, at(m - 1, i), at(m - 1, i + 1)]);
    }
    for ring in 1..m - 1 {
        for i in 0..n {
            loops.push(vec![at(ring, i), at(ring, i + 1), at(ring + 1, i + 1), at(ring + 1, i)]);
        }
    }
    from_loops(v, loops)
}
