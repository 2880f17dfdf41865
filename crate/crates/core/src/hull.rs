//! Exact facet enumeration for `conv(points) + R_{>=0}^d` by the double
//! description method.
//!
//! The polyhedron is homogenized to the cone generated by `(1, p)` for every
//! point and `(0, e_i)` for every unit ray. Its facets are the extreme rays of
//! the dual cone `{ y : <g, y> >= 0 for every generator g }`, which we build
//! one generator constraint at a time. All arithmetic is on integers with gcd
//! reduction, so no rounding ever happens.

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<i128>,
    /// Bitset of processed constraints that are tight on this ray.
    zeros: Vec<u64>,
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn is_superset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == *y)
}

fn popcount(a: &[u64]) -> u32 {
    a.iter().map(|w| w.count_ones()).sum()
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// Facets `(normal, offset)` meaning `normal . x >= offset`, for the
/// polyhedron `conv(points) + R_{>=0}^d`. The recession-cone face (normal 0)
/// is omitted. `points` must be non-empty and of common length `d >= 1`.
pub(crate) fn orthant_hull_facets(points: &[Vec<u32>]) -> Result<Vec<(Vec<i128>, i128)>> {
    let d = points
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::Internal("hull of an empty point set".into()))?;
    let dim = d + 1;

    // Constraint rows: unit rays first, then points.
    let mut rows: Vec<Vec<i128>> = (0..d)
        .map(|i| {
            let mut r = vec![0; dim];
            r[i + 1] = 1;
            r
        })
        .collect();
    for p in points {
        let mut r = Vec::with_capacity(dim);
        r.push(1);
        r.extend(p.iter().map(|&e| i128::from(e)));
        rows.push(r);
    }
    let words = rows.len().div_ceil(64);

    // Dual cone of the d rays and the first point: a simplicial cone whose
    // extreme rays are the columns of the inverse constraint matrix.
    let p0 = &rows[d];
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    {
        let mut coords = vec![0; dim];
        coords[0] = 1;
        rays.push(Ray {
            coords,
            zeros: vec![0; words],
        });
        for i in 0..d {
            let mut coords = vec![0; dim];
            coords[0] = -p0[i + 1];
            coords[i + 1] = 1;
            rays.push(Ray {
                coords,
                zeros: vec![0; words],
            });
        }
    }
    for ray in &mut rays {
        for (k, row) in rows.iter().enumerate().take(d + 1) {
            if dot(row, &ray.coords) == 0 {
                set_bit(&mut ray.zeros, k);
            }
        }
    }

    for (k, row) in rows.iter().enumerate().skip(d + 1) {
        let slack: Vec<i128> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        if slack.iter().all(|&s| s >= 0) {
            for (ray, s) in rays.iter_mut().zip(&slack) {
                if *s == 0 {
                    set_bit(&mut ray.zeros, k);
                }
            }
            continue;
        }

        let mut next = Vec::with_capacity(rays.len());
        for (i, ray) in rays.iter().enumerate() {
            if slack[i] < 0 {
                continue;
            }
            let mut kept = ray.clone();
            if slack[i] == 0 {
                set_bit(&mut kept.zeros, k);
                next.push(kept);
                continue;
            }
            next.push(kept);
            for (j, other) in rays.iter().enumerate() {
                if slack[j] >= 0 {
                    continue;
                }
                let common = intersect(&ray.zeros, &other.zeros);
                if (popcount(&common) as usize) + 2 < dim {
                    continue;
                }
                let adjacent = !rays
                    .iter()
                    .enumerate()
                    .any(|(t, r)| t != i && t != j && is_superset(&r.zeros, &common));
                if !adjacent {
                    continue;
                }
                let coords: Vec<i128> = ray
                    .coords
                    .iter()
                    .zip(&other.coords)
                    .map(|(a, b)| slack[i] * b - slack[j] * a)
                    .collect();
                let mut zeros = common;
                set_bit(&mut zeros, k);
                next.push(Ray {
                    coords: primitive(coords),
                    zeros,
                });
            }
        }
        rays = next;
    }

    let mut facets = Vec::new();
    for ray in rays {
        debug_assert!(rows.iter().enumerate().all(|(k, row)| {
            let s = dot(row, &ray.coords);
            s >= 0 && (s == 0) == bit(&ray.zeros, k)
        }));
        let normal: Vec<i128> = ray.coords[1..].to_vec();
        if normal.iter().all(|&a| a == 0) {
            continue;
        }
        let g = normal.iter().fold(0i128, |g, &x| g.gcd(&x));
        let normal: Vec<i128> = normal.iter().map(|a| a / g).collect();
        if ray.coords[0] % g != 0 {
            return Err(Error::Internal("facet offset is not integral".into()));
        }
        facets.push((normal, -ray.coords[0] / g));
    }
    facets.sort();
    facets.dedup();
    Ok(facets)
}
