#![allow(dead_code)]

use proptest::prelude::*;
use reesval_core::{ExponentVector, MonomialIdeal, RingContext};

pub fn ideal(d: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(
        RingContext::with_dimension(d).unwrap(),
        gens.iter()
            .map(|g| ExponentVector::new(g.to_vec()))
            .collect(),
    )
    .unwrap()
}

pub fn gens_of(j: &MonomialIdeal) -> Vec<Vec<u32>> {
    j.generators().iter().map(|g| g.coords().to_vec()).collect()
}

/// Proper nonzero monomial ideals in 1..=max_d variables with exponents <= max_e.
pub fn proper_ideal(
    max_d: usize,
    max_gens: usize,
    max_e: u32,
) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_d).prop_flat_map(move |d| {
        prop::collection::vec(prop::collection::vec(0..=max_e, d), 1..=max_gens).prop_filter_map(
            "unit ideal",
            move |gens| {
                let j = MonomialIdeal::new(
                    RingContext::with_dimension(d).unwrap(),
                    gens.into_iter().map(ExponentVector::new).collect(),
                )
                .unwrap();
                j.is_proper_nonzero().then_some(j)
            },
        )
    })
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let row_r = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row_r) {
                    *x = *x * a - *y * b;
                }
                let g = m[i].iter().fold(0, |g, &x| gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

/// Homogenized generators `(1, p)` / `(0, e_i)` on which `a . x >= b` is tight.
pub fn tight_rows(points: &[ExponentVector], normal: &[u32], offset: u64) -> Vec<Vec<i128>> {
    let d = normal.len();
    let mut rows = Vec::new();
    for p in points {
        let v: u64 = normal
            .iter()
            .zip(p.coords())
            .map(|(&a, &e)| u64::from(a * e))
            .sum();
        if v == offset {
            let mut r = vec![1i128];
            r.extend(p.coords().iter().map(|&e| i128::from(e)));
            rows.push(r);
        }
    }
    for i in 0..d {
        if normal[i] == 0 {
            let mut r = vec![0i128; d + 1];
            r[i + 1] = 1;
            rows.push(r);
        }
    }
    rows
}

/// Facets of conv(points) + orthant found by trying every primitive normal in
/// `[0, k]^d` and keeping the supporting hyperplanes whose tight set has rank d.
pub fn bruteforce_facets(points: &[ExponentVector], k: u32) -> Vec<(Vec<u32>, u64)> {
    let d = points[0].len();
    let mut out = Vec::new();
    for a in reesval_core::monomial::box_points(&vec![k; d]) {
        let a = a.into_coords();
        let g = a.iter().fold(0i128, |g, &x| gcd(g, i128::from(x)));
        if g != 1 {
            continue;
        }
        let b = points
            .iter()
            .map(|p| {
                a.iter()
                    .zip(p.coords())
                    .map(|(&x, &e)| u64::from(x * e))
                    .sum::<u64>()
            })
            .min()
            .unwrap();
        if rank(&tight_rows(points, &a, b)) == d {
            out.push((a, b));
        }
    }
    out.sort();
    out
}
