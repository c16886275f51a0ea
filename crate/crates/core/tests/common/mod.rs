#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use sigperm_core::{Permutation, SignedShape, Tabloid};

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn to_i64(v: &[usize]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// Every signed shape `(lambda|mu)` with `|lambda| + |mu| = n`.
pub fn shapes_of_size(n: usize) -> Vec<SignedShape> {
    let mut out = Vec::new();
    for a in 0..=n {
        for lam in partitions(a) {
            for mu in partitions(n - a) {
                out.push(SignedShape::new(&to_i64(&lam), &to_i64(&mu)).unwrap());
            }
        }
    }
    out
}

pub fn shapes_up_to(n: usize) -> Vec<SignedShape> {
    (1..=n).flat_map(shapes_of_size).collect()
}

/// A random partition of `n` built from a random composition.
fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Vec<i64> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let part = rng.gen_range(1..=left);
        parts.push(part as i64);
        left -= part;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub fn random_shape<R: Rng>(rng: &mut R, max_n: usize) -> SignedShape {
    let n = rng.gen_range(1..=max_n);
    let a = rng.gen_range(0..=n);
    SignedShape::new(&random_partition(rng, a), &random_partition(rng, n - a)).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).unwrap()
}

/// Rows of a random filling of `shape`, in row order, entries unsorted.
pub fn random_filling<R: Rng>(rng: &mut R, shape: &SignedShape) -> Vec<Vec<usize>> {
    let mut entries: Vec<usize> = (1..=shape.n()).collect();
    entries.shuffle(rng);
    let mut rows = Vec::new();
    let mut start = 0;
    for len in shape.parts() {
        rows.push(entries[start..start + len].to_vec());
        start += len;
    }
    rows
}

pub fn random_tabloid<R: Rng>(rng: &mut R, shape: &SignedShape) -> Tabloid {
    let rows = random_filling(rng, shape);
    let (lam, mu) = rows.split_at(shape.num_lambda_rows());
    Tabloid::from_rows(lam, mu).unwrap()
}
