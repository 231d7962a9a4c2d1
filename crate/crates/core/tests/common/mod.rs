//! Shared samplers for the integration and acceptance suites. Everything is
//! seeded through the crate's own frozen generators so failures replay.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use iips_core::hunt::{gen_matrix, gen_weight, WeightKind};
use iips_core::linalg::{inverse, rank};
use iips_core::matrix::Matrix;
use iips_core::mp::mp_exists;
use iips_core::weight::{Weight, WeightTriple};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    gen_matrix(rng.gen(), rows, cols, bound)
}

pub fn rand_weight(rng: &mut ChaCha8Rng, dim: usize, kind: WeightKind, bound: i64) -> Weight {
    gen_weight(rng.gen(), dim, kind, bound)
}

/// Either signature or random-Hermitian, even odds.
pub fn rand_indefinite_weight(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Weight {
    let kind = if rng.gen() {
        WeightKind::Signature
    } else {
        WeightKind::RandomHermitian
    };
    rand_weight(rng, dim, kind, bound)
}

/// `(A, M, N)` with `A^[dag]` guaranteed to exist, by rejection.
pub fn sample_existing_triple(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    bound: i64,
    mixed_kinds: bool,
) -> (Matrix, Weight, Weight) {
    loop {
        let m = rng.gen_range(1..=max_dim);
        let n = rng.gen_range(1..=max_dim);
        let a = rand_matrix(rng, m, n, bound);
        let (wm, wn) = if mixed_kinds {
            (
                rand_indefinite_weight(rng, m, bound),
                rand_indefinite_weight(rng, n, bound),
            )
        } else {
            (
                rand_weight(rng, m, WeightKind::Signature, bound),
                rand_weight(rng, n, WeightKind::Signature, bound),
            )
        };
        if mp_exists(&a, &wm, &wn).unwrap().exists {
            return (a, wm, wn);
        }
    }
}

/// `(A, B, weights)` with both `A^[dag]` and `B^[dag]` existing, by rejection.
pub fn sample_existing_pair(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    bound: i64,
) -> (Matrix, Matrix, WeightTriple) {
    loop {
        let m = rng.gen_range(1..=max_dim);
        let n = rng.gen_range(1..=max_dim);
        let l = rng.gen_range(1..=max_dim);
        let a = rand_matrix(rng, m, n, bound);
        let b = rand_matrix(rng, n, l, bound);
        let wm = rand_weight(rng, m, WeightKind::Signature, bound);
        let wn = rand_weight(rng, n, WeightKind::Signature, bound);
        let wl = rand_weight(rng, l, WeightKind::Signature, bound);
        if mp_exists(&a, &wm, &wn).unwrap().exists && mp_exists(&b, &wn, &wl).unwrap().exists {
            return (a, b, WeightTriple::new(wm, wn, wl));
        }
    }
}

/// Random matrix of exact rank `r` (`r <= min(rows, cols)`), as a product of
/// a full-column-rank and a full-row-rank factor found by rejection.
pub fn rand_matrix_of_rank(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    r: usize,
    bound: i64,
) -> Matrix {
    assert!(r <= rows.min(cols));
    if r == 0 {
        return Matrix::zero(rows, cols);
    }
    let f = rand_full_column_rank(rng, rows, r, bound);
    let g = rand_full_row_rank(rng, r, cols, bound);
    f.mul(&g).unwrap()
}

pub fn rand_full_column_rank(rng: &mut ChaCha8Rng, rows: usize, r: usize, bound: i64) -> Matrix {
    assert!(r <= rows);
    loop {
        let f = rand_matrix(rng, rows, r, bound);
        if rank(&f) == r {
            return f;
        }
    }
}

pub fn rand_full_row_rank(rng: &mut ChaCha8Rng, r: usize, cols: usize, bound: i64) -> Matrix {
    assert!(r <= cols);
    loop {
        let g = rand_matrix(rng, r, cols, bound);
        if rank(&g) == r {
            return g;
        }
    }
}

pub fn rand_invertible(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Matrix {
    loop {
        let a = rand_matrix(rng, n, n, bound);
        if let Ok(_) = inverse(&a) {
            return a;
        }
    }
}

/// Random idempotent of rank `r`: `P = F (G F)^-1 G` with `G F` invertible.
pub fn rand_idempotent(rng: &mut ChaCha8Rng, n: usize, r: usize, bound: i64) -> Matrix {
    assert!(r <= n);
    if r == 0 {
        return Matrix::zero(n, n);
    }
    loop {
        let f = rand_full_column_rank(rng, n, r, bound);
        let g = rand_full_row_rank(rng, r, n, bound);
        if let Ok(gf_inv) = inverse(&g.mul(&f).unwrap()) {
            return f.mul(&gf_inv).unwrap().mul(&g).unwrap();
        }
    }
}
