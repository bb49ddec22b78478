//! Shared fixtures and independent oracles for the integration tests.

#![allow(dead_code)]

use std::cmp::min;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use corank_core::calculus::GroupExpr;
use corank_core::linalg::IntMatrix;
use corank_core::presentation::{Presentation, Word};

/// Named presentations used across the test suite. All have at most four
/// generators so the homomorphism-counting oracle stays within budget.
pub fn corpus() -> Vec<(&'static str, Presentation)> {
    let fixtures = [
        ("trivial", "< | >"),
        ("infinite_cyclic", "< a | >"),
        ("free_rank_2", "< a, b | >"),
        ("z2_commutator", "< a, b | a b a^-1 b^-1 >"),
        (
            "z3_commutators",
            "< a, b, c | a b a^-1 b^-1, a c a^-1 c^-1, b c b^-1 c^-1 >",
        ),
        (
            "z4_commutators",
            "< a, b, c, d | a b a^-1 b^-1, a c a^-1 c^-1, a d a^-1 d^-1, \
             b c b^-1 c^-1, b d b^-1 d^-1, c d c^-1 d^-1 >",
        ),
        ("involution", "< a | a^2 >"),
        ("cyclic_6", "< a | a^6 >"),
        ("three_involutions", "< a, b, c | a^2, b^2, c^2 >"),
        (
            "z2_cross_c2",
            "< a, b, c | a b a^-1 b^-1, c^2, a c a^-1 c^-1, b c b^-1 c^-1 >",
        ),
        (
            "genus_two_surface",
            "< a, b, c, d | a b a^-1 b^-1 c d c^-1 d^-1 >",
        ),
        ("z_star_c2", "< a, b | b^2 >"),
        ("exponent_sums", "< a, b | a^2 b^-3 >"),
        ("c2_star_c3", "< a, b | a^2, b^3 >"),
        ("c4_x_c12", "< a, b | a^4, b^12, a b a^-1 b^-1 >"),
        ("baumslag_solitar_2_3", "< a, b | b a^2 b^-1 a^-3 >"),
        ("infinite_dihedral", "< a, b | a^2, a b a b >"),
        ("quaternion", "< a, b | a^4, a^2 b^-2, b a b a^-1 >"),
    ];
    fixtures
        .into_iter()
        .map(|(name, text)| {
            (
                name,
                Presentation::parse(text).unwrap_or_else(|e| panic!("{name}: {e}")),
            )
        })
        .collect()
}

const GENERATOR_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Random presentation with at most 4 generators and 4 relators, syllable
/// exponents in [-3, 3].
pub fn random_presentation(rng: &mut StdRng) -> Presentation {
    let gens = rng.gen_range(0..=4usize);
    let names: Vec<String> = GENERATOR_NAMES[..gens].iter().map(|s| s.to_string()).collect();
    let mut relators = Vec::new();
    if gens > 0 {
        for _ in 0..rng.gen_range(0..=4usize) {
            let syllables: Vec<(usize, i32)> = (0..rng.gen_range(1..=5usize))
                .map(|_| (rng.gen_range(0..gens), rng.gen_range(-3..=3)))
                .collect();
            relators.push(Word::new(syllables));
        }
    }
    Presentation::new(names, relators).expect("generated presentation is valid")
}

/// Random matrix with dimensions up to `max_dim` and entries in [-9, 9].
pub fn random_matrix(rng: &mut StdRng, max_dim: usize) -> IntMatrix {
    let rows = rng.gen_range(0..=max_dim);
    let cols = rng.gen_range(0..=max_dim);
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9..=9)))
}

/// Random expression of the structured class, with abelian-only operands
/// under direct products.
pub fn random_expr(rng: &mut StdRng, depth: usize) -> GroupExpr {
    if depth == 0 {
        return random_atom(rng);
    }
    match rng.gen_range(0..4u8) {
        0 => random_atom(rng),
        1 | 2 => random_expr(rng, depth - 1).free_product(random_expr(rng, depth - 1)),
        _ => random_abelian(rng, depth - 1).direct_product(random_abelian(rng, depth - 1)),
    }
}

fn random_atom(rng: &mut StdRng) -> GroupExpr {
    match rng.gen_range(0..3u8) {
        0 => GroupExpr::FreeAbelian(rng.gen_range(0..=3)),
        1 => GroupExpr::FiniteAbelian(random_chain(rng)),
        _ => GroupExpr::Free(rng.gen_range(0..=3)),
    }
}

fn random_abelian(rng: &mut StdRng, depth: usize) -> GroupExpr {
    if depth == 0 || rng.gen_bool(0.6) {
        match rng.gen_range(0..2u8) {
            0 => GroupExpr::FreeAbelian(rng.gen_range(0..=3)),
            _ => GroupExpr::FiniteAbelian(random_chain(rng)),
        }
    } else {
        random_abelian(rng, depth - 1).direct_product(random_abelian(rng, depth - 1))
    }
}

fn random_chain(rng: &mut StdRng) -> Vec<BigInt> {
    let mut chain = vec![BigInt::from(rng.gen_range(2..=6u32))];
    for _ in 0..rng.gen_range(0..=2usize) {
        let next = chain.last().unwrap() * rng.gen_range(1..=3u32);
        chain.push(next);
    }
    chain
}

/// Independent Smith-diagonal oracle: `d_1 * ... * d_i` equals the gcd of
/// all `i x i` minors. Uses cofactor-expansion determinants; shares no code
/// with the elimination in the library.
pub fn minors_gcd_diag(a: &IntMatrix) -> Vec<BigInt> {
    let k = min(a.rows(), a.cols());
    let mut diag = Vec::with_capacity(k);
    let mut previous = BigInt::one();
    for size in 1..=k {
        let mut gcd = BigInt::zero();
        for row_set in combinations(a.rows(), size) {
            for col_set in combinations(a.cols(), size) {
                let minor = submatrix_det(a, &row_set, &col_set);
                gcd = gcd.gcd(&minor);
            }
        }
        if gcd.is_zero() {
            while diag.len() < k {
                diag.push(BigInt::zero());
            }
            return diag;
        }
        diag.push(&gcd / &previous);
        previous = gcd;
    }
    diag
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            recurse(i + 1, n, k, current, out);
            current.pop();
        }
    }
    recurse(0, n, k, &mut current, &mut out);
    out
}

fn submatrix_det(a: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let grid: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| a[(i, j)].clone()).collect())
        .collect();
    cofactor_det(&grid)
}

fn cofactor_det(grid: &[Vec<BigInt>]) -> BigInt {
    let n = grid.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return grid[0][0].clone();
    }
    let mut total = BigInt::zero();
    for (j, pivot) in grid[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = grid[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = pivot * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}
