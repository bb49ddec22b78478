//! Abelianization invariants of a presentation: Betti number and torsion
//! coefficients, read off the Smith normal form of the relation matrix.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{snf, IntMatrix};
use crate::presentation::Presentation;

/// Invariants of the abelianized group `Z^betti + Z/t_1 + ... + Z/t_k`
/// with `t_1 | t_2 | ... | t_k`, each `t_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn free(betti: usize) -> AbelianInvariants {
        AbelianInvariants {
            betti,
            torsion: Vec::new(),
        }
    }
}

/// One row per relator, one column per generator; entry `(i, j)` is the
/// exponent sum of generator `j` in relator `i`.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    IntMatrix::from_fn(p.relator_count(), p.generator_count(), |i, j| {
        p.relators()[i].exponent_sum(j)
    })
}

/// Betti number and torsion coefficients of the abelianization.
///
/// `betti` is the generator count minus the integer rank of the relation
/// matrix; the torsion coefficients are the Smith diagonal entries above 1,
/// already in divisibility order.
pub fn abelianize(p: &Presentation) -> AbelianInvariants {
    let result = snf(&relation_matrix(p));
    let rank = result.diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = result
        .diag
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    AbelianInvariants {
        betti: p.generator_count() - rank,
        torsion,
    }
}
