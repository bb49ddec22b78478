//! Witness construction for prescribed (corank, betti, rank) triples.
//!
//! A triple is admissible exactly when `c = b = 0` (any rank) or
//! `1 <= c <= b <= r`. For an admissible triple the witness is the free
//! product of free abelian atoms `Z^{b_1}, ..., Z^{b_c}` with
//! `b_1 = b - c + 1` and all later parts 1, followed by `r - b` copies of
//! `Z/2`. For `c = b = 0` the witness is a free product of `r` copies of
//! `Z/2` (the trivial group when `r = 0`). The partition choice makes the
//! output deterministic.

use thiserror::Error;

use crate::calculus::GroupExpr;
use crate::presentation::Presentation;

/// A requested (corank, betti, rank) combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleRequest {
    pub corank: usize,
    pub betti: usize,
    pub rank: usize,
}

impl TripleRequest {
    pub fn new(corank: usize, betti: usize, rank: usize) -> TripleRequest {
        TripleRequest {
            corank,
            betti,
            rank,
        }
    }

    /// `c = b = 0` or `1 <= c <= b <= r`.
    pub fn is_admissible(&self) -> bool {
        self.admissibility().is_ok()
    }

    /// Names the violated inequality for inadmissible triples.
    pub fn admissibility(&self) -> Result<(), RealizeError> {
        let TripleRequest {
            corank,
            betti,
            rank,
        } = *self;
        if corank == 0 && betti == 0 {
            return Ok(());
        }
        if corank == 0 {
            return Err(RealizeError::PositiveBettiNeedsCorank { betti });
        }
        if corank > betti {
            return Err(RealizeError::CorankExceedsBetti { corank, betti });
        }
        if betti > rank {
            return Err(RealizeError::BettiExceedsRank { betti, rank });
        }
        Ok(())
    }
}

/// Rejection of an inadmissible triple, naming the failed constraint.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("betti >= 1 requires corank >= 1 (got corank 0, betti {betti})")]
    PositiveBettiNeedsCorank { betti: usize },
    #[error("corank must not exceed betti (got corank {corank}, betti {betti})")]
    CorankExceedsBetti { corank: usize, betti: usize },
    #[error("betti must not exceed rank (got betti {betti}, rank {rank})")]
    BettiExceedsRank { betti: usize, rank: usize },
}

/// Builds the canonical witness expression for an admissible triple.
pub fn realize(request: TripleRequest) -> Result<GroupExpr, RealizeError> {
    request.admissibility()?;
    let TripleRequest {
        corank,
        betti,
        rank,
    } = request;

    let mut atoms: Vec<GroupExpr> = Vec::new();
    if corank > 0 {
        atoms.push(GroupExpr::FreeAbelian(betti - corank + 1));
        atoms.extend((1..corank).map(|_| GroupExpr::FreeAbelian(1)));
    }
    atoms.extend((betti..rank).map(|_| GroupExpr::finite_abelian([2])));

    Ok(atoms
        .into_iter()
        .reduce(GroupExpr::free_product)
        .unwrap_or(GroupExpr::FreeAbelian(0)))
}

/// The witness lowered to a concrete presentation on generators
/// `g1, ..., gr`.
pub fn realize_presentation(request: TripleRequest) -> Result<Presentation, RealizeError> {
    Ok(realize(request)?.to_presentation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelianize;
    use num_bigint::BigInt;

    fn t(c: usize, b: usize, r: usize) -> TripleRequest {
        TripleRequest::new(c, b, r)
    }

    #[test]
    fn admissibility_matches_the_constraint() {
        assert!(t(0, 0, 3).is_admissible());
        assert!(t(0, 0, 0).is_admissible());
        assert!(t(1, 1, 1).is_admissible());
        assert!(t(2, 3, 5).is_admissible());

        assert!(!t(2, 1, 5).is_admissible());
        assert!(!t(1, 3, 2).is_admissible());
        assert!(!t(0, 1, 1).is_admissible());
    }

    #[test]
    fn admissibility_agrees_with_the_necessity_bounds_exhaustively() {
        // corank <= betti <= rank, and betti >= 1 forces corank >= 1
        for c in 0..=10usize {
            for b in 0..=10usize {
                for r in 0..=10usize {
                    let necessary = c <= b && b <= r && (b == 0 || c >= 1);
                    assert_eq!(t(c, b, r).is_admissible(), necessary, "({c},{b},{r})");
                }
            }
        }
    }

    #[test]
    fn rejections_name_the_violated_inequality() {
        assert_eq!(
            t(0, 1, 1).admissibility(),
            Err(RealizeError::PositiveBettiNeedsCorank { betti: 1 })
        );
        assert_eq!(
            t(2, 1, 5).admissibility(),
            Err(RealizeError::CorankExceedsBetti { corank: 2, betti: 1 })
        );
        assert_eq!(
            t(1, 3, 2).admissibility(),
            Err(RealizeError::BettiExceedsRank { betti: 3, rank: 2 })
        );
    }

    #[test]
    fn witness_for_2_3_5() {
        let e = realize(t(2, 3, 5)).unwrap();
        assert_eq!(e.to_string(), "Z^2 * Z^1 * C(2) * C(2)");
        let inv = e.invariants().unwrap();
        assert_eq!((inv.corank, inv.betti, inv.rank), (2, 3, 5));
    }

    #[test]
    fn witness_for_1_1_1_is_the_integers() {
        let e = realize(t(1, 1, 1)).unwrap();
        assert_eq!(e, GroupExpr::FreeAbelian(1));
        assert!(e.is_torsion_free());
    }

    #[test]
    fn witness_for_0_0_0_is_trivial() {
        let e = realize(t(0, 0, 0)).unwrap();
        assert_eq!(e, GroupExpr::FreeAbelian(0));
        assert_eq!(e.to_presentation(), Presentation::trivial());
    }

    #[test]
    fn witness_for_3_3_3_is_three_infinite_cyclics() {
        let e = realize(t(3, 3, 3)).unwrap();
        assert_eq!(e.to_string(), "Z^1 * Z^1 * Z^1");
        let inv = e.invariants().unwrap();
        assert_eq!((inv.corank, inv.betti, inv.rank), (3, 3, 3));
        assert_eq!(abelianize(&e.to_presentation()).betti, 3);
    }

    #[test]
    fn zero_corank_witnesses_are_involution_products() {
        let e = realize(t(0, 0, 3)).unwrap();
        assert_eq!(e.to_string(), "C(2) * C(2) * C(2)");
        let inv = e.invariants().unwrap();
        assert_eq!((inv.corank, inv.betti, inv.rank), (0, 0, 3));
    }

    #[test]
    fn presentations_match_requested_shape() {
        let p = realize_presentation(t(1, 2, 3)).unwrap();
        assert_eq!(p.to_string(), "< g1, g2, g3 | g1 g2 g1^-1 g2^-1, g3^2 >");
        let inv = abelianize(&p);
        assert_eq!(inv.betti, 2);
        assert_eq!(inv.torsion, vec![BigInt::from(2)]);

        let q = realize_presentation(t(0, 0, 2)).unwrap();
        assert_eq!(q.to_string(), "< g1, g2 | g1^2, g2^2 >");

        let z_star_c2 = realize_presentation(t(1, 1, 2)).unwrap();
        assert_eq!(z_star_c2.to_string(), "< g1, g2 | g2^2 >");
        assert_eq!(abelianize(&z_star_c2).betti, 1);
    }

    #[test]
    fn torsion_free_exactly_when_betti_equals_rank() {
        for (c, b, r) in [(1, 1, 1), (2, 3, 3), (1, 2, 4), (0, 0, 2), (0, 0, 0)] {
            let e = realize(t(c, b, r)).unwrap();
            assert_eq!(e.is_torsion_free(), b == r, "({c},{b},{r})");
        }
    }
}
