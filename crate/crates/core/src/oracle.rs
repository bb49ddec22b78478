//! Brute-force Betti verification by counting homomorphisms into Z/p.
//!
//! For a prime `q`, the homomorphisms from a presented group into the
//! cyclic group of order `q` form a vector space over F_q, so their number
//! is an exact power `q^d`. The exponent `d` equals the Betti number plus
//! the number of torsion coefficients divisible by `q`; minimizing over
//! primes that dodge all torsion recovers the Betti number itself.
//!
//! Relators are evaluated by direct syllable traversal mod `q`. Nothing
//! here touches the relation matrix or the Smith normal form, so this is
//! an independent check of the main path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::AbelianInvariants;
use crate::presentation::Presentation;

/// Default cap on `prime ^ generator_count` enumerations per call.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Primes tried first when extending past torsion coefficients.
pub const BASE_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Exact homomorphism count into the cyclic group of prime order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomCount {
    pub prime: u64,
    pub count: u64,
    /// `count == prime ^ log_dim`.
    pub log_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("enumeration budget exceeded: {required} assignments at prime {prime}, budget {budget}")]
    BudgetExceeded {
        prime: u64,
        required: u128,
        budget: u64,
    },
    #[error("at least one prime is required")]
    NoPrimes,
}

/// Counts homomorphisms into Z/prime by exhausting all generator
/// assignments. Refuses when `prime ^ generators` exceeds `budget`.
pub fn count_homs(p: &Presentation, prime: u64, budget: u64) -> Result<HomCount, OracleError> {
    if !is_prime(prime) {
        return Err(OracleError::NotPrime(prime));
    }
    let gens = p.generator_count();
    let mut required: u128 = 1;
    for _ in 0..gens {
        required *= prime as u128;
        if required > budget as u128 {
            return Err(OracleError::BudgetExceeded {
                prime,
                required,
                budget,
            });
        }
    }
    let total = required as u64;

    // Reduce each relator to (generator, exponent mod prime) pairs once,
    // then enumerate assignments in plain machine arithmetic.
    let relators: Vec<Vec<(usize, u64)>> = p
        .relators()
        .iter()
        .map(|w| {
            w.syllables()
                .iter()
                .map(|s| (s.generator, mod_u64(&s.exponent, prime)))
                .collect()
        })
        .collect();

    let mut assignment = vec![0u64; gens];
    let mut count = 0u64;
    for _ in 0..total {
        let satisfied = relators.iter().all(|word| {
            let image = word.iter().fold(0u128, |acc, &(g, e)| {
                (acc + e as u128 * assignment[g] as u128) % prime as u128
            });
            image == 0
        });
        if satisfied {
            count += 1;
        }
        // odometer step
        for digit in assignment.iter_mut() {
            *digit += 1;
            if *digit == prime {
                *digit = 0;
            } else {
                break;
            }
        }
    }

    let mut log_dim = 0;
    let mut power = count;
    while power > 1 {
        debug_assert_eq!(power % prime, 0, "hom count must be a prime power");
        power /= prime;
        log_dim += 1;
    }
    Ok(HomCount {
        prime,
        count,
        log_dim,
    })
}

/// Minimum `log_dim` over the given primes: the Betti number whenever some
/// prime divides no torsion coefficient, otherwise an upper bound.
pub fn betti_oracle(p: &Presentation, primes: &[u64], budget: u64) -> Result<usize, OracleError> {
    if primes.is_empty() {
        return Err(OracleError::NoPrimes);
    }
    let mut best = usize::MAX;
    for &q in primes {
        best = best.min(count_homs(p, q, budget)?.log_dim);
    }
    Ok(best)
}

/// The base primes, extended with further primes until one exceeds every
/// torsion coefficient. Feeding the result to [`betti_oracle`] makes it
/// exact, since a prime beyond all torsion coefficients divides none.
pub fn primes_past_torsion(invariants: &AbelianInvariants) -> Vec<u64> {
    let mut primes: Vec<u64> = BASE_PRIMES.to_vec();
    let Some(max_torsion) = invariants.torsion.last() else {
        return primes;
    };
    let mut candidate = *primes.last().expect("base primes nonempty");
    while BigInt::from(*primes.last().unwrap()) <= *max_torsion {
        candidate += 2;
        if is_prime(candidate) {
            primes.push(candidate);
        }
    }
    primes
}

/// Whether any of `primes` divides no torsion coefficient; when false the
/// oracle value is only an upper bound on the Betti number.
pub fn some_prime_avoids_torsion(invariants: &AbelianInvariants, primes: &[u64]) -> bool {
    primes.iter().any(|&q| {
        let q = BigInt::from(q);
        invariants.torsion.iter().all(|t| !t.is_multiple_of(&q))
    })
}

fn mod_u64(e: &BigInt, prime: u64) -> u64 {
    e.mod_floor(&BigInt::from(prime))
        .to_u64()
        .expect("residue fits u64")
}

/// Deterministic Miller-Rabin for u64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelianize;

    fn parse(text: &str) -> Presentation {
        Presentation::parse(text).expect("parses")
    }

    fn homs(text: &str, prime: u64) -> HomCount {
        count_homs(&parse(text), prime, DEFAULT_BUDGET).expect("within budget")
    }

    #[test]
    fn involution_relator_mod_two_and_three() {
        // both assignments satisfy 2a = 0 mod 2
        assert_eq!(homs("< a | a^2 >", 2), HomCount { prime: 2, count: 2, log_dim: 1 });
        // only a = 0 satisfies 2a = 0 mod 3
        assert_eq!(homs("< a | a^2 >", 3), HomCount { prime: 3, count: 1, log_dim: 0 });
    }

    #[test]
    fn commutators_constrain_nothing() {
        assert_eq!(
            homs("< a, b | a b a^-1 b^-1 >", 5),
            HomCount { prime: 5, count: 25, log_dim: 2 }
        );
    }

    #[test]
    fn trivial_presentation_has_one_hom() {
        assert_eq!(
            count_homs(&Presentation::trivial(), 7, DEFAULT_BUDGET).unwrap(),
            HomCount { prime: 7, count: 1, log_dim: 0 }
        );
    }

    #[test]
    fn negative_exponents_reduce_correctly() {
        // 2a - 3b = 0 mod 5 has 5 solutions (b determined by a)
        assert_eq!(
            homs("< a, b | a^2 b^-3 >", 5),
            HomCount { prime: 5, count: 5, log_dim: 1 }
        );
    }

    #[test]
    fn oracle_needs_a_prime_avoiding_torsion() {
        // order six: both 2 and 3 divide the torsion coefficient
        let p = parse("< a | a^6 >");
        assert_eq!(betti_oracle(&p, &[2, 3], DEFAULT_BUDGET), Ok(1));
        assert_eq!(betti_oracle(&p, &[2, 3, 5], DEFAULT_BUDGET), Ok(0));
        assert_eq!(abelianize(&p).betti, 0);
    }

    #[test]
    fn single_odd_prime_suffices_for_two_torsion() {
        // 3 avoids the 2-torsion of Z_2 * Z_2 * Z_2
        let p = parse("< a, b, c | a^2, b^2, c^2 >");
        assert_eq!(betti_oracle(&p, &[3], DEFAULT_BUDGET), Ok(0));
    }

    #[test]
    fn torsion_free_presentations_need_no_extension() {
        let z3 = parse(
            "< a, b, c | a b a^-1 b^-1, a c a^-1 c^-1, b c b^-1 c^-1 >",
        );
        assert_eq!(betti_oracle(&z3, &[2, 3], DEFAULT_BUDGET), Ok(3));
    }

    #[test]
    fn oracle_matches_snf_on_fixtures() {
        for text in [
            "< a, b, c | a^2, b^2, c^2 >",
            "< a, b | a b a^-1 b^-1 >",
            "< a, b | >",
            "< a | a^2 >",
        ] {
            let p = parse(text);
            let inv = abelianize(&p);
            let primes = primes_past_torsion(&inv);
            assert_eq!(
                betti_oracle(&p, &primes, DEFAULT_BUDGET),
                Ok(inv.betti),
                "{text}"
            );
        }
    }

    #[test]
    fn budget_is_enforced() {
        let p = parse("< a, b, c, d, e, f, g, h | >");
        let err = count_homs(&p, 13, DEFAULT_BUDGET).unwrap_err();
        assert!(matches!(err, OracleError::BudgetExceeded { prime: 13, .. }));
        // a tiny budget rejects even small enumerations
        let err = count_homs(&parse("< a | >"), 5, 4).unwrap_err();
        assert!(matches!(err, OracleError::BudgetExceeded { .. }));
    }

    #[test]
    fn non_prime_moduli_are_rejected() {
        assert_eq!(
            count_homs(&parse("< a | >"), 6, DEFAULT_BUDGET),
            Err(OracleError::NotPrime(6))
        );
        assert_eq!(
            count_homs(&parse("< a | >"), 1, DEFAULT_BUDGET),
            Err(OracleError::NotPrime(1))
        );
        assert_eq!(betti_oracle(&parse("< a | >"), &[], DEFAULT_BUDGET), Err(OracleError::NoPrimes));
    }

    #[test]
    fn prime_list_extends_past_torsion() {
        let inv = AbelianInvariants {
            betti: 0,
            torsion: vec![BigInt::from(30)],
        };
        let primes = primes_past_torsion(&inv);
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]);
        assert!(some_prime_avoids_torsion(&inv, &primes));
        assert!(!some_prime_avoids_torsion(&inv, &[2, 3, 5]));
    }

    #[test]
    fn primality_test_spot_checks() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001)); // 101 * 9901
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
    }
}
