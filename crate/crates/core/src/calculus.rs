//! Rule-based invariants on a structured class of groups.
//!
//! Expressions are built from free abelian, finite abelian and free atoms,
//! combined by free product and (for abelian operands) direct product.
//! On this class, co-rank, Betti number and rank are all computed by
//! structural recursion:
//!
//! - `Z^n`: corank is 1 for n >= 1 (0 otherwise), betti = rank = n.
//! - finite abelian: corank = betti = 0, rank = number of invariant factors.
//! - `F(k)`: all three equal k.
//! - free product: all three components add.
//! - direct product of abelian operands: normalize to a canonical
//!   `Z^n x (Z/t_1 x ... x Z/t_k)` and read the invariants off that form.
//!
//! Direct products with non-abelian operands are rejected: their co-rank
//! admits no structural rule, so the calculus refuses rather than guess.
//!
//! Text syntax: atoms `Z^n` (bare `Z` means `Z^1`), `C(m1,m2,...)` with the
//! moduli forming a divisibility chain, `F(k)`; operators `*` (free
//! product) and `x` (direct product, binds tighter); parentheses group.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::abelian::AbelianInvariants;
use crate::presentation::{Presentation, Word};

/// A group in the structured class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    /// `Z^n`; `n = 0` is the trivial group.
    FreeAbelian(usize),
    /// Finite abelian group in invariant-factor form: each factor is at
    /// least 2 and divides the next. The list must not be empty.
    FiniteAbelian(Vec<BigInt>),
    /// Free group of rank `k`.
    Free(usize),
    FreeProduct(Box<GroupExpr>, Box<GroupExpr>),
    /// Both operands must be abelian (free abelian, finite abelian, or a
    /// direct product of such).
    DirectProduct(Box<GroupExpr>, Box<GroupExpr>),
}

/// The co-rank, Betti number and rank of a group in the class.
///
/// Always satisfies `corank = betti = 0` or `1 <= corank <= betti <= rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantTriple {
    pub corank: usize,
    pub betti: usize,
    pub rank: usize,
}

/// A malformed expression. These mark inputs outside the calculus, not
/// wrong answers.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("finite abelian atom needs at least one factor; use Z^0 for the trivial group")]
    EmptyFiniteAbelian,
    #[error("finite abelian factor {0} must be at least 2")]
    FactorTooSmall(BigInt),
    #[error("finite abelian factors must form a divisibility chain: {0} does not divide {1}")]
    BrokenChain(BigInt, BigInt),
    #[error(
        "direct products with non-abelian operands are not supported by the structural calculus"
    )]
    NonAbelianDirectProduct,
}

impl GroupExpr {
    pub fn free_abelian(n: usize) -> GroupExpr {
        GroupExpr::FreeAbelian(n)
    }

    pub fn finite_abelian<T: Into<BigInt>>(factors: impl IntoIterator<Item = T>) -> GroupExpr {
        GroupExpr::FiniteAbelian(factors.into_iter().map(Into::into).collect())
    }

    pub fn free(k: usize) -> GroupExpr {
        GroupExpr::Free(k)
    }

    pub fn free_product(self, other: GroupExpr) -> GroupExpr {
        GroupExpr::FreeProduct(Box::new(self), Box::new(other))
    }

    pub fn direct_product(self, other: GroupExpr) -> GroupExpr {
        GroupExpr::DirectProduct(Box::new(self), Box::new(other))
    }

    /// Whether the expression lies in the abelian subclass accepted as a
    /// direct-product operand.
    pub fn is_abelian(&self) -> bool {
        match self {
            GroupExpr::FreeAbelian(_) | GroupExpr::FiniteAbelian(_) => true,
            GroupExpr::DirectProduct(l, r) => l.is_abelian() && r.is_abelian(),
            GroupExpr::Free(_) | GroupExpr::FreeProduct(..) => false,
        }
    }

    /// True when no finite abelian atom occurs. On this class that is
    /// exactly torsion-freeness: free products and direct products of
    /// torsion-free groups stay torsion-free.
    pub fn is_torsion_free(&self) -> bool {
        match self {
            GroupExpr::FreeAbelian(_) | GroupExpr::Free(_) => true,
            GroupExpr::FiniteAbelian(_) => false,
            GroupExpr::FreeProduct(l, r) | GroupExpr::DirectProduct(l, r) => {
                l.is_torsion_free() && r.is_torsion_free()
            }
        }
    }

    /// Checks the structural invariants without computing anything.
    pub fn validate(&self) -> Result<(), ExprError> {
        match self {
            GroupExpr::FreeAbelian(_) | GroupExpr::Free(_) => Ok(()),
            GroupExpr::FiniteAbelian(factors) => validate_chain(factors),
            GroupExpr::FreeProduct(l, r) => {
                l.validate()?;
                r.validate()
            }
            GroupExpr::DirectProduct(l, r) => {
                if !l.is_abelian() || !r.is_abelian() {
                    return Err(ExprError::NonAbelianDirectProduct);
                }
                l.validate()?;
                r.validate()
            }
        }
    }

    /// Co-rank, Betti number and rank by structural recursion.
    pub fn invariants(&self) -> Result<InvariantTriple, ExprError> {
        Ok(match self {
            GroupExpr::FreeAbelian(n) => InvariantTriple {
                corank: usize::from(*n >= 1),
                betti: *n,
                rank: *n,
            },
            GroupExpr::FiniteAbelian(factors) => {
                validate_chain(factors)?;
                InvariantTriple {
                    corank: 0,
                    betti: 0,
                    rank: factors.len(),
                }
            }
            GroupExpr::Free(k) => InvariantTriple {
                corank: *k,
                betti: *k,
                rank: *k,
            },
            GroupExpr::FreeProduct(l, r) => {
                let a = l.invariants()?;
                let b = r.invariants()?;
                InvariantTriple {
                    corank: a.corank + b.corank,
                    betti: a.betti + b.betti,
                    rank: a.rank + b.rank,
                }
            }
            GroupExpr::DirectProduct(..) => {
                let (free_rank, torsion) = self.abelian_form()?;
                InvariantTriple {
                    corank: usize::from(free_rank >= 1),
                    betti: free_rank,
                    rank: free_rank + torsion.len(),
                }
            }
        })
    }

    /// The interval `[corank, betti]` that brackets the isotropy index.
    pub fn isotropy_bounds(&self) -> Result<(usize, usize), ExprError> {
        let t = self.invariants()?;
        Ok((t.corank, t.betti))
    }

    /// Betti number and torsion coefficients of the abelianization,
    /// computed by rules alone: free and direct products agree on the
    /// abelianization, so torsion from both operands is recombined into
    /// invariant-factor form.
    pub fn abelian_invariants(&self) -> Result<AbelianInvariants, ExprError> {
        Ok(match self {
            GroupExpr::FreeAbelian(n) => AbelianInvariants::free(*n),
            GroupExpr::Free(k) => AbelianInvariants::free(*k),
            GroupExpr::FiniteAbelian(factors) => {
                validate_chain(factors)?;
                AbelianInvariants {
                    betti: 0,
                    torsion: factors.clone(),
                }
            }
            GroupExpr::FreeProduct(l, r) | GroupExpr::DirectProduct(l, r) => {
                if let GroupExpr::DirectProduct(..) = self {
                    self.validate()?;
                }
                let a = l.abelian_invariants()?;
                let b = r.abelian_invariants()?;
                AbelianInvariants {
                    betti: a.betti + b.betti,
                    torsion: invariant_factors(a.torsion.into_iter().chain(b.torsion)),
                }
            }
        })
    }

    /// Canonical form `(free rank, invariant factors)` of an abelian
    /// expression. Errs on non-abelian subexpressions.
    fn abelian_form(&self) -> Result<(usize, Vec<BigInt>), ExprError> {
        match self {
            GroupExpr::FreeAbelian(n) => Ok((*n, Vec::new())),
            GroupExpr::FiniteAbelian(factors) => {
                validate_chain(factors)?;
                Ok((0, factors.clone()))
            }
            GroupExpr::DirectProduct(l, r) => {
                let (nl, tl) = l.abelian_form()?;
                let (nr, tr) = r.abelian_form()?;
                Ok((nl + nr, invariant_factors(tl.into_iter().chain(tr))))
            }
            GroupExpr::Free(_) | GroupExpr::FreeProduct(..) => {
                Err(ExprError::NonAbelianDirectProduct)
            }
        }
    }

    /// Lowers the expression to a concrete presentation. Generators are
    /// named `g1, g2, ...` consecutively in atom order, so the product
    /// constructors never need to rename.
    pub fn to_presentation(&self) -> Presentation {
        let mut next = 0;
        self.build_presentation(&mut next)
    }

    fn build_presentation(&self, next: &mut usize) -> Presentation {
        match self {
            GroupExpr::FreeAbelian(n) => {
                let gens = fresh_names(next, *n);
                let relators = pairwise_commutators(*n);
                Presentation::new(gens, relators).expect("generated names are valid")
            }
            GroupExpr::FiniteAbelian(factors) => {
                let gens = fresh_names(next, factors.len());
                let mut relators: Vec<Word> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, m)| Word::new([(i, m.clone())]))
                    .collect();
                relators.extend(pairwise_commutators(factors.len()));
                Presentation::new(gens, relators).expect("generated names are valid")
            }
            GroupExpr::Free(k) => {
                let gens = fresh_names(next, *k);
                Presentation::new(gens, Vec::new()).expect("generated names are valid")
            }
            GroupExpr::FreeProduct(l, r) => {
                let left = l.build_presentation(next);
                let right = r.build_presentation(next);
                left.free_product(&right)
            }
            GroupExpr::DirectProduct(l, r) => {
                let left = l.build_presentation(next);
                let right = r.build_presentation(next);
                left.direct_product(&right)
            }
        }
    }

    /// Parses the expression syntax.
    pub fn parse(text: &str) -> Result<GroupExpr, ExprParseError> {
        ExprParser::new(text).expression()
    }
}

fn fresh_names(next: &mut usize, n: usize) -> Vec<String> {
    (0..n)
        .map(|_| {
            *next += 1;
            format!("g{next}")
        })
        .collect()
}

fn pairwise_commutators(n: usize) -> Vec<Word> {
    let mut words = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            words.push(Word::new([(i, 1), (j, 1), (i, -1), (j, -1)]));
        }
    }
    words
}

fn validate_chain(factors: &[BigInt]) -> Result<(), ExprError> {
    if factors.is_empty() {
        return Err(ExprError::EmptyFiniteAbelian);
    }
    let two = BigInt::from(2);
    for factor in factors {
        if *factor < two {
            return Err(ExprError::FactorTooSmall(factor.clone()));
        }
    }
    for pair in factors.windows(2) {
        if !pair[1].is_multiple_of(&pair[0]) {
            return Err(ExprError::BrokenChain(pair[0].clone(), pair[1].clone()));
        }
    }
    Ok(())
}

/// Invariant factors of a direct sum of cyclic groups of the given orders.
///
/// Repeatedly replaces an incomparable pair `(a, b)` by `(gcd, lcm)`; this
/// preserves the group up to isomorphism and terminates in a multiset
/// totally ordered by divisibility. Factors of 1 are dropped.
pub fn invariant_factors(orders: impl IntoIterator<Item = BigInt>) -> Vec<BigInt> {
    let mut factors: Vec<BigInt> = orders.into_iter().filter(|m| !m.is_one()).collect();
    debug_assert!(factors.iter().all(|m| m.is_positive()));
    loop {
        let mut changed = false;
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                let (a, b) = (factors[i].clone(), factors[j].clone());
                if b.is_multiple_of(&a) || a.is_multiple_of(&b) {
                    continue;
                }
                factors[i] = a.gcd(&b);
                factors[j] = a.lcm(&b);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    factors.retain(|m| !m.is_one());
    factors.sort();
    factors
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::FreeAbelian(n) => write!(f, "Z^{n}"),
            GroupExpr::FiniteAbelian(factors) => {
                let parts: Vec<String> = factors.iter().map(BigInt::to_string).collect();
                write!(f, "C({})", parts.join(","))
            }
            GroupExpr::Free(k) => write!(f, "F({k})"),
            GroupExpr::FreeProduct(l, r) => {
                write!(f, "{l} * ")?;
                // parenthesize a right-nested free product so parsing
                // reproduces the tree
                if matches!(**r, GroupExpr::FreeProduct(..)) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            GroupExpr::DirectProduct(l, r) => {
                if matches!(**l, GroupExpr::FreeProduct(..)) {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, " x ")?;
                if matches!(**r, GroupExpr::DirectProduct(..) | GroupExpr::FreeProduct(..)) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
        }
    }
}

/// Expression parse failure with the byte offset where it happened.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at offset {position}")]
pub struct ExprParseError {
    pub position: usize,
    pub kind: ExprParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprParseErrorKind {
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("number too large")]
    NumberTooLarge,
    #[error("unexpected trailing input")]
    TrailingInput,
}

/// Recursive descent over: expression → term (`*` term)*,
/// term → factor (`x` factor)*, factor → atom | `(` expression `)`.
struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn new(text: &'a str) -> ExprParser<'a> {
        ExprParser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn expression(mut self) -> Result<GroupExpr, ExprParseError> {
        let expr = self.free_products()?;
        self.skip_ws();
        if self.pos < self.bytes.len() {
            return Err(self.err(ExprParseErrorKind::TrailingInput));
        }
        Ok(expr)
    }

    fn free_products(&mut self) -> Result<GroupExpr, ExprParseError> {
        let mut expr = self.direct_products()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                expr = expr.free_product(self.direct_products()?);
            } else {
                return Ok(expr);
            }
        }
    }

    fn direct_products(&mut self) -> Result<GroupExpr, ExprParseError> {
        let mut expr = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'x') {
                self.pos += 1;
                expr = expr.direct_product(self.factor()?);
            } else {
                return Ok(expr);
            }
        }
    }

    fn factor(&mut self) -> Result<GroupExpr, ExprParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.free_products()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err(ExprParseErrorKind::Expected("`)`")));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'Z') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    Ok(GroupExpr::FreeAbelian(self.small_number()?))
                } else {
                    Ok(GroupExpr::FreeAbelian(1))
                }
            }
            Some(b'F') => {
                self.pos += 1;
                self.open_paren()?;
                let k = self.small_number()?;
                self.close_paren()?;
                Ok(GroupExpr::Free(k))
            }
            Some(b'C') => {
                self.pos += 1;
                self.open_paren()?;
                let mut factors = vec![self.big_number()?];
                loop {
                    self.skip_ws();
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                        factors.push(self.big_number()?);
                    } else {
                        break;
                    }
                }
                self.close_paren()?;
                Ok(GroupExpr::FiniteAbelian(factors))
            }
            _ => Err(self.err(ExprParseErrorKind::Expected(
                "an atom `Z^n`, `C(...)`, `F(k)`, or `(`",
            ))),
        }
    }

    fn open_paren(&mut self) -> Result<(), ExprParseError> {
        self.skip_ws();
        if self.peek() != Some(b'(') {
            return Err(self.err(ExprParseErrorKind::Expected("`(`")));
        }
        self.pos += 1;
        Ok(())
    }

    fn close_paren(&mut self) -> Result<(), ExprParseError> {
        self.skip_ws();
        if self.peek() != Some(b')') {
            return Err(self.err(ExprParseErrorKind::Expected("`)`")));
        }
        self.pos += 1;
        Ok(())
    }

    fn big_number(&mut self) -> Result<BigInt, ExprParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(ExprParseErrorKind::Expected("a number")));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digit string"))
    }

    fn small_number(&mut self) -> Result<usize, ExprParseError> {
        self.skip_ws();
        let start = self.pos;
        let value = self.big_number()?;
        usize::try_from(&value).map_err(|_| ExprParseError {
            position: start,
            kind: ExprParseErrorKind::NumberTooLarge,
        })
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, kind: ExprParseErrorKind) -> ExprParseError {
        ExprParseError {
            position: self.pos,
            kind,
        }
    }
}
