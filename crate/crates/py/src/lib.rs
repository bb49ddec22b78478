//! Python bindings: `Presentation` and `GroupExpr` classes plus free
//! functions for realization, Smith normal form, and the homomorphism
//! counting oracle. Torsion coefficients, matrix entries and exponents
//! cross the boundary as arbitrary-precision Python ints.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use corank_core::abelian::{abelianize, relation_matrix};
use corank_core::calculus::GroupExpr as CoreExpr;
use corank_core::linalg::{int_rank as core_int_rank, snf, IntMatrix};
use corank_core::oracle;
use corank_core::presentation::{Presentation as CorePresentation, Word};
use corank_core::realize;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finitely presented group, parsed from `< gens | relators >` text.
#[pyclass(frozen)]
struct Presentation {
    inner: CorePresentation,
}

#[pymethods]
impl Presentation {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let inner = CorePresentation::parse(text).map_err(value_error)?;
        Ok(Presentation { inner })
    }

    /// Builds a presentation from generator names and relators given as
    /// lists of (generator name, exponent) pairs.
    #[staticmethod]
    fn build(generators: Vec<String>, relators: Vec<Vec<(String, BigInt)>>) -> PyResult<Self> {
        let mut words = Vec::with_capacity(relators.len());
        for relator in relators {
            let mut syllables = Vec::with_capacity(relator.len());
            for (name, exponent) in relator {
                let index = generators
                    .iter()
                    .position(|g| *g == name)
                    .ok_or_else(|| value_error(format!("unknown generator `{name}`")))?;
                syllables.push((index, exponent));
            }
            words.push(Word::new(syllables));
        }
        let inner = CorePresentation::new(generators, words).map_err(value_error)?;
        Ok(Presentation { inner })
    }

    fn generators(&self) -> Vec<String> {
        self.inner.generators().to_vec()
    }

    /// Relators as lists of (generator name, exponent) pairs.
    fn relators(&self) -> Vec<Vec<(String, BigInt)>> {
        self.inner
            .relators()
            .iter()
            .map(|w| {
                w.syllables()
                    .iter()
                    .map(|s| {
                        (
                            self.inner.generators()[s.generator].clone(),
                            s.exponent.clone(),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    fn generator_count(&self) -> usize {
        self.inner.generator_count()
    }

    fn relator_count(&self) -> usize {
        self.inner.relator_count()
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    fn relation_matrix(&self) -> Vec<Vec<BigInt>> {
        let m = relation_matrix(&self.inner);
        (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
    }

    /// (betti, torsion coefficients) of the abelianization.
    fn abelian_invariants(&self) -> (usize, Vec<BigInt>) {
        let inv = abelianize(&self.inner);
        (inv.betti, inv.torsion)
    }

    fn betti(&self) -> usize {
        abelianize(&self.inner).betti
    }

    fn torsion(&self) -> Vec<BigInt> {
        abelianize(&self.inner).torsion
    }

    fn free_product(&self, other: &Presentation) -> Presentation {
        Presentation {
            inner: self.inner.free_product(&other.inner),
        }
    }

    fn direct_product(&self, other: &Presentation) -> Presentation {
        Presentation {
            inner: self.inner.direct_product(&other.inner),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Presentation(\"{}\")", self.inner)
    }

    fn __eq__(&self, other: &Presentation) -> bool {
        self.inner == other.inner
    }
}

/// A group expression over atoms `Z^n`, `C(m1,m2,...)`, `F(k)` combined
/// with `*` (free product) and `x` (direct product of abelian operands).
#[pyclass(frozen)]
struct GroupExpr {
    inner: CoreExpr,
}

#[pymethods]
impl GroupExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let inner = CoreExpr::parse(text).map_err(value_error)?;
        inner.validate().map_err(value_error)?;
        Ok(GroupExpr { inner })
    }

    #[staticmethod]
    fn free_abelian(n: usize) -> GroupExpr {
        GroupExpr {
            inner: CoreExpr::FreeAbelian(n),
        }
    }

    #[staticmethod]
    fn finite_abelian(factors: Vec<BigInt>) -> PyResult<GroupExpr> {
        let inner = CoreExpr::FiniteAbelian(factors);
        inner.validate().map_err(value_error)?;
        Ok(GroupExpr { inner })
    }

    #[staticmethod]
    fn free(k: usize) -> GroupExpr {
        GroupExpr {
            inner: CoreExpr::Free(k),
        }
    }

    fn free_product(&self, other: &GroupExpr) -> GroupExpr {
        GroupExpr {
            inner: self.inner.clone().free_product(other.inner.clone()),
        }
    }

    fn direct_product(&self, other: &GroupExpr) -> PyResult<GroupExpr> {
        let inner = self.inner.clone().direct_product(other.inner.clone());
        inner.validate().map_err(value_error)?;
        Ok(GroupExpr { inner })
    }

    /// (corank, betti, rank).
    fn invariants(&self) -> PyResult<(usize, usize, usize)> {
        let t = self.inner.invariants().map_err(value_error)?;
        Ok((t.corank, t.betti, t.rank))
    }

    /// The interval [corank, betti] bracketing the isotropy index.
    fn isotropy_bounds(&self) -> PyResult<(usize, usize)> {
        self.inner.isotropy_bounds().map_err(value_error)
    }

    /// (betti, torsion coefficients) of the abelianization, by rules.
    fn abelian_invariants(&self) -> PyResult<(usize, Vec<BigInt>)> {
        let inv = self.inner.abelian_invariants().map_err(value_error)?;
        Ok((inv.betti, inv.torsion))
    }

    fn is_torsion_free(&self) -> bool {
        self.inner.is_torsion_free()
    }

    fn to_presentation(&self) -> Presentation {
        Presentation {
            inner: self.inner.to_presentation(),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GroupExpr(\"{}\")", self.inner)
    }

    fn __eq__(&self, other: &GroupExpr) -> bool {
        self.inner == other.inner
    }
}

/// True exactly when (corank, betti, rank) is realizable:
/// corank = betti = 0, or 1 <= corank <= betti <= rank.
#[pyfunction]
fn validate_triple(corank: usize, betti: usize, rank: usize) -> bool {
    realize::TripleRequest::new(corank, betti, rank).is_admissible()
}

/// Witness expression for an admissible triple. Raises ValueError naming
/// the violated inequality otherwise.
#[pyfunction(name = "realize")]
fn realize_expr(corank: usize, betti: usize, rank: usize) -> PyResult<GroupExpr> {
    let inner = realize::realize(realize::TripleRequest::new(corank, betti, rank))
        .map_err(value_error)?;
    Ok(GroupExpr { inner })
}

/// Witness presentation on generators g1..gr for an admissible triple.
#[pyfunction]
fn realize_presentation(corank: usize, betti: usize, rank: usize) -> PyResult<Presentation> {
    let inner = realize::realize_presentation(realize::TripleRequest::new(corank, betti, rank))
        .map_err(value_error)?;
    Ok(Presentation { inner })
}

fn matrix_from_rows(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(value_error("all rows must have the same length"));
    }
    Ok(IntMatrix::from_fn(rows.len(), cols, |i, j| {
        rows[i][j].clone()
    }))
}

fn matrix_to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

type MatrixRows = Vec<Vec<BigInt>>;

/// Smith normal form of an integer matrix given as a list of rows.
/// Returns (U, D, V, diag) with U * A * V = D.
#[pyfunction]
fn smith_normal_form(
    rows: Vec<Vec<BigInt>>,
) -> PyResult<(MatrixRows, MatrixRows, MatrixRows, Vec<BigInt>)> {
    let result = snf(&matrix_from_rows(rows)?);
    Ok((
        matrix_to_rows(&result.u),
        matrix_to_rows(&result.d),
        matrix_to_rows(&result.v),
        result.diag,
    ))
}

/// Rank of an integer matrix over the integers.
#[pyfunction]
fn int_rank(rows: Vec<Vec<BigInt>>) -> PyResult<usize> {
    Ok(core_int_rank(&matrix_from_rows(rows)?))
}

/// Counts homomorphisms into Z/prime. Returns (prime, count, log_dim)
/// with count == prime ** log_dim.
#[pyfunction]
#[pyo3(signature = (p, prime, budget=None))]
fn count_homs(p: &Presentation, prime: u64, budget: Option<u64>) -> PyResult<(u64, u64, usize)> {
    let hc = oracle::count_homs(&p.inner, prime, budget.unwrap_or(oracle::DEFAULT_BUDGET))
        .map_err(value_error)?;
    Ok((hc.prime, hc.count, hc.log_dim))
}

/// Minimum hom-count dimension over the given primes; equals the Betti
/// number whenever some prime divides no torsion coefficient.
#[pyfunction]
#[pyo3(signature = (p, primes, budget=None))]
fn betti_oracle(p: &Presentation, primes: Vec<u64>, budget: Option<u64>) -> PyResult<usize> {
    oracle::betti_oracle(&p.inner, &primes, budget.unwrap_or(oracle::DEFAULT_BUDGET))
        .map_err(value_error)
}

/// The default prime list for a presentation: 2, 3, 5, 7, 11, 13 extended
/// until a prime exceeds every torsion coefficient.
#[pyfunction]
fn default_primes(p: &Presentation) -> Vec<u64> {
    oracle::primes_past_torsion(&abelianize(&p.inner))
}

#[pymodule]
fn corank(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_class::<GroupExpr>()?;
    m.add_function(wrap_pyfunction!(validate_triple, m)?)?;
    m.add_function(wrap_pyfunction!(realize_expr, m)?)?;
    m.add_function(wrap_pyfunction!(realize_presentation, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(int_rank, m)?)?;
    m.add_function(wrap_pyfunction!(count_homs, m)?)?;
    m.add_function(wrap_pyfunction!(betti_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(default_primes, m)?)?;
    Ok(())
}
