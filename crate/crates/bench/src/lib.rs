//! Fixed inputs shared by the benchmarks under `benches/`.

use gradedpi_core::{DegreeWord, ElementaryGrading, GradingTuple};

pub fn integer_grading(entries: &[i64]) -> ElementaryGrading {
    GradingTuple::integers(entries).expect("non-empty tuple").into()
}

pub fn cyclic_grading(modulus: i64, entries: &[i64]) -> ElementaryGrading {
    GradingTuple::cyclic(modulus, entries)
        .expect("valid cyclic tuple")
        .into()
}

/// `(0, 1, ..., n-1)` over `Z`.
pub fn canonical(n: i64) -> ElementaryGrading {
    integer_grading(&(0..n).collect::<Vec<_>>())
}

pub fn word(grading: &ElementaryGrading, values: &[i64]) -> DegreeWord {
    DegreeWord::scalars(grading.descriptor(), values).expect("scalar word")
}
