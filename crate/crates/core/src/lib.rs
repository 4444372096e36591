//! Graded monomial identities of elementary gradings on `M_n(F)`.
//!
//! An elementary grading is induced by a tuple `(g_1, ..., g_n)` of elements
//! of a finitely generated abelian group; the matrix unit `e_pq` has degree
//! `g_q - g_p`. Every question about multilinear monomial identities of such
//! a grading reduces to products of boolean pattern matrices, which this
//! crate evaluates with row bitsets.
//!
//! ```
//! use gradedpi_core::{classify_word, DegreeWord, ElementaryGrading, GradingTuple};
//!
//! let grading = ElementaryGrading::new(GradingTuple::cyclic(5, &[0, 1, 2]).unwrap());
//! let word = DegreeWord::scalars(grading.descriptor(), &[2, 2]).unwrap();
//! let report = classify_word(&grading, &word).unwrap();
//! assert!(report.is_identity && !report.is_trivial);
//! ```

pub mod classification;
pub mod enumeration;
pub mod error;
pub mod grading;
pub mod group;
pub mod monomial;
pub mod pattern;

pub use classification::{
    canonical_z_criteria, classify_almost_nondeg, equiv_canonical_z, family_verdict, CanonicalZCriteria,
    ClassificationResult, ClassifyOptions, FamilyMatch, Survivor,
};
pub use enumeration::{
    enumerate_minimal_identities, enumerate_minimal_identities_with, is_almost_nondegenerate, is_good_sequence,
    is_nondegenerate, search_key, AlmostNondegeneracy, DegeneracyReason, Execution, GoodSequenceVerdict,
    MinimalIdentitySet, Nondegeneracy,
};
pub use error::{Error, Result};
pub use grading::{canonical_form, is_isomorphic, Component, DifferenceProfile, ElementaryGrading, GradingTuple};
pub use group::{GroupDescriptor, GroupElement};
pub use monomial::{
    classify_word, eval_word, is_consequence, nonzero_rows, trivial_interval, ConsequenceWitness, DegreeWord,
    GeneratorSet, IdentityReport, Witness,
};
pub use pattern::PatternMatrix;
