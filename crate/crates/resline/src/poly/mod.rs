//! Sparse multivariate polynomials, partitions, polynomial matrices and
//! one-forms.

pub mod matrix;
pub mod monomial;
pub mod multipoly;
pub mod oneform;
pub mod partition;

pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use multipoly::{weighted_checks, Alphabet, MultiPoly, WeightReport};
pub use oneform::PolyOneForm;
pub use partition::{
    enumerate_partitions, multinomial_general, partition_count_max_len, partition_counts, Partition,
};
