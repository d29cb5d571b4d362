//! Supports, dimensions, minimal primes and heights.

mod dimension;
mod fitting;
mod primes;
mod support;

pub use dimension::{krull_dim, krull_dim_in, krull_dim_monomial, Dimension};
pub use fitting::{determinant, fitting_ideal_0};
pub use primes::{
    height, min_primes_containment_check, minimal_primes_monomial, ring_min_primes,
    verify_declared_min_primes, Containment, PrimeList, PrimeProvenance,
};
pub use support::{module_dim, supp_equal, supp_is_full, SupportHandle, SupportRoute};
