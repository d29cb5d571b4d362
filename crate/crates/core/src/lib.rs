pub mod checker;
pub mod error;
pub mod geometry;
pub mod groebner;
pub mod instance;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};

#[cfg(test)]
mod testgen;

// The guide's snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/groebner.md")]
    mod groebner {}
    #[doc = include_str!("../../../book/src/resolutions.md")]
    mod resolutions {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/checker.md")]
    mod checker {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
