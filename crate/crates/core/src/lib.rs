//! Exact jet calculus on second and third order frames: the jet groups, the
//! graded Lie algebra of 2-jets of vector fields, Cartan connections on the
//! 2-frame bundle of the line, projective structures and their BRS algebra.
//!
//! The guide in `book/` walks through each layer; its snippets run as
//! doctests.

pub mod brs;
pub mod cartan;
pub mod convention;
pub mod error;
pub mod io;
pub mod jet;
pub mod lie;
pub mod poly;
pub mod projective;
pub mod report;
pub mod scalar;
pub mod symba;
pub mod symtensor;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

macro_rules! book {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[cfg(doctest)]
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub mod $name {}
        )*
    };
}

book! {
    book_introduction => "introduction.md",
    book_jets => "jets.md",
    book_lie => "lie.md",
    book_symbolic => "symbolic.md",
    book_cartan => "cartan.md",
    book_projective => "projective.md",
    book_brs => "brs.md",
    book_cli => "cli.md",
}
