pub mod cli;
pub mod error;
pub mod face;
pub mod homology;
pub mod ideal;
pub mod io;
pub mod labeled;
pub mod lsquared;
pub mod monomial;
pub mod parse;
pub mod simplicial;
pub mod sweep;
