//! Hereditarily finite iterative sets with atoms, families of setoids, the
//! categories they induce, and a finite-scale model of constructive set
//! theory with urelements.

pub mod category;
pub mod gen;
pub mod iterset;
pub mod lang;
pub mod model;
pub mod pullback;
pub mod report;
pub mod setoid;
