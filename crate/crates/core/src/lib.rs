//! Structural computations around inner forms of p-adic reductive groups:
//! root data and their Levi subgroups, Satake diagrams, Kottwitz groups,
//! local-to-global bookkeeping and Jacquet-Langlands transfer on
//! Grothendieck-group bases.

pub mod rootdata;
pub mod weyl;
pub mod levi;
pub mod kottwitz;
pub mod satake;
pub mod globalize;
pub mod grothendieck;
