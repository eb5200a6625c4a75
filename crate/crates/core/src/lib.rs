//! Lower bounds on q-ary pseudocodeword weights for LDPC codes over prime
//! fields, and tools to test them empirically on finite graph covers.
//!
//! The pieces compose in a fixed order: [`field`] arithmetic underpins the
//! Tanner graphs of [`code`], which [`covers`] lifts to produce
//! pseudocodewords; [`weights`] measures those on several channels,
//! [`bounds`] compares the measurements with the tree bound and [`search`]
//! drives the whole pipeline.

pub mod bounds;
pub mod cli;
pub mod code;
pub mod covers;
pub mod error;
pub mod field;
pub mod search;
pub mod weights;

pub use bounds::{tree_bound, verify_dmin_bound, verify_wmin_bound, BoundReport};
pub use code::{catalog, girth, min_distance_bruteforce, GirthReport, TannerGraph};
pub use covers::{lifted_graph, pseudocodeword_from_cover_codeword, random_lift, CoverSpec};
pub use error::{Error, Result};
pub use field::{GfMatrix, PrimeField};
pub use search::{
    estimate_min_pseudoweight, exhaustive_min_pseudoweight, SearchConfig, SearchReport,
};
pub use weights::{
    weight_awgn_2d, weight_awgn_pam, weight_awgn_psk, weight_qsc, Channel, ChannelWeight,
    Constellation, Pseudocodeword,
};
