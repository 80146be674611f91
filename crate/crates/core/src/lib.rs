//! Width-two posets, their canonical two-chain covers, and the non-hitting
//! walk pairs that encode them.
//!
//! The crate is organised around the chain
//! `Poset → TwoChainCover → GreedyPair → WalkPair`:
//!
//! - [`poset`]: validated finite posets, width, factors, windows.
//! - [`cover`]: canonical covers, the greedy pair, and the walk bijection.
//! - [`walk`]: walk pairs and the statistics read off them.
//! - [`count`] and [`sample`]: exact counts and uniform samplers.
//! - [`oracle`]: brute-force enumerators and exact identity checks.
//! - [`stats`]: Kolmogorov–Smirnov machinery and the scaling experiments.
//! - [`cli`]: the command-line front end.

mod bitmat;

pub mod cli;
pub mod count;
pub mod cover;
pub mod error;
pub mod oracle;
pub mod poset;
pub mod rng;
pub mod sample;
pub mod stats;
pub mod walk;

pub use count::{count, CountTable};
pub use cover::{gamma, gamma_inverse, greedy_pair, psi, CoverElement, GreedyPair, TwoChainCover};
pub use error::{Error, Result};
pub use poset::{Poset, Relation, Violation, WidthClass};
pub use sample::{DecomposedSampler, DpSampler, SamplerMethod, WalkSampler};
pub use walk::{JointStep, WalkPair};
