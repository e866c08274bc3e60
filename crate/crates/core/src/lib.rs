//! Exact counting and uniform sampling of 3-noncrossing set partitions.
//!
//! A set partition of `[n]` is drawn as arcs joining consecutive elements of
//! each block. It is 3-noncrossing when no three arcs mutually cross. Such
//! partitions correspond to vacillating tableaux of at most two rows, which
//! in turn are lattice walks in the chamber `a > b >= 0` that start and end
//! at `(1, 0)`. Counting the walks by dynamic programming over big integers
//! gives the exact number of partitions, and walking the chamber with those
//! counts as transition weights samples a partition uniformly.
//!
//! 2-regular partitions (no block holds two consecutive integers) are
//! handled the same way through braids without loops.
//!
//! ```
//! use ncwalk_core::{PartitionSampler, RandomStream, SizeLimit};
//!
//! let sampler = PartitionSampler::new(6, SizeLimit::default()).unwrap();
//! assert_eq!(sampler.universe_size().to_string(), "202");
//! let mut rng = RandomStream::new(42);
//! let p = sampler.sample(&mut rng).unwrap();
//! assert!(p.max_mutual_crossing() < 3);
//! ```

pub mod engine;
pub mod model;
pub mod sampler;
pub mod tableau;
pub mod verify;

pub use engine::{BigCount, CountTable, EngineError, SizeLimit, TableKind};
pub use model::{format_partition, parse_partition, Arc, Braid, ParseError, SetPartition};
pub use sampler::{PartitionSampler, RandomStream, SamplerError, TwoRegularSampler, Variant};
pub use tableau::{Flavor, Move, Shape, TableauError, VacillatingTableau, WalkPoint};
