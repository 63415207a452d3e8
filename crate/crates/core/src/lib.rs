//! Constructions and exhaustive certificates for a hereditary graph class
//! that is chi-bounded but not polynomially chi-bounded.
//!
//! * [`zykov`] builds triangle-free oriented graphs `G_k` with `chi = k` and
//!   unique directed paths.
//! * [`power`] turns a base graph into `G'_p` by joining comparable pairs
//!   whose path length is not divisible by `p`.
//! * [`farey`] partitions `{1, ..., p-1}` into Farey intervals that carry no
//!   short zero sums.
//! * [`coloring`] colours any induced subgraph of `G'_p` with `n^Phi(n)`
//!   colours when its clique number `n` is below `p`.
//! * [`oracles`] holds the independent brute-force checkers.

pub mod cli;
pub mod coloring;
pub mod farey;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod power;
pub mod primes;
pub mod zykov;
