//! Distinguishing colourings of the rational half-graph.
//!
//! The half-graph on ℚ has vertices `q+` and `q-` for every rational `q`,
//! with `q+ ~ r-` exactly when `q < r`. This crate builds its finite
//! truncations, enumerates automorphism groups of finite graphs, and, for
//! any finitely described colouring of the infinite graph, synthesizes a
//! non-trivial colour-preserving automorphism by a lazy back-and-forth
//! construction over ℚ.

pub mod autgrp;
pub mod backforth;
pub mod cli;
pub mod colouring;
pub mod exactq;
pub mod halfgraph;
