//! Core algorithms for multi-source multipath HTTP downloads.
//!
//! This crate holds the pure, IO-free parts of the engine: chunk geometry,
//! HTTP/1.1 range-request building and response-head parsing, the
//! out-of-order reassembly buffer, the throughput-driven chunk scheduler,
//! the discovered-source pool, and the small numeric helpers the harness
//! uses (percentiles, CCDFs, token-bucket arithmetic).
//!
//! Everything here is `no_std`-compatible (with `alloc`); sockets, clocks,
//! threads, and file formats live in the `mhttp` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bucket;
pub mod buffer;
pub mod chunk;
pub mod pool;
pub mod scheduler;
pub mod stats;
pub mod wire;

/// Identifier of one server connection within a transfer session.
pub type ConnId = u32;
