//! Benchmarks for `arconf-core`; see `benches/`.
