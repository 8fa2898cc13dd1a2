//! C ABI for the freesum library. Populated alongside the core crate.
