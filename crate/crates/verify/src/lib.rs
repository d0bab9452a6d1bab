//! Holds the `acceptance` test target; run it with
//! `cargo test -p firefly-verify --test acceptance`.
