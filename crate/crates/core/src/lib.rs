pub mod bench;
pub mod cli;
pub mod convex_layout;
pub mod geometry;
pub mod io;
pub mod layout;
pub mod ortho_layout;
pub mod partition;
pub mod single_level;
pub mod tree_model;
pub mod verifier;
