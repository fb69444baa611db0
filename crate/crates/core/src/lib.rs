//! Static screening of automatically generated patches.
//!
//! Patches are reduced to a buggy and a patched code fragment, embedded, and
//! then judged either by how similar the two fragments are or by a
//! classifier trained on crossed embedding features.

pub mod cli;
pub mod crossfeat;
pub mod learn;
pub mod lexemb;
pub mod patchio;
pub mod screen;
pub mod simstat;
pub mod synth;
