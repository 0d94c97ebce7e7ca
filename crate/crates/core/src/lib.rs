//! Computational toolkit for finite quandles.

pub mod arith;
pub mod classify;
pub mod congruence;
pub mod extensions;
pub mod groups;
pub mod io;
pub mod lss;
pub mod partition;
pub mod permgroup;
pub mod quandle;
pub mod recipe;
pub mod verify;
