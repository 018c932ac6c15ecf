pub mod carried;
pub mod cli;
pub mod discgeo;
pub mod layering;
pub mod parallel;
pub mod perm;
pub mod surface;
pub mod taut;
pub mod tri;
