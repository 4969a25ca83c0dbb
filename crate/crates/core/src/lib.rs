pub mod lattice;
pub mod topoframe;
pub mod realfun;
pub mod ring_props;
pub mod io;
