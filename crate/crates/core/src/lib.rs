pub mod automata;
pub mod exactmath;
pub mod langsem;
pub mod constructions;
pub mod analysis;
