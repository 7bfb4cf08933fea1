pub mod builder;
pub mod curve;
pub mod field;
pub mod level;
pub mod tower;
