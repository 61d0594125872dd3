pub mod error;
pub mod hennings;
pub mod hopf;
pub mod kuperberg;
pub mod scalars;
pub mod uqsl2;
