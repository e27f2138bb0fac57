pub mod classify;
pub mod cli;
pub mod coords;
pub mod delpezzo;
pub mod error;
pub mod field;
pub mod flatten;
pub mod numeric;
pub mod poly;
pub mod secant;
