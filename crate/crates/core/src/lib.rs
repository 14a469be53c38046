pub mod bernoulli;
pub mod coeffs;
pub mod enclose;
pub mod error;
pub mod exact;
pub mod expr;
pub mod interval;
pub mod monotone;
pub mod par;
pub mod registry;
pub mod report;
pub mod series;
pub mod taylor;
pub mod verify;
