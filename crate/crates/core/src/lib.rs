pub mod bounds;
pub mod chain;
pub mod constructors;
pub mod election;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod rational;
pub mod render;
