pub mod algebra;
pub mod checks;
pub mod cohomology;
pub mod connection;
pub mod forms;
pub mod numeric;
pub mod parallel;
pub mod report;

pub use report::Report;
