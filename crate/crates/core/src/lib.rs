pub mod bracket;
pub mod cli;
pub mod cochain;
pub mod cohomology;
pub mod corpus;
pub mod deformation;
pub mod error;
pub mod extension;
pub mod io;
pub mod linalg;
pub mod linfty;
pub mod prelie;
pub mod report;
pub mod spaces;
