pub mod complex;
pub mod error;
pub mod fgmod;
pub mod format;
pub mod linalg;
pub mod maps;
pub mod model;
pub mod oracle;
pub mod resolve;
pub mod samples;
pub mod tensorx;
pub mod zigzag;
