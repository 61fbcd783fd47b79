pub mod bd;
pub mod error;
pub mod generators;
pub mod matrix;
pub mod scalar;
pub mod classic;
pub mod spectral;
pub mod qr;
pub mod oracle;
pub mod baseline;
pub mod io;
pub mod experiment;
