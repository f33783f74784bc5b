pub mod error;
pub mod fuzz;
pub mod geometry;
pub mod hyperbolic;
pub mod io;
pub mod mazur;
pub mod solve;
pub mod verify;
pub mod space;
pub mod word;
pub mod young;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use word::Word;
pub use young::YoungFunction;
