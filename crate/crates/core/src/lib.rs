pub mod algebra;
pub mod cli;
pub mod drbl;
pub mod error;
pub mod gsb;
pub mod lyndon;
pub mod oracle;
pub mod poly;
pub mod term;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use poly::{Coeff, Poly};
pub use term::{Alphabet, Context, NaWord, Prime, Word};
