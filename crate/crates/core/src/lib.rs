pub mod algebra;
pub mod center;
pub mod cli;
pub mod error;
pub mod filippov;
pub mod melnikov;
pub mod numeric;
pub mod portrait;
pub mod simulate;
