pub mod data;
pub mod field;
pub mod session;

pub use data::{hensel_roots, prime_override, select_prime, GaloisData};
pub use field::{LocalElem, LocalField};
pub use session::{Session, StoredGroup, SESSION_VERSION};
