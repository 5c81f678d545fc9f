//! Exact computer algebra for the quantum group `O_q(SL_3)`, closed `SL_3`
//! webs, the annulus skein algebra, and the root-of-unity Frobenius maps.
//!
//! Everything is generic over the coefficient ring through
//! [`coeff::Coeff`]; the aliases below fix arbitrary-precision integers.

pub mod bigon_split;
pub mod coeff;
pub mod frobenius;
pub mod powersum;
pub mod qmatrix;
pub mod webs;

use num_bigint::BigInt;

pub type LaurentZ = coeff::Laurent<BigInt>;
pub type CyclotomicZ = coeff::Cyclotomic<BigInt>;
pub type GenericEngine = qmatrix::Engine<LaurentZ>;
pub type CyclotomicEngine = qmatrix::Engine<CyclotomicZ>;
