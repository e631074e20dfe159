//! Symbolic set-theory kernel.
//!
//! Finite relations and maps, ordinal notations below ε₀, finite well-orders
//! with a recursion engine, symbolic Beth cardinals, hereditarily finite sets
//! in the Ackermann coding, the Mostowski collapse of finite graphs, and an
//! axiom audit for finite membership models.

pub mod cardinal;
pub mod collapse;
pub mod error;
pub mod hf;
pub mod ordinal;
pub mod pairing;
pub mod wellorder;
pub mod zfc;

pub use cardinal::{RankedElement, SymCardinal};
pub use collapse::{Collapse, WfGraph};
pub use error::{Error, Result};
pub use hf::HfCode;
pub use ordinal::{CanonicalPair, Cofinality, Ordinal, PairCanonical};
pub use pairing::{FinDomain, FinEquivalence, FinMap, FinPairing, Quotient};
pub use wellorder::{ChoiceTable, FinWellOrder, OrderIso, Recursive, Restriction};
pub use zfc::{Axiom, AxiomReport, CheckOptions, ModelDesc, Verdict};
