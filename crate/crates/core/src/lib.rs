// SPDX-License-Identifier: Apache-2.0

//! Continuity, compactness and tameness of Toeplitz operators between Köthe
//! echelon spaces, checked numerically on finite windows.

pub mod criteria;
pub mod error;
pub mod logval;
pub mod operators;
pub mod oracle;
pub mod spaces;
pub mod verdict;

pub use error::{Error, Result};
pub use logval::LogValue;
pub use verdict::{Certificate, FailureWitness, Outcome, OutcomeClass, Verdict, Window};
