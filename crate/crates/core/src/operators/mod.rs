// SPDX-License-Identifier: Apache-2.0

//! Symbols, Toeplitz operators between Köthe spaces, and their finite
//! sections.

mod apply;
mod membership;
mod symbol;
mod toeplitz;

pub use apply::{apply_dense, apply_fast, Applied};
pub use membership::{dual_constant, membership_in_dual, membership_in_space};
pub use symbol::{decompose, Symbol, SymbolSpec, TwoSidedSymbol};
pub use toeplitz::{NormKind, ToeplitzOperator, Variant};
