// SPDX-License-Identifier: Apache-2.0

//! Stuck-at fault analysis for reversible circuits through logic
//! implications.

pub mod cli;
pub mod corpus;
pub mod engine;
pub mod faultlab;
pub mod implications;
pub mod netlist;
