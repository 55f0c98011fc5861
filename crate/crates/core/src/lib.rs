//! Order types, computable presentations of linear orders, enumeration
//! operators on finite diagrams, and the checks used to study them.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod diagram;
pub mod enumop;
pub mod name;
pub mod ordertype;
pub mod presentation;

pub use diagram::{check_linear, FactSet, FiniteDiagram, LinearityViolation};
pub use enumop::{EnumOperator, OpError, Operator};
pub use name::ElementName;
pub use ordertype::{OrderType, OrderTypeError, SummandSpec, Term};
pub use presentation::{Presentation, Schedule};
