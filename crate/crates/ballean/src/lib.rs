//! Computational coarse geometry on finite windows.
//!
//! A coarse space is presented here by a finite *window* (the points we can
//! see), together with a finite ascending base of entourages given as ball
//! tables.  On top of that sit bornologies (presented by a finite base of
//! bounded sets), hyperballeans over families of bounded subsets, and the
//! machinery relating linear orders to selectors:
//!
//! * [`order::two_selector_from_order`] and [`order::selector_from_split_order`]
//!   build choice maps out of a linear order;
//! * [`derive::order_from_two_selector`] runs the reverse construction,
//!   recovering a linear order (with split markers) from a two-point selector;
//! * [`order::interval_base_from_chain`] turns a chain base into an order whose
//!   intervals generate the same bornology;
//! * [`transfer::discrete_transfer`] re-checks a selector against the discrete
//!   space of the bounded-set bornology;
//! * [`search`] decides, by exhaustive backtracking, whether a constraint
//!   scenario admits a two-point selector, and produces replayable
//!   unsatisfiability certificates when it does not.
//!
//! Everything is window-relative: universally quantified checks run over
//! *interior* points (those whose balls the window represents completely), so
//! a "pass" means "no obstruction within this window" while a counterexample
//! is conclusive.  All enumeration orders are canonical and every operation is
//! deterministic; given equal inputs, reports are byte-identical.

pub mod bornology;
pub mod derive;
pub mod entourage;
pub mod error;
pub mod hyper;
pub mod order;
pub mod point;
pub mod scenario;
pub mod search;
pub mod selector;
pub mod space;
pub mod transfer;
pub mod window;

pub use bornology::BornologyPresentation;
pub use entourage::Entourage;
pub use error::Error;
pub use point::{PointId, PointSet};
pub use space::CoarsePresentation;
pub use window::Window;
