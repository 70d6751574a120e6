//! Exact combinatorics for role colourings and coupon colourings.
//!
//! The crate covers four areas:
//!
//! * graphs with loops, named families, girth and induced-subgraph search
//!   ([`graph`], [`families`], [`girth`], [`induced`]);
//! * role and coupon colourings with a verifier, exact solvers and an
//!   exhaustive oracle ([`role`], [`solve`], [`oracle`]);
//! * the monotone NAE-SAT gadget graphs together with conversions between
//!   satisfying assignments and `P_k**` colourings ([`sat`]);
//! * the two-cycles-and-a-matching high-girth graphs, gemel implantation and
//!   its constructive coupon colouring ([`highgirth`]);
//!
//! plus the maximal-independent-set 2-role colouring for `2K_2`-free graphs
//! ([`twok2`]).
//!
//! Everything is `no_std` with `alloc`; parsing, file formats and the CLI live
//! in the companion `rolecol` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod families;
pub mod girth;
pub mod graph;
pub mod highgirth;
pub mod induced;
pub mod oracle;
pub mod role;
pub mod sat;
pub mod solve;
pub mod twok2;

pub use error::{GirthGraphError, GraphError, ReductionError, SolveError, TwoRoleError};
pub use families::GraphFamily;
pub use girth::{girth, Girth};
pub use graph::{BasicProps, Graph, GraphBuilder};
pub use induced::{contains_induced, is_free};
pub use role::{role_graph_of, verify_role_colouring, RoleColouring, RoleGraph, RoleTarget, Violation};
pub use solve::{SolveConfig, VariableOrder};
