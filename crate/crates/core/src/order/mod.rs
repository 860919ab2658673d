//! The variance order `A ⪯ B`: decision with certificates and witnesses,
//! independent oracles, Lipschitz tables and equivalence classes.

pub mod classes;
pub mod decide;
pub mod lipschitz;
pub mod oracle;

pub use classes::{canonical_representative, class_equal};
pub use decide::{
    decide_order, decide_order_default, decide_order_with, default_order_tol, extract_function, OrderVerdict,
    FAIL_MARGIN_TOL,
};
pub use lipschitz::{mcshane_extend, ExtensionKind, FunctionTable, LipschitzExtension};
pub use oracle::{check_state_order, witness_search, OracleConfig, StateOrderCheck, WitnessSearch};
