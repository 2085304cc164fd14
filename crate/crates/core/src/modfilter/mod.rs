//! Ideal filters, division modules and J-injectivity.

pub mod baer;
pub mod division;
pub mod filter;

pub use baer::{baer_check, baer_check_default};
pub use division::{
    divide_filter, divide_filter_map, divide_ideal, divide_integer, is_essential, is_jmap, is_jtorsion,
    torsion,
};
pub use filter::{filter_member, Ideal, IdealFilter};
