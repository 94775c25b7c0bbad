//! Exact arithmetic: Laurent polynomials and rational functions in `p`,
//! multivariate polynomials in `x_1..x_n`, and the symmetric partition basis.

mod laurent;
mod multi;
mod ratfn;
mod sym;

pub use laurent::LaurentP;
pub use multi::{degree, grlex_cmp, multi_divexact, Exps, MultiPoly, MAX_VARS};
pub use ratfn::RatFnP;
pub use sym::{
    expanded_len, sym_expand, sym_from_multi, sym_mul, sym_reflect, sym_set_last_zero,
    sym_substitute, Partition, SymPoly,
};

pub(crate) use multi::{check_arity, permute_exps};
