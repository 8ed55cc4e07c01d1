//! Function representations on (-1, 1): Chebyshev series, endpoint-weighted
//! functions, sampled data, and the rearrangement-invariant norms.

mod chebyshev;
mod evaluable;
mod indicator;
pub mod io;
mod norms;
mod sampled;
mod weighted;

pub use chebyshev::{
    interpolate_chebyshev, interpolate_evaluable, Basis, ChebyshevSeries, DEFAULT_TAIL_TOL,
};
pub(crate) use evaluable::endpoint_weight;
pub use evaluable::{real_fn, Abscissa, Evaluable, FnEval, Reweighted, SumFn};
pub use indicator::IndicatorUnion;
pub use norms::{
    decreasing_rearrangement, lorentz_norm, lp_norm, refined_norm, zygmund_norm,
    DecreasingRearrangement, LorentzQ, NormValue, DIVERGENCE_CONTRACTION, DIVERGENCE_JUMP,
};
pub use sampled::{SampledFunction, DEFAULT_EDGE_EPS};
pub use weighted::EndpointWeightedFunction;
