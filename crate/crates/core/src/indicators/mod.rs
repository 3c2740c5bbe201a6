//! Hypervolume, ideal/nadir reference points and coverage indicators.

mod coverage;
mod cost;
mod hypervolume;
mod reference;

pub use coverage::{
    d_indicator, distribution_metric, evaluate_indicator, evenness, m_indicator, outer_diameter,
    pareto_spread, IndicatorId, IndicatorValue, IndicatorValues,
};
pub use cost::coverage_cost;
pub use hypervolume::{hypervolume, MAX_SLICING_POINTS};
pub use reference::{reference_context, ReferenceContext};
