//! Classical hard and soft classifier measures, computed both over
//! classified totals and over actual class totals, with exact rational
//! arithmetic wherever a value is rational.

mod curves;
mod predictions;
mod rates;
mod value;

pub use curves::{curves, rank_statistic, Curves, PrPoint, RocPoint};
pub use predictions::{PredictionColumn, Predictions};
pub use rates::{
    confusion, divergence_report, imbalance_precision, kappa_mcc, rates, ConfusionCounts, Divergence, KappaMcc,
    MetricMode, RateSet,
};
pub use value::{decimal, MetricValue, Rational};
