//! Asymptotic series, Mellin principal parts and numerical pole verification.

pub mod fit;
pub mod montecarlo;
pub mod quadrature;
pub mod roots;
pub mod series;

pub use fit::FitModel;
pub use montecarlo::{estimate_leading_pole_mc, estimate_mellin, linear_grid, GridValue, McOptions, MellinEstimate, PoleFit};
pub use quadrature::{cutoff, cutoff_disk_mellin, verify_model_mellin, ModelMellinReport};
pub use series::{predict_pole_profile, principal_parts, AsymptoticSeries, PoleProfile, PrincipalPart};
