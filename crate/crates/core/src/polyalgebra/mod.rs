//! Integer polynomials, exact real-root isolation, the Ψ_{k,m} families and
//! the numeric identities built on their roots.

pub mod catalog;
pub mod equi;
pub mod graph;
pub mod logexpr;
pub mod poly;
pub mod psi;
pub mod radicals;
pub mod sturm;

pub use catalog::{verify_log_catalog, CatalogRecord, LogCatalogReport};
pub use equi::{power_frac_probe, star_discrepancy, FracProbe};
pub use graph::{cycle_graph_eigen_check, GraphEigenReport};
pub use logexpr::{eval_log_expr, LogAtom, LogExpr, Orientation};
pub use poly::{IntPolynomial, RatPoly};
pub use psi::{
    build_psi, phi, psi_derivative_gaps, psi_real_roots, sigma_gap_ratios, verify_root_membership,
    DerivativeGaps, Membership, PhiConstant, PsiRoots, SigmaGapRatios, SilverMean,
};
pub use radicals::{nested_power_tower, odd_silver_nested_radical, PowerTower};
pub use sturm::{
    dominant_root, dominant_root_enclosure, isolate_real_roots, real_roots, sturm_real_root_count,
    Bound, RootEnclosure, SturmChain,
};
