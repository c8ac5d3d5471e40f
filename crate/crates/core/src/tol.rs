//! Pinned numerical tolerances.
//!
//! Every float-mode comparison in the crate goes through a named constant
//! defined here, so the accuracy contract lives in one place instead of being
//! scattered as magic numbers.  All constants are *relative* thresholds unless
//! the name says otherwise; callers are responsible for dividing by a natural
//! scale (coefficient norm, point norm, ...) before comparing.

/// Membership test `|F(p)| / ||p||^4 < ON_SURFACE_REL` for a quartic `F` with
/// coefficients of order one.  One Newton projection step is applied first to
/// points that miss by more than this, so honest on-surface inputs pass even
/// after a few arithmetic round trips.
pub const ON_SURFACE_REL: f64 = 1e-10;

/// Root clustering: two polished roots closer than this (relative to
/// `max(1, |root|)`) are treated as one root of higher multiplicity.
/// A double root of a well-scaled quartic is recovered to ~1e-8, so 1e-7
/// merges genuine multiplicities while keeping the classical root separation
/// of random polynomials (>> 1e-4) intact.
pub const ROOT_CLUSTER_REL: f64 = 1e-7;

/// Projective merge distance (Fubini-Study sine) used when deduplicating
/// points, directions, and lines produced by independent solver routes.
pub const PROJ_MERGE: f64 = 1e-6;

/// Dedup distance for raw solver output *before* certification; tighter than
/// [`PROJ_MERGE`] because polished Newton solutions of the same root agree to
/// near machine precision.
pub const SOLUTION_DEDUP: f64 = 1e-7;

/// A certified object (bitangent contact pair, double-point pair) must
/// reproduce its defining data with relative residual below this.
pub const CERT_RESIDUAL: f64 = 1e-9;

/// Joint residual target for Newton polishing of solver output.
pub const NEWTON_POLISH: f64 = 1e-12;

/// Residual budget for each of the four double-point certificate checks
/// (two on-surface residuals, gradient parallelism, bitangency).
pub const PAIR_RESIDUAL: f64 = 1e-8;

/// Gauss-image agreement on a certified double-point pair: the sine of the
/// angle between `∇F(p)` and `∇F(p′)` must fall below this.  Much tighter
/// than [`PAIR_RESIDUAL`] because parallelism is enforced directly by two
/// rows of the defining system and polishes to near machine precision.
pub const GAUSS_IMAGE_MATCH: f64 = 1e-9;

/// Relative residual allowed when checking that the restriction Jacobian
/// determinant factors as `t (t - lambda) * delta`.
pub const RAMIF_FACTOR_REL: f64 = 1e-8;

/// `|delta|` below this (relative to the chart scale) marks a tangent line
/// whose whole parameter interval is ramified — a double-point line.
pub const WHOLE_LINE_DELTA: f64 = 1e-7;

/// Angular tolerance (radians, small-angle) for the osculation check that the
/// ruled surface's tangent plane agrees with the surface's tangent plane.
pub const OSCULATION_ANGULAR: f64 = 1e-5;

/// A reversed continuation run must return to its start within this
/// projective distance.
pub const TRACE_REVERSAL: f64 = 1e-6;

/// Relative gap under which two singular values are considered a rank drop
/// when ranking small dense systems (tangent-cone and smoothness tests).
pub const RANK_SVD_REL: f64 = 1e-6;

/// Relative size of the scaled Hessian determinant below which a surface
/// point is declared parabolic.
pub const PARABOLIC_REL: f64 = 1e-8;

/// Agreement required between asymptotic directions computed from the second
/// fundamental form and node branch tangents computed from the tangent
/// section (projective distance).
pub const TANGENT_CONE_MATCH: f64 = 1e-6;

/// Germ coefficients below this fraction of the germ's largest coefficient
/// are treated as zero when reading multiplicities and jet degeneracies.
/// Sits well above the worst-case coordinate noise of a polished singular
/// point (~1e-8 at a cusp, where the defining system has a double root) and
/// well below structural coefficients of order one.
pub const GERM_COEFF_REL: f64 = 1e-6;

/// A candidate singular point from a two-partial chart solve is kept only if
/// the remaining partial derivative also vanishes to this relative accuracy.
pub const THIRD_PARTIAL_REL: f64 = 1e-6;

/// Incidence tolerance for sampled curve points against candidate components
/// (lines, conics) in the reducibility scan.
pub const INCIDENCE_REL: f64 = 1e-6;

/// A point certifies as singular (all four gradient components vanishing)
/// when the largest gradient value at its normalized representative is below
/// this fraction of the gradient coefficient scale.  Gauss-Newton residuals
/// at true singular points polish to ~1e-14; stalls at local minima of a
/// smooth surface stay within a few orders of the coefficient scale.
pub const SINGULAR_SWEEP_REL: f64 = 1e-8;

/// A line certifies as contained in a surface when the l1 norm of the
/// restriction's coefficients falls below this fraction of the surface's
/// coefficient l1 norm.
pub const LINE_IN_SURFACE_REL: f64 = 1e-9;

/// Membership threshold for polar-cubic vanishing (tangency of the surface
/// at the argument seen from the polar point), relative to the polar's
/// coefficient scale.
pub const POLAR_MEMBER_REL: f64 = 1e-8;

/// A tangent direction counts as a hyperflex direction when the second- and
/// third-order contact coefficients of the line restriction both vanish to
/// this fraction of their coefficient scales.
pub const HYPERFLEX_REL: f64 = 1e-7;

/// Screening threshold for the relative subresultant pair of a candidate
/// bitangent restriction.  Candidates come out of the bivariate solver with
/// near-machine accuracy, so genuine bitangents clear `1e-6` by orders of
/// magnitude while transversal or simply-tangent lines fail it by orders of
/// magnitude; the binding test is the square-root fit that follows.
pub const BITANGENT_GATE_REL: f64 = 1e-6;

/// Relative gap under which the two fitted contact parameters of a
/// certified bitangent are declared coincident (a hyperflex).  A genuine
/// quadruple root refits with a parameter gap near `sqrt` of the fit
/// residual (about `1e-6`), while distinct contacts sit at unit scale.
pub const CONTACT_MERGE: f64 = 1e-5;

/// Runtime-adjustable tolerances for the solver pipeline.  `Default` pins the
/// published values above; the CLI `--tol` flag scales the certification
/// threshold only.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// See [`ON_SURFACE_REL`].
    pub on_surface: f64,
    /// See [`ROOT_CLUSTER_REL`].
    pub root_cluster: f64,
    /// See [`PROJ_MERGE`].
    pub proj_merge: f64,
    /// See [`CERT_RESIDUAL`].
    pub certificate: f64,
    /// See [`NEWTON_POLISH`].
    pub newton: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            on_surface: ON_SURFACE_REL,
            root_cluster: ROOT_CLUSTER_REL,
            proj_merge: PROJ_MERGE,
            certificate: CERT_RESIDUAL,
            newton: NEWTON_POLISH,
        }
    }
}
