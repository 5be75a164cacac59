//! Counterexample families and the verification checks built on them.
//!
//! Each `verify_*` function instantiates one construction, evaluates the
//! relevant quantities exactly (level one) or as dyadic lower bounds (lifted
//! levels), and records every comparison in a [`VerificationReport`].

use rand::Rng;
use rayon::prelude::*;

use crate::corpus::{random_corpus, random_path, random_unit, rng};
use crate::error::{Error, Result};
use crate::path::{dot, norm, PiecewiseLinearPath, COLLINEAR_TOL};
use crate::report::{BoundCheck, Relation, Sweep, VerificationReport};
use crate::signature::signature;
use crate::unparam::{dist_d, dist_sig, dist_star, UnparamPath};
use crate::variation::{control, p_var_distance, p_variation, p_variation_interval};

/// Environment variable overriding the default bound-check tolerance.
pub const TOL_ENV: &str = "ROUGHSPACE_TOL";
/// Tolerance for comparisons between two exact computations.
pub const EXACT_TOL: f64 = 1e-12;
/// Default tolerance for comparisons against a bound.
pub const BOUND_TOL: f64 = 1e-9;
/// `dist_sig` below this value at the smallest ε counts as convergence.
pub const SIG_CONVERGENCE: f64 = 1e-3;

/// Names accepted by [`run_check`], in report order.
pub const CHECKS: &[&str] = &[
    "additivity",
    "cauchy_gap",
    "chen",
    "constant_speed_closed",
    "dstar_separation",
    "example_pvar",
    "group_like",
    "monotonicity",
    "quotient_witness",
    "tree_like",
    "unbounded_balls",
];

/// The bound-check tolerance from [`TOL_ENV`], or [`BOUND_TOL`].
pub fn default_tolerance() -> f64 {
    std::env::var(TOL_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t >= 0.0)
        .unwrap_or(BOUND_TOL)
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub p: f64,
    pub level: usize,
    pub refine: u32,
    pub tol: f64,
    pub seed: u64,
    /// Largest `n` in the unbounded-ball and quotient sweeps.
    pub n_max: usize,
    /// ε for the example path and the unbounded-ball families.
    pub eps: f64,
    /// ε = 2^{-j} for j = 1..=j_max in the gap sweep.
    pub j_max: u32,
    /// Number of random unit directions in the separation check.
    pub directions: usize,
    /// Number of random instances in the randomised sweeps.
    pub samples: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            p: 1.5,
            level: crate::DEFAULT_LEVEL,
            refine: crate::DEFAULT_REFINE,
            tol: default_tolerance(),
            seed: 0,
            n_max: 8,
            eps: 0.05,
            j_max: 10,
            directions: 10,
            samples: 100,
        }
    }
}

/// Which third segment to use in [`family_x_eps`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XEpsVariant {
    /// `εv2, (½−ε)v1, −εv1, −(½−ε)v1`.
    AsPrinted,
    /// `εv2, (½−ε)v1, −εv2, −(½−ε)v1`, a closed loop.
    ClosedLoop,
}

impl XEpsVariant {
    pub fn label(self) -> &'static str {
        match self {
            XEpsVariant::AsPrinted => "printed",
            XEpsVariant::ClosedLoop => "closed",
        }
    }
}

fn scaled(v: &[f64], s: f64) -> Vec<f64> {
    v.iter().map(|c| s * c).collect()
}

fn require_unit(name: &str, v: &[f64]) -> Result<()> {
    if (norm(v) - 1.0).abs() > 1e-9 {
        return Err(Error::DirectionConstraint(format!(
            "{name} must be a unit vector"
        )));
    }
    Ok(())
}

fn collinear(a: &[f64], b: &[f64]) -> bool {
    let (na, nb) = (norm(a), norm(b));
    na > 0.0 && nb > 0.0 && (dot(a, b) / (na * nb)).abs() >= 1.0 - COLLINEAR_TOL
}

fn check_directions(x: &PiecewiseLinearPath, dirs: &[(&str, &[f64])]) -> Result<()> {
    for (name, v) in dirs {
        if v.len() != x.dim() {
            return Err(Error::DimensionMismatch {
                left: x.dim(),
                right: v.len(),
            });
        }
        require_unit(name, v)?;
    }
    if let Some(last) = x.segments().into_iter().rev().find(|s| norm(s) > 0.0) {
        for (name, v) in dirs {
            if collinear(&last, v) {
                return Err(Error::DirectionConstraint(format!(
                    "{name} is collinear with the last segment of the base path"
                )));
            }
        }
    }
    Ok(())
}

fn with_tail(x: &PiecewiseLinearPath, tail: &[Vec<f64>]) -> Result<PiecewiseLinearPath> {
    let mut incs = x.segments();
    incs.extend_from_slice(tail);
    Ok(PiecewiseLinearPath::from_increments(x.dim(), &incs)?.constant_speed())
}

/// `X ⋆ γ_{(n+ε)v1} ⋆ γ_{−(n+ε)v1}` at constant speed on `[0, 1]`.
pub fn family_y(
    x: &PiecewiseLinearPath,
    n: f64,
    eps: f64,
    v1: &[f64],
) -> Result<PiecewiseLinearPath> {
    check_directions(x, &[("v1", v1)])?;
    with_tail(x, &[scaled(v1, n + eps), scaled(v1, -(n + eps))])
}

/// `X ⋆ γ_{εv2} ⋆ γ_{nv1} ⋆ γ_{−εv2} ⋆ γ_{−nv1}` at constant speed on `[0, 1]`.
pub fn family_z(
    x: &PiecewiseLinearPath,
    n: f64,
    eps: f64,
    v1: &[f64],
    v2: &[f64],
) -> Result<PiecewiseLinearPath> {
    check_directions(x, &[("v1", v1), ("v2", v2)])?;
    if dot(v1, v2).abs() > 1e-9 {
        return Err(Error::DirectionConstraint(
            "v1 and v2 must be orthogonal".into(),
        ));
    }
    with_tail(
        x,
        &[
            scaled(v2, eps),
            scaled(v1, n),
            scaled(v2, -eps),
            scaled(v1, -n),
        ],
    )
}

/// `γ_{εv2} ⋆ γ_{(n−ε)v1} ⋆ γ_{−εv2} ⋆ γ_{−(n−ε)v1}` at constant speed.
pub fn family_quotient_z(n: f64, eps: f64, v1: &[f64], v2: &[f64]) -> Result<PiecewiseLinearPath> {
    if !(eps > 0.0 && eps < n) {
        return Err(Error::OutOfRange(format!("ε = {eps} must lie in (0, n)")));
    }
    let o = PiecewiseLinearPath::constant(v1.len(), 1.0)?;
    family_z(&o, n - eps, eps, v1, v2)
}

/// `γ_{nv1} ⋆ γ_{−nv1}` at constant speed.
pub fn family_quotient_y(n: f64, v1: &[f64]) -> Result<PiecewiseLinearPath> {
    let o = PiecewiseLinearPath::constant(v1.len(), 1.0)?;
    family_y(&o, n, 0.0, v1)
}

/// The four-segment path `γ_{εv2} ⋆ γ_{(½−ε)v1} ⋆ γ_{−εw} ⋆ γ_{−(½−ε)v1}` with
/// `w = v1` ([`XEpsVariant::AsPrinted`]) or `w = v2` ([`XEpsVariant::ClosedLoop`]),
/// at constant speed on `[0, 1]`. Requires `0 < ε < ½`.
pub fn family_x_eps(
    eps: f64,
    v1: &[f64],
    v2: &[f64],
    variant: XEpsVariant,
) -> Result<PiecewiseLinearPath> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::OutOfRange(format!("ε = {eps} must lie in (0, 1/2)")));
    }
    if v1.len() != v2.len() {
        return Err(Error::DimensionMismatch {
            left: v1.len(),
            right: v2.len(),
        });
    }
    require_unit("v1", v1)?;
    require_unit("v2", v2)?;
    if collinear(v1, v2) {
        return Err(Error::DirectionConstraint(
            "v1 and v2 must not be collinear".into(),
        ));
    }
    let third = match variant {
        XEpsVariant::AsPrinted => scaled(v1, -eps),
        XEpsVariant::ClosedLoop => scaled(v2, -eps),
    };
    let incs = [
        scaled(v2, eps),
        scaled(v1, 0.5 - eps),
        third,
        scaled(v1, -(0.5 - eps)),
    ];
    Ok(PiecewiseLinearPath::from_increments(v1.len(), &incs)?.constant_speed())
}

/// `γ_{(1+ε)e1} ⋆ γ_{−2εe1} ⋆ γ_{(1+ε)e1}` in the plane.
pub fn example_path(eps: f64) -> Result<PiecewiseLinearPath> {
    PiecewiseLinearPath::from_increments(
        2,
        &[
            vec![1.0 + eps, 0.0],
            vec![-2.0 * eps, 0.0],
            vec![1.0 + eps, 0.0],
        ],
    )
}

/// Maximum of `Σ ‖x_{i_{k+1}} − x_{i_k}‖^p` over every subset of breakpoints
/// containing both ends, by enumeration.
fn subset_pvar(points: &[Vec<f64>], p: f64) -> f64 {
    let m = points.len();
    if m < 2 {
        return 0.0;
    }
    let inner = m - 2;
    let mut best = 0.0f64;
    for mask in 0u64..(1u64 << inner) {
        let mut prev = 0;
        let mut sum = 0.0;
        for i in 1..m {
            if i == m - 1 || mask & (1 << (i - 1)) != 0 {
                sum += norm(&crate::path::sub(&points[i], &points[prev])).powf(p);
                prev = i;
            }
        }
        best = best.max(sum);
    }
    best.powf(1.0 / p)
}

/// p-variation of the example path against its stated value: `2` for `p > 1`
/// and the total length `2 + 4ε` for `p = 1`.
pub fn verify_example_pvar(eps: f64, p: f64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("example_pvar");
    r.param("eps", eps).param("p", p);
    let x = example_path(eps)?;
    let dp = p_variation(&x, p)?;
    let brute = subset_pvar(x.points(), p);
    let expected = if p == 1.0 { 2.0 + 4.0 * eps } else { 2.0 };
    r.value("p_variation", dp.value)
        .value("subset_maximum", brute);
    r.bound(BoundCheck::new(
        "p-variation of the example path",
        dp.value,
        Relation::Eq,
        expected,
        EXACT_TOL,
        "example path: stated p-variation",
    ));
    r.bound(BoundCheck::new(
        "dynamic programme vs subset enumeration",
        dp.value,
        Relation::Eq,
        brute,
        EXACT_TOL,
        "breakpoint subset enumeration",
    ));
    let reduced = x.tree_reduce();
    let target = PiecewiseLinearPath::line(&[2.0, 0.0], 1.0)?;
    let gap = if reduced.num_segments() == 1 {
        norm(&crate::path::sub(reduced.endpoint(), target.endpoint()))
    } else {
        f64::INFINITY
    };
    r.value("reduced_segments", reduced.num_segments() as f64);
    r.bound(BoundCheck::new(
        "tree reduction is the straight line to 2e1",
        gap,
        Relation::Le,
        0.0,
        EXACT_TOL,
        "example path: tree-reduced representative",
    ));
    Ok(r.finish())
}

fn unbounded_base() -> PiecewiseLinearPath {
    PiecewiseLinearPath::from_increments(2, &[vec![1.0, 0.5], vec![0.3, -0.8], vec![0.6, 0.6]])
        .expect("valid base path")
        .constant_speed()
}

/// Y- and Z-families around the constant path and a non-trivial base, for
/// `n = 1..=n_max`.
pub fn verify_unbounded_balls(
    n_max: usize,
    eps: f64,
    p: f64,
    level: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("unbounded_balls");
    r.param("n_max", n_max as f64)
        .param("eps", eps)
        .param("p", p)
        .param("N", level as f64);
    let v1 = [1.0, 0.0];
    let v2 = [0.0, 1.0];
    let bases = [
        ("o", PiecewiseLinearPath::constant(2, 1.0)?),
        ("x", unbounded_base()),
    ];
    let mut sweep = Sweep::new([
        "n",
        "norm_z_base_o",
        "norm_z_base_x",
        "d1_base_o",
        "d1_base_x",
    ]);
    let mut rows = vec![vec![0.0; 5]; n_max];
    for (b, (label, x)) in bases.iter().enumerate() {
        let x_pvar = p_variation(x, p)?.value.powf(p);
        let x_sig = signature(x, level);
        let mut prev_norm = 0.0;
        for n in 1..=n_max {
            let nf = n as f64;
            let y = family_y(x, nf, eps, &v1)?;
            let z = family_z(x, nf, eps, &v1, &v2)?;
            let d1 = p_var_distance(&y, &z, 1.0, 1, 0)?.value;
            let z_norm = p_variation(&z, p)?.value;
            rows[n - 1][0] = nf;
            rows[n - 1][1 + b] = z_norm;
            rows[n - 1][3 + b] = d1;
            r.bound(BoundCheck::new(
                format!("d_1-var(Y, Z) base {label} n={n}"),
                d1,
                Relation::Le,
                4.0 * eps,
                tol,
                "unbounded balls: 1-variation distance at most 4ε",
            ));
            r.bound(BoundCheck::new(
                format!("||Z||^p base {label} n={n}"),
                z_norm.powf(p),
                Relation::Ge,
                x_pvar + 2.0 * eps.powf(p) + 2.0 * nf.powf(p),
                tol,
                "unbounded balls: p-variation lower bound",
            ));
            r.bound(BoundCheck::new(
                format!("Z irreducible base {label} n={n}"),
                if z.is_irreducible(COLLINEAR_TOL) {
                    1.0
                } else {
                    0.0
                },
                Relation::Eq,
                1.0,
                0.0,
                "unbounded balls: Z is tree-reduced",
            ));
            let y_len = y.one_variation().max(1.0);
            let sig_gap = signature(&y, level).tensor().max_abs_diff(x_sig.tensor())?;
            r.bound(BoundCheck::new(
                format!("S(Y) = S(X) base {label} n={n}"),
                sig_gap,
                Relation::Le,
                0.0,
                tol * y_len.powi(level as i32),
                "unbounded balls: Y lies in the class of X",
            ));
            r.bound(BoundCheck::new(
                format!("||Z|| increasing in n base {label} n={n}"),
                z_norm,
                Relation::Ge,
                prev_norm,
                0.0,
                "unbounded balls: p-variation grows with n",
            ));
            prev_norm = z_norm;
        }
    }
    for row in rows {
        sweep.push(row);
    }
    r.sweep = Some(sweep);
    Ok(r.finish())
}

/// Pairwise level-one `dist_star^p` between `m` random unit directions in R^3.
pub fn verify_dstar_separation(
    p: f64,
    m: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("dstar_separation");
    r.param("p", p)
        .param("m", m as f64)
        .param("seed", seed as f64);
    let mut g = rng(seed);
    let classes: Vec<UnparamPath> = (0..m)
        .map(|_| {
            let v = random_unit(&mut g, 3);
            UnparamPath::canonicalize(&PiecewiseLinearPath::line(&v, 1.0)?, p, 1)
        })
        .collect::<Result<_>>()?;
    let mut min = f64::INFINITY;
    for i in 0..m {
        let self_dist = dist_star(&classes[i], &classes[i], 0)?;
        r.bound(BoundCheck::new(
            format!("dist_star(v{i}, v{i})"),
            self_dist,
            Relation::Le,
            0.0,
            EXACT_TOL,
            "d_star vanishes on the diagonal",
        ));
        for j in i + 1..m {
            let d = dist_star(&classes[i], &classes[j], 0)?.powf(p);
            min = min.min(d);
            r.bound(BoundCheck::new(
                format!("dist_star(v{i}, v{j})^p"),
                d,
                Relation::Ge,
                2.0,
                tol,
                "d_star separation of distinct directions",
            ));
        }
    }
    r.value("min_pairwise_dist_star_p", min);
    Ok(r.finish())
}

struct GapRow {
    sig: f64,
    level_one: f64,
    lifted: f64,
}

fn gap_row(
    eps: f64,
    variant: XEpsVariant,
    o: &UnparamPath,
    p: f64,
    level: usize,
    refine: u32,
) -> Result<GapRow> {
    let x = family_x_eps(eps, &[1.0, 0.0], &[0.0, 1.0], variant)?;
    let cls = UnparamPath::canonicalize(&x, p, level)?;
    Ok(GapRow {
        sig: dist_sig(&cls, o)?,
        level_one: p_var_distance(cls.canonical(), o.canonical(), p, 1, 0)?.value,
        lifted: dist_d(&cls, o, refine)?,
    })
}

/// Along `ε = 2^{-j}`: signature distance to the trivial class against the
/// p-variation distance, for both variants of the X_ε family.
pub fn verify_cauchy_gap(
    j_max: u32,
    p: f64,
    level: usize,
    refine: u32,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("cauchy_gap");
    r.param("j_max", j_max as f64)
        .param("p", p)
        .param("N", level as f64)
        .param("k", refine as f64);
    let bound = 2f64.powf(1.0 / p - 1.0);
    r.value("gap_bound", bound);
    r.flag(format!(
        "lifted dist_d columns are homogeneous-norm gauge lower bounds (N={level}, k={refine})"
    ));
    let o = UnparamPath::canonicalize(&PiecewiseLinearPath::constant(2, 1.0)?, p, level)?;
    let mut sweep = Sweep::new([
        "eps",
        "dist_sig_closed",
        "dist_d1_closed",
        "dist_d_lift_closed",
        "dist_sig_printed",
        "dist_d1_printed",
        "dist_d_lift_printed",
    ]);
    let mut sig_curve = Vec::new();
    for j in 1..=j_max {
        let eps = 0.5f64.powi(j as i32);
        let mut row = vec![eps];
        for variant in [XEpsVariant::ClosedLoop, XEpsVariant::AsPrinted] {
            let tag = variant.label();
            match gap_row(eps, variant, &o, p, level, refine) {
                Ok(g) => {
                    row.extend([g.sig, g.level_one, g.lifted]);
                    match variant {
                        XEpsVariant::ClosedLoop => {
                            sig_curve.push((j, g.sig));
                            r.bound(BoundCheck::new(
                                format!("dist_d level 1 {tag} j={j}"),
                                g.level_one,
                                Relation::Ge,
                                bound,
                                1e-6,
                                "gap witness: lower bound 2^(1/p-1)",
                            ));
                            if g.lifted < bound - 1e-6 {
                                r.flag(format!(
                                    "lifted dist_d {tag} j={j} is {} below 2^(1/p-1) = {bound}",
                                    g.lifted
                                ));
                            }
                        }
                        XEpsVariant::AsPrinted => {
                            for (name, v) in [
                                ("dist_sig", g.sig),
                                ("dist_d level 1", g.level_one),
                                ("dist_d lifted", g.lifted),
                            ] {
                                r.bound(BoundCheck::new(
                                    format!("{name} {tag} j={j}"),
                                    v,
                                    Relation::Finite,
                                    0.0,
                                    0.0,
                                    "printed variant: curves reported",
                                ));
                            }
                        }
                    }
                }
                Err(e) => {
                    row.extend([f64::NAN; 3]);
                    r.bound(BoundCheck::failed(
                        format!("X_eps {tag} j={j}"),
                        e.to_string(),
                        "gap witness: family construction",
                    ));
                }
            }
        }
        sweep.push(row);
    }
    match sig_curve.last() {
        Some(&(j, sig)) => {
            r.bound(BoundCheck::new(
                format!("dist_sig closed at smallest eps (j={j})"),
                sig,
                Relation::Lt,
                SIG_CONVERGENCE,
                0.0,
                "gap witness: signatures converge to the trivial class",
            ));
        }
        None => {
            r.bound(BoundCheck::failed(
                "dist_sig closed at smallest eps",
                "no admissible eps",
                "gap witness: signatures converge to the trivial class",
            ));
        }
    }
    if sig_curve.windows(2).any(|w| w[1].1 > w[0].1) {
        r.flag("dist_sig along the closed variant is not monotone in eps");
    }
    let printed = family_x_eps(0.25, &[1.0, 0.0], &[0.0, 1.0], XEpsVariant::AsPrinted)?;
    if !printed.is_irreducible(COLLINEAR_TOL) {
        r.flag(format!(
            "printed variant is not irreducible: it reduces to {} segments",
            printed.tree_reduce().num_segments()
        ));
    }
    r.sweep = Some(sweep);
    Ok(r.finish())
}

/// For each `n`, bisects for `ε_n` with `d_1-var(Z_{n,ε_n}, Y_n) < δ_n`,
/// where `δ_n` defaults to `2^{-n}`.
pub fn verify_quotient_witness(
    n_max: usize,
    deltas: Option<&[f64]>,
    p: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("quotient_witness");
    r.param("n_max", n_max as f64).param("p", p);
    let deltas: Vec<f64> = match deltas {
        Some(d) if d.len() >= n_max => d[..n_max].to_vec(),
        Some(d) => {
            return Err(Error::OutOfRange(format!(
                "{} thresholds given for n_max = {n_max}",
                d.len()
            )))
        }
        None => (1..=n_max).map(|n| 0.5f64.powi(n as i32)).collect(),
    };
    let v1 = [1.0, 0.0];
    let v2 = [0.0, 1.0];
    let mut sweep = Sweep::new(["n", "delta", "eps_n", "d1", "norm_z"]);
    let mut prev_norm = 0.0;
    for (i, &delta) in deltas.iter().enumerate() {
        let n = (i + 1) as f64;
        let y = family_quotient_y(n, &v1)?;
        let dist = |eps: f64| -> Result<f64> {
            Ok(p_var_distance(&family_quotient_z(n, eps, &v1, &v2)?, &y, 1.0, 1, 0)?.value)
        };
        let quarter = dist(delta / 4.0)?;
        r.bound(BoundCheck::new(
            format!("d_1-var at eps = delta/4, n={n}"),
            quarter,
            Relation::Le,
            delta,
            tol,
            "quotient witness: 1-variation distance at most 4ε",
        ));
        let (mut lo, mut hi) = (delta / 8.0, delta.min(n / 2.0));
        if dist(hi)? < delta {
            lo = hi;
        } else {
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if dist(mid)? < delta {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
        let eps_n = lo;
        let d = dist(eps_n)?;
        let z = family_quotient_z(n, eps_n, &v1, &v2)?;
        let z_norm = p_variation(&z, p)?.value;
        sweep.push(vec![n, delta, eps_n, d, z_norm]);
        r.bound(BoundCheck::new(
            format!("d_1-var(Z, Y) n={n}"),
            d,
            Relation::Lt,
            delta,
            0.0,
            "quotient witness: Z lies in the δ-ball around Y",
        ));
        r.bound(BoundCheck::new(
            format!("Z irreducible n={n}"),
            if z.is_irreducible(COLLINEAR_TOL) {
                1.0
            } else {
                0.0
            },
            Relation::Eq,
            1.0,
            0.0,
            "quotient witness: Z is tree-reduced",
        ));
        r.bound(BoundCheck::new(
            format!("||Z|| increasing n={n}"),
            z_norm,
            Relation::Ge,
            prev_norm,
            0.0,
            "quotient witness: p-variation grows without bound",
        ));
        prev_norm = z_norm;
    }
    r.sweep = Some(sweep);
    Ok(r.finish())
}

/// Linear-control identity after constant-speed reparameterisation on random
/// paths, over a grid of `grid` points.
pub fn verify_constant_speed_closed(
    samples: usize,
    grid: usize,
    seed: u64,
    tol: f64,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("constant_speed_closed");
    r.param("samples", samples as f64)
        .param("grid", grid as f64)
        .param("seed", seed as f64);
    let mut g = rng(seed);
    let mut worst_after = 0.0f64;
    let mut worst_before = 0.0f64;
    for _ in 0..samples {
        let segs = g.gen_range(1..=10);
        let dim = g.gen_range(1..=3);
        let x = random_path(&mut g, dim, segs);
        let cs = x.constant_speed();
        let total = cs.one_variation();
        for i in 0..=grid {
            let t = i as f64 / grid as f64;
            let after = (p_variation_interval(&cs, 1.0, 0.0, t)?.value - t * total).abs();
            let before = (p_variation_interval(&x, 1.0, 0.0, t)?.value - t * total).abs();
            worst_after = worst_after.max(after);
            worst_before = worst_before.max(before);
        }
    }
    r.value("max_deviation_before", worst_before);
    r.bound(BoundCheck::new(
        "max |1-var[0,t] - t * 1-var| after reparameterisation",
        worst_after,
        Relation::Le,
        0.0,
        tol,
        "constant-speed linear control",
    ));
    Ok(r.finish())
}

/// `S(X ⋆ Y) = S(X) ⊗ S(Y)` on random pairs.
pub fn verify_chen(samples: usize, seed: u64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("chen");
    r.param("samples", samples as f64)
        .param("seed", seed as f64);
    let mut g = rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let dim = g.gen_range(1..=3);
        let level = g.gen_range(1..=5);
        let (sx, sy) = (g.gen_range(1..=6), g.gen_range(1..=6));
        let x = random_path(&mut g, dim, sx);
        let y = random_path(&mut g, dim, sy);
        let joined = signature(&x.concat(&y)?, level);
        let product = signature(&x, level).mul(&signature(&y, level))?;
        worst = worst.max(joined.tensor().max_abs_diff(product.tensor())?);
    }
    r.bound(BoundCheck::new(
        "max coefficient error of Chen's identity",
        worst,
        Relation::Lt,
        EXACT_TOL,
        0.0,
        "Chen's identity",
    ));
    Ok(r.finish())
}

/// Retraced lines `γ_{nv} ⋆ γ_{−nv}` have trivial level-6 signature.
pub fn verify_tree_like(seed: u64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("tree_like");
    r.param("seed", seed as f64);
    let mut g = rng(seed);
    let v = random_unit(&mut g, 3);
    for n in [1.0, 10.0, 100.0] {
        let x = PiecewiseLinearPath::from_increments(3, &[scaled(&v, n), scaled(&v, -n)])?;
        let err = signature(&x, 6)
            .tensor()
            .max_abs_diff(crate::tensor::GroupElement::identity(3, 6).tensor())?;
        r.bound(BoundCheck::new(
            format!("S(gamma_nv * gamma_-nv) - 1, n={n}"),
            err,
            Relation::Le,
            0.0,
            EXACT_TOL,
            "tree-like paths have trivial signature",
        ));
    }
    Ok(r.finish())
}

/// `‖X‖_{q-var} ≤ ‖X‖_{p-var}` and `d_q ≤ d_p` for `p ≤ q`.
pub fn verify_monotonicity(
    samples: usize,
    seed: u64,
    level: usize,
    refine: u32,
    tol: f64,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("monotonicity");
    r.param("samples", samples as f64)
        .param("seed", seed as f64)
        .param("N", level as f64)
        .param("k", refine as f64);
    let mut g = rng(seed);
    let mut worst_norm = f64::NEG_INFINITY;
    let mut worst_dist = f64::NEG_INFINITY;
    for _ in 0..samples {
        let dim = g.gen_range(1..=3);
        let (sx, sy) = (g.gen_range(1..=5), g.gen_range(1..=5));
        let x = random_path(&mut g, dim, sx);
        let y = random_path(&mut g, dim, sy);
        for (p, q) in [(1.0, 1.5), (1.5, 2.5)] {
            worst_norm = worst_norm.max(p_variation(&x, q)?.value - p_variation(&x, p)?.value);
            for lv in [1, level] {
                let dq = p_var_distance(&x, &y, q, lv, refine)?.value;
                let dp = p_var_distance(&x, &y, p, lv, refine)?.value;
                worst_dist = worst_dist.max(dq - dp);
            }
        }
    }
    r.bound(BoundCheck::new(
        "max (||X||_q - ||X||_p)",
        worst_norm,
        Relation::Le,
        0.0,
        tol,
        "p-variation is non-increasing in p",
    ));
    r.bound(BoundCheck::new(
        "max (d_q - d_p)",
        worst_dist,
        Relation::Le,
        0.0,
        tol,
        "p-variation distance is non-increasing in p",
    ));
    Ok(r.finish())
}

/// Sub-additivity of `‖·‖_{p-var}` under concatenation and super-additivity of
/// the control over adjacent intervals.
pub fn verify_additivity(
    samples: usize,
    seed: u64,
    p: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("additivity");
    r.param("samples", samples as f64)
        .param("seed", seed as f64)
        .param("p", p);
    let mut g = rng(seed);
    let mut worst_sub = f64::NEG_INFINITY;
    let mut worst_super = f64::NEG_INFINITY;
    for _ in 0..samples {
        let dim = g.gen_range(1..=3);
        let (sx, sy) = (g.gen_range(1..=6), g.gen_range(1..=6));
        let x = random_path(&mut g, dim, sx);
        let y = random_path(&mut g, dim, sy);
        let joined = p_variation(&x.concat(&y)?, p)?.value;
        let sum = p_variation(&x, p)?.value + p_variation(&y, p)?.value;
        worst_sub = worst_sub.max((joined - sum) / sum.max(1.0));
        let mut ts = [
            g.gen_range(0.0..1.0),
            g.gen_range(0.0..1.0),
            g.gen_range(0.0..1.0),
        ];
        ts.sort_by(f64::total_cmp);
        let [s, u, t] = ts;
        let lhs = control(&x, p, s, u)? + control(&x, p, u, t)?;
        let rhs = control(&x, p, s, t)?;
        worst_super = worst_super.max((lhs - rhs) / rhs.max(1.0));
    }
    r.bound(BoundCheck::new(
        "max relative (||X*Y|| - ||X|| - ||Y||)",
        worst_sub,
        Relation::Le,
        0.0,
        tol,
        "sub-additivity under concatenation",
    ));
    r.bound(BoundCheck::new(
        "max relative (w(s,u) + w(u,t) - w(s,t))",
        worst_super,
        Relation::Le,
        0.0,
        tol,
        "super-additivity of the control",
    ));
    Ok(r.finish())
}

/// Shuffle-product test on the level-4 signature of every corpus path and
/// family member.
pub fn verify_group_like(samples: usize, seed: u64) -> Result<VerificationReport> {
    const LEVEL: usize = 4;
    const TOL: f64 = 1e-10;
    let mut r = VerificationReport::new("group_like");
    r.param("samples", samples as f64)
        .param("seed", seed as f64);
    let mut paths = random_corpus(seed, samples, 3, 6);
    paths.push(example_path(0.1)?);
    paths.push(unbounded_base());
    for j in 2..=10 {
        let eps = 0.5f64.powi(j);
        for v in [XEpsVariant::AsPrinted, XEpsVariant::ClosedLoop] {
            paths.push(family_x_eps(eps, &[1.0, 0.0], &[0.0, 1.0], v)?);
        }
    }
    let failures = paths
        .par_iter()
        .filter(|x| !signature(x, LEVEL).is_group_like(TOL))
        .count();
    r.value("paths", paths.len() as f64);
    r.bound(BoundCheck::new(
        "signatures failing the shuffle test",
        failures as f64,
        Relation::Eq,
        0.0,
        0.0,
        "signatures are group-like",
    ));
    Ok(r.finish())
}

/// Runs one named check with the configuration.
pub fn run_check(name: &str, cfg: &HarnessConfig) -> Result<VerificationReport> {
    match name {
        "additivity" => verify_additivity(cfg.samples, cfg.seed, cfg.p, cfg.tol),
        "cauchy_gap" => verify_cauchy_gap(cfg.j_max, cfg.p, cfg.level, cfg.refine),
        "chen" => verify_chen(cfg.samples.max(1) * 2, cfg.seed),
        "constant_speed_closed" => {
            verify_constant_speed_closed(cfg.samples / 2, 100, cfg.seed, cfg.tol)
        }
        "dstar_separation" => verify_dstar_separation(cfg.p, cfg.directions, cfg.seed, cfg.tol),
        "example_pvar" => verify_example_pvar(0.1, cfg.p),
        "group_like" => verify_group_like(cfg.samples, cfg.seed),
        "monotonicity" => verify_monotonicity(cfg.samples, cfg.seed, 2, 2, cfg.tol),
        "quotient_witness" => verify_quotient_witness(cfg.n_max, None, cfg.p, cfg.tol),
        "tree_like" => verify_tree_like(cfg.seed),
        "unbounded_balls" => verify_unbounded_balls(cfg.n_max, cfg.eps, cfg.p, cfg.level, cfg.tol),
        other => Err(Error::OutOfRange(format!(
            "unknown check '{other}'; expected one of {}",
            CHECKS.join(", ")
        ))),
    }
}

/// Runs every check in parallel; reports come back sorted by name.
pub fn run_all(cfg: &HarnessConfig) -> Result<Vec<VerificationReport>> {
    let mut reports: Vec<VerificationReport> = CHECKS
        .par_iter()
        .map(|name| run_check(name, cfg))
        .collect::<Result<_>>()?;
    reports.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    Ok(reports)
}
