//! Tree-like equivalence classes of piecewise linear paths and three distances
//! between them.
//!
//! A class is represented by its tree-reduced member, reparameterised at
//! constant speed on `[0, 1]`, together with its truncated signature. The
//! distances are:
//!
//! - [`dist_sig`]: a product-topology metric on truncated signatures;
//! - [`dist_d`]: the p-variation distance between canonical representatives;
//! - [`dist_star`]: the p-variation of the reduced path `X ⋆ ←Y`.

use crate::error::{Error, Result};
use crate::path::PiecewiseLinearPath;
use crate::signature::signature;
use crate::tensor::{product_metric_dist, GroupElement};
use crate::variation::{p_var_distance, p_variation_lift};

#[derive(Clone, Debug)]
pub struct UnparamPath {
    canonical: PiecewiseLinearPath,
    sig: GroupElement,
    p: f64,
    level: usize,
}

impl UnparamPath {
    /// Class of `path` with variation exponent `p`; signatures are cached at `level`.
    pub fn canonicalize(path: &PiecewiseLinearPath, p: f64, level: usize) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidExponent(p));
        }
        let canonical = path.tree_reduce().with_horizon(1.0)?.constant_speed();
        let sig = signature(&canonical, level);
        Ok(UnparamPath {
            canonical,
            sig,
            p,
            level,
        })
    }

    pub fn canonical(&self) -> &PiecewiseLinearPath {
        &self.canonical
    }

    pub fn signature(&self) -> &GroupElement {
        &self.sig
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.canonical.dim()
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        if self.p != other.p {
            return Err(Error::ContextMismatch(format!(
                "p = {} vs {}",
                self.p, other.p
            )));
        }
        if self.level != other.level {
            return Err(Error::ContextMismatch(format!(
                "signature level {} vs {}",
                self.level, other.level
            )));
        }
        Ok(())
    }
}

/// Whether the level-`N` signatures agree to `tol` in every coefficient.
///
/// Equal signatures at all levels characterise tree-like equivalence; agreement
/// up to a finite level is necessary but not sufficient, so a `true` here is a
/// level-`N` certificate only.
pub fn equivalent(
    x: &PiecewiseLinearPath,
    y: &PiecewiseLinearPath,
    level: usize,
    tol: f64,
) -> Result<bool> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let diff = signature(x, level)
        .tensor()
        .max_abs_diff(signature(y, level).tensor())?;
    Ok(diff <= tol)
}

/// p-variation distance between the canonical representatives.
pub fn dist_d(a: &UnparamPath, b: &UnparamPath, refine: u32) -> Result<f64> {
    a.check_context(b)?;
    Ok(p_var_distance(&a.canonical, &b.canonical, a.p, a.level, refine)?.value)
}

/// p-variation of the canonical form of `X ⋆ ←Y`: exact at level one, the
/// homogeneous-norm lower bound of [`p_variation_lift`] above it.
pub fn dist_star(a: &UnparamPath, b: &UnparamPath, refine: u32) -> Result<f64> {
    a.check_context(b)?;
    let joined = a.canonical.concat(&b.canonical.reverse())?;
    let reduced = UnparamPath::canonicalize(&joined, a.p, a.level)?;
    Ok(p_variation_lift(&reduced.canonical, a.p, a.level, refine)?.value)
}

/// Product-topology distance between the cached signatures.
pub fn dist_sig(a: &UnparamPath, b: &UnparamPath) -> Result<f64> {
    a.check_context(b)?;
    product_metric_dist(&a.sig, &b.sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::COLLINEAR_TOL;

    fn incs(v: &[[f64; 2]]) -> PiecewiseLinearPath {
        let v: Vec<Vec<f64>> = v.iter().map(|x| x.to_vec()).collect();
        PiecewiseLinearPath::from_increments(2, &v).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let back = incs(&[[1.0, 2.0], [-1.0, -2.0]]);
        let c = UnparamPath::canonicalize(&back, 1.5, 4).unwrap();
        assert_eq!(c.canonical().num_segments(), 0);
        assert_eq!(*c.signature(), GroupElement::identity(2, 4));

        let ex = incs(&[[1.1, 0.0], [-0.2, 0.0], [1.1, 0.0]]);
        let c = UnparamPath::canonicalize(&ex, 1.5, 4).unwrap();
        assert_eq!(c.canonical().num_segments(), 1);
        assert!((c.canonical().endpoint()[0] - 2.0).abs() < 1e-12);

        let x = incs(&[[1.0, 0.0], [0.3, 0.7], [0.0, -2.0]]);
        let c = UnparamPath::canonicalize(&x, 2.0, 3).unwrap();
        let cc = UnparamPath::canonicalize(c.canonical(), 2.0, 3).unwrap();
        assert_eq!(c.canonical(), cc.canonical());
        assert!(c.canonical().is_irreducible(COLLINEAR_TOL));
        assert_eq!(c.canonical().horizon(), 1.0);
    }

    #[test]
    fn equivalence_examples() {
        let x = PiecewiseLinearPath::new(
            2,
            1.0,
            vec![0.0, 0.1, 1.0],
            vec![vec![0.0, 0.0], vec![1.0, 0.5], vec![0.0, 2.0]],
        )
        .unwrap();
        assert!(equivalent(&x, &x.constant_speed(), 4, 1e-12).unwrap());
        let xy = incs(&[[1.0, 0.0], [0.0, 1.0]]);
        let yx = incs(&[[0.0, 1.0], [1.0, 0.0]]);
        assert!(!equivalent(&xy, &yx, 2, 1e-10).unwrap());
        let ex = incs(&[[1.1, 0.0], [-0.2, 0.0], [1.1, 0.0]]);
        let line = PiecewiseLinearPath::line(&[2.0, 0.0], 1.0).unwrap();
        assert!(equivalent(&ex, &line, 6, 1e-12).unwrap());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let x = incs(&[[1.0, 0.0]]);
        let a = UnparamPath::canonicalize(&x, 1.5, 3).unwrap();
        let b = UnparamPath::canonicalize(&x, 1.5, 4).unwrap();
        let c = UnparamPath::canonicalize(&x, 2.0, 3).unwrap();
        assert!(matches!(dist_d(&a, &b, 1), Err(Error::ContextMismatch(_))));
        assert!(matches!(dist_sig(&a, &c), Err(Error::ContextMismatch(_))));
        assert!(matches!(
            dist_star(&b, &c, 1),
            Err(Error::ContextMismatch(_))
        ));
    }

    #[test]
    fn distances_vanish_on_the_diagonal() {
        let x = incs(&[[1.0, 0.0], [0.3, 0.7], [0.0, -2.0]]);
        let a = UnparamPath::canonicalize(&x, 1.5, 3).unwrap();
        assert_eq!(dist_d(&a, &a, 2).unwrap(), 0.0);
        assert_eq!(dist_sig(&a, &a).unwrap(), 0.0);
        assert!(dist_star(&a, &a, 2).unwrap() < 1e-12);
    }

    #[test]
    fn dist_star_between_unit_directions() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for p in [1.0, 1.5, 2.5] {
            let a = UnparamPath::canonicalize(
                &PiecewiseLinearPath::line(&[1.0, 0.0], 1.0).unwrap(),
                p,
                1,
            )
            .unwrap();
            let b =
                UnparamPath::canonicalize(&PiecewiseLinearPath::line(&[s, s], 1.0).unwrap(), p, 1)
                    .unwrap();
            assert!(dist_star(&a, &b, 0).unwrap().powf(p) >= 2.0 - 1e-9);
        }
    }

    #[test]
    fn dist_sig_is_at_most_one() {
        let big = incs(&[[50.0, 0.0], [0.0, -80.0]]);
        let a = UnparamPath::canonicalize(&big, 1.0, 5).unwrap();
        let o = UnparamPath::canonicalize(&PiecewiseLinearPath::constant(2, 1.0).unwrap(), 1.0, 5)
            .unwrap();
        assert!(dist_sig(&a, &o).unwrap() <= 1.0);
    }
}
