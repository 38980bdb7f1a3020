//! The arc-length parametrization `Ψ(x) = 1 + dist(base, x)` and the metric
//!
//! ```text
//! d_Ψ(a, b) = (1/Ψ(a∧b) − 1/Ψ(a)) + (1/Ψ(a∧b) − 1/Ψ(b))
//! ```
//!
//! with the meet taken in the parametrization's own view. `Ψ` is strictly
//! increasing along every path leaving the base, so `d_Ψ` is the path
//! metric whose length element is `|d(1/Ψ)|`. Values are exact.

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{to_big, Q};
use crate::tangent::TangentClassAtom;
use crate::tree::{OrderView, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("point is not a member of the tangent class")]
    NotInClass,
    #[error("point coincides with the class anchor")]
    AtAnchor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization {
    view: OrderView,
}

impl Parametrization {
    pub fn new(view: OrderView) -> Self {
        Parametrization { view }
    }

    pub fn view(&self) -> &OrderView {
        &self.view
    }

    /// `Ψ(x) = 1 + dist(base, x)`.
    pub fn psi(&self, x: &Point) -> Q {
        Q::one() + self.view.height(x)
    }

    fn inverse_psi(&self, x: &Point) -> BigRational {
        to_big(&self.psi(x)).recip()
    }

    pub fn d_psi(&self, a: &Point, b: &Point) -> BigRational {
        if a == b {
            return BigRational::zero();
        }
        let m = self.view.meet(a, b);
        let at_meet = self.inverse_psi(&m);
        (&at_meet - self.inverse_psi(a)) + (at_meet - self.inverse_psi(b))
    }

    /// A radius `ε > 0` such that the open `d_Ψ`-ball of radius `ε` around
    /// `p` stays inside `atom`. Returns `d_Ψ(p, anchor)`: leaving the class
    /// means passing through the anchor, and `d_Ψ` is additive along paths.
    pub fn epsilon_witness(
        &self,
        p: &Point,
        atom: &TangentClassAtom,
    ) -> Result<BigRational, MetricError> {
        if *p == atom.anchor {
            return Err(MetricError::AtAnchor);
        }
        if !atom.contains(self.view.skeleton(), p) {
            return Err(MetricError::NotInClass);
        }
        Ok(self.d_psi(p, &atom.anchor))
    }
}

pub fn psi(param: &Parametrization, x: &Point) -> Q {
    param.psi(x)
}

pub fn d_psi(param: &Parametrization, a: &Point, b: &Point) -> BigRational {
    param.d_psi(a, b)
}

pub fn epsilon_witness(
    param: &Parametrization,
    p: &Point,
    atom: &TangentClassAtom,
) -> Result<BigRational, MetricError> {
    param.epsilon_witness(p, atom)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_bigint::BigInt;

    use super::*;
    use crate::tangent::tangent_class;
    use crate::tree::parse_tree;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn setup() -> (Arc<crate::tree::TreeSkeleton>, Parametrization) {
        let t = Arc::new(parse_tree("((a:1,b:2)v:1)r;").unwrap());
        let param = Parametrization::new(OrderView::rooted(t.clone()));
        (t, param)
    }

    #[test]
    fn psi_is_one_plus_height() {
        let (t, param) = setup();
        let p = |s: &str| t.parse_point(s).unwrap();
        assert_eq!(param.psi(&p("r")), Q::from_integer(1));
        assert_eq!(param.psi(&p("b")), Q::from_integer(4));
        assert_eq!(param.psi(&p("v-b@1/2")), Q::new(5, 2));
    }

    #[test]
    fn d_psi_examples() {
        let (t, param) = setup();
        let p = |s: &str| t.parse_point(s).unwrap();
        assert_eq!(param.d_psi(&p("a"), &p("b")), big(5, 12));
        assert_eq!(param.d_psi(&p("r"), &p("v")), big(1, 2));
        for x in ["r", "a", "v-b@1/3"] {
            assert!(param.d_psi(&p(x), &p(x)).is_zero());
        }
    }

    #[test]
    fn epsilon_examples() {
        let (t, param) = setup();
        let p = |s: &str| t.parse_point(s).unwrap();
        let a_at_v = tangent_class(&t, &p("a"), &p("v")).unwrap();
        assert_eq!(param.epsilon_witness(&p("a"), &a_at_v), Ok(big(1, 6)));
        let r_at_v = tangent_class(&t, &p("r"), &p("v")).unwrap();
        assert_eq!(param.epsilon_witness(&p("r"), &r_at_v), Ok(big(1, 2)));
        assert_eq!(
            param.epsilon_witness(&p("v"), &a_at_v),
            Err(MetricError::AtAnchor)
        );
        assert_eq!(
            param.epsilon_witness(&p("b"), &a_at_v),
            Err(MetricError::NotInClass)
        );
    }
}
