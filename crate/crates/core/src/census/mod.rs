//! Singular-point census of the symmetric pencil.
//!
//! Every singular point has at most four distinct coordinate values, so the
//! search runs over multiplicity patterns. For a pattern, the admissible
//! value vectors form a linear space `W` (cut out by `S1 = 0`, plus
//! "the four values sum to zero" when there are four of them), and the
//! singularity conditions become rank conditions on binary forms over `W`.

mod nodes;
mod orbit;
mod patterns;
mod report;
mod solve;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::{FieldElement, Rational, Ring, UniPoly};
use crate::hessian::NodeStatus;
use crate::pencil::PencilParam;

pub use nodes::{census, census_with, evaluate_param, CensusData, CensusOptions, ParamEvaluation};
pub use orbit::{
    block_symmetries, line_count, orbit_length, orbit_length_linear, points_for_labeled, stabilizer_size,
};
pub use patterns::{enumerate_patterns, MultiplicityPattern, MAX_COORDS};
pub use report::{
    orbit_record, render_param, render_value, AlgebraicNumber, AlgebraicParam, CensusReport, ExceptionalParam,
    OrbitRecord, ParamSummary,
};
pub use solve::solve_pattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchKind {
    /// Finitely many points at one parameter (and its conjugates).
    Isolated,
    /// Present for every parameter; with a constraint when a value moves.
    GenericFamily,
    /// A positive-dimensional singular locus at one parameter.
    ContinuousFamily,
}

impl fmt::Display for BranchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchKind::Isolated => "isolated",
            BranchKind::GenericFamily => "generic-family",
            BranchKind::ContinuousFamily => "continuous-family",
        })
    }
}

/// `a(c)*lambda + b(c) = 0` linking the free value `c` to the parameter,
/// where the family's values are `u_k(c)` and `c = infinity` is allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyConstraint {
    pub a: UniPoly,
    pub b: UniPoly,
    /// Formal degree in `c` (points on the family for a generic parameter).
    pub degree: usize,
}

impl FamilyConstraint {
    /// Coefficient polynomials `(P_alpha, P_beta)` of the same relation
    /// written as `P_alpha(c)*alpha + P_beta(c)*beta = 0`, primitive over Z.
    pub fn alpha_beta(&self) -> (UniPoly, UniPoly) {
        let pa = &self.a + &(&self.b * &UniPoly::constant(Rational::from_int(2)));
        let pb = self.a.clone();
        let all: Vec<Rational> = pa.coeffs().iter().chain(pb.coeffs()).cloned().collect();
        let l = Rational::from_int(Rational::lcm_denoms(all.iter()));
        let mut g = num_bigint::BigInt::from(0);
        for c in &all {
            g = num_integer::Integer::gcd(&g, &(c.numer() * (l.numer() / c.denom())));
        }
        let top = (0..=pa.deg().max(pb.deg()))
            .rev()
            .flat_map(|i| [pb.coeff(i), pa.coeff(i)])
            .find(|c| !c.is_zero())
            .expect("nonzero constraint");
        let mut s = &l / &Rational::from_int(g);
        if top.is_negative() {
            s = -s;
        }
        (pa.scale(&s), pb.scale(&s))
    }

    /// Human-readable form such as `beta*c^2 + (3*alpha + 4*beta)`.
    pub fn render(&self, var: &str) -> String {
        let (pa, pb) = self.alpha_beta();
        let mut terms = Vec::new();
        for i in (0..=self.degree).rev() {
            let (ca, cb) = (pa.coeff(i), pb.coeff(i));
            if ca.is_zero() && cb.is_zero() {
                continue;
            }
            let coef = render_linear(&ca, &cb).expect("nonzero pair");
            let both = !ca.is_zero() && !cb.is_zero();
            let coef = if both { format!("({coef})") } else { coef };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}*{var}"),
                _ => format!("{coef}*{var}^{i}"),
            });
        }
        terms.join(" + ").replace("+ -", "- ")
    }

    pub fn lambda_at(&self, c: &FieldElement) -> Option<FieldElement> {
        let lift = |r: &Rational| FieldElement::rational(r.clone());
        let a = self.a.eval_in(c, lift);
        let b = self.b.eval_in(c, lift);
        (!a.is_zero()).then(|| (-b / a).simplify())
    }
}

fn render_linear(ca: &Rational, cb: &Rational) -> Option<String> {
    let term = |c: &Rational, v: &str| -> Option<String> {
        if c.is_zero() {
            None
        } else if *c == Rational::from_int(1) {
            Some(v.to_string())
        } else if *c == Rational::from_int(-1) {
            Some(format!("-{v}"))
        } else {
            Some(format!("{c}*{v}"))
        }
    };
    let parts: Vec<String> = [term(ca, "alpha"), term(cb, "beta")].into_iter().flatten().collect();
    (!parts.is_empty()).then(|| parts.join(" + ").replace("+ -", "- "))
}

/// One solution component of a pattern.
#[derive(Clone, Debug)]
pub struct SolutionBranch {
    pub kind: BranchKind,
    pub pattern: MultiplicityPattern,
    /// Concrete values (0-dimensional branches without a free value),
    /// scaled so the first nonzero value is 1.
    pub values: Vec<FieldElement>,
    /// For families: value `k` is `sum_j linear_values[k][j] * t_j`, with
    /// `t_0 = 1` and `t_1, ...` the free parameters.
    pub linear_values: Vec<Vec<Rational>>,
    pub constraint: Option<FamilyConstraint>,
    /// Parameter of isolated branches and continuous families.
    pub param: Option<PencilParam>,
    /// Labeled points represented (conjugates and block-permuted images).
    pub labeled_points: u64,
    pub free_params: usize,
}

impl SolutionBranch {
    /// 0 for point orbits, otherwise the dimension of the singular locus.
    pub fn dimension(&self) -> usize {
        match self.kind {
            BranchKind::ContinuousFamily => self.free_params,
            _ => 0,
        }
    }

    pub fn is_generic(&self) -> bool {
        self.kind == BranchKind::GenericFamily
    }

    /// Degree over Q of the parameter, for isolated branches.
    pub fn param_degree(&self) -> Option<usize> {
        self.param.as_ref().and_then(|p| p.lambda_minpoly()).map(|m| m.deg())
    }

    /// Points of projective space contributed at each conjugate parameter.
    pub fn points_per_param(&self) -> u64 {
        match self.kind {
            BranchKind::Isolated => {
                let e = self.param_degree().unwrap_or(1) as u64;
                points_for_labeled(&self.pattern, self.labeled_points / e)
            }
            BranchKind::GenericFamily => match &self.constraint {
                Some(c) => points_for_labeled(&self.pattern, c.degree as u64),
                None => points_for_labeled(&self.pattern, self.labeled_points),
            },
            BranchKind::ContinuousFamily => line_count(&self.pattern),
        }
    }

    /// Orbit length of one point (for families: a generic member).
    pub fn orbit_length(&self) -> u64 {
        match self.kind {
            BranchKind::ContinuousFamily => line_count(&self.pattern),
            _ if self.constraint.is_some() => orbit_length_linear(&self.pattern, &self.linear_values),
            _ => orbit_length(&self.pattern, &self.values),
        }
    }
}

/// A branch together with its status at a given parameter.
#[derive(Clone, Debug)]
pub struct SingularOrbit {
    pub branch: SolutionBranch,
    pub orbit_length: u64,
    pub dimension: usize,
    pub node_status: NodeStatus,
    /// Singular points at the parameter that are ordinary nodes.
    pub nodes: u64,
    /// Singular points of this orbit at the parameter (or lines, for
    /// continuous families).
    pub points: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_rendering() {
        // lambda = (c^2 + 1) / (2 (c^2 + 4)) on the (4,4,1,1) family
        let fc = FamilyConstraint {
            a: UniPoly::from_ints(&[4, 0, 1]),
            b: UniPoly::from_rationals(&[Rational::new(-1, 2), Rational::from_int(0), Rational::new(-1, 2)]),
            degree: 2,
        };
        let (pa, pb) = fc.alpha_beta();
        assert_eq!(pa, UniPoly::from_ints(&[3]));
        assert_eq!(pb, UniPoly::from_ints(&[4, 0, 1]));
        assert_eq!(fc.render("c"), "beta*c^2 + (3*alpha + 4*beta)");
    }
}
