//! Node certification through the Hessian of an affine chart equation.
//!
//! For a homogeneous point `x` in `P^{n+1}` on `S1 = 0` we fix one coordinate
//! (the chart) and eliminate another through `S1 = 0`. The remaining `n`
//! coordinates are affine coordinates on the hypersurface's ambient
//! hyperplane, and the chart Hessian is
//! `F_ab - F_ae - F_eb + F_ee` in ambient second partials.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{det_exact, ExactMatrix, FieldElement, Matrix, Ring};
use crate::pencil::{PencilParam, SymPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeStatus {
    Node,
    NotNode,
    Unverified,
}

impl std::fmt::Display for NodeStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NodeStatus::Node => "node",
            NodeStatus::NotNode => "not-node",
            NodeStatus::Unverified => "unverified",
        })
    }
}

/// A point in affine coordinates: the homogeneous coordinate at
/// `chart_index` is 1, the one at `eliminated` is minus the sum of the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    pub n: usize,
    pub chart_index: usize,
    pub eliminated: usize,
    pub coords: Vec<FieldElement>,
}

impl ChartPoint {
    pub fn homogeneous(&self) -> Vec<FieldElement> {
        let mut free = self.coords.iter();
        let h = self.coords.iter().fold(FieldElement::int(1), |acc, c| acc + c.clone());
        (0..self.n + 2)
            .map(|i| {
                if i == self.chart_index {
                    FieldElement::int(1)
                } else if i == self.eliminated {
                    (-h.clone()).simplify()
                } else {
                    free.next().expect("n free coordinates").clone()
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct HessianResult {
    pub matrix: ExactMatrix,
    pub determinant: FieldElement,
    pub is_node: bool,
}

/// Chart at the first nonzero coordinate of the canonical arrangement,
/// eliminating the last coordinate.
pub fn chart_reduce(pt: &SymPoint) -> ChartPoint {
    let xs = pt.coordinates();
    let chart = xs.iter().position(|x| !x.is_zero()).expect("some coordinate is nonzero");
    let last = xs.len() - 1;
    let elim = if chart == last { 0 } else { last };
    chart_reduce_at(pt, chart, elim)
}

pub fn chart_reduce_at(pt: &SymPoint, chart: usize, eliminated: usize) -> ChartPoint {
    let xs = pt.coordinates();
    assert!(chart != eliminated && !xs[chart].is_zero(), "chart coordinate must be nonzero");
    let inv = FieldElement::int(1) / xs[chart].clone();
    let coords = xs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != chart && i != eliminated)
        .map(|(_, x)| (x.clone() * inv.clone()).simplify())
        .collect();
    ChartPoint { n: pt.n(), chart_index: chart, eliminated, coords }
}

/// Ambient second partials of `6F` at the homogeneous point `x`, where
/// `F = alpha*C5/5 - (alpha+beta)*C2*C3/6`.
pub fn ambient_hessian6<R: Ring>(x: &[R], alpha: &R, beta: &R) -> Matrix<R> {
    let c2 = x.iter().fold(R::zero(), |acc, v| acc + v.clone() * v.clone());
    let c3 = x.iter().fold(R::zero(), |acc, v| acc + v.clone() * v.clone() * v.clone());
    let s = alpha.clone() + beta.clone();
    let six_s = R::from_i64(6) * s.clone();
    let two_c3 = R::from_i64(2) * c3;
    Matrix::from_fn(x.len(), x.len(), |i, j| {
        let (xi, xj) = (&x[i], &x[j]);
        let mixed = six_s.clone() * xi.clone() * xj.clone() * (xi.clone() + xj.clone());
        if i == j {
            let cube = xi.clone() * xi.clone() * xi.clone();
            R::from_i64(24) * alpha.clone() * cube
                - s.clone() * (two_c3.clone() + R::from_i64(6) * xi.clone() * c2.clone())
                - mixed
        } else {
            -mixed
        }
    })
}

/// Chart Hessian of `6F` at the homogeneous point `x` (chart coordinate
/// need not be scaled to 1; the result then scales by `x[chart]^3`).
pub fn chart_hessian6<R: Ring>(x: &[R], chart: usize, eliminated: usize, alpha: &R, beta: &R) -> Matrix<R> {
    let amb = ambient_hessian6(x, alpha, beta);
    let free: Vec<usize> = (0..x.len()).filter(|&i| i != chart && i != eliminated).collect();
    let e = eliminated;
    Matrix::from_fn(free.len(), free.len(), |a, b| {
        let (i, j) = (free[a], free[b]);
        amb.get(i, j).clone() - amb.get(i, e).clone() - amb.get(e, j).clone() + amb.get(e, e).clone()
    })
}

/// Chart gradient `F_a - F_e`.
pub fn chart_gradient(y: &ChartPoint, p: &PencilParam) -> Result<Vec<FieldElement>> {
    let (alpha, beta) = unit_alpha(p)?;
    let x = y.homogeneous();
    let c2 = x.iter().fold(FieldElement::int(0), |acc, v| acc + v.pow(2));
    let c3 = x.iter().fold(FieldElement::int(0), |acc, v| acc + v.pow(3));
    let kappa = (alpha.clone() + beta) / FieldElement::int(6);
    let partial = |v: &FieldElement| {
        alpha.clone() * v.pow(4)
            - kappa.clone()
                * (FieldElement::int(2) * v.clone() * c3.clone() + FieldElement::int(3) * v.pow(2) * c2.clone())
    };
    let fe = partial(&x[y.eliminated]);
    Ok((0..x.len())
        .filter(|&i| i != y.chart_index && i != y.eliminated)
        .map(|i| (partial(&x[i]) - fe.clone()).simplify())
        .collect())
}

fn unit_alpha(p: &PencilParam) -> Result<(FieldElement, FieldElement)> {
    if p.is_degenerate() {
        return Err(Error::DegenerateMember);
    }
    Ok((FieldElement::int(1), (p.beta().clone() / p.alpha().clone()).simplify()))
}

/// Hessian of `f = F_(1;beta/alpha)` in the chart, with exact determinant.
pub fn hessian_at(y: &ChartPoint, p: &PencilParam) -> Result<HessianResult> {
    let (alpha, beta) = unit_alpha(p)?;
    let x = y.homogeneous();
    let sixth = FieldElement::int(1) / FieldElement::int(6);
    let matrix = chart_hessian6(&x, y.chart_index, y.eliminated, &alpha, &beta).map(|v| (v.clone() * sixth.clone()).simplify());
    let determinant = det_exact(&matrix)?;
    let is_node = !determinant.is_zero();
    Ok(HessianResult { matrix, determinant, is_node })
}

/// Node status of the whole orbit of `pt`, from one representative.
pub fn verify_orbit_nodes(pt: &SymPoint, p: &PencilParam) -> Result<NodeStatus> {
    let r = hessian_at(&chart_reduce(pt), p)?;
    Ok(if r.is_node { NodeStatus::Node } else { NodeStatus::NotNode })
}
