//! Node certification per parameter, exceptional parameters, and the
//! choice of the best member of the pencil.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{poly_resultant, FieldElement, Poly, Rational, Ring, UniPoly};
use crate::hessian::{chart_hessian6, verify_orbit_nodes, NodeStatus};
use crate::pencil::{PencilParam, SymPoint};

use super::{
    enumerate_patterns, points_for_labeled, BranchKind, CensusReport, SingularOrbit, SolutionBranch,
};

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Solve patterns on the rayon thread pool.
    pub parallel: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { parallel: true }
    }
}

/// Precomputed data for a branch present at every parameter.
#[derive(Clone, Debug)]
enum GenericData {
    /// Hessian determinant of the representative as a polynomial in lambda.
    Points { dn: Poly<FieldElement> },
    /// Hessian determinant along the family as a polynomial in `c`, with
    /// the parameter eliminated through the constraint.
    Family { dn: UniPoly, at_infinity: Vec<FieldElement> },
}

/// Solved census for one dimension, ready to be evaluated at parameters.
#[derive(Clone, Debug)]
pub struct CensusData {
    pub n: usize,
    pub pattern_count: usize,
    pub branches: Vec<SolutionBranch>,
    generic: Vec<(usize, GenericData)>,
    /// `rho` is exceptional iff its minimal polynomial shares a root with one of these.
    exceptional: Vec<UniPoly>,
}

/// All singular orbits of one member of the pencil (with its conjugates).
#[derive(Clone, Debug)]
pub struct ParamEvaluation {
    pub param: PencilParam,
    pub lambda_minpoly: UniPoly,
    pub exceptional: bool,
    pub orbits: Vec<SingularOrbit>,
    pub total_nodes: u64,
    pub all_nodes: bool,
}

pub fn census(n: usize) -> Result<CensusReport> {
    census_with(n, &CensusOptions::default())
}

pub fn census_with(n: usize, opts: &CensusOptions) -> Result<CensusReport> {
    CensusData::solve(n, opts)?.report()
}

/// Same as [`CensusData::evaluate`] after solving dimension `n`.
pub fn evaluate_param(n: usize, param: &PencilParam) -> Result<ParamEvaluation> {
    CensusData::solve(n, &CensusOptions::default())?.evaluate(param)
}

fn arrangement(branch_values: usize, mults: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, &m) in mults.iter().enumerate().take(branch_values) {
        out.extend(std::iter::repeat(k).take(m));
    }
    out
}

fn chart_positions(blocks: &[usize], chart_block: usize) -> (usize, usize) {
    let chart = blocks.iter().position(|&b| b == chart_block).expect("block present");
    let last = blocks.len() - 1;
    (chart, if chart == last { 0 } else { last })
}

fn lift(m: &UniPoly) -> Poly<FieldElement> {
    m.map(|r| FieldElement::rational(r.clone()))
}

/// `A^e * m(-B/A)`: vanishes exactly at the family points over all
/// conjugates of a parameter with minimal polynomial `m`.
fn family_points_poly(a: &UniPoly, b: &UniPoly, m: &UniPoly) -> UniPoly {
    let e = m.deg();
    let minus_b = -b;
    (0..=e).fold(UniPoly::zero(), |acc, k| {
        let term = &(&minus_b.pow(k as u32) * &a.pow((e - k) as u32)) * &UniPoly::constant(m.coeff(k));
        &acc + &term
    })
}

/// Interpolates `lambda -> res_c(f(c), a(c)*lambda + b(c))`.
fn resultant_in_lambda(f: &UniPoly, a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    let top = a.deg().max(b.deg());
    let deg = f.deg() + 1;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut t = 0i64;
    while xs.len() < deg + 1 {
        let l = Rational::from_int(t);
        t += 1;
        let g = &(a * &UniPoly::constant(l.clone())) + b;
        if g.is_zero() || g.deg() != top {
            continue;
        }
        ys.push(resultant_or_zero(f, &g)?);
        xs.push(l);
    }
    Ok(lagrange(&xs, &ys))
}

fn resultant_or_zero(f: &UniPoly, g: &UniPoly) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        Ok(Rational::from_int(0))
    } else {
        poly_resultant(f, g)
    }
}

fn lagrange(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for i in 0..xs.len() {
        let mut basis = UniPoly::constant(Rational::from_int(1));
        let mut denom = Rational::from_int(1);
        for j in 0..xs.len() {
            if i != j {
                basis = &basis * &UniPoly::linear_root(xs[j].clone());
                denom = denom * (&xs[i] - &xs[j]);
            }
        }
        acc = &acc + &basis.scale(&(&ys[i] / &denom));
    }
    acc
}

fn nontrivial_gcd(a: &UniPoly, m: &UniPoly) -> bool {
    if a.is_zero() {
        return true;
    }
    a.gcd(m).deg() > 0
}

impl CensusData {
    pub fn solve(n: usize, opts: &CensusOptions) -> Result<Self> {
        let patterns = enumerate_patterns(n)?;
        let solved: Vec<Result<Vec<SolutionBranch>>> = if opts.parallel {
            patterns.par_iter().map(|p| super::solve_pattern(n, p)).collect()
        } else {
            patterns.iter().map(|p| super::solve_pattern(n, p)).collect()
        };
        let mut branches = Vec::new();
        for r in solved {
            branches.extend(r?);
        }
        let generic: Vec<(usize, GenericData)> = {
            let idx: Vec<usize> = (0..branches.len()).filter(|&i| branches[i].is_generic()).collect();
            let compute = |&i: &usize| generic_data(&branches[i]).map(|d| (i, d));
            if opts.parallel {
                idx.par_iter().map(compute).collect::<Result<_>>()?
            } else {
                idx.iter().map(compute).collect::<Result<_>>()?
            }
        };
        let exceptional = exceptional_polys(&branches)?;
        Ok(CensusData { n, pattern_count: patterns.len(), branches, generic, exceptional })
    }

    pub fn exceptional_polys(&self) -> &[UniPoly] {
        &self.exceptional
    }

    pub fn is_exceptional(&self, m: &UniPoly) -> bool {
        self.exceptional.iter().any(|e| nontrivial_gcd(e, m))
    }

    /// Parameters at which a generic orbit stops being a node, as
    /// polynomials in lambda over Q.
    pub fn degeneration_polys(&self) -> Result<Vec<UniPoly>> {
        let mut out = Vec::new();
        for (i, data) in &self.generic {
            match data {
                GenericData::Points { dn } => out.push(norm_in_lambda(dn)?),
                GenericData::Family { dn, at_infinity } => {
                    let fc = self.branches[*i].constraint.as_ref().expect("family constraint");
                    if dn.deg() > 0 {
                        out.push(resultant_in_lambda(dn, &fc.a, &fc.b)?);
                    }
                    let d = fc.degree;
                    let (ad, bd) = (fc.a.coeff(d), fc.b.coeff(d));
                    if !ad.is_zero() && !has_collision(at_infinity) {
                        let l = -bd / ad;
                        let p = PencilParam::from_lambda(&FieldElement::rational(l.clone()));
                        let pt = SymPoint::new(at_infinity.clone(), self.branches[*i].pattern.parts().to_vec())?;
                        if verify_orbit_nodes(&pt, &p)? != NodeStatus::Node {
                            out.push(UniPoly::linear_root(l));
                        }
                    }
                }
            }
        }
        Ok(out.into_iter().filter(|p| p.deg() > 0).map(|p| p.monic()).collect())
    }

    /// Isolated branches grouped by the minimal polynomial of lambda.
    pub fn isolated_keys(&self) -> BTreeMap<Vec<Rational>, Vec<usize>> {
        let mut out: BTreeMap<Vec<Rational>, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.branches.iter().enumerate() {
            if b.kind == BranchKind::Isolated {
                let m = b.param.as_ref().and_then(|p| p.lambda_minpoly()).expect("isolated branches have lambda");
                out.entry(m.into_coeffs()).or_default().push(i);
            }
        }
        out
    }

    pub fn evaluate(&self, param: &PencilParam) -> Result<ParamEvaluation> {
        let m = param.lambda_minpoly().ok_or(Error::DegenerateMember)?;
        let exceptional = self.is_exceptional(&m);
        let mut orbits = Vec::new();
        for (i, data) in &self.generic {
            orbits.push(self.generic_orbit(&self.branches[*i], data, param, &m)?);
        }
        for b in &self.branches {
            let same = |p: &PencilParam| p.lambda_minpoly().as_ref() == Some(&m);
            match b.kind {
                BranchKind::Isolated if b.param.as_ref().is_some_and(same) => {
                    let p = b.param.as_ref().unwrap();
                    let pt = SymPoint::new(b.values.clone(), b.pattern.parts().to_vec())?;
                    let status = verify_orbit_nodes(&pt, p)?;
                    let total = b.points_per_param();
                    orbits.push(SingularOrbit {
                        branch: b.clone(),
                        orbit_length: b.orbit_length(),
                        dimension: 0,
                        node_status: status,
                        nodes: if status == NodeStatus::Node { total } else { 0 },
                        points: total,
                    });
                }
                BranchKind::ContinuousFamily if b.param.as_ref().is_some_and(same) => {
                    orbits.push(SingularOrbit {
                        branch: b.clone(),
                        orbit_length: b.orbit_length(),
                        dimension: b.dimension(),
                        node_status: NodeStatus::NotNode,
                        nodes: 0,
                        points: b.points_per_param(),
                    });
                }
                _ => {}
            }
        }
        let total_nodes = orbits.iter().map(|o| o.nodes).sum();
        let all_nodes = orbits.iter().all(|o| o.node_status == NodeStatus::Node);
        Ok(ParamEvaluation { param: param.clone(), lambda_minpoly: m, exceptional, orbits, total_nodes, all_nodes })
    }

    fn generic_orbit(
        &self,
        b: &SolutionBranch,
        data: &GenericData,
        param: &PencilParam,
        m: &UniPoly,
    ) -> Result<SingularOrbit> {
        let (good, points) = match data {
            GenericData::Points { dn } => {
                let total = b.points_per_param();
                let degenerate = dn.is_zero() || dn.gcd(&lift(m)).deg() > 0;
                (if degenerate { 0 } else { total }, total)
            }
            GenericData::Family { dn, at_infinity } => {
                let fc = b.constraint.as_ref().expect("family constraint");
                let e = m.deg() as u64;
                let pts = family_points_poly(&fc.a, &fc.b, m);
                let mut roots = pts.squarefree_part();
                // points where two values meet belong to a coarser pattern
                let u: Vec<UniPoly> = b.linear_values.iter().map(|r| UniPoly::from_rationals(r)).collect();
                for k in 0..u.len() {
                    for l in k + 1..u.len() {
                        let diff = &u[k] - &u[l];
                        if diff.deg() == 1 && roots.eval(&(-diff.coeff(0) / diff.coeff(1))).is_zero() {
                            roots = roots.divrem(&diff).0;
                        }
                    }
                }
                let finite = roots.deg() as u64;
                let bad = if dn.is_zero() { finite } else { roots.gcd(dn).deg() as u64 };
                let (mut labeled, mut labeled_good) = (finite / e, (finite - bad) / e);
                if m.deg() == 1 {
                    let rho = -m.coeff(0);
                    let d = fc.degree;
                    if (&fc.a.coeff(d) * &rho + fc.b.coeff(d)).is_zero() && !has_collision(at_infinity) {
                        labeled += 1;
                        let pt = SymPoint::new(at_infinity.clone(), b.pattern.parts().to_vec())?;
                        if verify_orbit_nodes(&pt, param)? == NodeStatus::Node {
                            labeled_good += 1;
                        }
                    }
                }
                let points = points_for_labeled(&b.pattern, labeled);
                let good = if labeled_good == labeled { points } else { points_for_labeled(&b.pattern, labeled_good) };
                (good, points)
            }
        };
        let ok = good == points && points == b.points_per_param();
        Ok(SingularOrbit {
            branch: b.clone(),
            orbit_length: b.orbit_length(),
            dimension: 0,
            node_status: if ok { NodeStatus::Node } else { NodeStatus::NotNode },
            nodes: good,
            points,
        })
    }

    /// Every non-exceptional parameter carrying an isolated orbit, plus the
    /// first non-exceptional rational parameter without one.
    pub fn candidates(&self) -> Result<Vec<ParamEvaluation>> {
        let mut out = Vec::new();
        let keys = self.isolated_keys();
        for idx in keys.values() {
            let p = self.branches[idx[0]].param.clone().expect("isolated param");
            let ev = self.evaluate(&p)?;
            if !ev.exceptional {
                out.push(ev);
            }
        }
        'search: for h in 1i64.. {
            for a in 1..=h {
                for b in -h..=h {
                    if a.max(b.abs()) != h || num_integer::Integer::gcd(&a, &b) != 1 {
                        continue;
                    }
                    let p = PencilParam::from_ints(a, b)?;
                    let m = p.lambda_minpoly().expect("alpha > 0");
                    if keys.contains_key(m.coeffs()) || self.is_exceptional(&m) {
                        continue;
                    }
                    let ev = self.evaluate(&p)?;
                    if ev.all_nodes {
                        out.push(ev);
                        break 'search;
                    }
                }
            }
            if h > 50 {
                break;
            }
        }
        Ok(out)
    }

    /// Highest node count among parameters where every singular orbit is a
    /// node; ties go to the lexicographically smaller `(alpha, beta)`.
    pub fn best(&self) -> Result<Option<ParamEvaluation>> {
        let cands = self.candidates()?;
        let pool: Vec<&ParamEvaluation> = if cands.iter().any(|c| c.all_nodes) {
            cands.iter().filter(|c| c.all_nodes).collect()
        } else {
            cands.iter().collect()
        };
        Ok(pool
            .into_iter()
            .max_by(|x, y| {
                x.total_nodes
                    .cmp(&y.total_nodes)
                    .then_with(|| param_order_key(&y.param).cmp(&param_order_key(&x.param)))
            })
            .cloned())
    }
}

pub(crate) fn param_order_key(p: &PencilParam) -> (Vec<Rational>, Vec<Rational>) {
    (p.alpha().coords().to_vec(), p.beta().coords().to_vec())
}

/// Polynomial over Q vanishing at every conjugate of the roots of `p`.
fn norm_in_lambda(p: &Poly<FieldElement>) -> Result<UniPoly> {
    let Some(field) = p.coeffs().iter().find(|c| !c.is_rational()).map(|c| c.field().clone()) else {
        return Ok(p.map(|c| c.as_rational().expect("rational coefficient")));
    };
    let d = field.degree();
    let count = d * p.deg() + 1;
    let mut xs = Vec::with_capacity(count);
    let mut ys = Vec::with_capacity(count);
    for t in 0..count as i64 {
        let l = FieldElement::rational(Rational::from_int(t));
        let v = p.eval(&l).lift_to(&field);
        ys.push(resultant_or_zero(field.modulus(), &v.as_poly())?);
        xs.push(Rational::from_int(t));
    }
    Ok(lagrange(&xs, &ys))
}

fn has_collision(values: &[FieldElement]) -> bool {
    (0..values.len()).any(|i| (0..i).any(|j| values[i] == values[j]))
}

fn generic_data(b: &SolutionBranch) -> Result<GenericData> {
    let mults = b.pattern.parts();
    match &b.constraint {
        None => {
            let blocks = arrangement(b.values.len(), mults);
            let chart_block = b.values.iter().position(|v| !v.is_zero()).expect("nonzero point");
            let (chart, elim) = chart_positions(&blocks, chart_block);
            let x: Vec<Poly<FieldElement>> = blocks.iter().map(|&k| Poly::constant(b.values[k].clone())).collect();
            let alpha = Poly::constant(FieldElement::int(1));
            let beta = Poly::new(vec![FieldElement::int(-1), FieldElement::int(2)]);
            let dn = chart_hessian6(&x, chart, elim, &alpha, &beta).determinant()?;
            Ok(GenericData::Points { dn })
        }
        Some(fc) => {
            let blocks = arrangement(b.linear_values.len(), mults);
            let u: Vec<UniPoly> = b.linear_values.iter().map(|r| UniPoly::from_rationals(r)).collect();
            let chart_block = u.iter().position(|p| p.is_constant() && !p.is_zero()).expect("normalized value");
            let (chart, elim) = chart_positions(&blocks, chart_block);
            let x: Vec<UniPoly> = blocks.iter().map(|&k| u[k].clone()).collect();
            let two = UniPoly::constant(Rational::from_int(2));
            let alpha = fc.a.clone();
            let beta = -&(&(&two * &fc.b) + &fc.a);
            let dn = chart_hessian6(&x, chart, elim, &alpha, &beta).determinant()?;
            let at_infinity = b.linear_values.iter().map(|r| FieldElement::rational(r[1].clone())).collect();
            Ok(GenericData::Family { dn, at_infinity })
        }
    }
}

fn exceptional_polys(branches: &[SolutionBranch]) -> Result<Vec<UniPoly>> {
    let mut out = Vec::new();
    for b in branches {
        if b.kind == BranchKind::ContinuousFamily {
            out.push(b.param.as_ref().and_then(|p| p.lambda_minpoly()).expect("finite lambda"));
        }
    }
    for b in branches {
        let Some(fc) = &b.constraint else { continue };
        let d = fc.degree;
        let lambda_inf = {
            let (ad, bd) = (fc.a.coeff(d), fc.b.coeff(d));
            (!ad.is_zero()).then(|| -bd / ad)
        };
        let push_rational = |out: &mut Vec<UniPoly>, l: Option<Rational>| {
            if let Some(l) = l {
                out.push(UniPoly::linear_root(l));
            }
        };
        // values colliding
        let u: Vec<UniPoly> = b.linear_values.iter().map(|r| UniPoly::from_rationals(r)).collect();
        for k in 0..u.len() {
            for l in k + 1..u.len() {
                let diff = &u[k] - &u[l];
                if diff.deg() == 1 {
                    let c0 = FieldElement::rational(-diff.coeff(0) / diff.coeff(1));
                    push_rational(&mut out, fc.lambda_at(&c0).and_then(|x| x.as_rational()));
                } else {
                    push_rational(&mut out, lambda_inf.clone());
                }
            }
        }
        // two family points merging
        let wr = &(&fc.a.derivative() * &fc.b) - &(&fc.a * &fc.b.derivative());
        if !wr.is_zero() {
            if wr.deg() > 0 {
                out.push(resultant_in_lambda(&wr, &fc.a, &fc.b)?);
            }
            if wr.deg() + 2 < 2 * d {
                push_rational(&mut out, lambda_inf.clone());
            }
        }
        // family points running into a generic point of the same pattern
        for g in branches.iter().filter(|g| g.pattern == b.pattern && g.is_generic() && g.constraint.is_none()) {
            let (i, j) = normalized_pair(&b.linear_values);
            if g.values[i].is_zero() {
                push_rational(&mut out, lambda_inf.clone());
            } else {
                let c0 = g.values[j].clone() / g.values[i].clone();
                if let Some(l) = fc.lambda_at(&c0) {
                    out.push(l.minimal_polynomial());
                }
            }
        }
    }
    let mut polys: Vec<UniPoly> = Vec::new();
    for p in out.into_iter().filter(|p| p.deg() > 0) {
        let p = p.monic();
        if !polys.contains(&p) {
            polys.push(p);
        }
    }
    Ok(polys)
}

/// Value positions reading `1` and `c` in a family's linear values.
fn normalized_pair(rows: &[Vec<Rational>]) -> (usize, usize) {
    let one = Rational::from_int(1);
    let zero = Rational::from_int(0);
    let i = rows.iter().position(|r| r[0] == one && r[1] == zero).expect("value 1");
    let j = rows.iter().position(|r| r[0] == zero && r[1] == one).expect("value c");
    (i, j)
}
