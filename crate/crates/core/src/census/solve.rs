//! Solving one multiplicity pattern.
//!
//! With values `v` in the admissible space `W`, the point is singular at
//! `lambda` iff `lambda * a_k(v) + b_k(v) = 0` for every value `v_k`, where
//! `P(X) = lambda * A(X) + B(X)` is the quartic every coordinate must satisfy.
//! When `W` is a plane we write `v = w1 + c * w2` (plus the point
//! `c = infinity`, i.e. `v = w2`) with `w1, w2` chosen so that two of the
//! values read `1` and `c`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactnum::{nullspace, FieldElement, NumberField, Rational, Ring, UniPoly, MAX_FIELD_DEGREE};
use crate::pencil::{verify_singular, PencilParam, SymPoint};

use super::orbit::{apply, block_symmetries};
use super::{BranchKind, FamilyConstraint, MultiplicityPattern, SolutionBranch};

fn pow<R: Ring>(v: &R, e: u32) -> R {
    let mut acc = R::one();
    for _ in 0..e {
        acc = acc * v.clone();
    }
    acc
}

/// `3(n+2) * P(v_k)` split as `lambda * a_k + b_k` for every value.
pub(crate) fn quartic_rows<R: Ring>(values: &[R], mults: &[usize]) -> Vec<(R, R)> {
    let n2 = mults.iter().sum::<usize>() as i64;
    let ps = |e: u32| {
        values
            .iter()
            .zip(mults)
            .fold(R::zero(), |acc, (v, &m)| acc + R::from_i64(m as i64) * pow(v, e))
    };
    let (c2, c3, c4) = (ps(2), ps(3), ps(4));
    values
        .iter()
        .map(|v| {
            let a = R::from_i64(3) * c2.clone() * c2.clone()
                - R::from_i64(3 * n2) * c2.clone() * v.clone() * v.clone()
                - R::from_i64(2 * n2) * c3.clone() * v.clone();
            let b = R::from_i64(3 * n2) * pow(v, 4) - R::from_i64(3) * c4.clone();
            (a, b)
        })
        .collect()
}

/// Binary form in `(s, t)` stored as a polynomial in `c = t/s` together
/// with its formal degree; missing top degree means roots at `c = infinity`.
#[derive(Clone, Debug)]
pub(crate) struct Form {
    pub p: UniPoly,
    pub deg: usize,
}

impl Form {
    fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn inf_mult(&self) -> usize {
        self.deg - self.p.deg()
    }

    fn div(&self, g: &Form) -> Form {
        let (q, r) = self.p.divrem(&g.p);
        debug_assert!(r.is_zero());
        Form { p: q, deg: self.deg - g.deg }
    }
}

fn form_gcd<'a>(forms: impl IntoIterator<Item = &'a Form>) -> Option<Form> {
    let nz: Vec<&Form> = forms.into_iter().filter(|f| !f.is_zero()).collect();
    let first = nz.first()?;
    let p = nz.iter().skip(1).fold(first.p.monic(), |g, f| g.gcd(&f.p));
    let inf = nz.iter().map(|f| f.inf_mult()).min().unwrap_or(0);
    Some(Form { deg: p.deg() + inf, p })
}

/// A plane `W` with basis normalized at two value positions.
#[derive(Clone, Debug)]
pub(crate) struct Plane {
    pub w1: Vec<Rational>,
    pub w2: Vec<Rational>,
    /// Value `i` equals 1 and value `j` equals `c` on `w1 + c * w2`.
    pub i: usize,
    pub j: usize,
}

impl Plane {
    fn new(x: &[Rational], y: &[Rational]) -> Plane {
        let k = x.len();
        let i = (0..k).find(|&i| !x[i].is_zero() || !y[i].is_zero()).expect("nonzero plane");
        let det = |j: usize| &x[i] * &y[j] - &x[j] * &y[i];
        let j = (i + 1..k).find(|&j| !det(j).is_zero()).expect("two independent values");
        let d = det(j);
        let w1 = (0..k).map(|m| (&y[j] * &x[m] - &x[j] * &y[m]) / d.clone()).collect();
        let w2 = (0..k).map(|m| (&x[i] * &y[m] - &y[i] * &x[m]) / d.clone()).collect();
        Plane { w1, w2, i, j }
    }

    fn value_polys(&self) -> Vec<UniPoly> {
        self.w1
            .iter()
            .zip(&self.w2)
            .map(|(a, b)| UniPoly::from_rationals(&[a.clone(), b.clone()]))
            .collect()
    }

    fn values_at(&self, c: &FieldElement) -> Vec<FieldElement> {
        self.w1
            .iter()
            .zip(&self.w2)
            .map(|(a, b)| (FieldElement::rational(a.clone()) + FieldElement::rational(b.clone()) * c.clone()).simplify())
            .collect()
    }

    fn values_at_infinity(&self) -> Vec<FieldElement> {
        self.w2.iter().map(|b| FieldElement::rational(b.clone())).collect()
    }

    fn rows(&self) -> Vec<Vec<Rational>> {
        self.w1.iter().zip(&self.w2).map(|(a, b)| vec![a.clone(), b.clone()]).collect()
    }

    fn key(&self, values: &[FieldElement]) -> PointKey {
        if values[self.i].is_zero() {
            PointKey::Infinity
        } else {
            let c = values[self.j].clone() / values[self.i].clone();
            PointKey::Finite(c.minimal_polynomial().into_coeffs())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum PointKey {
    Finite(Vec<Rational>),
    Infinity,
}

#[derive(Clone, Debug)]
struct Candidate {
    key: PointKey,
    values: Vec<FieldElement>,
    degree: u64,
}

enum PointClass {
    Generic,
    Isolated(FieldElement),
    Discard,
}

fn has_collision(values: &[FieldElement]) -> bool {
    (0..values.len()).any(|i| (0..i).any(|j| values[i] == values[j]))
}

fn classify(values: &[FieldElement], mults: &[usize]) -> PointClass {
    if has_collision(values) {
        return PointClass::Discard;
    }
    let rows = quartic_rows(values, mults);
    if rows.iter().all(|(a, b)| a.is_zero() && b.is_zero()) {
        return PointClass::Generic;
    }
    let Some((a, b)) = rows.iter().find(|(a, _)| !a.is_zero()) else {
        // only alpha = 0 would work
        return PointClass::Discard;
    };
    let lambda = (-b.clone() / a.clone()).simplify();
    if rows.iter().all(|(a, b)| (lambda.clone() * a.clone() + b.clone()).is_zero()) {
        PointClass::Isolated(lambda)
    } else {
        PointClass::Discard
    }
}

fn field_for(factor: &UniPoly) -> Result<(NumberField, FieldElement)> {
    if factor.deg() == 1 {
        let root = -factor.coeff(0) / factor.coeff(1);
        return Ok((NumberField::rational(), FieldElement::rational(root)));
    }
    if factor.deg() > MAX_FIELD_DEGREE {
        return Err(Error::Unfactorable(factor.render("c")));
    }
    let k = NumberField::new(factor, "b")?;
    let g = k.generator();
    Ok((k, g))
}

fn candidates(g: &Form, plane: &Plane) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    if g.p.deg() > 0 {
        let fac = g.p.factor()?;
        for f in &fac.factors {
            if !f.irreducible {
                return Err(Error::Unfactorable(f.poly.render("c")));
            }
            let (_, c) = field_for(&f.poly)?;
            out.push(Candidate {
                key: PointKey::Finite(f.poly.monic().into_coeffs()),
                values: plane.values_at(&c),
                degree: f.poly.deg() as u64,
            });
        }
    }
    if g.inf_mult() > 0 {
        out.push(Candidate { key: PointKey::Infinity, values: plane.values_at_infinity(), degree: 1 });
    }
    Ok(out)
}

fn normalized(values: &[FieldElement]) -> Vec<FieldElement> {
    let first = values.iter().find(|v| !v.is_zero()).expect("nonzero point").clone();
    let inv = FieldElement::int(1) / first;
    values.iter().map(|v| (v.clone() * inv.clone()).simplify()).collect()
}

fn internal(msg: String) -> Error {
    Error::Invalid(format!("internal consistency check failed: {msg}"))
}

fn check_point(values: &[FieldElement], mults: &[usize], lambda: &FieldElement) -> Result<()> {
    let pt = SymPoint::new(values.to_vec(), mults.to_vec())?;
    if verify_singular(&pt, &PencilParam::from_lambda(lambda))? {
        Ok(())
    } else {
        Err(internal(format!("{values:?} is not singular at lambda = {lambda}")))
    }
}

fn check_generic(values: &[FieldElement], mults: &[usize]) -> Result<()> {
    for l in [Rational::new(1, 7), Rational::from_int(3)] {
        check_point(values, mults, &FieldElement::rational(l))?;
    }
    Ok(())
}

/// Groups candidates into orbits of the block symmetries, then turns each
/// group into a branch.
fn branches_from_candidates(
    pattern: &MultiplicityPattern,
    plane: &Plane,
    cands: Vec<Candidate>,
) -> Result<Vec<SolutionBranch>> {
    let mults = pattern.parts();
    let group = block_symmetries(pattern);
    let mut classified = Vec::new();
    for c in cands {
        match classify(&c.values, mults) {
            PointClass::Discard => {}
            PointClass::Generic => classified.push((c, None)),
            PointClass::Isolated(l) => classified.push((c, Some(l))),
        }
    }
    let index: BTreeMap<PointKey, usize> =
        classified.iter().enumerate().map(|(i, (c, _))| (c.key.clone(), i)).collect();
    let mut parent: Vec<usize> = (0..classified.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (i, (c, _)) in classified.iter().enumerate() {
        for perm in &group {
            let img = apply(perm, &c.values);
            if let Some(&j) = index.get(&plane.key(&img)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..classified.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out = Vec::new();
    for members in groups.values() {
        let (rep, lambda) = &classified[members[0]];
        let labeled: u64 = members.iter().map(|&m| classified[m].0.degree).sum();
        let values = normalized(&rep.values);
        let branch = match lambda {
            None => {
                check_generic(&values, mults)?;
                SolutionBranch {
                    kind: BranchKind::GenericFamily,
                    pattern: pattern.clone(),
                    values,
                    linear_values: Vec::new(),
                    constraint: None,
                    param: None,
                    labeled_points: labeled,
                    free_params: 0,
                }
            }
            Some(l) => {
                check_point(&values, mults, l)?;
                SolutionBranch {
                    kind: BranchKind::Isolated,
                    pattern: pattern.clone(),
                    values,
                    linear_values: Vec::new(),
                    constraint: None,
                    param: Some(PencilParam::from_lambda(l)),
                    labeled_points: labeled,
                    free_params: 0,
                }
            }
        };
        out.push(branch);
    }
    Ok(out)
}

/// All solution branches of one pattern in dimension `n`.
pub fn solve_pattern(n: usize, pattern: &MultiplicityPattern) -> Result<Vec<SolutionBranch>> {
    if pattern.total() != n + 2 {
        return Err(Error::Invalid(format!("pattern {pattern} does not partition {}", n + 2)));
    }
    let mults = pattern.parts();
    let k = mults.len();
    let mut constraints = vec![mults.iter().map(|&m| Rational::from_int(m as i64)).collect::<Vec<_>>()];
    if k == 4 {
        constraints.push(vec![Rational::from_int(1); 4]);
    }
    let w = nullspace(&constraints, k);
    // two values forced equal: no point of this pattern exists
    let forced = (0..k).any(|i| (i + 1..k).any(|j| w.iter().all(|v| v[i] == v[j])));
    if forced {
        return Ok(Vec::new());
    }
    match w.len() {
        0 => Ok(Vec::new()),
        1 => solve_line(pattern, &w[0]),
        2 => solve_plane(pattern, &Plane::new(&w[0], &w[1])),
        3 => solve_equal_blocks(pattern, &w),
        d => Err(internal(format!("unexpected solution space of dimension {d}"))),
    }
}

fn solve_line(pattern: &MultiplicityPattern, w: &[Rational]) -> Result<Vec<SolutionBranch>> {
    let values: Vec<FieldElement> = w.iter().map(|r| FieldElement::rational(r.clone())).collect();
    let values = normalized(&values);
    let mults = pattern.parts();
    let mk = |kind, param: Option<PencilParam>, values| SolutionBranch {
        kind,
        pattern: pattern.clone(),
        values,
        linear_values: Vec::new(),
        constraint: None,
        param,
        labeled_points: 1,
        free_params: 0,
    };
    Ok(match classify(&values, mults) {
        PointClass::Discard => Vec::new(),
        PointClass::Generic => {
            check_generic(&values, mults)?;
            vec![mk(BranchKind::GenericFamily, None, values)]
        }
        PointClass::Isolated(l) => {
            check_point(&values, mults, &l)?;
            vec![mk(BranchKind::Isolated, Some(PencilParam::from_lambda(&l)), values)]
        }
    })
}

pub(crate) fn plane_forms(pattern: &MultiplicityPattern, plane: &Plane) -> Vec<(Form, Form)> {
    quartic_rows(&plane.value_polys(), pattern.parts())
        .into_iter()
        .map(|(a, b)| (Form { p: a, deg: 4 }, Form { p: b, deg: 4 }))
        .collect()
}

fn solve_plane(pattern: &MultiplicityPattern, plane: &Plane) -> Result<Vec<SolutionBranch>> {
    let rows = plane_forms(pattern, plane);
    let mut minors = Vec::new();
    for k in 0..rows.len() {
        for l in k + 1..rows.len() {
            let m = &(&rows[k].0.p * &rows[l].1.p) - &(&rows[l].0.p * &rows[k].1.p);
            minors.push(Form { p: m, deg: 8 });
        }
    }
    if let Some(g) = form_gcd(&minors) {
        return branches_from_candidates(pattern, plane, candidates(&g, plane)?);
    }

    // Rank <= 1 everywhere: (a_k, b_k) are all proportional to one (A, B).
    let Some(k0) = rows.iter().position(|(a, _)| !a.is_zero()) else {
        return Ok(Vec::new());
    };
    let (a0, b0) = &rows[k0];
    let d0 = form_gcd([a0, b0]).expect("a0 is nonzero");
    let big_a = a0.div(&d0);
    let big_b = if b0.is_zero() { Form { p: UniPoly::zero(), deg: big_a.deg } } else { b0.div(&d0) };
    let g = form_gcd(rows.iter().flat_map(|(a, b)| [a, b])).expect("nonzero rows");

    let mut out = branches_from_candidates(pattern, plane, candidates(&g, plane)?)?;
    if out.iter().any(|b| b.kind == BranchKind::Isolated) {
        return Err(internal(format!("isolated point on the rank-one locus of {pattern}")));
    }
    let mults = pattern.parts();
    let sample = (2..)
        .map(|s| FieldElement::rational(Rational::new(s, 7)))
        .find(|c| {
            let vals = plane.values_at(c);
            !has_collision(&vals) && !big_a.p.eval_in(c, |r| FieldElement::rational(r.clone())).is_zero()
        })
        .expect("a generic member exists");
    let constraint = FamilyConstraint { a: big_a.p.clone(), b: big_b.p.clone(), degree: big_a.deg };
    let lambda_s = constraint.lambda_at(&sample).expect("a(sample) is nonzero");
    check_point(&plane.values_at(&sample), mults, &lambda_s)?;

    let family = if big_a.deg == 0 {
        SolutionBranch {
            kind: BranchKind::ContinuousFamily,
            pattern: pattern.clone(),
            values: Vec::new(),
            linear_values: plane.rows(),
            constraint: None,
            param: Some(PencilParam::from_lambda(&lambda_s)),
            labeled_points: 0,
            free_params: 1,
        }
    } else {
        SolutionBranch {
            kind: BranchKind::GenericFamily,
            pattern: pattern.clone(),
            values: Vec::new(),
            linear_values: plane.rows(),
            constraint: Some(constraint),
            param: None,
            labeled_points: big_a.deg as u64,
            free_params: 1,
        }
    };
    out.insert(0, family);
    Ok(out)
}

/// Four blocks of equal size `m`. Matching `P` against the quartic with the
/// four values as roots leaves two possibilities: `lambda = 1/(2m)`, where
/// every admissible vector is singular, or `C2 = C3 = 0`, i.e. the values
/// are the fourth roots of a constant.
fn solve_equal_blocks(pattern: &MultiplicityPattern, w: &[Vec<Rational>]) -> Result<Vec<SolutionBranch>> {
    let m = pattern.parts()[0] as i64;
    let mults = pattern.parts();
    let lambda0 = FieldElement::rational(Rational::new(1, 2 * m));
    let linear_values: Vec<Vec<Rational>> = (0..4).map(|k| w.iter().map(|v| v[k].clone()).collect()).collect();
    check_point(&[1, 2, -1, -2].map(FieldElement::int), mults, &lambda0)?;
    let planes = SolutionBranch {
        kind: BranchKind::ContinuousFamily,
        pattern: pattern.clone(),
        values: Vec::new(),
        linear_values,
        constraint: None,
        param: Some(PencilParam::from_lambda(&lambda0)),
        labeled_points: 0,
        free_params: 2,
    };
    let gauss = NumberField::new(&UniPoly::from_ints(&[1, 0, 1]), "i")?;
    let i = gauss.generator();
    let values = vec![FieldElement::int(1), i.clone(), FieldElement::int(-1), -i];
    check_generic(&values, mults)?;
    // orderings of the four roots up to multiplication by a fourth root of unity
    let roots = SolutionBranch {
        kind: BranchKind::GenericFamily,
        pattern: pattern.clone(),
        values,
        linear_values: Vec::new(),
        constraint: None,
        param: None,
        labeled_points: 6,
        free_params: 0,
    };
    Ok(vec![planes, roots])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    fn pat(v: &[usize]) -> MultiplicityPattern {
        MultiplicityPattern::new(v.to_vec()).unwrap()
    }

    fn solve8(v: &[usize]) -> Vec<SolutionBranch> {
        solve_pattern(8, &pat(v)).unwrap()
    }

    #[test]
    fn one_block_has_no_solution() {
        assert!(solve8(&[10]).is_empty());
    }

    #[test]
    fn nine_one() {
        let b = solve8(&[9, 1]);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].kind, BranchKind::Isolated);
        assert_eq!(b[0].param.as_ref().unwrap().to_string(), "(75:7)");
        assert_eq!(b[0].values, vec![FieldElement::int(1), FieldElement::int(-9)]);
        assert_eq!(b[0].orbit_length(), 10);
    }

    #[test]
    fn five_five_is_generic() {
        let b = solve8(&[5, 5]);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].kind, BranchKind::GenericFamily);
        assert!(b[0].constraint.is_none());
        assert_eq!(b[0].points_per_param(), 126);
    }

    #[test]
    fn four_four_one_one_family() {
        let b = solve8(&[4, 4, 1, 1]);
        let fam = b.iter().find(|b| b.constraint.is_some()).unwrap();
        assert_eq!(fam.constraint.as_ref().unwrap().render("c"), "beta*c^2 + (3*alpha + 4*beta)");
        assert_eq!(fam.orbit_length(), 3150);
        assert_eq!(fam.points_per_param(), 3150);
    }

    #[test]
    fn five_two_two_one_quadratic_orbit() {
        let b = solve8(&[5, 2, 2, 1]);
        let iso: Vec<_> = b.iter().filter(|b| b.param.as_ref().map(|p| p.to_string()) == Some("(3:-1)".into())).collect();
        assert_eq!(iso.len(), 1);
        assert_eq!(iso[0].values[1].minimal_polynomial(), UniPoly::from_ints(&[7, 4, 1]));
        assert_eq!(iso[0].points_per_param(), 7560);
        assert_eq!(iso[0].orbit_length(), 7560);
    }

    #[test]
    fn seven_one_one_one_lines() {
        let b = solve8(&[7, 1, 1, 1]);
        let lines: Vec<_> = b.iter().filter(|b| b.kind == BranchKind::ContinuousFamily).collect();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].param.as_ref().unwrap().to_string(), "(1:0)");
        assert_eq!(lines[0].points_per_param(), 120);
    }

    #[test]
    fn six_three_one_has_quartic_orbit() {
        let b = solve8(&[6, 3, 1]);
        let quartic = b.iter().find(|b| b.values.get(1).map(|v| v.minimal_polynomial().deg()) == Some(4)).unwrap();
        let m = quartic.values[1].minimal_polynomial();
        assert_eq!(m.primitive(), UniPoly::from_ints(&[77, 139, 93, 25, 2]));
        assert_eq!(quartic.points_per_param(), 840);
    }

    #[test]
    fn quartic_rows_vanish_on_singular_points() {
        let v = [1, -9].map(FieldElement::int);
        let rows = quartic_rows(&v, &[9, 1]);
        let l = FieldElement::rational(q(41, 75));
        for (a, b) in rows {
            assert!((l.clone() * a + b).is_zero());
        }
    }

    #[test]
    fn equal_blocks() {
        let b = solve_pattern(6, &pat(&[2, 2, 2, 2])).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].param.as_ref().unwrap().lambda().unwrap(), &FieldElement::rational(q(1, 4)));
        assert_eq!(b[1].points_per_param(), 630);
    }
}
