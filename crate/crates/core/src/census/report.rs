//! Serializable census results.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactnum::{poly_factor, FieldElement, NumberField, Rational, Ring, UniPoly};
use crate::hessian::NodeStatus;
use crate::pencil::{PencilParam, SymPoint};

use super::nodes::param_order_key;
use super::{BranchKind, CensusData, MultiplicityPattern, ParamEvaluation, SingularOrbit};

/// A pencil member in printable and machine-readable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicParam {
    /// `(alpha:beta)`, quadratic irrationals written with a square root.
    pub display: String,
    pub alpha: AlgebraicNumber,
    pub beta: AlgebraicNumber,
    /// Monic minimal polynomial of `lambda = (alpha+beta)/(2 alpha)`, constant term first.
    pub lambda_minpoly: Vec<String>,
}

/// An exact number: coordinates on the power basis of `Q[b]/(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicNumber {
    pub value: String,
    /// Monic minimal polynomial over Q, constant term first.
    pub minpoly: Vec<String>,
    /// Empty for rationals.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modulus: Vec<String>,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub pattern: MultiplicityPattern,
    pub letters: String,
    pub kind: BranchKind,
    /// Values of the blocks in order; families use `c` (and `d`) for free values.
    pub values: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraint: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<AlgebraicParam>,
    pub orbit_length: u64,
    /// Singular points (or lines) at one parameter.
    pub points: u64,
    pub dimension: usize,
    pub node_status: NodeStatus,
    pub nodes: u64,
    /// Homogeneous coordinates of the representative (point orbits only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub point: Vec<String>,
}

/// All singular orbits of one parameter, with its conjugates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSummary {
    pub param: AlgebraicParam,
    pub exceptional: bool,
    pub all_nodes: bool,
    pub total_nodes: u64,
    pub orbits: Vec<OrbitRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalParam {
    pub param: AlgebraicParam,
    /// Orbits that are not nodes there.
    pub orbits: Vec<OrbitRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub coordinates: usize,
    pub patterns: usize,
    /// Orbits present for every parameter, with their status at the best one.
    pub generic_orbits: Vec<OrbitRecord>,
    /// Non-exceptional parameters carrying extra isolated orbits.
    pub special_params: Vec<ParamSummary>,
    pub exceptional_params: Vec<ExceptionalParam>,
    pub best: Option<ParamSummary>,
    pub warnings: Vec<String>,
}

impl CensusReport {
    pub fn best_node_count(&self) -> u64 {
        self.best.as_ref().map_or(0, |b| b.total_nodes)
    }

    pub fn best_display(&self) -> Option<&str> {
        self.best.as_ref().map(|b| b.param.display.as_str())
    }

    /// Orbit lengths of the best parameter's node orbits, largest first.
    pub fn best_decomposition(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .best
            .iter()
            .flat_map(|b| b.orbits.iter().filter(|o| o.nodes > 0).map(|o| o.nodes))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn exceptional_displays(&self) -> Vec<&str> {
        self.exceptional_params.iter().map(|e| e.param.display.as_str()).collect()
    }
}

pub fn render_value(v: &FieldElement) -> String {
    v.to_string()
}

fn strings(cs: &[Rational]) -> Vec<String> {
    cs.iter().map(|c| c.to_string()).collect()
}

impl AlgebraicNumber {
    pub fn new(v: &FieldElement) -> Self {
        let field = v.field();
        AlgebraicNumber {
            value: render_value(v),
            minpoly: strings(v.minimal_polynomial().coeffs()),
            modulus: if v.is_rational() { Vec::new() } else { strings(field.modulus().coeffs()) },
            coords: if v.is_rational() { strings(&v.coords()[..1]) } else { strings(v.coords()) },
        }
    }
}

impl AlgebraicParam {
    pub fn new(p: &PencilParam) -> Self {
        AlgebraicParam {
            display: render_param(p),
            alpha: AlgebraicNumber::new(p.alpha()),
            beta: AlgebraicNumber::new(p.beta()),
            lambda_minpoly: p.lambda_minpoly().map(|m| strings(m.coeffs())).unwrap_or_default(),
        }
    }
}

/// `(alpha:beta)`; quadratic members become `(280:-163±3√65)`.
pub fn render_param(p: &PencilParam) -> String {
    if p.is_rational() || p.is_degenerate() {
        return p.to_string();
    }
    let y = (p.beta().clone() / p.alpha().clone()).simplify();
    let m = y.minimal_polynomial();
    if m.deg() == 2 {
        if let Some(s) = render_quadratic(&m) {
            return s;
        }
    }
    p.to_string()
}

fn render_quadratic(m: &UniPoly) -> Option<String> {
    let (p1, p0) = (m.coeff(1), m.coeff(0));
    let disc = &(&p1 * &p1) - &(&Rational::from_int(4) * &p0);
    let radicand = disc.numer() * disc.denom();
    let (s, d) = squarefree_split(&radicand)?;
    let half = Rational::new(1, 2);
    let centre = -(&p1 * &half);
    let spread = &Rational::from_int(s) / &(&Rational::from_int(2) * &Rational::from_int(disc.denom().clone()));
    let l = Rational::lcm_denoms([&centre, &spread]);
    let lr = Rational::from_int(l.clone());
    let (pc, qc) = (&centre * &lr, &spread * &lr);
    let root = if d == -1 { "i".to_string() } else { format!("√{d}") };
    let q = if qc == Rational::from_int(1) { String::new() } else { qc.to_string() };
    let body = if pc.is_zero() { format!("±{q}{root}") } else { format!("{pc}±{q}{root}") };
    Some(format!("({l}:{body})"))
}

/// `x = s^2 * d` with `d` squarefree and carrying the sign.
fn squarefree_split(x: &BigInt) -> Option<(BigInt, i64)> {
    let mut rest = x.abs().to_u64()?;
    if rest == 0 {
        return None;
    }
    let (mut s, mut d) = (1u64, 1u64);
    let mut k = 2u64;
    while k * k <= rest {
        while rest % (k * k) == 0 {
            rest /= k * k;
            s *= k;
        }
        if rest % k == 0 {
            rest /= k;
            d *= k;
        }
        k += 1;
    }
    d *= rest;
    let d = i64::try_from(d).ok()?;
    Some((BigInt::from(s), if x.is_negative() { -d } else { d }))
}

fn family_value(row: &[Rational]) -> String {
    let vars = ["", "c", "d"];
    let mut terms = Vec::new();
    for (j, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = match (j, c) {
            (0, c) => c.to_string(),
            (j, c) if *c == Rational::from_int(1) => vars[j].to_string(),
            (j, c) if *c == Rational::from_int(-1) => format!("-{}", vars[j]),
            (j, c) => format!("{c}*{}", vars[j]),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.join(" + ").replace("+ -", "- ")
}

pub fn orbit_record(o: &SingularOrbit) -> OrbitRecord {
    let b = &o.branch;
    let (values, field) = if b.values.is_empty() {
        (b.linear_values.iter().map(|r| family_value(r)).collect(), None)
    } else {
        let field = b.values.iter().find(|v| !v.is_rational()).map(|v| {
            let k: &NumberField = v.field();
            format!("{} = 0", k.modulus().primitive().render(k.label()))
        });
        (b.values.iter().map(render_value).collect(), field)
    };
    OrbitRecord {
        pattern: b.pattern.clone(),
        letters: b.pattern.letters(),
        kind: b.kind,
        values,
        field,
        constraint: b.constraint.as_ref().map(|c| c.render("c")),
        param: b.param.as_ref().filter(|_| b.kind != BranchKind::GenericFamily).map(AlgebraicParam::new),
        orbit_length: o.orbit_length,
        points: o.points,
        dimension: o.dimension,
        node_status: o.node_status,
        nodes: o.nodes,
        point: if b.values.is_empty() {
            Vec::new()
        } else {
            SymPoint::new(b.values.clone(), b.pattern.parts().to_vec())
                .map(|p| p.coordinates().iter().map(render_value).collect())
                .unwrap_or_default()
        },
    }
}

fn summary(ev: &ParamEvaluation) -> ParamSummary {
    ParamSummary {
        param: AlgebraicParam::new(&ev.param),
        exceptional: ev.exceptional,
        all_nodes: ev.all_nodes,
        total_nodes: ev.total_nodes,
        orbits: ev.orbits.iter().map(orbit_record).collect(),
    }
}

/// Representative member for each irreducible factor over Q.
fn params_of(polys: &[UniPoly]) -> Result<Vec<PencilParam>> {
    let mut keys: Vec<UniPoly> = Vec::new();
    for p in polys {
        for f in poly_factor(p)?.factors {
            let m = f.poly.monic();
            if !keys.contains(&m) {
                keys.push(m);
            }
        }
    }
    let mut out = Vec::new();
    for m in keys {
        let lambda = if m.deg() == 1 {
            FieldElement::rational(-m.coeff(0))
        } else {
            NumberField::new(&m, "b")?.generator()
        };
        out.push(PencilParam::from_lambda(&lambda));
    }
    Ok(out)
}

fn sort_params(v: &mut [PencilParam]) {
    v.sort_by(|a, b| {
        let da = a.lambda_minpoly().map_or(0, |m| m.deg());
        let db = b.lambda_minpoly().map_or(0, |m| m.deg());
        da.cmp(&db).then_with(|| param_order_key(a).cmp(&param_order_key(b)))
    });
}

impl CensusData {
    pub fn report(&self) -> Result<CensusReport> {
        let best = self.best()?;
        let generic_orbits = match &best {
            Some(ev) => ev.orbits.iter().filter(|o| o.branch.is_generic()).map(orbit_record).collect(),
            None => Vec::new(),
        };

        let mut special = Vec::new();
        for idx in self.isolated_keys().values() {
            let p = self.branches[idx[0]].param.clone().expect("isolated param");
            let ev = self.evaluate(&p)?;
            if !ev.exceptional {
                special.push(ev);
            }
        }
        special.sort_by(|a, b| param_order_key(&a.param).cmp(&param_order_key(&b.param)));

        let mut polys = self.exceptional_polys().to_vec();
        polys.extend(self.degeneration_polys()?);
        let mut exc = params_of(&polys)?;
        sort_params(&mut exc);
        let mut exceptional_params = Vec::new();
        for p in &exc {
            // the isolated branches carry the preferred field presentation
            let p = self
                .branches
                .iter()
                .filter_map(|b| b.param.as_ref())
                .find(|q| q.lambda_minpoly() == p.lambda_minpoly())
                .unwrap_or(p);
            let ev = self.evaluate(p)?;
            let orbits: Vec<OrbitRecord> =
                ev.orbits.iter().filter(|o| o.node_status != NodeStatus::Node && o.points > 0).map(orbit_record).collect();
            if !orbits.is_empty() || ev.exceptional {
                exceptional_params.push(ExceptionalParam { param: AlgebraicParam::new(p), orbits });
            }
        }

        let mut warnings = Vec::new();
        for b in &self.branches {
            if let Some(p) = b.param.as_ref().filter(|_| b.kind == BranchKind::Isolated) {
                let l = p.lambda().expect("isolated branches have lambda");
                if !l.is_rational() && l.field().degree() > 2 {
                    warnings.push(format!(
                        "{} at {}: lambda = {}, consistent with (alpha:beta) = (1 : 2*lambda - 1)",
                        b.pattern,
                        render_param(p),
                        lambda_over_integer(l)
                    ));
                }
            }
        }
        if best.as_ref().is_some_and(|b| !b.all_nodes) {
            warnings.push("no candidate parameter has only nodes".into());
        }

        let mut report = CensusReport {
            n: self.n,
            coordinates: self.n + 2,
            patterns: self.pattern_count,
            generic_orbits,
            special_params: special.iter().map(summary).collect(),
            exceptional_params,
            best: best.as_ref().map(summary),
            warnings,
        };
        report.warnings.extend(coordinate_flags(&report));
        Ok(report)
    }
}

/// Patterns whose representatives are easy to misprint with an extra
/// coordinate; the report spells out their actual coordinate vectors.
const COORDINATE_CHECKS: [&[usize]; 2] = [&[5, 2, 2, 1], &[4, 4, 2]];

fn coordinate_flags(report: &CensusReport) -> Vec<String> {
    let all = report
        .special_params
        .iter()
        .flat_map(|s| s.orbits.iter().map(move |o| (&s.param, o)))
        .chain(report.exceptional_params.iter().flat_map(|e| e.orbits.iter().map(move |o| (&e.param, o))));
    all.filter(|(_, o)| o.kind == BranchKind::Isolated && COORDINATE_CHECKS.contains(&o.pattern.parts()))
        .map(|(param, o)| {
            format!(
                "{} at {}: representative ({}) has {} coordinates, one per coordinate of P^{}",
                o.pattern,
                param.display,
                o.point.join(","),
                o.point.len(),
                report.n
            )
        })
        .collect()
}

/// `(poly in b)/den` with an integral numerator.
fn lambda_over_integer(l: &FieldElement) -> String {
    let den = Rational::lcm_denoms(l.coords());
    let num = l.as_poly().scale(&Rational::from_int(den.clone()));
    if den == BigInt::from(1) {
        num.render(l.field().label())
    } else {
        format!("({})/{den}", num.render(l.field().label()))
    }
}
