//! End-to-end acceptance checks, one line of output per criterion.

use std::collections::HashSet;
use std::io::Write;

use hyperquintic::bounds::{arnold_number, kalker_cubic_count, BoundQuery};
use hyperquintic::census::{BranchKind, CensusData, CensusOptions, CensusReport, SolutionBranch};
use hyperquintic::cli::{run, Command};
use hyperquintic::exactnum::{q, FieldElement, Rational, Ring, UniPoly};
use hyperquintic::hessian::{chart_reduce, chart_reduce_at, hessian_at, NodeStatus};
use hyperquintic::pencil::{evaluate_F, singular_quartic, power_sums, verify_singular, PencilParam, SymPoint};
use hyperquintic::pentagon::pentagon_node_count;
use num_bigint::BigUint;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fe(r: Rational) -> FieldElement {
    FieldElement::rational(r)
}

struct Ctx {
    data8: CensusData,
    report8: CensusReport,
}

fn criterion_1(ctx: &Ctx) -> Check {
    let r = &ctx.report8;
    let best = r.best.as_ref().ok_or("no best parameter")?;
    ensure(best.param.display == "(3:-1)", || format!("best is {}", best.param.display))?;
    ensure(best.total_nodes == 23436, || format!("total {}", best.total_nodes))?;
    ensure(r.best_decomposition() == [126, 3150, 7560, 12600], || format!("decomposition {:?}", r.best_decomposition()))?;
    ensure(best.all_nodes && !best.exceptional, || "best member not certified".into())?;
    for o in &best.orbits {
        ensure(o.node_status == NodeStatus::Node && o.nodes == o.points, || format!("{} is {}", o.letters, o.node_status))?;
    }
    Ok(())
}

/// `(pa, pb)` and `(ea, eb)` agree up to a nonzero rational factor.
fn proportional(pa: &UniPoly, pb: &UniPoly, ea: &UniPoly, eb: &UniPoly) -> bool {
    let lhs = [pa, pb];
    let rhs = [ea, eb];
    let Some((i, k)) = (0..2).flat_map(|i| (0..=rhs[i].deg()).map(move |k| (i, k))).find(|&(i, k)| !rhs[i].coeff(k).is_zero())
    else {
        return false;
    };
    let s = lhs[i].coeff(k) / rhs[i].coeff(k);
    !s.is_zero() && (0..2).all(|j| *lhs[j] == rhs[j].scale(&s))
}

fn criterion_2(ctx: &Ctx) -> Check {
    let generic: Vec<&SolutionBranch> = ctx.data8.branches.iter().filter(|b| b.is_generic()).collect();
    let mut lengths: Vec<u64> = generic.iter().map(|b| b.orbit_length()).collect();
    lengths.sort_unstable();
    ensure(lengths == [126, 3150, 12600], || format!("generic orbit lengths {lengths:?}"))?;
    // P_alpha(c)*alpha + P_beta(c)*beta = 0
    let expected = [
        (3150, UniPoly::from_ints(&[3]), UniPoly::from_ints(&[4, 0, 1])),
        (12600, UniPoly::from_ints(&[2, 0, 1]), UniPoly::from_ints(&[3, 0, 2])),
    ];
    for (len, ea, eb) in expected {
        let b = generic.iter().find(|b| b.orbit_length() == len).ok_or(format!("no {len} family"))?;
        let c = b.constraint.as_ref().ok_or(format!("{len} family has no constraint"))?;
        let (pa, pb) = c.alpha_beta();
        ensure(proportional(&pa, &pb, &ea, &eb), || format!("{len}: constraint {}", c.render("c")))?;
    }
    let plain = generic.iter().find(|b| b.orbit_length() == 126).expect("checked above");
    ensure(plain.constraint.is_none(), || "126 orbit should not move".into())
}

fn lambda_minpoly_of(r: &CensusReport, display: &str) -> Result<UniPoly, String> {
    let s = r.special_params.iter().find(|s| s.param.display == display).ok_or(format!("{display} missing"))?;
    let cs: Vec<Rational> = s.param.lambda_minpoly.iter().map(|c| c.parse().expect("rational")).collect();
    Ok(UniPoly::from_rationals(&cs))
}

fn criterion_3(ctx: &Ctx) -> Check {
    let r = &ctx.report8;
    let isolated = |display: &str| -> Vec<u64> {
        r.special_params
            .iter()
            .filter(|s| s.param.display == display)
            .flat_map(|s| s.orbits.iter().filter(|o| o.kind == BranchKind::Isolated).map(|o| o.orbit_length))
            .collect()
    };
    let rows = [
        ("(75:7)", 10),
        ("(100:-49)", 45),
        ("(175:-117)", 120),
        ("(50:-37)", 210),
        ("(3:7)", 90),
        ("(4:-1)", 1260),
        ("(51:-25)", 2520),
        ("(7:-5)", 4200),
        ("(3:-1)", 7560),
        ("(30:-13±√85)", 1260),
        ("(280:-163±3√65)", 2520),
    ];
    for (display, len) in rows {
        ensure(isolated(display) == [len], || format!("{display}: {:?}", isolated(display)))?;
    }
    ensure(r.special_params.len() == 13, || format!("{} special parameters", r.special_params.len()))?;

    // lambda = (17 ± √85)/60 and (117 ± 3√65)/560
    let quad = |s: Rational, p: Rational| UniPoly::from_rationals(&[p, -s, q(1, 1)]);
    let want85 = quad(q(34, 60), (q(17 * 17, 1) - q(85, 1)) / q(3600, 1));
    let want65 = quad(q(2 * 117, 560), (q(117 * 117, 1) - q(9 * 65, 1)) / q(560 * 560, 1));
    ensure(lambda_minpoly_of(r, "(30:-13±√85)")? == want85, || "discriminant 85 row".into())?;
    ensure(lambda_minpoly_of(r, "(280:-163±3√65)")? == want65, || "discriminant 65 row".into())?;

    let quartics = [
        ("(21:", 840, UniPoly::from_ints(&[77, 139, 93, 25, 2])),
        ("(84:", 360, UniPoly::from_ints(&[364, 413, 189, 39, 3])),
    ];
    for (prefix, len, modulus) in quartics {
        let s = r
            .special_params
            .iter()
            .find(|s| s.param.display.starts_with(prefix))
            .ok_or(format!("{prefix} row missing"))?;
        let cs: Vec<Rational> = s.param.beta.modulus.iter().map(|c| c.parse().expect("rational")).collect();
        let got = UniPoly::from_rationals(&cs);
        ensure(got == modulus.monic(), || format!("{prefix} modulus {got:?}"))?;
        let lens: Vec<u64> = s.orbits.iter().filter(|o| o.kind == BranchKind::Isolated).map(|o| o.orbit_length).collect();
        ensure(lens == [len], || format!("{prefix} orbit lengths {lens:?}"))?;
    }

    let lines = [("(1:0)", 120), ("(2:-1)", 3150), ("(3:-2)", 2800)];
    for (display, count) in lines {
        let e = r.exceptional_params.iter().find(|e| e.param.display == display).ok_or(format!("{display} missing"))?;
        let found: Vec<u64> = e.orbits.iter().filter(|o| o.kind == BranchKind::ContinuousFamily).map(|o| o.points).collect();
        ensure(found == [count], || format!("{display} lines {found:?}"))?;
    }
    let exc = r.exceptional_displays();
    ensure(exc == ["(1:0)", "(2:-1)", "(3:-2)", "(4:-3)", "(5:-3)"], || format!("exceptional set {exc:?}"))?;

    let flagged = |needle: &str| r.warnings.iter().any(|w| w.contains(needle));
    ensure(flagged("(21:2*b^3 + 25*b^2 + 86*b + 76): lambda ="), || "missing flag for the (21:...) row".into())?;
    ensure(flagged("(5,2,2,1) at (3:-1): representative") && flagged("has 10 coordinates"), || {
        "missing coordinate-count flag".into()
    })
}

fn criterion_4(_: &Ctx) -> Check {
    let expected: [(usize, u64, Option<&str>); 5] =
        [(3, 20, Some("(2:1)")), (4, 130, None), (5, 210, Some("(7:-4)")), (6, 1505, None), (10, 296604, None)];
    for (n, total, at) in expected {
        let r = CensusData::solve(n, &CensusOptions::default()).and_then(|d| d.report()).map_err(|e| format!("n={n}: {e}"))?;
        ensure(r.best_node_count() == total, || format!("n={n}: {} nodes", r.best_node_count()))?;
        if let Some(at) = at {
            ensure(r.best_display() == Some(at), || format!("n={n}: best {:?}", r.best_display()))?;
        }
    }
    Ok(())
}

fn unit_member(beta: Rational) -> PencilParam {
    PencilParam::new(FieldElement::int(1), fe(beta)).expect("alpha = 1")
}

fn criterion_5(_: &Ctx) -> Check {
    // (a) the determinant has degree <= 8 in beta, so agreement at more
    // than 8 values is a polynomial identity
    let y = chart_reduce(&SymPoint::from_ints(&[1, -1], &[5, 5]).expect("point"));
    for k in -6..=6 {
        let beta = q(k, 4);
        let det = hessian_at(&y, &unit_member(beta.clone())).map_err(|e| e.to_string())?.determinant;
        let want = (q(6, 1) + q(10, 1) * beta).pow(8);
        ensure(det == fe(want), || format!("126 orbit at beta={}", q(k, 4)))?;
    }

    // (b) (1^4, (-1)^4, c, -c) on beta = -3/(c^2 + 4)
    let family = |c: &Rational| -> Result<(SymPoint, PencilParam), String> {
        let beta = q(-3, 1) / (c.pow(2) + q(4, 1));
        let pt = SymPoint::new(
            vec![FieldElement::int(1), FieldElement::int(-1), fe(c.clone()), fe(-c.clone())],
            vec![4, 4, 1, 1],
        )
        .map_err(|e| e.to_string())?;
        Ok((pt, unit_member(beta)))
    };
    let samples: Vec<Rational> = (2..=30).filter(|k| k % 5 != 0).map(|k| q(k, 5)).collect();
    ensure(samples.len() >= 20, || "too few samples".into())?;
    for c in &samples {
        let (pt, p) = family(c)?;
        ensure(verify_singular(&pt, &p).unwrap_or(false), || format!("c={c} not singular"))?;
        let det = hessian_at(&chart_reduce(&pt), &p).map_err(|e| e.to_string())?.determinant;
        let c2 = c.pow(2);
        let lhs = det * fe((c2.clone() + q(4, 1)).pow(2));
        let rhs = q(256 * 9, 1) * c2.clone() * (c2 - q(1, 1)).pow(8);
        ensure(lhs == fe(rhs), || format!("3150 family at c={c}"))?;
    }

    // (c) degenerations
    let at = hessian_at(&y, &unit_member(q(-3, 5))).map_err(|e| e.to_string())?;
    ensure(at.determinant.is_zero(), || "126 orbit nondegenerate at beta=-3/5".into())?;
    for c in [q(1, 1), q(-1, 1)] {
        let pt = SymPoint::from_ints(&[1, -1], &[5, 5]).expect("point");
        let p = unit_member(q(-3, 1) / (c.pow(2) + q(4, 1)));
        ensure(hessian_at(&chart_reduce(&pt), &p).map_err(|e| e.to_string())?.determinant.is_zero(), || {
            format!("c={c} limit is a node")
        })?;
    }
    let pt = SymPoint::from_ints(&[1, -1, 0], &[4, 4, 2]).expect("point");
    let p = unit_member(q(-3, 4));
    ensure(verify_singular(&pt, &p).unwrap_or(false), || "c=0 limit not singular".into())?;
    ensure(hessian_at(&chart_reduce(&pt), &p).map_err(|e| e.to_string())?.determinant.is_zero(), || {
        "c=0 limit is a node".into()
    })
}

fn brute_arnold(n: usize, d: usize) -> u64 {
    let target = n * d / 2 + 1;
    if d < 2 {
        return 0;
    }
    let mut count = 0;
    let total = (d - 1).pow(n as u32 + 1);
    for mut code in 0..total {
        let mut sum = 0;
        for _ in 0..=n {
            sum += code % (d - 1) + 1;
            code /= d - 1;
        }
        if sum == target {
            count += 1;
        }
    }
    count
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_6(_: &Ctx) -> Check {
    let ar = |n, d| arnold_number(BoundQuery::new(n, d).expect("positive"));
    for (n, v) in [(3, 31u32), (4, 135), (5, 456), (6, 1918), (8, 27876), (10, 411334)] {
        ensure(ar(n, 5) == BigUint::from(v), || format!("Ar_{n}(5) = {}", ar(n, 5)))?;
    }
    for n in 1..=12usize {
        let want = binomial(n as u64 + 1, n as u64 / 2);
        ensure(ar(n, 3) == want && kalker_cubic_count(n) == want, || format!("cubic count n={n}"))?;
    }
    for n in 1..=4 {
        for d in 1..=6 {
            ensure(ar(n, d) == BigUint::from(brute_arnold(n, d)), || format!("enumeration n={n} d={d}"))?;
        }
    }
    Ok(())
}

/// Every choice of critical point per block, with values taken from the
/// explicit critical points: the origin (-1 after normalization), the five
/// vertices (+1) and the ten edge points (0); `T5` has critical values
/// `cos(k*pi) = ±1` at `z = cos(k*pi/5)`, `k = 1..4`.
fn brute_pentagon(n: usize) -> u64 {
    let mut block = vec![-1i64];
    block.extend([1; 5]);
    block.extend([0; 10]);
    let chebyshev: Vec<i64> = (1..=4).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
    let blocks = n / 2;
    let mut count = 0;
    let mut choice = vec![0usize; blocks];
    'outer: loop {
        // sign (-1)^j for even n, all plus for odd n
        let sum: i64 = choice.iter().enumerate().map(|(j, &c)| if n % 2 == 0 && j % 2 == 1 { -block[c] } else { block[c] }).sum();
        if n % 2 == 0 {
            count += u64::from(sum == 0);
        } else {
            // sum = -(T5 - 1)/2, i.e. T5 = 1 - 2*sum
            count += chebyshev.iter().filter(|&&t| t == 1 - 2 * sum).count() as u64;
        }
        for slot in choice.iter_mut() {
            *slot += 1;
            if *slot < block.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        return count;
    }
}

fn criterion_7(_: &Ctx) -> Check {
    for (n, v) in [(4, 126u32), (5, 420), (6, 1620), (8, 23126), (10, 325580)] {
        let got = pentagon_node_count(n).map_err(|e| e.to_string())?;
        ensure(got == BigUint::from(v), || format!("n={n}: {got}"))?;
    }
    let doc = run(&Command::Pentagon { n: 3 }, false).map_err(|e| e.message)?;
    let json = serde_json::to_value(&doc).map_err(|e| e.to_string())?;
    ensure(json["payload"]["affine_count"] == "30", || format!("n=3 count {}", json["payload"]["affine_count"]))?;
    ensure(doc.warnings.iter().any(|w| w.contains("30") && w.contains("31")), || "missing n=3 flag".into())?;
    for n in 3..=8 {
        let got = pentagon_node_count(n).map_err(|e| e.to_string())?;
        ensure(got == BigUint::from(brute_pentagon(n)), || format!("enumeration n={n}"))?;
    }
    Ok(())
}

/// Points on a branch: its values, or sample members of a family.
fn sample_points(b: &SolutionBranch) -> Vec<(SymPoint, PencilParam)> {
    let parts = b.pattern.parts().to_vec();
    let mut out = Vec::new();
    let mut push = |values: Vec<FieldElement>, p: PencilParam| {
        if let Ok(pt) = SymPoint::new(values, parts.clone()) {
            out.push((pt, p));
        }
    };
    match (b.kind, &b.constraint) {
        (BranchKind::Isolated, _) => push(b.values.clone(), b.param.clone().expect("isolated param")),
        (BranchKind::GenericFamily, None) => {
            for k in [-7, 2, 9] {
                push(b.values.clone(), unit_member(q(k, 3)));
            }
        }
        (BranchKind::GenericFamily, Some(c)) => {
            for k in [2, 5, 11] {
                let t = q(k, 3);
                let values = b.linear_values.iter().map(|lv| fe(lv[0].clone() + lv[1].clone() * t.clone())).collect();
                if let Some(l) = c.lambda_at(&fe(t)) {
                    push(values, PencilParam::from_lambda(&l));
                }
            }
        }
        (BranchKind::ContinuousFamily, _) => {
            let ts = [q(1, 1), q(3, 7), q(-5, 2), q(2, 9)];
            let values = b
                .linear_values
                .iter()
                .map(|lv| fe(lv.iter().zip(&ts).fold(q(0, 1), |acc, (a, t)| acc + a.clone() * t.clone())))
                .collect();
            push(values, b.param.clone().expect("family param"));
        }
    }
    out
}

/// Distinct coordinate arrangements up to scaling, by enumerating the
/// multiset permutations.
fn brute_orbit(pt: &SymPoint) -> u64 {
    let mut idx: Vec<usize> = pt.mults().iter().enumerate().flat_map(|(k, &m)| std::iter::repeat(k).take(m)).collect();
    idx.sort_unstable();
    let mut seen = HashSet::new();
    loop {
        let xs: Vec<FieldElement> = idx.iter().map(|&k| pt.values()[k].clone()).collect();
        let first = xs.iter().find(|x| !x.is_zero()).expect("nonzero").clone();
        let key: Vec<String> = xs.iter().map(|x| (x.clone() / first.clone()).simplify().to_string()).collect();
        seen.insert(key);
        // next permutation
        let Some(i) = (0..idx.len() - 1).rev().find(|&i| idx[i] < idx[i + 1]) else {
            return seen.len() as u64;
        };
        let j = (i + 1..idx.len()).rev().find(|&j| idx[j] > idx[i]).expect("successor");
        idx.swap(i, j);
        idx[i + 1..].reverse();
    }
}

fn criterion_8(ctx: &Ctx) -> Check {
    for n in [4, 5, 6] {
        let data = CensusData::solve(n, &CensusOptions::default()).map_err(|e| e.to_string())?;
        check_branches(&data)?;
    }
    check_branches(&ctx.data8)?;

    let serial = CensusData::solve(8, &CensusOptions { parallel: false })
        .and_then(|d| d.report())
        .map_err(|e| e.to_string())?;
    let a = serde_json::to_string(&ctx.report8).map_err(|e| e.to_string())?;
    let b = serde_json::to_string(&serial).map_err(|e| e.to_string())?;
    let c = serde_json::to_string(&ctx.data8.report().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(a == b && a == c, || "census reports differ between runs".into())
}

fn check_branches(data: &CensusData) -> Check {
    for b in &data.branches {
        let where_ = |p: &PencilParam| format!("n={} {} at {p}", data.n, b.pattern);
        let samples = sample_points(b);
        ensure(!samples.is_empty(), || format!("n={} {}: no sample point", data.n, b.pattern))?;
        for (pt, p) in samples {
            ensure(verify_singular(&pt, &p).unwrap_or(false), || format!("{} not singular", where_(&p)))?;
            ensure(evaluate_F(&pt, &p).is_zero(), || format!("{} off the hypersurface", where_(&p)))?;
            let l = p.lambda().expect("alpha != 0");
            let quartic = singular_quartic(l, &power_sums(&pt));
            ensure(pt.values().iter().all(|v| quartic.eval(v).is_zero()), || format!("{} not on P", where_(&p)))?;
            if b.kind != BranchKind::ContinuousFamily {
                ensure(brute_orbit(&pt) == b.orbit_length(), || {
                    format!("{}: orbit {} vs {}", where_(&p), brute_orbit(&pt), b.orbit_length())
                })?;
            }
            check_charts(&pt, &p).map_err(|e| format!("{}: {e}", where_(&p)))?;
        }
    }
    Ok(())
}

fn check_charts(pt: &SymPoint, p: &PencilParam) -> Check {
    let xs = pt.coordinates();
    let base = hessian_at(&chart_reduce(pt), p).map_err(|e| e.to_string())?;
    ensure(base.matrix.is_symmetric(), || "asymmetric Hessian".into())?;
    let nonzero: Vec<usize> = (0..xs.len()).filter(|&i| !xs[i].is_zero()).collect();
    for &chart in nonzero.iter().rev().take(2) {
        let elim = (0..xs.len()).find(|&i| i != chart).expect("two coordinates");
        let other = hessian_at(&chart_reduce_at(pt, chart, elim), p).map_err(|e| e.to_string())?;
        ensure(other.matrix.is_symmetric(), || "asymmetric Hessian".into())?;
        ensure(other.is_node == base.is_node, || format!("chart {chart} disagrees"))?;
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let data8 = CensusData::solve(8, &CensusOptions::default()).expect("n=8 census");
    let report8 = data8.report().expect("n=8 report");
    let ctx = Ctx { data8, report8 };
    let criteria: [(&str, fn(&Ctx) -> Check); 8] = [
        ("n=8 best member (3:-1) with 23436 nodes", criterion_1),
        ("n=8 orbits present for every member", criterion_2),
        ("n=8 special and exceptional parameters", criterion_3),
        ("best totals for n = 3, 4, 5, 6, 10", criterion_4),
        ("Hessian closed forms", criterion_5),
        ("Arnold numbers", criterion_6),
        ("pentagon counts", criterion_7),
        ("census invariants and determinism", criterion_8),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let line = match f(&ctx) {
            Ok(()) => format!("criterion {}: PASS  {name}", i + 1),
            Err(e) => {
                failed.push(i + 1);
                format!("criterion {}: FAIL  {name}: {e}", i + 1)
            }
        };
        writeln!(err, "{line}").expect("stderr");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
