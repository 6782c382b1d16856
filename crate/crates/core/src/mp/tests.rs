use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-6
}

/// Checks primal feasibility, dual sign conditions and complementary
/// slackness; together these certify optimality.
fn assert_certificate(spec: &ModelSpec, sol: &Solution) {
    let x = &sol.primal;
    let y = &sol.duals;
    assert!(spec.max_violation(x, false) <= 1e-6);
    let max = spec.sense() == Sense::Max;
    for (c, &yr) in spec.constraints().iter().zip(y) {
        // in max form a binding <= row has y >= 0
        let sign = if max { 1.0 } else { -1.0 };
        match c.relation {
            Relation::Le => assert!(sign * yr >= -1e-6, "dual sign {yr}"),
            Relation::Ge => assert!(sign * yr <= 1e-6, "dual sign {yr}"),
            Relation::Eq => {}
        }
        let slack = c.rhs - c.activity(x);
        assert!((yr * slack).abs() <= 1e-6, "complementary slackness");
    }
    for (j, v) in spec.variables().iter().enumerate() {
        let mut dj = spec.objective()[j];
        for (c, &yr) in spec.constraints().iter().zip(y) {
            for &(k, a) in &c.coeffs {
                if k == j {
                    dj -= yr * a;
                }
            }
        }
        let up = if max { dj } else { -dj };
        if up > 1e-6 {
            assert!(
                close(x[j], v.upper),
                "var {j} should sit at its upper bound"
            );
        } else if up < -1e-6 {
            assert!(
                close(x[j], v.lower),
                "var {j} should sit at its lower bound"
            );
        }
    }
    // strong duality
    let mut dual_obj = spec.offset();
    for (c, &yr) in spec.constraints().iter().zip(y) {
        dual_obj += yr * c.rhs;
    }
    for (j, _) in spec.variables().iter().enumerate() {
        let mut dj = spec.objective()[j];
        for (c, &yr) in spec.constraints().iter().zip(y) {
            for &(k, a) in &c.coeffs {
                if k == j {
                    dj -= yr * a;
                }
            }
        }
        dual_obj += dj * x[j];
    }
    assert!(close(dual_obj, sol.objective));
}

#[test]
fn single_variable() {
    let mut m = ModelSpec::new(Sense::Max);
    let x = m.add_continuous("x", 0.0, f64::INFINITY, 1.0).unwrap();
    m.add_constraint([(x, 1.0)], Relation::Le, 1.0).unwrap();
    let s = solve_lp(&m).unwrap();
    assert_eq!(s.status, Status::Optimal);
    assert!(close(s.objective, 1.0));
    assert!(close(s.duals[0], 1.0));
    assert_certificate(&m, &s);
}

#[test]
fn infeasible_and_unbounded() {
    let mut m = ModelSpec::new(Sense::Min);
    let x = m.add_continuous("x", 0.0, 10.0, 1.0).unwrap();
    m.add_constraint([(x, 1.0)], Relation::Ge, 11.0).unwrap();
    assert_eq!(solve_lp(&m).unwrap().status, Status::Infeasible);
    assert_eq!(solve_mip(&m).unwrap().status, Status::Infeasible);

    let mut m = ModelSpec::new(Sense::Max);
    let x = m.add_continuous("x", 0.0, f64::INFINITY, 1.0).unwrap();
    let y = m.add_continuous("y", 0.0, f64::INFINITY, 0.0).unwrap();
    m.add_constraint([(x, 1.0), (y, -1.0)], Relation::Le, 1.0)
        .unwrap();
    assert_eq!(solve_lp(&m).unwrap().status, Status::Unbounded);
}

#[test]
fn equality_and_free_variables() {
    // min x + y, x - y = 1, x free, y in [-2, 5]
    let mut m = ModelSpec::new(Sense::Min);
    let x = m
        .add_continuous("x", f64::NEG_INFINITY, f64::INFINITY, 1.0)
        .unwrap();
    let y = m.add_continuous("y", -2.0, 5.0, 1.0).unwrap();
    m.add_constraint([(x, 1.0), (y, -1.0)], Relation::Eq, 1.0)
        .unwrap();
    let s = solve_lp(&m).unwrap();
    assert!(close(s.objective, -3.0));
    assert!(close(s.primal[x], -1.0) && close(s.primal[y], -2.0));
    assert_certificate(&m, &s);
}

#[test]
fn empty_objective() {
    let mut m = ModelSpec::new(Sense::Max);
    let a = m.add_binary("a", 0.0);
    let b = m.add_binary("b", 0.0);
    m.add_constraint([(a, 1.0), (b, 1.0)], Relation::Ge, 1.0)
        .unwrap();
    let s = solve_mip(&m).unwrap();
    assert_eq!(s.status, Status::Optimal);
    assert!(close(s.objective, 0.0));
}

#[test]
fn rejects_bad_models() {
    let mut m = ModelSpec::new(Sense::Max);
    assert!(m.add_var("x", 1.0, 0.0, false, 0.0).is_err());
    let x = m.add_binary("x", 1.0);
    assert!(m.add_constraint([(x + 1, 1.0)], Relation::Le, 1.0).is_err());
    assert!(m
        .add_constraint([(x, f64::NAN)], Relation::Le, 1.0)
        .is_err());
}

#[test]
fn knapsack_mip() {
    // max 5a + 4b + 3c, 2a + 3b + c <= 5, 4a + b + 2c <= 11, 3a + 4b + 2c <= 8
    let mut m = ModelSpec::new(Sense::Max);
    let v: Vec<usize> = [5.0, 4.0, 3.0]
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            m.add_var(alloc::format!("v{i}"), 0.0, f64::INFINITY, true, c)
                .unwrap()
        })
        .collect();
    m.add_constraint([(v[0], 2.0), (v[1], 3.0), (v[2], 1.0)], Relation::Le, 5.0)
        .unwrap();
    m.add_constraint([(v[0], 4.0), (v[1], 1.0), (v[2], 2.0)], Relation::Le, 11.0)
        .unwrap();
    m.add_constraint([(v[0], 3.0), (v[1], 4.0), (v[2], 2.0)], Relation::Le, 8.0)
        .unwrap();
    let lp = solve_lp(&m).unwrap();
    assert!(close(lp.objective, 13.0));
    assert_certificate(&m, &lp);
    let ip = solve_mip(&m).unwrap();
    // independent enumeration
    let mut best = f64::NEG_INFINITY;
    for a in 0..6 {
        for b in 0..6 {
            for c in 0..6 {
                let x = [a as f64, b as f64, c as f64];
                if m.max_violation(&x, true) <= 1e-9 {
                    best = best.max(m.evaluate(&x));
                }
            }
        }
    }
    assert!(close(ip.objective, best));
    assert!(ip.objective <= lp.objective + 1e-6);
}

#[test]
fn node_limit_reports_bound() {
    // odd cycle packing: LP 2.5, IP 2
    let mut m = ModelSpec::new(Sense::Max);
    let v: Vec<usize> = (0..5)
        .map(|i| m.add_binary(alloc::format!("x{i}"), 1.0))
        .collect();
    for i in 0..5 {
        m.add_constraint([(v[i], 1.0), (v[(i + 1) % 5], 1.0)], Relation::Le, 1.0)
            .unwrap();
    }
    let opts = MipOptions {
        node_limit: 1,
        ..MipOptions::default()
    };
    match solve_mip_with(&m, &opts) {
        Err(MpError::NodeLimit { bound, .. }) => assert!(bound >= 2.0 - 1e-6),
        other => panic!("expected node limit, got {other:?}"),
    }
    assert!(close(solve_mip(&m).unwrap().objective, 2.0));
    let hinted = MipOptions {
        known_bound: Some(2.0),
        incumbent: Some(vec![1.0, 0.0, 1.0, 0.0, 0.0]),
        ..MipOptions::default()
    };
    assert!(close(solve_mip_with(&m, &hinted).unwrap().objective, 2.0));
}

#[test]
fn session_rows_and_columns() {
    // max x + y, x + 2y <= 4, x <= 3
    let mut m = ModelSpec::new(Sense::Max);
    let x = m.add_continuous("x", 0.0, f64::INFINITY, 1.0).unwrap();
    let y = m.add_continuous("y", 0.0, f64::INFINITY, 1.0).unwrap();
    m.add_constraint([(x, 1.0), (y, 2.0)], Relation::Le, 4.0)
        .unwrap();
    m.add_constraint([(x, 1.0)], Relation::Le, 3.0).unwrap();
    let mut lp = LpSession::new(&m).unwrap();
    assert_eq!(lp.solve().unwrap(), Status::Optimal);
    assert!(close(lp.objective(), 3.5));
    // cut: x + y <= 3
    lp.add_constraint([(x, 1.0), (y, 1.0)], Relation::Le, 3.0)
        .unwrap();
    assert_eq!(lp.solve().unwrap(), Status::Optimal);
    assert!(close(lp.objective(), 3.0));
    // new column z with objective 2 in the first row
    let z = lp
        .add_variable(0.0, f64::INFINITY, 2.0, &[(0, 1.0)])
        .unwrap();
    assert_eq!(lp.solve().unwrap(), Status::Optimal);
    // z = 4, x = y = 0 gives 8
    assert!(close(lp.objective(), 8.0));
    assert!(close(lp.value(z), 4.0));
    // same model built from scratch
    let mut m2 = m.clone();
    m2.add_constraint([(x, 1.0), (y, 1.0)], Relation::Le, 3.0)
        .unwrap();
    let z2 = m2.add_continuous("z", 0.0, f64::INFINITY, 2.0).unwrap();
    let mut c0 = m2.constraints()[0].clone();
    c0.coeffs.push((z2, 1.0));
    let mut m3 = ModelSpec::new(Sense::Max);
    for v in m2.variables() {
        m3.add_var(v.name.clone(), v.lower, v.upper, v.integer, 0.0)
            .unwrap();
    }
    for (j, &c) in m2.objective().iter().enumerate() {
        m3.set_objective(j, c);
    }
    m3.add_constraint(c0.coeffs.clone(), c0.relation, c0.rhs)
        .unwrap();
    for c in &m2.constraints()[1..] {
        m3.add_constraint(c.coeffs.clone(), c.relation, c.rhs)
            .unwrap();
    }
    let s = solve_lp(&m3).unwrap();
    assert!(close(s.objective, lp.objective()));
    assert_certificate(&m3, &s);
}

#[test]
fn lp_export() {
    let mut m = ModelSpec::new(Sense::Max);
    let x = m.add_binary("x[0]", 1.0);
    let y = m.add_continuous("y", 0.0, f64::INFINITY, -2.5).unwrap();
    m.add_constraint([(x, 1.0), (y, 3.0)], Relation::Ge, 1.0)
        .unwrap();
    m.set_offset(1.0);
    let text = m.to_lp_string();
    assert!(text.contains("Maximize\n obj: x[0] - 2.5 y + 1"));
    assert!(text.contains(" c0: x[0] + 3 y >= 1"));
    assert!(text.contains(" 0 <= x[0] <= 1"));
    assert!(text.contains(" y >= 0"));
    assert!(text.contains("Generals\n x[0]"));
    assert!(text.ends_with("End\n"));
}

/// Brute force over all vertices of `{A x <= b, 0 <= x <= u}` for tiny LPs.
fn vertex_enumeration(a: &[Vec<f64>], b: &[f64], u: &[f64], c: &[f64]) -> Option<f64> {
    let n = c.len();
    // all hyperplanes: rows, x_j = 0, x_j = u_j
    let mut planes: Vec<(Vec<f64>, f64)> = a.iter().cloned().zip(b.iter().copied()).collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        planes.push((e.clone(), 0.0));
        planes.push((e, u[j]));
    }
    let mut best: Option<f64> = None;
    let k = planes.len();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        // solve the n x n system
        let mut mat: Vec<Vec<f64>> = idx
            .iter()
            .map(|&i| {
                let mut r = planes[i].0.clone();
                r.push(planes[i].1);
                r
            })
            .collect();
        let mut ok = true;
        for col in 0..n {
            let p = (col..n)
                .max_by(|&r1, &r2| mat[r1][col].abs().total_cmp(&mat[r2][col].abs()))
                .unwrap();
            if mat[p][col].abs() < 1e-9 {
                ok = false;
                break;
            }
            mat.swap(col, p);
            for r in 0..n {
                if r != col {
                    let f = mat[r][col] / mat[col][col];
                    for cc in col..=n {
                        mat[r][cc] -= f * mat[col][cc];
                    }
                }
            }
        }
        if ok {
            let x: Vec<f64> = (0..n).map(|r| mat[r][n] / mat[r][r]).collect();
            let feasible = x
                .iter()
                .zip(u)
                .all(|(&v, &ub)| v >= -1e-9 && v <= ub + 1e-9)
                && a.iter().zip(b).all(|(row, &bi)| {
                    row.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() <= bi + 1e-9
                });
            if feasible {
                let val: f64 = c.iter().zip(&x).map(|(p, q)| p * q).sum();
                best = Some(best.map_or(val, |bv: f64| bv.max(val)));
            }
        }
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < k - n + i {
                idx[i] += 1;
                for jj in i + 1..n {
                    idx[jj] = idx[jj - 1] + 1;
                }
                break;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lp_matches_vertex_enumeration(
        n in 1usize..4,
        rows in proptest::collection::vec(proptest::collection::vec(-3i32..4, 3), 1..5),
        rhs in proptest::collection::vec(0i32..6, 5),
        obj in proptest::collection::vec(-3i32..4, 3),
        ub in proptest::collection::vec(1i32..4, 3),
    ) {
        let a: Vec<Vec<f64>> = rows.iter().map(|r| r[..n].iter().map(|&v| v as f64).collect()).collect();
        let b: Vec<f64> = rhs[..a.len()].iter().map(|&v| v as f64).collect();
        let c: Vec<f64> = obj[..n].iter().map(|&v| v as f64).collect();
        let u: Vec<f64> = ub[..n].iter().map(|&v| v as f64).collect();
        let mut m = ModelSpec::new(Sense::Max);
        for j in 0..n {
            m.add_continuous(alloc::format!("x{j}"), 0.0, u[j], c[j]).unwrap();
        }
        for (row, &bi) in a.iter().zip(&b) {
            m.add_constraint(row.iter().copied().enumerate(), Relation::Le, bi).unwrap();
        }
        let s = solve_lp(&m).unwrap();
        // x = 0 is feasible since b >= 0
        let expected = vertex_enumeration(&a, &b, &u, &c).unwrap();
        prop_assert_eq!(s.status, Status::Optimal);
        prop_assert!((s.objective - expected).abs() < 1e-6, "{} vs {}", s.objective, expected);
        assert_certificate(&m, &s);
        // determinism
        prop_assert_eq!(solve_lp(&m).unwrap().objective, s.objective);
        let ip = solve_mip(&{
            let mut mi = m.clone();
            for j in 0..n { let v = mi.variables()[j].clone(); mi.set_bounds(j, v.lower, v.upper).unwrap(); }
            let mut mm = ModelSpec::new(Sense::Max);
            for (j, v) in mi.variables().iter().enumerate() {
                mm.add_var(v.name.clone(), v.lower, v.upper, true, mi.objective()[j]).unwrap();
            }
            for cns in mi.constraints() {
                mm.add_constraint(cns.coeffs.clone(), cns.relation, cns.rhs).unwrap();
            }
            mm
        }).unwrap();
        prop_assert!(ip.objective <= s.objective + 1e-6);
    }

    #[test]
    fn mip_matches_enumeration(
        rows in proptest::collection::vec(proptest::collection::vec(-2i32..4, 4), 1..4),
        rhs in proptest::collection::vec(0i32..7, 4),
        obj in proptest::collection::vec(-2i32..5, 4),
    ) {
        let mut m = ModelSpec::new(Sense::Max);
        for j in 0..4 {
            m.add_var(alloc::format!("x{j}"), 0.0, 2.0, j < 3, obj[j] as f64).unwrap();
        }
        for (row, &bi) in rows.iter().zip(&rhs) {
            m.add_constraint(row.iter().map(|&v| v as f64).enumerate(), Relation::Le, bi as f64).unwrap();
        }
        let s = solve_mip(&m).unwrap();
        prop_assert_eq!(s.status, Status::Optimal);
        prop_assert!(m.max_violation(&s.primal, true) <= 1e-6);
        // enumerate the three integer variables, solve the 1-d LP in the last one by scanning its breakpoints
        let mut best = f64::NEG_INFINITY;
        for a in 0..3 { for b in 0..3 { for c in 0..3 {
            let mut lo: f64 = 0.0;
            let mut hi: f64 = 2.0;
            for (row, &bi) in rows.iter().zip(&rhs) {
                let rest = bi as f64 - (row[0] * a + row[1] * b + row[2] * c) as f64;
                let k = row[3] as f64;
                if k > 0.0 { hi = hi.min(rest / k); }
                else if k < 0.0 { lo = lo.max(rest / k); }
                else if rest < 0.0 { hi = -1.0; }
            }
            if lo <= hi + 1e-9 {
                let t = if obj[3] > 0 { hi } else { lo };
                let v = (obj[0] * a + obj[1] * b + obj[2] * c) as f64 + obj[3] as f64 * t;
                best = best.max(v);
            }
        }}}
        prop_assert!((s.objective - best).abs() < 1e-6, "{} vs {}", s.objective, best);
    }
}
