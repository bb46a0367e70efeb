use super::*;
use crate::text::parse_mmp;

fn solve_default(text: &str, n: usize) -> Report {
    let d = parse_mmp(text).unwrap();
    solve(&d, n, 0, &IntervalConfig::default()).unwrap()
}

#[test]
fn triangle_is_infeasible() {
    let r = solve_default("123,345,561", 3);
    assert!(r.outcome.is_infeasible());
    assert_eq!(r.outcome.stats.bisections, 0);
}

#[test]
fn square_is_infeasible() {
    let r = solve_default("123,345,567,781", 3);
    assert!(r.outcome.is_infeasible(), "{r:?}");
}

#[test]
fn chain_is_feasible() {
    let r = solve_default("123,345,567", 3);
    let Verdict::FeasibleCandidate { residual, .. } = r.outcome.verdict else { panic!("{r:?}") };
    assert!(residual < 1e-5);
}

#[test]
fn zero_budget_is_undetermined_or_decided_without_bisection() {
    let d = parse_mmp("1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH").unwrap();
    let cfg = IntervalConfig { budget: Some(0), ..IntervalConfig::default() };
    let r = solve(&d, 4, 0, &cfg).unwrap();
    assert_eq!(r.outcome.stats.bisections, 0);
}

#[test]
fn polynomial_enclosure() {
    // x0 y0 + x1 y1 over the worked box
    let p = Poly::var(0).mul(&Poly::var(2)).add(&Poly::var(1).mul(&Poly::var(3)));
    let ranges = [Interval::new(0.5, 1.0), Interval::new(0.5, 1.0), Interval::new(0.1, 0.2), Interval::new(0.2, 1.0)];
    let r = interval_eval(&p, |x| ranges[x]);
    assert!((r.lo - 0.15).abs() < 1e-12 && (r.hi - 1.2).abs() < 1e-12);
    assert!(interval_eval(&Poly::int(3), |_| Interval::ENTIRE).is_point());
    let sq = Poly::var(0).pow(2);
    assert_eq!(interval_eval(&sq, |_| Interval::new(-1.0, 1.0)), Interval::new(0.0, 1.0));
}
