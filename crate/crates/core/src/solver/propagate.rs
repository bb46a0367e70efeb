//! Symbolic simplification on top of the preliminary pass.
//!
//! Equations are kept as exact rational polynomials over the unknown
//! coordinates. Besides the zero-table rules, a two-term equation that is
//! linear in a coordinate whose cofactor is a product of known-nonzero
//! coordinates is solved for that coordinate and substituted everywhere:
//! from `a[w][k] a[v][k] + a[w][m] a[v][m] = 0` with `a[v][k] != 0` follows
//! `a[w][k] = -a[w][m] a[v][m] / a[v][k]`, and `a[w][k]` is nonzero when
//! both `a[w][m]` and `a[v][m]` are. What cannot be reduced further is the
//! residual system.

use std::collections::BTreeSet;

use num::{BigRational, Signed, Zero};

use super::equations::{EquationSystem, Sym, ZeroFlag};
use super::poly::{Monomial, Poly, Var};
use super::prelim::{propagate_zero_table, Infeasibility};

#[derive(Debug, Clone)]
pub struct Residual {
    pub system: EquationSystem,
    /// Equations left over, as polynomials equal to zero.
    pub equations: Vec<Poly>,
    /// Eliminated unknowns in elimination order; later entries may refer
    /// only to unknowns that are still free.
    pub substitutions: Vec<(Sym, Poly)>,
    /// Unknowns known nonzero beyond the zero table.
    pub nonzero: BTreeSet<Sym>,
}

impl Residual {
    /// Residual equations of the form `c x^2 = d` in a single unknown.
    pub fn square_values(&self) -> Vec<(Sym, BigRational)> {
        let n = self.system.n;
        self.equations
            .iter()
            .filter_map(|p| {
                let vars = p.vars();
                if vars.len() != 1 || p.len() != 2 {
                    return None;
                }
                let x = vars[0];
                let c2 = p.terms.get(&Monomial(vec![(x, 2)]))?;
                let c0 = p.terms.get(&Monomial::one())?;
                Some((Sym { vertex: x / n, coord: x % n }, -c0 / c2))
            })
            .collect()
    }
}

struct State {
    sys: EquationSystem,
    eqs: Vec<Poly>,
    subs: Vec<(Var, Poly)>,
    nonzero: BTreeSet<Var>,
}

impl State {
    fn is_nonzero(&self, x: Var) -> bool {
        let n = self.sys.n;
        self.nonzero.contains(&x) || self.sys.zero_table.is_nonzero(x / n, x % n)
    }

    fn mark_nonzero(&mut self, x: Var) -> Result<bool, Infeasibility> {
        let n = self.sys.n;
        let changed = self.sys.zero_table.set(x / n, x % n, ZeroFlag::Nonzero)?;
        Ok(self.nonzero.insert(x) || changed)
    }

    fn set_zero(&mut self, x: Var) -> Result<(), Infeasibility> {
        let n = self.sys.n;
        self.sys.zero_table.set(x / n, x % n, ZeroFlag::Zero)?;
        self.substitute(x, &Poly::zero());
        Ok(())
    }

    fn substitute(&mut self, x: Var, value: &Poly) {
        for e in &mut self.eqs {
            *e = e.substitute(x, value).expect("negative powers only of nonzero unknowns");
        }
        for (_, s) in &mut self.subs {
            *s = s.substitute(x, value).expect("negative powers only of nonzero unknowns");
        }
    }

    /// Value of coordinate `k` of `v` in terms of the free unknowns.
    fn coordinate(&self, v: usize, k: usize) -> Poly {
        let n = self.sys.n;
        if let Some(x) = self.sys.value(v, k) {
            return Poly::constant(BigRational::from_float(x).unwrap());
        }
        let var = v * n + k;
        self.subs.iter().find(|(y, _)| *y == var).map_or_else(|| Poly::var(var), |(_, p)| p.clone())
    }

    /// Whether a polynomial is nonzero wherever the known-nonzero unknowns
    /// are: a single term over such unknowns.
    fn surely_nonzero(&self, p: &Poly) -> bool {
        p.len() == 1 && p.terms.keys().next().unwrap().vars().all(|y| self.is_nonzero(y))
    }

    /// One sweep over the equations; returns whether anything changed.
    fn sweep(&mut self) -> Result<bool, Infeasibility> {
        let mut changed = false;
        let mut i = 0;
        while i < self.eqs.len() {
            let nz: BTreeSet<Var> = self.eqs[i].vars().into_iter().filter(|&x| self.is_nonzero(x)).collect();
            let p = self.eqs[i].normalized(|x| nz.contains(&x));
            self.eqs[i] = p.clone();
            if let Some(c) = p.as_constant() {
                if !c.is_zero() {
                    return Err(Infeasibility::NoRealSolution { equation: p.to_string() });
                }
                self.eqs.swap_remove(i);
                changed = true;
                continue;
            }
            if definite_sign(&p) {
                return Err(Infeasibility::NoRealSolution { equation: p.to_string() });
            }
            if p.len() == 1 {
                let m = p.terms.keys().next().unwrap();
                let open: Vec<Var> = m.0.iter().filter(|&&(y, e)| e > 0 && !self.is_nonzero(y)).map(|&(y, _)| y).collect();
                match open.len() {
                    0 => return Err(Infeasibility::NoRealSolution { equation: p.to_string() }),
                    1 => {
                        self.eqs.swap_remove(i);
                        self.set_zero(open[0])?;
                        return Ok(true);
                    }
                    _ => {}
                }
            }
            if let Some((x, value)) = self.linear_solve(&p) {
                self.eqs.swap_remove(i);
                let nonzero = self.surely_nonzero(&value);
                self.substitute(x, &value);
                self.subs.push((x, value));
                if nonzero {
                    self.mark_nonzero(x)?;
                }
                return Ok(true);
            }
            if let Some(x) = square_value_var(&p) {
                changed |= self.mark_nonzero(x)?;
            }
            i += 1;
        }
        Ok(changed)
    }

    /// Solves a two-term equation for an unknown of degree one whose
    /// cofactor is a product of known-nonzero unknowns.
    fn linear_solve(&self, p: &Poly) -> Option<(Var, Poly)> {
        if p.len() != 2 {
            return None;
        }
        let terms: Vec<(&Monomial, &BigRational)> = p.terms.iter().collect();
        for (t, &(m, c)) in terms.iter().enumerate() {
            let (om, oc) = terms[1 - t];
            for &(x, e) in &m.0 {
                if e != 1 || om.exponent(x) != 0 {
                    continue;
                }
                let cof = m.without(x);
                if !cof.vars().all(|y| self.is_nonzero(y)) {
                    continue;
                }
                // x * cof * c + om * oc = 0
                let value = Poly::term(om.mul(&cof.inverse()), -oc / c);
                return Some((x, value));
            }
        }
        None
    }

    fn vector_rules(&mut self) -> Result<bool, Infeasibility> {
        let n = self.sys.n;
        let mut changed = false;
        for v in 0..self.sys.n_vertices {
            if self.sys.is_basis(v) {
                continue;
            }
            for k in 0..n {
                if self.sys.zero_table.get(v, k) != ZeroFlag::Unknown {
                    continue;
                }
                let c = self.coordinate(v, k);
                if c.is_zero() {
                    self.sys.zero_table.set(v, k, ZeroFlag::Zero)?;
                    changed = true;
                } else if self.surely_nonzero(&c) {
                    self.sys.zero_table.set(v, k, ZeroFlag::Nonzero)?;
                    changed = true;
                }
            }
        }
        Ok(changed)
    }

    /// Two distinct vertices whose coordinate vectors are proportional as
    /// polynomials.
    fn collinear_pair(&self) -> Option<(usize, usize)> {
        let n = self.sys.n;
        let a = self.sys.n_vertices;
        let coords: Vec<Vec<Poly>> = (0..a).map(|v| (0..n).map(|k| self.coordinate(v, k)).collect()).collect();
        for u in 0..a {
            for v in u + 1..a {
                let (cu, cv) = (&coords[u], &coords[v]);
                if (0..n).any(|k| cu[k].is_zero() != cv[k].is_zero()) {
                    continue;
                }
                let proportional = (0..n).all(|i| (i + 1..n).all(|j| cu[i].mul(&cv[j]).sub(&cu[j].mul(&cv[i])).is_zero()));
                if proportional {
                    return Some((u, v));
                }
            }
        }
        None
    }
}

/// Whether every term has even exponents and the same sign as a nonzero
/// constant term, so the polynomial never vanishes.
fn definite_sign(p: &Poly) -> bool {
    let Some(c0) = p.terms.get(&Monomial::one()) else { return false };
    p.terms.iter().all(|(m, c)| c.signum() == c0.signum() && m.0.iter().all(|&(_, e)| e % 2 == 0))
}

/// The unknown of an equation `c x^2 + d = 0` whose root is nonzero.
fn square_value_var(p: &Poly) -> Option<Var> {
    let vars = p.vars();
    if vars.len() != 1 || p.len() != 2 {
        return None;
    }
    let x = vars[0];
    let c2 = p.terms.get(&Monomial(vec![(x, 2)]))?;
    let c0 = p.terms.get(&Monomial::one())?;
    (c2.signum() != c0.signum()).then_some(x)
}

/// Simplifies the equations of `sys` to a fixpoint.
pub fn propagate_solve(sys: &EquationSystem) -> Result<Residual, Infeasibility> {
    let mut sys = sys.clone();
    propagate_zero_table(&mut sys)?;
    let eqs = sys.equations().into_iter().filter(|e| !matches!(e.kind, super::EquationKind::Cross { .. })).map(|e| e.poly).collect();
    let mut st = State { sys, eqs, subs: Vec::new(), nonzero: BTreeSet::new() };
    loop {
        let mut changed = st.sweep()?;
        changed |= st.vector_rules()?;
        // zero-table facts found here feed back into the equations
        let before = st.sys.zero_table.clone();
        propagate_zero_table(&mut st.sys)?;
        let n = st.sys.n;
        for v in 0..st.sys.n_vertices {
            for k in 0..n {
                if st.sys.zero_table.get(v, k) != before.get(v, k) {
                    changed = true;
                    if st.sys.zero_table.is_zero(v, k) {
                        st.substitute(v * n + k, &Poly::zero());
                    }
                }
            }
        }
        if let Some((u, v)) = st.collinear_pair() {
            return Err(Infeasibility::Collinear { u, v });
        }
        if !changed {
            break;
        }
    }
    let n = st.sys.n;
    let sym = |x: Var| Sym { vertex: x / n, coord: x % n };
    let nonzero = st.nonzero.iter().map(|&x| sym(x)).collect();
    let substitutions = st.subs.iter().map(|(x, p)| (sym(*x), p.clone())).collect();
    Ok(Residual { system: st.sys, equations: st.eqs, substitutions, nonzero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::build_equations;
    use crate::text::parse_mmp;

    #[test]
    fn basis_only_has_empty_residual() {
        let d = parse_mmp("1234").unwrap();
        let r = propagate_solve(&build_equations(&d, 4, 0).unwrap()).unwrap();
        assert!(r.equations.is_empty() && r.substitutions.is_empty());
    }

    #[test]
    fn two_term_equation_is_solved() {
        // W = (w0, 0, w2, w3) orthogonal to V = (v0, 0, 0, v3): with the
        // basis 1234 on axes 3..0, vertex 6 (V) avoids axes 1 and 2.
        let d = parse_mmp("1234,2356,1789,6ABW").unwrap();
        let sys = build_equations(&d, 4, 0).unwrap();
        let r = propagate_solve(&sys).unwrap();
        assert!(!r.substitutions.is_empty());
        // every substituted coordinate disappears from the residual
        let n = 4;
        for (s, _) in &r.substitutions {
            let x = s.vertex * n + s.coord;
            assert!(r.equations.iter().all(|p| !p.contains_var(x)));
        }
    }

    #[test]
    fn triangle_is_rejected() {
        let d = parse_mmp("123,345,561").unwrap();
        assert!(propagate_solve(&build_equations(&d, 3, 0).unwrap()).is_err());
    }
}
