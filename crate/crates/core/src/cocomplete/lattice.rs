//! Finite lattices as cocomplete targets.
//!
//! Hom-sets have at most one element, colimits are joins, and the monoidal
//! structure is meet with unit the top element. Meet preserves joins in each
//! variable exactly when the lattice is distributive.

use crate::error::{Error, Result};

use super::{CocompleteTarget, Colimit, Diagram, MonoidalTarget, Target};

#[derive(Clone, Debug)]
pub struct Lattice {
    name: String,
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Build from an order relation, computing joins and meets; fails if
    /// some pair lacks a least upper or greatest lower bound.
    pub fn from_order(name: &str, labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::invalid(name, "a lattice needs at least one element"));
        }
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        let bound = |i: usize, j: usize, upper: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&k| if upper { leq[i][k] && leq[j][k] } else { leq[k][i] && leq[k][j] })
                .collect();
            cands.iter().copied().find(|&k| {
                cands
                    .iter()
                    .all(|&o| if upper { leq[k][o] } else { leq[o][k] })
            })
        };
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                join[i][j] = bound(i, j, true)
                    .ok_or_else(|| Error::NoColimit(format!("{name}: no join of {} and {}", labels[i], labels[j])))?;
                meet[i][j] = bound(i, j, false)
                    .ok_or_else(|| Error::invalid(name, format!("no meet of {} and {}", labels[i], labels[j])))?;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| leq[b][x])).expect("finite lattice has a bottom");
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x][t])).expect("finite lattice has a top");
        Ok(Self {
            name: name.to_string(),
            labels,
            leq,
            join,
            meet,
            bottom,
            top,
        })
    }

    /// `{0 < 1 < … < n-1}`.
    pub fn chain(n: usize) -> Self {
        Self::from_order(&format!("chain{n}"), (0..n).map(|i| i.to_string()).collect(), |i, j| i <= j)
            .expect("chains are lattices")
    }

    /// Divisors of `n` under divisibility.
    pub fn divisors(n: usize) -> Self {
        let ds: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        Self::from_order(&format!("Div{n}"), ds.iter().map(|d| d.to_string()).collect(), |i, j| {
            ds[j] % ds[i] == 0
        })
        .expect("divisor posets are lattices")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))))
        })
    }
}

impl Target for Lattice {
    type Obj = usize;
    /// `(a, b)` with `a ≤ b`.
    type Mor = (usize, usize);

    fn name(&self) -> String {
        self.name.clone()
    }

    fn dom(&self, f: &(usize, usize)) -> usize {
        f.0
    }

    fn cod(&self, f: &(usize, usize)) -> usize {
        f.1
    }

    fn identity(&self, x: &usize) -> (usize, usize) {
        (*x, *x)
    }

    fn compose(&self, g: &(usize, usize), f: &(usize, usize)) -> (usize, usize) {
        debug_assert_eq!(f.1, g.0);
        (f.0, g.1)
    }

    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<(usize, usize)>> {
        Ok(if self.leq[*a][*b] { vec![(*a, *b)] } else { Vec::new() })
    }

    fn inverse(&self, f: &(usize, usize)) -> Option<(usize, usize)> {
        (f.0 == f.1).then_some(*f)
    }

    fn describe_obj(&self, x: &usize) -> String {
        self.labels[*x].clone()
    }

    fn describe_mor(&self, f: &(usize, usize)) -> String {
        format!("{}<={}", self.labels[f.0], self.labels[f.1])
    }
}

impl CocompleteTarget for Lattice {
    fn initial(&self) -> usize {
        self.bottom
    }

    fn colimit(&self, d: &Diagram<Self>) -> Result<Colimit<Self>> {
        let apex = d.obj.iter().fold(self.bottom, |acc, &x| self.join(acc, x));
        let legs = d.obj.iter().map(|&x| (x, apex)).collect();
        Ok(Colimit { apex, legs })
    }

    fn mediate(&self, d: &Diagram<Self>, c: &Colimit<Self>, legs: &[(usize, usize)], z: &usize) -> Result<(usize, usize)> {
        if legs.len() != d.obj.len() || legs.iter().zip(&d.obj).any(|(l, &x)| l.0 != x || l.1 != *z) {
            return Err(Error::NotACocone("legs do not land in the probe".into()));
        }
        if !self.leq[c.apex][*z] {
            return Err(Error::NotACocone(format!("{} is not an upper bound", self.labels[*z])));
        }
        Ok((c.apex, *z))
    }

    fn probes(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

impl MonoidalTarget for Lattice {
    fn unit(&self) -> usize {
        self.top
    }

    fn tensor(&self, a: &usize, b: &usize) -> Result<usize> {
        Ok(self.meet(*a, *b))
    }

    fn tensor_mor(&self, f: &(usize, usize), g: &(usize, usize)) -> Result<(usize, usize)> {
        Ok((self.meet(f.0, g.0), self.meet(f.1, g.1)))
    }

    fn associator(&self, a: &usize, b: &usize, c: &usize) -> Result<(usize, usize)> {
        let m = self.meet(self.meet(*a, *b), *c);
        Ok((m, m))
    }

    fn left_unitor(&self, a: &usize) -> Result<(usize, usize)> {
        Ok((*a, *a))
    }

    fn right_unitor(&self, a: &usize) -> Result<(usize, usize)> {
        Ok((*a, *a))
    }

    fn symmetry(&self, a: &usize, b: &usize) -> Result<(usize, usize)> {
        let m = self.meet(*a, *b);
        Ok((m, m))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cocomplete::{check_universality, TargetFunctor};
    use crate::fincat::discrete_category;

    #[test]
    fn colimits_are_joins() {
        let l = Lattice::divisors(12);
        assert!(l.is_distributive());
        let four = l.labels.iter().position(|s| s == "4").unwrap();
        let six = l.labels.iter().position(|s| s == "6").unwrap();
        let d = TargetFunctor::<Lattice>::new(
            Arc::new(discrete_category("2", 2)),
            vec![four, six],
            vec![(four, four), (six, six)],
        );
        let c = l.colimit(&d).unwrap();
        assert_eq!(l.label(c.apex), "12");
        assert!(check_universality(&l, &d, &c, 1000).unwrap().is_empty());
        let empty = TargetFunctor::<Lattice>::new(Arc::new(discrete_category("0", 0)), vec![], vec![]);
        assert_eq!(l.colimit(&empty).unwrap().apex, l.bottom());
    }

    #[test]
    fn non_lattice_is_rejected() {
        // two incomparable maximal elements
        let r = Lattice::from_order("V", vec!["0".into(), "a".into(), "b".into()], |i, j| i == j || i == 0);
        assert!(r.is_err());
    }
}
