//! A small finite-domain constraint solver.
//!
//! Variables are assigned in index order. A constraint inspects the partial
//! assignment and either decides, or names the first unassigned variable it
//! needs; it is then parked on that variable and re-run once it is set.

use crate::error::{Error, Result};

/// `Ok(holds)` once decided, `Err(var)` while blocked on `var`.
pub type Outcome = std::result::Result<bool, usize>;

pub struct Csp<'a> {
    domains: Vec<usize>,
    constraints: Vec<Box<dyn Fn(&[Option<usize>]) -> Outcome + 'a>>,
}

impl<'a> Csp<'a> {
    pub fn new(domains: Vec<usize>) -> Self {
        Self {
            domains,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn add(&mut self, c: impl Fn(&[Option<usize>]) -> Outcome + 'a) {
        self.constraints.push(Box::new(c));
    }

    /// All solutions in lexicographic order; more than `limit` is an error.
    pub fn solve(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.domains.len();
        let mut assignment = vec![None; n];
        let mut parked: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, c) in self.constraints.iter().enumerate() {
            match c(&assignment) {
                Ok(true) => {}
                Ok(false) => return Ok(Vec::new()),
                Err(v) => parked[v].push(i),
            }
        }
        let mut out = Vec::new();
        self.go(0, &mut assignment, &mut parked, &mut out, limit)?;
        Ok(out)
    }

    fn go(
        &self,
        d: usize,
        assignment: &mut Vec<Option<usize>>,
        parked: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        if d == self.domains.len() {
            if out.len() >= limit {
                return Err(Error::Ceiling {
                    what: "constraint solutions".into(),
                    needed: limit + 1,
                    ceiling: limit,
                });
            }
            out.push(assignment.iter().map(|v| v.unwrap()).collect());
            return Ok(());
        }
        let waiting = std::mem::take(&mut parked[d]);
        for value in 0..self.domains[d] {
            assignment[d] = Some(value);
            let mut moved = Vec::new();
            let mut ok = true;
            for &i in &waiting {
                match (self.constraints[i])(assignment) {
                    Ok(true) => {}
                    Ok(false) => {
                        ok = false;
                        break;
                    }
                    Err(v) => {
                        debug_assert!(v > d);
                        parked[v].push(i);
                        moved.push(v);
                    }
                }
            }
            if ok {
                self.go(d + 1, assignment, parked, out, limit)?;
            }
            for v in moved {
                parked[v].pop();
            }
        }
        assignment[d] = None;
        parked[d] = waiting;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_different_triples() {
        let mut csp = Csp::new(vec![3; 3]);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            csp.add(move |a| Ok(a[i].ok_or(i)? != a[j].ok_or(j)?));
        }
        assert_eq!(csp.solve(100).unwrap().len(), 6);
    }

    #[test]
    fn dynamic_dependency() {
        // x1 = a[x0]: the second variable read depends on the first value
        let mut csp = Csp::new(vec![2, 2, 2]);
        csp.add(|a| {
            let x0 = a[0].ok_or(0usize)?;
            let x = a[1 + x0].ok_or(1 + x0)?;
            Ok(x == 1)
        });
        assert_eq!(csp.solve(100).unwrap().len(), 4);
        assert!(csp.solve(3).unwrap_err().is_resource());
    }

    #[test]
    fn empty_domain_has_no_solutions() {
        let csp = Csp::new(vec![2, 0]);
        assert!(csp.solve(10).unwrap().is_empty());
    }
}
