//! Finite sets as a cocomplete, cartesian monoidal target.
//!
//! A set is its cardinality `n`, with elements `0..n`. Colimits are quotients
//! of the tagged disjoint union `{(j, x)}`; each class is represented by its
//! least tag and classes are numbered in order of those representatives.
//! The product `a × b` encodes `(x, y)` as `x·b + y`, which makes the
//! associator and unitors identities.

use std::fmt;

use crate::error::{Error, Result};

use super::{CocompleteTarget, Colimit, Diagram, MonoidalTarget, Target, TargetFunctor};

pub const DEFAULT_CEILING: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinFn {
    pub cod: usize,
    pub map: Vec<usize>,
}

impl FinFn {
    pub fn new(cod: usize, map: Vec<usize>) -> Self {
        debug_assert!(map.iter().all(|&v| v < cod));
        Self { cod, map }
    }

    pub fn dom(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_bijective(&self) -> bool {
        if self.dom() != self.cod {
            return false;
        }
        let mut seen = vec![false; self.cod];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{}", self.map, self.cod)
    }
}

#[derive(Clone, Debug)]
pub struct FinSet {
    pub ceiling: usize,
}

impl Default for FinSet {
    fn default() -> Self {
        Self {
            ceiling: DEFAULT_CEILING,
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    /// Union keeping the smaller root, so roots are least class members.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl FinSet {
    pub fn with_ceiling(ceiling: usize) -> Self {
        Self { ceiling }
    }

    fn check(&self, what: &str, needed: usize) -> Result<()> {
        if needed > self.ceiling {
            Err(Error::Ceiling {
                what: what.to_string(),
                needed,
                ceiling: self.ceiling,
            })
        } else {
            Ok(())
        }
    }

    pub fn function(&self, cod: usize, map: Vec<usize>) -> FinFn {
        FinFn::new(cod, map)
    }

    /// Coproduct `Σ sizes` with its injections.
    pub fn coproduct(&self, sizes: &[usize]) -> Result<Colimit<Self>> {
        let total: usize = sizes.iter().sum();
        self.check("coproduct", total)?;
        let mut offset = 0;
        let legs = sizes
            .iter()
            .map(|&s| {
                let f = FinFn::new(total, (offset..offset + s).collect());
                offset += s;
                f
            })
            .collect();
        Ok(Colimit { apex: total, legs })
    }

    /// All natural isomorphisms `f ⇒ g`, up to `limit` of them.
    pub fn natural_isomorphisms(
        &self,
        f: &TargetFunctor<Self>,
        g: &TargetFunctor<Self>,
        limit: usize,
    ) -> Result<Vec<Vec<FinFn>>> {
        if f.obj != g.obj {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        ElementSearch::new(f, g, true).run(&mut |sol| {
            if out.len() >= limit {
                return Err(Error::Ceiling {
                    what: "natural isomorphism enumeration".into(),
                    needed: out.len() + 1,
                    ceiling: limit,
                });
            }
            out.push(sol);
            Ok(true)
        })?;
        Ok(out)
    }
}

/// Backtracking over element images with forward propagation along the
/// shape's morphisms: fixing `α_x(e)` forces `α_y(F(m) e) = G(m) α_x(e)`.
struct ElementSearch<'a> {
    f: &'a TargetFunctor<FinSet>,
    g: &'a TargetFunctor<FinSet>,
    injective: bool,
    assign: Vec<Vec<Option<usize>>>,
    used: Vec<Vec<bool>>,
    trail: Vec<(usize, usize)>,
}

impl<'a> ElementSearch<'a> {
    fn new(f: &'a TargetFunctor<FinSet>, g: &'a TargetFunctor<FinSet>, injective: bool) -> Self {
        Self {
            f,
            g,
            injective,
            assign: f.obj.iter().map(|&n| vec![None; n]).collect(),
            used: g.obj.iter().map(|&n| vec![false; n]).collect(),
            trail: Vec::new(),
        }
    }

    fn set(&mut self, x: usize, e: usize, v: usize) -> bool {
        match self.assign[x][e] {
            Some(w) => w == v,
            None => {
                if self.injective {
                    if self.used[x][v] {
                        return false;
                    }
                    self.used[x][v] = true;
                }
                self.assign[x][e] = Some(v);
                self.trail.push((x, e));
                true
            }
        }
    }

    fn propagate(&mut self, x: usize, e: usize, v: usize) -> bool {
        let mut queue = vec![(x, e, v)];
        if !self.set(x, e, v) {
            return false;
        }
        let c = self.f.source.clone();
        while let Some((x, e, v)) = queue.pop() {
            for &m in c.outgoing(x) {
                let y = c.target(m);
                let e2 = self.f.mor[m].apply(e);
                let v2 = self.g.mor[m].apply(v);
                let fresh = self.assign[y][e2].is_none();
                if !self.set(y, e2, v2) {
                    return false;
                }
                if fresh {
                    queue.push((y, e2, v2));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (x, e) = self.trail.pop().unwrap();
            if let Some(v) = self.assign[x][e].take() {
                if self.injective {
                    self.used[x][v] = false;
                }
            }
        }
    }

    fn next_var(&self) -> Option<(usize, usize)> {
        self.assign
            .iter()
            .enumerate()
            .find_map(|(x, row)| row.iter().position(Option::is_none).map(|e| (x, e)))
    }

    /// Calls `emit` on each solution; `emit` returns false to stop.
    fn run(&mut self, emit: &mut dyn FnMut(Vec<FinFn>) -> Result<bool>) -> Result<bool> {
        if self.f.obj.len() != self.g.obj.len() {
            return Ok(true);
        }
        if self.injective && self.f.obj != self.g.obj {
            return Ok(true);
        }
        let Some((x, e)) = self.next_var() else {
            let sol = self
                .assign
                .iter()
                .zip(&self.g.obj)
                .map(|(row, &n)| FinFn::new(n, row.iter().map(|v| v.unwrap()).collect()))
                .collect();
            return emit(sol);
        };
        for v in 0..self.g.obj[x] {
            let mark = self.trail.len();
            if self.propagate(x, e, v) && !self.run(emit)? {
                self.undo(mark);
                return Ok(false);
            }
            self.undo(mark);
        }
        Ok(true)
    }
}

impl Target for FinSet {
    type Obj = usize;
    type Mor = FinFn;

    fn name(&self) -> String {
        "FinSet".into()
    }

    fn dom(&self, f: &FinFn) -> usize {
        f.dom()
    }

    fn cod(&self, f: &FinFn) -> usize {
        f.cod
    }

    fn identity(&self, x: &usize) -> FinFn {
        FinFn::new(*x, (0..*x).collect())
    }

    fn compose(&self, g: &FinFn, f: &FinFn) -> FinFn {
        debug_assert_eq!(f.cod, g.dom());
        FinFn::new(g.cod, f.map.iter().map(|&x| g.map[x]).collect())
    }

    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<FinFn>> {
        let count = (*b as u128).checked_pow(*a as u32).unwrap_or(u128::MAX);
        self.check("hom-set", usize::try_from(count).unwrap_or(usize::MAX))?;
        let mut out = vec![Vec::with_capacity(*a)];
        for _ in 0..*a {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..*b).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(|m| FinFn::new(*b, m)).collect())
    }

    fn inverse(&self, f: &FinFn) -> Option<FinFn> {
        if !f.is_bijective() {
            return None;
        }
        let mut inv = vec![0; f.cod];
        for (x, &y) in f.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(FinFn::new(f.dom(), inv))
    }

    fn describe_obj(&self, x: &usize) -> String {
        format!("#{x}")
    }

    fn describe_mor(&self, f: &FinFn) -> String {
        format!("{f:?}")
    }

    fn find_natural_iso(
        &self,
        f: &TargetFunctor<Self>,
        g: &TargetFunctor<Self>,
    ) -> Result<Option<Vec<FinFn>>> {
        if f.obj != g.obj {
            return Ok(None);
        }
        let mut found = None;
        ElementSearch::new(f, g, true).run(&mut |sol| {
            found = Some(sol);
            Ok(false)
        })?;
        Ok(found)
    }

    /// All natural transformations `f ⇒ g`, up to `limit` of them.
    fn natural_transformations(
        &self,
        f: &TargetFunctor<Self>,
        g: &TargetFunctor<Self>,
        limit: usize,
    ) -> Result<Vec<Vec<FinFn>>> {
        let mut out = Vec::new();
        ElementSearch::new(f, g, false).run(&mut |sol| {
            if out.len() >= limit {
                return Err(Error::Ceiling {
                    what: "natural transformation enumeration".into(),
                    needed: out.len() + 1,
                    ceiling: limit,
                });
            }
            out.push(sol);
            Ok(true)
        })?;
        Ok(out)
    }
}

impl CocompleteTarget for FinSet {
    fn initial(&self) -> usize {
        0
    }

    fn colimit(&self, d: &Diagram<Self>) -> Result<Colimit<Self>> {
        let c = &d.source;
        let mut offset = Vec::with_capacity(d.obj.len());
        let mut total = 0usize;
        for &n in &d.obj {
            offset.push(total);
            total += n;
        }
        self.check("colimit", total)?;
        let mut uf = UnionFind((0..total).collect());
        for m in c.morphisms() {
            let (j, k) = (c.source(m), c.target(m));
            for (x, &y) in d.mor[m].map.iter().enumerate() {
                uf.union(offset[j] + x, offset[k] + y);
            }
        }
        // classes numbered by their least tag
        let mut class_of = vec![usize::MAX; total];
        let mut apex = 0;
        for t in 0..total {
            let r = uf.find(t);
            if class_of[r] == usize::MAX {
                class_of[r] = apex;
                apex += 1;
            }
            class_of[t] = class_of[r];
        }
        let legs = c
            .objects()
            .map(|j| FinFn::new(apex, (0..d.obj[j]).map(|x| class_of[offset[j] + x]).collect()))
            .collect();
        Ok(Colimit { apex, legs })
    }

    fn mediate(&self, d: &Diagram<Self>, c: &Colimit<Self>, legs: &[FinFn], z: &usize) -> Result<FinFn> {
        let shape = &d.source;
        let z = *z;
        if legs.len() != shape.num_objects() {
            return Err(Error::NotACocone("wrong number of legs".into()));
        }
        let mut u: Vec<Option<usize>> = vec![None; c.apex];
        for j in shape.objects() {
            if legs[j].cod != z || legs[j].dom() != d.obj[j] {
                return Err(Error::NotACocone(format!("leg {j} has the wrong type")));
            }
            for x in 0..d.obj[j] {
                let e = c.legs[j].apply(x);
                let v = legs[j].apply(x);
                match u[e] {
                    None => u[e] = Some(v),
                    Some(w) if w != v => {
                        return Err(Error::NotACocone(format!(
                            "tags ({j},{x}) are identified in the colimit but sent to {w} and {v}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        let map = u
            .into_iter()
            .map(|v| v.ok_or_else(|| Error::NotACocone("colimit legs are not jointly surjective".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(FinFn::new(z, map))
    }

    fn probes(&self) -> Vec<usize> {
        (0..=4).collect()
    }
}

impl MonoidalTarget for FinSet {
    fn unit(&self) -> usize {
        1
    }

    fn tensor(&self, a: &usize, b: &usize) -> Result<usize> {
        let n = a.checked_mul(*b).unwrap_or(usize::MAX);
        self.check("product", n)?;
        Ok(n)
    }

    fn tensor_mor(&self, f: &FinFn, g: &FinFn) -> Result<FinFn> {
        let dom = self.tensor(&f.dom(), &g.dom())?;
        let cod = self.tensor(&f.cod, &g.cod)?;
        let mut map = Vec::with_capacity(dom);
        for &x in &f.map {
            for &y in &g.map {
                map.push(x * g.cod + y);
            }
        }
        Ok(FinFn::new(cod, map))
    }

    /// `(x, y, z) ↦ (x, (y, z))` is the identity on codes.
    fn associator(&self, a: &usize, b: &usize, c: &usize) -> Result<FinFn> {
        let ab = self.tensor(a, b)?;
        Ok(self.identity(&self.tensor(&ab, c)?))
    }

    fn left_unitor(&self, a: &usize) -> Result<FinFn> {
        Ok(self.identity(a))
    }

    fn right_unitor(&self, a: &usize) -> Result<FinFn> {
        Ok(self.identity(a))
    }

    fn symmetry(&self, a: &usize, b: &usize) -> Result<FinFn> {
        let n = self.tensor(a, b)?;
        let mut map = vec![0; n];
        for x in 0..*a {
            for y in 0..*b {
                map[x * b + y] = y * a + x;
            }
        }
        Ok(FinFn::new(n, map))
    }
}
