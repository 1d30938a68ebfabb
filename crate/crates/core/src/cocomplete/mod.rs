//! Cocomplete target categories, colimits and pointwise Kan extensions.
//!
//! A target is a (possibly infinite) category given by operations rather
//! than tables. Two are bundled: [`FinSet`] (finite cardinals and functions,
//! cartesian monoidal) and [`Lattice`] (a finite distributive lattice with
//! join as colimit and meet as tensor).

pub mod final_functor;
pub mod finset;
pub mod kan;
pub mod lattice;

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Functor, MorId, ObjId};
use crate::report::ValidationReport;

pub use final_functor::{check_final_restriction, is_final_functor};
pub use finset::{FinFn, FinSet};
pub use kan::{lan_map, left_kan_extension, KanExtension};
pub use lattice::Lattice;

pub trait Target: Send + Sync + Sized + Clone + Debug {
    type Obj: Clone + Eq + Hash + Debug + Send + Sync;
    type Mor: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`; callers guarantee `cod f = dom g`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;
    fn inverse(&self, f: &Self::Mor) -> Option<Self::Mor>;
    fn describe_obj(&self, x: &Self::Obj) -> String;
    fn describe_mor(&self, f: &Self::Mor) -> String;

    fn is_iso(&self, f: &Self::Mor) -> bool {
        self.inverse(f).is_some()
    }

    /// Components of a natural isomorphism `f ⇒ g`, if one exists.
    fn find_natural_iso(
        &self,
        f: &TargetFunctor<Self>,
        g: &TargetFunctor<Self>,
    ) -> Result<Option<Vec<Self::Mor>>> {
        generic_natural_iso(self, f, g)
    }

    /// Every natural transformation `f ⇒ g`, up to `limit` of them.
    fn natural_transformations(
        &self,
        f: &TargetFunctor<Self>,
        g: &TargetFunctor<Self>,
        limit: usize,
    ) -> Result<Vec<Vec<Self::Mor>>> {
        generic_natural_transformations(self, f, g, limit)
    }
}

pub trait CocompleteTarget: Target {
    fn initial(&self) -> Self::Obj;
    fn colimit(&self, d: &Diagram<Self>) -> Result<Colimit<Self>>;
    /// The unique map out of the apex restricting to `legs`; fails with
    /// [`Error::NotACocone`] if `legs` is not a cocone under the diagram.
    fn mediate(
        &self,
        d: &Diagram<Self>,
        c: &Colimit<Self>,
        legs: &[Self::Mor],
        z: &Self::Obj,
    ) -> Result<Self::Mor>;
    /// Test objects used to probe universal properties.
    fn probes(&self) -> Vec<Self::Obj>;
}

pub trait MonoidalTarget: Target {
    fn unit(&self) -> Self::Obj;
    fn tensor(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    /// `(a ⊗ b) ⊗ c -> a ⊗ (b ⊗ c)`.
    fn associator(&self, a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Result<Self::Mor>;
    /// `I ⊗ a -> a`.
    fn left_unitor(&self, a: &Self::Obj) -> Result<Self::Mor>;
    /// `a ⊗ I -> a`.
    fn right_unitor(&self, a: &Self::Obj) -> Result<Self::Mor>;
    /// `a ⊗ b -> b ⊗ a`.
    fn symmetry(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Self::Mor>;

    /// Left-associated tensor; the empty list gives the unit.
    fn tensor_all(&self, xs: &[Self::Obj]) -> Result<Self::Obj> {
        let mut acc = match xs.first() {
            None => return Ok(self.unit()),
            Some(x) => x.clone(),
        };
        for x in &xs[1..] {
            acc = self.tensor(&acc, x)?;
        }
        Ok(acc)
    }

    fn tensor_all_mor(&self, fs: &[Self::Mor]) -> Result<Self::Mor> {
        let mut acc = match fs.first() {
            None => return Ok(self.identity(&self.unit())),
            Some(f) => f.clone(),
        };
        for f in &fs[1..] {
            acc = self.tensor_mor(&acc, f)?;
        }
        Ok(acc)
    }
}

/// A functor from a finite category into a target.
#[derive(Clone)]
pub struct TargetFunctor<T: Target> {
    pub source: Arc<FinCategory>,
    pub obj: Vec<T::Obj>,
    pub mor: Vec<T::Mor>,
}

/// A diagram is a functor out of its finite shape.
pub type Diagram<T> = TargetFunctor<T>;

impl<T: Target> PartialEq for TargetFunctor<T> {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_tables(&other.source) && self.obj == other.obj && self.mor == other.mor
    }
}

impl<T: Target> Debug for TargetFunctor<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TargetFunctor")
            .field("source", &self.source.name())
            .field("obj", &self.obj)
            .finish()
    }
}

impl<T: Target> TargetFunctor<T> {
    pub fn new(source: Arc<FinCategory>, obj: Vec<T::Obj>, mor: Vec<T::Mor>) -> Self {
        Self { source, obj, mor }
    }

    pub fn constant(t: &T, source: Arc<FinCategory>, x: T::Obj) -> Self {
        let id = t.identity(&x);
        Self {
            obj: vec![x; source.num_objects()],
            mor: vec![id; source.num_morphisms()],
            source,
        }
    }

    /// `self ∘ k`.
    pub fn precompose(&self, k: &Functor) -> Self {
        Self {
            source: k.source.clone(),
            obj: k.obj_map.iter().map(|&x| self.obj[x].clone()).collect(),
            mor: k.mor_map.iter().map(|&m| self.mor[m].clone()).collect(),
        }
    }

    pub fn at(&self, x: ObjId) -> &T::Obj {
        &self.obj[x]
    }

    pub fn on(&self, m: MorId) -> &T::Mor {
        &self.mor[m]
    }
}

pub fn validate_target_functor<T: Target>(t: &T, f: &TargetFunctor<T>) -> ValidationReport {
    let c = &f.source;
    let mut report = ValidationReport::new();
    if f.obj.len() != c.num_objects() || f.mor.len() != c.num_morphisms() {
        report.structural("functor-arity", "tables have the wrong size");
        return report;
    }
    for m in c.morphisms() {
        let fm = &f.mor[m];
        if t.dom(fm) != f.obj[c.source(m)] || t.cod(fm) != f.obj[c.target(m)] {
            report.structural("functor-typing", c.describe_mor(m));
        }
    }
    if !report.is_empty() {
        return report;
    }
    for x in c.objects() {
        if f.mor[c.identity(x)] != t.identity(&f.obj[x]) {
            report.violation("identity", c.obj_label(x).to_string());
        }
    }
    for g in c.morphisms() {
        for &h in c.incoming(c.source(g)) {
            let gh = c.comp(g, h);
            if f.mor[gh] != t.compose(&f.mor[g], &f.mor[h]) {
                report.violation("composition", format!("{} ∘ {}", c.describe_mor(g), c.describe_mor(h)));
            }
        }
    }
    report
}

/// Check that `components` form a natural transformation `f ⇒ g`.
pub fn validate_target_nat<T: Target>(
    t: &T,
    f: &TargetFunctor<T>,
    g: &TargetFunctor<T>,
    components: &[T::Mor],
) -> ValidationReport {
    let c = &f.source;
    let mut report = ValidationReport::new();
    if components.len() != c.num_objects() {
        report.structural("nat-arity", "wrong number of components");
        return report;
    }
    for x in c.objects() {
        let a = &components[x];
        if t.dom(a) != f.obj[x] || t.cod(a) != g.obj[x] {
            report.structural("component-typing", c.obj_label(x).to_string());
        }
    }
    if !report.is_empty() {
        return report;
    }
    for m in c.morphisms() {
        let (x, y) = (c.source(m), c.target(m));
        if t.compose(&g.mor[m], &components[x]) != t.compose(&components[y], &f.mor[m]) {
            report.violation("naturality", c.describe_mor(m));
        }
    }
    report
}

/// Vertical composite `β ∘ α`.
pub fn compose_nat<T: Target>(t: &T, beta: &[T::Mor], alpha: &[T::Mor]) -> Vec<T::Mor> {
    beta.iter().zip(alpha).map(|(b, a)| t.compose(b, a)).collect()
}

pub fn identity_nat<T: Target>(t: &T, f: &TargetFunctor<T>) -> Vec<T::Mor> {
    f.obj.iter().map(|x| t.identity(x)).collect()
}

pub fn inverse_nat<T: Target>(t: &T, alpha: &[T::Mor]) -> Option<Vec<T::Mor>> {
    alpha.iter().map(|a| t.inverse(a)).collect()
}

fn generic_natural_iso<T: Target>(
    t: &T,
    f: &TargetFunctor<T>,
    g: &TargetFunctor<T>,
) -> Result<Option<Vec<T::Mor>>> {
    let c = &f.source;
    let mut cands = Vec::with_capacity(c.num_objects());
    for x in c.objects() {
        let isos: Vec<T::Mor> = t
            .hom(&f.obj[x], &g.obj[x])?
            .into_iter()
            .filter(|m| t.is_iso(m))
            .collect();
        if isos.is_empty() {
            return Ok(None);
        }
        cands.push(isos);
    }
    let mut chosen: Vec<Option<T::Mor>> = vec![None; c.num_objects()];
    fn go<T: Target>(
        x: usize,
        t: &T,
        f: &TargetFunctor<T>,
        g: &TargetFunctor<T>,
        cands: &[Vec<T::Mor>],
        chosen: &mut Vec<Option<T::Mor>>,
    ) -> bool {
        let c = &f.source;
        if x == c.num_objects() {
            return true;
        }
        for cand in &cands[x] {
            chosen[x] = Some(cand.clone());
            let ok = c.outgoing(x).iter().chain(c.incoming(x)).all(|&m| {
                let (s, d) = (c.source(m), c.target(m));
                match (&chosen[s], &chosen[d]) {
                    (Some(a), Some(b)) => t.compose(&g.mor[m], a) == t.compose(b, &f.mor[m]),
                    _ => true,
                }
            });
            if ok && go(x + 1, t, f, g, cands, chosen) {
                return true;
            }
        }
        chosen[x] = None;
        false
    }
    if go(0, t, f, g, &cands, &mut chosen) {
        Ok(Some(chosen.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(None)
    }
}

fn generic_natural_transformations<T: Target>(
    t: &T,
    f: &TargetFunctor<T>,
    g: &TargetFunctor<T>,
    limit: usize,
) -> Result<Vec<Vec<T::Mor>>> {
    let c = &f.source;
    let mut cands = Vec::with_capacity(c.num_objects());
    for x in c.objects() {
        cands.push(t.hom(&f.obj[x], &g.obj[x])?);
    }
    let mut out = Vec::new();
    let mut chosen: Vec<Option<T::Mor>> = vec![None; c.num_objects()];
    #[allow(clippy::too_many_arguments)]
    fn go<T: Target>(
        x: usize,
        t: &T,
        f: &TargetFunctor<T>,
        g: &TargetFunctor<T>,
        cands: &[Vec<T::Mor>],
        chosen: &mut Vec<Option<T::Mor>>,
        out: &mut Vec<Vec<T::Mor>>,
        limit: usize,
    ) -> Result<()> {
        let c = &f.source;
        if x == c.num_objects() {
            if out.len() >= limit {
                return Err(Error::Ceiling {
                    what: "natural transformation enumeration".into(),
                    needed: out.len() + 1,
                    ceiling: limit,
                });
            }
            out.push(chosen.iter().map(|m| m.clone().unwrap()).collect());
            return Ok(());
        }
        for cand in &cands[x] {
            chosen[x] = Some(cand.clone());
            let ok = c.outgoing(x).iter().chain(c.incoming(x)).all(|&m| {
                let (s, d) = (c.source(m), c.target(m));
                match (&chosen[s], &chosen[d]) {
                    (Some(a), Some(b)) => t.compose(&g.mor[m], a) == t.compose(b, &f.mor[m]),
                    _ => true,
                }
            });
            if ok {
                go(x + 1, t, f, g, cands, chosen, out, limit)?;
            }
        }
        chosen[x] = None;
        Ok(())
    }
    go(0, t, f, g, &cands, &mut chosen, &mut out, limit)?;
    Ok(out)
}

/// A colimit: apex plus one leg per object of the diagram's shape.
#[derive(Clone, Debug, PartialEq)]
pub struct Colimit<T: Target> {
    pub apex: T::Obj,
    pub legs: Vec<T::Mor>,
}

/// Check that `legs` into `apex` form a cocone under `d`.
pub fn is_cocone<T: Target>(t: &T, d: &Diagram<T>, apex: &T::Obj, legs: &[T::Mor]) -> bool {
    let c = &d.source;
    legs.len() == c.num_objects()
        && c.objects()
            .all(|j| t.dom(&legs[j]) == d.obj[j] && t.cod(&legs[j]) == *apex)
        && c.morphisms()
            .all(|m| t.compose(&legs[c.target(m)], &d.mor[m]) == legs[c.source(m)])
}

/// Every cocone under `d` with apex `z`, up to `limit` of them.
pub fn enumerate_cocones<T: Target>(
    t: &T,
    d: &Diagram<T>,
    z: &T::Obj,
    limit: usize,
) -> Result<Vec<Vec<T::Mor>>> {
    let c = &d.source;
    let mut homs = Vec::new();
    for j in c.objects() {
        homs.push(t.hom(&d.obj[j], z)?);
    }
    let mut out = Vec::new();
    let mut chosen: Vec<Option<T::Mor>> = vec![None; c.num_objects()];
    #[allow(clippy::too_many_arguments)]
    fn go<T: Target>(
        j: usize,
        t: &T,
        d: &Diagram<T>,
        homs: &[Vec<T::Mor>],
        chosen: &mut Vec<Option<T::Mor>>,
        out: &mut Vec<Vec<T::Mor>>,
        limit: usize,
    ) -> Result<()> {
        let c = &d.source;
        if j == c.num_objects() {
            if out.len() >= limit {
                return Err(Error::Ceiling {
                    what: "cocone enumeration".into(),
                    needed: out.len() + 1,
                    ceiling: limit,
                });
            }
            out.push(chosen.iter().map(|m| m.clone().unwrap()).collect());
            return Ok(());
        }
        for h in &homs[j] {
            chosen[j] = Some(h.clone());
            let ok = c.outgoing(j).iter().chain(c.incoming(j)).all(|&m| {
                let (s, e) = (c.source(m), c.target(m));
                match (&chosen[s], &chosen[e]) {
                    (Some(a), Some(b)) => t.compose(b, &d.mor[m]) == *a,
                    _ => true,
                }
            });
            if ok {
                go(j + 1, t, d, homs, chosen, out, limit)?;
            }
        }
        chosen[j] = None;
        Ok(())
    }
    go(0, t, d, &homs, &mut chosen, &mut out, limit)?;
    Ok(out)
}

/// Verify the universal property of `colim` against every cocone into
/// every probe object: each must factor through exactly one map.
pub fn check_universality<T: CocompleteTarget>(
    t: &T,
    d: &Diagram<T>,
    colim: &Colimit<T>,
    cocone_limit: usize,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    if !is_cocone(t, d, &colim.apex, &colim.legs) {
        report.violation("cocone", "colimit legs do not form a cocone");
        return Ok(report);
    }
    for z in t.probes() {
        let outs = t.hom(&colim.apex, &z)?;
        for cocone in enumerate_cocones(t, d, &z, cocone_limit)? {
            let factorizations = outs
                .iter()
                .filter(|u| {
                    colim
                        .legs
                        .iter()
                        .zip(&cocone)
                        .all(|(leg, c)| t.compose(u, leg) == *c)
                })
                .count();
            if factorizations != 1 {
                report.violation(
                    "universality",
                    format!("{} mediating maps into {}", factorizations, t.describe_obj(&z)),
                );
                continue;
            }
            let u = t.mediate(d, colim, &cocone, &z)?;
            if colim.legs.iter().zip(&cocone).any(|(leg, c)| t.compose(&u, leg) != *c) {
                report.violation("mediate", format!("wrong mediator into {}", t.describe_obj(&z)));
            }
        }
    }
    Ok(report)
}
