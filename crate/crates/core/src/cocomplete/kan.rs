//! Pointwise left Kan extensions.
//!
//! `(Lan_K F)(b) = colim_{(a, φ: K a -> b)} F(a)`. On a morphism `β: b -> b'`
//! the value is the map induced by reindexing `(a, φ) ↦ (a, β ∘ φ)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{comma_category, Comma, Functor, MorId, ObjId};

use super::{CocompleteTarget, Colimit, Diagram, TargetFunctor};

#[derive(Clone, Debug)]
pub struct KanExtension<T: CocompleteTarget> {
    pub functor: TargetFunctor<T>,
    /// `η_a : F(a) -> Lan(K a)`.
    pub unit: Vec<T::Mor>,
    /// `(K ↓ b)` for each object `b`.
    pub commas: Vec<Comma>,
    /// The diagram `F ∘ proj` over each comma category.
    pub diagrams: Vec<Diagram<T>>,
    pub colimits: Vec<Colimit<T>>,
}

impl<T: CocompleteTarget> KanExtension<T> {
    /// Cocone leg `F(a) -> Lan(b)` at the comma object `(a, φ)`.
    pub fn leg(&self, b: ObjId, a: ObjId, phi: MorId) -> Option<&T::Mor> {
        let i = self.commas[b].lookup(a, phi)?;
        Some(&self.colimits[b].legs[i])
    }

    pub fn value(&self, b: ObjId) -> &T::Obj {
        &self.functor.obj[b]
    }

    /// The map `Lan(b) -> z` induced by a family `F(a) -> z` indexed by the
    /// comma objects over `b`.
    pub fn mediate(&self, t: &T, b: ObjId, legs: &[T::Mor], z: &T::Obj) -> Result<T::Mor> {
        t.mediate(&self.diagrams[b], &self.colimits[b], legs, z)
    }
}

/// `Lan_K F` with its unit.
pub fn left_kan_extension<T: CocompleteTarget>(t: &T, f: &TargetFunctor<T>, k: &Functor) -> Result<KanExtension<T>> {
    if !f.source.same_tables(&k.source) {
        return Err(Error::invalid("left Kan extension", "F and K have different sources"));
    }
    let b = &k.target;
    let mut commas = Vec::with_capacity(b.num_objects());
    let mut diagrams = Vec::with_capacity(b.num_objects());
    let mut colimits = Vec::with_capacity(b.num_objects());
    for x in b.objects() {
        let comma = comma_category(k, x);
        let d = f.precompose(&comma.projection);
        colimits.push(t.colimit(&d)?);
        diagrams.push(d);
        commas.push(comma);
    }
    let obj: Vec<T::Obj> = colimits.iter().map(|c| c.apex.clone()).collect();
    let mut mor = Vec::with_capacity(b.num_morphisms());
    for beta in b.morphisms() {
        let (x, y) = (b.source(beta), b.target(beta));
        let legs: Vec<T::Mor> = commas[x]
            .objects
            .iter()
            .map(|&(a, phi)| {
                let i = commas[y]
                    .lookup(a, b.comp(beta, phi))
                    .expect("reindexed comma object exists");
                colimits[y].legs[i].clone()
            })
            .collect();
        mor.push(t.mediate(&diagrams[x], &colimits[x], &legs, &obj[y])?);
    }
    let functor = TargetFunctor::new(Arc::clone(b), obj, mor);
    let unit = k
        .source
        .objects()
        .map(|a| {
            let ka = k.obj(a);
            let i = commas[ka]
                .lookup(a, b.identity(ka))
                .expect("(a, id) lies in the comma category");
            colimits[ka].legs[i].clone()
        })
        .collect();
    Ok(KanExtension {
        functor,
        unit,
        commas,
        diagrams,
        colimits,
    })
}

/// `Lan_K θ : Lan_K F ⇒ Lan_K F'` for a natural transformation `θ : F ⇒ F'`.
pub fn lan_map<T: CocompleteTarget>(
    t: &T,
    from: &KanExtension<T>,
    to: &KanExtension<T>,
    theta: &[T::Mor],
) -> Result<Vec<T::Mor>> {
    let mut out = Vec::with_capacity(from.commas.len());
    for b in 0..from.commas.len() {
        let legs: Vec<T::Mor> = from.commas[b]
            .objects
            .iter()
            .zip(&to.colimits[b].legs)
            .map(|(&(a, _), leg)| t.compose(leg, &theta[a]))
            .collect();
        out.push(from.mediate(t, b, &legs, to.value(b))?);
    }
    Ok(out)
}
