//! Arrow categories `Fun([1], B)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{CategoryBuilder, FinCategory, Functor, MorId, ObjId};

/// Objects are the morphisms of the base (same ids); a morphism `f -> f'`
/// is a commuting square `(u, v)` with `v ∘ f = f' ∘ u`.
#[derive(Clone, Debug)]
pub struct ArrowCategory {
    pub base: Arc<FinCategory>,
    pub category: Arc<FinCategory>,
    pub source: Functor,
    pub target: Functor,
    /// `(u, v)` for each square.
    pub squares: Vec<(MorId, MorId)>,
    index: HashMap<(ObjId, ObjId, MorId, MorId), MorId>,
}

impl ArrowCategory {
    /// The square from `f` to `f2` with top `u` and bottom `v`.
    pub fn square(&self, f: ObjId, f2: ObjId, u: MorId, v: MorId) -> Option<MorId> {
        self.index.get(&(f, f2, u, v)).copied()
    }
}

pub fn build_arrow_category(base: &Arc<FinCategory>) -> ArrowCategory {
    let b = base;
    let mut builder = CategoryBuilder::new(format!("Arr({})", b.name()));
    for f in b.morphisms() {
        builder.add_object(b.mor_label(f));
    }
    let mut squares = Vec::new();
    let mut index = HashMap::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for f in b.morphisms() {
        for &u in b.outgoing(b.source(f)) {
            for &v in b.outgoing(b.target(f)) {
                let vf = b.comp(v, f);
                for &f2 in b.hom(b.target(u), b.target(v)) {
                    if b.comp(f2, u) == vf {
                        let id = builder.add_morphism(format!("({},{})", b.mor_label(u), b.mor_label(v)), f, f2);
                        squares.push((u, v));
                        src.push(f);
                        tgt.push(f2);
                        index.insert((f, f2, u, v), id);
                    }
                }
            }
        }
    }
    let ids = b
        .morphisms()
        .map(|f| index[&(f, f, b.identity(b.source(f)), b.identity(b.target(f)))])
        .collect();
    let category = builder
        .build(ids, |g, h| {
            let (u1, v1) = squares[h];
            let (u2, v2) = squares[g];
            index.get(&(src[h], tgt[g], b.comp(u2, u1), b.comp(v2, v1))).copied()
        })
        .expect("arrow category is well-formed");
    let category = Arc::new(category);
    let source = Functor::new(
        category.clone(),
        b.clone(),
        b.morphisms().map(|f| b.source(f)).collect(),
        squares.iter().map(|&(u, _)| u).collect(),
    );
    let target = Functor::new(
        category.clone(),
        b.clone(),
        b.morphisms().map(|f| b.target(f)).collect(),
        squares.iter().map(|&(_, v)| v).collect(),
    );
    ArrowCategory {
        base: b.clone(),
        category,
        source,
        target,
        squares,
        index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{validate_category, validate_functor, walking_arrow};

    #[test]
    fn arrow_of_the_walking_arrow() {
        let w = Arc::new(walking_arrow());
        let arr = build_arrow_category(&w);
        assert!(validate_category(&arr.category).is_empty());
        assert!(validate_functor(&arr.source).is_empty());
        assert!(validate_functor(&arr.target).is_empty());
        // Arr([1]) is the poset id_s <= (s<=t) <= id_t: 3 objects, 6 morphisms
        assert_eq!(arr.category.num_objects(), 3);
        assert_eq!(arr.category.num_morphisms(), 6);
    }
}
