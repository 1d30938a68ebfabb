//! Final functors.
//!
//! `i : A -> B` is final when every coslice `(b ↓ i)` is nonempty and
//! connected; restricting a diagram along a final functor then leaves its
//! colimit unchanged.

use crate::error::Result;
use crate::fincat::Functor;

use super::{CocompleteTarget, Diagram};

pub fn is_final_functor(i: &Functor) -> bool {
    let (a, b) = (&i.source, &i.target);
    b.objects().all(|x| {
        // objects of (x ↓ i) are pairs (a, β : x -> i a), numbered per a
        let mut offset = Vec::with_capacity(a.num_objects() + 1);
        offset.push(0);
        for y in a.objects() {
            offset.push(offset[y] + b.hom(x, i.obj(y)).len());
        }
        let n = offset[a.num_objects()];
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        let mut components = n;
        for m in a.morphisms() {
            let (y, y2) = (a.source(m), a.target(m));
            let to = b.hom(x, i.obj(y2));
            for (k, &beta) in b.hom(x, i.obj(y)).iter().enumerate() {
                let image = b.comp(i.mor(m), beta);
                let k2 = to.iter().position(|&g| g == image).expect("composite lies in the hom-set");
                let (r1, r2) = (find(&mut parent, offset[y] + k), find(&mut parent, offset[y2] + k2));
                if r1 != r2 {
                    parent[r1] = r2;
                    components -= 1;
                }
            }
        }
        components == 1
    })
}

/// Whether the canonical map `colim(d ∘ i) -> colim(d)` is an isomorphism.
pub fn check_final_restriction<T: CocompleteTarget>(t: &T, i: &Functor, d: &Diagram<T>) -> Result<bool> {
    let full = t.colimit(d)?;
    let restricted_diagram = d.precompose(i);
    let restricted = t.colimit(&restricted_diagram)?;
    let legs: Vec<T::Mor> = i.obj_map.iter().map(|&b| full.legs[b].clone()).collect();
    let comparison = t.mediate(&restricted_diagram, &restricted, &legs, &full.apex)?;
    Ok(t.is_iso(&comparison))
}
