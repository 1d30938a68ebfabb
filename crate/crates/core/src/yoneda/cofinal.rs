//! Finality of the slice inclusion `(C_T)/Z -> (C_f)/Z`.
//!
//! For composable `f : S -> T`, `g : T -> U` the fibration is pulled back to
//! the 2-simplex `S -> T -> U`. `C_f` is the part over `S -> T`, and `C_T`
//! the part over `T`; both are sliced over an object `Z` above `U`.

use std::sync::Arc;

use crate::cocomplete::is_final_functor;
use crate::error::{Error, Result};
use crate::fincat::{comma_category, full_subcategory, ordinal, pullback_category, Functor, MorId, ObjId, Pullback};
use crate::grothendieck::GrothFibration;
use crate::report::ValidationReport;

/// `C_α` and its part `C_f` for a composable pair, shared by every `Z`.
pub struct SimplexPullback {
    pb: Pullback,
    lower: Vec<ObjId>,
    incl: Functor,
}

impl SimplexPullback {
    pub fn new(pi: &GrothFibration, f: MorId, g: MorId) -> Result<Self> {
        let b = &pi.base;
        if b.target(f) != b.source(g) {
            return Err(Error::Domain(format!("{} and {} are not composable", b.describe_mor(f), b.describe_mor(g))));
        }
        let simplex = Arc::new(ordinal(2));
        let vertices = [b.source(f), b.target(f), b.target(g)];
        let mor_map = simplex
            .morphisms()
            .map(|m| match (simplex.source(m), simplex.target(m)) {
                (i, j) if i == j => b.identity(vertices[i]),
                (0, 1) => f,
                (1, 2) => g,
                _ => b.comp(g, f),
            })
            .collect();
        let alpha = Functor::new(simplex.clone(), b.clone(), vertices.to_vec(), mor_map);
        let pb = pullback_category(&pi.projection, &alpha, "C_α");
        let lower: Vec<ObjId> = pb.category.objects().filter(|&x| pb.objects[x].1 < 2).collect();
        let (_, incl) = full_subcategory(&pb.category, &lower, "C_f");
        Ok(Self { pb, lower, incl })
    }

    /// `i_Z`, or `None` when `z` is not above the last vertex.
    pub fn inclusion(&self, z: ObjId) -> Option<Functor> {
        let top = self.pb.object(z, 2)?;
        let slice = comma_category(&self.incl, top);
        let over_t: Vec<ObjId> = slice
            .objects
            .iter()
            .enumerate()
            .filter(|&(_, &(a, _))| self.pb.objects[self.lower[a]].1 == 1)
            .map(|(i, _)| i)
            .collect();
        Some(full_subcategory(&slice.category, &over_t, "(C_T)/Z").1)
    }
}

/// The inclusion `i_Z : (C_T)/Z -> (C_f)/Z`.
pub fn slice_inclusion(pi: &GrothFibration, f: MorId, g: MorId, z: ObjId) -> Result<Functor> {
    let (b, t) = (&pi.base, &pi.total);
    let bad = || {
        Error::Domain(format!(
            "{} then {} does not end under {}",
            b.describe_mor(f),
            b.describe_mor(g),
            t.obj_label(z)
        ))
    };
    if b.target(f) != b.source(g) {
        return Err(bad());
    }
    SimplexPullback::new(pi, f, g)?.inclusion(z).ok_or_else(bad)
}

/// Every composable pair and every `Z` above the end of the pair.
pub fn check_slice_finality(pi: &GrothFibration) -> Result<ValidationReport> {
    let (b, t) = (&pi.base, &pi.total);
    let mut report = ValidationReport::new();
    for f in b.morphisms() {
        for &g in b.outgoing(b.target(f)) {
            let simplex = SimplexPullback::new(pi, f, g)?;
            for z in pi.objects_over(b.target(g)) {
                let i_z = simplex.inclusion(z).expect("z lies over the end of g");
                if !is_final_functor(&i_z) {
                    report.violation(
                        "final",
                        format!("{} then {} over {}", b.describe_mor(f), b.describe_mor(g), t.obj_label(z)),
                    );
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::build_tensor_fibration;
    use crate::monoidal::{corpus, PointedSkeleton};

    #[test]
    fn z3_slice_inclusions_are_final() {
        let s = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::z3(), &s).unwrap();
        let r = check_slice_finality(&tf.fibration).unwrap();
        assert!(r.is_empty(), "{r}");
    }

    #[test]
    fn mismatched_pair_is_a_domain_error() {
        let s = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::z2(), &s).unwrap();
        let mu = s.multiplication(2);
        let z = tf.object(&[0, 0]);
        assert!(matches!(slice_inclusion(&tf.fibration, mu, mu, z), Err(Error::Domain(_))));
    }

    #[test]
    fn chain_slice_inclusions_are_final() {
        let s = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::chain2(), &s).unwrap();
        let r = check_slice_finality(&tf.fibration).unwrap();
        assert!(r.is_empty(), "{r}");
    }
}
