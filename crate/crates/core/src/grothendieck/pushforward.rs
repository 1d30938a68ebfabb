//! The pushforward functor `E ×_B Arr(B) -> E`, `(x, f) ↦ f_* x`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{pullback_category, validate_functor, Functor, Pullback};
use crate::report::ValidationReport;

use super::{build_arrow_category, ArrowCategory, GrothFibration};

#[derive(Clone, Debug)]
pub struct Pushforward {
    pub arrows: ArrowCategory,
    /// `E ×_B Arr(B)` along the projection and the source functor.
    pub domain: Pullback,
    pub functor: Functor,
}

impl Pushforward {
    /// Functoriality, plus strict commutation of `p ∘ (-)_* = t ∘ proj`.
    pub fn validate(&self, pi: &GrothFibration) -> ValidationReport {
        let mut report = validate_functor(&self.functor).prefixed("pushforward");
        let lhs = self.functor.then(&pi.projection);
        let rhs = self.domain.proj_right.then(&self.arrows.target);
        if lhs != rhs {
            report.violation("triangle", "p ∘ (-)_* differs from the target projection");
        }
        report
    }
}

/// On objects `(x, f) ↦` the target of the chosen cocartesian lift; on a
/// morphism `(χ, (u, v))` the unique filler over `v`.
pub fn pushforward_functor(pi: &GrothFibration) -> Result<Pushforward> {
    let arrows = build_arrow_category(&pi.base);
    let domain = pullback_category(&pi.projection, &arrows.source, &format!("{}×Arr", pi.name));
    let t = &pi.total;
    let mut lifts = Vec::with_capacity(domain.objects.len());
    for &(x, f) in &domain.objects {
        lifts.push(pi.lift(x, f).ok_or_else(|| {
            Error::NotCocartesian(format!(
                "no cocartesian lift of {} at {}",
                pi.base.describe_mor(f),
                t.obj_label(x)
            ))
        })?);
    }
    let obj_map = lifts.iter().map(|&e| t.target(e)).collect();
    let d = &domain.category;
    let mut mor_map = Vec::with_capacity(d.num_morphisms());
    for m in d.morphisms() {
        let (chi, sq) = domain.morphisms[m];
        let (_, v) = arrows.squares[sq];
        let (e, e2) = (lifts[d.source(m)], lifts[d.target(m)]);
        let filler = pi.unique_filler(e, t.comp(e2, chi), v).map_err(|err| {
            Error::NotCocartesian(format!("pushforward of {}: {err:?}", t.describe_mor(chi)))
        })?;
        mor_map.push(filler);
    }
    let functor = Functor::new(d.clone(), Arc::clone(t), obj_map, mor_map);
    Ok(Pushforward {
        arrows,
        domain,
        functor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::build_tensor_fibration;
    use crate::monoidal::{corpus, PointedSkeleton};

    #[test]
    fn pushforward_on_z2() {
        let s = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::z2(), &s).unwrap();
        let pi = &tf.fibration;
        let pf = pushforward_functor(pi).unwrap();
        assert!(pf.validate(pi).is_empty());
        let x = tf.object(&[1, 1]);
        let mu = s.multiplication(2);
        let obj = pf.domain.object(x, mu).unwrap();
        assert_eq!(tf.tuple(pf.functor.obj(obj)), vec![0]);
        let idx = pf.domain.object(x, pi.base.identity(2)).unwrap();
        assert_eq!(pf.functor.obj(idx), x);
    }
}
