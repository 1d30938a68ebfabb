//! The fiberwise mapping functor of a cocartesian fibration.
//!
//! Over `b` it is the hom bifunctor of the fiber; a base arrow `f : b -> b'`
//! acts by pushforward, `u ↦ f_* u`, the unique filler between the chosen
//! lifts.

use std::sync::Arc;

use crate::cocomplete::{validate_target_functor, FinFn, FinSet, TargetFunctor};
use crate::error::{Error, Result};
use crate::fincat::{opposite_category, product_category, FinCategory, MorId, ObjId};
use crate::grothendieck::{Fiber, GrothFibration, Pushforward};
use crate::report::ValidationReport;

pub struct FiberwiseHom<'a> {
    pub pi: &'a GrothFibration,
    pub fibers: Vec<Fiber>,
}

pub fn fiberwise_hom(pi: &GrothFibration) -> FiberwiseHom<'_> {
    FiberwiseHom {
        pi,
        fibers: pi.base.objects().map(|b| pi.fiber(b)).collect(),
    }
}

impl FiberwiseHom<'_> {
    fn same_fiber(&self, x: ObjId, y: ObjId) -> Result<ObjId> {
        let (bx, by) = (self.pi.over(x), self.pi.over(y));
        if bx != by {
            let t = &self.pi.total;
            return Err(Error::Domain(format!(
                "{} and {} lie over different objects {} and {}",
                t.obj_label(x),
                t.obj_label(y),
                self.pi.base.obj_label(bx),
                self.pi.base.obj_label(by)
            )));
        }
        Ok(bx)
    }

    /// Morphisms `x -> y` over the identity.
    pub fn hom(&self, x: ObjId, y: ObjId) -> Result<Vec<MorId>> {
        let b = self.same_fiber(x, y)?;
        let fib = &self.fibers[b];
        let (lx, ly) = (fib.local_object(x).unwrap(), fib.local_object(y).unwrap());
        Ok(fib.category.hom(lx, ly).iter().map(|&m| fib.morphisms[m]).collect())
    }

    /// The bifunctor `Fib(b)^op × Fib(b) -> FinSet`.
    pub fn bifunctor(&self, b: ObjId) -> TargetFunctor<FinSet> {
        let fc = &self.fibers[b].category;
        let op = opposite_category(fc);
        let prod: Arc<FinCategory> = Arc::new(product_category(&op, fc));
        let (n, nm) = (fc.num_objects(), fc.num_morphisms());
        let obj = prod.objects().map(|p| fc.hom(p / n, p % n).len()).collect();
        let mor = prod
            .morphisms()
            .map(|m| {
                // u : a' -> a in the fiber, read as a -> a' in the opposite
                let (u, v) = (m / nm, m % nm);
                let (a, b2) = (fc.target(u), fc.source(v));
                let (a2, b3) = (fc.source(u), fc.target(v));
                let to = fc.hom(a2, b3);
                FinFn::new(
                    to.len(),
                    fc.hom(a, b2)
                        .iter()
                        .map(|&h| {
                            let image = fc.comp(v, fc.comp(h, u));
                            to.iter().position(|&k| k == image).expect("composite lies in the hom-set")
                        })
                        .collect(),
                )
            })
            .collect();
        TargetFunctor::new(prod, obj, mor)
    }

    /// `f_* u` for `u` over the identity and `f` out of its base object.
    pub fn push(&self, f: MorId, u: MorId) -> Result<MorId> {
        let (pi, t) = (self.pi, &self.pi.total);
        let (x, y) = (t.source(u), t.target(u));
        self.same_fiber(x, y)?;
        if pi.projection.mor(u) != pi.base.identity(pi.over(x)) || pi.base.source(f) != pi.over(x) {
            return Err(Error::Domain(format!(
                "{} is not a fiber morphism over the source of {}",
                t.describe_mor(u),
                pi.base.describe_mor(f)
            )));
        }
        let missing = || Error::NotCocartesian(format!("no lift of {}", pi.base.describe_mor(f)));
        let (ex, ey) = (pi.lift(x, f).ok_or_else(missing)?, pi.lift(y, f).ok_or_else(missing)?);
        pi.unique_filler(ex, t.comp(ey, u), pi.base.identity(pi.base.target(f)))
            .map_err(|e| Error::NotCocartesian(format!("pushforward of {}: {e:?}", t.describe_mor(u))))
    }

    /// `Map(x, y) -> Map(f_* x, f_* y)`.
    pub fn induced(&self, f: MorId, x: ObjId, y: ObjId) -> Result<FinFn> {
        let (px, py) = (self.pi.pushforward_object(x, f)?, self.pi.pushforward_object(y, f)?);
        let to = self.hom(px, py)?;
        let map = self
            .hom(x, y)?
            .into_iter()
            .map(|u| {
                let image = self.push(f, u)?;
                Ok(to.iter().position(|&k| k == image).expect("filler lies over the identity"))
            })
            .collect::<Result<_>>()?;
        Ok(FinFn::new(to.len(), map))
    }
}

/// Hom tables against the fibers, the bifunctor laws, functoriality of the
/// induced maps, and agreement with the pushforward functor on squares
/// `(u, f) -> (u', f)` with identity top and bottom.
pub fn check_fiberwise_hom(fh: &FiberwiseHom<'_>, pf: &Pushforward) -> Result<ValidationReport> {
    let pi = fh.pi;
    let (t, base) = (&pi.total, &pi.base);
    let mut report = ValidationReport::new();
    for b in base.objects() {
        let fib = &fh.fibers[b];
        for &x in &fib.objects {
            for &y in &fib.objects {
                let mut expected: Vec<MorId> =
                    t.hom(x, y).iter().copied().filter(|&m| pi.projection.mor(m) == base.identity(b)).collect();
                let mut got = fh.hom(x, y)?;
                expected.sort_unstable();
                got.sort_unstable();
                if expected != got {
                    report.violation("fiber-hom", format!("{} -> {}", t.obj_label(x), t.obj_label(y)));
                }
            }
        }
        report.extend(validate_target_functor(&FinSet::default(), &fh.bifunctor(b)).prefixed(base.obj_label(b)));
        for &f in base.outgoing(b) {
            for &x in &fib.objects {
                if fh.push(f, t.identity(x))? != t.identity(pi.pushforward_object(x, f)?) {
                    report.violation("push-identity", format!("{} at {}", base.describe_mor(f), t.obj_label(x)));
                }
                for &u in pi.edges_over(x, base.identity(b)) {
                    for &v in pi.edges_over(t.target(u), base.identity(b)) {
                        if fh.push(f, t.comp(v, u))? != t.comp(fh.push(f, v)?, fh.push(f, u)?) {
                            report.violation("push-composition", format!("{} ∘ {}", t.describe_mor(v), t.describe_mor(u)));
                        }
                    }
                }
            }
        }
    }
    let d = &pf.domain;
    for m in d.category.morphisms() {
        let (chi, sq) = d.morphisms[m];
        let (top, bottom) = pf.arrows.squares[sq];
        if !base.is_identity(top) || !base.is_identity(bottom) {
            continue;
        }
        let f = d.objects[d.category.source(m)].1;
        if fh.push(f, chi)? != pf.functor.mor(m) {
            report.violation("pushforward", format!("{} along {}", t.describe_mor(chi), base.describe_mor(f)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::{build_tensor_fibration, pushforward_functor};
    use crate::monoidal::{corpus, PointedSkeleton};

    #[test]
    fn z3_mapping_functor() {
        let s = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::z3(), &s).unwrap();
        let pi = &tf.fibration;
        let fh = fiberwise_hom(pi);
        let pf = pushforward_functor(pi).unwrap();
        let r = check_fiberwise_hom(&fh, &pf).unwrap();
        assert!(r.is_empty(), "{r}");

        let (x, y) = (tf.object(&[1, 2]), tf.object(&[2, 1]));
        assert_eq!(fh.hom(x, x).unwrap().len(), 1);
        assert!(fh.hom(x, y).unwrap().is_empty());
        let mu = s.multiplication(2);
        let induced = fh.induced(mu, x, x).unwrap();
        assert_eq!(induced, FinFn::new(1, vec![0]));
        assert_eq!(pi.pushforward_object(x, mu).unwrap(), tf.object(&[0]));
        assert!(matches!(fh.hom(x, tf.object(&[1])), Err(Error::Domain(_))));
    }

    #[test]
    fn non_discrete_fibers() {
        let s = PointedSkeleton::new(2);
        for m in [corpus::chain2(), corpus::super_z2()] {
            let tf = build_tensor_fibration(&m, &s).unwrap();
            let fh = fiberwise_hom(&tf.fibration);
            let pf = pushforward_functor(&tf.fibration).unwrap();
            let r = check_fiberwise_hom(&fh, &pf).unwrap();
            assert!(r.is_empty(), "{}: {r}", m.name);
            let x = tf.object(&[0, 1]);
            assert!(!fh.hom(x, x).unwrap().is_empty());
        }
    }
}
