//! Diagrams of functors, their pointwise colimits, and the check that Day
//! convolution preserves colimits in each variable.

use std::sync::Arc;

use crate::cocomplete::{compose_nat, identity_nat, validate_target_functor, validate_target_nat, TargetFunctor};
use crate::error::Result;
use crate::fincat::FinCategory;
use crate::report::ValidationReport;

use super::{Convolution, DayStructure, DayTarget};

/// A diagram `K -> Fun(C, T)`: a functor per object of the shape and a
/// natural transformation per morphism.
#[derive(Clone, Debug)]
pub struct FunctorDiagram<T: DayTarget> {
    pub shape: Arc<FinCategory>,
    pub functors: Vec<TargetFunctor<T>>,
    pub maps: Vec<Vec<T::Mor>>,
}

impl<T: DayTarget> FunctorDiagram<T> {
    pub fn validate(&self, t: &T) -> ValidationReport {
        let k = &self.shape;
        let mut report = ValidationReport::new();
        if self.functors.len() != k.num_objects() || self.maps.len() != k.num_morphisms() {
            report.structural("diagram-arity", "functor or map count does not match the shape");
            return report;
        }
        for (i, f) in self.functors.iter().enumerate() {
            report.extend(validate_target_functor(t, f).prefixed(&format!("functor {i}")));
        }
        for m in k.morphisms() {
            let (a, b) = (k.source(m), k.target(m));
            report.extend(
                validate_target_nat(t, &self.functors[a], &self.functors[b], &self.maps[m])
                    .prefixed(&format!("map {}", k.mor_label(m))),
            );
        }
        if !report.is_empty() {
            return report;
        }
        for a in k.objects() {
            if self.maps[k.identity(a)] != identity_nat(t, &self.functors[a]) {
                report.violation("diagram-identity", k.obj_label(a).to_string());
            }
        }
        for g in k.morphisms() {
            for &f in k.incoming(k.source(g)) {
                if self.maps[k.comp(g, f)] != compose_nat(t, &self.maps[g], &self.maps[f]) {
                    report.violation("diagram-composition", format!("{} ∘ {}", k.mor_label(g), k.mor_label(f)));
                }
            }
        }
        report
    }
}

/// The pointwise colimit of a diagram of functors, with its legs.
pub fn functor_colimit<T: DayTarget>(t: &T, d: &FunctorDiagram<T>, base: &Arc<FinCategory>) -> Result<(TargetFunctor<T>, Vec<Vec<T::Mor>>)> {
    let k = &d.shape;
    let mut diagrams = Vec::with_capacity(base.num_objects());
    let mut colims = Vec::with_capacity(base.num_objects());
    for x in base.objects() {
        let dx = TargetFunctor::new(
            k.clone(),
            d.functors.iter().map(|f| f.obj[x].clone()).collect(),
            d.maps.iter().map(|a| a[x].clone()).collect(),
        );
        colims.push(t.colimit(&dx)?);
        diagrams.push(dx);
    }
    let obj: Vec<T::Obj> = colims.iter().map(|c| c.apex.clone()).collect();
    let mut mor = Vec::with_capacity(base.num_morphisms());
    for beta in base.morphisms() {
        let (x, y) = (base.source(beta), base.target(beta));
        let legs: Vec<T::Mor> = k
            .objects()
            .map(|a| t.compose(&colims[y].legs[a], &d.functors[a].mor[beta]))
            .collect();
        mor.push(t.mediate(&diagrams[x], &colims[x], &legs, &obj[y])?);
    }
    let legs = k
        .objects()
        .map(|a| base.objects().map(|x| colims[x].legs[a].clone()).collect())
        .collect();
    Ok((TargetFunctor::new(base.clone(), obj, mor), legs))
}

/// `colim(d) ⊛ G ≅ colim(d ⊛ G)` and `G ⊛ colim(d) ≅ colim(G ⊛ d)`, each
/// decided by natural isomorphism search.
pub fn check_bilinearity<T: DayTarget>(
    day: &DayStructure<T>,
    d: &FunctorDiagram<T>,
    g: &TargetFunctor<T>,
) -> Result<ValidationReport> {
    let t = &day.target;
    let base = day.base();
    let mut report = d.validate(t);
    report.extend(validate_target_functor(t, g).prefixed("G"));
    if !report.is_empty() {
        return Ok(report);
    }
    let (colim, _) = functor_colimit(t, d, base)?;
    let id_g = identity_nat(t, g);
    for (side, on_left) in [("left-variable", true), ("right-variable", false)] {
        let pair = |f: &TargetFunctor<T>| -> Result<Convolution<T>> {
            if on_left {
                day.convolve(&[f, g])
            } else {
                day.convolve(&[g, f])
            }
        };
        let lhs = pair(&colim)?;
        let convs = d.functors.iter().map(pair).collect::<Result<Vec<_>>>()?;
        let mut maps = Vec::with_capacity(d.shape.num_morphisms());
        for m in d.shape.morphisms() {
            let (a, b) = (d.shape.source(m), d.shape.target(m));
            let alphas: [&[T::Mor]; 2] = if on_left { [&d.maps[m], &id_g] } else { [&id_g, &d.maps[m]] };
            maps.push(day.tensor_map(&convs[a], &convs[b], &alphas)?);
        }
        let image = FunctorDiagram {
            shape: d.shape.clone(),
            functors: convs.iter().map(|c| c.functor().clone()).collect(),
            maps,
        };
        let (rhs, _) = functor_colimit(t, &image, base)?;
        match t.find_natural_iso(lhs.functor(), &rhs)? {
            Some(_) => {}
            None => report.violation(
                side,
                format!(
                    "convolution of the colimit {:?} differs from the colimit of convolutions {:?}",
                    lhs.functor().obj,
                    rhs.obj
                ),
            ),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocomplete::{FinFn, FinSet, Target};
    use crate::fincat::{discrete_category, poset_category};
    use crate::monoidal::corpus;

    fn graded(c: &Arc<FinCategory>, sizes: &[usize]) -> TargetFunctor<FinSet> {
        let t = FinSet::default();
        TargetFunctor::new(c.clone(), sizes.to_vec(), sizes.iter().map(|s| t.identity(s)).collect())
    }

    fn convolution_sizes(f: &[usize], g: &[usize]) -> Vec<usize> {
        let mut out = vec![0; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[(i + j) % 2] += f[i] * g[j];
            }
        }
        out
    }

    // number of classes of b ⊔ c under f(x) ~ g(x)
    fn pushout_size(b: usize, c: usize, f: &[usize], g: &[usize]) -> usize {
        let mut parent: Vec<usize> = (0..b + c).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (&x, &y) in f.iter().zip(g) {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, b + y));
            parent[rx] = ry;
        }
        (0..b + c).filter(|&x| find(&mut parent, x) == x).count()
    }

    fn gs(c: &Arc<FinCategory>) -> Vec<TargetFunctor<FinSet>> {
        vec![graded(c, &[1, 0]), graded(c, &[2, 3]), graded(c, &[0, 2])]
    }

    fn check_all(d: &FunctorDiagram<FinSet>, expected_colim: &[usize]) {
        let day = DayStructure::new(&corpus::z2(), FinSet::default()).unwrap();
        let c = day.base().clone();
        let (colim, _) = functor_colimit(&day.target, d, &c).unwrap();
        assert_eq!(colim.obj, expected_colim);
        for g in gs(&c) {
            let report = check_bilinearity(&day, d, &g).unwrap();
            assert!(report.is_empty(), "{report}");
            let lhs = day.day_tensor(&colim, &g).unwrap();
            assert_eq!(lhs.obj, convolution_sizes(expected_colim, &g.obj));
        }
    }

    #[test]
    fn empty_diagram_gives_initial() {
        let d = FunctorDiagram::<FinSet> {
            shape: Arc::new(discrete_category("empty", 0)),
            functors: vec![],
            maps: vec![],
        };
        assert!(d.validate(&FinSet::default()).is_empty());
        check_all(&d, &[0, 0]);
    }

    #[test]
    fn coproduct_diagram() {
        let day = DayStructure::new(&corpus::z2(), FinSet::default()).unwrap();
        let c = day.base().clone();
        let (a, b) = (graded(&c, &[2, 1]), graded(&c, &[1, 3]));
        let t = FinSet::default();
        let d = FunctorDiagram {
            shape: Arc::new(discrete_category("two", 2)),
            maps: vec![identity_nat(&t, &a), identity_nat(&t, &b)],
            functors: vec![a, b],
        };
        check_all(&d, &[3, 4]);
    }

    #[test]
    fn pushout_diagram() {
        let day = DayStructure::new(&corpus::z2(), FinSet::default()).unwrap();
        let c = day.base().clone();
        let t = FinSet::default();
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let shape = Arc::new(poset_category("span", &labels, |i, j| i == j || i == 0));
        let (fa, fb, fc) = (graded(&c, &[2, 1]), graded(&c, &[2, 2]), graded(&c, &[1, 3]));
        // a -> b injective in both grades; a -> c collapses grade 0
        let ab = vec![FinFn::new(2, vec![0, 1]), FinFn::new(2, vec![1])];
        let ac = vec![FinFn::new(1, vec![0, 0]), FinFn::new(3, vec![2])];
        let mut maps = vec![Vec::new(); shape.num_morphisms()];
        for m in shape.morphisms() {
            maps[m] = match (shape.source(m), shape.target(m)) {
                (0, 0) => identity_nat(&t, &fa),
                (1, 1) => identity_nat(&t, &fb),
                (2, 2) => identity_nat(&t, &fc),
                (0, 1) => ab.clone(),
                (0, 2) => ac.clone(),
                _ => unreachable!(),
            };
        }
        let expected = vec![
            pushout_size(2, 1, &ab[0].map, &ac[0].map),
            pushout_size(2, 3, &ab[1].map, &ac[1].map),
        ];
        let d = FunctorDiagram { shape, functors: vec![fa, fb, fc], maps };
        assert!(d.validate(&t).is_empty());
        check_all(&d, &expected);
    }

    #[test]
    fn broken_diagram_is_reported() {
        let day = DayStructure::new(&corpus::z2(), FinSet::default()).unwrap();
        let c = day.base().clone();
        let f = graded(&c, &[1, 1]);
        let d = FunctorDiagram {
            shape: Arc::new(discrete_category("two", 2)),
            functors: vec![f.clone()],
            maps: vec![],
        };
        let report = check_bilinearity(&day, &d, &f).unwrap();
        assert!(report.has_structural());
    }
}
