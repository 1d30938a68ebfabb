//! The tensor fibration `C^⊗ -> F` of a symmetric monoidal category.
//!
//! Objects over `⟨n⟩` are tuples `(X_1, …, X_n)` of objects of `C`. A
//! morphism over `f : ⟨m⟩ -> ⟨n⟩` from `X` to `Y` is a tuple of morphisms
//! `φ_t : nf(X_{f⁻¹(t)}) -> Y_t`, `t = 1..n`, where `nf` is the
//! left-associated tensor in increasing index order. Composition inserts the
//! canonical coherence map that regroups the leaves.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{decode_tuple, encode_tuple, CategoryBuilder, Functor, MorId, ObjId};
use crate::monoidal::{validate_monoidal, Coherence, PointedSkeleton, SymMonoidalStructure};

use super::GrothFibration;

#[derive(Clone, Debug)]
pub struct TensorFibration {
    pub monoidal: Arc<SymMonoidalStructure>,
    pub skeleton: PointedSkeleton,
    pub fibration: GrothFibration,
    offsets: Vec<usize>,
    components: Vec<Vec<MorId>>,
    mor_index: HashMap<(ObjId, MorId, Vec<MorId>), MorId>,
}

fn product_of<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(choices.len())];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|p| {
                c.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

impl TensorFibration {
    pub fn object(&self, tuple: &[ObjId]) -> ObjId {
        self.offsets[tuple.len()] + encode_tuple(tuple, self.monoidal.n())
    }

    pub fn tuple(&self, x: ObjId) -> Vec<ObjId> {
        let n = self.arity(x);
        decode_tuple(x - self.offsets[n], self.monoidal.n(), n)
    }

    pub fn arity(&self, x: ObjId) -> usize {
        self.offsets.partition_point(|&o| o <= x) - 1
    }

    /// The components `φ_t` of a morphism.
    pub fn components(&self, m: MorId) -> &[MorId] {
        &self.components[m]
    }

    /// The morphism from `x` over `f` with the given components.
    pub fn morphism(&self, x: ObjId, f: MorId, comps: &[MorId]) -> Option<MorId> {
        self.mor_index.get(&(x, f, comps.to_vec())).copied()
    }

    /// The normal-form lift of `f` at `x`: identity components onto the
    /// left-associated tensors of the fibers of `f`.
    pub fn canonical_lift(&self, x: ObjId, f: MorId) -> MorId {
        self.fibration
            .chosen_lift(x, f)
            .expect("every (object, arrow) pair has a chosen lift")
    }
}

/// Build `C^⊗` over `⟨0⟩, …, ⟨max_n⟩`.
pub fn build_tensor_fibration(m: &SymMonoidalStructure, skeleton: &PointedSkeleton) -> Result<TensorFibration> {
    let report = validate_monoidal(m);
    if !report.is_empty() {
        return Err(Error::invalid(format!("monoidal structure {}", m.name), report.to_string()));
    }
    let c = &m.base;
    let k = c.num_objects();
    let s = skeleton;
    let f_cat = &s.category;
    let max_n = s.max_n;

    let mut offsets = Vec::with_capacity(max_n + 2);
    let mut acc = 0;
    for n in 0..=max_n {
        offsets.push(acc);
        acc += k.pow(n as u32);
    }
    offsets.push(acc);

    let mut b = CategoryBuilder::new(format!("{}^⊗", m.name));
    let mut obj_arity = Vec::with_capacity(acc);
    let mut tuples = Vec::with_capacity(acc);
    for n in 0..=max_n {
        for code in 0..k.pow(n as u32) {
            let tuple = decode_tuple(code, k, n);
            let label: Vec<&str> = tuple.iter().map(|&x| c.obj_label(x)).collect();
            b.add_object(format!("({})", label.join(",")));
            obj_arity.push(n);
            tuples.push(tuple);
        }
    }
    let object = |tuple: &[ObjId]| offsets[tuple.len()] + encode_tuple(tuple, k);

    let mut over = Vec::new();
    let mut components: Vec<Vec<MorId>> = Vec::new();
    let mut mor_index = HashMap::new();
    let mut chosen = HashMap::new();
    for x in 0..acc {
        let tx = &tuples[x];
        for &f in f_cat.outgoing(obj_arity[x]) {
            let n = f_cat.target(f);
            let sources: Vec<ObjId> = (1..=n)
                .map(|t| {
                    let group: Vec<ObjId> = s.preimage(f, t).iter().map(|&i| tx[i - 1]).collect();
                    m.nf_obj(&group)
                })
                .collect();
            let choices: Vec<Vec<MorId>> = sources.iter().map(|&a| c.outgoing(a).to_vec()).collect();
            for comps in product_of(&choices) {
                let ty: Vec<ObjId> = comps.iter().map(|&p| c.target(p)).collect();
                let parts: Vec<&str> = comps.iter().map(|&p| c.mor_label(p)).collect();
                let id = b.add_morphism(format!("{}{{{}}}", f_cat.mor_label(f), parts.join(",")), x, object(&ty));
                if comps.iter().zip(&sources).all(|(&p, &a)| p == c.identity(a)) {
                    chosen.insert((x, f), id);
                }
                over.push(f);
                mor_index.insert((x, f, comps.clone()), id);
                components.push(comps);
            }
        }
    }

    let identities = (0..acc)
        .map(|x| {
            let n = obj_arity[x];
            let comps: Vec<MorId> = tuples[x].iter().map(|&a| c.identity(a)).collect();
            mor_index[&(x, f_cat.identity(n), comps)]
        })
        .collect();
    let srcs: Vec<ObjId> = {
        let mut v = vec![0; components.len()];
        for (&(x, _, _), &id) in &mor_index {
            v[id] = x;
        }
        v
    };
    let mut coh = Coherence::new(m);
    let total = b.build(identities, |g, f| {
        let (fg, ff) = (over[g], over[f]);
        let gf = f_cat.comp(fg, ff);
        let x = srcs[f];
        let tx = &tuples[x];
        let p = f_cat.target(fg);
        let mut comps = Vec::with_capacity(p);
        for u in 1..=p {
            let flat_idx = s.preimage(gf, u);
            let flat: Vec<ObjId> = flat_idx.iter().map(|&i| tx[i - 1]).collect();
            let ts = s.preimage(fg, u);
            let groups: Vec<Vec<usize>> = ts
                .iter()
                .map(|&t| {
                    s.preimage(ff, t)
                        .iter()
                        .map(|i| flat_idx.iter().position(|j| j == i).expect("fiber of f inside fiber of g∘f"))
                        .collect()
                })
                .collect();
            let regroup = coh.regroup(&flat, &groups);
            let inner = m.nf_mor(&ts.iter().map(|&t| components[f][t - 1]).collect::<Vec<_>>());
            let psi = components[g][u - 1];
            comps.push(c.comp(psi, c.comp(inner, regroup)));
        }
        mor_index.get(&(x, gf, comps)).copied()
    })?;
    let total = Arc::new(total);
    let projection = Functor::new(total.clone(), f_cat.clone(), obj_arity, over);
    let fibration = GrothFibration::new(format!("{}^⊗", m.name), projection, Some(s.clone()), chosen);
    Ok(TensorFibration {
        monoidal: Arc::new(m.clone()),
        skeleton: s.clone(),
        fibration,
        offsets,
        components,
        mor_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{validate_category, validate_functor};
    use crate::grothendieck::{pullback_along, validate_cocartesian_fibration};
    use crate::monoidal::corpus;

    #[test]
    fn fibers_are_powers() {
        let s = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::z2(), &s).unwrap();
        let pi = &tf.fibration;
        assert!(validate_category(&pi.total).is_empty());
        assert!(validate_functor(&pi.projection).is_empty());
        let f0 = pi.fiber(0);
        assert_eq!(f0.category.num_objects(), 1);
        assert_eq!(f0.category.num_morphisms(), 1);
        let f2 = pi.fiber(2);
        assert_eq!(f2.category.num_objects(), 4);
        assert!(f2.category.is_discrete());
    }

    #[test]
    fn pushforward_along_multiplication_adds() {
        let s = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::z2(), &s).unwrap();
        let x = tf.object(&[1, 1]);
        let y = tf.fibration.pushforward_object(x, s.multiplication(2)).unwrap();
        assert_eq!(tf.tuple(y), vec![0]);
        let e = tf.canonical_lift(x, s.multiplication(2));
        assert!(tf.fibration.is_cocartesian_edge(e));
        assert!(tf.fibration.is_cocartesian_edge(tf.fibration.total.identity(x)));
    }

    #[test]
    fn non_universal_edge_over_multiplication() {
        let s = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::chain2(), &s).unwrap();
        let x = tf.object(&[0, 0]);
        let c = &tf.monoidal.base;
        let up = c.hom(0, 1)[0];
        let e = tf.morphism(x, s.multiplication(2), &[up]).unwrap();
        assert!(!tf.fibration.is_cocartesian_edge(e));
        let id = tf.canonical_lift(x, s.multiplication(2));
        assert!(tf.fibration.is_cocartesian_edge(id));
    }

    #[test]
    fn z2_and_divisors_are_cocartesian() {
        let s3 = PointedSkeleton::new(3);
        let tf = build_tensor_fibration(&corpus::z2(), &s3).unwrap();
        let r = validate_cocartesian_fibration(&tf.fibration);
        assert!(r.is_empty(), "{r}");
        let s2 = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::divisors12(), &s2).unwrap();
        assert!(validate_category(&tf.fibration.total).is_empty());
        let r = validate_cocartesian_fibration(&tf.fibration);
        assert!(r.is_empty(), "{r}");
    }

    #[test]
    fn super_signs_compose_coherently() {
        let tf = build_tensor_fibration(&corpus::super_z2(), &PointedSkeleton::new(2)).unwrap();
        assert!(validate_category(&tf.fibration.total).is_empty());
        let tf = build_tensor_fibration(&corpus::super_z2(), &PointedSkeleton::new(3)).unwrap();
        let r = validate_cocartesian_fibration(&tf.fibration);
        assert!(r.is_empty(), "{r}");
    }

    #[test]
    fn deleting_a_lift_is_reported() {
        let s = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::z2(), &s).unwrap();
        let pi = &tf.fibration;
        let x = tf.object(&[1, 0]);
        let mu = s.multiplication(2);
        pi.set_marking(tf.canonical_lift(x, mu), false);
        let r = validate_cocartesian_fibration(pi);
        assert!(r.mentions("lift-exists", &format!("({}, {})", pi.total.obj_label(x), pi.base.describe_mor(mu))), "{r}");
    }

    #[test]
    fn pullbacks() {
        let s = PointedSkeleton::new(2);
        let tf = build_tensor_fibration(&corpus::z3(), &s).unwrap();
        let pi = &tf.fibration;
        let id = Functor::identity(pi.base.clone());
        let same = pullback_along(pi, &id).unwrap();
        assert!(crate::fincat::find_isomorphism(&same.total, &pi.total).is_some());

        let point = Arc::new(crate::fincat::terminal_category());
        let incl = Functor::new(point, pi.base.clone(), vec![2], vec![pi.base.identity(2)]);
        let fib = pullback_along(pi, &incl).unwrap();
        assert_eq!(fib.total.num_objects(), 9);
        assert!(crate::fincat::find_isomorphism(&fib.total, &pi.fiber(2).category).is_some());

        // along the multiplication ⟨2⟩ -> ⟨1⟩: 9 + 3 objects, one edge per source
        let arrow = Arc::new(crate::fincat::walking_arrow());
        let mu = s.multiplication(2);
        let k = Functor::new(
            arrow.clone(),
            pi.base.clone(),
            vec![2, 1],
            vec![pi.base.identity(2), mu, pi.base.identity(1)],
        );
        let pf = pullback_along(pi, &k).unwrap();
        assert_eq!(pf.total.num_objects(), 12);
        let over_mu = pf.total.morphisms().filter(|&e| pf.projection.mor(e) == 1).count();
        assert_eq!(over_mu, 9);
        assert!(validate_cocartesian_fibration(&pf).is_empty());
    }
}
