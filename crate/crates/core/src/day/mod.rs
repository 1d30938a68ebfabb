//! Day convolution on functor categories `Fun(C, T)`.
//!
//! `(F ⊛ G)(x) = colim_{(a, b, φ : a⊗b -> x)} F(a) ⊗ G(b)`: the left Kan
//! extension of the external product `⊗_T ∘ (F × G)` along the tensor of
//! `C`. More generally the `k`-fold convolution is the left Kan extension of
//! the `k`-fold external product along the left-associated `k`-fold tensor;
//! `k = 0` gives the unit, the extension of the monoidal unit of `T` along
//! `I : 1 -> C`.
//!
//! The structure maps (symmetry, associator, left unitor) are produced by
//! mediating out of the colimits that define the convolutions, using that
//! `⊗_T` preserves colimits in each variable.

pub mod bilinear;
pub mod generated;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::cocomplete::{
    left_kan_extension, CocompleteTarget, Colimit, Diagram, FinFn, FinSet, KanExtension, MonoidalTarget,
    TargetFunctor,
};
use crate::error::{Error, Result};
use crate::fincat::{decode_tuple, encode_tuple, FinCategory, Functor, ObjId};
use crate::monoidal::{validate_monoidal, SymMonoidalStructure};

pub use bilinear::{check_bilinearity, functor_colimit, FunctorDiagram};
pub use generated::{build_day_fibration, check_pushforward_is_kan, generate_day_category, DayCategory, DayFibration};

/// A cocomplete target with a tensor that preserves colimits in each
/// variable.
pub trait DayTarget: CocompleteTarget + MonoidalTarget {}

impl<T: CocompleteTarget + MonoidalTarget> DayTarget for T {}

/// A `k`-fold convolution together with its defining Kan extension.
#[derive(Clone, Debug)]
pub struct Convolution<T: DayTarget> {
    pub factors: Vec<TargetFunctor<T>>,
    pub kan: KanExtension<T>,
}

impl<T: DayTarget> Convolution<T> {
    pub fn functor(&self) -> &TargetFunctor<T> {
        &self.kan.functor
    }
}

pub struct DayStructure<T: DayTarget> {
    pub monoidal: Arc<SymMonoidalStructure>,
    pub target: T,
    powers: RwLock<HashMap<usize, Arc<Functor>>>,
}

impl<T: DayTarget + std::fmt::Debug> std::fmt::Debug for DayStructure<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DayStructure")
            .field("monoidal", &self.monoidal.name)
            .field("target", &self.target)
            .finish()
    }
}

impl<T: DayTarget> DayStructure<T> {
    pub fn new(m: &SymMonoidalStructure, target: T) -> Result<Self> {
        let report = validate_monoidal(m);
        if !report.is_empty() {
            return Err(Error::invalid(format!("monoidal structure {}", m.name), report.to_string()));
        }
        Ok(Self {
            monoidal: Arc::new(m.clone()),
            target,
            powers: RwLock::new(HashMap::new()),
        })
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.monoidal.base
    }

    /// The `k`-fold tensor `C^k -> C` (memoized).
    pub fn tensor_power(&self, k: usize) -> Arc<Functor> {
        if let Some(p) = self.powers.read().unwrap().get(&k) {
            return p.clone();
        }
        let p = Arc::new(self.monoidal.tensor_power_functor(k));
        self.powers.write().unwrap().entry(k).or_insert(p).clone()
    }

    /// `(a_1, …, a_k) ↦ F_1(a_1) ⊗ … ⊗ F_k(a_k)` on `C^k`.
    pub fn external_product(&self, fs: &[&TargetFunctor<T>]) -> Result<TargetFunctor<T>> {
        let t = &self.target;
        let c = self.base();
        let power = self.tensor_power(fs.len()).source.clone();
        let (n, nm) = (c.num_objects(), c.num_morphisms());
        let mut obj = Vec::with_capacity(power.num_objects());
        for x in power.objects() {
            let xs = decode_tuple(x, n, fs.len());
            let vals: Vec<T::Obj> = fs.iter().zip(&xs).map(|(f, &a)| f.obj[a].clone()).collect();
            obj.push(t.tensor_all(&vals)?);
        }
        let mut mor = Vec::with_capacity(power.num_morphisms());
        for m in power.morphisms() {
            let ms = decode_tuple(m, nm, fs.len());
            let vals: Vec<T::Mor> = fs.iter().zip(&ms).map(|(f, &u)| f.mor[u].clone()).collect();
            mor.push(t.tensor_all_mor(&vals)?);
        }
        Ok(TargetFunctor::new(power, obj, mor))
    }

    /// The external product of natural transformations, componentwise.
    pub fn external_nat(&self, alphas: &[&[T::Mor]]) -> Result<Vec<T::Mor>> {
        let power = self.tensor_power(alphas.len()).source.clone();
        let n = self.base().num_objects();
        power
            .objects()
            .map(|x| {
                let xs = decode_tuple(x, n, alphas.len());
                let comps: Vec<T::Mor> = alphas.iter().zip(&xs).map(|(a, &i)| a[i].clone()).collect();
                self.target.tensor_all_mor(&comps)
            })
            .collect()
    }

    /// `F_1 ⊛ … ⊛ F_k`, computed in one step as a Kan extension along the
    /// `k`-fold tensor.
    pub fn convolve(&self, fs: &[&TargetFunctor<T>]) -> Result<Convolution<T>> {
        for f in fs {
            if !f.source.same_tables(self.base()) {
                return Err(Error::invalid("Day convolution", "factor is not a functor out of the base"));
            }
        }
        let ext = self.external_product(fs)?;
        let kan = left_kan_extension(&self.target, &ext, &self.tensor_power(fs.len()))?;
        Ok(Convolution {
            factors: fs.iter().map(|f| (*f).clone()).collect(),
            kan,
        })
    }

    pub fn day_tensor(&self, f: &TargetFunctor<T>, g: &TargetFunctor<T>) -> Result<TargetFunctor<T>> {
        Ok(self.convolve(&[f, g])?.kan.functor)
    }

    pub fn day_unit(&self) -> Result<TargetFunctor<T>> {
        Ok(self.convolve(&[])?.kan.functor)
    }

    /// `α_1 ⊛ … ⊛ α_k : from -> to`.
    pub fn tensor_map(&self, from: &Convolution<T>, to: &Convolution<T>, alphas: &[&[T::Mor]]) -> Result<Vec<T::Mor>> {
        let theta = self.external_nat(alphas)?;
        crate::cocomplete::lan_map(&self.target, &from.kan, &to.kan, &theta)
    }

    /// `F ⊛ G ⇒ G ⊛ F`, given both binary convolutions.
    pub fn symmetry(&self, fg: &Convolution<T>, gf: &Convolution<T>) -> Result<Vec<T::Mor>> {
        let (t, m, c) = (&self.target, &self.monoidal, self.base());
        let (f, g) = (&fg.factors[0], &fg.factors[1]);
        let n = c.num_objects();
        let mut out = Vec::with_capacity(n);
        for x in c.objects() {
            let mut legs = Vec::with_capacity(fg.kan.commas[x].objects.len());
            for &(y, phi) in &fg.kan.commas[x].objects {
                let (a, b) = (y / n, y % n);
                let leg = gf
                    .kan
                    .leg(x, encode_tuple(&[b, a], n), c.comp(phi, m.sigma(b, a)))
                    .expect("swapped comma object exists");
                legs.push(t.compose(leg, &t.symmetry(&f.obj[a], &g.obj[b])?));
            }
            out.push(fg.kan.mediate(t, x, &legs, gf.kan.value(x))?);
        }
        Ok(out)
    }

    /// `(F ⊛ G) ⊛ H ⇒ F ⊛ (G ⊛ H)` from the four binary convolutions
    /// `fg = F⊛G`, `fg_h = (F⊛G)⊛H`, `gh = G⊛H`, `f_gh = F⊛(G⊛H)`.
    pub fn associator(
        &self,
        fg: &Convolution<T>,
        fg_h: &Convolution<T>,
        gh: &Convolution<T>,
        f_gh: &Convolution<T>,
    ) -> Result<Vec<T::Mor>> {
        let (t, m, c) = (&self.target, &self.monoidal, self.base());
        let (f, g, h) = (&fg.factors[0], &fg.factors[1], &fg_h.factors[1]);
        let n = c.num_objects();
        let mut out = Vec::with_capacity(n);
        for x in c.objects() {
            let z = f_gh.kan.value(x);
            let mut legs = Vec::with_capacity(fg_h.kan.commas[x].objects.len());
            for &(y, psi) in &fg_h.kan.commas[x].objects {
                let (cc, hh) = (y / n, y % n);
                let mut inner = Vec::with_capacity(fg.kan.commas[cc].objects.len());
                for &(y2, phi) in &fg.kan.commas[cc].objects {
                    let (a, b) = (y2 / n, y2 % n);
                    let bh = m.tensor_obj(b, hh);
                    let assoc_inv = c.inverse(m.assoc(a, b, hh)).expect("associator is invertible");
                    let to_x = c.chain(&[psi, m.tensor_mor(phi, m.id(hh)), assoc_inv]);
                    let outer = f_gh
                        .kan
                        .leg(x, encode_tuple(&[a, bh], n), to_x)
                        .expect("comma object exists");
                    let gh_leg = gh
                        .kan
                        .leg(bh, encode_tuple(&[b, hh], n), m.id(bh))
                        .expect("(b, h, id) lies in the comma category");
                    let (fa, gb, hv) = (&f.obj[a], &g.obj[b], &h.obj[hh]);
                    let mid = t.tensor_mor(&t.identity(fa), gh_leg)?;
                    inner.push(t.compose(outer, &t.compose(&mid, &t.associator(fa, gb, hv)?)));
                }
                legs.push(mediate_tensored(
                    t,
                    &fg.kan.diagrams[cc],
                    &fg.kan.colimits[cc],
                    &h.obj[hh],
                    &inner,
                    z,
                )?);
            }
            out.push(fg_h.kan.mediate(t, x, &legs, z)?);
        }
        Ok(out)
    }

    /// `U ⊛ F ⇒ F`, from the unit convolution `u` and `uf = U ⊛ F`.
    pub fn left_unitor(&self, u: &Convolution<T>, uf: &Convolution<T>) -> Result<Vec<T::Mor>> {
        let (t, m, c) = (&self.target, &self.monoidal, self.base());
        let f = &uf.factors[1];
        let n = c.num_objects();
        let mut out = Vec::with_capacity(n);
        for x in c.objects() {
            let mut legs = Vec::with_capacity(uf.kan.commas[x].objects.len());
            for &(y, phi) in &uf.kan.commas[x].objects {
                let (i, a) = (y / n, y % n);
                let lambda_inv = c.inverse(m.lambda(a)).expect("unitor is invertible");
                let lu = t.left_unitor(&f.obj[a])?;
                let inner: Vec<T::Mor> = u.kan.commas[i]
                    .objects
                    .iter()
                    .map(|&(_, psi)| {
                        let to_x = c.chain(&[phi, m.tensor_mor(psi, m.id(a)), lambda_inv]);
                        t.compose(&f.mor[to_x], &lu)
                    })
                    .collect();
                legs.push(mediate_tensored(
                    t,
                    &u.kan.diagrams[i],
                    &u.kan.colimits[i],
                    &f.obj[a],
                    &inner,
                    &f.obj[x],
                )?);
            }
            out.push(uf.kan.mediate(t, x, &legs, &f.obj[x])?);
        }
        Ok(out)
    }
}

/// The map `colim(D) ⊗ y -> z` whose restriction along `leg_k ⊗ y` is
/// `legs[k]`.
fn mediate_tensored<T: DayTarget>(
    t: &T,
    d: &Diagram<T>,
    c: &Colimit<T>,
    y: &T::Obj,
    legs: &[T::Mor],
    z: &T::Obj,
) -> Result<T::Mor> {
    let idy = t.identity(y);
    let obj = d.obj.iter().map(|x| t.tensor(x, y)).collect::<Result<Vec<_>>>()?;
    let mor = d.mor.iter().map(|m| t.tensor_mor(m, &idy)).collect::<Result<Vec<_>>>()?;
    let dy = TargetFunctor::new(d.source.clone(), obj, mor);
    let cy = t.colimit(&dy)?;
    let comparison_legs = c.legs.iter().map(|l| t.tensor_mor(l, &idy)).collect::<Result<Vec<_>>>()?;
    let comparison = t.mediate(&dy, &cy, &comparison_legs, &t.tensor(&c.apex, y)?)?;
    let inv = t
        .inverse(&comparison)
        .ok_or_else(|| Error::invalid(t.name(), "tensor does not preserve a colimit"))?;
    Ok(t.compose(&t.mediate(&dy, &cy, legs, z)?, &inv))
}

/// The covariant representable `hom_C(x, -)`, with `hom(x, b)` numbered
/// in the order of [`FinCategory::hom`].
pub fn representable(c: &Arc<FinCategory>, x: ObjId) -> TargetFunctor<FinSet> {
    let pos = |b: ObjId, phi| c.hom(x, b).iter().position(|&p| p == phi).expect("morphism in hom-set");
    let obj = c.objects().map(|b| c.hom(x, b).len()).collect();
    let mor = c
        .morphisms()
        .map(|beta| {
            let (b, b2) = (c.source(beta), c.target(beta));
            FinFn::new(
                c.hom(x, b2).len(),
                c.hom(x, b).iter().map(|&phi| pos(b2, c.comp(beta, phi))).collect(),
            )
        })
        .collect();
    TargetFunctor::new(c.clone(), obj, mor)
}

/// Every representable `y<label>` followed by the initial functor `0`.
pub fn basic_generators(day: &DayStructure<FinSet>) -> Vec<(String, TargetFunctor<FinSet>)> {
    let c = day.base();
    let mut gens: Vec<_> = c.objects().map(|x| (format!("y{}", c.obj_label(x)), representable(c, x))).collect();
    gens.push(("0".to_string(), initial_functor(&day.target, c)));
    gens
}

/// The functor constant at the initial object.
pub fn initial_functor<T: CocompleteTarget>(t: &T, c: &Arc<FinCategory>) -> TargetFunctor<T> {
    TargetFunctor::constant(t, c.clone(), t.initial())
}
