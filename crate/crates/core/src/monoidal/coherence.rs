//! Canonical coherence isomorphisms between bracketings and orderings.
//!
//! Every word is compared through its normal form: the left-associated
//! tensor of its leaves with units removed (`nf([]) = I`). Maps are built
//! from associator, unitor and symmetry components and whiskered with
//! identities, so on a coherent structure the result depends only on the
//! underlying permutation of leaves.

use std::collections::HashMap;

use crate::fincat::{MorId, ObjId};

use super::SymMonoidalStructure;

pub struct Coherence<'a> {
    m: &'a SymMonoidalStructure,
    strict: bool,
    merge_cache: HashMap<(Vec<ObjId>, Vec<ObjId>), MorId>,
    regroup_cache: HashMap<(Vec<ObjId>, Vec<Vec<usize>>), MorId>,
    inverse_cache: HashMap<MorId, MorId>,
}

impl<'a> Coherence<'a> {
    pub fn new(m: &'a SymMonoidalStructure) -> Self {
        Self {
            m,
            strict: m.is_strict(),
            merge_cache: HashMap::new(),
            regroup_cache: HashMap::new(),
            inverse_cache: HashMap::new(),
        }
    }

    pub fn structure(&self) -> &SymMonoidalStructure {
        self.m
    }

    fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.m.base.comp(g, f)
    }

    fn inverse(&mut self, f: MorId) -> MorId {
        if let Some(&g) = self.inverse_cache.get(&f) {
            return g;
        }
        let g = self
            .m
            .base
            .inverse(f)
            .unwrap_or_else(|| panic!("coherence component {} is not invertible", self.m.base.describe_mor(f)));
        self.inverse_cache.insert(f, g);
        g
    }

    /// `nf(la) ⊗ nf(lb) -> nf(la ++ lb)`.
    pub fn merge(&mut self, la: &[ObjId], lb: &[ObjId]) -> MorId {
        let m = self.m;
        if self.strict {
            return m.id(m.nf_obj(&[la, lb].concat()));
        }
        let key = (la.to_vec(), lb.to_vec());
        if let Some(&f) = self.merge_cache.get(&key) {
            return f;
        }
        let p = m.nf_obj(la);
        let out = if lb.is_empty() {
            m.rho(p)
        } else if la.is_empty() {
            m.lambda(m.nf_obj(lb))
        } else if lb.len() == 1 {
            m.id(m.tensor_obj(p, lb[0]))
        } else {
            let (rest, last) = lb.split_at(lb.len() - 1);
            let y = last[0];
            let q = m.nf_obj(rest);
            let a_inv = self.inverse(m.assoc(p, q, y));
            let inner = self.merge(la, rest);
            self.comp(m.tensor_mor(inner, m.id(y)), a_inv)
        };
        self.merge_cache.insert(key, out);
        out
    }

    /// `nf([nf(g_1), …, nf(g_k)]) -> nf(g_1 ++ … ++ g_k)`.
    pub fn nested_to_flat(&mut self, groups: &[Vec<ObjId>]) -> MorId {
        let m = self.m;
        let flat: Vec<ObjId> = groups.concat();
        if self.strict || groups.is_empty() {
            return m.id(m.nf_obj(&flat));
        }
        let mut acc_list: Vec<ObjId> = groups[0].clone();
        let mut acc_map = m.id(m.nf_obj(&groups[0]));
        for g in &groups[1..] {
            let whiskered = m.tensor_mor(acc_map, m.id(m.nf_obj(g)));
            let merged = self.merge(&acc_list, g);
            acc_map = self.comp(merged, whiskered);
            acc_list.extend_from_slice(g);
        }
        acc_map
    }

    /// `nf(objs) -> nf(objs ∘ perm)`, i.e. onto `[objs[perm[0]], objs[perm[1]], …]`.
    pub fn permute(&mut self, objs: &[ObjId], perm: &[usize]) -> MorId {
        let m = self.m;
        debug_assert_eq!(objs.len(), perm.len());
        if self.strict {
            return m.id(m.nf_obj(objs));
        }
        // bubble sort the current arrangement towards `perm`
        let mut current: Vec<usize> = (0..objs.len()).collect();
        let rank: HashMap<usize, usize> = perm.iter().enumerate().map(|(pos, &i)| (i, pos)).collect();
        let mut acc = m.id(m.nf_obj(objs));
        let k = objs.len();
        loop {
            let mut swapped = false;
            for i in 0..k.saturating_sub(1) {
                if rank[&current[i]] > rank[&current[i + 1]] {
                    let words: Vec<ObjId> = current.iter().map(|&j| objs[j]).collect();
                    let step = self.adjacent_swap(&words, i);
                    acc = self.comp(step, acc);
                    current.swap(i, i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        acc
    }

    /// `nf(w) -> nf(w with positions i, i+1 exchanged)`.
    fn adjacent_swap(&mut self, w: &[ObjId], i: usize) -> MorId {
        let m = self.m;
        let (x, y) = (w[i], w[i + 1]);
        let mut step = if i == 0 {
            m.sigma(x, y)
        } else {
            let p = m.nf_obj(&w[..i]);
            let a = m.assoc(p, x, y);
            let swap_inner = m.tensor_mor(m.id(p), m.sigma(x, y));
            let a_back = self.inverse(m.assoc(p, y, x));
            self.comp(a_back, self.comp(swap_inner, a))
        };
        for &z in &w[i + 2..] {
            step = m.tensor_mor(step, m.id(z));
        }
        step
    }

    /// The canonical map `nf(flat) -> nf([nf(flat|g_1), …, nf(flat|g_k)])`
    /// where each group lists indices into `flat`; every index must appear in
    /// exactly one group.
    pub fn regroup(&mut self, flat: &[ObjId], groups: &[Vec<usize>]) -> MorId {
        let m = self.m;
        let grouped: Vec<Vec<ObjId>> = groups
            .iter()
            .map(|g| g.iter().map(|&i| flat[i]).collect())
            .collect();
        if self.strict {
            let target: Vec<ObjId> = grouped.iter().map(|g| m.nf_obj(g)).collect();
            return m.id(m.nf_obj(&target));
        }
        let key = (flat.to_vec(), groups.to_vec());
        if let Some(&f) = self.regroup_cache.get(&key) {
            return f;
        }
        let perm: Vec<usize> = groups.concat();
        let to_order = self.permute(flat, &perm);
        let n2f = self.nested_to_flat(&grouped);
        let f2n = self.inverse(n2f);
        let out = self.comp(f2n, to_order);
        self.regroup_cache.insert(key, out);
        out
    }
}
