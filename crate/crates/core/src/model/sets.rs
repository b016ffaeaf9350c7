use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{
    build_cat, check_category, check_functor, CafCategory, FinCategory, FunctorData,
};
use crate::iterset::{canonicalize, AtomTable, Bisim, VSet};
use crate::report::Report;
use crate::setoid::{mk_extfun, mk_family, ExtFun, FinSetoid, SetoidError, SetoidFamily};

use super::{
    compose_arrows_with, function_space, graph_gamma, kpair, rep_setoid, set_children, ModelError,
};

/// An arrow `⟨⟨a,b⟩, graph(map)⟩` between slice positions `dom` and `cod`.
#[derive(Debug, Clone)]
pub struct VArrow {
    pub dom: usize,
    pub cod: usize,
    pub map: ExtFun,
    pub set: VSet,
}

/// The category of sets restricted to a slice of objects.
#[derive(Debug, Clone)]
pub struct VCategory {
    pub cat: FinCategory,
    pub objects: Vec<VSet>,
    pub arrows: Vec<VArrow>,
    /// Composable pairs as (first, second) arrow positions.
    pub pairs: Vec<(usize, usize)>,
    arrow_keys: HashMap<String, usize>,
    pair_keys: HashMap<String, usize>,
}

impl VCategory {
    /// Some arrow equal to the set with canonical form `key`.
    pub fn arrow_by_key(&self, key: &str) -> Option<usize> {
        self.arrow_keys.get(key).copied()
    }

    pub fn pair_by_key(&self, key: &str) -> Option<usize> {
        self.pair_keys.get(key).copied()
    }
}

fn key(table: &AtomTable, x: &VSet) -> String {
    canonicalize(table, x).into_string()
}

fn ext(
    d: &Arc<crate::setoid::Partition>,
    c: &Arc<crate::setoid::Partition>,
    m: Vec<usize>,
) -> Result<ExtFun, SetoidError> {
    ExtFun::new(Arc::clone(d), Arc::clone(c), m)
}

pub fn build_v_category(table: &AtomTable, slice: &[VSet]) -> Result<VCategory, ModelError> {
    for o in slice {
        set_children(o)?;
    }
    let n = slice.len();
    let okeys: Vec<String> = slice.iter().map(|o| key(table, o)).collect();
    let c0 = FinSetoid::from_key((0..n).collect::<Vec<_>>(), |&i| okeys[i].clone())
        .map_carrier(|&i| slice[i].to_string());

    let mut arrows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let fs = function_space(table, &slice[a], &slice[b])?;
            let ab = kpair(&slice[a], &slice[b]);
            for (map, graph) in fs.maps.into_iter().zip(fs.graphs) {
                arrows.push(VArrow {
                    dom: a,
                    cod: b,
                    map,
                    set: kpair(&ab, &graph),
                });
            }
        }
    }
    let akeys: Vec<String> = arrows.iter().map(|a| key(table, &a.set)).collect();
    let mut arrow_keys = HashMap::new();
    for (i, k) in akeys.iter().enumerate() {
        arrow_keys.entry(k.clone()).or_insert(i);
    }
    let c1 = FinSetoid::from_key(akeys.clone(), |k| k.clone());

    let mut exact: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for (i, a) in arrows.iter().enumerate() {
        exact.insert((a.dom, a.cod, a.map.map().to_vec()), i);
    }
    let id_map: Vec<usize> = (0..n)
        .map(|x| {
            let len = slice[x].children().map_or(0, <[VSet]>::len);
            exact[&(x, x, (0..len).collect::<Vec<_>>())]
        })
        .collect();

    let mut pairs = Vec::new();
    for (h, u) in arrows.iter().enumerate() {
        for (k, v) in arrows.iter().enumerate() {
            if okeys[u.cod] == okeys[v.dom] {
                pairs.push((h, k));
            }
        }
    }
    let pkeys: Vec<String> = pairs
        .iter()
        .map(|&(h, k)| key(table, &kpair(&arrows[h].set, &arrows[k].set)))
        .collect();
    let mut pair_keys = HashMap::new();
    for (i, k) in pkeys.iter().enumerate() {
        pair_keys.entry(k.clone()).or_insert(i);
    }
    let c2 = FinSetoid::from_key(pkeys.clone(), |k| k.clone());

    let mut bisim = Bisim::new(table);
    let mut cmp_map = Vec::with_capacity(pairs.len());
    for &(h, k) in &pairs {
        let w = compose_arrows_with(&mut bisim, &arrows[h].set, &arrows[k].set)?;
        let wk = key(table, &w);
        cmp_map.push(*arrow_keys.get(&wk).ok_or(ModelError::MissingArrow(wk))?);
    }
    let dom_map = arrows.iter().map(|a| a.dom).collect();
    let cod_map = arrows.iter().map(|a| a.cod).collect();
    let fst_map = pairs.iter().map(|p| p.0).collect();
    let snd_map = pairs.iter().map(|p| p.1).collect();

    let (p0, p1, p2) = (
        c0.partition().clone(),
        c1.partition().clone(),
        c2.partition().clone(),
    );
    let cat = FinCategory::new(
        c0,
        c1,
        c2,
        ext(&p0, &p1, id_map)?,
        ext(&p1, &p0, dom_map)?,
        ext(&p1, &p0, cod_map)?,
        ext(&p2, &p1, cmp_map)?,
        ext(&p2, &p1, fst_map)?,
        ext(&p2, &p1, snd_map)?,
    )?;
    Ok(VCategory {
        cat,
        objects: slice.to_vec(),
        arrows,
        pairs,
        arrow_keys,
        pair_keys,
    })
}

/// `R̄` over a slice: fibers are child positions, transport sends a position
/// to the least equal position of the target.
pub fn rbar_family(
    table: &AtomTable,
    slice: &[VSet],
) -> Result<SetoidFamily<VSet, VSet>, ModelError> {
    let index = FinSetoid::from_key(slice.to_vec(), |o| key(table, o));
    let fibers = slice
        .iter()
        .map(|o| rep_setoid(table, o))
        .collect::<Result<Vec<_>, _>>()?;
    let child_keys: Vec<Vec<String>> = fibers
        .iter()
        .map(|f| f.carrier().iter().map(|c| key(table, c)).collect())
        .collect();
    let mut transports = HashMap::new();
    for x in 0..slice.len() {
        for y in 0..slice.len() {
            if !index.eq(x, y) {
                continue;
            }
            let map = child_keys[x]
                .iter()
                .map(|k| {
                    child_keys[y]
                        .iter()
                        .position(|k2| k2 == k)
                        .ok_or(SetoidError::NotEqual(x, y))
                })
                .collect::<Result<Vec<_>, _>>()?;
            transports.insert((x, y), mk_extfun(&fibers[x], &fibers[y], map)?);
        }
    }
    Ok(mk_family(index, fibers, transports)?)
}

/// The comparison functor from the category of `R̄` to the category of sets.
pub struct IsoFunctor {
    pub family: CafCategory,
    pub sets: VCategory,
    pub f0: ExtFun,
    pub f1: ExtFun,
    pub f2: ExtFun,
}

impl IsoFunctor {
    pub fn data(&self) -> FunctorData<'_> {
        FunctorData {
            source: &self.family.cat,
            target: &self.sets.cat,
            f0: self.f0.clone(),
            f1: self.f1.clone(),
            f2: self.f2.clone(),
        }
    }
}

/// Identity on objects, `(a,b,h) ↦ ⟨⟨a,b⟩, γ(h)⟩` on arrows, componentwise
/// on composable pairs.
pub fn iso_functor(table: &AtomTable, slice: &[VSet]) -> Result<IsoFunctor, ModelError> {
    let fam = rbar_family(table, slice)?;
    let family = build_cat(&fam)?;
    let sets = build_v_category(table, slice)?;
    let (s, t) = (&family.cat, &sets.cat);

    let f0 = ExtFun::new(
        s.objects().partition().clone(),
        t.objects().partition().clone(),
        (0..slice.len()).collect(),
    )?;
    let mut f1_map = Vec::with_capacity(family.arrows.len());
    let mut images = Vec::with_capacity(family.arrows.len());
    for a in &family.arrows {
        let (u, v) = (&slice[a.src], &slice[a.dst]);
        let w = kpair(&kpair(u, v), &graph_gamma(u, v, &a.fun)?);
        let wk = key(table, &w);
        f1_map.push(sets.arrow_by_key(&wk).ok_or(ModelError::MissingArrow(wk))?);
        images.push(w);
    }
    let mut f2_map = Vec::with_capacity(family.pairs.len());
    for &(h, k) in &family.pairs {
        let wk = key(table, &kpair(&images[h], &images[k]));
        f2_map.push(sets.pair_by_key(&wk).ok_or(ModelError::MissingArrow(wk))?);
    }
    let f1 = ExtFun::new(
        s.arrows().partition().clone(),
        t.arrows().partition().clone(),
        f1_map,
    )?;
    let f2 = ExtFun::new(
        s.pairs().partition().clone(),
        t.pairs().partition().clone(),
        f2_map,
    )?;
    Ok(IsoFunctor {
        family,
        sets,
        f0,
        f1,
        f2,
    })
}

fn summarize(r: &mut Report, name: &str, sub: &Report) {
    match sub.failures().next() {
        None => r.pass(name),
        Some(e) => r.fail(
            name,
            format!("{}: {}", e.name, e.detail.clone().unwrap_or_default()),
        ),
    }
}

fn bijective(r: &mut Report, name: &str, f: &ExtFun) {
    let detail = format!("{} classes", f.cod().class_count());
    match (f.is_injective(), f.is_surjective()) {
        (true, true) => r.push(name, crate::report::Status::Pass, Some(detail)),
        (false, _) => r.fail(name, "not injective on classes"),
        (_, false) => r.fail(name, "not surjective on classes"),
    }
}

/// Both categories, the functor equations, and bijectivity of each component.
pub fn check_main_iso(table: &AtomTable, slice: &[VSet]) -> Result<Report, ModelError> {
    let mut r = Report::new("isomorphism of the family category and the category of sets");
    let iso = match iso_functor(table, slice) {
        Ok(iso) => iso,
        Err(ModelError::Setoid(e @ SetoidError::NotExtensional { .. })) => {
            r.fail("functor components extensional", e.to_string());
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    summarize(
        &mut r,
        "family category axioms",
        &check_category(&iso.family.cat),
    );
    summarize(
        &mut r,
        "category of sets axioms",
        &check_category(&iso.sets.cat),
    );
    r.pass("functor components extensional");
    r.extend(check_functor(&iso.data()));
    bijective(&mut r, "F0 bijective", &iso.f0);
    bijective(&mut r, "F1 bijective", &iso.f1);
    bijective(&mut r, "F2 bijective", &iso.f2);
    Ok(r)
}
