//! Set-theoretic constructions over iterative sets, function sets, the
//! category of sets and its comparison with the category of the
//! representing family, and a bounded model check of CZF with atoms.

mod eval;
mod sets;
mod suite;

pub use eval::{eval_formula, eval_term, separation, Env, Evaluator};
pub use sets::{
    build_v_category, check_main_iso, iso_functor, rbar_family, IsoFunctor, VArrow, VCategory,
};
pub use suite::{
    czfu_suite, czfu_suite_with, universe, AtomMembership, SetStructure, Standard, SuiteConfig,
    UNIVERSE_CAP,
};

use std::collections::HashSet;

use thiserror::Error;

use crate::category::CategoryError;
use crate::iterset::{canonicalize, AtomTable, Bisim, IterSetError, VSet};
use crate::report::Report;
use crate::setoid::{count_extfuns, enum_extfuns, ext_eq, ExtFun, FinSetoid, SetoidError};

/// Largest number of functions `funcs` will enumerate.
pub const FUNCSET_CAP: u128 = 4096;
/// Largest number of distinct elements a power-set surrogate is built over.
pub const POWERSET_CAP: usize = 12;
/// Largest `n` accepted by `omega_approx`.
pub const OMEGA_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("not a set: {0}")]
    NotASet(String),
    #[error("not an ordered pair: {0}")]
    NotAPair(String),
    #[error("not an arrow: {0}")]
    NotAnArrow(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("arrows do not compose: codomain {0} differs from domain {1}")]
    NotComposable(String, String),
    #[error("{what} would have {size} elements, over the cap of {cap}")]
    SizeCap { what: String, size: u128, cap: u128 },
    #[error("composite {0} is missing from the slice")]
    MissingArrow(String),
    #[error(transparent)]
    IterSet(#[from] IterSetError),
    #[error(transparent)]
    Setoid(#[from] SetoidError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

pub(crate) fn set_children(x: &VSet) -> Result<&[VSet], ModelError> {
    x.children()
        .ok_or_else(|| ModelError::NotASet(x.to_string()))
}

fn key(table: &AtomTable, x: &VSet) -> String {
    canonicalize(table, x).into_string()
}

pub fn pair_set(x: &VSet, y: &VSet) -> VSet {
    VSet::sup(vec![x.clone(), y.clone()])
}

/// Elements of elements of `x`; atoms among the elements contribute nothing.
pub fn union_set(x: &VSet) -> Result<VSet, ModelError> {
    let mut out = Vec::new();
    for y in set_children(x)? {
        if let Some(zs) = y.children() {
            out.extend(zs.iter().cloned());
        }
    }
    Ok(VSet::sup(out))
}

/// `y⁺ = {y, {y}}`.
pub fn succ(y: &VSet) -> VSet {
    pair_set(y, &VSet::singleton(y.clone()))
}

/// `⟨x, y⟩ = {{x}, {x, y}}`.
pub fn kpair(x: &VSet, y: &VSet) -> VSet {
    pair_set(&VSet::singleton(x.clone()), &pair_set(x, y))
}

/// Children of `x` up to equality, keeping the first of each class.
fn distinct(b: &mut Bisim<'_>, xs: &[VSet]) -> Vec<VSet> {
    let mut out: Vec<VSet> = Vec::new();
    for x in xs {
        if !out.iter().any(|y| b.eq(x, y)) {
            out.push(x.clone());
        }
    }
    out
}

pub(crate) fn kproj_with(b: &mut Bisim<'_>, z: &VSet) -> Result<(VSet, VSet), ModelError> {
    let not_pair = || ModelError::NotAPair(z.to_string());
    let parts = distinct(b, z.children().ok_or_else(not_pair)?);
    let mut members = Vec::with_capacity(parts.len());
    for p in &parts {
        members.push(distinct(b, p.children().ok_or_else(not_pair)?));
    }
    match members.as_slice() {
        [only] if only.len() == 1 => Ok((only[0].clone(), only[0].clone())),
        [p, q] => {
            let (single, double) = match (p.len(), q.len()) {
                (1, 2) => (&p[0], q),
                (2, 1) => (&q[0], p),
                _ => return Err(not_pair()),
            };
            if b.eq(single, &double[0]) {
                Ok((single.clone(), double[1].clone()))
            } else if b.eq(single, &double[1]) {
                Ok((single.clone(), double[0].clone()))
            } else {
                Err(not_pair())
            }
        }
        _ => Err(not_pair()),
    }
}

/// Inverts [`kpair`] up to equality.
pub fn kproj(table: &AtomTable, z: &VSet) -> Result<(VSet, VSet), ModelError> {
    kproj_with(&mut Bisim::new(table), z)
}

pub(crate) fn total_functional_with(
    b: &mut Bisim<'_>,
    z: &VSet,
    u: &VSet,
    v: &VSet,
) -> Result<bool, ModelError> {
    let (zs, us, vs) = (set_children(z)?, set_children(u)?, set_children(v)?);
    let pairs: Vec<Vec<VSet>> = us
        .iter()
        .map(|x| vs.iter().map(|y| kpair(x, y)).collect())
        .collect();
    let within = zs
        .iter()
        .all(|t| pairs.iter().flatten().any(|p| b.eq(t, p)));
    if !within {
        return Ok(false);
    }
    let total = pairs.iter().all(|row| row.iter().any(|p| b.mem(p, z)));
    if !total {
        return Ok(false);
    }
    for row in &pairs {
        for (i, p) in row.iter().enumerate() {
            for (j, q) in row.iter().enumerate() {
                if i < j && b.mem(p, z) && b.mem(q, z) && !b.eq(&vs[i], &vs[j]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `z` is a total and functional relation from `u` to `v`.
pub fn is_total_functional(
    table: &AtomTable,
    z: &VSet,
    u: &VSet,
    v: &VSet,
) -> Result<bool, ModelError> {
    total_functional_with(&mut Bisim::new(table), z, u, v)
}

/// Child positions of `u`, equal when the children are.
pub fn rep_setoid(table: &AtomTable, u: &VSet) -> Result<FinSetoid<VSet>, ModelError> {
    let cs = set_children(u)?;
    Ok(FinSetoid::from_key(cs.to_vec(), |c| key(table, c)))
}

/// The graph `{⟨u_x, v_h(x)⟩ : x}` of `h : R(u) → R(v)`.
pub fn graph_gamma(u: &VSet, v: &VSet, h: &ExtFun) -> Result<VSet, ModelError> {
    let (us, vs) = (set_children(u)?, set_children(v)?);
    if h.map().len() != us.len() || h.map().iter().any(|&y| y >= vs.len()) {
        return Err(SetoidError::SignatureMismatch.into());
    }
    Ok(VSet::sup(
        us.iter()
            .enumerate()
            .map(|(x, ux)| kpair(ux, &vs[h.apply(x)]))
            .collect(),
    ))
}

/// All extensional maps `R(u) → R(v)` with their graphs.
#[derive(Debug, Clone)]
pub struct FunctionSpace {
    pub maps: Vec<ExtFun>,
    pub graphs: Vec<VSet>,
}

impl FunctionSpace {
    pub fn set(&self) -> VSet {
        VSet::sup(self.graphs.clone())
    }
}

pub fn function_space(table: &AtomTable, u: &VSet, v: &VSet) -> Result<FunctionSpace, ModelError> {
    let (ru, rv) = (rep_setoid(table, u)?, rep_setoid(table, v)?);
    let size = count_extfuns(ru.partition(), rv.partition());
    if size > FUNCSET_CAP {
        return Err(ModelError::SizeCap {
            what: "function set".into(),
            size,
            cap: FUNCSET_CAP,
        });
    }
    let maps = enum_extfuns(&ru, &rv);
    let graphs = maps
        .iter()
        .map(|h| graph_gamma(u, v, h))
        .collect::<Result<_, _>>()?;
    Ok(FunctionSpace { maps, graphs })
}

/// `v^u`: the set of graphs of all extensional maps `R(u) → R(v)`.
pub fn funcset(table: &AtomTable, u: &VSet, v: &VSet) -> Result<VSet, ModelError> {
    Ok(function_space(table, u, v)?.set())
}

/// Checks that `graph position ↦ map` is a bijection between the classes of
/// `R(v^u)` and the `ext_eq` classes of extensional maps.
pub fn rep_bijection(table: &AtomTable, u: &VSet, v: &VSet) -> Result<Report, ModelError> {
    let fs = function_space(table, u, v)?;
    let mut b = Bisim::new(table);
    let n = fs.maps.len();
    let mut r = Report::new("function set bijection");
    let mut well_defined = None;
    let mut injective = None;
    for i in 0..n {
        for j in 0..n {
            let same_graph = b.eq(&fs.graphs[i], &fs.graphs[j]);
            let same_map = ext_eq(&fs.maps[i], &fs.maps[j])?;
            if same_graph && !same_map && well_defined.is_none() {
                well_defined = Some(format!("graphs {i} and {j} agree, maps differ"));
            }
            if same_map && !same_graph && injective.is_none() {
                injective = Some(format!("maps {i} and {j} agree, graphs differ"));
            }
        }
    }
    r.check("well-defined on classes", well_defined);
    r.check("injective", injective);
    let mut functional = None;
    for (i, g) in fs.graphs.iter().enumerate() {
        if !total_functional_with(&mut b, g, u, v)? {
            functional = Some(format!("graph {i} = {g}"));
            break;
        }
    }
    r.check("graphs are total and functional", functional);

    // Every ext_eq class of maps is hit: compare against an independent count.
    let rv = rep_setoid(table, v)?;
    let ru = rep_setoid(table, u)?;
    let mut class_maps: HashSet<Vec<usize>> = HashSet::new();
    for h in &fs.maps {
        class_maps.insert(h.image_classes());
    }
    let expected = (rv.class_count() as u128).pow(ru.class_count() as u32);
    let found = class_maps.len() as u128;
    if found == expected {
        r.push(
            "surjective",
            crate::report::Status::Pass,
            Some(format!("{found} classes")),
        );
    } else {
        r.fail("surjective", format!("{found} of {expected} classes"));
    }
    Ok(r)
}

/// Power-set surrogate: every subset of the distinct elements of `b`.
/// Atoms have no elements, so their witness is `{∅}`.
pub fn subset_collection_witness(table: &AtomTable, b: &VSet) -> Result<VSet, ModelError> {
    let mut bis = Bisim::new(table);
    let elems = distinct(&mut bis, b.children().unwrap_or(&[]));
    if elems.len() > POWERSET_CAP {
        return Err(ModelError::SizeCap {
            what: "subset collection".into(),
            size: 1u128 << elems.len().min(127),
            cap: 1u128 << POWERSET_CAP,
        });
    }
    let subsets = (0u32..1 << elems.len())
        .map(|mask| {
            VSet::sup(
                elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, e)| e.clone())
                    .collect(),
            )
        })
        .collect();
    Ok(VSet::sup(subsets))
}

/// `{h(x) : x ∈ a}`.
pub fn image_collect(
    a: &VSet,
    mut h: impl FnMut(&VSet) -> Result<VSet, ModelError>,
) -> Result<VSet, ModelError> {
    let out = set_children(a)?
        .iter()
        .map(&mut h)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VSet::sup(out))
}

/// One atom per class of the table.
pub fn atoms_set(table: &AtomTable) -> VSet {
    VSet::sup(table.representatives().map(VSet::atom_unchecked).collect())
}

/// `{∅, ∅⁺, …, ∅⁽ⁿ⁾}`.
pub fn omega_approx(n: usize) -> Result<VSet, ModelError> {
    if n > OMEGA_CAP {
        return Err(ModelError::SizeCap {
            what: "omega approximation".into(),
            size: n as u128 + 1,
            cap: OMEGA_CAP as u128 + 1,
        });
    }
    let mut out = vec![VSet::empty()];
    for _ in 0..n {
        let next = succ(out.last().expect("nonempty"));
        out.push(next);
    }
    Ok(VSet::sup(out))
}

/// Splits an arrow `⟨⟨a,b⟩,f⟩` into `(a, b, f)`.
pub(crate) fn arrow_parts(b: &mut Bisim<'_>, w: &VSet) -> Result<(VSet, VSet, VSet), ModelError> {
    let bad = || ModelError::NotAnArrow(w.to_string());
    let (ab, f) = kproj_with(b, w).map_err(|_| bad())?;
    let (a, c) = kproj_with(b, &ab).map_err(|_| bad())?;
    Ok((a, c, f))
}

/// `w = ⟨⟨a,b⟩,f⟩` with `f` a total functional relation from `a` to `b`.
pub fn isarrow(table: &AtomTable, w: &VSet) -> bool {
    let mut b = Bisim::new(table);
    match arrow_parts(&mut b, w) {
        Ok((a, c, f)) => total_functional_with(&mut b, &f, &a, &c).unwrap_or(false),
        Err(_) => false,
    }
}

pub(crate) fn rel_comp_with(b: &mut Bisim<'_>, z1: &VSet, z2: &VSet) -> Result<VSet, ModelError> {
    let first: Vec<(VSet, VSet)> = set_children(z1)?
        .iter()
        .map(|t| kproj_with(b, t))
        .collect::<Result<_, _>>()?;
    let second: Vec<(VSet, VSet)> = set_children(z2)?
        .iter()
        .map(|t| kproj_with(b, t))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (x, y) in &first {
        for (y2, z) in &second {
            if b.eq(y, y2) {
                out.push(kpair(x, z));
            }
        }
    }
    Ok(VSet::sup(out))
}

/// `{⟨x,z⟩ : ∃y. ⟨x,y⟩ ∈ z1 ∧ ⟨y,z⟩ ∈ z2}`.
pub fn rel_comp(table: &AtomTable, z1: &VSet, z2: &VSet) -> Result<VSet, ModelError> {
    rel_comp_with(&mut Bisim::new(table), z1, z2)
}

pub(crate) fn compose_arrows_with(
    b: &mut Bisim<'_>,
    u: &VSet,
    v: &VSet,
) -> Result<VSet, ModelError> {
    let (a, m, f) = arrow_parts(b, u)?;
    let (m2, c, g) = arrow_parts(b, v)?;
    if !b.eq(&m, &m2) {
        return Err(ModelError::NotComposable(m.to_string(), m2.to_string()));
    }
    let h = rel_comp_with(b, &f, &g)?;
    Ok(kpair(&kpair(&a, &c), &h))
}

/// Composes `u : a → b` with `v : b → c` into `⟨⟨a,c⟩, graph⟩`.
pub fn compose_arrows(table: &AtomTable, u: &VSet, v: &VSet) -> Result<VSet, ModelError> {
    compose_arrows_with(&mut Bisim::new(table), u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iterset::{eq_v, mem_v, parse_set};

    fn s(t: &str) -> VSet {
        parse_set(t, &AtomTable::parse_spec("a b | c").unwrap()).unwrap()
    }

    fn t() -> AtomTable {
        AtomTable::parse_spec("a b | c").unwrap()
    }

    fn canon(x: &VSet) -> String {
        canonicalize(&t(), x).into_string()
    }

    #[test]
    fn pairing_union_successor() {
        assert_eq!(canon(&pair_set(&s("{}"), &s("{}"))), "{{}}");
        assert_eq!(canon(&union_set(&s("{{{}},{{{}}}}")).unwrap()), "{{},{{}}}");
        assert_eq!(canon(&succ(&s("{}"))), "{{},{{}}}");
        assert!(matches!(union_set(&s("#a")), Err(ModelError::NotASet(_))));
        assert_eq!(canon(&union_set(&s("{#a,{#c}}")).unwrap()), "{#c}");
    }

    #[test]
    fn kuratowski_pairs() {
        let table = t();
        let (x, y) = kproj(&table, &kpair(&s("{}"), &s("{{}}"))).unwrap();
        assert!(eq_v(&table, &x, &s("{}")) && eq_v(&table, &y, &s("{{}}")));
        let xx = kpair(&s("{#a}"), &s("{#b}"));
        assert_eq!(canon(&xx), "{{{#a}}}");
        let (x, y) = kproj(&table, &xx).unwrap();
        assert!(eq_v(&table, &x, &y));
        assert!(kproj(&table, &s("{}")).is_err());
        assert!(kproj(&table, &s("{{},{{}}}")).is_err());
        assert!(kproj(&table, &s("#a")).is_err());
        assert!(kproj(&table, &s("{{{}},{{{}}}}")).is_err());
    }

    #[test]
    fn kuratowski_injective_on_small_sets() {
        let table = t();
        let pool: Vec<VSet> = [
            "{}",
            "{{}}",
            "{{{}}}",
            "{{},{{}}}",
            "#a",
            "#b",
            "#c",
            "{#a}",
        ]
        .iter()
        .map(|x| s(x))
        .collect();
        for x in &pool {
            for y in &pool {
                for x2 in &pool {
                    for y2 in &pool {
                        assert_eq!(
                            eq_v(&table, &kpair(x, y), &kpair(x2, y2)),
                            eq_v(&table, x, x2) && eq_v(&table, y, y2)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn total_functional_relations() {
        let table = t();
        let u = s("{{}}");
        let id = VSet::sup(vec![kpair(&s("{}"), &s("{}"))]);
        assert!(is_total_functional(&table, &id, &u, &u).unwrap());
        assert!(!is_total_functional(&table, &s("{}"), &u, &u).unwrap());
        let v = s("{{},{{}}}");
        let rel = VSet::sup(vec![kpair(&s("{}"), &s("{}")), kpair(&s("{}"), &s("{{}}"))]);
        assert!(!is_total_functional(&table, &rel, &u, &v).unwrap());
        let stray = VSet::sup(vec![kpair(&s("{}"), &s("{}")), s("{}")]);
        assert!(!is_total_functional(&table, &stray, &u, &v).unwrap());
        assert!(is_total_functional(&table, &s("{}"), &s("{}"), &v).unwrap());
    }

    #[test]
    fn representing_setoids() {
        let table = t();
        assert!(rep_setoid(&table, &s("{}")).unwrap().is_empty());
        let dup = rep_setoid(&table, &s("{{},{}}")).unwrap();
        assert_eq!((dup.len(), dup.class_count()), (2, 1));
        let two = rep_setoid(&table, &s("{{},{{}}}")).unwrap();
        assert_eq!((two.len(), two.class_count()), (2, 2));
        let atoms = rep_setoid(&table, &s("{#a,#b,#c}")).unwrap();
        assert_eq!(atoms.class_count(), 2);
        assert!(rep_setoid(&table, &s("#a")).is_err());
    }

    #[test]
    fn graphs_and_function_sets() {
        let table = t();
        let u = s("{{}}");
        let id = ExtFun::identity(&rep_setoid(&table, &u).unwrap());
        assert_eq!(
            canon(&graph_gamma(&u, &u, &id).unwrap()),
            canon(&VSet::singleton(kpair(&s("{}"), &s("{}"))))
        );
        assert_eq!(
            canon(&funcset(&table, &s("{}"), &s("{{}}")).unwrap()),
            "{{}}"
        );
        let f = funcset(&table, &s("{{}}"), &s("{{},{{}}}")).unwrap();
        assert_eq!(rep_setoid(&table, &f).unwrap().class_count(), 2);

        let u = s("{{},{{}}}");
        let v = s("{{},{{}}}");
        let constant = ExtFun::new(
            rep_setoid(&table, &u).unwrap().partition().clone(),
            rep_setoid(&table, &v).unwrap().partition().clone(),
            vec![0, 0],
        )
        .unwrap();
        let g = graph_gamma(&u, &v, &constant).unwrap();
        assert_eq!(rep_setoid(&table, &g).unwrap().class_count(), 2);
        assert!(is_total_functional(&table, &g, &u, &v).unwrap());
    }

    #[test]
    fn function_set_cap() {
        let table = AtomTable::empty();
        let big = VSet::sup((0..7).map(|k| omega_approx(k).unwrap()).collect());
        let err = funcset(&table, &big, &big).unwrap_err();
        assert!(matches!(err, ModelError::SizeCap { .. }));
    }

    #[test]
    fn bijection_reports() {
        let table = t();
        let r = rep_bijection(&table, &s("{{}}"), &s("{{}}")).unwrap();
        assert!(r.passed());
        assert_eq!(
            r.entry("surjective").unwrap().detail.as_deref(),
            Some("1 classes")
        );
        let r = rep_bijection(&table, &s("{{}}"), &s("{{},{{}}}")).unwrap();
        assert!(r.passed());
        assert_eq!(
            r.entry("surjective").unwrap().detail.as_deref(),
            Some("2 classes")
        );
        let r = rep_bijection(&table, &s("{{},{}}"), &s("{#a,#b,#c}")).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn collection_witnesses() {
        let table = t();
        assert_eq!(
            canon(&subset_collection_witness(&table, &s("{}")).unwrap()),
            "{{}}"
        );
        assert_eq!(
            canon(&subset_collection_witness(&table, &s("#a")).unwrap()),
            "{{}}"
        );
        let w = subset_collection_witness(&table, &s("{#a,#b,{}}")).unwrap();
        assert_eq!(w.children().unwrap().len(), 4);
        let img = image_collect(&s("{{},{{}}}"), |x| Ok(succ(x))).unwrap();
        let expected = VSet::sup(vec![succ(&s("{}")), succ(&s("{{}}"))]);
        assert!(eq_v(&table, &img, &expected));
        assert_eq!(img.children().unwrap().len(), 2);
    }

    #[test]
    fn atoms_and_omega() {
        let table = t();
        let all = atoms_set(&table);
        assert_eq!(all.children().unwrap().len(), 2);
        for id in ["a", "b", "c"] {
            assert!(mem_v(&table, &VSet::atom_unchecked(id), &all));
        }
        assert!(!mem_v(&table, &s("{}"), &all));
        let single = AtomTable::parse_spec("a b").unwrap();
        assert_eq!(
            rep_setoid(&single, &atoms_set(&single))
                .unwrap()
                .class_count(),
            1
        );
        let w = omega_approx(2).unwrap();
        assert_eq!(w.children().unwrap().len(), 3);
        assert!(mem_v(&table, &s("{}"), &w));
        assert!(mem_v(&table, &succ(&succ(&s("{}"))), &w));
        assert!(omega_approx(OMEGA_CAP + 1).is_err());
    }

    #[test]
    fn arrows_and_composition() {
        let table = t();
        let u = s("{{}}");
        let idg = VSet::singleton(kpair(&s("{}"), &s("{}")));
        let arrow = kpair(&kpair(&u, &u), &idg);
        assert!(isarrow(&table, &arrow));
        assert!(!isarrow(&table, &s("{}")));
        assert!(eq_v(&table, &rel_comp(&table, &idg, &idg).unwrap(), &idg));
        assert!(eq_v(
            &table,
            &compose_arrows(&table, &arrow, &arrow).unwrap(),
            &arrow
        ));
        let other = kpair(&kpair(&s("{}"), &s("{}")), &s("{}"));
        assert!(matches!(
            compose_arrows(&table, &arrow, &other),
            Err(ModelError::NotComposable(..))
        ));
    }
}
