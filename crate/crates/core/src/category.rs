//! Essentially algebraic finite categories.
//!
//! A [`FinCategory`] is three setoids (objects, arrows, composable pairs) and
//! six extensional operations. [`check_category`] decides the axioms by
//! exhaustive search; [`build_cat`] realizes the category of a family of
//! setoids, and [`FamilyView`] offers the same category lazily, hom-set by
//! hom-set, for families too large to materialize.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

use crate::report::Report;
use crate::setoid::{enum_between, mk_setoid, ExtFun, FinSetoid, SetoidError, SetoidFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("operation `{0}` has the wrong signature")]
    Signature(Op),
    #[error("no terminal object designated")]
    MissingTerminal,
    #[error("arrows are not composable: codomain {0} differs from domain {1}")]
    NotComposable(usize, usize),
    #[error(transparent)]
    Setoid(#[from] SetoidError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Id,
    Dom,
    Cod,
    Cmp,
    Fst,
    Snd,
}

impl Op {
    pub const ALL: [Op; 6] = [Op::Id, Op::Dom, Op::Cod, Op::Cmp, Op::Fst, Op::Snd];
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Id => "id",
            Op::Dom => "dom",
            Op::Cod => "cod",
            Op::Cmp => "cmp",
            Op::Fst => "fst",
            Op::Snd => "snd",
        })
    }
}

/// Objects `c0`, arrows `c1`, composable pairs `c2` and the six operations.
/// `fst` of a composable pair is the arrow applied first.
#[derive(Debug, Clone)]
pub struct FinCategory {
    c0: FinSetoid<String>,
    c1: FinSetoid<String>,
    c2: FinSetoid<String>,
    id: ExtFun,
    dom: ExtFun,
    cod: ExtFun,
    cmp: ExtFun,
    fst: ExtFun,
    snd: ExtFun,
    // (class of fst, class of snd) -> pairs
    by_pair: HashMap<(usize, usize), Vec<usize>>,
}

impl FinCategory {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        c0: FinSetoid<String>,
        c1: FinSetoid<String>,
        c2: FinSetoid<String>,
        id: ExtFun,
        dom: ExtFun,
        cod: ExtFun,
        cmp: ExtFun,
        fst: ExtFun,
        snd: ExtFun,
    ) -> Result<Self, CategoryError> {
        let (p0, p1, p2) = (c0.partition(), c1.partition(), c2.partition());
        let sigs = [
            (Op::Id, &id, p0, p1),
            (Op::Dom, &dom, p1, p0),
            (Op::Cod, &cod, p1, p0),
            (Op::Cmp, &cmp, p2, p1),
            (Op::Fst, &fst, p2, p1),
            (Op::Snd, &snd, p2, p1),
        ];
        for (op, f, d, c) in sigs {
            if !f.has_signature(d, c) {
                return Err(CategoryError::Signature(op));
            }
        }
        let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for u in 0..c2.len() {
            let key = (c1.class_of(fst.apply(u)), c1.class_of(snd.apply(u)));
            by_pair.entry(key).or_default().push(u);
        }
        Ok(FinCategory {
            c0,
            c1,
            c2,
            id,
            dom,
            cod,
            cmp,
            fst,
            snd,
            by_pair,
        })
    }

    pub fn objects(&self) -> &FinSetoid<String> {
        &self.c0
    }

    pub fn arrows(&self) -> &FinSetoid<String> {
        &self.c1
    }

    pub fn pairs(&self) -> &FinSetoid<String> {
        &self.c2
    }

    pub fn op(&self, op: Op) -> &ExtFun {
        match op {
            Op::Id => &self.id,
            Op::Dom => &self.dom,
            Op::Cod => &self.cod,
            Op::Cmp => &self.cmp,
            Op::Fst => &self.fst,
            Op::Snd => &self.snd,
        }
    }

    /// The same category data with one operation replaced.
    pub fn with_op(&self, op: Op, f: ExtFun) -> Result<FinCategory, CategoryError> {
        let mut ops: Vec<ExtFun> = Op::ALL.iter().map(|&o| self.op(o).clone()).collect();
        ops[Op::ALL.iter().position(|&o| o == op).unwrap()] = f;
        let mut it = ops.into_iter();
        let mut next = || it.next().unwrap();
        FinCategory::new(
            self.c0.clone(),
            self.c1.clone(),
            self.c2.clone(),
            next(),
            next(),
            next(),
            next(),
            next(),
            next(),
        )
    }

    pub fn id(&self, x: usize) -> usize {
        self.id.apply(x)
    }
    pub fn dom(&self, f: usize) -> usize {
        self.dom.apply(f)
    }
    pub fn cod(&self, f: usize) -> usize {
        self.cod.apply(f)
    }
    #[allow(clippy::should_implement_trait)]
    pub fn cmp(&self, u: usize) -> usize {
        self.cmp.apply(u)
    }
    pub fn fst(&self, u: usize) -> usize {
        self.fst.apply(u)
    }
    pub fn snd(&self, u: usize) -> usize {
        self.snd.apply(u)
    }

    fn eq0(&self, x: usize, y: usize) -> bool {
        self.c0.eq(x, y)
    }
    fn eq1(&self, f: usize, g: usize) -> bool {
        self.c1.eq(f, g)
    }

    /// Composable pairs `u` with `fst(u) = first` and `snd(u) = second`.
    pub fn pairs_for(&self, first: usize, second: usize) -> &[usize] {
        self.by_pair
            .get(&(self.c1.class_of(first), self.c1.class_of(second)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// `second ∘ first`, when some composable pair witnesses it.
    pub fn compose(&self, first: usize, second: usize) -> Option<usize> {
        self.pairs_for(first, second).first().map(|&u| self.cmp(u))
    }

    fn obj(&self, x: usize) -> &str {
        self.c0.get(x)
    }
    fn arr(&self, f: usize) -> &str {
        self.c1.get(f)
    }
    fn pair(&self, u: usize) -> &str {
        self.c2.get(u)
    }
}

/// `Comp(f, g, h)`: some composable pair has `fst = g`, `snd = f`, `cmp = h`.
pub fn comp_pred(c: &FinCategory, f: usize, g: usize, h: usize) -> bool {
    (0..c.c2.len()).any(|u| c.eq1(c.fst(u), g) && c.eq1(c.snd(u), f) && c.eq1(c.cmp(u), h))
}

pub const AXIOM_NAMES: [&str; 10] = [
    "axiom 1",
    "axiom 2",
    "axiom 3",
    "axiom 4",
    "axiom 4.5",
    "axiom 5",
    "axiom 6",
    "axiom 7",
    "axiom 8",
    "axiom 9",
];

/// Decides axioms 1 to 9 (with 4½) by exhaustive quantification.
pub fn check_category(c: &FinCategory) -> Report {
    let mut r = Report::new("category axioms");
    let n0 = c.c0.len();
    let n1 = c.c1.len();
    let n2 = c.c2.len();

    r.check(
        "axiom 1",
        (0..n0)
            .find(|&x| !c.eq0(c.dom(c.id(x)), x))
            .map(|x| format!("dom(id(x)) != x at x={}", c.obj(x))),
    );
    r.check(
        "axiom 2",
        (0..n0)
            .find(|&x| !c.eq0(c.cod(c.id(x)), x))
            .map(|x| format!("cod(id(x)) != x at x={}", c.obj(x))),
    );
    r.check(
        "axiom 3",
        (0..n2)
            .find(|&u| !c.eq0(c.dom(c.cmp(u)), c.dom(c.fst(u))))
            .map(|u| format!("dom(cmp(u)) != dom(fst(u)) at u={}", c.pair(u))),
    );
    r.check(
        "axiom 4",
        (0..n2)
            .find(|&u| !c.eq0(c.cod(c.cmp(u)), c.cod(c.snd(u))))
            .map(|u| format!("cod(cmp(u)) != cod(snd(u)) at u={}", c.pair(u))),
    );
    r.check(
        "axiom 4.5",
        (0..n2)
            .find(|&u| !c.eq0(c.cod(c.fst(u)), c.dom(c.snd(u))))
            .map(|u| format!("cod(fst(u)) != dom(snd(u)) at u={}", c.pair(u))),
    );

    // 5: pairs agreeing on fst and snd are equal.
    let mut w5 = None;
    for group in c.by_pair.values() {
        if let Some(&v) = group.iter().find(|&&v| !c.c2.eq(group[0], v)) {
            w5 = Some(format!("u={} v={}", c.pair(group[0]), c.pair(v)));
            break;
        }
    }
    r.check("axiom 5", w5);

    // 6: every f, g with dom(f) = cod(g) has a pair u with snd=f, fst=g.
    let mut w6 = None;
    'six: for f in 0..n1 {
        for g in 0..n1 {
            if c.eq0(c.dom(f), c.cod(g)) && c.pairs_for(g, f).is_empty() {
                w6 = Some(format!("f={} g={}", c.arr(f), c.arr(g)));
                break 'six;
            }
        }
    }
    r.check("axiom 6", w6);

    let id_classes: HashSet<usize> = (0..n0).map(|x| c.c1.class_of(c.id(x))).collect();
    r.check(
        "axiom 7",
        (0..n2)
            .find(|&u| id_classes.contains(&c.c1.class_of(c.fst(u))) && !c.eq1(c.cmp(u), c.snd(u)))
            .map(|u| {
                format!(
                    "fst(u) is an identity but cmp(u) != snd(u) at u={}",
                    c.pair(u)
                )
            }),
    );
    r.check(
        "axiom 8",
        (0..n2)
            .find(|&u| id_classes.contains(&c.c1.class_of(c.snd(u))) && !c.eq1(c.cmp(u), c.fst(u)))
            .map(|u| {
                format!(
                    "snd(u) is an identity but cmp(u) != fst(u) at u={}",
                    c.pair(u)
                )
            }),
    );

    // 9: for v, u with snd(v) = fst(u), every w with fst(w)=fst(v),
    // snd(w)=cmp(u) and every z with fst(z)=cmp(v), snd(z)=snd(u) have
    // cmp(w) = cmp(z). The condition depends on v and u only through the
    // classes of fst, snd and cmp, so one pair per class triple suffices.
    let class = |f: usize| c.c1.class_of(f);
    let triple = |u: usize| (class(c.fst(u)), class(c.snd(u)), class(c.cmp(u)));
    let mut reps: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for u in 0..n2 {
        reps.entry(triple(u)).or_insert(u);
    }
    let mut by_fst: HashMap<usize, Vec<usize>> = HashMap::new();
    for (&(f, _, _), &u) in &reps {
        by_fst.entry(f).or_default().push(u);
    }
    let mut cmp_classes: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (&key, group) in &c.by_pair {
        let mut cs: Vec<usize> = group.iter().map(|&w| class(c.cmp(w))).collect();
        cs.sort_unstable();
        cs.dedup();
        cmp_classes.insert(key, cs);
    }
    let none = Vec::new();
    let mut w9 = None;
    let mut vs: Vec<usize> = reps.values().copied().collect();
    vs.sort_unstable();
    'nine: for &v in &vs {
        let mut us = by_fst.get(&class(c.snd(v))).cloned().unwrap_or_default();
        us.sort_unstable();
        for u in us {
            let wkey = (class(c.fst(v)), class(c.cmp(u)));
            let zkey = (class(c.cmp(v)), class(c.snd(u)));
            let wc = cmp_classes.get(&wkey).unwrap_or(&none);
            let zc = cmp_classes.get(&zkey).unwrap_or(&none);
            let agree = wc.is_empty() || zc.is_empty() || (wc.len() == 1 && wc == zc);
            if agree {
                continue;
            }
            for &w in c.pairs_for(c.fst(v), c.cmp(u)) {
                for &z in c.pairs_for(c.cmp(v), c.snd(u)) {
                    if !c.eq1(c.cmp(w), c.cmp(z)) {
                        w9 = Some(format!(
                            "w={} v={} u={} z={}",
                            c.pair(w),
                            c.pair(v),
                            c.pair(u),
                            c.pair(z)
                        ));
                        break 'nine;
                    }
                }
            }
        }
    }
    r.check("axiom 9", w9);
    r
}

/// Three component maps of a candidate functor.
pub struct FunctorData<'a> {
    pub source: &'a FinCategory,
    pub target: &'a FinCategory,
    pub f0: ExtFun,
    pub f1: ExtFun,
    pub f2: ExtFun,
}

pub const FUNCTOR_EQUATIONS: [&str; 6] = [
    "F1 . id = id . F0",
    "F0 . dom = dom . F1",
    "F0 . cod = cod . F1",
    "F1 . fst = fst . F2",
    "F1 . snd = snd . F2",
    "F1 . cmp = cmp . F2",
];

/// Checks the six preservation equations pointwise.
pub fn check_functor(fd: &FunctorData<'_>) -> Report {
    let mut r = Report::new("functor equations");
    let (s, t) = (fd.source, fd.target);
    let sig = fd.f0.has_signature(s.c0.partition(), t.c0.partition())
        && fd.f1.has_signature(s.c1.partition(), t.c1.partition())
        && fd.f2.has_signature(s.c2.partition(), t.c2.partition());
    if !sig {
        r.fail("signature", "component maps do not match the categories");
        return r;
    }
    let (f0, f1, f2) = (&fd.f0, &fd.f1, &fd.f2);
    r.check(
        FUNCTOR_EQUATIONS[0],
        (0..s.c0.len())
            .find(|&x| !t.eq1(f1.apply(s.id(x)), t.id(f0.apply(x))))
            .map(|x| format!("x={}", s.obj(x))),
    );
    r.check(
        FUNCTOR_EQUATIONS[1],
        (0..s.c1.len())
            .find(|&f| !t.eq0(f0.apply(s.dom(f)), t.dom(f1.apply(f))))
            .map(|f| format!("f={}", s.arr(f))),
    );
    r.check(
        FUNCTOR_EQUATIONS[2],
        (0..s.c1.len())
            .find(|&f| !t.eq0(f0.apply(s.cod(f)), t.cod(f1.apply(f))))
            .map(|f| format!("f={}", s.arr(f))),
    );
    let on_pairs = |op: Op| {
        (0..s.c2.len())
            .find(|&u| !t.eq1(f1.apply(s.op(op).apply(u)), t.op(op).apply(f2.apply(u))))
            .map(|u| format!("u={}", s.pair(u)))
    };
    r.check(FUNCTOR_EQUATIONS[3], on_pairs(Op::Fst));
    r.check(FUNCTOR_EQUATIONS[4], on_pairs(Op::Snd));
    r.check(FUNCTOR_EQUATIONS[5], on_pairs(Op::Cmp));
    r
}

/// The identity functor on `c`.
pub fn identity_functor(c: &FinCategory) -> FunctorData<'_> {
    FunctorData {
        source: c,
        target: c,
        f0: ExtFun::identity(&c.c0),
        f1: ExtFun::identity(&c.c1),
        f2: ExtFun::identity(&c.c2),
    }
}

/// An arrow `(src, dst, fun)` of the category of a family: `fun` maps the
/// fiber over `src` to the fiber over `dst`.
#[derive(Debug, Clone)]
pub struct CatArrow {
    pub src: usize,
    pub dst: usize,
    pub fun: ExtFun,
}

impl CatArrow {
    pub fn render<T: fmt::Display>(&self, index: &FinSetoid<T>) -> String {
        let m: Vec<String> = self.fun.map().iter().map(usize::to_string).collect();
        format!(
            "({},{},[{}])",
            index.get(self.src),
            index.get(self.dst),
            m.join(" ")
        )
    }
}

/// `(x,y,f) ~ (u,v,g)`: `x = u`, `y = v` and the transport square commutes.
pub fn arrow_eq<T, U>(fam: &SetoidFamily<T, U>, a: &CatArrow, b: &CatArrow) -> bool {
    let index = fam.index();
    if !index.eq(a.src, b.src) || !index.eq(a.dst, b.dst) {
        return false;
    }
    let (Ok(p), Ok(q)) = (fam.transport(a.src, b.src), fam.transport(a.dst, b.dst)) else {
        return false;
    };
    let target = fam.fiber(b.dst);
    (0..fam.fiber(a.src).len()).all(|t| target.eq(q.apply(a.fun.apply(t)), b.fun.apply(p.apply(t))))
}

/// The category `C(A,F)` of a family, computed on demand.
pub struct FamilyView<'a, T, U> {
    fam: &'a SetoidFamily<T, U>,
}

impl<'a, T, U> FamilyView<'a, T, U> {
    pub fn new(fam: &'a SetoidFamily<T, U>) -> Self {
        FamilyView { fam }
    }

    pub fn family(&self) -> &'a SetoidFamily<T, U> {
        self.fam
    }

    /// Every arrow with exactly these endpoints.
    pub fn hom_exact(&self, x: usize, y: usize) -> Vec<CatArrow> {
        enum_between(self.fam.fiber(x).partition(), self.fam.fiber(y).partition())
            .into_iter()
            .map(|fun| CatArrow {
                src: x,
                dst: y,
                fun,
            })
            .collect()
    }

    pub fn identity(&self, x: usize) -> CatArrow {
        CatArrow {
            src: x,
            dst: x,
            fun: ExtFun::identity(self.fam.fiber(x)),
        }
    }

    /// `second ∘ first`, inserting the transport from `first.dst` to `second.src`.
    pub fn compose_arrows(
        &self,
        first: &CatArrow,
        second: &CatArrow,
    ) -> Result<CatArrow, CategoryError> {
        let t = self
            .fam
            .transport(first.dst, second.src)
            .map_err(|_| CategoryError::NotComposable(first.dst, second.src))?;
        let fun = first.fun.then(t)?.then(&second.fun)?;
        Ok(CatArrow {
            src: first.src,
            dst: second.dst,
            fun,
        })
    }

    pub fn arrow_eq(&self, a: &CatArrow, b: &CatArrow) -> bool {
        arrow_eq(self.fam, a, b)
    }

    /// Class key valid among arrows sharing exact endpoints.
    pub fn arrow_key(&self, a: &CatArrow) -> (usize, usize, Vec<usize>) {
        (a.src, a.dst, a.fun.image_classes())
    }
}

/// Hom-set access shared by materialized and lazy categories.
pub trait HomSets {
    type Arrow: Clone;
    type Key: Hash + Eq + Clone;

    fn object_count(&self) -> usize;
    fn objects_equal(&self, x: usize, y: usize) -> bool;
    fn source(&self, f: &Self::Arrow) -> usize;
    fn target(&self, f: &Self::Arrow) -> usize;
    /// Arrows from `x` to `y`, covering every equality class of such arrows.
    fn hom(&self, x: usize, y: usize) -> Vec<Self::Arrow>;
    /// `second ∘ first`.
    fn compose(&self, first: &Self::Arrow, second: &Self::Arrow) -> Option<Self::Arrow>;
    fn arrows_equal(&self, f: &Self::Arrow, g: &Self::Arrow) -> bool;
    /// For arrows from [`HomSets::hom`] with the same `x` and `y`, equal keys
    /// exactly when the arrows are equal.
    fn key(&self, f: &Self::Arrow) -> Self::Key;
    fn describe(&self, f: &Self::Arrow) -> String;
}

impl HomSets for FinCategory {
    type Arrow = usize;
    type Key = usize;

    fn object_count(&self) -> usize {
        self.c0.len()
    }
    fn objects_equal(&self, x: usize, y: usize) -> bool {
        self.eq0(x, y)
    }
    fn source(&self, f: &usize) -> usize {
        self.dom(*f)
    }
    fn target(&self, f: &usize) -> usize {
        self.cod(*f)
    }
    fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.c1.len())
            .filter(|&f| self.eq0(self.dom(f), x) && self.eq0(self.cod(f), y))
            .collect()
    }
    fn compose(&self, first: &usize, second: &usize) -> Option<usize> {
        FinCategory::compose(self, *first, *second)
    }
    fn arrows_equal(&self, f: &usize, g: &usize) -> bool {
        self.eq1(*f, *g)
    }
    fn key(&self, f: &usize) -> usize {
        self.c1.class_of(*f)
    }
    fn describe(&self, f: &usize) -> String {
        self.arr(*f).to_string()
    }
}

impl<T: fmt::Display, U> HomSets for FamilyView<'_, T, U> {
    type Arrow = CatArrow;
    type Key = (usize, usize, Vec<usize>);

    fn object_count(&self) -> usize {
        self.fam.index().len()
    }
    fn objects_equal(&self, x: usize, y: usize) -> bool {
        self.fam.index().eq(x, y)
    }
    fn source(&self, f: &CatArrow) -> usize {
        f.src
    }
    fn target(&self, f: &CatArrow) -> usize {
        f.dst
    }
    fn hom(&self, x: usize, y: usize) -> Vec<CatArrow> {
        self.hom_exact(x, y)
    }
    fn compose(&self, first: &CatArrow, second: &CatArrow) -> Option<CatArrow> {
        self.compose_arrows(first, second).ok()
    }
    fn arrows_equal(&self, f: &CatArrow, g: &CatArrow) -> bool {
        self.arrow_eq(f, g)
    }
    fn key(&self, f: &CatArrow) -> Self::Key {
        self.arrow_key(f)
    }
    fn describe(&self, f: &CatArrow) -> String {
        f.render(self.fam.index())
    }
}

/// `C(A,F)` materialized, with the arrow triples and composable pairs kept
/// alongside the category.
#[derive(Debug, Clone)]
pub struct CafCategory {
    pub cat: FinCategory,
    pub arrows: Vec<CatArrow>,
    /// Composable pairs as (first, second) arrow positions.
    pub pairs: Vec<(usize, usize)>,
}

impl CafCategory {
    pub fn arrow_position(&self, a: &CatArrow) -> Option<usize> {
        self.arrows
            .iter()
            .position(|b| b.src == a.src && b.dst == a.dst && b.fun.map() == a.fun.map())
    }
}

/// Builds `C(A,F)`: objects are the index, arrows every `(x, y, h)` with `h`
/// extensional `F(x) → F(y)` under `~`, composable pairs under componentwise `~`.
pub fn build_cat<T: fmt::Display, U>(
    fam: &SetoidFamily<T, U>,
) -> Result<CafCategory, CategoryError> {
    let view = FamilyView::new(fam);
    let index = fam.index();
    let n = index.len();
    let mut arrows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            arrows.extend(view.hom_exact(x, y));
        }
    }
    let mut position: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for (i, a) in arrows.iter().enumerate() {
        position.insert((a.src, a.dst, a.fun.map().to_vec()), i);
    }
    let labels: Vec<String> = arrows.iter().map(|a| a.render(index)).collect();
    let c1 = mk_setoid((0..arrows.len()).collect::<Vec<_>>(), |&i, &j| {
        view.arrow_eq(&arrows[i], &arrows[j])
    })?;
    let c1 = FinSetoid::from_partition(labels.clone(), c1.partition().clone())?;

    let mut pairs = Vec::new();
    for (h, a) in arrows.iter().enumerate() {
        for (k, b) in arrows.iter().enumerate() {
            if index.eq(a.dst, b.src) {
                pairs.push((h, k));
            }
        }
    }
    let c2 = FinSetoid::from_key(pairs.clone(), |&(h, k)| (c1.class_of(h), c1.class_of(k)));
    let c2 = c2.map_carrier(|&(h, k)| format!("<{},{}>", labels[h], labels[k]));

    let c0 = index.labels();
    let lookup = |a: &CatArrow| position[&(a.src, a.dst, a.fun.map().to_vec())];
    let id_map: Vec<usize> = (0..n).map(|x| lookup(&view.identity(x))).collect();
    let dom_map: Vec<usize> = arrows.iter().map(|a| a.src).collect();
    let cod_map: Vec<usize> = arrows.iter().map(|a| a.dst).collect();
    let mut cmp_map = Vec::with_capacity(pairs.len());
    for &(h, k) in &pairs {
        let composite = view.compose_arrows(&arrows[h], &arrows[k])?;
        cmp_map.push(lookup(&composite));
    }
    let fst_map: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let snd_map: Vec<usize> = pairs.iter().map(|p| p.1).collect();

    let (p0, p1, p2) = (
        c0.partition().clone(),
        c1.partition().clone(),
        c2.partition().clone(),
    );
    let ext = |d: &Arc<_>, c: &Arc<_>, m| ExtFun::new(Arc::clone(d), Arc::clone(c), m);
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
    Ok(CafCategory { cat, arrows, pairs })
}

/// Global-element diagnostics relative to a designated terminal object.
pub struct Elements<'a> {
    cat: &'a FinCategory,
    terminal: Option<usize>,
}

impl<'a> Elements<'a> {
    pub fn new(cat: &'a FinCategory, terminal: Option<usize>) -> Self {
        Elements { cat, terminal }
    }

    fn terminal(&self) -> Result<usize, CategoryError> {
        self.terminal.ok_or(CategoryError::MissingTerminal)
    }

    /// Arrows `x → y`, up to object equality.
    fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        HomSets::hom(self.cat, x, y)
    }

    /// `None` when every object has exactly one arrow (up to equality) into
    /// the candidate; otherwise a description of the offending object.
    pub fn terminality_witness(&self) -> Result<Option<String>, CategoryError> {
        let t = self.terminal()?;
        let c = self.cat;
        for x in 0..c.c0.len() {
            let hs = self.hom(x, t);
            match hs.first() {
                None => return Ok(Some(format!("no arrow from {}", c.obj(x)))),
                Some(&h) => {
                    if let Some(&k) = hs.iter().find(|&&k| !c.eq1(h, k)) {
                        return Ok(Some(format!(
                            "distinct arrows {} and {} from {}",
                            c.arr(h),
                            c.arr(k),
                            c.obj(x)
                        )));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_element(&self, f: usize) -> Result<bool, CategoryError> {
        let t = self.terminal()?;
        Ok(self.cat.eq0(self.cat.dom(f), t))
    }

    /// Left-cancellable against every parallel pair into its domain.
    pub fn is_mono(&self, f: usize) -> bool {
        let c = self.cat;
        let x = c.dom(f);
        let into: Vec<usize> = (0..c.c1.len()).filter(|&g| c.eq0(c.cod(g), x)).collect();
        let after: Vec<Option<usize>> = into.iter().map(|&g| c.compose(g, f)).collect();
        for (i, &g) in into.iter().enumerate() {
            for (j, &h) in into.iter().enumerate() {
                if !c.eq0(c.dom(g), c.dom(h)) || c.eq1(g, h) {
                    continue;
                }
                if let (Some(fg), Some(fh)) = (after[i], after[j]) {
                    if c.eq1(fg, fh) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every element of the codomain factors through `f`.
    pub fn is_onto(&self, f: usize) -> Result<bool, CategoryError> {
        let t = self.terminal()?;
        let c = self.cat;
        let xs = self.hom(t, c.dom(f));
        let ys = self.hom(t, c.cod(f));
        Ok(ys.iter().all(|&y| {
            xs.iter()
                .any(|&x| c.pairs_for(x, f).iter().any(|&u| c.eq1(c.cmp(u), y)))
        }))
    }

    /// A two-sided inverse found by search.
    pub fn find_inverse(&self, f: usize) -> Option<usize> {
        let c = self.cat;
        let (x, y) = (c.dom(f), c.cod(f));
        let (idx, idy) = (c.id(x), c.id(y));
        self.hom(y, x).into_iter().find(|&g| {
            c.pairs_for(f, g).iter().any(|&u| c.eq1(c.cmp(u), idx))
                && c.pairs_for(g, f).iter().any(|&u| c.eq1(c.cmp(u), idy))
        })
    }
}

/// Checks that `terminal` is terminal and that every arrow that is both mono
/// and onto has an inverse.
pub fn check_generator(c: &FinCategory, terminal: usize) -> Report {
    let mut r = Report::new("strong generator");
    let el = Elements::new(c, Some(terminal));
    let term = el.terminality_witness().expect("terminal designated");
    let is_terminal = term.is_none();
    r.check("terminal object", term);
    if !is_terminal {
        r.push(
            "strong generator",
            crate::report::Status::Skip,
            Some("candidate is not terminal".into()),
        );
        return r;
    }
    let mut witness = None;
    for f in 0..c.c1.len() {
        if el.is_onto(f).expect("terminal designated")
            && el.is_mono(f)
            && el.find_inverse(f).is_none()
        {
            witness = Some(format!("mono and onto without inverse: {}", c.arr(f)));
            break;
        }
    }
    r.check("strong generator", witness);
    r
}
