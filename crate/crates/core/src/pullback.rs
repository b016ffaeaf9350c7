//! Staged universes of setoids with chosen pullbacks.
//!
//! Starting from a base family, every stage `p(i,j,k)` indexes cospan data
//! `(a, b, c, d, f, g)` with `f : F_i(a) → F_k(c)`, `g : F_j(b) → F_k(d)` and
//! `c = d`, and its fiber is the set-theoretic pullback of `f` and `g`. The
//! union over all stages is a single family whose category has every
//! pullback of cospans between lower stages.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::category::{CatArrow, CategoryError, FamilyView, HomSets};
use crate::report::{Report, Status};
use crate::setoid::{
    count_extfuns, enum_extfuns, mk_extfun, mk_family, mk_setoid, ExtFun, FinSetoid, SetoidError,
    SetoidFamily,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PullbackError {
    #[error("stage {stage} would have {size} objects, over the cap of {cap}")]
    Blowup {
        stage: Stage,
        size: u128,
        cap: usize,
    },
    #[error("stage {0} is beyond the universe depth")]
    StageOverflow(Stage),
    #[error("arrows do not form a cospan: codomains {0} and {1} differ")]
    NotACospan(usize, usize),
    #[error("unknown base preset `{0}`")]
    UnknownPreset(String),
    #[error(transparent)]
    Setoid(#[from] SetoidError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// Construction stages: the basic stage or a pullback stage over three others.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Basic,
    Pullback(Arc<Stage>, Arc<Stage>, Arc<Stage>),
}

impl Stage {
    pub fn p(i: &Stage, j: &Stage, k: &Stage) -> Stage {
        Stage::Pullback(
            Arc::new(i.clone()),
            Arc::new(j.clone()),
            Arc::new(k.clone()),
        )
    }

    /// Nesting depth: 0 for the basic stage.
    pub fn depth(&self) -> usize {
        match self {
            Stage::Basic => 0,
            Stage::Pullback(i, j, k) => 1 + i.depth().max(j.depth()).max(k.depth()),
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Basic => f.write_str("b"),
            Stage::Pullback(i, j, k) => write!(f, "p({i},{j},{k})"),
        }
    }
}

/// All stages of depth at most `depth`, shallow ones first.
pub fn stages_up_to(depth: usize) -> Vec<Stage> {
    let mut level: BTreeSet<Stage> = BTreeSet::from([Stage::Basic]);
    for _ in 0..depth {
        let prev: Vec<Stage> = level.iter().cloned().collect();
        for i in &prev {
            for j in &prev {
                for k in &prev {
                    level.insert(Stage::p(i, j, k));
                }
            }
        }
    }
    let mut out: Vec<Stage> = level.into_iter().collect();
    out.sort_by_key(|s| s.depth());
    out
}

/// Cospan data indexing a pullback stage. `a`, `b`, `c`, `d` are positions
/// in the index carriers of the three component stages.
#[derive(Debug, Clone)]
pub struct POb {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub f: ExtFun,
    pub g: ExtFun,
}

impl fmt::Display for POb {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |e: &ExtFun| {
            e.map()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            fm,
            "({},{},{},{},[{}],[{}])",
            self.a,
            self.b,
            self.c,
            self.d,
            show(&self.f),
            show(&self.g)
        )
    }
}

#[derive(Debug, Clone)]
pub enum StageObj {
    Base(String),
    Pob(POb),
}

impl fmt::Display for StageObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageObj::Base(s) => f.write_str(s),
            StageObj::Pob(p) => write!(f, "{p}"),
        }
    }
}

/// Fiber elements: base elements, or a matching pair `(x, y)` with
/// `F_k(c,d)(f(x)) = g(y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FiberElem {
    Base(String),
    Pair(usize, usize),
}

impl fmt::Display for FiberElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberElem::Base(s) => f.write_str(s),
            FiberElem::Pair(x, y) => write!(f, "({x},{y})"),
        }
    }
}

pub type StageFamily = SetoidFamily<StageObj, FiberElem>;

type PobKey = (usize, usize, usize, usize, Vec<usize>, Vec<usize>);

pub struct StagedUniverse {
    depth: usize,
    stages: Vec<Stage>,
    families: HashMap<Stage, StageFamily>,
    pob_index: HashMap<Stage, HashMap<PobKey, usize>>,
}

pub const DEFAULT_CARRIER_CAP: usize = 4096;

impl StagedUniverse {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn family(&self, s: &Stage) -> Option<&StageFamily> {
        self.families.get(s)
    }

    fn pob_position(&self, s: &Stage, key: &PobKey) -> Option<usize> {
        self.pob_index.get(s)?.get(key).copied()
    }
}

/// Builds every stage up to `depth`, each validated as a family. Fails when a
/// stage index would exceed `cap` objects.
pub fn build_staged<T: fmt::Display, U: fmt::Display>(
    base: &SetoidFamily<T, U>,
    depth: usize,
    cap: usize,
) -> Result<StagedUniverse, PullbackError> {
    let stages = stages_up_to(depth);
    let mut families: HashMap<Stage, StageFamily> = HashMap::new();
    let mut pob_index = HashMap::new();
    for stage in &stages {
        match stage {
            Stage::Basic => {
                let index = base.index().map_carrier(|t| StageObj::Base(t.to_string()));
                let fibers = base
                    .fibers()
                    .iter()
                    .map(|f| f.map_carrier(|u| FiberElem::Base(u.to_string())))
                    .collect();
                let fam = mk_family(index, fibers, base.transports().clone())?;
                families.insert(Stage::Basic, fam);
            }
            Stage::Pullback(i, j, k) => {
                let fam = build_pullback_stage(
                    stage,
                    &families[&**i],
                    &families[&**j],
                    &families[&**k],
                    cap,
                )?;
                let idx: HashMap<PobKey, usize> = fam
                    .index()
                    .carrier()
                    .iter()
                    .enumerate()
                    .filter_map(|(n, o)| match o {
                        StageObj::Pob(p) => Some((
                            (p.a, p.b, p.c, p.d, p.f.map().to_vec(), p.g.map().to_vec()),
                            n,
                        )),
                        StageObj::Base(_) => None,
                    })
                    .collect();
                pob_index.insert(stage.clone(), idx);
                families.insert(stage.clone(), fam);
            }
        }
    }
    Ok(StagedUniverse {
        depth,
        stages,
        families,
        pob_index,
    })
}

fn build_pullback_stage(
    stage: &Stage,
    fi: &StageFamily,
    fj: &StageFamily,
    fk: &StageFamily,
    cap: usize,
) -> Result<StageFamily, PullbackError> {
    let (ai, aj, ak) = (fi.index(), fj.index(), fk.index());
    let mut size: u128 = 0;
    for a in 0..ai.len() {
        for b in 0..aj.len() {
            for c in 0..ak.len() {
                for d in 0..ak.len() {
                    if ak.eq(c, d) {
                        let n = count_extfuns(fi.fiber(a).partition(), fk.fiber(c).partition())
                            .saturating_mul(count_extfuns(
                                fj.fiber(b).partition(),
                                fk.fiber(d).partition(),
                            ));
                        size = size.saturating_add(n);
                    }
                }
            }
        }
    }
    if size > cap as u128 {
        return Err(PullbackError::Blowup {
            stage: stage.clone(),
            size,
            cap,
        });
    }

    let mut carrier = Vec::new();
    for a in 0..ai.len() {
        for b in 0..aj.len() {
            for c in 0..ak.len() {
                for d in 0..ak.len() {
                    if !ak.eq(c, d) {
                        continue;
                    }
                    let fs = enum_extfuns(fi.fiber(a), fk.fiber(c));
                    let gs = enum_extfuns(fj.fiber(b), fk.fiber(d));
                    for f in &fs {
                        for g in &gs {
                            carrier.push(POb {
                                a,
                                b,
                                c,
                                d,
                                f: f.clone(),
                                g: g.clone(),
                            });
                        }
                    }
                }
            }
        }
    }

    // Componentwise index equality plus the two transport squares.
    let square =
        |t_out: &ExtFun, f: &ExtFun, f2: &ExtFun, t_in: &ExtFun, target: &FinSetoid<FiberElem>| {
            (0..f.map().len()).all(|x| target.eq(t_out.apply(f.apply(x)), f2.apply(t_in.apply(x))))
        };
    let related = |p: &POb, q: &POb| -> bool {
        if !(ai.eq(p.a, q.a) && aj.eq(p.b, q.b) && ak.eq(p.c, q.c) && ak.eq(p.d, q.d)) {
            return false;
        }
        let (Ok(t1), Ok(t2), Ok(t3), Ok(t4)) = (
            fi.transport(p.a, q.a),
            fj.transport(p.b, q.b),
            fk.transport(p.c, q.c),
            fk.transport(p.d, q.d),
        ) else {
            return false;
        };
        square(t3, &p.f, &q.f, t1, fk.fiber(q.c)) && square(t4, &p.g, &q.g, t2, fk.fiber(q.d))
    };
    let index = mk_setoid(carrier, related)?;

    let mut fibers = Vec::with_capacity(index.len());
    let mut positions: Vec<HashMap<(usize, usize), usize>> = Vec::with_capacity(index.len());
    for p in index.carrier() {
        let (fa, fb, fd) = (fi.fiber(p.a), fj.fiber(p.b), fk.fiber(p.d));
        let tcd = fk.transport(p.c, p.d)?;
        let mut elems = Vec::new();
        for x in 0..fa.len() {
            for y in 0..fb.len() {
                if fd.eq(tcd.apply(p.f.apply(x)), p.g.apply(y)) {
                    elems.push((x, y));
                }
            }
        }
        let fiber = mk_setoid(elems, |&(x, y), &(x2, y2)| fa.eq(x, x2) && fb.eq(y, y2))?;
        positions.push(
            fiber
                .carrier()
                .iter()
                .enumerate()
                .map(|(n, &e)| (e, n))
                .collect(),
        );
        fibers.push(fiber);
    }

    let mut transports = HashMap::new();
    for class in index.partition().members() {
        for &o in &class {
            for &o2 in &class {
                let (p, q) = (index.get(o), index.get(o2));
                let t1 = fi.transport(p.a, q.a)?;
                let t2 = fj.transport(p.b, q.b)?;
                let map = fibers[o]
                    .carrier()
                    .iter()
                    .map(|&(x, y)| {
                        positions[o2]
                            .get(&(t1.apply(x), t2.apply(y)))
                            .copied()
                            .ok_or(SetoidError::NotEqual(o, o2))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                transports.insert((o, o2), mk_extfun(&fibers[o], &fibers[o2], map)?);
            }
        }
    }

    let index = index.map_carrier(|p| StageObj::Pob(p.clone()));
    let fibers = fibers
        .into_iter()
        .map(|f| f.map_carrier(|&(x, y)| FiberElem::Pair(x, y)))
        .collect();
    Ok(mk_family(index, fibers, transports)?)
}

/// An object of the union family: a stage and a position in its index.
#[derive(Debug, Clone)]
pub struct OmegaObj {
    pub stage: Stage,
    pub local: usize,
    pub label: String,
}

impl fmt::Display for OmegaObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.stage, self.label)
    }
}

/// The union of all stage families, with `(s,a) = (s',a')` exactly when the
/// stages coincide and `a = a'` in that stage.
pub struct OmegaFamily {
    family: SetoidFamily<OmegaObj, FiberElem>,
    offsets: HashMap<Stage, usize>,
}

impl OmegaFamily {
    pub fn family(&self) -> &SetoidFamily<OmegaObj, FiberElem> {
        &self.family
    }

    pub fn position(&self, stage: &Stage, local: usize) -> Option<usize> {
        self.offsets.get(stage).map(|o| o + local)
    }

    pub fn object(&self, x: usize) -> &OmegaObj {
        self.family.index().get(x)
    }

    pub fn view(&self) -> FamilyView<'_, OmegaObj, FiberElem> {
        FamilyView::new(&self.family)
    }
}

pub fn omega_family(su: &StagedUniverse) -> Result<OmegaFamily, PullbackError> {
    let mut carrier = Vec::new();
    let mut fibers = Vec::new();
    let mut offsets = HashMap::new();
    let mut transports = HashMap::new();
    for stage in &su.stages {
        let fam = &su.families[stage];
        let offset = carrier.len();
        offsets.insert(stage.clone(), offset);
        for (local, obj) in fam.index().carrier().iter().enumerate() {
            carrier.push(OmegaObj {
                stage: stage.clone(),
                local,
                label: obj.to_string(),
            });
            fibers.push(fam.fiber(local).clone());
        }
        for (&(x, y), t) in fam.transports() {
            transports.insert((offset + x, offset + y), t.clone());
        }
    }
    let index = mk_setoid(carrier, |p, q| {
        p.stage == q.stage && su.families[&p.stage].index().eq(p.local, q.local)
    })?;
    let family = mk_family(index, fibers, transports)?;
    Ok(OmegaFamily { family, offsets })
}

/// A pullback square: `p1 : apex → X`, `p2 : apex → Y`, `f : X → Z`, `g : Y → Z`.
#[derive(Debug, Clone)]
pub struct Square<A> {
    pub apex: usize,
    pub p1: A,
    pub p2: A,
    pub f: A,
    pub g: A,
}

/// The chosen pullback of `f` and `g` in the category of the union family.
pub fn chosen_pullback(
    su: &StagedUniverse,
    omega: &OmegaFamily,
    f: &CatArrow,
    g: &CatArrow,
) -> Result<Square<CatArrow>, PullbackError> {
    let index = omega.family.index();
    if !index.eq(f.dst, g.dst) {
        return Err(PullbackError::NotACospan(f.dst, g.dst));
    }
    let (x, y, z, w) = (
        omega.object(f.src),
        omega.object(g.src),
        omega.object(f.dst),
        omega.object(g.dst),
    );
    let stage = Stage::p(&x.stage, &y.stage, &z.stage);
    if su.family(&stage).is_none() {
        return Err(PullbackError::StageOverflow(stage));
    }
    let key = (
        x.local,
        y.local,
        z.local,
        w.local,
        f.fun.map().to_vec(),
        g.fun.map().to_vec(),
    );
    let local = su
        .pob_position(&stage, &key)
        .expect("every cospan between enumerated hom-sets is a stage object");
    let apex = omega.position(&stage, local).expect("stage is present");
    let fiber = omega.family.fiber(apex);
    let project = |first: bool, target: usize| -> Result<CatArrow, PullbackError> {
        let map = fiber
            .carrier()
            .iter()
            .map(|e| match *e {
                FiberElem::Pair(a, b) => Ok(if first { a } else { b }),
                FiberElem::Base(_) => Err(SetoidError::SignatureMismatch),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CatArrow {
            src: apex,
            dst: target,
            fun: mk_extfun(fiber, omega.family.fiber(target), map)?,
        })
    };
    Ok(Square {
        apex,
        p1: project(true, f.src)?,
        p2: project(false, g.src)?,
        f: f.clone(),
        g: g.clone(),
    })
}

type Mediators<K> = HashMap<(K, K), HashSet<K>>;

/// Checks commutation and the universal property against every cone from
/// every object. `None` means the square is a pullback; otherwise a witness.
pub fn verify_pullback<C: HomSets>(c: &C, sq: &Square<C::Arrow>) -> Option<String> {
    let fp1 = c.compose(&sq.p1, &sq.f);
    let gp2 = c.compose(&sq.p2, &sq.g);
    match (&fp1, &gp2) {
        (Some(a), Some(b)) if c.arrows_equal(a, b) => {}
        _ => return Some("square does not commute".into()),
    }
    let x = c.target(&sq.p1);
    let y = c.target(&sq.p2);
    for w in 0..c.object_count() {
        let mut mediators: Mediators<C::Key> = HashMap::new();
        for m in c.hom(w, sq.apex) {
            let (Some(a), Some(b)) = (c.compose(&m, &sq.p1), c.compose(&m, &sq.p2)) else {
                return Some(format!(
                    "projection does not compose with {}",
                    c.describe(&m)
                ));
            };
            mediators
                .entry((c.key(&a), c.key(&b)))
                .or_default()
                .insert(c.key(&m));
        }
        let us: Vec<(C::Arrow, Option<C::Arrow>)> = c
            .hom(w, x)
            .into_iter()
            .map(|u| {
                let fu = c.compose(&u, &sq.f);
                (u, fu)
            })
            .collect();
        let vs: Vec<(C::Arrow, Option<C::Arrow>)> = c
            .hom(w, y)
            .into_iter()
            .map(|v| {
                let gv = c.compose(&v, &sq.g);
                (v, gv)
            })
            .collect();
        for (u, fu) in &us {
            for (v, gv) in &vs {
                let (Some(fu), Some(gv)) = (fu, gv) else {
                    continue;
                };
                if !c.arrows_equal(fu, gv) {
                    continue;
                }
                match mediators.get(&(c.key(u), c.key(v))).map(HashSet::len) {
                    Some(1) => {}
                    None | Some(0) => {
                        return Some(format!(
                            "no mediating arrow for cone {} , {}",
                            c.describe(u),
                            c.describe(v)
                        ))
                    }
                    Some(n) => {
                        return Some(format!(
                            "{n} distinct mediating arrows for cone {} , {}",
                            c.describe(u),
                            c.describe(v)
                        ))
                    }
                }
            }
        }
    }
    None
}

/// Every cospan `(f, g)` of the union category whose pullback stage exists.
pub fn cospans(su: &StagedUniverse, omega: &OmegaFamily) -> Vec<(CatArrow, CatArrow)> {
    let view = omega.view();
    let index = omega.family.index();
    let n = index.len();
    let mut out = Vec::new();
    for z in 0..n {
        for x in 0..n {
            for y in 0..n {
                let stage = Stage::p(
                    &omega.object(x).stage,
                    &omega.object(y).stage,
                    &omega.object(z).stage,
                );
                if su.family(&stage).is_none() {
                    continue;
                }
                for f in view.hom_exact(x, z) {
                    for z2 in (0..n).filter(|&z2| index.eq(z, z2)) {
                        for g in view.hom_exact(y, z2) {
                            out.push((f.clone(), g));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Arrows of the union category equal to `a`, over all equal endpoints.
pub fn equal_arrows(omega: &OmegaFamily, a: &CatArrow) -> Vec<CatArrow> {
    let view = omega.view();
    let index = omega.family.index();
    let n = index.len();
    let mut out = Vec::new();
    for x in (0..n).filter(|&x| index.eq(x, a.src)) {
        for y in (0..n).filter(|&y| index.eq(y, a.dst)) {
            out.extend(
                view.hom_exact(x, y)
                    .into_iter()
                    .filter(|b| view.arrow_eq(a, b)),
            );
        }
    }
    out
}

/// The chosen pullback of every `~`-equal replacement of `(f, g)` has an
/// equal apex and equal projections. `None` when that holds.
pub fn check_extensional(
    su: &StagedUniverse,
    omega: &OmegaFamily,
    f: &CatArrow,
    g: &CatArrow,
) -> Result<Option<String>, PullbackError> {
    let view = omega.view();
    let base = chosen_pullback(su, omega, f, g)?;
    for f2 in equal_arrows(omega, f) {
        for g2 in equal_arrows(omega, g) {
            let other = chosen_pullback(su, omega, &f2, &g2)?;
            let same = omega.family.index().eq(base.apex, other.apex)
                && view.arrow_eq(&base.p1, &other.p1)
                && view.arrow_eq(&base.p2, &other.p2);
            if !same {
                return Ok(Some(format!(
                    "cospan {} , {} replaced by {} , {}",
                    view.describe(f),
                    view.describe(g),
                    view.describe(&f2),
                    view.describe(&g2)
                )));
            }
        }
    }
    Ok(None)
}

/// Builds the staged universe over `base` and verifies every chosen pullback.
pub fn pullback_report<T: fmt::Display, U: fmt::Display>(
    base: &SetoidFamily<T, U>,
    depth: usize,
    cap: usize,
) -> Result<Report, PullbackError> {
    let mut r = Report::new(format!("chosen pullbacks at depth {depth}"));
    let su = build_staged(base, depth, cap)?;
    r.push(
        "stage families",
        Status::Pass,
        Some(format!("{} stages validated", su.stages().len())),
    );
    let omega = omega_family(&su)?;
    r.push(
        "union family",
        Status::Pass,
        Some(format!("{} objects", omega.family.index().len())),
    );
    let all = cospans(&su, &omega);
    let view = omega.view();
    let results: Vec<(Option<String>, Option<String>)> = all
        .par_iter()
        .map(|(f, g)| {
            let sq = chosen_pullback(&su, &omega, f, g).expect("cospan within depth");
            let universal = verify_pullback(&view, &sq);
            let ext = check_extensional(&su, &omega, f, g).expect("cospan within depth");
            (universal, ext)
        })
        .collect();
    let total = results.len();
    let bad_square = results.iter().find_map(|(u, _)| u.clone());
    let bad_ext = results.iter().find_map(|(_, e)| e.clone());
    let ok = results.iter().filter(|(u, _)| u.is_none()).count();
    match bad_square {
        None => r.push(
            "pullback squares",
            Status::Pass,
            Some(format!("{ok}/{total} cospans")),
        ),
        Some(w) => r.fail("pullback squares", format!("{ok}/{total} cospans; {w}")),
    }
    r.check("extensional in the cospan", bad_ext);
    Ok(r)
}

/// Named base families for the command line.
pub fn base_preset(name: &str) -> Result<SetoidFamily<String, String>, PullbackError> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let family = |index: FinSetoid<String>,
                  fibers: Vec<FinSetoid<String>>,
                  maps: Vec<((usize, usize), Vec<usize>)>|
     -> Result<SetoidFamily<String, String>, PullbackError> {
        let mut t = HashMap::new();
        for ((x, y), m) in maps {
            t.insert((x, y), mk_extfun(&fibers[x], &fibers[y], m)?);
        }
        Ok(mk_family(index, fibers, t)?)
    };
    match name {
        "point" => family(
            FinSetoid::discrete(s(&["c"])),
            vec![FinSetoid::discrete(s(&["*"]))],
            vec![((0, 0), vec![0])],
        ),
        "discrete-pair" => family(
            FinSetoid::discrete(s(&["a", "b"])),
            vec![
                FinSetoid::discrete(s(&["*"])),
                FinSetoid::discrete(s(&["*"])),
            ],
            vec![((0, 0), vec![0]), ((1, 1), vec![0])],
        ),
        "mixed" => family(
            FinSetoid::discrete(s(&["one", "two"])),
            vec![
                FinSetoid::discrete(s(&["*"])),
                FinSetoid::discrete(s(&["0", "1"])),
            ],
            vec![((0, 0), vec![0]), ((1, 1), vec![0, 1])],
        ),
        "twos" => family(
            FinSetoid::discrete(s(&["a", "b"])),
            vec![
                FinSetoid::discrete(s(&["0", "1"])),
                FinSetoid::codiscrete(s(&["0", "1"])),
            ],
            vec![((0, 0), vec![0, 1]), ((1, 1), vec![0, 1])],
        ),
        "swap" => family(
            FinSetoid::codiscrete(s(&["p", "q"])),
            vec![
                FinSetoid::discrete(s(&["0", "1"])),
                FinSetoid::discrete(s(&["0", "1"])),
            ],
            vec![
                ((0, 0), vec![0, 1]),
                ((1, 1), vec![0, 1]),
                ((0, 1), vec![1, 0]),
                ((1, 0), vec![1, 0]),
            ],
        ),
        other => Err(PullbackError::UnknownPreset(other.to_string())),
    }
}

pub const PRESETS: [&str; 5] = ["point", "discrete-pair", "mixed", "twos", "swap"];
