use std::cell::RefCell;
use std::collections::HashSet;

use crate::iterset::{canonicalize, rank, AtomTable, Bisim, VSet};
use crate::lang::{parse_formula, Formula};
use crate::report::{Report, Status};

use super::{
    atoms_set, image_collect, kpair, omega_approx, pair_set, subset_collection_witness, succ,
    union_set, Env, Evaluator, ModelError,
};

/// Largest universe the suite will enumerate.
pub const UNIVERSE_CAP: usize = 5000;

/// The primitive predicates the axiom checks are stated in.
pub trait SetStructure {
    fn table(&self) -> &AtomTable;
    fn is_set(&self, x: &VSet) -> bool;
    fn eq(&self, x: &VSet, y: &VSet) -> bool;
    /// `x ∈ y`.
    fn mem(&self, x: &VSet, y: &VSet) -> bool;
}

/// `(V, =_V, ∈_V)` itself.
pub struct Standard<'t> {
    table: &'t AtomTable,
    bisim: RefCell<Bisim<'t>>,
}

impl<'t> Standard<'t> {
    pub fn new(table: &'t AtomTable) -> Self {
        Standard {
            table,
            bisim: RefCell::new(Bisim::new(table)),
        }
    }
}

impl SetStructure for Standard<'_> {
    fn table(&self) -> &AtomTable {
        self.table
    }
    fn is_set(&self, x: &VSet) -> bool {
        x.is_set()
    }
    fn eq(&self, x: &VSet, y: &VSet) -> bool {
        self.bisim.borrow_mut().eq(x, y)
    }
    fn mem(&self, x: &VSet, y: &VSet) -> bool {
        self.bisim.borrow_mut().mem(x, y)
    }
}

/// A faulty structure in which every atom is a member of itself.
pub struct AtomMembership<'t>(pub Standard<'t>);

impl SetStructure for AtomMembership<'_> {
    fn table(&self) -> &AtomTable {
        self.0.table
    }
    fn is_set(&self, x: &VSet) -> bool {
        self.0.is_set(x)
    }
    fn eq(&self, x: &VSet, y: &VSet) -> bool {
        self.0.eq(x, y)
    }
    fn mem(&self, x: &VSet, y: &VSet) -> bool {
        if y.is_atom() {
            self.0.eq(x, y)
        } else {
            self.0.mem(x, y)
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub rank: usize,
    pub breadth: usize,
    pub table: AtomTable,
    /// Length of the bounded approximation to ω.
    pub omega: usize,
}

impl SuiteConfig {
    pub fn new(rank: usize, breadth: usize, table: AtomTable) -> Self {
        SuiteConfig {
            rank,
            breadth,
            table,
            omega: 4,
        }
    }
}

fn cap_error(size: u128) -> ModelError {
    ModelError::SizeCap {
        what: "universe".into(),
        size,
        cap: UNIVERSE_CAP as u128,
    }
}

/// Multisets of size at most `k` drawn from `pool`, as sets.
fn multisets(pool: &[VSet], k: usize, out: &mut Vec<VSet>) {
    fn go(pool: &[VSet], start: usize, left: usize, cur: &mut Vec<VSet>, out: &mut Vec<VSet>) {
        out.push(VSet::sup(cur.clone()));
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i].clone());
            go(pool, i, left - 1, cur, out);
            cur.pop();
        }
    }
    go(pool, 0, k, &mut Vec::new(), out);
}

fn multiset_count(n: usize, k: usize) -> u128 {
    // Σ_{j≤k} C(n+j-1, j)
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for j in 0..=k {
        total = total.saturating_add(term);
        term = term.saturating_mul((n + j) as u128) / (j as u128 + 1);
    }
    total
}

/// Every object of rank at most `rank` whose sets have at most `breadth`
/// elements. Sets are built over one representative per class of the level
/// below, so duplicate elements occur; atoms appear under every identifier.
pub fn universe(
    rank_bound: usize,
    breadth: usize,
    table: &AtomTable,
) -> Result<Vec<VSet>, ModelError> {
    let atoms: Vec<VSet> = table.carrier().map(VSet::atom_unchecked).collect();
    let mut level: Vec<VSet> = atoms.clone();
    level.push(VSet::empty());
    for _ in 0..rank_bound {
        let mut seen = HashSet::new();
        let pool: Vec<VSet> = level
            .iter()
            .filter(|x| seen.insert(canonicalize(table, x).into_string()))
            .cloned()
            .collect();
        let size = multiset_count(pool.len(), breadth) + atoms.len() as u128;
        if size > UNIVERSE_CAP as u128 {
            return Err(cap_error(size));
        }
        let mut next = atoms.clone();
        multisets(&pool, breadth, &mut next);
        level = next;
    }
    Ok(level)
}

const SEPARATION_BATTERY: [&str; 10] = [
    "true",
    "false",
    "set(x)",
    "atom(x)",
    "x = {}",
    "ex y in x . true",
    "all y in x . set(y)",
    "x in p",
    "~x = p",
    "ex y in p . x in y",
];

const COLLECTION_BATTERY: [&str; 7] = [
    "x = y",
    "y in x",
    "x in y",
    "true",
    "set(x) -> set(y)",
    "y in u",
    "x in u \\/ y = u",
];

type ElementMap = fn(&VSet) -> VSet;

const IMAGE_BATTERY: [(&str, ElementMap); 5] = [
    ("succ", succ),
    ("singleton", |x| VSet::singleton(x.clone())),
    ("pair with empty", |x| pair_set(x, &VSet::empty())),
    ("self pair", |x| kpair(x, x)),
    ("union or self", |x| {
        union_set(x).unwrap_or_else(|_| x.clone())
    }),
];

fn mentions(phi: &Formula, var: &str) -> bool {
    let text = phi.to_string();
    text.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '\''))
        .any(|w| w == var)
}

struct Ctx<'a, S: SetStructure> {
    s: &'a S,
    universe: &'a [VSet],
    render: Box<dyn Fn(&VSet) -> String + 'a>,
}

impl<S: SetStructure> Ctx<'_, S> {
    fn c1(&self) -> Option<String> {
        self.universe
            .iter()
            .find(|x| !(self.s.is_set(x) || x.is_atom()))
            .map(|x| (self.render)(x))
    }

    fn c2(&self) -> Option<String> {
        for x in self.universe {
            for y in self.universe {
                if self.s.mem(y, x) && !self.s.is_set(x) {
                    return Some(format!("{} in {}", (self.render)(y), (self.render)(x)));
                }
            }
        }
        None
    }

    fn c3(&self) -> Option<String> {
        let sets: Vec<&VSet> = self.universe.iter().filter(|x| self.s.is_set(x)).collect();
        for x in &sets {
            for y in &sets {
                let same = self
                    .universe
                    .iter()
                    .all(|z| self.s.mem(z, x) == self.s.mem(z, y));
                if same && !self.s.eq(x, y) {
                    return Some(format!("{} and {}", (self.render)(x), (self.render)(y)));
                }
            }
        }
        None
    }

    fn rank_decrease(&self) -> Option<String> {
        for x in self.universe {
            for y in self.universe {
                if self.s.mem(y, x) && rank(y) >= rank(x) {
                    return Some(format!("{} in {}", (self.render)(y), (self.render)(x)));
                }
            }
        }
        None
    }

    /// Membership in `w` agrees with `spec` on the universe and on `extra`.
    fn members_match(
        &self,
        w: &VSet,
        extra: &[VSet],
        mut spec: impl FnMut(&VSet) -> bool,
    ) -> Option<String> {
        if !self.s.is_set(w) {
            return Some(format!("{} is not a set", (self.render)(w)));
        }
        self.universe
            .iter()
            .chain(extra)
            .find(|z| self.s.mem(z, w) != spec(z))
            .map(|z| format!("{} at {}", (self.render)(w), (self.render)(z)))
    }

    fn c5(&self) -> Result<Option<String>, ModelError> {
        for x in self.universe.iter().filter(|x| x.is_set()) {
            let u = union_set(x)?;
            let extra = u.children().unwrap_or(&[]).to_vec();
            let xs = x.children().unwrap_or(&[]);
            if let Some(w) = self.members_match(&u, &extra, |z| xs.iter().any(|y| self.s.mem(z, y)))
            {
                return Ok(Some(format!("union of {}: {w}", (self.render)(x))));
            }
        }
        Ok(None)
    }

    fn c6(&self) -> Option<String> {
        for x in self.universe {
            for y in self.universe {
                let u = pair_set(x, y);
                if let Some(w) = self.members_match(&u, &[], |z| self.s.eq(z, x) || self.s.eq(z, y))
                {
                    return Some(format!(
                        "pair of {}, {}: {w}",
                        (self.render)(x),
                        (self.render)(y)
                    ));
                }
            }
        }
        None
    }

    fn c7(&self, pool: &[VSet]) -> Result<(Option<String>, usize), ModelError> {
        let table = self.s.table();
        let mut ev = Evaluator::new(table);
        let mut count = 0;
        for src in SEPARATION_BATTERY {
            let phi = parse_formula(src).expect("battery formula parses");
            let params: Vec<Option<&VSet>> = if mentions(&phi, "p") {
                pool.iter().map(Some).collect()
            } else {
                vec![None]
            };
            for p in params {
                let env = match p {
                    Some(p) => Env::new().with("p", p.clone()),
                    None => Env::new(),
                };
                for u in self.universe.iter().filter(|u| u.is_set()) {
                    count += 1;
                    let v = ev.separate(u, "x", &phi, &env)?;
                    let mut err = None;
                    let found = self.members_match(&v, &[], |z| {
                        self.s.mem(z, u) && {
                            let env = env.clone().with("x", z.clone());
                            ev.formula(&phi, &env).unwrap_or_else(|e| {
                                err = Some(e);
                                false
                            })
                        }
                    });
                    if let Some(e) = err {
                        return Err(e);
                    }
                    if let Some(w) = found {
                        return Ok((
                            Some(format!("{{x in {} | {src}}}: {w}", (self.render)(u))),
                            count,
                        ));
                    }
                }
            }
        }
        Ok((None, count))
    }

    fn c8(&self, pool: &[VSet]) -> Result<(Option<String>, usize), ModelError> {
        let table = self.s.table();
        let mut ev = Evaluator::new(table);
        let battery: Vec<(&str, Formula)> = COLLECTION_BATTERY
            .iter()
            .map(|s| (*s, parse_formula(s).expect("battery formula parses")))
            .collect();
        let mut premises = 0;
        for a in self.universe {
            let xs = a.children().unwrap_or(&[]);
            for b in self.universe {
                let ys = b.children().unwrap_or(&[]);
                let c = subset_collection_witness(table, b)?;
                let ds = c.children().unwrap_or(&[]);
                for (src, phi) in &battery {
                    let params: Vec<Option<&VSet>> = if mentions(phi, "u") {
                        pool.iter().map(Some).collect()
                    } else {
                        vec![None]
                    };
                    for u in params {
                        let base = match u {
                            Some(u) => Env::new().with("u", u.clone()),
                            None => Env::new(),
                        };
                        let mut holds = |x: &VSet, y: &VSet| -> Result<bool, ModelError> {
                            let env = base.clone().with("x", x.clone()).with("y", y.clone());
                            ev.formula(phi, &env)
                        };
                        let mut premise = true;
                        for x in xs {
                            let mut any = false;
                            for y in ys {
                                if holds(x, y)? {
                                    any = true;
                                    break;
                                }
                            }
                            if !any {
                                premise = false;
                                break;
                            }
                        }
                        if !premise {
                            continue;
                        }
                        premises += 1;
                        let mut witnessed = false;
                        for d in ds {
                            let ms = d.children().unwrap_or(&[]);
                            let mut forth = true;
                            for x in xs {
                                let mut any = false;
                                for y in ms {
                                    if self.s.mem(y, d) && holds(x, y)? {
                                        any = true;
                                        break;
                                    }
                                }
                                forth &= any;
                            }
                            let mut back = true;
                            for y in ms {
                                let mut any = false;
                                for x in xs {
                                    if self.s.mem(x, a) && holds(x, y)? {
                                        any = true;
                                        break;
                                    }
                                }
                                back &= any;
                            }
                            if forth && back {
                                witnessed = true;
                                break;
                            }
                        }
                        if !witnessed {
                            return Ok((
                                Some(format!(
                                    "a={}, b={}, phi={src}",
                                    (self.render)(a),
                                    (self.render)(b)
                                )),
                                premises,
                            ));
                        }
                    }
                }
            }
        }
        Ok((None, premises))
    }

    fn c9(&self) -> Result<Option<String>, ModelError> {
        for a in self.universe.iter().filter(|a| a.is_set()) {
            let xs = a.children().unwrap_or(&[]);
            for (name, h) in IMAGE_BATTERY {
                let b = image_collect(a, |x| Ok(h(x)))?;
                if !self.s.is_set(&b) {
                    return Ok(Some(format!(
                        "image of {} under {name} is not a set",
                        (self.render)(a)
                    )));
                }
                let ys = b.children().unwrap_or(&[]);
                let forth = xs
                    .iter()
                    .all(|x| ys.iter().any(|y| self.s.mem(y, &b) && self.s.eq(y, &h(x))));
                let back = ys
                    .iter()
                    .all(|y| xs.iter().any(|x| self.s.mem(x, a) && self.s.eq(y, &h(x))));
                if !(forth && back) {
                    return Ok(Some(format!("image of {} under {name}", (self.render)(a))));
                }
            }
        }
        Ok(None)
    }

    fn atoms(&self) -> Option<String> {
        let x = atoms_set(self.s.table());
        self.members_match(&x, &[], |z| !self.s.is_set(z))
    }

    fn infinity(&self, n: usize) -> Result<Option<String>, ModelError> {
        let x = omega_approx(n)?;
        let mut y = VSet::empty();
        if !self.s.is_set(&x) || !self.s.mem(&y, &x) {
            return Ok(Some("empty set missing".into()));
        }
        for k in 0..n {
            let next = succ(&y);
            if !self.s.mem(&next, &x) {
                return Ok(Some(format!("successor of element {k} missing")));
            }
            y = next;
        }
        Ok(None)
    }
}

/// Runs every axiom check against `s` over the configured universe.
pub fn czfu_suite_with<S: SetStructure>(s: &S, cfg: &SuiteConfig) -> Result<Report, ModelError> {
    let table = s.table();
    let universe = universe(cfg.rank, cfg.breadth, table)?;
    let mut seen = HashSet::new();
    let pool: Vec<VSet> = universe
        .iter()
        .filter(|x| seen.insert(canonicalize(table, x).into_string()))
        .cloned()
        .collect();
    let ctx = Ctx {
        s,
        universe: &universe,
        render: Box::new(move |x| canonicalize(table, x).into_string()),
    };
    let mut r = Report::new(format!(
        "CZFU at rank {}, breadth {}, atoms [{}]: {} objects",
        cfg.rank,
        cfg.breadth,
        table.to_spec(),
        universe.len()
    ));
    r.check("C1 set or atom", ctx.c1());
    r.check("C2 only sets have elements", ctx.c2());
    r.check("C3 extensionality", ctx.c3());
    r.check("C4 rank decreases along membership", ctx.rank_decrease());
    r.check("C5 union", ctx.c5()?);
    r.check("C6 pairing", ctx.c6());
    let (w, n) = ctx.c7(&pool)?;
    push_counted(
        &mut r,
        "C7 bounded separation",
        w,
        format!("{n} separations"),
    );
    let (w, n) = ctx.c8(&pool)?;
    push_counted(&mut r, "C8 subset collection", w, format!("{n} premises"));
    r.check("C9 strong collection", ctx.c9()?);
    r.check("set of all atoms", ctx.atoms());
    match ctx.infinity(cfg.omega)? {
        None => r.push(
            "C10 infinity",
            Status::Approx,
            Some(format!(
                "closure of omega_approx({}) under y+ verified up to {}",
                cfg.omega,
                cfg.omega.saturating_sub(1)
            )),
        ),
        Some(w) => r.fail("C10 infinity", w),
    }
    Ok(r)
}

fn push_counted(r: &mut Report, name: &str, witness: Option<String>, detail: String) {
    match witness {
        None => r.push(name, Status::Pass, Some(detail)),
        Some(w) => r.fail(name, w),
    }
}

/// The axiom checks against the standard structure.
pub fn czfu_suite(cfg: &SuiteConfig) -> Result<Report, ModelError> {
    czfu_suite_with(&Standard::new(&cfg.table), cfg)
}
