//! Random inputs for property tests and the acceptance suite: trees, their
//! bisimilar variants, coherent families of setoids, single-operation
//! category mutants, closed terms and formulas.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::category::{FinCategory, Op};
use crate::iterset::{AtomTable, VSet};
use crate::lang::{Formula, Term};
use crate::setoid::{mk_family, ExtFun, FinSetoid, Partition, SetoidFamily};

/// A tree of rank at most `rank` with at most `breadth` children per node.
/// Leaves draw from `atoms` when it is non-empty.
pub fn random_tree<R: Rng + ?Sized>(
    rng: &mut R,
    rank: usize,
    breadth: usize,
    atoms: &[String],
) -> VSet {
    if !atoms.is_empty() && rng.gen_bool(0.2) {
        return VSet::atom_unchecked(atoms.choose(rng).expect("non-empty").clone());
    }
    if rank == 0 {
        return VSet::empty();
    }
    let n = rng.gen_range(0..=breadth);
    VSet::sup(
        (0..n)
            .map(|_| random_tree(rng, rank - 1, breadth, atoms))
            .collect(),
    )
}

/// A bisimilar copy of `u`: children shuffled, some duplicated, atoms
/// swapped for members of the same class.
pub fn equal_variant<R: Rng + ?Sized>(rng: &mut R, u: &VSet, table: &AtomTable) -> VSet {
    match u.children() {
        None => {
            let id = u.atom_id().expect("atom");
            let mates = table
                .classes()
                .iter()
                .find(|c| c.iter().any(|a| a == id))
                .cloned()
                .unwrap_or_else(|| vec![id.to_string()]);
            VSet::atom_unchecked(mates.choose(rng).expect("non-empty").clone())
        }
        Some(cs) => {
            let mut out: Vec<VSet> = cs.iter().map(|c| equal_variant(rng, c, table)).collect();
            if !cs.is_empty() && rng.gen_bool(0.3) {
                let extra = cs.choose(rng).expect("non-empty");
                out.push(equal_variant(rng, extra, table));
            }
            out.shuffle(rng);
            VSet::sup(out)
        }
    }
}

/// `u` with one subtree replaced by a fresh random tree; usually unequal.
pub fn perturb<R: Rng + ?Sized>(
    rng: &mut R,
    u: &VSet,
    rank: usize,
    breadth: usize,
    atoms: &[String],
) -> VSet {
    match u.children() {
        Some(cs) if !cs.is_empty() && rank > 0 && rng.gen_bool(0.7) => {
            let mut cs = cs.to_vec();
            let i = rng.gen_range(0..cs.len());
            cs[i] = perturb(rng, &cs[i], rank - 1, breadth, atoms);
            VSet::sup(cs)
        }
        _ => random_tree(rng, rank, breadth, atoms),
    }
}

/// A pair of trees that are equal about half the time.
pub fn tree_pair<R: Rng + ?Sized>(
    rng: &mut R,
    rank: usize,
    breadth: usize,
    table: &AtomTable,
) -> (VSet, VSet) {
    let atoms: Vec<String> = table.carrier().map(str::to_string).collect();
    let u = random_tree(rng, rank, breadth, &atoms);
    let v = match rng.gen_range(0..4) {
        0 => random_tree(rng, rank, breadth, &atoms),
        1 => {
            let w = equal_variant(rng, &u, table);
            perturb(rng, &w, rank, breadth, &atoms)
        }
        _ => equal_variant(rng, &u, table),
    };
    (u, v)
}

/// A family over at most `max_index` indices with fibers of at most
/// `max_fiber` elements. Equal indices get fibers with the same quotient and
/// transports that send each element to the first element of its class.
pub fn random_family<R: Rng + ?Sized>(
    rng: &mut R,
    max_index: usize,
    max_fiber: usize,
) -> SetoidFamily<String, String> {
    let n = rng.gen_range(1..=max_index.max(1));
    let keys: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let labels = (0..n).map(|i| format!("i{i}")).collect();
    let index = FinSetoid::from_partition(labels, Arc::new(Partition::from_keys(keys)))
        .expect("partition sized to carrier");
    let mut quotient: Vec<Vec<usize>> = vec![Vec::new(); n];
    for class in index.partition().members() {
        let k = rng.gen_range(0..=max_fiber);
        for &x in &class {
            let size = if k == 0 {
                0
            } else {
                rng.gen_range(k..=max_fiber)
            };
            let mut q: Vec<usize> = (0..k).collect();
            q.extend((k..size).map(|_| rng.gen_range(0..k)));
            q.shuffle(rng);
            quotient[x] = q;
        }
    }
    let fibers: Vec<FinSetoid<String>> = quotient
        .iter()
        .map(|q| {
            let carrier = (0..q.len()).map(|e| format!("e{e}")).collect();
            FinSetoid::from_partition(carrier, Arc::new(Partition::from_keys(q.iter().copied())))
                .expect("partition sized to carrier")
        })
        .collect();
    let mut transports = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            if !index.eq(x, y) {
                continue;
            }
            let first = |c: usize| {
                quotient[y]
                    .iter()
                    .position(|&d| d == c)
                    .expect("surjective")
            };
            let map = quotient[x].iter().map(|&c| first(c)).collect();
            let t = ExtFun::new(
                fibers[x].partition().clone(),
                fibers[y].partition().clone(),
                map,
            )
            .expect("respects the quotient");
            transports.insert((x, y), t);
        }
    }
    mk_family(index, fibers, transports).expect("coherent by construction")
}

/// One mutant per operation whose codomain has a second class to move to.
/// Each mutant moves a whole class of the identity (or identity pair) so the
/// mutated operation stays extensional.
pub fn op_mutants(c: &FinCategory) -> Vec<(Op, FinCategory)> {
    if c.objects().is_empty() {
        return Vec::new();
    }
    let mut out: Vec<(Op, Result<ExtFun, _>)> = Vec::new();
    let id0 = c.id(0);
    let other_arrow = (0..c.arrows().len()).find(|&f| !c.arrows().eq(f, id0));
    let other_object = (0..c.objects().len()).find(|&y| !c.objects().eq(y, 0));
    let unit_pair = c.pairs_for(id0, id0).first().copied();
    let remap = |len: usize, old: &ExtFun, hit: &dyn Fn(usize) -> bool, to: usize| -> Vec<usize> {
        (0..len)
            .map(|i| if hit(i) { to } else { old.apply(i) })
            .collect()
    };
    let (p0, p1, p2) = (
        c.objects().partition().clone(),
        c.arrows().partition().clone(),
        c.pairs().partition().clone(),
    );
    if let Some(t) = other_arrow {
        let map = remap(
            c.objects().len(),
            c.op(Op::Id),
            &|x| c.objects().eq(x, 0),
            t,
        );
        out.push((Op::Id, ExtFun::new(p0.clone(), p1.clone(), map)));
        if let Some(u) = unit_pair {
            for op in [Op::Cmp, Op::Fst, Op::Snd] {
                let map = remap(c.pairs().len(), c.op(op), &|v| c.pairs().eq(v, u), t);
                out.push((op, ExtFun::new(p2.clone(), p1.clone(), map)));
            }
        }
    }
    if let Some(y) = other_object {
        for op in [Op::Dom, Op::Cod] {
            let map = remap(c.arrows().len(), c.op(op), &|f| c.arrows().eq(f, id0), y);
            out.push((op, ExtFun::new(p1.clone(), p0.clone(), map)));
        }
    }
    out.into_iter()
        .filter_map(|(op, f)| Some((op, c.with_op(op, f.ok()?).ok()?)))
        .collect()
}

fn leaf_term<R: Rng + ?Sized>(rng: &mut R, scope: &[String], atoms: &[String]) -> Term {
    loop {
        match rng.gen_range(0..6) {
            0 | 1 if !scope.is_empty() => {
                return Term::Var(scope.choose(rng).expect("non-empty").clone())
            }
            2 if !atoms.is_empty() => {
                return Term::AtomLit(atoms.choose(rng).expect("non-empty").clone())
            }
            3 => return Term::OmegaApprox(rng.gen_range(0..=1)),
            4 => return Term::AtomsSet,
            5 => return Term::SetLit(Vec::new()),
            _ => {}
        }
    }
}

/// A term of nesting depth at most `depth` whose free variables lie in
/// `scope`. Function-set arguments are kept to literal leaves.
pub fn random_term<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    scope: &mut Vec<String>,
    atoms: &[String],
) -> Term {
    if depth == 0 {
        return leaf_term(rng, scope, atoms);
    }
    let d = depth - 1;
    match rng.gen_range(0..9) {
        0 => leaf_term(rng, scope, atoms),
        1 | 2 => {
            let n = rng.gen_range(0..=3);
            Term::SetLit((0..n).map(|_| random_term(rng, d, scope, atoms)).collect())
        }
        3 => Term::KPair(
            Box::new(random_term(rng, d, scope, atoms)),
            Box::new(random_term(rng, d, scope, atoms)),
        ),
        4 => Term::Union(Box::new(random_term(rng, d, scope, atoms))),
        5 => Term::Succ(Box::new(random_term(rng, d, scope, atoms))),
        6 => {
            let small = |rng: &mut R, scope: &mut Vec<String>| {
                let n = rng.gen_range(0..=2);
                Term::SetLit((0..n).map(|_| leaf_term(rng, scope, atoms)).collect())
            };
            let a = small(rng, scope);
            Term::FuncSet(Box::new(a), Box::new(small(rng, scope)))
        }
        _ => {
            let bound = random_term(rng, d, scope, atoms);
            let var = format!("x{}", scope.len());
            scope.push(var.clone());
            let body = random_formula(rng, d, scope, atoms);
            scope.pop();
            Term::Sep {
                var,
                bound: Box::new(bound),
                body: Box::new(body),
            }
        }
    }
}

/// A bounded formula of nesting depth at most `depth` over `scope`.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    scope: &mut Vec<String>,
    atoms: &[String],
) -> Formula {
    let d = depth.saturating_sub(1);
    let term = |rng: &mut R, scope: &mut Vec<String>| random_term(rng, d.min(1), scope, atoms);
    let pick = if depth == 0 {
        rng.gen_range(0..6)
    } else {
        rng.gen_range(0..12)
    };
    match pick {
        0 => {
            let a = term(rng, scope);
            Formula::Eq(a, term(rng, scope))
        }
        1 => {
            let a = term(rng, scope);
            Formula::Mem(a, term(rng, scope))
        }
        2 => Formula::IsSet(term(rng, scope)),
        3 => Formula::IsAtom(term(rng, scope)),
        4 => Formula::True,
        5 => Formula::False,
        6 => Formula::Not(Box::new(random_formula(rng, d, scope, atoms))),
        7 => Formula::And(
            Box::new(random_formula(rng, d, scope, atoms)),
            Box::new(random_formula(rng, d, scope, atoms)),
        ),
        8 => Formula::Or(
            Box::new(random_formula(rng, d, scope, atoms)),
            Box::new(random_formula(rng, d, scope, atoms)),
        ),
        9 => Formula::Implies(
            Box::new(random_formula(rng, d, scope, atoms)),
            Box::new(random_formula(rng, d, scope, atoms)),
        ),
        q => {
            let bound = term(rng, scope);
            let var = format!("x{}", scope.len());
            scope.push(var.clone());
            let body = Box::new(random_formula(rng, d, scope, atoms));
            scope.pop();
            if q == 10 {
                Formula::AllIn { var, bound, body }
            } else {
                Formula::ExIn { var, bound, body }
            }
        }
    }
}

const HOLE: &str = "zzhole";

/// Formula text containing at least one quantifier with its `in` bound
/// removed, placed at a random position inside a random bounded formula.
pub fn unbounded_formula_text<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    atoms: &[String],
) -> String {
    let mut scope = Vec::new();
    let outer = random_formula(rng, depth, &mut scope, atoms);
    let var = format!("y{}", rng.gen_range(0..10));
    scope.push(var.clone());
    let body = random_formula(rng, depth.min(2), &mut scope, atoms);
    let q = if rng.gen_bool(0.5) { "all" } else { "ex" };
    let unbounded = format!("({q} {var} . {body})");
    let hole = Formula::IsSet(Term::Var(HOLE.to_string()));
    let host = match rng.gen_range(0..4) {
        0 => hole.clone(),
        1 => Formula::And(Box::new(outer), Box::new(hole.clone())),
        2 => Formula::Implies(Box::new(hole.clone()), Box::new(outer)),
        _ => Formula::Not(Box::new(Formula::Or(
            Box::new(hole.clone()),
            Box::new(outer),
        ))),
    };
    host.to_string().replace(&hole.to_string(), &unbounded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{build_cat, check_category};
    use crate::iterset::eq_v;
    use crate::lang::parse_formula;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn variants_are_equal() {
        let mut rng = StdRng::seed_from_u64(7);
        let table = AtomTable::parse_spec("a b | c").unwrap();
        let atoms: Vec<String> = table.carrier().map(str::to_string).collect();
        for _ in 0..200 {
            let u = random_tree(&mut rng, 3, 3, &atoms);
            assert!(eq_v(&table, &u, &equal_variant(&mut rng, &u, &table)));
        }
    }

    #[test]
    fn families_build_categories() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10 {
            let fam = random_family(&mut rng, 3, 3);
            assert!(fam.index().len() <= 3);
            let c = build_cat(&fam).unwrap();
            assert!(check_category(&c.cat).passed());
            for (op, m) in op_mutants(&c.cat) {
                assert!(!check_category(&m).passed(), "{op} mutant passed");
            }
        }
    }

    #[test]
    fn unbounded_text_is_rejected() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let text = unbounded_formula_text(&mut rng, 2, &["a".to_string()]);
            assert!(parse_formula(&text).is_err(), "{text}");
        }
    }
}
