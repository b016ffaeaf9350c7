use std::collections::HashMap;

use crate::iterset::{make_atom, AtomTable, Bisim, VSet};
use crate::lang::{Formula, Term};

use super::{atoms_set, funcset, kpair, omega_approx, set_children, succ, union_set, ModelError};

/// Variable bindings.
#[derive(Debug, Clone, Default)]
pub struct Env {
    bindings: HashMap<String, VSet>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, value: VSet) {
        self.bindings.insert(name.into(), value);
    }

    pub fn with(mut self, name: impl Into<String>, value: VSet) -> Self {
        self.bind(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&VSet> {
        self.bindings.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }
}

/// Evaluates terms and bounded formulas, sharing one bisimulation cache.
pub struct Evaluator<'t> {
    table: &'t AtomTable,
    bisim: Bisim<'t>,
    scope: Vec<(String, VSet)>,
}

impl<'t> Evaluator<'t> {
    pub fn new(table: &'t AtomTable) -> Self {
        Evaluator {
            table,
            bisim: Bisim::new(table),
            scope: Vec::new(),
        }
    }

    fn lookup(&self, name: &str, env: &Env) -> Result<VSet, ModelError> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.clone())
            .or_else(|| env.get(name).cloned())
            .ok_or_else(|| ModelError::Unbound(name.to_string()))
    }

    pub fn term(&mut self, t: &Term, env: &Env) -> Result<VSet, ModelError> {
        Ok(match t {
            Term::Var(v) => self.lookup(v, env)?,
            Term::AtomLit(id) => make_atom(id, self.table)?,
            Term::SetLit(ts) => VSet::sup(
                ts.iter()
                    .map(|t| self.term(t, env))
                    .collect::<Result<_, _>>()?,
            ),
            Term::KPair(a, b) => {
                let a = self.term(a, env)?;
                kpair(&a, &self.term(b, env)?)
            }
            Term::Union(t) => union_set(&self.term(t, env)?)?,
            Term::Sep { var, bound, body } => {
                let u = self.term(bound, env)?;
                self.separate(&u, var, body, env)?
            }
            Term::FuncSet(a, b) => {
                let a = self.term(a, env)?;
                funcset(self.table, &a, &self.term(b, env)?)?
            }
            Term::Succ(t) => succ(&self.term(t, env)?),
            Term::OmegaApprox(n) => omega_approx(*n)?,
            Term::AtomsSet => atoms_set(self.table),
        })
    }

    pub fn separate(
        &mut self,
        u: &VSet,
        var: &str,
        phi: &Formula,
        env: &Env,
    ) -> Result<VSet, ModelError> {
        let mut kept = Vec::new();
        for x in set_children(u)? {
            if self.with_binding(var, x, |ev| ev.formula(phi, env))? {
                kept.push(x.clone());
            }
        }
        Ok(VSet::sup(kept))
    }

    fn with_binding<R>(
        &mut self,
        var: &str,
        x: &VSet,
        f: impl FnOnce(&mut Self) -> Result<R, ModelError>,
    ) -> Result<R, ModelError> {
        self.scope.push((var.to_string(), x.clone()));
        let r = f(self);
        self.scope.pop();
        r
    }

    pub fn formula(&mut self, phi: &Formula, env: &Env) -> Result<bool, ModelError> {
        Ok(match phi {
            Formula::True => true,
            Formula::False => false,
            Formula::Eq(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                self.bisim.eq(&a, &b)
            }
            Formula::Mem(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                self.bisim.mem(&a, &b)
            }
            Formula::IsSet(t) => self.term(t, env)?.is_set(),
            Formula::IsAtom(t) => !self.term(t, env)?.is_set(),
            Formula::Not(p) => !self.formula(p, env)?,
            Formula::And(p, q) => self.formula(p, env)? && self.formula(q, env)?,
            Formula::Or(p, q) => self.formula(p, env)? || self.formula(q, env)?,
            Formula::Implies(p, q) => !self.formula(p, env)? || self.formula(q, env)?,
            Formula::AllIn { var, bound, body } => {
                let u = self.term(bound, env)?;
                for x in u.children().unwrap_or(&[]) {
                    if !self.with_binding(var, x, |ev| ev.formula(body, env))? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::ExIn { var, bound, body } => {
                let u = self.term(bound, env)?;
                for x in u.children().unwrap_or(&[]) {
                    if self.with_binding(var, x, |ev| ev.formula(body, env))? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }
}

pub fn eval_term(table: &AtomTable, t: &Term, env: &Env) -> Result<VSet, ModelError> {
    Evaluator::new(table).term(t, env)
}

pub fn eval_formula(table: &AtomTable, phi: &Formula, env: &Env) -> Result<bool, ModelError> {
    Evaluator::new(table).formula(phi, env)
}

/// `{x ∈ u : φ(x)}` for a bounded `φ`.
pub fn separation(
    table: &AtomTable,
    u: &VSet,
    var: &str,
    phi: &Formula,
    env: &Env,
) -> Result<VSet, ModelError> {
    Evaluator::new(table).separate(u, var, phi, env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iterset::{canonicalize, eq_v, parse_set};
    use crate::lang::{parse_formula, parse_term};

    fn table() -> AtomTable {
        AtomTable::parse_spec("a b | c").unwrap()
    }

    fn holds(src: &str) -> bool {
        eval_formula(&table(), &parse_formula(src).unwrap(), &Env::new()).unwrap()
    }

    fn value(src: &str) -> String {
        let t = table();
        canonicalize(
            &t,
            &eval_term(&t, &parse_term(src).unwrap(), &Env::new()).unwrap(),
        )
        .into_string()
    }

    #[test]
    fn formulas() {
        assert!(holds("all x in {{}} . x = {}"));
        assert!(!holds("ex y in {} . true"));
        assert!(holds("atom(#a)"));
        assert!(!holds("set(#a)"));
        assert!(holds("#a = #b"));
        assert!(!holds("#a = #c"));
        assert!(holds("{} in {{}}"));
        assert!(!holds("{} in #a"));
        assert!(holds("all x in #a . false"));
        assert!(holds("false -> false -> false"));
        assert!(holds("~(true /\\ false) \\/ false"));
    }

    #[test]
    fn terms() {
        assert_eq!(value("{}"), "{}");
        assert_eq!(value("succ({})"), "{{},{{}}}");
        let f = eval_term(
            &table(),
            &parse_term("funcs({{}} , {{},{{}}})").unwrap(),
            &Env::new(),
        )
        .unwrap();
        assert_eq!(f.children().unwrap().len(), 2);
        assert_eq!(value("sep x in {{},{{}},#a} . atom(x)"), "{#a}");
        assert_eq!(value("union({<{},{}>})"), "{{{}}}");
        assert_eq!(value("atoms"), "{#a,#c}");
        assert_eq!(value("omega(1)"), "{{},{{},{{}}}}");
    }

    #[test]
    fn separation_extremes() {
        let t = table();
        let u = parse_set("{{},{{}},#a}", &t).unwrap();
        let all = separation(&t, &u, "x", &Formula::True, &Env::new()).unwrap();
        assert!(eq_v(&t, &all, &u));
        let none = separation(&t, &u, "x", &Formula::False, &Env::new()).unwrap();
        assert!(eq_v(&t, &none, &VSet::empty()));
        assert!(separation(
            &t,
            &VSet::atom_unchecked("a"),
            "x",
            &Formula::True,
            &Env::new()
        )
        .is_err());
    }

    #[test]
    fn environments_and_errors() {
        let t = table();
        let env = Env::new().with("u", parse_set("{{},#a}", &t).unwrap());
        let phi = parse_formula("ex x in u . atom(x)").unwrap();
        assert!(eval_formula(&t, &phi, &env).unwrap());
        let unbound = parse_formula("x = x").unwrap();
        assert_eq!(
            eval_formula(&t, &unbound, &Env::new()),
            Err(ModelError::Unbound("x".into()))
        );
        let shadow = parse_formula("all u in u . set(u)").unwrap();
        assert!(!eval_formula(&t, &shadow, &env).unwrap());
        assert!(eval_term(&t, &parse_term("#zz").unwrap(), &Env::new()).is_err());
        assert!(matches!(
            eval_term(&t, &parse_term("omega(99)").unwrap(), &Env::new()),
            Err(ModelError::SizeCap { .. })
        ));
    }
}
