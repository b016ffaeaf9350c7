use std::collections::HashMap;
use std::time::{Duration, Instant};

use czfu_cli::{run_captured, EXIT_USAGE};
use czfu_core::category::{build_cat, check_category, check_generator, Elements, AXIOM_NAMES};
use czfu_core::gen::{
    equal_variant, op_mutants, random_family, random_term, random_tree, tree_pair,
    unbounded_formula_text,
};
use czfu_core::iterset::{canonicalize, eq_v, mem_v, parse_set, rank, AtomTable, VSet};
use czfu_core::lang::parse_term;
use czfu_core::model::{
    check_main_iso, czfu_suite, eval_term, funcset, is_total_functional, kpair, rbar_family,
    rep_bijection, universe, Env, SuiteConfig,
};
use czfu_core::pullback::{base_preset, pullback_report, DEFAULT_CARRIER_CAP, PRESETS};
use czfu_core::report::Status;
use czfu_core::setoid::{
    mk_extfun, mk_family, ExtFun, FamilyLaw, FinSetoid, SetoidError, SetoidFamily,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn naive_eq(t: &AtomTable, u: &VSet, v: &VSet) -> bool {
    match (u.children(), v.children()) {
        (None, None) => t.same_class(u.atom_id().unwrap(), v.atom_id().unwrap()),
        (Some(a), Some(b)) => {
            a.iter().all(|x| b.iter().any(|y| naive_eq(t, x, y)))
                && b.iter().all(|y| a.iter().any(|x| naive_eq(t, x, y)))
        }
        _ => false,
    }
}

fn naive_mem(t: &AtomTable, x: &VSet, u: &VSet) -> bool {
    u.children()
        .is_some_and(|cs| cs.iter().any(|c| naive_eq(t, x, c)))
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail} in {:.2}s", took.as_secs_f64()))
    } else {
        Err(format!(
            "{detail} but took {:.2}s, over {}s",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sample() -> Vec<(AtomTable, VSet, VSet)> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let atoms = AtomTable::parse_spec("a b | c").unwrap();
    let pure = AtomTable::empty();
    (0..10_000)
        .map(|i| {
            let t = if i % 2 == 0 {
                atoms.clone()
            } else {
                pure.clone()
            };
            let rank = rng.gen_range(0..=4);
            let breadth = rng.gen_range(1..=3);
            let (u, v) = tree_pair(&mut rng, rank, breadth, &t);
            (t, u, v)
        })
        .collect()
}

fn bisimulation_oracle(sample: &[(AtomTable, VSet, VSet)], generated: Duration) -> Outcome {
    let start = Instant::now() - generated;
    let mut mismatches = 0;
    let mut equal = 0;
    for (t, u, v) in sample {
        let canon = canonicalize(t, u) == canonicalize(t, v);
        let naive = naive_eq(t, u, v);
        equal += naive as usize;
        mismatches += (canon != naive || eq_v(t, u, v) != naive) as usize;
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches"))?;
    ensure(equal > 1000 && equal < sample.len() - 1000, || {
        format!("unbalanced sample: {equal} equal")
    })?;
    within(
        Duration::from_secs(10),
        start,
        format!("{} pairs, {equal} equal, 0 mismatches", sample.len()),
    )
}

fn equivalence_and_extensionality(sample: &[(AtomTable, VSet, VSet)]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut triples = 0;
    for (i, (t, u, v)) in sample.iter().enumerate() {
        ensure(eq_v(t, u, u) && eq_v(t, v, v), || {
            format!("reflexivity fails at pair {i}")
        })?;
        ensure(eq_v(t, u, v) == eq_v(t, v, u), || {
            format!("symmetry fails at pair {i}")
        })?;
        let (_, w0, _) = &sample[(i + 1) % sample.len()];
        for w in [equal_variant(&mut rng, v, t), w0.clone()] {
            if eq_v(t, u, v) && eq_v(t, v, &w) {
                triples += 1;
                ensure(eq_v(t, u, &w), || format!("transitivity fails at pair {i}"))?;
            }
        }
        if let (Some(a), Some(b)) = (u.children(), v.children()) {
            let same_members = a.iter().all(|x| mem_v(t, x, v)) && b.iter().all(|y| mem_v(t, y, u));
            let naive_members =
                a.iter().all(|x| naive_mem(t, x, v)) && b.iter().all(|y| naive_mem(t, y, u));
            ensure(same_members == naive_members, || {
                format!("membership disagrees at pair {i}")
            })?;
            ensure(eq_v(t, u, v) == same_members, || {
                format!("extensionality fails at pair {i}")
            })?;
        }
    }
    Ok(format!(
        "{} pairs, {triples} transitive chains",
        sample.len()
    ))
}

fn law_witness_holds(fam_parts: &Parts, err: &SetoidError, law: FamilyLaw) -> bool {
    let (_, fibers, t) = fam_parts;
    match err {
        SetoidError::FamilyLaw {
            law: l,
            indices,
            element,
        } if *l == law => match (law, indices.as_slice()) {
            (FamilyLaw::F1, &[x]) => !fibers[x].eq(t[&(x, x)].apply(*element), *element),
            (FamilyLaw::F3, &[x, y, z]) => {
                let e = *element;
                !fibers[z].eq(t[&(y, z)].apply(t[&(x, y)].apply(e)), t[&(x, z)].apply(e))
            }
            _ => false,
        },
        _ => false,
    }
}

type Parts = (
    FinSetoid<String>,
    Vec<FinSetoid<String>>,
    HashMap<(usize, usize), ExtFun>,
);

fn swap_parts(n: usize, swapped: &[(usize, usize)]) -> Parts {
    let index = FinSetoid::codiscrete((0..n).map(|i| format!("p{i}")).collect());
    let fib = FinSetoid::discrete(vec!["0".to_string(), "1".to_string()]);
    let id = mk_extfun(&fib, &fib, vec![0, 1]).unwrap();
    let sw = mk_extfun(&fib, &fib, vec![1, 0]).unwrap();
    let mut t = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            let f = if swapped.contains(&(x, y)) {
                sw.clone()
            } else {
                id.clone()
            };
            t.insert((x, y), f);
        }
    }
    (index, vec![fib; n], t)
}

fn family_laws() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let t = AtomTable::parse_spec("a b | c").unwrap();
    let atoms: Vec<String> = t.carrier().map(str::to_string).collect();
    let mut slices = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let mut slice: Vec<VSet> = Vec::new();
        while slice.len() < n {
            let x = if !slice.is_empty() && rng.gen_bool(0.4) {
                let i = rng.gen_range(0..slice.len());
                equal_variant(&mut rng, &slice[i], &t)
            } else {
                VSet::sup(
                    (0..rng.gen_range(0..=3))
                        .map(|_| random_tree(&mut rng, 2, 3, &atoms))
                        .collect(),
                )
            };
            slice.push(x);
        }
        ensure(slice.iter().all(|x| rank(x) <= 3), || {
            "slice rank over 3".into()
        })?;
        let fam = rbar_family(&t, &slice).map_err(|e| format!("rbar_family rejected: {e}"))?;
        mk_family(
            fam.index().clone(),
            fam.fibers().to_vec(),
            fam.transports().clone(),
        )
        .map_err(|e| format!("mk_family rejected a rbar family: {e}"))?;
        slices += 1;
    }
    let mut mutants: Vec<(&str, Parts, FamilyLaw)> = vec![
        (
            "identity transport swaps",
            swap_parts(1, &[(0, 0)]),
            FamilyLaw::F1,
        ),
        ("round trip swaps", swap_parts(2, &[(0, 1)]), FamilyLaw::F3),
        (
            "one leg of a triangle swaps",
            swap_parts(3, &[(1, 2), (2, 1)]),
            FamilyLaw::F3,
        ),
    ];
    let rt = AtomTable::empty();
    let s = vec![
        parse_set("{{},{{}}}", &rt).unwrap(),
        parse_set("{{{}},{}}", &rt).unwrap(),
    ];
    let fam: SetoidFamily<VSet, VSet> = rbar_family(&rt, &s).unwrap();
    let mut tr = fam.transports().clone();
    let bad = tr[&(0, 1)].map().iter().map(|&i| 1 - i).collect();
    tr.insert((0, 1), mk_extfun(fam.fiber(0), fam.fiber(1), bad).unwrap());
    let relabel = |f: &FinSetoid<VSet>| f.map_carrier(|v| canonicalize(&rt, v).into_string());
    mutants.push((
        "child map of two equal sets misaligned",
        (
            relabel(fam.index()),
            fam.fibers().iter().map(relabel).collect(),
            tr,
        ),
        FamilyLaw::F3,
    ));
    for (name, parts, law) in &mutants {
        let err = match mk_family(parts.0.clone(), parts.1.clone(), parts.2.clone()) {
            Ok(_) => return Err(format!("mutant accepted: {name}")),
            Err(e) => e,
        };
        ensure(law_witness_holds(parts, &err, *law), || {
            format!("wrong witness for {name}: {err}")
        })?;
    }
    Ok(format!(
        "{slices} slices accepted, {} mutants rejected with valid witnesses",
        mutants.len()
    ))
}

fn generated_families(count: usize) -> Vec<SetoidFamily<String, String>> {
    let mut rng = StdRng::seed_from_u64(4);
    (0..count).map(|_| random_family(&mut rng, 3, 3)).collect()
}

fn small_categories(fams: &[SetoidFamily<String, String>]) -> Outcome {
    let start = Instant::now();
    let mut mutants = 0;
    let mut arrows = 0;
    for (i, fam) in fams.iter().enumerate() {
        let c = build_cat(fam).map_err(|e| format!("family {i}: {e}"))?;
        arrows += c.cat.arrows().len();
        let r = check_category(&c.cat);
        let names: Vec<&str> = r.entries.iter().map(|e| e.name.as_str()).collect();
        ensure(names == AXIOM_NAMES, || {
            format!("family {i}: axioms reported {names:?}")
        })?;
        ensure(r.passed(), || format!("family {i}:\n{r}"))?;
        for (op, m) in op_mutants(&c.cat) {
            mutants += 1;
            ensure(!check_category(&m).passed(), || {
                format!("family {i}: {op} mutant passes")
            })?;
        }
    }
    ensure(mutants >= fams.len(), || format!("only {mutants} mutants"))?;
    within(
        Duration::from_secs(60),
        start,
        format!(
            "{} families ({arrows} arrows), {mutants} mutants all caught",
            fams.len()
        ),
    )
}

fn generator_properties(fams: &[SetoidFamily<String, String>]) -> Outcome {
    let mut checked = 0;
    for (i, fam) in fams.iter().enumerate() {
        let fam = fam
            .adjoin("1".to_string(), FinSetoid::discrete(vec!["*".to_string()]))
            .map_err(|e| e.to_string())?;
        let terminal = fam.index().len() - 1;
        let c = build_cat(&fam).map_err(|e| e.to_string())?;
        let r = check_generator(&c.cat, terminal);
        ensure(
            r.passed() && r.entries.iter().all(|e| e.status == Status::Pass),
            || format!("family {i}:\n{r}"),
        )?;
        let el = Elements::new(&c.cat, Some(terminal));
        for (f, a) in c.arrows.iter().enumerate() {
            ensure(el.is_mono(f) == a.fun.is_injective(), || {
                format!("family {i}: mono != injective at {f}")
            })?;
            let onto = el.is_onto(f).map_err(|e| e.to_string())?;
            ensure(onto == a.fun.is_surjective(), || {
                format!("family {i}: onto != surjective at {f}")
            })?;
            if onto && el.is_mono(f) {
                let g = el
                    .find_inverse(f)
                    .ok_or_else(|| format!("family {i}: no inverse for {f}"))?;
                ensure(
                    c.cat.compose(f, g).is_some() && c.cat.compose(g, f).is_some(),
                    || format!("family {i}: inverse {g} of {f} does not compose"),
                )?;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{} categories, {checked} arrows classified",
        fams.len()
    ))
}

fn chosen_pullbacks() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    for name in PRESETS {
        let base = base_preset(name).map_err(|e| e.to_string())?;
        ensure(
            base.index().len() <= 2 && base.fibers().iter().all(|f| f.len() <= 2),
            || format!("preset {name} exceeds the base bounds"),
        )?;
        let r =
            pullback_report(&base, 1, DEFAULT_CARRIER_CAP).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.passed(), || format!("{name}:\n{r}"))?;
        let squares = r
            .entry("pullback squares")
            .and_then(|e| e.detail.clone())
            .unwrap_or_default();
        let (ok, total) = squares
            .split(' ')
            .next()
            .unwrap_or("")
            .split_once('/')
            .unwrap_or(("", "?"));
        ensure(ok == total, || format!("{name}: {squares}"))?;
        ensure(
            r.entry("extensional in the cospan")
                .is_some_and(|e| e.status == Status::Pass),
            || format!("{name}: extensionality not confirmed"),
        )?;
        details.push(format!("{name} {ok}/{total}"));
    }
    within(Duration::from_secs(120), start, details.join(", "))
}

fn category_of_sets() -> Outcome {
    let start = Instant::now();
    let pure = AtomTable::empty();
    let sets: Vec<VSet> = ["{}", "{{}}", "{{{}}}", "{{},{{}}}"]
        .iter()
        .map(|s| parse_set(s, &pure).unwrap())
        .collect();
    let mut slices: Vec<(AtomTable, Vec<VSet>)> = (1u32..16)
        .map(|mask| {
            let s = (0..4)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| sets[i].clone())
                .collect();
            (pure.clone(), s)
        })
        .collect();
    let repeated = ["{{},{}}", "{}", "{{{}},{}}", "{{},{{}}}"];
    slices.push((
        pure.clone(),
        repeated
            .iter()
            .map(|s| parse_set(s, &pure).unwrap())
            .collect(),
    ));
    let at = AtomTable::parse_spec("a b | c").unwrap();
    let with_atoms = ["{#a,#c}", "{#b,#c,#a}", "{{}}", "{}"];
    slices.push((
        at.clone(),
        with_atoms
            .iter()
            .map(|s| parse_set(s, &at).unwrap())
            .collect(),
    ));
    for (t, s) in &slices {
        let r = check_main_iso(t, s).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("slice of {}:\n{r}", s.len()))?;
        for name in [
            "family category axioms",
            "category of sets axioms",
            "F1 bijective",
        ] {
            ensure(
                r.entry(name).is_some_and(|e| e.status == Status::Pass),
                || format!("{name} missing"),
            )?;
        }
    }
    within(
        Duration::from_secs(120),
        start,
        format!("{} slices", slices.len()),
    )
}

fn naive_total_functional(t: &AtomTable, z: &[VSet], u: &VSet, v: &VSet) -> bool {
    let xs = u.children().unwrap();
    let ys = v.children().unwrap();
    let has = |x: &VSet, y: &VSet| z.iter().any(|p| naive_eq(t, p, &kpair(x, y)));
    xs.iter().all(|x| ys.iter().any(|y| has(x, y)))
        && xs.iter().all(|x| {
            ys.iter().all(|y1| {
                ys.iter()
                    .all(|y2| !(has(x, y1) && has(x, y2)) || naive_eq(t, y1, y2))
            })
        })
}

fn function_sets() -> Outcome {
    let t = AtomTable::parse_spec("a b | c").unwrap();
    let all: Vec<VSet> = universe(2, 2, &t)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|x| x.is_set() && x.children().unwrap().len() <= 2)
        .collect();
    let mut pairs = 0;
    let mut graphs = 0;
    for u in &all {
        for v in &all {
            let fs = funcset(&t, u, v).map_err(|e| e.to_string())?;
            let product: Vec<VSet> = u
                .children()
                .unwrap()
                .iter()
                .flat_map(|x| v.children().unwrap().iter().map(move |y| kpair(x, y)))
                .collect();
            for mask in 0u32..(1 << product.len()) {
                let z: Vec<VSet> = (0..product.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| product[i].clone())
                    .collect();
                let naive = naive_total_functional(&t, &z, u, v);
                let zs = VSet::sup(z.clone());
                let lib = is_total_functional(&t, &zs, u, v).map_err(|e| e.to_string())?;
                ensure(mem_v(&t, &zs, &fs) == naive && lib == naive, || {
                    format!(
                        "z={} u={} v={}: naive {naive}, library {lib}",
                        canonicalize(&t, &zs).as_str(),
                        canonicalize(&t, u).as_str(),
                        canonicalize(&t, v).as_str()
                    )
                })?;
                graphs += 1;
            }
            let r = rep_bijection(&t, u, v).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("rep_bijection:\n{r}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, {graphs} candidate graphs"))
}

fn czfu_model() -> Outcome {
    let start = Instant::now();
    let cfg = SuiteConfig::new(2, 2, AtomTable::parse_spec("a b | c").unwrap());
    let r = czfu_suite(&cfg).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("\n{r}"))?;
    for prefix in [
        "C1 ",
        "C2 ",
        "C3 ",
        "C4 ",
        "C5 ",
        "C6 ",
        "C7 ",
        "C8 ",
        "C9 ",
        "set of all atoms",
    ] {
        ensure(
            r.entries
                .iter()
                .any(|e| e.name.starts_with(prefix) && e.status == Status::Pass),
            || format!("{prefix} not confirmed"),
        )?;
    }
    ensure(
        r.entry("C10 infinity")
            .is_some_and(|e| e.status == Status::Approx),
        || "C10 not approximate".into(),
    )?;
    let o = run_captured(
        [
            "czfu",
            "axioms",
            "--rank",
            "2",
            "--breadth",
            "2",
            "--atoms",
            "a b | c",
        ],
        "",
    );
    ensure(o.code == 0, || format!("cli exit {}: {}", o.code, o.stderr))?;
    within(
        Duration::from_secs(60),
        start,
        format!("{} checks, cli exit 0", r.entries.len()),
    )
}

fn language_coherence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let t = AtomTable::parse_spec("a b | c").unwrap();
    let atoms: Vec<String> = t.carrier().map(str::to_string).collect();
    let mut values = 0;
    for i in 0..10_000 {
        let term = random_term(&mut rng, 4, &mut Vec::new(), &atoms);
        let text = term.to_string();
        let back = parse_term(&text).map_err(|e| format!("term {i} `{text}`: {e}"))?;
        match (
            eval_term(&t, &term, &Env::new()),
            eval_term(&t, &back, &Env::new()),
        ) {
            (Ok(x), Ok(y)) => {
                ensure(eq_v(&t, &x, &y), || {
                    format!("term {i} `{text}` changes value")
                })?;
                values += 1;
            }
            (Err(a), Err(b)) if a == b => {}
            (a, b) => return Err(format!("term {i} `{text}`: {a:?} vs {b:?}")),
        }
    }
    let mut rejected = 0;
    for i in 0..1_000 {
        let text = unbounded_formula_text(&mut rng, 2, &atoms);
        let o = run_captured(["czfu", "check", text.as_str()], "");
        ensure(o.code == EXIT_USAGE, || {
            format!("input {i} `{text}` exited {}", o.code)
        })?;
        rejected += 1;
    }
    Ok(format!(
        "10000 round trips ({values} with values), {rejected} unbounded inputs rejected"
    ))
}

#[test]
fn acceptance() {
    let t0 = Instant::now();
    let sample = sample();
    let generated = t0.elapsed();
    let families = generated_families(30);
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (
            "1 bisimulation oracle",
            Box::new(|| bisimulation_oracle(&sample, generated)),
        ),
        (
            "2 equivalence and extensionality",
            Box::new(|| equivalence_and_extensionality(&sample)),
        ),
        ("3 family laws", Box::new(family_laws)),
        (
            "4 small categories",
            Box::new(|| small_categories(&families)),
        ),
        (
            "5 terminal object and strong generator",
            Box::new(|| generator_properties(&families)),
        ),
        ("6 chosen pullbacks", Box::new(chosen_pullbacks)),
        (
            "7 category of sets and main isomorphism",
            Box::new(category_of_sets),
        ),
        ("8 function sets", Box::new(function_sets)),
        ("9 CZFU model", Box::new(czfu_model)),
        ("10 language coherence", Box::new(language_coherence)),
    ];
    let mut failed = Vec::new();
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
