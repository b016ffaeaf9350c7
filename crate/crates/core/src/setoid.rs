//! Finite setoids, extensional functions between them, and proof-irrelevant
//! families of setoids with transport.
//!
//! Elements are addressed by their position in a setoid's carrier. Equality
//! is stored as a [`Partition`] of positions; an [`ExtFun`] only needs the
//! partitions of its domain and codomain, never the element values.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceLaw {
    Reflexivity,
    Symmetry,
    Transitivity,
}

impl fmt::Display for EquivalenceLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivalenceLaw::Reflexivity => "reflexivity",
            EquivalenceLaw::Symmetry => "symmetry",
            EquivalenceLaw::Transitivity => "transitivity",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyLaw {
    /// `F(x,x)` is pointwise the identity.
    F1,
    /// `F(y,z) ∘ F(x,y)` is pointwise `F(x,z)`.
    F3,
}

impl fmt::Display for FamilyLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyLaw::F1 => "F1'",
            FamilyLaw::F3 => "F3'",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetoidError {
    #[error("not an equivalence: {law} fails at {witness:?}")]
    NotAnEquivalence {
        law: EquivalenceLaw,
        witness: Vec<usize>,
    },
    #[error("map has {got} entries, domain has {expected} elements")]
    NotTotal { expected: usize, got: usize },
    #[error("map sends {from} to {to}, outside a codomain of size {size}")]
    OutOfRange { from: usize, to: usize, size: usize },
    #[error("not extensional: {x} and {y} are equal but their images are not")]
    NotExtensional { x: usize, y: usize },
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("{count} functions exceed the cap of {cap}")]
    TooMany { count: u128, cap: usize },
    #[error("family has {fibers} fibers for an index of size {index}")]
    FiberCount { index: usize, fibers: usize },
    #[error("no transport for equal indices ({0}, {1})")]
    MissingTransport(usize, usize),
    #[error("transport given for unequal indices ({0}, {1})")]
    UnexpectedTransport(usize, usize),
    #[error("transport ({0}, {1}) has the wrong signature")]
    TransportSignature(usize, usize),
    #[error("family law {law} fails at indices {indices:?}, fiber element {element}")]
    FamilyLaw {
        law: FamilyLaw,
        indices: Vec<usize>,
        element: usize,
    },
    #[error("indices {0} and {1} are not equal")]
    NotEqual(usize, usize),
}

/// An equivalence relation on `0..len`, stored as class labels numbered in
/// order of first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    class: Vec<usize>,
    classes: usize,
}

impl Partition {
    /// Relabels arbitrary keys into first-occurrence class numbers.
    pub fn from_keys<K: Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let class: Vec<usize> = keys
            .into_iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k).or_insert(next)
            })
            .collect();
        Partition {
            classes: ids.len(),
            class,
        }
    }

    pub fn discrete(len: usize) -> Self {
        Partition {
            class: (0..len).collect(),
            classes: len,
        }
    }

    pub fn len(&self) -> usize {
        self.class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class.is_empty()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class[i]
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.class[i] == self.class[j]
    }

    /// Members of each class, classes in label order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes];
        for (i, &c) in self.class.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

/// A finite carrier with a decidable equivalence relation.
#[derive(Debug, Clone)]
pub struct FinSetoid<T> {
    carrier: Vec<T>,
    eq: Arc<Partition>,
}

/// Builds a setoid after checking exhaustively that `eq` is an equivalence.
pub fn mk_setoid<T>(
    carrier: Vec<T>,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<FinSetoid<T>, SetoidError> {
    let n = carrier.len();
    // Greedy classes against representatives, then compare the full relation
    // with the partition it induces.
    let mut reps: Vec<usize> = Vec::new();
    let mut class = vec![0; n];
    for i in 0..n {
        match reps.iter().position(|&r| eq(&carrier[r], &carrier[i])) {
            Some(c) => class[i] = c,
            None => {
                class[i] = reps.len();
                reps.push(i);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if eq(&carrier[i], &carrier[j]) != (class[i] == class[j]) {
                return Err(equivalence_witness(&carrier, &eq));
            }
        }
    }
    Ok(FinSetoid {
        carrier,
        eq: Arc::new(Partition {
            class,
            classes: reps.len(),
        }),
    })
}

fn equivalence_witness<T>(carrier: &[T], eq: &impl Fn(&T, &T) -> bool) -> SetoidError {
    let n = carrier.len();
    if let Some(i) = carrier.iter().position(|x| !eq(x, x)) {
        return SetoidError::NotAnEquivalence {
            law: EquivalenceLaw::Reflexivity,
            witness: vec![i],
        };
    }
    for i in 0..n {
        for j in 0..n {
            if eq(&carrier[i], &carrier[j]) && !eq(&carrier[j], &carrier[i]) {
                return SetoidError::NotAnEquivalence {
                    law: EquivalenceLaw::Symmetry,
                    witness: vec![i, j],
                };
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !eq(&carrier[i], &carrier[j]) {
                continue;
            }
            for k in 0..n {
                if eq(&carrier[j], &carrier[k]) && !eq(&carrier[i], &carrier[k]) {
                    return SetoidError::NotAnEquivalence {
                        law: EquivalenceLaw::Transitivity,
                        witness: vec![i, j, k],
                    };
                }
            }
        }
    }
    unreachable!("relation disagrees with its greedy partition yet satisfies all three laws")
}

impl<T> FinSetoid<T> {
    /// Equality is equality of `key`, hence an equivalence by construction.
    pub fn from_key<K: Hash + Eq>(carrier: Vec<T>, key: impl Fn(&T) -> K) -> Self {
        let eq = Partition::from_keys(carrier.iter().map(key));
        FinSetoid {
            carrier,
            eq: Arc::new(eq),
        }
    }

    pub fn from_partition(carrier: Vec<T>, eq: Arc<Partition>) -> Result<Self, SetoidError> {
        if carrier.len() != eq.len() {
            return Err(SetoidError::SignatureMismatch);
        }
        Ok(FinSetoid { carrier, eq })
    }

    pub fn discrete(carrier: Vec<T>) -> Self {
        let eq = Arc::new(Partition::discrete(carrier.len()));
        FinSetoid { carrier, eq }
    }

    /// Everything equal to everything.
    pub fn codiscrete(carrier: Vec<T>) -> Self {
        Self::from_key(carrier, |_| ())
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &[T] {
        &self.carrier
    }

    pub fn get(&self, i: usize) -> &T {
        &self.carrier[i]
    }

    pub fn eq(&self, i: usize, j: usize) -> bool {
        self.eq.related(i, j)
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.eq.class_of(i)
    }

    pub fn class_count(&self) -> usize {
        self.eq.class_count()
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.eq
    }

    pub fn map_carrier<S>(&self, f: impl Fn(&T) -> S) -> FinSetoid<S> {
        FinSetoid {
            carrier: self.carrier.iter().map(f).collect(),
            eq: self.eq.clone(),
        }
    }
}

impl<T: fmt::Display> FinSetoid<T> {
    pub fn labels(&self) -> FinSetoid<String> {
        self.map_carrier(|x| x.to_string())
    }
}

fn same_partition(a: &Arc<Partition>, b: &Arc<Partition>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A total map between carriers that sends equal elements to equal elements.
#[derive(Debug, Clone)]
pub struct ExtFun {
    dom: Arc<Partition>,
    cod: Arc<Partition>,
    map: Vec<usize>,
}

/// Builds an extensional function, checking totality and extensionality.
pub fn mk_extfun<A, B>(
    dom: &FinSetoid<A>,
    cod: &FinSetoid<B>,
    map: Vec<usize>,
) -> Result<ExtFun, SetoidError> {
    ExtFun::new(dom.partition().clone(), cod.partition().clone(), map)
}

impl ExtFun {
    pub fn new(
        dom: Arc<Partition>,
        cod: Arc<Partition>,
        map: Vec<usize>,
    ) -> Result<Self, SetoidError> {
        if map.len() != dom.len() {
            return Err(SetoidError::NotTotal {
                expected: dom.len(),
                got: map.len(),
            });
        }
        if let Some((from, &to)) = map.iter().enumerate().find(|(_, &t)| t >= cod.len()) {
            return Err(SetoidError::OutOfRange {
                from,
                to,
                size: cod.len(),
            });
        }
        // Equal inputs share a class, so comparing each element with the
        // first member of its class covers every equal pair.
        let mut first: Vec<Option<usize>> = vec![None; dom.class_count()];
        for x in 0..map.len() {
            let c = dom.class_of(x);
            match first[c] {
                None => first[c] = Some(x),
                Some(y) => {
                    if !cod.related(map[x], map[y]) {
                        return Err(SetoidError::NotExtensional { x: y, y: x });
                    }
                }
            }
        }
        Ok(ExtFun { dom, cod, map })
    }

    pub fn identity<T>(s: &FinSetoid<T>) -> Self {
        ExtFun {
            dom: s.partition().clone(),
            cod: s.partition().clone(),
            map: (0..s.len()).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn dom(&self) -> &Arc<Partition> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Partition> {
        &self.cod
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ExtFun) -> Result<ExtFun, SetoidError> {
        if !same_partition(&self.cod, &next.dom) {
            return Err(SetoidError::SignatureMismatch);
        }
        Ok(ExtFun {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        })
    }

    pub fn has_signature(&self, dom: &Arc<Partition>, cod: &Arc<Partition>) -> bool {
        same_partition(&self.dom, dom) && same_partition(&self.cod, cod)
    }

    /// Codomain classes of the images, which determine the function up to
    /// pointwise equality.
    pub fn image_classes(&self) -> Vec<usize> {
        self.map.iter().map(|&y| self.cod.class_of(y)).collect()
    }

    pub fn is_injective(&self) -> bool {
        let n = self.map.len();
        (0..n).all(|t| {
            (0..n).all(|u| !self.cod.related(self.map[t], self.map[u]) || self.dom.related(t, u))
        })
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.cod.len()).all(|s| self.map.iter().any(|&y| self.cod.related(y, s)))
    }
}

/// Pointwise equality of two functions with the same signature.
pub fn ext_eq(f: &ExtFun, g: &ExtFun) -> Result<bool, SetoidError> {
    if !f.has_signature(&g.dom, &g.cod) {
        return Err(SetoidError::SignatureMismatch);
    }
    Ok(f.map.iter().zip(&g.map).all(|(&x, &y)| f.cod.related(x, y)))
}

/// Number of extensional maps `a → b` (saturating).
pub fn count_extfuns(a: &Partition, b: &Partition) -> u128 {
    let b_sizes: Vec<u128> = b.members().iter().map(|m| m.len() as u128).collect();
    let mut total: u128 = 1;
    for class in a.members() {
        let k = class.len() as u32;
        let options = b_sizes
            .iter()
            .fold(0u128, |acc, &s| acc.saturating_add(s.saturating_pow(k)));
        total = total.saturating_mul(options);
    }
    total
}

/// Every extensional map `A → B`, each raw map exactly once.
pub fn enum_extfuns<A, B>(a: &FinSetoid<A>, b: &FinSetoid<B>) -> Vec<ExtFun> {
    enum_between(a.partition(), b.partition())
}

/// As [`enum_extfuns`], refusing when the count would exceed `cap`.
pub fn enum_extfuns_capped<A, B>(
    a: &FinSetoid<A>,
    b: &FinSetoid<B>,
    cap: usize,
) -> Result<Vec<ExtFun>, SetoidError> {
    let count = count_extfuns(a.partition(), b.partition());
    if count > cap as u128 {
        return Err(SetoidError::TooMany { count, cap });
    }
    Ok(enum_between(a.partition(), b.partition()))
}

pub(crate) fn enum_between(a: &Arc<Partition>, b: &Arc<Partition>) -> Vec<ExtFun> {
    // Per domain class: every choice of a codomain class and of members of it
    // for each element of the domain class.
    let b_members = b.members();
    let mut per_class: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::new();
    for class in a.members() {
        let mut options = Vec::new();
        for target in &b_members {
            let mut choice = vec![0usize; class.len()];
            loop {
                options.push(choice.iter().map(|&i| target[i]).collect::<Vec<_>>());
                // odometer
                let mut pos = 0;
                while pos < choice.len() {
                    choice[pos] += 1;
                    if choice[pos] < target.len() {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
                if pos == choice.len() {
                    break;
                }
            }
        }
        per_class.push((class, options));
    }
    if per_class.iter().any(|(_, o)| o.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; per_class.len()];
    loop {
        let mut map = vec![0usize; a.len()];
        for ((class, options), &p) in per_class.iter().zip(&pick) {
            for (&x, &y) in class.iter().zip(&options[p]) {
                map[x] = y;
            }
        }
        out.push(ExtFun {
            dom: a.clone(),
            cod: b.clone(),
            map,
        });
        let mut pos = 0;
        while pos < pick.len() {
            pick[pos] += 1;
            if pick[pos] < per_class[pos].1.len() {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
        if pos == pick.len() {
            break;
        }
    }
    out
}

/// A proof-irrelevant family of setoids over an index setoid. Transport is
/// keyed by the pair of index positions.
#[derive(Debug, Clone)]
pub struct SetoidFamily<T, U> {
    index: FinSetoid<T>,
    fibers: Vec<FinSetoid<U>>,
    transports: HashMap<(usize, usize), ExtFun>,
}

/// Builds a family after checking exhaustively that transports exist exactly
/// on equal index pairs and satisfy (F1') and (F3').
pub fn mk_family<T, U>(
    index: FinSetoid<T>,
    fibers: Vec<FinSetoid<U>>,
    transports: HashMap<(usize, usize), ExtFun>,
) -> Result<SetoidFamily<T, U>, SetoidError> {
    let n = index.len();
    if fibers.len() != n {
        return Err(SetoidError::FiberCount {
            index: n,
            fibers: fibers.len(),
        });
    }
    for &(x, y) in transports.keys() {
        if x >= n || y >= n || !index.eq(x, y) {
            return Err(SetoidError::UnexpectedTransport(x, y));
        }
    }
    let classes = index.partition().members();
    for class in &classes {
        for &x in class {
            for &y in class {
                let t = transports
                    .get(&(x, y))
                    .ok_or(SetoidError::MissingTransport(x, y))?;
                if !t.has_signature(fibers[x].partition(), fibers[y].partition()) {
                    return Err(SetoidError::TransportSignature(x, y));
                }
            }
        }
    }
    for class in &classes {
        for &x in class {
            let t = &transports[&(x, x)];
            if let Some(e) = (0..fibers[x].len()).find(|&e| !fibers[x].eq(t.apply(e), e)) {
                return Err(SetoidError::FamilyLaw {
                    law: FamilyLaw::F1,
                    indices: vec![x],
                    element: e,
                });
            }
        }
        for &x in class {
            for &y in class {
                let txy = &transports[&(x, y)];
                for &z in class {
                    let tyz = &transports[&(y, z)];
                    let txz = &transports[&(x, z)];
                    if let Some(e) = (0..fibers[x].len())
                        .find(|&e| !fibers[z].eq(tyz.apply(txy.apply(e)), txz.apply(e)))
                    {
                        return Err(SetoidError::FamilyLaw {
                            law: FamilyLaw::F3,
                            indices: vec![x, y, z],
                            element: e,
                        });
                    }
                }
            }
        }
    }
    Ok(SetoidFamily {
        index,
        fibers,
        transports,
    })
}

impl<T, U> SetoidFamily<T, U> {
    pub fn index(&self) -> &FinSetoid<T> {
        &self.index
    }

    pub fn fiber(&self, x: usize) -> &FinSetoid<U> {
        &self.fibers[x]
    }

    pub fn fibers(&self) -> &[FinSetoid<U>] {
        &self.fibers
    }

    pub fn transports(&self) -> &HashMap<(usize, usize), ExtFun> {
        &self.transports
    }

    /// The stored transport `F(x) → F(y)`; defined only when `x =_A y`.
    pub fn transport(&self, x: usize, y: usize) -> Result<&ExtFun, SetoidError> {
        self.transports
            .get(&(x, y))
            .ok_or(SetoidError::NotEqual(x, y))
    }

    /// Adds a new index element equal to nothing but itself.
    pub fn adjoin(&self, label: T, fiber: FinSetoid<U>) -> Result<Self, SetoidError>
    where
        T: Clone,
        U: Clone,
    {
        let mut carrier = self.index.carrier().to_vec();
        let n = carrier.len();
        carrier.push(label);
        let mut keys: Vec<usize> = (0..n).map(|i| self.index.class_of(i)).collect();
        keys.push(self.index.class_count());
        let index = FinSetoid::from_partition(carrier, Arc::new(Partition::from_keys(keys)))?;
        let mut fibers = self.fibers.clone();
        let id = ExtFun::identity(&fiber);
        fibers.push(fiber);
        let mut transports = self.transports.clone();
        transports.insert((n, n), id);
        mk_family(index, fibers, transports)
    }
}

/// Constant family: every index carries `fiber`, every transport is the identity.
pub fn constant_family<T, U: Clone>(
    index: FinSetoid<T>,
    fiber: FinSetoid<U>,
) -> SetoidFamily<T, U> {
    let n = index.len();
    let mut transports = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            if index.eq(x, y) {
                transports.insert((x, y), ExtFun::identity(&fiber));
            }
        }
    }
    let fibers = vec![fiber; n];
    SetoidFamily {
        index,
        fibers,
        transports,
    }
}
