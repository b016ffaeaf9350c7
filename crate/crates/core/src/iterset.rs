//! Well-founded set trees with atoms.
//!
//! A [`VSet`] is either a `sup` node over a finite sequence of children or an
//! atom drawn from an [`AtomTable`]. Child order and repetition are part of
//! the representation only; identity is the least bisimulation computed by
//! [`eq_v`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IterSetError {
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("atom `{0}` declared more than once")]
    DuplicateAtom(String),
    #[error("empty atom class in declaration")]
    EmptyClass,
    #[error("invalid atom identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

/// The setoid of urelements: identifiers partitioned into equality classes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomTable {
    classes: Vec<Vec<String>>,
    class_of: HashMap<String, usize>,
}

impl AtomTable {
    /// The table with no atoms; sets over it form the pure universe.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<C, I, S>(classes: C) -> Result<Self, IterSetError>
    where
        C: IntoIterator<Item = I>,
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = AtomTable::default();
        for class in classes {
            let mut members: Vec<String> = class.into_iter().map(Into::into).collect();
            if members.is_empty() {
                return Err(IterSetError::EmptyClass);
            }
            members.sort();
            let idx = table.classes.len();
            for m in &members {
                if !is_identifier(m) {
                    return Err(IterSetError::InvalidIdentifier(m.clone()));
                }
                if table.class_of.insert(m.clone(), idx).is_some() {
                    return Err(IterSetError::DuplicateAtom(m.clone()));
                }
            }
            table.classes.push(members);
        }
        Ok(table)
    }

    /// Every atom in its own class.
    pub fn discrete<S: Into<String>>(
        ids: impl IntoIterator<Item = S>,
    ) -> Result<Self, IterSetError> {
        Self::new(ids.into_iter().map(|id| vec![id.into()]))
    }

    /// Parses `"a b | c"`: whitespace separates members, `|` separates classes.
    pub fn parse_spec(spec: &str) -> Result<Self, IterSetError> {
        if spec.trim().is_empty() {
            return Ok(Self::empty());
        }
        let classes: Vec<Vec<&str>> = spec
            .split('|')
            .map(|c| c.split_whitespace().collect())
            .collect();
        Self::new(classes)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.class_of.contains_key(id)
    }

    pub fn class_of(&self, id: &str) -> Option<usize> {
        self.class_of.get(id).copied()
    }

    pub fn same_class(&self, a: &str, b: &str) -> bool {
        match (self.class_of(a), self.class_of(b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    pub fn classes(&self) -> &[Vec<String>] {
        &self.classes
    }

    /// All identifiers, class by class.
    pub fn carrier(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().flatten().map(String::as_str)
    }

    /// The least identifier of `id`'s class.
    pub fn representative(&self, id: &str) -> Option<&str> {
        self.class_of(id).map(|c| self.classes[c][0].as_str())
    }

    /// One representative per class, in declaration order.
    pub fn representatives(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().map(|c| c[0].as_str())
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    /// Renders the table back into the `"a b | c"` form.
    pub fn to_spec(&self) -> String {
        self.classes
            .iter()
            .map(|c| c.join(" "))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[derive(Debug)]
pub enum Node {
    Sup(Vec<VSet>),
    Atom(String),
}

/// An iterative set. Cloning is cheap; nodes are shared.
#[derive(Clone)]
pub struct VSet(Arc<Node>);

impl VSet {
    pub fn empty() -> Self {
        VSet(Arc::new(Node::Sup(Vec::new())))
    }

    pub fn sup(children: Vec<VSet>) -> Self {
        VSet(Arc::new(Node::Sup(children)))
    }

    /// Builds an atom without consulting a table.
    pub fn atom_unchecked(id: impl Into<String>) -> Self {
        VSet(Arc::new(Node::Atom(id.into())))
    }

    pub fn singleton(x: VSet) -> Self {
        Self::sup(vec![x])
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn children(&self) -> Option<&[VSet]> {
        match &*self.0 {
            Node::Sup(c) => Some(c),
            Node::Atom(_) => None,
        }
    }

    pub fn atom_id(&self) -> Option<&str> {
        match &*self.0 {
            Node::Atom(id) => Some(id),
            Node::Sup(_) => None,
        }
    }

    pub fn is_set(&self) -> bool {
        matches!(&*self.0, Node::Sup(_))
    }

    pub fn is_atom(&self) -> bool {
        !self.is_set()
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Identity of representation: same shape, same child order, same atom ids.
    pub fn structurally_identical(&self, other: &VSet) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Node::Atom(a), Node::Atom(b)) => a == b,
            (Node::Sup(xs), Node::Sup(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.structurally_identical(y))
            }
            _ => false,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match &*self.0 {
            Node::Atom(_) => 1,
            Node::Sup(c) => 1 + c.iter().map(VSet::size).sum::<usize>(),
        }
    }

    /// Every atom identifier occurring in the tree.
    pub fn atom_ids(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(s) = stack.pop() {
            match &*s.0 {
                Node::Atom(id) => out.push(id.clone()),
                Node::Sup(c) => stack.extend(c.iter()),
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Raw rendering in the set grammar: child order and duplicates preserved.
impl fmt::Display for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Atom(id) => write!(f, "#{id}"),
            Node::Sup(c) => {
                f.write_str("{")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VSet({self})")
    }
}

pub fn make_sup(children: Vec<VSet>) -> VSet {
    VSet::sup(children)
}

pub fn make_atom(id: &str, table: &AtomTable) -> Result<VSet, IterSetError> {
    if table.contains(id) {
        Ok(VSet::atom_unchecked(id))
    } else {
        Err(IterSetError::UnknownAtom(id.to_string()))
    }
}

/// Memoised bisimulation test. One instance may answer many queries; the
/// cache is keyed on node addresses, so it stays valid while the compared
/// trees are alive.
pub struct Bisim<'t> {
    table: &'t AtomTable,
    memo: HashMap<(usize, usize), bool>,
    // Keeps compared nodes alive so addresses in `memo` are never reused.
    pinned: Vec<VSet>,
}

impl<'t> Bisim<'t> {
    pub fn new(table: &'t AtomTable) -> Self {
        Bisim {
            table,
            memo: HashMap::new(),
            pinned: Vec::new(),
        }
    }

    pub fn eq(&mut self, u: &VSet, v: &VSet) -> bool {
        if Arc::ptr_eq(&u.0, &v.0) {
            if let Node::Atom(id) = &*u.0 {
                return self.table.contains(id);
            }
            return true;
        }
        let key = if u.key() <= v.key() {
            (u.key(), v.key())
        } else {
            (v.key(), u.key())
        };
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = match (&*u.0, &*v.0) {
            (Node::Atom(a), Node::Atom(b)) => self.table.same_class(a, b),
            (Node::Sup(xs), Node::Sup(ys)) => {
                xs.iter().all(|x| ys.iter().any(|y| self.eq(x, y)))
                    && ys.iter().all(|y| xs.iter().any(|x| self.eq(x, y)))
            }
            _ => false,
        };
        self.pinned.push(u.clone());
        self.pinned.push(v.clone());
        self.memo.insert(key, r);
        r
    }

    pub fn mem(&mut self, u: &VSet, v: &VSet) -> bool {
        match v.children() {
            Some(c) => c.iter().any(|y| self.eq(u, y)),
            None => false,
        }
    }
}

/// `u =_V v`: the least relation closed under the sup and atom rules.
pub fn eq_v(table: &AtomTable, u: &VSet, v: &VSet) -> bool {
    Bisim::new(table).eq(u, v)
}

/// `u ∈_V v`. Nothing is a member of an atom.
pub fn mem_v(table: &AtomTable, u: &VSet, v: &VSet) -> bool {
    Bisim::new(table).mem(u, v)
}

/// Canonical text of a set; equal texts exactly when the sets are `eq_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Order on child texts: shorter first, then bytewise.
pub fn shortlex(a: &str, b: &str) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Sorts and deduplicates child texts recursively. Atoms render as the least
/// identifier of their class; unknown atoms render under their own name.
pub fn canonicalize(table: &AtomTable, u: &VSet) -> CanonicalForm {
    let mut memo = HashMap::new();
    CanonicalForm(canon_rec(table, u, &mut memo))
}

fn canon_rec(table: &AtomTable, u: &VSet, memo: &mut HashMap<usize, String>) -> String {
    if let Some(s) = memo.get(&u.key()) {
        return s.clone();
    }
    let s = match &*u.0 {
        Node::Atom(id) => format!("#{}", table.representative(id).unwrap_or(id)),
        Node::Sup(c) => {
            let mut parts: Vec<String> = c.iter().map(|x| canon_rec(table, x, memo)).collect();
            parts.sort_by(|a, b| shortlex(a, b));
            parts.dedup();
            let mut s = String::with_capacity(2 + parts.iter().map(|p| p.len() + 1).sum::<usize>());
            s.push('{');
            s.push_str(&parts.join(","));
            s.push('}');
            s
        }
    };
    memo.insert(u.key(), s.clone());
    s
}

/// 0 for atoms and the empty set, otherwise one more than the largest child.
pub fn rank(u: &VSet) -> usize {
    match &*u.0 {
        Node::Atom(_) => 0,
        Node::Sup(c) => c.iter().map(|x| rank(x) + 1).max().unwrap_or(0),
    }
}

const MAX_NESTING: usize = 512;

/// Parses the bare set grammar (`{`, `}`, `,`, `#id`). Whitespace is allowed
/// between tokens. Atoms must occur in `table`.
pub fn parse_set(text: &str, table: &AtomTable) -> Result<VSet, IterSetError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let set = parse_set_at(bytes, &mut pos, table, 0)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(IterSetError::Syntax {
            offset: pos,
            message: "trailing input".into(),
        });
    }
    Ok(set)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_set_at(
    bytes: &[u8],
    pos: &mut usize,
    table: &AtomTable,
    depth: usize,
) -> Result<VSet, IterSetError> {
    let err = |offset: usize, message: &str| IterSetError::Syntax {
        offset,
        message: message.to_string(),
    };
    if depth > MAX_NESTING {
        return Err(err(*pos, "nesting too deep"));
    }
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'#') => {
            *pos += 1;
            let start = *pos;
            while *pos < bytes.len()
                && (bytes[*pos].is_ascii_alphanumeric()
                    || bytes[*pos] == b'_'
                    || bytes[*pos] == b'\'')
            {
                *pos += 1;
            }
            if start == *pos {
                return Err(err(start, "expected atom identifier"));
            }
            let id = std::str::from_utf8(&bytes[start..*pos]).expect("ascii");
            make_atom(id, table)
        }
        Some(b'{') => {
            *pos += 1;
            let mut children = Vec::new();
            skip_ws(bytes, pos);
            if bytes.get(*pos) == Some(&b'}') {
                *pos += 1;
                return Ok(VSet::sup(children));
            }
            loop {
                children.push(parse_set_at(bytes, pos, table, depth + 1)?);
                skip_ws(bytes, pos);
                match bytes.get(*pos) {
                    Some(b',') => *pos += 1,
                    Some(b'}') => {
                        *pos += 1;
                        return Ok(VSet::sup(children));
                    }
                    _ => return Err(err(*pos, "expected `,` or `}`")),
                }
            }
        }
        _ => Err(err(*pos, "expected `{` or `#`")),
    }
}
