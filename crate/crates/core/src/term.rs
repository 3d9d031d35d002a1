//! Generators, alphabets and the planar tree basis B̂ of the free algebra with two operators.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Words reserved by the expression grammar; they cannot name generators.
pub const RESERVED: &[&str] = &["bk", "tb", "gr", "sg", "s", "w", "tri", "lb"];

/// A generator with its position in the total order of the alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    index: u32,
    name: Arc<str>,
}

impl Generator {
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index.cmp(&other.index).then_with(|| self.name.cmp(&other.name))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("duplicate generator name `{0}`")]
    Duplicate(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("alphabet must contain at least one generator")]
    Empty,
}

/// A totally ordered finite set of generators; order is position in the list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, AlphabetError> {
        if names.is_empty() {
            return Err(AlphabetError::Empty);
        }
        let mut gens: Vec<Generator> = Vec::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && n != "_"
                && !RESERVED.contains(&n);
            if !valid {
                return Err(AlphabetError::InvalidName(n.to_string()));
            }
            if gens.iter().any(|g| g.name() == n) {
                return Err(AlphabetError::Duplicate(n.to_string()));
            }
            gens.push(Generator { index: i as u32, name: Arc::from(n) });
        }
        Ok(Alphabet { gens })
    }

    /// The first `k` generators `a, b, c, …` (then `g26, g27, …`).
    pub fn first(k: usize) -> Self {
        let names: Vec<String> = (0..k.max(1))
            .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("g{i}") })
            .collect();
        Alphabet::new(&names).expect("standard names are valid")
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Generator> {
        self.gens.iter().find(|g| g.name() == name)
    }

    pub fn gen(&self, i: usize) -> MagmaTerm {
        MagmaTerm::gen(self.gens[i].clone())
    }
}

/// Vertex and bracket grading shared by all basis kinds.
pub trait Graded {
    /// Number of generator occurrences.
    fn vertex_count(&self) -> usize;
    /// Number of bracket applications.
    fn bracket_count(&self) -> usize;
}

pub(crate) fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

#[derive(Clone, PartialEq, Eq)]
pub enum MagmaKind {
    Gen(Generator),
    Brk(MagmaTerm, MagmaTerm),
    Graft(Vec<MagmaTerm>, MagmaTerm),
}

struct MagmaNode {
    kind: MagmaKind,
    vc: usize,
    bc: usize,
    hash: u64,
}

/// An element of B̂: a generator, a bracket, or a planar graft of a nonempty
/// ordered list of branches onto a generator or bracket root.
#[derive(Clone)]
pub struct MagmaTerm(Arc<MagmaNode>);

impl MagmaTerm {
    fn build(kind: MagmaKind) -> Self {
        let (vc, bc, hash) = match &kind {
            MagmaKind::Gen(g) => (1, 0, hash_of(&(0u8, g))),
            MagmaKind::Brk(l, r) => (l.vc() + r.vc(), 1 + l.bc() + r.bc(), hash_of(&(1u8, l.0.hash, r.0.hash))),
            MagmaKind::Graft(bs, r) => {
                let hs: Vec<u64> = bs.iter().map(|b| b.0.hash).collect();
                (
                    bs.iter().map(|b| b.vc()).sum::<usize>() + r.vc(),
                    bs.iter().map(|b| b.bc()).sum::<usize>() + r.bc(),
                    hash_of(&(2u8, hs, r.0.hash)),
                )
            }
        };
        MagmaTerm(Arc::new(MagmaNode { kind, vc, bc, hash }))
    }

    pub fn gen(g: Generator) -> Self {
        Self::build(MagmaKind::Gen(g))
    }

    pub fn brk(l: MagmaTerm, r: MagmaTerm) -> Self {
        Self::build(MagmaKind::Brk(l, r))
    }

    /// Planar graft; an empty branch list returns the root itself.
    ///
    /// # Panics
    /// If the root is itself a graft.
    pub fn graft(branches: Vec<MagmaTerm>, root: MagmaTerm) -> Self {
        assert!(root.is_root(), "graft root must be a generator or a bracket");
        if branches.is_empty() {
            return root;
        }
        Self::build(MagmaKind::Graft(branches, root))
    }

    pub fn kind(&self) -> &MagmaKind {
        &self.0.kind
    }

    /// True for generators and brackets, the admissible graft roots.
    pub fn is_root(&self) -> bool {
        !matches!(self.0.kind, MagmaKind::Graft(..))
    }

    fn vc(&self) -> usize {
        self.0.vc
    }

    fn bc(&self) -> usize {
        self.0.bc
    }

    fn rank(&self) -> u8 {
        match self.0.kind {
            MagmaKind::Gen(_) => 0,
            MagmaKind::Brk(..) => 1,
            MagmaKind::Graft(..) => 2,
        }
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Graded for MagmaTerm {
    fn vertex_count(&self) -> usize {
        self.vc()
    }
    fn bracket_count(&self) -> usize {
        self.bc()
    }
}

impl PartialEq for MagmaTerm {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.kind == other.0.kind)
    }
}

impl Eq for MagmaTerm {}

impl Hash for MagmaTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Canonical structural order: vertex count, shape, then components.
impl Ord for MagmaTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.ptr_eq(other) {
            return Ordering::Equal;
        }
        self.vc()
            .cmp(&other.vc())
            .then_with(|| self.rank().cmp(&other.rank()))
            .then_with(|| match (&self.0.kind, &other.0.kind) {
                (MagmaKind::Gen(a), MagmaKind::Gen(b)) => a.cmp(b),
                (MagmaKind::Brk(a, b), MagmaKind::Brk(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
                (MagmaKind::Graft(a, r), MagmaKind::Graft(b, s)) => {
                    a.len().cmp(&b.len()).then_with(|| a.cmp(b)).then_with(|| r.cmp(s))
                }
                _ => unreachable!("ranks equal"),
            })
    }
}

impl PartialOrd for MagmaTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MagmaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            MagmaKind::Gen(g) => f.write_str(g.name()),
            MagmaKind::Brk(l, r) => write!(f, "bk({l}, {r})"),
            MagmaKind::Graft(bs, r) => {
                f.write_str("gr(")?;
                for (i, b) in bs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{b}")?;
                }
                write!(f, "; {r})")
            }
        }
    }
}

impl fmt::Debug for MagmaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grading() {
        let al = Alphabet::first(1);
        let a = al.gen(0);
        let cherry = MagmaTerm::graft(vec![a.clone()], a.clone());
        let aa = MagmaTerm::brk(a.clone(), a.clone());
        assert_eq!(a.vertex_count(), 1);
        assert_eq!(a.bracket_count(), 0);
        assert_eq!(cherry.vertex_count(), 2);
        assert_eq!(aa.bracket_count(), 1);
        let t = MagmaTerm::graft(vec![a.clone()], aa);
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.bracket_count(), 1);
        assert_eq!(MagmaTerm::brk(cherry, a).to_string(), "bk(gr(a; a), a)");
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(&["a", "a"]).is_err());
        assert!(Alphabet::new(&["bk"]).is_err());
        assert!(Alphabet::new(&["1x"]).is_err());
        assert_eq!(Alphabet::first(3).gens()[2].name(), "c");
    }
}
