//! Finite abstract simplicial complexes and their open/closed subsets.
//!
//! A complex is a finite set of non-empty vertex sets closed under taking
//! non-empty subsets. Closed subsets are exactly the sub-simplicial
//! complexes; open subsets are the upward-closed sets, generated by the
//! stars `U(x) = { y : x ⊆ y }`. Elements are kept in canonical order:
//! ascending dimension first, lexicographic vertex order within a dimension.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest simplex cardinality accepted by [`Complex::closure`]; the subset
/// lattice of a single input set has `2^card - 1` elements.
pub const MAX_CLOSURE_CARDINALITY: usize = 20;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("simplex must have at least one vertex")]
    EmptySimplex,
    #[error("simplex has duplicate vertex {0}")]
    DuplicateVertex(u32),
    #[error("simplex with {0} vertices exceeds the closure limit of {MAX_CLOSURE_CARDINALITY}")]
    SimplexTooLarge(usize),
    #[error("element {0} is not in the complex")]
    NotAnElement(Simplex),
    #[error("graph has a self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("graph has a duplicate edge ({0},{1})")]
    DuplicateEdge(u32, u32),
    #[error("element list is not subset-closed: missing face {0}")]
    NotSubsetClosed(Simplex),
    #[error("element {0} is not locally maximal")]
    NotLocallyMaximal(Simplex),
    #[error("subset belongs to a different parent complex")]
    ParentMismatch,
    #[error("cannot draw an open set from an empty complex")]
    EmptyComplex,
}

/// A simplex: a non-empty, strictly ascending list of vertex labels.
///
/// The dimension is the cardinality minus one.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Simplex {
    verts: Vec<u32>,
}

impl Simplex {
    /// Builds a simplex from vertex labels in any order; rejects duplicates
    /// and the empty set.
    pub fn new(mut verts: Vec<u32>) -> Result<Self, ComplexError> {
        if verts.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        verts.sort_unstable();
        for w in verts.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::DuplicateVertex(w[0]));
            }
        }
        Ok(Simplex { verts })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts
    }

    pub fn cardinality(&self) -> usize {
        self.verts.len()
    }

    pub fn dimension(&self) -> usize {
        self.verts.len() - 1
    }

    /// True iff `self ⊆ other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.verts.len() > other.verts.len() {
            return false;
        }
        let mut it = other.verts.iter();
        self.verts.iter().all(|v| it.any(|w| w == v))
    }

    /// True iff `self ⊂ other` strictly.
    pub fn is_proper_face_of(&self, other: &Simplex) -> bool {
        self.verts.len() < other.verts.len() && self.is_face_of(other)
    }

    pub fn intersects(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.verts.len() && j < other.verts.len() {
            match self.verts[i].cmp(&other.verts[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// The codimension-one faces (each obtained by dropping one vertex).
    /// A vertex has none.
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        if self.verts.len() == 1 {
            return Vec::new();
        }
        (0..self.verts.len())
            .map(|i| {
                let mut v = self.verts.clone();
                v.remove(i);
                Simplex { verts: v }
            })
            .collect()
    }

    /// All non-empty subsets, including the simplex itself.
    fn all_subsets(&self) -> Vec<Simplex> {
        let n = self.verts.len();
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u32..(1 << n) {
            let verts: Vec<u32> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.verts[i])
                .collect();
            out.push(Simplex { verts });
        }
        out
    }
}

impl TryFrom<Vec<u32>> for Simplex {
    type Error = ComplexError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<u32> {
    fn from(s: Simplex) -> Vec<u32> {
        s.verts
    }
}

/// Canonical order: ascending dimension, then lexicographic vertex order.
impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.verts
            .len()
            .cmp(&other.verts.len())
            .then_with(|| self.verts.cmp(&other.verts))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Identity of a complex, derived from its canonical element list.
/// Lets subsets name their parent without holding a reference.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ComplexId(u64);

impl fmt::Display for ComplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

fn fnv1a(data: impl IntoIterator<Item = u64>) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for x in data {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

/// Classification of a subset relative to its parent.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Open,
    Closed,
    /// Both open and closed (the empty set, the whole space, unions of
    /// connected components).
    Clopen,
    Neither,
}

/// The f-vector of an element list: entry `k` counts elements of dimension
/// `k`. Interior zeros are kept; the empty list has an empty f-vector.
pub fn f_vector(elements: &[Simplex]) -> Vec<usize> {
    let Some(maxc) = elements.iter().map(|s| s.cardinality()).max() else {
        return Vec::new();
    };
    let mut f = vec![0usize; maxc];
    for s in elements {
        f[s.dimension()] += 1;
    }
    f
}

/// `Σ_x (-1)^{dim(x)}`.
pub fn euler_characteristic(elements: &[Simplex]) -> i64 {
    elements
        .iter()
        .map(|s| if s.dimension() % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// Per-dimension block offsets `b_0 = 0 ≤ b_1 ≤ … ≤ b_{d+1} = n` for a
/// canonically ordered element list.
pub fn block_offsets(elements: &[Simplex]) -> Vec<usize> {
    let f = f_vector(elements);
    let mut offs = Vec::with_capacity(f.len() + 1);
    offs.push(0);
    for c in &f {
        offs.push(offs.last().unwrap() + c);
    }
    offs
}

fn sort_canonical(elements: &mut Vec<Simplex>) {
    elements.sort_unstable();
    elements.dedup();
}

fn id_of(elements: &[Simplex]) -> ComplexId {
    ComplexId(fnv1a(elements.iter().flat_map(|s| {
        std::iter::once(s.cardinality() as u64 | 1 << 63)
            .chain(s.vertices().iter().map(|&v| v as u64))
    })))
}

/// A whole finite abstract simplicial complex in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complex {
    elements: Vec<Simplex>,
    f_vector: Vec<usize>,
    block_offsets: Vec<usize>,
}

impl Complex {
    pub fn empty() -> Self {
        Complex {
            elements: Vec::new(),
            f_vector: Vec::new(),
            block_offsets: vec![0],
        }
    }

    fn from_sorted_closed(elements: Vec<Simplex>) -> Self {
        let f = f_vector(&elements);
        let offs = block_offsets(&elements);
        Complex {
            elements,
            f_vector: f,
            block_offsets: offs,
        }
    }

    /// The smallest simplicial complex containing the given simplices.
    /// The empty input yields the empty complex.
    pub fn closure(sets: &[Simplex]) -> Result<Self, ComplexError> {
        let mut elements = Vec::new();
        for s in sets {
            if s.cardinality() > MAX_CLOSURE_CARDINALITY {
                return Err(ComplexError::SimplexTooLarge(s.cardinality()));
            }
            elements.extend(s.all_subsets());
        }
        sort_canonical(&mut elements);
        Ok(Complex::from_sorted_closed(elements))
    }

    /// Builds a complex from an explicit element list, which must already be
    /// subset-closed.
    pub fn try_from_elements(mut elements: Vec<Simplex>) -> Result<Self, ComplexError> {
        sort_canonical(&mut elements);
        for s in &elements {
            for face in s.boundary_faces() {
                if elements.binary_search(&face).is_err() {
                    return Err(ComplexError::NotSubsetClosed(face));
                }
            }
        }
        Ok(Complex::from_sorted_closed(elements))
    }

    /// The Whitney (clique) complex of a simple graph: all non-empty cliques.
    pub fn whitney(graph: &Graph) -> Self {
        let vs = graph.vertices();
        let mut elements: Vec<Simplex> = vs.iter().map(|&v| Simplex { verts: vec![v] }).collect();
        // Grow cliques one vertex at a time, always extending past the last
        // vertex so each clique is enumerated once.
        let mut frontier: Vec<Vec<u32>> = vs.iter().map(|&v| vec![v]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for clique in &frontier {
                let last = *clique.last().unwrap();
                for &v in vs.iter().filter(|&&v| v > last) {
                    if clique.iter().all(|&u| graph.has_edge(u, v)) {
                        let mut c = clique.clone();
                        c.push(v);
                        next.push(c);
                    }
                }
            }
            elements.extend(next.iter().map(|c| Simplex { verts: c.clone() }));
            frontier = next;
        }
        sort_canonical(&mut elements);
        Complex::from_sorted_closed(elements)
    }

    pub fn elements(&self) -> &[Simplex] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.elements.last().map(|s| s.dimension())
    }

    pub fn f_vector(&self) -> &[usize] {
        &self.f_vector
    }

    pub fn block_offsets(&self) -> &[usize] {
        &self.block_offsets
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(&self.elements)
    }

    pub fn id(&self) -> ComplexId {
        id_of(&self.elements)
    }

    pub fn contains(&self, x: &Simplex) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn index_of(&self, x: &Simplex) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    /// The locally maximal elements (facets), in canonical order.
    pub fn facets(&self) -> Vec<Simplex> {
        self.elements
            .iter()
            .filter(|x| self.is_locally_maximal_unchecked(x))
            .cloned()
            .collect()
    }

    fn is_locally_maximal_unchecked(&self, x: &Simplex) -> bool {
        // A strict superset exists iff a coface of one higher dimension does.
        let d = x.dimension() + 1;
        if d + 1 >= self.block_offsets.len() {
            return true;
        }
        let (lo, hi) = (self.block_offsets[d], self.block_offsets[d + 1]);
        !self.elements[lo..hi].iter().any(|y| x.is_proper_face_of(y))
    }

    /// True iff no element of the complex strictly contains `x`.
    pub fn is_locally_maximal(&self, x: &Simplex) -> Result<bool, ComplexError> {
        if !self.contains(x) {
            return Err(ComplexError::NotAnElement(x.clone()));
        }
        Ok(self.is_locally_maximal_unchecked(x))
    }

    /// Indices of all locally maximal elements.
    pub fn locally_maximal_indices(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.is_locally_maximal_unchecked(&self.elements[i]))
            .collect()
    }

    /// The star `U(x) = { y ∈ G : x ⊆ y }`, an open subset.
    pub fn star(&self, x: &Simplex) -> Result<Subset, ComplexError> {
        if !self.contains(x) {
            return Err(ComplexError::NotAnElement(x.clone()));
        }
        let elements: Vec<Simplex> = self
            .elements
            .iter()
            .filter(|y| x.is_face_of(y))
            .cloned()
            .collect();
        Ok(self.subset_unchecked(elements))
    }

    /// Union of `k` stars chosen uniformly with replacement from the star
    /// basis, driven by the given RNG. Open by construction.
    pub fn random_open_set_with<R: Rng>(
        &self,
        k: usize,
        rng: &mut R,
    ) -> Result<Subset, ComplexError> {
        if self.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        let mut chosen = vec![false; self.elements.len()];
        for _ in 0..k {
            let i = rng.gen_range(0..self.elements.len());
            let x = &self.elements[i];
            for (j, y) in self.elements.iter().enumerate() {
                if x.is_face_of(y) {
                    chosen[j] = true;
                }
            }
        }
        let elements: Vec<Simplex> = self
            .elements
            .iter()
            .zip(&chosen)
            .filter(|(_, &c)| c)
            .map(|(s, _)| s.clone())
            .collect();
        Ok(self.subset_unchecked(elements))
    }

    /// Seeded variant of [`Complex::random_open_set_with`]; the same seed
    /// always yields the same subset.
    pub fn random_open_set(&self, k: usize, seed: u64) -> Result<Subset, ComplexError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_open_set_with(k, &mut rng)
    }

    /// Wraps an element list as a subset of this complex, classifying it as
    /// open and/or closed. Fails if any element is not in the complex.
    pub fn subset(&self, mut elements: Vec<Simplex>) -> Result<Subset, ComplexError> {
        sort_canonical(&mut elements);
        for x in &elements {
            if !self.contains(x) {
                return Err(ComplexError::NotAnElement(x.clone()));
            }
        }
        Ok(self.subset_unchecked(elements))
    }

    fn subset_unchecked(&self, elements: Vec<Simplex>) -> Subset {
        let open = self.is_open(&elements);
        let closed = self.is_closed(&elements);
        Subset {
            parent: self.id(),
            elements,
            open,
            closed,
        }
    }

    /// True iff every superset (in the complex) of every element of `s` is
    /// in `s`; `s` must be a sorted sublist of the complex.
    pub fn is_open(&self, s: &[Simplex]) -> bool {
        // Upward closure follows by induction from codimension-one cofaces.
        s.iter().all(|x| {
            let d = x.dimension() + 1;
            if d + 1 >= self.block_offsets.len() {
                return true;
            }
            let (lo, hi) = (self.block_offsets[d], self.block_offsets[d + 1]);
            self.elements[lo..hi]
                .iter()
                .filter(|y| x.is_proper_face_of(y))
                .all(|y| s.binary_search(y).is_ok())
        })
    }

    /// True iff `s` is subset-closed (a sub-simplicial complex).
    pub fn is_closed(&self, s: &[Simplex]) -> bool {
        s.iter().all(|x| {
            x.boundary_faces()
                .iter()
                .all(|f| s.binary_search(f).is_ok())
        })
    }

    /// `G \ S`, with open/closed classification; open subsets have closed
    /// complements and vice versa.
    pub fn complement(&self, s: &Subset) -> Result<Subset, ComplexError> {
        if s.parent != self.id() {
            return Err(ComplexError::ParentMismatch);
        }
        let elements: Vec<Simplex> = self
            .elements
            .iter()
            .filter(|x| s.elements.binary_search(x).is_err())
            .cloned()
            .collect();
        Ok(self.subset_unchecked(elements))
    }

    /// Deletes one locally maximal element, leaving a complex.
    pub fn delete_locally_maximal(&self, x: &Simplex) -> Result<Complex, ComplexError> {
        if !self.is_locally_maximal(x)? {
            return Err(ComplexError::NotLocallyMaximal(x.clone()));
        }
        let elements: Vec<Simplex> = self.elements.iter().filter(|y| *y != x).cloned().collect();
        Ok(Complex::from_sorted_closed(elements))
    }

    /// The canonical Morse filtration: elements in canonical order. Every
    /// prefix is a simplicial complex whose last element is locally maximal.
    pub fn canonical_filtration(&self) -> Filtration {
        Filtration {
            order: (0..self.elements.len()).collect(),
        }
    }

    /// The complex formed by the first `k` elements of the canonical order.
    pub fn prefix(&self, k: usize) -> Complex {
        Complex::from_sorted_closed(self.elements[..k].to_vec())
    }
}

/// An enumeration order on a complex in which every prefix is itself a
/// simplicial complex gaining one locally maximal element per step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    order: Vec<usize>,
}

impl Filtration {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Validates the Morse property against a complex: each prefix is
    /// subset-closed and its last element is locally maximal in the prefix.
    pub fn is_valid_for(&self, complex: &Complex) -> bool {
        if self.order.len() != complex.len() {
            return false;
        }
        let mut seen: Vec<Simplex> = Vec::with_capacity(self.order.len());
        for &i in &self.order {
            let Some(x) = complex.elements().get(i) else {
                return false;
            };
            let faces_present = x
                .boundary_faces()
                .iter()
                .all(|f| seen.binary_search(f).is_ok());
            let maximal = !seen.iter().any(|y| x.is_proper_face_of(y));
            if !faces_present || !maximal {
                return false;
            }
            let pos = seen.binary_search(x).unwrap_err();
            seen.insert(pos, x.clone());
        }
        true
    }
}

/// An open, closed, or unclassified subset of a parent complex, in canonical
/// order. Openness and closedness are always relative to the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subset {
    parent: ComplexId,
    elements: Vec<Simplex>,
    open: bool,
    closed: bool,
}

impl Subset {
    pub fn parent_id(&self) -> ComplexId {
        self.parent
    }

    pub fn elements(&self) -> &[Simplex] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn kind(&self) -> SetKind {
        match (self.open, self.closed) {
            (true, true) => SetKind::Clopen,
            (true, false) => SetKind::Open,
            (false, true) => SetKind::Closed,
            (false, false) => SetKind::Neither,
        }
    }

    pub fn f_vector(&self) -> Vec<usize> {
        f_vector(&self.elements)
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(&self.elements)
    }

    /// Reinterprets a closed subset as a complex in its own right.
    pub fn to_complex(&self) -> Result<Complex, ComplexError> {
        Complex::try_from_elements(self.elements.clone())
    }
}

/// A simple undirected graph on integer-labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Validates and normalizes: vertices are deduplicated and unioned with
    /// edge endpoints; self-loops and repeated edges are rejected.
    pub fn new(vertices: Vec<u32>, edges: Vec<(u32, u32)>) -> Result<Self, ComplexError> {
        let mut vs = vertices;
        let mut es = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(ComplexError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            vs.push(e.0);
            vs.push(e.1);
            es.push(e);
        }
        vs.sort_unstable();
        vs.dedup();
        es.sort_unstable();
        for w in es.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        Ok(Graph {
            vertices: vs,
            edges: es,
        })
    }

    /// Seeded Erdős–Rényi G(n, p); the same seed always yields the same
    /// graph.
    pub fn gnp_seeded(nv: u32, p: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::gnp(nv, p, &mut rng)
    }

    /// Erdős–Rényi G(n, p) on vertices `1..=nv`, driven by the given RNG.
    pub fn gnp<R: Rng>(nv: u32, p: f64, rng: &mut R) -> Self {
        let vertices: Vec<u32> = (1..=nv).collect();
        let mut edges = Vec::new();
        for i in 1..=nv {
            for j in (i + 1)..=nv {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph { vertices, edges }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.binary_search(&e).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sx(verts: &[u32]) -> Simplex {
        Simplex::new(verts.to_vec()).unwrap()
    }

    fn closed_interval() -> Complex {
        Complex::closure(&[sx(&[1, 2])]).unwrap()
    }

    fn circle() -> Complex {
        Complex::closure(&[sx(&[1, 2]), sx(&[2, 3]), sx(&[3, 4]), sx(&[4, 1])]).unwrap()
    }

    #[test]
    fn simplex_rejects_duplicates_and_empty() {
        assert!(matches!(
            Simplex::new(vec![1, 1]),
            Err(ComplexError::DuplicateVertex(1))
        ));
        assert!(matches!(
            Simplex::new(vec![]),
            Err(ComplexError::EmptySimplex)
        ));
        assert_eq!(sx(&[3, 1, 2]).vertices(), &[1, 2, 3]);
    }

    #[test]
    fn closure_of_triangle() {
        let c = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
        assert_eq!(c.len(), 7);
        assert_eq!(c.f_vector(), &[3, 3, 1]);
        let expected: Vec<Simplex> = vec![
            sx(&[1]),
            sx(&[2]),
            sx(&[3]),
            sx(&[1, 2]),
            sx(&[1, 3]),
            sx(&[2, 3]),
            sx(&[1, 2, 3]),
        ];
        assert_eq!(c.elements(), expected.as_slice());
    }

    #[test]
    fn closure_fixed_point_and_empty() {
        let ins = vec![sx(&[1]), sx(&[2]), sx(&[1, 2])];
        let c = Complex::closure(&ins).unwrap();
        assert_eq!(c.elements(), ins.as_slice());
        assert!(Complex::closure(&[]).unwrap().is_empty());
        assert_eq!(Complex::closure(&[]).unwrap().block_offsets(), &[0]);
    }

    #[test]
    fn closure_circle_matches_expected() {
        let c = circle();
        assert_eq!(c.len(), 8);
        assert_eq!(c.f_vector(), &[4, 4]);
        assert_eq!(c.euler_characteristic(), 0);
        let expected: Vec<Simplex> = vec![
            sx(&[1]),
            sx(&[2]),
            sx(&[3]),
            sx(&[4]),
            sx(&[1, 2]),
            sx(&[1, 4]),
            sx(&[2, 3]),
            sx(&[3, 4]),
        ];
        assert_eq!(c.elements(), expected.as_slice());
    }

    #[test]
    fn whitney_of_triangle_and_edgeless() {
        let k3 = Graph::new(vec![], vec![(1, 2), (1, 3), (2, 3)]).unwrap();
        let c = Complex::whitney(&k3);
        assert_eq!(c.f_vector(), &[3, 3, 1]);

        let edgeless = Graph::new(vec![1, 2, 3], vec![]).unwrap();
        let c = Complex::whitney(&edgeless);
        assert_eq!(c.f_vector(), &[3]);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn whitney_of_four_cycle_is_circle() {
        let g = Graph::new(vec![], vec![(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert_eq!(Complex::whitney(&g), circle());
    }

    #[test]
    fn graph_validation() {
        assert!(matches!(
            Graph::new(vec![], vec![(1, 1)]),
            Err(ComplexError::SelfLoop(1))
        ));
        assert!(matches!(
            Graph::new(vec![], vec![(1, 2), (2, 1)]),
            Err(ComplexError::DuplicateEdge(1, 2))
        ));
    }

    #[test]
    fn stars() {
        let tri = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
        let s = tri.star(&sx(&[1, 2, 3])).unwrap();
        assert_eq!(s.elements(), &[sx(&[1, 2, 3])]);
        assert!(s.is_open());
        assert!(!s.is_closed());

        let iv = closed_interval();
        let s = iv.star(&sx(&[1])).unwrap();
        assert_eq!(s.elements(), &[sx(&[1]), sx(&[1, 2])]);

        let c = circle();
        let s = c.star(&sx(&[1, 2])).unwrap();
        assert_eq!(s.elements(), &[sx(&[1, 2])]);

        assert!(matches!(
            c.star(&sx(&[9])),
            Err(ComplexError::NotAnElement(_))
        ));
    }

    #[test]
    fn complement_of_paper_arc() {
        let c = circle();
        let arc = c
            .subset(vec![
                sx(&[3]),
                sx(&[4]),
                sx(&[2, 3]),
                sx(&[3, 4]),
                sx(&[1, 4]),
            ])
            .unwrap();
        assert!(arc.is_open());
        assert!(!arc.is_closed());
        let k = c.complement(&arc).unwrap();
        assert_eq!(k.elements(), &[sx(&[1]), sx(&[2]), sx(&[1, 2])]);
        assert!(k.is_closed());
        assert!(!k.is_open());
    }

    #[test]
    fn complement_edge_cases() {
        let c = circle();
        let empty = c.subset(vec![]).unwrap();
        assert_eq!(empty.kind(), SetKind::Clopen);
        let whole = c.complement(&empty).unwrap();
        assert_eq!(whole.len(), 8);
        assert_eq!(whole.kind(), SetKind::Clopen);
        assert!(c.complement(&whole).unwrap().is_empty());
    }

    #[test]
    fn open_closed_classification() {
        let iv = closed_interval();
        let u = iv.subset(vec![sx(&[1, 2])]).unwrap();
        assert_eq!(u.kind(), SetKind::Open);
        let k = iv.subset(vec![sx(&[1]), sx(&[2])]).unwrap();
        assert_eq!(k.kind(), SetKind::Closed);
        let star1 = iv.subset(vec![sx(&[1]), sx(&[1, 2])]).unwrap();
        assert_eq!(star1.kind(), SetKind::Open, "the star of {{1}}");
        // neither open nor closed inside the path 1-2-3
        let path = Complex::closure(&[sx(&[1, 2]), sx(&[2, 3])]).unwrap();
        let n = path.subset(vec![sx(&[1]), sx(&[2, 3])]).unwrap();
        assert_eq!(n.kind(), SetKind::Neither);
    }

    #[test]
    fn f_vector_of_paper_open_set() {
        let els = vec![
            sx(&[0]),
            sx(&[1]),
            sx(&[2]),
            sx(&[3, 4]),
            sx(&[5, 6, 7, 8]),
            sx(&[9, 10, 11, 12]),
        ];
        assert_eq!(f_vector(&els), vec![3, 1, 0, 2]);
        assert_eq!(euler_characteristic(&els), 0);
        assert_eq!(block_offsets(&els), vec![0, 3, 4, 4, 6]);
        assert_eq!(f_vector(&[]), Vec::<usize>::new());
    }

    #[test]
    fn local_maximality() {
        let tri = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
        assert!(tri.is_locally_maximal(&sx(&[1, 2, 3])).unwrap());
        assert!(!tri.is_locally_maximal(&sx(&[1])).unwrap());
        let iv = closed_interval();
        assert!(!iv.is_locally_maximal(&sx(&[1])).unwrap());
        assert!(matches!(
            iv.is_locally_maximal(&sx(&[7])),
            Err(ComplexError::NotAnElement(_))
        ));
        // the last element of the canonical order is always locally maximal
        for c in [&tri, &iv, &circle()] {
            let last = c.elements().last().unwrap();
            assert!(c.is_locally_maximal(last).unwrap());
        }
    }

    #[test]
    fn canonical_filtration_is_morse() {
        for c in [
            closed_interval(),
            circle(),
            Complex::closure(&[sx(&[1, 2, 3]), sx(&[2, 3, 4])]).unwrap(),
        ] {
            let filt = c.canonical_filtration();
            assert!(filt.is_valid_for(&c));
            for k in 0..=c.len() {
                let p = c.prefix(k);
                assert!(Complex::try_from_elements(p.elements().to_vec()).is_ok());
            }
        }
        // interval: order [{1},{2},{1,2}]
        let iv = closed_interval();
        assert_eq!(iv.canonical_filtration().order(), &[0, 1, 2]);
        assert_eq!(iv.elements(), &[sx(&[1]), sx(&[2]), sx(&[1, 2])]);
        // triangle: vertices, then edges lexicographically, then the face
        let tri = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
        assert_eq!(
            tri.elements()[3..6],
            [sx(&[1, 2]), sx(&[1, 3]), sx(&[2, 3])]
        );
        assert_eq!(tri.elements()[6], sx(&[1, 2, 3]));
    }

    #[test]
    fn filtration_rejects_bad_orders() {
        let iv = closed_interval();
        // edge before its vertices
        let bad = Filtration {
            order: vec![2, 0, 1],
        };
        assert!(!bad.is_valid_for(&iv));
    }

    #[test]
    fn random_open_set_is_deterministic_and_open() {
        let c = circle();
        let a = c.random_open_set(3, 42).unwrap();
        let b = c.random_open_set(3, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.is_open());
        let d = c.random_open_set(3, 43).unwrap();
        assert!(d.is_open());
    }

    #[test]
    fn delete_locally_maximal_keeps_complex() {
        let tri = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
        let k = tri.delete_locally_maximal(&sx(&[1, 2, 3])).unwrap();
        assert_eq!(k.len(), 6);
        assert!(matches!(
            tri.delete_locally_maximal(&sx(&[1])),
            Err(ComplexError::NotLocallyMaximal(_))
        ));
    }

    #[test]
    fn subset_rejects_foreign_elements() {
        let iv = closed_interval();
        let err = iv.subset(vec![sx(&[5])]).unwrap_err();
        assert!(matches!(err, ComplexError::NotAnElement(_)));
    }
}
