use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::Scalar;

/// Ambient root-system families.
///
/// A, B, C, D take the rank as a parameter; the exceptional labels fix it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E6 => "E6",
            TypeLabel::E7 => "E7",
            TypeLabel::E8 => "E8",
            TypeLabel::F4 => "F4",
            TypeLabel::G2 => "G2",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "E6" => Ok(TypeLabel::E6),
            "E7" => Ok(TypeLabel::E7),
            "E8" => Ok(TypeLabel::E8),
            "F4" => Ok(TypeLabel::F4),
            "G2" => Ok(TypeLabel::G2),
            other => Err(Error::InvalidRootSystem(format!(
                "unknown type label {other:?}"
            ))),
        }
    }
}

/// A finite set of vectors with constant-time membership and a fixed,
/// deterministic enumeration order (sorted coordinate-wise).
///
/// This is the membership carrier for chain scans, reflection actions, and
/// axiom checks. The zero vector is never stored; operations that work over
/// the set with zero adjoined handle zero explicitly.
#[derive(Debug, Clone)]
pub struct RootSet<T> {
    dim: usize,
    ordered: Vec<Vector<T>>,
    index: HashMap<Vector<T>, usize>,
}

impl<T: Scalar> PartialEq for RootSet<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.ordered == other.ordered
    }
}

impl<T: Scalar> Eq for RootSet<T> {}

impl<T: Scalar> RootSet<T> {
    /// Builds the set, sorting and deduplicating. Rejects the zero vector
    /// and any dimension disagreement.
    pub fn new(dim: usize, vecs: Vec<Vector<T>>) -> Result<Self> {
        let mut ordered = vecs;
        for v in &ordered {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "root set",
                    expected: dim,
                    got: v.dim(),
                });
            }
            if v.is_zero() {
                return Err(Error::InvalidRootSystem(
                    "zero vector is not a root".into(),
                ));
            }
        }
        ordered.sort();
        ordered.dedup();
        let index = ordered
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        Ok(RootSet { dim, ordered, index })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ordered.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordered.is_empty()
    }

    pub fn contains(&self, v: &Vector<T>) -> bool {
        self.index.contains_key(v)
    }

    /// Membership in the set with the zero vector adjoined.
    pub fn contains_or_zero(&self, v: &Vector<T>) -> bool {
        v.is_zero() || self.contains(v)
    }

    /// Position of `v` in the sorted enumeration.
    pub fn position(&self, v: &Vector<T>) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vector<T>> {
        self.ordered.iter()
    }

    pub fn as_slice(&self) -> &[Vector<T>] {
        &self.ordered
    }

    /// True iff the set equals its negation.
    pub fn is_symmetric(&self) -> bool {
        self.ordered.iter().all(|v| self.contains(&-v.clone()))
    }
}

/// An ambient root system in integer coordinates.
///
/// Families whose standard realization uses half-integers (E6, E7, E8, F4)
/// are stored with every root doubled; chain combinatorics, reflections,
/// and Weyl groups are invariant under a global rescaling.
#[derive(Debug, Clone)]
pub struct RootSystem<T> {
    label: TypeLabel,
    rank: usize,
    roots: RootSet<T>,
    simple: Vec<Vector<T>>,
}

impl<T: Scalar> RootSystem<T> {
    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Ambient coordinate dimension (may exceed the rank, as for A_n).
    pub fn dim(&self) -> usize {
        self.roots.dim()
    }

    pub fn roots(&self) -> &RootSet<T> {
        &self.roots
    }

    pub fn simple_roots(&self) -> &[Vector<T>] {
        &self.simple
    }
}

fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

/// e_i as a vector of dimension `dim`, scaled by `c`.
fn axis<T: Scalar>(dim: usize, i: usize, c: T) -> Vector<T> {
    let mut v = vec![T::zero(); dim];
    v[i] = c;
    Vector::new(v)
}

/// c·e_i + d·e_j.
fn two_axis<T: Scalar>(dim: usize, i: usize, c: T, j: usize, d: T) -> Vector<T> {
    let mut v = vec![T::zero(); dim];
    v[i] = c;
    v[j] = d;
    Vector::new(v)
}

fn signs<T: Scalar>() -> [T; 2] {
    [T::one(), -T::one()]
}

/// All ±e_i ± e_j with i < j, entries scaled by `c`.
fn push_pm_pairs<T: Scalar>(out: &mut Vec<Vector<T>>, dim: usize, c: T) {
    let sg = signs::<T>();
    for i in 0..dim {
        for j in (i + 1)..dim {
            for si in &sg {
                for sj in &sg {
                    out.push(two_axis(
                        dim,
                        i,
                        si.clone() * c.clone(),
                        j,
                        sj.clone() * c.clone(),
                    ));
                }
            }
        }
    }
}

/// The 240 roots of E8, doubled: ±2e_i±2e_j and Σ±e_i with an even number
/// of minus signs.
fn e8_roots<T: Scalar>() -> Vec<Vector<T>> {
    let mut out = Vec::with_capacity(240);
    push_pm_pairs(&mut out, 8, two::<T>());
    for mask in 0u32..256 {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let coords: Vec<T> = (0..8)
            .map(|b| {
                if mask & (1 << b) != 0 {
                    -T::one()
                } else {
                    T::one()
                }
            })
            .collect();
        out.push(Vector::new(coords));
    }
    out
}

/// Simple roots of E8 in the doubled coordinates, standard numbering.
fn e8_simple<T: Scalar>() -> Vec<Vector<T>> {
    let one = T::one;
    let a1 = Vector::new(vec![
        one(),
        -one(),
        -one(),
        -one(),
        -one(),
        -one(),
        -one(),
        one(),
    ]);
    let a2 = two_axis(8, 0, two::<T>(), 1, two::<T>());
    let mut simple = vec![a1, a2];
    for i in 0..6 {
        simple.push(two_axis(8, i + 1, two::<T>(), i, -two::<T>()));
    }
    simple
}

impl<T: Scalar> RootSystem<T> {
    /// Builds the root system for a valid (label, rank) pair.
    ///
    /// Rank constraints: A, B, C need rank ≥ 1; D needs rank ≥ 2; the
    /// exceptional labels fix their rank (6, 7, 8, 4, 2).
    pub fn build(label: TypeLabel, rank: usize) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidRootSystem(msg));
        match label {
            TypeLabel::A => {
                if rank < 1 {
                    return bad("type A needs rank >= 1".into());
                }
                let dim = rank + 1;
                let mut roots = Vec::new();
                let mut simple = Vec::new();
                for i in 0..dim {
                    for j in 0..dim {
                        if i != j {
                            roots.push(two_axis(dim, i, T::one(), j, -T::one()));
                        }
                    }
                }
                for i in 0..rank {
                    simple.push(two_axis(dim, i, T::one(), i + 1, -T::one()));
                }
                Self::assemble(label, rank, dim, roots, simple)
            }
            TypeLabel::B => {
                if rank < 1 {
                    return bad("type B needs rank >= 1".into());
                }
                let dim = rank;
                let mut roots = Vec::new();
                push_pm_pairs(&mut roots, dim, T::one());
                for i in 0..dim {
                    for s in signs::<T>() {
                        roots.push(axis(dim, i, s));
                    }
                }
                let mut simple = Vec::new();
                for i in 0..rank - 1 {
                    simple.push(two_axis(dim, i, T::one(), i + 1, -T::one()));
                }
                simple.push(axis(dim, rank - 1, T::one()));
                Self::assemble(label, rank, dim, roots, simple)
            }
            TypeLabel::C => {
                if rank < 1 {
                    return bad("type C needs rank >= 1".into());
                }
                let dim = rank;
                let mut roots = Vec::new();
                push_pm_pairs(&mut roots, dim, T::one());
                for i in 0..dim {
                    for s in signs::<T>() {
                        roots.push(axis(dim, i, s * two::<T>()));
                    }
                }
                let mut simple = Vec::new();
                for i in 0..rank - 1 {
                    simple.push(two_axis(dim, i, T::one(), i + 1, -T::one()));
                }
                simple.push(axis(dim, rank - 1, two::<T>()));
                Self::assemble(label, rank, dim, roots, simple)
            }
            TypeLabel::D => {
                if rank < 2 {
                    return bad("type D needs rank >= 2".into());
                }
                let dim = rank;
                let mut roots = Vec::new();
                push_pm_pairs(&mut roots, dim, T::one());
                let mut simple = Vec::new();
                for i in 0..rank - 1 {
                    simple.push(two_axis(dim, i, T::one(), i + 1, -T::one()));
                }
                simple.push(two_axis(dim, rank - 2, T::one(), rank - 1, T::one()));
                Self::assemble(label, rank, dim, roots, simple)
            }
            TypeLabel::G2 => {
                if rank != 2 {
                    return bad("type G2 has rank exactly 2".into());
                }
                let dim = 3;
                let mut roots = Vec::new();
                // ±(e_i − e_j) and ±(2e_i − e_j − e_k).
                for i in 0..3 {
                    for j in 0..3 {
                        if i != j {
                            roots.push(two_axis(dim, i, T::one(), j, -T::one()));
                        }
                    }
                    let mut v = vec![-T::one(); 3];
                    v[i] = two::<T>();
                    let long = Vector::new(v);
                    roots.push(long.clone());
                    roots.push(-long);
                }
                let a1 = two_axis(dim, 0, T::one(), 1, -T::one());
                let a2 = Vector::new(vec![-two::<T>(), T::one(), T::one()]);
                Self::assemble(label, rank, dim, roots, vec![a1, a2])
            }
            TypeLabel::F4 => {
                if rank != 4 {
                    return bad("type F4 has rank exactly 4".into());
                }
                let dim = 4;
                let mut roots = Vec::new();
                push_pm_pairs(&mut roots, dim, two::<T>());
                for i in 0..dim {
                    for s in signs::<T>() {
                        roots.push(axis(dim, i, s * two::<T>()));
                    }
                }
                for mask in 0u32..16 {
                    let coords: Vec<T> = (0..4)
                        .map(|b| {
                            if mask & (1 << b) != 0 {
                                -T::one()
                            } else {
                                T::one()
                            }
                        })
                        .collect();
                    roots.push(Vector::new(coords));
                }
                let simple = vec![
                    two_axis(dim, 1, two::<T>(), 2, -two::<T>()),
                    two_axis(dim, 2, two::<T>(), 3, -two::<T>()),
                    axis(dim, 3, two::<T>()),
                    Vector::new(vec![T::one(), -T::one(), -T::one(), -T::one()]),
                ];
                Self::assemble(label, rank, dim, roots, simple)
            }
            TypeLabel::E8 => {
                if rank != 8 {
                    return bad("type E8 has rank exactly 8".into());
                }
                Self::assemble(label, rank, 8, e8_roots(), e8_simple())
            }
            TypeLabel::E7 => {
                if rank != 7 {
                    return bad("type E7 has rank exactly 7".into());
                }
                // E7 sits inside E8 as the roots orthogonal to e₇ + e₈.
                let normal = two_axis(8, 6, T::one(), 7, T::one());
                let roots: Vec<_> = e8_roots::<T>()
                    .into_iter()
                    .filter(|r| r.dot(&normal).expect("dim 8").is_zero())
                    .collect();
                let simple = e8_simple::<T>()[..7].to_vec();
                Self::assemble(label, rank, 8, roots, simple)
            }
            TypeLabel::E6 => {
                if rank != 6 {
                    return bad("type E6 has rank exactly 6".into());
                }
                // E6 sits inside E8 as the roots orthogonal to both
                // e₆ + e₈ and e₇ + e₈.
                let n1 = two_axis(8, 5, T::one(), 7, T::one());
                let n2 = two_axis(8, 6, T::one(), 7, T::one());
                let roots: Vec<_> = e8_roots::<T>()
                    .into_iter()
                    .filter(|r| {
                        r.dot(&n1).expect("dim 8").is_zero()
                            && r.dot(&n2).expect("dim 8").is_zero()
                    })
                    .collect();
                let simple = e8_simple::<T>()[..6].to_vec();
                Self::assemble(label, rank, 8, roots, simple)
            }
        }
    }

    fn assemble(
        label: TypeLabel,
        rank: usize,
        dim: usize,
        roots: Vec<Vector<T>>,
        simple: Vec<Vector<T>>,
    ) -> Result<Self> {
        let roots = RootSet::new(dim, roots)?;
        if !roots.is_symmetric() {
            return Err(Error::InvalidRootSystem(format!(
                "{label}{rank}: root set is not symmetric"
            )));
        }
        for s in &simple {
            if !roots.contains(s) {
                return Err(Error::InvalidRootSystem(format!(
                    "{label}{rank}: simple root {s} is not a root"
                )));
            }
        }
        Ok(RootSystem {
            label,
            rank,
            roots,
            simple,
        })
    }

    /// Classical root count for the family, used as a construction check.
    pub fn expected_count(label: TypeLabel, rank: usize) -> usize {
        match label {
            TypeLabel::A => rank * (rank + 1),
            TypeLabel::B | TypeLabel::C => 2 * rank * rank,
            TypeLabel::D => 2 * rank * (rank - 1),
            TypeLabel::E6 => 72,
            TypeLabel::E7 => 126,
            TypeLabel::E8 => 240,
            TypeLabel::F4 => 48,
            TypeLabel::G2 => 12,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::{ratvec, Rat, RatVec};
    use num_traits::{One, Signed};

    fn sys(label: TypeLabel, rank: usize) -> RootSystem<Rat> {
        RootSystem::build(label, rank).unwrap()
    }

    #[test]
    fn c2_has_the_eight_expected_roots() {
        let s = sys(TypeLabel::C, 2);
        assert_eq!(s.roots().len(), 8);
        for v in [
            ratvec(&[2, 0]),
            ratvec(&[-2, 0]),
            ratvec(&[0, 2]),
            ratvec(&[0, -2]),
            ratvec(&[1, 1]),
            ratvec(&[1, -1]),
            ratvec(&[-1, 1]),
            ratvec(&[-1, -1]),
        ] {
            assert!(s.roots().contains(&v), "missing {v}");
        }
    }

    #[test]
    fn a1_is_a_single_pair() {
        let s = sys(TypeLabel::A, 1);
        assert_eq!(s.roots().len(), 2);
        assert!(s.roots().contains(&ratvec(&[1, -1])));
        assert!(s.roots().contains(&ratvec(&[-1, 1])));
    }

    #[test]
    fn root_counts_match_the_classical_formulas() {
        let cases: Vec<(TypeLabel, usize)> = vec![
            (TypeLabel::A, 1),
            (TypeLabel::A, 2),
            (TypeLabel::A, 5),
            (TypeLabel::B, 2),
            (TypeLabel::B, 3),
            (TypeLabel::C, 2),
            (TypeLabel::C, 3),
            (TypeLabel::C, 7),
            (TypeLabel::D, 2),
            (TypeLabel::D, 4),
            (TypeLabel::G2, 2),
            (TypeLabel::F4, 4),
            (TypeLabel::E6, 6),
            (TypeLabel::E7, 7),
            (TypeLabel::E8, 8),
        ];
        for (label, rank) in cases {
            let s = sys(label, rank);
            assert_eq!(
                s.roots().len(),
                RootSystem::<Rat>::expected_count(label, rank),
                "{label}{rank}"
            );
            assert!(s.roots().is_symmetric(), "{label}{rank} not symmetric");
        }
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        assert!(RootSystem::<Rat>::build(TypeLabel::A, 0).is_err());
        assert!(RootSystem::<Rat>::build(TypeLabel::D, 1).is_err());
        assert!(RootSystem::<Rat>::build(TypeLabel::E6, 7).is_err());
        assert!(RootSystem::<Rat>::build(TypeLabel::G2, 3).is_err());
        assert!(RootSystem::<Rat>::build(TypeLabel::F4, 2).is_err());
    }

    #[test]
    fn zero_vector_is_rejected_from_root_sets() {
        assert!(RootSet::new(2, vec![RatVec::zero(2)]).is_err());
    }

    #[test]
    fn membership_and_order_are_deterministic() {
        let a = RootSet::new(2, vec![ratvec(&[1, 0]), ratvec(&[0, 1]), ratvec(&[1, 0])]).unwrap();
        assert_eq!(a.len(), 2);
        let order: Vec<_> = a.iter().cloned().collect();
        let b = RootSet::new(2, vec![ratvec(&[0, 1]), ratvec(&[1, 0])]).unwrap();
        let order_b: Vec<_> = b.iter().cloned().collect();
        assert_eq!(order, order_b);
        assert!(a.contains_or_zero(&RatVec::zero(2)));
        assert!(!a.contains(&RatVec::zero(2)));
    }

    /// Every root must be an integer combination of the simple roots with
    /// coefficients all >= 0 or all <= 0.
    fn check_simple_decomposition(s: &RootSystem<Rat>) {
        let cols = Matrix::from_cols(s.simple_roots()).unwrap();
        for root in s.roots().iter() {
            let c = cols.solve(root).unwrap_or_else(|_| {
                panic!("{}{}: {root} outside simple span", s.label(), s.rank())
            });
            let mut pos = false;
            let mut neg = false;
            for x in c.iter() {
                assert!(x.denom().is_one(), "non-integer coefficient {x} for {root}");
                if x.is_positive() {
                    pos = true;
                }
                if x.is_negative() {
                    neg = true;
                }
            }
            assert!(!(pos && neg), "mixed-sign decomposition for {root}");
        }
    }

    #[test]
    fn simple_roots_are_a_base() {
        for (label, rank) in [
            (TypeLabel::A, 2),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::D, 4),
            (TypeLabel::G2, 2),
            (TypeLabel::F4, 4),
            (TypeLabel::E6, 6),
            (TypeLabel::E7, 7),
            (TypeLabel::E8, 8),
        ] {
            let s = sys(label, rank);
            assert_eq!(s.simple_roots().len(), rank, "{label}{rank}");
            check_simple_decomposition(&s);
        }
    }

    #[test]
    fn labels_parse_and_display() {
        for (txt, label) in [
            ("A", TypeLabel::A),
            ("c", TypeLabel::C),
            ("e7", TypeLabel::E7),
            ("G2", TypeLabel::G2),
        ] {
            assert_eq!(txt.parse::<TypeLabel>().unwrap(), label);
        }
        assert!("H3".parse::<TypeLabel>().is_err());
        assert_eq!(TypeLabel::E8.to_string(), "E8");
    }
}
