use std::collections::BTreeMap;

use crate::chain::PairingTable;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, MatrixLaw};
use crate::linalg::{Matrix, Vector};
use crate::reflect::ReflectionContext;
use crate::roots::{RootSet, RootSystem};
use crate::scalar::Field;

/// An ambient root system cut by a grading vector h*: the roots vanishing
/// on h* (R⁰), the roots negative on h* (R⁻), and the exact orthogonal
/// projector onto span(R⁰) that realizes restriction in coordinates.
#[derive(Debug, Clone)]
pub struct Alignment<T> {
    ambient: RootSystem<T>,
    h_star: Vector<T>,
    r_zero: RootSet<T>,
    r_minus: RootSet<T>,
    r_zero_simple: Vec<Vector<T>>,
    projector: Matrix<T>,
}

impl<T: Field> Alignment<T> {
    pub fn ambient(&self) -> &RootSystem<T> {
        &self.ambient
    }

    pub fn h_star(&self) -> &Vector<T> {
        &self.h_star
    }

    pub fn r_zero(&self) -> &RootSet<T> {
        &self.r_zero
    }

    pub fn r_minus(&self) -> &RootSet<T> {
        &self.r_minus
    }

    /// Simple roots of R⁰ under the lexicographic positivity rule.
    pub fn r_zero_simple(&self) -> &[Vector<T>] {
        &self.r_zero_simple
    }

    /// Orthogonal projector onto span(R⁰).
    pub fn projector(&self) -> &Matrix<T> {
        &self.projector
    }
}

/// True iff the first nonzero coordinate is positive.
fn lex_positive<T: Field>(v: &Vector<T>) -> bool {
    for x in v.iter() {
        if x.is_zero() {
            continue;
        }
        return *x > T::zero();
    }
    false
}

/// The positive elements that are not sums of two positive elements.
fn simple_subset<T: Field>(set: &RootSet<T>) -> Vec<Vector<T>> {
    let positives: Vec<Vector<T>> = set.iter().filter(|v| lex_positive(v)).cloned().collect();
    let mut simple = Vec::new();
    for candidate in &positives {
        let decomposable = positives.iter().any(|b| {
            let rest = candidate - b;
            !rest.is_zero() && lex_positive(&rest) && set.contains(&rest)
        });
        if !decomposable {
            simple.push(candidate.clone());
        }
    }
    simple
}

/// Partitions an ambient system by the sign of the pairing with `h_star`
/// and builds the restriction projector.
///
/// Requirements: h_star is nonzero; R⁰ is nonempty and spans a space of
/// dimension rank − 1; R⁰ passes the root-system axioms (with its simple
/// subset as basis).
pub fn align<T: Field>(ambient: RootSystem<T>, h_star: Vector<T>) -> Result<Alignment<T>> {
    if h_star.is_zero() {
        return Err(Error::InvalidRootSystem("h* must be nonzero".into()));
    }
    if h_star.dim() != ambient.dim() {
        return Err(Error::DimensionMismatch {
            context: "h* coordinates",
            expected: ambient.dim(),
            got: h_star.dim(),
        });
    }
    let mut zero_part = Vec::new();
    let mut minus_part = Vec::new();
    for alpha in ambient.roots().iter() {
        let value = alpha.dot(&h_star)?;
        if value.is_zero() {
            zero_part.push(alpha.clone());
        } else if value < T::zero() {
            minus_part.push(alpha.clone());
        }
    }
    if zero_part.is_empty() {
        return Err(Error::InvalidRootSystem(
            "no ambient root vanishes on h*".into(),
        ));
    }
    let r_zero = RootSet::new(ambient.dim(), zero_part)?;
    let r_minus = RootSet::new(ambient.dim(), minus_part)?;
    let span_matrix = Matrix::from_cols(r_zero.as_slice())?;
    let span_rank = span_matrix.rank();
    if span_rank != ambient.rank() - 1 {
        return Err(Error::InvalidRootSystem(format!(
            "R0 spans a {}-dimensional space; expected rank - 1 = {}",
            span_rank,
            ambient.rank() - 1
        )));
    }
    let r_zero_simple = simple_subset(&r_zero);
    if r_zero_simple.len() != span_rank {
        return Err(Error::InvalidRootSystem(format!(
            "R0 has {} simple roots for a span of dimension {}",
            r_zero_simple.len(),
            span_rank
        )));
    }
    let axioms = verify_axioms_on(&r_zero, &r_zero_simple)?;
    if !axioms.pass() {
        return Err(Error::InvalidRootSystem(format!(
            "R0 fails the root-system axioms: {}",
            axioms.first_witness().unwrap_or_default()
        )));
    }
    // Orthogonal projector onto span(R⁰): P = B(BᵀB)⁻¹Bᵀ for an
    // independent spanning subset B of R⁰.
    let mut basis: Vec<Vector<T>> = Vec::new();
    for v in r_zero.iter() {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if Matrix::from_cols(&trial)?.rank() == trial.len() {
            basis = trial;
            if basis.len() == span_rank {
                break;
            }
        }
    }
    let b = Matrix::from_cols(&basis)?;
    let bt = b.transpose();
    let gram = bt.mul_mat(&b)?;
    let projector = b.mul_mat(&gram.inverse()?)?.mul_mat(&bt)?;
    Ok(Alignment {
        ambient,
        h_star,
        r_zero,
        r_minus,
        r_zero_simple,
        projector,
    })
}

/// Which negative roots bracket to zero with all of R⁻, and whether that
/// centre is one-dimensional (the class-𝒞 condition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterReport<T> {
    pub center_roots: Vec<Vector<T>>,
    pub dimension: usize,
    pub is_class_c: bool,
}

/// The centre of the nilradical by the root-addition criterion: a root
/// α ∈ R⁻ is central iff α + β is never an ambient root for β ∈ R⁻.
pub fn nilradical_center<T: Field>(a: &Alignment<T>) -> CenterReport<T> {
    let mut center_roots = Vec::new();
    for alpha in a.r_minus.iter() {
        let commutes_with_all = a
            .r_minus
            .iter()
            .all(|beta| !a.ambient.roots().contains(&(alpha + beta)));
        if commutes_with_all {
            center_roots.push(alpha.clone());
        }
    }
    let dimension = center_roots.len();
    CenterReport {
        center_roots,
        dimension,
        is_class_c: dimension == 1,
    }
}

/// The projected system R̂: the images of R⁻ under the restriction
/// projector, with the zero image ζ̂ split off, the nonzero images Φ,
/// the positive half Π̂, and the fibers over each image.
#[derive(Debug, Clone)]
pub struct HatSystem<T> {
    m: usize,
    dim: usize,
    phi: RootSet<T>,
    pi_hat: Vec<Vector<T>>,
    fibers: BTreeMap<Vector<T>, Vec<Vector<T>>>,
    center_fiber: Vec<Vector<T>>,
}

impl<T: Field> HatSystem<T> {
    /// Number of positive hat roots; the rank of Û.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Ambient coordinate dimension the hat roots are embedded in.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// ζ̂, the zero restriction.
    pub fn zeta(&self) -> Vector<T> {
        Vector::zero(self.dim)
    }

    /// The nonzero restrictions Φ.
    pub fn phi(&self) -> &RootSet<T> {
        &self.phi
    }

    /// The positive half Π̂ = (α̂₁, …, α̂_M); also the basis of Û.
    pub fn pi_hat(&self) -> &[Vector<T>] {
        &self.pi_hat
    }

    /// The R⁻ roots restricting to `image` (zero image included).
    pub fn fiber_of(&self, image: &Vector<T>) -> Option<&[Vector<T>]> {
        self.fibers.get(image).map(|v| v.as_slice())
    }

    /// All (image, fiber) pairs in sorted image order.
    pub fn fibers(&self) -> impl Iterator<Item = (&Vector<T>, &[Vector<T>])> {
        self.fibers.iter().map(|(k, v)| (k, v.as_slice()))
    }

    /// The fiber over ζ̂.
    pub fn center_fiber(&self) -> &[Vector<T>] {
        &self.center_fiber
    }

    /// The reflection context of Φ with basis Π̂.
    pub fn context(&self) -> Result<ReflectionContext<T>> {
        ReflectionContext::new(self.phi.clone(), self.pi_hat.clone())
    }
}

/// Projects R⁻ to build the hat system. Requires the class-𝒞 gate to
/// pass; the failure carries the centre report.
pub fn restrict<T: Field>(a: &Alignment<T>) -> Result<HatSystem<T>> {
    let center = nilradical_center(a);
    if !center.is_class_c {
        return Err(Error::NotClassC {
            dim: center.dimension,
            roots: center.center_roots.iter().map(|v| v.to_string()).collect(),
        });
    }
    let mut fibers: BTreeMap<Vector<T>, Vec<Vector<T>>> = BTreeMap::new();
    for beta in a.r_minus.iter() {
        let image = a.projector.mul_vec(beta)?;
        fibers.entry(image).or_default().push(beta.clone());
    }
    for members in fibers.values_mut() {
        members.sort();
    }
    let zero = Vector::zero(a.ambient.dim());
    let center_fiber = match fibers.get(&zero) {
        Some(f) => f.clone(),
        None => {
            return Err(Error::InvalidRootSystem(
                "no negative root restricts to zero".into(),
            ))
        }
    };
    // The zero fiber must be exactly the centre found by the bracket
    // criterion.
    let mut expected = center.center_roots.clone();
    expected.sort();
    if center_fiber != expected {
        return Err(Error::InconsistentMap(
            "zero fiber differs from the bracket-criterion centre".into(),
        ));
    }
    let nonzero: Vec<Vector<T>> = fibers.keys().filter(|v| !v.is_zero()).cloned().collect();
    let phi = RootSet::new(a.ambient.dim(), nonzero)?;
    if !phi.is_symmetric() {
        return Err(Error::InvalidRootSystem(
            "projected roots are not symmetric".into(),
        ));
    }
    let mut pi_hat: Vec<Vector<T>> = phi.iter().filter(|v| lex_positive(v)).cloned().collect();
    // Descending order numbers the hat roots by their leading coordinate,
    // which matches the simple-root numbering of the base system.
    pi_hat.sort_by(|a, b| b.cmp(a));
    if 2 * pi_hat.len() != phi.len() {
        return Err(Error::InvalidRootSystem(
            "positive hat roots do not split the projected set in half".into(),
        ));
    }
    let m = pi_hat.len();
    if Matrix::from_cols(&pi_hat)?.rank() != m {
        return Err(Error::InvalidRootSystem(
            "positive hat roots are linearly dependent".into(),
        ));
    }
    Ok(HatSystem {
        m,
        dim: a.ambient.dim(),
        phi,
        pi_hat,
        fibers,
        center_fiber,
    })
}

/// One axiom's verdict, with the first counterexample when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn ok() -> Self {
        Check {
            pass: true,
            witness: None,
        }
    }

    pub fn fail(witness: String) -> Self {
        Check {
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Verdicts for the five axioms of a system of roots, plus the additivity
/// equation that accompanies axiom 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    /// Axiom 1: the designated basis is independent and spans the span of
    /// the whole set.
    pub spans: Check,
    /// Axiom 2: the set equals its negation.
    pub symmetric: Check,
    /// Axiom 3: every chain through every pair terminates with finite
    /// (q, p).
    pub chains_finite: Check,
    /// Axiom 4 with its additivity law: the pairing is additive in its
    /// first slot over every additive triple.
    pub additive: Check,
    /// Axiom 5: ⟨α, α⟩ = 2 for every element.
    pub normalized: Check,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.spans.pass
            && self.symmetric.pass
            && self.chains_finite.pass
            && self.additive.pass
            && self.normalized.pass
    }

    pub fn first_witness(&self) -> Option<String> {
        [
            &self.spans,
            &self.symmetric,
            &self.chains_finite,
            &self.additive,
            &self.normalized,
        ]
        .iter()
        .find_map(|c| c.witness.clone())
    }
}

/// Exhaustively checks the system-of-roots axioms on a membership set with
/// a designated basis. Report-valued: axiom violations are recorded, not
/// raised; only structural impossibilities (dimension mismatches) error.
pub fn verify_axioms_on<T: Field>(
    membership: &RootSet<T>,
    basis: &[Vector<T>],
) -> Result<AxiomReport> {
    // Axiom 1: independence and spanning.
    let spans = {
        if basis.is_empty() {
            Check::fail("empty basis".into())
        } else {
            let b = Matrix::from_cols(basis)?;
            let all = Matrix::from_cols(membership.as_slice())?;
            if b.rank() != basis.len() {
                Check::fail("basis is linearly dependent".into())
            } else if all.rank() != basis.len() {
                Check::fail(format!(
                    "basis spans {} dimensions, set spans {}",
                    basis.len(),
                    all.rank()
                ))
            } else {
                Check::ok()
            }
        }
    };
    // Axiom 2: symmetry.
    let symmetric = match membership.iter().find(|v| !membership.contains(&-(*v).clone())) {
        None => Check::ok(),
        Some(v) => Check::fail(format!("{} is a member but {} is not", v, -v.clone())),
    };
    // Axiom 3 and the pairing table in one pass: any non-terminating chain
    // surfaces as an error from the table builder.
    let (table, chains_finite) = match PairingTable::build(membership) {
        Ok(t) => (Some(t), Check::ok()),
        Err(e) => (None, Check::fail(format!("chain scan failed: {e}"))),
    };
    // Axiom 4, additivity: ⟨β₁+β₂, α⟩ = ⟨β₁, α⟩ + ⟨β₂, α⟩ whenever all
    // three bases are members (zero included).
    let additive = match &table {
        None => Check::fail("skipped: chains did not terminate".into()),
        Some(t) => {
            let elems = t.elements();
            let mut failure = None;
            'outer: for (i1, b1) in elems.iter().enumerate() {
                for (i2, b2) in elems.iter().enumerate() {
                    let sum = b1 + b2;
                    let Some(is) = t.position(&sum) else {
                        continue;
                    };
                    for (ai, alpha) in elems.iter().enumerate() {
                        let lhs = t.value_at(is, ai);
                        let rhs = t.value_at(i1, ai) + t.value_at(i2, ai);
                        if lhs != rhs {
                            failure = Some(format!(
                                "⟨{}+{}, {}⟩ = {} but parts sum to {}",
                                b1, b2, alpha, lhs, rhs
                            ));
                            break 'outer;
                        }
                    }
                }
            }
            match failure {
                None => Check::ok(),
                Some(w) => Check::fail(w),
            }
        }
    };
    // Axiom 5: every member pairs with itself to 2.
    let normalized = match &table {
        None => Check::fail("skipped: chains did not terminate".into()),
        Some(t) => {
            let mut bad = None;
            for (i, v) in t.elements().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if t.value_at(i, i) != 2 {
                    bad = Some(format!("⟨{v}, {v}⟩ = {}", t.value_at(i, i)));
                    break;
                }
            }
            match bad {
                None => Check::ok(),
                Some(w) => Check::fail(w),
            }
        }
    };
    Ok(AxiomReport {
        spans,
        symmetric,
        chains_finite,
        additive,
        normalized,
    })
}

/// The axiom report for a hat system (membership Φ, basis Π̂).
pub fn verify_axioms<T: Field>(h: &HatSystem<T>) -> Result<AxiomReport> {
    verify_axioms_on(&h.phi, &h.pi_hat)
}

/// True iff every sum of two nonzero hat roots that lands back in
/// R̂ = Φ ∪ {ζ̂} is ζ̂ itself.
pub fn sum_collapse_check<T: Field>(h: &HatSystem<T>) -> bool {
    for a in h.phi.iter() {
        for b in h.phi.iter() {
            let sum = a + b;
            if h.phi.contains(&sum) {
                return false;
            }
        }
    }
    true
}

/// The Weyl group of the hat system: the closure of the reflections at
/// the positive hat roots, as M × M matrices in Π̂ coordinates.
pub fn hat_weyl<T: Field>(h: &HatSystem<T>, cap: usize) -> Result<FiniteGroup<MatrixLaw<T>>> {
    let report = verify_axioms(h)?;
    if !report.pass() {
        return Err(Error::InvalidRootSystem(format!(
            "hat system fails the axioms: {}",
            report.first_witness().unwrap_or_default()
        )));
    }
    let ctx = h.context()?;
    ctx.weyl_group(&h.pi_hat, cap)
}

/// Verdicts for the generator relations of the hat Weyl group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationsReport {
    /// Each generator squares to the identity.
    pub involutions: Check,
    /// Generators commute pairwise.
    pub commuting: Check,
    /// σ_α̂ᵢ sends α̂ᵢ to −α̂ᵢ and fixes every other α̂ⱼ.
    pub generator_images: Check,
    /// The product of all M generators is −identity on Û.
    pub product_is_minus_identity: Check,
    /// The whole group is abelian (exhaustive pair check).
    pub abelian: Check,
    /// |W| = 2^M.
    pub order_is_two_pow_m: Check,
}

impl RelationsReport {
    pub fn pass(&self) -> bool {
        self.involutions.pass
            && self.commuting.pass
            && self.generator_images.pass
            && self.product_is_minus_identity.pass
            && self.abelian.pass
            && self.order_is_two_pow_m.pass
    }

    pub fn first_witness(&self) -> Option<String> {
        [
            &self.involutions,
            &self.commuting,
            &self.generator_images,
            &self.product_is_minus_identity,
            &self.abelian,
            &self.order_is_two_pow_m,
        ]
        .iter()
        .find_map(|c| c.witness.clone())
    }
}

/// Exhaustively verifies the relations of the hat Weyl group against the
/// hat system it was generated from.
pub fn verify_relations<T: Field>(
    h: &HatSystem<T>,
    w: &FiniteGroup<MatrixLaw<T>>,
) -> Result<RelationsReport> {
    use crate::group::GroupLaw;
    let ctx = h.context()?;
    let gens: Vec<_> = h
        .pi_hat
        .iter()
        .map(|a| ctx.reflection(a))
        .collect::<Result<Vec<_>>>()?;
    let law = ctx.law();
    let m = h.m;

    let mut involutions = Check::ok();
    for (i, g) in gens.iter().enumerate() {
        if !law.multiply(g, g).matrix().is_identity() {
            involutions = Check::fail(format!("generator {} does not square to identity", i + 1));
            break;
        }
    }

    let mut commuting = Check::ok();
    'comm: for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate().skip(i + 1) {
            if law.multiply(a, b).matrix() != law.multiply(b, a).matrix() {
                commuting = Check::fail(format!("generators {} and {} do not commute", i + 1, j + 1));
                break 'comm;
            }
        }
    }

    // In Π̂ coordinates α̂ⱼ is the j-th standard axis.
    let mut generator_images = Check::ok();
    'imgs: for (i, g) in gens.iter().enumerate() {
        for j in 0..m {
            let mut axis = vec![T::zero(); m];
            axis[j] = T::one();
            let axis = Vector::new(axis);
            let image = g.matrix().mul_vec(&axis)?;
            let expected = if i == j { -axis } else { axis };
            if image != expected {
                generator_images = Check::fail(format!(
                    "generator {} sends axis {} to {}",
                    i + 1,
                    j + 1,
                    image
                ));
                break 'imgs;
            }
        }
    }

    let product = gens
        .iter()
        .fold(law.identity(), |acc, g| law.multiply(&acc, g));
    let minus_identity = Matrix::<T>::identity(m).neg();
    let product_is_minus_identity = if product.matrix() == &minus_identity {
        Check::ok()
    } else {
        Check::fail(format!(
            "generator product is {:?}, not -identity",
            product.matrix().canonical_key()
        ))
    };

    let abelian = {
        match w.fast_multiplication_table() {
            Err((a, b)) => Check::fail(format!("products of #{a}, #{b} leave the group")),
            Ok(table) => {
                let mut bad = None;
                'ab: for (a, row) in table.iter().enumerate() {
                    for b in (a + 1)..w.order() {
                        if row[b] != table[b][a] {
                            bad = Some(format!("elements #{a} and #{b} do not commute"));
                            break 'ab;
                        }
                    }
                }
                match bad {
                    None => Check::ok(),
                    Some(wt) => Check::fail(wt),
                }
            }
        }
    };

    let expected_order = 1usize << m;
    let order_is_two_pow_m = if w.order() == expected_order {
        Check::ok()
    } else {
        Check::fail(format!(
            "group order is {}, expected {}",
            w.order(),
            expected_order
        ))
    };

    Ok(RelationsReport {
        involutions,
        commuting,
        generator_images,
        product_is_minus_identity,
        abelian,
        order_is_two_pow_m,
    })
}

/// The Weyl group W_R of the base system R⁰, generated by the reflections
/// at its simple roots, as ambient-coordinate matrices acting on the full
/// ambient root set. This is the group that acts on R⁻.
pub fn base_weyl_group<T: Field>(
    a: &Alignment<T>,
    cap: usize,
) -> Result<FiniteGroup<MatrixLaw<T>>> {
    let ctx = ReflectionContext::new(
        a.ambient.roots().clone(),
        a.ambient.simple_roots().to_vec(),
    )?;
    ctx.std_weyl_group(&a.r_zero_simple, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::TypeLabel;
    use crate::{ratvec, Rat, RatVec};

    fn c_alignment(rank: usize) -> Alignment<Rat> {
        let s = RootSystem::build(TypeLabel::C, rank).unwrap();
        let mut h = vec![0i64; rank];
        h[0] = 1;
        align(s, ratvec(&h)).unwrap()
    }

    #[test]
    fn c3_alignment_counts() {
        let a = c_alignment(3);
        assert_eq!(a.r_zero().len(), 8);
        assert_eq!(a.r_minus().len(), 5);
        // R⁻ = {−2e₁} ∪ {−e₁ ± e_j}.
        for v in [
            ratvec(&[-2, 0, 0]),
            ratvec(&[-1, 1, 0]),
            ratvec(&[-1, -1, 0]),
            ratvec(&[-1, 0, 1]),
            ratvec(&[-1, 0, -1]),
        ] {
            assert!(a.r_minus().contains(&v), "missing {v}");
        }
    }

    #[test]
    fn b3_alignment_counts() {
        let s = RootSystem::build(TypeLabel::B, 3).unwrap();
        let a = align(s, ratvec(&[1, 0, 0])).unwrap();
        assert_eq!(a.r_zero().len(), 8);
        assert_eq!(a.r_minus().len(), 5);
    }

    #[test]
    fn a2_alignment_counts() {
        let s = RootSystem::build(TypeLabel::A, 2).unwrap();
        let a = align(s, ratvec(&[2, -1, -1])).unwrap();
        assert_eq!(a.r_zero().len(), 2);
        assert_eq!(a.r_minus().len(), 2);
    }

    #[test]
    fn degenerate_h_star_is_rejected() {
        let s = RootSystem::build(TypeLabel::C, 2).unwrap();
        assert!(align(s.clone(), RatVec::zero(2)).is_err());
        // Nothing vanishes on (1, 2).
        assert!(align(s, ratvec(&[1, 2])).is_err());
    }

    #[test]
    fn c3_center_is_one_dimensional() {
        let a = c_alignment(3);
        let c = nilradical_center(&a);
        assert!(c.is_class_c);
        assert_eq!(c.center_roots, vec![ratvec(&[-2, 0, 0])]);
    }

    #[test]
    fn b3_center_is_all_of_r_minus() {
        let s = RootSystem::build(TypeLabel::B, 3).unwrap();
        let a = align(s, ratvec(&[1, 0, 0])).unwrap();
        let c = nilradical_center(&a);
        assert!(!c.is_class_c);
        assert_eq!(c.dimension, 5);
    }

    #[test]
    fn a2_center_is_two_dimensional() {
        let s = RootSystem::build(TypeLabel::A, 2).unwrap();
        let a = align(s, ratvec(&[2, -1, -1])).unwrap();
        let c = nilradical_center(&a);
        assert!(!c.is_class_c);
        assert_eq!(c.dimension, 2);
    }

    #[test]
    fn restriction_of_c3() {
        let a = c_alignment(3);
        let h = restrict(&a).unwrap();
        assert_eq!(h.m(), 2);
        assert_eq!(h.phi().len(), 4);
        assert_eq!(h.pi_hat(), &[ratvec(&[0, 1, 0]), ratvec(&[0, 0, 1])]);
        assert_eq!(h.center_fiber(), &[ratvec(&[-2, 0, 0])]);
        // Fiber consistency: projecting any fiber member returns the image.
        for (image, fiber) in h.fibers() {
            for beta in fiber {
                assert_eq!(&a.projector().mul_vec(beta).unwrap(), image);
            }
        }
    }

    #[test]
    fn restriction_of_c2_has_m_equal_one() {
        let a = c_alignment(2);
        let h = restrict(&a).unwrap();
        assert_eq!(h.m(), 1);
        assert_eq!(h.phi().len(), 2);
    }

    #[test]
    fn restrict_rejects_non_class_c() {
        let s = RootSystem::build(TypeLabel::B, 3).unwrap();
        let a = align(s, ratvec(&[1, 0, 0])).unwrap();
        match restrict(&a) {
            Err(Error::NotClassC { dim, .. }) => assert_eq!(dim, 5),
            other => panic!("expected NotClassC, got {other:?}"),
        }
    }

    #[test]
    fn axioms_pass_on_hat_and_base_systems() {
        for rank in 2..=4 {
            let a = c_alignment(rank);
            let h = restrict(&a).unwrap();
            assert!(verify_axioms(&h).unwrap().pass(), "hat axioms at rank {rank}");
            assert!(
                verify_axioms_on(a.r_zero(), a.r_zero_simple()).unwrap().pass(),
                "base axioms at rank {rank}"
            );
        }
    }

    #[test]
    fn removing_a_root_breaks_symmetry_with_witness() {
        let a = c_alignment(3);
        let h = restrict(&a).unwrap();
        let kept: Vec<RatVec> = h
            .phi()
            .iter()
            .filter(|v| *v != &ratvec(&[0, -1, 0]))
            .cloned()
            .collect();
        let broken = RootSet::new(3, kept).unwrap();
        let report = verify_axioms_on(&broken, h.pi_hat()).unwrap();
        assert!(!report.symmetric.pass);
        let witness = report.symmetric.witness.unwrap();
        assert!(witness.contains("(0, 1, 0)"), "witness was {witness}");
    }

    #[test]
    fn sums_of_hat_roots_collapse() {
        for rank in 2..=4 {
            let a = c_alignment(rank);
            let h = restrict(&a).unwrap();
            assert!(sum_collapse_check(&h));
        }
    }

    #[test]
    fn hat_weyl_orders_are_powers_of_two() {
        for (rank, expected) in [(2usize, 2usize), (3, 4), (5, 16)] {
            let a = c_alignment(rank);
            let h = restrict(&a).unwrap();
            let w = hat_weyl(&h, 1_000_000).unwrap();
            assert_eq!(w.order(), expected, "rank {rank}");
        }
    }

    #[test]
    fn relations_hold_on_hat_weyl_groups() {
        for rank in 2..=5 {
            let a = c_alignment(rank);
            let h = restrict(&a).unwrap();
            let w = hat_weyl(&h, 1_000_000).unwrap();
            let report = verify_relations(&h, &w).unwrap();
            assert!(report.pass(), "rank {rank}: {:?}", report.first_witness());
        }
    }

    #[test]
    fn base_weyl_group_of_c3_is_the_c2_weyl_group() {
        let a = c_alignment(3);
        let w = base_weyl_group(&a, 1_000_000).unwrap();
        assert_eq!(w.order(), 8);
        // Elements act on ambient roots and fix h* (they are generated by
        // reflections at roots vanishing on h*).
        for e in w.elements() {
            assert_eq!(e.matrix().mul_vec(a.h_star()).unwrap(), *a.h_star());
        }
    }

    #[test]
    fn killing_matrix_of_pi_hat_is_twice_identity() {
        let a = c_alignment(4);
        let h = restrict(&a).unwrap();
        for (i, ai) in h.pi_hat().iter().enumerate() {
            for (j, aj) in h.pi_hat().iter().enumerate() {
                let k = crate::chain::killing_integer(h.phi(), aj, ai).unwrap();
                assert_eq!(k, if i == j { 2 } else { 0 });
            }
        }
    }
}
