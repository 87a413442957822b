use std::sync::Arc;

use crate::chain::killing_integer;
use crate::error::{Error, Result};
use crate::group::{generate, FiniteGroup, GroupElement, MatrixLaw};
use crate::linalg::{LinFunc, Matrix, Vector};
use crate::roots::RootSet;
use crate::scalar::Field;

/// A membership set together with a chosen basis of its span, plus the
/// coordinate transforms between ambient and basis coordinates.
///
/// Reflections are represented as |basis| × |basis| matrices in basis
/// coordinates, which is the space the reflection formula lives on. When
/// the basis also spans the ambient coordinate space the context can
/// translate elements to ambient-coordinate matrices.
#[derive(Debug, Clone)]
pub struct ReflectionContext<T> {
    membership: RootSet<T>,
    basis: Vec<Vector<T>>,
    /// Membership set rewritten in basis coordinates; the action set for
    /// reflection group elements.
    coord_set: Arc<RootSet<T>>,
    /// dim × m, columns are the basis vectors.
    from_basis: Matrix<T>,
    /// m × dim, left inverse of `from_basis` on the span.
    to_basis: Matrix<T>,
}

impl<T: Field> ReflectionContext<T> {
    /// Builds the context. The basis must consist of membership vectors,
    /// be linearly independent, and span the same space as the whole set.
    pub fn new(membership: RootSet<T>, basis: Vec<Vector<T>>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::BadBasis("empty basis".into()));
        }
        for b in &basis {
            if !membership.contains(b) {
                return Err(Error::BadBasis(format!(
                    "basis vector {b} is not in the membership set"
                )));
            }
        }
        let b_mat = Matrix::from_cols(&basis)?;
        let m = basis.len();
        if b_mat.rank() != m {
            return Err(Error::BadBasis(
                "basis vectors are linearly dependent".into(),
            ));
        }
        let all_roots = Matrix::from_cols(membership.as_slice())?;
        if all_roots.rank() != m {
            return Err(Error::BadBasis(format!(
                "basis spans a {}-dimensional space but the set spans {} dimensions",
                m,
                all_roots.rank()
            )));
        }
        // Left inverse: B⁻¹ when square, otherwise (BᵀB)⁻¹Bᵀ, which inverts
        // B on its column span.
        let to_basis = if b_mat.rows() == m {
            b_mat.inverse().map_err(|_| {
                Error::BadBasis("square basis matrix is singular".into())
            })?
        } else {
            let bt = b_mat.transpose();
            let gram = bt.mul_mat(&b_mat)?;
            gram.inverse()
                .map_err(|_| Error::BadBasis("Gram matrix is singular".into()))?
                .mul_mat(&bt)?
        };
        // Every membership vector must live in the span; record the whole
        // set in basis coordinates as the action set.
        let mut coord_vecs = Vec::with_capacity(membership.len());
        for v in membership.iter() {
            let c = to_basis.mul_vec(v)?;
            let back = b_mat.mul_vec(&c)?;
            if &back != v {
                return Err(Error::BadBasis(format!(
                    "membership vector {v} lies outside the basis span"
                )));
            }
            coord_vecs.push(c);
        }
        let coord_set = Arc::new(RootSet::new(m, coord_vecs)?);
        Ok(ReflectionContext {
            membership,
            basis,
            coord_set,
            from_basis: b_mat,
            to_basis,
        })
    }

    pub fn membership(&self) -> &RootSet<T> {
        &self.membership
    }

    pub fn basis(&self) -> &[Vector<T>] {
        &self.basis
    }

    /// The membership set in basis coordinates.
    pub fn coord_set(&self) -> &Arc<RootSet<T>> {
        &self.coord_set
    }

    /// Basis coordinates of an ambient vector; fails off the span.
    pub fn coords(&self, v: &Vector<T>) -> Result<Vector<T>> {
        let c = self.to_basis.mul_vec(v)?;
        let back = self.from_basis.mul_vec(&c)?;
        if &back != v {
            return Err(Error::NotInMembership {
                context: "vector outside the basis span",
            });
        }
        Ok(c)
    }

    /// Ambient vector from basis coordinates.
    pub fn ambient(&self, coords: &Vector<T>) -> Result<Vector<T>> {
        self.from_basis.mul_vec(coords)
    }

    /// The functional k_alpha in basis coordinates: it takes the chain
    /// pairing value ⟨b, alpha⟩ on each basis vector b and extends
    /// linearly. In basis coordinates the coefficient vector is exactly
    /// the list of values. A zero alpha yields the zero functional.
    pub fn extend_functional(&self, alpha: &Vector<T>) -> Result<LinFunc<T>> {
        if alpha.is_zero() {
            return Ok(LinFunc::zero(self.basis.len()));
        }
        if !self.membership.contains(alpha) {
            return Err(Error::NotInMembership {
                context: "functional direction",
            });
        }
        let mut values = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let k = killing_integer(&self.membership, b, alpha)?;
            values.push(int_to_scalar::<T>(k));
        }
        Ok(LinFunc::new(Vector::new(values)))
    }

    /// The reflection v ↦ v − k_alpha(v)·alpha as a matrix over the basis,
    /// with its action on the membership set cached. alpha = 0 gives the
    /// identity.
    pub fn reflection(&self, alpha: &Vector<T>) -> Result<GroupElement<T>> {
        let law = self.law();
        if alpha.is_zero() {
            return Ok(law.identity_element());
        }
        let k = self.extend_functional(alpha)?;
        let alpha_coords = self.coords(alpha)?;
        let m = Matrix::identity(self.basis.len())
            .checked_sub(&Matrix::outer(&alpha_coords, k.coeffs()))?;
        law.element(m)
    }

    /// The matrix law for this context: basis-coordinate matrices acting
    /// on the membership set in basis coordinates.
    pub fn law(&self) -> MatrixLaw<T> {
        MatrixLaw::with_action(Arc::clone(&self.coord_set))
    }

    /// The group generated by the reflections at the given ambient roots,
    /// in basis coordinates.
    pub fn weyl_group(
        &self,
        generators: &[Vector<T>],
        cap: usize,
    ) -> Result<FiniteGroup<MatrixLaw<T>>> {
        let gens: Vec<GroupElement<T>> = generators
            .iter()
            .map(|a| self.reflection(a))
            .collect::<Result<_>>()?;
        generate(self.law(), &gens, cap)
    }

    /// Ambient-coordinate matrix of a basis-coordinate element. Requires
    /// the basis to span the ambient space (square transform).
    pub fn std_matrix(&self, e: &GroupElement<T>) -> Result<Matrix<T>> {
        if self.from_basis.rows() != self.from_basis.cols() {
            return Err(Error::NotInvertible {
                context: "basis does not span the ambient coordinates",
            });
        }
        self.from_basis
            .mul_mat(e.matrix())?
            .mul_mat(&self.to_basis)
    }

    /// The group generated by the reflections at the given roots, as
    /// ambient-coordinate matrices acting on the ambient membership set.
    /// Requires a spanning (square) basis.
    pub fn std_weyl_group(
        &self,
        generators: &[Vector<T>],
        cap: usize,
    ) -> Result<FiniteGroup<MatrixLaw<T>>> {
        let law = MatrixLaw::with_action(Arc::new(self.membership.clone()));
        let gens: Vec<GroupElement<T>> = generators
            .iter()
            .map(|a| {
                let basis_elem = self.reflection(a)?;
                law.element(self.std_matrix(&basis_elem)?)
            })
            .collect::<Result<_>>()?;
        generate(law, &gens, cap)
    }
}

/// A small signed integer as a scalar.
pub(crate) fn int_to_scalar<T: Field>(k: i64) -> T {
    let mut acc = T::zero();
    for _ in 0..k.unsigned_abs() {
        acc = acc + T::one();
    }
    if k < 0 {
        -acc
    } else {
        acc
    }
}

/// Identity element helper on the law (used where no reflection is built).
impl<T: Field> MatrixLaw<T> {
    pub fn identity_element(&self) -> GroupElement<T> {
        use crate::group::GroupLaw;
        self.identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::root_chain;
    use crate::group::GroupLaw;
    use crate::roots::{RootSystem, TypeLabel};
    use crate::{rat, ratvec, Rat, RatVec};

    fn context(label: TypeLabel, rank: usize) -> ReflectionContext<Rat> {
        let s = RootSystem::build(label, rank).unwrap();
        ReflectionContext::new(s.roots().clone(), s.simple_roots().to_vec()).unwrap()
    }

    fn hat_context(m: usize) -> ReflectionContext<Rat> {
        // Hat roots ±ê_i in m+1 ambient coordinates (first coordinate 0),
        // mirroring how restriction produces them.
        let dim = m + 1;
        let mut roots = Vec::new();
        let mut basis = Vec::new();
        for i in 1..=m {
            let mut plus = vec![0i64; dim];
            plus[i] = 1;
            let v = ratvec(&plus);
            basis.push(v.clone());
            roots.push(v);
            let mut minus = vec![0i64; dim];
            minus[i] = -1;
            roots.push(ratvec(&minus));
        }
        let set = RootSet::new(dim, roots).unwrap();
        ReflectionContext::new(set, basis).unwrap()
    }

    #[test]
    fn functional_values_match_the_chain_pairing() {
        let ctx = hat_context(2);
        let e1 = ratvec(&[0, 1, 0]);
        let f = ctx.extend_functional(&e1).unwrap();
        assert_eq!(f.coeffs(), &ratvec(&[2, 0]));
        // k_alpha(alpha) = 2 for every root.
        for alpha in ctx.membership().clone().iter() {
            let k = ctx.extend_functional(alpha).unwrap();
            let coords = ctx.coords(alpha).unwrap();
            assert_eq!(k.eval(&coords).unwrap(), rat(2));
        }
    }

    #[test]
    fn zero_direction_gives_zero_functional_and_identity() {
        let ctx = context(TypeLabel::C, 2);
        let zero = RatVec::zero(2);
        let f = ctx.extend_functional(&zero).unwrap();
        assert!(f.coeffs().is_zero());
        let id = ctx.reflection(&zero).unwrap();
        assert!(id.matrix().is_identity());
    }

    #[test]
    fn reflection_negates_its_own_root() {
        for ctx in [context(TypeLabel::C, 2), context(TypeLabel::C, 3), hat_context(3)] {
            for alpha in ctx.membership().clone().iter() {
                let r = ctx.reflection(alpha).unwrap();
                let coords = ctx.coords(alpha).unwrap();
                let image = r.matrix().mul_vec(&coords).unwrap();
                assert_eq!(image, -coords, "alpha={alpha}");
            }
        }
    }

    #[test]
    fn c2_long_root_reflection_example() {
        let ctx = context(TypeLabel::C, 2);
        let alpha = ratvec(&[0, 2]);
        let beta = ratvec(&[1, -1]);
        let r = ctx.reflection(&alpha).unwrap();
        let image = ctx
            .ambient(&r.matrix().mul_vec(&ctx.coords(&beta).unwrap()).unwrap())
            .unwrap();
        assert_eq!(image, ratvec(&[1, 1]));
    }

    #[test]
    fn reflections_are_involutions() {
        for ctx in [context(TypeLabel::C, 2), context(TypeLabel::C, 3), hat_context(2)] {
            let law = ctx.law();
            for alpha in ctx.membership().clone().iter() {
                let r = ctx.reflection(alpha).unwrap();
                let square = law.multiply(&r, &r);
                assert!(square.matrix().is_identity(), "alpha={alpha}");
            }
        }
    }

    #[test]
    fn reflection_reverses_each_chain() {
        // The image of base + j·direction under the direction's reflection
        // is base + (p − (q + j))·direction, for every chain and offset.
        for ctx in [context(TypeLabel::C, 2), hat_context(2)] {
            let membership = ctx.membership().clone();
            let mut all: Vec<RatVec> = vec![RatVec::zero(membership.dim())];
            all.extend(membership.iter().cloned());
            for beta in &all {
                for alpha in membership.iter() {
                    let chain = root_chain(&membership, beta, alpha).unwrap();
                    let r = ctx.reflection(alpha).unwrap();
                    let (q, p) = (chain.q() as i64, chain.p() as i64);
                    for j in -q..=p {
                        let v = chain.element_at(j);
                        let expected = chain.element_at(p - (q + j));
                        let image = ctx
                            .ambient(&r.matrix().mul_vec(&ctx.coords(&v).unwrap()).unwrap())
                            .unwrap();
                        assert_eq!(image, expected, "beta={beta} alpha={alpha} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_inverts_its_negative() {
        let ctx = context(TypeLabel::C, 3);
        let law = ctx.law();
        for alpha in ctx.membership().clone().iter() {
            let r = ctx.reflection(alpha).unwrap();
            let r_neg = ctx.reflection(&-alpha.clone()).unwrap();
            let prod = law.multiply(&r, &r_neg);
            assert!(prod.matrix().is_identity(), "alpha={alpha}");
        }
    }

    #[test]
    fn weyl_group_of_c2_has_order_eight() {
        let ctx = context(TypeLabel::C, 2);
        let g = ctx.weyl_group(ctx.basis(), 1000).unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn std_coordinates_agree_with_basis_coordinates() {
        let ctx = context(TypeLabel::C, 3);
        for alpha in ctx.membership().clone().iter() {
            let r = ctx.reflection(alpha).unwrap();
            let std = ctx.std_matrix(&r).unwrap();
            for v in ctx.membership().clone().iter() {
                let via_basis = ctx
                    .ambient(&r.matrix().mul_vec(&ctx.coords(v).unwrap()).unwrap())
                    .unwrap();
                let via_std = std.mul_vec(v).unwrap();
                assert_eq!(via_basis, via_std);
            }
        }
    }

    #[test]
    fn std_weyl_group_acts_on_ambient_roots() {
        let ctx = context(TypeLabel::C, 2);
        let g = ctx.std_weyl_group(ctx.basis(), 1000).unwrap();
        assert_eq!(g.order(), 8);
        // Every element must have a cached permutation of the root set.
        for e in g.elements() {
            assert!(e.action().is_some());
        }
    }

    #[test]
    fn bad_bases_are_rejected() {
        let s = RootSystem::<Rat>::build(TypeLabel::C, 2).unwrap();
        let dep = vec![ratvec(&[1, 1]), ratvec(&[-1, -1])];
        assert!(ReflectionContext::new(s.roots().clone(), dep).is_err());
        let not_spanning = vec![ratvec(&[1, 1])];
        assert!(ReflectionContext::new(s.roots().clone(), not_spanning).is_err());
        let outside = vec![ratvec(&[1, 0]), ratvec(&[0, 1])];
        assert!(ReflectionContext::new(s.roots().clone(), outside).is_err());
    }

    #[test]
    fn non_member_reflection_is_rejected() {
        let ctx = context(TypeLabel::C, 2);
        assert!(ctx.reflection(&ratvec(&[3, 0])).is_err());
        assert!(ctx.extend_functional(&ratvec(&[3, 0])).is_err());
    }
}
