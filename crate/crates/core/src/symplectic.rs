use std::fmt;

use crate::error::{Error, Result};
use crate::group::{generate, FiniteGroup, MatrixLaw};
use crate::linalg::{Matrix, Vector};
use crate::roots::RootSet;
use crate::sandwich::{Check, HatSystem};
use crate::scalar::Field;
use std::sync::Arc;

/// A permutation of {1, …, M}, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPerm {
    images: Vec<usize>,
}

impl IndexPerm {
    /// Builds from 0-based images; must be a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return Err(Error::InconsistentMap(format!(
                    "not a permutation of 0..{m}: {images:?}"
                )));
            }
            seen[i] = true;
        }
        Ok(IndexPerm { images })
    }

    pub fn identity(m: usize) -> Self {
        IndexPerm {
            images: (0..m).collect(),
        }
    }

    /// The transposition swapping `a` and `b` (0-based).
    pub fn transposition(m: usize, a: usize, b: usize) -> Result<Self> {
        if a >= m || b >= m {
            return Err(Error::InconsistentMap(format!(
                "transposition ({a} {b}) out of range for m = {m}"
            )));
        }
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(a, b);
        Ok(IndexPerm { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// τ(i), 0-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &IndexPerm) -> IndexPerm {
        IndexPerm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> IndexPerm {
        let mut inv = vec![0usize; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        IndexPerm { images: inv }
    }
}

impl fmt::Display for IndexPerm {
    /// One-line notation with 1-based entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

/// The phase space Y with ordered basis (x₁ … x_M, y₁ … y_M): x_i carries
/// the hat root α̂ᵢ, y_i carries −α̂ᵢ, and the symplectic form is the
/// standard block form with Ω(x_i, y_k) = δ_ik.
///
/// The centre vector X_ζ̂ stays outside Y as a symbolic direction with
/// normalization ν_ζ̂(X_ζ̂) = 1; only its label is recorded here.
#[derive(Debug, Clone)]
pub struct PhaseSpace<T> {
    m: usize,
    omega: Matrix<T>,
    /// Hat roots carried by the basis vectors: [α̂₁ … α̂_M, −α̂₁ … −α̂_M].
    labels: Vec<Vector<T>>,
}

pub const CENTER_LABEL: &str = "X_zeta";

impl<T: Field> PhaseSpace<T> {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Dimension of Y.
    pub fn dim(&self) -> usize {
        2 * self.m
    }

    pub fn omega(&self) -> &Matrix<T> {
        &self.omega
    }

    pub fn labels(&self) -> &[Vector<T>] {
        &self.labels
    }

    /// ν_ζ̂(X_ζ̂) = 1 by the chosen normalization.
    pub fn center_normalization(&self) -> T {
        T::one()
    }

    /// The vectors ±e_k of the phase coordinates; a spanning action set,
    /// so cached actions are faithful.
    fn frame(&self) -> Result<Arc<RootSet<T>>> {
        let n = self.dim();
        let mut vecs = Vec::with_capacity(2 * n);
        for k in 0..n {
            let mut plus = vec![T::zero(); n];
            plus[k] = T::one();
            vecs.push(Vector::new(plus));
            let mut minus = vec![T::zero(); n];
            minus[k] = -T::one();
            vecs.push(Vector::new(minus));
        }
        Ok(Arc::new(RootSet::new(n, vecs)?))
    }

    /// The matrix law for symplectic elements on this space.
    pub fn law(&self) -> Result<MatrixLaw<T>> {
        Ok(MatrixLaw::with_action(self.frame()?))
    }

    /// True iff mᵀ·Ω·m = Ω exactly.
    pub fn is_symplectic(&self, m: &Matrix<T>) -> Result<bool> {
        let lhs = m.transpose().mul_mat(&self.omega)?.mul_mat(m)?;
        Ok(lhs == self.omega)
    }

    /// Wraps a matrix as a symplectic group element; rejects any matrix
    /// that does not preserve the form.
    pub fn symp_element(&self, m: Matrix<T>) -> Result<SympMap<T>> {
        if !self.is_symplectic(&m)? {
            return Err(Error::InconsistentMap(
                "matrix does not preserve the symplectic form".into(),
            ));
        }
        self.law()?.element(m)
    }
}

/// A symplectic map on the phase space: a group element whose matrix
/// preserves Ω (enforced at construction by `symp_element`).
pub type SympMap<T> = crate::group::GroupElement<T>;

/// Builds the phase space of a hat system.
pub fn build_phase_space<T: Field>(h: &HatSystem<T>) -> Result<PhaseSpace<T>> {
    let m = h.m();
    let n = 2 * m;
    let mut omega = Matrix::zeros(n, n);
    for i in 0..m {
        *omega.at_mut(i, m + i) = T::one();
        *omega.at_mut(m + i, i) = -T::one();
    }
    let mut labels = Vec::with_capacity(n);
    labels.extend(h.pi_hat().iter().cloned());
    labels.extend(h.pi_hat().iter().map(|v| -v.clone()));
    Ok(PhaseSpace { m, omega, labels })
}

/// S_i: −identity on the symplectic plane π_i = span(x_i, y_i), identity
/// on every other plane. 1-based index.
pub fn s_generator<T: Field>(ps: &PhaseSpace<T>, i: usize) -> Result<SympMap<T>> {
    let m = ps.m();
    if i == 0 || i > m {
        return Err(Error::InconsistentMap(format!(
            "generator index {i} out of range 1..={m}"
        )));
    }
    let mut mat = Matrix::identity(2 * m);
    let idx = i - 1;
    *mat.at_mut(idx, idx) = -T::one();
    *mat.at_mut(m + idx, m + idx) = -T::one();
    ps.symp_element(mat)
}

/// T_τ: the lift of τ sending x_i ↦ x_{τ(i)} and y_i ↦ y_{τ(i)}; it maps
/// the plane π_i onto π_{τ(i)}.
pub fn lift_permutation<T: Field>(ps: &PhaseSpace<T>, tau: &IndexPerm) -> Result<SympMap<T>> {
    let m = ps.m();
    if tau.len() != m {
        return Err(Error::DimensionMismatch {
            context: "permutation lift",
            expected: m,
            got: tau.len(),
        });
    }
    let mut mat = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        let ti = tau.apply(i);
        *mat.at_mut(ti, i) = T::one();
        *mat.at_mut(m + ti, m + i) = T::one();
    }
    ps.symp_element(mat)
}

/// 𝒲: the group generated by S₁ … S_M.
pub fn script_w<T: Field>(ps: &PhaseSpace<T>, cap: usize) -> Result<FiniteGroup<MatrixLaw<T>>> {
    let gens: Vec<SympMap<T>> = (1..=ps.m())
        .map(|i| s_generator(ps, i))
        .collect::<Result<_>>()?;
    generate(ps.law()?, &gens, cap)
}

/// Verdict of the generator-matching isomorphism test between the hat
/// Weyl group and 𝒲.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuReport {
    /// The generator assignment extends to a single-valued map (equal
    /// words get equal images).
    pub well_defined: Check,
    /// μ(a·b) = μ(a)·μ(b) over the full multiplication tables.
    pub homomorphism: Check,
    /// μ is injective and onto.
    pub bijective: Check,
}

impl MuReport {
    pub fn pass(&self) -> bool {
        self.well_defined.pass && self.homomorphism.pass && self.bijective.pass
    }

    pub fn first_witness(&self) -> Option<String> {
        [&self.well_defined, &self.homomorphism, &self.bijective]
            .iter()
            .find_map(|c| c.witness.clone())
    }
}

/// Extends σ_α̂ᵢ ↦ S_i multiplicatively and verifies it is a well-defined
/// bijective homomorphism, by breadth-first word propagation and a full
/// table comparison.
pub fn mu_isomorphism<T: Field>(
    h: &HatSystem<T>,
    w_hat: &FiniteGroup<MatrixLaw<T>>,
    ps: &PhaseSpace<T>,
    w_script: &FiniteGroup<MatrixLaw<T>>,
) -> Result<MuReport> {
    if h.m() != ps.m() {
        return Err(Error::DimensionMismatch {
            context: "mu generator counts",
            expected: h.m(),
            got: ps.m(),
        });
    }
    let ctx = h.context()?;
    let mut hat_gen_idx = Vec::with_capacity(h.m());
    for alpha in h.pi_hat() {
        let g = ctx.reflection(alpha)?;
        let idx = w_hat.position_of(&g).ok_or(Error::InconsistentMap(
            "hat generator missing from the hat Weyl group".into(),
        ))?;
        hat_gen_idx.push(idx);
    }
    let mut script_gen_idx = Vec::with_capacity(ps.m());
    for i in 1..=ps.m() {
        let s = s_generator(ps, i)?;
        let idx = w_script.position_of(&s).ok_or(Error::InconsistentMap(
            "sign generator missing from the symplectic group".into(),
        ))?;
        script_gen_idx.push(idx);
    }

    let n = w_hat.order();
    // Propagate images along words: image[identity] = identity, and
    // image[a·gᵢ] = image[a]·Sᵢ. A conflict on re-visit is a
    // well-definedness failure.
    let mut image: Vec<Option<usize>> = vec![None; n];
    image[w_hat.identity_index()] = Some(w_script.identity_index());
    let mut frontier = vec![w_hat.identity_index()];
    let mut well_defined = Check::ok();
    while let Some(a) = frontier.pop() {
        let img_a = image[a].expect("frontier members have images");
        for (gi, &g) in hat_gen_idx.iter().enumerate() {
            let next = w_hat.multiply_index(a, g).ok_or(Error::InconsistentMap(
                "hat group is not closed".into(),
            ))?;
            let img_next = w_script
                .multiply_index(img_a, script_gen_idx[gi])
                .ok_or(Error::InconsistentMap(
                    "symplectic group is not closed".into(),
                ))?;
            match image[next] {
                None => {
                    image[next] = Some(img_next);
                    frontier.push(next);
                }
                Some(existing) => {
                    if existing != img_next && well_defined.pass {
                        well_defined = Check::fail(format!(
                            "word conflict at hat element #{next}: images #{existing} vs #{img_next}"
                        ));
                    }
                }
            }
        }
    }
    if image.iter().any(|x| x.is_none()) {
        return Err(Error::InconsistentMap(
            "hat generators do not generate the whole group".into(),
        ));
    }
    let image: Vec<usize> = image.into_iter().map(|x| x.unwrap()).collect();

    let bijective = {
        let mut seen = vec![false; w_script.order()];
        let mut dup = None;
        for (a, &i) in image.iter().enumerate() {
            if seen[i] {
                dup = Some(a);
                break;
            }
            seen[i] = true;
        }
        if w_hat.order() != w_script.order() {
            Check::fail(format!(
                "orders differ: {} vs {}",
                w_hat.order(),
                w_script.order()
            ))
        } else if let Some(a) = dup {
            Check::fail(format!("two hat elements share the image of #{a}"))
        } else {
            Check::ok()
        }
    };

    let homomorphism = {
        let hat_table = w_hat
            .fast_multiplication_table()
            .map_err(|_| Error::InconsistentMap("hat group is not closed".into()))?;
        let script_table = w_script
            .fast_multiplication_table()
            .map_err(|_| Error::InconsistentMap("symplectic group is not closed".into()))?;
        let mut bad = None;
        'outer: for a in 0..n {
            for b in 0..n {
                if image[hat_table[a][b]] != script_table[image[a]][image[b]] {
                    bad = Some(format!("mu(a*b) != mu(a)*mu(b) at a=#{a}, b=#{b}"));
                    break 'outer;
                }
            }
        }
        match bad {
            None => Check::ok(),
            Some(w) => Check::fail(w),
        }
    };

    Ok(MuReport {
        well_defined,
        homomorphism,
        bijective,
    })
}
