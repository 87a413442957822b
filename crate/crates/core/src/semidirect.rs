use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;


use crate::error::{Error, Result};
use crate::group::{generate, FiniteGroup, GroupElement, GroupLaw, MatrixLaw};
use crate::linalg::{Matrix, Vector};
use crate::reflect::ReflectionContext;
use crate::sandwich::{Alignment, Check, HatSystem};
use crate::scalar::Field;
use crate::symplectic::{lift_permutation, s_generator, IndexPerm, PhaseSpace};

/// The action a base Weyl element induces on the hat roots: a signed
/// permutation of Π̂, recorded as the permutation τ, the signs, and the
/// assembled matrix in Π̂ coordinates.
///
/// The signs are stored for the matrix cross-check but deliberately play
/// no role in the twist: conjugation by the permutation lift depends on
/// τ alone, since each S_i is minus the identity on its whole plane.
#[derive(Debug, Clone)]
pub struct InducedMap<T> {
    source: GroupElement<T>,
    matrix_on_hat: Matrix<T>,
    tau: IndexPerm,
    signs: Vec<i64>,
}

impl<T: Field> InducedMap<T> {
    /// The base Weyl element in ambient coordinates.
    pub fn source(&self) -> &GroupElement<T> {
        &self.source
    }

    /// The induced map on the hat span, in Π̂ coordinates.
    pub fn matrix_on_hat(&self) -> &Matrix<T> {
        &self.matrix_on_hat
    }

    pub fn tau(&self) -> &IndexPerm {
        &self.tau
    }

    /// signs[i] is +1 if the image of α̂ᵢ₊₁ landed in Π̂, −1 if in −Π̂.
    pub fn signs(&self) -> &[i64] {
        &self.signs
    }
}

/// A single base reflection in ambient coordinates, acting on the full
/// ambient root set; built the same way as the base Weyl group elements,
/// so its canonical key resolves there.
pub fn base_reflection<T: Field>(a: &Alignment<T>, alpha: &Vector<T>) -> Result<GroupElement<T>> {
    let ctx = ReflectionContext::new(
        a.ambient().roots().clone(),
        a.ambient().simple_roots().to_vec(),
    )?;
    let law = MatrixLaw::with_action(Arc::new(ctx.membership().clone()));
    let basis_elem = ctx.reflection(alpha)?;
    law.element(ctx.std_matrix(&basis_elem)?)
}

/// Computes the map a base Weyl element induces on the hat roots: project
/// the image of any fiber representative. Every representative of a fiber
/// must project to the same hat root, and the element must keep R⁻ inside
/// R⁻; both are verified, not assumed.
pub fn induced_action<T: Field>(
    a: &Alignment<T>,
    h: &HatSystem<T>,
    sigma: &GroupElement<T>,
) -> Result<InducedMap<T>> {
    let m = h.m();
    for beta in a.r_minus().iter() {
        let image = sigma.matrix().mul_vec(beta)?;
        if !a.r_minus().contains(&image) {
            return Err(Error::InconsistentMap(format!(
                "element moves {beta} out of the negative layer (to {image})"
            )));
        }
    }

    let mut tau_images = vec![0usize; m];
    let mut signs = vec![0i64; m];
    let mut matrix_on_hat = Matrix::zeros(m, m);
    for (i, alpha_hat) in h.pi_hat().iter().enumerate() {
        let fiber = h.fiber_of(alpha_hat).ok_or(Error::InconsistentMap(
            "hat root has no fiber".into(),
        ))?;
        let mut projected: Option<Vector<T>> = None;
        for rep in fiber {
            let moved = sigma.matrix().mul_vec(rep)?;
            let proj = a.projector().mul_vec(&moved)?;
            match &projected {
                None => projected = Some(proj),
                Some(first) => {
                    if *first != proj {
                        return Err(Error::InconsistentMap(format!(
                            "fiber of {alpha_hat} projects inconsistently: {first} vs {proj}"
                        )));
                    }
                }
            }
        }
        let image = projected.ok_or(Error::InconsistentMap("empty fiber".into()))?;
        // The image is a hat root, hence ±(some element of Π̂).
        let (j, sign) = match h.pi_hat().iter().position(|p| *p == image) {
            Some(j) => (j, 1i64),
            None => {
                let neg = -image.clone();
                match h.pi_hat().iter().position(|p| *p == neg) {
                    Some(j) => (j, -1i64),
                    None => {
                        return Err(Error::InconsistentMap(format!(
                            "image {image} of {alpha_hat} is not a hat root"
                        )))
                    }
                }
            }
        };
        tau_images[i] = j;
        signs[i] = sign;
        *matrix_on_hat.at_mut(j, i) = crate::reflect::int_to_scalar(sign);
    }
    let tau = IndexPerm::from_images(tau_images)?;
    // The assembled matrix must permute Φ; the hat law validates that.
    h.context()?.law().element(matrix_on_hat.clone())?;
    Ok(InducedMap {
        source: sigma.clone(),
        matrix_on_hat,
        tau,
        signs,
    })
}

/// Exhaustive check that every element of the given group keeps every
/// negative-layer root strictly negative against h*.
pub fn check_rminus_stability<T: Field>(
    a: &Alignment<T>,
    w_base: &FiniteGroup<MatrixLaw<T>>,
) -> Result<Check> {
    for (gi, g) in w_base.elements().iter().enumerate() {
        for beta in a.r_minus().iter() {
            let image = g.matrix().mul_vec(beta)?;
            let pairing = image.dot(a.h_star())?;
            if pairing >= T::zero() {
                return Ok(Check::fail(format!(
                    "element #{gi} sends {beta} to {image}, pairing {pairing} is not negative"
                )));
            }
        }
    }
    Ok(Check::ok())
}

/// Induced maps for every element of the base Weyl group, indexed by group
/// position.
pub fn induced_maps<T: Field>(
    a: &Alignment<T>,
    h: &HatSystem<T>,
    w_base: &FiniteGroup<MatrixLaw<T>>,
) -> Result<Vec<InducedMap<T>>> {
    w_base
        .elements()
        .iter()
        .map(|g| induced_action(a, h, g))
        .collect()
}

/// Verifies σ ↦ τ_σ is a group homomorphism over the full multiplication
/// table, and that the identity induces the identity permutation.
pub fn tau_homomorphism_check<T: Field>(
    a: &Alignment<T>,
    h: &HatSystem<T>,
    w_base: &FiniteGroup<MatrixLaw<T>>,
) -> Result<Check> {
    let maps = induced_maps(a, h, w_base)?;
    if !maps[w_base.identity_index()].tau().is_identity() {
        return Ok(Check::fail(
            "identity element induces a non-identity permutation".into(),
        ));
    }
    let table = w_base
        .fast_multiplication_table()
        .map_err(|(x, y)| Error::InconsistentMap(format!("group not closed at #{x}*#{y}")))?;
    for (x, row) in table.iter().enumerate() {
        for (y, &xy) in row.iter().enumerate() {
            let composed = maps[x].tau().compose(maps[y].tau());
            if composed != *maps[xy].tau() {
                return Ok(Check::fail(format!(
                    "tau of #{x}*#{y} is {} but the composition gives {}",
                    maps[xy].tau(),
                    composed
                )));
            }
        }
    }
    Ok(Check::ok())
}

/// The automorphism of 𝒲 given by conjugation with the lift of τ,
/// tabulated over the group's element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiMap {
    tau: IndexPerm,
    /// images[j] is the index of T_τ · w_j · T_τ⁻¹ in 𝒲.
    images: Vec<usize>,
}

impl PhiMap {
    pub fn tau(&self) -> &IndexPerm {
        &self.tau
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, w_index: usize) -> usize {
        self.images[w_index]
    }
}

/// Realizes w ↦ T_τ·w·T_τ⁻¹ on the sign group concretely. Conjugation
/// must land back in the group (rejected with a witness otherwise), and
/// on generators it must move the plane index: φ(S_i) = S_{τ(i)}.
pub fn phi_of<T: Field>(
    ps: &PhaseSpace<T>,
    w_script: &FiniteGroup<MatrixLaw<T>>,
    im: &InducedMap<T>,
) -> Result<PhiMap> {
    let tau = im.tau().clone();
    let lift = lift_permutation(ps, &tau)?;
    let lift_inv = lift_permutation(ps, &tau.inverse())?;
    let mut images = Vec::with_capacity(w_script.order());
    for (j, w) in w_script.elements().iter().enumerate() {
        let conj = lift
            .matrix()
            .mul_mat(w.matrix())?
            .mul_mat(lift_inv.matrix())?;
        let key = conj.canonical_key();
        let idx = w_script.position_of_key(&key).ok_or_else(|| {
            Error::InconsistentMap(format!(
                "conjugation moves element #{j} out of the sign group"
            ))
        })?;
        images.push(idx);
    }
    // Generator relation: conjugation relabels the planes by τ.
    for i in 1..=ps.m() {
        let si = w_script
            .position_of(&s_generator(ps, i)?)
            .ok_or(Error::InconsistentMap("S_i missing from the group".into()))?;
        let expected = w_script
            .position_of(&s_generator(ps, tau.apply(i - 1) + 1)?)
            .ok_or(Error::InconsistentMap("S_tau(i) missing from the group".into()))?;
        if images[si] != expected {
            return Err(Error::InconsistentMap(format!(
                "conjugation sends S_{i} to element #{}, expected S_{}",
                images[si],
                tau.apply(i - 1) + 1
            )));
        }
    }
    let mut seen = vec![false; images.len()];
    for &i in &images {
        if seen[i] {
            return Err(Error::InconsistentMap(
                "conjugation is not injective on the sign group".into(),
            ));
        }
        seen[i] = true;
    }
    Ok(PhiMap { tau, images })
}

/// Direct matrix form of the relabeling relation: T_τ·S_i·T_τ⁻¹ equals
/// S_{τ(i)} for every given τ and every plane index.
pub fn lift_conjugation_check<T: Field>(
    ps: &PhaseSpace<T>,
    taus: &[IndexPerm],
) -> Result<Check> {
    for tau in taus {
        let lift = lift_permutation(ps, tau)?;
        let lift_inv = lift_permutation(ps, &tau.inverse())?;
        for i in 1..=ps.m() {
            let si = s_generator(ps, i)?;
            let conj = lift
                .matrix()
                .mul_mat(si.matrix())?
                .mul_mat(lift_inv.matrix())?;
            let expected = s_generator(ps, tau.apply(i - 1) + 1)?;
            if conj != *expected.matrix() {
                return Ok(Check::fail(format!(
                    "conjugating S_{i} by the lift of {tau} does not give S_{}",
                    tau.apply(i - 1) + 1
                )));
            }
        }
    }
    Ok(Check::ok())
}

/// φ tabulated over every element of the base Weyl group, indexed by group
/// position.
pub fn build_phi_table<T: Field>(
    a: &Alignment<T>,
    h: &HatSystem<T>,
    ps: &PhaseSpace<T>,
    w_script: &FiniteGroup<MatrixLaw<T>>,
    w_base: &FiniteGroup<MatrixLaw<T>>,
) -> Result<Vec<PhiMap>> {
    w_base
        .elements()
        .iter()
        .map(|g| phi_of(ps, w_script, &induced_action(a, h, g)?))
        .collect()
}

/// Verifies φ is a homomorphism into Aut(𝒲): φ_{στ}(w) = φ_σ(φ_τ(w)) for
/// every pair of base elements and every w.
pub fn phi_homomorphism_check<T: Field>(
    w_base: &FiniteGroup<MatrixLaw<T>>,
    phi_table: &[PhiMap],
) -> Result<Check> {
    if phi_table.len() != w_base.order() {
        return Err(Error::DimensionMismatch {
            context: "phi table",
            expected: w_base.order(),
            got: phi_table.len(),
        });
    }
    let table = w_base
        .fast_multiplication_table()
        .map_err(|(x, y)| Error::InconsistentMap(format!("group not closed at #{x}*#{y}")))?;
    let n_w = phi_table
        .first()
        .map(|p| p.images().len())
        .unwrap_or(0);
    for (x, row) in table.iter().enumerate() {
        for (y, &xy) in row.iter().enumerate() {
            for w in 0..n_w {
                if phi_table[xy].apply(w) != phi_table[x].apply(phi_table[y].apply(w)) {
                    return Ok(Check::fail(format!(
                        "phi of #{x}*#{y} disagrees with the composition on element #{w}"
                    )));
                }
            }
        }
    }
    Ok(Check::ok())
}

/// An element (w, σ) of the twisted product, held as the canonical keys of
/// its two components. Both keys must resolve in their groups; `sdp_element`
/// enforces that at the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SdpElement {
    pub w_key: String,
    pub sigma_key: String,
}

impl fmt::Display for SdpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.w_key, self.sigma_key)
    }
}

/// The twisted multiplication law (w, σ)·(w′, σ′) = (w·φ_σ(w′), σσ′),
/// closed over precomputed index tables of both component groups and the
/// φ table. Pure index data: building it freezes the group structure.
#[derive(Debug, Clone)]
pub struct SdpLaw {
    w_keys: Vec<String>,
    w_index: HashMap<String, usize>,
    base_keys: Vec<String>,
    base_index: HashMap<String, usize>,
    w_table: Vec<Vec<usize>>,
    base_table: Vec<Vec<usize>>,
    /// phi[σ][w] is the index of φ_σ(w) in the sign group.
    phi: Vec<Vec<usize>>,
    w_identity: usize,
    base_identity: usize,
}

impl SdpLaw {
    pub fn build<T: Field>(
        w_script: &FiniteGroup<MatrixLaw<T>>,
        w_base: &FiniteGroup<MatrixLaw<T>>,
        phi_table: &[PhiMap],
    ) -> Result<SdpLaw> {
        if phi_table.len() != w_base.order() {
            return Err(Error::DimensionMismatch {
                context: "phi table",
                expected: w_base.order(),
                got: phi_table.len(),
            });
        }
        for p in phi_table {
            if p.images().len() != w_script.order() {
                return Err(Error::DimensionMismatch {
                    context: "phi images",
                    expected: w_script.order(),
                    got: p.images().len(),
                });
            }
        }
        let w_keys: Vec<String> = w_script.elements().iter().map(|e| e.key().to_owned()).collect();
        let base_keys: Vec<String> = w_base.elements().iter().map(|e| e.key().to_owned()).collect();
        let w_index = w_keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        let base_index = base_keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        let w_table = w_script
            .fast_multiplication_table()
            .map_err(|(x, y)| Error::InconsistentMap(format!("sign group not closed at #{x}*#{y}")))?;
        let base_table = w_base
            .fast_multiplication_table()
            .map_err(|(x, y)| Error::InconsistentMap(format!("base group not closed at #{x}*#{y}")))?;
        Ok(SdpLaw {
            w_keys,
            w_index,
            base_keys,
            base_index,
            w_table,
            base_table,
            phi: phi_table.iter().map(|p| p.images().to_vec()).collect(),
            w_identity: w_script.identity_index(),
            base_identity: w_base.identity_index(),
        })
    }

    pub fn w_order(&self) -> usize {
        self.w_keys.len()
    }

    pub fn base_order(&self) -> usize {
        self.base_keys.len()
    }

    pub fn w_identity_key(&self) -> &str {
        &self.w_keys[self.w_identity]
    }

    pub fn base_identity_key(&self) -> &str {
        &self.base_keys[self.base_identity]
    }

    fn resolve(&self, e: &SdpElement) -> Result<(usize, usize)> {
        let w = *self.w_index.get(&e.w_key).ok_or_else(|| {
            Error::InconsistentMap(format!("unresolved sign-group key in {e}"))
        })?;
        let s = *self.base_index.get(&e.sigma_key).ok_or_else(|| {
            Error::InconsistentMap(format!("unresolved base-group key in {e}"))
        })?;
        Ok((w, s))
    }

    /// The element with the given component indices.
    pub fn element_at(&self, w: usize, sigma: usize) -> SdpElement {
        SdpElement {
            w_key: self.w_keys[w].clone(),
            sigma_key: self.base_keys[sigma].clone(),
        }
    }

    /// λ̃: the sign group into the product, w ↦ (w, 1).
    pub fn lambda(&self, w: usize) -> SdpElement {
        self.element_at(w, self.base_identity)
    }

    /// γ: the base group into the product, σ ↦ (1, σ).
    pub fn gamma(&self, sigma: usize) -> SdpElement {
        self.element_at(self.w_identity, sigma)
    }
}

impl GroupLaw for SdpLaw {
    type Elem = SdpElement;

    fn identity(&self) -> SdpElement {
        self.element_at(self.w_identity, self.base_identity)
    }

    /// Panics on foreign keys: closure only ever multiplies elements the
    /// law itself produced. The checked boundary is `sdp_multiply`.
    fn multiply(&self, a: &SdpElement, b: &SdpElement) -> SdpElement {
        sdp_multiply(self, a, b).expect("law elements carry resolvable keys")
    }

    fn key_of(&self, e: &SdpElement) -> String {
        format!("{}|{}", e.w_key, e.sigma_key)
    }
}

/// Checked constructor: both keys must resolve.
pub fn sdp_element(law: &SdpLaw, w_key: &str, sigma_key: &str) -> Result<SdpElement> {
    let e = SdpElement {
        w_key: w_key.to_owned(),
        sigma_key: sigma_key.to_owned(),
    };
    law.resolve(&e)?;
    Ok(e)
}

/// The twisted product: (w, σ)·(w′, σ′) = (w·φ_σ(w′), σσ′).
pub fn sdp_multiply(law: &SdpLaw, a: &SdpElement, b: &SdpElement) -> Result<SdpElement> {
    let (wa, sa) = law.resolve(a)?;
    let (wb, sb) = law.resolve(b)?;
    let twisted = law.phi[sa][wb];
    Ok(law.element_at(law.w_table[wa][twisted], law.base_table[sa][sb]))
}

/// Assembles the full twisted product group from its generators: the base
/// reflections paired with the sign identity's partner (1, σ_α), and the
/// plane flips paired with the base identity (S_i, 1).
pub fn build_semidirect<T: Field>(
    a: &Alignment<T>,
    h: &HatSystem<T>,
    ps: &PhaseSpace<T>,
    w_script: &FiniteGroup<MatrixLaw<T>>,
    w_base: &FiniteGroup<MatrixLaw<T>>,
    cap: usize,
) -> Result<FiniteGroup<SdpLaw>> {
    let phi_table = build_phi_table(a, h, ps, w_script, w_base)?;
    let law = SdpLaw::build(w_script, w_base, &phi_table)?;
    let mut gens = Vec::new();
    for alpha in a.r_zero_simple() {
        let refl = base_reflection(a, alpha)?;
        let idx = w_base.position_of(&refl).ok_or(Error::InconsistentMap(
            "base reflection missing from the base group".into(),
        ))?;
        gens.push(law.gamma(idx));
    }
    for i in 1..=ps.m() {
        let s = s_generator(ps, i)?;
        let idx = w_script.position_of(&s).ok_or(Error::InconsistentMap(
            "plane flip missing from the sign group".into(),
        ))?;
        gens.push(law.lambda(idx));
    }
    generate(law, &gens, cap)
}

/// Exhaustive associativity over the full table: (ab)c = a(bc) for every
/// triple. Matrix groups get this for free; the twisted product does not,
/// so it is checked, not assumed.
pub fn associativity_check<L: GroupLaw>(group: &FiniteGroup<L>) -> Check {
    let table = match group.multiplication_table() {
        Ok(t) => t,
        Err((x, y)) => {
            return Check::fail(format!("set is not closed at #{x}*#{y}"));
        }
    };
    let n = group.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return Check::fail(format!(
                        "associativity fails on the triple (#{x}, #{y}, #{z})"
                    ));
                }
            }
        }
    }
    Check::ok()
}

/// Verdict of the short-exact-sequence verification on an assembled
/// product: 1 → 𝒲 → W_R̃ → W_R → 1 with a splitting γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeqReport {
    /// |W_R̃| = |𝒲| · |W_R|.
    pub order_product_ok: Check,
    /// λ̃ is injective and its image is exactly ker π̃.
    pub image_equals_kernel: Check,
    /// The image of λ̃ is normal, by conjugating every image element by
    /// every group element.
    pub image_normal: Check,
    /// γ(σ) = (1, σ) is a homomorphism with π̃ ∘ γ = id.
    pub splitting_ok: Check,
}

impl ExactSeqReport {
    pub fn pass(&self) -> bool {
        self.order_product_ok.pass
            && self.image_equals_kernel.pass
            && self.image_normal.pass
            && self.splitting_ok.pass
    }

    pub fn first_witness(&self) -> Option<String> {
        [
            &self.order_product_ok,
            &self.image_equals_kernel,
            &self.image_normal,
            &self.splitting_ok,
        ]
        .iter()
        .find_map(|c| c.witness.clone())
    }
}

pub fn exact_sequence_check(sdp: &FiniteGroup<SdpLaw>) -> Result<ExactSeqReport> {
    let law = sdp.law().clone();
    let n = sdp.order();

    let order_product_ok = if n == law.w_order() * law.base_order() {
        Check::ok()
    } else {
        Check::fail(format!(
            "order {n} differs from {} * {}",
            law.w_order(),
            law.base_order()
        ))
    };

    // Image of λ̃ and kernel of π̃, as sorted index sets.
    let mut image = Vec::with_capacity(law.w_order());
    let mut lambda_injective = Check::ok();
    {
        let mut seen = vec![false; n];
        for w in 0..law.w_order() {
            let e = law.lambda(w);
            match sdp.position_of_key(&law.key_of(&e)) {
                Some(idx) => {
                    if seen[idx] && lambda_injective.pass {
                        lambda_injective =
                            Check::fail(format!("two sign elements map to product element #{idx}"));
                    }
                    seen[idx] = true;
                    image.push(idx);
                }
                None => {
                    lambda_injective =
                        Check::fail(format!("lambda of sign element #{w} is not in the product"));
                    break;
                }
            }
        }
    }
    image.sort_unstable();
    let kernel: Vec<usize> = (0..n)
        .filter(|&i| sdp.element(i).sigma_key == law.base_identity_key())
        .collect();
    let image_equals_kernel = if !lambda_injective.pass {
        lambda_injective
    } else if image == kernel {
        Check::ok()
    } else {
        Check::fail(format!(
            "image of lambda has {} elements, kernel of pi has {}",
            image.len(),
            kernel.len()
        ))
    };

    let table = sdp
        .multiplication_table()
        .map_err(|(x, y)| Error::InconsistentMap(format!("product not closed at #{x}*#{y}")))?;

    let mut image_normal = Check::ok();
    let in_kernel: Vec<bool> = {
        let mut flags = vec![false; n];
        for &k in &kernel {
            flags[k] = true;
        }
        flags
    };
    'normal: for g in 0..n {
        let g_inv = sdp.inverse_index(g).ok_or(Error::InconsistentMap(
            "product element has no inverse".into(),
        ))?;
        for &k in &kernel {
            let conj = table[table[g][k]][g_inv];
            if !in_kernel[conj] {
                image_normal = Check::fail(format!(
                    "conjugating kernel element #{k} by #{g} lands outside the kernel"
                ));
                break 'normal;
            }
        }
    }

    let mut splitting_ok = Check::ok();
    let mut gamma_idx = Vec::with_capacity(law.base_order());
    for s in 0..law.base_order() {
        match sdp.position_of_key(&law.key_of(&law.gamma(s))) {
            Some(idx) => gamma_idx.push(idx),
            None => {
                splitting_ok =
                    Check::fail(format!("gamma of base element #{s} is not in the product"));
                break;
            }
        }
    }
    if splitting_ok.pass {
        // pi after gamma is the identity: gamma(s) carries sigma key s.
        for (s, &gi) in gamma_idx.iter().enumerate() {
            let elem = sdp.element(gi);
            if elem.sigma_key != law.base_keys[s] || elem.w_key != *law.w_identity_key() {
                splitting_ok = Check::fail(format!(
                    "gamma of base element #{s} does not project back to it"
                ));
                break;
            }
        }
    }
    if splitting_ok.pass {
        'split: for s in 0..law.base_order() {
            for t in 0..law.base_order() {
                let st = law.base_table[s][t];
                if table[gamma_idx[s]][gamma_idx[t]] != gamma_idx[st] {
                    splitting_ok = Check::fail(format!(
                        "gamma(#{s})*gamma(#{t}) differs from gamma of the product"
                    ));
                    break 'split;
                }
            }
        }
    }

    Ok(ExactSeqReport {
        order_product_ok,
        image_equals_kernel,
        image_normal,
        splitting_ok,
    })
}

/// Conjugation inside the product restricted to λ̃(𝒲) reproduces the
/// twist: (1, σ)·(w, 1)·(1, σ)⁻¹ = (φ_σ(w), 1) for every σ and w.
pub fn check_conjugation_twist(sdp: &FiniteGroup<SdpLaw>) -> Result<Check> {
    let law = sdp.law().clone();
    for s in 0..law.base_order() {
        let gamma = law.gamma(s);
        let gamma_idx = sdp
            .position_of_key(&law.key_of(&gamma))
            .ok_or(Error::InconsistentMap("gamma element missing".into()))?;
        let gamma_inv_idx = sdp.inverse_index(gamma_idx).ok_or(Error::InconsistentMap(
            "gamma element has no inverse".into(),
        ))?;
        let gamma_inv = sdp.element(gamma_inv_idx).clone();
        for w in 0..law.w_order() {
            let lhs = sdp_multiply(&law, &sdp_multiply(&law, &gamma, &law.lambda(w))?, &gamma_inv)?;
            let rhs = law.lambda(law.phi[s][w]);
            if lhs != rhs {
                return Ok(Check::fail(format!(
                    "conjugating lambda(#{w}) by gamma(#{s}) gives {lhs}, expected {rhs}"
                )));
            }
        }
    }
    Ok(Check::ok())
}

/// The map on hat roots fixes the center: the zero vector goes to the zero
/// vector (literally, the matrix applied to zero), and Φ maps onto Φ.
pub fn check_center_fixed<T: Field>(h: &HatSystem<T>, im: &InducedMap<T>) -> Result<Check> {
    let zero = Vector::new(vec![T::zero(); h.m()]);
    let image = im.matrix_on_hat().mul_vec(&zero)?;
    if !image.is_zero() {
        return Ok(Check::fail(format!("zero vector moves to {image}")));
    }
    let ctx = h.context()?;
    for phi_root in h.phi().iter() {
        let coords = ctx.coords(phi_root)?;
        let moved = im.matrix_on_hat().mul_vec(&coords)?;
        if !ctx.coord_set().contains(&moved) {
            return Ok(Check::fail(format!(
                "hat root {phi_root} leaves the hat set under the induced map"
            )));
        }
    }
    Ok(Check::ok())
}
