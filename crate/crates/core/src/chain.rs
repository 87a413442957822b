use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::roots::RootSet;
use crate::scalar::Scalar;

/// The extremal chain through `base` in direction `direction`: the maximal
/// contiguous family base + j·direction, j ∈ [−q, p], inside the membership
/// set with the zero vector adjoined.
///
/// `j = 0` always belongs; q and p record how far the chain extends
/// backwards and forwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain<T> {
    base: Vector<T>,
    direction: Vector<T>,
    q: usize,
    p: usize,
}

impl<T: Scalar> Chain<T> {
    pub fn base(&self) -> &Vector<T> {
        &self.base
    }

    pub fn direction(&self) -> &Vector<T> {
        &self.direction
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// base + j·direction.
    pub fn element_at(&self, j: i64) -> Vector<T> {
        let mut scale = T::zero();
        if j >= 0 {
            for _ in 0..j {
                scale = scale + T::one();
            }
        } else {
            for _ in 0..(-j) {
                scale = scale - T::one();
            }
        }
        &self.base + &self.direction.scale(&scale)
    }

    /// The chain members in order, j = −q ..= p.
    pub fn elements(&self) -> Vec<Vector<T>> {
        (-(self.q as i64)..=(self.p as i64))
            .map(|j| self.element_at(j))
            .collect()
    }

    /// q − p, the pairing value the chain defines.
    pub fn killing(&self) -> i64 {
        self.q as i64 - self.p as i64
    }
}

/// Scans the extremal chain through `beta` in direction `alpha` inside
/// `membership ∪ {0}`.
///
/// Both `beta` and `alpha` must lie in the membership set or be zero. A
/// zero `alpha` yields the degenerate chain q = p = 0. The scan walks
/// outward from j = 0 and stops at the first non-member on each side; the
/// members of a finite set are pairwise distinct along the line, so the
/// walk terminates within |membership| + 2 steps (enforced as a hard stop).
pub fn root_chain<T: Scalar>(
    membership: &RootSet<T>,
    beta: &Vector<T>,
    alpha: &Vector<T>,
) -> Result<Chain<T>> {
    if !membership.contains_or_zero(beta) {
        return Err(Error::NotInMembership {
            context: "chain base",
        });
    }
    if !membership.contains_or_zero(alpha) {
        return Err(Error::NotInMembership {
            context: "chain direction",
        });
    }
    if alpha.is_zero() {
        return Ok(Chain {
            base: beta.clone(),
            direction: alpha.clone(),
            q: 0,
            p: 0,
        });
    }
    let cap = membership.len() + 2;
    let mut q = 0usize;
    let mut cursor = beta.clone();
    while q < cap {
        let next = &cursor - alpha;
        if !membership.contains_or_zero(&next) {
            break;
        }
        cursor = next;
        q += 1;
    }
    let mut p = 0usize;
    cursor = beta.clone();
    while p < cap {
        let next = &cursor + alpha;
        if !membership.contains_or_zero(&next) {
            break;
        }
        cursor = next;
        p += 1;
    }
    if q >= cap || p >= cap {
        return Err(Error::InvalidRootSystem(
            "chain scan exceeded the membership cardinality bound".into(),
        ));
    }
    Ok(Chain {
        base: beta.clone(),
        direction: alpha.clone(),
        q,
        p,
    })
}

/// The pairing ⟨beta, alpha⟩ = q − p of the extremal chain.
pub fn killing_integer<T: Scalar>(
    membership: &RootSet<T>,
    beta: &Vector<T>,
    alpha: &Vector<T>,
) -> Result<i64> {
    Ok(root_chain(membership, beta, alpha)?.killing())
}

/// Memoized pairing values over (membership ∪ {0})², indexed by position.
///
/// Index 0 is the zero vector; indices 1.. follow the membership set's
/// sorted order. Exhaustive verifications touch every pair several times,
/// so the table is computed once up front.
pub struct PairingTable<T> {
    elements: Vec<Vector<T>>,
    index: HashMap<Vector<T>, usize>,
    values: Vec<Vec<i64>>,
}

impl<T: Scalar> PairingTable<T> {
    pub fn build(membership: &RootSet<T>) -> Result<Self> {
        let mut elements = Vec::with_capacity(membership.len() + 1);
        elements.push(Vector::zero(membership.dim()));
        elements.extend(membership.iter().cloned());
        let index: HashMap<_, _> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let n = elements.len();
        let mut values = vec![vec![0i64; n]; n];
        for (bi, beta) in elements.iter().enumerate() {
            for (ai, alpha) in elements.iter().enumerate() {
                values[bi][ai] = killing_integer(membership, beta, alpha)?;
            }
        }
        Ok(PairingTable {
            elements,
            index,
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All of membership ∪ {0}, zero first.
    pub fn elements(&self) -> &[Vector<T>] {
        &self.elements
    }

    pub fn position(&self, v: &Vector<T>) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn value_at(&self, beta_idx: usize, alpha_idx: usize) -> i64 {
        self.values[beta_idx][alpha_idx]
    }

    pub fn value(&self, beta: &Vector<T>, alpha: &Vector<T>) -> Result<i64> {
        let bi = self.position(beta).ok_or(Error::NotInMembership {
            context: "pairing table row",
        })?;
        let ai = self.position(alpha).ok_or(Error::NotInMembership {
            context: "pairing table column",
        })?;
        Ok(self.values[bi][ai])
    }
}
