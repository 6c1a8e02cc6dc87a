use std::sync::Arc;

use super::{ChowClass, ChowError, ChowRing};

/// Which sheaf closes the residue sequence
/// `0 → T(−log D) → T → N → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormalConvention {
    /// `N = ⊕ O_{Dᵢ}`, so `c(N) = Π (1 − dᵢh)⁻¹`.
    StructureSheaf,
    /// `N = ⊕ O_{Dᵢ}(Dᵢ)`, so `c(N) = Π (1 + dᵢh)`.
    NormalBundle,
}

impl NormalConvention {
    pub fn label(self) -> &'static str {
        match self {
            NormalConvention::StructureSheaf => "OD",
            NormalConvention::NormalBundle => "OD(D)",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "OD" | "O_D" => Some(NormalConvention::StructureSheaf),
            "OD(D)" | "O_D(D)" | "O_D_of_D" => Some(NormalConvention::NormalBundle),
            _ => None,
        }
    }
}

/// Chern data of a vector bundle: rank and total Chern class.
#[derive(Clone, PartialEq, Eq)]
pub struct BundleClass {
    rank: usize,
    total: ChowClass,
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl BundleClass {
    /// Validates that the constant term is 1 and `cᵢ = 0` for `i > rank`.
    pub fn new(rank: usize, total: ChowClass) -> Result<Self, ChowError> {
        if total.constant_term() != 1 {
            return Err(ChowError::InvalidBundle(format!(
                "total Chern class {total} does not start with 1"
            )));
        }
        for i in rank + 1..=total.ring().dim() {
            let c = total.component(i);
            if !c.is_zero() {
                return Err(ChowError::InvalidBundle(format!(
                    "c{i} = {c} is nonzero for a bundle of rank {rank}"
                )));
            }
        }
        Ok(BundleClass { rank, total })
    }

    pub fn trivial(ring: &Arc<ChowRing>, rank: usize) -> Self {
        BundleClass {
            rank,
            total: ChowClass::one(ring),
        }
    }

    /// Line bundle with the given first Chern class.
    pub fn line(c1: &ChowClass) -> Result<Self, ChowError> {
        if !c1.is_homogeneous_of(1) {
            return Err(ChowError::DegreeMismatch {
                expected: "1".into(),
                found: c1.to_string(),
            });
        }
        Self::new(1, ChowClass::one(c1.ring()).add(c1)?)
    }

    /// `⊕ O(aᵢ)` on a power ring.
    pub fn split(ring: &Arc<ChowRing>, degrees: &[i64]) -> Result<Self, ChowError> {
        let h = ChowClass::hyperplane(ring)?;
        let mut acc = Self::trivial(ring, 0);
        for &a in degrees {
            acc = acc.direct_sum(&Self::line(&h.scale(a))?)?;
        }
        Ok(acc)
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        self.total.ring()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn total(&self) -> &ChowClass {
        &self.total
    }

    /// `cᵢ`, the degree-`i` part of the total class.
    pub fn chern(&self, i: usize) -> ChowClass {
        self.total.component(i)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ChowError> {
        Self::new(self.rank + other.rank, self.total.mul(&other.total)?)
    }

    /// `E'` in `0 → E' → E → E'' → 0` from `E` and `E''`.
    pub fn whitney_sub(total: &Self, quotient: &Self) -> Result<Self, ChowError> {
        Self::divide(total, quotient)
    }

    /// `E''` in `0 → E' → E → E'' → 0` from `E` and `E'`.
    pub fn whitney_quotient(total: &Self, sub: &Self) -> Result<Self, ChowError> {
        Self::divide(total, sub)
    }

    fn divide(total: &Self, part: &Self) -> Result<Self, ChowError> {
        if part.rank > total.rank {
            return Err(ChowError::InconsistentRanks(format!(
                "cannot remove rank {} from rank {}",
                part.rank, total.rank
            )));
        }
        Self::new(total.rank - part.rank, total.total.mul(&part.total.inverse()?)?)
    }

    /// `E ⊗ L` for `c₁(L) = t`:
    /// `c_k(E ⊗ L) = Σᵢ C(r − i, k − i) cᵢ(E) t^{k−i}`.
    pub fn twist(&self, t: &ChowClass) -> Result<Self, ChowError> {
        if !t.is_homogeneous_of(1) {
            return Err(ChowError::DegreeMismatch {
                expected: "1".into(),
                found: t.to_string(),
            });
        }
        let r = self.rank;
        let mut total = ChowClass::zero(self.ring());
        for k in 0..=r {
            for i in 0..=k {
                let coeff = binomial(r - i, k - i);
                if coeff == 0 {
                    continue;
                }
                let term = self.chern(i).mul(&t.pow(k - i))?.scale(coeff);
                total = total.add(&term)?;
            }
        }
        Self::new(r, total)
    }

    /// `E*`: `cᵢ ↦ (−1)ⁱ cᵢ`.
    pub fn dual(&self) -> Self {
        let mut total = ChowClass::zero(self.ring());
        for i in 0..=self.ring().dim() {
            let c = self.chern(i);
            total = total.add(&if i % 2 == 0 { c } else { c.neg() }).unwrap();
        }
        BundleClass {
            rank: self.rank,
            total,
        }
    }

    /// `T_{Pⁿ}` from the Euler sequence, `T_{Q³}` from
    /// `0 → T_Q → T_{P⁴}|_Q → O_Q(2) → 0`.
    pub fn tangent(ring: &Arc<ChowRing>) -> Result<Self, ChowError> {
        let h = ChowClass::hyperplane(ring)?;
        let one = ChowClass::one(ring);
        match &**ring {
            ChowRing::ProjectiveSpace { n } => Self::new(*n, one.add(&h)?.pow(n + 1)),
            ChowRing::QuadricThreefold => {
                let ambient = BundleClass {
                    rank: 4,
                    total: one.add(&h)?.pow(5),
                };
                let normal = Self::line(&h.scale(2))?;
                Self::whitney_sub(&ambient, &normal)
            }
            ChowRing::ProjBundle { .. } => Err(ChowError::Unsupported(
                "tangent bundle of a projective bundle".into(),
            )),
        }
    }

    /// `T(−log D)` for `D` a union of smooth hypersurfaces of the given
    /// degrees.
    pub fn log_tangent(
        ring: &Arc<ChowRing>,
        divisor_degrees: &[i64],
        convention: NormalConvention,
    ) -> Result<Self, ChowError> {
        Self::tangent(ring)?.remove_log_poles(divisor_degrees, convention)
    }

    /// Pass from `E` to the kernel of `E → ⊕ Nᵢ` for the residue quotients
    /// of hypersurfaces of the given degrees. The rank is unchanged.
    pub fn remove_log_poles(
        &self,
        divisor_degrees: &[i64],
        convention: NormalConvention,
    ) -> Result<Self, ChowError> {
        let ring = self.ring();
        let h = ChowClass::hyperplane(ring)?;
        let one = ChowClass::one(ring);
        let mut total = self.total.clone();
        for &d in divisor_degrees {
            if d < 1 {
                return Err(ChowError::InvalidBundle(format!("divisor degree {d} is not positive")));
            }
            total = match convention {
                NormalConvention::NormalBundle => total.mul(&one.add(&h.scale(d))?.inverse()?)?,
                NormalConvention::StructureSheaf => total.mul(&one.sub(&h.scale(d))?)?,
            };
        }
        Self::new(self.rank, total)
    }
}

impl std::fmt::Debug for BundleClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BundleClass(rank {}, c = {})", self.rank, self.total)
    }
}

/// `∫ c_dim(T(−log D) ⊗ O(−1))` on a power ring of dimension 3.
pub fn appendix_a_value(
    ring: &Arc<ChowRing>,
    divisor_degrees: &[i64],
    convention: NormalConvention,
) -> Result<i64, ChowError> {
    let log_t = BundleClass::log_tangent(ring, divisor_degrees, convention)?;
    let h = ChowClass::hyperplane(ring)?;
    let twisted = log_t.twist(&h.neg())?;
    Ok(twisted.chern(ring.dim()).integrate())
}

/// `∫_{P³} c₃(T(−log Q) ⊗ O(−1))` for a smooth quadric surface `Q`, with
/// the normal-bundle residue quotient.
pub fn appendix_a_p3() -> i64 {
    appendix_a_value(&ChowRing::projective_space(3), &[2], NormalConvention::NormalBundle)
        .expect("fixed pipeline on P³")
}

/// `∫_{Q³} c₃(T(−log H) ⊗ O(−1))` for a hyperplane section `H`, under the
/// normal-bundle and structure-sheaf conventions, in that order.
pub fn appendix_a_q3() -> (i64, i64) {
    let q = ChowRing::quadric_threefold();
    let value = |c| appendix_a_value(&q, &[1], c).expect("fixed pipeline on Q³");
    (value(NormalConvention::NormalBundle), value(NormalConvention::StructureSheaf))
}
