use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ConstructionError;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn lie_err(m: impl Into<String>) -> ConstructionError {
    ConstructionError::Lie(m.into())
}

/// Row echelon form in place; returns the pivot columns.
fn echelon(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        rows[r].iter_mut().for_each(|x| *x = &*x / &lead);
        for i in (0..rows.len()).filter(|&i| i != r) {
            let f = rows[i][c].clone();
            if !f.is_zero() {
                for j in 0..cols {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rank(vectors: &[Vec<Q>]) -> usize {
    echelon(&mut vectors.to_vec()).len()
}

fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let lead = a[c][c].clone();
        det *= &lead;
        for i in c + 1..n {
            let f = &a[i][c] / &lead;
            for j in c..n {
                let sub = &f * &a[c][j];
                a[i][j] -= sub;
            }
        }
    }
    det
}

/// Basis of `{v : θ(v) = 0}`.
fn kernel_of_functional(theta: &[Q]) -> Vec<Vec<Q>> {
    let n = theta.len();
    let Some(p) = theta.iter().position(|x| !x.is_zero()) else {
        return (0..n).map(|i| unit(n, i)).collect();
    };
    (0..n)
        .filter(|&i| i != p)
        .map(|i| {
            let mut v = unit(n, i);
            v[p] = -(&theta[i] / &theta[p]);
            v
        })
        .collect()
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Structure constants `[eᵢ, eⱼ] = Σₖ cᵢⱼᵏ eₖ`, an optional central basis
/// element and a functional `θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraTable {
    dim: usize,
    brackets: Vec<Vec<Vec<Q>>>,
    central: Option<usize>,
    theta: Vec<Q>,
}

impl LieAlgebraTable {
    /// Validates antisymmetry, the Jacobi identity and centrality of
    /// `central`.
    pub fn new(brackets: Vec<Vec<Vec<Q>>>, central: Option<usize>, theta: Vec<Q>) -> Result<Self, ConstructionError> {
        let dim = brackets.len();
        if brackets.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim)) || theta.len() != dim {
            return Err(lie_err(format!("table is not {dim} × {dim} × {dim}")));
        }
        for i in 0..dim {
            for j in 0..dim {
                if brackets[i][j].iter().zip(&brackets[j][i]).any(|(a, b)| a != &-b) {
                    return Err(lie_err(format!("[e{i}, e{j}] ≠ −[e{j}, e{i}]")));
                }
            }
        }
        let table = LieAlgebraTable {
            dim,
            brackets,
            central,
            theta,
        };
        if let Some((i, j, k)) = table.jacobi_violation() {
            return Err(lie_err(format!("Jacobi identity fails on (e{i}, e{j}, e{k})")));
        }
        if let Some(z) = central {
            if z >= dim || (0..dim).any(|i| table.brackets[z][i].iter().any(|c| !c.is_zero())) {
                return Err(lie_err(format!("e{z} is not central")));
            }
        }
        Ok(table)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn central(&self) -> Option<usize> {
        self.central
    }

    pub fn theta(&self) -> &[Q] {
        &self.theta
    }

    pub fn structure_constants(&self, i: usize, j: usize) -> &[Q] {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.brackets[i][j].iter().enumerate() {
                    out[k] += &ab * c;
                }
            }
        }
        out
    }

    fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let e = |i| unit(self.dim, i);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let a = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    let b = self.bracket(&e(j), &self.bracket(&e(k), &e(i)));
                    let c = self.bracket(&e(k), &self.bracket(&e(i), &e(j)));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn satisfies_jacobi(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Gram matrix of `v ∧ w ↦ θ([v, w])` on a basis of `ker θ`.
    pub fn theta_pairing(&self) -> Vec<Vec<Q>> {
        let basis = kernel_of_functional(&self.theta);
        basis
            .iter()
            .map(|v| basis.iter().map(|w| dot(&self.theta, &self.bracket(v, w))).collect())
            .collect()
    }

    pub fn pairing_determinant(&self) -> Q {
        determinant(&self.theta_pairing())
    }
}

/// `V ⊕ k·z` with `[vᵢ, v_{r+i}] = z` and `θ = z*`.
pub fn heisenberg(r: usize) -> Result<LieAlgebraTable, ConstructionError> {
    let n = 2 * r;
    let sigma = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i, j) {
                    _ if j == i + r && i < r => q(1),
                    _ if i == j + r && j < r => q(-1),
                    _ => Q::zero(),
                })
                .collect()
        })
        .collect();
    heisenberg_with_form(sigma)
}

/// `V ⊕ k·z` with `[v, w] = σ(v, w) z` for an antisymmetric nondegenerate
/// `σ`.
pub fn heisenberg_with_form(sigma: Vec<Vec<Q>>) -> Result<LieAlgebraTable, ConstructionError> {
    let n = sigma.len();
    if n == 0 || n % 2 == 1 || sigma.iter().any(|row| row.len() != n) {
        return Err(lie_err("σ must be a nonempty square matrix of even size"));
    }
    if (0..n).any(|i| (0..n).any(|j| sigma[i][j] != -&sigma[j][i])) {
        return Err(lie_err("σ is not antisymmetric"));
    }
    if determinant(&sigma).is_zero() {
        return Err(lie_err("σ has vanishing Pfaffian"));
    }
    let dim = n + 1;
    let brackets = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut v = vec![Q::zero(); dim];
                    if i < n && j < n {
                        v[n] = sigma[i][j].clone();
                    }
                    v
                })
                .collect()
        })
        .collect();
    LieAlgebraTable::new(brackets, Some(n), unit(dim, n))
}

/// `𝔥 / (W ⊕ k·z)` for `W ⊂ V` isotropic, where `V` is spanned by the
/// non-central basis vectors and `w_basis` is written in that basis.
pub fn quotient_by_isotropic(h: &LieAlgebraTable, w_basis: &[Vec<Q>]) -> Result<LieAlgebraTable, ConstructionError> {
    let z = h.central.ok_or_else(|| lie_err("algebra has no distinguished central element"))?;
    let embed = |w: &Vec<Q>| -> Result<Vec<Q>, ConstructionError> {
        if w.len() != h.dim - 1 {
            return Err(lie_err(format!("vector of length {} in a space of dimension {}", w.len(), h.dim - 1)));
        }
        let mut v = w.clone();
        v.insert(z, Q::zero());
        Ok(v)
    };
    let ws = w_basis.iter().map(embed).collect::<Result<Vec<_>, _>>()?;
    for (a, u) in ws.iter().enumerate() {
        for (b, v) in ws.iter().enumerate().skip(a + 1) {
            if !dot(&h.theta, &h.bracket(u, v)).is_zero() {
                return Err(lie_err(format!("W is not isotropic: σ(w{a}, w{b}) ≠ 0")));
            }
        }
    }
    let mut ideal = ws;
    ideal.push(unit(h.dim, z));
    let ideal_rank = rank(&ideal);
    for i in 0..h.dim {
        for g in &ideal {
            let mut with = ideal.clone();
            with.push(h.bracket(&unit(h.dim, i), g));
            if rank(&with) != ideal_rank {
                return Err(lie_err(format!("W ⊕ k·z is not an ideal: [e{i}, ·] leaves it")));
            }
        }
    }
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut spanned = ideal.clone();
    let mut complement = Vec::new();
    for i in 0..h.dim {
        let mut with = spanned.clone();
        with.push(unit(h.dim, i));
        if rank(&with) > rank(&spanned) {
            spanned = with;
            complement.push(unit(h.dim, i));
        }
    }
    let mut independent = Vec::new();
    for g in &ideal {
        let mut with = independent.clone();
        with.push(g.clone());
        if rank(&with) > independent.len() {
            independent = with;
        }
    }
    basis.extend(independent.iter().cloned());
    basis.extend(complement.iter().cloned());
    let k = independent.len();
    let q_dim = complement.len();
    // Coordinates in `basis`: solve Bᵀ c = v by row reduction of [Bᵀ | v].
    let coords = |v: &[Q]| -> Vec<Q> {
        let mut rows: Vec<Vec<Q>> = (0..h.dim)
            .map(|r| basis.iter().map(|b| b[r].clone()).chain([v[r].clone()]).collect())
            .collect();
        echelon(&mut rows);
        rows.iter().map(|row| row[h.dim].clone()).collect()
    };
    let brackets = (0..q_dim)
        .map(|a| {
            (0..q_dim)
                .map(|b| coords(&h.bracket(&complement[a], &complement[b]))[k..].to_vec())
                .collect()
        })
        .collect();
    LieAlgebraTable::new(brackets, None, vec![Q::zero(); q_dim])
}
