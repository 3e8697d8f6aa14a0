//! Tensor products of simplicial effect algebras.
//!
//! The tensor of the intervals `[0, u] ⊂ ℤⁿ` and `[0, v] ⊂ ℤᵐ` is the
//! interval `[0, w] ⊂ ℤ^{n·m}` whose unit has coordinates `w_(i,j) = uᵢ·vⱼ`;
//! the canonical bimorphism sends the pair of basis vectors `(eᵢ, fⱼ)` to
//! the basis vector `g_ij`.  [`factor_bimorphism`] realizes the universal
//! property constructively: given images for the `g_ij`, it evaluates the
//! induced morphism by Euclidean division of each coordinate and a fixed
//! column-by-column accumulation, and [`universal_property_oracle`] checks
//! existence and uniqueness exhaustively on small instances.

use crate::ea::{
    enumerate_bimorphisms, enumerate_morphisms, validate_bimorphism, validate_morphism,
    Bimorphism, Elem, EnumerationError, FiniteEffectAlgebra, Morphism,
};
use crate::simplicial::{
    vector_id, SimplicialEffectAlgebra, SimplicialError, SimplicialMorphism,
};
use crate::{Int, Limits};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("expected {expected} atom images, got {got}")]
    AtomImageShape { expected: usize, got: usize },
    #[error("atom images do not extend to a bimorphism: at ({a}, {b}), {detail}")]
    InvalidBimorphism {
        a: String,
        b: String,
        detail: String,
    },
    #[error("internal sum undefined while evaluating the factored morphism at {z}: {stage}")]
    ContractViolation { z: String, stage: String },
}

/// The tensor product of two intervals, with its atom bookkeeping.
///
/// Atoms of the product are indexed row-major: the pair `(i, j)` with
/// `i < n = left.rank` and `j < m = right.rank` sits at `i·m + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialTensor {
    pub left: SimplicialEffectAlgebra,
    pub right: SimplicialEffectAlgebra,
    pub product: SimplicialEffectAlgebra,
}

/// Builds the tensor product interval `[0, w]`, `w_(i,j) = uᵢ·vⱼ`.
/// Rank-zero factors are allowed and give a degenerate product.
pub fn tensor_simplicial(
    left: &SimplicialEffectAlgebra,
    right: &SimplicialEffectAlgebra,
) -> SimplicialTensor {
    let mut w = Vec::with_capacity(left.rank * right.rank);
    for ui in &left.unit {
        for vj in &right.unit {
            w.push(ui * vj);
        }
    }
    let product = SimplicialEffectAlgebra::new(w)
        .expect("products of positive coordinates are positive");
    SimplicialTensor {
        left: left.clone(),
        right: right.clone(),
        product,
    }
}

impl SimplicialTensor {
    pub fn atom_index(&self, i: usize, j: usize) -> usize {
        i * self.right.rank + j
    }

    /// Row-major list of atom pairs, aligned with the product's basis.
    pub fn atom_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.left.rank * self.right.rank);
        for i in 0..self.left.rank {
            for j in 0..self.right.rank {
                out.push((i, j));
            }
        }
        out
    }

    /// Materializes all three intervals and the canonical bimorphism.
    pub fn materialize(&self, limits: &Limits) -> Result<MaterializedTensor, SimplicialError> {
        let left_vecs = self.left.elements(limits)?;
        let right_vecs = self.right.elements(limits)?;
        let left = Arc::new(self.left.materialize(limits)?);
        let right = Arc::new(self.right.materialize(limits)?);
        let product = Arc::new(self.product.materialize(limits)?);
        let mut map = Vec::with_capacity(left_vecs.len() * right_vecs.len());
        for a in &left_vecs {
            for b in &right_vecs {
                let t = tensor_element(self, a, b)?;
                let pos = self
                    .product
                    .position(&t)
                    .expect("simple tensors stay below the product unit");
                map.push(Elem(pos as u32));
            }
        }
        let tau = Bimorphism {
            left: left.clone(),
            right: right.clone(),
            target: product.clone(),
            map,
        };
        Ok(MaterializedTensor {
            tensor: self.clone(),
            left,
            right,
            product,
            tau,
        })
    }

    pub fn to_json(&self) -> String {
        let file = TensorFile {
            left: self.left.clone(),
            right: self.right.clone(),
            unit: self.product.unit.clone(),
            atom_order: self.atom_pairs().iter().map(|&(i, j)| vec![i, j]).collect(),
        };
        serde_json::to_string_pretty(&file).expect("tensor serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        let file: TensorFile =
            serde_json::from_str(s).map_err(|e| format!("tensor file: {e}"))?;
        let t = tensor_simplicial(&file.left, &file.right);
        if file.unit != t.product.unit {
            return Err(format!(
                "tensor file: unit {} does not match the factor units, expected {}",
                vector_id(&file.unit),
                vector_id(&t.product.unit)
            ));
        }
        let expected: Vec<Vec<usize>> =
            t.atom_pairs().iter().map(|&(i, j)| vec![i, j]).collect();
        if file.atom_order != expected {
            return Err("tensor file: atom_order is not row-major on (i, j)".to_owned());
        }
        Ok(t)
    }
}

#[derive(Serialize, Deserialize)]
struct TensorFile {
    left: SimplicialEffectAlgebra,
    right: SimplicialEffectAlgebra,
    #[serde(with = "crate::jsonnum::vec")]
    unit: Vec<Int>,
    atom_order: Vec<Vec<usize>>,
}

/// The coordinatewise simple tensor: `(a ⊗ b)_(i,j) = aᵢ·bⱼ`.
pub fn tensor_element(
    t: &SimplicialTensor,
    a: &[Int],
    b: &[Int],
) -> Result<Vec<Int>, SimplicialError> {
    if !t.left.contains(a) {
        return Err(SimplicialError::OutOfInterval(vector_id(a)));
    }
    if !t.right.contains(b) {
        return Err(SimplicialError::OutOfInterval(vector_id(b)));
    }
    let mut out = Vec::with_capacity(t.left.rank * t.right.rank);
    for ai in a {
        for bj in b {
            out.push(ai * bj);
        }
    }
    Ok(out)
}

/// A tensor together with the explicit tables of both factors, the product,
/// and the canonical bimorphism `τ` between them.
#[derive(Debug, Clone)]
pub struct MaterializedTensor {
    pub tensor: SimplicialTensor,
    pub left: Arc<FiniteEffectAlgebra>,
    pub right: Arc<FiniteEffectAlgebra>,
    pub product: Arc<FiniteEffectAlgebra>,
    pub tau: Bimorphism,
}

/// How one product element decomposes during factorization: coordinates
/// `z_ij`, the division `z_ij = vⱼ·q_ij + r_ij`, the column vectors
/// `a_j = Σᵢ q_ij·eᵢ` and `a'_j = Σ_{i: r_ij > 0} eᵢ`, and the image.
#[derive(Debug, Clone)]
pub struct ZDecomposition {
    pub z: Vec<Int>,
    /// `q[i][j]`, row-major `n × m`.
    pub q: Vec<Vec<Int>>,
    /// `r[i][j]`, row-major `n × m`.
    pub r: Vec<Vec<Int>>,
    /// `a[j]` is the vector `a_j` in the left interval.
    pub a: Vec<Vec<Int>>,
    /// `a_primed[j]` is the indicator vector `a'_j`; orthogonal to `a_j`.
    pub a_primed: Vec<Vec<Int>>,
    pub image: Elem,
}

/// The factored morphism `ψ` with everything the construction produced.
#[derive(Debug, Clone)]
pub struct FactorizationWitness {
    pub target: Arc<FiniteEffectAlgebra>,
    /// Images of the product atoms, row-major over `(i, j)`.
    pub atom_images: Vec<Elem>,
    /// The extension of the atom images to all pairs.
    pub beta: Bimorphism,
    /// The factored morphism from the materialized product.
    pub psi: Morphism,
    /// Per-element decomposition diagnostics, aligned with the product's
    /// canonical element order.
    pub decompositions: Vec<ZDecomposition>,
}

fn add_copies(
    h: &FiniteEffectAlgebra,
    acc: Elem,
    x: Elem,
    count: &Int,
) -> Option<Elem> {
    let n = count.to_u64().expect("interval coordinates fit in u64");
    let mut acc = acc;
    for _ in 0..n {
        acc = h.oplus(acc, x)?;
    }
    Some(acc)
}

/// Extends atom images to the full pair map `β(a, b) = Σ aᵢbⱼ·β(eᵢ, fⱼ)`,
/// accumulating in row-major `(i, j)` order.
fn extend_to_bimorphism(
    mt: &MaterializedTensor,
    atom_images: &[Elem],
    target: &Arc<FiniteEffectAlgebra>,
    limits: &Limits,
) -> Result<Bimorphism, TensorError> {
    let t = &mt.tensor;
    let (n, m) = (t.left.rank, t.right.rank);
    let left_vecs = t.left.elements(limits)?;
    let right_vecs = t.right.elements(limits)?;
    let mut map = Vec::with_capacity(left_vecs.len() * right_vecs.len());
    for a in &left_vecs {
        for b in &right_vecs {
            let mut acc = target.zero();
            for i in 0..n {
                for j in 0..m {
                    let k = &a[i] * &b[j];
                    acc = add_copies(target, acc, atom_images[i * m + j], &k).ok_or_else(
                        || TensorError::InvalidBimorphism {
                            a: vector_id(a),
                            b: vector_id(b),
                            detail: format!(
                                "the sum Σ aᵢbⱼ·β(eᵢ,fⱼ) is undefined at (i, j) = ({i}, {j})"
                            ),
                        },
                    )?;
                }
            }
            map.push(acc);
        }
    }
    let beta = Bimorphism {
        left: mt.left.clone(),
        right: mt.right.clone(),
        target: target.clone(),
        map,
    };
    if let Some(v) = validate_bimorphism(&beta).into_iter().next() {
        return Err(TensorError::InvalidBimorphism {
            a: "·".to_owned(),
            b: "·".to_owned(),
            detail: v.to_string(),
        });
    }
    Ok(beta)
}

/// Factors the bimorphism determined by `atom_images` through the tensor:
/// builds the unique morphism `ψ` from the materialized product into
/// `target` with `ψ(g_ij) = atom_images[i·m + j]`, or explains why the
/// images extend to no bimorphism.
///
/// Each product element `z` is evaluated by dividing its columns,
/// `z_ij = vⱼ·q_ij + r_ij` with `0 ≤ r_ij < vⱼ`, and accumulating
/// `β(a_j, vⱼ·fⱼ)` followed by `β(eᵢ, r_ij·fⱼ)` for ascending `i`, column
/// by column.  Every intermediate sum is guaranteed to be defined when the
/// images form a bimorphism; an undefined one aborts with diagnostics
/// instead of reordering.
pub fn factor_bimorphism(
    t: &SimplicialTensor,
    atom_images: &[Elem],
    target: &Arc<FiniteEffectAlgebra>,
    limits: &Limits,
) -> Result<FactorizationWitness, TensorError> {
    let (n, m) = (t.left.rank, t.right.rank);
    if atom_images.len() != n * m {
        return Err(TensorError::AtomImageShape {
            expected: n * m,
            got: atom_images.len(),
        });
    }
    let mt = t.materialize(limits)?;
    let beta = extend_to_bimorphism(&mt, atom_images, target, limits)?;

    let left_pos = |v: &[Int]| Elem(t.left.position(v).expect("vector in left interval") as u32);
    let right_pos =
        |v: &[Int]| Elem(t.right.position(v).expect("vector in right interval") as u32);

    let product_vecs = t.product.elements(limits)?;
    let mut map = Vec::with_capacity(product_vecs.len());
    let mut decompositions = Vec::with_capacity(product_vecs.len());
    for z in &product_vecs {
        let mut q = vec![vec![Int::zero(); m]; n];
        let mut r = vec![vec![Int::zero(); m]; n];
        for i in 0..n {
            for j in 0..m {
                let vj = &t.right.unit[j];
                let zij = &z[i * m + j];
                q[i][j] = zij / vj;
                r[i][j] = zij % vj;
            }
        }
        let mut a_cols = Vec::with_capacity(m);
        let mut a_primed_cols = Vec::with_capacity(m);
        let mut acc = target.zero();
        for j in 0..m {
            let a_j: Vec<Int> = (0..n).map(|i| q[i][j].clone()).collect();
            let a_primed_j: Vec<Int> = (0..n)
                .map(|i| {
                    if r[i][j] > Int::zero() {
                        Int::one()
                    } else {
                        Int::zero()
                    }
                })
                .collect();
            let mut vj_fj = t.right.zero();
            vj_fj[j] = t.right.unit[j].clone();
            let head = beta.apply(left_pos(&a_j), right_pos(&vj_fj));
            acc = target.oplus(acc, head).ok_or_else(|| TensorError::ContractViolation {
                z: vector_id(z),
                stage: format!("adding β(a_{j}, v_{j}·f_{j}) with a_{j} = {}", vector_id(&a_j)),
            })?;
            for i in 0..n {
                let mut rij_fj = t.right.zero();
                rij_fj[j] = r[i][j].clone();
                let term = beta.apply(left_pos(&t.left.atom(i)), right_pos(&rij_fj));
                acc = target.oplus(acc, term).ok_or_else(|| {
                    TensorError::ContractViolation {
                        z: vector_id(z),
                        stage: format!(
                            "adding β(e_{i}, r_{i}{j}·f_{j}) with r_{i}{j} = {}",
                            r[i][j]
                        ),
                    }
                })?;
            }
            a_cols.push(a_j);
            a_primed_cols.push(a_primed_j);
        }
        map.push(acc);
        decompositions.push(ZDecomposition {
            z: z.clone(),
            q: q.clone(),
            r: r.clone(),
            a: a_cols,
            a_primed: a_primed_cols,
            image: acc,
        });
    }
    let psi = Morphism::new(mt.product.clone(), target.clone(), map);
    if let Some(v) = validate_morphism(&psi).into_iter().next() {
        return Err(TensorError::ContractViolation {
            z: "ψ".to_owned(),
            stage: format!("the assembled map is not a morphism: {v}"),
        });
    }
    Ok(FactorizationWitness {
        target: target.clone(),
        atom_images: atom_images.to_vec(),
        beta,
        psi,
        decompositions,
    })
}

/// The Kronecker product of two interval morphisms: acts on simple tensors
/// as `(f ⊗ g)(a ⊗ b) = f(a) ⊗ g(b)`.
pub fn tensor_morphisms(
    f: &SimplicialMorphism,
    g: &SimplicialMorphism,
) -> SimplicialMorphism {
    let source = tensor_simplicial(&f.source, &g.source).product;
    let target = tensor_simplicial(&f.target, &g.target).product;
    let (rg_t, rg_s) = (g.target.rank, g.source.rank);
    let rows = f.target.rank * rg_t;
    let cols = f.source.rank * rg_s;
    let mut matrix = vec![vec![Int::zero(); cols]; rows];
    for (i, frow) in f.matrix.iter().enumerate() {
        for (k, grow) in g.matrix.iter().enumerate() {
            for (j, fij) in frow.iter().enumerate() {
                for (l, gkl) in grow.iter().enumerate() {
                    matrix[i * rg_t + k][j * rg_s + l] = fij * gkl;
                }
            }
        }
    }
    SimplicialMorphism::new(source, target, matrix)
        .expect("Kronecker products of positive unital matrices are positive and unital")
}

/// The coordinate-swap isomorphism from `E ⊗ F` onto `F ⊗ E`.
pub fn swap_isomorphism(t: &SimplicialTensor) -> SimplicialMorphism {
    let flipped = tensor_simplicial(&t.right, &t.left);
    let (n, m) = (t.left.rank, t.right.rank);
    let mut matrix = vec![vec![Int::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..m {
            // Row (j, i) of the flipped product reads column (i, j).
            matrix[j * n + i][i * m + j] = Int::one();
        }
    }
    SimplicialMorphism::new(t.product.clone(), flipped.product, matrix)
        .expect("coordinate swaps permute the unit")
}

/// One `(target, bimorphism)` case that failed in the oracle.
#[derive(Debug, Clone)]
pub enum OracleFailure {
    Factorization {
        target_index: usize,
        bimorphism_index: usize,
        error: String,
    },
    /// `ψ∘τ` disagrees with `β` at the named pair.
    Composition {
        target_index: usize,
        bimorphism_index: usize,
        a: String,
        b: String,
    },
    /// Exhaustive search found a different morphism with the same atom
    /// images.
    NotUnique {
        target_index: usize,
        bimorphism_index: usize,
        count: usize,
    },
}

impl std::fmt::Display for OracleFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleFailure::Factorization {
                target_index,
                bimorphism_index,
                error,
            } => write!(
                f,
                "target #{target_index}, bimorphism #{bimorphism_index}: factorization failed: {error}"
            ),
            OracleFailure::Composition {
                target_index,
                bimorphism_index,
                a,
                b,
            } => write!(
                f,
                "target #{target_index}, bimorphism #{bimorphism_index}: ψ∘τ ≠ β at ({a}, {b})"
            ),
            OracleFailure::NotUnique {
                target_index,
                bimorphism_index,
                count,
            } => write!(
                f,
                "target #{target_index}, bimorphism #{bimorphism_index}: {count} morphisms share the atom images"
            ),
        }
    }
}

/// Per-target tally of the oracle run.
#[derive(Debug, Clone)]
pub struct OracleCase {
    pub target_index: usize,
    pub target_size: usize,
    pub bimorphisms: usize,
    /// Whether uniqueness was checked by exhaustive search (`true`) or
    /// granted structurally because the search space exceeded the limit.
    pub exhaustive: bool,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub cases: Vec<OracleCase>,
    pub failures: Vec<OracleFailure>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn bimorphisms_checked(&self) -> usize {
        self.cases.iter().map(|c| c.bimorphisms).sum()
    }
}

/// Checks the universal property of `E ⊗ F` against every bimorphism into
/// every catalog target: each must factor through the canonical bimorphism
/// via a unique morphism.  Uniqueness is searched exhaustively while
/// `|product| · |target|` stays within `limits.uniqueness_exhaustive_max`
/// and recorded as structural otherwise.
pub fn universal_property_oracle(
    left: &SimplicialEffectAlgebra,
    right: &SimplicialEffectAlgebra,
    catalog: &[Arc<FiniteEffectAlgebra>],
    limits: &Limits,
) -> Result<OracleReport, TensorError> {
    let t = tensor_simplicial(left, right);
    let mt = t.materialize(limits)?;
    let mut cases = Vec::new();
    let mut failures = Vec::new();
    for (ti, target) in catalog.iter().enumerate() {
        let bimorphisms =
            enumerate_bimorphisms(&mt.left, &mt.right, target, limits.enumeration_max)?;
        let exhaustive =
            mt.product.len().saturating_mul(target.len()) <= limits.uniqueness_exhaustive_max;
        for (bi, beta) in bimorphisms.iter().enumerate() {
            let atom_images: Vec<Elem> = t
                .atom_pairs()
                .iter()
                .map(|&(i, j)| {
                    let e = Elem(t.left.position(&t.left.atom(i)).unwrap() as u32);
                    let f = Elem(t.right.position(&t.right.atom(j)).unwrap() as u32);
                    beta.apply(e, f)
                })
                .collect();
            let witness = match factor_bimorphism(&t, &atom_images, target, limits) {
                Ok(w) => w,
                Err(e) => {
                    failures.push(OracleFailure::Factorization {
                        target_index: ti,
                        bimorphism_index: bi,
                        error: e.to_string(),
                    });
                    continue;
                }
            };
            'pairs: for e in mt.left.elems() {
                for f in mt.right.elems() {
                    if witness.psi.apply(mt.tau.apply(e, f)) != beta.apply(e, f) {
                        failures.push(OracleFailure::Composition {
                            target_index: ti,
                            bimorphism_index: bi,
                            a: mt.left.id(e).to_owned(),
                            b: mt.right.id(f).to_owned(),
                        });
                        break 'pairs;
                    }
                }
            }
            if exhaustive {
                let seed: Vec<(Elem, Elem)> = t
                    .atom_pairs()
                    .iter()
                    .enumerate()
                    .map(|(k, &(i, j))| {
                        let g = tensor_element(&t, &t.left.atom(i), &t.right.atom(j))
                            .expect("atoms are interval elements");
                        let pos = t.product.position(&g).unwrap();
                        (Elem(pos as u32), atom_images[k])
                    })
                    .collect();
                let completions = enumerate_morphisms(
                    &mt.product,
                    target,
                    &seed,
                    limits.uniqueness_exhaustive_max,
                )?;
                if completions.len() != 1 {
                    failures.push(OracleFailure::NotUnique {
                        target_index: ti,
                        bimorphism_index: bi,
                        count: completions.len(),
                    });
                }
            }
        }
        cases.push(OracleCase {
            target_index: ti,
            target_size: target.len(),
            bimorphisms: bimorphisms.len(),
            exhaustive,
        });
    }
    Ok(OracleReport { cases, failures })
}
