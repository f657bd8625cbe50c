//! Group Fourier transform between operator families `W(f)` and block
//! matrices `Q^(λ) = Σ_f D^(λ)(f) ⊗ W(f)`, and its scalar version between
//! coefficients `c(f)` and `R^(λ) = Σ_f c(f) D^(λ)(f)`.
//!
//! Index convention for `Q^(λ)`: row `(j,p)` sits at `j·d_B + p`, where `j`
//! runs over the irrep and `p` over `H_B`.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::random::random_unitary;
use crate::algebra::{rank_with_threshold, unitarity_residual, ComplexMatrix};
use crate::reps::{hat_matrix_raw, validate_irrep_set, IrrepSet};
use crate::{tol, Error, Result, C64};

/// Operators `W(f)` on `H_B`, one per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct WFamily {
    d_b: usize,
    matrices: Vec<ComplexMatrix>,
}

impl WFamily {
    pub fn new(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::Shape("empty W family".into()));
        };
        let d_b = first.rows();
        if let Some(f) = matrices.iter().position(|m| m.rows() != d_b || m.cols() != d_b) {
            return Err(Error::Shape(format!("W({f}) is not {d_b}x{d_b}")));
        }
        Ok(Self { d_b, matrices })
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, f: usize) -> &ComplexMatrix {
        &self.matrices[f]
    }

    pub fn into_matrices(self) -> Vec<ComplexMatrix> {
        self.matrices
    }
}

/// One `(d_λ·d_B)`-square block per irrep.
#[derive(Clone, Debug, PartialEq)]
pub struct QBlockFamily {
    d_b: usize,
    blocks: Vec<ComplexMatrix>,
}

impl QBlockFamily {
    /// Requires every block to be unitary within `1e-10`.
    pub fn new(set: &IrrepSet, d_b: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        let q = Self::from_blocks_unchecked(set, d_b, blocks)?;
        if let Some((l, r)) = q.worst_block() {
            if r > tol::UNITARY {
                return Err(Error::Validation(format!("Q block {l} is not unitary (residual {r:.3e})")));
            }
        }
        Ok(q)
    }

    fn from_blocks_unchecked(set: &IrrepSet, d_b: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if d_b == 0 {
            return Err(Error::Shape("d_B must be positive".into()));
        }
        if blocks.len() != set.len() {
            return Err(Error::Shape(format!("{} Q blocks for {} irreps", blocks.len(), set.len())));
        }
        for (l, (b, d)) in blocks.iter().zip(set.dims()).enumerate() {
            if b.rows() != d * d_b || b.cols() != d * d_b {
                return Err(Error::Shape(format!("Q block {l} is {}x{}, expected {}", b.rows(), b.cols(), d * d_b)));
            }
        }
        Ok(Self { d_b, blocks })
    }

    /// Packs `B^(λjk)` blocks into `Q^(λ)_{jp;kq} = B^(λjk)_pq`. Irreps with
    /// no listed block get the identity; unlisted `(j,k)` of a listed irrep are zero.
    pub fn from_b_blocks(set: &IrrepSet, d_b: usize, entries: &[((usize, usize, usize), ComplexMatrix)]) -> Result<Self> {
        let dims = set.dims();
        let mut blocks: Vec<Option<ComplexMatrix>> = alloc::vec![None; set.len()];
        for ((l, j, k), b) in entries {
            let (l, j, k) = (*l, *j, *k);
            if l >= dims.len() || j >= dims[l] || k >= dims[l] {
                return Err(Error::Shape(format!("block label ({l},{j},{k}) out of range")));
            }
            if b.rows() != d_b || b.cols() != d_b {
                return Err(Error::Shape(format!("block ({l},{j},{k}) is not {d_b}x{d_b}")));
            }
            let q = blocks[l].get_or_insert_with(|| ComplexMatrix::zeros(dims[l] * d_b, dims[l] * d_b));
            q.set_block(j * d_b, k * d_b, b);
        }
        let blocks = blocks
            .into_iter()
            .zip(&dims)
            .map(|(b, &d)| b.unwrap_or_else(|| ComplexMatrix::identity(d * d_b)))
            .collect();
        Self::new(set, d_b, blocks)
    }

    /// Identity in every block: the family of `U = I`.
    pub fn identity(set: &IrrepSet, d_b: usize) -> Self {
        let blocks = set.dims().iter().map(|d| ComplexMatrix::identity(d * d_b)).collect();
        Self { d_b, blocks }
    }

    /// Independent Haar-random unitary blocks.
    pub fn random<R: Rng + ?Sized>(set: &IrrepSet, d_b: usize, rng: &mut R) -> Self {
        let blocks = set.dims().iter().map(|d| random_unitary(d * d_b, rng)).collect();
        Self { d_b, blocks }
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    /// Largest unitarity residual among the blocks, with its irrep index.
    pub fn worst_block(&self) -> Option<(usize, f64)> {
        self.blocks
            .iter()
            .map(|b| unitarity_residual(b).unwrap_or(f64::INFINITY))
            .enumerate()
            .fold(None, |acc, (l, r)| match acc {
                Some((_, best)) if best >= r => acc,
                _ => Some((l, r)),
            })
    }
}

/// One `d_λ × d_λ` block per irrep for the scalar transform.
#[derive(Clone, Debug, PartialEq)]
pub struct RBlockFamily {
    blocks: Vec<ComplexMatrix>,
}

impl RBlockFamily {
    /// Requires every block to be unitary within `1e-10`.
    pub fn new(set: &IrrepSet, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if blocks.len() != set.len() {
            return Err(Error::Shape(format!("{} R blocks for {} irreps", blocks.len(), set.len())));
        }
        for (l, (b, d)) in blocks.iter().zip(set.dims()).enumerate() {
            if b.rows() != d || b.cols() != d {
                return Err(Error::Shape(format!("R block {l} is not {d}x{d}")));
            }
            let r = unitarity_residual(b)?;
            if r > tol::UNITARY {
                return Err(Error::Validation(format!("R block {l} is not unitary (residual {r:.3e})")));
            }
        }
        Ok(Self { blocks })
    }

    pub fn random<R: Rng + ?Sized>(set: &IrrepSet, rng: &mut R) -> Self {
        Self { blocks: set.dims().iter().map(|&d| random_unitary(d, rng)).collect() }
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }
}

/// `Ď(K,f) = √(d_λ/N) D^(λ)_jk(f)`, rows `K = (λ,j,k)` with `λ` outermost.
pub fn hat_fourier_matrix(set: &IrrepSet) -> Result<ComplexMatrix> {
    let report = validate_irrep_set(set);
    if !report.is_valid() {
        return Err(Error::Validation(format!("irrep set: {report}")));
    }
    Ok(hat_matrix_raw(set))
}

fn require_group_size(set: &IrrepSet, len: usize) -> Result<()> {
    let n = set.group().order();
    if len != n {
        return Err(Error::Shape(format!("family has {len} members for a group of order {n}")));
    }
    Ok(())
}

/// Inverse transform `W_pq(f) = Σ_λ (d_λ/N) Σ_jk conj(D^(λ)_jk(f)) Q^(λ)_{jp;kq}`.
pub fn synthesize_w(set: &IrrepSet, q: &QBlockFamily) -> Result<WFamily> {
    if q.blocks.len() != set.len() {
        return Err(Error::Shape(format!("{} Q blocks for {} irreps", q.blocks.len(), set.len())));
    }
    let n = set.group().order();
    let d_b = q.d_b;
    let dims = set.dims();
    let matrices = (0..n)
        .map(|f| {
            let mut w = ComplexMatrix::zeros(d_b, d_b);
            for (l, &d) in dims.iter().enumerate() {
                let scale = d as f64 / n as f64;
                let block = &q.blocks[l];
                for j in 0..d {
                    for k in 0..d {
                        let coeff = set.entry(l, f, j, k).conj() * scale;
                        if coeff == C64::new(0.0, 0.0) {
                            continue;
                        }
                        for p in 0..d_b {
                            for qq in 0..d_b {
                                w[(p, qq)] += coeff * block[(j * d_b + p, k * d_b + qq)];
                            }
                        }
                    }
                }
            }
            w
        })
        .collect();
    WFamily::new(matrices)
}

/// Forward transform `Q^(λ) = Σ_f D^(λ)(f) ⊗ W(f)`. The blocks are unitary
/// exactly when `W` satisfies the unitarity condition, so they are not checked here.
pub fn extract_q(w: &WFamily, set: &IrrepSet) -> Result<QBlockFamily> {
    require_group_size(set, w.len())?;
    let blocks = set
        .irreps()
        .iter()
        .map(|ir| {
            let d = ir.dim() * w.d_b;
            let mut acc = ComplexMatrix::zeros(d, d);
            for (f, wf) in w.matrices.iter().enumerate() {
                acc = &acc + &ir.rep.matrix(f).kron(wf);
            }
            acc
        })
        .collect();
    QBlockFamily::from_blocks_unchecked(set, w.d_b, blocks)
}

/// Scalar inverse transform `c(f) = Σ_λ (d_λ/N) Σ_jk conj(D^(λ)_jk(f)) R^(λ)_jk`.
pub fn synthesize_c(set: &IrrepSet, r: &RBlockFamily) -> Result<Vec<C64>> {
    if r.blocks.len() != set.len() {
        return Err(Error::Shape(format!("{} R blocks for {} irreps", r.blocks.len(), set.len())));
    }
    let n = set.group().order();
    let dims = set.dims();
    Ok((0..n)
        .map(|f| {
            let mut c = C64::new(0.0, 0.0);
            for (l, &d) in dims.iter().enumerate() {
                let scale = d as f64 / n as f64;
                for j in 0..d {
                    for k in 0..d {
                        c += set.entry(l, f, j, k).conj() * r.blocks[l][(j, k)] * scale;
                    }
                }
            }
            c
        })
        .collect())
}

/// Scalar forward transform `R^(λ) = Σ_f c(f) D^(λ)(f)`; blocks are returned
/// unchecked (unitary exactly when `c` satisfies the scalar condition).
pub fn extract_r(c: &[C64], set: &IrrepSet) -> Result<Vec<ComplexMatrix>> {
    require_group_size(set, c.len())?;
    Ok(set
        .irreps()
        .iter()
        .map(|ir| {
            let mut acc = ComplexMatrix::zeros(ir.dim(), ir.dim());
            for (f, &cf) in c.iter().enumerate() {
                acc = &acc + &ir.rep.matrix(f).scale(cf);
            }
            acc
        })
        .collect())
}

/// The blocks `B^(λjk)_pq = Q^(λ)_{jp;kq} = Σ_f D^(λ)_jk(f) W_pq(f)`.
#[derive(Clone, Debug)]
pub struct BBlockTable {
    pub d_b: usize,
    pub entries: Vec<((usize, usize, usize), ComplexMatrix)>,
}

impl BBlockTable {
    pub fn get(&self, label: (usize, usize, usize)) -> Option<&ComplexMatrix> {
        self.entries.iter().find(|(l, _)| *l == label).map(|(_, b)| b)
    }

    /// Number of linearly independent blocks among irreps flagged in
    /// `present`, at relative threshold `rel_tol`. This is the operator
    /// Schmidt rank of `Σ U(f) ⊗ W(f)` when `present` marks the irreps
    /// occurring in `U`.
    pub fn independent_count(&self, present: &[bool], rel_tol: f64) -> usize {
        let rows: Vec<&ComplexMatrix> = self
            .entries
            .iter()
            .filter(|((l, _, _), _)| present.get(*l).copied().unwrap_or(false))
            .map(|(_, b)| b)
            .collect();
        if rows.is_empty() {
            return 0;
        }
        let width = self.d_b * self.d_b;
        let m = ComplexMatrix::from_fn(rows.len(), width, |r, c| rows[r].as_slice()[c]);
        rank_with_threshold(&m, rel_tol)
    }
}

pub fn extract_blocks_b(w: &WFamily, set: &IrrepSet) -> Result<BBlockTable> {
    let q = extract_q(w, set)?;
    let d_b = w.d_b;
    let mut entries = Vec::new();
    for (l, ir) in set.irreps().iter().enumerate() {
        for j in 0..ir.dim() {
            for k in 0..ir.dim() {
                entries.push(((l, j, k), q.blocks[l].block(j * d_b, k * d_b, d_b, d_b)));
            }
        }
    }
    Ok(BBlockTable { d_b, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::unitarity_residual;
    use crate::reps::{cyclic_irreps, d4_projective_irreps, s3_irreps, xz_irreps};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn hat_matrix_examples() {
        let h = hat_fourier_matrix(&cyclic_irreps(2).unwrap()).unwrap();
        let s = core::f64::consts::FRAC_1_SQRT_2;
        assert!(h.max_abs_diff(&ComplexMatrix::from_real(2, 2, &[s, s, s, -s]).unwrap()) < 1e-15);

        // Zₙ: rows are characters ω^{λk}/√n, i.e. the DFT matrix
        let n = 5;
        let h = hat_fourier_matrix(&cyclic_irreps(n).unwrap()).unwrap();
        for l in 0..n {
            for k in 0..n {
                let th = 2.0 * core::f64::consts::PI * (l * k) as f64 / n as f64;
                let want = C64::new(th.cos(), th.sin()) / (n as f64).sqrt();
                assert!((h[(l, k)] - want).norm() < 1e-14);
            }
        }
        assert!(unitarity_residual(&hat_fourier_matrix(&s3_irreps()).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn constant_q_gives_delta_w() {
        let set = s3_irreps();
        let w = synthesize_w(&set, &QBlockFamily::identity(&set, 2)).unwrap();
        assert!(w.matrix(0).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        for f in 1..6 {
            assert!(w.matrix(f).max_abs() < 1e-15);
        }
        let q = extract_q(&w, &set).unwrap();
        for (a, b) in q.blocks().iter().zip(QBlockFamily::identity(&set, 2).blocks()) {
            assert!(a.max_abs_diff(b) < 1e-15);
        }
    }

    #[test]
    fn z2_by_hand() {
        let set = cyclic_irreps(2).unwrap();
        let blocks = alloc::vec![ComplexMatrix::identity(1), ComplexMatrix::from_real(1, 1, &[-1.0]).unwrap()];
        let w = synthesize_w(&set, &QBlockFamily::new(&set, 1, blocks).unwrap()).unwrap();
        // W(0) = (1 + (−1))/2, W(1) = (1·1 + (−1)(−1))/2
        assert!(w.matrix(0)[(0, 0)].norm() < 1e-16);
        assert!((w.matrix(1)[(0, 0)] - c(1.0)).norm() < 1e-16);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for set in [s3_irreps(), d4_projective_irreps(), xz_irreps(3).unwrap(), cyclic_irreps(4).unwrap()] {
            for d_b in 1..=3 {
                let q = QBlockFamily::random(&set, d_b, &mut rng);
                let w = synthesize_w(&set, &q).unwrap();
                let back = extract_q(&w, &set).unwrap();
                for (a, b) in q.blocks().iter().zip(back.blocks()) {
                    assert!(a.max_abs_diff(b) < 1e-12);
                }
                let w2 = synthesize_w(&set, &back).unwrap();
                for (a, b) in w.matrices().iter().zip(w2.matrices()) {
                    assert!(a.max_abs_diff(b) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn scalar_round_trip_and_delta() {
        let set = s3_irreps();
        let ident = RBlockFamily::new(&set, set.dims().iter().map(|&d| ComplexMatrix::identity(d)).collect()).unwrap();
        let cf = synthesize_c(&set, &ident).unwrap();
        assert!((cf[0] - c(1.0)).norm() < 1e-15);
        assert!(cf[1..].iter().all(|z| z.norm() < 1e-15));

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let r = RBlockFamily::random(&set, &mut rng);
        let cf = synthesize_c(&set, &r).unwrap();
        let back = extract_r(&cf, &set).unwrap();
        for (a, b) in r.blocks().iter().zip(&back) {
            assert!(a.max_abs_diff(b) < 1e-12);
        }
    }

    #[test]
    fn pauli_phase_parametrization() {
        // Z₂×Z₂ characters in order: trivial, (−1)^q, (−1)^p, (−1)^{p+q}
        let set = crate::reps::product_irreps(&cyclic_irreps(2).unwrap(), &cyclic_irreps(2).unwrap()).unwrap();
        let (al, be, ga, de) = (0.3, -1.2, 2.0, 0.7);
        let e = |t: f64| C64::new(libm::cos(t), libm::sin(t));
        let r = RBlockFamily::new(
            &set,
            [al, ga, be, de].iter().map(|&t| ComplexMatrix::from_vec(1, 1, alloc::vec![e(t)]).unwrap()).collect(),
        )
        .unwrap();
        let cf = synthesize_c(&set, &r).unwrap();
        for p in 0..2 {
            for q in 0..2 {
                let sp = if p == 1 { -1.0 } else { 1.0 };
                let sq = if q == 1 { -1.0 } else { 1.0 };
                let want = (e(al) + e(be) * sp + e(ga) * sq + e(de) * sp * sq) / 4.0;
                assert!((cf[p * 2 + q] - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn b_blocks_from_w() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let set = s3_irreps();
        let q = QBlockFamily::random(&set, 2, &mut rng);
        let w = synthesize_w(&set, &q).unwrap();
        let table = extract_blocks_b(&w, &set).unwrap();
        assert_eq!(table.entries.len(), 6);
        // definition: B^(λjk)_pq = Σ_f D_jk(f) W_pq(f)
        for ((l, j, k), b) in &table.entries {
            let mut want = ComplexMatrix::zeros(2, 2);
            for f in 0..6 {
                want = &want + &w.matrix(f).scale(set.entry(*l, f, *j, *k));
            }
            assert!(b.max_abs_diff(&want) < 1e-12);
        }
        assert_eq!(table.independent_count(&[true, true, true], 1e-8), 4);
        assert_eq!(table.independent_count(&[false, true, true], 1e-8), 4);
    }

    #[test]
    fn from_b_blocks_packs_and_fills() {
        let set = s3_irreps();
        let d = |i, j| ComplexMatrix::dyad(3, i, j);
        let entries = alloc::vec![
            ((1, 0, 0), ComplexMatrix::identity(3)),
            ((2, 0, 0), &d(0, 0) + &d(1, 1)),
            ((2, 0, 1), d(2, 1)),
            ((2, 1, 0), d(1, 2)),
            ((2, 1, 1), &d(0, 0) + &d(2, 2)),
        ];
        let q = QBlockFamily::from_b_blocks(&set, 3, &entries).unwrap();
        assert_eq!(q.blocks()[0], ComplexMatrix::identity(3));
        assert_eq!(q.blocks()[2][(3 + 1, 2)], c(1.0));
        assert!(QBlockFamily::from_b_blocks(&set, 3, &entries[..2]).is_err());
    }
}
