//! Concrete irreducible sets for the groups used in the examples.

use alloc::vec;
use alloc::vec::Vec;

use super::IrrepSet;
use crate::algebra::ComplexMatrix;
use crate::groups::{
    build_group, cyclic, d4_projective_factor_system, dihedral, root_of_unity, xz_factor_system, FactorSystem,
    GroupKind, S3_PERMS,
};
use crate::{Result, C64};

fn scalar(z: C64) -> ComplexMatrix {
    ComplexMatrix::from_vec(1, 1, vec![z]).expect("1x1")
}

/// The `n` characters `χ_λ(k) = ω^{λk}` of `Zₙ`.
pub fn cyclic_irreps(n: usize) -> Result<IrrepSet> {
    let g = cyclic(n)?;
    let mats = (0..n)
        .map(|l| (0..n).map(|k| scalar(root_of_unity((l * k) as i64, n as u64))).collect())
        .collect();
    IrrepSet::new(g, FactorSystem::trivial(n), mats)
}

/// Irreps `D^(λ₁) ⊗ D^(λ₂)` of `G₁ × G₂`, `λ₁` outermost, on the factor system
/// `μ((f₁,f₂),(g₁,g₂)) = μ₁(f₁,g₁) μ₂(f₂,g₂)`.
pub fn product_irreps(a: &IrrepSet, b: &IrrepSet) -> Result<IrrepSet> {
    let group = a.group().direct_product(b.group());
    let (n1, n2) = (a.group().order(), b.group().order());
    let n = n1 * n2;
    let pair = |x: usize| (x / n2, x % n2);
    let factors = match (a.factors().roots(), b.factors().roots()) {
        (Some(ra), Some(rb)) => {
            let den = lcm(ra.denominator, rb.denominator);
            let (sa, sb) = ((den / ra.denominator) as i64, (den / rb.denominator) as i64);
            let exps = (0..n * n)
                .map(|x| {
                    let ((f1, f2), (g1, g2)) = (pair(x / n), pair(x % n));
                    (ra.exponents[f1 * n1 + g1] * sa + rb.exponents[f2 * n2 + g2] * sb).rem_euclid(den as i64)
                })
                .collect();
            FactorSystem::from_roots(n, den, exps)?
        }
        _ => {
            let mu = (0..n * n)
                .map(|x| {
                    let ((f1, f2), (g1, g2)) = (pair(x / n), pair(x % n));
                    a.factors().mu(f1, g1) * b.factors().mu(f2, g2)
                })
                .collect();
            FactorSystem::from_phases(n, mu)?
        }
    };
    let mut mats = Vec::new();
    for ia in a.irreps() {
        for ib in b.irreps() {
            mats.push((0..n).map(|x| ia.rep.matrix(x / n2).kron(ib.rep.matrix(x % n2))).collect());
        }
    }
    IrrepSet::new(group, factors, mats)
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// `S₃`: trivial, sign, and the real two-dimensional representation on the
/// plane orthogonal to `(1,1,1)` in the permutation action.
pub fn s3_irreps() -> IrrepSet {
    let g = build_group(&GroupKind::Symmetric3).expect("S3");
    let (a, b) = (core::f64::consts::FRAC_1_SQRT_2, 1.0 / libm::sqrt(6.0));
    // columns (1,−1,0)/√2 and (1,1,−2)/√6
    let basis = ComplexMatrix::from_real(3, 2, &[a, b, -a, b, 0.0, -2.0 * b]).expect("3x2");
    let perm = |f: usize| {
        let mut m = ComplexMatrix::zeros(3, 3);
        for x in 0..3 {
            m[(S3_PERMS[f][x], x)] = C64::new(1.0, 0.0);
        }
        m
    };
    let sign = [1.0, 1.0, 1.0, -1.0, -1.0, -1.0];
    let trivial = vec![scalar(C64::new(1.0, 0.0)); 6];
    let alternating = sign.iter().map(|&s| scalar(C64::new(s, 0.0))).collect();
    let standard = (0..6).map(|f| &(&basis.transpose() * &perm(f)) * &basis).collect();
    IrrepSet::new(g, FactorSystem::trivial(6), vec![trivial, alternating, standard]).expect("S3 irreps")
}

/// The two inequivalent two-dimensional irreps of `D₄` for the sign factor
/// system of [`d4_projective_factor_system`]: `r ↦ diag(e^{−iπ/4}, e^{iπ/4})`,
/// `s ↦ −iX`, and the same with `r ↦ −r`.
pub fn d4_projective_irreps() -> IrrepSet {
    let (g, fs) = d4_projective_factor_system();
    let zero = C64::new(0.0, 0.0);
    let s = ComplexMatrix::from_vec(2, 2, vec![zero, C64::new(0.0, -1.0), C64::new(0.0, -1.0), zero]).expect("2x2");
    let element = |a: usize, b: usize, twist: bool| {
        let ra = ComplexMatrix::diagonal(&[root_of_unity(-(a as i64), 8), root_of_unity(a as i64, 8)]);
        let m = if b == 1 { &ra * &s } else { ra };
        if twist && a % 2 == 1 {
            m.scale_real(-1.0)
        } else {
            m
        }
    };
    let mats = [false, true].iter().map(|&t| (0..8).map(|x| element(x % 4, x / 4, t)).collect()).collect();
    IrrepSet::new(g, fs, mats).expect("D4 projective irreps")
}

/// The five ordinary irreps of `D₄`: characters `r ↦ α, s ↦ β` for
/// `(α,β) = (1,1), (1,−1), (−1,1), (−1,−1)`, then the two-dimensional
/// `r ↦ [[0,−1],[1,0]]`, `s ↦ diag(1,−1)`.
pub fn d4_ordinary_irreps() -> IrrepSet {
    let g = dihedral(4).expect("D4");
    let mut mats: Vec<Vec<ComplexMatrix>> = Vec::new();
    for (alpha, beta) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        mats.push(
            (0..8)
                .map(|x| {
                    let (a, b) = (x % 4, x / 4);
                    scalar(C64::new(libm::pow(alpha, a as f64) * libm::pow(beta, b as f64), 0.0))
                })
                .collect(),
        );
    }
    let r = ComplexMatrix::from_real(2, 2, &[0.0, -1.0, 1.0, 0.0]).expect("2x2");
    let s = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).expect("2x2");
    mats.push(
        (0..8)
            .map(|x| {
                let mut m = ComplexMatrix::identity(2);
                for _ in 0..x % 4 {
                    m = &m * &r;
                }
                if x / 4 == 1 {
                    m = &m * &s;
                }
                m
            })
            .collect(),
    );
    IrrepSet::new(g, FactorSystem::trivial(8), mats).expect("D4 ordinary irreps")
}

/// The single `n`-dimensional irrep `U(p,q) = X^p Z^q` of `Zₙ × Zₙ` under the
/// factor system `ω^{−q·p′}`, with `X|k⟩ = |k−1⟩` and `Z|k⟩ = ω^k|k⟩`.
pub fn xz_irreps(n: usize) -> Result<IrrepSet> {
    let (g, fs) = xz_factor_system(n)?;
    let mats = (0..n * n)
        .map(|x| {
            let (p, q) = (x / n, x % n);
            let mut m = ComplexMatrix::zeros(n, n);
            for k in 0..n {
                m[((k + n - p) % n, k)] = root_of_unity((q * k) as i64, n as u64);
            }
            m
        })
        .collect();
    IrrepSet::new(g, fs, vec![mats])
}
