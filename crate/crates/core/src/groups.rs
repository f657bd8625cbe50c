//! Finite groups given by multiplication tables, and factor systems on them.
//!
//! Elements are dense indices `0..N` and the identity is always index 0.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::validation::{Issue, ValidationReport};
use crate::{tol, Error, Result, C64};

/// A finite group as a dense multiplication table: `table[f][g]` is the index of `fg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from its table, rejecting tables that violate any axiom.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let g = Self::from_table_unchecked(table, labels)?;
        let report = validate_group(&g);
        if !report.is_valid() {
            return Err(Error::Validation(format!("not a group: {report}")));
        }
        Ok(g)
    }

    /// Builds a table without checking the group axioms; only the shape is
    /// verified. Missing inverses are recorded as `N`. Use [`validate_group`]
    /// to inspect the result.
    pub fn from_table_unchecked(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Shape("group table is empty".into()));
        }
        if let Some(row) = table.iter().position(|r| r.len() != n) {
            return Err(Error::Shape(format!("table row {row} has length {}, expected {n}", table[row].len())));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Shape(format!("{} labels for {n} elements", l.len())));
            }
        }
        let inverses = (0..n)
            .map(|f| (0..n).find(|&g| table[f][g] == 0 && table[g][f] == 0).unwrap_or(n))
            .collect();
        Ok(Self { table, inverses, labels })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `fg`.
    #[inline]
    pub fn mul(&self, f: usize, g: usize) -> usize {
        self.table[f][g]
    }

    #[inline]
    pub fn inverse(&self, f: usize) -> usize {
        self.inverses[f]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `f`: its label if present, else the index.
    pub fn label(&self, f: usize) -> String {
        match &self.labels {
            Some(l) => l[f].clone(),
            None => f.to_string(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|f| (0..n).all(|g| self.table[f][g] == self.table[g][f]))
    }

    /// `G₁ × G₂` with `(a, b)` at index `a·|G₂| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n1, n2) = (self.order(), other.order());
        let table = (0..n1 * n2)
            .map(|x| {
                (0..n1 * n2)
                    .map(|y| self.mul(x / n2, y / n2) * n2 + other.mul(x % n2, y % n2))
                    .collect()
            })
            .collect();
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            _ => Some(
                (0..n1 * n2)
                    .map(|x| format!("({},{})", self.label(x / n2), other.label(x % n2)))
                    .collect(),
            ),
        };
        let inverses = (0..n1 * n2)
            .map(|x| self.inverse(x / n2) * n2 + other.inverse(x % n2))
            .collect();
        FiniteGroup { table, inverses, labels }
    }
}

/// The families of groups with built-in constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `Zₙ`, element `k` is `k mod n`.
    Cyclic(usize),
    /// `Dₙ` of order `2n`; `r^k s^m` sits at index `k + n·m`.
    Dihedral(usize),
    /// `S₃` in the order `e, (123), (132), (12), (23), (13)`.
    Symmetric3,
    DirectProduct(Box<GroupKind>, Box<GroupKind>),
}

pub fn build_group(kind: &GroupKind) -> Result<FiniteGroup> {
    match kind {
        GroupKind::Cyclic(n) => cyclic(*n),
        GroupKind::Dihedral(n) => dihedral(*n),
        GroupKind::Symmetric3 => Ok(symmetric3()),
        GroupKind::DirectProduct(a, b) => Ok(build_group(a)?.direct_product(&build_group(b)?)),
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Validation("cyclic group order must be at least 1".into()));
    }
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table_unchecked(table, None)
}

pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Validation("dihedral group needs n >= 1".into()));
    }
    let table = (0..2 * n)
        .map(|x| (0..2 * n).map(|y| dihedral_index(n, dihedral_mul(n, (x % n, x / n), (y % n, y / n)))).collect())
        .collect();
    let labels = (0..2 * n)
        .map(|x| match (x % n, x / n) {
            (0, 0) => "e".to_string(),
            (k, 0) => format!("r^{k}"),
            (0, _) => "s".to_string(),
            (k, _) => format!("r^{k}s"),
        })
        .collect();
    FiniteGroup::from_table_unchecked(table, Some(labels))
}

// (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b+d)
fn dihedral_mul(n: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> (usize, usize) {
    let k = if b == 0 { a + c } else { a + n - c };
    (k % n, (b + d) % 2)
}

fn dihedral_index(n: usize, (k, m): (usize, usize)) -> usize {
    k + n * m
}

/// Permutations of `{0,1,2}` in element order, as images of `0, 1, 2`.
pub(crate) const S3_PERMS: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];

fn symmetric3() -> FiniteGroup {
    // (fg)(x) = f(g(x))
    let compose = |f: usize, g: usize| -> usize {
        let p = [0, 1, 2].map(|x| S3_PERMS[f][S3_PERMS[g][x]]);
        S3_PERMS.iter().position(|q| *q == p).expect("S3 closed")
    };
    let table = (0..6).map(|f| (0..6).map(|g| compose(f, g)).collect()).collect();
    let labels = ["e", "(123)", "(132)", "(12)", "(23)", "(13)"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_table_unchecked(table, Some(labels)).expect("S3 table is square")
}

/// Checks closure, associativity, identity and inverses, listing each failure.
pub fn validate_group(g: &FiniteGroup) -> ValidationReport {
    let n = g.order();
    let mut report = ValidationReport::new();
    let mut closed = true;
    for f in 0..n {
        for h in 0..n {
            let v = g.table[f][h];
            if v >= n {
                closed = false;
                report.push(Issue::Closure { f, g: h, value: v });
            }
        }
    }
    for f in 0..n {
        if g.table[0][f] != f || g.table[f][0] != f {
            report.push(Issue::Identity { f });
        }
        if g.inverses[f] >= n {
            report.push(Issue::Inverse { f });
        }
    }
    if closed {
        for a in 0..n {
            for b in 0..n {
                let ab = g.table[a][b];
                for c in 0..n {
                    if g.table[ab][c] != g.table[a][g.table[b][c]] {
                        report.push(Issue::Associativity { f: a, g: b, h: c });
                    }
                }
            }
        }
    }
    report
}

/// Phases stored as exact exponents `k/n` of `e^{2πi k/n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootTable {
    pub denominator: u64,
    pub exponents: Vec<i64>,
}

/// A table of unit-modulus phases `μ(f,g)`, row-major over `N×N`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorSystem {
    order: usize,
    mu: Vec<C64>,
    roots: Option<RootTable>,
}

impl FactorSystem {
    /// `μ ≡ 1`.
    pub fn trivial(order: usize) -> Self {
        Self {
            order,
            mu: vec![C64::new(1.0, 0.0); order * order],
            roots: Some(RootTable { denominator: 1, exponents: vec![0; order * order] }),
        }
    }

    pub fn from_phases(order: usize, mu: Vec<C64>) -> Result<Self> {
        if mu.len() != order * order {
            return Err(Error::Shape(format!("{} phases for a group of order {order}", mu.len())));
        }
        Ok(Self { order, mu, roots: None })
    }

    /// `μ(f,g) = e^{2πi k(f,g)/n}` evaluated from integer exponents.
    pub fn from_roots(order: usize, denominator: u64, exponents: Vec<i64>) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::Validation("root-of-unity denominator must be positive".into()));
        }
        if exponents.len() != order * order {
            return Err(Error::Shape(format!("{} exponents for a group of order {order}", exponents.len())));
        }
        let mu = exponents.iter().map(|&k| root_of_unity(k, denominator)).collect();
        Ok(Self { order, mu, roots: Some(RootTable { denominator, exponents }) })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mu(&self, f: usize, g: usize) -> C64 {
        self.mu[f * self.order + g]
    }

    pub fn phases(&self) -> &[C64] {
        &self.mu
    }

    pub fn roots(&self) -> Option<&RootTable> {
        self.roots.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.mu.iter().all(|z| (z - C64::new(1.0, 0.0)).norm() <= tol::COCYCLE)
    }

    /// Pointwise product `μν`, the factor system of a tensor product.
    pub fn product(&self, other: &FactorSystem) -> Result<FactorSystem> {
        if self.order != other.order {
            return Err(Error::Shape("factor systems belong to groups of different order".into()));
        }
        if let (Some(a), Some(b)) = (&self.roots, &other.roots) {
            let den = lcm(a.denominator, b.denominator);
            let (sa, sb) = ((den / a.denominator) as i64, (den / b.denominator) as i64);
            let exps = a.exponents.iter().zip(&b.exponents).map(|(x, y)| (x * sa + y * sb).rem_euclid(den as i64)).collect();
            return FactorSystem::from_roots(self.order, den, exps);
        }
        FactorSystem::from_phases(self.order, self.mu.iter().zip(&other.mu).map(|(a, b)| a * b).collect())
    }

    /// Largest entry-wise deviation from another factor system.
    pub fn distance(&self, other: &FactorSystem) -> f64 {
        if self.order != other.order {
            return f64::INFINITY;
        }
        self.mu.iter().zip(&other.mu).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `e^{2πi k/n}` with the exponent reduced first, so exact quarter turns stay exact.
pub fn root_of_unity(k: i64, n: u64) -> C64 {
    let n_i = n as i64;
    let k = k.rem_euclid(n_i);
    if k == 0 {
        return C64::new(1.0, 0.0);
    }
    if 2 * k == n_i {
        return C64::new(-1.0, 0.0);
    }
    if 4 * k == n_i {
        return C64::new(0.0, 1.0);
    }
    if 4 * k == 3 * n_i {
        return C64::new(0.0, -1.0);
    }
    let theta = 2.0 * core::f64::consts::PI * k as f64 / n as f64;
    C64::new(libm::cos(theta), libm::sin(theta))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Checks unit modulus, `μ(e,f) = μ(f,e) = 1` and the cocycle rule
/// `μ(h,f)μ(hf,g) = μ(h,fg)μ(f,g)` over all triples.
pub fn validate_factor_system(g: &FiniteGroup, fs: &FactorSystem) -> ValidationReport {
    let n = g.order();
    let mut report = ValidationReport::new();
    if fs.order != n {
        report.push(Issue::Dimension { detail: format!("factor system of order {} on group of order {n}", fs.order) });
        return report;
    }
    let one = C64::new(1.0, 0.0);
    for f in 0..n {
        for h in 0..n {
            let dev = (fs.mu(f, h).norm() - 1.0).abs();
            report.observe(dev);
            if dev > tol::MODULUS || !dev.is_finite() {
                report.push(Issue::Modulus { f, g: h, deviation: dev });
            }
        }
    }
    for f in 0..n {
        for (a, b) in [(0, f), (f, 0)] {
            let dev = (fs.mu(a, b) - one).norm();
            report.observe(dev);
            if dev > tol::COCYCLE || !dev.is_finite() {
                report.push(Issue::Normalization { f: a, g: b, deviation: dev });
            }
        }
    }
    for h in 0..n {
        for f in 0..n {
            let hf = g.mul(h, f);
            for x in 0..n {
                let lhs = fs.mu(h, f) * fs.mu(hf, x);
                let rhs = fs.mu(h, g.mul(f, x)) * fs.mu(f, x);
                let r = (lhs - rhs).norm();
                report.observe(r);
                if r > tol::COCYCLE || !r.is_finite() {
                    report.push(Issue::Cocycle { h, f, g: x, residual: r });
                }
            }
        }
    }
    report
}

/// `Zₙ × Zₙ` with `(p,q)` at index `p·n + q` and `μ((p,q),(p′,q′)) = ω^{−q·p′}`,
/// the factor system of the operators `X^p Z^q`.
pub fn xz_factor_system(n: usize) -> Result<(FiniteGroup, FactorSystem)> {
    if n < 2 {
        return Err(Error::Validation("the X/Z factor system needs n >= 2".into()));
    }
    let zn = cyclic(n)?;
    let mut group = zn.direct_product(&zn);
    group.labels = Some((0..n * n).map(|x| format!("({},{})", x / n, x % n)).collect());
    let exps = (0..n * n)
        .flat_map(|x| (0..n * n).map(move |y| -(((x % n) * (y / n)) as i64)))
        .map(|k| k.rem_euclid(n as i64))
        .collect();
    let fs = FactorSystem::from_roots(n * n, n as u64, exps)?;
    Ok((group, fs))
}

/// `D₄` (indexing as in [`dihedral`]) with the nontrivial sign factor system
/// of matrices `R^a S^b` where `R⁴ = S² = −I` and `SRS⁻¹ = R⁻¹`.
pub fn d4_projective_factor_system() -> (FiniteGroup, FactorSystem) {
    let group = dihedral(4).expect("n = 4 is valid");
    let exps = (0..8)
        .flat_map(|x| (0..8).map(move |y| (x, y)))
        .map(|(x, y)| {
            let (a, b, c, d) = ((x % 4) as i64, x / 4, (y % 4) as i64, y / 4);
            let total = if b == 0 { a + c } else { a - c };
            let wraps = total.div_euclid(4).rem_euclid(2);
            let s_square = i64::from(b + d == 2);
            (wraps + s_square) % 2
        })
        .collect();
    let fs = FactorSystem::from_roots(8, 2, exps).expect("8x8 table");
    (group, fs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclic_tables() {
        assert_eq!(cyclic(1).unwrap().table(), &[vec![0]]);
        assert_eq!(cyclic(2).unwrap().table(), &[vec![0, 1], vec![1, 0]]);
        assert!(cyclic(0).is_err());
        assert!(validate_group(&cyclic(5).unwrap()).is_valid());
    }

    #[test]
    fn dihedral_four_is_nonabelian_of_order_eight() {
        let d4 = build_group(&GroupKind::Dihedral(4)).unwrap();
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert!(validate_group(&d4).is_valid());
        // s r s = r^{-1}
        let (r, s) = (1, 4);
        assert_eq!(d4.mul(d4.mul(s, r), s), 3);
    }

    #[test]
    fn symmetric3_matches_cycle_notation() {
        let s3 = build_group(&GroupKind::Symmetric3).unwrap();
        assert!(validate_group(&s3).is_valid());
        let want = [[0, 1, 2, 3, 4, 5], [1, 2, 0, 5, 3, 4], [2, 0, 1, 4, 5, 3], [3, 4, 5, 0, 1, 2], [4, 5, 3, 2, 0, 1], [5, 3, 4, 1, 2, 0]];
        for (row, w) in s3.table().iter().zip(want) {
            assert_eq!(row.as_slice(), w);
        }
        assert_eq!(s3.labels().unwrap()[4], "(23)");
        // (123) sends 0 -> 1 -> 2 -> 0
        assert_eq!(S3_PERMS[1], [1, 2, 0]);
    }

    #[test]
    fn direct_product_order() {
        let k = GroupKind::DirectProduct(Box::new(GroupKind::Cyclic(2)), Box::new(GroupKind::Dihedral(3)));
        let g = build_group(&k).unwrap();
        assert_eq!(g.order(), 12);
        assert!(validate_group(&g).is_valid());
    }

    #[test]
    fn closure_violation_is_located() {
        let g = FiniteGroup::from_table_unchecked(vec![vec![7, 1], vec![1, 0]], None).unwrap();
        let r = validate_group(&g);
        assert!(r.issues.contains(&Issue::Closure { f: 0, g: 0, value: 7 }));
        assert!(FiniteGroup::from_table(vec![vec![7, 1], vec![1, 0]], None).is_err());
    }

    #[test]
    fn non_associative_latin_square() {
        // cyclic-5 table with the second argument negated: a ∘ b = a − b
        let t: Vec<Vec<usize>> = (0..5).map(|a| (0..5).map(|b| (a + 5 - b) % 5).collect()).collect();
        for i in 0..5 {
            let mut col: Vec<usize> = (0..5).map(|j| t[j][i]).collect();
            col.sort();
            assert_eq!(col, vec![0, 1, 2, 3, 4]);
        }
        let bad: Vec<(usize, usize, usize)> = (0..125)
            .map(|x| (x / 25, (x / 5) % 5, x % 5))
            .filter(|&(a, b, c)| t[t[a][b]][c] != t[a][t[b][c]])
            .collect();
        assert!(!bad.is_empty());
        let g = FiniteGroup::from_table_unchecked(t, None).unwrap();
        let r = validate_group(&g);
        let reported: Vec<(usize, usize, usize)> = r
            .issues
            .iter()
            .filter_map(|i| match *i {
                Issue::Associativity { f, g, h } => Some((f, g, h)),
                _ => None,
            })
            .collect();
        assert_eq!(reported, bad);
    }

    #[test]
    fn factor_systems() {
        let s3 = build_group(&GroupKind::Symmetric3).unwrap();
        assert!(validate_factor_system(&s3, &FactorSystem::trivial(6)).is_valid());

        let (g, fs) = xz_factor_system(2).unwrap();
        assert!(validate_factor_system(&g, &fs).is_valid());
        // (0,1) is index 1, (1,0) is index 2
        assert_eq!(fs.mu(1, 2), C64::new(-1.0, 0.0));
        assert_eq!(fs.mu(2, 1), C64::new(1.0, 0.0));

        let mut phases = FactorSystem::trivial(6).phases().to_vec();
        phases[3] = C64::new(-1.0, 0.0);
        let bad = FactorSystem::from_phases(6, phases).unwrap();
        let r = validate_factor_system(&s3, &bad);
        assert!(r.issues.iter().any(|i| matches!(i, Issue::Normalization { f: 0, g: 3, .. })));
    }

    #[test]
    fn xz_identity_row_and_cocycle_for_several_n() {
        for n in 2..=5 {
            let (g, fs) = xz_factor_system(n).unwrap();
            assert!(validate_group(&g).is_valid());
            let r = validate_factor_system(&g, &fs);
            assert!(r.is_valid(), "n={n}: {r}");
            assert!(r.worst_residual < 1e-14);
            for x in 0..n * n {
                assert_eq!(fs.mu(0, x), C64::new(1.0, 0.0));
            }
        }
    }

    #[test]
    fn d4_projective_is_a_nontrivial_cocycle() {
        let (g, fs) = d4_projective_factor_system();
        assert!(validate_factor_system(&g, &fs).is_valid());
        assert!(!fs.is_trivial());
        // r·r³ = r⁴ = −I
        assert_eq!(fs.mu(1, 3), C64::new(-1.0, 0.0));
        // s·s = −I
        assert_eq!(fs.mu(4, 4), C64::new(-1.0, 0.0));
        // μ² is trivial
        assert!(fs.product(&fs).unwrap().is_trivial());
    }

    #[test]
    fn roots_of_unity_are_exact_on_quarter_turns() {
        assert_eq!(root_of_unity(1, 2), C64::new(-1.0, 0.0));
        assert_eq!(root_of_unity(-1, 4), C64::new(0.0, -1.0));
        assert_eq!(root_of_unity(6, 3), C64::new(1.0, 0.0));
        assert!((root_of_unity(1, 3) - C64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }
}
