//! Named instances of the worked examples, each with the properties it is
//! expected to have.
//!
//! Block and basis labels below are written 1-based, as `B^(λjk)` built from
//! dyads `|m⟩⟨n|`, and converted to 0-based indices on construction.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{schmidt_rank, unitarity_residual, ComplexMatrix};
use crate::fourier::{synthesize_c, synthesize_w, QBlockFamily, RBlockFamily};
use crate::groups::root_of_unity;
use crate::protocol::{information_absence_check, simulate, AbsenceReport, ProtocolSpec};
use crate::reps::{block_diagonal_rep, d4_ordinary_irreps, d4_projective_irreps, s3_irreps, xz_irreps, IrrepSet, MultiplicityPattern, ProjectiveRep};
use crate::unitaries::{
    assemble_group_unitary, check_c_condition, ControlledUnitary, DoubleUnitary, GroupFormUnitary,
};
use crate::{tol, Error, Result, C64};

/// A fully instantiated unitary in one of the three structured forms.
#[derive(Clone, Debug)]
pub enum Construction {
    Group(GroupFormUnitary),
    Double(DoubleUnitary),
    Controlled(ControlledUnitary),
}

impl Construction {
    pub fn kind(&self) -> &'static str {
        match self {
            Construction::Group(_) => "group",
            Construction::Double(_) => "double",
            Construction::Controlled(_) => "controlled",
        }
    }

    pub fn assembled(&self) -> Result<ComplexMatrix> {
        Ok(match self {
            Construction::Group(g) => g.assembled().clone(),
            Construction::Double(d) => d.group_form()?.assembled().clone(),
            Construction::Controlled(c) => c.assembled(),
        })
    }

    pub fn d_a(&self) -> usize {
        match self {
            Construction::Group(g) => g.d_a(),
            Construction::Double(d) => d.rep_a().dim(),
            Construction::Controlled(c) => c.d_a(),
        }
    }

    pub fn d_b(&self) -> usize {
        match self {
            Construction::Group(g) => g.d_b(),
            Construction::Double(d) => d.rep_b().dim(),
            Construction::Controlled(c) => c.d_b(),
        }
    }

    /// Schmidt rank of the maximally entangled resource the protocol consumes.
    pub fn group_order(&self) -> usize {
        match self {
            Construction::Group(g) => g.group_order(),
            Construction::Double(d) => d.group().order(),
            Construction::Controlled(c) => c.len(),
        }
    }

    /// The structural condition of the form: the W condition for the group
    /// form, the c condition for the double form, and 0 for controlled
    /// unitaries (validated on construction).
    pub fn condition_residual(&self) -> f64 {
        match self {
            Construction::Group(g) => g.w_condition(),
            Construction::Double(d) => check_c_condition(d),
            Construction::Controlled(_) => 0.0,
        }
    }

    pub fn protocol(&self) -> Result<ProtocolSpec> {
        match self {
            Construction::Group(g) => ProtocolSpec::group(g),
            Construction::Double(d) => ProtocolSpec::double(d),
            Construction::Controlled(c) => ProtocolSpec::controlled(c),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub construction: Construction,
    pub expected_rank: usize,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    /// One instance per dimension the example is stated for.
    pub instances: Vec<Instance>,
}

impl CatalogEntry {
    /// The instance with `d_A = dim`, or the first one when `dim` is `None`.
    pub fn instance(&self, dim: Option<usize>) -> Result<&Instance> {
        match dim {
            None => self.instances.first().ok_or_else(|| Error::UnknownEntry(format!("{} has no instances", self.name))),
            Some(d) => self.instances.iter().find(|i| i.construction.d_a() == d).ok_or_else(|| {
                let dims: Vec<String> = self.instances.iter().map(|i| format!("{}", i.construction.d_a())).collect();
                Error::UnknownEntry(format!("{} has no instance with d_A = {d} (available: {})", self.name, dims.join(", ")))
            }),
        }
    }
}

const NAMES: [&str; 15] = [
    "xz-swap-2",
    "xz-swap-3",
    "pauli-double",
    "eq60",
    "eq63",
    "s3-table1-row1",
    "s3-table1-row2",
    "s3-table1-row3",
    "s3-table1-row4",
    "eq65",
    "eq66",
    "d4-double",
    "cnot-controlled",
    "qutrit-cphase",
    "qubit-identity",
];

pub fn list() -> &'static [&'static str] {
    &NAMES
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let (summary, instances) = match name {
        "xz-swap-2" => ("SWAP of two qubits over X^p Z^q, n = 2", vec![xz_swap(2)?]),
        "xz-swap-3" => ("SWAP of two qutrits over X^p Z^q, n = 3", vec![xz_swap(3)?]),
        "pauli-double" => ("Σ c(p,q) X^pZ^q ⊗ X^pZ^q on two qubits with fixed phases", vec![pauli_double()?]),
        "eq60" => ("S3 on a qutrit (sign ⊕ standard), five dyad blocks, d_B = 3", vec![eq60()?]),
        "eq63" => ("S3 on d_A = 4 (all three irreps), six blocks, d_B = 4", vec![eq63()?]),
        "s3-table1-row1" => ("S3 double form, c = (2/3, −1/3, −1/3, −1/3, −1/3, −1/3)", table_row(0)?),
        "s3-table1-row2" => ("S3 double form, c = (2/3, 1/6, 1/6, −i/√3, i/2√3, i/2√3)", table_row(1)?),
        "s3-table1-row3" => ("S3 double form, c = (1/3, 1/3, 1/3, 1/√3, −1/√3, 0)", table_row(2)?),
        "s3-table1-row4" => ("S3 double form, c = (1/6, −1/3, −1/3, −i√3/2, 0, 0)", table_row(3)?),
        "eq65" => ("D4 projective pair on d_A = 4, eight blocks, d_B = 3", vec![d4_blocks(3)?]),
        "eq66" => ("D4 projective pair on d_A = 4, eight blocks, d_B = 4", vec![d4_blocks(4)?]),
        "d4-double" => ("D4 projective pair on both sides with c from the ordinary irreps", vec![d4_double()?]),
        "cnot-controlled" => ("CNOT as |0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ X", vec![cnot()?]),
        "qutrit-cphase" => ("Σ_j |j⟩⟨j| ⊗ Z^j on two qutrits", vec![qutrit_cphase()?]),
        "qubit-identity" => ("identity blocks over Z2 × Z2 with X^p Z^q", vec![qubit_identity()?]),
        _ => return Err(Error::UnknownEntry(format!("no catalog entry named {name:?}"))),
    };
    let name = NAMES.iter().copied().find(|n| *n == name).expect("registered name");
    Ok(CatalogEntry { name, summary, instances })
}

/// The four coefficient rows for `S₃` in the order `e, (123), (132), (12), (23), (13)`.
pub fn s3_table_rows() -> [[C64; 6]; 4] {
    let r = |x: f64| C64::new(x, 0.0);
    let i = |x: f64| C64::new(0.0, x);
    let s3 = libm::sqrt(3.0);
    [
        [r(2.0 / 3.0), r(-1.0 / 3.0), r(-1.0 / 3.0), r(-1.0 / 3.0), r(-1.0 / 3.0), r(-1.0 / 3.0)],
        [r(2.0 / 3.0), r(1.0 / 6.0), r(1.0 / 6.0), i(-1.0 / s3), i(1.0 / (2.0 * s3)), i(1.0 / (2.0 * s3))],
        [r(1.0 / 3.0), r(1.0 / 3.0), r(1.0 / 3.0), r(1.0 / s3), r(-1.0 / s3), r(0.0)],
        [r(1.0 / 6.0), r(-1.0 / 3.0), r(-1.0 / 3.0), i(-s3 / 2.0), r(0.0), r(0.0)],
    ]
}

/// Declared Schmidt ranks `(d = 3, d = 4)` of the four rows.
pub const S3_TABLE_RANKS: [(usize, usize); 4] = [(5, 6), (5, 6), (5, 5), (4, 4)];

/// `Σ sign·|m⟩⟨n|` with 1-based `m, n`.
fn dyads(d: usize, terms: &[(usize, usize, f64)]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(d, d);
    for &(m, n, s) in terms {
        out[(m - 1, n - 1)] += C64::new(s, 0.0);
    }
    out
}

/// `B^(λjk)` with 1-based labels.
fn block(label: (usize, usize, usize), b: ComplexMatrix) -> ((usize, usize, usize), ComplexMatrix) {
    ((label.0 - 1, label.1 - 1, label.2 - 1), b)
}

fn pattern_rep(set: &IrrepSet, pattern: &[usize]) -> Result<ProjectiveRep> {
    Ok(block_diagonal_rep(set, &MultiplicityPattern(pattern.to_vec()))?.0)
}

fn from_blocks(set: &IrrepSet, pattern: &[usize], d_b: usize, blocks: &[((usize, usize, usize), ComplexMatrix)], rank: usize) -> Result<Instance> {
    let q = QBlockFamily::from_b_blocks(set, d_b, blocks)?;
    let w = synthesize_w(set, &q)?;
    let rep = pattern_rep(set, pattern)?;
    Ok(Instance { construction: Construction::Group(assemble_group_unitary(&rep, &w)?), expected_rank: rank })
}

fn xz_swap(n: usize) -> Result<Instance> {
    let set = xz_irreps(n)?;
    let d = n * n;
    let swap = ComplexMatrix::from_fn(d, d, |r, c| C64::new(if r == (c % n) * n + c / n { 1.0 } else { 0.0 }, 0.0));
    let w = synthesize_w(&set, &QBlockFamily::new(&set, n, vec![swap])?)?;
    let g = assemble_group_unitary(&set.irreps()[0].rep, &w)?;
    Ok(Instance { construction: Construction::Group(g), expected_rank: n * n })
}

/// `c(p,q) = [e^{iα} + (−1)^p e^{iβ} + (−1)^q e^{iγ} + (−1)^{p+q} e^{iδ}]/4`
/// with `(α, β, γ, δ) = (0, π/2, π/4, π)`.
pub fn pauli_double_coefficients() -> Vec<C64> {
    let phases = [root_of_unity(0, 8), root_of_unity(2, 8), root_of_unity(1, 8), root_of_unity(4, 8)];
    (0..4)
        .map(|x| {
            let (p, q) = (x / 2, x % 2);
            let sp = if p == 1 { -1.0 } else { 1.0 };
            let sq = if q == 1 { -1.0 } else { 1.0 };
            (phases[0] + phases[1] * sp + phases[2] * sq + phases[3] * (sp * sq)) / 4.0
        })
        .collect()
}

fn pauli_double() -> Result<Instance> {
    let rep = xz_irreps(2)?.irreps()[0].rep.clone();
    let du = DoubleUnitary::symmetric(pauli_double_coefficients(), rep)?;
    Ok(Instance { construction: Construction::Double(du), expected_rank: 4 })
}

fn eq60() -> Result<Instance> {
    let d = 3;
    let blocks = [
        block((2, 1, 1), ComplexMatrix::identity(d)),
        block((3, 1, 1), dyads(d, &[(1, 1, 1.0), (2, 2, 1.0)])),
        block((3, 1, 2), dyads(d, &[(3, 2, 1.0)])),
        block((3, 2, 1), dyads(d, &[(2, 3, 1.0)])),
        block((3, 2, 2), dyads(d, &[(1, 1, 1.0), (3, 3, 1.0)])),
    ];
    from_blocks(&s3_irreps(), &[0, 1, 1], d, &blocks, 5)
}

fn eq63() -> Result<Instance> {
    let d = 4;
    let blocks = [
        block((1, 1, 1), ComplexMatrix::identity(d)),
        block((2, 1, 1), dyads(d, &[(1, 1, 1.0), (2, 2, 1.0), (3, 3, -1.0), (4, 4, -1.0)])),
        block((3, 1, 1), dyads(d, &[(1, 1, 1.0), (2, 2, -1.0)])),
        block((3, 1, 2), dyads(d, &[(3, 1, 1.0), (4, 2, 1.0)])),
        block((3, 2, 1), dyads(d, &[(1, 3, 1.0), (2, 4, 1.0)])),
        block((3, 2, 2), dyads(d, &[(3, 3, 1.0), (4, 4, -1.0)])),
    ];
    from_blocks(&s3_irreps(), &[1, 1, 1], d, &blocks, 6)
}

fn d4_blocks(d: usize) -> Result<Instance> {
    let blocks = if d == 3 {
        vec![
            block((1, 1, 1), dyads(d, &[(1, 1, 1.0), (2, 2, 1.0)])),
            block((1, 1, 2), dyads(d, &[(3, 1, 1.0)])),
            block((1, 2, 1), dyads(d, &[(1, 3, 1.0)])),
            block((1, 2, 2), dyads(d, &[(2, 2, 1.0), (3, 3, 1.0)])),
            block((2, 1, 1), dyads(d, &[(1, 1, 1.0), (3, 2, 1.0)])),
            block((2, 1, 2), dyads(d, &[(2, 1, 1.0)])),
            block((2, 2, 1), dyads(d, &[(2, 3, 1.0)])),
            block((2, 2, 2), dyads(d, &[(1, 3, 1.0), (3, 2, 1.0)])),
        ]
    } else {
        vec![
            block((1, 1, 1), dyads(d, &[(1, 1, 1.0), (2, 2, 1.0)])),
            block((1, 1, 2), dyads(d, &[(3, 1, 1.0), (4, 2, 1.0)])),
            block((1, 2, 1), dyads(d, &[(1, 3, 1.0), (2, 4, 1.0)])),
            block((1, 2, 2), dyads(d, &[(3, 3, 1.0), (4, 4, -1.0)])),
            block((2, 1, 1), dyads(d, &[(1, 1, 1.0), (3, 3, 1.0)])),
            block((2, 1, 2), dyads(d, &[(2, 1, 1.0), (4, 3, 1.0)])),
            block((2, 2, 1), dyads(d, &[(1, 2, 1.0), (3, 4, 1.0)])),
            block((2, 2, 2), dyads(d, &[(2, 2, 1.0), (4, 4, 1.0)])),
        ]
    };
    from_blocks(&d4_projective_irreps(), &[1, 1], d, &blocks, 8)
}

fn table_row(row: usize) -> Result<Vec<Instance>> {
    let c = s3_table_rows()[row].to_vec();
    let (r3, r4) = S3_TABLE_RANKS[row];
    let set = s3_irreps();
    [(vec![0, 1, 1], r3), (vec![1, 1, 1], r4)]
        .into_iter()
        .map(|(pattern, rank)| {
            let du = DoubleUnitary::symmetric(c.clone(), pattern_rep(&set, &pattern)?)?;
            Ok(Instance { construction: Construction::Double(du), expected_rank: rank })
        })
        .collect()
}

/// `R = (1, i, −1, −i, H)` over the ordinary irreps of `D₄`, `H` the Hadamard matrix.
pub fn d4_double_coefficients() -> Result<Vec<C64>> {
    let set = d4_ordinary_irreps();
    let one = |z: C64| ComplexMatrix::from_vec(1, 1, vec![z]).expect("1x1");
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let blocks = vec![
        one(root_of_unity(0, 4)),
        one(root_of_unity(1, 4)),
        one(root_of_unity(2, 4)),
        one(root_of_unity(3, 4)),
        ComplexMatrix::from_real(2, 2, &[h, h, h, -h])?,
    ];
    synthesize_c(&set, &RBlockFamily::new(&set, blocks)?)
}

fn d4_double() -> Result<Instance> {
    let rep = pattern_rep(&d4_projective_irreps(), &[1, 1])?;
    let du = DoubleUnitary::symmetric(d4_double_coefficients()?, rep)?;
    if !du.gamma().is_trivial() {
        return Err(Error::Validation("U ⊗ U does not carry the trivial factor system".into()));
    }
    Ok(Instance { construction: Construction::Double(du), expected_rank: 6 })
}

fn cnot() -> Result<Instance> {
    let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])?;
    let cu = ControlledUnitary::new(vec![ComplexMatrix::dyad(2, 0, 0), ComplexMatrix::dyad(2, 1, 1)], vec![ComplexMatrix::identity(2), x])?;
    Ok(Instance { construction: Construction::Controlled(cu), expected_rank: 2 })
}

fn qutrit_cphase() -> Result<Instance> {
    let z = |j: usize| ComplexMatrix::diagonal(&[root_of_unity(0, 3), root_of_unity(j as i64, 3), root_of_unity(2 * j as i64, 3)]);
    let cu = ControlledUnitary::new((0..3).map(|j| ComplexMatrix::dyad(3, j, j)).collect(), (0..3).map(z).collect())?;
    Ok(Instance { construction: Construction::Controlled(cu), expected_rank: 3 })
}

fn qubit_identity() -> Result<Instance> {
    let set = xz_irreps(2)?;
    let w = synthesize_w(&set, &QBlockFamily::identity(&set, 2))?;
    let g = assemble_group_unitary(&set.irreps()[0].rep, &w)?;
    Ok(Instance { construction: Construction::Group(g), expected_rank: 1 })
}

/// Results of checking one instance against its declared properties.
#[derive(Clone, Debug)]
pub struct InstanceCheck {
    pub d_a: usize,
    pub d_b: usize,
    pub group_order: usize,
    pub unitarity_residual: f64,
    pub schmidt_rank: usize,
    pub expected_rank: usize,
    pub condition_residual: f64,
    pub absence: AbsenceReport,
}

impl InstanceCheck {
    pub fn passed(&self) -> bool {
        self.unitarity_residual < tol::UNITARY
            && self.schmidt_rank == self.expected_rank
            && self.condition_residual < tol::UNITARY
            && self.absence.passed
            && self.absence.worst_kraus_residual < tol::KRAUS
    }
}

/// Assembles the instance, computes its Schmidt rank at `rank_tol`, and
/// runs every branch of its protocol.
pub fn check_instance(inst: &Instance, rank_tol: f64) -> Result<InstanceCheck> {
    let c = &inst.construction;
    let u = c.assembled()?;
    let transcript = simulate(&c.protocol()?, None)?;
    Ok(InstanceCheck {
        d_a: c.d_a(),
        d_b: c.d_b(),
        group_order: c.group_order(),
        unitarity_residual: unitarity_residual(&u)?,
        schmidt_rank: schmidt_rank(&u, c.d_a(), c.d_b(), rank_tol)?,
        expected_rank: inst.expected_rank,
        condition_residual: c.condition_residual(),
        absence: information_absence_check(&transcript),
    })
}
