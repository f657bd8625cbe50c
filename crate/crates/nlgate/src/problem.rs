//! The JSON problem file and its conversion to and from core objects.

use std::path::Path;

use nlgate_core::algebra::ComplexMatrix;
use nlgate_core::catalog::{Construction, Instance};
use nlgate_core::fourier::{synthesize_c, synthesize_w, QBlockFamily, RBlockFamily, WFamily};
use nlgate_core::groups::{FactorSystem, FiniteGroup};
use nlgate_core::reps::{block_diagonal_rep, IrrepSet, MultiplicityPattern, ProjectiveRep};
use nlgate_core::unitaries::{assemble_group_unitary, ControlledUnitary, DoubleUnitary};
use nlgate_core::C64;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A complex number: a bare real, an `[re, im]` pair, or an exact phase
/// `{"rootOfUnity": [k, n]}` meaning `e^{2πik/n}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Complex {
    Real(f64),
    Pair([f64; 2]),
    Root {
        #[serde(rename = "rootOfUnity")]
        root_of_unity: [i64; 2],
    },
}

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Complex::Pair([z.re, z.im])
    }
}

/// Rows of complex entries.
pub type Matrix = Vec<Vec<Complex>>;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_system: Option<FactorSystemSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreps: Option<IrrepsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_form: Option<GroupFormSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub controlled: Option<ControlledSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double: Option<DoubleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_blocks: Option<QBlocksSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_blocks: Option<RBlocksSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub results: Option<ResultsSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GroupSection {
    /// `table[f][g]` is the index of `fg`; element 0 is the identity.
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FactorSystemSection {
    /// `mu[f][g] = μ(f,g)`.
    pub mu: Vec<Vec<Complex>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IrrepsSection {
    /// Defaults to the top-level factor system.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_system: Option<FactorSystemSection>,
    /// `matrices[λ][f] = D^(λ)(f)`.
    pub matrices: Vec<Vec<Matrix>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GroupFormSection {
    pub u: Vec<Matrix>,
    pub w: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ControlledSection {
    pub projectors: Vec<Matrix>,
    pub unitaries: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DoubleSection {
    pub c: Vec<Complex>,
    pub u_a: Vec<Matrix>,
    /// Defaults to `uA`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_b: Option<Vec<Matrix>>,
    /// Factor system of `uB`; defaults to the top-level one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_system_b: Option<FactorSystemSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct QBlocksSection {
    /// Multiplicity of each irrep in `U(f)`.
    pub pattern: Vec<usize>,
    pub d_b: usize,
    /// One `(d_λ·d_B)`-square block per irrep.
    pub blocks: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RBlocksSection {
    /// One `d_λ`-square block per irrep of the `irreps` section, which must
    /// carry the factor system of `U(f) ⊗ V(f)`.
    pub blocks: Vec<Matrix>,
    pub u_a: Vec<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_b: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_system_b: Option<FactorSystemSection>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OptionsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ExpectedSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schmidt_rank: Option<usize>,
}

/// Written by `synth`; ignored on input.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ResultsSection {
    pub u: Matrix,
    pub m: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Matrix>,
    pub w: Vec<Matrix>,
    pub schmidt_rank: usize,
    pub span_dimension: usize,
    pub unitarity_residual: f64,
    pub condition_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entangling_strength: Option<f64>,
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let pf: ProblemFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if pf.version != SCHEMA_VERSION {
            return Err(CliError::input(format!("{origin}: version"), format!("unsupported version {}, expected {SCHEMA_VERSION}", pf.version)));
        }
        Ok(pf)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }
}

/// The form section of a problem, converted to core matrices but not yet
/// checked beyond shapes.
#[derive(Clone, Debug)]
pub enum Form {
    Group { rep: ProjectiveRep, w: WFamily },
    Controlled { projectors: Vec<ComplexMatrix>, unitaries: Vec<ComplexMatrix> },
    Double { c: Vec<C64>, rep_a: ProjectiveRep, rep_b: ProjectiveRep },
    QBlocks { pattern: MultiplicityPattern, d_b: usize, blocks: Vec<ComplexMatrix> },
    RBlocks { blocks: Vec<ComplexMatrix>, rep_a: ProjectiveRep, rep_b: ProjectiveRep },
}

impl Form {
    pub fn section_name(&self) -> &'static str {
        match self {
            Form::Group { .. } => "groupForm",
            Form::Controlled { .. } => "controlled",
            Form::Double { .. } => "double",
            Form::QBlocks { .. } => "qBlocks",
            Form::RBlocks { .. } => "rBlocks",
        }
    }
}

/// A problem file resolved into core objects.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub group: Option<FiniteGroup>,
    pub factors: Option<FactorSystem>,
    pub irreps: Option<IrrepSet>,
    pub form: Form,
}

fn complex(z: &Complex, at: &str) -> Result<C64, CliError> {
    match *z {
        Complex::Real(x) => Ok(C64::new(x, 0.0)),
        Complex::Pair([re, im]) => Ok(C64::new(re, im)),
        Complex::Root { root_of_unity: [k, n] } => {
            if n <= 0 {
                return Err(CliError::input(at, "rootOfUnity denominator must be positive"));
            }
            Ok(nlgate_core::groups::root_of_unity(k, n as u64))
        }
    }
}

fn matrix(m: &Matrix, at: &str) -> Result<ComplexMatrix, CliError> {
    let rows = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, z)| complex(z, &format!("{at}[{i}][{j}]"))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Err(CliError::input(at, "matrix has no rows"));
    }
    let m = ComplexMatrix::from_rows(&rows).map_err(|e| CliError::core(at, e))?;
    if !m.is_finite() {
        return Err(CliError::input(at, "matrix has non-finite entries"));
    }
    Ok(m)
}

fn matrices(ms: &[Matrix], at: &str) -> Result<Vec<ComplexMatrix>, CliError> {
    ms.iter().enumerate().map(|(i, m)| matrix(m, &format!("{at}[{i}]"))).collect()
}

fn factor_system(s: &FactorSystemSection, order: usize, at: &str) -> Result<FactorSystem, CliError> {
    if s.mu.len() != order || s.mu.iter().any(|r| r.len() != order) {
        return Err(CliError::input(at, format!("mu must be {order}x{order}")));
    }
    // keep exact exponents when every entry is a root of unity
    let roots: Option<Vec<(i64, i64)>> = s
        .mu
        .iter()
        .flatten()
        .map(|z| match *z {
            Complex::Root { root_of_unity: [k, n] } if n > 0 => Some((k, n)),
            _ => None,
        })
        .collect();
    if let Some(roots) = roots {
        let den = roots.iter().fold(1i64, |acc, &(_, n)| lcm(acc, n));
        let exps = roots.iter().map(|&(k, n)| k * (den / n)).collect();
        return FactorSystem::from_roots(order, den as u64, exps).map_err(|e| CliError::core(at, e));
    }
    let mut phases = Vec::with_capacity(order * order);
    for (f, row) in s.mu.iter().enumerate() {
        for (g, z) in row.iter().enumerate() {
            phases.push(complex(z, &format!("{at}[{f}][{g}]"))?);
        }
    }
    FactorSystem::from_phases(order, phases).map_err(|e| CliError::core(at, e))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn rep(group: &FiniteGroup, fs: &FactorSystem, ms: &[Matrix], at: &str) -> Result<ProjectiveRep, CliError> {
    ProjectiveRep::new(group.clone(), fs.clone(), matrices(ms, at)?).map_err(|e| CliError::core(at, e))
}

impl Problem {
    pub fn from_file(file: ProblemFile) -> Result<Self, CliError> {
        let forms = [
            file.group_form.is_some(),
            file.controlled.is_some(),
            file.double.is_some(),
            file.q_blocks.is_some(),
            file.r_blocks.is_some(),
        ];
        match forms.iter().filter(|&&x| x).count() {
            1 => {}
            0 => return Err(CliError::input("form", "one of groupForm, controlled, double, qBlocks, rBlocks is required")),
            _ => return Err(CliError::input("form", "only one form section may be given")),
        }

        let group = match &file.group {
            Some(g) => Some(FiniteGroup::from_table_unchecked(g.table.clone(), g.labels.clone()).map_err(|e| CliError::core("group", e))?),
            None => None,
        };
        let order = group.as_ref().map(FiniteGroup::order);
        let factors = match (&file.factor_system, order) {
            (Some(s), Some(n)) => Some(factor_system(s, n, "factorSystem.mu")?),
            (Some(_), None) => return Err(CliError::input("factorSystem", "a factor system needs a group section")),
            (None, Some(n)) => Some(FactorSystem::trivial(n)),
            (None, None) => None,
        };
        let irreps = match (&file.irreps, &group) {
            (Some(s), Some(g)) => {
                let fs = match &s.factor_system {
                    Some(f) => factor_system(f, g.order(), "irreps.factorSystem.mu")?,
                    None => factors.clone().expect("factor system present with group"),
                };
                let mats = s
                    .matrices
                    .iter()
                    .enumerate()
                    .map(|(l, ms)| matrices(ms, &format!("irreps.matrices[{l}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(IrrepSet::new(g.clone(), fs, mats).map_err(|e| CliError::core("irreps", e))?)
            }
            (Some(_), None) => return Err(CliError::input("irreps", "irreps need a group section")),
            (None, _) => None,
        };

        let need_group = |section: &str| -> Result<(FiniteGroup, FactorSystem), CliError> {
            match (&group, &factors) {
                (Some(g), Some(f)) => Ok((g.clone(), f.clone())),
                _ => Err(CliError::input(section, "this form needs a group section")),
            }
        };
        let form = if let Some(s) = &file.group_form {
            let (g, fs) = need_group("groupForm")?;
            let rep = rep(&g, &fs, &s.u, "groupForm.u")?;
            let w = WFamily::new(matrices(&s.w, "groupForm.w")?).map_err(|e| CliError::core("groupForm.w", e))?;
            if w.len() != g.order() {
                return Err(CliError::input("groupForm.w", format!("{} W matrices for a group of order {}", w.len(), g.order())));
            }
            Form::Group { rep, w }
        } else if let Some(s) = &file.controlled {
            let projectors = matrices(&s.projectors, "controlled.projectors")?;
            let unitaries = matrices(&s.unitaries, "controlled.unitaries")?;
            if projectors.is_empty() || projectors.len() != unitaries.len() {
                return Err(CliError::input("controlled", "need equally many (at least one) projectors and unitaries"));
            }
            Form::Controlled { projectors, unitaries }
        } else if let Some(s) = &file.double {
            let (g, fs) = need_group("double")?;
            let (rep_a, rep_b) = rep_pair(&g, &fs, &s.u_a, s.u_b.as_deref(), s.factor_system_b.as_ref(), "double")?;
            let c = s.c.iter().enumerate().map(|(i, z)| complex(z, &format!("double.c[{i}]"))).collect::<Result<Vec<_>, _>>()?;
            if c.len() != g.order() {
                return Err(CliError::input("double.c", format!("{} coefficients for a group of order {}", c.len(), g.order())));
            }
            Form::Double { c, rep_a, rep_b }
        } else if let Some(s) = &file.q_blocks {
            let set = irreps.as_ref().ok_or_else(|| CliError::input("qBlocks", "qBlocks needs an irreps section"))?;
            if s.pattern.len() != set.len() {
                return Err(CliError::input("qBlocks.pattern", format!("{} multiplicities for {} irreps", s.pattern.len(), set.len())));
            }
            let blocks = matrices(&s.blocks, "qBlocks.blocks")?;
            if blocks.len() != set.len() {
                return Err(CliError::input("qBlocks.blocks", format!("{} blocks for {} irreps", blocks.len(), set.len())));
            }
            for (l, (b, d)) in blocks.iter().zip(set.dims()).enumerate() {
                if b.rows() != d * s.d_b || b.cols() != d * s.d_b {
                    return Err(CliError::input(format!("qBlocks.blocks[{l}]"), format!("expected {0}x{0}", d * s.d_b)));
                }
            }
            Form::QBlocks { pattern: MultiplicityPattern(s.pattern.clone()), d_b: s.d_b, blocks }
        } else {
            let s = file.r_blocks.as_ref().expect("one form present");
            let (g, fs) = need_group("rBlocks")?;
            let set = irreps.as_ref().ok_or_else(|| CliError::input("rBlocks", "rBlocks needs an irreps section"))?;
            let blocks = matrices(&s.blocks, "rBlocks.blocks")?;
            if blocks.len() != set.len() || blocks.iter().zip(set.dims()).any(|(b, d)| b.rows() != d || b.cols() != d) {
                return Err(CliError::input("rBlocks.blocks", "need one d_λ x d_λ block per irrep"));
            }
            let (rep_a, rep_b) = rep_pair(&g, &fs, &s.u_a, s.u_b.as_deref(), s.factor_system_b.as_ref(), "rBlocks")?;
            Form::RBlocks { blocks, rep_a, rep_b }
        };
        Ok(Self { file, group, factors, irreps, form })
    }

    /// Builds the unitary in its structured form. Fails with a verification
    /// error when a form invariant that construction relies on is violated.
    pub fn construction(&self) -> Result<Construction, CliError> {
        let at = self.form.section_name();
        let wrap = |e| CliError::core(at, e);
        Ok(match &self.form {
            Form::Group { rep, w } => Construction::Group(assemble_group_unitary(rep, w).map_err(wrap)?),
            Form::Controlled { projectors, unitaries } => {
                Construction::Controlled(ControlledUnitary::new(projectors.clone(), unitaries.clone()).map_err(wrap)?)
            }
            Form::Double { c, rep_a, rep_b } => Construction::Double(DoubleUnitary::new(c.clone(), rep_a.clone(), rep_b.clone()).map_err(wrap)?),
            Form::QBlocks { pattern, d_b, blocks } => {
                let set = self.irreps.as_ref().expect("checked on load");
                let q = QBlockFamily::new(set, *d_b, blocks.clone()).map_err(wrap)?;
                let w = synthesize_w(set, &q).map_err(wrap)?;
                let (rep, _) = block_diagonal_rep(set, pattern).map_err(wrap)?;
                Construction::Group(assemble_group_unitary(&rep, &w).map_err(wrap)?)
            }
            Form::RBlocks { blocks, rep_a, rep_b } => {
                let set = self.irreps.as_ref().expect("checked on load");
                let r = RBlockFamily::new(set, blocks.clone()).map_err(wrap)?;
                let c = synthesize_c(set, &r).map_err(wrap)?;
                let du = DoubleUnitary::new(c, rep_a.clone(), rep_b.clone()).map_err(wrap)?;
                let gap = du.gamma().distance(set.factors());
                if gap > nlgate_core::tol::COCYCLE {
                    return Err(CliError::Verification(format!(
                        "rBlocks: irreps carry a factor system {gap:.3e} away from that of U(f) ⊗ V(f)"
                    )));
                }
                Construction::Double(du)
            }
        })
    }

    pub fn expected_rank(&self) -> Option<usize> {
        self.file.expected.as_ref().and_then(|e| e.schmidt_rank)
    }
}

fn rep_pair(
    g: &FiniteGroup,
    fs: &FactorSystem,
    u_a: &[Matrix],
    u_b: Option<&[Matrix]>,
    fs_b: Option<&FactorSystemSection>,
    at: &str,
) -> Result<(ProjectiveRep, ProjectiveRep), CliError> {
    let rep_a = rep(g, fs, u_a, &format!("{at}.uA"))?;
    let fs_b = match fs_b {
        Some(s) => factor_system(s, g.order(), &format!("{at}.factorSystemB.mu"))?,
        None => fs.clone(),
    };
    let rep_b = match u_b {
        Some(ms) => rep(g, &fs_b, ms, &format!("{at}.uB"))?,
        None => rep_a.with_factors(fs_b).map_err(|e| CliError::core(at, e))?,
    };
    Ok((rep_a, rep_b))
}

pub fn to_matrix(m: &ComplexMatrix) -> Matrix {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&z| Complex::from(z)).collect()).collect()
}

pub fn to_matrices(ms: &[ComplexMatrix]) -> Vec<Matrix> {
    ms.iter().map(to_matrix).collect()
}

fn group_section(g: &FiniteGroup) -> GroupSection {
    GroupSection { table: g.table().to_vec(), labels: g.labels().map(<[String]>::to_vec) }
}

fn factor_section(fs: &FactorSystem) -> Option<FactorSystemSection> {
    if fs.is_trivial() {
        return None;
    }
    let n = fs.order();
    let mu = match fs.roots() {
        Some(r) => (0..n)
            .map(|f| (0..n).map(|g| Complex::Root { root_of_unity: [r.exponents[f * n + g], r.denominator as i64] }).collect())
            .collect(),
        None => (0..n).map(|f| (0..n).map(|g| Complex::from(fs.mu(f, g))).collect()).collect(),
    };
    Some(FactorSystemSection { mu })
}

/// A problem file describing `inst`, with its declared Schmidt rank.
pub fn export_instance(name: &str, inst: &Instance) -> ProblemFile {
    let mut pf = ProblemFile {
        version: SCHEMA_VERSION,
        name: Some(name.to_string()),
        expected: Some(ExpectedSection { schmidt_rank: Some(inst.expected_rank) }),
        ..ProblemFile::default()
    };
    match &inst.construction {
        Construction::Group(g) => {
            pf.group = Some(group_section(g.rep().group()));
            pf.factor_system = factor_section(g.rep().factors());
            pf.group_form = Some(GroupFormSection { u: to_matrices(g.rep().matrices()), w: to_matrices(g.w().matrices()) });
        }
        Construction::Double(d) => {
            pf.group = Some(group_section(d.group()));
            pf.factor_system = factor_section(d.rep_a().factors());
            let same = d.rep_a().matrices() == d.rep_b().matrices() && d.rep_a().factors() == d.rep_b().factors();
            pf.double = Some(DoubleSection {
                c: d.coefficients().iter().map(|&z| Complex::from(z)).collect(),
                u_a: to_matrices(d.rep_a().matrices()),
                u_b: (!same).then(|| to_matrices(d.rep_b().matrices())),
                factor_system_b: if d.rep_a().factors() == d.rep_b().factors() {
                    None
                } else {
                    Some(factor_section(d.rep_b().factors()).unwrap_or(FactorSystemSection {
                        mu: vec![vec![Complex::Real(1.0); d.group().order()]; d.group().order()],
                    }))
                },
            });
        }
        Construction::Controlled(c) => {
            pf.controlled = Some(ControlledSection { projectors: to_matrices(c.projectors()), unitaries: to_matrices(c.unitaries()) });
        }
    }
    pf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms_parse() {
        let z: Vec<Complex> = serde_json::from_str(r#"[0.5, [1.0, -2.0], {"rootOfUnity": [1, 4]}]"#).unwrap();
        assert_eq!(complex(&z[0], "").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(complex(&z[1], "").unwrap(), C64::new(1.0, -2.0));
        assert_eq!(complex(&z[2], "").unwrap(), C64::new(0.0, 1.0));
        let bad = Complex::Root { root_of_unity: [1, 0] };
        assert!(complex(&bad, "x").is_err());
    }

    #[test]
    fn exact_roots_survive_loading() {
        let s = FactorSystemSection {
            mu: vec![
                vec![Complex::Root { root_of_unity: [0, 2] }, Complex::Root { root_of_unity: [0, 3] }],
                vec![Complex::Root { root_of_unity: [0, 1] }, Complex::Root { root_of_unity: [1, 2] }],
            ],
        };
        let fs = factor_system(&s, 2, "mu").unwrap();
        let r = fs.roots().unwrap();
        assert_eq!(r.denominator, 6);
        assert_eq!(r.exponents, vec![0, 0, 0, 3]);
        assert_eq!(fs.mu(1, 1), C64::new(-1.0, 0.0));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let e = ProblemFile::parse(r#"{"version": 1, "grup": {}}"#, "t.json").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 1, .. }));
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn exactly_one_form() {
        let pf = ProblemFile { version: 1, ..ProblemFile::default() };
        assert!(matches!(Problem::from_file(pf), Err(CliError::Input { .. })));
    }
}
