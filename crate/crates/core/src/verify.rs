//! Sampling harnesses that check the catalog against the jet calculus and
//! produce serialisable reports.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::calculus::{FieldJets, Frame};
use crate::catalog::{
    complex_grassmannian_family, isotropic_plane, isotropic_vector,
    quaternionic_grassmannian_family, random_complex_vector, real_grassmannian_eigenfunction,
    so2n_un_eigenfunction, spn_un_eigenfunction, su2n_spn_eigenfunction, su_so_eigenfunction,
    EigenCandidate,
};
use crate::error::{Error, Result};
use crate::groups::{
    algebra_basis, derive_seed, killing_form, killing_form_bruteforce, sample_algebra_element,
    GroupFamily, GroupSpec,
};
use crate::logpower::{
    classify, is_proper_p_harmonic, p_harmonic_function, reduction_trace, Coefficient, HarmonicCase,
};
use crate::matrix::Matrix;
use crate::scalar::C64;
use crate::spaces::SpaceSpec;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_SAMPLES: usize = 100;

/// Stream offset separating the seeds of catalog parameters from sample points.
const PARAMETER_STREAM: u64 = 1 << 40;
/// How many replacement points to try when a sample point is singular.
const MAX_RESAMPLES: usize = 1000;

/// Identifiers of the seven symmetric-space families accepted by the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceId {
    ComplexGrassmannian,
    RealGrassmannian,
    QuaternionicGrassmannian,
    SuSo,
    SoU,
    SpU,
    SuSp,
}

impl SpaceId {
    pub const ALL: [SpaceId; 7] = [
        SpaceId::ComplexGrassmannian,
        SpaceId::RealGrassmannian,
        SpaceId::QuaternionicGrassmannian,
        SpaceId::SuSo,
        SpaceId::SoU,
        SpaceId::SpU,
        SpaceId::SuSp,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            SpaceId::ComplexGrassmannian => "complex-grassmannian",
            SpaceId::RealGrassmannian => "real-grassmannian",
            SpaceId::QuaternionicGrassmannian => "quaternionic-grassmannian",
            SpaceId::SuSo => "su-so",
            SpaceId::SoU => "so-u",
            SpaceId::SpU => "sp-u",
            SpaceId::SuSp => "su-sp",
        }
    }

    pub fn parse(s: &str) -> Option<SpaceId> {
        SpaceId::ALL.into_iter().find(|id| id.id() == s)
    }

    pub fn is_grassmannian(&self) -> bool {
        matches!(
            self,
            SpaceId::ComplexGrassmannian
                | SpaceId::RealGrassmannian
                | SpaceId::QuaternionicGrassmannian
        )
    }

    /// Default `n` when none is given: 1 for Grassmannians, 2 otherwise.
    pub fn default_n(&self) -> usize {
        if self.is_grassmannian() {
            1
        } else {
            2
        }
    }

    pub fn space(&self, m: usize, n: usize) -> Result<SpaceSpec> {
        match self {
            SpaceId::ComplexGrassmannian => SpaceSpec::complex_grassmannian(m, n),
            SpaceId::RealGrassmannian => SpaceSpec::real_grassmannian(m, n),
            SpaceId::QuaternionicGrassmannian => SpaceSpec::quaternionic_grassmannian(m, n),
            SpaceId::SuSo => SpaceSpec::su_so(n),
            SpaceId::SoU => SpaceSpec::so2n_u(n),
            SpaceId::SpU => SpaceSpec::sp_u(n),
            SpaceId::SuSp => SpaceSpec::su2n_sp(n),
        }
    }

    /// The catalog on this space, grouped into eigenfamilies. Vector parameters
    /// are drawn deterministically from `seed`.
    pub fn catalog(&self, m: usize, n: usize, seed: u64) -> Result<Vec<Vec<EigenCandidate>>> {
        let param = |k: u64| derive_seed(seed, PARAMETER_STREAM + k);
        Ok(match self {
            SpaceId::ComplexGrassmannian => (0..m + n)
                .map(|a| complex_grassmannian_family(m, n, a))
                .collect::<Result<_>>()?,
            SpaceId::RealGrassmannian => {
                let v = isotropic_vector(m + n, param(0))?;
                vec![vec![real_grassmannian_eigenfunction(m, n, &v)?]]
            }
            SpaceId::QuaternionicGrassmannian => (0..2 * (m + n))
                .map(|a| quaternionic_grassmannian_family(m, n, a))
                .collect::<Result<_>>()?,
            SpaceId::SuSo => vec![vec![su_so_eigenfunction(
                n,
                &random_complex_vector(n, param(0)),
            )?]],
            SpaceId::SoU => {
                if n < 2 {
                    return Err(Error::Unsupported(
                        "SO(2)/U(1) is a point; use n >= 2".into(),
                    ));
                }
                let (a, b) = isotropic_plane(2 * n, param(0))?;
                vec![vec![so2n_un_eigenfunction(n, a.entries(), b.entries())?]]
            }
            SpaceId::SpU => vec![vec![spn_un_eigenfunction(
                n,
                &random_complex_vector(2 * n, param(0)),
            )?]],
            SpaceId::SuSp => {
                let a = random_complex_vector(2 * n, param(0));
                let b = random_complex_vector(2 * n, param(1));
                vec![vec![su2n_spn_eigenfunction(n, &a, &b)?]]
            }
        })
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub space: String,
    pub candidate: String,
    pub samples: usize,
    pub tolerance: f64,
    pub max_tau_residual: f64,
    pub max_kappa_residual: f64,
    pub max_cross_residual: f64,
    pub seed: u64,
    pub passed: bool,
    pub wall_time_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Record elapsed time; off by default so reports are reproducible byte for byte.
    pub timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            tolerance: DEFAULT_TOLERANCE,
            timing: false,
        }
    }
}

/// Largest residuals over a set of sample points.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Residuals {
    pub tau: f64,
    pub kappa: f64,
    pub cross: f64,
}

impl Residuals {
    fn absorb(&mut self, other: Residuals) {
        self.tau = max_nan(self.tau, other.tau);
        self.kappa = max_nan(self.kappa, other.kappa);
        self.cross = max_nan(self.cross, other.cross);
    }

    pub fn max(&self) -> f64 {
        max_nan(max_nan(self.tau, self.kappa), self.cross)
    }
}

/// `max` that propagates NaN so that broken evaluations cannot pass.
fn max_nan(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Normalised eigen-residuals of every candidate at one point:
/// `|τψ − λψ|/(1+|ψ|)`, `|κ(ψ,ψ) − μψ²|/(1+|ψ|²)` and, within each family,
/// `|κ(ψ,φ) − μψφ|/(1+|ψφ|)`.
pub fn residuals_at(
    families: &[Vec<EigenCandidate>],
    basis: &[Matrix],
    point: &Matrix,
) -> Result<Residuals> {
    let frame = Frame::new(basis, point)?;
    let mut out = Residuals::default();
    for family in families {
        let jets: Vec<FieldJets> = family
            .iter()
            .map(|c| frame.jets(&c.field, point))
            .collect::<Result<_>>()?;
        for (c, j) in family.iter().zip(&jets) {
            let v = j.value;
            let tau = (j.tension() - c.lambda * v).norm() / (1.0 + v.norm());
            let kappa = (j.conformality(j) - c.mu * v * v).norm() / (1.0 + v.norm_sqr());
            out.absorb(Residuals {
                tau,
                kappa,
                cross: 0.0,
            });
        }
        for a in 0..family.len() {
            for b in a + 1..family.len() {
                let (ja, jb) = (&jets[a], &jets[b]);
                let prod = ja.value * jb.value;
                let cross =
                    (ja.conformality(jb) - family[a].mu * prod).norm() / (1.0 + prod.norm());
                out.absorb(Residuals {
                    tau: 0.0,
                    kappa: 0.0,
                    cross,
                });
            }
        }
    }
    Ok(out)
}

/// Residuals over `samples` seeded points of the ambient group. Points where a
/// field cannot be evaluated are replaced by fresh draws.
pub fn sample_residuals(
    families: &[Vec<EigenCandidate>],
    samples: usize,
    seed: u64,
) -> Result<Residuals> {
    let space = match families.iter().flatten().next() {
        Some(c) => c.space.clone(),
        None => return Err(Error::InvalidArgument("nothing to verify".into())),
    };
    let basis = space.ambient.algebra_basis()?;
    let mut total = Residuals::default();
    let mut stream = 0u64;
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    while accepted < samples {
        let point = space.ambient.sample(derive_seed(seed, stream))?;
        stream += 1;
        match residuals_at(families, &basis, &point) {
            Ok(r) => {
                total.absorb(r);
                accepted += 1;
            }
            Err(Error::Evaluation { .. }) if rejected < MAX_RESAMPLES => rejected += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(total)
}

/// Runs the eigen checks and assembles a report.
pub fn verify_families(
    space_id: &str,
    candidate_id: &str,
    families: &[Vec<EigenCandidate>],
    config: &VerifyConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let r = sample_residuals(families, config.samples, config.seed)?;
    let passed = r.max() <= config.tolerance;
    Ok(VerificationReport {
        space: space_id.to_string(),
        candidate: candidate_id.to_string(),
        samples: config.samples,
        tolerance: config.tolerance,
        max_tau_residual: r.tau,
        max_kappa_residual: r.kappa,
        max_cross_residual: r.cross,
        seed: config.seed,
        passed,
        wall_time_ms: if config.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        },
    })
}

/// Restricts a catalog to the candidates whose label is `candidate`; `"all"` keeps everything.
pub fn select_candidate(
    families: Vec<Vec<EigenCandidate>>,
    candidate: &str,
) -> Result<Vec<Vec<EigenCandidate>>> {
    if candidate == "all" {
        return Ok(families);
    }
    let found: Vec<EigenCandidate> = families
        .into_iter()
        .flatten()
        .filter(|c| c.label() == candidate)
        .take(1)
        .collect();
    if found.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no candidate named '{candidate}' on this space"
        )));
    }
    Ok(vec![found])
}

/// Verifies the catalog of one space.
pub fn verify_space(
    id: SpaceId,
    m: usize,
    n: usize,
    candidate: &str,
    config: &VerifyConfig,
) -> Result<VerificationReport> {
    let families = select_candidate(id.catalog(m, n, config.seed)?, candidate)?;
    verify_families(id.id(), candidate, &families, config)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KillingReport {
    pub group: String,
    pub n: usize,
    pub pairs: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// `max |closed − brute| / (1 + |brute|)` over the sampled pairs.
    pub max_relative_deviation: f64,
    /// Closed form and brute force on the central pair `(iI, iI)`, for `u(n)` only.
    pub central_pair: Option<[f64; 2]>,
    pub passed: bool,
}

/// Compares [`killing_form`] with [`killing_form_bruteforce`] on seeded algebra pairs.
pub fn killing_report(
    g: &GroupSpec,
    pairs: usize,
    seed: u64,
    tolerance: f64,
) -> Result<KillingReport> {
    algebra_basis(g)?;
    let mut worst: f64 = 0.0;
    for i in 0..pairs as u64 {
        let x = sample_algebra_element(g, derive_seed(seed, 2 * i))?;
        let y = sample_algebra_element(g, derive_seed(seed, 2 * i + 1))?;
        let closed = killing_form(g, &x, &y)?;
        let brute = killing_form_bruteforce(g, &x, &y)?;
        worst = max_nan(worst, (closed - brute).abs() / (1.0 + brute.abs()));
    }
    let central_pair = if g.family == GroupFamily::Unitary {
        let z = Matrix::identity(g.n).scale(C64::new(0.0, 1.0));
        Some([
            killing_form(g, &z, &z)?,
            killing_form_bruteforce(g, &z, &z)?,
        ])
    } else {
        None
    };
    let central_ok = central_pair.is_none_or(|[a, b]| (a - b).abs() <= tolerance);
    Ok(KillingReport {
        group: g.family.id().to_string(),
        n: g.n,
        pairs,
        seed,
        tolerance,
        max_relative_deviation: worst,
        central_pair,
        passed: worst <= tolerance && central_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PHarmonicReport {
    pub lambda: String,
    pub mu: String,
    pub p: u32,
    pub case: String,
    pub expression: String,
    /// `τ¹E, …, τ^pE`
    pub trace: Vec<String>,
    pub proper: bool,
}

pub fn case_name(case: HarmonicCase) -> &'static str {
    match case {
        HarmonicCase::ZeroMu => "mu=0",
        HarmonicCase::EqualEigenvalues => "lambda=mu",
        HarmonicCase::Generic => "lambda!=mu",
    }
}

/// Builds the proper p-harmonic expression and its reduction trace.
pub fn pharmonic_report<T: Coefficient>(
    lambda: &T,
    mu: &T,
    p: u32,
    c1: &T,
    c2: &T,
) -> Result<PHarmonicReport> {
    let case = classify(lambda, mu)?;
    let expr = p_harmonic_function(lambda, mu, p, c1, c2)?;
    let trace = reduction_trace(&expr, lambda, mu, p);
    Ok(PHarmonicReport {
        lambda: lambda.render(),
        mu: mu.render(),
        p,
        case: case_name(case).to_string(),
        expression: expr.to_string(),
        trace: trace[1..].iter().map(|e| e.to_string()).collect(),
        proper: is_proper_p_harmonic(&expr, lambda, mu, p),
    })
}

/// Values of one candidate at `points` seeded points of its ambient group.
pub fn export_values(
    id: SpaceId,
    m: usize,
    n: usize,
    candidate: &str,
    points: usize,
    seed: u64,
) -> Result<Vec<(usize, C64)>> {
    let families = select_candidate(id.catalog(m, n, seed)?, candidate)?;
    let c = &families[0][0];
    (0..points)
        .map(|i| {
            let p = c.space.ambient.sample(derive_seed(seed, i as u64))?;
            Ok((i, c.field.value(&p)?))
        })
        .collect()
}

/// Renders exported values: a `# space candidate seed` header, then tab-separated rows.
pub fn format_export(space: &str, candidate: &str, seed: u64, rows: &[(usize, C64)]) -> String {
    let mut out = format!("# {space} {candidate} {seed}\n");
    for (i, v) in rows {
        out.push_str(&format!("{i}\t{:e}\t{:e}\n", v.re, v.im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in SpaceId::ALL {
            assert_eq!(SpaceId::parse(id.id()), Some(id));
        }
        assert_eq!(SpaceId::parse("foo"), None);
    }

    #[test]
    fn small_verification_passes() {
        let cfg = VerifyConfig {
            samples: 5,
            seed: 42,
            ..VerifyConfig::default()
        };
        let r = verify_space(SpaceId::ComplexGrassmannian, 1, 1, "all", &cfg).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.wall_time_ms, 0);
        let zero = VerifyConfig {
            tolerance: 0.0,
            ..cfg
        };
        assert!(
            !verify_space(SpaceId::ComplexGrassmannian, 1, 2, "all", &zero)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn killing_report_for_unitary_has_central_pair() {
        let r = killing_report(&GroupSpec::u(2), 5, 1, 1e-9).unwrap();
        assert!(r.passed);
        let [a, b] = r.central_pair.unwrap();
        assert_eq!(a, 0.0);
        assert!(b.abs() < 1e-12);
        assert!(killing_report(&GroupSpec::so(1), 5, 1, 1e-9).is_err());
    }

    #[test]
    fn export_rows() {
        let rows = export_values(SpaceId::SpU, 0, 1, "phi_a", 4, 3).unwrap();
        assert_eq!(rows.len(), 4);
        let text = format_export("sp-u", "phi_a", 3, &rows);
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("# sp-u phi_a 3\n"));
        assert!(export_values(SpaceId::SpU, 0, 1, "psi[0][1]", 4, 3).is_err());
    }
}
