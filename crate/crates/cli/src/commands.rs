use noncentral_core::propagator::Sector;
use noncentral_core::spectrum::enumerate_ab_levels;
use noncentral_core::{
    enumerate_levels, eval_potential_spherical, hartmann_energy, parabolic_to_spherical, parabolic_to_uv,
    resolvent_element, spherical_to_parabolic, uv_to_parabolic, verify_spectrum, AbParams, Error, HartmannParams,
    Level, ParabolicPoint, Point4, PotentialParams, QuantumNumbers, ResolventOptions, ResolventQuery, SphericalPoint,
    Units, UvPoint, VerifyOptions,
};
use serde::Serialize;

use crate::args::{
    AbArgs, Command, Format, GreensArgs, HartmannArgs, PotentialArgs, RangeArgs, SpectrumArgs, TransformArgs, UnitArgs,
    VerifyArgs,
};
use crate::output;

#[derive(Debug)]
pub enum RunError {
    Core(Error),
    /// Flags that parse but do not describe a valid request.
    Usage(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Core(e)
    }
}

/// Rendered output plus the exit status it should be reported with.
pub struct Outcome {
    pub text: String,
    pub status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, status: 0 }
    }
}

#[derive(Debug, Serialize)]
struct LevelRow {
    nu: u32,
    n_sum: u32,
    degeneracy: u32,
    lambda: f64,
    n_eff: f64,
    energy_hartree: f64,
}

impl From<&Level> for LevelRow {
    fn from(l: &Level) -> Self {
        Self {
            nu: l.qn.nu,
            n_sum: l.n_sum(),
            degeneracy: l.degeneracy,
            lambda: l.lambda,
            n_eff: l.n_eff,
            energy_hartree: l.energy,
        }
    }
}

#[derive(Debug, Serialize)]
struct Table<H: Serialize, R: Serialize> {
    #[serde(flatten)]
    header: H,
    levels: Vec<R>,
}

#[derive(Debug, Serialize)]
struct PotentialHeader {
    #[serde(rename = "Z")]
    z: f64,
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "C")]
    c: f64,
    #[serde(flatten)]
    units: Units,
}

fn render_table<H: Serialize, R: Serialize>(format: Format, header: H, levels: Vec<R>) -> String {
    match format {
        Format::Csv => output::csv(&levels),
        Format::Json => output::json(&Table { header, levels }),
    }
}

fn units(u: &UnitArgs) -> Result<Units, RunError> {
    let units = Units {
        mass: u.mass,
        hbar: u.hbar,
        e2: u.e2,
    };
    units.validate()?;
    Ok(units)
}

fn potential(p: &PotentialArgs) -> Result<PotentialParams, RunError> {
    Ok(PotentialParams::with_units(p.z, p.b, p.c, units(&p.units)?)?)
}

fn header(p: &PotentialParams) -> PotentialHeader {
    PotentialHeader {
        z: p.z(),
        b: p.b(),
        c: p.c(),
        units: p.units(),
    }
}

fn channels(r: &RangeArgs) -> std::ops::RangeInclusive<u32> {
    match r.nu {
        Some(nu) => nu..=nu,
        None => 0..=r.nu_max,
    }
}

fn spectrum(a: &SpectrumArgs) -> Result<Outcome, RunError> {
    let params = potential(&a.potential)?;
    let nus = channels(&a.range);
    let levels: Vec<LevelRow> = enumerate_levels(&params, a.range.n_sum_max, *nus.end())
        .iter()
        .filter(|l| nus.contains(&l.qn.nu))
        .map(LevelRow::from)
        .collect();
    if levels.is_empty() {
        return Err(Error::NoValidChannels.into());
    }
    Ok(Outcome::ok(render_table(a.out.format, header(&params), levels)))
}

fn verify(a: &VerifyArgs) -> Result<Outcome, RunError> {
    let params = potential(&a.potential)?;
    let mut opts = VerifyOptions::new(a.nu_max, a.levels_per_channel, a.tol);
    opts.angular_nodes = a.angular_nodes;
    opts.radial_nodes = a.radial_nodes;
    opts.threads = a.threads;
    let report = verify_spectrum(&params, &opts)?;
    let text = match a.out.format {
        Format::Csv => output::csv(&report.rows),
        Format::Json => output::json(&report),
    };
    let status = if report.pass {
        0
    } else if report.rows.is_empty() {
        1
    } else {
        2
    };
    Ok(Outcome { text, status })
}

#[derive(Debug, Serialize)]
struct GreensRow {
    energy: f64,
    /// `None` for the full kernel.
    nu: Option<u32>,
    value: f64,
    abs_err: f64,
    rel_err: f64,
    tail: f64,
    decay_rate: f64,
    omega: f64,
    max_beta: f64,
    evals: usize,
}

fn point(c: [f64; 4]) -> Point4 {
    Point4::new([c[0], c[1]], [c[2], c[3]])
}

fn greens(a: &GreensArgs) -> Result<Outcome, RunError> {
    let params = potential(&a.potential)?;
    let mut q = ResolventQuery::new(&params, a.energy, point(a.a), point(a.b)).with_options(ResolventOptions {
        max_beta: a.max_beta,
        rel_tol: a.rel_tol,
        max_evals: a.max_evals,
    });
    if let Some(nu) = a.nu {
        q = q.with_sector(Sector::channel(&params, nu)?);
    }
    let r = resolvent_element(&q)?;
    let row = GreensRow {
        energy: a.energy,
        nu: a.nu,
        value: r.value,
        abs_err: r.abs_err,
        rel_err: r.rel_err,
        tail: r.tail,
        decay_rate: r.decay_rate,
        omega: r.omega,
        max_beta: r.max_beta,
        evals: r.evals,
    };
    Ok(Outcome::ok(match a.out.format {
        Format::Csv => output::csv(&[row]),
        Format::Json => output::json(&row),
    }))
}

#[derive(Debug, Serialize)]
struct TransformRow {
    r: f64,
    theta: f64,
    phi: f64,
    xi: f64,
    eta: f64,
    u: f64,
    v: f64,
    /// Empty on the z-axis, where the ring terms diverge.
    potential: Option<f64>,
}

fn transform(a: &TransformArgs) -> Result<Outcome, RunError> {
    let params = potential(&a.potential)?;
    let sph = match (a.r, a.theta, a.xi, a.eta, a.u, a.v) {
        (Some(r), Some(theta), ..) => SphericalPoint::new(r, theta, a.phi),
        (None, None, Some(xi), Some(eta), ..) => parabolic_to_spherical(&ParabolicPoint { xi, eta, phi: a.phi })?,
        (None, None, None, None, Some(u), Some(v)) => parabolic_to_spherical(&uv_to_parabolic(&UvPoint {
            u,
            v,
            phi1: a.phi,
            phi2: a.phi,
        })?)?,
        _ => {
            return Err(RunError::Usage(
                "give exactly one of --r/--theta, --xi/--eta or --u/--v".into(),
            ))
        }
    };
    let par = spherical_to_parabolic(&sph)?;
    let uv = parabolic_to_uv(&par)?;
    let potential = match eval_potential_spherical(&params, &sph) {
        Ok(v) => Some(v),
        Err(Error::AxisSingularity { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let row = TransformRow {
        r: sph.r,
        theta: sph.theta,
        phi: sph.phi,
        xi: par.xi,
        eta: par.eta,
        u: uv.u,
        v: uv.v,
        potential,
    };
    Ok(Outcome::ok(match a.out.format {
        Format::Csv => output::csv(&[row]),
        Format::Json => output::json(&row),
    }))
}

#[derive(Debug, Serialize)]
struct HartmannHeader {
    gamma: f64,
    sigma: f64,
    #[serde(flatten)]
    mapped: PotentialHeader,
}

fn hartmann(a: &HartmannArgs) -> Result<Outcome, RunError> {
    let h = HartmannParams::with_units(a.gamma, a.sigma, units(&a.units)?)?;
    let mut levels: Vec<Level> = channels(&a.range)
        .flat_map(|nu| (0..=a.range.n_sum_max).map(move |n| QuantumNumbers::new(n, 0, nu)))
        .map(|qn| hartmann_energy(&h, &qn))
        .collect();
    levels.sort_by(|x, y| {
        x.energy
            .total_cmp(&y.energy)
            .then(x.qn.nu.cmp(&y.qn.nu))
            .then(x.n_sum().cmp(&y.n_sum()))
    });
    let head = HartmannHeader {
        gamma: h.gamma(),
        sigma: h.sigma(),
        mapped: header(&h.potential_params()),
    };
    let rows = levels.iter().map(LevelRow::from).collect();
    Ok(Outcome::ok(render_table(a.out.format, head, rows)))
}

#[derive(Debug, Serialize)]
struct AbHeader {
    #[serde(rename = "Z")]
    z: f64,
    alpha: f64,
    #[serde(flatten)]
    units: Units,
}

#[derive(Debug, Serialize)]
struct AbRow {
    nu: u32,
    n_sum: u32,
    degeneracy: u32,
    m_abs: f64,
    coulombian: bool,
    n_eff: f64,
    energy_hartree: f64,
}

fn ab(a: &AbArgs) -> Result<Outcome, RunError> {
    let params = AbParams::with_units(a.z, a.alpha, units(&a.units)?)?;
    let nus = channels(&a.range);
    let rows: Vec<AbRow> = enumerate_ab_levels(&params, a.range.n_sum_max, *nus.end())
        .iter()
        .filter(|l| nus.contains(&l.level.qn.nu))
        .map(|l| AbRow {
            nu: l.level.qn.nu,
            n_sum: l.level.n_sum(),
            degeneracy: l.level.degeneracy,
            m_abs: l.m_abs,
            coulombian: l.coulombian,
            n_eff: l.level.n_eff,
            energy_hartree: l.level.energy,
        })
        .collect();
    let head = AbHeader {
        z: params.z(),
        alpha: params.alpha(),
        units: params.units(),
    };
    Ok(Outcome::ok(render_table(a.out.format, head, rows)))
}

pub fn run(cmd: &Command) -> Result<Outcome, RunError> {
    match cmd {
        Command::Spectrum(a) => spectrum(a),
        Command::Verify(a) => verify(a),
        Command::Greens(a) => greens(a),
        Command::Transform(a) => transform(a),
        Command::Hartmann(a) => hartmann(a),
        Command::Ab(a) => ab(a),
    }
}
