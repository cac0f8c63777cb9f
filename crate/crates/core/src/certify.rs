//! The positivity test: support condition, eigenvalue lower bound on the
//! support of û₋, and the comparison `C1 < C2`.

use std::fmt::{self, Write};

use crate::constants::{embedding_or_poincare, rfk_constant, talenti, volume_exponent, DomainSpec};
use crate::error::{domain, Error, Result};
use crate::field::CellMesh;
use crate::interval::Interval;
use crate::text::{decimal_down, decimal_up};

/// One term `a·t^p` of the growth bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthTerm {
    pub a: Interval,
    pub p: Interval,
}

/// Growth data `−f(−t) ≤ λt + Σ aᵢ t^{pᵢ}` for `t ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NonlinearityBound {
    pub name: String,
    pub lambda: Interval,
    pub terms: Vec<GrowthTerm>,
}

impl NonlinearityBound {
    pub fn new(name: impl Into<String>, lambda: Interval, terms: Vec<GrowthTerm>) -> Result<NonlinearityBound> {
        for t in &terms {
            if t.a.lo() < 0.0 || !t.a.is_certifying() {
                return domain(format!("growth coefficient a = {} must be nonnegative and finite", t.a));
            }
            if t.p.lo() <= 1.0 || !t.p.is_certifying() {
                return domain(format!("growth exponent p = {} must exceed 1", t.p));
            }
        }
        if !lambda.is_certifying() {
            return domain(format!("lambda = {lambda} is not finite"));
        }
        Ok(NonlinearityBound { name: name.into(), lambda, terms })
    }

    /// `f(u) = λu + u^p`: one term (1, p).
    pub fn lane_emden(lambda: Interval, p: Interval) -> Result<NonlinearityBound> {
        NonlinearityBound::new("lane-emden", lambda, vec![GrowthTerm { a: Interval::ONE, p }])
    }

    /// `f(u) = λ(u − u³)`: no growth terms.
    pub fn allen_cahn(lambda: Interval) -> Result<NonlinearityBound> {
        NonlinearityBound::new("allen-cahn", lambda, vec![])
    }

    /// `f(u) = λu(1 − u)(u − a)`: λ' = 0 and the quadratic term λ(1+a).
    pub fn nagumo(lambda: Interval, a: Interval) -> Result<NonlinearityBound> {
        let coef = lambda * (Interval::ONE + a);
        NonlinearityBound::new("nagumo", Interval::ZERO, vec![GrowthTerm { a: coef, p: Interval::point(2.0) }])
    }

    /// `f(u) = λ(u + A u² − B u³)`: λ linear and the quadratic term λA.
    pub fn lions(lambda: Interval, a: Interval) -> Result<NonlinearityBound> {
        NonlinearityBound::new("lions", lambda, vec![GrowthTerm { a: lambda * a, p: Interval::point(2.0) }])
    }

    /// Every exponent must be subcritical: `p < (N+2)/(N−2)` for N ≥ 3.
    pub fn check_subcritical(&self, n: u32) -> Result<()> {
        if n < 3 {
            return Ok(());
        }
        let crit = (n as f64 + 2.0) / (n as f64 - 2.0);
        for t in &self.terms {
            if t.p.hi() >= crit {
                return domain(format!("exponent p = {} is not subcritical for N = {n} (p* = {crit})", t.p));
            }
        }
        Ok(())
    }
}

impl fmt::Display for NonlinearityBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: lambda = {}", self.name, self.lambda)?;
        for t in &self.terms {
            write!(f, " + {}·t^{}", t.a, t.p)?;
        }
        Ok(())
    }
}

/// A lower bound of λ₁(supp u₋). `Unbounded` when the sublevel set is
/// empty: any eigenvalue bound holds vacuously.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EigenLower {
    Bounded(Interval),
    Unbounded,
}

impl EigenLower {
    /// Certified lower endpoint, `+∞` when unbounded.
    pub fn lo(self) -> f64 {
        match self {
            EigenLower::Bounded(v) => v.lo(),
            EigenLower::Unbounded => f64::INFINITY,
        }
    }

    /// Strictly above λ at the certifying endpoints.
    pub fn exceeds(self, lambda: Interval) -> bool {
        lambda.hi() <= 0.0 || self.lo() > lambda.hi()
    }
}

impl fmt::Display for EigenLower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenLower::Bounded(v) => write!(f, "{v}"),
            EigenLower::Unbounded => f.write_str("infinite"),
        }
    }
}

/// Upper end of `dm_volume` as a point, the only endpoint the bounds use.
fn dm_upper(dm_volume: Interval) -> Result<Interval> {
    if dm_volume.lo() < 0.0 && dm_volume.hi() < 0.0 {
        return domain(format!("volume {dm_volume} is negative"));
    }
    if !dm_volume.is_certifying() {
        return domain(format!("volume {dm_volume} is not finite"));
    }
    Ok(Interval::point(dm_volume.hi().max(0.0)))
}

fn check_q(q: f64, n: u32) -> Result<()> {
    let upper = if n == 2 { f64::INFINITY } else { 2.0 * n as f64 / (n as f64 - 2.0) };
    if !(q >= 2.0 && q < upper && q.is_finite()) {
        return domain(format!("q = {q} outside [2, {upper}) for N = {n}"));
    }
    Ok(())
}

/// `‖û₊‖_{L^q(D(m))} − C_q(Ω)·ρ`; a positive `lo` gives `|supp u₋| ≤ |D(m)|`.
pub fn support_condition(mesh: &CellMesh, dom: &DomainSpec, q: f64, m: f64, rho: f64) -> Result<Interval> {
    check_q(q, dom.dimension)?;
    check_rho(rho)?;
    if !(m > 0.0 && m.is_finite()) {
        return domain(format!("level m = {m} must be positive"));
    }
    let c = embedding_or_poincare(q, dom)?;
    Ok(mesh.plus_norm_lower(q, m)? - c * rho)
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho >= 0.0 && rho.is_finite()) {
        return domain(format!("rho = {rho} must be finite and nonnegative"));
    }
    Ok(())
}

/// `λ₁(supp u₋) ≥ A_{1,N}·|D(m)|^{−2/N}`.
pub fn eigen_lower_bound(dm_volume: Interval, n: u32) -> Result<EigenLower> {
    let d = dm_upper(dm_volume)?;
    if d.hi() == 0.0 {
        return Ok(EigenLower::Unbounded);
    }
    let a = rfk_constant(n)?;
    Ok(EigenLower::Bounded(a.checked_div(d.pow(Interval::ratio(2, n as i64))?)?))
}

/// `C1 = Σ aᵢ |D|^{2/N+2/(pᵢ+1)−1} Tᵢ² (‖û₋‖_{L^{pᵢ+1}} + |Ω|^{1/N+1/(pᵢ+1)−1/2} Tᵢ ρ)^{pᵢ−1}`
/// with `Tᵢ = T_{pᵢ+1,N}`; the `hi` endpoint is certified.
pub fn compute_c1(
    nl: &NonlinearityBound,
    dom: &DomainSpec,
    dm_volume: Interval,
    minus_norms: &[Interval],
    rho: f64,
) -> Result<Interval> {
    if minus_norms.len() != nl.terms.len() {
        return Err(Error::Config(format!(
            "{} minus-part norms given for {} growth terms",
            minus_norms.len(),
            nl.terms.len()
        )));
    }
    check_rho(rho)?;
    nl.check_subcritical(dom.dimension)?;
    let n = dom.dimension;
    let d = dm_upper(dm_volume)?;
    let mut c1 = Interval::ZERO;
    for (term, norm) in nl.terms.iter().zip(minus_norms) {
        let r = term.p + 1.0;
        let t = talenti(r, n)?;
        let d_exp = Interval::ratio(2, n as i64) + r.recip()? * 2.0 - 1.0;
        let d_factor = if d.hi() == 0.0 {
            if d_exp.lo() <= 0.0 {
                return domain(format!("exponent {d_exp} of |D(m)| is not positive"));
            }
            Interval::ZERO
        } else {
            d.pow(d_exp)?
        };
        if d_factor == Interval::ZERO {
            continue;
        }
        let scaled = dom.volume.pow(volume_exponent(r, n)?)? * t * rho;
        let base = Interval::point(norm.hi().max(0.0)) + scaled;
        let power = if base.hi() == 0.0 { Interval::ZERO } else { base.pow(term.p - 1.0)? };
        c1 += term.a * d_factor * t.sqr() * power;
    }
    Ok(c1)
}

/// `C2 = 1 − (λ/A_{1,N})·|D(m)|^{2/N}`; the `lo` endpoint is certified.
pub fn compute_c2(nl: &NonlinearityBound, dm_volume: Interval, n: u32) -> Result<Interval> {
    let d = dm_upper(dm_volume)?;
    if nl.lambda == Interval::ZERO || d.hi() == 0.0 {
        return Ok(Interval::ONE);
    }
    let a = rfk_constant(n)?;
    Ok(Interval::ONE - nl.lambda.checked_div(a)? * d.pow(Interval::ratio(2, n as i64))?)
}

/// `1 − λ/λ̲`, algebraically equal to [`compute_c2`] with `λ̲` from
/// [`eigen_lower_bound`].
pub fn c2_from_eigen(lambda: Interval, eigen: EigenLower) -> Result<Interval> {
    match eigen {
        EigenLower::Unbounded => Ok(Interval::ONE),
        EigenLower::Bounded(e) => Ok(Interval::ONE - lambda.checked_div(e)?),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    VerifiedNonnegative,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::VerifiedNonnegative => "VERIFIED_NONNEGATIVE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything evaluated at one level `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelReport {
    pub m: f64,
    pub support_margin: Interval,
    pub dm_volume: Interval,
    pub eigen_lower: EigenLower,
    pub c1: Interval,
    pub c2: Interval,
}

impl LevelReport {
    /// The verdict gate, evaluated on certifying endpoints with strict
    /// inequalities.
    pub fn passes(&self, lambda: Interval) -> bool {
        self.support_margin.lo() > 0.0 && self.c1.hi() < self.c2.lo() && self.eigen_lower.exceeds(lambda)
    }

    /// First failing condition, if any.
    pub fn failure(&self, lambda: Interval) -> Option<&'static str> {
        if self.support_margin.lo() <= 0.0 {
            Some("support condition fails")
        } else if !self.eigen_lower.exceeds(lambda) {
            Some("eigenvalue bound does not exceed lambda")
        } else if self.c1.hi() >= self.c2.lo() {
            Some("C1 >= C2")
        } else {
            None
        }
    }

    fn slack(&self) -> f64 {
        self.c2.lo() - self.c1.hi()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositivityCertificate {
    pub verdict: Verdict,
    pub q: f64,
    pub rho: f64,
    pub nonlinearity: NonlinearityBound,
    pub domain: DomainSpec,
    /// Index into `levels` of the reported level: the verified level with the
    /// largest `C2 − C1`, otherwise the one with the best support margin.
    pub selected: usize,
    pub levels: Vec<LevelReport>,
    pub assumptions: Vec<String>,
}

impl PositivityCertificate {
    pub fn report(&self) -> &LevelReport {
        &self.levels[self.selected]
    }

    pub fn m(&self) -> f64 {
        self.report().m
    }

    /// Re-derives the verdict from the recorded fields alone.
    pub fn recheck(&self) -> bool {
        let verified = self.levels.get(self.selected).is_some_and(|r| r.passes(self.nonlinearity.lambda));
        verified == (self.verdict == Verdict::VerifiedNonnegative)
    }
}

/// `2⁻¹, 2⁻², …, 2⁻⁸`.
pub fn default_m_candidates() -> Vec<f64> {
    (1..=8).map(|k| 0.5f64.powi(k)).collect()
}

pub fn default_assumptions(rho_source: &str) -> Vec<String> {
    vec![
        "mesh cells cover the closed domain with overlaps of measure zero (declared by the producer)".into(),
        "cell bounds satisfy lower <= u_hat <= upper on each closed cell (declared by the producer)".into(),
        format!("||u - u_hat||_H10 <= rho for an exact solution u (rho supplied: {rho_source})"),
        "a disconnected supp(u-) is covered by the single global |D(m)| bound, which dominates every component".into(),
        "proves nonnegativity, not strict positivity".into(),
    ]
}

/// Evaluates every quantity of the test at level `m`.
pub fn evaluate_level(
    mesh: &CellMesh,
    dom: &DomainSpec,
    nl: &NonlinearityBound,
    rho: f64,
    q: f64,
    m: f64,
) -> Result<LevelReport> {
    let support_margin = support_condition(mesh, dom, q, m, rho)?;
    let dm_volume = mesh.dm_vol_upper(m);
    let eigen_lower = eigen_lower_bound(dm_volume, dom.dimension)?;
    let norms = nl.terms.iter().map(|t| mesh.minus_norm_upper(t.p.hi() + 1.0)).collect::<Result<Vec<_>>>()?;
    let c1 = compute_c1(nl, dom, dm_volume, &norms, rho)?;
    let c2 = compute_c2(nl, dm_volume, dom.dimension)?;
    Ok(LevelReport { m, support_margin, dm_volume, eigen_lower, c1, c2 })
}

pub fn certify_positivity(
    mesh: &CellMesh,
    dom: &DomainSpec,
    nl: &NonlinearityBound,
    rho: f64,
    q: f64,
    m_candidates: &[f64],
    assumptions: Vec<String>,
) -> Result<PositivityCertificate> {
    if m_candidates.is_empty() {
        return Err(Error::Config("no candidate levels m given".into()));
    }
    if mesh.dimension() != dom.dimension {
        return Err(Error::Config(format!(
            "mesh dimension {} differs from domain dimension {}",
            mesh.dimension(),
            dom.dimension
        )));
    }
    let levels = m_candidates.iter().map(|&m| evaluate_level(mesh, dom, nl, rho, q, m)).collect::<Result<Vec<_>>>()?;
    let lambda = nl.lambda;
    let best_verified = levels.iter().enumerate().filter(|(_, r)| r.passes(lambda)).fold(
        None::<(usize, f64)>,
        |best, (i, r)| match best {
            Some((_, s)) if s >= r.slack() => best,
            _ => Some((i, r.slack())),
        },
    );
    let (verdict, selected) = match best_verified {
        Some((i, _)) => (Verdict::VerifiedNonnegative, i),
        None => {
            let i = levels.iter().enumerate().fold(0, |b, (i, r)| {
                if r.support_margin.lo() > levels[b].support_margin.lo() {
                    i
                } else {
                    b
                }
            });
            (Verdict::Inconclusive, i)
        }
    };
    Ok(PositivityCertificate {
        verdict,
        q,
        rho,
        nonlinearity: nl.clone(),
        domain: dom.clone(),
        selected,
        levels,
        assumptions,
    })
}

fn upper(x: Interval) -> String {
    decimal_up(x.hi(), 8)
}

fn lower(x: Interval) -> String {
    decimal_down(x.lo(), 8)
}

/// Plain-text report: inputs, one block per level, verdict.
pub fn text_report(cert: &PositivityCertificate) -> String {
    let mut out = String::new();
    let nl = &cert.nonlinearity;
    let _ = writeln!(out, "nonlinearity      {nl}");
    let _ = writeln!(out, "domain            N = {}, |Omega| <= {}", cert.domain.dimension, upper(cert.domain.volume));
    if let Some(src) = &cert.domain.lambda1 {
        let _ = writeln!(out, "lambda1(Omega)    {src}");
    }
    let _ = writeln!(out, "rho               {}", decimal_up(cert.rho, 9));
    let _ = writeln!(out, "q                 {}", cert.q);
    let _ = writeln!(out);
    for (i, r) in cert.levels.iter().enumerate() {
        let mark = if i == cert.selected { "*" } else { " " };
        let eigen = match r.eigen_lower {
            EigenLower::Bounded(v) => lower(v),
            EigenLower::Unbounded => "infinite".into(),
        };
        let _ = writeln!(out, "{mark} m                 {}", decimal_down(r.m, 9));
        let _ = writeln!(out, "  support margin    >= {}", lower(r.support_margin));
        let _ = writeln!(out, "  |supp u-|        <= {}", upper(r.dm_volume));
        let _ = writeln!(out, "  lambda1(supp u-) >= {eigen}");
        let _ = writeln!(out, "  C1               <= {}", upper(r.c1));
        let _ = writeln!(out, "  C2               >= {}", lower(r.c2));
        let _ = writeln!(out, "  result            {}", r.failure(nl.lambda).unwrap_or("passes"));
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "verdict: {}", cert.verdict);
    out
}
