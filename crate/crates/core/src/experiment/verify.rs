use std::fmt;
use std::time::Instant;

use serde::Serialize;

use super::config::{parse_p_range, ExperimentConfig, Method, Scenario};
use super::exact::{weight_profile, WeightProfile};
use super::model::PatternModel;
use super::montecarlo::{estimate, monte_carlo};
use super::row::{write_rows, OutputFormat};
use crate::error::{Error, Result};
use crate::exec::ExecPolicy;
use crate::longdistance::{
    combine_boundary_syndrome, commutator_prefactor, local_commutation_bit, observable_commutator,
    LongDistanceProtocol, Party,
};
use crate::pauli::{PauliString, Sign};
use crate::quantum::{
    apply_channel, fidelity, mutual_information, prepare_bell, von_neumann_entropy, DensityMatrix, StateVector,
};
use crate::repetition::{
    bipartite_coefficients, closed_form_bipartite_fidelity, closed_form_single_fidelity, make_channel,
    min_over_bloch_grid, min_over_product_grid, unencoded_min_fidelity, unencoded_readings,
    unencoded_single_min_fidelity, BipartiteKind, ChannelKind, ChannelModel, CoefficientRule, UnencodedKind,
};
use crate::stabilizer::{
    build_syndrome_table, compare_with_golden, parse_golden, ShortDistancePipeline, BELL_K1_GOLDEN_CSV,
};

/// Check identifiers accepted by [`VerifyOptions::only`], in run order.
pub const CHECK_IDS: [&str; 11] = [
    "table",
    "short",
    "single",
    "bipartite",
    "coefficients",
    "symmetry",
    "unencoded",
    "phaseflip",
    "longdistance",
    "entropy",
    "montecarlo",
];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub only: Option<Vec<String>>,
    /// Replacement for the built-in golden syndrome CSV.
    pub golden_csv: Option<String>,
    pub mc_samples: u64,
    pub seed: u64,
    pub policy: ExecPolicy,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { only: None, golden_csv: None, mc_samples: 100_000, seed: 0, policy: ExecPolicy::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    pub max_deviation: f64,
    pub details: Vec<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<13} max deviation {:.3e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.max_deviation
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Accumulates a check's verdict: every comparison updates the maximum
/// deviation and may fail the check with a note.
struct Tally {
    id: &'static str,
    passed: bool,
    max_deviation: f64,
    details: Vec<String>,
}

impl Tally {
    fn new(id: &'static str) -> Self {
        Self { id, passed: true, max_deviation: 0.0, details: Vec::new() }
    }

    fn close(&mut self, what: impl fmt::Display, got: f64, want: f64, tol: f64) {
        let dev = (got - want).abs();
        self.max_deviation = self.max_deviation.max(dev);
        if dev.is_nan() || dev > tol {
            self.passed = false;
            self.details.push(format!("{what}: got {got:.12}, expected {want:.12} (tol {tol:e})"));
        }
    }

    fn require(&mut self, ok: bool, what: impl fmt::Display) {
        if !ok {
            self.passed = false;
            self.details.push(format!("failed: {what}"));
        }
    }

    fn note(&mut self, what: impl fmt::Display) {
        self.details.push(what.to_string());
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            id: self.id.into(),
            passed: self.passed,
            max_deviation: self.max_deviation,
            details: self.details,
        }
    }
}

fn profile(scenario: Scenario, k: usize, channel: ChannelKind, policy: ExecPolicy) -> Result<WeightProfile> {
    weight_profile(&PatternModel::new(scenario, k, channel)?, policy)
}

fn grid21() -> Vec<f64> {
    parse_p_range("0:1:0.05").expect("static grid")
}

const PS: [f64; 4] = [0.05, 0.1, 0.2, 0.3];

#[allow(clippy::approx_constant)]
const UNENCODED_MINIMUM: f64 = 0.707107;

fn check_table(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("table");
    let start = Instant::now();
    let table = build_syndrome_table(1)?;
    let golden = parse_golden(opts.golden_csv.as_deref().unwrap_or(BELL_K1_GOLDEN_CSV).as_bytes())?;
    let report = compare_with_golden(&table, &golden);
    let elapsed = start.elapsed().as_secs_f64();
    t.max_deviation = report.mismatches.len() as f64;
    t.require(report.passed(), format!("{} of {} golden rows mismatch", report.mismatches.len(), report.rows_checked));
    t.details.extend(report.mismatches);
    t.require(elapsed < 1.0, format!("table build took {elapsed:.3} s"));
    t.note(format!(
        "{} classes over {} patterns; 4^(2k) would be {}",
        table.class_count(),
        table.pattern_count(),
        4usize.pow(2)
    ));
    Ok(t.finish())
}

fn check_short(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("short");
    let start = Instant::now();
    for k in 1..=2 {
        let pipe = ShortDistancePipeline::new(k)?;
        let n = pipe.layout().total_qubits();
        let fids = opts.policy.try_map_indexed(1 << n, |m| pipe.run_pattern(ChannelKind::BitFlip, m as u64))?;
        for (m, out) in fids.iter().enumerate() {
            t.close(format!("k={k} {}", PauliString::bit_flip(n, m as u64)), out.fidelity, 1.0, 1e-12);
        }
        t.note(format!("k={k}: {} patterns", fids.len()));
    }
    let elapsed = start.elapsed().as_secs_f64();
    t.require(elapsed < 10.0, format!("runtime {elapsed:.2} s"));
    Ok(t.finish())
}

fn check_single(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("single");
    for k in 1..=2 {
        let prof = profile(Scenario::QrcSingle, k, ChannelKind::BitFlip, opts.policy)?;
        for p in PS {
            let closed = closed_form_single_fidelity(k, p)?.fidelity;
            t.close(format!("k={k} p={p}"), prof.fidelity(p), closed, 1e-12);
        }
    }
    let spot = profile(Scenario::QrcSingle, 1, ChannelKind::BitFlip, opts.policy)?.fidelity(0.1);
    t.close("k=1 p=0.1 spot value", spot, 0.985900, 1e-6);
    Ok(t.finish())
}

fn check_bipartite(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("bipartite");
    let bell = profile(Scenario::QrcBipartiteBell, 1, ChannelKind::BitFlip, opts.policy)?;
    let coeffs = bell.as_integers();
    t.require(coeffs.as_deref() == Some(&[1, 6, 9, 0, 9, 6, 1][..]), format!("k=1 coefficients {coeffs:?}"));
    let closed = closed_form_bipartite_fidelity(1, 0.1, BipartiteKind::Bell)?.fidelity;
    t.close("bell closed form vs enumeration, p=0.1", closed, bell.fidelity(0.1), 1e-12);
    t.close("bell spot value, p=0.1", bell.fidelity(0.1), 0.972403, 1e-6);
    let product = profile(Scenario::QrcBipartiteProduct, 1, ChannelKind::BitFlip, opts.policy)?;
    let closed = closed_form_bipartite_fidelity(1, 0.1, BipartiteKind::Product)?.fidelity;
    t.close("product closed form vs enumeration, p=0.1", closed, product.fidelity(0.1), 1e-12);
    t.close("product spot value, p=0.1", product.fidelity(0.1), 0.972000, 1e-6);
    Ok(t.finish())
}

fn check_coefficients(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("coefficients");
    for k in 1..=2 {
        for (scenario, kind) in
            [(Scenario::QrcBipartiteBell, BipartiteKind::Bell), (Scenario::QrcBipartiteProduct, BipartiteKind::Product)]
        {
            let enumerated = profile(scenario, k, ChannelKind::BitFlip, opts.policy)?.as_integers();
            let Some(enumerated) = enumerated else {
                t.require(false, format!("k={k} {scenario}: non-integer profile"));
                continue;
            };
            let per_side = bipartite_coefficients(k, kind, CoefficientRule::PerSide)?;
            t.require(
                enumerated == per_side,
                format!("k={k} {scenario}: per-side {per_side:?} vs enumerated {enumerated:?}"),
            );
            let literal = bipartite_coefficients(k, kind, CoefficientRule::Literal)?;
            let diffs: Vec<String> = literal
                .iter()
                .zip(&enumerated)
                .enumerate()
                .filter(|(_, (l, e))| l != e)
                .map(|(i, (l, e))| format!("f({i}) literal {l} vs enumerated {e}"))
                .collect();
            for (l, e) in literal.iter().zip(&enumerated) {
                t.max_deviation = t.max_deviation.max((*l as f64 - *e as f64).abs());
            }
            if diffs.is_empty() {
                t.note(format!("k={k} {kind:?}: literal formula matches enumeration {enumerated:?}"));
            } else {
                let p = 0.1;
                let lit_f = crate::repetition::weight_polynomial(&literal, p).sqrt();
                let enum_f = crate::repetition::weight_polynomial(&enumerated, p).sqrt();
                t.note(format!(
                    "k={k} {kind:?}: literal formula overcounts ({}); at p=0.1 literal gives {lit_f:.6} (squared sum {:.6}), enumeration {enum_f:.6}",
                    diffs.join(", "),
                    lit_f * lit_f
                ));
            }
        }
    }
    // literal-formula deviations are reported, not judged
    Ok(t.finish())
}

fn check_symmetry(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("symmetry");
    let grid = grid21();
    for k in 1..=2 {
        let bell = profile(Scenario::QrcBipartiteBell, k, ChannelKind::BitFlip, opts.policy)?;
        let product = profile(Scenario::QrcBipartiteProduct, k, ChannelKind::BitFlip, opts.policy)?;
        let mut product_asym: f64 = 0.0;
        for &p in &grid {
            t.close(format!("k={k} bell F({p}) vs F({})", 1.0 - p), bell.fidelity(p), bell.fidelity(1.0 - p), 1e-12);
            t.require(bell.fidelity(p) >= product.fidelity(p) - 1e-15, format!("k={k} p={p}: bell < product"));
            product_asym = product_asym.max((product.fidelity(p) - product.fidelity(1.0 - p)).abs());
        }
        t.require(product_asym > 1e-6, format!("k={k}: product curve unexpectedly symmetric"));
        t.note(format!("k={k}: product curve max |F(p) - F(1-p)| = {product_asym:.6}"));
    }
    for scenario in [Scenario::QrcSingle, Scenario::QrcBipartiteBell] {
        let f1 = profile(scenario, 1, ChannelKind::BitFlip, opts.policy)?;
        let f2 = profile(scenario, 2, ChannelKind::BitFlip, opts.policy)?;
        for &p in grid.iter().filter(|&&p| p < 0.5) {
            t.require(f2.fidelity(p) >= f1.fidelity(p) - 1e-15, format!("{scenario} p={p}: F(k=2) < F(k=1)"));
        }
    }
    Ok(t.finish())
}

/// `Σ_m w_m |⟨ψ|E_m|ψ⟩|²` for independent bit flips on every qubit of `psi`.
fn unencoded_fidelity(psi: &StateVector, p: f64) -> Result<f64> {
    let n = psi.num_qubits();
    let mut total = 0.0;
    for m in 0..1u64 << n {
        let w = crate::repetition::flip_weight(p, n, m.count_ones() as usize);
        total += w * psi.inner(&PauliString::bit_flip(n, m).apply(psi)?)?.norm_sqr();
    }
    Ok(total.sqrt())
}

fn check_unencoded(_opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("unencoded");
    let bell = prepare_bell(false, false);
    let rho = DensityMatrix::from_pure(&bell)?;
    let grid = grid21();
    let mut min = (f64::INFINITY, 0.0);
    for &p in &grid {
        let formula = unencoded_min_fidelity(p, UnencodedKind::Bell)?;
        let channel = make_channel(&ChannelModel::new(ChannelKind::BitFlip, p, 2)?)?;
        let direct = fidelity(&bell, &apply_channel(&rho, &channel, &[0, 1])?)?;
        t.close(format!("bell p={p} formula vs Kraus"), formula, direct, 1e-12);
        if formula < min.0 {
            min = (formula, p);
        }
        if p > 0.0 && p < 0.5 {
            let single = closed_form_single_fidelity(1, p)?.fidelity;
            let single_raw = unencoded_single_min_fidelity(p)?;
            t.require(single > single_raw, format!("p={p}: encoded single {single} <= unencoded {single_raw}"));
            let pair = closed_form_bipartite_fidelity(1, p, BipartiteKind::Bell)?.fidelity;
            t.require(pair > formula, format!("p={p}: encoded bell {pair} <= unencoded {formula}"));
        }
    }
    t.close("curve minimum value", min.0, UNENCODED_MINIMUM, 1e-6);
    t.close("curve minimum location", min.1, 0.5, 1e-12);
    for p in [0.1, 0.3] {
        let (pair_min, _) = min_over_product_grid(16, |s| unencoded_fidelity(s, p))?;
        let (single_min, _) = min_over_bloch_grid(32, |s| unencoded_fidelity(s, p))?;
        let r = unencoded_readings(p)?;
        t.close(format!("p={p} arbitrary pair minimum"), pair_min, r.bipartite_oracle, 1e-12);
        t.close(format!("p={p} arbitrary single minimum"), single_min, r.single_oracle, 1e-12);
        t.note(format!(
            "p={p}: grid minimum pair {pair_min:.6}, single {single_min:.6}; printed readings p = {:.6}, sqrt(p) = {:.6}",
            r.linear_reading, r.sqrt_reading
        ));
    }
    Ok(t.finish())
}

fn check_phaseflip(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("phaseflip");
    let grid = grid21();
    for scenario in Scenario::ALL {
        let ks: &[usize] = if scenario.uses_k() { &[1, 2] } else { &[1] };
        for &k in ks {
            let bf = profile(scenario, k, ChannelKind::BitFlip, opts.policy)?;
            let pf = profile(scenario, k, ChannelKind::PhaseFlip, opts.policy)?;
            for &p in &grid {
                t.close(format!("{scenario} k={k} p={p}"), pf.fidelity(p), bf.fidelity(p), 1e-12);
            }
        }
    }
    Ok(t.finish())
}

fn check_longdistance(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("longdistance");
    for k in 1..=2 {
        let protocol = LongDistanceProtocol::new(k)?;
        let n = protocol.layout().total_qubits();
        let runs =
            opts.policy.try_map_indexed(1 << n, |m| protocol.run_pattern(ChannelKind::BitFlip, m as u64, true, 0))?;
        for (m, out) in runs.iter().enumerate() {
            t.close(format!("k={k} pattern {m:b} with channel"), out.fidelity, 1.0, 1e-12);
            t.require(out.transcript.len() == 2, format!("k={k} pattern {m:b}: {} messages", out.transcript.len()));
        }
        let split = protocol.split();
        let alice = split.view(protocol.layout(), Party::Alice)?;
        let bob = split.view(protocol.layout(), Party::Bob)?;
        for m in 0..1u64 << n {
            let e = PauliString::bit_flip(n, m);
            let m1 = local_commutation_bit(&alice, &e, &alice.boundary_half)?;
            let m2 = local_commutation_bit(&bob, &e, &bob.boundary_half)?;
            t.require(
                combine_boundary_syndrome(m1, m2) == e.commutation(&split.boundary)?,
                format!("k={k} {e}: combined boundary bit disagrees"),
            );
            if k == 1 {
                let c = observable_commutator(&e, split)?;
                t.require(c.coefficient == 0 && c.prefactor == 0, format!("{e}: commutator {c:?}"));
            }
        }
        let nocc = profile(Scenario::LongdistanceNocc, k, ChannelKind::BitFlip, opts.policy)?;
        for &p in &grid21() {
            let closed = closed_form_bipartite_fidelity(k, p, BipartiteKind::Bell)?.fidelity;
            t.close(format!("k={k} p={p} without channel vs closed form"), nocc.fidelity(p), closed, 1e-12);
        }
    }
    for m1 in [Sign::Plus, Sign::Minus] {
        for m2 in [Sign::Plus, Sign::Minus] {
            t.require(commutator_prefactor(m1, m2) == 0, format!("prefactor nonzero at ({m1}, {m2})"));
        }
    }
    Ok(t.finish())
}

fn check_entropy(_opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("entropy");
    let pure = DensityMatrix::from_pure(&StateVector::bloch(0.7, 1.3))?;
    t.close("S(pure)", von_neumann_entropy(&pure), 0.0, 1e-10);
    t.close("S(I/2)", von_neumann_entropy(&DensityMatrix::maximally_mixed(1)?), 1.0, 1e-10);
    let bell = mutual_information(&DensityMatrix::from_pure(&prepare_bell(false, false))?, &[0], &[1])?;
    t.close("bell S_A", bell.s_a, 1.0, 1e-10);
    t.close("bell S_AB", bell.s_ab, 0.0, 1e-10);
    t.close("bell S_A|B", bell.s_a_given_b, -1.0, 1e-10);
    t.close("bell I(A,B)", bell.mutual_information, 2.0, 1e-10);
    let product = StateVector::bloch(0.4, 0.2).tensor(&StateVector::bloch(2.1, -0.5))?;
    let prod = mutual_information(&DensityMatrix::from_pure(&product)?, &[0], &[1])?;
    t.close("product I(A,B)", prod.mutual_information, 0.0, 1e-10);
    t.close("product S_A|B", prod.s_a_given_b, 0.0, 1e-10);
    Ok(t.finish())
}

fn check_montecarlo(opts: &VerifyOptions) -> Result<CheckResult> {
    let mut t = Tally::new("montecarlo");
    for scenario in Scenario::ALL {
        let model = PatternModel::new(scenario, 1, ChannelKind::BitFlip)?;
        let exact = weight_profile(&model, opts.policy)?;
        for p in [0.1, 0.3] {
            let est = estimate(&model, p, opts.mc_samples, opts.seed, opts.policy)?;
            let want = exact.fidelity(p);
            let dev = (est.fidelity - want).abs();
            t.max_deviation = t.max_deviation.max(dev);
            let tol = 4.0 * est.stderr + 1e-12;
            t.require(
                dev <= tol,
                format!("{scenario} p={p}: estimate {:.6} vs exact {want:.6}, 4 stderr = {tol:.2e}", est.fidelity),
            );
        }
        let zero = estimate(&model, 0.0, 1000, opts.seed, opts.policy)?;
        t.close(format!("{scenario} p=0 estimate"), zero.fidelity, 1.0, 1e-12);
        t.close(format!("{scenario} p=0 stderr"), zero.stderr, 0.0, 1e-12);
    }
    let config = ExperimentConfig {
        scenarios: Scenario::ALL.to_vec(),
        ks: vec![1],
        ps: vec![0.1],
        method: Method::MonteCarlo,
        samples: opts.mc_samples.min(20_000),
        seed: opts.seed,
        record_wall_time: false,
        policy: opts.policy,
        ..Default::default()
    };
    let render = |policy: ExecPolicy| -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        write_rows(&monte_carlo(&ExperimentConfig { policy, ..config.clone() })?, OutputFormat::Csv, &mut buf)?;
        Ok(buf)
    };
    let first = render(opts.policy)?;
    t.require(first == render(opts.policy)?, "repeated run with the same seed differs");
    t.require(first == render(ExecPolicy::Sequential)?, "sequential and parallel runs differ");
    Ok(t.finish())
}

type CheckFn = fn(&VerifyOptions) -> Result<CheckResult>;

const CHECKS: [(&str, CheckFn); 11] = [
    ("table", check_table),
    ("short", check_short),
    ("single", check_single),
    ("bipartite", check_bipartite),
    ("coefficients", check_coefficients),
    ("symmetry", check_symmetry),
    ("unencoded", check_unencoded),
    ("phaseflip", check_phaseflip),
    ("longdistance", check_longdistance),
    ("entropy", check_entropy),
    ("montecarlo", check_montecarlo),
];

/// Runs the selected checks. An internal error inside a check fails that
/// check; an unknown id in `only` is a configuration error.
pub fn verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    if let Some(only) = &opts.only {
        if let Some(bad) = only.iter().find(|id| !CHECK_IDS.contains(&id.as_str())) {
            return Err(Error::Config(format!("unknown check `{bad}` (expected one of {})", CHECK_IDS.join(", "))));
        }
    }
    let selected = |id: &str| opts.only.as_ref().is_none_or(|o| o.iter().any(|x| x == id));
    let checks = CHECKS
        .iter()
        .filter(|(id, _)| selected(id))
        .map(|(id, f)| {
            f(opts).unwrap_or_else(|e| CheckResult {
                id: (*id).into(),
                passed: false,
                max_deviation: f64::NAN,
                details: vec![format!("error: {e}")],
            })
        })
        .collect();
    Ok(VerifyReport { checks })
}
