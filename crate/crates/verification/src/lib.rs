//! Acceptance criteria for the library and the CLI. Every check is exact
//! (zero tolerance); the only pinned numeric limits are the wall-clock budgets
//! of criteria 1 and 3.

use std::fs;
use std::time::{Duration, Instant};

use g2forms::classify::{self, TypeReport, Verdict, STABLE_STABILIZER_DIM};
use g2forms::cmat::CMat3;
use g2forms::exterior::{canonical_split_g2, index_tuples, KForm, LinearMap};
use g2forms::liealg::{self, LieAlgebra};
use g2forms::linalg::{self, Matrix};
use g2forms::pipeline;
use g2forms::scalar::{ComplexScalar, RealScalar};
use g2forms::x7::{self, SU3Element, SpherePoint};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BRACKET_BUDGET: Duration = Duration::from_secs(1);
const PIPELINE_BUDGET: Duration = Duration::from_secs(60);
const PIPELINE_SAMPLES: usize = 100;
const PIPELINE_SEED: u64 = 0;
const TRANSLATE_POINTS: usize = 25;
const TRANSLATE_SEED: u64 = 0;
const PULLBACKS: usize = 50;
const PULLBACK_SEED: u64 = 2;
const SPHERE_POINTS: usize = 20;
const SPHERE_SEED: u64 = 3;
const DETERMINISM_SAMPLES: &str = "100";
const DETERMINISM_SEED: &str = "7";

pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

pub type Check = fn() -> Outcome;

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

pub fn criterion_1_bracket_table() -> Outcome {
    let start = Instant::now();
    let b = liealg::su3_basis();
    let (d1, d2, d3, f1, f2, f3, f4) = (&b[0], &b[1], &b[2], &b[3], &b[4], &b[5], &b[6]);
    let r2 = RealScalar::sqrt2();
    let h = RealScalar::inv_sqrt2();
    let i = ComplexScalar::i();
    let e = CMat3::unit;
    let diag = |a: usize, c: usize| (&e(a, a) - &e(c, c)).scale(&i);
    let cases: Vec<(&str, &CMat3, &CMat3, CMat3)> = vec![
        ("[d2,d3] = sqrt2 d1", d2, d3, d1.scale_real(&r2)),
        ("[d1,d2] = sqrt2 d3", d1, d2, d3.scale_real(&r2)),
        ("[d1,d3] = -sqrt2 d2", d1, d3, d2.scale_real(&-r2.clone())),
        ("[d3,d2] = -sqrt2 d1", d3, d2, d1.scale_real(&-r2.clone())),
        ("[d2,d1] = -sqrt2 d3", d2, d1, d3.scale_real(&-r2.clone())),
        ("[d3,d1] = sqrt2 d2", d3, d1, d2.scale_real(&r2)),
        ("[f1,f2] = i(e11 - e22)", f1, f2, diag(1, 2)),
        ("[f1,f3] = -d2/sqrt2", f1, f3, d2.scale_real(&-h.clone())),
        ("[f1,f4] = -d3/sqrt2", f1, f4, d3.scale_real(&-h.clone())),
        ("[f2,f3] = d3/sqrt2", f2, f3, d3.scale_real(&h)),
        ("[f2,f4] = -d2/sqrt2", f2, f4, d2.scale_real(&-h.clone())),
        ("[f3,f4] = i(e11 - e33)", f3, f4, diag(1, 3)),
    ];
    // The same identities through the structure constants of the algebra.
    let g = x7::su3();
    let mut failed = Vec::new();
    for (name, x, y, rhs) in &cases {
        let by_matrix = x.commutator(y) == *rhs;
        let cx = liealg::coordinates_in(&b, x).unwrap();
        let cy = liealg::coordinates_in(&b, y).unwrap();
        let by_table = liealg::combine(&b, &g.bracket(&cx, &cy).unwrap()) == *rhs;
        if !(by_matrix && by_table) {
            failed.push(*name);
        }
    }
    let elapsed = start.elapsed();
    let ok = failed.is_empty() && elapsed < BRACKET_BUDGET;
    outcome(
        ok,
        format!(
            "{}/{} identities exact, {:.3} s (budget {} s){}",
            cases.len() - failed.len(),
            cases.len(),
            elapsed.as_secs_f64(),
            BRACKET_BUDGET.as_secs(),
            if failed.is_empty() { String::new() } else { format!("; failed: {failed:?}") }
        ),
    )
}

pub fn criterion_2_identity_golden() -> Outcome {
    let got = x7::restrict_cartan(&SU3Element::identity()).unwrap();
    let expanded = x7::identity_reference_form();
    let golden = KForm::from_json(x7::IDENTITY_GOLDEN).unwrap();
    let ok = got == expanded && got == golden;
    outcome(
        ok,
        format!(
            "restriction at e has {} terms; equals expansion: {}, equals golden file: {}",
            got.len(),
            got == expanded,
            got == golden
        ),
    )
}

pub fn criterion_3_pointwise() -> Outcome {
    let start = Instant::now();
    let report = match pipeline::run(PIPELINE_SAMPLES, PIPELINE_SEED) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("pipeline error: {e}")),
    };
    let elapsed = start.elapsed();
    let bad: Vec<String> = report
        .records
        .iter()
        .filter(|r| {
            !(r.in_x7
                && r.tangent_rank == 7
                && r.report.verdict == Verdict::SplitStable
                && r.report.signature == [3, 4]
                && r.report.stabilizer_dim == STABLE_STABILIZER_DIM)
        })
        .map(|r| {
            format!(
                "#{} p=({}, {}) {:?} {:?} stab {}",
                r.index, r.params.p[0], r.params.p[1], r.report.verdict, r.report.signature, r.report.stabilizer_dim
            )
        })
        .collect();
    let ok = bad.is_empty() && elapsed < PIPELINE_BUDGET;
    outcome(
        ok,
        format!(
            "{}/{} samples (seed {}) in X7, rank 7, SplitStable {{3,4}}, stabilizer 14; {:.2} s (budget {} s){}",
            report.records.len() - bad.len(),
            report.records.len(),
            PIPELINE_SEED,
            elapsed.as_secs_f64(),
            PIPELINE_BUDGET.as_secs(),
            if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }
        ),
    )
}

pub fn criterion_4_translate() -> Outcome {
    let points = pipeline::circle_points(TRANSLATE_POINTS, TRANSLATE_SEED);
    let equal = points.iter().filter(|p| x7::translate_check(p)).count();
    outcome(
        equal == points.len(),
        format!("translated tangent space equals T_e X7 at {equal}/{} seeded rotations", points.len()),
    )
}

pub fn criterion_5_multisymplectic() -> Outcome {
    let su3_rank = linalg::rank(&x7::su3_cartan_form().interior_matrix().unwrap());
    let abelian = LieAlgebra::abelian(3);
    let abelian_rank =
        linalg::rank(&abelian.cartan_3form(&abelian.default_metric()).unwrap().interior_matrix().unwrap());
    let su2 = liealg::build_su2();
    let family = [
        ("su2", su2.clone()),
        ("su3", liealg::build_su3()),
        ("abelian", abelian),
        ("su2+line", su2.direct_sum(&LieAlgebra::abelian(1))),
    ];
    let agree: Vec<bool> = family
        .iter()
        .map(|(_, g)| g.cartan_3form(&g.killing_form()).unwrap().is_multisymplectic() == g.is_semisimple())
        .collect();
    let ok = su3_rank == 8 && abelian_rank == 0 && agree.iter().all(|&a| a);
    outcome(
        ok,
        format!(
            "su3 interior rank {su3_rank} (want 8), abelian rank {abelian_rank} (want 0), agreement on {}/{} algebras",
            agree.iter().filter(|&&a| a).count(),
            family.len()
        ),
    )
}

pub fn criterion_6_closed() -> Outcome {
    let d = x7::su3().ce_differential(x7::su3_cartan_form()).unwrap();
    let tuples = index_tuples(8, 4);
    let vanishing = tuples.iter().filter(|t| d.coeff(&t.one_based()).is_zero()).count();
    outcome(vanishing == 70 && d.is_zero(), format!("d(phi) vanishes on {vanishing}/{} basis 4-tuples", tuples.len()))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> LinearMap {
    let mut l: Matrix = linalg::identity(n);
    let mut u: Matrix = linalg::identity(n);
    let mut d = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..i {
            l[i][j] = RealScalar::from_int(rng.gen_range(-2..=2));
            u[j][i] = RealScalar::from_int(rng.gen_range(-2..=2));
        }
        let v: i64 = rng.gen_range(1..=3);
        d.push(RealScalar::from_int(if rng.gen() { v } else { -v }));
    }
    LinearMap::new(l).unwrap().compose(&LinearMap::diagonal(&d)).compose(&LinearMap::new(u).unwrap())
}

fn cross_check(w: &KForm) -> Result<TypeReport, String> {
    let r = classify::classify(w).map_err(|e| e.to_string())?;
    let stable = r.verdict != Verdict::NotStable;
    if stable != (r.stabilizer_dim == STABLE_STABILIZER_DIM) {
        return Err(format!("verdict {:?} with stabilizer dimension {}", r.verdict, r.stabilizer_dim));
    }
    Ok(r)
}

pub fn criterion_7_classifier() -> Outcome {
    let split = canonical_split_g2();
    let reference = match cross_check(&split) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("canonical split form: {e}")),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(PULLBACK_SEED);
    let mut problems = Vec::new();
    let mut corpus = vec![
        ("e123".to_string(), KForm::monomial(7, &[1, 2, 3]).unwrap()),
        ("zero".to_string(), KForm::zero(7, 3).unwrap()),
        ("restriction at e".to_string(), x7::identity_reference_form()),
    ];
    for k in 0..PULLBACKS {
        let g = random_invertible(&mut rng, 7);
        corpus.push((format!("pullback {k}"), split.pullback(&g).unwrap()));
    }
    let scalings = [
        RealScalar::from_int(-1),
        RealScalar::from_int(2),
        RealScalar::frac(-3, 7),
        RealScalar::sqrt2(),
        RealScalar::from_int(1) - RealScalar::sqrt2(),
        RealScalar::frac(5, 3) + RealScalar::from_int(2) * RealScalar::sqrt2(),
    ];
    for c in &scalings {
        corpus.push((format!("scaled by {c}"), split.scale(c)));
    }
    let expectations = |name: &str| -> Option<Verdict> {
        match name {
            "e123" | "zero" => Some(Verdict::NotStable),
            "restriction at e" => Some(Verdict::SplitStable),
            _ => None,
        }
    };
    for (name, w) in &corpus {
        match cross_check(w) {
            Err(e) => problems.push(format!("{name}: {e}")),
            Ok(r) => match expectations(name) {
                Some(v) if r.verdict != v => problems.push(format!("{name}: {:?}", r.verdict)),
                None if r != reference => problems.push(format!("{name}: {r:?}")),
                _ => {}
            },
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{} pullbacks and {} scalings of the canonical split form invariant, cross-check consistent on {} forms{}",
            PULLBACKS,
            scalings.len(),
            corpus.len() + 1,
            if problems.is_empty() { String::new() } else { format!("; problems: {problems:?}") }
        ),
    )
}

pub fn criterion_8_factor_point() -> Outcome {
    let params = pipeline::sample_params(SPHERE_POINTS, SPHERE_SEED);
    let mut good = 0;
    for sp in &params {
        let col = x7::sample_point(&sp.q1, &sp.p, &sp.q2).projection();
        let v = SpherePoint::new(col[0].re.rational_part().clone(), col[1].clone(), col[2].clone()).unwrap();
        if let Ok((q, p)) = x7::factor_point(&v) {
            if x7::embed_su2(&q).mul(&x7::so2_1(&p)).projection() == v.as_column() {
                good += 1;
            }
        }
    }
    outcome(
        good == params.len(),
        format!("Pi(g . alpha) = v exactly for {good}/{} rational points of S4", params.len()),
    )
}

pub fn criterion_9_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("g2forms-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let args = ["g2forms", "verify-x7", "--samples", DETERMINISM_SAMPLES, "--seed", DETERMINISM_SEED, "-o"];
        let mut argv: Vec<std::ffi::OsString> = args.iter().map(Into::into).collect();
        argv.push(path.clone().into());
        g2forms_cli::run(argv);
        fs::read(path).unwrap_or_default()
    };
    let (a, b) = (run("a.json"), run("b.json"));
    let _ = fs::remove_dir_all(&dir);
    outcome(
        !a.is_empty() && a == b,
        format!(
            "verify-x7 --samples {DETERMINISM_SAMPLES} --seed {DETERMINISM_SEED}: two reports of {} bytes, identical: {}",
            a.len(),
            a == b
        ),
    )
}

/// All criteria in order, with their display names.
pub fn criteria() -> [(&'static str, Check); 9] {
    [
        ("1 bracket table", criterion_1_bracket_table),
        ("2 restriction at the identity", criterion_2_identity_golden),
        ("3 split-stable at sampled points", criterion_3_pointwise),
        ("4 translated tangent spaces", criterion_4_translate),
        ("5 multisymplecticity", criterion_5_multisymplectic),
        ("6 closedness", criterion_6_closed),
        ("7 classifier soundness", criterion_7_classifier),
        ("8 sphere factorization", criterion_8_factor_point),
        ("9 determinism", criterion_9_determinism),
    ]
}
