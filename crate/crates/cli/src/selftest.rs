//! Golden checks on the running example and the domination example.

use std::collections::BTreeSet;
use std::sync::Arc;

use ovass_core::cycles::select_cycle;
use ovass_core::fixpoint::{delta_of_chain, staged_step, Strategy};
use ovass_core::fixtures::{domination_example, running_example};
use ovass_core::oracle::{oracle_cover, oracle_unbounded};
use ovass_core::pareto::{build_families, pareto_filter};
use ovass_core::{
    blocked_omega, blocked_set, compute_conf_infinity, compute_u0, decide_coverability, decide_unboundedness, Answer,
    Caps, Configuration, CycleAnalysis, FixpointParams, ParetoElem, Path, Vass,
};

use crate::report::SelftestCheck;

type Outcome = Result<(bool, String), ovass_core::Error>;
type Check = (&'static str, Box<dyn Fn() -> Outcome>);

fn staged_trace(v: &Vass) -> Outcome {
    let p = FixpointParams::adaptive(v.num_states()).with_strategy(Strategy::Staged);
    let fix = compute_conf_infinity(v, &p)?;
    let got: Vec<(Option<usize>, String, Vec<i64>)> = fix
        .trace
        .iter()
        .skip(1)
        .flat_map(|r| {
            r.added
                .iter()
                .map(move |(q, xs)| (r.distance, v.name(*q).to_string(), xs.clone()))
        })
        .collect();
    let row = |d: usize, q: &str, xs: Vec<i64>| (Some(d), q.to_string(), xs);
    let expected = vec![
        row(4, "s4", vec![54, 60, 63, 69, 93, 96]),
        row(1, "s6", vec![45, 51, 54, 60, 69, 78, 84, 87]),
        row(1, "s5", vec![2, 5, 8, 14, 17, 23, 26, 32, 35]),
        row(1, "s4", vec![57, 66, 75, 78, 84, 87]),
        row(1, "s6", vec![48, 57, 66, 75]),
        row(2, "s1", (12..=54).step_by(6).collect()),
        row(1, "s2", (0..=36).step_by(6).collect()),
    ];
    Ok((fix.complete && got == expected, format!("{} growing rounds", got.len())))
}

fn checks() -> Vec<Check> {
    vec![
        (
            "blocked set of s4,s5,s6",
            Box::new(|| {
                let v = running_example();
                let b = blocked_set(&v, &Path::from_names(&v, &["s4", "s5", "s6"])?)?;
                let ok = b.low_all == 52 && b.extras == BTreeSet::from([90, 93, 96]);
                Ok((ok, format!("[0,{}) + {:?}", b.low_all, b.extras)))
            }),
        ),
        (
            "blocked set of the iterated cycle at s4",
            Box::new(|| {
                let v = running_example();
                let sel = select_cycle(&v, v.state_or_err("s4")?)?.expect("s4 has a positive cycle");
                let b = blocked_omega(&v, &sel)?;
                let want: BTreeSet<i64> = (52..=96).filter(|z| [0, 3, 6].contains(&(z % 9))).collect();
                Ok((
                    b.low_all == 52 && b.extras == want,
                    format!("[0,{}) + {} values", b.low_all, b.extras.len()),
                ))
            }),
        ),
        (
            "cycle data at s1 and s4",
            Box::new(|| {
                let v = running_example();
                let a = CycleAnalysis::new(&v)?;
                let s1 = a.get(v.state_or_err("s1")?).expect("s1 in Q+");
                let s4 = a.get(v.state_or_err("s4")?).expect("s4 in Q+");
                let conf_plus = (0..40).all(|z| a.conf_plus_contains(Configuration::new(s1.state(), z)) == (z >= 12));
                let ok = s1.period() == 6 && s1.pmin() == -12 && s4.period() == 9 && conf_plus;
                Ok((
                    ok,
                    format!("W(s1)={} pmin(s1)={} W(s4)={}", s1.period(), s1.pmin(), s4.period()),
                ))
            }),
        ),
        (
            "states with a positive cycle",
            Box::new(|| {
                let v = running_example();
                let a = CycleAnalysis::new(&v)?;
                let got: Vec<&str> = a.q_plus().map(|q| v.name(q)).collect();
                let want = ["s1", "s2", "s4", "s5", "s6", "s10", "s11", "s12", "s13"];
                Ok((got == want, got.join(",")))
            }),
        ),
        (
            "minimal-distance fixpoint trace",
            Box::new(|| staged_trace(&running_example())),
        ),
        (
            "defect of the chain 54..81 after one round",
            Box::new(|| {
                let v = running_example();
                let u0 = compute_u0(Arc::new(CycleAnalysis::new(&v)?));
                let (u1, _) = staged_step(&v, &u0, &FixpointParams::adaptive(v.num_states()))?;
                let q = v.state_or_err("s4")?;
                let d = delta_of_chain(&u1, q, 0);
                Ok((d == vec![72, 75, 78, 81], format!("{d:?}")))
            }),
        ),
        (
            "saturating and minimal-distance fixpoints agree",
            Box::new(|| {
                let v = running_example();
                let n = v.num_states();
                let a = compute_conf_infinity(&v, &FixpointParams::adaptive(n))?;
                let b = compute_conf_infinity(&v, &FixpointParams::adaptive(n).with_strategy(Strategy::Staged))?;
                Ok((a.u == b.u, format!("{} bounded elements", a.u.bounded_size())))
            }),
        ),
        (
            "decisions agree with the oracle",
            Box::new(|| {
                let v = running_example();
                let (s0, s13) = (v.state_or_err("s0")?, v.state_or_err("s13")?);
                let caps = Caps::default_for(&v);
                let unb = decide_unboundedness(&v, s0, None)?.answer;
                let cov = decide_coverability(&v, s0, s13, None)?.answer;
                let o_unb = oracle_unbounded(&v, s0, caps)?.answer.definite();
                let o_cov = oracle_cover(&v, s0, s13, caps)?.answer.definite();
                let ok = unb == Answer::Yes && cov == Answer::Yes && o_unb == Some(true) && o_cov == Some(true);
                Ok((
                    ok,
                    format!("unboundedness {} coverability {}", unb.token(), cov.token()),
                ))
            }),
        ),
        (
            "Pareto filter on the domination example",
            Box::new(|| {
                let v = domination_example();
                let input = [["s0", "s1", "s4"], ["s0", "s2", "s4"], ["s0", "s3", "s4"]]
                    .iter()
                    .map(|p| ParetoElem::from_path(&v, Path::from_names(&v, p)?))
                    .collect::<Result<Vec<_>, _>>()?;
                let out = pareto_filter(&v, &input)?;
                let fam = build_families(&v)?;
                let cell = fam.cell(v.state_or_err("s0")?, v.state_or_err("s4")?);
                let got: Vec<(i64, i64)> = out.iter().map(|e| (e.summary.pmin, e.summary.smax)).collect();
                let fam_got: Vec<(i64, i64)> = cell.iter().map(|e| (e.summary.pmin, e.summary.smax)).collect();
                let want = vec![(-2, 3), (-4, 6)];
                Ok((got == want && fam_got == want, format!("{got:?}")))
            }),
        ),
    ]
}

pub fn run() -> Vec<SelftestCheck> {
    checks()
        .into_iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            SelftestCheck {
                name: name.to_string(),
                passed,
                detail,
            }
        })
        .collect()
}
