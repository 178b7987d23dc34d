use dsplogic::{
    agreement_report, cond_prob_bounds, lottery, nonpartition_witness, odds_swamp, prob_bounds,
    ProbAssignment,
};
use serde_json::{json, Value};

use crate::report::{assignment, assignment_rows, flag, masses, num, show, table, Report};
use crate::scenario::{self, *};
use crate::CliError;

/// Runs a scenario and returns it in normalized form alongside the report.
pub fn execute(s: &Scenario) -> Result<(Scenario, Report), CliError> {
    match s {
        Scenario::Combine(c) => combine(c),
        Scenario::Bounds(b) => bounds(b).map(|r| (s.clone(), r)),
        Scenario::Agree(a) => agree(a).map(|r| (s.clone(), r)),
        Scenario::Lottery(l) => run_lottery(l),
        Scenario::Odds(o) => odds(o),
        Scenario::Nonpartition(_) => nonpartition().map(|r| (s.clone(), r)),
    }
}

fn combine(s: &CombineScenario) -> Result<(Scenario, Report), CliError> {
    let frame = scenario::frame(&s.frame)?;
    let m1 = mass(&frame, &s.m1)?;
    let m2 = mass(&frame, &s.m2)?;
    let r = m1.combine(&m2)?;
    let m3 = &r.combined;

    let mut rows = Vec::new();
    let mut query_values = Vec::new();
    for (set, v) in m3.focal_sets() {
        rows.push(vec![
            format!("{set}"),
            show(v),
            show(&m3.belief(&set)?),
            show(&m3.plausibility(&set)?),
        ]);
    }
    let mut query_rows = Vec::new();
    for q in &s.queries {
        let set = subset(&frame, q)?;
        let (bel, pls) = (m3.belief(&set)?, m3.plausibility(&set)?);
        query_rows.push(vec![format!("{set}"), show(&bel), show(&pls)]);
        query_values.push(json!({ "set": key_of(&set), "bel": num(&bel), "pls": num(&pls) }));
    }

    let mut text = format!("conflict K = {}\n\n", show(&r.conflict));
    text += &table(&["focal set", "mass", "bel", "pls"], &rows);
    if !query_rows.is_empty() {
        text += "\n";
        text += &table(&["query", "bel", "pls"], &query_rows);
    }
    let normalized = Scenario::Combine(CombineScenario {
        version: VERSION,
        frame: frame.labels().to_vec(),
        m1: mass_spec(&m1),
        m2: mass_spec(&m2),
        queries: s
            .queries
            .iter()
            .map(|q| {
                subset(&frame, q).map(|set| set.labels().iter().map(|l| l.to_string()).collect())
            })
            .collect::<Result<_, _>>()?,
    });
    let result = json!({
        "conflict": num(&r.conflict),
        "combined": masses(m3),
        "queries": query_values,
    });
    Ok((
        normalized,
        Report {
            result,
            text,
            ok: true,
        },
    ))
}

fn witness_value(
    frame: &dsplogic::Frame,
    x: &[dsplogic::Rational],
) -> Result<(Value, Vec<Vec<String>>), CliError> {
    let p = ProbAssignment::new(frame, x.to_vec())?;
    Ok((assignment(&p), assignment_rows(&p)))
}

fn bounds(s: &BoundsScenario) -> Result<Report, CliError> {
    let frame = scenario::frame(&s.frame)?;
    let system = constraint_system(&frame, &s.constraints)?;
    let a = event(&frame, &s.query.event)?;
    match &s.query.given {
        None => {
            let interval = prob_bounds(&system, &a)?;
            let text = table(
                &["query", "lo", "hi"],
                &[vec![
                    "P(A)".into(),
                    show(interval.lo()),
                    show(interval.hi()),
                ]],
            );
            let result = json!({ "lo": num(interval.lo()), "hi": num(interval.hi()) });
            Ok(Report {
                result,
                text,
                ok: true,
            })
        }
        Some(given) => {
            let b = event(&frame, given)?;
            let r = cond_prob_bounds(&system, &a, &b)?;
            let (lo_json, lo_rows) = witness_value(&frame, &r.lo_witness)?;
            let (hi_json, hi_rows) = witness_value(&frame, &r.hi_witness)?;
            let mut text = table(
                &["query", "lo", "hi"],
                &[vec![
                    "P(A | B)".into(),
                    show(r.interval.lo()),
                    show(r.interval.hi()),
                ]],
            );
            text += "\nlower witness\n";
            text += &table(&["element", "cell", "p"], &lo_rows);
            text += "\nupper witness\n";
            text += &table(&["element", "cell", "p"], &hi_rows);
            let result = json!({
                "lo": num(r.interval.lo()),
                "hi": num(r.interval.hi()),
                "lo_witness": lo_json,
                "hi_witness": hi_json,
            });
            Ok(Report {
                result,
                text,
                ok: true,
            })
        }
    }
}

fn agree(s: &AgreeScenario) -> Result<Report, CliError> {
    let (spec, query) = agreement_spec(s)?;
    let r = agreement_report(&spec, &query, s.samples, s.seed)?;
    let rows: Vec<Vec<String>> = r
        .blocks
        .iter()
        .map(|b| {
            vec![
                format!("{}", b.block),
                show(&b.dempster),
                show(&b.posterior),
                show(&b.member),
                flag(b.equal).into(),
            ]
        })
        .collect();
    let mut text = format!("conflict K = {}\n\n", show(&r.conflict));
    text += &table(
        &["block", "orthogonal sum", "posterior", "member", "equal"],
        &rows,
    );
    let sampled = r
        .sampled_min
        .as_ref()
        .map(show)
        .unwrap_or_else(|| "-".into());
    text += "\n";
    text += &table(
        &[
            "query",
            "bel",
            "extremal",
            "sampled min",
            "samples",
            "attained",
        ],
        &[vec![
            format!("{}", r.query),
            show(&r.belief),
            show(&r.constructed_min),
            sampled,
            r.samples.to_string(),
            flag(r.minimum_attained).into(),
        ]],
    );
    let result = json!({
        "conflict": num(&r.conflict),
        "blocks": r.blocks.iter().map(|b| json!({
            "block": key_of(&b.block),
            "dempster": num(&b.dempster),
            "posterior": num(&b.posterior),
            "member": num(&b.member),
            "equal": b.equal,
        })).collect::<Vec<_>>(),
        "blocks_agree": r.blocks_agree,
        "query": key_of(&r.query),
        "belief": num(&r.belief),
        "extremal_min": num(&r.constructed_min),
        "sampled_min": r.sampled_min.as_ref().map(num),
        "samples": r.samples,
        "minimum_attained": r.minimum_attained,
    });
    Ok(Report {
        result,
        text,
        ok: r.blocks_agree && r.minimum_attained,
    })
}

fn run_lottery(s: &LotteryScenario) -> Result<(Scenario, Report), CliError> {
    let m = number(&s.m1)?;
    let r = lottery(s.n, &m)?;
    let text = table(
        &["n", "m1(x1)", "m3(x1)", "bel", "posterior", "T1", "T2"],
        &[vec![
            r.n.to_string(),
            show(&r.m1x1),
            show(&r.m3x1),
            show(&r.bel),
            show(&r.posterior),
            show(&r.t1),
            show(&r.t2),
        ]],
    );
    let result = json!({
        "n": r.n,
        "m1x1": num(&r.m1x1),
        "m3x1": num(&r.m3x1),
        "bel": num(&r.bel),
        "posterior": num(&r.posterior),
        "t1": num(&r.t1),
        "t2": num(&r.t2),
    });
    let normalized = Scenario::Lottery(LotteryScenario {
        version: VERSION,
        n: s.n,
        m1: m.to_string(),
    });
    Ok((
        normalized,
        Report {
            result,
            text,
            ok: true,
        },
    ))
}

fn odds(s: &OddsScenario) -> Result<(Scenario, Report), CliError> {
    let (m1, m2, prior) = (number(&s.m1)?, number(&s.m2)?, number(&s.prior)?);
    let r = odds_swamp(&m1, &m2, &prior)?;
    let text = table(
        &[
            "m1(H)",
            "m2(H)",
            "P(H)",
            "orthogonal sum",
            "P(H | E1&E2)",
            "divergence",
        ],
        &[vec![
            show(&m1),
            show(&m2),
            show(&prior),
            show(&r.dempster),
            show(&r.problogic),
            show(&r.divergence),
        ]],
    );
    let result = json!({
        "dempster": num(&r.dempster),
        "problogic": num(&r.problogic),
        "divergence": num(&r.divergence),
    });
    let normalized = Scenario::Odds(OddsScenario {
        version: VERSION,
        m1: m1.to_string(),
        m2: m2.to_string(),
        prior: prior.to_string(),
    });
    Ok((
        normalized,
        Report {
            result,
            text,
            ok: true,
        },
    ))
}

fn nonpartition() -> Result<Report, CliError> {
    let w = nonpartition_witness()?;
    let rows: Vec<Vec<String>> = w
        .combined
        .combined
        .focal_sets()
        .map(|(s, v)| vec![format!("{s}"), show(v)])
        .collect();
    let mut text = format!("conflict K = {}\n\n", show(&w.combined.conflict));
    text += &table(&["focal set", "mass"], &rows);
    text += "\nwitness\n";
    text += &table(&["element", "cell", "p"], &assignment_rows(&w.witness));
    let failing = w.report.failing();
    text += &format!(
        "\nconditions hold: {}\nP({{b}} | E1&E2) = {}\n",
        if failing.is_empty() {
            "yes".to_string()
        } else {
            format!("NO (failing: {failing})")
        },
        show(&w.conditional)
    );
    let result = json!({
        "conflict": num(&w.combined.conflict),
        "combined": masses(&w.combined.combined),
        "witness": assignment(&w.witness),
        "conditions_hold": w.report.all_pass(),
        "conditional_b": num(&w.conditional),
    });
    Ok(Report {
        result,
        text,
        ok: w.report.all_pass(),
    })
}
