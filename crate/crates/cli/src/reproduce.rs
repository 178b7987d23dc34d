//! The published example values, recomputed.

use dsplogic::rational::to_decimal_string;
use dsplogic::{lottery, lottery_explicit, nonpartition_witness, odds_swamp, ratio, Rational};
use serde_json::json;

use crate::report::{flag, num, show, table, Report};
use crate::CliError;

pub struct Row {
    pub scenario: String,
    pub dempster: Rational,
    pub problogic: Rational,
    pub stated: &'static str,
    pub matched: bool,
}

pub fn rows() -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();

    let swamp = odds_swamp(&ratio(9, 10), &ratio(9, 10), &ratio(999, 1000))?;
    rows.push(Row {
        scenario: "prior swamping: m1(H)=m2(H)=0.9, P(H)=0.999".into(),
        matched: to_decimal_string(&swamp.dempster, 2) == "0.99" && swamp.problogic == ratio(3, 40),
        dempster: swamp.dempster,
        problogic: swamp.problogic,
        stated: "~0.99 / 0.075",
    });

    let uniform = odds_swamp(&ratio(9, 10), &ratio(9, 10), &ratio(1, 2))?;
    rows.push(Row {
        scenario: "uniform prior: m1(H)=m2(H)=0.9, P(H)=0.5".into(),
        matched: uniform.dempster == uniform.problogic && uniform.dempster == ratio(81, 82),
        dempster: uniform.dempster,
        problogic: uniform.problogic,
        stated: "equal",
    });

    let np = nonpartition_witness()?;
    let mb = np
        .combined
        .combined
        .mass(&np.combined.combined.frame().subset(["b"])?)?;
    rows.push(Row {
        scenario: "overlapping focal sets {a,b},{b,c}: {b}".into(),
        matched: mb == ratio(1, 2) && np.conditional == ratio(0, 1) && np.report.all_pass(),
        dempster: mb,
        problogic: np.conditional,
        stated: "0.5 / 0",
    });

    for (m, stated) in [(ratio(1, 10), "0.001 / 0.1"), (ratio(9, 10), "0.075 / 0.9")] {
        let r = lottery(112, &m)?;
        let want: Rational = if m == ratio(1, 10) {
            ratio(1, 1000)
        } else {
            ratio(3, 40)
        };
        rows.push(Row {
            scenario: format!("lottery: n=112, m1(x1)={}", to_decimal_string(&m, 1)),
            matched: r.m3x1 == want && r.bel == want && r.posterior == m,
            dempster: r.m3x1,
            problogic: r.posterior,
            stated,
        });
    }

    // Same lottery on an explicit frame: combination by enumeration and a
    // checked joint assignment instead of the closed forms.
    let n = 12;
    let m = ratio(1, 10);
    let explicit = lottery_explicit(n, &m)?;
    let closed = lottery(n as u64, &m)?;
    rows.push(Row {
        scenario: format!("lottery, explicit frame: n={n}, m1(x1)=0.1"),
        matched: explicit.conditions_hold
            && explicit.m3x1 == closed.m3x1
            && explicit.posterior == m,
        dempster: explicit.m3x1,
        problogic: explicit.posterior,
        stated: "m/(m+(1-m)(n-1)) / 0.1",
    });

    let r = lottery(112, &ratio(1, 10))?;
    let one = Rational::from_integer(1.into());
    let m = &r.m1x1;
    rows.push(Row {
        scenario: "lottery terms T1, T2: n=112, m1(x1)=0.1".into(),
        matched: r.t1 == (&one - m) * Rational::from_integer(111.into()) && r.t2 == &one - m,
        dempster: r.t1,
        problogic: r.t2,
        stated: "(1-m)(n-1) / 1-m",
    });

    Ok(rows)
}

pub fn report() -> Result<Report, CliError> {
    let rows = rows()?;
    let ok = rows.iter().all(|r| r.matched);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.scenario.clone(),
                show(&r.dempster),
                show(&r.problogic),
                r.stated.to_string(),
                flag(r.matched).to_string(),
            ]
        })
        .collect();
    let text = table(
        &[
            "scenario",
            "orthogonal sum",
            "probabilistic logic",
            "stated",
            "match",
        ],
        &cells,
    );
    let result = json!({
        "rows": rows.iter().map(|r| json!({
            "scenario": r.scenario,
            "dempster": num(&r.dempster),
            "problogic": num(&r.problogic),
            "stated": r.stated,
            "match": r.matched,
        })).collect::<Vec<_>>(),
        "all_match": ok,
    });
    Ok(Report { result, text, ok })
}
