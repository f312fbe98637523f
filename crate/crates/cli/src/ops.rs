//! One function per subcommand, each returning a JSON result.

use std::str::FromStr;

use anyhow::{bail, Result};
use num_rational::Ratio;
use serde_json::{json, Value};
use sumfree_core::classification::{
    classify_cyclic_extremal, disjoint_pair_cover, presentation_of, recover_structure, window_census,
    PresentationOutcome, RecoveryParams,
};
use sumfree_core::counting::{
    a_of_h, a_of_h_streaming, bah_bound, coun_bound, doubling_table, extremal_count_bound, sf_bounds,
    splitting_count_bound, t_free_lower_bound, window_count_identity, BoundParams,
};
use sumfree_core::group::{enumerate_splittings, enumerate_subgroups, Elem};
use sumfree_core::orbits::{orbi_formula, orbit_count_extremal, orbit_count_subgroups, ExtremalSource};
use sumfree_core::sumfree::{c_of_g, count_all_sumfree, enumerate_extremal, max_sumfree_bruteforce};
use sumfree_core::verify::{run_suite, Suite};
use sumfree_core::{Ctx, FinAbGroup, GroupSubset};

use crate::{CensusMode, Command, Outcome, Source};

/// Malformed command-line input.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Cmax(_) => "cmax",
        Command::Census { .. } => "census",
        Command::Extremal(_) => "extremal",
        Command::Classify { .. } => "classify",
        Command::Recover { .. } => "recover",
        Command::Orbits { .. } => "orbits",
        Command::Orbi { .. } => "orbi",
        Command::Subgroups(_) => "subgroups",
        Command::Doubling { .. } => "doubling",
        Command::Aofh { .. } => "aofh",
        Command::Windowcount { .. } => "windowcount",
        Command::Bounds { .. } => "bounds",
        Command::Paircover { .. } => "paircover",
        Command::Windowcensus(_) => "windowcensus",
        Command::Verify { .. } => "verify",
    }
}

fn group(literal: &str) -> Result<FinAbGroup> {
    Ok(FinAbGroup::parse(literal)?)
}

/// An element from a JSON coordinate tuple, or a bare integer in a cyclic group.
fn element(g: &FinAbGroup, v: &Value) -> Result<Elem> {
    let coords: Vec<u64> = match v {
        Value::Number(n) if g.rank() == 1 => vec![n.as_u64().ok_or_else(|| InputError(format!("bad element {v}")))?],
        Value::Array(items) => items
            .iter()
            .map(|c| c.as_u64().ok_or_else(|| InputError(format!("bad coordinate {c}"))))
            .collect::<std::result::Result<_, _>>()?,
        _ => bail!(InputError(format!("bad element {v}"))),
    };
    if coords.len() != g.rank() || coords.iter().zip(g.factors()).any(|(c, d)| c >= d) {
        bail!(InputError(format!("{v} is not an element of {}", g.literal())));
    }
    Ok(g.index(&coords)?)
}

fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| InputError(format!("{what} is not valid JSON: {e}")).into())
}

fn subset(g: &FinAbGroup, text: &str) -> Result<GroupSubset> {
    let Value::Array(items) = parse_json(text, "--set")? else {
        bail!(InputError("--set must be a JSON array".into()));
    };
    let elems = items.iter().map(|v| element(g, v)).collect::<Result<Vec<_>>>()?;
    Ok(GroupSubset::from_elems(g, elems))
}

fn ok(group: &FinAbGroup, params: Value, result: Value) -> Outcome {
    Outcome {
        group: Some(group.literal()),
        params,
        result,
        csv: None,
        ok: true,
    }
}

pub fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        Command::Cmax(a) => {
            let g = group(&a.group)?;
            Ok(ok(&g, json!({}), json!(c_of_g(&g))))
        }
        Command::Census { group: a, mode } => census(&group(&a.group)?, *mode, ctx),
        Command::Extremal(a) => {
            let g = group(&a.group)?;
            let sets = enumerate_extremal(&g, ctx)?;
            let coords: Vec<_> = sets.iter().map(GroupSubset::coords).collect();
            Ok(ok(&g, json!({}), json!({ "count": sets.len(), "size": c_of_g(&g), "sets": coords })))
        }
        Command::Classify { group: a, set } => classify(&group(&a.group)?, set.as_deref(), ctx),
        Command::Recover {
            group: a,
            set,
            epsilon,
            strict,
        } => {
            let g = group(&a.group)?;
            let s = subset(&g, set)?;
            let epsilon = epsilon
                .as_deref()
                .map(|e| Ratio::<u64>::from_str(e).map_err(|_| InputError(format!("bad --epsilon {e:?}; use p/q"))))
                .transpose()?;
            let params = RecoveryParams {
                epsilon,
                strict_mode: *strict,
            };
            let r = recover_structure(&s, &params, ctx)?;
            let result = json!({
                "presentation": r.presentation.record(),
                "family": r.family.coords(),
                "excess": r.excess,
                "case_excess": r.case_excess,
                "case": r.case,
                "deficiency": r.deficiency,
                "epsilon": r.epsilon.to_string(),
                "bound": r.bound(),
                "within_bound": r.within_bound(),
                "heavy_layers": r.heavy,
                "surjection": r.surjection.images(),
                "heuristic": r.heuristic,
            });
            let mut out = ok(&g, json!({ "set": s.coords(), "epsilon": params.epsilon.map(|e| e.to_string()), "strict": strict }), result);
            out.ok = r.within_bound();
            Ok(out)
        }
        Command::Orbits { group: a, source } => {
            let g = group(&a.group)?;
            let src = match source {
                Source::Auto => ExtremalSource::Auto,
                Source::Enumerate => ExtremalSource::Enumerate,
                Source::Construct => ExtremalSource::Construct,
            };
            let r = orbit_count_extremal(&g, src, ctx)?;
            Ok(ok(
                &g,
                json!({ "source": source }),
                json!({
                    "orbit_count": r.orbit_count,
                    "sizes": r.orbit_sizes,
                    "total": r.total,
                    "provenance": r.provenance,
                    "representatives": r.representative_coords(),
                }),
            ))
        }
        Command::Orbi { m, r } => Ok(Outcome {
            group: None,
            params: json!({ "m": m, "r": r }),
            result: json!(orbi_formula(*m, *r)?.to_string()),
            csv: None,
            ok: true,
        }),
        Command::Subgroups(a) => {
            let g = group(&a.group)?;
            let subs = enumerate_subgroups(&g, &ctx.guards)?;
            let orbits = orbit_count_subgroups(&g, ctx)?;
            let list: Vec<Value> = subs
                .iter()
                .map(|k| json!({ "order": k.order(), "type": k.invariant_factors(), "elements": k.set().coords() }))
                .collect();
            Ok(ok(
                &g,
                json!({}),
                json!({ "count": subs.len(), "orbit_count": orbits.orbit_count, "orbit_sizes": orbits.orbit_sizes, "subgroups": list }),
            ))
        }
        Command::Doubling { group: a, t } => {
            let h = group(&a.group)?;
            let table = doubling_table(&h, *t, ctx)?;
            let mut out = ok(
                &h,
                json!({ "t": t }),
                json!({ "table": table, "total": table.total(), "a": table.a() }),
            );
            out.csv = Some(table.to_csv());
            Ok(out)
        }
        Command::Aofh { group: a, t } => {
            let h = group(&a.group)?;
            let table = a_of_h(&h, *t, ctx)?;
            let stream = a_of_h_streaming(&h, *t, ctx)?;
            let mut out = ok(&h, json!({ "t": t }), json!({ "table": table, "streaming": stream, "agree": table == stream }));
            out.ok = table == stream;
            Ok(out)
        }
        Command::Windowcount { group: a, all } => {
            let g = group(&a.group)?;
            let splittings = enumerate_splittings(&g, &ctx.guards)?;
            let take = if *all { splittings.len() } else { 1.min(splittings.len()) };
            let mut reports = Vec::new();
            let mut holds = true;
            for s in splittings.iter().take(take) {
                let w = window_count_identity(s, ctx)?;
                holds &= w.holds();
                reports.push(w);
            }
            let mut out = ok(
                &g,
                json!({ "all": all }),
                json!({ "splittings_checked": take, "holds": holds, "first": reports.first() }),
            );
            out.ok = holds;
            Ok(out)
        }
        Command::Bounds { group: a, t, c, cm } => {
            let g = group(&a.group)?;
            let (n, m) = (g.order() as u64, g.exponent());
            let p = BoundParams::new(*c, *cm).map_err(|e| InputError(e.to_string()))?;
            let sandwich = sf_bounds(&g, ctx)?;
            let tfree = t_free_lower_bound(&g, *t, ctx)?;
            let mut out = ok(
                &g,
                json!({ "t": t, "c": c, "cm": cm }),
                json!({
                    "sandwich": sandwich,
                    "lower_holds": sandwich.lower_holds(),
                    "t_free": tfree,
                    "log2_coun": coun_bound(n, m, &p)?.0,
                    "log2_bah": bah_bound(n, m, *c)?.0,
                    "splitting_bound": splitting_count_bound(n, m),
                    "log2_extremal_count_bound": extremal_count_bound(n, m).0,
                }),
            );
            out.ok = sandwich.lower_holds() != Some(false);
            Ok(out)
        }
        Command::Paircover { group: a, set, x } => {
            let g = group(&a.group)?;
            let l = subset(&g, set)?;
            let x = element(&g, &parse_json(x, "--x")?)?;
            let pairs = disjoint_pair_cover(x, &l);
            let coords: Vec<_> = pairs.iter().map(|&(a, b)| (g.coords(a), g.coords(b))).collect();
            Ok(ok(&g, json!({ "x": g.coords(x), "set": l.coords() }), json!({ "size": pairs.len(), "pairs": coords })))
        }
        Command::Windowcensus(a) => {
            let g = group(&a.group)?;
            let w = window_census(&g, ctx)?;
            let frac = w.exception_fraction();
            Ok(ok(&g, json!({}), json!({ "census": w, "exception_fraction": format!("{}/{}", frac.numer(), frac.denom()) })))
        }
        Command::Verify { suite } => {
            let suite = Suite::parse(suite).map_err(|e| InputError(e.to_string()))?;
            let results = run_suite(suite, ctx);
            for r in &results {
                eprintln!("{r}");
            }
            let passed = results.iter().filter(|r| r.passed).count();
            Ok(Outcome {
                group: None,
                params: json!({ "suite": suite }),
                result: json!({ "passed": passed, "total": results.len(), "criteria": results }),
                csv: None,
                ok: passed == results.len(),
            })
        }
    }
}

fn census(g: &FinAbGroup, mode: CensusMode, ctx: &Ctx) -> Result<Outcome> {
    let result = match mode {
        CensusMode::All => json!({ "count": count_all_sumfree(g, ctx)? }),
        CensusMode::Extremal => {
            let sets = enumerate_extremal(g, ctx)?;
            json!({ "count": sets.len(), "size": c_of_g(g) })
        }
        CensusMode::Max => {
            let (size, witness) = max_sumfree_bruteforce(g, ctx)?;
            json!({ "size": size, "witness": witness.coords(), "closed_form": c_of_g(g), "agree": size == c_of_g(g) })
        }
    };
    let agree = result.get("agree").and_then(Value::as_bool).unwrap_or(true);
    let mut out = ok(g, json!({ "mode": mode }), result);
    out.ok = agree;
    Ok(out)
}

fn classify(g: &FinAbGroup, set: Option<&str>, ctx: &Ctx) -> Result<Outcome> {
    let targets = match set {
        Some(text) => vec![subset(g, text)?],
        None => enumerate_extremal(g, ctx)?,
    };
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for l in &targets {
        let cyclic = if g.is_cyclic() && set.is_none() {
            classify_cyclic_extremal(l)?.map(|(d, fam)| json!({ "unit": d, "family": fam }))
        } else {
            None
        };
        let row = match presentation_of(l, ctx)? {
            PresentationOutcome::Found(p) => json!({ "set": l.coords(), "outcome": "found", "presentation": p.record(), "cyclic": cyclic }),
            PresentationOutcome::NotExtremal => json!({ "set": l.coords(), "outcome": "not_extremal" }),
            PresentationOutcome::Violation => {
                violations.push(l.coords());
                json!({ "set": l.coords(), "outcome": "violation" })
            }
        };
        rows.push(row);
    }
    let mut out = ok(
        g,
        json!({ "set": set.map(|s| parse_json(s, "--set")).transpose()? }),
        json!({ "count": rows.len(), "violations": violations, "classified": rows }),
    );
    out.ok = violations.is_empty();
    if !out.ok {
        eprintln!("counterexample sets: {}", serde_json::to_string(&violations)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_parse_from_tuples_or_integers() {
        let z13 = FinAbGroup::cyclic(13).unwrap();
        assert_eq!(element(&z13, &json!(5)).unwrap(), 5);
        assert_eq!(element(&z13, &json!([5])).unwrap(), 5);
        assert!(element(&z13, &json!(13)).is_err());
        let g = FinAbGroup::new(&[7, 7]).unwrap();
        assert_eq!(element(&g, &json!([1, 2])).unwrap(), 9);
        assert!(element(&g, &json!(3)).is_err());
        assert!(element(&g, &json!([1, 2, 3])).is_err());
    }

    #[test]
    fn subsets_reject_bad_json() {
        let g = FinAbGroup::new(&[7, 7]).unwrap();
        assert_eq!(subset(&g, "[[0,3],[0,4]]").unwrap().len(), 2);
        let err = subset(&g, "{\"a\": 1}").unwrap_err();
        assert!(err.is::<InputError>());
        assert!(subset(&g, "[[0,3]").unwrap_err().is::<InputError>());
    }
}
