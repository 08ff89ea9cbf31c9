use std::io::Write;

use anyhow::{bail, ensure, Context};
use equiquad::{
    build_weights, correction_set, estimate_order, integrate_function, integrate_polynomial_exact,
    integrate_samples, paired_estimate, ConvergenceReport, Order, OrderStudy, Rational, RuleName,
    RuleSpec, SampleSet, WeightVector, CATALOG_NAMES,
};
use serde_json::{json, Value};

use crate::args::{
    CatalogArgs, CorrectionsArgs, Format, IntegrateArgs, OrderArgs, RuleArgs, WeightsArgs,
};
use crate::format::{json_real, real};
use crate::integrand::{read_samples, Builtin};

pub struct Output<'a> {
    pub format: Format,
    pub digits: u32,
    pub out: &'a mut dyn Write,
}

impl Output<'_> {
    fn json(&mut self, value: &Value) -> anyhow::Result<()> {
        serde_json::to_writer_pretty(&mut *self.out, value)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn csv(
        &mut self,
        header: &[&str],
        rows: impl IntoIterator<Item = Vec<String>>,
    ) -> anyhow::Result<()> {
        let mut writer = csv::Writer::from_writer(&mut *self.out);
        writer.write_record(header)?;
        for row in rows {
            writer.write_record(&row)?;
        }
        writer.flush()?;
        Ok(())
    }

    fn real(&self, x: f64) -> String {
        real(x, self.digits)
    }

    fn json_real(&self, x: f64) -> Value {
        json_real(x, self.digits)
    }
}

fn parse_rational(flag: &str, text: &str) -> anyhow::Result<Rational> {
    text.parse()
        .with_context(|| format!("invalid {flag} value '{text}'"))
}

fn parse_limits(text: &str) -> anyhow::Result<(Rational, Rational)> {
    let (a, b) = text
        .split_once(',')
        .with_context(|| format!("invalid --limits '{text}' (expected a,b)"))?;
    Ok((
        parse_rational("--limits", a.trim())?,
        parse_rational("--limits", b.trim())?,
    ))
}

fn joined(values: &[Rational]) -> String {
    values
        .iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(Rational::to_string).collect()
}

struct RuleParams {
    alpha: Rational,
    beta: Rational,
    m_left: usize,
    m_right: usize,
}

impl RuleArgs {
    fn params(&self) -> anyhow::Result<RuleParams> {
        let alpha = parse_rational("--alpha", &self.alpha)?;
        let beta = match &self.beta {
            Some(text) => parse_rational("--beta", text)?,
            None => alpha.clone(),
        };
        Ok(RuleParams {
            alpha,
            beta,
            m_left: self.m,
            m_right: self.m_right.unwrap_or(self.m),
        })
    }
}

impl RuleParams {
    fn spec(&self, n: usize) -> equiquad::Result<RuleSpec> {
        RuleSpec::new(
            self.alpha.clone(),
            self.beta.clone(),
            self.m_left,
            self.m_right,
            n,
        )
    }
}

pub fn corrections(args: &CorrectionsArgs, o: &mut Output) -> anyhow::Result<()> {
    let alpha = parse_rational("--alpha", &args.alpha)?;
    let set = correction_set(&alpha, args.m);
    match o.format {
        Format::Exact if args.with_b => {
            writeln!(o.out, "c: {}", joined(&set.c))?;
            writeln!(o.out, "b: {}", joined(&set.b))?;
        }
        Format::Exact => writeln!(o.out, "{}", joined(&set.c))?,
        Format::Json => {
            let mut value = json!({
                "alpha": set.alpha.to_string(),
                "m": set.m,
                "c": strings(&set.c),
            });
            if args.with_b {
                value["b"] = json!(strings(&set.b));
            }
            o.json(&value)?;
        }
        Format::Csv => {
            let header: &[&str] = if args.with_b {
                &["i", "c", "c_decimal", "b", "b_decimal"]
            } else {
                &["i", "c", "c_decimal"]
            };
            let rows: Vec<_> = (0..set.c.len())
                .map(|i| {
                    let mut row = vec![
                        i.to_string(),
                        set.c[i].to_string(),
                        o.real(set.c[i].to_f64()),
                    ];
                    if args.with_b {
                        row.push(set.b[i].to_string());
                        row.push(o.real(set.b[i].to_f64()));
                    }
                    row
                })
                .collect();
            o.csv(header, rows)?;
        }
    }
    Ok(())
}

fn weights_json(w: &WeightVector) -> Value {
    json!({
        "alpha": w.spec.alpha.to_string(),
        "beta": w.spec.beta.to_string(),
        "m_left": w.spec.m_left,
        "m_right": w.spec.m_right,
        "n": w.spec.n,
        "lo": w.lo,
        "weights": strings(&w.weights),
    })
}

fn weight_rows(w: &WeightVector, o: &Output) -> Vec<Vec<String>> {
    w.iter()
        .map(|(i, x)| vec![i.to_string(), x.to_string(), o.real(x.to_f64())])
        .collect()
}

fn print_weights(w: &WeightVector, o: &mut Output) -> anyhow::Result<()> {
    writeln!(o.out, "indices: {}..{}", w.lo, w.hi())?;
    writeln!(o.out, "{}", joined(&w.weights))?;
    Ok(())
}

pub fn weights(args: &WeightsArgs, o: &mut Output) -> anyhow::Result<()> {
    let w = build_weights(&args.rule.params()?.spec(args.n)?)?;
    match o.format {
        Format::Exact => print_weights(&w, o),
        Format::Json => o.json(&weights_json(&w)),
        Format::Csv => {
            let rows = weight_rows(&w, o);
            o.csv(&["index", "weight", "decimal"], rows)
        }
    }
}

pub fn catalog(args: &CatalogArgs, o: &mut Output) -> anyhow::Result<()> {
    let Some(text) = &args.name else {
        return match o.format {
            Format::Exact => {
                for name in CATALOG_NAMES {
                    writeln!(o.out, "{name}")?;
                }
                Ok(())
            }
            Format::Json => o.json(&json!(CATALOG_NAMES)),
            Format::Csv => o.csv(&["name"], CATALOG_NAMES.iter().map(|n| vec![n.to_string()])),
        };
    };
    let name: RuleName = text.parse()?;
    let w = name.weights()?;
    match o.format {
        Format::Exact => {
            let s = &w.spec;
            writeln!(o.out, "{name}")?;
            writeln!(
                o.out,
                "alpha={} beta={} m_left={} m_right={} n={}",
                s.alpha, s.beta, s.m_left, s.m_right, s.n
            )?;
            print_weights(&w, o)
        }
        Format::Json => {
            let mut value = json!({ "name": name.to_string() });
            if let (Value::Object(head), Value::Object(rest)) = (&mut value, weights_json(&w)) {
                head.extend(rest);
            }
            o.json(&value)
        }
        Format::Csv => {
            let rows = weight_rows(&w, o);
            o.csv(&["index", "weight", "decimal"], rows)
        }
    }
}

enum Estimate {
    Single(f64),
    Paired {
        lower: f64,
        higher: f64,
        difference: f64,
    },
    SingleExact(Rational),
    PairedExact {
        lower: Rational,
        higher: Rational,
        difference: Rational,
    },
}

pub fn integrate(args: &IntegrateArgs, o: &mut Output) -> anyhow::Result<()> {
    let rule = args.rule.params()?;
    if args.paired {
        ensure!(
            rule.m_left == rule.m_right,
            "--paired needs equal correction depths at both ends"
        );
    }
    let estimate = match (&args.builtin, &args.samples) {
        (Some(name), _) => integrate_builtin(&name.parse()?, &rule, args)?,
        (None, Some(path)) => integrate_file(&read_samples(path, args.column)?, &rule, args)?,
        (None, None) => bail!("one of --builtin or --samples is required"),
    };
    let (header, exact_row, json_value) = match estimate {
        Estimate::Single(x) => (
            vec!["estimate"],
            vec![o.real(x)],
            json!({ "estimate": o.json_real(x) }),
        ),
        Estimate::SingleExact(x) => (
            vec!["estimate"],
            vec![x.to_string()],
            json!({ "estimate": x.to_string() }),
        ),
        Estimate::Paired {
            lower,
            higher,
            difference,
        } => (
            vec!["lower", "higher", "difference"],
            vec![o.real(lower), o.real(higher), o.real(difference)],
            json!({
                "lower": o.json_real(lower),
                "higher": o.json_real(higher),
                "difference": o.json_real(difference),
            }),
        ),
        Estimate::PairedExact {
            lower,
            higher,
            difference,
        } => {
            let row = vec![
                lower.to_string(),
                higher.to_string(),
                difference.to_string(),
            ];
            let value = json!({ "lower": row[0], "higher": row[1], "difference": row[2] });
            (vec!["lower", "higher", "difference"], row, value)
        }
    };
    match o.format {
        Format::Exact if header.len() == 1 => writeln!(o.out, "{}", exact_row[0])?,
        Format::Exact => {
            for (label, value) in header.iter().zip(&exact_row) {
                writeln!(o.out, "{label}: {value}")?;
            }
        }
        Format::Json => o.json(&json_value)?,
        Format::Csv => o.csv(&header, [exact_row])?,
    }
    Ok(())
}

fn integrate_builtin(
    f: &Builtin,
    rule: &RuleParams,
    args: &IntegrateArgs,
) -> anyhow::Result<Estimate> {
    let n = args.n.context("--n is required with --builtin")?;
    ensure!(
        args.h.is_none(),
        "--h applies to --samples only; use --limits with --builtin"
    );
    let (a, b) = parse_limits(args.limits.as_deref().unwrap_or("0,1"))?;
    if args.rational {
        let Some(poly) = f.polynomial() else {
            bail!("--rational needs a poly: builtin, not '{f}'");
        };
        let exact_with = |m: usize| -> anyhow::Result<Rational> {
            let spec = RuleSpec::new(rule.alpha.clone(), rule.beta.clone(), m, m, n)?;
            Ok(integrate_polynomial_exact(poly, &a, &b, &spec)?)
        };
        if args.paired {
            let lower = exact_with(rule.m_left)?;
            let higher = exact_with(rule.m_left + 1)?;
            let difference = (&lower - &higher).abs();
            return Ok(Estimate::PairedExact {
                lower,
                higher,
                difference,
            });
        }
        return Ok(Estimate::SingleExact(integrate_polynomial_exact(
            poly,
            &a,
            &b,
            &rule.spec(n)?,
        )?));
    }
    let (a, b) = (a.to_f64(), b.to_f64());
    if args.paired {
        let p = paired_estimate(|t| f.eval(t), a, b, &rule.alpha, &rule.beta, rule.m_left, n)?;
        return Ok(Estimate::Paired {
            lower: p.lower,
            higher: p.higher,
            difference: p.difference,
        });
    }
    Ok(Estimate::Single(integrate_function(
        |t| f.eval(t),
        a,
        b,
        &rule.spec(n)?,
    )?))
}

fn integrate_file(
    values: &[f64],
    rule: &RuleParams,
    args: &IntegrateArgs,
) -> anyhow::Result<Estimate> {
    ensure!(!args.rational, "--rational needs a poly: builtin");
    if let Some(n) = args.n {
        ensure!(
            n + 1 == values.len(),
            "--n {n} does not match {} samples",
            values.len()
        );
    }
    let samples = match (args.h, &args.limits) {
        (Some(_), Some(_)) => bail!("give either --h or --limits, not both"),
        (Some(h), None) => {
            SampleSet::new(values.to_vec(), h, rule.alpha.clone(), rule.beta.clone())?
        }
        (None, Some(text)) => {
            let (a, b) = parse_limits(text)?;
            SampleSet::over_interval(
                values.to_vec(),
                a.to_f64(),
                b.to_f64(),
                rule.alpha.clone(),
                rule.beta.clone(),
            )?
        }
        (None, None) => bail!("--samples needs --h or --limits to fix the spacing"),
    };
    if args.paired {
        let lower = integrate_samples(&samples, rule.m_left, rule.m_right)?;
        let higher = integrate_samples(&samples, rule.m_left + 1, rule.m_right + 1)?;
        return Ok(Estimate::Paired {
            lower,
            higher,
            difference: (lower - higher).abs(),
        });
    }
    Ok(Estimate::Single(integrate_samples(
        &samples,
        rule.m_left,
        rule.m_right,
    )?))
}

fn order_cell(order: &Order, o: &Output) -> String {
    match order {
        Order::Exact => "exact".to_string(),
        Order::Estimated(p) => o.real(*p),
    }
}

pub fn order(args: &OrderArgs, o: &mut Output) -> anyhow::Result<()> {
    let f: Builtin = args.builtin.parse()?;
    let exact = parse_rational("--exact", &args.exact)?;
    let alpha = parse_rational("--alpha", &args.alpha)?;
    let beta = match &args.beta {
        Some(text) => parse_rational("--beta", text)?,
        None => alpha.clone(),
    };
    let (a, b) = parse_limits(&args.limits)?;
    let study = OrderStudy {
        alpha,
        beta,
        m: args.m,
        n0: args.n0,
        doublings: args.doublings,
    };
    let report = estimate_order(
        |t| f.eval(t),
        exact.to_f64(),
        a.to_f64(),
        b.to_f64(),
        &study,
    )?;
    match o.format {
        Format::Exact => print_order_table(&report, o),
        Format::Csv => {
            let estimated = order_cell(&report.estimated_order, o);
            let rows: Vec<_> = report
                .levels
                .iter()
                .enumerate()
                .map(|(k, level)| {
                    let refinement = k.checked_sub(1);
                    vec![
                        level.n.to_string(),
                        level.nodes.to_string(),
                        o.real(level.h),
                        o.real(level.error),
                        refinement.map_or(String::new(), |r| o.real(report.ratios[r])),
                        refinement.map_or(String::new(), |r| o.real(report.observed_orders[r])),
                        estimated.clone(),
                    ]
                })
                .collect();
            o.csv(
                &[
                    "n",
                    "nodes",
                    "h",
                    "error",
                    "ratio",
                    "observed_order",
                    "estimated_order",
                ],
                rows,
            )
        }
        Format::Json => {
            let levels: Vec<Value> = report
                .levels
                .iter()
                .map(|l| {
                    json!({
                        "n": l.n,
                        "nodes": l.nodes,
                        "h": o.json_real(l.h),
                        "estimate": o.json_real(l.estimate),
                        "error": o.json_real(l.error),
                    })
                })
                .collect();
            let estimated = match report.estimated_order {
                Order::Exact => json!("exact"),
                Order::Estimated(p) => o.json_real(p),
            };
            o.json(&json!({
                "integrand": f.to_string(),
                "exact": exact.to_string(),
                "alpha": study.alpha.to_string(),
                "beta": study.beta.to_string(),
                "m": study.m,
                "n0": study.n0,
                "doublings": study.doublings,
                "a": a.to_string(),
                "b": b.to_string(),
                "levels": levels,
                "ratios": report.ratios.iter().map(|&r| o.json_real(r)).collect::<Vec<_>>(),
                "observed_orders": report.observed_orders.iter().map(|&r| o.json_real(r)).collect::<Vec<_>>(),
                "estimated_order": estimated,
            }))
        }
    }
}

fn print_order_table(report: &ConvergenceReport, o: &mut Output) -> anyhow::Result<()> {
    let mut rows = vec![["n", "nodes", "h", "error", "ratio", "order"]
        .map(String::from)
        .to_vec()];
    for (k, level) in report.levels.iter().enumerate() {
        let refinement = k.checked_sub(1);
        rows.push(vec![
            level.n.to_string(),
            level.nodes.to_string(),
            o.real(level.h),
            o.real(level.error),
            refinement.map_or("-".into(), |r| o.real(report.ratios[r])),
            refinement.map_or("-".into(), |r| o.real(report.observed_orders[r])),
        ]);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    for row in &rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        writeln!(o.out, "{}", cells.join("  "))?;
    }
    match report.estimated_order {
        Order::Exact => writeln!(o.out, "estimated order: exact")?,
        Order::Estimated(p) => writeln!(o.out, "estimated order: {}", o.real(p))?,
    }
    Ok(())
}
