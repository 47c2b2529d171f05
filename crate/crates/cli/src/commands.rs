use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use lfsm::analysis::{avalanche_correlation, diffusion_delay};
use lfsm::families::{hardware_metrics, BlockOp};
use lfsm::gf2::{is_primitive, min_poly, x_order, Primitivity};
use lfsm::io::{self, Document, SourceFormat};
use lfsm::rational::{build_windmill, expand_rlfsm, windmill_interleave_check, EntryOrder, ExpansionStrategy, WindmillSpec};
use lfsm::search::{expected_trials, gen_hw, gen_word, Algorithm, GenConfig, GenResult, Layout};
use lfsm::{Error, FactorTable, F2Vec, Gf2Poly, Lfsm, RationalSeries, Rlfsm};
use serde_json::{json, Value};

use crate::args::*;

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Exhausted(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Exhausted(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Exhausted(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::MaxTrialsExceeded { .. } => CliError::Exhausted(e.to_string()),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn invalid(m: impl Into<String>) -> CliError {
    CliError::Invalid(m.into())
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| invalid(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| invalid(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| invalid(format!("stdout: {e}"))),
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("values serialize")
    } else {
        v.to_string()
    }
}

fn load_factors(spec: &str) -> Result<FactorTable> {
    let mut t = FactorTable::builtin();
    if spec != "builtin" {
        let text = std::fs::read_to_string(spec).map_err(|e| invalid(format!("{spec}: {e}")))?;
        t.merge(FactorTable::from_json(&text)?);
    }
    Ok(t)
}

fn parse_poly(s: &str) -> Result<Gf2Poly> {
    Ok(s.parse::<Gf2Poly>()?)
}

fn primitive_value(p: Primitivity) -> Value {
    match p {
        Primitivity::Primitive => json!(true),
        Primitivity::IrreducibleUnknownOrder => json!("unknown"),
        Primitivity::Irreducible | Primitivity::Reducible => json!(false),
    }
}

pub fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::GenHw(a) => gen_hw_cmd(a),
        Command::GenSw(a) => gen_sw_cmd(a),
        Command::Analyze(a) => analyze(a),
        Command::Simulate(a) => simulate(a),
        Command::Windmill(a) => windmill(a),
        Command::Poly { command } => poly(command),
        Command::Expand(a) => expand(a),
        Command::Convert(a) => {
            let text = read_input(a.io.input.as_deref())?;
            let (doc, _) = io::parse_document(&text)?;
            write_output(a.io.out.as_deref(), &io::document_to_json(&doc, a.io.pretty))
        }
    }
}

fn search_config(s: &SearchArgs, n: usize, f: usize) -> Result<GenConfig> {
    let seed = s.seed.unwrap_or_else(|| {
        let seed = rand::random();
        eprintln!("seed: {seed}");
        seed
    });
    let mut cfg = GenConfig::new(n, f, seed);
    cfg.workers = s.workers;
    cfg.max_trials = s.max_trials;
    cfg.factors = load_factors(&s.factors)?;
    cfg.allow_irreducible = s.allow_irreducible;
    Ok(cfg)
}

fn report(cfg: &GenConfig, r: &GenResult, s: &SearchArgs) -> Result<()> {
    let mut v = json!({
        "seed": cfg.seed,
        "n": cfg.n,
        "feedbacks": cfg.f,
        "trials": r.trials,
        "round": r.round,
        "worker": r.worker,
        "connection_poly": r.connection.to_string(),
        "primitive": primitive_value(r.primitivity),
        "diffusion_delay": r.diffusion.delay,
        "critical_path": r.metrics.critical_path,
        "fan_out": r.metrics.fan_out,
        "cost": r.metrics.cost,
    });
    let automaton = match &r.layout {
        Layout::Ring(spec) => {
            v["positions"] = json!(spec.feedbacks);
            io::lfsm_to_json(&r.automaton, s.pretty)
        }
        Layout::Word(spec) => {
            v["word"] = json!(spec.k);
            io::word_to_json(spec, s.pretty)
        }
    };
    match &s.out {
        Some(p) => write_output(Some(p), &automaton)?,
        None => v["automaton"] = serde_json::from_str(&automaton).expect("own JSON parses"),
    }
    write_output(None, &render(&v, s.pretty))
}

fn gen_hw_cmd(a: GenHwArgs) -> Result<()> {
    let algo = match a.algo {
        Algo::Naive => Algorithm::Naive,
        Algo::Cofactor => Algorithm::Cofactor,
    };
    if let Some(range) = &a.sweep {
        return sweep(range, a.runs, algo, &a.search);
    }
    let (Some(n), Some(f)) = (a.n, a.feedbacks) else {
        return Err(invalid("gen-hw needs --n and --feedbacks, or --sweep"));
    };
    let cfg = search_config(&a.search, n, f)?;
    let r = gen_hw(&cfg, algo)?;
    report(&cfg, &r, &a.search)
}

/// CSV of the mean trial count against the estimate.
fn sweep(range: &str, runs: u64, algo: Algorithm, s: &SearchArgs) -> Result<()> {
    let (lo, hi) = range.split_once(':').ok_or_else(|| invalid(format!("sweep {range:?} is not LO:HI")))?;
    let lo: usize = lo.trim().parse().map_err(|_| invalid("bad sweep bound"))?;
    let hi: usize = hi.trim().parse().map_err(|_| invalid("bad sweep bound"))?;
    if runs == 0 {
        return Err(invalid("--runs must be positive"));
    }
    let base = search_config(s, lo.max(2), 0)?;
    let mut out = String::from("n,feedbacks,runs,failures,expected,mean_trials\n");
    for n in lo.max(2)..=hi {
        let f = n / 2;
        let expected = expected_trials(n, &base.factors)?;
        let (mut total, mut failures) = (0u64, 0u64);
        for k in 0..runs {
            let mut cfg = base.clone();
            cfg.n = n;
            cfg.f = f;
            cfg.seed = base.seed.wrapping_add(k);
            match gen_hw(&cfg, algo) {
                Ok(r) => total += r.trials,
                Err(Error::MaxTrialsExceeded { .. }) => failures += 1,
                Err(e) => return Err(e.into()),
            }
        }
        let e = expected.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
            / expected.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        let mean = if failures < runs { format!("{:.4}", total as f64 / (runs - failures) as f64) } else { String::new() };
        out.push_str(&format!("{n},{f},{runs},{failures},{e:.4},{mean}\n"));
    }
    write_output(None, &out)
}

fn gen_sw_cmd(a: GenSwArgs) -> Result<()> {
    let mut cfg = search_config(&a.search, a.n, a.feedbacks)?;
    cfg.k = Some(a.word);
    let r = gen_word(&cfg)?;
    report(&cfg, &r, &a.search)
}

fn analyze(a: AnalyzeArgs) -> Result<()> {
    let text = read_input(a.io.input.as_deref())?;
    let (doc, src) = io::parse_document(&text)?;
    let Document::Lfsm(l) = doc else {
        return Err(invalid("analyze needs a binary automaton; use expand on rational inputs"));
    };
    if let Some(bit) = a.avalanche {
        return avalanche(&l, bit, a.horizon, a.format, &a.io);
    }
    let factors = load_factors(&a.factors)?;
    let m = hardware_metrics(l.transition());
    let d = diffusion_delay(l.transition());
    let q = l.connection_polynomial();
    let primitive = if q.degree() != Some(l.n()) {
        json!(false)
    } else {
        primitive_value(is_primitive(&q, &factors))
    };
    let mut v = json!({
        "n": l.n(),
        "diffusion_delay": serde_json::to_value(&d).expect("report serializes")["delay"],
        "critical_path": m.critical_path,
        "fan_out": m.fan_out,
        "cost": m.cost,
        "connection_poly": q.to_string(),
        "connection_weight": m.weight_q,
        "primitive": primitive,
    });
    if let Some((from, to)) = d.unreachable {
        v["unreachable"] = json!([from, to]);
    }
    if let SourceFormat::Word(spec) = &src {
        let ops = spec.blocks.iter().filter(|b| b.op != BlockOp::Identity).count();
        v["word_ops"] = json!(ops);
    }
    match a.format {
        Format::Json => write_output(a.io.out.as_deref(), &render(&v, a.io.pretty)),
        Format::Text | Format::Csv => {
            let obj = v.as_object().expect("object");
            let lines: Vec<String> = obj.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            write_output(a.io.out.as_deref(), &lines.join("\n"))
        }
    }
}

fn avalanche(l: &Lfsm, bit: usize, horizon: usize, format: Format, o: &IoArgs) -> Result<()> {
    if bit >= l.n() {
        return Err(invalid(format!("bit {bit} outside {} cells", l.n())));
    }
    let p = avalanche_correlation(l, bit, horizon);
    match format {
        Format::Csv | Format::Text => {
            let mut s = String::from("t,differences,correlation\n");
            for (t, (d, c)) in p.differences.iter().zip(&p.correlation).enumerate() {
                s.push_str(&format!("{t},{d},{c}\n"));
            }
            write_output(o.out.as_deref(), &s)
        }
        Format::Json => {
            let corr: Vec<String> = p.correlation.iter().map(|c| c.to_string()).collect();
            let v = json!({ "bit": bit, "differences": p.differences, "correlation": corr });
            write_output(o.out.as_deref(), &render(&v, o.pretty))
        }
    }
}

fn bit_string(bits: impl Iterator<Item = bool>) -> String {
    bits.map(|b| if b { '1' } else { '0' }).collect()
}

fn rational_line(t: usize, r: &Rlfsm) -> String {
    let m: Vec<&str> = r.bits().iter().map(|b| if b { "1" } else { "0" }).collect();
    let c: Vec<String> = r.carries().iter().map(|c| c.to_string()).collect();
    format!("{t}\t{}\t{}", m.join(" "), c.join("\t"))
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let text = read_input(a.io.input.as_deref())?;
    let out = match io::parse_document(&text)?.0 {
        Document::Lfsm(mut l) => {
            if let Some(init) = &a.init {
                l.set_state(F2Vec::from_hex(init, l.n())?)?;
            }
            if a.dump {
                let lines: Vec<String> = l.trajectory(a.steps).iter().map(F2Vec::cells_display).collect();
                lines.join("\n")
            } else {
                let outs: Vec<String> = l.output_sequences(a.steps).iter().map(|s| bit_string(s.bits().iter().copied())).collect();
                let mut end = l.clone();
                for _ in 0..a.steps {
                    end.clock();
                }
                match a.format {
                    Format::Json => render(&json!({ "outputs": outs, "final_state": end.state().to_hex() }), a.io.pretty),
                    _ => outs.join("\n"),
                }
            }
        }
        Document::Rlfsm(mut r) => {
            if let Some(init) = &a.init {
                let n = r.n();
                r.set_state(F2Vec::from_hex(init, n)?, vec![Gf2Poly::zero(); n])?;
            }
            if a.dump {
                let mut lines = vec![rational_line(0, &r)];
                for t in 1..=a.steps {
                    r.step();
                    lines.push(rational_line(t, &r));
                }
                lines.join("\n")
            } else {
                let outs: Vec<String> = r.output_sequences(a.steps).into_iter().map(|s| bit_string(s.into_iter())).collect();
                match a.format {
                    Format::Json => render(&json!({ "outputs": outs }), a.io.pretty),
                    _ => outs.join("\n"),
                }
            }
        }
    };
    write_output(a.io.out.as_deref(), &out)
}

fn series_string(s: &RationalSeries) -> String {
    if s.den().is_one() {
        s.num().to_string()
    } else {
        format!("({})/({})", s.num(), s.den())
    }
}

fn windmill(a: WindmillArgs) -> Result<()> {
    let spec = WindmillSpec::new(parse_poly(&a.alpha)?, parse_poly(&a.beta)?, a.shifts.clone())?;
    let v = spec.v();
    let r = build_windmill(&spec).with_state(F2Vec::from_hex(&a.init, v)?, vec![Gf2Poly::zero(); v])?;
    if a.dump {
        let mut r = r;
        let mut lines = vec![rational_line(0, &r)];
        for t in 1..=a.steps {
            r.step();
            lines.push(rational_line(t, &r));
        }
        return write_output(a.out.as_deref(), &lines.join("\n"));
    }
    let conn = r.connection()?;
    let q = conn.numerator().clone();
    let horizon = a.horizon.unwrap_or(2 * q.degree().unwrap_or(0)).max(1);
    let rep = windmill_interleave_check(&r, horizon)?;
    let lengths = spec.vane_lengths();
    let value = json!({
        "connection_poly": q.to_string(),
        "det": series_string(&conn.det),
        "predicted_det": series_string(&spec.predicted_det()),
        "vane_lengths": lengths,
        "cells": lengths.iter().sum::<usize>(),
        "interleave": {
            "ok": rep.ok,
            "sigma": rep.sigma,
            "min_poly": rep.min_poly.to_string(),
            "linear_complexity": rep.linear_complexity(),
            "horizon": horizon,
        },
        "rlfsm": serde_json::from_str::<Value>(&io::rlfsm_to_json(&r, false)).expect("own JSON parses"),
    });
    write_output(a.out.as_deref(), &render(&value, a.pretty))
}

fn poly(c: PolyCommand) -> Result<()> {
    let v = match c {
        PolyCommand::Check { poly, factors } => {
            let g = parse_poly(&poly)?;
            let factors = load_factors(&factors)?;
            let p = is_primitive(&g, &factors);
            let mut v = json!({
                "poly": g.to_string(),
                "hex": g.to_hex(),
                "degree": g.degree(),
                "irreducible": p.is_irreducible(),
                "primitive": primitive_value(p),
            });
            if let Ok(order) = x_order(&g, &factors) {
                v["order"] = json!(order.to_string());
            }
            v
        }
        PolyCommand::Minpoly { bits } => {
            let s: Vec<bool> = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    c => Err(invalid(format!("bad bit {c:?}"))),
                })
                .collect::<Result<_>>()?;
            let p = min_poly(&s);
            json!({ "min_poly": p.to_string(), "linear_complexity": p.degree().unwrap_or(0) })
        }
        PolyCommand::Series { num, den, terms } => {
            let s = RationalSeries::new(parse_poly(&num)?, parse_poly(&den)?)?;
            json!({ "series": series_string(&s), "bits": bit_string(s.expand(terms).bits().iter().copied()) })
        }
    };
    write_output(None, &v.to_string())
}

fn expand(a: ExpandArgs) -> Result<()> {
    let text = read_input(a.io.input.as_deref())?;
    let r = io::parse_rlfsm(&text)?;
    let strategy = match a.strategy {
        Strategy::PerCoefficient => ExpansionStrategy::PerCoefficient(EntryOrder::RowMajor),
        Strategy::PerCoefficientCol => ExpansionStrategy::PerCoefficient(EntryOrder::ColumnMajor),
        Strategy::PerRow => ExpansionStrategy::PerRow,
    };
    let e = expand_rlfsm(&r, &strategy)?;
    let automaton = io::lfsm_to_json(&e.lfsm, a.io.pretty);
    let mut v = json!({
        "cells": e.n(),
        "connection_poly": e.lfsm.connection_polynomial().to_string(),
        "rational_connection": r.connection()?.numerator().to_string(),
    });
    match &a.io.out {
        Some(p) => write_output(Some(p), &automaton)?,
        None => v["automaton"] = serde_json::from_str(&automaton).expect("own JSON parses"),
    }
    write_output(None, &render(&v, a.io.pretty))
}
