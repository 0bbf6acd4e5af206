use std::fs;
use std::io::Write;

use qhomfly::corpus::{run_check, Check, CheckReport};
use qhomfly::holonomy::{
    fit_and_validate, guess_recurrence, GuessOptions, RecurrenceOperator, SequenceWindow, ValidationReport,
};
use qhomfly::skein::natural_start;
use qhomfly::twobridge::{enumerate_corpus, parse_fraction};
use qhomfly::{eval_reduced, ContinuedFraction, Error, Normalize, Start, TwoBridgeLink};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::{write_atomic, Cache, CacheKey};
use crate::record::{CliError, ResultRecord, Specialization};
use crate::{CorpusArgs, EvalArgs, EvalOptions, Format, LinkArgs, NormalizeArg, RecurrenceArgs, SequenceArgs, StartArg};

type CmdResult = Result<u8, CliError>;

fn resolve_link(args: &LinkArgs) -> Result<TwoBridgeLink, CliError> {
    let link = match (&args.cf, &args.fraction) {
        (Some(cf), _) => TwoBridgeLink::new(cf.parse::<ContinuedFraction>()?)?,
        (None, Some(fr)) => {
            let (p, q) = parse_fraction(fr)?;
            TwoBridgeLink::from_fraction(p, q)?
        }
        (None, None) => return Err(CliError::usage("one of --cf or --fraction is required")),
    };
    Ok(link)
}

fn resolve_start(arg: StartArg, link: &TwoBridgeLink) -> Start {
    match arg {
        StartArg::Auto => natural_start(link),
        StartArg::Up => Start::Up,
        StartArg::Op => Start::Op,
    }
}

fn normalize_of(arg: NormalizeArg) -> Normalize {
    match arg {
        NormalizeArg::Canonical => Normalize::Canonical,
        NormalizeArg::Raw => Normalize::Raw,
    }
}

fn check_budget(record: &ResultRecord, max_terms: Option<usize>) -> Result<(), CliError> {
    match max_terms {
        Some(max) if record.value.num_terms() > max => Err(Error::Budget(format!(
            "color {} has {} terms, more than the limit of {max}",
            record.color,
            record.value.num_terms()
        ))
        .into()),
        _ => Ok(()),
    }
}

/// The record for one color and its serialized form, from the cache when
/// possible. The serialized form is exactly what a fresh run prints.
fn compute_record(
    link: &TwoBridgeLink,
    color: u32,
    opts: &EvalOptions,
    cache: &Cache,
) -> Result<(String, ResultRecord), CliError> {
    let start = resolve_start(opts.start, link);
    let normalize = normalize_of(opts.normalize);
    let key = CacheKey { cf: link.cf.entries().to_vec(), color, start, normalize };
    if let Some(text) = cache.get(&key) {
        if let Ok(record) = serde_json::from_str::<ResultRecord>(&text) {
            check_budget(&record, opts.max_terms)?;
            return Ok((text, record));
        }
    }
    let value = eval_reduced(link, color, start, normalize)?;
    let record = ResultRecord {
        cf: link.cf.entries().to_vec(),
        fraction: link.fraction_string(),
        color,
        start: start.name().into(),
        normalized: normalize == Normalize::Canonical,
        components: link.components,
        specialization: None,
        value,
    };
    check_budget(&record, opts.max_terms)?;
    let text = serde_json::to_string(&record).expect("records serialize");
    cache.put(&key, &text);
    Ok((text, record))
}

pub fn eval(args: &EvalArgs, cache: &Cache) -> CmdResult {
    let link = resolve_link(&args.link)?;
    let spec: Option<Specialization> = args.specialize.as_deref().map(str::parse).transpose()?;
    let (text, mut record) = compute_record(&link, args.color, &args.opts, cache)?;
    let json = match spec {
        None => text,
        Some(spec) => {
            let mut value = spec.apply(&record.value, &link, args.color)?;
            if record.normalized && !value.is_zero() {
                value = value.canonicalize()?;
            }
            record.value = value;
            record.specialization = Some(spec.to_string());
            serde_json::to_string(&record).expect("records serialize")
        }
    };
    match args.format {
        Format::Json => println!("{json}"),
        Format::Text => println!("{}", record.value),
    }
    Ok(0)
}

fn json_array(items: &[String]) -> String {
    if items.is_empty() {
        return "[]\n".into();
    }
    format!("[\n{}\n]\n", items.join(",\n"))
}

pub fn sequence(args: &SequenceArgs, cache: &Cache) -> CmdResult {
    let link = resolve_link(&args.link)?;
    let records = (0..=args.max_color)
        .into_par_iter()
        .map(|j| compute_record(&link, j, &args.opts, cache).map(|r| r.0))
        .collect::<Result<Vec<String>, CliError>>()?;
    let out = json_array(&records);
    match &args.out {
        Some(path) => write_atomic(path, out.as_bytes())
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(out.as_bytes())
            .map_err(|e| CliError::io(e.to_string()))?,
    }
    Ok(0)
}

/// Reads a sequence file: an array of result records with consecutive
/// colors, or an array of bare scalars starting at color 0.
fn read_window(path: &std::path::Path) -> Result<SequenceWindow, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let malformed = |e: serde_json::Error| CliError::usage(format!("{}: {e}", path.display()));
    let items: Vec<serde_json::Value> = serde_json::from_str(&text).map_err(malformed)?;
    if items.first().is_some_and(|v| v.get("value").is_some()) {
        let records = items
            .into_iter()
            .map(serde_json::from_value::<ResultRecord>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(malformed)?;
        let start = records.first().map_or(0, |r| r.color);
        for (offset, r) in records.iter().enumerate() {
            if r.color != start + offset as u32 {
                return Err(CliError::usage(format!(
                    "colors must be consecutive: expected {}, found {}",
                    start + offset as u32,
                    r.color
                )));
            }
        }
        Ok(SequenceWindow::new(start, records.into_iter().map(|r| r.value).collect())?)
    } else {
        let values = items
            .into_iter()
            .map(serde_json::from_value)
            .collect::<Result<Vec<_>, _>>()
            .map_err(malformed)?;
        Ok(SequenceWindow::new(0, values)?)
    }
}

#[derive(Serialize)]
struct CheckedColor {
    color: u32,
    ok: bool,
}

#[derive(Serialize)]
struct ValidationOut {
    passed: bool,
    checked: Vec<CheckedColor>,
}

#[derive(Serialize)]
struct FitRange {
    from: u32,
    to: u32,
}

#[derive(Serialize)]
struct RecurrenceOut<'a> {
    operator: Option<&'a RecurrenceOperator>,
    a_free: Option<bool>,
    fit: FitRange,
    validation: Option<ValidationOut>,
}

fn print_recurrence(
    args: &RecurrenceArgs,
    window: &SequenceWindow,
    found: Option<(RecurrenceOperator, Option<ValidationReport>)>,
) {
    let fit_end = window.start + (window.len() - args.validate) as u32 - 1;
    match args.format {
        Format::Json => {
            let out = RecurrenceOut {
                operator: found.as_ref().map(|f| &f.0),
                a_free: found.as_ref().map(|f| f.0.is_a_free()),
                fit: FitRange { from: window.start, to: fit_end },
                validation: found.as_ref().and_then(|f| f.1.as_ref()).map(|r| ValidationOut {
                    passed: r.passed,
                    checked: r.checked.iter().map(|&(color, ok)| CheckedColor { color, ok }).collect(),
                }),
            };
            println!("{}", serde_json::to_string(&out).expect("operators serialize"));
        }
        Format::Text => match found {
            None => println!("none found"),
            Some((op, report)) => {
                println!("operator: {op}");
                println!("order {}, mdeg {}, a-free: {}", op.order(), op.mdeg(), op.is_a_free());
                println!("fit on colors {}..{fit_end}", window.start);
                if let Some(report) = report {
                    let first = report.checked.first().map_or(0, |c| c.0);
                    let last = report.checked.last().map_or(0, |c| c.0);
                    match report.first_failure() {
                        None => println!("validation: pass on colors {first}..{last}"),
                        Some(n) => println!("validation: FAIL at color {n}"),
                    }
                }
            }
        },
    }
}

pub fn recurrence(args: &RecurrenceArgs) -> CmdResult {
    let window = read_window(&args.input)?;
    let opts = GuessOptions { a_free: args.a_free, term_budget: args.term_budget };
    let found = if args.validate == 0 {
        guess_recurrence(&window, args.max_order, args.max_mdeg, opts)?.map(|op| (op, None))
    } else {
        fit_and_validate(&window, args.max_order, args.max_mdeg, args.validate, opts)?
            .map(|(op, report)| (op, Some(report)))
    };
    let failed = found.as_ref().is_some_and(|(_, r)| r.as_ref().is_some_and(|r| !r.passed));
    print_recurrence(args, &window, found);
    Ok(if failed { 1 } else { 0 })
}

#[derive(Serialize)]
struct CorpusSummary {
    max_crossings: u32,
    links: usize,
    passed: bool,
    checks: Vec<CheckReport>,
}

pub fn corpus(args: &CorpusArgs) -> CmdResult {
    let checks: Vec<Check> = match &args.checks {
        None => Check::ALL.to_vec(),
        Some(names) => names.iter().map(|n| n.parse()).collect::<Result<_, Error>>()?,
    };
    let links = enumerate_corpus(args.max_crossings);
    let reports: Vec<_> = checks.iter().map(|&c| run_check(c, &links)).collect();
    for r in &reports {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        eprintln!("{}: {verdict} ({} cases, {} failures)", r.check, r.cases, r.failures.len());
    }
    let passed = reports.iter().all(|r| r.passed());
    let summary = CorpusSummary { max_crossings: args.max_crossings, links: links.len(), passed, checks: reports };
    println!("{}", serde_json::to_string_pretty(&summary).expect("reports serialize"));
    Ok(if passed { 0 } else { 1 })
}
