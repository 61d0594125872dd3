use std::path::Path;
use std::time::Instant;

use lensinv_core::error::Error;
use lensinv_core::hennings::{self, z_henn_lens_closed, z_henn_with_data, MorseLink};
use lensinv_core::hopf::{
    cyclic_group_algebra, drinfeld_double, factorizability_rank, ribbon_criterion,
    structure_from_json, structure_to_json, verify_axioms as check_axioms, verify_axioms_with,
    AxiomOptions, AxiomReport, RibbonHopfData, Scalar,
};
use lensinv_core::kuperberg::{
    kuperberg_eval, lens_exponent_data, lens_indices, normalize_lens, z_kup_lens,
    KuperbergExponentData,
};
use lensinv_core::uqsl2::build_uqsl2;
use num_integer::Integer;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{decimal, emit, print_json, runtime_cell, runtime_json, scalar_json};
use crate::{Common, Failure, Format, Method};

fn algebra(l: u32) -> Result<RibbonHopfData, Failure> {
    if l < 3 || l.is_multiple_of(2) {
        return Err(Failure::Invalid(format!(
            "l must be odd and at least 3, got {l}"
        )));
    }
    Ok(build_uqsl2(l)?)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Failure::Invalid(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Kuperberg => "kuperberg",
        Method::HenningsClosed => "hennings-closed",
        Method::HenningsDiagram => "hennings-diagram",
        Method::All => "all",
    }
}

struct MethodResult {
    method: Method,
    value: Option<Scalar>,
    note: String,
    ms: Option<u128>,
}

fn evaluate(
    method: Method,
    p: i64,
    q: i64,
    h: &RibbonHopfData,
    budget: usize,
) -> Result<Scalar, Error> {
    match method {
        Method::Kuperberg => z_kup_lens(p, q, h, budget),
        Method::HenningsClosed => z_henn_lens_closed(p, q, h, budget),
        Method::HenningsDiagram => {
            Ok(z_henn_with_data(&hennings::chain_mail(p, q)?, h, budget)?.value)
        }
        Method::All => unreachable!(),
    }
}

pub fn invariant(
    p: i64,
    q: i64,
    l: u32,
    method: Method,
    timing: bool,
    common: Common,
) -> Result<(), Failure> {
    let (p, q) = normalize_lens(p, q)?;
    let (p, q) = (p as i64, q as i64);
    let h = algebra(l)?;
    let methods = match method {
        Method::All => vec![
            Method::Kuperberg,
            Method::HenningsClosed,
            Method::HenningsDiagram,
        ],
        m => vec![m],
    };
    let mut results = Vec::new();
    for m in methods {
        let t = Instant::now();
        let (value, note) = match evaluate(m, p, q, &h, common.budget) {
            Ok(v) => (Some(v), String::new()),
            // with --method all the diagram is reported only when it fits
            Err(Error::Budget { limit, .. }) if method == Method::All => {
                (None, format!("skipped: more than {limit} terms"))
            }
            Err(Error::InvalidInput(e))
                if method == Method::All && m == Method::HenningsDiagram =>
            {
                (None, format!("skipped: {e}"))
            }
            Err(e) => return Err(e.into()),
        };
        let ms = timing.then(|| t.elapsed().as_millis());
        results.push(MethodResult {
            method: m,
            value,
            note,
            ms,
        });
    }
    let values: Vec<&Scalar> = results.iter().filter_map(|r| r.value.as_ref()).collect();
    let equal = values.windows(2).all(|w| w[0] == w[1]);

    let header = [
        "method",
        "p",
        "q",
        "l",
        "value",
        "decimal",
        "runtime_ms",
        "note",
    ];
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|r| {
            vec![
                method_name(r.method).to_string(),
                p.to_string(),
                q.to_string(),
                l.to_string(),
                r.value.as_ref().map(|v| v.to_string()).unwrap_or_default(),
                r.value.as_ref().map(decimal).unwrap_or_default(),
                runtime_cell(r.ms),
                r.note.clone(),
            ]
        })
        .collect();
    emit(common.format, &header, &rows, || {
        json!({
            "p": p,
            "q": q,
            "l": l,
            "equal": equal,
            "results": results.iter().map(|r| json!({
                "method": method_name(r.method),
                "value": r.value.as_ref().map_or(Value::Null, scalar_json),
                "decimal": r.value.as_ref().map(decimal),
                "runtime_ms": runtime_json(r.ms),
                "note": r.note,
            })).collect::<Vec<_>>(),
        })
    })?;
    if equal {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "methods disagree for L({p},{q}) at l = {l}"
        )))
    }
}

struct GridRow {
    p: i64,
    q: i64,
    kup: Scalar,
    henn: Scalar,
    equal: bool,
    ms: Option<u128>,
}

pub fn verify_theorem(
    l: u32,
    pmax: i64,
    workers: usize,
    timing: bool,
    common: Common,
) -> Result<(), Failure> {
    let h = algebra(l)?;
    let pairs: Vec<(i64, i64)> = (2..=pmax)
        .flat_map(|p| (1..p).filter(move |q| q.gcd(&p) == 1).map(move |q| (p, q)))
        .collect();
    if pairs.is_empty() {
        eprintln!("warning: no coprime pairs 1 ≤ q < p ≤ {pmax}; nothing to check");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    let budget = common.budget;
    let rows: Vec<Result<GridRow, Error>> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(p, q)| {
                let t = Instant::now();
                let kup = z_kup_lens(p, q, &h, budget)?;
                let henn = z_henn_lens_closed(p, q, &h, budget)?;
                let equal = kup == henn && kup.conjugate() == kup;
                let ms = timing.then(|| t.elapsed().as_millis());
                Ok(GridRow {
                    p,
                    q,
                    kup,
                    henn,
                    equal,
                    ms,
                })
            })
            .collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;

    let header = ["p", "q", "l", "z_kup", "z_henn_sq", "equal", "runtime_ms"];
    let text_header = [
        "p",
        "q",
        "l",
        "z_kup",
        "z_henn_sq",
        "equal",
        "runtime_ms",
        "decimal",
    ];
    let cells = |r: &GridRow| {
        vec![
            r.p.to_string(),
            r.q.to_string(),
            l.to_string(),
            r.kup.to_string(),
            r.henn.to_string(),
            r.equal.to_string(),
            runtime_cell(r.ms),
        ]
    };
    let json_rows = || {
        Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "p": r.p,
                        "q": r.q,
                        "l": l,
                        "z_kup": scalar_json(&r.kup),
                        "z_henn_sq": scalar_json(&r.henn),
                        "equal": r.equal,
                        "runtime_ms": runtime_json(r.ms),
                    })
                })
                .collect(),
        )
    };
    if common.format == Format::Text {
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let mut c = cells(r);
                c.push(decimal(&r.kup));
                c
            })
            .collect();
        emit(Format::Text, &text_header, &table, json_rows)?;
    } else {
        let table: Vec<Vec<String>> = rows.iter().map(cells).collect();
        emit(common.format, &header, &table, json_rows)?;
    }

    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.equal)
        .map(|r| {
            format!(
                "L({},{}): z_kup = {}, z_henn_sq = {}",
                r.p, r.q, r.kup, r.henn
            )
        })
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "theorem fails at l = {l}:\n  {}",
            bad.join("\n  ")
        )))
    }
}

fn report_output(rep: &AxiomReport, format: Format) -> Result<(), Failure> {
    let rows: Vec<Vec<String>> = rep
        .checks
        .iter()
        .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
        .collect();
    match format {
        Format::Text => {
            print!("{rep}");
            println!(
                "{}",
                if rep.passed() {
                    "all checks passed"
                } else {
                    "some checks failed"
                }
            );
            Ok(())
        }
        f => emit(f, &["check", "passed", "detail"], &rows, || {
            json!({
                "passed": rep.passed(),
                "checks": rep.checks.iter().map(|c| json!({
                    "name": c.name, "passed": c.passed, "detail": c.detail,
                })).collect::<Vec<_>>(),
            })
        }),
    }
}

pub fn verify_axioms(
    uqsl2: Option<u32>,
    file: Option<std::path::PathBuf>,
    exhaustive: bool,
    common: Common,
) -> Result<(), Failure> {
    let rep = match (uqsl2, file) {
        (Some(l), _) => algebra(l)?.verify(exhaustive, 400),
        (None, Some(path)) => {
            let f = structure_from_json(&read(&path)?)?;
            let opts = AxiomOptions {
                exhaustive,
                ..AxiomOptions::default()
            };
            verify_axioms_with(&f.structure, f.r.as_ref(), f.theta.as_ref(), &opts)
        }
        (None, None) => return Err(Failure::Invalid("give --uqsl2 or --file".into())),
    };
    report_output(&rep, common.format)?;
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} axiom check(s) failed",
            rep.failures().len()
        )))
    }
}

pub fn double(file: &Path, out: Option<&Path>, common: Common) -> Result<(), Failure> {
    let f = structure_from_json(&read(file)?)?;
    let rep = check_axioms(&f.structure, f.r.as_ref(), f.theta.as_ref());
    if !rep.passed() {
        eprint!("{rep}");
        return Err(Failure::Check(
            "the input structure fails its axioms".into(),
        ));
    }
    let (d, r) = drinfeld_double(&f.structure)?;
    let rank = factorizability_rank(&d, &r)?;
    let crit = ribbon_criterion(&f.structure)?;
    let text = serde_json::to_string_pretty(&structure_to_json(&d, Some(&r), None))
        .map_err(|e| Failure::Check(e.to_string()))?;
    write_or_print(out, &text)?;

    let labels = f.structure.labels();
    let witness = crit.witness.as_ref().map(|(g, beta)| {
        let vals: Vec<String> = beta.values().iter().map(|v| v.to_string()).collect();
        (g.display_with(labels), format!("[{}]", vals.join(", ")))
    });
    let report = json!({
        "dim": d.dim(),
        "factorizability_rank": rank,
        "factorizable": rank == d.dim(),
        "ribbon_criterion": crit.holds(),
        "grouplikes": crit.grouplikes,
        "characters": crit.characters,
        "witness": witness.as_ref().map(|(g, b)| json!({"grouplike": g, "character": b})),
    });
    // with the double on stdout the report goes to stderr
    let summary = match common.format {
        Format::Json => {
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Check(e.to_string()))?
        }
        _ => {
            let mut s = format!(
                "dim D(H) = {}\nfactorizability rank {} of {}: {}\nribbon criterion: {} ({} grouplikes, {} characters)",
                d.dim(),
                rank,
                d.dim(),
                if rank == d.dim() { "factorizable" } else { "not factorizable" },
                if crit.holds() { "holds" } else { "fails" },
                crit.grouplikes,
                crit.characters,
            );
            if let Some((g, b)) = &witness {
                s.push_str(&format!("\nwitness: l = {g}, β = {b}"));
            }
            s
        }
    };
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

pub fn link(file: &Path, l: u32, common: Common) -> Result<(), Failure> {
    let link: MorseLink = read(file)?.parse()?;
    let h = algebra(l)?;
    let ev = z_henn_with_data(&link, &h, common.budget)?;
    let lk = &ev.linking;
    let matrix: Vec<String> = lk.matrix.iter().map(|r| format!("{r:?}")).collect();
    match common.format {
        Format::Json => print_json(&json!({
            "l": l,
            "components": lk.c,
            "crossings": link.crossing_count(),
            "linking_matrix": lk.matrix,
            "signature": lk.sigma,
            "tr": scalar_json(&ev.tr),
            "z_henn": scalar_json(&ev.value),
        })),
        f => emit(
            f,
            &["quantity", "value", "decimal"],
            &[
                vec!["components".into(), lk.c.to_string(), String::new()],
                vec!["linking matrix".into(), matrix.join(" "), String::new()],
                vec!["signature".into(), lk.sigma.to_string(), String::new()],
                vec!["TR".into(), ev.tr.to_string(), decimal(&ev.tr)],
                vec!["z_henn".into(), ev.value.to_string(), decimal(&ev.value)],
            ],
            || Value::Null,
        ),
    }
}

pub fn chain_mail(p: i64, q: i64) -> Result<(), Failure> {
    print!("{}", hennings::chain_mail(p, q)?.to_text());
    Ok(())
}

pub fn exponents(
    p: Option<i64>,
    q: Option<i64>,
    file: Option<&Path>,
    l: u32,
    common: Common,
) -> Result<(), Failure> {
    if let Some(path) = file {
        let v: Value =
            serde_json::from_str(&read(path)?).map_err(|e| Failure::Invalid(e.to_string()))?;
        let data = KuperbergExponentData::from_json(&v)?;
        let h = algebra(l)?;
        let z = kuperberg_eval(&data, &h, common.budget)?;
        return emit(
            common.format,
            &["l", "value", "decimal"],
            &[vec![l.to_string(), z.to_string(), decimal(&z)]],
            || json!({"l": l, "value": scalar_json(&z), "decimal": decimal(&z)}),
        );
    }
    let (Some(p), Some(q)) = (p, q) else {
        return Err(Failure::Invalid("give --p and --q, or --file".into()));
    };
    let data = lens_exponent_data(&lens_indices(p, q)?);
    match common.format {
        Format::Json | Format::Text => print_json(&data.to_json()),
        Format::Csv => {
            let rows: Vec<Vec<String>> = data
                .legs
                .iter()
                .zip(&data.exponents)
                .map(|(leg, e)| vec![leg.to_string(), e.to_string(), data.g_power.to_string()])
                .collect();
            crate::output::print_csv(&["leg", "exponent", "g_power"], &rows)
        }
    }
}

pub fn export(
    uqsl2: Option<u32>,
    cyclic: Option<usize>,
    l: u32,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let v = match (uqsl2, cyclic) {
        (Some(l), _) => {
            let h = algebra(l)?;
            structure_to_json(&h.structure, Some(&h.r), Some(&h.theta))
        }
        (None, Some(n)) => structure_to_json(&cyclic_group_algebra(n, l)?, None, None),
        (None, None) => return Err(Failure::Invalid("give --uqsl2 or --cyclic".into())),
    };
    let text = serde_json::to_string_pretty(&v).map_err(|e| Failure::Check(e.to_string()))?;
    write_or_print(out, &text)
}
