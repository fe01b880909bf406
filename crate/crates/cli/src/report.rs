use std::collections::BTreeMap;

use flagflux::gcs::{BlockSpec, IntegrabilityReport};
use flagflux::tduality::CertificateSummary;
use flagflux::{
    build_root_system, complementary_positive_roots, correspond, dualize, duality_certificate, graded_ideal,
    integrability_necessary, isotropy_summands, jacobi_check, make_block, nilradical_presentation, parse_form,
    parse_malcev, phi_conjugate, search_targets, selfdual_flux, FlagSpec, QBlock, QDualization, QFlowingFlag, QNilradical,
    QTriple, Rational, Root, TargetSearch,
};
use serde_json::{json, Value};

use crate::config::{CommandName, Job};
use crate::error::CliError;

type Outcome = Result<Value, CliError>;

pub fn run(job: &Job) -> Outcome {
    let body = match job.command {
        CommandName::RootSystem => root_system(job)?,
        CommandName::Nilradical => nilradical(job)?,
        CommandName::Dualize => dualize_cmd(job)?,
        CommandName::Correspond => correspond_cmd(job)?,
        CommandName::Selfdual => selfdual(job)?,
        CommandName::GcsTransport => gcs_transport(job)?,
    };
    let mut out = json!({ "command": job.command.as_str(), "config": job });
    if let (Value::Object(out), Value::Object(body)) = (&mut out, body) {
        out.extend(body);
    }
    Ok(out)
}

fn flag(job: &Job) -> Result<FlagSpec, CliError> {
    let rank = job.rank.ok_or_else(|| CliError::Parse("--rank is required".into()))?;
    Ok(FlagSpec::new(job.series, rank, job.theta.clone())?)
}

fn nil(job: &Job) -> Result<QNilradical, CliError> {
    Ok(nilradical_presentation(&flag(job)?)?)
}

fn roots(list: &[Root]) -> Vec<String> {
    list.iter().map(Root::to_string).collect()
}

fn legend(n: &QNilradical) -> Value {
    json!(n
        .legend_entries()
        .iter()
        .map(|e| json!({ "index": e.index, "root": e.root.to_string(), "summand": e.summand }))
        .collect::<Vec<_>>())
}

fn summands(n: &QNilradical) -> Value {
    json!(n
        .summands
        .iter()
        .enumerate()
        .map(|(i, s)| json!({ "summand": i + 1, "signature": s.signature, "dim": s.dim, "roots": roots(&s.roots) }))
        .collect::<Vec<_>>())
}

fn ideal_of(job: &Job, n: Option<&QNilradical>) -> Result<Vec<usize>, CliError> {
    match (&job.ideal, &job.ideal_summands, n) {
        (Some(ideal), _, _) => Ok(ideal.clone()),
        (None, Some(s), Some(n)) => Ok(graded_ideal(n, s)?),
        _ => Err(CliError::Parse("no ideal given".into())),
    }
}

fn root_system(job: &Job) -> Outcome {
    let spec = flag(job)?;
    let rs = build_root_system(spec.series, spec.rank)?;
    let complement = complementary_positive_roots(&rs, &spec.theta)?;
    let parts = isotropy_summands(&rs, &spec.theta)?;
    Ok(json!({
        "flag": spec.to_string(),
        "positive_roots": roots(&rs.positive_roots),
        "complementary_roots": roots(&complement),
        "dim": complement.len(),
        "summand_dims": parts.iter().map(|s| s.dim).collect::<Vec<_>>(),
    }))
}

fn nilradical(job: &Job) -> Outcome {
    let n = nil(job)?;
    let jacobi = jacobi_check(&n.presentation);
    Ok(json!({
        "flag": n.spec.to_string(),
        "dim": n.dim(),
        "n": n.presentation.to_string(),
        "legend": legend(&n),
        "summands": summands(&n),
        "jacobi": jacobi.passes,
    }))
}

fn dual_fields(d: &QDualization) -> Result<Value, CliError> {
    let cert = duality_certificate(d)?;
    Ok(json!({
        "admissibility": d.admissibility,
        "reordering": d.reordering,
        "n_dual": d.dual.algebra.to_string(),
        "H_dual": d.dual.flux.to_string(),
        "ideal_dual": d.dual.ideal,
        "certificate": CertificateSummary::from(&cert),
    }))
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

fn dualize_cmd(job: &Job) -> Outcome {
    let (algebra, n) = match &job.algebra {
        Some(text) => (parse_malcev(text)?, None),
        None => {
            let n = nil(job)?;
            (n.presentation.clone(), Some(n))
        }
    };
    let ideal = ideal_of(job, n.as_ref())?;
    let flux = parse_form(&job.flux, 3, Some(algebra.dim()))?;
    let triple = QTriple::new(algebra, ideal, flux)?;
    let d = dualize(&triple)?;
    let mut head = json!({
        "n": triple.algebra.to_string(),
        "ideal": triple.ideal,
        "H": triple.flux.to_string(),
    });
    if let Some(n) = &n {
        head = merge(head, json!({ "flag": n.spec.to_string(), "legend": legend(n) }));
    }
    Ok(merge(head, dual_fields(&d)?))
}

fn search_fields(s: &TargetSearch) -> Value {
    json!({
        "rank_bound": s.rank_bound,
        "targets": s.targets.iter().map(|t| json!({
            "name": t.pretty_name,
            "flag": t.spec.to_string(),
            "theta": t.spec.theta,
            "witness": t.witness,
        })).collect::<Vec<_>>(),
        "examined": s.examined,
        "ruled_out": s.ruled_out,
        "inconclusive": s.inconclusive.iter().map(FlagSpec::to_string).collect::<Vec<_>>(),
        "reason": s.reason,
    })
}

fn run_correspond(job: &Job) -> Result<flagflux::Correspondence<Rational>, CliError> {
    let spec = flag(job)?;
    let n = nilradical_presentation::<Rational>(&spec)?;
    let ideal = ideal_of(job, Some(&n))?;
    let flux = parse_form(&job.flux, 3, Some(n.dim()))?;
    Ok(correspond(&QFlowingFlag::new(spec, flux)?, &ideal, job.rank_bound, job.budget)?)
}

fn correspond_cmd(job: &Job) -> Outcome {
    if let Some(text) = &job.algebra {
        let algebra = parse_malcev(text)?;
        let ideal = ideal_of(job, None)?;
        let flux = parse_form(&job.flux, 3, Some(algebra.dim()))?;
        let triple = QTriple::new(algebra, ideal, flux)?;
        let d = dualize(&triple)?;
        let search = search_targets(&d.dual.algebra, job.rank_bound, job.budget)?;
        let head = json!({
            "n": triple.algebra.to_string(),
            "ideal": triple.ideal,
            "H": triple.flux.to_string(),
        });
        return Ok(merge(merge(head, dual_fields(&d)?), search_fields(&search)));
    }
    let c = run_correspond(job)?;
    let head = json!({
        "flag": c.nilradical.spec.to_string(),
        "legend": legend(&c.nilradical),
        "summand_dims": c.nilradical.summands.iter().map(|s| s.dim).collect::<Vec<_>>(),
        "n": c.triple.algebra.to_string(),
        "ideal": c.triple.ideal,
        "H": c.triple.flux.to_string(),
    });
    Ok(merge(merge(head, dual_fields(&c.dualization)?), search_fields(&c.search)))
}

fn selfdual(job: &Job) -> Outcome {
    let r = selfdual_flux::<Rational>(&flag(job)?, job.budget)?;
    Ok(json!({
        "flag": r.spec.to_string(),
        "n": r.triple.algebra.to_string(),
        "ideal": r.triple.ideal,
        "H": r.triple.flux.to_string(),
        "dH": r.dh.to_string(),
        "admissibility": r.admissibility,
        "n_dual": r.dual.as_ref().map(|d| d.algebra.to_string()),
        "H_dual": r.dual.as_ref().map(|d| d.flux.to_string()),
        "selfdual": r.selfdual,
        "witness": r.witness,
    }))
}

fn root_key(root: &Root) -> [String; 2] {
    let coeffs: Vec<String> = root.coeffs.iter().map(i32::to_string).collect();
    [root.to_string(), coeffs.join(",")]
}

fn assign_blocks(n: &QNilradical, blocks: &BTreeMap<String, BlockSpec>) -> Result<Vec<QBlock>, CliError> {
    let mut used = 0;
    let mut out = Vec::new();
    for root in &n.legend {
        let spec = root_key(root)
            .iter()
            .find_map(|k| blocks.get(k))
            .ok_or_else(|| CliError::Domain {
                kind: "missing_block",
                message: format!("no block for root {root}"),
            })?;
        used += 1;
        out.push(make_block(&spec.to_kind()?)?);
    }
    if used != blocks.len() {
        return Err(CliError::Domain {
            kind: "size_mismatch",
            message: format!("{} blocks given for {} roots", blocks.len(), used),
        });
    }
    Ok(out)
}

fn matrix_rows(b: &QBlock) -> Vec<String> {
    let n = b.matrix.size();
    (0..n)
        .map(|i| {
            let row: Vec<String> = (0..n).map(|j| b.matrix.get(i, j).to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect()
}

fn integrability(r: &IntegrabilityReport) -> Value {
    json!(r)
}

fn gcs_transport(job: &Job) -> Outcome {
    let c = run_correspond(job)?;
    let n = &c.nilradical;
    let blocks = assign_blocks(n, job.blocks.as_ref().expect("validated"))?;
    let here = integrability_necessary(&blocks, &n.summands)?;
    let moved: Vec<QBlock> = blocks.iter().map(phi_conjugate).collect::<Result<_, _>>()?;

    // dual slot -> original index of the source root it came from
    let dim = n.dim();
    let mut origin: Vec<usize> = (1..=dim).collect();
    if let Some(map) = &c.dualization.reordering {
        for (old, &new) in map.iter().enumerate() {
            origin[new - 1] = old + 1;
        }
    }

    let source: Vec<Value> = n
        .legend
        .iter()
        .zip(&blocks)
        .map(|(root, b)| json!({ "root": root.to_string(), "class": b.class }))
        .collect();
    let mut targets = Vec::new();
    for t in &c.search.targets {
        let tn: QNilradical = nilradical_presentation(&t.spec)?;
        let placed: Vec<QBlock> = t
            .witness
            .perm
            .iter()
            .map(|&slot| moved[origin[slot - 1] - 1].clone())
            .collect();
        let there = integrability_necessary(&placed, &tn.summands)?;
        let rows: Vec<Value> = tn
            .legend
            .iter()
            .zip(&t.witness.perm)
            .zip(&placed)
            .map(|((root, &slot), b)| {
                json!({
                    "root": root.to_string(),
                    "from": n.legend[origin[slot - 1] - 1].to_string(),
                    "class": b.class,
                    "matrix": matrix_rows(b),
                })
            })
            .collect();
        targets.push(json!({
            "name": t.pretty_name,
            "flag": t.spec.to_string(),
            "blocks": rows,
            "integrability": integrability(&there),
        }));
    }
    Ok(json!({
        "flag": n.spec.to_string(),
        "ideal": c.triple.ideal,
        "n_dual": c.dualization.dual.algebra.to_string(),
        "H_dual": c.dualization.dual.flux.to_string(),
        "source": { "blocks": source, "integrability": integrability(&here) },
        "targets": targets,
        "reason": c.search.reason,
    }))
}
