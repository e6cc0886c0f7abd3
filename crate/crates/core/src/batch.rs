//! Batch runs of experiment manifests.

use std::time::Instant;

use crate::bounds::verify_instance_with;
use crate::error::Result;
use crate::exec::Execution;
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::identities::check_identities;
use crate::io::{ExperimentManifest, Instance};
use crate::report::{CheckOutcome, RunSummary, VerificationReport};

#[derive(Clone, Debug, Default)]
pub struct BatchOutcome {
    /// Sorted by label, then type.
    pub reports: Vec<VerificationReport>,
    /// Sorted by label, then degree.
    pub checks: Vec<CheckOutcome>,
    pub summary: RunSummary,
}

fn run_one<F: Field>(field: &F, inst: &Instance, exec: Execution) -> Result<(Vec<VerificationReport>, Vec<CheckOutcome>)> {
    let m = inst.family.build(field.clone())?;
    let reports = inst
        .types
        .iter()
        .map(|&c| verify_instance_with(&m, c, inst.trials, inst.seed, exec))
        .collect::<Result<Vec<_>>>()?;
    let checks = if inst.identities && m.num_generators() >= 2 {
        check_identities(&m, inst.trials, inst.seed)?
    } else {
        Vec::new()
    };
    Ok((reports, checks))
}

/// Runs every instance over `field`. Instances fan out according to `exec`;
/// the output order does not depend on it.
pub fn run_instances<F: Field>(field: &F, instances: &[Instance], seed: u64, exec: Execution) -> Result<BatchOutcome> {
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut checks = Vec::new();
    for result in exec.map(instances, |inst| run_one(field, inst, exec)) {
        let (r, c) = result?;
        reports.extend(r);
        checks.extend(c);
    }
    reports.sort_by(|a, b| a.label.cmp(&b.label).then(a.c.cmp(&b.c)));
    // stable, so checks keep their per-degree order
    checks.sort_by(|a, b| a.label.cmp(&b.label).then(a.u.cmp(&b.u)));
    let mut summary = RunSummary::from_results(instances.len(), &reports, &checks, seed);
    summary.wall_time_ms = start.elapsed().as_millis();
    Ok(BatchOutcome { reports, checks, summary })
}

pub fn run_manifest(manifest: &ExperimentManifest, exec: Execution) -> Result<BatchOutcome> {
    let instances = manifest.instances();
    match manifest.field {
        FieldSpec::Prime(p) => run_instances(&PrimeField::new(p)?, &instances, manifest.seed, exec),
        FieldSpec::Rational => run_instances(&Rationals, &instances, manifest.seed, exec),
    }
}
