//! Runs criteria 1 to 9 at full scale and prints one line per criterion.

use std::time::Instant;

use bipolar_lab::enumerate::Enumerator;
use bipolar_lab::verify::{self, Options, Report};

type Criterion<'a> = Box<dyn FnOnce(&mut Enumerator) -> Report + 'a>;

#[test]
fn acceptance() {
    let opts = Options::default();
    let mut en = Enumerator::new(opts.e_max.max(opts.orbit_e_max));
    let runs: Vec<Criterion> = vec![
        Box::new(|en| verify::formula_agreement(en, &opts)),
        Box::new(|en| verify::bijection_roundtrips(en, &opts)),
        Box::new(|en| verify::growth_identities(en, &opts)),
        Box::new(|en| verify::orbit_proportions(en, &opts)),
        Box::new(|_| verify::orbit_fixtures()),
        Box::new(|en| verify::boundary_reaching_ratios(en, &opts)),
        Box::new(|_| verify::tableau_crosschecks()),
        Box::new(|_| verify::sampler_uniformity(&opts)),
        Box::new(|_| verify::rejection_statistics(&opts)),
    ];
    let mut failed = Vec::new();
    for run in runs {
        let start = Instant::now();
        let r = run(&mut en);
        println!("{} ({:.1}s)", r.line(), start.elapsed().as_secs_f64());
        if !r.passed {
            failed.push(r.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
