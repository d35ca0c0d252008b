//! Suite runners behind the CLI subcommands: each takes a seeded
//! configuration, runs its checks, and assembles a deterministic report.
//! Trial `k` always draws from stream `k` of the configured seed, so trials
//! are independent and the report bytes depend only on the configuration.

use crate::cmspace::{
    self, canonicalize, enumerate_jordan_shapes, im_membership, ineq_check, jordan_matrix,
    ker_dim_bruteforce, ker_dim_formula, point_from_coords, stab_commutant_bruteforce,
    stab_dim_formula, CmCoords, JordanData, JordanEntry,
};
use crate::daha::{
    build_rep, sample_character, sample_strongly_generic_character, tau_one_companion_spectrum,
    DahaError, DahaParams, Gl2zGen,
};
use crate::degen::{trig_dual_rep, verify_degenerate_relations, DegenParams, Flavor};
use crate::exact::Rat;
use crate::linalg::Matrix;
use crate::poisson::poisson_match;
use crate::report::{Check, Report};
use crate::rng::ExactRng;
use serde_json::json;

fn rat_json(x: &Rat) -> serde_json::Value {
    json!(x.to_string())
}

/// Relation suite: builds one bundle per trial from a seeded generic
/// character and verifies every defining relation exactly.
pub fn relation_suite(
    n: usize,
    tau: &Rat,
    seed: u64,
    trials: u64,
    perturb: bool,
) -> Result<Report, DahaError> {
    let params = DahaParams::new(n, tau.clone())?;
    let root = ExactRng::new(seed);
    let mut checks = Vec::new();
    for trial in 0..trials {
        let mut rng = root.split(trial);
        let chi = sample_character(n, &mut rng);
        let rep = build_rep(&params, &chi)?;
        let rep = if perturb && n >= 2 {
            rep.with_replaced_t(1, Matrix::identity(rep.dim()))
        } else {
            rep
        };
        checks.extend(
            rep.verify_relations()
                .into_iter()
                .map(|c| c.with_trial(trial)),
        );
    }
    Ok(Report::new(
        "verify",
        json!({
            "n": n,
            "tau": rat_json(tau),
            "seed": seed,
            "trials": trials,
            "perturb": perturb,
        }),
        checks,
    ))
}

/// Calogero-Moser map certificate per sampled character: diagonal
/// restriction of `X_1`, the product formula for the diagonal of the
/// restricted `Y_1`, and the twisted-commutator rank-one condition.
pub fn cm_map_suite(n: usize, tau: &Rat, seed: u64, trials: u64) -> Result<Report, DahaError> {
    let params = DahaParams::new(n, tau.clone())?;
    let root = ExactRng::new(seed);
    let mut checks = Vec::new();
    for trial in 0..trials {
        let mut rng = root.split(trial);
        let chi = sample_character(n, &mut rng);
        let rep = build_rep(&params, &chi)?;
        let out = rep.cm_map()?;
        let cert = &out.certificate;
        for (id, pass) in [
            ("cm:X-diagonal", cert.x_diagonal),
            ("cm:Y-diagonal-formula", cert.y_diagonal_formula),
            ("cm:rank-one", cert.rank_one),
        ] {
            let mut check = if pass {
                Check::passing(id, vec![])
            } else {
                Check::failing(id, vec![], json!({"character": chi}))
            };
            check.trial = Some(trial);
            checks.push(check);
        }
    }
    Ok(Report::new(
        "cm-map",
        json!({"n": n, "tau": rat_json(tau), "seed": seed, "trials": trials}),
        checks,
    ))
}

/// Central-element suite: the commutator identity, the spectrum on the
/// invariant space, and the tau = 1 companion spectrum.
pub fn z_spectrum_suite(n: usize, tau: &Rat, seed: u64, trials: u64) -> Result<Report, DahaError> {
    let params = DahaParams::new(n, tau.clone())?;
    let root = ExactRng::new(seed);
    let mut checks = Vec::new();
    for trial in 0..trials {
        let mut rng = root.split(trial);
        let chi = sample_character(n, &mut rng);
        let rep = build_rep(&params, &chi)?;
        let z_check = match rep.z_element() {
            Ok(_) => Check::passing("lemma:commutator-product", vec![]),
            Err(DahaError::CommutatorMismatch) => {
                Check::failing("lemma:commutator-product", vec![], json!({}))
            }
            Err(DahaError::SpectrumMismatch) => Check::failing("z-spectrum", vec![], json!({})),
            Err(e) => return Err(e),
        };
        checks.push(z_check.with_trial(trial));
        let companion = match tau_one_companion_spectrum(n, &chi) {
            Ok(_) => Check::passing("z-spectrum-tau-one-companion", vec![]),
            Err(_) => Check::failing("z-spectrum-tau-one-companion", vec![], json!({})),
        };
        checks.push(companion.with_trial(trial));
    }
    Ok(Report::new(
        "z-spec",
        json!({"n": n, "tau": rat_json(tau), "seed": seed, "trials": trials}),
        checks,
    ))
}

/// Chart round-trip suite: sampled coordinates must produce a valid point,
/// survive a unimodular conjugation, and canonicalize back to the sorted
/// coordinates.
pub fn chart_suite(n: usize, tau: &Rat, seed: u64, trials: u64) -> Result<Report, String> {
    let root = ExactRng::new(seed);
    let mut checks = Vec::new();
    for trial in 0..trials {
        let mut rng = root.split(trial);
        let lambda = rng.strongly_generic(tau, n);
        let q: Vec<Rat> = (0..n).map(|_| rng.nonzero_rat()).collect();
        let coords = CmCoords::new(lambda, q).map_err(|e| e.to_string())?;
        let point = match point_from_coords(tau, &coords) {
            Ok(p) => {
                checks.push(Check::passing("chart:defining-equation", vec![]).with_trial(trial));
                p
            }
            Err(e) => {
                checks.push(
                    Check::failing("chart:defining-equation", vec![], json!({"error": e.to_string()}))
                        .with_trial(trial),
                );
                continue;
            }
        };
        let g = rng.unimodular(n);
        let moved = point.conjugate(&g).map_err(|e| e.to_string())?;
        let recovered = canonicalize(&moved).map_err(|e| e.to_string())?;
        let expected = coords.sorted();
        let round_trip = recovered == expected;
        checks.push(
            if round_trip {
                Check::passing("chart:round-trip", vec![])
            } else {
                Check::failing(
                    "chart:round-trip",
                    vec![],
                    json!({"expected": expected, "got": recovered}),
                )
            }
            .with_trial(trial),
        );
    }
    Ok(Report::new(
        "chart",
        json!({"n": n, "tau": rat_json(tau), "seed": seed, "trials": trials}),
        checks,
    ))
}

fn sample_entry_eigenvalues(
    shapes: &[Vec<Vec<usize>>],
    tau: &Rat,
    rng: &mut ExactRng,
) -> JordanData {
    loop {
        let entries: Vec<JordanEntry> = shapes
            .iter()
            .map(|strings| JordanEntry {
                eigenvalue: rng.nonzero_rat(),
                strings: strings.clone(),
            })
            .collect();
        let data = JordanData::new(entries).expect("shapes are valid");
        if data.check_hypothesis(tau).is_ok() {
            return data;
        }
    }
}

/// Jordan suite: exhaustive over all stratum shapes of total size at most
/// `max_size`, with random eigenvalues; closed-form dimension counts must
/// match brute force and the stabilizer inequality must be strictly
/// positive.
pub fn jordan_suite(max_size: usize, tau: &Rat, seed: u64) -> Result<Report, String> {
    let mut rng = ExactRng::new(seed);
    let mut checks = Vec::new();
    for total in 1..=max_size {
        for (shape_idx, shape) in enumerate_jordan_shapes(total).into_iter().enumerate() {
            let data = sample_entry_eigenvalues(&shape, tau, &mut rng);
            let j = jordan_matrix(&data, tau).map_err(|e| e.to_string())?;
            let formula = ker_dim_formula(&data);
            let brute = ker_dim_bruteforce(&j, tau);
            checks.push(if formula == brute {
                Check::passing("jordan:kernel-dimension", vec![total as i64, shape_idx as i64])
            } else {
                Check::failing(
                    "jordan:kernel-dimension",
                    vec![total as i64, shape_idx as i64],
                    json!({"formula": formula, "bruteforce": brute, "data": data}),
                )
            });
            // Image membership spot check: S_J of a random matrix.
            let f = Matrix::from_fn(j.n_rows(), j.n_rows(), |_, _| rng.rat());
            let tau_inv = tau.inv().expect("tau nonzero");
            let z = &(&j * &f).scale(tau) - &(&f * &j).scale(&tau_inv);
            checks.push(if im_membership(&z, &j, tau) {
                Check::passing("jordan:image-membership", vec![total as i64, shape_idx as i64])
            } else {
                Check::failing(
                    "jordan:image-membership",
                    vec![total as i64, shape_idx as i64],
                    json!({"data": data}),
                )
            });
        }
        // Stabilizer dimensions per partition.
        for (p_idx, partition) in cmspace::partitions(total).into_iter().enumerate() {
            let data = JordanData::single(rng.nonzero_rat(), vec![partition.clone()])
                .map_err(|e| e.to_string())?;
            let j = jordan_matrix(&data, tau).map_err(|e| e.to_string())?;
            let formula = stab_dim_formula(&partition);
            let brute = stab_commutant_bruteforce(&j);
            checks.push(if formula == brute {
                Check::passing("jordan:stabilizer-dimension", vec![total as i64, p_idx as i64])
            } else {
                Check::failing(
                    "jordan:stabilizer-dimension",
                    vec![total as i64, p_idx as i64],
                    json!({"partition": partition, "formula": formula, "bruteforce": brute}),
                )
            });
        }
        // Inequality on single-eigenvalue shapes.
        for (shape_idx, strings) in cmspace::enumerate_entry_shapes(total).into_iter().enumerate()
        {
            let (lhs, positive) = ineq_check(&strings);
            checks.push(if positive {
                Check::passing("jordan:stabilizer-inequality", vec![total as i64, shape_idx as i64])
            } else {
                Check::failing(
                    "jordan:stabilizer-inequality",
                    vec![total as i64, shape_idx as i64],
                    json!({"strings": strings, "lhs": lhs}),
                )
            });
        }
    }
    Ok(Report::new(
        "jordan",
        json!({"max_size": max_size, "tau": rat_json(tau), "seed": seed}),
        checks,
    ))
}

/// Poisson suite: chain-rule brackets against the closed form at seeded
/// strongly generic points.
pub fn poisson_suite(n: usize, tau: &Rat, seed: u64, trials: u64) -> Result<Report, String> {
    let root = ExactRng::new(seed);
    let mut checks = Vec::new();
    for trial in 0..trials {
        let mut rng = root.split(trial);
        let nu = rng.strongly_generic(tau, n);
        let mu: Vec<Rat> = (0..n).map(|_| rng.nonzero_rat()).collect();
        let outcome = poisson_match(tau, &nu, &mu).map_err(|e| e.to_string())?;
        checks.push(
            if outcome.matched {
                Check::passing("poisson:bracket-match", vec![])
            } else {
                Check::failing(
                    "poisson:bracket-match",
                    vec![],
                    outcome.witness.unwrap_or_else(|| json!({})),
                )
            }
            .with_trial(trial),
        );
    }
    Ok(Report::new(
        "poisson",
        json!({"n": n, "tau": rat_json(tau), "seed": seed, "trials": trials}),
        checks,
    ))
}

/// Dunkl suite: the full displayed relation list of the chosen flavor as
/// operator identities over the monomial window.
pub fn dunkl_suite(n: usize, t: &Rat, c: &Rat, flavor: Flavor, degree_bound: i64) -> Report {
    let params = DegenParams::new(n, t.clone(), c.clone(), flavor);
    let checks = verify_degenerate_relations(&params, degree_bound);
    Report::new(
        "dunkl",
        json!({
            "n": n,
            "t": rat_json(t),
            "c": rat_json(c),
            "flavor": flavor,
            "degree_bound": degree_bound,
        }),
        checks,
    )
}

/// Bispectral dual suite: builds the dual module from seeded diagonal data
/// and verifies the full relation list on the matrices.
pub fn dual_trig_suite(n: usize, c: &Rat, seed: u64, trials: u64) -> Result<Report, String> {
    let root = ExactRng::new(seed);
    let mut checks = Vec::new();
    for trial in 0..trials {
        let mut rng = root.split(trial);
        let alpha: Vec<Rat> = (0..n).map(|_| rng.nonzero_rat()).collect();
        let beta = rng.distinct_nonzero(n);
        let rep = trig_dual_rep(n, c, &alpha, &beta).map_err(|e| e.to_string())?;
        checks.extend(
            rep.verify_relations()
                .into_iter()
                .map(|ch| ch.with_trial(trial)),
        );
    }
    Ok(Report::new(
        "dual-trig",
        json!({"n": n, "c": rat_json(c), "seed": seed, "trials": trials}),
        checks,
    ))
}

/// Twist suite: sigma- and epsilon-twisted bundles must pass the relation
/// suite (epsilon at the inverse parameter), the epsilon involution must
/// restore the bundle, and the restricted pairs must intertwine with the
/// point-level involution.
pub fn twist_suite(n: usize, tau: &Rat, seed: u64, trials: u64) -> Result<Report, DahaError> {
    let params = DahaParams::new(n, tau.clone())?;
    let root = ExactRng::new(seed);
    let mut checks = Vec::new();
    for trial in 0..trials {
        let mut rng = root.split(trial);
        let chi = sample_strongly_generic_character(n, tau, &mut rng);
        let rep = build_rep(&params, &chi)?;

        let sigma = rep.gl2z_twist(Gl2zGen::Sigma);
        let sigma_pass = sigma.verify_relations().iter().all(|c| c.pass);
        checks.push(
            if sigma_pass {
                Check::passing("twist:sigma-relations", vec![])
            } else {
                Check::failing("twist:sigma-relations", vec![], json!({}))
            }
            .with_trial(trial),
        );

        let eps = rep.gl2z_twist(Gl2zGen::Epsilon);
        let eps_pass = eps.verify_relations().iter().all(|c| c.pass);
        checks.push(
            if eps_pass {
                Check::passing("twist:epsilon-relations", vec![])
            } else {
                Check::failing("twist:epsilon-relations", vec![], json!({}))
            }
            .with_trial(trial),
        );

        let back = eps.gl2z_twist(Gl2zGen::Epsilon);
        let restored = (1..=n).all(|i| back.x(i) == rep.x(i) && back.y(i) == rep.y(i))
            && back.pi() == rep.pi();
        checks.push(
            if restored {
                Check::passing("twist:epsilon-involution", vec![])
            } else {
                Check::failing("twist:epsilon-involution", vec![], json!({}))
            }
            .with_trial(trial),
        );

        // Point-level intertwining: restricting the twisted bundle equals
        // swapping the restricted pair.
        let (x_bar, y_bar) = rep.cm_restrict()?;
        let (ex_bar, ey_bar) = eps.cm_restrict()?;
        let intertwined = ex_bar == y_bar && ey_bar == x_bar;
        checks.push(
            if intertwined {
                Check::passing("twist:epsilon-cm-intertwine", vec![])
            } else {
                Check::failing("twist:epsilon-cm-intertwine", vec![], json!({}))
            }
            .with_trial(trial),
        );
    }
    Ok(Report::new(
        "twist",
        json!({"n": n, "tau": rat_json(tau), "seed": seed, "trials": trials}),
        checks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn relation_suite_runs_and_passes() {
        let report = relation_suite(2, &r(2, 1), 7, 2, false).unwrap();
        assert!(report.pass);
        assert!(report.checks.iter().any(|c| c.id == "T-quadratic"));
    }

    #[test]
    fn perturbed_suite_fails_with_witness() {
        let report = relation_suite(2, &r(2, 1), 7, 1, true).unwrap();
        assert!(!report.pass);
        let failure = report.failures().next().unwrap();
        assert!(failure.witness.is_some());
    }

    #[test]
    fn reports_are_reproducible() {
        let a = poisson_suite(2, &r(2, 1), 9, 3).unwrap().to_json_string();
        let b = poisson_suite(2, &r(2, 1), 9, 3).unwrap().to_json_string();
        assert_eq!(a, b);
    }

    #[test]
    fn jordan_suite_small() {
        let report = jordan_suite(3, &r(2, 1), 5).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn chart_suite_small() {
        let report = chart_suite(2, &r(2, 1), 11, 3).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn twist_suite_small() {
        let report = twist_suite(2, &r(2, 1), 13, 1).unwrap();
        assert!(report.pass, "{:?}", report.failures().collect::<Vec<_>>());
    }
}
