//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::Instant;

use dra::suite::*;

struct Criterion {
    number: u32,
    title: &'static str,
    run: fn() -> Vec<Check>,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            number: 1,
            title: "defining relations and hat relations",
            run: || {
                let mut c = relation_checks();
                c.extend(hat_relation_checks());
                c
            },
        },
        Criterion {
            number: 2,
            title: "associativity on 500 random triples",
            run: || associativity_checks(500, 2024),
        },
        Criterion {
            number: 3,
            title: "C1, C2, hhat central; Q2 anti-central",
            run: || {
                centrality_checks()
                    .into_iter()
                    .filter(|c| c.id != "scasimir.square")
                    .collect()
            },
        },
        Criterion {
            number: 4,
            title: "Q2 Q2 = C2 C2 - C1 C1",
            run: || {
                centrality_checks()
                    .into_iter()
                    .filter(|c| c.id == "scasimir.square")
                    .collect()
            },
        },
        Criterion {
            number: 5,
            title: "F_n closed form, recursion and oracle agree; coefficient lemmas",
            run: || fn_agreement_checks(10, 12),
        },
        Criterion {
            number: 6,
            title: "even congruence for n <= 8",
            run: || even_congruence_checks(8),
        },
        Criterion {
            number: 7,
            title: "Harish-Chandra values and functional equation",
            run: || {
                let mut c = hc_value_checks();
                c.extend(functional_equation_checks(&[1, 3, 5, 7]));
                c
            },
        },
        Criterion {
            number: 8,
            title: "ghost image membership and kernel",
            run: || ghost_checks(2),
        },
        Criterion {
            number: 9,
            title: "Shapovalov form properties, products and radical",
            run: || {
                let mut c = shapovalov_property_checks(8, 4242);
                c.extend(shapovalov_product_checks(6));
                c.extend(shapovalov_zero_weight_checks(4));
                c.extend(radical_checks());
                c
            },
        },
        Criterion {
            number: 10,
            title: "irrep classification on the 20-pair grid",
            run: || {
                let mut c = irrep_family_checks(&[1, 3, 5, 7]);
                c.extend(irrep_grid_checks());
                c
            },
        },
        Criterion {
            number: 11,
            title: "tensor decomposition for l = 0, 1, 2",
            run: || tensor_checks(&[(0, 10), (1, 14), (2, 20)]),
        },
    ]
}

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--verbose" || a == "-v");
    let start = Instant::now();
    let mut failed = 0;
    for criterion in criteria() {
        let t = Instant::now();
        let checks = (criterion.run)();
        let bad: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
        let verdict = if bad.is_empty() && !checks.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {:>2} {} ({}/{} checks, {:.1}s)",
            criterion.number,
            criterion.title,
            checks.len() - bad.len(),
            checks.len(),
            t.elapsed().as_secs_f64()
        );
        for c in if verbose { checks.iter().collect() } else { bad.clone() } {
            println!("       {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.id, c.detail);
        }
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    println!("{} of 11 criteria passed in {:.1}s", 11 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
