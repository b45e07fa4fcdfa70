//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact; the time budgets
//! are the only tolerances.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use satake::deodhar::richardson_count;
use satake::hecke::{CountSource, Hecke, HeckeElement};
use satake::mvcells::{mv_decomposition, point_count_poly, schubert_cell_count, weight_multiplicity, OrbitSign};
use satake::oracle::{self, FlagCensus, SAMPLE_Q};
use satake::rootdata::{RootDatum, PRESETS};
use satake::vinberg::{check_diagram, extends_to_vinberg, ic_class};
use satake::ZPoly;

type Outcome = Result<String, String>;

fn preset(name: &str) -> RootDatum {
    RootDatum::preset(name).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn pgl2_cell_shapes() -> Outcome {
    let d = preset("PGL2");
    let mut checked = 0;
    for mu in 1..=6i64 {
        for nu in (-mu..=mu).step_by(2) {
            let expect = if nu == mu {
                (0, 0)
            } else if nu == -mu {
                (mu as usize, 0)
            } else {
                (((mu - nu) / 2 - 1) as usize, 1)
            };
            let cells = mv_decomposition(&d, &[mu], &[nu], OrbitSign::Minus).map_err(|e| e.to_string())?;
            ensure(cells.cells == vec![expect], || format!("μ={mu} ν={nu}: {:?} ≠ [{expect:?}]", cells.cells))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (μ,ν) pairs"))
}

fn weight_multiplicities() -> Outcome {
    let mut checked = 0;
    for name in ["SL2", "PGL2", "GL2", "SL3", "Sp4"] {
        let d = preset(name);
        for mu in d.dominant_up_to(6, 1) {
            let chi = d.weyl_character(&mu).map_err(|e| e.to_string())?;
            // the support plus a ring of non-weights around it
            let mut nus: BTreeSet<Vec<i64>> = chi.weights().cloned().collect();
            for nu in chi.weights() {
                for a in d.simple_coroots() {
                    nus.insert(nu.iter().zip(a).map(|(x, y)| x + y).collect());
                    nus.insert(nu.iter().zip(a).map(|(x, y)| x - y).collect());
                }
            }
            for nu in &nus {
                let m = weight_multiplicity(&d, &mu, nu).map_err(|e| e.to_string())?;
                ensure(m as i64 == chi.mult(nu), || format!("{name} μ={mu:?} ν={nu:?}: {m} ≠ {}", chi.mult(nu)))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} multiplicities"))
}

fn point_count_partition() -> Outcome {
    let mut checked = 0;
    for name in PRESETS {
        let d = preset(name);
        for mu in d.dominant_up_to(6, 1) {
            let mut total = ZPoly::zero();
            for nu in d.weyl_character(&mu).map_err(|e| e.to_string())?.weights() {
                total += &point_count_poly(&d, &mu, nu, OrbitSign::Plus).map_err(|e| e.to_string())?;
            }
            for q in [2u32, 3, 4, 5] {
                let expect = schubert_cell_count(&d, &mu, q as i128).map_err(|e| e.to_string())?;
                ensure(total.eval(q as i128) == expect, || format!("{name} μ={mu:?} q={q}"))?;
                if ["GL2", "PGL2"].contains(&name) {
                    let brute = oracle::schubert_count(&d, q, &mu).map_err(|e| e.to_string())?;
                    ensure(brute as i128 == expect, || format!("{name} μ={mu:?} q={q}: oracle {brute} ≠ {expect}"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (μ,q) cases"))
}

fn deodhar_vs_flags() -> Outcome {
    let mut checked = 0;
    for name in ["SL2", "SL3"] {
        let d = preset(name);
        let w = d.weyl();
        for q in [2u32, 3] {
            let census = FlagCensus::new(&d, q).map_err(|e| e.to_string())?;
            for y in w.elements().filter(|&y| w.length(y) <= 3) {
                for x in w.elements() {
                    let c = richardson_count(w, w.word(y), x, q as i128).map_err(|e| e.to_string())?;
                    ensure(c == census.count(y, x) as i128, || format!("{name} q={q} y={:?} x={:?}", w.word(y), w.word(x)))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (y,x,q) buckets"))
}

fn hecke_vs_convolution() -> Outcome {
    let mut checked = 0;
    for name in ["GL2", "PGL2", "SL2"] {
        let h = Hecke::new(&preset(name));
        let d = h.datum();
        let gens = d.dominant_up_to(6, 1);
        for mu in &gens {
            for lambda in &gens {
                if d.two_rho_pair(mu) + d.two_rho_pair(lambda) > 6 {
                    continue;
                }
                let prod = h.multiply(&HeckeElement::basis(mu), &HeckeElement::basis(lambda)).map_err(|e| e.to_string())?;
                let sum: Vec<i64> = mu.iter().zip(lambda).map(|(a, b)| a + b).collect();
                for nu in h.dominant_below(&sum).map_err(|e| e.to_string())? {
                    let n = prod.coeff(&nu);
                    let fit = oracle::interpolate(&SAMPLE_Q, |q| {
                        let c = oracle::convolution_count(d, q, mu, lambda, &nu)? as i128;
                        if c != n.eval(q as i128) {
                            return Err(satake::SatakeError::Inconsistent(format!("q={q}: count {c}, N = {n}")));
                        }
                        Ok(c)
                    })
                    .map_err(|e| format!("{name} {mu:?}·{lambda:?} at {nu:?}: {e}"))?;
                    ensure(fit == n, || format!("{name} {mu:?}·{lambda:?} at {nu:?}: fit {fit} ≠ {n}"))?;
                    for q in SAMPLE_Q {
                        let c = oracle::convolution_count(d, q, mu, lambda, &nu).map_err(|e| e.to_string())?;
                        ensure(c as i128 == n.eval(q as i128), || format!("{name} {mu:?}·{lambda:?} at {nu:?} q={q}"))?;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} structure constants"))
}

fn satake_diagram() -> Outcome {
    let mut checked = 0;
    for name in PRESETS {
        let h = Hecke::new(&preset(name));
        let gens: Vec<HeckeElement> = h.datum().dominant_up_to(6, 1).iter().map(|m| HeckeElement::basis(m)).collect();
        let mut cases = gens.clone();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i..] {
                cases.push(h.multiply(a, b).map_err(|e| e.to_string())?);
            }
        }
        for c in &cases {
            for q0 in [2, 3, 5] {
                let check = check_diagram(&h, c, q0, CountSource::Cells).map_err(|e| e.to_string())?;
                ensure(check.ok, || format!("{name} q0={q0} h={:?}", c.terms()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (h,q0) cases"))
}

fn vinberg_criterion() -> Outcome {
    let mut checked = 0;
    for name in PRESETS {
        let d = preset(name);
        for mu in d.dominant_up_to(6, 1) {
            for n in 0..=3 {
                let c = ic_class(&d, &mu, n).map_err(|e| e.to_string())?;
                ensure(extends_to_vinberg(&d, &c).extends, || format!("{name} μ={mu:?} n={n} fails"))?;
                // a (+1)-twist undoes one unit of negative twist; from n = 0 it leaves the monoid
                let shifted = c.shift_grading(-2);
                if n == 0 {
                    let check = extends_to_vinberg(&d, &shifted);
                    ensure(!check.extends, || format!("{name} μ={mu:?}: positive twist extends"))?;
                    let witness = check.witness.map(|w| w.0);
                    ensure(witness.as_ref() == Some(&mu), || format!("{name} μ={mu:?}: witness {witness:?}"))?;
                } else {
                    ensure(shifted == ic_class(&d, &mu, n - 1).map_err(|e| e.to_string())?, || format!("{name} μ={mu:?} n={n}: shift"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} classes"))
}

fn random_element(rng: &mut ChaCha8Rng, gens: &[Vec<i64>]) -> HeckeElement {
    let mut h = HeckeElement::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let mu = &gens[rng.gen_range(0..gens.len())];
        let c = ZPoly::new((0..rng.gen_range(1..=2)).map(|_| rng.gen_range(-2..=2)).collect());
        h.add_term(mu, &c);
    }
    h
}

fn algebra_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x005a_7ae0);
    let mut checked = 0;
    let err = |e: satake::SatakeError| e.to_string();
    for name in PRESETS {
        let h = Hecke::new(&preset(name));
        let gens = h.datum().dominant_up_to(3, 1);
        for _ in 0..50 {
            let (a, b, c) = (random_element(&mut rng, &gens), random_element(&mut rng, &gens), random_element(&mut rng, &gens));
            let ab = h.multiply(&a, &b).map_err(err)?;
            ensure(ab == h.multiply(&b, &a).map_err(err)?, || format!("{name}: not commutative"))?;
            let left = h.multiply(&ab, &c).map_err(err)?;
            let right = h.multiply(&a, &h.multiply(&b, &c).map_err(err)?).map_err(err)?;
            ensure(left == right, || format!("{name}: not associative"))?;
            let psi_ab = h.satake_classical(&ab).map_err(err)?;
            let prod = h.satake_classical(&a).map_err(err)?.mul(&h.satake_classical(&b).map_err(err)?);
            ensure(psi_ab == prod, || format!("{name}: Ψ_cl not multiplicative"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} triples"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

/// Runs without the libtest harness so the verdict lines are never captured.
fn main() {
    let criteria: [Criterion; 8] = [
        ("1 PGL2 cell shapes", Duration::from_secs(1), pgl2_cell_shapes),
        ("2 weight multiplicities", Duration::from_secs(30), weight_multiplicities),
        ("3 point-count partition", Duration::from_secs(60), point_count_partition),
        ("4 Deodhar vs flag oracle", Duration::from_secs(30), deodhar_vs_flags),
        ("5 Hecke vs convolution", Duration::from_secs(300), hecke_vs_convolution),
        ("6 Satake diagram", Duration::from_secs(120), satake_diagram),
        ("7 Vinberg criterion", Duration::from_secs(5), vinberg_criterion),
        ("8 algebra laws", Duration::from_secs(120), algebra_laws),
    ];
    let mut failed = vec![];
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Ok(_) if elapsed <= budget => "PASS",
            _ => "FAIL",
        };
        let detail = match outcome {
            Ok(s) => s,
            Err(s) => s,
        };
        println!("{verdict} [{name}] {detail}; {:.2}s (budget {}s)", elapsed.as_secs_f64(), budget.as_secs());
        if verdict == "FAIL" {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
