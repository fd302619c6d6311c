//! One test, and one printed pass/fail line, per acceptance criterion.
//! `cargo test --test acceptance -- --nocapture --test-threads 1` shows the lines in order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::OnceLock;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nervelab::complex::{sd, Simplex, SimplicialComplex};
use nervelab::corpus;
use nervelab::covers::nerve;
use nervelab::geometry::{cech_values, PointCloud};
use nervelab::homology::{barcode_from_entries, betti_z2};
use nervelab::morse::{collapse, greedy_gradient, is_gradient, DiscreteVectorField};
use nervelab::verify::{self, VerificationReport, BARCODE_TOL};

/// Prints the criterion's line and fails the test with the same line.
fn criterion(id: usize, what: &str, f: impl FnOnce() -> (bool, String)) {
    let start = Instant::now();
    let (ok, detail) = f();
    let line = format!(
        "criterion {id:>2}: {} - {what} ({:.2} s) [{detail}]",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    println!("{line}");
    assert!(ok, "{line}");
}

fn all_pass(reports: &[VerificationReport]) -> (bool, String) {
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{}/{}: {}", r.instance, c.name, c.witness)))
        .collect();
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    if failed.is_empty() {
        (true, format!("{} instances, {checks} checks", reports.len()))
    } else {
        (false, failed.join("; "))
    }
}

fn corpus_clouds() -> Vec<(String, PointCloud)> {
    let mut out = vec![("equilateral".to_string(), corpus::equilateral()), ("unit-square".to_string(), corpus::unit_square())];
    out.extend((0..4).map(|s| (format!("random-cloud-{s}"), corpus::random_cloud(s, 5 + (s as usize % 2)))));
    out
}

// Independent closed V-path oracle: a field is a gradient iff no paired facet reaches itself
// by alternating "go up along the pairing, then down to a different facet".
fn has_closed_v_path(k: &SimplicialComplex, pairs: &BTreeMap<Simplex, Simplex>) -> bool {
    let step = |tau: &Simplex| -> Vec<Simplex> {
        let Some(sigma) = pairs.get(tau) else { return Vec::new() };
        sigma.facets().filter(|f| f != tau && k.contains(f) && pairs.contains_key(f)).collect()
    };
    pairs.keys().any(|start| {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<Simplex> = step(start).into();
        while let Some(t) = queue.pop_front() {
            if &t == start {
                return true;
            }
            if seen.insert(t.clone()) {
                queue.extend(step(&t));
            }
        }
        false
    })
}

fn random_matching(k: &SimplicialComplex, rng: &mut ChaCha8Rng) -> BTreeMap<Simplex, Simplex> {
    let mut cand: Vec<(Simplex, Simplex)> =
        k.iter().filter(|s| s.len() > 1).flat_map(|s| s.facets().map(move |f| (f, s.clone()))).collect();
    cand.shuffle(rng);
    let mut used = BTreeSet::new();
    let mut pairs = BTreeMap::new();
    for (f, s) in cand {
        if rng.gen_bool(0.5) && !used.contains(&f) && !used.contains(&s) {
            used.insert(f.clone());
            used.insert(s.clone());
            pairs.insert(f, s);
        }
    }
    pairs
}

fn field_of(k: &SimplicialComplex, pairs: &BTreeMap<Simplex, Simplex>) -> DiscreteVectorField {
    let used: BTreeSet<&Simplex> = pairs.iter().flat_map(|(a, b)| [a, b]).collect();
    DiscreteVectorField::new(pairs.clone(), k.iter().filter(|s| !used.contains(s)).cloned())
}

// Collapse free pairs while any exist, using only set membership; the rest is a subcomplex.
fn naive_collapse_field(k: &SimplicialComplex) -> DiscreteVectorField {
    let mut live: BTreeSet<Simplex> = k.iter().cloned().collect();
    let mut pairs = BTreeMap::new();
    loop {
        let free = live.iter().find_map(|t| {
            let cof: Vec<&Simplex> = live.iter().filter(|s| s.len() > t.len() && t.is_face_of(s)).collect();
            (cof.len() == 1 && cof[0].len() == t.len() + 1).then(|| (t.clone(), cof[0].clone()))
        });
        let Some((t, s)) = free else { break };
        live.remove(&t);
        live.remove(&s);
        pairs.insert(t, s);
    }
    DiscreteVectorField::new(pairs, live)
}

fn morse_complexes() -> Vec<(String, SimplicialComplex)> {
    let mut out = corpus::complex_corpus(20);
    out.push(("sd-full-triangle".into(), sd(&corpus::full_triangle()).complex().clone()));
    out.push(("sd-octahedron".into(), sd(&corpus::octahedron()).complex().clone()));
    out.push(("sd-hexagon".into(), sd(&corpus::hexagon()).complex().clone()));
    out.retain(|(_, k)| k.len() <= 200);
    out
}

fn criterion_3() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut fields = 0;
    let mut cyclic = 0;
    let mut steps = 0;
    for (name, k) in morse_complexes() {
        let mut candidates: Vec<DiscreteVectorField> = (0..4).map(|s| greedy_gradient(&k, s).field).collect();
        candidates.extend((0..30).map(|_| field_of(&k, &random_matching(&k, &mut rng))));
        for v in &candidates {
            let pairs: BTreeMap<Simplex, Simplex> = v.pairs().map(|(a, b)| (a.clone(), b.clone())).collect();
            let oracle = !has_closed_v_path(&k, &pairs);
            fields += 1;
            cyclic += usize::from(!oracle);
            if is_gradient(&k, v).unwrap() != oracle {
                return (false, format!("{name}: is_gradient disagrees with the V-path oracle"));
            }
        }
        let v = naive_collapse_field(&k);
        let trace = match collapse(&k, &v) {
            Ok(t) => t,
            Err(e) => return (false, format!("{name}: {e}")),
        };
        let mut live: BTreeSet<Simplex> = k.iter().cloned().collect();
        for st in &trace.steps {
            let cof: Vec<&Simplex> = live.iter().filter(|s| s.len() > st.free_facet.len() && st.free_facet.is_face_of(s)).collect();
            if cof != [&st.coface] || st.coface.len() != st.free_facet.len() + 1 {
                return (false, format!("{name}: ({}, {}) is not a free pair", st.free_facet, st.coface));
            }
            live.remove(&st.free_facet);
            live.remove(&st.coface);
            steps += 1;
        }
        let after = SimplicialComplex::from_closed(live).unwrap();
        if after != trace.result || betti_z2(&after) != betti_z2(&k) {
            return (false, format!("{name}: collapse result or Betti numbers differ"));
        }
    }
    (true, format!("{fields} fields ({cyclic} with closed V-paths), {steps} collapses checked"))
}

fn criterion_4() -> (bool, String) {
    let clouds: Vec<PointCloud> = (0..25).map(|s| corpus::random_cloud(100 + s, 4 + (s as usize % 9))).collect();
    let mut reports: Vec<VerificationReport> =
        clouds.iter().enumerate().map(|(i, c)| verify::verify_cech_alpha(&format!("cloud-{i}"), c, BARCODE_TOL)).collect();
    reports.push(verify::verify_cech_alpha("unit-square", &corpus::unit_square(), BARCODE_TOL));
    let (ok, detail) = all_pass(&reports);
    let bars = barcode_from_entries(&cech_values(&corpus::unit_square(), 2).unwrap()).without_short_bars(BARCODE_TOL);
    let h1 = bars.degree(1);
    let analytic = h1.len() == 1
        && (h1[0].0 - 0.5).abs() <= BARCODE_TOL
        && h1[0].1.is_some_and(|d| (d - 2f64.sqrt() / 2.0).abs() <= BARCODE_TOL);
    (ok && analytic, format!("{detail}; unit square H1 bars {h1:?}"))
}

#[test]
fn criterion_01_hexagon_arcs() {
    criterion(1, "three-arc hexagon cover", || {
        let c = corpus::hexagon_arcs();
        let r = verify::verify_blowup("hexagon-arcs", &c);
        let n = nerve(&c).unwrap();
        let boundary = n == corpus::triangle_boundary();
        let b = nervelab::blowup::Blowup::new(&c).unwrap();
        let one_one = [betti_z2(&b.t), betti_z2(sd(c.base()).complex()), betti_z2(&n)].iter().all(|x| x.0 == [1, 1]);
        let (ok, detail) = all_pass(&[r]);
        (ok && boundary && one_one, format!("{detail}; nerve is the triangle boundary: {boundary}; Betti (1,1): {one_one}"))
    });
}

#[test]
fn criterion_02_bst_good_covers() {
    criterion(2, "bst good-cover suite", || {
        let reports: Vec<_> = corpus::complex_corpus(20).iter().map(|(n, k)| verify::verify_bst(n, k)).collect();
        all_pass(&reports)
    });
}

#[test]
fn criterion_03_morse_soundness() {
    criterion(3, "Morse engine soundness", criterion_3);
}

#[test]
fn criterion_04_cech_alpha_barcodes() {
    criterion(4, "Cech and alpha barcodes", criterion_4);
}

#[test]
fn criterion_05_functoriality_squares() {
    criterion(5, "functoriality squares", || {
        let reports: Vec<_> = corpus_clouds().iter().map(|(n, c)| verify::verify_functorial(n, c, None)).collect();
        all_pass(&reports)
    });
}

fn gamma_psi_reports() -> &'static [VerificationReport] {
    static REPORTS: OnceLock<Vec<VerificationReport>> = OnceLock::new();
    REPORTS.get_or_init(|| corpus_clouds().iter().map(|(n, c)| verify::verify_gamma_psi(n, c, 1000, 7)).collect())
}

fn pick(names: &[&str]) -> Vec<VerificationReport> {
    gamma_psi_reports()
        .iter()
        .map(|r| {
            let mut sub = VerificationReport::new(r.instance.clone());
            sub.checks = r.checks.iter().filter(|c| names.contains(&c.name.as_str())).cloned().collect();
            sub
        })
        .collect()
}

#[test]
fn criterion_06_gamma_naturality_and_carried() {
    criterion(6, "gamma naturality and carried-ness", || {
        all_pass(&pick(&["gamma-carried", "gamma-naturality", "radii", "pointed-covers"]))
    });
}

#[test]
fn criterion_07_psi_carried_and_witnesses() {
    criterion(7, "psi carried and homotopy witnesses", || {
        let (ok, detail) = all_pass(&pick(&["psi-carried", "homotopy-witness", "radii", "pointed-covers"]));
        let min = gamma_psi_reports()
            .iter()
            .filter_map(|r| r.check("psi-carried"))
            .filter_map(|c| c.witness.get("min_samples").and_then(|v| v.as_u64()))
            .min()
            .unwrap_or(0);
        (ok && min >= 1000, format!("{detail}; at least {min} samples per cover"))
    });
}

#[test]
fn criterion_08_octahedron_hemispheres() {
    criterion(8, "octahedron hemispheres, k = 1", || {
        let r = verify::verify_bjorner("octahedron-hemispheres", &corpus::octahedron_hemispheres(), 1);
        let h2 = r.check("H2-onto").map(|c| c.witness.clone()).unwrap_or_default();
        let expected = h2["rank_source"] == 1 && h2["rank_target"] == 0 && h2["isomorphism"] == false;
        let (ok, detail) = all_pass(&[r]);
        (ok && expected, format!("{detail}; H2 beyond range: {h2}"))
    });
}

#[test]
fn criterion_09_coordinate_round_trip() {
    criterion(9, "coordinate round trip and bst maximality", || {
        let complexes = corpus::complex_corpus(20);
        let per = 10_000usize.div_ceil(complexes.len());
        let reports: Vec<_> =
            complexes.iter().enumerate().map(|(i, (n, k))| verify::verify_coordinates(n, k, per, i as u64)).collect();
        let (ok, detail) = all_pass(&reports);
        (ok, format!("{detail}; {} points", per * complexes.len()))
    });
}

#[test]
fn criterion_10_duplicate_index_collapse() {
    criterion(10, "duplicate-index collapse", || {
        let reports: Vec<_> = corpus::complex_corpus(20)
            .iter()
            .map(|(n, k)| {
                let (c, j, l) = corpus::cover_with_duplicate(k);
                verify::verify_duplicate(n, &c, j, l)
            })
            .collect();
        all_pass(&reports)
    });
}
