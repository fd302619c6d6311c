//! Verification suites. Each returns a report with one entry per check and a
//! machine-readable witness for every failure.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::blowup::{lambda_n_to_sd, lambda_s_to_sd, literal_rule_check, pobar, t_complex, f_to_sd, induced_pobar_map, Blowup, PoBar};
use crate::complex::{
    base_to_sd_coords, bst, sd, sd_map_between, sd_to_base_coords, BarycentricPoint, Simplex, SimplicialComplex,
    SimplicialMap, Subdivision,
};
use crate::covers::{
    bst_cover_of, drop_duplicate, goodness_report, induced_nerve_map, nerve, CoverIndex, CoveredSpaceMorphism,
    IndexedCover,
};
use crate::error::{NerveError, Result};
use crate::geometry::{
    alpha_complex_2d, alpha_values_2d, cech_nerve, cech_values, check_gamma_carried, gamma_map, homotopy_witness,
    pointed_cech_cover, psi_eval, CoverElement, PointCloud, GEOM_TOL,
};
use crate::homology::{barcode_from_entries, betti_z2, check_square, components, induced_homology_map, InclusionFiltration};
use crate::morse::{collapse, replay_collapses};

/// Endpoint tolerance for barcode comparisons.
pub const BARCODE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
    pub ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(instance: impl Into<String>) -> Self {
        VerificationReport { instance: instance.into(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> + '_ {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Runs one check. An error counts as a failure whose witness is the error message.
    pub fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, Value)>) -> bool {
        let start = Instant::now();
        let (ok, witness) = match f() {
            Ok(r) => r,
            Err(e) => (false, json!({ "error": e.to_string() })),
        };
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: name.to_string(), status, witness, ms });
        ok
    }

    /// Records a check whose work was timed by the caller.
    pub fn record(&mut self, name: &str, ok: bool, witness: Value, ms: f64) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: name.to_string(), status, witness, ms });
    }

    /// Zeroes timings so reports are byte-for-byte reproducible.
    pub fn without_timing(mut self) -> Self {
        for c in &mut self.checks {
            c.ms = 0.0;
        }
        self
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn relay(e: &NerveError) -> NerveError {
    NerveError::Inconsistent(e.to_string())
}

fn shared<T>(r: &Result<T>) -> Result<&T> {
    r.as_ref().map_err(relay)
}

fn betti_json(k: &SimplicialComplex) -> Value {
    json!(betti_z2(k).0)
}

fn first_difference(a: &SimplicialComplex, b: &SimplicialComplex) -> Value {
    json!({
        "only_in_first": a.iter().find(|s| !b.contains(s)).map(ToString::to_string),
        "only_in_second": b.iter().find(|s| !a.contains(s)).map(ToString::to_string),
    })
}

/// Closed barycentric star cover of `K`: nerve, goodness, and the homology of `T`.
pub fn verify_bst(instance: &str, k: &SimplicialComplex) -> VerificationReport {
    let mut r = VerificationReport::new(instance);
    let sub = sd(k);
    let cover = match bst_cover_of(&sub) {
        Ok(c) => c,
        Err(e) => {
            r.run("bst-cover", || Err(e));
            return r;
        }
    };
    let nrv = nerve(&cover);
    r.run("nerve-isomorphic", || {
        let n = shared(&nrv)?.clone();
        // Cover indices are the vertices of K, so the identity on vertices is the isomorphism.
        let iso = n == *k;
        let witness = if iso { json!({ "vertex_map": "identity", "simplices": n.len() }) } else { first_difference(&n, k) };
        Ok((iso, witness))
    });
    r.run("goodness-collapsible", || {
        let cert = goodness_report(&cover)?;
        let ok = cert.all_collapsible();
        let witness = if ok {
            json!({ "intersections": cert.entries.len() })
        } else {
            let bad: BTreeMap<String, Value> = cert
                .entries
                .iter()
                .filter(|(_, g)| !g.is_collapsible())
                .map(|(j, g)| (j.to_string(), serde_json::to_value(g).expect("goodness serializes")))
                .collect();
            json!(bad)
        };
        Ok((ok, witness))
    });
    let blow = pobar(&cover).and_then(|p| Ok((t_complex(&p)?, p)));
    r.run("betti-agree", || {
        let (t, _) = blow.as_ref().map_err(relay)?;
        let n = shared(&nrv)?.clone();
        let (bt, bs, bn) = (betti_z2(t), betti_z2(sub.complex()), betti_z2(&n));
        let ok = bt == bs && bs == bn;
        Ok((ok, json!({ "T": bt.0, "sd_base": bs.0, "nerve": bn.0, "T_size": t.len() })))
    });
    r.run("projections-induce-isomorphisms", || {
        let (t, p) = blow.as_ref().map_err(relay)?;
        let n = shared(&nrv)?.clone();
        let top = k.dim().unwrap_or(0);
        // The cover lives on Sd K, so λ_S lands in its subdivision.
        let ls = induced_homology_map(&lambda_s_to_sd(p, t, &sd(sub.complex()))?, top)?;
        let ln = induced_homology_map(&lambda_n_to_sd(p, t, &sd(&n))?, top)?;
        let ok = (0..=top).all(|d| ls.is_isomorphism_in(d) && ln.is_isomorphism_in(d));
        Ok((ok, json!({ "lambda_s_ranks": ls.ranks(), "lambda_n_ranks": ln.ranks() })))
    });
    r
}

/// Blowup of an arbitrary cover: the collapse of `Flag(PoBar)` onto `T`, and homology.
pub fn verify_blowup(instance: &str, c: &IndexedCover) -> VerificationReport {
    let mut r = VerificationReport::new(instance);
    let b = match Blowup::new(c) {
        Ok(b) => b,
        Err(e) => {
            r.run("blowup", || Err(e));
            return r;
        }
    };
    r.run("pairing-collapses-to-T", || {
        let trace = collapse(&b.flag, &b.pairing)?;
        let literal = literal_rule_check(&b.pobar, &b.flag);
        let ok = trace.result == b.t;
        let mut w = json!({
            "report": b.report(),
            "collapses": trace.steps.len(),
            "literal_rule_unpaired": literal.unpaired.iter().map(ToString::to_string).collect::<Vec<_>>(),
        });
        if !ok {
            w["difference"] = first_difference(&trace.result, &b.t);
        }
        Ok((ok, w))
    });
    r.run("betti-T-equals-base", || {
        let (bt, bk) = (betti_z2(&b.t), betti_z2(c.base()));
        Ok((bt == bk, json!({ "T": bt.0, "base": bk.0 })))
    });
    let good = goodness_report(c).map(|g| g.all_acyclic()).unwrap_or(false);
    if good {
        r.run("betti-T-equals-nerve", || {
            let (bt, bn) = (betti_z2(&b.t), betti_z2(b.pobar.nerve()));
            Ok((bt == bn, json!({ "T": bt.0, "nerve": bn.0 })))
        });
    }
    r
}

fn barcode_pair(cloud: &PointCloud, tol: f64) -> Result<(crate::homology::Barcode, crate::homology::Barcode)> {
    let cech = barcode_from_entries(&cech_values(cloud, 2)?).without_short_bars(tol);
    let alpha = barcode_from_entries(&alpha_values_2d(cloud)?).without_short_bars(tol);
    Ok((cech, alpha))
}

/// Degree 0 and 1 barcodes of the Čech and alpha filtrations of a planar cloud, with
/// endpoints compared within `tol`.
pub fn verify_cech_alpha(instance: &str, cloud: &PointCloud, tol: f64) -> VerificationReport {
    let mut r = VerificationReport::new(instance);
    let bars = barcode_pair(cloud, tol);
    for n in 0..=1usize {
        r.run(&format!("barcode-degree-{n}"), || {
            let (c, a) = bars.as_ref().map_err(relay)?;
            let ok = c.degree_matches(a, n, tol);
            Ok((ok, json!({ "cech": c.degree(n), "alpha": a.degree(n) })))
        });
    }
    r.run("alpha-inside-cech", || {
        let values: BTreeSet<u64> = alpha_values_2d(cloud)?.iter().map(|(_, v)| v.to_bits()).collect();
        for bits in values {
            let t = f64::from_bits(bits);
            let a = alpha_complex_2d(cloud, t)?;
            let c = cech_nerve(cloud, t, Some(2))?;
            if !a.is_subcomplex_of(&c) {
                return Ok((false, json!({ "radius": t, "simplex": a.iter().find(|s| !c.contains(s)).map(ToString::to_string) })));
            }
        }
        Ok((true, Value::Null))
    });
    r
}

/// Per-radius data for the bst model of the Čech complex.
struct Level {
    k: SimplicialComplex,
    sub: Subdivision,
    sd_sub: Subdivision,
    cover: IndexedCover,
    pobar: PoBar,
    t: SimplicialComplex,
    sd_nerve: Subdivision,
}

impl Level {
    fn new(k: SimplicialComplex) -> Result<Self> {
        let sub = sd(&k);
        let cover = bst_cover_of(&sub)?;
        let pobar = pobar(&cover)?;
        let t = t_complex(&pobar)?;
        let sd_nerve = sd(&nerve(&cover)?);
        let sd_sub = sd(sub.complex());
        Ok(Level { k, sub, sd_sub, cover, pobar, t, sd_nerve })
    }
}

fn functorial_square(a: &Level, b: &Level) -> Result<(Vec<bool>, Vec<bool>)> {
    let incl = SimplicialMap::inclusion(&a.k, &b.k)?;
    let f = sd_map_between(&incl, &a.sub, &b.sub)?;
    let phi: BTreeMap<CoverIndex, CoverIndex> = a.cover.index_set().into_iter().map(|i| (i, i)).collect();
    let m = CoveredSpaceMorphism::new(f.clone(), phi, a.cover.clone(), b.cover.clone())?;
    let top = induced_pobar_map(&m, &a.pobar, &b.pobar)?.flag_map(&a.t, &b.t)?;
    let nerve_map = sd_map_between(&induced_nerve_map(&m)?, &a.sd_nerve, &b.sd_nerve)?;
    let base_map = sd_map_between(&f, &a.sd_sub, &b.sd_sub)?;
    let base = check_square(
        &top,
        &base_map,
        &lambda_s_to_sd(&a.pobar, &a.t, &a.sd_sub)?,
        &lambda_s_to_sd(&b.pobar, &b.t, &b.sd_sub)?,
        1,
    )?;
    let nrv = check_square(
        &top,
        &nerve_map,
        &lambda_n_to_sd(&a.pobar, &a.t, &a.sd_nerve)?,
        &lambda_n_to_sd(&b.pobar, &b.t, &b.sd_nerve)?,
        1,
    )?;
    Ok((base, nrv))
}

/// Squares between consecutive critical radii of the Čech 2-skeleton, modelled by closed
/// barycentric star covers: `T_r → T_r'` against `Sd Č_r → Sd Č_r'` and the nerve maps.
pub fn verify_functorial(instance: &str, cloud: &PointCloud, max_levels: Option<usize>) -> VerificationReport {
    let mut r = VerificationReport::new(instance);
    r.run("squares-commute", || {
        let filt = InclusionFiltration::from_values(&cech_values(cloud, 2)?)?;
        let take = max_levels.unwrap_or(usize::MAX);
        let levels: Vec<(f64, Level)> = filt
            .values()
            .iter()
            .zip(filt.steps())
            .take(take)
            .map(|(&t, k)| Ok((t, Level::new(k.clone())?)))
            .collect::<Result<_>>()?;
        let mut squares = 0;
        for w in levels.windows(2) {
            let (base, nrv) = functorial_square(&w[0].1, &w[1].1)?;
            squares += 2;
            if base.iter().chain(&nrv).any(|ok| !ok) {
                return Ok((false, json!({ "r": w[0].0, "r_next": w[1].0, "base_square": base, "nerve_square": nrv })));
            }
        }
        Ok((true, json!({ "radii": levels.len(), "squares": squares })))
    });
    r
}

/// Connectivity transfer through `f: Sd K → Sd Nrv` for a cover whose `t`-fold intersections
/// are `(k − t + 1)`-connected. Homology stands in for homotopy: iso up to `k`, onto at `k + 1`.
pub fn verify_bjorner(instance: &str, c: &IndexedCover, k: usize) -> VerificationReport {
    let mut r = VerificationReport::new(instance);
    let setup = (|| -> Result<_> {
        let p = pobar(c)?;
        let sd_base = sd(c.base());
        let sd_nerve = sd(p.nerve());
        let f = f_to_sd(&p, &sd_base, &sd_nerve)?;
        Ok((p, f))
    })();
    r.run("intersections-connected", || {
        let (p, _) = setup.as_ref().map_err(relay)?;
        for j in p.nerve().iter() {
            let t = j.len();
            if k + 1 < t {
                continue;
            }
            let need = k + 1 - t;
            let kj = p.k_of(j).ok_or_else(|| NerveError::NotASimplex(j.clone()))?;
            let reduced = betti_z2(kj).reduced().unwrap_or_default();
            if reduced.iter().take(need + 1).any(|&b| b != 0) {
                return Ok((false, json!({ "J": j.to_string(), "required_connectivity": need, "reduced_betti": reduced })));
            }
        }
        Ok((true, Value::Null))
    });
    r.run("components-bijection", || {
        let (_, f) = setup.as_ref().map_err(relay)?;
        let src = components(f.source());
        let tgt = components(f.target());
        let comp_of: BTreeMap<usize, usize> =
            tgt.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&v| (v, i))).collect();
        let mut images = Vec::new();
        for c in &src {
            let imgs: BTreeSet<usize> = c.iter().map(|&v| comp_of[&f.apply_vertex(v)]).collect();
            if imgs.len() != 1 {
                return Ok((false, json!({ "component": c, "images": imgs })));
            }
            images.push(*imgs.iter().next().expect("one image"));
        }
        let distinct: BTreeSet<usize> = images.iter().copied().collect();
        let ok = distinct.len() == images.len() && distinct.len() == tgt.len();
        Ok((ok, json!({ "source_components": src.len(), "target_components": tgt.len() })))
    });
    let induced = setup.as_ref().ok().map(|(_, f)| induced_homology_map(f, k + 1));
    for n in 0..=k {
        r.run(&format!("H{n}-isomorphism"), || {
            let m = induced.as_ref().ok_or_else(|| NerveError::Inconsistent("setup failed".into()))?.as_ref().map_err(relay)?;
            let mat = &m.matrices[n];
            Ok((m.is_isomorphism_in(n), json!({ "rank_source": mat.cols, "rank_target": mat.rows, "rank_map": mat.rank() })))
        });
    }
    r.run(&format!("H{}-onto", k + 1), || {
        let m = induced.as_ref().ok_or_else(|| NerveError::Inconsistent("setup failed".into()))?.as_ref().map_err(relay)?;
        let mat = &m.matrices[k + 1];
        let ok = mat.rank() == mat.rows;
        Ok((
            ok,
            json!({
                "rank_source": mat.cols,
                "rank_target": mat.rows,
                "rank_map": mat.rank(),
                "isomorphism": m.is_isomorphism_in(k + 1),
            }),
        ))
    });
    r
}

/// Radii strictly between consecutive critical values of the Čech filtration, plus one beyond.
pub fn generic_radii(cloud: &PointCloud) -> Result<Vec<f64>> {
    let mut crit: Vec<f64> = cech_values(cloud, cloud.dim())?.into_iter().map(|(_, v)| v).collect();
    crit.sort_by(f64::total_cmp);
    crit.dedup();
    let mut radii: Vec<f64> = crit.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    radii.push(crit.last().copied().unwrap_or(0.0) * 1.25 + 0.1);
    Ok(radii)
}

fn random_in_ball(rng: &mut ChaCha8Rng, center: &[f64], radius: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = center.iter().map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 <= 1.0 {
            return center.iter().zip(&v).map(|(c, x)| c + radius * x).collect();
        }
    }
}

/// Γ and Ψ on pointed Čech covers at every generic radius: carried-ness, naturality of the
/// vertex assignment, and straight-line homotopy witnesses on sampled points.
pub fn verify_gamma_psi(instance: &str, cloud: &PointCloud, samples: usize, seed: u64) -> VerificationReport {
    let mut r = VerificationReport::new(instance);
    let radii = match generic_radii(cloud) {
        Ok(v) => v,
        Err(e) => {
            r.run("radii", || Err(e));
            return r;
        }
    };
    let covers: Result<Vec<_>> = radii
        .iter()
        .map(|&rad| {
            let pc = pointed_cech_cover(cloud, rad)?;
            let g = gamma_map(&pc)?;
            Ok((rad, pc, g))
        })
        .collect();
    let covers = match covers {
        Ok(c) => c,
        Err(e) => {
            r.run("pointed-covers", || Err(e));
            return r;
        }
    };
    r.run("gamma-carried", || {
        for (rad, pc, g) in &covers {
            let c = check_gamma_carried(g, pc.cover(), GEOM_TOL)?;
            if !c.carried {
                return Ok((false, json!({ "radius": rad, "witness": c.witness })));
            }
        }
        Ok((true, json!({ "radii": covers.len() })))
    });
    r.run("gamma-naturality", || {
        for w in covers.windows(2) {
            let (small, large) = (w[0].2.assignment(), w[1].2.assignment());
            for (j, p) in small {
                if large.get(j) != Some(p) {
                    return Ok((false, json!({ "r": w[0].0, "r_next": w[1].0, "J": j.to_string() })));
                }
            }
        }
        Ok((true, Value::Null))
    });
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi_fail: Option<Value> = None;
    let mut witness_fail: Option<Value> = None;
    let mut counts = Vec::new();
    for (rad, pc, g) in &covers {
        let mut xs: Vec<Vec<f64>> = cloud.points().to_vec();
        xs.extend(pc.points().values().cloned());
        while xs.len() < samples {
            let i = rng.gen_range(0..cloud.len());
            xs.push(random_in_ball(&mut rng, cloud.point(i), *rad));
        }
        counts.push(xs.len());
        for x in &xs {
            if psi_fail.is_none() {
                match psi_eval(x, pc.cover(), pc.epsilon()) {
                    Ok(psi) => {
                        for (&i, e) in pc.cover().elements() {
                            if e.contains(x, GEOM_TOL) && !psi.is_maximal_at_within(i, 1e-9) {
                                psi_fail = Some(json!({ "radius": rad, "x": x, "index": i, "psi": psi.coords() }));
                                break;
                            }
                        }
                    }
                    Err(e) => psi_fail = Some(json!({ "radius": rad, "x": x, "error": e.to_string() })),
                }
            }
            if witness_fail.is_none() {
                if let Err(e) = homotopy_witness(x, pc, g) {
                    witness_fail = Some(json!({ "radius": rad, "x": x, "error": e.to_string() }));
                }
            }
        }
    }
    let summary = json!({ "covers": counts.len(), "min_samples": counts.iter().min(), "total_samples": counts.iter().sum::<usize>() });
    // Both checks share one pass over the samples, so each is charged half of it.
    let ms = start.elapsed().as_secs_f64() * 1e3 / 2.0;
    r.record("psi-carried", psi_fail.is_none(), psi_fail.unwrap_or_else(|| summary.clone()), ms);
    r.record("homotopy-witness", witness_fail.is_none(), witness_fail.unwrap_or(summary), ms);
    r
}

/// Dropping index `j` whose element lies inside element `l`.
pub fn verify_duplicate(instance: &str, c: &IndexedCover, j: CoverIndex, l: CoverIndex) -> VerificationReport {
    let mut r = VerificationReport::new(instance);
    let dd = drop_duplicate(c, j, l);
    r.run("collapse-sequence-valid", || {
        let dd = dd.as_ref().map_err(relay)?;
        let full = nerve(c)?;
        let end = replay_collapses(&full, &dd.steps)?;
        Ok((end == dd.nerve, json!({ "steps": dd.steps.len(), "from": full.len(), "to": dd.nerve.len() })))
    });
    r.run("betti-identical", || {
        let dd = dd.as_ref().map_err(relay)?;
        let full = nerve(c)?;
        Ok((betti_z2(&full) == betti_z2(&dd.nerve), json!({ "before": betti_json(&full), "after": betti_json(&dd.nerve) })))
    });
    r
}

/// Random rational points of `|K|`: exact round trip through `Sd K`, and maximal coordinate
/// at `v` exactly when the subdivision carrier lies in `bst(v)`.
pub fn verify_coordinates(instance: &str, k: &SimplicialComplex, samples: usize, seed: u64) -> VerificationReport {
    let mut r = VerificationReport::new(instance);
    let sub = sd(k);
    let simplices: Vec<&Simplex> = k.iter().collect();
    let stars: Result<BTreeMap<usize, SimplicialComplex>> =
        k.vertices().into_iter().map(|v| Ok((v, bst(&sub, v)?))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<BarycentricPoint<BigRational>> = (0..samples)
        .map(|_| {
            let s = simplices[rng.gen_range(0..simplices.len())].clone();
            // Small integer weights make ties, and hence boundary points, common.
            let w: Vec<i64> = s.vertices().iter().map(|_| rng.gen_range(0..=4)).collect();
            let w = if w.iter().all(|&x| x == 0) { vec![1; w.len()] } else { w };
            let total: i64 = w.iter().sum();
            let coords = w.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(total))).collect();
            BarycentricPoint::new(s, coords).expect("weights sum to one").normalized()
        })
        .collect();
    r.run("round-trip-exact", || {
        for x in &points {
            let y = base_to_sd_coords(x, &sub)?;
            let z = sd_to_base_coords(&y, &sub)?.normalized();
            if z != *x {
                return Ok((false, json!({ "x": format!("{x:?}"), "back": format!("{z:?}") })));
            }
        }
        Ok((true, json!({ "samples": points.len() })))
    });
    r.run("bst-maximality", || {
        let stars = stars.as_ref().map_err(relay)?;
        for x in &points {
            let y = base_to_sd_coords(x, &sub)?;
            for (&v, star) in stars {
                let maximal = x.is_maximal_at(v);
                let member = star.contains(y.support());
                if maximal != member {
                    return Ok((false, json!({ "x": format!("{x:?}"), "vertex": v, "maximal": maximal, "in_bst": member })));
                }
            }
        }
        Ok((true, json!({ "samples": points.len() })))
    });
    r
}

/// A cloud's cover as planar balls, for drawing and export.
pub fn cover_elements(cloud: &PointCloud, radius: f64) -> Vec<CoverElement> {
    cloud.points().iter().map(|p| CoverElement::ball(p.clone(), radius)).collect()
}
