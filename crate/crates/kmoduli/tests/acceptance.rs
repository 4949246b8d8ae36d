//! Acceptance suite: each numbered criterion runs at its stated tolerance and
//! prints one pass/fail line (visible with `cargo test --test acceptance --
//! --nocapture`).

use std::time::Instant;

use kmoduli::check::{run_paper_check, RunConfig};
use kmoduli::dataset::{gitcases, quartics, stables, toricchecks, wall_cases, ztables};
use kmoduli::forms::lookup;
use kmoduli::git::{hm_weight, limit_along, nodal_git_status, GitStatus, Limit, OnePS};
use kmoduli::kvol::{gap_bound_check, product_self_intersection, s_invariant, wall_solve, ProductSpace, UC};
use kmoduli::poly::parse_mpoly;
use kmoduli::quad::Field;
use kmoduli::rat::{rat, ratq, to_f64};
use kmoduli::ratfn::RatFn;
use kmoduli::singular::{
    discriminant, mpoly_radical, normalize_point, rational_singular_points, surface_singularities,
    QuarticSingReport, SurfaceSingReport, TernaryQuartic,
};
use kmoduli::toric::{
    anticanonical_polytope, class_rank, cone_diagnostics, fans, is_reflexive, picard_rank,
    toric_triple_intersections,
};
use kmoduli::zariski::validate_table;

fn report(criterion: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(msg) => println!("criterion {criterion}: PASS - {msg}"),
        Err(msg) => {
            println!("criterion {criterion}: FAIL - {msg}");
            panic!("criterion {criterion} failed: {msg}");
        }
    }
}

#[test]
fn criterion_01_wall_value() {
    let start = Instant::now();
    let outcome = (|| {
        let wall = wall_cases()
            .into_iter()
            .find(|w| w.id == "wall-main")
            .ok_or("missing wall case")?;
        // the S side regenerates from the encoded region volumes
        let table = stables::all_s_tables()
            .into_iter()
            .find(|t| t.id == "s-wall-lemma-frame")
            .ok_or("missing wall table")?;
        let s = s_invariant(&table.table).map_err(|e| e.to_string())?;
        if s != wall.problem.s {
            return Err("integrated S differs from the encoded closed form".into());
        }
        let roots = wall_solve(&wall.problem).map_err(|e| e.to_string())?;
        if roots.len() != 1 {
            return Err(format!("{} roots in the window", roots.len()));
        }
        let mut iv = roots[0].clone();
        iv.refine(&ratq(1, 10_000_000));
        let wall_poly = parse_mpoly("10*c^3 - 34*c^2 + 35*c - 10", &["c"]).unwrap();
        if iv.polynomial.monic_lex() != wall_poly.monic_lex() {
            return Err(format!("defining polynomial {}", iv.polynomial));
        }
        let mid = to_f64(&iv.midpoint());
        if (mid - 0.47233).abs() >= 1e-5 {
            return Err(format!("refined midpoint {mid}"));
        }
        let elapsed = start.elapsed();
        if elapsed.as_secs_f64() >= 1.0 {
            return Err(format!("runtime {:?} exceeds 1 s", elapsed));
        }
        Ok(format!(
            "unique root ~ {mid:.6} of the stated cubic, computed in {:?}",
            elapsed
        ))
    })();
    report("01 wall value", outcome);
}

#[test]
fn criterion_02_s_invariant_identities() {
    let start = Instant::now();
    let outcome = (|| {
        let required: Vec<RatFn> = [
            ("9 - 7*c", "3"),
            ("3 - 2*c", "3"),
            ("6 - 5*c", "3"),
            ("9 - 8*c", "3"),
            ("(1 - c)*(6*c^2 - 20*c + 17)", "3*(3 - 2*c)^2"),
            ("-14*c^3 + 62*c^2 - 91*c + 44", "3*(3 - 2*c)^2"),
            ("-14*c^3 + 58*c^2 - 80*c + 37", "3*(3 - 2*c)^2"),
            ("-2*(17*c^3 - 73*c^2 + 104*c - 49)", "3*(3 - 2*c)^2"),
            ("-42*c^3 + 182*c^2 - 262*c + 125", "3*(3 - 2*c)^2"),
            ("-10*c^3 + 46*c^2 - 71*c + 37", "3*(3 - 2*c)^2"),
        ]
        .iter()
        .map(|(n, d)| RatFn::parse(n, d, "c").unwrap())
        .collect();
        let tables = stables::all_s_tables();
        for want in &required {
            if !tables.iter().any(|t| t.expected == *want) {
                return Err(format!("closed form {want} not among the encoded tables"));
            }
        }
        for t in &tables {
            let s = s_invariant(&t.table).map_err(|e| format!("{}: {e}", t.id))?;
            if s != t.expected {
                return Err(format!("{}: got {s}, expected {}", t.id, t.expected));
            }
        }
        let elapsed = start.elapsed();
        if elapsed.as_secs_f64() >= 10.0 {
            return Err(format!("runtime {:?} exceeds 10 s", elapsed));
        }
        Ok(format!(
            "{} tables reproduce their closed forms exactly ({} required identities present) in {:?}",
            tables.len(),
            required.len(),
            elapsed
        ))
    })();
    report("02 S-invariant identities", outcome);
}

#[test]
fn criterion_03_local_threshold_root() {
    let outcome = (|| {
        let wall = wall_cases()
            .into_iter()
            .find(|w| w.id == "wall-local-threshold")
            .ok_or("missing local threshold case")?;
        // window (0.32, 0.34) as exact rationals
        if wall.problem.window != (ratq(8, 25), ratq(17, 50)) {
            return Err("window is not (0.32, 0.34)".into());
        }
        let roots = wall_solve(&wall.problem).map_err(|e| e.to_string())?;
        if roots.len() != 1 {
            return Err(format!("{} roots isolated", roots.len()));
        }
        let mut iv = roots[0].clone();
        iv.refine(&ratq(1, 10_000_000));
        let cubic = parse_mpoly("7*c^3 - 23*c^2 + 22*c - 5", &["c"]).unwrap();
        if iv.polynomial.monic_lex() != cubic.monic_lex() {
            return Err(format!("defining polynomial {}", iv.polynomial));
        }
        let mid = to_f64(&iv.midpoint());
        if (mid - 0.3293).abs() > 1e-4 {
            return Err(format!("refined midpoint {mid}"));
        }
        Ok(format!("smallest root of the stated cubic ~ {mid:.6}"))
    })();
    report("03 local threshold", outcome);
}

#[test]
fn criterion_04_git_witnesses() {
    let outcome = (|| {
        let witnesses = gitcases::destabilizing_witnesses();
        if witnesses.len() < 12 {
            return Err(format!("only {} witnesses encoded", witnesses.len()));
        }
        for named in [
            OnePS::diag(1, -1, 0, 2, -2),
            OnePS::diag(-2, 2, -6, 3, 3),
            OnePS::diag(-3, 3, -2, 1, 1),
            OnePS::diag(-5, 5, -4, -3, 7),
            OnePS::diag(-1, 1, -3, -3, 6),
        ] {
            if !witnesses.iter().any(|w| w.lambda == named) {
                return Err(format!("named subgroup {named} missing from the dataset"));
            }
        }
        for w in &witnesses {
            let mu = hm_weight(&w.form, &w.lambda).map_err(|e| format!("{}: {e}", w.id))?;
            if mu <= 0 {
                return Err(format!("{}: mu = {mu}", w.id));
            }
        }
        let zero = gitcases::mu_zero_cases();
        if zero.len() < 3 {
            return Err("fewer than three weight-zero certificates".into());
        }
        for z in &zero {
            let mu = hm_weight(&z.form, &z.lambda).map_err(|e| format!("{}: {e}", z.id))?;
            if mu != 0 {
                return Err(format!("{}: mu = {mu}", z.id));
            }
            match limit_along(&z.form, &z.lambda).map_err(|e| format!("{}: {e}", z.id))? {
                Limit::Form(limit) => {
                    if !limit.support().all(|m| z.family_support.contains(&m)) {
                        return Err(format!("{}: limit leaves the {} family", z.id, z.family));
                    }
                }
                other => return Err(format!("{}: {other:?}", z.id)),
            }
        }
        Ok(format!(
            "{} destabilizing certificates positive, {} weight-zero limits land in their families",
            witnesses.len(),
            zero.len()
        ))
    })();
    report("04 GIT witnesses", outcome);
}

#[test]
fn criterion_05_discriminant_types() {
    let outcome = (|| {
        for (name, expect) in [
            ("R0", "(y0*y2 + y1^2)^2"),
            ("R2", "(y0*y2 - y1^2)^2"),
            ("R3", "y1^2*(y1^2 + 4*y0*y2)"),
            ("R1", "y0*y2*(4*y1^2 + y0*y2)"),
        ] {
            let d = discriminant(&lookup(name, &[]).unwrap());
            if !d.proportional_to(&TernaryQuartic::parse(expect)) {
                return Err(format!("{name}: discriminant {d}"));
            }
        }
        // perfect squares of smooth conics for the two reducible surfaces
        for name in ["R0", "R2"] {
            let d = discriminant(&lookup(name, &[]).unwrap());
            let radical = mpoly_radical(&d.0);
            if d.0.monic_lex() != radical.mul(&radical).monic_lex()
                || radical.total_degree() != 2
            {
                return Err(format!("{name}: not the square of a conic"));
            }
            let conic = TernaryQuartic::new(radical);
            match rational_singular_points(&conic, Field::Q) {
                Ok(QuarticSingReport::Points(p)) if p.is_empty() => {}
                _ => return Err(format!("{name}: conic not smooth")),
            }
        }
        // singularity inventories of the three families and the extra node
        for (name, want) in [
            ("Cnonfin", vec!["A2", "A2"]),
            ("Cnonred", vec!["A3", "A3"]),
            ("C2xA1", vec!["A1", "A1", "A1", "A1"]),
            ("R1", vec!["A1", "A1", "A1", "A1", "A1"]),
        ] {
            let f = lookup(name, &[]).unwrap();
            match surface_singularities(&f).map_err(|e| format!("{name}: {e}"))? {
                SurfaceSingReport::Points(pts) => {
                    let mut got: Vec<String> =
                        pts.iter().map(|p| p.report.ade_type.label()).collect();
                    got.sort();
                    let mut want: Vec<String> = want.iter().map(|s| s.to_string()).collect();
                    want.sort();
                    if got != want {
                        return Err(format!("{name}: {got:?}"));
                    }
                }
                other => return Err(format!("{name}: {other:?}")),
            }
        }
        Ok("four named discriminants and four singularity inventories match".into())
    })();
    report("05 discriminant types", outcome);
}

#[test]
fn criterion_06_classified_quartics() {
    let outcome = (|| {
        let rows = quartics::wall_rows();
        if rows.len() < 15 {
            return Err(format!("only {} rows", rows.len()));
        }
        for row in &rows {
            let report = rational_singular_points(&row.curve, Field::Q)
                .map_err(|e| format!("{}: {e}", row.id))?;
            let QuarticSingReport::Points(pts) = report else {
                return Err(format!("{}: non-reduced", row.id));
            };
            if pts.len() != row.expected.len() {
                return Err(format!(
                    "{}: {} singular points, expected {}",
                    row.id,
                    pts.len(),
                    row.expected.len()
                ));
            }
            for (coords, kind) in &row.expected {
                let want = normalize_point(&quartics::point(*coords)).unwrap();
                let hit = pts
                    .iter()
                    .find(|p| normalize_point(&p.point).unwrap() == want)
                    .ok_or(format!("{}: missing {coords:?}", row.id))?;
                if hit.report.ade_type.label() != *kind {
                    return Err(format!(
                        "{}: {coords:?} is {} not {kind}",
                        row.id,
                        hit.report.ade_type
                    ));
                }
            }
        }
        Ok(format!(
            "{} classified quartics reproduce their type-and-point inventories",
            rows.len()
        ))
    })();
    report("06 classified quartics", outcome);
}

#[test]
fn criterion_07_nodal_git() {
    let outcome = (|| {
        let cases = gitcases::nodal_cases();
        let ox = cases
            .iter()
            .find(|c| c.id == "nodal-ox")
            .ok_or("missing ox")?;
        if nodal_git_status(&ox.point).unwrap() != GitStatus::StrictlySemistable {
            return Err("ox not strictly semistable".into());
        }
        let line = cases
            .iter()
            .find(|c| c.id == "nodal-cubic-plus-line")
            .ok_or("missing cubic-plus-line")?;
        if nodal_git_status(&line.point).unwrap() != GitStatus::Stable {
            return Err("cubic plus inflectional line not stable".into());
        }
        let triples: Vec<_> = cases
            .iter()
            .filter(|c| c.id.starts_with("nodal-triple"))
            .collect();
        if triples.len() != 4 {
            return Err(format!("{} triple-point families", triples.len()));
        }
        for t in triples {
            if nodal_git_status(&t.point).unwrap() != GitStatus::Unstable {
                return Err(format!("{} not unstable", t.id));
            }
        }
        Ok("ox strictly polystable, inflectional case stable, four triple-point families unstable".into())
    })();
    report("07 nodal GIT", outcome);
}

#[test]
fn criterion_08_toric_invariants() {
    let outcome = (|| {
        let fan = fans::xn();
        let poly = anticanonical_polytope(&fan).map_err(|e| e.to_string())?;
        if !is_reflexive(&poly).map_err(|e| e.to_string())? {
            return Err("anticanonical polytope not reflexive".into());
        }
        if picard_rank(&fan).map_err(|e| e.to_string())? != 2 {
            return Err("picard rank differs from 2".into());
        }
        if class_rank(&fan).map_err(|e| e.to_string())? != 3 {
            return Err("class rank differs from 3".into());
        }
        let nonsimp: Vec<_> = cone_diagnostics(&fan)
            .into_iter()
            .filter(|r| !r.simplicial)
            .collect();
        if nonsimp.len() != 1
            || nonsimp[0].singularity_label != "odp"
            || nonsimp[0].odp_certificate.is_none()
        {
            return Err("node certificate failed".into());
        }
        let t = toric_triple_intersections(&fans::w_plus()).map_err(|e| e.to_string())?;
        let table = [
            (t.triple(1, 1, 1), rat(3)),
            (t.triple(0, 0, 0), rat(0)),
            (t.triple(1, 1, 0), rat(2)),
            (t.triple(0, 0, 1), rat(1)),
            (t.triple(2, 2, 0), rat(0)),
            (t.triple(2, 2, 1), rat(0)),
            (t.triple(2, 0, 0), rat(0)),
            (t.triple(1, 1, 2), rat(1)),
            (t.triple(0, 1, 2), rat(1)),
        ];
        if !table.iter().all(|(a, b)| a == b) {
            return Err("intersection table mismatch".into());
        }
        if toricchecks::displayed_system_solutions(20) != vec![(-2, 0, 0)] {
            return Err("displayed class system has a different solution set".into());
        }
        if toricchecks::corrected_system_solutions(20) != vec![(-2, 0, 0)] {
            return Err("corrected class system has a different solution set".into());
        }
        Ok("reflexive, picard 2, class 3, certified node, intersection table and class system".into())
    })();
    report("08 toric invariants", outcome);
}

#[test]
fn criterion_09_volume_rules() {
    let outcome = (|| {
        let failures = toricchecks::volume_rule_checks();
        if !failures.is_empty() {
            return Err(failures.join("; "));
        }
        Ok("all five rules match their brute-force expansions and the displayed region volumes".into())
    })();
    report("09 volume rules", outcome);
}

#[test]
fn criterion_10_zariski_validation() {
    let outcome = (|| {
        let tables = ztables::zariski_tables();
        if tables.len() < 15 {
            return Err(format!("only {} tables", tables.len()));
        }
        for t in &tables {
            let report = validate_table(t, 100, 20260810).map_err(|e| format!("{}: {e}", t.paper_label))?;
            if report.samples_run < 100 {
                return Err(format!(
                    "{}: only {} samples",
                    t.paper_label, report.samples_run
                ));
            }
            if !report.passed() {
                return Err(format!(
                    "{}: {:?}",
                    t.paper_label,
                    report.mismatches.first()
                ));
            }
        }
        let control = validate_table(&ztables::corrupted_table(), 60, 7)
            .map_err(|e| e.to_string())?;
        if control.passed() || control.mismatches.is_empty() {
            return Err("negative control unexpectedly validated".into());
        }
        Ok(format!(
            "{} tables exact at 100+ seeded samples each; corrupted control fails with witness",
            tables.len()
        ))
    })();
    report("10 zariski validation", outcome);
}

#[test]
fn criterion_11_volume_cross_check() {
    let outcome = (|| {
        let space = ProductSpace::new(&[1, 2]);
        let degrees = vec![
            parse_mpoly("2 - 2*c", &UC).unwrap(),
            parse_mpoly("3 - 2*c", &UC).unwrap(),
        ];
        let vol = product_self_intersection(&space, &degrees).map_err(|e| e.to_string())?;
        if vol != parse_mpoly("3*(2 - 2*c)*(3 - 2*c)^2", &UC).unwrap() {
            return Err("self-intersection differs".into());
        }
        let at_half = vol
            .eval_var("c", &ratq(1, 2))
            .constant_value()
            .ok_or("not constant")?;
        if at_half != rat(12) || at_half * rat(2) != rat(24) {
            return Err("degeneration volume is not 24".into());
        }
        for dims in [vec![3u32], vec![1, 2], vec![1, 1, 1]] {
            let (lhs, rhs, holds) = gap_bound_check(&ProductSpace::new(&dims));
            if !holds {
                return Err(format!("gap bound fails for {dims:?}: {lhs} vs {rhs}"));
            }
        }
        Ok("volume formula, degeneration volume 24, and gap bounds all hold".into())
    })();
    report("11 volume cross-check", outcome);
}

/// The regression suite runs clean end to end (unfiltered), mirroring the
/// command-line entry point.
#[test]
fn full_paper_check_suite_passes() {
    let cfg = RunConfig {
        jobs: 2,
        ..RunConfig::default()
    };
    let (reports, code) = run_paper_check(None, &cfg);
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.id.clone())
        .collect();
    println!(
        "paper-check: {} cases, {} failed",
        reports.len(),
        failed.len()
    );
    assert_eq!(code, 0, "failing cases: {failed:?}");
    assert!(reports.len() >= 90, "{} cases shipped", reports.len());
}
