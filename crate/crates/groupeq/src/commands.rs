//! Subcommand implementations. Each returns reports plus a deviation flag;
//! operational failures are errors.

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use groupeq_core::algebra::{
    certify_row_independence, certify_row_independence_rational, find_annihilator, AlgebraElement,
};
use groupeq_core::equations::{classify, EquationSystem, IntMatrix, SingularPrimes};
use groupeq_core::group::Elem;
use groupeq_core::subgroup::{center, derived_length, generators, is_nilpotent, normal_subgroups, Subgroup};
use groupeq_core::verify::{
    brute_force_solve_reversed, classify_group, counterexample_build, lemma_pk_check, lemma_pq_check,
    obstruction_check_forced, summarize, ClassificationReport,
};
use groupeq_core::wreath::{extract_rows, lemma2_transform, normalize_top_component, wreath_product};
use groupeq_core::{arith, enumerate::groups_of_order, Error, FiniteGroup};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{check_catalog, expected_count, load_catalog};
use crate::cli::{Command, Outcome};
use crate::config::Config;
use crate::formats::algebra_file::{parse_algebra, write_algebra, AlgebraRows};
use crate::formats::group_file::{load_group, write_generators};
use crate::formats::report::Report;
use crate::formats::system_file::{write_system, SystemFile};
use crate::parallel;

pub fn dispatch(cmd: &Command, c: &Config) -> anyhow::Result<Outcome> {
    match cmd {
        Command::AnalyzeSystem { system, prime } => analyze_system(system, prime, c),
        Command::Group { group } => group_info(group, c),
        Command::Classify { group } => classify_cmd(group, c),
        Command::AuditCatalog { dir, orders, pk_trials } => audit_catalog(dir, orders.as_deref(), *pk_trials, c),
        Command::WreathTransform {
            system,
            base,
            top,
            prime,
        } => wreath_transform(system, base, top, *prime, c),
        Command::CertifyRows { file } => certify_rows(file, c),
        Command::Counterexample {
            p,
            q,
            symbolic,
            force_zero_s,
            brute_force,
        } => counterexample(*p, *q, *symbolic, *force_zero_s, *brute_force, c),
        Command::Solve {
            system,
            group,
            reverse_check,
        } => solve(system, group.as_deref(), *reverse_check, c),
        Command::Enumerate { n, write } => enumerate(*n, write.as_deref(), c),
    }
}

pub fn format_matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let r: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
            format!("[{}]", r.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn join<T: ToString>(v: &[T]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn element_list(g: &FiniteGroup, xs: &[Elem]) -> String {
    xs.iter().map(|&x| g.element_name(x)).collect::<Vec<_>>().join(" ")
}

fn assignment(system: &EquationSystem, g: &FiniteGroup, xs: &[Elem]) -> String {
    system
        .variables()
        .iter()
        .zip(xs)
        .map(|(v, &x)| format!("{v}={}", g.element_name(x)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn load_system(path: &Path, group: Option<&Path>, c: &Config) -> anyhow::Result<SystemFile> {
    let mut f = SystemFile::load(path)?;
    let gpath = group.map(Path::to_path_buf).or_else(|| f.group_path.clone());
    if let Some(gp) = gpath {
        let g = load_group(&gp, &c.caps)?;
        f.bind(Arc::new(g))
            .with_context(|| format!("binding {}", path.display()))?;
    }
    Ok(f)
}

fn analyze_system(path: &Path, extra: &[u64], c: &Config) -> anyhow::Result<Outcome> {
    let f = load_system(path, None, c)?;
    let s = &f.system;
    let m = s.exponent_matrix();
    let cl = classify(s);
    let mut primes = c.primes.clone();
    for &p in extra {
        if !arith::is_prime(p) {
            bail!("{p} is not prime");
        }
        primes.push(p);
    }
    primes.sort_unstable();
    primes.dedup();
    let mut r = Report::new("analyze-system");
    r.push("system", path.file_name().unwrap_or_default().to_string_lossy());
    r.push("variables", s.variables().join(" "));
    r.push("equations", s.num_equations());
    r.push("matrix", format_matrix(&m));
    r.push("rank", cl.rank);
    if m.rows() == m.cols() {
        r.push("determinant", m.determinant()?);
    } else {
        r.push("determinant", "n/a (not square)");
    }
    r.push("invariant_factors", join(&cl.invariant_factors));
    r.push("nonsingular", cl.nonsingular);
    let singular = match &cl.singular_primes {
        SingularPrimes::All => "all".to_string(),
        SingularPrimes::Finite(v) => join(v),
    };
    r.push("singular_primes", singular);
    r.push("unimodular", cl.unimodular);
    let mut deviation = false;
    for &p in &primes {
        let from_snf = cl.is_p_nonsingular(p);
        let direct = m.rank_mod_p(p)? == s.num_equations();
        deviation |= from_snf != direct;
        r.push(format!("p_nonsingular.{p}"), from_snf);
    }
    r.push("rank_cross_check", if deviation { "mismatch" } else { "agrees" });
    if let Some(b) = s.binding() {
        r.push("bound_group", format!("{} (order {})", b.group.name(), b.group.order()));
    }
    let verdict = if cl.unimodular {
        "unimodular"
    } else if cl.nonsingular {
        "non-singular, not unimodular"
    } else {
        "singular"
    };
    r.push("verdict", verdict);
    Ok(Outcome {
        reports: vec![r],
        deviation,
    })
}

fn group_info(path: &Path, c: &Config) -> anyhow::Result<Outcome> {
    let g = load_group(path, &c.caps)?;
    let mut r = Report::new("group");
    r.push("name", g.name());
    r.push("order", g.order());
    r.push("abelian", g.is_abelian());
    r.push("nilpotent", is_nilpotent(&g));
    let dl = derived_length(&g);
    r.push("solvable", dl.is_some());
    r.push("metabelian", dl.is_some_and(|d| d <= 2));
    r.push(
        "derived_length",
        dl.map_or("n/a (not solvable)".to_string(), |d| d.to_string()),
    );
    r.push("center_order", center(&g).order());
    r.push("order_statistics", join(&g.order_statistics()));
    r.push("generators", element_list(&g, &generators(&g, &Subgroup::whole(&g))));
    match normal_subgroups(&g, &c.caps) {
        Ok(ns) => {
            let orders: Vec<usize> = ns.iter().map(Subgroup::order).collect();
            r.push("normal_subgroup_orders", join(&orders))
        }
        Err(Error::CapExceeded { .. }) => r.push("normal_subgroup_orders", "skipped (subgroup cap)"),
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome {
        reports: vec![r],
        deviation: false,
    })
}

fn classification_report(file: &str, g: &FiniteGroup, cr: &ClassificationReport) -> Report {
    let mut r = Report::new("classification");
    r.push("file", file);
    r.push("group", &cr.group);
    r.push("order", cr.order);
    r.push("abelian", cr.is_abelian);
    r.push("metabelian", cr.is_metabelian);
    r.push(
        "derived_length",
        cr.derived_length.map_or("n/a".into(), |d| d.to_string()),
    );
    match &cr.witness {
        Some(w) => {
            r.push("witness", "yes");
            r.push("witness_order", w.subgroup.order());
            r.push("witness_prime", w.prime);
            r.push("witness_generators", element_list(g, &generators(g, &w.subgroup)));
            r.push("witness_verified", cr.witness_verified);
        }
        None => {
            r.push("witness", "none");
        }
    }
    if cr.known_exception {
        r.push("known_exception", "affine group of Z_7");
    }
    r.push("note", &cr.note);
    r
}

fn classify_cmd(path: &Path, c: &Config) -> anyhow::Result<Outcome> {
    let g = load_group(path, &c.caps)?;
    let cr = classify_group(&g, &c.caps)?;
    let file = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
    let mut r = classification_report(&file, &g, &cr);
    let f = arith::factorize(g.order() as u64);
    let mut deviation = !summarize(std::slice::from_ref(&cr)).deviations.is_empty();
    if f.len() == 2 && f.iter().all(|&(_, e)| e == 1) {
        let pq = lemma_pq_check(&g)?;
        r.push("pq.sylow_q_count", pq.sylow_count);
        r.push("pq.witness_order", pq.witness.subgroup.order());
        r.push("pq.witness_prime", pq.witness.prime);
        r.push("pq.witness_verified", pq.witness_verified);
        deviation |= !pq.witness_verified || pq.sylow_count != 1;
    }
    Ok(Outcome {
        reports: vec![r],
        deviation,
    })
}

fn parse_orders(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| anyhow!("bad order `{t}`")))
        .collect()
}

fn audit_catalog(dir: &Path, orders: Option<&str>, pk_trials: usize, c: &Config) -> anyhow::Result<Outcome> {
    let filter = orders.map(parse_orders).transpose()?;
    let mut cat = load_catalog(dir, &c.caps)?;
    if let Some(f) = &filter {
        cat.entries.retain(|e| f.contains(&e.group.order()));
    }
    let check = check_catalog(&cat, &c.caps);
    let classified = cat
        .entries
        .par_iter()
        .map(|e| classify_group(&e.group, &c.caps).map_err(anyhow::Error::from))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let pk: Vec<Option<(String, groupeq_core::verify::PkReport)>> = cat
        .entries
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let n = e.group.order();
            if pk_trials == 0 || n > 16 || n == 1 || arith::prime_power(n as u64).is_none() {
                return Ok(None);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed.wrapping_add(i as u64));
            let rep = lemma_pk_check(&e.group, pk_trials, &mut rng, &c.caps)?;
            Ok(Some((e.file.clone(), rep)))
        })
        .collect::<groupeq_core::Result<Vec<_>>>()?;

    let mut reports: Vec<Report> = cat
        .entries
        .iter()
        .zip(&classified)
        .map(|(e, cr)| classification_report(&e.file, &e.group, cr))
        .collect();
    let summary = summarize(&classified);
    let mut r = Report::new("audit");
    r.push("catalog", dir.display());
    r.push("groups", cat.entries.len());
    r.push("load_errors", cat.errors.len());
    for (f, e) in &cat.errors {
        r.push(format!("load_error.{f}"), e);
    }
    for (order, present, expected) in &check.counts {
        let exp = expected.map_or("?".to_string(), |e| e.to_string());
        r.push(format!("count.{order}"), format!("{present} of {exp}"));
    }
    r.push("duplicates", check.duplicates.len());
    for (a, b) in &check.duplicates {
        r.push("duplicate", format!("{a} {b}"));
    }
    if !check.unchecked_orders.is_empty() {
        r.push("isomorphism_unchecked_orders", join(&check.unchecked_orders));
    }
    for s in &summary.orders {
        r.push(
            format!("order.{}", s.order),
            format!(
                "groups={} metabelian={} witnessed={}",
                s.groups, s.metabelian, s.witnessed
            ),
        );
        if !s.without_witness.is_empty() {
            r.push(
                format!("order.{}.without_witness", s.order),
                s.without_witness.join(" "),
            );
        }
    }
    let exceptions: Vec<&str> = classified
        .iter()
        .filter(|cr| cr.known_exception)
        .map(|cr| cr.group.as_str())
        .collect();
    if !exceptions.is_empty() {
        r.push("metabelian_without_witness_order_42", exceptions.join(" "));
    }
    let mut pk_failures = 0;
    for (file, rep) in pk.iter().flatten() {
        pk_failures += rep.trials - rep.solved;
        r.push(
            format!("pk.{file}"),
            format!("p={} solved={}/{}", rep.p, rep.solved, rep.trials),
        );
    }
    r.push("deviations", summary.deviations.len());
    for d in &summary.deviations {
        r.push("deviation", d);
    }
    r.push("reproduced", summary.reproduced);
    let deviation =
        !summary.deviations.is_empty() || !cat.errors.is_empty() || !check.duplicates.is_empty() || pk_failures > 0;
    reports.push(r);
    Ok(Outcome { reports, deviation })
}

fn wreath_transform(path: &Path, base: &Path, top: &Path, p: u64, c: &Config) -> anyhow::Result<Outcome> {
    if !arith::is_prime(p) {
        bail!("{p} is not prime");
    }
    let h = load_group(base, &c.caps)?;
    let b = load_group(top, &c.caps)?;
    let w = wreath_product(&h, &b, &c.caps)?;
    let mut f = SystemFile::load(path)?;
    f.bind(w.group().clone())
        .with_context(|| format!("binding {} in {}", path.display(), w.group().name()))?;
    let ws = normalize_top_component(&w, &f.system, p, &c.caps)?;
    let ts = lemma2_transform(&ws)?;
    let rows = extract_rows(&ts, p)?;
    let cert = certify_row_independence(&rows.rows)?;

    let top2 = ws.wreath.top();
    let mut r = Report::new("wreath-transform");
    r.push("wreath", format!("{} (order {})", w.group().name(), w.group().order()));
    r.push("top_order", top2.order());
    r.push("top_extended", top2.order() != b.order());
    r.push("shift", element_list(top2, &ws.shift));
    r.push("coordinate_variables", ts.system.num_variables());
    r.push("coordinate_equations", ts.system.num_equations());
    r.push("relation_holds", rows.relation_holds);
    r.push("augmentation_matches", rows.augmentation_matches);
    match &cert {
        Some(ct) => {
            r.push("certified", true);
            r.push("minor_columns", join(&ct.columns));
            r.push("minor_determinant", ct.determinant);
        }
        None => {
            r.push("certified", false);
        }
    }
    r.push("transformed_system", write_system(&ts.system, None).trim_end());
    r.push(
        "rows",
        write_algebra(&AlgebraRows::Modular(rows.rows.clone())).trim_end(),
    );
    let deviation = !rows.relation_holds || !rows.augmentation_matches || cert.is_none();
    Ok(Outcome {
        reports: vec![r],
        deviation,
    })
}

fn render_tuple(v: &[AlgebraElement]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ; ")
}

fn certify_rows(path: &Path, c: &Config) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("{}", path.display()))?;
    let rows = parse_algebra(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let mut r = Report::new("certify-rows");
    r.push("rows", rows.len());
    r.push("width", rows.width());
    match &rows {
        AlgebraRows::Modular(fam) => {
            r.push("ring", format!("Z_p[D] with {}", fam.spec()));
            if let Some(ct) = certify_row_independence(fam)? {
                r.push("verdict", "certified");
                r.push("minor_columns", join(&ct.columns));
                r.push("minor_determinant", ct.determinant);
            } else if !fam.spec().is_finite() {
                r.push("verdict", "unknown");
                r.push("reason", "augmented rows dependent; the group has a free part");
            } else {
                match find_annihilator(fam, c.caps.brute_force_work) {
                    Ok(Some(coeffs)) => {
                        r.push("verdict", "refuted-by-oracle");
                        r.push("annihilator", render_tuple(&coeffs));
                    }
                    Ok(None) => {
                        r.push("verdict", "unknown");
                        r.push(
                            "reason",
                            "augmented rows dependent; exhaustive search found no relation",
                        );
                    }
                    Err(Error::CapExceeded { .. }) => {
                        r.push("verdict", "unknown");
                        r.push(
                            "reason",
                            "augmented rows dependent; relation search exceeds the work cap",
                        );
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        AlgebraRows::Integral(spec, rs) => {
            r.push(
                "ring",
                format!(
                    "Z[D] with torsion={} free={}",
                    join(&spec.torsion_orders),
                    spec.free_rank
                ),
            );
            match certify_row_independence_rational(rs)? {
                Some(ct) => {
                    r.push("verdict", "certified");
                    r.push("minor_columns", join(&ct.columns));
                    r.push("minor_determinant", ct.determinant);
                }
                None => {
                    r.push("verdict", "unknown");
                    r.push("reason", "augmented rows dependent over Q");
                }
            }
        }
    }
    Ok(Outcome {
        reports: vec![r],
        deviation: false,
    })
}

fn counterexample(
    p: u64,
    q: u64,
    symbolic: bool,
    force_zero_s: bool,
    brute: bool,
    c: &Config,
) -> anyhow::Result<Outcome> {
    let inst = counterexample_build(p, q, symbolic, &c.caps)?;
    let ob = obstruction_check_forced(&inst, force_zero_s)?;
    let cl = classify(&inst.equation);
    let mut r = Report::new("counterexample");
    r.push("p", p);
    r.push("q", q);
    r.push("n", inst.n);
    r.push("m", inst.m);
    r.push("np_plus_mq", inst.n * p as i64 + inst.m * q as i64);
    r.push("equation", inst.display());
    r.push("exponent_sum", inst.equation.exponent_matrix().get(0, 0));
    r.push("unimodular", cl.unimodular);
    r.push("group_order", inst.order());
    r.push("realized", inst.wreath.is_some());
    r.push("S", &ob.s);
    r.push("s_is_zero", ob.s_is_zero);
    r.push("ring_identity", ob.ring_identity);
    let show = |v: Option<bool>| v.map_or("not computed".to_string(), |b| b.to_string());
    r.push("left", ob.left.as_deref().unwrap_or("not computed"));
    r.push("right", ob.right.as_deref().unwrap_or("not computed"));
    r.push("group_inequality", show(ob.group_inequality));
    r.push("coordinates_agree", show(ob.coordinates_agree));
    let (verdict, deviation) = if ob.s_is_zero {
        ("anomalous: S = 0", true)
    } else if ob.confirmed() && cl.unimodular {
        ("obstruction confirmed", false)
    } else if inst.wreath.is_none() && ob.ring_identity && cl.unimodular {
        ("partial: ring identity only (group not realized)", false)
    } else {
        ("obstruction not confirmed", true)
    };
    r.push("verdict", verdict);
    if brute {
        let w = inst
            .wreath
            .as_ref()
            .ok_or_else(|| anyhow!("--brute-force needs the realized group (drop --symbolic)"))?;
        let res = parallel::brute_force(&inst.equation, &c.caps)?;
        r.push("brute_force_candidates", res.candidates);
        match res.solution {
            Some(xs) => r.push("brute_force_solution", assignment(&inst.equation, w.group(), &xs)),
            None => r.push("brute_force_solution", "none (exhaustive)"),
        };
    }
    Ok(Outcome {
        reports: vec![r],
        deviation,
    })
}

fn solve(path: &Path, group: Option<&Path>, reverse_check: bool, c: &Config) -> anyhow::Result<Outcome> {
    let f = load_system(path, group, c)?;
    let s = &f.system;
    let b = s
        .binding()
        .ok_or_else(|| anyhow!("{}: no group given (use --group or a bind line)", path.display()))?;
    let g = b.group.clone();
    let res = parallel::brute_force(s, &c.caps)?;
    let mut r = Report::new("solve");
    r.push("system", path.file_name().unwrap_or_default().to_string_lossy());
    r.push("group", format!("{} (order {})", g.name(), g.order()));
    r.push("candidates", res.candidates);
    let mut deviation = false;
    match &res.solution {
        Some(xs) => {
            let ok = s.is_solution(xs)?;
            deviation |= !ok;
            r.push("solution", assignment(s, &g, xs));
            r.push("verified", ok);
        }
        None => {
            r.push("solution", "none (exhaustive)");
        }
    }
    if reverse_check {
        let rev = brute_force_solve_reversed(s, &c.caps)?;
        let agrees = match (&res.solution, &rev.solution) {
            (None, None) => true,
            (Some(a), Some(z)) => a <= z && s.is_solution(z)?,
            _ => false,
        };
        if let Some(z) = &rev.solution {
            r.push("greatest_solution", assignment(s, &g, z));
        }
        r.push("reverse_check", if agrees { "agrees" } else { "disagrees" });
        deviation |= !agrees;
    }
    Ok(Outcome {
        reports: vec![r],
        deviation,
    })
}

fn enumerate(n: usize, write: Option<&Path>, c: &Config) -> anyhow::Result<Outcome> {
    let groups = groups_of_order(n, &c.caps)?;
    let expected = expected_count(n);
    let mut r = Report::new("enumerate");
    r.push("order", n);
    r.push("found", groups.len());
    r.push("expected", expected.map_or("unknown".to_string(), |e| e.to_string()));
    for g in &groups {
        let dl = derived_length(g).map_or("-".to_string(), |d| d.to_string());
        r.push(
            format!("group.{}", g.name()),
            format!(
                "abelian={} derived_length={dl} center={} orders={}",
                g.is_abelian(),
                center(g).order(),
                join(&g.order_statistics())
            ),
        );
    }
    if let Some(dir) = write {
        std::fs::create_dir_all(dir).with_context(|| format!("{}", dir.display()))?;
        for (i, g) in groups.iter().enumerate() {
            let file = dir.join(format!("g{n:03}_{:02}.grp", i + 1));
            std::fs::write(&file, write_generators(g)).with_context(|| format!("{}", file.display()))?;
        }
        r.push("written", groups.len());
    }
    let deviation = expected.is_some_and(|e| e != groups.len());
    Ok(Outcome {
        reports: vec![r],
        deviation,
    })
}
