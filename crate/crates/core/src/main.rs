use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use sphmap::degrees::{deg_hom_explained, homs_up_to_conjugacy, mapping_degree_set, out_data};
use sphmap::groups::words::normal_forms;
use sphmap::groups::{cached_group, characteristic_subgroups, conjugacy_classes, subgroups, Group, GroupSpec};
use sphmap::homs::{automorphism_group, out_group, outer_classes};
use sphmap::lens::{homeomorphic, lens_degree_set, lens_of_cyclic, oriented_equivalent, DegreeSet, LensSpace};
use sphmap::oracle::{list_tables, verify_table, Status, VerificationReport};
use sphmap::Error;

#[derive(Parser)]
#[command(name = "sphmap", version, about = "Mapping degrees between spherical 3-manifolds S^3/G")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structure of a group: Z(m), L(m;r1,r2), D*(n), O*, I*, T'(q), D'(n,q), Z(m)xG.
    Group {
        spec: String,
        #[command(flatten)]
        view: GroupView,
    },
    /// Homomorphisms G1 -> G2 up to conjugacy, with their degrees.
    Homs { domain: String, codomain: String },
    /// The degree set D(M, N); a leading '-' reverses orientation.
    Degrees {
        #[arg(allow_hyphen_values = true)]
        domain: String,
        #[arg(allow_hyphen_values = true)]
        codomain: String,
        /// Show how each degree was obtained.
        #[arg(long)]
        explain: bool,
    },
    /// Compare two lens spaces.
    Lens {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Replay the stored reference tables.
    VerifyPaper {
        #[arg(long)]
        table: Option<String>,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct GroupView {
    #[arg(long)]
    classes: bool,
    #[arg(long)]
    subgroups: bool,
    #[arg(long)]
    char: bool,
    #[arg(long)]
    out: bool,
}

/// Exit status for a library error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::SpecInvalid(_) => 2,
        Error::CapExceeded { .. } => 3,
        _ => 1,
    }
}

/// A manifold argument: optional '-' for reversed orientation, then a spec.
fn manifold(text: &str) -> Result<(bool, GroupSpec), Error> {
    let t = text.trim();
    let (reversed, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let spec: GroupSpec = body.parse()?;
    spec.validate()?;
    Ok((reversed, spec))
}

fn group(text: &str) -> Result<Arc<Group>, Error> {
    let spec: GroupSpec = text.parse()?;
    spec.validate()?;
    cached_group(&spec)
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        print!("{text}");
    }
}

fn run_group(spec: &str, view: &GroupView, as_json: bool) -> Result<(), Error> {
    let g = group(spec)?;
    let nf = normal_forms(&g);
    let word = |x: usize| g.fmt_word(&nf[x]);
    if view.classes {
        let classes = conjugacy_classes(&g);
        let rows: Vec<_> = classes
            .iter()
            .map(|c| json!({"representative": word(c.representative), "order": c.element_order, "size": c.members.len()}))
            .collect();
        let mut text = format!("{} classes of {}\n", classes.len(), g.display_name());
        for c in &classes {
            text.push_str(&format!("  [{}]  order {}  size {}\n", word(c.representative), c.element_order, c.members.len()));
        }
        emit(as_json, json!({"group": g.display_name(), "classes": rows}), text);
    } else if view.subgroups {
        let subs = subgroups(&g)?;
        let mut rows = Vec::new();
        let mut text = format!("subgroup classes of {}\n", g.display_name());
        let mut seen = std::collections::HashSet::new();
        for r in subs.iter().filter(|r| seen.insert(r.class_id)) {
            let gens: Vec<String> = r.generators.iter().map(|&x| word(x)).collect();
            let lens = if r.classification.spec().is_some_and(|s| s.is_cyclic()) && r.order() > 1 {
                lens_of_cyclic(&g, &r.generators).ok().map(|(l, _)| l.to_string())
            } else {
                None
            };
            text.push_str(&format!(
                "  order {:>4}  {:<14} <{}>  conjugates {}{}{}\n",
                r.order(),
                r.classification.to_string(),
                gens.join(", "),
                r.class_size,
                if r.is_normal { "  normal" } else { "" },
                lens.as_ref().map(|l| format!("  S^3/H = {l}")).unwrap_or_default()
            ));
            rows.push(json!({
                "order": r.order(), "type": r.classification.to_string(), "generators": gens,
                "conjugates": r.class_size, "normal": r.is_normal, "lens": lens,
            }));
        }
        emit(as_json, json!({"group": g.display_name(), "subgroups": rows}), text);
    } else if view.char {
        let c = characteristic_subgroups(&g);
        let ty = |e: &[u32]| {
            let all: Vec<usize> = e.iter().map(|&x| x as usize).collect();
            sphmap::groups::subgroups::classify_subset(&g, e, &all).map(|x| x.to_string())
        };
        let (comm, center) = (ty(&c.commutator)?, ty(&c.center)?);
        let text = format!(
            "commutator subgroup  {comm} (order {})\nabelianization       {:?}\ncenter               {center} (order {})\n",
            c.commutator.len(),
            c.abelianization,
            c.center.len()
        );
        emit(
            as_json,
            json!({"group": g.display_name(), "commutator": {"type": comm, "order": c.commutator.len()},
                   "abelianization": c.abelianization, "center": {"type": center, "order": c.center.len()}}),
            text,
        );
    } else if view.out {
        let auts = automorphism_group(&g)?;
        let classes = outer_classes(&auts);
        let (out, _) = out_group(&auts, &classes);
        let k = out.order();
        let abelian = (0..k).all(|x| (0..k).all(|y| out.mul(x, y) == out.mul(y, x)));
        let orders: Vec<usize> = (0..k).map(|x| out.elem_order(x)).collect();
        let invariants = abelian.then(|| sphmap::groups::structure::abelian_invariants(&orders));
        let degrees: Option<Vec<u64>> = out_data(&g).ok().map(|d| d.elements.iter().map(|e| e.degree).collect());
        let mut text = format!("|Aut| = {}, |Out| = {k}, {}\n", auts.len(), if abelian { "abelian" } else { "non-abelian" });
        if let Some(inv) = &invariants {
            text.push_str(&format!("invariants {inv:?}\n"));
        }
        if let Some(d) = &degrees {
            text.push_str(&format!("outer classes have degrees {d:?} mod {}\n", g.order()));
        }
        emit(
            as_json,
            json!({"group": g.display_name(), "aut_order": auts.len(), "out_order": k, "abelian": abelian,
                   "invariants": invariants, "degrees": degrees}),
            text,
        );
    } else {
        let gens: Vec<String> = g.generators().iter().map(|x| x.name.clone()).collect();
        let text = format!("{}: order {}, generators {}\n", g.display_name(), g.order(), gens.join(", "));
        emit(as_json, json!({"group": g.display_name(), "order": g.order(), "generators": gens}), text);
    }
    Ok(())
}

fn run_homs(a: &str, b: &str, as_json: bool) -> Result<(), Error> {
    let (g1, g2) = (group(a)?, group(b)?);
    let homs = homs_up_to_conjugacy(&g1, &g2)?;
    let mut rows = Vec::new();
    let mut text = format!("{} homomorphisms {} -> {} up to conjugacy\n", homs.len(), g1.display_name(), g2.display_name());
    for psi in &homs {
        let deg = deg_hom_explained(psi).map(|(d, _)| d);
        let d = match &deg {
            Ok(d) => d.to_string(),
            Err(e) => format!("error: {e}"),
        };
        text.push_str(&format!("  {}  kernel {}  image {}  degree {d}\n", psi.describe(), psi.kernel().len(), psi.image().len()));
        rows.push(json!({"images": psi.image_words(), "kernel_order": psi.kernel().len(),
                         "image_order": psi.image().len(), "degree": deg.ok()}));
    }
    emit(as_json, json!({"domain": g1.display_name(), "codomain": g2.display_name(), "modulus": g2.order(), "homs": rows}), text);
    Ok(())
}

fn run_degrees(a: &str, b: &str, explain: bool, as_json: bool) -> Result<(), Error> {
    let ((r1, m), (r2, n)) = (manifold(a)?, manifold(b)?);
    let set = mapping_degree_set(&m, &n)?;
    let set = if r1 != r2 { set.negated() } else { set };
    let mut text = format!("{set}\n");
    let mut explanations = Vec::new();
    if explain {
        let (g1, g2) = (cached_group(&m)?, cached_group(&n)?);
        for psi in homs_up_to_conjugacy(&g1, &g2)? {
            let (_, ex) = deg_hom_explained(&psi)?;
            text.push_str(&format!("  {}  route {}  degree {} mod {}\n", ex.hom, ex.route, ex.degree, ex.modulus));
            explanations.push(ex);
        }
    }
    let mut value = serde_json::to_value(&set).expect("serializable");
    if explain {
        value["explanations"] = serde_json::to_value(&explanations).expect("serializable");
    }
    emit(as_json, value, text);
    Ok(())
}

fn lens_arg(text: &str) -> Result<LensSpace, Error> {
    let (reversed, spec) = manifold(text)?;
    let l = LensSpace::from_spec(&spec).ok_or_else(|| Error::SpecInvalid(format!("{text} is not a lens space")))?;
    Ok(if reversed { l.reversed() } else { l })
}

#[derive(Serialize)]
struct LensReport {
    first: LensSpace,
    second: LensSpace,
    homeomorphic: bool,
    orientation_preserving_homeomorphic: bool,
    degrees: DegreeSet,
}

fn run_lens(a: &str, b: &str, as_json: bool) -> Result<(), Error> {
    let (l1, l2) = (lens_arg(a)?, lens_arg(b)?);
    let r = LensReport {
        first: l1,
        second: l2,
        homeomorphic: homeomorphic(&l1, &l2),
        orientation_preserving_homeomorphic: oriented_equivalent(&l1, &l2),
        degrees: lens_degree_set(&l1, &l2),
    };
    let text = format!(
        "{l1} vs {l2}\n  homeomorphic: {}\n  orientation-preserving: {}\n  degrees: {}\n",
        r.homeomorphic, r.orientation_preserving_homeomorphic, r.degrees
    );
    emit(as_json, serde_json::to_value(&r).expect("serializable"), text);
    Ok(())
}

fn print_report(r: &VerificationReport) {
    println!("{} [{}]: {} — {} rows", r.table_id, r.title, r.status, r.rows.len());
    for row in r.rows.iter().chain(&r.completeness) {
        if row.status == Status::Pass {
            continue;
        }
        println!("  {:<11} {}  ({})", row.status.to_string(), row.label, row.params);
        println!("      expected: {}", row.expected);
        println!("      computed: {}", row.computed);
        if let Some(n) = &row.note {
            println!("      note: {n}");
        }
        if let Some(rep) = &row.reproducer {
            println!("      reproduce: {rep}");
        }
    }
}

fn run_verify(table: Option<&str>, as_json: bool) -> Result<bool, Error> {
    let reports: Vec<VerificationReport> = match table {
        Some(id) => vec![verify_table(id)?],
        None => list_tables().into_iter().map(verify_table).collect::<Result<_, _>>()?,
    };
    if as_json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
    } else {
        for r in &reports {
            print_report(r);
        }
        let count = |s| reports.iter().filter(|r| r.status == s).count();
        println!("\n{} tables: {} pass, {} discrepancy, {} fail", reports.len(), count(Status::Pass), count(Status::Discrepancy), count(Status::Fail));
    }
    Ok(reports.iter().all(|r| r.status != Status::Fail))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not usage errors
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.cmd {
        Cmd::Group { spec, view } => run_group(spec, view, cli.json).map(|_| true),
        Cmd::Homs { domain, codomain } => run_homs(domain, codomain, cli.json).map(|_| true),
        Cmd::Degrees { domain, codomain, explain } => run_degrees(domain, codomain, *explain, cli.json).map(|_| true),
        Cmd::Lens { first, second } => run_lens(first, second, cli.json).map(|_| true),
        Cmd::VerifyPaper { table } => run_verify(table.as_deref(), cli.json),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
