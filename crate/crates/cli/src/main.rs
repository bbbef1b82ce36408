//! `ordkit`: command-line front end.
//!
//! Every verb prints `key=value` lines with sorted keys (fractions as
//! `num/den`). Exit status: 0 when everything computed holds, 1 when an
//! asserted property fails, 2 on bad input or usage.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ordkit::bits::{self, Set};
use ordkit::extremal::{self, BoundClass, SearchClass};
use ordkit::graph::{self, graphs, UcFamily};
use ordkit::lattice::{self, Closure, HKind, Kind, Semilattice};
use ordkit::{io, show_ratio, Error, Family, Mode, Poset, Ratio};

#[derive(Parser)]
#[command(name = "ordkit", version, about = "Exact combinatorics on posets, set families and semilattices")]
struct Cli {
    /// Run without worker threads.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Build a named extremal construction and check its claimed property.
    Gen {
        /// One of 3.3.2, 3.3.4, 3.4.2, 3.6.2, 3.6.7, 3.8.2, 3.8.4.
        construction: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Write the family here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Structural report on a family file; `--k` asserts local k-width.
    Check {
        file: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Evaluate a size bound.
    Bound {
        /// uniform-r, general, general-log, centered, pseudotree, segments,
        /// arcs, m, m-circ, delta, g, h, h-upper, g-search.
        class: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<usize>,
        /// Poset for the lattice bounds (default: one point).
        #[arg(long, default_value = "chain:1")]
        poset: String,
    },
    /// Exhaustive maximum family size in a class.
    Maxsearch {
        /// all, centered, pseudotree, arcs, segments.
        class: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// P-densities of the join-irreducibles and the density property.
    Density {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value = "chain:1")]
        poset: String,
        /// Also report the chain-density threshold up to this length.
        #[arg(long)]
        threshold: Option<u64>,
        /// Read family lattices as union-closed instead of intersection-closed.
        #[arg(long)]
        union: bool,
    },
    /// Decide a matching property (MPf, MPt, MPw, optionally with -up).
    Matching {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value = "chain:1")]
        poset: String,
        #[arg(long)]
        kind: String,
        /// Fix the join-irreducible instead of trying every candidate.
        #[arg(long)]
        a: Option<usize>,
        /// Exit 1 when the property fails.
        #[arg(long)]
        expect: bool,
        #[arg(long)]
        union: bool,
    },
    /// Escape sets, μ and the density certificates of graph-generated
    /// families.
    Mu {
        /// Built-in example (4.11.8: hubs a, b and points x1..x5).
        #[arg(long)]
        example: Option<String>,
        /// Family file (union-closed, with the empty set).
        #[arg(long)]
        family: Option<String>,
        /// Comma-separated generator U (default: a,b for the example).
        #[arg(long = "U")]
        u: Option<String>,
        /// Comma-separated X disjoint from U.
        #[arg(long = "X")]
        x: Option<String>,
        /// Minimise μ over extensions.
        #[arg(long)]
        min: bool,
        /// Run the minimum-degree certificate (exit 1 if it fails).
        #[arg(long)]
        certify: bool,
    },
    /// Chain counts and the Zeta polynomial value |P^[m+1]|.
    Zeta {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        m: u64,
    },
    /// Union-closed sets conjecture instances.
    Ucsc {
        #[arg(long)]
        max_domain: Option<usize>,
        #[arg(long)]
        family: Option<String>,
    },
    /// Headline values, each recomputed from scratch.
    Report,
}

type Report = BTreeMap<String, String>;

struct Outcome {
    prelude: String,
    report: Report,
    failed: bool,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { prelude: String::new(), report: Report::new(), failed: false }
    }

    fn set(&mut self, k: impl Into<String>, v: impl Display) {
        self.report.insert(k.into(), v.to_string());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = if cli.sequential { Mode::Sequential } else { Mode::default() };
    match run(cli.verb, mode) {
        Ok(out) => {
            print!("{}", out.prelude);
            for (k, v) in &out.report {
                println!("{k}={v}");
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("{path}: {e}")))
}

fn read_family(path: &str) -> Result<Family, Error> {
    let parsed = io::parse_family(&read(path)?)?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.family)
}

fn sized(arg: &str) -> Option<(&str, usize)> {
    let (name, n) = arg.split_once(':')?;
    Some((name, n.parse().ok()?))
}

/// `chain:N`, `antichain:N`, `antitop:K`, `layered:W` or a `.poset` file.
fn poset_arg(arg: &str) -> Result<Poset, Error> {
    if Path::new(arg).is_file() {
        return io::parse_poset(&read(arg)?);
    }
    match sized(arg) {
        Some(("chain", n)) => Ok(Poset::chain(n)),
        Some(("antichain", n)) => Ok(Poset::antichain(n)),
        Some(("antitop", k)) => Ok(Poset::antichain_under_top(k)),
        Some(("layered", w)) => Ok(Poset::layered(w)),
        _ => Err(Error::Unknown(arg.into())),
    }
}

/// `chain:N`, `boolean:N`, `m:N`, `mhat:N`, `pentagon` or a family file.
fn lattice_arg(arg: &str, union: bool) -> Result<Semilattice, Error> {
    if Path::new(arg).is_file() {
        let closure = if union { Closure::Union } else { Closure::Intersection };
        return Semilattice::from_family(&read_family(arg)?, closure);
    }
    if arg == "pentagon" {
        return Ok(Semilattice::pentagon_edge_lattice());
    }
    match sized(arg) {
        Some(("chain", n)) => Semilattice::chain(n),
        Some(("boolean", n)) => Semilattice::boolean(n),
        Some(("m", n)) => Semilattice::m_flat(n),
        Some(("mhat", n)) => Semilattice::m_hat(n),
        _ => Err(Error::Unknown(arg.into())),
    }
}

fn run(verb: Verb, mode: Mode) -> Result<Outcome, Error> {
    match verb {
        Verb::Gen { construction, k, n, out } => gen(&construction, k, n, out),
        Verb::Check { file, k } => check(&read_family(&file)?, k),
        Verb::Bound { class, k, n, r, poset } => bound(&class, k, n, r, &poset),
        Verb::Maxsearch { class, n, k } => {
            let (size, witness) = extremal::max_search_with(SearchClass::parse(&class)?, k, n, mode)?;
            let mut o = Outcome::new();
            o.set("max", size);
            o.set("witness", witness.lines().join(","));
            Ok(o)
        }
        Verb::Density { lattice, poset, threshold, union } => density(&lattice_arg(&lattice, union)?, &poset_arg(&poset)?, threshold),
        Verb::Matching { lattice, poset, kind, a, expect, union } => {
            matching(&lattice_arg(&lattice, union)?, &poset_arg(&poset)?, &kind, a, expect, mode)
        }
        Verb::Mu { example, family, u, x, min, certify } => mu(example, family, u, x, min, certify, mode),
        Verb::Zeta { poset, m } => {
            let p = poset_arg(&poset)?;
            let mut o = Outcome::new();
            let c: Vec<String> = lattice::chain_counts(&p).iter().map(u64::to_string).collect();
            o.set("chain_counts", c.join(","));
            o.set("zeta", lattice::zeta(&p, m)?);
            Ok(o)
        }
        Verb::Ucsc { max_domain, family } => ucsc(max_domain, family, mode),
        Verb::Report => report(),
    }
}

/// The property each construction claims.
fn claimed(construction: &str, k: usize, f: &Family) -> (String, bool) {
    match construction {
        "3.3.2" | "3.3.4" => ("centered".into(), f.is_centered()),
        "3.4.2" => (format!("{k}-pseudotree"), f.is_k_pseudotree(k)),
        "3.8.4" => ("locally-4-wide".into(), f.is_locally_k_wide(4)),
        _ => (format!("locally-{k}-wide"), f.is_locally_k_wide(k)),
    }
}

fn gen(construction: &str, k: usize, n: usize, out: Option<String>) -> Result<Outcome, Error> {
    let f = extremal::gen(construction, k, n)?;
    let mut o = Outcome::new();
    let (property, holds) = claimed(construction, k, &f);
    o.set("property", &property);
    o.set("holds", holds);
    o.set("size", f.len());
    if let Some(b) = extremal::gen_size_formula(construction, k, n) {
        o.set("bound", b);
    }
    if !holds {
        // Nothing is written for a family that fails its own claim.
        o.failed = true;
        return Ok(o);
    }
    let text = io::write_family(&f);
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| Error::Precondition(format!("{path}: {e}")))?,
        None => o.prelude = text,
    }
    Ok(o)
}

fn check(f: &Family, k: Option<usize>) -> Result<Outcome, Error> {
    let mut o = Outcome::new();
    o.set("members", f.len());
    o.set("width", f.width().0);
    o.set("local_width", f.local_width());
    o.set("centered", f.is_centered());
    o.set("forest", f.is_forest());
    o.set("tree", f.is_tree());
    o.set("union_closed", f.is_union_closed());
    o.set("intersection_closed", f.is_intersection_closed());
    if let Some(k) = k {
        o.set("pseudotree", f.is_k_pseudotree(k));
        match f.locally_k_wide(k) {
            Ok(()) => o.set("locally_k_wide", true),
            Err(witness) => {
                o.set("locally_k_wide", false);
                o.set("witness", witness.iter().map(|&s| bits::show(s)).collect::<Vec<_>>().join(","));
                o.failed = true;
            }
        }
    }
    Ok(o)
}

fn bound(class: &str, k: usize, n: usize, r: Option<usize>, poset: &str) -> Result<Outcome, Error> {
    let mut o = Outcome::new();
    let nn = n as u64;
    let lattice_value = |p: &Poset| -> Result<Option<String>, Error> {
        Ok(Some(match class {
            "m" => lattice::m_bound(nn, p)?.to_string(),
            "m-circ" => lattice::m_circ_bound(nn, p)?.to_string(),
            "delta" => lattice::delta(k as u32, p)?.to_string(),
            "g" => lattice::g_formula(nn, p)?.to_string(),
            "h" | "h-upper" | "g-search" => {
                let kind = match class {
                    "h" => HKind::Lower,
                    "h-upper" => HKind::Upper,
                    _ => HKind::G,
                };
                match lattice::h_small(kind, p, nn, 4)? {
                    Some((v, _)) => v.to_string(),
                    None => "none".into(),
                }
            }
            _ => return Ok(None),
        }))
    };
    if let Some(v) = lattice_value(&poset_arg(poset)?)? {
        o.set("value", v);
        o.set("exact", true);
        return Ok(o);
    }
    let b = extremal::bound(BoundClass::parse(class)?, k, n, r)?;
    o.set("value", show_ratio(&b.value));
    o.set("floor", b.floor());
    o.set("exact", b.exact);
    if let Some(a) = b.attained {
        o.set("attained", a);
    }
    Ok(o)
}

fn density(l: &Semilattice, p: &Poset, threshold: Option<u64>) -> Result<Outcome, Error> {
    let mut o = Outcome::new();
    o.set("filters", p.filters().len());
    o.set("size", p.count_order_maps(l.order())?);
    for a in l.join_irreducibles() {
        o.set(format!("density.{a}"), show_ratio(&lattice::p_density(l, p, a)?));
    }
    let witness = lattice::density_property(l, p)?;
    o.set("density_property", witness.is_some());
    if let Some(a) = witness {
        o.set("witness", a);
    }
    if let Some(n_max) = threshold {
        o.set("threshold", lattice::density_threshold(l, n_max)?.map_or("none".into(), |m| m.to_string()));
    }
    Ok(o)
}

fn matching(l: &Semilattice, p: &Poset, kind: &str, a: Option<usize>, expect: bool, mode: Mode) -> Result<Outcome, Error> {
    let kind = Kind::parse(kind)?;
    let v = lattice::types::check_matching_property_with(l, p, a, kind, mode)?;
    let mut o = Outcome::new();
    o.set("kind", kind);
    o.set("holds", v.holds);
    o.set("witnesses", v.witnesses.len());
    o.set("failures", v.failures.len());
    if let Some(a) = v.a {
        o.set("a", a);
    }
    o.failed = expect && !v.holds;
    Ok(o)
}

struct Named {
    f: UcFamily,
    names: Vec<String>,
}

impl Named {
    fn set(&self, arg: &str) -> Result<Set, Error> {
        let mut s = 0;
        for w in arg.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            let i = self.names.iter().position(|n| n == w).ok_or_else(|| Error::Unknown(w.into()))?;
            s |= bits::bit(i);
        }
        Ok(s)
    }

    fn show(&self, s: Set) -> String {
        let parts: Vec<&str> = bits::elems(s).map(|i| self.names[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

fn mu(example: Option<String>, family: Option<String>, u: Option<String>, x: Option<String>, min: bool, certify: bool, mode: Mode) -> Result<Outcome, Error> {
    let (named, default_u) = match (example.as_deref(), family) {
        (Some("4.11.8"), None) => {
            let f = UcFamily::generated(7, &graphs::two_hubs())?;
            (Named { f, names: graphs::TWO_HUB_NAMES.iter().map(|s| s.to_string()).collect() }, Some("a,b"))
        }
        (Some(other), None) => return Err(Error::Unknown(other.into())),
        (None, Some(path)) => {
            let fam = read_family(&path)?;
            let names = (0..fam.ground()).map(|i| i.to_string()).collect();
            (Named { f: UcFamily::new(fam)?, names }, None)
        }
        _ => return Err(Error::Precondition("give exactly one of --example or --family".into())),
    };
    let u_arg = u.as_deref().or(default_u).ok_or_else(|| Error::Precondition("--U is required".into()))?;
    let u = named.set(u_arg)?;
    let f = &named.f;
    let mut o = Outcome::new();
    if let Some(xs) = x {
        let e = f.escape_set(u, named.set(&xs)?)?;
        o.set("E", e.iter().map(|&y| named.show(y)).collect::<Vec<_>>().join(","));
        return Ok(o);
    }
    o.set("mu", show_ratio(&f.mu(f.family(), u)?));
    o.set("density", show_ratio(&f.density(u)));
    if min {
        let m = graph::min_mu_over_extensions_with(f, u, graph::MAX_FREE, mode)?;
        o.set("min_mu", show_ratio(&m.value));
        o.set("min_mu_exhaustive", m.exhaustive);
        o.set("min_mu_filter", m.witness.iter().map(|&s| named.show(s)).collect::<Vec<_>>().join(","));
    }
    if certify {
        let c = match graph::min_degree_density_check(f, u) {
            Ok(c) => c,
            // A failed hypothesis is a negative answer, not bad input.
            Err(Error::Precondition(why)) => {
                o.set("certified", false);
                o.set("reason", why);
                o.failed = true;
                return Ok(o);
            }
            Err(e) => return Err(e),
        };
        o.set("certified", c.certified);
        o.set("nu_bound", show_ratio(&c.nu_bound));
        if let Some(e) = &c.estimate {
            o.set("estimate", show_ratio(e));
        }
        let half = Ratio::new(1.into(), 2.into());
        o.failed = !c.certified || c.density > half;
    }
    Ok(o)
}

fn ucsc(max_domain: Option<usize>, family: Option<String>, mode: Mode) -> Result<Outcome, Error> {
    let mut o = Outcome::new();
    match (max_domain, family) {
        (Some(d), None) => {
            let s = graph::ucsc_exhaustive(d, mode)?;
            o.set("instances", s.instances);
            o.set("violations", s.violations);
            o.set("tightest", show_ratio(&s.tightest));
            o.failed = s.violations > 0;
        }
        (None, Some(path)) => {
            let r = graph::ucsc_brute(&read_family(&path)?)?;
            o.set("max_density", show_ratio(&r.max));
            o.set("max_witness", r.max_witness);
            o.set("min_density", show_ratio(&r.min));
            o.set("min_witness", r.min_witness);
            o.set("holds", r.holds);
            o.failed = !r.holds;
        }
        _ => return Err(Error::Precondition("give exactly one of --max-domain or --family".into())),
    }
    Ok(o)
}

/// Headline values, each recomputed.
fn report() -> Result<Outcome, Error> {
    let mut o = Outcome::new();
    for (c, k, n) in [("3.3.2", 1, 8), ("3.3.4", 1, 8), ("3.4.2", 2, 8), ("3.6.2", 2, 8), ("3.6.7", 2, 8)] {
        o.set(format!("gen.{c}.k{k}.n{n}"), extremal::gen(c, k, n)?.len());
    }
    o.set("maxsearch.centered.n3", extremal::max_search(SearchClass::Centered, None, 3)?.0);
    o.set("maxsearch.locally2.n3", extremal::max_search(SearchClass::All, Some(2), 3)?.0);
    let one = Poset::chain(1);
    o.set("m_bound.p2.n4", lattice::m_bound(4, &one)?);
    o.set("g.p2.n5", lattice::g_formula(5, &one)?);
    o.set("zeta.boolean2.m3", lattice::zeta(Semilattice::boolean(2)?.order(), 3)?);
    let pent = Semilattice::pentagon_edge_lattice();
    o.set("pentagon.size", pent.len());
    let two_hubs = UcFamily::generated(7, &graphs::two_hubs())?;
    o.set("two_hubs.mu", show_ratio(&two_hubs.mu(two_hubs.family(), 0b11)?));
    let s = graph::ucsc_exhaustive(3, Mode::default())?;
    o.set("ucsc.domain3.instances", s.instances);
    o.set("ucsc.domain3.violations", s.violations);
    o.failed = s.violations > 0;
    Ok(o)
}
