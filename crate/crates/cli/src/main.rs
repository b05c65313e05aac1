use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use sha2::{Digest, Sha256};

use weylk::alcove::{build_equivariant_complex, Variant};
use weylk::bredon::{k_groups, KGroup, KGroups, Torsion};
use weylk::chernoracle::{group_label, verify_duality, DualityReport, RankPair};
use weylk::clifford::{clifford_suite, CheckOutcome};
use weylk::rootdata::{build_root_datum, connection_index, langlands_dual, CartanType, Isogeny, RootDatum, Series};
use weylk::Error;

const MAX_CLIFFORD_N: usize = 3;

#[derive(Parser, Debug)]
#[command(name = "weylk", version, about = "Root data, Langlands duals and K-theory of affine Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Output::Human, global = true)]
    output: Output,
    /// Use worker threads; never changes the output.
    #[arg(long, global = true)]
    parallel: bool,
    /// Cache directory, overrides WEYLK_CACHE.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Json,
}

#[derive(clap::Args, Debug)]
struct TypeArgs {
    series: String,
    rank: usize,
    /// sc, adj or custom:<v1>;<v2>;... (coweight coordinates)
    #[arg(long)]
    isogeny: Option<String>,
    /// affine or extended
    #[arg(long)]
    variant: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Langlands dual, connection index, fundamental group and center.
    Dual(TypeArgs),
    /// K-theory of the group C*-algebra of the (extended) affine Weyl group.
    Ktheory(TypeArgs),
    /// Compare rational K-ranks of G and its dual.
    VerifyDuality(TypeArgs),
    /// Exact Clifford algebra identities in rank n.
    CliffordCheck { n: usize },
}

/// Exit statuses.
enum Failure {
    Finding(String),
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap(_) => Failure::Cap(e.to_string()),
            Error::InvalidCartanType { .. } | Error::InvalidIsogeny(_) | Error::InvalidInput(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Finding(other.to_string()),
        }
    }
}

struct Ctx {
    output: Output,
    parallel: bool,
    cache: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct GroupData {
    group: String,
    series: String,
    rank: usize,
    isogeny: String,
    pi1: Vec<u64>,
    center: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct DualPayload {
    group: GroupData,
    dual: GroupData,
    connection_index: u64,
    self_dual: bool,
}

#[derive(Serialize, Deserialize)]
struct BredonCheck {
    ranks: Option<RankPair>,
    holds: Option<bool>,
    skipped: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct DualityPayload {
    #[serde(flatten)]
    report: DualityReport,
    bredon_cross_check: BredonCheck,
}

#[derive(Serialize, Deserialize)]
struct CliffordPayload {
    n: usize,
    checks: Vec<CheckOutcome>,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("WEYLK_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from));
    let ctx = Ctx {
        output: cli.output,
        parallel: cli.parallel,
        cache,
    };
    let result = match &cli.command {
        Command::Dual(a) => cmd_dual(&ctx, a),
        Command::Ktheory(a) => cmd_ktheory(&ctx, a),
        Command::VerifyDuality(a) => cmd_verify_duality(&ctx, a),
        Command::CliffordCheck { n } => cmd_clifford_check(&ctx, *n),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Finding(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("{m}");
            ExitCode::from(3)
        }
    }
}

fn root_datum(a: &TypeArgs) -> Result<RootDatum, Failure> {
    let series: Series = a.series.parse()?;
    let t = CartanType::new(series, a.rank)?;
    let iso: Isogeny = a.isogeny.as_deref().unwrap_or("sc").parse()?;
    Ok(build_root_datum(t, iso)?)
}

fn no_variant(a: &TypeArgs, cmd: &str) -> Result<(), Failure> {
    match &a.variant {
        Some(_) => Err(Failure::Usage(format!("--variant does not apply to `{cmd}`"))),
        None => Ok(()),
    }
}

fn emit<T: Serialize>(ctx: &Ctx, payload: &T, human: impl FnOnce(&T) -> String) {
    match ctx.output {
        Output::Json => println!("{}", serde_json::to_string_pretty(payload).expect("payload serializes")),
        Output::Human => print!("{}", human(payload)),
    }
}

/// Looks up `key` in the cache, otherwise computes and stores the payload.
fn cached<T: Serialize + DeserializeOwned>(
    ctx: &Ctx,
    rd: &RootDatum,
    params: &str,
    compute: impl FnOnce() -> Result<T, Failure>,
) -> Result<T, Failure> {
    let Some(dir) = &ctx.cache else {
        return compute();
    };
    let datum = serde_json::to_string(&rd.to_json()).expect("root datum serializes");
    let mut h = Sha256::new();
    h.update(datum.as_bytes());
    h.update(b"\0");
    h.update(params.as_bytes());
    let path = dir.join(format!("{}.json", hex::encode(h.finalize())));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(v) = serde_json::from_str(&text) {
            return Ok(v);
        }
    }
    let v = compute()?;
    // a failed write only loses the cache entry
    if fs::create_dir_all(dir).is_ok() {
        let tmp = path.with_extension("tmp");
        if fs::write(&tmp, serde_json::to_string(&v).expect("payload serializes")).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
    Ok(v)
}

fn group_data(rd: &RootDatum) -> GroupData {
    let (pi1, center) = rd.fundamental_group_and_center();
    GroupData {
        group: group_label(rd),
        series: rd.cartan_type().series.letter().to_string(),
        rank: rd.rank(),
        isogeny: rd.isogeny().short_name(),
        pi1: pi1.elementary_divisors,
        center: center.elementary_divisors,
    }
}

fn abelian(divisors: &[u64]) -> String {
    if divisors.is_empty() {
        "1".into()
    } else {
        divisors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

fn cmd_dual(ctx: &Ctx, a: &TypeArgs) -> Result<(), Failure> {
    no_variant(a, "dual")?;
    let rd = root_datum(a)?;
    let dual = langlands_dual(&rd);
    let payload = DualPayload {
        group: group_data(&rd),
        dual: group_data(&dual),
        connection_index: connection_index(rd.cartan_type())?,
        self_dual: rd.is_isomorphic(&dual),
    };
    emit(ctx, &payload, |p| {
        let row = |g: &GroupData| format!("{:<14} pi1 = {:<10} center = {}\n", g.group, abelian(&g.pi1), abelian(&g.center));
        format!(
            "G      {}G^v    {}f = {}{}\n",
            row(&p.group),
            row(&p.dual),
            p.connection_index,
            if p.self_dual { " (self-dual)" } else { "" }
        )
    });
    Ok(())
}

fn parse_variant(a: &TypeArgs) -> Result<Variant, Failure> {
    Ok(a.variant.as_deref().unwrap_or("affine").parse()?)
}

fn k_group(k: &KGroup) -> String {
    let mut s = if k.rank == 0 { "0".to_string() } else if k.rank == 1 { "Z".to_string() } else { format!("Z^{}", k.rank) };
    match &k.torsion {
        Torsion::Certified(t) => {
            for d in t {
                s.push_str(&format!(" + Z/{d}"));
            }
        }
        Torsion::Uncertified => s.push_str(" + (torsion uncertified)"),
    }
    s
}

fn cmd_ktheory(ctx: &Ctx, a: &TypeArgs) -> Result<(), Failure> {
    let rd = root_datum(a)?;
    let variant = parse_variant(a)?;
    let payload: KGroups = cached(ctx, &rd, &format!("ktheory {variant}"), || {
        let x = build_equivariant_complex(&rd, variant)?;
        Ok(k_groups(&x, ctx.parallel)?)
    })?;
    emit(ctx, &payload, |k| {
        let mut s = format!("{} ({variant})\n", group_label(&rd));
        s.push_str(&format!("K0 = {}\nK1 = {}\n", k_group(&k.k0), k_group(&k.k1)));
        for (p, h) in k.bredon_homology.iter().enumerate() {
            s.push_str(&format!("H{p} = {h}\n"));
        }
        s.push_str(&format!("integral: {}\n", k.integral));
        s
    });
    Ok(())
}

fn cmd_verify_duality(ctx: &Ctx, a: &TypeArgs) -> Result<(), Failure> {
    no_variant(a, "verify-duality")?;
    let rd = root_datum(a)?;
    let payload: DualityPayload = cached(ctx, &rd, "verify-duality", || {
        let report = verify_duality(rd.cartan_type(), rd.isogeny().clone(), ctx.parallel)?;
        let bredon_cross_check = match build_equivariant_complex(&rd, Variant::Extended) {
            Ok(x) => {
                let k = k_groups(&x, ctx.parallel)?;
                let ranks = RankPair {
                    even: k.k0.rank as u64,
                    odd: k.k1.rank as u64,
                };
                BredonCheck {
                    ranks: Some(ranks),
                    holds: Some(ranks == report.ranks),
                    skipped: None,
                }
            }
            Err(Error::ResourceCap(m)) => BredonCheck {
                ranks: None,
                holds: None,
                skipped: Some(m),
            },
            Err(e) => return Err(e.into()),
        };
        Ok(DualityPayload {
            report,
            bredon_cross_check,
        })
    })?;
    emit(ctx, &payload, |p| {
        let r = &p.report;
        let mut s = format!(
            "{:<14} (even, odd) = ({}, {})\n{:<14} (even, odd) = ({}, {})\nduality: {}\n",
            r.group,
            r.ranks.even,
            r.ranks.odd,
            r.dual_group,
            r.dual_ranks.even,
            r.dual_ranks.odd,
            verdict(r.duality_holds)
        );
        if let Some(c) = &r.affine_comparison {
            s.push_str(&format!(
                "affine ranks of dual ({}, {}): {}\n",
                c.dual_affine_ranks.even,
                c.dual_affine_ranks.odd,
                verdict(c.dual_affine_holds)
            ));
            if let (Some(ar), Some(h)) = (c.affine_ranks, c.affine_holds) {
                s.push_str(&format!("affine ranks ({}, {}): {}\n", ar.even, ar.odd, verdict(h)));
            }
        }
        match (&p.bredon_cross_check.ranks, p.bredon_cross_check.holds, &p.bredon_cross_check.skipped) {
            (Some(b), Some(h), _) => s.push_str(&format!("bredon ({}, {}): {}\n", b.even, b.odd, verdict(h))),
            (_, _, Some(m)) => s.push_str(&format!("bredon: skipped ({m})\n")),
            _ => {}
        }
        s
    });
    let bredon_ok = payload.bredon_cross_check.holds.unwrap_or(true);
    if payload.report.all_hold() && bredon_ok {
        Ok(())
    } else {
        Err(Failure::Finding(format!("mismatch found for {}", payload.report.group)))
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "MISMATCH"
    }
}

fn cmd_clifford_check(ctx: &Ctx, n: usize) -> Result<(), Failure> {
    if n == 0 || n > MAX_CLIFFORD_N {
        return Err(Failure::Usage(format!("clifford-check needs 1 <= n <= {MAX_CLIFFORD_N}, got {n}")));
    }
    let checks = clifford_suite(n);
    let payload = CliffordPayload {
        n,
        passed: checks.iter().all(|c| c.passed),
        checks,
    };
    emit(ctx, &payload, |p| {
        p.checks
            .iter()
            .map(|c| format!("{} {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name))
            .collect()
    });
    if payload.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = payload.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        Err(Failure::Finding(format!("failed: {}", failed.join(", "))))
    }
}
