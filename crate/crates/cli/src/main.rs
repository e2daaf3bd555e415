mod fixtures;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, Sign};
use paritylab::arith::poly::QPoly;
use paritylab::arith::{parse_rational, render_rational};
use paritylab::brauer::{
    detect_relations, dihedral_parity_expression, regulator_constant, s3_parity_bookkeeping, subgroup_classes,
    FiniteGroup, GramMatrix, RationalRepresentation,
};
use paritylab::curve::{kernel_polynomials, two_isogeny_pair, two_torsion_x, velu_isogenous, CurveModel, CurveRecord};
use paritylab::hilbert::{hilbert_symbol, product_formula_check, PlaceQ};
use paritylab::localdata::{euler_factor, tate_algorithm, tate_q_expansions, LocalData, LocalField, ReductionType};
use paritylab::numfield::{
    euler_factor_over_k, fourth_power_check, global_root_number_over, splitting_type, NumberField,
};
use paritylab::parity::{cassels_ratio, check_conjecture_5_5, check_conjecture_6_2, kramer_tunnell_parity};
use paritylab::rootnum::{bad_primes, global_root_number_q, local_root_number_detail};
use paritylab::{Error, Result};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use fixtures::{load_corpus, load_multiplicities, resolve_curve, CurveFixture};

const CHECK_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "parity-lab", version, about = "Local invariants of elliptic curves and parity checks")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tate's algorithm at p (all bad primes when --p is omitted).
    Localdata {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        f: u32,
    },
    /// Global root number over Q with the local table.
    Rootnumber {
        #[arg(long)]
        curve: String,
    },
    /// Hilbert symbol (a, b)_v, or every relevant place and their product.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// A prime or "inf".
        #[arg(long)]
        p: Option<String>,
    },
    /// Runs a parity identity over every curve of a corpus.
    ParityCheck {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// |d| bound for kt mode.
        #[arg(long, default_value_t = 20)]
        bound: i64,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subgroup classes, Brauer relations and regulator constants.
    Brauer {
        /// S<n>, C<n>, D<2n>, K4 or generators in cycle notation, e.g. "(1,2,3);(1,2)".
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// w(E/K) and the rank parity it predicts.
    Predict {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        field: String,
    },
    /// Euler factors over Q_p^f or over the places of K above p; with --bound
    /// over K, checks that every factor is a fourth power.
    Lfactor {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        f: u32,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// q-expansions of the Tate curve and its 2-torsion models.
    Series {
        /// Truncation order.
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
enum Mode {
    #[value(name = "2isog")]
    #[serde(rename = "2isog")]
    TwoIsog,
    #[serde(rename = "cassels")]
    Cassels,
    #[serde(rename = "kt")]
    Kt,
    #[serde(rename = "s3")]
    S3,
    #[serde(rename = "pisog")]
    Pisog,
}

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Skipped,
    /// Nothing to compare against (no fixture rank, bookkeeping only).
    Computed,
}

#[derive(Serialize)]
struct Row {
    label: String,
    status: Status,
    summary: String,
    formula_defined_places: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<Value>,
}

impl Row {
    fn new(label: &str, status: Status, summary: impl Into<String>) -> Row {
        Row { label: label.to_string(), status, summary: summary.into(), formula_defined_places: 0, detail: None }
    }

    fn with(mut self, detail: impl Serialize) -> Row {
        self.detail = Some(serde_json::to_value(detail).expect("report serializes"));
        self
    }
}

struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, failed: false }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Argument(_) => 2,
        Error::Unsupported(_) | Error::Resource(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.failed { CHECK_FAILED } else { 0 })
        }
        Err(e) => {
            eprintln!("parity-lab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Localdata { curve, p, f } => cmd_localdata(curve, *p, *f),
        Cmd::Rootnumber { curve } => cmd_rootnumber(curve),
        Cmd::Hilbert { a, b, p } => cmd_hilbert(a, b, p.as_deref()),
        Cmd::ParityCheck { corpus, mode, bound, out } => cmd_parity_check(corpus, *mode, *bound, out.as_deref()),
        Cmd::Brauer { group, seed } => cmd_brauer(group, *seed),
        Cmd::Predict { curve, field } => cmd_predict(curve, field),
        Cmd::Lfactor { curve, p, f, field, bound } => cmd_lfactor(curve, *p, *f, field.as_deref(), *bound),
        Cmd::Series { bound } => cmd_series(*bound),
    }
}

/// Text output drops the "/1" of integers; JSON keeps "num/den".
fn short(x: &paritylab::arith::Rational) -> String {
    let s = render_rational(x);
    s.strip_suffix("/1").map(str::to_string).unwrap_or(s)
}

fn reduction_name(r: ReductionType) -> &'static str {
    match r {
        ReductionType::Good => "good",
        ReductionType::SplitMult => "split",
        ReductionType::NonsplitMult => "nonsplit",
        ReductionType::AdditivePotMult => "additive-potmult",
        ReductionType::AdditivePotGood => "additive-potgood",
    }
}

fn localdata_json(ld: &LocalData) -> Value {
    json!({
        "p": ld.field.p(),
        "f": ld.field.f(),
        "kodaira": ld.kodaira.to_string(),
        "reduction": reduction_name(ld.reduction),
        "conductor_exponent": ld.conductor_exponent,
        "tamagawa": ld.tamagawa,
        "min_disc_valuation": ld.min_disc_valuation,
        "scaling_valuation": ld.scaling_valuation,
        "minimal_model": CurveRecord::from_model(None, &ld.minimal_model),
    })
}

fn cmd_localdata(curve: &str, p: Option<u64>, f: u32) -> Result<Output> {
    let (label, e) = resolve_curve(curve)?;
    let primes = match p {
        Some(p) => vec![p],
        None => bad_primes(&e)?,
    };
    let mut text = String::new();
    let mut rows = vec![];
    for p in primes {
        let ld = tate_algorithm(&e, LocalField::new(p, f)?);
        let model: Vec<String> = ld.minimal_model.ainvs().iter().map(short).collect();
        writeln!(
            text,
            "{}\t{}\tp={}\tf={}\tf_E={}\tv(D)={}\tc={}\tminimal=[{}]",
            ld.kodaira,
            reduction_name(ld.reduction),
            p,
            f,
            ld.conductor_exponent,
            ld.min_disc_valuation,
            ld.tamagawa,
            model.join(",")
        )
        .unwrap();
        rows.push(localdata_json(&ld));
    }
    Ok(Output::ok(text, json!({ "curve": label, "places": rows })))
}

fn cmd_rootnumber(curve: &str) -> Result<Output> {
    let (label, e) = resolve_curve(curve)?;
    let w = global_root_number_q(&e)?;
    let mut text = format!("w = {w:+}\n");
    text.push_str("inf\t-1\tindependent\n");
    let mut rows = vec![json!({ "place": "inf", "w": -1, "provenance": "independent" })];
    for p in bad_primes(&e)? {
        let (wp, prov) = local_root_number_detail(&e, LocalField::new(p, 1)?)?;
        writeln!(text, "{p}\t{wp:+}\t{prov}").unwrap();
        rows.push(json!({ "place": p.to_string(), "w": wp, "provenance": prov }));
    }
    Ok(Output::ok(text, json!({ "curve": label, "w": w, "local": rows })))
}

fn parse_place(s: &str) -> Result<PlaceQ> {
    match s {
        "inf" | "infinity" | "real" => Ok(PlaceQ::Real),
        _ => {
            let p = s.parse::<u64>().map_err(|_| Error::Parse(format!("place {s:?} is neither a prime nor inf")))?;
            PlaceQ::finite(p)
        }
    }
}

fn cmd_hilbert(a: &str, b: &str, p: Option<&str>) -> Result<Output> {
    let x = parse_rational(a)?;
    let y = parse_rational(b)?;
    let (xs, ys) = (render_rational(&x), render_rational(&y));
    if let Some(p) = p {
        let v = parse_place(p)?;
        let s = hilbert_symbol(&x, &y, v)?;
        return Ok(Output::ok(format!("({}, {})_{v} = {s:+}\n", short(&x), short(&y)), json!({ "a": xs, "b": ys, "place": v.to_string(), "symbol": s })));
    }
    let table = product_formula_check(&x, &y)?;
    let mut text = String::new();
    let mut rows = vec![];
    for (v, s) in &table {
        writeln!(text, "{v}\t{s:+}").unwrap();
        rows.push(json!({ "place": v.to_string(), "symbol": s }));
    }
    let product: i8 = table.iter().map(|(_, s)| *s).product();
    writeln!(text, "product\t{product:+}").unwrap();
    Ok(Output::ok(text, json!({ "a": xs, "b": ys, "symbols": rows, "product": product })))
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(s) = std::env::var("PARITYLAB_THREADS") {
        let n = s.trim().parse::<usize>().ok().filter(|&n| n > 0);
        let Some(n) = n else {
            return Err(Error::Parse(format!("PARITYLAB_THREADS={s:?} is not a positive integer")));
        };
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Resource(e.to_string()))
}

/// A curve the mode cannot handle (no isogeny, unsupported place) is skipped
/// rather than failed.
fn skip_or(label: &str, r: Result<Row>) -> Row {
    match r {
        Ok(row) => row,
        Err(e) => Row::new(label, Status::Skipped, e.to_string()),
    }
}

fn sign_word(w: i8) -> &'static str {
    if w == 1 {
        "even"
    } else {
        "odd"
    }
}

fn row_2isog(fx: &CurveFixture) -> Result<Row> {
    let e = fx.model()?;
    let r = check_conjecture_5_5(&e)?;
    let ok = r.global_equal && r.places.iter().all(|p| p.equal);
    let mismatched: Vec<String> = r.places.iter().filter(|p| !p.equal).map(|p| p.place.to_string()).collect();
    let mut summary = format!(
        "prod w = {:+}, prod sigma*corr = {:+}, {} places",
        r.product_w,
        r.product_sigma_corr,
        r.places.len()
    );
    if !mismatched.is_empty() {
        write!(summary, ", mismatch at {}", mismatched.join(",")).unwrap();
    }
    let mut row = Row::new(&fx.label, if ok { Status::Pass } else { Status::Fail }, summary);
    row.formula_defined_places = r.formula_defined_places;
    Ok(row.with(r))
}

fn first_isogeny(e: &CurveModel) -> Result<Option<(u64, CurveModel, CurveModel)>> {
    if let Some(x0) = two_torsion_x(e).first() {
        let iso = two_isogeny_pair(e, x0)?;
        return Ok(Some((2, iso.source, iso.target)));
    }
    for l in [3usize, 5, 7] {
        if let Some(k) = kernel_polynomials(e, l)?.first() {
            return Ok(Some((l as u64, e.clone(), velu_isogenous(e, k)?)));
        }
    }
    Ok(None)
}

fn row_cassels(fx: &CurveFixture) -> Result<Row> {
    let e = fx.model()?;
    let Some((l, src, tgt)) = first_isogeny(&e)? else {
        return Ok(Row::new(&fx.label, Status::Skipped, "no rational isogeny of degree 2, 3, 5 or 7"));
    };
    let one = parse_rational("1")?;
    let r = cassels_ratio(&src, &tgt, l, &one, &one, fx.rank_parity())?;
    let summary = format!("degree {l}, ratio class {}, rank {}", r.square_class, if r.rank_parity == 1 { "odd" } else { "even" });
    let status = match (r.partial, r.fixture_agrees) {
        (true, _) | (_, Some(false)) => Status::Fail,
        (false, Some(true)) => Status::Pass,
        (false, None) => Status::Computed,
    };
    Ok(Row::new(&fx.label, status, summary).with(r))
}

fn squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

fn row_kt(fx: &CurveFixture, bound: i64) -> Result<Row> {
    let e = fx.model()?;
    let w = global_root_number_q(&e)?;
    let mut checked = vec![];
    let mut failures = vec![];
    let mut skipped = 0usize;
    for d in -bound..=bound {
        if d == 0 || d == 1 || !squarefree(d) {
            continue;
        }
        let r = kramer_tunnell_parity(&e, &BigInt::from(d)).and_then(|r| {
            let wd = global_root_number_q(&e.quadratic_twist(&parse_rational(&d.to_string())?)?)?;
            Ok((r.parity, if w * wd == 1 { 0u8 } else { 1 }))
        });
        match r {
            Ok((got, want)) => {
                if got != want {
                    failures.push(d);
                }
                checked.push(json!({ "d": d, "kt_parity": got, "root_number_parity": want }));
            }
            Err(Error::Unsupported(_) | Error::Resource(_)) => skipped += 1,
            Err(x) => return Err(x),
        }
    }
    let status = if checked.is_empty() {
        Status::Skipped
    } else if failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    let summary = format!("{} twists checked, {} failed, {} unsupported", checked.len(), failures.len(), skipped);
    Ok(Row::new(&fx.label, status, summary).with(json!({ "checked": checked, "failures": failures, "skipped": skipped })))
}

fn row_pisog(fx: &CurveFixture) -> Result<Row> {
    let e = fx.model()?;
    for l in [3usize, 5, 7] {
        let Some(k) = kernel_polynomials(&e, l)?.into_iter().next() else { continue };
        let r = check_conjecture_6_2(&e, &k, l as u64, &BTreeMap::new())?;
        let status = if r.all_equal { Status::Pass } else { Status::Fail };
        let summary = format!("degree {l}, {} places compared, {} skipped", r.places.len(), r.skipped.len());
        return Ok(Row::new(&fx.label, status, summary).with(r));
    }
    Ok(Row::new(&fx.label, Status::Skipped, "no rational isogeny of degree 3, 5 or 7"))
}

fn rows_s3(path: &Path) -> Result<Vec<Row>> {
    let mut rows = vec![];
    for (i, m) in load_multiplicities(path)?.into_iter().enumerate() {
        let label = m.label.clone().unwrap_or_else(|| format!("#{}", i + 1));
        let row = match m.p {
            None => {
                let (class, ranks) = s3_parity_bookkeeping(m.a, m.b, m.c);
                let parity = (m.a + m.b + m.c) % 2;
                let summary = format!("class {class}, ranks {ranks:?}, parity {}", if parity == 1 { "odd" } else { "even" });
                Row::new(&label, Status::Computed, summary).with(json!({
                    "class": class.to_string(),
                    "ranks": ranks,
                    "parity": parity,
                }))
            }
            Some(p) => {
                let parity = dihedral_parity_expression(p, m.a, m.b, m.c)?;
                let summary = format!("D{} parity {}", 2 * p, if parity == 1 { "odd" } else { "even" });
                Row::new(&label, Status::Computed, summary).with(json!({ "p": p, "parity": parity }))
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

fn cmd_parity_check(corpus: &Path, mode: Mode, bound: i64, out: Option<&Path>) -> Result<Output> {
    let rows = if mode == Mode::S3 {
        rows_s3(corpus)?
    } else {
        let fixtures = load_corpus(corpus)?;
        let pool = thread_pool()?;
        pool.install(|| {
            fixtures
                .par_iter()
                .map(|fx| {
                    let r = match mode {
                        Mode::TwoIsog => row_2isog(fx),
                        Mode::Cassels => row_cassels(fx),
                        Mode::Kt => row_kt(fx, bound),
                        Mode::Pisog => row_pisog(fx),
                        Mode::S3 => unreachable!(),
                    };
                    skip_or(&fx.label, r)
                })
                .collect::<Vec<Row>>()
        })
    };
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    let formula_defined: usize = rows.iter().map(|r| r.formula_defined_places).sum();
    let failed = count(Status::Fail) > 0;
    let mut text = String::new();
    for r in &rows {
        let st = serde_json::to_value(r.status).unwrap();
        writeln!(text, "{}\t{}\t{}", r.label, st.as_str().unwrap(), r.summary).unwrap();
    }
    writeln!(
        text,
        "pass {}, fail {}, skipped {}, computed {}; formula-defined places {}",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped),
        count(Status::Computed),
        formula_defined
    )
    .unwrap();
    let report = json!({
        "mode": mode,
        "rows": rows,
        "pass": count(Status::Pass),
        "fail": count(Status::Fail),
        "skipped": count(Status::Skipped),
        "computed": count(Status::Computed),
        "formula_defined_places": formula_defined,
    });
    if let Some(path) = out {
        let body = serde_json::to_string_pretty(&report).expect("json") + "\n";
        std::fs::write(path, body).map_err(|e| Error::Resource(format!("{}: {e}", path.display())))?;
    }
    Ok(Output { text, json: report, failed })
}

fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let s = spec.trim();
    let num = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse(format!("cannot read group {spec:?}")));
    match s {
        "K4" | "V4" => return FiniteGroup::klein_four(),
        _ if s.starts_with('(') => return FiniteGroup::parse(s),
        _ => {}
    }
    match s.split_at(1) {
        ("S", n) => FiniteGroup::symmetric(num(n)?),
        ("C", n) => FiniteGroup::cyclic(num(n)?),
        ("D", n) => {
            let n = num(n)?;
            if n % 2 != 0 {
                return Err(Error::Argument(format!("D{n}: dihedral groups are named by their even order")));
            }
            FiniteGroup::dihedral(n / 2)
        }
        _ => Err(Error::Parse(format!("cannot read group {spec:?}"))),
    }
}

fn cmd_brauer(spec: &str, seed: u64) -> Result<Output> {
    let g = parse_group(spec)?;
    let classes = subgroup_classes(&g);
    let relations = detect_relations(&g)?;
    let mut reps: Vec<(String, RationalRepresentation)> = vec![("trivial".into(), RationalRepresentation::trivial(&g))];
    for h in classes.iter().filter(|h| 2 * h.order == g.order()) {
        reps.push((format!("eps[{}]", h.name), RationalRepresentation::index_two(&g, h)?));
    }
    if g.degree() > 1 {
        reps.push(("sum-zero".into(), RationalRepresentation::sum_zero(&g)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut text = format!("group {spec} of order {}\n", g.order());
    let mut jclasses = vec![];
    for h in &classes {
        writeln!(text, "  {}\torder {}\tconjugates {}", h.name, h.order, h.size).unwrap();
        jclasses.push(json!({ "name": h.name, "order": h.order, "conjugates": h.size }));
    }
    writeln!(text, "relations: {}", relations.len()).unwrap();
    let mut jrel = vec![];
    for theta in &relations {
        writeln!(text, "  {theta}").unwrap();
        let mut consts = vec![];
        for (name, v) in &reps {
            let pairing = GramMatrix::random_invariant(v, &mut rng);
            let c = regulator_constant(theta, v, &pairing)?;
            writeln!(text, "    C({name}) = {c}").unwrap();
            consts.push(json!({ "representation": name, "class": c.to_string() }));
        }
        jrel.push(json!({ "relation": theta.to_string(), "regulator_constants": consts }));
    }
    Ok(Output::ok(text, json!({ "group": spec, "order": g.order(), "subgroup_classes": jclasses, "relations": jrel })))
}

fn cmd_predict(curve: &str, field: &str) -> Result<Output> {
    let (label, e) = resolve_curve(curve)?;
    let k = NumberField::parse(field)?;
    let w = global_root_number_over(&e, &k)?;
    let text = format!("w = {w:+}; parity conjecture predicts {} rank\n", sign_word(w));
    Ok(Output::ok(text, json!({ "curve": label, "field": k.to_string(), "w": w, "rank_parity": sign_word(w) })))
}

/// 1 + c₁T + c₂T² + … with rational coefficients.
fn render_t(f: &QPoly) -> String {
    let mut s = String::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        let neg = match c.numer().sign() {
            Sign::NoSign => continue,
            sign => sign == Sign::Minus,
        };
        let a = short(&if neg { -c.clone() } else { c.clone() });
        if s.is_empty() {
            s.push_str(if neg { "-" } else { "" });
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if i == 0 || a != "1" {
            s.push_str(&a);
        }
        match i {
            0 => {}
            1 => s.push('T'),
            _ => write!(s, "T^{i}").unwrap(),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn poly_json(f: &QPoly) -> Value {
    json!(f.coeffs().iter().map(render_rational).collect::<Vec<_>>())
}

fn cmd_lfactor(curve: &str, p: Option<u64>, f: u32, field: Option<&str>, bound: Option<u64>) -> Result<Output> {
    let (label, e) = resolve_curve(curve)?;
    let k = field.map(NumberField::parse).transpose()?;
    match (p, bound, &k) {
        (Some(p), _, Some(k)) => {
            let factor = euler_factor_over_k(&e, k, p)?;
            let places = splitting_type(k, p)?.places;
            let text = format!("p={p}\tplaces {places:?}\t{}\n", render_t(&factor));
            Ok(Output::ok(text, json!({ "curve": label, "field": k.to_string(), "p": p, "places": places, "factor": poly_json(&factor) })))
        }
        (Some(p), _, None) => {
            let ef = euler_factor(&e, LocalField::new(p, f)?)?;
            let text = format!("p={p}\tf={f}\t{ef}\n");
            Ok(Output::ok(text, json!({ "curve": label, "p": p, "f": f, "factor": ef.coeffs })))
        }
        (None, Some(b), Some(k)) => {
            let r = fourth_power_check(&e, k, b)?;
            let mut text = String::new();
            for row in &r.rows {
                let root = row.fourth_root.as_ref().map(render_t).unwrap_or_else(|| "none".into());
                writeln!(text, "{}\t{:?}\t{}\tfourth root {}", row.p, row.places, render_t(&row.factor), root).unwrap();
            }
            for (p, why) in &r.skipped {
                writeln!(text, "{p}\tskipped\t{why}").unwrap();
            }
            writeln!(text, "all fourth powers: {}", r.all_fourth_powers).unwrap();
            let failed = !r.all_fourth_powers;
            Ok(Output { text, json: json!({ "curve": label, "field": k.to_string(), "report": r }), failed })
        }
        (None, Some(b), None) => {
            let mut text = String::new();
            let mut rows = vec![];
            for p in paritylab::arith::factor::primes_up_to(b) {
                let ef = euler_factor(&e, LocalField::new(p, f)?)?;
                writeln!(text, "{p}\t{ef}").unwrap();
                rows.push(json!({ "p": p, "factor": ef.coeffs }));
            }
            Ok(Output::ok(text, json!({ "curve": label, "f": f, "factors": rows })))
        }
        (None, None, _) => Err(Error::Argument("lfactor needs --p or --bound".into())),
    }
}

fn cmd_series(order: usize) -> Result<Output> {
    let s = tate_q_expansions(order)?;
    let line = |name: &str, ps: &paritylab::localdata::PowerSeries| {
        let c: Vec<String> = ps.coeffs().iter().map(short).collect();
        format!("{name}\t{}\n", c.join(" "))
    };
    let mut text = format!("coefficients of q^0 .. q^{}\n", s.a4.coeffs().len() - 1);
    text.push_str(&line("a4", &s.a4));
    text.push_str(&line("a6", &s.a6));
    text.push_str(&line("a4'", &s.dagger_a4));
    text.push_str(&line("a6'", &s.dagger_a6));
    let json = serde_json::to_value(&s).expect("series serializes");
    Ok(Output::ok(text, json))
}
