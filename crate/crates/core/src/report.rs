//! Job specifications and deterministic JSON verification reports.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cartier::{hasse_witt_matrix, manin_trace_check, oracle_agrees, stable_rank, stable_rank_direct};
use crate::error::{Error, Result};
use crate::ff::divisors;
use crate::funcfield::{
    base_semigroup, canonical_dx_divisor, coordinate_orders, fundamental_divisors, pole_divisor,
    semigroup_gaps, Divisor, Place,
};
use crate::geom::{orbit, pg2_points, singer_from_cubic, ProjPoint};
use crate::singular::{partial_smoothness, singular_points};
use crate::symmetry::{
    brute_force_q2, definition_degree, gen_automorphisms, group_relations, stabilizer_scalar,
    tangent_order_sample, verify_quotient_chain,
};
use crate::tallini::{
    base_points, check_witness, covers_pg2, gf, pellikaan_equivalence, tallini_curve, TalliniParams,
};

/// Largest `q` any command accepts.
pub const MAX_Q: u64 = 128;
pub const DEFAULT_TRIALS: u64 = 20;
/// Closure search extension budget for the full smoothness certificate.
const CLOSURE_MAX_EXT: usize = 64;
/// Largest `q` with a full closure smoothness search.
const CLOSURE_MAX_Q: u64 = 4;
/// Largest genus for which the series oracle runs inside `hasse-witt`.
const ORACLE_MAX_GENUS: usize = 10;
const DX_SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyTallini,
    Equivalence,
    Semigroup,
    Divisors,
    Automorphisms,
    Quotient,
    HasseWitt,
    All,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::VerifyTallini,
        Command::Equivalence,
        Command::Semigroup,
        Command::Divisors,
        Command::Automorphisms,
        Command::Quotient,
        Command::HasseWitt,
        Command::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyTallini => "verify-tallini",
            Command::Equivalence => "equivalence",
            Command::Semigroup => "semigroup",
            Command::Divisors => "divisors",
            Command::Automorphisms => "automorphisms",
            Command::Quotient => "quotient",
            Command::HasseWitt => "hasse-witt",
            Command::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown command `{s}`")))
    }

    /// Parameters the command accepts.
    fn allowed(self) -> &'static [&'static str] {
        match self {
            Command::VerifyTallini | Command::Equivalence => &["q", "a", "b", "c"],
            Command::Semigroup | Command::Divisors | Command::HasseWitt => &["q"],
            Command::Automorphisms => &["q", "trials", "budget"],
            Command::Quotient => &["p", "i"],
            Command::All => &["budget"],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    /// Milliseconds allowed for the exhaustive stabilizer search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl Params {
    fn present(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (k, set) in [
            ("q", self.q.is_some()),
            ("p", self.p.is_some()),
            ("i", self.i.is_some()),
            ("a", self.a.is_some()),
            ("b", self.b.is_some()),
            ("c", self.c.is_some()),
            ("trials", self.trials.is_some()),
            ("budget", self.budget.is_some()),
        ] {
            if set {
                out.push(k);
            }
        }
        out
    }

    /// Sets `key` from a command-line value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let n: u64 = value
            .parse()
            .map_err(|_| Error::Usage(format!("--{key}: `{value}` is not a nonnegative integer")))?;
        let slot = match key {
            "q" => &mut self.q,
            "p" => &mut self.p,
            "a" => &mut self.a,
            "b" => &mut self.b,
            "c" => &mut self.c,
            "trials" => &mut self.trials,
            "budget" => &mut self.budget,
            "i" => {
                let i = u32::try_from(n).map_err(|_| Error::Usage("--i out of range".into()))?;
                self.i = Some(i);
                return Ok(());
            }
            _ => return Err(Error::Usage(format!("unknown flag --{key}"))),
        };
        *slot = Some(n);
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub params: Params,
    pub output: Option<PathBuf>,
    pub timing: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    command: Option<String>,
    #[serde(default)]
    params: Params,
    output: Option<PathBuf>,
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

/// Parses `argv` (without the program name). A `--spec` file supplies
/// defaults that explicit flags override.
pub fn parse_spec(argv: &[String]) -> Result<JobSpec> {
    let mut command = None;
    let mut params = Params::default();
    let mut output = None;
    let mut timing = false;
    let mut file: Option<PathBuf> = None;
    let mut it = argv.iter();
    while let Some(arg) = it.next() {
        if let Some(key) = arg.strip_prefix("--") {
            match key {
                "timing" => timing = true,
                "spec" | "output" => {
                    let v = it.next().ok_or_else(|| Error::Usage(format!("--{key} needs a value")))?;
                    if key == "spec" {
                        file = Some(v.into());
                    } else {
                        output = Some(v.into());
                    }
                }
                _ => {
                    let v = it.next().ok_or_else(|| Error::Usage(format!("--{key} needs a value")))?;
                    params.set(key, v)?;
                }
            }
        } else if command.is_none() {
            command = Some(Command::parse(arg)?);
        } else {
            return usage(format!("unexpected argument `{arg}`"));
        }
    }
    if let Some(path) = file {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
        let sf: SpecFile =
            serde_json::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
        if command.is_none() {
            command = sf.command.as_deref().map(Command::parse).transpose()?;
        }
        output = output.or(sf.output);
        params = merge(sf.params, params);
    }
    let command = command.ok_or_else(|| Error::Usage("missing command".into()))?;
    let job = JobSpec {
        command,
        params,
        output,
        timing,
    };
    validate(&job)?;
    Ok(job)
}

fn merge(base: Params, over: Params) -> Params {
    Params {
        q: over.q.or(base.q),
        p: over.p.or(base.p),
        i: over.i.or(base.i),
        a: over.a.or(base.a),
        b: over.b.or(base.b),
        c: over.c.or(base.c),
        trials: over.trials.or(base.trials),
        budget: over.budget.or(base.budget),
    }
}

fn check_q(q: Option<u64>) -> Result<u64> {
    let q = q.ok_or_else(|| Error::Usage("--q is required".into()))?;
    if !(2..=MAX_Q).contains(&q) {
        return usage(format!("q = {q} outside 2..={MAX_Q}"));
    }
    gf(q).map_err(|_| Error::Usage(format!("q = {q} is not a prime power")))?;
    Ok(q)
}

pub fn validate(job: &JobSpec) -> Result<()> {
    let cmd = job.command;
    let p = &job.params;
    if let Some(k) = p.present().into_iter().find(|k| !cmd.allowed().contains(k)) {
        return usage(format!("`{}` does not take --{k}", cmd.name()));
    }
    match cmd {
        Command::VerifyTallini | Command::Equivalence => {
            let q = check_q(p.q)?;
            match (p.a, p.b, p.c) {
                (None, None, None) => {}
                (Some(a), Some(b), Some(c)) => {
                    if [a, b, c].iter().any(|&v| v >= q) {
                        return usage("a, b, c must be field indices below q");
                    }
                    TalliniParams::from_indices(q, a, b, c)
                        .map_err(|e| Error::Usage(format!("(a, b, c): {e}")))?;
                }
                _ => return usage("give all of --a --b --c or none"),
            }
        }
        Command::Semigroup | Command::Divisors | Command::HasseWitt => {
            check_q(p.q)?;
        }
        Command::Automorphisms => {
            check_q(p.q)?;
            if let Some(t) = p.trials {
                if !(1..=1000).contains(&t) {
                    return usage("--trials must be in 1..=1000");
                }
            }
        }
        Command::Quotient => {
            let pr = p.p.ok_or_else(|| Error::Usage("--p is required".into()))?;
            let i = p.i.unwrap_or(1);
            let f = gf(pr).map_err(|_| Error::Usage(format!("p = {pr} is not prime")))?;
            if !f.is_prime_field() || i == 0 {
                return usage("--p must be prime and --i at least 1");
            }
            match pr.checked_pow(2 * i) {
                Some(q) if q <= MAX_Q => {}
                _ => return usage(format!("p^(2i) exceeds {MAX_Q}")),
            }
        }
        Command::All => {}
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
}

impl Check {
    pub fn eq(name: &str, expected: Value, got: Value) -> Check {
        Check {
            name: name.into(),
            pass: expected == got,
            expected,
            got,
        }
    }

    pub fn holds(name: &str, got: bool) -> Check {
        Check::eq(name, json!(true), json!(got))
    }

    /// A check whose expectation is a statement rather than a value.
    pub fn claim(name: &str, expected: &str, got: Value, pass: bool) -> Check {
        Check {
            name: name.into(),
            expected: json!(expected),
            got,
            pass,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "expected": self.expected, "got": self.got, "pass": self.pass})
    }
}

/// Checks and supporting data of one command run.
#[derive(Clone, Debug, Default)]
pub struct Section {
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
}

impl Section {
    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn put(&mut self, k: &str, v: Value) {
        self.data.insert(k.into(), v);
    }

    fn prefixed(self, prefix: &str) -> Section {
        Section {
            checks: self
                .checks
                .into_iter()
                .map(|mut c| {
                    c.name = format!("{prefix}/{}", c.name);
                    c
                })
                .collect(),
            data: Map::from_iter([(prefix.to_string(), Value::Object(self.data))]),
        }
    }

    fn extend(&mut self, o: Section) {
        self.checks.extend(o.checks);
        self.data.extend(o.data);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub params: Params,
    pub section: Section,
    pub elapsed: Duration,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.section.pass()
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    /// Checks are sorted by name; `timing_ms` appears only when requested.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut checks = self.section.checks.clone();
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command.name()));
        m.insert("params".into(), serde_json::to_value(&self.params).unwrap());
        m.insert("pass".into(), json!(self.pass()));
        m.insert("checks".into(), Value::Array(checks.iter().map(Check::to_json).collect()));
        m.insert("data".into(), Value::Object(self.section.data.clone()));
        if timing {
            m.insert("timing_ms".into(), json!(self.elapsed.as_millis() as u64));
        }
        Value::Object(m)
    }

    pub fn render(&self, timing: bool) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json(timing)).unwrap();
        s.push('\n');
        s
    }
}

/// Fills defaults so that the report records what actually ran.
pub fn resolve(command: Command, p: &Params) -> Result<Params> {
    let mut r = p.clone();
    match command {
        Command::VerifyTallini | Command::Equivalence => {
            if r.a.is_none() {
                let d = TalliniParams::default_for(r.q.unwrap_or(0))?;
                let [a, b, c] = d.indices();
                (r.a, r.b, r.c) = (Some(a as u64), Some(b as u64), Some(c as u64));
            }
        }
        Command::Automorphisms => {
            r.trials.get_or_insert(DEFAULT_TRIALS);
        }
        Command::Quotient => {
            r.i.get_or_insert(1);
        }
        _ => {}
    }
    Ok(r)
}

pub fn run_report(job: &JobSpec) -> Result<Report> {
    validate(job)?;
    let start = Instant::now();
    let params = resolve(job.command, &job.params)?;
    let section = run_section(job.command, &params, true)?;
    Ok(Report {
        command: job.command,
        params,
        section,
        elapsed: start.elapsed(),
    })
}

fn run_section(cmd: Command, p: &Params, full: bool) -> Result<Section> {
    match cmd {
        Command::VerifyTallini => verify_tallini(&tparams(p)?),
        Command::Equivalence => equivalence(&tparams(p)?, full),
        Command::Semigroup => semigroup(p.q.unwrap()),
        Command::Divisors => divisor_suite(p.q.unwrap()),
        Command::Automorphisms => automorphisms(
            p.q.unwrap(),
            p.trials.unwrap_or(DEFAULT_TRIALS) as usize,
            p.budget.map(Duration::from_millis),
        ),
        Command::Quotient => quotient(p.p.unwrap(), p.i.unwrap_or(1)),
        Command::HasseWitt => hasse_witt(p.q.unwrap(), full),
        Command::All => all(p.budget),
    }
}

fn tparams(p: &Params) -> Result<TalliniParams> {
    TalliniParams::from_indices(p.q.unwrap(), p.a.unwrap(), p.b.unwrap(), p.c.unwrap())
}

fn verify_tallini(tp: &TalliniParams) -> Result<Section> {
    let q = tp.field().size_u128().unwrap() as u64;
    let n = q * q + q + 1;
    let mut s = Section::default();
    s.put("params", tp.to_json());
    let c = tallini_curve(tp)?;
    let cov = covers_pg2(&c, q)?;
    s.push(Check::holds("covers_pg2", cov.covered));
    s.push(Check::eq("point_count", json!(n), json!(cov.count as u64)));
    s.push(Check::holds("hasse_weil", cov.hasse_weil_ok));

    let bp = base_points(tp)?;
    if q <= CLOSURE_MAX_Q {
        let r = singular_points(&c, CLOSURE_MAX_EXT)?;
        s.put("smoothness_method", json!("closure"));
        s.put("smoothness", r.to_json());
        s.push(Check::eq("singular_points", json!(0), json!(r.points.len())));
    } else {
        let r = partial_smoothness(&c, q, &bp, 3)?;
        s.put("smoothness_method", json!("partial certificate"));
        s.push(Check::eq("rational_singular", json!(0), json!(r.rational_singular)));
        s.push(Check::eq("base_point_singular", json!(0), json!(r.extra_singular)));
        s.push(Check::eq("cubic_extension_scan_hits", json!(0), json!(r.scan_hits)));
        s.push(Check::holds("line_at_infinity_smooth", r.line_at_infinity_ok));
    }

    let ext = bp[0].field().clone();
    let singer = singer_from_cubic(&tp.a, &tp.b, &tp.c, q)?;
    let fixed = bp.iter().all(|pt| singer.embed(&ext).map_or(false, |m| m.apply(pt) == *pt));
    let ce = c.over(&ext)?;
    s.push(Check::holds("base_points_on_curve", bp.iter().all(|pt| ce.eval(pt).is_zero())));
    s.push(Check::holds("base_points_fixed", fixed));
    let start = ProjPoint::from_ints(tp.field(), [0, 0, 1]);
    let orb = orbit(&singer, &start);
    let mut sorted = orb.clone();
    sorted.sort();
    let mut all = pg2_points(q, tp.field())?;
    all.sort();
    s.push(Check::holds("singer_regular", sorted == all));
    s.put("base_points", json!(bp.iter().map(|p| p.to_json()).collect::<Vec<_>>()));
    Ok(s)
}

fn equivalence(tp: &TalliniParams, full: bool) -> Result<Section> {
    let q = tp.field().size_u128().unwrap() as u64;
    let n = (q * q + q + 1) as u128;
    let mut s = Section::default();
    let w = pellikaan_equivalence(tp)?;
    s.push(Check::holds("check_witness", check_witness(&w)));
    s.push(Check::claim(
        "minimal_i_divides_n",
        "i divides q^2+q+1",
        json!(w.i),
        divisors(n).contains(&(w.i as u128)),
    ));
    s.push(Check::holds("closed_form_coefficients", diag_closed_form(tp)?));
    // tau carried over to the Tallini curve
    let top = w.top.clone();
    let aut = gen_automorphisms(q)?;
    let tau = aut.tau.embed(&top)?;
    let conj = w.t.compose(&tau).compose(&w.t.inverse());
    let ct = tallini_curve(tp)?.over(&top)?;
    s.push(Check::holds("conjugated_tau_preserves_curve", stabilizer_scalar(&conj, &ct).is_ok()));
    s.put("tau_definition_degree", json!(definition_degree(&conj, q)?));
    s.put("closed_lambda_ok", json!(w.closed_lambda_ok));
    s.put("closed_mu_ok", json!(w.closed_mu_ok));
    s.put("i", json!(w.i));
    if full {
        s.put("witness", w.to_json());
    }
    Ok(s)
}

fn diag_closed_form(tp: &TalliniParams) -> Result<bool> {
    Ok(crate::tallini::diagonalize(tp)?.closed_form_ok)
}

fn semigroup(q: u64) -> Result<Section> {
    let mut s = Section::default();
    let sg = base_semigroup(q)?;
    let gaps = semigroup_gaps(&sg);
    s.push(Check::eq("gap_count", json!(q * (q + 1) / 2), json!(gaps.len())));
    if q == 2 {
        s.push(Check::eq("gap_set", json!([1, 2, 4]), json!(gaps)));
    }
    s.put("generators", json!(sg.generators));
    s.put("gaps", json!(gaps));
    s.put("conductor", json!(sg.conductor));
    Ok(s)
}

fn triangle(o: i64, xi: i64, yi: i64) -> Divisor {
    Divisor::from_pairs([(Place::O, o), (Place::XInf, xi), (Place::YInf, yi)].into_iter().filter(|&(_, n)| n != 0))
}

fn divisor_suite(q: u64) -> Result<Section> {
    let qi = q as i64;
    let g = qi * (qi + 1) / 2;
    let mut s = Section::default();
    let (dx, dy) = fundamental_divisors(q)?;
    s.push(Check::eq("div_x", triangle(1, -(qi + 1), qi).to_json(), dx.to_json()));
    s.push(Check::eq("div_y", triangle(qi + 1, -qi, -1).to_json(), dy.to_json()));
    s.push(Check::holds("div_x_local_orders", coordinate_orders(q, 0, 2)? == dx));
    s.push(Check::holds("div_y_local_orders", coordinate_orders(q, 1, 2)? == dy));
    for n in 1..=qi + 1 {
        let d = pole_divisor(q, n as u64)?;
        let want = triangle(qi + 1 - n, n * (qi + 1) - qi, -(n * qi + 1));
        s.push(Check::eq(&format!("div_y_over_x_pow_{n:02}"), want.to_json(), d.to_json()));
    }
    let dxd = canonical_dx_divisor(q, DX_SAMPLES)?;
    s.push(Check::eq(
        "div_dx",
        triangle(0, -(qi + 2), qi * qi + 2 * qi).to_json(),
        dxd.divisor.to_json(),
    ));
    s.push(Check::eq("deg_dx", json!(2 * g - 2), json!(dxd.divisor.degree())));
    s.push(Check::holds("dx_affine_sample_zero", dxd.affine_all_zero && dxd.affine_sampled > 0));
    s.put("dx_affine_sampled", json!(dxd.affine_sampled));
    Ok(s)
}

fn automorphisms(q: u64, trials: usize, budget: Option<Duration>) -> Result<Section> {
    let n = q * q + q + 1;
    let mut s = Section::default();
    let r = group_relations(q)?;
    s.push(Check::eq("ord_sigma", json!(n), json!(r.ord_sigma as u64)));
    s.push(Check::eq("ord_tau", json!(3), json!(r.ord_tau as u64)));
    s.push(Check::holds("sigma_scalar", r.sigma_scalar_ok));
    s.push(Check::holds("tau_scalar", r.tau_scalar_ok));
    s.push(Check::eq(
        "conjugation_exponent",
        json!((q * q) % n),
        json!(r.conj_exponent_substitution.map(|e| e as u64)),
    ));
    s.push(Check::eq("group_order", json!(3 * n), json!(r.group_order)));
    s.put("relations", r.to_json());

    let t = tangent_order_sample(q, trials)?;
    s.push(Check::eq("tangent_triangle", json!(vec![q + 1; 3]), json!(t.triangle)));
    s.push(Check::eq("tangent_sampled", json!(vec![2; trials]), json!(t.sampled)));
    s.push(Check::holds("tangent_routes_agree", t.series_agree));

    if q == 2 {
        let bf = brute_force_q2(budget)?;
        s.push(Check::claim(
            "stabilizer_classes_pgl3_8",
            "more than 21",
            json!(bf.found),
            bf.found > 21,
        ));
        s.put("brute_force", bf.to_json());
    }
    Ok(s)
}

fn quotient(p: u64, i: u32) -> Result<Section> {
    let r = p.pow(i);
    let mut s = Section::default();
    let c = verify_quotient_chain(p, i)?;
    s.push(Check::holds("chain1", c.chain1 && c.fixed && c.degree_bound));
    s.push(Check::holds("chain2", c.chain2));
    s.push(Check::holds("chain3", c.chain3));
    s.push(Check::eq("chains_passed", json!(3), json!(c.passed())));
    s.push(Check::eq("ord_h", json!(r * r - r + 1), json!(c.ord_h as u64)));
    s.put("chains", c.to_json());
    Ok(s)
}

fn hasse_witt(q: u64, full: bool) -> Result<Section> {
    let mut s = Section::default();
    let hw = hasse_witt_matrix(q)?;
    let g = hw.genus();
    let gamma = stable_rank(&hw.a, g);
    let prime = hw.a.field().is_prime_field();
    s.push(Check::holds("stable_rank_routes_agree", gamma == stable_rank_direct(&hw.a, g)));
    if g <= ORACLE_MAX_GENUS {
        s.push(Check::holds("series_oracle_agrees", oracle_agrees(&hw)?));
    }
    if prime {
        s.push(Check::eq("stable_rank", json!(g), json!(gamma)));
        s.push(Check::eq("rank", json!(g), json!(hw.a.rank())));
        s.push(Check::holds("manin_trace", manin_trace_check(q)?));
    } else if q == 4 {
        s.push(Check::claim("stable_rank", "less than 10", json!(gamma), gamma < 10));
    }
    s.put("genus", json!(g));
    s.put("gamma", json!(gamma));
    s.put("ordinary", json!(gamma == g));
    if full {
        s.put("matrix", hw.to_json());
    }
    Ok(s)
}

/// The sub-jobs of `all`, with their check-name prefixes.
pub fn all_jobs() -> Vec<(String, Command, Params)> {
    let mut out = Vec::new();
    let qp = |q: u64| Params {
        q: Some(q),
        ..Params::default()
    };
    for q in [2, 3, 4, 5, 7, 8, 9] {
        out.push((format!("verify-tallini/q={q:02}"), Command::VerifyTallini, qp(q)));
    }
    for q in [2, 3, 4] {
        out.push((format!("equivalence/q={q:02}"), Command::Equivalence, qp(q)));
    }
    for q in 2..=32u64 {
        if gf(q).is_ok() {
            out.push((format!("semigroup/q={q:02}"), Command::Semigroup, qp(q)));
        }
    }
    for q in [2, 3, 4, 5] {
        out.push((format!("divisors/q={q:02}"), Command::Divisors, qp(q)));
    }
    for q in [2, 3, 4, 5, 7, 8] {
        out.push((format!("automorphisms/q={q:02}"), Command::Automorphisms, qp(q)));
    }
    for p in [2, 3] {
        let pp = Params {
            p: Some(p),
            i: Some(1),
            ..Params::default()
        };
        out.push((format!("quotient/p={p},i=1"), Command::Quotient, pp));
    }
    for q in [2, 3, 4, 5, 7, 11, 13] {
        out.push((format!("hasse-witt/q={q:02}"), Command::HasseWitt, qp(q)));
    }
    out
}

fn all(budget: Option<u64>) -> Result<Section> {
    let parts: Vec<Result<Section>> = all_jobs()
        .into_par_iter()
        .map(|(prefix, cmd, mut p)| {
            if cmd == Command::Automorphisms {
                p.budget = budget;
            }
            let p = resolve(cmd, &p)?;
            Ok(run_section(cmd, &p, false)?.prefixed(&prefix))
        })
        .collect();
    let mut s = Section::default();
    for part in parts {
        s.extend(part?);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parse_flags() {
        let j = parse_spec(&argv("verify-tallini --q 2 --a 0 --b 1 --c 1")).unwrap();
        assert_eq!(j.command, Command::VerifyTallini);
        assert_eq!((j.params.q, j.params.a, j.params.b, j.params.c), (Some(2), Some(0), Some(1), Some(1)));
        let j = parse_spec(&argv("hasse-witt --q 4")).unwrap();
        assert_eq!((j.command, j.params.q), (Command::HasseWitt, Some(4)));
    }

    #[test]
    fn parse_rejects() {
        for bad in [
            "semigroup --q 6",
            "semigroup --q 1",
            "semigroup",
            "frobnicate --q 2",
            "semigroup --q 2 --trials 3",
            "verify-tallini --q 2 --a 0",
            "verify-tallini --q 2 --a 0 --b 0 --c 0",
            "quotient --p 4",
            "semigroup --q x",
            "semigroup --q 2 --zeta 1",
        ] {
            assert!(matches!(parse_spec(&argv(bad)), Err(Error::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn spec_file_rejects_unknown_keys() {
        let dir = std::env::temp_dir().join(format!("tallini-spec-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let good = dir.join("good.json");
        std::fs::write(&good, r#"{"command": "semigroup", "params": {"q": 4}}"#).unwrap();
        let j = parse_spec(&[String::from("--spec"), good.display().to_string()]).unwrap();
        assert_eq!((j.command, j.params.q), (Command::Semigroup, Some(4)));
        let bad = dir.join("bad.json");
        std::fs::write(&bad, r#"{"command": "semigroup", "params": {"q": 4, "r": 1}}"#).unwrap();
        assert!(parse_spec(&[String::from("--spec"), bad.display().to_string()]).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    fn run(s: &str) -> Report {
        run_report(&parse_spec(&argv(s)).unwrap()).unwrap()
    }

    #[test]
    fn small_reports_pass() {
        for cmd in [
            "verify-tallini --q 2",
            "semigroup --q 4",
            "divisors --q 3",
            "quotient --p 2",
            "hasse-witt --q 3",
            "equivalence --q 2",
            "automorphisms --q 3 --trials 5",
        ] {
            let r = run(cmd);
            let failed: Vec<_> = r.section.checks.iter().filter(|c| !c.pass).collect();
            assert!(failed.is_empty(), "{cmd}: {failed:?}");
        }
    }

    #[test]
    fn report_shape() {
        let r = run("semigroup --q 4");
        let v = r.to_json(false);
        assert_eq!(v["command"], "semigroup");
        assert_eq!(v["pass"], true);
        assert!(v.get("timing_ms").is_none());
        assert!(r.to_json(true).get("timing_ms").is_some());
        let gc = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "gap_count").unwrap();
        assert_eq!(gc["got"], 10);
        assert_eq!(r.render(false), run("semigroup --q 4").render(false));
    }

    #[test]
    fn q2_tangent_check_fails() {
        let r = run("automorphisms --q 2");
        let failed: Vec<&str> = r.section.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["tangent_sampled"]);
        assert_eq!(r.exit_code(), 1);
    }
}
