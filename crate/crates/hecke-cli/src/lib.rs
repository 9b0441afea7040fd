//! Command-line front end: argument parsing, JSON input resolution and
//! dispatch to the library. `run` returns the exit code and the rendered
//! output so it can be driven from tests.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hecke_functor::acceptance;
use hecke_functor::finrep::{clifford_identity_check, hom_mult, induce, restrict, CharTable, FiniteGroup};
use hecke_functor::functor::{decompose_with, pullback_json, sample_parameters, smap, tag_from_json, GroupHomDesc, TwistConvention};
use hecke_functor::hecke::ad::{check_relations_preserved, AdXg, AlphaTwist};
use hecke_functor::hecke::spec::HeckeSpecJson;
use hecke_functor::hecke::{HKey, HeckeElement, HeckeSpec, ImAlgebra};
use hecke_functor::lparam::{
    component_group, component_group_json, example_sln, param_to_json, parse_param_json, relevant_enhancements, root_of_unity_label,
    tau_character, Factor, GroupTag, ToyParameter,
};
use hecke_functor::numkernel::{parse_rat, rat_to_string, Cyclo, LaurentPoly, Rat};
use hecke_functor::rootdata::{build_classical, BasedRootDatum, Family, Isogeny};
use hecke_functor::weyl::{ExtAffineJson, WeylGroup};
use hecke_functor::{Error, Result};

pub const FIXTURES_ENV: &str = "HECKE_FUNCTOR_FIXTURES";

#[derive(Parser, Debug)]
#[command(name = "hecke-functor", version, about = "Exact Hecke algebra and L-parameter computations")]
pub struct Cli {
    /// JSON object supplying any option not given on the command line.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for verbs that sample.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// JSON-valued options accept inline JSON, a file path, or a fixture name.
#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Summary of a based root datum.
    Rootdatum(DatumArgs),
    /// Weyl group data, and the length of an extended affine element.
    Weyl {
        #[command(flatten)]
        datum: DatumArgs,
        /// `{"t": [...], "w_word": [...]}`.
        #[arg(long)]
        element: Option<String>,
    },
    /// Affine Hecke algebra operations.
    Hecke {
        #[command(subcommand)]
        op: HeckeOp,
    },
    /// Induction and Clifford theory across a normal subgroup.
    Finrep {
        #[arg(long)]
        group: Option<String>,
        /// A JSON element list, the name of a marked subgroup, or `derived`.
        #[arg(long)]
        normal: Option<String>,
        #[arg(long)]
        rho: Option<usize>,
    },
    /// Component groups and enhancements of toy parameters.
    Param {
        #[command(subcommand)]
        op: ParamOp,
    },
    /// Pull an enhanced parameter back along a homomorphism.
    Pullback {
        #[arg(long)]
        hom: Option<String>,
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        rho: Option<usize>,
        #[arg(long, value_enum)]
        convention: Option<Convention>,
    },
    /// Worked examples.
    Example {
        #[command(subcommand)]
        which: ExampleOp,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Args, Debug)]
pub struct DatumArgs {
    /// Full datum JSON or `{"family": "A", "n": 2, "isogeny": "sc"}`.
    #[arg(long)]
    pub datum: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum HeckeOp {
    /// Product of two elements in the Iwahori–Matsumoto basis.
    Mul {
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Test an element, or the symmetrized θ-sum of `--theta-orbit`, for centrality.
    CenterCheck {
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        elt: Option<String>,
        #[arg(long)]
        theta_orbit: Option<String>,
    },
    /// Apply `Ad(x_g)` and verify that it preserves the defining relations.
    AdXg {
        #[arg(long)]
        spec: Option<String>,
        /// Rational vector, e.g. `["1/2"]`.
        #[arg(long)]
        x_g: Option<String>,
        #[arg(long)]
        elt: Option<String>,
    },
    /// Apply the twist by a character `ψ` of `Γ`.
    Twist {
        #[arg(long)]
        spec: Option<String>,
        /// One value per element of `Γ`: cyclotomic JSON or `"k/n"` for `exp(2πi k/n)`.
        #[arg(long)]
        psi: Option<String>,
        #[arg(long)]
        elt: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ParamOp {
    /// `S_φ` with its character table and coset representatives.
    ComponentGroup {
        #[arg(long)]
        param: Option<String>,
    },
    /// `τ_φ(g)` for `g` in fundamental-coweight coordinates.
    Tau {
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        g: Option<String>,
    },
    /// The irreducible characters of `S_φ` that are relevant.
    Enhancements {
        #[arg(long)]
        param: Option<String>,
    },
    /// Seeded sample parameters for a group tag; needs `--seed`.
    Sample {
        #[arg(long)]
        tag: Option<String>,
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExampleOp {
    /// The `SL_n` worked example.
    Sln {
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Inverse,
    Direct,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) => 2,
        Error::Computation(_) => 1,
    }
}

fn invalid(m: impl Into<String>) -> Error {
    Error::Validation(m.into())
}

pub fn fixtures_dir() -> PathBuf {
    match std::env::var_os(FIXTURES_ENV) {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}

/// Inline JSON, then a file path, then `<fixtures>/<name>.json`.
pub fn load_json(arg: &str) -> Result<Value> {
    let t = arg.trim_start();
    if t.starts_with(['{', '[', '"']) || t.parse::<f64>().is_ok() {
        return serde_json::from_str(arg).map_err(|e| invalid(format!("bad inline JSON: {e}")));
    }
    let path = Path::new(arg);
    let path = if path.is_file() { path.to_path_buf() } else { fixtures_dir().join(format!("{arg}.json")) };
    let text = std::fs::read_to_string(&path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("bad JSON in {}: {e}", path.display())))
}

/// Options resolved from the command line, falling back to the `--in` object.
struct Opts {
    from_file: Map<String, Value>,
}

impl Opts {
    fn json(&self, cli: &Option<String>, key: &str) -> Result<Value> {
        self.json_opt(cli, key)?.ok_or_else(|| invalid(format!("missing --{}", key.replace('_', "-"))))
    }

    fn json_opt(&self, cli: &Option<String>, key: &str) -> Result<Option<Value>> {
        if let Some(s) = cli {
            return load_json(s).map(Some);
        }
        match self.from_file.get(key) {
            Some(Value::String(s)) => load_json(s).map(Some),
            Some(v) => Ok(Some(v.clone())),
            None => Ok(None),
        }
    }

    fn usize(&self, cli: Option<usize>, key: &str) -> Result<Option<usize>> {
        if cli.is_some() {
            return Ok(cli);
        }
        match self.from_file.get(key) {
            None => Ok(None),
            Some(v) => v.as_u64().map(|x| Some(x as usize)).ok_or_else(|| invalid(format!("{key} must be a nonnegative integer"))),
        }
    }
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| invalid(format!("bad {what}: {e}")))
}

// ---- input formats ----

pub fn parse_datum(v: &Value) -> Result<BasedRootDatum> {
    if let Some(f) = v.get("family") {
        let family: Family = f.as_str().ok_or_else(|| invalid("family must be a string"))?.parse()?;
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| invalid("datum needs \"n\""))? as usize;
        let iso: Isogeny = match v.get("isogeny") {
            None => Isogeny::Sc,
            Some(i) => i.as_str().ok_or_else(|| invalid("isogeny must be a string"))?.parse()?,
        };
        return build_classical(family, n, iso);
    }
    from_value(v.clone(), "root datum")
}

pub fn parse_spec(v: &Value) -> Result<HeckeSpec> {
    if v.get("family").is_some() {
        let label = v.get("label").and_then(Value::as_u64).unwrap_or(1) as u32;
        return HeckeSpec::uniform(&parse_datum(v)?, label);
    }
    HeckeSpec::from_json(from_value::<HeckeSpecJson>(v.clone(), "Hecke spec")?)
}

/// `[{"t": [...], "w_word": [...], "r": 0, "coeff": 1 | LaurentPoly}]`.
pub fn parse_element(h: &ImAlgebra, v: &Value) -> Result<HeckeElement> {
    let g = h.spec().weyl();
    let terms = v.as_array().ok_or_else(|| invalid("element must be a list of terms"))?;
    let mut out = HeckeElement::zero();
    for t in terms {
        let x: Vec<i64> = match t.get("t") {
            None => vec![0; h.rank()],
            Some(x) => from_value(x.clone(), "term t")?,
        };
        if x.len() != h.rank() {
            return Err(invalid(format!("term t needs {} entries", h.rank())));
        }
        let word: Vec<usize> = match t.get("w_word") {
            None => vec![],
            Some(w) => from_value(w.clone(), "term w_word")?,
        };
        let w = g.from_word(&word)?;
        let r = t.get("r").and_then(Value::as_u64).unwrap_or(0) as u32;
        if r as usize >= h.spec().gamma().order() {
            return Err(invalid("term r is out of range"));
        }
        let c = match t.get("coeff") {
            None => LaurentPoly::one(),
            Some(Value::Number(n)) => LaurentPoly::from_int(n.as_i64().ok_or_else(|| invalid("integer coefficient expected"))?),
            Some(p) => from_value(p.clone(), "coefficient")?,
        };
        out.add_term(HKey::new(x, w, r), c);
    }
    Ok(out)
}

pub fn element_json(h: &ImAlgebra, e: &HeckeElement) -> Value {
    let g = h.spec().weyl();
    Value::Array(
        e.terms()
            .map(|(k, c)| json!({"t": k.t, "w_word": g.word(k.w), "r": k.r, "coeff": c, "coeff_text": c.to_string()}))
            .collect(),
    )
}

fn parse_rat_vec(v: &Value) -> Result<Vec<Rat>> {
    let items = v.as_array().ok_or_else(|| invalid("expected a list of rationals"))?;
    items
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_rat(s).map_err(invalid),
            Value::Number(n) => n.as_i64().map(|i| Rat::from_integer(i.into())).ok_or_else(|| invalid("integer expected")),
            _ => Err(invalid("rational entries must be strings or integers")),
        })
        .collect()
}

fn parse_cyclo(v: &Value) -> Result<Cyclo> {
    if let Some(s) = v.as_str() {
        let r = parse_rat(s).map_err(invalid)?;
        let n = u64::try_from(r.denom().clone()).map_err(|_| invalid("root of unity order out of range"))?;
        let k = i64::try_from(r.numer().clone()).map_err(|_| invalid("root of unity exponent out of range"))?;
        return Ok(Cyclo::root_of_unity(k, n));
    }
    from_value(v.clone(), "cyclotomic number")
}

/// `{"kind": "dihedral", "n": 4}` etc., or the table form.
pub fn parse_group(v: &Value) -> Result<FiniteGroup> {
    if let Some(kind) = v.get("kind").and_then(Value::as_str) {
        let n = v.get("n").and_then(Value::as_u64).map(|x| x as usize);
        let need_n = || n.ok_or_else(|| invalid(format!("{kind} needs \"n\"")));
        return match kind {
            "cyclic" => FiniteGroup::cyclic(need_n()?),
            "dihedral" => FiniteGroup::dihedral(need_n()?),
            "symmetric" => FiniteGroup::symmetric(need_n()?),
            "alternating" => FiniteGroup::alternating(need_n()?),
            "quaternion" => FiniteGroup::quaternion(),
            "sl2" => FiniteGroup::sl2(n.unwrap_or(3) as i64),
            _ => Err(invalid(format!("unknown group kind {kind:?}"))),
        };
    }
    FiniteGroup::from_json_value(v.clone())
}

fn labels(values: &[Cyclo]) -> Vec<String> {
    values.iter().map(root_of_unity_label).collect()
}

// ---- verbs ----

fn rootdatum(d: &BasedRootDatum) -> Value {
    json!({
        "datum": d,
        "dual": d.dual(),
        "rank": d.rank(),
        "semisimple_rank": d.semisimple_rank(),
        "num_roots": d.num_roots(),
        "cartan": d.cartan_matrix(),
        "components": d.components().len(),
    })
}

fn weyl(d: &BasedRootDatum, element: Option<Value>) -> Result<Value> {
    let g = WeylGroup::new(d)?;
    let mut out = json!({
        "order": g.order(),
        "longest_word": g.word(g.longest()),
        "reflections": d.positive_roots().len(),
    });
    if d.semisimple_rank() == d.rank() {
        out["omega_order"] = json!(g.omega_subgroup()?.len());
    }
    if let Some(e) = element {
        let j: ExtAffineJson = from_value(e, "extended affine element")?;
        let a = g.from_json(&j)?;
        let (word, om) = g.decompose(&a);
        out["element"] = json!({"input": j, "length": g.ext_length(&a), "affine_word": word, "omega": g.to_json(&om)});
    }
    Ok(out)
}

fn hecke(op: &HeckeOp, o: &Opts) -> Result<Value> {
    match op {
        HeckeOp::Mul { spec, a, b } => {
            let h = ImAlgebra::new(parse_spec(&o.json(spec, "spec")?)?)?;
            let x = parse_element(&h, &o.json(a, "a")?)?;
            let y = parse_element(&h, &o.json(b, "b")?)?;
            Ok(json!({"product": element_json(&h, &h.mul(&x, &y))}))
        }
        HeckeOp::CenterCheck { spec, elt, theta_orbit } => {
            let h = ImAlgebra::new(parse_spec(&o.json(spec, "spec")?)?)?;
            let x = match (o.json_opt(elt, "elt")?, o.json_opt(theta_orbit, "theta_orbit")?) {
                (Some(e), None) => parse_element(&h, &e)?,
                (None, Some(t)) => {
                    let v: Vec<i64> = from_value(t, "theta_orbit")?;
                    if v.len() != h.rank() {
                        return Err(invalid(format!("theta_orbit needs {} entries", h.rank())));
                    }
                    h.theta_poly(&h.symmetrized_theta(&v))
                }
                _ => return Err(invalid("give exactly one of --elt and --theta-orbit")),
            };
            let failing: Vec<usize> =
                h.central_test_generators().iter().enumerate().filter(|(_, g)| !h.commutator(&x, g).is_zero()).map(|(i, _)| i).collect();
            Ok(json!({"element": element_json(&h, &x), "central": failing.is_empty(), "noncommuting_generators": failing}))
        }
        HeckeOp::AdXg { spec, x_g, elt } => {
            let h = ImAlgebra::new(parse_spec(&o.json(spec, "spec")?)?)?;
            let x = parse_rat_vec(&o.json(x_g, "x_g")?)?;
            let ad = AdXg::new(&h, &x)?;
            check_relations_preserved(&h, &h, &|e| ad.apply(e))?;
            let mut out = json!({"x_g": x.iter().map(rat_to_string).collect::<Vec<_>>(), "relations_preserved": true});
            if let Some(e) = o.json_opt(elt, "elt")? {
                let e = parse_element(&h, &e)?;
                out["image"] = element_json(&h, &ad.apply(&e)?);
            }
            let gens: Vec<Value> = (0..h.affine_gens().len()).map(|i| ad.apply(&h.gen(i)).map(|x| element_json(&h, &x))).collect::<Result<_>>()?;
            out["generator_images"] = Value::Array(gens);
            Ok(out)
        }
        HeckeOp::Twist { spec, psi, elt } => {
            let spec = parse_spec(&o.json(spec, "spec")?)?;
            let vals = o.json(psi, "psi")?;
            let psi: Vec<Cyclo> = vals.as_array().ok_or_else(|| invalid("psi must be a list"))?.iter().map(parse_cyclo).collect::<Result<_>>()?;
            let tw = AlphaTwist::new(&spec, psi)?;
            let h = ImAlgebra::new(spec)?;
            let target = ImAlgebra::new(tw.target().clone())?;
            check_relations_preserved(&h, &target, &|e| Ok(tw.apply(e)))?;
            let mut out = json!({"target_cocycle": tw.target().cocycle_table(), "relations_preserved": true});
            if let Some(e) = o.json_opt(elt, "elt")? {
                out["image"] = element_json(&h, &tw.apply(&parse_element(&h, &e)?));
            }
            Ok(out)
        }
    }
}

fn finrep(group: &Option<String>, normal: &Option<String>, rho: Option<usize>, o: &Opts) -> Result<Value> {
    let g = parse_group(&o.json(group, "group")?)?;
    let nv = match normal {
        Some(s) if !s.trim_start().starts_with(['[', '"']) => Value::String(s.clone()),
        _ => o.json(normal, "normal")?,
    };
    let mut n: Vec<u32> = match &nv {
        Value::String(name) if name == "derived" => g.derived_subgroup(),
        Value::String(name) => g.marked(name).ok_or_else(|| invalid(format!("no marked subgroup {name:?}")))?.to_vec(),
        v => from_value(v.clone(), "normal subgroup")?,
    };
    n.sort_unstable();
    n.dedup();
    let ng = g.subgroup(&n)?;
    let table = CharTable::compute(&g)?;
    let ntable = CharTable::compute(&ng)?;
    let which: Vec<usize> = match o.usize(rho, "rho")? {
        Some(r) if r >= ntable.irr.len() => return Err(invalid(format!("rho must be below {}", ntable.irr.len()))),
        Some(r) => vec![r],
        None => (0..ntable.irr.len()).collect(),
    };
    let mut reports = Vec::new();
    for r in which {
        let rho = &ntable.irr[r];
        let ind = induce(&g, &table, &n, rho)?;
        let frobenius = table.irr.iter().enumerate().try_fold(true, |ok, (i, chi)| -> Result<bool> {
            let m = ind.decomposition.iter().find(|(j, _)| *j == i).map_or(0, |(_, m)| *m);
            Ok(ok && m == hom_mult(&ng, &restrict(&n, chi), rho)?)
        })?;
        let cl = clifford_identity_check(&g, &n, rho)?;
        reports.push(json!({
            "rho": r,
            "rho_values": labels(&rho.values),
            "degree": rat_to_string(&rho.degree(&ng)),
            "decomposition": ind.decomposition.iter().map(|(i, m)| json!({"chi": i, "m": m, "degree": rat_to_string(&table.irr[*i].degree(&g))})).collect::<Vec<_>>(),
            "frobenius_holds": frobenius,
            "stabilizer_order": cl.stabilizer.len(),
            "clifford_holds": cl.holds,
        }));
    }
    Ok(json!({"group_order": g.order(), "normal_order": n.len(), "induced": reports}))
}

fn param(op: &ParamOp, o: &Opts, seed: Option<u64>) -> Result<Value> {
    let load = |p: &Option<String>| -> Result<(GroupTag, ToyParameter)> { parse_param_json(&o.json(p, "param")?) };
    match op {
        ParamOp::ComponentGroup { param } => {
            let (tag, phi) = load(param)?;
            Ok(component_group_json(&component_group(&tag, &phi)?))
        }
        ParamOp::Tau { param, g } => {
            let (tag, phi) = load(param)?;
            let cg = component_group(&tag, &phi)?;
            let g: Vec<i64> = from_value(o.json(g, "g")?, "g")?;
            let tau = tau_character(&cg, &g)?;
            Ok(json!({"g": g, "tau": labels(&tau.values)}))
        }
        ParamOp::Enhancements { param } => {
            let (tag, phi) = load(param)?;
            let cg = component_group(&tag, &phi)?;
            let rel = relevant_enhancements(&cg);
            let chars: Vec<Value> = cg
                .table
                .irr
                .iter()
                .enumerate()
                .map(|(i, c)| json!({"index": i, "values": labels(&c.values), "degree": rat_to_string(&c.degree(&cg.group)), "relevant": rel.contains(&i)}))
                .collect();
            Ok(json!({"parameter": param_to_json(&tag, &phi), "enhancements": chars, "relevant": rel}))
        }
        ParamOp::Sample { tag, count } => {
            let seed = seed.ok_or_else(|| invalid("sampling needs --seed"))?;
            let t = tag_from_json(&o.json(tag, "tag")?)?;
            let count = o.usize(*count, "count")?.unwrap_or(5);
            let ps = sample_parameters(&t, count, seed)?;
            Ok(json!({"seed": seed, "parameters": ps.iter().map(|p| param_to_json(&t, p)).collect::<Vec<_>>()}))
        }
    }
}

fn pullback(hom: &Option<String>, param: &Option<String>, rho: Option<usize>, conv: Option<Convention>, o: &Opts) -> Result<Value> {
    let f = GroupHomDesc::from_json(&o.json(hom, "hom")?)?;
    let (tag, phi) = parse_param_json(&o.json(param, "param")?)?;
    if tag != f.target {
        return Err(invalid(format!("the parameter lives on {tag}, the homomorphism targets {}", f.target)));
    }
    let rho = o.usize(rho, "rho")?.unwrap_or(0);
    let conv = match conv {
        Some(Convention::Direct) => TwistConvention::Direct,
        Some(Convention::Inverse) => TwistConvention::Inverse,
        None => match o.from_file.get("convention").and_then(Value::as_str) {
            Some("direct") => TwistConvention::Direct,
            None | Some("inverse") => TwistConvention::Inverse,
            Some(c) => return Err(invalid(format!("unknown convention {c:?}"))),
        },
    };
    let sm = smap(&f, &phi)?;
    if rho >= sm.source.table.irr.len() {
        return Err(invalid(format!("rho must be below {}", sm.source.table.irr.len())));
    }
    let terms = decompose_with(&sm, rho, conv)?;
    Ok(pullback_json(&f, &sm, rho, &terms))
}

/// The full `SL_n` pipeline: stabilizer, component group, `τ`, `Ad(t)` and
/// restriction from `GL_n`.
pub fn example_report(n: usize) -> Result<Value> {
    let (tag, phi) = example_sln(n)?;
    let cg = component_group(&tag, &phi)?;
    let cyc: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
    let gen = (0..cg.group.order() as u32).find(|&e| cg.pairs[e as usize][0].perm == cyc).ok_or_else(|| Error::Computation("no n-cycle".into()))?;
    let w_chi: usize = cg.cosets.iter().map(Vec::len).sum();
    let mut g = vec![0; n - 1];
    g[0] = 1;
    let tau = tau_character(&cg, &g)?;
    let powers: Vec<String> = (0..n as u64).map(|k| root_of_unity_label(&tau.values[cg.group.pow(gen, k) as usize])).collect();

    let ad = GroupHomDesc::ad(&tag, g.clone())?;
    let sm = smap(&ad, &phi)?;
    let mut ad_terms = Vec::new();
    for rho in 0..cg.group.order() {
        let t = decompose_with(&sm, rho, TwistConvention::Inverse)?;
        ad_terms.push(json!({"rho": rho, "images": t.iter().map(|x| json!({"rho_tilde": x.rho, "m": x.m})).collect::<Vec<_>>()}));
    }
    let f = GroupHomDesc::sl_to_gl(n)?;
    let gl = GroupTag::single(Factor::Gl(n));
    let phi_gl = ToyParameter::from_root_exponents(&gl, &[(0..n as i64).collect()], n as i64)?;
    let sm_gl = smap(&f, &phi_gl)?;
    let gl_terms = decompose_with(&sm_gl, 0, TwistConvention::Inverse)?;
    Ok(json!({
        "n": n,
        "parameter": param_to_json(&tag, &phi),
        "w_chi_order": w_chi,
        "w_chi_generator": cg.weyl.word(cg.representative(gen)),
        "component_group_order": cg.group.order(),
        "component_group_cyclic": cg.group.element_order(gen) == n as u64,
        "tau_generator": powers.get(1).cloned().unwrap_or_else(|| "1".into()),
        "tau_powers": powers,
        "ad_t_pullback": ad_terms,
        "sl_to_gl_pullback_size": gl_terms.len(),
        "sl_to_gl_multiplicities": gl_terms.iter().map(|t| t.m).collect::<Vec<_>>(),
    }))
}

fn selftest() -> (bool, Value, String) {
    let reports = acceptance::run_all();
    let ok = reports.iter().all(|r| r.passed);
    let text = reports.iter().map(|r| format!("{r}\n")).collect();
    let json = json!({
        "passed": ok,
        "criteria": reports.iter().map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail})).collect::<Vec<_>>(),
    });
    (ok, json, text)
}

// ---- rendering ----

/// `path = value` lines in key order.
pub fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) if !m.is_empty() => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix} = {s}\n")),
            _ => out.push_str(&format!("{prefix} = {v}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn dispatch(cli: &Cli, o: &Opts) -> Result<(Value, Option<String>, bool)> {
    let done = |v: Value| Ok((v, None, true));
    match &cli.verb {
        Verb::Rootdatum(a) => done(rootdatum(&parse_datum(&o.json(&a.datum, "datum")?)?)),
        Verb::Weyl { datum, element } => done(weyl(&parse_datum(&o.json(&datum.datum, "datum")?)?, o.json_opt(element, "element")?)?),
        Verb::Hecke { op } => done(hecke(op, o)?),
        Verb::Finrep { group, normal, rho } => done(finrep(group, normal, *rho, o)?),
        Verb::Param { op } => done(param(op, o, cli.seed)?),
        Verb::Pullback { hom, param, rho, convention } => done(pullback(hom, param, *rho, *convention, o)?),
        Verb::Example { which: ExampleOp::Sln { n } } => {
            let n = o.usize(*n, "n")?.ok_or_else(|| invalid("missing --n"))?;
            if !(2..=8).contains(&n) {
                return Err(invalid("n must be between 2 and 8"));
            }
            done(example_report(n)?)
        }
        Verb::Selftest => {
            let (ok, v, text) = selftest();
            Ok((v, Some(text), ok))
        }
    }
}

/// Run on parsed arguments; returns the exit code and the rendered output.
pub fn run_cli(cli: &Cli) -> (i32, String) {
    let from_file = match &cli.input {
        None => Ok(Map::new()),
        Some(p) => load_json(&p.to_string_lossy())
            .and_then(|v| match v {
                Value::Object(m) => Ok(m),
                _ => Err(invalid("--in must hold a JSON object")),
            }),
    };
    let res = from_file.and_then(|m| dispatch(cli, &Opts { from_file: m }));
    let (code, body) = match res {
        Ok((v, text, ok)) => {
            let body = match (cli.format, text) {
                (Format::Text, Some(t)) => t,
                (Format::Text, None) => render_text(&v),
                (Format::Json, _) => format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")),
            };
            (if ok { 0 } else { 1 }, body)
        }
        Err(e) => {
            let v = json!({"error": e.to_string(), "kind": if exit_code(&e) == 2 { "validation" } else { "computation" }});
            let body = match cli.format {
                Format::Text => render_text(&v),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")),
            };
            (exit_code(&e), body)
        }
    };
    if let Some(p) = &cli.out {
        if let Err(e) = std::fs::write(p, &body) {
            return (2, format!("cannot write {}: {e}\n", p.display()));
        }
        return (code, String::new());
    }
    (code, body)
}

/// Parse `argv` (including the program name) and run.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run_cli(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (code, e.to_string())
        }
    }
}

