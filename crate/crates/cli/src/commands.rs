//! One function per command: validated document in, JSON result out.

use num_bigint::BigInt;
use serde_json::{json, Value};

use divkummer::autseq::{exact_sequence, AutGroup};
use divkummer::duality::duality_check_abelian;
use divkummer::exactalg::{snf, FgModule, ModuleMap, Presented, Ring, Submodule};
use divkummer::hulls::{is_normal, jhull, maximal_extension, required_level, DivisibleHull};
use divkummer::kummer::{
    divisibility_index, h1, kummer_bound, ses_cohomology_check, subring_index, thm_main_containment_check,
    BoundInputs, GaloisSimInstance,
};
use divkummer::modfilter::{baer_check, baer_check_default, divide_filter, is_essential, is_jmap, torsion};
use divkummer::pointed::{
    extension_maps, pullback, pushforward, pushout, saturate, JTExtension, PointedMap, TorsionTarget,
};

use crate::doc::*;

pub const COMMANDS: &[&str] = &[
    "snf",
    "info",
    "divide",
    "torsion",
    "jmap",
    "essential",
    "baer",
    "pure",
    "pushout",
    "saturate",
    "pullback",
    "pushforward",
    "maps",
    "hull",
    "maxext",
    "normal",
    "autseq",
    "duality",
    "h1",
    "subring-index",
    "div-index",
    "kummer-bound",
    "ses-check",
    "verify",
];

#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub filter: Option<String>,
    pub level: Option<BigInt>,
}

impl Flags {
    pub fn to_json(&self) -> Value {
        json!({
            "filter": self.filter,
            "level": self.level.as_ref().map(s_int),
        })
    }
}

pub struct Outcome {
    pub result: Value,
    pub warnings: Vec<String>,
}

fn done(result: Value) -> CliResult<Outcome> {
    Ok(Outcome { result, warnings: vec![] })
}

pub fn run(command: &str, doc: &Value, flags: &Flags) -> CliResult<Outcome> {
    let f = flags.filter.as_deref();
    match command {
        "snf" => cmd_snf(doc),
        "info" => cmd_info(doc, f),
        "divide" => cmd_divide(doc, f),
        "torsion" => cmd_torsion(doc, f),
        "jmap" | "essential" => cmd_map_predicate(command, doc, f),
        "baer" => cmd_baer(doc, f),
        "pure" => cmd_pure(doc, f),
        "pushout" => cmd_pushout(doc, f),
        "saturate" => cmd_saturate(doc, flags),
        "pullback" | "pushforward" => cmd_functor(command, doc, f),
        "maps" => cmd_maps(doc, f),
        "hull" => cmd_hull(doc, flags),
        "maxext" => cmd_maxext(doc, flags),
        "normal" | "autseq" => cmd_normal(command, doc, flags),
        "duality" => cmd_duality(doc),
        "h1" => cmd_h1(doc),
        "subring-index" => cmd_subring_index(doc),
        "div-index" => cmd_div_index(doc),
        "kummer-bound" => cmd_kummer_bound(doc),
        "ses-check" => cmd_ses_check(doc),
        "verify" => crate::verify::run_doc(doc),
        other => Err(schema("$", format!("unknown command `{other}`"))),
    }
}

fn submodule_json(p: &Presented, s: &Submodule) -> Value {
    let (m, _) = s.to_module();
    json!({
        "generators": s.generators().iter().map(|x| s_vec(&raw_element(p, x))).collect::<Vec<_>>(),
        "module": summary(&m),
        "index": s.index().map(|i| s_int(&i)),
    })
}

fn raw_submodule(p: &Presented, v: &Value, path: &str) -> CliResult<Submodule> {
    let elems = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| element(p, x, &format!("{path}[{i}]")))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Submodule::from_elements(&p.module, &elems))
}

fn cmd_snf(doc: &Value) -> CliResult<Outcome> {
    let m = matrix(field(doc, "$", "matrix")?, "$.matrix", None)?;
    let s = snf(&m);
    let diag = s.diagonal();
    let nonzero: Vec<BigInt> = diag.iter().filter(|d| d != &&BigInt::from(0)).cloned().collect();
    done(json!({
        "diagonal": s_vec(&diag),
        "rank": nonzero.len(),
        "u": s_matrix(&s.u),
        "s": s_matrix(&s.s),
        "v": s_matrix(&s.v),
    }))
}

fn cmd_info(doc: &Value, f: Option<&str>) -> CliResult<Outcome> {
    let r = ring(doc)?;
    let p = module(field(doc, "$", "module")?, "$.module", &r)?;
    let mut out = json!({
        "ring": print_ring(&r),
        "module": summary(&p.module),
        "canonical": print_module(&p.module),
    });
    if let Some(tv) = opt_field(doc, "target") {
        let t = target(tv, "$.target", &r)?;
        let j = filter(doc, f)?;
        let pd = top_pointed(doc, &r, &j, &t)?;
        let tors = pd.pointed.torsion();
        out["torsion"] = submodule_json(&pd.presented, tors);
        out["canonical"] = print_pointed(&pd.pointed);
        out["target"] = print_target(&t);
        out["filter"] = json!(j.to_string());
        out["level"] = s_int(&pd.pointed.level());
    } else if f.is_some() || opt_field(doc, "filter").is_some() {
        let j = filter(doc, f)?;
        out["torsion"] = submodule_json(&p, &torsion(&j, &p.module)?);
        out["filter"] = json!(j.to_string());
    }
    done(out)
}

fn cmd_divide(doc: &Value, f: Option<&str>) -> CliResult<Outcome> {
    let r = ring(doc)?;
    let j = filter(doc, f)?;
    let p = module(field(doc, "$", "module")?, "$.module", &r)?;
    let sub = raw_submodule(&p, field(doc, "$", "submodule")?, "$.submodule")?;
    let d = divide_filter(&j, &sub)?;
    done(json!({ "filter": j.to_string(), "division": submodule_json(&p, &d) }))
}

fn cmd_torsion(doc: &Value, f: Option<&str>) -> CliResult<Outcome> {
    let r = ring(doc)?;
    let j = filter(doc, f)?;
    let p = module(field(doc, "$", "module")?, "$.module", &r)?;
    done(json!({ "filter": j.to_string(), "torsion": submodule_json(&p, &torsion(&j, &p.module)?) }))
}

fn plain_map(doc: &Value, r: &Ring) -> CliResult<ModuleMap> {
    let m = field(doc, "$", "map")?;
    let src = module(field(m, "$.map", "source")?, "$.map.source", r)?;
    let dst = module(field(m, "$.map", "target")?, "$.map.target", r)?;
    module_map(&src, &dst, field(m, "$.map", "matrix")?, "$.map.matrix")
}

fn cmd_map_predicate(command: &str, doc: &Value, f: Option<&str>) -> CliResult<Outcome> {
    let r = ring(doc)?;
    let j = filter(doc, f)?;
    let map = plain_map(doc, &r)?;
    let verdict = if command == "jmap" { is_jmap(&j, &map)? } else { is_essential(&j, &map)? };
    done(json!({ "filter": j.to_string(), "injective": map.is_injective(), command: verdict }))
}

fn cmd_baer(doc: &Value, f: Option<&str>) -> CliResult<Outcome> {
    let j = filter(doc, f)?;
    let p = module(field(doc, "$", "module")?, "$.module", &Ring::Integers)?;
    let (verdict, modulus) = match opt_field(doc, "modulus") {
        Some(n) => (baer_check(&int(n, "$.modulus")?, &j, &p.module)?, Some(int(n, "$.modulus")?)),
        None => (baer_check_default(&j, &p.module)?, None),
    };
    done(json!({
        "filter": j.to_string(),
        "modulus": modulus.as_ref().map(s_int),
        "injective_on_testbed": verdict,
    }))
}

fn setting(doc: &Value, f: Option<&str>) -> CliResult<(Ring, divkummer::modfilter::IdealFilter, TorsionTarget)> {
    let r = ring(doc)?;
    let j = filter(doc, f)?;
    let t = target_of(doc, &r)?;
    Ok((r, j, t))
}

fn cmd_pure(doc: &Value, f: Option<&str>) -> CliResult<Outcome> {
    let (r, j, t) = setting(doc, f)?;
    let m = pointed_map(field(doc, "$", "map")?, "$.map", &r, &j, &t)?;
    done(json!({ "pure": m.map.is_pure()?, "injective": m.map.map().is_injective() }))
}

fn pointed_map_json(m: &PointedMap) -> Value {
    s_matrix(m.map().matrix())
}

/// `{"pushout": {"l", "m", "n", "f", "g"}}` with `f: L → M` and `g: L → N`.
fn cmd_pushout(doc: &Value, f: Option<&str>) -> CliResult<Outcome> {
    let (r, j, t) = setting(doc, f)?;
    let po = field(doc, "$", "pushout")?;
    let l = pointed(field(po, "$.pushout", "l")?, "$.pushout.l", &r, &j, &t)?;
    let m = pointed(field(po, "$.pushout", "m")?, "$.pushout.m", &r, &j, &t)?;
    let n = pointed(field(po, "$.pushout", "n")?, "$.pushout.n", &r, &j, &t)?;
    let fm = module_map(&l.presented, &m.presented, field(po, "$.pushout", "f")?, "$.pushout.f")?;
    let gm = module_map(&l.presented, &n.presented, field(po, "$.pushout", "g")?, "$.pushout.g")?;
    let fp = PointedMap::new(&l.pointed, &m.pointed, &fm)?;
    let gp = PointedMap::new(&l.pointed, &n.pointed, &gm)?;
    let p = pushout(&fp, &gp)?;
    done(json!({
        "module": print_pointed(&p.module),
        "summary": summary(p.module.module()),
        "i": pointed_map_json(&p.i),
        "j": pointed_map_json(&p.j),
        "i_injective": p.i.map().is_injective(),
        "j_injective": p.j.map().is_injective(),
    }))
}

fn cmd_saturate(doc: &Value, flags: &Flags) -> CliResult<Outcome> {
    let (r, j, t) = setting(doc, flags.filter.as_deref())?;
    let m = top_pointed(doc, &r, &j, &t)?;
    let s = saturate(&m.pointed);
    let mut warnings = vec![];
    let level = match &flags.level {
        Some(l) => l.clone(),
        None => {
            warnings.push("no --level given; using the level of the pointing".to_string());
            m.pointed.level()
        }
    };
    let (w, incs) = s.incs_at(&level)?;
    let result = json!({
        "free_part": summary(s.sat.free_part()),
        "target": print_target(s.sat.target()),
        "level": s_int(&level),
        "window": print_pointed(&w.module),
        "incs": s_matrix(incs.map().matrix()),
    });
    Ok(Outcome { result, warnings })
}

fn cmd_functor(command: &str, doc: &Value, f: Option<&str>) -> CliResult<Outcome> {
    let (r, j, t) = setting(doc, f)?;
    let phi = pointed_map(field(doc, "$", "map")?, "$.map", &r, &j, &t)?;
    let e = extension(field(doc, "$", "extension")?, "$.extension", &r, &j, &t)?;
    let out = if command == "pullback" { pullback(&phi.map, &e.ext)?.ext } else { pushforward(&phi.map, &e.ext)?.ext };
    done(json!({ "extension": print_extension(&out), "total": summary(out.total().module()) }))
}

fn cmd_maps(doc: &Value, f: Option<&str>) -> CliResult<Outcome> {
    let (r, j, t) = setting(doc, f)?;
    let a = extension(field(doc, "$", "extension")?, "$.extension", &r, &j, &t)?;
    let b = extension(field(doc, "$", "other")?, "$.other", &r, &j, &t)?;
    let maps = extension_maps(&a.ext, &b.ext)?;
    let list: Vec<Value> = maps
        .iter()
        .map(|m| json!({"matrix": s_matrix(m.map.map().matrix()), "injective": m.injective, "isomorphism": m.isomorphism}))
        .collect();
    done(json!({
        "count": maps.len(),
        "isomorphic": maps.iter().any(|m| m.isomorphism),
        "maps": list,
    }))
}

fn hull_json(h: &DivisibleHull) -> Value {
    json!({
        "display": h.to_string(),
        "localized_rank": h.localized_rank(),
        "prufer_count": h.prufer_count(),
        "residual": summary(&h.residual()),
        "min_level": s_int(h.min_level()),
    })
}

fn with_window(h: &DivisibleHull, flags: &Flags, mut out: Value) -> CliResult<Outcome> {
    if let Some(l) = &flags.level {
        let w = h.window(l)?;
        out["window"] = json!({
            "level": s_int(l),
            "module": summary(&w.module),
            "iota": s_matrix(w.iota.matrix()),
        });
    }
    done(out)
}

fn cmd_hull(doc: &Value, flags: &Flags) -> CliResult<Outcome> {
    let r = ring(doc)?;
    let j = filter(doc, flags.filter.as_deref())?;
    let p = module(field(doc, "$", "module")?, "$.module", &r)?;
    let h = jhull(&j, &p.module)?;
    with_window(&h, flags, hull_json(&h))
}

fn cmd_maxext(doc: &Value, flags: &Flags) -> CliResult<Outcome> {
    let (r, j, t) = setting(doc, flags.filter.as_deref())?;
    let m = top_pointed(doc, &r, &j, &t)?;
    let h = maximal_extension(&m.pointed)?;
    with_window(&h, flags, hull_json(&h))
}

fn cmd_normal(command: &str, doc: &Value, flags: &Flags) -> CliResult<Outcome> {
    let (r, j, t) = setting(doc, flags.filter.as_deref())?;
    let e = extension(field(doc, "$", "extension")?, "$.extension", &r, &j, &t)?;
    let gamma = maximal_extension(e.ext.base())?;
    let mut warnings = vec![];
    let level = match &flags.level {
        Some(l) => l.clone(),
        None => {
            let l = required_level(&e.ext, &gamma)?;
            warnings.push(format!("no --level given; using the required level {l}"));
            l
        }
    };
    let result = if command == "normal" {
        let v = is_normal(&e.ext, &gamma, &level)?;
        json!({
            "normal": v.normal,
            "level": s_int(&v.level),
            "embeddings": v.embeddings,
            "distinct_images": v.distinct_images,
        })
    } else {
        autseq_json(&e.ext, &gamma, &level)?
    };
    Ok(Outcome { result, warnings })
}

fn autseq_json(n: &JTExtension, gamma: &DivisibleHull, level: &BigInt) -> CliResult<Value> {
    let s = exact_sequence(n, gamma, level)?;
    Ok(json!({
        "level": s_int(&s.level),
        "orders": {"kernel": s.orders.0, "middle": s.orders.1, "quotient": s.orders.2},
        "order_identity": s.order_identity,
        "kernel_abelian": s.kernel.abelian,
        "kernel_cross_check": s.kernel.cross_check,
        "hom_order": s.kernel.hom_order,
        "restriction_surjective": s.restriction_surjective,
        "action": s.action,
    }))
}

fn cmd_duality(doc: &Value) -> CliResult<Outcome> {
    let p = module(field(doc, "$", "module")?, "$.module", &Ring::Integers)?;
    let s = count(field(doc, "$", "s")?, "$.s")?;
    let rep = duality_check_abelian(&p.module, s)?;
    done(json!({
        "submodules": rep.submodules,
        "end_submodules": rep.end_submodules,
        "mutually_inverse": rep.mutually_inverse,
        "inclusion_reversing": rep.inclusion_reversing,
        "holds": rep.holds(),
    }))
}

/// `{"module", "group": [matrix, ...]}`, matrices acting on the raw generators.
fn cmd_h1(doc: &Value) -> CliResult<Outcome> {
    let p = module(field(doc, "$", "module")?, "$.module", &Ring::Integers)?;
    let gens = array(field(doc, "$", "group")?, "$.group")?
        .iter()
        .enumerate()
        .map(|(i, m)| module_map(&p, &p, m, &format!("$.group[{i}]")))
        .collect::<CliResult<Vec<_>>>()?;
    if let Some(i) = gens.iter().position(|g| !g.is_isomorphism()) {
        return Err(schema(&format!("$.group[{i}]"), "not an automorphism"));
    }
    let g = AutGroup::generated_by(&p.module, &gens)?;
    let h = h1(&g)?;
    done(json!({
        "group_order": h.group_order,
        "h1": summary(&h.module),
        "cocycles": s_int(&h.cocycles),
        "coboundaries": s_int(&h.coboundaries),
        "annihilated_by_group_order": h.annihilated_by_group_order(),
    }))
}

fn square_matrices(v: &Value, path: &str, s: usize) -> CliResult<Vec<divkummer::exactalg::IntMatrix>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let p = format!("{path}[{i}]");
            let x = matrix(m, &p, Some(s))?;
            if x.rows() != s {
                return Err(schema(&p, format!("expected a {s}x{s} matrix")));
            }
            Ok(x)
        })
        .collect()
}

fn galois_target(g: &Value) -> CliResult<TorsionTarget> {
    match opt_field(g, "target") {
        Some(t) => target(t, "$.galois.target", &Ring::Integers),
        None => Ok(TorsionTarget::q_mod_z(count(field(g, "$.galois", "s")?, "$.galois.s")?)),
    }
}

fn cmd_subring_index(doc: &Value) -> CliResult<Outcome> {
    let g = field(doc, "$", "galois")?;
    let level = int(field(g, "$.galois", "level")?, "$.galois.level")?;
    let s = galois_target(g)?.s();
    let gens = square_matrices(field(g, "$.galois", "torsion")?, "$.galois.torsion", s)?;
    let m = subring_index(s, &level, &gens)?;
    done(json!({ "m": s_int(&m), "level": s_int(&level), "s": s }))
}

fn cmd_div_index(doc: &Value) -> CliResult<Outcome> {
    let p = module(field(doc, "$", "module")?, "$.module", &Ring::Integers)?;
    let t = match opt_field(doc, "target") {
        Some(t) => target(t, "$.target", &Ring::Integers)?,
        None => TorsionTarget::q_mod_z(count(field(doc, "$", "s")?, "$.s")?),
    };
    let k = int(field(doc, "$", "k")?, "$.k")?;
    done(json!({ "index": s_int(&divisibility_index(&p.module, &t, &k)?), "k": s_int(&k) }))
}

fn bound_inputs(b: &Value, path: &str, r: usize, s: usize) -> CliResult<BoundInputs> {
    let get = |k: &str| int(field(b, path, k)?, &format!("{path}.{k}"));
    Ok(BoundInputs::new(get("d")?, get("n")?, get("m")?, r, s)?)
}

fn cmd_kummer_bound(doc: &Value) -> CliResult<Outcome> {
    let b = field(doc, "$", "bound")?;
    let r = count(field(b, "$.bound", "r")?, "$.bound.r")?;
    let s = count(field(b, "$.bound", "s")?, "$.bound.s")?;
    let inputs = bound_inputs(b, "$.bound", r, s)?;
    let level = int(field(b, "$.bound", "level")?, "$.bound.level")?;
    let tors = match opt_field(b, "torsion") {
        Some(t) => vector(t, "$.bound.torsion", None)?,
        None => vec![],
    };
    let rep = kummer_bound(&inputs, &tors, &level)?;
    let per_level: Vec<Value> = rep.per_level.iter().map(|(l, c)| json!({"level": s_int(l), "index": s_int(c)})).collect();
    Ok(Outcome {
        result: json!({
            "c": s_int(&rep.c),
            "dnm": s_int(&inputs.dnm()),
            "closed_form": s_int(&inputs.closed_form()),
            "per_level": per_level,
        }),
        warnings: rep.notes,
    })
}

fn galois_instance(g: &Value) -> CliResult<(GaloisSimInstance, Presented)> {
    let t = galois_target(g)?;
    let level = int(field(g, "$.galois", "level")?, "$.galois.level")?;
    let x = module(field(g, "$.galois", "x")?, "$.galois.x", &Ring::Integers)?;
    let inst = if let Some(pairs) = opt_field(g, "pairs") {
        let list = array(pairs, "$.galois.pairs")?
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let path = format!("$.galois.pairs[{i}]");
                let tau = square_matrices(&json!([field(p, &path, "torsion")?]), &format!("{path}.torsion"), t.s())?;
                let kappa = hom_element(&x, &t, field(p, &path, "kummer")?, &format!("{path}.kummer"))?;
                Ok((tau.into_iter().next().expect("one matrix"), kappa))
            })
            .collect::<CliResult<Vec<_>>>()?;
        GaloisSimInstance::from_pairs(&t, &level, &x.module, &list)?
    } else {
        let torsion = square_matrices(field(g, "$.galois", "torsion")?, "$.galois.torsion", t.s())?;
        let kummer = array(field(g, "$.galois", "kummer")?, "$.galois.kummer")?
            .iter()
            .enumerate()
            .map(|(i, k)| hom_element(&x, &t, k, &format!("$.galois.kummer[{i}]")))
            .collect::<CliResult<Vec<_>>>()?;
        GaloisSimInstance::split(&t, &level, &x.module, &torsion, &kummer)?
    };
    Ok((inst, x))
}

/// `{"galois": {"level", "s" | "target", "x", "torsion", "kummer" | "pairs", "rational"}, "bound"?: {"d", "n", "m"}}`.
fn cmd_ses_check(doc: &Value) -> CliResult<Outcome> {
    let g = field(doc, "$", "galois")?;
    let (inst, x) = galois_instance(g)?;
    let rational = module(field(g, "$.galois", "rational")?, "$.galois.rational", &Ring::Integers)?;
    let rep = ses_cohomology_check(&inst, &rational.module)?;
    let mut out = json!({
        "group_order": inst.group_order(),
        "torsion_image_order": inst.torsion_image().order(),
        "kummer_image_order": inst.kummer_image().order().map(|o| s_int(&o)),
        "rational": submodule_json(&x, &rep.rational),
        "kernel": submodule_json(&x, &rep.kernel),
        "h1": summary(&rep.h1),
        "injective": rep.injective,
        "exact": rep.exact,
        "cocycles_valid": rep.cocycles_valid,
        "matches_given": rep.matches_given,
        "holds": rep.holds(),
    });
    if let Some(b) = opt_field(doc, "bound") {
        let r = x.module.ngens();
        let inputs = bound_inputs(b, "$.bound", r, inst.target().s())?;
        out["containment"] = json!(thm_main_containment_check(&inst, &inputs)?);
    }
    done(out)
}

/// The module named by `key`, for callers that only need the object.
pub fn parse_module(doc: &Value, key: &str) -> CliResult<FgModule> {
    let r = ring(doc)?;
    Ok(module(field(doc, "$", key)?, &format!("$.{key}"), &r)?.module)
}
