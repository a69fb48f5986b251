//! Execution of each job kind.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::build::{build_group, BuiltGroup, ElementSpec, GroupSpec, SubgroupSpec};
use super::{Job, JobKind, Outcome};
use crate::algebra::{IntegerPolynomial, NumberField, NumberFieldElement};
use crate::certify::{certify, Relation};
use crate::covers::{
    compare_spectra, coset_cycle_type, schreier_spectrum_compare, spectrum_from_catalog, BaseCatalog, CompareMode,
    FreeBase, Homomorphism, SchreierMode, SpectrumKind, TraceSpectrum,
};
use crate::error::{Error, Result};
use crate::forms::{
    classify_with_height, hyperbolic_distance, is_admissible, make_cm_extension, preserves_form,
    quaternion_totally_definite, search_admissible_diagonal, Geometry, ModelForm, ProjectivePoint,
    QuaternionAlgebraDescriptor, Quat,
};
use crate::group::{are_subgroups_conjugate, coset_table, conjugacy_classes, Subgroup};
use crate::suites::{affine_suite, twist_lemma_suite};

pub(crate) const FORMS_ACTIONS: [&str; 8] = [
    "field",
    "search_admissible",
    "is_admissible",
    "classify_cocompactness",
    "make_cm",
    "quaternion_definite",
    "preserves_form",
    "signatures",
];

fn params<T: DeserializeOwned>(job: &Job) -> Result<T> {
    serde_json::from_value(Value::Object(job.params.clone())).map_err(|e| Error::Schema(format!("/: {e}")))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn digest_value(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

pub(crate) fn execute(job: &Job) -> Result<Outcome> {
    match job.kind {
        JobKind::Group => run_group(job),
        JobKind::Certify => run_certify(job),
        JobKind::HeisenbergSuite => run_heisenberg_suite(job),
        JobKind::AffineSuite => run_affine_suite(job),
        JobKind::Covers => run_covers(job),
        JobKind::Schreier => run_schreier(job),
        JobKind::Forms => run_forms(job),
        JobKind::Distance => run_distance(job),
    }
}

struct Built {
    group: BuiltGroup,
    subgroups: Vec<Subgroup>,
    hashes: BTreeMap<String, String>,
}

fn build(spec: &GroupSpec, subs: &[SubgroupSpec]) -> Result<Built> {
    let group = build_group(spec)?;
    let subgroups = subs.iter().map(|s| group.subgroup(s)).collect::<Result<Vec<_>>>()?;
    let mut hashes = BTreeMap::new();
    hashes.insert("group".to_string(), group.group().digest_hex());
    for (i, s) in subgroups.iter().enumerate() {
        hashes.insert(format!("subgroup_{i}"), s.digest_hex());
    }
    Ok(Built { group, subgroups, hashes })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupParams {
    group: GroupSpec,
    #[serde(default)]
    subgroups: Vec<SubgroupSpec>,
    #[serde(default)]
    #[allow(dead_code)]
    expect: Option<Value>,
}

fn run_group(job: &Job) -> Result<Outcome> {
    let p: GroupParams = params(job)?;
    let b = build(&p.group, &p.subgroups)?;
    let g = b.group.group();
    let classes = conjugacy_classes(g);
    let subs: Vec<Value> = b
        .subgroups
        .iter()
        .map(|s| json!({"order": s.order(), "index": g.order() / s.order(), "normal": s.is_normal(), "digest": s.digest_hex()}))
        .collect();
    Ok(Outcome {
        results: json!({
            "label": g.label(),
            "order": g.order(),
            "generators": g.generators().len(),
            "abelian": g.is_abelian(),
            "classes": classes.len(),
            "class_sizes": classes.class_sizes,
            "subgroups": subs,
        }),
        hashes: b.hashes,
        refutations: vec![],
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CertifyParams {
    group: GroupSpec,
    subgroups: Vec<SubgroupSpec>,
    relations: Option<Vec<String>>,
    #[allow(dead_code)]
    expect: Option<Value>,
}

fn parse_relations(names: &Option<Vec<String>>) -> Result<Vec<Relation>> {
    match names {
        None => Ok(vec![
            Relation::AlmostConjugate,
            Relation::ElementwiseConjugate,
            Relation::FixedPointEquivalent,
            Relation::Primitive,
        ]),
        Some(v) => v
            .iter()
            .map(|s| Relation::parse(s).ok_or_else(|| Error::Schema(format!("/relations: unknown relation {s:?}"))))
            .collect(),
    }
}

fn run_certify(job: &Job) -> Result<Outcome> {
    let p: CertifyParams = params(job)?;
    let relations = parse_relations(&p.relations)?;
    let b = build(&p.group, &p.subgroups)?;
    let g = b.group.group();
    let (h, k) = (&b.subgroups[0], &b.subgroups[1]);
    let mut certificates = Vec::new();
    let mut verdicts = Map::new();
    for r in relations {
        let certs = certify(r, g, h, k)?;
        let v = if r == Relation::Primitive {
            json!([certs[0].verdict, certs[1].verdict])
        } else {
            json!(certs[0].verdict)
        };
        verdicts.insert(r.name().into(), v);
        certificates.extend(certs);
    }
    if !certificates.iter().all(|c| c.recheck()) {
        return Err(Error::Internal("a certificate failed its evidence recheck".into()));
    }
    let conjugate = are_subgroups_conjugate(g, h, k)?.is_some();
    Ok(Outcome {
        results: json!({
            "orders": [h.order(), k.order()],
            "conjugate": conjugate,
            "verdicts": verdicts,
            "rechecked": true,
            "certificates": to_value(&certificates),
        }),
        hashes: b.hashes,
        refutations: vec![],
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteParams {
    p: u64,
    n: usize,
    pairs: Option<Vec<[usize; 2]>>,
    #[allow(dead_code)]
    expect: Option<Value>,
}

fn run_heisenberg_suite(job: &Job) -> Result<Outcome> {
    let p: SuiteParams = params(job)?;
    if p.pairs.is_some() {
        return Err(Error::Schema("/pairs: unknown field for kind heisenberg_suite".into()));
    }
    let r = twist_lemma_suite(p.p, p.n)?;
    let mut refutations = Vec::new();
    if !r.all_almost_conjugate {
        refutations.push("some twisted pair is not almost conjugate".into());
    }
    if !r.conjugacy_matches_multiplication {
        refutations.push("conjugacy does not match f − g being a multiplication".into());
    }
    if r.conjugacy_classes as u64 != r.expected_classes {
        refutations.push(format!("{} classes, expected {}", r.conjugacy_classes, r.expected_classes));
    }
    if !r.representatives_separate_classes {
        refutations.push("representatives do not separate the classes".into());
    }
    let mut hashes = BTreeMap::new();
    hashes.insert("group".into(), r.group_digest.clone());
    Ok(Outcome { results: to_value(&r), hashes, refutations })
}

fn run_affine_suite(job: &Job) -> Result<Outcome> {
    let p: SuiteParams = params(job)?;
    let pairs = p.pairs.unwrap_or_else(|| {
        (1..=p.n).flat_map(|a| (a..=p.n).map(move |b| [a, b])).collect()
    });
    let reports = affine_suite(p.p, p.n, &pairs)?;
    let mut refutations = Vec::new();
    for r in &reports {
        for e in r.expectations.iter().filter(|e| !e.holds()) {
            refutations.push(format!("dims {:?}: {} (observed {})", r.dims, e.claim, e.observed));
        }
        if !r.certificates.iter().all(|c| c.recheck()) {
            return Err(Error::Internal("a certificate failed its evidence recheck".into()));
        }
    }
    let mut hashes = BTreeMap::new();
    if let Some(c) = reports.first().and_then(|r| r.certificates.first()) {
        hashes.insert("group".into(), c.group_digest.clone());
    }
    Ok(Outcome { results: json!({"pairs": to_value(&reports)}), hashes, refutations })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PhiSpec {
    Named(String),
    Pair { a: ElementSpec, b: ElementSpec },
    Images { images: Vec<ElementSpec> },
}

fn homomorphism(group: &BuiltGroup, spec: &PhiSpec) -> Result<Homomorphism> {
    let g = group.group();
    match spec {
        PhiSpec::Named(s) if s == "generators" => Homomorphism::new(g, g.generators()),
        PhiSpec::Named(s) => Err(Error::Schema(format!("/phi: unknown homomorphism {s:?}"))),
        PhiSpec::Pair { a, b } => Homomorphism::from_pair(g, group.element(a)?, group.element(b)?),
        PhiSpec::Images { images } => {
            let im = images.iter().map(|e| group.element(e)).collect::<Result<Vec<_>>>()?;
            Homomorphism::new(g, &im)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoversParams {
    group: GroupSpec,
    subgroups: Vec<SubgroupSpec>,
    phi: PhiSpec,
    #[serde(rename = "L")]
    l: usize,
    modes: Option<Vec<String>>,
    #[serde(default)]
    emit_spectra: bool,
    #[allow(dead_code)]
    expect: Option<Value>,
}

fn run_covers(job: &Job) -> Result<Outcome> {
    let p: CoversParams = params(job)?;
    let modes: Vec<CompareMode> = match &p.modes {
        None => CompareMode::ALL.to_vec(),
        Some(v) => v
            .iter()
            .map(|s| CompareMode::parse(s).ok_or_else(|| Error::Schema(format!("/modes: unknown mode {s:?}"))))
            .collect::<Result<_>>()?,
    };
    let mut b = build(&p.group, &p.subgroups)?;
    let g = b.group.group().clone();
    let phi = homomorphism(&b.group, &p.phi)?;
    let base = FreeBase::of_rank(phi.rank())?;
    let catalog = BaseCatalog::new(&base, p.l)?;
    let (h, k) = (&b.subgroups[0], &b.subgroups[1]);
    let mut spectra: BTreeMap<(usize, SpectrumKind), TraceSpectrum> = BTreeMap::new();
    for kind in [SpectrumKind::Primitive, SpectrumKind::All] {
        if !modes.iter().any(|m| m.kind() == kind) {
            continue;
        }
        for (i, s) in [h, k].into_iter().enumerate() {
            spectra.insert((i, kind), spectrum_from_catalog(&catalog, &g, s, &phi, kind)?);
        }
    }
    let mut comparisons = Map::new();
    let mut equal = Map::new();
    let mut enumerated = Map::new();
    for m in &modes {
        let (s1, s2) = (&spectra[&(0, m.kind())], &spectra[&(1, m.kind())]);
        let c = compare_spectra(s1, s2, *m)?;
        equal.insert(m.name().into(), json!(c.equal));
        comparisons.insert(m.name().into(), to_value(&c));
        // every enumerated class, including traces above the floor
        let same = if m.is_multiset() {
            s1.entries == s2.entries
        } else {
            s1.entries.keys().eq(s2.entries.keys())
        };
        enumerated.insert(m.name().into(), json!({"equal": same, "entries": [s1.entries.len(), s2.entries.len()]}));
    }
    // cycle type of every element on G/H and G/K
    let th = coset_table(&g, h)?;
    let tk = coset_table(&g, k)?;
    let cycle_types_agree = (0..g.order()).all(|x| coset_cycle_type(&th, x) == coset_cycle_type(&tk, x));
    let mut spectra_json = Map::new();
    for ((i, kind), s) in &spectra {
        let v = to_value(s);
        let name = format!("spectrum_{}_{}", ["H", "K"][*i], to_value(kind).as_str().unwrap());
        b.hashes.insert(name.clone(), digest_value(&v));
        if p.emit_spectra {
            spectra_json.insert(name, v);
        }
    }
    let mut results = json!({
        "degrees": [th.index(), tk.index()],
        "base_rank": base.rank(),
        "L": p.l,
        "floor": catalog.floor.to_string(),
        "observed_floor": catalog.observed_floor.to_string(),
        "classes": catalog.classes.len(),
        "least_trace_monotone": catalog.least_trace_monotone(),
        "cycle_types_agree": cycle_types_agree,
        "equal": equal,
        "comparisons": comparisons,
        "enumerated": enumerated,
    });
    if p.emit_spectra {
        results["spectra"] = Value::Object(spectra_json);
    }
    Ok(Outcome { results, hashes: b.hashes, refutations: vec![] })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchreierParams {
    group: GroupSpec,
    subgroups: Vec<SubgroupSpec>,
    generators: Option<Vec<ElementSpec>>,
    modes: Option<Vec<String>>,
    #[allow(dead_code)]
    expect: Option<Value>,
}

fn run_schreier(job: &Job) -> Result<Outcome> {
    let p: SchreierParams = params(job)?;
    let modes: Vec<SchreierMode> = match &p.modes {
        None => vec![SchreierMode::Multiset, SchreierMode::Set],
        Some(v) => v
            .iter()
            .map(|s| SchreierMode::parse(s).ok_or_else(|| Error::Schema(format!("/modes: unknown mode {s:?}"))))
            .collect::<Result<_>>()?,
    };
    let b = build(&p.group, &p.subgroups)?;
    let g = b.group.group();
    // default: the group's generators and their inverses
    let s: Vec<usize> = match &p.generators {
        Some(list) => list.iter().map(|e| b.group.element(e)).collect::<Result<_>>()?,
        None => g.generators().iter().flat_map(|&x| [x, g.inv(x)]).collect(),
    };
    let mut comparisons = Map::new();
    let mut equal = Map::new();
    for m in modes {
        let c = schreier_spectrum_compare(g, &b.subgroups[0], &b.subgroups[1], &s, m)?;
        equal.insert(m.name().into(), json!(c.equal));
        comparisons.insert(m.name().into(), to_value(&c));
    }
    Ok(Outcome {
        results: json!({"generating_multiset_size": s.len(), "equal": equal, "comparisons": comparisons}),
        hashes: b.hashes,
        refutations: vec![],
    })
}

/// An integer or a decimal/fraction string.
#[derive(Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    fn rational(&self) -> Result<BigRational> {
        match self {
            Coord::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            Coord::Text(s) => BigRational::from_str(s.trim())
                .or_else(|_| BigInt::from_str(s.trim()).map(BigRational::from_integer))
                .map_err(|_| Error::Schema(format!("bad rational {s:?}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSpec {
    minpoly: IntegerPolynomial,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormsParams {
    field: FieldSpec,
    action: String,
    #[serde(rename = "X")]
    x: Option<String>,
    n: Option<usize>,
    height: Option<u64>,
    entries: Option<Vec<Vec<Coord>>>,
    distinguished: Option<usize>,
    d: Option<u64>,
    alpha: Option<Vec<Coord>>,
    beta: Option<Vec<Coord>>,
    matrix: Option<Vec<Vec<i64>>>,
    form: Option<Vec<Vec<i64>>>,
    #[allow(dead_code)]
    expect: Option<Value>,
}

fn element(f: &NumberField, coords: &[Coord]) -> Result<NumberFieldElement> {
    f.element(coords.iter().map(Coord::rational).collect::<Result<_>>()?)
}

fn require<T>(x: Option<T>, name: &str, action: &str) -> Result<T> {
    x.ok_or_else(|| Error::Schema(format!("/{name}: required by action {action:?}")))
}

fn model_form(f: &NumberField, p: &FormsParams) -> Result<ModelForm> {
    let entries = require(p.entries.as_ref(), "entries", &p.action)?;
    let es = entries.iter().map(|c| element(f, c)).collect::<Result<Vec<_>>>()?;
    ModelForm::diagonal(f, es, p.distinguished.unwrap_or(0))
}

fn run_forms(job: &Job) -> Result<Outcome> {
    let p: FormsParams = params(job)?;
    let f = NumberField::new(&p.field.minpoly)?;
    let mut hashes = BTreeMap::new();
    hashes.insert("field".into(), digest_value(&to_value(f.minpoly())));
    let field_info = json!({
        "minpoly": to_value(f.minpoly()),
        "degree": f.degree(),
        "r1": f.r1(),
        "r2": f.r2(),
        "totally_real": f.is_totally_real(),
        "totally_imaginary": f.is_totally_imaginary(),
    });
    let x = match &p.x {
        None => Geometry::R,
        Some(s) => Geometry::parse(s).ok_or_else(|| Error::Schema(format!("/X: expected R, C or H, got {s:?}")))?,
    };
    let results = match p.action.as_str() {
        "field" => field_info,
        "search_admissible" => {
            let n = require(p.n, "n", &p.action)?;
            let h = require(p.height, "height", &p.action)?;
            match search_admissible_diagonal(&f, n, h)? {
                Some(b) => json!({
                    "found": true,
                    "form": to_value(&b.to_json()),
                    "admissibility": to_value(&is_admissible(&b)?),
                }),
                None => json!({"found": false, "height": h}),
            }
        }
        "is_admissible" | "signatures" => {
            let b = model_form(&f, &p)?;
            let r = is_admissible(&b)?;
            json!({"admissible": r.admissible, "signatures": r.signatures, "distinguished": r.distinguished})
        }
        "classify_cocompactness" => {
            let n = require(p.n, "n", &p.action)?;
            let b = if p.entries.is_some() {
                model_form(&f, &p)?
            } else if f.is_rationals() {
                ModelForm::standard(&f, n)?
            } else {
                search_admissible_diagonal(&f, n, p.height.unwrap_or(3))?
                    .ok_or_else(|| Error::InvalidArgument("no admissible form within the height bound".into()))?
            };
            let search_height = if p.entries.is_some() || f.is_rationals() { p.height } else { None };
            let v = classify_with_height(x, &f, n, &b, search_height)?;
            let mut r = to_value(&v);
            r["form"] = to_value(&b.to_json());
            r
        }
        "make_cm" => {
            let d = require(p.d, "d", &p.action)?;
            let e = make_cm_extension(&f, d)?;
            hashes.insert("cm_field".into(), digest_value(&to_value(e.field.minpoly())));
            json!({
                "d": d,
                "minpoly": to_value(e.field.minpoly()),
                "degree": e.field.degree(),
                "r1": e.field.r1(),
                "r2": e.field.r2(),
                "totally_imaginary": e.field.is_totally_imaginary(),
            })
        }
        "quaternion_definite" => {
            let a = element(&f, require(p.alpha.as_ref(), "alpha", &p.action)?)?;
            let b = element(&f, require(p.beta.as_ref(), "beta", &p.action)?)?;
            let q = QuaternionAlgebraDescriptor::new(&f, a, b)?;
            to_value(&quaternion_totally_definite(&q)?)
        }
        "preserves_form" => {
            let a = require(p.matrix.as_ref(), "matrix", &p.action)?;
            let b = require(p.form.as_ref(), "form", &p.action)?;
            json!({"preserves": preserves_form(a, b)?})
        }
        other => return Err(Error::Schema(format!("/action: unknown action {other:?}"))),
    };
    Ok(Outcome { results, hashes, refutations: vec![] })
}

/// A real number or a quaternion [a, b, c, d].
#[derive(Deserialize)]
#[serde(untagged)]
enum QuatSpec {
    Real(f64),
    Full([f64; 4]),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistanceParams {
    #[serde(rename = "X")]
    x: Option<String>,
    points: Option<Vec<Vec<QuatSpec>>>,
    samples: Option<u64>,
    #[allow(dead_code)]
    expect: Option<Value>,
}

fn sample_point(rng: &mut ChaCha8Rng, x: Geometry, n: usize) -> ProjectivePoint {
    loop {
        let mut coords: Vec<Quat> = (0..n)
            .map(|_| {
                let mut q = Quat(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
                match x {
                    Geometry::R => q.0[1..].fill(0.0),
                    Geometry::C => q.0[2..].fill(0.0),
                    Geometry::H => {}
                }
                q
            })
            .collect();
        coords.push(Quat::real(rng.gen_range(1.5..3.0)));
        if let Ok(p) = ProjectivePoint::new(x, coords) {
            return p;
        }
    }
}

fn run_distance(job: &Job) -> Result<Outcome> {
    let p: DistanceParams = params(job)?;
    let x = match &p.x {
        None => Geometry::R,
        Some(s) => Geometry::parse(s).ok_or_else(|| Error::Schema(format!("/X: expected R, C or H, got {s:?}")))?,
    };
    let mut results = Map::new();
    if let Some(points) = &p.points {
        let pts = points
            .iter()
            .map(|c| {
                let coords = c
                    .iter()
                    .map(|q| match q {
                        QuatSpec::Real(r) => Quat::real(*r),
                        QuatSpec::Full(a) => Quat(*a),
                    })
                    .collect();
                ProjectivePoint::new(x, coords)
            })
            .collect::<Result<Vec<_>>>()?;
        let d = pts
            .iter()
            .map(|a| pts.iter().map(|b| hyperbolic_distance(a, b)).collect::<Result<Vec<f64>>>())
            .collect::<Result<Vec<_>>>()?;
        results.insert("distances".into(), to_value(&d));
    }
    if let Some(n) = p.samples {
        let mut rng = ChaCha8Rng::seed_from_u64(job.seed.unwrap_or(0));
        let (mut sym, mut scale, mut self_d) = (0f64, 0f64, 0f64);
        let mut triangle_violations = 0u64;
        for _ in 0..n {
            let [a, b, c] = [0; 3].map(|_| sample_point(&mut rng, x, 2));
            let dab = hyperbolic_distance(&a, &b)?;
            sym = sym.max((dab - hyperbolic_distance(&b, &a)?).abs());
            self_d = self_d.max(hyperbolic_distance(&a, &a)?);
            let lam = Quat([rng.gen_range(0.5..2.0), 0.3, 0.0, 0.0]);
            let lam = match x {
                Geometry::R => Quat::real(lam.0[0]),
                Geometry::C => lam,
                Geometry::H => Quat([lam.0[0], 0.3, -0.2, 0.7]),
            };
            scale = scale.max((dab - hyperbolic_distance(&a.scaled(lam)?, &b)?).abs());
            let (dbc, dac) = (hyperbolic_distance(&b, &c)?, hyperbolic_distance(&a, &c)?);
            if dac > dab + dbc + 1e-9 {
                triangle_violations += 1;
            }
        }
        results.insert(
            "samples".into(),
            json!({
                "count": n,
                "max_self_distance": self_d,
                "max_symmetry_error": sym,
                "max_scale_error": scale,
                "triangle_violations": triangle_violations,
                "within_tolerance": self_d == 0.0 && sym <= 1e-10 && scale <= 1e-10 && triangle_violations == 0,
            }),
        );
    }
    Ok(Outcome { results: Value::Object(results), hashes: BTreeMap::new(), refutations: vec![] })
}
