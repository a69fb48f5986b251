//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sunada::algebra::{IntegerPolynomial, NumberField};
use sunada::certify::{certify_almost_conjugate, spade_profile};
use sunada::constructions::{
    affine_group, heisenberg_group, horizontal_subgroup, twist_representatives, twisted_horizontal,
};
use sunada::covers::{
    compare_spectra, coset_cycle_type, schreier_spectrum_compare, spectrum_from_catalog, BaseCatalog, CompareMode,
    FreeBase, Homomorphism, SchreierMode, SpectrumKind,
};
use sunada::forms::{
    classify_cocompactness, hyperbolic_distance, is_admissible, preserves_form, standard_matrix, to_quat_matrix,
    Cocompactness, Geometry, ModelForm, ProjectivePoint, Quat,
};
use sunada::group::{all_subgroups, conjugacy_classes, coset_table, ConcreteGroup, Subgroup};
use sunada::suites::{affine_suite, coordinate_subspace, twist_lemma_suite};

/// Absolute tolerances for the floating-point metric checks.
const METRIC_TOL: f64 = 1e-9;
const QUATERNION_TOL: f64 = 1e-10;
const SPECTRUM_L: usize = 8;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn cycle_types_agree(g: &ConcreteGroup, h: &Subgroup, k: &Subgroup) -> bool {
    let (th, tk) = (coset_table(g, h).unwrap(), coset_table(g, k).unwrap());
    (0..g.order()).all(|x| coset_cycle_type(&th, x) == coset_cycle_type(&tk, x))
}

fn twist_lemma() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for ((p, n), (order, classes)) in [(2, 2), (3, 2), (2, 3)].into_iter().zip([(64, 4), (729, 9), (512, 64)]) {
        let r = twist_lemma_suite(p, n).unwrap();
        let ok = r.confirmed && r.group_order == order && r.conjugacy_classes == classes;
        pass &= ok;
        parts.push(format!(
            "(p={p},n={n}) |G|={} pairs={} AC={} conj⇔mult={} classes={}",
            r.group_order, r.pairs, r.all_almost_conjugate, r.conjugacy_matches_multiplication, r.conjugacy_classes
        ));
    }
    outcome(pass, parts.join("; "))
}

fn spade_corpus() -> Outcome {
    let mut checked = 0usize;
    let mut agree = 0usize;
    let mut check = |g: &ConcreteGroup, h: &Subgroup, k: &Subgroup| {
        let ac = certify_almost_conjugate(g, h, k).unwrap().verdict;
        checked += 1;
        agree += (ac == (spade_profile(g, h).unwrap() == spade_profile(g, k).unwrap())) as usize;
    };
    let small = [common::s3(), common::d4(), common::q8(), common::s4(), common::n3_f2()];
    for g in &small {
        let subs = all_subgroups(g);
        for h in &subs {
            for k in &subs {
                check(g, h, k);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for g in [heisenberg_group(2, 2).unwrap().group, affine_group(3, 2).unwrap().group] {
        for _ in 0..300 {
            let mut sub = || {
                let seeds: Vec<usize> = (0..rng.gen_range(1..3)).map(|_| rng.gen_range(0..g.order())).collect();
                Subgroup::generated(&g, &seeds).unwrap()
            };
            let (h, k) = (sub(), sub());
            check(&g, &h, &k);
        }
    }
    outcome(agree == checked, format!("{agree}/{checked} pairs agree (all pairs of S3, D4, Q8, S4, N3(F2); 300 sampled each in N3(F4), affine(3,2))"))
}

fn affine_examples() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (p, n, pairs) in [(3u64, 2usize, vec![[1, 1], [1, 2]]), (2, 3, vec![[1, 1], [1, 2], [2, 2], [1, 3]])] {
        for r in affine_suite(p, n, &pairs).unwrap() {
            pass &= r.confirmed;
            let v: Vec<String> = r.certificates.iter().map(|c| format!("{}", c.verdict as u8)).collect();
            parts.push(format!("({p},{n}) dims {:?} AC/EC/FPE/PW/PV={} {}", r.dims, v.join(""), if r.confirmed { "ok" } else { "MISMATCH" }));
        }
    }
    // the FPE pair of different orders
    let g = affine_group(2, 3).unwrap();
    let (line, plane) = (coordinate_subspace(&g, 1).unwrap(), coordinate_subspace(&g, 2).unwrap());
    let not_ac = !certify_almost_conjugate(&g.group, &line, &plane).unwrap().verdict;
    pass &= not_ac && line.order() != plane.order();
    parts.push(format!("line/plane in affine(2,3): |H|={} |K|={} not AC={not_ac}", line.order(), plane.order()));
    outcome(pass, parts.join("; "))
}

fn sunada_multiset() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let modes = [CompareMode::MultisetAll, CompareMode::MultisetPrimitive];
    // Heisenberg q = 4: φ sends the four free generators to the group's generators
    let h = heisenberg_group(2, 2).unwrap();
    let g = &h.group;
    let phi = Homomorphism::new(g, g.generators()).unwrap();
    let catalog = BaseCatalog::new(&FreeBase::of_rank(phi.rank()).unwrap(), SPECTRUM_L).unwrap();
    let base = horizontal_subgroup(&h);
    for f in twist_representatives(2, 2).unwrap().iter().skip(1) {
        let k = twisted_horizontal(&h, f).unwrap();
        let cyc = cycle_types_agree(g, &base, &k);
        let mut eq = Vec::new();
        for m in modes {
            let s1 = spectrum_from_catalog(&catalog, g, &base, &phi, m.kind()).unwrap();
            let s2 = spectrum_from_catalog(&catalog, g, &k, &phi, m.kind()).unwrap();
            let c = compare_spectra(&s1, &s2, m).unwrap();
            eq.push(format!("{}={} ({} entries)", m.name(), c.equal, c.compared_entries[0]));
            pass &= c.equal;
        }
        pass &= cyc;
        parts.push(format!("N3(F4) twist {:?}: cycle types {cyc}, {}", f.matrix, eq.join(", ")));
    }
    parts.push(format!("rank-4 floor {}", catalog.floor));
    let p = common::s6_pair();
    let catalog = BaseCatalog::new(&FreeBase::level_two(), SPECTRUM_L).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (phi, _) = richest_homomorphism(&p.g, &p.h, &p.k, &catalog, CompareMode::MultisetAll, 40, || {
        vec![rng.gen_range(0..720), rng.gen_range(0..720)]
    });
    let cyc = cycle_types_agree(&p.g, &p.h, &p.k);
    pass &= cyc;
    let mut eq = Vec::new();
    for m in modes {
        let s1 = spectrum_from_catalog(&catalog, &p.g, &p.h, &phi, m.kind()).unwrap();
        let s2 = spectrum_from_catalog(&catalog, &p.g, &p.k, &phi, m.kind()).unwrap();
        let c = compare_spectra(&s1, &s2, m).unwrap();
        pass &= c.equal && c.compared_entries[0] > 0;
        eq.push(format!(
            "{}={} ({} entries below floor, all {} enumerated equal={})",
            m.name(),
            c.equal,
            c.compared_entries[0],
            s1.entries.len(),
            s1.entries == s2.entries
        ));
    }
    parts.push(format!("S6 pair (degree 180): cycle types {cyc}, floor {}, {}", catalog.floor, eq.join(", ")));
    outcome(pass, parts.join("; "))
}

/// Among `tries` candidate image tuples that generate G, the homomorphism
/// whose covers have the most spectrum entries below the floor (ties keep
/// the earlier one), so the comparison window is not empty.
fn richest_homomorphism(
    g: &ConcreteGroup,
    h: &Subgroup,
    k: &Subgroup,
    catalog: &BaseCatalog,
    mode: CompareMode,
    tries: usize,
    mut candidate: impl FnMut() -> Vec<usize>,
) -> (Homomorphism, usize) {
    let mut best: Option<(Homomorphism, usize)> = None;
    let mut found = 0;
    while found < tries {
        let images = candidate();
        if Subgroup::generated(g, &images).unwrap().order() != g.order() {
            continue;
        }
        found += 1;
        let phi = Homomorphism::new(g, &images).unwrap();
        let s1 = spectrum_from_catalog(catalog, g, h, &phi, mode.kind()).unwrap();
        let s2 = spectrum_from_catalog(catalog, g, k, &phi, mode.kind()).unwrap();
        let n = compare_spectra(&s1, &s2, mode).unwrap().compared_entries.iter().copied().min().unwrap();
        if best.as_ref().map_or(true, |(_, m)| n > *m) {
            best = Some((phi, n));
        }
    }
    best.unwrap()
}

/// Below the rank-2 floor only classes aⁱbʲ with |ij| ≤ 4 occur, and an
/// image of one of them in W forces commuting linear parts, so no
/// surjection from the rank-2 base puts a short class into W. The rank-3
/// base (generators a², b, aba⁻¹) allows φ(a²b) ∈ W: candidates are
/// (x, x⁻¹t, z) with t a nonzero translation.
fn set_equal_volume_divergent() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let catalog = BaseCatalog::new(&FreeBase::of_rank(3).unwrap(), SPECTRUM_L).unwrap();
    for p in [3u64, 5] {
        let a = affine_group(p, 2).unwrap();
        let g = &a.group;
        let v = coordinate_subspace(&a, 1).unwrap();
        let w = a.translation_subgroup();
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let (phi, _) = richest_homomorphism(g, &v, &w, &catalog, CompareMode::SetPrimitive, 20, || {
            let x = rng.gen_range(0..g.order());
            let t = w.members()[rng.gen_range(1..w.order())];
            vec![x, g.mul(g.inv(x), t), rng.gen_range(0..g.order())]
        });
        let sv = spectrum_from_catalog(&catalog, g, &v, &phi, SpectrumKind::Primitive).unwrap();
        let sw = spectrum_from_catalog(&catalog, g, &w, &phi, SpectrumKind::Primitive).unwrap();
        let c = compare_spectra(&sv, &sw, CompareMode::SetPrimitive).unwrap();
        let multiset = compare_spectra(&sv, &sw, CompareMode::MultisetPrimitive).unwrap();
        let ratio = sv.degree / sw.degree;
        let nonempty = c.compared_entries.iter().all(|&e| e > 0);
        let ok = c.equal && nonempty && sv.degree == ratio * sw.degree && ratio as u64 == p;
        pass &= ok;
        parts.push(format!(
            "p={p}: degrees {}/{} ratio {ratio}, primitive sets equal below floor {} = {} ({}/{} entries), multisets equal = {}",
            sv.degree, sw.degree, c.window, c.equal, c.compared_entries[0], c.compared_entries[1], multiset.equal
        ));
    }
    outcome(pass, parts.join("; "))
}

fn symmetric_generators(g: &ConcreteGroup) -> Vec<usize> {
    g.generators().iter().flat_map(|&x| [x, g.inv(x)]).collect()
}

fn discrete_eigenvalues() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let p = common::s6_pair();
    let transpositions: Vec<usize> = (0..p.g.order()).filter(|&x| conjugacy_classes(&p.g).class_of[x] == conjugacy_classes(&p.g).class_of[p.a]).collect();
    let c = schreier_spectrum_compare(&p.g, &p.h, &p.k, &transpositions, SchreierMode::Multiset).unwrap();
    pass &= c.equal && c.dims == [180, 180] && transpositions.len() == 15;
    parts.push(format!("S6 pair, S = 15 transpositions: charpolys equal={} on {:?} vertices", c.equal, c.dims));
    let h = heisenberg_group(2, 2).unwrap();
    let s = symmetric_generators(&h.group);
    let base = horizontal_subgroup(&h);
    for f in twist_representatives(2, 2).unwrap().iter().skip(1) {
        let k = twisted_horizontal(&h, f).unwrap();
        let c = schreier_spectrum_compare(&h.group, &base, &k, &s, SchreierMode::Multiset).unwrap();
        pass &= c.equal && c.dims == [16, 16];
        parts.push(format!("N3(F4) twist {:?}: charpolys equal={} on {:?} vertices", f.matrix, c.equal, c.dims));
    }
    let a = affine_group(2, 3).unwrap();
    let (line, plane) = (coordinate_subspace(&a, 1).unwrap(), coordinate_subspace(&a, 2).unwrap());
    let s = symmetric_generators(&a.group);
    let c = schreier_spectrum_compare(&a.group, &line, &plane, &s, SchreierMode::Set).unwrap();
    let multiset = schreier_spectrum_compare(&a.group, &line, &plane, &s, SchreierMode::Multiset).unwrap();
    pass &= c.equal && c.dims[0] != c.dims[1] && !multiset.equal;
    parts.push(format!(
        "affine(2,3) line/plane: radicals equal={} (degree {}), charpolys equal={}, vertices {}/{} (stated 56/168; |G|=1344, |H|=2, |K|=4)",
        c.equal, c.poly_degrees[0], multiset.equal, c.dims[0], c.dims[1]
    ));
    outcome(pass, parts.join("; "))
}

fn arithmetic_forms() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let f = NumberField::new(&IntegerPolynomial::from_i64(&[-2, 0, 1])).unwrap();
    let theta = f.element_i64(&[0, 1]).unwrap();
    for n in 2..=5 {
        let mut e = vec![f.one(); n];
        e.push(theta.neg());
        let b = ModelForm::diagonal(&f, e, 0).unwrap();
        let r = is_admissible(&b).unwrap();
        let v = classify_cocompactness(Geometry::R, &f, n, &b).unwrap();
        let ok = r.admissible && r.signatures == vec![(n, 1), (n + 1, 0)] && v.verdict == Cocompactness::Cocompact;
        pass &= ok;
        parts.push(format!("n={n} Q(√2): signatures {:?} {:?}", r.signatures, v.verdict));
    }
    let q = NumberField::rationals();
    for (x, n) in [(Geometry::H, 2), (Geometry::H, 5), (Geometry::R, 4), (Geometry::R, 6)] {
        let b = ModelForm::standard(&q, n).unwrap();
        let v = classify_cocompactness(x, &q, n, &b).unwrap();
        pass &= v.verdict == Cocompactness::Noncocompact;
        parts.push(format!("Q X={x:?} n={n}: {:?}", v.verdict));
    }
    let b = ModelForm::diagonal(&q, vec![q.from_int(1), q.from_int(1), q.from_int(-7)], 0).unwrap();
    let v = classify_cocompactness(Geometry::R, &q, 2, &b).unwrap();
    let modulus = v.obstruction.as_ref().map(|o| o.modulus);
    pass &= v.verdict == Cocompactness::Cocompact && modulus == Some(8);
    parts.push(format!("diag(1,1,-7): {:?}, obstruction modulus {modulus:?}", v.verdict));
    outcome(pass, parts.join("; "))
}

fn random_point(rng: &mut ChaCha8Rng, x: Geometry, n: usize) -> ProjectivePoint {
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
        coords.push(Quat::real(rng.gen_range(1.2..3.0)));
        if let Ok(p) = ProjectivePoint::new(x, coords) {
            return p;
        }
    }
}

fn metric_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut self_max, mut sym, mut scale) = (0f64, 0f64, 0f64);
    for x in [Geometry::R, Geometry::C, Geometry::H] {
        for _ in 0..500 {
            let (a, b) = (random_point(&mut rng, x, 3), random_point(&mut rng, x, 3));
            self_max = self_max.max(hyperbolic_distance(&a, &a).unwrap());
            let d = hyperbolic_distance(&a, &b).unwrap();
            sym = sym.max((d - hyperbolic_distance(&b, &a).unwrap()).abs());
            let lam = match x {
                Geometry::R => Quat::real(rng.gen_range(0.3..3.0)),
                Geometry::C => Quat::complex(rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0)),
                Geometry::H => Quat(std::array::from_fn(|_| rng.gen_range(-1.5..1.5))),
            };
            scale = scale.max((d - hyperbolic_distance(&a.scaled(lam).unwrap(), &b).unwrap()).abs());
        }
    }
    // 100 words in exact generators of O(3,1; Z)
    let form = standard_matrix(3);
    let gens: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![1, 0, 0, 0], vec![0, 1, 2, 2], vec![0, 2, 1, 2], vec![0, 2, 2, 3]],
        vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]],
        vec![vec![-1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
    ];
    let mul = |p: &[Vec<i64>], q: &[Vec<i64>]| -> Vec<Vec<i64>> {
        (0..4).map(|i| (0..4).map(|j| (0..4).map(|k| p[i][k] * q[k][j]).sum()).collect()).collect()
    };
    let mut iso = 0f64;
    let mut exact = true;
    for _ in 0..100 {
        let mut m = standard_matrix(3).iter().map(|r| r.iter().map(|x| x.abs()).collect()).collect::<Vec<Vec<i64>>>();
        for _ in 0..rng.gen_range(1..4) {
            m = mul(&m, &gens[rng.gen_range(0..gens.len())]);
        }
        exact &= preserves_form(&m, &form).unwrap();
        let qm = to_quat_matrix(&m);
        let (a, b) = (random_point(&mut rng, Geometry::R, 3), random_point(&mut rng, Geometry::R, 3));
        let d = hyperbolic_distance(&a, &b).unwrap();
        iso = iso.max((d - hyperbolic_distance(&a.apply(&qm).unwrap(), &b.apply(&qm).unwrap()).unwrap()).abs());
    }
    // real points read as quaternionic points
    let mut qdiff = 0f64;
    for _ in 0..500 {
        let (a, b) = (random_point(&mut rng, Geometry::R, 3), random_point(&mut rng, Geometry::R, 3));
        let lift = |p: &ProjectivePoint| ProjectivePoint::new(Geometry::H, p.coords().to_vec()).unwrap();
        qdiff = qdiff.max((hyperbolic_distance(&a, &b).unwrap() - hyperbolic_distance(&lift(&a), &lift(&b)).unwrap()).abs());
    }
    let pass = self_max == 0.0 && sym <= METRIC_TOL && scale <= METRIC_TOL && exact && iso <= METRIC_TOL && qdiff <= QUATERNION_TOL;
    outcome(
        pass,
        format!(
            "max d(x,x)={self_max:e}, symmetry {sym:.1e}, scale {scale:.1e}, 100 isometries exact={exact} err {iso:.1e} (tol {METRIC_TOL:e}), H vs R {qdiff:.1e} (tol {QUATERNION_TOL:e})"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("twist lemma suite", twist_lemma),
        ("spade iff almost conjugate", spade_corpus),
        ("affine subspace examples", affine_examples),
        ("Sunada multiset equality", sunada_multiset),
        ("set-equal, volume-divergent covers", set_equal_volume_divergent),
        ("discrete eigenvalue analog", discrete_eigenvalues),
        ("arithmetic forms", arithmetic_forms),
        ("metric properties", metric_properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        failed += (!o.pass) as usize;
        println!(
            "criterion {}: {} [{name}] ({:.1}s) {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!(
        "criterion 9: NOT REPRODUCIBLE [true Laplace spectra, closed manifolds, asymptotic isometry bounds] \
         substituted by criteria 2, 4, 6"
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
