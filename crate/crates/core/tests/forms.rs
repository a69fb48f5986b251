use num_bigint::BigInt;
use proptest::prelude::*;
use sunada::algebra::{IntegerPolynomial, NumberField};
use sunada::forms::{
    classify_cocompactness, is_admissible, preserves_form, residue_obstruction, search_admissible_diagonal,
    witness_value, Cocompactness, Geometry, ModelForm,
};

fn field(c: &[i64]) -> NumberField {
    NumberField::new(&IntegerPolynomial::from_i64(c)).unwrap()
}

#[test]
fn search_returns_admissible_forms() {
    // Q, Q(√2), Q(√3), Q(√5), and the cubic field of 2cos(2π/7)
    for (c, n) in [(&[0, 1][..], 2), (&[-2, 0, 1], 3), (&[-3, 0, 1], 2), (&[-1, -1, 1], 4), (&[1, -2, -1, 1], 2)] {
        let f = field(c);
        let b = search_admissible_diagonal(&f, n, 3).unwrap().expect("found");
        let r = is_admissible(&b).unwrap();
        assert!(r.admissible, "{c:?}");
        // each signature is full
        let total: usize = r.signatures.iter().map(|(p, q)| p + q).sum();
        assert_eq!(total, f.r1() * (n + 1));
    }
}

#[test]
fn root_two_datum_is_cocompact() {
    let f = field(&[-2, 0, 1]);
    let theta = f.element_i64(&[0, 1]).unwrap();
    for n in 2..6 {
        let mut e = vec![f.one(); n];
        e.push(theta.neg());
        let b = ModelForm::diagonal(&f, e, 0).unwrap();
        let r = is_admissible(&b).unwrap();
        assert_eq!(r.signatures, vec![(n, 1), (n + 1, 0)]);
        let v = classify_cocompactness(Geometry::R, &f, n, &b).unwrap();
        assert_eq!(v.verdict, Cocompactness::Cocompact);
    }
}

/// Brute-force primitive zero of Σ cᵢxᵢ² with |xᵢ| ≤ h.
fn small_zero(c: &[i64], h: i64) -> bool {
    let k = c.len();
    let mut v = vec![-h; k];
    loop {
        if v.iter().any(|&x| x != 0) && c.iter().zip(&v).map(|(a, x)| a * x * x).sum::<i64>() == 0 {
            return true;
        }
        let mut i = 0;
        loop {
            if i == k {
                return false;
            }
            v[i] += 1;
            if v[i] <= h {
                break;
            }
            v[i] = -h;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Over Q(√2): diag(a₁, …, aₙ, c + dθ) with aᵢ > 0 and c + d√2 < 0 is
    /// admissible exactly when c − d√2 > 0.
    #[test]
    fn admissibility_matches_float_signs(a in prop::collection::vec(1i64..6, 2..4), c in -9i64..9, d in -9i64..9) {
        let f = field(&[-2, 0, 1]);
        let s2 = 2f64.sqrt();
        let (at_first, at_second) = (c as f64 + d as f64 * s2, c as f64 - d as f64 * s2);
        prop_assume!(at_first < -1e-9 && at_second.abs() > 1e-9);
        let mut e: Vec<_> = a.iter().map(|&x| f.from_int(x)).collect();
        e.push(f.element_i64(&[c, d]).unwrap());
        let b = ModelForm::diagonal(&f, e, 0).unwrap();
        let r = is_admissible(&b).unwrap();
        prop_assert_eq!(r.admissible, at_second > 0.0);
        let total: usize = r.signatures.iter().map(|(p, q)| p + q).sum();
        prop_assert_eq!(total, 2 * (a.len() + 1));
    }

    /// Witnesses re-evaluate to zero; obstructions exclude small zeros.
    #[test]
    fn rational_verdicts_are_sound(a in 1i64..40, b in 1i64..40, c in 1i64..60) {
        let q = NumberField::rationals();
        let form = ModelForm::diagonal(&q, vec![q.from_int(a), q.from_int(b), q.from_int(-c)], 0).unwrap();
        let v = classify_cocompactness(Geometry::R, &q, 2, &form).unwrap();
        match v.verdict {
            Cocompactness::Noncocompact => {
                let w = v.witness.clone().unwrap();
                prop_assert!(w.iter().any(|x| x != "0"));
                prop_assert!(witness_value(Geometry::R, &form, &w).unwrap() == num_rational::BigRational::from_integer(0.into()));
            }
            Cocompactness::Cocompact => {
                prop_assert!(v.obstruction.is_some());
                prop_assert!(!small_zero(&[a, b, -c], 12));
            }
            Cocompactness::Indeterminate => prop_assert!(false, "ternary forms are decided"),
        }
        let coeffs: Vec<BigInt> = [a, b, -c].iter().map(|&x| BigInt::from(x)).collect();
        prop_assert_eq!(residue_obstruction(&coeffs).unwrap().is_some(), v.verdict == Cocompactness::Cocompact);
    }

    /// A form-preserving integer matrix keeps B(x, y) for integer vectors.
    #[test]
    fn preserved_values_are_invariant(word in prop::collection::vec(0usize..3, 1..6), x in prop::collection::vec(-20i64..20, 3), y in prop::collection::vec(-20i64..20, 3)) {
        let b = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]];
        let gens = [
            vec![vec![1i64, 2, 2], vec![2, 1, 2], vec![2, 2, 3]],
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]],
            vec![vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        ];
        let mul = |p: &Vec<Vec<i64>>, q: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..3).map(|i| (0..3).map(|j| (0..3).map(|k| p[i][k] * q[k][j]).sum()).collect()).collect()
        };
        let mut m = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        for w in word {
            m = mul(&m, &gens[w]);
        }
        prop_assert!(preserves_form(&m, &b).unwrap());
        let apply = |v: &Vec<i64>| -> Vec<i64> { (0..3).map(|i| (0..3).map(|j| m[i][j] * v[j]).sum()).collect() };
        let bil = |u: &Vec<i64>, v: &Vec<i64>| u[0] * v[0] + u[1] * v[1] - u[2] * v[2];
        prop_assert_eq!(bil(&apply(&x), &apply(&y)), bil(&x, &y));
    }
}
