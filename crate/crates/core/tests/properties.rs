use hyperherm::hypercomplex::{project, standard_metric, BilinearForm, FormSpace};
use hyperherm::matrix::Matrix;
use hyperherm::tensor::{MetricPair, Tensor, Variance};
use hyperherm::{Poly, Rational, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(([0u32..3, 0u32..3, 0u32..3, 0u32..3], rational()), 0..5)
        .prop_map(Poly::from_terms)
}

fn point() -> impl Strategy<Value = [Rational; 4]> {
    [rational(), rational(), rational(), rational()]
}

fn signs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop::bool::ANY.prop_map(|b| if b { 1 } else { -1 }), 3)
}

fn tensor(dim: usize, rank: usize) -> impl Strategy<Value = Tensor<Rational>> {
    tensor_of(dim, rank, Variance::Covariant)
}

fn tensor_of(dim: usize, rank: usize, v: Variance) -> impl Strategy<Value = Tensor<Rational>> {
    prop::collection::vec(rational(), dim.pow(rank as u32))
        .prop_map(move |data| Tensor::from_data(dim, vec![v; rank], data).unwrap())
}

fn form(dim: usize) -> impl Strategy<Value = BilinearForm<Rational>> {
    prop::collection::vec(rational(), dim * dim)
        .prop_map(move |v| BilinearForm::new(Matrix::from_fn(dim, |i, j| v[i * dim + j].clone())))
}

proptest! {
    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!(a.clone() * Poly::one(), a);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(), b in poly(), p in point()) {
        prop_assert_eq!((a.clone() + b.clone()).eval(&p), a.eval(&p) + b.eval(&p));
        prop_assert_eq!((a.clone() * b.clone()).eval(&p), a.eval(&p) * b.eval(&p));
        prop_assert_eq!((-a.clone()).eval(&p), -a.eval(&p));
    }

    #[test]
    fn rational_display_parse_round_trip(r in rational()) {
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn rational_field_inverse(r in rational()) {
        match r.recip() {
            Some(inv) => prop_assert_eq!(r * inv, Rational::from_int(1)),
            None => prop_assert!(r.is_zero()),
        }
    }

    #[test]
    fn contraction_is_bilinear(a in tensor(3, 2), b in tensor(3, 2), c in tensor_of(3, 2, Variance::Contravariant), s in rational()) {
        let left = a.try_add(&b.scale(&s)).unwrap().contract(&c, &[(1, 0)]).unwrap();
        let right = a.contract(&c, &[(1, 0)]).unwrap()
            .try_add(&b.contract(&c, &[(1, 0)]).unwrap().scale(&s)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn square_norm_matches_brute_force(t in tensor(3, 3), sg in signs()) {
        let diag: Vec<Rational> = sg.iter().map(|s| Rational::from_int(*s)).collect();
        let metric = MetricPair::<Rational>::diagonal(&diag).unwrap();
        let mut want = Rational::from_int(0);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let v = t.get(&[i, j, k]).clone();
                    want = want + v.clone() * v * Rational::from_int(sg[i] * sg[j] * sg[k]);
                }
            }
        }
        prop_assert_eq!(metric.square_norm(&t).unwrap(), want);
    }

    #[test]
    fn raise_then_lower_is_identity(t in tensor(3, 3), sg in signs(), axis in 0usize..3) {
        let diag: Vec<Rational> = sg.iter().map(|s| Rational::from_int(*s)).collect();
        let metric = MetricPair::<Rational>::diagonal(&diag).unwrap();
        let up = metric.raise(&t, axis).unwrap();
        prop_assert_eq!(up.variance()[axis], Variance::Contravariant);
        prop_assert_eq!(metric.lower(&up, axis).unwrap(), t);
    }

    #[test]
    fn projectors_form_a_resolution_of_identity(f in form(4)) {
        let (h, _) = standard_metric::<Rational>(1).unwrap();
        let parts: Vec<_> = FormSpace::ALL.iter().map(|s| project(&f, &h, *s)).collect();
        let mut sum = BilinearForm::zero(4);
        for (a, p) in parts.iter().enumerate() {
            sum = BilinearForm::new(sum.matrix() + p.matrix());
            for (b, s) in FormSpace::ALL.iter().enumerate() {
                let pp = project(p, &h, *s);
                if a == b {
                    prop_assert_eq!(&pp, p);
                } else {
                    prop_assert!(pp.is_zero());
                }
            }
        }
        prop_assert_eq!(sum, f);
    }
}
