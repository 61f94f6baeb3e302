use isg_core::algebra::{convolve, epsilon_star_square, involution, star_square, AlgebraElement, Scalar};
use isg_core::fixtures;
use isg_core::io::{load_context, Context, FiniteContext};
use isg_core::rep::{lambda_matrix, min_eig, Truncation};
use isg_core::semigroup::InverseSemigroup;
use proptest::prelude::*;

fn closure5() -> FiniteContext {
    match load_context(&fixtures::get("closure5")).unwrap() {
        Context::Finite(c) => c,
        _ => unreachable!(),
    }
}

fn element(ctx: &FiniteContext, coeffs: &[(i64, i64)]) -> AlgebraElement<usize> {
    let s = &ctx.semigroup;
    let terms = s
        .elements()
        .filter(|e| !s.is_zero(e))
        .zip(coeffs)
        .map(|(e, &(re, im))| (e, Scalar::gaussian(re, im)));
    AlgebraElement::from_terms(s, terms).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-4i64..=4, -4i64..=4), 5)
}

proptest! {
    #[test]
    fn involution_reverses_products(a in coeffs(), b in coeffs()) {
        let ctx = closure5();
        let s = &ctx.semigroup;
        let (f, g) = (element(&ctx, &a), element(&ctx, &b));
        let lhs = involution(s, &convolve(s, &f, &g).unwrap());
        let rhs = convolve(s, &involution(s, &g), &involution(s, &f)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn convolution_is_associative(a in coeffs(), b in coeffs(), c in coeffs()) {
        let ctx = closure5();
        let s = &ctx.semigroup;
        let (f, g, h) = (element(&ctx, &a), element(&ctx, &b), element(&ctx, &c));
        let left = convolve(s, &convolve(s, &f, &g).unwrap(), &h).unwrap();
        let right = convolve(s, &f, &convolve(s, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn expectation_of_square_is_fiberwise(a in coeffs()) {
        let ctx = closure5();
        let f = element(&ctx, &a);
        prop_assert!(epsilon_star_square(&ctx.semigroup, &f, &ctx.grading()).is_ok());
    }

    #[test]
    fn left_regular_image_of_square_is_positive(a in coeffs()) {
        let ctx = closure5();
        let s = &ctx.semigroup;
        let sq = star_square(s, &element(&ctx, &a)).unwrap();
        let trunc = Truncation::new(s, s.elements());
        let m = lambda_matrix(s, &sq, &trunc).unwrap().matrix.to_float();
        prop_assert!(min_eig(&m).unwrap() > -1e-9);
    }
}
