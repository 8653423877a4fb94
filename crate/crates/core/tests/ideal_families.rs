use abelian_ideals::equations::p0;
use abelian_ideals::exactnum::{int, Rational};
use abelian_ideals::ideals::*;
use abelian_ideals::linalg::{same_poly_span, same_span};
use abelian_ideals::simplicial::cyclic_boundary;

#[test]
fn secant_special_equals_stanley_reisner() {
    for n in 7..=12 {
        let a = secant_ideal_special(n).unwrap();
        let b: Ideal<Rational> = stanley_reisner_ideal(&cyclic_boundary(n, 4).unwrap());
        assert!(ideal_equal(&a, &b).unwrap().equal, "n = {n}");
    }
}

#[test]
fn pfaffian_ideal_at_p0_is_a_scroll() {
    for d in 5..=7 {
        let ideal = abelian_pfaffian_ideal(d, &p0(2 * d).unwrap()).unwrap();
        let m = match_scroll(&ideal, 2 * d).unwrap();
        assert_eq!(m.lambda, int(-1));
        let cert = ideal_equal(&ideal, &scroll_ideal(2 * d, &m.lambda).unwrap()).unwrap();
        assert!(cert.equal, "d = {d}: {cert:?}");
    }
}

#[test]
fn kernel_ideal_at_p0() {
    for d in 5..=8 {
        let n = 2 * d + 1;
        let z: Vec<Rational> = p0(n).unwrap().coords()[1..=d as usize].to_vec();
        let k = abelian_kernel_ideal(d, &z).unwrap();
        assert_eq!(k.t_rank, 4);
        assert_eq!(k.kernel.len(), d as usize - 3);
        assert_eq!(k.dimension, ((d - 3) * (2 * d + 1)) as usize);
        assert!(same_poly_span(k.ideal.generators(), &degenerate_quadrics(n)));
        // Expected kernel: (0,1,-1,0,…,0) and e_4, …, e_{d-1}, unit vectors numbered from 1.
        let len = d as usize + 1;
        let mut expected = vec![vec![int(0); len]];
        expected[0][1] = int(1);
        expected[0][2] = int(-1);
        for j in 3..d as usize - 1 {
            let mut e = vec![int(0); len];
            e[j] = int(1);
            expected.push(e);
        }
        assert!(same_span(&k.kernel, &expected), "d = {d}: {:?}", k.kernel);
    }
}

#[test]
fn scroll_hilbert() {
    for n in 10..=13 {
        for l in [1, 2, -1] {
            let s = scroll_ideal(n, &int(l)).unwrap();
            for k in 1..=4u32 {
                assert_eq!(hilbert_function(&s, k).unwrap(), (n * k * k) as u64);
                assert_eq!(hilbert_function_brute(&s, k).unwrap(), (n * k * k) as u64);
            }
        }
    }
}
