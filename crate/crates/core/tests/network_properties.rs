use ldrelay::network::{embed_effective, extract_effective};
use ldrelay::oracle::effective_scheme_from_index;
use ldrelay::{
    achievable_rate, compose_gm, compose_gs, cut_bound, transmit, CodingScheme, Gf2Matrix,
    NetworkParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.random::<bool>());
        }
    }
    m
}

fn random_scheme(rng: &mut ChaCha8Rng, q: usize) -> CodingScheme {
    CodingScheme::new(random_matrix(rng, q, q), random_matrix(rng, q, q)).unwrap()
}

/// Full `q x q` scheme number `index`, `G_A` in the low `q^2` bits.
fn full_scheme(q: usize, index: u64) -> CodingScheme {
    let bits = |offset: usize| {
        let mut g = Gf2Matrix::zeros(q, q);
        for i in 0..q * q {
            g.set(i / q, i % q, index >> (offset + i) & 1 == 1);
        }
        g
    };
    CodingScheme::new(bits(0), bits(q * q)).unwrap()
}

#[test]
fn transmit_is_linear_exhaustive_small_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in NetworkParams::grid(3) {
        let q = p.q();
        for _ in 0..3 {
            let s = random_scheme(&mut rng, q);
            let gs = compose_gs(&p, &s).unwrap();
            let gm = compose_gm(&p, &s).unwrap();
            for xs in 0..1u64 << q {
                for xm in 0..1u64 << q {
                    let x_s = Gf2Matrix::column_from_mask(q, xs);
                    let x_m = Gf2Matrix::column_from_mask(q, xm);
                    let expected = gs.mul(&x_s).unwrap().add(&gm.mul(&x_m).unwrap()).unwrap();
                    assert_eq!(transmit(&p, &s, &x_s, &x_m).unwrap(), expected, "{p}");
                }
            }
        }
    }
}

#[test]
fn transmit_is_linear_randomized_larger_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let g: Vec<usize> = (0..5).map(|_| rng.random_range(0..=9)).collect();
        let p = NetworkParams::new(g[0], g[1], g[2], g[3], g[4]);
        let q = p.q();
        let s = random_scheme(&mut rng, q);
        let x_s = random_matrix(&mut rng, q, 1);
        let x_m = random_matrix(&mut rng, q, 1);
        let expected = compose_gs(&p, &s)
            .unwrap()
            .mul(&x_s)
            .unwrap()
            .add(&compose_gm(&p, &s).unwrap().mul(&x_m).unwrap())
            .unwrap();
        assert_eq!(transmit(&p, &s, &x_s, &x_m).unwrap(), expected);
    }
}

#[test]
fn every_scheme_respects_cut_bound_small_grid() {
    for p in NetworkParams::grid(2) {
        let bound = p.q().min(cut_bound(&p));
        for index in 0..1u64 << p.effective_bits() {
            let s = embed_effective(&p, &effective_scheme_from_index(&p, index)).unwrap();
            let rate = achievable_rate(&p, &s).unwrap();
            assert!(rate <= bound, "{p}: scheme {index} reaches {rate} > {bound}");
        }
    }
}

#[test]
fn random_full_schemes_respect_cut_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for p in NetworkParams::grid(3) {
        for _ in 0..4 {
            let s = random_scheme(&mut rng, p.q());
            assert!(achievable_rate(&p, &s).unwrap() <= p.q().min(cut_bound(&p)));
        }
    }
}

#[test]
fn effective_blocks_determine_rate_exhaustive_q_le_2() {
    for p in NetworkParams::grid(2) {
        let q = p.q();
        for index in 0..1u64 << (2 * q * q) {
            let s = full_scheme(q, index);
            let reduced = embed_effective(&p, &extract_effective(&p, &s).unwrap()).unwrap();
            assert_eq!(
                achievable_rate(&p, &s).unwrap(),
                achievable_rate(&p, &reduced).unwrap(),
                "{p}: scheme {index}"
            );
            // The transfer matrices themselves agree, not only the rate.
            assert_eq!(compose_gs(&p, &s).unwrap(), compose_gs(&p, &reduced).unwrap());
            assert_eq!(compose_gm(&p, &s).unwrap(), compose_gm(&p, &reduced).unwrap());
        }
    }
}

#[test]
fn effective_blocks_determine_rate_randomized_q_3_4() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for p in NetworkParams::grid(4).filter(|p| p.q() >= 3) {
        for _ in 0..3 {
            let s = random_scheme(&mut rng, p.q());
            let reduced = embed_effective(&p, &extract_effective(&p, &s).unwrap()).unwrap();
            assert_eq!(
                achievable_rate(&p, &s).unwrap(),
                achievable_rate(&p, &reduced).unwrap(),
                "{p}"
            );
        }
    }
}

#[test]
fn embed_then_extract_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for p in NetworkParams::grid(3) {
        let e = ldrelay::EffectiveScheme {
            block_a: random_matrix(&mut rng, p.n3(), p.effective_width_a()),
            block_b: random_matrix(&mut rng, p.n4(), p.effective_width_b()),
        };
        let s = embed_effective(&p, &e).unwrap();
        assert_eq!(extract_effective(&p, &s).unwrap(), e);
    }
}

#[test]
fn disturber_silent_without_gain() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for p in NetworkParams::grid(4).filter(|p| p.m() == 0) {
        let s = random_scheme(&mut rng, p.q());
        assert!(compose_gm(&p, &s).unwrap().is_zero(), "{p}");
    }
}

#[test]
fn full_gain_identity_relay_passes_source_through() {
    for q in 0..6 {
        let p = NetworkParams::new(q, q, q, q, 0);
        let s = CodingScheme::new(Gf2Matrix::identity(q), Gf2Matrix::zeros(q, q)).unwrap();
        assert_eq!(compose_gs(&p, &s).unwrap(), Gf2Matrix::identity(q));
    }
}
