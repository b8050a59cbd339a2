use ldrelay::{achievable_rate, compose_gm, compose_gs, transmit, Codebook, CodingScheme, Gf2Matrix, NetworkParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_scheme(rng: &mut ChaCha8Rng, q: usize) -> CodingScheme {
    let mut g = || {
        let mut m = Gf2Matrix::zeros(q, q);
        for r in 0..q {
            for c in 0..q {
                m.set(r, c, rng.random::<bool>());
            }
        }
        m
    };
    let (a, b) = (g(), g());
    CodingScheme::new(a, b).unwrap()
}

fn codebook(p: &NetworkParams, s: &CodingScheme) -> Codebook {
    Codebook::build(&compose_gs(p, s).unwrap(), &compose_gm(p, s).unwrap()).unwrap()
}

#[test]
fn rate_matches_formula_for_random_schemes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for p in NetworkParams::grid(4) {
        for _ in 0..2 {
            let s = random_scheme(&mut rng, p.q());
            let cb = codebook(&p, &s);
            assert_eq!(cb.rate(), achievable_rate(&p, &s).unwrap(), "{p}");

            let q = p.q();
            assert_eq!(cb.encoder().shape(), (q, cb.rate()));
            assert_eq!(cb.encoder().rank(), cb.rate());
            let basis = cb.decode_basis();
            let s_part = basis.submatrix(0..q, 0..cb.rate());
            let m_part = basis.submatrix(0..q, cb.rate()..basis.cols());
            assert_eq!(s_part.rank_intersection(&m_part).unwrap(), 0);
            assert_eq!(m_part.rank(), compose_gm(&p, &s).unwrap().rank());
            assert_eq!(cb.msg_map().inverse().unwrap().map(|m| m.rows()), Some(cb.rate()));
        }
    }
}

#[test]
fn random_schemes_decode_under_every_disturbance() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for p in NetworkParams::grid(3) {
        let q = p.q();
        let s = random_scheme(&mut rng, q);
        let cb = codebook(&p, &s);
        for msg_mask in 0..1u64 << cb.rate() {
            let msg = Gf2Matrix::column_from_mask(cb.rate(), msg_mask);
            let x_s = cb.encode(&msg).unwrap();
            for xm in 0..1u64 << q {
                let y = transmit(&p, &s, &x_s, &Gf2Matrix::column_from_mask(q, xm)).unwrap();
                assert_eq!(cb.decode(&y).unwrap(), msg, "{p}");
            }
        }
    }
}

#[test]
fn encoding_is_injective() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for p in NetworkParams::grid(4).filter(|p| p.q() == 4).take(200) {
        let cb = codebook(&p, &random_scheme(&mut rng, 4));
        let mut seen = std::collections::HashSet::new();
        for mask in 0..1u64 << cb.rate() {
            let x = cb.encode(&Gf2Matrix::column_from_mask(cb.rate(), mask)).unwrap();
            assert!(seen.insert(x.column_mask()));
        }
    }
}
