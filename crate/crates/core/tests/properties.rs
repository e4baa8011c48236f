use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bellqec::experiment::{weight_profile, PatternModel, Scenario, WeightProfile};
use bellqec::pauli::{equivalent_mod_logical_x, measure_syndrome_circuit, syndrome, PauliString, Phase};
use bellqec::quantum::{
    apply_channel, apply_circuit, mutual_information, von_neumann_entropy, DensityMatrix, Gate, StateVector,
};
use bellqec::repetition::{
    closed_form_bipartite_fidelity, closed_form_single_fidelity, make_channel, BipartiteKind, ChannelKind, ChannelModel,
};
use bellqec::stabilizer::{bell_code_generators, distinct_bit_flip_syndromes, rotation_correct};
use bellqec::ExecPolicy;

fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
    let lim = 1u64 << n;
    (0..lim, 0..lim, 0..4i64)
        .prop_map(move |(x, z, k)| PauliString::from_masks(n, x, z, Phase::from_exponent(k)).unwrap())
}

fn pauli_triple() -> impl Strategy<Value = (PauliString, PauliString, PauliString)> {
    (1usize..=6).prop_flat_map(|n| (pauli(n), pauli(n), pauli(n)))
}

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_map(move |v| {
        let mut amps: Vec<C64> = v.into_iter().map(|(re, im)| C64::new(re, im)).collect();
        amps[0] += C64::new(0.05, 0.0);
        StateVector::normalized(n, amps).unwrap()
    })
}

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n;
    prop_oneof![
        q.clone().prop_map(Gate::H),
        q.clone().prop_map(Gate::X),
        q.clone().prop_map(Gate::Z),
        (q.clone(), 1..n).prop_map(move |(a, d)| Gate::cnot(a, (a + d) % n)),
        (q, 0.0..std::f64::consts::TAU, 0.0..std::f64::consts::TAU, 0.0..std::f64::consts::TAU).prop_map(
            |(t, theta, phi, lambda)| {
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                let matrix = vec![
                    C64::new(c, 0.0),
                    -C64::from_polar(s, lambda),
                    C64::from_polar(s, phi),
                    C64::from_polar(c, phi + lambda),
                ];
                Gate::Unitary { targets: vec![t], matrix }
            }
        ),
    ]
}

fn circuit(n: usize) -> impl Strategy<Value = Vec<Gate>> {
    proptest::collection::vec(gate(n), 0..10)
}

fn dense(m: &[C64], dim: usize) -> DMatrix<C64> {
    DMatrix::from_row_slice(dim, dim, m)
}

fn mixed(n: usize) -> impl Strategy<Value = DensityMatrix> {
    (proptest::collection::vec(state(n), 1..4), proptest::collection::vec(0.05f64..1.0, 3)).prop_map(
        move |(states, ws)| {
            let total: f64 = ws.iter().take(states.len()).sum();
            let parts: Vec<(f64, StateVector)> = states.into_iter().zip(ws).map(|(s, w)| (w / total, s)).collect();
            DensityMatrix::mixture(&parts).unwrap()
        },
    )
}

fn max_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pauli_product_is_associative((a, b, c) in pauli_triple()) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pauli_product_matches_matrices((a, b, _) in pauli_triple()) {
        let dim = 1 << a.num_qubits();
        let ab = dense(&a.multiply(&b).unwrap().matrix(), dim);
        prop_assert!(max_diff(&ab, &(dense(&a.matrix(), dim) * dense(&b.matrix(), dim))) < 1e-12);
    }

    #[test]
    fn symplectic_commutation_matches_matrices((a, b, _) in pauli_triple()) {
        let dim = 1 << a.num_qubits();
        let (ma, mb) = (dense(&a.matrix(), dim), dense(&b.matrix(), dim));
        let sign = f64::from(a.commutation(&b).unwrap().value());
        prop_assert!(max_diff(&(&ma * &mb), &((&mb * &ma) * C64::new(sign, 0.0))) < 1e-12);
    }

    #[test]
    fn syndrome_ignores_stabilizer_factors(k in 1usize..=2, seed in any::<u64>(), combo in any::<u64>()) {
        let gens = bell_code_generators(k).unwrap();
        let n = gens.num_qubits();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lim = 1u64 << n;
        let e = PauliString::from_masks(n, rand::Rng::random_range(&mut rng, 0..lim), rand::Rng::random_range(&mut rng, 0..lim), Phase::from_exponent(0)).unwrap();
        let g = gens.product(combo & ((1 << gens.len()) - 1));
        prop_assert_eq!(syndrome(&e.multiply(&g).unwrap(), &gens).unwrap(), syndrome(&e, &gens).unwrap());
    }

    #[test]
    fn gates_preserve_norm_and_trace(psi in state(3), rho in mixed(3), gates in circuit(3)) {
        let out = apply_circuit(&psi, &gates).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        let evolved = apply_circuit(&rho, &gates).unwrap();
        prop_assert!((evolved.trace() - 1.0).abs() < 1e-12);
        let pure = apply_circuit(&psi.to_density().unwrap(), &gates).unwrap();
        prop_assert!(pure.max_abs_diff(&out.to_density().unwrap()) < 1e-12);
    }

    #[test]
    fn channel_matches_explicit_kraus_sum(
        rho in mixed(3),
        p in 0.0f64..=1.0,
        phase in any::<bool>(),
        targets in Just(vec![2usize, 0]),
    ) {
        let kind = if phase { ChannelKind::PhaseFlip } else { ChannelKind::BitFlip };
        let channel = make_channel(&ChannelModel::new(kind, p, 2).unwrap()).unwrap();
        let got = apply_channel(&rho, &channel, &targets).unwrap();
        let r = dense(rho.entries(), 8);
        let mut want = DMatrix::<C64>::zeros(8, 8);
        for mask in 0u64..4 {
            let flips = mask.count_ones() as i32;
            let w = p.powi(flips) * (1.0 - p).powi(2 - flips);
            let full = targets.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &t)| 1u64 << t).sum();
            let op = if phase { PauliString::phase_flip(3, full) } else { PauliString::bit_flip(3, full) };
            let m = dense(&op.matrix(), 8);
            want += (&m * &r * m.adjoint()) * C64::new(w, 0.0);
        }
        prop_assert!(max_diff(&dense(got.entries(), 8), &want) < 1e-12);
    }

    #[test]
    fn entropy_is_basis_invariant(rho in mixed(3), gates in circuit(3)) {
        let s0 = von_neumann_entropy(&rho);
        let s1 = von_neumann_entropy(&apply_circuit(&rho, &gates).unwrap());
        prop_assert!((s0 - s1).abs() < 1e-9, "{} vs {}", s0, s1);
    }

    #[test]
    fn mutual_information_is_symmetric(rho in mixed(3)) {
        let ab = mutual_information(&rho, &[0], &[1, 2]).unwrap();
        let ba = mutual_information(&rho, &[1, 2], &[0]).unwrap();
        prop_assert!((ab.mutual_information - ba.mutual_information).abs() < 1e-10);
        prop_assert!(ab.mutual_information > -1e-10);
    }

    #[test]
    fn rotation_correction_undoes_bit_flips(k in 2usize..=3, seed in any::<u64>()) {
        let gens = bell_code_generators(k).unwrap();
        let n = gens.num_qubits();
        let all = (1u64 << n) - 1;
        let mask = seed & all;
        let e = PauliString::bit_flip(n, mask);
        let s = syndrome(&e, &gens).unwrap();
        let c = rotation_correct(&s, k).unwrap();
        let residual = c.x_mask() ^ mask;
        prop_assert!(residual == 0 || residual == all, "{} leaves {:b}", c, residual);
        prop_assert!(c.is_bit_flip());
        prop_assert_eq!(syndrome(&c, &gens).unwrap(), s);
        prop_assert!(c.weight() as usize <= n / 2);
    }

    #[test]
    fn measurement_is_idempotent(psi in state(3), x in 0u64..8, z in 0u64..8, seed in any::<u64>()) {
        let stabilizer = PauliString::from_masks(3, x, z, Phase::from_exponent(0)).unwrap();
        prop_assume!(stabilizer.is_hermitian());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s1, post) = measure_syndrome_circuit(&psi, &stabilizer, &mut rng).unwrap();
        let (s2, again) = measure_syndrome_circuit(&post, &stabilizer, &mut rng).unwrap();
        prop_assert_eq!(s1, s2);
        prop_assert!((again.overlap(&post).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn shared_syndrome_iff_equivalent(k in 1usize..=2, a in any::<u64>(), b in any::<u64>(), relation in 0u8..3) {
        let gens = bell_code_generators(k).unwrap();
        let n = gens.num_qubits();
        let all = (1u64 << n) - 1;
        let m1 = a & all;
        let m2 = match relation {
            0 => m1,
            1 => m1 ^ all,
            _ => b & all,
        };
        let (e1, e2) = (PauliString::bit_flip(n, m1), PauliString::bit_flip(n, m2));
        let same = syndrome(&e1, &gens).unwrap() == syndrome(&e2, &gens).unwrap();
        prop_assert_eq!(same, equivalent_mod_logical_x(&e1, &e2, n).unwrap());
    }

    #[test]
    fn closed_forms_match_enumeration(k in 1usize..=2, p in 0.0f64..=1.0) {
        let (single, bell, product) = &profiles()[k - 1];
        prop_assert!((closed_form_single_fidelity(k, p).unwrap().fidelity - single.fidelity(p)).abs() < 1e-12);
        prop_assert!((closed_form_bipartite_fidelity(k, p, BipartiteKind::Bell).unwrap().fidelity - bell.fidelity(p)).abs() < 1e-12);
        prop_assert!((closed_form_bipartite_fidelity(k, p, BipartiteKind::Product).unwrap().fidelity - product.fidelity(p)).abs() < 1e-12);
    }
}

fn profiles() -> &'static [(WeightProfile, WeightProfile, WeightProfile); 2] {
    static CELL: OnceLock<[(WeightProfile, WeightProfile, WeightProfile); 2]> = OnceLock::new();
    CELL.get_or_init(|| {
        let get = |s, k| {
            weight_profile(&PatternModel::new(s, k, ChannelKind::BitFlip).unwrap(), ExecPolicy::Parallel).unwrap()
        };
        [1, 2].map(|k| {
            (get(Scenario::QrcSingle, k), get(Scenario::QrcBipartiteBell, k), get(Scenario::QrcBipartiteProduct, k))
        })
    })
}

#[test]
fn bell_code_syndrome_count() {
    for k in 1..=2 {
        let gens = bell_code_generators(k).unwrap();
        let n = gens.num_qubits();
        assert_eq!(distinct_bit_flip_syndromes(&gens).unwrap(), 1 << (n - 1));
    }
}
