//! `prepare` against the dense circuit, and the zero-theta cost identity.

use exact_oracle::{covariance_from_state, dense_circuit, DenseState, LayerAngles};
use fgs_core::{build_ising, BoundaryCondition, CovarianceMatrix};
use vqa_engine::{
    prepare, random_initial_theta, CostFunction, ParameterVector, ProtocolFamily, ProtocolSpec,
};

fn layers_from(theta: &ParameterVector, spec: &ProtocolSpec) -> Vec<LayerAngles> {
    (0..spec.p)
        .map(|layer| {
            let (xx, z) = spec.layer_slices(theta.as_slice(), layer);
            LayerAngles {
                xx: xx.to_vec(),
                z: z.to_vec(),
            }
        })
        .collect()
}

#[test]
fn prepare_matches_dense_circuit() {
    for (family, bc) in [
        (ProtocolFamily::SiteDependent, BoundaryCondition::Periodic),
        (ProtocolFamily::SiteDependent, BoundaryCondition::Open),
        (ProtocolFamily::SiteIndependent, BoundaryCondition::Periodic),
        (ProtocolFamily::SiteIndependent, BoundaryCondition::Open),
    ] {
        for seed in 0..5u64 {
            let l = 4 + (seed as usize % 2);
            let spec = ProtocolSpec::new(family, bc, l, 2).unwrap();
            let theta = random_initial_theta(&spec, 100 + seed, 1.0).unwrap();
            let cov = prepare(&theta, &spec, &CovarianceMatrix::z_polarized(l)).unwrap();
            let psi = dense_circuit(
                &DenseState::all_up(l).unwrap(),
                bc,
                &layers_from(&theta, &spec),
            )
            .unwrap();
            let dense_cov = covariance_from_state(&psi).unwrap();
            let dev = (cov.gamma() - dense_cov.gamma())
                .iter()
                .fold(0.0f64, |m, x| m.max(x.abs()));
            assert!(
                dev < 1e-10,
                "{family} {bc} seed {seed}: deviation {dev:.3e}"
            );
        }
    }
}

#[test]
fn zero_theta_ising_cost_matches_oracle() {
    // cost(0) = (⟨↑…↑|H_I|↑…↑⟩ - E0)/L, cross-checked densely
    let l = 4;
    let bc = BoundaryCondition::Periodic;
    let spec = ProtocolSpec::new(ProtocolFamily::SiteIndependent, bc, l, 1).unwrap();
    let cf = CostFunction::new(
        build_ising(l, bc).unwrap(),
        spec,
        CovarianceMatrix::z_polarized(l),
    )
    .unwrap();
    let cost = cf.cost(&ParameterVector::zeros(&spec)).unwrap();

    let dense = exact_oracle::dense_op::spin_models::ising(l, bc).unwrap();
    let e_up = dense.expectation(&DenseState::all_up(l).unwrap()).re;
    assert!((e_up + l as f64).abs() < 1e-12, "⟨↑…↑|H_I|↑…↑⟩ = -L");
    let expected = (e_up - cf.e0()) / l as f64;
    assert!((cost - expected).abs() < 1e-10);
}
