//! Boolean Simon: the phase-register reading against the literal readings of
//! "measure the first register" on the final state.

use qcat::models::{rel_h, rel_rect, AbelianGroup};
use qcat::oracle::{rect_power_basis_vector, BitFn};
use qcat::simon::{simon_rel_trace, simon_run_fhilb, simon_run_rel, Diagnosis, Mode};
use qcat::tensor::tensor_id;
use qcat::{CayleyClass, Mor};

fn h_power(m: u32) -> Mor<bool> {
    let h = rel_h(&rel_rect(&AbelianGroup::cyclic(2).unwrap()).unwrap()).unwrap();
    (0..m).fold(Mor::scalar(true), |acc, _| acc.tensor(&h).unwrap())
}

/// Labels `z` whose first-register projection of the state is nonempty.
fn literal_support(f: &BitFn, first: impl Fn(u64) -> Mor<bool>) -> Vec<u64> {
    let t = simon_rel_trace(f).unwrap();
    let second = 1usize << (2 * f.n());
    (0..1u64 << f.m())
        .filter(|&z| {
            let probe = tensor_id(&first(z).dagger(), second).unwrap();
            !probe.compose(&t.state).unwrap().is_zero_mor()
        })
        .collect()
}

#[test]
fn literal_readings_do_not_give_the_orthogonal_complement() {
    let f = BitFn::new(2, 2, vec![0, 1, 0, 1]).unwrap();
    // period 10, so the expected support is {00, 01}
    assert_eq!(simon_run_rel(&f).unwrap().support, vec![0, 1]);
    let in_basis = literal_support(&f, |z| rect_power_basis_vector(2, z).unwrap());
    assert_eq!(in_basis, vec![0]);
    let in_image = literal_support(&f, |z| {
        h_power(2).compose(&rect_power_basis_vector(2, z).unwrap()).unwrap()
    });
    assert_eq!(in_image, vec![0, 1, 2, 3]);
}

#[test]
fn phases_are_singletons_or_the_whole_group() {
    let f = BitFn::new(2, 1, vec![1, 0, 1, 0]).unwrap();
    let t = simon_rel_trace(&f).unwrap();
    for (z, row) in t.phases.iter().enumerate() {
        for class in row.iter().flatten() {
            let expect = if z & 0b10 == 0 {
                CayleyClass::Unitary
            } else {
                CayleyClass::PureProjector
            };
            assert_eq!(*class, expect, "z = {z}");
        }
    }
}

#[test]
fn sigma_is_a_measurement() {
    let f = BitFn::new(1, 1, vec![1, 1]).unwrap();
    let t = simon_rel_trace(&f).unwrap();
    assert!(t.sigma.is_measurement(0.0));
    let r = t.sigma.meas_lemma_checks(0.0).unwrap();
    assert!(r.failures().is_empty() && r.normal.holds);
}

#[test]
fn both_models_agree_on_non_periodic_functions() {
    for table in [vec![0, 1, 2, 3], vec![0, 0, 0, 1], vec![2, 2, 2, 2], vec![0, 0, 1, 1]] {
        let f = BitFn::new(2, 2, table).unwrap();
        let a = simon_run_fhilb(&f, Mode::Exact).unwrap();
        let b = simon_run_rel(&f).unwrap();
        assert_eq!(a.support, b.support);
        assert_eq!(a.diagnosis, b.diagnosis);
    }
    let f = BitFn::new(2, 2, vec![2, 2, 2, 2]).unwrap();
    assert_eq!(simon_run_rel(&f).unwrap().diagnosis, Diagnosis::Ambiguous);
}
