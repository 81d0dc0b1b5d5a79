mod common;

use common::props;

#[test]
fn commutator_formula_holds() {
    props::commutator_formula_holds();
}

#[test]
fn translation_is_a_derivative_of_modes() {
    props::translation_is_a_derivative_of_modes();
}

#[test]
fn modes_respect_the_grading() {
    props::modes_respect_the_grading();
}

#[test]
fn zhu_algebra_axioms_modulo_o_n() {
    props::zhu_algebra_axioms_modulo_o_n();
}

#[test]
fn o_n_is_a_two_sided_ideal() {
    props::o_n_is_a_two_sided_ideal();
}

#[test]
fn omega_properties_on_random_modules() {
    props::omega_properties_on_random_modules();
}

#[test]
fn induced_modules_respect_degree_bounds() {
    props::induced_modules_respect_degree_bounds();
}
