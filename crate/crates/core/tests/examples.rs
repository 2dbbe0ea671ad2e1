//! Every example under `examples/` runs to completion.

#[allow(dead_code)]
#[path = "../examples/closed_forms.rs"]
mod closed_forms;

#[test]
fn closed_forms_runs() {
    closed_forms::run_example().expect("example should run");
}

#[allow(dead_code)]
#[path = "../examples/singlet_sampling.rs"]
mod singlet_sampling;

#[test]
fn singlet_sampling_runs() {
    singlet_sampling::run_example().expect("example should run");
}

#[allow(dead_code)]
#[path = "../examples/bell_violation.rs"]
mod bell_violation;

#[test]
fn bell_violation_runs() {
    bell_violation::run_example().expect("example should run");
}

#[allow(dead_code)]
#[path = "../examples/striped_tube.rs"]
mod striped_tube;

#[test]
fn striped_tube_runs() {
    striped_tube::run_example().expect("example should run");
}

#[allow(dead_code)]
#[path = "../examples/triangle_vs_cosine.rs"]
mod triangle_vs_cosine;

#[test]
fn triangle_vs_cosine_runs() {
    triangle_vs_cosine::run_example().expect("example should run");
}

#[allow(dead_code)]
#[path = "../examples/any_all_ledger.rs"]
mod any_all_ledger;

#[test]
fn any_all_ledger_runs() {
    any_all_ledger::run_example().expect("example should run");
}

#[allow(dead_code)]
#[path = "../examples/oval_ball.rs"]
mod oval_ball;

#[test]
fn oval_ball_runs() {
    oval_ball::run_example().expect("example should run");
}

#[allow(dead_code)]
#[path = "../examples/custom_model.rs"]
mod custom_model;

#[test]
fn custom_model_runs() {
    custom_model::run_example().expect("example should run");
}
