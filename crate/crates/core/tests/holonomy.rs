use qhomfly::holonomy::{
    apply_operator, fit_and_validate, guess_recurrence, kernel_dimension, validate, GuessOptions,
    RecurrenceOperator, SequenceWindow,
};
use qhomfly::qcomb::unknot_colored;
use qhomfly::skein::natural_start;
use qhomfly::{eval_reduced, LaurentPoly, Normalize, QScalar, TwoBridgeLink};

fn engine_window(cf: &str, max_color: u32, normalize: Normalize) -> SequenceWindow {
    let link = TwoBridgeLink::new(cf.parse().unwrap()).unwrap();
    let start = natural_start(&link);
    let values = (0..=max_color).map(|j| eval_reduced(&link, j, start, normalize).unwrap()).collect();
    SequenceWindow::new(0, values).unwrap()
}

#[test]
fn unknot_sequence_gives_l_minus_one() {
    let f = engine_window("1", 12, Normalize::Canonical);
    let (op, report) = fit_and_validate(&f, 4, 8, 3, GuessOptions::default()).unwrap().unwrap();
    assert_eq!(op.to_string(), "L - 1");
    assert!(report.passed);
}

#[test]
fn colored_unknot_operator_survives_scaling() {
    let f = SequenceWindow::new(0, (0..16).map(unknot_colored).collect()).unwrap();
    let (op, report) = fit_and_validate(&f, 2, 3, 4, GuessOptions::default()).unwrap().unwrap();
    assert!(report.passed);
    let shifted: Vec<QScalar> = f.values().iter().skip(1).cloned().collect();
    let wrong = SequenceWindow::new(0, shifted).unwrap();
    let baseline_wrong = validate(&op, &wrong, 4);
    assert!(!baseline_wrong.passed);
    let scalings = [
        LaurentPoly::mono(-7, 2, -3, 0),
        LaurentPoly::mono(1, 1, 1, 0) - LaurentPoly::mono(1, -1, 2, 0),
        LaurentPoly::mono(3, 0, 5, 0) + LaurentPoly::mono(2, -2, 0, 0) + LaurentPoly::one(),
    ];
    for c in &scalings {
        let scaled = op.scaled(c);
        assert_eq!(validate(&scaled, &f, 4), report);
        assert_eq!(validate(&scaled, &wrong, 4), baseline_wrong);
    }
}

#[test]
fn operator_json_is_stable() {
    let f = SequenceWindow::new(0, (0..12).map(unknot_colored).collect()).unwrap();
    let op = guess_recurrence(&f, 2, 3, GuessOptions::default()).unwrap().unwrap();
    let back = RecurrenceOperator::from_json(&op.to_json()).unwrap();
    assert_eq!(back, op);
    for n in 0..10 {
        assert!(apply_operator(&back, &f, n).unwrap().is_zero());
    }
}

#[test]
fn trefoil_kernels_embed_into_larger_ansatz() {
    // The raw trefoil sequence has a genuine order-2 recurrence of M-degree 12.
    let f = engine_window("3", 41, Normalize::Raw);
    assert_eq!(kernel_dimension(&f, 2, 11, false), 0);
    assert_eq!(kernel_dimension(&f, 1, 12, false), 0);
    let base = kernel_dimension(&f, 2, 12, false);
    assert!(base > 0);
    assert!(kernel_dimension(&f, 3, 12, false) >= base);
    assert!(kernel_dimension(&f, 2, 13, false) >= base);
}
