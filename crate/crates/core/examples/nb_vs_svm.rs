//! Trains per-course naive Bayes and a linear SVM on the adversarial
//! construction and reports the false-positive rate of each on course threads.

use forumlens::classify::{evaluate, train_nb, train_svm, LabeledDoc, NbConfig, NbMode, Smoothing, SvmConfig, Vocabulary};
use forumlens::genmodel::{adversarial_spec, separating_plane, AdversarialParams, ThreadSampler};
use forumlens::rng::{seeded, trial_seed};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trials: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let adv = adversarial_spec(10_000, AdversarialParams { seed: 1, ..Default::default() })?;
    let sampler = ThreadSampler::new(&adv.spec);
    let vocab = Vocabulary::from_words(adv.spec.background.vocab());
    let plane = separating_plane(&adv.spec);
    println!("b1 = {}, p1 = {:.3}, plane threshold {:.2}", adv.b1(), adv.p1(), plane.tau);
    println!("trial nb_unit_fpr nb_laplace_fpr svm_fpr");
    for t in 0..trials {
        let mut rng = seeded(trial_seed(2, t));
        let train: Vec<LabeledDoc> = (0..adv.b1())
            .map(|_| sampler.sample_thread(0, &mut rng).map(|s| LabeledDoc::from_sampled("course-1", s)))
            .collect::<Result<_, _>>()?;
        let negatives: Vec<LabeledDoc> = (0..500)
            .map(|_| sampler.sample_labeled(0, false, &mut rng).map(|s| LabeledDoc::from_sampled("course-1", s)))
            .collect::<Result<_, _>>()?;
        let nb = |smoothing| {
            train_nb(
                &train,
                &NbConfig {
                    mode: NbMode::PerCourse,
                    smoothing,
                    vocabulary: Some(vocab.clone()),
                },
            )
        };
        let (Ok(unit), Ok(laplace)) = (nb(Smoothing::UnitInit), nb(Smoothing::Laplace)) else {
            println!("{t:5} training set lacks a class");
            continue;
        };
        let svm = train_svm(&train, vocab.clone(), &SvmConfig { seed: t as u64, ..Default::default() })?;
        println!(
            "{t:5} {:>11.3} {:>14.3} {:>7.3}",
            evaluate(&unit, &negatives, 0.0)?.fpr,
            evaluate(&laplace, &negatives, 0.0)?.fpr,
            evaluate(&svm, &negatives, 0.0)?.fpr
        );
    }
    Ok(())
}
