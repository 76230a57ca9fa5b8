use serde::Serialize;

use super::{ClassifyError, LabeledDoc, Scorer};

/// Confusion counts with small-talk as the positive class. Rates are NaN when
/// their denominator is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalReport {
    pub theta: f64,
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tpr: f64,
    pub fpr: f64,
}

impl EvalReport {
    fn from_counts(theta: f64, tp: usize, fp: usize, tn: usize, fn_: usize) -> EvalReport {
        let rate = |a: usize, b: usize| if a + b == 0 { f64::NAN } else { a as f64 / (a + b) as f64 };
        EvalReport {
            theta,
            tp,
            fp,
            tn,
            fn_,
            tpr: rate(tp, fn_),
            fpr: rate(fp, tn),
        }
    }

    pub fn error_rate(&self) -> f64 {
        (self.fp + self.fn_) as f64 / (self.tp + self.fp + self.tn + self.fn_) as f64
    }
}

pub fn evaluate<S: Scorer + ?Sized>(scorer: &S, docs: &[LabeledDoc], theta: f64) -> Result<EvalReport, ClassifyError> {
    if docs.is_empty() {
        return Err(ClassifyError::EmptyTestSet);
    }
    let (mut tp, mut fp, mut tn, mut fn_) = (0, 0, 0, 0);
    for d in docs {
        match (scorer.is_smalltalk(d, theta), d.is_smalltalk) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, false) => tn += 1,
            (false, true) => fn_ += 1,
        }
    }
    Ok(EvalReport::from_counts(theta, tp, fp, tn, fn_))
}

/// One report per distinct score used as threshold, bracketed by `+inf`
/// (nothing flagged) and `-inf`, ordered by increasing FPR.
pub fn roc_sweep<S: Scorer + ?Sized>(scorer: &S, docs: &[LabeledDoc]) -> Result<Vec<EvalReport>, ClassifyError> {
    if docs.is_empty() {
        return Err(ClassifyError::EmptyTestSet);
    }
    let mut scored: Vec<(f64, bool)> = docs.iter().map(|d| (scorer.score(d), d.is_smalltalk)).collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    let pos = scored.iter().filter(|s| s.1).count();
    let neg = scored.len() - pos;
    let mut out = vec![EvalReport::from_counts(f64::INFINITY, 0, 0, neg, pos)];
    let (mut tp, mut fp) = (0, 0);
    let mut i = 0;
    while i < scored.len() {
        let theta = scored[i].0;
        // everything scoring at least theta flips once the threshold drops below it
        while i < scored.len() && scored[i].0 == theta {
            if scored[i].1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        let next = scored.get(i).map_or(f64::NEG_INFINITY, |s| s.0);
        if theta == f64::NEG_INFINITY {
            break;
        }
        out.push(EvalReport::from_counts(next, tp, fp, neg - fp, pos - tp));
    }
    Ok(out)
}
