//! Serializable predictions and measurements, and their comparison.

use serde::{Deserialize, Serialize};

use crate::distance::{Certainty, Distance, DistanceResult, SearchConfig, SearchStats, Witness};
use crate::product::{HypergraphProductPrediction, PredictedParams, TilePrediction};
use crate::stabilizer::StabilizerCode;

/// Everything a construction predicts about its code. Absent fields have no
/// closed form for that family.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Distance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_lower: Option<Distance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_upper: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_gx: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_gz: Option<usize>,
}

impl From<PredictedParams> for Prediction {
    fn from(p: PredictedParams) -> Self {
        Prediction {
            n: p.n,
            k: p.k,
            d: Some(p.d),
            w: p.w,
            ..Default::default()
        }
    }
}

impl From<&HypergraphProductPrediction> for Prediction {
    fn from(p: &HypergraphProductPrediction) -> Self {
        Prediction {
            n: p.n,
            k: p.k,
            d: None,
            d_lower: Some(p.d_lower),
            d_upper: p.d_upper(),
            w: Some(p.w),
            rank_gx: Some(p.rank_gx),
            rank_gz: Some(p.rank_gz),
        }
    }
}

impl From<&TilePrediction> for Prediction {
    fn from(p: &TilePrediction) -> Self {
        Prediction {
            n: p.n,
            k: p.k,
            d: None,
            d_lower: Some(p.d_lower),
            d_upper: p.d_upper(),
            w: Some(p.w),
            rank_gx: Some(p.rank_gx),
            rank_gz: Some(p.rank_gz),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessReport {
    /// Pauli operator as sorted 0-based qubit indices of its X and Z parts.
    Logical { x: Vec<usize>, z: Vec<usize> },
    /// Classical codeword support.
    Codeword { support: Vec<usize> },
}

impl From<&Witness> for WitnessReport {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Logical(op) => WitnessReport::Logical {
                x: op.x_part().ones().collect(),
                z: op.z_part().ones().collect(),
            },
            Witness::Codeword(v) => WitnessReport::Codeword {
                support: v.ones().collect(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub value: Distance,
    pub certainty: Certainty,
    pub lower_bound: Distance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    pub stats: SearchStats,
}

impl From<&DistanceResult> for DistanceReport {
    fn from(d: &DistanceResult) -> Self {
        DistanceReport {
            value: d.value,
            certainty: d.certainty,
            lower_bound: d.lower_bound,
            witness: d.witness.as_ref().map(WitnessReport::from),
            stats: d.stats.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasuredParams {
    pub n: usize,
    pub k: usize,
    pub w: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_gx: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_gz: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<DistanceReport>,
}

impl MeasuredParams {
    /// `n`, `k` and `w`, plus the distance when `cfg` is given.
    pub fn measure(code: &impl StabilizerCode, cfg: Option<&SearchConfig>) -> Self {
        let (rank_gx, rank_gz) = code.sector_ranks().unzip();
        MeasuredParams {
            n: code.n(),
            k: code.k(),
            w: code.generator_weight(),
            rank_gx,
            rank_gz,
            d: cfg.map(|cfg| DistanceReport::from(&code.distance(cfg))),
        }
    }
}

/// Contradictions between a prediction and a measurement. A search that
/// only reached an upper bound above the prediction is not a contradiction.
pub fn compare(p: &Prediction, m: &MeasuredParams) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |name: &str, predicted: Option<usize>, measured: Option<usize>| {
        if let (Some(a), Some(b)) = (predicted, measured) {
            if a != b {
                out.push(format!("{name}: predicted {a}, measured {b}"));
            }
        }
    };
    check("n", Some(p.n), Some(m.n));
    check("k", Some(p.k), Some(m.k));
    check("w", p.w, Some(m.w));
    check("rank G_X", p.rank_gx, m.rank_gx);
    check("rank G_Z", p.rank_gz, m.rank_gz);
    let Some(d) = &m.d else { return out };
    let exact = d.certainty == Certainty::Exact;
    if let Some(pd) = p.d {
        if (exact && d.value != pd) || d.value < pd || d.lower_bound > pd {
            out.push(format!(
                "d: predicted {pd}, measured {} ({:?}, lower bound {})",
                d.value, d.certainty, d.lower_bound
            ));
        }
    }
    if let Some(lo) = p.d_lower {
        if d.value < lo {
            out.push(format!(
                "d: measured {} below the lower bound {lo}",
                d.value
            ));
        }
    }
    if let Some(hi) = p.d_upper {
        let hi = Distance::Finite(hi);
        if (exact && d.value > hi) || d.lower_bound > hi {
            out.push(format!(
                "d: measured {} above the upper bound {hi}",
                d.lower_bound
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn measured(value: usize, certainty: Certainty, lower: usize) -> MeasuredParams {
        MeasuredParams {
            n: 10,
            k: 2,
            w: 4,
            rank_gx: None,
            rank_gz: None,
            d: Some(DistanceReport {
                value: Distance::Finite(value),
                certainty,
                lower_bound: Distance::Finite(lower),
                witness: None,
                stats: SearchStats::default(),
            }),
        }
    }

    fn predicted(d: usize) -> Prediction {
        Prediction {
            n: 10,
            k: 2,
            d: Some(Distance::Finite(d)),
            ..Default::default()
        }
    }

    #[test]
    fn exact_match_and_mismatch() {
        assert!(compare(&predicted(3), &measured(3, Certainty::Exact, 3)).is_empty());
        assert_eq!(
            compare(&predicted(3), &measured(4, Certainty::Exact, 4)).len(),
            1
        );
    }

    #[test]
    fn upper_bounds_only_contradict_from_below() {
        assert!(compare(&predicted(14), &measured(14, Certainty::UpperBound, 5)).is_empty());
        assert!(compare(&predicted(14), &measured(16, Certainty::UpperBound, 5)).is_empty());
        assert_eq!(
            compare(&predicted(14), &measured(12, Certainty::UpperBound, 5)).len(),
            1
        );
    }

    #[test]
    fn bounds() {
        let p = Prediction {
            n: 10,
            k: 2,
            d_lower: Some(Distance::Finite(3)),
            d_upper: Some(5),
            ..Default::default()
        };
        assert!(compare(&p, &measured(4, Certainty::Exact, 4)).is_empty());
        assert_eq!(compare(&p, &measured(2, Certainty::Exact, 2)).len(), 1);
        assert_eq!(compare(&p, &measured(6, Certainty::Exact, 6)).len(), 1);
        assert!(compare(&p, &measured(7, Certainty::UpperBound, 4)).is_empty());
    }

    #[test]
    fn shape_mismatch() {
        let mut p = predicted(3);
        p.k = 1;
        p.w = Some(6);
        assert_eq!(compare(&p, &measured(3, Certainty::Exact, 3)).len(), 2);
    }
}
