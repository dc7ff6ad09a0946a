//! The nine benchmark EA designs: two fixed-portfolio baselines and seven
//! feedback-adaptive variants, each pairing one measurement with one
//! interpretation.

use opadapt_core::adapt::Portfolio;
use opadapt_core::credit::MeasurementKind;
use opadapt_core::interpret::Interpretation;
use opadapt_core::operators::OPERATOR_COUNT;

/// A named EA configuration.
#[derive(Debug, Clone, Copy)]
pub struct Design {
    pub name: &'static str,
    pub measurement: Option<MeasurementKind>,
    pub interpretation: Option<Interpretation>,
}

/// SGA1's stored weights: one-point-heavy baseline — slot 4 carries 0.98,
/// the mutation slot its nominal 0.02 (its live value always comes from
/// diversity control).
const SGA1_WEIGHTS: [f64; OPERATOR_COUNT] =
    [0.0, 0.0, 0.0, 0.98, 0.0, 0.0, 0.0, 0.0, 0.0, 0.02];

/// SGA2's stored weights: slots 1-9 at 0.1 each plus the nominal mutation
/// baseline. Only relative weights matter to reproduction, so this vector
/// is used as stored (its sum is not 1 by construction).
const SGA2_WEIGHTS: [f64; OPERATOR_COUNT] =
    [0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.02];

pub const ALL_DESIGNS: [Design; 9] = [
    Design { name: "SGA1", measurement: None, interpretation: None },
    Design { name: "SGA2", measurement: None, interpretation: None },
    Design {
        name: "A1-I1",
        measurement: Some(MeasurementKind::RawFitness),
        interpretation: Some(Interpretation::Average),
    },
    Design {
        name: "A2-I1",
        measurement: Some(MeasurementKind::FitnessRatio),
        interpretation: Some(Interpretation::Average),
    },
    Design {
        name: "A4-I1",
        measurement: Some(MeasurementKind::FamilySurvival),
        interpretation: Some(Interpretation::Average),
    },
    Design {
        name: "A5-I1",
        measurement: Some(MeasurementKind::Age),
        interpretation: Some(Interpretation::Average),
    },
    Design {
        name: "A5-I3",
        measurement: Some(MeasurementKind::Age),
        interpretation: Some(Interpretation::Outlier),
    },
    Design {
        name: "A6-I1",
        measurement: Some(MeasurementKind::Rank),
        interpretation: Some(Interpretation::Average),
    },
    Design {
        name: "A6-I3",
        measurement: Some(MeasurementKind::Rank),
        interpretation: Some(Interpretation::Outlier),
    },
];

impl Design {
    /// Look a design up by its case-insensitive name.
    pub fn by_name(name: &str) -> Option<&'static Design> {
        ALL_DESIGNS.iter().find(|d| d.name.eq_ignore_ascii_case(name))
    }

    pub fn is_adaptive(&self) -> bool {
        self.measurement.is_some()
    }

    /// The starting portfolio for this design.
    pub fn portfolio(&self) -> Portfolio {
        match self.name {
            "SGA1" => Portfolio::fixed(SGA1_WEIGHTS),
            "SGA2" => Portfolio::fixed(SGA2_WEIGHTS),
            _ => Portfolio::uniform_adaptive(),
        }
    }
}
