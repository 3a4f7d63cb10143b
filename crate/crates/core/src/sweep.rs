//! One-parameter sweeps over geometry and the presets behind the standard
//! figure datasets.

use alloc::vec::Vec;
use core::fmt;

use crate::analytic::energy_breakdown;
use crate::geometry::{AtomSpec, PolarizabilityTensor, SystemConfig};
use crate::linalg::Vector3;
use crate::special::unequal_heights;
use crate::{Error, Result};

/// The geometric parameter varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepAxis {
    /// Both atoms at common height `value · a`, where `a` is the horizontal
    /// separation of the base configuration.
    HeightOverSeparation,
    /// `Γ = R/r` at fixed `a/r` and `r`; atom 1 sits above atom 2 and atom 2
    /// is displaced along `x̂`.
    BigGamma { a_over_r: f64, r: f64 },
    /// Height of atom 1.
    Z1,
    /// Height of atom 2.
    Z2,
    /// Horizontal separation, keeping the base horizontal direction.
    Separation,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::HeightOverSeparation => "z_over_a",
            SweepAxis::BigGamma { .. } => "Gamma",
            SweepAxis::Z1 => "z1",
            SweepAxis::Z2 => "z2",
            SweepAxis::Separation => "a",
        }
    }
}

/// A sweep: a base configuration, an axis and an inclusive range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub atom1: AtomSpec,
    pub atom2: AtomSpec,
    pub axis: SweepAxis,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

/// One sweep point. Energies are NaN when the point is degenerate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub e12: f64,
    pub e123: f64,
    pub e213: f64,
    pub e1323: f64,
    pub delta_e3: f64,
    /// `ΔE₃/E₁₂`.
    pub g: f64,
    /// `(E₁₂₃ + E₂₁₃)/E₁₂`.
    pub g3: f64,
    /// `E₁₃₂₃/E₁₂`.
    pub g4: f64,
}

impl SweepRow {
    pub const HEADER: [&'static str; 9] = ["param", "e12", "e123", "e213", "e1323", "delta_e3", "g", "g3", "g4"];

    fn degenerate(param: f64) -> Self {
        let n = f64::NAN;
        SweepRow { param, e12: n, e123: n, e213: n, e1323: n, delta_e3: n, g: n, g3: n, g4: n }
    }

    pub fn values(&self) -> [f64; 9] {
        [self.param, self.e12, self.e123, self.e213, self.e1323, self.delta_e3, self.g, self.g3, self.g4]
    }

    pub fn is_degenerate(&self) -> bool {
        self.e12.is_nan()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    /// Index and cause of every degenerate point.
    pub degenerate: Vec<(usize, Error)>,
}

impl Sweep {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidSweep("at least two steps are required"));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidSweep("range must be finite"));
        }
        if self.min > self.max {
            return Err(Error::InvalidSweep("min exceeds max"));
        }
        match self.axis {
            SweepAxis::HeightOverSeparation | SweepAxis::Z1 | SweepAxis::Z2 | SweepAxis::Separation
                if self.min < 0.0 =>
            {
                Err(Error::InvalidSweep("lengths along the axis must be nonnegative"))
            }
            SweepAxis::BigGamma { .. } if self.min < 1.0 => Err(Error::InvalidSweep("Gamma must be at least 1")),
            SweepAxis::BigGamma { a_over_r, r } if !(r > 0.0) || !(0.0..=1.0).contains(&a_over_r) => {
                Err(Error::InvalidSweep("Gamma axis needs r > 0 and 0 <= a/r <= 1"))
            }
            SweepAxis::HeightOverSeparation if horizontal(&self.atom1, &self.atom2).norm() == 0.0 => {
                Err(Error::InvalidSweep("z_over_a needs a nonzero horizontal separation"))
            }
            _ => Ok(()),
        }
    }

    /// Parameter values, with both endpoints hit exactly.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.steps;
        (0..n).map(move |i| {
            if i + 1 == n {
                self.max
            } else {
                self.min + (self.max - self.min) * (i as f64) / ((n - 1) as f64)
            }
        })
    }

    /// The configuration at one parameter value. Contact with the plate is
    /// always admitted inside sweeps.
    pub fn config_at(&self, value: f64) -> Result<SystemConfig> {
        let (mut p1, mut p2) = (self.atom1.position, self.atom2.position);
        match self.axis {
            SweepAxis::HeightOverSeparation => {
                let z = value * horizontal(&self.atom1, &self.atom2).norm();
                p1.z = z;
                p2.z = z;
            }
            SweepAxis::BigGamma { a_over_r, r } => {
                let a = a_over_r * r;
                let (z1, z2) = unequal_heights(a, r, value)?;
                p1 = Vector3::new(0.0, 0.0, z1);
                p2 = Vector3::new(a, 0.0, z2);
            }
            SweepAxis::Z1 => p1.z = value,
            SweepAxis::Z2 => p2.z = value,
            SweepAxis::Separation => {
                let h = horizontal(&self.atom1, &self.atom2);
                let dir = h.norm_and_unit().map_or(Vector3::X, |(_, d)| d);
                p2 = Vector3::new(p1.x + value * dir.x, p1.y + value * dir.y, p2.z);
            }
        }
        SystemConfig::with_contact(
            AtomSpec::new(p1, self.atom1.alpha),
            AtomSpec::new(p2, self.atom2.alpha),
        )
    }

    pub fn row_at(&self, value: f64) -> Result<SweepRow> {
        let b = energy_breakdown(&self.config_at(value)?)?;
        Ok(SweepRow {
            param: value,
            e12: b.e12,
            e123: b.e123,
            e213: b.e213,
            e1323: b.e1323,
            delta_e3: b.delta_e3,
            g: b.delta_e3 / b.e12,
            g3: (b.e123 + b.e213) / b.e12,
            g4: b.e1323 / b.e12,
        })
    }

    /// Evaluates every point in axis order. Degenerate points become NaN rows
    /// and are listed in [`SweepOutcome::degenerate`].
    pub fn run(&self) -> Result<SweepOutcome> {
        self.validate()?;
        let mut rows = Vec::with_capacity(self.steps);
        let mut degenerate = Vec::new();
        for (i, v) in self.points().enumerate() {
            match self.row_at(v) {
                Ok(row) => rows.push(row),
                Err(e) => {
                    rows.push(SweepRow::degenerate(v));
                    degenerate.push((i, e));
                }
            }
        }
        Ok(SweepOutcome { rows, degenerate })
    }
}

fn horizontal(a1: &AtomSpec, a2: &AtomSpec) -> Vector3 {
    let d = a2.position - a1.position;
    Vector3::new(d.x, d.y, 0.0)
}

/// Datasets matching the four standard plots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigurePreset {
    /// Isotropic atoms at equal heights, `g` against `Z/a ∈ [0, 2]`.
    Fig2,
    /// Atoms polarizable along `ẑ` at equal heights, `g₃`, `g₄`, `g` against `Z/a ∈ [0, 2]`.
    Fig3,
    /// `ẑ`-polarizable atoms at unequal heights, energies in units of
    /// `α_z¹α_z²/r⁷` against `Γ ∈ [1, 4]` at `a/r = 0.75`.
    Fig4,
    /// Transversely polarizable atoms, energies in units of `α⊥¹α⊥²/r⁷`
    /// against `Γ ∈ [1, 4]` at `a/r = 0.5`.
    Fig5,
}

pub const FIGURE_STEPS: usize = 201;

impl FigurePreset {
    pub const ALL: [FigurePreset; 4] = [FigurePreset::Fig2, FigurePreset::Fig3, FigurePreset::Fig4, FigurePreset::Fig5];

    pub fn id(self) -> &'static str {
        match self {
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
            FigurePreset::Fig5 => "fig5",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.id() == id)
    }

    pub fn sweep(self) -> Sweep {
        let equal_heights = |alpha: PolarizabilityTensor| Sweep {
            atom1: AtomSpec::new(Vector3::ZERO, alpha),
            atom2: AtomSpec::new(Vector3::X, alpha),
            axis: SweepAxis::HeightOverSeparation,
            min: 0.0,
            max: 2.0,
            steps: FIGURE_STEPS,
        };
        let unequal = |alpha: PolarizabilityTensor, a_over_r: f64| Sweep {
            atom1: AtomSpec::new(Vector3::ZERO, alpha),
            atom2: AtomSpec::new(Vector3::X, alpha),
            axis: SweepAxis::BigGamma { a_over_r, r: 1.0 },
            min: 1.0,
            max: 4.0,
            steps: FIGURE_STEPS,
        };
        match self {
            FigurePreset::Fig2 => equal_heights(PolarizabilityTensor::isotropic(1.0)),
            FigurePreset::Fig3 => equal_heights(PolarizabilityTensor::uniaxial(0.0, 1.0)),
            FigurePreset::Fig4 => unequal(PolarizabilityTensor::uniaxial(0.0, 1.0), 0.75),
            FigurePreset::Fig5 => unequal(PolarizabilityTensor::uniaxial(1.0, 0.0), 0.5),
        }
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}
