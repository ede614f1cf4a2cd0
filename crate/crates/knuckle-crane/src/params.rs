//! Physical parameters of the crane rig.

use crate::error::{CraneError, Result};

/// Masses, geometry and inertia of the crane, plus the gravity constant.
///
/// The boom (length `l_b`, mass `m_b`) luffs on the slewing tower, the jib
/// (`l_j`, `m_j`) luffs on the boom tip, and the payload (`m`) hangs from
/// the jib tip on a rigid massless cable of variable length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CraneParams {
    /// Boom mass \[kg\].
    pub m_b: f64,
    /// Jib mass \[kg\].
    pub m_j: f64,
    /// Payload mass \[kg\].
    pub m: f64,
    /// Boom length \[m\].
    pub l_b: f64,
    /// Jib length \[m\].
    pub l_j: f64,
    /// Tower inertia about the slew axis \[kg m^2\].
    pub i_tot: f64,
    /// Boom inertia about its luff axis \[kg m^2\].
    pub i_b: f64,
    /// Jib inertia about its luff axis \[kg m^2\].
    pub i_j: f64,
    /// Gravitational acceleration \[m/s^2\].
    pub g: f64,
}

pub const STANDARD_GRAVITY: f64 = 9.81;

/// Default tower inertia when a rig does not specify one \[kg m^2\].
pub const DEFAULT_TOWER_INERTIA: f64 = 100.0;

impl CraneParams {
    /// Build a parameter set from masses and lengths.
    ///
    /// Link inertias default to the uniform slender rod value `m l^2 / 12`
    /// (consistent with the center-of-mass-at-midpoint kinematics used in
    /// the energy expressions); the tower inertia defaults to
    /// [`DEFAULT_TOWER_INERTIA`]. All fields stay public for overrides.
    pub fn new(m_b: f64, m_j: f64, m: f64, l_b: f64, l_j: f64) -> Self {
        Self {
            m_b,
            m_j,
            m,
            l_b,
            l_j,
            i_tot: DEFAULT_TOWER_INERTIA,
            i_b: m_b * l_b * l_b / 12.0,
            i_j: m_j * l_j * l_j / 12.0,
            g: STANDARD_GRAVITY,
        }
    }

    /// Reference rig used by the bundled scenarios: 300 kg / 2 m boom,
    /// 250 kg / 2.3 m jib, 100 kg payload.
    pub fn reference() -> Self {
        Self::new(300.0, 250.0, 100.0, 2.0, 2.3)
    }

    /// Same rig with a different payload mass on the hook.
    pub fn with_payload_mass(mut self, m: f64) -> Self {
        self.m = m;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("m_b", self.m_b),
            ("m_j", self.m_j),
            ("m", self.m),
            ("l_b", self.l_b),
            ("l_j", self.l_j),
            ("i_tot", self.i_tot),
            ("i_b", self.i_b),
            ("i_j", self.i_j),
            ("g", self.g),
        ];
        for (name, value) in fields {
            if value <= 0.0 || !value.is_finite() {
                return Err(CraneError::InvalidParameter { name, value });
            }
        }
        Ok(())
    }

    // Derived constants folding masses and lengths. a4/a5 carry the
    // conventional factor two; the dynamics entries use the half values
    // l_b*m and l_j*m throughout.

    /// `l_b^2 m + l_b^2 m_b / 4 + l_b^2 m_j`
    #[inline]
    pub fn a1(&self) -> f64 {
        self.l_b * self.l_b * (self.m + 0.25 * self.m_b + self.m_j)
    }

    /// `l_j^2 m + l_j^2 m_j / 4`
    #[inline]
    pub fn a2(&self) -> f64 {
        self.l_j * self.l_j * (self.m + 0.25 * self.m_j)
    }

    /// `2 l_b l_j m + l_b l_j m_j`
    #[inline]
    pub fn a3(&self) -> f64 {
        self.l_b * self.l_j * (2.0 * self.m + self.m_j)
    }

    /// `2 l_b m`
    #[inline]
    pub fn a4(&self) -> f64 {
        2.0 * self.l_b * self.m
    }

    /// `2 l_j m`
    #[inline]
    pub fn a5(&self) -> f64 {
        2.0 * self.l_j * self.m
    }
}
