//! Size guards for the exponential constructions.

/// Environment variable overriding [`Guards::lattice_atoms`].
pub const GUARD_ATOMS_ENV: &str = "LCMFILT_GUARD_ATOMS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Largest number of minimal generators for which an lcm-lattice is built.
    pub lattice_atoms: usize,
    /// Largest number of minimal generators for a full usual lcm-filtration.
    pub filtration_generators: usize,
    /// Largest number of k-subsets evaluated for a single k-fold lcm-ideal.
    pub kfold_subsets: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            lattice_atoms: 25,
            filtration_generators: 22,
            kfold_subsets: 1 << 22,
        }
    }
}

impl Guards {
    /// Defaults, with the lattice guard taken from `LCMFILT_GUARD_ATOMS` when
    /// it is set to a positive integer.
    pub fn from_env() -> Self {
        let mut g = Self::default();
        if let Some(v) = std::env::var(GUARD_ATOMS_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            g.lattice_atoms = v;
        }
        g
    }

    pub fn with_lattice_atoms(mut self, atoms: usize) -> Self {
        self.lattice_atoms = atoms;
        self
    }
}
