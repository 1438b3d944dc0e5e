//! Signed Pauli strings in the symplectic bit-mask representation.

/// A Pauli string `i^{phase_power} · X^{x_mask} Z^{z_mask}` on up to 64
/// sites. `Y_j` is encoded with both the x and z bit set, its `i`
/// bookkeeping absorbed into `phase_power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliTerm {
    pub x_mask: u64,
    pub z_mask: u64,
    /// Power of `i` modulo 4.
    pub phase_power: u8,
}

impl PauliTerm {
    pub fn identity() -> Self {
        Self {
            x_mask: 0,
            z_mask: 0,
            phase_power: 0,
        }
    }

    /// The Hermitian representative `W(x, z) = i^{|x∧z|} X^x Z^z`
    /// (e.g. `W` on a single site is exactly `X`, `Y` or `Z`).
    pub fn hermitian(x_mask: u64, z_mask: u64) -> Self {
        Self {
            x_mask,
            z_mask,
            phase_power: ((x_mask & z_mask).count_ones() % 4) as u8,
        }
    }

    /// Product of two strings is a single string (closure under
    /// multiplication).
    pub fn mul(&self, other: &PauliTerm) -> PauliTerm {
        let anti = (self.z_mask & other.x_mask).count_ones();
        PauliTerm {
            x_mask: self.x_mask ^ other.x_mask,
            z_mask: self.z_mask ^ other.z_mask,
            phase_power: ((self.phase_power as u32 + other.phase_power as u32 + 2 * anti) % 4)
                as u8,
        }
    }

    pub fn commutes_with(&self, other: &PauliTerm) -> bool {
        let s =
            (self.x_mask & other.z_mask).count_ones() + (self.z_mask & other.x_mask).count_ones();
        s % 2 == 0
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> u32 {
        (self.x_mask | self.z_mask).count_ones()
    }

    /// Letters on `sites` sites, e.g. `"XZZY"`.
    pub fn letters(&self, sites: usize) -> String {
        (0..sites)
            .map(|j| {
                let x = (self.x_mask >> j) & 1 == 1;
                let z = (self.z_mask >> j) & 1 == 1;
                match (x, z) {
                    (false, false) => 'I',
                    (true, false) => 'X',
                    (false, true) => 'Z',
                    (true, true) => 'Y',
                }
            })
            .collect()
    }
}
