//! Finite sets with cyclic actions, as a model of effectively finite `Ẑ`-actions.
//!
//! An action of level `N` is a permutation `g` with `g^N = id`. The Bost–Connes maps act by
//! `σ_n: g ↦ g^n` and by the geometric Verschiebung `Φ_n`, which replaces `S` by `S × Z_n`
//! and cycles through the `n` copies, applying `g` once per full turn, so `Φ_n(g)^n = g × id`.
//! Orbits of size `d` contribute `Σ_{dr = 0} e(r)` to the `Z[Q/Z]`-valued Euler characteristic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::qz::QZElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAction {
    level: u64,
    perm: Vec<usize>,
}

impl CyclicAction {
    pub fn new(level: u64, perm: Vec<usize>) -> Result<Self> {
        if level == 0 {
            return Err(Error::invalid("level must be positive"));
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("not a permutation"));
            }
        }
        let a = CyclicAction { level, perm };
        if let Some(len) = a.orbits().iter().map(Vec::len).find(|&l| level % l as u64 != 0) {
            return Err(Error::invalid(format!("orbit of size {len} does not divide level {level}")));
        }
        Ok(a)
    }

    pub fn trivial(size: usize, level: u64) -> Self {
        CyclicAction::new(level, (0..size).collect()).expect("identity is an action")
    }

    /// A single `len`-cycle at level `len`.
    pub fn cycle(len: usize) -> Self {
        assert!(len >= 1);
        CyclicAction::new(len as u64, (0..len).map(|i| (i + 1) % len).collect()).expect("cycle")
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// The permutation `g^k`.
    pub fn power(&self, k: u64) -> Vec<usize> {
        let mut out = vec![0; self.size()];
        for orbit in self.orbits() {
            let len = orbit.len();
            let shift = (k % len as u64) as usize;
            for (i, &s) in orbit.iter().enumerate() {
                out[s] = orbit[(i + shift) % len];
            }
        }
        out
    }

    /// Orbits, each listed from its smallest element, ordered by that element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for s in 0..self.size() {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![s];
            seen[s] = true;
            let mut x = self.perm[s];
            while x != s {
                seen[x] = true;
                orbit.push(x);
                x = self.perm[x];
            }
            out.push(orbit);
        }
        out
    }

    /// Orbit length → number of orbits of that length. Classifies the action up to isomorphism.
    pub fn cycle_type(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for o in self.orbits() {
            *out.entry(o.len()).or_insert(0) += 1;
        }
        out
    }

    /// `σ_n`: precompose with multiplication by `n`, i.e. `g ↦ g^n`.
    pub fn sigma_action(&self, n: u64) -> Self {
        assert!(n >= 1);
        CyclicAction { level: self.level, perm: self.power(n) }
    }

    /// Geometric Verschiebung `Φ_n` on `S × {0..n}`, where `(s, i)` has index `s·n + i`.
    pub fn verschiebung_action(&self, n: u64) -> Self {
        assert!(n >= 1);
        let n = n as usize;
        let perm = (0..self.size() * n)
            .map(|idx| {
                let (s, i) = (idx / n, idx % n);
                if i + 1 < n {
                    s * n + i + 1
                } else {
                    self.perm[s] * n
                }
            })
            .collect();
        CyclicAction { level: self.level * n as u64, perm }
    }

    /// Points fixed by `g^k`, ascending.
    pub fn periodic_points(&self, k: u64) -> Vec<usize> {
        assert!(k >= 1);
        let pk = self.power(k);
        (0..self.size()).filter(|&s| pk[s] == s).collect()
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.size();
        let perm = self.perm.iter().copied().chain(other.perm.iter().map(|p| p + off)).collect();
        CyclicAction { level: self.level.lcm(&other.level), perm }
    }

    /// Product with the diagonal action; `(s, t)` has index `s·|T| + t`.
    pub fn product(&self, other: &Self) -> Self {
        let m = other.size();
        let perm = (0..self.size() * m)
            .map(|idx| self.perm[idx / m] * m + other.perm[idx % m])
            .collect();
        CyclicAction { level: self.level.lcm(&other.level), perm }
    }

    /// `Σ_O Σ_{|O|·r = 0} e(r)` over the orbits `O`.
    pub fn euler_char(&self) -> QZElement {
        let mut counts: BTreeMap<u64, i64> = BTreeMap::new();
        for o in self.orbits() {
            *counts.entry(o.len() as u64).or_insert(0) += 1;
        }
        counts.into_iter().fold(QZElement::zero(), |acc, (d, c)| {
            acc.add(&QZElement::pi_n_times_n(d).scale(&BigInt::from(c)))
        })
    }
}

/// An equivariant map `X → S` of actions of the same level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeObject {
    total: CyclicAction,
    base: CyclicAction,
    map: Vec<usize>,
}

impl RelativeObject {
    pub fn new(total: CyclicAction, base: CyclicAction, map: Vec<usize>) -> Result<Self> {
        if total.level != base.level {
            return Err(Error::invalid("total and base must have the same level"));
        }
        if map.len() != total.size() || map.iter().any(|&b| b >= base.size()) {
            return Err(Error::invalid("map must send every point of the total space into the base"));
        }
        if (0..total.size()).any(|x| map[total.perm[x]] != base.perm[map[x]]) {
            return Err(Error::invalid("map is not equivariant"));
        }
        Ok(RelativeObject { total, base, map })
    }

    pub fn total(&self) -> &CyclicAction {
        &self.total
    }

    pub fn base(&self) -> &CyclicAction {
        &self.base
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn bc_sigma(&self, n: u64) -> Self {
        RelativeObject {
            total: self.total.sigma_action(n),
            base: self.base.sigma_action(n),
            map: self.map.clone(),
        }
    }

    /// `Φ_n` on total space and base, with `f × id` between them.
    pub fn bc_rho(&self, n: u64) -> Self {
        let k = n as usize;
        let map = (0..self.total.size() * k).map(|idx| self.map[idx / k] * k + idx % k).collect();
        RelativeObject {
            total: self.total.verschiebung_action(n),
            base: self.base.verschiebung_action(n),
            map,
        }
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.base.size();
        RelativeObject {
            total: self.total.disjoint_union(&other.total),
            base: self.base.disjoint_union(&other.base),
            map: self.map.iter().copied().chain(other.map.iter().map(|b| b + off)).collect(),
        }
    }

    /// Fibre product over the product base.
    pub fn product(&self, other: &Self) -> Self {
        let (tm, bm) = (other.total.size(), other.base.size());
        RelativeObject {
            total: self.total.product(&other.total),
            base: self.base.product(&other.base),
            map: (0..self.total.size() * tm)
                .map(|idx| self.map[idx / tm] * bm + other.map[idx % tm])
                .collect(),
        }
    }

    /// Multiset of `(orbit size in X, size of the image orbit in S)`.
    pub fn orbit_type(&self) -> BTreeMap<(usize, usize), usize> {
        let base_size: Vec<usize> = {
            let mut v = vec![0; self.base.size()];
            for o in self.base.orbits() {
                for &s in &o {
                    v[s] = o.len();
                }
            }
            v
        };
        let mut out = BTreeMap::new();
        for o in self.total.orbits() {
            *out.entry((o.len(), base_size[self.map[o[0]]])).or_insert(0) += 1;
        }
        out
    }
}

/// Outcome of the periodic-point and Euler-characteristic identities on one action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub periodic_sigma: bool,
    pub periodic_verschiebung: bool,
    pub euler_sigma: bool,
    pub euler_rho: bool,
}

impl IdentityReport {
    pub fn all(&self) -> bool {
        self.periodic_sigma && self.periodic_verschiebung && self.euler_sigma && self.euler_rho
    }
}

/// Checks, for one `n` and one `k`:
/// `Per_k(σ_n a) = Per_{nk}(a)`, `Per_k(Φ_n a) = Per_{k/n}(a) × Z_n` (empty unless `n | k`),
/// `χ(σ_n a) = σ_n χ(a)` and `χ(Φ_n a) = ρ̃_n χ(a)`.
pub fn identity_checks(a: &CyclicAction, n: u64, k: u64) -> IdentityReport {
    let periodic_sigma = a.sigma_action(n).periodic_points(k) == a.periodic_points(n * k);
    let v = a.verschiebung_action(n).periodic_points(k);
    let expected: Vec<usize> = if k % n == 0 {
        a.periodic_points(k / n)
            .into_iter()
            .flat_map(|s| (0..n as usize).map(move |i| s * n as usize + i))
            .collect()
    } else {
        Vec::new()
    };
    IdentityReport {
        periodic_sigma,
        periodic_verschiebung: v == expected,
        euler_sigma: a.sigma_action(n).euler_char() == a.euler_char().sigma(n),
        euler_rho: a.verschiebung_action(n).euler_char() == a.euler_char().rho(n),
    }
}
