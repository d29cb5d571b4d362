use std::cell::OnceCell;

use super::{Instance, PrimeSummary};
use crate::error::{Error, Result};
use crate::geometry::{
    krull_dim, min_primes_containment_check, ring_min_primes, supp_is_full, Containment, Dimension,
    PrimeList, SupportHandle,
};
use crate::resolution::{resolve, BettiSequence, Resolution};

/// A resolved instance with lazily computed supports, dimensions and
/// prime containments, shared by all checks.
pub struct Context {
    pub instance: Instance,
    pub resolution: Resolution,
    pub betti: BettiSequence,
    ring_dim: Dimension,
    minn: std::result::Result<PrimeList, String>,
    handles: Vec<OnceCell<SupportHandle>>,
    full: Vec<OnceCell<bool>>,
    dims: Vec<OnceCell<Dimension>>,
    containment: Vec<OnceCell<Option<Containment>>>,
}

impl Context {
    pub fn new(instance: Instance) -> Result<Self> {
        let resolution = resolve(&instance.module, instance.window)?;
        let betti = resolution.betti();
        let ring = instance.ring();
        let ring_dim = krull_dim(ring.ideal(), ring.config())?;
        let minn = match ring_min_primes(ring) {
            Ok(Some(l)) => Ok(l),
            Ok(None) => Err("I is not monomial and no minimal primes were declared".to_string()),
            Err(e @ Error::DeclaredPrimes { .. }) => Err(e.to_string()),
            Err(e) => return Err(e),
        };
        let n = betti.len().max(1);
        Ok(Context {
            instance,
            resolution,
            betti,
            ring_dim,
            minn,
            handles: (0..n).map(|_| OnceCell::new()).collect(),
            full: (0..n).map(|_| OnceCell::new()).collect(),
            dims: (0..n).map(|_| OnceCell::new()).collect(),
            containment: (0..n).map(|_| OnceCell::new()).collect(),
        })
    }

    /// Largest index `i` for which `β_i` and `supp Ω_i` are available.
    pub fn top(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }

    pub fn is_terminated(&self) -> bool {
        self.resolution.is_terminated()
    }

    pub fn beta(&self, i: usize) -> usize {
        self.betti.get(i).expect("Betti index inside the window")
    }

    pub fn ring_dim(&self) -> Dimension {
        self.ring_dim
    }

    pub fn min_primes(&self) -> std::result::Result<&PrimeList, &str> {
        self.minn.as_ref().map_err(|s| s.as_str())
    }

    pub fn prime_summary(&self) -> Option<PrimeSummary> {
        let l = self.minn.as_ref().ok()?;
        let names = self.instance.ring().variables();
        Some(PrimeSummary {
            primes: l.primes.iter().map(|p| p.format(names)).collect(),
            provenance: l.provenance,
            primality_certified: l.primality_certified(),
        })
    }

    pub fn format_prime(&self, k: usize) -> String {
        match &self.minn {
            Ok(l) => l.primes[k].format(self.instance.ring().variables()),
            Err(_) => format!("#{k}"),
        }
    }

    pub fn support(&self, i: usize) -> Result<&SupportHandle> {
        let cell = self.handles.get(i).ok_or(Error::OutOfWindow {
            index: i,
            len: self.handles.len(),
        })?;
        if cell.get().is_none() {
            let h = SupportHandle::of_syzygy(&self.resolution, i)?;
            let _ = cell.set(h);
        }
        Ok(cell.get().unwrap())
    }

    pub fn is_full(&self, i: usize) -> Result<bool> {
        if let Some(&b) = self.full.get(i).and_then(|c| c.get()) {
            return Ok(b);
        }
        let b = supp_is_full(self.support(i)?)?;
        let _ = self.full[i].set(b);
        Ok(b)
    }

    pub fn dim(&self, i: usize) -> Result<Dimension> {
        if let Some(&d) = self.dims.get(i).and_then(|c| c.get()) {
            return Ok(d);
        }
        let d = self.support(i)?.dim()?;
        let _ = self.dims[i].set(d);
        Ok(d)
    }

    /// Minimal-prime containment for `Ω_i`, when minimal primes are known.
    pub fn containment(&self, i: usize) -> Result<Option<&Containment>> {
        if let Some(c) = self.containment.get(i).and_then(|c| c.get()) {
            return Ok(c.as_ref());
        }
        let c = match &self.minn {
            Ok(l) => Some(min_primes_containment_check(self.support(i)?, l)?),
            Err(_) => None,
        };
        let _ = self.containment[i].set(c);
        Ok(self.containment[i].get().unwrap().as_ref())
    }

    pub fn format_support(&self, i: usize) -> Result<String> {
        Ok(self.support(i)?.format())
    }

    pub fn format_touched(&self, touched: &[usize]) -> String {
        let parts: Vec<String> = touched.iter().map(|&k| self.format_prime(k)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}
