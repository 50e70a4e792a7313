//! Prime-number-theoretic ground truth: von Mangoldt's Λ(n), Chebyshev's
//! ψ(v) = Σ_{n≤v} Λ(n), prime counting, and the normalized remainder
//! signal b(t) = (ψ(e^t) − ⌊e^t⌋) / e^t.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Largest supported sieve limit (the Λ array alone is 8 bytes per entry).
pub const MAX_SIEVE_LIMIT: u64 = 100_000_000;

/// Magic bytes of the on-disk Λ cache.
const CACHE_MAGIC: &[u8; 8] = b"TAULAB01";

/// Sieved values of Λ(n) for 1 ≤ n ≤ limit, plus the primes up to limit.
///
/// Immutable after construction; all queries take `&self`.
#[derive(Debug, Clone)]
pub struct MangoldtTable {
    limit: u64,
    /// lambda[n] = Λ(n) in natural-log units; index 0 is unused.
    lambda: Vec<f64>,
    primes: Vec<u64>,
}

/// Builds a [`MangoldtTable`] by a linear (smallest-prime-factor) sieve.
///
/// Λ(n) = log p exactly when n = p^k, else 0; prime powers are marked by
/// walking p, p², ... for each sieved prime rather than by per-n trial
/// division.
pub fn sieve_mangoldt(limit: u64) -> Result<MangoldtTable> {
    if limit < 1 {
        return Err(Error::Range { value: limit as f64, context: "sieve limit must be >= 1" });
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::Capacity { requested: limit, max: MAX_SIEVE_LIMIT });
    }
    let n = limit as usize;

    // Linear sieve: every composite is struck exactly once, by its
    // smallest prime factor.
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u64> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u64);
        }
        for &p in &primes {
            let p = p as usize;
            if p > spf[i] as usize || i * p > n {
                break;
            }
            spf[i * p] = p as u32;
        }
    }

    let mut lambda = vec![0.0f64; n + 1];
    for &p in &primes {
        let logp = (p as f64).ln();
        let mut q = p;
        loop {
            lambda[q as usize] = logp;
            match q.checked_mul(p) {
                Some(next) if next <= limit => q = next,
                _ => break,
            }
        }
    }

    Ok(MangoldtTable { limit, lambda, primes })
}

impl MangoldtTable {
    /// Upper end of the sieved range.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Λ(n); zero outside prime powers.
    pub fn lambda(&self, n: u64) -> f64 {
        if n >= 1 && n <= self.limit {
            self.lambda[n as usize]
        } else {
            0.0
        }
    }

    /// Sorted primes up to the limit.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Chebyshev's ψ(v) = Σ_{n ≤ v} Λ(n).
    pub fn chebyshev_psi(&self, v: f64) -> Result<f64> {
        if !(1.0..=self.limit as f64).contains(&v) {
            return Err(Error::Range { value: v, context: "psi argument must be in [1, limit]" });
        }
        let top = guarded_floor(v).min(self.limit);
        let mut sum = 0.0;
        let mut comp = 0.0;
        for n in 2..=top {
            let x = self.lambda[n as usize];
            // Kahan summation: the identity checks later ask for 1e-9 over
            // up to 1e8 terms.
            let y = x - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        Ok(sum)
    }

    /// Number of primes ≤ v.
    pub fn prime_count(&self, v: f64) -> Result<u64> {
        if v > self.limit as f64 {
            return Err(Error::Range { value: v, context: "prime count argument above limit" });
        }
        if v < 2.0 {
            return Ok(0);
        }
        let top = guarded_floor(v);
        Ok(self.primes.partition_point(|&p| p <= top) as u64)
    }

    /// The normalized prime-power remainder b(t) = e^{-t}(ψ(e^t) − ⌊e^t⌋),
    /// extended by zero for t < 0.
    pub fn pnt_signal(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Ok(0.0);
        }
        let v = t.exp();
        if v > self.limit as f64 * (1.0 + 1e-12) {
            return Err(Error::Range { value: t, context: "e^t exceeds the sieve limit" });
        }
        let v = v.min(self.limit as f64);
        let floor = guarded_floor(v) as f64;
        Ok((self.chebyshev_psi(v)? - floor) / v)
    }

    /// Writes the Λ array: 8-byte magic, limit as little-endian u64, then
    /// Λ(1)..Λ(limit) as little-endian f64.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(16 + 8 * self.limit as usize);
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&self.limit.to_le_bytes());
        for n in 1..=self.limit as usize {
            buf.extend_from_slice(&self.lambda[n].to_le_bytes());
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(&buf)?;
        Ok(())
    }

    /// Reads a cache written by [`MangoldtTable::write_cache`], rebuilding
    /// the primes list from the Λ values.
    pub fn read_cache(path: &Path) -> Result<MangoldtTable> {
        let mut file = std::fs::File::open(path)?;
        let mut header = [0u8; 16];
        file.read_exact(&mut header)
            .map_err(|_| Error::CacheFormat("truncated header".into()))?;
        if &header[..8] != CACHE_MAGIC {
            return Err(Error::CacheFormat("bad magic".into()));
        }
        let limit = u64::from_le_bytes(header[8..16].try_into().unwrap());
        if limit < 1 || limit > MAX_SIEVE_LIMIT {
            return Err(Error::CacheFormat(format!("implausible limit {limit}")));
        }
        let mut payload = Vec::new();
        file.read_to_end(&mut payload)?;
        if payload.len() != 8 * limit as usize {
            return Err(Error::CacheFormat(format!(
                "expected {} value bytes, found {}",
                8 * limit,
                payload.len()
            )));
        }
        let mut lambda = vec![0.0f64; limit as usize + 1];
        for n in 1..=limit as usize {
            let bytes: [u8; 8] = payload[8 * (n - 1)..8 * n].try_into().unwrap();
            lambda[n] = f64::from_le_bytes(bytes);
        }

        // A prime power n = p^k stores Λ(n) = ln p, so p is recoverable.
        let mut primes = Vec::new();
        for n in 2..=limit {
            let lam = lambda[n as usize];
            if lam == 0.0 {
                continue;
            }
            if !(lam > 0.0) {
                return Err(Error::CacheFormat(format!("negative entry at n = {n}")));
            }
            let p = lam.exp().round() as u64;
            if p < 2 || (lam - (p as f64).ln()).abs() > 1e-9 || !is_power_of(n, p) {
                return Err(Error::CacheFormat(format!("entry at n = {n} is not log of a prime root")));
            }
            if p == n {
                primes.push(n);
            }
        }
        Ok(MangoldtTable { limit, lambda, primes })
    }

    /// Loads the cache when `path` holds a table with a sufficient limit,
    /// otherwise sieves (and writes the cache back when a path is given).
    pub fn load_or_sieve(limit: u64, cache: Option<&Path>) -> Result<MangoldtTable> {
        if let Some(path) = cache {
            if path.exists() {
                match MangoldtTable::read_cache(path) {
                    Ok(table) if table.limit >= limit => return Ok(table),
                    Ok(_) => {}
                    Err(e) => return Err(e),
                }
            }
            let table = sieve_mangoldt(limit)?;
            table.write_cache(path)?;
            Ok(table)
        } else {
            sieve_mangoldt(limit)
        }
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if p < 2 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// ⌊v⌋ with a guard: values within a relative half-ulp band of an integer
/// are treated as that integer, so e^{ln k} never misclassifies k.
pub fn guarded_floor(v: f64) -> u64 {
    let r = v.round();
    if (v - r).abs() <= 4.0 * f64::EPSILON * r.abs().max(1.0) {
        r as u64
    } else {
        v.floor() as u64
    }
}
