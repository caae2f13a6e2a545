use serde::Serialize;

use super::{SymplecticSpace, SIGMA};
use crate::error::{Error, Result};
use crate::exterior::Multivector;

/// The string `ε_ν = ((−1)^ν / ν!) X₋^ν ε` through a primitive `ε`.
#[derive(Clone, Debug, Serialize)]
pub struct LadderSequence {
    pub p: u32,
    pub m: usize,
    pub r: usize,
    /// `m − r` mod p.
    pub lambda: u32,
    pub sigma: i64,
    /// Nonzero entries `ε₀, ε₁, …`.
    #[serde(serialize_with = "exprs")]
    pub entries: Vec<Multivector>,
    /// `true` if the string ended on a zero rather than at `ν = p − 1`.
    pub terminated_by_zero: bool,
    pub relations_hold: bool,
}

fn exprs<S: serde::Serializer>(v: &[Multivector], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Multivector::to_expr))
}

impl SymplecticSpace {
    pub fn ladder(&self, eps: &Multivector) -> Result<LadderSequence> {
        self.check(eps)?;
        let r = eps.homogeneous_degree()?.ok_or(Error::ZeroClass)?;
        if r > self.m {
            return Err(Error::DegreeOutOfRange {
                degree: r as i64,
                min: 0,
                max: self.m as i64,
            });
        }
        if !self.x_plus(eps)?.is_zero() {
            return Err(Error::NotPrimitive);
        }
        let p = self.p;
        let lambda = p.reduce(self.m as i64 - r as i64);

        let mut entries = vec![eps.clone()];
        let mut terminated_by_zero = false;
        // ε_{ν+1} = −X₋ε_ν / (ν+1)
        for nu in 0..(p.get() as usize - 1) {
            let next = self.x_minus(&entries[nu])?.scale(p.neg(p.inv(p.reduce(nu as i64 + 1))));
            if next.is_zero() {
                terminated_by_zero = true;
                break;
            }
            entries.push(next);
        }

        let mut ok = true;
        for (nu, e) in entries.iter().enumerate() {
            let nu_i = nu as i64;
            ok &= self.h_op(e)? == e.scale(p.reduce(lambda as i64 - 2 * nu_i));
            let up = entries.get(nu + 1).cloned().unwrap_or_else(|| self.zero());
            ok &= self.x_minus(e)? == up.scale(p.reduce(-(nu_i + 1)));
            let down = if nu == 0 { self.zero() } else { entries[nu - 1].clone() };
            ok &= self.x_plus(e)? == down.scale(p.reduce(lambda as i64 - nu_i + 1));
        }

        Ok(LadderSequence {
            p: p.get(),
            m: self.m,
            r,
            lambda,
            sigma: SIGMA,
            entries,
            terminated_by_zero,
            relations_hold: ok,
        })
    }
}
