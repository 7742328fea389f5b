//! The check registry: identifiers, grid kinds, one-line anchors, and the
//! statement each check tests.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::ClassicalId;
use crate::qseries::corollary::Corollary;

/// What a check iterates over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grid {
    /// `n` together with the configured `d, r`.
    Shape,
    /// `n` alone.
    N,
    /// Primes `p`.
    Prime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "String")]
pub enum CheckId {
    TheoremGeneral,
    Watson,
    La1,
    La2,
    La3,
    Thm2,
    Crt,
    Lhospital,
    Corollary(Corollary),
    Bridge,
    Classical(ClassicalId),
}

impl From<CheckId> for String {
    fn from(c: CheckId) -> String {
        c.id().to_string()
    }
}

impl CheckId {
    pub fn all() -> Vec<CheckId> {
        let mut v = vec![
            CheckId::TheoremGeneral,
            CheckId::Watson,
            CheckId::La1,
            CheckId::La2,
            CheckId::La3,
            CheckId::Thm2,
            CheckId::Crt,
            CheckId::Lhospital,
        ];
        v.extend(Corollary::ALL.map(CheckId::Corollary));
        v.push(CheckId::Bridge);
        v.extend(ClassicalId::ALL.map(CheckId::Classical));
        v
    }

    pub fn id(self) -> &'static str {
        match self {
            CheckId::TheoremGeneral => "theorem_general",
            CheckId::Watson => "watson",
            CheckId::La1 => "la1",
            CheckId::La2 => "la2",
            CheckId::La3 => "la3",
            CheckId::Thm2 => "thm2",
            CheckId::Crt => "crt",
            CheckId::Lhospital => "lhospital",
            CheckId::Corollary(c) => c.id(),
            CheckId::Bridge => "bridge",
            CheckId::Classical(c) => c.id(),
        }
    }

    pub fn grid(self) -> Grid {
        match self {
            CheckId::TheoremGeneral
            | CheckId::La1
            | CheckId::La2
            | CheckId::La3
            | CheckId::Thm2
            | CheckId::Lhospital => Grid::Shape,
            CheckId::Watson | CheckId::Crt | CheckId::Corollary(_) => Grid::N,
            CheckId::Bridge | CheckId::Classical(_) => Grid::Prime,
        }
    }

    /// Whether the check draws free parameters from the sampler.
    pub fn sampled(self) -> bool {
        matches!(
            self,
            CheckId::TheoremGeneral
                | CheckId::Watson
                | CheckId::La1
                | CheckId::La2
                | CheckId::La3
                | CheckId::Thm2
                | CheckId::Crt
        )
    }

    /// Grid used when the configuration gives none. Shape checks pair
    /// these `n` with the configured `d, r`.
    pub fn default_grid(self) -> Vec<i64> {
        match self {
            CheckId::TheoremGeneral => vec![2, 5, 8, 11, 14],
            CheckId::Watson => vec![0, 1, 2, 3, 4],
            CheckId::La1 | CheckId::La2 | CheckId::La3 | CheckId::Thm2 | CheckId::Lhospital => {
                vec![2, 5, 8]
            }
            CheckId::Crt => vec![2, 4, 5],
            CheckId::Corollary(Corollary::Equ3) => vec![5, 8, 11, 14],
            CheckId::Corollary(Corollary::Equ4) => vec![4, 7, 10],
            CheckId::Corollary(_) => vec![2, 5, 8, 11],
            CheckId::Bridge => vec![2, 5, 11],
            CheckId::Classical(c) => c.default_primes().into_iter().map(|p| p as i64).collect(),
        }
    }

    /// Short anchor shown by `list-checks`.
    pub fn anchor(self) -> &'static str {
        match self {
            CheckId::TheoremGeneral => "general theorem, n ≡ r (mod d), r = ±1, modulo [n]Φ_n(q)^3",
            CheckId::Watson => "Watson's terminating 8φ7 transformation",
            CheckId::La1 => "six-parameter sum modulo Φ_n(q)(1-aq^n)(a-q^n)",
            CheckId::La2 => "six-parameter sum modulo b-q^n",
            CheckId::La3 => "six-parameter sum truncated at m1 and n-1, modulo [n]",
            CheckId::Thm2 => "parametric theorem with Q_q(a,n), modulo Φ_n(q)^2(1-aq^n)(a-q^n)",
            CheckId::Crt => "Chinese remainder step joining the a- and b-congruences",
            CheckId::Lhospital => "limit a -> 1 of Q_q(a,n) by L'Hospital's rule",
            CheckId::Corollary(c) => match c {
                Corollary::C22 => "c = e = 1 specialization, q^(9k), modulo [n]Φ_n(q)^3",
                Corollary::C23 => {
                    "c = q^4, e = q^(5/2) specialization, q^(5k/2), modulo [n]Φ_n(q)^3"
                }
                Corollary::C24 => "q -> q^2, c = e = q^7, modulo [n]_{q^2}Φ_n(q^2)^3",
                Corollary::C26 => "ce = q^4 specialization, q^(5k), modulo [n]Φ_n(q)^3",
                Corollary::Equ3 => "partial q-analogue with q^(4k), ≡ 0 modulo Φ_n(q)",
                Corollary::Equ4 => {
                    "conjecture: sixth-power sum with q^(9k), ≡ 0 modulo [n]Φ_n(q)^3"
                }
            },
            CheckId::Bridge => "n = p, q -> 1 limits of the c26 and c24 sums",
            CheckId::Classical(c) => match c {
                ClassicalId::VanHammeD2 => "Van Hamme (D.2), p ≡ 1 (mod 6), modulo p^4",
                ClassicalId::LongRamakrishna => "Long-Ramakrishna extension of (D.2), modulo p^6",
                ClassicalId::LiuE4 => "Liu (E.4), p >= 5, modulo p^5",
                ClassicalId::Equ1 => "(-1/3)^4_k (1)_2k sum ≡ p modulo p^3",
                ClassicalId::Equ2 => "(-1/3)^4_k (1)_2k sum with B_{p-2}(1/3), modulo p^4",
                ClassicalId::Equ7 => "(6k-1)^3 (-1/3)^4_k/k!^4 sum with Γ_p(2/3)^2, modulo p^4",
                ClassicalId::Equ8 => "(6k-1) (-1/3)^4_k/k!^4 sum with Γ_p(2/3)^2, modulo p^4",
                ClassicalId::CombinedRare => {
                    "(6k-1)(18k^2-6k+1) (-1/3)^4_k/k!^4 sum ≡ 0 modulo p^4"
                }
                ClassicalId::Lehmer => "Lehmer: sum 1/k^2 up to p/3 with B_{p-2}(1/3), modulo p",
                ClassicalId::Equ9 => "equality of the (1)_2k/(-2/3)_2k and (1/2)_k/(1/6)_k sums",
            },
        }
    }

    /// The statement being tested.
    pub fn statement(self) -> &'static str {
        match self {
            CheckId::TheoremGeneral => concat!(
                "For n > 1, d >= 2, n ≡ r (mod d), r ∈ {1, -1} and W = (n-r)/d or n-1, modulo [n]Φ_n(q)^3:\n",
                "  sum_{k=0}^{W} [2dk+r] (q^r;q^d)_k^4 (cq^r, eq^r;q^d)_k / ((q^d;q^d)_k^4 (q^d/c, q^d/e;q^d)_k) (ce)^(-k) q^((2d-3r)k)\n",
                "  ≡ [n] q^(r(r-n)/d) / (q^d;q^d)_N (1 - [n]^2 sum_{i=1}^{N} q^(di)/[di]^2)\n",
                "    × sum_{k=0}^{N} (q^(2r+dk);q^d)_(N-k) (q^(d-r)/ce;q^d)_k (q^r;q^d)_k^3 / (q^d/c, q^d/e, q^d;q^d)_k q^(dk),\n",
                "with N = (n-r)/d. Sampled c, e are u q^s with rational u.",
            ),
            CheckId::Watson => concat!(
                "Terminating Watson transformation, exact equality of rational functions:\n",
                "  8φ7[a, q sqrt(a), -q sqrt(a), b, c, d, e, q^-n; sqrt(a), -sqrt(a), aq/b, aq/c, aq/d, aq/e, aq^(n+1); q, a^2 q^(n+2)/(bcde)]\n",
                "  = (aq, aq/(de);q)_n / (aq/d, aq/e;q)_n 4φ3[aq/(bc), d, e, q^-n; aq/b, aq/c, deq^(-n)/a; q, q].",
            ),
            CheckId::La1 => concat!(
                "For gcd(r, d) = 1, n ≡ r (mod d), n+d-nd <= r <= n, modulo Φ_n(q)(1-aq^n)(a-q^n):\n",
                "  sum_{k=0}^{N} [2dk+r] (q^r, cq^r, eq^r, q^r/b, aq^r, q^r/a;q^d)_k / (q^d, q^d/c, q^d/e, bq^d, q^d/a, aq^d;q^d)_k (b/ce)^k q^((2d-3r)k)\n",
                "  ≡ [n] (b/q^r)^N (q^(2r)/b;q^d)_N / (bq^d;q^d)_N\n",
                "    × sum_{k=0}^{N} (q^(d-r)/ce, q^r/b, aq^r, q^r/a;q^d)_k / (q^d, q^d/c, q^d/e, q^(2r)/b;q^d)_k q^(dk).\n",
                "Checked as exact vanishing at a = q^n and a = q^-n plus Φ_n divisibility at the sampled a.",
            ),
            CheckId::La2 => concat!(
                "For n ≡ r (mod d), r = ±1, W = N or n-1, modulo b - q^n (checked as equality at b = q^n):\n",
                "  sum_{k=0}^{W} (six-parameter summand)\n",
                "  ≡ [n] (q^r, q^(d-r);q^d)_N / (q^d/a, aq^d;q^d)_N\n",
                "    × sum_{k=0}^{N} (q^(d-r)/ce, aq^r, q^r/a, q^r/b;q^d)_k / (q^d, q^d/c, q^d/e, q^(2r)/b;q^d)_k q^(dk).",
            ),
            CheckId::La3 => concat!(
                "For gcd(d, n) = 1, modulo [n], the six-parameter sum truncated at m1 and at n-1 vanishes,\n",
                "where 0 <= m1 <= n-1 and d m1 ≡ -r (mod n). Sample 0 uses a = b = 1.",
            ),
            CheckId::Thm2 => concat!(
                "For n ≡ r (mod d), r = ±1, modulo Φ_n(q)^2(1-aq^n)(a-q^n):\n",
                "  sum_{k=0}^{N} [2dk+r] (q^r;q^d)_k^2 (cq^r, eq^r, aq^r, q^r/a;q^d)_k / ((q^d;q^d)_k^2 (q^d/c, q^d/e, q^d/a, aq^d;q^d)_k) (q^(2d-3r)/ce)^k\n",
                "  ≡ [n] Q_q(a,n) sum_{k=0}^{N} (q^(2r+dk);q^d)_(N-k) (q^(d-r)/ce, aq^r, q^r/a, q^r;q^d)_k / (q^d, q^d/c, q^d/e;q^d)_k q^(dk),\n",
                "  Q_q(a,n) = q^(r(r-n)/d) (1-aq^n)(a-q^n)/(1-a)^2 {1/(q^d;q^d)_N - (q^d;q^d)_N/(aq^d, q^d/a;q^d)_N}.",
            ),
            CheckId::Crt => concat!(
                "With A = (1-aq^n)(a-q^n) and B = b-q^n, the idempotents\n",
                "  e_a = (b-q^n)(ab-1-a^2+aq^n)/((a-b)(1-ab)), e_b = (1-aq^n)(a-q^n)/((a-b)(1-ab))\n",
                "satisfy e_a ≡ 1 (mod A), e_a ≡ 0 (mod B), e_b ≡ 1 (mod B), e_b ≡ 0 (mod A), e_a + e_b = 1,\n",
                "and (1-q^n)(1+a^2-a-aq^n) = (1-a)^2 + (1-aq^n)(a-q^n) holds identically.",
            ),
            CheckId::Lhospital => concat!(
                "lim_{a->1} (1-aq^n)(a-q^n)/(1-a)^2 {1/(q^d;q^d)_N - (q^d;q^d)_N/(aq^d, q^d/a;q^d)_N}\n",
                "  = -[n]^2/(q^d;q^d)_N sum_{i=1}^{N} q^(di)/[di]^2,\n",
                "checked pointwise in a at rational q and as an ε-expansion at a = 1+ε; both routes must agree.",
            ),
            CheckId::Corollary(c) => match c {
                Corollary::C22 => concat!(
                    "For n ≡ 2 (mod 3), M = (n+1)/3 or n-1, modulo [n]Φ_n(q)^3:\n",
                    "  sum_{k=0}^{M} [6k-1] (q^-1;q^3)_k^6 / (q^3;q^3)_k^6 q^(9k)\n",
                    "  ≡ [n] q^N (q^-2;q^3)_N / (q^3;q^3)_N (1 - [n]^2 sum_{i=1}^{N} q^(3i)/[3i]^2)\n",
                    "    × sum_{k=0}^{N} (q^4;q^3)_k (q^-1;q^3)_k^3 / ((q^3;q^3)_k^3 (q^-2;q^3)_k) q^(3k),  N = (n+1)/3.",
                ),
                Corollary::C23 => concat!(
                    "For n ≡ 2 (mod 3), M = (n+1)/3 or n-1, modulo [n]Φ_n(q)^3 (read in x with q = x^D, D = 2 or 4):\n",
                    "  sum_{k=0}^{M} [6k-1] (q^-1;q^3)_k^3 (q^(3/2);q^3)_k / ((q^3;q^3)_k^3 (q^(1/2);q^3)_k) q^(5k/2)\n",
                    "  ≡ [n] q^N (q^-2;q^3)_N / (q^3;q^3)_N (1 - [n]^2 sum_{i=1}^{N} q^(3i)/[3i]^2)\n",
                    "    × sum_{k=0}^{N} (q^(-5/2);q^3)_k (q^-1;q^3)_k^2 / (q^3, q^(1/2), q^-2;q^3)_k q^(3k).",
                ),
                Corollary::C24 => concat!(
                    "For n ≡ 2 (mod 3), M = (n+1)/3 or n-1, modulo [n]_{q^2}Φ_n(q^2)^3:\n",
                    "  sum_{k=0}^{M} [6k-1]_{q^2} [6k-1]^2 (q^-2;q^6)_k^4 / (q^6;q^6)_k^4 q^(4k)\n",
                    "  ≡ -2[n]_{q^2} q^((2n-7)/3) (q^-4;q^6)_N / ((1+q^-2)(q^6;q^6)_N) (1 - [n]_{q^2}^2 sum_{i=1}^{N} q^(6i)/[3i]_{q^2}^2).",
                ),
                Corollary::C26 => concat!(
                    "For n ≡ 2 (mod 3), M = (n+1)/3 or n-1, modulo [n]Φ_n(q)^3:\n",
                    "  sum_{k=0}^{M} [6k-1] (q^-1;q^3)_k^4 / (q^3;q^3)_k^4 q^(5k)\n",
                    "  ≡ [n] q^N (q^-2;q^3)_N / (q^3;q^3)_N (1 - [n]^2 sum_{i=1}^{N} q^(3i)/[3i]^2).",
                ),
                Corollary::Equ3 => concat!(
                    "For n > 2, n ≡ 2 (mod 3):\n",
                    "  sum_{k=0}^{(n+1)/3} [6k-1] (q^-1;q^3)_k^4 (q^3;q^3)_2k / ((q^3;q^3)_k^4 (q^-2;q^3)_2k) q^(4k) ≡ 0 (mod Φ_n(q)).",
                ),
                Corollary::Equ4 => concat!(
                    "Conjecture. For n > 1, n ≡ 1 (mod 3):\n",
                    "  sum_{k=0}^{n-1} [6k-1] (q^-1;q^3)_k^6 / (q^3;q^3)_k^6 q^(9k) ≡ 0 (mod [n]Φ_n(q)^3).",
                ),
            },
            CheckId::Bridge => concat!(
                "For n = p prime, p ≡ 2 (mod 3), each summand of\n",
                "  sum_{k=0}^{(p+1)/3} [6k-1] (q^-1;q^3)_k^4/(q^3;q^3)_k^4 q^(5k)   and\n",
                "  sum_{k=0}^{(p+1)/3} [6k-1]_{q^2}[6k-1]^2 (q^-2;q^6)_k^4/(q^6;q^6)_k^4 q^(4k)\n",
                "tends as q -> 1 to the summand of sum (6k-1)^e (-1/3)_k^4/k!^4 with e = 1 and e = 3;\n",
                "the totals, taken on the factored and on the reduced form, equal the exact classical sums.",
            ),
            CheckId::Classical(c) => match c {
                ClassicalId::VanHammeD2 => concat!(
                    "For p ≡ 1 (mod 6):\n",
                    "  sum_{k=0}^{(p-1)/3} (6k+1) (1/3)_k^6/k!^6 ≡ -p Γ_p(1/3)^9 (mod p^4).",
                ),
                ClassicalId::LongRamakrishna => concat!(
                    "  sum_{k=0}^{p-1} (6k+1) (1/3)_k^6/k!^6 ≡ -p Γ_p(1/3)^9 (mod p^6) if p ≡ 1 (mod 6),\n",
                    "                                       ≡ -(10/27) p^4 Γ_p(1/3)^9 (mod p^6) if p ≡ 5 (mod 6).",
                ),
                ClassicalId::LiuE4 => concat!(
                    "For p >= 5:\n",
                    "  sum_{k=0}^{p-1} (6k-1) (-1/3)_k^6/k!^6 ≡ 140 p^4 Γ_p(2/3)^9 (mod p^5) if p ≡ 1 (mod 6),\n",
                    "                                        ≡ 378 p Γ_p(2/3)^9 (mod p^5) if p ≡ 5 (mod 6).",
                ),
                ClassicalId::Equ1 => concat!(
                    "For p ≡ 2 (mod 3):\n",
                    "  sum_{k=0}^{(p+1)/3} (6k-1) (-1/3)_k^4 (1)_2k / ((1)_k^4 (-2/3)_2k) ≡ p (mod p^3).",
                ),
                ClassicalId::Equ2 => concat!(
                    "For odd p ≡ 2 (mod 3):\n",
                    "  sum_{k=0}^{(p+1)/3} (6k-1) (-1/3)_k^4 (1)_2k / ((1)_k^4 (-2/3)_2k) ≡ p - p^3 (B_{p-2}(1/3)/9 - 2) (mod p^4).",
                ),
                ClassicalId::Equ7 => concat!(
                    "For p ≡ 2 (mod 3), modulo p^4:\n",
                    "  sum_{k=0}^{(p+1)/3} (6k-1)^3 (-1/3)_k^4/k!^4\n",
                    "  ≡ (-1)^((p-2)/3) p Γ_p(2/3)^2 (1 - p^2 - p^2/18 (-3/p) B_{p-2}(1/3)).",
                ),
                ClassicalId::Equ8 => concat!(
                    "For p ≡ 2 (mod 3), modulo p^4:\n",
                    "  sum_{k=0}^{(p+1)/3} (6k-1) (-1/3)_k^4/k!^4\n",
                    "  ≡ (-1)^((p+1)/3) p Γ_p(2/3)^2 (1 - p^2 - p^2/18 (-3/p) B_{p-2}(1/3)).",
                ),
                ClassicalId::CombinedRare => concat!(
                    "For p ≡ 2 (mod 3):\n",
                    "  sum_{k=0}^{(p+1)/3} (6k-1)(18k^2-6k+1) (-1/3)_k^4/k!^4 ≡ 0 (mod p^4).",
                ),
                ClassicalId::Lehmer => concat!(
                    "For p >= 5:\n",
                    "  sum_{k=1}^{floor(p/3)} 1/k^2 ≡ (1/2) (-3/p) B_{p-2}(1/3) (mod p).",
                ),
                ClassicalId::Equ9 => concat!(
                    "For p ≡ 2 (mod 3), exact equality:\n",
                    "  sum_{k=0}^{(p+1)/3} (6k-1) (-1/3)_k^4 (1)_2k / ((1)_k^4 (-2/3)_2k)\n",
                    "  = sum_{k=0}^{(p+1)/3} (6k-1) (-1/3)_k^3 (1/2)_k / ((1)_k^3 (1/6)_k).\n",
                    "p = 2 is reported as informational.",
                ),
            },
        }
    }

    /// Extra note shown by `explain` for checks with a known status.
    pub fn status(self) -> Option<&'static str> {
        match self {
            CheckId::Corollary(Corollary::Equ4) => Some("conjecture"),
            _ => None,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckId::all()
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown check `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_and_are_unique() {
        let all = CheckId::all();
        assert_eq!(all.len(), 25);
        for c in &all {
            assert_eq!(c.id().parse::<CheckId>().unwrap(), *c);
        }
        let mut ids: Vec<_> = all.iter().map(|c| c.id()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 25);
        assert!("nope".parse::<CheckId>().is_err());
    }
}
