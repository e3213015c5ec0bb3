//! The congruence statement registry: tags, target moduli, series
//! families, admissibility predicates, and case enumeration.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::is_prime;
use crate::hyper::SeriesFamily;

/// Identifies one verifiable congruence. The first ten are the headline
/// statements (sums over k = 0..p-1 of a weighted power-ratio term against
/// a closed form); the L-tags are the finite auxiliary congruences used to
/// prove them.
///
/// Tag ordering is the canonical report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatementId {
    /// Quintic sum vanishes mod p^4 (p congruent to 2r mod 5).
    GlsP4,
    /// Quintic sum mod p^5 with the 12p^4/25 closed form (p congruent to
    /// 2r mod 5).
    WangP5,
    /// Quintic sum mod p^5 with the p-scaled closed form (p congruent to
    /// r mod 5).
    T1P5,
    /// Sextic r = 1 sum mod p^4, branching on p mod 6.
    VhP4,
    /// Sextic r = 1 sum mod p^6, branching on p mod 6.
    LrP6,
    /// Sextic r = -1 sum mod p^5, branching on p mod 6.
    LiuP5,
    /// Sextic sum mod p^5, sign (-1)^r, scale 10p^4/27 (p congruent to
    /// -r mod 3); proven.
    C1iP5,
    /// The same statement pushed to mod p^6; conjectural.
    C1iP6,
    /// Sextic sum mod p^5, sign (-1)^(r+1), scale p (p congruent to r
    /// mod 3); proven.
    T2P5,
    /// The same statement pushed to mod p^6; conjectural.
    C1iiP6,
    /// Quintic partial sum to (p-r)/5 vanishes mod p.
    L31,
    /// Quintic partial sum weighted by the quartic harmonic difference
    /// vanishes mod p.
    L32,
    /// Quintic harmonic square-sum rearrangement mod p^2.
    L33,
    /// Sextic partial sum to (p-r)/3 vanishes mod p.
    L41,
    /// Sextic partial sum weighted by the quartic harmonic difference
    /// vanishes mod p.
    L42,
    /// Sextic harmonic square-sum rearrangement mod p^2.
    L43,
}

use StatementId::*;

impl StatementId {
    pub const ALL: [StatementId; 16] = [
        GlsP4, WangP5, T1P5, VhP4, LrP6, LiuP5, C1iP5, C1iP6, T2P5, C1iiP6, L31, L32, L33, L41,
        L42, L43,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            GlsP4 => "GLS_P4",
            WangP5 => "WANG_P5",
            T1P5 => "T1_P5",
            VhP4 => "VH_P4",
            LrP6 => "LR_P6",
            LiuP5 => "LIU_P5",
            C1iP5 => "C1I_P5",
            C1iP6 => "C1I_P6",
            T2P5 => "T2_P5",
            C1iiP6 => "C1II_P6",
            L31 => "L31",
            L32 => "L32",
            L33 => "L33",
            L41 => "L41",
            L42 => "L42",
            L43 => "L43",
        }
    }

    /// The exponent of the statement's modulus p^target.
    pub fn target(&self) -> u32 {
        match self {
            GlsP4 | VhP4 => 4,
            WangP5 | T1P5 | LiuP5 | C1iP5 | T2P5 => 5,
            LrP6 | C1iP6 | C1iiP6 => 6,
            L31 | L32 | L41 | L42 => 1,
            L33 | L43 => 2,
        }
    }

    pub fn is_lemma(&self) -> bool {
        matches!(self, L31 | L32 | L33 | L41 | L42 | L43)
    }

    /// Conjectural statements are reported but never fail a run's exit
    /// status; everything else is a proven claim.
    pub fn is_conjectural(&self) -> bool {
        matches!(self, C1iP6 | C1iiP6)
    }

    /// The weighted series family: which sum the statement is about.
    pub fn family(&self, r: i64) -> Result<SeriesFamily> {
        match self {
            GlsP4 | WangP5 | T1P5 | L31 | L32 | L33 => SeriesFamily::quintic(r),
            VhP4 | LrP6 => SeriesFamily::sextic(1),
            LiuP5 => SeriesFamily::sextic(-1),
            C1iP5 | C1iP6 | T2P5 | C1iiP6 | L41 | L42 | L43 => SeriesFamily::sextic(r),
        }
    }

    /// Whether (p, r) satisfies the statement's hypotheses exactly.
    ///
    /// All statements require an odd prime; the fixed-family statements
    /// additionally pin r itself (their sums do not depend on a free r).
    pub fn admissible(&self, p: u64, r: i64) -> bool {
        if p < 3 || !is_prime(p) {
            return false;
        }
        let pi = p as i64;
        match self {
            // r <= 1 odd, coprime to 5; p == 2r (mod 5); 2p >= 5 - r.
            GlsP4 | WangP5 => {
                r <= 1
                    && r.rem_euclid(2) == 1
                    && r % 5 != 0
                    && (pi - 2 * r).rem_euclid(5) == 0
                    && 2 * pi >= 5 - r
            }
            // r <= 1 odd, coprime to 5; p == r (mod 5); 2p >= 5 - 3r.
            T1P5 | L31 | L32 | L33 => {
                r <= 1
                    && r.rem_euclid(2) == 1
                    && r % 5 != 0
                    && (pi - r).rem_euclid(5) == 0
                    && 2 * pi >= 5 - 3 * r
            }
            VhP4 | LrP6 => p >= 5 && r == 1,
            LiuP5 => p >= 5 && r == -1,
            // r <= 1 coprime to 3; p >= 5; p == -r (mod 3); p >= 3 - r.
            C1iP5 | C1iP6 => {
                r <= 1 && r % 3 != 0 && p >= 5 && (pi + r).rem_euclid(3) == 0 && pi >= 3 - r
            }
            // r <= 1 coprime to 3; p >= 7; p == r (mod 3); p >= 3 - 2r.
            T2P5 | C1iiP6 | L41 | L42 | L43 => {
                r <= 1 && r % 3 != 0 && p >= 7 && (pi - r).rem_euclid(3) == 0 && pi >= 3 - 2 * r
            }
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for StatementId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StatementId::ALL
            .iter()
            .copied()
            .find(|id| id.tag() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown statement tag {s:?}")))
    }
}

impl Serialize for StatementId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

/// All admissible (p, r) pairs with p prime <= p_max and r_min <= r <= 1,
/// sorted ascending by (p, r).
pub fn enumerate_cases(statement: StatementId, p_max: u64, r_min: i64) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    for p in 3..=p_max.max(2) {
        if !is_prime(p) {
            continue;
        }
        for r in r_min..=1 {
            if statement.admissible(p, r) {
                out.push((p, r));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for id in StatementId::ALL {
            assert_eq!(id.tag().parse::<StatementId>().unwrap(), id);
        }
        assert!("T1_p5".parse::<StatementId>().is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_cases(T1P5, 11, -3), vec![(7, -3), (11, 1)]);
        assert_eq!(enumerate_cases(T2P5, 7, -2), vec![(7, -2), (7, 1)]);
        for id in StatementId::ALL {
            assert!(enumerate_cases(id, 2, -9).is_empty());
        }
    }

    #[test]
    fn admissibility_spot_checks() {
        // Quintic 2r-class statement admits the boundary case (3, -1):
        // 3 == -2 == 2(-1) (mod 5) and 2*3 >= 6.
        assert!(GlsP4.admissible(3, -1));
        assert!(WangP5.admissible(3, -1));
        assert!(!GlsP4.admissible(3, 1), "p = 3 is not 2 mod 5");
        assert!(GlsP4.admissible(7, 1));
        // The p-class statement needs 2p >= 5 - 3r.
        assert!(T1P5.admissible(7, -3));
        assert!(!T1P5.admissible(7, -8), "even r");
        assert!(!T1P5.admissible(11, -9), "22 < 32");
        assert!(T1P5.admissible(31, -9));
        // Fixed-family statements pin p >= 5 and their own r.
        assert!(VhP4.admissible(5, 1) && !VhP4.admissible(5, -1));
        assert!(LiuP5.admissible(5, -1) && !LiuP5.admissible(3, -1));
        // Sextic branch (i): p == -r (mod 3), p >= 3 - r.
        assert!(C1iP5.admissible(5, 1) && C1iP5.admissible(5, -2));
        assert!(!C1iP5.admissible(5, -4), "5 == -(-4) fails: 1 != 2 mod 3");
        assert!(C1iP5.admissible(7, -4) && !C1iP5.admissible(7, 1));
        // Sextic branch (ii): p == r (mod 3), p >= 7, p >= 3 - 2r.
        assert!(T2P5.admissible(7, -2) && !T2P5.admissible(7, -5), "7 < 13");
        assert!(T2P5.admissible(13, -5));
        assert!(!T2P5.admissible(5, -1), "p >= 7 required");
        // Composite or even p is never admissible.
        for id in StatementId::ALL {
            assert!(!id.admissible(9, 1) && !id.admissible(2, 1));
        }
    }

    #[test]
    fn targets_and_flags() {
        assert_eq!(GlsP4.target(), 4);
        assert_eq!(LrP6.target(), 6);
        assert_eq!(L33.target(), 2);
        assert_eq!(L41.target(), 1);
        assert!(L33.is_lemma() && !T1P5.is_lemma());
        assert!(C1iP6.is_conjectural() && !C1iP5.is_conjectural());
        let conjectural: Vec<_> = StatementId::ALL.iter().filter(|s| s.is_conjectural()).collect();
        assert_eq!(conjectural.len(), 2);
    }

    #[test]
    fn families_match_statements() {
        assert_eq!(T1P5.family(-3).unwrap(), SeriesFamily::quintic(-3).unwrap());
        assert_eq!(VhP4.family(1).unwrap(), SeriesFamily::sextic(1).unwrap());
        assert_eq!(LiuP5.family(-1).unwrap(), SeriesFamily::sextic(-1).unwrap());
        assert_eq!(T2P5.family(-2).unwrap(), SeriesFamily::sextic(-2).unwrap());
        assert!(T1P5.family(-2).is_err(), "even r has no quintic family");
    }
}
