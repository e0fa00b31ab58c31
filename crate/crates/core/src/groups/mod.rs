//! The catalog of finite groups with a cyclic subgroup of index two, in the
//! normal form `Z_s x (Z_r x| H)` where `r, s` are coprime odd integers and
//! `H` is a 2-group with a cyclic subgroup of index two (Burnside's list).
//!
//! Every such group carries a distinguished abelian normal subgroup `A` of
//! index two, cyclic of order `s r 2^(n-1)`; a chosen element `b` outside
//! `A` acts on it by an order-two automorphism and squares into `A`. That
//! data is all the representation machinery needs.

pub mod rep;

pub use rep::{build_rep, verify_relations, MonomialRep};

use crate::abelian::{AbelianGroup, Automorphism, GroupElement};
use crate::{gcd, lcm, Error, Result};
use serde::{Deserialize, Serialize};

/// The 2-group factor `H`, following Burnside's classification of 2-groups
/// with a cyclic subgroup of index two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `H = Z_{2^n}`, `n >= 1`.
    Cyclic2n,
    /// `H = Z_2 x Z_{2^(n-1)}`, `n >= 2`.
    Z2xZ2n1,
    /// `H = M_{2^n}`, `n >= 4` here; the order-16 one is the smallest
    /// modular 2-group distinct from a dihedral group.
    Modular,
    /// `H = D_{2^n}`, `n >= 3`; the order-8 dihedral group enters through
    /// this family even though it also arises as the modular group of
    /// order 8.
    Dihedral,
    /// `H = SD_{2^n}`, `n >= 4`.
    Semidihedral,
    /// `H = Dic_{2^n}`, `n >= 3`; `n = 2` collapses to `Z_2 x Z_2`.
    Dicyclic,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Cyclic2n,
        Family::Z2xZ2n1,
        Family::Modular,
        Family::Dihedral,
        Family::Semidihedral,
        Family::Dicyclic,
    ];

    fn rank(self) -> usize {
        Family::ALL.iter().position(|f| *f == self).unwrap()
    }

    /// Smallest `n` for which this family is the canonical encoding.
    fn min_n(self) -> u32 {
        match self {
            Family::Cyclic2n => 1,
            Family::Z2xZ2n1 => 2,
            Family::Modular => 4,
            Family::Dihedral => 3,
            Family::Semidihedral => 4,
            Family::Dicyclic => 3,
        }
    }
}

/// A group `Z_s x (Z_r x| H)` in canonical form. Degenerate parameters
/// normalize on construction: `Dihedral n=1 -> Cyclic2n n=1`,
/// `Dihedral n=2 -> Z2xZ2n1 n=2`, `Dicyclic n=2 -> Z2xZ2n1 n=2`
/// (`Dic_4 = Z_2 x Z_2`) and `Modular n=3 -> Dihedral n=3` (`M_8 = D_8`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupSpec {
    family: Family,
    n: u32,
    r: u32,
    s: u32,
}

#[derive(Deserialize)]
struct GroupSpecRaw {
    family: Family,
    n: u32,
    #[serde(default = "one")]
    r: u32,
    #[serde(default = "one")]
    s: u32,
}

fn one() -> u32 {
    1
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GroupSpecRaw::deserialize(d)?;
        GroupSpec::new(raw.family, raw.n, raw.r, raw.s).map_err(serde::de::Error::custom)
    }
}

impl GroupSpec {
    pub fn new(family: Family, n: u32, r: u32, s: u32) -> Result<Self> {
        if r % 2 == 0 || s % 2 == 0 || r == 0 || s == 0 {
            return Err(Error::InvalidSpec(
                "parameters r and s must be odd positive integers".into(),
            ));
        }
        if gcd(r as u64, s as u64) != 1 {
            return Err(Error::InvalidSpec("r and s must be coprime".into()));
        }
        if n >= 30 {
            return Err(Error::InvalidSpec("2-power exponent is too large".into()));
        }
        let (family, n) = match (family, n) {
            (Family::Cyclic2n, n) if n >= 1 => (Family::Cyclic2n, n),
            (Family::Z2xZ2n1, n) if n >= 2 => (Family::Z2xZ2n1, n),
            (Family::Modular, 3) => (Family::Dihedral, 3),
            (Family::Modular, n) if n >= 4 => (Family::Modular, n),
            (Family::Dihedral, 1) => (Family::Cyclic2n, 1),
            (Family::Dihedral, 2) => (Family::Z2xZ2n1, 2),
            (Family::Dihedral, n) if n >= 3 => (Family::Dihedral, n),
            (Family::Semidihedral, n) if n >= 4 => (Family::Semidihedral, n),
            (Family::Dicyclic, 2) => (Family::Z2xZ2n1, 2),
            (Family::Dicyclic, n) if n >= 3 => (Family::Dicyclic, n),
            (family, n) => {
                return Err(Error::InvalidSpec(format!(
                    "family {family:?} is not defined at n = {n}"
                )))
            }
        };
        Ok(GroupSpec { family, n, r, s })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u64 {
        self.s as u64 * self.r as u64 * (1u64 << self.n)
    }

    pub fn is_cyclic(&self) -> bool {
        self.family == Family::Cyclic2n && self.r == 1
    }

    /// Short human-readable name, used in reports.
    pub fn name(&self) -> String {
        let inner = match self.family {
            Family::Cyclic2n if self.n == 1 => format!("D_{}", 2 * self.r),
            Family::Cyclic2n if self.r == 1 => format!("Z_{}", 1u64 << self.n),
            Family::Cyclic2n => format!("Z_{}:Z_{}", self.r, 1u64 << self.n),
            Family::Z2xZ2n1 if self.r == 1 => {
                format!("Z_2xZ_{}", 1u64 << (self.n - 1))
            }
            Family::Z2xZ2n1 => format!("Z_{}xD_{}", 1u64 << (self.n - 1), 2 * self.r),
            Family::Modular => format!("M_{}", self.r as u64 * (1u64 << self.n)),
            Family::Dihedral => format!("D_{}", self.r as u64 * (1u64 << self.n)),
            Family::Semidihedral => format!("SD_{}", self.r as u64 * (1u64 << self.n)),
            Family::Dicyclic => format!("Dic_{}", self.r as u64 * (1u64 << self.n)),
        };
        if self.s > 1 {
            format!("Z_{}x{}", self.s, inner)
        } else {
            inner
        }
    }

    /// The distinguished index-two data: the cyclic abelian normal subgroup
    /// `A` (as its character lattice), the twist induced by conjugation with
    /// `b`, the element `b^2` of `A`, and the root-of-unity order
    /// `m = lcm(exp A, 4)` every scalar is expressed in.
    pub fn index_two(&self) -> Result<Index2> {
        let mut factors = vec![];
        let mut mult: Vec<i64> = vec![];
        let mut tau: Vec<i64> = vec![];
        if self.s > 1 {
            factors.push(self.s);
            mult.push(1);
            tau.push(0);
        }
        if self.r > 1 {
            factors.push(self.r);
            mult.push(-1);
            tau.push(0);
        }
        if self.n >= 2 {
            let q = 1u32 << (self.n - 1);
            factors.push(q);
            mult.push(match self.family {
                Family::Cyclic2n | Family::Z2xZ2n1 => 1,
                Family::Dihedral | Family::Dicyclic => -1,
                Family::Modular => (q / 2 + 1) as i64,
                Family::Semidihedral => (q / 2 - 1) as i64,
            });
            tau.push(match self.family {
                Family::Cyclic2n => 1,
                Family::Dicyclic => (q / 2) as i64,
                _ => 0,
            });
        }
        let a = AbelianGroup::new(factors)?;
        let images = (0..a.rank())
            .map(|i| a.scale(mult[i], &a.unit(i)))
            .collect();
        let twist = Automorphism::new(&a, images)?;
        let b_square = a.element(&tau)?;
        debug_assert_eq!(twist.apply(&b_square), b_square);
        debug_assert!(twist.compose(&twist).is_identity());
        let root_order = lcm(a.exponent().max(1), 4);
        let faithful = a.element(&vec![1i64; a.rank()])?;
        Ok(Index2 {
            a,
            twist,
            b_square,
            faithful,
            root_order,
        })
    }
}

/// Structure data for the index-two abelian normal subgroup.
#[derive(Debug, Clone)]
pub struct Index2 {
    /// Character lattice of `A`, identified with `A` itself.
    pub a: AbelianGroup,
    /// Action of `b` on characters; an involution.
    pub twist: Automorphism,
    /// The element of `A` the distinguished coset element squares to.
    pub b_square: GroupElement,
    /// A generator of the cyclic group `A` (all-ones coordinates).
    pub faithful: GroupElement,
    /// Scalar lattice: all root-of-unity scalars are powers of a fixed
    /// primitive root of this order, `lcm(exp A, 4)`.
    pub root_order: u64,
}

/// All non-cyclic catalog entries up to the given order, each group exactly
/// once in canonical form, sorted by (order, family, n, r, s).
pub fn catalog(max_order: u64) -> Result<Vec<GroupSpec>> {
    if max_order > 256 {
        return Err(Error::InvalidSpec(
            "catalog enumeration is limited to order 256".into(),
        ));
    }
    let mut out = vec![];
    for family in Family::ALL {
        let mut n = family.min_n();
        while (1u64 << n) <= max_order {
            let h = 1u64 << n;
            let r_min = if family == Family::Cyclic2n { 3 } else { 1 };
            let mut r = r_min;
            while h * r <= max_order {
                let mut s = 1;
                while h * r * s <= max_order {
                    if gcd(r, s) == 1 {
                        let spec = GroupSpec::new(family, n, r as u32, s as u32)?;
                        debug_assert_eq!(spec.family(), family);
                        out.push(spec);
                    }
                    s += 2;
                }
                r += 2;
            }
            n += 1;
        }
    }
    out.sort_by_key(|g| (g.order(), g.family().rank(), g.n(), g.r(), g.s()));
    Ok(out)
}

/// Exact value of `beta_k`: half the group order times `k`, plus two for
/// the dicyclic groups (including `Z_r x| Z_4`) and one otherwise.
pub fn formula_beta(g: &GroupSpec, k: u32) -> Result<u64> {
    if g.is_cyclic() {
        return Err(Error::Domain(
            "the formula covers non-cyclic groups only".into(),
        ));
    }
    if k == 0 {
        return Err(Error::Domain("formula needs k >= 1".into()));
    }
    let plus = if is_dicyclic_type(g) { 2 } else { 1 };
    Ok(g.order() / 2 * k as u64 + plus)
}

/// Is the group a dicyclic group `Dic_{4m}`? For odd `m` these are exactly
/// the semidirect products `Z_m x| Z_4`.
pub fn is_dicyclic_type(g: &GroupSpec) -> bool {
    g.s() == 1
        && (g.family() == Family::Dicyclic
            || (g.family() == Family::Cyclic2n && g.n() == 2))
}

/// Constituents of a module over a catalog group: one-dimensional
/// characters and two-dimensional modules induced from a character of `A`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Constituent {
    /// Induced from the `A`-character with these coordinates.
    Induced(Vec<u32>),
    /// A character of the whole group.
    Char(CharSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharSpec {
    /// "trivial" or "sign" (trivial on `A`, minus one on `b`).
    Named(String),
    /// Restriction to `A` plus the scalar exponent on `b`.
    Full { theta: Vec<u32>, scalar_exp: u64 },
}

/// A direct sum of constituents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub constituents: Vec<Constituent>,
}

impl ModuleSpec {
    pub fn new(constituents: Vec<Constituent>) -> Self {
        ModuleSpec { constituents }
    }

    pub fn num_vars(&self) -> usize {
        self.constituents
            .iter()
            .map(|c| match c {
                Constituent::Induced(_) => 2,
                Constituent::Char(_) => 1,
            })
            .sum()
    }
}

/// The module whose computed `beta_k` attains the formula value: the module
/// induced from a faithful character of `A`, plus the sign character except
/// for the dicyclic groups, where the induced module alone is extremal.
pub fn witness_module(g: &GroupSpec, _k: u32) -> Result<ModuleSpec> {
    if g.is_cyclic() {
        return Err(Error::Domain(
            "witness modules exist for non-cyclic groups only".into(),
        ));
    }
    let data = g.index_two()?;
    let faithful = Constituent::Induced(data.faithful.coords().to_vec());
    let mut constituents = vec![faithful];
    if !is_dicyclic_type(g) {
        constituents.push(Constituent::Char(CharSpec::Named("sign".into())));
    }
    Ok(ModuleSpec::new(constituents))
}

/// Every irreducible module as a single-constituent spec: all realizable
/// characters of the group, then one induced module per orbit of the twist
/// on non-fixed characters of `A`.
pub fn irreducible_modules(g: &GroupSpec) -> Result<Vec<ModuleSpec>> {
    let data = g.index_two()?;
    let m = data.root_order;
    let mut out = vec![];
    for theta in data.a.elements() {
        if data.twist.apply(&theta) != theta {
            continue;
        }
        let t = data.a.pairing(&theta, &data.b_square, m);
        if t % 2 != 0 {
            // the character of b would need a root of unity outside the
            // scalar lattice; skip (arises only for cyclic H of order >= 8)
            continue;
        }
        for j in [t / 2, t / 2 + m / 2] {
            out.push(ModuleSpec::new(vec![Constituent::Char(CharSpec::Full {
                theta: theta.coords().to_vec(),
                scalar_exp: j % m,
            })]));
        }
    }
    for theta in data.a.elements() {
        let image = data.twist.apply(&theta);
        if image != theta && theta < image {
            out.push(ModuleSpec::new(vec![Constituent::Induced(
                theta.coords().to_vec(),
            )]));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, n: u32, r: u32, s: u32) -> GroupSpec {
        GroupSpec::new(f, n, r, s).unwrap()
    }

    #[test]
    fn normalization_of_degenerate_parameters() {
        let d10 = spec(Family::Dihedral, 1, 5, 1);
        assert_eq!(d10.family(), Family::Cyclic2n);
        assert_eq!(d10.order(), 10);
        assert_eq!(d10.name(), "D_10");

        let v4 = spec(Family::Dicyclic, 2, 1, 1);
        assert_eq!(v4.family(), Family::Z2xZ2n1);
        assert_eq!(v4.order(), 4);

        let m8 = spec(Family::Modular, 3, 1, 1);
        assert_eq!(m8.family(), Family::Dihedral);
        assert_eq!(m8.name(), "D_8");

        assert!(GroupSpec::new(Family::Semidihedral, 3, 1, 1).is_err());
        assert!(GroupSpec::new(Family::Cyclic2n, 0, 3, 1).is_err());
        assert!(GroupSpec::new(Family::Dihedral, 3, 2, 1).is_err());
        assert!(GroupSpec::new(Family::Dihedral, 3, 3, 3).is_err());
    }

    #[test]
    fn catalog_small_orders() {
        let cat = catalog(4).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat[0].name(), "Z_2xZ_2");

        let cat = catalog(6).unwrap();
        let names: Vec<String> = cat.iter().map(|g| g.name()).collect();
        assert!(names.contains(&"D_6".to_string()));

        let cat = catalog(8).unwrap();
        let names: Vec<String> = cat.iter().map(|g| g.name()).collect();
        for expected in ["Z_2xZ_2", "D_6", "Z_2xZ_4", "D_8", "Dic_8"] {
            assert!(names.contains(&expected.to_string()), "missing {expected}");
        }
        assert_eq!(cat.len(), 5);
    }

    #[test]
    fn catalog_counts_match_hand_enumeration() {
        // non-cyclic groups with a cyclic index-two subgroup, by order
        let expected: &[(u64, usize)] = &[
            (2, 0),
            (4, 1),  // Z_2 x Z_2
            (6, 1),  // D_6
            (8, 3),  // Z_2 x Z_4, D_8, Q_8
            (10, 1), // D_10
            (12, 3), // Z_2 x Z_6, D_12, Dic_12
            (14, 1), // D_14
            (16, 5), // Z_2 x Z_8, M_16, D_16, SD_16, Dic_16
        ];
        let cat = catalog(16).unwrap();
        for &(order, count) in expected {
            let found = cat.iter().filter(|g| g.order() == order).count();
            assert_eq!(found, count, "order {order}");
        }
        assert_eq!(cat.len(), 15);
    }

    #[test]
    fn catalog_entries_are_canonical_and_distinct() {
        let cat = catalog(64).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for g in &cat {
            assert!(seen.insert((g.family(), g.n(), g.r(), g.s())));
            assert!(!g.is_cyclic());
        }
    }

    #[test]
    fn formula_examples() {
        let d10 = spec(Family::Cyclic2n, 1, 5, 1);
        assert_eq!(formula_beta(&d10, 1).unwrap(), 6);

        let dic16 = spec(Family::Dicyclic, 4, 1, 1);
        assert_eq!(formula_beta(&dic16, 1).unwrap(), 10);

        let z3q8 = spec(Family::Dicyclic, 3, 1, 3);
        assert_eq!(formula_beta(&z3q8, 2).unwrap(), 25);

        let q8 = spec(Family::Dicyclic, 3, 1, 1);
        assert_eq!(formula_beta(&q8, 1).unwrap(), 6);

        let zr_z4 = spec(Family::Cyclic2n, 2, 3, 1);
        assert_eq!(formula_beta(&zr_z4, 1).unwrap(), 8);

        let z16 = spec(Family::Cyclic2n, 4, 1, 1);
        assert!(formula_beta(&z16, 1).is_err());
    }

    #[test]
    fn formula_is_affine_in_k() {
        for g in catalog(16).unwrap() {
            for k in 2..=3 {
                let diff =
                    formula_beta(&g, k).unwrap() - formula_beta(&g, k - 1).unwrap();
                assert_eq!(diff, g.order() / 2);
            }
        }
    }

    #[test]
    fn index_two_structure() {
        for g in catalog(16).unwrap() {
            let data = g.index_two().unwrap();
            assert_eq!(data.a.order() * 2, g.order());
            assert!(data.a.is_cyclic());
            assert_eq!(data.twist.apply(&data.b_square), data.b_square);
            assert!(data.twist.compose(&data.twist).is_identity());
            assert_eq!(data.a.order_of(&data.faithful), data.a.order());
            assert_eq!(data.root_order % 4, 0);
        }
    }

    #[test]
    fn witness_module_shapes() {
        let d6 = spec(Family::Cyclic2n, 1, 3, 1);
        let w = witness_module(&d6, 1).unwrap();
        assert_eq!(w.constituents.len(), 2);
        assert_eq!(w.num_vars(), 3);

        let q8 = spec(Family::Dicyclic, 3, 1, 1);
        let w = witness_module(&q8, 1).unwrap();
        assert_eq!(w.constituents.len(), 1);
        assert_eq!(w.num_vars(), 2);

        let zr_z4 = spec(Family::Cyclic2n, 2, 3, 1);
        assert_eq!(witness_module(&zr_z4, 1).unwrap().num_vars(), 2);
    }

    #[test]
    fn irreducible_module_counts() {
        // Q_8: four characters and one induced module
        let q8 = spec(Family::Dicyclic, 3, 1, 1);
        let irr = irreducible_modules(&q8).unwrap();
        let chars = irr
            .iter()
            .filter(|m| matches!(m.constituents[0], Constituent::Char(_)))
            .count();
        assert_eq!(chars, 4);
        assert_eq!(irr.len() - chars, 1);

        // D_16: four characters, three induced
        let d16 = spec(Family::Dihedral, 4, 1, 1);
        let irr = irreducible_modules(&d16).unwrap();
        let chars = irr
            .iter()
            .filter(|m| matches!(m.constituents[0], Constituent::Char(_)))
            .count();
        assert_eq!(chars, 4);
        assert_eq!(irr.len() - chars, 3);

        // abelian Z_2 x Z_8: sixteen characters, no induced
        let z2z8 = spec(Family::Z2xZ2n1, 4, 1, 1);
        let irr = irreducible_modules(&z2z8).unwrap();
        assert_eq!(irr.len(), 16);
    }

    #[test]
    fn spec_json_round_trip() {
        let g = spec(Family::Dicyclic, 3, 1, 3);
        let json = serde_json::to_string(&g).unwrap();
        let back: GroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);

        let parsed: GroupSpec =
            serde_json::from_str(r#"{"family":"Dihedral","n":1,"r":5,"s":1}"#).unwrap();
        assert_eq!(parsed.order(), 10);

        let defaults: GroupSpec =
            serde_json::from_str(r#"{"family":"Dicyclic","n":3}"#).unwrap();
        assert_eq!(defaults.order(), 8);

        assert!(serde_json::from_str::<GroupSpec>(
            r#"{"family":"Semidihedral","n":3}"#
        )
        .is_err());
    }
}
