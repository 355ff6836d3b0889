//! The non-abelian groups of order 24 and 32, plus a few auxiliary groups.
//!
//! Each entry stores its presentation in the presentation file format.
//! A relation `A = B` from the tables is written as the relator `A B^-1`.

use crate::coset::coset_cap_from_env;
use crate::group::{realize, FiniteGroup, GroupError};
use crate::word::{parse_presentation, Presentation};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// `G(order,id)` for table rows, a short name for auxiliary entries.
    pub label: &'static str,
    pub aliases: &'static [&'static str],
    pub description: &'static str,
    pub order: usize,
    /// Whether the entry is a row of the order-24/order-32 tables.
    pub tabulated: bool,
    pub text: &'static str,
    /// Permutation generators (0-based images) when the entry is given by permutations.
    pub permutations: Option<&'static [&'static [usize]]>,
}

impl CatalogEntry {
    pub fn presentation(&self) -> Presentation {
        parse_presentation(self.text).expect("catalog presentations parse")
    }

    pub fn realize(&self) -> Result<FiniteGroup, GroupError> {
        realize(&self.presentation(), coset_cap_from_env().max(self.order))
    }

    /// The label used in reports: the common name when the entry has one
    /// that the classification results are usually quoted by.
    pub fn display_name(&self) -> &'static str {
        match self.label {
            "G(24,12)" => "S4",
            l => l,
        }
    }

    pub fn matches(&self, key: &str) -> bool {
        let norm = |s: &str| s.replace([' ', '_'], "").to_ascii_lowercase();
        let k = norm(key);
        norm(self.label) == k || self.aliases.iter().any(|a| norm(a) == k)
    }
}

macro_rules! entry {
    ($label:expr, [$($alias:expr),*], $desc:expr, $order:expr, $text:expr) => {
        CatalogEntry {
            label: $label,
            aliases: &[$($alias),*],
            description: $desc,
            order: $order,
            tabulated: true,
            text: $text,
            permutations: None,
        }
    };
}

/// All catalog entries: 12 groups of order 24, 44 of order 32, then auxiliary groups.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut v = vec![
        entry!("G(24,1)", [], "D_{8,3,-1}", 24, "gens: x y\nrel: x^8\nrel: y^3\nrel: x y x^-1 y"),
        entry!(
            "G(24,3)",
            ["SL(2,3)", "SL(2,F3)"],
            "SL(2,F_3)",
            24,
            "gens: x y z\n\
             rel: x^3 z^-1 y^-1 x^-1\n\
             rel: y^3 z^-1 y^-1 x^-1\n\
             rel: z^2 z^-1 y^-1 x^-1"
        ),
        entry!(
            "G(24,4)",
            ["Q24"],
            "Q_24",
            24,
            "gens: x y z\n\
             rel: x^6 z^-1 y^-1 x^-1\n\
             rel: y^2 z^-1 y^-1 x^-1\n\
             rel: z^2 z^-1 y^-1 x^-1"
        ),
        entry!("G(24,5)", [], "D_{2,12,5}", 24, "gens: x y\nrel: x^2\nrel: y^12\nrel: x y x^-1 y^-5"),
        entry!("G(24,6)", ["D24"], "D_24", 24, "gens: x y\nrel: x^2\nrel: y^12\nrel: x y x^-1 y"),
        entry!(
            "G(24,7)",
            [],
            "Z_2 x D_{4,3,-1}",
            24,
            "gens: z x y\n\
             rel: z^2\n\
             rel: x^4\nrel: y^3\nrel: x y x^-1 y\n\
             rel: [z,x]\nrel: [z,y]"
        ),
        entry!(
            "G(24,8)",
            [],
            "((Z_2)^2 x Z_3) : Z_2",
            24,
            "gens: x y z w\n\
             rel: x^2\nrel: y^2\nrel: z^2\nrel: w^3\n\
             rel: [y,z]\nrel: [y,w]\nrel: [z,w]\n\
             rel: x y x^-1 y^-1\n\
             rel: x z x^-1 y^-1 z^-1\n\
             rel: x w x^-1 w"
        ),
        entry!(
            "G(24,10)",
            [],
            "Z_3 x D_8",
            24,
            "gens: z x y\n\
             rel: z^3\n\
             rel: x^2\nrel: y^4\nrel: x y x^-1 y\n\
             rel: [z,x]\nrel: [z,y]"
        ),
        entry!(
            "G(24,11)",
            [],
            "Z_3 x Q_8",
            24,
            "gens: z i j k\n\
             rel: z^3\n\
             rel: i^2 k^-1 j^-1 i^-1\nrel: j^2 k^-1 j^-1 i^-1\nrel: k^2 k^-1 j^-1 i^-1\n\
             rel: [z,i]\nrel: [z,j]\nrel: [z,k]"
        ),
        CatalogEntry {
            label: "G(24,12)",
            aliases: &["S4"],
            description: "S_4, x = (12), y = (1234)",
            order: 24,
            tabulated: true,
            text: "gens: x y\nrel: x^2\nrel: y^4\nrel: x y x y x y",
            permutations: Some(&[&[1, 0, 2, 3], &[1, 2, 3, 0]]),
        },
        entry!(
            "G(24,13)",
            [],
            "Z_2 x A_4, x = (12)(34), y = (123)",
            24,
            "gens: z x y\n\
             rel: z^2\n\
             rel: x^2\nrel: y^3\nrel: x y x y x y\n\
             rel: [z,x]\nrel: [z,y]"
        ),
        entry!(
            "G(24,14)",
            [],
            "(Z_2)^2 x S_3, x = (12), y = (123)",
            24,
            "gens: z w x y\n\
             rel: z^2\nrel: w^2\nrel: [z,w]\n\
             rel: x^2\nrel: y^3\nrel: x y x y\n\
             rel: [z,x]\nrel: [z,y]\nrel: [w,x]\nrel: [w,y]"
        ),
        entry!(
            "G(32,2)",
            [],
            "(Z_4 x Z_2) : Z_4",
            32,
            "gens: x y z\n\
             rel: x^4\nrel: y^4\nrel: z^2\n\
             rel: [x,y] z^-1\nrel: [x,z]\nrel: [y,z]"
        ),
        entry!("G(32,4)", [], "D_{4,8,5}", 32, "gens: x y\nrel: x^4\nrel: y^8\nrel: x y x^-1 y^-5"),
        entry!(
            "G(32,5)",
            [],
            "(Z_8 x Z_2) : Z_2",
            32,
            "gens: x y z\n\
             rel: x^8\nrel: y^2\nrel: z^2\nrel: [x,y]\n\
             rel: z x z^-1 y^-1 x^-5\n\
             rel: z y z^-1 y^-1"
        ),
        entry!(
            "G(32,6)",
            [],
            "(Z_2)^3 : Z_4",
            32,
            "gens: x y z w\n\
             rel: x^2\nrel: y^2\nrel: z^2\nrel: w^4\n\
             rel: [x,y]\nrel: [x,z]\nrel: [y,z]\n\
             rel: w x w^-1 x^-1\n\
             rel: w y w^-1 y^-1 x^-1\n\
             rel: w z w^-1 z^-1 y^-1"
        ),
        entry!(
            "G(32,7)",
            [],
            "(Z_8 : Z_2) : Z_2",
            32,
            "gens: x y z u w\n\
             rel: y^2\nrel: z^2\nrel: w^2\n\
             rel: u^2 w\n\
             rel: x^2 u^-1\n\
             rel: y z y z\n\
             rel: y u^-1 y u^-1\n\
             rel: u z u^-1 z\n\
             rel: x y z x^-1 y"
        ),
        entry!(
            "G(32,8)",
            [],
            "(Z_2)^2 . (Z_4 x Z_2)",
            32,
            "gens: x y z\n\
             rel: x^8\nrel: y^2\n\
             rel: z^2 x^-4\n\
             rel: x y x^-5 y^-1\n\
             rel: [y,z]\n\
             rel: x z y x^-1 z^-1"
        ),
        entry!(
            "G(32,9)",
            [],
            "(Z_8 x Z_2) : Z_2",
            32,
            "gens: x y z\n\
             rel: x^8\nrel: y^2\nrel: z^2\nrel: [x,y]\n\
             rel: z x z^-1 y^-1 x^-3\n\
             rel: z y z^-1 y^-1"
        ),
        entry!(
            "G(32,10)",
            [],
            "Q_8 : Z_4",
            32,
            "gens: i j k x\n\
             rel: i^2 k^-1 j^-1 i^-1\nrel: j^2 k^-1 j^-1 i^-1\nrel: k^2 k^-1 j^-1 i^-1\n\
             rel: x^4\n\
             rel: x i x^-1 j^-1\n\
             rel: x j x^-1 i^-1\n\
             rel: x k x^-1 k"
        ),
        entry!(
            "G(32,11)",
            [],
            "(Z_4)^2 : Z_2",
            32,
            "gens: x y z\n\
             rel: x^4\nrel: y^4\nrel: [x,y]\nrel: z^2\n\
             rel: z x z^-1 y^-1\n\
             rel: z y z^-1 x^-1"
        ),
        entry!("G(32,12)", [], "D_{8,4,3}", 32, "gens: x y\nrel: x^8\nrel: y^4\nrel: x y x^-1 y^-3"),
        entry!("G(32,13)", [], "D_{4,8,3}", 32, "gens: x y\nrel: x^4\nrel: y^8\nrel: x y x^-1 y^-3"),
        entry!("G(32,14)", [], "D_{4,8,-1}", 32, "gens: x y\nrel: x^4\nrel: y^8\nrel: x y x^-1 y"),
        entry!(
            "G(32,15)",
            [],
            "Z_4 . D_8",
            32,
            "gens: x y z u w\n\
             rel: w^2\n\
             rel: z^2 w\nrel: u^2 w\n\
             rel: x^2 u^-1\n\
             rel: y^2 z^-1\n\
             rel: x z x^-1 z\n\
             rel: [y,u]\n\
             rel: x y x u y"
        ),
        entry!("G(32,17)", [], "D_{2,16,9}", 32, "gens: x y\nrel: x^2\nrel: y^16\nrel: x y x^-1 y^-9"),
        entry!("G(32,18)", ["D32"], "D_32", 32, "gens: x y\nrel: x^2\nrel: y^16\nrel: x y x^-1 y"),
        entry!("G(32,19)", ["QD32"], "QD_32", 32, "gens: x y\nrel: x^2\nrel: y^16\nrel: x y x^-1 y^-7"),
        entry!(
            "G(32,20)",
            ["Q32"],
            "Q_32",
            32,
            "gens: x y z\n\
             rel: x^8 z^-1 y^-1 x^-1\n\
             rel: y^2 z^-1 y^-1 x^-1\n\
             rel: z^2 z^-1 y^-1 x^-1"
        ),
        entry!(
            "G(32,22)",
            [],
            "Z_2 x ((Z_4 x Z_2) : Z_2)",
            32,
            "gens: w x y z\n\
             rel: w^2\n\
             rel: x^4\nrel: y^2\nrel: z^2\nrel: [x,y]\n\
             rel: z x z^-1 y^-1 x^-1\n\
             rel: z y z^-1 y^-1\n\
             rel: [w,x]\nrel: [w,y]\nrel: [w,z]"
        ),
        entry!(
            "G(32,23)",
            [],
            "Z_2 x D_{4,4,3}",
            32,
            "gens: z x y\n\
             rel: z^2\n\
             rel: x^4\nrel: y^4\nrel: x y x^-1 y^-3\n\
             rel: [z,x]\nrel: [z,y]"
        ),
        entry!(
            "G(32,24)",
            [],
            "(Z_4)^2 : Z_2",
            32,
            "gens: x y z\n\
             rel: x^4\nrel: y^4\nrel: z^2\nrel: [x,y]\n\
             rel: z x z^-1 x^-1\n\
             rel: z y z^-1 y^-1 x^-2"
        ),
        entry!(
            "G(32,25)",
            [],
            "Z_4 x D_8",
            32,
            "gens: z x y\n\
             rel: z^4\n\
             rel: x^2\nrel: y^4\nrel: x y x^-1 y\n\
             rel: [z,x]\nrel: [z,y]"
        ),
        entry!(
            "G(32,26)",
            [],
            "Z_4 x Q_8",
            32,
            "gens: z i j k\n\
             rel: z^4\n\
             rel: i^2 k^-1 j^-1 i^-1\nrel: j^2 k^-1 j^-1 i^-1\nrel: k^2 k^-1 j^-1 i^-1\n\
             rel: [z,i]\nrel: [z,j]\nrel: [z,k]"
        ),
        entry!(
            "G(32,27)",
            [],
            "(Z_2)^3 : (Z_2)^2",
            32,
            "gens: x y z a b\n\
             rel: x^2\nrel: y^2\nrel: z^2\nrel: a^2\nrel: b^2\n\
             rel: [x,y]\nrel: [y,z]\nrel: [x,z]\nrel: [a,b]\n\
             rel: a x a^-1 x^-1\nrel: a y a^-1 y^-1\nrel: a z a^-1 z^-1 x^-1\n\
             rel: b x b^-1 x^-1\nrel: b y b^-1 y^-1\nrel: b z b^-1 z^-1 y^-1"
        ),
        entry!(
            "G(32,28)",
            [],
            "(Z_4 x (Z_2)^2) : Z_2",
            32,
            "gens: x y z w\n\
             rel: x^4\nrel: y^2\nrel: z^2\nrel: w^2\n\
             rel: [x,y]\nrel: [x,z]\nrel: [y,z]\n\
             rel: w x w^-1 x\n\
             rel: w y w^-1 z^-1\n\
             rel: w z w^-1 y^-1"
        ),
        entry!(
            "G(32,29)",
            [],
            "(Z_2 x Q_8) : Z_2",
            32,
            "gens: x i j k z\n\
             rel: x^2\nrel: z^2\n\
             rel: i^2 k^-1 j^-1 i^-1\nrel: j^2 k^-1 j^-1 i^-1\nrel: k^2 k^-1 j^-1 i^-1\n\
             rel: [x,i]\nrel: [x,j]\nrel: [x,k]\n\
             rel: z x z^-1 x^-1\n\
             rel: z i z^-1 i^-1\n\
             rel: z j z^-1 j x^-1"
        ),
        entry!(
            "G(32,30)",
            [],
            "(Z_4 x (Z_2)^2) : Z_2",
            32,
            "gens: x y z w\n\
             rel: x^4\nrel: y^2\nrel: z^2\nrel: w^2\n\
             rel: [x,y]\nrel: [x,z]\nrel: [y,z]\n\
             rel: w x w^-1 y^-1 x^-1\n\
             rel: w y w^-1 y^-1\n\
             rel: w z w^-1 z^-1 x^-2"
        ),
        entry!(
            "G(32,31)",
            [],
            "(Z_4)^2 : Z_2",
            32,
            "gens: x y z\n\
             rel: x^4\nrel: y^4\nrel: [x,y]\nrel: z^2\n\
             rel: z x z^-1 y^-2 x^-1\n\
             rel: z y z^-1 y^-1 x^-2"
        ),
        entry!(
            "G(32,32)",
            [],
            "(Z_2)^2 . (Z_2)^3",
            32,
            "gens: x y z u w\n\
             rel: u^2\nrel: w^2\n\
             rel: u z^-2\n\
             rel: u x^2\n\
             rel: w y^2\n\
             rel: y x y^-1 x\n\
             rel: [y,z]\n\
             rel: x z x w z"
        ),
        entry!(
            "G(32,33)",
            [],
            "(Z_4)^2 : Z_2",
            32,
            "gens: x y z\n\
             rel: x^4\nrel: y^4\nrel: [x,y]\nrel: z^2\n\
             rel: z x z^-1 y^-2 x^-1\n\
             rel: z y z^-1 y x^-2"
        ),
        entry!(
            "G(32,34)",
            [],
            "(Z_4)^2 : Z_2",
            32,
            "gens: x y z\n\
             rel: x^4\nrel: y^4\nrel: [x,y]\nrel: z^2\n\
             rel: z x z^-1 x\n\
             rel: z y z^-1 y"
        ),
        entry!(
            "G(32,35)",
            [],
            "Z_4 : Q_8",
            32,
            "gens: x i j k\n\
             rel: x^4\n\
             rel: i^2 k^-1 j^-1 i^-1\nrel: j^2 k^-1 j^-1 i^-1\nrel: k^2 k^-1 j^-1 i^-1\n\
             rel: i x i^-1 x\n\
             rel: j x j^-1 x\n\
             rel: k x k^-1 x^-1"
        ),
        entry!(
            "G(32,37)",
            [],
            "(Z_8 x Z_2) : Z_2",
            32,
            "gens: x y z\n\
             rel: x^8\nrel: y^2\nrel: z^2\nrel: [x,y]\n\
             rel: z x z^-1 x^-5\n\
             rel: z y z^-1 y^-1"
        ),
        entry!(
            "G(32,38)",
            [],
            "(Z_8 x Z_2) : Z_2",
            32,
            "gens: x y z\n\
             rel: x^8\nrel: y^2\nrel: z^2\nrel: [x,y]\n\
             rel: z x z^-1 x^-1\n\
             rel: z y z^-1 y^-1 x^-4"
        ),
        entry!(
            "G(32,39)",
            [],
            "Z_2 x D_16",
            32,
            "gens: z x y\n\
             rel: z^2\n\
             rel: x^2\nrel: y^8\nrel: x y x^-1 y\n\
             rel: [z,x]\nrel: [z,y]"
        ),
        entry!(
            "G(32,40)",
            [],
            "Z_2 x QD_16",
            32,
            "gens: z x y\n\
             rel: z^2\n\
             rel: x^2\nrel: y^8\nrel: x y x^-1 y^-3\n\
             rel: [z,x]\nrel: [z,y]"
        ),
        entry!(
            "G(32,41)",
            [],
            "Z_2 x Q_16",
            32,
            "gens: w x y z\n\
             rel: w^2\n\
             rel: x^4 z^-1 y^-1 x^-1\nrel: y^2 z^-1 y^-1 x^-1\nrel: z^2 z^-1 y^-1 x^-1\n\
             rel: [w,x]\nrel: [w,y]\nrel: [w,z]"
        ),
        entry!(
            "G(32,42)",
            [],
            "(Z_8 x Z_2) : Z_2",
            32,
            "gens: x y z\n\
             rel: x^8\nrel: y^2\nrel: z^2\nrel: [x,y]\n\
             rel: z x z^-1 x^-3\n\
             rel: z y z^-1 y^-1 x^-4"
        ),
        entry!(
            "G(32,43)",
            [],
            "Z_8 : (Z_2)^2",
            32,
            "gens: x y z\n\
             rel: x^8\nrel: y^2\nrel: z^2\nrel: [y,z]\n\
             rel: y x y^-1 x\n\
             rel: z x z^-1 x^-5"
        ),
        entry!(
            "G(32,44)",
            [],
            "(Z_2 x Q_8) : Z_2",
            32,
            "gens: x i j k z\n\
             rel: x^2\nrel: z^2\n\
             rel: i^2 k^-1 j^-1 i^-1\nrel: j^2 k^-1 j^-1 i^-1\nrel: k^2 k^-1 j^-1 i^-1\n\
             rel: [x,i]\nrel: [x,j]\nrel: [x,k]\n\
             rel: z x z^-1 i^-2 x^-1\n\
             rel: z i z^-1 j^-1\n\
             rel: z j z^-1 i^-1"
        ),
        entry!(
            "G(32,46)",
            [],
            "(Z_2)^2 x D_8",
            32,
            "gens: z w x y\n\
             rel: z^2\nrel: w^2\nrel: [z,w]\n\
             rel: x^2\nrel: y^4\nrel: x y x^-1 y\n\
             rel: [z,x]\nrel: [z,y]\nrel: [w,x]\nrel: [w,y]"
        ),
        entry!(
            "G(32,47)",
            [],
            "(Z_2)^2 x Q_8",
            32,
            "gens: z w i j k\n\
             rel: z^2\nrel: w^2\nrel: [z,w]\n\
             rel: i^2 k^-1 j^-1 i^-1\nrel: j^2 k^-1 j^-1 i^-1\nrel: k^2 k^-1 j^-1 i^-1\n\
             rel: [z,i]\nrel: [z,j]\nrel: [z,k]\nrel: [w,i]\nrel: [w,j]\nrel: [w,k]"
        ),
        entry!(
            "G(32,48)",
            [],
            "(Z_4 x (Z_2)^2) : Z_2",
            32,
            "gens: x y z w\n\
             rel: x^4\nrel: y^2\nrel: z^2\nrel: w^2\n\
             rel: [x,y]\nrel: [x,z]\nrel: [y,z]\n\
             rel: w x w^-1 x^-1\n\
             rel: w y w^-1 y^-1\n\
             rel: w z w^-1 z^-1 x^-2"
        ),
        entry!(
            "G(32,49)",
            ["H5", "H5(Z2)"],
            "H_5(Z_2), extra-special of type H",
            32,
            "gens: r1 t1 r2 t2 z\n\
             rel: r1^2\nrel: t1^2\nrel: r2^2\nrel: t2^2\nrel: z^2\n\
             rel: [r1,z]\nrel: [t1,z]\nrel: [r2,z]\nrel: [t2,z]\n\
             rel: [r1,r2]\nrel: [t1,t2]\n\
             rel: [r1,t1] z\nrel: [r1,t2]\nrel: [r2,t1]\nrel: [r2,t2] z"
        ),
        entry!(
            "G(32,50)",
            ["G5", "G5(Z2)"],
            "G_5(Z_2), extra-special of type G",
            32,
            "gens: r1 t1 r2 t2 z\n\
             rel: r1^2\nrel: t1^2\nrel: r2^2 z^-1\nrel: t2^2 z^-1\nrel: z^2\n\
             rel: [r1,z]\nrel: [t1,z]\nrel: [r2,z]\nrel: [t2,z]\n\
             rel: [r1,r2]\nrel: [t1,t2]\n\
             rel: [r1,t1] z\nrel: [r1,t2]\nrel: [r2,t1]\nrel: [r2,t2] z"
        ),
    ];
    v.extend([
        CatalogEntry {
            label: "A4",
            aliases: &[],
            description: "A_4, x = (12)(34), y = (123)",
            order: 12,
            tabulated: false,
            text: "gens: x y\nrel: x^2\nrel: y^3\nrel: x y x y x y",
            permutations: Some(&[&[1, 0, 3, 2], &[1, 2, 0, 3]]),
        },
        CatalogEntry {
            label: "Q8",
            aliases: &[],
            description: "Q_8, i^2 = j^2 = k^2 = ijk",
            order: 8,
            tabulated: false,
            text: "gens: i j k\n\
                   rel: i^2 k^-1 j^-1 i^-1\nrel: j^2 k^-1 j^-1 i^-1\nrel: k^2 k^-1 j^-1 i^-1",
            permutations: None,
        },
    ]);
    v
}

pub fn lookup(key: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.matches(key))
}
