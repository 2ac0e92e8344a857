//! The finite-group catalog: explicit multiplication tables built from presentations.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::rational::{gcd_u64, is_prime, lcm_u64};
use crate::error::{Error, Result};

/// Catalog tag of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    AbelianProduct(Vec<u64>),
    /// Dihedral group of the given order `2n`.
    Dihedral(u64),
    Quaternion8,
    Alternating4,
    /// `<x, y | x^p, y^q, y x y^{-1} = x^r>` with `r` of order `q` modulo the prime `p`.
    Metacyclic {
        p: u64,
        q: u64,
        r: u64,
    },
}

/// JSON form: `{"family": "dihedral", "param": 8}` or `{"family": "metacyclic", "params": [7, 3, 2]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<u64>>,
}

impl GroupSpec {
    pub fn to_json(&self) -> GroupJson {
        let (family, param, params) = match self {
            GroupSpec::Cyclic(n) => ("cyclic", Some(*n), None),
            GroupSpec::AbelianProduct(ns) => ("abelian", None, Some(ns.clone())),
            GroupSpec::Dihedral(n) => ("dihedral", Some(*n), None),
            GroupSpec::Quaternion8 => ("quaternion8", None, None),
            GroupSpec::Alternating4 => ("alternating4", None, None),
            GroupSpec::Metacyclic { p, q, r } => ("metacyclic", None, Some(vec![*p, *q, *r])),
        };
        GroupJson { family: family.to_string(), param, params }
    }

    pub fn from_json(j: &GroupJson) -> Result<Self> {
        let one = || {
            j.param
                .or_else(|| j.params.as_ref().and_then(|v| (v.len() == 1).then(|| v[0])))
                .ok_or_else(|| Error::Schema(format!("family `{}` needs `param`", j.family)))
        };
        let many = || {
            j.params
                .clone()
                .or_else(|| j.param.map(|x| vec![x]))
                .ok_or_else(|| Error::Schema(format!("family `{}` needs `params`", j.family)))
        };
        let spec = match j.family.to_ascii_lowercase().as_str() {
            "cyclic" => GroupSpec::Cyclic(one()?),
            "abelian" | "abelian_product" => GroupSpec::AbelianProduct(many()?),
            "dihedral" => GroupSpec::Dihedral(one()?),
            "quaternion8" | "quaternion" | "q8" => GroupSpec::Quaternion8,
            "alternating4" | "a4" => GroupSpec::Alternating4,
            "metacyclic" => {
                let v = many()?;
                if v.len() != 3 {
                    return Err(Error::Schema("metacyclic needs params [p, q, r]".into()));
                }
                GroupSpec::Metacyclic { p: v[0], q: v[1], r: v[2] }
            }
            other => return Err(Error::UnknownGroup(other.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::UnknownGroup(m));
        match self {
            GroupSpec::Cyclic(n) if *n == 0 => bad("cyclic group of order 0".into()),
            GroupSpec::AbelianProduct(ns) if ns.is_empty() || ns.contains(&0) => bad(format!("abelian product {ns:?}")),
            GroupSpec::Dihedral(n) if *n < 4 || n % 2 == 1 => bad(format!("dihedral group of order {n}")),
            GroupSpec::Metacyclic { p, q, r } => {
                if !is_prime(*p) || *p == 2 || !is_prime(*q) || (p - 1) % q != 0 {
                    return bad(format!("metacyclic ({p},{q},{r}) needs odd prime p and prime q | p-1"));
                }
                let r = r % p;
                let mut x = r;
                let mut ord = 1;
                while x != 1 && ord <= *p {
                    x = x * r % p;
                    ord += 1;
                }
                if r == 0 || ord != *q {
                    return bad(format!("{r} does not have order {q} modulo {p}"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::AbelianProduct(ns) => ns.iter().product(),
            GroupSpec::Dihedral(n) => *n,
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Alternating4 => 12,
            GroupSpec::Metacyclic { p, q, .. } => p * q,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::AbelianProduct(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| format!("C{n}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::Alternating4 => write!(f, "A4"),
            GroupSpec::Metacyclic { p, q, r } => write!(f, "F({p},{q},{r})"),
        }
    }
}

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub spec: GroupSpec,
    pub labels: Vec<String>,
    /// Family-specific coordinates: exponent vectors, or permutation images for `A4`.
    pub coords: Vec<Vec<u64>>,
    pub table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    index: HashMap<String, usize>,
}

fn power_label(g: &str, k: u64) -> String {
    match k {
        0 => String::new(),
        1 => g.to_string(),
        _ => format!("{g}^{k}"),
    }
}

fn xy_label(i: u64, j: u64) -> String {
    let s = format!("{}{}", power_label("x", i), power_label("y", j));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

impl FiniteGroup {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        spec.validate()?;
        let (coords, labels): (Vec<Vec<u64>>, Vec<String>) = match &spec {
            GroupSpec::Cyclic(n) => (0..*n).map(|i| (vec![i], xy_label(i, 0))).unzip(),
            GroupSpec::AbelianProduct(ns) => {
                let mut out = vec![(vec![], String::new())];
                for (g, &n) in ns.iter().enumerate() {
                    let mut next = Vec::new();
                    for (c, l) in &out {
                        for i in 0..n {
                            let mut c2: Vec<u64> = c.clone();
                            c2.push(i);
                            let l2 = format!("{l}{}", power_label(&format!("g{}", g + 1), i));
                            next.push((c2, l2));
                        }
                    }
                    out = next;
                }
                out.into_iter().map(|(c, l)| (c, if l.is_empty() { "1".into() } else { l })).unzip()
            }
            GroupSpec::Dihedral(n2) => {
                let n = n2 / 2;
                (0..2).flat_map(|j| (0..n).map(move |i| (vec![i, j], xy_label(i, j)))).unzip()
            }
            GroupSpec::Quaternion8 => (0..2).flat_map(|j| (0..4).map(move |i| (vec![i, j], xy_label(i, j)))).unzip(),
            GroupSpec::Metacyclic { p, q, .. } => {
                let p = *p;
                (0..*q).flat_map(|j| (0..p).map(move |i| (vec![i, j], xy_label(i, j)))).unzip()
            }
            GroupSpec::Alternating4 => {
                let mut perms = Vec::new();
                permutations(&mut vec![0, 1, 2, 3], 0, &mut perms);
                perms.sort();
                perms
                    .into_iter()
                    .filter(|p| parity(p) == 0)
                    .map(|p| {
                        let l = cycle_label(&p);
                        (p, l)
                    })
                    .unzip()
            }
        };
        let pos: HashMap<Vec<u64>, usize> = coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let n = coords.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let c = multiply(&spec, &coords[a], &coords[b]);
                table[a][b] = pos[&c];
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).expect("group table has inverses")).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(FiniteGroup { spec, labels, coords, table, inverse, index })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order()).fold(1, |acc, a| lcm_u64(acc, self.element_order(a)))
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.index.get(label.trim()).copied().ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conjugate(g, a)).collect();
            class.sort();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class);
        }
        out
    }

    /// Subgroup generated by a set of elements, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let a = elems[i];
            for &g in gens {
                let b = self.mul(a, g);
                if !inside[b] {
                    inside[b] = true;
                    elems.push(b);
                }
            }
            i += 1;
        }
        elems.sort();
        elems
    }

    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        s.contains(&0) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, s: &[usize]) -> bool {
        (0..self.order()).all(|g| s.iter().all(|&a| s.contains(&self.conjugate(g, a))))
    }

    /// Left coset representatives of a subgroup, taking the smallest member of each coset.
    pub fn transversal(&self, s: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            out.push(a);
            for &h in s {
                seen[self.mul(a, h)] = true;
            }
        }
        out
    }

    pub fn is_p_element(&self, a: usize, p: u64) -> bool {
        let mut o = self.element_order(a);
        while o.is_multiple_of(p) {
            o /= p;
        }
        o == 1
    }

    pub fn is_p_prime_element(&self, a: usize, p: u64) -> bool {
        gcd_u64(self.element_order(a), p) == 1
    }
}

fn multiply(spec: &GroupSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    match spec {
        GroupSpec::Cyclic(n) => vec![(a[0] + b[0]) % n],
        GroupSpec::AbelianProduct(ns) => a.iter().zip(b).zip(ns).map(|((x, y), n)| (x + y) % n).collect(),
        GroupSpec::Dihedral(n2) => {
            let n = n2 / 2;
            let k = if a[1] == 1 { (n - b[0]) % n } else { b[0] };
            vec![(a[0] + k) % n, (a[1] + b[1]) % 2]
        }
        GroupSpec::Quaternion8 => {
            let k = if a[1] == 1 { (4 - b[0]) % 4 } else { b[0] };
            let extra = if a[1] == 1 && b[1] == 1 { 2 } else { 0 };
            vec![(a[0] + k + extra) % 4, (a[1] + b[1]) % 2]
        }
        GroupSpec::Metacyclic { p, q, r } => {
            let rj = (0..a[1]).fold(1, |acc, _| acc * r % p);
            vec![(a[0] + rj * b[0]) % p, (a[1] + b[1]) % q]
        }
        GroupSpec::Alternating4 => {
            // (ab)(k) = a(b(k))
            (0..4).map(|k| a[b[k] as usize]).collect()
        }
    }
}

fn permutations(v: &mut Vec<u64>, k: usize, out: &mut Vec<Vec<u64>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

fn parity(p: &[u64]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// Cycle notation on the points `1..4`, identity as `"1"`.
fn cycle_label(p: &[u64]) -> String {
    let mut seen = [false; 4];
    let mut s = String::new();
    for start in 0..4 {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut x = p[start] as usize;
        while x != start {
            cyc.push(x + 1);
            seen[x] = true;
            x = p[x] as usize;
        }
        let parts: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
        s.push_str(&format!("({})", parts.join(" ")));
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}
