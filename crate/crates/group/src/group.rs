use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{Bits, MAX_ELEMENTS};
use crate::GroupError;

/// Default upper bound on group orders accepted at construction.
pub const DEFAULT_ORDER_BOUND: usize = 512;

/// Permutation data kept from ingestion; not used by the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationData {
    pub degree: usize,
    /// Images of 0..degree under each generator.
    pub generator_images: Vec<Vec<u32>>,
}

/// A finite p-group given by its full multiplication table.
/// Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct Group {
    name: String,
    order: usize,
    prime: u32,
    mult: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<u32>,
    permutations: Option<PermutationData>,
}

fn prime_of_power(n: usize) -> Option<u32> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p as u32)
}

impl Group {
    /// Build from a multiplication table (row a, column b holds a*b).
    /// The trivial group is accepted with prime 1 only when `prime_hint` is
    /// given; otherwise the order must be a prime power.
    pub fn from_table(name: &str, order: usize, mult: Vec<u32>, prime_hint: Option<u32>) -> Result<Group, GroupError> {
        if order > MAX_ELEMENTS {
            return Err(GroupError::OrderBoundExceeded { order, bound: MAX_ELEMENTS });
        }
        assert_eq!(mult.len(), order * order, "table shape");
        let prime = match prime_of_power(order) {
            Some(p) => p,
            None if order == 1 => prime_hint.unwrap_or(2),
            None => return Err(GroupError::NotPrimePower(order)),
        };
        if let Some(h) = prime_hint {
            if order > 1 && h != prime {
                return Err(GroupError::NotPrimePower(order));
            }
        }
        for a in 0..order {
            if mult[a] as usize != a || mult[a * order] as usize != a {
                return Err(GroupError::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mult[a * order + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return Err(GroupError::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        let mut g = Group { name: name.to_string(), order, prime, mult, inv, generators: Vec::new(), permutations: None };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = Bits::from_iter([0]);
        for x in 0..self.order as u32 {
            if !span.contains(x) {
                gens.push(x);
                span = self.closure_bits(&gens);
            }
        }
        gens
    }

    /// Closure of a permutation generating set on points 0..degree.
    pub fn from_permutations(name: &str, degree: usize, gens: &[Vec<u32>], bound: usize) -> Result<Group, GroupError> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(GroupError::MalformedCycle(format!("permutation of length {} on degree {degree}", g.len())));
            }
            for &x in g {
                if x as usize >= degree || seen[x as usize] {
                    return Err(GroupError::MalformedCycle("not a permutation".into()));
                }
                seen[x as usize] = true;
            }
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(identity, 0)]);
        let mut head = 0;
        while head < elems.len() {
            let cur = elems[head].clone();
            head += 1;
            for g in gens {
                // g after cur
                let prod: Vec<u32> = cur.iter().map(|&x| g[x as usize]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() >= bound.min(MAX_ELEMENTS) {
                        return Err(GroupError::OrderBoundExceeded { order: elems.len() + 1, bound: bound.min(MAX_ELEMENTS) });
                    }
                    index.insert(prod.clone(), elems.len() as u32);
                    elems.push(prod);
                }
            }
        }
        let n = elems.len();
        if n > 1 && prime_of_power(n).is_none() {
            return Err(GroupError::NotPrimePower(n));
        }
        let mut mult = vec![0u32; n * n];
        for (a, pa) in elems.iter().enumerate() {
            for (b, pb) in elems.iter().enumerate() {
                // (a*b)(x) = a(b(x))
                let prod: Vec<u32> = pb.iter().map(|&x| pa[x as usize]).collect();
                mult[a * n + b] = index[&prod];
            }
        }
        let mut g = Group::from_table(name, n, mult, None)?;
        g.generators = gens.iter().map(|p| index[p]).filter(|&x| x != 0).collect();
        g.generators.dedup();
        if g.generators.is_empty() && n > 1 {
            g.generators = g.greedy_generators();
        }
        g.permutations = Some(PermutationData { degree, generator_images: gens.to_vec() });
        Ok(g)
    }

    pub fn trivial(prime: u32) -> Group {
        Group::from_table("1", 1, vec![0], Some(prime)).expect("trivial group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn permutations(&self) -> Option<&PermutationData> {
        self.permutations.as_ref()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// g x g^-1
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn element_order(&self, g: u32) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|g| self.element_order(g)).max().unwrap_or(1)
    }

    pub fn power(&self, g: u32, k: usize) -> u32 {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    /// Subgroup generated by `gens`, as a bitset.
    pub fn closure_bits(&self, gens: &[u32]) -> Bits {
        let mut set = Bits::from_iter([0]);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Check the group axioms: exactly when the order is at most 64,
    /// otherwise on a fixed pseudo-random sample of triples.
    pub fn verify_axioms(&self, samples: usize) -> Result<(), GroupError> {
        let n = self.order as u32;
        let check = |a: u32, b: u32, c: u32| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if self.order <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(GroupError::InvalidTable(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..samples.max(1000) {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(a, b, c) {
                    return Err(GroupError::InvalidTable(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        for a in 0..n {
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(GroupError::InvalidTable(format!("inverse of {a} inconsistent")));
            }
        }
        Ok(())
    }

    /// Direct product with `other`; element (a, b) has index a*|other| + b.
    pub fn direct_product(&self, other: &Group) -> Result<Group, GroupError> {
        if self.order > 1 && other.order > 1 && self.prime != other.prime {
            return Err(GroupError::NotPrimePower(self.order * other.order));
        }
        let (n, m) = (self.order, other.order);
        let total = n * m;
        if total > MAX_ELEMENTS {
            return Err(GroupError::OrderBoundExceeded { order: total, bound: MAX_ELEMENTS });
        }
        let mut mult = vec![0u32; total * total];
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        let a = self.mul(a1 as u32, a2 as u32) as usize;
                        let b = other.mul(b1 as u32, b2 as u32) as usize;
                        mult[(a1 * m + b1) * total + a2 * m + b2] = (a * m + b) as u32;
                    }
                }
            }
        }
        let name = format!("{}x{}", self.name, other.name);
        let prime = if self.order > 1 { self.prime } else { other.prime };
        Group::from_table(&name, total, mult, Some(prime))
    }
}

/// Parse a permutation written in disjoint-cycle notation on points 1..degree,
/// e.g. "(1 2)(3 4)". Returns images on 0..degree.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<u32>, GroupError> {
    let mut img: Vec<u32> = (0..degree as u32).collect();
    let mut seen = vec![false; degree];
    let t = text.trim();
    if t.is_empty() || t == "()" {
        return Ok(img);
    }
    let mut rest = t;
    while !rest.is_empty() {
        let rest_trim = rest.trim_start();
        let Some(stripped) = rest_trim.strip_prefix('(') else {
            return Err(GroupError::MalformedCycle(text.to_string()));
        };
        let Some(close) = stripped.find(')') else {
            return Err(GroupError::MalformedCycle(text.to_string()));
        };
        let body = &stripped[..close];
        rest = stripped[close + 1..].trim_start();
        let pts: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| GroupError::MalformedCycle(text.to_string())))
            .collect::<Result<_, _>>()?;
        for (i, &x) in pts.iter().enumerate() {
            if x == 0 || x > degree || seen[x - 1] {
                return Err(GroupError::MalformedCycle(text.to_string()));
            }
            seen[x - 1] = true;
            let y = pts[(i + 1) % pts.len()];
            img[x - 1] = (y - 1) as u32;
        }
    }
    Ok(img)
}

/// Parse the group file format: a line "degree d" then one generator per line.
pub fn parse_group_file(name: &str, text: &str, bound: usize) -> Result<Group, GroupError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| GroupError::MalformedCycle("empty group file".into()))?;
    let degree: usize = header
        .strip_prefix("degree")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| GroupError::MalformedCycle(format!("bad header line: {header}")))?;
    let gens: Vec<Vec<u32>> = lines.map(|l| parse_cycles(l, degree)).collect::<Result<_, _>>()?;
    Group::from_permutations(name, degree, &gens, bound)
}

fn cycle(points: &[u32], degree: usize) -> Vec<u32> {
    let mut img: Vec<u32> = (0..degree as u32).collect();
    for (i, &x) in points.iter().enumerate() {
        img[x as usize] = points[(i + 1) % points.len()];
    }
    img
}

fn affine(degree: u32, a: u32, b: u32) -> Vec<u32> {
    (0..degree).map(|x| (a * x + b) % degree).collect()
}

fn quaternion_generators() -> Vec<Vec<u32>> {
    // units 0:1 1:i 2:j 3:k, +4 for the negatives
    let unit_mul = |a: u32, b: u32| -> (bool, u32) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let qmul = |x: u32, y: u32| -> u32 {
        let (sx, ux) = (x >= 4, x % 4);
        let (sy, uy) = (y >= 4, y % 4);
        let (s, u) = unit_mul(ux, uy);
        let neg = sx ^ sy ^ s;
        u + if neg { 4 } else { 0 }
    };
    [1u32, 2].iter().map(|&g| (0..8).map(|x| qmul(g, x)).collect()).collect()
}

fn parse_prime_power(s: &str) -> Option<usize> {
    let n: usize = s.parse().ok()?;
    prime_of_power(n).map(|_| n)
}

/// Look up a catalog group by name: C{p^n}, E{p}r{r}, D{2^n} (n >= 3), Q8,
/// SG32_43, or direct products joined by 'x'.
pub fn catalog(name: &str) -> Result<Group, GroupError> {
    let unknown = || GroupError::UnknownName(name.to_string());
    if name.contains('x') {
        let mut parts = name.split('x');
        let first = catalog(parts.next().ok_or_else(unknown)?)?;
        let mut g = first;
        for part in parts {
            g = g.direct_product(&catalog(part)?)?;
        }
        g.set_name(name);
        return Ok(g);
    }
    if name == "Q8" {
        return Group::from_permutations(name, 8, &quaternion_generators(), DEFAULT_ORDER_BOUND);
    }
    if name == "SG32_43" {
        let gens = vec![affine(8, 1, 1), affine(8, 7, 0), affine(8, 3, 0)];
        return Group::from_permutations(name, 8, &gens, DEFAULT_ORDER_BOUND);
    }
    if let Some(rest) = name.strip_prefix('C') {
        let n = parse_prime_power(rest).ok_or_else(unknown)?;
        let pts: Vec<u32> = (0..n as u32).collect();
        return Group::from_permutations(name, n, &[cycle(&pts, n)], DEFAULT_ORDER_BOUND);
    }
    if let Some(rest) = name.strip_prefix('E') {
        let (p, r) = rest.split_once('r').ok_or_else(unknown)?;
        let p: usize = p.parse().map_err(|_| unknown())?;
        let r: usize = r.parse().map_err(|_| unknown())?;
        if prime_of_power(p) != Some(p as u32) || r == 0 {
            return Err(unknown());
        }
        let degree = p * r;
        let gens: Vec<Vec<u32>> = (0..r)
            .map(|i| {
                let pts: Vec<u32> = ((i * p) as u32..((i + 1) * p) as u32).collect();
                cycle(&pts, degree)
            })
            .collect();
        return Group::from_permutations(name, degree, &gens, DEFAULT_ORDER_BOUND);
    }
    if let Some(rest) = name.strip_prefix('D') {
        let n = parse_prime_power(rest).ok_or_else(unknown)?;
        if n < 8 || n % 2 != 0 {
            return Err(unknown());
        }
        let m = (n / 2) as u32;
        return Group::from_permutations(name, m as usize, &[affine(m, 1, 1), affine(m, m - 1, 0)], DEFAULT_ORDER_BOUND);
    }
    Err(unknown())
}
