use ttk_group::Group;
use ttk_linalg::{add_mod, inv_mod, mul_mod, FpMatrix};

use crate::classes::{element_classes, ElementClasses};
use crate::CharTableError;

/// Largest splitting prime tried before giving up.
const PRIME_SEARCH_LIMIT: u64 = 1 << 31;

/// Irreducible characters as residues modulo a prime `modulus` that is
/// 1 mod the exponent and exceeds twice the group order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub modulus: u32,
    pub group_order: usize,
    pub classes: ElementClasses,
    /// class index of g^2 for each class
    pub squares: Vec<usize>,
    pub characters: Vec<Vec<u32>>,
    pub degrees: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn splitting_prime(order: usize, exponent: usize) -> Result<u32, CharTableError> {
    let e = exponent as u64;
    let mut m = (2 * order as u64) / e;
    loop {
        let l = m * e + 1;
        if l >= PRIME_SEARCH_LIMIT {
            return Err(CharTableError::NoSuitablePrime);
        }
        if l > 2 * order as u64 && is_prime(l) {
            return Ok(l as u32);
        }
        m += 1;
    }
}

/// c[i][j][k] = #{x in K_i : x^-1 g_k in K_j}.
fn class_constants(g: &Group, cl: &ElementClasses) -> Vec<Vec<Vec<u32>>> {
    let k = cl.len();
    let mut c = vec![vec![vec![0u32; k]; k]; k];
    for x in g.elements() {
        let i = cl.class_of[x as usize];
        let xi = g.inv(x);
        for (kk, &gk) in cl.representatives.iter().enumerate() {
            let j = cl.class_of[g.mul(xi, gk) as usize];
            c[i][j][kk] += 1;
        }
    }
    c
}

/// Matrix of `m` restricted to the invariant column span of `basis`.
fn restrict(m: &FpMatrix, basis: &FpMatrix) -> FpMatrix {
    let (_, rows) = basis.transpose().rref();
    let all_cols: Vec<usize> = (0..basis.cols()).collect();
    let r = basis.submatrix(&rows, &all_cols);
    let image = m.mul(basis).expect("shape").submatrix(&rows, &all_cols);
    r.inverse().expect("independent rows").mul(&image).expect("shape")
}

fn is_scalar(a: &FpMatrix) -> bool {
    (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == if i == j { a.get(0, 0) } else { 0 }))
}

fn split(m: &FpMatrix, basis: &FpMatrix, l: u32) -> Vec<FpMatrix> {
    let a = restrict(m, basis);
    if is_scalar(&a) {
        return vec![basis.clone()];
    }
    let d = a.rows();
    let mut out = Vec::new();
    let mut found = 0;
    for lam in 0..l {
        let mut shifted = a.clone();
        for i in 0..d {
            shifted.set(i, i, (shifted.get(i, i) + l - lam) % l);
        }
        let ker = shifted.kernel_basis();
        if ker.cols() > 0 {
            found += ker.cols();
            out.push(basis.mul(&ker).expect("shape"));
            if found == d {
                break;
            }
        }
    }
    out
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Value at the class of the inverse.
    pub fn conjugate(&self, chi: &[u32]) -> Vec<u32> {
        self.classes.inverse.iter().map(|&j| chi[j]).collect()
    }

    /// Sum over g of chi(g) psi(g^-1), modulo the prime.
    pub fn inner(&self, chi: &[u32], psi: &[u32]) -> u32 {
        let l = self.modulus;
        let mut s = 0;
        for (i, &sz) in self.classes.sizes.iter().enumerate() {
            let term = mul_mod(chi[i], psi[self.classes.inverse[i]], l);
            s = add_mod(s, mul_mod(term, (sz as u64 % l as u64) as u32, l), l);
        }
        s
    }

    /// Check degrees and row orthogonality.
    pub fn check(&self) -> Result<(), CharTableError> {
        let l = self.modulus;
        let n = (self.group_order as u64 % l as u64) as u32;
        let sq: u64 = self.degrees.iter().map(|&d| d as u64 * d as u64).sum();
        if sq != self.group_order as u64 || self.len() != self.classes.len() {
            return Err(CharTableError::Inconsistent(format!("degree squares sum to {sq}")));
        }
        for (a, chi) in self.characters.iter().enumerate() {
            if chi[0] != self.degrees[a] {
                return Err(CharTableError::Inconsistent(format!("character {a} degree mismatch")));
            }
            for (b, psi) in self.characters.iter().enumerate() {
                let want = if a == b { n } else { 0 };
                if self.inner(chi, psi) != want {
                    return Err(CharTableError::Inconsistent(format!("characters {a} and {b} not orthogonal")));
                }
            }
        }
        Ok(())
    }
}

fn sort_characters(chars: &mut [(u32, Vec<u32>)]) {
    chars.sort_by(|a, b| {
        let ta = a.1.iter().any(|&v| v != 1);
        let tb = b.1.iter().any(|&v| v != 1);
        (a.0, ta, &a.1).cmp(&(b.0, tb, &b.1))
    });
}

pub(crate) fn square_classes(g: &Group, cl: &ElementClasses) -> Vec<usize> {
    cl.representatives.iter().map(|&r| cl.class_of[g.mul(r, r) as usize]).collect()
}

pub fn dixon_character_table(g: &Group) -> Result<CharacterTable, CharTableError> {
    let cl = element_classes(g);
    let k = cl.len();
    let l = splitting_prime(g.order(), g.exponent())?;
    let c = class_constants(g, &cl);
    let mut spaces = vec![FpMatrix::identity(k, l)];
    for ci in c.iter().skip(1) {
        if spaces.iter().all(|s| s.cols() == 1) {
            break;
        }
        let mut m = FpMatrix::zeros(k, k, l);
        for (j, row) in ci.iter().enumerate() {
            for (kk, &v) in row.iter().enumerate() {
                m.set(j, kk, v % l);
            }
        }
        spaces = spaces.iter().flat_map(|s| if s.cols() == 1 { vec![s.clone()] } else { split(&m, s, l) }).collect();
    }
    if spaces.len() != k || spaces.iter().any(|s| s.cols() != 1) {
        return Err(CharTableError::Inconsistent("class sums not simultaneously diagonalised".into()));
    }
    let order_mod = (g.order() as u64 % l as u64) as u32;
    let mut chars = Vec::with_capacity(k);
    for s in &spaces {
        let v = s.column(0);
        let scale = inv_mod(v[0], l);
        let w: Vec<u32> = v.iter().map(|&x| mul_mod(x, scale, l)).collect();
        // sum_i w_i w_i' / |K_i| = |G| / chi(1)^2
        let mut denom = 0;
        for i in 0..k {
            let t = mul_mod(w[i], w[cl.inverse[i]], l);
            denom = add_mod(denom, mul_mod(t, inv_mod(cl.sizes[i] as u32 % l, l), l), l);
        }
        let d2 = mul_mod(order_mod, inv_mod(denom, l), l);
        let degree = (1..=g.order() as u32)
            .take_while(|d| (d * d) as usize <= g.order())
            .find(|d| (d * d) % l == d2)
            .ok_or_else(|| CharTableError::Inconsistent("degree does not lift".into()))?;
        let values: Vec<u32> = (0..k)
            .map(|i| mul_mod(mul_mod(w[i], degree, l), inv_mod(cl.sizes[i] as u32 % l, l), l))
            .collect();
        chars.push((degree, values));
    }
    sort_characters(&mut chars);
    let table = CharacterTable {
        modulus: l,
        group_order: g.order(),
        squares: square_classes(g, &cl),
        classes: cl,
        degrees: chars.iter().map(|c| c.0).collect(),
        characters: chars.into_iter().map(|c| c.1).collect(),
    };
    table.check()?;
    Ok(table)
}

/// Frobenius–Schur indicator of `chi`: 1, 0 or -1.
pub fn frobenius_schur(table: &CharacterTable, chi: &[u32]) -> Result<i32, CharTableError> {
    let l = table.modulus;
    let mut s = 0;
    for (i, &sz) in table.classes.sizes.iter().enumerate() {
        s = add_mod(s, mul_mod(sz as u32 % l, chi[table.squares[i]], l), l);
    }
    let nu = mul_mod(s, inv_mod((table.group_order as u64 % l as u64) as u32, l), l);
    match nu {
        0 => Ok(0),
        1 => Ok(1),
        x if x == l - 1 => Ok(-1),
        _ => Err(CharTableError::LiftAmbiguity),
    }
}
