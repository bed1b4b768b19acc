use std::fmt;

/// Exponents of the basis endotrivials in a tensor product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Twist(pub Vec<u32>);

impl Twist {
    pub fn zero(len: usize) -> Twist {
        Twist(vec![0; len])
    }

    pub fn unit_vector(len: usize, j: usize) -> Twist {
        let mut v = vec![0; len];
        v[j] = 1;
        Twist(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest basis index with nonzero exponent.
    pub fn last_index(&self) -> Option<usize> {
        self.0.iter().rposition(|&x| x != 0)
    }

    pub fn add(&self, other: &Twist) -> Twist {
        Twist(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, n: u32) -> Twist {
        Twist(self.0.iter().map(|a| a * n).collect())
    }

    /// All twists with total exponent at most `max_total`, in graded lex order.
    pub fn enumerate(len: usize, max_total: u32) -> Vec<Twist> {
        let mut out = Vec::new();
        for total in 0..=max_total {
            let mut cur = vec![0u32; len];
            compositions(&mut cur, 0, total, &mut out);
        }
        out
    }
}

fn compositions(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Twist>) {
    if pos + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = left;
            out.push(Twist(cur.clone()));
        } else if left == 0 {
            out.push(Twist(Vec::new()));
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        compositions(cur, pos + 1, left - k, out);
    }
    cur[pos] = 0;
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
