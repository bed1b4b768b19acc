use std::ops::{Add, Index, Neg, Sub};

/// Integer values indexed by the subgroup classes of one table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperclassFunction(Vec<i64>);

impl SuperclassFunction {
    pub fn new(values: Vec<i64>) -> Self {
        SuperclassFunction(values)
    }

    pub fn zero(len: usize) -> Self {
        SuperclassFunction(vec![0; len])
    }

    pub fn constant(len: usize, v: i64) -> Self {
        SuperclassFunction(vec![v; len])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        SuperclassFunction(self.0.iter().map(|v| v * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }
}

impl Index<usize> for SuperclassFunction {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &SuperclassFunction {
    type Output = SuperclassFunction;
    fn add(self, o: &SuperclassFunction) -> SuperclassFunction {
        assert_eq!(self.len(), o.len());
        SuperclassFunction(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &SuperclassFunction {
    type Output = SuperclassFunction;
    fn sub(self, o: &SuperclassFunction) -> SuperclassFunction {
        assert_eq!(self.len(), o.len());
        SuperclassFunction(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &SuperclassFunction {
    type Output = SuperclassFunction;
    fn neg(self) -> SuperclassFunction {
        SuperclassFunction(self.0.iter().map(|a| -a).collect())
    }
}
