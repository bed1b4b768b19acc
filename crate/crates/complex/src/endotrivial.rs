use ttk_group::{SubgroupClassTable, SuperclassFunction};

use crate::complex::OrbitComplex;
use crate::ComplexError;

impl OrbitComplex {
    /// Degree of the single homology class of C^H for each subgroup class.
    pub fn h_marks(&self, table: &SubgroupClassTable) -> Result<SuperclassFunction, ComplexError> {
        let mut vals = Vec::with_capacity(table.len());
        for (i, class) in table.classes().iter().enumerate() {
            let degree = |h| {
                let dims = self.dense_at(h).homology_dims();
                if dims.values().sum::<usize>() != 1 {
                    return Err(ComplexError::NotEndotrivial { class: i, dims });
                }
                Ok(*dims.keys().next().expect("one class"))
            };
            let d = degree(&class.representative)?;
            let other = class.members.last().expect("nonempty class");
            if degree(other)? != d {
                return Err(ComplexError::NonConstantHMark { class: i });
            }
            vals.push(d as i64);
        }
        Ok(SuperclassFunction::new(vals))
    }

    /// Total homology of C^H is one dimensional for every subgroup class.
    pub fn is_endotrivial(&self, table: &SubgroupClassTable) -> bool {
        table
            .classes()
            .iter()
            .all(|c| self.dense_at(&c.representative).total_homology() == 1)
    }
}
