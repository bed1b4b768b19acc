use ttk_group::Group;

/// Conjugacy classes of elements, ordered by their minimal element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementClasses {
    pub representatives: Vec<u32>,
    pub sizes: Vec<usize>,
    /// class index for each element
    pub class_of: Vec<usize>,
    /// class of the inverse of each class
    pub inverse: Vec<usize>,
}

impl ElementClasses {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

pub fn element_classes(g: &Group) -> ElementClasses {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    for x in g.elements() {
        if class_of[x as usize] != usize::MAX {
            continue;
        }
        let idx = representatives.len();
        representatives.push(x);
        let mut size = 0;
        for y in g.elements() {
            let c = g.conj(y, x) as usize;
            if class_of[c] == usize::MAX {
                class_of[c] = idx;
                size += 1;
            }
        }
        sizes.push(size);
    }
    let inverse = representatives.iter().map(|&r| class_of[g.inv(r) as usize]).collect();
    ElementClasses { representatives, sizes, class_of, inverse }
}
