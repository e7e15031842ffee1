//! 4-connected component labeling on row-major grids.

/// Component labels for a `width x height` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub width: usize,
    pub height: usize,
    /// Per-cell component id, `None` for cells excluded from labeling.
    pub labels: Vec<Option<u32>>,
    pub count: usize,
}

impl Components {
    /// Pixel count of each component, indexed by component id.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for l in self.labels.iter().flatten() {
            sizes[*l as usize] += 1;
        }
        sizes
    }
}

/// Labels 4-connected runs of cells sharing the same class.
///
/// `class` returns `None` for cells that take no part in labeling. Two
/// neighbouring cells are joined only when their classes compare equal.
/// Component ids are assigned in raster order of each component's first cell.
pub fn label_4<K: PartialEq>(
    width: usize,
    height: usize,
    class: impl Fn(usize) -> Option<K>,
) -> Components {
    let n = width * height;
    let classes: Vec<Option<K>> = (0..n).map(class).collect();
    let mut labels = vec![None; n];
    let mut count = 0u32;
    let mut stack = Vec::new();

    for start in 0..n {
        if labels[start].is_some() || classes[start].is_none() {
            continue;
        }
        labels[start] = Some(count);
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (x, y) = (i % width, i / width);
            let mut visit = |j: usize| {
                if labels[j].is_none() && classes[j].is_some() && classes[j] == classes[i] {
                    labels[j] = Some(count);
                    stack.push(j);
                }
            };
            if x > 0 {
                visit(i - 1);
            }
            if x + 1 < width {
                visit(i + 1);
            }
            if y > 0 {
                visit(i - width);
            }
            if y + 1 < height {
                visit(i + width);
            }
        }
        count += 1;
    }

    Components {
        width,
        height,
        labels,
        count: count as usize,
    }
}
