//! Enumeration of set partitions of `{0, .., n-1}`.
//!
//! Partitions are produced from restricted growth strings, so every
//! partition appears once, with blocks ordered by their smallest element and
//! each block sorted increasingly.

/// A set partition as a list of blocks.
pub type Partition = Vec<Vec<usize>>;

/// All set partitions of `{0, .., n-1}`; `n = 0` yields the empty partition.
pub fn set_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    // restricted growth string: rgs[0] = 0, rgs[i] <= 1 + max(rgs[..i])
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = rgs.iter().copied().max().unwrap_or(0) + 1;
        let mut partition: Partition = vec![Vec::new(); blocks];
        for (pos, &b) in rgs.iter().enumerate() {
            partition[b].push(pos);
        }
        out.push(partition);

        // next string in lexicographic order
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Set partitions of `{0, .., n-1}` into exactly `k` blocks.
pub fn set_partitions_into(n: usize, k: usize) -> Vec<Partition> {
    set_partitions(n).into_iter().filter(|p| p.len() == k).collect()
}

/// Bell number `B(n)`, computed with the Bell triangle.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().expect("rows are nonempty"));
        for &x in &row {
            let prev = *next.last().expect("just pushed");
            next.push(prev + x);
        }
        row = next;
    }
    row[0]
}

/// Every permutation of `0..k`, in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..k).collect();
    let mut out = vec![current.clone()];
    // Narayana's next-permutation
    loop {
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let pivot = i - 1;
        let j = (pivot + 1..k)
            .rev()
            .find(|&j| current[j] > current[pivot])
            .expect("a larger element exists after the pivot");
        current.swap(pivot, j);
        current[pivot + 1..].reverse();
        out.push(current.clone());
    }
}

/// Positions selected by the bits of `mask`, increasing.
pub(crate) fn mask_positions(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&p| mask & (1 << p) != 0).collect()
}
