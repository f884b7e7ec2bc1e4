//! Exact expected consensus time of the pairwise game on the triangle K3,
//! by enumerating every reachable state up to relabelling of words.

use std::collections::HashMap;

/// Per-node vocabularies as bitmasks over word labels 0..4.
type State = [u8; 3];

const FRESH: u8 = 3;

fn canonical(s: State) -> State {
    let mut best = [u8::MAX; 3];
    // every permutation of the four labels
    for perm in permutations4() {
        let mapped = s.map(|mask| {
            let mut out = 0u8;
            for bit in 0..4 {
                if mask & (1 << bit) != 0 {
                    out |= 1 << perm[bit];
                }
            }
            out
        });
        if mapped < best {
            best = mapped;
        }
    }
    best
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn is_consensus(s: State) -> bool {
    s[0].count_ones() == 1 && s[0] == s[1] && s[1] == s[2]
}

/// Successor distribution of one speaker event.
fn transitions(s: State) -> Vec<(State, f64)> {
    let mut out = Vec::new();
    for speaker in 0..3 {
        let mut voc = s;
        if voc[speaker] == 0 {
            // canonical states use at most labels 0..2, so 3 is unused
            voc[speaker] = 1 << FRESH;
        }
        let words: Vec<u8> = (0..4).filter(|b| voc[speaker] & (1 << b) != 0).collect();
        for listener in (0..3).filter(|&l| l != speaker) {
            for &w in &words {
                let bit = 1u8 << w;
                let mut next = voc;
                if next[listener] & bit != 0 {
                    next[listener] = bit;
                    next[speaker] = bit;
                } else {
                    next[listener] |= bit;
                }
                let prob = 1.0 / 3.0 * 0.5 / words.len() as f64;
                out.push((canonical(next), prob));
            }
        }
    }
    out
}

/// Expected number of speaker events from all-empty vocabularies to consensus.
pub fn k3_pairwise_expected_steps() -> f64 {
    let start = [0u8; 3];
    let mut index: HashMap<State, usize> = HashMap::new();
    let mut states = vec![start];
    index.insert(start, 0);
    let mut i = 0;
    while i < states.len() {
        let s = states[i];
        if !is_consensus(s) {
            for (t, _) in transitions(s) {
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(t) {
                    e.insert(states.len());
                    states.push(t);
                }
            }
        }
        i += 1;
    }

    // (I - Q) E = 1 over transient states
    let transient: Vec<usize> = (0..states.len()).filter(|&i| !is_consensus(states[i])).collect();
    let pos: HashMap<usize, usize> = transient.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let m = transient.len();
    let mut a = vec![vec![0.0f64; m + 1]; m];
    for (row, &si) in transient.iter().enumerate() {
        a[row][row] += 1.0;
        a[row][m] = 1.0;
        for (t, p) in transitions(states[si]) {
            if let Some(&col) = pos.get(&index[&t]) {
                a[row][col] -= p;
            }
        }
    }
    gauss_solve(a)[pos[&0]]
}

fn gauss_solve(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let m = a.len();
    for col in 0..m {
        let pivot = (col..m).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
        a.swap(col, pivot);
        let p = a[col][col];
        for k in col..=m {
            a[col][k] /= p;
        }
        for r in 0..m {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col];
                for k in col..=m {
                    a[r][k] -= f * a[col][k];
                }
            }
        }
    }
    a.iter().map(|row| row[m]).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn probabilities_sum_to_one() {
        for s in [[0u8; 3], [1, 1, 3], [1, 2, 4]] {
            let total: f64 = super::transitions(s).iter().map(|t| t.1).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }
}
