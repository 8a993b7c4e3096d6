//! Canonical forms of vertex- and edge-labeled multigraphs by individualization and refinement.

use std::collections::BTreeMap;

/// Canonical encoding: vertex labels in canonical order, then edges `(i, j, label)` with
/// `i <= j` in canonical positions, sorted.
pub type Encoding<V, E> = (Vec<V>, Vec<(usize, usize, E)>);

pub fn canonical_form<V: Ord + Clone, E: Ord + Clone>(vlabels: &[V], edges: &[(usize, usize, E)]) -> Encoding<V, E> {
    canonical_form_with_order(vlabels, edges).0
}

/// Canonical encoding plus the position assigned to each input vertex.
pub fn canonical_form_with_order<V: Ord + Clone, E: Ord + Clone>(vlabels: &[V], edges: &[(usize, usize, E)]) -> (Encoding<V, E>, Vec<usize>) {
    let n = vlabels.len();
    let mut distinct: Vec<&V> = vlabels.iter().collect();
    distinct.sort();
    distinct.dedup();
    let colors: Vec<usize> = vlabels.iter().map(|l| distinct.binary_search(&l).unwrap()).collect();
    let mut adj: Vec<Vec<(usize, &E)>> = vec![Vec::new(); n];
    for (u, v, l) in edges {
        adj[*u].push((*v, l));
        if u != v {
            adj[*v].push((*u, l));
        }
    }
    let mut best: Option<(Encoding<V, E>, Vec<usize>)> = None;
    search(&refine(colors, &adj), &adj, vlabels, edges, &mut best);
    best.expect("at least one leaf")
}

fn refine<E: Ord>(mut colors: Vec<usize>, adj: &[Vec<(usize, &E)>]) -> Vec<usize> {
    loop {
        let sigs: Vec<(usize, Vec<(usize, &E)>)> = (0..colors.len())
            .map(|v| {
                let mut nb: Vec<(usize, &E)> = adj[v].iter().map(|&(w, l)| (colors[w], l)).collect();
                nb.sort();
                (colors[v], nb)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<(usize, &E)>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
        let count_old = {
            let mut c = colors.clone();
            c.sort();
            c.dedup();
            c.len()
        };
        let stable = distinct.len() == count_old;
        colors = next;
        if stable {
            return colors;
        }
    }
}

fn search<V: Ord + Clone, E: Ord + Clone>(
    colors: &[usize],
    adj: &[Vec<(usize, &E)>],
    vlabels: &[V],
    edges: &[(usize, usize, E)],
    best: &mut Option<(Encoding<V, E>, Vec<usize>)>,
) {
    let n = colors.len();
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        classes.entry(c).or_default().push(v);
    }
    match classes.values().find(|c| c.len() > 1) {
        None => {
            let pos = colors.to_vec();
            let mut vl: Vec<(usize, V)> = (0..n).map(|v| (pos[v], vlabels[v].clone())).collect();
            vl.sort_by(|a, b| a.0.cmp(&b.0));
            let mut es: Vec<(usize, usize, E)> = edges
                .iter()
                .map(|(u, v, l)| {
                    let (a, b) = (pos[*u], pos[*v]);
                    (a.min(b), a.max(b), l.clone())
                })
                .collect();
            es.sort();
            let enc = (vl.into_iter().map(|x| x.1).collect(), es);
            if best.as_ref().map_or(true, |(b, _)| enc < *b) {
                *best = Some((enc, pos));
            }
        }
        Some(cell) => {
            let target = colors[cell[0]];
            for &v in cell {
                // Individualize v: it keeps the class color; the rest of its class shifts up.
                let mut c2: Vec<usize> = colors.iter().map(|&c| c * 2).collect();
                for &w in cell {
                    if w != v {
                        c2[w] = target * 2 + 1;
                    }
                }
                search(&refine(c2, adj), adj, vlabels, edges, best);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeling_invariance() {
        let e1 = vec![(0, 1, 'a'), (1, 2, 'b'), (2, 0, 'a')];
        let e2 = vec![(2, 0, 'a'), (0, 1, 'b'), (1, 2, 'a')];
        let l = vec![1, 1, 1];
        assert_eq!(canonical_form(&l, &e1), canonical_form(&l, &e2));
    }

    #[test]
    fn distinguishes_labels() {
        let e = vec![(0, 1, 'a')];
        assert_ne!(canonical_form(&[1, 2], &e), canonical_form(&[1, 1], &e));
    }

    #[test]
    fn cycle_vs_path_plus_loop() {
        let cyc = vec![(0, 1, ()), (1, 2, ()), (2, 0, ())];
        let other = vec![(0, 1, ()), (1, 2, ()), (2, 2, ())];
        assert_ne!(canonical_form(&[0, 0, 0], &cyc), canonical_form(&[0, 0, 0], &other));
    }
}
