#![allow(dead_code)]

use std::collections::BTreeSet;

use chainspec::dynamics::{AbstractPds, Point};
use chainspec::CharacterSeq;
use rand::Rng;

/// A random abstract system on `1..=max_points` points: each point lies in the
/// domain with probability 7/10 and is sent anywhere.
pub fn random_pds(rng: &mut impl Rng, max_points: usize) -> AbstractPds {
    let n = rng.gen_range(1..=max_points);
    let labels = (0..n).map(|p| format!("p{p}")).collect();
    let alpha = (0..n)
        .map(|_| rng.gen_bool(0.7).then(|| rng.gen_range(0..n)))
        .collect();
    AbstractPds::new(labels, alpha).expect("well-formed")
}

/// Infinite backward chains found by brute force. Every backward path of
/// length `2|M|` through points that still have backward paths of that
/// length is walked; the first repeated point closes a lasso. Also returns
/// paths that leave their cycle, which would mean the lasso is not the only
/// continuation.
pub fn backward_tree_infinite_chains(pds: &AbstractPds) -> (BTreeSet<CharacterSeq>, usize) {
    let depth = 2 * pds.len();
    // reach[x] = length of the longest backward path from x, capped at depth.
    let mut reach = vec![0usize; pds.len()];
    for _ in 0..depth {
        let next: Vec<usize> = pds
            .points()
            .map(|x| {
                pds.preimages(x)
                    .iter()
                    .map(|&y| (reach[y] + 1).min(depth))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        reach = next;
    }

    let mut found = BTreeSet::new();
    let mut stray = 0;
    let mut stack: Vec<Vec<Point>> = pds
        .points()
        .filter(|&x| reach[x] >= depth)
        .map(|x| vec![x])
        .collect();
    while let Some(path) = stack.pop() {
        if path.len() == depth + 1 {
            let (i, k) = first_repeat(&path).expect("a path longer than |M| repeats");
            let period: Vec<Point> = path[i..k].to_vec();
            let follows_cycle = path[i..]
                .iter()
                .enumerate()
                .all(|(t, &x)| x == period[t % period.len()]);
            if !follows_cycle {
                stray += 1;
            }
            found.insert(CharacterSeq::lasso(path[..i].to_vec(), period));
            continue;
        }
        let last = *path.last().expect("nonempty");
        for y in pds.preimages(last) {
            if reach[y] >= depth {
                let mut next = path.clone();
                next.push(y);
                stack.push(next);
            }
        }
    }
    (found, stray)
}

fn first_repeat(path: &[Point]) -> Option<(usize, usize)> {
    (1..path.len()).find_map(|k| path[..k].iter().position(|&x| x == path[k]).map(|i| (i, k)))
}
