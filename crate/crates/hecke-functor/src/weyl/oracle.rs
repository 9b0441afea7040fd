//! Independent brute-force checks for lengths and `Ω`: shortest words in the
//! affine Coxeter generators and hyperplane counts from an alcove point.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::Zero;

use super::{rat_floor_i64, ExtAffineElt, WeylGroup};
use crate::numkernel::Rat;
use crate::rootdata::intmat::Mat;

/// A point in the interior of the fundamental alcove.
pub fn alcove_point(g: &WeylGroup) -> Vec<Rat> {
    let d = g.datum();
    let h = d
        .highest_coroots()
        .iter()
        .map(|&a| d.cosimple_coords(a).iter().sum::<i64>() + 1)
        .max()
        .unwrap_or(1);
    let rows: Vec<Vec<i64>> = d.simples().iter().map(|&s| d.coroot(s).to_vec()).collect();
    let m = Mat::from_rows(&rows, d.rank());
    // ⟨p, α_i∨⟩ = 1/(2h) for every simple coroot; scale to stay integral.
    let rhs = vec![1i64; rows.len()];
    let sol = m.solve_rational(&rhs).expect("simple coroots are independent");
    let scale = Rat::new(1.into(), (2 * h).into());
    sol.into_iter().map(|x| x * &scale).collect()
}

fn pair_rat(v: &[Rat], y: &[i64]) -> Rat {
    v.iter().zip(y).fold(Rat::zero(), |s, (a, b)| s + a * Rat::from_integer((*b).into()))
}

/// Number of affine root hyperplanes separating `p` and `e(p)`.
pub fn separating_hyperplanes(g: &WeylGroup, p: &[Rat], e: &ExtAffineElt) -> usize {
    let d = g.datum();
    let q = g.ext_act_rational(e, p);
    d.positive_roots()
        .into_iter()
        .map(|a| (rat_floor_i64(&pair_rat(p, d.coroot(a))) - rat_floor_i64(&pair_rat(&q, d.coroot(a)))).unsigned_abs() as usize)
        .sum()
}

fn boxed(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every `t_x w` with all `|x_i| ≤ bound`.
pub fn box_elements(g: &WeylGroup, bound: i64) -> Vec<ExtAffineElt> {
    boxed(g.datum().rank(), bound)
        .into_iter()
        .flat_map(|t| (0..g.order() as u32).map(move |w| ExtAffineElt { t: t.clone(), w }))
        .collect()
}

/// Elements of the box fixing the fundamental alcove.
pub fn omega_by_alcove(g: &WeylGroup, bound: i64) -> Vec<ExtAffineElt> {
    let p = alcove_point(g);
    box_elements(g, bound).into_iter().filter(|e| separating_hyperplanes(g, &p, e) == 0).collect()
}

/// Shortest-word lengths of every element of the box, by breadth-first search
/// from `Ω` under left multiplication by the affine simple reflections.
/// Returns `None` if the search exceeds `max_len` before covering the box.
pub fn bfs_lengths(g: &WeylGroup, bound: i64, max_len: usize) -> Option<HashMap<ExtAffineElt, usize>> {
    let omega = omega_by_alcove(g, bound.max(2));
    let targets: HashSet<ExtAffineElt> = box_elements(g, bound).into_iter().collect();
    let gens = g.affine_simples();
    let mut dist: HashMap<ExtAffineElt, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for o in omega {
        dist.insert(o.clone(), 0);
        queue.push_back(o);
    }
    let mut found: HashMap<ExtAffineElt, usize> = HashMap::new();
    while let Some(e) = queue.pop_front() {
        let d = dist[&e];
        if targets.contains(&e) {
            found.insert(e.clone(), d);
            if found.len() == targets.len() {
                return Some(found);
            }
        }
        if d >= max_len {
            continue;
        }
        for s in &gens {
            let n = g.ext_mul(s, &e);
            if !dist.contains_key(&n) {
                dist.insert(n.clone(), d + 1);
                queue.push_back(n);
            }
        }
    }
    None
}
