//! Brute-force ground truth over Z/m. Modules are enumerated as cosets in
//! `(Z/m)^g`; extensions are built as explicit group laws on `B × A` and
//! compared by exhaustive search for isomorphisms over `A` and `B`. Nothing
//! here uses normal forms or resolutions.

use crate::error::{Error, Result};
use crate::fgmod::{Presentation, Ring};
use crate::linalg::{self, Int};

/// Default bound on `|A|·|B|` for extension counting.
pub const DEFAULT_CAP: usize = 256;

/// Default bound on `m^g` when enumerating a presentation.
pub const DEFAULT_VECTOR_CAP: usize = 1 << 17;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// A finite Z/m-module with an explicit addition table.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    modulus: usize,
    gens: usize,
    /// Element index of every vector of `(Z/m)^g`, in mixed-radix order.
    class_of: Vec<usize>,
    reps: Vec<Vec<usize>>,
    table: Vec<usize>,
}

impl FiniteModule {
    /// Cosets of the subgroup generated by the relation rows (and `m·e_i`).
    pub fn from_presentation(p: &Presentation, vector_cap: usize) -> Result<Self> {
        let m = match p.ring() {
            Ring::Zmod(m) => m as usize,
            Ring::Z => return Err(Error::Precondition("the oracle works over Z/m only".into())),
        };
        let g = p.gens();
        let total = (0..g).try_fold(1usize, |acc, _| acc.checked_mul(m).filter(|&t| t <= vector_cap));
        let Some(total) = total else {
            return Err(Error::CapExceeded(format!("{m}^{g} vectors exceed the cap {vector_cap}")));
        };
        let mi = linalg::int(m as i64);
        let rels: Vec<Vec<usize>> = (0..p.relations().rows())
            .map(|r| {
                p.relations()
                    .row(r)
                    .iter()
                    .map(|v| usize::try_from(&linalg::reduce(v, &mi)).expect("reduced"))
                    .collect()
            })
            .collect();
        let decode = |mut code: usize| -> Vec<usize> {
            let mut v = vec![0; g];
            for c in v.iter_mut() {
                *c = code % m;
                code /= m;
            }
            v
        };
        let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &c| acc * m + c) };
        let mut parent: Vec<usize> = (0..total).collect();
        for code in 0..total {
            let v = decode(code);
            for r in &rels {
                let w: Vec<usize> = v.iter().zip(r).map(|(a, b)| (a + b) % m).collect();
                union(&mut parent, code, encode(&w));
            }
        }
        let mut class_of = vec![usize::MAX; total];
        let mut reps = Vec::new();
        let mut root_class = std::collections::HashMap::new();
        for code in 0..total {
            let root = find(&mut parent, code);
            let c = *root_class.entry(root).or_insert_with(|| {
                reps.push(decode(code));
                reps.len() - 1
            });
            class_of[code] = c;
        }
        let n = reps.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let w: Vec<usize> = reps[a].iter().zip(&reps[b]).map(|(x, y)| (x + y) % m).collect();
                table[a * n + b] = class_of[encode(&w)];
            }
        }
        Ok(FiniteModule {
            modulus: m,
            gens: g,
            class_of,
            reps,
            table,
        })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b]
    }

    /// `k·a` by repeated addition.
    pub fn mul(&self, k: usize, a: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    pub fn order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Element represented by a coordinate vector.
    pub fn element(&self, v: &[usize]) -> usize {
        let m = self.modulus;
        self.class_of[v.iter().rev().fold(0, |acc, &c| acc * m + c % m)]
    }

    /// Commutativity, associativity, identity and `m·x = 0`, exhaustively.
    pub fn check_axioms(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| self.add(0, a) == a && self.mul(self.modulus, a) == 0)
            && (0..n).all(|a| (0..n).all(|b| self.add(a, b) == self.add(b, a)))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.add(self.add(a, b), c) == self.add(a, self.add(b, c)))))
    }

    fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.len()];
        inside[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        inside
    }

    /// Elements `a_1, ..., a_s` with `A = ⟨a_1⟩ ⊕ ... ⊕ ⟨a_s⟩`, found by
    /// depth-first search over independent elements of large order.
    pub fn cyclic_decomposition(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut by_order: Vec<usize> = (1..n).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.order(a)), a));
        let mut chosen = Vec::new();
        assert!(self.dfs(&by_order, &mut chosen, 1), "finite abelian groups decompose");
        chosen.into_iter().map(|a| (a, self.order(a))).collect()
    }

    fn dfs(&self, cands: &[usize], chosen: &mut Vec<usize>, size: usize) -> bool {
        if size == self.len() {
            return true;
        }
        let inside = self.span(chosen);
        for &a in cands {
            if inside[a] {
                continue;
            }
            chosen.push(a);
            let s = self.span(chosen).iter().filter(|&&b| b).count();
            if s == size * self.order(a) && self.dfs(cands, chosen, s) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Extension classes of `0 -> B -> E -> A -> 0`.
#[derive(Clone, Debug)]
pub struct ExtReport {
    /// Orders of the chosen cyclic generators of `A`.
    pub a_orders: Vec<usize>,
    pub valid_structures: usize,
    pub classes: usize,
    /// One cocycle `(o_j · lift_j)_j ∈ B^s` per class.
    pub representatives: Vec<Vec<usize>>,
}

/// `E_c` on `B × ∏ Z/o_j`: adding carries `c_j` into `B` whenever the `j`-th
/// coordinate wraps around.
struct Extension<'a> {
    b: &'a FiniteModule,
    orders: &'a [usize],
    c: &'a [usize],
}

impl Extension<'_> {
    fn add(&self, x: &(usize, Vec<usize>), y: &(usize, Vec<usize>)) -> (usize, Vec<usize>) {
        let mut b = self.b.add(x.0, y.0);
        let mut a = Vec::with_capacity(self.orders.len());
        for j in 0..self.orders.len() {
            let s = x.1[j] + y.1[j];
            if s >= self.orders[j] {
                b = self.b.add(b, self.c[j]);
            }
            a.push(s % self.orders[j]);
        }
        (b, a)
    }

    fn mul(&self, k: usize, x: &(usize, Vec<usize>)) -> (usize, Vec<usize>) {
        let zero = (0, vec![0; self.orders.len()]);
        (0..k).fold(zero, |acc, _| self.add(&acc, x))
    }

    fn lift(&self, j: usize, beta: usize) -> (usize, Vec<usize>) {
        let mut a = vec![0; self.orders.len()];
        a[j] = 1 % self.orders[j];
        (beta, a)
    }
}

/// Counts extensions of `a` by `b` as Z/m-modules up to equivalence.
pub fn ext1_bruteforce(a: &FiniteModule, b: &FiniteModule, cap: usize) -> Result<ExtReport> {
    if a.modulus != b.modulus {
        return Err(Error::RingMismatch("modules over different rings".into()));
    }
    if a.len().saturating_mul(b.len()) > cap {
        return Err(Error::CapExceeded(format!("|A|·|B| = {} exceeds the cap {cap}", a.len() * b.len())));
    }
    let m = a.modulus;
    let dec = a.cyclic_decomposition();
    let orders: Vec<usize> = dec.iter().map(|&(_, o)| o).collect();
    let s = orders.len();
    let nb = b.len();
    let count = nb.pow(s as u32);
    let decode = |mut code: usize| -> Vec<usize> {
        let mut c = vec![0; s];
        for x in c.iter_mut() {
            *x = code % nb;
            code /= nb;
        }
        c
    };
    let encode = |c: &[usize]| -> usize { c.iter().rev().fold(0, |acc, &x| acc * nb + x) };
    // A candidate structure is a module over Z/m when every lift is killed by m.
    let mut valid = vec![false; count];
    for (code, ok) in valid.iter_mut().enumerate() {
        let c = decode(code);
        let e = Extension { b, orders: &orders, c: &c };
        *ok = (0..s).all(|j| {
            let x = e.mul(m, &e.lift(j, 0));
            x.0 == 0 && x.1.iter().all(|&v| v == 0)
        });
    }
    // An isomorphism E_c ≅ E_c' over A and B sends lift j of E_c to
    // (β_j, e_j) in E_c'; comparing o_j-multiples recovers c from c'. Moves
    // on one coordinate at a time generate all such isomorphisms.
    let mut parent: Vec<usize> = (0..count).collect();
    for code in 0..count {
        if !valid[code] {
            continue;
        }
        let c2 = decode(code);
        let e = Extension { b, orders: &orders, c: &c2 };
        for j in 0..s {
            for beta in 0..nb {
                let x = e.mul(orders[j], &e.lift(j, beta));
                let mut c = c2.clone();
                c[j] = x.0;
                let other = encode(&c);
                debug_assert!(valid[other]);
                union(&mut parent, code, other);
            }
        }
    }
    let mut representatives = Vec::new();
    for code in 0..count {
        if valid[code] && find(&mut parent, code) == code {
            representatives.push(decode(code));
        }
    }
    Ok(ExtReport {
        a_orders: orders,
        valid_structures: valid.iter().filter(|&&v| v).count(),
        classes: representatives.len(),
        representatives,
    })
}

/// Projectivity by lifting the identity through the free cover
/// `(Z/m)^g -> P`: each cyclic generator needs a preimage killed by its order.
pub fn lifting_bruteforce(p: &FiniteModule) -> bool {
    let m = p.modulus;
    let g = p.gens;
    let total = p.class_of.len();
    p.cyclic_decomposition().into_iter().all(|(a, o)| {
        (0..total).any(|code| {
            if p.class_of[code] != a {
                return false;
            }
            let mut c = code;
            (0..g).all(|_| {
                let digit = c % m;
                c /= m;
                (digit * o).is_multiple_of(m)
            })
        })
    })
}

/// Diagonal Z/m-modules `⊕ Z/d_i` (each `d_i > 1` dividing `m`, listed in
/// non-decreasing order) with at most `max_order` elements.
pub fn small_modules(m: u64, max_order: u64) -> Vec<Vec<u64>> {
    let divisors: Vec<u64> = (2..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Vec<u64>, u64)> = vec![(Vec::new(), 1)];
    while let Some((orders, size)) = frontier.pop() {
        let start = orders.last().copied().unwrap_or(0);
        for &d in divisors.iter().filter(|&&d| d >= start) {
            if size * d <= max_order {
                let mut next = orders.clone();
                next.push(d);
                out.push(next.clone());
                frontier.push((next, size * d));
            }
        }
    }
    out.sort();
    out
}

pub fn presentation(m: u64, orders: &[u64]) -> Presentation {
    let orders: Vec<Int> = orders.iter().map(|&d| linalg::int(d as i64)).collect();
    Presentation::from_orders(Ring::Zmod(m), &orders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgmod;

    fn fm(m: u64, orders: &[u64]) -> FiniteModule {
        FiniteModule::from_presentation(&presentation(m, orders), DEFAULT_VECTOR_CAP).unwrap()
    }

    #[test]
    fn enumeration() {
        let a = fm(12, &[2, 6]);
        assert_eq!(a.len(), 12);
        assert!(a.check_axioms());
        let orders: Vec<usize> = a.cyclic_decomposition().iter().map(|&(_, o)| o).collect();
        assert_eq!(orders.iter().product::<usize>(), 12);
        let p = Presentation::new(Ring::Zmod(4), 2, crate::linalg::IntMatrix::from_i64(1, 2, &[2, 2])).unwrap();
        let f = FiniteModule::from_presentation(&p, 64).unwrap();
        assert_eq!(f.len(), 8);
        assert!(FiniteModule::from_presentation(&presentation(12, &[2, 2, 2, 2, 2]), 1000).is_err());
    }

    #[test]
    fn extension_counts() {
        let r = ext1_bruteforce(&fm(4, &[2]), &fm(4, &[2]), DEFAULT_CAP).unwrap();
        assert_eq!(r.classes, 2);
        assert_eq!(ext1_bruteforce(&fm(4, &[4]), &fm(4, &[2]), DEFAULT_CAP).unwrap().classes, 1);
        assert_eq!(ext1_bruteforce(&fm(6, &[2]), &fm(6, &[3]), DEFAULT_CAP).unwrap().classes, 1);
        assert!(ext1_bruteforce(&fm(4, &[4, 4]), &fm(4, &[4, 4, 2]), DEFAULT_CAP).is_err());
    }

    #[test]
    fn agrees_with_fgmod_on_a_few_pairs() {
        for (m, a, b) in [(8, vec![2], vec![4]), (9, vec![3], vec![3, 3]), (12, vec![2, 3], vec![6])] {
            let (pa, pb) = (presentation(m, &a), presentation(m, &b));
            let ours = ext1_bruteforce(&fm(m, &a), &fm(m, &b), DEFAULT_CAP).unwrap().classes;
            let theirs = fgmod::ext1(&pa, &pb).unwrap().order().unwrap();
            assert_eq!(crate::linalg::int(ours as i64), theirs);
        }
    }

    #[test]
    fn projectivity() {
        assert!(lifting_bruteforce(&fm(6, &[2])));
        assert!(!lifting_bruteforce(&fm(4, &[2])));
        assert!(lifting_bruteforce(&fm(4, &[4, 4])));
        assert!(lifting_bruteforce(&fm(12, &[4, 3])));
    }

    #[test]
    fn module_lists() {
        let l = small_modules(4, 16);
        assert!(l.contains(&vec![]) && l.contains(&vec![2, 2, 2, 2]) && l.contains(&vec![4, 4]));
        assert!(!l.contains(&vec![2, 2, 4, 4]));
    }
}
