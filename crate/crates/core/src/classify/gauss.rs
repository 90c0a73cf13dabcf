//! Gaussian rings.
//!
//! The decision procedure is the local pair test: a local ring S is
//! Gaussian iff for all x, y
//!   (i)  (x,y)² = (x²) or (x,y)² = (y²), and
//!   (ii) (x,y)² = (x²) and xy = 0 imply y² = 0.
//! A ring is Gaussian iff all its localizations at maximal ideals are.
//!
//! The definitional check (every f of degree ≤ D is Gauss against every g of
//! degree ≤ D) is an independent cross-check, kept apart from the decision.

use super::poly::{mul_coeffs, Polynomial};
use super::{PropertyVerdict, Witness};
use crate::bitset::BitSet;
use crate::ideal::principal_set;
use crate::lattice::IdealLattice;
use crate::localize::{localize_finite, MultiplicativeSet};
use crate::par::Exec;
use crate::ring::{Code, Ring};

/// Largest coefficient-space size `|R|^(D+1)` the definitional check accepts.
pub const DEFINITIONAL_LIMIT: u64 = 1 << 24;
/// |R| ≥ 2 and |R|^m ≤ 2²⁴ bound the coefficient count m.
const MAX_COEFFS: usize = 24;

pub fn is_gaussian(ring: &Ring) -> PropertyVerdict {
    is_gaussian_with(ring, Exec::default())
}

pub fn is_gaussian_with(ring: &Ring, exec: Exec) -> PropertyVerdict {
    let verdict = |holds| PropertyVerdict::new("gaussian", holds);
    if ring.is_zero_ring() {
        return verdict(true);
    }
    if ring.is_local() {
        return match local_scan(ring, exec) {
            None => verdict(true),
            Some((x, y)) => verdict(false).with_witness(Witness::Pair(x, y)),
        };
    }
    for m in ring.maximal_ideals() {
        let s = MultiplicativeSet::complement_of(&m).expect("maximal ideals are prime");
        let loc = localize_finite(&s).expect("finite localization");
        if let Some((x, y)) = local_scan(&loc.ring, exec) {
            return verdict(false).with_witness(Witness::LocalizedPair {
                maximal: m.generators().to_vec(),
                x: loc.lift(x),
                y: loc.lift(y),
            });
        }
    }
    verdict(true)
}

/// Principal ideals (x²) for every x, indexed by x.
fn square_principals(ring: &Ring) -> Vec<BitSet> {
    let mut cache: Vec<Option<BitSet>> = vec![None; ring.order()];
    ring.elements()
        .map(|x| {
            let sq = ring.mul(x, x) as usize;
            cache[sq]
                .get_or_insert_with(|| principal_set(ring, sq as Code))
                .clone()
        })
        .collect()
}

/// Whether the unordered pair {x, y} violates (i) or (ii) in either order.
pub fn ht_pair_fails(ring: &Ring, sq: &[BitSet], x: Code, y: Code) -> bool {
    let (x2, y2, xy) = (ring.mul(x, x), ring.mul(y, y), ring.mul(x, y));
    let (px, py) = (&sq[x as usize], &sq[y as usize]);
    let eq_x = px.contains(xy as usize) && px.contains(y2 as usize);
    let eq_y = py.contains(xy as usize) && py.contains(x2 as usize);
    if !eq_x && !eq_y {
        return true;
    }
    let zero = ring.zero();
    xy == zero && ((eq_x && y2 != zero) || (eq_y && x2 != zero))
}

/// First failing pair in (x, y ≥ x) order.
fn local_scan(ring: &Ring, exec: Exec) -> Option<(Code, Code)> {
    let sq = square_principals(ring);
    let n = ring.order();
    exec.find_first(n, |x| {
        let x = x as Code;
        (x..n as Code)
            .find(|&y| ht_pair_fails(ring, &sq, x, y))
            .map(|y| (x, y))
    })
}

/// Whether `p` is a Gauss polynomial against every g of degree ≤ `bound`.
/// The witness is the first failing g in coefficient-index order.
pub fn gauss_polynomial_oracle(p: &Polynomial, bound: usize) -> PropertyVerdict {
    let ring = p.ring();
    let lat = IdealLattice::new(ring);
    let n = ring.order() as u64;
    let m = bound + 1;
    let total = n.pow(m as u32);
    let verdict = |holds| PropertyVerdict::new("gauss-polynomial", holds);
    let mut g = vec![ring.zero(); m];
    for idx in 0..total {
        decode(idx, n, &mut g);
        if !pair_is_gauss(ring, &lat, p.coeffs(), &g) {
            let g = Polynomial::new(ring, &g).expect("valid codes");
            return verdict(false).with_witness(Witness::Polynomials {
                f: p.coeffs().to_vec(),
                g: g.coeffs().to_vec(),
            });
        }
    }
    verdict(true)
}

/// c(fg) = c(f)c(g). Since c(fg) ⊆ c(f)c(g) always, only the reverse
/// inclusion is tested, one product fᵢgⱼ at a time.
fn pair_is_gauss(ring: &Ring, lat: &IdealLattice, f: &[Code], g: &[Code]) -> bool {
    let fg = mul_coeffs(ring, f, g);
    let id = lat.span(&fg);
    f.iter().filter(|&&a| a != 0).all(|&a| {
        g.iter()
            .filter(|&&b| b != 0)
            .all(|&b| lat.contains(id, ring.mul(a, b)))
    })
}

fn decode(mut idx: u64, n: u64, out: &mut [Code]) {
    for c in out.iter_mut() {
        *c = (idx % n) as Code;
        idx /= n;
    }
}

fn encode(coeffs: &[Code], n: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * n + c as u64)
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Greedy generating set of the subgroup closure of `pool` under `op`,
/// starting from `identity`.
fn group_generators(
    n: usize,
    identity: Code,
    pool: impl Iterator<Item = Code>,
    op: impl Fn(Code, Code) -> Code,
) -> Vec<Code> {
    let mut members = BitSet::from_iter_with_len(n, [identity as usize]);
    let mut gens = Vec::new();
    for x in pool {
        if members.contains(x as usize) {
            continue;
        }
        gens.push(x);
        let mut frontier: Vec<Code> = members.iter().map(|m| m as Code).collect();
        while let Some(m) = frontier.pop() {
            for &g in &gens {
                let y = op(m, g);
                if members.insert(y as usize) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// Dense add and mul tables for the inner loops.
struct Tables {
    n: usize,
    add: Vec<Code>,
    mul: Vec<Code>,
}

impl Tables {
    fn new(ring: &Ring) -> Self {
        let n = ring.order();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in ring.elements() {
            for b in ring.elements() {
                add.push(ring.add(a, b));
                mul.push(ring.mul(a, b));
            }
        }
        Tables { n, add, mul }
    }

    #[inline]
    fn add(&self, a: Code, b: Code) -> Code {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    fn mul(&self, a: Code, b: Code) -> Code {
        self.mul[a as usize * self.n + b as usize]
    }
}

/// A linear map on coefficient vectors.
enum Change {
    /// vᵢ ↦ dᵢ·vᵢ.
    Diagonal(Vec<Code>),
    /// vᵢ ↦ v_{m-1-i}.
    Reverse,
    /// Upper triangular, row-major m×m.
    Upper(Vec<Code>),
}

impl Change {
    fn apply(&self, t: &Tables, v: &[Code], out: &mut [Code]) {
        let m = v.len();
        match self {
            Change::Diagonal(d) => {
                for i in 0..m {
                    out[i] = t.mul(d[i], v[i]);
                }
            }
            Change::Reverse => {
                for i in 0..m {
                    out[i] = v[m - 1 - i];
                }
            }
            Change::Upper(mat) => {
                for k in 0..m {
                    out[k] = (k..m).fold(0, |acc, j| t.add(acc, t.mul(mat[k * m + j], v[j])));
                }
            }
        }
    }
}

/// Orbit representatives (smallest index of each orbit) of the coefficient
/// vectors of length `m` under the group generated by `gens`, and, when
/// `track` is set, the orbit number of every vector.
fn orbits(t: &Tables, m: usize, total: u64, gens: &[Change], track: bool) -> (Vec<u64>, Vec<u32>) {
    let n = t.n as u64;
    let mut seen = BitSet::new(total as usize);
    let mut reps = Vec::new();
    let mut orbit_of = if track {
        vec![0u32; total as usize]
    } else {
        Vec::new()
    };
    let mut stack = Vec::new();
    let (mut v, mut w) = (vec![0; m], vec![0; m]);
    for idx in 0..total {
        if !seen.insert(idx as usize) {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(idx);
        stack.push(idx);
        while let Some(x) = stack.pop() {
            if track {
                orbit_of[x as usize] = id;
            }
            decode(x, n, &mut v);
            for change in gens {
                change.apply(t, &v, &mut w);
                let y = encode(&w, n);
                if seen.insert(y as usize) {
                    stack.push(y);
                }
            }
        }
    }
    (reps, orbit_of)
}

/// Every polynomial of degree ≤ `bound` is Gauss against every g of degree
/// ≤ `bound`. `None` when `|R|^(bound+1)` exceeds [`DEFINITIONAL_LIMIT`].
///
/// A polynomial of degree ≤ D is read as a binary form F(X, Y) of degree D.
/// An invertible linear change of variables A permutes coefficient vectors,
/// preserves content and satisfies (F∘A)(G∘A) = (FG)∘A, so the Gauss property
/// of a pair is invariant under acting on both members by A. Scaling by a
/// unit also preserves content. Hence f runs through orbit representatives
/// under unit scaling and the group generated by X ↦ X + aY, X ↦ vX and
/// X ↔ Y, while g runs through representatives under unit scaling only.
///
/// Representatives are visited by increasing coefficient index, so a failing
/// pair of low degree is found first.
pub fn gauss_definitional(ring: &Ring, bound: usize, exec: Exec) -> Option<PropertyVerdict> {
    let n = ring.order() as u64;
    let m = bound + 1;
    let total = n
        .checked_pow(m as u32)
        .filter(|&t| t <= DEFINITIONAL_LIMIT)?;
    let verdict = |holds| PropertyVerdict::new("gaussian-definitional", holds);
    if ring.is_zero_ring() {
        return Some(verdict(true));
    }
    let t = Tables::new(ring);
    let lat = IdealLattice::new(ring);
    let unit_gens = group_generators(
        ring.order(),
        ring.one(),
        ring.units().iter().map(|u| u as Code),
        |a, b| ring.mul(a, b),
    );
    let add_gens = group_generators(ring.order(), ring.zero(), ring.elements(), |a, b| {
        ring.add(a, b)
    });

    let scalings: Vec<Change> = unit_gens
        .iter()
        .map(|&u| Change::Diagonal(vec![u; m]))
        .collect();
    let mut changes: Vec<Change> = unit_gens
        .iter()
        .map(|&u| Change::Diagonal(vec![u; m]))
        .collect();
    for &v in &unit_gens {
        changes.push(Change::Diagonal(
            (0..m).map(|i| ring.pow(v, i as u64)).collect(),
        ));
    }
    // f(T + a): coefficient k is Σ_j C(j,k) a^(j-k) f_j.
    for &a in &add_gens {
        let mut mat = vec![ring.zero(); m * m];
        for j in 0..m {
            for k in 0..=j {
                mat[k * m + j] =
                    ring.mul(ring.from_int(binomial(j, k)), ring.pow(a, (j - k) as u64));
            }
        }
        changes.push(Change::Upper(mat));
    }
    changes.push(Change::Reverse);

    let (f_reps, f_orbit) = orbits(&t, m, total, &changes, true);
    let (mut g_reps, _) = orbits(&t, m, total, &scalings, false);
    // (f, g) and (g, f) agree, so the k-th f orbit only meets g in orbits ≥ k.
    g_reps.sort_by_key(|&g| (f_orbit[g as usize], g));
    let g_orbit: Vec<u32> = g_reps.iter().map(|&g| f_orbit[g as usize]).collect();
    drop(f_orbit);

    let ideals = lat.len();
    let mut subset = vec![false; ideals * ideals];
    for i in 0..ideals {
        for j in 0..ideals {
            subset[i * ideals + j] = lat.set(i).is_subset(lat.set(j));
        }
    }
    let g_table: Vec<Code> = g_reps
        .iter()
        .flat_map(|&gi| {
            let mut g = vec![0; m];
            decode(gi, n, &mut g);
            g
        })
        .collect();
    let mut f = vec![0; m];
    let mut g = vec![0; m];
    let mut start = 0;
    for (k, &fi) in f_reps.iter().enumerate().skip(1) {
        while start < g_orbit.len() && g_orbit[start] < k as u32 {
            start += 1;
        }
        decode(fi, n, &mut f);
        // c(f)·b for every element b.
        let fb: Vec<usize> = ring
            .elements()
            .map(|b| f.iter().fold(0, |id, &a| lat.join(id, t.mul(a, b))))
            .collect();
        let hit = exec.find_first(g_reps.len() - start, |i| {
            let i = start + i;
            let g = &g_table[i * m..(i + 1) * m];
            let mut fg = [0; 2 * MAX_COEFFS];
            for (i, &a) in f.iter().enumerate() {
                for (j, &b) in g.iter().enumerate() {
                    fg[i + j] = t.add(fg[i + j], t.mul(a, b));
                }
            }
            let id = lat.span(&fg[..2 * m - 1]);
            let gauss = g.iter().all(|&b| subset[fb[b as usize] * ideals + id]);
            (!gauss).then_some(g_reps[i])
        });
        if let Some(gi) = hit {
            decode(gi, n, &mut g);
            let fp = Polynomial::new(ring, &f).expect("valid codes");
            let gp = Polynomial::new(ring, &g).expect("valid codes");
            return Some(verdict(false).with_witness(Witness::Polynomials {
                f: fp.coeffs().to_vec(),
                g: gp.coeffs().to_vec(),
            }));
        }
    }
    Some(verdict(true))
}
