//! Irreducible characters from the class algebra, computed modulo a prime.
//!
//! For `ℓ ≡ 1 (mod exp G)` with `ℓ > 2√|G|` the central characters
//! `ω_χ(C_k) = |C_k| χ(g_k) / χ(1)` are exactly the common eigenvectors of
//! the class multiplication matrices over `F_ℓ`. From `ω` the degree is
//! recovered from `Σ_k ω_k ω_{k'} / |C_k| = |G| / χ(1)²`, the values mod `ℓ`
//! follow, and each value is lifted exactly through the multiplicities of
//! the eigenvalues of `g`, which are integers in `[0, χ(1)]`.

use std::sync::Arc;

use num_rational::Ratio;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::permgroup::ConjugacyClasses;

use super::Character;

struct Field {
    p: u64,
}

impl Field {
    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `ℓ ≡ 1 (mod exponent)` with `ℓ > 2√order`.
fn choose_prime(order: u64, exponent: u64) -> u64 {
    let floor = 2 * ((order as f64).sqrt() as u64 + 1);
    let mut p = exponent + 1;
    while p <= floor || !is_prime(p) {
        p += exponent;
    }
    p
}

fn primitive_root(f: &Field) -> u64 {
    let factors = distinct_prime_factors(f.p - 1);
    (2..f.p)
        .find(|&g| factors.iter().all(|&q| f.pow(g, (f.p - 1) / q) != 1))
        .expect("prime fields have primitive roots")
}

/// Row-reduced basis of a subspace of `F_ℓ^r`.
#[derive(Clone)]
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn row_reduce(f: &Field, mut rows: Vec<Vec<u64>>) -> Subspace {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = f.inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..width {
                    let t = f.mul(factor, rows[rank][c]);
                    rows[r][c] = f.sub(rows[r][c], t);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Subspace { rows, pivots }
}

/// Basis of the null space of a square matrix.
fn null_space(f: &Field, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = m.len();
    let red = row_reduce(f, m.to_vec());
    let free: Vec<usize> = (0..n).filter(|c| !red.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; n];
            v[fc] = 1;
            for (row, &pc) in red.rows.iter().zip(&red.pivots) {
                v[pc] = f.sub(0, row[fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial (lowest degree first) via Hessenberg reduction.
fn charpoly(f: &Field, mut h: Vec<Vec<u64>>) -> Vec<u64> {
    let n = h.len();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&r| h[r][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = f.inv(h[col + 1][col]);
        for r in col + 2..n {
            let t = f.mul(h[r][col], inv);
            if t == 0 {
                continue;
            }
            for c in 0..n {
                let s = f.mul(t, h[col + 1][c]);
                h[r][c] = f.sub(h[r][c], s);
            }
            for row in h.iter_mut() {
                let s = f.mul(t, row[r]);
                row[col + 1] = f.add(row[col + 1], s);
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - Σ_{i<m} h_im (Π_{k=i+1..m} h_{k,k-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[m][m], c));
        }
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let coef = f.mul(h[i][m], prod);
            if coef != 0 {
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn distinct_roots(f: &Field, poly: &[u64]) -> Vec<u64> {
    (0..f.p)
        .filter(|&x| poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
        .collect()
}

/// `(M_j)_{i,k} = #{y ∈ C_j : g_k y⁻¹ ∈ C_i}`, so `M_j ω = ω_j ω`.
fn class_matrix(classes: &ConjugacyClasses, j: usize) -> Vec<Vec<u64>> {
    let r = classes.len();
    let enumeration = classes.enumeration();
    let members: Vec<_> = classes
        .members(j)
        .map(|y| enumeration.element(y).inverse())
        .collect();
    let mut m = vec![vec![0u64; r]; r];
    for k in 0..r {
        let g = classes.representative(k);
        for yinv in &members {
            let i = classes.class_of(&(g * yinv)).expect("closed under products");
            m[i][k] += 1;
        }
    }
    m
}

pub(super) fn irreducibles(classes: &Arc<ConjugacyClasses>) -> Result<Vec<Character>> {
    let r = classes.len();
    let order = classes.group_order();
    let exponent = classes.exponent();
    let f = Field {
        p: choose_prime(order, exponent),
    };

    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect();
    let mut pending = vec![row_reduce(&f, identity)];
    let mut done: Vec<Vec<u64>> = Vec::new();
    for j in 1..r {
        if pending.is_empty() {
            break;
        }
        let m: Vec<Vec<u64>> = class_matrix(classes, j)
            .into_iter()
            .map(|row| row.into_iter().map(|v| v % f.p).collect())
            .collect();
        let mut next = Vec::new();
        for space in pending {
            let d = space.rows.len();
            // restriction of M_j to the invariant subspace, in its basis
            let images: Vec<Vec<u64>> = space
                .rows
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|i| (0..r).fold(0, |acc, k| f.add(acc, f.mul(m[i][k], b[k]))))
                        .collect()
                })
                .collect();
            let restricted: Vec<Vec<u64>> = (0..d)
                .map(|a| (0..d).map(|b| images[b][space.pivots[a]]).collect())
                .collect();
            let roots = distinct_roots(&f, &charpoly(&f, restricted.clone()));
            if roots.len() <= 1 {
                next.push(space);
                continue;
            }
            for lambda in roots {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|a| {
                        (0..d)
                            .map(|b| {
                                if a == b {
                                    f.sub(restricted[a][b], lambda)
                                } else {
                                    restricted[a][b]
                                }
                            })
                            .collect()
                    })
                    .collect();
                let vectors: Vec<Vec<u64>> = null_space(&f, &shifted)
                    .into_iter()
                    .map(|c| {
                        (0..r)
                            .map(|k| (0..d).fold(0, |acc, b| f.add(acc, f.mul(c[b], space.rows[b][k]))))
                            .collect()
                    })
                    .collect();
                next.push(row_reduce(&f, vectors));
            }
        }
        pending = Vec::new();
        for space in next {
            if space.rows.len() == 1 {
                done.push(space.rows.into_iter().next().unwrap());
            } else {
                pending.push(space);
            }
        }
    }
    for space in pending {
        if space.rows.len() != 1 {
            return Err(Error::Integrity(
                "class matrices failed to separate the irreducible characters".into(),
            ));
        }
        done.push(space.rows.into_iter().next().unwrap());
    }
    if done.len() != r {
        return Err(Error::Integrity(format!(
            "found {} common eigenvectors for {} classes",
            done.len(),
            r
        )));
    }

    let inverse = classes.inverse_classes();
    let sizes: Vec<u64> = classes.sizes().iter().map(|&h| h % f.p).collect();
    let z = f.pow(primitive_root(&f), (f.p - 1) / exponent);
    let bound = (order as f64).sqrt() as u64 + 1;
    let mut power_maps: Vec<Vec<usize>> = Vec::with_capacity(r);
    for k in 0..r {
        let g = classes.representative(k);
        power_maps.push(
            (0..classes.orders()[k])
                .map(|t| classes.class_of(&g.pow(t)).unwrap())
                .collect(),
        );
    }

    let mut characters = Vec::with_capacity(r);
    for v in done {
        let scale = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, scale)).collect();
        let s = (0..r).fold(0, |acc, k| {
            f.add(acc, f.mul(f.mul(omega[k], omega[inverse[k]]), f.inv(sizes[k])))
        });
        let target = f.mul(order % f.p, f.inv(s));
        let degree = (1..=bound)
            .find(|&d| order % d == 0 && f.mul(d, d) == target)
            .ok_or_else(|| Error::Integrity("no admissible degree for a central character".into()))?;
        let residues: Vec<u64> = (0..r)
            .map(|k| f.mul(f.mul(omega[k], degree), f.inv(sizes[k])))
            .collect();

        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = classes.orders()[k];
            let zo = f.pow(z, exponent / o);
            let o_inv = f.inv(o % f.p);
            let mut terms = Vec::new();
            let mut total = 0;
            for s in 0..o {
                let zs = f.pow(zo, (o - s) % o);
                let mut acc = 0;
                let mut w = 1;
                for t in 0..o as usize {
                    acc = f.add(acc, f.mul(residues[power_maps[k][t]], w));
                    w = f.mul(w, zs);
                }
                let mult = f.mul(acc, o_inv);
                if mult > degree {
                    return Err(Error::Integrity(format!(
                        "eigenvalue multiplicity residue {mult} exceeds degree {degree}"
                    )));
                }
                total += mult;
                if mult > 0 {
                    terms.push((s as i64, Ratio::from_integer(mult as i128)));
                }
            }
            if total != degree {
                return Err(Error::Integrity("eigenvalue multiplicities do not sum to the degree".into()));
            }
            values.push(Cyclotomic::from_exponents(o as u32, terms));
        }
        characters.push(Character::from_values(classes.clone(), values)?);
    }
    Ok(characters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        let p = choose_prime(60, 30);
        assert!(is_prime(p) && p % 30 == 1 && p > 2 * 8);
        assert_eq!(p, 31);
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let f = Field { p: 101 };
        // [[2,1],[3,4]] has x^2 - 6x + 5
        let cp = charpoly(&f, vec![vec![2, 1], vec![3, 4]]);
        assert_eq!(cp, vec![5, 101 - 6, 1]);
        let cp3 = charpoly(&f, vec![vec![1, 2, 0], vec![0, 3, 0], vec![4, 0, 5]]);
        // (x-1)(x-3)(x-5)
        let roots = distinct_roots(&f, &cp3);
        assert_eq!(roots, vec![1, 3, 5]);
    }
}
