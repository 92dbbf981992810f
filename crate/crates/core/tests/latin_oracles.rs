//! Signed Latin square counts checked against brute-force enumeration over
//! tuples of row permutations.

use gct_core::combinat::{perm_sign, permutations};
use gct_core::latin::{alon_tarsi_count, pairing_allvars_det, pairing_perm_det, AtOptions, LatinSquare};
use gct_core::{Field, Rational};

fn all_squares(n: usize) -> Vec<Vec<Vec<usize>>> {
    let perms = permutations(n);
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    fn go(n: usize, perms: &[Vec<usize>], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rows.len() == n {
            out.push(rows.clone());
            return;
        }
        for p in perms {
            if rows.iter().all(|r| (0..n).all(|j| r[j] != p[j])) {
                rows.push(p.clone());
                go(n, perms, rows, out);
                rows.pop();
            }
        }
    }
    go(n, &perms, &mut rows, &mut out);
    out
}

fn column(sq: &[Vec<usize>], j: usize) -> Vec<usize> {
    sq.iter().map(|r| r[j]).collect()
}

/// For symbol `k`, the permutation sending row `i` to the column holding `k`.
fn symbol_perm(sq: &[Vec<usize>], k: usize) -> Vec<usize> {
    sq.iter().map(|r| r.iter().position(|&x| x == k).unwrap()).collect()
}

#[test]
fn counts_match_brute_force() {
    for n in 1..=4 {
        let squares = all_squares(n);
        let (mut plus, mut minus, mut cplus, mut cminus) = (0u128, 0u128, 0u128, 0u128);
        for sq in &squares {
            let rows: i64 = sq.iter().map(|r| perm_sign(r)).product();
            let cols: i64 = (0..n).map(|j| perm_sign(&column(sq, j))).product();
            if rows * cols > 0 {
                plus += 1;
            } else {
                minus += 1;
            }
            if cols > 0 {
                cplus += 1;
            } else {
                cminus += 1;
            }
        }
        let c = alon_tarsi_count(n, &AtOptions::default()).unwrap();
        assert_eq!((c.count_plus, c.count_minus), (plus, minus), "n={n}");
        assert_eq!((c.column_count_plus, c.column_count_minus), (cplus, cminus), "n={n}");
    }
}

#[test]
fn library_signs_match_brute_force() {
    for sq in all_squares(4).iter().step_by(7) {
        let cells: Vec<Vec<u8>> = sq.iter().map(|r| r.iter().map(|&x| x as u8 + 1).collect()).collect();
        let l = LatinSquare::new(cells).unwrap();
        let rows: i64 = sq.iter().map(|r| perm_sign(r)).product();
        let cols: i64 = (0..4).map(|j| perm_sign(&column(sq, j))).product();
        let syms: i64 = (0..4).map(|k| perm_sign(&symbol_perm(sq, k))).product();
        assert_eq!(l.sign(), rows * cols);
        assert_eq!(l.column_sign(), cols);
        assert_eq!(l.symbol_sign(), syms);
    }
}

#[test]
fn all_variables_pairing_is_signed_symbol_count() {
    // each Latin square is one way to cover the n×n grid by n permutation
    // matrices, one per symbol
    for n in 1..=4 {
        let expected: i64 = all_squares(n)
            .iter()
            .map(|sq| (0..n).map(|k| perm_sign(&symbol_perm(sq, k))).product::<i64>())
            .sum();
        assert_eq!(pairing_allvars_det(n).unwrap(), Rational::from_int(expected), "n={n}");
    }
}

#[test]
fn permanent_pairing_small_values() {
    assert_eq!(pairing_perm_det(1).unwrap(), Rational::from_int(1));
    assert_eq!(pairing_perm_det(2).unwrap(), Rational::from_int(4));
    assert!(pairing_perm_det(4).is_err());
}
