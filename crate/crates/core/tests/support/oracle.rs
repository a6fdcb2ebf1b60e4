//! Reference answers computed without dynamic programming over prefixes.
//!
//! `min_script_cost` walks every left-to-right edit script explicitly, one
//! operation at a time, and keeps the cheapest. It has no table and no
//! memoization; the only pruning drops partial scripts that already cost at
//! least the best complete script found, which cannot change the minimum
//! because every operation costs >= 0.

use d2t_curriculum::Token;

#[derive(Clone, Copy)]
pub struct Ops {
    pub substitute: bool,
    pub transpose: bool,
}

/// Insert/delete only (PED, SED).
pub const INDEL: Ops = Ops {
    substitute: false,
    transpose: false,
};

/// Substitute, insert, delete and adjacent transposition, each position
/// touched by at most one operation (restricted Damerau-Levenshtein).
pub const OSA: Ops = Ops {
    substitute: true,
    transpose: true,
};

pub fn min_script_cost<D, I>(a: &[Token], b: &[Token], ops: Ops, delete: D, insert: I) -> f64
where
    D: Fn(&Token) -> f64,
    I: Fn(&Token) -> f64,
{
    let mut best = f64::INFINITY;
    walk(a, b, ops, &delete, &insert, 0.0, &mut best);
    best
}

fn walk<D, I>(a: &[Token], b: &[Token], ops: Ops, del: &D, ins: &I, spent: f64, best: &mut f64)
where
    D: Fn(&Token) -> f64,
    I: Fn(&Token) -> f64,
{
    if spent >= *best {
        return;
    }
    if a.is_empty() && b.is_empty() {
        *best = spent;
        return;
    }
    if let (Some(x), Some(y)) = (a.first(), b.first()) {
        if x == y {
            walk(&a[1..], &b[1..], ops, del, ins, spent, best);
        } else if ops.substitute {
            walk(&a[1..], &b[1..], ops, del, ins, spent + 1.0, best);
        }
        if ops.transpose && a.len() >= 2 && b.len() >= 2 && a[0] == b[1] && a[1] == b[0] {
            walk(&a[2..], &b[2..], ops, del, ins, spent + 1.0, best);
        }
    }
    if let Some(x) = a.first() {
        walk(&a[1..], b, ops, del, ins, spent + del(x), best);
    }
    if let Some(y) = b.first() {
        walk(a, &b[1..], ops, del, ins, spent + ins(y), best);
    }
}

pub fn brute_dld(a: &[Token], b: &[Token]) -> usize {
    min_script_cost(a, b, OSA, |_| 1.0, |_| 1.0) as usize
}

pub fn brute_ped(a: &[Token], b: &[Token]) -> usize {
    min_script_cost(a, b, INDEL, |_| 1.0, |_| 1.0) as usize
}

pub fn brute_sed<W: Fn(&Token) -> f64>(a: &[Token], b: &[Token], weight: W) -> f64 {
    min_script_cost(a, b, INDEL, &weight, &weight)
}

/// Longest common subsequence length, classic max-recurrence table.
pub fn lcs_len(a: &[Token], b: &[Token]) -> usize {
    let mut table = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in 0..a.len() {
        for j in 0..b.len() {
            table[i + 1][j + 1] = if a[i] == b[j] {
                table[i][j] + 1
            } else {
                table[i][j + 1].max(table[i + 1][j])
            };
        }
    }
    table[a.len()][b.len()]
}
