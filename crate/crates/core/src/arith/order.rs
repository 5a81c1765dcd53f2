use std::cmp::Ordering;

use super::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Lex,
    GrLex,
    GRevLex,
}

/// Monomial order on variable indices, index 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Lex,
    GrLex,
    GRevLex,
    /// Product order over consecutive variable blocks. Each entry gives a
    /// block size and the order used inside it; the last block absorbs every
    /// remaining variable.
    Block(Vec<(usize, BlockKind)>),
}

impl TermOrder {
    /// Eliminates the first `k` variables (graded reverse lex inside),
    /// ordering the rest with `rest`.
    pub fn elimination(k: usize, rest: BlockKind) -> Self {
        TermOrder::Block(vec![(k, BlockKind::GRevLex), (usize::MAX, rest)])
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => cmp_kind(BlockKind::Lex, a.exps(), b.exps()),
            TermOrder::GrLex => cmp_kind(BlockKind::GrLex, a.exps(), b.exps()),
            TermOrder::GRevLex => cmp_kind(BlockKind::GRevLex, a.exps(), b.exps()),
            TermOrder::Block(blocks) => {
                let mut start = 0usize;
                for (i, &(size, kind)) in blocks.iter().enumerate() {
                    let end = if i + 1 == blocks.len() {
                        usize::MAX
                    } else {
                        start.saturating_add(size)
                    };
                    let ord = cmp_kind(kind, slice(a.exps(), start, end), slice(b.exps(), start, end));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                    start = end;
                }
                Ordering::Equal
            }
        }
    }

    /// Prepends one block of `k` variables compared lexicographically,
    /// shifting this order to start after them.
    pub fn with_leading_block(&self, k: usize) -> TermOrder {
        let mut blocks = vec![(k, BlockKind::Lex)];
        match self {
            TermOrder::Lex => blocks.push((usize::MAX, BlockKind::Lex)),
            TermOrder::GrLex => blocks.push((usize::MAX, BlockKind::GrLex)),
            TermOrder::GRevLex => blocks.push((usize::MAX, BlockKind::GRevLex)),
            TermOrder::Block(bs) => blocks.extend(bs.iter().copied()),
        }
        TermOrder::Block(blocks)
    }
}

fn slice(e: &[u32], start: usize, end: usize) -> &[u32] {
    let s = start.min(e.len());
    let t = end.min(e.len());
    &e[s..t]
}

fn exp(e: &[u32], i: usize) -> u32 {
    e.get(i).copied().unwrap_or(0)
}

fn cmp_kind(kind: BlockKind, a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    let lex = || {
        for i in 0..n {
            match exp(a, i).cmp(&exp(b, i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    };
    match kind {
        BlockKind::Lex => lex(),
        BlockKind::GrLex => {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(lex)
        }
        BlockKind::GRevLex => {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| {
                for i in (0..n).rev() {
                    match exp(a, i).cmp(&exp(b, i)) {
                        Ordering::Equal => continue,
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn grevlex_differs_from_grlex() {
        // x*z^2 vs y^3 in three variables
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 3, 0]);
        assert_eq!(TermOrder::GrLex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(TermOrder::GRevLex.cmp(&a, &b), Ordering::Less);
        assert_eq!(TermOrder::Lex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let ord = TermOrder::elimination(1, BlockKind::Lex);
        // x beats any power of y, z
        assert_eq!(ord.cmp(&m(&[1]), &m(&[0, 5, 5])), Ordering::Greater);
        // inside the second block: lex
        assert_eq!(ord.cmp(&m(&[0, 1]), &m(&[0, 0, 9])), Ordering::Greater);
    }
}
