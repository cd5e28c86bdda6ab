//! Inclusion-exclusion over label pools.
//!
//! For a pool `Y` of labels, walkages whose labeled vertices take arbitrary
//! labels from `Y` weigh `prod_x h_Y(c(x))` with `h_Y(c) = sum_{r in Y} f_c(c, r)`.
//! Summing over every `Y` leaves exactly the bijective labelings, so the state
//! only has to remember how many vertices are labeled.

use super::{finish_block, gather_labeled, gather_unlabeled, masks_by_popcount, Block, Prep};

struct Index {
    /// First dense slot of each label count.
    off: Vec<usize>,
    total: usize,
}

impl Index {
    fn new(prep: &Prep<'_>) -> Self {
        let mut off = Vec::with_capacity(prep.k + 2);
        let mut total = 0;
        for v in &prep.valid {
            off.push(total);
            total += v.len();
        }
        off.push(total);
        Index { off, total }
    }

    fn get(&self, prep: &Prep<'_>, j: usize, w: u64) -> Option<usize> {
        prep.valid[j].binary_search(&w).ok().map(|i| self.off[j] + i)
    }
}

pub(crate) fn run(prep: &Prep<'_>) -> Vec<u32> {
    let mut answers = vec![0u32; prep.max_len + 1];
    let k = prep.k;
    let first = if k == 0 { 0 } else { 1u32 };
    for pool in first..(1u32 << k) {
        let part = run_pool(prep, pool);
        for (a, b) in answers.iter_mut().zip(part) {
            *a ^= b;
        }
    }
    answers
}

fn run_pool(prep: &Prep<'_>, pool: u32) -> Vec<u32> {
    let f = prep.f;
    let (n, p) = (prep.n, prep.p);
    let darts = &prep.darts;
    let idx = Index::new(prep);
    let jw = idx.total;

    let mut hx = vec![0u32; n];
    for x in 0..n {
        let mut h = 0u32;
        let mut rest = pool;
        while rest != 0 {
            let r = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            h ^= prep.assign.fc(prep.colors[x], r + 1);
        }
        hx[x] = f.mul(prep.fv[x], h);
    }
    let mut coef = vec![0u32; darts.len()];
    for x in 0..n {
        for d in darts.off[x]..darts.off[x + 1] {
            coef[d] = f.mul(hx[x], darts.fe[d]);
        }
    }

    let mut wvals: Vec<u64> = prep.weights.clone();
    wvals.sort_unstable();
    wvals.dedup();
    let wclass: Vec<usize> = prep
        .weights
        .iter()
        .map(|w| wvals.binary_search(w).unwrap())
        .collect();

    // (t, T') pairs of unfinished walkages, densely numbered.
    let masks_t = masks_by_popcount(p);
    let mut tt_list = Vec::new();
    for t in 1..=p {
        for &tm in &masks_t[t - 1] {
            tt_list.push((t, tm));
        }
    }
    let slots = tt_list.len() * jw;
    let full_t = (1usize << p) - 1;
    let comp_len = (1usize << p) * jw;

    let mut blocks_prev: Vec<Option<Block>> = (0..slots).map(|_| None).collect();
    let mut blocks_cur: Vec<Option<Block>> = (0..slots).map(|_| None).collect();
    let mut free: Vec<Block> = Vec::new();
    let mut comps2 = vec![0u32; comp_len];
    let mut comps1 = vec![0u32; comp_len];
    if let Some(i) = idx.get(prep, 0, 0) {
        comps1[i] = 1;
    }
    let mut comps_cur = vec![0u32; comp_len];
    let mut st = vec![0u32; jw];
    let mut by_weight = vec![usize::MAX; wvals.len()];
    let mut answers = vec![0u32; prep.max_len + 1];

    for l in 1..=prep.max_len {
        for (ti, &(t, tm)) in tt_list.iter().enumerate() {
            if !prep.walks_fit(t, l) {
                continue;
            }
            let s = prep.sources[t - 1];
            let into_s = &prep.into_source[t - 1];
            let base = tm as usize * jw;
            let ws = prep.weights[s];
            for j in 0..=prep.k {
                for (i, &w) in prep.valid[j].iter().enumerate() {
                    let mut v = comps2[base + idx.off[j] + i];
                    if j > 0 && hx[s] != 0 {
                        if let Some(prev) = w.checked_sub(ws).and_then(|u| idx.get(prep, j - 1, u)) {
                            v ^= f.mul(hx[s], comps2[base + prev]);
                        }
                    }
                    st[idx.off[j] + i] = v;
                }
            }
            for j in prep.label_window(l) {
                for (i, &wp) in prep.valid[j].iter().enumerate() {
                    let here = idx.off[j] + i;
                    let slot = ti * jw + here;
                    let mut blk = match free.pop() {
                        Some(mut b) => {
                            b.clear();
                            b
                        }
                        None => Block::zeroed(n, darts.len()),
                    };
                    if let Some(prev) = &blocks_prev[slot] {
                        gather_unlabeled(f, darts, prev, &mut blk.a);
                    }
                    let s0 = st[here];
                    if s0 != 0 {
                        for (x, &d) in into_s.iter().enumerate() {
                            if d != usize::MAX {
                                blk.a[x] ^= f.mul(darts.fe[d], s0);
                            }
                        }
                    }
                    if j > 0 {
                        for (c, &wv) in wvals.iter().enumerate() {
                            by_weight[c] = wp
                                .checked_sub(wv)
                                .and_then(|u| idx.get(prep, j - 1, u))
                                .unwrap_or(usize::MAX);
                        }
                        for x in 0..n {
                            let src = by_weight[wclass[x]];
                            if src == usize::MAX || hx[x] == 0 {
                                continue;
                            }
                            if let Some(prev) = &blocks_prev[ti * jw + src] {
                                gather_labeled(f, darts, x, 1, prev, &mut blk.d1);
                            }
                            let d = into_s[x];
                            if d != usize::MAX {
                                blk.d1[d] ^= st[src];
                            }
                        }
                    }
                    finish_block(f, darts, &coef, &mut blk);
                    if blk.is_zero() {
                        free.push(blk);
                    } else {
                        blocks_cur[slot] = Some(blk);
                    }
                }
            }
        }
        comps_cur.iter_mut().for_each(|v| *v = 0);
        for (ti, &(_, tm)) in tt_list.iter().enumerate() {
            for here in 0..jw {
                if let Some(blk) = &blocks_cur[ti * jw + here] {
                    for (bit, &sink) in prep.sinks.iter().enumerate() {
                        if tm & (1 << bit) == 0 {
                            let nm = (tm | (1 << bit)) as usize;
                            comps_cur[nm * jw + here] ^= blk.a[sink];
                        }
                    }
                }
            }
        }
        if let Some(i) = idx.get(prep, prep.k, prep.w) {
            answers[l] = comps_cur[full_t * jw + i];
        }
        for b in blocks_prev.iter_mut() {
            if let Some(blk) = b.take() {
                free.push(blk);
            }
        }
        std::mem::swap(&mut blocks_prev, &mut blocks_cur);
        std::mem::swap(&mut comps2, &mut comps1);
        std::mem::swap(&mut comps1, &mut comps_cur);
    }
    answers
}
