//! The label-subset dynamic program, one length layer at a time.
//!
//! States are blocks keyed by `(t, T', L, w')`; inside a block the entries
//! `D(t, l, L, T', w', x, y, 1)` are stored per dart `(x, y)` and the sums over
//! `y` of both `o = 0` and `o = 1` per vertex `x`. Only the tables of layer
//! `l - 1` are alive while layer `l` is built; layer `l - 2` contributes
//! through its completed-walkage aggregates alone.

use super::{finish_block, gather_labeled, gather_unlabeled, masks_by_popcount, Block, Prep};

const NONE: u32 = u32::MAX;

/// Dense addressing of `(t, T')`, label mask and weight.
struct Layout {
    k: usize,
    p: usize,
    /// Largest number of valid weights for any label count.
    width: usize,
    /// `tt[(t - 1) << p | T']`: dense index of an unfinished-walk pair.
    tt: Vec<usize>,
    tt_count: usize,
    /// `T'` of each dense pair index.
    tt_mask: Vec<u32>,
}

impl Layout {
    fn new(prep: &Prep<'_>) -> Self {
        let p = prep.p;
        let width = prep.valid.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let mut tt = vec![usize::MAX; p << p];
        let mut tt_count = 0;
        let mut tt_mask = Vec::new();
        for (t, masks) in masks_by_popcount(p).iter().enumerate().take(p) {
            for &tm in masks {
                tt[(t << p) | tm as usize] = tt_count;
                tt_mask.push(tm);
                tt_count += 1;
            }
        }
        Layout {
            k: prep.k,
            p,
            width,
            tt,
            tt_count,
            tt_mask,
        }
    }

    fn slots(&self) -> usize {
        (self.tt_count << self.k) * self.width
    }

    fn comp_slots(&self) -> usize {
        ((1usize << self.p) << self.k) * self.width
    }

    #[inline]
    fn block(&self, ti: usize, lm: u32, wi: usize) -> usize {
        ((ti << self.k) | lm as usize) * self.width + wi
    }

    #[inline]
    fn comp(&self, tm: u32, lm: u32, wi: usize) -> usize {
        (((tm as usize) << self.k) | lm as usize) * self.width + wi
    }
}

#[inline]
fn weight_index(prep: &Prep<'_>, j: usize, w: u64) -> Option<usize> {
    prep.valid[j].binary_search(&w).ok()
}

/// Bytes of the two largest consecutive layers plus the dense indices.
pub(crate) fn estimated_bytes(prep: &Prep<'_>) -> usize {
    if prep.k > 24 {
        return usize::MAX;
    }
    let layout = Layout::new(prep);
    let binom = binomials(prep.k.max(prep.p));
    let block = (prep.n + prep.darts.len()) * 4 + 64;
    let mut worst = 0usize;
    for l in 0..=prep.max_len {
        let mut count = 0usize;
        for t in 1..=prep.p {
            if !prep.walks_fit(t, l) {
                continue;
            }
            let masks = binom[prep.p][t - 1];
            for j in prep.label_window(l) {
                count = count.saturating_add(masks * binom[prep.k][j] * prep.valid[j].len());
            }
        }
        worst = worst.max(count);
    }
    let index = layout.slots() * 4 * 2 + layout.comp_slots() * 4 * 3;
    worst.saturating_mul(2).saturating_mul(block).saturating_add(index)
}

fn binomials(n: usize) -> Vec<Vec<usize>> {
    let mut c = vec![vec![0usize; n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1].saturating_add(c[i - 1][j]);
        }
    }
    c
}

struct Arena {
    blocks: Vec<Block>,
    free: Vec<u32>,
    n: usize,
    darts: usize,
}

impl Arena {
    fn take(&mut self) -> u32 {
        match self.free.pop() {
            Some(id) => {
                self.blocks[id as usize].clear();
                id
            }
            None => {
                self.blocks.push(Block::zeroed(self.n, self.darts));
                (self.blocks.len() - 1) as u32
            }
        }
    }
}

pub(crate) fn run(prep: &Prep<'_>) -> Vec<u32> {
    let f = prep.f;
    let (n, p, k) = (prep.n, prep.p, prep.k);
    let darts = &prep.darts;
    let lay = Layout::new(prep);
    let full_t = (1u32 << p) - 1;
    let full_l = if k == 0 { 0 } else { (1u32 << k) - 1 };
    let masks_l = masks_by_popcount(k);
    let mut coef = vec![0u32; darts.len()];
    for x in 0..n {
        for d in darts.off[x]..darts.off[x + 1] {
            coef[d] = f.mul(prep.fv[x], darts.fe[d]);
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
    let mut by_weight = vec![usize::MAX; wvals.len()];
    // fc(c(x), r) for every vertex and label.
    let fcx: Vec<u32> = (0..n)
        .flat_map(|x| (1..=k).map(move |r| (x, r)))
        .map(|(x, r)| prep.assign.fc(prep.colors[x], r))
        .collect();

    let mut arena = Arena {
        blocks: Vec::new(),
        free: Vec::new(),
        n,
        darts: darts.len(),
    };
    let mut prev = vec![NONE; lay.slots()];
    let mut cur = vec![NONE; lay.slots()];
    let mut live_prev: Vec<usize> = Vec::new();
    let mut live_cur: Vec<usize> = Vec::new();
    let mut comps2 = vec![0u32; lay.comp_slots()];
    let mut comps1 = vec![0u32; lay.comp_slots()];
    let mut comps_cur = vec![0u32; lay.comp_slots()];
    if let Some(wi) = weight_index(prep, 0, 0) {
        comps1[lay.comp(0, 0, wi)] = 1;
    }
    let mut answers = vec![0u32; prep.max_len + 1];

    for l in 1..=prep.max_len {
        for t in 1..=p {
            if !prep.walks_fit(t, l) {
                continue;
            }
            let s = prep.sources[t - 1];
            let ws = prep.weights[s];
            let into_s = &prep.into_source[t - 1];
            // C(t-1, l-2, L, T', w') + f_v(s) sum_r f_c(c(s), r) C(.., L\r, .., w'-we(s)).
            let start = |tm: u32, lm: u32, w: u64| -> u32 {
                let j = lm.count_ones() as usize;
                let mut v = match weight_index(prep, j, w) {
                    Some(wi) => comps2[lay.comp(tm, lm, wi)],
                    None => return 0,
                };
                if let Some(wr) = w.checked_sub(ws) {
                    if j > 0 {
                        if let Some(wi) = weight_index(prep, j - 1, wr) {
                            let mut rest = lm;
                            let mut acc = 0u32;
                            while rest != 0 {
                                let r = rest.trailing_zeros() as usize;
                                rest &= rest - 1;
                                let c = comps2[lay.comp(tm, lm & !(1 << r), wi)];
                                if c != 0 {
                                    acc ^= f.mul(fcx[s * k + r], c);
                                }
                            }
                            v ^= f.mul(prep.fv[s], acc);
                        }
                    }
                }
                v
            };
            for &tm in &masks_by_popcount(p)[t - 1] {
                let ti = lay.tt[((t - 1) << p) | tm as usize];
                for j in prep.label_window(l) {
                    for &lm in &masks_l[j] {
                        for (wi, &wp) in prep.valid[j].iter().enumerate() {
                            let id = arena.take();
                            let mut blk = std::mem::replace(
                                &mut arena.blocks[id as usize],
                                Block { a: Vec::new(), d1: Vec::new() },
                            );
                            let here = lay.block(ti, lm, wi);
                            if prev[here] != NONE {
                                gather_unlabeled(f, darts, &arena.blocks[prev[here] as usize], &mut blk.a);
                            }
                            let st = start(tm, lm, wp);
                            if st != 0 {
                                for (x, &d) in into_s.iter().enumerate() {
                                    if d != usize::MAX {
                                        blk.a[x] ^= f.mul(darts.fe[d], st);
                                    }
                                }
                            }
                            if j > 0 {
                                for (c, &wv) in wvals.iter().enumerate() {
                                    by_weight[c] = wp
                                        .checked_sub(wv)
                                        .and_then(|u| weight_index(prep, j - 1, u))
                                        .unwrap_or(usize::MAX);
                                }
                                for x in 0..n {
                                    let wi2 = by_weight[wclass[x]];
                                    if wi2 == usize::MAX {
                                        continue;
                                    }
                                    let wx = wp - prep.weights[x];
                                    let d = into_s[x];
                                    let mut rest = lm;
                                    while rest != 0 {
                                        let r = rest.trailing_zeros() as usize;
                                        rest &= rest - 1;
                                        let lr = lm & !(1 << r);
                                        let c = fcx[x * k + r];
                                        let src = prev[lay.block(ti, lr, wi2)];
                                        if src != NONE {
                                            gather_labeled(f, darts, x, c, &arena.blocks[src as usize], &mut blk.d1);
                                        }
                                        if d != usize::MAX {
                                            let st = start(tm, lr, wx);
                                            if st != 0 {
                                                blk.d1[d] ^= f.mul(c, st);
                                            }
                                        }
                                    }
                                }
                            }
                            finish_block(f, darts, &coef, &mut blk);
                            let zero = blk.is_zero();
                            arena.blocks[id as usize] = blk;
                            if zero {
                                arena.free.push(id);
                            } else {
                                cur[here] = id;
                                live_cur.push(here);
                            }
                        }
                    }
                }
            }
        }
        comps_cur.iter_mut().for_each(|v| *v = 0);
        for &slot in &live_cur {
            let wi = slot % lay.width;
            let rest = slot / lay.width;
            let lm = (rest & ((1usize << k) - 1)) as u32;
            let ti = rest >> k;
            let tm = lay.tt_mask[ti];
            let blk = &arena.blocks[cur[slot] as usize];
            for (bit, &sink) in prep.sinks.iter().enumerate() {
                if tm & (1 << bit) == 0 {
                    comps_cur[lay.comp(tm | (1 << bit), lm, wi)] ^= blk.a[sink];
                }
            }
        }
        if let Some(wi) = weight_index(prep, k, prep.w) {
            answers[l] = comps_cur[lay.comp(full_t, full_l, wi)];
        }
        for &slot in &live_prev {
            arena.free.push(prev[slot]);
            prev[slot] = NONE;
        }
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut live_prev, &mut live_cur);
        live_cur.clear();
        std::mem::swap(&mut comps2, &mut comps1);
        std::mem::swap(&mut comps1, &mut comps_cur);
    }
    answers
}
