//! Pointwise closure of value vectors under the basic operations, with a
//! shortest witness term for every member.
//!
//! A member is a key vector over the source algebra together with an optional
//! payload vector over a target algebra of the same signature; operations act
//! coordinatewise on both. Terms are enumerated level by level in term size,
//! and within a level in increasing term order, so the first term reaching a
//! key is its shortest, lexicographically least witness. A payload conflict
//! (one key, two payloads) stops the run.
//!
//! When vectors fit in a `u64` as base-`m` numbers, candidates are evaluated
//! through per-prefix lookup tables over blocks of coordinates instead of
//! coordinate by coordinate.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::alg::FinOpTable;
use crate::error::{Error, Result};
use crate::term::FinTerm;

#[derive(Debug, Clone)]
enum Node {
    Var(usize),
    App(usize, Vec<usize>),
}

pub(crate) struct ClosureInput<'a> {
    /// Operation names in increasing order, with source and target tables.
    pub names: Vec<String>,
    pub src: Vec<&'a FinOpTable>,
    pub dst: Option<Vec<&'a FinOpTable>>,
    pub key_len: usize,
    pub payload_len: usize,
    /// Key and payload of each variable `e_i`.
    pub seeds: Vec<(Vec<u32>, Vec<u32>)>,
    pub budget: usize,
}

/// Two terms with the same key and different payloads. `earlier` is the
/// witness of the key; `later` is the least term disagreeing with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Conflict {
    pub earlier: FinTerm,
    pub later: FinTerm,
}

pub(crate) struct Closure {
    names: Vec<String>,
    key_len: usize,
    payload_len: usize,
    keys: Vec<u32>,
    payloads: Vec<u32>,
    nodes: Vec<Node>,
    pub conflict: Option<Conflict>,
}

impl Closure {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn key(&self, id: usize) -> &[u32] {
        &self.keys[id * self.key_len..(id + 1) * self.key_len]
    }

    pub fn payload(&self, id: usize) -> &[u32] {
        &self.payloads[id * self.payload_len..(id + 1) * self.payload_len]
    }

    pub fn term(&self, id: usize) -> FinTerm {
        match &self.nodes[id] {
            Node::Var(i) => FinTerm::Var(*i),
            Node::App(op, cs) => FinTerm::App(self.names[*op].clone(), cs.iter().map(|&c| self.term(c)).collect()),
        }
    }
}


/// Base-`m` packing of vectors of length `len`, coordinate 0 most
/// significant, read in blocks of `width` coordinates.
struct Codec {
    m: u64,
    len: usize,
    width: usize,
    total: u64,
}

impl Codec {
    fn new(m: usize, len: usize) -> Option<Codec> {
        let m64 = m as u64;
        if m64 == 0 && len > 0 {
            return None;
        }
        let mut total = 1u64;
        for _ in 0..len {
            total = total.checked_mul(m64)?;
        }
        let mut width = 1;
        while width < len && m64.checked_pow(width as u32 + 1).is_some_and(|v| v <= 64) {
            width += 1;
        }
        Some(Codec { m: m64, len, width, total })
    }

    fn blocks(&self) -> usize {
        self.len.div_ceil(self.width)
    }

    fn block(&self, g: usize) -> (usize, usize) {
        (g * self.width, ((g + 1) * self.width).min(self.len))
    }

    fn encode(&self, v: &[u32]) -> u64 {
        v.iter().fold(0u64, |acc, &x| acc * self.m + x as u64)
    }

    fn block_digits(&self, v: &[u32], out: &mut Vec<u32>) {
        for g in 0..self.blocks() {
            let (lo, hi) = self.block(g);
            out.push(v[lo..hi].iter().fold(0u32, |acc, &x| acc * self.m as u32 + x));
        }
    }

    fn decode(&self, mut code: u64, out: &mut [u32]) {
        for slot in out.iter_mut().rev() {
            *slot = (code % self.m) as u32;
            code /= self.m;
        }
    }

    /// Fills `tables[g][d]` with the code contribution of block `g` when its
    /// digits are `d` and coordinate `j` holding `v` contributes `val(j, v)`.
    fn fill_tables(&self, tables: &mut Vec<Vec<u64>>, val: impl Fn(usize, u32) -> u64) {
        tables.resize(self.blocks(), Vec::new());
        for (g, table) in tables.iter_mut().enumerate() {
            let (lo, hi) = self.block(g);
            let size = (self.m as usize).pow((hi - lo) as u32);
            table.clear();
            table.extend((0..size).map(|d| {
                let mut x = d as u64;
                let mut sum = 0u64;
                for j in (lo..hi).rev() {
                    sum += val(j, (x % self.m) as u32);
                    x /= self.m;
                }
                sum
            }));
        }
    }

    fn place(&self, j: usize) -> u64 {
        self.m.pow((self.len - 1 - j) as u32)
    }
}

const DENSE_LIMIT: u64 = 1 << 22;

enum CodeIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

impl CodeIndex {
    fn new(total: u64) -> Self {
        if total <= DENSE_LIMIT {
            CodeIndex::Dense(vec![u32::MAX; total as usize])
        } else {
            CodeIndex::Sparse(HashMap::new())
        }
    }

    fn get(&self, code: u64) -> Option<usize> {
        match self {
            CodeIndex::Dense(v) => match v[code as usize] {
                u32::MAX => None,
                id => Some(id as usize),
            },
            CodeIndex::Sparse(m) => m.get(&code).map(|&id| id as usize),
        }
    }

    fn insert(&mut self, code: u64, id: usize) {
        match self {
            CodeIndex::Dense(v) => v[code as usize] = id as u32,
            CodeIndex::Sparse(m) => {
                m.insert(code, id as u32);
            }
        }
    }
}

/// Encoded view of the members, used when both vectors fit in a `u64`.
struct Packed {
    key: Codec,
    pay: Codec,
    index: CodeIndex,
    kblocks: Vec<u32>,
    pblocks: Vec<u32>,
    pcodes: Vec<u64>,
    ktab: Vec<Vec<u64>>,
    ptab: Vec<Vec<u64>>,
}

struct Runner<'a, 'b> {
    input: &'b ClosureInput<'a>,
    src_m: usize,
    dst_m: usize,
    full: Option<usize>,
    out: Closure,
    sizes: Vec<usize>,
    rank: Vec<usize>,
    by_rank: Vec<usize>,
    by_size: Vec<Vec<usize>>,
    packed: Option<Packed>,
    index: HashMap<Vec<u32>, usize>,
    key_buf: Vec<u32>,
    pay_buf: Vec<u32>,
}

enum Step {
    Continue,
    Stop,
}

pub(crate) fn run(input: &ClosureInput<'_>) -> Result<Closure> {
    let src_m = input.src.first().map_or(0, |t| t.carrier());
    let dst_m = input
        .dst
        .as_ref()
        .and_then(|d| d.first().map(|t| t.carrier()))
        .unwrap_or(0);
    let full = if input.payload_len == 0 && src_m > 0 {
        (src_m as u64)
            .checked_pow(input.key_len as u32)
            .and_then(|v| usize::try_from(v).ok())
    } else {
        None
    };
    let packed = match (Codec::new(src_m, input.key_len), Codec::new(dst_m, input.payload_len)) {
        (Some(key), Some(pay)) if src_m > 0 => Some(Packed {
            index: CodeIndex::new(key.total),
            key,
            pay,
            kblocks: Vec::new(),
            pblocks: Vec::new(),
            pcodes: Vec::new(),
            ktab: Vec::new(),
            ptab: Vec::new(),
        }),
        _ => None,
    };
    let mut r = Runner {
        input,
        src_m,
        dst_m,
        full,
        out: Closure {
            names: input.names.clone(),
            key_len: input.key_len,
            payload_len: input.payload_len,
            keys: Vec::new(),
            payloads: Vec::new(),
            nodes: Vec::new(),
            conflict: None,
        },
        sizes: Vec::new(),
        rank: Vec::new(),
        by_rank: Vec::new(),
        by_size: vec![Vec::new(); 2],
        packed,
        index: HashMap::new(),
        key_buf: Vec::new(),
        pay_buf: Vec::new(),
    };
    r.run()?;
    Ok(r.out)
}

impl Runner<'_, '_> {
    fn run(&mut self) -> Result<()> {
        if let Step::Stop = self.level_one()? {
            return Ok(());
        }
        let max_arity = self.input.src.iter().map(|t| t.arity()).max().unwrap_or(0);
        let mut s = 2;
        loop {
            let max_size = self.by_size.iter().rposition(|b| !b.is_empty()).unwrap_or(0);
            // Every tuple of members has been combined once s passes this.
            if max_arity == 0 || s > max_arity * max_size + 1 {
                return Ok(());
            }
            self.by_size.resize(s + 1, Vec::new());
            for op in 0..self.input.src.len() {
                let n = self.input.src[op].arity();
                if n == 0 {
                    continue;
                }
                if let Step::Stop = self.level_op(op, n, s)? {
                    return Ok(());
                }
            }
            self.rerank();
            s += 1;
        }
    }

    fn level_one(&mut self) -> Result<Step> {
        let input = self.input;
        for (i, (key, payload)) in input.seeds.iter().enumerate() {
            debug_assert_eq!(key.len(), input.key_len);
            debug_assert_eq!(payload.len(), input.payload_len);
            if let Step::Stop = self.offer(Node::Var(i), 1, key, payload)? {
                return Ok(Step::Stop);
            }
        }
        for op in 0..input.src.len() {
            if input.src[op].arity() != 0 {
                continue;
            }
            let key = vec![input.src[op].values()[0]; input.key_len];
            let payload = match &input.dst {
                Some(d) => vec![d[op].values()[0]; input.payload_len],
                None => Vec::new(),
            };
            if let Step::Stop = self.offer(Node::App(op, vec![]), 1, &key, &payload)? {
                return Ok(Step::Stop);
            }
        }
        self.rerank();
        Ok(Step::Continue)
    }

    /// Members ordered by their witness terms.
    fn rerank(&mut self) {
        let n = self.out.nodes.len();
        let old = std::mem::take(&mut self.rank);
        let nodes = &self.out.nodes;
        let mut ids: Vec<usize> = (0..n).collect();
        ids.sort_by(|&a, &b| cmp_node(&nodes[a], &nodes[b], &old));
        let mut rank = vec![0; n];
        for (r, &id) in ids.iter().enumerate() {
            rank[id] = r;
        }
        self.rank = rank;
        self.by_rank = ids;
        for bucket in &mut self.by_size {
            bucket.sort_by_key(|&id| self.rank[id]);
        }
    }

    /// Enumerates applications of `op` with total size `s` in term order.
    fn level_op(&mut self, op: usize, n: usize, s: usize) -> Result<Step> {
        let kl = self.input.key_len;
        let pl = self.input.payload_len;
        let mut f = Frame {
            op,
            n,
            children: vec![0; n],
            kpart: vec![vec![0; kl]; n],
            ppart: vec![vec![0; pl]; n],
        };
        self.descend(&mut f, 0, s - 1)
    }

    fn descend(&mut self, f: &mut Frame, pos: usize, remaining: usize) -> Result<Step> {
        if pos + 1 == f.n {
            return match self.by_size.get(remaining) {
                Some(b) if !b.is_empty() => {
                    if self.packed.is_some() {
                        self.finish_packed(f, remaining)
                    } else {
                        self.finish_plain(f, remaining)
                    }
                }
                _ => Ok(Step::Continue),
            };
        }
        let left = f.n - pos - 1;
        if remaining < left + 1 {
            return Ok(Step::Continue);
        }
        // Members found at this level are larger than any child, so the
        // lists read here stay fixed while the level runs.
        for t in 0..self.by_rank.len() {
            let c = self.by_rank[t];
            let sz = self.sizes[c];
            if sz + left > remaining {
                continue;
            }
            f.children[pos] = c;
            self.extend_part(f, pos, c);
            if let Step::Stop = self.descend(f, pos + 1, remaining - sz)? {
                return Ok(Step::Stop);
            }
        }
        Ok(Step::Continue)
    }

    /// Table indices after fixing child `c` at `pos`.
    fn extend_part(&self, f: &mut Frame, pos: usize, c: usize) {
        let key = self.out.key(c);
        let (before, after) = f.kpart.split_at_mut(pos + 1);
        for ((nx, &pv), &k) in after[0].iter_mut().zip(&before[pos]).zip(key) {
            *nx = pv * self.src_m + k as usize;
        }
        let pay = self.out.payload(c);
        let (before, after) = f.ppart.split_at_mut(pos + 1);
        for ((nx, &pv), &k) in after[0].iter_mut().zip(&before[pos]).zip(pay) {
            *nx = pv * self.dst_m + k as usize;
        }
    }

    fn finish_plain(&mut self, f: &mut Frame, last: usize) -> Result<Step> {
        let pos = f.n - 1;
        let src = self.input.src[f.op].values();
        for t in 0..self.by_size[last].len() {
            let c = self.by_size[last][t];
            f.children[pos] = c;
            self.key_buf.clear();
            for (&p, &k) in f.kpart[pos].iter().zip(self.out.key(c)) {
                self.key_buf.push(src[p * self.src_m + k as usize]);
            }
            self.pay_buf.clear();
            if let Some(d) = &self.input.dst {
                let dst = d[f.op].values();
                for (&p, &k) in f.ppart[pos].iter().zip(self.out.payload(c)) {
                    self.pay_buf.push(dst[p * self.dst_m + k as usize]);
                }
            }
            let key = std::mem::take(&mut self.key_buf);
            let payload = std::mem::take(&mut self.pay_buf);
            let size = 1 + f.children.iter().map(|&c| self.sizes[c]).sum::<usize>();
            let step = self.offer(Node::App(f.op, f.children.clone()), size, &key, &payload);
            self.key_buf = key;
            self.pay_buf = payload;
            if let Step::Stop = step? {
                return Ok(Step::Stop);
            }
        }
        Ok(Step::Continue)
    }

    fn finish_packed(&mut self, f: &mut Frame, last: usize) -> Result<Step> {
        let pos = f.n - 1;
        let mut pk = self.packed.take().expect("packed mode");
        let src = self.input.src[f.op].values();
        let m = self.src_m;
        let kpart = &f.kpart[pos];
        let mut ktab = std::mem::take(&mut pk.ktab);
        pk.key
            .fill_tables(&mut ktab, |j, v| src[kpart[j] * m + v as usize] as u64 * pk.key.place(j));
        let mut ptab = std::mem::take(&mut pk.ptab);
        if let Some(d) = &self.input.dst {
            let dst = d[f.op].values();
            let dm = self.dst_m;
            let ppart = &f.ppart[pos];
            pk.pay
                .fill_tables(&mut ptab, |j, v| dst[ppart[j] * dm + v as usize] as u64 * pk.pay.place(j));
        }
        let kb = pk.key.blocks();
        let pb = pk.pay.blocks();
        let base = 1 + f.children[..pos].iter().map(|&c| self.sizes[c]).sum::<usize>();
        let mut step = Ok(Step::Continue);
        for t in 0..self.by_size[last].len() {
            let c = self.by_size[last][t];
            let code: u64 = pk.kblocks[c * kb..(c + 1) * kb]
                .iter()
                .zip(&ktab)
                .map(|(&d, tab)| tab[d as usize])
                .sum();
            let pcode: u64 = pk.pblocks[c * pb..(c + 1) * pb]
                .iter()
                .zip(&ptab)
                .map(|(&d, tab)| tab[d as usize])
                .sum();
            let hit = pk.index.get(code);
            if hit.is_some_and(|id| pk.pcodes[id] == pcode) {
                continue;
            }
            f.children[pos] = c;
            let node = Node::App(f.op, f.children.clone());
            step = match hit {
                Some(id) => Ok(self.conflict(id, &node)),
                None => {
                    let mut key = vec![0; self.input.key_len];
                    pk.key.decode(code, &mut key);
                    let mut payload = vec![0; self.input.payload_len];
                    pk.pay.decode(pcode, &mut payload);
                    self.insert_packed(&mut pk, node, base + self.sizes[c], key, payload, code, pcode)
                }
            };
            if !matches!(step, Ok(Step::Continue)) {
                break;
            }
        }
        pk.ktab = ktab;
        pk.ptab = ptab;
        self.packed = Some(pk);
        step
    }

    fn offer(&mut self, node: Node, size: usize, key: &[u32], payload: &[u32]) -> Result<Step> {
        if let Some(mut pk) = self.packed.take() {
            let code = pk.key.encode(key);
            let pcode = pk.pay.encode(payload);
            let step = match pk.index.get(code) {
                Some(id) if pk.pcodes[id] == pcode => Ok(Step::Continue),
                Some(id) => Ok(self.conflict(id, &node)),
                None => self.insert_packed(&mut pk, node, size, key.to_vec(), payload.to_vec(), code, pcode),
            };
            self.packed = Some(pk);
            return step;
        }
        match self.index.get(key) {
            Some(&id) if self.out.payload(id) == payload => Ok(Step::Continue),
            Some(&id) => Ok(self.conflict(id, &node)),
            None => {
                self.index.insert(key.to_vec(), self.out.nodes.len());
                self.insert(node, size, key, payload)
            }
        }
    }

    fn conflict(&mut self, id: usize, node: &Node) -> Step {
        let later = self.node_term(node);
        self.out.conflict = Some(Conflict {
            earlier: self.out.term(id),
            later,
        });
        Step::Stop
    }

    fn node_term(&self, node: &Node) -> FinTerm {
        match node {
            Node::Var(i) => FinTerm::Var(*i),
            Node::App(op, cs) => FinTerm::App(self.out.names[*op].clone(), cs.iter().map(|&c| self.out.term(c)).collect()),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn insert_packed(
        &mut self,
        pk: &mut Packed,
        node: Node,
        size: usize,
        key: Vec<u32>,
        payload: Vec<u32>,
        code: u64,
        pcode: u64,
    ) -> Result<Step> {
        pk.index.insert(code, self.out.nodes.len());
        pk.key.block_digits(&key, &mut pk.kblocks);
        pk.pay.block_digits(&payload, &mut pk.pblocks);
        pk.pcodes.push(pcode);
        self.insert(node, size, &key, &payload)
    }

    fn insert(&mut self, node: Node, size: usize, key: &[u32], payload: &[u32]) -> Result<Step> {
        let id = self.out.nodes.len();
        if id >= self.input.budget {
            return Err(Error::exhausted("clone members", self.input.budget));
        }
        self.out.keys.extend_from_slice(key);
        self.out.payloads.extend_from_slice(payload);
        self.out.nodes.push(node);
        self.sizes.push(size);
        if self.by_size.len() <= size {
            self.by_size.resize(size + 1, Vec::new());
        }
        self.by_size[size].push(id);
        if self.full == Some(self.out.nodes.len()) {
            return Ok(Step::Stop);
        }
        Ok(Step::Continue)
    }
}

struct Frame {
    op: usize,
    n: usize,
    children: Vec<usize>,
    kpart: Vec<Vec<usize>>,
    ppart: Vec<Vec<usize>>,
}

fn cmp_node(a: &Node, b: &Node, rank: &[usize]) -> Ordering {
    match (a, b) {
        (Node::Var(i), Node::Var(j)) => i.cmp(j),
        (Node::Var(_), Node::App(..)) => Ordering::Less,
        (Node::App(..), Node::Var(_)) => Ordering::Greater,
        (Node::App(o1, c1), Node::App(o2, c2)) => o1
            .cmp(o2)
            .then_with(|| c1.iter().map(|&c| rank[c]).cmp(c2.iter().map(|&c| rank[c]))),
    }
}
