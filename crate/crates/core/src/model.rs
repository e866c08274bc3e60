//! Set partitions, braids, and their arc diagrams.
//!
//! Ground sets are 1-indexed: a partition of `[n]` covers `1..=n`. The
//! standard representation joins consecutive members of each block by an
//! arc, and crossings are measured on those arcs.

use std::fmt;

use thiserror::Error;

/// An arc `(left, right)` of a standard representation. `left == right` only
/// occurs as a loop inside a [`Braid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub left: usize,
    pub right: usize,
}

impl Arc {
    pub fn new(left: usize, right: usize) -> Self {
        debug_assert!(left <= right, "arc ({left},{right}) is reversed");
        Arc { left, right }
    }

    pub fn is_loop(&self) -> bool {
        self.left == self.right
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

/// Formats arcs as `(1,5) (3,7) ...`.
pub fn format_arcs(arcs: &[Arc]) -> String {
    let parts: Vec<String> = arcs.iter().map(Arc::to_string).collect();
    parts.join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition of an empty ground set")]
    EmptyGroundSet,
    #[error("block {index} is empty")]
    EmptyBlock { index: usize },
    #[error("element {element} is outside 1..={n}")]
    OutOfRange { element: usize, n: usize },
    #[error("element {element} repeated")]
    Repeated { element: usize },
    #[error("element {element} missing")]
    Missing { element: usize },
}

/// A set partition of `[n]`.
///
/// Blocks are kept normalized: elements ascending inside each block, blocks
/// ordered by their minimum. Two partitions are equal iff they have the same
/// blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::EmptyGroundSet);
        }
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for (index, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock { index });
            }
            for &element in block.iter() {
                if element == 0 || element > n {
                    return Err(PartitionError::OutOfRange { element, n });
                }
                if seen[element] {
                    return Err(PartitionError::Repeated { element });
                }
                seen[element] = true;
            }
            block.sort_unstable();
        }
        if let Some(element) = (1..=n).find(|&e| !seen[e]) {
            return Err(PartitionError::Missing { element });
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// The partition into singletons.
    pub fn singletons(n: usize) -> Self {
        assert!(n > 0, "partition of an empty ground set");
        SetPartition {
            n,
            blocks: (1..=n).map(|e| vec![e]).collect(),
        }
    }

    /// Builds a partition from a restricted growth string (`rgs[k]` is the
    /// block label of element `k + 1`, labels introduced in increasing order).
    pub fn from_restricted_growth(rgs: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (k, &label) in rgs.iter().enumerate() {
            if label == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[label].push(k + 1);
        }
        SetPartition::new(rgs.len(), blocks).expect("restricted growth string is well formed")
    }

    /// Blocks of the connected components of `arcs` over `[n]` (loops only
    /// pin their vertex).
    pub fn from_arcs(n: usize, arcs: &[Arc]) -> Result<Self, PartitionError> {
        let mut dsu = DisjointSets::new(n + 1);
        for arc in arcs {
            for v in [arc.left, arc.right] {
                if v == 0 || v > n {
                    return Err(PartitionError::OutOfRange { element: v, n });
                }
            }
            dsu.union(arc.left, arc.right);
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for v in 1..=n {
            let root = dsu.find(v);
            by_root[root].push(v);
        }
        SetPartition::new(n, by_root.into_iter().filter(|b| !b.is_empty()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The standard representation: consecutive block members joined,
    /// arcs sorted by left endpoint.
    pub fn canonical_arcs(&self) -> Vec<Arc> {
        let mut arcs: Vec<Arc> = self
            .blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| Arc::new(w[0], w[1])))
            .collect();
        arcs.sort_unstable();
        arcs
    }

    /// True iff members of a common block always differ by at least `m`.
    pub fn is_m_regular(&self, m: usize) -> bool {
        // Block members are sorted, so the closest pair is adjacent.
        self.blocks
            .iter()
            .all(|b| b.windows(2).all(|w| w[1] - w[0] >= m))
    }

    /// The largest `k` such that `k` arcs of the standard representation
    /// mutually cross.
    pub fn max_mutual_crossing(&self) -> usize {
        max_mutual_crossing(&self.canonical_arcs())
    }

    pub fn is_three_noncrossing(&self) -> bool {
        self.max_mutual_crossing() < 3
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            f.write_str("{")?;
            for (k, e) in block.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// Renders `p` in block notation: `{1,5}{2}{3,7,10}`.
pub fn format_partition(p: &SetPartition) -> String {
    p.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

/// Parses block notation.
///
/// Accepts `{1,5}{3,7,10}{2}` (ground set size inferred as the largest
/// element) or `n=15: {1,5}...`. Whitespace between tokens is ignored.
pub fn parse_partition(text: &str) -> Result<SetPartition, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let read_number = |pos: &mut usize| -> Result<usize, ParseError> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            let found = text[start..].chars().next();
            return Err(match found {
                Some(c) => ParseError::new(start, format!("expected a number, found '{c}'")),
                None => ParseError::new(start, "expected a number, found end of input"),
            });
        }
        text[start..*pos]
            .parse::<usize>()
            .map_err(|_| ParseError::new(start, "number out of range"))
    };

    skip_ws(&mut pos);
    let mut explicit_n = None;
    if bytes.get(pos) == Some(&b'n') {
        pos += 1;
        skip_ws(&mut pos);
        if bytes.get(pos) != Some(&b'=') {
            return Err(ParseError::new(pos, "expected '=' after 'n'"));
        }
        pos += 1;
        skip_ws(&mut pos);
        explicit_n = Some(read_number(&mut pos)?);
        skip_ws(&mut pos);
        if bytes.get(pos) != Some(&b':') {
            return Err(ParseError::new(pos, "expected ':' after ground set size"));
        }
        pos += 1;
    }

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut first_seen: Vec<Option<usize>> = Vec::new();
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'{' {
            let c = text[pos..].chars().next().unwrap_or('?');
            return Err(ParseError::new(pos, format!("expected '{{', found '{c}'")));
        }
        pos += 1;
        let mut block = Vec::new();
        loop {
            skip_ws(&mut pos);
            let at = pos;
            let e = read_number(&mut pos)?;
            if e == 0 {
                return Err(ParseError::new(at, "elements start at 1"));
            }
            if first_seen.len() <= e {
                first_seen.resize(e + 1, None);
            }
            if first_seen[e].is_some() {
                return Err(ParseError::new(at, format!("element {e} repeated")));
            }
            first_seen[e] = Some(at);
            block.push(e);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b'}') => {
                    pos += 1;
                    break;
                }
                Some(_) => {
                    let c = text[pos..].chars().next().unwrap_or('?');
                    return Err(ParseError::new(pos, format!("expected ',' or '}}', found '{c}'")));
                }
                None => return Err(ParseError::new(pos, "unterminated block")),
            }
        }
        blocks.push(block);
    }

    let max_element = first_seen.len().saturating_sub(1);
    let n = explicit_n.unwrap_or(max_element);
    if n == 0 {
        return Err(ParseError::new(pos, "no elements"));
    }
    if max_element > n {
        let at = first_seen[max_element].unwrap_or(0);
        return Err(ParseError::new(at, format!("element {max_element} exceeds n={n}")));
    }
    if let Some(missing) = (1..=n).find(|&e| first_seen.get(e).copied().flatten().is_none()) {
        return Err(ParseError::new(pos, format!("element {missing} missing")));
    }
    SetPartition::new(n, blocks).map_err(|e| ParseError::new(pos, e.to_string()))
}

/// Arcs over `[n]` where loops are allowed and a vertex is the left endpoint
/// of at most one arc and the right endpoint of at most one arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Braid {
    n: usize,
    arcs: Vec<Arc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("arc {arc} leaves 1..={n}")]
    OutOfRange { arc: Arc, n: usize },
    #[error("vertex {vertex} opens more than one arc")]
    DoubleLeft { vertex: usize },
    #[error("vertex {vertex} closes more than one arc")]
    DoubleRight { vertex: usize },
}

impl Braid {
    pub fn new(n: usize, mut arcs: Vec<Arc>) -> Result<Self, BraidError> {
        let mut opens = vec![false; n + 1];
        let mut closes = vec![false; n + 1];
        for &arc in &arcs {
            if arc.left == 0 || arc.right > n || arc.left > arc.right {
                return Err(BraidError::OutOfRange { arc, n });
            }
            if std::mem::replace(&mut opens[arc.left], true) {
                return Err(BraidError::DoubleLeft { vertex: arc.left });
            }
            if std::mem::replace(&mut closes[arc.right], true) {
                return Err(BraidError::DoubleRight { vertex: arc.right });
            }
        }
        arcs.sort_unstable();
        Ok(Braid { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().filter(|a| a.is_loop()).map(|a| a.left)
    }

    pub fn has_loops(&self) -> bool {
        self.arcs.iter().any(Arc::is_loop)
    }

    /// Crossing number under the braid rule, loops excluded.
    pub fn max_mutual_crossing(&self) -> usize {
        max_mutual_crossing_with(&self.arcs, CrossingRule::Braid)
    }
}

/// Which pairs of arcs count as crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingRule {
    /// `i1 < i2 < j1 < j2`.
    Partition,
    /// `i1 < i2 <= j1 < j2`: arcs sharing an endpoint `(i,j),(j,l)` cross.
    Braid,
}

impl CrossingRule {
    pub fn crosses(self, a: Arc, b: Arc) -> bool {
        let (a, b) = if a.left <= b.left { (a, b) } else { (b, a) };
        if a.is_loop() || b.is_loop() {
            return false;
        }
        match self {
            CrossingRule::Partition => a.left < b.left && b.left < a.right && a.right < b.right,
            CrossingRule::Braid => a.left < b.left && b.left <= a.right && a.right < b.right,
        }
    }
}

/// Largest set of mutually crossing arcs under the partition rule.
pub fn max_mutual_crossing(arcs: &[Arc]) -> usize {
    max_mutual_crossing_with(arcs, CrossingRule::Partition)
}

/// Largest set of mutually crossing arcs.
///
/// Arcs `(i_1,j_1),...,(i_k,j_k)` with `i_1 < ... < i_k` mutually cross iff
/// the right endpoints also increase and `i_k < j_1` (`<=` under the braid
/// rule), i.e. every arc covers a common cut. For each cut the answer is the
/// longest strictly increasing run of right endpoints among the covering
/// arcs taken in left-endpoint order.
pub fn max_mutual_crossing_with(arcs: &[Arc], rule: CrossingRule) -> usize {
    let mut arcs: Vec<Arc> = arcs.iter().copied().filter(|a| !a.is_loop()).collect();
    if arcs.is_empty() {
        return 0;
    }
    // Equal lefts never chain; ordering them by descending right keeps the
    // strict LIS from picking two of them.
    arcs.sort_unstable_by(|a, b| a.left.cmp(&b.left).then(b.right.cmp(&a.right)));
    let max_vertex = arcs.iter().map(|a| a.right).max().unwrap_or(0);
    let mut best = 1;
    for cut in 1..=max_vertex {
        let covering = arcs.iter().filter(|a| match rule {
            CrossingRule::Partition => a.left <= cut && cut < a.right,
            CrossingRule::Braid => a.left <= cut && cut <= a.right,
        });
        let mut tails: Vec<usize> = Vec::new();
        for arc in covering {
            let at = tails.partition_point(|&t| t < arc.right);
            if at == tails.len() {
                tails.push(arc.right);
            } else {
                tails[at] = arc.right;
            }
        }
        best = best.max(tails.len());
    }
    best
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(size: usize) -> Self {
        DisjointSets {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
