use crate::error::{parse_err, Error, Result};
use crate::gf2::{BitVec, Echelon};
use crate::spectrum::TruthTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf(i8),
    /// Query `⟨mask, x⟩`; `zero` is taken on answer 0.
    Query {
        mask: BitVec,
        zero: Box<Node>,
        one: Box<Node>,
    },
}

impl Node {
    pub fn query(mask: BitVec, zero: Node, one: Node) -> Node {
        Node::Query {
            mask,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    fn depth(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Query { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }
}

/// A parity decision tree over F₂ⁿ.
///
/// Construction checks that masks are nonzero, leaves are ±1 and the
/// masks on every root-to-leaf path are linearly independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pdt {
    n: usize,
    root: Node,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    Pass,
    /// Smallest input (as an integer) where the tree and table differ.
    Mismatch { input: usize, expected: i8, actual: i8 },
}

impl Verification {
    pub fn passed(&self) -> bool {
        matches!(self, Verification::Pass)
    }
}

impl Pdt {
    pub fn new(n: usize, root: Node) -> Result<Self> {
        fn check(node: &Node, n: usize, path: &mut Echelon) -> Result<()> {
            match node {
                Node::Leaf(v) if *v == 1 || *v == -1 => Ok(()),
                Node::Leaf(v) => Err(Error::InvalidParameters(format!("leaf value {v}"))),
                Node::Query { mask, zero, one } => {
                    mask.check_len(n)?;
                    if mask.is_zero() {
                        return Err(Error::ZeroDirection);
                    }
                    let mut below = path.clone();
                    if !below.insert(mask) {
                        return Err(Error::InvalidParameters(format!(
                            "query {} depends on earlier queries on its path",
                            mask.to_hex()
                        )));
                    }
                    check(zero, n, &mut below)?;
                    check(one, n, &mut below)
                }
            }
        }
        check(&root, n, &mut Echelon::new(n))?;
        Ok(Pdt { n, root })
    }

    pub fn leaf(n: usize, value: i8) -> Result<Self> {
        Self::new(n, Node::Leaf(value))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    pub fn query_count(&self) -> usize {
        fn go(node: &Node) -> usize {
            match node {
                Node::Leaf(_) => 0,
                Node::Query { zero, one, .. } => 1 + go(zero) + go(one),
            }
        }
        go(&self.root)
    }

    pub fn evaluate(&self, x: &BitVec) -> i8 {
        assert_eq!(x.len(), self.n, "input length does not match tree");
        let mut node = &self.root;
        loop {
            match node {
                Node::Leaf(v) => return *v,
                Node::Query { mask, zero, one } => node = if mask.dot(x) { one } else { zero },
            }
        }
    }

    /// Exhaustive comparison against a table.
    pub fn verify(&self, table: &TruthTable) -> Result<Verification> {
        if table.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: table.n(),
            });
        }
        let flat = Flat::compile(&self.root);
        for (input, &expected) in table.values().iter().enumerate() {
            let actual = flat.evaluate(input as u64);
            if actual != expected {
                return Ok(Verification::Mismatch { input, expected, actual });
            }
        }
        Ok(Verification::Pass)
    }

    /// Pre-order, one node per line: `Q <mask-hex>` or `L <+1|-1>`.
    pub fn to_text(&self) -> String {
        fn go(node: &Node, out: &mut String) {
            match node {
                Node::Leaf(v) => out.push_str(if *v > 0 { "L +1\n" } else { "L -1\n" }),
                Node::Query { mask, zero, one } => {
                    out.push_str("Q ");
                    out.push_str(&mask.to_hex());
                    out.push('\n');
                    go(zero, out);
                    go(one, out);
                }
            }
        }
        let mut out = String::new();
        go(&self.root, &mut out);
        out
    }

    pub fn from_text(n: usize, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        fn parse<'a>(n: usize, lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<Node> {
            let (no, line) = lines.next().ok_or_else(|| parse_err(0, "unexpected end of tree"))?;
            match line.split_once(' ') {
                Some(("L", "+1")) => Ok(Node::Leaf(1)),
                Some(("L", "-1")) => Ok(Node::Leaf(-1)),
                Some(("Q", hex)) => {
                    let mask = BitVec::from_hex(n, hex).map_err(|e| parse_err(no, e.to_string()))?;
                    let zero = parse(n, lines)?;
                    let one = parse(n, lines)?;
                    Ok(Node::query(mask, zero, one))
                }
                _ => Err(parse_err(no, format!("expected `Q <hex>` or `L <+1|-1>`, got {line:?}"))),
            }
        }

        let root = parse(n, &mut lines)?;
        if let Some((no, _)) = lines.next() {
            return Err(parse_err(no, "trailing lines after complete tree"));
        }
        Self::new(n, root)
    }
}

/// Array form for fast table verification; masks as words.
struct Flat {
    nodes: Vec<FlatNode>,
}

enum FlatNode {
    Leaf(i8),
    Query { mask: Vec<u64>, zero: usize, one: usize },
}

impl Flat {
    fn compile(root: &Node) -> Flat {
        fn go(node: &Node, nodes: &mut Vec<FlatNode>) -> usize {
            let at = nodes.len();
            match node {
                Node::Leaf(v) => nodes.push(FlatNode::Leaf(*v)),
                Node::Query { mask, zero, one } => {
                    nodes.push(FlatNode::Leaf(0));
                    let z = go(zero, nodes);
                    let o = go(one, nodes);
                    nodes[at] = FlatNode::Query {
                        mask: mask.words().to_vec(),
                        zero: z,
                        one: o,
                    };
                }
            }
            at
        }
        let mut nodes = Vec::new();
        go(root, &mut nodes);
        Flat { nodes }
    }

    fn evaluate(&self, x: u64) -> i8 {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                FlatNode::Leaf(v) => return *v,
                FlatNode::Query { mask, zero, one } => {
                    // tables have n ≤ 64, so only the first word can meet x
                    let bit = (mask.first().copied().unwrap_or(0) & x).count_ones() & 1;
                    i = if bit == 1 { *one } else { *zero };
                }
            }
        }
    }
}
