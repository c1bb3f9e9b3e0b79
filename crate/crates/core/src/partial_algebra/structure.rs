use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unary table slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnaryOp {
    L1,
    U1,
    L2,
    U2,
    Ls,
    Us,
    Neg,
    Sim,
}

/// Partial binary table slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinaryOp {
    Vee,
    Wedge,
    Otimes,
    Dot,
    Ominus,
    Oplus,
    ImpNeg,
    ImpSim,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 8] = [
        UnaryOp::L1,
        UnaryOp::U1,
        UnaryOp::L2,
        UnaryOp::U2,
        UnaryOp::Ls,
        UnaryOp::Us,
        UnaryOp::Neg,
        UnaryOp::Sim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::L1 => "l1",
            UnaryOp::U1 => "u1",
            UnaryOp::L2 => "l2",
            UnaryOp::U2 => "u2",
            UnaryOp::Ls => "ls",
            UnaryOp::Us => "us",
            UnaryOp::Neg => "neg",
            UnaryOp::Sim => "sim",
        }
    }

    /// Approximation slots must be total.
    pub fn is_approximation(self) -> bool {
        !matches!(self, UnaryOp::Neg | UnaryOp::Sim)
    }
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 8] = [
        BinaryOp::Vee,
        BinaryOp::Wedge,
        BinaryOp::Otimes,
        BinaryOp::Dot,
        BinaryOp::Ominus,
        BinaryOp::Oplus,
        BinaryOp::ImpNeg,
        BinaryOp::ImpSim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BinaryOp::Vee => "vee",
            BinaryOp::Wedge => "wedge",
            BinaryOp::Otimes => "otimes",
            BinaryOp::Dot => "dot",
            BinaryOp::Ominus => "ominus",
            BinaryOp::Oplus => "oplus",
            BinaryOp::ImpNeg => "imp_neg",
            BinaryOp::ImpSim => "imp_sim",
        }
    }
}

impl FromStr for UnaryOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        UnaryOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }
}

impl FromStr for BinaryOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BinaryOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }
}

impl fmt::Display for UnaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite bounded quasi-ordered carrier with unary and partial binary
/// operation tables. Elements are addressed by carrier index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    carrier: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    closure_added: usize,
    bot: usize,
    top: usize,
    unary: BTreeMap<UnaryOp, Vec<Option<usize>>>,
    binary: BTreeMap<BinaryOp, Vec<Option<usize>>>,
}

impl FiniteStructure {
    /// Builds the order as the reflexive-transitive closure of `leq_pairs`
    /// and checks that `bot`/`top` bound every element.
    pub fn new(
        carrier: Vec<String>,
        leq_pairs: &[(usize, usize)],
        bot: usize,
        top: usize,
    ) -> Result<Self> {
        let n = carrier.len();
        if n == 0 {
            return Err(Error::input("carrier must be nonempty"));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, c) in carrier.iter().enumerate() {
            if c.contains('|') {
                return Err(Error::input(format!("element `{c}` may not contain `|`")));
            }
            if index.insert(c.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate carrier element `{c}`")));
            }
        }
        if bot >= n || top >= n {
            return Err(Error::input("bottom/top index outside the carrier"));
        }
        let mut leq = vec![false; n * n];
        let mut declared = 0;
        for &(a, b) in leq_pairs {
            if a >= n || b >= n {
                return Err(Error::input("order pair outside the carrier"));
            }
            if !leq[a * n + b] {
                declared += 1;
            }
            leq[a * n + b] = true;
        }
        for i in 0..n {
            leq[i * n + i] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let total = leq.iter().filter(|&&b| b).count();
        let s = FiniteStructure {
            carrier,
            index,
            leq,
            closure_added: total - declared,
            bot,
            top,
            unary: BTreeMap::new(),
            binary: BTreeMap::new(),
        };
        for x in 0..n {
            if !s.le(bot, x) || !s.le(x, top) {
                return Err(Error::input(format!(
                    "`{}` is not between bot `{}` and top `{}`",
                    s.carrier[x], s.carrier[bot], s.carrier[top]
                )));
            }
        }
        Ok(s)
    }

    pub fn with_unary(mut self, op: UnaryOp, table: Vec<Option<usize>>) -> Result<Self> {
        self.set_unary(op, table)?;
        Ok(self)
    }

    pub fn set_unary(&mut self, op: UnaryOp, table: Vec<Option<usize>>) -> Result<()> {
        let n = self.len();
        if table.len() != n {
            return Err(Error::input(format!("unary table `{op}` must have {n} entries")));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::input(format!("unary table `{op}` names an unknown element")));
        }
        if op.is_approximation() {
            if let Some(i) = table.iter().position(Option::is_none) {
                return Err(Error::input(format!(
                    "unary table `{op}` must be total; missing `{}`",
                    self.carrier[i]
                )));
            }
        }
        self.unary.insert(op, table);
        Ok(())
    }

    pub fn with_binary(mut self, op: BinaryOp, table: Vec<Option<usize>>) -> Result<Self> {
        self.set_binary(op, table)?;
        Ok(self)
    }

    pub fn set_binary(&mut self, op: BinaryOp, table: Vec<Option<usize>>) -> Result<()> {
        let n = self.len();
        if table.len() != n * n {
            return Err(Error::input(format!("binary table `{op}` must have {} entries", n * n)));
        }
        if table.iter().flatten().any(|&v| v >= n) {
            return Err(Error::input(format!("binary table `{op}` names an unknown element")));
        }
        self.binary.insert(op, table);
        Ok(())
    }

    pub fn remove_binary(&mut self, op: BinaryOp) {
        self.binary.remove(&op);
    }

    pub fn remove_unary(&mut self, op: UnaryOp) {
        self.unary.remove(&op);
    }

    /// Drops one entry of a binary table, leaving it undefined.
    pub fn clear_binary_entry(&mut self, op: BinaryOp, a: usize, b: usize) -> Result<()> {
        let n = self.len();
        let t = self
            .binary
            .get_mut(&op)
            .ok_or_else(|| Error::UnknownSymbol(op.name().to_string()))?;
        t[a * n + b] = None;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn name(&self, i: usize) -> &str {
        &self.carrier[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown carrier element `{id}`")))
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Number of order pairs added by the reflexive-transitive closure.
    pub fn closure_added(&self) -> usize {
        self.closure_added
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.carrier.len() + b]
    }

    /// `a ≤ b` and `b ≤ a`.
    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.le(a, b) && self.le(b, a)
    }

    pub fn has_unary(&self, op: UnaryOp) -> bool {
        self.unary.contains_key(&op)
    }

    pub fn has_binary(&self, op: BinaryOp) -> bool {
        self.binary.contains_key(&op)
    }

    pub fn unary_table(&self, op: UnaryOp) -> Option<&[Option<usize>]> {
        self.unary.get(&op).map(Vec::as_slice)
    }

    pub fn binary_table(&self, op: BinaryOp) -> Option<&[Option<usize>]> {
        self.binary.get(&op).map(Vec::as_slice)
    }

    /// Strict application: undefined in, undefined out; a missing table is undefined.
    pub fn un(&self, op: UnaryOp, a: Option<usize>) -> Option<usize> {
        self.unary.get(&op).and_then(|t| t[a?])
    }

    pub fn bin(&self, op: BinaryOp, a: Option<usize>, b: Option<usize>) -> Option<usize> {
        let n = self.carrier.len();
        self.binary.get(&op).and_then(|t| t[a? * n + b?])
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| a == b || !self.equivalent(a, b)))
    }

    /// Least upper bound of `{a, b}` in the order, if unique up to equivalence.
    pub fn order_join(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let upper: Vec<usize> = (0..n).filter(|&y| self.le(a, y) && self.le(b, y)).collect();
        upper.iter().copied().find(|&g| upper.iter().all(|&y| self.le(g, y)))
    }

    pub fn order_meet(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.len();
        let lower: Vec<usize> = (0..n).filter(|&y| self.le(y, a) && self.le(y, b)).collect();
        lower.iter().copied().find(|&g| lower.iter().all(|&y| self.le(y, g)))
    }

    /// Every pair has a join and a meet in the order.
    pub fn is_lattice_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.order_join(a, b).is_some() && self.order_meet(a, b).is_some()))
    }

    pub fn is_total(&self, op: BinaryOp) -> bool {
        self.binary.get(&op).is_some_and(|t| t.iter().all(Option::is_some))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StructureDoc = serde_json::from_str(text)?;
        doc.build()
    }

    pub fn to_json(&self) -> Result<String> {
        let n = self.len();
        let mut leq = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.le(a, b) {
                    leq.push((self.carrier[a].clone(), self.carrier[b].clone()));
                }
            }
        }
        let unary = self
            .unary
            .iter()
            .map(|(op, t)| {
                let m = t
                    .iter()
                    .enumerate()
                    .filter_map(|(a, v)| {
                        v.map(|v| (self.carrier[a].clone(), serde_json::Value::String(self.carrier[v].clone())))
                    })
                    .collect();
                (op.name().to_string(), m)
            })
            .collect();
        let binary = self
            .binary
            .iter()
            .map(|(op, t)| {
                let mut m = serde_json::Map::new();
                for a in 0..n {
                    for b in 0..n {
                        if let Some(v) = t[a * n + b] {
                            m.insert(
                                format!("{}|{}", self.carrier[a], self.carrier[b]),
                                serde_json::Value::String(self.carrier[v].clone()),
                            );
                        }
                    }
                }
                (op.name().to_string(), m)
            })
            .collect();
        let doc = StructureOut {
            carrier: self.carrier.clone(),
            leq,
            constants: Constants { bot: self.carrier[self.bot].clone(), top: self.carrier[self.top].clone() },
            unary,
            binary,
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}

#[derive(Debug, Deserialize, Serialize)]
struct Constants {
    bot: String,
    top: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureDoc {
    carrier: Vec<String>,
    #[serde(default)]
    leq: Vec<(String, String)>,
    constants: Constants,
    #[serde(default)]
    unary: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    binary: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Serialize)]
struct StructureOut {
    carrier: Vec<String>,
    leq: Vec<(String, String)>,
    constants: Constants,
    unary: BTreeMap<String, serde_json::Map<String, serde_json::Value>>,
    binary: BTreeMap<String, serde_json::Map<String, serde_json::Value>>,
}

impl StructureDoc {
    fn build(self) -> Result<FiniteStructure> {
        let lookup = |carrier: &[String], id: &str| -> Result<usize> {
            carrier
                .iter()
                .position(|c| c == id)
                .ok_or_else(|| Error::input(format!("unknown carrier element `{id}`")))
        };
        let pairs = self
            .leq
            .iter()
            .map(|(a, b)| Ok((lookup(&self.carrier, a)?, lookup(&self.carrier, b)?)))
            .collect::<Result<Vec<_>>>()?;
        let bot = lookup(&self.carrier, &self.constants.bot)?;
        let top = lookup(&self.carrier, &self.constants.top)?;
        let mut s = FiniteStructure::new(self.carrier.clone(), &pairs, bot, top)?;
        let n = s.len();
        for (name, entries) in &self.unary {
            let op: UnaryOp = name.parse()?;
            let mut t = vec![None; n];
            for (k, v) in entries {
                t[s.index_of(k)?] = Some(s.index_of(v)?);
            }
            s.set_unary(op, t)?;
        }
        for (name, entries) in &self.binary {
            let op: BinaryOp = name.parse()?;
            let mut t = vec![None; n * n];
            for (k, v) in entries {
                let (a, b) = k
                    .split_once('|')
                    .ok_or_else(|| Error::input(format!("binary key `{k}` must look like `x|y`")))?;
                t[s.index_of(a.trim())? * n + s.index_of(b.trim())?] = Some(s.index_of(v)?);
            }
            s.set_binary(op, t)?;
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAMOND: &str = r#"{
        "carrier": ["0", "a", "b", "1"],
        "leq": [["0","a"], ["0","b"], ["a","1"], ["b","1"]],
        "constants": {"bot": "0", "top": "1"},
        "unary": {"ls": {"0":"0","a":"a","b":"b","1":"1"}},
        "binary": {"vee": {"a|b": "1", "0|a": "a"}}
    }"#;

    #[test]
    fn loads_and_closes_order() {
        let s = FiniteStructure::from_json(DIAMOND).unwrap();
        assert!(s.le(0, 3));
        // 4 reflexive pairs + 0 ≤ 1 from transitivity
        assert_eq!(s.closure_added(), 5);
        assert_eq!(s.bin(BinaryOp::Vee, Some(1), Some(2)), Some(3));
        assert_eq!(s.bin(BinaryOp::Vee, Some(2), Some(1)), None);
        assert!(s.is_antisymmetric());
        assert!(s.is_lattice_order());
    }

    #[test]
    fn json_round_trip() {
        let s = FiniteStructure::from_json(DIAMOND).unwrap();
        let back = FiniteStructure::from_json(&s.to_json().unwrap()).unwrap();
        assert_eq!(back.unary_table(UnaryOp::Ls), s.unary_table(UnaryOp::Ls));
        assert_eq!(back.binary_table(BinaryOp::Vee), s.binary_table(BinaryOp::Vee));
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(back.le(a, b), s.le(a, b));
            }
        }
    }

    #[test]
    fn rejects_bad_documents() {
        // approximation slots must be total
        let partial = DIAMOND.replace(r#""0":"0","a":"a","#, "");
        assert!(FiniteStructure::from_json(&partial).is_err());
        let unbounded = r#"{"carrier": ["0","1","x"], "leq": [["0","1"]],
            "constants": {"bot": "0", "top": "1"}}"#;
        assert!(FiniteStructure::from_json(unbounded).is_err());
        let bad_op = DIAMOND.replace("\"vee\"", "\"join\"");
        assert!(matches!(FiniteStructure::from_json(&bad_op), Err(Error::UnknownSymbol(_))));
        let bad_key = DIAMOND.replace("a|b", "a-b");
        assert!(FiniteStructure::from_json(&bad_key).is_err());
    }
}
