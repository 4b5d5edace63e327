//! Twisted Coxeter systems `(W, S, *)`: the Coxeter matrix together with a
//! diagram involution, plus the JSON file format and the named built-ins.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoxeterError, Result};
use crate::word::Gen;

/// Largest rank supported. Descent sets are stored as `u64` bitmasks.
pub const MAX_RANK: usize = 64;

/// The order `m(s, t)` of a product of two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    /// Decodes the file convention where `0` stands for infinity.
    pub fn from_file(value: u32) -> Order {
        if value == 0 {
            Order::Infinite
        } else {
            Order::Finite(value)
        }
    }

    pub fn to_file(self) -> u32 {
        match self {
            Order::Finite(m) => m,
            Order::Infinite => 0,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// A validated twisted Coxeter system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterSystem {
    rank: usize,
    orders: Vec<Order>,
    star: Vec<Gen>,
    name: Option<String>,
}

/// On-disk form: `{"rank": n, "matrix": [[..]], "star": [..]}` with `0` for infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub rank: usize,
    pub matrix: Vec<Vec<u32>>,
    pub star: Vec<usize>,
}

impl CoxeterSystem {
    /// Validates a Coxeter matrix and diagram involution.
    pub fn new(matrix: Vec<Vec<Order>>, star: Vec<usize>) -> Result<Self> {
        let rank = matrix.len();
        if rank == 0 {
            return Err(CoxeterError::InvalidMatrix("rank must be positive".into()));
        }
        if rank > MAX_RANK {
            return Err(CoxeterError::InvalidMatrix(format!(
                "rank {rank} exceeds the supported maximum {MAX_RANK}"
            )));
        }
        let mut orders = Vec::with_capacity(rank * rank);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(CoxeterError::InvalidMatrix(format!(
                    "row {i} has length {}, expected {rank}",
                    row.len()
                )));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j && m != Order::Finite(1) {
                    return Err(CoxeterError::InvalidMatrix(format!("diagonal entry ({i},{i}) must be 1")));
                }
                if i != j {
                    if let Order::Finite(v) = m {
                        if v < 2 {
                            return Err(CoxeterError::InvalidMatrix(format!(
                                "off-diagonal entry ({i},{j}) must be at least 2"
                            )));
                        }
                    }
                    if matrix[j][i] != m {
                        return Err(CoxeterError::InvalidMatrix(format!(
                            "entries ({i},{j}) and ({j},{i}) differ"
                        )));
                    }
                }
                orders.push(m);
            }
        }
        if star.len() != rank {
            return Err(CoxeterError::InvalidStar(format!("expected {rank} images, got {}", star.len())));
        }
        for (i, &si) in star.iter().enumerate() {
            if si >= rank {
                return Err(CoxeterError::InvalidStar(format!("image {si} out of range")));
            }
            if star[si] != i {
                return Err(CoxeterError::InvalidStar(format!("not an involution at generator {i}")));
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if orders[i * rank + j] != orders[star[i] * rank + star[j]] {
                    return Err(CoxeterError::InvalidStar(format!("m({i},{j}) is not preserved")));
                }
            }
        }
        Ok(CoxeterSystem { rank, orders, star: star.into_iter().map(|s| s as Gen).collect(), name: None })
    }

    pub fn from_file(file: &SystemFile) -> Result<Self> {
        if file.matrix.len() != file.rank {
            return Err(CoxeterError::InvalidMatrix(format!(
                "declared rank {} but matrix has {} rows",
                file.rank,
                file.matrix.len()
            )));
        }
        let matrix =
            file.matrix.iter().map(|row| row.iter().map(|&v| Order::from_file(v)).collect()).collect();
        CoxeterSystem::new(matrix, file.star.clone())
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            rank: self.rank,
            matrix: (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.orders[i * self.rank + j].to_file()).collect())
                .collect(),
            star: self.star.iter().map(|&s| s as usize).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text).map_err(|e| CoxeterError::Parse(e.to_string()))?;
        CoxeterSystem::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("system file serializes")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> {
        0..self.rank as Gen
    }

    pub fn m(&self, s: Gen, t: Gen) -> Order {
        self.orders[s as usize * self.rank + t as usize]
    }

    pub fn star(&self, s: Gen) -> Gen {
        self.star[s as usize]
    }

    pub fn star_is_identity(&self) -> bool {
        self.star.iter().enumerate().all(|(i, &s)| i == s as usize)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn check_gen(&self, s: usize) -> Result<Gen> {
        if s < self.rank {
            Ok(s as Gen)
        } else {
            Err(CoxeterError::GeneratorOutOfRange { gen: s, rank: self.rank })
        }
    }

    /// Type `A_n`: the symmetric group on `n + 1` letters, `* = id`.
    pub fn type_a(n: usize) -> Result<Self> {
        Self::new(path_matrix(n, &vec![3; n.saturating_sub(1)]), (0..n).collect())
            .map(|s| s.with_name(format!("A{n}")))
    }

    /// Type `²A_n`: `A_n` with `s_i* = s_{n+1-i}`.
    pub fn twisted_a(n: usize) -> Result<Self> {
        Self::new(path_matrix(n, &vec![3; n.saturating_sub(1)]), (0..n).rev().collect())
            .map(|s| s.with_name(format!("2A{n}")))
    }

    /// `BC_3` with generator 0 at the end of the 4-labelled edge.
    pub fn bc3() -> Self {
        Self::new(path_matrix(3, &[4, 3]), vec![0, 1, 2]).expect("BC3 is valid").with_name("BC3")
    }

    /// `D_4` with generator 1 as the branch node.
    pub fn d4() -> Self {
        let f = Order::Finite;
        let mut m = vec![vec![f(2); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = f(1);
        }
        for leaf in [0usize, 2, 3] {
            m[leaf][1] = f(3);
            m[1][leaf] = f(3);
        }
        Self::new(m, vec![0, 1, 2, 3]).expect("D4 is valid").with_name("D4")
    }

    /// `H_3` with generator 0 at the end of the 5-labelled edge.
    pub fn h3() -> Self {
        Self::new(path_matrix(3, &[5, 3]), vec![0, 1, 2]).expect("H3 is valid").with_name("H3")
    }

    /// Dihedral type `I_2(n)`, `* = id`.
    pub fn dihedral(n: Order) -> Result<Self> {
        Self::new(dihedral_matrix(n)?, vec![0, 1]).map(|s| s.with_name(format!("I2({n})")))
    }

    /// Dihedral type `²I_2(n)` where `*` swaps the two generators.
    pub fn twisted_dihedral(n: Order) -> Result<Self> {
        Self::new(dihedral_matrix(n)?, vec![1, 0]).map(|s| s.with_name(format!("2I2({n})")))
    }

    /// Affine type `Ã_n` (the affine symmetric group on `n + 1` letters), `* = id`.
    pub fn affine_a(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(CoxeterError::InvalidMatrix("affine rank must be at least 1".into()));
        }
        let rank = n + 1;
        let f = Order::Finite;
        let mut m = vec![vec![f(2); rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = f(1);
        }
        if rank == 2 {
            m[0][1] = Order::Infinite;
            m[1][0] = Order::Infinite;
        } else {
            for i in 0..rank {
                let j = (i + 1) % rank;
                m[i][j] = f(3);
                m[j][i] = f(3);
            }
        }
        Self::new(m, (0..rank).collect()).map(|s| s.with_name(format!("affA{n}")))
    }

    /// Resolves a registry name such as `A3`, `2A3`, `BC3`, `D4`, `H3`,
    /// `I2(5)`, `2I2(4)` or `affA2`.
    pub fn named(name: &str) -> Result<Self> {
        let unknown = || CoxeterError::UnknownSystem(name.to_string());
        let parse_n = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        let parse_order = |s: &str| -> Result<Order> {
            let inner = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(unknown)?;
            match inner {
                "inf" | "0" => Ok(Order::Infinite),
                v => v.parse::<u32>().map(Order::Finite).map_err(|_| unknown()),
            }
        };
        match name {
            "BC3" => Ok(Self::bc3()),
            "D4" => Ok(Self::d4()),
            "H3" => Ok(Self::h3()),
            _ => {
                if let Some(rest) = name.strip_prefix("2I2") {
                    Self::twisted_dihedral(parse_order(rest)?)
                } else if let Some(rest) = name.strip_prefix("I2") {
                    Self::dihedral(parse_order(rest)?)
                } else if let Some(rest) = name.strip_prefix("affA") {
                    Self::affine_a(parse_n(rest)?)
                } else if let Some(rest) = name.strip_prefix("2A") {
                    let n = parse_n(rest)?;
                    if n == 0 {
                        return Err(unknown());
                    }
                    Self::twisted_a(n)
                } else if let Some(rest) = name.strip_prefix('A') {
                    let n = parse_n(rest)?;
                    if n == 0 {
                        return Err(unknown());
                    }
                    Self::type_a(n)
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

fn path_matrix(n: usize, labels: &[u32]) -> Vec<Vec<Order>> {
    let mut m = vec![vec![Order::Finite(2); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Order::Finite(1);
    }
    for (i, &label) in labels.iter().enumerate() {
        m[i][i + 1] = Order::Finite(label);
        m[i + 1][i] = Order::Finite(label);
    }
    m
}

fn dihedral_matrix(n: Order) -> Result<Vec<Vec<Order>>> {
    if let Order::Finite(v) = n {
        if v < 2 {
            return Err(CoxeterError::InvalidMatrix(format!("dihedral order {v} < 2")));
        }
    }
    Ok(vec![vec![Order::Finite(1), n], vec![n, Order::Finite(1)]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: u32) -> Order {
        Order::Finite(v)
    }

    #[test]
    fn rank_one_system() {
        let sys = CoxeterSystem::new(vec![vec![f(1)]], vec![0]).unwrap();
        assert_eq!(sys.rank(), 1);
        assert!(sys.star_is_identity());
    }

    #[test]
    fn twisted_a3_star_reverses() {
        let sys = CoxeterSystem::twisted_a(3).unwrap();
        assert_eq!(sys.star(0), 2);
        assert_eq!(sys.star(1), 1);
        assert_eq!(sys.star(2), 0);
    }

    #[test]
    fn a2_swap_is_accepted() {
        let m = vec![vec![f(1), f(3)], vec![f(3), f(1)]];
        assert!(CoxeterSystem::new(m, vec![1, 0]).is_ok());
    }

    #[test]
    fn rejects_bad_matrices() {
        let asym = vec![vec![f(1), f(3)], vec![f(4), f(1)]];
        assert!(matches!(CoxeterSystem::new(asym, vec![0, 1]), Err(CoxeterError::InvalidMatrix(_))));
        let diag = vec![vec![f(2), f(3)], vec![f(3), f(1)]];
        assert!(matches!(CoxeterSystem::new(diag, vec![0, 1]), Err(CoxeterError::InvalidMatrix(_))));
        let one = vec![vec![f(1), f(1)], vec![f(1), f(1)]];
        assert!(matches!(CoxeterSystem::new(one, vec![0, 1]), Err(CoxeterError::InvalidMatrix(_))));
    }

    #[test]
    fn rejects_bad_stars() {
        let m = path_matrix(3, &[4, 3]);
        // swapping the ends of BC3 does not preserve the matrix
        assert!(matches!(CoxeterSystem::new(m.clone(), vec![2, 1, 0]), Err(CoxeterError::InvalidStar(_))));
        // a 3-cycle is not an involution
        assert!(matches!(CoxeterSystem::new(m, vec![1, 2, 0]), Err(CoxeterError::InvalidStar(_))));
    }

    #[test]
    fn infinity_is_zero_in_files() {
        let sys = CoxeterSystem::affine_a(1).unwrap();
        let file = sys.to_file();
        assert_eq!(file.matrix[0][1], 0);
        let back = CoxeterSystem::from_json(&sys.to_json()).unwrap();
        assert_eq!(back.m(0, 1), Order::Infinite);
    }

    #[test]
    fn named_systems() {
        for (name, rank) in [
            ("A1", 1),
            ("A3", 3),
            ("2A3", 3),
            ("BC3", 3),
            ("D4", 4),
            ("H3", 3),
            ("I2(5)", 2),
            ("2I2(4)", 2),
            ("I2(inf)", 2),
            ("affA2", 3),
        ] {
            let sys = CoxeterSystem::named(name).unwrap();
            assert_eq!(sys.rank(), rank, "{name}");
            assert_eq!(sys.name(), Some(name).filter(|n| *n != "I2(inf)").or(sys.name()));
        }
        assert!(CoxeterSystem::named("E8").is_err());
        assert!(CoxeterSystem::named("A0").is_err());
        assert!(CoxeterSystem::named("I2(1)").is_err());
    }

    #[test]
    fn affine_cycle() {
        let sys = CoxeterSystem::affine_a(2).unwrap();
        assert_eq!(sys.m(0, 2), f(3));
        assert_eq!(sys.m(0, 1), f(3));
        let sys = CoxeterSystem::affine_a(3).unwrap();
        assert_eq!(sys.m(0, 3), f(3));
        assert_eq!(sys.m(0, 2), f(2));
    }
}
