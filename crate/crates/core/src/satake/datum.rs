//! Split root data given by Weyl reflections on the character lattice `Z^n`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer matrix, row-major, acting on column vectors.
pub type IMatrix = Vec<Vec<i64>>;

/// Exponent vector of a Laurent monomial `z^m`.
pub type Monomial = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    pub rank: usize,
    pub reflections: Vec<IMatrix>,
    pub simply_connected: bool,
    pub q: u64,
    pub preset: Option<String>,
    /// All of `W`, identity first, in breadth-first order over the generators.
    weyl: Vec<IMatrix>,
}

/// On-disk root datum. A `preset` supplies the reflections when they are omitted.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    #[serde(default)]
    pub rank: Option<usize>,
    #[serde(default)]
    pub reflections: Option<Vec<IMatrix>>,
    #[serde(default = "default_sc")]
    pub simply_connected: bool,
    #[serde(default = "default_q")]
    pub q: u64,
    #[serde(default)]
    pub preset: Option<String>,
}

fn default_sc() -> bool {
    true
}

fn default_q() -> u64 {
    2
}

/// Reflections for the shipped presets, on the root lattice.
pub fn preset(name: &str) -> Result<Vec<IMatrix>> {
    Ok(match name {
        "A1" => vec![vec![vec![-1]]],
        "A1xA1" => vec![vec![vec![-1, 0], vec![0, 1]], vec![vec![1, 0], vec![0, -1]]],
        "A2" => vec![vec![vec![-1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, -1]]],
        "B2" => vec![vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, -1]]],
        other => return Err(Error::Malformed(format!("unknown root datum preset {other:?}"))),
    })
}

pub fn mat_mul(a: &IMatrix, b: &IMatrix) -> IMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn mat_vec(a: &IMatrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn identity(n: usize) -> IMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn det(a: &IMatrix) -> i64 {
    let n = a.len();
    if n == 1 {
        return a[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: IMatrix = (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| a[i][c]).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * a[0][j] * det(&minor)
        })
        .sum()
}

impl RootDatum {
    pub fn new(reflections: Vec<IMatrix>, simply_connected: bool, q: u64, weyl_cap: usize) -> Result<Self> {
        let rank = reflections.first().map(|m| m.len()).unwrap_or(0);
        if rank == 0 {
            return Err(Error::Malformed("root datum needs at least one reflection".into()));
        }
        if q == 0 {
            return Err(Error::Malformed("q must be positive".into()));
        }
        let id = identity(rank);
        for r in &reflections {
            if r.len() != rank || r.iter().any(|row| row.len() != rank) {
                return Err(Error::Malformed("reflection matrices must be rank x rank".into()));
            }
            if det(r).abs() != 1 {
                return Err(Error::Malformed("reflection is not invertible over Z".into()));
            }
            let mut p = r.clone();
            let mut order = 1;
            while p != id {
                p = mat_mul(&p, r);
                order += 1;
                if order > 12 {
                    return Err(Error::Malformed("generator does not have finite order".into()));
                }
            }
        }
        let mut weyl = vec![id.clone()];
        let mut seen: HashMap<IMatrix, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for r in &reflections {
                let w = mat_mul(&weyl[i], r);
                if !seen.contains_key(&w) {
                    if weyl.len() >= weyl_cap {
                        return Err(Error::CapExceeded { what: "Weyl group order", value: weyl.len() + 1, cap: weyl_cap });
                    }
                    seen.insert(w.clone(), weyl.len());
                    queue.push_back(weyl.len());
                    weyl.push(w);
                }
            }
        }
        Ok(RootDatum { rank, reflections, simply_connected, q, preset: None, weyl })
    }

    pub fn preset(name: &str, weyl_cap: usize) -> Result<Self> {
        let mut d = Self::new(preset(name)?, true, 2, weyl_cap)?;
        d.preset = Some(name.to_string());
        Ok(d)
    }

    pub fn from_file(f: &DatumFile, weyl_cap: usize) -> Result<Self> {
        let reflections = match (&f.reflections, &f.preset) {
            (Some(r), _) => r.clone(),
            (None, Some(p)) => preset(p)?,
            (None, None) => return Err(Error::Malformed("root datum needs reflections or a preset".into())),
        };
        let mut d = Self::new(reflections, f.simply_connected, f.q, weyl_cap)?;
        if let Some(r) = f.rank {
            if r != d.rank {
                return Err(Error::Malformed(format!("declared rank {r} does not match reflections ({})", d.rank)));
            }
        }
        d.preset = f.preset.clone();
        Ok(d)
    }

    pub fn to_file(&self) -> DatumFile {
        DatumFile {
            rank: Some(self.rank),
            reflections: Some(self.reflections.clone()),
            simply_connected: self.simply_connected,
            q: self.q,
            preset: self.preset.clone(),
        }
    }

    pub fn weyl(&self) -> &[IMatrix] {
        &self.weyl
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    /// Every reflection is diagonal, so `W` is a product of sign changes.
    pub fn is_product_of_rank_one(&self) -> bool {
        self.reflections.iter().all(|r| (0..self.rank).all(|i| (0..self.rank).all(|j| i == j || r[i][j] == 0)))
    }

    /// The `W`-orbit of a monomial with its lexicographically minimal member as label.
    pub fn weyl_orbit(&self, m: &[i64]) -> OrbitSum {
        let orbit: BTreeSet<Monomial> = self.weyl.iter().map(|w| mat_vec(w, m)).collect();
        let label = orbit.iter().next().unwrap().clone();
        OrbitSum { orbit: orbit.into_iter().collect(), label }
    }
}

/// A `W`-orbit of monomials; its sum is a basis element of the invariant ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitSum {
    pub orbit: Vec<Monomial>,
    pub label: Monomial,
}
