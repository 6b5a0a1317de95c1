use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientDoc {
    pub id: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDoc {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub contained_in: Vec<String>,
}

/// On-disk form of an arrangement. Containment may be given as any DAG whose
/// transitive closure is the intended order; every stratum lies in the ambient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementDoc {
    pub ambient: AmbientDoc,
    pub strata: Vec<StratumDoc>,
    pub building: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<BTreeMap<String, Vec<String>>>,
}

/// A validated arrangement with its building set. Stratum 0 is the ambient.
#[derive(Clone, Debug)]
pub struct Arrangement {
    ids: Vec<String>,
    dims: Vec<usize>,
    index: HashMap<String, usize>,
    // le[a][b]: stratum a is contained in stratum b
    le: Vec<Vec<bool>>,
    meet: Vec<Vec<Option<usize>>>,
    building: Vec<usize>,
    is_building: Vec<bool>,
    factors: Vec<Vec<usize>>,
    doc: ArrangementDoc,
}

fn arr_err(msg: String) -> Error {
    Error::Arrangement(msg)
}

fn find(index: &HashMap<String, usize>, id: &str) -> Result<usize> {
    index
        .get(id)
        .copied()
        .ok_or_else(|| arr_err(format!("unknown stratum id {id:?}")))
}

impl Arrangement {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ArrangementDoc = serde_json::from_str(text)?;
        Self::from_document(doc)
    }

    pub fn from_document(doc: ArrangementDoc) -> Result<Self> {
        let mut ids = vec![doc.ambient.id.clone()];
        let mut dims = vec![doc.ambient.dim];
        let mut index = HashMap::from([(doc.ambient.id.clone(), 0)]);
        for s in &doc.strata {
            if index.insert(s.id.clone(), ids.len()).is_some() {
                return Err(arr_err(format!("duplicate stratum id {:?}", s.id)));
            }
            ids.push(s.id.clone());
            dims.push(s.dim);
        }
        let m = ids.len();

        // immediate containments, then closure
        let mut up: Vec<Vec<usize>> = vec![vec![]; m];
        for (a, s) in doc.strata.iter().enumerate() {
            let a = a + 1;
            up[a].push(0);
            for p in &s.contained_in {
                let b = find(&index, p)?;
                if b == a {
                    return Err(arr_err(format!("stratum {:?} is listed inside itself", s.id)));
                }
                up[a].push(b);
            }
        }
        let mut le = vec![vec![false; m]; m];
        for a in 0..m {
            let mut stack = vec![a];
            while let Some(x) = stack.pop() {
                if !le[a][x] {
                    le[a][x] = true;
                    stack.extend(&up[x]);
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                if a != b && le[a][b] {
                    if le[b][a] {
                        return Err(arr_err(format!(
                            "containment cycle through {:?} and {:?}",
                            ids[a], ids[b]
                        )));
                    }
                    if dims[a] >= dims[b] {
                        return Err(arr_err(format!(
                            "{:?} (dim {}) lies in {:?} (dim {}) but dimension does not drop",
                            ids[a], dims[a], ids[b], dims[b]
                        )));
                    }
                }
            }
        }

        // pairwise meets: the greatest common lower bound, if any
        let mut meet = vec![vec![None; m]; m];
        for a in 0..m {
            for b in a..m {
                let lower: Vec<usize> = (0..m).filter(|&c| le[c][a] && le[c][b]).collect();
                let greatest: Vec<usize> = lower
                    .iter()
                    .copied()
                    .filter(|&c| lower.iter().all(|&l| le[l][c]))
                    .collect();
                let g = match (lower.is_empty(), greatest.as_slice()) {
                    (true, _) => None,
                    (false, [g]) => Some(*g),
                    _ => {
                        return Err(arr_err(format!(
                            "{:?} and {:?} have no unique intersection among the strata",
                            ids[a], ids[b]
                        )))
                    }
                };
                meet[a][b] = g;
                meet[b][a] = g;
            }
        }

        let mut is_building = vec![false; m];
        let mut building = Vec::new();
        for id in &doc.building {
            let g = find(&index, id)?;
            if g == 0 {
                return Err(arr_err(format!("the ambient {id:?} cannot be a building element")));
            }
            if is_building[g] {
                return Err(arr_err(format!("{id:?} listed twice in the building set")));
            }
            is_building[g] = true;
            building.push(g);
        }
        building.sort_unstable();

        let mut arr = Arrangement {
            ids,
            dims,
            index,
            le,
            meet,
            building,
            is_building,
            factors: vec![],
            doc: doc.clone(),
        };

        // factors: the minimal building elements containing each stratum
        let factors: Vec<Vec<usize>> = (0..m)
            .map(|s| {
                let above: Vec<usize> = arr.building.iter().copied().filter(|&g| arr.le[s][g]).collect();
                above
                    .iter()
                    .copied()
                    .filter(|&g| !above.iter().any(|&h| h != g && arr.le[h][g]))
                    .collect()
            })
            .collect();
        for (s, fs) in factors.iter().enumerate() {
            let ambient_dim = arr.dims[0];
            let meet = arr.meet_of(fs.iter().copied());
            if meet != Some(s) {
                return Err(arr_err(format!(
                    "building factors {:?} of {:?} do not intersect in it",
                    arr.names(fs),
                    arr.ids[s]
                )));
            }
            let codims: usize = fs.iter().map(|&g| ambient_dim - arr.dims[g]).sum();
            if codims != ambient_dim - arr.dims[s] {
                return Err(arr_err(format!(
                    "codimensions of factors {:?} of {:?} sum to {codims}, not {}",
                    arr.names(fs),
                    arr.ids[s],
                    ambient_dim - arr.dims[s]
                )));
            }
        }
        if let Some(given) = &doc.factors {
            for (id, fs) in given {
                let s = arr.lookup(id)?;
                let mut want = fs.iter().map(|f| arr.lookup(f)).collect::<Result<Vec<_>>>()?;
                want.sort_unstable();
                if want != factors[s] {
                    return Err(arr_err(format!(
                        "factors given for {id:?} are {fs:?}, but the order implies {:?}",
                        arr.names(&factors[s])
                    )));
                }
            }
        }
        arr.factors = factors;
        Ok(arr)
    }

    pub fn document(&self) -> &ArrangementDoc {
        &self.doc
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.doc)?)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ambient(&self) -> usize {
        0
    }

    pub fn id(&self, s: usize) -> &str {
        &self.ids[s]
    }

    pub fn dim(&self, s: usize) -> usize {
        self.dims[s]
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        find(&self.index, id)
    }

    pub fn contained(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn strictly_contained(&self, a: usize, b: usize) -> bool {
        a != b && self.le[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet[a][b]
    }

    /// Intersection of a family of strata; the ambient for an empty family,
    /// `None` when the intersection is empty.
    pub fn meet_of(&self, strata: impl IntoIterator<Item = usize>) -> Option<usize> {
        strata.into_iter().try_fold(0, |acc, s| self.meet[acc][s])
    }

    pub fn building(&self) -> &[usize] {
        &self.building
    }

    pub fn is_building(&self, s: usize) -> bool {
        self.is_building[s]
    }

    pub fn factors(&self, s: usize) -> &[usize] {
        &self.factors[s]
    }

    pub fn names(&self, strata: &[usize]) -> Vec<&str> {
        strata.iter().map(|&s| self.ids[s].as_str()).collect()
    }
}
