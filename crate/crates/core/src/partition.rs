//! Labeled k-partitions of a vertex set and their CSV form.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Every vertex carries one label in `0..k`. Clusters may be empty; callers
/// that cannot score empty clusters check [`Partition::empty_clusters`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

#[derive(Serialize, Deserialize)]
struct Row {
    vertex: usize,
    cluster: usize,
}

impl Partition {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::InvalidParameter(format!(
                "label {bad} outside 0..{k}"
            )));
        }
        Ok(Partition { labels, k })
    }

    /// `k` is one more than the largest label.
    pub fn from_labels(labels: Vec<usize>) -> Self {
        let k = labels.iter().max().map_or(0, |m| m + 1);
        Partition { labels, k }
    }

    /// Builds a partition from explicit clusters over `0..n`.
    pub fn from_clusters(n: usize, clusters: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (c, members) in clusters.iter().enumerate() {
            for &u in members {
                if u >= n {
                    return Err(Error::VertexOutOfRange { vertex: u, n });
                }
                if labels[u] != usize::MAX {
                    return Err(Error::InvalidParameter(format!(
                        "vertex {u} assigned to more than one cluster"
                    )));
                }
                labels[u] = c;
            }
        }
        if let Some(u) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidParameter(format!(
                "vertex {u} is not covered by any cluster"
            )));
        }
        Ok(Partition {
            labels,
            k: clusters.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, u: usize) -> usize {
        self.labels[u]
    }

    /// Members of each cluster in increasing vertex order.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (u, &l) in self.labels.iter().enumerate() {
            out[l].push(u);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    pub fn empty_clusters(&self) -> Vec<usize> {
        self.sizes()
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 0)
            .map(|(c, _)| c)
            .collect()
    }

    /// Writes `vertex,cluster` rows in vertex order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for (vertex, &cluster) in self.labels.iter().enumerate() {
            w.serialize(Row { vertex, cluster })?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a `vertex,cluster` CSV. Rows may come in any order but must name
    /// every vertex in `0..rows` exactly once.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(input);
        let headers = rdr.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "vertex" || &headers[1] != "cluster" {
            return Err(Error::Parse {
                line: 1,
                message: "expected header \"vertex,cluster\"".into(),
            });
        }
        let mut rows = Vec::new();
        for (idx, rec) in rdr.deserialize::<Row>().enumerate() {
            let row = rec.map_err(|e| Error::Parse {
                line: idx + 2,
                message: e.to_string(),
            })?;
            rows.push(row);
        }
        let n = rows.len();
        let mut labels = vec![usize::MAX; n];
        for (idx, row) in rows.iter().enumerate() {
            if row.vertex >= n {
                return Err(Error::Parse {
                    line: idx + 2,
                    message: format!("vertex {} outside 0..{n}", row.vertex),
                });
            }
            if labels[row.vertex] != usize::MAX {
                return Err(Error::Parse {
                    line: idx + 2,
                    message: format!("vertex {} listed twice", row.vertex),
                });
            }
            labels[row.vertex] = row.cluster;
        }
        Ok(Self::from_labels(labels))
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_csv(std::fs::File::open(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clusters_and_sizes() {
        let p = Partition::new(vec![1, 0, 1, 1], 3).unwrap();
        assert_eq!(p.clusters(), vec![vec![1], vec![0, 2, 3], vec![]]);
        assert_eq!(p.sizes(), vec![1, 3, 0]);
        assert_eq!(p.empty_clusters(), vec![2]);
        assert!(Partition::new(vec![0, 3], 3).is_err());
    }

    #[test]
    fn from_clusters_requires_exact_cover() {
        let p = Partition::from_clusters(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(p.labels(), &[0, 0, 1, 1]);
        assert!(Partition::from_clusters(4, &[vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(Partition::from_clusters(4, &[vec![0, 1], vec![2]]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let p = Partition::new(vec![2, 0, 1, 1, 0], 3).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("vertex,cluster\n0,2\n"));
        assert_eq!(Partition::read_csv(buf.as_slice()).unwrap(), p);
    }

    #[test]
    fn csv_accepts_unordered_rows() {
        let p = Partition::read_csv("vertex,cluster\n1,0\n0,1\n".as_bytes()).unwrap();
        assert_eq!(p.labels(), &[1, 0]);
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(Partition::read_csv("v,c\n0,0\n".as_bytes()).is_err());
        assert!(Partition::read_csv("vertex,cluster\n0,0\n0,1\n".as_bytes()).is_err());
        assert!(Partition::read_csv("vertex,cluster\n0,0\n5,1\n".as_bytes()).is_err());
        assert!(Partition::read_csv("vertex,cluster\n0,x\n".as_bytes()).is_err());
    }
}
