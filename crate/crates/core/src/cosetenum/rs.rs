use super::{smith_diagonal, CosetTable};
use crate::surface::{Letter, Word};
use crate::{Error, Result};

/// A presentation of a finite-index subgroup on its Schreier generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupPresentation {
    pub ambient_rank: usize,
    pub index: usize,
    /// Each Schreier generator as a word in the ambient generators.
    pub generators: Vec<Word>,
    /// Relators as words in the Schreier generators.
    pub relators: Vec<Word>,
}

impl SubgroupPresentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    /// `n(g-1)+1` for a surface ambient group of genus `g`.
    pub fn predicted_genus(&self) -> usize {
        self.index * (self.ambient_rank / 2 - 1) + 1
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, w) in self.generators.iter().enumerate() {
            s.push_str(&format!("s{} = {}\n", i + 1, w));
        }
        for w in &self.relators {
            s.push_str(&w.display_with(|j| format!("s{}", j + 1)));
            s.push('\n');
        }
        s
    }
}

/// Rewrites each relator at every coset, over the Schreier generators
/// `t_c·x_j·t_{c·x_j}⁻¹` of a breadth-first transversal, dropping the
/// `n-1` tree edges.
pub fn reidemeister_schreier(table: &CosetTable, relators: &[Word]) -> Result<SubgroupPresentation> {
    let n = table.index();
    let rank = table.rank();
    if table.rows.iter().flatten().any(|&x| x == super::UNDEF) {
        return Err(Error::NotClosed);
    }
    let tree = table.schreier_tree();
    let t = table.transversal();
    // id of generator (c, j), or None on a tree edge
    let mut id: Vec<Option<usize>> = vec![None; n * rank];
    let mut generators = Vec::new();
    for c in 0..n {
        for j in 0..rank {
            let d = table.act(c, Letter::new(j, false));
            let tree_edge = tree[d] == Some((c, Letter::new(j, false))) || tree[c] == Some((d, Letter::new(j, true)));
            if !tree_edge {
                id[c * rank + j] = Some(generators.len());
                generators.push(t[c].mul(&Word::generator(j)).mul(&t[d].inverse()));
            }
        }
    }
    let mut out = Vec::new();
    for c in 0..n {
        for r in relators {
            let mut letters = Vec::new();
            let mut cur = c;
            for &l in r.letters() {
                let j = l.gen as usize;
                if l.inv {
                    let prev = table.act(cur, l);
                    if let Some(s) = id[prev * rank + j] {
                        letters.push(Letter::new(s, true));
                    }
                    cur = prev;
                } else {
                    if let Some(s) = id[cur * rank + j] {
                        letters.push(Letter::new(s, false));
                    }
                    cur = table.act(cur, l);
                }
            }
            out.push(Word::from_letters(letters));
        }
    }
    Ok(SubgroupPresentation { ambient_rank: rank, index: n, generators, relators: out })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    /// Elementary divisors greater than 1.
    pub torsion: Vec<u64>,
}

pub fn abelianization_invariants(sp: &SubgroupPresentation) -> Abelianization {
    let k = sp.generator_count();
    let m: Vec<Vec<i64>> = sp.relators.iter().map(|w| w.exponent_sums(k)).collect();
    let diag = smith_diagonal(&m, k);
    Abelianization { free_rank: k - diag.len(), torsion: diag.into_iter().filter(|&d| d > 1).collect() }
}
