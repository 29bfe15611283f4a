//! Completing a corank-one free factor to a basis.

use super::{fold_generators, StallingsAutomaton};
use crate::error::{Error, Result};
use crate::graph::Folder;
use crate::words::{Letter, Word};

/// A witness that `⟨generators⟩` is a free factor of corank one, together
/// with the set `V z V ∪ V z⁻¹ V` of all words completing it to a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCompletion {
    pub generators: Vec<Word>,
    pub z: Word,
    factor: StallingsAutomaton,
}

impl BasisCompletion {
    /// Rational description of the completion set.
    pub fn expression(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let z = &self.z;
        let zi = z.invert();
        format!("V({z}|{zi})V where V = <{}>", gens.join(", "))
    }

    /// True when `x` lies in `V z V ∪ V z⁻¹ V`.
    pub fn contains(&self, x: &Word) -> bool {
        if x.rank() != self.z.rank() {
            return false;
        }
        let rank = self.z.rank();
        let mut f = Folder::new(rank);
        let offset = f.add_vertex();
        // Vertex 0 is the first copy's origin; vertex 1 the second's.
        let copies = [0, offset];
        let mut ids = [
            vec![0; self.factor.state_count()],
            vec![0; self.factor.state_count()],
        ];
        for (c, &root) in copies.iter().enumerate() {
            ids[c][0] = root;
            for id in ids[c].iter_mut().skip(1) {
                *id = f.add_vertex();
            }
            for (p, x, q) in self.factor.edges() {
                f.add_edge(ids[c][p], x as usize, ids[c][q]);
            }
        }
        let letters = self.z.letters();
        let mut v = 0;
        for (i, l) in letters.iter().enumerate() {
            let w = if i + 1 == letters.len() {
                offset
            } else {
                f.add_vertex()
            };
            f.add_edge(v, l.index(rank), w);
            v = w;
        }
        let (g, map) = f.finish_with_map();
        let (o1, o2) = (map[0], map[offset]);
        g.read(o1, x.letters()) == Some(o2) || g.read(o1, x.invert().letters()) == Some(o2)
    }
}

/// Searches for `z` with `⟨gens, z⟩` the whole free group of rank `m`.
///
/// Candidates are tried in a fixed order: first identifications of two states
/// `p < q` of the factor's automaton (`z = u_p u_q⁻¹`), then single new edges
/// `z = u_p x u_q⁻¹`, where `u_p` is the geodesic label of `p`.
pub fn basis_completion(gens: &[Word], m: usize) -> Result<Option<BasisCompletion>> {
    if m == 0 {
        return Err(Error::invalid("rank must be at least 1"));
    }
    if gens.len() + 1 != m {
        return Err(Error::invalid(format!(
            "expected {} generators for rank {m}, got {}",
            m - 1,
            gens.len()
        )));
    }
    let factor = fold_generators(m, gens)?;
    if factor.subgroup_rank() != m - 1 {
        return Ok(None);
    }
    let geo = factor.geodesics();
    let n = factor.state_count();
    let mut candidates = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            candidates.push(geo[p].mul_unchecked(&geo[q].invert()));
        }
    }
    for p in 0..n {
        for q in 0..n {
            for x in 0..m as u32 {
                let step = Word::reduce_unchecked([Letter::positive(x)], m);
                candidates.push(geo[p].mul_unchecked(&step).mul_unchecked(&geo[q].invert()));
            }
        }
    }
    for z in candidates {
        if z.is_identity() {
            continue;
        }
        let mut all = gens.to_vec();
        all.push(z.clone());
        if fold_generators(m, &all)?.is_bouquet() {
            return Ok(Some(BasisCompletion {
                generators: gens.to_vec(),
                z,
                factor,
            }));
        }
    }
    Ok(None)
}
