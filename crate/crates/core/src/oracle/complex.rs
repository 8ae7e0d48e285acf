use crate::algebra::{Field, MonomialIdeal};
use crate::error::{BudgetKind, Error, Result};

/// Largest vertex set the homology routines accept.
pub const MAX_SUPPORT: usize = 22;

/// Stanley-Reisner complex of a squarefree monomial ideal, stored through
/// its minimal nonfaces. Vertices are bit positions `0..nverts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    nverts: usize,
    nonfaces: Vec<u32>,
}

impl SimplicialComplex {
    pub fn new(nverts: usize, nonfaces: Vec<u32>) -> Result<Self> {
        if nverts > MAX_SUPPORT {
            return Err(Error::budget(
                BudgetKind::Support,
                format!("{nverts} vertices, at most {MAX_SUPPORT}"),
            ));
        }
        Ok(SimplicialComplex { nverts, nonfaces })
    }

    /// Complex of a squarefree ideal on its support, together with the map
    /// from complex vertices back to ring variables.
    pub fn from_ideal(ideal: &MonomialIdeal) -> Result<(Self, Vec<usize>)> {
        if !ideal.is_squarefree() {
            return Err(Error::precondition("Stanley-Reisner complex needs a squarefree ideal"));
        }
        let support = ideal.support();
        let vars: Vec<usize> = (0..64).filter(|&i| support >> i & 1 == 1).collect();
        if vars.len() > MAX_SUPPORT {
            return Err(Error::budget(
                BudgetKind::Support,
                format!("{} variables in the support, at most {MAX_SUPPORT}", vars.len()),
            ));
        }
        let compact = |m: u64| -> u32 {
            vars.iter().enumerate().filter(|(_, &v)| m >> v & 1 == 1).fold(0, |a, (k, _)| a | 1 << k)
        };
        let nonfaces = ideal.gens.iter().map(|g| compact(g.support())).collect();
        Ok((SimplicialComplex { nverts: vars.len(), nonfaces }, vars))
    }

    /// The full simplex: no nonfaces.
    pub fn simplex(nverts: usize) -> Result<Self> {
        Self::new(nverts, Vec::new())
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn nonfaces(&self) -> &[u32] {
        &self.nonfaces
    }

    pub fn vertex_mask(&self) -> u32 {
        if self.nverts == 32 {
            u32::MAX
        } else {
            (1 << self.nverts) - 1
        }
    }

    pub fn is_face(&self, s: u32) -> bool {
        self.nonfaces.iter().all(|&g| g & !s != 0)
    }

    /// Whether the complex has no faces at all (the unit ideal).
    pub fn is_void(&self) -> bool {
        !self.is_face(0)
    }

    /// Nonfaces inside `sigma`.
    pub(crate) fn nonfaces_within(&self, sigma: u32) -> Vec<u32> {
        self.nonfaces.iter().copied().filter(|&g| g & !sigma == 0).collect()
    }

    /// Faces of `Δ|σ` grouped by size, for sizes `0..=max_size`.
    pub fn faces_within(&self, sigma: u32, max_size: usize) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); max_size + 1];
        if self.is_void() {
            return out;
        }
        let local = self.nonfaces_within(sigma);
        let verts: Vec<u32> = (0..32).filter(|&v| sigma >> v & 1 == 1).collect();
        fn go(verts: &[u32], start: usize, face: u32, size: usize, local: &[u32], out: &mut Vec<Vec<u32>>) {
            out[size].push(face);
            if size + 1 >= out.len() {
                return;
            }
            for k in start..verts.len() {
                let f = face | 1 << verts[k];
                if local.iter().all(|&g| g & !f != 0) {
                    go(verts, k + 1, f, size + 1, local, out);
                }
            }
        }
        go(&verts, 0, 0, 0, &local, &mut out);
        for level in &mut out {
            level.sort_unstable();
        }
        out
    }

    /// `dim H̃_d(Δ|σ; F)` for a single `d ≥ −1`.
    pub fn reduced_homology_dim<F: Field>(&self, sigma: u32, d: i64) -> usize {
        if d < -1 || self.is_void() {
            return 0;
        }
        let s = (d + 1) as usize;
        let faces = self.faces_within(sigma, s + 1);
        let f = faces[s].len();
        if f == 0 {
            return 0;
        }
        f - boundary_rank::<F>(&faces[s], &faces[s - s.min(1)], s) - boundary_rank::<F>(&faces[s + 1], &faces[s], s + 1)
    }

    /// Largest `r` with `lo < r ≤ hi` and `H̃_{r−1}(Δ|σ) ≠ 0`. Faces are
    /// enumerated once and consecutive degrees share a boundary rank.
    pub fn top_homology<F: Field>(&self, sigma: u32, lo: usize, hi: usize) -> Option<usize> {
        if hi <= lo || self.is_void() {
            return None;
        }
        let faces = self.faces_within(sigma, hi + 1);
        // H̃_{r−1} needs faces of size r
        let top = (0..faces.len()).rev().find(|&s| !faces[s].is_empty())?;
        let start = hi.min(top);
        let (mut above, mut cleared) = boundary_reduce::<F>(&faces[start + 1], &faces[start], start + 1, None);
        for r in (lo + 1..=start).rev() {
            let (here, pivots) = boundary_reduce::<F>(&faces[r], &faces[r - 1], r, Some(&cleared));
            if faces[r].len() > here + above {
                return Some(r);
            }
            (above, cleared) = (here, pivots);
        }
        None
    }

    /// Reduced homology dimensions of `Δ|σ`, indexed from degree −1 up to
    /// `|σ| − 1`.
    pub fn reduced_homology_dims<F: Field>(&self, sigma: u32) -> Vec<usize> {
        let k = sigma.count_ones() as usize;
        let mut dims = vec![0; k + 1];
        if self.is_void() {
            return dims;
        }
        let faces = self.faces_within(sigma, k);
        let ranks: Vec<usize> = (0..=k + 1)
            .map(|s| match s {
                0 => 0,
                s if s > k => 0,
                s => boundary_rank::<F>(&faces[s], &faces[s - 1], s),
            })
            .collect();
        for s in 0..=k {
            dims[s] = faces[s].len() - ranks[s] - ranks[s + 1];
        }
        dims
    }
}

/// Rank of the boundary map from faces of size `s` to faces of size `s − 1`.
/// Both slices must be sorted.
fn boundary_rank<F: Field>(high: &[u32], low: &[u32], s: usize) -> usize {
    boundary_reduce::<F>(high, low, s, None).0
}

/// Reduces the boundary map from `high` (size `s`) to `low`, skipping the
/// rows flagged in `skip`. Returns the rank and which `low` faces ended up
/// as pivots: those are exactly the rows the next map down may skip, since
/// each is the leading face of a cycle.
fn boundary_reduce<F: Field>(high: &[u32], low: &[u32], s: usize, skip: Option<&[bool]>) -> (usize, Vec<bool>) {
    let mut pivots = vec![false; low.len()];
    if s == 0 || high.is_empty() || low.is_empty() {
        return (0, pivots);
    }
    if s == 1 {
        // every vertex maps onto the empty face
        pivots[0] = true;
        return (1, pivots);
    }
    let rows = high
        .iter()
        .enumerate()
        .filter(|&(i, _)| !skip.is_some_and(|sk| sk[i]))
        .map(|(_, &face)| {
            let mut row: Vec<(u32, F)> = Vec::with_capacity(s);
            let mut rest = face;
            let mut k = 0;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                let sign = if k % 2 == 0 { F::one() } else { -F::one() };
                let col = low.binary_search(&(face & !(1 << v))).expect("faces are closed under subsets");
                row.push((col as u32, sign));
                k += 1;
            }
            row.sort_unstable_by_key(|&(c, _)| c);
            row
        });
    let rank = reduce_rows(rows, &mut pivots);
    (rank, pivots)
}

fn reduce_rows<F: Field>(rows: impl Iterator<Item = Vec<(u32, F)>>, is_pivot: &mut [bool]) -> usize {
    // pivot[c] = reduced row whose last column is c
    let mut pivot: Vec<Option<Vec<(u32, F)>>> = vec![None; is_pivot.len()];
    let mut rank = 0;
    for mut row in rows {
        while let Some(&(c, a)) = row.last() {
            match &pivot[c as usize] {
                None => {
                    let inv = a.inv();
                    for e in row.iter_mut() {
                        e.1 *= inv;
                    }
                    pivot[c as usize] = Some(row);
                    is_pivot[c as usize] = true;
                    rank += 1;
                    break;
                }
                Some(p) => row = axpy(&row, a, p),
            }
        }
    }
    rank
}

/// `row − a · p` on sorted sparse vectors.
fn axpy<F: Field>(row: &[(u32, F)], a: F, p: &[(u32, F)]) -> Vec<(u32, F)> {
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < p.len() {
        let take_row = j >= p.len() || (i < row.len() && row[i].0 < p[j].0);
        let take_p = i >= row.len() || (j < p.len() && p[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(a * p[j].1)));
            j += 1;
        } else {
            let v = row[i].1 - a * p[j].1;
            if !num_traits::Zero::is_zero(&v) {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fp;
    use proptest::prelude::*;

    type F = Fp<32003>;
    type F2 = Fp<2>;

    #[test]
    fn hollow_triangle_is_a_circle() {
        let c = SimplicialComplex::new(3, vec![0b111]).unwrap();
        assert_eq!(c.reduced_homology_dims::<F>(0b111), vec![0, 0, 1, 0]);
        assert_eq!(c.reduced_homology_dim::<F>(0b111, 1), 1);
        assert_eq!(c.reduced_homology_dim::<F2>(0b111, 1), 1);
    }

    #[test]
    fn simplex_is_acyclic() {
        let c = SimplicialComplex::simplex(4).unwrap();
        assert!(c.reduced_homology_dims::<F>(0b1111).iter().all(|&d| d == 0));
    }

    #[test]
    fn two_points() {
        let c = SimplicialComplex::new(2, vec![0b11]).unwrap();
        assert_eq!(c.reduced_homology_dims::<F>(0b11), vec![0, 1, 0]);
    }

    #[test]
    fn empty_and_void() {
        let c = SimplicialComplex::simplex(2).unwrap();
        assert_eq!(c.reduced_homology_dims::<F>(0), vec![1]);
        let void = SimplicialComplex::new(2, vec![0]).unwrap();
        assert!(void.is_void());
        assert_eq!(void.reduced_homology_dims::<F>(0b11), vec![0, 0, 0]);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // six-vertex triangulation of RP^2
        let tris: [[u32; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let faces: Vec<u32> = tris.iter().map(|t| t.iter().fold(0, |m, &v| m | 1 << v)).collect();
        // minimal nonfaces: triangles not in the list (every edge is present)
        let mut nonfaces = Vec::new();
        for s in 0u32..64 {
            if s.count_ones() == 3 && !faces.contains(&s) {
                nonfaces.push(s);
            }
        }
        let c = SimplicialComplex::new(6, nonfaces).unwrap();
        assert_eq!(c.reduced_homology_dims::<F>(0b111111), vec![0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(c.reduced_homology_dims::<F2>(0b111111), vec![0, 0, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn top_homology_on_rp2() {
        let tris: [[u32; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let faces: Vec<u32> = tris.iter().map(|t| t.iter().fold(0, |m, &v| m | 1 << v)).collect();
        let nonfaces = (0u32..64).filter(|s| s.count_ones() == 3 && !faces.contains(s)).collect();
        let c = SimplicialComplex::new(6, nonfaces).unwrap();
        assert_eq!(c.top_homology::<F2>(0b111111, 0, 6), Some(3));
        assert_eq!(c.top_homology::<F>(0b111111, 0, 6), None);
    }

    proptest! {
        #[test]
        fn top_homology_agrees_with_all_degrees(
            raw in proptest::collection::vec(1u32..256, 1..7),
            sigma in 1u32..256,
            lo in 0usize..3,
        ) {
            let c = SimplicialComplex::new(8, raw).unwrap();
            let dims = c.reduced_homology_dims::<F>(sigma);
            // dims[k] is degree k - 1, so r = k
            let want = (lo + 1..dims.len()).rev().find(|&r| dims[r] > 0);
            prop_assert_eq!(c.top_homology::<F>(sigma, lo, 8), want);
            for d in -1..7i64 {
                let k = (d + 1) as usize;
                prop_assert_eq!(c.reduced_homology_dim::<F>(sigma, d), dims.get(k).copied().unwrap_or(0));
            }
        }
    }

    #[test]
    fn support_limit() {
        assert!(SimplicialComplex::new(MAX_SUPPORT + 1, vec![]).unwrap_err().is_budget());
    }
}
