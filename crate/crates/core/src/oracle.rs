//! Brute-force reference distributions.
//!
//! Nothing here touches quotient matrices or polynomials: distances come
//! from BFS and every entry is a plain sum over vertices.

use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::distributions::Distribution;
use crate::equitable::Coloring;
use crate::error::{Error, Result};
use crate::graphs::{Graph, VertexFunction};
use crate::ratmat::{RatMatrix, Rational};

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub computed: Distribution,
    pub method: &'static str,
    pub elapsed: Duration,
}

/// Row `w` is the sum of `f` over the vertices at distance `w` from `code`,
/// for `w = 0..=ρ(code)`.
pub fn brute_distribution(
    g: &Graph,
    code: &[usize],
    f: &dyn VertexFunction,
) -> Result<Distribution> {
    if f.n_vertices() != g.n_vertices() {
        return Err(Error::ShapeMismatch(format!(
            "function has {} rows, graph has {} vertices",
            f.n_vertices(),
            g.n_vertices()
        )));
    }
    let profile = g.distances_from_set(code)?;
    let mut rows = vec![vec![Rational::zero(); f.width()]; profile.covering_radius + 1];
    for (v, &d) in profile.distances.iter().enumerate() {
        f.add_value(v, &mut rows[d]);
    }
    Ok(Distribution::new(RatMatrix::from_rows(rows)?))
}

pub fn brute_distribution_report(
    g: &Graph,
    code: &[usize],
    f: &dyn VertexFunction,
) -> Result<OracleReport> {
    let start = Instant::now();
    let computed = brute_distribution(g, code, f)?;
    Ok(OracleReport {
        computed,
        method: "bfs-sum",
        elapsed: start.elapsed(),
    })
}

/// Contingency table: row `i` is the sum of `f` over the vertices of color
/// `i` in `gcol`.
pub fn brute_pair_distribution(gcol: &Coloring, f: &dyn VertexFunction) -> Result<Distribution> {
    if f.n_vertices() != gcol.n_vertices() {
        return Err(Error::ShapeMismatch(format!(
            "function has {} rows, coloring has {} vertices",
            f.n_vertices(),
            gcol.n_vertices()
        )));
    }
    let mut rows = vec![vec![Rational::zero(); f.width()]; gcol.n_colors()];
    for v in 0..gcol.n_vertices() {
        f.add_value(v, &mut rows[gcol.color(v)]);
    }
    Ok(Distribution::new(RatMatrix::from_rows(rows)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equitable::lattice_coloring;
    use crate::graphs::{binary_hamming_code, hamming_graph};
    use crate::ratmat::int;

    #[test]
    fn whole_vertex_set_gives_column_sums() {
        let g = hamming_graph(2, 3).unwrap();
        let f = Coloring::new(vec![0, 1, 1, 2, 2, 2, 0, 0, 0]).unwrap();
        let all: Vec<usize> = (0..9).collect();
        let d = brute_distribution(&g, &all, &f).unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_ints(&[[4, 2, 3]]));
    }

    #[test]
    fn vertex_coloring_against_itself() {
        let g = hamming_graph(2, 3).unwrap();
        let profile = g.distances_from_set(&[0]).unwrap();
        let f = Coloring::new(profile.distances).unwrap();
        let d = brute_distribution(&g, &[0], &f).unwrap();
        assert_eq!(
            d.matrix(),
            &RatMatrix::from_ints(&[[1, 0, 0], [0, 4, 0], [0, 0, 4]])
        );
    }

    #[test]
    fn eigenfunction_of_hamming_code() {
        let g = hamming_graph(7, 2).unwrap();
        let code = binary_hamming_code(3);
        let mut f = RatMatrix::from_rows(vec![vec![int(-1)]; 128]).unwrap();
        for &c in &code {
            f.set(c, 0, int(7));
        }
        let report = brute_distribution_report(&g, &code, &f).unwrap();
        assert_eq!(report.method, "bfs-sum");
        assert_eq!(report.computed.matrix(), &RatMatrix::from_ints(&[[112], [-112]]));
    }

    #[test]
    fn pair_tables() {
        let f = Coloring::new(vec![0, 1, 1, 2]).unwrap();
        let d = brute_pair_distribution(&f, &f).unwrap();
        assert_eq!(
            d.matrix(),
            &RatMatrix::from_ints(&[[1, 0, 0], [0, 2, 0], [0, 0, 1]])
        );
        let d = brute_pair_distribution(&Coloring::discrete(4), &f).unwrap();
        assert_eq!(d.matrix(), &f.indicator());
    }

    #[test]
    fn lattice_against_vertex_coloring_on_square() {
        // H(2,2): 00, 01, 10, 11. Lattice colors: 0, 1, 1, 0.
        // Distances from 00: 0, 1, 1, 2.
        let g = hamming_graph(2, 2).unwrap();
        let lattice = lattice_coloring(2, 1, 2).unwrap();
        let dist = Coloring::new(g.distances_from_set(&[0]).unwrap().distances).unwrap();
        let d = brute_pair_distribution(&lattice, &dist).unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_ints(&[[1, 0, 1], [0, 2, 0]]));
    }

    #[test]
    fn errors_propagate() {
        let g = hamming_graph(2, 2).unwrap();
        assert!(brute_distribution(&g, &[], &Coloring::single(4)).is_err());
        assert!(brute_distribution(&g, &[0], &Coloring::single(3)).is_err());
        assert!(brute_pair_distribution(&Coloring::single(3), &Coloring::single(4)).is_err());
    }
}
