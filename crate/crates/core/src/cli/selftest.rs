//! Worked examples, each checked exactly.

use serde_json::{json, Value};

use crate::distributions::{lattice_distribution, pcube_distribution, vertex_distribution};
use crate::equitable::{check_completely_regular, distance_coloring, verify_structure, PerfectStructure};
use crate::error::Result;
use crate::graphs::{binary_hamming_code, extended_binary_hamming_code, hamming_graph};
use crate::localdist::tensor_structure;
use crate::oracle::brute_distribution;
use crate::ratmat::{int, RatMatrix};

type Check = (&'static str, fn() -> Result<bool>);

const CHECKS: &[Check] = &[
    ("tensor product of vertex colorings of H(2,3)", nine_by_nine),
    ("Hamming(7,4) code is completely regular", hamming_code),
    ("extended Hamming(8,4) code is completely regular", extended_hamming_code),
    ("d on the Hamming code, -1 off it, has eigenvalue -1", hamming_eigenvector),
    ("codeword column of the Hamming code", codeword_column),
    ("lattice distributions", lattice_cases),
    ("subcube H(n,p) in H(n,q)", pcube_cases),
];

/// Runs every check; returns the JSON report and whether all passed.
pub fn run() -> (Value, bool) {
    let mut all = true;
    let checks: Vec<Value> = CHECKS
        .iter()
        .map(|(name, check)| {
            let (passed, error) = match check() {
                Ok(p) => (p, None),
                Err(e) => (false, Some(e.to_string())),
            };
            all &= passed;
            match error {
                Some(e) => json!({ "name": name, "passed": passed, "error": e }),
                None => json!({ "name": name, "passed": passed }),
            }
        })
        .collect();
    (json!({ "passed": all, "checks": checks }), all)
}

fn nine_by_nine() -> Result<bool> {
    let h = hamming_graph(2, 3)?;
    let g = PerfectStructure::from_coloring(&h, &distance_coloring(&h, &[0])?)?;
    let ts = tensor_structure(&h, &g, &h, &g)?;
    let expected = RatMatrix::from_ints(&[
        [0, 4, 0, 4, 0, 0, 0, 0, 0],
        [1, 1, 2, 0, 4, 0, 0, 0, 0],
        [0, 2, 2, 0, 0, 4, 0, 0, 0],
        [1, 0, 0, 1, 4, 0, 2, 0, 0],
        [0, 1, 0, 1, 2, 2, 0, 2, 0],
        [0, 0, 1, 0, 2, 3, 0, 0, 2],
        [0, 0, 0, 2, 0, 0, 2, 4, 0],
        [0, 0, 0, 0, 2, 0, 1, 3, 2],
        [0, 0, 0, 0, 0, 2, 0, 2, 4],
    ]);
    Ok(ts.product.params() == &expected)
}

fn hamming_code() -> Result<bool> {
    let crc = check_completely_regular(&hamming_graph(7, 2)?, &binary_hamming_code(3))?;
    Ok(crc.covering_radius == 1 && crc.params == RatMatrix::from_ints(&[[0, 7], [1, 6]]))
}

fn extended_hamming_code() -> Result<bool> {
    let g = hamming_graph(8, 2)?;
    let crc = check_completely_regular(&g, &extended_binary_hamming_code(3))?;
    Ok(crc.params == RatMatrix::from_ints(&[[0, 8, 0], [1, 0, 7], [0, 8, 0]]))
}

fn hamming_eigenvector() -> Result<bool> {
    let g = hamming_graph(7, 2)?;
    let mut f = RatMatrix::from_rows(vec![vec![int(-1)]; 128])?;
    for c in binary_hamming_code(3) {
        f.set(c, 0, int(7));
    }
    Ok(verify_structure(&g, &f, &RatMatrix::from_ints(&[[-1]]))?.holds)
}

fn codeword_column() -> Result<bool> {
    let g = hamming_graph(7, 2)?;
    let code = binary_hamming_code(3);
    let c = distance_coloring(&g, &code)?;
    let f = PerfectStructure::from_coloring(&g, &c)?;
    let d = vertex_distribution(&g, f.params(), 0)?;
    let column: Vec<_> = (0..d.n_rows()).map(|w| d.row(w)[0].clone()).collect();
    let expected: Vec<_> = [1, 0, 0, 7, 7, 0, 0, 1].into_iter().map(int).collect();
    Ok(column == expected && d == brute_distribution(&g, &[code[0]], &f)?)
}

fn lattice_cases() -> Result<bool> {
    let a = lattice_distribution(2, 1, 2, &RatMatrix::from_ints(&[[2]]), &[int(2)])?;
    let b = lattice_distribution(2, 2, 2, &RatMatrix::from_ints(&[[4]]), &[int(4)])?;
    Ok(a.matrix() == &RatMatrix::from_ints(&[[2], [2]])
        && b.matrix() == &RatMatrix::from_ints(&[[4], [8], [4]]))
}

fn pcube_cases() -> Result<bool> {
    let a = pcube_distribution(1, 2, 3, &RatMatrix::from_ints(&[[2]]), &[int(2)])?;
    let b = pcube_distribution(2, 2, 3, &RatMatrix::from_ints(&[[4]]), &[int(4)])?;
    Ok(a.matrix() == &RatMatrix::from_ints(&[[2], [1]])
        && b.matrix() == &RatMatrix::from_ints(&[[4], [4], [1]]))
}
