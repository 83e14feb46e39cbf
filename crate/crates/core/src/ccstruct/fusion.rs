use super::{tensor, ColorGraph, ColorId, IntersectionTensor};
use crate::error::{invalid, Error, Result};

/// Checks that `sigma` is a color bijection preserving reflexive colors,
/// converses and every intersection number.
pub fn check_algebraic_automorphism(x: &ColorGraph, t: &IntersectionTensor, sigma: &[ColorId]) -> Result<()> {
    let k = x.rank();
    if sigma.len() != k {
        return invalid("color map has wrong length");
    }
    let mut seen = vec![false; k];
    for &c in sigma {
        if c >= k || seen[c] {
            return invalid("color map is not a bijection");
        }
        seen[c] = true;
    }
    for c in 0..k {
        if x.is_reflexive(c) != x.is_reflexive(sigma[c]) {
            return Err(Error::Axiom(format!("color {c} changes reflexivity")));
        }
        if sigma[x.converse(c)] != x.converse(sigma[c]) {
            return Err(Error::Axiom(format!("color {c} does not commute with the converse")));
        }
    }
    // sigma is a bijection on triples, so matching the nonzero entries suffices
    for (r, s, u, c) in t.iter() {
        if t.get(sigma[r], sigma[s], sigma[u]) != c {
            return Err(Error::Axiom(format!("intersection number ({r},{s},{u}) not preserved")));
        }
    }
    Ok(())
}

/// The algebraic fusion of `x` by the group generated by `phi_group`.
pub fn algebraic_fusion(x: &ColorGraph, phi_group: &[Vec<ColorId>]) -> Result<ColorGraph> {
    let t = tensor(x)?;
    for sigma in phi_group {
        check_algebraic_automorphism(x, &t, sigma)?;
    }
    let k = x.rank();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for sigma in phi_group {
        for c in 0..k {
            let (a, b) = (find(&mut parent, c), find(&mut parent, sigma[c]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let color = x.colors().iter().map(|&c| find(&mut parent, c)).collect();
    ColorGraph::coherent_from_matrix(x.n(), color)
}
