//! Detection of a multigrading `deg x_i = u_i`, `deg e_p = delta_p` (values in
//! `Z^n`) under which a family of module elements is homogeneous.

use std::collections::VecDeque;

use super::poly::FreeVec;

/// Position offsets and the degree of every graded element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub offsets: Vec<Vec<i64>>,
    pub degrees: Vec<Vec<i64>>,
    // connected component of each position and of each element
    pos_component: Vec<usize>,
    elem_component: Vec<usize>,
}

impl Grading {
    /// Finds offsets making every nonzero element of `vecs` homogeneous, or
    /// `None` if some element is not homogeneous for any choice. Elements in
    /// different components carry no relation to each other; use
    /// [`Grading::same_component`] before comparing their degrees.
    pub fn detect(nvars: usize, rank: usize, vecs: &[&FreeVec]) -> Option<Grading> {
        let nodes = rank + vecs.len();
        // edge (pos, elem, a): deg(elem) = offset(pos) + a
        let mut adj: Vec<Vec<(usize, Vec<i64>)>> = vec![Vec::new(); nodes];
        for (k, v) in vecs.iter().enumerate() {
            let node = rank + k;
            for (p, c) in v.coords().iter().enumerate() {
                let mut first: Option<&[u32]> = None;
                for m in c.monomials() {
                    match first {
                        None => first = Some(&m.0),
                        // two terms in one coordinate cannot share a degree
                        Some(_) => return None,
                    }
                }
                if let Some(a) = first {
                    let a: Vec<i64> = a.iter().map(|&e| e as i64).collect();
                    let neg: Vec<i64> = a.iter().map(|e| -e).collect();
                    adj[p].push((node, a));
                    adj[node].push((p, neg));
                }
            }
        }
        let mut pot: Vec<Option<Vec<i64>>> = vec![None; nodes];
        let mut comp = vec![usize::MAX; nodes];
        let mut ncomp = 0;
        for start in 0..nodes {
            if pot[start].is_some() {
                continue;
            }
            pot[start] = Some(vec![0; nvars]);
            comp[start] = ncomp;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let pu = pot[u].clone().unwrap();
                for (w, a) in &adj[u] {
                    let want: Vec<i64> = pu.iter().zip(a).map(|(x, y)| x + y).collect();
                    match &pot[*w] {
                        Some(pw) if *pw != want => return None,
                        Some(_) => {}
                        None => {
                            pot[*w] = Some(want);
                            comp[*w] = ncomp;
                            queue.push_back(*w);
                        }
                    }
                }
            }
            ncomp += 1;
        }
        let pot: Vec<Vec<i64>> = pot.into_iter().map(Option::unwrap).collect();
        Some(Grading {
            offsets: pot[..rank].to_vec(),
            degrees: pot[rank..].to_vec(),
            pos_component: comp[..rank].to_vec(),
            elem_component: comp[rank..].to_vec(),
        })
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.elem_component[a] == self.elem_component[b]
    }

    /// Whether an element is zero (then it belongs to its own component and
    /// has no meaningful degree).
    pub fn is_isolated(&self, k: usize) -> bool {
        !self.pos_component.contains(&self.elem_component[k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Polynomial;
    use crate::algebra::scalar::Field;

    #[test]
    fn relation_links_positions() {
        let f = Field::Rational;
        let x = Polynomial::var(f, 2, 0);
        let y = Polynomial::var(f, 2, 1);
        let one = Polynomial::one(f, 2);
        // xy e2 - e1 forces delta_1 = delta_2 + (1,1)
        let c = FreeVec::new(vec![-&one, &x * &y]);
        let t1 = FreeVec::new(vec![one.clone(), Polynomial::zero(f, 2)]);
        let g = Grading::detect(2, 2, &[&c, &t1]).unwrap();
        let d: Vec<i64> = g.offsets[0].iter().zip(&g.offsets[1]).map(|(a, b)| a - b).collect();
        assert_eq!(d, vec![1, 1]);
        assert!(g.same_component(0, 1));
        let bad = FreeVec::new(vec![&x + &y, Polynomial::zero(f, 2)]);
        assert!(Grading::detect(2, 2, &[&bad]).is_none());
    }
}
