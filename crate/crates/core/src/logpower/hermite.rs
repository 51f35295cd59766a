//! Hermite interpolation with derivative data at each node.
//!
//! Used as a cross-check on the smooth part of a factorization: the
//! polynomial built from Q and its derivatives at the singular points.

use rug::Rational;

use crate::error::{Error, Result};
use crate::numerics::Complex;

/// Minimal field interface shared by exact rationals and big complexes.
pub trait Field: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn from_i64_like(&self, v: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Rational::from(v)
    }
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn div(&self, o: &Self) -> Self {
        Rational::from(self / o)
    }
}

impl Field for Complex {
    fn zero_like(&self) -> Self {
        Complex::new(rug::Float::new(self.prec()), rug::Float::new(self.prec()))
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Complex::new(rug::Float::with_val(self.prec(), v), rug::Float::new(self.prec()))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Interpolation node: abscissa x with f(x), f'(x), …, f^{(c−1)}(x).
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteNode<F> {
    pub x: F,
    pub derivs: Vec<F>,
}

impl<F> HermiteNode<F> {
    pub fn new(x: F, derivs: Vec<F>) -> Self {
        Self { x, derivs }
    }
}

/// Polynomial in monomial form, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F> {
    pub coeffs: Vec<F>,
}

impl<F: Field> Polynomial<F> {
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&c.from_i64_like(i as i64)))
                .collect(),
        }
    }

    /// p, p', …, p^{(count−1)} evaluated at x.
    pub fn derivatives_at(&self, x: &F, count: usize) -> Vec<F> {
        let mut out = Vec::with_capacity(count);
        let mut q = self.clone();
        for _ in 0..count {
            out.push(if q.coeffs.is_empty() { x.zero_like() } else { q.eval(x) });
            q = q.derivative();
        }
        out
    }
}

/// Unique polynomial of degree < c·m matching c derivatives at m nodes.
pub fn hermite_interpolate<F: Field>(nodes: &[HermiteNode<F>]) -> Result<Polynomial<F>> {
    let Some(first) = nodes.first() else {
        return Err(Error::InvalidArgument("no interpolation nodes".into()));
    };
    let c = first.derivs.len();
    if c == 0 || nodes.iter().any(|nd| nd.derivs.len() != c) {
        return Err(Error::RaggedNodes);
    }
    for i in 0..nodes.len() {
        for j in 0..i {
            if nodes[i].x == nodes[j].x {
                return Err(Error::DuplicateNode(i));
            }
        }
    }
    let zero = first.x.zero_like();
    // repeated abscissae z_0..z_{N−1}, each node c times
    let z: Vec<(usize, &F)> = nodes
        .iter()
        .enumerate()
        .flat_map(|(i, nd)| std::iter::repeat_n((i, &nd.x), c))
        .collect();
    let total = z.len();
    // confluent divided-difference table, column by column
    let mut col: Vec<F> = z.iter().map(|(i, _)| nodes[*i].derivs[0].clone()).collect();
    let mut newton = vec![col[0].clone()];
    let mut fact = 1i64;
    for order in 1..total {
        fact *= order as i64;
        let mut next = Vec::with_capacity(total - order);
        for s in 0..total - order {
            let (a, xa) = z[s];
            let (b, xb) = z[s + order];
            if a == b {
                // all z_s..z_{s+order} coincide
                let d = &nodes[a].derivs[order];
                next.push(d.div(&d.from_i64_like(fact)));
            } else {
                next.push(col[s + 1].sub(&col[s]).div(&xb.sub(xa)));
            }
        }
        newton.push(next[0].clone());
        col = next;
    }
    // Newton form to monomial form by Horner on (x − z_k)
    let mut coeffs = vec![zero.clone(); total];
    for k in (0..total).rev() {
        // coeffs ← coeffs·(x − z_k) + newton[k]
        let zk = z[k].1;
        let mut shifted = vec![zero.clone(); total];
        for i in 0..total {
            if i + 1 < total {
                shifted[i + 1] = shifted[i + 1].add(&coeffs[i]);
            }
            shifted[i] = shifted[i].sub(&coeffs[i].mul(zk));
        }
        shifted[0] = shifted[0].add(&newton[k]);
        coeffs = shifted;
    }
    Ok(Polynomial { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Precision;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn single_node_is_constant() {
        let p = hermite_interpolate(&[HermiteNode::new(r(3, 1), vec![r(7, 2)])]).unwrap();
        assert_eq!(p.coeffs, vec![r(7, 2)]);
    }

    #[test]
    fn chord_through_two_points() {
        let p = hermite_interpolate(&[
            HermiteNode::new(r(-1, 1), vec![r(1, 1)]),
            HermiteNode::new(r(1, 1), vec![r(5, 1)]),
        ])
        .unwrap();
        assert_eq!(p.coeffs, vec![r(3, 1), r(2, 1)]);
    }

    #[test]
    fn cubic_from_exp_data() {
        let pr = Precision::new(40);
        let e = Complex::from_int(pr, 1).exp();
        let ei = Complex::from_int(pr, -1).exp();
        let nodes = vec![
            HermiteNode::new(Complex::from_int(pr, -1), vec![ei.clone(), ei]),
            HermiteNode::new(Complex::from_int(pr, 1), vec![e.clone(), e]),
        ];
        let p = hermite_interpolate(&nodes).unwrap();
        assert_eq!(p.degree_bound(), 3);
        for nd in &nodes {
            for (got, want) in p.derivatives_at(&nd.x, 2).iter().zip(&nd.derivs) {
                assert!(got.dist(want).to_f64() < 1e-35);
            }
        }
    }

    #[test]
    fn exact_rational_match() {
        let nodes = vec![
            HermiteNode::new(r(0, 1), vec![r(1, 1), r(-2, 3), r(5, 1)]),
            HermiteNode::new(r(1, 2), vec![r(2, 1), r(0, 1), r(1, 7)]),
            HermiteNode::new(r(-3, 1), vec![r(-1, 1), r(4, 1), r(0, 1)]),
        ];
        let p = hermite_interpolate(&nodes).unwrap();
        for nd in &nodes {
            assert_eq!(p.derivatives_at(&nd.x, 3), nd.derivs);
        }
    }

    #[test]
    fn rejects_bad_nodes() {
        let dup = [HermiteNode::new(r(1, 1), vec![r(0, 1)]), HermiteNode::new(r(1, 1), vec![r(1, 1)])];
        assert!(matches!(hermite_interpolate(&dup), Err(Error::DuplicateNode(1))));
        let ragged = [
            HermiteNode::new(r(1, 1), vec![r(0, 1)]),
            HermiteNode::new(r(2, 1), vec![r(1, 1), r(1, 1)]),
        ];
        assert!(matches!(hermite_interpolate(&ragged), Err(Error::RaggedNodes)));
    }
}
