//! The skew polynomial ring F_{q^m}[x; sigma] with zero derivation,
//! generalized operator evaluation and generalized Moore matrices.
//!
//! Multiplication follows the rule x * c = sigma(c) * x. Polynomials are
//! plain coefficient vectors and carry no ring context; every operation takes
//! the [`FieldParams`] explicitly.

pub mod linalg;

pub use linalg::{solve, LinearSolution, Matrix};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldParams};

/// A skew polynomial sum_i f_i x^i; the stored coefficient of highest index
/// is nonzero unless the polynomial is zero (canonical degree).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    coeffs: Vec<FieldElement>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Builds from little-endian coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// c * x^degree.
    pub fn monomial(fp: &FieldParams, c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![fp.zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None encodes deg(0) = -infinity.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^i (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn add(&self, fp: &FieldParams, other: &SkewPoly) -> SkewPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| fp.add(self.coeff(i), other.coeff(i))).collect();
        SkewPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, fp: &FieldParams, other: &SkewPoly) -> SkewPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| fp.sub(self.coeff(i), other.coeff(i))).collect();
        SkewPoly::from_coeffs(coeffs)
    }

    /// Skew product: (sum f_i x^i)(sum g_j x^j) = sum f_i sigma^i(g_j) x^(i+j).
    pub fn mul(&self, fp: &FieldParams, other: &SkewPoly) -> SkewPoly {
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero();
        }
        let mut coeffs = vec![fp.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, &gj) in other.coeffs.iter().enumerate() {
                let term = fp.mul(fi, fp.frobenius(gj, i as i64));
                coeffs[i + j] = fp.add(coeffs[i + j], term);
            }
        }
        SkewPoly::from_coeffs(coeffs)
    }

    /// Left scalar multiple c * f.
    pub fn scale(&self, fp: &FieldParams, c: FieldElement) -> SkewPoly {
        SkewPoly::from_coeffs(self.coeffs.iter().map(|&f| fp.mul(c, f)).collect())
    }

    /// Generalized operator evaluation f(b)_a = sum_i f_i D_a^i(b).
    pub fn op_evaluate(
        &self,
        fp: &FieldParams,
        b: FieldElement,
        a: FieldElement,
    ) -> FieldElement {
        let mut acc = fp.zero();
        let mut power = b;
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = fp.mul(fp.frobenius(power, 1), a);
            }
            if !fi.is_zero() {
                acc = fp.add(acc, fp.mul(fi, power));
            }
        }
        acc
    }
}

/// D_a^i(b) = sigma^i(b) sigma^(i-1)(a) ... sigma(a) a, with D_a^0(b) = b.
pub fn op_power(fp: &FieldParams, a: FieldElement, b: FieldElement, i: usize) -> FieldElement {
    let mut acc = b;
    for _ in 0..i {
        acc = fp.mul(fp.frobenius(acc, 1), a);
    }
    acc
}

/// A generalized Moore matrix: d rows, ell blocks of kappa columns, where the
/// entry in row r of block i at column j is D_{a_i}^r applied to x_j of that
/// block. Row r+1 of a block is the entrywise map b -> sigma(b) * a_i of row r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMatrix {
    pub block_count: usize,
    pub block_len: usize,
    pub d: usize,
    matrix: Matrix,
}

impl MooreMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }
}

/// Builds the generalized Moore matrix for blocked evaluation points `blocks`
/// (all of equal length) and evaluation parameters `a`, one per block.
pub fn moore_matrix(
    fp: &FieldParams,
    d: usize,
    blocks: &[Vec<FieldElement>],
    a: &[FieldElement],
) -> Result<MooreMatrix> {
    if blocks.is_empty() || blocks.len() != a.len() {
        return Err(Error::ShapeMismatch {
            context: format!(
                "moore matrix needs one evaluation parameter per block: {} blocks, {} parameters",
                blocks.len(),
                a.len()
            ),
        });
    }
    let kappa = blocks[0].len();
    if blocks.iter().any(|b| b.len() != kappa) {
        return Err(Error::ShapeMismatch {
            context: "moore matrix blocks must have equal length".into(),
        });
    }
    let ell = blocks.len();
    let mut matrix = Matrix::zeros(fp, d, ell * kappa);
    for (i, block) in blocks.iter().enumerate() {
        for (j, &x) in block.iter().enumerate() {
            let col = i * kappa + j;
            let mut acc = x;
            for r in 0..d {
                if r > 0 {
                    acc = fp.mul(fp.frobenius(acc, 1), a[i]);
                }
                matrix[(r, col)] = acc;
            }
        }
    }
    Ok(MooreMatrix { block_count: ell, block_len: kappa, d, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn f4() -> FieldParams {
        FieldParams::new(2, 2).unwrap()
    }

    fn f9() -> FieldParams {
        FieldParams::new(3, 2).unwrap()
    }

    fn random_poly(fp: &FieldParams, rng: &mut impl Rng, max_deg: usize) -> SkewPoly {
        let deg = rng.gen_range(0..=max_deg);
        SkewPoly::from_coeffs((0..=deg).map(|_| fp.random_element(rng)).collect())
    }

    #[test]
    fn canonical_degree() {
        let fp = f9();
        assert_eq!(SkewPoly::zero().degree(), None);
        assert!(SkewPoly::from_coeffs(vec![fp.zero(), fp.zero()]).is_zero());
        let f = SkewPoly::from_coeffs(vec![fp.one(), fp.gamma(), fp.zero()]);
        assert_eq!(f.degree(), Some(1));
    }

    #[test]
    fn mul_identity() {
        let fp = f9();
        let one = SkewPoly::constant(fp.one());
        let mut rng = ChaCha12Rng::seed_from_u64(20);
        for _ in 0..50 {
            let f = random_poly(&fp, &mut rng, 5);
            assert_eq!(f.mul(&fp, &one), f);
            assert_eq!(one.mul(&fp, &f), f);
        }
    }

    #[test]
    fn skew_rule_f4() {
        // x * z = sigma(z) x = (z+1) x, and z * x != x * z
        let fp = f4();
        let z = fp.element_from_code(2).unwrap();
        let z1 = fp.element_from_code(3).unwrap();
        let x = SkewPoly::monomial(&fp, fp.one(), 1);
        let zc = SkewPoly::constant(z);
        let left = x.mul(&fp, &zc);
        assert_eq!(left, SkewPoly::monomial(&fp, z1, 1));
        let right = zc.mul(&fp, &x);
        assert_eq!(right, SkewPoly::monomial(&fp, z, 1));
        assert_ne!(left, right);
    }

    #[test]
    fn degrees_add_under_mul() {
        let fp = f9();
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for _ in 0..1000 {
            let f = random_poly(&fp, &mut rng, 4);
            let g = random_poly(&fp, &mut rng, 4);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let fg = f.mul(&fp, &g);
            assert_eq!(
                fg.degree().unwrap(),
                f.degree().unwrap() + g.degree().unwrap()
            );
        }
    }

    #[test]
    fn ring_axioms_random() {
        let fp = f9();
        let mut rng = ChaCha12Rng::seed_from_u64(22);
        let mut saw_noncommutative = false;
        for _ in 0..1000 {
            let f = random_poly(&fp, &mut rng, 3);
            let g = random_poly(&fp, &mut rng, 3);
            let h = random_poly(&fp, &mut rng, 3);
            let assoc_l = f.mul(&fp, &g).mul(&fp, &h);
            let assoc_r = f.mul(&fp, &g.mul(&fp, &h));
            assert_eq!(assoc_l, assoc_r);
            let dist_l = f.mul(&fp, &g.add(&fp, &h));
            let dist_r = f.mul(&fp, &g).add(&fp, &f.mul(&fp, &h));
            assert_eq!(dist_l, dist_r);
            let dist_l2 = f.add(&fp, &g).mul(&fp, &h);
            let dist_r2 = f.mul(&fp, &h).add(&fp, &g.mul(&fp, &h));
            assert_eq!(dist_l2, dist_r2);
            if f.mul(&fp, &g) != g.mul(&fp, &f) {
                saw_noncommutative = true;
            }
        }
        assert!(saw_noncommutative);
    }

    #[test]
    fn op_power_basics() {
        let fp = f9();
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..100 {
            let a = fp.random_element(&mut rng);
            let b = fp.random_element(&mut rng);
            assert_eq!(op_power(&fp, a, b, 0), b);
            assert_eq!(op_power(&fp, a, b, 1), fp.mul(fp.frobenius(b, 1), a));
            let i = rng.gen_range(0..6);
            assert_eq!(op_power(&fp, fp.one(), b, i), fp.frobenius(b, i as i64));
            // recursion: D^{i+1}(b) = sigma(D^i(b)) * a
            assert_eq!(
                op_power(&fp, a, b, i + 1),
                fp.mul(fp.frobenius(op_power(&fp, a, b, i), 1), a)
            );
        }
    }

    #[test]
    fn op_evaluate_constant_and_zero() {
        let fp = f9();
        let mut rng = ChaCha12Rng::seed_from_u64(24);
        for _ in 0..100 {
            let c = fp.random_element(&mut rng);
            let b = fp.random_element(&mut rng);
            let a = fp.random_element(&mut rng);
            assert_eq!(SkewPoly::constant(c).op_evaluate(&fp, b, a), fp.mul(c, b));
            let f = random_poly(&fp, &mut rng, 4);
            assert_eq!(f.op_evaluate(&fp, fp.zero(), a), fp.zero());
        }
    }

    #[test]
    fn op_evaluate_linear_in_b() {
        let fp = f9();
        let mut rng = ChaCha12Rng::seed_from_u64(25);
        for _ in 0..1000 {
            let f = random_poly(&fp, &mut rng, 4);
            let a = fp.random_element(&mut rng);
            let b1 = fp.random_element(&mut rng);
            let b2 = fp.random_element(&mut rng);
            let lam = fp.embed_base(rng.gen_range(0..3)).unwrap();
            let mu = fp.embed_base(rng.gen_range(0..3)).unwrap();
            let combo = fp.add(fp.mul(lam, b1), fp.mul(mu, b2));
            let lhs = f.op_evaluate(&fp, combo, a);
            let rhs = fp.add(
                fp.mul(lam, f.op_evaluate(&fp, b1, a)),
                fp.mul(mu, f.op_evaluate(&fp, b2, a)),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn op_evaluate_composition_law() {
        // (f g)(b)_a = f(g(b)_a)_a, checked by brute force on random triples
        let fp = f9();
        let mut rng = ChaCha12Rng::seed_from_u64(26);
        for _ in 0..1000 {
            let f = random_poly(&fp, &mut rng, 4);
            let g = random_poly(&fp, &mut rng, 4);
            let a = fp.random_element(&mut rng);
            let b = fp.random_element(&mut rng);
            let lhs = f.mul(&fp, &g).op_evaluate(&fp, b, a);
            let rhs = f.op_evaluate(&fp, g.op_evaluate(&fp, b, a), a);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn moore_single_row_is_x() {
        let fp = f9();
        let blocks = vec![vec![fp.one(), fp.gamma()], vec![fp.gamma_pow(3), fp.gamma_pow(5)]];
        let a = fp.conjugacy_representatives(2).unwrap();
        let mm = moore_matrix(&fp, 1, &blocks, &a).unwrap();
        assert_eq!(mm.matrix().rows(), 1);
        assert_eq!(
            mm.matrix().row(0),
            &[fp.one(), fp.gamma(), fp.gamma_pow(3), fp.gamma_pow(5)][..]
        );
    }

    #[test]
    fn moore_rank_example() {
        // q=3, m=3, ell=2, kappa=2, d=4, F_q-independent blocks: rank 4
        let fp = FieldParams::new(3, 3).unwrap();
        let a = fp.conjugacy_representatives(2).unwrap();
        let blocks = vec![vec![fp.one(), fp.gamma()], vec![fp.one(), fp.gamma()]];
        let mm = moore_matrix(&fp, 4, &blocks, &a).unwrap();
        assert_eq!(mm.matrix().rank(&fp), 4);
    }

    #[test]
    fn moore_repeated_column_drops_rank() {
        let fp = FieldParams::new(3, 3).unwrap();
        let a = fp.conjugacy_representatives(1).unwrap();
        let blocks = vec![vec![fp.gamma(), fp.gamma()]];
        let mm = moore_matrix(&fp, 2, &blocks, &a).unwrap();
        assert!(mm.matrix().rank(&fp) < 2);
    }

    #[test]
    fn moore_shape_errors() {
        let fp = f9();
        let a = fp.conjugacy_representatives(2).unwrap();
        let ragged = vec![vec![fp.one()], vec![fp.one(), fp.gamma()]];
        assert!(matches!(
            moore_matrix(&fp, 2, &ragged, &a),
            Err(Error::ShapeMismatch { .. })
        ));
        let blocks = vec![vec![fp.one()]];
        assert!(moore_matrix(&fp, 2, &blocks, &a).is_err());
    }

    #[test]
    fn moore_row_recursion_invariant() {
        let fp = f9();
        let a = fp.conjugacy_representatives(2).unwrap();
        let blocks = vec![vec![fp.one(), fp.gamma()], vec![fp.gamma_pow(2), fp.gamma_pow(5)]];
        let mm = moore_matrix(&fp, 3, &blocks, &a).unwrap();
        let kappa = mm.block_len;
        for i in 0..mm.block_count {
            for j in 0..kappa {
                let col = i * kappa + j;
                for r in 0..mm.d - 1 {
                    let expect = fp.mul(fp.frobenius(mm.matrix()[(r, col)], 1), a[i]);
                    assert_eq!(mm.matrix()[(r + 1, col)], expect);
                }
            }
        }
    }
}
