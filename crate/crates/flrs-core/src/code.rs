//! Folded linearized Reed-Solomon codes: parameter validation, encoding via
//! generalized operator evaluation, folding/unfolding between vector and
//! matrix layout, and the minimum-distance formula.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldParams};
use crate::skew::{Matrix, SkewPoly};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// All FLRS parameters. Invariants are checked once in [`CodeParams::new`]
/// and the struct is immutable afterwards, so every instance is valid.
#[derive(Debug)]
pub struct CodeParams {
    field: FieldParams,
    ell: usize,
    h: usize,
    n_folded: usize,
    k: usize,
    /// Conjugacy representatives gamma^0, ..., gamma^(ell-1), one per block.
    a: Vec<FieldElement>,
    n: usize,
    block_len: usize,
    folded_block_len: usize,
}

impl CodeParams {
    /// Validates Def.-1 style constraints; each violation is a distinct error.
    pub fn new(field: FieldParams, ell: usize, h: usize, n_folded: usize, k: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::EmptyBlockCount);
        }
        if h == 0 || n_folded == 0 {
            return Err(Error::ShapeMismatch {
                context: "folding parameter and folded length must be positive".into(),
            });
        }
        let a = field.conjugacy_representatives(ell)?;
        if n_folded % ell != 0 {
            return Err(Error::BlockCountMustDivideLength { ell, n_folded });
        }
        let n = h * n_folded;
        let block_len = n / ell;
        if block_len % h != 0 {
            return Err(Error::FoldingMustDivideBlockLength { h, block_len });
        }
        if block_len > field.m() {
            return Err(Error::BlockExceedsExtensionDegree { block_len, m: field.m() });
        }
        if k == 0 || k > n {
            return Err(Error::DimensionOutOfRange { k, n });
        }
        let folded_block_len = n_folded / ell;
        Ok(Self { field, ell, h, n_folded, k, a, n, block_len, folded_block_len })
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    /// Number of blocks (shots).
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Folding parameter.
    pub fn h(&self) -> usize {
        self.h
    }

    /// Folded code length N.
    pub fn n_folded(&self) -> usize {
        self.n_folded
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Unfolded length n = h * N.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Unfolded block length n_i = n / ell.
    pub fn block_len(&self) -> usize {
        self.block_len
    }

    /// Folded block length N_i^F = N / ell.
    pub fn folded_block_len(&self) -> usize {
        self.folded_block_len
    }

    /// Evaluation parameters, one conjugacy representative per block.
    pub fn reps(&self) -> &[FieldElement] {
        &self.a
    }

    /// Code locator gamma^w0 for position w0 in [0, n_i); locators are the
    /// same in every block.
    pub fn locator(&self, w0: usize) -> FieldElement {
        self.field.gamma_pow(w0 as u64)
    }

    /// Minimum sum-rank distance N - ceil(k/h) + 1.
    pub fn min_distance(&self) -> usize {
        self.n_folded - self.k.div_ceil(self.h) + 1
    }

    /// Whether the code is maximum sum-rank distance (h divides k).
    pub fn is_msrd(&self) -> bool {
        self.k % self.h == 0
    }
}

/// ell blocks of h x N_i^F matrices over F_{q^m}: a codeword, an error, or a
/// received word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedWord {
    blocks: Vec<Matrix>,
}

impl FoldedWord {
    pub fn zero(params: &CodeParams) -> Self {
        let blocks = (0..params.ell)
            .map(|_| Matrix::zeros(&params.field, params.h, params.folded_block_len))
            .collect();
        Self { blocks }
    }

    pub fn from_blocks(params: &CodeParams, blocks: Vec<Matrix>) -> Result<Self> {
        if blocks.len() != params.ell
            || blocks
                .iter()
                .any(|b| b.rows() != params.h || b.cols() != params.folded_block_len)
        {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "folded word must be {} blocks of {} x {}",
                    params.ell, params.h, params.folded_block_len
                ),
            });
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Matrix {
        &self.blocks[i]
    }

    pub fn add(&self, params: &CodeParams, other: &FoldedWord) -> FoldedWord {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| x.add(&params.field, y))
            .collect();
        FoldedWord { blocks }
    }

    pub fn sub(&self, params: &CodeParams, other: &FoldedWord) -> FoldedWord {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| x.sub(&params.field, y))
            .collect();
        FoldedWord { blocks }
    }
}

/// Encodes a message polynomial of degree < k. Block i holds the evaluations
/// f(gamma^((j-1)h + r))_{a_i} at row r, column j, stacked column-major.
pub fn encode(params: &CodeParams, f: &SkewPoly) -> Result<FoldedWord> {
    if let Some(deg) = f.degree() {
        if deg >= params.k {
            return Err(Error::MessageDegreeTooLarge { degree: deg, k: params.k });
        }
    }
    let fp = &params.field;
    let mut blocks = Vec::with_capacity(params.ell);
    for &ai in &params.a {
        let mut block = Matrix::zeros(fp, params.h, params.folded_block_len);
        for j in 0..params.folded_block_len {
            for r in 0..params.h {
                let b = params.locator(j * params.h + r);
                block[(r, j)] = f.op_evaluate(fp, b, ai);
            }
        }
        blocks.push(block);
    }
    Ok(FoldedWord { blocks })
}

/// Reshapes a length-n vector into a folded word; entry w of a block (0-based)
/// maps to row w mod h, column w / h.
pub fn fold(params: &CodeParams, v: &[FieldElement]) -> Result<FoldedWord> {
    if v.len() != params.n {
        return Err(Error::ShapeMismatch {
            context: format!("expected vector of length {}, got {}", params.n, v.len()),
        });
    }
    let fp = &params.field;
    let mut blocks = Vec::with_capacity(params.ell);
    for i in 0..params.ell {
        let seg = &v[i * params.block_len..(i + 1) * params.block_len];
        let mut block = Matrix::zeros(fp, params.h, params.folded_block_len);
        for (w, &x) in seg.iter().enumerate() {
            block[(w % params.h, w / params.h)] = x;
        }
        blocks.push(block);
    }
    Ok(FoldedWord { blocks })
}

/// Inverse of [`fold`].
pub fn unfold(params: &CodeParams, word: &FoldedWord) -> Vec<FieldElement> {
    let mut v = Vec::with_capacity(params.n);
    for block in &word.blocks {
        for j in 0..params.folded_block_len {
            for r in 0..params.h {
                v.push(block[(r, j)]);
            }
        }
    }
    v
}

/// Uniformly random message polynomial of degree < k.
pub fn random_message<R: Rng + ?Sized>(params: &CodeParams, rng: &mut R) -> SkewPoly {
    SkewPoly::from_coeffs((0..params.k).map(|_| params.field.random_element(rng)).collect())
}

// ---------------------------------------------------------------------------
// JSON-facing representations. Field elements travel as their integer
// encodings; the modulus as its m+1 little-endian coefficients.
// ---------------------------------------------------------------------------

/// Serialized form of [`CodeParams`]. `modulus` and `gamma` may be omitted on
/// input, in which case the deterministic defaults are derived; they are
/// always present on output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeParamsFile {
    pub q: u64,
    pub m: usize,
    #[serde(default)]
    pub modulus: Option<Vec<u64>>,
    #[serde(default)]
    pub gamma: Option<u64>,
    pub ell: usize,
    pub h: usize,
    #[serde(rename = "N")]
    pub n_folded: usize,
    pub k: usize,
}

impl CodeParams {
    pub fn to_file(&self) -> CodeParamsFile {
        CodeParamsFile {
            q: self.field.q(),
            m: self.field.m(),
            modulus: Some(self.field.modulus().to_vec()),
            gamma: Some(self.field.gamma().code()),
            ell: self.ell,
            h: self.h,
            n_folded: self.n_folded,
            k: self.k,
        }
    }

    pub fn from_file(file: &CodeParamsFile) -> Result<Self> {
        let field = match (&file.modulus, file.gamma) {
            (Some(modulus), Some(gamma)) => {
                FieldParams::with_modulus_and_gamma(file.q, file.m, modulus, gamma)?
            }
            (Some(modulus), None) => FieldParams::with_modulus(file.q, file.m, modulus)?,
            (None, Some(gamma)) => {
                let default = FieldParams::new(file.q, file.m)?;
                let modulus = default.modulus().to_vec();
                FieldParams::with_modulus_and_gamma(file.q, file.m, &modulus, gamma)?
            }
            (None, None) => FieldParams::new(file.q, file.m)?,
        };
        CodeParams::new(field, file.ell, file.h, file.n_folded, file.k)
    }
}

/// Serialized form of [`FoldedWord`]: blocks[i][r][j] is the integer encoding
/// of the entry at row r, column j of block i.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FoldedWordFile {
    pub blocks: Vec<Vec<Vec<u64>>>,
}

impl FoldedWord {
    pub fn to_file(&self) -> FoldedWordFile {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                (0..b.rows())
                    .map(|r| b.row(r).iter().map(|e| e.code()).collect())
                    .collect()
            })
            .collect();
        FoldedWordFile { blocks }
    }

    pub fn from_file(params: &CodeParams, file: &FoldedWordFile) -> Result<Self> {
        let fp = &params.field;
        let mut blocks = Vec::with_capacity(file.blocks.len());
        for rows in &file.blocks {
            let mut parsed = Vec::with_capacity(rows.len());
            for row in rows {
                let row: Result<Vec<FieldElement>> =
                    row.iter().map(|&c| fp.element_from_code(c)).collect();
                parsed.push(row?);
            }
            blocks.push(Matrix::from_rows(parsed)?);
        }
        FoldedWord::from_blocks(params, blocks)
    }
}
