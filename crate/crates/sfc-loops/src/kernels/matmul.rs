//! Blocked matrix multiplication over a curve-ordered tile grid.
//!
//! Output tiles (I, J) are traversed in 2-D curve order through the loop
//! engine; inside a tile the shared dimension runs in full ascending order,
//! so every output cell folds its products exactly like the naive triple
//! loop — results are bit-identical across worker counts, curve families
//! and the oracle. (A 3-D (I, J, K) traversal would interleave each cell's
//! K contributions across workers and lose that reproducibility, so the
//! shared dimension stays inside the visit.)

use crate::curve::CurveSpec;
use crate::data::SplitMix64;
use crate::engine::{self, LoopDomain, Visitor};
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Spec("matrix dimensions must be >= 1".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Spec(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Matrix::new(rows, cols, vec![0.0; rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Matrix::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        Ok(m)
    }

    /// Uniform [0,1) entries from the seeded generator.
    pub fn random(rows: usize, cols: usize, seed: u64) -> Result<Self> {
        let mut rng = SplitMix64::new(seed);
        Matrix::new(rows, cols, (0..rows * cols).map(|_| rng.next_f64()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

#[derive(Clone, Debug)]
pub struct MatmulParams {
    pub workers: usize,
    /// log2 of the square tile side.
    pub tile_bits: u32,
}

impl Default for MatmulParams {
    fn default() -> Self {
        MatmulParams {
            workers: 1,
            tile_bits: 5,
        }
    }
}

struct TileVisitor<'a> {
    a: &'a Matrix,
    b: &'a Matrix,
    ts: usize,
}

impl Visitor for TileVisitor<'_> {
    /// Computed output tiles: (tile row, tile col, row-major tile data).
    type Acc = Vec<(usize, usize, Vec<f64>)>;

    fn init(&self) -> Self::Acc {
        Vec::new()
    }

    fn visit(&self, tuple: &[u64], acc: &mut Self::Acc) -> Result<()> {
        let (ti, tj) = (tuple[0] as usize, tuple[1] as usize);
        let i0 = ti * self.ts;
        let i1 = (i0 + self.ts).min(self.a.rows());
        let j0 = tj * self.ts;
        let j1 = (j0 + self.ts).min(self.b.cols());
        let (tw, th) = (j1 - j0, i1 - i0);
        let mut tile = vec![0.0f64; th * tw];
        // full ascending k per tile: per-cell fold order equals the naive
        // triple loop
        for k in 0..self.a.cols() {
            let brow = &self.b.row(k)[j0..j1];
            for i in i0..i1 {
                let aik = self.a.get(i, k);
                let out = &mut tile[(i - i0) * tw..(i - i0 + 1) * tw];
                for (o, &bkj) in out.iter_mut().zip(brow) {
                    *o += aik * bkj;
                }
            }
        }
        acc.push((ti, tj, tile));
        Ok(())
    }

    fn merge(&self, mut left: Self::Acc, mut right: Self::Acc) -> Self::Acc {
        left.append(&mut right);
        left
    }
}

/// C = A · B with tiles visited in curve order. The spec's family drives
/// the 2-D tile traversal (Peano included); results are bit-identical for
/// every worker count and family.
pub fn matmul(a: &Matrix, b: &Matrix, spec: &CurveSpec, params: &MatmulParams) -> Result<Matrix> {
    matmul_reported(a, b, spec, params).map(|(c, _)| c)
}

/// [`matmul`] plus the tile pass schedule report.
pub fn matmul_reported(
    a: &Matrix,
    b: &Matrix,
    spec: &CurveSpec,
    params: &MatmulParams,
) -> Result<(Matrix, engine::ScheduleReport)> {
    if a.cols() != b.rows() {
        return Err(Error::Contract(format!(
            "shape mismatch: {}x{} . {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if params.workers == 0 {
        return Err(Error::Contract("workers must be >= 1".into()));
    }
    let ts = 1usize << params.tile_bits;
    let visitor = TileVisitor { a, b, ts };
    let tile_spec = CurveSpec::new(spec.family(), 2, 0)?;
    let domain = LoopDomain::full(&[
        a.rows().div_ceil(ts) as u64,
        b.cols().div_ceil(ts) as u64,
    ])?;
    let (tiles, report) =
        engine::parallel_execute(&domain, &tile_spec, &visitor, params.workers, 0)?;
    let mut c = Matrix::zeros(a.rows(), b.cols())?;
    for (ti, tj, tile) in tiles {
        let i0 = ti * ts;
        let j0 = tj * ts;
        let tw = (j0 + ts).min(b.cols()) - j0;
        for (r, row) in tile.chunks(tw).enumerate() {
            let base = (i0 + r) * b.cols() + j0;
            c.data[base..base + tw].copy_from_slice(row);
        }
    }
    Ok((c, report))
}

/// Reference oracle: naive triple loop, ascending k per cell.
pub fn naive_matmul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols() != b.rows() {
        return Err(Error::Contract(format!(
            "shape mismatch: {}x{} . {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut c = Matrix::zeros(a.rows(), b.cols())?;
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = 0.0;
            for k in 0..a.cols() {
                s += a.get(i, k) * b.get(k, j);
            }
            c.data[i * b.cols() + j] = s;
        }
    }
    Ok(c)
}

/// Largest |kernel - oracle| / max(1, |oracle|) over all cells.
pub fn max_relative_error(got: &Matrix, want: &Matrix) -> f64 {
    got.data()
        .iter()
        .zip(want.data())
        .map(|(g, w)| (g - w).abs() / w.abs().max(1.0))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveFamily;

    fn spec(family: CurveFamily) -> CurveSpec {
        CurveSpec::new(family, 2, 1).unwrap()
    }

    #[test]
    fn identity_is_exact() {
        let a = Matrix::random(17, 17, 2).unwrap();
        let c = matmul(
            &Matrix::identity(17).unwrap(),
            &a,
            &spec(CurveFamily::Hilbert),
            &MatmulParams::default(),
        )
        .unwrap();
        assert_eq!(c.data(), a.data());
    }

    #[test]
    fn hand_arithmetic_2x2() {
        let a = Matrix::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = Matrix::new(2, 2, vec![5.0, 6.0, 7.0, 8.0]).unwrap();
        let c = matmul(&a, &b, &spec(CurveFamily::ZOrder), &MatmulParams::default()).unwrap();
        assert_eq!(c.data(), &[19.0, 22.0, 43.0, 50.0]);
    }

    #[test]
    fn matches_oracle_bitwise() {
        let a = Matrix::random(37, 23, 5).unwrap();
        let b = Matrix::random(23, 41, 6).unwrap();
        let want = naive_matmul(&a, &b).unwrap();
        let mut outputs = Vec::new();
        for family in [CurveFamily::Hilbert, CurveFamily::ZOrder, CurveFamily::Peano] {
            for workers in [1usize, 4] {
                let params = MatmulParams {
                    workers,
                    tile_bits: 3,
                };
                let c = matmul(&a, &b, &spec(family), &params).unwrap();
                assert_eq!(c.data(), want.data(), "{family:?} workers={workers}");
                outputs.push(c);
            }
        }
        for o in &outputs[1..] {
            assert_eq!(o.data(), outputs[0].data());
        }
    }

    #[test]
    fn shape_mismatch_rejected() {
        let a = Matrix::zeros(2, 3).unwrap();
        let b = Matrix::zeros(2, 2).unwrap();
        assert!(matmul(&a, &b, &spec(CurveFamily::Hilbert), &MatmulParams::default()).is_err());
        assert!(naive_matmul(&a, &b).is_err());
    }
}
