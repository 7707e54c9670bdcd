use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, MulAssign};

use num_complex::Complex64;
use serde_json::Value;

use super::KernelError;

/// Entry type of a step kernel.
pub trait Scalar:
    Copy + Debug + PartialEq + Send + Sync + Add<Output = Self> + Mul<Output = Self> + AddAssign + MulAssign + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn abs(self) -> f64;
    fn conj(self) -> Self;
    fn is_finite(self) -> bool;
    fn scale(self, s: f64) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn conj(self) -> Self {
        self
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn abs(self) -> f64 {
        self.norm()
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

/// Piecewise-constant function on `[0,1]^k` over a uniform `n`-cell grid,
/// stored row-major (first coordinate slowest).
#[derive(Debug, Clone, PartialEq)]
pub struct StepKernel<T: Scalar> {
    arity: usize,
    n: usize,
    values: Vec<T>,
    bound: f64,
    symmetric: bool,
}

impl<T: Scalar> StepKernel<T> {
    pub fn new(arity: usize, n: usize, values: Vec<T>) -> Result<Self, KernelError> {
        if arity == 0 || n == 0 {
            return Err(KernelError::Shape("arity and resolution must be positive".into()));
        }
        let len = n
            .checked_pow(arity as u32)
            .ok_or_else(|| KernelError::Shape(format!("{n}^{arity} cells overflow")))?;
        if values.len() != len {
            return Err(KernelError::Shape(format!("expected {len} values, got {}", values.len())));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(KernelError::NonFinite { index: i });
        }
        let bound = values.iter().fold(0.0f64, |b, v| b.max(v.abs()));
        Ok(StepKernel { arity, n, values, bound, symmetric: false })
    }

    /// A 2-ary kernel that must satisfy `f(i,j) = f(j,i)` exactly.
    pub fn symmetric(n: usize, values: Vec<T>) -> Result<Self, KernelError> {
        let mut k = Self::new(2, n, values)?;
        for i in 0..n {
            for j in 0..i {
                if k.values[i * n + j] != k.values[j * n + i] {
                    return Err(KernelError::NotSymmetric { i, j });
                }
            }
        }
        k.symmetric = true;
        Ok(k)
    }

    pub fn constant(arity: usize, n: usize, c: T) -> Self {
        let mut k = Self::new(arity, n, vec![c; n.pow(arity as u32)]).expect("constant kernel");
        k.symmetric = arity == 2;
        k
    }

    pub fn from_fn(arity: usize, n: usize, mut f: impl FnMut(&[usize]) -> T) -> Result<Self, KernelError> {
        let mut idx = vec![0usize; arity];
        let len = n.pow(arity as u32);
        let mut values = Vec::with_capacity(len);
        for _ in 0..len {
            values.push(f(&idx));
            for d in (0..arity).rev() {
                idx[d] += 1;
                if idx[d] < n {
                    break;
                }
                idx[d] = 0;
            }
        }
        Self::new(arity, n, values)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
    pub fn resolution(&self) -> usize {
        self.n
    }
    pub fn values(&self) -> &[T] {
        &self.values
    }
    pub fn bound(&self) -> f64 {
        self.bound
    }
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn get(&self, idx: &[usize]) -> T {
        self.values[idx.iter().fold(0, |acc, &i| acc * self.n + i)]
    }

    fn with_values(&self, values: Vec<T>) -> Self {
        let bound = values.iter().fold(0.0f64, |b, v| b.max(v.abs()));
        StepKernel { arity: self.arity, n: self.n, values, bound, symmetric: self.symmetric }
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        self.with_values(self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn abs(&self) -> StepKernel<f64> {
        let values: Vec<f64> = self.values.iter().map(|v| v.abs()).collect();
        StepKernel { arity: self.arity, n: self.n, bound: self.bound, values, symmetric: self.symmetric }
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map(|v| v.scale(c))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, KernelError> {
        if self.arity != other.arity || self.n != other.n {
            return Err(KernelError::Shape("kernels differ in shape".into()));
        }
        let mut k = self.with_values(self.values.iter().zip(&other.values).map(|(&a, &b)| a + b).collect());
        k.symmetric = self.symmetric && other.symmetric;
        Ok(k)
    }

    /// `(f⊗g)((i,i'),…) = f(i,…)·g(i',…)` on the `n·n'` product grid.
    pub fn tensor(&self, other: &Self) -> Result<Self, KernelError> {
        if self.arity != other.arity {
            return Err(KernelError::Shape("kernels differ in arity".into()));
        }
        let (n1, n2) = (self.n, other.n);
        let mut k = Self::from_fn(self.arity, n1 * n2, |idx| {
            let a: Vec<usize> = idx.iter().map(|&i| i / n2).collect();
            let b: Vec<usize> = idx.iter().map(|&i| i % n2).collect();
            self.get(&a) * other.get(&b)
        })?;
        k.symmetric = self.symmetric && other.symmetric;
        Ok(k)
    }
}

impl StepKernel<f64> {
    pub fn to_complex(&self) -> StepKernel<Complex64> {
        StepKernel {
            arity: self.arity,
            n: self.n,
            values: self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            bound: self.bound,
            symmetric: self.symmetric,
        }
    }

    /// Square CSV matrix, no header.
    pub fn from_csv(text: &str) -> Result<Self, KernelError> {
        let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (r, record) in reader.records().enumerate() {
            let record = record.map_err(|e| KernelError::Parse(e.to_string()))?;
            let row = record
                .iter()
                .enumerate()
                .map(|(c, s)| s.parse::<f64>().map_err(|_| KernelError::Parse(format!("row {r}, column {c}: {s:?}"))))
                .collect::<Result<Vec<f64>, _>>()?;
            rows.push(row);
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(KernelError::Shape(format!("CSV kernel must be square, got {n} rows")));
        }
        Self::new(2, n, rows.into_iter().flatten().collect())
    }

    pub fn to_csv(&self) -> Result<String, KernelError> {
        if self.arity != 2 {
            return Err(KernelError::Shape("CSV holds 2-ary kernels only".into()));
        }
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        for row in self.values.chunks(self.n) {
            w.write_record(row.iter().map(|v| format!("{v:?}"))).map_err(|e| KernelError::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| KernelError::Parse(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("utf8"))
    }
}

/// A kernel read from a file, real or complex.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyKernel {
    Real(StepKernel<f64>),
    Complex(StepKernel<Complex64>),
}

fn flatten(v: &Value, depth: usize, shape: &mut Vec<usize>, out: &mut Vec<f64>) -> Result<(), KernelError> {
    match v {
        Value::Array(items) => {
            if shape.len() <= depth {
                shape.push(items.len());
            } else if shape[depth] != items.len() {
                return Err(KernelError::Shape(format!("ragged array at depth {depth}")));
            }
            for item in items {
                flatten(item, depth + 1, shape, out)?;
            }
            Ok(())
        }
        _ if depth != shape.len() => Err(KernelError::Shape(format!("ragged array at depth {depth}"))),
        _ => {
            out.push(v.as_f64().ok_or_else(|| KernelError::Parse(format!("not a number: {v}")))?);
            Ok(())
        }
    }
}

/// Parses nested arrays of numbers, or `{"complex": true, "values": …}` with
/// `[re, im]` leaves. The depth of nesting is the arity.
pub fn kernel_from_json(text: &str) -> Result<AnyKernel, KernelError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| KernelError::Parse(e.to_string()))?;
    let (complex, body) = match &doc {
        Value::Object(map) => {
            let complex = map.get("complex").and_then(Value::as_bool).unwrap_or(false);
            let body = map.get("values").ok_or_else(|| KernelError::Parse("missing \"values\"".into()))?;
            (complex, body)
        }
        _ => (false, &doc),
    };
    if complex {
        let mut vals = Vec::new();
        let mut shape = Vec::new();
        complex_flatten(body, 0, &mut shape, &mut vals)?;
        let (arity, n) = grid(&shape)?;
        Ok(AnyKernel::Complex(StepKernel::new(arity, n, vals)?))
    } else {
        let mut vals = Vec::new();
        let mut shape = Vec::new();
        flatten(body, 0, &mut shape, &mut vals)?;
        let (arity, n) = grid(&shape)?;
        Ok(AnyKernel::Real(StepKernel::new(arity, n, vals)?))
    }
}

fn complex_flatten(v: &Value, depth: usize, shape: &mut Vec<usize>, out: &mut Vec<Complex64>) -> Result<(), KernelError> {
    let items = v.as_array().ok_or_else(|| KernelError::Parse(format!("expected an array, got {v}")))?;
    let is_pair = items.len() == 2 && items.iter().all(Value::is_number);
    if is_pair && depth > 0 && shape.len() == depth {
        out.push(Complex64::new(items[0].as_f64().unwrap(), items[1].as_f64().unwrap()));
        return Ok(());
    }
    if shape.len() <= depth {
        shape.push(items.len());
    } else if shape[depth] != items.len() {
        return Err(KernelError::Shape(format!("ragged array at depth {depth}")));
    }
    for item in items {
        complex_flatten(item, depth + 1, shape, out)?;
    }
    Ok(())
}

fn grid(shape: &[usize]) -> Result<(usize, usize), KernelError> {
    let n = *shape.first().ok_or_else(|| KernelError::Shape("empty kernel".into()))?;
    if shape.iter().any(|&s| s != n) {
        return Err(KernelError::Shape(format!("kernel grid must be cubic, got {shape:?}")));
    }
    Ok((shape.len(), n))
}

fn nest<T>(values: &[T], arity: usize, n: usize, leaf: &dyn Fn(&T) -> Value) -> Value {
    if arity == 0 {
        return leaf(&values[0]);
    }
    let chunk = values.len() / n;
    Value::Array((0..n).map(|i| nest(&values[i * chunk..(i + 1) * chunk], arity - 1, n, leaf)).collect())
}

pub fn kernel_to_json(k: &AnyKernel) -> String {
    let v = match k {
        AnyKernel::Real(f) => nest(f.values(), f.arity(), f.resolution(), &|&x| Value::from(x)),
        AnyKernel::Complex(f) => {
            let body = nest(f.values(), f.arity(), f.resolution(), &|z: &Complex64| Value::from(vec![z.re, z.im]));
            serde_json::json!({ "complex": true, "values": body })
        }
    };
    v.to_string()
}

/// Kernels `f_1..f_m` with an edge colouring `χ: E(H) → [m]`.
#[derive(Debug, Clone)]
pub struct ColoredFamily<T: Scalar> {
    kernels: Vec<StepKernel<T>>,
    coloring: Vec<usize>,
}

impl<T: Scalar> ColoredFamily<T> {
    pub fn new(kernels: Vec<StepKernel<T>>, coloring: Vec<usize>) -> Result<Self, KernelError> {
        let first = kernels.first().ok_or_else(|| KernelError::Shape("family needs a kernel".into()))?;
        if kernels.iter().any(|k| k.arity() != first.arity() || k.resolution() != first.resolution()) {
            return Err(KernelError::Shape("family kernels differ in shape".into()));
        }
        if let Some(&c) = coloring.iter().find(|&&c| c >= kernels.len()) {
            return Err(KernelError::Shape(format!("colour {c} has no kernel")));
        }
        Ok(ColoredFamily { kernels, coloring })
    }

    pub fn monochromatic(kernel: StepKernel<T>, edges: usize) -> Self {
        ColoredFamily { kernels: vec![kernel], coloring: vec![0; edges] }
    }

    pub fn kernels(&self) -> &[StepKernel<T>] {
        &self.kernels
    }
    pub fn coloring(&self) -> &[usize] {
        &self.coloring
    }
    pub fn arity(&self) -> usize {
        self.kernels[0].arity()
    }
    pub fn resolution(&self) -> usize {
        self.kernels[0].resolution()
    }
    pub fn kernel_for(&self, edge: usize) -> &StepKernel<T> {
        &self.kernels[self.coloring[edge]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(StepKernel::new(2, 2, vec![1.0; 3]).is_err());
        assert_eq!(StepKernel::new(2, 2, vec![1.0, f64::NAN, 0.0, 0.0]), Err(KernelError::NonFinite { index: 1 }));
        assert_eq!(StepKernel::symmetric(2, vec![1.0, 2.0, 3.0, 1.0]), Err(KernelError::NotSymmetric { i: 1, j: 0 }));
        let k = StepKernel::symmetric(2, vec![1.0, -2.5, -2.5, 1.0]).unwrap();
        assert_eq!(k.bound(), 2.5);
        assert_eq!(k.get(&[0, 1]), -2.5);
    }

    #[test]
    fn csv_and_json_round_trip() {
        let k = StepKernel::new(2, 3, (0..9).map(|i| i as f64 / 4.0).collect()).unwrap();
        assert_eq!(StepKernel::from_csv(&k.to_csv().unwrap()).unwrap(), k);
        let any = AnyKernel::Real(StepKernel::new(3, 2, (0..8).map(|i| i as f64).collect()).unwrap());
        assert_eq!(kernel_from_json(&kernel_to_json(&any)).unwrap(), any);
        let z = StepKernel::new(2, 2, (0..4).map(|i| Complex64::new(i as f64, -1.0)).collect()).unwrap();
        let any = AnyKernel::Complex(z);
        assert_eq!(kernel_from_json(&kernel_to_json(&any)).unwrap(), any);
        assert!(kernel_from_json("[[1,2],[3]]").is_err());
        assert!(kernel_from_json("[[1,2,3],[4,5,6]]").is_err());
        match kernel_from_json("[[0.5, 1], [1, 0.25]]").unwrap() {
            AnyKernel::Real(k) => assert_eq!(k.get(&[1, 1]), 0.25),
            _ => panic!("expected a real kernel"),
        }
    }

    #[test]
    fn tensor_layout() {
        let f = StepKernel::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let g = StepKernel::new(2, 2, vec![1.0, 10.0, 100.0, 1000.0]).unwrap();
        let t = f.tensor(&g).unwrap();
        assert_eq!(t.resolution(), 4);
        // cell (1,0) x (0,1)
        assert_eq!(t.get(&[2, 1]), 3.0 * 10.0);
    }
}
