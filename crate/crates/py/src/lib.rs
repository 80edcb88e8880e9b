//! Python bindings, exposed as the `richrt` module.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use richrt::recurrence::census as census_run;
use richrt::spectral::{asymptotic_ce_report, lambda_factor, phi_matrix};
use richrt::{palindromes, recurrence, spectral, word, Error};

create_exception!(richrt, UndecidedError, PyRuntimeError);
create_exception!(richrt, CheckFailedError, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Undecided(m) => UndecidedError::new_err(m),
        e @ (Error::CheckFailed { .. } | Error::InvariantBreach(_)) => CheckFailedError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Word", module = "richrt", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyWord(word::Word);

#[pymethods]
impl PyWord {
    #[new]
    #[pyo3(signature = (letters, alphabet_size = None))]
    fn new(letters: Vec<u32>, alphabet_size: Option<usize>) -> PyResult<Self> {
        let k = alphabet_size.unwrap_or_else(|| letters.iter().max().map_or(1, |&m| m as usize + 1));
        word::Word::from_indices(letters, k).map(PyWord).map_err(py_err)
    }

    #[getter]
    fn letters(&self) -> Vec<u32> {
        self.0.to_indices()
    }

    #[getter]
    fn alphabet_size(&self) -> usize {
        self.0.alphabet_size()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word({:?}, alphabet_size={})", self.0.to_indices(), self.0.alphabet_size())
    }

    fn __add__(&self, other: &PyWord) -> PyWord {
        PyWord(self.0.concat(&other.0))
    }

    fn factor(&self, start: usize, length: usize) -> PyResult<PyWord> {
        if start + length > self.0.len() {
            return Err(PyIndexError::new_err("factor out of range"));
        }
        Ok(PyWord(self.0.factor(start, length)))
    }

    fn mirror(&self) -> PyWord {
        PyWord(word::mirror(&self.0))
    }

    fn is_palindrome(&self) -> bool {
        word::is_palindrome(self.0.letters())
    }

    fn parikh(&self) -> Vec<BigInt> {
        word::parikh(&self.0).into_counts()
    }

    fn minimal_period(&self) -> PyResult<usize> {
        word::minimal_period(&self.0).map_err(py_err)
    }

    fn exponent(&self) -> PyResult<BigRational> {
        word::exponent(&self.0).map_err(py_err)
    }

    /// Highest exponent over factors of length at least `min_len`, as
    /// `(exponent, start, period)`.
    #[pyo3(signature = (min_len = 1))]
    fn max_factor_exponent(&self, min_len: usize) -> PyResult<(BigRational, usize, usize)> {
        let r = word::max_factor_exponent(&self.0, min_len).map_err(py_err)?;
        Ok((r.exponent, r.start, r.period))
    }

    fn distinct_palindromes(&self) -> usize {
        palindromes::Eertree::build(self.0.letters()).distinct_nonempty()
    }

    fn richness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = palindromes::richness(&self.0);
        let d = PyDict::new(py);
        d.set_item("length", r.length)?;
        d.set_item("palindromes", r.palindromes)?;
        d.set_item("defect", r.defect)?;
        d.set_item("first_defect_position", r.first_defect_position)?;
        Ok(d)
    }

    /// `True` iff every complete return word to a palindrome of length at
    /// most `max_len` is a palindrome.
    fn crw_rich(&self, max_len: usize) -> PyResult<bool> {
        Ok(palindromes::richness_via_crw(&self.0, max_len).map_err(py_err)?.passed())
    }
}

#[pyclass(name = "Morphism", module = "richrt", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyMorphism(richrt::Morphism);

#[pymethods]
impl PyMorphism {
    #[new]
    fn new(images: Vec<Vec<u32>>, target_size: usize) -> PyResult<Self> {
        richrt::Morphism::from_indices(images, target_size).map(PyMorphism).map_err(py_err)
    }

    /// The morphism `φ_D` over `D` letters.
    #[staticmethod]
    #[pyo3(name = "phi")]
    fn phi(big_d: usize) -> PyResult<Self> {
        richrt::make_phi(big_d).map(PyMorphism).map_err(py_err)
    }

    #[getter]
    fn images(&self) -> Vec<Vec<u32>> {
        self.0.images().iter().map(word::Word::to_indices).collect()
    }

    fn apply(&self, w: &PyWord) -> PyResult<PyWord> {
        self.0.apply(&w.0).map(PyWord).map_err(py_err)
    }

    fn fixed_point(&self, n: usize) -> PyResult<PyWord> {
        richrt::fixed_point_prefix(&self.0, n).map(PyWord).map_err(py_err)
    }

    fn incidence_matrix(&self) -> Vec<Vec<BigInt>> {
        self.0.incidence_matrix().to_rows()
    }

    fn is_primitive(&self) -> bool {
        richrt::is_primitive(&self.0.incidence_matrix())
    }

    fn p_ret_witness(&self) -> Option<PyWord> {
        richrt::p_ret_witness(&self.0).map(PyWord)
    }

    fn __repr__(&self) -> String {
        format!("Morphism({:?})", self.images())
    }
}

#[pyclass(name = "WeightedMorphism", module = "richrt", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyWeightedMorphism(richrt::WeightedMorphism);

#[pymethods]
impl PyWeightedMorphism {
    #[new]
    fn new(weights: Vec<u64>) -> PyResult<Self> {
        richrt::WeightedMorphism::with_weights(&weights).map(PyWeightedMorphism).map_err(py_err)
    }

    /// The morphism `π` on `2d + 1` letters.
    #[staticmethod]
    fn pi(d: usize) -> PyResult<Self> {
        richrt::make_weighted_pi(d).map(PyWeightedMorphism).map_err(py_err)
    }

    #[getter]
    fn weights(&self) -> Vec<u64> {
        self.0.weights().to_vec()
    }

    fn base(&self) -> PyMorphism {
        PyMorphism(self.0.base().clone())
    }

    fn apply(&self, w: &PyWord) -> PyResult<PyWord> {
        self.0.apply(&w.0).map(PyWord).map_err(py_err)
    }

    /// The unique parse of `w` as a dict, or `None` if it has several.
    fn decode<'py>(&self, py: Python<'py>, w: &PyWord) -> PyResult<Option<Bound<'py, PyDict>>> {
        let Some(dec) = richrt::decode(&self.0, &w.0).map_err(py_err)? else {
            return Ok(None);
        };
        let d = PyDict::new(py);
        d.set_item("offset", dec.offset)?;
        d.set_item("head", dec.head)?;
        d.set_item("pre_image", dec.pre_image.iter().map(|l| l.0).collect::<Vec<_>>())?;
        d.set_item("tail", dec.tail)?;
        d.set_item("covering", dec.covering.iter().map(|l| l.0).collect::<Vec<_>>())?;
        Ok(Some(d))
    }
}

#[pyclass(name = "FactorIndex", module = "richrt", frozen)]
pub struct PyFactorIndex(richrt::FactorIndex);

#[pymethods]
impl PyFactorIndex {
    #[new]
    fn new(prefix: &PyWord, cutoff: usize) -> PyResult<Self> {
        richrt::build_index(&prefix.0, cutoff).map(PyFactorIndex).map_err(py_err)
    }

    #[getter]
    fn cutoff(&self) -> usize {
        self.0.cutoff()
    }

    fn occurrences(&self, w: &PyWord) -> Vec<usize> {
        self.0.occurrences(&w.0)
    }

    fn bilateral_order(&self, w: &PyWord) -> PyResult<i64> {
        self.0.bilateral_order(&w.0).map_err(py_err)
    }

    /// Distinct return words with multiplicities, shortest first.
    fn return_words(&self, w: &PyWord) -> PyResult<Vec<(PyWord, usize)>> {
        let r = self.0.return_words(&w.0).map_err(py_err)?;
        Ok(r.words.into_iter().map(|(w, c)| (PyWord(w), c)).collect())
    }

    fn bispecials<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let mut out = Vec::new();
        for b in self.0.bispecials() {
            let d = PyDict::new(py);
            d.set_item("factor", PyWord(b.factor))?;
            d.set_item("bilateral_order", b.bilateral_order)?;
            d.set_item("palindromic", b.palindromic)?;
            d.set_item("left", b.lext.iter().map(|l| l.0).collect::<Vec<_>>())?;
            d.set_item("right", b.rext.iter().map(|l| l.0).collect::<Vec<_>>())?;
            out.push(d);
        }
        Ok(out)
    }

    /// `1 + max |w|/|r|` over trusted bispecials `w` with shortest return `r`.
    fn critical_exponent_estimate(&self) -> PyResult<BigRational> {
        Ok(richrt::critical_exponent_estimate(&self.0).map_err(py_err)?.value)
    }
}

/// Certified enclosure `(lo, hi)` of the asymptotic critical exponent of
/// `u_D`, of width at most `10^-digits`.
#[pyfunction]
#[pyo3(signature = (big_d, digits = 12))]
fn asymptotic_ce(big_d: usize, digits: u32) -> PyResult<(BigRational, BigRational)> {
    let width = BigRational::new(1.into(), BigInt::from(10).pow(digits));
    let r = asymptotic_ce_report(big_d, &width).map_err(py_err)?;
    Ok((r.estar.lo().clone(), r.estar.hi().clone()))
}

#[pyfunction]
fn f_vector(d: usize, n: usize) -> PyResult<Vec<BigInt>> {
    Ok(recurrence::f_vector(d, n).map_err(py_err)?.into_counts())
}

#[pyfunction]
fn f_closed_form(d: usize, n: usize) -> PyResult<Vec<BigInt>> {
    Ok(recurrence::f_closed_form(d, n).map_err(py_err)?.into_counts())
}

/// Coefficients of the characteristic polynomial of `M`, constant first.
#[pyfunction]
fn char_poly(d: usize) -> PyResult<Vec<BigInt>> {
    let m = phi_matrix(d).map_err(py_err)?;
    Ok(spectral::char_poly(&m).map_err(py_err)?.coeffs().to_vec())
}

#[pyfunction]
fn hamilton_cayley_check(d: usize) -> PyResult<()> {
    recurrence::hamilton_cayley_check(d).map_err(py_err)
}

#[pyfunction]
fn spectral_identities(d: usize) -> PyResult<()> {
    spectral::eigenvector_check(d).map_err(py_err)?;
    spectral::udotv_check(d).map_err(py_err)?;
    spectral::h_orthogonality(d).map_err(py_err)
}

/// Certified weighted inequality over every family for `n ≤ n_max`.
#[pyfunction]
fn verify_weight_inequality<'py>(py: Python<'py>, d: usize, n_max: usize) -> PyResult<Bound<'py, PyDict>> {
    let lambda = spectral::AlgebraicNumber::isolate_ints(&lambda_factor(d), 2, 3).map_err(py_err)?;
    let r = recurrence::verify_weight_inequality(d, n_max, &lambda).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("verdict", r.verdict.to_string())?;
    out.set_item("rows", r.rows.len())?;
    out.set_item("min_margin", r.min_margin)?;
    out.set_item("lambda", (r.lambda.lo().clone(), r.lambda.hi().clone()))?;
    Ok(out)
}

#[pyfunction]
fn verify_dominance(d: usize, n_max: usize) -> PyResult<usize> {
    Ok(recurrence::verify_dominance(d, n_max).map_err(py_err)?.checked)
}

#[pyfunction]
fn verify_explicit_bs(d: usize, n_max: usize) -> PyResult<usize> {
    Ok(recurrence::verify_explicit_bs(d, n_max).map_err(py_err)?.checked)
}

/// Matches the bispecials of a `u_{2d+1}` prefix against the predicted series.
#[pyfunction]
fn census<'py>(py: Python<'py>, d: usize, prefix_len: usize, cutoff: usize) -> PyResult<Bound<'py, PyDict>> {
    let u = richrt::fixed_point_prefix(&richrt::make_phi(2 * d + 1).map_err(py_err)?, prefix_len).map_err(py_err)?;
    let idx = richrt::build_index(&u, cutoff).map_err(py_err)?;
    let r = census_run(d, &idx).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("observed", r.observed)?;
    out.set_item("predicted", r.predicted)?;
    out.set_item("bijective", r.is_bijective())?;
    out.set_item("passed", r.passed())?;
    out.set_item("returns_checked", r.returns_checked)?;
    Ok(out)
}

#[pymodule]
#[pyo3(name = "richrt")]
pub fn richrt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("UndecidedError", m.py().get_type::<UndecidedError>())?;
    m.add("CheckFailedError", m.py().get_type::<CheckFailedError>())?;
    m.add_class::<PyWord>()?;
    m.add_class::<PyMorphism>()?;
    m.add_class::<PyWeightedMorphism>()?;
    m.add_class::<PyFactorIndex>()?;
    m.add_function(wrap_pyfunction!(asymptotic_ce, m)?)?;
    m.add_function(wrap_pyfunction!(f_vector, m)?)?;
    m.add_function(wrap_pyfunction!(f_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(char_poly, m)?)?;
    m.add_function(wrap_pyfunction!(hamilton_cayley_check, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_identities, m)?)?;
    m.add_function(wrap_pyfunction!(verify_weight_inequality, m)?)?;
    m.add_function(wrap_pyfunction!(verify_dominance, m)?)?;
    m.add_function(wrap_pyfunction!(verify_explicit_bs, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    Ok(())
}
