use std::sync::Arc;

use covqsc_core::covariant_weyl::{self as cw, CovariantConfig};
use covqsc_core::fock::{self, FockSpace};
use covqsc_core::group::{parse_word, GroupWord};
use covqsc_core::hyperboloid::{self, FiberedSection, SectionDocument};
use covqsc_core::induced_rep;
use covqsc_core::linalg::{CMatrix, CVector};
use covqsc_core::lorentz;
use nalgebra::Vector2;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

type Rows = Vec<Vec<Complex64>>;

fn err(e: covqsc_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rows(m: &CMatrix) -> Rows {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn from_rows(rows: &Rows) -> PyResult<CMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    Ok(CMatrix::from_fn(n, m, |i, j| rows[i][j]))
}

fn vector(v: &[Complex64]) -> CVector {
    CVector::from_column_slice(v)
}

#[pyclass(name = "FourVector", frozen, from_py_object)]
#[derive(Clone)]
struct PyFourVector(lorentz::FourVector);

#[pymethods]
impl PyFourVector {
    #[new]
    fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        Self(lorentz::FourVector::new(p0, p1, p2, p3))
    }

    #[staticmethod]
    fn on_shell(mass: f64, q: [f64; 3]) -> Self {
        Self(lorentz::FourVector::on_shell(mass, q))
    }

    fn to_list(&self) -> [f64; 4] {
        self.0.to_array()
    }

    fn minkowski(&self, other: &PyFourVector) -> f64 {
        lorentz::minkowski_inner(&self.0, &other.0)
    }

    /// `(orbit tag, p·p, little group tag)`
    #[pyo3(signature = (tol = 1e-9))]
    fn classify(&self, tol: f64) -> (String, f64, String) {
        let c = lorentz::classify_orbit(&self.0, tol);
        (format!("{:?}", c.tag), c.mass_sq, format!("{:?}", lorentz::little_group_of(&c)))
    }

    fn __repr__(&self) -> String {
        format!("FourVector{}", self.0)
    }
}

#[pyclass(name = "LorentzTransform", frozen, from_py_object)]
#[derive(Clone)]
struct PyLorentz(lorentz::LorentzTransform);

#[pymethods]
impl PyLorentz {
    #[staticmethod]
    fn identity() -> Self {
        Self(lorentz::LorentzTransform::identity())
    }

    #[staticmethod]
    fn rotation(axis: [f64; 3], angle: f64) -> PyResult<Self> {
        lorentz::rotation(axis, angle).map(Self).map_err(err)
    }

    #[staticmethod]
    fn boost(axis: [f64; 3], rapidity: f64) -> PyResult<Self> {
        lorentz::boost(axis, rapidity).map(Self).map_err(err)
    }

    #[staticmethod]
    fn standard_boost(p: &PyFourVector, mass: f64) -> PyResult<Self> {
        lorentz::standard_boost(&p.0, mass).map(Self).map_err(err)
    }

    #[staticmethod]
    fn wigner_rotation(g: &PyLorentz, p: &PyFourVector, mass: f64) -> PyResult<Self> {
        lorentz::wigner_rotation(&g.0, &p.0, mass).map(Self).map_err(err)
    }

    fn matrix(&self) -> Vec<Vec<f64>> {
        let m = self.0.matrix();
        (0..4).map(|i| (0..4).map(|j| m[(i, j)]).collect()).collect()
    }

    fn apply(&self, p: &PyFourVector) -> PyFourVector {
        PyFourVector(self.0.apply(&p.0))
    }

    fn compose(&self, other: &PyLorentz) -> Self {
        Self(self.0.compose(&other.0))
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn metric_defect(&self) -> f64 {
        self.0.metric_defect()
    }

    fn deviation(&self, other: &PyLorentz) -> f64 {
        self.0.deviation(&other.0)
    }

    fn spinor_deviation(&self, other: &PyLorentz) -> f64 {
        self.0.spinor_deviation(&other.0)
    }

    fn __matmul__(&self, other: &PyLorentz) -> Self {
        self.compose(other)
    }
}

#[pyclass(name = "MomentumGrid", frozen)]
struct PyGrid(Arc<hyperboloid::MomentumGrid>);

#[pymethods]
impl PyGrid {
    #[staticmethod]
    fn build(mass: f64, spatial_extent: f64, n_per_axis: usize) -> PyResult<Self> {
        hyperboloid::build_grid(mass, spatial_extent, n_per_axis)
            .map(|g| Self(Arc::new(g)))
            .map_err(err)
    }

    fn mass(&self) -> f64 {
        self.0.mass()
    }

    fn points(&self) -> Vec<[f64; 4]> {
        self.0.points().iter().map(|p| p.to_array()).collect()
    }

    fn weights(&self) -> Vec<f64> {
        self.0.weights().to_vec()
    }

    fn total_weight(&self) -> f64 {
        self.0.total_weight()
    }

    fn transported(&self, g: &PyLorentz) -> Self {
        Self(Arc::new(hyperboloid::transport_grid(&g.0, &self.0)))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyclass(name = "Section", frozen)]
struct PySection(FiberedSection);

#[pymethods]
impl PySection {
    /// One pair of fiber coordinates per grid point.
    #[new]
    fn new(grid: &PyGrid, values: Vec<[Complex64; 2]>) -> PyResult<Self> {
        let values = values.iter().map(|v| Vector2::new(v[0], v[1])).collect();
        FiberedSection::new(grid.0.clone(), values).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        SectionDocument::from_json(text)
            .and_then(|d| d.section())
            .map(Self)
            .map_err(err)
    }

    fn to_json(&self) -> String {
        SectionDocument::from_section(&self.0).to_json()
    }

    fn grid(&self) -> PyGrid {
        PyGrid(self.0.grid().clone())
    }

    fn values(&self) -> Vec<[Complex64; 2]> {
        self.0.values().iter().map(|v| [v[0], v[1]]).collect()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn inner(&self, other: &PySection) -> PyResult<Complex64> {
        hyperboloid::section_inner(&self.0, &other.0).map_err(err)
    }

    fn distance(&self, other: &PySection) -> PyResult<f64> {
        hyperboloid::section_distance(&self.0, &other.0).map_err(err)
    }
}

#[pyclass(name = "Region", frozen)]
struct PyRegion(induced_rep::Region);

#[pymethods]
impl PyRegion {
    #[staticmethod]
    fn ball(mass: f64, center: [f64; 3], radius: f64) -> Self {
        Self(induced_rep::Region::spatial_ball(mass, center, radius))
    }

    #[staticmethod]
    fn half_space(direction: [f64; 3], offset: f64) -> Self {
        Self(induced_rep::Region::spatial_half_space(direction, offset))
    }

    #[staticmethod]
    #[pyo3(name = "box")]
    fn spatial_box(lo: [f64; 3], hi: [f64; 3]) -> Self {
        Self(induced_rep::Region::spatial_box(lo, hi))
    }

    fn contains(&self, p: &PyFourVector) -> bool {
        self.0.contains(&p.0)
    }

    fn transformed(&self, g: &PyLorentz) -> Self {
        Self(self.0.transformed(&g.0))
    }

    fn kind(&self) -> &'static str {
        self.0.kind()
    }
}

#[pyclass(name = "ImprimitivitySystem", frozen)]
struct PySystem(induced_rep::ImprimitivitySystem);

#[pymethods]
impl PySystem {
    #[new]
    #[pyo3(signature = (mass = 1.0))]
    fn new(mass: f64) -> PyResult<Self> {
        induced_rep::ImprimitivitySystem::spinor(mass).map(Self).map_err(err)
    }

    fn apply_u(&self, g: &PyLorentz, phi: &PySection) -> PyResult<PySection> {
        self.0.apply_u(&g.0, &phi.0).map(PySection).map_err(err)
    }

    fn apply_p(&self, region: &PyRegion, phi: &PySection) -> PySection {
        PySection(self.0.apply_p(&region.0, &phi.0))
    }

    fn apply_translation(&self, a: &PyFourVector, phi: &PySection) -> PySection {
        PySection(self.0.apply_translation(&a.0, &phi.0))
    }

    /// `‖U_g P_E U_g^{-1} φ - P_{gE} φ‖`
    fn imprimitivity_deviation(&self, g: &PyLorentz, region: &PyRegion, phi: &PySection) -> PyResult<f64> {
        induced_rep::verify_imprimitivity(&self.0, &g.0, &region.0, &phi.0).map_err(err)
    }
}

#[pyclass(name = "FockSpace", frozen)]
struct PyFockSpace(Arc<FockSpace>);

#[pymethods]
impl PyFockSpace {
    #[new]
    fn new(one_particle_dim: usize, cutoff: u32) -> PyResult<Self> {
        FockSpace::new(one_particle_dim, cutoff).map(Self).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn occupation(&self, i: usize) -> PyResult<Vec<u32>> {
        if i >= self.0.len() {
            return Err(PyValueError::new_err(format!("state index {i} out of range")));
        }
        Ok(self.0.occupation(i).to_vec())
    }

    fn guarded_indices(&self, guard: u32) -> Vec<usize> {
        self.0.guarded_indices(guard)
    }

    fn vacuum(&self) -> Vec<Complex64> {
        fock::FockState::vacuum(&self.0).amplitudes.iter().copied().collect()
    }

    fn exponential_vector(&self, u: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        fock::exponential_vector(&self.0, &vector(&u))
            .map(|s| s.amplitudes.iter().copied().collect())
            .map_err(err)
    }

    fn creation(&self, u: Vec<Complex64>) -> PyResult<PyFockOperator> {
        fock::creation(&self.0, &vector(&u)).map(PyFockOperator).map_err(err)
    }

    fn annihilation(&self, u: Vec<Complex64>) -> PyResult<PyFockOperator> {
        fock::annihilation(&self.0, &vector(&u)).map(PyFockOperator).map_err(err)
    }

    fn second_quantization(&self, unitary: Rows) -> PyResult<PyFockOperator> {
        fock::second_quantization(&self.0, &from_rows(&unitary)?)
            .map(PyFockOperator)
            .map_err(err)
    }

    fn weyl(&self, w: &PyWeyl) -> PyResult<PyFockOperator> {
        fock::weyl_operator(&self.0, &w.0).map(PyFockOperator).map_err(err)
    }
}

#[pyclass(name = "FockOperator", frozen)]
struct PyFockOperator(fock::FockOperator);

#[pymethods]
impl PyFockOperator {
    fn matrix(&self) -> Rows {
        to_rows(&self.0.matrix)
    }

    fn shape(&self) -> (usize, usize) {
        self.0.matrix.shape()
    }

    fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// `self · other`
    fn then(&self, other: &PyFockOperator) -> Self {
        Self(self.0.then(&other.0))
    }

    fn scaled(&self, z: Complex64) -> Self {
        Self(self.0.scaled(z))
    }

    fn apply(&self, amplitudes: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        if amplitudes.len() != self.0.space.len() {
            return Err(PyValueError::new_err(format!(
                "expected {} amplitudes, got {}",
                self.0.space.len(),
                amplitudes.len()
            )));
        }
        Ok((&self.0.matrix * vector(&amplitudes)).iter().copied().collect())
    }

    fn deviation(&self, other: &PyFockOperator) -> f64 {
        self.0.deviation(&other.0)
    }

    fn guarded_deviation(&self, other: &PyFockOperator, guard: u32) -> f64 {
        self.0.guarded_deviation(&other.0, guard)
    }

    fn unitarity_defect(&self) -> f64 {
        self.0.unitarity_defect()
    }

    fn guarded_unitarity_defect(&self, guard: u32) -> f64 {
        self.0.guarded_unitarity_defect(guard)
    }

    fn __matmul__(&self, other: &PyFockOperator) -> Self {
        self.then(other)
    }
}

/// The pair `(u, U)` labelling `W(u, U)`.
#[pyclass(name = "WeylDescriptor", frozen)]
struct PyWeyl(fock::WeylDescriptor);

#[pymethods]
impl PyWeyl {
    #[new]
    #[pyo3(signature = (u, unitary = None))]
    fn new(u: Vec<Complex64>, unitary: Option<Rows>) -> PyResult<Self> {
        let u = vector(&u);
        match unitary {
            None => Ok(Self(fock::WeylDescriptor::displacement(u))),
            Some(m) => fock::WeylDescriptor::new(u, from_rows(&m)?).map(Self).map_err(err),
        }
    }

    #[staticmethod]
    fn first_order_cocycle(t: f64, u0: Vec<Complex64>, blocks: Vec<(Vec<Complex64>, Rows)>) -> PyResult<Self> {
        let params = fock::CocycleParams {
            u0: vector(&u0),
            blocks: blocks
                .iter()
                .map(|(u, h)| Ok((vector(u), from_rows(h)?)))
                .collect::<PyResult<_>>()?,
        };
        let (v, u) = fock::first_order_cocycle(t, &params).map_err(err)?;
        fock::WeylDescriptor::new(v, u).map(Self).map_err(err)
    }

    fn u(&self) -> Vec<Complex64> {
        self.0.u().iter().copied().collect()
    }

    fn unitary(&self) -> Rows {
        to_rows(self.0.unitary())
    }

    fn compose(&self, other: &PyWeyl) -> Self {
        Self(self.0.compose(&other.0))
    }

    /// `c` with `W1 W2 = c W(u1 + U1 u2, U1 U2)`
    fn composition_phase(&self, other: &PyWeyl) -> Complex64 {
        fock::composition_phase(&self.0, &other.0)
    }

    /// `c` with `W1 W2 = c W2 W1`
    fn commutator_phase(&self, other: &PyWeyl) -> Complex64 {
        fock::commutator_phase(&self.0, &other.0)
    }
}

#[pyclass(name = "CovariantSystem", frozen)]
struct PyCovariant(cw::CovariantSystem);

impl PyCovariant {
    fn word(&self, text: &str) -> PyResult<GroupWord> {
        parse_word(self.0.generators(), text).ok_or_else(|| PyValueError::new_err(format!("cannot parse word `{text}`")))
    }
}

#[pymethods]
impl PyCovariant {
    #[new]
    #[pyo3(signature = (cutoff = None, guard = None))]
    fn new(cutoff: Option<u32>, guard: Option<u32>) -> PyResult<Self> {
        let mut config = CovariantConfig::default();
        if let Some(n) = cutoff {
            config.cutoff = n;
        }
        if let Some(g) = guard {
            config.guard = g;
        }
        cw::CovariantSystem::new(config).map(Self).map_err(err)
    }

    fn generators(&self) -> Vec<String> {
        self.0.generators().generators().iter().map(|g| g.name()).collect()
    }

    fn one_particle_dim(&self) -> usize {
        self.0.one_particle_dim()
    }

    fn fock_dim(&self) -> usize {
        self.0.fock().len()
    }

    fn guard(&self) -> u32 {
        self.0.guard()
    }

    /// Words are generator names separated by spaces, `^-1` for inverses.
    fn descriptor(&self, word: &str) -> PyResult<PyWeyl> {
        self.0.descriptor(&self.word(word)?).map(PyWeyl).map_err(err)
    }

    fn one_particle_unitary(&self, word: &str) -> PyResult<Rows> {
        cw::one_particle_unitary(&self.0, &self.word(word)?)
            .map(|m| to_rows(&m))
            .map_err(err)
    }

    fn weyl(&self, word: &str) -> PyResult<PyFockOperator> {
        cw::covariant_weyl(&self.0, &self.word(word)?)
            .map(PyFockOperator)
            .map_err(err)
    }

    fn projective_law_deviation(&self, g: &str, h: &str) -> PyResult<f64> {
        cw::projective_law_deviation(&self.0, &self.word(g)?, &self.word(h)?).map_err(err)
    }

    fn cocycle_identity_deviation(&self, g: &str, h: &str) -> PyResult<f64> {
        cw::cocycle_identity_deviation(&self.0, &self.word(g)?, &self.word(h)?).map_err(err)
    }

    fn vacuum_expectation_deviation(&self, word: &str) -> PyResult<f64> {
        cw::vacuum_expectation_deviation(&self.0, &self.word(word)?).map_err(err)
    }
}

#[pyfunction]
fn minkowski_inner(k: &PyFourVector, p: &PyFourVector) -> f64 {
    lorentz::minkowski_inner(&k.0, &p.0)
}

#[pyfunction]
fn borel_section(p: &PyFourVector, mass: f64) -> PyResult<PyLorentz> {
    induced_rep::borel_section(&p.0, mass).map(PyLorentz).map_err(err)
}

#[pymodule]
fn covqsc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFourVector>()?;
    m.add_class::<PyLorentz>()?;
    m.add_class::<PyGrid>()?;
    m.add_class::<PySection>()?;
    m.add_class::<PyRegion>()?;
    m.add_class::<PySystem>()?;
    m.add_class::<PyFockSpace>()?;
    m.add_class::<PyFockOperator>()?;
    m.add_class::<PyWeyl>()?;
    m.add_class::<PyCovariant>()?;
    m.add_function(wrap_pyfunction!(minkowski_inner, m)?)?;
    m.add_function(wrap_pyfunction!(borel_section, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
