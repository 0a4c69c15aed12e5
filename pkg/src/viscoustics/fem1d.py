"""Wall-normal 1D high-order element kernel.

Graded meshes, integrated-Legendre (modal) shape functions, weighted
assembly of mass/stiffness-type matrices, and a banded complex LU with
partial pivoting (LAPACK ``gbtrf``/``gbtrs``).  A near-singular
factorization is reported through :class:`NearSingularError`, which carries
the smallest pivot magnitude; approaching an eigenfrequency of the limit
problem shows up exactly there.

Degrees of freedom of one scalar field are numbered elementwise:
``[vertex_0, bubbles_0, vertex_1, bubbles_1, ...]``, so the scalar
half-bandwidth equals the polynomial degree.  Coupled multi-field systems
interleave the fields per scalar dof (see :class:`SystemAssembler`).
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import legendre as npleg
from scipy.linalg import get_lapack_funcs


class NearSingularError(RuntimeError):
    """Factorization hit a pivot below tolerance (eigenfrequency proximity)."""

    def __init__(self, pivot, norm):
        self.pivot = float(pivot)
        self.norm = float(norm)
        super().__init__(
            f"near-singular system: min pivot {pivot:.3e} vs matrix norm {norm:.3e}"
        )


# ---------------------------------------------------------------------------
# meshes


@dataclass(frozen=True)
class Mesh1D:
    """Strictly increasing breakpoints over the wall-normal interval."""

    breakpoints: np.ndarray

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float)
        if bp.ndim != 1 or bp.size < 2 or not np.all(np.diff(bp) > 0):
            raise ValueError("breakpoints must be strictly increasing, length >= 2")
        object.__setattr__(self, "breakpoints", bp)

    @property
    def n_elements(self):
        return self.breakpoints.size - 1

    @property
    def sizes(self):
        return np.diff(self.breakpoints)

    @property
    def interval(self):
        return (float(self.breakpoints[0]), float(self.breakpoints[-1]))


def build_graded_mesh(interval, n_interior, ratio=0.5, layers=0,
                      refine_start=True, refine_end=True):
    """Uniform interior cells with geometric end refinement.

    The end cell of the uniform partition is subdivided at distances
    ``h0 * ratio**j`` from the wall, so the smallest wall element has size
    ``h0 * ratio**layers``.
    """
    a, b = float(interval[0]), float(interval[1])
    if not b > a:
        raise ValueError("degenerate interval")
    if not 0 < ratio < 1:
        raise ValueError("ratio must lie in (0, 1)")
    if layers < 0:
        raise ValueError("layers must be nonnegative")
    if n_interior < 1 or (layers > 0 and refine_start and refine_end and n_interior < 2):
        raise ValueError("too few interior elements for the requested refinement")
    base = np.linspace(a, b, n_interior + 1)
    h0 = (b - a) / n_interior
    pts = [base]
    if layers > 0 and refine_start:
        extra = a + h0 * ratio ** np.arange(layers, 0, -1)
        pts.append(extra)
    if layers > 0 and refine_end:
        extra = b - h0 * ratio ** np.arange(1, layers + 1)
        pts.append(extra)
    bp = np.unique(np.concatenate(pts))
    return Mesh1D(bp)


def layers_for_scale(interval, n_interior, ratio, scale):
    """Number of layers so the smallest wall element is <= scale/2."""
    h0 = (interval[1] - interval[0]) / n_interior
    target = 0.5 * scale
    if target >= h0:
        return 0
    return int(np.ceil(np.log(target / h0) / np.log(ratio)))


# ---------------------------------------------------------------------------
# shape functions


class Basis1D:
    """Integrated-Legendre modal basis of degree p on [-1, 1].

    Local ordering: [left vertex, bubbles 2..p, right vertex].  Bubbles
    vanish at both endpoints, so essential conditions touch vertices only.
    """

    def __init__(self, degree):
        if degree < 1:
            raise ValueError("degree must be >= 1")
        self.degree = int(degree)
        self.n_local = self.degree + 1
        # Legendre coefficient columns of every shape function.
        coeffs = np.zeros((self.degree + 1, self.n_local))
        coeffs[0, 0], coeffs[1, 0] = 0.5, -0.5          # (1 - u)/2
        coeffs[0, -1], coeffs[1, -1] = 0.5, 0.5         # (1 + u)/2
        for j in range(2, self.degree + 1):
            col = np.zeros(self.degree + 1)
            col[j] = 1.0
            col[j - 2] = -1.0
            coeffs[:, j - 1] = col / np.sqrt(2.0 * (2.0 * j - 1.0))
        self._coeffs = coeffs
        self._dcoeffs = {0: coeffs}
        for d in (1, 2):
            prev = self._dcoeffs[d - 1]
            self._dcoeffs[d] = np.vstack([npleg.legder(prev, 1),
                                          np.zeros((1, self.n_local))])

    def eval(self, u, deriv=0):
        """Table of shape (u.size, n_local) of the deriv-th u-derivative."""
        u = np.atleast_1d(np.asarray(u, dtype=float))
        if deriv not in self._dcoeffs:
            c = self._coeffs
            for _ in range(deriv):
                c = npleg.legder(c, 1)
            self._dcoeffs[deriv] = c
        return npleg.legval(u, self._dcoeffs[deriv], tensor=True).T


def gauss_rule(n):
    return npleg.leggauss(int(n))


# ---------------------------------------------------------------------------
# banded complex matrices


class BandedComplexMatrix:
    """Complex band matrix in LAPACK ``gbtrf`` storage (kl extra fill rows)."""

    def __init__(self, n, kl, ku):
        self.n = int(n)
        self.kl = int(kl)
        self.ku = int(ku)
        self.ab = np.zeros((2 * self.kl + self.ku + 1, self.n), dtype=complex)

    def add_at(self, rows, cols, values):
        rows = np.asarray(rows)
        cols = np.asarray(cols)
        np.add.at(self.ab, (self.kl + self.ku + rows - cols, cols), values)

    def add_entry(self, i, j, value):
        self.ab[self.kl + self.ku + i - j, j] += value

    def get_entry(self, i, j):
        if abs(i - j) > max(self.kl, self.ku):
            return 0.0 + 0.0j
        return self.ab[self.kl + self.ku + i - j, j]

    def zero_row_col(self, i, diagonal=1.0):
        """Homogeneous essential condition: clear row/column i, set diagonal."""
        for j in range(max(0, i - self.ku), min(self.n, i + self.kl + 1)):
            self.ab[self.kl + self.ku + i - j, j] = 0.0
        for r in range(max(0, i - self.kl), min(self.n, i + self.ku + 1)):
            self.ab[self.kl + self.ku + r - i, i] = 0.0
        self.ab[self.kl + self.ku, i] = diagonal

    def norm_inf(self):
        return float(np.abs(self.ab[self.kl:]).sum(axis=0).max())

    def todense(self):
        a = np.zeros((self.n, self.n), dtype=complex)
        for j in range(self.n):
            lo = max(0, j - self.ku)
            hi = min(self.n, j + self.kl + 1)
            for i in range(lo, hi):
                a[i, j] = self.ab[self.kl + self.ku + i - j, j]
        return a

    def factor(self, pivot_rtol=1e-10):
        return BandedLU(self, pivot_rtol=pivot_rtol)


class BandedLU:
    """LU factorization with partial pivoting of a band matrix."""

    def __init__(self, mat, pivot_rtol=1e-10):
        gbtrf, = get_lapack_funcs(("gbtrf",), (mat.ab,))
        lu, ipiv, info = gbtrf(mat.ab, mat.kl, mat.ku)
        if info < 0:
            raise ValueError(f"gbtrf: illegal argument {-info}")
        self.lu = lu
        self.ipiv = ipiv
        self.kl, self.ku, self.n = mat.kl, mat.ku, mat.n
        self.norm = mat.norm_inf()
        diag = np.abs(lu[mat.kl + mat.ku, :])
        self.min_pivot = float(diag.min()) if info == 0 else 0.0
        self.pivot_rtol = pivot_rtol

    @property
    def near_singular(self):
        return self.min_pivot <= self.pivot_rtol * max(self.norm, 1e-300)

    def solve(self, rhs, check=True):
        if check and self.near_singular:
            raise NearSingularError(self.min_pivot, self.norm)
        gbtrs, = get_lapack_funcs(("gbtrs",), (self.lu,))
        rhs = np.asarray(rhs, dtype=complex)
        x, info = gbtrs(self.lu, self.kl, self.ku, rhs, self.ipiv)
        if info != 0:
            raise RuntimeError(f"gbtrs failed with info={info}")
        return x


def solve_banded(mat, rhs, pivot_rtol=1e-10):
    """Direct banded solve; raises :class:`NearSingularError` on tiny pivots."""
    return mat.factor(pivot_rtol=pivot_rtol).solve(rhs)


# ---------------------------------------------------------------------------
# discretization of one wall-normal line


_LINE_CACHE = {}


def get_line(mesh, degree, quad_factor=2):
    """Memoized Line; solvers share quadrature/shape tables per mesh."""
    key = (mesh.breakpoints.tobytes(), int(degree), int(quad_factor))
    line = _LINE_CACHE.get(key)
    if line is None:
        if len(_LINE_CACHE) > 32:
            _LINE_CACHE.clear()
        line = Line(mesh, degree, quad_factor)
        _LINE_CACHE[key] = line
    return line


class Line:
    """Mesh + basis + quadrature tables for the wall-normal interval."""

    def __init__(self, mesh, degree, quad_factor=2):
        self.mesh = mesh
        self.basis = Basis1D(degree)
        self.degree = int(degree)
        nq = quad_factor * (self.degree + 2)
        self.uq, self.wq = gauss_rule(nq)
        self.nq = nq
        bp = mesh.breakpoints
        h = mesh.sizes
        self.n_elements = mesh.n_elements
        self.n_dofs = self.n_elements * self.degree + 1
        # physical quadrature points/weights, shape (ne, nq)
        self.yq = bp[:-1, None] + 0.5 * h[:, None] * (self.uq[None, :] + 1.0)
        self.wyq = 0.5 * h[:, None] * self.wq[None, :]
        self.jac = 2.0 / h  # du/dy per element
        self._ref = {d: self.basis.eval(self.uq, d) for d in (0, 1, 2)}
        p = self.degree
        # global dof ids per element, local order [left, bubbles..., right]
        loc = np.concatenate(([0], np.arange(1, p), [p]))
        self.eldofs = loc[None, :] + p * np.arange(self.n_elements)[:, None]
        self.first_dof = 0
        self.last_dof = self.n_dofs - 1
        self._eval_cache = {}

    def shape(self, deriv):
        """Physical-derivative tables, shape (ne, nq, n_local)."""
        tab = self._ref[deriv][None, :, :]
        if deriv == 0:
            return np.broadcast_to(tab, (self.n_elements, self.nq, self.basis.n_local))
        return tab * (self.jac[:, None, None]) ** deriv

    def wall_dof(self, side):
        return self.first_dof if side == "lower" else self.last_dof

    def element_matrix(self, weight_vals, da, db):
        """Per-element blocks of int w * D^da(trial) * D^db(test)."""
        w = self.wyq * weight_vals
        return np.einsum("eq,eqi,eqj->eij", w, self.shape(db), self.shape(da))

    def load_vector_blocks(self, fvals, db=0, weight_vals=1.0):
        w = self.wyq * weight_vals * fvals
        return np.einsum("eq,eqi->ei", w, self.shape(db))

    def eval_tables(self, y):
        """Localization and shape tables at points y, cached per grid."""
        y = np.atleast_1d(np.asarray(y, dtype=float))
        key = y.tobytes()
        hit = self._eval_cache.get(key)
        if hit is None:
            bp = self.mesh.breakpoints
            el = np.clip(np.searchsorted(bp, y, side="right") - 1, 0,
                         self.n_elements - 1)
            h = self.mesh.sizes[el]
            u = 2.0 * (y - bp[el]) / h - 1.0
            scale = (2.0 / h)[:, None]
            tabs = {d: self.basis.eval(u, d) * scale**d for d in (0, 1, 2)}
            if len(self._eval_cache) > 64:
                self._eval_cache.clear()
            hit = (self.eldofs[el], tabs)
            self._eval_cache[key] = hit
        return hit

    def evaluate(self, coefs, y, deriv=0):
        """Evaluate a scalar FE function (or stacked fields) at points y."""
        dofs, tabs = self.eval_tables(y)
        coefs = np.asarray(coefs)
        return np.einsum("pi,...pi->...p", tabs[deriv], coefs[..., dofs])

    def quad_weights_on(self, mask=None):
        return self.wyq if mask is None else self.wyq * mask


class SystemAssembler:
    """Banded assembly for n_fields coupled scalar fields on one Line.

    Global dof of (field f, scalar dof d) is ``d * n_fields + f``; element
    coupling stays within a band of half-width ``n_fields*(degree+1)``.
    """

    def __init__(self, line, n_fields):
        self.line = line
        self.m = int(n_fields)
        self.n = line.n_dofs * self.m
        bw = self.m * (line.degree + 1) - 1
        self.mat = BandedComplexMatrix(self.n, bw, bw)
        self.rhs = np.zeros(self.n, dtype=complex)
        self._essential = []

    def gdof(self, field, scalar_dof):
        return np.asarray(scalar_dof) * self.m + field

    def _pair_indices(self, fi, fj):
        rows = self.gdof(fi, self.line.eldofs)  # (ne, nl) test
        cols = self.gdof(fj, self.line.eldofs)  # trial
        return (np.repeat(rows[:, :, None], rows.shape[1], axis=2),
                np.repeat(cols[:, None, :], cols.shape[1], axis=1))

    def add_bilinear(self, test_field, trial_field, weight_vals, da, db, coef=1.0):
        """Accumulate coef * int w(y) D^da(trial) D^db(test)."""
        if np.isscalar(weight_vals):
            weight_vals = float(weight_vals) * np.ones_like(self.line.yq)
        blocks = coef * self.line.element_matrix(weight_vals, da, db)
        r, c = self._pair_indices(test_field, trial_field)
        self.mat.add_at(r.ravel(), c.ravel(), blocks.reshape(r.size))

    def add_wall_entry(self, test_field, trial_field, side, value):
        d = self.line.wall_dof(side)
        self.mat.add_entry(self.gdof(test_field, d), self.gdof(trial_field, d), value)

    def add_load(self, test_field, fvals, db=0, weight_vals=1.0, coef=1.0):
        blocks = coef * self.line.load_vector_blocks(fvals, db, weight_vals)
        np.add.at(self.rhs, self.gdof(test_field, self.line.eldofs).ravel(), blocks.ravel())

    def add_wall_load(self, test_field, side, value):
        self.rhs[self.gdof(test_field, self.line.wall_dof(side))] += value

    def constrain_zero(self, field, side):
        self._essential.append(self.gdof(field, self.line.wall_dof(side)))

    def finalize(self):
        for g in self._essential:
            self.mat.zero_row_col(g)
            self.rhs[g] = 0.0
        return self.mat, self.rhs

    def split(self, solution):
        """Split a flat solution vector into per-field coefficient arrays."""
        return [np.ascontiguousarray(solution[f::self.m]) for f in range(self.m)]


def assemble(mesh, basis_or_degree, weight, orders):
    """Matrix with entries int weight * D^a(trial_j) * D^b(test_i).

    ``weight`` may be a scalar or a callable of the wall-normal coordinate.
    """
    degree = basis_or_degree.degree if isinstance(basis_or_degree, Basis1D) else int(basis_or_degree)
    da, db = orders
    if da not in (0, 1) or db not in (0, 1):
        raise ValueError("derivative orders must be 0 or 1")
    line = Line(mesh, degree)
    asm = SystemAssembler(line, 1)
    wv = weight(line.yq) if callable(weight) else weight
    asm.add_bilinear(0, 0, wv, da, db)
    mat, _ = asm.finalize()
    return mat
