"""Bounded-degree sums of hermitian squares via Gram matrix feasibility.

A target element c equals sum_k a_k* a_k over a monomial basis iff the
hermitian matrix G with c = sum G[u,v] * (u* v) is positive semidefinite.
The float solver alternates projections between the coefficient-matching
affine subspace and the PSD cone; certificates can then be rounded to exact
rational Gram matrices and re-verified with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q

import numpy as np

from .algebra import Element, MultiDegree, Presentation
from .errors import DegreeTooLarge, NotHermitian, RoundingLostPSD
from .scalars import GaussianRational, ZERO

_PSD_SLACK = 1e-8  # certified Gram matrices may dip this far below zero


def basis_monomials(pres: Presentation, cap: MultiDegree):
    """All ordered monomials under the cap, graded then lexicographic."""
    monos = [
        (j, l)
        for j in range(cap[0] + 1)
        for l in range((cap[1] + 1) if pres.kind != "comm" else 1)
    ]
    monos.sort(key=lambda m: (m[0] + m[1], m))
    return monos


@dataclass
class GramSystem:
    pres: Presentation
    target: Element
    cap: MultiDegree
    basis: list  # active monomials (after diagonal-consistency reduction)
    full_basis: list  # every monomial under the cap, graded-lex
    products: dict  # (i, j) -> Element for basis[i]* basis[j]
    monomials: list  # constraint monomial order
    matrix: np.ndarray  # real (2*#monomials) x n^2
    rhs: np.ndarray
    exact_rows: list  # same rows with Fraction entries
    exact_rhs: list

    @property
    def size(self) -> int:
        return len(self.basis)

    def param_count(self) -> int:
        return self.size * self.size

    def gram_from_params(self, x: np.ndarray) -> np.ndarray:
        n = self.size
        G = np.zeros((n, n), dtype=complex)
        idx = 0
        for i in range(n):
            G[i, i] = x[idx]
            idx += 1
        for i in range(n):
            for j in range(i + 1, n):
                G[i, j] = x[idx] + 1j * x[idx + 1]
                G[j, i] = x[idx] - 1j * x[idx + 1]
                idx += 2
        return G

    def params_from_gram(self, G: np.ndarray) -> np.ndarray:
        n = self.size
        out = np.empty(self.param_count())
        idx = 0
        for i in range(n):
            out[idx] = G[i, i].real
            idx += 1
        for i in range(n):
            for j in range(i + 1, n):
                out[idx] = G[i, j].real
                out[idx + 1] = G[i, j].imag
                idx += 2
        return out

    def combination(self, G) -> dict:
        """Complex coefficient map of sum G[u,v] * (basis[u]* basis[v])."""
        acc = {}
        n = self.size
        for (i, j), prod in self.products.items():
            g = complex(G[i][j]) if not isinstance(G[i][j], GaussianRational) else G[i][j].to_complex()
            if g == 0:
                continue
            for mono, coeff in prod.terms.items():
                acc[mono] = acc.get(mono, 0j) + g * coeff.to_complex()
        return acc

    def combination_exact(self, G) -> Element:
        acc = Element.zero(self.pres)
        for (i, j), prod in self.products.items():
            coeff = G[i][j]
            if coeff.is_zero():
                continue
            acc = acc + prod * coeff
        return acc


def _reduce_basis(pres: Presentation, target: Element, basis: list):
    """Drop monomials whose diagonal Gram entry is forced to vanish.

    If the target coefficient at the corner (2j, 2l) is zero and u = (j, l)
    squares are the only products touching that corner, positive
    semidefiniteness forces the whole u row to zero, so removing u changes
    nothing about feasibility while often restoring an interior point.
    """
    prods = {}
    for u in basis:
        u_star = Element.monomial(pres, *u).star()
        for v in basis:
            prods[(u, v)] = u_star * Element.monomial(pres, *v)
    active = list(basis)
    changed = True
    while changed:
        changed = False
        for u in sorted(active, key=lambda m: (m[0] + m[1], m), reverse=True):
            corner = (2 * u[0], 2 * u[1])
            if not target.coefficient(corner).is_zero():
                continue
            touched = any(
                (v, w) != (u, u) and not prods[(v, w)].coefficient(corner).is_zero()
                for v in active
                for w in active
            )
            if not touched:
                active.remove(u)
                changed = True
    return active, prods


def assemble_gram_system(c: Element, cap) -> GramSystem:
    """Coefficient-matching constraints for c as a hermitian-square combination."""
    if not c.is_hermitian():
        raise NotHermitian("the target of a square decomposition must be hermitian")
    cap = MultiDegree(cap)
    if not c.is_zero() and not c.degree().ceil_half() <= cap:
        raise DegreeTooLarge(
            f"cap {tuple(cap)} cannot reach target degree {tuple(c.degree())}"
        )
    pres = c.pres
    full_basis = basis_monomials(pres, cap)
    basis, all_prods = _reduce_basis(pres, c, full_basis)
    products = {}
    monomial_set = set(c.terms)
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            prod = all_prods[(u, v)]
            products[(i, j)] = prod
            monomial_set.update(prod.terms)
    monomials = sorted(monomial_set, key=lambda m: (m[0] + m[1], m))

    n = len(basis)
    ncols = n * n
    # Column layout must match gram_from_params: n diagonal entries first,
    # then (re, im) pairs for each i < j.
    offdiag_index = {}
    idx = n
    for i in range(n):
        for j in range(i + 1, n):
            offdiag_index[(i, j)] = idx
            idx += 2

    exact_rows, exact_rhs = [], []
    for mono in monomials:
        row_re = [Q(0)] * ncols
        row_im = [Q(0)] * ncols
        for (i, j), prod in products.items():
            kappa = prod.terms.get(mono)
            if kappa is None:
                continue
            if i == j:
                row_re[i] += kappa.re
                row_im[i] += kappa.im
            elif i < j:
                col = offdiag_index[(i, j)]
                row_re[col] += kappa.re
                row_im[col] += kappa.im
                row_re[col + 1] -= kappa.im
                row_im[col + 1] += kappa.re
            else:
                col = offdiag_index[(j, i)]
                row_re[col] += kappa.re
                row_im[col] += kappa.im
                row_re[col + 1] += kappa.im
                row_im[col + 1] -= kappa.re
        target_coeff = c.terms.get(mono, ZERO)
        exact_rows.append(row_re)
        exact_rhs.append(target_coeff.re)
        exact_rows.append(row_im)
        exact_rhs.append(target_coeff.im)

    matrix = np.array([[float(v) for v in row] for row in exact_rows], dtype=float)
    rhs = np.array([float(v) for v in exact_rhs], dtype=float)
    return GramSystem(
        pres, c, cap, basis, full_basis, products, monomials, matrix, rhs, exact_rows, exact_rhs
    )


@dataclass
class SdpOutcome:
    status: str  # "feasible" or "infeasible_at_cap"
    gram: np.ndarray = None
    iterations: int = 0
    affine_residual: float = float("nan")
    psd_residual: float = float("nan")
    gap: float = float("nan")

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def sdp_feasible(sys: GramSystem, tol: float = 1e-8, max_iter: int = 20000) -> SdpOutcome:
    """Alternating projections between the constraint subspace and the PSD cone.

    An "infeasible_at_cap" outcome is inconclusive: it only reports that the
    projections stalled at a positive gap or that the iteration budget ran out.
    """
    M = sys.matrix
    rhs = sys.rhs
    if sys.size == 0:
        residual = float(np.abs(rhs).max()) if len(rhs) else 0.0
        status = "feasible" if residual <= tol else "infeasible_at_cap"
        return SdpOutcome(status, np.zeros((0, 0), dtype=complex), 0, residual, 0.0, residual)
    pinv = np.linalg.pinv(M)

    def affine(x):
        return x - pinv @ (M @ x - rhs)

    x = pinv @ rhs
    last_gap = None
    stall_check = 50
    for it in range(1, max_iter + 1):
        G = sys.gram_from_params(x)
        w, V = np.linalg.eigh(G)
        psd_res = max(0.0, -float(w.min()))
        aff_res = float(np.abs(M @ x - rhs).max()) if len(rhs) else 0.0
        if psd_res <= tol and aff_res <= tol:
            return SdpOutcome("feasible", G, it, aff_res, psd_res, 0.0)
        Gp = (V * np.clip(w, 0.0, None)) @ V.conj().T
        y = sys.params_from_gram(Gp)
        x_new = affine(y)
        gap = float(np.linalg.norm(x_new - y))
        if it % stall_check == 0:
            if (
                last_gap is not None
                and gap > 100 * tol
                and abs(last_gap - gap) <= 1e-4 * gap
            ):
                return SdpOutcome("infeasible_at_cap", None, it, aff_res, psd_res, gap)
            last_gap = gap
        x = x_new
    G = sys.gram_from_params(x)
    w = np.linalg.eigvalsh(G)
    return SdpOutcome(
        "infeasible_at_cap",
        None,
        max_iter,
        float(np.abs(M @ x - rhs).max()) if len(rhs) else 0.0,
        max(0.0, -float(w.min())),
        float("nan"),
    )


# -- certificates ---------------------------------------------------------------


@dataclass
class GramCertificate:
    mode: str  # "float" or "rational"
    pres: Presentation
    basis: list
    gram: np.ndarray
    min_eigenvalue: float
    residual_norm: float
    valid: bool
    factors: list = field(default_factory=list)  # float mode: coefficient dicts
    exact_factors: list = field(default_factory=list)  # rational: (weight, Element)
    gram_exact: list = None
    residual_element: Element = None

    def factor_texts(self):
        names = self.pres.gen_names
        out = []
        if self.mode == "rational":
            for weight, elem in self.exact_factors:
                out.append(f"sqrt({weight}) * ({elem.text()})")
            return out
        for coeffs in self.factors:
            parts = []
            for (j, l) in sorted(coeffs):
                v = coeffs[(j, l)]
                mono = []
                if j:
                    mono.append(names[0] if j == 1 else f"{names[0]}^{j}")
                if l:
                    mono.append(names[1] if l == 1 else f"{names[1]}^{l}")
                body = "*".join(mono) if mono else "1"
                parts.append(f"({v.real:.12g}{v.imag:+.12g}i)*{body}")
            out.append(" + ".join(parts) if parts else "0")
        return out

    def to_dict(self):
        data = {
            "mode": self.mode,
            "basis": [list(m) for m in self.basis],
            "gram": [[[z.real, z.imag] for z in row] for row in np.asarray(self.gram)],
            "min_eigenvalue": self.min_eigenvalue,
            "residual_norm": self.residual_norm,
            "valid": self.valid,
            "factors": self.factor_texts(),
        }
        if self.residual_element is not None:
            data["residual_element"] = self.residual_element.text()
        if self.gram_exact is not None:
            data["gram_exact"] = [[str(v) for v in row] for row in self.gram_exact]
        return data


def extract_and_verify(c: Element, G: np.ndarray, sys: GramSystem, mode: str = "float") -> GramCertificate:
    """Turn a candidate Gram matrix into a checked certificate.

    Float mode reports the worst coefficient mismatch of the recombined
    target. Rational mode rounds to exact rationals, re-projects onto the
    exact constraint subspace, and proves positive semidefiniteness with
    exact pivoting, so a valid result has an identically zero residual.
    """
    if mode == "rational":
        return _rational_certificate(c, G, sys)
    G = np.asarray(G, dtype=complex)
    w, V = np.linalg.eigh(G)
    min_eig = float(w.min())
    combo = sys.combination(G)
    resid = dict(combo)
    for mono, coeff in c.terms.items():
        resid[mono] = resid.get(mono, 0j) - coeff.to_complex()
    residual_norm = max((abs(v) for v in resid.values()), default=0.0)
    factors = []
    cutoff = max(1e-12, 1e-12 * max(1.0, float(w.max(initial=0.0))))
    for k in range(len(w) - 1, -1, -1):
        if w[k] <= cutoff:
            continue
        scale = np.sqrt(w[k])
        coeffs = {}
        for v_idx, mono in enumerate(sys.basis):
            z = scale * np.conj(V[v_idx, k])
            if abs(z) > 1e-14:
                coeffs[mono] = complex(z)
        factors.append(coeffs)
    valid = residual_norm <= 1e-6 * (1.0 + c.coeff_norm()) and min_eig >= -_PSD_SLACK
    return GramCertificate(
        "float", sys.pres, sys.basis, G, min_eig, residual_norm, valid, factors=factors
    )


def _rational_certificate(c: Element, G: np.ndarray, sys: GramSystem) -> GramCertificate:
    G = np.asarray(G, dtype=complex)
    w, V = np.linalg.eigh(G)
    G_clipped = (V * np.clip(w, 0.0, None)) @ V.conj().T
    for cap in (100, 10 ** 4, 10 ** 6):
        x_hat = [Q(v).limit_denominator(cap) for v in sys.params_from_gram(G_clipped)]
        x = _exact_affine_project(sys, x_hat)
        if x is None:
            continue
        G_exact = _exact_gram(sys, x)
        ok, pivots = _exact_psd_factors(G_exact)
        if not ok:
            continue
        residual = c - sys.combination_exact(G_exact)
        assert residual.is_zero(), "exact projection must reproduce the target"
        exact_factors = []
        for weight, vec in pivots:
            coeffs = {}
            for idx, value in vec.items():
                coeffs[sys.basis[idx]] = value.conjugate()
            exact_factors.append((weight, Element(sys.pres, coeffs)))
        G_float = np.array(
            [[v.to_complex() for v in row] for row in G_exact], dtype=complex
        )
        min_eig = float(np.linalg.eigvalsh(G_float).min())
        return GramCertificate(
            "rational",
            sys.pres,
            sys.basis,
            G_float,
            min_eig,
            0.0,
            True,
            exact_factors=exact_factors,
            gram_exact=G_exact,
            residual_element=residual,
        )
    raise RoundingLostPSD("no rational rounding preserved positive semidefiniteness")


def _exact_gram(sys: GramSystem, x):
    n = sys.size
    G = [[None] * n for _ in range(n)]
    idx = 0
    for i in range(n):
        G[i][i] = GaussianRational(x[idx])
        idx += 1
    for i in range(n):
        for j in range(i + 1, n):
            G[i][j] = GaussianRational(x[idx], x[idx + 1])
            G[j][i] = GaussianRational(x[idx], -x[idx + 1])
            idx += 2
    return G


def _exact_affine_project(sys: GramSystem, x_hat):
    """Orthogonal projection of x_hat onto {Mx = rhs} in exact arithmetic.

    Returns None when the constraint system is inconsistent (so no exact
    certificate can exist at this cap).
    """
    # Select an independent subset of rows by exact elimination.
    reduced = []  # (pivot_col, row, b)
    kept = []
    for row, b in zip(sys.exact_rows, sys.exact_rhs):
        work = list(row)
        wb = Q(b)
        for pcol, prow, pb in reduced:
            factor = work[pcol]
            if factor:
                for k, v in enumerate(prow):
                    if v:
                        work[k] -= factor * v
                wb -= factor * pb
                work[pcol] = Q(0)
        pivot = next((k for k, v in enumerate(work) if v), None)
        if pivot is None:
            if wb != 0:
                return None
            continue
        inv = 1 / work[pivot]
        work = [v * inv for v in work]
        wb *= inv
        reduced.append((pivot, work, wb))
        kept.append((row, b))
    if not kept:
        return list(x_hat)
    m = len(kept)
    # Solve (M~ M~^T) lam = rhs~ - M~ x_hat, then x = x_hat + M~^T lam.
    gram = [[sum(a * b for a, b in zip(kept[i][0], kept[j][0])) for j in range(m)] for i in range(m)]
    target = [Q(kept[i][1]) - sum(a * b for a, b in zip(kept[i][0], x_hat)) for i in range(m)]
    lam = _solve_exact(gram, target)
    out = list(x_hat)
    for i in range(m):
        if lam[i]:
            row = kept[i][0]
            for k, v in enumerate(row):
                if v:
                    out[k] += lam[i] * v
    return out


def _solve_exact(A, b):
    """Gaussian elimination for a square exact rational system."""
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[pivot] = M[pivot], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def _exact_psd_factors(G):
    """Exact PSD test with pivoted hermitian elimination.

    Returns (True, [(weight, vector), ...]) realizing G as a nonnegative
    combination of rank-one hermitian squares, or (False, None).
    """
    n = len(G)
    work = [[G[i][j] for j in range(n)] for i in range(n)]
    active = list(range(n))
    factors = []
    while active:
        best, best_val = None, Q(0)
        for i in active:
            d = work[i][i]
            if not d.is_real():
                return False, None
            if d.re < 0:
                return False, None
            if d.re > best_val:
                best, best_val = i, d.re
        if best is None:
            for i in active:
                for j in active:
                    if not work[i][j].is_zero():
                        return False, None
            break
        d = GaussianRational(best_val)
        col = {i: work[i][best] for i in active}
        vec = {i: col[i] / d for i in active if not (col[i] / d).is_zero()}
        factors.append((best_val, vec))
        for i in active:
            if col[i].is_zero():
                continue
            for j in active:
                if not col[j].is_zero():
                    work[i][j] = work[i][j] - col[i] * col[j].conjugate() / d
        active.remove(best)
    return True, factors
